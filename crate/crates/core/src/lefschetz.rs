//! Bordered Lefschetz fibration descriptors: allowability and the induced
//! spinal open book on the boundary.
//!
//! The descriptor records the base and fiber types, one flag per critical
//! point (homological triviality of its vanishing cycle), and the
//! horizontal-boundary data: a partition of the fiber's boundary labels
//! into groups, each fibering over a connected unbranched cover of the base
//! with prescribed boundary multiplicities.

use crate::covers::{exists_cover, CoverSpec, CoversError, SearchBounds};
use crate::perm::Perm;
use crate::sob::{
    Orbit, OrbitTarget, PaperComponent, PaperId, SpinalOpenBook, SpineCircleId, Vertebra,
    VertebraId,
};
use crate::surfaces::Surface;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalPoint {
    /// True when the vanishing cycle is nullhomologous in the fiber.
    #[serde(rename = "trivial")]
    pub homologically_trivial: bool,
}

/// One connected component of the horizontal boundary: the fiber-boundary
/// labels it carries, the covering surface, and for each base boundary
/// circle the multiplicities of the covering circles above it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HorizontalGroup {
    pub labels: Vec<u32>,
    pub cover_total: Surface,
    pub mults: Vec<Vec<u32>>,
}

impl HorizontalGroup {
    pub fn degree(&self) -> usize {
        self.labels.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LefschetzDescriptor {
    pub base: Surface,
    pub fiber: Surface,
    pub critical_points: Vec<CriticalPoint>,
    pub groups: Vec<HorizontalGroup>,
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum LefschetzError {
    #[error("base must be orientable with nonempty boundary")]
    BadBase,
    #[error("fiber must be orientable with nonempty boundary")]
    BadFiber,
    #[error("group labels must partition the fiber boundary labels")]
    BadLabels,
    #[error("group {group}: expected one multiplicity list per base boundary component")]
    BadMultShape { group: usize },
    #[error("group {group}: multiplicities over base boundary {component} must be positive and sum to the group degree")]
    BadMults { group: usize, component: usize },
    #[error("group {group}: cover total has the wrong boundary count")]
    CoverBoundaryMismatch { group: usize },
    #[error("group {group}: cover total violates the unbranched Riemann-Hurwitz identity")]
    RiemannHurwitz { group: usize },
    #[error("group {group}: no unbranched connected cover realizes the horizontal boundary data")]
    CoverNotRealizable { group: usize },
    #[error(transparent)]
    Covers(#[from] CoversError),
}

/// Checks the descriptor, including realizability of every horizontal
/// cover through the cover-existence engine.
pub fn validate_descriptor(
    lf: &LefschetzDescriptor,
    bounds: &SearchBounds,
) -> Result<(), LefschetzError> {
    if !lf.base.is_orientable() || lf.base.boundary() == 0 {
        return Err(LefschetzError::BadBase);
    }
    if !lf.fiber.is_orientable() || lf.fiber.boundary() == 0 {
        return Err(LefschetzError::BadFiber);
    }
    let b_fiber = lf.fiber.boundary();
    let mut seen = vec![false; b_fiber as usize];
    for g in &lf.groups {
        for &l in &g.labels {
            if l == 0 || l > b_fiber || seen[(l - 1) as usize] {
                return Err(LefschetzError::BadLabels);
            }
            seen[(l - 1) as usize] = true;
        }
    }
    if !seen.iter().all(|&s| s) {
        return Err(LefschetzError::BadLabels);
    }

    let b_base = lf.base.boundary() as usize;
    for (gi, g) in lf.groups.iter().enumerate() {
        let degree = g.degree();
        if g.mults.len() != b_base {
            return Err(LefschetzError::BadMultShape { group: gi });
        }
        for (ci, mults) in g.mults.iter().enumerate() {
            let sum: u32 = mults.iter().sum();
            if mults.contains(&0) || sum as usize != degree {
                return Err(LefschetzError::BadMults {
                    group: gi,
                    component: ci,
                });
            }
        }
        let expected_boundary: u32 = g.mults.iter().map(|m| m.len() as u32).sum();
        if g.cover_total.boundary() != expected_boundary {
            return Err(LefschetzError::CoverBoundaryMismatch { group: gi });
        }
        if g.cover_total.euler() != degree as i64 * lf.base.euler() {
            return Err(LefschetzError::RiemannHurwitz { group: gi });
        }
        let types: Vec<Vec<usize>> = g
            .mults
            .iter()
            .map(|m| {
                let mut t: Vec<usize> = m.iter().map(|&x| x as usize).collect();
                t.sort_unstable_by(|a, b| b.cmp(a));
                t
            })
            .collect();
        let spec = CoverSpec::unbranched(lf.base, degree, types);
        let r = exists_cover(&spec, bounds)?;
        if !r.exists || r.cover_type != Some(g.cover_total) {
            return Err(LefschetzError::CoverNotRealizable { group: gi });
        }
    }
    Ok(())
}

/// Allowability: no vanishing cycle is homologically trivial in the fiber.
pub fn is_allowable(lf: &LefschetzDescriptor) -> bool {
    lf.critical_points.iter().all(|c| !c.homologically_trivial)
}

/// Euler characteristic of the total space:
/// chi(base) * chi(fiber) + number of critical points.
pub fn euler_total(lf: &LefschetzDescriptor) -> i64 {
    lf.base.euler() * lf.fiber.euler() + lf.critical_points.len() as i64
}

/// The spinal open book induced on the boundary: one vertebra per
/// horizontal group, one paper component per base boundary circle, pages
/// diffeomorphic to the fiber. Each m-fold covering circle over a base
/// boundary circle contributes one m-cycle to that paper's boundary
/// permutation, with labels drawn from the group's partition in ascending
/// order.
pub fn boundary_sob(
    lf: &LefschetzDescriptor,
    bounds: &SearchBounds,
) -> Result<SpinalOpenBook, LefschetzError> {
    validate_descriptor(lf, bounds)?;
    let b_base = lf.base.boundary() as usize;
    let b_fiber = lf.fiber.boundary() as usize;

    // Circle ids: densely assigned per (group, base component, circle).
    let mut next_circle = 0u32;
    let mut vertebrae = Vec::new();
    // circle_ids[g][j][r]
    let mut circle_ids: Vec<Vec<Vec<SpineCircleId>>> = Vec::new();
    for (gi, g) in lf.groups.iter().enumerate() {
        let mut per_group = Vec::new();
        let mut circles = Vec::new();
        for mults in &g.mults {
            let mut per_component = Vec::new();
            for _ in 0..mults.len() {
                let id = SpineCircleId(next_circle);
                next_circle += 1;
                per_component.push(id);
                circles.push(id);
            }
            per_group.push(per_component);
        }
        circle_ids.push(per_group);
        vertebrae.push(Vertebra {
            id: VertebraId(gi as u32),
            surface: g.cover_total,
            circles,
        });
    }

    let mut papers = Vec::new();
    #[allow(clippy::needless_range_loop)]
    for j in 0..b_base {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut orbits = Vec::new();
        for (gi, g) in lf.groups.iter().enumerate() {
            let mut labels = g.labels.clone();
            labels.sort_unstable();
            let mut cursor = 0usize;
            for (r, &m) in g.mults[j].iter().enumerate() {
                let chunk: Vec<u32> = labels[cursor..cursor + m as usize].to_vec();
                cursor += m as usize;
                cycles.push(chunk.iter().map(|&l| (l - 1) as usize).collect());
                orbits.push(Orbit {
                    labels: chunk,
                    target: OrbitTarget::Circle(circle_ids[gi][j][r]),
                });
            }
        }
        let sigma = Perm::from_cycles(b_fiber, &cycles).expect("chunks are disjoint");
        papers.push(PaperComponent {
            id: PaperId(j as u32),
            page: lf.fiber,
            sigma,
            orbits,
        });
    }

    let out = SpinalOpenBook {
        generalized: false,
        vertebrae,
        papers,
        boundary_tori: vec![],
    };
    debug_assert!(out.validate().is_valid());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::obstructions::{is_symmetric, is_uniform, UniformityOutcome};

    fn bounds() -> SearchBounds {
        SearchBounds::default()
    }

    fn disk_base_two_disk_groups() -> LefschetzDescriptor {
        LefschetzDescriptor {
            base: Surface::disk(),
            fiber: Surface::annulus(),
            critical_points: vec![],
            groups: vec![
                HorizontalGroup {
                    labels: vec![1],
                    cover_total: Surface::disk(),
                    mults: vec![vec![1]],
                },
                HorizontalGroup {
                    labels: vec![2],
                    cover_total: Surface::disk(),
                    mults: vec![vec![1]],
                },
            ],
        }
    }

    #[test]
    fn allowability_is_the_triviality_scan() {
        let mut lf = disk_base_two_disk_groups();
        assert!(is_allowable(&lf));
        lf.critical_points = vec![
            CriticalPoint {
                homologically_trivial: false,
            },
            CriticalPoint {
                homologically_trivial: true,
            },
            CriticalPoint {
                homologically_trivial: false,
            },
        ];
        assert!(!is_allowable(&lf));
        lf.critical_points.remove(1);
        assert!(is_allowable(&lf));
    }

    #[test]
    fn boundary_of_disk_base_is_an_ordinary_open_book() {
        let lf = disk_base_two_disk_groups();
        let sob = boundary_sob(&lf, &bounds()).unwrap();
        assert!(sob.validate().is_valid());
        assert_eq!(sob.vertebrae.len(), 2);
        assert!(sob.vertebrae.iter().all(|v| v.surface.is_disk()));
        assert_eq!(sob.papers.len(), 1);
        assert_eq!(sob.papers[0].page, Surface::annulus());
        // All multiplicities 1, like an ordinary open book.
        assert!(sob.papers[0].orbits.iter().all(|o| o.size() == 1));
    }

    #[test]
    fn annulus_base_trivial_bundle_is_a_symmetric_summed_book() {
        let lf = LefschetzDescriptor {
            base: Surface::annulus(),
            fiber: Surface::annulus(),
            critical_points: vec![],
            groups: vec![
                HorizontalGroup {
                    labels: vec![1],
                    cover_total: Surface::annulus(),
                    mults: vec![vec![1], vec![1]],
                },
                HorizontalGroup {
                    labels: vec![2],
                    cover_total: Surface::annulus(),
                    mults: vec![vec![1], vec![1]],
                },
            ],
        };
        let sob = boundary_sob(&lf, &bounds()).unwrap();
        assert_eq!(sob.vertebrae.len(), 2);
        assert!(sob
            .vertebrae
            .iter()
            .all(|v| v.surface == Surface::annulus()));
        assert_eq!(sob.papers.len(), 2);
        assert!(sob.papers.iter().all(|p| p.page == Surface::annulus()));
        assert!(is_symmetric(&sob).unwrap().holds());
    }

    #[test]
    fn annulus_base_disk_fiber() {
        let lf = LefschetzDescriptor {
            base: Surface::annulus(),
            fiber: Surface::disk(),
            critical_points: vec![],
            groups: vec![HorizontalGroup {
                labels: vec![1],
                cover_total: Surface::annulus(),
                mults: vec![vec![1], vec![1]],
            }],
        };
        let sob = boundary_sob(&lf, &bounds()).unwrap();
        assert_eq!(sob.vertebrae.len(), 1);
        assert_eq!(sob.vertebrae[0].surface, Surface::annulus());
        assert_eq!(sob.papers.len(), 2);
        assert!(sob.papers.iter().all(|p| p.page.is_disk()));
    }

    #[test]
    fn boundary_books_are_uniform_with_unbranched_certificates() {
        let lf = LefschetzDescriptor {
            base: Surface::annulus(),
            fiber: Surface::annulus(),
            critical_points: vec![],
            groups: vec![HorizontalGroup {
                labels: vec![1, 2],
                cover_total: Surface::annulus(),
                mults: vec![vec![2], vec![2]],
            }],
        };
        let sob = boundary_sob(&lf, &bounds()).unwrap();
        match is_uniform(&sob, 3, &bounds()).unwrap() {
            UniformityOutcome::Uniform { base, assignments } => {
                assert_eq!(base, Surface::annulus());
                assert!(assignments.iter().all(|a| a.branching == 0));
            }
            UniformityOutcome::NotUniform { reason } => panic!("not uniform: {reason}"),
        }
        // The annulus is the only admissible base here, so the book is
        // also amenable.
        assert!(
            crate::obstructions::is_lefschetz_amenable(&sob, 3, &bounds())
                .unwrap()
                .holds()
        );
    }

    #[test]
    fn euler_total_examples() {
        let mut lf = disk_base_two_disk_groups();
        lf.fiber = Surface::disk();
        lf.groups = vec![HorizontalGroup {
            labels: vec![1],
            cover_total: Surface::disk(),
            mults: vec![vec![1]],
        }];
        assert_eq!(euler_total(&lf), 1); // D^4
        lf.fiber = Surface::annulus();
        lf.groups = disk_base_two_disk_groups().groups;
        lf.critical_points = vec![CriticalPoint {
            homologically_trivial: false,
        }];
        assert_eq!(euler_total(&lf), 1); // 0 + 1
        let annulus_base = LefschetzDescriptor {
            base: Surface::annulus(),
            fiber: Surface::orientable(2, 1),
            critical_points: vec![],
            groups: vec![],
        };
        assert_eq!(euler_total(&annulus_base), 0);
    }

    #[test]
    fn invalid_cover_data_is_rejected() {
        let mut lf = disk_base_two_disk_groups();
        lf.groups[0].cover_total = Surface::annulus();
        assert!(matches!(
            validate_descriptor(&lf, &bounds()),
            Err(LefschetzError::CoverBoundaryMismatch { group: 0 })
        ));
        let mut lf = disk_base_two_disk_groups();
        lf.groups[0].mults = vec![vec![2]];
        assert!(matches!(
            validate_descriptor(&lf, &bounds()),
            Err(LefschetzError::BadMults {
                group: 0,
                component: 0
            })
        ));
    }
}
