//! Deterministic random generators for books, flags and multicurves, used
//! by the randomized test suites and benches. Every generator is a pure
//! function of its seed.

use crate::circle_bundles::{Curve, MulticurveData, Region, SideId};
use crate::obstructions::{Exactness, ExactnessFlags};
use crate::perm::Perm;
use crate::sob::{
    Orbit, OrbitTarget, PaperComponent, PaperId, SpinalOpenBook, SpineCircleId, Vertebra,
    VertebraId,
};
use crate::surfaces::Surface;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct BookGenConfig {
    pub max_vertebrae: u32,
    pub max_papers: u32,
    pub max_page_genus: u32,
    pub max_page_boundary: u32,
    pub max_orbit_size: u32,
    pub max_vertebra_genus: u32,
    /// Probability of drawing from the structured symmetric family instead
    /// of the fully random one.
    pub symmetric_bias: f64,
}

impl Default for BookGenConfig {
    fn default() -> Self {
        BookGenConfig {
            max_vertebrae: 4,
            max_papers: 4,
            max_page_genus: 2,
            max_page_boundary: 4,
            max_orbit_size: 3,
            max_vertebra_genus: 2,
            symmetric_bias: 0.5,
        }
    }
}

/// A random valid closed book (no boundary tori). Validity holds by
/// construction: orbits are cycles of the built permutation and every
/// circle carries exactly one orbit.
pub fn random_closed_book(seed: u64, cfg: &BookGenConfig) -> SpinalOpenBook {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sob = if rng.gen_bool(cfg.symmetric_bias) {
        symmetric_book(&mut rng, cfg)
    } else {
        free_book(&mut rng, cfg)
    };
    debug_assert!(sob.validate().is_valid());
    sob
}

/// Structured generator: one page type, every paper sees every vertebra
/// with the same boundary count.
fn symmetric_book(rng: &mut ChaCha8Rng, cfg: &BookGenConfig) -> SpinalOpenBook {
    let n_papers = rng.gen_range(1..=cfg.max_papers.min(3));
    let n_vert = rng.gen_range(1..=cfg.max_vertebrae.min(3));
    // per-vertebra counts k_i with sum <= max_page_boundary
    let mut counts = Vec::new();
    let mut budget = cfg.max_page_boundary.max(n_vert);
    for i in 0..n_vert {
        let remaining = n_vert - i - 1;
        let hi = (budget - remaining).min(cfg.max_orbit_size.min(2));
        let k = rng.gen_range(1..=hi.max(1));
        counts.push(k);
        budget -= k;
    }
    let page_boundary: u32 = counts.iter().sum();
    let page = Surface::orientable(rng.gen_range(0..=cfg.max_page_genus), page_boundary);

    let mut next_circle = 0u32;
    let mut vertebra_circles: Vec<Vec<SpineCircleId>> = vec![Vec::new(); n_vert as usize];
    let mut papers = Vec::new();
    for j in 0..n_papers {
        let mut label = 1u32;
        let mut orbits = Vec::new();
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        for (i, &k) in counts.iter().enumerate() {
            // split k into orbit sizes
            let mut rest = k;
            while rest > 0 {
                let size = rng.gen_range(1..=rest.min(cfg.max_orbit_size));
                let labels: Vec<u32> = (label..label + size).collect();
                label += size;
                rest -= size;
                let circle = SpineCircleId(next_circle);
                next_circle += 1;
                vertebra_circles[i].push(circle);
                cycles.push(labels.iter().map(|&l| (l - 1) as usize).collect());
                orbits.push(Orbit {
                    labels,
                    target: OrbitTarget::Circle(circle),
                });
            }
        }
        let sigma = Perm::from_cycles(page_boundary as usize, &cycles).expect("disjoint cycles");
        papers.push(PaperComponent {
            id: PaperId(j),
            page,
            sigma,
            orbits,
        });
    }

    let vertebrae = vertebra_circles
        .into_iter()
        .enumerate()
        .map(|(i, circles)| Vertebra {
            id: VertebraId(i as u32),
            surface: Surface::orientable(
                rng.gen_range(0..=cfg.max_vertebra_genus),
                circles.len() as u32,
            ),
            circles,
        })
        .collect();
    SpinalOpenBook {
        generalized: false,
        vertebrae,
        papers,
        boundary_tori: vec![],
    }
}

/// Unstructured generator: random pages, random orbit partitions, circles
/// distributed over random vertebrae.
fn free_book(rng: &mut ChaCha8Rng, cfg: &BookGenConfig) -> SpinalOpenBook {
    let n_papers = rng.gen_range(1..=cfg.max_papers);
    let n_vert = rng.gen_range(1..=cfg.max_vertebrae);

    let mut next_circle = 0u32;
    let mut circle_vertebra: Vec<(SpineCircleId, u32)> = Vec::new();
    let mut papers = Vec::new();
    for j in 0..n_papers {
        let b = rng.gen_range(1..=cfg.max_page_boundary);
        let page = Surface::orientable(rng.gen_range(0..=cfg.max_page_genus), b);
        let mut orbits = Vec::new();
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut label = 1u32;
        while label <= b {
            let size = rng.gen_range(1..=cfg.max_orbit_size.min(b - label + 1));
            let labels: Vec<u32> = (label..label + size).collect();
            label += size;
            let circle = SpineCircleId(next_circle);
            next_circle += 1;
            circle_vertebra.push((circle, rng.gen_range(0..n_vert)));
            cycles.push(labels.iter().map(|&l| (l - 1) as usize).collect());
            orbits.push(Orbit {
                labels,
                target: OrbitTarget::Circle(circle),
            });
        }
        let sigma = Perm::from_cycles(b as usize, &cycles).expect("disjoint cycles");
        papers.push(PaperComponent {
            id: PaperId(j),
            page,
            sigma,
            orbits,
        });
    }

    // Assemble vertebrae, dropping empty slots.
    let mut vertebrae = Vec::new();
    let mut id = 0u32;
    for slot in 0..n_vert {
        let circles: Vec<SpineCircleId> = circle_vertebra
            .iter()
            .filter(|(_, s)| *s == slot)
            .map(|(c, _)| *c)
            .collect();
        if circles.is_empty() {
            continue;
        }
        vertebrae.push(Vertebra {
            id: VertebraId(id),
            surface: Surface::orientable(
                rng.gen_range(0..=cfg.max_vertebra_genus),
                circles.len() as u32,
            ),
            circles,
        });
        id += 1;
    }
    SpinalOpenBook {
        generalized: false,
        vertebrae,
        papers,
        boundary_tori: vec![],
    }
}

/// Random exactness flags over the book's vertebrae.
pub fn random_flags(seed: u64, sob: &SpinalOpenBook) -> ExactnessFlags {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ExactnessFlags {
        flags: sob
            .vertebrae
            .iter()
            .map(|v| {
                let e = match rng.gen_range(0..3) {
                    0 => Exactness::Exact,
                    1 => Exactness::NotExact,
                    _ => Exactness::Unknown,
                };
                (v.id, e)
            })
            .collect(),
    }
}

/// A random connected multicurve whose gluings all invert orientations.
/// The orientability flag is derived from the structure, so the data always
/// validates.
pub fn random_multicurve(seed: u64) -> MulticurveData {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_regions = rng.gen_range(1..=4usize);
    let mut next_side = 0u32;
    let mut region_sides: Vec<Vec<SideId>> = vec![Vec::new(); n_regions];
    let mut curves = Vec::new();
    let mut fresh_side = |region_sides: &mut Vec<Vec<SideId>>, r: usize| {
        let s = SideId(next_side);
        next_side += 1;
        region_sides[r].push(s);
        s
    };

    // Spanning tree keeps the base connected.
    for r in 1..n_regions {
        let other = rng.gen_range(0..r);
        let side_a = fresh_side(&mut region_sides, other);
        let side_b = fresh_side(&mut region_sides, r);
        curves.push(Curve::TwoSided {
            side_a,
            side_b,
            orientation_reversing_gluing: true,
        });
    }
    // Extra curves: cross gluings, self gluings or one-sided components.
    let extras = rng.gen_range(usize::from(n_regions == 1)..=2);
    for _ in 0..extras {
        match rng.gen_range(0..3) {
            0 => {
                let a = rng.gen_range(0..n_regions);
                let b = rng.gen_range(0..n_regions);
                let side_a = fresh_side(&mut region_sides, a);
                let side_b = fresh_side(&mut region_sides, b);
                curves.push(Curve::TwoSided {
                    side_a,
                    side_b,
                    orientation_reversing_gluing: true,
                });
            }
            1 => {
                let r = rng.gen_range(0..n_regions);
                let side = fresh_side(&mut region_sides, r);
                curves.push(Curve::OneSided { side });
            }
            _ => {
                let r = rng.gen_range(0..n_regions);
                let side_a = fresh_side(&mut region_sides, r);
                let side_b = fresh_side(&mut region_sides, r);
                curves.push(Curve::TwoSided {
                    side_a,
                    side_b,
                    orientation_reversing_gluing: true,
                });
            }
        }
    }

    // With every gluing inverting, the base is orientable iff there are no
    // one-sided curves and the region graph is bipartite without self-loops.
    let base_orientable = derive_orientable(n_regions, &region_sides, &curves);

    let regions = region_sides
        .into_iter()
        .map(|sides| Region {
            surface: Surface::orientable(rng.gen_range(0..=2), sides.len() as u32),
            sides,
        })
        .collect();

    MulticurveData {
        base_orientable,
        regions,
        curves,
        euler_number: if rng.gen_bool(0.3) {
            Some(rng.gen_range(-3..=3))
        } else {
            None
        },
    }
}

/// A random valid Lefschetz descriptor within the default cover-search
/// bounds: every horizontal group is checked (or repaired) to carry
/// realizable unbranched cover data.
pub fn random_lefschetz(seed: u64) -> crate::lefschetz::LefschetzDescriptor {
    use crate::covers::{exists_cover, CoverSpec, SearchBounds};
    use crate::lefschetz::{CriticalPoint, HorizontalGroup, LefschetzDescriptor};
    use crate::perm::partitions;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bounds = SearchBounds::default();
    let base = Surface::orientable(rng.gen_range(0..=1), rng.gen_range(1..=2));
    let fiber_boundary = rng.gen_range(1..=4u32);
    let fiber = Surface::orientable(rng.gen_range(0..=2), fiber_boundary);

    // Partition the fiber boundary labels into one or two groups.
    let n_groups = rng.gen_range(1..=fiber_boundary.min(2));
    let split = if n_groups == 2 {
        rng.gen_range(1..fiber_boundary)
    } else {
        fiber_boundary
    };
    let label_sets: Vec<Vec<u32>> = if n_groups == 2 {
        vec![
            (1..=split).collect(),
            (split + 1..=fiber_boundary).collect(),
        ]
    } else {
        vec![(1..=fiber_boundary).collect()]
    };

    let mut groups = Vec::new();
    for labels in label_sets {
        let degree = labels.len();
        let parts = partitions(degree);
        let mut found = None;
        for _ in 0..30 {
            let mults: Vec<Vec<u32>> = (0..base.boundary())
                .map(|_| {
                    parts[rng.gen_range(0..parts.len())]
                        .iter()
                        .map(|&p| p as u32)
                        .collect()
                })
                .collect();
            let boundary: u32 = mults.iter().map(|m| m.len() as u32).sum();
            let chi = degree as i64 * base.euler();
            let Some(total) = Surface::orientable_from_euler(chi, boundary) else {
                continue;
            };
            let types: Vec<Vec<usize>> = mults
                .iter()
                .map(|m| m.iter().map(|&x| x as usize).collect())
                .collect();
            let spec = CoverSpec::unbranched(base, degree, types);
            if let Ok(r) = exists_cover(&spec, &bounds) {
                if r.exists && r.cover_type == Some(total) {
                    found = Some(HorizontalGroup {
                        labels: labels.clone(),
                        cover_total: total,
                        mults,
                    });
                    break;
                }
            }
        }
        match found {
            Some(g) => groups.push(g),
            None => {
                // Fall back to degree-1 singleton groups: always realizable.
                for l in labels {
                    groups.push(HorizontalGroup {
                        labels: vec![l],
                        cover_total: base,
                        mults: (0..base.boundary()).map(|_| vec![1]).collect(),
                    });
                }
            }
        }
    }

    let critical_points = (0..rng.gen_range(0..=3))
        .map(|_| CriticalPoint {
            homologically_trivial: rng.gen_bool(0.3),
        })
        .collect();
    LefschetzDescriptor {
        base,
        fiber,
        critical_points,
        groups,
    }
}

fn derive_orientable(n: usize, region_sides: &[Vec<SideId>], curves: &[Curve]) -> bool {
    let region_of = |s: SideId| -> usize {
        region_sides
            .iter()
            .position(|sides| sides.contains(&s))
            .expect("side exists")
    };
    let mut color = vec![-1i8; n];
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for c in curves {
        match c {
            Curve::OneSided { .. } => return false,
            Curve::TwoSided { side_a, side_b, .. } => {
                let (a, b) = (region_of(*side_a), region_of(*side_b));
                if a == b {
                    return false;
                }
                edges.push((a, b));
            }
        }
    }
    // 2-color via BFS.
    for start in 0..n {
        if color[start] != -1 {
            continue;
        }
        color[start] = 0;
        let mut queue = vec![start];
        while let Some(r) = queue.pop() {
            for &(a, b) in &edges {
                let other = if a == r {
                    b
                } else if b == r {
                    a
                } else {
                    continue;
                };
                if color[other] == -1 {
                    color[other] = 1 - color[r];
                    queue.push(other);
                } else if color[other] == color[r] {
                    return false;
                }
            }
        }
    }
    true
}
