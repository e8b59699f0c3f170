//! Canonical id assignment: sorted, dense, zero-based ids so serialized
//! output is byte-stable across equivalent inputs.

use crate::sob::{
    BoundaryTorus, BoundaryTorusId, Orbit, OrbitTarget, PaperComponent, PaperId, SpinalOpenBook,
    SpineCircleId, Vertebra, VertebraId,
};
use std::collections::BTreeMap;

/// Renumbers vertebrae, circles, papers and tori to dense zero-based ids in
/// sorted order. Circles are renumbered in vertebra order, then position.
/// Orbits are sorted by their smallest label.
pub fn canonicalize(sob: &SpinalOpenBook) -> SpinalOpenBook {
    let mut vertebrae: Vec<&Vertebra> = sob.vertebrae.iter().collect();
    vertebrae.sort_by_key(|v| v.id);
    let mut papers: Vec<&PaperComponent> = sob.papers.iter().collect();
    papers.sort_by_key(|p| p.id);
    let mut tori: Vec<&BoundaryTorus> = sob.boundary_tori.iter().collect();
    tori.sort_by_key(|t| t.id);

    let mut circle_map: BTreeMap<SpineCircleId, SpineCircleId> = BTreeMap::new();
    let mut next_circle = 0u32;
    for v in &vertebrae {
        for &c in &v.circles {
            circle_map.entry(c).or_insert_with(|| {
                let id = SpineCircleId(next_circle);
                next_circle += 1;
                id
            });
        }
    }
    let torus_map: BTreeMap<BoundaryTorusId, BoundaryTorusId> = tori
        .iter()
        .enumerate()
        .map(|(i, t)| (t.id, BoundaryTorusId(i as u32)))
        .collect();

    SpinalOpenBook {
        generalized: sob.generalized,
        vertebrae: vertebrae
            .iter()
            .enumerate()
            .map(|(i, v)| Vertebra {
                id: VertebraId(i as u32),
                surface: v.surface,
                circles: v.circles.iter().map(|c| circle_map[c]).collect(),
            })
            .collect(),
        papers: papers
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let mut orbits: Vec<Orbit> = p
                    .orbits
                    .iter()
                    .map(|o| Orbit {
                        labels: o.labels.clone(),
                        target: match o.target {
                            OrbitTarget::Circle(c) => {
                                OrbitTarget::Circle(circle_map.get(&c).copied().unwrap_or(c))
                            }
                            OrbitTarget::Torus(t) => {
                                OrbitTarget::Torus(torus_map.get(&t).copied().unwrap_or(t))
                            }
                        },
                    })
                    .collect();
                orbits.sort_by_key(|o| o.labels.iter().min().copied().unwrap_or(0));
                PaperComponent {
                    id: PaperId(i as u32),
                    page: p.page,
                    sigma: p.sigma.clone(),
                    orbits,
                }
            })
            .collect(),
        boundary_tori: tori
            .iter()
            .enumerate()
            .map(|(i, t)| BoundaryTorus {
                id: BoundaryTorusId(i as u32),
                framing: t.framing,
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn canonical_is_idempotent() {
        for sob in [catalog::ob_s3(), catalog::cb3(), catalog::ot()] {
            let c = canonicalize(&sob);
            assert_eq!(c, canonicalize(&c));
            assert!(c.validate().is_valid());
        }
    }

    #[test]
    fn shifted_ids_normalize_back() {
        let mut sob = catalog::cb3();
        for v in &mut sob.vertebrae {
            v.id = VertebraId(v.id.0 * 10 + 5);
            for c in &mut v.circles {
                *c = SpineCircleId(c.0 * 7 + 3);
            }
        }
        for p in &mut sob.papers {
            p.id = PaperId(p.id.0 + 100);
            for o in &mut p.orbits {
                if let OrbitTarget::Circle(c) = &mut o.target {
                    *c = SpineCircleId(c.0 * 7 + 3);
                }
            }
        }
        assert_eq!(canonicalize(&sob), catalog::cb3());
    }
}
