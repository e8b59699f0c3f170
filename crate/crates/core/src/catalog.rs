//! Named example books used by the test suites and shipped in the CLI zoo.

use crate::circle_bundles::{Curve, MulticurveData, Region, SideId};
use crate::perm::Perm;
use crate::sob::{
    BoundaryTorusId, Orbit, OrbitTarget, PaperComponent, PaperId, SpinalOpenBook, SpineCircleId,
    Vertebra, VertebraId,
};
use crate::surfaces::Surface;

fn circle(id: u32) -> OrbitTarget {
    OrbitTarget::Circle(SpineCircleId(id))
}

/// The minimal ordinary open book: one disk vertebra, one disk-page family,
/// trivial monodromy. Supports the tight three-sphere.
pub fn ob_s3() -> SpinalOpenBook {
    SpinalOpenBook {
        generalized: false,
        vertebrae: vec![Vertebra {
            id: VertebraId(0),
            surface: Surface::disk(),
            circles: vec![SpineCircleId(0)],
        }],
        papers: vec![PaperComponent {
            id: PaperId(0),
            page: Surface::disk(),
            sigma: Perm::identity(1),
            orbits: vec![Orbit {
                labels: vec![1],
                target: circle(0),
            }],
        }],
        boundary_tori: vec![],
    }
}

/// Circle bundle over a closed genus-2 surface partitioned by two curves
/// into three regions: (1,1), annulus, (1,1). Three vertebrae, two
/// annulus-page families; the standard order-1 torsion example.
pub fn cb3() -> SpinalOpenBook {
    SpinalOpenBook {
        generalized: false,
        vertebrae: vec![
            Vertebra {
                id: VertebraId(0),
                surface: Surface::orientable(1, 1),
                circles: vec![SpineCircleId(0)],
            },
            Vertebra {
                id: VertebraId(1),
                surface: Surface::annulus(),
                circles: vec![SpineCircleId(1), SpineCircleId(2)],
            },
            Vertebra {
                id: VertebraId(2),
                surface: Surface::orientable(1, 1),
                circles: vec![SpineCircleId(3)],
            },
        ],
        papers: vec![
            PaperComponent {
                id: PaperId(0),
                page: Surface::annulus(),
                sigma: Perm::identity(2),
                orbits: vec![
                    Orbit {
                        labels: vec![1],
                        target: circle(0),
                    },
                    Orbit {
                        labels: vec![2],
                        target: circle(1),
                    },
                ],
            },
            PaperComponent {
                id: PaperId(1),
                page: Surface::annulus(),
                sigma: Perm::identity(2),
                orbits: vec![
                    Orbit {
                        labels: vec![1],
                        target: circle(2),
                    },
                    Orbit {
                        labels: vec![2],
                        target: circle(3),
                    },
                ],
            },
        ],
        boundary_tori: vec![],
    }
}

/// Multicurve input reproducing `cb3` under the circle-bundle construction.
pub fn cb3_multicurve() -> MulticurveData {
    MulticurveData {
        base_orientable: true,
        regions: vec![
            Region {
                surface: Surface::orientable(1, 1),
                sides: vec![SideId(0)],
            },
            Region {
                surface: Surface::annulus(),
                sides: vec![SideId(1), SideId(2)],
            },
            Region {
                surface: Surface::orientable(1, 1),
                sides: vec![SideId(3)],
            },
        ],
        curves: vec![
            Curve::TwoSided {
                side_a: SideId(0),
                side_b: SideId(1),
                orientation_reversing_gluing: true,
            },
            Curve::TwoSided {
                side_a: SideId(2),
                side_b: SideId(3),
                orientation_reversing_gluing: true,
            },
        ],
        euler_number: None,
    }
}

/// An overtwisted example: one annulus vertebra whose two circles carry a
/// disk-page family and a genus-1 family. Non-symmetric with an interior
/// disk page, hence planar 0-torsion.
pub fn ot() -> SpinalOpenBook {
    SpinalOpenBook {
        generalized: false,
        vertebrae: vec![Vertebra {
            id: VertebraId(0),
            surface: Surface::annulus(),
            circles: vec![SpineCircleId(0), SpineCircleId(1)],
        }],
        papers: vec![
            PaperComponent {
                id: PaperId(0),
                page: Surface::disk(),
                sigma: Perm::identity(1),
                orbits: vec![Orbit {
                    labels: vec![1],
                    target: circle(0),
                }],
            },
            PaperComponent {
                id: PaperId(1),
                page: Surface::orientable(1, 1),
                sigma: Perm::identity(1),
                orbits: vec![Orbit {
                    labels: vec![1],
                    target: circle(1),
                }],
            },
        ],
        boundary_tori: vec![],
    }
}

/// Circle bundle over a one-sided curve: one paper family with connected
/// boundary attached with multiplicity 2.
pub fn moebius_circle_bundle_book() -> SpinalOpenBook {
    SpinalOpenBook {
        generalized: false,
        vertebrae: vec![Vertebra {
            id: VertebraId(0),
            surface: Surface::disk(),
            circles: vec![SpineCircleId(0)],
        }],
        papers: vec![PaperComponent {
            id: PaperId(0),
            page: Surface::annulus(),
            sigma: Perm::from_cycles(2, &[vec![0, 1]]).unwrap(),
            orbits: vec![Orbit {
                labels: vec![1, 2],
                target: circle(0),
            }],
        }],
        boundary_tori: vec![],
    }
}

/// Two vertebrae with the given surfaces (each must have two boundary
/// circles) joined by two annulus-page families, all multiplicities 1.
pub fn two_vertebra_circle_bundle(a: Surface, b: Surface) -> SpinalOpenBook {
    assert_eq!(a.boundary(), 2);
    assert_eq!(b.boundary(), 2);
    SpinalOpenBook {
        generalized: false,
        vertebrae: vec![
            Vertebra {
                id: VertebraId(0),
                surface: a,
                circles: vec![SpineCircleId(0), SpineCircleId(1)],
            },
            Vertebra {
                id: VertebraId(1),
                surface: b,
                circles: vec![SpineCircleId(2), SpineCircleId(3)],
            },
        ],
        papers: vec![
            PaperComponent {
                id: PaperId(0),
                page: Surface::annulus(),
                sigma: Perm::identity(2),
                orbits: vec![
                    Orbit {
                        labels: vec![1],
                        target: circle(0),
                    },
                    Orbit {
                        labels: vec![2],
                        target: circle(2),
                    },
                ],
            },
            PaperComponent {
                id: PaperId(1),
                page: Surface::annulus(),
                sigma: Perm::identity(2),
                orbits: vec![
                    Orbit {
                        labels: vec![1],
                        target: circle(1),
                    },
                    Orbit {
                        labels: vec![2],
                        target: circle(3),
                    },
                ],
            },
        ],
        boundary_tori: vec![],
    }
}

/// One annulus vertebra with both circles on a single two-boundary paper
/// family: symmetric and uniform over the disk, but only via a cover with
/// two branch points.
pub fn annulus_over_disk_branched() -> SpinalOpenBook {
    SpinalOpenBook {
        generalized: false,
        vertebrae: vec![Vertebra {
            id: VertebraId(0),
            surface: Surface::annulus(),
            circles: vec![SpineCircleId(0), SpineCircleId(1)],
        }],
        papers: vec![PaperComponent {
            id: PaperId(0),
            page: Surface::annulus(),
            sigma: Perm::identity(2),
            orbits: vec![
                Orbit {
                    labels: vec![1],
                    target: circle(0),
                },
                Orbit {
                    labels: vec![2],
                    target: circle(1),
                },
            ],
        }],
        boundary_tori: vec![],
    }
}

/// One annulus-page family attached once to each of two disk vertebrae:
/// the input shape of the binding sum.
pub fn two_disk_annulus_book() -> SpinalOpenBook {
    SpinalOpenBook {
        generalized: false,
        vertebrae: vec![
            Vertebra {
                id: VertebraId(0),
                surface: Surface::disk(),
                circles: vec![SpineCircleId(0)],
            },
            Vertebra {
                id: VertebraId(1),
                surface: Surface::disk(),
                circles: vec![SpineCircleId(1)],
            },
        ],
        papers: vec![PaperComponent {
            id: PaperId(0),
            page: Surface::annulus(),
            sigma: Perm::identity(2),
            orbits: vec![
                Orbit {
                    labels: vec![1],
                    target: circle(0),
                },
                Orbit {
                    labels: vec![2],
                    target: circle(1),
                },
            ],
        }],
        boundary_tori: vec![],
    }
}

/// One annulus vertebra carrying two disk-page families, one per circle.
pub fn ot_like_with_disk_pages() -> SpinalOpenBook {
    SpinalOpenBook {
        generalized: false,
        vertebrae: vec![Vertebra {
            id: VertebraId(0),
            surface: Surface::annulus(),
            circles: vec![SpineCircleId(0), SpineCircleId(1)],
        }],
        papers: vec![
            PaperComponent {
                id: PaperId(0),
                page: Surface::disk(),
                sigma: Perm::identity(1),
                orbits: vec![Orbit {
                    labels: vec![1],
                    target: circle(0),
                }],
            },
            PaperComponent {
                id: PaperId(1),
                page: Surface::disk(),
                sigma: Perm::identity(1),
                orbits: vec![Orbit {
                    labels: vec![1],
                    target: circle(1),
                }],
            },
        ],
        boundary_tori: vec![],
    }
}

/// Disjoint union, shifting the ids of `b` past those of `a`.
pub fn disjoint_union(a: &SpinalOpenBook, b: &SpinalOpenBook) -> SpinalOpenBook {
    let shift_v = a.vertebrae.iter().map(|v| v.id.0 + 1).max().unwrap_or(0);
    let shift_c = a
        .vertebrae
        .iter()
        .flat_map(|v| v.circles.iter().map(|c| c.0 + 1))
        .max()
        .unwrap_or(0);
    let shift_p = a.papers.iter().map(|p| p.id.0 + 1).max().unwrap_or(0);
    let shift_t = a
        .boundary_tori
        .iter()
        .map(|t| t.id.0 + 1)
        .max()
        .unwrap_or(0);

    let mut out = a.clone();
    out.generalized = a.generalized || b.generalized;
    for v in &b.vertebrae {
        out.vertebrae.push(Vertebra {
            id: VertebraId(v.id.0 + shift_v),
            surface: v.surface,
            circles: v
                .circles
                .iter()
                .map(|c| SpineCircleId(c.0 + shift_c))
                .collect(),
        });
    }
    for p in &b.papers {
        out.papers.push(PaperComponent {
            id: PaperId(p.id.0 + shift_p),
            page: p.page,
            sigma: p.sigma.clone(),
            orbits: p
                .orbits
                .iter()
                .map(|o| Orbit {
                    labels: o.labels.clone(),
                    target: match o.target {
                        OrbitTarget::Circle(c) => OrbitTarget::Circle(SpineCircleId(c.0 + shift_c)),
                        OrbitTarget::Torus(t) => OrbitTarget::Torus(BoundaryTorusId(t.0 + shift_t)),
                    },
                })
                .collect(),
        });
    }
    for t in &b.boundary_tori {
        out.boundary_tori.push(crate::sob::BoundaryTorus {
            id: BoundaryTorusId(t.id.0 + shift_t),
            framing: t.framing,
        });
    }
    out
}
