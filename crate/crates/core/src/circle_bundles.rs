//! Circle bundles with invariant contact structures partitioned by a
//! multicurve, encoded combinatorially: the complementary regions with
//! their boundary sides, and the curve gluings between sides.
//!
//! Orientation data is carried by one bit per two-sided curve. The frozen
//! convention: `orientation_reversing_gluing = true` means the boundary
//! orientations induced by the two adjacent oriented regions agree under
//! the gluing, which is exactly the orientation-inverting local picture.
//! With that convention the base is orientable iff the regions admit a
//! +/- coloring where every reversing curve joins opposite colors and
//! every non-reversing curve joins equal colors; the declared orientability
//! flag is checked against this.

use crate::obstructions::{
    find_planar_torsion, verdict, ExactnessFlags, ObstructionsError, VerdictEntry, VerdictKind,
    VerdictWitness,
};
use crate::perm::Perm;
use crate::sob::{
    Orbit, OrbitTarget, PaperComponent, PaperId, SpinalOpenBook, SpineCircleId, Vertebra,
    VertebraId,
};
use crate::surfaces::Surface;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SideId(pub u32);

impl fmt::Display for SideId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A connected component of the multicurve complement, with its boundary
/// sides listed in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    pub surface: Surface,
    pub sides: Vec<SideId>,
}

/// One component of the multicurve. A one-sided curve has a Moebius-band
/// neighborhood; its fibered neighborhood is an annulus family with
/// connected boundary of multiplicity 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Curve {
    TwoSided {
        side_a: SideId,
        side_b: SideId,
        orientation_reversing_gluing: bool,
    },
    OneSided {
        side: SideId,
    },
}

/// A closed surface cut into oriented regions by a multicurve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MulticurveData {
    pub base_orientable: bool,
    pub regions: Vec<Region>,
    pub curves: Vec<Curve>,
    /// Bundle Euler number; carried as metadata, not consumed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub euler_number: Option<i64>,
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum CircleBundleError {
    #[error("no regions")]
    NoRegions,
    #[error("no curves")]
    NoCurves,
    #[error("region {0} must be an orientable surface")]
    NonOrientableRegion(usize),
    #[error("region {region} lists {sides} sides but its surface has {boundary} boundary circles")]
    SideCountMismatch {
        region: usize,
        sides: usize,
        boundary: u32,
    },
    #[error("dangling side id {0}")]
    DanglingSide(SideId),
    #[error("side id {0} used by more than one curve")]
    SideUsedTwice(SideId),
    #[error("side id {0} not used by any curve")]
    UnusedSide(SideId),
    #[error("one-sided curves require a non-orientable base")]
    OneSidedOnOrientableBase,
    #[error("the region/curve graph is disconnected; the base must be connected")]
    Disconnected,
    #[error(
        "declared base orientability {declared} contradicts the gluing structure (computed {computed})"
    )]
    OrientabilityMismatch { declared: bool, computed: bool },
    #[error(
        "the multicurve does not invert orientations: curve {curve} glues matching orientations"
    )]
    InversionFails { curve: usize },
    #[error("internal inconsistency between the direct circle-bundle criteria and the torsion engine: {0}")]
    InternalInconsistency(String),
    #[error(transparent)]
    Obstructions(#[from] ObstructionsError),
}

struct SideTable {
    /// side id -> region index
    region_of: BTreeMap<SideId, usize>,
}

fn side_table(mc: &MulticurveData) -> Result<SideTable, CircleBundleError> {
    let mut region_of = BTreeMap::new();
    for (i, r) in mc.regions.iter().enumerate() {
        if !r.surface.is_orientable() {
            return Err(CircleBundleError::NonOrientableRegion(i));
        }
        if r.sides.len() as u32 != r.surface.boundary() {
            return Err(CircleBundleError::SideCountMismatch {
                region: i,
                sides: r.sides.len(),
                boundary: r.surface.boundary(),
            });
        }
        for &s in &r.sides {
            if region_of.insert(s, i).is_some() {
                return Err(CircleBundleError::SideUsedTwice(s));
            }
        }
    }
    Ok(SideTable { region_of })
}

fn curve_sides(c: &Curve) -> Vec<SideId> {
    match c {
        Curve::TwoSided { side_a, side_b, .. } => vec![*side_a, *side_b],
        Curve::OneSided { side } => vec![*side],
    }
}

/// Structural validation: side bookkeeping, connectivity, and consistency
/// of the declared orientability with the gluing bits.
pub fn validate_multicurve(mc: &MulticurveData) -> Result<(), CircleBundleError> {
    if mc.regions.is_empty() {
        return Err(CircleBundleError::NoRegions);
    }
    if mc.curves.is_empty() {
        return Err(CircleBundleError::NoCurves);
    }
    let table = side_table(mc)?;

    let mut used: BTreeMap<SideId, ()> = BTreeMap::new();
    for c in &mc.curves {
        for s in curve_sides(c) {
            if !table.region_of.contains_key(&s) {
                return Err(CircleBundleError::DanglingSide(s));
            }
            if used.insert(s, ()).is_some() {
                return Err(CircleBundleError::SideUsedTwice(s));
            }
        }
    }
    for &s in table.region_of.keys() {
        if !used.contains_key(&s) {
            return Err(CircleBundleError::UnusedSide(s));
        }
    }

    if mc.base_orientable
        && mc
            .curves
            .iter()
            .any(|c| matches!(c, Curve::OneSided { .. }))
    {
        return Err(CircleBundleError::OneSidedOnOrientableBase);
    }

    // Connectivity of the region/curve graph.
    let n = mc.regions.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for c in &mc.curves {
        if let Curve::TwoSided { side_a, side_b, .. } = c {
            let (a, b) = (table.region_of[side_a], table.region_of[side_b]);
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
            }
        }
    }
    let root0 = find(&mut parent, 0);
    for i in 1..n {
        if find(&mut parent, i) != root0 {
            return Err(CircleBundleError::Disconnected);
        }
    }

    // Orientability: regions 2-colorable with reversing curves joining
    // opposite colors, non-reversing joining equal colors, and no
    // one-sided curves.
    let computed = computed_orientable(mc, &table);
    if computed != mc.base_orientable {
        return Err(CircleBundleError::OrientabilityMismatch {
            declared: mc.base_orientable,
            computed,
        });
    }
    Ok(())
}

fn computed_orientable(mc: &MulticurveData, table: &SideTable) -> bool {
    if mc
        .curves
        .iter()
        .any(|c| matches!(c, Curve::OneSided { .. }))
    {
        return false;
    }
    // Union-find with parity.
    let n = mc.regions.len();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut parity: Vec<u8> = vec![0; n];
    fn find(parent: &mut [usize], parity: &mut [u8], x: usize) -> (usize, u8) {
        if parent[x] == x {
            return (x, 0);
        }
        let (root, p) = find(parent, parity, parent[x]);
        parent[x] = root;
        parity[x] ^= p;
        (root, parity[x])
    }
    for c in &mc.curves {
        if let Curve::TwoSided {
            side_a,
            side_b,
            orientation_reversing_gluing,
        } = c
        {
            let want = u8::from(*orientation_reversing_gluing); // 1 = opposite colors
            let (ra, pa) = find(&mut parent, &mut parity, table.region_of[side_a]);
            let (rb, pb) = find(&mut parent, &mut parity, table.region_of[side_b]);
            if ra == rb {
                if pa ^ pb != want {
                    return false;
                }
            } else {
                parent[ra] = rb;
                parity[ra] = pa ^ pb ^ want;
            }
        }
    }
    true
}

/// Curve indices whose two sides lie on the same region; possible only over
/// non-orientable bases, and worth flagging in reports.
pub fn self_glued_curves(mc: &MulticurveData) -> Vec<usize> {
    let Ok(table) = side_table(mc) else {
        return Vec::new();
    };
    mc.curves
        .iter()
        .enumerate()
        .filter_map(|(i, c)| match c {
            Curve::TwoSided { side_a, side_b, .. }
                if table.region_of.get(side_a) == table.region_of.get(side_b) =>
            {
                Some(i)
            }
            _ => None,
        })
        .collect()
}

/// True iff every gluing inverts orientations: each two-sided curve carries
/// the reversing bit, and one-sided curves pass automatically (their
/// side-swapping monodromy supplies the inversion).
pub fn inverts_orientations(mc: &MulticurveData) -> Result<bool, CircleBundleError> {
    validate_multicurve(mc)?;
    for c in &mc.curves {
        if let Curve::TwoSided {
            orientation_reversing_gluing: false,
            ..
        } = c
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Builds the spinal open book of the partitioned circle bundle: one
/// vertebra per region, one annulus-page family per curve. A one-sided
/// curve contributes a family with connected boundary of multiplicity 2.
pub fn build_sob(mc: &MulticurveData) -> Result<SpinalOpenBook, CircleBundleError> {
    for (i, c) in mc.curves.iter().enumerate() {
        if let Curve::TwoSided {
            orientation_reversing_gluing: false,
            ..
        } = c
        {
            validate_multicurve(mc)?;
            return Err(CircleBundleError::InversionFails { curve: i });
        }
    }
    if !inverts_orientations(mc)? {
        unreachable!("non-reversing curves already rejected");
    }

    let vertebrae: Vec<Vertebra> = mc
        .regions
        .iter()
        .enumerate()
        .map(|(i, r)| Vertebra {
            id: VertebraId(i as u32),
            surface: r.surface,
            circles: r.sides.iter().map(|s| SpineCircleId(s.0)).collect(),
        })
        .collect();

    let papers: Vec<PaperComponent> = mc
        .curves
        .iter()
        .enumerate()
        .map(|(i, c)| match c {
            Curve::TwoSided { side_a, side_b, .. } => PaperComponent {
                id: PaperId(i as u32),
                page: Surface::annulus(),
                sigma: Perm::identity(2),
                orbits: vec![
                    Orbit {
                        labels: vec![1],
                        target: OrbitTarget::Circle(SpineCircleId(side_a.0)),
                    },
                    Orbit {
                        labels: vec![2],
                        target: OrbitTarget::Circle(SpineCircleId(side_b.0)),
                    },
                ],
            },
            Curve::OneSided { side } => PaperComponent {
                id: PaperId(i as u32),
                page: Surface::annulus(),
                sigma: Perm::from_cycles(2, &[vec![0, 1]]).expect("transposition"),
                orbits: vec![Orbit {
                    labels: vec![1, 2],
                    target: OrbitTarget::Circle(SpineCircleId(side.0)),
                }],
            },
        })
        .collect();

    let out = SpinalOpenBook {
        generalized: false,
        vertebrae,
        papers,
        boundary_tori: vec![],
    };
    debug_assert!(out.validate().is_valid());
    Ok(out)
}

pub const CITE_CB_TORSION_MANY_REGIONS: &str =
    "three or more complementary regions force planar 1-torsion";
pub const CITE_CB_TORSION_NON_ORIENTABLE: &str =
    "a disconnected complement over a non-orientable base forces planar 1-torsion";
pub const CITE_CB_EMBEDDING: &str =
    "a circle bundle partitioned by a nonempty multicurve admits no non-separating contact-type embeddings";
pub const CITE_CB_SEMIFILLING: &str =
    "a circle bundle partitioned by a nonempty multicurve admits no strong semifillings with disconnected boundary";

/// Applies the direct region-count criteria and cross-checks them against
/// the general torsion engine on the built book; any disagreement is a hard
/// internal error. The non-separating-embedding and semifilling verdicts
/// hold unconditionally here because the pages are annuli.
pub fn circle_bundle_verdicts(mc: &MulticurveData) -> Result<Vec<VerdictEntry>, CircleBundleError> {
    let sob = build_sob(mc)?;
    let flags = ExactnessFlags::disk_rule(&sob);

    let r = mc.regions.len();
    let criteria_fire = r >= 3 || (r >= 2 && !mc.base_orientable);
    let engine_torsion = find_planar_torsion(&sob, &flags)?;

    if criteria_fire != engine_torsion.is_some() {
        return Err(CircleBundleError::InternalInconsistency(format!(
            "criteria predict torsion = {criteria_fire}, engine found {:?}",
            engine_torsion
        )));
    }
    if let Some(w) = &engine_torsion {
        debug_assert_eq!(w.order, 1, "annulus pages always give order-1 torsion");
    }

    let mut out = verdict(&sob, &flags)?;
    if let Some(e) = out
        .iter_mut()
        .find(|e| e.verdict == VerdictKind::NotStronglyFillable)
    {
        // Attach the sharper circle-bundle citation.
        e.citation = if r >= 3 {
            CITE_CB_TORSION_MANY_REGIONS.to_string()
        } else {
            CITE_CB_TORSION_NON_ORIENTABLE.to_string()
        };
    }

    let piece_witness = || VerdictWitness::PlanarPiece {
        piece: sob.papers[0].id,
        adjacent_spines: sob.vertebrae.iter().map(|v| v.id).collect(),
        separating: crate::obstructions::Separating::Unknown,
    };
    if !out
        .iter()
        .any(|e| e.verdict == VerdictKind::NoNonSeparatingContactEmbedding)
    {
        out.push(VerdictEntry {
            verdict: VerdictKind::NoNonSeparatingContactEmbedding,
            witness: piece_witness(),
            citation: CITE_CB_EMBEDDING.to_string(),
        });
    }
    if !out
        .iter()
        .any(|e| e.verdict == VerdictKind::NoDisconnectedSemifilling)
    {
        out.push(VerdictEntry {
            verdict: VerdictKind::NoDisconnectedSemifilling,
            witness: piece_witness(),
            citation: CITE_CB_SEMIFILLING.to_string(),
        });
    }
    out.sort_by_key(|e| e.verdict);
    Ok(out)
}
