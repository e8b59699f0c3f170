//! Classification predicates (symmetric / uniform / Lefschetz-amenable) and
//! the planar-torsion fillability verdicts.
//!
//! The book itself is treated as the torsion domain; ambient cohomology
//! enters only through per-vertebra exactness flags supplied by the caller.
//! "Fully separating" is certified through the disk-vertebra rule (every
//! closed 2-form is exact on a solid torus); anything else is reported as
//! unknown rather than guessed.

use crate::covers::{exists_cover, CoverResult, CoverSpec, CoversError, SearchBounds};
use crate::sob::{OrbitTarget, PaperId, SobError, SpinalOpenBook, VertebraId};
use crate::surfaces::{same_type, Surface};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, thiserror::Error)]
pub enum ObstructionsError {
    #[error("symmetry undefined for generalized books")]
    GeneralizedBook,
    #[error(transparent)]
    Sob(#[from] SobError),
    #[error(transparent)]
    Covers(#[from] CoversError),
}

/// Exactness of the ambient closed 2-form on each spinal component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    Exact,
    NotExact,
    Unknown,
}

/// Per-vertebra exactness flags; anything unlisted is `Unknown`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactnessFlags {
    pub flags: BTreeMap<VertebraId, Exactness>,
}

impl ExactnessFlags {
    pub fn all_unknown() -> Self {
        ExactnessFlags::default()
    }

    pub fn all_exact(sob: &SpinalOpenBook) -> Self {
        ExactnessFlags {
            flags: sob
                .vertebrae
                .iter()
                .map(|v| (v.id, Exactness::Exact))
                .collect(),
        }
    }

    /// Marks exactly the disk vertebrae `Exact`: closed 2-forms are always
    /// exact on a solid torus.
    pub fn disk_rule(sob: &SpinalOpenBook) -> Self {
        ExactnessFlags {
            flags: sob
                .vertebrae
                .iter()
                .map(|v| {
                    let e = if v.surface.is_disk() {
                        Exactness::Exact
                    } else {
                        Exactness::Unknown
                    };
                    (v.id, e)
                })
                .collect(),
        }
    }

    pub fn get(&self, id: VertebraId) -> Exactness {
        self.flags.get(&id).copied().unwrap_or(Exactness::Unknown)
    }
}

/// Why a book fails to be symmetric.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetryWitness {
    BoundaryTorus {
        torus: crate::sob::BoundaryTorusId,
    },
    PageTypeMismatch {
        paper_a: PaperId,
        paper_b: PaperId,
    },
    CountMismatch {
        vertebra: VertebraId,
        paper_a: PaperId,
        count_a: u32,
        paper_b: PaperId,
        count_b: u32,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SymmetryOutcome {
    /// Symmetric, with the per-vertebra page-boundary counts k_i.
    Symmetric {
        counts: BTreeMap<VertebraId, u32>,
    },
    NotSymmetric {
        witness: SymmetryWitness,
    },
}

impl SymmetryOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, SymmetryOutcome::Symmetric { .. })
    }
}

/// Number of page-boundary components of paper `j` lying over vertebra `i`,
/// i.e. the sum of sizes of j's orbits targeting circles of i.
fn count_on_vertebra(paper: &crate::sob::PaperComponent, v: &crate::sob::Vertebra) -> u32 {
    paper
        .orbits
        .iter()
        .filter_map(|o| match o.target {
            OrbitTarget::Circle(c) if v.circles.contains(&c) => Some(o.size()),
            _ => None,
        })
        .sum()
}

/// Decides symmetry: the book is closed, all pages diffeomorphic, and each
/// vertebra sees the same number of page boundaries from every paper
/// component.
pub fn is_symmetric(sob: &SpinalOpenBook) -> Result<SymmetryOutcome, ObstructionsError> {
    if sob.generalized {
        return Err(ObstructionsError::GeneralizedBook);
    }
    sob.require_valid()?;

    if let Some(t) = sob.boundary_tori.first() {
        return Ok(SymmetryOutcome::NotSymmetric {
            witness: SymmetryWitness::BoundaryTorus { torus: t.id },
        });
    }

    let mut papers: Vec<&crate::sob::PaperComponent> = sob.papers.iter().collect();
    papers.sort_by_key(|p| p.id);
    for pair in papers.windows(2) {
        if !same_type(pair[0].page, pair[1].page) {
            return Ok(SymmetryOutcome::NotSymmetric {
                witness: SymmetryWitness::PageTypeMismatch {
                    paper_a: pair[0].id,
                    paper_b: pair[1].id,
                },
            });
        }
    }

    let mut vertebrae: Vec<&crate::sob::Vertebra> = sob.vertebrae.iter().collect();
    vertebrae.sort_by_key(|v| v.id);
    let mut counts = BTreeMap::new();
    for v in &vertebrae {
        let mut per_paper: Option<(PaperId, u32)> = None;
        for p in &papers {
            let c = count_on_vertebra(p, v);
            match per_paper {
                None => per_paper = Some((p.id, c)),
                Some((first_paper, first_count)) => {
                    if c != first_count {
                        return Ok(SymmetryOutcome::NotSymmetric {
                            witness: SymmetryWitness::CountMismatch {
                                vertebra: v.id,
                                paper_a: first_paper,
                                count_a: first_count,
                                paper_b: p.id,
                                count_b: c,
                            },
                        });
                    }
                }
            }
        }
        counts.insert(v.id, per_paper.map(|(_, c)| c).unwrap_or(0));
    }
    Ok(SymmetryOutcome::Symmetric { counts })
}

/// Independent re-check of the symmetry definition by direct enumeration of
/// its quantifiers. Counts individual page-boundary labels rather than orbit
/// sizes and compares surface fields directly; shares no code with
/// `is_symmetric`.
pub fn brute_force_symmetry_oracle(sob: &SpinalOpenBook) -> Result<bool, ObstructionsError> {
    if sob.generalized {
        return Err(ObstructionsError::GeneralizedBook);
    }
    sob.require_valid()?;

    if !sob.boundary_tori.is_empty() {
        return Ok(false);
    }
    for p in &sob.papers {
        for o in &p.orbits {
            if matches!(o.target, OrbitTarget::Torus(_)) {
                return Ok(false);
            }
        }
    }

    // All pages diffeomorphic, by field comparison.
    for p in &sob.papers {
        for q in &sob.papers {
            let ok = match (p.page, q.page) {
                (
                    Surface::Orientable {
                        genus: g1,
                        boundary: b1,
                    },
                    Surface::Orientable {
                        genus: g2,
                        boundary: b2,
                    },
                ) => g1 == g2 && b1 == b2,
                _ => false,
            };
            if !ok {
                return Ok(false);
            }
        }
    }

    // For every vertebra there must be a k with: every paper has exactly k
    // boundary labels over it.
    for v in &sob.vertebrae {
        let mut k: Option<usize> = None;
        for p in &sob.papers {
            let mut labels_over_v = 0usize;
            for label in 1..=p.page.boundary() {
                // find the orbit containing this label
                for o in &p.orbits {
                    if o.labels.contains(&label) {
                        if let OrbitTarget::Circle(c) = o.target {
                            if v.circles.contains(&c) {
                                labels_over_v += 1;
                            }
                        }
                    }
                }
            }
            match k {
                None => k = Some(labels_over_v),
                Some(prev) => {
                    if prev != labels_over_v {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Cover assignment for one vertebra in a uniform structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertebraCover {
    pub vertebra: VertebraId,
    pub degree: u32,
    pub branching: usize,
    pub cover: CoverResult,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum UniformityOutcome {
    Uniform {
        base: Surface,
        assignments: Vec<VertebraCover>,
    },
    NotUniform {
        reason: String,
    },
}

impl UniformityOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, UniformityOutcome::Uniform { .. })
    }

    pub fn all_unbranched(&self) -> bool {
        match self {
            UniformityOutcome::Uniform { assignments, .. } => {
                assignments.iter().all(|a| a.branching == 0)
            }
            UniformityOutcome::NotUniform { .. } => false,
        }
    }
}

/// Per-vertebra cover data shared by the uniform and amenable searches:
/// degree k_i and, for each paper component in id order, the multiset of
/// multiplicities of that vertebra's circles attached to it.
struct CoverData {
    vertebra: VertebraId,
    surface: Surface,
    degree: usize,
    boundary_types: Vec<Vec<usize>>,
}

fn cover_data(
    sob: &SpinalOpenBook,
    counts: &BTreeMap<VertebraId, u32>,
) -> Result<Vec<CoverData>, ObstructionsError> {
    let mut papers: Vec<&crate::sob::PaperComponent> = sob.papers.iter().collect();
    papers.sort_by_key(|p| p.id);
    let mut vertebrae: Vec<&crate::sob::Vertebra> = sob.vertebrae.iter().collect();
    vertebrae.sort_by_key(|v| v.id);

    let mut out = Vec::new();
    for v in vertebrae {
        let degree = counts[&v.id] as usize;
        let mut boundary_types = Vec::new();
        for p in &papers {
            let mut mults: Vec<usize> = p
                .orbits
                .iter()
                .filter_map(|o| match o.target {
                    OrbitTarget::Circle(c) if v.circles.contains(&c) => Some(o.size() as usize),
                    _ => None,
                })
                .collect();
            mults.sort_unstable_by(|a, b| b.cmp(a));
            debug_assert_eq!(mults.iter().sum::<usize>(), degree);
            boundary_types.push(mults);
        }
        out.push(CoverData {
            vertebra: v.id,
            surface: v.surface,
            degree,
            boundary_types,
        });
    }
    Ok(out)
}

/// Searches for a common base surface over which every vertebra is a
/// branched cover with the prescribed boundary behavior. Bases with
/// unbranched covers are preferred; among feasible bases the search returns
/// the one of smallest genus.
pub fn is_uniform(
    sob: &SpinalOpenBook,
    max_base_genus: u32,
    bounds: &SearchBounds,
) -> Result<UniformityOutcome, ObstructionsError> {
    let counts = match is_symmetric(sob)? {
        SymmetryOutcome::Symmetric { counts } => counts,
        SymmetryOutcome::NotSymmetric { .. } => {
            return Ok(UniformityOutcome::NotUniform {
                reason: "not symmetric".into(),
            })
        }
    };
    let data = cover_data(sob, &counts)?;
    let b0 = sob.papers.len() as u32;

    for unbranched_only in [true, false] {
        for genus in 0..=max_base_genus {
            let base = Surface::orientable(genus, b0);
            if let Some(assignments) = try_base(&data, base, unbranched_only, bounds)? {
                return Ok(UniformityOutcome::Uniform { base, assignments });
            }
        }
    }
    Ok(UniformityOutcome::NotUniform {
        reason: "no admissible base surface within bounds".into(),
    })
}

/// Tries one candidate base; the branching number of each cover is forced
/// by Riemann-Hurwitz.
fn try_base(
    data: &[CoverData],
    base: Surface,
    unbranched_only: bool,
    bounds: &SearchBounds,
) -> Result<Option<Vec<VertebraCover>>, ObstructionsError> {
    let mut assignments = Vec::new();
    for d in data {
        let forced = d.degree as i64 * base.euler() - d.surface.euler();
        if forced < 0 || (unbranched_only && forced != 0) {
            return Ok(None);
        }
        let spec = CoverSpec::branched(base, d.degree, d.boundary_types.clone())
            .with_exact_branching(forced as usize);
        let r = exists_cover(&spec, bounds)?;
        if !r.exists || r.cover_type != Some(d.surface) {
            return Ok(None);
        }
        assignments.push(VertebraCover {
            vertebra: d.vertebra,
            degree: d.degree as u32,
            branching: forced as usize,
            cover: r,
        });
    }
    Ok(Some(assignments))
}

/// A base surface admitting the covers of a uniform structure only with
/// branch points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchedWitness {
    pub base: Surface,
    pub vertebra: VertebraId,
    pub branching: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum AmenabilityOutcome {
    Amenable,
    NotAmenable {
        reason: String,
        branched_witness: Option<BranchedWitness>,
    },
}

impl AmenabilityOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, AmenabilityOutcome::Amenable)
    }
}

/// Lefschetz-amenability: uniform, and *every* admissible base within the
/// genus bound yields only unbranched covers. The definition does not pin
/// down whether the base is fixed or quantified, so the check quantifies
/// over all admissible bases.
pub fn is_lefschetz_amenable(
    sob: &SpinalOpenBook,
    max_base_genus: u32,
    bounds: &SearchBounds,
) -> Result<AmenabilityOutcome, ObstructionsError> {
    let counts = match is_symmetric(sob)? {
        SymmetryOutcome::Symmetric { counts } => counts,
        SymmetryOutcome::NotSymmetric { .. } => {
            return Ok(AmenabilityOutcome::NotAmenable {
                reason: "not symmetric".into(),
                branched_witness: None,
            })
        }
    };
    let data = cover_data(sob, &counts)?;
    let b0 = sob.papers.len() as u32;

    let mut any_admissible = false;
    for genus in 0..=max_base_genus {
        let base = Surface::orientable(genus, b0);
        match try_base(&data, base, false, bounds)? {
            None => continue,
            Some(assignments) => {
                any_admissible = true;
                if let Some(bad) = assignments.iter().find(|a| a.branching > 0) {
                    return Ok(AmenabilityOutcome::NotAmenable {
                        reason: format!(
                            "admissible base {base:?} forces branching {} over vertebra {}",
                            bad.branching, bad.vertebra
                        ),
                        branched_witness: Some(BranchedWitness {
                            base,
                            vertebra: bad.vertebra,
                            branching: bad.branching,
                        }),
                    });
                }
            }
        }
    }
    if any_admissible {
        Ok(AmenabilityOutcome::Amenable)
    } else {
        Ok(AmenabilityOutcome::NotAmenable {
            reason: "not uniform within bounds".into(),
            branched_witness: None,
        })
    }
}

/// How the separating condition at a planar piece is certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Separating {
    OmegaSeparating,
    FullySeparatingByDiskRule,
    Unknown,
}

/// An interior planar piece certifying planar torsion of the given order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionWitness {
    pub order: u32,
    pub piece: PaperId,
    pub adjacent_spines: Vec<VertebraId>,
    pub separating: Separating,
}

fn piece_adjacent_spines(
    sob: &SpinalOpenBook,
    paper: &crate::sob::PaperComponent,
) -> Vec<VertebraId> {
    let mut out: Vec<VertebraId> = paper
        .orbits
        .iter()
        .filter_map(|o| match o.target {
            OrbitTarget::Circle(c) => sob.vertebra_of_circle(c).map(|v| v.id),
            OrbitTarget::Torus(_) => None,
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn piece_separating(
    sob: &SpinalOpenBook,
    adjacent: &[VertebraId],
    flags: &ExactnessFlags,
) -> Separating {
    let all_disks = adjacent.iter().all(|&id| {
        sob.find_vertebra(id)
            .map(|v| v.surface.is_disk())
            .unwrap_or(false)
    });
    if all_disks {
        return Separating::FullySeparatingByDiskRule;
    }
    if adjacent.iter().all(|&id| flags.get(id) == Exactness::Exact) {
        return Separating::OmegaSeparating;
    }
    Separating::Unknown
}

/// Finds the minimal-order planar torsion witness: the book must fail
/// symmetry and contain an interior paper component with genus-zero pages.
/// Ties are broken by smallest paper id.
pub fn find_planar_torsion(
    sob: &SpinalOpenBook,
    flags: &ExactnessFlags,
) -> Result<Option<TorsionWitness>, ObstructionsError> {
    if is_symmetric(sob)?.holds() {
        return Ok(None);
    }
    let interior = crate::sob::interior_paper_components(sob);
    let mut best: Option<(u32, PaperId)> = None;
    for pid in interior {
        let p = sob.find_paper(pid).expect("interior id");
        if !p.page.is_planar() || p.page.boundary() == 0 {
            continue;
        }
        let order = p.page.boundary() - 1;
        if best.map(|(o, id)| (order, pid) < (o, id)).unwrap_or(true) {
            best = Some((order, pid));
        }
    }
    Ok(best.map(|(order, pid)| {
        let p = sob.find_paper(pid).unwrap();
        let adjacent_spines = piece_adjacent_spines(sob, p);
        let separating = piece_separating(sob, &adjacent_spines, flags);
        TorsionWitness {
            order,
            piece: pid,
            adjacent_spines,
            separating,
        }
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    Overtwisted,
    NotStronglyFillable,
    NotWeaklyFillableForThisClass,
    NotWeaklyFillable,
    NoNonSeparatingContactEmbedding,
    NoDisconnectedSemifilling,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictWitness {
    Torsion(TorsionWitness),
    PlanarPiece {
        piece: PaperId,
        adjacent_spines: Vec<VertebraId>,
        separating: Separating,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictEntry {
    pub verdict: VerdictKind,
    pub witness: VerdictWitness,
    pub citation: String,
}

pub const CITE_TORSION_STRONG: &str =
    "planar torsion of any order rules out strong symplectic fillings";
pub const CITE_TORSION_WEAK_CLASS: &str =
    "separating planar torsion rules out weak fillings in the matching cohomology class";
pub const CITE_TORSION_WEAK_FULL: &str =
    "fully separating planar torsion rules out all weak fillings";
pub const CITE_OVERTWISTED: &str = "planar 0-torsion is equivalent to overtwistedness";
pub const CITE_OVERTWISTED_WEAK: &str = "overtwisted contact structures admit no weak fillings";
pub const CITE_EMBEDDING: &str =
    "a separating interior planar piece rules out non-separating contact-type embeddings into closed symplectic manifolds";
pub const CITE_SEMIFILLING: &str =
    "a separating interior planar piece rules out weak semifillings with disconnected boundary";

/// Applies the torsion and partially-planar verdict rules, reporting each
/// obstruction with its witness in a fixed deterministic order.
pub fn verdict(
    sob: &SpinalOpenBook,
    flags: &ExactnessFlags,
) -> Result<Vec<VerdictEntry>, ObstructionsError> {
    let mut out: Vec<VerdictEntry> = Vec::new();
    let push = |out: &mut Vec<VerdictEntry>, v: VerdictKind, w: VerdictWitness, c: &str| {
        if !out.iter().any(|e| e.verdict == v) {
            out.push(VerdictEntry {
                verdict: v,
                witness: w,
                citation: c.to_string(),
            });
        }
    };

    let torsion = find_planar_torsion(sob, flags)?;
    if let Some(w) = &torsion {
        push(
            &mut out,
            VerdictKind::NotStronglyFillable,
            VerdictWitness::Torsion(w.clone()),
            CITE_TORSION_STRONG,
        );
        match w.separating {
            Separating::OmegaSeparating => push(
                &mut out,
                VerdictKind::NotWeaklyFillableForThisClass,
                VerdictWitness::Torsion(w.clone()),
                CITE_TORSION_WEAK_CLASS,
            ),
            Separating::FullySeparatingByDiskRule => push(
                &mut out,
                VerdictKind::NotWeaklyFillable,
                VerdictWitness::Torsion(w.clone()),
                CITE_TORSION_WEAK_FULL,
            ),
            Separating::Unknown => {}
        }
        if w.order == 0 {
            push(
                &mut out,
                VerdictKind::Overtwisted,
                VerdictWitness::Torsion(w.clone()),
                CITE_OVERTWISTED,
            );
            push(
                &mut out,
                VerdictKind::NotWeaklyFillable,
                VerdictWitness::Torsion(w.clone()),
                CITE_OVERTWISTED_WEAK,
            );
        }
    }

    // Partially planar: in an asymmetric book, any interior planar piece
    // with a certified separating condition blocks non-separating
    // embeddings and disconnected semifillings. (The circle-bundle
    // corollary emits these unconditionally through its own operation.)
    if !is_symmetric(sob)?.holds() {
        let mut planar_pieces: Vec<&crate::sob::PaperComponent> = sob
            .papers
            .iter()
            .filter(|p| {
                p.page.is_planar()
                    && p.page.boundary() >= 1
                    && p.orbits
                        .iter()
                        .all(|o| matches!(o.target, OrbitTarget::Circle(_)))
            })
            .collect();
        planar_pieces.sort_by_key(|p| (p.page.boundary(), p.id));
        for p in planar_pieces {
            let adjacent = piece_adjacent_spines(sob, p);
            let separating = piece_separating(sob, &adjacent, flags);
            if matches!(
                separating,
                Separating::OmegaSeparating | Separating::FullySeparatingByDiskRule
            ) {
                let witness = VerdictWitness::PlanarPiece {
                    piece: p.id,
                    adjacent_spines: adjacent,
                    separating,
                };
                push(
                    &mut out,
                    VerdictKind::NoNonSeparatingContactEmbedding,
                    witness.clone(),
                    CITE_EMBEDDING,
                );
                push(
                    &mut out,
                    VerdictKind::NoDisconnectedSemifilling,
                    witness,
                    CITE_SEMIFILLING,
                );
                break;
            }
        }
    }

    out.sort_by_key(|e| e.verdict);
    Ok(out)
}
