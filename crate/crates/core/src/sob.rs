//! The spinal open book data model and its validator.
//!
//! A book records vertebrae (spine base components), paper components
//! (S^1-families of pages, with the monodromy remembered only through its
//! boundary permutation) and boundary tori. Incidence is expressed through
//! orbits: each cycle of a paper's boundary permutation is one orbit, and it
//! attaches to either a spine circle or a boundary torus. The validator
//! checks referential integrity and the incidence rules; violations are
//! reported as data, never panics.

use crate::perm::Perm;
use crate::surfaces::Surface;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

macro_rules! id_type {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(
            Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
        )]
        #[serde(transparent)]
        pub struct $name(pub u32);

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self.0)
            }
        }
    };
}

id_type!(
    /// Identifier of one boundary circle of a vertebra.
    SpineCircleId
);
id_type!(
    /// Identifier of a torus boundary component of the book.
    BoundaryTorusId
);
id_type!(
    /// Identifier of a paper component.
    PaperId
);
id_type!(
    /// Identifier of a vertebra.
    VertebraId
);

/// One spine component: a connected oriented surface with nonempty boundary,
/// listing its boundary circles in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertebra {
    pub id: VertebraId,
    pub surface: Surface,
    pub circles: Vec<SpineCircleId>,
}

/// Attachment target of an orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitTarget {
    Circle(SpineCircleId),
    Torus(BoundaryTorusId),
}

/// One cycle of a paper's boundary permutation together with its target.
/// The cycle length is the multiplicity at the target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    /// Page-boundary labels (1-based) forming one monodromy cycle.
    pub labels: Vec<u32>,
    pub target: OrbitTarget,
}

impl Orbit {
    pub fn size(&self) -> u32 {
        self.labels.len() as u32
    }
}

/// Serialize a boundary permutation as a 1-based one-line vector, matching
/// the label convention of the interchange format.
mod sigma_serde {
    use super::Perm;
    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(perm: &Perm, ser: S) -> Result<S::Ok, S::Error> {
        let one_based: Vec<u32> = perm.one_line().iter().map(|&v| v as u32 + 1).collect();
        one_based.serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Perm, D::Error> {
        let one_based = Vec::<u32>::deserialize(de)?;
        let zero_based: Vec<usize> = one_based
            .iter()
            .map(|&v| {
                if v == 0 {
                    Err(D::Error::custom("sigma labels are 1-based"))
                } else {
                    Ok(v as usize - 1)
                }
            })
            .collect::<Result<_, _>>()?;
        Perm::from_one_line(zero_based)
            .ok_or_else(|| D::Error::custom("sigma is not a permutation"))
    }
}

/// One S^1-family of pages.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaperComponent {
    pub id: PaperId,
    pub page: Surface,
    /// Boundary permutation of the monodromy on the page's boundary labels.
    #[serde(with = "sigma_serde")]
    pub sigma: Perm,
    pub orbits: Vec<Orbit>,
}

impl PaperComponent {
    /// True iff the pages of this family are closed surfaces. Such
    /// components only occur in generalized books.
    pub fn closed_pages(&self) -> bool {
        self.page.boundary() == 0
    }
}

/// A torus boundary component of the book, carrying the framing integer of
/// its preferred meridian relative to the page-boundary basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryTorus {
    pub id: BoundaryTorusId,
    pub framing: i64,
}

/// A spinal open book. `generalized` books may contain closed pages.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinalOpenBook {
    pub generalized: bool,
    pub vertebrae: Vec<Vertebra>,
    pub papers: Vec<PaperComponent>,
    pub boundary_tori: Vec<BoundaryTorus>,
}

/// A single violated invariant, with the offending ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "code", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Violation {
    DuplicateVertebraId {
        id: VertebraId,
    },
    DuplicatePaperId {
        id: PaperId,
    },
    DuplicateTorusId {
        id: BoundaryTorusId,
    },
    DuplicateCircleId {
        id: SpineCircleId,
    },
    BadVertebraSurface {
        vertebra: VertebraId,
    },
    BadPageSurface {
        paper: PaperId,
    },
    CircleCountMismatch {
        vertebra: VertebraId,
        circles: u32,
        boundary: u32,
    },
    SigmaSizeMismatch {
        paper: PaperId,
        sigma_len: u32,
        boundary: u32,
    },
    OrbitLabelsInvalid {
        paper: PaperId,
    },
    OrbitCycleMismatch {
        paper: PaperId,
    },
    /// INC-3: an orbit points at a circle or torus that does not exist.
    Inc3MissingTarget {
        paper: PaperId,
        orbit: u32,
    },
    /// INC-1: a spine circle must be the target of exactly one orbit.
    Inc1 {
        circle: SpineCircleId,
        incident: u32,
    },
    /// INC-2: a boundary torus must be the target of exactly one orbit.
    Inc2 {
        torus: BoundaryTorusId,
        incident: u32,
    },
    /// PAGE-1: closed pages are only permitted in generalized books.
    Page1ClosedPage {
        paper: PaperId,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateVertebraId { id } => write!(f, "duplicate vertebra id {id}"),
            Violation::DuplicatePaperId { id } => write!(f, "duplicate paper id {id}"),
            Violation::DuplicateTorusId { id } => write!(f, "duplicate boundary torus id {id}"),
            Violation::DuplicateCircleId { id } => write!(f, "duplicate spine circle id {id}"),
            Violation::BadVertebraSurface { vertebra } => {
                write!(f, "vertebra {vertebra} must be orientable with nonempty boundary")
            }
            Violation::BadPageSurface { paper } => {
                write!(f, "paper {paper} must have an orientable page")
            }
            Violation::CircleCountMismatch { vertebra, circles, boundary } => write!(
                f,
                "vertebra {vertebra} lists {circles} circles but its surface has {boundary} boundary components"
            ),
            Violation::SigmaSizeMismatch { paper, sigma_len, boundary } => write!(
                f,
                "paper {paper} has sigma on {sigma_len} labels but page boundary {boundary}"
            ),
            Violation::OrbitLabelsInvalid { paper } => write!(
                f,
                "paper {paper}: orbit labels must partition 1..=boundary"
            ),
            Violation::OrbitCycleMismatch { paper } => write!(
                f,
                "paper {paper}: orbits do not match the cycles of sigma"
            ),
            Violation::Inc3MissingTarget { paper, orbit } => {
                write!(f, "paper {paper} orbit {orbit}: target does not exist (INC-3)")
            }
            Violation::Inc1 { circle, incident } => write!(
                f,
                "spine circle {circle} has {incident} incident orbits, expected exactly 1 (INC-1)"
            ),
            Violation::Inc2 { torus, incident } => write!(
                f,
                "boundary torus {torus} has {incident} incident orbits, expected exactly 1 (INC-2)"
            ),
            Violation::Page1ClosedPage { paper } => write!(
                f,
                "paper {paper} has closed pages but the book is not generalized (PAGE-1)"
            ),
        }
    }
}

/// Outcome of `validate`: the list of violated invariants, empty for a
/// valid book.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            write!(f, "valid")
        } else {
            for (i, v) in self.violations.iter().enumerate() {
                if i > 0 {
                    writeln!(f)?;
                }
                write!(f, "{v}")?;
            }
            Ok(())
        }
    }
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum SobError {
    #[error("book fails validation:\n{0}")]
    Invalid(ValidationReport),
    #[error("no incident orbit at the requested target")]
    NoIncidentOrbit,
    #[error("unknown id: {0}")]
    UnknownId(String),
}

impl SpinalOpenBook {
    pub fn find_vertebra(&self, id: VertebraId) -> Option<&Vertebra> {
        self.vertebrae.iter().find(|v| v.id == id)
    }

    pub fn find_paper(&self, id: PaperId) -> Option<&PaperComponent> {
        self.papers.iter().find(|p| p.id == id)
    }

    /// The vertebra owning a given spine circle.
    pub fn vertebra_of_circle(&self, circle: SpineCircleId) -> Option<&Vertebra> {
        self.vertebrae.iter().find(|v| v.circles.contains(&circle))
    }

    pub fn has_boundary(&self) -> bool {
        !self.boundary_tori.is_empty()
    }

    /// Sum of Euler characteristics over the spine.
    pub fn spine_euler(&self) -> i64 {
        self.vertebrae.iter().map(|v| v.surface.euler()).sum()
    }

    /// Checks every structural and incidence invariant, returning all
    /// violations found.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();

        let mut vertebra_ids = BTreeSet::new();
        let mut circle_ids = BTreeSet::new();
        for v in &self.vertebrae {
            if !vertebra_ids.insert(v.id) {
                violations.push(Violation::DuplicateVertebraId { id: v.id });
            }
            if !v.surface.is_orientable() || !v.surface.is_valid() || v.surface.boundary() == 0 {
                violations.push(Violation::BadVertebraSurface { vertebra: v.id });
            }
            if v.circles.len() as u32 != v.surface.boundary() {
                violations.push(Violation::CircleCountMismatch {
                    vertebra: v.id,
                    circles: v.circles.len() as u32,
                    boundary: v.surface.boundary(),
                });
            }
            for &c in &v.circles {
                if !circle_ids.insert(c) {
                    violations.push(Violation::DuplicateCircleId { id: c });
                }
            }
        }

        let mut torus_ids = BTreeSet::new();
        for t in &self.boundary_tori {
            if !torus_ids.insert(t.id) {
                violations.push(Violation::DuplicateTorusId { id: t.id });
            }
        }

        let mut paper_ids = BTreeSet::new();
        let mut circle_incidence: BTreeMap<SpineCircleId, u32> =
            circle_ids.iter().map(|&c| (c, 0)).collect();
        let mut torus_incidence: BTreeMap<BoundaryTorusId, u32> =
            torus_ids.iter().map(|&t| (t, 0)).collect();

        for p in &self.papers {
            if !paper_ids.insert(p.id) {
                violations.push(Violation::DuplicatePaperId { id: p.id });
            }
            if !p.page.is_orientable() || !p.page.is_valid() {
                violations.push(Violation::BadPageSurface { paper: p.id });
            }
            let b = p.page.boundary();
            if b == 0 && !self.generalized {
                violations.push(Violation::Page1ClosedPage { paper: p.id });
            }
            if p.sigma.len() as u32 != b {
                violations.push(Violation::SigmaSizeMismatch {
                    paper: p.id,
                    sigma_len: p.sigma.len() as u32,
                    boundary: b,
                });
            }

            // Orbit labels must partition 1..=b.
            let mut seen = vec![false; b as usize];
            let mut labels_ok = true;
            for orbit in &p.orbits {
                for &l in &orbit.labels {
                    if l == 0 || l > b || seen[(l - 1) as usize] {
                        labels_ok = false;
                    } else {
                        seen[(l - 1) as usize] = true;
                    }
                }
            }
            if !labels_ok || !seen.iter().all(|&s| s) {
                violations.push(Violation::OrbitLabelsInvalid { paper: p.id });
            } else if p.sigma.len() as u32 == b {
                // Orbits must be exactly the cycles of sigma, as cyclically
                // ordered label lists.
                let mut wanted: BTreeSet<Vec<usize>> = p
                    .sigma
                    .cycles()
                    .into_iter()
                    .map(|c| c.iter().map(|&l| l + 1).collect())
                    .collect();
                let mut ok = true;
                for orbit in &p.orbits {
                    let rotated = canonical_rotation(&orbit.labels);
                    if !wanted.remove(&rotated) {
                        ok = false;
                    }
                }
                if !ok || !wanted.is_empty() {
                    violations.push(Violation::OrbitCycleMismatch { paper: p.id });
                }
            }

            for (i, orbit) in p.orbits.iter().enumerate() {
                match orbit.target {
                    OrbitTarget::Circle(c) => match circle_incidence.get_mut(&c) {
                        Some(n) => *n += 1,
                        None => violations.push(Violation::Inc3MissingTarget {
                            paper: p.id,
                            orbit: i as u32,
                        }),
                    },
                    OrbitTarget::Torus(t) => match torus_incidence.get_mut(&t) {
                        Some(n) => *n += 1,
                        None => violations.push(Violation::Inc3MissingTarget {
                            paper: p.id,
                            orbit: i as u32,
                        }),
                    },
                }
            }
        }

        for (circle, incident) in circle_incidence {
            if incident != 1 {
                violations.push(Violation::Inc1 { circle, incident });
            }
        }
        for (torus, incident) in torus_incidence {
            if incident != 1 {
                violations.push(Violation::Inc2 { torus, incident });
            }
        }

        ValidationReport { violations }
    }

    pub fn require_valid(&self) -> Result<(), SobError> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(SobError::Invalid(report))
        }
    }
}

/// Rotation of a cyclic label list starting at its smallest element.
fn canonical_rotation(labels: &[u32]) -> Vec<usize> {
    if labels.is_empty() {
        return Vec::new();
    }
    let min_pos = labels
        .iter()
        .enumerate()
        .min_by_key(|(_, &l)| l)
        .map(|(i, _)| i)
        .unwrap();
    (0..labels.len())
        .map(|i| labels[(min_pos + i) % labels.len()] as usize)
        .collect()
}

/// A target for multiplicity queries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorusOrCircle {
    Circle(SpineCircleId),
    Torus(BoundaryTorusId),
}

/// The multiplicity at an interface circle or boundary torus: the size of
/// the unique orbit attached there.
pub fn multiplicity(sob: &SpinalOpenBook, target: TorusOrCircle) -> Result<u32, SobError> {
    for p in &sob.papers {
        for orbit in &p.orbits {
            let hit = match (orbit.target, target) {
                (OrbitTarget::Circle(c), TorusOrCircle::Circle(q)) => c == q,
                (OrbitTarget::Torus(t), TorusOrCircle::Torus(q)) => t == q,
                _ => false,
            };
            if hit {
                return Ok(orbit.size());
            }
        }
    }
    Err(SobError::NoIncidentOrbit)
}

/// One edge of the vertebra/paper adjacency graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdjacencyEdge {
    pub vertebra: VertebraId,
    pub paper: PaperId,
    pub circle: SpineCircleId,
    pub multiplicity: u32,
}

/// Bipartite incidence graph between vertebrae and paper components, one
/// edge per spine-targeting orbit, in deterministic id order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdjacencyGraph {
    pub vertebrae: Vec<VertebraId>,
    pub papers: Vec<PaperId>,
    pub edges: Vec<AdjacencyEdge>,
}

pub fn adjacency(sob: &SpinalOpenBook) -> Result<AdjacencyGraph, SobError> {
    sob.require_valid()?;
    let mut vertebrae: Vec<VertebraId> = sob.vertebrae.iter().map(|v| v.id).collect();
    vertebrae.sort_unstable();
    let mut papers: Vec<PaperId> = sob.papers.iter().map(|p| p.id).collect();
    papers.sort_unstable();

    let circle_owner: BTreeMap<SpineCircleId, VertebraId> = sob
        .vertebrae
        .iter()
        .flat_map(|v| v.circles.iter().map(move |&c| (c, v.id)))
        .collect();

    let mut edges = Vec::new();
    for p in &sob.papers {
        for orbit in &p.orbits {
            if let OrbitTarget::Circle(c) = orbit.target {
                edges.push(AdjacencyEdge {
                    vertebra: circle_owner[&c],
                    paper: p.id,
                    circle: c,
                    multiplicity: orbit.size(),
                });
            }
        }
    }
    edges.sort_by_key(|e| (e.vertebra, e.paper, e.circle));
    Ok(AdjacencyGraph {
        vertebrae,
        papers,
        edges,
    })
}

/// Paper components none of whose orbits reach a boundary torus.
pub fn interior_paper_components(sob: &SpinalOpenBook) -> Vec<PaperId> {
    let mut out: Vec<PaperId> = sob
        .papers
        .iter()
        .filter(|p| {
            p.orbits
                .iter()
                .all(|o| matches!(o.target, OrbitTarget::Circle(_)))
        })
        .map(|p| p.id)
        .collect();
    out.sort_unstable();
    out
}

/// Number of connected components of the book (vertebrae, papers and
/// boundary tori, joined by orbit incidence). Reported, never required.
pub fn connected_components(sob: &SpinalOpenBook) -> usize {
    // Nodes: vertebrae, papers, tori, indexed in that order.
    let nv = sob.vertebrae.len();
    let np = sob.papers.len();
    let nt = sob.boundary_tori.len();
    let n = nv + np + nt;
    if n == 0 {
        return 0;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let union = |parent: &mut [usize], a: usize, b: usize| {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            parent[ra] = rb;
        }
    };

    let circle_owner: BTreeMap<SpineCircleId, usize> = sob
        .vertebrae
        .iter()
        .enumerate()
        .flat_map(|(i, v)| v.circles.iter().map(move |&c| (c, i)))
        .collect();
    let torus_index: BTreeMap<BoundaryTorusId, usize> = sob
        .boundary_tori
        .iter()
        .enumerate()
        .map(|(i, t)| (t.id, nv + np + i))
        .collect();

    for (pi, p) in sob.papers.iter().enumerate() {
        for orbit in &p.orbits {
            match orbit.target {
                OrbitTarget::Circle(c) => {
                    if let Some(&vi) = circle_owner.get(&c) {
                        union(&mut parent, nv + pi, vi);
                    }
                }
                OrbitTarget::Torus(t) => {
                    if let Some(&ti) = torus_index.get(&t) {
                        union(&mut parent, nv + pi, ti);
                    }
                }
            }
        }
    }

    let mut roots = BTreeSet::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        roots.insert(r);
    }
    roots.len()
}
