//! Topological surgeries on spinal open books: spine removal, blow-up,
//! binding sum, and fiber connected sum along pages.
//!
//! All operations are pure: they take a valid book and return a fresh one,
//! or a descriptive error. Results are re-validated; an inconsistent
//! incidence structure is reported, never silently repaired.

use crate::perm::Perm;
use crate::sob::{
    BoundaryTorus, BoundaryTorusId, Orbit, OrbitTarget, PaperComponent, PaperId, SobError,
    SpinalOpenBook, SpineCircleId, ValidationReport, Vertebra, VertebraId,
};
use crate::surfaces::Surface;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, thiserror::Error)]
pub enum SurgeryError {
    #[error(transparent)]
    Sob(#[from] SobError),
    #[error("unknown vertebra id {0}")]
    UnknownVertebra(VertebraId),
    #[error("unknown spine circle id {0}")]
    UnknownCircle(SpineCircleId),
    #[error("unknown paper id {0}")]
    UnknownPaper(PaperId),
    #[error("blow-up requires disk vertebrae: vertebra {0} is not a disk")]
    BlowUpNonDisk(VertebraId),
    #[error("binding sum requires two distinct circles")]
    BindingSumSameCircle,
    #[error("binding sum requires circles on two distinct disk vertebrae")]
    BindingSumNotDistinctDisks,
    #[error("binding sum requires multiplicity one at both circles")]
    BindingSumMultiplicity,
    #[error("fiber sum of a paper component with itself is not supported")]
    SelfSum,
    #[error("fiber sum requires diffeomorphic pages")]
    PageTypeMismatch,
    #[error("identification must be a bijection of the boundary labels")]
    BadIdentification,
    #[error("fiber sum requires both summands to attach to the spine only")]
    BoundaryAttachedSummand,
    #[error("incidence inconsistency after surgery:\n{0}")]
    Inconsistent(ValidationReport),
}

/// Which orbit of which paper was capped off by disks, and how many disks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CappedOrbit {
    pub paper: PaperId,
    pub orbit: Orbit,
    pub cap_count: u32,
}

/// Bookkeeping for a spine removal: the handle attachment data.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct HandleRecord {
    pub removed_vertebrae: Vec<VertebraId>,
    pub capped_orbits: Vec<CappedOrbit>,
    /// Total Euler-characteristic gain over all pages: one per cap.
    pub euler_delta_pages: i64,
    /// Present when the surgery produced closed pages; such components
    /// admit no Giroux form.
    pub closed_page_note: Option<String>,
}

/// Deletes the listed vertebrae and caps every page-boundary component that
/// was attached to them with a disk. Paper components whose pages close up
/// make the result a generalized book.
pub fn spine_remove(
    sob: &SpinalOpenBook,
    ids: &BTreeSet<VertebraId>,
) -> Result<(SpinalOpenBook, HandleRecord), SurgeryError> {
    sob.require_valid()?;
    for &id in ids {
        if sob.find_vertebra(id).is_none() {
            return Err(SurgeryError::UnknownVertebra(id));
        }
    }

    let removed_circles: BTreeSet<SpineCircleId> = sob
        .vertebrae
        .iter()
        .filter(|v| ids.contains(&v.id))
        .flat_map(|v| v.circles.iter().copied())
        .collect();

    let mut record = HandleRecord {
        removed_vertebrae: ids.iter().copied().collect(),
        ..HandleRecord::default()
    };

    let mut papers = Vec::new();
    let mut any_closed = false;
    for p in &sob.papers {
        let (capped, kept): (Vec<&Orbit>, Vec<&Orbit>) = p.orbits.iter().partition(
            |o| matches!(o.target, OrbitTarget::Circle(c) if removed_circles.contains(&c)),
        );
        if capped.is_empty() {
            papers.push(p.clone());
            continue;
        }
        for o in &capped {
            record.capped_orbits.push(CappedOrbit {
                paper: p.id,
                orbit: (*o).clone(),
                cap_count: o.size(),
            });
            record.euler_delta_pages += o.size() as i64;
        }

        // Relabel the surviving boundary labels densely, preserving order.
        let survivors: BTreeSet<u32> = kept.iter().flat_map(|o| o.labels.iter().copied()).collect();
        let remap: BTreeMap<u32, u32> = survivors
            .iter()
            .enumerate()
            .map(|(i, &l)| (l, i as u32 + 1))
            .collect();
        let new_b = survivors.len() as u32;
        if new_b == 0 {
            any_closed = true;
        }
        let old_genus = match p.page {
            Surface::Orientable { genus, .. } => genus,
            Surface::NonOrientable { .. } => unreachable!("validated pages are orientable"),
        };
        // Restrict sigma to the survivors: removed labels form whole cycles.
        let cycles: Vec<Vec<usize>> = kept
            .iter()
            .map(|o| o.labels.iter().map(|&l| (remap[&l] - 1) as usize).collect())
            .collect();
        let sigma = Perm::from_cycles(new_b as usize, &cycles)
            .expect("surviving orbits stay disjoint cycles");
        papers.push(PaperComponent {
            id: p.id,
            page: Surface::orientable(old_genus, new_b),
            sigma,
            orbits: kept
                .into_iter()
                .map(|o| Orbit {
                    labels: o.labels.iter().map(|&l| remap[&l]).collect(),
                    target: o.target,
                })
                .collect(),
        });
    }

    if any_closed {
        record.closed_page_note = Some(
            "surgery produced closed pages; no Giroux form exists for such a component".into(),
        );
    }

    let out = SpinalOpenBook {
        generalized: sob.generalized || any_closed,
        vertebrae: sob
            .vertebrae
            .iter()
            .filter(|v| !ids.contains(&v.id))
            .cloned()
            .collect(),
        papers,
        boundary_tori: sob.boundary_tori.clone(),
    };
    let report = out.validate();
    if !report.is_valid() {
        return Err(SurgeryError::Inconsistent(report));
    }
    Ok((out, record))
}

/// Deletes disk vertebrae and records the exposed boundary tori with the
/// canonical meridian framing 0.
pub fn blow_up(
    sob: &SpinalOpenBook,
    ids: &BTreeSet<VertebraId>,
) -> Result<SpinalOpenBook, SurgeryError> {
    sob.require_valid()?;
    let mut retarget: BTreeMap<SpineCircleId, BoundaryTorusId> = BTreeMap::new();
    let mut next_torus = sob
        .boundary_tori
        .iter()
        .map(|t| t.id.0 + 1)
        .max()
        .unwrap_or(0);
    #[allow(clippy::explicit_counter_loop)]
    for &id in ids {
        let v = sob
            .find_vertebra(id)
            .ok_or(SurgeryError::UnknownVertebra(id))?;
        if !v.surface.is_disk() {
            return Err(SurgeryError::BlowUpNonDisk(id));
        }
        retarget.insert(v.circles[0], BoundaryTorusId(next_torus));
        next_torus += 1;
    }

    let mut out = SpinalOpenBook {
        generalized: sob.generalized,
        vertebrae: sob
            .vertebrae
            .iter()
            .filter(|v| !ids.contains(&v.id))
            .cloned()
            .collect(),
        papers: sob.papers.clone(),
        boundary_tori: sob.boundary_tori.clone(),
    };
    for p in &mut out.papers {
        for o in &mut p.orbits {
            if let OrbitTarget::Circle(c) = o.target {
                if let Some(&t) = retarget.get(&c) {
                    o.target = OrbitTarget::Torus(t);
                }
            }
        }
    }
    for (_, t) in retarget {
        out.boundary_tori.push(BoundaryTorus { id: t, framing: 0 });
    }
    let report = out.validate();
    if !report.is_valid() {
        return Err(SurgeryError::Inconsistent(report));
    }
    Ok(out)
}

/// Replaces two multiplicity-one disk vertebrae by a single annulus
/// vertebra whose circles keep their orbit attachments.
pub fn binding_sum(
    sob: &SpinalOpenBook,
    c1: SpineCircleId,
    c2: SpineCircleId,
) -> Result<SpinalOpenBook, SurgeryError> {
    sob.require_valid()?;
    if c1 == c2 {
        return Err(SurgeryError::BindingSumSameCircle);
    }
    let v1 = sob
        .vertebra_of_circle(c1)
        .ok_or(SurgeryError::UnknownCircle(c1))?;
    let v2 = sob
        .vertebra_of_circle(c2)
        .ok_or(SurgeryError::UnknownCircle(c2))?;
    if v1.id == v2.id || !v1.surface.is_disk() || !v2.surface.is_disk() {
        return Err(SurgeryError::BindingSumNotDistinctDisks);
    }
    for c in [c1, c2] {
        let m = crate::sob::multiplicity(sob, crate::sob::TorusOrCircle::Circle(c))?;
        if m != 1 {
            return Err(SurgeryError::BindingSumMultiplicity);
        }
    }

    let new_id = v1.id.min(v2.id);
    let (id1, id2) = (v1.id, v2.id);
    let mut vertebrae: Vec<Vertebra> = sob
        .vertebrae
        .iter()
        .filter(|v| v.id != id1 && v.id != id2)
        .cloned()
        .collect();
    vertebrae.push(Vertebra {
        id: new_id,
        surface: Surface::annulus(),
        circles: vec![c1, c2],
    });
    vertebrae.sort_by_key(|v| v.id);

    let out = SpinalOpenBook {
        generalized: sob.generalized,
        vertebrae,
        papers: sob.papers.clone(),
        boundary_tori: sob.boundary_tori.clone(),
    };
    let report = out.validate();
    if !report.is_valid() {
        return Err(SurgeryError::Inconsistent(report));
    }
    Ok(out)
}

/// Which family is traversed first in the concatenated S^1-family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConcatOrder {
    #[default]
    FirstThenSecond,
    SecondThenFirst,
}

/// Fiber connected sum of two paper components along their pages.
///
/// `ident` identifies boundary labels of `j0` with labels of `j1`
/// (1-based on both sides). One spine 1-handle is attached per boundary
/// component of the page, joining the circle under a label in `j0` to the
/// circle under its partner in `j1`; the handle feet are placed in the
/// cyclic order of the page-boundary families, so the boundary circles of
/// the merged spine correspond exactly to the cycles of the concatenated
/// boundary permutation.
pub fn fiber_sum_pages(
    sob: &SpinalOpenBook,
    j0: PaperId,
    j1: PaperId,
    ident: &BTreeMap<u32, u32>,
    order: ConcatOrder,
) -> Result<SpinalOpenBook, SurgeryError> {
    sob.require_valid()?;
    if j0 == j1 {
        return Err(SurgeryError::SelfSum);
    }
    let p0 = sob.find_paper(j0).ok_or(SurgeryError::UnknownPaper(j0))?;
    let p1 = sob.find_paper(j1).ok_or(SurgeryError::UnknownPaper(j1))?;
    if !crate::surfaces::same_type(p0.page, p1.page) {
        return Err(SurgeryError::PageTypeMismatch);
    }
    let b = p0.page.boundary() as usize;

    // ident must be a bijection {1..b} -> {1..b}.
    if ident.len() != b {
        return Err(SurgeryError::BadIdentification);
    }
    let mut iota_line = vec![usize::MAX; b];
    for (&from, &to) in ident {
        if from == 0 || from as usize > b || to == 0 || to as usize > b {
            return Err(SurgeryError::BadIdentification);
        }
        iota_line[(from - 1) as usize] = (to - 1) as usize;
    }
    let iota = Perm::from_one_line(iota_line).ok_or(SurgeryError::BadIdentification)?;

    // Attachment circles per label; boundary-torus attachments are not
    // part of the construction.
    let circle_under = |p: &PaperComponent, label: u32| -> Result<SpineCircleId, SurgeryError> {
        for o in &p.orbits {
            if o.labels.contains(&label) {
                return match o.target {
                    OrbitTarget::Circle(c) => Ok(c),
                    OrbitTarget::Torus(_) => Err(SurgeryError::BoundaryAttachedSummand),
                };
            }
        }
        Err(SurgeryError::BadIdentification)
    };

    let mut foot0 = Vec::with_capacity(b); // label (0-based) -> circle in j0
    let mut foot1 = Vec::with_capacity(b); // label (0-based) -> circle in j1, via ident
    for l in 0..b {
        foot0.push(circle_under(p0, l as u32 + 1)?);
        foot1.push(circle_under(p1, iota.apply(l) as u32 + 1)?);
    }

    let iota_inv = iota.inverse();
    let sigma_new = match order {
        ConcatOrder::FirstThenSecond => iota_inv
            .compose(&p1.sigma)
            .compose(&iota)
            .compose(&p0.sigma),
        ConcatOrder::SecondThenFirst => p0
            .sigma
            .compose(&iota_inv)
            .compose(&p1.sigma)
            .compose(&iota),
    };

    // Merge vertebrae along the handles.
    let owner = |c: SpineCircleId| sob.vertebra_of_circle(c).map(|v| v.id);
    let vertebra_ids: Vec<VertebraId> = sob.vertebrae.iter().map(|v| v.id).collect();
    let index_of: BTreeMap<VertebraId, usize> = vertebra_ids
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let mut parent: Vec<usize> = (0..vertebra_ids.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for l in 0..b {
        let a = index_of[&owner(foot0[l]).ok_or(SurgeryError::UnknownCircle(foot0[l]))?];
        let bb = index_of[&owner(foot1[l]).ok_or(SurgeryError::UnknownCircle(foot1[l]))?];
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, bb));
        if ra != rb {
            parent[ra] = rb;
        }
    }

    let touched_circles: BTreeSet<SpineCircleId> =
        foot0.iter().chain(foot1.iter()).copied().collect();
    let mut next_circle = sob
        .vertebrae
        .iter()
        .flat_map(|v| v.circles.iter().map(|c| c.0 + 1))
        .max()
        .unwrap_or(0);

    // One fused circle per cycle of the concatenated boundary permutation.
    let cycles = sigma_new.cycles();
    let mut new_orbits = Vec::new();
    let mut fused: Vec<(usize, SpineCircleId)> = Vec::new(); // (component root, circle)
    #[allow(clippy::explicit_counter_loop)]
    for cycle in &cycles {
        let id = SpineCircleId(next_circle);
        next_circle += 1;
        let root = find(&mut parent, index_of[&owner(foot0[cycle[0]]).unwrap()]);
        debug_assert!(
            cycle.iter().all(|&l| {
                let r0 = find(&mut parent, index_of[&owner(foot0[l]).unwrap()]);
                r0 == root
            }),
            "a fused circle spans a single merged component"
        );
        fused.push((root, id));
        new_orbits.push(Orbit {
            labels: cycle.iter().map(|&l| l as u32 + 1).collect(),
            target: OrbitTarget::Circle(id),
        });
    }

    // Assemble the merged vertebrae.
    let mut groups: BTreeMap<usize, Vec<&Vertebra>> = BTreeMap::new();
    for v in &sob.vertebrae {
        let root = find(&mut parent, index_of[&v.id]);
        groups.entry(root).or_default().push(v);
    }
    let mut handles_per_group: BTreeMap<usize, i64> = BTreeMap::new();
    for l in 0..b {
        let root = find(&mut parent, index_of[&owner(foot0[l]).unwrap()]);
        *handles_per_group.entry(root).or_insert(0) += 1;
    }

    let mut vertebrae = Vec::new();
    for (root, members) in groups {
        let handles = handles_per_group.get(&root).copied().unwrap_or(0);
        if handles == 0 {
            debug_assert_eq!(members.len(), 1);
            vertebrae.push(members[0].clone());
            continue;
        }
        let chi: i64 = members.iter().map(|v| v.surface.euler()).sum::<i64>() - handles;
        let mut circles: Vec<SpineCircleId> = members
            .iter()
            .flat_map(|v| v.circles.iter().copied())
            .filter(|c| !touched_circles.contains(c))
            .collect();
        circles.extend(fused.iter().filter(|(r, _)| *r == root).map(|(_, c)| *c));
        let surface = Surface::orientable_from_euler(chi, circles.len() as u32)
            .ok_or_else(|| SurgeryError::Inconsistent(ValidationReport::default()))?;
        let id = members.iter().map(|v| v.id).min().unwrap();
        vertebrae.push(Vertebra {
            id,
            surface,
            circles,
        });
    }
    vertebrae.sort_by_key(|v| v.id);

    let mut papers: Vec<PaperComponent> = sob
        .papers
        .iter()
        .filter(|p| p.id != j0 && p.id != j1)
        .cloned()
        .collect();
    papers.push(PaperComponent {
        id: j0.min(j1),
        page: p0.page,
        sigma: sigma_new,
        orbits: new_orbits,
    });
    papers.sort_by_key(|p| p.id);

    let out = SpinalOpenBook {
        generalized: sob.generalized,
        vertebrae,
        papers,
        boundary_tori: sob.boundary_tori.clone(),
    };
    let report = out.validate();
    if !report.is_valid() {
        return Err(SurgeryError::Inconsistent(report));
    }
    Ok(out)
}
