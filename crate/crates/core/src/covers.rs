//! Existence of (branched) covers of compact oriented surfaces with
//! boundary, with prescribed degree and boundary cycle types.
//!
//! A degree-k cover of a surface with genus g and b boundary circles is the
//! same as a tuple (a_1, b_1, ..., a_g, b_g, c_1, ..., c_b, w_1, ..., w_l)
//! in S_k with
//!
//! ```text
//! [a_1,b_1]...[a_g,b_g] c_1 ... c_b w_1 ... w_l = 1,
//! ```
//!
//! where c_j has the prescribed cycle type over the j-th boundary circle,
//! the w's are branch cycles (non-identity), and the generated subgroup acts
//! transitively exactly when the cover is connected. Since the fundamental
//! group of a surface with boundary is free, the last boundary word is
//! forced by the relation, and conjugating the whole tuple lets the first
//! chosen slot be fixed to a canonical representative of its cycle type.
//!
//! The search is an honest brute force over small symmetric groups; anything
//! beyond the configured bounds is reported as "search bound exceeded",
//! which is distinct from nonexistence.

use crate::perm::{all_perms, canonical_of_type, partitions, transitive, Perm};
use crate::surfaces::Surface;
use serde::{Deserialize, Serialize};

/// A cover-existence query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverSpec {
    /// Base surface; must be orientable with at least one boundary circle.
    pub base: Surface,
    pub degree: usize,
    /// One partition of `degree` per boundary circle of the base: the cycle
    /// type of the monodromy over that circle.
    pub boundary_types: Vec<Vec<usize>>,
    /// Forbid branch points entirely.
    #[serde(default)]
    pub unbranched: bool,
    /// Require the covering surface to be connected.
    #[serde(default = "default_true")]
    pub require_connected: bool,
    /// When set, require this exact total branching number; otherwise the
    /// search minimizes branching (or forces 0 when `unbranched`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact_branching: Option<usize>,
}

fn default_true() -> bool {
    true
}

impl CoverSpec {
    pub fn unbranched(base: Surface, degree: usize, boundary_types: Vec<Vec<usize>>) -> Self {
        CoverSpec {
            base,
            degree,
            boundary_types,
            unbranched: true,
            require_connected: true,
            exact_branching: None,
        }
    }

    pub fn branched(base: Surface, degree: usize, boundary_types: Vec<Vec<usize>>) -> Self {
        CoverSpec {
            base,
            degree,
            boundary_types,
            unbranched: false,
            require_connected: true,
            exact_branching: None,
        }
    }

    pub fn with_exact_branching(mut self, branching: usize) -> Self {
        self.unbranched = branching == 0;
        self.exact_branching = Some(branching);
        self
    }
}

/// Witness tuple for a cover, in one-line notation on `0..degree`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCertificate {
    /// Handle generator pairs (a_i, b_i).
    pub handles: Vec<(Perm, Perm)>,
    /// Boundary words c_1..c_b, cycle types as prescribed.
    pub boundary: Vec<Perm>,
    /// Branch cycles, all non-identity.
    pub branch: Vec<Perm>,
}

impl CoverCertificate {
    pub fn branching_number(&self, degree: usize) -> usize {
        self.branch.iter().map(|w| degree - w.cycles().len()).sum()
    }

    fn generators(&self) -> Vec<&Perm> {
        self.handles
            .iter()
            .flat_map(|(a, b)| [a, b])
            .chain(self.boundary.iter())
            .chain(self.branch.iter())
            .collect()
    }
}

/// Result of a cover search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverResult {
    pub exists: bool,
    pub certificate: Option<CoverCertificate>,
    /// Total branching number of the certificate.
    pub branching: Option<usize>,
    /// Diffeomorphism type of the covering surface, when connected.
    pub cover_type: Option<Surface>,
}

impl CoverResult {
    fn not_found() -> Self {
        CoverResult {
            exists: false,
            certificate: None,
            branching: None,
            cover_type: None,
        }
    }
}

/// Search limits for the brute force. Exceeding them is an error distinct
/// from a negative answer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchBounds {
    pub max_degree: usize,
    pub max_base_genus: u32,
    /// Largest total branching tried when minimizing.
    pub max_branching: usize,
    /// Cap on the estimated number of tuples visited in one query.
    pub max_tuples: u64,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            max_degree: 5,
            max_base_genus: 3,
            max_branching: 8,
            max_tuples: 400_000_000,
        }
    }
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum CoversError {
    #[error("search bound exceeded: {0}")]
    SearchBoundExceeded(String),
    #[error("invalid cover spec: {0}")]
    InvalidSpec(String),
}

/// Riemann-Hurwitz consistency for unbranched covers:
/// chi(candidate) = k * chi(base).
pub fn riemann_hurwitz_unbranched_ok(base: Surface, degree: usize, candidate: Surface) -> bool {
    candidate.euler() == degree as i64 * base.euler()
}

fn check_spec(spec: &CoverSpec, bounds: &SearchBounds) -> Result<(u32, u32), CoversError> {
    let (genus, boundary) = match spec.base {
        Surface::Orientable { genus, boundary } => (genus, boundary),
        Surface::NonOrientable { .. } => {
            return Err(CoversError::InvalidSpec("base must be orientable".into()))
        }
    };
    if boundary == 0 {
        return Err(CoversError::InvalidSpec("base must have boundary".into()));
    }
    if spec.degree == 0 {
        return Err(CoversError::InvalidSpec("degree must be positive".into()));
    }
    if spec.boundary_types.len() != boundary as usize {
        return Err(CoversError::InvalidSpec(format!(
            "expected {} boundary types, got {}",
            boundary,
            spec.boundary_types.len()
        )));
    }
    for t in &spec.boundary_types {
        if t.iter().sum::<usize>() != spec.degree || t.contains(&0) {
            return Err(CoversError::InvalidSpec(format!(
                "boundary type {t:?} is not a partition of {}",
                spec.degree
            )));
        }
    }
    if spec.degree > bounds.max_degree {
        return Err(CoversError::SearchBoundExceeded(format!(
            "degree {} above brute-force bound {}",
            spec.degree, bounds.max_degree
        )));
    }
    if genus > bounds.max_base_genus {
        return Err(CoversError::SearchBoundExceeded(format!(
            "base genus {} above brute-force bound {}",
            genus, bounds.max_base_genus
        )));
    }
    Ok((genus, boundary))
}

/// Decides whether a cover matching `spec` exists, returning a witness
/// tuple and the type of the covering surface when it does.
pub fn exists_cover(spec: &CoverSpec, bounds: &SearchBounds) -> Result<CoverResult, CoversError> {
    let (genus, _) = check_spec(spec, bounds)?;
    let k = spec.degree;
    let tables = GroupTables::new(k);

    let branchings: Vec<usize> = if spec.unbranched {
        vec![0]
    } else if let Some(b) = spec.exact_branching {
        vec![b]
    } else {
        // Fixed parity: chi(cover) = k chi(base) - b and chi = boundary
        // count mod 2 on any (possibly disconnected) surface.
        let bc: i64 = spec.boundary_types.iter().map(|t| t.len() as i64).sum();
        let parity = (k as i64 * spec.base.euler() - bc).rem_euclid(2) as usize;
        (parity..=bounds.max_branching).step_by(2).collect()
    };

    for b in branchings {
        for branch_types in branch_type_multisets(k, b, &tables) {
            if let Some(found) = search_one(spec, genus, &branch_types, &tables, bounds, true)? {
                return Ok(found);
            }
        }
    }
    Ok(CoverResult::not_found())
}

/// Enumerates multisets of non-identity cycle types with the given total
/// branching number, each multiset ordered by type index.
fn branch_type_multisets(k: usize, total: usize, tables: &GroupTables) -> Vec<Vec<usize>> {
    // Candidate type ids with their branching contributions.
    let candidates: Vec<(usize, usize)> = tables
        .types
        .iter()
        .enumerate()
        .filter(|(_, t)| t.len() < k) // exclude the identity type
        .map(|(id, t)| (id, k - t.len()))
        .collect();
    let mut out = Vec::new();
    fn rec(
        rest: usize,
        from: usize,
        candidates: &[(usize, usize)],
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for i in from..candidates.len() {
            let (id, cost) = candidates[i];
            if cost <= rest {
                prefix.push(id);
                rec(rest - cost, i, candidates, prefix, out);
                prefix.pop();
            }
        }
    }
    rec(total, 0, &candidates, &mut Vec::new(), &mut out);
    out
}

struct GroupTables {
    k: usize,
    perms: Vec<Perm>,
    mult: Vec<u16>,
    inv: Vec<u16>,
    /// Cycle-type id of each element.
    type_of: Vec<u8>,
    /// All partitions of k, in `partitions` order.
    types: Vec<Vec<usize>>,
    /// Elements of each cycle type.
    members: Vec<Vec<u16>>,
}

impl GroupTables {
    fn new(k: usize) -> Self {
        let perms = all_perms(k);
        let n = perms.len();
        let index_of = |p: &Perm| -> u16 {
            perms
                .binary_search_by(|q| q.one_line().cmp(p.one_line()))
                .unwrap() as u16
        };
        let mut mult = vec![0u16; n * n];
        for (i, a) in perms.iter().enumerate() {
            for (j, b) in perms.iter().enumerate() {
                mult[i * n + j] = index_of(&a.compose(b));
            }
        }
        let inv: Vec<u16> = perms.iter().map(|p| index_of(&p.inverse())).collect();
        let types = partitions(k);
        let type_index = |t: &[usize]| types.iter().position(|u| u == t).unwrap();
        let type_of: Vec<u8> = perms
            .iter()
            .map(|p| type_index(&p.cycle_type()) as u8)
            .collect();
        let mut members = vec![Vec::new(); types.len()];
        for (i, &t) in type_of.iter().enumerate() {
            members[t as usize].push(i as u16);
        }
        GroupTables {
            k,
            perms,
            mult,
            inv,
            type_of,
            types,
            members,
        }
    }

    fn n(&self) -> usize {
        self.perms.len()
    }

    fn mul(&self, a: u16, b: u16) -> u16 {
        self.mult[a as usize * self.n() + b as usize]
    }

    fn type_id(&self, t: &[usize]) -> usize {
        self.types.iter().position(|u| u == t).unwrap_or_else(|| {
            let mut sorted = t.to_vec();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            self.types
                .iter()
                .position(|u| *u == sorted)
                .expect("partition of k")
        })
    }

    fn canonical_member(&self, type_id: usize) -> u16 {
        let p = canonical_of_type(self.k, &self.types[type_id]);
        self.perms
            .binary_search_by(|q| q.one_line().cmp(p.one_line()))
            .unwrap() as u16
    }
}

#[derive(Clone, Copy)]
enum Slot {
    /// A handle pair (a_i, b_i), contributing the commutator [a_i, b_i].
    Handle,
    /// A generator restricted to a cycle type.
    Typed(usize),
}

/// Searches for one witness with the given branch-type multiset. The last
/// boundary word is solved from the relation; `reduce` fixes the first slot
/// to canonical representatives up to simultaneous conjugation.
fn search_one(
    spec: &CoverSpec,
    genus: u32,
    branch_types: &[usize],
    tables: &GroupTables,
    bounds: &SearchBounds,
    reduce: bool,
) -> Result<Option<CoverResult>, CoversError> {
    let k = spec.degree;
    let b0 = spec.boundary_types.len();
    let forced_type = tables.type_id(&spec.boundary_types[b0 - 1]);

    // Parity obstruction: commutators are even, so the boundary and branch
    // words must multiply to an even permutation.
    let type_parity = |tid: usize| (k - tables.types[tid].len()) % 2;
    let mut total_parity = 0usize;
    for t in &spec.boundary_types {
        total_parity += k - t.len();
    }
    for &tid in branch_types {
        total_parity += type_parity(tid);
    }
    if !total_parity.is_multiple_of(2) {
        return Ok(None);
    }

    let mut slots: Vec<Slot> = Vec::new();
    for _ in 0..genus {
        slots.push(Slot::Handle);
    }
    for t in &spec.boundary_types[..b0 - 1] {
        slots.push(Slot::Typed(tables.type_id(t)));
    }
    for &tid in branch_types {
        slots.push(Slot::Typed(tid));
    }

    // Estimated search size, for the tuple cap.
    let mut estimate: u64 = 1;
    for (i, slot) in slots.iter().enumerate() {
        let count = match slot {
            Slot::Handle => {
                if reduce && i == 0 {
                    (tables.types.len() * tables.n()) as u64
                } else {
                    (tables.n() * tables.n()) as u64
                }
            }
            Slot::Typed(t) => {
                if reduce && i == 0 {
                    1
                } else {
                    tables.members[*t].len() as u64
                }
            }
        };
        estimate = estimate.saturating_mul(count.max(1));
    }
    if estimate > bounds.max_tuples {
        return Err(CoversError::SearchBoundExceeded(format!(
            "estimated {estimate} tuples exceeds cap {}",
            bounds.max_tuples
        )));
    }

    let id = tables
        .perms
        .binary_search_by(|q| q.one_line().cmp(Perm::identity(k).one_line()))
        .unwrap() as u16;

    // chosen[i]: for Handle slots two entries (a, b) are pushed; Typed one.
    let mut chosen: Vec<u16> = Vec::new();
    let found = dfs(
        &slots,
        0,
        id,
        &mut chosen,
        spec,
        forced_type,
        tables,
        reduce,
    );
    Ok(found.map(|(cert, branching)| {
        let connected = transitive(k, &cert.generators());
        let cover_type = if connected {
            let bc: u32 = spec.boundary_types.iter().map(|t| t.len() as u32).sum();
            let chi = k as i64 * spec.base.euler() - branching as i64;
            Surface::orientable_from_euler(chi, bc)
        } else {
            None
        };
        CoverResult {
            exists: true,
            certificate: Some(cert),
            branching: Some(branching),
            cover_type,
        }
    }))
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    slots: &[Slot],
    idx: usize,
    prefix: u16,
    chosen: &mut Vec<u16>,
    spec: &CoverSpec,
    forced_type: usize,
    tables: &GroupTables,
    reduce: bool,
) -> Option<(CoverCertificate, usize)> {
    if idx == slots.len() {
        // Solve the relation for the last boundary word.
        let c_last = tables.inv[prefix as usize];
        if tables.type_of[c_last as usize] as usize != forced_type {
            return None;
        }
        let cert = assemble(slots, chosen, c_last, spec, tables);
        if spec.require_connected && !transitive(spec.degree, &cert.generators()) {
            return None;
        }
        let branching = cert.branching_number(spec.degree);
        return Some((cert, branching));
    }
    match slots[idx] {
        Slot::Handle => {
            let first = reduce && idx == 0;
            let a_candidates: Vec<u16> = if first {
                (0..tables.types.len())
                    .map(|t| tables.canonical_member(t))
                    .collect()
            } else {
                (0..tables.n() as u16).collect()
            };
            for a in a_candidates {
                for b in 0..tables.n() as u16 {
                    // [a, b] = a b a^-1 b^-1
                    let com = tables.mul(
                        tables.mul(tables.mul(a, b), tables.inv[a as usize]),
                        tables.inv[b as usize],
                    );
                    chosen.push(a);
                    chosen.push(b);
                    let r = dfs(
                        slots,
                        idx + 1,
                        tables.mul(prefix, com),
                        chosen,
                        spec,
                        forced_type,
                        tables,
                        reduce,
                    );
                    chosen.pop();
                    chosen.pop();
                    if r.is_some() {
                        return r;
                    }
                }
            }
            None
        }
        Slot::Typed(t) => {
            let canon;
            let candidates: &[u16] = if reduce && idx == 0 {
                canon = [tables.canonical_member(t)];
                &canon
            } else {
                &tables.members[t]
            };
            for &c in candidates {
                chosen.push(c);
                let r = dfs(
                    slots,
                    idx + 1,
                    tables.mul(prefix, c),
                    chosen,
                    spec,
                    forced_type,
                    tables,
                    reduce,
                );
                chosen.pop();
                if r.is_some() {
                    return r;
                }
            }
            None
        }
    }
}

fn assemble(
    slots: &[Slot],
    chosen: &[u16],
    c_last: u16,
    spec: &CoverSpec,
    tables: &GroupTables,
) -> CoverCertificate {
    let b0 = spec.boundary_types.len();
    let mut handles = Vec::new();
    let mut boundary = Vec::new();
    let mut branch = Vec::new();
    let mut pos = 0usize;
    for slot in slots {
        match slot {
            Slot::Handle => {
                let a = chosen[pos];
                let b = chosen[pos + 1];
                pos += 2;
                handles.push((
                    tables.perms[a as usize].clone(),
                    tables.perms[b as usize].clone(),
                ));
            }
            Slot::Typed(_) => {
                // Typed slots are the first b0-1 boundary words, then the
                // branch cycles.
                let c = chosen[pos];
                pos += 1;
                if boundary.len() < b0 - 1 {
                    boundary.push(tables.perms[c as usize].clone());
                } else {
                    branch.push(tables.perms[c as usize].clone());
                }
            }
        }
    }
    boundary.push(tables.perms[c_last as usize].clone());
    CoverCertificate {
        handles,
        boundary,
        branch,
    }
}

/// Reference enumerator used by the test suites: iterates over all tuples
/// with the prescribed cycle types, with no symmetry reduction and no
/// solved-for generator; the relation is checked on every candidate. It
/// shares no search logic with `exists_cover` (only the permutation type).
pub mod oracle {
    use super::CoverSpec;
    use crate::perm::{all_perms, partitions, transitive, Perm};
    use crate::surfaces::Surface;

    struct Tables {
        perms: Vec<Perm>,
        mult: Vec<u16>,
        inv: Vec<u16>,
        identity: u16,
    }

    impl Tables {
        fn new(k: usize) -> Self {
            let perms = all_perms(k);
            let n = perms.len();
            let index = |p: &Perm| {
                perms
                    .iter()
                    .position(|q| q == p)
                    .expect("closed under composition") as u16
            };
            let mut mult = vec![0u16; n * n];
            for (i, a) in perms.iter().enumerate() {
                for (j, b) in perms.iter().enumerate() {
                    mult[i * n + j] = index(&a.compose(b));
                }
            }
            let inv: Vec<u16> = perms.iter().map(|p| index(&p.inverse())).collect();
            let identity = index(&Perm::identity(k));
            Tables {
                perms,
                mult,
                inv,
                identity,
            }
        }

        fn mul(&self, a: u16, b: u16) -> u16 {
            self.mult[a as usize * self.perms.len() + b as usize]
        }
    }

    /// Unreduced exhaustive existence check.
    pub fn exists_cover_exhaustive(spec: &CoverSpec, max_branching: usize) -> bool {
        let k = spec.degree;
        let (genus, b0) = match spec.base {
            Surface::Orientable { genus, boundary } => (genus as usize, boundary as usize),
            Surface::NonOrientable { .. } => return false,
        };
        if spec.boundary_types.len() != b0
            || spec
                .boundary_types
                .iter()
                .any(|t| t.iter().sum::<usize>() != k)
        {
            return false;
        }
        let branchings: Vec<usize> = if spec.unbranched {
            vec![0]
        } else if let Some(b) = spec.exact_branching {
            vec![b]
        } else {
            (0..=max_branching).collect()
        };
        let tables = Tables::new(k);
        let members_of = |t: &[usize]| -> Vec<u16> {
            tables
                .perms
                .iter()
                .enumerate()
                .filter(|(_, p)| p.cycle_type() == t)
                .map(|(i, _)| i as u16)
                .collect()
        };
        let everything: Vec<u16> = (0..tables.perms.len() as u16).collect();

        for b in branchings {
            for branch_types in branch_multisets(k, b) {
                // Candidate list per slot: handles iterate everything,
                // typed slots iterate the elements of their cycle type.
                let mut slots: Vec<Vec<u16>> = Vec::new();
                for _ in 0..2 * genus {
                    slots.push(everything.clone());
                }
                for t in &spec.boundary_types {
                    slots.push(members_of(t));
                }
                for t in &branch_types {
                    slots.push(members_of(t));
                }
                if slots.iter().any(|s| s.is_empty()) {
                    continue;
                }
                if odometer(&tables, genus, spec.require_connected, k, &slots) {
                    return true;
                }
            }
        }
        false
    }

    fn branch_multisets(k: usize, total: usize) -> Vec<Vec<Vec<usize>>> {
        let candidates: Vec<Vec<usize>> =
            partitions(k).into_iter().filter(|t| t.len() < k).collect();
        let mut out = Vec::new();
        fn rec(
            rest: usize,
            from: usize,
            k: usize,
            candidates: &[Vec<usize>],
            prefix: &mut Vec<Vec<usize>>,
            out: &mut Vec<Vec<Vec<usize>>>,
        ) {
            if rest == 0 {
                out.push(prefix.clone());
                return;
            }
            for i in from..candidates.len() {
                let cost = k - candidates[i].len();
                if cost <= rest {
                    prefix.push(candidates[i].clone());
                    rec(rest - cost, i, k, candidates, prefix, out);
                    prefix.pop();
                }
            }
        }
        rec(total, 0, k, &candidates, &mut Vec::new(), &mut out);
        out
    }

    fn odometer(
        tables: &Tables,
        genus: usize,
        require_connected: bool,
        k: usize,
        slots: &[Vec<u16>],
    ) -> bool {
        let mut counter = vec![0usize; slots.len()];
        loop {
            // Relation: [a_1,b_1]...[a_g,b_g] c_1...c_b w_1...w_l = 1.
            let mut acc = tables.identity;
            for h in 0..genus {
                let a = slots[2 * h][counter[2 * h]];
                let b = slots[2 * h + 1][counter[2 * h + 1]];
                let com = tables.mul(
                    tables.mul(tables.mul(a, b), tables.inv[a as usize]),
                    tables.inv[b as usize],
                );
                acc = tables.mul(acc, com);
            }
            for s in 2 * genus..slots.len() {
                acc = tables.mul(acc, slots[s][counter[s]]);
            }
            if acc == tables.identity {
                let gens: Vec<&Perm> = counter
                    .iter()
                    .zip(slots)
                    .map(|(&c, slot)| &tables.perms[slot[c] as usize])
                    .collect();
                if !require_connected || transitive(k, &gens) {
                    return true;
                }
            }
            // advance
            let mut pos = slots.len();
            loop {
                if pos == 0 {
                    return false;
                }
                pos -= 1;
                counter[pos] += 1;
                if counter[pos] < slots[pos].len() {
                    break;
                }
                counter[pos] = 0;
            }
        }
    }
}
