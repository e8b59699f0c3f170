//! Compact-surface bookkeeping.
//!
//! Everything downstream (incidence checks, cover searches, torsion
//! detection) only ever consumes the diffeomorphism type of a compact
//! surface, so a surface is just its classification data: orientability,
//! genus or crosscap number, and the count of boundary circles.

use serde::{Deserialize, Serialize};

/// Diffeomorphism type of a compact surface.
///
/// Non-orientable surfaces occur only as circle-bundle bases; vertebrae and
/// pages are always orientable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Surface {
    Orientable { genus: u32, boundary: u32 },
    NonOrientable { crosscaps: u32, boundary: u32 },
}

impl Surface {
    pub fn orientable(genus: u32, boundary: u32) -> Self {
        Surface::Orientable { genus, boundary }
    }

    /// `crosscaps` must be at least 1.
    pub fn non_orientable(crosscaps: u32, boundary: u32) -> Self {
        assert!(
            crosscaps >= 1,
            "non-orientable surface needs crosscaps >= 1"
        );
        Surface::NonOrientable {
            crosscaps,
            boundary,
        }
    }

    pub fn disk() -> Self {
        Surface::orientable(0, 1)
    }

    pub fn annulus() -> Self {
        Surface::orientable(0, 2)
    }

    pub fn is_orientable(&self) -> bool {
        matches!(self, Surface::Orientable { .. })
    }

    pub fn boundary(&self) -> u32 {
        match *self {
            Surface::Orientable { boundary, .. } => boundary,
            Surface::NonOrientable { boundary, .. } => boundary,
        }
    }

    /// Euler characteristic: `2 - 2g - b` orientable, `2 - c - b` otherwise.
    pub fn euler(&self) -> i64 {
        match *self {
            Surface::Orientable { genus, boundary } => 2 - 2 * genus as i64 - boundary as i64,
            Surface::NonOrientable {
                crosscaps,
                boundary,
            } => 2 - crosscaps as i64 - boundary as i64,
        }
    }

    /// Structural validity: declared crosscap count must be positive.
    pub fn is_valid(&self) -> bool {
        match *self {
            Surface::Orientable { .. } => true,
            Surface::NonOrientable { crosscaps, .. } => crosscaps >= 1,
        }
    }

    /// Orientable surface recovered from its Euler characteristic and
    /// boundary count; `None` when no such surface exists.
    pub fn orientable_from_euler(euler: i64, boundary: u32) -> Option<Self> {
        let twice_genus = 2 - boundary as i64 - euler;
        if twice_genus < 0 || twice_genus % 2 != 0 {
            return None;
        }
        Some(Surface::orientable((twice_genus / 2) as u32, boundary))
    }

    pub fn is_disk(&self) -> bool {
        *self == Surface::disk()
    }

    pub fn is_planar(&self) -> bool {
        matches!(*self, Surface::Orientable { genus: 0, .. })
    }
}

/// True iff the two surfaces are diffeomorphic.
pub fn same_type(a: Surface, b: Surface) -> bool {
    a == b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_of_standard_surfaces() {
        assert_eq!(Surface::disk().euler(), 1);
        assert_eq!(Surface::annulus().euler(), 0);
        assert_eq!(Surface::orientable(0, 3).euler(), -1); // pair of pants
        assert_eq!(Surface::orientable(1, 0).euler(), 0); // torus
        assert_eq!(Surface::non_orientable(1, 0).euler(), 1); // RP^2
        assert_eq!(Surface::non_orientable(2, 0).euler(), 0); // Klein bottle
    }

    #[test]
    fn same_type_compares_all_fields() {
        assert!(same_type(Surface::disk(), Surface::orientable(0, 1)));
        assert!(!same_type(Surface::annulus(), Surface::orientable(1, 2)));
        assert!(same_type(
            Surface::orientable(1, 1),
            Surface::orientable(1, 1)
        ));
        assert!(!same_type(
            Surface::orientable(0, 0),
            Surface::non_orientable(2, 0)
        ));
    }

    #[test]
    fn euler_additive_and_handle_drop() {
        // One 1-handle drops chi by exactly one: disk + handle on two
        // distinct boundary arcs of the same circle = annulus.
        assert_eq!(Surface::annulus().euler(), Surface::disk().euler() - 1);
        // Disjoint union is additive, checked on a sample.
        let parts = [
            Surface::disk(),
            Surface::orientable(2, 3),
            Surface::annulus(),
        ];
        let total: i64 = parts.iter().map(|s| s.euler()).sum();
        assert_eq!(total, (1 + (-5)));
    }

    #[test]
    fn same_type_is_an_equivalence_relation() {
        let mut samples = Vec::new();
        for g in 0..3u32 {
            for b in 0..3u32 {
                samples.push(Surface::orientable(g, b));
                samples.push(Surface::non_orientable(g + 1, b));
            }
        }
        for &a in &samples {
            assert!(same_type(a, a));
            for &b in &samples {
                assert_eq!(same_type(a, b), same_type(b, a));
                for &c in &samples {
                    if same_type(a, b) && same_type(b, c) {
                        assert!(same_type(a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn from_euler_round_trip() {
        for g in 0..4u32 {
            for b in 0..4u32 {
                let s = Surface::orientable(g, b);
                assert_eq!(Surface::orientable_from_euler(s.euler(), b), Some(s));
            }
        }
        // chi parity mismatch has no orientable solution
        assert_eq!(Surface::orientable_from_euler(0, 1), None);
    }
}
