//! Randomized properties across modules: serialization stability, oracle
//! agreement, the classification implication chain, and surgery
//! bookkeeping.

use proptest::prelude::*;
use spinal_core::circle_bundles::{build_sob, Curve, MulticurveData};
use spinal_core::covers::{exists_cover, oracle, CoverSpec, SearchBounds};
use spinal_core::obstructions::{
    brute_force_symmetry_oracle, find_planar_torsion, is_lefschetz_amenable, is_symmetric,
    is_uniform, ExactnessFlags,
};
use spinal_core::random::{random_closed_book, random_multicurve, BookGenConfig};
use spinal_core::sob::{OrbitTarget, SpineCircleId, TorusOrCircle, VertebraId};
use spinal_core::surfaces::Surface;
use spinal_core::surgery::spine_remove;
use std::collections::BTreeSet;

fn cfg() -> BookGenConfig {
    BookGenConfig::default()
}

proptest! {
    #[test]
    fn serde_round_trip_preserves_book_and_report(seed in 0u64..500) {
        let sob = random_closed_book(seed, &cfg());
        let json = serde_json::to_string(&sob).unwrap();
        let back: spinal_core::SpinalOpenBook = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(&back, &sob);
        prop_assert_eq!(back.validate(), sob.validate());
    }

    #[test]
    fn corrupted_books_round_trip_their_reports(seed in 0u64..200) {
        // Damage the book, then check the report survives serialization.
        let mut sob = random_closed_book(seed, &cfg());
        if let Some(o) = sob.papers.first_mut().and_then(|p| p.orbits.first_mut()) {
            o.target = OrbitTarget::Circle(SpineCircleId(9999));
        }
        let report = sob.validate();
        prop_assert!(!report.is_valid());
        let json = serde_json::to_string(&sob).unwrap();
        let back: spinal_core::SpinalOpenBook = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back.validate(), report);
    }

    #[test]
    fn symmetry_matches_the_brute_force_oracle(seed in 0u64..300) {
        let sob = random_closed_book(seed, &cfg());
        let fast = is_symmetric(&sob).unwrap().holds();
        let slow = brute_force_symmetry_oracle(&sob).unwrap();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn multiplicity_total_on_closed_books(seed in 0u64..100) {
        let sob = random_closed_book(seed, &cfg());
        for v in &sob.vertebrae {
            for &c in &v.circles {
                prop_assert!(
                    spinal_core::sob::multiplicity(&sob, TorusOrCircle::Circle(c)).is_ok()
                );
            }
        }
        let orbit_total: u32 =
            sob.papers.iter().flat_map(|p| p.orbits.iter().map(|o| o.size())).sum();
        let boundary_total: u32 = sob.papers.iter().map(|p| p.page.boundary()).sum();
        prop_assert_eq!(orbit_total, boundary_total);
    }

    #[test]
    fn torsion_absent_on_symmetric_books(seed in 0u64..200) {
        let sob = random_closed_book(seed, &cfg());
        if is_symmetric(&sob).unwrap().holds() {
            let flags = ExactnessFlags::disk_rule(&sob);
            prop_assert!(find_planar_torsion(&sob, &flags).unwrap().is_none());
        }
    }

    #[test]
    fn amenable_implies_uniform_implies_symmetric(seed in 0u64..60) {
        // Small books keep the cover searches inside the brute-force caps.
        let small = BookGenConfig {
            max_vertebrae: 2,
            max_papers: 2,
            max_page_boundary: 3,
            max_orbit_size: 2,
            ..cfg()
        };
        let sob = random_closed_book(seed, &small);
        let bounds = SearchBounds::default();
        let symmetric = is_symmetric(&sob).unwrap().holds();
        let (Ok(uniform), Ok(amenable)) =
            (is_uniform(&sob, 2, &bounds), is_lefschetz_amenable(&sob, 2, &bounds))
        else {
            return Ok(()); // search bound exceeded: chain not decidable
        };
        if amenable.holds() {
            prop_assert!(uniform.holds());
        }
        if uniform.holds() {
            prop_assert!(symmetric);
        }
    }

    #[test]
    fn reduced_cover_search_agrees_with_enumeration(seed in 0u64..150) {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let k = rng.gen_range(1..=3usize);
        let genus = rng.gen_range(0..=1u32);
        let b0 = rng.gen_range(1..=2u32);
        let parts = spinal_core::perm::partitions(k);
        let boundary_types: Vec<Vec<usize>> =
            (0..b0).map(|_| parts[rng.gen_range(0..parts.len())].clone()).collect();
        let spec = CoverSpec {
            base: Surface::orientable(genus, b0),
            degree: k,
            boundary_types,
            unbranched: rng.gen_bool(0.5),
            require_connected: true,
            exact_branching: None,
        };
        let bounds = SearchBounds { max_branching: 4, ..SearchBounds::default() };
        let fast = exists_cover(&spec, &bounds).unwrap();
        let slow = oracle::exists_cover_exhaustive(&spec, 4);
        prop_assert_eq!(fast.exists, slow);
        if let (Some(ct), Some(b)) = (fast.cover_type, fast.branching) {
            prop_assert_eq!(ct.euler(), k as i64 * spec.base.euler() - b as i64);
        }
    }

    #[test]
    fn spine_removal_bookkeeping(seed in 0u64..200) {
        let sob = random_closed_book(seed, &cfg());
        let all: Vec<VertebraId> = sob.vertebrae.iter().map(|v| v.id).collect();
        let pick: BTreeSet<VertebraId> =
            all.iter().copied().filter(|v| v.0 % 2 == seed as u32 % 2).collect();
        let (out, record) = spine_remove(&sob, &pick).unwrap();
        prop_assert!(out.validate().is_valid());

        // Per-component Euler bookkeeping.
        for p_new in &out.papers {
            let p_old = sob.find_paper(p_new.id).unwrap();
            let caps: i64 = record
                .capped_orbits
                .iter()
                .filter(|c| c.paper == p_new.id)
                .map(|c| c.cap_count as i64)
                .sum();
            prop_assert_eq!(p_new.page.euler(), p_old.page.euler() + caps);
        }

        // Disjoint splits commute.
        let (ha, hb): (BTreeSet<_>, BTreeSet<_>) =
            pick.iter().partition(|v| v.0 % 4 < 2);
        let one = spine_remove(&spine_remove(&sob, &ha).unwrap().0, &hb).unwrap().0;
        let two = spine_remove(&spine_remove(&sob, &hb).unwrap().0, &ha).unwrap().0;
        prop_assert_eq!(&one, &two);
        prop_assert_eq!(&one, &out);
    }

    #[test]
    fn circle_bundle_symmetry_matches_the_direct_derivation(seed in 0u64..300) {
        let mc = random_multicurve(seed);
        let sob = build_sob(&mc).unwrap();
        prop_assert!(sob.validate().is_valid());
        prop_assert!(sob.boundary_tori.is_empty());

        // Direct derivation: symmetric iff there are counts k_j such that
        // every curve touches region j exactly k_j times.
        let side_region = |s| {
            mc.regions.iter().position(|r| r.sides.contains(&s)).unwrap()
        };
        let mut per_curve: Vec<Vec<u32>> = Vec::new();
        for c in &mc.curves {
            let mut touches = vec![0u32; mc.regions.len()];
            match c {
                Curve::TwoSided { side_a, side_b, .. } => {
                    touches[side_region(*side_a)] += 1;
                    touches[side_region(*side_b)] += 1;
                }
                Curve::OneSided { side } => touches[side_region(*side)] += 2,
            }
            per_curve.push(touches);
        }
        let direct = per_curve.windows(2).all(|w| w[0] == w[1]);
        prop_assert_eq!(is_symmetric(&sob).unwrap().holds(), direct);

        // Any torsion on annulus-page books has order exactly 1.
        let flags = ExactnessFlags::disk_rule(&sob);
        if let Some(w) = find_planar_torsion(&sob, &flags).unwrap() {
            prop_assert_eq!(w.order, 1);
        }
    }

    #[test]
    fn verdicts_monotone_under_not_exact_flags(seed in 0u64..200) {
        use spinal_core::obstructions::{verdict, Exactness};
        use spinal_core::random::random_flags;

        let sob = random_closed_book(seed, &cfg());
        let flags = random_flags(seed ^ 0x5eed, &sob);
        let mut downgraded = flags.clone();
        for (i, (_, e)) in downgraded.flags.iter_mut().enumerate() {
            if (seed as usize + i).is_multiple_of(2) && *e == Exactness::Exact {
                *e = Exactness::NotExact;
            }
        }
        let before = verdict(&sob, &flags).unwrap();
        let after = verdict(&sob, &downgraded).unwrap();
        // Marking components not-exact never adds verdicts.
        for e in &after {
            prop_assert!(
                before.iter().any(|f| f.verdict == e.verdict),
                "downgrading flags added {:?}",
                e.verdict
            );
        }
    }

    #[test]
    fn multicurve_serde_round_trip(seed in 0u64..100) {
        let mc = random_multicurve(seed);
        let json = serde_json::to_string(&mc).unwrap();
        let back: MulticurveData = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, mc);
    }
}
