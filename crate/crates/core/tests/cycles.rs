//! Edge ideals of even cycles and the alternating binomial hypersurface.

use cohsupp::field::{Fp, DEFAULT_PRIMES};
use cohsupp::groebner::{find_point_on_mod, Ideal};
use cohsupp::simplicial::{cohomology_ranks, delta_complex};
use cohsupp::support::{alternating_binomial, support_verify, Oracle, VerifySettings};
use cohsupp::{FieldPoint, MonomialSeq, Subset, SubsetTable};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

#[test]
fn binomial_points_lie_in_support_of_small_cycles() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for n in [6, 10] {
        let oracle = Oracle::best(&MonomialSeq::edge_cycle(n).unwrap());
        let candidate = Ideal::new([alternating_binomial(n)]);
        let fp = Fp::new(DEFAULT_PRIMES[0]);
        for _ in 0..50 {
            let Some(FieldPoint::Modular { coords, .. }) = find_point_on_mod(&candidate, None, n, fp, &mut rng) else {
                panic!("no point on the binomial")
            };
            assert!(oracle.contains_mod(fp, &coords), "{n}-cycle at {coords:?}");
        }
    }
}

#[test]
fn ten_cycle_verifies_over_large_and_small_primes() {
    let oracle = Oracle::best(&MonomialSeq::edge_cycle(10).unwrap());
    let candidate = Ideal::new([alternating_binomial(10)]);
    let settings = VerifySettings { samples: 100, primes: vec![DEFAULT_PRIMES[0], 7, 11], seed: 3 };
    let report = support_verify(&oracle, &candidate, &settings).unwrap();
    assert!(report.agree, "{:?}", report.witness);
}

#[test]
fn six_cycle_rejects_wrong_candidate() {
    let oracle = Oracle::best(&MonomialSeq::edge_cycle(6).unwrap());
    let settings = VerifySettings { samples: 20, ..VerifySettings::default() };
    let report = support_verify(&oracle, &Ideal::new(["a1".parse().unwrap()]), &settings).unwrap();
    assert!(!report.agree);
    let w = report.witness.unwrap();
    assert_ne!(w.in_support, w.on_candidate);
}

#[test]
fn full_classes_of_long_cycles() {
    for n in 12..=14 {
        let f = MonomialSeq::edge_cycle(n).unwrap();
        let t = SubsetTable::new(&f);
        let ranks = cohomology_ranks(&delta_complex(&t, Subset::full(n)), 0);
        let want = match n % 3 {
            0 => BTreeMap::from([(n as i32 / 3 - 1, 2)]),
            1 => BTreeMap::from([((n as i32 - 1) / 3 - 1, 1)]),
            _ => BTreeMap::from([((n as i32 - 2) / 3, 1)]),
        };
        assert_eq!(ranks, want, "n = {n}");
    }
}
