//! Structural identities of the Taylor-derived complexes.

mod common;

use cohsupp::complex::{chat_complex, taylor_kbar};
use cohsupp::diagram::{diagram_from_table, weak_grading, totalization};
use cohsupp::field::{Fp, DEFAULT_PRIMES};
use cohsupp::simplicial::block_matches_cochain;
use cohsupp::support::{Engine, Oracle};
use cohsupp::{Monomial, MonomialSeq, SubsetTable};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn arb_seq(max_gens: usize) -> impl Strategy<Value = MonomialSeq> {
    prop::collection::vec(prop::collection::vec(0u32..3, 4), 1..=max_gens).prop_filter_map("needs distinct nonconstant generators", |rows| {
        let mons: Vec<Monomial> = rows.iter().map(|r| Monomial::from_dense(r)).collect();
        if mons.iter().any(|m| m.degree() == 0) {
            return None;
        }
        MonomialSeq::new(mons).ok()
    })
}

#[test]
fn corpus_square_zero_and_dimension() {
    for f in common::corpus().into_iter().filter(|f| f.len() <= 6) {
        let chat = chat_complex(&f);
        assert!(chat.square_vanishes(), "{f}");
        assert!(taylor_kbar(&f).square_vanishes(), "{f}");
        let table = SubsetTable::new(&f);
        let diag = diagram_from_table(&table);
        if let Ok(grading) = weak_grading(&diag) {
            let t = totalization(&table, &diag, &grading, None).unwrap();
            assert_eq!(t.dimension(), 1 << f.len(), "{f}");
            assert!(t.square_vanishes(), "{f}");
        }
    }
}

#[test]
fn corpus_ksgn_identity() {
    for f in common::corpus() {
        let table = SubsetTable::new(&f);
        for c in table.classes() {
            assert!(block_matches_cochain(&table, c), "{f}, class {c}");
        }
    }
}

#[test]
fn corpus_engines_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for f in common::corpus().into_iter().filter(|f| f.len() <= 6) {
        let Ok(total) = Oracle::new(&f, Engine::Totalization) else { continue };
        let chat = Oracle::new(&f, Engine::Chat).unwrap();
        let fp = Fp::new(DEFAULT_PRIMES[1]);
        for k in 0..200 {
            // Half the points have zero coordinates, which is where supports live.
            let pt: Vec<u64> = (0..f.len())
                .map(|_| if k % 2 == 0 && rng.gen_bool(0.4) { 0 } else { fp.random(&mut rng) })
                .collect();
            assert_eq!(total.contains_mod(fp, &pt), chat.contains_mod(fp, &pt), "{f} at {pt:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_complexes_square_to_zero(f in arb_seq(6)) {
        let chat = chat_complex(&f);
        prop_assert!(chat.square_vanishes());
        let table = SubsetTable::new(&f);
        let diag = diagram_from_table(&table);
        if let Ok(grading) = weak_grading(&diag) {
            let t = totalization(&table, &diag, &grading, None).unwrap();
            prop_assert_eq!(t.dimension(), 1 << f.len());
            prop_assert!(t.square_vanishes());
        }
    }

    #[test]
    fn random_ksgn_identity(f in arb_seq(5)) {
        let table = SubsetTable::new(&f);
        for c in table.classes() {
            prop_assert!(block_matches_cochain(&table, c));
        }
    }

    #[test]
    fn random_engines_agree(f in arb_seq(5), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if let Ok(total) = Oracle::new(&f, Engine::Totalization) {
            let chat = Oracle::new(&f, Engine::Chat).unwrap();
            let fp = Fp::new(DEFAULT_PRIMES[0]);
            for _ in 0..20 {
                let pt: Vec<u64> = (0..f.len()).map(|_| if rng.gen_bool(0.4) { 0 } else { fp.random(&mut rng) }).collect();
                prop_assert_eq!(total.contains_mod(fp, &pt), chat.contains_mod(fp, &pt));
            }
        }
    }
}
