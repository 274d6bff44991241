//! Six-generator supports, where minors are sampled rather than expanded.

use cohsupp::field::{Fp, DEFAULT_PRIMES};
use cohsupp::support::{classify, support_symbolic, Oracle, SupportClass, SupportSettings};
use cohsupp::MonomialSeq;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn support(spec: &str) -> (MonomialSeq, cohsupp::support::SupportReport) {
    let f: MonomialSeq = spec.parse().unwrap();
    let r = support_symbolic(&f, &SupportSettings::default()).unwrap();
    (f, r)
}

/// Random points, each coordinate zeroed with probability 0.4, plus the
/// points with exactly the listed coordinates zero.
fn agrees_with_oracle(f: &MonomialSeq, r: &cohsupp::support::SupportReport, zeros: &[&[usize]]) {
    let oracle = Oracle::best(f);
    let fp = Fp::new(DEFAULT_PRIMES[0]);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for k in 0..300 {
        let mut pt: Vec<u64> = (0..6).map(|_| fp.random_nonzero(&mut rng)).collect();
        match zeros.get(k % (zeros.len() + 1)) {
            Some(z) => z.iter().for_each(|&i| pt[i] = 0),
            None => pt.iter_mut().for_each(|x| {
                if rng.gen_bool(0.4) {
                    *x = 0
                }
            }),
        }
        assert_eq!(oracle.contains_mod(fp, &pt), r.variety.contains_mod(fp, &pt), "{f} at {pt:?}: {}", r.variety);
    }
}

#[test]
fn regular_sequence_of_squares() {
    let (_, r) = support("x1^2,x2^2,x3^2,x4^2,x5^2,x6^2");
    assert_eq!(classify(&r.variety), SupportClass::OriginOnly, "{}", r.variety);
}

#[test]
fn isolated_generator_cuts_a_hyperplane() {
    let (f, r) = support("x1^3,x2^2*x8,x3^2*x9,x4*x7^2,x5*x7^2,x6*x8*x9");
    assert_eq!(r.variety.to_string(), "V(a1)");
    agrees_with_oracle(&f, &r, &[&[0], &[1, 2, 3, 4]]);
}

#[test]
fn two_hyperplanes_inside_a_hyperplane() {
    let (f, r) = support("x1^2,x2*x6,x3*x4,x5*x7,x4*x5,x6*x7");
    assert_eq!(r.variety.to_string(), "V(a1, a2*a3)");
    assert!(matches!(classify(&r.variety), SupportClass::Other(_)));
    agrees_with_oracle(&f, &r, &[&[0, 1], &[0, 2], &[0], &[1, 2]]);
}

#[test]
fn plane_and_hyperplane() {
    let (f, r) = support("x1^4*x7,x2^4*x8,x3^4*x5,x6^2*x9^2*x10,x4*x5*x6^2*x10,x7*x8*x9^2*x10");
    assert_eq!(r.variety.to_string(), "V(a2, a1) ∪ V(a3)");
    agrees_with_oracle(&f, &r, &[&[0, 1], &[2], &[0], &[1]]);
}
