//! Ideals, Buchberger's algorithm in degrevlex, and radical membership.
//!
//! The Gröbner kernel is generic over the coefficient field so the same code
//! runs over `ℚ` (certified answers) and over `𝔽_p` (fast modular answers used
//! when the rational computation hits its resource cap).

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Coeff, FieldPoint, Fp, Zp, DEFAULT_PRIMES};
use crate::poly::{Exps, RatPoly, MAX_POLY_VARS};

/// A list of generators; zero generators are dropped and the rest are stored
/// in primitive integer form, deduplicated and sorted.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Ideal {
    gens: Vec<RatPoly>,
}

impl Ideal {
    pub fn new<I: IntoIterator<Item = RatPoly>>(gens: I) -> Self {
        let mut v: Vec<RatPoly> = gens
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.primitive())
            .collect();
        v.sort_by(|a, b| {
            let la = a.leading().map(|t| t.0);
            let lb = b.leading().map(|t| t.0);
            la.cmp(&lb).then_with(|| a.to_string().cmp(&b.to_string()))
        });
        v.dedup();
        Ideal { gens: v }
    }

    pub fn unit() -> Self {
        Ideal::new([RatPoly::one()])
    }

    pub fn gens(&self) -> &[RatPoly] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Some generator is a nonzero constant.
    pub fn has_unit(&self) -> bool {
        self.gens.iter().any(|g| g.is_constant())
    }

    pub fn used_vars(&self) -> usize {
        self.gens.iter().map(RatPoly::used_vars).max().unwrap_or(0)
    }

    pub fn vanishes_mod(&self, fp: Fp, point: &[u64]) -> bool {
        self.gens.iter().all(|g| g.eval_mod(fp, point) == Some(0))
    }

    pub fn vanishes_at(&self, point: &FieldPoint) -> bool {
        match point {
            FieldPoint::Rational { coords } => self.gens.iter().all(|g| Zero::is_zero(&g.eval_rational(coords))),
            FieldPoint::Modular { p, coords } => self.vanishes_mod(Fp::new(*p), coords),
        }
    }

    pub fn rename_vars(&self, map: &[usize]) -> Self {
        Ideal::new(self.gens.iter().map(|g| g.rename_vars(map)))
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

/// Terms in descending degrevlex order.
type Poly<C> = Vec<(Exps, C)>;

/// Limits that turn runaway Gröbner computations into errors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GbLimits {
    /// S-pairs reduced.
    pub max_pairs: usize,
    /// Basis elements, including redundant ones.
    pub max_basis: usize,
    /// Terms in any single polynomial.
    pub max_terms: usize,
}

impl Default for GbLimits {
    fn default() -> Self {
        GbLimits { max_pairs: 20_000, max_basis: 4_000, max_terms: 200_000 }
    }
}

fn to_rational_poly(p: &RatPoly) -> Poly<BigRational> {
    p.terms().to_vec()
}

fn to_modular_poly(p: &RatPoly, fp: Fp) -> Option<Poly<Zp>> {
    let mut out = Vec::with_capacity(p.terms().len());
    for (e, c) in p.terms() {
        let v = fp.from_rational(c)?;
        if v != 0 {
            out.push((*e, Zp::new(v, fp)));
        }
    }
    Some(out)
}

fn make_monic<C: Coeff>(p: &mut Poly<C>) {
    if let Some((_, lc)) = p.first() {
        if !lc.is_one() {
            let inv = lc.inv();
            for t in p.iter_mut() {
                t.1 = t.1.mul(&inv);
            }
        }
    }
}

/// Fully reduces `f` modulo the monic polynomials `basis`.
fn reduce<C: Coeff>(f: &Poly<C>, basis: &[&Poly<C>], limits: &GbLimits) -> Result<Poly<C>> {
    let mut work: BTreeMap<Exps, C> = f.iter().cloned().collect();
    let mut rem: Poly<C> = Vec::new();
    while let Some((e, c)) = work.pop_last() {
        let divisor = basis.iter().find(|g| g[0].0.divides(&e));
        match divisor {
            None => rem.push((e, c)),
            Some(g) => {
                let m = g[0].0.quotient_of(&e);
                for (ge, gc) in &g[1..] {
                    let key = ge.mul(&m);
                    let delta = c.mul(gc);
                    match work.get_mut(&key) {
                        Some(v) => {
                            *v = v.sub(&delta);
                            if v.is_zero() {
                                work.remove(&key);
                            }
                        }
                        None => {
                            work.insert(key, delta.neg());
                        }
                    }
                }
                if work.len() > limits.max_terms {
                    return Err(Error::ResourceCap(format!(
                        "Gröbner reduction exceeded {} terms",
                        limits.max_terms
                    )));
                }
            }
        }
    }
    Ok(rem)
}

fn spoly<C: Coeff>(f: &Poly<C>, g: &Poly<C>) -> Poly<C> {
    let l = f[0].0.lcm(&g[0].0);
    let mf = f[0].0.quotient_of(&l);
    let mg = g[0].0.quotient_of(&l);
    let mut acc: BTreeMap<Exps, C> = BTreeMap::new();
    for (e, c) in &f[1..] {
        acc.insert(e.mul(&mf), c.clone());
    }
    for (e, c) in &g[1..] {
        let key = e.mul(&mg);
        match acc.get_mut(&key) {
            Some(v) => {
                *v = v.sub(c);
                if v.is_zero() {
                    acc.remove(&key);
                }
            }
            None => {
                acc.insert(key, c.neg());
            }
        }
    }
    acc.into_iter().rev().collect()
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Exps,
    sugar: u32,
}

struct Basis<C: Coeff> {
    polys: Vec<Poly<C>>,
    sugar: Vec<u32>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl<C: Coeff> Basis<C> {
    /// Gebauer–Möller update with the product and chain criteria.
    fn insert(&mut self, h: Poly<C>, sugar: u32) {
        let hk = self.polys.len();
        let lh = h[0].0;
        let mut fresh: Vec<(Pair, bool)> = Vec::new();
        for i in 0..hk {
            if !self.active[i] {
                continue;
            }
            let li = self.polys[i][0].0;
            let lcm = li.lcm(&lh);
            let s = (self.sugar[i] + lcm.degree() - li.degree()).max(sugar + lcm.degree() - lh.degree());
            fresh.push((Pair { i, j: hk, lcm, sugar: s }, li.is_coprime(&lh)));
        }
        // Chain criterion among the new pairs: drop pairs whose lcm is a proper
        // multiple of another new pair's lcm; among equal lcms keep one, and
        // drop the whole group if any member is coprime.
        let mut keep = vec![true; fresh.len()];
        for a in 0..fresh.len() {
            for b in 0..fresh.len() {
                if a != b && fresh[b].0.lcm.divides(&fresh[a].0.lcm) && fresh[b].0.lcm != fresh[a].0.lcm {
                    keep[a] = false;
                    break;
                }
            }
        }
        let mut chosen: Vec<Pair> = Vec::new();
        let mut seen: Vec<Exps> = Vec::new();
        for (idx, (pair, _)) in fresh.iter().enumerate() {
            if !keep[idx] || seen.contains(&pair.lcm) {
                continue;
            }
            seen.push(pair.lcm);
            let group_coprime = fresh
                .iter()
                .enumerate()
                .any(|(k, (q, cop))| keep[k] && q.lcm == pair.lcm && *cop);
            if !group_coprime {
                chosen.push(Pair { i: pair.i, j: pair.j, lcm: pair.lcm, sugar: pair.sugar });
            }
        }
        // Old pairs made redundant by the new leading monomial.
        let polys = &self.polys;
        self.pairs.retain(|p| {
            if !lh.divides(&p.lcm) {
                return true;
            }
            let li = polys[p.i][0].0.lcm(&lh);
            let lj = polys[p.j][0].0.lcm(&lh);
            li == p.lcm || lj == p.lcm
        });
        self.pairs.extend(chosen);
        for i in 0..hk {
            if self.active[i] && lh.divides(&self.polys[i][0].0) {
                self.active[i] = false;
            }
        }
        self.polys.push(h);
        self.sugar.push(sugar);
        self.active.push(true);
    }

    fn active_refs(&self) -> Vec<&Poly<C>> {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, &a)| a)
            .map(|(p, _)| p)
            .collect()
    }
}

/// Reduced Gröbner basis in degrevlex; an empty result means the zero ideal.
fn groebner_generic<C: Coeff>(input: Vec<Poly<C>>, limits: &GbLimits) -> Result<Vec<Poly<C>>> {
    let mut basis = Basis { polys: Vec::new(), sugar: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    let mut input: Vec<Poly<C>> = input.into_iter().filter(|p| !p.is_empty()).collect();
    input.sort_by(|a, b| a[0].0.cmp(&b[0].0));
    for p in input {
        let refs = basis.active_refs();
        let mut r = reduce(&p, &refs, limits)?;
        if r.is_empty() {
            continue;
        }
        make_monic(&mut r);
        let s = r.iter().map(|t| t.0.degree()).max().unwrap_or(0);
        if r[0].0.degree() == 0 {
            return Ok(vec![r]);
        }
        basis.insert(r, s);
    }
    let mut processed = 0usize;
    while !basis.pairs.is_empty() {
        let best = (0..basis.pairs.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&basis.pairs[a], &basis.pairs[b]);
                pa.sugar.cmp(&pb.sugar).then(pa.lcm.cmp(&pb.lcm))
            })
            .expect("nonempty");
        let pair = basis.pairs.swap_remove(best);
        processed += 1;
        if processed > limits.max_pairs {
            return Err(Error::ResourceCap(format!("Gröbner basis exceeded {} S-pairs", limits.max_pairs)));
        }
        let s = spoly(&basis.polys[pair.i], &basis.polys[pair.j]);
        let refs = basis.active_refs();
        let mut r = reduce(&s, &refs, limits)?;
        if r.is_empty() {
            continue;
        }
        make_monic(&mut r);
        if r[0].0.degree() == 0 {
            return Ok(vec![r]);
        }
        basis.insert(r, pair.sugar);
        if basis.polys.len() > limits.max_basis {
            return Err(Error::ResourceCap(format!("Gröbner basis exceeded {} elements", limits.max_basis)));
        }
    }
    // Interreduce the minimal basis.
    let minimal: Vec<Poly<C>> = basis
        .polys
        .into_iter()
        .zip(basis.active)
        .filter(|(_, a)| *a)
        .map(|(p, _)| p)
        .collect();
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let head = minimal[k][0].clone();
        let others: Vec<&Poly<C>> = minimal.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, p)| p).collect();
        let tail: Poly<C> = minimal[k][1..].to_vec();
        let mut reduced = vec![head];
        reduced.extend(reduce(&tail, &others, limits)?);
        out.push(reduced);
    }
    out.sort_by(|a, b| b[0].0.cmp(&a[0].0));
    Ok(out)
}

/// A Gröbner basis over `ℚ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    polys: Vec<RatPoly>,
}

impl GroebnerBasis {
    pub fn polys(&self) -> &[RatPoly] {
        &self.polys
    }

    pub fn is_unit(&self) -> bool {
        matches!(self.polys.as_slice(), [p] if p.is_constant())
    }

    pub fn normal_form(&self, f: &RatPoly) -> RatPoly {
        let gb: Vec<Poly<BigRational>> = self.polys.iter().map(to_rational_poly).collect();
        let refs: Vec<&Poly<BigRational>> = gb.iter().collect();
        let unlimited = GbLimits { max_pairs: usize::MAX, max_basis: usize::MAX, max_terms: usize::MAX };
        let r = reduce(&to_rational_poly(f), &refs, &unlimited).expect("unlimited reduction");
        RatPoly::from_terms(r)
    }

    pub fn contains(&self, f: &RatPoly) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn ideal(&self) -> Ideal {
        Ideal::new(self.polys.iter().cloned())
    }
}

/// Reduced degrevlex Gröbner basis of `I` over `ℚ`.
pub fn buchberger(ideal: &Ideal, limits: &GbLimits) -> Result<GroebnerBasis> {
    let input = ideal.gens().iter().map(to_rational_poly).collect();
    let gb = groebner_generic(input, limits)?;
    Ok(GroebnerBasis {
        polys: gb.into_iter().map(RatPoly::from_terms).collect(),
    })
}

/// Whether the modular Gröbner basis of `I` is `{1}`; `None` if a coefficient
/// denominator vanishes mod `p`.
fn modular_is_unit(gens: &[RatPoly], fp: Fp, limits: &GbLimits) -> Result<Option<bool>> {
    let mut input = Vec::with_capacity(gens.len());
    for g in gens {
        match to_modular_poly(g, fp) {
            Some(p) => input.push(p),
            None => return Ok(None),
        }
    }
    let gb = groebner_generic(input, limits)?;
    Ok(Some(matches!(gb.as_slice(), [p] if p[0].0.degree() == 0)))
}

const AUX_VAR: usize = MAX_POLY_VARS - 1;

fn rabinowitsch(p: &RatPoly, ideal: &Ideal) -> Vec<RatPoly> {
    let t = RatPoly::var(AUX_VAR);
    let mut gens: Vec<RatPoly> = ideal.gens().to_vec();
    gens.push(RatPoly::one().sub(&t.mul(p)));
    gens
}

/// How a membership or equality verdict was reached.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "level", rename_all = "snake_case")]
pub enum Certainty {
    /// Exact Gröbner computation over `ℚ`.
    Certified,
    /// Agreement of Gröbner computations over the listed primes after the
    /// rational computation hit its cap.
    Modular { primes: Vec<u64> },
}

/// Decides `p ∈ √I` by adjoining `1 - t·p` and testing whether the ideal
/// becomes the unit ideal.
pub fn radical_membership(p: &RatPoly, ideal: &Ideal, limits: &GbLimits) -> Result<(bool, Certainty)> {
    if p.is_zero() || ideal.has_unit() {
        return Ok((true, Certainty::Certified));
    }
    if ideal.is_empty() {
        return Ok((false, Certainty::Certified));
    }
    if p.used_vars() > AUX_VAR || ideal.used_vars() > AUX_VAR {
        return Err(Error::InvalidInput("too many parameters for radical membership".into()));
    }
    let gens = rabinowitsch(p, ideal);
    match groebner_generic(gens.iter().map(to_rational_poly).collect(), limits) {
        Ok(gb) => Ok((matches!(gb.as_slice(), [q] if q[0].0.degree() == 0), Certainty::Certified)),
        Err(Error::ResourceCap(msg)) => {
            log::warn!("rational radical membership capped ({msg}); falling back to modular bases");
            let relaxed = GbLimits {
                max_pairs: limits.max_pairs.saturating_mul(4),
                max_basis: limits.max_basis.saturating_mul(4),
                max_terms: limits.max_terms.saturating_mul(4),
            };
            let mut answers = Vec::new();
            let mut primes = Vec::new();
            for &q in &DEFAULT_PRIMES {
                if let Some(a) = modular_is_unit(&gens, Fp::new(q), &relaxed)? {
                    answers.push(a);
                    primes.push(q);
                }
            }
            match answers.first() {
                Some(&a) if answers.iter().all(|&b| b == a) => Ok((a, Certainty::Modular { primes })),
                _ => Err(Error::ResourceCap(format!(
                    "radical membership undecided: {msg}; modular answers {answers:?}"
                ))),
            }
        }
        Err(e) => Err(e),
    }
}

/// `p ∈ √I`, with the certainty level discarded.
pub fn radical_member(p: &RatPoly, ideal: &Ideal, limits: &GbLimits) -> Result<bool> {
    radical_membership(p, ideal, limits).map(|(b, _)| b)
}

/// `V(A) ⊆ V(B)`, i.e. every generator of `B` lies in `√A`.
pub fn variety_contained(a: &Ideal, b: &Ideal, limits: &GbLimits) -> Result<(bool, Certainty)> {
    let mut certainty = Certainty::Certified;
    for g in b.gens() {
        let (m, c) = radical_membership(g, a, limits)?;
        if c != Certainty::Certified {
            certainty = c;
        }
        if !m {
            return Ok((false, certainty));
        }
    }
    Ok((true, certainty))
}

/// Outcome of comparing two varieties.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum VarietyVerdict {
    EqualCertified,
    EqualRandomized { primes: Vec<u64> },
    /// The varieties differ; `witness`, when found, lies on exactly one of them.
    Different { witness: Option<FieldPoint> },
}

/// Compares `V(A)` and `V(B)` by mutual radical membership.
pub fn varieties_equal<R: Rng>(a: &Ideal, b: &Ideal, limits: &GbLimits, rng: &mut R) -> Result<VarietyVerdict> {
    let (ab, c1) = variety_contained(a, b, limits)?;
    if !ab {
        let n = a.used_vars().max(b.used_vars());
        let witness = find_point_on(a, Some(b), n, rng);
        return Ok(VarietyVerdict::Different { witness });
    }
    let (ba, c2) = variety_contained(b, a, limits)?;
    if !ba {
        let n = a.used_vars().max(b.used_vars());
        let witness = find_point_on(b, Some(a), n, rng);
        return Ok(VarietyVerdict::Different { witness });
    }
    match (c1, c2) {
        (Certainty::Certified, Certainty::Certified) => Ok(VarietyVerdict::EqualCertified),
        (Certainty::Modular { primes }, _) | (_, Certainty::Modular { primes }) => {
            Ok(VarietyVerdict::EqualRandomized { primes })
        }
    }
}

/// Heuristic search for a point of `V(on)` over `𝔽_p` (first default prime)
/// that is not in `V(off)`. Coordinates are zeroed at random and one free
/// coordinate is solved for when the remaining generators are linear in it.
pub fn find_point_on<R: Rng>(on: &Ideal, off: Option<&Ideal>, n: usize, rng: &mut R) -> Option<FieldPoint> {
    find_point_on_mod(on, off, n, Fp::new(DEFAULT_PRIMES[0]), rng)
}

/// [`find_point_on`] over a chosen prime field.
pub fn find_point_on_mod<R: Rng>(on: &Ideal, off: Option<&Ideal>, n: usize, fp: Fp, rng: &mut R) -> Option<FieldPoint> {
    let n = n.max(1);
    for attempt in 0..4000 {
        let zero_prob = [0.0, 0.25, 0.5, 0.75][attempt % 4];
        let mut pt: Vec<u64> = (0..n)
            .map(|_| if rng.gen_bool(zero_prob) { 0 } else { fp.random_nonzero(rng) })
            .collect();
        if !on.vanishes_mod(fp, &pt) {
            let k = rng.gen_range(0..n);
            if let Some(v) = solve_linear_in(on, fp, &pt, k) {
                pt[k] = v;
            } else {
                continue;
            }
            if !on.vanishes_mod(fp, &pt) {
                continue;
            }
        }
        if let Some(off) = off {
            if off.vanishes_mod(fp, &pt) {
                continue;
            }
        }
        return Some(FieldPoint::modular(fp.modulus(), pt));
    }
    None
}

/// Value of coordinate `k` making the first generator that does not vanish
/// vanish, when that generator is affine-linear in `a_k` at the point.
fn solve_linear_in(ideal: &Ideal, fp: Fp, pt: &[u64], k: usize) -> Option<u64> {
    for g in ideal.gens() {
        if g.eval_mod(fp, pt)? == 0 {
            continue;
        }
        let mut at = pt.to_vec();
        at[k] = 0;
        let c0 = g.eval_mod(fp, &at)?;
        at[k] = 1;
        let c1 = g.eval_mod(fp, &at)?;
        at[k] = 2;
        let c2 = g.eval_mod(fp, &at)?;
        // Linear iff the second difference vanishes (degree ≤ 1 in a_k is
        // then confirmed by the final vanishing check at the caller).
        let lin = fp.sub(c1, c0);
        if fp.sub(c2, c1) != lin || lin == 0 {
            return None;
        }
        return Some(fp.mul(fp.neg(c0), fp.inv(lin)));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> RatPoly {
        s.parse().unwrap()
    }

    fn ideal(gens: &[&str]) -> Ideal {
        Ideal::new(gens.iter().map(|s| p(s)))
    }

    #[test]
    fn containment_basis() {
        let gb = buchberger(&ideal(&["a1", "a1*a2"]), &GbLimits::default()).unwrap();
        assert_eq!(gb.polys(), &[p("a1")]);
    }

    #[test]
    fn principal_is_its_own_basis() {
        let gb = buchberger(&ideal(&["a1*a3*a5+a2*a4*a6"]), &GbLimits::default()).unwrap();
        assert_eq!(gb.polys(), &[p("a1*a3*a5+a2*a4*a6")]);
    }

    #[test]
    fn hand_elimination_example() {
        let i = ideal(&["a1^2-a2", "a2^2-a1"]);
        let gb = buchberger(&i, &GbLimits::default()).unwrap();
        // a1^4 - a1 = (a1^2 - a2)(a1^2 + a2) + (a2^2 - a1).
        assert!(gb.contains(&p("a1^4-a1")));
        assert!(!gb.contains(&p("a1")));
    }

    #[test]
    fn s_pairs_reduce_to_zero() {
        let i = ideal(&["a1^2*a2-a3", "a1*a2^2-a1", "a3^2-a2*a3+a1"]);
        let gb = buchberger(&i, &GbLimits::default()).unwrap();
        let polys: Vec<Poly<BigRational>> = gb.polys().iter().map(to_rational_poly).collect();
        let refs: Vec<&Poly<BigRational>> = polys.iter().collect();
        for a in 0..polys.len() {
            for b in a + 1..polys.len() {
                let s = spoly(&polys[a], &polys[b]);
                assert!(reduce(&s, &refs, &GbLimits::default()).unwrap().is_empty());
            }
        }
        for g in i.gens() {
            assert!(gb.contains(g));
        }
    }

    #[test]
    fn radical_membership_basics() {
        let lim = GbLimits::default();
        assert!(radical_member(&p("a1"), &ideal(&["a1^2"]), &lim).unwrap());
        assert!(!radical_member(&p("a2"), &ideal(&["a1"]), &lim).unwrap());
        assert!(radical_member(&p("a1*a2"), &ideal(&["a1^2", "a2^3"]), &lim).unwrap());
    }

    #[test]
    fn variety_comparisons() {
        let lim = GbLimits::default();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(
            varieties_equal(&ideal(&["a1"]), &ideal(&["a1^3"]), &lim, &mut rng).unwrap(),
            VarietyVerdict::EqualCertified
        );
        match varieties_equal(&ideal(&["a1*a2"]), &ideal(&["a1"]), &lim, &mut rng).unwrap() {
            VarietyVerdict::Different { witness: Some(FieldPoint::Modular { coords, .. }) } => {
                assert_ne!(coords[0], 0);
                assert_eq!(coords[1], 0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn modular_and_rational_agree() {
        let gens = rabinowitsch(&p("a1*a2"), &ideal(&["a1^2", "a2^2-a1*a2"]));
        let fp = Fp::new(DEFAULT_PRIMES[1]);
        assert_eq!(modular_is_unit(&gens, fp, &GbLimits::default()).unwrap(), Some(true));
    }
}
