//! Support varieties: the pointwise membership oracle, the symbolic
//! degeneracy-locus computation, randomized verification and classification.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::complex::{chat_from_table, ChatComplex, TotalComplex};
use crate::diagram::{class_label, components, diagram_from_table, grading_or_error, totalization};
use crate::error::{Error, Result};
use crate::field::{FieldPoint, Fp, DEFAULT_PRIMES};
use crate::groebner::{find_point_on_mod, radical_membership, variety_contained, Certainty, GbLimits, Ideal};
use crate::linalg::rank_sparse;
use crate::minors::{generic_rank, minors_ideal, MinorSettings};
use crate::monomial::{MonomialSeq, SubsetTable};
use crate::poly::{Exps, RatPoly};

/// Which complex decides membership.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    /// The 2-periodic complex on the full Taylor basis; works for every input.
    Chat,
    /// The weakly graded totalization; needs a gradable diagram.
    Totalization,
}

enum OracleKind {
    Chat(ChatComplex),
    Total(TotalComplex),
}

/// A prepared membership test for one `f`.
pub struct Oracle {
    n: usize,
    engine: Engine,
    kind: OracleKind,
}

impl Oracle {
    pub fn new(f: &MonomialSeq, engine: Engine) -> Result<Self> {
        let table = SubsetTable::new(f);
        let kind = match engine {
            Engine::Chat => OracleKind::Chat(chat_from_table(f.len(), &table)),
            Engine::Totalization => {
                let diag = diagram_from_table(&table);
                let grading = grading_or_error(&diag)?;
                OracleKind::Total(totalization(&table, &diag, &grading, None)?)
            }
        };
        Ok(Oracle { n: f.len(), engine, kind })
    }

    /// The totalization when the diagram is gradable, else the 2-periodic complex.
    pub fn best(f: &MonomialSeq) -> Self {
        Oracle::new(f, Engine::Totalization).or_else(|_| Oracle::new(f, Engine::Chat)).expect("chat oracle")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn engine(&self) -> Engine {
        self.engine
    }

    /// Size of the evaluated complex.
    pub fn dimension(&self) -> usize {
        1 << self.n
    }

    pub fn contains_mod(&self, fp: Fp, point: &[u64]) -> bool {
        if point.iter().all(|&x| x % fp.modulus() == 0) {
            return true;
        }
        match &self.kind {
            OracleKind::Chat(c) => c.homology_nonzero_mod(fp, point),
            OracleKind::Total(t) => t.homology_nonzero_mod(fp, point),
        }
    }

    pub fn contains(&self, pt: &FieldPoint) -> bool {
        if pt.is_zero() {
            return true;
        }
        match &self.kind {
            OracleKind::Chat(c) => c.homology_nonzero_at(pt),
            OracleKind::Total(t) => t.homology_nonzero_at(pt),
        }
    }
}

/// Whether `pt` lies in the support of `f`. The origin always does.
pub fn membership_oracle(f: &MonomialSeq, pt: &FieldPoint, engine: Engine) -> Result<bool> {
    if pt.len() != f.len() {
        return Err(Error::InvalidInput(format!("point has {} coordinates, expected {}", pt.len(), f.len())));
    }
    Ok(Oracle::new(f, engine)?.contains(pt))
}

/// An affine cone in `𝔸ⁿ`.
#[derive(Clone, Debug, PartialEq)]
pub enum VarietyKind {
    FullSpace,
    /// Only the origin: the projectivized support is empty.
    OriginOnly,
    /// `V(I_1) ∪ ... ∪ V(I_k)`, each containing the origin.
    Union(Vec<Ideal>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct VarietyDescription {
    pub n: usize,
    pub kind: VarietyKind,
}

impl VarietyDescription {
    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            VarietyKind::FullSpace => "full_space",
            VarietyKind::OriginOnly => "origin_only",
            VarietyKind::Union(_) => "union",
        }
    }

    pub fn components(&self) -> &[Ideal] {
        match &self.kind {
            VarietyKind::Union(c) => c,
            _ => &[],
        }
    }

    /// Membership of a point over `𝔽_p`.
    pub fn contains_mod(&self, fp: Fp, point: &[u64]) -> bool {
        match &self.kind {
            VarietyKind::FullSpace => true,
            VarietyKind::OriginOnly => point.iter().all(|&x| x % fp.modulus() == 0),
            VarietyKind::Union(c) => {
                point.iter().all(|&x| x % fp.modulus() == 0) || c.iter().any(|i| i.vanishes_mod(fp, point))
            }
        }
    }

    /// Renames `a_i` to `a_{map[i]}` (0-based indices).
    pub fn rename_vars(&self, map: &[usize]) -> Self {
        let kind = match &self.kind {
            VarietyKind::Union(c) => VarietyKind::Union(c.iter().map(|i| i.rename_vars(map)).collect()),
            k => k.clone(),
        };
        VarietyDescription { n: self.n, kind }
    }
}

impl fmt::Display for VarietyDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            VarietyKind::FullSpace => write!(f, "A^{}", self.n),
            VarietyKind::OriginOnly => write!(f, "{{0}}"),
            VarietyKind::Union(c) => {
                let parts: Vec<String> = c.iter().map(|i| format!("V{i}")).collect();
                write!(f, "{}", parts.join(" ∪ "))
            }
        }
    }
}

/// How far a symbolic result is certified.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "level", rename_all = "snake_case")]
pub enum Certification {
    /// Exhaustive minors and exact Gröbner comparisons.
    Certified,
    Randomized { reasons: Vec<String> },
}

/// A rank-drop locus of one differential.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DegeneracyLocus {
    pub degree: i32,
    pub generic_rank: usize,
    pub generators: Vec<String>,
    pub exhaustive: bool,
    pub minors_computed: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComponentReport {
    pub id: usize,
    pub classes: Vec<String>,
    pub dimension: usize,
    pub generic_ranks: BTreeMap<i32, usize>,
    /// Generic exactness fails, so the component's support is everything.
    pub full_space: bool,
    pub degeneracy: Vec<DegeneracyLocus>,
}

#[derive(Clone, Debug)]
pub struct SupportReport {
    pub variety: VarietyDescription,
    pub per_component: Vec<ComponentReport>,
    pub certification: Certification,
}

impl SupportReport {
    pub fn to_json(&self) -> serde_json::Value {
        let comps: Vec<serde_json::Value> = self
            .variety
            .components()
            .iter()
            .map(|i| json!({ "generators": i.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>() }))
            .collect();
        let ranks: Vec<serde_json::Value> = self
            .per_component
            .iter()
            .map(|c| json!({ "component": c.id, "ranks": c.generic_ranks }))
            .collect();
        json!({
            "n": self.variety.n,
            "kind": self.variety.kind_name(),
            "components": comps,
            "certification": self.certification,
            "generic_ranks": ranks,
            "per_component": self.per_component,
        })
    }
}

/// Settings for [`support_symbolic`].
#[derive(Clone, Debug)]
pub struct SupportSettings {
    /// Random evaluations per prime for generic ranks.
    pub rank_samples: usize,
    pub minors: MinorSettings,
    pub seed: u64,
    /// `Chat` treats the whole 2-periodic complex as one component, which
    /// also works when the diagram is not gradable.
    pub engine: Engine,
}

impl Default for SupportSettings {
    fn default() -> Self {
        SupportSettings { rank_samples: 3, minors: MinorSettings::default(), seed: 0, engine: Engine::Totalization }
    }
}

struct Certifier(Vec<String>);

impl Certifier {
    fn note(&mut self, c: &Certainty, what: &str) {
        if let Certainty::Modular { primes } = c {
            self.0.push(format!("{what}: modular Gröbner bases over {primes:?}"));
        }
    }
}

/// The support of `f` as a union of degeneracy loci over the components of
/// the totalization.
pub fn support_symbolic(f: &MonomialSeq, settings: &SupportSettings) -> Result<SupportReport> {
    let table = SubsetTable::new(f);
    let pieces: Vec<(Vec<String>, TotalComplex)> = match settings.engine {
        Engine::Totalization => {
            let diag = diagram_from_table(&table);
            let grading = grading_or_error(&diag)?;
            components(&diag)
                .into_iter()
                .map(|comp| {
                    let tc = totalization(&table, &diag, &grading, Some(&comp))?;
                    Ok((comp.iter().map(|&c| class_label(c)).collect(), tc))
                })
                .collect::<Result<_>>()?
        }
        Engine::Chat => {
            // Even part in degree 0; homology there is rank(d_0) + rank(d_1) < 2^{n-1}.
            let chat = chat_from_table(f.len(), &table);
            let tc = TotalComplex {
                n: f.len(),
                pieces: BTreeMap::from([(0, chat.even_to_odd.col_basis.clone())]),
                diffs: BTreeMap::from([(0, chat.even_to_odd), (1, chat.odd_to_even)]),
            };
            vec![(vec!["even".to_string(), "odd".to_string()], tc)]
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let mut cert = Certifier(Vec::new());
    let mut per_component = Vec::new();
    let mut raw: Vec<Ideal> = Vec::new();
    let mut full = false;
    for (id, (classes, tc)) in pieces.into_iter().enumerate() {
        let generic_ranks: BTreeMap<i32, usize> =
            tc.diffs.iter().map(|(&d, m)| (d, generic_rank(m, settings.rank_samples, &mut rng))).collect();
        let inexact = !tc.homology_degrees(&generic_ranks).is_empty();
        let mut degeneracy = Vec::new();
        if inexact {
            full = true;
        } else {
            for (&d, m) in &tc.diffs {
                let r = generic_ranks[&d];
                if r == 0 {
                    continue;
                }
                let out = minors_ideal(m, r, &settings.minors, &mut rng)?;
                if !out.exhaustive {
                    cert.0.push(format!("component {id}, degree {d}: sampled minors"));
                }
                degeneracy.push(DegeneracyLocus {
                    degree: d,
                    generic_rank: r,
                    generators: out.ideal.gens().iter().map(|g| g.to_string()).collect(),
                    exhaustive: out.exhaustive,
                    minors_computed: out.computed,
                });
                if !out.ideal.has_unit() {
                    raw.push(out.ideal);
                }
            }
        }
        per_component.push(ComponentReport {
            id,
            dimension: tc.dimension(),
            classes,
            generic_ranks,
            full_space: inexact,
            degeneracy,
        });
    }
    let n = f.len();
    let kind = if full || raw.iter().any(Ideal::is_empty) {
        VarietyKind::FullSpace
    } else {
        let mut parts = Vec::new();
        for i in &raw {
            for s in simplify_ideal(i, &settings.minors.limits, &mut cert)? {
                if !s.has_unit() && !origin_only(&s, n, &settings.minors.limits, &mut cert)? {
                    parts.push(s);
                }
            }
        }
        let parts = drop_redundant(parts, &settings.minors.limits, &mut cert)?;
        if parts.is_empty() {
            VarietyKind::OriginOnly
        } else {
            VarietyKind::Union(parts)
        }
    };
    let certification = if cert.0.is_empty() {
        Certification::Certified
    } else {
        Certification::Randomized { reasons: cert.0 }
    };
    Ok(SupportReport { variety: VarietyDescription { n, kind }, per_component, certification })
}

/// A small generating set with the same radical, split along a common
/// factor: `V(g·J) = V(g) ∪ V(J)`.
fn simplify_ideal(i: &Ideal, limits: &GbLimits, cert: &mut Certifier) -> Result<Vec<Ideal>> {
    let gens: Vec<RatPoly> = i.gens().iter().map(RatPoly::squarefree_part).collect();
    if gens.iter().any(RatPoly::is_constant) {
        return Ok(vec![Ideal::unit()]);
    }
    let common = gens.iter().fold(RatPoly::zero(), |g, h| g.gcd(h));
    if !common.is_constant() {
        let rest = Ideal::new(gens.iter().map(|g| g.div_exact(&common).expect("gcd divides")));
        let mut out = vec![Ideal::new([common.squarefree_part()])];
        out.extend(simplify_ideal(&rest, limits, cert)?);
        return Ok(out);
    }
    let mut gens = gens;
    gens.sort_by_key(|g| (g.total_degree(), g.terms().len(), g.to_string()));
    gens.dedup();
    let mut kept: Vec<RatPoly> = Vec::new();
    for g in gens {
        if !kept.is_empty() {
            let (m, c) = radical_membership(&g, &Ideal::new(kept.iter().cloned()), limits)?;
            cert.note(&c, "generator reduction");
            if m {
                continue;
            }
        }
        kept.push(g);
    }
    let mut k = kept.len();
    while k > 0 {
        k -= 1;
        if kept.len() == 1 {
            break;
        }
        let others: Vec<RatPoly> = kept.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, g)| g.clone()).collect();
        let (m, c) = radical_membership(&kept[k], &Ideal::new(others), limits)?;
        cert.note(&c, "generator reduction");
        if m {
            kept.remove(k);
        }
    }
    Ok(vec![Ideal::new(kept)])
}

/// `V(I) ⊆ {0}`.
fn origin_only(i: &Ideal, n: usize, limits: &GbLimits, cert: &mut Certifier) -> Result<bool> {
    for v in 0..n {
        let (m, c) = radical_membership(&RatPoly::var(v), i, limits)?;
        cert.note(&c, "origin test");
        if !m {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Removes components contained in another component.
fn drop_redundant(parts: Vec<Ideal>, limits: &GbLimits, cert: &mut Certifier) -> Result<Vec<Ideal>> {
    let mut keep = vec![true; parts.len()];
    for i in 0..parts.len() {
        for j in 0..parts.len() {
            if i == j || !keep[j] || !keep[i] {
                continue;
            }
            let (inside, c) = variety_contained(&parts[i], &parts[j], limits)?;
            cert.note(&c, "component containment");
            if inside {
                keep[i] = false;
            }
        }
    }
    let mut out: Vec<Ideal> = parts.into_iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| p).collect();
    out.sort_by_key(|i| i.to_string());
    Ok(out)
}

/// Coarse shape of a support variety.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "class", content = "description")]
pub enum SupportClass {
    LinearSubspace,
    UnionTwoHyperplanes,
    /// `V(a_1a_3a_5 + a_2a_4a_6)` up to renaming the variables.
    Sextic135246,
    FullSpace,
    OriginOnly,
    Other(String),
}

impl fmt::Display for SupportClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SupportClass::Other(d) => write!(f, "Other({d})"),
            c => write!(f, "{c:?}"),
        }
    }
}

fn is_linear_form(g: &RatPoly) -> bool {
    !g.is_zero() && g.is_homogeneous() && g.total_degree() == 1
}

/// Rank of the symmetric matrix of a quadratic form, or `None` if `g` is not one.
fn quadric_rank(g: &RatPoly) -> Option<usize> {
    if !g.is_homogeneous() || g.total_degree() != 2 {
        return None;
    }
    let n = g.used_vars();
    let mut m = vec![vec![BigRational::zero(); n]; n];
    let two = BigRational::from_integer(2.into());
    for (e, c) in g.terms() {
        let vars: Vec<usize> = (0..n).filter(|&i| e.get(i) > 0).collect();
        match vars.as_slice() {
            [i] => m[*i][*i] = c.clone(),
            [i, j] => {
                m[*i][*j] = c / &two;
                m[*j][*i] = c / &two;
            }
            _ => return None,
        }
    }
    let rows = m.into_iter().map(|r| r.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()).collect();
    Some(rank_sparse(rows, n))
}

/// `c·(a_S + ε a_T)` with `S`, `T` disjoint triples and `ε = ±1`.
fn is_sextic_binomial(g: &RatPoly) -> bool {
    let [(e1, c1), (e2, c2)] = g.terms() else { return false };
    let squarefree_cubic = |e: &Exps| e.degree() == 3 && (0..crate::poly::MAX_POLY_VARS).all(|i| e.get(i) <= 1);
    squarefree_cubic(e1) && squarefree_cubic(e2) && e1.support() & e2.support() == 0 && c1.abs() == c2.abs()
}

pub fn classify(v: &VarietyDescription) -> SupportClass {
    let comps = match &v.kind {
        VarietyKind::FullSpace => return SupportClass::FullSpace,
        VarietyKind::OriginOnly => return SupportClass::OriginOnly,
        VarietyKind::Union(c) => c,
    };
    match comps.as_slice() {
        [i] if i.gens().iter().all(is_linear_form) => SupportClass::LinearSubspace,
        [i] if i.len() == 1 && quadric_rank(&i.gens()[0]) == Some(2) => SupportClass::UnionTwoHyperplanes,
        [i] if i.len() == 1 && is_sextic_binomial(&i.gens()[0]) => SupportClass::Sextic135246,
        [a, b] if a.len() == 1 && b.len() == 1 && is_linear_form(&a.gens()[0]) && is_linear_form(&b.gens()[0]) => {
            SupportClass::UnionTwoHyperplanes
        }
        _ => SupportClass::Other(v.to_string()),
    }
}

/// Agreement counts over one prime.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PrimeStats {
    pub p: u64,
    /// Points sampled on `V(candidate)`; all must be in the support.
    pub on_candidate: usize,
    pub on_candidate_agree: usize,
    /// Uniform points; support membership must match candidate vanishing.
    pub uniform: usize,
    pub uniform_agree: usize,
    /// Failed attempts to find a point on the candidate.
    pub sampling_misses: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Witness {
    pub point: FieldPoint,
    pub in_support: bool,
    pub on_candidate: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub candidate: Vec<String>,
    pub engine: Engine,
    pub stats: Vec<PrimeStats>,
    pub agree: bool,
    pub witness: Option<Witness>,
    /// `log2` of the bound on the probability that a support missing part
    /// of the candidate, or equal to the whole space, passed every sample.
    pub failure_log2: f64,
}

/// Settings for [`support_verify`].
#[derive(Clone, Debug)]
pub struct VerifySettings {
    pub samples: usize,
    pub primes: Vec<u64>,
    pub seed: u64,
}

impl Default for VerifySettings {
    fn default() -> Self {
        VerifySettings { samples: 200, primes: DEFAULT_PRIMES.to_vec(), seed: 0 }
    }
}

/// Two-sided randomized comparison of the support with `V(candidate)`.
///
/// A point of the candidate outside the support survives a random sample
/// with probability at most `D/p`, `D` bounding the degree of the minors
/// involved; the bound is accumulated over all samples at primes `p > D`.
pub fn support_verify(oracle: &Oracle, candidate: &Ideal, settings: &VerifySettings) -> Result<VerifyReport> {
    let n = oracle.n();
    if candidate.used_vars() > n {
        return Err(Error::InvalidInput(format!("candidate uses more than {n} parameters")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let degree_bound = candidate.gens().iter().map(|g| g.total_degree() as usize).max().unwrap_or(0).max(oracle.dimension());
    let mut stats = Vec::new();
    let mut witness = None;
    let mut failure_log2 = 0.0;
    'primes: for &p in &settings.primes {
        let fp = Fp::new(p);
        let mut s = PrimeStats { p, on_candidate: 0, on_candidate_agree: 0, uniform: 0, uniform_agree: 0, sampling_misses: 0 };
        let per_sample = (degree_bound as f64 / p as f64).log2().min(0.0);
        while s.on_candidate < settings.samples {
            let Some(FieldPoint::Modular { coords, .. }) = find_point_on_mod(candidate, None, n, fp, &mut rng) else {
                s.sampling_misses += 1;
                if s.sampling_misses > settings.samples.max(100) {
                    log::warn!("could not sample points on the candidate over F_{p}");
                    break;
                }
                continue;
            };
            s.on_candidate += 1;
            if oracle.contains_mod(fp, &coords) {
                s.on_candidate_agree += 1;
                failure_log2 += per_sample;
            } else {
                witness = Some(Witness { point: FieldPoint::modular(p, coords), in_support: false, on_candidate: true });
                stats.push(s);
                break 'primes;
            }
        }
        while s.uniform < settings.samples {
            let coords: Vec<u64> = (0..n).map(|_| fp.random(&mut rng)).collect();
            if coords.iter().all(|&x| x == 0) {
                continue;
            }
            s.uniform += 1;
            let want = candidate.vanishes_mod(fp, &coords);
            let got = oracle.contains_mod(fp, &coords);
            if want == got {
                s.uniform_agree += 1;
            } else {
                witness = Some(Witness { point: FieldPoint::modular(p, coords), in_support: got, on_candidate: want });
                stats.push(s);
                break 'primes;
            }
        }
        stats.push(s);
    }
    Ok(VerifyReport {
        candidate: candidate.gens().iter().map(|g| g.to_string()).collect(),
        engine: oracle.engine(),
        stats,
        agree: witness.is_none(),
        witness,
        failure_log2,
    })
}

/// `a_1 a_3 ⋯ a_{n-1} + a_2 a_4 ⋯ a_n` for even `n`.
pub fn alternating_binomial(n: usize) -> RatPoly {
    let odd: Vec<u16> = (0..n).map(|i| u16::from(i % 2 == 0)).collect();
    let even: Vec<u16> = (0..n).map(|i| u16::from(i % 2 == 1)).collect();
    let one = BigRational::from_integer(1.into());
    RatPoly::monomial(Exps::from_slice(&odd), one.clone()).add(&RatPoly::monomial(Exps::from_slice(&even), one))
}

/// Random point of `𝔽_p^n`.
pub fn random_point<R: Rng>(fp: Fp, n: usize, rng: &mut R) -> Vec<u64> {
    (0..n).map(|_| fp.random(rng)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> MonomialSeq {
        s.parse().unwrap()
    }

    fn p(s: &str) -> RatPoly {
        s.parse().unwrap()
    }

    #[test]
    fn six_cycle_membership() {
        let f = MonomialSeq::edge_cycle(6).unwrap();
        for engine in [Engine::Chat, Engine::Totalization] {
            assert!(membership_oracle(&f, &FieldPoint::rational_from_ints(&[1, 1, 1, 1, 1, -1]), engine).unwrap());
            assert!(!membership_oracle(&f, &FieldPoint::rational_from_ints(&[1; 6]), engine).unwrap());
            assert!(membership_oracle(&f, &FieldPoint::rational_from_ints(&[0; 6]), engine).unwrap());
            assert!(membership_oracle(&f, &FieldPoint::modular_from_ints(2, &[1; 6]), engine).unwrap());
        }
    }

    #[test]
    fn six_cycle_symbolic() {
        let f = MonomialSeq::edge_cycle(6).unwrap();
        let r = support_symbolic(&f, &SupportSettings::default()).unwrap();
        assert_eq!(r.variety.components().len(), 1, "{}", r.variety);
        assert_eq!(r.variety.components()[0].gens(), &[p("a1*a3*a5+a2*a4*a6")]);
        assert_eq!(r.certification, Certification::Certified);
        assert_eq!(classify(&r.variety), SupportClass::Sextic135246);
        let chat = SupportSettings { engine: Engine::Chat, ..SupportSettings::default() };
        let r2 = support_symbolic(&f, &chat).unwrap();
        assert_eq!(r2.variety, r.variety);
    }

    #[test]
    fn regular_sequence_is_origin_only() {
        let r = support_symbolic(&seq("x1^2,x2^2"), &SupportSettings::default()).unwrap();
        assert_eq!(r.variety.kind, VarietyKind::OriginOnly);
        let r = support_symbolic(&seq("x1*x2,x3*x4,x5^2"), &SupportSettings::default()).unwrap();
        assert_eq!(classify(&r.variety), SupportClass::OriginOnly);
    }

    #[test]
    fn non_gradable_is_rejected() {
        let err = support_symbolic(&seq("x1*x2,x3*x4,x5*x6,x1*x3*x5,x2*x4*x6"), &SupportSettings::default());
        assert!(matches!(err, Err(Error::NotGradable(_))));
        let chat = SupportSettings { engine: Engine::Chat, ..SupportSettings::default() };
        let r = support_symbolic(&seq("x1*x2,x3*x4,x5*x6,x1*x3*x5,x2*x4*x6"), &chat).unwrap();
        let class = classify(&r.variety);
        assert!(
            matches!(class, SupportClass::LinearSubspace | SupportClass::UnionTwoHyperplanes | SupportClass::FullSpace | SupportClass::OriginOnly),
            "{} -> {class}",
            r.variety
        );
    }

    #[test]
    fn classification_examples() {
        let v = |gens: &[&[&str]]| VarietyDescription {
            n: 6,
            kind: VarietyKind::Union(gens.iter().map(|g| Ideal::new(g.iter().map(|s| p(s)))).collect()),
        };
        assert_eq!(classify(&v(&[&["a1", "a2"]])), SupportClass::LinearSubspace);
        assert_eq!(classify(&v(&[&["a1*a5"]])), SupportClass::UnionTwoHyperplanes);
        assert_eq!(classify(&v(&[&["a1"], &["a5"]])), SupportClass::UnionTwoHyperplanes);
        assert_eq!(classify(&v(&[&["a2*a4*a6+a1*a3*a5"]])), SupportClass::Sextic135246);
        assert_eq!(classify(&v(&[&["a1*a2*a3+a4*a5*a6"]])), SupportClass::Sextic135246);
        assert!(matches!(classify(&v(&[&["a1*a2+a3*a4"]])), SupportClass::Other(_)));
        assert!(matches!(classify(&v(&[&["a1^2"]])), SupportClass::Other(_)));
    }

    #[test]
    fn verify_finds_witness_for_wrong_candidate() {
        let oracle = Oracle::best(&MonomialSeq::edge_cycle(6).unwrap());
        let settings = VerifySettings { samples: 50, ..VerifySettings::default() };
        let bad = support_verify(&oracle, &Ideal::new([p("a1")]), &settings).unwrap();
        assert!(!bad.agree && bad.witness.is_some());
        let good = support_verify(&oracle, &Ideal::new([alternating_binomial(6)]), &settings).unwrap();
        assert!(good.agree, "{good:?}");
        assert!(good.failure_log2 < -40.0);
    }
}
