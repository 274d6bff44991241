//! Six-generator enumeration: GCD graphs, clique cones, candidate ideals and
//! the classification of their supports.
//!
//! A homogeneous monomial ideal on six generators is modelled by assigning one
//! variable to each clique of its GCD graph. Generator `i` is the product of the
//! variables of the cliques containing `i`, so the support only depends on which
//! cliques are used. Equal degrees cut out a rational cone whose extreme rays,
//! and their subset sums, give every support pattern up to the weights.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;
use std::sync::{Mutex, OnceLock};

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialSeq};
use crate::support::{classify, support_symbolic, Engine, SupportClass, SupportSettings};

pub const VERTICES: usize = 6;
const NPAIRS: usize = 15;
const ALL: u8 = 0b11_1111;

/// Number of isomorphism classes of graphs on six vertices.
pub const GRAPH_CLASSES: usize = 156;

/// Default cap on the number of support patterns collected per graph.
pub const DEFAULT_CLOSURE_CAP: usize = 2_000_000;

fn pair_index(u: usize, v: usize) -> usize {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    a * (11 - a) / 2 + (b - a - 1)
}

// Pair k occupies bit 14 - k, so numeric order is lexicographic order of the
// upper-triangle adjacency string.
fn pair_bit(u: usize, v: usize) -> u16 {
    1 << (NPAIRS - 1 - pair_index(u, v))
}

fn pairs() -> impl Iterator<Item = (usize, usize)> {
    (0..VERTICES).flat_map(|u| (u + 1..VERTICES).map(move |v| (u, v)))
}

struct Perm {
    map: [usize; VERTICES],
    /// Image of each vertex subset.
    subsets: [u8; 64],
    /// `pairs[k]` is the bit that pair bit `k` moves to.
    pairs: [u16; NPAIRS],
}

fn permutations() -> &'static [Perm] {
    static PERMS: OnceLock<Vec<Perm>> = OnceLock::new();
    PERMS.get_or_init(|| {
        let mut maps = Vec::with_capacity(720);
        let mut p = [0, 1, 2, 3, 4, 5];
        fn rec(k: usize, p: &mut [usize; VERTICES], out: &mut Vec<[usize; VERTICES]>) {
            if k == VERTICES {
                out.push(*p);
                return;
            }
            for i in k..VERTICES {
                p.swap(k, i);
                rec(k + 1, p, out);
                p.swap(k, i);
            }
        }
        rec(0, &mut p, &mut maps);
        maps.sort();
        maps.into_iter()
            .map(|map| {
                let mut pairs = [0u16; NPAIRS];
                for (u, v) in self::pairs() {
                    pairs[NPAIRS - 1 - pair_index(u, v)] = pair_bit(map[u], map[v]);
                }
                let mut subsets = [0u8; 64];
                for (j, t) in subsets.iter_mut().enumerate() {
                    *t = permute_mask(j as u8, &map);
                }
                Perm { map, pairs, subsets }
            })
            .collect()
    })
}

fn permute_mask(mask: u8, perm: &[usize; VERTICES]) -> u8 {
    (0..VERTICES).filter(|&v| mask >> v & 1 == 1).fold(0, |m, v| m | 1 << perm[v])
}

fn mask_label(mask: u8) -> String {
    let body: Vec<String> = (0..VERTICES).filter(|&v| mask >> v & 1 == 1).map(|v| (v + 1).to_string()).collect();
    format!("{{{}}}", body.join(","))
}

/// A simple graph on the six generator indices (0-based internally).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GcdGraph {
    code: u16,
}

impl GcdGraph {
    pub fn empty() -> Self {
        GcdGraph { code: 0 }
    }

    pub fn complete() -> Self {
        GcdGraph { code: (1 << NPAIRS) - 1 }
    }

    /// Edges as 0-based vertex pairs.
    pub fn from_edges(edges: &[(usize, usize)]) -> Self {
        let code = edges.iter().fold(0, |c, &(u, v)| {
            assert!(u != v && u < VERTICES && v < VERTICES, "bad edge ({u},{v})");
            c | pair_bit(u, v)
        });
        GcdGraph { code }
    }

    pub fn cycle() -> Self {
        Self::from_edges(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)])
    }

    /// The GCD graph of a generating sequence: `i ~ j` when `f_i` and `f_j` share a variable.
    pub fn of_seq(f: &MonomialSeq) -> Result<Self> {
        if f.len() != VERTICES {
            return Err(Error::InvalidInput(format!("expected {VERTICES} generators, got {}", f.len())));
        }
        let edges: Vec<_> = pairs().filter(|&(u, v)| !f.gens()[u].is_coprime(&f.gens()[v])).collect();
        Ok(Self::from_edges(&edges))
    }

    pub fn adjacent(self, u: usize, v: usize) -> bool {
        u != v && self.code & pair_bit(u, v) != 0
    }

    pub fn neighbors(self, u: usize) -> u8 {
        (0..VERTICES).filter(|&v| self.adjacent(u, v)).fold(0, |m, v| m | 1 << v)
    }

    pub fn edges(self) -> Vec<(usize, usize)> {
        pairs().filter(|&(u, v)| self.adjacent(u, v)).collect()
    }

    pub fn edge_count(self) -> usize {
        self.code.count_ones() as usize
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(self, perm: &[usize; VERTICES]) -> Self {
        let edges: Vec<_> = self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
        Self::from_edges(&edges)
    }

    /// Lexicographically smallest adjacency string over all relabelings.
    pub fn canonical(self) -> Self {
        permutations()
            .iter()
            .map(|p| {
                let code = (0..NPAIRS).filter(|&k| self.code >> k & 1 == 1).fold(0, |c, k| c | p.pairs[k]);
                GcdGraph { code }
            })
            .min()
            .expect("nonempty")
    }

    /// Upper-triangle adjacency string in the order 12,13,...,16,23,...,56.
    pub fn adjacency_string(self) -> String {
        (0..NPAIRS).map(|k| if self.code >> (NPAIRS - 1 - k) & 1 == 1 { '1' } else { '0' }).collect()
    }

    /// Accepts a 15-character adjacency string or a 1-based edge list such as `12,23,34`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.len() == NPAIRS && s.chars().all(|c| c == '0' || c == '1') {
            let code = s.chars().fold(0u16, |c, ch| c << 1 | u16::from(ch == '1'));
            return Ok(GcdGraph { code });
        }
        let mut edges = Vec::new();
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let digits: Vec<usize> = tok
                .chars()
                .filter(|c| *c != '-')
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::InvalidInput(format!("bad edge `{tok}`")))?;
            match digits.as_slice() {
                [u, v] if (1..=VERTICES).contains(u) && (1..=VERTICES).contains(v) && u != v => {
                    edges.push((u - 1, v - 1))
                }
                _ => return Err(Error::InvalidInput(format!("bad edge `{tok}`"))),
            }
        }
        Ok(Self::from_edges(&edges))
    }

    pub fn is_clique(self, mask: u8) -> bool {
        let vs: Vec<usize> = (0..VERTICES).filter(|&v| mask >> v & 1 == 1).collect();
        vs.iter().enumerate().all(|(k, &u)| vs[k + 1..].iter().all(|&v| self.adjacent(u, v)))
    }

    /// All nonempty cliques, singletons included, ordered by size then mask.
    pub fn cliques(self) -> Vec<u8> {
        let mut out: Vec<u8> = (1..=ALL).filter(|&m| self.is_clique(m)).collect();
        out.sort_by_key(|&m| (m.count_ones(), m));
        out
    }
}

impl std::fmt::Display for GcdGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let e: Vec<String> = self.edges().iter().map(|(u, v)| format!("{}{}", u + 1, v + 1)).collect();
        write!(f, "[{}]", e.join(","))
    }
}

/// Canonical representatives of every graph on six vertices.
pub fn all_graph_classes() -> Vec<GcdGraph> {
    let mut seen = std::collections::BTreeSet::new();
    for code in 0..1u16 << NPAIRS {
        seen.insert(GcdGraph { code }.canonical());
    }
    seen.into_iter().collect()
}

/// Isomorphism classes that survive [`lemma612_filter`].
pub fn enumerate_graphs() -> Vec<GcdGraph> {
    all_graph_classes().into_iter().filter(|&g| !lemma612_filter(g)).collect()
}

/// True when the graph forces full support: some vertex is adjacent to all
/// others, or some edge has every other vertex adjacent to exactly one endpoint.
pub fn lemma612_filter(g: GcdGraph) -> bool {
    let dominating = (0..VERTICES).any(|v| g.neighbors(v) == ALL & !(1 << v));
    let splitting = g.edges().into_iter().any(|(u, v)| {
        (0..VERTICES).filter(|&w| w != u && w != v).all(|w| g.adjacent(w, u) != g.adjacent(w, v))
    });
    dominating || splitting
}

/// Edges whose endpoints together see every vertex.
pub fn dense_edges(g: GcdGraph) -> Vec<(usize, usize)> {
    g.edges()
        .into_iter()
        .filter(|&(u, v)| (0..VERTICES).all(|w| w == u || w == v || g.adjacent(w, u) || g.adjacent(w, v)))
        .collect()
}

/// The full-support predicates on sets of active cliques, precomputed per graph.
#[derive(Clone, Debug)]
pub struct SupportFilter {
    /// (dense edge, common neighbours of its endpoints)
    covers: Vec<(u8, u8)>,
    /// Vertex sets of two dense edges at a common vertex with non-adjacent far ends.
    forks: Vec<u8>,
}

impl SupportFilter {
    pub fn new(g: GcdGraph) -> Self {
        let dense = dense_edges(g);
        let covers = dense.iter().map(|&(u, v)| (1 << u | 1 << v, g.neighbors(u) & g.neighbors(v))).collect();
        let mut forks = Vec::new();
        for (k, &(a, b)) in dense.iter().enumerate() {
            for &(c, d) in &dense[k + 1..] {
                let shared = [a, b].into_iter().find(|x| *x == c || *x == d);
                if let Some(s) = shared {
                    let x = if a == s { b } else { a };
                    let y = if c == s { d } else { c };
                    if !g.adjacent(x, y) {
                        forks.push(1 << s | 1 << x | 1 << y);
                    }
                }
            }
        }
        SupportFilter { covers, forks }
    }

    pub fn forbids<I: IntoIterator<Item = u8>>(&self, active: I) -> bool {
        self.forbids_data(&LcmData::of(self, active))
    }

    /// Clause (a) reads `w ∈ cover(u,v)` as `f_w ∤ lcm(f_u, f_v)`.
    pub fn forbids_data(&self, d: &LcmData) -> bool {
        d.fork
            || self.covers.iter().any(|&(edge, common)| {
                (0..VERTICES).filter(|&w| common >> w & 1 == 1).all(|w| d.div[w] >> edge & 1 == 0)
            })
    }
}

/// For each generator `i` and subset `J` (bit `J` of the words below), whether
/// `f_i` divides `f_J` and whether the two are coprime, plus the fork flag of
/// [`SupportFilter`]. This is all the support depends on, and the data of a
/// union of clique sets is the meet (AND, AND, OR) of the parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LcmData {
    pub div: [u64; VERTICES],
    pub cop: [u64; VERTICES],
    pub fork: bool,
}

impl LcmData {
    /// Data of the empty clique set.
    pub fn top() -> Self {
        LcmData { div: [u64::MAX; VERTICES], cop: [u64::MAX; VERTICES], fork: false }
    }

    pub fn clique(filter: &SupportFilter, c: u8) -> Self {
        let mut d = Self::top();
        for i in (0..VERTICES).filter(|&i| c >> i & 1 == 1) {
            let meets: u64 = (0..64u64).filter(|&j| j as u8 & c != 0).fold(0, |m, j| m | 1 << j);
            d.div[i] = meets;
            d.cop[i] = !meets;
        }
        d.fork = c.count_ones() >= 2 && filter.forks.iter().any(|&f| c & f == 0);
        d
    }

    pub fn of<I: IntoIterator<Item = u8>>(filter: &SupportFilter, active: I) -> Self {
        active.into_iter().fold(Self::top(), |d, c| d.meet(&Self::clique(filter, c)))
    }

    pub fn meet(&self, o: &Self) -> Self {
        let mut d = *self;
        for i in 0..VERTICES {
            d.div[i] &= o.div[i];
            d.cop[i] &= o.cop[i];
        }
        d.fork |= o.fork;
        d
    }

    /// `f_i | f_j` for some `i ≠ j` (1-based pair).
    pub fn non_minimal(&self) -> Option<(usize, usize)> {
        (0..VERTICES)
            .flat_map(|i| (0..VERTICES).map(move |j| (i, j)))
            .find(|&(i, j)| i != j && self.div[i] >> (1u64 << j) & 1 == 1)
            .map(|(i, j)| (i + 1, j + 1))
    }

    /// The GCD graph realized by the data.
    pub fn graph(&self) -> GcdGraph {
        let edges: Vec<_> = pairs().filter(|&(u, v)| self.cop[u] >> (1u64 << v) & 1 == 0).collect();
        GcdGraph::from_edges(&edges)
    }

    fn permuted(&self, perm: &Perm) -> Self {
        let mut d = LcmData { div: [0; VERTICES], cop: [0; VERTICES], fork: self.fork };
        for i in 0..VERTICES {
            let (mut a, mut b) = (0u64, 0u64);
            for (j, &pj) in perm.subsets.iter().enumerate() {
                a |= (self.div[i] >> j & 1) << pj;
                b |= (self.cop[i] >> j & 1) << pj;
            }
            d.div[perm.map[i]] = a;
            d.cop[perm.map[i]] = b;
        }
        d
    }
}

/// True when an ideal using exactly these cliques is known to have full support.
pub fn forbidden_support(g: GcdGraph, active: &[u8]) -> bool {
    SupportFilter::new(g).forbids(active.iter().copied())
}

/// Cliques that make every support containing them forbidden. The predicate is
/// monotone in the active set, so dropping them loses no candidate.
pub fn pruned_cliques(g: GcdGraph) -> Vec<u8> {
    let filter = SupportFilter::new(g);
    g.cliques().into_iter().filter(|&c| !filter.forbids([c])).collect()
}

/// `{x ≥ 0 : (Mx)_1 = (Mx)_i}` where column `c` of `M` is the indicator of clique `c`.
#[derive(Clone, Debug)]
pub struct CliqueCone {
    pub graph: GcdGraph,
    pub cliques: Vec<u8>,
    pub equations: Vec<Vec<i64>>,
}

impl CliqueCone {
    pub fn dim(&self) -> usize {
        self.cliques.len()
    }

    pub fn satisfies(&self, x: &[u64]) -> bool {
        self.equations.iter().all(|row| row.iter().zip(x).map(|(a, b)| a * *b as i64).sum::<i64>() == 0)
    }

    /// Common generator degree `(Mx)_1`.
    pub fn degree(&self, x: &[u64]) -> u64 {
        self.cliques.iter().zip(x).filter(|(c, _)| *c & 1 != 0).map(|(_, w)| w).sum()
    }
}

pub fn build_cone(g: GcdGraph) -> CliqueCone {
    build_cone_on(g, g.cliques())
}

pub fn build_cone_on(g: GcdGraph, cliques: Vec<u8>) -> CliqueCone {
    let ind = |c: u8, i: usize| i64::from(c >> i & 1);
    let equations = (1..VERTICES).map(|i| cliques.iter().map(|&c| ind(c, i) - ind(c, 0)).collect()).collect();
    CliqueCone { graph: g, cliques, equations }
}

fn primitive(v: Vec<i128>) -> Vec<i128> {
    let g = v.iter().fold(0i128, |g, x| g.gcd(x));
    if g <= 1 {
        v
    } else {
        v.into_iter().map(|x| x / g).collect()
    }
}

fn zero_set(v: &[i128]) -> u64 {
    v.iter().enumerate().filter(|(_, x)| **x == 0).fold(0, |m, (i, _)| m | 1 << i)
}

/// Extreme rays of `{x ≥ 0, Ax = 0}` by double description, as sorted
/// primitive integer vectors.
pub fn extreme_rays(cone: &CliqueCone) -> Result<Vec<Vec<u64>>> {
    extreme_rays_of(cone.dim(), &cone.equations)
}

pub fn extreme_rays_of(k: usize, equations: &[Vec<i64>]) -> Result<Vec<Vec<u64>>> {
    if k > 64 {
        return Err(Error::ResourceCap(format!("{k} coordinates exceed the 64-bit zero-set encoding")));
    }
    let overflow = || Error::ResourceCap("double description overflowed 128-bit integers".into());
    let mut rays: Vec<Vec<i128>> = (0..k).map(|i| (0..k).map(|j| i128::from(i == j)).collect()).collect();
    for row in equations {
        let vals: Vec<i128> = rays
            .iter()
            .map(|r| r.iter().zip(row).map(|(x, a)| x * i128::from(*a)).sum())
            .collect();
        let zs: Vec<u64> = rays.iter().map(|r| zero_set(r)).collect();
        let mut next: Vec<Vec<i128>> =
            rays.iter().zip(&vals).filter(|(_, v)| **v == 0).map(|(r, _)| r.clone()).collect();
        for p in (0..rays.len()).filter(|&i| vals[i] > 0) {
            for q in (0..rays.len()).filter(|&i| vals[i] < 0) {
                let common = zs[p] & zs[q];
                let adjacent = (0..rays.len()).all(|r| r == p || r == q || zs[r] & common != common);
                if !adjacent {
                    continue;
                }
                let combo = rays[q]
                    .iter()
                    .zip(&rays[p])
                    .map(|(a, b)| {
                        vals[p].checked_mul(*a)?.checked_sub(vals[q].checked_mul(*b)?)
                    })
                    .collect::<Option<Vec<i128>>>()
                    .ok_or_else(overflow)?;
                next.push(primitive(combo));
            }
        }
        next.sort();
        next.dedup();
        rays = next;
    }
    rays.into_iter()
        .map(|r| r.into_iter().map(|x| u64::try_from(x).map_err(|_| overflow())).collect())
        .collect::<Result<Vec<_>>>()
        .map(|mut v| {
            v.sort();
            v
        })
}

/// Small-instance oracle: a support `S` carries an extreme ray exactly when the
/// columns in `S` have a one-dimensional kernel spanned by a vector with no zero entry.
pub fn extreme_rays_brute_force(k: usize, equations: &[Vec<i64>]) -> Vec<Vec<u64>> {
    assert!(k <= 16, "brute force is for small cones");
    let mut out = Vec::new();
    for s in 1u32..1 << k {
        let cols: Vec<usize> = (0..k).filter(|&c| s >> c & 1 == 1).collect();
        let Some(v) = one_dim_kernel(equations, &cols) else { continue };
        if v.iter().all(|x| x.is_positive()) || v.iter().all(|x| x.is_negative()) {
            let lcm = v.iter().fold(1i64, |l, x| l.lcm(x.denom()));
            let ints: Vec<i64> = v.iter().map(|x| (x * lcm).to_integer().abs()).collect();
            let g = ints.iter().fold(0i64, |g, x| g.gcd(x));
            let mut ray = vec![0u64; k];
            for (&c, x) in cols.iter().zip(ints) {
                ray[c] = (x / g) as u64;
            }
            out.push(ray);
        }
    }
    out.sort();
    out.dedup();
    out
}

fn one_dim_kernel(equations: &[Vec<i64>], cols: &[usize]) -> Option<Vec<Rational64>> {
    let mut m: Vec<Vec<Rational64>> =
        equations.iter().map(|r| cols.iter().map(|&c| Rational64::from_integer(r[c])).collect()).collect();
    let n = cols.len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col];
                for c in 0..n {
                    let d = m[row][c] * f;
                    m[r][c] -= d;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if n - pivots.len() != 1 {
        return None;
    }
    let free = (0..n).find(|c| !pivots.contains(c))?;
    let mut v = vec![Rational64::zero(); n];
    v[free] = Rational64::one();
    for (r, &pc) in pivots.iter().enumerate() {
        v[pc] = -m[r][free];
    }
    Some(v)
}

/// Nonnegative weights on the cliques of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueVector {
    pub graph: GcdGraph,
    pub cliques: Vec<u8>,
    pub weights: Vec<u64>,
}

impl CliqueVector {
    pub fn active(&self) -> Vec<u8> {
        self.cliques.iter().zip(&self.weights).filter(|(_, w)| **w > 0).map(|(c, _)| *c).collect()
    }

    /// True when every edge lies in some active clique.
    pub fn covers_edges(&self) -> bool {
        let active = self.active();
        self.graph.edges().into_iter().all(|(u, v)| active.iter().any(|c| c >> u & 1 == 1 && c >> v & 1 == 1))
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self
            .cliques
            .iter()
            .zip(&self.weights)
            .filter(|(_, w)| **w > 0)
            .map(|(c, w)| if *w == 1 { mask_label(*c) } else { format!("{}^{w}", mask_label(*c)) })
            .collect();
        parts.join(" ")
    }
}

/// Subset sums of the rays whose support is not forbidden, one per distinct
/// [`LcmData`]. Patterns with equal data have equal supports, and the data of
/// a sum only depends on the data of its rays, so the search runs on the data.
pub fn ray_closure(cone: &CliqueCone, rays: &[Vec<u64>], cap: usize) -> Result<Vec<CliqueVector>> {
    Ok(closure_with_data(cone, rays, cap)?.into_iter().map(|(v, _)| v).collect())
}

struct Closure<'a> {
    filter: &'a SupportFilter,
    found: HashMap<LcmData, Vec<u64>>,
    rejected: HashSet<LcmData>,
    queue: VecDeque<LcmData>,
}

impl Closure<'_> {
    fn admit(&mut self, d: LcmData, w: Vec<u64>) {
        if self.found.contains_key(&d) || self.rejected.contains(&d) {
            return;
        }
        if self.filter.forbids_data(&d) {
            self.rejected.insert(d);
            return;
        }
        self.found.insert(d, w);
        self.queue.push_back(d);
    }
}

fn closure_with_data(cone: &CliqueCone, rays: &[Vec<u64>], cap: usize) -> Result<Vec<(CliqueVector, LcmData)>> {
    let filter = SupportFilter::new(cone.graph);
    let data: Vec<LcmData> = rays
        .iter()
        .map(|r| LcmData::of(&filter, cone.cliques.iter().zip(r).filter(|(_, w)| **w > 0).map(|(c, _)| *c)))
        .collect();
    let mut cl = Closure { filter: &filter, found: HashMap::new(), rejected: HashSet::new(), queue: VecDeque::new() };
    for (r, d) in rays.iter().zip(&data) {
        cl.admit(*d, r.clone());
    }
    let mut order = Vec::new();
    while let Some(p) = cl.queue.pop_front() {
        order.push(p);
        let base = cl.found[&p].clone();
        for (r, d) in rays.iter().zip(&data) {
            let q = p.meet(d);
            if q != p {
                cl.admit(q, base.iter().zip(r).map(|(a, b)| a + b).collect());
            }
        }
        if cl.found.len() > cap {
            return Err(Error::ResourceCap(format!(
                "graph {}: more than {cap} distinct lcm patterns",
                cone.graph.adjacency_string()
            )));
        }
    }
    order.sort();
    Ok(order
        .into_iter()
        .map(|d| {
            let v = CliqueVector { graph: cone.graph, cliques: cone.cliques.clone(), weights: cl.found[&d].clone() };
            (v, d)
        })
        .collect())
}

/// A homogeneous candidate ideal built from a clique vector.
#[derive(Clone, Debug)]
pub struct CandidateIdeal {
    pub seq: MonomialSeq,
    /// Active cliques in variable order: variable `x_k` belongs to `active[k-1]`.
    pub active: Vec<u8>,
    pub weights: Vec<u64>,
}

/// Generator `divisor` divides generator `multiple` (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NonMinimal {
    pub divisor: usize,
    pub multiple: usize,
}

/// One variable per active clique, `f_i = Π x_c^{w_c}` over active `c ∋ i`.
/// Weights are doubled when the common degree is 1.
pub fn ideal_from_vector(cv: &CliqueVector) -> std::result::Result<CandidateIdeal, NonMinimal> {
    let (active, mut weights): (Vec<u8>, Vec<u64>) =
        cv.cliques.iter().zip(&cv.weights).filter(|(_, w)| **w > 0).map(|(c, w)| (*c, *w)).unzip();
    for i in 0..VERTICES {
        for j in 0..VERTICES {
            if i != j && active.iter().all(|c| c >> i & 1 == 0 || c >> j & 1 == 1) {
                return Err(NonMinimal { divisor: i + 1, multiple: j + 1 });
            }
        }
    }
    let degree: u64 = active.iter().zip(&weights).filter(|(c, _)| *c & 1 == 1).map(|(_, w)| w).sum();
    if degree == 1 {
        weights.iter_mut().for_each(|w| *w *= 2);
    }
    let gens = (0..VERTICES)
        .map(|i| {
            Monomial::from_pairs(
                active
                    .iter()
                    .zip(&weights)
                    .enumerate()
                    .filter(|(_, (c, _))| *c >> i & 1 == 1)
                    .map(|(k, (_, w))| (k as u32 + 1, *w as u32)),
            )
        })
        .collect();
    let seq = MonomialSeq::new(gens).expect("clique ideals have six nonunit generators");
    Ok(CandidateIdeal { seq, active, weights })
}

/// Relabelings fixing the graph, as vertex maps.
pub fn automorphisms(g: GcdGraph) -> Vec<[usize; VERTICES]> {
    automorphism_group(g).into_iter().map(|p| p.map).collect()
}

fn automorphism_group(g: GcdGraph) -> Vec<&'static Perm> {
    permutations().iter().filter(|p| g.permuted(&p.map) == g).collect()
}

/// Smallest relabeling of `d` under the automorphisms of its graph; equal
/// keys have equal support classes.
pub fn data_key(d: &LcmData) -> LcmData {
    automorphism_group(d.graph()).into_iter().map(|p| d.permuted(p)).min().unwrap_or(*d)
}

/// Ten surviving graphs that keep a pass short: the 6-cycle, sparse and
/// triangle-bearing shapes, and the two graphs `[26,35,45,46]` and
/// `[16,26,35,45,46]` whose ideals include supports outside
/// [`ALLOWED_CLASSES`].
pub fn ci_subset() -> Vec<GcdGraph> {
    let graphs = [
        "12,23,34,45,56,61",
        "",
        "12,34,56",
        "12,23,34,45,56",
        "12,23,31,45,56,64",
        "12,23,34,41,56",
        "12,13,23,45",
        "12,23,34,45,51",
        "12,23,34,45",
        "16,26,35,45,46",
    ];
    graphs.iter().map(|s| GcdGraph::parse(s).expect("fixed graph").canonical()).collect()
}

#[derive(Clone, Debug)]
pub struct PipelineSettings {
    pub support: SupportSettings,
    pub closure_cap: usize,
    /// Worker threads; 0 uses the rayon default.
    pub threads: usize,
    /// JSON-lines file receiving one record per finished graph.
    pub checkpoint: Option<PathBuf>,
    /// Skip graphs already recorded in the checkpoint.
    pub resume: bool,
    /// Restrict the run; `None` means every surviving graph.
    pub graphs: Option<Vec<GcdGraph>>,
}

impl Default for PipelineSettings {
    fn default() -> Self {
        PipelineSettings {
            support: SupportSettings::default(),
            closure_cap: DEFAULT_CLOSURE_CAP,
            threads: 0,
            checkpoint: None,
            resume: false,
            graphs: None,
        }
    }
}

/// Result for one graph; also the checkpoint line format.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GraphRecord {
    pub canonical_adjacency: String,
    pub edges: String,
    pub cliques: usize,
    pub pruned_cliques: usize,
    pub rays: Vec<Vec<u64>>,
    pub candidates: usize,
    pub non_minimal: usize,
    /// Distinct patterns up to relabeling the generators.
    pub distinct: usize,
    pub classifications: BTreeMap<String, usize>,
    /// One example ideal and its support per class.
    pub examples: BTreeMap<String, Example>,
    /// Ideals whose support fell outside the expected classes.
    pub failures: Vec<Example>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Example {
    pub cliques: String,
    pub ideal: String,
    pub support: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineSummary {
    pub graph_classes: usize,
    pub graphs: usize,
    pub resumed: usize,
    pub tally: BTreeMap<String, usize>,
    pub records: Vec<GraphRecord>,
}

pub const ALLOWED_CLASSES: [&str; 5] = ["LinearSubspace", "UnionTwoHyperplanes", "Sextic135246", "FullSpace", "OriginOnly"];

impl PipelineSummary {
    /// Fails with the first offending ideal if any class is outside [`ALLOWED_CLASSES`].
    pub fn check(&self) -> Result<()> {
        for r in &self.records {
            if let Some(e) = r.failures.first() {
                return Err(Error::Classification(format!(
                    "graph {} ({}), cliques {}: ideal {} has support {}",
                    r.canonical_adjacency, r.edges, e.cliques, e.ideal, e.support
                )));
            }
        }
        Ok(())
    }

    pub fn text_table(&self) -> String {
        let mut out = format!(
            "graphs: {} isomorphism classes, {} after filtering, {} processed ({} from checkpoint)\n",
            self.graph_classes,
            self.graphs,
            self.records.len(),
            self.resumed
        );
        out.push_str(&format!("{:<22} {:>10}\n", "class", "ideals"));
        for (k, v) in &self.tally {
            out.push_str(&format!("{k:<22} {v:>10}\n"));
        }
        if let Some(r) = self.records.iter().find(|r| r.examples.contains_key("Sextic135246")) {
            let e = &r.examples["Sextic135246"];
            out.push_str(&format!("Sextic135246 witness: graph {}, ideal {}, support {}\n", r.edges, e.ideal, e.support));
        }
        out
    }
}

fn support_class(seq: &MonomialSeq, settings: &SupportSettings) -> Result<(SupportClass, String)> {
    let report = match support_symbolic(seq, settings) {
        Err(Error::NotGradable(_)) | Err(Error::ResourceCap(_)) => {
            support_symbolic(seq, &SupportSettings { engine: Engine::Chat, ..settings.clone() })?
        }
        r => r?,
    };
    Ok((classify(&report.variety), report.variety.to_string()))
}

/// Enumerates and classifies every candidate ideal of one graph.
pub fn process_graph(g: GcdGraph, settings: &PipelineSettings) -> Result<GraphRecord> {
    let cliques = g.cliques();
    let cone = build_cone_on(g, pruned_cliques(g));
    let rays = extreme_rays(&cone)?;
    // Data realizing a smaller graph is enumerated under that graph.
    let closure: Vec<(CliqueVector, LcmData)> =
        closure_with_data(&cone, &rays, settings.closure_cap)?.into_iter().filter(|(_, d)| d.graph() == g).collect();
    let group = automorphism_group(g);
    let mut non_minimal = 0;
    let mut by_key: BTreeMap<LcmData, Vec<(String, CandidateIdeal)>> = BTreeMap::new();
    for (v, d) in &closure {
        match ideal_from_vector(v) {
            Ok(c) => {
                let key = group.iter().map(|p| d.permuted(p)).min().unwrap_or(*d);
                by_key.entry(key).or_default().push((v.describe(), c))
            }
            Err(_) => non_minimal += 1,
        }
    }
    let reps: Vec<(&LcmData, &(String, CandidateIdeal))> = by_key.iter().map(|(k, v)| (k, &v[0])).collect();
    let classes: Vec<(SupportClass, String)> =
        reps.par_iter().map(|(_, (_, c))| support_class(&c.seq, &settings.support)).collect::<Result<_>>()?;
    let mut record = GraphRecord {
        canonical_adjacency: g.adjacency_string(),
        edges: g.to_string(),
        cliques: cliques.len(),
        pruned_cliques: cone.dim(),
        rays,
        candidates: closure.len() - non_minimal,
        non_minimal,
        distinct: reps.len(),
        classifications: BTreeMap::new(),
        examples: BTreeMap::new(),
        failures: Vec::new(),
    };
    for ((key, (desc, c)), (class, support)) in reps.iter().zip(&classes) {
        let name = class_name(class);
        *record.classifications.entry(name.to_string()).or_default() += by_key[*key].len();
        let example = Example { cliques: desc.clone(), ideal: c.seq.to_string(), support: support.clone() };
        if matches!(class, SupportClass::Other(_)) {
            record.failures.push(example.clone());
        }
        record.examples.entry(name.to_string()).or_insert(example);
    }
    Ok(record)
}

fn class_name(c: &SupportClass) -> &'static str {
    match c {
        SupportClass::LinearSubspace => "LinearSubspace",
        SupportClass::UnionTwoHyperplanes => "UnionTwoHyperplanes",
        SupportClass::Sextic135246 => "Sextic135246",
        SupportClass::FullSpace => "FullSpace",
        SupportClass::OriginOnly => "OriginOnly",
        SupportClass::Other(_) => "Other",
    }
}

fn load_checkpoint(path: &PathBuf) -> Result<Vec<GraphRecord>> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(e.into()),
    };
    let mut out = Vec::new();
    for line in BufReader::new(file).lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        // A torn final line from an interrupted write is dropped and redone.
        match serde_json::from_str(&line) {
            Ok(r) => out.push(r),
            Err(e) => log::warn!("skipping unreadable checkpoint line: {e}"),
        }
    }
    Ok(out)
}

/// Runs the enumeration over every selected graph and tallies the classes.
pub fn run_pipeline(settings: &PipelineSettings) -> Result<PipelineSummary> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(settings.threads)
        .build()
        .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
    pool.install(|| run_pipeline_inner(settings))
}

fn run_pipeline_inner(settings: &PipelineSettings) -> Result<PipelineSummary> {
    let surviving = enumerate_graphs();
    let graphs: Vec<GcdGraph> = match &settings.graphs {
        Some(gs) => gs.iter().map(|g| g.canonical()).collect(),
        None => surviving.clone(),
    };
    let mut done: BTreeMap<String, GraphRecord> = BTreeMap::new();
    if let (Some(path), true) = (&settings.checkpoint, settings.resume) {
        for r in load_checkpoint(path)? {
            done.insert(r.canonical_adjacency.clone(), r);
        }
    }
    let resumed = graphs.iter().filter(|g| done.contains_key(&g.adjacency_string())).count();
    let writer = match &settings.checkpoint {
        Some(path) => {
            let mut opts = OpenOptions::new();
            opts.create(true);
            if settings.resume {
                opts.append(true);
            } else {
                opts.write(true).truncate(true);
            }
            Some(Mutex::new(opts.open(path)?))
        }
        None => None,
    };
    let todo: Vec<GcdGraph> = graphs.iter().copied().filter(|g| !done.contains_key(&g.adjacency_string())).collect();
    let fresh: Vec<GraphRecord> = todo
        .par_iter()
        .map(|&g| {
            let rec = process_graph(g, settings)?;
            log::info!("graph {} {}: {} candidates {:?}", rec.canonical_adjacency, rec.edges, rec.candidates, rec.classifications);
            if let Some(w) = &writer {
                let mut f = w.lock().expect("checkpoint");
                writeln!(f, "{}", serde_json::to_string(&rec)?)?;
                f.flush()?;
            }
            Ok(rec)
        })
        .collect::<Result<_>>()?;
    for r in fresh {
        done.insert(r.canonical_adjacency.clone(), r);
    }
    let records: Vec<GraphRecord> = graphs.iter().filter_map(|g| done.remove(&g.adjacency_string())).collect();
    let mut tally = BTreeMap::new();
    for r in &records {
        for (k, v) in &r.classifications {
            *tally.entry(k.clone()).or_default() += v;
        }
    }
    Ok(PipelineSummary { graph_classes: GRAPH_CLASSES, graphs: surviving.len(), resumed, tally, records })
}

/// Per-graph sizes without computing any support.
#[derive(Clone, Debug, Serialize)]
pub struct DryRunRow {
    pub canonical_adjacency: String,
    pub edges: String,
    pub cliques: usize,
    pub pruned_cliques: usize,
    pub rays: usize,
    pub patterns: usize,
}

pub fn dry_run(graphs: Option<&[GcdGraph]>, cap: usize) -> Result<Vec<DryRunRow>> {
    let gs: Vec<GcdGraph> = match graphs {
        Some(g) => g.iter().map(|g| g.canonical()).collect(),
        None => enumerate_graphs(),
    };
    gs.par_iter()
        .map(|&g| {
            let cone = build_cone_on(g, pruned_cliques(g));
            let rays = extreme_rays(&cone)?;
            let patterns = closure_with_data(&cone, &rays, cap)?.into_iter().filter(|(_, d)| d.graph() == g).count();
            Ok(DryRunRow {
                canonical_adjacency: g.adjacency_string(),
                edges: g.to_string(),
                cliques: g.cliques().len(),
                pruned_cliques: cone.dim(),
                rays: rays.len(),
                patterns,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn g(s: &str) -> GcdGraph {
        GcdGraph::parse(s).unwrap()
    }

    #[test]
    fn graph_classes() {
        let all = all_graph_classes();
        assert_eq!(all.len(), GRAPH_CLASSES);
        let kept = enumerate_graphs();
        assert!(!kept.contains(&GcdGraph::complete()));
        assert!(kept.contains(&GcdGraph::empty()));
        assert!(kept.contains(&GcdGraph::cycle().canonical()));
    }

    #[test]
    fn canonical_form_is_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let graph = GcdGraph { code: rng.gen_range(0..1 << NPAIRS) };
            let mut p = [0, 1, 2, 3, 4, 5];
            p.shuffle(&mut rng);
            assert_eq!(graph.canonical(), graph.permuted(&p).canonical());
        }
    }

    #[test]
    fn filter_examples() {
        assert!(lemma612_filter(g("12,13,14,15,16")));
        assert!(lemma612_filter(GcdGraph::complete()));
        assert!(!lemma612_filter(g("12,34,56")));
        assert!(!lemma612_filter(GcdGraph::empty()));
        assert!(!lemma612_filter(GcdGraph::cycle()));
        assert!(!lemma612_filter(g("12,23,34,45,56")));
        // 3 and 4 each see exactly one end of the edge 12, and so do 5 and 6.
        assert!(lemma612_filter(g("12,13,24,15,26")));
    }

    #[test]
    fn dense_edge_examples() {
        assert!(dense_edges(GcdGraph::cycle()).is_empty());
        assert!(dense_edges(g("12,13,14,23,24,34")).is_empty());
        assert_eq!(dense_edges(clause_a_graph()), vec![(0, 1)]);
    }

    /// Dense edge 12 whose endpoints share the neighbours 3 and 4.
    fn clause_a_graph() -> GcdGraph {
        g("12,13,23,14,24,15,26")
    }

    #[test]
    fn forbidden_support_examples() {
        assert!(!forbidden_support(GcdGraph::cycle(), &[0b11, 0b110, 0b1100, 0b1, 0b100000]));
        let h = clause_a_graph();
        assert!(forbidden_support(h, &[0b100, 0b1000]));
        assert!(!forbidden_support(h, &[0b100, 0b10000]));
        // Dense edges 12 and 13 with 2 ≁ 3; the clique {4,5} avoids both.
        let w = g("12,13,24,25,26,34,35,36,45");
        let dense = dense_edges(w);
        assert!(dense.contains(&(0, 1)) && dense.contains(&(0, 2)));
        assert!(forbidden_support(w, &[0b1_1000]));
    }

    #[test]
    fn small_cones() {
        assert_eq!(extreme_rays_of(2, &[vec![1, -1]]).unwrap(), vec![vec![1, 1]]);
        assert_eq!(extreme_rays_of(3, &[]).unwrap(), vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
        let cone = build_cone(GcdGraph::empty());
        assert_eq!(cone.dim(), 6);
        assert_eq!(extreme_rays(&cone).unwrap(), vec![vec![1; 6]]);
    }

    #[test]
    fn six_cycle_cone_has_the_edge_ray() {
        let cone = build_cone(GcdGraph::cycle());
        assert_eq!(cone.dim(), 12);
        let rays = extreme_rays(&cone).unwrap();
        let edges: Vec<u64> = cone.cliques.iter().map(|c| u64::from(c.count_ones() == 2)).collect();
        // The all-edges vector is not extreme (it splits into two perfect matchings)
        // but is a subset sum of rays.
        assert!(cone.satisfies(&edges));
        let closure = ray_closure(&cone, &rays, DEFAULT_CLOSURE_CAP).unwrap();
        let hit = closure.iter().find(|v| v.active() == cone.cliques[6..].to_vec()).expect("all-edges pattern");
        let cand = ideal_from_vector(hit).unwrap();
        let cycle = MonomialSeq::edge_cycle(6).unwrap();
        assert_eq!(GcdGraph::of_seq(&cand.seq).unwrap(), GcdGraph::of_seq(&cycle).unwrap());
    }

    #[test]
    fn triangle_ray() {
        // Triangle 123 balanced by singletons 4,5,6.
        let cone = build_cone(g("12,13,23"));
        let rays = extreme_rays(&cone).unwrap();
        let want: Vec<u64> = cone.cliques.iter().map(|&c| u64::from(c == 0b111 || c.count_ones() == 1 && c > 0b100)).collect();
        assert!(rays.contains(&want), "{rays:?}");
    }

    #[test]
    fn double_description_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut checked = 0;
        for graph in all_graph_classes() {
            let cone = build_cone(graph);
            if cone.dim() > 12 {
                continue;
            }
            let dd = extreme_rays(&cone).unwrap();
            assert_eq!(dd, extreme_rays_brute_force(cone.dim(), &cone.equations), "{graph}");
            for r in &dd {
                assert!(cone.satisfies(r));
                assert_eq!(r.iter().fold(0u64, |g, x| g.gcd(x)), 1);
            }
            checked += 1;
        }
        assert!(checked >= 30, "{checked}");
        for _ in 0..40 {
            let k = rng.gen_range(2..9);
            let eqs: Vec<Vec<i64>> = (0..rng.gen_range(1..4)).map(|_| (0..k).map(|_| rng.gen_range(-2..3)).collect()).collect();
            assert_eq!(extreme_rays_of(k, &eqs).unwrap(), extreme_rays_brute_force(k, &eqs), "{eqs:?}");
        }
    }

    #[test]
    fn closure_examples() {
        let cone = build_cone(GcdGraph::empty());
        let rays = extreme_rays(&cone).unwrap();
        let v = ray_closure(&cone, &rays, 10).unwrap();
        assert_eq!(v.len(), 1);
        let cand = ideal_from_vector(&v[0]).unwrap();
        assert_eq!(cand.seq.to_string(), "x1^2,x2^2,x3^2,x4^2,x5^2,x6^2");

        // Each of {3} and {4} is allowed alone; together they cover the
        // common neighbours of the dense edge 12.
        let h = clause_a_graph();
        let cone = build_cone(h);
        let pick = |cs: &[u8]| cone.cliques.iter().map(|c| u64::from(cs.contains(c))).collect::<Vec<u64>>();
        let a = pick(&[0b1011, 0b100, 0b10000, 0b100000]);
        let b = pick(&[0b111, 0b1000, 0b10000, 0b100000]);
        assert!(cone.satisfies(&a) && cone.satisfies(&b));
        let got = ray_closure(&cone, &[a.clone(), b.clone()], 10).unwrap();
        let mut got: Vec<Vec<u64>> = got.into_iter().map(|v| v.weights).collect();
        got.sort();
        let mut want = vec![a, b];
        want.sort();
        assert_eq!(got, want);

        assert!(ray_closure(&build_cone(GcdGraph::cycle()), &extreme_rays(&build_cone(GcdGraph::cycle())).unwrap(), 3).is_err());
    }

    #[test]
    fn non_minimal_vectors_are_rejected() {
        let graph = g("12,13,23");
        let cliques = graph.cliques();
        let w: Vec<u64> = cliques.iter().map(|&c| u64::from(c == 0b11 || c == 0b111)).collect();
        let cv = CliqueVector { graph, cliques, weights: w };
        assert_eq!(ideal_from_vector(&cv).unwrap_err(), NonMinimal { divisor: 1, multiple: 2 });
    }

    #[test]
    fn candidate_graph_is_the_source_graph() {
        for graph in ci_subset() {
            let cone = build_cone_on(graph, pruned_cliques(graph));
            let rays = extreme_rays(&cone).unwrap();
            for v in ray_closure(&cone, &rays, DEFAULT_CLOSURE_CAP).unwrap() {
                assert!(!forbidden_support(graph, &v.active()));
                if !v.covers_edges() {
                    continue;
                }
                if let Ok(c) = ideal_from_vector(&v) {
                    assert!(c.seq.is_homogeneous() && c.seq.is_minimal());
                    assert!(c.seq.degrees()[0] >= 2);
                    assert_eq!(GcdGraph::of_seq(&c.seq).unwrap(), graph);
                }
            }
        }
    }
}
