//! Monomials, generator sequences and subset bookkeeping.
//!
//! Generators are indexed `1..=n` in every user-facing API; a [`Subset`] stores
//! generator `j` in bit `j - 1`. All of the per-subset data the complexes need
//! (the lcm `f_J`, its degree, the closure `M_J` and the cochain sign) is cached
//! once per sequence in a [`SubsetTable`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard cap on the number of generators; subsets are `u32` bitmasks and the
/// full complex has `2^n` basis elements.
pub const MAX_GENERATORS: usize = 16;

/// Variables are tracked in a `u128` support mask.
pub const MAX_VARIABLES: usize = 128;

/// A monomial `x_1^{e_1} ... x_d^{e_d}` stored sparsely as `(variable, exponent)`
/// pairs with strictly increasing variable index and nonzero exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<(u32, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    /// The variable `x_i` (1-based).
    pub fn var(i: u32) -> Self {
        assert!(i >= 1, "variables are 1-based");
        Monomial { exps: vec![(i, 1)] }
    }

    /// Builds a monomial from `(variable, exponent)` pairs in any order.
    /// Repeated variables multiply; zero exponents are dropped.
    pub fn from_pairs<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> Self {
        let mut exps: Vec<(u32, u32)> = Vec::new();
        for (v, e) in pairs {
            assert!(v >= 1, "variables are 1-based");
            if e == 0 {
                continue;
            }
            match exps.binary_search_by_key(&v, |&(w, _)| w) {
                Ok(pos) => exps[pos].1 += e,
                Err(pos) => exps.insert(pos, (v, e)),
            }
        }
        Monomial { exps }
    }

    /// Builds a monomial from a dense exponent vector, `dense[k]` being the
    /// exponent of `x_{k+1}`.
    pub fn from_dense(dense: &[u32]) -> Self {
        Monomial {
            exps: dense
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(k, &e)| (k as u32 + 1, e))
                .collect(),
        }
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.exps
    }

    pub fn exponent(&self, var: u32) -> u32 {
        match self.exps.binary_search_by_key(&var, |&(w, _)| w) {
            Ok(pos) => self.exps[pos].1,
            Err(_) => 0,
        }
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// Largest variable index appearing, 0 for the unit monomial.
    pub fn max_var(&self) -> u32 {
        self.exps.last().map_or(0, |&(v, _)| v)
    }

    /// Bitmask of the variables appearing (bit `v - 1` for `x_v`).
    pub fn support_mask(&self) -> u128 {
        self.exps.iter().fold(0u128, |m, &(v, _)| m | (1u128 << (v - 1)))
    }

    fn merge_with(&self, other: &Self, combine: impl Fn(u32, u32) -> u32) -> Self {
        let mut out = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() || j < other.exps.len() {
            let a = self.exps.get(i).copied();
            let b = other.exps.get(j).copied();
            let (v, e) = match (a, b) {
                (Some((va, ea)), Some((vb, eb))) if va == vb => {
                    i += 1;
                    j += 1;
                    (va, combine(ea, eb))
                }
                (Some((va, ea)), Some((vb, _))) if va < vb => {
                    i += 1;
                    (va, combine(ea, 0))
                }
                (Some((va, ea)), None) => {
                    i += 1;
                    (va, combine(ea, 0))
                }
                (_, Some((vb, eb))) => {
                    j += 1;
                    (vb, combine(0, eb))
                }
                (None, None) => unreachable!(),
            };
            if e > 0 {
                out.push((v, e));
            }
        }
        Monomial { exps: out }
    }

    pub fn lcm(&self, other: &Self) -> Self {
        self.merge_with(other, u32::max)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        self.merge_with(other, u32::min)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.merge_with(other, |a, b| a + b)
    }

    /// `self | other`.
    pub fn divides(&self, other: &Self) -> bool {
        self.exps.iter().all(|&(v, e)| other.exponent(v) >= e)
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.support_mask() & other.support_mask() == 0
    }

    /// Renames variables through `map(old) -> new`.
    pub fn rename(&self, map: impl Fn(u32) -> u32) -> Self {
        Monomial::from_pairs(self.exps.iter().map(|&(v, e)| (map(v), e)))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        for (k, &(v, e)) in self.exps.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "x{v}")?;
            } else {
                write!(f, "x{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A subset `J ⊆ [n]` of generator indices; generator `j` lives in bit `j - 1`.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(n: usize) -> Self {
        if n >= 32 {
            Subset(u32::MAX)
        } else {
            Subset((1u32 << n) - 1)
        }
    }

    /// `{j}` for a 1-based generator index.
    pub fn singleton(j: usize) -> Self {
        debug_assert!(j >= 1);
        Subset(1 << (j - 1))
    }

    /// Builds a subset from 1-based indices.
    pub fn from_indices(indices: &[usize]) -> Self {
        Subset(indices.iter().fold(0, |m, &j| m | (1 << (j - 1))))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, j: usize) -> bool {
        self.0 & (1 << (j - 1)) != 0
    }

    pub fn with(self, j: usize) -> Self {
        Subset(self.0 | (1 << (j - 1)))
    }

    pub fn without(self, j: usize) -> Self {
        Subset(self.0 & !(1 << (j - 1)))
    }

    pub fn union(self, other: Self) -> Self {
        Subset(self.0 | other.0)
    }

    pub fn minus(self, other: Self) -> Self {
        Subset(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Number of elements of `self` strictly smaller than `j`.
    pub fn count_below(self, j: usize) -> usize {
        (self.0 & ((1u32 << (j - 1)) - 1)).count_ones() as usize
    }

    /// 1-based indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let low = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(low + 1)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.indices().collect()
    }

    /// All submasks of `self` in increasing numeric order, including `∅` and `self`.
    pub fn submasks(self) -> impl Iterator<Item = Subset> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            // Increment within the bits of `full`.
            next = if cur == full {
                None
            } else {
                Some(((cur | !full).wrapping_add(1)) & full)
            };
            Some(Subset(cur))
        })
    }

    /// Compact label: `∅`, digits when every index is below 10, otherwise
    /// dot-separated indices.
    pub fn label(self) -> String {
        if self.is_empty() {
            return "∅".to_string();
        }
        if self.indices().all(|j| j < 10) {
            self.indices().map(|j| j.to_string()).collect()
        } else {
            self.indices()
                .map(|j| j.to_string())
                .collect::<Vec<_>>()
                .join(".")
        }
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, j) in self.indices().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{j}")?;
        }
        write!(f, "}}")
    }
}

/// The generating sequence `f = (f_1, ..., f_n)` over `d` variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialSeq {
    gens: Vec<Monomial>,
    nvars: usize,
}

impl MonomialSeq {
    /// Validates and wraps a generator list; the variable count is inferred as
    /// the largest index that appears.
    pub fn new(gens: Vec<Monomial>) -> Result<Self> {
        let nvars = gens.iter().map(|g| g.max_var() as usize).max().unwrap_or(0);
        Self::with_nvars(gens, nvars)
    }

    pub fn with_nvars(gens: Vec<Monomial>, nvars: usize) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::InvalidInput("at least one generator is required".into()));
        }
        if gens.len() > MAX_GENERATORS {
            return Err(Error::InvalidInput(format!(
                "{} generators exceeds the cap of {MAX_GENERATORS}",
                gens.len()
            )));
        }
        if let Some(k) = gens.iter().position(Monomial::is_one) {
            return Err(Error::InvalidInput(format!("generator {} is a unit", k + 1)));
        }
        let seen = gens.iter().map(|g| g.max_var() as usize).max().unwrap_or(0);
        if nvars < seen {
            return Err(Error::InvalidInput(format!(
                "variable x{seen} exceeds the declared count {nvars}"
            )));
        }
        if nvars > MAX_VARIABLES {
            return Err(Error::InvalidInput(format!(
                "{nvars} variables exceeds the cap of {MAX_VARIABLES}"
            )));
        }
        Ok(MonomialSeq { gens, nvars })
    }

    /// Edge ideal of the `d`-cycle: `x1*x2, x2*x3, ..., xd*x1`.
    pub fn edge_cycle(d: usize) -> Result<Self> {
        if d < 3 {
            return Err(Error::InvalidInput(format!("a cycle needs at least 3 vertices, got {d}")));
        }
        let gens = (1..=d as u32)
            .map(|i| {
                let next = if i as usize == d { 1 } else { i + 1 };
                Monomial::from_pairs([(i, 1), (next, 1)])
            })
            .collect();
        Self::with_nvars(gens, d)
    }

    /// Edge ideal of the path on `d` vertices: `x1*x2, ..., x(d-1)*xd`.
    pub fn edge_path(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidInput(format!("a path needs at least 2 vertices, got {d}")));
        }
        let gens = (1..d as u32)
            .map(|i| Monomial::from_pairs([(i, 1), (i + 1, 1)]))
            .collect();
        Self::with_nvars(gens, d)
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    /// Generator `f_j`, 1-based.
    pub fn gen(&self, j: usize) -> &Monomial {
        &self.gens[j - 1]
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.gens.iter().map(Monomial::degree).collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        let d = self.gens[0].degree();
        self.gens.iter().all(|g| g.degree() == d)
    }

    /// True when no generator divides another.
    pub fn is_minimal(&self) -> bool {
        for (i, a) in self.gens.iter().enumerate() {
            for (j, b) in self.gens.iter().enumerate() {
                if i != j && a.divides(b) {
                    return false;
                }
            }
        }
        true
    }

    /// Reorders generators: the new generator `k` is the old generator `perm[k-1]`
    /// (both 1-based).
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.len() {
            return Err(Error::InvalidInput("permutation length mismatch".into()));
        }
        let gens = perm.iter().map(|&j| self.gen(j).clone()).collect();
        Self::with_nvars(gens, self.nvars)
    }
}

impl fmt::Display for MonomialSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Parses `ideal := monomial ("," monomial)*`, `monomial := factor ("*" factor)*`,
/// `factor := "x" INT ("^" INT)?`, ignoring whitespace.
impl FromStr for MonomialSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let toks: Vec<(usize, char)> = s.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        let mut pos = 0usize;
        let byte_at = |p: usize| toks.get(p).map_or(s.len(), |&(b, _)| b);
        let read_int = |pos: &mut usize| -> Result<u32> {
            let start = *pos;
            while toks.get(*pos).is_some_and(|&(_, c)| c.is_ascii_digit()) {
                *pos += 1;
            }
            if start == *pos {
                return Err(Error::parse(byte_at(start), "expected an integer"));
            }
            let digits: String = toks[start..*pos].iter().map(|&(_, c)| c).collect();
            digits
                .parse::<u32>()
                .map_err(|e| Error::parse(byte_at(start), e.to_string()))
        };
        let mut gens = Vec::new();
        loop {
            let mut pairs = Vec::new();
            loop {
                match toks.get(pos) {
                    Some(&(_, 'x')) | Some(&(_, 'X')) => pos += 1,
                    _ => return Err(Error::parse(byte_at(pos), "expected 'x'")),
                }
                let v = read_int(&mut pos)?;
                if v == 0 {
                    return Err(Error::parse(byte_at(pos), "variables are numbered from 1"));
                }
                let e = if toks.get(pos).is_some_and(|&(_, c)| c == '^') {
                    pos += 1;
                    read_int(&mut pos)?
                } else {
                    1
                };
                pairs.push((v, e));
                if toks.get(pos).is_some_and(|&(_, c)| c == '*') {
                    pos += 1;
                } else {
                    break;
                }
            }
            gens.push(Monomial::from_pairs(pairs));
            match toks.get(pos) {
                None => break,
                Some(&(_, ',')) => pos += 1,
                Some(&(b, c)) => return Err(Error::parse(b, format!("unexpected '{c}'"))),
            }
        }
        if gens.iter().any(|g| g.max_var() as usize > MAX_VARIABLES) {
            return Err(Error::InvalidInput(format!("variable index exceeds {MAX_VARIABLES}")));
        }
        MonomialSeq::new(gens)
    }
}

/// `f_J`: the componentwise maximum of the exponent vectors of `f_j`, `j ∈ J`.
pub fn lcm_subset(f: &MonomialSeq, j: Subset) -> Monomial {
    j.indices().fold(Monomial::one(), |acc, k| acc.lcm(f.gen(k)))
}

/// `M_J = { j : f_j | f_J }`.
pub fn m_closure(f: &MonomialSeq, j: Subset) -> Subset {
    let fj = lcm_subset(f, j);
    let mut m = Subset::EMPTY;
    for k in 1..=f.len() {
        if f.gen(k).divides(&fj) {
            m = m.with(k);
        }
    }
    m
}

/// `S_J`: every `K ⊆ M_J` with `f_K = f_J`, in increasing bitmask order.
pub fn s_class(f: &MonomialSeq, j: Subset) -> Vec<Subset> {
    let fj = lcm_subset(f, j);
    m_closure(f, j)
        .submasks()
        .filter(|&k| lcm_subset(f, k) == fj)
        .collect()
}

/// Sign of the permutation sorting `seq` ascending (entries must be distinct).
pub fn sgn_perm(seq: &[usize]) -> i8 {
    let mut inversions = 0usize;
    for a in 0..seq.len() {
        for b in a + 1..seq.len() {
            debug_assert_ne!(seq[a], seq[b], "sgn_perm needs distinct entries");
            if seq[a] > seq[b] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `(-1)^{#elements of J at even (1-based) positions of sort(M)}` for a given closure `M ⊇ J`.
pub fn ksgn_in(j: Subset, m: Subset) -> i8 {
    let even = j.indices().filter(|&k| (m.count_below(k) + 1) % 2 == 0).count();
    if even % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The cochain sign `ksgn(J)` relative to `M_J`.
pub fn ksgn(j: Subset, f: &MonomialSeq) -> i8 {
    ksgn_in(j, m_closure(f, j))
}

/// `ksgn(j, J) = ksgn(J) · ksgn({j} ∪ J)`; requires `j ∉ J`.
pub fn ksgn_pair(j: usize, set: Subset, f: &MonomialSeq) -> i8 {
    debug_assert!(!set.contains(j));
    ksgn(set, f) * ksgn(set.with(j), f)
}

/// Cached data for one subset: `f_J`, its degree, `M_J` and the class representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetData {
    pub subset: Subset,
    pub lcm: Monomial,
    pub degree: u32,
    pub closure: Subset,
    /// Canonical representative of the M-class; the closure itself.
    pub class_rep: Subset,
}

/// Precomputed lcm data for all `2^n` subsets of a generator sequence.
#[derive(Clone, Debug)]
pub struct SubsetTable {
    n: usize,
    nvars: usize,
    gen_support: Vec<u128>,
    lcm_dense: Vec<u32>,
    lcm_support: Vec<u128>,
    degree: Vec<u32>,
    closure: Vec<u32>,
    ksgn: Vec<i8>,
}

impl SubsetTable {
    pub fn new(f: &MonomialSeq) -> Self {
        let n = f.len();
        let d = f.nvars().max(1);
        let size = 1usize << n;
        let gen_dense: Vec<Vec<u32>> = f
            .gens()
            .iter()
            .map(|g| {
                let mut v = vec![0u32; d];
                for &(var, e) in g.pairs() {
                    v[var as usize - 1] = e;
                }
                v
            })
            .collect();
        let gen_support: Vec<u128> = f.gens().iter().map(Monomial::support_mask).collect();

        let mut lcm_dense = vec![0u32; size * d];
        let mut lcm_support = vec![0u128; size];
        let mut degree = vec![0u32; size];
        for mask in 1..size {
            let low = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            let (head, tail) = lcm_dense.split_at_mut(mask * d);
            let src = &head[rest * d..rest * d + d];
            let dst = &mut tail[..d];
            let mut deg = 0;
            for k in 0..d {
                dst[k] = src[k].max(gen_dense[low][k]);
                deg += dst[k];
            }
            degree[mask] = deg;
            lcm_support[mask] = lcm_support[rest] | gen_support[low];
        }

        let mut closure = vec![0u32; size];
        for mask in 0..size {
            let fj = &lcm_dense[mask * d..mask * d + d];
            let mut m = 0u32;
            for (j, g) in gen_dense.iter().enumerate() {
                if gen_support[j] & !lcm_support[mask] != 0 {
                    continue;
                }
                if g.iter().zip(fj).all(|(a, b)| a <= b) {
                    m |= 1 << j;
                }
            }
            closure[mask] = m;
        }
        let ksgn = (0..size)
            .map(|mask| ksgn_in(Subset(mask as u32), Subset(closure[mask])))
            .collect();
        SubsetTable {
            n,
            nvars: d,
            gen_support,
            lcm_dense,
            lcm_support,
            degree,
            closure,
            ksgn,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        1 << self.n
    }

    pub fn lcm(&self, j: Subset) -> Monomial {
        let m = j.0 as usize;
        Monomial::from_dense(&self.lcm_dense[m * self.nvars..(m + 1) * self.nvars])
    }

    pub fn degree(&self, j: Subset) -> u32 {
        self.degree[j.0 as usize]
    }

    pub fn closure(&self, j: Subset) -> Subset {
        Subset(self.closure[j.0 as usize])
    }

    pub fn ksgn(&self, j: Subset) -> i8 {
        self.ksgn[j.0 as usize]
    }

    /// `ksgn(j, J)`; requires `j ∉ J`.
    pub fn ksgn_pair(&self, j: usize, set: Subset) -> i8 {
        self.ksgn(set) * self.ksgn(set.with(j))
    }

    /// `gcd(f_j, f_J) = 1`, equivalently `f_j f_J = f_{{j} ∪ J}`.
    pub fn coprime(&self, j: usize, set: Subset) -> bool {
        self.gen_support[j - 1] & self.lcm_support[set.0 as usize] == 0
    }

    /// `f_J = f_K`.
    pub fn same_lcm(&self, a: Subset, b: Subset) -> bool {
        self.closure[a.0 as usize] == self.closure[b.0 as usize]
    }

    pub fn data(&self, j: Subset) -> SubsetData {
        let closure = self.closure(j);
        SubsetData {
            subset: j,
            lcm: self.lcm(j),
            degree: self.degree(j),
            closure,
            class_rep: closure,
        }
    }

    /// `S_J` enumerated over submasks of `M_J`.
    pub fn s_class(&self, j: Subset) -> Vec<Subset> {
        let m = self.closure(j);
        m.submasks().filter(|&k| self.closure(k) == m).collect()
    }

    /// Distinct closures `M_J`, sorted by bitmask.
    pub fn classes(&self) -> Vec<Subset> {
        let mut seen = vec![false; self.size()];
        for &m in &self.closure {
            seen[m as usize] = true;
        }
        (0..self.size())
            .filter(|&m| seen[m])
            .map(|m| Subset(m as u32))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> MonomialSeq {
        s.parse().unwrap()
    }

    fn set(ix: &[usize]) -> Subset {
        Subset::from_indices(ix)
    }

    #[test]
    fn lcm_of_seven_cycle_subset() {
        let f = MonomialSeq::edge_cycle(7).unwrap();
        assert_eq!(lcm_subset(&f, set(&[1, 3, 5])).to_string(), "x1*x2*x3*x4*x5*x6");
        assert!(lcm_subset(&f, Subset::EMPTY).is_one());
        let g = seq("x1^2,x2^2");
        assert_eq!(lcm_subset(&g, set(&[1, 2])).to_string(), "x1^2*x2^2");
    }

    #[test]
    fn closure_examples() {
        let f = MonomialSeq::edge_cycle(7).unwrap();
        assert_eq!(m_closure(&f, set(&[1, 3, 5])), set(&[1, 2, 3, 4, 5]));
        assert_eq!(m_closure(&f, Subset::EMPTY), Subset::EMPTY);
        let g = seq("x1*x2,x2*x3,x3*x4,x4*x5");
        assert_eq!(m_closure(&g, set(&[1, 3])), set(&[1, 2, 3]));
    }

    #[test]
    fn s_class_examples() {
        let f = MonomialSeq::edge_cycle(7).unwrap();
        let got = s_class(&f, set(&[1, 3, 5]));
        let mut want = vec![
            set(&[1, 3, 5]),
            set(&[1, 3, 4, 5]),
            set(&[1, 2, 4, 5]),
            set(&[1, 2, 3, 5]),
            set(&[1, 2, 3, 4, 5]),
        ];
        want.sort();
        assert_eq!(got, want);
        assert_eq!(s_class(&f, Subset::EMPTY), vec![Subset::EMPTY]);
        let g = seq("x1*x2,x2*x3,x3*x4,x4*x5");
        assert_eq!(s_class(&g, set(&[1, 2])), vec![set(&[1, 2])]);
    }

    #[test]
    fn permutation_signs() {
        assert_eq!(sgn_perm(&[1, 2, 3]), 1);
        assert_eq!(sgn_perm(&[2, 1]), -1);
        // (7,1,5,6): inversions 7>1,7>5,7>6 → 3.
        assert_eq!(sgn_perm(&[7, 1, 5, 6]), -1);
        assert_eq!(sgn_perm(&[]), 1);
    }

    #[test]
    fn cochain_signs_on_seven_cycle() {
        let f = MonomialSeq::edge_cycle(7).unwrap();
        assert_eq!(ksgn(set(&[1, 2, 3, 5]), &f), -1);
        assert_eq!(ksgn(set(&[1, 3, 5]), &f), 1);
        assert_eq!(ksgn(set(&[1, 3, 4, 5]), &f), -1);
        assert_eq!(ksgn(set(&[1, 2, 4, 5]), &f), 1);
        assert_eq!(ksgn(set(&[1, 2, 3, 4, 5]), &f), 1);
        assert_eq!(ksgn(Subset::EMPTY, &f), 1);
    }

    #[test]
    fn ksgn_pair_reduces_to_singleton_for_empty_set() {
        let f = MonomialSeq::edge_cycle(6).unwrap();
        for j in 1..=6 {
            assert_eq!(ksgn_pair(j, Subset::EMPTY, &f), ksgn(Subset::singleton(j), &f));
        }
        // j above every element of M_J: its position in sort(M_{{j}∪J}) is |M_J| + 1.
        let g = seq("x1^2,x2^2,x3^2");
        let j_set = set(&[1, 2]);
        let direct = ksgn_in(j_set, set(&[1, 2])) * ksgn_in(j_set.with(3), set(&[1, 2, 3]));
        assert_eq!(ksgn_pair(3, j_set, &g), direct);
        // 1 at position 1, 2 at position 2 → one even; adding 3 (position 3) keeps one.
        assert_eq!(ksgn_pair(3, j_set, &g), 1);
    }

    #[test]
    fn table_agrees_with_direct_definitions() {
        let f = MonomialSeq::edge_cycle(7).unwrap();
        let t = SubsetTable::new(&f);
        for mask in 0..t.size() as u32 {
            let j = Subset(mask);
            assert_eq!(t.lcm(j), lcm_subset(&f, j));
            assert_eq!(t.closure(j), m_closure(&f, j));
            assert_eq!(t.ksgn(j), ksgn(j, &f));
        }
        assert_eq!(t.s_class(set(&[1, 3, 5])), s_class(&f, set(&[1, 3, 5])));
    }

    #[test]
    fn parse_and_print() {
        let f = seq(" x1*x2 , x2^3*x3,x10 ");
        assert_eq!(f.len(), 3);
        assert_eq!(f.nvars(), 10);
        assert_eq!(f.to_string(), "x1*x2,x2^3*x3,x10");
        assert!("x1*y2".parse::<MonomialSeq>().is_err());
        assert!("x1,".parse::<MonomialSeq>().is_err());
        assert!("x0".parse::<MonomialSeq>().is_err());
        assert!("x1^".parse::<MonomialSeq>().is_err());
        assert_eq!(MonomialSeq::edge_cycle(3).unwrap().to_string(), "x1*x2,x2*x3,x1*x3");
    }

    #[test]
    fn submask_enumeration() {
        let m = set(&[1, 3, 4]);
        let subs: Vec<u32> = m.submasks().map(|s| s.0).collect();
        assert_eq!(subs, vec![0, 1, 4, 5, 8, 9, 12, 13]);
        assert_eq!(Subset::EMPTY.submasks().count(), 1);
    }

    #[test]
    fn rejects_bad_sequences() {
        assert!(MonomialSeq::new(vec![]).is_err());
        assert!(MonomialSeq::new(vec![Monomial::one()]).is_err());
        let many = (1..=17).map(Monomial::var).collect();
        assert!(MonomialSeq::new(many).is_err());
    }
}
