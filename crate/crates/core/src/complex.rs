//! The Taylor complex over `k̄`, its parameter twist `d_a = ∂ + Σ a_j e_j`,
//! and graded complexes whose entries are `±1` or `±a_j`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::field::{FieldPoint, Fp};
use crate::linalg::{rank_mod_p, rank_sparse, SparseRow};
use crate::monomial::{MonomialSeq, Subset, SubsetTable};
use crate::poly::RatPoly;

/// A matrix entry: a constant `±1` or a signed parameter `±a_i` (1-based `i`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EntryCoeff {
    Constant(i8),
    Param { sign: i8, i: usize },
}

impl EntryCoeff {
    pub fn sign(self) -> i8 {
        match self {
            EntryCoeff::Constant(c) => c,
            EntryCoeff::Param { sign, .. } => sign,
        }
    }

    pub fn is_constant(self) -> bool {
        matches!(self, EntryCoeff::Constant(_))
    }

    pub fn times_sign(self, s: i8) -> Self {
        match self {
            EntryCoeff::Constant(c) => EntryCoeff::Constant(c * s),
            EntryCoeff::Param { sign, i } => EntryCoeff::Param { sign: sign * s, i },
        }
    }

    #[inline]
    pub fn eval_mod(self, fp: Fp, point: &[u64]) -> u64 {
        match self {
            EntryCoeff::Constant(c) => fp.from_i64(c as i64),
            EntryCoeff::Param { sign, i } => {
                let v = point[i - 1];
                if sign > 0 {
                    v
                } else {
                    fp.neg(v)
                }
            }
        }
    }

    pub fn eval_rational(self, point: &[BigRational]) -> BigRational {
        match self {
            EntryCoeff::Constant(c) => BigRational::from_integer((c as i64).into()),
            EntryCoeff::Param { sign, i } => {
                if sign > 0 {
                    point[i - 1].clone()
                } else {
                    -point[i - 1].clone()
                }
            }
        }
    }

    pub fn to_poly(self) -> RatPoly {
        match self {
            EntryCoeff::Constant(c) => RatPoly::from_int(c as i64),
            EntryCoeff::Param { sign, i } => RatPoly::var(i - 1).scale(&BigRational::from_integer((sign as i64).into())),
        }
    }
}

impl fmt::Display for EntryCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            EntryCoeff::Constant(c) => write!(f, "{c}"),
            EntryCoeff::Param { sign, i } => write!(f, "{}a{i}", if sign < 0 { "-" } else { "" }),
        }
    }
}

/// A sparse matrix whose column `c` is the image of `col_basis[c]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, EntryCoeff)>,
    pub row_basis: Vec<Subset>,
    pub col_basis: Vec<Subset>,
}

/// A matrix evaluated at a point.
#[derive(Clone, Debug)]
pub enum Evaluated {
    Rational { cols: usize, rows: Vec<SparseRow<BigRational>> },
    Modular { fp: Fp, cols: usize, rows: Vec<SparseRow<u64>> },
}

impl Evaluated {
    pub fn rank(self) -> usize {
        match self {
            Evaluated::Rational { cols, rows } => rank_sparse(rows, cols),
            Evaluated::Modular { fp, cols, rows } => rank_mod_p(fp, rows, cols),
        }
    }

    /// Dense form, for display and small checks.
    pub fn to_dense_strings(&self) -> Vec<Vec<String>> {
        match self {
            Evaluated::Rational { cols, rows } => rows
                .iter()
                .map(|r| {
                    let mut v = vec!["0".to_string(); *cols];
                    for (c, x) in r {
                        v[*c] = x.to_string();
                    }
                    v
                })
                .collect(),
            Evaluated::Modular { fp, cols, rows } => rows
                .iter()
                .map(|r| {
                    let mut v = vec!["0".to_string(); *cols];
                    for (c, x) in r {
                        v[*c] = fp.lift(*x).to_string();
                    }
                    v
                })
                .collect(),
        }
    }
}

impl SparseMatrix {
    pub fn new(row_basis: Vec<Subset>, col_basis: Vec<Subset>, mut entries: Vec<(usize, usize, EntryCoeff)>) -> Self {
        entries.sort_by_key(|e| (e.0, e.1));
        debug_assert!(entries.windows(2).all(|w| (w[0].0, w[0].1) != (w[1].0, w[1].1)));
        SparseMatrix { rows: row_basis.len(), cols: col_basis.len(), entries, row_basis, col_basis }
    }

    /// Rows over `𝔽_p` at `point`.
    pub fn rows_mod(&self, fp: Fp, point: &[u64]) -> Vec<SparseRow<u64>> {
        let mut rows: Vec<SparseRow<u64>> = vec![Vec::new(); self.rows];
        for &(r, c, e) in &self.entries {
            let v = e.eval_mod(fp, point);
            if v != 0 {
                rows[r].push((c, v));
            }
        }
        rows
    }

    pub fn rows_rational(&self, point: &[BigRational]) -> Vec<SparseRow<BigRational>> {
        let mut rows: Vec<SparseRow<BigRational>> = vec![Vec::new(); self.rows];
        for &(r, c, e) in &self.entries {
            let v = e.eval_rational(point);
            if !v.is_zero() {
                rows[r].push((c, v));
            }
        }
        rows
    }

    /// Constants pass through; `±a_i` becomes `±pt_i`.
    pub fn evaluate(&self, pt: &FieldPoint) -> Evaluated {
        match pt {
            FieldPoint::Rational { coords } => Evaluated::Rational { cols: self.cols, rows: self.rows_rational(coords) },
            FieldPoint::Modular { p, coords } => {
                let fp = Fp::new(*p);
                Evaluated::Modular { fp, cols: self.cols, rows: self.rows_mod(fp, coords) }
            }
        }
    }

    pub fn rank_mod(&self, fp: Fp, point: &[u64]) -> usize {
        if self.entries.is_empty() {
            return 0;
        }
        rank_mod_p(fp, self.rows_mod(fp, point), self.cols)
    }

    pub fn rank_at(&self, pt: &FieldPoint) -> usize {
        if self.entries.is_empty() {
            return 0;
        }
        self.evaluate(pt).rank()
    }

    pub fn to_poly_dense(&self) -> Vec<Vec<RatPoly>> {
        let mut m = vec![vec![RatPoly::zero(); self.cols]; self.rows];
        for &(r, c, e) in &self.entries {
            m[r][c] = e.to_poly();
        }
        m
    }

    pub fn transpose(&self) -> SparseMatrix {
        SparseMatrix::new(
            self.col_basis.clone(),
            self.row_basis.clone(),
            self.entries.iter().map(|&(r, c, e)| (c, r, e)).collect(),
        )
    }
}

/// Key of a degree-≤2 monomial in the parameters: 0 stands for "no factor".
type QuadKey = (usize, usize);

fn quad_key(a: EntryCoeff, b: EntryCoeff) -> QuadKey {
    let ia = match a {
        EntryCoeff::Constant(_) => 0,
        EntryCoeff::Param { i, .. } => i,
    };
    let ib = match b {
        EntryCoeff::Constant(_) => 0,
        EntryCoeff::Param { i, .. } => i,
    };
    (ia.min(ib), ia.max(ib))
}

/// Whether `left · right` vanishes as a polynomial identity.
pub fn product_vanishes(left: &SparseMatrix, right: &SparseMatrix) -> bool {
    assert_eq!(left.cols, right.rows, "incompatible shapes");
    let mut by_row: Vec<Vec<(usize, EntryCoeff)>> = vec![Vec::new(); left.cols];
    for &(r, c, e) in &left.entries {
        by_row[c].push((r, e));
    }
    let mut acc: HashMap<(usize, usize, QuadKey), i64> = HashMap::new();
    for &(m, j, e1) in &right.entries {
        for &(k, e2) in &by_row[m] {
            *acc.entry((k, j, quad_key(e1, e2))).or_insert(0) += (e1.sign() * e2.sign()) as i64;
        }
    }
    acc.values().all(|&v| v == 0)
}

/// A graded complex: `pieces[d]` is the basis in degree `d`, `diffs[d]` the
/// map from degree `d` to degree `d - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TotalComplex {
    pub n: usize,
    pub pieces: BTreeMap<i32, Vec<Subset>>,
    pub diffs: BTreeMap<i32, SparseMatrix>,
}

impl TotalComplex {
    pub fn dimension(&self) -> usize {
        self.pieces.values().map(Vec::len).sum()
    }

    pub fn piece_dim(&self, d: i32) -> usize {
        self.pieces.get(&d).map_or(0, Vec::len)
    }

    /// Ranks of every differential at a point over `𝔽_p`.
    pub fn ranks_mod(&self, fp: Fp, point: &[u64]) -> BTreeMap<i32, usize> {
        self.diffs.iter().map(|(&d, m)| (d, m.rank_mod(fp, point))).collect()
    }

    pub fn ranks_at(&self, pt: &FieldPoint) -> BTreeMap<i32, usize> {
        self.diffs.iter().map(|(&d, m)| (d, m.rank_at(pt))).collect()
    }

    /// Degrees `d` where `rank(d_d) + rank(d_{d+1}) < dim_d`, given ranks.
    pub fn homology_degrees(&self, ranks: &BTreeMap<i32, usize>) -> Vec<i32> {
        self.pieces
            .iter()
            .filter(|(&d, basis)| {
                let out = ranks.get(&d).copied().unwrap_or(0);
                let inc = ranks.get(&(d + 1)).copied().unwrap_or(0);
                out + inc < basis.len()
            })
            .map(|(&d, _)| d)
            .collect()
    }

    pub fn homology_nonzero_mod(&self, fp: Fp, point: &[u64]) -> bool {
        let ranks = self.ranks_mod(fp, point);
        !self.homology_degrees(&ranks).is_empty()
    }

    pub fn homology_nonzero_at(&self, pt: &FieldPoint) -> bool {
        let ranks = self.ranks_at(pt);
        !self.homology_degrees(&ranks).is_empty()
    }

    /// `d_{d-1} ∘ d_d = 0` as a polynomial identity for every `d`.
    pub fn square_vanishes(&self) -> bool {
        self.diffs.iter().all(|(&d, m)| match self.diffs.get(&(d - 1)) {
            Some(next) => product_vanishes(next, m),
            None => true,
        })
    }
}

/// The coefficients of `d_a` on the Taylor basis `b_J`: `(source, target, coefficient)`.
///
/// The Taylor part sends `b_J` to `(-1)^{i-1} b_{J∖j_i}` when `f_J = f_{J∖j_i}`;
/// the parameter part sends `b_J` to `a_j sgn((j)J) b_{{j}∪J}` when `f_j` is
/// coprime to `f_J`.
pub fn twisted_entries(table: &SubsetTable) -> Vec<(Subset, Subset, EntryCoeff)> {
    let n = table.n();
    let mut out = Vec::new();
    for mask in 0..table.size() as u32 {
        let set = Subset(mask);
        for (pos, j) in set.indices().enumerate() {
            let smaller = set.without(j);
            if table.same_lcm(set, smaller) {
                let s = if pos % 2 == 0 { 1 } else { -1 };
                out.push((set, smaller, EntryCoeff::Constant(s)));
            }
        }
        for j in 1..=n {
            if let Some((s, target)) = e_action_table(table, j, set) {
                out.push((set, target, EntryCoeff::Param { sign: s, i: j }));
            }
        }
    }
    out
}

fn e_action_table(table: &SubsetTable, j: usize, set: Subset) -> Option<(i8, Subset)> {
    if set.contains(j) || !table.coprime(j, set) {
        return None;
    }
    let s = if set.count_below(j) % 2 == 0 { 1 } else { -1 };
    Some((s, set.with(j)))
}

/// `b_j · b_J = sgn((j)J) b_{{j}∪J}` when `j ∉ J` and `f_j f_J = f_{{j}∪J}`.
pub fn e_action(f: &MonomialSeq, j: usize, set: Subset) -> Option<(i8, Subset)> {
    if set.contains(j) {
        return None;
    }
    let fj = crate::monomial::lcm_subset(f, set);
    if !f.gen(j).is_coprime(&fj) {
        return None;
    }
    let s = if set.count_below(j) % 2 == 0 { 1 } else { -1 };
    Some((s, set.with(j)))
}

/// The same product in the sign-twisted basis `c_J = ksgn(J) b_J`.
pub fn e_action_c(f: &MonomialSeq, j: usize, set: Subset) -> Option<(i8, Subset)> {
    e_action(f, j, set).map(|(s, t)| (s * crate::monomial::ksgn_pair(j, set, f), t))
}

/// The Taylor complex over `k̄` graded by `|J|`; all entries are constants.
pub fn taylor_kbar(f: &MonomialSeq) -> TotalComplex {
    let table = SubsetTable::new(f);
    let grade = |s: Subset| s.len() as i32;
    let entries = twisted_entries(&table).into_iter().filter(|e| e.2.is_constant());
    assemble(f.len(), (0..table.size() as u32).map(Subset), grade, entries)
}

/// Builds a graded complex from a basis, a degree function and `(source,
/// target, coefficient)` entries; every entry must lower degree by one.
pub fn assemble(
    n: usize,
    basis: impl IntoIterator<Item = Subset>,
    degree: impl Fn(Subset) -> i32,
    entries: impl IntoIterator<Item = (Subset, Subset, EntryCoeff)>,
) -> TotalComplex {
    let mut pieces: BTreeMap<i32, Vec<Subset>> = BTreeMap::new();
    for s in basis {
        pieces.entry(degree(s)).or_default().push(s);
    }
    for v in pieces.values_mut() {
        v.sort_by_key(|s| (s.len(), s.bits()));
    }
    let mut position: HashMap<Subset, usize> = HashMap::new();
    for v in pieces.values() {
        for (k, &s) in v.iter().enumerate() {
            position.insert(s, k);
        }
    }
    let mut raw: BTreeMap<i32, Vec<(usize, usize, EntryCoeff)>> = BTreeMap::new();
    for (src, dst, e) in entries {
        let (Some(&c), Some(&r)) = (position.get(&src), position.get(&dst)) else { continue };
        let d = degree(src);
        assert_eq!(degree(dst), d - 1, "entry {src} -> {dst} does not have degree -1");
        raw.entry(d).or_default().push((r, c, e));
    }
    let mut diffs = BTreeMap::new();
    for (&d, src) in &pieces {
        let Some(dst) = pieces.get(&(d - 1)) else { continue };
        let entries = raw.remove(&d).unwrap_or_default();
        diffs.insert(d, SparseMatrix::new(dst.clone(), src.clone(), entries));
    }
    TotalComplex { n, pieces, diffs }
}

/// The two halves of the 2-periodic complex `F_even ⇄ F_odd` with differential `d_a`.
#[derive(Clone, Debug)]
pub struct ChatComplex {
    pub n: usize,
    pub even_to_odd: SparseMatrix,
    pub odd_to_even: SparseMatrix,
}

impl ChatComplex {
    pub fn half_dim(&self) -> usize {
        1 << (self.n - 1)
    }

    /// Homology is nonzero iff the two ranks fall short of `2^{n-1}`.
    pub fn homology_nonzero_mod(&self, fp: Fp, point: &[u64]) -> bool {
        self.even_to_odd.rank_mod(fp, point) + self.odd_to_even.rank_mod(fp, point) < self.half_dim()
    }

    pub fn homology_nonzero_at(&self, pt: &FieldPoint) -> bool {
        self.even_to_odd.rank_at(pt) + self.odd_to_even.rank_at(pt) < self.half_dim()
    }

    pub fn square_vanishes(&self) -> bool {
        product_vanishes(&self.odd_to_even, &self.even_to_odd) && product_vanishes(&self.even_to_odd, &self.odd_to_even)
    }
}

pub fn chat_complex(f: &MonomialSeq) -> ChatComplex {
    chat_from_table(f.len(), &SubsetTable::new(f))
}

pub fn chat_from_table(n: usize, table: &SubsetTable) -> ChatComplex {
    let mut even = Vec::new();
    let mut odd = Vec::new();
    let mut position = vec![0usize; table.size()];
    for mask in 0..table.size() as u32 {
        let s = Subset(mask);
        if s.len() % 2 == 0 {
            position[mask as usize] = even.len();
            even.push(s);
        } else {
            position[mask as usize] = odd.len();
            odd.push(s);
        }
    }
    let mut eo = Vec::new();
    let mut oe = Vec::new();
    for (src, dst, e) in twisted_entries(table) {
        let entry = (position[dst.0 as usize], position[src.0 as usize], e);
        if src.len() % 2 == 0 {
            eo.push(entry);
        } else {
            oe.push(entry);
        }
    }
    ChatComplex {
        n,
        even_to_odd: SparseMatrix::new(odd.clone(), even.clone(), eo),
        odd_to_even: SparseMatrix::new(even, odd, oe),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::DEFAULT_PRIMES;

    fn seq(s: &str) -> MonomialSeq {
        s.parse().unwrap()
    }

    #[test]
    fn e_action_examples() {
        let c6 = MonomialSeq::edge_cycle(6).unwrap();
        assert_eq!(e_action(&c6, 3, Subset::singleton(1)), Some((-1, Subset::from_indices(&[1, 3]))));
        assert_eq!(e_action(&c6, 2, Subset::singleton(1)), None);
        assert_eq!(e_action(&c6, 1, Subset::singleton(1)), None);
    }

    #[test]
    fn regular_sequence_has_zero_differential() {
        // Every face map carries the non-unit factor f_j, which dies over k̄.
        let f = seq("x1^2,x2^2,x3^2");
        let t = taylor_kbar(&f);
        assert_eq!(t.dimension(), 8);
        assert!(t.diffs.values().all(|m| m.entries.is_empty()));
        assert!(t.square_vanishes());
    }

    #[test]
    fn path_taylor_square_zero() {
        let f = seq("x1*x2,x2*x3,x3*x4,x4*x5");
        let t = taylor_kbar(&f);
        assert_eq!(t.dimension(), 16);
        assert!(t.square_vanishes());
        assert!(chat_complex(&f).square_vanishes());
    }

    #[test]
    fn chat_regular_sequence_exact_off_origin() {
        let f = seq("x1^2,x2^2");
        let c = chat_complex(&f);
        assert_eq!(c.even_to_odd.rows, 2);
        let fp = Fp::new(DEFAULT_PRIMES[0]);
        // Each half has rank 1; together they fill the 2-dimensional halves.
        assert_eq!(c.even_to_odd.rank_mod(fp, &[1, 1]), 1);
        assert_eq!(c.odd_to_even.rank_mod(fp, &[1, 1]), 1);
        assert!(!c.homology_nonzero_mod(fp, &[1, 1]));
        assert!(c.homology_nonzero_mod(fp, &[0, 0]));
    }

    #[test]
    fn six_cycle_oracle_points() {
        let c = chat_complex(&MonomialSeq::edge_cycle(6).unwrap());
        assert!(c.square_vanishes());
        let one = FieldPoint::rational_from_ints(&[1, 1, 1, 1, 1, 1]);
        let bad = FieldPoint::rational_from_ints(&[1, 1, 1, 1, 1, -1]);
        assert!(!c.homology_nonzero_at(&one));
        assert!(c.homology_nonzero_at(&bad));
    }
}
