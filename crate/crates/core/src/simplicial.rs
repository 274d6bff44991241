//! The simplicial complexes `Δ_J = { M_J ∖ K : K ∈ S_J }` and their reduced
//! cochain complexes.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::complex::{EntryCoeff, SparseMatrix};
use crate::field::{Fp, Zp};
use crate::linalg::{rank_mod_p, rank_sparse, SparseRow};
use crate::monomial::{Subset, SubsetTable};

/// A simplicial complex on a subset of `[n]`; `faces` includes `∅` and is
/// sorted by size, then bitmask.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialComplexT {
    pub vertices: Subset,
    pub faces: Vec<Subset>,
}

impl SimplicialComplexT {
    pub fn new(vertices: Subset, mut faces: Vec<Subset>) -> Self {
        faces.sort_by_key(|f| (f.len(), f.bits()));
        faces.dedup();
        SimplicialComplexT { vertices, faces }
    }

    pub fn is_closed(&self) -> bool {
        let set: std::collections::HashSet<u32> = self.faces.iter().map(|f| f.bits()).collect();
        self.faces.iter().all(|f| f.indices().all(|v| set.contains(&f.without(v).bits())))
    }

    /// Largest face dimension (`-1` for `{∅}`).
    pub fn dim(&self) -> i32 {
        self.faces.iter().map(|f| f.len() as i32 - 1).max().unwrap_or(-1)
    }

    pub fn faces_of_dim(&self, d: i32) -> Vec<Subset> {
        self.faces.iter().copied().filter(|f| f.len() as i32 - 1 == d).collect()
    }

    /// Faces written as `{∅,{2},{2,4}}`.
    pub fn describe(&self) -> String {
        let parts: Vec<String> = self
            .faces
            .iter()
            .map(|f| if f.is_empty() { "∅".to_string() } else { f.to_string() })
            .collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// `Δ_J` computed from the class of `J`.
pub fn delta_complex(table: &SubsetTable, j: Subset) -> SimplicialComplexT {
    let m = table.closure(j);
    let faces = table.s_class(j).into_iter().map(|k| m.minus(k)).collect();
    SimplicialComplexT::new(m, faces)
}

/// Coboundary sign for adding vertex `v` to the face `tau ∖ {v}`:
/// `(-1)^{#{p ∈ tau : p < v}}`.
fn coboundary_sign(tau: Subset, v: usize) -> i8 {
    if tau.count_below(v) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The augmented cochain maps `δ^d : C̃^d → C̃^{d+1}` for `d ≥ -1`, keyed by `d`.
/// Bases are the faces of each dimension in the complex's face order.
pub fn reduced_cochain(delta: &SimplicialComplexT) -> BTreeMap<i32, SparseMatrix> {
    let top = delta.dim();
    let mut by_dim: BTreeMap<i32, Vec<Subset>> = BTreeMap::new();
    for d in -1..=top {
        by_dim.insert(d, delta.faces_of_dim(d));
    }
    let mut out = BTreeMap::new();
    for d in -1..top {
        let src = &by_dim[&d];
        let dst = &by_dim[&(d + 1)];
        let pos: HashMap<u32, usize> = dst.iter().enumerate().map(|(i, f)| (f.bits(), i)).collect();
        let mut entries = Vec::new();
        for (c, sigma) in src.iter().enumerate() {
            for v in delta.vertices.minus(*sigma).indices() {
                let tau = sigma.with(v);
                if let Some(&r) = pos.get(&tau.bits()) {
                    entries.push((r, c, EntryCoeff::Constant(coboundary_sign(tau, v))));
                }
            }
        }
        out.insert(d, SparseMatrix::new(dst.clone(), src.clone(), entries));
    }
    out
}

/// Reduced cohomology ranks over `ℚ` (`characteristic = 0`) or `𝔽_p`,
/// keyed by degree; zero ranks are omitted.
pub fn cohomology_ranks(delta: &SimplicialComplexT, characteristic: u64) -> BTreeMap<i32, usize> {
    let maps = reduced_cochain(delta);
    let rank = |m: &SparseMatrix| -> usize {
        if m.entries.is_empty() {
            return 0;
        }
        if characteristic == 0 {
            let rows: Vec<SparseRow<BigRational>> = m.rows_rational(&[]);
            rank_sparse(rows, m.cols)
        } else if characteristic < (1 << 32) {
            let fp = Fp::new(characteristic);
            rank_mod_p(fp, m.rows_mod(fp, &[]), m.cols)
        } else {
            panic!("characteristic must be 0 or a prime below 2^32")
        }
    };
    let ranks: BTreeMap<i32, usize> = maps.iter().map(|(&d, m)| (d, rank(m))).collect();
    let mut out = BTreeMap::new();
    for d in -1..=delta.dim() {
        let dim = delta.faces_of_dim(d).len();
        let h = dim - ranks.get(&d).copied().unwrap_or(0) - ranks.get(&(d - 1)).copied().unwrap_or(0);
        if h > 0 {
            out.insert(d, h);
        }
    }
    out
}

/// Modular cohomology through the generic sparse kernel; used to cross-check
/// the specialised modular path.
pub fn cohomology_ranks_generic_mod(delta: &SimplicialComplexT, fp: Fp) -> BTreeMap<i32, usize> {
    let maps = reduced_cochain(delta);
    let ranks: BTreeMap<i32, usize> = maps
        .iter()
        .map(|(&d, m)| {
            let rows: Vec<SparseRow<Zp>> = m
                .rows_mod(fp, &[])
                .into_iter()
                .map(|r| r.into_iter().map(|(c, v)| (c, Zp::new(v, fp))).collect())
                .collect();
            (d, rank_sparse(rows, m.cols))
        })
        .collect();
    let mut out = BTreeMap::new();
    for d in -1..=delta.dim() {
        let dim = delta.faces_of_dim(d).len();
        let h = dim - ranks.get(&d).copied().unwrap_or(0) - ranks.get(&(d - 1)).copied().unwrap_or(0);
        if h > 0 {
            out.insert(d, h);
        }
    }
    out
}

/// The differential of `T_J` in the basis `c_K = ksgn(K) b_K`, from size `i`
/// to size `i - 1`, keyed by `i`. Bases list the members of `S_J` by size,
/// ordered by the corresponding faces `M_J ∖ K` of `Δ_J`.
pub fn taylor_block(table: &SubsetTable, j: Subset) -> BTreeMap<usize, SparseMatrix> {
    let m = table.closure(j);
    let delta = delta_complex(table, j);
    let mut by_size: BTreeMap<usize, Vec<Subset>> = BTreeMap::new();
    for face in &delta.faces {
        let k = m.minus(*face);
        by_size.entry(k.len()).or_default().push(k);
    }
    let mut out = BTreeMap::new();
    for (&i, src) in &by_size {
        let Some(dst) = by_size.get(&(i.wrapping_sub(1))) else { continue };
        let pos: HashMap<u32, usize> = dst.iter().enumerate().map(|(r, k)| (k.bits(), r)).collect();
        let mut entries = Vec::new();
        for (c, &k) in src.iter().enumerate() {
            for (p, v) in k.indices().enumerate() {
                let smaller = k.without(v);
                if let Some(&r) = pos.get(&smaller.bits()) {
                    let b = if p % 2 == 0 { 1 } else { -1 };
                    entries.push((r, c, EntryCoeff::Constant(b * table.ksgn(k) * table.ksgn(smaller))));
                }
            }
        }
        out.insert(i, SparseMatrix::new(dst.clone(), src.clone(), entries));
    }
    out
}

/// The matrix identity between `T_J` (c-basis) and `C̃•(Δ_J)` under
/// `K ↔ M_J ∖ K`: the map out of size `i` equals `δ^{|M_J| - i - 1}`.
pub fn block_matches_cochain(table: &SubsetTable, j: Subset) -> bool {
    let m = table.closure(j);
    let delta = delta_complex(table, j);
    let cochain = reduced_cochain(&delta);
    let blocks = taylor_block(table, j);
    let comparable = |a: &SparseMatrix, b: &SparseMatrix| {
        a.rows == b.rows && a.cols == b.cols && a.entries == b.entries
    };
    for (&i, t) in &blocks {
        let d = m.len() as i32 - i as i32 - 1;
        let Some(c) = cochain.get(&d) else { return false };
        // Row/column bases must correspond face-for-face.
        let rows_ok = t.row_basis.iter().zip(&c.row_basis).all(|(k, f)| m.minus(*k) == *f);
        let cols_ok = t.col_basis.iter().zip(&c.col_basis).all(|(k, f)| m.minus(*k) == *f);
        if !rows_ok || !cols_ok || !comparable(t, c) {
            return false;
        }
    }
    blocks.len() == cochain.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::MonomialSeq;

    fn cls(ix: &[usize]) -> Subset {
        Subset::from_indices(ix)
    }

    fn dense(m: &SparseMatrix) -> Vec<Vec<i8>> {
        let mut d = vec![vec![0i8; m.cols]; m.rows];
        for &(r, c, e) in &m.entries {
            d[r][c] = e.sign();
        }
        d
    }

    #[test]
    fn seven_cycle_example() {
        let f = MonomialSeq::edge_cycle(7).unwrap();
        let t = SubsetTable::new(&f);
        let j = cls(&[1, 3, 5]);
        let delta = delta_complex(&t, j);
        assert_eq!(delta.describe(), "{∅,{2},{3},{4},{2,4}}");
        assert!(delta.is_closed());
        let co = reduced_cochain(&delta);
        assert_eq!(dense(&co[&-1]), vec![vec![1], vec![1], vec![1]]);
        // Dual-basis signs (-1)^{#{p ∈ τ : p < v}}; the worked display shows
        // this row with the opposite overall sign.
        assert_eq!(dense(&co[&0]), vec![vec![-1, 0, 1]]);
        let blocks = taylor_block(&t, j);
        assert_eq!(dense(&blocks[&5]), vec![vec![1], vec![1], vec![1]]);
        assert_eq!(dense(&blocks[&4]), vec![vec![-1, 0, 1]]);
        assert!(block_matches_cochain(&t, j));
    }

    #[test]
    fn trivial_complexes() {
        let point = SimplicialComplexT::new(cls(&[1]), vec![cls(&[]), cls(&[1])]);
        let co = reduced_cochain(&point);
        assert_eq!(dense(&co[&-1]), vec![vec![1]]);
        assert!(cohomology_ranks(&point, 0).is_empty());
        let empty = SimplicialComplexT::new(cls(&[]), vec![cls(&[])]);
        assert_eq!(cohomology_ranks(&empty, 0), BTreeMap::from([(-1, 1)]));
    }

    #[test]
    fn six_cycle_full_class() {
        let f = MonomialSeq::edge_cycle(6).unwrap();
        let t = SubsetTable::new(&f);
        let delta = delta_complex(&t, Subset::full(6));
        assert_eq!(delta.faces_of_dim(0).len(), 6);
        assert_eq!(delta.faces_of_dim(1).len(), 9);
        assert_eq!(delta.faces_of_dim(2).len(), 2);
        assert_eq!(cohomology_ranks(&delta, 0), BTreeMap::from([(1, 2)]));
        let fp = Fp::new(7);
        assert_eq!(cohomology_ranks(&delta, 7), cohomology_ranks_generic_mod(&delta, fp));
    }

    /// `Ind(C_n)` and `Ind(P_m)` homotopy types give the expected ranks.
    #[test]
    fn cycle_classes_follow_independence_complexes() {
        for n in 4..=11 {
            let f = MonomialSeq::edge_cycle(n).unwrap();
            let t = SubsetTable::new(&f);
            let full = cohomology_ranks(&delta_complex(&t, Subset::full(n)), 0);
            let want = match n % 3 {
                0 => BTreeMap::from([(n as i32 / 3 - 1, 2)]),
                1 => BTreeMap::from([((n as i32 - 1) / 3 - 1, 1)]),
                _ => BTreeMap::from([((n as i32 - 2) / 3, 1)]),
            };
            assert_eq!(full, want, "n = {n}");
            for i in 1..=n - 2 {
                let path = cohomology_ranks(&delta_complex(&t, Subset::from_indices(&(1..=i).collect::<Vec<_>>())), 0);
                let want = if i % 3 == 0 { BTreeMap::new() } else { BTreeMap::from([(i as i32 / 3 - 1, 1)]) };
                assert_eq!(path, want, "n = {n}, i = {i}");
            }
        }
    }

    #[test]
    fn ksgn_identity_on_small_corpus() {
        for spec in ["x1*x2,x2*x3,x3*x4,x4*x5", "x1*x2,x3*x4,x5*x6,x1*x3*x5,x2*x4*x6", "x1^2*x2,x2^2,x1*x3,x3^2*x2"] {
            let f: MonomialSeq = spec.parse().unwrap();
            let t = SubsetTable::new(&f);
            for c in t.classes() {
                assert!(block_matches_cochain(&t, c), "{spec} class {c}");
            }
        }
    }
}
