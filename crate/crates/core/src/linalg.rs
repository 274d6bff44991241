//! Exact rank computations: sparse elimination over any [`Coeff`] field, a
//! specialised modular kernel, and fraction-free Bareiss elimination over `ℤ`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::field::{Coeff, Fp};

/// A sparse row: `(column, value)` pairs, strictly increasing columns, no zeros.
pub type SparseRow<C> = Vec<(usize, C)>;

/// Column relabelling putting sparse columns first, which keeps fill-in low
/// on the block-structured matrices produced by Taylor complexes.
fn column_order<T>(rows: &[Vec<(usize, T)>], ncols: usize) -> Vec<usize> {
    let mut count = vec![0usize; ncols];
    for r in rows {
        for &(c, _) in r {
            count[c] += 1;
        }
    }
    let mut cols: Vec<usize> = (0..ncols).collect();
    cols.sort_by_key(|&c| (count[c], c));
    let mut relabel = vec![0usize; ncols];
    for (new, &old) in cols.iter().enumerate() {
        relabel[old] = new;
    }
    relabel
}

/// Rank of a sparse matrix over `𝔽_p`, rows given as `(column, residue)` lists.
pub fn rank_mod_p(fp: Fp, rows: Vec<SparseRow<u64>>, ncols: usize) -> usize {
    let relabel = column_order(&rows, ncols);
    let mut rows: Vec<SparseRow<u64>> = rows
        .into_iter()
        .map(|r| {
            let mut v: SparseRow<u64> = r.into_iter().filter(|&(_, x)| x % fp.modulus() != 0).map(|(c, x)| (relabel[c], x)).collect();
            v.sort_unstable_by_key(|t| t.0);
            v
        })
        .filter(|r| !r.is_empty())
        .collect();
    rows.sort_by_key(|r| r.len());
    let mut pivots: HashMap<usize, SparseRow<u64>> = HashMap::new();
    let mut scratch: SparseRow<u64> = Vec::new();
    for mut row in rows {
        loop {
            let Some(&(lead, val)) = row.first() else { break };
            match pivots.get(&lead) {
                None => {
                    let inv = fp.inv(val);
                    for t in row.iter_mut() {
                        t.1 = fp.mul(t.1, inv);
                    }
                    pivots.insert(lead, row);
                    break;
                }
                Some(piv) => {
                    // row -= val * piv, skipping the cancelled leading entry.
                    scratch.clear();
                    let (mut i, mut j) = (1, 1);
                    while i < row.len() || j < piv.len() {
                        let ci = row.get(i).map_or(usize::MAX, |t| t.0);
                        let cj = piv.get(j).map_or(usize::MAX, |t| t.0);
                        if ci < cj {
                            scratch.push(row[i]);
                            i += 1;
                        } else if cj < ci {
                            scratch.push((cj, fp.neg(fp.mul(val, piv[j].1))));
                            j += 1;
                        } else {
                            let x = fp.sub(row[i].1, fp.mul(val, piv[j].1));
                            if x != 0 {
                                scratch.push((ci, x));
                            }
                            i += 1;
                            j += 1;
                        }
                    }
                    std::mem::swap(&mut row, &mut scratch);
                }
            }
        }
    }
    pivots.len()
}

/// Rank of a sparse matrix over any exact field.
pub fn rank_sparse<C: Coeff>(rows: Vec<SparseRow<C>>, ncols: usize) -> usize {
    let relabel = column_order(&rows, ncols);
    let mut rows: Vec<SparseRow<C>> = rows
        .into_iter()
        .map(|r| {
            let mut v: SparseRow<C> = r.into_iter().filter(|(_, x)| !x.is_zero()).map(|(c, x)| (relabel[c], x)).collect();
            v.sort_by_key(|t| t.0);
            v
        })
        .filter(|r| !r.is_empty())
        .collect();
    rows.sort_by_key(|r| r.len());
    let mut pivots: HashMap<usize, SparseRow<C>> = HashMap::new();
    for mut row in rows {
        while let Some((lead, val)) = row.first().cloned() {
            match pivots.get(&lead) {
                None => {
                    let inv = val.inv();
                    for t in row.iter_mut() {
                        t.1 = t.1.mul(&inv);
                    }
                    pivots.insert(lead, row);
                    break;
                }
                Some(piv) => {
                    let mut out = Vec::with_capacity(row.len() + piv.len());
                    let (mut i, mut j) = (1, 1);
                    while i < row.len() || j < piv.len() {
                        let ci = row.get(i).map_or(usize::MAX, |t| t.0);
                        let cj = piv.get(j).map_or(usize::MAX, |t| t.0);
                        if ci < cj {
                            out.push(row[i].clone());
                            i += 1;
                        } else if cj < ci {
                            out.push((cj, val.mul(&piv[j].1).neg()));
                            j += 1;
                        } else {
                            let x = row[i].1.sub(&val.mul(&piv[j].1));
                            if !x.is_zero() {
                                out.push((ci, x));
                            }
                            i += 1;
                            j += 1;
                        }
                    }
                    row = out;
                }
            }
        }
    }
    pivots.len()
}

/// Rank of a dense integer matrix by fraction-free (Bareiss) elimination.
pub fn rank_bareiss(m: &[Vec<BigInt>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let v = (&a[rank][c] * &a[r][k] - &a[r][c] * &a[rank][k]) / &prev;
                a[r][k] = v;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}

/// Rank of a dense matrix over `𝔽_p`.
pub fn rank_dense_mod_p(fp: Fp, mut m: Vec<Vec<u64>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| m[r][c] % fp.modulus() != 0) else { continue };
        m.swap(rank, p);
        let inv = fp.inv(m[rank][c]);
        for k in c..cols {
            m[rank][k] = fp.mul(m[rank][k], inv);
        }
        for r in rank + 1..rows {
            let f = m[r][c];
            if f == 0 {
                continue;
            }
            for k in c..cols {
                let x = fp.mul(f, m[rank][k]);
                m[r][k] = fp.sub(m[r][k], x);
            }
        }
        rank += 1;
    }
    rank
}

/// Dense rows converted to sparse form over `𝔽_p`.
pub fn dense_to_sparse_mod(fp: Fp, m: &[Vec<u64>]) -> Vec<SparseRow<u64>> {
    m.iter()
        .map(|r| r.iter().enumerate().filter(|(_, &x)| x % fp.modulus() != 0).map(|(c, &x)| (c, x % fp.modulus())).collect())
        .collect()
}
