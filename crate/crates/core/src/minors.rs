//! Generic ranks and ideals of minors of parameter matrices.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::complex::SparseMatrix;
use crate::error::{Error, Result};
use crate::field::{FieldPoint, Fp, DEFAULT_PRIMES};
use crate::groebner::{find_point_on_mod, radical_member, GbLimits, Ideal};
use crate::linalg::rank_dense_mod_p;
use crate::poly::RatPoly;

/// Default cap on the number of minors computed exhaustively.
pub const DEFAULT_MINOR_BUDGET: usize = 20_000;
/// Consecutive redundant sampled minors required before sampling stops.
pub const DEFAULT_STABILIZATION_WINDOW: usize = 32;

/// A dense matrix of polynomials in `a_1, ..., a_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<RatPoly>>,
}

impl PolyMatrix {
    pub fn new(entries: Vec<Vec<RatPoly>>, cols: usize) -> Self {
        PolyMatrix { rows: entries.len(), cols, entries }
    }

    pub fn from_sparse(m: &SparseMatrix) -> Self {
        PolyMatrix::new(m.to_poly_dense(), m.cols)
    }

    /// Parses rows separated by `;` and entries by `,`, e.g. `"a4,a1,0; 0,a6,a3"`.
    pub fn parse(s: &str) -> Result<Self> {
        let entries: Vec<Vec<RatPoly>> = s
            .split(';')
            .map(|row| row.split(',').map(|e| e.trim().parse()).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let cols = entries.first().map_or(0, Vec::len);
        if entries.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidInput("ragged matrix".into()));
        }
        Ok(PolyMatrix::new(entries, cols))
    }

    pub fn eval_mod(&self, fp: Fp, point: &[u64]) -> Vec<Vec<u64>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|e| e.eval_mod(fp, point).expect("integral entries")).collect())
            .collect()
    }

    pub fn rank_mod(&self, fp: Fp, point: &[u64]) -> usize {
        rank_dense_mod_p(fp, self.eval_mod(fp, point))
    }

    pub fn used_vars(&self) -> usize {
        self.entries.iter().flatten().map(RatPoly::used_vars).max().unwrap_or(0)
    }

    /// Deletes zero rows and zero columns.
    pub fn compress(&self) -> PolyMatrix {
        let keep_rows: Vec<usize> = (0..self.rows).filter(|&r| self.entries[r].iter().any(|e| !e.is_zero())).collect();
        let keep_cols: Vec<usize> = (0..self.cols).filter(|&c| self.entries.iter().any(|r| !r[c].is_zero())).collect();
        let entries = keep_rows
            .iter()
            .map(|&r| keep_cols.iter().map(|&c| self.entries[r][c].clone()).collect())
            .collect();
        PolyMatrix::new(entries, keep_cols.len())
    }

    /// Determinant of the submatrix on `rows × cols` by Laplace expansion,
    /// memoised over column subsets.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> RatPoly {
        assert_eq!(rows.len(), cols.len());
        let s = rows.len();
        if s == 0 {
            return RatPoly::one();
        }
        assert!(s <= 24, "minor too large for subset expansion");
        // level[mask] = det(rows[..t] × cols[mask]) for |mask| = t.
        let mut level: HashMap<u32, RatPoly> = HashMap::from([(0u32, RatPoly::one())]);
        for (t, &r) in rows.iter().enumerate() {
            let mut next: HashMap<u32, RatPoly> = HashMap::new();
            for (&mask, det) in &level {
                if det.is_zero() {
                    continue;
                }
                for (k, &c) in cols.iter().enumerate() {
                    if mask & (1 << k) != 0 || self.entries[r][c].is_zero() {
                        continue;
                    }
                    let full = mask | (1 << k);
                    // Position of column k within the full subset decides the sign.
                    let pos = (full & ((1 << k) - 1)).count_ones() as usize;
                    let term = self.entries[r][c].mul(det);
                    let term = if (t + pos) % 2 == 1 { term.neg() } else { term };
                    let slot = next.entry(full).or_insert_with(RatPoly::zero);
                    *slot = slot.add(&term);
                }
            }
            level = next;
        }
        level.remove(&((1u32 << s) - 1)).unwrap_or_else(RatPoly::zero)
    }
}

/// Rank over `ℚ(a_1, ..., a_n)`: maximum over `samples` random points for
/// each default prime. Every evaluation is a lower bound.
pub fn generic_rank<R: Rng>(m: &SparseMatrix, samples: usize, rng: &mut R) -> usize {
    let n = m.entries.iter().filter_map(|(_, _, e)| match e {
        crate::complex::EntryCoeff::Param { i, .. } => Some(*i),
        _ => None,
    });
    let n = n.max().unwrap_or(0);
    let mut best = 0;
    for &p in &DEFAULT_PRIMES {
        let fp = Fp::new(p);
        for _ in 0..samples.max(1) {
            let pt: Vec<u64> = (0..n).map(|_| fp.random(rng)).collect();
            best = best.max(m.rank_mod(fp, &pt));
            if best == m.rows.min(m.cols) {
                return best;
            }
        }
    }
    best
}

/// Same as [`generic_rank`] for a polynomial matrix.
pub fn generic_rank_poly<R: Rng>(m: &PolyMatrix, samples: usize, rng: &mut R) -> usize {
    let n = m.used_vars();
    let mut best = 0;
    for &p in &DEFAULT_PRIMES {
        let fp = Fp::new(p);
        for _ in 0..samples.max(1) {
            let pt: Vec<u64> = (0..n).map(|_| fp.random(rng)).collect();
            best = best.max(m.rank_mod(fp, &pt));
            if best == m.rows.min(m.cols) {
                return best;
            }
        }
    }
    best
}

/// Result of eliminating on nonzero constant entries: `M` is equivalent to
/// `I_pivots ⊕ rest` by invertible row and column operations over the
/// polynomial ring, so `I_r(M) = I_{r - pivots}(rest)`.
#[derive(Clone, Debug)]
pub struct Reduced {
    pub pivots: usize,
    pub rest: PolyMatrix,
}

pub fn reduce_constant_pivots(m: &PolyMatrix) -> Reduced {
    let mut a = m.entries.clone();
    let mut live_rows: Vec<usize> = (0..m.rows).collect();
    let mut live_cols: Vec<usize> = (0..m.cols).collect();
    let mut pivots = 0;
    loop {
        let found = live_rows.iter().enumerate().find_map(|(ri, &r)| {
            live_cols
                .iter()
                .enumerate()
                .find_map(|(ci, &c)| a[r][c].as_constant().filter(|k| !k.is_zero()).map(|k| (ri, ci, k)))
        });
        let Some((ri, ci, k)) = found else { break };
        let (pr, pc) = (live_rows.swap_remove(ri), live_cols.swap_remove(ci));
        let inv = BigRational::one() / k;
        let pivot_row: Vec<(usize, RatPoly)> = live_cols
            .iter()
            .filter(|&&c| !a[pr][c].is_zero())
            .map(|&c| (c, a[pr][c].scale(&inv)))
            .collect();
        for &r in &live_rows {
            if a[r][pc].is_zero() {
                continue;
            }
            let factor = a[r][pc].clone();
            for (c, v) in &pivot_row {
                a[r][*c] = a[r][*c].sub(&factor.mul(v));
            }
            a[r][pc] = RatPoly::zero();
        }
        pivots += 1;
    }
    live_rows.sort_unstable();
    live_cols.sort_unstable();
    let entries = live_rows
        .iter()
        .map(|&r| live_cols.iter().map(|&c| a[r][c].clone()).collect())
        .collect();
    Reduced { pivots, rest: PolyMatrix::new(entries, live_cols.len()).compress() }
}

/// An ideal of minors together with how it was obtained.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MinorsOutcome {
    #[serde(with = "ideal_strings")]
    pub ideal: Ideal,
    /// Every minor was computed (as opposed to sampled until stable).
    pub exhaustive: bool,
    pub computed: usize,
    /// Pivots removed by constant elimination before expanding minors.
    pub pivots: usize,
}

mod ideal_strings {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(i: &Ideal, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(i.gens().iter().map(|g| g.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Ideal, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        let gens = v.iter().map(|s| s.parse::<RatPoly>()).collect::<Result<Vec<_>>>().map_err(serde::de::Error::custom)?;
        Ok(Ideal::new(gens))
    }
}

/// Settings for [`minors_ideal`].
#[derive(Clone, Debug)]
pub struct MinorSettings {
    pub budget: usize,
    pub window: usize,
    /// Eliminate on constant entries first.
    pub reduce: bool,
    pub limits: GbLimits,
}

impl Default for MinorSettings {
    fn default() -> Self {
        MinorSettings {
            budget: DEFAULT_MINOR_BUDGET,
            window: DEFAULT_STABILIZATION_WINDOW,
            reduce: true,
            limits: GbLimits::default(),
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// All `s × s` minors with rows fixed to `rows`, by expansion over column
/// subsets of size at most `s`.
fn minors_for_rows(m: &PolyMatrix, rows: &[usize], s: usize) -> Vec<RatPoly> {
    let mut level: HashMap<u128, RatPoly> = HashMap::from([(0u128, RatPoly::one())]);
    for (t, &r) in rows.iter().enumerate() {
        let mut next: HashMap<u128, RatPoly> = HashMap::new();
        for (&mask, det) in &level {
            for c in 0..m.cols {
                if mask & (1 << c) != 0 || m.entries[r][c].is_zero() {
                    continue;
                }
                let full = mask | (1u128 << c);
                let pos = (full & ((1u128 << c) - 1)).count_ones() as usize;
                let term = m.entries[r][c].mul(det);
                let term = if (t + pos) % 2 == 1 { term.neg() } else { term };
                let slot = next.entry(full).or_insert_with(RatPoly::zero);
                *slot = slot.add(&term);
            }
        }
        next.retain(|_, v| !v.is_zero());
        level = next;
    }
    debug_assert!(level.keys().all(|k| k.count_ones() as usize == s));
    level.into_values().collect()
}

/// A nonzero-at-a-random-point `s × s` submatrix, chosen greedily after a
/// random shuffle of rows and columns.
fn sample_nonsingular<R: Rng>(m: &PolyMatrix, s: usize, rng: &mut R) -> Option<(Vec<usize>, Vec<usize>)> {
    let fp = Fp::new(DEFAULT_PRIMES[rng.gen_range(0..DEFAULT_PRIMES.len())]);
    let n = m.used_vars();
    let pt: Vec<u64> = (0..n).map(|_| fp.random(rng)).collect();
    nonsingular_at(m, s, fp, &pt, rng)
}

/// `V(J)` as a union along common factors: `V(g·J') = V(g) ∪ V(J')`.
fn split_pieces(gens: &[RatPoly]) -> Vec<Ideal> {
    let gens: Vec<RatPoly> = gens.iter().map(RatPoly::squarefree_part).collect();
    let common = gens.iter().fold(RatPoly::zero(), |g, h| g.gcd(h));
    if gens.is_empty() || common.is_constant() {
        return vec![Ideal::new(gens)];
    }
    let rest: Vec<RatPoly> = gens.iter().map(|g| g.div_exact(&common).expect("gcd divides")).collect();
    let mut out = vec![Ideal::new([common])];
    out.extend(split_pieces(&rest));
    out
}

/// Greedy `s×s` minor that is nonsingular at `pt`, if the rank there allows one.
fn nonsingular_at<R: Rng>(m: &PolyMatrix, s: usize, fp: Fp, pt: &[u64], rng: &mut R) -> Option<(Vec<usize>, Vec<usize>)> {
    let vals = m.eval_mod(fp, &pt);
    let mut col_order: Vec<usize> = (0..m.cols).collect();
    col_order.shuffle(rng);
    // Columns: greedy independent set in shuffled order.
    let mut basis: Vec<Vec<u64>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let mut cols = Vec::new();
    for &c in &col_order {
        let mut v: Vec<u64> = (0..m.rows).map(|r| vals[r][c]).collect();
        for (b, &p) in basis.iter().zip(&pivots) {
            if v[p] != 0 {
                let f = v[p];
                for r in 0..m.rows {
                    v[r] = fp.sub(v[r], fp.mul(f, b[r]));
                }
            }
        }
        if let Some(p) = (0..m.rows).find(|&r| v[r] != 0) {
            let inv = fp.inv(v[p]);
            for x in v.iter_mut() {
                *x = fp.mul(*x, inv);
            }
            basis.push(v);
            pivots.push(p);
            cols.push(c);
            if cols.len() == s {
                break;
            }
        }
    }
    if cols.len() < s {
        return None;
    }
    // Rows: greedy independent rows of the chosen columns, shuffled.
    let mut row_order: Vec<usize> = (0..m.rows).collect();
    row_order.shuffle(rng);
    let mut chosen: Vec<usize> = Vec::new();
    let mut rbasis: Vec<Vec<u64>> = Vec::new();
    let mut rpiv: Vec<usize> = Vec::new();
    for &r in &row_order {
        let mut v: Vec<u64> = cols.iter().map(|&c| vals[r][c]).collect();
        for (b, &p) in rbasis.iter().zip(&rpiv) {
            if v[p] != 0 {
                let f = v[p];
                for k in 0..s {
                    v[k] = fp.sub(v[k], fp.mul(f, b[k]));
                }
            }
        }
        if let Some(p) = (0..s).find(|&k| v[k] != 0) {
            let inv = fp.inv(v[p]);
            for x in v.iter_mut() {
                *x = fp.mul(*x, inv);
            }
            rbasis.push(v);
            rpiv.push(p);
            chosen.push(r);
            if chosen.len() == s {
                break;
            }
        }
    }
    if chosen.len() < s {
        return None;
    }
    chosen.sort_unstable();
    cols.sort_unstable();
    Some((chosen, cols))
}

/// The ideal of `r × r` minors of `m`.
pub fn minors_ideal<R: Rng>(m: &SparseMatrix, r: usize, settings: &MinorSettings, rng: &mut R) -> Result<MinorsOutcome> {
    minors_ideal_poly(&PolyMatrix::from_sparse(m), r, settings, rng)
}

pub fn minors_ideal_poly<R: Rng>(m: &PolyMatrix, r: usize, settings: &MinorSettings, rng: &mut R) -> Result<MinorsOutcome> {
    if r > m.rows.min(m.cols) {
        return Err(Error::InvalidInput(format!("minor size {r} exceeds {}×{}", m.rows, m.cols)));
    }
    let (pivots, work) = if settings.reduce {
        let red = reduce_constant_pivots(m);
        (red.pivots, red.rest)
    } else {
        (0, m.compress())
    };
    if pivots >= r {
        return Ok(MinorsOutcome { ideal: Ideal::unit(), exhaustive: true, computed: 0, pivots });
    }
    let s = r - pivots;
    if s > work.rows.min(work.cols) {
        // Every minor vanishes identically.
        return Ok(MinorsOutcome { ideal: Ideal::new([]), exhaustive: true, computed: 0, pivots });
    }
    // Expand along the shorter side.
    let work = if work.cols > work.rows { transpose(&work) } else { work };
    let total = binomial(work.rows, s).saturating_mul(binomial(work.cols, s));
    if total <= settings.budget as u128 && work.cols <= 128 {
        let mut gens = Vec::new();
        for rows in k_subsets(work.rows, s) {
            gens.extend(minors_for_rows(&work, &rows, s));
        }
        let computed = gens.len();
        return Ok(MinorsOutcome { ideal: Ideal::new(gens), exhaustive: true, computed, pivots });
    }
    if s > 24 {
        return Err(Error::ResourceCap(format!("{s}×{s} minors of a {}×{} matrix", work.rows, work.cols)));
    }
    let mut gens: Vec<RatPoly> = Vec::new();
    let mut computed = 0;
    let mut quiet = 0;
    let max_draws = settings.budget.max(4 * settings.window);
    for _ in 0..max_draws {
        let Some((rows, cols)) = sample_nonsingular(&work, s, rng) else { break };
        let det = work.minor(&rows, &cols);
        computed += 1;
        if det.is_zero() {
            continue;
        }
        let current = Ideal::new(gens.iter().cloned());
        if !gens.is_empty() && radical_member(&det, &current, &settings.limits)? {
            quiet += 1;
            if quiet >= settings.window {
                break;
            }
            continue;
        }
        quiet = 0;
        gens.push(det);
        if gens.iter().any(RatPoly::is_constant) {
            break;
        }
    }
    // Random points rarely see the small strata where few minors survive.
    // Refine at points of the current V(J) where the rank is still full: a
    // minor nonsingular there is outside rad(J) and cuts V(J) down. Each
    // piece of the common-factor split is probed on its own, so a small
    // component is not hidden behind a large one.
    let n = work.used_vars();
    let mut pieces = split_pieces(&gens);
    let mut misses = 0;
    while misses < settings.window && !gens.iter().any(RatPoly::is_constant) {
        let fp = Fp::new(DEFAULT_PRIMES[rng.gen_range(0..DEFAULT_PRIMES.len())]);
        let found = pieces.iter().find_map(|piece| match find_point_on_mod(piece, None, n, fp, rng)? {
            FieldPoint::Modular { coords, .. } => nonsingular_at(&work, s, fp, &coords, rng),
            FieldPoint::Rational { .. } => None,
        });
        let Some((rows, cols)) = found else {
            misses += 1;
            continue;
        };
        computed += 1;
        misses = 0;
        gens.push(work.minor(&rows, &cols));
        pieces = split_pieces(&gens);
    }
    log::info!("sampled {computed} minors of size {s}, kept {}", gens.len());
    Ok(MinorsOutcome { ideal: Ideal::new(gens), exhaustive: false, computed, pivots })
}

fn transpose(m: &PolyMatrix) -> PolyMatrix {
    let entries = (0..m.cols).map(|c| (0..m.rows).map(|r| m.entries[r][c].clone()).collect()).collect();
    PolyMatrix::new(entries, m.rows)
}
