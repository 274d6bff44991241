//! Plain-text layout helpers.

use cohsupp::complex::SparseMatrix;
use cohsupp::MonomialSeq;

/// Right-aligned rows, one per line.
pub fn matrix(rows: &[Vec<String>]) -> String {
    let width = rows.iter().flatten().map(|s| s.chars().count()).max().unwrap_or(1);
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r.iter().map(|c| format!("{c:>width$}")).collect();
        out.push_str(&format!("  [{}]\n", cells.join(" ")));
    }
    out
}

/// Entries of a matrix as strings.
pub fn entries(m: &SparseMatrix) -> Vec<Vec<String>> {
    m.to_poly_dense().iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect()
}

/// Generators of a cycle edge ideal with each edge read along the cycle, so
/// the closing edge prints as `xn*x1`.
pub fn cycle_order(f: &MonomialSeq) -> String {
    let n = f.nvars();
    f.gens()
        .iter()
        .enumerate()
        .map(|(k, g)| {
            let mut vars: Vec<(u32, u32)> = g.pairs().to_vec();
            vars.sort_by_key(|&(v, _)| (v as usize + n - 1 - k) % n);
            let parts: Vec<String> =
                vars.iter().map(|&(v, e)| if e == 1 { format!("x{v}") } else { format!("x{v}^{e}") }).collect();
            parts.join("*")
        })
        .collect::<Vec<_>>()
        .join(",")
}
