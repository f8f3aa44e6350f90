//! Exact row reduction over the rationals, enough to solve the small linear
//! systems that produce Poisson fixtures.

use std::collections::BTreeMap;

use crate::rational::Rational;

/// A sparse row: column → coefficient.
pub type Row = BTreeMap<usize, Rational>;

/// Reduced row echelon form of a sparse matrix with `cols` columns.
/// Returns the reduced rows and their pivot columns.
pub fn rref(rows: &[Row], cols: usize) -> (Vec<Row>, Vec<usize>) {
    let mut pending: Vec<Row> = rows.iter().filter(|r| !r.is_empty()).cloned().collect();
    let mut done: Vec<Row> = Vec::new();
    let mut pivots = Vec::new();
    for col in 0..cols {
        let Some(pos) = pending.iter().position(|r| r.contains_key(&col)) else {
            continue;
        };
        let mut p = pending.swap_remove(pos);
        let inv = p[&col].recip();
        for v in p.values_mut() {
            *v = &*v * &inv;
        }
        for r in pending.iter_mut().chain(done.iter_mut()) {
            if let Some(c) = r.get(&col).cloned() {
                for (k, v) in &p {
                    let e = r.entry(*k).or_default();
                    *e -= &(&c * v);
                    if e.is_zero() {
                        r.remove(k);
                    }
                }
            }
        }
        pending.retain(|r| !r.is_empty());
        done.push(p);
        pivots.push(col);
    }
    (done, pivots)
}

/// A basis of `{x : rows·x = 0}`.
pub fn nullspace(rows: &[Row], cols: usize) -> Vec<Vec<Rational>> {
    let (reduced, pivots) = rref(rows, cols);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivot_set.contains(c)) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (r, &pc) in reduced.iter().zip(&pivots) {
            if let Some(c) = r.get(&free) {
                v[pc] = -c.clone();
            }
        }
        basis.push(v);
    }
    basis
}

/// One solution of `A x = b`, rows given with the right-hand side stored in
/// column `cols`; free variables are set to zero. `None` if inconsistent.
pub fn solve_affine(rows: &[Row], cols: usize) -> Option<Vec<Rational>> {
    let (reduced, pivots) = rref(rows, cols + 1);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &pc) in reduced.iter().zip(&pivots) {
        if let Some(b) = r.get(&cols) {
            x[pc] = b.clone();
        }
    }
    Some(x)
}
