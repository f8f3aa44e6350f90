//! Graded linear algebra over the rationals: homogeneous bases, permutation
//! and Koszul signs, shufflers and canonical graded (anti)symmetric keys.

mod perm;
mod space;
mod tensor;

pub use perm::{
    enumerate_shuffles, enumerate_shuffles_signed, koszul_sign, signature, subsets,
    unshuffle_parity, Permutation,
};
pub use space::{Factors, GradedSpace, Key, Space};
pub use tensor::{
    apply_operator_tensor, apply_shuffler, project_symmetric, skew_normalize, skew_normalize_by,
    sym_normalize, sym_normalize_by, Block, GradedElement, OperatorOnTensors, Tensor, Variant,
};

/// Canonical keys of the `m`-th graded exterior power: non-decreasing index
/// tuples in which even-degree labels occur at most once.
pub fn skew_keys(space: &GradedSpace, m: usize) -> Vec<Key> {
    canonical_keys(space, m, |d| d & 1 == 1)
}

/// Canonical keys of the `m`-th graded symmetric power: odd-degree labels
/// occur at most once.
pub fn sym_keys(space: &GradedSpace, m: usize) -> Vec<Key> {
    canonical_keys(space, m, |d| d & 1 == 0)
}

fn canonical_keys(space: &GradedSpace, m: usize, may_repeat: impl Fn(i32) -> bool) -> Vec<Key> {
    let mut out = Vec::new();
    let mut cur = Key::new();
    fn rec(
        space: &GradedSpace,
        m: usize,
        start: u16,
        cur: &mut Key,
        out: &mut Vec<Key>,
        may_repeat: &dyn Fn(i32) -> bool,
    ) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..space.dim() as u16 {
            cur.push(i);
            let next = if may_repeat(space.degree(i)) {
                i
            } else {
                i + 1
            };
            rec(space, m, next, cur, out, may_repeat);
            cur.pop();
        }
    }
    rec(space, m, 0, &mut cur, &mut out, &may_repeat);
    out
}

/// Parity of `a·b`, the exponent of a Koszul sign.
#[inline]
pub fn odd_product(a: i32, b: i32) -> bool {
    a & b & 1 == 1
}
