use crate::error::{Error, Result};

/// A permutation acting on tuples by `(x_1..x_n) ↦ (x_{σ(1)}..x_{σ(n)})`.
/// `images[k]` is the (0-based) input position placed at output position `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::Invalid(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// The transposition of positions `a` and `b` on `n` letters.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Permutation { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Rearrange a tuple: output position `k` receives `items[images[k]]`.
    pub fn apply<T: Clone>(&self, items: &[T]) -> Vec<T> {
        self.images.iter().map(|&i| items[i].clone()).collect()
    }

    /// The permutation obtained by first applying `self`, then `after`.
    pub fn then(&self, after: &Permutation) -> Permutation {
        Permutation {
            images: after.images.iter().map(|&k| self.images[k]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (k, &i) in self.images.iter().enumerate() {
            inv[i] = k;
        }
        Permutation { images: inv }
    }
}

/// `+1` for even permutations and `-1` for odd ones.
pub fn signature(p: &Permutation) -> i32 {
    let n = p.images.len();
    let mut inv = 0usize;
    for a in 0..n {
        for b in a + 1..n {
            if p.images[a] > p.images[b] {
                inv += 1;
            }
        }
    }
    if inv.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Koszul sign of rearranging homogeneous elements of the given degrees:
/// `(-1)^{|a||b|}` for every pair whose relative order is reversed.
pub fn koszul_sign(p: &Permutation, degrees: &[i32]) -> Result<i32> {
    if degrees.len() != p.len() {
        return Err(Error::LengthMismatch {
            expected: p.len(),
            found: degrees.len(),
        });
    }
    let n = p.images.len();
    let mut odd = false;
    for a in 0..n {
        for b in a + 1..n {
            let (x, y) = (p.images[a], p.images[b]);
            if x > y && degrees[x] & 1 == 1 && degrees[y] & 1 == 1 {
                odd = !odd;
            }
        }
    }
    Ok(if odd { -1 } else { 1 })
}

/// All permutations increasing on each output block of the given sizes, i.e.
/// the `(i_1,…,i_j)`-shuffles. The count is the multinomial coefficient.
pub fn enumerate_shuffles(block_sizes: &[usize]) -> Vec<Permutation> {
    let n: usize = block_sizes.iter().sum();
    let mut out = Vec::new();
    let mut images = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fill_blocks(block_sizes, 0, &mut images, &mut used, &mut out);
    out
}

/// As [`enumerate_shuffles`] but with signed block sizes: a block of size `-1`
/// makes the shuffler vanish, any other negative size is an error.
pub fn enumerate_shuffles_signed(block_sizes: &[i64]) -> Result<Vec<Permutation>> {
    if block_sizes.contains(&-1) {
        return Ok(Vec::new());
    }
    if let Some(b) = block_sizes.iter().find(|&&b| b < -1) {
        return Err(Error::Invalid(format!("block size {b}")));
    }
    let sizes: Vec<usize> = block_sizes.iter().map(|&b| b as usize).collect();
    Ok(enumerate_shuffles(&sizes))
}

fn fill_blocks(
    sizes: &[usize],
    block: usize,
    images: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<Permutation>,
) {
    if block == sizes.len() {
        out.push(Permutation {
            images: images.clone(),
        });
        return;
    }
    choose_block(sizes, block, sizes[block], 0, images, used, out);
}

fn choose_block(
    sizes: &[usize],
    block: usize,
    remaining: usize,
    start: usize,
    images: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<Permutation>,
) {
    if remaining == 0 {
        fill_blocks(sizes, block + 1, images, used, out);
        return;
    }
    let n = used.len();
    for i in start..n {
        if used[i] {
            continue;
        }
        used[i] = true;
        images.push(i);
        choose_block(sizes, block, remaining - 1, i + 1, images, used, out);
        images.pop();
        used[i] = false;
    }
}

/// Parity of the sign picked up when the elements selected by `mask` are
/// moved in front of the rest, both groups keeping their relative order.
/// With `with_sgn` the permutation signature is included (ε), otherwise only
/// the Koszul part (χ).
#[inline]
pub fn unshuffle_parity(degrees: &[i32], mask: u32, with_sgn: bool) -> bool {
    let mut odd = false;
    let n = degrees.len();
    // count, for every selected t, the unselected s before it
    let mut passed_odd = 0u32; // unselected odd-degree elements seen so far
    let mut passed = 0u32; // unselected elements seen so far
    for (t, &d) in degrees.iter().enumerate().take(n) {
        if mask >> t & 1 == 1 {
            if with_sgn && passed & 1 == 1 {
                odd = !odd;
            }
            if d & 1 == 1 && passed_odd & 1 == 1 {
                odd = !odd;
            }
        } else {
            passed += 1;
            if d & 1 == 1 {
                passed_odd += 1;
            }
        }
    }
    odd
}

/// All `a`-element subsets of `0..n` as bit masks, in colexicographic order.
pub fn subsets(n: usize, a: usize) -> Vec<u32> {
    let mut out = Vec::new();
    if a > n {
        return out;
    }
    if a == 0 {
        out.push(0);
        return out;
    }
    let mut m: u32 = (1u32 << a) - 1;
    let limit: u32 = 1u32 << n;
    while m < limit {
        out.push(m);
        // Gosper's hack
        let c = m & m.wrapping_neg();
        let r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
    }
    out
}
