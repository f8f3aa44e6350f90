//! Evaluators for the shuffler identities, shared by the property tests and
//! the acceptance run. Each side is assembled from smaller shufflers and
//! explicit block braidings.

#![allow(dead_code)]

use homlie::graded::{
    apply_shuffler, koszul_sign, signature, Factors, GradedElement, GradedSpace, Key, Permutation,
    Space, Tensor, Variant,
};
use homlie::Rational;

pub fn space(degrees: &[i32]) -> Space {
    GradedSpace::new(
        "V",
        degrees
            .iter()
            .enumerate()
            .map(|(i, &d)| (format!("x{i}"), d)),
    )
    .unwrap()
    .into_space()
}

pub fn shuffle(v: Variant, blocks: &[usize], s: &Space, key: &[u16]) -> Tensor {
    let el = GradedElement::basis(Factors::power(s, key.len()), key.into());
    apply_shuffler(v, blocks, &el).unwrap().terms
}

/// Apply a key-wise map to the slots `from..from+len` of every term.
pub fn on_slots(t: &Tensor, from: usize, len: usize, f: impl Fn(&[u16]) -> Tensor) -> Tensor {
    let mut out = Tensor::new();
    for (k, c) in t.iter() {
        for (inner, c2) in f(&k[from..from + len]).iter() {
            let mut nk: Key = k[..from].into();
            nk.extend_from_slice(inner);
            nk.extend_from_slice(&k[from + len..]);
            out.add_term(nk, &(c * c2));
        }
    }
    out
}

/// Braid a block of `a` slots past the block that follows it.
pub fn braid(s: &Space, a: usize) -> impl Fn(&[u16]) -> Tensor + '_ {
    move |k: &[u16]| {
        let (x, y) = k.split_at(a);
        let odd = s.key_degree(x) & s.key_degree(y) & 1 == 1;
        let mut nk: Key = y.into();
        nk.extend_from_slice(x);
        let mut t = Tensor::new();
        t.add_signed(nk, &Rational::one(), odd);
        t
    }
}

fn sign_if(t: Tensor, odd: bool) -> Tensor {
    if odd {
        t.neg()
    } else {
        t
    }
}

/// Both unitality expansions of `Σ_{i,j}` (with `i, j ≥ 1`), compared
/// against the shuffler itself.
pub fn unitality(v: Variant, degs: &[i32], key: &[u16], i: usize) -> bool {
    let n = key.len();
    let j = n - i;
    let s = space(degs);
    let skew = v == Variant::Skew;
    let whole = shuffle(v, &[i, j], &s, key);
    let start = Tensor::basis(key.into());

    // the last input stays last, or it closes the first block
    let mut right = on_slots(&start, 0, n - 1, |k| shuffle(v, &[i, j - 1], &s, k));
    let moved = on_slots(&start, 0, n - 1, |k| shuffle(v, &[i - 1, j], &s, k));
    right.add(&sign_if(
        on_slots(&moved, i - 1, n - i + 1, braid(&s, j)),
        skew && j % 2 == 1,
    ));

    // the first input opens the first block, or it opens the second one
    let mut left = on_slots(&start, 1, n - 1, |k| shuffle(v, &[i - 1, j], &s, k));
    let moved = on_slots(&start, 1, n - 1, |k| shuffle(v, &[i, j - 1], &s, k));
    left.add(&sign_if(
        on_slots(&moved, 0, i + 1, braid(&s, 1)),
        skew && i % 2 == 1,
    ));
    whole == right && whole == left
}

/// `Σ_{…,b_k,b_{k+1},…} = (1⊗Σ_{b_k,b_{k+1}}⊗1)·Σ_{…,b_k+b_{k+1},…}`.
pub fn associativity(v: Variant, degs: &[i32], key: &[u16], blocks: &[usize], k: usize) -> bool {
    let s = space(degs);
    let mut coarse = blocks[..k].to_vec();
    coarse.push(blocks[k] + blocks[k + 1]);
    coarse.extend_from_slice(&blocks[k + 2..]);
    let first = shuffle(v, &coarse, &s, key);
    let start: usize = blocks[..k].iter().sum();
    let refined = on_slots(&first, start, blocks[k] + blocks[k + 1], |x| {
        shuffle(v, &[blocks[k], blocks[k + 1]], &s, x)
    });
    shuffle(v, blocks, &s, key) == refined
}

/// `Σ_{…,a,b,…} = ±(1⊗s⊗1)·Σ_{…,b,a,…}` with `(-1)^{ab}` for the skew
/// shuffler.
pub fn symmetry(v: Variant, degs: &[i32], key: &[u16], blocks: &[usize], k: usize) -> bool {
    let s = space(degs);
    let (a, b) = (blocks[k], blocks[k + 1]);
    let mut swapped = blocks.to_vec();
    swapped.swap(k, k + 1);
    let start: usize = blocks[..k].iter().sum();
    let other = shuffle(v, &swapped, &s, key);
    let braided = on_slots(&other, start, a + b, braid(&s, b));
    let expected = sign_if(braided, v == Variant::Skew && a * b % 2 == 1);
    shuffle(v, blocks, &s, key) == expected
}

/// `χ(p then q; d) = χ(p; d)·χ(q; p·d)` and multiplicativity of the
/// signature.
pub fn cocycle(degs: &[i32], p: &Permutation, q: &Permutation) -> bool {
    let moved = p.apply(degs);
    let k = |x: &Permutation, d: &[i32]| koszul_sign(x, d).unwrap();
    k(&p.then(q), degs) == k(p, degs) * k(q, &moved)
        && signature(&p.then(q)) == signature(p) * signature(q)
        && k(&p.inverse(), &moved) == k(p, degs)
}

/// Split `n` slots into consecutive blocks at the given cut points.
pub fn blocks_from_cuts(n: usize, cuts: &[usize]) -> Vec<usize> {
    let mut cuts: Vec<usize> = cuts.iter().map(|c| c % (n + 1)).collect();
    cuts.push(0);
    cuts.push(n);
    cuts.sort();
    cuts.windows(2).map(|w| w[1] - w[0]).collect()
}
