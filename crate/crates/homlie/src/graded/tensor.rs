use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::rational::Rational;

use super::perm::{enumerate_shuffles, koszul_sign, signature};
use super::space::{Factors, GradedSpace, Key};

/// Sparse vector in a tensor product of spaces, indexed by basis keys.
/// Zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct Tensor {
    terms: BTreeMap<Key, Rational>,
}

impl Tensor {
    pub fn new() -> Self {
        Tensor::default()
    }

    pub fn basis(key: Key) -> Self {
        let mut t = Tensor::new();
        t.terms.insert(key, Rational::one());
        t
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Key, Rational)>) -> Self {
        let mut t = Tensor::new();
        for (k, c) in terms {
            t.add_term(k, &c);
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, key: &[u16]) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Key, &Rational)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &Key> {
        self.terms.keys()
    }

    pub fn into_terms(self) -> BTreeMap<Key, Rational> {
        self.terms
    }

    pub fn add_term(&mut self, key: Key, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Adds `(-1)^odd · c · key`.
    pub fn add_signed(&mut self, key: Key, c: &Rational, odd: bool) {
        if odd {
            self.add_term(key, &-c);
        } else {
            self.add_term(key, c);
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &Tensor, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), &(v * c));
        }
    }

    pub fn add(&mut self, other: &Tensor) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v);
        }
    }

    pub fn sub(&mut self, other: &Tensor) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), &-v);
        }
    }

    pub fn scaled(&self, c: &Rational) -> Tensor {
        let mut t = Tensor::new();
        t.add_scaled(self, c);
        t
    }

    pub fn neg(&self) -> Tensor {
        self.scaled(&-Rational::one())
    }

    pub fn minus(&self, other: &Tensor) -> Tensor {
        let mut t = self.clone();
        t.sub(other);
        t
    }

    /// The common degree of all terms, `None` if empty or inhomogeneous.
    pub fn homogeneous_degree(&self, factors: &Factors) -> Option<i32> {
        let mut it = self.terms.keys().map(|k| factors.degree(k));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn render(&self, factors: &Factors) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(k, c)| format!("{}·{}", c, factors.render(k)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// A vector together with the tensor product it lives in.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedElement {
    pub factors: Factors,
    pub terms: Tensor,
}

impl GradedElement {
    pub fn new(factors: Factors, terms: Tensor) -> Self {
        GradedElement { factors, terms }
    }

    pub fn basis(factors: Factors, key: Key) -> Self {
        GradedElement {
            factors,
            terms: Tensor::basis(key),
        }
    }

    pub fn degree(&self) -> Option<i32> {
        self.terms.homogeneous_degree(&self.factors)
    }
}

/// Which sign a shuffle sum carries: `Skew` uses `ε = χ·sgn`, `Sym` only the
/// Koszul sign `χ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Skew,
    Sym,
}

/// Apply the shuffler (skew) or symmetriser (sym) with the given block sizes
/// to an element of a tensor power.
pub fn apply_shuffler(
    variant: Variant,
    block_sizes: &[usize],
    element: &GradedElement,
) -> Result<GradedElement> {
    let n: usize = block_sizes.iter().sum();
    if element.factors.len() != n {
        return Err(Error::Shape(format!(
            "shuffler of total size {n} applied to {} factors",
            element.factors.len()
        )));
    }
    uniform_space(&element.factors)?;
    let perms = enumerate_shuffles(block_sizes);
    let mut out = Tensor::new();
    for (key, c) in element.terms.iter() {
        let degs = element.factors.factor_degrees(key);
        for p in &perms {
            let chi = koszul_sign(p, &degs)?;
            let s = match variant {
                Variant::Skew => chi * signature(p),
                Variant::Sym => chi,
            };
            let k2: Key = p.apply(key).into_iter().collect();
            out.add_signed(k2, c, s < 0);
        }
    }
    Ok(GradedElement::new(element.factors.clone(), out))
}

/// Averaging projector `(1/n!)·Σ_{σ∈S_n} ±σ` onto graded symmetric (`Sym`)
/// or graded antisymmetric (`Skew`) tensors. Shuffle sums with unshuffle
/// coset representatives are only symmetric modulo this projection, so
/// values in symmetric powers are compared after applying it.
pub fn project_symmetric(variant: Variant, element: &GradedElement) -> Result<GradedElement> {
    let n = element.factors.len();
    let full = apply_shuffler(variant, &vec![1; n], element)?;
    let fact: i64 = (1..=n as i64).product();
    Ok(GradedElement::new(
        element.factors.clone(),
        full.terms.scaled(&Rational::from_int(fact).recip()),
    ))
}

fn uniform_space(f: &Factors) -> Result<()> {
    if f.spaces().windows(2).all(|w| w[0] == w[1]) {
        Ok(())
    } else {
        Err(Error::Shape("shuffle across different spaces".into()))
    }
}

/// Sort `key` into basis order under graded antisymmetry. Returns the sorted
/// key and whether the sign is odd, or `None` when a repeated even-degree
/// label forces the product to vanish.
pub fn skew_normalize_by(key: &[u16], deg: impl Fn(u16) -> i32) -> Option<(Key, bool)> {
    let mut k: Key = key.into();
    let mut odd = false;
    for i in 1..k.len() {
        let mut j = i;
        while j > 0 && k[j - 1] > k[j] {
            let (a, b) = (deg(k[j - 1]), deg(k[j]));
            if (a & b & 1) == 0 {
                odd = !odd;
            }
            k.swap(j - 1, j);
            j -= 1;
        }
    }
    for w in k.windows(2) {
        if w[0] == w[1] && deg(w[0]) & 1 == 0 {
            return None;
        }
    }
    Some((k, odd))
}

/// Sort `key` into basis order under graded symmetry (Koszul sign only).
/// Returns `None` when a repeated odd-degree label forces vanishing.
pub fn sym_normalize_by(key: &[u16], deg: impl Fn(u16) -> i32) -> Option<(Key, bool)> {
    let mut k: Key = key.into();
    let mut odd = false;
    for i in 1..k.len() {
        let mut j = i;
        while j > 0 && k[j - 1] > k[j] {
            let (a, b) = (deg(k[j - 1]), deg(k[j]));
            if (a & b & 1) == 1 {
                odd = !odd;
            }
            k.swap(j - 1, j);
            j -= 1;
        }
    }
    for w in k.windows(2) {
        if w[0] == w[1] && deg(w[0]) & 1 == 1 {
            return None;
        }
    }
    Some((k, odd))
}

pub fn skew_normalize(space: &GradedSpace, key: &[u16]) -> Option<(Key, bool)> {
    skew_normalize_by(key, |i| space.degree(i))
}

pub fn sym_normalize(space: &GradedSpace, key: &[u16]) -> Option<(Key, bool)> {
    sym_normalize_by(key, |i| space.degree(i))
}

/// Homogeneous linear map between tensor products, given on basis keys.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorOnTensors {
    pub source: Factors,
    pub target: Factors,
    pub degree: i32,
    entries: BTreeMap<Key, Tensor>,
}

impl OperatorOnTensors {
    pub fn new(source: Factors, target: Factors, degree: i32) -> Self {
        OperatorOnTensors {
            source,
            target,
            degree,
            entries: BTreeMap::new(),
        }
    }

    /// Set the value on a basis key, validating homogeneity.
    pub fn insert(&mut self, key: Key, value: Tensor) -> Result<()> {
        if key.len() != self.source.len() {
            return Err(Error::LengthMismatch {
                expected: self.source.len(),
                found: key.len(),
            });
        }
        let expected = self.source.degree(&key) + self.degree;
        for k in value.keys() {
            let d = self.target.degree(k);
            if d != expected {
                return Err(Error::Degree {
                    entry: self.source.render(&key),
                    expected,
                    found: d,
                });
            }
        }
        if value.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, value);
        }
        Ok(())
    }

    pub fn get(&self, key: &[u16]) -> Option<&Tensor> {
        self.entries.get(key)
    }
}

/// One tensor factor of an operator `A ⊗ B ⊗ …` acting blockwise.
#[derive(Clone, Debug)]
pub enum Block<'a> {
    /// Identity on this many factors.
    Identity(usize),
    /// Koszul swap `s_{a,b}` moving a block of `b` factors in front of the
    /// preceding block of `a` factors.
    Swap(usize, usize),
    Shuffler(Variant, Vec<usize>),
    Op(&'a OperatorOnTensors),
}

impl Block<'_> {
    fn arity(&self) -> usize {
        match self {
            Block::Identity(n) => *n,
            Block::Swap(a, b) => a + b,
            Block::Shuffler(_, s) => s.iter().sum(),
            Block::Op(o) => o.source.len(),
        }
    }

    fn degree(&self) -> i32 {
        match self {
            Block::Op(o) => o.degree,
            _ => 0,
        }
    }

    fn target(&self, src: &Factors) -> Factors {
        match self {
            Block::Identity(_) | Block::Shuffler(..) => src.clone(),
            Block::Swap(a, _) => src.slice(*a, src.len()).concat(&src.slice(0, *a)),
            Block::Op(o) => o.target.clone(),
        }
    }

    fn apply(&self, src: &Factors, key: &[u16]) -> Result<Vec<(Key, Rational)>> {
        Ok(match self {
            Block::Identity(_) => vec![(key.into(), Rational::one())],
            Block::Swap(a, _) => {
                let (l, r) = key.split_at(*a);
                let dl = src.slice(0, *a).degree(l);
                let dr = src.slice(*a, src.len()).degree(r);
                let mut k: Key = r.into();
                k.extend_from_slice(l);
                let c = Rational::one().signed(dl & dr & 1 == 1);
                vec![(k, c)]
            }
            Block::Shuffler(v, sizes) => {
                let e = GradedElement::basis(src.clone(), key.into());
                apply_shuffler(*v, sizes, &e)?
                    .terms
                    .into_terms()
                    .into_iter()
                    .collect()
            }
            Block::Op(o) => {
                if &o.source != src {
                    return Err(Error::SpaceMismatch(format!(
                        "operator on {:?} applied to {:?}",
                        o.source, src
                    )));
                }
                match o.get(key) {
                    Some(t) => t.iter().map(|(k, c)| (k.clone(), c.clone())).collect(),
                    None => Vec::new(),
                }
            }
        })
    }
}

/// Evaluate `B_1 ⊗ B_2 ⊗ …` on an element, with the Koszul sign
/// `(-1)^{|B_m|·(degree of the inputs left of block m)}`.
pub fn apply_operator_tensor(blocks: &[Block], element: &GradedElement) -> Result<GradedElement> {
    let total: usize = blocks.iter().map(|b| b.arity()).sum();
    let src = &element.factors;
    if total != src.len() {
        return Err(Error::Shape(format!(
            "blocks of total arity {total} applied to {} factors",
            src.len()
        )));
    }
    let mut srcs = Vec::new();
    let mut target = Factors::unit();
    let mut pos = 0;
    for b in blocks {
        let s = src.slice(pos, pos + b.arity());
        target = target.concat(&b.target(&s));
        srcs.push(s);
        pos += b.arity();
    }
    let mut out = Tensor::new();
    for (key, c) in element.terms.iter() {
        let mut partial: Vec<(Key, Rational)> = vec![(Key::new(), c.clone())];
        let mut pos = 0;
        let mut left_deg = 0;
        for (b, s) in blocks.iter().zip(&srcs) {
            let piece = &key[pos..pos + b.arity()];
            let outs = b.apply(s, piece)?;
            let odd = (b.degree() * left_deg) & 1 == 1;
            let mut next = Vec::with_capacity(partial.len() * outs.len());
            for (pk, pc) in &partial {
                for (ok, oc) in &outs {
                    let mut k = pk.clone();
                    k.extend_from_slice(ok);
                    next.push((k, (pc * oc).signed(odd)));
                }
            }
            partial = next;
            left_deg += s.degree(piece);
            pos += b.arity();
        }
        for (k, v) in partial {
            out.add_term(k, &v);
        }
    }
    Ok(GradedElement::new(target, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn space(basis: &[(&str, i32)]) -> Arc<GradedSpace> {
        GradedSpace::new("g", basis.iter().map(|(l, d)| (*l, *d)))
            .unwrap()
            .into_space()
    }

    fn key(v: &[u16]) -> Key {
        v.into()
    }

    #[test]
    fn shuffler_examples() {
        let g = space(&[("x", 0), ("y", 0)]);
        let f = Factors::power(&g, 2);
        let e = GradedElement::basis(f.clone(), key(&[0, 1]));
        let skew = apply_shuffler(Variant::Skew, &[1, 1], &e).unwrap();
        assert_eq!(skew.terms.get(&[0, 1]), Rational::one());
        assert_eq!(skew.terms.get(&[1, 0]), -Rational::one());
        let sym = apply_shuffler(Variant::Sym, &[1, 1], &e).unwrap();
        assert_eq!(sym.terms.get(&[1, 0]), Rational::one());

        let h = space(&[("x", 1)]);
        let e = GradedElement::basis(Factors::power(&h, 2), key(&[0, 0]));
        let skew = apply_shuffler(Variant::Skew, &[1, 1], &e).unwrap();
        assert_eq!(skew.terms.get(&[0, 0]), Rational::from_int(2));
        assert_eq!(skew.terms.len(), 1);
    }

    #[test]
    fn normal_forms() {
        let g = space(&[("e", 0), ("f", 0), ("h", 0), ("c", -1)]);
        assert_eq!(skew_normalize(&g, &[0, 2]), Some((key(&[0, 2]), false)));
        assert_eq!(skew_normalize(&g, &[2, 0]), Some((key(&[0, 2]), true)));
        assert_eq!(skew_normalize(&g, &[3, 3]), Some((key(&[3, 3]), false)));
        assert_eq!(skew_normalize(&g, &[1, 1]), None);
        assert_eq!(sym_normalize(&g, &[2, 0]), Some((key(&[0, 2]), false)));
        assert_eq!(sym_normalize(&g, &[3, 3]), None);
        assert_eq!(sym_normalize(&g, &[1, 1]), Some((key(&[1, 1]), false)));
        // odd-odd transposition: skew sign +1, sym sign -1
        let o = space(&[("a", 1), ("b", 1)]);
        assert_eq!(skew_normalize(&o, &[1, 0]), Some((key(&[0, 1]), false)));
        assert_eq!(sym_normalize(&o, &[1, 0]), Some((key(&[0, 1]), true)));
    }

    #[test]
    fn operator_tensor_koszul() {
        let g = space(&[("x", 1)]);
        let u = space(&[("u", 0), ("v", 1)]);
        let mut f =
            OperatorOnTensors::new(Factors::single(u.clone()), Factors::single(u.clone()), 1);
        f.insert(key(&[0]), Tensor::basis(key(&[1]))).unwrap();
        let src = Factors::single(g.clone()).concat(&Factors::single(u.clone()));
        let e = GradedElement::basis(src.clone(), key(&[0, 0]));
        let r = apply_operator_tensor(&[Block::Identity(1), Block::Op(&f)], &e).unwrap();
        assert_eq!(r.terms.get(&[0, 1]), -Rational::one());

        let src2 = Factors::single(u.clone()).concat(&Factors::single(g.clone()));
        let e2 = GradedElement::basis(src2, key(&[0, 0]));
        let r2 = apply_operator_tensor(&[Block::Op(&f), Block::Identity(1)], &e2).unwrap();
        assert_eq!(r2.terms.get(&[1, 0]), Rational::one());

        let r3 = apply_operator_tensor(&[Block::Identity(1), Block::Identity(1)], &e).unwrap();
        assert_eq!(r3, e);
        assert!(f.insert(key(&[1]), Tensor::basis(key(&[1]))).is_err());
    }
}
