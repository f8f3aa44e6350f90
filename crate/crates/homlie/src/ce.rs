//! Chevalley–Eilenberg models of a finite-dimensional homotopy Lie algebra:
//! the completed free graded-commutative algebra on `θ^α = ςx^α` truncated
//! at a word-length cap, its semi-free modules, and the functor sending
//! intertwiners to base-linear module maps.
//!
//! Module elements carry algebra coefficients on the left and generators on
//! the right. Every reported equality is exact on word lengths up to the
//! bound stated in its verdict.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::{sym_normalize_by, Factors, Key, Space, Tensor};
use crate::linfty::LInfinityAlgebra;
use crate::rational::Rational;
use crate::repcat::{
    gamma, hom_differential, juxtapose, odot, tensor_rep, trivial, Intertwiner, Representation,
};
use crate::report::{Verdict, Witness};

#[inline]
fn odd(n: i64) -> bool {
    n & 1 == 1
}

/// One sign exponent dropped or shifted in the construction, used to check
/// that the equivalence suite notices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Mutation {
    /// `δθ` without the reversal degree.
    DeltaReversal,
    /// `δθ` with positions counted from 0.
    DeltaPosition,
    /// `δ` on products without the sign of the left factor.
    DeltaLeibniz,
    /// `dv` without the reversal degree.
    ModuleReversal,
    /// `dv` with positions counted from 1.
    ModulePosition,
    /// `d(av)` without `(-1)^{|a|}`.
    ModuleLeibniz,
    /// `CE^f` without the `|f|` in the position sign.
    MorphismDegree,
    /// `CE^f` without the reversal degree.
    MorphismReversal,
    /// `CE^f(au)` without `(-1)^{|f||a|}`.
    BaseLinearity,
    /// `(au)⊗(bv)` without `(-1)^{|u||b|}`.
    TensorSign,
    /// The symmetric braiding without its Koszul sign.
    SwapSign,
}

impl Mutation {
    pub const ALL: [Mutation; 11] = [
        Mutation::DeltaReversal,
        Mutation::DeltaPosition,
        Mutation::DeltaLeibniz,
        Mutation::ModuleReversal,
        Mutation::ModulePosition,
        Mutation::ModuleLeibniz,
        Mutation::MorphismDegree,
        Mutation::MorphismReversal,
        Mutation::BaseLinearity,
        Mutation::TensorSign,
        Mutation::SwapSign,
    ];
}

/// `|x_1…x_i|_rev = Σ_l |x_l|·|x_{l+1}…x_i|`.
pub fn reversal_degree(degrees: &[i32]) -> i64 {
    let mut tail = 0i64;
    let mut acc = 0i64;
    for &d in degrees.iter().rev() {
        acc += d as i64 * tail;
        tail += d as i64;
    }
    acc
}

/// `Σ_l |x_l|·(l + offset)` with positions counted from 1.
fn position_sum(degrees: &[i32], offset: i64) -> i64 {
    degrees
        .iter()
        .enumerate()
        .map(|(l, &d)| d as i64 * (l as i64 + 1 + offset))
        .sum()
}

/// Every distinct ordering of a multiset of labels.
fn orderings(labels: &[u16]) -> Vec<Key> {
    let mut cur: Vec<u16> = labels.to_vec();
    cur.sort_unstable();
    let mut out = vec![Key::from_slice(&cur)];
    let n = cur.len();
    if n < 2 {
        return out;
    }
    loop {
        let mut i = n - 1;
        while i > 0 && cur[i - 1] >= cur[i] {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        let mut j = n - 1;
        while cur[j] <= cur[i - 1] {
            j -= 1;
        }
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(Key::from_slice(&cur));
    }
}

fn concat(a: &[u16], b: &[u16]) -> Key {
    let mut k: Key = a.into();
    k.extend_from_slice(b);
    k
}

/// An element of the truncated completed symmetric algebra: sorted
/// admissible monomials in the `θ^α` with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CEElement(Tensor);

impl CEElement {
    pub fn zero() -> Self {
        CEElement(Tensor::new())
    }

    pub fn one() -> Self {
        CEElement(Tensor::basis(Key::new()))
    }

    pub fn generator(alpha: u16) -> Self {
        CEElement(Tensor::basis(Key::from_slice(&[alpha])))
    }

    pub fn monomial(m: Key) -> Self {
        CEElement(Tensor::basis(m))
    }

    pub fn terms(&self) -> &Tensor {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn get(&self, m: &[u16]) -> Rational {
        self.0.get(m)
    }

    fn add_signed(&mut self, m: Key, c: &Rational, odd: bool) {
        self.0.add_signed(m, c, odd);
    }

    /// The augmentation: the scalar part.
    pub fn augmentation(&self) -> Rational {
        self.0.get(&[])
    }
}

/// `CE_g`: generators `θ^α` of degree `1 - |x_α|` and the differential on
/// generators, both truncated at word length `W`.
#[derive(Clone, Debug)]
pub struct CEAlgebra {
    alg: LInfinityAlgebra,
    word_cap: usize,
    table: Vec<CEElement>,
    mutation: Option<Mutation>,
}

impl CEAlgebra {
    pub fn algebra(&self) -> &LInfinityAlgebra {
        &self.alg
    }

    pub fn space(&self) -> &Space {
        self.alg.space()
    }

    pub fn word_cap(&self) -> usize {
        self.word_cap
    }

    pub fn mutation(&self) -> Option<Mutation> {
        self.mutation
    }

    fn mutated(&self, m: Mutation) -> bool {
        self.mutation == Some(m)
    }

    pub fn generator_degree(&self, alpha: u16) -> i32 {
        1 - self.space().degree(alpha)
    }

    pub fn monomial_degree(&self, m: &[u16]) -> i32 {
        m.iter().map(|&a| self.generator_degree(a)).sum()
    }

    /// `δθ^α`.
    pub fn delta_of_generator(&self, alpha: u16) -> &CEElement {
        &self.table[alpha as usize]
    }

    pub fn table(&self) -> &[CEElement] {
        &self.table
    }

    /// Sort a word into a canonical monomial; `None` past the cap or when a
    /// repeated odd generator kills it.
    pub fn normalize(&self, m: &[u16]) -> Option<(Key, bool)> {
        if m.len() > self.word_cap {
            return None;
        }
        sym_normalize_by(m, |a| self.generator_degree(a))
    }

    pub fn mul(&self, a: &CEElement, b: &CEElement) -> CEElement {
        let mut out = CEElement::zero();
        for (m, c) in a.0.iter() {
            for (n, c2) in b.0.iter() {
                if let Some((k, o)) = self.normalize(&concat(m, n)) {
                    out.add_signed(k, &(c * c2), o);
                }
            }
        }
        out
    }

    /// `δ` by the Leibniz rule from its values on generators.
    pub fn apply_delta(&self, e: &CEElement) -> CEElement {
        let mut out = CEElement::zero();
        for (m, c) in e.0.iter() {
            let mut prefix_deg = 0i64;
            for p in 0..m.len() {
                let sign = !self.mutated(Mutation::DeltaLeibniz) && odd(prefix_deg);
                for (dm, dc) in self.table[m[p] as usize].0.iter() {
                    let mut w = concat(&m[..p], dm);
                    w.extend_from_slice(&m[p + 1..]);
                    if let Some((k, o)) = self.normalize(&w) {
                        out.add_signed(k, &(c * dc), o ^ sign);
                    }
                }
                prefix_deg += self.generator_degree(m[p]) as i64;
            }
        }
        out
    }

    pub fn render_monomial(&self, m: &[u16]) -> String {
        if m.is_empty() {
            return "1".into();
        }
        m.iter()
            .map(|&a| format!("θ^{}", self.space().label(a)))
            .collect::<Vec<_>>()
            .join("·")
    }

    pub fn render(&self, e: &CEElement) -> String {
        if e.is_zero() {
            return "0".into();
        }
        e.0.iter()
            .map(|(m, c)| format!("{c}·{}", self.render_monomial(m)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Build `CE_g` with word cap `W`.
pub fn build_ce_algebra(alg: &LInfinityAlgebra, word_cap: usize) -> CEAlgebra {
    build_ce_algebra_with(alg, word_cap, None)
}

/// As [`build_ce_algebra`], optionally with one sign mutated throughout the
/// construction.
pub fn build_ce_algebra_with(
    alg: &LInfinityAlgebra,
    word_cap: usize,
    mutation: Option<Mutation>,
) -> CEAlgebra {
    let g = alg.space();
    let mut a = CEAlgebra {
        alg: alg.clone(),
        word_cap,
        table: vec![CEElement::zero(); g.dim()],
        mutation,
    };
    let mut table = vec![CEElement::zero(); g.dim()];
    for (&i, br) in alg.brackets() {
        if i > word_cap {
            continue;
        }
        let scale = Rational::inv_factorial(i);
        for (x, _) in br.entries() {
            for y in orderings(x) {
                let Some((t, o)) = br.eval(&y, &[]) else {
                    continue;
                };
                let Some((m, om)) = a.normalize(&y) else {
                    continue;
                };
                let degs: Vec<i32> = y.iter().map(|&v| g.degree(v)).collect();
                let mut e = position_sum(
                    &degs,
                    if a.mutated(Mutation::DeltaPosition) {
                        -1
                    } else {
                        0
                    },
                );
                if !a.mutated(Mutation::DeltaReversal) {
                    e += reversal_degree(&degs);
                }
                for (out, c) in t.iter() {
                    table[out[0] as usize].add_signed(m.clone(), &(c * &scale), odd(e) ^ o ^ om);
                }
            }
        }
    }
    a.table = table;
    a
}

fn ce_witness(a: &CEAlgebra, input: String, m: &[u16], c: &Rational) -> Witness {
    Witness {
        component: format!("word length {}", m.len()),
        input,
        output: a.render_monomial(m),
        residual: c.clone(),
    }
}

/// `δ²θ^α = 0` for every generator, exact through the word cap.
pub fn check_delta_squared(a: &CEAlgebra) -> Verdict {
    let mut w = Vec::new();
    for alpha in 0..a.space().dim() as u16 {
        let r = a.apply_delta(a.delta_of_generator(alpha));
        for (m, c) in r.0.iter() {
            w.push(ce_witness(a, format!("θ^{}", a.space().label(alpha)), m, c));
        }
    }
    Verdict::from_witnesses("CE differential squares to zero", Some(a.word_cap), w)
}

/// An element of a semi-free module: `(monomial, generator) → coefficient`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CEModuleElement {
    terms: BTreeMap<(Key, Key), Rational>,
}

impl CEModuleElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn generator(v: Key) -> Self {
        let mut e = Self::zero();
        e.add_signed(Key::new(), v, &Rational::one(), false);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Key, Key), &Rational)> {
        self.terms.iter()
    }

    pub fn get(&self, m: &[u16], v: &[u16]) -> Rational {
        self.terms
            .get(&(Key::from_slice(m), Key::from_slice(v)))
            .cloned()
            .unwrap_or_default()
    }

    pub fn add_signed(&mut self, m: Key, v: Key, c: &Rational, odd: bool) {
        if c.is_zero() {
            return;
        }
        let k = (m, v);
        let e = self.terms.entry(k.clone()).or_default();
        if odd {
            *e -= c;
        } else {
            *e += c;
        }
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add_scaled(&mut self, other: &CEModuleElement, c: &Rational) {
        for ((m, v), x) in &other.terms {
            self.add_signed(m.clone(), v.clone(), &(x * c), false);
        }
    }

    pub fn minus(&self, other: &CEModuleElement) -> CEModuleElement {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }

    /// Drop every term of word length above `w`.
    pub fn truncated(mut self, w: usize) -> Self {
        self.terms.retain(|(m, _), _| m.len() <= w);
        self
    }
}

fn render_module_term(a: &CEAlgebra, factors: &Factors, m: &[u16], v: &[u16]) -> String {
    let vs = factors.labels(v).join("⊗");
    let vs = if vs.is_empty() { "1".to_string() } else { vs };
    if m.is_empty() {
        vs
    } else {
        format!("{}·{vs}", a.render_monomial(m))
    }
}

fn module_witnesses(
    a: &CEAlgebra,
    factors: &Factors,
    input: &str,
    r: &CEModuleElement,
    exact: usize,
    out: &mut Vec<Witness>,
) {
    for ((m, v), c) in r.iter() {
        if m.len() <= exact {
            out.push(Witness {
                component: format!("word length {}", m.len()),
                input: input.to_string(),
                output: render_module_term(a, factors, m, v),
                residual: c.clone(),
            });
        }
    }
}

/// Word lengths through which a family known through arity `known` gives
/// exact CE data.
fn exact_words(word_cap: usize, f: &Intertwiner) -> usize {
    match f.known_through() {
        Some(k) => word_cap.min(k.saturating_sub(1)),
        None => word_cap,
    }
}

/// The CE image of an intertwiner family read with a given position offset:
/// `Σ_i (1/ĩ!)(-1)^{rev + Σ_l |x_l|(l + offset)} θ^{x}·f^i_x(u)` on each
/// generator `u`, for word lengths through `exact`.
fn generator_table(
    a: &CEAlgebra,
    f: &Intertwiner,
    offset: i64,
    with_reversal: bool,
    exact: usize,
) -> BTreeMap<Key, CEModuleElement> {
    let g = a.space();
    let mut table: BTreeMap<Key, CEModuleElement> = f
        .source()
        .basis()
        .into_iter()
        .map(|u| (u, CEModuleElement::zero()))
        .collect();
    for (&i, comp) in f.components() {
        let it = i - 1;
        if it > exact {
            continue;
        }
        let scale = Rational::inv_factorial(it);
        for (full, _) in comp.entries() {
            let (x, u) = full.split_at(it);
            for y in orderings(x) {
                let Some((t, o)) = comp.eval(&y, u) else {
                    continue;
                };
                let Some((m, om)) = a.normalize(&y) else {
                    continue;
                };
                let degs: Vec<i32> = y.iter().map(|&v| g.degree(v)).collect();
                let mut e = position_sum(&degs, offset);
                if with_reversal {
                    e += reversal_degree(&degs);
                }
                let entry = table.entry(Key::from_slice(u)).or_default();
                for (w, c) in t.iter() {
                    entry.add_signed(m.clone(), w.clone(), &(c * &scale), odd(e) ^ o ^ om);
                }
            }
        }
    }
    table
}

/// The CE module `CE_g^V` of a representation: the differential on
/// generators, exact through word length `exact`.
#[derive(Clone, Debug)]
pub struct CEModule {
    factors: Factors,
    table: BTreeMap<Key, CEModuleElement>,
    exact: usize,
}

impl CEModule {
    pub fn factors(&self) -> &Factors {
        &self.factors
    }

    pub fn exact_through(&self) -> usize {
        self.exact
    }

    /// `d v` on a generator.
    pub fn d_generator(&self, v: &[u16]) -> &CEModuleElement {
        &self.table[v]
    }

    pub fn table(&self) -> &BTreeMap<Key, CEModuleElement> {
        &self.table
    }

    /// `d(a v) = (δa) v + (-1)^{|a|} a (dv)`.
    pub fn apply_d(&self, a: &CEAlgebra, e: &CEModuleElement) -> CEModuleElement {
        let mut out = CEModuleElement::zero();
        for ((m, v), c) in e.iter() {
            for (dm, dc) in a.apply_delta(&CEElement::monomial(m.clone())).0.iter() {
                out.add_signed(dm.clone(), v.clone(), &(c * dc), false);
            }
            let sign = !a.mutated(Mutation::ModuleLeibniz) && odd(a.monomial_degree(m) as i64);
            for ((n, w), c2) in self.table[v].iter() {
                if let Some((k, o)) = a.normalize(&concat(m, n)) {
                    out.add_signed(k, w.clone(), &(c * c2), o ^ sign);
                }
            }
        }
        out
    }
}

/// Build `CE_g^V` from a representation.
pub fn build_ce_module(a: &CEAlgebra, rep: &Representation) -> Result<CEModule> {
    if rep.g() != a.space() {
        return Err(Error::SpaceMismatch(
            "representation over a different algebra".into(),
        ));
    }
    let exact = exact_words(a.word_cap, rep.rho());
    let table = generator_table(
        a,
        rep.rho(),
        if a.mutated(Mutation::ModulePosition) {
            0
        } else {
            -1
        },
        !a.mutated(Mutation::ModuleReversal),
        exact,
    );
    Ok(CEModule {
        factors: rep.factors().clone(),
        table,
        exact,
    })
}

/// `d² = 0` on every generator of a module, exact through its bound.
pub fn check_d_squared(a: &CEAlgebra, module: &CEModule) -> Verdict {
    let mut w = Vec::new();
    for (v, dv) in module.table.iter() {
        let r = module.apply_d(a, dv);
        let label = render_module_term(a, &module.factors, &[], v);
        module_witnesses(a, &module.factors, &label, &r, module.exact, &mut w);
    }
    Verdict::from_witnesses(
        "CE module differential squares to zero",
        Some(module.exact),
        w,
    )
}

/// A base-linear module map given on generators.
#[derive(Clone, Debug)]
pub struct CEMorphism {
    degree: i32,
    source: Factors,
    target: Factors,
    table: BTreeMap<Key, CEModuleElement>,
    exact: usize,
}

impl CEMorphism {
    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn source(&self) -> &Factors {
        &self.source
    }

    pub fn target(&self) -> &Factors {
        &self.target
    }

    pub fn exact_through(&self) -> usize {
        self.exact
    }

    pub fn on_generator(&self, u: &[u16]) -> &CEModuleElement {
        &self.table[u]
    }

    /// `F(a u) = (-1)^{|F||a|} a F(u)`.
    pub fn apply(&self, a: &CEAlgebra, e: &CEModuleElement) -> CEModuleElement {
        let mut out = CEModuleElement::zero();
        for ((m, u), c) in e.iter() {
            let sign = !a.mutated(Mutation::BaseLinearity)
                && odd(self.degree as i64 * a.monomial_degree(m) as i64);
            for ((n, w), c2) in self.table[u].iter() {
                if let Some((k, o)) = a.normalize(&concat(m, n)) {
                    out.add_signed(k, w.clone(), &(c * c2), o ^ sign);
                }
            }
        }
        out
    }
}

/// `CE^f`, exact through the word lengths where `f` is known.
pub fn ce_of_morphism(a: &CEAlgebra, f: &Intertwiner) -> Result<CEMorphism> {
    if f.g() != a.space() {
        return Err(Error::SpaceMismatch(
            "intertwiner over a different algebra".into(),
        ));
    }
    let exact = exact_words(a.word_cap, f);
    let offset = if a.mutated(Mutation::MorphismDegree) {
        0
    } else {
        f.degree() as i64
    };
    let table = generator_table(a, f, offset, !a.mutated(Mutation::MorphismReversal), exact);
    Ok(CEMorphism {
        degree: f.degree(),
        source: f.source().clone(),
        target: f.target().clone(),
        table,
        exact,
    })
}

/// Relative tensor product in free normal form:
/// `(a u) ⊗ (b v) = (-1)^{|u||b|} (ab)(u⊗v)`.
pub fn relative_tensor(
    a: &CEAlgebra,
    left: &CEModuleElement,
    left_factors: &Factors,
    right: &CEModuleElement,
) -> CEModuleElement {
    let mut out = CEModuleElement::zero();
    for ((m, u), c) in left.iter() {
        let du = left_factors.degree(u) as i64;
        for ((n, v), c2) in right.iter() {
            let sign = !a.mutated(Mutation::TensorSign) && odd(du * a.monomial_degree(n) as i64);
            if let Some((k, o)) = a.normalize(&concat(m, n)) {
                out.add_signed(k, concat(u, v), &(c * c2), o ^ sign);
            }
        }
    }
    out
}

/// The symmetric braiding `s(u⊗v) = (-1)^{|u||v|} v⊗u` on generators.
pub fn swap_on_generator(
    a: &CEAlgebra,
    u_factors: &Factors,
    v_factors: &Factors,
    uv: &[u16],
) -> CEModuleElement {
    let (u, v) = uv.split_at(u_factors.len());
    let sign = !a.mutated(Mutation::SwapSign)
        && odd(u_factors.degree(u) as i64 * v_factors.degree(v) as i64);
    let mut out = CEModuleElement::zero();
    out.add_signed(Key::new(), concat(v, u), &Rational::one(), sign);
    out
}

fn compare_on_generators(
    a: &CEAlgebra,
    check: &str,
    source: &Factors,
    target: &Factors,
    exact: usize,
    lhs: impl Fn(&Key) -> CEModuleElement,
    rhs: impl Fn(&Key) -> CEModuleElement,
) -> Verdict {
    let mut w = Vec::new();
    for u in source.basis() {
        let r = lhs(&u).minus(&rhs(&u));
        let label = render_module_term(a, source, &[], &u);
        module_witnesses(a, target, &label, &r, exact, &mut w);
    }
    Verdict::from_witnesses(check, Some(exact), w)
}

/// `CE^{gf} = CE^g ∘ CE^f` on generators.
pub fn check_functoriality(
    a: &CEAlgebra,
    f: &Intertwiner,
    g: &Intertwiner,
    cap: usize,
) -> Result<Verdict> {
    let gf = juxtapose(g, f, cap)?;
    let (cf, cg, cgf) = (
        ce_of_morphism(a, f)?,
        ce_of_morphism(a, g)?,
        ce_of_morphism(a, &gf)?,
    );
    let exact = cf.exact.min(cg.exact).min(cgf.exact);
    Ok(compare_on_generators(
        a,
        "CE functoriality",
        f.source(),
        g.target(),
        exact,
        |u| cgf.on_generator(u).clone(),
        |u| cg.apply(a, cf.on_generator(u)),
    ))
}

/// `CE^{⟦ρ,f⟧} = d∘CE^f - (-1)^{|f|} CE^f∘d` on generators.
pub fn check_dg_compatibility(
    a: &CEAlgebra,
    u: &Representation,
    v: &Representation,
    f: &Intertwiner,
    cap: usize,
) -> Result<Verdict> {
    let df = hom_differential(a.algebra(), u, v, f, cap)?;
    let (mu, mv) = (build_ce_module(a, u)?, build_ce_module(a, v)?);
    let (cf, cdf) = (ce_of_morphism(a, f)?, ce_of_morphism(a, &df)?);
    let exact = cf.exact.min(cdf.exact).min(mu.exact).min(mv.exact);
    let sign = -Rational::one().signed(odd(f.degree() as i64));
    Ok(compare_on_generators(
        a,
        "CE dg-compatibility",
        f.source(),
        f.target(),
        exact,
        |x| cdf.on_generator(x).clone(),
        |x| {
            let mut r = mv.apply_d(a, cf.on_generator(x));
            r.add_scaled(&cf.apply(a, mu.d_generator(x)), &sign);
            r
        },
    ))
}

/// `CE^{U⊙V}` has the tensor-module differential
/// `d(u⊗v) = (du)⊗v + (-1)^{|u|} u⊗(dv)` on generators.
pub fn check_monoidal_objects(
    a: &CEAlgebra,
    u: &Representation,
    v: &Representation,
    cap: usize,
) -> Result<Verdict> {
    let uv = tensor_rep(u, v, cap)?;
    let (mu, mv, muv) = (
        build_ce_module(a, u)?,
        build_ce_module(a, v)?,
        build_ce_module(a, &uv)?,
    );
    let exact = mu.exact.min(mv.exact).min(muv.exact);
    let uf = u.factors();
    Ok(compare_on_generators(
        a,
        "CE monoidal on objects",
        uv.factors(),
        uv.factors(),
        exact,
        |k| muv.d_generator(k).clone(),
        |k| {
            let (x, y) = k.split_at(uf.len());
            let mut r = relative_tensor(
                a,
                mu.d_generator(x),
                uf,
                &CEModuleElement::generator(y.into()),
            );
            let s = Rational::one().signed(odd(uf.degree(x) as i64));
            r.add_scaled(
                &relative_tensor(
                    a,
                    &CEModuleElement::generator(x.into()),
                    uf,
                    mv.d_generator(y),
                ),
                &s,
            );
            r
        },
    ))
}

/// `CE^{f⊙g}(u⊗v) = (-1)^{|g||u|} CE^f(u) ⊗ CE^g(v)`.
pub fn check_monoidal_morphisms(
    a: &CEAlgebra,
    f: &Intertwiner,
    g: &Intertwiner,
    cap: usize,
) -> Result<Verdict> {
    let fg = odot(f, g, cap)?;
    let (cf, cg, cfg) = (
        ce_of_morphism(a, f)?,
        ce_of_morphism(a, g)?,
        ce_of_morphism(a, &fg)?,
    );
    let exact = cf.exact.min(cg.exact).min(cfg.exact);
    let uf = f.source().clone();
    let uf_out = f.target().clone();
    Ok(compare_on_generators(
        a,
        "CE monoidal on morphisms",
        fg.source(),
        fg.target(),
        exact,
        |k| cfg.on_generator(k).clone(),
        |k| {
            let (x, y) = k.split_at(uf.len());
            let s = odd(g.degree() as i64 * uf.degree(x) as i64);
            let r = relative_tensor(a, cf.on_generator(x), &uf_out, cg.on_generator(y));
            let mut out = CEModuleElement::zero();
            out.add_scaled(&r, &Rational::one().signed(s));
            out
        },
    ))
}

/// `CE^{γ_{U,V}}` is the Koszul swap.
pub fn check_braiding_preserved(a: &CEAlgebra, u: &Factors, v: &Factors) -> Result<Verdict> {
    let gm = gamma(a.space(), u, v);
    let cg = ce_of_morphism(a, &gm)?;
    let source = u.concat(v);
    Ok(compare_on_generators(
        a,
        "CE preserves the symmetric braiding",
        &source,
        &v.concat(u),
        cg.exact,
        |k| cg.on_generator(k).clone(),
        |k| swap_on_generator(a, u, v, k),
    ))
}

/// `CE^𝕂 = CE_g`: the trivial module has no differential on its generator,
/// so `d(a·1) = (δa)·1`.
pub fn check_unit(a: &CEAlgebra) -> Result<Verdict> {
    let k = build_ce_module(a, &trivial(a.algebra()))?;
    let mut w = Vec::new();
    module_witnesses(a, k.factors(), "1", k.d_generator(&[]), k.exact, &mut w);
    Ok(Verdict::from_witnesses(
        "CE preserves the unit",
        Some(k.exact),
        w,
    ))
}

/// Representations `U, V, W` with intertwiners `f: U ⇝ V`, `g: V ⇝ W`.
#[derive(Clone, Debug)]
pub struct CeInstance {
    pub u: Representation,
    pub v: Representation,
    pub w: Representation,
    pub f: Intertwiner,
    pub g: Intertwiner,
}

#[derive(Clone, Debug, Serialize)]
pub struct CeReport {
    pub word_cap: usize,
    pub verdicts: Vec<Verdict>,
    pub passed: bool,
}

/// Every check of the equivalence on one instance.
pub fn check_instance(a: &CEAlgebra, inst: &CeInstance, cap: usize) -> Result<CeReport> {
    let mut v = vec![check_delta_squared(a), check_unit(a)?];
    for r in [&inst.u, &inst.v, &inst.w] {
        v.push(check_d_squared(a, &build_ce_module(a, r)?));
    }
    v.push(check_functoriality(a, &inst.f, &inst.g, cap)?);
    v.push(check_dg_compatibility(a, &inst.u, &inst.v, &inst.f, cap)?);
    v.push(check_dg_compatibility(a, &inst.v, &inst.w, &inst.g, cap)?);
    v.push(check_monoidal_objects(a, &inst.u, &inst.v, cap)?);
    v.push(check_monoidal_morphisms(a, &inst.f, &inst.g, cap)?);
    v.push(check_braiding_preserved(
        a,
        inst.u.factors(),
        inst.v.factors(),
    )?);
    let passed = v.iter().all(|x| x.passed);
    Ok(CeReport {
        word_cap: a.word_cap,
        verdicts: v,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::repcat::{adjoint, identity};

    const E: u16 = 0;
    const F: u16 = 1;
    const H: u16 = 2;
    const C: u16 = 3;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn key(k: &[u16]) -> Key {
        Key::from_slice(k)
    }

    #[test]
    fn reversal_degrees() {
        assert_eq!(reversal_degree(&[]), 0);
        assert_eq!(reversal_degree(&[1, 1]), 1);
        assert_eq!(reversal_degree(&[1, 2, 1]), 5);
        assert_eq!(reversal_degree(&[0, 3, 0]), 0);
    }

    #[test]
    fn sl2_generators() {
        // degree-0 inputs: δθ^α = Σ_{a<b} c^α_{ab} θ^a θ^b
        let a = build_ce_algebra(&fixtures::sl2(), 4);
        let dh = a.delta_of_generator(H);
        assert_eq!(dh.get(&[E, F]), r(1));
        assert_eq!(dh.terms().len(), 1);
        let de = a.delta_of_generator(E);
        assert_eq!(de.get(&[E, H]), r(-2));
        assert_eq!(de.terms().len(), 1);
        let df = a.delta_of_generator(F);
        assert_eq!(df.get(&[F, H]), r(2));
        assert_eq!(df.terms().len(), 1);
        assert!(check_delta_squared(&a).passed);
    }

    #[test]
    fn generator_degrees_shift() {
        let a = build_ce_algebra(&fixtures::string_lie2(), 4);
        assert_eq!(a.generator_degree(E), 1);
        assert_eq!(a.generator_degree(C), 2);
        // odd generators square to zero, even ones do not
        assert!(a.normalize(&[E, E]).is_none());
        assert_eq!(a.normalize(&[C, C]), Some((key(&[C, C]), false)));
        assert_eq!(a.normalize(&[F, E]), Some((key(&[E, F]), true)));
        assert!(a.normalize(&[C, C, C, C, C]).is_none());
    }

    #[test]
    fn string_cubic_term() {
        // ℓ^3(e,f,h) = κ(e,[f,h]) c = 8c; the 1/3! cancels the six orderings
        let a = build_ce_algebra(&fixtures::string_lie2(), 6);
        let dc = a.delta_of_generator(C);
        assert_eq!(dc.get(&[E, F, H]), r(8));
        assert_eq!(dc.terms().len(), 1);
        assert!(check_delta_squared(&a).passed);
    }

    #[test]
    fn delta_is_a_derivation() {
        let a = build_ce_algebra(&fixtures::string_lie2(), 5);
        let n = a.space().dim() as u16;
        for x in 0..n {
            for y in 0..n {
                let gx = CEElement::generator(x);
                let gy = CEElement::generator(y);
                let lhs = a.apply_delta(&a.mul(&gx, &gy));
                let mut rhs = a.mul(&a.apply_delta(&gx), &gy);
                let second = a.mul(&gx, &a.apply_delta(&gy));
                for (m, c) in second.terms().iter() {
                    rhs.add_signed(m.clone(), c, odd(a.generator_degree(x) as i64));
                }
                assert_eq!(lhs, rhs, "δ(θ^{x} θ^{y})");
            }
        }
    }

    #[test]
    fn coefficients_stay_integral() {
        for alg in [fixtures::sl2(), fixtures::string_lie2(), fixtures::dgla()] {
            let a = build_ce_algebra(&alg, 6);
            for d in a.table() {
                for (_, c) in d.terms().iter() {
                    assert!(c.is_integer(), "{}", a.render(d));
                }
            }
        }
    }

    #[test]
    fn raising_the_cap_only_adds_longer_words() {
        let alg = fixtures::string_lie2();
        let small = build_ce_algebra(&alg, 4);
        for w in [6, 8] {
            let big = build_ce_algebra(&alg, w);
            for (s, b) in small.table().iter().zip(big.table()) {
                for (m, c) in b.terms().iter() {
                    if m.len() <= 4 {
                        assert_eq!(&s.get(m), c);
                    }
                }
            }
            assert!(check_delta_squared(&big).passed);
        }
    }

    #[test]
    fn non_lie_bracket_breaks_delta_squared() {
        let mut alg = fixtures::sl2();
        alg.add_bracket_value(&[H, E], &Tensor::basis(key(&[E])))
            .unwrap();
        let a = build_ce_algebra(&alg, 4);
        assert!(!check_delta_squared(&a).passed);
    }

    #[test]
    fn adjoint_module_differential() {
        // the adjoint action at arity 2 is π_1^2 = -ℓ^2, so
        // d e = -θ^f [f,e] - θ^h [h,e] = θ^f h - 2θ^h e
        let alg = fixtures::sl2();
        let a = build_ce_algebra(&alg, 4);
        let ad = adjoint(&alg);
        let m = build_ce_module(&a, &ad).unwrap();
        let de = m.d_generator(&[E]);
        assert_eq!(de.get(&[F], &[H]), r(1));
        assert_eq!(de.get(&[H], &[E]), r(-2));
        assert_eq!(de.iter().count(), 2);
        assert!(check_d_squared(&a, &m).passed);
        // acting by +ℓ^2 instead is not compatible with δ
        let flipped = Representation::new("-ad", ad.rho().neg()).unwrap();
        assert!(!check_d_squared(&a, &build_ce_module(&a, &flipped).unwrap()).passed);
    }

    #[test]
    fn non_representation_breaks_d_squared() {
        let alg = fixtures::sl2();
        let a = build_ce_algebra(&alg, 4);
        let ad = adjoint(&alg);
        let bad = Representation::new("2·ad", ad.rho().scaled(&r(2))).unwrap();
        assert!(!check_d_squared(&a, &build_ce_module(&a, &bad).unwrap()).passed);
    }

    #[test]
    fn identity_goes_to_identity() {
        let alg = fixtures::string_lie2();
        let a = build_ce_algebra(&alg, 4);
        let ad = adjoint(&alg);
        let id = ce_of_morphism(&a, &identity(alg.space(), ad.factors())).unwrap();
        for v in ad.factors().basis() {
            assert_eq!(id.on_generator(&v), &CEModuleElement::generator(v.clone()));
        }
    }

    #[test]
    fn string_adjoint_instance_passes() {
        let alg = fixtures::string_lie2();
        let ad = adjoint(&alg);
        let mut gen =
            crate::random::InstanceGenerator::new(5, crate::random::GeneratorConfig::default())
                .unwrap();
        let sp = alg.space();
        let f = gen.intertwiner(sp, ad.factors(), ad.factors());
        let g = gen.intertwiner(sp, ad.factors(), ad.factors());
        let inst = CeInstance {
            u: ad.clone(),
            v: ad.clone(),
            w: ad.clone(),
            f,
            g,
        };
        assert!(
            check_instance(&build_ce_algebra(&alg, 4), &inst, 4)
                .unwrap()
                .passed
        );
    }
}
