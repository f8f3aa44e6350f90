//! Representations of a homotopy Lie algebra and their intertwiners: the
//! juxtaposition and odot products, the hom differential, the braiding `γ`
//! and the structure maps `ℓ_U`, `ϱ_f`.
//!
//! An intertwiner `f: U ⇝ V` of degree `|f|` is a family of maps
//! `f^i: g^{⊗ĩ} ⊗ U → V` of degree `|f| - ĩ`, `i ≥ 1`, skew in the algebra
//! slots, with the module slot kept last. Families are either exact at every
//! arity or known through some arity; every construction tracks which.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::{
    apply_shuffler, project_symmetric, skew_keys, subsets, unshuffle_parity, Factors,
    GradedElement, Key, Space, Tensor, Variant,
};
use crate::linfty::{split_mask, LInfinityAlgebra};
use crate::multimap::SkewMultiMap;
use crate::rational::Rational;
use crate::report::{Verdict, Witness};

/// Stands for "every arity" in exactness bounds and "no nonzero component"
/// in support bounds.
pub const UNBOUNDED: usize = usize::MAX / 4;

#[inline]
fn odd(n: i32) -> bool {
    n & 1 == 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Intertwiner {
    g: Space,
    source: Factors,
    target: Factors,
    degree: i32,
    comps: BTreeMap<usize, SkewMultiMap>,
    /// Components are exact through this arity; `UNBOUNDED` when the stored
    /// components are the whole family.
    known: usize,
}

impl Intertwiner {
    pub fn zero(g: &Space, source: Factors, target: Factors, degree: i32) -> Self {
        Intertwiner {
            g: g.clone(),
            source,
            target,
            degree,
            comps: BTreeMap::new(),
            known: UNBOUNDED,
        }
    }

    pub fn g(&self) -> &Space {
        &self.g
    }

    pub fn source(&self) -> &Factors {
        &self.source
    }

    pub fn target(&self) -> &Factors {
        &self.target
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    /// Arity through which the family is exact, `None` if exact everywhere.
    pub fn known_through(&self) -> Option<usize> {
        (self.known < UNBOUNDED).then_some(self.known)
    }

    pub fn is_complete(&self) -> bool {
        self.known >= UNBOUNDED
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Mark the family as known only through arity `a`, dropping anything
    /// above it.
    pub fn truncated(mut self, a: usize) -> Self {
        self.comps.retain(|&i, _| i <= a);
        self.known = self.known.min(a);
        self
    }

    pub fn components(&self) -> impl Iterator<Item = (&usize, &SkewMultiMap)> {
        self.comps.iter()
    }

    pub fn component(&self, i: usize) -> Option<&SkewMultiMap> {
        self.comps.get(&i)
    }

    pub fn empty_component(&self, i: usize) -> SkewMultiMap {
        SkewMultiMap::new(
            self.g.clone(),
            i - 1,
            self.source.clone(),
            self.target.clone(),
            self.degree - (i as i32 - 1),
        )
    }

    /// Add `value` to `f^i(xs, u)`; `xs` may be in any order.
    pub fn add_value(&mut self, xs: &[u16], u: &[u16], value: &Tensor) -> Result<()> {
        let i = xs.len() + 1;
        if i > self.known {
            return Err(Error::BeyondCap {
                arity: i,
                known: self.known,
            });
        }
        let empty = self.empty_component(i);
        let c = self.comps.entry(i).or_insert(empty);
        c.insert(xs, u, value)?;
        if c.is_zero() {
            self.comps.remove(&i);
        }
        Ok(())
    }

    pub fn set_component(&mut self, i: usize, map: SkewMultiMap) -> Result<()> {
        let e = self.empty_component(i);
        if map.arity() != i - 1
            || map.degree() != e.degree()
            || map.module() != &self.source
            || map.target() != &self.target
        {
            return Err(Error::Shape(format!("not an arity-{i} component")));
        }
        if map.is_zero() {
            self.comps.remove(&i);
        } else {
            self.comps.insert(i, map);
        }
        Ok(())
    }

    /// Lowest arity that can be nonzero.
    fn low(&self) -> usize {
        match self.comps.keys().next() {
            Some(&i) => i,
            None => {
                if self.known >= UNBOUNDED {
                    UNBOUNDED
                } else {
                    self.known + 1
                }
            }
        }
    }

    /// Highest arity that can be nonzero.
    fn support(&self) -> usize {
        if self.known >= UNBOUNDED {
            self.comps.keys().next_back().copied().unwrap_or(0)
        } else {
            UNBOUNDED
        }
    }

    fn put(&mut self, i: usize, entries: Vec<(Key, Tensor)>) {
        let mut m = self.empty_component(i);
        for (k, v) in entries {
            m.put(k, v);
        }
        if !m.is_zero() {
            self.comps.insert(i, m);
        }
    }

    fn same_shape(&self, other: &Intertwiner) -> Result<()> {
        if self.g != other.g
            || self.source != other.source
            || self.target != other.target
            || self.degree != other.degree
        {
            return Err(Error::SpaceMismatch(format!(
                "intertwiners {:?} ⇝ {:?} of degree {} and {:?} ⇝ {:?} of degree {}",
                self.source, self.target, self.degree, other.source, other.target, other.degree
            )));
        }
        Ok(())
    }

    /// `self + c·other`, exact through the smaller of the two bounds.
    pub fn plus_scaled(&self, other: &Intertwiner, c: &Rational) -> Result<Intertwiner> {
        self.same_shape(other)?;
        let known = self.known.min(other.known);
        let mut out = self.clone().truncated(known);
        for (&i, m) in other.comps.iter().filter(|(&i, _)| i <= known) {
            let e = out.comps.entry(i).or_insert_with(|| m.zero_like());
            e.add_scaled(m, c)?;
            if e.is_zero() {
                out.comps.remove(&i);
            }
        }
        Ok(out)
    }

    pub fn plus(&self, other: &Intertwiner) -> Result<Intertwiner> {
        self.plus_scaled(other, &Rational::one())
    }

    pub fn minus(&self, other: &Intertwiner) -> Result<Intertwiner> {
        self.plus_scaled(other, &-Rational::one())
    }

    pub fn scaled(&self, c: &Rational) -> Intertwiner {
        let mut out = self.clone();
        out.comps = self
            .comps
            .iter()
            .map(|(&i, m)| (i, m.scaled(c)))
            .filter(|(_, m)| !m.is_zero())
            .collect();
        out
    }

    pub fn neg(&self) -> Intertwiner {
        self.scaled(&-Rational::one())
    }

    /// Nonzero entries of the family, through arity `cap`.
    pub fn witnesses(&self, cap: usize) -> Vec<Witness> {
        let mut w = Vec::new();
        for (&i, m) in self.comps.iter().filter(|(&i, _)| i <= cap) {
            for (key, t) in m.entries() {
                for (out, c) in t.iter() {
                    w.push(Witness {
                        component: format!("arity {i}"),
                        input: m.render_full_key(key),
                        output: self.target.render(out),
                        residual: c.clone(),
                    });
                }
            }
        }
        w
    }

    /// Verdict that this family vanishes through `cap` (or everywhere when
    /// it is complete).
    pub fn zero_verdict(&self, check: impl Into<String>, cap: usize) -> Verdict {
        let through = cap.min(self.known);
        let exact = if self.known >= UNBOUNDED && self.support() <= cap {
            None
        } else {
            Some(through)
        };
        Verdict::from_witnesses(check, exact, self.witnesses(through))
    }

    /// Verdict that `self == other` through `cap`.
    pub fn equality_verdict(
        &self,
        other: &Intertwiner,
        check: impl Into<String>,
        cap: usize,
    ) -> Result<Verdict> {
        Ok(self.minus(other)?.zero_verdict(check, cap))
    }

    /// Value of `f^i` on algebra inputs in any order: tensor and sign parity.
    pub fn eval(&self, xs: &[u16], u: &[u16]) -> Option<(&Tensor, bool)> {
        self.comps.get(&(xs.len() + 1))?.eval(xs, u)
    }
}

/// Every canonical `(x, u)` key of arity `i` for a family with source `source`.
fn input_keys(g: &Space, i: usize, source: &Factors) -> Vec<(Key, Key)> {
    let ub = source.basis();
    let mut v = Vec::new();
    for x in skew_keys(g, i - 1) {
        for u in &ub {
            v.push((x.clone(), u.clone()));
        }
    }
    v
}

fn full_key(x: &[u16], u: &[u16]) -> Key {
    let mut k: Key = x.into();
    k.extend_from_slice(u);
    k
}

/// Arity range and exactness of a composite whose arity-`i` component sums
/// `a^j ∘ b^k` over `j + k = i + 1`.
fn composite_bounds(a: &Intertwiner, b: &Intertwiner, cap: usize) -> (usize, usize) {
    let avail = (a.known.saturating_add(b.low()).saturating_sub(1))
        .min(b.known.saturating_add(a.low()).saturating_sub(1))
        .min(UNBOUNDED);
    let support = if a.support() >= UNBOUNDED || b.support() >= UNBOUNDED {
        UNBOUNDED
    } else {
        (a.support() + b.support()).saturating_sub(1)
    };
    let top = cap.min(avail).min(support);
    let known = if support <= cap.min(avail) {
        UNBOUNDED
    } else {
        cap.min(avail)
    };
    (top, known)
}

/// The identity intertwiner `𝟙_U`.
pub fn identity(g: &Space, u: &Factors) -> Intertwiner {
    let mut f = Intertwiner::zero(g, u.clone(), u.clone(), 0);
    let entries = u
        .basis()
        .into_iter()
        .map(|k| (k.clone(), Tensor::basis(k)))
        .collect();
    f.put(1, entries);
    f
}

/// The symmetric braiding `γ_{U,V}: U⊙V ⇝ V⊙U`, `u⊗v ↦ (-1)^{|u||v|} v⊗u`.
pub fn gamma(g: &Space, u: &Factors, v: &Factors) -> Intertwiner {
    let mut f = Intertwiner::zero(g, u.concat(v), v.concat(u), 0);
    let n = u.len();
    let entries = f
        .source
        .basis()
        .into_iter()
        .map(|k| {
            let (a, b) = k.split_at(n);
            let mut t = Tensor::new();
            t.add_signed(
                full_key(b, a),
                &Rational::one(),
                odd(u.degree(a) * v.degree(b)),
            );
            (k, t)
        })
        .collect();
    f.put(1, entries);
    f
}

/// A degree-`d` intertwiner with a single arity-1 component given by `map`
/// on basis keys.
pub fn strict(
    g: &Space,
    source: Factors,
    target: Factors,
    degree: i32,
    map: impl Fn(&Key) -> Tensor,
) -> Intertwiner {
    let mut f = Intertwiner::zero(g, source, target, degree);
    let entries = f.source.basis().into_iter().map(|k| {
        let t = map(&k);
        (k, t)
    });
    let entries: Vec<_> = entries.collect();
    f.put(1, entries);
    f
}

/// The shuffler or symmetriser with the given block sizes acting on
/// `g^{⊗n}` as a strict intertwiner.
pub fn shuffler_map(g: &Space, variant: Variant, blocks: &[usize]) -> Intertwiner {
    let n: usize = blocks.iter().sum();
    let fac = Factors::power(g, n);
    strict(g, fac.clone(), fac.clone(), 0, |k| {
        apply_shuffler(
            variant,
            blocks,
            &GradedElement::basis(fac.clone(), k.clone()),
        )
        .expect("uniform factors")
        .terms
    })
}

/// The averaging projector onto graded (anti)symmetric tensors in `g^{⊗n}`,
/// a strict intertwiner.
pub fn symmetric_projector(g: &Space, variant: Variant, n: usize) -> Intertwiner {
    let fac = Factors::power(g, n);
    strict(g, fac.clone(), fac.clone(), 0, |k| {
        project_symmetric(variant, &GradedElement::basis(fac.clone(), k.clone()))
            .expect("uniform factors")
            .terms
    })
}

/// `ℓ_U: U ⇝ g⊙U` of degree 2 with `ℓ_U^i = ℓ^{ĩ} ⊗ 1_U`.
pub fn ell_u(alg: &LInfinityAlgebra, u: &Factors) -> Intertwiner {
    let g = alg.space();
    let mut f = Intertwiner::zero(g, u.clone(), alg.g_factors().concat(u), 2);
    let ub = u.basis();
    for (&m, br) in alg.brackets() {
        let mut entries = Vec::new();
        for (x, t) in br.entries() {
            for uk in &ub {
                let mut val = Tensor::new();
                for (y, c) in t.iter() {
                    val.add_term(full_key(y, uk), c);
                }
                entries.push((full_key(x, uk), val));
            }
        }
        f.put(m + 1, entries);
    }
    f
}

/// `ϱ_f: g⊙U ⇝ V` of degree `|f| - 1` with `ϱ_f^i(x, y⊗u) = (-1)^i f^{i+1}(x, y, u)`.
pub fn varrho(f: &Intertwiner, cap: usize) -> Intertwiner {
    let g = &f.g;
    let source = Factors::single(g.clone()).concat(&f.source);
    let mut out = Intertwiner::zero(g, source, f.target.clone(), f.degree - 1);
    let known = if f.known >= UNBOUNDED {
        UNBOUNDED
    } else {
        f.known.saturating_sub(1)
    };
    let top = cap.min(known).min(f.support().saturating_sub(1));
    for i in 1..=top {
        if !f.comps.contains_key(&(i + 1)) {
            continue;
        }
        let entries: Vec<(Key, Tensor)> = input_keys(g, i, &out.source)
            .into_par_iter()
            .filter_map(|(x, yu)| {
                let mut args: Key = x.clone();
                args.push(yu[0]);
                let (t, o) = f.eval(&args, &yu[1..])?;
                Some((
                    full_key(&x, &yu),
                    t.scaled(&Rational::one().signed(o ^ (i % 2 == 1))),
                ))
            })
            .collect();
        out.put(i, entries);
    }
    out.known = if known >= UNBOUNDED && f.support().saturating_sub(1) <= cap {
        UNBOUNDED
    } else {
        cap.min(known)
    };
    out
}

/// Juxtaposition `g f` (first `f`, then `g`).
pub fn juxtapose(gm: &Intertwiner, f: &Intertwiner, cap: usize) -> Result<Intertwiner> {
    if f.target != gm.source || f.g != gm.g {
        return Err(Error::SpaceMismatch(format!(
            "cannot compose {:?} ⇝ {:?} after {:?} ⇝ {:?}",
            gm.source, gm.target, f.source, f.target
        )));
    }
    let g = &f.g;
    let mut out = Intertwiner::zero(g, f.source.clone(), gm.target.clone(), gm.degree + f.degree);
    let (top, known) = composite_bounds(gm, f, cap);
    for i in 1..=top {
        let pairs: Vec<(usize, &SkewMultiMap, &SkewMultiMap)> = (1..=i)
            .filter_map(|k| Some((k, gm.comps.get(&(i + 1 - k))?, f.comps.get(&k)?)))
            .collect();
        if pairs.is_empty() {
            continue;
        }
        let entries: Vec<(Key, Tensor)> = input_keys(g, i, &f.source)
            .into_par_iter()
            .filter_map(|(x, u)| {
                let degs: Vec<i32> = x.iter().map(|&v| g.degree(v)).collect();
                let mut val = Tensor::new();
                for &(k, gj, fk) in &pairs {
                    let (jt, kt) = ((i - k) as i32, k as i32 - 1);
                    let base = odd((gm.degree - jt) * kt);
                    for mask in subsets(i - 1, i - k) {
                        let (xs, xc) = split_mask(&x, mask);
                        let Some(fv) = fk.get_sorted(&xc, &u) else {
                            continue;
                        };
                        let s = base
                            ^ unshuffle_parity(&degs, mask, true)
                            ^ odd((f.degree - kt) * g.key_degree(&xs));
                        for (z, c) in fv.iter() {
                            if let Some(gv) = gj.get_sorted(&xs, z) {
                                val.add_scaled(gv, &c.clone().signed(s));
                            }
                        }
                    }
                }
                (!val.is_zero()).then(|| (full_key(&x, &u), val))
            })
            .collect();
        out.put(i, entries);
    }
    out.known = known;
    Ok(out)
}

/// Juxtaposition of a chain `h_1 h_2 ⋯ h_r` (rightmost applied first).
pub fn juxtapose_all(chain: &[&Intertwiner], cap: usize) -> Result<Intertwiner> {
    let (last, rest) = chain.split_last().expect("nonempty chain");
    let mut acc = (*last).clone();
    for h in rest.iter().rev() {
        acc = juxtapose(h, &acc, cap)?;
    }
    Ok(acc)
}

/// The odot product `f ⊙ g: U⊙V ⇝ U'⊙V'`.
pub fn odot(f: &Intertwiner, gm: &Intertwiner, cap: usize) -> Result<Intertwiner> {
    if f.g != gm.g {
        return Err(Error::SpaceMismatch("odot over different algebras".into()));
    }
    let g = &f.g;
    let source = f.source.concat(&gm.source);
    let nu = f.source.len();
    let mut out = Intertwiner::zero(g, source, f.target.concat(&gm.target), f.degree + gm.degree);
    let (top, known) = composite_bounds(f, gm, cap);
    for i in 1..=top {
        let pairs: Vec<(usize, &SkewMultiMap, &SkewMultiMap)> = (1..=i)
            .filter_map(|k| Some((k, f.comps.get(&(i + 1 - k))?, gm.comps.get(&k)?)))
            .collect();
        if pairs.is_empty() {
            continue;
        }
        let entries: Vec<(Key, Tensor)> = input_keys(g, i, &out.source)
            .into_par_iter()
            .filter_map(|(x, uv)| {
                let (u, v) = uv.split_at(nu);
                let du = f.source.degree(u);
                let degs: Vec<i32> = x.iter().map(|&w| g.degree(w)).collect();
                let mut val = Tensor::new();
                for &(k, fj, gk) in &pairs {
                    let (jt, kt) = ((i - k) as i32, k as i32 - 1);
                    let base = odd((f.degree - jt) * kt);
                    for mask in subsets(i - 1, i - k) {
                        let (xs, xc) = split_mask(&x, mask);
                        let Some(fv) = fj.get_sorted(&xs, u) else {
                            continue;
                        };
                        let Some(gv) = gk.get_sorted(&xc, v) else {
                            continue;
                        };
                        let s = base
                            ^ unshuffle_parity(&degs, mask, true)
                            ^ odd(g.key_degree(&xc) * du)
                            ^ odd((gm.degree - kt) * (g.key_degree(&xs) + du));
                        for (a, ca) in fv.iter() {
                            for (b, cb) in gv.iter() {
                                val.add_signed(full_key(a, b), &(ca * cb), s);
                            }
                        }
                    }
                }
                (!val.is_zero()).then(|| (full_key(&x, &uv), val))
            })
            .collect();
        out.put(i, entries);
    }
    out.known = known;
    Ok(out)
}

/// Odot product of several factors, left to right.
pub fn odot_all(factors: &[&Intertwiner], cap: usize) -> Result<Intertwiner> {
    let (first, rest) = factors.split_first().expect("nonempty product");
    let mut acc = (*first).clone();
    for h in rest {
        acc = odot(&acc, h, cap)?;
    }
    Ok(acc)
}

/// A module together with its action family `ρ`, an intertwiner of degree 1
/// from the module to itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    name: String,
    rho: Intertwiner,
}

impl Representation {
    pub fn new(name: impl Into<String>, rho: Intertwiner) -> Result<Self> {
        if rho.degree != 1 || rho.source != rho.target {
            return Err(Error::Shape(
                "an action family is a degree-1 intertwiner from a module to itself".into(),
            ));
        }
        Ok(Representation {
            name: name.into(),
            rho,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn factors(&self) -> &Factors {
        &self.rho.source
    }

    pub fn rho(&self) -> &Intertwiner {
        &self.rho
    }

    pub fn g(&self) -> &Space {
        &self.rho.g
    }
}

/// The trivial representation `𝕂` (no tensor factors, zero action).
pub fn trivial(alg: &LInfinityAlgebra) -> Representation {
    Representation {
        name: "K".into(),
        rho: Intertwiner::zero(alg.space(), Factors::unit(), Factors::unit(), 1),
    }
}

/// The adjoint representation, `ρ^i(x, y) = π_1^i(x, y)`.
pub fn adjoint(alg: &LInfinityAlgebra) -> Representation {
    let g = alg.space();
    let gf = alg.g_factors();
    let mut rho = Intertwiner::zero(g, gf.clone(), gf.clone(), 1);
    for (&i, _) in alg.brackets() {
        let pi = alg.pi1(i);
        let entries: Vec<(Key, Tensor)> = input_keys(g, i, &gf)
            .into_iter()
            .filter_map(|(x, y)| {
                let args = full_key(&x, &y);
                let (t, o) = pi.eval(&args, &[])?;
                Some((args, t.scaled(&Rational::one().signed(o))))
            })
            .collect();
        rho.put(i, entries);
    }
    Representation {
        name: alg.name().to_string(),
        rho,
    }
}

/// The tensor product representation, `ρ_{U,V} = ρ_U ⊙ 𝟙_V + 𝟙_U ⊙ ρ_V`.
pub fn tensor_rep(u: &Representation, v: &Representation, cap: usize) -> Result<Representation> {
    let g = u.g();
    if u.factors().is_empty() {
        return Ok(v.clone());
    }
    if v.factors().is_empty() {
        return Ok(u.clone());
    }
    let a = odot(&u.rho, &identity(g, v.factors()), cap)?;
    let b = odot(&identity(g, u.factors()), &v.rho, cap)?;
    Representation::new(format!("{}⊗{}", u.name, v.name), a.plus(&b)?)
}

/// Tensor product of several representations, left to right.
pub fn tensor_all(reps: &[&Representation], cap: usize) -> Result<Representation> {
    let (first, rest) = reps.split_first().expect("nonempty product");
    let mut acc = (*first).clone();
    for r in rest {
        acc = tensor_rep(&acc, r, cap)?;
    }
    Ok(acc)
}

/// The hom differential `⟦ρ, f⟧ = ρ_V f - (-1)^{|f|} f ρ_U - ϱ_f ℓ_U`.
pub fn hom_differential(
    alg: &LInfinityAlgebra,
    u: &Representation,
    v: &Representation,
    f: &Intertwiner,
    cap: usize,
) -> Result<Intertwiner> {
    if f.source != *u.factors() || f.target != *v.factors() {
        return Err(Error::SpaceMismatch(
            "intertwiner does not run between the given representations".into(),
        ));
    }
    let a = juxtapose(&v.rho, f, cap)?;
    let b = juxtapose(f, &u.rho, cap)?;
    // ϱ_f ℓ_U at arity i only consumes ϱ_f below i
    let c = juxtapose(&varrho(f, cap), &ell_u(alg, u.factors()), cap)?;
    a.plus_scaled(&b, &-Rational::one().signed(odd(f.degree)))?
        .minus(&c)
}

/// Residual `ρρ - ϱ_ρ ℓ_V` of the action property.
pub fn action_residual(
    alg: &LInfinityAlgebra,
    rep: &Representation,
    cap: usize,
) -> Result<Intertwiner> {
    let a = juxtapose(&rep.rho, &rep.rho, cap)?;
    let b = juxtapose(&varrho(&rep.rho, cap), &ell_u(alg, rep.factors()), cap)?;
    a.minus(&b)
}

/// The same residual by the single-sum form
/// `Σ_{j̃+k=i} (-1)^{j k̃} ρ^j (1 ⊗ ρ^k) Σ_{j̃,k}` over all `i` inputs, the
/// module element last, with `ρ^k` on pure algebra inputs read as `π_1^k`.
pub fn action_residual_single_sum(
    alg: &LInfinityAlgebra,
    rep: &Representation,
    cap: usize,
) -> Result<Intertwiner> {
    let rho = &rep.rho;
    let g = alg.space();
    let fac = rep.factors();
    let mut out = Intertwiner::zero(g, fac.clone(), fac.clone(), 2);
    let known = if rho.known >= UNBOUNDED {
        UNBOUNDED
    } else {
        rho.known
    };
    let top = cap.min(known);
    let pi: BTreeMap<usize, SkewMultiMap> = alg.brackets().map(|(&k, _)| (k, alg.pi1(k))).collect();
    for i in 1..=top {
        let entries: Vec<(Key, Tensor)> = input_keys(g, i, fac)
            .into_par_iter()
            .filter_map(|(x, v)| {
                let dv = fac.degree(&v);
                let mut degs: Vec<i32> = x.iter().map(|&w| g.degree(w)).collect();
                degs.push(dv);
                let mut val = Tensor::new();
                for k in 1..=i {
                    let jt = i - k;
                    let Some(rj) = rho.comps.get(&(jt + 1)) else {
                        continue;
                    };
                    let base = odd(((jt + 1) * (k - 1)) as i32);
                    let rk_deg = 2 - k as i32;
                    for mask in subsets(i, jt) {
                        let eps = unshuffle_parity(&degs, mask, true);
                        let v_in_s = mask >> (i - 1) & 1 == 1;
                        let (xs, xc) = split_mask(&x, mask & !(1 << (i - 1)));
                        let ds = g.key_degree(&xs) + if v_in_s { dv } else { 0 };
                        let s = base ^ eps ^ odd(rk_deg * ds);
                        if !v_in_s {
                            // inner ρ^k on (x_{S^c}, v)
                            let Some(inner) = rho.comps.get(&k).and_then(|m| m.get_sorted(&xc, &v))
                            else {
                                continue;
                            };
                            for (z, c) in inner.iter() {
                                if let Some(o) = rj.get_sorted(&xs, z) {
                                    val.add_scaled(o, &c.clone().signed(s));
                                }
                            }
                        } else {
                            // inner π_1^k on x_{S^c}; move v past the result
                            let Some(inner) = pi.get(&k).and_then(|m| m.get_sorted(&xc, &[]))
                            else {
                                continue;
                            };
                            for (y, c) in inner.iter() {
                                let mut args = xs.clone();
                                args.push(y[0]);
                                let Some((o, po)) = rj.eval(&args, &v) else {
                                    continue;
                                };
                                let swap = true ^ odd(g.degree(y[0]) * dv);
                                val.add_scaled(o, &c.clone().signed(s ^ po ^ swap));
                            }
                        }
                    }
                }
                (!val.is_zero()).then(|| (full_key(&x, &v), val))
            })
            .collect();
        out.put(i, entries);
    }
    let support = if rho.known >= UNBOUNDED {
        (2 * rho.support().max(alg.max_arity())).saturating_sub(1)
    } else {
        UNBOUNDED
    };
    out.known = if support <= top { UNBOUNDED } else { top };
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct RepresentationReport {
    pub representation: String,
    pub arity_cap: usize,
    pub composite_route: Verdict,
    pub single_sum_route: Verdict,
    /// Both routes produced the same residual.
    pub routes_agree: bool,
    pub passed: bool,
}

/// Check the action property by both routes and compare them.
pub fn check_representation(
    alg: &LInfinityAlgebra,
    rep: &Representation,
    cap: usize,
) -> Result<RepresentationReport> {
    let a = action_residual(alg, rep, cap)?;
    let b = action_residual_single_sum(alg, rep, cap)?;
    let through = cap.min(a.known).min(b.known);
    let routes_agree = a.minus(&b)?.witnesses(through).is_empty();
    let composite_route = a.zero_verdict("action property (composite route)", cap);
    let mut single_sum_route = b.zero_verdict("action property (single-sum route)", cap);
    if !routes_agree {
        single_sum_route = single_sum_route.with_note("routes disagree");
    }
    let passed = routes_agree && composite_route.passed && single_sum_route.passed;
    Ok(RepresentationReport {
        representation: rep.name.clone(),
        arity_cap: cap,
        composite_route,
        single_sum_route,
        routes_agree,
        passed,
    })
}

/// Verdict that a degree-0 intertwiner is equivariant, `⟦ρ, f⟧ = 0`.
pub fn is_equivariant(
    alg: &LInfinityAlgebra,
    u: &Representation,
    v: &Representation,
    f: &Intertwiner,
    cap: usize,
) -> Result<Verdict> {
    let d = hom_differential(alg, u, v, f, cap)?;
    let mut verdict = d.zero_verdict("equivariance", cap);
    if f.degree != 0 {
        verdict = verdict.with_note(format!("map has degree {}, not 0", f.degree));
        verdict.passed = false;
    }
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn adjoint_actions_pass_both_routes() {
        for alg in [
            fixtures::sl2(),
            fixtures::string_lie2(),
            fixtures::dgla(),
            fixtures::abelian(),
        ] {
            let r = check_representation(&alg, &adjoint(&alg), 4).unwrap();
            assert!(r.routes_agree, "{}", alg.name());
            assert!(r.passed, "{}: {:?}", alg.name(), r.composite_route);
        }
    }

    #[test]
    fn broken_action_fails_both_routes_identically() {
        let alg = fixtures::sl2();
        let ad = adjoint(&alg);
        let mut rho = ad.rho().clone();
        // ρ²(e, e) = h is not part of any action extending this one
        rho.add_value(&[0], &[0], &Tensor::basis([2u16].into_iter().collect()))
            .unwrap();
        let bad = Representation::new("bad", rho).unwrap();
        let r = check_representation(&alg, &bad, 3).unwrap();
        assert!(r.routes_agree);
        assert!(!r.passed);
    }

    #[test]
    fn units_and_gamma() {
        let alg = fixtures::string_lie2();
        let g = alg.space();
        let ad = adjoint(&alg);
        let u = ad.factors();
        let id = identity(g, u);
        assert!(varrho(&id, 4).is_zero());
        let gg = gamma(g, u, u);
        let back = juxtapose(&gg, &gg, 4).unwrap();
        assert!(back.minus(&identity(g, &u.concat(u))).unwrap().is_zero());
        let uu = tensor_rep(&ad, &ad, 4).unwrap();
        assert!(is_equivariant(&alg, &uu, &uu, &gg, 4).unwrap().passed);
        assert!(is_equivariant(&alg, &ad, &ad, &id, 4).unwrap().passed);
    }

    #[test]
    fn tensor_rep_is_a_representation() {
        let alg = fixtures::string_lie2();
        let ad = adjoint(&alg);
        let t = tensor_rep(&ad, &ad, 4).unwrap();
        let r = check_representation(&alg, &t, 4).unwrap();
        assert!(r.routes_agree && r.passed);
    }
}
