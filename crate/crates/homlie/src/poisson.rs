//! Shifted Poisson structures on a homotopy Lie algebra and the
//! Maurer–Cartan equation, both weight by weight and through the Schouten
//! bracket.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::{
    apply_shuffler, enumerate_shuffles, koszul_sign, project_symmetric, signature, skew_keys,
    skew_normalize_by, sym_normalize_by, Factors, GradedElement, Key, Space, Tensor, Variant,
};
use crate::linfty::{schouten, witnesses_of, LInfinityAlgebra, PolyMap};
use crate::multimap::SkewMultiMap;
use crate::rational::Rational;
use crate::report::Verdict;

/// Components `π_w^i : Λ^i g → Sym_±^w g` of weight `w ≥ 2` of an
/// `n`-shifted Poisson structure; weight 1 is the algebra itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedPoissonStructure {
    shift: i32,
    space: Space,
    components: BTreeMap<(usize, usize), PolyMap>,
}

impl ShiftedPoissonStructure {
    pub fn new(alg: &LInfinityAlgebra, shift: i32) -> Self {
        ShiftedPoissonStructure {
            shift,
            space: alg.space().clone(),
            components: BTreeMap::new(),
        }
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    /// Operator degree of `π_w^i`.
    pub fn component_degree(&self, w: usize, i: usize) -> i32 {
        (1 - w as i32) * self.shift + 2 - i as i32
    }

    pub fn target_variant(&self) -> Variant {
        if self.shift % 2 == 0 {
            Variant::Sym
        } else {
            Variant::Skew
        }
    }

    pub fn empty_component(&self, w: usize, i: usize) -> PolyMap {
        SkewMultiMap::new(
            self.space.clone(),
            i,
            Factors::unit(),
            Factors::power(&self.space, w),
            self.component_degree(w, i),
        )
    }

    /// Add `value` to `π_w(inputs)`. The value must be a graded symmetric
    /// (even shift) or antisymmetric (odd shift) tensor.
    pub fn add_value(&mut self, w: usize, inputs: &[u16], value: &Tensor) -> Result<()> {
        if w < 2 {
            return Err(Error::Invalid(
                "Poisson components start at weight 2".into(),
            ));
        }
        if !is_invariant(&self.space, self.target_variant(), value) {
            return Err(Error::Invalid(format!(
                "value of π_{w} on {inputs:?} is not {} in its tensor factors",
                if self.shift % 2 == 0 {
                    "graded symmetric"
                } else {
                    "graded antisymmetric"
                }
            )));
        }
        let i = inputs.len();
        let empty = self.empty_component(w, i);
        let c = self.components.entry((w, i)).or_insert(empty);
        c.insert(inputs, &[], value)?;
        if c.is_zero() {
            self.components.remove(&(w, i));
        }
        Ok(())
    }

    pub fn set_component(&mut self, w: usize, map: PolyMap) -> Result<()> {
        let i = map.arity();
        if w < 2
            || map.target().len() != w
            || map.degree() != self.component_degree(w, i)
            || map.g() != &self.space
        {
            return Err(Error::Shape(format!("not a component π_{w}^{i}")));
        }
        for (_, t) in map.entries() {
            if !is_invariant(&self.space, self.target_variant(), t) {
                return Err(Error::Invalid(format!(
                    "π_{w}^{i} has a non-invariant value"
                )));
            }
        }
        if map.is_zero() {
            self.components.remove(&(w, i));
        } else {
            self.components.insert((w, i), map);
        }
        Ok(())
    }

    pub fn component(&self, w: usize, i: usize) -> Option<&PolyMap> {
        self.components.get(&(w, i))
    }

    pub fn components(&self) -> impl Iterator<Item = (&(usize, usize), &PolyMap)> {
        self.components.iter()
    }

    pub fn max_weight(&self) -> usize {
        self.components.keys().map(|k| k.0).max().unwrap_or(1)
    }

    pub fn max_arity(&self) -> usize {
        self.components.keys().map(|k| k.1).max().unwrap_or(0)
    }
}

/// Whether a tensor in `g^{⊗w}` is invariant under all graded
/// transpositions of its factors (symmetric) or anti-invariant (skew).
pub fn is_invariant(space: &Space, variant: Variant, t: &Tensor) -> bool {
    let deg = |i: u16| space.degree(i);
    let mut canon: BTreeMap<Key, Rational> = BTreeMap::new();
    for (k, c) in t.iter() {
        let n = match variant {
            Variant::Sym => sym_normalize_by(k, deg),
            Variant::Skew => skew_normalize_by(k, deg),
        };
        let Some((ck, odd)) = n else {
            return false;
        };
        let v = c.clone().signed(odd);
        match canon.get(&ck) {
            Some(prev) if prev != &v => return false,
            Some(_) => {}
            None => {
                canon.insert(ck, v);
            }
        }
    }
    // every ordering of a canonical key must be present
    for (ck, v) in &canon {
        let f = Factors::power(space, ck.len());
        let e = GradedElement::new(f, Tensor::from_terms([(ck.clone(), v.clone())]));
        let sizes = vec![1; ck.len()];
        let full = apply_shuffler(variant, &sizes, &e).expect("shape");
        for (k, c) in full.terms.iter() {
            // the shuffler overcounts repeated labels uniformly
            let mult = repeat_multiplicity(ck);
            if t.get(k) * &mult != *c {
                return false;
            }
        }
    }
    true
}

fn repeat_multiplicity(k: &[u16]) -> Rational {
    let mut m = 1i64;
    let mut run = 1i64;
    for w in k.windows(2) {
        if w[0] == w[1] {
            run += 1;
            m *= run;
        } else {
            run = 1;
        }
    }
    Rational::from_int(m)
}

/// `Σ^±_{p,q̃}[P⊗1_{q̃}][1_{j̃}⊗Q]Σ_{j̃,k}` evaluated by explicit permutation
/// enumeration.
fn composite(p: &PolyMap, q: &PolyMap, variant: Variant) -> Option<PolyMap> {
    let g = p.g().clone();
    let (j, k, pw, qw) = (p.arity(), q.arity(), p.target().len(), q.target().len());
    if j == 0 || qw == 0 {
        return None;
    }
    let (jt, qt) = (j - 1, qw - 1);
    let m = jt + k;
    let mut out = SkewMultiMap::new(
        g.clone(),
        m,
        Factors::unit(),
        Factors::power(&g, pw + qt),
        p.degree() + q.degree(),
    );
    let shuffles = enumerate_shuffles(&[jt, k]);
    for x in skew_keys(&g, m) {
        let degs: Vec<i32> = x.iter().map(|&v| g.degree(v)).collect();
        let mut pre = Tensor::new();
        for sigma in &shuffles {
            let eps = signature(sigma) * koszul_sign(sigma, &degs).unwrap() < 0;
            let y = sigma.apply(&x);
            let (xs, xc) = y.split_at(jt);
            let Some((qv, oq)) = q.eval(xc, &[]) else {
                continue;
            };
            let ko = (q.degree() * g.key_degree(xs)) & 1 == 1;
            for (z, c) in qv.iter() {
                let mut pin: Key = xs.into();
                pin.push(z[0]);
                let Some((pv, op)) = p.eval(&pin, &[]) else {
                    continue;
                };
                for (w, c2) in pv.iter() {
                    let mut key = w.clone();
                    key.extend_from_slice(&z[1..]);
                    pre.add_signed(key, &(c * c2), eps ^ oq ^ ko ^ op);
                }
            }
        }
        if pre.is_zero() {
            continue;
        }
        let e = GradedElement::new(Factors::power(&g, pw + qt), pre);
        let sym = apply_shuffler(variant, &[pw, qt], &e).expect("shape");
        let sym = project_symmetric(variant, &sym).expect("shape");
        out.put(x, sym.terms);
    }
    Some(out)
}

/// Every component of the full structure `π = π_1 + π_{≥2}` as
/// `((weight, arity), map)`.
fn all_components(
    alg: &LInfinityAlgebra,
    sps: &ShiftedPoissonStructure,
) -> Vec<((usize, usize), PolyMap)> {
    let mut v: Vec<((usize, usize), PolyMap)> =
        alg.brackets().map(|(&i, _)| ((1, i), alg.pi1(i))).collect();
    v.extend(sps.components().map(|(k, m)| (*k, m.clone())));
    v
}

/// Degree of the weight `w`, arity `i` part of `⟦π,π⟧`: `|P|+|Q|` with
/// `p+q-1 = w` and `j+k-1 = i`.
fn bracket_degree(n: i32, w: usize, i: usize) -> i32 {
    (1 - w as i32) * n + 3 - i as i32
}

/// Which sign the weight-decomposed display uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum DisplaySign {
    General,
    /// The 2-shifted specialisation `(-1)^{j k̃}`.
    TwoShifted,
}

fn display_residual(
    alg: &LInfinityAlgebra,
    sps: &ShiftedPoissonStructure,
    w: usize,
    i: usize,
    sign: DisplaySign,
) -> PolyMap {
    let n = sps.shift() as i64;
    let g = alg.space().clone();
    let mut out = SkewMultiMap::new(
        g.clone(),
        i,
        Factors::unit(),
        Factors::power(&g, w),
        bracket_degree(sps.shift(), w, i),
    );
    let comps = all_components(alg, sps);
    for ((p, j), pm) in &comps {
        for ((q, k), qm) in &comps {
            if p + q != w + 1 || j + k != i + 1 {
                continue;
            }
            let (pt, jt, qt, kt) = (*p as i64 - 1, *j as i64 - 1, *q as i64 - 1, *k as i64 - 1);
            let odd = match sign {
                DisplaySign::General => {
                    ((pt * n + *j as i64) * (qt * n + kt) + jt * qt * n).rem_euclid(2) == 1
                }
                DisplaySign::TwoShifted => (*j as i64 * kt).rem_euclid(2) == 1,
            };
            if let Some(c) = composite(pm, qm, sps.target_variant()) {
                out.add_scaled(&c, &Rational::one().signed(odd))
                    .expect("same shape");
            }
        }
    }
    out
}

/// The weight `w`, arity `i` part of `⟦π,π⟧` computed from Schouten
/// brackets of components.
pub fn schouten_route(
    alg: &LInfinityAlgebra,
    sps: &ShiftedPoissonStructure,
    w: usize,
    i: usize,
) -> Result<PolyMap> {
    let g = alg.space().clone();
    let deg = bracket_degree(sps.shift(), w, i);
    let mut out = SkewMultiMap::new(g.clone(), i, Factors::unit(), Factors::power(&g, w), deg);
    let comps = all_components(alg, sps);
    for ((p, j), pm) in &comps {
        for ((q, k), qm) in &comps {
            if p + q != w + 1 || j + k != i + 1 {
                continue;
            }
            let s = schouten(pm, qm, sps.shift())?;
            out.add_scaled(&s, &Rational::one())?;
        }
    }
    Ok(out)
}

/// Residuals of the weight-2 relation at arities `0..=cap` (shift 2 only).
pub fn weight2_mc_residual(
    alg: &LInfinityAlgebra,
    sps: &ShiftedPoissonStructure,
    cap: usize,
) -> Result<Vec<PolyMap>> {
    weight_specialised(alg, sps, 2, cap)
}

/// Residuals of the weight-3 relation at arities `0..=cap` (shift 2 only).
pub fn weight3_mc_residual(
    alg: &LInfinityAlgebra,
    sps: &ShiftedPoissonStructure,
    cap: usize,
) -> Result<Vec<PolyMap>> {
    weight_specialised(alg, sps, 3, cap)
}

fn weight_specialised(
    alg: &LInfinityAlgebra,
    sps: &ShiftedPoissonStructure,
    w: usize,
    cap: usize,
) -> Result<Vec<PolyMap>> {
    if sps.shift() != 2 {
        return Err(Error::Invalid(format!(
            "weight-decomposed 2-shifted relations need shift 2, found {}",
            sps.shift()
        )));
    }
    check_same_algebra(alg, sps)?;
    Ok((0..=cap)
        .map(|i| display_residual(alg, sps, w, i, DisplaySign::TwoShifted))
        .collect())
}

fn check_same_algebra(alg: &LInfinityAlgebra, sps: &ShiftedPoissonStructure) -> Result<()> {
    if alg.space() != sps.space() {
        return Err(Error::SpaceMismatch(
            "Poisson structure lives on a different algebra".into(),
        ));
    }
    Ok(())
}

/// The graded (anti)symmetrisation of a canonical key, normalised so that
/// the canonical ordering keeps coefficient 1.
fn symmetrised(space: &Space, variant: Variant, key: &Key) -> Tensor {
    let e = GradedElement::basis(Factors::power(space, key.len()), key.clone());
    let full = apply_shuffler(variant, &vec![1; key.len()], &e).expect("uniform factors");
    full.terms.scaled(&repeat_multiplicity(key).recip())
}

/// Unknown coordinates of a weight-`w`, arity-`i` component: a canonical
/// input key and a symmetrised output of the right degree.
pub(crate) fn coordinates(sps: &ShiftedPoissonStructure, w: usize, i: usize) -> Vec<(Key, Tensor)> {
    let g = sps.space();
    let variant = sps.target_variant();
    let outs = match variant {
        Variant::Sym => crate::graded::sym_keys(g, w),
        Variant::Skew => skew_keys(g, w),
    };
    let d = sps.component_degree(w, i);
    let mut v = Vec::new();
    for x in skew_keys(g, i) {
        for z in outs
            .iter()
            .filter(|z| g.key_degree(z) == g.key_degree(&x) + d)
        {
            v.push((x.clone(), symmetrised(g, variant, z)));
        }
    }
    v
}

/// Which relations a linear solve imposes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relations {
    /// The weight-2 relation at every arity where it can be nonzero.
    WeightTwo,
    /// Additionally the weight-3 relation at arity 0, which is linear in
    /// the unknowns once `π_2^0` is fixed.
    WeightTwoAndThreeAtZero,
}

/// Unknown coordinates `(weight, input key, symmetrised value)`.
type Unknown = (usize, Key, Tensor);

fn unknowns_for(
    base: &ShiftedPoissonStructure,
    ranges: &[(usize, std::ops::RangeInclusive<usize>)],
) -> Vec<Unknown> {
    let mut unknowns = Vec::new();
    for (w, range) in ranges {
        for i in range.clone() {
            if base.component(*w, i).is_none() {
                unknowns.extend(
                    coordinates(base, *w, i)
                        .into_iter()
                        .map(|(x, t)| (*w, x, t)),
                );
            }
        }
    }
    unknowns
}

/// Rows of the linear system `Σ_j a_j (R(base + u_j) - R(base)) = -R(base)`
/// with the right-hand side in column `unknowns.len()`.
fn linear_system(
    alg: &LInfinityAlgebra,
    base: &ShiftedPoissonStructure,
    unknowns: &[Unknown],
    arity_top: usize,
    relations: Relations,
) -> Result<Vec<crate::linalg::Row>> {
    let mut cells: Vec<(usize, usize)> = (0..=arity_top).map(|i| (2, i)).collect();
    if relations == Relations::WeightTwoAndThreeAtZero {
        cells.push((3, 0));
    }
    let residuals = |p: &ShiftedPoissonStructure| -> Vec<PolyMap> {
        cells
            .iter()
            .map(|&(w, i)| display_residual(alg, p, w, i, DisplaySign::General))
            .collect()
    };
    let r0 = residuals(base);
    let mut coord: BTreeMap<(usize, Key, Key), usize> = BTreeMap::new();
    let mut index = |cell: usize, k: &Key, z: &Key| {
        let n = coord.len();
        *coord.entry((cell, k.clone(), z.clone())).or_insert(n)
    };
    let mut entries: Vec<(usize, usize, Rational)> = Vec::new();
    for (j, (w, x, t)) in unknowns.iter().enumerate() {
        let mut p = base.clone();
        p.add_value(*w, x, t)?;
        for (cell, (r, r_base)) in residuals(&p).iter().zip(&r0).enumerate() {
            for (k, val) in r.difference(r_base) {
                for (z, c) in val.iter() {
                    entries.push((index(cell, &k, z), j, c.clone()));
                }
            }
        }
    }
    let n = unknowns.len();
    for (cell, r) in r0.iter().enumerate() {
        for (k, val) in r.entries() {
            for (z, c) in val.iter() {
                entries.push((index(cell, k, z), n, -c.clone()));
            }
        }
    }
    let mut rows: Vec<crate::linalg::Row> = vec![BTreeMap::new(); coord.len()];
    for (r, j, c) in entries {
        rows[r].insert(j, c);
    }
    Ok(rows)
}

/// Extend `base` by weight-2 components at arities `1..=arity_cap` and
/// weight-3 components at arities `0..=arity_cap` that it leaves empty,
/// solving the chosen relations exactly. Free coordinates are set to zero.
/// Returns `None` when no extension exists. Confirm the result with
/// [`check_mc`], which also covers the relations not imposed here.
pub fn solve_extension(
    alg: &LInfinityAlgebra,
    base: &ShiftedPoissonStructure,
    arity_cap: usize,
    relations: Relations,
) -> Result<Option<ShiftedPoissonStructure>> {
    check_same_algebra(alg, base)?;
    let mut ranges = vec![(2, 1..=arity_cap)];
    if relations == Relations::WeightTwoAndThreeAtZero {
        ranges.push((3, 0..=arity_cap));
    }
    let unknowns = unknowns_for(base, &ranges);
    let rows = linear_system(alg, base, &unknowns, arity_cap + alg.max_arity(), relations)?;
    let Some(sol) = crate::linalg::solve_affine(&rows, unknowns.len()) else {
        return Ok(None);
    };
    let mut out = base.clone();
    for ((w, x, t), a) in unknowns.iter().zip(sol) {
        if !a.is_zero() {
            out.add_value(*w, x, &t.scaled(&a))?;
        }
    }
    Ok(Some(out))
}

/// A basis of the weight-2 components supported on arities `arities` that
/// satisfy the weight-2 relation (with no other weight-2 data present).
pub fn weight2_kernel(
    alg: &LInfinityAlgebra,
    shift: i32,
    arities: std::ops::RangeInclusive<usize>,
) -> Result<Vec<ShiftedPoissonStructure>> {
    let empty = ShiftedPoissonStructure::new(alg, shift);
    let top = *arities.end() + alg.max_arity();
    let unknowns = unknowns_for(&empty, &[(2, arities)]);
    let rows = linear_system(alg, &empty, &unknowns, top, Relations::WeightTwo)?;
    let mut out = Vec::new();
    for v in crate::linalg::nullspace(&rows, unknowns.len()) {
        let mut p = empty.clone();
        for ((w, x, t), a) in unknowns.iter().zip(v) {
            if !a.is_zero() {
                p.add_value(*w, x, &t.scaled(&a))?;
            }
        }
        out.push(p);
    }
    Ok(out)
}

/// Whether any nonzero weight-`w` component can exist at arity `i` for
/// degree reasons alone.
pub fn degree_allows(sps: &ShiftedPoissonStructure, w: usize, i: usize) -> bool {
    !coordinates(sps, w, i).is_empty()
}

#[derive(Clone, Debug, Serialize)]
pub struct McCell {
    pub weight: usize,
    pub arity: usize,
    pub verdict: Verdict,
    /// `⟦π,π⟧` at this cell equals twice the display residual.
    pub schouten_agrees: bool,
    /// For shift 2: the specialised sign gives the same residual.
    pub specialised_agrees: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct McReport {
    pub shift: i32,
    pub weight_cap: usize,
    pub arity_cap: usize,
    pub cells: Vec<McCell>,
    pub routes_agree: bool,
    pub passed: bool,
}

/// Check the Maurer–Cartan equation for weights `2..=weight_cap` and arities
/// `0..=arity_cap`, through the weight-decomposed display and the Schouten
/// route.
pub fn check_mc(
    alg: &LInfinityAlgebra,
    sps: &ShiftedPoissonStructure,
    weight_cap: usize,
    arity_cap: usize,
) -> Result<McReport> {
    check_same_algebra(alg, sps)?;
    let mut cells = Vec::new();
    let two = Rational::from_int(2);
    for w in 2..=weight_cap {
        for i in 0..=arity_cap {
            let d = display_residual(alg, sps, w, i, DisplaySign::General);
            let s = schouten_route(alg, sps, w, i)?;
            let schouten_agrees = s.difference(&d.scaled(&two)).is_empty();
            let specialised_agrees = (sps.shift() == 2).then(|| {
                display_residual(alg, sps, w, i, DisplaySign::TwoShifted)
                    .difference(&d)
                    .is_empty()
            });
            let mut verdict = Verdict::from_witnesses(
                format!("maurer-cartan weight {w} arity {i}"),
                Some(i),
                witnesses_of(&d, &format!("weight {w}, arity {i}")),
            );
            if !schouten_agrees {
                verdict = verdict.with_note("sign-convention incident: Schouten route disagrees");
            }
            cells.push(McCell {
                weight: w,
                arity: i,
                verdict,
                schouten_agrees,
                specialised_agrees,
            });
        }
    }
    let routes_agree = cells
        .iter()
        .all(|c| c.schouten_agrees && c.specialised_agrees != Some(false));
    let passed = routes_agree && cells.iter().all(|c| c.verdict.passed);
    Ok(McReport {
        shift: sps.shift(),
        weight_cap,
        arity_cap,
        cells,
        routes_agree,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn casimir_is_a_solution() {
        let (alg, p) = fixtures::sl2_casimir();
        let r = check_mc(&alg, &p, 3, 3).unwrap();
        assert!(r.routes_agree);
        assert!(
            r.passed,
            "{:#?}",
            r.cells
                .iter()
                .filter(|c| !c.verdict.passed)
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn non_invariant_tensor_fails_weight_two() {
        let (alg, p) = fixtures::sl2_non_invariant();
        let r = check_mc(&alg, &p, 2, 2).unwrap();
        assert!(r.routes_agree);
        assert!(!r.passed);
        let w2 = weight2_mc_residual(&alg, &p, 2).unwrap();
        assert!(!w2[1].is_zero());
    }

    #[test]
    fn casimir_on_the_string_algebra_extends_through_weight_two_only() {
        let alg = fixtures::string_lie2();
        let mut base = ShiftedPoissonStructure::new(&alg, 2);
        base.add_value(2, &[], &fixtures::sl2_casimir_tensor())
            .unwrap();
        // the Casimir alone fails once the ternary bracket is present
        assert!(!check_mc(&alg, &base, 2, 3).unwrap().passed);
        let p = solve_extension(&alg, &base, 2, Relations::WeightTwo)
            .unwrap()
            .unwrap();
        assert!(p.component(2, 1).is_some());
        let r = check_mc(&alg, &p, 2, 4).unwrap();
        assert!(r.passed && r.routes_agree);
        // weight three cannot be repaired: no π_3 exists for degree reasons
        // and the arity-0 relation is inconsistent
        assert!((0..=2).all(|i| !degree_allows(&p, 3, i)));
        assert!(!check_mc(&alg, &p, 3, 0).unwrap().passed);
        assert!(
            solve_extension(&alg, &base, 2, Relations::WeightTwoAndThreeAtZero)
                .unwrap()
                .is_none()
        );
    }

    #[test]
    fn string_algebra_poisson_fixture_solves_everything() {
        let (alg, p) = fixtures::string_poisson();
        assert!(p.component(2, 0).is_none());
        assert!(p.component(2, 1).is_some());
        let r = check_mc(&alg, &p, 4, 4).unwrap();
        assert!(r.routes_agree);
        assert!(r.passed);
    }

    #[test]
    fn string_algebra_weight_two_kernel_is_inner() {
        let alg = fixtures::string_lie2();
        let kernel = weight2_kernel(&alg, 2, 1..=2).unwrap();
        // one direction per element of sl(2)
        assert_eq!(kernel.len(), 3);
        for p in &kernel {
            assert!(p.component(2, 2).is_none());
            let r = check_mc(&alg, p, 3, 3).unwrap();
            assert!(r.passed && r.routes_agree);
        }
        // the fixture is itself a consistent base for the solver
        let (_, fx) = fixtures::string_poisson();
        assert!(
            solve_extension(&alg, &fx, 2, Relations::WeightTwoAndThreeAtZero)
                .unwrap()
                .is_some()
        );
    }

    #[test]
    fn non_symmetric_values_rejected() {
        let alg = fixtures::sl2();
        let mut p = ShiftedPoissonStructure::new(&alg, 2);
        let t = Tensor::from_terms([(Key::from_slice(&[0, 1]), Rational::one())]);
        assert!(p.add_value(2, &[], &t).is_err());
    }

    #[test]
    fn abelian_accepts_any_symmetric_tensor() {
        let alg = fixtures::abelian();
        let mut p = ShiftedPoissonStructure::new(&alg, 2);
        // b has degree 0: b⊗b is symmetric of degree 0
        let t = Tensor::from_terms([(Key::from_slice(&[1, 1]), Rational::from_int(3))]);
        p.add_value(2, &[], &t).unwrap();
        let r = check_mc(&alg, &p, 3, 2).unwrap();
        assert!(r.passed);
    }
}
