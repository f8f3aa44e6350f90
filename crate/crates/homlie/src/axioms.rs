//! Axiom suites for the dg-category of representations and its symmetric
//! strict monoidal structure, run on one instance at a time.
//!
//! An instance is a cycle of four representations `U → V → W → X → U` with
//! one intertwiner along each edge, so every identity that needs a
//! composable pair, triple or a pair of parallel chains can be read off it.

use serde::Serialize;

use crate::error::Result;
use crate::graded::Factors;
use crate::linfty::LInfinityAlgebra;
use crate::random::{InstanceGenerator, RandomAlgebra};
use crate::rational::Rational;
use crate::repcat::{
    adjoint, ell_u, gamma, hom_differential, identity, juxtapose, juxtapose_all, odot, odot_all,
    tensor_rep, trivial, varrho, Intertwiner, Representation,
};
use crate::report::Verdict;

#[derive(Clone, Debug)]
pub struct AxiomInstance {
    pub alg: LInfinityAlgebra,
    pub u: Representation,
    pub v: Representation,
    pub w: Representation,
    pub x: Representation,
    /// `f: U ⇝ V`
    pub f: Intertwiner,
    /// `g: V ⇝ W`
    pub g: Intertwiner,
    /// `h: W ⇝ X`
    pub h: Intertwiner,
    /// `k: X ⇝ U`
    pub k: Intertwiner,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub arity_cap: usize,
    pub verdicts: Vec<Verdict>,
    pub passed: bool,
}

impl AxiomReport {
    fn new(arity_cap: usize, verdicts: Vec<Verdict>) -> Self {
        let passed = verdicts.iter().all(|v| v.passed);
        AxiomReport {
            arity_cap,
            verdicts,
            passed,
        }
    }
}

/// Draw a random instance over a random algebra.
pub fn random_instance(gen: &mut InstanceGenerator, cap: usize) -> Result<AxiomInstance> {
    let ra = gen.algebra();
    instance_over(gen, &ra, cap)
}

pub fn instance_over(
    gen: &mut InstanceGenerator,
    ra: &RandomAlgebra,
    cap: usize,
) -> Result<AxiomInstance> {
    let u = gen.representation(ra, cap)?;
    let v = gen.representation(ra, cap)?;
    let w = gen.representation(ra, cap)?;
    let x = gen.representation(ra, cap)?;
    let g_ = ra.alg.space();
    let f = gen.intertwiner(g_, u.factors(), v.factors());
    let g = gen.intertwiner(g_, v.factors(), w.factors());
    let h = gen.intertwiner(g_, w.factors(), x.factors());
    let k = gen.intertwiner(g_, x.factors(), u.factors());
    Ok(AxiomInstance {
        alg: ra.alg.clone(),
        u,
        v,
        w,
        x,
        f,
        g,
        h,
        k,
    })
}

fn sign(odd: bool) -> Rational {
    Rational::one().signed(odd)
}

fn odd(n: i32) -> bool {
    n.rem_euclid(2) == 1
}

/// Associativity, unitality, `⟦ρ,⟦ρ,f⟧⟧ = 0` and the Leibniz rule for the
/// hom differential over juxtaposition.
pub fn dg_category_suite(inst: &AxiomInstance, cap: usize) -> Result<AxiomReport> {
    let AxiomInstance {
        alg,
        u,
        v,
        w,
        f,
        g,
        h,
        ..
    } = inst;
    let sp = alg.space();
    let mut out = Vec::new();

    let left = juxtapose(h, &juxtapose(g, f, cap)?, cap)?;
    let right = juxtapose(&juxtapose(h, g, cap)?, f, cap)?;
    out.push(left.equality_verdict(&right, "juxtaposition associativity", cap)?);
    out.push(juxtapose_all(&[h, g, f], cap)?.equality_verdict(
        &left,
        "juxtaposition of a chain",
        cap,
    )?);

    let after = juxtapose(&identity(sp, v.factors()), f, cap)?;
    let before = juxtapose(f, &identity(sp, u.factors()), cap)?;
    out.push(after.equality_verdict(f, "left unit", cap)?);
    out.push(before.equality_verdict(f, "right unit", cap)?);

    let du = hom_differential(alg, u, u, &identity(sp, u.factors()), cap)?;
    out.push(du.zero_verdict("units are cocycles", cap));

    let df = hom_differential(alg, u, v, f, cap)?;
    let ddf = hom_differential(alg, u, v, &df, cap)?;
    out.push(ddf.zero_verdict("hom differential squares to zero", cap));

    let dg = hom_differential(alg, v, w, g, cap)?;
    let lhs = hom_differential(alg, u, w, &juxtapose(g, f, cap)?, cap)?;
    let rhs =
        juxtapose(&dg, f, cap)?.plus_scaled(&juxtapose(g, &df, cap)?, &sign(odd(g.degree())))?;
    out.push(lhs.equality_verdict(&rhs, "Leibniz rule for juxtaposition", cap)?);

    Ok(AxiomReport::new(cap, out))
}

/// Interchange, odot associativity, the Leibniz rule for `⊙`, naturality,
/// involutivity and the hexagon for `γ`, the strict unit, and the
/// compatibilities of `ℓ` with `⊙` and with intertwiners.
pub fn monoidal_suite(inst: &AxiomInstance, cap: usize) -> Result<AxiomReport> {
    let AxiomInstance {
        alg,
        u,
        v,
        w,
        x,
        f,
        g,
        h,
        k,
    } = inst;
    let sp = alg.space();
    let (uf, vf, wf, xf) = (u.factors(), v.factors(), w.factors(), x.factors());
    let mut out = Vec::new();

    // (g⊙k)(f⊙h) = (-1)^{|k||f|} gf ⊙ kh
    let lhs = juxtapose(&odot(g, k, cap)?, &odot(f, h, cap)?, cap)?;
    let rhs = odot(&juxtapose(g, f, cap)?, &juxtapose(k, h, cap)?, cap)?
        .scaled(&sign(odd(k.degree() * f.degree())));
    out.push(lhs.equality_verdict(&rhs, "interchange", cap)?);

    let lhs = odot(&odot(f, g, cap)?, h, cap)?;
    let rhs = odot(f, &odot(g, h, cap)?, cap)?;
    out.push(lhs.equality_verdict(&rhs, "odot associativity", cap)?);
    out.push(odot_all(&[f, g, h], cap)?.equality_verdict(&lhs, "odot of a list", cap)?);

    let ids = odot(&identity(sp, uf), &identity(sp, vf), cap)?;
    out.push(ids.equality_verdict(&identity(sp, &uf.concat(vf)), "odot of units", cap)?);

    let uw = tensor_rep(u, w, cap)?;
    let vx = tensor_rep(v, x, cap)?;
    let fh = odot(f, h, cap)?;
    let lhs = hom_differential(alg, &uw, &vx, &fh, cap)?;
    let df = hom_differential(alg, u, v, f, cap)?;
    let dh = hom_differential(alg, w, x, h, cap)?;
    let rhs = odot(&df, h, cap)?.plus_scaled(&odot(f, &dh, cap)?, &sign(odd(f.degree())))?;
    out.push(lhs.equality_verdict(&rhs, "Leibniz rule for odot", cap)?);

    // γ_{V,X}(f⊙h) = (-1)^{|f||h|}(h⊙f)γ_{U,W}
    let lhs = juxtapose(&gamma(sp, vf, xf), &fh, cap)?;
    let rhs = juxtapose(&odot(h, f, cap)?, &gamma(sp, uf, wf), cap)?
        .scaled(&sign(odd(f.degree() * h.degree())));
    out.push(lhs.equality_verdict(&rhs, "braiding naturality", cap)?);

    let twice = juxtapose(&gamma(sp, wf, uf), &gamma(sp, uf, wf), cap)?;
    out.push(twice.equality_verdict(&identity(sp, &uf.concat(wf)), "braiding involutive", cap)?);

    let lhs = gamma(sp, &uf.concat(vf), wf);
    let rhs = juxtapose(
        &odot(&gamma(sp, uf, wf), &identity(sp, vf), cap)?,
        &odot(&identity(sp, uf), &gamma(sp, vf, wf), cap)?,
        cap,
    )?;
    out.push(lhs.equality_verdict(&rhs, "hexagon", cap)?);

    let d_gamma = hom_differential(alg, &uw, &tensor_rep(w, u, cap)?, &gamma(sp, uf, wf), cap)?;
    out.push(d_gamma.zero_verdict("braiding is equivariant", cap));

    let one = identity(sp, &Factors::unit());
    out.push(odot(f, &one, cap)?.equality_verdict(f, "right unit object", cap)?);
    out.push(odot(&one, f, cap)?.equality_verdict(f, "left unit object", cap)?);
    let k_ = trivial(alg);
    out.push(tensor_rep(u, &k_, cap)?.rho().equality_verdict(
        u.rho(),
        "tensoring with the unit",
        cap,
    )?);

    // ℓ_V f = (1_g ⊙ f) ℓ_U
    let gf = alg.g_factors();
    let lhs = juxtapose(&ell_u(alg, vf), f, cap)?;
    let rhs = juxtapose(&odot(&identity(sp, &gf), f, cap)?, &ell_u(alg, uf), cap)?;
    out.push(lhs.equality_verdict(&rhs, "ell intertwines", cap)?);

    let lhs = ell_u(alg, &uf.concat(vf));
    let rhs = odot(&ell_u(alg, uf), &identity(sp, vf), cap)?;
    out.push(lhs.equality_verdict(&rhs, "ell of a tensor", cap)?);

    Ok(AxiomReport::new(cap, out))
}

/// Identities for the reindexed families `ϱ_f`.
pub fn varrho_suite(inst: &AxiomInstance, cap: usize) -> Result<AxiomReport> {
    let AxiomInstance {
        alg, u, v, f, g, ..
    } = inst;
    let sp = alg.space();
    let gf = alg.g_factors();
    let one_g = identity(sp, &gf);
    let (uf, vf) = (u.factors(), v.factors());
    let mut out = Vec::new();

    // ϱ_{gf} = ϱ_g(1⊙f) + (-1)^{|g|} g ϱ_f
    let lhs = varrho(&juxtapose(g, f, cap)?, cap);
    let rhs = juxtapose(&varrho(g, cap), &odot(&one_g, f, cap)?, cap)?
        .plus_scaled(&juxtapose(g, &varrho(f, cap), cap)?, &sign(odd(g.degree())))?;
    out.push(lhs.equality_verdict(&rhs, "varrho Leibniz", cap)?);

    // ϱ_{f⊙g} = ϱ_f⊙g + (-1)^{|f|}(f⊙ϱ_g)(γ_{g,U}⊙1_V)
    let lhs = varrho(&odot(f, g, cap)?, cap);
    let swap = odot(&gamma(sp, &gf, uf), &identity(sp, vf), cap)?;
    let rhs = odot(&varrho(f, cap), g, cap)?.plus_scaled(
        &juxtapose(&odot(f, &varrho(g, cap), cap)?, &swap, cap)?,
        &sign(odd(f.degree())),
    )?;
    out.push(lhs.equality_verdict(&rhs, "varrho of odot", cap)?);

    // ϱ_{U⊙V} = ϱ_U⊙1_V + γ_{V,U}(ϱ_V⊙1_U)(1_g⊙γ_{U,V}) with ϱ_U = -ϱ_{ρ_U}
    let uv = tensor_rep(u, v, cap)?;
    let lhs = varrho(uv.rho(), cap).neg();
    let a = odot(&varrho(u.rho(), cap).neg(), &identity(sp, vf), cap)?;
    let b = juxtapose_all(
        &[
            &gamma(sp, vf, uf),
            &odot(&varrho(v.rho(), cap).neg(), &identity(sp, uf), cap)?,
            &odot(&one_g, &gamma(sp, uf, vf), cap)?,
        ],
        cap,
    )?;
    out.push(lhs.equality_verdict(&a.plus(&b)?, "varrho of a tensor representation", cap)?);

    // f ϱ_U - ϱ_V(1⊙f) = ⟦ρ,ϱ_f⟧ + ϱ_{⟦ρ,f⟧}
    let adj = adjoint(alg);
    let gu = tensor_rep(&adj, u, cap)?;
    let lhs = juxtapose(f, &varrho(u.rho(), cap).neg(), cap)?.minus(&juxtapose(
        &varrho(v.rho(), cap).neg(),
        &odot(&one_g, f, cap)?,
        cap,
    )?)?;
    let rf = varrho(f, cap);
    let df = hom_differential(alg, u, v, f, cap)?;
    let rhs = hom_differential(alg, &gu, v, &rf, cap)?.plus(&varrho(&df, cap))?;
    out.push(lhs.equality_verdict(&rhs, "varrho pseudonaturality", cap)?);

    Ok(AxiomReport::new(cap, out))
}
