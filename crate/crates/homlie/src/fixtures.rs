//! Small reference algebras and structures used by the test suites and
//! shipped as data files.

use crate::graded::{Factors, GradedSpace, Key, Tensor};
use crate::linfty::LInfinityAlgebra;
use crate::poisson::ShiftedPoissonStructure;
use crate::rational::Rational;

fn key(v: &[u16]) -> Key {
    v.into()
}

fn term(v: &[u16], c: Rational) -> Tensor {
    Tensor::from_terms([(key(v), c)])
}

/// Abelian algebra on three generators of degrees -1, 0, 1.
pub fn abelian() -> LInfinityAlgebra {
    let g = GradedSpace::new("a3", [("a", -1), ("b", 0), ("c", 1)])
        .unwrap()
        .into_space();
    LInfinityAlgebra::abelian("abelian", g)
}

/// `sl(2)` with basis `e, f, h` in degree 0.
pub fn sl2() -> LInfinityAlgebra {
    let g = GradedSpace::new("sl2", [("e", 0), ("f", 0), ("h", 0)])
        .unwrap()
        .into_space();
    let mut a = LInfinityAlgebra::abelian("sl2", g);
    let (e, f, h) = (0u16, 1u16, 2u16);
    a.add_bracket_value(&[h, e], &term(&[e], Rational::from_int(2)))
        .unwrap();
    a.add_bracket_value(&[h, f], &term(&[f], Rational::from_int(-2)))
        .unwrap();
    a.add_bracket_value(&[e, f], &term(&[h], Rational::one()))
        .unwrap();
    a
}

/// Killing form of `sl(2)` in the basis `e, f, h`.
pub fn sl2_killing(a: u16, b: u16) -> Rational {
    match (a, b) {
        (0, 1) | (1, 0) => Rational::from_int(4),
        (2, 2) => Rational::from_int(8),
        _ => Rational::zero(),
    }
}

/// The string Lie 2-algebra of `sl(2)`: `sl(2) ⊕ K·c` with `c` in degree -1
/// and ternary bracket `ℓ^3(x,y,z) = κ(x,[y,z])·c` for the Killing form κ.
pub fn string_lie2() -> LInfinityAlgebra {
    let g = GradedSpace::new("string_sl2", [("e", 0), ("f", 0), ("h", 0), ("c", -1)])
        .unwrap()
        .into_space();
    let mut a = LInfinityAlgebra::abelian("string_sl2", g);
    let (e, f, h, c) = (0u16, 1u16, 2u16, 3u16);
    a.add_bracket_value(&[h, e], &term(&[e], Rational::from_int(2)))
        .unwrap();
    a.add_bracket_value(&[h, f], &term(&[f], Rational::from_int(-2)))
        .unwrap();
    a.add_bracket_value(&[e, f], &term(&[h], Rational::one()))
        .unwrap();
    let sl = sl2();
    let bracket = |y: u16, z: u16| sl.eval(&[y, z]);
    // ℓ^3 on the single canonical key (e,f,h)
    let br = bracket(f, h);
    let mut coeff = Rational::zero();
    for (k, v) in br.iter() {
        coeff += v * &sl2_killing(e, k[0]);
    }
    a.add_bracket_value(&[e, f, h], &term(&[c], coeff)).unwrap();
    a
}

/// A differential graded Lie algebra with nonzero differential:
/// `x` in degree 0, `y, z` in degree 1, `ℓ^1 x = y`, `[x,y] = y`, `[x,z] = z`.
pub fn dgla() -> LInfinityAlgebra {
    let g = GradedSpace::new("dgla3", [("x", 0), ("y", 1), ("z", 1)])
        .unwrap()
        .into_space();
    let mut a = LInfinityAlgebra::abelian("dgla", g);
    let (x, y, z) = (0u16, 1u16, 2u16);
    a.add_bracket_value(&[x], &term(&[y], Rational::one()))
        .unwrap();
    a.add_bracket_value(&[x, y], &term(&[y], Rational::one()))
        .unwrap();
    a.add_bracket_value(&[x, z], &term(&[z], Rational::one()))
        .unwrap();
    a
}

/// The Casimir tensor `e⊗f + f⊗e + ½ h⊗h` of `sl(2)` as an element of `g⊗g`.
pub fn sl2_casimir_tensor() -> Tensor {
    let (e, f, h) = (0u16, 1u16, 2u16);
    Tensor::from_terms([
        (key(&[e, f]), Rational::one()),
        (key(&[f, e]), Rational::one()),
        (key(&[h, h]), Rational::new(1, 2)),
    ])
}

/// `sl(2)` with the 2-shifted Poisson structure `π_2^0 = Casimir`.
pub fn sl2_casimir() -> (LInfinityAlgebra, ShiftedPoissonStructure) {
    let alg = sl2();
    let mut p = ShiftedPoissonStructure::new(&alg, 2);
    p.add_value(2, &[], &sl2_casimir_tensor()).unwrap();
    (alg, p)
}

/// `sl(2)` with the non-invariant symmetric tensor `e⊗e`.
pub fn sl2_non_invariant() -> (LInfinityAlgebra, ShiftedPoissonStructure) {
    let alg = sl2();
    let mut p = ShiftedPoissonStructure::new(&alg, 2);
    p.add_value(2, &[], &term(&[0, 0], Rational::one()))
        .unwrap();
    (alg, p)
}

/// The string Lie 2-algebra with the 2-shifted Poisson structure
/// `π_2^1(x) = -½·([h,x]⊗c + c⊗[h,x])`, all other components zero.
///
/// With `π_2^0 = 0` the weight-2 solutions are exactly the maps
/// `x ↦ [y,x]⊗c + c⊗[y,x]`; each solves the full equation, and `π_3` vanishes
/// for degree reasons at every arity.
pub fn string_poisson() -> (LInfinityAlgebra, ShiftedPoissonStructure) {
    let alg = string_lie2();
    let sl = sl2();
    let (h, c) = (2u16, 3u16);
    let mut p = ShiftedPoissonStructure::new(&alg, 2);
    for x in 0u16..3 {
        let mut val = Tensor::new();
        for (k, v) in sl.eval(&[h, x]).iter() {
            let v = v * &Rational::new(-1, 2);
            val.add_term(key(&[k[0], c]), &v);
            val.add_term(key(&[c, k[0]]), &v);
        }
        if !val.is_zero() {
            p.add_value(2, &[x], &val).unwrap();
        }
    }
    (alg, p)
}

/// Tensor factor list `g^{⊗n}` of an algebra.
pub fn g_power(alg: &LInfinityAlgebra, n: usize) -> Factors {
    Factors::power(alg.space(), n)
}
