//! Seeded random instances for the axiom suites.
//!
//! Random algebras have their brackets landing in a central ideal `Z` and
//! taking inputs from a complement `A`, so every generalised Jacobi term
//! vanishes and any choice of constants is valid. Layered modules
//! `V_0 → V_1` over such algebras are representations for the same reason.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fixtures;
use crate::graded::{skew_keys, Factors, GradedSpace, Key, Space, Tensor};
use crate::linfty::LInfinityAlgebra;
use crate::poisson::{coordinates, ShiftedPoissonStructure};
use crate::rational::Rational;
use crate::repcat::{adjoint, tensor_rep, trivial, Intertwiner, Representation};

/// Knobs of the instance generator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub max_dim: usize,
    pub min_degree: i32,
    pub max_degree: i32,
    /// Probability that a degree-compatible structure constant is nonzero.
    pub density: f64,
    /// Constants are drawn from `±1..=max_coeff`.
    pub max_coeff: i64,
    /// Highest bracket, action and intertwiner arity generated.
    pub max_arity: usize,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            max_dim: 3,
            min_degree: -2,
            max_degree: 2,
            density: 0.6,
            max_coeff: 3,
            max_arity: 3,
        }
    }
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_dim < 2 {
            return Err(Error::Invalid("max_dim must be at least 2".into()));
        }
        if self.min_degree > self.max_degree {
            return Err(Error::Invalid("empty degree range".into()));
        }
        if !(0.0..=1.0).contains(&self.density) {
            return Err(Error::Invalid("density must lie in [0, 1]".into()));
        }
        if self.max_coeff < 1 || self.max_arity < 1 {
            return Err(Error::Invalid(
                "max_coeff and max_arity must be positive".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AlgebraKind {
    /// Brackets of several arities from `A` into the central ideal `Z`.
    Central,
    /// Abelian with a square-zero differential `A → Z`.
    Differential,
    /// `sl(2)`.
    Sl2,
}

/// A generated algebra and the labels its brackets read (`A`).
#[derive(Clone, Debug)]
pub struct RandomAlgebra {
    pub kind: AlgebraKind,
    pub alg: LInfinityAlgebra,
    pub active: Vec<u16>,
}

pub struct InstanceGenerator {
    cfg: GeneratorConfig,
    rng: ChaCha8Rng,
}

impl InstanceGenerator {
    pub fn new(seed: u64, cfg: GeneratorConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(InstanceGenerator {
            cfg,
            rng: ChaCha8Rng::seed_from_u64(seed),
        })
    }

    pub fn config(&self) -> &GeneratorConfig {
        &self.cfg
    }

    fn coeff(&mut self) -> Rational {
        let m = self.rng.gen_range(1..=self.cfg.max_coeff);
        Rational::from_int(if self.rng.gen_bool(0.5) { m } else { -m })
    }

    fn degree(&mut self) -> i32 {
        self.rng
            .gen_range(self.cfg.min_degree..=self.cfg.max_degree)
    }

    fn in_range(&self, d: i32) -> bool {
        (self.cfg.min_degree..=self.cfg.max_degree).contains(&d)
    }

    /// A degree for an output element that makes some entry of a map of
    /// arity in `arities` with inputs drawn from `inputs` degree-compatible.
    fn fitted_degree(
        &mut self,
        inputs: &[i32],
        shift: impl Fn(usize) -> i32,
        arities: &[usize],
    ) -> i32 {
        for _ in 0..8 {
            let Some(&i) = arities.choose(&mut self.rng) else {
                break;
            };
            let s: i32 = (0..i)
                .map(|_| *inputs.choose(&mut self.rng).unwrap_or(&0))
                .sum();
            let d = s + shift(i);
            if self.in_range(d) {
                return d;
            }
        }
        self.degree()
    }

    fn space(&self, name: &str, labels: Vec<(String, i32)>) -> Space {
        GradedSpace::new(name, labels)
            .expect("generated labels are distinct")
            .into_space()
    }

    /// A random algebra of the requested kind.
    pub fn algebra_of(&mut self, kind: AlgebraKind) -> RandomAlgebra {
        if kind == AlgebraKind::Sl2 {
            let alg = fixtures::sl2();
            let active = (0..3).collect();
            return RandomAlgebra { kind, alg, active };
        }
        let na = self.rng.gen_range(1..self.cfg.max_dim);
        let nz = self.rng.gen_range(1..=self.cfg.max_dim - na);
        let arities: Vec<usize> = match kind {
            AlgebraKind::Differential => vec![1],
            _ => (1..=self.cfg.max_arity).collect(),
        };
        let da: Vec<i32> = (0..na).map(|_| self.degree()).collect();
        let mut labels: Vec<(String, i32)> = da
            .iter()
            .enumerate()
            .map(|(k, &d)| (format!("a{k}"), d))
            .collect();
        for k in 0..nz {
            let d = self.fitted_degree(&da, |i| 2 - i as i32, &arities);
            labels.push((format!("z{k}"), d));
        }
        let g = self.space("random", labels);
        let active: Vec<u16> = (0..na as u16).collect();
        let mut alg = LInfinityAlgebra::abelian(format!("{kind:?}").to_lowercase(), g.clone());
        for &i in &arities {
            for x in skew_keys(&g, i) {
                if !x.iter().all(|v| active.contains(v)) {
                    continue;
                }
                let target = g.key_degree(&x) + 2 - i as i32;
                for z in na as u16..g.dim() as u16 {
                    if g.degree(z) == target && self.rng.gen_bool(self.cfg.density) {
                        let t = Tensor::from_terms([(Key::from_slice(&[z]), self.coeff())]);
                        alg.add_bracket_value(&x, &t).expect("degree-compatible");
                    }
                }
            }
        }
        RandomAlgebra { kind, alg, active }
    }

    pub fn algebra(&mut self) -> RandomAlgebra {
        let kind = *[
            AlgebraKind::Central,
            AlgebraKind::Central,
            AlgebraKind::Differential,
            AlgebraKind::Sl2,
        ]
        .choose(&mut self.rng)
        .unwrap();
        self.algebra_of(kind)
    }

    /// A module with generators in `layers` consecutive layers whose action
    /// maps each layer into the next, reading only the active labels.
    fn layered(&mut self, ra: &RandomAlgebra, layers: usize, name: &str) -> Representation {
        let g = ra.alg.space();
        let act_deg: Vec<i32> = ra.active.iter().map(|&a| g.degree(a)).collect();
        let arities: Vec<usize> = (1..=self.cfg.max_arity).collect();
        let mut labels: Vec<(String, i32)> = Vec::new();
        let mut layer_of = Vec::new();
        let mut prev: Vec<i32> = Vec::new();
        for l in 0..layers {
            let n = if l == 0 { self.rng.gen_range(1..=2) } else { 1 };
            let mut cur = Vec::new();
            for k in 0..n {
                let d = if l == 0 {
                    self.degree()
                } else {
                    let base = *prev.choose(&mut self.rng).unwrap();
                    self.fitted_degree(&act_deg, |i| base + 2 - i as i32, &arities)
                };
                labels.push((format!("v{l}_{k}"), d));
                layer_of.push(l);
                cur.push(d);
            }
            prev = cur;
        }
        let v = self.space(name, labels);
        let vf = Factors::single(v.clone());
        let mut rho = Intertwiner::zero(g, vf.clone(), vf, 1);
        for &i in &arities {
            for x in skew_keys(g, i - 1) {
                if !x.iter().all(|a| ra.active.contains(a)) {
                    continue;
                }
                for s in 0..v.dim() as u16 {
                    let target = g.key_degree(&x) + v.degree(s) + 2 - i as i32;
                    for t in 0..v.dim() as u16 {
                        if layer_of[t as usize] == layer_of[s as usize] + 1
                            && v.degree(t) == target
                            && self.rng.gen_bool(self.cfg.density)
                        {
                            let val = Tensor::from_terms([(Key::from_slice(&[t]), self.coeff())]);
                            rho.add_value(&x, &[s], &val).expect("degree-compatible");
                        }
                    }
                }
            }
        }
        Representation::new(name, rho).expect("degree-1 endomorphism family")
    }

    /// A representation of `ra`: trivial, adjoint, layered (for algebras with
    /// a central target), or a tensor product of two of those.
    pub fn representation(&mut self, ra: &RandomAlgebra, cap: usize) -> Result<Representation> {
        let simple = |s: &mut Self| -> Representation {
            let layered_ok = ra.kind != AlgebraKind::Sl2;
            match s.rng.gen_range(0..if layered_ok { 4 } else { 2 }) {
                0 => trivial(&ra.alg),
                1 => adjoint(&ra.alg),
                _ => s.layered(ra, 2, "V"),
            }
        };
        if self.rng.gen_bool(0.25) {
            let a = simple(self);
            let b = simple(self);
            if a.factors().len() + b.factors().len() <= 2 {
                return tensor_rep(&a, &b, cap);
            }
            return Ok(a);
        }
        Ok(simple(self))
    }

    /// A candidate action family that is expected to fail the action
    /// property: three layers for central algebras, a rescaled adjoint
    /// action for `sl(2)`.
    pub fn broken_candidate(&mut self, ra: &RandomAlgebra) -> Representation {
        if ra.kind == AlgebraKind::Sl2 {
            let ad = adjoint(&ra.alg);
            let c = Rational::from_int(self.rng.gen_range(2..=3));
            return Representation::new("scaled adjoint", ad.rho().scaled(&c))
                .expect("degree-1 endomorphism family");
        }
        self.layered(ra, 3, "V")
    }

    /// A random intertwiner family `U ⇝ V` with components of arity up to
    /// the configured maximum; its degree is chosen so that at least one
    /// entry is degree-compatible when possible.
    pub fn intertwiner(&mut self, g: &Space, u: &Factors, v: &Factors) -> Intertwiner {
        let ub = u.basis();
        let vb = v.basis();
        let max_i = self.cfg.max_arity;
        let degree = match (ub.choose(&mut self.rng), vb.choose(&mut self.rng)) {
            (Some(a), Some(b)) => {
                let it = self.rng.gen_range(0..max_i);
                let xs: i32 = (0..it)
                    .map(|_| g.degree(self.rng.gen_range(0..g.dim() as u16)))
                    .sum();
                v.degree(b) - u.degree(a) - xs + it as i32
            }
            _ => 0,
        };
        let mut f = Intertwiner::zero(g, u.clone(), v.clone(), degree);
        for i in 1..=max_i {
            for x in skew_keys(g, i - 1) {
                for a in &ub {
                    let target = g.key_degree(&x) + u.degree(a) + degree - (i as i32 - 1);
                    let mut val = Tensor::new();
                    for b in &vb {
                        if v.degree(b) == target && self.rng.gen_bool(self.cfg.density) {
                            val.add_term(b.clone(), &self.coeff());
                        }
                    }
                    if !val.is_zero() {
                        f.add_value(&x, a, &val).expect("degree-compatible");
                    }
                }
            }
        }
        f
    }

    /// Random symmetric values for `π_2` and `π_3` at arities up to
    /// `arity_cap`, generally not a solution.
    pub fn poisson_candidate(
        &mut self,
        alg: &LInfinityAlgebra,
        arity_cap: usize,
    ) -> ShiftedPoissonStructure {
        let mut p = ShiftedPoissonStructure::new(alg, 2);
        for w in 2..=3 {
            for i in 0..=arity_cap {
                for (x, t) in coordinates(&p.clone(), w, i) {
                    if self.rng.gen_bool(self.cfg.density / 2.0) {
                        let c = self.coeff();
                        p.add_value(w, &x, &t.scaled(&c))
                            .expect("symmetric by construction");
                    }
                }
            }
        }
        p
    }
}
