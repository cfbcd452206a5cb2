//! Realizations `x̂_μ = x^α φ_αμ(∂)`: the catalog, the type I / type II /
//! vector-like / linear builders, and explicit φ-matrices.

pub mod config;
pub mod derived;
pub mod similarity;

use std::fmt;

use crate::algebra::poly::eta;
use crate::algebra::{Block, Ctx, GaussRat, Poly, Rat, ScalarSeries2};
use crate::error::{KappaError, Result};
use crate::weyl::{contract_x, WeylOp};

pub use derived::{ConversionData, DerivedOps};
pub use similarity::{conjugate_by_exponential, from_d_and_phi, natural_phi_of_d, solve_similarity};

/// Generating data of a realization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealizationKind {
    Linear { alpha: Rat, beta: Rat, gamma: Rat },
    TypeI(ScalarSeries2),
    TypeII(ScalarSeries2),
    VectorLike(ScalarSeries2),
    Explicit,
}

impl RealizationKind {
    pub fn label(&self) -> &'static str {
        match self {
            RealizationKind::Linear { .. } => "linear",
            RealizationKind::TypeI(_) => "type1",
            RealizationKind::TypeII(_) => "type2",
            RealizationKind::VectorLike(_) => "vector_like",
            RealizationKind::Explicit => "explicit",
        }
    }
}

/// Scalar functions of `(A, B)` in the covariant form
/// `x̂_μ = x_μφ + i(ax)(∂_μβ₁ + ia_μ∂²β₂) + i(x∂)(a_μγ₁ + ia²∂_μγ₂)`,
/// together with the closed forms known for the family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CovariantData {
    pub phi: ScalarSeries2,
    pub beta1: ScalarSeries2,
    pub beta2: ScalarSeries2,
    pub gamma1: ScalarSeries2,
    pub gamma2: ScalarSeries2,
    /// `f(B)` for vector-like realizations.
    pub f: Option<ScalarSeries2>,
    /// `D_μ = ∂_μ G₁ + i a_μ ∂² G₂`.
    pub g1: Option<ScalarSeries2>,
    pub g2: Option<ScalarSeries2>,
    /// Closed form of the shift operator.
    pub z: Option<ScalarSeries2>,
}

#[derive(Clone, Debug)]
pub struct Realization {
    name: String,
    ctx: Ctx,
    phi: Vec<Vec<Poly>>,
    kind: RealizationKind,
    covariant: Option<CovariantData>,
}

impl PartialEq for Realization {
    /// Realizations are equal when their φ-matrices agree.
    fn eq(&self, o: &Self) -> bool {
        self.ctx == o.ctx && self.phi == o.phi
    }
}

impl Realization {
    /// A realization from an explicit φ-matrix of ∂-polynomials
    /// (`phi[α][μ]`).
    pub fn explicit(name: &str, ctx: Ctx, phi: Vec<Vec<Poly>>) -> Result<Self> {
        let r = Realization { name: name.to_string(), ctx, phi, kind: RealizationKind::Explicit, covariant: None };
        r.validate()?;
        Ok(r)
    }

    fn validate(&self) -> Result<()> {
        let n = self.ctx.dim;
        if self.phi.len() != n || self.phi.iter().any(|row| row.len() != n) {
            return Err(KappaError::InvalidRealization(format!("φ must be {n}×{n}")));
        }
        for (alpha, row) in self.phi.iter().enumerate() {
            for (mu, p) in row.iter().enumerate() {
                if p.ctx() != self.ctx {
                    return Err(KappaError::ContextMismatch("φ entry".into()));
                }
                if p.contains_block(Block::X) || [Block::V, Block::K, Block::Q, Block::W].iter().any(|&b| p.contains_block(b)) {
                    return Err(KappaError::InvalidRealization(format!("φ[{alpha}][{mu}] must depend on a and ∂ only")));
                }
                let limit = p.a_part(0);
                let expect = if alpha == mu { Poly::int(self.ctx, eta(mu)) } else { Poly::zero(self.ctx) };
                if limit != expect {
                    return Err(KappaError::InvalidRealization(format!("φ[{alpha}][{mu}] does not reduce to η at a = 0")));
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn ctx(&self) -> Ctx {
        self.ctx
    }

    pub fn dim(&self) -> usize {
        self.ctx.dim
    }

    pub fn order(&self) -> usize {
        self.ctx.order
    }

    pub fn kind(&self) -> &RealizationKind {
        &self.kind
    }

    pub fn covariant(&self) -> Option<&CovariantData> {
        self.covariant.as_ref()
    }

    /// `φ_αμ(∂)` indexed `[α][μ]`.
    pub fn phi(&self) -> &[Vec<Poly>] {
        &self.phi
    }

    /// `h_αμ(p) = φ_αμ(∂ = ip)` as polynomials in the `k` block.
    pub fn h(&self) -> Vec<Vec<Poly>> {
        self.phi
            .iter()
            .map(|row| row.iter().map(|p| WeylOp::from_poly(p.clone()).symbol_at(Block::K)).collect())
            .collect()
    }

    pub fn xhat(&self) -> Vec<WeylOp> {
        contract_x(self.ctx, &self.phi)
    }

    /// Re-truncates to a lower order (or relabels a polynomial φ to a higher
    /// one, as for linear realizations).
    pub fn with_order(&self, order: usize) -> Self {
        Realization {
            name: self.name.clone(),
            ctx: self.ctx.with_order(order),
            phi: self.phi.iter().map(|row| row.iter().map(|p| p.with_order(order)).collect()).collect(),
            kind: self.kind.clone(),
            covariant: self.covariant.clone(),
        }
    }

    fn from_covariant(name: &str, ctx: Ctx, kind: RealizationKind, data: CovariantData) -> Result<Self> {
        let phi = covariant_phi(ctx, &data)?;
        let r = Realization { name: name.to_string(), ctx, phi, kind, covariant: Some(data) };
        r.validate()?;
        Ok(r)
    }
}

impl fmt::Display for Realization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "realization {} ({}, n={}, N={})", self.name, self.kind.label(), self.ctx.dim, self.ctx.order)?;
        for (mu, x) in self.xhat().iter().enumerate() {
            writeln!(f, "  X{mu} = {x}")?;
        }
        Ok(())
    }
}

/// `φ_αμ = η_αμφ + i a_α∂_μβ₁ − a_α a_μ∂²β₂ + i a_μ∂_αγ₁ − a²∂_α∂_μγ₂`.
fn covariant_phi(ctx: Ctx, d: &CovariantData) -> Result<Vec<Vec<Poly>>> {
    let phi = d.phi.to_poly(ctx, Block::D)?;
    let beta1 = d.beta1.to_poly(ctx, Block::D)?;
    let beta2 = d.beta2.to_poly(ctx, Block::D)?;
    let gamma1 = d.gamma1.to_poly(ctx, Block::D)?;
    let gamma2 = d.gamma2.to_poly(ctx, Block::D)?;
    let dd = Poly::dot(ctx, Block::D, Block::D);
    let aa = Poly::dot(ctx, Block::A, Block::A);
    let n = ctx.dim;
    let a = |m: usize| Poly::a(ctx, m);
    let del = |m: usize| Poly::var(ctx, Block::D, m);
    let mut out = vec![vec![Poly::zero(ctx); n]; n];
    for (alpha, row) in out.iter_mut().enumerate() {
        for (mu, entry) in row.iter_mut().enumerate() {
            let mut p = Poly::zero(ctx);
            if alpha == mu {
                p.add_assign_ref(&phi.scale_int(eta(mu)));
            }
            p.add_assign_ref(&(&(&a(alpha) * &del(mu)) * &beta1).mul_i());
            p.sub_assign_ref(&(&(&(&a(alpha) * &a(mu)) * &dd) * &beta2));
            p.add_assign_ref(&(&(&a(mu) * &del(alpha)) * &gamma1).mul_i());
            p.sub_assign_ref(&(&(&(&aa * &del(alpha)) * &del(mu)) * &gamma2));
            *entry = p;
        }
    }
    Ok(out)
}

fn series_weight(ctx: Ctx) -> usize {
    ctx.order + 2
}

fn require_unit(s: &ScalarSeries2, what: &str) -> Result<()> {
    if s.constant_term().is_one() {
        Ok(())
    } else {
        Err(KappaError::InvalidRealization(format!("{what}(0) must be 1, found {}", s.constant_term())))
    }
}

/// `x̂_μ = x_μ + i(α x_μ(a∂) + β(ax)∂_μ + γ a_μ(x∂))`, truncated at order 1.
pub fn build_linear(ctx: Ctx, alpha: Rat, beta: Rat, gamma: Rat) -> Result<Realization> {
    if &gamma - &alpha != Rat::ONE {
        return Err(KappaError::ConstraintViolated(format!("γ − α must be 1 (α={alpha}, γ={gamma})")));
    }
    let ctx1 = ctx.with_order(ctx.order.min(1));
    let w = 3;
    let r = |x: &Rat| ScalarSeries2::constant(GaussRat::real(x.clone()), w);
    let data = CovariantData {
        phi: ScalarSeries2::one(w).add(&ScalarSeries2::a(w).scale(&GaussRat::real(alpha.clone()))),
        beta1: r(&beta),
        beta2: ScalarSeries2::zero(w),
        gamma1: r(&gamma),
        gamma2: ScalarSeries2::zero(w),
        f: None,
        g1: None,
        g2: None,
        z: None,
    };
    let name = format!("linear({alpha},{beta},{gamma})");
    Realization::from_covariant(&name, ctx1, RealizationKind::Linear { alpha, beta, gamma }, data)
}

/// `φ − (Aφ_A + 2Bφ_B)`.
fn gamma_denominator(phi: &ScalarSeries2) -> ScalarSeries2 {
    phi.sub(&phi.d_a().times_a()).sub(&phi.d_b().times_b().scale(&GaussRat::int(2)))
}

/// `γ₁ = (1 + φ_A)φ / (φ − Aφ_A − 2Bφ_B)`.
fn gamma1_of(phi: &ScalarSeries2) -> Result<ScalarSeries2> {
    let w = phi.weight();
    ScalarSeries2::one(w).add(&phi.d_a()).mul(phi).div(&gamma_denominator(phi))
}

/// Type I: `x̂_μ = x_μφ + i(x∂)(a_μγ₁ + ia²∂_μγ₂)`.
pub fn build_type1(ctx: Ctx, phi: &ScalarSeries2) -> Result<Realization> {
    let phi = phi.with_weight(series_weight(ctx));
    require_unit(&phi, "φ")?;
    let w = phi.weight();
    let den = gamma_denominator(&phi);
    let gamma1 = gamma1_of(&phi)?;
    let gamma2 = phi.d_b().mul(&phi).scale(&GaussRat::int(-2)).div(&den)?;
    let phi_plus_a = phi.add(&ScalarSeries2::a(w));
    let g1 = phi_plus_a.reciprocal()?;
    let g2 = phi.mul(&phi_plus_a).scale(&GaussRat::int(2)).reciprocal()?;
    let z = ScalarSeries2::one(w).add(&ScalarSeries2::a(w).div(&phi)?);
    let data = CovariantData {
        phi: phi.clone(),
        beta1: ScalarSeries2::zero(w),
        beta2: ScalarSeries2::zero(w),
        gamma1,
        gamma2,
        f: None,
        g1: Some(g1),
        g2: Some(g2),
        z: Some(z),
    };
    Realization::from_covariant("type1", ctx, RealizationKind::TypeI(phi), data)
}

/// Type II: `x̂_μ = x_μφ + i(ax)∂_μ + i(x∂)(a_μγ₁ + ia²∂_μγ₂)`.
pub fn build_type2(ctx: Ctx, phi: &ScalarSeries2) -> Result<Realization> {
    let phi = phi.with_weight(series_weight(ctx));
    require_unit(&phi, "φ")?;
    let w = phi.weight();
    let den = gamma_denominator(&phi);
    let gamma1 = gamma1_of(&phi)?;
    let phi_plus_a = phi.add(&ScalarSeries2::a(w));
    let num = phi.d_a().sub(&phi_plus_a.mul(&phi.d_b()).scale(&GaussRat::int(2)));
    let gamma2 = num.div(&den)?;
    let g1 = phi_plus_a.mul(&phi_plus_a).add(&ScalarSeries2::b(w)).sqrt()?.reciprocal()?;
    let inv_phi = phi.reciprocal()?;
    let one_a = ScalarSeries2::one(w).add(&ScalarSeries2::a(w).mul(&inv_phi));
    let z = one_a.mul(&one_a).add(&ScalarSeries2::b(w).mul(&inv_phi).mul(&inv_phi)).sqrt()?;
    let data = CovariantData {
        phi: phi.clone(),
        beta1: ScalarSeries2::one(w),
        beta2: ScalarSeries2::zero(w),
        gamma1,
        gamma2,
        f: None,
        g1: Some(g1),
        g2: Some(ScalarSeries2::zero(w)),
        z: Some(z),
    };
    Realization::from_covariant("type2", ctx, RealizationKind::TypeII(phi), data)
}

/// Vector-like: `x̂_μ = x_μ(−A + f(B)) + i(ax)∂_μ − a²(x∂)∂_μγ₂(B)` with
/// `γ₂ = −(1 + 2ff') / (f − 2Bf')`.
pub fn build_vector_like(ctx: Ctx, f: &ScalarSeries2) -> Result<Realization> {
    let f = f.with_weight(series_weight(ctx));
    if f.depends_on_a() {
        return Err(KappaError::InvalidRealization("f must be a function of B alone".into()));
    }
    require_unit(&f, "f")?;
    let w = f.weight();
    let fp = f.d_b();
    let den = f.sub(&fp.times_b().scale(&GaussRat::int(2)));
    if den.constant_term().is_zero() {
        return Err(KappaError::InvalidRealization("γ₂ denominator f − 2Bf' vanishes at B = 0".into()));
    }
    let num = ScalarSeries2::one(w).add(&f.mul(&fp).scale(&GaussRat::int(2)));
    let gamma2 = num.div(&den)?.neg();
    let phi = f.sub(&ScalarSeries2::a(w));
    let root = f.mul(&f).add(&ScalarSeries2::b(w)).sqrt()?;
    let g = root.reciprocal()?;
    let z = root.div(&phi)?;
    let data = CovariantData {
        phi: phi.clone(),
        beta1: ScalarSeries2::one(w),
        beta2: ScalarSeries2::zero(w),
        gamma1: ScalarSeries2::zero(w),
        gamma2,
        f: Some(f.clone()),
        g1: Some(g),
        g2: Some(ScalarSeries2::zero(w)),
        z: Some(z),
    };
    Realization::from_covariant("vector_like", ctx, RealizationKind::VectorLike(f), data)
}

/// `φ_L = 1 − A`.
pub fn phi_left(weight: usize) -> ScalarSeries2 {
    ScalarSeries2::one(weight).sub(&ScalarSeries2::a(weight))
}

/// `φ_R = 1`.
pub fn phi_right(weight: usize) -> ScalarSeries2 {
    ScalarSeries2::one(weight)
}

/// `φ_S = A / (e^A − 1)`.
pub fn phi_symmetric(weight: usize) -> ScalarSeries2 {
    let s = ScalarSeries2::of_a(weight, |m| crate::algebra::series::factorial(m + 1).inv());
    s.reciprocal().expect("unit constant term")
}

/// `f_N = √(1 − B)`.
pub fn f_natural(weight: usize) -> ScalarSeries2 {
    ScalarSeries2::one(weight).sub(&ScalarSeries2::b(weight)).sqrt().expect("unit constant term")
}

pub const CATALOG: [&str; 5] = ["left", "right", "symmetric", "natural", "ms"];

pub fn catalog_description(name: &str) -> &'static str {
    match name {
        "left" => "left covariant, type I, phi = 1 - A",
        "right" => "right covariant, type I, phi = 1",
        "symmetric" => "totally symmetric, type I, phi = A/(e^A - 1)",
        "natural" => "natural (classical basis), vector-like, f = sqrt(1 - B)",
        "ms" => "Magueijo-Smolin, type II, phi = 1",
        _ => "",
    }
}

/// Catalog realization by name.
pub fn catalog(name: &str, ctx: Ctx) -> Result<Realization> {
    let w = series_weight(ctx);
    let r = match name {
        "left" | "left-covariant" => build_type1(ctx, &phi_left(w))?,
        "right" | "right-covariant" => build_type1(ctx, &phi_right(w))?,
        "symmetric" | "weyl" => build_type1(ctx, &phi_symmetric(w))?,
        "natural" | "classical" => build_vector_like(ctx, &f_natural(w))?,
        "ms" | "magueijo-smolin" => build_type2(ctx, &phi_right(w))?,
        _ => return Err(KappaError::Config(format!("unknown realization `{name}`"))),
    };
    let canonical = match name {
        "left-covariant" => "left",
        "right-covariant" => "right",
        "weyl" => "symmetric",
        "classical" => "natural",
        "magueijo-smolin" => "ms",
        n => n,
    };
    Ok(r.with_name(canonical))
}

/// Residuals `[x̂_μ, x̂_ν] − i(a_μx̂_ν − a_νx̂_μ)` for `μ < ν`.
pub fn kappa_residuals(xhat: &[WeylOp]) -> Vec<((usize, usize), WeylOp)> {
    let ctx = xhat[0].ctx();
    let mut out = Vec::new();
    for mu in 0..ctx.dim {
        for nu in mu + 1..ctx.dim {
            let lhs = xhat[mu].commutator(&xhat[nu]);
            let rhs = &xhat[nu].scale_poly(&Poly::a(ctx, mu)) - &xhat[mu].scale_poly(&Poly::a(ctx, nu));
            out.push(((mu, nu), &lhs - &rhs.scale(&GaussRat::I)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_satisfies_kappa_relations() {
        for n in [2, 3] {
            let ctx = Ctx::new(n, 3).unwrap();
            for name in CATALOG {
                let r = catalog(name, ctx).unwrap();
                for (_, res) in kappa_residuals(&r.xhat()) {
                    assert!(res.is_zero(), "{name} n={n}: {res}");
                }
            }
        }
    }

    #[test]
    fn natural_equals_type2_form() {
        let ctx = Ctx::new(3, 3).unwrap();
        let w = 5;
        let phi = f_natural(w).sub(&ScalarSeries2::a(w));
        let t2 = build_type2(ctx, &phi).unwrap();
        let nat = catalog("natural", ctx).unwrap();
        assert_eq!(t2, nat);
        let data = t2.covariant().unwrap();
        assert!(data.gamma1.coeffs().next().is_none());
        assert!(data.gamma2.coeffs().next().is_none());
    }

    #[test]
    fn builders_reject_bad_input() {
        let ctx = Ctx::new(2, 2).unwrap();
        assert!(matches!(
            build_linear(ctx, Rat::int(0), Rat::int(0), Rat::int(0)),
            Err(KappaError::ConstraintViolated(_))
        ));
        let two = ScalarSeries2::constant(GaussRat::int(2), 4);
        assert!(build_type1(ctx, &two).is_err());
        assert!(build_type2(ctx, &two).is_err());
        assert!(build_vector_like(ctx, &two).is_err());
        assert!(build_vector_like(ctx, &ScalarSeries2::one(4).add(&ScalarSeries2::a(4))).is_err());
        assert!(catalog("nope", ctx).is_err());
    }

    #[test]
    fn linear_builder_is_first_order() {
        let ctx = Ctx::new(2, 3).unwrap();
        let r = build_linear(ctx, Rat::int(-1), Rat::int(1), Rat::int(0)).unwrap();
        assert_eq!(r.order(), 1);
        let nat = catalog("natural", ctx.with_order(1)).unwrap();
        assert_eq!(r.phi(), nat.phi());
    }
}
