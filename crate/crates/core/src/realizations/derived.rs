//! Operators derived from a realization: shift operator `Z`, Casimir `□`,
//! Dirac derivatives `D_μ`, natural coordinates `X_μ`, Lorentz generators
//! `M_μν` and the left-invariant derivatives.

use crate::algebra::poly::eta;
use crate::algebra::{Block, GaussRat, Poly, PolyMatrix, Rat, ScalarSeries2};
use crate::error::{KappaError, Result};
use crate::weyl::{contract_x, WeylOp};

use super::Realization;

/// `(1 + u)⁻¹ = Σ (−u)^k` for a polynomial with constant term 1 and no
/// other a-degree-0 part.
pub fn unit_inverse(p: &Poly) -> Result<Poly> {
    let ctx = p.ctx();
    if !p.constant_term().is_one() || p.a_part(0) != Poly::one(ctx) {
        return Err(KappaError::ZeroConstantTerm);
    }
    let u = p - &Poly::one(ctx);
    let minus_u = -&u;
    let mut acc = Poly::one(ctx);
    let mut pw = Poly::one(ctx);
    for _ in 0..ctx.order {
        pw = &pw * &minus_u;
        if pw.is_zero() {
            break;
        }
        acc.add_assign_ref(&pw);
    }
    Ok(acc)
}

/// Splits each φ entry by a-degree: `parts[l][α][μ]`.
fn graded(phi: &[Vec<Poly>], order: usize) -> Vec<Vec<Vec<Poly>>> {
    (0..=order).map(|l| phi.iter().map(|row| row.iter().map(|p| p.a_part(l)).collect()).collect()).collect()
}

/// Solves `Σ_α ∂U_u/∂∂_α φ_αμ = F_{uμ}` order by order in `a`.
///
/// `init` holds the a-degree-0 parts. `rhs(current, m)` returns the
/// a-degree-`m` part of `F_{uμ}`, given the unknowns solved through order
/// `m − 1`. Each order is fixed from its gradient by the Euler relation and
/// the gradient is then checked for integrability.
pub fn solve_gradient(
    phi: &[Vec<Poly>],
    init: Vec<Poly>,
    rhs: impl Fn(&[Poly], usize) -> Vec<Vec<Poly>>,
) -> Result<Vec<Poly>> {
    let ctx = init[0].ctx();
    let n = ctx.dim;
    let parts = graded(phi, ctx.order);
    let mut current = init;
    // grads[j][u][α] = ∂U_u^{(j)}/∂∂_α
    let mut grads: Vec<Vec<Vec<Poly>>> = vec![current
        .iter()
        .map(|u| (0..n).map(|al| u.derivative(Block::D.var(al))).collect())
        .collect()];
    for m in 1..=ctx.order {
        let f = rhs(&current, m);
        let mut layer = Vec::with_capacity(current.len());
        for (ui, f_u) in f.iter().enumerate() {
            let mut g = Vec::with_capacity(n);
            for (mu, f_um) in f_u.iter().enumerate() {
                let mut r = f_um.clone();
                for (j, gj) in grads.iter().enumerate() {
                    for (al, dal) in gj[ui].iter().enumerate() {
                        let ph = &parts[m - j][al][mu];
                        if !dal.is_zero() && !ph.is_zero() {
                            r.sub_assign_ref(&(dal * ph));
                        }
                    }
                }
                g.push(r.scale_int(eta(mu)));
            }
            let mut euler = Poly::zero(ctx);
            for (mu, gm) in g.iter().enumerate() {
                euler.add_assign_ref(&(&Poly::var(ctx, Block::D, mu) * gm));
            }
            let um = euler.scale_by_block_degree(Block::D, |e| GaussRat::real(Rat::new(1, e.max(1) as i64)));
            for (mu, gm) in g.iter().enumerate() {
                if &um.derivative(Block::D.var(mu)) != gm {
                    return Err(KappaError::Inconsistent(format!(
                        "gradient system not integrable at order {m} (component {ui}, index {mu})"
                    )));
                }
            }
            layer.push(um);
        }
        let mut g_layer = Vec::with_capacity(layer.len());
        for (ui, um) in layer.into_iter().enumerate() {
            g_layer.push((0..n).map(|al| um.derivative(Block::D.var(al))).collect());
            current[ui].add_assign_ref(&um);
        }
        grads.push(g_layer);
    }
    Ok(current)
}

/// `Z` from `[Z, x̂_μ] = i a_μ Z`.
pub fn solve_z(r: &Realization) -> Result<Poly> {
    let ctx = r.ctx();
    let out = solve_gradient(r.phi(), vec![Poly::one(ctx)], |cur, m| {
        let prev = cur[0].a_part(m - 1);
        vec![(0..ctx.dim).map(|mu| (&Poly::a(ctx, mu) * &prev).mul_i()).collect()]
    })?;
    Ok(out.into_iter().next().unwrap())
}

/// Casimir from `[□, x̂_μ] = 2D_μ`, `□ = ∂² + O(a)`: the natural
/// d'Alembertian `(2/a²)(1 − √(1 − a²D²))` expressed in this realization.
pub fn solve_box(r: &Realization, d: &[Poly]) -> Result<Poly> {
    let ctx = r.ctx();
    let init = Poly::dot(ctx, Block::D, Block::D);
    let out = solve_gradient(r.phi(), vec![init], |_, m| vec![d.iter().map(|dm| dm.a_part(m).scale_int(2)).collect()])?;
    Ok(out.into_iter().next().unwrap())
}

/// `□_h` from `[□_h, x̂_μ] = 2∂_μ`; integrable only when `p_μ` transforms
/// as a vector under `M_μν`.
pub fn solve_own_box(r: &Realization) -> Result<Poly> {
    let ctx = r.ctx();
    let init = Poly::dot(ctx, Block::D, Block::D);
    let out = solve_gradient(r.phi(), vec![init], |_, _| vec![vec![Poly::zero(ctx); ctx.dim]])?;
    Ok(out.into_iter().next().unwrap())
}

/// `D_μ` from `[D_μ, x̂_ν] = η_μν Z⁻¹ + i a_μ D_ν`, `D_μ = ∂_μ + O(a)`.
pub fn solve_d(r: &Realization, z_inv: &Poly) -> Result<Vec<Poly>> {
    let ctx = r.ctx();
    let n = ctx.dim;
    let init = (0..n).map(|mu| Poly::var(ctx, Block::D, mu)).collect();
    solve_gradient(r.phi(), init, |cur, m| {
        let zm = z_inv.a_part(m);
        (0..n)
            .map(|mu| {
                (0..n)
                    .map(|nu| {
                        let mut f = (&Poly::a(ctx, mu) * &cur[nu].a_part(m - 1)).mul_i();
                        if mu == nu {
                            f.add_assign_ref(&zm.scale_int(eta(mu)));
                        }
                        f
                    })
                    .collect()
            })
            .collect()
    })
}

/// The Jacobian `J_μα = ∂D_μ/∂∂_α`.
pub fn d_jacobian(d: &[Poly]) -> PolyMatrix {
    let n = d.len();
    PolyMatrix::from_rows(d.iter().map(|dm| (0..n).map(|al| dm.derivative(Block::D.var(al))).collect()).collect())
}

/// `ψ = J⁻¹η`, so that `X_μ = x^α ψ_αμ` satisfies `[D_μ, X_ν] = η_μν`.
pub fn psi_matrix(d: &[Poly]) -> Result<PolyMatrix> {
    let ctx = d[0].ctx();
    let n = d.len();
    let jinv = d_jacobian(d).inverse(ctx.order)?;
    let mut psi = jinv.clone();
    for al in 0..n {
        for mu in 0..n {
            psi.set(al, mu, jinv.get(al, mu).scale_int(eta(mu)));
        }
    }
    Ok(psi)
}

#[derive(Clone, Debug)]
pub struct DerivedOps {
    pub z: WeylOp,
    pub z_inv: WeylOp,
    pub box_op: WeylOp,
    pub d: Vec<WeylOp>,
    pub x: Vec<WeylOp>,
    /// `M_μν`, indexed `[μ][ν]`.
    pub m: Vec<Vec<WeylOp>>,
    /// `∂^L_μ = D_μ − (i a_μ/2)□`.
    pub d_left: Vec<WeylOp>,
    /// `p^L_μ = −i∂^L_μ`.
    pub p_left: Vec<WeylOp>,
}

impl DerivedOps {
    pub fn compute(r: &Realization) -> Result<Self> {
        let ctx = r.ctx();
        let n = ctx.dim;
        let z = solve_z(r)?;
        let z_inv = unit_inverse(&z)?;
        let d = solve_d(r, &z_inv)?;
        let box_p = solve_box(r, &d)?;
        let psi = psi_matrix(&d)?;
        let psi_rows: Vec<Vec<Poly>> = (0..n).map(|al| (0..n).map(|mu| psi.get(al, mu).clone()).collect()).collect();
        let x = contract_x(ctx, &psi_rows);
        let xhat = r.xhat();
        let z_op = WeylOp::from_poly(z.clone());
        let d_ops: Vec<WeylOp> = d.iter().cloned().map(WeylOp::from_poly).collect();
        let mut m = vec![vec![WeylOp::zero(ctx); n]; n];
        for mu in 0..n {
            for nu in 0..n {
                if mu != nu {
                    let inner = &(&xhat[mu] * &d_ops[nu]) - &(&xhat[nu] * &d_ops[mu]);
                    m[mu][nu] = &inner * &z_op;
                }
            }
        }
        let half_i = GaussRat::imag(Rat::new(1, 2));
        let d_left: Vec<WeylOp> = (0..n)
            .map(|mu| {
                let corr = (&Poly::a(ctx, mu) * &box_p).scale(&half_i);
                WeylOp::from_poly(&d[mu] - &corr)
            })
            .collect();
        let minus_i = GaussRat::imag(Rat::int(-1));
        let p_left = d_left.iter().map(|o| o.scale(&minus_i)).collect();
        Ok(DerivedOps {
            z: z_op,
            z_inv: WeylOp::from_poly(z_inv),
            box_op: WeylOp::from_poly(box_p),
            d: d_ops,
            x,
            m,
            d_left,
            p_left,
        })
    }

    /// `D² = D^αD_α`.
    pub fn d_squared(&self) -> WeylOp {
        let ctx = self.z.ctx();
        let mut acc = WeylOp::zero(ctx);
        for (mu, d) in self.d.iter().enumerate() {
            acc = &acc + &(d * d).scale(&GaussRat::int(eta(mu)));
        }
        acc
    }
}

/// `g_μνλ(p)` from `[M_μν, p_λ] = g_μνλ(p)`, indexed `[μ][ν][λ]` as
/// polynomials in the `k` block.
pub fn g_tensor(r: &Realization, ops: &DerivedOps) -> Result<Vec<Vec<Vec<Poly>>>> {
    let ctx = r.ctx();
    let n = ctx.dim;
    let mut out = vec![vec![vec![Poly::zero(ctx); n]; n]; n];
    for mu in 0..n {
        for nu in 0..n {
            for la in 0..n {
                let c = ops.m[mu][nu].commutator(&WeylOp::p(ctx, la));
                if !c.is_d_only() {
                    return Err(KappaError::ResidualXDependence(format!("[M{mu}{nu}, p{la}]")));
                }
                out[mu][nu][la] = c.symbol_at(Block::K);
            }
        }
    }
    Ok(out)
}

/// Closed-form conversion data of covariant families:
/// `D_μ = ∂_μG₁ + i a_μ∂²G₂`, `X_μ = x^α ψ_αμ`, and the inverse map
/// `∂_μ = ∂_μ(D)` with `x_μ = X^α 𝒫_αμ(D)`.
#[derive(Clone, Debug)]
pub struct ConversionData {
    pub g1: ScalarSeries2,
    pub g2: ScalarSeries2,
    pub z: Poly,
    pub d: Vec<Poly>,
    pub psi: PolyMatrix,
    /// `∂_μ` as polynomials in the `k` block standing for `D`.
    pub inverse_d: Vec<Poly>,
    /// `𝒫_αμ(D)`, also in the `k` block.
    pub p_matrix: PolyMatrix,
}

impl ConversionData {
    pub fn from_realization(r: &Realization) -> Result<Option<Self>> {
        let Some(cov) = r.covariant() else { return Ok(None) };
        let (Some(g1), Some(g2), Some(zs)) = (&cov.g1, &cov.g2, &cov.z) else { return Ok(None) };
        let ctx = r.ctx();
        let n = ctx.dim;
        let g1p = g1.to_poly(ctx, Block::D)?;
        let g2p = g2.to_poly(ctx, Block::D)?;
        let dd = Poly::dot(ctx, Block::D, Block::D);
        let d: Vec<Poly> = (0..n)
            .map(|mu| {
                let t1 = &Poly::var(ctx, Block::D, mu) * &g1p;
                let t2 = (&(&Poly::a(ctx, mu) * &dd) * &g2p).mul_i();
                &t1 + &t2
            })
            .collect();
        let psi = psi_matrix(&d)?;
        let inverse_d = invert_d(&d);
        let subs: Vec<(usize, Poly)> = inverse_d.iter().enumerate().map(|(mu, p)| (Block::D.var(mu), p.clone())).collect();
        let jac = d_jacobian(&d);
        let mut p_matrix = PolyMatrix::zero(ctx, n, n);
        for al in 0..n {
            for mu in 0..n {
                p_matrix.set(al, mu, jac.get(al, mu).scale_int(eta(mu)).substitute(&subs));
            }
        }
        Ok(Some(ConversionData { g1: g1.clone(), g2: g2.clone(), z: zs.to_poly(ctx, Block::D)?, d, psi, inverse_d, p_matrix }))
    }
}

/// Inverts `u = D(∂)` for `∂` as a function of `u` (the `k` block).
pub fn invert_d(d: &[Poly]) -> Vec<Poly> {
    let ctx = d[0].ctx();
    let n = d.len();
    let u: Vec<Poly> = (0..n).map(|mu| Poly::var(ctx, Block::K, mu)).collect();
    let mut cur = u.clone();
    for _ in 0..ctx.order {
        let subs: Vec<(usize, Poly)> = cur.iter().enumerate().map(|(mu, p)| (Block::D.var(mu), p.clone())).collect();
        cur = (0..n).map(|mu| &(&u[mu] + &cur[mu]) - &d[mu].substitute(&subs)).collect();
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Ctx;
    use crate::realizations::{catalog, from_d_and_phi, natural_phi_of_d, CATALOG};

    fn xhat_commutators(r: &Realization, ops: &DerivedOps) {
        let ctx = r.ctx();
        let n = ctx.dim;
        let xhat = r.xhat();
        for mu in 0..n {
            let zc = ops.z.commutator(&xhat[mu]);
            assert_eq!(zc, (&ops.z).scale_poly(&Poly::a(ctx, mu)).scale(&GaussRat::I), "{} Z", r.name());
            let bc = ops.box_op.commutator(&xhat[mu]);
            assert_eq!(bc, ops.d[mu].scale(&GaussRat::int(2)), "{} box", r.name());
            for nu in 0..n {
                let lhs = ops.d[mu].commutator(&xhat[nu]);
                let mut rhs = ops.d[nu].scale_poly(&Poly::a(ctx, mu)).scale(&GaussRat::I);
                if mu == nu {
                    rhs = &rhs + &ops.z_inv.scale(&GaussRat::int(eta(mu)));
                }
                assert_eq!(lhs, rhs, "{} D{mu} x{nu}", r.name());
                let dx = ops.d[mu].commutator(&ops.x[nu]);
                let expect = if mu == nu { WeylOp::one(ctx).scale(&GaussRat::int(eta(mu))) } else { WeylOp::zero(ctx) };
                assert_eq!(dx, expect);
                let lx = ops.d_left[mu].commutator(&xhat[nu]);
                let expect = if mu == nu { ops.z_inv.scale(&GaussRat::int(eta(mu))) } else { WeylOp::zero(ctx) };
                assert_eq!(lx, expect, "{} left-invariant derivative", r.name());
            }
        }
    }

    #[test]
    fn catalog_derived_operators() {
        let ctx = Ctx::new(3, 3).unwrap();
        for name in CATALOG {
            let r = catalog(name, ctx).unwrap();
            let ops = DerivedOps::compute(&r).unwrap();
            xhat_commutators(&r, &ops);
            let conv = ConversionData::from_realization(&r).unwrap().unwrap();
            assert_eq!(ops.z.poly(), &conv.z, "{name} Z closed form");
            let d: Vec<Poly> = ops.d.iter().map(|o| o.poly().clone()).collect();
            assert_eq!(d, conv.d, "{name} D closed form");
            let rebuilt = from_d_and_phi(name, &d, &natural_phi_of_d(ctx).unwrap()).unwrap();
            assert_eq!(rebuilt, r, "{name} rebuilt from D");
            let g = g_tensor(&r, &ops).unwrap();
            assert_eq!(g.len(), 3);
        }
    }

    #[test]
    fn type1_dirac_derivative_formula() {
        let ctx = Ctx::new(3, 3).unwrap();
        for name in ["left", "right", "symmetric"] {
            let r = catalog(name, ctx).unwrap();
            let ops = DerivedOps::compute(&r).unwrap();
            let phi = r.covariant().unwrap().phi.reciprocal().unwrap().to_poly(ctx, Block::D).unwrap();
            let half_i = GaussRat::imag(Rat::new(1, 2));
            for mu in 0..3 {
                let t1 = &(&Poly::var(ctx, Block::D, mu) * ops.z_inv.poly()) * &phi;
                let t2 = (&Poly::a(ctx, mu) * ops.box_op.poly()).scale(&half_i);
                assert_eq!(ops.d[mu].poly(), &(&t1 + &t2), "{name}");
            }
        }
    }

    #[test]
    fn casimir_is_natural_function_of_d() {
        let ctx = Ctx::new(3, 4).unwrap();
        let w = ctx.order + 2;
        // a²□ = 2(1 − √(1 − a²D²))
        let big_f = ScalarSeries2::one(w).sub(&ScalarSeries2::one(w).sub(&ScalarSeries2::b(w)).sqrt().unwrap()).scale(&GaussRat::int(2));
        let aa = Poly::dot(ctx, Block::A, Block::A);
        for name in CATALOG {
            let r = catalog(name, ctx).unwrap();
            let ops = DerivedOps::compute(&r).unwrap();
            let mut d2 = Poly::zero(ctx);
            for (mu, d) in ops.d.iter().enumerate() {
                d2.add_assign_ref(&(d.poly() * d.poly()).scale_int(eta(mu)));
            }
            let expect = big_f.eval(&Poly::zero(ctx), &(&aa * &d2)).unwrap();
            assert_eq!((&aa * ops.box_op.poly()).with_order(ctx.order), expect.with_order(ctx.order), "{name}");
        }
    }

    #[test]
    fn vector_like_own_casimir_closed_form() {
        let ctx = Ctx::new(3, 4).unwrap();
        let w = ctx.order + 2;
        let fs = [
            crate::realizations::f_natural(w),
            ScalarSeries2::one(w),
            ScalarSeries2::one(w).add(&ScalarSeries2::b(w).scale(&GaussRat::frac(1, 3))),
        ];
        for f in fs {
            let r = crate::realizations::build_vector_like(ctx, &f).unwrap();
            let own = solve_own_box(&r).unwrap();
            let cov = r.covariant().unwrap();
            let integrand = f.sub(&cov.gamma2.times_b()).reciprocal().unwrap();
            let big_f = integrand.integrate_b().unwrap().to_poly(ctx, Block::D).unwrap();
            let aa = Poly::dot(ctx, Block::A, Block::A);
            assert_eq!((&aa * &own).with_order(ctx.order), big_f.with_order(ctx.order));
            let ops = DerivedOps::compute(&r).unwrap();
            xhat_commutators(&r, &ops);
        }
        let left = catalog("left", ctx).unwrap();
        assert!(solve_own_box(&left).is_err());
    }

    #[test]
    fn natural_derivatives_are_plain() {
        let ctx = Ctx::new(3, 3).unwrap();
        let ops = DerivedOps::compute(&catalog("natural", ctx).unwrap()).unwrap();
        for mu in 0..3 {
            assert_eq!(ops.d[mu], WeylOp::d(ctx, mu));
            assert_eq!(ops.x[mu], WeylOp::x(ctx, mu));
        }
    }
}
