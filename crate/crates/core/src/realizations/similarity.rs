//! Similarity transformations `x̂ ↦ E x̂ E⁻¹`, `E = exp(x^αΣ_α(∂))`, and
//! realizations rebuilt from Dirac derivatives.

use crate::algebra::poly::eta;
use crate::algebra::{Block, Ctx, GaussRat, Poly, Rat, ScalarSeries2};
use crate::error::{KappaError, Result};
use crate::weyl::WeylOp;

use super::derived::d_jacobian;
use super::Realization;

fn generator(ctx: Ctx, sigma: &[Poly]) -> WeylOp {
    let mut s = Poly::zero(ctx);
    for (al, sg) in sigma.iter().enumerate() {
        s.add_assign_ref(&(&Poly::var(ctx, Block::X, al) * sg).scale_int(eta(al)));
    }
    WeylOp::from_poly(s)
}

/// Reads `φ_αμ` off an operator linear in `x`.
fn repolarize(op: &WeylOp, mu: usize) -> Result<Vec<Poly>> {
    let ctx = op.ctx();
    let mut col = vec![Poly::zero(ctx); ctx.dim];
    for (m, c) in op.poly().terms() {
        if m.block_degree(Block::X) != 1 {
            return Err(KappaError::ResidualXDependence(format!("conjugated X{mu} is not linear in x")));
        }
        let al = (0..ctx.dim).find(|&al| m.get(Block::X.var(al)) == 1).unwrap();
        col[al].add_term(m.without(Block::X), c.scale(&Rat::int(eta(al))));
    }
    Ok(col)
}

/// `E x̂_μ E⁻¹ = Σ_k ad_S^k(x̂_μ)/k!` with `S = x^αΣ_α`, re-expressed as
/// `x^α φ'_αμ(∂)`. Each `Σ_α` must be of a-degree at least one.
pub fn conjugate_by_exponential(r: &Realization, sigma: &[Poly]) -> Result<Realization> {
    let ctx = r.ctx();
    if sigma.iter().any(|s| !s.a_part(0).is_zero()) {
        return Err(KappaError::InvalidRealization("Σ must vanish at a = 0".into()));
    }
    let s = generator(ctx, sigma);
    let mut phi = vec![vec![Poly::zero(ctx); ctx.dim]; ctx.dim];
    for (mu, xm) in r.xhat().into_iter().enumerate() {
        let mut acc = xm.clone();
        let mut term = xm;
        for k in 1..=ctx.order {
            term = s.commutator(&term).scale(&GaussRat::frac(1, k as i64));
            if term.is_zero() {
                break;
            }
            acc = &acc + &term;
        }
        for (al, p) in repolarize(&acc, mu)?.into_iter().enumerate() {
            phi[al][mu] = p;
        }
    }
    Realization::explicit(&format!("{}'", r.name()), ctx, phi)
}

/// Solves order by order for `Σ` with `E x̂_from E⁻¹ = x̂_to`.
pub fn solve_similarity(from: &Realization, to: &Realization) -> Result<Vec<Poly>> {
    let ctx = from.ctx();
    ctx.check(to.ctx())?;
    let n = ctx.dim;
    let mut sigma = vec![Poly::zero(ctx); n];
    for m in 1..=ctx.order {
        let cur = conjugate_by_exponential(from, &sigma)?;
        for (al, sg) in sigma.iter_mut().enumerate() {
            let grads: Vec<Poly> = (0..n)
                .map(|mu| (&to.phi()[al][mu] - &cur.phi()[al][mu]).a_part(m).scale_int(eta(mu)))
                .collect();
            let mut euler = Poly::zero(ctx);
            for (mu, g) in grads.iter().enumerate() {
                euler.add_assign_ref(&(&Poly::var(ctx, Block::D, mu) * g));
            }
            let part = euler.scale_by_block_degree(Block::D, |e| GaussRat::real(Rat::new(1, e.max(1) as i64)));
            for (mu, g) in grads.iter().enumerate() {
                if &part.derivative(Block::D.var(mu)) != g {
                    return Err(KappaError::Inconsistent(format!("no similarity generator at order {m}")));
                }
            }
            sg.add_assign_ref(&part);
        }
    }
    let check = conjugate_by_exponential(from, &sigma)?;
    if check.phi() != to.phi() {
        return Err(KappaError::Inconsistent("similarity generator does not reproduce the target".into()));
    }
    Ok(sigma)
}

/// Natural-realization commutators `Φ_μν(u) = η_μν(−i(au) + √(1 − a²u²)) + i a_μ u_ν`
/// as polynomials in the `k` block standing for `u = D`.
pub fn natural_phi_of_d(ctx: Ctx) -> Result<Vec<Vec<Poly>>> {
    let w = ctx.order + 2;
    let zinv = ScalarSeries2::one(w).sub(&ScalarSeries2::b(w)).sqrt()?.sub(&ScalarSeries2::a(w));
    let zp = zinv.to_poly(ctx, Block::K)?;
    let n = ctx.dim;
    Ok((0..n)
        .map(|mu| {
            (0..n)
                .map(|nu| {
                    let mut p = (&Poly::a(ctx, mu) * &Poly::var(ctx, Block::K, nu)).mul_i();
                    if mu == nu {
                        p.add_assign_ref(&zp.scale_int(eta(mu)));
                    }
                    p
                })
                .collect()
        })
        .collect())
}

/// Rebuilds `φ = J⁻¹ Φ(D)` from Dirac derivatives `D_μ(∂)` and commutators
/// `Φ_μν(u)` given in the `k` block, so that `[D_μ, x̂_ν] = Φ_μν(D)`.
pub fn from_d_and_phi(name: &str, d: &[Poly], phi_of_u: &[Vec<Poly>]) -> Result<Realization> {
    let ctx = d[0].ctx();
    let n = ctx.dim;
    let jinv = d_jacobian(d).inverse(ctx.order)?;
    let subs: Vec<(usize, Poly)> = d.iter().enumerate().map(|(mu, p)| (Block::K.var(mu), p.clone())).collect();
    let big_phi: Vec<Vec<Poly>> = phi_of_u.iter().map(|row| row.iter().map(|p| p.substitute(&subs)).collect()).collect();
    let mut phi = vec![vec![Poly::zero(ctx); n]; n];
    for (al, row) in phi.iter_mut().enumerate() {
        for (nu, entry) in row.iter_mut().enumerate() {
            let mut acc = Poly::zero(ctx);
            for (mu, bp) in big_phi.iter().enumerate() {
                acc.add_assign_ref(&(jinv.get(al, mu) * &bp[nu]));
            }
            *entry = acc;
        }
    }
    Realization::explicit(name, ctx, phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realizations::catalog;

    #[test]
    fn left_to_right_similarity() {
        let ctx = Ctx::new(2, 2).unwrap();
        let left = catalog("left", ctx).unwrap();
        let right = catalog("right", ctx).unwrap();
        let sigma = solve_similarity(&left, &right).unwrap();
        assert!(sigma.iter().any(|s| !s.is_zero()));
        assert_eq!(conjugate_by_exponential(&left, &sigma).unwrap(), right);
    }
}
