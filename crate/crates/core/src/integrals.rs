//! Integrals as formal delta calculus on plane waves,
//! `∫dⁿx e^{iPx} = (2π)ⁿδ(P)`: the involution, the Jacobian measure of the
//! star inner product, and the identities behind partial integration and
//! quasicyclicity.

use crate::algebra::poly::eta;
use crate::algebra::{Block, Ctx, GaussRat, MomentumMap, Poly, PolyMatrix, ScalarSeries2};
use crate::error::Result;
use crate::momentum_maps::{solve_d_zero, MomentumData};
use crate::realizations::derived::unit_inverse;
use crate::report::{Check, Report};

/// `(e^{ikx})* = e^{iS(k)x}`; coefficients are conjugated separately.
pub fn involution_planewave(data: &MomentumData) -> &MomentumMap {
    &data.s
}

/// `(Σ c_j e^{ik_j x})*` for a finite sum of plane waves with explicit
/// momentum labels: `Σ c̄_j e^{iS(k_j)x}`.
pub fn involution(data: &MomentumData, waves: &[(GaussRat, Vec<Poly>)]) -> Vec<(GaussRat, Vec<Poly>)> {
    waves.iter().map(|(c, k)| (c.conj(), data.s.compose(&[k.as_slice()]).into_comps())).collect()
}

/// `S(D(k,q)) = D(S(q),S(k))`, the kernel form of `(f⋆g)* = g*⋆f*`.
pub fn check_star_conjugation(data: &MomentumData) -> Check {
    let lhs = data.s.compose(&[data.d.comps()]);
    let sq: Vec<Poly> = data.s.comps().iter().map(|c| c.move_block(Block::K, Block::Q)).collect();
    let rhs = data.d.compose(&[sq.as_slice(), data.s.comps()]);
    let res = lhs.sub(&rhs);
    Check::residual("S(D(k,q)) = D(S(q),S(k))", &res, res.is_zero())
}

fn det_at(m: &MomentumMap, slot: usize, set_q_to: Option<&[Poly]>) -> Poly {
    let jac = m.jacobian(slot);
    let mut mat = PolyMatrix::from_rows(jac);
    if let Some(vals) = set_q_to {
        mat = mat.map(|p| p.substitute_block(Block::Q, vals));
    }
    mat.determinant()
}

/// `det ∂D_μ(S(k),q)/∂q_ν |_{q=k}` as a series in the `k` block.
pub fn jacobian_measure(data: &MomentumData) -> Poly {
    let ctx = data.ctx();
    let q = MomentumMap::symbols(ctx, 1);
    let shifted = data.d.compose(&[data.s.comps(), q.as_slice()]);
    let k = MomentumMap::symbols(ctx, 0);
    det_at(&shifted, 1, Some(&k))
}

/// The weight `1/det|…|` multiplying `δ(k − q)` in `(e^{ikx}, e^{iqx})_⋆`.
pub fn pairing_kernel(data: &MomentumData) -> Result<Poly> {
    unit_inverse(&jacobian_measure(data))
}

/// `1/√(1 + a²k²)` truncated at the context order.
pub fn natural_jacobian_closed_form(ctx: Ctx) -> Result<Poly> {
    let w = ctx.order + 2;
    let s = ScalarSeries2::one(w).add(&ScalarSeries2::b(w)).sqrt()?.reciprocal()?;
    let b = &Poly::dot(ctx, Block::A, Block::A) * &Poly::dot(ctx, Block::K, Block::K);
    s.eval(&Poly::zero(ctx), &b)
}

fn exp_series(t: &Poly, order: usize, shift: usize) -> Poly {
    let mut r = Poly::one(t.ctx());
    let mut pw = Poly::one(t.ctx());
    for j in 1..=order {
        pw = &pw * t;
        r.add_assign_ref(&pw.scale(&GaussRat::real(crate::algebra::series::factorial(j + shift).inv())));
    }
    r
}

/// `((e^{(ak)} − 1)/(ak))^{n−1}`, the measure the symmetric realization
/// actually produces.
pub fn symmetric_jacobian_series(ctx: Ctx) -> Poly {
    let f = exp_series(&Poly::dot(ctx, Block::A, Block::K), ctx.order, 1);
    (1..ctx.dim).fold(Poly::one(ctx), |acc, _| &acc * &f)
}

/// `((e^{(ak)} − 1)/(ak))^{n−1} e^{(ak)}` truncated at the context order.
pub fn symmetric_jacobian_closed_form(ctx: Ctx) -> Poly {
    let e = exp_series(&Poly::dot(ctx, Block::A, Block::K), ctx.order, 0);
    &symmetric_jacobian_series(ctx) * &e
}

/// Jacobian measure against the stated closed forms, for the realizations
/// that have one. Other realizations report the computed series.
pub fn check_jacobian(name: &str, data: &MomentumData) -> Result<Report> {
    let ctx = data.ctx();
    let j = jacobian_measure(data);
    let mut rep = Report::new();
    match name {
        "natural" => {
            let res = &j - &natural_jacobian_closed_form(ctx)?;
            rep.push(Check::residual("natural: J = 1/√(1+a²k²)", &res, res.is_zero()));
        }
        "symmetric" => {
            let res = &j - &symmetric_jacobian_closed_form(ctx);
            rep.push(Check::residual("symmetric: J = ((e^(ak)−1)/(ak))^(n−1) e^(ak)", &res, res.is_zero()));
            let res = &j - &symmetric_jacobian_series(ctx);
            rep.push(Check::residual("symmetric: J = ((e^(ak)−1)/(ak))^(n−1)", &res, res.is_zero()));
        }
        _ => {}
    }
    let res = j.zero_block(Block::A) - Poly::one(ctx);
    rep.push(Check::residual(format!("{name}: J(a=0) = 1"), &res, res.is_zero()));
    Ok(rep)
}

/// The support lemma `D(k,q) = 0 ⟺ q = S(k)` and `S² = id` on momenta.
pub fn check_partial_integration(data: &MomentumData) -> Report {
    let mut rep = Report::new();
    let q0 = solve_d_zero(&data.d);
    let res = q0.sub(&data.s);
    rep.push(Check::residual("solution of D(k,q) = 0 is q = S(k)", &res, res.is_zero()));
    let ctx = data.ctx();
    let s2 = data.s.compose(&[data.s.comps()]);
    let res = s2.sub(&MomentumMap::identity(ctx, 0));
    rep.push(Check::residual("S(S(k)) = k", &res, res.is_zero()));
    rep
}

/// `det ∂_qD(k,q)|_{q=S(k)} = z(k)^{n−1} det ∂_qD(q,k)|_{q=S(k)}`, with
/// `z(k)` the symbol of `Z` (a polynomial in the `k` block).
pub fn check_quasicyclicity(data: &MomentumData, z: &Poly) -> Check {
    let ctx = data.ctx();
    let s_in_q: Vec<Poly> = data.s.comps().to_vec();
    let j1 = det_at(&data.d, 1, Some(&s_in_q));
    let k = MomentumMap::symbols(ctx, 0);
    let q = MomentumMap::symbols(ctx, 1);
    let flipped = data.d.compose(&[q.as_slice(), k.as_slice()]);
    let j2 = det_at(&flipped, 1, Some(&s_in_q));
    let zp = (1..ctx.dim).fold(Poly::one(ctx), |acc, _| &acc * z);
    let res = &j1 - &(&zp * &j2);
    Check::residual("det ∂_qD(k,q) = z(k)^(n−1) det ∂_qD(q,k) at q = S(k)", &res, res.is_zero())
}

/// `(a²k²)` convenience for displays.
pub fn a2k2(ctx: Ctx) -> Poly {
    let mut a2 = Poly::zero(ctx);
    for mu in 0..ctx.dim {
        a2.add_assign_ref(&(&Poly::a(ctx, mu) * &Poly::a(ctx, mu)).scale_int(eta(mu)));
    }
    &a2 * &Poly::dot(ctx, Block::K, Block::K)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realizations::catalog;
    use crate::realizations::derived::DerivedOps;

    #[test]
    fn jacobians() {
        for n in 2..=3 {
            let ctx = Ctx::new(n, 4).unwrap();
            let nat = MomentumData::compute(&catalog("natural", ctx).unwrap());
            assert_eq!(jacobian_measure(&nat), natural_jacobian_closed_form(ctx).unwrap());
            let sym = MomentumData::compute(&catalog("symmetric", ctx).unwrap());
            assert_eq!(jacobian_measure(&sym), symmetric_jacobian_series(ctx));
            assert_ne!(jacobian_measure(&sym), symmetric_jacobian_closed_form(ctx));
        }
    }

    #[test]
    fn delta_calculus_identities() {
        for n in 2..=3 {
            let ctx = Ctx::new(n, 3).unwrap();
            for name in crate::realizations::CATALOG {
                let r = catalog(name, ctx).unwrap();
                let data = MomentumData::compute(&r);
                let ops = DerivedOps::compute(&r).unwrap();
                assert!(check_star_conjugation(&data).residual_zero, "{name}");
                assert!(check_partial_integration(&data).passed(), "{name}");
                let c = check_quasicyclicity(&data, &ops.z.symbol_at(Block::K));
                assert!(c.residual_zero, "{name} n={n}: {}", c.value);
                let pk = pairing_kernel(&data).unwrap();
                assert!((&pk * &jacobian_measure(&data) - Poly::one(ctx)).is_zero());
            }
        }
    }

    #[test]
    fn involution_at_zero_a() {
        let ctx = Ctx::new(2, 0).unwrap();
        let data = MomentumData::compute(&catalog("left", ctx).unwrap());
        let k = MomentumMap::symbols(ctx, 0);
        let out = involution(&data, &[(GaussRat::I, k.clone())]);
        assert_eq!(out[0].0, -GaussRat::I);
        let minus: Vec<Poly> = k.iter().map(|c| -c).collect();
        assert_eq!(out[0].1, minus);
    }
}
