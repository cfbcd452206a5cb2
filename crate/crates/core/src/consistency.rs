//! Jacobi-identity PDEs for `h` and `g`, the commutation relations of the
//! enlarged algebra, and the first-order (linear in `a`) oracle.

use crate::algebra::poly::eta;
use crate::algebra::{Block, Ctx, GaussRat, MomentumMap, Poly, Rat};
use crate::error::{KappaError, Result};
use crate::hopf::{coproduct_partial, TensorOp};
use crate::momentum_maps::MomentumData;
use crate::realizations::derived::g_tensor;
use crate::realizations::{build_linear, kappa_residuals, DerivedOps, Realization, RealizationKind};
use crate::report::{Check, Report};
use crate::star::monomials;
use crate::weyl::{unhat_t_inverse, WeylOp};

type Tensor3 = Vec<Vec<Vec<Poly>>>;

/// Collects residuals under one name; the check passes iff all vanish and
/// otherwise shows the first offending index with its residual.
struct Collector {
    name: String,
    first: Option<String>,
    count: usize,
}

impl Collector {
    fn new(name: impl Into<String>) -> Self {
        Collector { name: name.into(), first: None, count: 0 }
    }

    fn add(&mut self, label: impl FnOnce() -> String, res: &Poly) {
        if !res.is_zero() {
            self.count += 1;
            if self.first.is_none() {
                self.first = Some(format!("{}: {}", label(), res));
            }
        }
    }

    fn finish(self) -> Check {
        match self.first {
            None => Check::residual(self.name, "0", true),
            Some(f) => Check::flag(self.name, false, format!("{} nonzero, first {f}", self.count)),
        }
    }
}

fn dp(p: &Poly, alpha: usize) -> Poly {
    p.derivative(Block::K.var(alpha))
}

/// `Σ_α ∂F/∂p_α · G_α`.
fn directional(f: &Poly, g: impl Fn(usize) -> Poly, n: usize) -> Poly {
    let mut acc = Poly::zero(f.ctx());
    for al in 0..n {
        let d = dp(f, al);
        if !d.is_zero() {
            acc.add_assign_ref(&(&d * &g(al)));
        }
    }
    acc
}

/// `∂_α h_λν h_αμ − ∂_α h_λμ h_αν = a_μ h_λν − a_ν h_λμ`.
pub fn jacobi_xxp(h: &[Vec<Poly>]) -> Check {
    let n = h.len();
    let ctx = h[0][0].ctx();
    let mut c = Collector::new("Jacobi (x̂, x̂, p)");
    for la in 0..n {
        for mu in 0..n {
            for nu in mu + 1..n {
                let lhs = &directional(&h[la][nu], |al| h[al][mu].clone(), n) - &directional(&h[la][mu], |al| h[al][nu].clone(), n);
                let rhs = &(&Poly::a(ctx, mu) * &h[la][nu]) - &(&Poly::a(ctx, nu) * &h[la][mu]);
                c.add(|| format!("λ={la} μ={mu} ν={nu}"), &(&lhs - &rhs));
            }
        }
    }
    c.finish()
}

/// `∂_α g_λρσ g_μνα − ∂_α g_μνσ g_λρα = g_μρσ η_νλ − g_νρσ η_μλ − g_μλσ η_νρ + g_νλσ η_μρ`.
pub fn jacobi_mmp(g: &Tensor3) -> Check {
    let n = g.len();
    let e = |m: usize, v: usize| if m == v { eta(m) } else { 0 };
    let mut c = Collector::new("Jacobi (M, M, p)");
    for mu in 0..n {
        for nu in mu + 1..n {
            for la in 0..n {
                for rho in la + 1..n {
                    for si in 0..n {
                        let lhs = &directional(&g[la][rho][si], |al| g[mu][nu][al].clone(), n)
                            - &directional(&g[mu][nu][si], |al| g[la][rho][al].clone(), n);
                        let mut rhs = g[mu][rho][si].scale_int(e(nu, la));
                        rhs.sub_assign_ref(&g[nu][rho][si].scale_int(e(mu, la)));
                        rhs.sub_assign_ref(&g[mu][la][si].scale_int(e(nu, rho)));
                        rhs.add_assign_ref(&g[nu][la][si].scale_int(e(mu, rho)));
                        c.add(|| format!("μν={mu}{nu} λρ={la}{rho} σ={si}"), &(&lhs - &rhs));
                    }
                }
            }
        }
    }
    c.finish()
}

/// `∂_α g_μνλ h_αρ − ∂_α h_λρ g_μνα = h_λν η_μρ − h_λμ η_νρ + a_μ g_νρλ − a_ν g_μρλ`.
pub fn jacobi_mpx(h: &[Vec<Poly>], g: &Tensor3) -> Check {
    let n = h.len();
    let ctx = h[0][0].ctx();
    let e = |m: usize, v: usize| if m == v { eta(m) } else { 0 };
    let mut c = Collector::new("Jacobi (M, p, x̂)");
    for mu in 0..n {
        for nu in mu + 1..n {
            for la in 0..n {
                for rho in 0..n {
                    let lhs = &directional(&g[mu][nu][la], |al| h[al][rho].clone(), n)
                        - &directional(&h[la][rho], |al| g[mu][nu][al].clone(), n);
                    let mut rhs = h[la][nu].scale_int(e(mu, rho));
                    rhs.sub_assign_ref(&h[la][mu].scale_int(e(nu, rho)));
                    rhs.add_assign_ref(&(&Poly::a(ctx, mu) * &g[nu][rho][la]));
                    rhs.sub_assign_ref(&(&Poly::a(ctx, nu) * &g[mu][rho][la]));
                    c.add(|| format!("μν={mu}{nu} λ={la} ρ={rho}"), &(&lhs - &rhs));
                }
            }
        }
    }
    c.finish()
}

/// The three PDEs with `h` from φ and `g` from `[M_μν, p_λ]`.
pub fn check_jacobi_pdes(r: &Realization, ops: &DerivedOps) -> Result<Report> {
    let h = r.h();
    let g = g_tensor(r, ops)?;
    let mut rep = Report::new();
    rep.push(jacobi_mmp(&g));
    rep.push(jacobi_xxp(&h));
    rep.push(jacobi_mpx(&h, &g));
    Ok(rep)
}

/// `h_μν + ε a²p_μp_ν`, i.e. `γ₂ → γ₂ + ε`; a negative control for the PDEs.
pub fn perturb_gamma2(h: &[Vec<Poly>], eps: Rat) -> Vec<Vec<Poly>> {
    let ctx = h[0][0].ctx();
    let n = h.len();
    let mut a2 = Poly::zero(ctx);
    for mu in 0..n {
        a2.add_assign_ref(&(&Poly::a(ctx, mu) * &Poly::a(ctx, mu)).scale_int(eta(mu)));
    }
    let e = GaussRat::real(eps);
    (0..n)
        .map(|mu| {
            (0..n)
                .map(|nu| {
                    let extra = &(&a2 * &Poly::var(ctx, Block::K, mu)) * &Poly::var(ctx, Block::K, nu);
                    &h[mu][nu] + &extra.scale(&e)
                })
                .collect()
        })
        .collect()
}

fn is_vector_like(r: &Realization) -> bool {
    matches!(r.kind(), RealizationKind::VectorLike(_)) || r.name() == "natural"
}

/// Commutators of `x̂`, `M` and `p`: the κ-Minkowski relation, Lorentz
/// algebra, `[M, x̂]`, `[p, p]`, `[x̂, p] = ih`, and for vector-like
/// realizations `[M_μν, p_λ] = p_μη_νλ − p_νη_μλ`.
pub fn check_algebra_relations(r: &Realization, ops: &DerivedOps) -> Report {
    let ctx = r.ctx();
    let n = ctx.dim;
    let xhat = r.xhat();
    let m = &ops.m;
    let e = |a: usize, b: usize| if a == b { eta(a) } else { 0 };
    let mut rep = Report::new();

    let mut c = Collector::new("[x̂_μ, x̂_ν] = i(a_μx̂_ν − a_νx̂_μ)");
    for ((mu, nu), res) in kappa_residuals(&xhat) {
        c.add(|| format!("μ={mu} ν={nu}"), res.poly());
    }
    rep.push(c.finish());

    let mut c = Collector::new("Lorentz algebra [M_μν, M_λρ]");
    for mu in 0..n {
        for nu in mu + 1..n {
            for la in 0..n {
                for rho in la + 1..n {
                    let lhs = m[mu][nu].commutator(&m[la][rho]);
                    let rhs = &(&(&m[mu][rho].scale(&GaussRat::int(e(nu, la))) - &m[nu][rho].scale(&GaussRat::int(e(mu, la))))
                        - &m[mu][la].scale(&GaussRat::int(e(nu, rho))))
                        + &m[nu][la].scale(&GaussRat::int(e(mu, rho)));
                    c.add(|| format!("μν={mu}{nu} λρ={la}{rho}"), (&lhs - &rhs).poly());
                }
            }
        }
    }
    rep.push(c.finish());

    let mut c = Collector::new("[M_μν, x̂_λ] = x̂_μη_νλ − x̂_νη_μλ − i(a_μM_νλ − a_νM_μλ)");
    for mu in 0..n {
        for nu in mu + 1..n {
            for la in 0..n {
                let lhs = m[mu][nu].commutator(&xhat[la]);
                let am = &m[nu][la].scale_poly(&Poly::a(ctx, mu)) - &m[mu][la].scale_poly(&Poly::a(ctx, nu));
                let rhs = &(&xhat[mu].scale(&GaussRat::int(e(nu, la))) - &xhat[nu].scale(&GaussRat::int(e(mu, la)))) - &am.scale(&GaussRat::I);
                c.add(|| format!("μν={mu}{nu} λ={la}"), (&lhs - &rhs).poly());
            }
        }
    }
    rep.push(c.finish());

    let mut c = Collector::new("[p_μ, p_ν] = 0");
    for mu in 0..n {
        for nu in 0..n {
            c.add(|| format!("μ={mu} ν={nu}"), WeylOp::p(ctx, mu).commutator(&WeylOp::p(ctx, nu)).poly());
        }
    }
    rep.push(c.finish());

    let mut c = Collector::new("[x̂_ν, p_μ] = ih_μν(p)");
    for mu in 0..n {
        for nu in 0..n {
            let lhs = xhat[nu].commutator(&WeylOp::p(ctx, mu));
            let rhs = WeylOp::from_poly(r.phi()[mu][nu].clone()).scale(&GaussRat::I);
            c.add(|| format!("μ={mu} ν={nu}"), (&lhs - &rhs).poly());
        }
    }
    rep.push(c.finish());

    let res = vector_transformation_residual(ops);
    if is_vector_like(r) {
        rep.push(Check::residual("[M_μν, p_λ] = p_μη_νλ − p_νη_μλ", &res, res.is_zero()));
    } else {
        let shown = if res.is_zero() { "0".to_string() } else { res.to_string() };
        rep.push(Check::flag("[M_μν, p_λ] (not vector-like; residual reported)", true, shown));
    }
    rep
}

/// First nonzero `[M_μν, p_λ] − (p_μη_νλ − p_νη_μλ)`, or zero.
pub fn vector_transformation_residual(ops: &DerivedOps) -> Poly {
    let ctx = ops.z.ctx();
    let n = ctx.dim;
    let e = |a: usize, b: usize| if a == b { eta(a) } else { 0 };
    for mu in 0..n {
        for nu in mu + 1..n {
            for la in 0..n {
                let lhs = ops.m[mu][nu].commutator(&WeylOp::p(ctx, la));
                let rhs = &WeylOp::p(ctx, mu).scale(&GaussRat::int(e(nu, la))) - &WeylOp::p(ctx, nu).scale(&GaussRat::int(e(mu, la)));
                let res = &lhs - &rhs;
                if !res.is_zero() {
                    return res.into_poly();
                }
            }
        }
    }
    Poly::zero(ctx)
}

/// Closed first-order momentum functions of the linear realization
/// `x̂_μ = x_μ + i(αx_μ(a∂) + β(ax)∂_μ + γa_μ(x∂))`.
#[derive(Clone, Debug)]
pub struct LinearOracle {
    pub alpha: Rat,
    pub beta: Rat,
    pub gamma: Rat,
    pub p: MomentumMap,
    pub k: MomentumMap,
    pub kinv: MomentumMap,
    pub d: MomentumMap,
    pub delta: Vec<TensorOp>,
}

pub fn linear_oracle(ctx: Ctx, alpha: Rat, beta: Rat, gamma: Rat) -> Result<LinearOracle> {
    if &gamma - &alpha != Rat::ONE {
        return Err(KappaError::ConstraintViolated(format!("γ − α must be 1 (α={alpha}, γ={gamma})")));
    }
    let ctx = ctx.with_order(1);
    let n = ctx.dim;
    let (al, be, ga) = (GaussRat::real(alpha.clone()), GaussRat::real(beta.clone()), GaussRat::real(gamma.clone()));
    let ak = Poly::dot(ctx, Block::A, Block::K);
    let aq = Poly::dot(ctx, Block::A, Block::Q);
    let kk = Poly::dot(ctx, Block::K, Block::K);
    let kq = Poly::dot(ctx, Block::K, Block::Q);
    let k = |mu| Poly::var(ctx, Block::K, mu);
    let q = |mu| Poly::var(ctx, Block::Q, mu);
    let a = |mu| Poly::a(ctx, mu);
    // {α k_μ(ak) + β a_μ k² + γ(ak)k_μ}
    let quad = |mu: usize| {
        let mut p = (&k(mu) * &ak).scale(&al);
        p.add_assign_ref(&(&a(mu) * &kk).scale(&be));
        p.add_assign_ref(&(&ak * &k(mu)).scale(&ga));
        p
    };
    // {α k_μ(aq) + β a_μ(kq) + γ(ak)q_μ}
    let mixed = |mu: usize| {
        let mut p = (&k(mu) * &aq).scale(&al);
        p.add_assign_ref(&(&a(mu) * &kq).scale(&be));
        p.add_assign_ref(&(&ak * &q(mu)).scale(&ga));
        p
    };
    let half = GaussRat::real(Rat::new(1, 2));
    let p = (0..n).map(|mu| &(&(&k(mu) + &q(mu)) - &quad(mu).scale(&half)) - &mixed(mu)).collect();
    let km = (0..n).map(|mu| &k(mu) - &quad(mu).scale(&half)).collect();
    let kinv = (0..n).map(|mu| &k(mu) + &quad(mu).scale(&half)).collect();
    let d = (0..n).map(|mu| &(&k(mu) + &q(mu)) - &mixed(mu)).collect();
    // k and q stand for ∂ in the first and second tensor factor
    let delta = (0..n)
        .map(|mu| {
            let mut p = &k(mu) + &q(mu);
            p.add_assign_ref(&mixed(mu).scale(&GaussRat::I));
            TensorOp::new(2, p)
        })
        .collect();
    Ok(LinearOracle {
        alpha,
        beta,
        gamma,
        p: MomentumMap::new(2, p),
        k: MomentumMap::new(1, km),
        kinv: MomentumMap::new(1, kinv),
        d: MomentumMap::new(2, d),
        delta,
    })
}

/// The fixed sample of admissible `(α, β, γ)`.
pub fn sample_triples() -> Vec<(Rat, Rat, Rat)> {
    let r = |n: i64, d: i64| Rat::new(n, d);
    vec![
        (r(-1, 1), r(1, 1), r(0, 1)),
        (r(-1, 1), r(0, 1), r(0, 1)),
        (r(0, 1), r(0, 1), r(1, 1)),
        (r(-1, 2), r(0, 1), r(1, 2)),
        (r(0, 1), r(1, 1), r(1, 1)),
        (r(-2, 1), r(0, 1), r(-1, 1)),
        (r(-1, 1), r(1, 2), r(0, 1)),
        (r(-3, 2), r(1, 1), r(-1, 2)),
    ]
}

/// Oracle against the generic machinery (flow, K, K⁻¹, D, Δ∂) at order 1.
pub fn check_linear_oracle(ctx: Ctx, alpha: Rat, beta: Rat, gamma: Rat) -> Result<Report> {
    let label = format!("({alpha},{beta},{gamma})");
    let oracle = linear_oracle(ctx, alpha.clone(), beta.clone(), gamma.clone())?;
    let r = build_linear(ctx.with_order(1), alpha, beta, gamma)?;
    let data = MomentumData::compute(&r);
    let mut rep = Report::new();
    for (name, got, want) in [
        ("P", &data.flow.p, &oracle.p),
        ("K", &data.k, &oracle.k),
        ("K⁻¹", &data.kinv, &oracle.kinv),
        ("D", &data.d, &oracle.d),
    ] {
        let res = got.sub(want);
        rep.push(Check::residual(format!("{label} {name}"), &res, res.is_zero()));
    }
    let delta = coproduct_partial(&data);
    let mut c = Collector::new(format!("{label} Δ∂"));
    for (mu, (got, want)) in delta.iter().zip(&oracle.delta).enumerate() {
        c.add(|| format!("μ={mu}"), got.sub(want).poly());
    }
    rep.push(c.finish());
    let res = data.k.sub(&data.flow.p.substitute_zero(1)?);
    rep.push(Check::residual(format!("{label} K(k) = P(k, 0)"), &res, res.is_zero()));
    Ok(rep)
}

/// `(u, v) ↦ (α, β, γ) = (−u − 1, −2v + 1, −u)`.
pub fn covariant_linear_map(u: Rat, v: Rat) -> (Rat, Rat, Rat) {
    let alpha = &(-u.clone()) - &Rat::ONE;
    let beta = &Rat::ONE - &(&Rat::int(2) * &v);
    let gamma = -u;
    (alpha, beta, gamma)
}

/// Rebuilds the first-order realization from the linearized covariant
/// data `D_μ = ∂_μ + i(u(a∂)∂_μ + va_μ∂²)`,
/// `X_μ = x_μ − i(ux_μ(a∂) + ua_μ(x∂) + 2v(ax)∂_μ)` inserted in the natural
/// realization `x̂_μ = X_μ + i(−X_μ(aD) + (aX)D_μ)`, and compares with the
/// dictionary.
pub fn check_covariant_dictionary(ctx: Ctx, u: Rat, v: Rat) -> Result<Check> {
    let ctx = ctx.with_order(1);
    let n = ctx.dim;
    let (uu, vv) = (GaussRat::real(u.clone()), GaussRat::real(v.clone()));
    let x = |mu| WeylOp::x(ctx, mu);
    let d = |mu| WeylOp::d(ctx, mu);
    let a = |mu| Poly::a(ctx, mu);
    let dot_op = |f: &dyn Fn(usize) -> WeylOp, g: &dyn Fn(usize) -> WeylOp| {
        (0..n).fold(WeylOp::zero(ctx), |acc, mu| &acc + &(&f(mu) * &g(mu)).scale(&GaussRat::int(eta(mu))))
    };
    let a_dot = |f: &dyn Fn(usize) -> WeylOp| {
        (0..n).fold(WeylOp::zero(ctx), |acc, mu| &acc + &f(mu).scale_poly(&a(mu)).scale(&GaussRat::int(eta(mu))))
    };
    let a_d = a_dot(&d);
    let a_x = a_dot(&x);
    let x_d = dot_op(&x, &d);
    let dd = dot_op(&d, &d);
    let big_d: Vec<WeylOp> = (0..n)
        .map(|mu| &d(mu) + &(&(&a_d * &d(mu)).scale(&uu) + &dd.scale_poly(&a(mu)).scale(&vv)).scale(&GaussRat::I))
        .collect();
    let big_x: Vec<WeylOp> = (0..n)
        .map(|mu| {
            let corr = &(&(&x(mu) * &a_d).scale(&uu) + &x_d.scale_poly(&a(mu)).scale(&uu)) + &(&a_x * &d(mu)).scale(&GaussRat::real(&Rat::int(2) * &v));
            &x(mu) - &corr.scale(&GaussRat::I)
        })
        .collect();
    let bd = |mu: usize| big_d[mu].clone();
    let bx = |mu: usize| big_x[mu].clone();
    let a_bd = a_dot(&bd);
    let a_bx = a_dot(&bx);
    let (alpha, beta, gamma) = covariant_linear_map(u.clone(), v.clone());
    let lin = build_linear(ctx, alpha.clone(), beta.clone(), gamma.clone())?.xhat();
    let mut c = Collector::new(format!("(u,v)=({u},{v}) → ({alpha},{beta},{gamma})"));
    for mu in 0..n {
        let xh = &bx(mu) + &(&(&a_bx * &bd(mu)) - &(&bx(mu) * &a_bd)).scale(&GaussRat::I);
        let res = &xh.with_order(1) - &lin[mu];
        c.add(|| format!("μ={mu}"), res.poly());
    }
    Ok(c.finish())
}

/// `(α, β, γ)` read off the order-1 part of φ, if φ has the linear form.
pub fn linear_coefficients(r: &Realization) -> Option<(Rat, Rat, Rat)> {
    let ctx = r.ctx().with_order(1);
    if ctx.dim < 2 || r.order() < 1 {
        return None;
    }
    let phi = r.phi();
    let mono = |a_idx: usize, d_idx: usize| {
        let mut m = crate::algebra::Mono::one();
        m.set(Block::A.var(a_idx), 1);
        m.set(Block::D.var(d_idx), 1);
        m
    };
    let real_of_imag = |c: GaussRat| -> Option<Rat> {
        let re = &c * &(-GaussRat::I);
        if re.im.is_zero() {
            Some(re.re)
        } else {
            None
        }
    };
    let beta = real_of_imag(phi[1][0].coeff(&mono(1, 0)))?;
    let gamma = real_of_imag(phi[1][0].coeff(&mono(0, 1)))?;
    let alpha = real_of_imag(phi[0][0].coeff(&mono(1, 1)).scale(&Rat::int(eta(0) * eta(1))))?;
    let lin = build_linear(ctx, alpha.clone(), beta.clone(), gamma.clone()).ok()?;
    let low = r.with_order(1);
    (lin.phi() == low.phi()).then_some((alpha, beta, gamma))
}

/// `f̂(x̂) = f(x) + i(α(x·∂f/∂x)(a∂) + β(ax)(∂f/∂x·∂) + γ(a·∂f/∂x)(x∂))` at
/// order 1 against `T⁻¹`, and the realization-independent first-order
/// commutator `[x̂_μ, f̂] ▷ 1 = i(a_μ(x·∂f/∂x) − x_μ(a·∂f/∂x))`.
pub fn check_correspondence_formula(r: &Realization, degree: usize) -> Result<Report> {
    let low = r.with_order(1);
    let ctx = low.ctx();
    let n = ctx.dim;
    let (alpha, beta, gamma) = linear_coefficients(&low)
        .ok_or_else(|| KappaError::InvalidRealization(format!("{} has no linear first-order form", r.name())))?;
    let (al, be, ga) = (GaussRat::real(alpha), GaussRat::real(beta), GaussRat::real(gamma));
    let xhat = low.xhat();
    let ad = Poly::dot(ctx, Block::A, Block::D);
    let ax = Poly::dot(ctx, Block::A, Block::X);
    let xd = Poly::dot(ctx, Block::X, Block::D);
    let mut formula = Collector::new("f̂(x̂) first-order correspondence");
    let mut commut = Collector::new("[x̂_μ, f̂] ▷ 1 at first order");
    for f in monomials(ctx, degree, false) {
        let grad: Vec<Poly> = (0..n).map(|mu| f.derivative(Block::X.var(mu))).collect();
        let euler = (0..n).fold(Poly::zero(ctx), |acc, mu| &acc + &(&Poly::var(ctx, Block::X, mu) * &grad[mu]));
        let a_grad = (0..n).fold(Poly::zero(ctx), |acc, mu| &acc + &(&Poly::a(ctx, mu) * &grad[mu]));
        let grad_d = (0..n).fold(Poly::zero(ctx), |acc, mu| &acc + &(&grad[mu] * &Poly::var(ctx, Block::D, mu)));
        let mut corr = (&euler * &ad).scale(&al);
        corr.add_assign_ref(&(&ax * &grad_d).scale(&be));
        corr.add_assign_ref(&(&a_grad * &xd).scale(&ga));
        let want = &f + &corr.mul_i();
        let fhat = unhat_t_inverse(&f, &xhat).to_weyl(&xhat);
        let got = fhat.poly().retain(|m, _| m.block_degree(Block::D) > 0);
        let want_d = want.retain(|m, _| m.block_degree(Block::D) > 0);
        formula.add(|| f.to_string(), &(&got - &want_d));
        formula.add(|| format!("{f} (x-part)"), &(&fhat.poly().zero_block(Block::D).a_part(0) - &f));
        for mu in 0..n {
            let lhs = xhat[mu].commutator(&fhat).act_on_poly(&Poly::one(ctx));
            let rhs = (&(&Poly::a(ctx, mu) * &euler) - &(&Poly::var(ctx, Block::X, mu) * &a_grad)).mul_i();
            commut.add(|| format!("{f}, μ={mu}"), &(&lhs - &rhs));
        }
    }
    let mut rep = Report::new();
    rep.push(formula.finish());
    rep.push(commut.finish());
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ScalarSeries2;
    use crate::realizations::{build_vector_like, catalog, CATALOG};

    #[test]
    fn jacobi_pdes_hold_for_catalog() {
        let ctx = Ctx::new(3, 3).unwrap();
        for name in CATALOG {
            let r = catalog(name, ctx).unwrap();
            let ops = DerivedOps::compute(&r).unwrap();
            let rep = check_jacobi_pdes(&r, &ops).unwrap();
            assert!(rep.passed(), "{name}\n{rep}");
        }
    }

    #[test]
    fn vector_like_samples_and_negative_control() {
        let ctx = Ctx::new(3, 3).unwrap();
        let w = 5;
        for f in [ScalarSeries2::one(w), ScalarSeries2::one(w).add(&ScalarSeries2::b(w))] {
            let r = build_vector_like(ctx, &f).unwrap();
            let ops = DerivedOps::compute(&r).unwrap();
            assert!(check_jacobi_pdes(&r, &ops).unwrap().passed());
            assert!(vector_transformation_residual(&ops).is_zero());
            let bad = perturb_gamma2(&r.h(), Rat::ONE);
            assert!(!jacobi_xxp(&bad).residual_zero);
        }
    }

    #[test]
    fn algebra_relations() {
        let ctx = Ctx::new(3, 2).unwrap();
        for name in CATALOG {
            let r = catalog(name, ctx).unwrap();
            let ops = DerivedOps::compute(&r).unwrap();
            let rep = check_algebra_relations(&r, &ops);
            assert!(rep.passed(), "{name}\n{rep}");
        }
        let ms = catalog("ms", ctx).unwrap();
        assert!(!vector_transformation_residual(&DerivedOps::compute(&ms).unwrap()).is_zero());
    }

    #[test]
    fn oracle_matches_machinery() {
        let ctx = Ctx::new(3, 1).unwrap();
        for (a, b, g) in sample_triples() {
            let rep = check_linear_oracle(ctx, a, b, g).unwrap();
            assert!(rep.passed(), "{rep}");
        }
        assert!(linear_oracle(ctx, Rat::ZERO, Rat::ZERO, Rat::ZERO).is_err());
    }

    #[test]
    fn natural_coproduct_first_order() {
        let ctx = Ctx::new(3, 1).unwrap();
        let o = linear_oracle(ctx, Rat::int(-1), Rat::ONE, Rat::ZERO).unwrap();
        let nat = catalog("natural", ctx).unwrap();
        let got = coproduct_partial(&MomentumData::compute(&nat));
        for (g, w) in got.iter().zip(&o.delta) {
            assert!(g.sub(w).is_zero());
        }
    }

    #[test]
    fn dictionary() {
        let ctx = Ctx::new(3, 1).unwrap();
        assert_eq!(covariant_linear_map(Rat::ZERO, Rat::ZERO), (Rat::int(-1), Rat::ONE, Rat::ZERO));
        assert_eq!(covariant_linear_map(Rat::ZERO, Rat::new(1, 2)), (Rat::int(-1), Rat::ZERO, Rat::ZERO));
        for (u, v) in [(Rat::ZERO, Rat::ZERO), (Rat::ZERO, Rat::new(1, 2)), (Rat::int(1), Rat::new(-1, 3)), (Rat::new(-1, 2), Rat::int(2))] {
            let (a, _, g) = covariant_linear_map(u.clone(), v.clone());
            assert_eq!(&g - &a, Rat::ONE);
            assert!(check_covariant_dictionary(ctx, u, v).unwrap().residual_zero);
        }
    }

    #[test]
    fn catalog_linear_coefficients() {
        let ctx = Ctx::new(3, 3).unwrap();
        let r = |n: i64, d: i64| Rat::new(n, d);
        let expect = [
            ("left", (r(-1, 1), r(0, 1), r(0, 1))),
            ("right", (r(0, 1), r(0, 1), r(1, 1))),
            ("symmetric", (r(-1, 2), r(0, 1), r(1, 2))),
            ("natural", (r(-1, 1), r(1, 1), r(0, 1))),
            ("ms", (r(0, 1), r(1, 1), r(1, 1))),
        ];
        for (name, triple) in expect {
            assert_eq!(linear_coefficients(&catalog(name, ctx).unwrap()).unwrap(), triple, "{name}");
        }
        for name in CATALOG {
            let r = catalog(name, ctx).unwrap();
            assert!(linear_coefficients(&r).is_some(), "{name}");
            assert!(check_correspondence_formula(&r, 3).unwrap().passed(), "{name}");
        }
    }
}
