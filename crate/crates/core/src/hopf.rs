//! Coproduct, antipode and counit of the momentum sector, the natural-basis
//! formulas for `D_μ` and `M_μν`, and the Hopf-axiom checks.
//!
//! A tensor `Σ c f(∂) ⊗ g(∂) ⊗ …` is a polynomial in the slot blocks: the
//! `k`, `q` and `w` variables stand for `∂` in the first, second and third
//! factor.

use std::fmt;

use rustc_hash::FxHashMap;

use crate::algebra::poly::eta;
use crate::algebra::{Block, Ctx, GaussRat, MomentumMap, Mono, Poly, Rat};
use crate::momentum_maps::MomentumData;
use crate::realizations::derived::DerivedOps;
use crate::report::{Check, Report};
use crate::star::StarProduct;
use crate::weyl::{WeylOp, XPolynomial};

#[derive(Clone, PartialEq, Eq)]
pub struct TensorOp {
    slots: usize,
    poly: Poly,
}

impl TensorOp {
    pub fn new(slots: usize, poly: Poly) -> Self {
        TensorOp { slots, poly }
    }

    pub fn zero(ctx: Ctx, slots: usize) -> Self {
        Self::new(slots, Poly::zero(ctx))
    }

    /// `f(∂)` placed in one tensor factor.
    pub fn in_slot(f: &Poly, slot: usize, slots: usize) -> Self {
        Self::new(slots, f.move_block(Block::D, Block::slot(slot)))
    }

    /// `f ⊗ g`.
    pub fn tensor(f: &Poly, g: &Poly) -> Self {
        Self::new(2, &f.move_block(Block::D, Block::K) * &g.move_block(Block::D, Block::Q))
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.slots.max(o.slots), &self.poly + &o.poly)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.slots.max(o.slots), &self.poly - &o.poly)
    }

    /// Factorwise product; all factors are commuting functions of `∂`.
    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.slots.max(o.slots), &self.poly * &o.poly)
    }

    pub fn scale_poly(&self, c: &Poly) -> Self {
        Self::new(self.slots, &self.poly * c)
    }

    /// `m(f ⊗ g) = fg`.
    pub fn multiply_out(&self) -> Poly {
        let mut p = self.poly.clone();
        for s in 0..self.slots {
            p = p.move_block(Block::slot(s), Block::D);
        }
        p
    }

    /// Splits into `(slot monomials, coefficient)` pairs, the coefficient
    /// carrying every non-slot symbol.
    pub fn split(&self) -> Vec<(Vec<Mono>, Poly)> {
        let ctx = self.poly.ctx();
        let mut groups: FxHashMap<Vec<Mono>, Poly> = FxHashMap::default();
        for (m, c) in self.poly.terms() {
            let mut key = Vec::with_capacity(self.slots);
            let mut rest = *m;
            for s in 0..self.slots {
                let b = Block::slot(s);
                key.push(m.only(b).moved(b, Block::D));
                rest = rest.without(b);
            }
            groups.entry(key).or_insert_with(|| Poly::zero(ctx)).add_term(rest, c.clone());
        }
        let mut out: Vec<_> = groups.into_iter().collect();
        out.sort_by(|a, b| {
            for (x, y) in a.0.iter().zip(&b.0) {
                let o = x.print_cmp(y);
                if o != std::cmp::Ordering::Equal {
                    return o;
                }
            }
            std::cmp::Ordering::Equal
        });
        out
    }
}

impl fmt::Display for TensorOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self.split();
        if parts.is_empty() {
            return write!(f, "0");
        }
        let ctx = self.poly.ctx();
        let rendered: Vec<String> = parts
            .iter()
            .map(|(key, c)| {
                let factors: Vec<String> = key
                    .iter()
                    .map(|m| if m.is_one() { "1".to_string() } else { Poly::term(ctx, *m, GaussRat::ONE).to_string() })
                    .collect();
                format!("({c})*[{}]", factors.join(" ⊗ "))
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

impl fmt::Debug for TensorOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `F(k, q, …) ↦ i·F(−i∂, −i∂, …)` on the listed momentum blocks, the rule
/// turning a momentum function into the operator `i F(−i∂)`.
fn momentum_to_operator(p: &Poly, blocks: &[Block]) -> Poly {
    p.map_terms(|m, c| {
        let d: usize = blocks.iter().map(|b| m.block_degree(*b)).sum();
        Some((*m, c * &GaussRat::i_pow(1 - d as i64)))
    })
}

/// `Δ∂_μ = iD(−i∂ ⊗ 1, 1 ⊗ −i∂)`.
pub fn coproduct_partial(data: &MomentumData) -> Vec<TensorOp> {
    data.d.comps().iter().map(|c| TensorOp::new(2, momentum_to_operator(c, &[Block::K, Block::Q]))).collect()
}

/// `S(∂_μ) = iS_μ(−i∂)`.
pub fn antipode_partial(data: &MomentumData) -> Vec<Poly> {
    data.s.comps().iter().map(|c| momentum_to_operator(c, &[Block::K]).move_block(Block::K, Block::D)).collect()
}

/// The Hopf structure on functions of `∂`.
#[derive(Clone, Debug)]
pub struct HopfData {
    ctx: Ctx,
    /// `Δ∂_μ` in the `k`, `q` blocks.
    pub delta: Vec<Poly>,
    /// `S(∂_μ)` in the `d` block.
    pub antipode: Vec<Poly>,
}

impl HopfData {
    pub fn from_momentum(data: &MomentumData) -> Self {
        HopfData {
            ctx: data.ctx(),
            delta: coproduct_partial(data).into_iter().map(|t| t.poly).collect(),
            antipode: antipode_partial(data),
        }
    }

    pub fn ctx(&self) -> Ctx {
        self.ctx
    }

    pub fn coproduct(&self) -> Vec<TensorOp> {
        self.delta.iter().map(|p| TensorOp::new(2, p.clone())).collect()
    }

    /// `Δf(∂) = f(Δ∂)`.
    pub fn coproduct_of(&self, f: &Poly) -> TensorOp {
        TensorOp::new(2, f.substitute_block(Block::D, &self.delta))
    }

    /// `S(f(∂)) = f(S(∂))`.
    pub fn antipode_of(&self, f: &Poly) -> Poly {
        f.substitute_block(Block::D, &self.antipode)
    }

    /// `ε(f) = f(0)`.
    pub fn counit(&self, f: &Poly) -> Poly {
        f.zero_block(Block::D)
    }

    /// `Δ` applied to one factor of a tensor, shifting the later factors.
    fn coproduct_in_slot(&self, t: &TensorOp, slot: usize) -> TensorOp {
        let mut p = t.poly.clone();
        for s in (slot + 1..t.slots).rev() {
            p = p.move_block(Block::slot(s), Block::slot(s + 1));
        }
        let (b1, b2) = (Block::slot(slot), Block::slot(slot + 1));
        let moved: Vec<Poly> = self
            .delta
            .iter()
            .map(|d| {
                if slot == 0 {
                    d.clone()
                } else {
                    d.move_block(Block::Q, b2).move_block(Block::K, b1)
                }
            })
            .collect();
        TensorOp::new(t.slots + 1, p.substitute_block(b1, &moved))
    }
}

fn poly_check(name: String, res: &Poly) -> Check {
    Check::residual(name, res, res.is_zero())
}

fn tensor_check(name: String, lhs: &TensorOp, rhs: &TensorOp) -> Check {
    let res = lhs.sub(rhs);
    Check::residual(name, &res, res.is_zero())
}

/// Coassociativity, both counit laws and both antipode laws on every `∂_μ`,
/// plus `S² = id`, `ΔZ = Z⊗Z`, `S(Z) = Z⁻¹` and `S(□) = □`.
pub fn check_hopf_axioms(h: &HopfData, ops: &DerivedOps) -> Report {
    let ctx = h.ctx;
    let mut rep = Report::new();
    for (mu, d) in h.coproduct().iter().enumerate() {
        let left = h.coproduct_in_slot(d, 0);
        let right = h.coproduct_in_slot(d, 1);
        rep.push(tensor_check(format!("(Δ⊗id)Δ∂{mu} = (id⊗Δ)Δ∂{mu}"), &left, &right));
        let dmu = Poly::var(ctx, Block::D, mu);
        let eps_left = d.poly.zero_block(Block::K).move_block(Block::Q, Block::D);
        let eps_right = d.poly.zero_block(Block::Q).move_block(Block::K, Block::D);
        rep.push(poly_check(format!("(ε⊗id)Δ∂{mu} = ∂{mu}"), &(&eps_left - &dmu)));
        rep.push(poly_check(format!("(id⊗ε)Δ∂{mu} = ∂{mu}"), &(&eps_right - &dmu)));
        let s_left = d.poly.substitute_block(Block::K, &h.antipode).move_block(Block::Q, Block::D);
        let s_right = d.poly.substitute_block(Block::Q, &h.antipode).move_block(Block::K, Block::D);
        rep.push(poly_check(format!("m(S⊗id)Δ∂{mu} = ε(∂{mu})"), &s_left));
        rep.push(poly_check(format!("m(id⊗S)Δ∂{mu} = ε(∂{mu})"), &s_right));
        rep.push(poly_check(format!("S²(∂{mu}) = ∂{mu}"), &(&h.antipode_of(&h.antipode[mu]) - &dmu)));
    }
    let z = ops.z.poly();
    let zinv = ops.z_inv.poly();
    rep.push(tensor_check("ΔZ = Z⊗Z".into(), &h.coproduct_of(z), &TensorOp::tensor(z, z)));
    rep.push(poly_check("S(Z) = Z⁻¹".into(), &(&h.antipode_of(z) - zinv)));
    rep.push(poly_check("S(□) = □".into(), &(&h.antipode_of(ops.box_op.poly()) - ops.box_op.poly())));
    rep.push(poly_check("ε(Z) = 1".into(), &(&h.counit(z) - &Poly::one(ctx))));
    rep
}

fn contract(ctx: Ctx, f: impl Fn(usize) -> Poly) -> Poly {
    let mut acc = Poly::zero(ctx);
    for al in 0..ctx.dim {
        acc.add_assign_ref(&f(al).scale_int(eta(al)));
    }
    acc
}

fn polys(ops: &[WeylOp]) -> Vec<Poly> {
    ops.iter().map(|o| o.poly().clone()).collect()
}

/// `ΔD_μ = D_μ⊗Z⁻¹ + 1⊗D_μ + ia_μ ∂^L_αZ ⊗ D^α`.
pub fn coproduct_natural_d(ops: &DerivedOps) -> Vec<TensorOp> {
    let ctx = ops.z.ctx();
    let d = polys(&ops.d);
    let dl = polys(&ops.d_left);
    let z = ops.z.poly();
    let one = Poly::one(ctx);
    (0..ctx.dim)
        .map(|mu| {
            let mut t = TensorOp::tensor(&d[mu], ops.z_inv.poly()).add(&TensorOp::tensor(&one, &d[mu]));
            let ia = Poly::a(ctx, mu).mul_i();
            for al in 0..ctx.dim {
                let term = TensorOp::tensor(&(&dl[al] * z), &d[al]).scale_poly(&ia.scale_int(eta(al)));
                t = t.add(&term);
            }
            t
        })
        .collect()
}

/// `ΔD²` written out in `D`, `Z` and `∂^L`, with the term
/// `2i ∂^L_αZ ⊗ D^α(aD)`.
pub fn coproduct_d_squared(ops: &DerivedOps) -> TensorOp {
    let ctx = ops.z.ctx();
    let d = polys(&ops.d);
    let dl = polys(&ops.d_left);
    let z = ops.z.poly();
    let zi = ops.z_inv.poly();
    let one = Poly::one(ctx);
    let d2 = contract(ctx, |al| &d[al] * &d[al]);
    let ad = contract(ctx, |al| &Poly::a(ctx, al) * &d[al]);
    let a2 = contract(ctx, |al| &Poly::a(ctx, al) * &Poly::a(ctx, al));
    let two_i = GaussRat::imag(Rat::int(2));
    let mut t = TensorOp::tensor(&d2, &(zi * zi)).add(&TensorOp::tensor(&one, &d2));
    for al in 0..ctx.dim {
        let e = eta(al);
        t = t.add(&TensorOp::tensor(&d[al], &(&d[al] * zi)).scale_poly(&Poly::int(ctx, 2 * e)));
        for be in 0..ctx.dim {
            let l = &(&(&dl[al] * &dl[be]) * z) * z;
            let r = &d[al] * &d[be];
            t = t.sub(&TensorOp::tensor(&l, &r).scale_poly(&a2.scale_int(eta(al) * eta(be))));
        }
        let c = Poly::int(ctx, e).scale(&two_i);
        t = t.add(&TensorOp::tensor(&(&(&ad * &dl[al]) * z), &(&d[al] * zi)).scale_poly(&c));
        t = t.add(&TensorOp::tensor(&(&dl[al] * z), &(&d[al] * &ad)).scale_poly(&c));
    }
    t
}

/// `S(D_μ) = (−D_μ + ia_μ ∂^L D)Z`.
pub fn antipode_natural_d(ops: &DerivedOps) -> Vec<Poly> {
    let ctx = ops.z.ctx();
    let d = polys(&ops.d);
    let dl = polys(&ops.d_left);
    let dld = contract(ctx, |al| &dl[al] * &d[al]);
    (0..ctx.dim).map(|mu| &(&(-&d[mu]) + &(&Poly::a(ctx, mu).mul_i() * &dld)) * ops.z.poly()).collect()
}

/// Identities of `D`, `Z`, `□` and `∂^L` under `Δ` and `S`, all valid in
/// every realization once the operators are written in `∂`.
pub fn check_natural_basis(h: &HopfData, ops: &DerivedOps) -> Report {
    let ctx = h.ctx;
    let n = ctx.dim;
    let mut rep = Report::new();
    let d = polys(&ops.d);
    let dl = polys(&ops.d_left);
    let z = ops.z.poly();
    let zi = ops.z_inv.poly();
    let one = Poly::one(ctx);
    let half_i = GaussRat::imag(Rat::new(1, 2));
    let c19 = coproduct_natural_d(ops);
    let dl2 = contract(ctx, |al| &dl[al] * &dl[al]);
    rep.push(poly_check("□ = Z(∂^L)²".into(), &(ops.box_op.poly() - &(z * &dl2))));
    for mu in 0..n {
        let lhs = h.coproduct_of(&d[mu]);
        rep.push(tensor_check(format!("ΔD{mu} = D{mu}⊗Z⁻¹ + 1⊗D{mu} + ia{mu} ∂^L_αZ⊗D^α"), &lhs, &c19[mu]));
        let dlc = TensorOp::tensor(&dl[mu], zi).add(&TensorOp::tensor(&one, &dl[mu]));
        rep.push(tensor_check(format!("Δ∂^L{mu} = ∂^L{mu}⊗Z⁻¹ + 1⊗∂^L{mu}"), &h.coproduct_of(&dl[mu]), &dlc));
        // the ∂^L route: D_μ = ∂^L_μ + (ia_μ/2)Z(∂^L)²
        let ia2 = Poly::a(ctx, mu).scale(&half_i);
        let mut d10 = dlc.add(&TensorOp::tensor(&(z * &dl2), zi).scale_poly(&ia2));
        d10 = d10.add(&TensorOp::tensor(z, &(z * &dl2)).scale_poly(&ia2));
        for al in 0..n {
            d10 = d10.add(&TensorOp::tensor(&(&dl[al] * z), &dl[al]).scale_poly(&Poly::a(ctx, mu).mul_i().scale_int(eta(al))));
        }
        rep.push(tensor_check(format!("ΔD{mu} through Δ∂^L"), &lhs, &d10));
        let sd = h.antipode_of(&d[mu]);
        rep.push(poly_check(format!("S(D{mu}) = (−D{mu} + ia{mu}∂^L D)Z"), &(&sd - &antipode_natural_d(ops)[mu])));
        rep.push(poly_check(format!("S²(D{mu}) = D{mu}"), &(&h.antipode_of(&sd) - &d[mu])));
        rep.push(poly_check(format!("S(∂^L{mu}) = −∂^L{mu}Z"), &(&h.antipode_of(&dl[mu]) + &(&dl[mu] * z))));
    }
    let sd: Vec<Poly> = d.iter().map(|p| h.antipode_of(p)).collect();
    let d2 = contract(ctx, |al| &d[al] * &d[al]);
    rep.push(poly_check("(SD)(SD) = D²".into(), &(&contract(ctx, |al| &sd[al] * &sd[al]) - &d2)));
    rep.push(poly_check("Z(D)Z(S(D)) = 1".into(), &(&(z * &h.antipode_of(z)) - &one)));
    let dld = contract(ctx, |al| &dl[al] * &d[al]);
    rep.push(poly_check("S(∂^L D Z) = ∂^L D".into(), &(&h.antipode_of(&(&dld * z)) - &dld)));
    let delta_d2 = h.coproduct_of(&d2);
    let product = contract_tensor(ctx, |al| c19[al].mul(&c19[al]));
    rep.push(tensor_check("ΔD² = (ΔD_α)(ΔD^α)".into(), &delta_d2, &product));
    rep.push(tensor_check("ΔD² closed form".into(), &delta_d2, &coproduct_d_squared(ops)));
    rep
}

fn contract_tensor(ctx: Ctx, f: impl Fn(usize) -> TensorOp) -> TensorOp {
    let mut acc = TensorOp::zero(ctx, 2);
    for al in 0..ctx.dim {
        acc = acc.add(&f(al).scale_poly(&Poly::int(ctx, eta(al))));
    }
    acc
}

/// A finite sum `Σ L_i ⊗ R_i` of general Weyl-algebra operators.
#[derive(Clone, Debug)]
pub struct OpTensor {
    pub terms: Vec<(WeylOp, WeylOp)>,
}

impl OpTensor {
    /// `Σ (L_i ▷ f) ⋆ (R_i ▷ g)`.
    pub fn act_star(&self, sp: &StarProduct, f: &XPolynomial, g: &XPolynomial) -> XPolynomial {
        let mut r = Poly::zero(sp.ctx());
        for (l, rt) in &self.terms {
            let lf = l.act_on_poly(f);
            let rg = rt.act_on_poly(g);
            if !lf.is_zero() && !rg.is_zero() {
                r.add_assign_ref(&sp.star(&lf, &rg));
            }
        }
        r
    }

    /// `m(S ⊗ id)` or `m(id ⊗ S)` given the antipode of each factor.
    pub fn contract_with(&self, s: impl Fn(&WeylOp) -> WeylOp, left: bool) -> WeylOp {
        let ctx = self.terms[0].0.ctx();
        let mut acc = WeylOp::zero(ctx);
        for (l, r) in &self.terms {
            acc = if left { &acc + &(&s(l) * r) } else { &acc + &(l * &s(r)) };
        }
        acc
    }
}

/// `ΔM_μν = M_μν⊗1 + 1⊗M_μν + ia_μ(∂^L)^αZ⊗M_αν − ia_ν(∂^L)^αZ⊗M_αμ`.
pub fn coproduct_natural_m(ops: &DerivedOps) -> Vec<Vec<OpTensor>> {
    let ctx = ops.z.ctx();
    let n = ctx.dim;
    let one = WeylOp::one(ctx);
    let lz: Vec<WeylOp> = ops.d_left.iter().map(|l| l * &ops.z).collect();
    (0..n)
        .map(|mu| {
            (0..n)
                .map(|nu| {
                    let mut terms = vec![(ops.m[mu][nu].clone(), one.clone()), (one.clone(), ops.m[mu][nu].clone())];
                    for al in 0..n {
                        let cm = WeylOp::scalar(Poly::a(ctx, mu).mul_i().scale_int(eta(al)));
                        let cn = WeylOp::scalar(Poly::a(ctx, nu).mul_i().scale_int(-eta(al)));
                        terms.push((&cm * &lz[al], ops.m[al][nu].clone()));
                        terms.push((&cn * &lz[al], ops.m[al][mu].clone()));
                    }
                    OpTensor { terms }
                })
                .collect()
        })
        .collect()
}

/// `S(M_μν) = −M_μν + ia_μ(∂^L)^αM_αν − ia_ν(∂^L)^αM_αμ`.
pub fn antipode_natural_m(ops: &DerivedOps) -> Vec<Vec<WeylOp>> {
    let ctx = ops.z.ctx();
    let n = ctx.dim;
    (0..n)
        .map(|mu| {
            (0..n)
                .map(|nu| {
                    let mut s = -&ops.m[mu][nu];
                    for al in 0..n {
                        let cm = WeylOp::scalar(Poly::a(ctx, mu).mul_i().scale_int(eta(al)));
                        let cn = WeylOp::scalar(Poly::a(ctx, nu).mul_i().scale_int(eta(al)));
                        s = &s + &(&cm * &(&ops.d_left[al] * &ops.m[al][nu]));
                        s = &s - &(&cn * &(&ops.d_left[al] * &ops.m[al][mu]));
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// The Lorentz-generator part: antipode axioms for `ΔM` with the closed-form
/// `S(M)`, `S²(M_μν) = Z^{1−n}M_μνZ^{n−1}`, and the action of `ΔM` on star
/// products of monomials up to `degree`.
pub fn check_lorentz(h: &HopfData, ops: &DerivedOps, sp: &StarProduct, degree: usize) -> Report {
    let ctx = h.ctx;
    let n = ctx.dim;
    let mut rep = Report::new();
    let delta_m = coproduct_natural_m(ops);
    let s_m = antipode_natural_m(ops);
    let s_dl: Vec<WeylOp> = ops.d_left.iter().map(|l| WeylOp::from_poly(h.antipode_of(l.poly()))).collect();
    // S on the factors occurring in ΔM: scalars times M, 1, or ∂^L_αZ
    let s_factor = |u: &WeylOp| -> WeylOp {
        if u.is_d_only() {
            return WeylOp::from_poly(h.antipode_of(u.poly()));
        }
        for mu in 0..n {
            for nu in 0..n {
                if *u == ops.m[mu][nu] {
                    return s_m[mu][nu].clone();
                }
            }
        }
        unreachable!("unexpected factor in ΔM")
    };
    let zpow = |e: usize, inv: bool| (0..e).fold(WeylOp::one(ctx), |acc, _| &acc * if inv { &ops.z_inv } else { &ops.z });
    let mut ok = [true; 3];
    let mut first: Vec<Check> = Vec::new();
    let record = |ok: &mut bool, first: &mut Vec<Check>, name: String, res: WeylOp| {
        if !res.is_zero() && *ok {
            *ok = false;
            first.push(Check::residual(name, &res, false));
        }
    };
    for mu in 0..n {
        for nu in 0..n {
            if mu == nu {
                continue;
            }
            let t = &delta_m[mu][nu];
            let left = t.contract_with(&s_factor, true);
            let right = t.contract_with(&s_factor, false);
            record(&mut ok[0], &mut first, format!("m(S⊗id)ΔM{mu}{nu} = 0"), left);
            record(&mut ok[1], &mut first, format!("m(id⊗S)ΔM{mu}{nu} = 0"), right);
            // S is an antihomomorphism: S(∂^L_α M_αν) = S(M_αν)S(∂^L_α)
            let mut s2 = -&s_m[mu][nu];
            for al in 0..n {
                let cm = WeylOp::scalar(Poly::a(ctx, mu).mul_i().scale_int(eta(al)));
                let cn = WeylOp::scalar(Poly::a(ctx, nu).mul_i().scale_int(eta(al)));
                s2 = &s2 + &(&cm * &(&s_m[al][nu] * &s_dl[al]));
                s2 = &s2 - &(&cn * &(&s_m[al][mu] * &s_dl[al]));
            }
            let expect = &(&zpow(n - 1, true) * &ops.m[mu][nu]) * &zpow(n - 1, false);
            record(&mut ok[2], &mut first, format!("S²(M{mu}{nu}) = Z^(1−n) M{mu}{nu} Z^(n−1)"), &s2 - &expect);
        }
    }
    let names = ["m(S⊗id)ΔM_μν = 0", "m(id⊗S)ΔM_μν = 0", "S²(M_μν) = Z^(1−n) M_μν Z^(n−1)"];
    for (i, name) in names.iter().enumerate() {
        if ok[i] {
            rep.push(Check::flag(*name, true, "0"));
        }
    }
    let mons = crate::star::monomials(ctx, degree, true);
    let mut bad = None;
    'outer: for mu in 0..n {
        for nu in (mu + 1)..n {
            for f in &mons {
                for g in &mons {
                    let lhs = delta_m[mu][nu].act_star(sp, f, g);
                    let rhs = ops.m[mu][nu].act_on_poly(&sp.star(f, g));
                    if lhs != rhs {
                        bad = Some((format!("M{mu}{nu}, f = {f}, g = {g}"), &lhs - &rhs));
                        break 'outer;
                    }
                }
            }
        }
    }
    match bad {
        None => rep.push(Check::flag(format!("m(ΔM_μν ▷ (f ⊗ g)) = M_μν ▷ (f * g), degree <= {degree}"), true, "0")),
        Some((w, res)) => rep.push(Check::residual(format!("ΔM action ({w})"), res, false)),
    }
    for c in first {
        rep.push(c);
    }
    rep
}

/// With `a = (a_0, 0, …, 0)`: `S(D_k) = −D_kZ`, `S(M_mk) = −M_mk`,
/// `S(M_0k) = −M_0k + ia_0(∂^L)^αM_αk` and `ΔM_mk` primitive.
pub fn check_time_like(h: &HopfData, ops: &DerivedOps) -> Report {
    let ctx = h.ctx;
    let n = ctx.dim;
    let spatial_zero = |p: &Poly| -> Poly {
        let mut r = p.clone();
        for m in 1..n {
            r = r.zero_var(Block::A.var(m));
        }
        r
    };
    let sz_op = |u: &WeylOp| WeylOp::from_poly(spatial_zero(u.poly()));
    let mut rep = Report::new();
    let s_m = antipode_natural_m(ops);
    let delta_m = coproduct_natural_m(ops);
    for k in 1..n {
        let sd = spatial_zero(&h.antipode_of(ops.d[k].poly()));
        let expect = spatial_zero(&-&(ops.d[k].poly() * ops.z.poly()));
        rep.push(poly_check(format!("S(D{k}) = −D{k}Z"), &(&sd - &expect)));
        let mut s0k = -&ops.m[0][k];
        for al in 0..n {
            let c = WeylOp::scalar(Poly::a(ctx, 0).mul_i().scale_int(eta(al)));
            s0k = &s0k + &(&c * &(&ops.d_left[al] * &ops.m[al][k]));
        }
        let res = &sz_op(&s_m[0][k]) - &sz_op(&s0k);
        rep.push(Check::residual(format!("S(M0{k}) = −M0{k} + ia0(∂^L)^αM_α{k}"), &res, res.is_zero()));
        for m in 1..n {
            if m == k {
                continue;
            }
            let res = &sz_op(&s_m[m][k]) + &sz_op(&ops.m[m][k]);
            rep.push(Check::residual(format!("S(M{m}{k}) = −M{m}{k}"), &res, res.is_zero()));
            let extra: Vec<WeylOp> = delta_m[m][k].terms.iter().skip(2).map(|(l, _)| sz_op(l)).collect();
            let prim = extra.iter().all(|l| l.is_zero());
            rep.push(Check::flag(format!("ΔM{m}{k} primitive"), prim, if prim { "0" } else { "non-primitive terms" }));
        }
    }
    rep
}

/// The truncated momentum map of `Δ∂` for display: `D` back from `Δ∂`.
pub fn kernel_of(delta: &[TensorOp]) -> MomentumMap {
    MomentumMap::new(
        2,
        delta
            .iter()
            .map(|t| {
                t.poly.map_terms(|m, c| {
                    let d = m.block_degree(Block::K) + m.block_degree(Block::Q);
                    Some((*m, c * &GaussRat::i_pow(d as i64 - 1)))
                })
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realizations::catalog;

    fn setup(name: &str, ctx: Ctx) -> (HopfData, DerivedOps, MomentumData) {
        let r = catalog(name, ctx).unwrap();
        let data = MomentumData::compute(&r);
        (HopfData::from_momentum(&data), DerivedOps::compute(&r).unwrap(), data)
    }

    #[test]
    fn primitive_at_order_zero() {
        let ctx = Ctx::new(3, 0).unwrap();
        let (h, _, _) = setup("left", ctx);
        for mu in 0..3 {
            let d = Poly::var(ctx, Block::D, mu);
            assert_eq!(h.coproduct()[mu], TensorOp::tensor(&d, &Poly::one(ctx)).add(&TensorOp::tensor(&Poly::one(ctx), &d)));
        }
    }

    #[test]
    fn axioms_and_natural_basis() {
        let ctx = Ctx::new(2, 3).unwrap();
        for name in crate::realizations::CATALOG {
            let (h, ops, data) = setup(name, ctx);
            let rep = check_hopf_axioms(&h, &ops);
            assert!(rep.passed(), "{name}\n{rep}");
            let rep = check_natural_basis(&h, &ops);
            assert!(rep.passed(), "{name}\n{rep}");
            assert_eq!(kernel_of(&h.coproduct()), data.d);
        }
    }

    #[test]
    fn right_covariant_coproduct() {
        let ctx = Ctx::new(2, 3).unwrap();
        let (h, ops, _) = setup("right", ctx);
        for mu in 0..2 {
            let d = Poly::var(ctx, Block::D, mu);
            let expect = TensorOp::tensor(&d, &Poly::one(ctx)).add(&TensorOp::tensor(ops.z.poly(), &d));
            assert_eq!(h.coproduct()[mu], expect);
        }
    }

    #[test]
    fn lorentz_generators() {
        let ctx = Ctx::new(2, 2).unwrap();
        for name in ["natural", "left"] {
            let r = catalog(name, ctx).unwrap();
            let (h, ops, _) = setup(name, ctx);
            let sp = StarProduct::new(&r);
            let rep = check_lorentz(&h, &ops, &sp, 1);
            assert!(rep.passed(), "{name}\n{rep}");
        }
        let ctx = Ctx::new(3, 2).unwrap();
        let (h, ops, _) = setup("natural", ctx);
        let rep = check_time_like(&h, &ops);
        assert!(rep.passed(), "{rep}");
    }
}
