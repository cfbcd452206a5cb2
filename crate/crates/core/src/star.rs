//! Star products of polynomials and plane waves, the structural checks on
//! them, and the dual realization obtained by flipping the coproduct.

use std::sync::Mutex;

use rustc_hash::FxHashMap;

use crate::algebra::poly::eta;
use crate::algebra::{Block, Ctx, GaussRat, MomentumMap, Mono, Poly, Rat};
use crate::error::Result;
use crate::momentum_maps::{k_inverse, swap_slots, MomentumData};
use crate::realizations::derived::DerivedOps;
use crate::realizations::Realization;
use crate::report::{Check, Report};
use crate::weyl::{unhat_t_inverse, HatPoly, WeylOp, XPolynomial};

/// `e^{ikx} ⋆ e^{iqx} = e^{iD(k,q)x}`.
pub fn star_planewaves(data: &MomentumData) -> &MomentumMap {
    &data.d
}

/// Path A: `f ⋆ g = T⁻¹(f) ▷ g`, with `T⁻¹` of each monomial cached.
pub struct StarProduct {
    xhat: Vec<WeylOp>,
    cache: Mutex<FxHashMap<Mono, HatPoly>>,
}

impl StarProduct {
    pub fn new(r: &Realization) -> Self {
        Self::from_xhat(r.xhat())
    }

    pub fn from_xhat(xhat: Vec<WeylOp>) -> Self {
        StarProduct { xhat, cache: Mutex::new(FxHashMap::default()) }
    }

    pub fn xhat(&self) -> &[WeylOp] {
        &self.xhat
    }

    pub fn ctx(&self) -> Ctx {
        self.xhat[0].ctx()
    }

    /// `T⁻¹(f)`, extended linearly over the central coefficients.
    pub fn hat(&self, f: &XPolynomial) -> HatPoly {
        let ctx = self.ctx();
        let mut out = HatPoly::zero(ctx);
        for (m, c) in f.terms() {
            let key = m.only(Block::X);
            let hat_m = {
                let mut cache = self.cache.lock().unwrap();
                cache.entry(key).or_insert_with(|| unhat_t_inverse(&Poly::term(ctx, key, GaussRat::ONE), &self.xhat)).clone()
            };
            let coeff = Poly::term(ctx, m.without(Block::X), c.clone());
            for (w, cw) in hat_m.terms() {
                out.add(w.clone(), &coeff * cw);
            }
        }
        out
    }

    pub fn star(&self, f: &XPolynomial, g: &XPolynomial) -> XPolynomial {
        self.hat(f).act(&self.xhat, g)
    }
}

/// Path B: coefficient extraction from the plane-wave kernel,
/// `x^α ⋆ x^β = c_α c_β [k^α q^β] e^{iD(k,q)x}` with
/// `c_α = Π_μ α_μ! (−iη_μμ)^{α_μ}`.
pub struct StarKernel {
    ctx: Ctx,
    max_f: usize,
    max_g: usize,
    coeffs: FxHashMap<(Mono, Mono), Poly>,
}

impl StarKernel {
    /// Expands the kernel for factors of degree at most `max_f` and `max_g`.
    pub fn new(d: &MomentumMap, max_f: usize, max_g: usize) -> Self {
        let ctx = d.ctx();
        let mut e = Poly::zero(ctx);
        for (mu, dm) in d.comps().iter().enumerate() {
            let xm = Poly::var(ctx, Block::X, mu).scale(&GaussRat::imag(Rat::int(eta(mu))));
            e.add_assign_ref(&(&xm * dm));
        }
        let keep = move |m: &Mono| m.block_degree(Block::K) <= max_f && m.block_degree(Block::Q) <= max_g;
        let mut acc = Poly::one(ctx);
        let mut term = Poly::one(ctx);
        for j in 1..=(max_f + max_g) {
            term = term.mul_filtered(&e, &keep).scale(&GaussRat::frac(1, j as i64));
            if term.is_zero() {
                break;
            }
            acc.add_assign_ref(&term);
        }
        let mut coeffs: FxHashMap<(Mono, Mono), Poly> = FxHashMap::default();
        for (m, c) in acc.terms() {
            let key = (m.only(Block::K), m.only(Block::Q));
            let rest = m.without(Block::K).without(Block::Q);
            coeffs.entry(key).or_insert_with(|| Poly::zero(ctx)).add_term(rest, c.clone());
        }
        StarKernel { ctx, max_f, max_g, coeffs }
    }

    fn normalization(m: &Mono, b: Block) -> GaussRat {
        let mut c = GaussRat::ONE;
        for mu in 0..MAX_DIM_USED {
            let e = m.get(b.var(mu)) as usize;
            if e > 0 {
                let unit = GaussRat::imag(Rat::int(-eta(mu)));
                c = &c * &unit.pow(e as u32).scale(&crate::algebra::series::factorial(e));
            }
        }
        c
    }

    fn monomial_star(&self, alpha: &Mono, beta: &Mono) -> Poly {
        let ka = alpha.moved(Block::X, Block::K);
        let qb = beta.moved(Block::X, Block::Q);
        match self.coeffs.get(&(ka, qb)) {
            Some(p) => {
                let c = &Self::normalization(&ka, Block::K) * &Self::normalization(&qb, Block::Q);
                p.scale(&c)
            }
            None => Poly::zero(self.ctx),
        }
    }

    /// `f ⋆ g`, or `None` when a factor exceeds the expanded degrees.
    pub fn star(&self, f: &XPolynomial, g: &XPolynomial) -> Option<XPolynomial> {
        if f.max_block_degree(Block::X) > self.max_f || g.max_block_degree(Block::X) > self.max_g {
            return None;
        }
        let mut r = Poly::zero(self.ctx);
        for (mf, cf) in f.terms() {
            for (mg, cg) in g.terms() {
                let coeff = &Poly::term(self.ctx, mf.without(Block::X), cf.clone()) * &Poly::term(self.ctx, mg.without(Block::X), cg.clone());
                if coeff.is_zero() {
                    continue;
                }
                r.add_assign_ref(&(&coeff * &self.monomial_star(&mf.only(Block::X), &mg.only(Block::X))));
            }
        }
        Some(r)
    }
}

const MAX_DIM_USED: usize = crate::algebra::MAX_DIM;

/// All monomials `x^α` with `1 ≤ |α| ≤ max_degree` (and `1` when
/// `with_one`), in graded order.
pub fn monomials(ctx: Ctx, max_degree: usize, with_one: bool) -> Vec<Poly> {
    let mut out = Vec::new();
    if with_one {
        out.push(Poly::one(ctx));
    }
    let mut layer = vec![(Poly::one(ctx), 0usize)];
    for _ in 0..max_degree {
        let mut next = Vec::new();
        for (p, last) in &layer {
            for mu in *last..ctx.dim {
                next.push((p * &Poly::var(ctx, Block::X, mu), mu));
            }
        }
        out.extend(next.iter().map(|(p, _)| p.clone()));
        layer = next;
    }
    out
}

fn label(p: &Poly) -> String {
    p.to_string()
}

/// Paths A and B on all pairs of monomials up to `degree`.
pub fn check_paths_agree(r: &Realization, data: &MomentumData, degree: usize) -> Report {
    let ctx = r.ctx();
    let sp = StarProduct::new(r);
    let kernel = StarKernel::new(&data.d, degree, degree);
    let mons = monomials(ctx, degree, true);
    let mut rep = Report::new();
    let mut worst: Option<(String, Poly)> = None;
    let mut count = 0;
    for f in &mons {
        for g in &mons {
            let res = &sp.star(f, g) - &kernel.star(f, g).expect("within kernel degree");
            count += 1;
            if !res.is_zero() && worst.is_none() {
                worst = Some((format!("{} * {}", label(f), label(g)), res));
            }
        }
    }
    rep.push(match worst {
        None => Check::flag(format!("path A = path B on {count} monomial pairs, degree <= {degree}"), true, "0"),
        Some((w, res)) => Check::residual(format!("path A = path B ({w})"), res, false),
    });
    rep
}

/// Unit law and associativity on monomial triples up to `degree`.
pub fn check_associativity(sp: &StarProduct, degree: usize) -> Report {
    let ctx = sp.ctx();
    let mons = monomials(ctx, degree, false);
    let mut rep = Report::new();
    let one = Poly::one(ctx);
    let unit_ok = mons.iter().all(|f| sp.star(&one, f) == *f && sp.star(f, &one) == *f);
    rep.push(Check::flag("1 * f = f * 1 = f", unit_ok, if unit_ok { "0" } else { "unit law violated" }));
    let pairs: FxHashMap<(usize, usize), Poly> = {
        let mut m = FxHashMap::default();
        for (i, f) in mons.iter().enumerate() {
            for (j, g) in mons.iter().enumerate() {
                m.insert((i, j), sp.star(f, g));
            }
        }
        m
    };
    let mut bad = None;
    let mut count = 0;
    'outer: for i in 0..mons.len() {
        for j in 0..mons.len() {
            for k in 0..mons.len() {
                let lhs = sp.star(&pairs[&(i, j)], &mons[k]);
                let rhs = sp.star(&mons[i], &pairs[&(j, k)]);
                count += 1;
                if lhs != rhs {
                    bad = Some((format!("({})({})({})", mons[i], mons[j], mons[k]), &lhs - &rhs));
                    break 'outer;
                }
            }
        }
    }
    rep.push(match bad {
        None => Check::flag(format!("(f*g)*h = f*(g*h) on {count} monomial triples, degree <= {degree}"), true, "0"),
        Some((w, res)) => Check::residual(format!("associativity {w}"), res, false),
    });
    rep
}

/// `D(D(k,q),w) = D(k,D(q,w))`.
pub fn check_kernel_associativity(d: &MomentumMap) -> Check {
    let ctx = d.ctx();
    let k = MomentumMap::symbols(ctx, 0);
    let q = MomentumMap::symbols(ctx, 1);
    let w = MomentumMap::symbols(ctx, 2);
    let dkq = d.compose(&[k.as_slice(), q.as_slice()]);
    let dqw = d.compose(&[q.as_slice(), w.as_slice()]);
    let lhs = d.compose(&[dkq.comps(), w.as_slice()]);
    let rhs = d.compose(&[k.as_slice(), dqw.comps()]);
    let res = lhs.sub(&rhs);
    Check::residual("D(D(k,q),w) = D(k,D(q,w))", &res, res.is_zero())
}

/// `T_v f = f(x + v)`.
pub fn translate(f: &XPolynomial) -> XPolynomial {
    let ctx = f.ctx();
    let subs: Vec<(usize, Poly)> =
        (0..ctx.dim).map(|mu| (Block::X.var(mu), &Poly::var(ctx, Block::X, mu) + &Poly::var(ctx, Block::V, mu))).collect();
    f.substitute(&subs)
}

/// `T_v u T_v⁻¹` for a normal-ordered operator: `x ↦ x + v`.
pub fn translate_op(u: &WeylOp) -> WeylOp {
    WeylOp::from_poly(translate(u.poly()))
}

/// Translation checks on monomial pairs up to `degree`: the substitution
/// form `T_v(f) ⋆ T_v(g) = T_v(f ⋆ g)` and the conjugation form, in which
/// `T_v f̂ T_v⁻¹ = f̂(x̂ + vφ)` replaces `T⁻¹(T_v f)`.
pub fn check_translation(r: &Realization, sp: &StarProduct, degree: usize) -> Report {
    let ctx = r.ctx();
    let mut rep = Report::new();
    let xhat = sp.xhat();
    let shifted: Vec<WeylOp> = xhat.iter().map(translate_op).collect();
    let mut conj_ok = true;
    let mut conj_res = None;
    for mu in 0..ctx.dim {
        let mut expect = xhat[mu].poly().clone();
        for al in 0..ctx.dim {
            expect.add_assign_ref(&(&Poly::var(ctx, Block::V, al).scale_int(eta(al)) * &r.phi()[al][mu]));
        }
        let res = shifted[mu].poly() - &expect;
        if !res.is_zero() {
            conj_ok = false;
            conj_res.get_or_insert(res);
        }
    }
    rep.push(match conj_res {
        None => Check::flag("T_v x̂_μ T_v⁻¹ = x̂_μ + v^α φ_αμ", conj_ok, "0"),
        Some(res) => Check::residual("T_v x̂_μ T_v⁻¹ = x̂_μ + v^α φ_αμ", res, false),
    });
    let mons = monomials(ctx, degree, true);
    let mut subst_bad = None;
    let mut conj_bad = None;
    for f in &mons {
        for g in &mons {
            let target = translate(&sp.star(f, g));
            if subst_bad.is_none() {
                let res = &sp.star(&translate(f), &translate(g)) - &target;
                if !res.is_zero() {
                    subst_bad = Some((format!("f = {f}, g = {g}"), res));
                }
            }
            if conj_bad.is_none() {
                let hf = sp.hat(f);
                let hg = sp.hat(g);
                let res = &hf.act(&shifted, &hg.act(&shifted, &Poly::one(ctx))) - &target;
                if !res.is_zero() {
                    conj_bad = Some((format!("f = {f}, g = {g}"), res));
                }
            }
        }
    }
    rep.push(match conj_bad {
        None => Check::flag(format!("T_v(f̂ĝ)T_v⁻¹ ▷ 1 = T_v(f * g), degree <= {degree}"), true, "0"),
        Some((w, res)) => Check::residual(format!("T_v(f̂ĝ)T_v⁻¹ ▷ 1 = T_v(f * g) ({w})"), res, false),
    });
    rep.push(match subst_bad {
        None => Check::flag(format!("T_v(f) * T_v(g) = T_v(f * g), degree <= {degree}"), true, "0"),
        Some((w, res)) => Check::residual(format!("T_v(f) * T_v(g) = T_v(f * g) ({w})"), res, false),
    });
    rep
}

fn weyl_check(name: &str, lhs: &WeylOp, rhs: &WeylOp) -> Check {
    let res = lhs - rhs;
    Check::residual(name, &res, res.is_zero())
}

fn words(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out.into_iter().flat_map(|w| (0..n).map(move |mu| [w.clone(), vec![mu]].concat())).collect();
    }
    out
}

fn word_op(ctx: Ctx, xhat: &[WeylOp], w: &[usize]) -> WeylOp {
    w.iter().fold(WeylOp::one(ctx), |acc, &mu| &acc * &xhat[mu])
}

/// The commutation identities for `x̂_μ` past a word in `x̂`, and the
/// Leibniz rule for `x̂_μ` on products, with upper index `x̂^α = η^αα x̂_α`.
pub fn check_xhat_leibniz(r: &Realization, ops: &DerivedOps, sp: &StarProduct, max_word: usize, degree: usize) -> Report {
    let ctx = r.ctx();
    let n = ctx.dim;
    let xhat = sp.xhat();
    let mut rep = Report::new();
    for mu in 0..n {
        for nu in 0..n {
            let lhs = &xhat[mu] * &xhat[nu];
            let rhs = &WeylOp::scalar(Poly::a(ctx, mu)).scale(&GaussRat::I) * &xhat[nu];
            let rhs = &rhs + &(&(&(&ops.z_inv * &xhat[nu]) * &ops.z) * &xhat[mu]);
            rep.push(weyl_check(&format!("x̂{mu}x̂{nu} = ia{mu}x̂{nu} + Z⁻¹x̂{nu}Zx̂{mu}"), &lhs, &rhs));
        }
    }
    let ia = |mu: usize| WeylOp::scalar(Poly::a(ctx, mu).mul_i());
    let mut induction_ok = (true, true);
    let mut first_bad: Vec<Check> = Vec::new();
    for len in 1..=max_word {
        for w in words(n, len) {
            let word = word_op(ctx, xhat, &w);
            for mu in 0..n {
                let lhs = &xhat[mu] * &word;
                let lead = &(&(&ops.z_inv * &word) * &ops.z) * &xhat[mu];
                let mut sum = WeylOp::zero(ctx);
                for s in 0..len {
                    let head = word_op(ctx, xhat, &w[..s]);
                    let tail = word_op(ctx, xhat, &w[s..]);
                    sum = &sum + &(&(&(&ops.z_inv * &head) * &ops.z) * &tail);
                }
                let b43 = &lead + &(&ia(mu) * &sum);
                if lhs != b43 && induction_ok.0 {
                    induction_ok.0 = false;
                    first_bad.push(weyl_check(&format!("x̂{mu} past {w:?}, sum form"), &lhs, &b43));
                }
                let hw = HatPoly::word(ctx, w.clone());
                let mut corr = WeylOp::zero(ctx);
                for al in 0..n {
                    let acted = ops.p_left[al].act_on_poly(&hw.act(xhat, &Poly::one(ctx)));
                    let back = sp.hat(&acted).to_weyl(xhat);
                    corr = &corr + &(&back * &xhat[al]).scale(&GaussRat::int(eta(al)));
                }
                let b46 = &lead - &(&WeylOp::scalar(Poly::a(ctx, mu)) * &corr);
                if lhs != b46 && induction_ok.1 {
                    induction_ok.1 = false;
                    first_bad.push(weyl_check(&format!("x̂{mu} past {w:?}, p^L form"), &lhs, &b46));
                }
            }
        }
    }
    if induction_ok.0 {
        rep.push(Check::flag(format!("x̂_μ x̂_w = Z⁻¹x̂_wZx̂_μ + ia_μ Σ_s Z⁻¹x̂_{{w<s}}Zx̂_{{w>=s}}, words <= {max_word}"), true, "0"));
    }
    if induction_ok.1 {
        rep.push(Check::flag(format!("x̂_μ x̂_w = Z⁻¹x̂_wZx̂_μ − a_μ(p^L_α ▶ x̂_w)x̂^α, words <= {max_word}"), true, "0"));
    }
    for c in first_bad {
        rep.push(c);
    }
    let mons = monomials(ctx, degree, true);
    let mut bad = None;
    let mut count = 0;
    'outer: for f in &mons {
        for g in &mons {
            for mu in 0..n {
                let lhs = xhat[mu].act_on_poly(&sp.star(f, g));
                let mut rhs = sp.star(&ops.z_inv.act_on_poly(f), &xhat[mu].act_on_poly(g));
                for al in 0..n {
                    let t = sp.star(&ops.p_left[al].act_on_poly(f), &xhat[al].act_on_poly(g));
                    rhs.sub_assign_ref(&(&Poly::a(ctx, mu) * &t).scale_int(eta(al)));
                }
                count += 1;
                if lhs != rhs {
                    bad = Some((format!("μ = {mu}, f = {f}, g = {g}"), &lhs - &rhs));
                    break 'outer;
                }
            }
        }
    }
    rep.push(match bad {
        None => Check::flag(format!("x̂_μ ▶ (f̂ĝ) = (Z⁻¹ ▶ f̂)(x̂_μ ▶ ĝ) − a_μ(p^L_α ▶ f̂)(x̂^α ▶ ĝ), {count} cases"), true, "0"),
        Some((w, res)) => Check::residual(format!("Leibniz rule for x̂ ({w})"), res, false),
    });
    rep
}

/// `∂_μ(f ⋆ g) = m_⋆(Δ∂_μ(f ⊗ g))` on monomial pairs.
pub fn check_compatibility(sp: &StarProduct, delta: &[Poly], degree: usize) -> Report {
    let ctx = sp.ctx();
    let mons = monomials(ctx, degree, true);
    let mut bad = None;
    for (mu, dm) in delta.iter().enumerate() {
        let mut split: FxHashMap<(Mono, Mono), Poly> = FxHashMap::default();
        for (m, c) in dm.terms() {
            let key = (m.only(Block::K).moved(Block::K, Block::D), m.only(Block::Q).moved(Block::Q, Block::D));
            split.entry(key).or_insert_with(|| Poly::zero(ctx)).add_term(m.without(Block::K).without(Block::Q), c.clone());
        }
        for f in &mons {
            for g in &mons {
                let lhs = WeylOp::d(ctx, mu).act_on_poly(&sp.star(f, g));
                let mut rhs = Poly::zero(ctx);
                for ((ml, mr), c) in &split {
                    let lf = WeylOp::from_poly(Poly::term(ctx, *ml, GaussRat::ONE)).act_on_poly(f);
                    let rg = WeylOp::from_poly(Poly::term(ctx, *mr, GaussRat::ONE)).act_on_poly(g);
                    if lf.is_zero() || rg.is_zero() {
                        continue;
                    }
                    rhs.add_assign_ref(&(c * &sp.star(&lf, &rg)));
                }
                if lhs != rhs && bad.is_none() {
                    bad = Some((format!("μ = {mu}, f = {f}, g = {g}"), &lhs - &rhs));
                }
            }
        }
    }
    let mut rep = Report::new();
    rep.push(match bad {
        None => Check::flag(format!("∂_μ(f * g) = m(Δ∂_μ ▷ (f ⊗ g)), degree <= {degree}"), true, "0"),
        Some((w, res)) => Check::residual(format!("∂_μ(f * g) = m(Δ∂_μ ▷ (f ⊗ g)) ({w})"), res, false),
    });
    rep
}

/// `φ` from an addition law: `h_αμ(q) = η_μμ ∂D_α/∂k_μ|_{k=0}` and
/// `φ(∂) = h(−i∂)`.
pub fn phi_from_kernel(d: &MomentumMap) -> Vec<Vec<Poly>> {
    let ctx = d.ctx();
    let n = ctx.dim;
    let minus_i = |e: usize| GaussRat::i_pow(-(e as i64));
    (0..n)
        .map(|al| {
            (0..n)
                .map(|mu| {
                    let h = d.comp(al).derivative(Block::K.var(mu)).zero_block(Block::K).scale_int(eta(mu));
                    h.scale_by_block_degree(Block::Q, minus_i).move_block(Block::Q, Block::D)
                })
                .collect()
        })
        .collect()
}

/// A realization together with its dual and the dual generators `ŷ_μ`.
#[derive(Clone, Debug)]
pub struct DualPair {
    pub realization: Realization,
    pub dual: Realization,
    pub yhat: Vec<WeylOp>,
}

/// The dual realization, rebuilt from the flipped kernel `D̃(k,q) = D(q,k)`.
/// Its generators `ŷ_μ` close on the algebra with `a ↦ −a`, so the dual of
/// the left covariant realization is the right covariant one at `−a`.
pub fn dual_realization(r: &Realization, data: &MomentumData) -> Result<DualPair> {
    let flipped = data.dual_d();
    let phi = phi_from_kernel(&flipped);
    let dual = Realization::explicit(&format!("dual of {}", r.name()), r.ctx(), phi)?;
    let yhat = dual.xhat();
    Ok(DualPair { realization: r.clone(), dual, yhat })
}

/// `a ↦ −a` on every coefficient.
pub fn reflect_a(p: &Poly) -> Poly {
    p.map_terms(|m, c| Some((*m, if m.a_degree() % 2 == 1 { -c } else { c.clone() })))
}

/// Catalog realization whose φ at `−a` is the dual of `name`.
pub fn dual_partner(name: &str) -> Option<&'static str> {
    match name {
        "left" => Some("right"),
        "right" => Some("left"),
        "symmetric" => Some("symmetric"),
        _ => None,
    }
}

/// `φ̃ = φ_partner(a → −a)` for catalog realizations with a known partner.
pub fn check_dual_partner(pair: &DualPair) -> Result<Option<Check>> {
    let Some(partner) = dual_partner(pair.realization.name()) else { return Ok(None) };
    let other = crate::realizations::catalog(partner, pair.realization.ctx())?;
    let reflected: Vec<Vec<Poly>> = other.phi().iter().map(|row| row.iter().map(reflect_a).collect()).collect();
    let ok = pair.dual.phi() == reflected.as_slice();
    let name = format!("dual of {} = {partner} with a → −a", pair.realization.name());
    Ok(Some(Check::flag(name, ok, if ok { "0" } else { "φ̃ differs" })))
}

/// The operator checks of a dual pair and the product identities on
/// monomial pairs up to `degree`.
pub fn check_duality(pair: &DualPair, data: &MomentumData, ops: &DerivedOps, degree: usize) -> Result<Report> {
    let r = &pair.realization;
    let ctx = r.ctx();
    let n = ctx.dim;
    let xhat = r.xhat();
    let yhat = &pair.yhat;
    let mut rep = Report::new();

    let dual_data = MomentumData::compute(&pair.dual);
    let res = dual_data.d.sub(&data.dual_d());
    rep.push(Check::residual("D̃(k,q) = D(q,k) through φ̃", &res, res.is_zero()));
    let double = phi_from_kernel(&swap_slots(&dual_data.d));
    let double_ok = double.as_slice() == r.phi();
    rep.push(Check::flag("dual of the dual = φ", double_ok, if double_ok { "0" } else { "φ not recovered" }));

    let mut comm_bad = None;
    let mut e10_bad = None;
    for mu in 0..n {
        for nu in 0..n {
            let c = yhat[mu].commutator(&xhat[nu]);
            if !c.is_zero() && comm_bad.is_none() {
                comm_bad = Some(c);
            }
            let lhs = yhat[mu].commutator(&yhat[nu]);
            let rhs = (&(&WeylOp::scalar(Poly::a(ctx, mu)) * &yhat[nu]) - &(&WeylOp::scalar(Poly::a(ctx, nu)) * &yhat[mu])).scale(&GaussRat::imag(Rat::int(-1)));
            let res = &lhs - &rhs;
            if !res.is_zero() && e10_bad.is_none() {
                e10_bad = Some(res);
            }
        }
    }
    rep.push(match comm_bad {
        None => Check::flag("[ŷ_μ, x̂_ν] = 0", true, "0"),
        Some(c) => Check::residual("[ŷ_μ, x̂_ν] = 0", c, false),
    });
    rep.push(match e10_bad {
        None => Check::flag("[ŷ_μ, ŷ_ν] = −i(a_μŷ_ν − a_νŷ_μ)", true, "0"),
        Some(c) => Check::residual("[ŷ_μ, ŷ_ν] = −i(a_μŷ_ν − a_νŷ_μ)", c, false),
    });

    // ŷ_μ = (x̂_μ − ia_μ(x̂∂^L))Z
    let mut xdl = WeylOp::zero(ctx);
    for al in 0..n {
        xdl = &xdl + &(&xhat[al] * &ops.d_left[al]).scale(&GaussRat::int(eta(al)));
    }
    let mut general_bad = None;
    for mu in 0..n {
        let inner = &xhat[mu] - &(&WeylOp::scalar(Poly::a(ctx, mu).mul_i()) * &xdl);
        let res = &yhat[mu] - &(&inner * &ops.z);
        if !res.is_zero() && general_bad.is_none() {
            general_bad = Some(res);
        }
    }
    rep.push(match general_bad {
        None => Check::flag("ŷ_μ = (x̂_μ − ia_μ(x̂∂^L))Z", true, "0"),
        Some(c) => Check::residual("ŷ_μ = (x̂_μ − ia_μ(x̂∂^L))Z", c, false),
    });

    // Δ̃ = (S ⊗ S)∘Δ∘S⁻¹ at the kernel level
    // S = −T with T = id + O(a), so S⁻¹(k) = T⁻¹(−k)
    let t_inv = k_inverse(&data.s.neg());
    let minus_k: Vec<Poly> = MomentumMap::symbols(ctx, 0).iter().map(|c| -c).collect();
    let s_inv = t_inv.compose(&[minus_k.as_slice()]);
    let sq: Vec<Poly> = data.s.comps().iter().map(|c| c.move_block(Block::K, Block::Q)).collect();
    let inner = data.d.compose(&[data.s.comps(), sq.as_slice()]);
    let flipped = s_inv.compose(&[inner.comps()]);
    let res = flipped.sub(&data.dual_d());
    rep.push(Check::residual("S⁻¹(D(S(k),S(q))) = D(q,k)", &res, res.is_zero()));

    let sp = StarProduct::from_xhat(xhat.clone());
    let sp_dual = StarProduct::from_xhat(yhat.clone());
    let mons = monomials(ctx, degree, true);
    let mut flip_bad = None;
    let mut action_bad = None;
    for f in &mons {
        for g in &mons {
            let res = &sp.star(f, g) - &sp_dual.star(g, f);
            if !res.is_zero() && flip_bad.is_none() {
                flip_bad = Some((format!("f = {f}, g = {g}"), res));
            }
        }
        for mu in 0..n {
            let xm = Poly::var(ctx, Block::X, mu);
            let a1 = xhat[mu].act_on_poly(f);
            let forms = [
                (a1.clone(), sp.star(&xm, f)),
                (a1, sp_dual.star(f, &xm)),
                (yhat[mu].act_on_poly(f), sp.star(f, &xm)),
                (sp.star(f, &xm), sp_dual.star(&xm, f)),
            ];
            for (lhs, rhs) in forms {
                if lhs != rhs && action_bad.is_none() {
                    action_bad = Some((format!("μ = {mu}, f = {f}"), &lhs - &rhs));
                }
            }
        }
    }
    rep.push(match flip_bad {
        None => Check::flag(format!("f *_φ g = g *_φ̃ f, degree <= {degree}"), true, "0"),
        Some((w, res)) => Check::residual(format!("f *_φ g = g *_φ̃ f ({w})"), res, false),
    });
    rep.push(match action_bad {
        None => Check::flag(format!("x̂_μ ▷ f = x_μ *_φ f = f *_φ̃ x_μ and ŷ_μ ▷ f = f *_φ x_μ = x_μ *_φ̃ f, degree <= {degree}"), true, "0"),
        Some((w, res)) => Check::residual(format!("left/right multiplication operators ({w})"), res, false),
    });
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realizations::catalog;

    fn x(ctx: Ctx, mu: usize) -> Poly {
        Poly::var(ctx, Block::X, mu)
    }

    #[test]
    fn left_and_right_quadratic_products() {
        let ctx = Ctx::new(2, 2).unwrap();
        let left = StarProduct::new(&catalog("left", ctx).unwrap());
        let right = StarProduct::new(&catalog("right", ctx).unwrap());
        for mu in 0..2 {
            for nu in 0..2 {
                let xx = &x(ctx, mu) * &x(ctx, nu);
                let l = &xx - &(&x(ctx, mu) * &Poly::a(ctx, nu)).mul_i();
                let r = &xx + &(&x(ctx, nu) * &Poly::a(ctx, mu)).mul_i();
                assert_eq!(left.star(&x(ctx, mu), &x(ctx, nu)), l);
                assert_eq!(right.star(&x(ctx, mu), &x(ctx, nu)), r);
            }
        }
    }

    #[test]
    fn paths_agree_and_associative() {
        let ctx = Ctx::new(2, 2).unwrap();
        for name in crate::realizations::CATALOG {
            let r = catalog(name, ctx).unwrap();
            let data = MomentumData::compute(&r);
            assert!(check_paths_agree(&r, &data, 2).passed(), "{name}");
            let sp = StarProduct::new(&r);
            assert!(check_associativity(&sp, 2).passed(), "{name}");
            assert!(check_kernel_associativity(&data.d).residual_zero, "{name}");
        }
    }

    #[test]
    fn leibniz_rule_for_xhat() {
        let ctx = Ctx::new(2, 2).unwrap();
        for name in ["natural", "left", "symmetric"] {
            let r = catalog(name, ctx).unwrap();
            let ops = DerivedOps::compute(&r).unwrap();
            let sp = StarProduct::new(&r);
            let rep = check_xhat_leibniz(&r, &ops, &sp, 2, 1);
            assert!(rep.passed(), "{name}\n{rep}");
        }
    }

    #[test]
    fn translation_forms() {
        let ctx = Ctx::new(2, 2).unwrap();
        let r = catalog("left", ctx).unwrap();
        let sp = StarProduct::new(&r);
        let rep = check_translation(&r, &sp, 1);
        println!("{rep}");
        assert!(rep.checks[0].residual_zero);
        assert!(rep.checks[1].residual_zero);
    }

    #[test]
    fn duality() {
        let ctx = Ctx::new(2, 2).unwrap();
        let left = catalog("left", ctx).unwrap();
        let right = catalog("right", ctx).unwrap();
        let data = MomentumData::compute(&left);
        let pair = dual_realization(&left, &data).unwrap();
        let right_reflected: Vec<Vec<Poly>> = right.phi().iter().map(|row| row.iter().map(reflect_a).collect()).collect();
        assert_eq!(pair.dual.phi(), right_reflected.as_slice());
        let ops = DerivedOps::compute(&left).unwrap();
        let rep = check_duality(&pair, &data, &ops, 2).unwrap();
        assert!(rep.passed(), "{rep}");
        let sym = catalog("symmetric", ctx).unwrap();
        let sdata = MomentumData::compute(&sym);
        let spair = dual_realization(&sym, &sdata).unwrap();
        let reflected: Vec<Vec<Poly>> = sym.phi().iter().map(|row| row.iter().map(reflect_a).collect()).collect();
        assert_eq!(spair.dual.phi(), reflected.as_slice());
    }
}
