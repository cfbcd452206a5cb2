//! Normal-ordered Weyl algebra, the action ▷ on polynomials and plane waves,
//! and the bijection `T(f̂) = f̂ ▷ 1` with its inverse.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rustc_hash::FxHashMap;

use crate::algebra::poly::{default_name, eta};
use crate::algebra::{Block, Ctx, GaussRat, Mono, Poly, Rat, MAX_DIM};
use crate::error::Result;

/// Polynomial in `x` (with parameter coefficients); elements of the
/// commutative function space the operators act on.
pub type XPolynomial = Poly;

/// Normal-ordered element `Σ c · x^α ∂^β` of the Weyl algebra, stored as a
/// polynomial in the `x` and `d` blocks. All other symbols are central.
#[derive(Clone, PartialEq, Eq)]
pub struct WeylOp(Poly);

type Expansion = Vec<(Mono, Rat)>;

impl WeylOp {
    /// Interprets a polynomial as the normal-ordered operator with the same
    /// exponents.
    pub fn from_poly(p: Poly) -> Self {
        WeylOp(p)
    }

    pub fn zero(ctx: Ctx) -> Self {
        WeylOp(Poly::zero(ctx))
    }

    pub fn one(ctx: Ctx) -> Self {
        WeylOp(Poly::one(ctx))
    }

    pub fn x(ctx: Ctx, mu: usize) -> Self {
        WeylOp(Poly::var(ctx, Block::X, mu))
    }

    pub fn d(ctx: Ctx, mu: usize) -> Self {
        WeylOp(Poly::var(ctx, Block::D, mu))
    }

    /// `p_μ = −i∂_μ`.
    pub fn p(ctx: Ctx, mu: usize) -> Self {
        WeylOp(Poly::var(ctx, Block::D, mu).scale(&GaussRat::imag(Rat::int(-1))))
    }

    pub fn scalar(p: Poly) -> Self {
        debug_assert!(!p.contains_block(Block::X) && !p.contains_block(Block::D));
        WeylOp(p)
    }

    pub fn poly(&self) -> &Poly {
        &self.0
    }

    pub fn into_poly(self) -> Poly {
        self.0
    }

    pub fn ctx(&self) -> Ctx {
        self.0.ctx()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// True when the operator is a function of ∂ only.
    pub fn is_d_only(&self) -> bool {
        !self.0.contains_block(Block::X)
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        WeylOp(self.0.scale(c))
    }

    /// Multiplication by a central (x- and ∂-free) polynomial.
    pub fn scale_poly(&self, p: &Poly) -> Self {
        WeylOp(&self.0 * p)
    }

    pub fn checked_mul(&self, o: &WeylOp) -> Result<WeylOp> {
        self.ctx().check(o.ctx())?;
        Ok(self * o)
    }

    pub fn commutator(&self, o: &WeylOp) -> WeylOp {
        &(self * o) - &(o * self)
    }

    pub fn pow(&self, e: u32) -> WeylOp {
        let mut acc = WeylOp::one(self.ctx());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn mul_impl(&self, o: &WeylOp) -> WeylOp {
        let ctx = self.ctx();
        debug_assert_eq!(ctx, o.ctx());
        let order = ctx.order;
        let mut cache: FxHashMap<([u8; MAX_DIM], [u8; MAX_DIM]), Expansion> = FxHashMap::default();
        let mut lhs: Vec<Vec<(&Mono, &GaussRat)>> = vec![Vec::new(); order + 1];
        for (m, c) in self.0.terms() {
            lhs[m.a_degree()].push((m, c));
        }
        let mut rhs: Vec<Vec<(&Mono, &GaussRat)>> = vec![Vec::new(); order + 1];
        for (m, c) in o.0.terms() {
            rhs[m.a_degree()].push((m, c));
        }
        let mut r = Poly::zero(ctx);
        for (da, ta) in lhs.iter().enumerate() {
            for tb in rhs.iter().take(order + 1 - da) {
                for (m1, c1) in ta {
                    let beta: [u8; MAX_DIM] = m1.block(Block::D).try_into().unwrap();
                    for (m2, c2) in tb {
                        let gamma: [u8; MAX_DIM] = m2.block(Block::X).try_into().unwrap();
                        let base = m1.mul(m2);
                        let c = *c1 * *c2;
                        let exp = cache.entry((beta, gamma)).or_insert_with(|| reorder(&beta, &gamma));
                        for (delta, k) in exp.iter() {
                            let mut m = base;
                            for v in 0..m.0.len() {
                                m.0[v] -= delta.0[v];
                            }
                            r.add_term(m, c.scale(k));
                        }
                    }
                }
            }
        }
        WeylOp(r)
    }

    /// `u ▷ f` for a polynomial `f` in `x`.
    pub fn act_on_poly(&self, f: &XPolynomial) -> XPolynomial {
        let ctx = self.ctx();
        let mut r = Poly::zero(ctx);
        for (mu_, cu) in self.0.terms() {
            let beta = mu_.block(Block::D);
            let xpart = mu_.without(Block::D);
            for (mf, cf) in f.terms() {
                if mu_.a_degree() + mf.a_degree() > ctx.order {
                    continue;
                }
                let mut coeff = cu * cf;
                let mut m = xpart.mul(mf);
                let mut ok = true;
                for (mu, &b) in beta.iter().enumerate() {
                    if b == 0 {
                        continue;
                    }
                    let c = mf.get(Block::X.var(mu));
                    if c < b {
                        ok = false;
                        break;
                    }
                    let falling: i64 = ((c - b + 1)..=c).map(|v| v as i64).product();
                    let sign = if eta(mu) < 0 && b % 2 == 1 { -1 } else { 1 };
                    coeff = coeff.scale(&Rat::int(sign * falling));
                    m.0[Block::X.var(mu)] -= b;
                }
                if ok {
                    r.add_term(m, coeff);
                }
            }
        }
        r
    }

    /// Conjugation by a plane wave: `e^{−ikx} u e^{ikx}`, i.e. `∂ ↦ ∂ + ik`.
    pub fn shift_by_momentum(&self, k: Block) -> WeylOp {
        let ctx = self.ctx();
        let subs: Vec<(usize, Poly)> = (0..ctx.dim)
            .map(|mu| {
                let v = &Poly::var(ctx, Block::D, mu) + &Poly::var(ctx, k, mu).mul_i();
                (Block::D.var(mu), v)
            })
            .collect();
        WeylOp(self.0.substitute(&subs))
    }

    pub fn act_on_planewave(&self, w: &PlaneWaveState) -> PlaneWaveState {
        PlaneWaveState { momentum: w.momentum, prefactor: self.shift_by_momentum(w.momentum).act_on_poly(&w.prefactor) }
    }

    /// For a ∂-only operator, the momentum function obtained by `∂ ↦ ik`.
    pub fn symbol_at(&self, k: Block) -> Poly {
        debug_assert!(self.is_d_only());
        self.0.scale_by_block_degree(Block::D, |d| GaussRat::i_pow(d as i64)).move_block(Block::D, k)
    }

    /// Inverse of [`WeylOp::symbol_at`]: the ∂-operator with symbol `f(k)`.
    pub fn from_symbol(f: &Poly, k: Block) -> WeylOp {
        WeylOp(f.move_block(k, Block::D).scale_by_block_degree(Block::D, |d| GaussRat::i_pow(-(d as i64))))
    }

    pub fn with_order(&self, order: usize) -> WeylOp {
        WeylOp(self.0.with_order(order))
    }
}

/// `∂^β x^γ = Σ_j Π_μ C(β_μ,j_μ) C(γ_μ,j_μ) j_μ! η_μμ^{j_μ} x^{γ−j} ∂^{β−j}`,
/// returned as (exponents to remove, coefficient).
fn reorder(beta: &[u8; MAX_DIM], gamma: &[u8; MAX_DIM]) -> Expansion {
    let mut out: Expansion = vec![(Mono::one(), Rat::ONE)];
    for mu in 0..MAX_DIM {
        let (b, c) = (beta[mu] as i64, gamma[mu] as i64);
        if b == 0 || c == 0 {
            continue;
        }
        let mut next = Vec::new();
        for (delta, k) in &out {
            for j in 0..=b.min(c) {
                let w = binom(b, j) * binom(c, j) * (1..=j).product::<i64>() * if eta(mu) < 0 && j % 2 == 1 { -1 } else { 1 };
                let mut d = *delta;
                d.0[Block::X.var(mu)] += j as u8;
                d.0[Block::D.var(mu)] += j as u8;
                next.push((d, k * &Rat::int(w)));
            }
        }
        out = next;
    }
    out
}

fn binom(n: i64, k: i64) -> i64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

impl<'a> Mul<&'a WeylOp> for &'a WeylOp {
    type Output = WeylOp;
    fn mul(self, o: &'a WeylOp) -> WeylOp {
        self.mul_impl(o)
    }
}

impl Mul for WeylOp {
    type Output = WeylOp;
    fn mul(self, o: WeylOp) -> WeylOp {
        self.mul_impl(&o)
    }
}

impl<'a> Add<&'a WeylOp> for &'a WeylOp {
    type Output = WeylOp;
    fn add(self, o: &'a WeylOp) -> WeylOp {
        WeylOp(&self.0 + &o.0)
    }
}

impl Add for WeylOp {
    type Output = WeylOp;
    fn add(self, o: WeylOp) -> WeylOp {
        WeylOp(self.0 + o.0)
    }
}

impl<'a> Sub<&'a WeylOp> for &'a WeylOp {
    type Output = WeylOp;
    fn sub(self, o: &'a WeylOp) -> WeylOp {
        WeylOp(&self.0 - &o.0)
    }
}

impl Sub for WeylOp {
    type Output = WeylOp;
    fn sub(self, o: WeylOp) -> WeylOp {
        WeylOp(self.0 - o.0)
    }
}

impl Neg for &WeylOp {
    type Output = WeylOp;
    fn neg(self) -> WeylOp {
        WeylOp(-&self.0)
    }
}

impl fmt::Display for WeylOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.fmt_with(&default_name))
    }
}

impl fmt::Debug for WeylOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `prefactor(x) · e^{ikx}` with the momentum held symbolically in a slot
/// block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneWaveState {
    pub momentum: Block,
    pub prefactor: XPolynomial,
}

impl PlaneWaveState {
    pub fn new(ctx: Ctx, momentum: Block) -> Self {
        PlaneWaveState { momentum, prefactor: Poly::one(ctx) }
    }
}

/// `Σ_α x^α M_αμ` for a matrix of ∂-polynomials, i.e. `x̂_μ = x^α φ_αμ(∂)`.
pub fn contract_x(ctx: Ctx, phi: &[Vec<Poly>]) -> Vec<WeylOp> {
    (0..ctx.dim)
        .map(|mu| {
            let mut acc = Poly::zero(ctx);
            for (alpha, row) in phi.iter().enumerate() {
                let xa = Poly::var(ctx, Block::X, alpha).scale_int(eta(alpha));
                acc.add_assign_ref(&(&xa * &row[mu]));
            }
            WeylOp(acc)
        })
        .collect()
}

/// `T(x̂_{μ1} ⋯ x̂_{μr}) = x̂_{μ1} ⋯ x̂_{μr} ▷ 1`.
pub fn hat_t(word: &[usize], xhat: &[WeylOp]) -> XPolynomial {
    let ctx = xhat[0].ctx();
    apply_word(word, xhat, &Poly::one(ctx))
}

/// `x̂_{μ1} ⋯ x̂_{μr} ▷ g`.
pub fn apply_word(word: &[usize], xhat: &[WeylOp], g: &XPolynomial) -> XPolynomial {
    let mut f = g.clone();
    for &mu in word.iter().rev() {
        f = xhat[mu].act_on_poly(&f);
    }
    f
}

/// Formal polynomial in the noncommuting `x̂`: ordered words with central
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HatPoly {
    ctx: Ctx,
    terms: BTreeMap<Vec<usize>, Poly>,
}

impl HatPoly {
    pub fn zero(ctx: Ctx) -> Self {
        HatPoly { ctx, terms: BTreeMap::new() }
    }

    pub fn word(ctx: Ctx, w: Vec<usize>) -> Self {
        let mut h = Self::zero(ctx);
        h.add(w, Poly::one(ctx));
        h
    }

    pub fn add(&mut self, w: Vec<usize>, c: Poly) {
        let e = self.terms.entry(w.clone()).or_insert_with(|| Poly::zero(self.ctx));
        e.add_assign_ref(&c);
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Poly)> {
        self.terms.iter()
    }

    /// `f̂ ▷ g`.
    pub fn act(&self, xhat: &[WeylOp], g: &XPolynomial) -> XPolynomial {
        let mut r = Poly::zero(self.ctx);
        for (w, c) in &self.terms {
            r.add_assign_ref(&(c * &apply_word(w, xhat, g)));
        }
        r
    }

    /// The operator `Σ c_w x̂_w` in the Weyl algebra.
    pub fn to_weyl(&self, xhat: &[WeylOp]) -> WeylOp {
        let mut r = WeylOp::zero(self.ctx);
        for (w, c) in &self.terms {
            let mut op = WeylOp::scalar(c.clone());
            for &mu in w {
                op = &op * &xhat[mu];
            }
            r = &r + &op;
        }
        r
    }
}

impl fmt::Display for HatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let word = w.iter().map(|mu| format!("X{mu}")).collect::<Vec<_>>().join("*");
                match (c.len(), word.is_empty()) {
                    (_, true) => format!("({c})"),
                    (1, false) if c.constant_term().is_one() => word,
                    _ => format!("({c})*{word}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `T⁻¹(f)`: the x̂-polynomial (in sorted words) whose `T`-image is `f`.
/// Solved by descending through the a-grading: the lowest-a-degree part of
/// the residual is matched by the literal word, and `T` of that word feeds
/// corrections of strictly higher a-degree back into the residual.
pub fn unhat_t_inverse(f: &XPolynomial, xhat: &[WeylOp]) -> HatPoly {
    let ctx = f.ctx();
    let mut cache: FxHashMap<Vec<usize>, Poly> = FxHashMap::default();
    let mut result = HatPoly::zero(ctx);
    let mut residual = f.clone();
    for deg in 0..=ctx.order {
        let layer = residual.a_part(deg);
        for (m, c) in layer.terms() {
            let mut word = Vec::new();
            for mu in 0..ctx.dim {
                for _ in 0..m.get(Block::X.var(mu)) {
                    word.push(mu);
                }
            }
            let coeff = Poly::term(ctx, m.without(Block::X), c.clone());
            let image = cache.entry(word.clone()).or_insert_with(|| hat_t(&word, xhat));
            residual.sub_assign_ref(&(&coeff * &*image));
            result.add(word, coeff);
        }
    }
    debug_assert!(residual.is_zero());
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Ctx {
        Ctx::new(2, 2).unwrap()
    }

    #[test]
    fn defining_relation() {
        let c = ctx();
        let lhs = &WeylOp::d(c, 0) * &WeylOp::x(c, 0);
        let expect = &(&WeylOp::x(c, 0) * &WeylOp::d(c, 0)) + &WeylOp::scalar(Poly::int(c, -1));
        assert_eq!(lhs, expect);
        let comm = WeylOp::x(c, 0).commutator(&WeylOp::x(c, 1));
        assert!(comm.is_zero());
        assert_eq!(WeylOp::d(c, 1).commutator(&WeylOp::x(c, 1)), WeylOp::one(c));
    }

    #[test]
    fn derivative_action() {
        let c = ctx();
        let x0 = Poly::var(c, Block::X, 0);
        assert_eq!(WeylOp::x(c, 0).act_on_poly(&Poly::one(c)), x0);
        assert_eq!(WeylOp::d(c, 0).act_on_poly(&(&x0 * &x0)), x0.scale_int(-2));
        assert!(WeylOp::d(c, 1).act_on_poly(&Poly::one(c)).is_zero());
    }

    #[test]
    fn plane_wave_derivative() {
        let c = ctx();
        let w = PlaneWaveState::new(c, Block::K);
        let r = WeylOp::d(c, 1).act_on_planewave(&w);
        assert_eq!(r.prefactor, Poly::var(c, Block::K, 1).mul_i());
    }

    #[test]
    fn symbol_round_trip() {
        let c = ctx();
        let op = &WeylOp::d(c, 0) * &WeylOp::d(c, 1);
        let s = op.symbol_at(Block::K);
        assert_eq!(s, (&Poly::var(c, Block::K, 0) * &Poly::var(c, Block::K, 1)).scale_int(-1));
        assert_eq!(WeylOp::from_symbol(&s, Block::K), op);
    }
}
