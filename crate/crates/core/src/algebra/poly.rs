//! Sparse commutative polynomials over a fixed symbol table, truncated by
//! total degree in the deformation vector `a`.
//!
//! Every polynomial object in the crate (parameter polynomials, momentum maps,
//! tensor operators, the coefficient/exponent data of normal-ordered Weyl
//! operators) is stored in this one representation. The symbol table has
//! seven blocks of [`MAX_DIM`] slots plus one flow parameter `t`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rustc_hash::FxHashMap;

use super::gauss::GaussRat;
use super::rational::Rat;
use crate::error::{KappaError, Result};

pub const MAX_DIM: usize = 6;
pub const NVARS: usize = 7 * MAX_DIM + 1;
pub const T_VAR: usize = 7 * MAX_DIM;

/// Symbol blocks. `X`/`D` are the Weyl generators `x_μ`, `∂_μ`; `K`, `Q`, `W`
/// are momentum slots 1..3 (also reused as ∂ in tensor slots 1..3).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Block {
    A,
    V,
    X,
    D,
    K,
    Q,
    W,
}

impl Block {
    pub const ALL: [Block; 7] = [Block::A, Block::V, Block::X, Block::D, Block::K, Block::Q, Block::W];

    pub fn offset(self) -> usize {
        MAX_DIM
            * match self {
                Block::A => 0,
                Block::V => 1,
                Block::X => 2,
                Block::D => 3,
                Block::K => 4,
                Block::Q => 5,
                Block::W => 6,
            }
    }

    pub fn var(self, mu: usize) -> usize {
        debug_assert!(mu < MAX_DIM);
        self.offset() + mu
    }

    pub fn prefix(self) -> &'static str {
        match self {
            Block::A => "a",
            Block::V => "v",
            Block::X => "x",
            Block::D => "d",
            Block::K => "k",
            Block::Q => "q",
            Block::W => "w",
        }
    }

    /// Momentum slot block (0-based slot index).
    pub fn slot(i: usize) -> Block {
        [Block::K, Block::Q, Block::W][i]
    }

    pub fn of_var(v: usize) -> Option<(Block, usize)> {
        (v < T_VAR).then(|| (Block::ALL[v / MAX_DIM], v % MAX_DIM))
    }
}

/// Metric `η = diag(−1, 1, …, 1)`.
pub fn eta(mu: usize) -> i64 {
    if mu == 0 {
        -1
    } else {
        1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ctx {
    pub dim: usize,
    pub order: usize,
}

impl Ctx {
    pub const MAX_ORDER: usize = 8;

    pub fn new(dim: usize, order: usize) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(KappaError::BadDimension(dim));
        }
        if order > Self::MAX_ORDER {
            return Err(KappaError::BadOrder(order));
        }
        Ok(Ctx { dim, order })
    }

    pub fn with_order(self, order: usize) -> Ctx {
        Ctx { dim: self.dim, order }
    }

    pub fn check(self, other: Ctx) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(KappaError::ContextMismatch(format!(
                "(n={}, N={}) vs (n={}, N={})",
                self.dim, self.order, other.dim, other.order
            )))
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mono(pub [u8; NVARS]);

impl Default for Mono {
    fn default() -> Self {
        Mono([0; NVARS])
    }
}

impl Mono {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: usize) -> Self {
        let mut m = Self::default();
        m.0[v] = 1;
        m
    }

    pub fn get(&self, v: usize) -> u8 {
        self.0[v]
    }

    pub fn set(&mut self, v: usize, e: u8) {
        self.0[v] = e;
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut r = *self;
        for (x, y) in r.0.iter_mut().zip(o.0.iter()) {
            *x += *y;
        }
        r
    }

    pub fn block(&self, b: Block) -> &[u8] {
        &self.0[b.offset()..b.offset() + MAX_DIM]
    }

    pub fn block_degree(&self, b: Block) -> usize {
        self.block(b).iter().map(|&e| e as usize).sum()
    }

    pub fn a_degree(&self) -> usize {
        self.block_degree(Block::A)
    }

    pub fn total_degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Copy with the given block cleared.
    pub fn without(&self, b: Block) -> Mono {
        let mut r = *self;
        r.0[b.offset()..b.offset() + MAX_DIM].fill(0);
        r
    }

    /// Copy keeping only the given block.
    pub fn only(&self, b: Block) -> Mono {
        let mut r = Mono::default();
        r.0[b.offset()..b.offset() + MAX_DIM].copy_from_slice(self.block(b));
        r
    }

    /// Move the exponents of block `from` into block `to` (which must be empty).
    pub fn moved(&self, from: Block, to: Block) -> Mono {
        let mut r = self.without(from);
        for mu in 0..MAX_DIM {
            r.0[to.var(mu)] += self.0[from.var(mu)];
        }
        r
    }

    /// Canonical print order: a-degree ascending, then total degree
    /// descending, then reverse lexicographic exponent comparison.
    pub fn print_cmp(&self, o: &Mono) -> Ordering {
        self.a_degree()
            .cmp(&o.a_degree())
            .then(o.total_degree().cmp(&self.total_degree()))
            .then(o.0.cmp(&self.0))
    }

    pub fn fmt_with(&self, name: &dyn Fn(usize) -> String) -> String {
        let mut parts = Vec::new();
        for (v, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(name(v)),
                _ => parts.push(format!("{}^{}", name(v), e)),
            }
        }
        parts.join("*")
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.fmt_with(&default_name);
        if s.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{s}")
        }
    }
}

pub fn default_name(v: usize) -> String {
    match Block::of_var(v) {
        Some((b, mu)) => format!("{}{}", b.prefix(), mu),
        None => "t".to_string(),
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    ctx: Ctx,
    terms: FxHashMap<Mono, GaussRat>,
}

impl Poly {
    pub fn zero(ctx: Ctx) -> Self {
        Poly { ctx, terms: FxHashMap::default() }
    }

    pub fn constant(ctx: Ctx, c: GaussRat) -> Self {
        Self::term(ctx, Mono::one(), c)
    }

    pub fn one(ctx: Ctx) -> Self {
        Self::constant(ctx, GaussRat::ONE)
    }

    pub fn int(ctx: Ctx, n: i64) -> Self {
        Self::constant(ctx, GaussRat::int(n))
    }

    pub fn term(ctx: Ctx, m: Mono, c: GaussRat) -> Self {
        let mut p = Self::zero(ctx);
        p.add_term(m, c);
        p
    }

    pub fn var(ctx: Ctx, b: Block, mu: usize) -> Self {
        Self::term(ctx, Mono::var(b.var(mu)), GaussRat::ONE)
    }

    pub fn t(ctx: Ctx) -> Self {
        Self::term(ctx, Mono::var(T_VAR), GaussRat::ONE)
    }

    pub fn a(ctx: Ctx, mu: usize) -> Self {
        Self::var(ctx, Block::A, mu)
    }

    /// `Σ_μ η_μμ u_μ w_μ` for two blocks (e.g. `(ak)`, `k²`, `(x∂)`).
    pub fn dot(ctx: Ctx, u: Block, w: Block) -> Self {
        let mut p = Self::zero(ctx);
        for mu in 0..ctx.dim {
            let m = Mono::var(u.var(mu)).mul(&Mono::var(w.var(mu)));
            p.add_term(m, GaussRat::int(eta(mu)));
        }
        p
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

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &GaussRat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> GaussRat {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> GaussRat {
        self.coeff(&Mono::one())
    }

    /// Adds `c·m`, dropping it if it exceeds the truncation order.
    pub fn add_term(&mut self, m: Mono, c: GaussRat) {
        if c.is_zero() || m.a_degree() > self.ctx.order {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, o: &Poly) {
        debug_assert_eq!(self.ctx, o.ctx);
        for (m, c) in &o.terms {
            self.add_term(*m, c.clone());
        }
    }

    pub fn sub_assign_ref(&mut self, o: &Poly) {
        debug_assert_eq!(self.ctx, o.ctx);
        for (m, c) in &o.terms {
            self.add_term(*m, -c);
        }
    }

    pub fn add_scaled(&mut self, o: &Poly, s: &GaussRat) {
        if s.is_zero() {
            return;
        }
        for (m, c) in &o.terms {
            self.add_term(*m, c * s);
        }
    }

    pub fn checked_add(&self, o: &Poly) -> Result<Poly> {
        self.ctx.check(o.ctx)?;
        Ok(self + o)
    }

    pub fn checked_mul(&self, o: &Poly) -> Result<Poly> {
        self.ctx.check(o.ctx)?;
        Ok(self * o)
    }

    pub fn scale(&self, s: &GaussRat) -> Poly {
        let mut r = Poly::zero(self.ctx);
        r.add_scaled(self, s);
        r
    }

    pub fn scale_int(&self, n: i64) -> Poly {
        self.scale(&GaussRat::int(n))
    }

    pub fn mul_i(&self) -> Poly {
        self.scale(&GaussRat::I)
    }

    pub fn mul_mono(&self, m: &Mono, c: &GaussRat) -> Poly {
        let mut r = Poly::zero(self.ctx);
        for (mm, cc) in &self.terms {
            r.add_term(mm.mul(m), cc * c);
        }
        r
    }

    /// Terms grouped by a-degree, for truncation-aware products.
    fn by_a_degree(&self) -> Vec<Vec<(&Mono, &GaussRat)>> {
        let mut g: Vec<Vec<(&Mono, &GaussRat)>> = vec![Vec::new(); self.ctx.order + 1];
        for (m, c) in &self.terms {
            g[m.a_degree()].push((m, c));
        }
        g
    }

    /// Product keeping only the monomials accepted by `keep`.
    pub fn mul_filtered(&self, o: &Poly, keep: &dyn Fn(&Mono) -> bool) -> Poly {
        debug_assert_eq!(self.ctx, o.ctx);
        let n = self.ctx.order;
        let ga = self.by_a_degree();
        let gb = o.by_a_degree();
        let mut r = Poly::zero(self.ctx);
        for (da, ta) in ga.iter().enumerate() {
            for tb in gb.iter().take(n + 1 - da) {
                for (ma, ca) in ta {
                    for (mb, cb) in tb {
                        let m = ma.mul(mb);
                        if keep(&m) {
                            r.add_term(m, *ca * *cb);
                        }
                    }
                }
            }
        }
        r
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.ctx);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Re-truncates (or re-labels) to another order.
    pub fn with_order(&self, order: usize) -> Poly {
        let mut r = Poly::zero(self.ctx.with_order(order));
        for (m, c) in &self.terms {
            r.add_term(*m, c.clone());
        }
        r
    }

    pub fn retain(&self, keep: impl Fn(&Mono, &GaussRat) -> bool) -> Poly {
        let mut r = Poly::zero(self.ctx);
        for (m, c) in &self.terms {
            if keep(m, c) {
                r.terms.insert(*m, c.clone());
            }
        }
        r
    }

    /// Termwise rewrite; `None` drops the term.
    pub fn map_terms(&self, f: impl Fn(&Mono, &GaussRat) -> Option<(Mono, GaussRat)>) -> Poly {
        let mut r = Poly::zero(self.ctx);
        for (m, c) in &self.terms {
            if let Some((m2, c2)) = f(m, c) {
                r.add_term(m2, c2);
            }
        }
        r
    }

    pub fn a_part(&self, deg: usize) -> Poly {
        self.retain(|m, _| m.a_degree() == deg)
    }

    pub fn max_block_degree(&self, b: Block) -> usize {
        self.terms.keys().map(|m| m.block_degree(b)).max().unwrap_or(0)
    }

    pub fn contains_block(&self, b: Block) -> bool {
        self.terms.keys().any(|m| m.block_degree(b) > 0)
    }

    pub fn contains_var(&self, v: usize) -> bool {
        self.terms.keys().any(|m| m.get(v) > 0)
    }

    pub fn derivative(&self, v: usize) -> Poly {
        self.map_terms(|m, c| {
            let e = m.get(v);
            (e > 0).then(|| {
                let mut m2 = *m;
                m2.set(v, e - 1);
                (m2, c.scale(&Rat::int(e as i64)))
            })
        })
    }

    /// `∫_0^t` in the flow parameter.
    pub fn integrate_t(&self) -> Poly {
        self.map_terms(|m, c| {
            let e = m.get(T_VAR);
            let mut m2 = *m;
            m2.set(T_VAR, e + 1);
            Some((m2, c.scale(&Rat::new(1, e as i64 + 1))))
        })
    }

    /// Sets a variable to zero.
    pub fn zero_var(&self, v: usize) -> Poly {
        self.retain(|m, _| m.get(v) == 0)
    }

    pub fn zero_block(&self, b: Block) -> Poly {
        self.retain(|m, _| m.block_degree(b) == 0)
    }

    /// Sets a variable to one.
    pub fn one_var(&self, v: usize) -> Poly {
        self.map_terms(|m, c| {
            let mut m2 = *m;
            m2.set(v, 0);
            Some((m2, c.clone()))
        })
    }

    pub fn move_block(&self, from: Block, to: Block) -> Poly {
        if from == to {
            return self.clone();
        }
        self.map_terms(|m, c| Some((m.moved(from, to), c.clone())))
    }

    /// Simultaneous substitution `v ↦ p_v` for the listed variables.
    pub fn substitute(&self, subs: &[(usize, Poly)]) -> Poly {
        self.substitute_filtered(subs, &|_| true)
    }

    pub fn substitute_filtered(&self, subs: &[(usize, Poly)], keep: &dyn Fn(&Mono) -> bool) -> Poly {
        if subs.is_empty() {
            return self.clone();
        }
        let mut powers: Vec<Vec<Poly>> = subs.iter().map(|(_, p)| vec![Poly::one(self.ctx), p.clone()]).collect();
        // group terms by their residual (non-substituted) part to share work
        let mut groups: FxHashMap<Vec<u8>, Vec<(Mono, GaussRat)>> = FxHashMap::default();
        for (m, c) in &self.terms {
            let key: Vec<u8> = subs.iter().map(|(v, _)| m.get(*v)).collect();
            let mut rest = *m;
            for (v, _) in subs {
                rest.set(*v, 0);
            }
            groups.entry(key).or_default().push((rest, c.clone()));
        }
        let mut r = Poly::zero(self.ctx);
        let mut keys: Vec<_> = groups.into_iter().collect();
        keys.sort_by(|a, b| a.0.cmp(&b.0));
        for (key, rests) in keys {
            let mut prod = Poly::one(self.ctx);
            for (i, &e) in key.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &subs[i].1;
                    powers[i].push(next);
                }
                prod = prod.mul_filtered(&powers[i][e as usize], keep);
            }
            let mut rest_poly = Poly::zero(self.ctx);
            for (m, c) in rests {
                rest_poly.add_term(m, c);
            }
            r.add_assign_ref(&prod.mul_filtered(&rest_poly, keep));
        }
        r
    }

    /// Substitutes a whole block by a vector of polynomials.
    pub fn substitute_block(&self, b: Block, vals: &[Poly]) -> Poly {
        let subs: Vec<(usize, Poly)> = vals.iter().enumerate().map(|(mu, p)| (b.var(mu), p.clone())).collect();
        self.substitute(&subs)
    }

    /// Multiplies each term by `f(deg_b)`.
    pub fn scale_by_block_degree(&self, b: Block, f: impl Fn(usize) -> GaussRat) -> Poly {
        self.map_terms(|m, c| Some((*m, c * &f(m.block_degree(b)))))
    }

    pub fn sorted_terms(&self) -> Vec<(Mono, GaussRat)> {
        let mut v: Vec<(Mono, GaussRat)> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        v.sort_by(|a, b| a.0.print_cmp(&b.0));
        v
    }

    pub fn fmt_with(&self, name: &dyn Fn(usize) -> String) -> String {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in terms.iter().enumerate() {
            let ms = m.fmt_with(name);
            let (neg, body) = format_term(c, &ms);
            match (idx, neg) {
                (0, false) => out.push_str(&body),
                (0, true) => {
                    out.push('-');
                    out.push_str(&body);
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&body);
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&body);
                }
            }
        }
        out
    }
}

/// Splits a term into (leading sign, unsigned text).
fn format_term(c: &GaussRat, mono: &str) -> (bool, String) {
    let (neg, mag) = if c.im.is_zero() {
        (c.re.is_negative(), GaussRat::real(c.re.abs()))
    } else if c.re.is_zero() {
        (c.im.is_negative(), GaussRat::imag(c.im.abs()))
    } else {
        (false, c.clone())
    };
    let coeff = if mag.is_one() { String::new() } else { mag.to_string() };
    let body = match (coeff.is_empty(), mono.is_empty()) {
        (true, true) => "1".to_string(),
        (true, false) => mono.to_string(),
        (false, true) => coeff,
        (false, false) => format!("{coeff}*{mono}"),
    };
    (neg, body)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(&default_name))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &'a Poly) -> Poly {
        let mut r = self.clone();
        r.add_assign_ref(o);
        r
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &'a Poly) -> Poly {
        let mut r = self.clone();
        r.sub_assign_ref(o);
        r
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &'a Poly) -> Poly {
        self.mul_filtered(o, &|_| true)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale_int(-1)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale_int(-1)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $m(self, o: &'a Poly) -> Poly {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<Poly> for &'a Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly {
                self.$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: usize) -> Ctx {
        Ctx::new(2, n).unwrap()
    }

    #[test]
    fn spec_products() {
        let one = Poly::one(c(3));
        assert_eq!(&one * &one, one);
        let a0 = Poly::a(c(1), 0);
        assert!((&a0 * &a0).is_zero());
        let ctx = c(2);
        let p = &Poly::one(ctx) + &Poly::a(ctx, 0);
        let q = &Poly::one(ctx) - &Poly::a(ctx, 0);
        let expect = &Poly::one(ctx) - &(&Poly::a(ctx, 0) * &Poly::a(ctx, 0));
        assert_eq!(&p * &q, expect);
    }

    #[test]
    fn context_mismatch_is_reported() {
        assert!(Poly::one(c(1)).checked_mul(&Poly::one(c(2))).is_err());
        assert!(Ctx::new(7, 1).is_err());
    }

    #[test]
    fn substitution() {
        let ctx = c(3);
        let k0 = Poly::var(ctx, Block::K, 0);
        let q0 = Poly::var(ctx, Block::Q, 0);
        let s = &k0 + &q0;
        assert_eq!(s.substitute(&[(Block::Q.var(0), Poly::zero(ctx))]), k0);
        assert!(s.substitute(&[(Block::Q.var(0), -&k0)]).is_zero());
        // simultaneous swap
        let swapped = (&k0 * &k0).substitute(&[(Block::K.var(0), q0.clone()), (Block::Q.var(0), k0.clone())]);
        assert_eq!(swapped, &q0 * &q0);
    }

    #[test]
    fn printing() {
        let ctx = c(2);
        let x0 = Poly::var(ctx, Block::X, 0);
        let x1 = Poly::var(ctx, Block::X, 1);
        let p = &(&x0 * &x1) - &(&x0 * &Poly::a(ctx, 1)).mul_i();
        assert_eq!(p.to_string(), "x0*x1 - i*a1*x0");
        assert_eq!(Poly::zero(ctx).to_string(), "0");
        assert_eq!(Poly::int(ctx, -3).to_string(), "-3");
    }
}
