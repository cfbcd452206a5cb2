//! Formal power series in the two invariants `A = i(a∂)` and `B = a²∂²`.
//!
//! A series carries a *weight* `W`: every coefficient `c_{m,j}` with
//! `m + 2j ≤ W` is known exactly. Since `A^m B^j` has a-degree `m + 2j`, a
//! series of weight `W ≥ N` substitutes exactly into operators truncated at
//! order `N`.

use std::collections::BTreeMap;
use std::fmt;

use super::gauss::GaussRat;
use super::poly::{Block, Ctx, Poly};
use super::rational::Rat;
use crate::error::{KappaError, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct ScalarSeries2 {
    weight: usize,
    coeffs: BTreeMap<(usize, usize), GaussRat>,
}

impl ScalarSeries2 {
    pub fn zero(weight: usize) -> Self {
        ScalarSeries2 { weight, coeffs: BTreeMap::new() }
    }

    pub fn constant(c: GaussRat, weight: usize) -> Self {
        let mut s = Self::zero(weight);
        s.set(0, 0, c);
        s
    }

    pub fn one(weight: usize) -> Self {
        Self::constant(GaussRat::ONE, weight)
    }

    /// The monomial `A`.
    pub fn a(weight: usize) -> Self {
        let mut s = Self::zero(weight);
        s.set(1, 0, GaussRat::ONE);
        s
    }

    /// The monomial `B`.
    pub fn b(weight: usize) -> Self {
        let mut s = Self::zero(weight);
        s.set(0, 1, GaussRat::ONE);
        s
    }

    /// Builds a series from a table of `(m, j, c_{m,j})`; entries beyond the
    /// weight are ignored.
    pub fn from_table(entries: &[(usize, usize, GaussRat)], weight: usize) -> Self {
        let mut s = Self::zero(weight);
        for (m, j, c) in entries {
            let old = s.coeff(*m, *j);
            s.set(*m, *j, &old + c);
        }
        s
    }

    /// `Σ c_m A^m` from a coefficient generator.
    pub fn of_a(weight: usize, c: impl Fn(usize) -> Rat) -> Self {
        let mut s = Self::zero(weight);
        for m in 0..=weight {
            s.set(m, 0, GaussRat::real(c(m)));
        }
        s
    }

    /// `Σ c_j B^j` from a coefficient generator.
    pub fn of_b(weight: usize, c: impl Fn(usize) -> Rat) -> Self {
        let mut s = Self::zero(weight);
        for j in 0..=weight / 2 {
            s.set(0, j, GaussRat::real(c(j)));
        }
        s
    }

    /// `e^A`.
    pub fn exp_a(weight: usize) -> Self {
        Self::of_a(weight, |m| Rat::ONE / factorial(m))
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn coeff(&self, m: usize, j: usize) -> GaussRat {
        self.coeffs.get(&(m, j)).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> GaussRat {
        self.coeff(0, 0)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&(usize, usize), &GaussRat)> {
        self.coeffs.iter()
    }

    fn set(&mut self, m: usize, j: usize, c: GaussRat) {
        if m + 2 * j > self.weight || c.is_zero() {
            self.coeffs.remove(&(m, j));
        } else {
            self.coeffs.insert((m, j), c);
        }
    }

    pub fn depends_on_a(&self) -> bool {
        self.coeffs.keys().any(|&(m, _)| m > 0)
    }

    pub fn depends_on_b(&self) -> bool {
        self.coeffs.keys().any(|&(_, j)| j > 0)
    }

    pub fn with_weight(&self, weight: usize) -> Self {
        let w = weight.min(self.weight);
        let mut s = Self::zero(w);
        for (&(m, j), c) in &self.coeffs {
            s.set(m, j, c.clone());
        }
        s
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut s = self.with_weight(o.weight);
        for (&(m, j), c) in &o.coeffs {
            let v = &s.coeff(m, j) + c;
            s.set(m, j, v);
        }
        s
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&GaussRat::int(-1))
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        let mut s = Self::zero(self.weight);
        for (&(m, j), v) in &self.coeffs {
            s.set(m, j, v * c);
        }
        s
    }

    /// Product; the known weight of `uv` is the minimum of the operands'
    /// weights shifted by their lowest occurring weights.
    pub fn mul(&self, o: &Self) -> Self {
        let lo_a = self.valuation();
        let lo_b = o.valuation();
        let w = (self.weight + lo_b).min(o.weight + lo_a);
        let mut s = Self::zero(w);
        for (&(m1, j1), c1) in &self.coeffs {
            for (&(m2, j2), c2) in &o.coeffs {
                let (m, j) = (m1 + m2, j1 + j2);
                if m + 2 * j <= w {
                    let v = &s.coeff(m, j) + &(c1 * c2);
                    s.set(m, j, v);
                }
            }
        }
        s
    }

    /// Lowest `m + 2j` among nonzero coefficients (weight+1 for zero).
    fn valuation(&self) -> usize {
        self.coeffs.keys().map(|&(m, j)| m + 2 * j).min().unwrap_or(self.weight + 1)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.weight);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `Σ_k c_k u^k` for `u` without constant term.
    fn compose_power_series(u: &Self, c: impl Fn(usize) -> GaussRat) -> Self {
        debug_assert!(u.constant_term().is_zero());
        let w = u.weight;
        let mut acc = Self::constant(c(0), w);
        let mut pw = Self::one(w);
        for k in 1..=w {
            pw = pw.mul(u).with_weight(w);
            let ck = c(k);
            if !ck.is_zero() {
                acc = acc.add(&pw.scale(&ck));
            }
        }
        acc
    }

    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = self.constant_term();
        let inv0 = c0.checked_inv().map_err(|_| KappaError::ZeroConstantTerm)?;
        // 1/(c0(1+u)) with u = s/c0 - 1
        let u = self.scale(&inv0).sub(&Self::one(self.weight));
        let geo = Self::compose_power_series(&u, |k| GaussRat::int(if k % 2 == 0 { 1 } else { -1 }));
        Ok(geo.scale(&inv0))
    }

    pub fn sqrt(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if !c0.is_one() {
            return Err(KappaError::SqrtBranch(c0.to_string()));
        }
        let u = self.sub(&Self::one(self.weight));
        Ok(Self::compose_power_series(&u, |k| GaussRat::real(binomial_half(k))))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.reciprocal()?))
    }

    pub fn d_a(&self) -> Self {
        let mut s = Self::zero(self.weight.saturating_sub(1));
        for (&(m, j), c) in &self.coeffs {
            if m > 0 {
                s.set(m - 1, j, c.scale(&Rat::int(m as i64)));
            }
        }
        s
    }

    pub fn d_b(&self) -> Self {
        let mut s = Self::zero(self.weight.saturating_sub(2));
        for (&(m, j), c) in &self.coeffs {
            if j > 0 {
                s.set(m, j - 1, c.scale(&Rat::int(j as i64)));
            }
        }
        s
    }

    /// Multiplication by `A`.
    pub fn times_a(&self) -> Self {
        let mut s = Self::zero(self.weight + 1);
        for (&(m, j), c) in &self.coeffs {
            s.set(m + 1, j, c.clone());
        }
        s
    }

    /// Multiplication by `B`.
    pub fn times_b(&self) -> Self {
        let mut s = Self::zero(self.weight + 2);
        for (&(m, j), c) in &self.coeffs {
            s.set(m, j + 1, c.clone());
        }
        s
    }

    /// `∫_0^B` of a function of `B` alone.
    pub fn integrate_b(&self) -> Result<Self> {
        if self.depends_on_a() {
            return Err(KappaError::DependsOnA);
        }
        let mut s = Self::zero(self.weight + 2);
        for (&(_, j), c) in &self.coeffs {
            s.set(0, j + 1, c.scale(&Rat::new(1, j as i64 + 1)));
        }
        Ok(s)
    }

    /// Evaluates the series at given values of `A` and `B` (a-degrees 1 and 2).
    pub fn eval(&self, a_val: &Poly, b_val: &Poly) -> Result<Poly> {
        let ctx = a_val.ctx();
        if self.weight < ctx.order {
            return Err(KappaError::Inconsistent(format!(
                "series known to weight {} but order {} requested",
                self.weight, ctx.order
            )));
        }
        let mut pa = vec![Poly::one(ctx)];
        let mut pb = vec![Poly::one(ctx)];
        let mut r = Poly::zero(ctx);
        for (&(m, j), c) in &self.coeffs {
            if m + 2 * j > ctx.order {
                continue;
            }
            while pa.len() <= m {
                let next = &pa[pa.len() - 1] * a_val;
                pa.push(next);
            }
            while pb.len() <= j {
                let next = &pb[pb.len() - 1] * b_val;
                pb.push(next);
            }
            r.add_scaled(&(&pa[m] * &pb[j]), c);
        }
        Ok(r)
    }

    /// Substitutes `A = i(a·u)`, `B = a²·u²` with `u` the given block (the
    /// operator form when `u` holds the derivatives ∂).
    pub fn to_poly(&self, ctx: Ctx, u: Block) -> Result<Poly> {
        let (a_val, b_val) = invariants(ctx, u);
        self.eval(&a_val, &b_val)
    }
}

/// `(A, B) = (i(a·u), a²u²)` for a block `u`.
pub fn invariants(ctx: Ctx, u: Block) -> (Poly, Poly) {
    let a_val = Poly::dot(ctx, Block::A, u).mul_i();
    let b_val = &Poly::dot(ctx, Block::A, Block::A) * &Poly::dot(ctx, u, u);
    (a_val, b_val)
}

pub fn factorial(n: usize) -> Rat {
    (1..=n as i64).fold(Rat::ONE, |acc, k| &acc * &Rat::int(k))
}

/// `binom(1/2, k)`.
fn binomial_half(k: usize) -> Rat {
    let mut c = Rat::ONE;
    for i in 0..k {
        c = &(&c * &(&Rat::new(1, 2) - &Rat::int(i as i64))) / &Rat::int(i as i64 + 1);
    }
    c
}

impl fmt::Display for ScalarSeries2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<_> = self.coeffs.iter().collect();
        keys.sort_by_key(|(&(m, j), _)| (m + 2 * j, j));
        if keys.is_empty() {
            return write!(f, "0 + O({})", self.weight + 1);
        }
        let parts: Vec<String> = keys
            .iter()
            .map(|(&(m, j), c)| {
                let mono = match (m, j) {
                    (0, 0) => String::new(),
                    _ => {
                        let mut s = Vec::new();
                        if m > 0 {
                            s.push(if m == 1 { "A".to_string() } else { format!("A^{m}") });
                        }
                        if j > 0 {
                            s.push(if j == 1 { "B".to_string() } else { format!("B^{j}") });
                        }
                        s.join("*")
                    }
                };
                if mono.is_empty() {
                    c.to_string()
                } else if c.is_one() {
                    mono
                } else {
                    format!("{c}*{mono}")
                }
            })
            .collect();
        write!(f, "{} + O(w>{})", parts.join(" + "), self.weight)
    }
}

impl fmt::Debug for ScalarSeries2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reciprocal_of_one_minus_a_is_geometric() {
        let s = ScalarSeries2::one(5).sub(&ScalarSeries2::a(5));
        let r = s.reciprocal().unwrap();
        for m in 0..=5 {
            assert_eq!(r.coeff(m, 0), GaussRat::ONE);
        }
        assert!(ScalarSeries2::zero(3).reciprocal().is_err());
    }

    #[test]
    fn bernoulli_series() {
        // (e^A - 1)/A inverted gives A/(e^A - 1) = 1 - A/2 + A^2/12 - A^4/720
        let s = ScalarSeries2::of_a(6, |m| Rat::ONE / factorial(m + 1));
        let r = s.reciprocal().unwrap();
        assert!(r.mul(&s).sub(&ScalarSeries2::one(6)).coeffs().next().is_none());
        assert_eq!(r.coeff(1, 0), GaussRat::frac(-1, 2));
        assert_eq!(r.coeff(2, 0), GaussRat::frac(1, 12));
        assert_eq!(r.coeff(3, 0), GaussRat::ZERO);
        assert_eq!(r.coeff(4, 0), GaussRat::frac(-1, 720));
    }

    #[test]
    fn sqrt_one_minus_b() {
        let s = ScalarSeries2::one(6).sub(&ScalarSeries2::b(6));
        let r = s.sqrt().unwrap();
        assert_eq!(r.coeff(0, 1), GaussRat::frac(-1, 2));
        assert_eq!(r.coeff(0, 2), GaussRat::frac(-1, 8));
        assert_eq!(r.mul(&r), s);
        assert!(ScalarSeries2::constant(GaussRat::int(4), 2).sqrt().is_err());
    }

    #[test]
    fn sqrt_mixed() {
        let w = 5;
        let one_a = ScalarSeries2::one(w).add(&ScalarSeries2::a(w));
        let s = one_a.mul(&one_a).add(&ScalarSeries2::b(w));
        let r = s.sqrt().unwrap();
        assert_eq!(r.mul(&r), s);
        assert_eq!(r.coeff(1, 0), GaussRat::ONE);
        assert_eq!(r.coeff(0, 1), GaussRat::frac(1, 2));
        assert_eq!(r.coeff(1, 1), GaussRat::frac(-1, 2));
    }

    #[test]
    fn integrate_b() {
        let one = ScalarSeries2::one(4);
        assert_eq!(one.integrate_b().unwrap(), ScalarSeries2::b(6));
        let s = one.add(&ScalarSeries2::b(4).scale(&GaussRat::frac(1, 2)));
        let i = s.integrate_b().unwrap();
        assert_eq!(i.coeff(0, 1), GaussRat::ONE);
        assert_eq!(i.coeff(0, 2), GaussRat::frac(1, 4));
        assert!(ScalarSeries2::a(3).integrate_b().is_err());
    }
}
