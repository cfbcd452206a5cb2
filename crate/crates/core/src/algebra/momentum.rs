//! Vector-valued formal maps of one to three momentum slots.
//!
//! Slot `i` uses the symbol block [`Block::slot`]`(i)`: `k` for slot 0, `q` for
//! slot 1, `w` for slot 2. Components are polynomials in those symbols with
//! coefficients in `a`.

use std::fmt;

use super::poly::{default_name, Block, Ctx, Poly};
use crate::error::{KappaError, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct MomentumMap {
    slots: usize,
    comps: Vec<Poly>,
}

impl MomentumMap {
    pub fn new(slots: usize, comps: Vec<Poly>) -> Self {
        debug_assert!(slots <= 3);
        MomentumMap { slots, comps }
    }

    /// The identity map `k ↦ k` in the given slot.
    pub fn identity(ctx: Ctx, slot: usize) -> Self {
        let b = Block::slot(slot);
        Self::new(slot + 1, (0..ctx.dim).map(|mu| Poly::var(ctx, b, mu)).collect())
    }

    pub fn zero(ctx: Ctx, slots: usize) -> Self {
        Self::new(slots, vec![Poly::zero(ctx); ctx.dim])
    }

    /// Momentum vector symbols of a slot as polynomials.
    pub fn symbols(ctx: Ctx, slot: usize) -> Vec<Poly> {
        let b = Block::slot(slot);
        (0..ctx.dim).map(|mu| Poly::var(ctx, b, mu)).collect()
    }

    pub fn ctx(&self) -> Ctx {
        self.comps[0].ctx()
    }

    pub fn slot_count(&self) -> usize {
        self.slots
    }

    pub fn comps(&self) -> &[Poly] {
        &self.comps
    }

    pub fn comp(&self, mu: usize) -> &Poly {
        &self.comps[mu]
    }

    pub fn into_comps(self) -> Vec<Poly> {
        self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Poly::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.slots.max(o.slots), self.comps.iter().zip(&o.comps).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.slots.max(o.slots), self.comps.iter().zip(&o.comps).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.slots, self.comps.iter().map(|a| -a).collect())
    }

    /// Substitutes `value` for the momentum symbols of `slot`.
    pub fn substitute(&self, slot: usize, value: &[Poly]) -> Result<Self> {
        if slot >= 3 {
            return Err(KappaError::SlotOutOfRange(slot));
        }
        let b = Block::slot(slot);
        let subs: Vec<(usize, Poly)> = value.iter().enumerate().map(|(mu, p)| (b.var(mu), p.clone())).collect();
        Ok(Self::new(self.slots, self.comps.iter().map(|c| c.substitute(&subs)).collect()))
    }

    pub fn substitute_zero(&self, slot: usize) -> Result<Self> {
        if slot >= 3 {
            return Err(KappaError::SlotOutOfRange(slot));
        }
        let b = Block::slot(slot);
        Ok(Self::new(self.slots, self.comps.iter().map(|c| c.zero_block(b)).collect()))
    }

    /// Simultaneous substitution of all slots: slot `i` ↦ `args[i]`.
    pub fn compose(&self, args: &[&[Poly]]) -> Self {
        let mut subs = Vec::new();
        for (i, arg) in args.iter().enumerate() {
            let b = Block::slot(i);
            for (mu, p) in arg.iter().enumerate() {
                subs.push((b.var(mu), p.clone()));
            }
        }
        let slots = args.iter().map(|a| slot_usage(a)).max().unwrap_or(0);
        Self::new(slots.max(1), self.comps.iter().map(|c| c.substitute(&subs)).collect())
    }

    /// `∂ m_μ / ∂ s_ν` for the symbols of `slot` (index `[μ][ν]`).
    pub fn jacobian(&self, slot: usize) -> Vec<Vec<Poly>> {
        let b = Block::slot(slot);
        self.comps.iter().map(|c| (0..c.dim()).map(|nu| c.derivative(b.var(nu))).collect()).collect()
    }

    /// Every monomial of a-degree `m` has total momentum degree `m + 1`.
    pub fn is_homogeneous(&self) -> bool {
        self.comps.iter().all(|c| {
            c.terms().all(|(m, _)| {
                let p = m.block_degree(Block::K) + m.block_degree(Block::Q) + m.block_degree(Block::W);
                p == m.a_degree() + 1
            })
        })
    }

    pub fn with_order(&self, order: usize) -> Self {
        Self::new(self.slots, self.comps.iter().map(|c| c.with_order(order)).collect())
    }

    pub fn fmt_named(&self, name: &str) -> String {
        self.comps
            .iter()
            .enumerate()
            .map(|(mu, c)| format!("{name}{mu} = {}", c.fmt_with(&default_name)))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

fn slot_usage(arg: &[Poly]) -> usize {
    [Block::W, Block::Q, Block::K]
        .iter()
        .position(|&b| arg.iter().any(|p| p.contains_block(b)))
        .map(|i| 3 - i)
        .unwrap_or(0)
}

impl fmt::Display for MomentumMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_named("m"))
    }
}

impl fmt::Debug for MomentumMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substitution_examples() {
        let ctx = Ctx::new(3, 2).unwrap();
        let k = MomentumMap::identity(ctx, 0);
        let q = MomentumMap::identity(ctx, 1);
        let s = k.add(&q);
        assert_eq!(s.substitute_zero(1).unwrap().comps(), k.comps());
        let minus_k: Vec<Poly> = k.comps().iter().map(|c| -c).collect();
        assert!(s.substitute(1, &minus_k).unwrap().is_zero());
        assert!(s.substitute(3, &minus_k).is_err());
        assert!(s.is_homogeneous());
    }
}
