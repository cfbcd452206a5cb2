//! Momentum-space functions of a realization: the flow `P(k, q)` with
//! `e^{ikx̂} ▷ e^{iqx} = e^{iP(k,q)x}`, the ordering map `K`, its inverse,
//! the addition law `D(k, q)` and the antipode `S(k)`.

use crate::algebra::poly::eta;
use crate::algebra::{Block, Ctx, GaussRat, MomentumMap, Poly, PolyMatrix, Rat};
use crate::realizations::Realization;

#[derive(Clone, Debug)]
pub struct FlowResult {
    /// `P(k, q)`, slot 0 = `k`, slot 1 = `q`.
    pub p: MomentumMap,
    /// Picard iterates before `t = 1` is substituted.
    pub iterates: Vec<MomentumMap>,
}

fn subs_block(b: Block, vals: &[Poly]) -> Vec<(usize, Poly)> {
    vals.iter().enumerate().map(|(mu, p)| (b.var(mu), p.clone())).collect()
}

/// Solves `dP_α/dt = k^μ h_αμ(P)`, `P(0) = q`, by Picard iteration in `t`
/// and sets `t = 1`.
pub fn flow_p(r: &Realization) -> FlowResult {
    let ctx = r.ctx();
    let n = ctx.dim;
    // h in the w block so that substitution of P (which contains k) is clean
    let h: Vec<Vec<Poly>> = r.h().into_iter().map(|row| row.into_iter().map(|p| p.move_block(Block::K, Block::W)).collect()).collect();
    let q = MomentumMap::symbols(ctx, 1);
    let k = MomentumMap::symbols(ctx, 0);
    let mut cur = q.clone();
    let mut iterates = Vec::new();
    for _ in 0..=ctx.order {
        let subs = subs_block(Block::W, &cur);
        let next: Vec<Poly> = (0..n)
            .map(|al| {
                let mut rhs = Poly::zero(ctx);
                for mu in 0..n {
                    let hv = h[al][mu].substitute(&subs);
                    rhs.add_assign_ref(&(&k[mu] * &hv).scale_int(eta(mu)));
                }
                &q[al] + &rhs.integrate_t()
            })
            .collect();
        let done = next == cur;
        cur = next;
        iterates.push(MomentumMap::new(2, cur.clone()));
        if done {
            break;
        }
    }
    let p = cur.iter().map(|c| c.one_var(crate::algebra::poly::T_VAR)).collect();
    FlowResult { p: MomentumMap::new(2, p), iterates }
}

/// `K(k) = P(k, 0)`.
pub fn k_map(flow: &FlowResult) -> MomentumMap {
    MomentumMap::new(1, flow.p.comps().iter().map(|c| c.zero_block(Block::Q)).collect())
}

/// Series reversion by the fixed point `L = k − (K(L) − L)`.
pub fn k_inverse(k: &MomentumMap) -> MomentumMap {
    let ctx = k.ctx();
    let id = MomentumMap::symbols(ctx, 0);
    let mut l = id.clone();
    for _ in 0..ctx.order {
        let kl = k.compose(&[l.as_slice()]);
        l = (0..ctx.dim).map(|mu| &(&id[mu] - kl.comp(mu)) + &l[mu]).collect();
    }
    MomentumMap::new(1, l)
}

/// `D(k, q) = P(K⁻¹(k), q)`.
pub fn d_from(flow: &FlowResult, kinv: &MomentumMap) -> MomentumMap {
    let ctx = kinv.ctx();
    let q = MomentumMap::symbols(ctx, 1);
    flow.p.compose(&[kinv.comps(), q.as_slice()])
}

/// `S(k) = K(−K⁻¹(k))`.
pub fn antipode_from(k: &MomentumMap, kinv: &MomentumMap) -> MomentumMap {
    k.compose(&[kinv.neg().comps()])
}

/// The series `q(k) = −k + O(a)` with `D(k, q(k)) = 0`.
pub fn solve_d_zero(d: &MomentumMap) -> MomentumMap {
    let ctx = d.ctx();
    let k = MomentumMap::symbols(ctx, 0);
    let mut q: Vec<Poly> = k.iter().map(|c| -c).collect();
    for _ in 0..ctx.order {
        let dq = d.compose(&[k.as_slice(), q.as_slice()]);
        q = (0..ctx.dim).map(|mu| &q[mu] - dq.comp(mu)).collect();
    }
    MomentumMap::new(1, q)
}

/// `D_φ(k, q) = K(D_s(K⁻¹(k), K⁻¹(q)))`.
pub fn d_via_symmetric(k: &MomentumMap, kinv: &MomentumMap, d_s: &MomentumMap) -> MomentumMap {
    let kinv_q: Vec<Poly> = kinv.comps().iter().map(|c| c.move_block(Block::K, Block::Q)).collect();
    let inner = d_s.compose(&[kinv.comps(), kinv_q.as_slice()]);
    k.compose(&[inner.comps()])
}

/// Every momentum function of a realization, computed once.
#[derive(Clone, Debug)]
pub struct MomentumData {
    pub flow: FlowResult,
    pub k: MomentumMap,
    pub kinv: MomentumMap,
    pub d: MomentumMap,
    pub s: MomentumMap,
}

impl MomentumData {
    pub fn compute(r: &Realization) -> Self {
        let flow = flow_p(r);
        let k = k_map(&flow);
        let kinv = k_inverse(&k);
        let d = d_from(&flow, &kinv);
        let s = antipode_from(&k, &kinv);
        MomentumData { flow, k, kinv, d, s }
    }

    pub fn ctx(&self) -> Ctx {
        self.k.ctx()
    }

    /// The dual addition law `D̃(k, q) = D(q, k)`.
    pub fn dual_d(&self) -> MomentumMap {
        swap_slots(&self.d)
    }
}

/// `F(k, q) ↦ F(q, k)`.
pub fn swap_slots(m: &MomentumMap) -> MomentumMap {
    let ctx = m.ctx();
    let k = MomentumMap::symbols(ctx, 0);
    let q = MomentumMap::symbols(ctx, 1);
    m.compose(&[q.as_slice(), k.as_slice()])
}

fn momentum_degree(m: &crate::algebra::Mono) -> usize {
    m.block_degree(Block::K) + m.block_degree(Block::Q)
}

/// `ρ(i u x̂)` for the faithful representation
/// `ρ(x̂_μ) = [[i a_μ 1_n, e_μ], [0, 0]]`, `u` in the given block.
fn rho(ctx: Ctx, u: Block) -> PolyMatrix {
    let n = ctx.dim;
    let mut m = PolyMatrix::zero(ctx, n + 1, n + 1);
    let au = Poly::dot(ctx, Block::A, u);
    // i · i(au) on the diagonal
    for j in 0..n {
        m.set(j, j, -&au);
    }
    for mu in 0..n {
        m.set(mu, n, Poly::var(ctx, u, mu).scale(&GaussRat::imag(Rat::int(eta(mu)))));
    }
    m
}

/// `D_s(k, q)` from `log(exp(ρ(ikx̂)) exp(ρ(iqx̂)))` in the matrix
/// representation of the κ-Minkowski Lie algebra.
pub fn d_symmetric_matrix_oracle(ctx: Ctx) -> MomentumMap {
    let n = ctx.dim;
    let maxp = ctx.order + 1;
    let keep = move |m: &crate::algebra::Mono| momentum_degree(m) <= maxp;
    let ek = rho(ctx, Block::K).exp_series(maxp, &keep);
    let eq = rho(ctx, Block::Q).exp_series(maxp, &keep);
    let prod = ek.mul_filtered(&eq, &keep);
    let lg = prod.log_series(maxp, &keep);
    let minus_i = GaussRat::imag(Rat::int(-1));
    MomentumMap::new(2, (0..n).map(|mu| lg.get(mu, n).scale(&minus_i).scale_int(eta(mu))).collect())
}

/// Structural identities every realization must satisfy.
pub fn check_basic(data: &MomentumData) -> Vec<(&'static str, bool)> {
    let ctx = data.ctx();
    let k = MomentumMap::symbols(ctx, 0);
    let zero = vec![Poly::zero(ctx); ctx.dim];
    let q_as_k = MomentumMap::identity(ctx, 0);
    let d_k0 = data.d.compose(&[k.as_slice(), zero.as_slice()]);
    let d_0q = data.d.compose(&[zero.as_slice(), MomentumMap::symbols(ctx, 1).as_slice()]);
    let q = MomentumMap::identity(ctx, 1);
    let d_ks = data.d.compose(&[k.as_slice(), data.s.comps()]);
    let d_sk = data.d.compose(&[data.s.comps(), k.as_slice()]);
    vec![
        ("D(k,0) = k", d_k0.comps() == q_as_k.comps()),
        ("D(0,q) = q", d_0q.comps() == q.comps()),
        ("K(0) = 0", data.k.compose(&[zero.as_slice()]).is_zero()),
        ("S(0) = 0", data.s.compose(&[zero.as_slice()]).is_zero()),
        ("D(k,S(k)) = 0", d_ks.is_zero()),
        ("D(S(k),k) = 0", d_sk.is_zero()),
        ("homogeneous", data.d.is_homogeneous() && data.k.is_homogeneous() && data.s.is_homogeneous()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realizations::catalog;

    fn kv(ctx: Ctx, b: Block) -> Vec<Poly> {
        (0..ctx.dim).map(|mu| Poly::var(ctx, b, mu)).collect()
    }

    #[test]
    fn left_and_right_kernels() {
        let ctx = Ctx::new(3, 4).unwrap();
        let k = kv(ctx, Block::K);
        let q = kv(ctx, Block::Q);
        let ak = Poly::dot(ctx, Block::A, Block::K);
        let aq = Poly::dot(ctx, Block::A, Block::Q);
        let left = MomentumData::compute(&catalog("left", ctx).unwrap());
        let right = MomentumData::compute(&catalog("right", ctx).unwrap());
        for mu in 0..3 {
            assert_eq!(left.d.comp(mu), &(&q[mu] + &(&k[mu] * &(&Poly::one(ctx) + &aq))));
            assert_eq!(right.d.comp(mu), &(&k[mu] + &(&q[mu] * &(&Poly::one(ctx) - &ak))));
        }
    }

    #[test]
    fn symmetric_basis() {
        let ctx = Ctx::new(2, 3).unwrap();
        let sym = MomentumData::compute(&catalog("symmetric", ctx).unwrap());
        assert_eq!(sym.k.comps(), &kv(ctx, Block::K)[..]);
        assert_eq!(sym.d, d_symmetric_matrix_oracle(ctx));
        let minus_k: Vec<Poly> = kv(ctx, Block::K).iter().map(|c| -c).collect();
        assert_eq!(sym.s.comps(), &minus_k[..]);
    }

    #[test]
    fn catalog_basic_properties() {
        let ctx = Ctx::new(2, 3).unwrap();
        let sym = MomentumData::compute(&catalog("symmetric", ctx).unwrap());
        for name in crate::realizations::CATALOG {
            let data = MomentumData::compute(&catalog(name, ctx).unwrap());
            for (label, ok) in check_basic(&data) {
                assert!(ok, "{name}: {label}");
            }
            assert_eq!(solve_d_zero(&data.d), data.s, "{name}");
            assert_eq!(d_via_symmetric(&data.k, &data.kinv, &sym.d), data.d, "{name}");
        }
    }
}
