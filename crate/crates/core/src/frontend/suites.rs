//! Named verification suites, each a list of exact-residual checks.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::algebra::{Block, Ctx, MomentumMap, Poly, Rat};
use crate::consistency::{
    check_algebra_relations, check_correspondence_formula, check_covariant_dictionary, check_jacobi_pdes,
    check_linear_oracle, jacobi_xxp, linear_coefficients, perturb_gamma2, sample_triples,
};
use crate::error::{KappaError, Result};
use crate::hopf::{check_hopf_axioms, check_lorentz, check_natural_basis, check_time_like, HopfData};
use crate::integrals::{check_jacobian, check_partial_integration, check_quasicyclicity, check_star_conjugation, jacobian_measure, pairing_kernel};
use crate::momentum_maps::{check_basic, d_symmetric_matrix_oracle, d_via_symmetric, solve_d_zero, MomentumData};
use crate::realizations::{catalog, DerivedOps, Realization};
use crate::report::{Check, Report};
use crate::star::{
    check_associativity, check_compatibility, check_dual_partner, check_duality, check_kernel_associativity,
    check_paths_agree, check_translation, check_xhat_leibniz, dual_realization, StarProduct,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Kappa,
    Jacobi,
    Hopf,
    Star,
    Duality,
    Integrals,
    Translation,
    Appendix,
    All,
}

impl Suite {
    pub const EACH: [Suite; 8] = [
        Suite::Kappa,
        Suite::Jacobi,
        Suite::Hopf,
        Suite::Star,
        Suite::Duality,
        Suite::Integrals,
        Suite::Translation,
        Suite::Appendix,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Kappa => "kappa",
            Suite::Jacobi => "jacobi",
            Suite::Hopf => "hopf",
            Suite::Star => "star",
            Suite::Duality => "duality",
            Suite::Integrals => "integrals",
            Suite::Translation => "translation",
            Suite::Appendix => "appendix",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = KappaError;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| KappaError::Config(format!("unknown suite `{s}`")))
    }
}

/// Bounds on the polynomial checks (monomial degrees, word lengths).
#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    /// Monomial degree for star-product and duality checks.
    pub degree: usize,
    /// Monomial degree for the translation and Lorentz-action checks.
    pub action_degree: usize,
    /// Longest x̂-word in the Leibniz identities.
    pub max_word: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { degree: 2, action_degree: 1, max_word: 2 }
    }
}

/// Everything a realization's suites share, computed once.
struct Prepared<'a> {
    r: &'a Realization,
    data: MomentumData,
    ops: DerivedOps,
    hopf: HopfData,
    sp: StarProduct,
}

impl<'a> Prepared<'a> {
    fn new(r: &'a Realization) -> Result<Self> {
        let data = MomentumData::compute(r);
        let ops = DerivedOps::compute(r)?;
        let hopf = HopfData::from_momentum(&data);
        let sp = StarProduct::new(r);
        Ok(Prepared { r, data, ops, hopf, sp })
    }
}

fn momentum_checks(p: &Prepared) -> Report {
    let mut rep = Report::new();
    for (label, ok) in check_basic(&p.data) {
        rep.push(Check::flag(label, ok, if ok { "0" } else { "violated" }));
    }
    let ctx = p.r.ctx();
    let d_s = if p.r.name() == "symmetric" {
        p.data.d.clone()
    } else {
        match catalog("symmetric", ctx) {
            Ok(s) => MomentumData::compute(&s).d,
            Err(_) => return rep,
        }
    };
    let res = d_via_symmetric(&p.data.k, &p.data.kinv, &d_s).sub(&p.data.d);
    rep.push(Check::residual("D(k,q) = K(D_s(K⁻¹(k), K⁻¹(q)))", &res, res.is_zero()));
    if p.r.name() == "symmetric" {
        let res = p.data.k.sub(&MomentumMap::identity(ctx, 0));
        rep.push(Check::residual("K_s = id", &res, res.is_zero()));
        let res = p.data.d.sub(&d_symmetric_matrix_oracle(ctx));
        rep.push(Check::residual("D_s = matrix-group BCH oracle", &res, res.is_zero()));
    }
    rep
}

fn per_realization(suite: Suite, p: &Prepared, opts: &SuiteOptions) -> Result<Report> {
    let mut rep = Report::new();
    match suite {
        Suite::Kappa => rep.extend(check_algebra_relations(p.r, &p.ops)),
        Suite::Jacobi => {
            rep.extend(check_jacobi_pdes(p.r, &p.ops)?);
            let bad = jacobi_xxp(&perturb_gamma2(&p.r.h(), Rat::ONE));
            let caught = !bad.residual_zero || p.r.order() < 2;
            rep.push(Check::flag("perturbed γ₂ is detected", caught, if caught { "detected" } else { "perturbation not detected" }));
        }
        Suite::Hopf => {
            rep.extend(momentum_checks(p));
            rep.extend(check_hopf_axioms(&p.hopf, &p.ops));
            rep.extend(check_natural_basis(&p.hopf, &p.ops));
            rep.extend(check_lorentz(&p.hopf, &p.ops, &p.sp, opts.action_degree));
            rep.extend(check_time_like(&p.hopf, &p.ops));
        }
        Suite::Star => {
            rep.extend(check_paths_agree(p.r, &p.data, opts.degree));
            rep.extend(check_associativity(&p.sp, opts.degree));
            rep.push(check_kernel_associativity(&p.data.d));
            rep.extend(check_xhat_leibniz(p.r, &p.ops, &p.sp, opts.max_word, opts.degree));
            rep.extend(check_compatibility(&p.sp, &p.hopf.delta, opts.degree));
        }
        Suite::Duality => {
            let pair = dual_realization(p.r, &p.data)?;
            if let Some(c) = check_dual_partner(&pair)? {
                rep.push(c);
            }
            rep.extend(check_duality(&pair, &p.data, &p.ops, opts.degree)?);
        }
        Suite::Integrals => {
            rep.push(check_star_conjugation(&p.data));
            rep.extend(check_partial_integration(&p.data));
            let res = solve_d_zero(&p.data.d).sub(&p.data.s);
            rep.push(Check::residual("D(k,q) = 0 solved by the antipode", &res, res.is_zero()));
            rep.push(check_quasicyclicity(&p.data, &p.ops.z.symbol_at(Block::K)));
            rep.extend(check_jacobian(p.r.name(), &p.data)?);
            let res = &(&pairing_kernel(&p.data)? * &jacobian_measure(&p.data)) - &Poly::one(p.r.ctx());
            rep.push(Check::residual("pairing kernel × J = 1", &res, res.is_zero()));
        }
        Suite::Translation => rep.extend(check_translation(p.r, &p.sp, opts.action_degree)),
        Suite::Appendix => match linear_coefficients(p.r) {
            Some(_) => rep.extend(check_correspondence_formula(p.r, 3)?),
            None => rep.push(Check::flag("first-order form", true, "not of linear form; skipped")),
        },
        Suite::All => {
            for s in Suite::EACH {
                rep.extend(per_realization(s, p, opts)?.prefixed(s.name()));
            }
        }
    }
    Ok(rep)
}

/// Realization-independent parts of the appendix suite.
fn appendix_global(ctx: Ctx) -> Result<Report> {
    let mut rep = Report::new();
    for (a, b, g) in sample_triples() {
        rep.extend(check_linear_oracle(ctx, a, b, g)?);
    }
    let r = |n: i64, d: i64| Rat::new(n, d);
    for (u, v) in [(r(0, 1), r(0, 1)), (r(0, 1), r(1, 2)), (r(1, 1), r(-1, 3)), (r(-1, 2), r(2, 1))] {
        rep.push(check_covariant_dictionary(ctx, u, v)?);
    }
    Ok(rep)
}

/// Runs `suite` on every realization (in parallel) and the global checks
/// once. Check names are prefixed with the realization name.
pub fn run_suite(suite: Suite, realizations: &[Realization], opts: &SuiteOptions) -> Result<Report> {
    let per: Vec<Result<Report>> = realizations
        .par_iter()
        .map(|r| {
            let p = Prepared::new(r)?;
            Ok(per_realization(suite, &p, opts)?.prefixed(r.name()))
        })
        .collect();
    let mut rep = Report::new();
    for r in per {
        rep.extend(r?);
    }
    if matches!(suite, Suite::Appendix | Suite::All) {
        if let Some(r) = realizations.first() {
            let g = appendix_global(r.ctx())?;
            rep.extend(if suite == Suite::All { g.prefixed("appendix") } else { g });
        }
    }
    Ok(rep)
}
