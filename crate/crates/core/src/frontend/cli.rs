//! The `kappa` command line.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::algebra::{Block, Ctx, Poly};
use crate::error::{KappaError, Result};
use crate::frontend::expr::{parse, parse_poly};
use crate::frontend::suites::{run_suite, Suite, SuiteOptions};
use crate::hopf::HopfData;
use crate::integrals::{jacobian_measure, pairing_kernel};
use crate::momentum_maps::MomentumData;
use crate::realizations::{catalog, catalog_description, config, DerivedOps, Realization, CATALOG};
use crate::report::{Check, Report};
use crate::star::{dual_realization, StarProduct};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "kappa", version, about = "Exact series computations for kappa-Minkowski realizations")]
pub struct Cli {
    /// Spacetime dimension n
    #[arg(long, global = true)]
    pub dim: Option<usize>,
    /// Truncation order N in a
    #[arg(long, global = true)]
    pub order: Option<usize>,
    /// Catalog realization (left, right, symmetric, natural, ms)
    #[arg(long, global = true)]
    pub realization: Option<String>,
    /// TOML realization file
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Monomial degree bound for star-product checks
    #[arg(long, global = true, default_value_t = 2)]
    pub degree: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Catalog realizations
    Realizations {
        #[command(subcommand)]
        action: RealizationsAction,
    },
    /// f ⋆ g for polynomials in x, or D(k,q) for plane waves exp(i*k.x)
    Star { f: String, g: String },
    /// K, K⁻¹, D, S and P of the realization
    Kernel,
    /// Δ of an operator: an expression in d0.. (∂) or Z, Zinv, box, D<μ>, dL<μ>
    Coproduct { op: String },
    /// S of an operator, same syntax as coproduct
    Antipode { op: String },
    /// det ∂D(S(k),q)/∂q at q = k, and its reciprocal
    Jacobian,
    /// φ̃ of the dual realization
    Dual,
    /// Run a verification suite
    Verify {
        #[arg(value_parser = ["kappa", "jacobi", "hopf", "star", "duality", "integrals", "translation", "appendix", "all"])]
        suite: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum RealizationsAction {
    List,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobConfig {
    pub dim: usize,
    pub order: usize,
    pub realizations: Vec<String>,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonReport {
    pub command: String,
    pub config: JobConfig,
    pub results: Vec<Check>,
}

/// Result of one invocation: what to print and the exit code.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

const DEFAULT_DIM: usize = 4;
const DEFAULT_ORDER: usize = 3;

impl Cli {
    fn ctx(&self) -> Result<Ctx> {
        let ctx = Ctx::new(self.dim.unwrap_or(DEFAULT_DIM), self.order.unwrap_or(DEFAULT_ORDER))?;
        if ctx.dim < 2 {
            return Err(KappaError::BadDimension(ctx.dim));
        }
        Ok(ctx)
    }

    /// The selected realizations; `all_by_default` picks the whole catalog
    /// when nothing is selected.
    fn realizations(&self, all_by_default: bool) -> Result<Vec<Realization>> {
        if let Some(path) = &self.config {
            return Ok(vec![config::load(path, self.dim, self.order)?]);
        }
        let ctx = self.ctx()?;
        match self.realization.as_deref() {
            Some("all") => CATALOG.iter().map(|n| catalog(n, ctx)).collect(),
            Some(name) => Ok(vec![catalog(name, ctx)?]),
            None if all_by_default => CATALOG.iter().map(|n| catalog(n, ctx)).collect(),
            None => Ok(vec![catalog("natural", ctx)?]),
        }
    }

    fn command_name(&self) -> String {
        match &self.command {
            Command::Realizations { .. } => "realizations list".into(),
            Command::Star { .. } => "star".into(),
            Command::Kernel => "kernel".into(),
            Command::Coproduct { .. } => "coproduct".into(),
            Command::Antipode { .. } => "antipode".into(),
            Command::Jacobian => "jacobian".into(),
            Command::Dual => "dual".into(),
            Command::Verify { suite } => format!("verify {suite}"),
        }
    }
}

fn info(name: impl Into<String>, value: impl ToString) -> Check {
    Check::flag(name, true, value.to_string())
}

fn single(cli: &Cli) -> Result<Realization> {
    Ok(cli.realizations(false)?.swap_remove(0))
}

/// A named derived operator or a polynomial in the `d` block.
fn operator(src: &str, ops: &DerivedOps, ctx: Ctx) -> Result<Poly> {
    let s = src.trim();
    let indexed = |prefix: &str, list: &[crate::weyl::WeylOp]| -> Option<Poly> {
        let idx: usize = s.strip_prefix(prefix)?.parse().ok()?;
        list.get(idx).map(|o| o.poly().clone())
    };
    let named = match s {
        "Z" => Some(ops.z.poly().clone()),
        "Zinv" => Some(ops.z_inv.poly().clone()),
        "box" => Some(ops.box_op.poly().clone()),
        _ => indexed("dL", &ops.d_left).or_else(|| indexed("D", &ops.d)),
    };
    match named {
        Some(p) => Ok(p),
        None => {
            let p = parse_poly(ctx, s)?;
            if p.contains_block(Block::X) || [Block::V, Block::K, Block::Q, Block::W].iter().any(|&b| p.contains_block(b)) {
                return Err(KappaError::Config("operators are polynomials in a and d (∂)".into()));
            }
            Ok(p)
        }
    }
}

fn compute(cli: &Cli) -> Result<Report> {
    let mut rep = Report::new();
    match &cli.command {
        Command::Realizations { action: RealizationsAction::List } => {
            for name in CATALOG {
                rep.push(info(name, catalog_description(name)));
            }
        }
        Command::Star { f, g } => {
            let r = single(cli)?;
            let ctx = r.ctx();
            let (ef, eg) = (parse(f)?, parse(g)?);
            match (ef.as_plane_wave(), eg.as_plane_wave()) {
                (Some(bf), Some(bg)) => {
                    let data = MomentumData::compute(&r);
                    let syms = |b: Block| -> Vec<Poly> { (0..ctx.dim).map(|mu| Poly::var(ctx, b, mu)).collect() };
                    let args = [syms(bf), syms(bg)];
                    let d = data.d.compose(&[args[0].as_slice(), args[1].as_slice()]);
                    for (mu, c) in d.comps().iter().enumerate() {
                        rep.push(info(format!("D_{mu}"), c));
                    }
                }
                (None, None) => {
                    let (pf, pg) = (ef.to_poly(ctx)?, eg.to_poly(ctx)?);
                    if pf.contains_block(Block::D) || pg.contains_block(Block::D) {
                        return Err(KappaError::Config("star arguments are functions of x".into()));
                    }
                    let result = StarProduct::new(&r).star(&pf, &pg);
                    rep.push(info(format!("{f} * {g}"), result));
                }
                _ => return Err(KappaError::Config("mix of plane wave and polynomial".into())),
            }
        }
        Command::Kernel => {
            let data = MomentumData::compute(&single(cli)?);
            for (name, m) in [("K", &data.k), ("K⁻¹", &data.kinv), ("D", &data.d), ("S", &data.s), ("P", &data.flow.p)] {
                for (mu, c) in m.comps().iter().enumerate() {
                    rep.push(info(format!("{name}_{mu}"), c));
                }
            }
        }
        Command::Coproduct { op } | Command::Antipode { op } => {
            let r = &single(cli)?;
            let ops = DerivedOps::compute(r)?;
            let f = operator(op, &ops, r.ctx())?;
            let h = HopfData::from_momentum(&MomentumData::compute(r));
            if matches!(cli.command, Command::Coproduct { .. }) {
                rep.push(info(format!("Δ({op})"), h.coproduct_of(&f)));
            } else {
                rep.push(info(format!("S({op})"), h.antipode_of(&f)));
            }
        }
        Command::Jacobian => {
            let data = MomentumData::compute(&single(cli)?);
            rep.push(info("det ∂D(S(k),q)/∂q |q=k", jacobian_measure(&data)));
            rep.push(info("1/det", pairing_kernel(&data)?));
        }
        Command::Dual => {
            let r = &single(cli)?;
            let pair = dual_realization(r, &MomentumData::compute(r))?;
            for (al, row) in pair.dual.phi().iter().enumerate() {
                for (mu, p) in row.iter().enumerate() {
                    rep.push(info(format!("φ̃_{al}{mu}"), p));
                }
            }
        }
        Command::Verify { suite } => {
            let suite: Suite = suite.parse()?;
            let rs = cli.realizations(true)?;
            let opts = SuiteOptions { degree: cli.degree, ..SuiteOptions::default() };
            rep.extend(run_suite(suite, &rs, &opts)?);
        }
    }
    Ok(rep)
}

fn job_config(cli: &Cli) -> JobConfig {
    let verify = matches!(cli.command, Command::Verify { .. });
    let realizations = match cli.realizations(verify) {
        Ok(rs) => rs.iter().map(|r| r.name().to_string()).collect(),
        Err(_) => Vec::new(),
    };
    JobConfig {
        dim: cli.dim.unwrap_or(DEFAULT_DIM),
        order: cli.order.unwrap_or(DEFAULT_ORDER),
        realizations,
        degree: cli.degree,
    }
}

fn render(cli: &Cli, rep: &Report) -> String {
    match cli.format {
        Format::Json => {
            let j = JsonReport { command: cli.command_name(), config: job_config(cli), results: rep.checks.clone() };
            serde_json::to_string_pretty(&j).expect("report serializes") + "\n"
        }
        Format::Text => match cli.command {
            Command::Verify { .. } => {
                let failed = rep.failures().count();
                format!("{rep}{} checks, {failed} failed\n", rep.len())
            }
            _ => rep.checks.iter().map(|c| format!("{} = {}\n", c.name, c.value)).collect(),
        },
    }
}

fn is_usage(e: &KappaError) -> bool {
    matches!(
        e,
        KappaError::Parse { .. } | KappaError::UnknownSymbol { .. } | KappaError::Config(_) | KappaError::BadDimension(_) | KappaError::BadOrder(_)
    )
}

/// Runs a parsed command line.
pub fn run_cli(cli: &Cli) -> Outcome {
    match compute(cli) {
        Ok(rep) => Outcome { output: render(cli, &rep), code: if rep.passed() { 0 } else { 1 } },
        Err(e) => {
            let code = if is_usage(&e) { 2 } else { 1 };
            let rep = Report { checks: vec![Check::flag("error", false, e.to_string())] };
            let output = match cli.format {
                Format::Json => render(cli, &rep),
                Format::Text => format!("error: {e}\n"),
            };
            Outcome { output, code }
        }
    }
}

/// Parses `argv` (including the program name) and runs it.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(argv) {
        Ok(cli) => run_cli(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            Outcome { output: e.render().to_string(), code }
        }
    }
}
