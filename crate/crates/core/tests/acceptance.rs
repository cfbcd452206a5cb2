//! Acceptance criteria 1–12. One line per criterion is printed; the test
//! fails if any criterion fails, listing which.

use std::process::Command;
use std::time::{Duration, Instant};

use kappa::algebra::poly::eta;
use kappa::algebra::{Block, Ctx, GaussRat, MomentumMap, Poly, Rat, ScalarSeries2};
use kappa::consistency::{
    check_algebra_relations, check_jacobi_pdes, check_linear_oracle, jacobi_xxp, perturb_gamma2, sample_triples,
};
use kappa::frontend::expr::parse_poly;
use kappa::hopf::{check_hopf_axioms, check_natural_basis, coproduct_partial, HopfData, TensorOp};
use kappa::integrals::{check_partial_integration, check_quasicyclicity, check_star_conjugation, jacobian_measure};
use kappa::momentum_maps::{d_symmetric_matrix_oracle, solve_d_zero, MomentumData};
use kappa::realizations::{build_type1, build_vector_like, catalog, kappa_residuals, phi_left, phi_right, phi_symmetric, DerivedOps, CATALOG};
use kappa::report::Report;
use kappa::star::{
    check_associativity, check_dual_partner, check_duality, check_paths_agree, check_translation, dual_realization, StarProduct,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn from_reports(reports: &[(String, Report)]) -> Outcome {
    let total: usize = reports.iter().map(|(_, r)| r.len()).sum();
    let failed: Vec<String> = reports
        .iter()
        .flat_map(|(label, r)| r.failures().map(move |c| format!("{label}: {}: {}", c.name, truncate(&c.value))))
        .collect();
    if failed.is_empty() {
        outcome(true, format!("{total} checks"))
    } else {
        outcome(false, format!("{} of {total} failed; first: {}", failed.len(), failed[0]))
    }
}

fn truncate(s: &str) -> String {
    if s.chars().count() > 120 {
        format!("{}…", s.chars().take(120).collect::<String>())
    } else {
        s.to_string()
    }
}

fn within(pass: bool, detail: String, t: Duration, limit: Duration) -> Outcome {
    let ok = t < limit;
    outcome(pass && ok, format!("{detail}; {:.1}s (limit {}s)", t.as_secs_f64(), limit.as_secs()))
}

fn ks(ctx: Ctx, b: Block) -> Vec<Poly> {
    (0..ctx.dim).map(|mu| Poly::var(ctx, b, mu)).collect()
}

fn minkowski(ctx: Ctx, u: Block, w: Block) -> Poly {
    (0..ctx.dim).fold(Poly::zero(ctx), |acc, mu| &acc + &(&Poly::var(ctx, u, mu) * &Poly::var(ctx, w, mu)).scale_int(eta(mu)))
}

fn c1_kappa_relations() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut count = 0;
    for n in 2..=4 {
        let ctx = Ctx::new(n, 3).unwrap();
        for name in CATALOG {
            let r = catalog(name, ctx).unwrap();
            for ((mu, nu), res) in kappa_residuals(&r.xhat()) {
                count += 1;
                if !res.is_zero() {
                    bad.push(format!("{name} n={n} ({mu},{nu})"));
                }
            }
        }
    }
    within(bad.is_empty(), format!("{count} commutators, {} nonzero", bad.len()), start.elapsed(), Duration::from_secs(30))
}

fn c2_appendix_oracle() -> Outcome {
    let ctx = Ctx::new(3, 1).unwrap();
    let mut reports = Vec::new();
    for (a, b, g) in sample_triples() {
        let label = format!("({a},{b},{g})");
        let mut rep = check_linear_oracle(ctx, a.clone(), b.clone(), g.clone()).unwrap();
        // the D and Δ∂ closed forms written out again here
        let r = kappa::realizations::build_linear(ctx, a.clone(), b.clone(), g.clone()).unwrap();
        let data = MomentumData::compute(&r);
        let (al, be, ga) = (GaussRat::real(a), GaussRat::real(b), GaussRat::real(g));
        let (k, q) = (ks(ctx, Block::K), ks(ctx, Block::Q));
        let aq = minkowski(ctx, Block::A, Block::Q);
        let ak = minkowski(ctx, Block::A, Block::K);
        let kq = minkowski(ctx, Block::K, Block::Q);
        let delta = coproduct_partial(&data);
        for mu in 0..ctx.dim {
            let brace = &(&(&k[mu] * &aq).scale(&al) + &(&Poly::a(ctx, mu) * &kq).scale(&be)) + &(&ak * &q[mu]).scale(&ga);
            let d = &(&k[mu] + &q[mu]) - &brace;
            let res = data.d.comp(mu) - &d;
            rep.push(kappa::report::Check::residual(format!("D_{mu} closed form"), &res, res.is_zero()));
            let dd = TensorOp::new(2, &(&k[mu] + &q[mu]) + &brace.mul_i());
            let res = delta[mu].sub(&dd);
            rep.push(kappa::report::Check::residual(format!("Δ∂_{mu} closed form"), &res, res.is_zero()));
        }
        reports.push((label, rep));
    }
    from_reports(&reports)
}

fn c3_exact_kernels() -> Outcome {
    let ctx = Ctx::new(3, 4).unwrap();
    let (k, q) = (ks(ctx, Block::K), ks(ctx, Block::Q));
    let aq = minkowski(ctx, Block::A, Block::Q);
    let ak = minkowski(ctx, Block::A, Block::K);
    let one = Poly::one(ctx);
    let mut rep = Report::new();
    let left = catalog("left", ctx).unwrap();
    let right = catalog("right", ctx).unwrap();
    let ld = MomentumData::compute(&left);
    let rd = MomentumData::compute(&right);
    let lops = DerivedOps::compute(&left).unwrap();
    let rops = DerivedOps::compute(&right).unwrap();
    let lh = HopfData::from_momentum(&ld);
    let rh = HopfData::from_momentum(&rd);
    for mu in 0..ctx.dim {
        let res = ld.d.comp(mu) - &(&q[mu] + &(&k[mu] * &(&one + &aq)));
        rep.push(kappa::report::Check::residual(format!("left D_{mu}"), &res, res.is_zero()));
        let res = rd.d.comp(mu) - &(&k[mu] + &(&q[mu] * &(&one - &ak)));
        rep.push(kappa::report::Check::residual(format!("right D_{mu}"), &res, res.is_zero()));
        let dl = lops.d_left[mu].poly();
        let want = TensorOp::tensor(dl, lops.z_inv.poly()).add(&TensorOp::tensor(&one, dl));
        let res = lh.coproduct_of(dl).sub(&want);
        rep.push(kappa::report::Check::residual(format!("left Δ∂^L_{mu}"), &res, res.is_zero()));
        let d = Poly::var(ctx, Block::D, mu);
        let want = TensorOp::tensor(&d, &one).add(&TensorOp::tensor(rops.z.poly(), &d));
        let res = rh.coproduct_of(&d).sub(&want);
        rep.push(kappa::report::Check::residual(format!("right Δ∂_{mu}"), &res, res.is_zero()));
    }
    from_reports(&[("N=4".into(), rep)])
}

fn c4_symmetric_basis() -> Outcome {
    let mut rep = Report::new();
    let ctx = Ctx::new(3, 4).unwrap();
    let sym = MomentumData::compute(&catalog("symmetric", ctx).unwrap());
    let res = sym.k.sub(&MomentumMap::identity(ctx, 0));
    rep.push(kappa::report::Check::residual("K_s = id, N=4", &res, res.is_zero()));
    for n in [2, 3] {
        let ctx = Ctx::new(n, 3).unwrap();
        let sym = MomentumData::compute(&catalog("symmetric", ctx).unwrap());
        let res = sym.d.sub(&d_symmetric_matrix_oracle(ctx));
        rep.push(kappa::report::Check::residual(format!("D_s flow = matrix group, n={n}"), &res, res.is_zero()));
    }
    from_reports(&[("symmetric".into(), rep)])
}

fn c5_natural_basis() -> Outcome {
    let ctx = Ctx::new(3, 3).unwrap();
    let r = catalog("natural", ctx).unwrap();
    let data = MomentumData::compute(&r);
    let ops = DerivedOps::compute(&r).unwrap();
    let h = HopfData::from_momentum(&data);
    let mut rep = check_natural_basis(&h, &ops);
    rep.extend(check_hopf_axioms(&h, &ops));
    from_reports(&[("natural".into(), rep)])
}

fn c6_hopf_axioms() -> Outcome {
    let start = Instant::now();
    let mut reports = Vec::new();
    for n in [2, 3, 4] {
        let ctx = Ctx::new(n, 3).unwrap();
        for name in CATALOG {
            let r = catalog(name, ctx).unwrap();
            let data = MomentumData::compute(&r);
            let ops = DerivedOps::compute(&r).unwrap();
            reports.push((format!("{name} n={n}"), check_hopf_axioms(&HopfData::from_momentum(&data), &ops)));
        }
    }
    let o = from_reports(&reports);
    within(o.pass, o.detail, start.elapsed(), Duration::from_secs(120))
}

fn c7_jacobi() -> Outcome {
    let ctx = Ctx::new(3, 3).unwrap();
    let w = ctx.order + 2;
    let mut realizations = vec![catalog("natural", ctx).unwrap()];
    for phi in [phi_left(w), phi_right(w), phi_symmetric(w)] {
        realizations.push(build_type1(ctx, &phi).unwrap());
    }
    let f1 = ScalarSeries2::one(w);
    let f2 = ScalarSeries2::one(w).add(&ScalarSeries2::b(w).scale(&GaussRat::real(Rat::new(1, 3))));
    for f in [f1, f2] {
        realizations.push(build_vector_like(ctx, &f).unwrap());
    }
    let mut reports = Vec::new();
    for (i, r) in realizations.iter().enumerate() {
        let ops = DerivedOps::compute(r).unwrap();
        let mut rep = check_jacobi_pdes(r, &ops).unwrap();
        rep.extend(check_algebra_relations(r, &ops));
        reports.push((format!("#{i} {}", r.name()), rep));
    }
    let o = from_reports(&reports);
    let bad = jacobi_xxp(&perturb_gamma2(&realizations[0].h(), Rat::ONE));
    let control = !bad.residual_zero;
    outcome(o.pass && control, format!("{}; perturbed γ₂ {}", o.detail, if control { "detected" } else { "NOT detected" }))
}

/// `1/√(1 + x)` with `x = a²k²`, from the binomial series.
fn natural_jacobian_oracle(ctx: Ctx) -> Poly {
    let x = &minkowski(ctx, Block::A, Block::A) * &minkowski(ctx, Block::K, Block::K);
    let mut acc = Poly::one(ctx);
    let mut pw = Poly::one(ctx);
    let mut c = Rat::ONE;
    for j in 1..=ctx.order / 2 {
        // C(j) = C(j−1)·(−(2j−1)/(2j))
        c = &c * &Rat::new(-(2 * j as i64 - 1), 2 * j as i64);
        pw = &pw * &x;
        acc = &acc + &pw.scale(&GaussRat::real(c.clone()));
    }
    acc
}

/// `((e^t − 1)/t)^{n−1} e^t` with `t = (ak)`.
fn symmetric_jacobian_oracle(ctx: Ctx, with_exp: bool) -> Poly {
    let t = minkowski(ctx, Block::A, Block::K);
    let mut e = Poly::one(ctx);
    let mut f = Poly::one(ctx);
    let mut pw = Poly::one(ctx);
    let mut fact = Rat::ONE;
    for j in 1..=ctx.order {
        pw = &pw * &t;
        fact = &fact * &Rat::int(j as i64);
        e = &e + &pw.scale(&GaussRat::real(fact.inv()));
        f = &f + &pw.scale(&GaussRat::real((&fact * &Rat::int(j as i64 + 1)).inv()));
    }
    let base = (1..ctx.dim).fold(Poly::one(ctx), |acc, _| &acc * &f);
    if with_exp {
        &base * &e
    } else {
        base
    }
}

fn c8_jacobians() -> Outcome {
    let mut nat_ok = true;
    let mut sym_ok = true;
    let mut sym_without_exp = true;
    let mut first = String::new();
    for n in 2..=4 {
        let ctx = Ctx::new(n, 4).unwrap();
        let nat = jacobian_measure(&MomentumData::compute(&catalog("natural", ctx).unwrap()));
        nat_ok &= nat == natural_jacobian_oracle(ctx);
        let sym = jacobian_measure(&MomentumData::compute(&catalog("symmetric", ctx).unwrap()));
        let res = &sym - &symmetric_jacobian_oracle(ctx, true);
        if !res.is_zero() && sym_ok {
            first = format!("n={n} symmetric residual {}", truncate(&res.to_string()));
        }
        sym_ok &= res.is_zero();
        sym_without_exp &= sym == symmetric_jacobian_oracle(ctx, false);
    }
    let detail = format!(
        "natural {}, symmetric with e^(ak) {}, symmetric without e^(ak) {}{}",
        if nat_ok { "matches" } else { "DIFFERS" },
        if sym_ok { "matches" } else { "DIFFERS" },
        if sym_without_exp { "matches" } else { "differs" },
        if first.is_empty() { String::new() } else { format!("; {first}") }
    );
    outcome(nat_ok && sym_ok, detail)
}

fn c9_integrals() -> Outcome {
    let mut reports = Vec::new();
    for n in 2..=4 {
        let ctx = Ctx::new(n, 3).unwrap();
        for name in CATALOG {
            let r = catalog(name, ctx).unwrap();
            let data = MomentumData::compute(&r);
            let ops = DerivedOps::compute(&r).unwrap();
            let mut rep = check_partial_integration(&data);
            let res = solve_d_zero(&data.d).sub(&data.s);
            rep.push(kappa::report::Check::residual("solve_D_zero = S", &res, res.is_zero()));
            rep.push(check_star_conjugation(&data));
            rep.push(check_quasicyclicity(&data, &ops.z.symbol_at(Block::K)));
            reports.push((format!("{name} n={n}"), rep));
        }
    }
    from_reports(&reports)
}

fn c10_star_algebra() -> Outcome {
    let ctx = Ctx::new(2, 2).unwrap();
    let mut reports = Vec::new();
    for name in CATALOG {
        let r = catalog(name, ctx).unwrap();
        let data = MomentumData::compute(&r);
        let sp = StarProduct::new(&r);
        let mut rep = check_associativity(&sp, 3);
        rep.extend(check_paths_agree(&r, &data, 3));
        rep.extend(check_translation(&r, &sp, 3));
        reports.push((name.to_string(), rep));
    }
    // T-images of x̂_μx̂_ν
    let ctx3 = Ctx::new(3, 2).unwrap();
    let mut rep = Report::new();
    let left = StarProduct::new(&catalog("left", ctx3).unwrap());
    let right = StarProduct::new(&catalog("right", ctx3).unwrap());
    for mu in 0..3 {
        for nu in 0..3 {
            let (xm, xn) = (Poly::var(ctx3, Block::X, mu), Poly::var(ctx3, Block::X, nu));
            let want_l = &xm * &(&xn - &Poly::a(ctx3, nu).mul_i());
            let res = &left.star(&xm, &xn) - &want_l;
            rep.push(kappa::report::Check::residual(format!("left x{mu}*x{nu} = x{mu}(x{nu} − ia{nu})"), &res, res.is_zero()));
            let want_r = &(&xm + &Poly::a(ctx3, mu).mul_i()) * &xn;
            let res = &right.star(&xm, &xn) - &want_r;
            rep.push(kappa::report::Check::residual(format!("right x{mu}*x{nu} = (x{mu} + ia{mu})x{nu}"), &res, res.is_zero()));
        }
    }
    reports.push(("T-images".into(), rep));
    from_reports(&reports)
}

fn c11_duality() -> Outcome {
    let ctx = Ctx::new(2, 2).unwrap();
    let mut reports = Vec::new();
    for name in CATALOG {
        let r = catalog(name, ctx).unwrap();
        let data = MomentumData::compute(&r);
        let ops = DerivedOps::compute(&r).unwrap();
        let pair = dual_realization(&r, &data).unwrap();
        let mut rep = check_duality(&pair, &data, &ops, 2).unwrap();
        if let Some(c) = check_dual_partner(&pair).unwrap() {
            rep.push(c);
        }
        reports.push((name.to_string(), rep));
    }
    from_reports(&reports)
}

fn c12_frontend() -> Outcome {
    let corpus = include_str!("golden/star_quadratic.txt");
    let ctx = Ctx::new(3, 2).unwrap();
    let mut lines = 0;
    let mut bad = Vec::new();
    for line in corpus.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()) {
        let parts: Vec<&str> = line.split('|').map(str::trim).collect();
        let (name, f, g, printed) = (parts[0], parts[1], parts[2], parts[3]);
        lines += 1;
        let p = parse_poly(ctx, printed).unwrap();
        if p.to_string() != printed {
            bad.push(format!("round trip: {printed} → {p}"));
        }
        let sp = StarProduct::new(&catalog(name, ctx).unwrap());
        let got = sp.star(&parse_poly(ctx, f).unwrap(), &parse_poly(ctx, g).unwrap());
        if got != p {
            bad.push(format!("{name}: {f} * {g} = {got}, golden {printed}"));
        }
    }
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_kappa")).args(["verify", "all"]).output().expect("run kappa");
    let t = start.elapsed();
    let code = out.status.code().unwrap_or(-1);
    let stdout = String::from_utf8_lossy(&out.stdout);
    let summary = stdout.lines().last().unwrap_or("").to_string();
    let fails: Vec<&str> = stdout.lines().filter(|l| l.starts_with("FAIL")).collect();
    let mut detail = format!("golden corpus {lines} lines, {} mismatches; `verify all` exit {code} ({summary})", bad.len());
    if let Some(b) = bad.first() {
        detail.push_str(&format!("; {b}"));
    }
    if let Some(f) = fails.first() {
        detail.push_str(&format!("; first failure: {}", truncate(f)));
    }
    within(bad.is_empty() && code == 0, detail, t, Duration::from_secs(300))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("1 κ-relations", c1_kappa_relations),
        ("2 appendix oracle", c2_appendix_oracle),
        ("3 exact kernels", c3_exact_kernels),
        ("4 symmetric basis", c4_symmetric_basis),
        ("5 natural basis", c5_natural_basis),
        ("6 Hopf axioms", c6_hopf_axioms),
        ("7 Jacobi PDEs", c7_jacobi),
        ("8 Jacobians", c8_jacobians),
        ("9 integral identities", c9_integrals),
        ("10 star algebra", c10_star_algebra),
        ("11 duality", c11_duality),
        ("12 frontend", c12_frontend),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        let o = run();
        println!("{} criterion {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
