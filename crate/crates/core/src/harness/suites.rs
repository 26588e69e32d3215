//! The verification suites behind `umemura verify`, one per acceptance
//! criterion.

use std::sync::OnceLock;
use std::thread;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::Config;
use super::report::{CheckResult, Outcome, Report};
use crate::arith::{rat, BiPoly, Rational};
use crate::error::UmemuraError;
use crate::genfun::{
    f_from_y, integrate_linear, integrate_linear_pair, riccati_formal_residual, riccati_numeric_residual, wronskian,
};
use crate::ode::Tolerance;
use crate::pv::{build_rational_solution, pv_parameters, pv_residual, PVParams};
use crate::special::{
    frobenius_exponents, heun_grid, heunc_coefficients, heunc_ode, heunc_ode_residual, heunc_series,
    kummer_vs_integration, verify_heun_branch, verify_kummer_branch, Basis, HeunCParams, L7Coefficients, Verdict,
};
use crate::umemura::{
    build_hankel, compute_entries, cross_check_against, leading_principal_minors, sigma_recurrence_table, triangular,
    verify_scaled_toda, RValue,
};

/// Largest `n` in the polynomiality and degree checks.
pub const POLY_N: usize = 12;
/// Largest `n` in the scaled Toda check.
pub const TODA_N: usize = 8;
/// Largest `n` for the P_V check with symbolic `r`.
pub const PV_SYMBOLIC_N: usize = 4;
pub const HANKEL_SECONDS: f64 = 60.0;
pub const PV_SECONDS: f64 = 120.0;
const DRAW_SEED: u64 = 0x5eed_0d1e;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Hankel,
    Polynomiality,
    Degree,
    Pv,
    Riccati,
    Toda,
    Linear,
    Kummer,
    Frobenius,
    HeunC,
    HeunBranch,
}

pub const ALL: [Suite; 11] = [
    Suite::Hankel,
    Suite::Polynomiality,
    Suite::Degree,
    Suite::Pv,
    Suite::Riccati,
    Suite::Toda,
    Suite::Linear,
    Suite::Kummer,
    Suite::Frobenius,
    Suite::HeunC,
    Suite::HeunBranch,
];

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Hankel => "hankel",
            Suite::Polynomiality => "polynomiality",
            Suite::Degree => "degree",
            Suite::Pv => "pv",
            Suite::Riccati => "riccati",
            Suite::Toda => "toda",
            Suite::Linear => "linear",
            Suite::Kummer => "kummer",
            Suite::Frobenius => "frobenius",
            Suite::HeunC => "heunc",
            Suite::HeunBranch => "heun-branch",
        }
    }

    pub fn criterion(self) -> usize {
        ALL.iter().position(|&s| s == self).expect("listed") + 1
    }

    /// `all`, a suite name, or a criterion number.
    pub fn parse_selection(text: &str) -> Option<Vec<Suite>> {
        if text == "all" {
            return Some(ALL.to_vec());
        }
        text.split(',')
            .map(|part| {
                let part = part.trim();
                ALL.iter().copied().find(|s| s.name() == part || part.parse() == Ok(s.criterion()))
            })
            .collect()
    }

    pub fn run(self, ctx: &Context) -> Vec<CheckResult> {
        match self {
            Suite::Hankel => hankel(ctx),
            Suite::Polynomiality => polynomiality(ctx),
            Suite::Degree => degree(ctx),
            Suite::Pv => pv(ctx),
            Suite::Riccati => riccati(ctx),
            Suite::Toda => toda(ctx),
            Suite::Linear => linear(ctx),
            Suite::Kummer => kummer(ctx),
            Suite::Frobenius => frobenius(ctx),
            Suite::HeunC => heunc(ctx),
            Suite::HeunBranch => heun_branch(ctx),
        }
    }
}

/// Settings shared by the suites of one run, with the symbolic recurrence
/// table computed once on first use.
pub struct Context<'a> {
    pub cfg: &'a Config,
    pub max_n: Option<usize>,
    table_n: usize,
    table: OnceLock<Result<Vec<BiPoly>, UmemuraError>>,
}

impl<'a> Context<'a> {
    pub fn new(cfg: &'a Config, max_n: Option<usize>, suites: &[Suite]) -> Self {
        let mut ctx = Self { cfg, max_n, table_n: 1, table: OnceLock::new() };
        ctx.table_n = suites
            .iter()
            .map(|s| match s {
                Suite::Hankel => ctx.hankel_n(),
                Suite::Polynomiality | Suite::Degree => ctx.cap(POLY_N),
                Suite::Toda => ctx.cap(TODA_N) + 1,
                _ => 1,
            })
            .max()
            .unwrap_or(1);
        ctx
    }

    pub fn cap(&self, n: usize) -> usize {
        self.max_n.map_or(n, |m| n.min(m))
    }

    fn hankel_n(&self) -> usize {
        self.cap(self.cfg.n_max_symbolic)
    }

    fn tol(&self) -> Tolerance {
        Tolerance { rtol: self.cfg.integrator_tol, atol: self.cfg.integrator_tol * 1e-2 }
    }

    /// `sigma_0..` with symbolic `r`, at least through the largest `n` any
    /// selected suite needs.
    pub fn symbolic_table(&self) -> Result<&[BiPoly], &UmemuraError> {
        self.table.get_or_init(|| sigma_recurrence_table(self.table_n, &RValue::Symbolic)).as_deref()
    }
}

/// Runs `suites` concurrently and assembles the results in suite order.
pub fn run_suites(cfg: &Config, max_n: Option<usize>, suites: &[Suite]) -> Report {
    let ctx = Context::new(cfg, max_n, suites);
    let ctx = &ctx;
    let mut report = Report::default();
    thread::scope(|scope| {
        let jobs: Vec<_> = suites.iter().map(|&s| scope.spawn(move || s.run(ctx))).collect();
        for (job, suite) in jobs.into_iter().zip(suites) {
            match job.join() {
                Ok(results) => report.extend(results),
                Err(_) => {
                    report.push(CheckResult::timed(suite.name(), "", || (Outcome::Fail, "suite panicked".into())))
                }
            }
        }
    });
    report
}

fn id(suite: Suite, part: &str) -> String {
    if part.is_empty() {
        format!("{}-{}", suite.criterion(), suite.name())
    } else {
        format!("{}-{}/{}", suite.criterion(), suite.name(), part)
    }
}

fn pass_if(ok: bool) -> Outcome {
    CheckResult::pass_if(ok)
}

fn hankel(ctx: &Context) -> Vec<CheckResult> {
    let n = ctx.hankel_n();
    vec![CheckResult::timed(&id(Suite::Hankel, ""), format!("2 <= n <= {n}, r symbolic"), || {
        let start = Instant::now();
        let table = match ctx.symbolic_table() {
            Ok(t) => t,
            Err(e) => return (Outcome::Fail, e.to_string()),
        };
        let rep = cross_check_against(table, n, &RValue::Symbolic);
        let secs = start.elapsed().as_secs_f64();
        let errors: Vec<String> = rep.rows.iter().filter_map(|r| r.error.clone()).collect();
        let detail = format!(
            "mismatches {:?}{}; {:.1}s (limit {HANKEL_SECONDS}s)",
            rep.mismatches(),
            if errors.is_empty() { String::new() } else { format!(", errors {errors:?}") },
            secs
        );
        (pass_if(rep.all_equal() && secs < HANKEL_SECONDS), detail)
    })]
}

fn polynomiality(ctx: &Context) -> Vec<CheckResult> {
    let n = ctx.cap(POLY_N);
    let rec =
        CheckResult::timed(&id(Suite::Polynomiality, "recurrence"), format!("n <= {n}, r symbolic"), || {
            match ctx.symbolic_table() {
                Ok(t) => (Outcome::Pass, format!("all divisions exact through sigma_{}", t.len() - 1)),
                Err(e) => (Outcome::Fail, e.to_string()),
            }
        });
    let det = CheckResult::timed(&id(Suite::Polynomiality, "hankel"), format!("n <= {n}, r symbolic"), || {
        let seq = compute_entries(2 * n - 2, &RValue::Symbolic);
        let h = match build_hankel(n, &seq) {
            Ok(h) => h,
            Err(e) => return (Outcome::Fail, e.to_string()),
        };
        let minors = leading_principal_minors(&h.rows());
        if minors.len() < n {
            return (Outcome::Fail, format!("leading minor {} vanishes", minors.len()));
        }
        let table = ctx.symbolic_table().ok();
        let mut bad = Vec::new();
        let mut differ = Vec::new();
        for (k, m) in minors.iter().enumerate().map(|(i, m)| (i + 1, m)) {
            match m.div_t_pow(triangular(k)) {
                Ok(s) => {
                    if table.and_then(|t| t.get(k)).is_some_and(|rec| *rec != s) {
                        differ.push(k);
                    }
                }
                Err(_) => bad.push(k),
            }
        }
        (
            pass_if(bad.is_empty() && differ.is_empty()),
            format!(
                "not divisible by t^(k(k-1)/2) for k in {bad:?}; quotient differs from recurrence for k in {differ:?}"
            ),
        )
    });
    vec![rec, det]
}

fn degree_law(table: &[BiPoly]) -> Vec<usize> {
    table
        .iter()
        .enumerate()
        .filter(|(n, s)| {
            let e = triangular(*n);
            let lead = BiPoly::constant(Rational::new(1.into(), num_bigint::BigInt::from(8u8).pow(e as u32)));
            s.deg_t() != Some(e) || s.leading_t_coeff() != lead
        })
        .map(|(n, _)| n)
        .collect()
}

fn degree(ctx: &Context) -> Vec<CheckResult> {
    let n = ctx.cap(POLY_N);
    let symbolic = CheckResult::timed(&id(Suite::Degree, "sigma"), format!("n <= {n}, r symbolic"), || {
        match ctx.symbolic_table() {
            Ok(t) => {
                let bad = degree_law(&t[..=n.min(t.len() - 1)]);
                (pass_if(bad.is_empty()), format!("deg_t = n(n-1)/2 with leading 8^-(n(n-1)/2); violations {bad:?}"))
            }
            Err(e) => (Outcome::Fail, e.to_string()),
        }
    });
    let entries = CheckResult::timed(&id(Suite::Degree, "entries"), format!("n <= {n}, r symbolic"), || {
        let seq = compute_entries(n, &RValue::Symbolic);
        let bad: Vec<usize> = (0..=n).filter(|&k| seq.get(k).and_then(BiPoly::deg_t) != Some(k)).collect();
        (pass_if(bad.is_empty()), format!("deg_t a_n = n; violations {bad:?}"))
    });
    let m = ctx.cap(ctx.cfg.n_max_numeric);
    let numeric =
        CheckResult::timed(
            &id(Suite::Degree, "numeric"),
            format!("n <= {m}, r = 1/3"),
            || match sigma_recurrence_table(m, &RValue::Value(rat(1, 3))) {
                Ok(t) => {
                    let bad = degree_law(&t);
                    (pass_if(bad.is_empty()), format!("violations {bad:?}"))
                }
                Err(e) => (Outcome::Fail, e.to_string()),
            },
        );
    vec![symbolic, entries, numeric]
}

fn pv_zero(n: usize, r: &RValue, params: &PVParams) -> Result<bool, String> {
    let sol = build_rational_solution(n, r).map_err(|e| e.to_string())?;
    Ok(pv_residual(&sol, params).map_err(|e| e.to_string())?.is_zero())
}

pub const PV_R_VALUES: [(i64, i64); 5] = [(0, 1), (1, 3), (1, 2), (-2, 5), (7, 4)];

fn pv(ctx: &Context) -> Vec<CheckResult> {
    let start = Instant::now();
    let n_num = ctx.cap(ctx.cfg.pv_n_max);
    let numeric =
        CheckResult::timed(&id(Suite::Pv, "numeric"), format!("n <= {n_num}, r in {{0, 1/3, 1/2, -2/5, 7/4}}"), || {
            let mut bad = Vec::new();
            for &(p, q) in &PV_R_VALUES {
                let r = RValue::Value(rat(p, q));
                for n in 0..=n_num {
                    match pv_zero(n, &r, &pv_parameters(n, &r)) {
                        Ok(true) => {}
                        Ok(false) => bad.push(format!("(n={n}, r={r})")),
                        Err(e) => bad.push(format!("(n={n}, r={r}): {e}")),
                    }
                }
            }
            (pass_if(bad.is_empty()), format!("nonzero residuals: {bad:?}"))
        });
    let n_sym = ctx.cap(PV_SYMBOLIC_N);
    let symbolic = CheckResult::timed(&id(Suite::Pv, "symbolic"), format!("n <= {n_sym}, r symbolic"), || {
        let r = RValue::Symbolic;
        let bad: Vec<String> = (0..=n_sym)
            .filter_map(|n| match pv_zero(n, &r, &pv_parameters(n, &r)) {
                Ok(true) => None,
                Ok(false) => Some(format!("n={n}")),
                Err(e) => Some(format!("n={n}: {e}")),
            })
            .collect();
        (pass_if(bad.is_empty()), format!("nonzero residuals: {bad:?}"))
    });
    let perturbed = CheckResult::timed(&id(Suite::Pv, "perturbation"), "(n, r) = (1, 0), each parameter + 1", || {
        let r = RValue::Value(rat(0, 1));
        let base = pv_parameters(1, &r);
        let one = BiPoly::one();
        let variants = [
            ("alpha", PVParams { alpha: &base.alpha + &one, ..base.clone() }),
            ("beta", PVParams { beta: &base.beta + &one, ..base.clone() }),
            ("gamma", PVParams { gamma: &base.gamma + &one, ..base.clone() }),
            ("delta", PVParams { delta: &base.delta + &one, ..base.clone() }),
        ];
        let undetected: Vec<&str> =
            variants.iter().filter(|(_, p)| pv_zero(1, &r, p) != Ok(false)).map(|(name, _)| *name).collect();
        (pass_if(undetected.is_empty()), format!("perturbations not detected: {undetected:?}"))
    });
    let secs = start.elapsed().as_secs_f64();
    let timing = CheckResult::timed(&id(Suite::Pv, "runtime"), "", || {
        (pass_if(secs < PV_SECONDS), format!("{secs:.1}s (limit {PV_SECONDS}s)"))
    });
    vec![numeric, symbolic, perturbed, timing]
}

fn riccati(ctx: &Context) -> Vec<CheckResult> {
    let n = ctx.cfg.series_n;
    vec![CheckResult::timed(&id(Suite::Riccati, ""), format!("N = {n}, r symbolic"), || {
        let orders = riccati_formal_residual(n, &RValue::Symbolic);
        let expected: Vec<i64> = (2 - n as i64..=2).rev().collect();
        let got: Vec<i64> = orders.iter().map(|(k, _)| *k).collect();
        let nonzero: Vec<i64> = orders.iter().filter(|(_, p)| !p.is_zero()).map(|(k, _)| *k).collect();
        (
            pass_if(got == expected && nonzero.is_empty()),
            format!("orders lambda^2..lambda^{}: {} checked, nonzero at {nonzero:?}", 2 - n as i64, got.len()),
        )
    })]
}

fn toda(ctx: &Context) -> Vec<CheckResult> {
    let n = ctx.cap(TODA_N);
    vec![CheckResult::timed(&id(Suite::Toda, ""), format!("1 <= n <= {n}, r symbolic"), || {
        match ctx.symbolic_table() {
            Ok(t) => {
                let bad: Vec<usize> = (1..=n).filter(|&k| !verify_scaled_toda(k, t, &RValue::Symbolic)).collect();
                (pass_if(bad.is_empty()), format!("failing n: {bad:?}"))
            }
            Err(e) => (Outcome::Fail, e.to_string()),
        }
    })]
}

fn linear(ctx: &Context) -> Vec<CheckResult> {
    let cfg = ctx.cfg;
    let tol = ctx.tol();
    let grid = format!("t in [1, 3], lambda {:?}, r {:?}", cfg.lambda_samples, cfg.r_samples_f64());
    let mut out = Vec::new();
    out.push(CheckResult::timed(&id(Suite::Linear, "riccati"), grid.clone(), || {
        let mut worst = (0.0f64, 0.0, 0.0);
        for &lam in &cfg.lambda_samples {
            for r in cfg.r_samples_f64() {
                let res = integrate_linear(1.0, 3.0, [1.0, 0.2], lam, r, tol)
                    .map_err(|e| e.to_string())
                    .and_then(|p| riccati_numeric_residual(&p).map_err(|e| e.to_string()));
                match res {
                    Ok(v) if v > worst.0 => worst = (v, lam, r),
                    Ok(_) => {}
                    Err(e) => return (Outcome::Fail, format!("lambda {lam}, r {r}: {e}")),
                }
            }
        }
        (
            pass_if(worst.0 < cfg.residual_tol),
            format!("max |residual| {:.3e} at lambda {}, r {} (tol {:e})", worst.0, worst.1, worst.2, cfg.residual_tol),
        )
    }));
    out.push(CheckResult::timed(&id(Suite::Linear, "wronskian"), grid.clone(), || {
        let mut worst = 0.0f64;
        for &lam in &cfg.lambda_samples {
            for r in cfg.r_samples_f64() {
                let path = match integrate_linear_pair(1.0, 3.0, [1.0, 0.0], [0.0, 1.0], lam, r, tol) {
                    Ok(p) => p,
                    Err(e) => return (Outcome::Fail, e.to_string()),
                };
                let w0 = wronskian(&path[0].0, &path[0].1);
                for (a, b) in &path {
                    worst = worst.max((wronskian(a, b) - w0).abs() / w0.abs());
                }
            }
        }
        (pass_if(worst < 1e-9), format!("max relative drift {worst:.3e} (tol 1e-9)"))
    }));
    out.push(CheckResult::timed(&id(Suite::Linear, "f-identity"), grid, || {
        // the log-derivative form divides by t/8 - r; compare away from t = 8r
        let mut worst = 0.0f64;
        for &lam in &cfg.lambda_samples {
            for r in cfg.r_samples_f64() {
                let path = match integrate_linear(1.0, 3.0, [1.0, 0.2], lam, r, tol) {
                    Ok(p) => p,
                    Err(e) => return (Outcome::Fail, e.to_string()),
                };
                for s in path.iter().filter(|s| (s.t - 8.0 * r).abs() > 0.1) {
                    let via_log = match f_from_y(s) {
                        Ok(v) => v,
                        Err(e) => return (Outcome::Fail, e.to_string()),
                    };
                    let direct = s.lambda * s.y2 / s.y1;
                    // conditioning of the log form: |lambda / (t/8 - r)| (|Y1'/Y1| + |h|)
                    let h = (s.lambda - 0.75 * s.t) / (2.0 * s.t);
                    let dy1 = -h * s.y1 + (s.t / 8.0 - r) * s.y2;
                    let cond = direct.abs() + (s.lambda / (s.t / 8.0 - r)).abs() * ((dy1 / s.y1).abs() + h.abs());
                    worst = worst.max((via_log - direct).abs() / (f64::EPSILON * cond));
                }
            }
        }
        (pass_if(worst < 64.0), format!("max deviation {worst:.1} ulp of the conditioning bound (limit 64)"))
    }));
    out
}

pub const KUMMER_LAMBDAS: [f64; 3] = [0.7, 1.0, 2.3];

pub fn kummer_grid() -> Vec<f64> {
    (0..=45).map(|i| 0.5 + 0.1 * i as f64).collect()
}

fn kummer(ctx: &Context) -> Vec<CheckResult> {
    let grid = kummer_grid();
    let residual =
        CheckResult::timed(&id(Suite::Kummer, "residual"), "r = 0, lambda {0.7, 1, 2.3}, t in [0.5, 5]", || {
            let mut lines = Vec::new();
            let mut ok = true;
            for &lam in &KUMMER_LAMBDAS {
                match verify_kummer_branch(lam, &grid) {
                    Ok(reports) => {
                        ok &= reports[0].verdict == Verdict::Pass;
                        lines.push(format!(
                            "lambda {lam}: first {:.2e}, second {}",
                            reports[0].max_residual,
                            match reports[1].verdict {
                                Verdict::Undefined => "undefined".to_string(),
                                _ => format!("{:.2e}", reports[1].max_residual),
                            }
                        ));
                    }
                    Err(e) => return (Outcome::Fail, format!("lambda {lam}: {e}")),
                }
            }
            (pass_if(ok), format!("{} (tol 1e-9)", lines.join("; ")))
        });
    let tol = ctx.tol();
    let integration = CheckResult::timed(&id(Suite::Kummer, "integration"), "matched at t = 1", || {
        let mut worst = 0.0f64;
        for &lam in &KUMMER_LAMBDAS {
            match kummer_vs_integration(lam, &grid, tol) {
                Ok(d) => worst = worst.max(d),
                Err(e) => return (Outcome::Fail, e.to_string()),
            }
        }
        (pass_if(worst < 1e-7), format!("max relative deviation {worst:.3e} (tol 1e-7)"))
    });
    vec![residual, integration]
}

fn frobenius(ctx: &Context) -> Vec<CheckResult> {
    let cfg = ctx.cfg;
    vec![CheckResult::timed(
        &id(Suite::Frobenius, ""),
        format!("lambda {:?}, r {:?} and r = 0", cfg.lambda_samples, cfg.r_samples_f64()),
        || {
            let mut bad = Vec::new();
            let mut worst = 0.0f64;
            let mut check = |lam: f64, r: f64, t0: f64, expected: [f64; 2]| match frobenius_exponents(
                &L7Coefficients::new(lam, r).to_ode(),
                t0,
            ) {
                Ok(e) => {
                    let mut got = [e[0].re, e[1].re];
                    got.sort_by(|a, b| b.total_cmp(a));
                    let mut want = expected;
                    want.sort_by(|a, b| b.total_cmp(a));
                    let err = got
                        .iter()
                        .zip(&want)
                        .map(|(g, w)| (g - w).abs() / w.abs().max(1.0))
                        .fold(e[0].im.abs().max(e[1].im.abs()), f64::max);
                    worst = worst.max(err);
                    if err >= 1e-12 {
                        bad.push(format!("(lambda {lam}, r {r}, t {t0}): {got:?} vs {want:?}"));
                    }
                }
                Err(err) => bad.push(format!("(lambda {lam}, r {r}, t {t0}): {err}")),
            };
            for &lam in &cfg.lambda_samples {
                check(lam, 0.0, 0.0, [2.0 + lam / 2.0, -lam / 2.0]);
                for r in cfg.r_samples_f64().into_iter().filter(|&r| r != 0.0) {
                    check(lam, r, 0.0, [1.0 + lam / 2.0, -lam / 2.0]);
                    check(lam, r, 8.0 * r, [2.0, 0.0]);
                }
            }
            (pass_if(bad.is_empty()), format!("max error {worst:.2e} (tol 1e-12); failures {bad:?}"))
        },
    )]
}

fn random_heun(rng: &mut ChaCha8Rng) -> HeunCParams {
    HeunCParams {
        alpha: rng.random_range(-2.0..2.0),
        beta: rng.random_range(-0.5..3.0),
        gamma: rng.random_range(-2.0..2.0),
        delta: rng.random_range(-2.0..2.0),
        eta: rng.random_range(-2.0..2.0),
        z: 0.0,
    }
}

fn heunc(ctx: &Context) -> Vec<CheckResult> {
    let normalization = CheckResult::timed(&id(Suite::HeunC, "normalization"), "20 draws, z = 0", || {
        let mut rng = ChaCha8Rng::seed_from_u64(DRAW_SEED);
        let bad = (0..20).filter(|_| heunc_series(&random_heun(&mut rng)).map(|v| v.value) != Ok(1.0)).count();
        (pass_if(bad == 0), format!("{bad} draws not exactly 1"))
    });
    let first = CheckResult::timed(&id(Suite::HeunC, "v1"), "exact rational parameters", || {
        let sets: [[(i64, i64); 5]; 3] = [
            [(2, 1), (3, 2), (-2, 1), (5, 3), (-7, 4)],
            [(1, 1), (3, 2), (-2, 1), (3, 2), (-1, 4)],
            [(-1, 3), (0, 1), (1, 5), (2, 7), (9, 2)],
        ];
        let bad = sets
            .iter()
            .filter(|s| {
                let q = |i: usize| rat(s[i].0, s[i].1);
                let p: HeunCParams<Rational> =
                    HeunCParams { alpha: q(0), beta: q(1), gamma: q(2), delta: q(3), eta: q(4), z: rat(0, 1) };
                let expected = -p.mu() / (p.beta.clone() + rat(1, 1));
                heunc_coefficients(&p, 2).map(|v| v[1].clone()) != Ok(expected)
            })
            .count();
        (pass_if(bad == 0), format!("{bad} of {} parameter sets differ from -mu/(beta+1)", sets.len()))
    });
    let residual = CheckResult::timed(&id(Suite::HeunC, "ode"), "20 draws, |z| <= 0.5", || {
        let mut rng = ChaCha8Rng::seed_from_u64(DRAW_SEED + 1);
        let mut worst = 0.0f64;
        for _ in 0..20 {
            let mut p = random_heun(&mut rng);
            p.z = rng.random_range(0.01..0.5) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
            match heunc_series(&p) {
                Ok(v) => worst = worst.max(heunc_ode_residual(&p, &v)),
                Err(e) => return (Outcome::Fail, e.to_string()),
            }
        }
        (pass_if(worst < 1e-9), format!("max relative residual {worst:.2e} (tol 1e-9)"))
    });
    let tol = ctx.tol();
    let integration =
        CheckResult::timed(&id(Suite::HeunC, "integration"), "5 draws, z 0.1 -> 0.5 and -0.1 -> -0.5", || {
            let mut rng = ChaCha8Rng::seed_from_u64(DRAW_SEED + 2);
            let mut worst = 0.0f64;
            for _ in 0..5 {
                let p = random_heun(&mut rng);
                let ode = heunc_ode(&p);
                for (from, to) in [(0.1, 0.5), (-0.1, -0.5)] {
                    let run = || -> Result<f64, crate::special::SpecialError> {
                        let s0 = heunc_series(&p.at(from))?;
                        let y = ode.integrate(from, [s0.value, s0.d1], to, tol)?.last().1[0];
                        let s1 = heunc_series(&p.at(to))?.value;
                        Ok((y - s1).abs() / s1.abs().max(1.0))
                    };
                    match run() {
                        Ok(d) => worst = worst.max(d),
                        Err(e) => return (Outcome::Fail, e.to_string()),
                    }
                }
            }
            (pass_if(worst < 1e-8), format!("max deviation {worst:.2e} (tol 1e-8)"))
        });
    vec![normalization, first, residual, integration]
}

pub const HEUN_LAMBDAS: [f64; 2] = [0.5, 1.0];
pub const HEUN_RS: [f64; 3] = [0.5, 1.0, -1.0];

fn heun_branch(_ctx: &Context) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for &lam in &HEUN_LAMBDAS {
        for &r in &HEUN_RS {
            out.push(CheckResult::timed(&id(Suite::HeunBranch, ""), format!("lambda {lam}, r {r}"), || {
                match verify_heun_branch(lam, r, &heun_grid(r, 12)) {
                    Ok(rep) => {
                        let parts: Vec<String> = rep
                            .bases
                            .iter()
                            .map(|b| {
                                let which = if b.basis == Basis::First { "first" } else { "second" };
                                match b.verdict {
                                    Verdict::Undefined => format!("{which} undefined ({})", b.note),
                                    v => format!("{which} {v} {:.2e}", b.max_residual),
                                }
                            })
                            .collect();
                        let mut detail = format!(
                            "{}; exponents {:?} match {}; Heun self-residual {:.1e}",
                            parts.join(", "),
                            rep.exponents,
                            rep.exponents_match,
                            rep.heun_self_residual
                        );
                        let outcome = match rep.verdict {
                            Verdict::Pass => Outcome::Pass,
                            _ => {
                                for b in rep.bases.iter().filter(|b| b.verdict == Verdict::Mismatch) {
                                    detail.push_str(&format!("; parameters {}", b.note));
                                }
                                for (i, h) in rep.hypotheses.iter().enumerate() {
                                    detail.push_str(&format!("; hypothesis {}: {h}", i + 1));
                                }
                                Outcome::Mismatch
                            }
                        };
                        (outcome, detail)
                    }
                    Err(e) => (Outcome::Fail, e.to_string()),
                }
            }));
        }
    }
    out
}
