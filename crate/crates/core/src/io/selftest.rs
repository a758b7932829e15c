//! The invariant suite behind the `selftest` subcommand.

use std::time::Instant;

use num_traits::Signed;
use serde::Serialize;
use serde_json::json;

use super::fixtures::{self, Fixture};
use super::input::sha256_hex;
use super::report::{ErrorBlock, InputEcho, Report, Timing, TOOL, VERSION};
use super::run::Outcome;
use crate::cgkm::{ll_weight, refined_cm_weight, verify_identities};
use crate::error::{Error, Result};
use crate::exact::matrix::PivotStrategy;
use crate::exact::rational::{int, rat, Rational};
use crate::exact::sample::RationalSampler;
use crate::futaki::futaki_expansion;
use crate::graded::{ambient_dim_at, fit_hilbert_polynomial, gotzmann_number, MuConvention, Window};
use crate::koszul::{build_koszul, ChowNormalizer, LinearFormSet};
use crate::weight::{exhaustive_min_weight, gieseker_weight, initial_ideal_piece, min_weight_basis, weight_polynomial};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub fixture: String,
    pub check: String,
    pub ok: bool,
    pub detail: String,
}

struct Suite {
    checks: Vec<Check>,
}

impl Suite {
    fn push(&mut self, f: &Fixture, check: &str, ok: bool, detail: impl Into<String>) {
        self.checks.push(Check { fixture: f.name.into(), check: check.into(), ok, detail: detail.into() });
    }

    /// Records `r` as a check: `Ok` details pass, errors fail.
    fn record(&mut self, f: &Fixture, check: &str, r: Result<(bool, String)>) {
        match r {
            Ok((ok, detail)) => self.push(f, check, ok, detail),
            Err(e) => self.push(f, check, false, e.to_string()),
        }
    }
}

const EXHAUSTIVE_LIMIT: u64 = 10_000;

fn run_fixture(f: &Fixture, seed: u64, suite: &mut Suite) -> Result<()> {
    let pieces = f.pieces();
    let n_amb = f.num_vars - 1;
    let dims_ok = (0..=n_amb as u32 + 3).all(|m| {
        let p = pieces.piece(m);
        ambient_dim_at(f.num_vars, m) == (p.ideal_dim() + p.quotient_dim()).into()
    });
    suite.push(f, "piece_dimensions", dims_ok, "dim I_m + h(m) = binom(m+N, N)");

    let h = fit_hilbert_polynomial(&pieces, Window::new(0, n_amb as u32 + 4))?;
    suite.push(f, "hilbert_fit", true, format!("P = {}, m_stab = {:?}", h.poly, h.m_stab));
    let g = gotzmann_number(&h.poly).unwrap_or(0) as u32;
    let window = Window::new(h.m_stab.unwrap_or(0).max(g).max(1), h.dim as u32 + 4);

    if h.dim >= 1 {
        suite.record(
            f,
            "cgkm_identities",
            verify_identities(&h).map(|cs| {
                let bad: Vec<_> = cs.iter().filter(|c| !c.holds()).map(|c| c.identity.clone()).collect();
                (bad.is_empty(), if bad.is_empty() { format!("{} residuals are 0", cs.len()) } else { bad.join(", ") })
            }),
        );
    }

    let mut ratios: Vec<Rational> = Vec::new();
    for lambda in f.lambdas() {
        let tag = format!("{:?}", lambda.weights());
        let w = match weight_polynomial(&pieces, &lambda, window, &h) {
            Ok(w) => {
                suite.push(f, "mumford_bound", true, format!("{tag}: w = {}", w.poly));
                w
            }
            Err(e) => {
                suite.push(f, "mumford_bound", false, format!("{tag}: {e}"));
                continue;
            }
        };
        suite.record(
            f,
            "futaki_two_routes",
            futaki_expansion(&h, &w, h.dim + 1).map(|e| (true, format!("{tag}: F1 = {}", e.f1()))),
        );
        if h.dim >= 1 {
            let routes = (0..=h.dim + 1).map(|l| ll_weight(&h, &w, l)).collect::<Result<Vec<_>>>();
            suite.record(f, "ll_weight_routes", routes.map(|v| (true, format!("{tag}: {} levels", v.len()))));
            if let Ok(r) = refined_cm_weight(&h, &w, &lambda, MuConvention::Normalized) {
                if let Some(q) = r.ratio {
                    suite.push(f, "cm_sign", q.is_positive(), format!("{tag}: ratio {q}"));
                    ratios.push(q);
                }
            }
        }
        let inverse = lambda.inverse();
        let mut exhaustive_cases = 0;
        let mut greedy_ok = true;
        let mut limit_ok = true;
        let mut pair_ok = true;
        for m in window.degrees() {
            let piece = pieces.piece(m);
            let greedy = min_weight_basis(&piece, &lambda)?.0;
            if let Some(ex) = exhaustive_min_weight(&piece, &lambda, EXHAUSTIVE_LIMIT)? {
                exhaustive_cases += 1;
                greedy_ok &= ex == greedy;
            }
            let limit = initial_ideal_piece(&piece, &lambda)?;
            limit_ok &= min_weight_basis(&limit, &lambda)?.0 == greedy;
            pair_ok &= greedy + gieseker_weight(&pieces, &inverse, m, Some(&h))? <= 0;
        }
        suite.push(f, "greedy_vs_exhaustive", greedy_ok, format!("{tag}: {exhaustive_cases} degrees enumerated"));
        suite.push(f, "limit_invariance", limit_ok, tag.clone());
        suite.push(f, "inverse_pair", pair_ok, format!("{tag}: w(λ) + w(-λ) <= 0"));
    }
    if !ratios.is_empty() {
        let constant = ratios.iter().all(|r| r == &ratios[0]);
        suite.push(f, "cm_ratio_constant", constant, format!("ratio {}", ratios[0]));
    }

    let mut sampler = RationalSampler::new(seed, 100);
    let m0 = h.m_stab.unwrap_or(0).max(1);
    let count = h.dim + 1;
    let normalizer = ChowNormalizer::seeded(&pieces, count, m0, seed, 100)?;
    let next = ChowNormalizer::with_reference(&pieces, normalizer.reference.clone(), m0 + 1)?;
    let forms = LinearFormSet::random(&mut sampler, count, f.num_vars);
    let mut vals = Vec::new();
    for m in [m0, m0 + 1] {
        let c = build_koszul(&pieces, m, &forms, Some(&h))?;
        let a = c.torsion(PivotStrategy::MinIndex)?;
        let b = c.torsion(PivotStrategy::MaxAbsNumerator)?;
        suite.push(f, "pivot_independence", a.value == b.value, format!("m = {m}"));
        vals.push(a.value);
    }
    let same = normalizer.normalize(&vals[0]) == next.normalize(&vals[1]);
    suite.push(f, "torsion_m_independence", same, format!("m = {m0}, {}", m0 + 1));
    Ok(())
}

fn conic_regression(suite: &mut Suite) -> Result<()> {
    let f = fixtures::CONIC;
    let pieces = f.pieces();
    let h = fit_hilbert_polynomial(&pieces, Window::new(1, 6))?;
    let lambda = &f.lambdas()[0];
    let w = weight_polynomial(&pieces, lambda, Window::new(2, 5), &h)?;
    let e = futaki_expansion(&h, &w, 1)?;
    let r = refined_cm_weight(&h, &w, lambda, MuConvention::Literal)?;
    let ok = w.a(2) == int(-1)
        && w.a(1) == int(1)
        && w.a(0) == int(0)
        && e.f[0] == rat(-1, 2)
        && e.f[1] == rat(3, 4)
        && r.weight == int(6)
        && r.ratio == Some(int(8));
    suite.push(
        &f,
        "regression_values",
        ok,
        format!("w = {}, F0 = {}, F1 = {}, weight = {}", w.poly, e.f[0], e.f[1], r.weight),
    );
    Ok(())
}

pub(crate) fn selftest_outcome(seed: u64) -> Outcome {
    let mut suite = Suite { checks: Vec::new() };
    let mut failure = None;
    for f in fixtures::all() {
        if let Err(e) = run_fixture(&f, seed, &mut suite) {
            suite.push(&f, "fixture", false, e.to_string());
        }
    }
    if let Err(e) = conic_regression(&mut suite) {
        suite.push(&fixtures::CONIC, "regression_values", false, e.to_string());
    }
    let failed: Vec<&Check> = suite.checks.iter().filter(|c| !c.ok).collect();
    if let Some(c) = failed.first() {
        failure = Some(Error::IdentityFailure(format!("{}: {} failed: {}", c.fixture, c.check, c.detail)));
    }
    let result = json!({
        "passed": suite.checks.len() - failed.len(),
        "failed": failed.len(),
        "checks": suite.checks,
    });
    Outcome { result: Some(result), error: failure }
}

/// `selftest` without an input file.
pub fn run_selftest(seed: u64) -> Report {
    let start = Instant::now();
    let outcome = selftest_outcome(seed);
    let names: Vec<String> = fixtures::all().iter().map(|f| f.input_json()).collect();
    Report {
        tool: TOOL.into(),
        version: VERSION.into(),
        command: "selftest".into(),
        input: InputEcho { source: "builtin".into(), sha256: sha256_hex(names.join("\n").as_bytes()) },
        job: json!({ "seed": seed, "fixtures": fixtures::all().iter().map(|f| f.name).collect::<Vec<_>>() }),
        result: outcome.result,
        error: outcome.error.as_ref().map(ErrorBlock::from),
        warnings: Vec::new(),
        timing: Timing { total_ms: start.elapsed().as_millis(), steps: Vec::new() },
    }
}
