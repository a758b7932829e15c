//! Subcommand dispatch.

use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use num_traits::Signed;
use serde_json::{json, Value};

use super::cache::DiskCache;
use super::input::JobSpec;
use super::report::{ErrorBlock, InputEcho, Report, Timing, TOOL, VERSION};
use crate::cgkm::{ll_weight, refined_cm_weight, solve_q_system, verify_identities, RefinedCm};
use crate::error::{Error, Result};
use crate::exact::matrix::PivotStrategy;
use crate::exact::rational::Rational;
use crate::futaki::{c_table, stability_report, LambdaRecord, StabilityVerdict, Verdict};
use crate::graded::{
    ambient_dim_at, fit_hilbert_polynomial, gotzmann_number, HilbertData, IdealPieces, MuConvention, Window,
};
use crate::koszul::{build_koszul, chow_interpolate, vanishing_order_probe, ChowNormalizer};
use crate::weight::{weight_polynomial, OnePS, WeightPolynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Command {
    Hilbert,
    Weight,
    Futaki,
    CgkmVerify,
    ChowEval,
    ChowInterp,
    Scan,
    Selftest,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::Hilbert,
        Command::Weight,
        Command::Futaki,
        Command::CgkmVerify,
        Command::ChowEval,
        Command::ChowInterp,
        Command::Scan,
        Command::Selftest,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Command::Hilbert => "hilbert",
            Command::Weight => "weight",
            Command::Futaki => "futaki",
            Command::CgkmVerify => "cgkm-verify",
            Command::ChowEval => "chow-eval",
            Command::ChowInterp => "chow-interp",
            Command::Scan => "scan",
            Command::Selftest => "selftest",
        }
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Input(format!("unknown subcommand '{s}'")))
    }
}

pub(crate) fn rat(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub(crate) fn rats<'a>(rs: impl IntoIterator<Item = &'a Rational>) -> Value {
    Value::Array(rs.into_iter().map(rat).collect())
}

fn strings<T: ToString>(xs: impl IntoIterator<Item = T>) -> Value {
    Value::Array(xs.into_iter().map(|x| Value::String(x.to_string())).collect())
}

fn window_json(w: Window) -> Value {
    json!({ "start": w.start, "len": w.len })
}

fn mu_name(conv: MuConvention) -> &'static str {
    match conv {
        MuConvention::Literal => "literal",
        MuConvention::Normalized => "normalized",
    }
}

pub(crate) fn hilbert_summary(h: &HilbertData) -> Value {
    json!({
        "dimension": h.dim,
        "degree": h.degree.to_string(),
        "polynomial": h.poly.to_string(),
        "coefficients": rats(h.poly.coeffs()),
        "binomial_coefficients": strings(&h.binomial),
        "mu_literal": rat(&h.mu_literal),
        "mu_normalized": rat(&h.mu_normalized),
        "m_stab": h.m_stab,
    })
}

pub(crate) fn weight_json(lambda: &OnePS, w: &WeightPolynomial, dim: usize) -> Value {
    let a: Vec<Rational> = (0..=dim + 1).map(|j| w.a(j)).collect();
    let samples: Vec<Value> = w
        .samples
        .values
        .iter()
        .enumerate()
        .map(|(i, v)| json!({ "m": w.samples.start + i as i64, "w": v.to_string() }))
        .collect();
    json!({
        "lambda": lambda.weights(),
        "samples": samples,
        "polynomial": w.poly.to_string(),
        "coefficients": rats(&a),
        "binomial_coefficients": w.binomial(dim + 2).map(strings).unwrap_or(Value::Null),
    })
}

fn record_json(r: &LambdaRecord, dim: usize) -> Value {
    let mut v = weight_json(&r.lambda, &r.weight, dim);
    let obj = v.as_object_mut().expect("object");
    obj.insert("F".into(), rats(&r.expansion.f));
    obj.insert("F0".into(), rat(r.expansion.f0()));
    obj.insert("F1".into(), rat(&r.f1()));
    obj.insert("opposite_convention_df".into(), rat(&r.opposite_convention_df()));
    obj.insert("hilbert_stable".into(), json!(r.hilbert_stable));
    obj.insert("hilbert_semistable".into(), json!(r.hilbert_semistable));
    obj.insert("k_stable".into(), json!(r.k_stable));
    obj.insert("k_semistable".into(), json!(r.k_semistable));
    obj.insert("failed_tests".into(), json!(r.failures()));
    v
}

fn verdict_json(v: &StabilityVerdict, dim: usize) -> Value {
    json!({
        "verdict": match v.verdict {
            Verdict::Destabilized => "destabilized",
            Verdict::Undetermined => "undetermined",
        },
        "destabilized_by": v.destabilizing.iter().map(|&i| v.records[i].lambda.weights().to_vec()).collect::<Vec<_>>(),
        "lambdas": v.records.iter().map(|r| record_json(r, dim)).collect::<Vec<_>>(),
    })
}

fn refined_json(r: &RefinedCm) -> Value {
    json!({
        "mu": rat(&r.mu),
        "weight": rat(&r.weight),
        "F1": rat(&r.f1),
        "ratio": r.ratio.as_ref().map(rat),
        "sign_agreement": r.ratio.as_ref().map(|q| q.is_positive()),
    })
}

/// Shared state of one run: the ideal's pieces, the fitted Hilbert data and
/// the defaults resolved from it.
pub(crate) struct Ctx<'a> {
    pub job: &'a JobSpec,
    pub pieces: IdealPieces,
    pub warnings: Vec<String>,
    pub steps: Vec<(String, u128)>,
    hilbert: Option<HilbertData>,
    fit_window: Option<Window>,
    gotzmann: Option<usize>,
    window: Option<Window>,
    chow_m: Option<u32>,
}

impl<'a> Ctx<'a> {
    fn new(job: &'a JobSpec, cache: Option<&Path>) -> Result<Self> {
        let pieces = match cache {
            Some(dir) => IdealPieces::with_store(job.ideal.clone(), Arc::new(DiskCache::open(dir)?)),
            None => IdealPieces::new(job.ideal.clone()),
        };
        let mut warnings = Vec::new();
        for l in &job.lambdas {
            if !l.is_special_linear() {
                warnings.push(format!(
                    "subgroup {:?} is not special linear (weights sum to {}); weights are computed as given, \
                     but the Futaki and CM comparisons assume a zero sum",
                    l.weights(),
                    l.weights().iter().sum::<i64>()
                ));
            }
        }
        Ok(Ctx {
            job,
            pieces,
            warnings,
            steps: Vec::new(),
            hilbert: None,
            fit_window: None,
            gotzmann: None,
            window: None,
            chow_m: None,
        })
    }

    fn timed<T>(&mut self, name: &str, f: impl FnOnce(&mut Self) -> T) -> T {
        let t = Instant::now();
        let out = f(self);
        self.steps.push((name.to_string(), t.elapsed().as_millis()));
        out
    }

    pub fn hilbert(&mut self) -> Result<HilbertData> {
        if let Some(h) = &self.hilbert {
            return Ok(h.clone());
        }
        let n = self.job.ideal.ambient_dim() as u32;
        let end = self.job.window.map_or(0, |w| w.end());
        let fit_window = Window::new(0, (n + 4).max(end));
        self.fit_window = Some(fit_window);
        let h = self.timed("hilbert", |c| fit_hilbert_polynomial(&c.pieces, fit_window))?;
        match gotzmann_number(&h.poly) {
            Ok(g) => self.gotzmann = Some(g),
            Err(_) => self.warnings.push(format!(
                "Hilbert polynomial {} has no Macaulay decomposition; no Gotzmann bound is available",
                h.poly
            )),
        }
        self.hilbert = Some(h.clone());
        Ok(h)
    }

    /// The weight window: as given, or from `max(m_stab, Gotzmann, 1)` with
    /// `n + 4` samples.
    pub fn window(&mut self) -> Result<Window> {
        if let Some(w) = self.window {
            return Ok(w);
        }
        let h = self.hilbert()?;
        let m_stab = h.m_stab.unwrap_or(0);
        let g = self.gotzmann.unwrap_or(0) as u32;
        let w = match self.job.window {
            Some(w) => {
                if w.start < g.max(m_stab) {
                    self.warnings.push(format!(
                        "window starts at m = {} below the Gotzmann number {g}; stabilization is inferred from \
                         the sampled Hilbert function only",
                        w.start
                    ));
                }
                w
            }
            None => Window::new(m_stab.max(g).max(1), h.dim as u32 + 4),
        };
        self.window = Some(w);
        Ok(w)
    }

    /// Degree of the Koszul complex: as given, or `max(m_stab, 1)`.
    pub fn chow_m(&mut self) -> Result<u32> {
        if let Some(m) = self.chow_m {
            return Ok(m);
        }
        let h = self.hilbert()?;
        let m = self.job.chow_m.unwrap_or_else(|| h.m_stab.unwrap_or(0).max(1));
        if m < h.m_stab.unwrap_or(0) {
            self.warnings.push(format!("Koszul degree {m} is below the stabilization bound"));
        }
        self.chow_m = Some(m);
        Ok(m)
    }

    fn job_echo(&self) -> Value {
        let j = self.job;
        json!({
            "num_vars": j.ideal.num_vars(),
            "generators": strings(j.ideal.generators()),
            "lambdas": j.lambdas.iter().map(|l| l.weights().to_vec()).collect::<Vec<_>>(),
            "window": self.window.or(j.window).map(window_json),
            "hilbert_window": self.fit_window.map(window_json),
            "mu": mu_name(j.mu),
            "order": j.order,
            "seed": j.seed,
            "allow_gl": j.allow_gl,
            "forms": j.forms.as_ref().map(JobSpec::forms_json),
            "pencil": j.pencil.as_ref().map(|(a, b)| json!({ "a": JobSpec::forms_json(a), "b": JobSpec::forms_json(b) })),
            "chow_m": self.chow_m.or(j.chow_m),
            "grid_bound": j.grid_bound,
            "grid": j.use_grid,
            "sample_bound": j.sample_bound,
        })
    }

    fn lambdas(&self) -> Result<Vec<OnePS>> {
        if self.job.lambdas.is_empty() {
            return Err(Error::Input("this subcommand needs at least one subgroup in \"lambdas\"".into()));
        }
        Ok(self.job.lambdas.clone())
    }
}

/// A result block together with an optional error; some subcommands report
/// partial results alongside a failure.
pub(crate) struct Outcome {
    pub result: Option<Value>,
    pub error: Option<Error>,
}

impl From<Result<Value>> for Outcome {
    fn from(r: Result<Value>) -> Self {
        match r {
            Ok(v) => Outcome { result: Some(v), error: None },
            Err(e) => Outcome { result: None, error: Some(e) },
        }
    }
}

/// Runs `command` on `job`. Failures are embedded in the report rather
/// than returned.
pub fn run(command: Command, job: &JobSpec, cache: Option<&Path>) -> Report {
    let start = Instant::now();
    let mut ctx = match Ctx::new(job, cache) {
        Ok(c) => c,
        Err(e) => {
            return Report {
                tool: TOOL.into(),
                version: VERSION.into(),
                command: command.as_str().into(),
                input: InputEcho { source: job.source.clone(), sha256: job.input_hash.clone() },
                job: Value::Null,
                result: None,
                error: Some(ErrorBlock::from(&e)),
                warnings: Vec::new(),
                timing: Timing { total_ms: start.elapsed().as_millis(), steps: Vec::new() },
            }
        }
    };
    let outcome: Outcome = match command {
        Command::Hilbert => cmd_hilbert(&mut ctx).into(),
        Command::Weight => cmd_weight(&mut ctx).into(),
        Command::Futaki => cmd_futaki(&mut ctx).into(),
        Command::CgkmVerify => cmd_cgkm(&mut ctx),
        Command::ChowEval => cmd_chow_eval(&mut ctx),
        Command::ChowInterp => cmd_chow_interp(&mut ctx).into(),
        Command::Scan => cmd_scan(&mut ctx).into(),
        Command::Selftest => super::selftest::selftest_outcome(job.seed),
    };
    Report {
        tool: TOOL.into(),
        version: VERSION.into(),
        command: command.as_str().into(),
        input: InputEcho { source: job.source.clone(), sha256: job.input_hash.clone() },
        job: ctx.job_echo(),
        result: outcome.result,
        error: outcome.error.as_ref().map(ErrorBlock::from),
        warnings: ctx.warnings,
        timing: Timing { total_ms: start.elapsed().as_millis(), steps: ctx.steps },
    }
}

fn cmd_hilbert(ctx: &mut Ctx) -> Result<Value> {
    let h = ctx.hilbert()?;
    let fit = ctx.fit_window.expect("set by hilbert()");
    let num_vars = ctx.job.ideal.num_vars();
    let pieces: Vec<Value> = fit
        .degrees()
        .map(|m| {
            let p = ctx.pieces.piece(m);
            json!({ "m": m, "ambient": ambient_dim_at(num_vars, m).to_string(), "ideal": p.ideal_dim(), "quotient": p.quotient_dim() })
        })
        .collect();
    let mut v = hilbert_summary(&h);
    let obj = v.as_object_mut().expect("object");
    obj.insert("num_vars".into(), json!(num_vars));
    obj.insert("gotzmann".into(), json!(ctx.gotzmann));
    obj.insert("fit_window".into(), window_json(fit));
    obj.insert("pieces".into(), Value::Array(pieces));
    Ok(v)
}

fn cmd_weight(ctx: &mut Ctx) -> Result<Value> {
    let h = ctx.hilbert()?;
    let window = ctx.window()?;
    let lambdas = ctx.lambdas()?;
    let blocks = ctx.timed("weights", |c| {
        lambdas
            .iter()
            .map(|l| weight_polynomial(&c.pieces, l, window, &h).map(|w| weight_json(l, &w, h.dim)))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(json!({ "hilbert": hilbert_summary(&h), "window": window_json(window), "lambdas": blocks }))
}

fn cmd_futaki(ctx: &mut Ctx) -> Result<Value> {
    let h = ctx.hilbert()?;
    let window = ctx.window()?;
    let lambdas = ctx.lambdas()?;
    let order = ctx.job.order;
    let v = ctx.timed("stability", |c| stability_report(&c.pieces, &h, &lambdas, window, order))?;
    let c = c_table(&h, order.max(1))?;
    let mut out = verdict_json(&v, h.dim);
    let obj = out.as_object_mut().expect("object");
    obj.insert("hilbert".into(), hilbert_summary(&h));
    obj.insert("window".into(), window_json(window));
    obj.insert("order".into(), json!(order.max(1)));
    obj.insert("c_table".into(), Value::Array(c.iter().map(|row| rats(row)).collect()));
    Ok(out)
}

fn cmd_cgkm(ctx: &mut Ctx) -> Outcome {
    let mut failure: Option<Error> = None;
    let result = (|| -> Result<Value> {
        let h = ctx.hilbert()?;
        let checks = ctx.timed("identities", |_| verify_identities(&h))?;
        if let Some(bad) = checks.iter().find(|c| !c.holds()) {
            failure = Some(Error::IdentityFailure(format!(
                "{} (l = {:?}) has residual {}",
                bad.identity, bad.l, bad.residual
            )));
        }
        let q: Vec<Value> = (0..=h.dim + 1)
            .map(|l| solve_q_system(&h, l).map(|qs| json!({ "l": l, "q": strings(&qs) })))
            .collect::<Result<_>>()?;
        let mut per_lambda = Vec::new();
        let mut ratios: [Vec<Rational>; 2] = [Vec::new(), Vec::new()];
        if !ctx.job.lambdas.is_empty() {
            let window = ctx.window()?;
            for l in ctx.job.lambdas.clone() {
                let w = weight_polynomial(&ctx.pieces, &l, window, &h)?;
                let ll = (0..=h.dim + 1).map(|k| ll_weight(&h, &w, k)).collect::<Result<Vec<_>>>();
                let ll = match ll {
                    Ok(v) => serde_json::to_value(v).expect("serializable"),
                    Err(e) => {
                        failure.get_or_insert(e);
                        Value::Null
                    }
                };
                let mut refined = serde_json::Map::new();
                if l.is_special_linear() {
                    for (k, conv) in [MuConvention::Literal, MuConvention::Normalized].into_iter().enumerate() {
                        let r = refined_cm_weight(&h, &w, &l, conv)?;
                        if let Some(q) = &r.ratio {
                            ratios[k].push(q.clone());
                        }
                        refined.insert(mu_name(conv).into(), refined_json(&r));
                    }
                }
                let mut block = weight_json(&l, &w, h.dim);
                let obj = block.as_object_mut().expect("object");
                obj.insert("ll_weights".into(), ll);
                obj.insert("refined_cm".into(), Value::Object(refined));
                per_lambda.push(block);
            }
        }
        let ratio_summary = |rs: &[Rational]| {
            let mut distinct: Vec<Rational> = Vec::new();
            for r in rs {
                if !distinct.contains(r) {
                    distinct.push(r.clone());
                }
            }
            json!({
                "ratios": rats(&distinct),
                "constant": distinct.len() <= 1,
                "all_positive": rs.iter().all(|r| r.is_positive()),
            })
        };
        let expected = Rational::from_integer(&h.degree * 2 * (h.dim + 1));
        Ok(json!({
            "hilbert": hilbert_summary(&h),
            "identities": checks,
            "q": q,
            "lambdas": per_lambda,
            "cm_ratio": {
                "literal": ratio_summary(&ratios[0]),
                "normalized": ratio_summary(&ratios[1]),
                "conjectured_ratio": rat(&expected),
            },
        }))
    })();
    match result {
        Ok(v) => Outcome { result: Some(v), error: failure },
        Err(e) => Outcome { result: None, error: Some(e) },
    }
}

fn cmd_chow_eval(ctx: &mut Ctx) -> Outcome {
    let result = (|| -> Result<(Value, Option<Error>)> {
        let forms = ctx
            .job
            .forms
            .clone()
            .ok_or_else(|| Error::Input("chow-eval needs \"forms\" in the input".into()))?;
        let h = ctx.hilbert()?;
        if forms.count() != h.dim + 1 {
            return Err(Error::Input(format!(
                "{} forms given but the subscheme has dimension {}; need {}",
                forms.count(),
                h.dim,
                h.dim + 1
            )));
        }
        let m = ctx.chow_m()?;
        let complex = build_koszul(&ctx.pieces, m, &forms, Some(&h))?;
        let normalizer = ChowNormalizer::seeded(&ctx.pieces, forms.count(), m, ctx.job.seed, ctx.job.sample_bound)?;
        let mut out = json!({
            "m": m,
            "dims": complex.dims(),
            "reference_forms": JobSpec::forms_json(&normalizer.reference),
            "reference_torsion": rat(&normalizer.reference_torsion),
        });
        let obj = out.as_object_mut().expect("object");
        let mut err = None;
        match complex.torsion(PivotStrategy::MinIndex) {
            Ok(cert) => {
                let other = complex.torsion(PivotStrategy::MaxAbsNumerator)?;
                obj.insert("incident".into(), json!(false));
                obj.insert("torsion".into(), rat(&cert.value));
                obj.insert("normalized".into(), rat(&normalizer.normalize(&cert.value)));
                obj.insert("pivot_strategies_agree".into(), json!(cert.value == other.value));
                obj.insert("certificate".into(), serde_json::to_value(&cert).expect("serializable"));
            }
            Err(e @ Error::Incidence { .. }) => {
                obj.insert("incident".into(), json!(true));
                obj.insert("torsion".into(), Value::Null);
                obj.insert("normalized".into(), Value::Null);
                err = Some(e);
            }
            Err(e) => return Err(e),
        }
        if let Some((a, b)) = ctx.job.pencil.clone() {
            let bound = usize::try_from(&h.degree).unwrap_or(usize::MAX / 4) * (h.dim + 1);
            let probe = vanishing_order_probe(&ctx.pieces, &a, &b, m, bound)?;
            if let Some(w) = &probe.warning {
                ctx.warnings.push(w.clone());
            }
            obj.insert(
                "probe".into(),
                json!({
                    "order": probe.order,
                    "function": probe.function.to_string(),
                    "numerator_profile": probe.numerator_profile,
                    "denominator_profile": probe.denominator_profile,
                }),
            );
        }
        Ok((out, err))
    })();
    match result {
        Ok((v, e)) => Outcome { result: Some(v), error: e },
        Err(e) => Outcome { result: None, error: Some(e) },
    }
}

fn cmd_chow_interp(ctx: &mut Ctx) -> Result<Value> {
    let h = ctx.hilbert()?;
    let m = ctx.chow_m()?;
    if h.dim + 1 > 2 {
        ctx.warnings.push(format!(
            "interpolating in {} groups of variables; the sample grid grows as a power of the group count",
            h.dim + 1
        ));
    }
    let (seed, bound) = (ctx.job.seed, ctx.job.sample_bound);
    let out = ctx.timed("interpolate", |c| chow_interpolate(&c.pieces, &h, m, seed, bound, 20))?;
    Ok(json!({
        "m": m,
        "groups": out.poly.groups,
        "vars_per_group": out.poly.vars,
        "degree": out.poly.degree,
        "torsion_exponent": out.exponent,
        "scaling_exponent": out.scaling_exponent,
        "held_out_checked": out.held_out,
        "grassmannian_symmetric": out.poly.is_grassmannian_symmetric(),
        "terms": out.poly.to_terms(),
    }))
}

/// Nonzero integer vectors in `[-bound, bound]^len` with zero sum, in
/// increasing lexicographic order.
pub fn grid_subgroups(len: usize, bound: i64) -> Vec<OnePS> {
    fn rec(len: usize, bound: i64, cur: &mut Vec<i64>, sum: i64, out: &mut Vec<OnePS>) {
        let left = len - cur.len();
        if left == 0 {
            if sum == 0 && cur.iter().any(|&x| x != 0) {
                out.push(OnePS::new(cur.clone(), false).expect("zero sum"));
            }
            return;
        }
        for x in -bound..=bound {
            let rest = sum + x;
            if rest.abs() > bound * (left as i64 - 1) {
                continue;
            }
            cur.push(x);
            rec(len, bound, cur, rest, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, bound, &mut Vec::new(), 0, &mut out);
    out
}

fn cmd_scan(ctx: &mut Ctx) -> Result<Value> {
    let h = ctx.hilbert()?;
    let window = ctx.window()?;
    let grid = ctx.job.use_grid || ctx.job.lambdas.is_empty();
    let lambdas =
        if grid { grid_subgroups(ctx.job.ideal.num_vars(), ctx.job.grid_bound) } else { ctx.job.lambdas.clone() };
    if lambdas.is_empty() {
        return Err(Error::Input("the subgroup grid is empty; raise grid_bound".into()));
    }
    let order = ctx.job.order;
    let v = ctx.timed("scan", |c| stability_report(&c.pieces, &h, &lambdas, window, order))?;
    let mut out = verdict_json(&v, h.dim);
    let obj = out.as_object_mut().expect("object");
    obj.insert("source".into(), json!(if grid { "grid" } else { "input" }));
    obj.insert("count".into(), json!(lambdas.len()));
    obj.insert("window".into(), window_json(window));
    obj.insert("hilbert".into(), hilbert_summary(&h));
    Ok(out)
}
