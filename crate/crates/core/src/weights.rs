//! Weight sequences in log-domain arithmetic.
//!
//! A weight sequence is a positive sequence `M_k` with `M_0 = 1`, `M_1 ≥ 1`,
//! stored here as the table `log_m[k] = ln M_k`. The raw values overflow any
//! fixed-width float almost immediately (`(10^5!)^3` and worse), while every
//! structural condition is multiplicative, hence exactly additive in logs.
//!
//! Structural conditions are asymptotic statements; on a finite table they
//! are decided by a window maximum plus a non-increasing-tail heuristic over
//! the last decade of indices, and the reports always carry the window they
//! certify.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logdomain::KahanSum;

/// Default table size for the built-in families.
pub const DEFAULT_K_MAX: usize = 100_000;

/// Relative tolerance (log domain) for equality-adjacent checks.
pub const LOG_TOL: f64 = 1e-12;

/// A tail may grow by at most this much (in log units over the last decade
/// of the window) and still be treated as bounded.
pub(crate) const TAIL_BOUNDED_TOL: f64 = 1e-3;

/// A tail growing by more than this (same units) is treated as divergent.
/// The gap to [`TAIL_BOUNDED_TOL`] leaves an inconclusive band in between.
pub(crate) const TAIL_DIVERGED_TOL: f64 = 1e-2;

/// Inclusive index window `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub lo: usize,
    pub hi: usize,
}

impl Window {
    pub fn new(lo: usize, hi: usize) -> Result<Self> {
        if lo > hi {
            return Err(Error::BadWindow {
                lo,
                hi,
                valid_lo: lo,
                valid_hi: hi,
            });
        }
        Ok(Self { lo, hi })
    }

    pub fn len(&self) -> usize {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> {
        self.lo..=self.hi
    }

    fn require_within(&self, valid_lo: usize, valid_hi: usize) -> Result<()> {
        if self.lo < valid_lo || self.hi > valid_hi || self.lo > self.hi {
            return Err(Error::BadWindow {
                lo: self.lo,
                hi: self.hi,
                valid_lo,
                valid_hi,
            });
        }
        Ok(())
    }

    /// Start of the "last decade" used by the tail heuristics: the final 10%
    /// of the window, never shorter than one step.
    pub(crate) fn tail_start(&self) -> usize {
        let span = self.hi - self.lo;
        self.hi - (span / 10).max(1).min(span)
    }
}

/// Family provenance of a sequence table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Family {
    /// `M_k = (k!)^s`.
    Gevrey { s: f64 },
    /// `M_k = (k!)^s (log(k+e))^{σk}`.
    #[serde(rename = "logfam")]
    LogFamily { s: f64, sigma: f64 },
    /// `M_k = q^{k²}`.
    #[serde(rename = "qfam")]
    QFamily { q: f64 },
    /// Raw log-table input.
    Table,
}

/// Log-domain table of a weight sequence with derived quotient (`μ_k`) and
/// root (`Λ_k`) accessors.
#[derive(Debug, Clone)]
pub struct WeightSequence {
    name: String,
    family: Family,
    log_m: Vec<f64>,
    log_convex: bool,
    first_convexity_violation: Option<usize>,
}

impl WeightSequence {
    /// `M_k = (k!)^s`, `s ≥ 1`.
    pub fn gevrey(s: f64, k_max: usize) -> Result<Self> {
        if !(s >= 1.0) || !s.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "gevrey exponent s must be ≥ 1, got {s}"
            )));
        }
        if k_max < 2 {
            return Err(Error::InvalidParameter(format!(
                "k_max must be ≥ 2, got {k_max}"
            )));
        }
        let mut log_m = Vec::with_capacity(k_max + 1);
        let mut acc = KahanSum::new();
        log_m.push(0.0);
        for k in 1..=k_max {
            acc.add((k as f64).ln());
            log_m.push(s * acc.value());
        }
        Ok(Self::assemble(format!("gevrey:{s}"), Family::Gevrey { s }, log_m))
    }

    /// `M_k = (k!)^s (log(k+e))^{σk}`, `s ≥ 1`, `σ ≥ 0`.
    pub fn log_family(s: f64, sigma: f64, k_max: usize) -> Result<Self> {
        if !(s >= 1.0) || !s.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "log-family exponent s must be ≥ 1, got {s}"
            )));
        }
        if !(sigma >= 0.0) || !sigma.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "log-family exponent sigma must be ≥ 0, got {sigma}"
            )));
        }
        if k_max < 2 {
            return Err(Error::InvalidParameter(format!(
                "k_max must be ≥ 2, got {k_max}"
            )));
        }
        let mut log_m = Vec::with_capacity(k_max + 1);
        let mut acc = KahanSum::new();
        log_m.push(0.0);
        for k in 1..=k_max {
            acc.add((k as f64).ln());
            let kf = k as f64;
            log_m.push(s * acc.value() + sigma * kf * (kf + std::f64::consts::E).ln().ln());
        }
        Ok(Self::assemble(
            format!("logfam:{s},{sigma}"),
            Family::LogFamily { s, sigma },
            log_m,
        ))
    }

    /// `M_k = q^{k²}`, `q > 1`.
    pub fn q_family(q: f64, k_max: usize) -> Result<Self> {
        if !(q > 1.0) || !q.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "q-family base must be > 1, got {q}"
            )));
        }
        if k_max < 2 {
            return Err(Error::InvalidParameter(format!(
                "k_max must be ≥ 2, got {k_max}"
            )));
        }
        let lq = q.ln();
        let log_m = (0..=k_max).map(|k| (k * k) as f64 * lq).collect();
        Ok(Self::assemble(format!("qfam:{q}"), Family::QFamily { q }, log_m))
    }

    /// Accept a raw log-table. Requires `log_m[0] = 0`, `log_m[1] ≥ 0` and all
    /// entries finite; log-convexity is scanned and recorded but not required.
    pub fn from_log_table(name: impl Into<String>, log_m: Vec<f64>) -> Result<Self> {
        if log_m.len() < 3 {
            return Err(Error::InvalidParameter(format!(
                "raw table needs at least 3 entries, got {}",
                log_m.len()
            )));
        }
        if log_m[0] != 0.0 {
            return Err(Error::InvalidParameter(format!(
                "log_m[0] must be exactly 0 (M_0 = 1), got {}",
                log_m[0]
            )));
        }
        if log_m[1] < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "log_m[1] must be ≥ 0 (M_1 ≥ 1), got {}",
                log_m[1]
            )));
        }
        if let Some(bad) = log_m.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "log_m[{bad}] is not finite"
            )));
        }
        Ok(Self::assemble(name.into(), Family::Table, log_m))
    }

    fn assemble(name: String, family: Family, log_m: Vec<f64>) -> Self {
        let first_convexity_violation = scan_convexity(&log_m);
        Self {
            name,
            family,
            log_m,
            log_convex: first_convexity_violation.is_none(),
            first_convexity_violation,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn k_max(&self) -> usize {
        self.log_m.len() - 1
    }

    /// `ln M_k`. Panics on out-of-range `k`; use the checked accessors for
    /// user-facing paths.
    pub fn log_m(&self, k: usize) -> f64 {
        self.log_m[k]
    }

    pub fn log_m_checked(&self, k: usize) -> Result<f64> {
        self.log_m.get(k).copied().ok_or(Error::IndexOutOfRange {
            index: k,
            lo: 0,
            hi: self.k_max(),
        })
    }

    pub fn log_table(&self) -> &[f64] {
        &self.log_m
    }

    /// `ln μ_k = ln(M_k / M_{k-1})`, `1 ≤ k ≤ k_max`.
    pub fn log_mu(&self, k: usize) -> Result<f64> {
        if k < 1 || k > self.k_max() {
            return Err(Error::IndexOutOfRange {
                index: k,
                lo: 1,
                hi: self.k_max(),
            });
        }
        Ok(self.log_m[k] - self.log_m[k - 1])
    }

    /// `ln Λ_k = ln(M_k^{1/k})`, `1 ≤ k ≤ k_max`.
    pub fn log_lambda(&self, k: usize) -> Result<f64> {
        if k < 1 || k > self.k_max() {
            return Err(Error::IndexOutOfRange {
                index: k,
                lo: 1,
                hi: self.k_max(),
            });
        }
        Ok(self.log_m[k] / k as f64)
    }

    /// Whether the stored table passed the log-convexity scan at construction.
    pub fn is_log_convex(&self) -> bool {
        self.log_convex
    }

    pub fn first_convexity_violation(&self) -> Option<usize> {
        self.first_convexity_violation
    }

    /// Condition check: `M_k² ≤ M_{k-1} M_{k+1}` pointwise on the window.
    pub fn check_log_convex(&self, window: Window) -> Result<ConditionReport> {
        window.require_within(1, self.k_max().saturating_sub(1))?;
        let mut witness = None;
        for k in window.iter() {
            let tol = LOG_TOL * self.log_m[k].abs().max(1.0);
            if 2.0 * self.log_m[k] > self.log_m[k - 1] + self.log_m[k + 1] + tol {
                witness = Some(k);
                break;
            }
        }
        Ok(ConditionReport {
            condition: Condition::LogConvex,
            holds: witness.is_none(),
            constant: None,
            witness,
            window,
            log_constant: None,
            witness_log_ratio: None,
            method: Method::Pointwise,
        })
    }

    /// Condition check: `k ≤ δ Λ_k` with finite `δ`, decided by the window
    /// maximum of `k / Λ_k` plus the tail heuristic.
    pub fn check_analytic_inclusion(&self, window: Window) -> Result<ConditionReport> {
        window.require_within(1, self.k_max())?;
        let scan = scan_tail(window, |k| (k as f64).ln() - self.log_m[k] / k as f64);
        Ok(self.fitted_report(Condition::AnalyticInclusion, window, scan, 0.0))
    }

    /// Condition check: moderate growth via its quotient form `μ_k ≤ D Λ_k`,
    /// decided by the window maximum of `μ_k / Λ_k` plus the tail heuristic.
    pub fn check_moderate_growth(&self, window: Window) -> Result<ConditionReport> {
        window.require_within(1, self.k_max())?;
        let scan = scan_tail(window, |k| {
            (self.log_m[k] - self.log_m[k - 1]) - self.log_m[k] / k as f64
        });
        Ok(self.fitted_report(Condition::ModerateGrowth, window, scan, 0.0))
    }

    /// Condition check: `Λ_{k+1} ≤ σ Λ_k`. The fitted `σ` is clamped below by
    /// `1 + 1e-9` so that a strict `σ > 1` is always reported.
    pub fn check_deriv_closed(&self, window: Window) -> Result<ConditionReport> {
        window.require_within(1, self.k_max().saturating_sub(1))?;
        let scan = scan_tail(window, |k| {
            self.log_m[k + 1] / (k + 1) as f64 - self.log_m[k] / k as f64
        });
        Ok(self.fitted_report(Condition::DerivClosed, window, scan, 1e-9_f64.ln_1p()))
    }

    /// Tail-trend heuristic for `Λ_k → ∞`: the last decade of the window must
    /// show strictly positive growth of `Λ`. A finite table cannot decide the
    /// limit, so this is reported as a heuristic.
    pub fn check_root_divergence(&self, window: Window) -> Result<ConditionReport> {
        window.require_within(1, self.k_max())?;
        let tail_start = window.tail_start();
        let lam = |k: usize| self.log_m[k] / k as f64;
        let growth = lam(window.hi) - lam(tail_start);
        let holds = growth > LOG_TOL * lam(window.hi).abs().max(1.0);
        Ok(ConditionReport {
            condition: Condition::RootDivergence,
            holds,
            constant: None,
            witness: if holds { None } else { Some(window.hi) },
            window,
            log_constant: None,
            witness_log_ratio: if holds { None } else { Some(growth) },
            method: Method::TailHeuristic,
        })
    }

    /// Conjunction of analytic inclusion and moderate growth.
    pub fn is_admissible(&self, window: Window) -> Result<ConditionReport> {
        let ai = self.check_analytic_inclusion(window)?;
        let mg = self.check_moderate_growth(window)?;
        let holds = ai.holds && mg.holds;
        Ok(ConditionReport {
            condition: Condition::Admissible,
            holds,
            constant: None,
            witness: if ai.holds { mg.witness } else { ai.witness },
            window,
            log_constant: None,
            witness_log_ratio: None,
            method: Method::Conjunction,
        })
    }

    fn fitted_report(
        &self,
        condition: Condition,
        window: Window,
        scan: TailScan,
        clamp_floor: f64,
    ) -> ConditionReport {
        let holds = scan.bounded();
        let log_constant = scan.max_log.max(clamp_floor).max(0.0);
        ConditionReport {
            condition,
            holds,
            constant: finite_exp(log_constant),
            witness: if holds { None } else { Some(scan.argmax) },
            window,
            log_constant: Some(log_constant),
            witness_log_ratio: if holds { None } else { Some(scan.max_log) },
            method: Method::WindowMaxTailTrend,
        }
    }
}

fn scan_convexity(log_m: &[f64]) -> Option<usize> {
    for k in 1..log_m.len() - 1 {
        let tol = LOG_TOL * log_m[k].abs().max(1.0);
        if 2.0 * log_m[k] > log_m[k - 1] + log_m[k + 1] + tol {
            return Some(k);
        }
    }
    None
}

fn finite_exp(x: f64) -> Option<f64> {
    let v = x.exp();
    v.is_finite().then_some(v)
}

/// Tag of a checked structural condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Condition {
    #[serde(rename = "log-convex")]
    LogConvex,
    #[serde(rename = "analytic-inclusion")]
    AnalyticInclusion,
    #[serde(rename = "moderate-growth")]
    ModerateGrowth,
    #[serde(rename = "deriv-closed")]
    DerivClosed,
    #[serde(rename = "root-divergence")]
    RootDivergence,
    #[serde(rename = "admissible")]
    Admissible,
}

/// How a verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "pointwise")]
    Pointwise,
    #[serde(rename = "window-max+tail-trend")]
    WindowMaxTailTrend,
    #[serde(rename = "tail-trend-heuristic")]
    TailHeuristic,
    #[serde(rename = "conjunction")]
    Conjunction,
}

/// Verdict of a condition check on a window.
///
/// `constant` is the fitted witness constant in linear scale when it is
/// representable; `log_constant` always carries its natural log. Fitted
/// constants are clamped below at 1 so that a reported constant is a valid
/// witness of the inequality it certifies.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConditionReport {
    pub condition: Condition,
    pub holds: bool,
    pub constant: Option<f64>,
    pub witness: Option<usize>,
    pub window: Window,
    pub log_constant: Option<f64>,
    pub witness_log_ratio: Option<f64>,
    pub method: Method,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct TailScan {
    pub max_log: f64,
    pub argmax: usize,
    pub tail_start: usize,
    pub tail_growth: f64,
}

impl TailScan {
    pub(crate) fn bounded(&self) -> bool {
        self.argmax < self.tail_start || self.tail_growth <= TAIL_BOUNDED_TOL
    }

    pub(crate) fn diverges(&self) -> bool {
        self.tail_growth > TAIL_DIVERGED_TOL
    }
}

/// Scan a log-ratio over a window: first maximum, plus the growth of the
/// ratio over the last decade of indices.
pub(crate) fn scan_tail(window: Window, f: impl Fn(usize) -> f64) -> TailScan {
    let mut max_log = f64::NEG_INFINITY;
    let mut argmax = window.lo;
    for k in window.iter() {
        let v = f(k);
        if v > max_log {
            max_log = v;
            argmax = k;
        }
    }
    let tail_start = window.tail_start();
    let base = f(tail_start);
    let mut tail_max = f64::NEG_INFINITY;
    for k in tail_start..=window.hi {
        tail_max = tail_max.max(f(k));
    }
    TailScan {
        max_log,
        argmax,
        tail_start,
        tail_growth: tail_max - base,
    }
}

/// Verdict of the comparison order between two sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ComparisonVerdict {
    #[serde(rename = "m_precedes_n")]
    MPrecedesN,
    #[serde(rename = "n_precedes_m")]
    NPrecedesM,
    #[serde(rename = "equivalent")]
    Equivalent,
    #[serde(rename = "strict_m_before_n")]
    StrictMBeforeN,
    #[serde(rename = "strict_n_before_m")]
    StrictNBeforeM,
    #[serde(rename = "undetermined")]
    Undetermined,
}

/// Result of [`compare`]: the verdict plus the fitted pair `(C₁, h)` with
/// `M_k ≤ C₁ h^k N_k` on the window (`C₁ = 1`, `h = sup (M_k/N_k)^{1/k}`).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub verdict: ComparisonVerdict,
    pub h: Option<f64>,
    pub log_h: f64,
    pub c1: f64,
    pub window: Window,
}

/// Decide the order `M ⪯ N` via the per-root ratio `r_k = (M_k/N_k)^{1/k}`.
///
/// `M ⪯ N` is reported when `sup r_k` over the window is attained away from
/// the right edge or has a non-increasing tail; strictness additionally needs
/// the reverse ratio to diverge. Ambiguous tails (growing, but below the
/// divergence threshold) produce the non-strict verdicts or `undetermined`.
pub fn compare(m: &WeightSequence, n: &WeightSequence, window: Window) -> Result<ComparisonReport> {
    window.require_within(1, m.k_max().min(n.k_max()))?;
    let lr = |k: usize| (m.log_m(k) - n.log_m(k)) / k as f64;
    let fwd = scan_tail(window, lr);
    let rev = scan_tail(window, |k| -lr(k));
    let verdict = match (fwd.bounded(), rev.bounded()) {
        (true, true) => ComparisonVerdict::Equivalent,
        (true, false) => {
            if rev.diverges() {
                ComparisonVerdict::StrictMBeforeN
            } else {
                ComparisonVerdict::MPrecedesN
            }
        }
        (false, true) => {
            if fwd.diverges() {
                ComparisonVerdict::StrictNBeforeM
            } else {
                ComparisonVerdict::NPrecedesM
            }
        }
        (false, false) => ComparisonVerdict::Undetermined,
    };
    Ok(ComparisonReport {
        verdict,
        h: finite_exp(fwd.max_log),
        log_h: fwd.max_log,
        c1: 1.0,
        window,
    })
}

/// JSON sequence specification: `{name, family, params, k_max}` for the
/// built-in families, or `{family: "table", log_m: [...]}` for raw tables.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SequenceSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub family: String,
    #[serde(default, skip_serializing_if = "Params::is_empty")]
    pub params: Params,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub log_m: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
}

impl Params {
    fn is_empty(&self) -> bool {
        self.s.is_none() && self.sigma.is_none() && self.q.is_none()
    }
}

impl SequenceSpec {
    pub fn build(&self) -> Result<WeightSequence> {
        let k_max = self.k_max.unwrap_or(DEFAULT_K_MAX);
        let mut seq = match self.family.as_str() {
            "gevrey" => {
                let s = self.params.s.ok_or_else(|| {
                    Error::Config("gevrey family needs params.s".into())
                })?;
                WeightSequence::gevrey(s, k_max)?
            }
            "logfam" => {
                let s = self.params.s.ok_or_else(|| {
                    Error::Config("logfam family needs params.s".into())
                })?;
                let sigma = self.params.sigma.ok_or_else(|| {
                    Error::Config("logfam family needs params.sigma".into())
                })?;
                WeightSequence::log_family(s, sigma, k_max)?
            }
            "qfam" => {
                let q = self.params.q.ok_or_else(|| {
                    Error::Config("qfam family needs params.q".into())
                })?;
                WeightSequence::q_family(q, k_max)?
            }
            "table" => {
                let log_m = self.log_m.clone().ok_or_else(|| {
                    Error::Config("table family needs log_m".into())
                })?;
                WeightSequence::from_log_table(
                    self.name.clone().unwrap_or_else(|| "table".into()),
                    log_m,
                )?
            }
            other => {
                return Err(Error::Config(format!(
                    "unknown family `{other}` (expected gevrey, logfam, qfam or table)"
                )))
            }
        };
        if let Some(name) = &self.name {
            seq.name = name.clone();
        }
        Ok(seq)
    }
}

/// Parse the inline sequence syntax used by the CLI and bindings:
/// `gevrey:S`, `logfam:S,SIGMA`, `qfam:Q`.
pub fn parse_inline_spec(text: &str, k_max: usize) -> Result<WeightSequence> {
    let (family, rest) = text
        .split_once(':')
        .ok_or_else(|| Error::Config(format!("expected FAMILY:PARAMS, got `{text}`")))?;
    let nums: Vec<f64> = rest
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("bad numeric parameter `{p}` in `{text}`")))
        })
        .collect::<Result<_>>()?;
    match (family, nums.as_slice()) {
        ("gevrey", [s]) => WeightSequence::gevrey(*s, k_max),
        ("logfam", [s, sigma]) => WeightSequence::log_family(*s, *sigma, k_max),
        ("qfam", [q]) => WeightSequence::q_family(*q, k_max),
        _ => Err(Error::Config(format!(
            "unrecognised sequence spec `{text}` (expected gevrey:S, logfam:S,SIGMA or qfam:Q)"
        ))),
    }
}
