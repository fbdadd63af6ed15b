//! Degree bounds for schemes cut out by quadrics, their equality criteria and
//! the classification of equality cases.
//!
//! Write `c = r - n` for the codimension and `alpha + 1` for the number of
//! independent quadrics. The checks implemented here are
//!
//! * `alpha >= 2c - 2` and `binom(d, 2) <= binom(2c - 1, c - 1)` when
//!   `dim(W) <= 2n + 1`,
//! * equality iff `alpha = 2c - 2` when `dim(W) <= 2n`,
//! * the shifted form `binom(d + 2 - p, 2) <= binom(2c + 3 - 2p, c + 1 - p)`
//!   with `h0 >= cp - binom(p, 2)` under `N_p` or `N_{2,p}`,
//! * the genus-refined bound and the equality classification for schemes that
//!   are smooth and integral in codimension one.
//!
//! A failed check never means the input is inconsistent as a scheme: it means
//! one of the hypotheses of the corresponding statement cannot hold, and the
//! report lists the weakest such hypothesis in [`BoundReport::refuted`].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::arith::{choose, triangular_floor, triangular_inverse};
use crate::json::{int, nat, rational};
use crate::{Integer, Natural, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("codimension c = r - n must be at least 2 (r={r}, n={n})")]
    Codimension { r: u64, n: u64 },
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("p must be at least 2, got {0}")]
    SmallP(u64),
    #[error("the N_p bound needs c + 1 - p >= 1 (c={c}, p={p})")]
    ShiftTooLarge { c: u64, p: u64 },
    #[error("the N_p bound needs d + 2 - p >= 0 (d={d}, p={p})")]
    DegreeBelowShift { d: u64, p: u64 },
    #[error("the N_p check needs p")]
    MissingP,
    #[error("alpha + 1 = {alpha_plus_one} is below c = {c}")]
    AlphaBelowCodimension { alpha_plus_one: u64, c: u64 },
    #[error("{what} must be at least {min}, got {got}")]
    OutOfRange { what: &'static str, min: u64, got: u64 },
    #[error("empty range {from}..={to}")]
    EmptyRange { from: u64, to: u64 },
    #[error("unknown hypothesis tag {0:?}")]
    UnknownHypothesis(String),
    #[error("catalog: {0}")]
    Catalog(String),
}

/// Hypotheses on a scheme, from strongest to weakest:
/// `N_p => N_{2,p} => K_2 => dim(W) <= 2n => dim(W) <= 2n + 1` (`p >= 2`),
/// and `N_p => N_q`, `N_{2,p} => N_{2,q}` for `p >= q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Hypothesis {
    Np(u64),
    N2p(u64),
    K2,
    WAtMost2n,
    WAtMost2nPlus1,
}

impl Hypothesis {
    /// Whether `self` implies `other`.
    pub fn implies(self, other: Hypothesis) -> bool {
        use Hypothesis::*;
        match other {
            WAtMost2nPlus1 => true,
            WAtMost2n => self != WAtMost2nPlus1,
            K2 => matches!(self, K2 | N2p(_) | Np(_)),
            N2p(q) => matches!(self, N2p(p) | Np(p) if p >= q),
            Np(q) => matches!(self, Np(p) if p >= q),
        }
    }

    /// The hypotheses named in reports when `self` is refuted: `self` and the
    /// stronger standard properties, with `p` kept at its smallest value.
    pub fn with_stronger(self) -> Vec<Hypothesis> {
        use Hypothesis::*;
        match self {
            WAtMost2nPlus1 => vec![Np(2), N2p(2), K2, WAtMost2n, WAtMost2nPlus1],
            WAtMost2n => vec![Np(2), N2p(2), K2, WAtMost2n],
            K2 => vec![Np(2), N2p(2), K2],
            N2p(p) => vec![Np(p), N2p(p)],
            Np(p) => vec![Np(p)],
        }
    }
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hypothesis::Np(p) => write!(f, "N_{p}"),
            Hypothesis::N2p(p) => write!(f, "N_{{2,{p}}}"),
            Hypothesis::K2 => write!(f, "K_2"),
            Hypothesis::WAtMost2n => write!(f, "dim(W)<=2n"),
            Hypothesis::WAtMost2nPlus1 => write!(f, "dim(W)<=2n+1"),
        }
    }
}

impl FromStr for Hypothesis {
    type Err = BoundsError;

    /// Accepts the display forms, ignoring whitespace and case.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
        let unknown = || BoundsError::UnknownHypothesis(s.to_string());
        let p_of = |digits: &str| digits.parse::<u64>().ok().filter(|&p| p >= 2).ok_or_else(unknown);
        match t.as_str() {
            "k_2" | "k2" => Ok(Hypothesis::K2),
            "dim(w)<=2n" | "w<=2n" => Ok(Hypothesis::WAtMost2n),
            "dim(w)<=2n+1" | "w<=2n+1" => Ok(Hypothesis::WAtMost2nPlus1),
            _ => {
                if let Some(rest) = t.strip_prefix("n_{2,").and_then(|r| r.strip_suffix('}')) {
                    p_of(rest).map(Hypothesis::N2p)
                } else if let Some(rest) = t.strip_prefix("n_") {
                    p_of(rest).map(Hypothesis::Np)
                } else {
                    Err(unknown())
                }
            }
        }
    }
}

/// Numerical data of a scheme `X` in `P^r`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Deserialize)]
pub struct SchemeDescriptor {
    #[serde(default)]
    pub name: Option<String>,
    pub d: u64,
    pub n: u64,
    pub r: u64,
    /// `dim(Lambda) - 1` for the linear system of quadrics defining `X`.
    #[serde(default)]
    pub alpha: Option<u64>,
    /// Sectional genus.
    #[serde(default)]
    pub g: Option<u64>,
    /// `h^0(I_X(2))`.
    #[serde(default)]
    pub h0: Option<u64>,
    #[serde(default)]
    pub p: Option<u64>,
    /// Caller-asserted hypotheses; they are checked for consistency, never verified.
    #[serde(default, deserialize_with = "deserialize_hypotheses")]
    pub assumptions: Vec<Hypothesis>,
}

fn deserialize_hypotheses<'de, D: serde::Deserializer<'de>>(de: D) -> Result<Vec<Hypothesis>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Tags {
        List(Vec<String>),
        Joined(String),
    }
    let tags = match Option::<Tags>::deserialize(de)? {
        None => return Ok(Vec::new()),
        Some(Tags::List(v)) => v,
        Some(Tags::Joined(s)) => s.split(';').map(str::to_string).collect(),
    };
    tags.iter()
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.parse().map_err(serde::de::Error::custom))
        .collect()
}

impl SchemeDescriptor {
    pub fn new(d: u64, n: u64, r: u64) -> Self {
        Self { d, n, r, ..Self::default() }
    }

    pub fn alpha(mut self, alpha: u64) -> Self {
        self.alpha = Some(alpha);
        self
    }

    pub fn genus(mut self, g: u64) -> Self {
        self.g = Some(g);
        self
    }

    pub fn h0(mut self, h0: u64) -> Self {
        self.h0 = Some(h0);
        self
    }

    pub fn p(mut self, p: u64) -> Self {
        self.p = Some(p);
        self
    }

    pub fn named(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    pub fn assume(mut self, h: Hypothesis) -> Self {
        self.assumptions.push(h);
        self
    }

    /// `c = r - n`, validated to be at least 2, with `d >= 1`.
    pub fn codimension(&self) -> Result<u64, BoundsError> {
        if self.d == 0 {
            return Err(BoundsError::ZeroDegree);
        }
        match self.r.checked_sub(self.n) {
            Some(c) if c >= 2 => Ok(c),
            _ => Err(BoundsError::Codimension { r: self.r, n: self.n }),
        }
    }
}

/// Outcome of a check that needs optional data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    NotEvaluated,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::NotEvaluated => "not evaluated",
        }
    }

    fn to_json(self) -> Value {
        match self {
            Verdict::Holds => Value::Bool(true),
            Verdict::Fails => Value::Bool(false),
            Verdict::NotEvaluated => Value::Null,
        }
    }
}

/// `lhs <= rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inequality {
    pub lhs: Integer,
    pub rhs: Integer,
}

impl Inequality {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs
    }

    pub fn equality(&self) -> bool {
        self.lhs == self.rhs
    }

    fn to_json(&self) -> Value {
        json!({ "lhs": int(&self.lhs), "rhs": int(&self.rhs), "holds": self.holds(), "equality": self.equality() })
    }
}

/// One of the two equality configurations for schemes smooth and integral in
/// codimension one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EqualityLabel {
    pub d: u64,
    pub c: u64,
    pub g: u64,
    pub name: &'static str,
}

impl fmt::Display for EqualityLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{}) {}", self.d, self.c, self.g, self.name)
    }
}

/// The two labels for the `N_p` equality, `p >= 2`.
pub fn equality_labels(p: u64) -> [EqualityLabel; 2] {
    [
        EqualityLabel { d: p + 1, c: p, g: 0, name: "rational normal curve section" },
        EqualityLabel { d: p + 3, c: p + 1, g: 1, name: "elliptic normal curve section" },
    ]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    NotEvaluated(&'static str),
    /// The bound is strict, nothing to classify.
    NoEquality,
    Hit(EqualityLabel),
    /// Equality with a triple outside the list: `X` is not smooth and integral
    /// in codimension one, or the hypothesis on `W` fails.
    Miss { d: u64, c: u64, g: u64 },
}

impl Classification {
    pub fn hit(&self) -> Option<EqualityLabel> {
        match self {
            Classification::Hit(l) => Some(*l),
            _ => None,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Classification::NotEvaluated(why) => json!({ "status": "not evaluated", "reason": why }),
            Classification::NoEquality => json!({ "status": "no equality" }),
            Classification::Hit(l) => json!({ "status": "hit", "d": l.d, "c": l.c, "g": l.g, "label": l.name }),
            Classification::Miss { d, c, g } => json!({ "status": "miss", "d": d, "c": c, "g": g }),
        }
    }
}

fn classify_triple(d: u64, c: u64, g: u64, p: u64) -> Classification {
    equality_labels(p)
        .into_iter()
        .find(|l| (l.d, l.c, l.g) == (d, c, g))
        .map_or(Classification::Miss { d, c, g }, Classification::Hit)
}

/// Checks under `N_p` or `N_{2,p}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NpCheck {
    pub p: u64,
    /// `binom(d + 2 - p, 2) <= binom(2c + 3 - 2p, c + 1 - p)`.
    pub bound: Inequality,
    /// `cp - binom(p, 2)`.
    pub h0_required: Integer,
    pub h0_lower_ok: Verdict,
    pub equality_iff_h0: Verdict,
    pub classification: Classification,
}

impl NpCheck {
    fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "bound": self.bound.to_json(),
            "h0_required": int(&self.h0_required),
            "h0_lower_ok": self.h0_lower_ok.to_json(),
            "equality_iff_h0": self.equality_iff_h0.to_json(),
            "classification": self.classification.to_json(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub descriptor: SchemeDescriptor,
    pub c: u64,
    /// `binom(d, 2) <= binom(2c - 1, c - 1)`.
    pub main: Inequality,
    pub alpha_lower_ok: Verdict,
    pub equality_iff_alpha: Verdict,
    pub classification: Classification,
    /// `binom(d, 2) + binom(d - 1, 2) - g <= binom(2c - 1, c - 1) + binom(2c - 1, c - 2)`.
    pub refined_genus_ok: Verdict,
    pub np: Option<NpCheck>,
    pub regime: Option<RegimeReport>,
    /// Weakest hypotheses shown impossible; everything implying them fails too.
    pub refuted: Vec<Hypothesis>,
    pub messages: Vec<String>,
}

impl BoundReport {
    pub fn main_bound_ok(&self) -> bool {
        self.main.holds()
    }

    pub fn equality(&self) -> bool {
        self.main.equality()
    }

    pub fn classification_hit(&self) -> Option<EqualityLabel> {
        self.np.as_ref().and_then(|np| np.classification.hit()).or(self.classification.hit())
    }

    pub fn excludes(&self, h: Hypothesis) -> bool {
        self.refuted.iter().any(|&w| h.implies(w))
    }

    /// Standard hypotheses that the data rules out.
    pub fn excluded(&self) -> Vec<Hypothesis> {
        let mut all: Vec<Hypothesis> = self.refuted.iter().flat_map(|h| h.with_stronger()).collect();
        all.sort();
        all.dedup();
        all
    }

    /// Caller assumptions contradicted by the data.
    pub fn conflicting_assumptions(&self) -> Vec<Hypothesis> {
        self.descriptor.assumptions.iter().copied().filter(|&h| self.excludes(h)).collect()
    }

    /// True when no evaluated check fails.
    pub fn all_checks_hold(&self) -> bool {
        let verdicts = [self.alpha_lower_ok, self.equality_iff_alpha, self.refined_genus_ok];
        let np_ok = self.np.as_ref().is_none_or(|np| {
            np.bound.holds()
                && np.h0_lower_ok != Verdict::Fails
                && np.equality_iff_h0 != Verdict::Fails
                && !matches!(np.classification, Classification::Miss { .. })
        });
        self.main.holds()
            && !verdicts.contains(&Verdict::Fails)
            && !matches!(self.classification, Classification::Miss { .. })
            && np_ok
    }

    fn refute(&mut self, h: Hypothesis) {
        if !self.refuted.iter().any(|&w| h.implies(w)) {
            self.refuted.retain(|&w| !w.implies(h));
            self.refuted.push(h);
        }
    }

    pub fn to_json(&self) -> Value {
        let s = &self.descriptor;
        json!({
            "descriptor": {
                "name": s.name, "d": s.d, "n": s.n, "r": s.r,
                "alpha": s.alpha, "g": s.g, "h0": s.h0, "p": s.p,
                "assumptions": s.assumptions.iter().map(|h| h.to_string()).collect::<Vec<_>>(),
            },
            "c": self.c,
            "main_bound": self.main.to_json(),
            "alpha_lower_ok": self.alpha_lower_ok.to_json(),
            "equality_iff_alpha": self.equality_iff_alpha.to_json(),
            "classification": self.classification.to_json(),
            "refined_genus_ok": self.refined_genus_ok.to_json(),
            "np": self.np.as_ref().map(NpCheck::to_json),
            "regime": self.regime.as_ref().map(RegimeReport::to_json),
            "excluded": self.excluded().iter().map(|h| h.to_string()).collect::<Vec<_>>(),
            "conflicting_assumptions": self.conflicting_assumptions().iter().map(|h| h.to_string()).collect::<Vec<_>>(),
            "all_checks_hold": self.all_checks_hold(),
            "messages": self.messages,
        })
    }
}

fn binom_u(n: u64, k: u64) -> Integer {
    Integer::from(choose(n, k))
}

/// `binom(2c - 1, c - 1)` for `c >= 1`.
pub fn central_value(c: u64) -> Natural {
    choose(2 * c - 1, c - 1)
}

/// Main bound, `alpha` lower bound, equality criterion, genus refinement and
/// classification, plus the regime when `alpha` is known.
pub fn main_bound_check(s: &SchemeDescriptor) -> Result<BoundReport, BoundsError> {
    let c = s.codimension()?;
    let d = s.d;
    let main = Inequality { lhs: binom_u(d, 2), rhs: Integer::from(central_value(c)) };
    let mut report = BoundReport {
        descriptor: s.clone(),
        c,
        main,
        alpha_lower_ok: Verdict::NotEvaluated,
        equality_iff_alpha: Verdict::NotEvaluated,
        classification: Classification::NotEvaluated("bound is not an equality"),
        refined_genus_ok: Verdict::NotEvaluated,
        np: None,
        regime: None,
        refuted: Vec::new(),
        messages: Vec::new(),
    };
    let (lhs, rhs) = (report.main.lhs.clone(), report.main.rhs.clone());

    if report.main.holds() {
        let rel = if report.main.equality() { "=" } else { "<=" };
        report.messages.push(format!("binom(d,2) {rel} binom(2c-1,c-1): {lhs} {rel} {rhs}"));
    } else {
        report.messages.push(format!("bound violated: {lhs} > {rhs}"));
        report.refute(Hypothesis::WAtMost2nPlus1);
    }

    match s.alpha {
        Some(alpha) => {
            let lower = alpha >= 2 * c - 2;
            report.alpha_lower_ok = Verdict::from_bool(lower);
            if !lower {
                report.messages.push(format!("alpha = {alpha} < 2c-2 = {}", 2 * c - 2));
                report.refute(Hypothesis::WAtMost2nPlus1);
            }
            let consistent = report.main.equality() == (alpha == 2 * c - 2);
            report.equality_iff_alpha = Verdict::from_bool(consistent);
            if !consistent {
                let why = if report.main.equality() {
                    format!("equality holds but alpha = {alpha} != 2c-2 = {}", 2 * c - 2)
                } else {
                    format!("alpha = 2c-2 = {alpha} but {lhs} != {rhs}")
                };
                report.messages.push(why);
                report.refute(Hypothesis::WAtMost2n);
            }
            match regime_compare(Some(d), c, alpha) {
                Ok(reg) => report.regime = Some(reg),
                Err(e) => report.messages.push(format!("no regime: {e}")),
            }
        }
        None => report.messages.push("alpha not given: alpha checks not evaluated".into()),
    }

    if report.main.equality() {
        report.classification = match (s.g, s.n) {
            (None, _) => Classification::NotEvaluated("sectional genus not given"),
            (Some(_), 0) => Classification::NotEvaluated("zero-dimensional scheme has no curve section"),
            (Some(g), _) => classify_triple(d, c, g, 2),
        };
        match report.classification {
            Classification::Hit(l) => report.messages.push(format!("equality case {l}")),
            Classification::Miss { d, c, g } => report.messages.push(format!(
                "equality with (d,c,g) = ({d},{c},{g}): not smooth and integral in codimension one, or dim(W) > 2n"
            )),
            _ => {}
        }
    } else {
        report.classification = Classification::NoEquality;
    }

    if let (Some(g), true) = (s.g, s.n >= 1) {
        let ok = refined_genus_bound_check(d, c, g)?;
        report.refined_genus_ok = Verdict::from_bool(ok);
        if !ok {
            report.messages.push(
                "genus-refined bound violated: not smooth and integral in codimension one, or dim(W) > 2n+1".into(),
            );
        }
    }

    finish(&mut report);
    Ok(report)
}

fn finish(report: &mut BoundReport) {
    let excluded = report.excluded();
    if !excluded.is_empty() {
        let names: Vec<String> = excluded.iter().map(|h| h.to_string()).collect();
        report.messages.push(format!("excluded: {}", names.join(", ")));
        if let Some(p) = (2..).take(64).find(|&p| report.excludes(Hypothesis::Np(p))) {
            report.messages.push(format!("property N_{p} excluded"));
        }
    }
    for h in report.conflicting_assumptions() {
        report.messages.push(format!("assumption {h} contradicts the data"));
    }
}

/// The `N_p` / `N_{2,p}` checks, on top of [`main_bound_check`].
pub fn np_bound_check(s: &SchemeDescriptor) -> Result<BoundReport, BoundsError> {
    let p = s.p.ok_or(BoundsError::MissingP)?;
    if p < 2 {
        return Err(BoundsError::SmallP(p));
    }
    let c = s.codimension()?;
    if c + 1 < p + 1 {
        return Err(BoundsError::ShiftTooLarge { c, p });
    }
    let d = s.d;
    let Some(d_shift) = (d + 2).checked_sub(p) else {
        return Err(BoundsError::DegreeBelowShift { d, p });
    };
    let mut report = main_bound_check(s)?;
    report.messages.retain(|m| !m.starts_with("excluded:") && !m.starts_with("property N_") && !m.starts_with("assumption "));

    let bound = Inequality { lhs: binom_u(d_shift, 2), rhs: binom_u(2 * c + 3 - 2 * p, c + 1 - p) };
    let h0_required = Integer::from(c * p) - binom_u(p, 2);
    let mut check = NpCheck {
        p,
        bound,
        h0_required: h0_required.clone(),
        h0_lower_ok: Verdict::NotEvaluated,
        equality_iff_h0: Verdict::NotEvaluated,
        classification: Classification::NoEquality,
    };
    let (lhs, rhs) = (check.bound.lhs.clone(), check.bound.rhs.clone());
    if check.bound.holds() {
        let rel = if check.bound.equality() { "=" } else { "<=" };
        report.messages.push(format!("binom(d+2-p,2) {rel} binom(2c+3-2p,c+1-p): {lhs} {rel} {rhs}"));
    } else {
        report.messages.push(format!("N_p bound violated: {lhs} > {rhs}"));
        report.refute(Hypothesis::N2p(p));
    }
    if let Some(h0) = s.h0 {
        let h0 = Integer::from(h0);
        let lower = h0 >= h0_required;
        check.h0_lower_ok = Verdict::from_bool(lower);
        let consistent = check.bound.equality() == (h0 == h0_required);
        check.equality_iff_h0 = Verdict::from_bool(consistent);
        if !lower {
            report.messages.push(format!("h0 = {h0} < cp - binom(p,2) = {h0_required}"));
        }
        if !consistent {
            report.messages.push(format!("equality criterion h0 = {h0_required} inconsistent with h0 = {h0}"));
        }
        if !(lower && consistent) {
            report.refute(Hypothesis::N2p(p));
        }
    } else {
        report.messages.push("h0 not given: h0 checks not evaluated".into());
    }
    if check.bound.equality() {
        check.classification = match (s.g, s.n) {
            (None, _) => Classification::NotEvaluated("sectional genus not given"),
            (Some(_), 0) => Classification::NotEvaluated("zero-dimensional scheme has no curve section"),
            (Some(g), _) => classify_triple(d, c, g, p),
        };
        match check.classification {
            Classification::Hit(l) => report.messages.push(format!("N_{p} equality case {l}")),
            Classification::Miss { d, c, g } => report.messages.push(format!(
                "N_{p} equality with (d,c,g) = ({d},{c},{g}): not smooth and integral in codimension one"
            )),
            _ => {}
        }
    }
    report.np = Some(check);
    finish(&mut report);
    Ok(report)
}

/// Castelnuovo's genus bound for a curve of degree `d` in `P^(c+1)`:
/// `(d^2 - 2d + 1) / (2c) + (d - 1) / 2`.
pub fn castelnuovo_max_genus(d: &Integer, c: u64) -> Rational {
    let dm1 = d - 1;
    Rational::new(&dm1 * &dm1, Integer::from(2 * c)) + Rational::new(dm1, Integer::from(2))
}

/// `binom(d, 2) + binom(d - 1, 2) - g <= binom(2c - 1, c - 1) + binom(2c - 1, c - 2)`.
pub fn refined_genus_bound_check(d: u64, c: u64, g: u64) -> Result<bool, BoundsError> {
    if c < 2 {
        return Err(BoundsError::OutOfRange { what: "c", min: 2, got: c });
    }
    if d == 0 {
        return Err(BoundsError::ZeroDegree);
    }
    let lhs = binom_u(d, 2) + binom_u(d - 1, 2) - Integer::from(g);
    let rhs = binom_u(2 * c - 1, c - 1) + binom_u(2 * c - 1, c - 2);
    Ok(lhs <= rhs)
}

/// `binom(d, 2) <= binom(2c - 1, c - 1) + 2c - 2 - beta`, with `beta` the
/// dimension of the span of the image of the auxiliary variety. The artifact
/// never computes `beta`; it is caller input.
pub fn span_refined_bound(d: u64, c: u64, beta: u64) -> Result<Inequality, BoundsError> {
    if c < 2 {
        return Err(BoundsError::OutOfRange { what: "c", min: 2, got: c });
    }
    let rhs = Integer::from(central_value(c)) + Integer::from(2 * c - 2) - Integer::from(beta);
    Ok(Inequality { lhs: binom_u(d, 2), rhs })
}

/// `f(e) = (binom(e^2 - 1, 2) - (e^2 (e - 2) + 1)) / binom(e^2, 2)`: the ratio
/// `b_1 / b_0` for the complete intersection of two degree-`e` hypersurfaces.
pub fn f_of_e(e: u64) -> Result<Rational, BoundsError> {
    if e < 2 {
        return Err(BoundsError::OutOfRange { what: "e", min: 2, got: e });
    }
    let e2 = e * e;
    let genus = Integer::from(e2) * Integer::from(e - 2) + 1;
    Ok(Rational::new(binom_u(e2 - 1, 2) - genus, binom_u(e2, 2)))
}

/// Whether `1 - f(e)` is positive and strictly decreasing on `2..=e_max`.
pub fn f_of_e_scan(e_max: u64) -> Result<bool, BoundsError> {
    let one = Rational::one();
    let mut prev: Option<Rational> = None;
    for e in 2..=e_max {
        let gap = &one - f_of_e(e)?;
        if !gap.is_positive() || prev.as_ref().is_some_and(|p| gap >= *p) {
            return Ok(false);
        }
        prev = Some(gap);
    }
    Ok(true)
}

/// The inequality obtained from a codimension-two complete intersection of
/// two degree-`e` hypersurfaces in `P^(c+1)`:
/// `a0 b0 + a1 b1 <= binom(2c-1, c-1) b0 + binom(2c-1, c-2) b1`.
pub fn complete_intersection_relation(a0: &Integer, a1: &Integer, c: u64, e: u64) -> Result<bool, BoundsError> {
    if e < 2 {
        return Err(BoundsError::OutOfRange { what: "e", min: 2, got: e });
    }
    if c < 2 {
        return Err(BoundsError::OutOfRange { what: "c", min: 2, got: c });
    }
    let e2 = e * e;
    let b0 = binom_u(e2, 2);
    let b1 = binom_u(e2 - 1, 2) - (Integer::from(e2) * Integer::from(e - 2) + 1);
    let lhs = a0 * &b0 + a1 * &b1;
    let rhs = binom_u(2 * c - 1, c - 1) * b0 + binom_u(2 * c - 1, c - 2) * b1;
    Ok(lhs <= rhs)
}

/// Largest `d` with `binom(d, 2) <= binom(2c - 1, c - 1)`.
pub fn d_max(c: u64) -> Natural {
    triangular_floor(&central_value(c))
}

/// A `(d, c, g)` triple produced by the equality pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqualityCase {
    pub d: Integer,
    pub c: u64,
    /// `binom(d - 1, 2) - binom(2c - 1, c - 2)`.
    pub g: Integer,
    pub castelnuovo: Rational,
}

impl EqualityCase {
    pub fn admissible(&self) -> bool {
        !self.g.is_negative() && Rational::from_integer(self.g.clone()) <= self.castelnuovo
    }

    pub fn triple(&self) -> (Integer, u64, Integer) {
        (self.d.clone(), self.c, self.g.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqualityClassification {
    pub c_max: u64,
    pub survivors: Vec<EqualityCase>,
    pub rejected: Vec<EqualityCase>,
    /// Values `6 <= c <= c_max` where `2 binom(2c-1, c-1) <= D (D - 1)` holds,
    /// `D = (3c^2 + 2c - 1) / (c - 1)`. Expected empty.
    pub closing_holds_at: Vec<u64>,
}

impl EqualityClassification {
    /// The Castelnuovo pipeline and the closing inequality agree: every
    /// survivor has `c <= 5` and the closing inequality fails from 6 on.
    pub fn consistent(&self) -> bool {
        self.closing_holds_at.is_empty() && self.survivors.iter().all(|s| s.c <= 5)
    }

    pub fn survivor_triples(&self) -> Vec<(u64, u64, u64)> {
        self.survivors
            .iter()
            .map(|s| (s.d.to_u64().expect("small"), s.c, s.g.to_u64().expect("admissible genus is non-negative")))
            .collect()
    }
}

/// `2 binom(2c-1, c-1) <= D (D - 1)` with `D = (3c^2 + 2c - 1) / (c - 1)`.
pub fn closing_inequality_holds(c: u64) -> Result<bool, BoundsError> {
    if c < 2 {
        return Err(BoundsError::OutOfRange { what: "c", min: 2, got: c });
    }
    let c_int = Integer::from(c);
    let big_d = Rational::new(Integer::from(3) * &c_int * &c_int + 2 * &c_int - 1, c_int - 1);
    let rhs = &big_d * (&big_d - Rational::one());
    let lhs = Rational::from_integer(Integer::from(central_value(c)) * 2);
    Ok(lhs <= rhs)
}

/// Runs the equality pipeline for `2 <= c <= c_max`: find `d` with
/// `binom(d, 2) = binom(2c-1, c-1)`, derive `g`, keep it iff
/// `0 <= g <= castelnuovo_max_genus(d, c)`.
pub fn classify_equality_cases(c_max: u64) -> Result<EqualityClassification, BoundsError> {
    if c_max < 2 {
        return Err(BoundsError::OutOfRange { what: "c_max", min: 2, got: c_max });
    }
    let mut out = EqualityClassification { c_max, survivors: Vec::new(), rejected: Vec::new(), closing_holds_at: Vec::new() };
    for c in 2..=c_max {
        let value = central_value(c);
        if let Some(d) = triangular_inverse(&value) {
            let d = Integer::from(d);
            let dm1: BigUint = (&d - Integer::one()).to_biguint().expect("d >= 2");
            let g = Integer::from(&dm1 * (&dm1 - 1u32) / 2u32) - binom_u(2 * c - 1, c - 2);
            let case = EqualityCase { castelnuovo: castelnuovo_max_genus(&d, c), d, c, g };
            if case.admissible() {
                out.survivors.push(case);
            } else {
                out.rejected.push(case);
            }
        }
        if c >= 6 && closing_inequality_holds(c)? {
            out.closing_holds_at.push(c);
        }
    }
    Ok(out)
}

/// Where `alpha + 1` sits relative to the ranges in which the available degree
/// bounds apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `alpha + 1 < 2c - 1`: `dim(W) > 2n + 1`, the quadric-count method gives nothing.
    MethodSilent,
    /// `2c - 1 <= alpha + 1 <= binom(c, 2)`.
    OurWindow,
    /// `binom(c, 2) < alpha + 1 <= binom(c + 1, 2)`: `d <= 2c`.
    ZakWindow,
    /// `alpha + 1 > binom(c + 1, 2)`: impossible for non-degenerate integral
    /// varieties and points in general position.
    AboveZakRange,
}

impl Regime {
    pub fn label(self) -> &'static str {
        match self {
            Regime::MethodSilent => "silent",
            Regime::OurWindow => "our-window",
            Regime::ZakWindow => "zak-window",
            Regime::AboveZakRange => "above-zak-range",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MenuRow {
    pub name: &'static str,
    pub bound: Integer,
    /// Whether the supplied `d` satisfies the bound.
    pub d_within: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegimeReport {
    pub c: u64,
    pub alpha_plus_one: u64,
    pub regime: Regime,
    /// `alpha + 1 >= 2c - 1`, so `binom(d, 2) <= binom(2c - 1, c - 1)` is
    /// available. Overlaps the Zak window for small `c`.
    pub ours_applies: bool,
    /// `alpha + 1 = binom(c + 1, 2)`: then `d = c + 1`, minimal degree.
    pub minimal_degree: bool,
    pub menu: Vec<MenuRow>,
}

impl RegimeReport {
    pub fn row(&self, name: &str) -> Option<&MenuRow> {
        self.menu.iter().find(|r| r.name == name)
    }

    pub fn to_json(&self) -> Value {
        let menu: Vec<Value> = self
            .menu
            .iter()
            .map(|r| json!({ "name": r.name, "bound": int(&r.bound), "d_within": r.d_within }))
            .collect();
        json!({
            "c": self.c,
            "alpha_plus_one": self.alpha_plus_one,
            "regime": self.regime.label(),
            "ours_applies": self.ours_applies,
            "minimal_degree": self.minimal_degree,
            "menu": menu,
        })
    }
}

/// Places `alpha + 1` among the windows and tabulates the degree bounds:
/// trivial `2^c`, the conjectural `2^(c-1) + 1`, our `d_max(c)`, Zak's `2c`
/// (in its window), and the `alpha`-refined bound valid when the image of the
/// auxiliary variety is non-degenerate.
pub fn regime_compare(d: Option<u64>, c: u64, alpha: u64) -> Result<RegimeReport, BoundsError> {
    if c < 2 {
        return Err(BoundsError::OutOfRange { what: "c", min: 2, got: c });
    }
    let a1 = alpha + 1;
    if a1 < c {
        return Err(BoundsError::AlphaBelowCodimension { alpha_plus_one: a1, c });
    }
    let (cc2, cc12) = (binom_u(c, 2), binom_u(c + 1, 2));
    let a1i = Integer::from(a1);
    let regime = if a1 < 2 * c - 1 {
        Regime::MethodSilent
    } else if a1i <= cc2 {
        Regime::OurWindow
    } else if a1i <= cc12 {
        Regime::ZakWindow
    } else {
        Regime::AboveZakRange
    };
    let two = Integer::from(2);
    let c32 = u32::try_from(c).expect("c fits in u32");
    let within = |b: &Integer| d.map(|d| Integer::from(d) <= *b);
    let mut menu = Vec::new();
    let mut push = |name: &'static str, bound: Integer| {
        let d_within = within(&bound);
        menu.push(MenuRow { name, bound, d_within });
    };
    push("trivial", two.pow(c32));
    push("egh", two.pow(c32 - 1) + 1);
    push("ours", Integer::from(d_max(c)));
    if regime == Regime::ZakWindow {
        push("zak", Integer::from(2 * c));
    }
    if a1 >= 2 * c - 1 {
        let refined = Integer::from(central_value(c)) + Integer::from(2 * c - 2) - Integer::from(alpha);
        let bound = if refined.is_negative() {
            Integer::zero()
        } else {
            Integer::from(triangular_floor(&refined.to_biguint().expect("non-negative")))
        };
        push("ours-nondegenerate-image", bound);
    }
    Ok(RegimeReport { c, alpha_plus_one: a1, regime, ours_applies: a1 >= 2 * c - 1, minimal_degree: a1i == cc12, menu })
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticRow {
    pub c: u64,
    pub d_max: Natural,
    /// `d_max (pi c)^(1/4) / 2^c`.
    pub ratio: f64,
}

fn log2_natural(n: &Natural) -> f64 {
    let bits = n.bits();
    if bits <= 64 {
        return n.to_f64().expect("fits").log2();
    }
    let shift = bits - 64;
    (n >> shift).to_f64().expect("fits").log2() + shift as f64
}

pub fn asymptotic_ratio(c: u64, d_max: &Natural) -> f64 {
    let l = log2_natural(d_max) + 0.25 * (std::f64::consts::PI * c as f64).log2() - c as f64;
    l.exp2()
}

pub fn asymptotic_table(c_from: u64, c_to: u64) -> Result<Vec<AsymptoticRow>, BoundsError> {
    if c_from < 2 {
        return Err(BoundsError::OutOfRange { what: "c_from", min: 2, got: c_from });
    }
    if c_from > c_to {
        return Err(BoundsError::EmptyRange { from: c_from, to: c_to });
    }
    Ok((c_from..=c_to)
        .map(|c| {
            let d = d_max(c);
            AsymptoticRow { c, ratio: asymptotic_ratio(c, &d), d_max: d }
        })
        .collect())
}

pub fn asymptotic_row_json(row: &AsymptoticRow) -> Value {
    json!({ "c": row.c, "d_max": nat(&row.d_max), "ratio": row.ratio })
}

pub fn equality_case_json(case: &EqualityCase) -> Value {
    json!({
        "d": int(&case.d),
        "c": case.c,
        "g": int(&case.g),
        "castelnuovo_max_genus": rational(&case.castelnuovo),
    })
}

#[derive(Debug, Deserialize)]
struct CsvRow {
    #[serde(default)]
    name: Option<String>,
    d: u64,
    n: u64,
    r: u64,
    alpha: Option<u64>,
    g: Option<u64>,
    h0: Option<u64>,
    p: Option<u64>,
    #[serde(default)]
    assume: Option<String>,
}

/// Reads descriptors from CSV with header `d,n,r,alpha,g,h0,p`; optional
/// columns `name` and `assume` (`;`-separated hypothesis tags). Blank cells are
/// absent values.
pub fn parse_catalog_csv(text: &str) -> Result<Vec<SchemeDescriptor>, BoundsError> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let mut out = Vec::new();
    for (line, row) in reader.deserialize::<CsvRow>().enumerate() {
        let row = row.map_err(|e| BoundsError::Catalog(format!("row {}: {e}", line + 1)))?;
        let assumptions = row
            .assume
            .as_deref()
            .unwrap_or("")
            .split(';')
            .filter(|t| !t.trim().is_empty())
            .map(str::parse)
            .collect::<Result<Vec<_>, _>>()?;
        out.push(SchemeDescriptor {
            name: row.name.filter(|s| !s.is_empty()),
            d: row.d,
            n: row.n,
            r: row.r,
            alpha: row.alpha,
            g: row.g,
            h0: row.h0,
            p: row.p,
            assumptions,
        });
    }
    Ok(out)
}

/// Reads descriptors from a JSON array of objects with the descriptor fields.
pub fn parse_catalog_json(text: &str) -> Result<Vec<SchemeDescriptor>, BoundsError> {
    serde_json::from_str(text).map_err(|e| BoundsError::Catalog(e.to_string()))
}

/// Runs the `N_p` check for descriptors with `p`, the main check otherwise.
pub fn audit(descriptors: &[SchemeDescriptor]) -> Vec<Result<BoundReport, BoundsError>> {
    descriptors
        .iter()
        .map(|s| if s.p.is_some() { np_bound_check(s) } else { main_bound_check(s) })
        .collect()
}
