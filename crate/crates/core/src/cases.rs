//! Named worked examples with their expected verdicts.

use crate::bounds::{main_bound_check, BoundReport, BoundsError, Hypothesis, SchemeDescriptor, Verdict};
use crate::Integer;

/// The part of a [`BoundReport`] a case study pins down.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expected {
    pub lhs: u64,
    pub rhs: u64,
    pub main_bound_ok: bool,
    pub equality: bool,
    pub alpha_lower_ok: Verdict,
    pub equality_iff_alpha: Verdict,
    pub hit: Option<(u64, u64, u64)>,
    pub excluded: Vec<Hypothesis>,
    /// A message the report must contain.
    pub conclusion: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseStudy {
    pub name: &'static str,
    pub descriptor: SchemeDescriptor,
    pub expected: Expected,
    pub description: &'static str,
}

#[derive(Debug, Clone)]
pub struct CaseOutcome {
    pub report: BoundReport,
    pub mismatches: Vec<String>,
}

impl CaseOutcome {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl CaseStudy {
    /// Recomputes the report and lists every field that differs from the expectation.
    pub fn verify(&self) -> Result<CaseOutcome, BoundsError> {
        let report = main_bound_check(&self.descriptor)?;
        let e = &self.expected;
        let mut mismatches = Vec::new();
        let mut check = |what: &str, ok: bool, got: String| {
            if !ok {
                mismatches.push(format!("{what}: got {got}"));
            }
        };
        check("lhs", report.main.lhs == Integer::from(e.lhs), report.main.lhs.to_string());
        check("rhs", report.main.rhs == Integer::from(e.rhs), report.main.rhs.to_string());
        check("main bound", report.main_bound_ok() == e.main_bound_ok, report.main_bound_ok().to_string());
        check("equality", report.equality() == e.equality, report.equality().to_string());
        check("alpha lower bound", report.alpha_lower_ok == e.alpha_lower_ok, report.alpha_lower_ok.label().into());
        check(
            "equality criterion",
            report.equality_iff_alpha == e.equality_iff_alpha,
            report.equality_iff_alpha.label().into(),
        );
        let hit = report.classification_hit().map(|l| (l.d, l.c, l.g));
        check("classification", hit == e.hit, format!("{hit:?}"));
        for h in &e.excluded {
            check(&format!("exclusion of {h}"), report.excludes(*h), "not excluded".into());
        }
        check(
            "conclusion",
            report.messages.iter().any(|m| m == e.conclusion),
            format!("{:?}", report.messages),
        );
        Ok(CaseOutcome { report, mismatches })
    }
}

pub fn registry() -> Vec<CaseStudy> {
    use Hypothesis::*;
    vec![
        CaseStudy {
            name: "eight-points-p4",
            descriptor: SchemeDescriptor::new(8, 0, 4).alpha(6).named("eight-points-p4"),
            expected: Expected {
                lhs: 28,
                rhs: 35,
                main_bound_ok: true,
                equality: false,
                alpha_lower_ok: Verdict::Holds,
                equality_iff_alpha: Verdict::Fails,
                hit: None,
                excluded: vec![Np(2), N2p(2), K2, WAtMost2n],
                conclusion: "property N_2 excluded",
            },
            description: "8 points in general position in P^4, base locus of 7 quadrics",
        },
        CaseStudy {
            name: "remW-nine-points",
            descriptor: SchemeDescriptor::new(9, 0, 4).alpha(6).named("remW-nine-points"),
            expected: Expected {
                lhs: 36,
                rhs: 35,
                main_bound_ok: false,
                equality: false,
                alpha_lower_ok: Verdict::Holds,
                equality_iff_alpha: Verdict::Fails,
                hit: None,
                excluded: vec![WAtMost2nPlus1],
                conclusion: "bound violated: 36 > 35",
            },
            description: "8 points of w = 0 plus (0:0:0:0:1) in P^4, base locus of (F0, F1, F2, wx, wy, wz, wu)",
        },
        CaseStudy {
            name: "segre-p1p2-section",
            descriptor: SchemeDescriptor::new(3, 3, 5).alpha(2).genus(0).named("segre-p1p2-section"),
            expected: Expected {
                lhs: 3,
                rhs: 3,
                main_bound_ok: true,
                equality: true,
                alpha_lower_ok: Verdict::Holds,
                equality_iff_alpha: Verdict::Holds,
                hit: Some((3, 2, 0)),
                excluded: vec![],
                conclusion: "equality case (3,2,0) rational normal curve section",
            },
            description: "P^1 x P^2 in P^5, 3 quadrics, twisted cubic curve sections",
        },
        CaseStudy {
            name: "g14-section",
            descriptor: SchemeDescriptor::new(5, 6, 9).alpha(4).genus(1).named("g14-section"),
            expected: Expected {
                lhs: 10,
                rhs: 10,
                main_bound_ok: true,
                equality: true,
                alpha_lower_ok: Verdict::Holds,
                equality_iff_alpha: Verdict::Holds,
                hit: Some((5, 3, 1)),
                excluded: vec![],
                conclusion: "equality case (5,3,1) elliptic normal curve section",
            },
            description: "G(1,4) in P^9, 5 Pluecker quadrics, elliptic quintic curve sections",
        },
        CaseStudy {
            name: "genus3-octic-p5",
            descriptor: SchemeDescriptor::new(8, 1, 5).alpha(6).genus(3).named("genus3-octic-p5"),
            expected: Expected {
                lhs: 28,
                rhs: 35,
                main_bound_ok: true,
                equality: false,
                alpha_lower_ok: Verdict::Holds,
                equality_iff_alpha: Verdict::Fails,
                hit: None,
                excluded: vec![Np(2), N2p(2), K2, WAtMost2n],
                conclusion: "property N_2 excluded",
            },
            description: "curve of genus 3 and degree 8 in P^5, 7 quadrics",
        },
    ]
}

pub fn find(name: &str) -> Option<CaseStudy> {
    registry().into_iter().find(|c| c.name == name)
}

/// Verifies every registered case; returns the names that fail.
pub fn self_check() -> Vec<String> {
    registry()
        .iter()
        .filter(|c| !c.verify().map(|o| o.passed()).unwrap_or(false))
        .map(|c| c.name.to_string())
        .collect()
}
