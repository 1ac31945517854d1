//! Rearranging series along ordinal enumerations, and checking that the sum
//! does not move.
//!
//! A rearrangement never recomputes terms: the new series indexes into the
//! old term rule through the enumeration, so a transported term is bitwise
//! the value it had before. Convergence evidence travels the same road. The
//! tail certificate's `locate` is composed with the enumeration, which keeps
//! pointing at the very same terms in their new positions; the tail bound
//! itself, being a statement about term norms, needs no adjustment.

use crate::bijection::{compose_to, Enumeration};
use crate::engine::{sum_series, EvalBudget, SumOutcome};
use crate::hyperseq::Hypersequence;
use crate::ordinal::Ordinal;
use crate::space::{axpy, SpaceElement};
use std::fmt;
use std::fmt::Write as _;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RearrangeError {
    #[error("the series domain must be w, got {0}")]
    DomainNotOmega(Ordinal),
    #[error("domain mismatch: series over {series}, enumeration of {enumeration}")]
    DomainMismatch {
        series: Ordinal,
        enumeration: Ordinal,
    },
}

/// Spreads a series over `w` out along the order `e` enumerates: the term at
/// position `g` of the result is the original term at index `e.forward(g)`.
pub fn rearrange_from_omega(
    h: &Hypersequence,
    e: &Enumeration,
) -> Result<Hypersequence, RearrangeError> {
    if *h.domain() != Ordinal::omega() {
        return Err(RearrangeError::DomainNotOmega(h.domain().clone()));
    }
    let term = Arc::clone(h.term_rule());
    let fwd = e.forward_arc();
    let back = e.backward_arc();
    let cert = h.certificate().map(|c| {
        c.compose(move |idx| back(idx.to_u64().expect("certificate locates inside w")))
    });
    Ok(Hypersequence::from_parts(
        e.alpha().clone(),
        h.space(),
        Arc::new(move |g: &Ordinal| term(&Ordinal::from_natural(fwd(g)))),
        cert,
    ))
}

/// Collapses a series over the enumerated ordinal back onto `w`: term `n` of
/// the result is the original term at `e.backward(n)`.
pub fn rearrange_to_omega(
    h: &Hypersequence,
    e: &Enumeration,
) -> Result<Hypersequence, RearrangeError> {
    if h.domain() != e.alpha() {
        return Err(RearrangeError::DomainMismatch {
            series: h.domain().clone(),
            enumeration: e.alpha().clone(),
        });
    }
    let term = Arc::clone(h.term_rule());
    let fwd = e.forward_arc();
    let back = e.backward_arc();
    let cert = h
        .certificate()
        .map(|c| c.compose(move |idx| Ordinal::from_natural(fwd(idx))));
    Ok(Hypersequence::from_parts(
        Ordinal::omega(),
        h.space(),
        Arc::new(move |n: &Ordinal| term(&back(n.to_u64().expect("index inside w")))),
        cert,
    ))
}

/// Moves a series between two enumerated orders in one step, routing through
/// the shared position numbering instead of materializing the middle series.
pub fn rearrange_general(
    h: &Hypersequence,
    e_from: &Enumeration,
    e_to: &Enumeration,
) -> Result<Hypersequence, RearrangeError> {
    if h.domain() != e_from.alpha() {
        return Err(RearrangeError::DomainMismatch {
            series: h.domain().clone(),
            enumeration: e_from.alpha().clone(),
        });
    }
    let route = compose_to(e_from, e_to);
    let term = Arc::clone(h.term_rule());
    let map = route.map_arc();
    let inv = route.inverse_arc();
    let cert = h.certificate().map(|c| c.compose(move |idx| inv(idx)));
    Ok(Hypersequence::from_parts(
        e_to.alpha().clone(),
        h.space(),
        Arc::new(move |g: &Ordinal| term(&map(g))),
        cert,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Where the decisive initial mass of the series ends up after rearranging.
#[derive(Debug, Clone, PartialEq)]
pub struct TailData {
    /// Smallest n with tail bound strictly below the tolerance.
    pub n0: u64,
    /// Strict upper bound on the rearranged positions of the first `n0 + 1`
    /// terms, never below `w + 1`.
    pub beta0: Ordinal,
    pub beta0_in_domain: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub original: SumOutcome,
    pub rearranged: SumOutcome,
    /// Norm distance between the two sums; 0 when either side is unresolved.
    pub discrepancy: f64,
    pub tolerance: f64,
    pub tail_data: Option<TailData>,
    pub verdict: Verdict,
}

pub const VERIFY_CSV_HEADER: &str = "series,ordinal,bijection,verdict,discrepancy,err_total";

impl VerificationReport {
    pub fn err_total(&self) -> f64 {
        self.original.err().unwrap_or(0.0) + self.rearranged.err().unwrap_or(0.0)
    }

    pub fn csv_row(&self, series: &str, ordinal: &str, bijection: &str) -> String {
        format!(
            "{series},{ordinal},{bijection},{},{},{}",
            self.verdict,
            self.discrepancy,
            self.err_total()
        )
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        writeln!(s, "original:    {}", outcome_line(&self.original)).unwrap();
        writeln!(s, "rearranged:  {}", outcome_line(&self.rearranged)).unwrap();
        writeln!(s, "discrepancy: {:e}", self.discrepancy).unwrap();
        writeln!(
            s,
            "allowance:   {:e} combined err + {:e} tolerance",
            self.err_total(),
            self.tolerance
        )
        .unwrap();
        if let Some(t) = &self.tail_data {
            writeln!(
                s,
                "tail:        n0={}, beta0={}{}",
                t.n0,
                t.beta0,
                if t.beta0_in_domain {
                    ""
                } else {
                    " (beyond domain)"
                }
            )
            .unwrap();
        }
        write!(s, "verdict:     {}", self.verdict).unwrap();
        s
    }
}

fn outcome_line(o: &SumOutcome) -> String {
    match o {
        SumOutcome::Converged {
            sum,
            err,
            certified,
        } => {
            let tag = if *certified { "" } else { " (heuristic)" };
            format!("{} ± {:e}{}", value_text(sum), err, tag)
        }
        SumOutcome::Unresolved { reached, reason } => {
            format!("unresolved at {reached} ({reason})")
        }
    }
}

fn value_text(v: &SpaceElement) -> String {
    match v {
        SpaceElement::Scalar(x) => format!("{x:.9}"),
        SpaceElement::Vector(xs) => {
            let coords: Vec<String> = xs.iter().map(|x| format!("{x:.9}")).collect();
            format!("[{}]", coords.join("; "))
        }
    }
}

/// Sums the series over `w`, sums its rearrangement along `e`, and compares.
/// Pass means the sums agree within the combined error bounds plus the
/// tolerance; a side that does not resolve leaves the verdict inconclusive
/// rather than guessed.
pub fn verify_invariance(
    h: &Hypersequence,
    e: &Enumeration,
    budget: &EvalBudget,
) -> Result<VerificationReport, RearrangeError> {
    let rearranged_series = rearrange_from_omega(h, e)?;
    let original = sum_series(h, budget);
    let rearranged = sum_series(&rearranged_series, budget);
    let eps = budget.tolerance();

    let (discrepancy, verdict) = match (&original, &rearranged) {
        (
            SumOutcome::Converged { sum: a, err: ea, .. },
            SumOutcome::Converged { sum: b, err: eb, .. },
        ) => {
            let d = axpy(-1.0, a, b).expect("same space").norm();
            let verdict = if d <= ea + eb + eps {
                Verdict::Pass
            } else {
                Verdict::Fail
            };
            (d, verdict)
        }
        _ => (0.0, Verdict::Inconclusive),
    };

    let tail_data = h.certificate().and_then(|cert| {
        let n0 = (0..=budget.term_cap()).find(|&n| cert.bound().at(n) < eps)?;
        let mut beta0 = Ordinal::omega();
        for k in 0..=n0 {
            let pos = e.backward(k);
            if pos > beta0 {
                beta0 = pos;
            }
        }
        let beta0 = beta0.plus_finite(1);
        let beta0_in_domain = beta0 <= *e.alpha();
        Some(TailData {
            n0,
            beta0,
            beta0_in_domain,
        })
    });

    Ok(VerificationReport {
        original,
        rearranged,
        discrepancy,
        tolerance: eps,
        tail_data,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bijection::{canonical_enumeration, perturb};
    use crate::engine::UnresolvedReason;
    use crate::hyperseq::{make_family, FamilySpec};
    use crate::space::SpaceTag;
    use crate::text::parse;

    fn o(s: &str) -> Ordinal {
        parse(s).unwrap()
    }

    fn geometric(r: f64) -> Hypersequence {
        make_family(FamilySpec::Geometric { ratio: r }).unwrap()
    }

    fn scalar(out: &SumOutcome) -> f64 {
        match out.sum().unwrap() {
            SpaceElement::Scalar(v) => *v,
            other => panic!("expected scalar, got {other:?}"),
        }
    }

    #[test]
    fn identity_enumeration_is_a_no_op() {
        let h = geometric(0.5);
        let e = canonical_enumeration(&Ordinal::omega()).unwrap();
        let g = rearrange_from_omega(&h, &e).unwrap();
        for n in 0..200 {
            let idx = Ordinal::from_natural(n);
            assert!(g
                .term_at(&idx)
                .unwrap()
                .bitwise_eq(&h.term_at(&idx).unwrap()));
        }
    }

    #[test]
    fn transported_terms_are_bitwise_copies() {
        let h = make_family(FamilySpec::NOverTwoN).unwrap();
        let e = canonical_enumeration(&o("w^2")).unwrap();
        let g = rearrange_from_omega(&h, &e).unwrap();
        let back = rearrange_to_omega(&g, &e).unwrap();
        for n in 0..10_000u64 {
            let idx = Ordinal::from_natural(n);
            let original = h.term_at(&idx).unwrap();
            // same term found at its new position
            let moved = g.term_at(&e.backward(n)).unwrap();
            assert!(moved.bitwise_eq(&original), "term {n} changed in transit");
            // and the round trip restores the layout exactly
            assert!(back.term_at(&idx).unwrap().bitwise_eq(&original));
        }
    }

    #[test]
    fn certificate_locations_follow_the_terms() {
        let h = geometric(0.5);
        let e = canonical_enumeration(&o("w^2")).unwrap();
        let g = rearrange_from_omega(&h, &e).unwrap();
        let cert = g.certificate().expect("certificate must carry over");
        for k in 0..50 {
            assert_eq!(cert.locate(k), e.backward(k));
        }
    }

    #[test]
    fn invariance_over_omega_squared() {
        let h = make_family(FamilySpec::NOverTwoN).unwrap();
        let e = canonical_enumeration(&o("w^2")).unwrap();
        let report = verify_invariance(&h, &e, &EvalBudget::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Pass, "{}", report.render());
        assert!((scalar(&report.rearranged) - 2.0).abs() <= report.err_total() + 1e-9);
        let tail = report.tail_data.expect("certified series has tail data");
        assert!(tail.beta0 >= o("w+1"));
        assert!(tail.beta0_in_domain);
    }

    #[test]
    fn invariance_under_perturbation() {
        let h = geometric(0.5);
        let base = canonical_enumeration(&Ordinal::omega()).unwrap();
        for seed in 0..5 {
            let e = perturb(&base, seed, 128);
            let report = verify_invariance(&h, &e, &EvalBudget::default()).unwrap();
            assert_eq!(report.verdict, Verdict::Pass, "seed {seed}");
            assert!((scalar(&report.rearranged) - 1.0).abs() <= report.err_total() + 1e-9);
        }
    }

    #[test]
    fn invariance_for_vector_series() {
        let h = make_family(FamilySpec::VectorGeometric { dim: 3, ratio: -0.5 }).unwrap();
        let e = canonical_enumeration(&o("w*2")).unwrap();
        let report = verify_invariance(&h, &e, &EvalBudget::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Pass, "{}", report.render());
    }

    #[test]
    fn zero_series_rearranges_to_exact_zero() {
        let h = make_family(FamilySpec::Zero).unwrap();
        let e = canonical_enumeration(&o("w^2*3+w+5")).unwrap();
        let report = verify_invariance(&h, &e, &EvalBudget::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
        assert_eq!(report.discrepancy, 0.0);
        assert_eq!(report.err_total(), 0.0);
        let tail = report.tail_data.unwrap();
        assert_eq!(tail.n0, 0);
        // natural 0 sits at the first slot of the domain's finite tail
        assert_eq!(tail.beta0, o("w^2*3+w+1"));
        assert!(tail.beta0_in_domain);
    }

    #[test]
    fn uncertified_series_is_inconclusive_not_guessed() {
        let harmonic = Hypersequence::new(Ordinal::omega(), SpaceTag::Scalar, |i| {
            SpaceElement::Scalar(1.0 / (i.to_u64().unwrap() as f64 + 1.0))
        });
        let e = canonical_enumeration(&o("w^2")).unwrap();
        let report = verify_invariance(&harmonic, &e, &EvalBudget::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Inconclusive);
        assert_eq!(report.discrepancy, 0.0);
        assert!(report.tail_data.is_none());
        assert!(matches!(
            report.original,
            SumOutcome::Unresolved {
                reason: UnresolvedReason::NoTailBound,
                ..
            }
        ));
    }

    #[test]
    fn general_rearrangement_routes_between_orders() {
        let h = geometric(0.5);
        let e_mid = canonical_enumeration(&o("w*2")).unwrap();
        let e_far = canonical_enumeration(&o("w^2")).unwrap();
        let over_mid = rearrange_from_omega(&h, &e_mid).unwrap();
        let over_far = rearrange_general(&over_mid, &e_mid, &e_far).unwrap();
        assert_eq!(over_far.domain(), &o("w^2"));
        // positions carry the same terms: position i of e_far holds the term
        // that position with the same number held under e_mid
        for n in 0..1000u64 {
            let a = over_mid.term_at(&e_mid.backward(n)).unwrap();
            let b = over_far.term_at(&e_far.backward(n)).unwrap();
            assert!(a.bitwise_eq(&b));
        }
        let out = sum_series(&over_far, &EvalBudget::default());
        let err = out.err().unwrap();
        assert!((scalar(&out) - 1.0).abs() <= err);
    }

    #[test]
    fn domain_checks_reject_mismatches() {
        let h = geometric(0.5);
        let e2 = canonical_enumeration(&o("w^2")).unwrap();
        let g = rearrange_from_omega(&h, &e2).unwrap();
        assert!(matches!(
            rearrange_from_omega(&g, &e2),
            Err(RearrangeError::DomainNotOmega(_))
        ));
        let e_other = canonical_enumeration(&o("w*2")).unwrap();
        assert!(matches!(
            rearrange_to_omega(&g, &e_other),
            Err(RearrangeError::DomainMismatch { .. })
        ));
        assert!(matches!(
            rearrange_general(&h, &e2, &e_other),
            Err(RearrangeError::DomainMismatch { .. })
        ));
    }

    #[test]
    fn prefixes_past_beta0_capture_the_sum() {
        let h = make_family(FamilySpec::NOverTwoN).unwrap();
        let e = canonical_enumeration(&o("w^2")).unwrap();
        let budget = EvalBudget::default();
        let report = verify_invariance(&h, &e, &budget).unwrap();
        let tail = report.tail_data.clone().unwrap();
        assert!(tail.beta0_in_domain);
        let g = rearrange_from_omega(&h, &e).unwrap();
        let whole = scalar(&report.original);
        let err_whole = report.original.err().unwrap();
        let t_n0 = h.certificate().unwrap().bound().at(tail.n0);
        for extra in ["0", "1", "w", "w*3+2", "w*17"] {
            let beta = tail.beta0.add(&o(extra));
            assert!(beta <= o("w^2"));
            let prefix = g.restrict(beta.clone()).unwrap();
            let out = sum_series(&prefix, &budget);
            let err_prefix = out.err().unwrap();
            let gap = (scalar(&out) - whole).abs();
            assert!(
                gap <= t_n0 + err_whole + err_prefix,
                "beta = beta0 + {extra}: gap {gap}"
            );
        }
    }

    #[test]
    fn report_rendering_is_line_oriented() {
        let h = geometric(0.5);
        let e = canonical_enumeration(&o("w*2")).unwrap();
        let report = verify_invariance(&h, &e, &EvalBudget::default()).unwrap();
        let text = report.render();
        assert!(text.lines().count() >= 5, "{text}");
        assert!(text.contains("verdict:     pass"), "{text}");
        let row = report.csv_row("geometric(0.5)", "w*2", "canonical");
        assert!(row.starts_with("geometric(0.5),w*2,canonical,pass,"), "{row}");
        assert_eq!(row.split(',').count(), 6);
    }
}
