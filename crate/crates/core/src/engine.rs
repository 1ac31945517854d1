//! Evaluates transfinite partial sums: zero at the start, term added at each
//! successor, limit value at each limit stage.
//!
//! A finite machine cannot take exact limits, so limit stages are resolved in
//! one of two ways.
//!
//! In certified mode (a [`TailCertificate`] is attached) the evaluator picks
//! a single threshold `n0` with `T(n0) <= tolerance/2` and marks the indices
//! `locate(0..n0)` as significant. The recursion then walks the domain's CNF
//! blocks and evaluates just enough of a prefix of each block to cover every
//! significant index inside it, skipping blocks that contain none. Each
//! skipped index is skipped at exactly one stage and lies outside the located
//! prefix, so the total skipped mass is at most `T(n0)`; that figure (plus a
//! rounding allowance) is the reported error. This mirrors the classical
//! proof device of fixing one `n0` for the whole argument, and keeps the
//! total truncation bound independent of how many limit stages the domain
//! nests.
//!
//! In heuristic mode (no certificate, opted in via the budget) each limit is
//! sampled along its fundamental sequence until eight consecutive partial
//! sums agree within the tolerance. The result carries `certified: false`:
//! Cauchy stabilization can be fooled by slowly moving series, which is why
//! it is opt-in and capped.
//!
//! Divergence is never claimed. A series that cannot be resolved within the
//! budget comes back [`SumOutcome::Unresolved`] at the innermost limit the
//! evaluator was working toward.

use crate::bijection::canonical_enumeration;
use crate::hyperseq::{mask, Hypersequence, HyperseqError, IndicatorMask, TailCertificate};
use crate::ordinal::{Ordinal, OrdinalKind};
use crate::space::{axpy, SpaceElement, SpaceTag};
use num_traits::ToPrimitive;
use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnresolvedReason {
    /// Certified evaluation was requested but the series carries no tail
    /// certificate, so no limit can be soundly resolved.
    NoTailBound,
    /// A cap was hit: the term budget ran out, or no threshold `n0` with a
    /// small enough tail bound exists within the budget.
    LimitBudgetExhausted,
    /// Heuristic sampling never saw eight consecutive partials agree.
    CauchyFailed,
}

impl fmt::Display for UnresolvedReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UnresolvedReason::NoTailBound => "no-tail-bound",
            UnresolvedReason::LimitBudgetExhausted => "limit-budget-exhausted",
            UnresolvedReason::CauchyFailed => "cauchy-failed",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SumOutcome {
    Converged {
        sum: SpaceElement,
        /// Bound on the distance to the true sum when `certified`; a rough
        /// stabilization estimate otherwise.
        err: f64,
        certified: bool,
    },
    Unresolved {
        /// The limit ordinal whose value could not be established.
        reached: Ordinal,
        reason: UnresolvedReason,
    },
}

impl SumOutcome {
    pub fn is_converged(&self) -> bool {
        matches!(self, SumOutcome::Converged { .. })
    }

    pub fn sum(&self) -> Option<&SpaceElement> {
        match self {
            SumOutcome::Converged { sum, .. } => Some(sum),
            SumOutcome::Unresolved { .. } => None,
        }
    }

    pub fn err(&self) -> Option<f64> {
        match self {
            SumOutcome::Converged { err, .. } => Some(*err),
            SumOutcome::Unresolved { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalBudget {
    tolerance: f64,
    limit_samples: u64,
    term_cap: u64,
    allow_heuristic: bool,
}

impl EvalBudget {
    /// `tolerance > 0`, `limit_samples >= 2`, `term_cap >= limit_samples`.
    pub fn new(tolerance: f64, limit_samples: u64, term_cap: u64) -> Result<Self, EngineError> {
        if !(tolerance > 0.0) {
            return Err(EngineError::InvalidBudget(format!(
                "tolerance must be positive, got {tolerance}"
            )));
        }
        if limit_samples < 2 {
            return Err(EngineError::InvalidBudget(format!(
                "limit sample cap must be at least 2, got {limit_samples}"
            )));
        }
        if term_cap < limit_samples {
            return Err(EngineError::InvalidBudget(format!(
                "term cap {term_cap} is below the limit sample cap {limit_samples}"
            )));
        }
        Ok(EvalBudget {
            tolerance,
            limit_samples,
            term_cap,
            allow_heuristic: false,
        })
    }

    pub fn with_heuristic(mut self, allow: bool) -> Self {
        self.allow_heuristic = allow;
        self
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn limit_samples(&self) -> u64 {
        self.limit_samples
    }

    pub fn term_cap(&self) -> u64 {
        self.term_cap
    }

    pub fn allow_heuristic(&self) -> bool {
        self.allow_heuristic
    }
}

impl Default for EvalBudget {
    fn default() -> Self {
        EvalBudget {
            tolerance: 1e-9,
            limit_samples: 1_000_000,
            term_cap: 10_000_000,
            allow_heuristic: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EngineError {
    #[error("invalid budget: {0}")]
    InvalidBudget(String),
    #[error("{0} is not a limit ordinal")]
    NotALimit(Ordinal),
    #[error("{lambda} exceeds the domain {domain}")]
    BeyondDomain { lambda: Ordinal, domain: Ordinal },
    #[error("partial sum at {at} did not resolve ({reason})")]
    PrefixUnresolved { at: Ordinal, reason: UnresolvedReason },
}

/// The evaluation, Unresolved outcomes carried as `Err` with the limit to
/// blame and the reason.
type Step = Result<(), (Ordinal, UnresolvedReason)>;

struct Eval<'a> {
    h: &'a Hypersequence,
    tolerance: f64,
    limit_samples: u64,
    term_cap: u64,
    terms_used: u64,
    norm_acc: f64,
    acc: SpaceElement,
    max_diameter: f64,
}

impl<'a> Eval<'a> {
    fn new(h: &'a Hypersequence, budget: &EvalBudget) -> Self {
        Eval {
            h,
            tolerance: budget.tolerance,
            limit_samples: budget.limit_samples,
            term_cap: budget.term_cap,
            terms_used: 0,
            norm_acc: 0.0,
            acc: h.space().zero(),
            max_diameter: 0.0,
        }
    }

    fn add(&mut self, t: SpaceElement) {
        self.terms_used += 1;
        self.norm_acc += t.norm();
        self.acc = axpy(1.0, &t, &self.acc).expect("terms share the series space");
    }

    /// First-order bound on accumulated floating-point error.
    fn rounding(&self) -> f64 {
        self.terms_used as f64 * f64::EPSILON * self.norm_acc
    }

    /// Sums `len` consecutive terms from `start`. With `enclosing` present
    /// the global term cap applies and exhaustion is blamed on that limit;
    /// without it (a purely finite stretch of the domain) the run is exact.
    fn run(&mut self, start: &Ordinal, len: u64, enclosing: Option<&Ordinal>) -> Step {
        for k in 0..len {
            if let Some(limit) = enclosing {
                if self.terms_used >= self.term_cap {
                    return Err((limit.clone(), UnresolvedReason::LimitBudgetExhausted));
                }
            }
            let t = self.h.term_unchecked(&start.plus_finite(k));
            self.add(t);
        }
        Ok(())
    }

    // ------------------------------------------------------------------
    // Certified walk: visit exactly the regions holding significant indices.
    // ------------------------------------------------------------------

    /// Sums `[offset, offset + shape)`; `sig` holds the significant indices
    /// relative to `offset`, sorted ascending.
    fn segment(&mut self, offset: &Ordinal, shape: &Ordinal, sig: &[Ordinal]) -> Step {
        let mut base = offset.clone();
        let mut consumed = Ordinal::zero();
        let mut i = 0;
        for (e, c) in shape.terms() {
            if e.is_zero() {
                let len = c.to_u64().expect("finite segment length fits u64");
                return self.run(&base, len, None);
            }
            let block = Ordinal::omega_pow(e);
            let group_len = block.mul(&Ordinal::from_big(c.clone()));
            let group_end = consumed.add(&group_len);
            while i < sig.len() && sig[i] < group_end {
                let in_group = consumed
                    .left_sub(&sig[i])
                    .expect("sig entries are sorted past consumed blocks");
                let copy = coefficient_at(&in_group, e);
                let copy_rel = consumed.add(&block.mul(&Ordinal::from_natural(copy)));
                let copy_end = consumed.add(&block.mul(&Ordinal::from_natural(copy + 1)));
                let mut rels = Vec::new();
                while i < sig.len() && sig[i] < copy_end {
                    rels.push(copy_rel.left_sub(&sig[i]).expect("sig sorted within copy"));
                    i += 1;
                }
                let abs = base.add(&block.mul(&Ordinal::from_natural(copy)));
                let parent = abs.add(&block);
                self.pow_block(&abs, e, &rels, &parent)?;
            }
            base = base.add(&group_len);
            consumed = group_end;
        }
        Ok(())
    }

    /// Sums enough of the block `[start, start + w^e)` to cover every
    /// relative offset in `rels` (nonempty, sorted), discarding the rest.
    fn pow_block(&mut self, start: &Ordinal, e: &Ordinal, rels: &[Ordinal], parent: &Ordinal) -> Step {
        match e.to_u64() {
            Some(0) => return self.run(start, 1, Some(parent)),
            Some(1) => {
                let hi = rels.last().expect("nonempty").to_u64().expect("offset below w");
                let end = start.add(&Ordinal::omega());
                return self.run(start, hi + 1, Some(&end));
            }
            _ => {}
        }
        let limit_here = start.add(&Ordinal::omega_pow(e));
        match e.kind() {
            OrdinalKind::Zero => unreachable!("handled above"),
            OrdinalKind::Successor => {
                let d = e.predecessor();
                let block = Ordinal::omega_pow(&d);
                let mut i = 0;
                while i < rels.len() {
                    let copy = coefficient_at(&rels[i], &d);
                    let copy_rel = block.mul(&Ordinal::from_natural(copy));
                    let copy_end = block.mul(&Ordinal::from_natural(copy + 1));
                    let mut inner = Vec::new();
                    while i < rels.len() && rels[i] < copy_end {
                        inner.push(copy_rel.left_sub(&rels[i]).expect("rels sorted within copy"));
                        i += 1;
                    }
                    let abs = start.add(&copy_rel);
                    self.pow_block(&abs, &d, &inner, &limit_here)?;
                }
                Ok(())
            }
            OrdinalKind::Limit => {
                // Smallest fundamental-sequence stage whose block covers
                // every significant offset.
                let max = rels.last().expect("nonempty");
                let mut m = 0u64;
                let stage = loop {
                    if m >= self.limit_samples {
                        return Err((limit_here, UnresolvedReason::LimitBudgetExhausted));
                    }
                    let cand = e.fundamental_sequence(m).expect("e is a limit");
                    if *max < Ordinal::omega_pow(&cand) {
                        break cand;
                    }
                    m += 1;
                };
                self.pow_block(start, &stage, rels, &limit_here)
            }
        }
    }

    // ------------------------------------------------------------------
    // Heuristic walk: Cauchy stabilization at every limit.
    // ------------------------------------------------------------------

    fn heur_segment(&mut self, offset: &Ordinal, shape: &Ordinal) -> Step {
        let mut base = offset.clone();
        for (e, c) in shape.terms() {
            if e.is_zero() {
                let len = c.to_u64().expect("finite segment length fits u64");
                return self.run(&base, len, None);
            }
            let copies = c.to_u64().expect("block coefficient fits u64");
            let block = Ordinal::omega_pow(e);
            let group_end = base.add(&block.mul(&Ordinal::from_big(c.clone())));
            let mut window = Window::new();
            let mut done = false;
            for t in 0..copies {
                if window.stable(self.tolerance) {
                    self.note_diameter(&window);
                    done = true;
                    break;
                }
                if t >= self.limit_samples {
                    return Err((group_end, UnresolvedReason::CauchyFailed));
                }
                let copy_start = base.add(&block.mul(&Ordinal::from_natural(t)));
                self.heur_pow(&copy_start, e)?;
                window.push(self.acc.clone());
            }
            if !done {
                self.note_diameter(&window);
            }
            base = group_end;
        }
        Ok(())
    }

    /// Resolves the limit of the block `[start, start + w^e)` by sampling.
    fn heur_pow(&mut self, start: &Ordinal, e: &Ordinal) -> Step {
        match e.to_u64() {
            Some(0) => {
                let parent = start.add(&Ordinal::one());
                return self.run(start, 1, Some(&parent));
            }
            _ => {}
        }
        let limit_here = start.add(&Ordinal::omega_pow(e));
        match e.kind() {
            OrdinalKind::Zero => unreachable!("handled above"),
            OrdinalKind::Successor if e.to_u64() == Some(1) => {
                let mut window = Window::new();
                for k in 0.. {
                    if window.stable(self.tolerance) {
                        self.note_diameter(&window);
                        return Ok(());
                    }
                    if k >= self.limit_samples {
                        return Err((limit_here, UnresolvedReason::CauchyFailed));
                    }
                    if self.terms_used >= self.term_cap {
                        return Err((limit_here, UnresolvedReason::LimitBudgetExhausted));
                    }
                    let t = self.h.term_unchecked(&start.plus_finite(k));
                    self.add(t);
                    window.push(self.acc.clone());
                }
                unreachable!()
            }
            OrdinalKind::Successor => {
                let d = e.predecessor();
                let block = Ordinal::omega_pow(&d);
                let mut window = Window::new();
                for t in 0.. {
                    if window.stable(self.tolerance) {
                        self.note_diameter(&window);
                        return Ok(());
                    }
                    if t >= self.limit_samples {
                        return Err((limit_here, UnresolvedReason::CauchyFailed));
                    }
                    let copy_start = start.add(&block.mul(&Ordinal::from_natural(t)));
                    self.heur_pow(&copy_start, &d)?;
                    window.push(self.acc.clone());
                }
                unreachable!()
            }
            OrdinalKind::Limit => {
                // Chunks between consecutive fundamental-sequence stages;
                // each chunk [w^e[m-1], w^e[m]) has order type w^e[m].
                let mut window = Window::new();
                let mut reached = Ordinal::zero(); // relative stage height
                for m in 0.. {
                    if window.stable(self.tolerance) {
                        self.note_diameter(&window);
                        return Ok(());
                    }
                    if m >= self.limit_samples {
                        return Err((limit_here, UnresolvedReason::CauchyFailed));
                    }
                    let stage = e.fundamental_sequence(m).expect("e is a limit");
                    let chunk_start = start.add(&reached);
                    self.heur_pow(&chunk_start, &stage)?;
                    reached = Ordinal::omega_pow(&stage);
                    window.push(self.acc.clone());
                }
                unreachable!()
            }
        }
    }

    fn note_diameter(&mut self, window: &Window) {
        self.max_diameter = self.max_diameter.max(window.diameter());
    }
}

/// Coefficient of `w^e` in `x` (zero when `x`'s leading exponent is smaller).
fn coefficient_at(x: &Ordinal, e: &Ordinal) -> u64 {
    if x.leading_exponent() == Some(e) {
        let (_, c) = x.terms().next().expect("nonzero");
        c.to_u64().expect("significant index coefficient fits u64")
    } else {
        0
    }
}

const CAUCHY_WINDOW: usize = 8;

struct Window {
    vals: VecDeque<SpaceElement>,
}

impl Window {
    fn new() -> Self {
        Window {
            vals: VecDeque::with_capacity(CAUCHY_WINDOW),
        }
    }

    fn push(&mut self, v: SpaceElement) {
        if self.vals.len() == CAUCHY_WINDOW {
            self.vals.pop_front();
        }
        self.vals.push_back(v);
    }

    fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..self.vals.len() {
            for j in i + 1..self.vals.len() {
                let diff = axpy(-1.0, &self.vals[i], &self.vals[j]).expect("same space");
                d = d.max(diff.norm());
            }
        }
        d
    }

    fn stable(&self, eps: f64) -> bool {
        self.vals.len() == CAUCHY_WINDOW && self.diameter() <= eps
    }
}

/// Evaluates the sum of the series. Finite domains are summed exactly;
/// infinite domains resolve limits with the certificate when one is present,
/// with Cauchy sampling when the budget allows heuristics, and not at all
/// otherwise.
pub fn sum_series(h: &Hypersequence, budget: &EvalBudget) -> SumOutcome {
    if let Some(len) = h.domain().to_u64() {
        let mut ev = Eval::new(h, budget);
        ev.run(&Ordinal::zero(), len, None).expect("uncapped");
        return SumOutcome::Converged {
            err: ev.rounding(),
            sum: ev.acc,
            certified: true,
        };
    }
    match h.certificate() {
        Some(cert) => certified_sum(h, cert, budget),
        None if budget.allow_heuristic => {
            let mut ev = Eval::new(h, budget);
            match ev.heur_segment(&Ordinal::zero(), &h.domain().clone()) {
                Err((reached, reason)) => SumOutcome::Unresolved { reached, reason },
                Ok(()) => SumOutcome::Converged {
                    err: ev.max_diameter + ev.rounding(),
                    sum: ev.acc,
                    certified: false,
                },
            }
        }
        None => SumOutcome::Unresolved {
            reached: Ordinal::omega(),
            reason: UnresolvedReason::NoTailBound,
        },
    }
}

fn certified_sum(h: &Hypersequence, cert: &TailCertificate, budget: &EvalBudget) -> SumOutcome {
    let target = budget.tolerance / 2.0;
    let mut n0 = None;
    for n in 0..=budget.term_cap {
        if cert.bound().at(n) <= target {
            n0 = Some(n);
            break;
        }
    }
    let Some(n0) = n0 else {
        return SumOutcome::Unresolved {
            reached: Ordinal::omega(),
            reason: UnresolvedReason::LimitBudgetExhausted,
        };
    };
    let mut sig: Vec<Ordinal> = (0..n0)
        .map(|k| cert.locate(k))
        .filter(|i| i < h.domain())
        .collect();
    sig.sort();
    sig.dedup();
    let mut ev = Eval::new(h, budget);
    match ev.segment(&Ordinal::zero(), &h.domain().clone(), &sig) {
        Err((reached, reason)) => SumOutcome::Unresolved { reached, reason },
        Ok(()) => SumOutcome::Converged {
            err: cert.bound().at(n0) + ev.rounding(),
            sum: ev.acc,
            certified: true,
        },
    }
}

/// The scalar series of term norms, inheriting the certificate (term norms
/// are exactly what the tail bound measures).
pub fn norm_series(h: &Hypersequence) -> Hypersequence {
    let term = Arc::clone(h.term_rule());
    Hypersequence::from_parts(
        h.domain().clone(),
        SpaceTag::Scalar,
        Arc::new(move |i: &Ordinal| SpaceElement::Scalar(term(i).norm())),
        h.certificate().cloned(),
    )
}

/// Absolute convergence: the sum of the norm series.
pub fn abs_converges(h: &Hypersequence, budget: &EvalBudget) -> SumOutcome {
    sum_series(&norm_series(h), budget)
}

/// Partial sums sampled along the fundamental sequence of `lambda`: the pairs
/// `(lambda[n], sum of the restriction below lambda[n])` for `n < count`.
pub fn partials_along(
    h: &Hypersequence,
    lambda: &Ordinal,
    count: u64,
    budget: &EvalBudget,
) -> Result<Vec<(Ordinal, SpaceElement)>, EngineError> {
    if !lambda.is_limit() {
        return Err(EngineError::NotALimit(lambda.clone()));
    }
    if lambda > h.domain() {
        return Err(EngineError::BeyondDomain {
            lambda: lambda.clone(),
            domain: h.domain().clone(),
        });
    }
    let mut out = Vec::with_capacity(count as usize);
    for n in 0..count {
        let idx = lambda.fundamental_sequence(n).expect("lambda is a limit");
        let prefix = h.restrict(idx.clone()).expect("stage below the domain");
        match sum_series(&prefix, budget) {
            SumOutcome::Converged { sum, .. } => out.push((idx, sum)),
            SumOutcome::Unresolved { reached, reason } => {
                return Err(EngineError::PrefixUnresolved { at: reached, reason })
            }
        }
    }
    Ok(out)
}

/// Sums the series, the masked part, and the complementary part. When all
/// three converge, part + complement reconstructs the whole within the
/// combined error bounds.
pub fn split_sum(
    h: &Hypersequence,
    keep: &IndicatorMask,
    budget: &EvalBudget,
) -> Result<(SumOutcome, SumOutcome, SumOutcome), HyperseqError> {
    let part = mask(h, keep)?;
    let rest = mask(h, &keep.complement())?;
    let whole = sum_series(h, budget);
    let part_sum = sum_series(&part, budget);
    let rest_sum = sum_series(&rest, budget);
    #[cfg(debug_assertions)]
    if let (
        SumOutcome::Converged { sum: w, err: ew, certified: true },
        SumOutcome::Converged { sum: p, err: ep, certified: true },
        SumOutcome::Converged { sum: r, err: er, certified: true },
    ) = (&whole, &part_sum, &rest_sum)
    {
        let recombined = axpy(1.0, p, r).expect("same space");
        let gap = axpy(-1.0, &recombined, w).expect("same space").norm();
        debug_assert!(
            gap <= ew + ep + er + budget.tolerance,
            "split reconstruction violated: gap {gap}"
        );
    }
    Ok((whole, part_sum, rest_sum))
}

#[derive(Debug, Clone)]
pub struct DominationCertificate {
    pub dominated: SumOutcome,
    pub dominating: SumOutcome,
    /// How many indices the pointwise check visited.
    pub sampled: u64,
}

impl DominationCertificate {
    /// Whether the computed norm totals respect `A <= B` within the
    /// accumulated error bounds.
    pub fn holds(&self) -> bool {
        match (&self.dominated, &self.dominating) {
            (
                SumOutcome::Converged { sum: a, err: ea, .. },
                SumOutcome::Converged { sum: b, err: eb, .. },
            ) => a.norm() <= b.norm() + ea + eb,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DominationError {
    #[error("domains differ: {left} vs {right}")]
    DomainMismatch { left: Ordinal, right: Ordinal },
    #[error("domination fails at {index}: {dominated_norm} > {dominating_norm}")]
    Violated {
        index: Ordinal,
        dominated_norm: f64,
        dominating_norm: f64,
    },
    #[error("dominating series unresolved at {reached} ({reason})")]
    DominatingUnresolved {
        reached: Ordinal,
        reason: UnresolvedReason,
    },
    #[error("dominated series unresolved at {reached} ({reason})")]
    DominatedUnresolved {
        reached: Ordinal,
        reason: UnresolvedReason,
    },
}

/// Checks `norm(a_i) <= norm(b_i)` on sampled indices, resolves the norm sum
/// of `b`, and then resolves the norm sum of `a`, lending `a` the certificate
/// of `b` when `a` has none (sound under domination: discarding the same
/// located prefix leaves `a` no more mass than `b`). The caller asserts the
/// pointwise bound globally; the sampled check catches typos, not liars.
pub fn dominated_compare(
    a: &Hypersequence,
    b: &Hypersequence,
    budget: &EvalBudget,
) -> Result<DominationCertificate, DominationError> {
    if a.domain() != b.domain() {
        return Err(DominationError::DomainMismatch {
            left: a.domain().clone(),
            right: b.domain().clone(),
        });
    }
    let samples: Vec<Ordinal> = match a.domain().to_u64() {
        Some(len) => (0..len.min(1000)).map(Ordinal::from_natural).collect(),
        None => match canonical_enumeration(a.domain()) {
            Ok(e) => (0..1000).map(|n| e.backward(n)).collect(),
            Err(_) => (0..1000).map(Ordinal::from_natural).collect(),
        },
    };
    for idx in &samples {
        let na = a.term_unchecked(idx).norm();
        let nb = b.term_unchecked(idx).norm();
        if na > nb {
            return Err(DominationError::Violated {
                index: idx.clone(),
                dominated_norm: na,
                dominating_norm: nb,
            });
        }
    }
    let dominating = abs_converges(b, budget);
    if let SumOutcome::Unresolved { reached, reason } = &dominating {
        return Err(DominationError::DominatingUnresolved {
            reached: reached.clone(),
            reason: *reason,
        });
    }
    let a_eval = match (a.certificate(), b.certificate()) {
        (None, Some(cert)) => a.clone().with_certificate(cert.clone()),
        _ => a.clone(),
    };
    let dominated = abs_converges(&a_eval, budget);
    if let SumOutcome::Unresolved { reached, reason } = &dominated {
        return Err(DominationError::DominatedUnresolved {
            reached: reached.clone(),
            reason: *reason,
        });
    }
    Ok(DominationCertificate {
        dominated,
        dominating,
        sampled: samples.len() as u64,
    })
}
