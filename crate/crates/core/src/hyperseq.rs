//! Series indexed by an ordinal: a domain, a pure term rule, and optional
//! convergence evidence.
//!
//! A [`Hypersequence`] assigns an element of a normed space to every index
//! below its domain ordinal. Summation needs more than the terms, though:
//! to certify a limit it needs to know how much mass can still be out there.
//! That evidence is a [`TailCertificate`]: a nonincreasing bound `T` together
//! with a `locate` map sending `k` to the domain index that carries the k-th
//! certified unit, such that the norms of all terms *outside*
//! `locate({0..n-1})` sum to at most `T(n)`. For a plain `w`-indexed series
//! `locate` is the identity and `T` is the ordinary tail bound
//! `sum_{i>=n} |a_i| <= T(n)`; rearrangements compose `locate` with the
//! rearranging bijection and keep the same `T`.

use crate::ordinal::Ordinal;
use crate::space::{SpaceElement, SpaceTag};
use std::sync::Arc;

pub type TermRule = Arc<dyn Fn(&Ordinal) -> SpaceElement + Send + Sync>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HyperseqError {
    #[error("index {index} is outside the domain {domain}")]
    IndexOutsideDomain { index: Ordinal, domain: Ordinal },
    #[error("operation requires a series over w, got domain {0}")]
    DomainNotOmega(Ordinal),
    #[error("restriction to {requested} exceeds the domain {domain}")]
    RestrictionTooLarge { requested: Ordinal, domain: Ordinal },
    #[error("unknown series family {0:?}")]
    UnknownFamily(String),
    #[error("invalid {family} parameter: {reason}")]
    InvalidParameter {
        family: &'static str,
        reason: String,
    },
    #[error("series spec {0:?} does not have the form family:name or family:name(params)")]
    BadSpec(String),
}

/// Nonincreasing bound on remaining mass, indexed by a natural number.
#[derive(Clone)]
pub struct TailBound(Arc<dyn Fn(u64) -> f64 + Send + Sync>);

impl TailBound {
    pub fn new(f: impl Fn(u64) -> f64 + Send + Sync + 'static) -> Self {
        TailBound(Arc::new(f))
    }

    pub fn at(&self, n: u64) -> f64 {
        (self.0)(n)
    }
}

/// Convergence evidence for a series over any domain. The supplier promises
/// that for every `n`, the norms of all terms whose index is *not* in
/// `locate({0..n-1})` sum to at most `bound(n)`.
#[derive(Clone)]
pub struct TailCertificate {
    bound: TailBound,
    locate: Arc<dyn Fn(u64) -> Ordinal + Send + Sync>,
}

impl TailCertificate {
    pub fn new(bound: TailBound, locate: impl Fn(u64) -> Ordinal + Send + Sync + 'static) -> Self {
        TailCertificate {
            bound,
            locate: Arc::new(locate),
        }
    }

    /// The ordinary tail bound of a `w`-indexed series.
    pub fn for_omega(bound: TailBound) -> Self {
        TailCertificate::new(bound, Ordinal::from_natural)
    }

    pub fn bound(&self) -> &TailBound {
        &self.bound
    }

    pub fn locate(&self, k: u64) -> Ordinal {
        (self.locate)(k)
    }

    /// Certificate for a series whose index `i` holds the term the present
    /// series keeps at `reindex(i)`; `locate` is composed accordingly.
    pub fn compose(&self, reindex: impl Fn(&Ordinal) -> Ordinal + Send + Sync + 'static) -> Self {
        let locate = Arc::clone(&self.locate);
        TailCertificate {
            bound: self.bound.clone(),
            locate: Arc::new(move |k| reindex(&locate(k))),
        }
    }
}

/// A transfinite series: terms below `domain`, valued in `space`.
#[derive(Clone)]
pub struct Hypersequence {
    domain: Ordinal,
    space: SpaceTag,
    term: TermRule,
    cert: Option<TailCertificate>,
}

impl Hypersequence {
    pub fn new(
        domain: Ordinal,
        space: SpaceTag,
        term: impl Fn(&Ordinal) -> SpaceElement + Send + Sync + 'static,
    ) -> Self {
        Hypersequence {
            domain,
            space,
            term: Arc::new(term),
            cert: None,
        }
    }

    pub fn with_certificate(mut self, cert: TailCertificate) -> Self {
        self.cert = Some(cert);
        self
    }

    pub(crate) fn from_parts(
        domain: Ordinal,
        space: SpaceTag,
        term: TermRule,
        cert: Option<TailCertificate>,
    ) -> Self {
        Hypersequence {
            domain,
            space,
            term,
            cert,
        }
    }

    pub fn domain(&self) -> &Ordinal {
        &self.domain
    }

    pub fn space(&self) -> SpaceTag {
        self.space
    }

    pub fn certificate(&self) -> Option<&TailCertificate> {
        self.cert.as_ref()
    }

    pub(crate) fn term_rule(&self) -> &TermRule {
        &self.term
    }

    pub fn term_at(&self, index: &Ordinal) -> Result<SpaceElement, HyperseqError> {
        if *index >= self.domain {
            return Err(HyperseqError::IndexOutsideDomain {
                index: index.clone(),
                domain: self.domain.clone(),
            });
        }
        Ok((self.term)(index))
    }

    pub(crate) fn term_unchecked(&self, index: &Ordinal) -> SpaceElement {
        (self.term)(index)
    }

    /// The same terms over a smaller domain. Convergence evidence carries
    /// over: dropping indices only removes mass.
    pub fn restrict(&self, domain: Ordinal) -> Result<Hypersequence, HyperseqError> {
        if domain > self.domain {
            return Err(HyperseqError::RestrictionTooLarge {
                requested: domain,
                domain: self.domain.clone(),
            });
        }
        Ok(Hypersequence {
            domain,
            space: self.space,
            term: Arc::clone(&self.term),
            cert: self.cert.clone(),
        })
    }
}

/// A set of natural numbers given by its membership test.
#[derive(Clone)]
pub struct IndicatorMask {
    pred: Arc<dyn Fn(u64) -> bool + Send + Sync>,
}

impl IndicatorMask {
    pub fn new(pred: impl Fn(u64) -> bool + Send + Sync + 'static) -> Self {
        IndicatorMask {
            pred: Arc::new(pred),
        }
    }

    pub fn evens() -> Self {
        IndicatorMask::new(|n| n % 2 == 0)
    }

    pub fn contains(&self, n: u64) -> bool {
        (self.pred)(n)
    }

    pub fn complement(&self) -> IndicatorMask {
        let pred = Arc::clone(&self.pred);
        IndicatorMask::new(move |n| !pred(n))
    }
}

/// Zeroes the terms outside `keep`. Only defined for `w`-indexed series;
/// the tail certificate is inherited unchanged, since zeroing terms can only
/// shrink tail mass.
pub fn mask(h: &Hypersequence, keep: &IndicatorMask) -> Result<Hypersequence, HyperseqError> {
    if *h.domain() != Ordinal::omega() {
        return Err(HyperseqError::DomainNotOmega(h.domain().clone()));
    }
    let term = Arc::clone(&h.term);
    let keep = keep.clone();
    let space = h.space;
    Ok(Hypersequence {
        domain: h.domain.clone(),
        space: h.space,
        term: Arc::new(move |i| {
            let n = i.to_u64().expect("index below w fits in u64");
            if keep.contains(n) {
                term(i)
            } else {
                space.zero()
            }
        }),
        cert: h.cert.clone(),
    })
}

/// The stock `w`-indexed families, each shipping its analytic tail bound.
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum FamilySpec {
    /// All terms zero; tail bound identically zero.
    Zero,
    /// `a_i = r^(i+1)` for `|r| < 1`; tail `|r|^(n+1) / (1 - |r|)`, exact.
    Geometric { ratio: f64 },
    /// `a_i = (i+1) / 2^(i+1)`, total 2; tail `(n+2) / 2^n`, exact.
    NOverTwoN,
    /// `a_i = (i+1)^-p` for `p > 1`; integral tail bound
    /// `n^(1-p) / (p-1)` for `n >= 1` and `1 + 1/(p-1)` at `n = 0`.
    PSeries { power: f64 },
    /// `a_i = r^(i+1)` placed in coordinate `i mod dim` of `R^dim`;
    /// norms match `Geometric`, so the same tail bound applies.
    VectorGeometric { dim: usize, ratio: f64 },
}

/// `r^n` with the sign handled exactly for negative `r`.
fn signed_pow(r: f64, n: u64) -> f64 {
    let mag = r.abs().powf(n as f64);
    if r < 0.0 && n % 2 == 1 {
        -mag
    } else {
        mag
    }
}

pub fn make_family(spec: FamilySpec) -> Result<Hypersequence, HyperseqError> {
    let invalid = |family: &'static str, reason: String| HyperseqError::InvalidParameter {
        family,
        reason,
    };
    let idx = |i: &Ordinal| i.to_u64().expect("index below w fits in u64");
    match spec {
        FamilySpec::Zero => {
            let h = Hypersequence::new(Ordinal::omega(), SpaceTag::Scalar, |_| {
                SpaceElement::Scalar(0.0)
            });
            Ok(h.with_certificate(TailCertificate::for_omega(TailBound::new(|_| 0.0))))
        }
        FamilySpec::Geometric { ratio } => {
            if !(ratio.abs() < 1.0) {
                return Err(invalid("geometric", format!("|ratio| must be < 1, got {ratio}")));
            }
            let h = Hypersequence::new(Ordinal::omega(), SpaceTag::Scalar, move |i| {
                SpaceElement::Scalar(signed_pow(ratio, idx(i) + 1))
            });
            let q = ratio.abs();
            let tail = TailBound::new(move |n| signed_pow(q, n + 1) / (1.0 - q));
            Ok(h.with_certificate(TailCertificate::for_omega(tail)))
        }
        FamilySpec::NOverTwoN => {
            let h = Hypersequence::new(Ordinal::omega(), SpaceTag::Scalar, move |i| {
                let n = idx(i);
                SpaceElement::Scalar((n as f64 + 1.0) * signed_pow(0.5, n + 1))
            });
            let tail = TailBound::new(|n| (n as f64 + 2.0) * signed_pow(0.5, n));
            Ok(h.with_certificate(TailCertificate::for_omega(tail)))
        }
        FamilySpec::PSeries { power } => {
            if !(power > 1.0) {
                return Err(invalid("p_series", format!("power must be > 1, got {power}")));
            }
            let h = Hypersequence::new(Ordinal::omega(), SpaceTag::Scalar, move |i| {
                SpaceElement::Scalar((idx(i) as f64 + 1.0).powf(-power))
            });
            let tail = TailBound::new(move |n| {
                if n == 0 {
                    1.0 + 1.0 / (power - 1.0)
                } else {
                    (n as f64).powf(1.0 - power) / (power - 1.0)
                }
            });
            Ok(h.with_certificate(TailCertificate::for_omega(tail)))
        }
        FamilySpec::VectorGeometric { dim, ratio } => {
            if dim == 0 {
                return Err(invalid("vector_geometric", "dimension must be >= 1".into()));
            }
            if !(ratio.abs() < 1.0) {
                return Err(invalid(
                    "vector_geometric",
                    format!("|ratio| must be < 1, got {ratio}"),
                ));
            }
            let h = Hypersequence::new(Ordinal::omega(), SpaceTag::Vector(dim), move |i| {
                let n = idx(i);
                let mut v = vec![0.0; dim];
                v[(n % dim as u64) as usize] = signed_pow(ratio, n + 1);
                SpaceElement::Vector(v)
            });
            let q = ratio.abs();
            let tail = TailBound::new(move |n| signed_pow(q, n + 1) / (1.0 - q));
            Ok(h.with_certificate(TailCertificate::for_omega(tail)))
        }
    }
}

/// Parses the CLI series spec `family:name` or `family:name(p1,p2)`.
pub fn parse_family_spec(spec: &str) -> Result<FamilySpec, HyperseqError> {
    let bad = || HyperseqError::BadSpec(spec.to_string());
    let rest = spec.strip_prefix("family:").ok_or_else(bad)?;
    let (name, params): (&str, Vec<&str>) = match rest.find('(') {
        None => (rest, Vec::new()),
        Some(open) => {
            let inner = rest[open + 1..].strip_suffix(')').ok_or_else(bad)?;
            (&rest[..open], inner.split(',').map(str::trim).collect())
        }
    };
    let float = |s: &str| s.parse::<f64>().map_err(|_| bad());
    let nat = |s: &str| s.parse::<usize>().map_err(|_| bad());
    match (name, params.as_slice()) {
        ("zero", []) => Ok(FamilySpec::Zero),
        ("geometric", [r]) => Ok(FamilySpec::Geometric { ratio: float(r)? }),
        ("n_over_2n", []) => Ok(FamilySpec::NOverTwoN),
        ("p_series", [p]) => Ok(FamilySpec::PSeries { power: float(p)? }),
        ("vector_geometric", [d, r]) => Ok(FamilySpec::VectorGeometric {
            dim: nat(d)?,
            ratio: float(r)?,
        }),
        ("zero" | "geometric" | "n_over_2n" | "p_series" | "vector_geometric", _) => Err(bad()),
        _ => Err(HyperseqError::UnknownFamily(name.to_string())),
    }
}
