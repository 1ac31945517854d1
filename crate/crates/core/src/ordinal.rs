//! Ordinals below epsilon-zero in Cantor normal form.
//!
//! Every ordinal here is a finite sum `w^e1*c1 + w^e2*c2 + ... + w^ek*ck`
//! with strictly decreasing exponents (themselves ordinals of the same kind)
//! and positive integer coefficients. The empty sum is zero. Arithmetic is
//! the usual non-commutative ordinal arithmetic: `1 + w == w` but
//! `w + 1 != w`, and `2 * w == w` while `w * 2 == w + w`.
//!
//! Coefficients are arbitrary-precision so that index arithmetic can never
//! overflow, whatever the user types.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use std::cmp::Ordering;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) struct CnfTerm {
    pub(crate) exponent: Ordinal,
    pub(crate) coefficient: BigUint,
}

/// An ordinal below epsilon-zero, kept in Cantor normal form.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Ordinal {
    terms: Vec<CnfTerm>,
}

/// Classification of an ordinal by its position in the order topology.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum OrdinalKind {
    Zero,
    /// Has an immediate predecessor: the normal form ends in a finite part.
    Successor,
    /// Nonzero with no immediate predecessor: the last exponent is nonzero.
    Limit,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrdinalError {
    #[error("not a limit ordinal: {0}")]
    NotALimit(Ordinal),
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Ordinal::from_natural(1)
    }

    pub fn omega() -> Self {
        Ordinal::omega_pow(&Ordinal::one())
    }

    pub fn from_natural(n: u64) -> Self {
        Self::from_big(BigUint::from(n))
    }

    pub fn from_big(n: BigUint) -> Self {
        if n.is_zero() {
            Ordinal::zero()
        } else {
            Ordinal {
                terms: vec![CnfTerm {
                    exponent: Ordinal::zero(),
                    coefficient: n,
                }],
            }
        }
    }

    /// `w^e` for an arbitrary exponent `e` (so `omega_pow(0) == 1`).
    pub fn omega_pow(e: &Ordinal) -> Self {
        Ordinal {
            terms: vec![CnfTerm {
                exponent: e.clone(),
                coefficient: BigUint::one(),
            }],
        }
    }

    /// Builds the canonical form of an arbitrary formal sum `Σ w^e*c`.
    /// Terms may come in any order and with duplicate or zero coefficients;
    /// they are folded left-to-right with ordinal addition.
    pub fn from_terms(pairs: impl IntoIterator<Item = (Ordinal, BigUint)>) -> Self {
        let mut acc = Ordinal::zero();
        for (exponent, coefficient) in pairs {
            if coefficient.is_zero() {
                continue;
            }
            acc = acc.add(&Ordinal {
                terms: vec![CnfTerm {
                    exponent,
                    coefficient,
                }],
            });
        }
        acc
    }

    /// The normal-form terms, leading term first.
    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&Ordinal, &BigUint)> {
        self.terms.iter().map(|t| (&t.exponent, &t.coefficient))
    }

    pub(crate) fn raw_terms(&self) -> &[CnfTerm] {
        &self.terms
    }

    pub(crate) fn from_raw(terms: Vec<CnfTerm>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].exponent > w[1].exponent));
        debug_assert!(terms.iter().all(|t| !t.coefficient.is_zero()));
        Ordinal { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms.len() <= 1 && self.terms.first().map_or(true, |t| t.exponent.is_zero())
    }

    pub fn is_limit(&self) -> bool {
        self.kind() == OrdinalKind::Limit
    }

    pub fn is_successor(&self) -> bool {
        self.kind() == OrdinalKind::Successor
    }

    pub fn kind(&self) -> OrdinalKind {
        match self.terms.last() {
            None => OrdinalKind::Zero,
            Some(t) if t.exponent.is_zero() => OrdinalKind::Successor,
            Some(_) => OrdinalKind::Limit,
        }
    }

    /// The value of a finite ordinal, if it fits in a machine word.
    pub fn to_u64(&self) -> Option<u64> {
        if self.is_zero() {
            Some(0)
        } else if self.is_finite() {
            self.terms[0].coefficient.to_u64()
        } else {
            None
        }
    }

    pub fn natural_value(&self) -> Option<BigUint> {
        if self.is_zero() {
            Some(BigUint::zero())
        } else if self.is_finite() {
            Some(self.terms[0].coefficient.clone())
        } else {
            None
        }
    }

    pub fn leading_exponent(&self) -> Option<&Ordinal> {
        self.terms.first().map(|t| &t.exponent)
    }

    /// Drops the trailing finite part: the largest limit ordinal `<= self`
    /// (zero when `self < w`).
    pub fn limit_part(&self) -> Ordinal {
        match self.kind() {
            OrdinalKind::Successor => Ordinal {
                terms: self.terms[..self.terms.len() - 1].to_vec(),
            },
            _ => self.clone(),
        }
    }

    /// The trailing finite part, so `self == self.limit_part() + finite_part()`.
    pub fn finite_part(&self) -> BigUint {
        match self.terms.last() {
            Some(t) if t.exponent.is_zero() => t.coefficient.clone(),
            _ => BigUint::zero(),
        }
    }

    /// Ordinal addition. Left terms below the right operand's leading
    /// exponent are absorbed: `(w + 3) + w == w*2`.
    pub fn add(&self, other: &Ordinal) -> Ordinal {
        if other.is_zero() {
            return self.clone();
        }
        let lead = &other.terms[0].exponent;
        let mut terms: Vec<CnfTerm> = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut merged = other.terms.clone();
        for t in &self.terms {
            match t.exponent.cmp(lead) {
                Ordering::Greater => terms.push(t.clone()),
                Ordering::Equal => {
                    merged[0].coefficient += &t.coefficient;
                    break;
                }
                Ordering::Less => break,
            }
        }
        terms.append(&mut merged);
        Ordinal { terms }
    }

    /// `self + k` for a machine-word natural, without building a temporary.
    pub fn plus_finite(&self, k: u64) -> Ordinal {
        if k == 0 {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        match terms.last_mut() {
            Some(t) if t.exponent.is_zero() => t.coefficient += k,
            _ => terms.push(CnfTerm {
                exponent: Ordinal::zero(),
                coefficient: BigUint::from(k),
            }),
        }
        Ordinal { terms }
    }

    /// Ordinal multiplication, distributing over the right operand's normal
    /// form. A finite left factor is absorbed by a limit right factor:
    /// `2 * w == w`.
    pub fn mul(&self, other: &Ordinal) -> Ordinal {
        if self.is_zero() || other.is_zero() {
            return Ordinal::zero();
        }
        let lead_exp = &self.terms[0].exponent;
        let mut acc = Ordinal::zero();
        for t in &other.terms {
            let contribution = if t.exponent.is_zero() {
                // self * finite: scale the leading coefficient, keep the tail
                let mut terms = self.terms.clone();
                terms[0].coefficient = &terms[0].coefficient * &t.coefficient;
                Ordinal { terms }
            } else {
                Ordinal {
                    terms: vec![CnfTerm {
                        exponent: lead_exp.add(&t.exponent),
                        coefficient: t.coefficient.clone(),
                    }],
                }
            };
            acc = acc.add(&contribution);
        }
        acc
    }

    /// The n-th element of the canonical fundamental sequence of a limit
    /// ordinal. The assignment follows the Wainer-style rules:
    ///
    /// * `(g + w^(b+1))[n] = g + w^b * n`
    /// * `(g + w^l)[n]     = g + w^(l[n])` for limit `l`
    /// * a trailing coefficient `c+1 >= 2` unfolds one copy at a time, so
    ///   `(w*2)[3] == w + 3`.
    ///
    /// The sequence is strictly increasing in `n` with supremum `self`.
    pub fn fundamental_sequence(&self, n: u64) -> Result<Ordinal, OrdinalError> {
        if self.kind() != OrdinalKind::Limit {
            return Err(OrdinalError::NotALimit(self.clone()));
        }
        let mut prefix = self.terms.clone();
        let last = prefix.pop().expect("limit ordinal has terms");
        if !last.coefficient.is_one() {
            prefix.push(CnfTerm {
                exponent: last.exponent.clone(),
                coefficient: &last.coefficient - 1u32,
            });
        }
        let gamma = Ordinal { terms: prefix };
        let step = Self::pow_fundamental(&last.exponent, n)?;
        Ok(gamma.add(&step))
    }

    /// `(w^e)[n]` for `e >= 1`.
    fn pow_fundamental(e: &Ordinal, n: u64) -> Result<Ordinal, OrdinalError> {
        match e.kind() {
            OrdinalKind::Zero => unreachable!("w^0 is not a limit"),
            OrdinalKind::Successor => {
                if n == 0 {
                    Ok(Ordinal::zero())
                } else {
                    Ok(Ordinal {
                        terms: vec![CnfTerm {
                            exponent: e.predecessor(),
                            coefficient: BigUint::from(n),
                        }],
                    })
                }
            }
            OrdinalKind::Limit => Ok(Ordinal::omega_pow(&e.fundamental_sequence(n)?)),
        }
    }

    /// Immediate predecessor of a successor ordinal.
    pub(crate) fn predecessor(&self) -> Ordinal {
        debug_assert_eq!(self.kind(), OrdinalKind::Successor);
        let mut terms = self.terms.clone();
        let last = terms.last_mut().expect("successor has terms");
        if last.coefficient.is_one() {
            terms.pop();
        } else {
            last.coefficient -= 1u32;
        }
        Ordinal { terms }
    }

    /// Left subtraction: the unique `x` with `self + x == other`, defined
    /// whenever `self <= other`.
    pub(crate) fn left_sub(&self, other: &Ordinal) -> Option<Ordinal> {
        let a = &self.terms;
        let b = &other.terms;
        let mut j = 0;
        loop {
            if j == a.len() {
                return Some(Ordinal {
                    terms: b[j..].to_vec(),
                });
            }
            if j == b.len() {
                return None; // a strictly extends b, so a > b
            }
            let (ta, tb) = (&a[j], &b[j]);
            match ta.exponent.cmp(&tb.exponent) {
                // a's remaining terms are absorbed by b's larger block
                Ordering::Less => {
                    return Some(Ordinal {
                        terms: b[j..].to_vec(),
                    })
                }
                Ordering::Greater => return None,
                Ordering::Equal => match ta.coefficient.cmp(&tb.coefficient) {
                    Ordering::Less => {
                        let mut terms = vec![CnfTerm {
                            exponent: tb.exponent.clone(),
                            coefficient: &tb.coefficient - &ta.coefficient,
                        }];
                        terms.extend_from_slice(&b[j + 1..]);
                        return Some(Ordinal { terms });
                    }
                    Ordering::Greater => return None,
                    Ordering::Equal => j += 1,
                },
            }
        }
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut i = 0;
        loop {
            match (self.terms.get(i), other.terms.get(i)) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(a), Some(b)) => {
                    let ord = a
                        .exponent
                        .cmp(&b.exponent)
                        .then_with(|| a.coefficient.cmp(&b.coefficient));
                    if ord != Ordering::Equal {
                        return ord;
                    }
                    i += 1;
                }
            }
        }
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::from_natural(n)
    }
}
