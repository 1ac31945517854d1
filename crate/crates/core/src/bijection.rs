//! Computable pairings between the positions of an infinite ordinal and the
//! naturals, in both directions.
//!
//! The canonical layout: the finite tail of `alpha` (the coefficient of its
//! `w^0` term) occupies the first few naturals, and the remaining infinite
//! blocks are interleaved round-robin. Writing `alpha`'s infinite part as a
//! concatenation of `total` copies of `w^e` blocks (one copy per unit of each
//! coefficient), position `rel` inside copy number `s` maps to
//! `tail + pow_forward(e, rel) * total + s`. Within a single `w^e` block,
//! `pow_forward` packs recursively:
//!
//! * `e = 1`: positions are naturals already;
//! * `e = d+1`: `rel = w^d*a + b` packs as `pair(a, pow_forward(d, b))`
//!   (Cantor pairing);
//! * `e` limit: `0` first, finite positions on the odds, and an infinite
//!   position `w^d*c + b` on the evens as a packed triple of (the rank of
//!   `d` inside `e`), `c-1`, and `pow_forward(d, b)`. The rank of `d` comes
//!   from the canonical enumeration of `e` itself, with the slot of `0`
//!   collapsed away.
//!
//! This is total and bijective for every infinite ordinal below epsilon-zero
//! whose hereditary coefficients fit in `u32`. Images are `u64`; a position
//! whose image would exceed that range panics rather than wrapping, which at
//! the scales this library evaluates (term caps around 10^7) is unreachable.

use crate::hyperseq::IndicatorMask;
use crate::ordinal::{Ordinal, OrdinalKind};
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BijectionError {
    #[error("enumeration requires an infinite ordinal, got {0}")]
    NotInfinite(Ordinal),
    #[error("{0} has a coefficient above 2^32 - 1, beyond the enumerable range")]
    BeyondRepresentable(Ordinal),
    #[error("position {position} is outside the domain {domain}")]
    PositionOutsideDomain { position: Ordinal, domain: Ordinal },
    #[error("index {index} is not below the prefix {prefix}")]
    IndexOutsidePrefix { index: Ordinal, prefix: Ordinal },
    #[error("prefix {prefix} exceeds the domain {domain}")]
    PrefixOutsideDomain { prefix: Ordinal, domain: Ordinal },
    #[error("bijection spec {0:?} is not \"canonical\" or \"perturb:<seed>:<window>\"")]
    BadSpec(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Canonical,
    Perturbed { seed: u64, window: u64 },
    Composed,
}

/// A bijection between `{ i : i < alpha }` and the naturals. `forward` sends
/// a position to its number, `backward` inverts it; both directions are pure
/// and cheap to clone (the closures are shared).
#[derive(Clone)]
pub struct Enumeration {
    alpha: Ordinal,
    forward: Arc<dyn Fn(&Ordinal) -> u64 + Send + Sync>,
    backward: Arc<dyn Fn(u64) -> Ordinal + Send + Sync>,
    provenance: Provenance,
}

impl Enumeration {
    pub fn alpha(&self) -> &Ordinal {
        &self.alpha
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn forward(&self, position: &Ordinal) -> Result<u64, BijectionError> {
        if *position >= self.alpha {
            return Err(BijectionError::PositionOutsideDomain {
                position: position.clone(),
                domain: self.alpha.clone(),
            });
        }
        Ok((self.forward)(position))
    }

    pub fn backward(&self, n: u64) -> Ordinal {
        (self.backward)(n)
    }

    pub(crate) fn forward_arc(&self) -> Arc<dyn Fn(&Ordinal) -> u64 + Send + Sync> {
        Arc::clone(&self.forward)
    }

    pub(crate) fn backward_arc(&self) -> Arc<dyn Fn(u64) -> Ordinal + Send + Sync> {
        Arc::clone(&self.backward)
    }
}

const OVERFLOW: &str = "enumeration image exceeds u64";

/// Cantor pairing `(x, y) -> (x+y)(x+y+1)/2 + y`.
fn pair(x: u64, y: u64) -> u64 {
    let s = x.checked_add(y).expect(OVERFLOW);
    let tri = if s % 2 == 0 {
        (s / 2).checked_mul(s + 1)
    } else {
        s.checked_mul((s + 1) / 2)
    }
    .expect(OVERFLOW);
    tri.checked_add(y).expect(OVERFLOW)
}

fn unpair(n: u64) -> (u64, u64) {
    let s = (((8 * n as u128 + 1).isqrt() - 1) / 2) as u64;
    let tri = if s % 2 == 0 { s / 2 * (s + 1) } else { (s + 1) / 2 * s };
    let y = n - tri;
    (s - y, y)
}

fn pair3(x: u64, y: u64, z: u64) -> u64 {
    pair(x, pair(y, z))
}

fn unpair3(n: u64) -> (u64, u64, u64) {
    let (x, yz) = unpair(n);
    let (y, z) = unpair(yz);
    (x, y, z)
}

/// Leading exponent, leading coefficient, and the remaining terms of a
/// nonzero ordinal.
fn split_leading(x: &Ordinal) -> (Ordinal, u64, Ordinal) {
    let (e, c) = x.terms().next().expect("split_leading of zero");
    let coeff = c.to_u64().expect(OVERFLOW);
    let rest = Ordinal::from_raw(x.raw_terms()[1..].to_vec());
    (e.clone(), coeff, rest)
}

fn check_coefficients(part: &Ordinal, whole: &Ordinal) -> Result<(), BijectionError> {
    for (e, c) in part.terms() {
        if c.to_u32().is_none() {
            return Err(BijectionError::BeyondRepresentable(whole.clone()));
        }
        check_coefficients(e, whole)?;
    }
    Ok(())
}

/// One copy-group of the infinite part of the domain: `copies` adjacent
/// `w^exponent` blocks starting at `base`.
struct Segment {
    exponent: Ordinal,
    copies: u64,
    before: u64,
    base: Ordinal,
    end: Ordinal,
}

struct Layout {
    segments: Vec<Segment>,
    total: u64,
    tail: u64,
    limit_base: Ordinal,
}

fn layout_of(alpha: &Ordinal) -> Layout {
    let mut segments = Vec::new();
    let mut base = Ordinal::zero();
    let mut before = 0u64;
    for (e, c) in alpha.terms() {
        if e.is_zero() {
            break;
        }
        let copies = c.to_u64().expect("validated coefficient");
        let block = Ordinal::omega_pow(e).mul(&Ordinal::from_big(c.clone()));
        let end = base.add(&block);
        segments.push(Segment {
            exponent: e.clone(),
            copies,
            before,
            base,
            end: end.clone(),
        });
        before = before.checked_add(copies).expect(OVERFLOW);
        base = end;
    }
    Layout {
        segments,
        total: before,
        tail: alpha.finite_part().to_u64().expect("validated coefficient"),
        limit_base: base,
    }
}

/// Packs a position below `w^e` into a natural. `rel < w^e` required.
fn pow_forward(e: &Ordinal, rel: &Ordinal) -> u64 {
    if e.to_u64() == Some(1) {
        return rel.to_u64().expect(OVERFLOW);
    }
    match e.kind() {
        OrdinalKind::Zero => unreachable!("w^0 has the single position 0"),
        OrdinalKind::Successor => {
            let d = e.predecessor();
            let (a, b) = if rel.leading_exponent() == Some(&d) {
                let (_, c, rest) = split_leading(rel);
                (c, rest)
            } else {
                (0, rel.clone())
            };
            pair(a, pow_forward(&d, &b))
        }
        OrdinalKind::Limit => {
            if rel.is_zero() {
                return 0;
            }
            if let Some(c) = rel.to_u64() {
                return c.checked_mul(2).expect(OVERFLOW) - 1;
            }
            let (d, c, b) = split_leading(rel);
            let rank = exponent_rank(e, &d);
            let packed = pair3(rank, c - 1, pow_forward(&d, &b));
            packed
                .checked_mul(2)
                .and_then(|v| v.checked_add(2))
                .expect(OVERFLOW)
        }
    }
}

fn pow_backward(e: &Ordinal, n: u64) -> Ordinal {
    if e.to_u64() == Some(1) {
        return Ordinal::from_natural(n);
    }
    match e.kind() {
        OrdinalKind::Zero => unreachable!("w^0 has the single position 0"),
        OrdinalKind::Successor => {
            let d = e.predecessor();
            let (a, k) = unpair(n);
            let block = Ordinal::omega_pow(&d).mul(&Ordinal::from_natural(a));
            block.add(&pow_backward(&d, k))
        }
        OrdinalKind::Limit => {
            if n == 0 {
                return Ordinal::zero();
            }
            if n % 2 == 1 {
                return Ordinal::from_natural((n + 1) / 2);
            }
            let (rank, c, k) = unpair3((n - 2) / 2);
            let d = exponent_unrank(e, rank);
            let lead = Ordinal::omega_pow(&d).mul(&Ordinal::from_natural(c + 1));
            lead.add(&pow_backward(&d, k))
        }
    }
}

/// Rank of an exponent `d` with `1 <= d < e` among all such exponents: the
/// canonical enumeration of `e` with the slot of position 0 collapsed away.
fn exponent_rank(e: &Ordinal, d: &Ordinal) -> u64 {
    let sub = canonical_enumeration(e).expect("limit exponent is enumerable");
    let zero_slot = sub.forward(&Ordinal::zero()).expect("0 < e");
    let slot = sub.forward(d).expect("d < e");
    if slot < zero_slot {
        slot
    } else {
        slot - 1
    }
}

fn exponent_unrank(e: &Ordinal, rank: u64) -> Ordinal {
    let sub = canonical_enumeration(e).expect("limit exponent is enumerable");
    let zero_slot = sub.forward(&Ordinal::zero()).expect("0 < e");
    sub.backward(if rank < zero_slot { rank } else { rank + 1 })
}

fn layout_forward(layout: &Layout, position: &Ordinal) -> u64 {
    if layout.tail > 0 && *position >= layout.limit_base {
        return layout
            .limit_base
            .left_sub(position)
            .expect("position is past the limit base")
            .to_u64()
            .expect("tail offset is finite");
    }
    let seg = layout
        .segments
        .iter()
        .find(|s| *position < s.end)
        .expect("position below the domain");
    let in_group = seg
        .base
        .left_sub(position)
        .expect("position is past the segment base");
    let (copy, rel) = if in_group.leading_exponent() == Some(&seg.exponent) {
        let (_, c, rest) = split_leading(&in_group);
        (c, rest)
    } else {
        (0, in_group)
    };
    let slot = seg.before + copy;
    pow_forward(&seg.exponent, &rel)
        .checked_mul(layout.total)
        .and_then(|v| v.checked_add(layout.tail))
        .and_then(|v| v.checked_add(slot))
        .expect(OVERFLOW)
}

fn layout_backward(layout: &Layout, n: u64) -> Ordinal {
    if n < layout.tail {
        return layout.limit_base.plus_finite(n);
    }
    let n = n - layout.tail;
    let slot = n % layout.total;
    let major = n / layout.total;
    let seg = layout
        .segments
        .iter()
        .find(|s| slot < s.before + s.copies)
        .expect("slot below the copy count");
    let copy = slot - seg.before;
    let offset = Ordinal::omega_pow(&seg.exponent).mul(&Ordinal::from_natural(copy));
    seg.base
        .add(&offset)
        .add(&pow_backward(&seg.exponent, major))
}

/// The fixed deterministic enumeration of an infinite `alpha`.
pub fn canonical_enumeration(alpha: &Ordinal) -> Result<Enumeration, BijectionError> {
    if alpha.is_finite() {
        return Err(BijectionError::NotInfinite(alpha.clone()));
    }
    check_coefficients(alpha, alpha)?;
    let layout = Arc::new(layout_of(alpha));
    let fw = {
        let layout = Arc::clone(&layout);
        Arc::new(move |position: &Ordinal| layout_forward(&layout, position))
    };
    let bw = Arc::new(move |n: u64| layout_backward(&layout, n));
    Ok(Enumeration {
        alpha: alpha.clone(),
        forward: fw,
        backward: bw,
        provenance: Provenance::Canonical,
    })
}

/// Composes `e` with a seeded permutation of `{0..window-1}`, identity
/// beyond. Same seed, same permutation, every run. Allocates two `window`
/// sized tables; `window <= 1` (and 0) degenerates to `e` itself.
pub fn perturb(e: &Enumeration, seed: u64, window: u64) -> Enumeration {
    let mut perm: Vec<u64> = (0..window).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    perm.shuffle(&mut rng);
    let mut inv = vec![0u64; window as usize];
    for (i, &p) in perm.iter().enumerate() {
        inv[p as usize] = i as u64;
    }
    let perm = Arc::new(perm);
    let inv = Arc::new(inv);
    let base_fw = e.forward_arc();
    let base_bw = e.backward_arc();
    let fw = Arc::new(move |position: &Ordinal| {
        let n = base_fw(position);
        if n < window {
            perm[n as usize]
        } else {
            n
        }
    });
    let bw = Arc::new(move |n: u64| base_bw(if n < window { inv[n as usize] } else { n }));
    Enumeration {
        alpha: e.alpha.clone(),
        forward: fw,
        backward: bw,
        provenance: Provenance::Perturbed { seed, window },
    }
}

/// How many members of `{ n : backward(n) < beta }` lie below `forward(i)`.
/// Counts by scanning `0..forward(i)`, so cost is linear in the image.
pub fn position_in_image(
    e: &Enumeration,
    beta: &Ordinal,
    i: &Ordinal,
) -> Result<u64, BijectionError> {
    if *beta > *e.alpha() {
        return Err(BijectionError::PrefixOutsideDomain {
            prefix: beta.clone(),
            domain: e.alpha().clone(),
        });
    }
    if *i >= *beta {
        return Err(BijectionError::IndexOutsidePrefix {
            index: i.clone(),
            prefix: beta.clone(),
        });
    }
    let fi = e.forward(i)?;
    Ok((0..fi).filter(|&k| e.backward(k) < *beta).count() as u64)
}

/// Whether `n` numbers a position below `beta`.
pub fn image_membership(e: &Enumeration, beta: &Ordinal, n: u64) -> bool {
    e.backward(n) < *beta
}

/// The membership test of `image_membership(e, beta, _)` as a reusable mask.
pub fn membership_mask(e: &Enumeration, beta: &Ordinal) -> IndicatorMask {
    let backward = e.backward_arc();
    let beta = beta.clone();
    IndicatorMask::new(move |n| backward(n) < beta)
}

/// A bijection between the positions of two ordinals, with its inverse.
#[derive(Clone)]
pub struct OrdinalMap {
    source: Ordinal,
    target: Ordinal,
    map: Arc<dyn Fn(&Ordinal) -> Ordinal + Send + Sync>,
    inverse: Arc<dyn Fn(&Ordinal) -> Ordinal + Send + Sync>,
}

impl OrdinalMap {
    pub fn source(&self) -> &Ordinal {
        &self.source
    }

    pub fn target(&self) -> &Ordinal {
        &self.target
    }

    pub fn apply(&self, i: &Ordinal) -> Result<Ordinal, BijectionError> {
        if *i >= self.source {
            return Err(BijectionError::PositionOutsideDomain {
                position: i.clone(),
                domain: self.source.clone(),
            });
        }
        Ok((self.map)(i))
    }

    pub fn invert(&self, j: &Ordinal) -> Result<Ordinal, BijectionError> {
        if *j >= self.target {
            return Err(BijectionError::PositionOutsideDomain {
                position: j.clone(),
                domain: self.target.clone(),
            });
        }
        Ok((self.inverse)(j))
    }

    pub(crate) fn map_arc(&self) -> Arc<dyn Fn(&Ordinal) -> Ordinal + Send + Sync> {
        Arc::clone(&self.map)
    }

    pub(crate) fn inverse_arc(&self) -> Arc<dyn Fn(&Ordinal) -> Ordinal + Send + Sync> {
        Arc::clone(&self.inverse)
    }
}

/// Routes the positions of `e2.alpha` to those of `e1.alpha` through the
/// shared numbering: `i -> backward_1(forward_2(i))`.
pub fn compose_to(e1: &Enumeration, e2: &Enumeration) -> OrdinalMap {
    let b1 = e1.backward_arc();
    let f2 = e2.forward_arc();
    let f1 = e1.forward_arc();
    let b2 = e2.backward_arc();
    OrdinalMap {
        source: e2.alpha.clone(),
        target: e1.alpha.clone(),
        map: Arc::new(move |i| b1(f2(i))),
        inverse: Arc::new(move |j| b2(f1(j))),
    }
}

/// Parses the CLI bijection spec `canonical` or `perturb:<seed>:<window>`
/// into an enumeration of `alpha`.
pub fn parse_bijection_spec(spec: &str, alpha: &Ordinal) -> Result<Enumeration, BijectionError> {
    if spec == "canonical" {
        return canonical_enumeration(alpha);
    }
    if let Some(rest) = spec.strip_prefix("perturb:") {
        let parts: Vec<&str> = rest.split(':').collect();
        if let [seed, window] = parts.as_slice() {
            if let (Ok(seed), Ok(window)) = (seed.parse::<u64>(), window.parse::<u64>()) {
                return Ok(perturb(&canonical_enumeration(alpha)?, seed, window));
            }
        }
    }
    Err(BijectionError::BadSpec(spec.to_string()))
}
