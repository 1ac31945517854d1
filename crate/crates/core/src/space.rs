//! Values a series can take: real scalars and fixed-dimension real vectors,
//! each with its norm (absolute value, Euclidean length). All series terms
//! and partial sums live in one of these spaces; mixing them is an error,
//! not a panic.

use std::fmt::Write as _;

/// Which space an element (or a whole series) lives in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum SpaceTag {
    Scalar,
    Vector(usize),
}

impl SpaceTag {
    pub fn zero(&self) -> SpaceElement {
        match self {
            SpaceTag::Scalar => SpaceElement::Scalar(0.0),
            SpaceTag::Vector(d) => SpaceElement::Vector(vec![0.0; *d]),
        }
    }
}

impl std::fmt::Display for SpaceTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SpaceTag::Scalar => write!(f, "scalar"),
            SpaceTag::Vector(d) => write!(f, "vector[{d}]"),
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub enum SpaceElement {
    Scalar(f64),
    Vector(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpaceError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("cannot combine {left} with {right}")]
    KindMismatch { left: SpaceTag, right: SpaceTag },
    #[error("bad {expected} field {field:?}")]
    BadField { expected: SpaceTag, field: String },
}

impl SpaceElement {
    pub fn tag(&self) -> SpaceTag {
        match self {
            SpaceElement::Scalar(_) => SpaceTag::Scalar,
            SpaceElement::Vector(v) => SpaceTag::Vector(v.len()),
        }
    }

    pub fn norm(&self) -> f64 {
        match self {
            SpaceElement::Scalar(x) => x.abs(),
            SpaceElement::Vector(v) => v.iter().map(|x| x * x).sum::<f64>().sqrt(),
        }
    }

    /// Exact bit-for-bit equality, distinguishing e.g. `0.0` from `-0.0`.
    pub fn bitwise_eq(&self, other: &SpaceElement) -> bool {
        match (self, other) {
            (SpaceElement::Scalar(a), SpaceElement::Scalar(b)) => a.to_bits() == b.to_bits(),
            (SpaceElement::Vector(a), SpaceElement::Vector(b)) => {
                a.len() == b.len()
                    && a.iter()
                        .zip(b)
                        .all(|(x, y)| x.to_bits() == y.to_bits())
            }
            _ => false,
        }
    }

    /// One CSV field: a scalar as a plain decimal, a vector as
    /// semicolon-separated coordinates.
    pub fn csv_field(&self) -> String {
        match self {
            SpaceElement::Scalar(x) => format!("{x}"),
            SpaceElement::Vector(v) => {
                let mut s = String::new();
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        s.push(';');
                    }
                    let _ = write!(s, "{x}");
                }
                s
            }
        }
    }

    pub fn parse_csv_field(tag: SpaceTag, field: &str) -> Result<SpaceElement, SpaceError> {
        let bad = || SpaceError::BadField {
            expected: tag,
            field: field.to_string(),
        };
        match tag {
            SpaceTag::Scalar => field
                .trim()
                .parse()
                .map(SpaceElement::Scalar)
                .map_err(|_| bad()),
            SpaceTag::Vector(d) => {
                let coords: Result<Vec<f64>, _> =
                    field.split(';').map(|c| c.trim().parse()).collect();
                match coords {
                    Ok(v) if v.len() == d => Ok(SpaceElement::Vector(v)),
                    _ => Err(bad()),
                }
            }
        }
    }
}

/// `c*x + y`, the one combining operation every summation needs.
pub fn axpy(c: f64, x: &SpaceElement, y: &SpaceElement) -> Result<SpaceElement, SpaceError> {
    match (x, y) {
        (SpaceElement::Scalar(x), SpaceElement::Scalar(y)) => Ok(SpaceElement::Scalar(c * x + y)),
        (SpaceElement::Vector(x), SpaceElement::Vector(y)) => {
            if x.len() != y.len() {
                return Err(SpaceError::DimensionMismatch {
                    left: x.len(),
                    right: y.len(),
                });
            }
            Ok(SpaceElement::Vector(
                x.iter().zip(y).map(|(a, b)| c * a + b).collect(),
            ))
        }
        _ => Err(SpaceError::KindMismatch {
            left: x.tag(),
            right: y.tag(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn axpy_matches_coordinatewise_oracle() {
        let x = SpaceElement::Vector(vec![1.0, -2.0, 0.5]);
        let y = SpaceElement::Vector(vec![4.0, 0.25, -1.0]);
        let got = axpy(3.0, &x, &y).unwrap();
        // oracle: compute each coordinate by hand
        assert_eq!(
            got,
            SpaceElement::Vector(vec![3.0 * 1.0 + 4.0, 3.0 * -2.0 + 0.25, 3.0 * 0.5 + -1.0])
        );

        let s = axpy(2.0, &SpaceElement::Scalar(1.5), &SpaceElement::Scalar(-4.0)).unwrap();
        assert_eq!(s, SpaceElement::Scalar(2.0 * 1.5 - 4.0));
    }

    #[test]
    fn mismatches_are_errors() {
        let v2 = SpaceElement::Vector(vec![1.0, 2.0]);
        let v3 = SpaceElement::Vector(vec![1.0, 2.0, 3.0]);
        let s = SpaceElement::Scalar(1.0);
        assert_eq!(
            axpy(1.0, &v2, &v3),
            Err(SpaceError::DimensionMismatch { left: 2, right: 3 })
        );
        assert!(matches!(
            axpy(1.0, &s, &v2),
            Err(SpaceError::KindMismatch { .. })
        ));
    }

    #[test]
    fn norm_examples() {
        assert_eq!(SpaceElement::Scalar(-3.5).norm(), 3.5);
        assert_eq!(SpaceElement::Vector(vec![3.0, 4.0]).norm(), 5.0);
        assert_eq!(SpaceTag::Vector(4).zero().norm(), 0.0);
        assert_eq!(SpaceTag::Scalar.zero().norm(), 0.0);
    }

    #[test]
    fn csv_round_trip() {
        for e in [
            SpaceElement::Scalar(0.5),
            SpaceElement::Scalar(-1.0 / 3.0),
            SpaceElement::Vector(vec![4.0 / 7.0, 2.0 / 7.0, 1.0 / 7.0]),
        ] {
            let field = e.csv_field();
            let back = SpaceElement::parse_csv_field(e.tag(), &field).unwrap();
            assert!(back.bitwise_eq(&e), "{field}");
        }
        assert!(SpaceElement::parse_csv_field(SpaceTag::Vector(2), "1;2;3").is_err());
        assert!(SpaceElement::parse_csv_field(SpaceTag::Scalar, "x").is_err());
    }

    fn coords(n: usize) -> impl Strategy<Value = Vec<f64>> {
        proptest::collection::vec(-10.0f64..10.0, n)
    }

    fn element() -> impl Strategy<Value = SpaceElement> {
        prop_oneof![
            (-10.0f64..10.0).prop_map(SpaceElement::Scalar),
            coords(3).prop_map(SpaceElement::Vector),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn norm_is_nonnegative(x in element()) {
            prop_assert!(x.norm() >= 0.0);
        }

        #[test]
        fn norm_is_homogeneous(x in element(), c in -10.0f64..10.0) {
            let zero = x.tag().zero();
            let scaled = axpy(c, &x, &zero).unwrap();
            let lhs = scaled.norm();
            let rhs = c.abs() * x.norm();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1.0));
        }

        #[test]
        fn triangle_inequality(x in element(), y in element()) {
            if x.tag() == y.tag() {
                let sum = axpy(1.0, &x, &y).unwrap();
                prop_assert!(sum.norm() <= x.norm() + y.norm() + 1e-12);
            }
        }
    }
}
