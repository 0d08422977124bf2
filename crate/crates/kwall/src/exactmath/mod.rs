//! Exact rational arithmetic, linear forms in the pair coefficients, 2D
//! lattice geometry, convex polygons from half-plane descriptions, and exact
//! integration of piecewise-quadratic area functions.

mod parametric;
mod polygon;
mod rational;

pub use parametric::{area_at, breakpoints, integrate_parametric_area, ParamHalfPlane};
pub use polygon::{
    halfplane_intersection_area, polygon_from_halfplanes, validate_polygon, HalfPlane, Polygon,
};
pub use rational::{rat, LatticePoint, LinearForm, Rational};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactMathError {
    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),
    #[error("area fails the quadratic-consistency self-check on a piece")]
    NonPolynomialArea,
    #[error("integration range is empty")]
    EmptyRange,
    #[error("polygon is degenerate")]
    DegeneratePolygon,
}

#[cfg(test)]
mod proptests {
    use super::rational::{rat, Rational};
    use proptest::prelude::*;

    fn arb_rat() -> impl Strategy<Value = Rational> {
        (-200i64..200, 1i64..60).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn field_axioms_on_random_triples(a in arb_rat(), b in arb_rat(), c in arb_rat()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn parse_display_round_trip(a in arb_rat()) {
            prop_assert_eq!(Rational::parse(&a.to_string()).unwrap(), a);
        }
    }
}
