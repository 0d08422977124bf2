//! Arbitrary-precision rationals and the scalar plumbing shared by every
//! module: parsing/printing in the `p/q` form used by all JSON outputs,
//! affine-linear forms in the pair coefficients `(a, b)`, and 2D lattice
//! points.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use super::ExactMathError;

/// Exact rational number, always in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_bigs(numer: BigInt, denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        Rational(BigRational::new(numer, denom))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    /// Parse the `"p/q"` form; the `/q` part may be omitted when `q = 1`.
    pub fn parse(s: &str) -> Result<Self, ExactMathError> {
        let s = s.trim();
        let bad = || ExactMathError::ParseRational(s.to_string());
        match s.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                if q.is_zero() {
                    return Err(bad());
                }
                Ok(Rational(BigRational::new(p, q)))
            }
            None => {
                let p: BigInt = s.parse().map_err(|_| bad())?;
                Ok(Rational(BigRational::from_integer(p)))
            }
        }
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn signum(&self) -> i32 {
        if self.0.is_positive() {
            1
        } else if self.0.is_negative() {
            -1
        } else {
            0
        }
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn floor_int(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        Rational(self.0.recip())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Rational::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Exact square root when it exists in Q, `None` otherwise.
    pub fn sqrt(&self) -> Option<Rational> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(Rational::from_bigs(n, d))
        } else {
            None
        }
    }

    /// Approximate value, for diagnostics only.
    pub fn to_f64(&self) -> f64 {
        let n = self.0.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
        let d = self.0.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
        n / d
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Rational::parse(&s).map_err(de::Error::custom)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Div for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        (&self).div(&rhs)
    }
}

impl Div<&Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        (&self).div(rhs)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        let mut acc = Rational::zero();
        for x in iter {
            acc += &x;
        }
        acc
    }
}

/// Shorthand used pervasively in tests and constant tables.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// The affine-linear function `(a, b) ↦ c0 + ca·a + cb·b`.
///
/// β, A, S and Futaki characters of a fixed configuration are all values of
/// this type; walls are the zero loci of the nonconstant ones.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LinearForm {
    pub c0: Rational,
    pub ca: Rational,
    pub cb: Rational,
}

impl LinearForm {
    pub fn new(c0: Rational, ca: Rational, cb: Rational) -> Self {
        LinearForm { c0, ca, cb }
    }

    pub fn constant(c0: Rational) -> Self {
        LinearForm::new(c0, Rational::zero(), Rational::zero())
    }

    pub fn zero() -> Self {
        LinearForm::constant(Rational::zero())
    }

    pub fn eval(&self, a: &Rational, b: &Rational) -> Rational {
        &self.c0 + &(&self.ca * a) + &(&self.cb * b)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        LinearForm::new(&self.c0 * c, &self.ca * c, &self.cb * c)
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.ca.is_zero() && self.cb.is_zero()
    }

    /// True when the zero locus is a genuine line (not all of the plane or
    /// empty): at least one of `ca`, `cb` nonzero.
    pub fn is_line(&self) -> bool {
        !(self.ca.is_zero() && self.cb.is_zero())
    }

    /// Integer coefficients `(c0, ca, cb)` cleared of denominators, divided
    /// by their gcd, with the sign fixed so that the first nonzero entry of
    /// `(ca, cb, c0)` is positive.
    pub fn canonical_integer(&self) -> (BigInt, BigInt, BigInt) {
        let lcm = self
            .c0
            .denom()
            .lcm(self.ca.denom())
            .lcm(self.cb.denom());
        let lcm_r = Rational::from_bigint(lcm);
        let c0 = (&self.c0 * &lcm_r).numer().clone();
        let ca = (&self.ca * &lcm_r).numer().clone();
        let cb = (&self.cb * &lcm_r).numer().clone();
        let g = c0.gcd(&ca).gcd(&cb);
        let (mut c0, mut ca, mut cb) = if g.is_zero() {
            (c0, ca, cb)
        } else {
            (c0 / &g, ca / &g, cb / &g)
        };
        let lead = if !ca.is_zero() {
            ca.clone()
        } else if !cb.is_zero() {
            cb.clone()
        } else {
            c0.clone()
        };
        if lead.is_negative() {
            c0 = -c0;
            ca = -ca;
            cb = -cb;
        }
        (c0, ca, cb)
    }

    /// Paper-style display of the zero locus: `3b=5a` for lines through the
    /// origin, `115a+11b=63` otherwise.
    pub fn display_wall(&self) -> String {
        let (c0, ca, cb) = self.canonical_integer();
        let coeff = |c: &BigInt| -> String {
            if *c == BigInt::one() {
                String::new()
            } else {
                c.to_string()
            }
        };
        if c0.is_zero() {
            // ca·a + cb·b = 0 with ca > 0, so cb ≤ 0 for a wall in the quadrant.
            let cb = -cb;
            if ca == cb {
                return "a=b".to_string();
            }
            return format!("{}b={}a", coeff(&cb), coeff(&ca));
        }
        let rhs = -c0;
        let mut lhs = format!("{}a", coeff(&ca));
        if cb.is_positive() {
            lhs.push('+');
            lhs.push_str(&coeff(&cb));
            lhs.push('b');
        } else if cb.is_negative() {
            lhs.push('-');
            lhs.push_str(&coeff(&(-&cb)));
            lhs.push('b');
        }
        format!("{}={}", lhs, rhs)
    }
}

impl Add for &LinearForm {
    type Output = LinearForm;
    fn add(self, rhs: &LinearForm) -> LinearForm {
        LinearForm::new(&self.c0 + &rhs.c0, &self.ca + &rhs.ca, &self.cb + &rhs.cb)
    }
}

impl Sub for &LinearForm {
    type Output = LinearForm;
    fn sub(self, rhs: &LinearForm) -> LinearForm {
        LinearForm::new(&self.c0 - &rhs.c0, &self.ca - &rhs.ca, &self.cb - &rhs.cb)
    }
}

/// A point of the rank-2 lattice `N ≅ Z²`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LatticePoint {
    pub u: BigInt,
    pub v: BigInt,
}

impl LatticePoint {
    pub fn new(u: i64, v: i64) -> Self {
        LatticePoint {
            u: BigInt::from(u),
            v: BigInt::from(v),
        }
    }

    pub fn from_bigs(u: BigInt, v: BigInt) -> Self {
        LatticePoint { u, v }
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn content(&self) -> BigInt {
        self.u.gcd(&self.v)
    }

    /// Divides by the gcd of the coordinates; idempotent, zero maps to zero.
    pub fn primitive(&self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        LatticePoint {
            u: &self.u / &g,
            v: &self.v / &g,
        }
    }

    pub fn det(&self, other: &LatticePoint) -> BigInt {
        &self.u * &other.v - &self.v * &other.u
    }

    pub fn dot_rat(&self, x: &Rational, y: &Rational) -> Rational {
        &(&Rational::from_bigint(self.u.clone()) * x) + &(&Rational::from_bigint(self.v.clone()) * y)
    }

    pub fn add(&self, other: &LatticePoint) -> Self {
        LatticePoint {
            u: &self.u + &other.u,
            v: &self.v + &other.v,
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        LatticePoint {
            u: &self.u * c,
            v: &self.v * c,
        }
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u, self.v)
    }
}
