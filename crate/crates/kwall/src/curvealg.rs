//! Sparse multivariate polynomials over exact rationals, weighted-homogeneous
//! curve specifications on the catalog surfaces, and orders of curves along
//! monomial and jet (quasi-monomial) valuations in charts.

use crate::exactmath::Rational;
use crate::surface::SurfaceId;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("variable index {0} out of range")]
    UnknownVariable(usize),
    #[error("component support is not weighted-homogeneous")]
    NotWeightedHomogeneous,
    #[error("curve has weighted degree {got}, expected {expected}")]
    WrongDegree { expected: u64, got: u64 },
    #[error("curve lives on {curve} but the valuation is on {valuation}")]
    CurveNotOnSurface {
        curve: SurfaceId,
        valuation: SurfaceId,
    },
    #[error("component is identically zero in the chart")]
    ZeroPolynomialInChart,
    #[error("explicit coefficient list does not match the support")]
    CoefficientMismatch,
}

/// Sparse polynomial with exact rational coefficients. Exponent vectors all
/// have length `nvars`; no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparsePoly {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u32>, Rational>,
}

impl SparsePoly {
    pub fn zero(nvars: usize) -> Self {
        SparsePoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = SparsePoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0u32; nvars];
        exps[i] = 1;
        SparsePoly::monomial(nvars, exps, Rational::one())
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, c: Rational) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = SparsePoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = &*o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &SparsePoly) -> SparsePoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> SparsePoly {
        SparsePoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &SparsePoly) -> SparsePoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &SparsePoly) -> SparsePoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = SparsePoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let exps: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(exps, &(c1 * c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::zero(self.nvars);
        }
        SparsePoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> SparsePoly {
        let mut acc = SparsePoly::constant(self.nvars, Rational::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Exact substitution of one variable by a polynomial, fully expanded
    /// and canonicalized.
    pub fn substitute(&self, variable: usize, replacement: &SparsePoly) -> Result<SparsePoly, CurveError> {
        if variable >= self.nvars {
            return Err(CurveError::UnknownVariable(variable));
        }
        assert_eq!(self.nvars, replacement.nvars);
        let mut powers: Vec<SparsePoly> = vec![SparsePoly::constant(self.nvars, Rational::one())];
        let mut out = SparsePoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e[variable] as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap().mul(replacement);
                powers.push(next);
            }
            let mut rest = e.clone();
            rest[variable] = 0;
            for (pe, pc) in &powers[k].terms {
                let exps: Vec<u32> = rest.iter().zip(pe).map(|(a, b)| a + b).collect();
                out.add_term(exps, &(c * pc));
            }
        }
        Ok(out)
    }

    /// Minimum of Σ eᵢ·wᵢ over the stored monomials; `None` for the zero
    /// polynomial.
    pub fn min_weight(&self, weights: &[Rational]) -> Option<Rational> {
        self.terms
            .keys()
            .map(|e| {
                e.iter()
                    .zip(weights)
                    .map(|(k, w)| w * &Rational::from_int(*k as i64))
                    .sum::<Rational>()
            })
            .min()
    }

    /// Terms whose weight equals the minimum (the initial form).
    pub fn initial_form(&self, weights: &[Rational]) -> SparsePoly {
        let Some(min) = self.min_weight(weights) else {
            return SparsePoly::zero(self.nvars);
        };
        SparsePoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| {
                    e.iter()
                        .zip(weights)
                        .map(|(k, w)| w * &Rational::from_int(*k as i64))
                        .sum::<Rational>()
                        == min
                })
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn display_with(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (e, c) in &self.terms {
            let mut term = String::new();
            if *c != Rational::one() {
                term.push_str(&c.to_string());
            }
            for (i, k) in e.iter().enumerate() {
                if *k == 0 {
                    continue;
                }
                term.push_str(names[i]);
                if *k > 1 {
                    term.push_str(&format!("^{}", k));
                }
            }
            if term.is_empty() {
                term = c.to_string();
            }
            parts.push(term);
        }
        parts.join(" + ")
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = ["x", "y", "z", "w", "u", "v"][..self.nvars].to_vec();
        f.write_str(&self.display_with(&names))
    }
}

/// Coefficients of a curve component: generic nonzero markers (never
/// sampled numerically) or explicit rationals aligned with the support.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Coeffs {
    Generic,
    Explicit(Vec<Rational>),
}

/// One component of a curve: a monomial support with coefficients and a
/// multiplicity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CurveComponent {
    pub support: Vec<Vec<u32>>,
    pub coeffs: Coeffs,
    pub mult: u32,
}

impl CurveComponent {
    pub fn explicit(poly: &SparsePoly, mult: u32) -> Self {
        let mut support = Vec::new();
        let mut coeffs = Vec::new();
        for (e, c) in &poly.terms {
            support.push(e.clone());
            coeffs.push(c.clone());
        }
        CurveComponent {
            support,
            coeffs: Coeffs::Explicit(coeffs),
            mult,
        }
    }

    pub fn generic(support: Vec<Vec<u32>>, mult: u32) -> Self {
        CurveComponent {
            support,
            coeffs: Coeffs::Generic,
            mult,
        }
    }

    pub fn weighted_degree(&self, weights: &[u64]) -> Result<u64, CurveError> {
        let deg_of = |e: &Vec<u32>| -> u64 {
            e.iter()
                .zip(weights)
                .map(|(k, w)| *k as u64 * *w)
                .sum::<u64>()
        };
        let mut degs = self.support.iter().map(deg_of);
        let first = degs.next().ok_or(CurveError::NotWeightedHomogeneous)?;
        if degs.all(|d| d == first) {
            Ok(first)
        } else {
            Err(CurveError::NotWeightedHomogeneous)
        }
    }

    pub fn as_poly(&self, nvars: usize) -> SparsePoly {
        // generic components get unit placeholder coefficients only where a
        // concrete polynomial is structurally needed (never for walls)
        let mut p = SparsePoly::zero(nvars);
        match &self.coeffs {
            Coeffs::Explicit(cs) => {
                for (e, c) in self.support.iter().zip(cs) {
                    p.add_term(e.clone(), c);
                }
            }
            Coeffs::Generic => {
                for e in &self.support {
                    p.add_term(e.clone(), &Rational::one());
                }
            }
        }
        p
    }

    /// Multiplicity of the coordinate hyperplane `{coordinate = 0}` in this
    /// component: the minimal exponent of that coordinate over the support.
    pub fn coordinate_content(&self, coordinate: usize) -> u32 {
        self.support
            .iter()
            .map(|e| e[coordinate])
            .min()
            .unwrap_or(0)
    }
}

/// A weighted-homogeneous curve on one of the catalog surfaces, as a list of
/// components with multiplicities.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CurveSpec {
    pub surface: SurfaceId,
    pub components: Vec<CurveComponent>,
}

impl CurveSpec {
    pub fn new(surface: SurfaceId, components: Vec<CurveComponent>) -> Result<Self, CurveError> {
        let weights = surface.coordinate_weights();
        for c in &components {
            c.weighted_degree(weights)?;
            if let Coeffs::Explicit(cs) = &c.coeffs {
                if cs.len() != c.support.len() {
                    return Err(CurveError::CoefficientMismatch);
                }
            }
        }
        Ok(CurveSpec {
            surface,
            components,
        })
    }

    pub fn total_degree(&self) -> u64 {
        let weights = self.surface.coordinate_weights();
        self.components
            .iter()
            .map(|c| c.mult as u64 * c.weighted_degree(weights).expect("validated"))
            .sum()
    }

    pub fn expect_degree(&self, expected: u64) -> Result<(), CurveError> {
        let got = self.total_degree();
        if got == expected {
            Ok(())
        } else {
            Err(CurveError::WrongDegree { expected, got })
        }
    }

    /// Multiplicity of `{coordinate = 0}` as a component of the curve.
    pub fn coordinate_multiplicity(&self, coordinate: usize) -> u64 {
        self.components
            .iter()
            .map(|c| c.mult as u64 * c.coordinate_content(coordinate) as u64)
            .sum()
    }

    /// Convenience constructor: a single explicit component.
    pub fn from_poly(surface: SurfaceId, poly: &SparsePoly) -> Result<Self, CurveError> {
        CurveSpec::new(surface, vec![CurveComponent::explicit(poly, 1)])
    }
}

/// A jet step `var ↦ var + shift`, with `shift` not involving `var`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JetStep {
    pub var: usize,
    pub shift: SparsePoly,
}

/// A monomial (or quasi-monomial, when a jet is present) valuation in the
/// chart where one homogeneous coordinate is set to 1.
///
/// `values[i]` is the valuation of the i-th coordinate function in that
/// chart; the chart coordinate itself gets 0. For a valuation at a cyclic
/// quotient point the values are the (rational) orbifold weights divided by
/// the order of the group.
#[derive(Clone, Debug)]
pub struct ChartValuation {
    pub surface: SurfaceId,
    pub chart: usize,
    pub values: Vec<Rational>,
    pub jet: Vec<JetStep>,
}

impl ChartValuation {
    pub fn new(surface: SurfaceId, chart: usize, values: Vec<Rational>) -> Self {
        assert_eq!(values.len(), surface.coordinate_names().len());
        assert!(values[chart].is_zero(), "chart coordinate has value 0");
        ChartValuation {
            surface,
            chart,
            values,
            jet: Vec::new(),
        }
    }

    pub fn with_jet(mut self, jet: Vec<JetStep>) -> Self {
        for step in &jet {
            assert!(
                step.shift.terms.keys().all(|e| e[step.var] == 0),
                "jet steps must be triangular"
            );
        }
        self.jet = jet;
        self
    }

    fn dehomogenize(&self, poly: &SparsePoly) -> SparsePoly {
        let mut out = SparsePoly::zero(poly.nvars);
        for (e, c) in &poly.terms {
            let mut exps = e.clone();
            exps[self.chart] = 0;
            out.add_term(exps, c);
        }
        out
    }

    fn apply_jet(&self, poly: &SparsePoly) -> Result<SparsePoly, CurveError> {
        let mut p = poly.clone();
        for step in &self.jet {
            let replacement = SparsePoly::var(p.nvars, step.var).add(&step.shift);
            p = p.substitute(step.var, &replacement)?;
        }
        Ok(p)
    }

    /// Order of a single explicit polynomial in this chart, after the jet.
    pub fn ord_of_poly(&self, poly: &SparsePoly) -> Result<Rational, CurveError> {
        let local = self.apply_jet(&self.dehomogenize(poly))?;
        local
            .min_weight(&self.values)
            .ok_or(CurveError::ZeroPolynomialInChart)
    }

    /// Effective value of each coordinate after the jet; used for
    /// generic-coefficient supports where no cancellation may be assumed.
    pub fn effective_values(&self) -> Result<Vec<Rational>, CurveError> {
        let n = self.values.len();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            if i == self.chart {
                out.push(Rational::zero());
                continue;
            }
            out.push(self.ord_of_poly(&SparsePoly::var(n, i))?);
        }
        Ok(out)
    }
}

/// Order of a curve along a chart valuation: the sum over components of
/// multiplicity × minimum weighted degree of the dehomogenized (and
/// jet-substituted) component. Generic-coefficient components take the bare
/// minimum over their support; explicit components are fully expanded first,
/// so cancellations that raise the order are honored.
pub fn ord_along(v: &ChartValuation, curve: &CurveSpec) -> Result<Rational, CurveError> {
    if curve.surface != v.surface {
        return Err(CurveError::CurveNotOnSurface {
            curve: curve.surface,
            valuation: v.surface,
        });
    }
    let nvars = v.values.len();
    let eff = v.effective_values()?;
    let mut total = Rational::zero();
    for comp in &curve.components {
        let ord = match &comp.coeffs {
            Coeffs::Explicit(_) => v.ord_of_poly(&comp.as_poly(nvars))?,
            Coeffs::Generic => comp
                .support
                .iter()
                .map(|e| {
                    let mut exps = e.clone();
                    exps[v.chart] = 0;
                    exps.iter()
                        .zip(&eff)
                        .map(|(k, w)| w * &Rational::from_int(*k as i64))
                        .sum::<Rational>()
                })
                .min()
                .ok_or(CurveError::ZeroPolynomialInChart)?,
        };
        total += &(&ord * &Rational::from_int(comp.mult as i64));
    }
    Ok(total)
}

/// Primitive positive weight vectors (n1, n2) under which two chart
/// monomials from the two supports have equal weighted degree. Pairs of
/// equal monomials are degenerate (every weight works) and contribute
/// nothing.
pub fn invariance_weights(s1: &[(i64, i64)], s2: &[(i64, i64)]) -> Vec<(u64, u64)> {
    use num_integer::Integer;
    let mut out = Vec::new();
    for m1 in s1 {
        for m2 in s2 {
            let di = m1.0 - m2.0;
            let dj = m1.1 - m2.1;
            // di·n1 + dj·n2 = 0 with n1, n2 > 0 needs opposite signs
            if di == 0 || dj == 0 || di.signum() == dj.signum() {
                continue;
            }
            let n1 = dj.unsigned_abs();
            let n2 = di.unsigned_abs();
            let g = n1.gcd(&n2);
            let pair = (n1 / g, n2 / g);
            if !out.contains(&pair) {
                out.push(pair);
            }
        }
    }
    out.sort();
    out
}

/// The A₁₂ plane quintic of the type-II wall analysis,
/// `(y² − xz)²(x/4 + y + z) − x²(y² − xz)(x + 2y) + x⁵`.
pub fn a12_quintic() -> SparsePoly {
    let n = 3;
    let x = SparsePoly::var(n, 0);
    let y = SparsePoly::var(n, 1);
    let z = SparsePoly::var(n, 2);
    let conic = y.mul(&y).sub(&x.mul(&z));
    let lin = x
        .scale(&Rational::new(1, 4))
        .add(&y)
        .add(&z);
    let t1 = conic.mul(&conic).mul(&lin);
    let t2 = x.mul(&x).mul(&conic).mul(&x.add(&y.scale(&Rational::from_int(2))));
    let t3 = x.pow(5);
    t1.sub(&t2).add(&t3)
}

/// The 6-jet coordinate change that exhibits the A₁₂ tangency:
/// `x ↦ x + y² − y⁵ + y⁶/2` in the chart `z = 1`.
pub fn a12_jet() -> JetStep {
    let n = 3;
    let mut shift = SparsePoly::zero(n);
    shift.add_term(vec![0, 2, 0], &Rational::one());
    shift.add_term(vec![0, 5, 0], &Rational::from_int(-1));
    shift.add_term(vec![0, 6, 0], &Rational::new(1, 2));
    JetStep { var: 0, shift }
}

// -- JSON schema ------------------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffsRepr {
    Tag(String),
    Explicit(Vec<Rational>),
}

#[derive(Serialize, Deserialize)]
struct ComponentRepr {
    support: Vec<Vec<u32>>,
    coeffs: CoeffsRepr,
    mult: u32,
}

#[derive(Serialize, Deserialize)]
struct CurveRepr {
    surface: SurfaceId,
    components: Vec<ComponentRepr>,
}

impl Serialize for CurveSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let repr = CurveRepr {
            surface: self.surface,
            components: self
                .components
                .iter()
                .map(|c| ComponentRepr {
                    support: c.support.clone(),
                    coeffs: match &c.coeffs {
                        Coeffs::Generic => CoeffsRepr::Tag("generic".into()),
                        Coeffs::Explicit(v) => CoeffsRepr::Explicit(v.clone()),
                    },
                    mult: c.mult,
                })
                .collect(),
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CurveSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = CurveRepr::deserialize(d)?;
        let components = repr
            .components
            .into_iter()
            .map(|c| {
                let coeffs = match c.coeffs {
                    CoeffsRepr::Tag(t) if t == "generic" => Ok(Coeffs::Generic),
                    CoeffsRepr::Tag(t) => Err(serde::de::Error::custom(format!(
                        "unknown coefficient tag {t:?}"
                    ))),
                    CoeffsRepr::Explicit(v) => Ok(Coeffs::Explicit(v)),
                }?;
                Ok(CurveComponent {
                    support: c.support,
                    coeffs,
                    mult: c.mult,
                })
            })
            .collect::<Result<Vec<_>, D::Error>>()?;
        CurveSpec::new(repr.surface, components).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn poly3(terms: &[(u32, u32, u32, i64, i64)]) -> SparsePoly {
        let mut p = SparsePoly::zero(3);
        for (a, b, c, n, d) in terms {
            p.add_term(vec![*a, *b, *c], &rat(*n, *d));
        }
        p
    }

    #[test]
    fn substitute_identity_and_inverse_shift() {
        let x2 = poly3(&[(2, 0, 0, 1, 1)]);
        let x = SparsePoly::var(3, 0);
        assert_eq!(x2.substitute(0, &x).unwrap(), x2);

        // substitute(x − y², x, x + y²) = x
        let f = poly3(&[(1, 0, 0, 1, 1), (0, 2, 0, -1, 1)]);
        let repl = poly3(&[(1, 0, 0, 1, 1), (0, 2, 0, 1, 1)]);
        assert_eq!(f.substitute(0, &repl).unwrap(), SparsePoly::var(3, 0));
    }

    #[test]
    fn a12_jet_exposes_order_26() {
        let q2 = a12_quintic();
        // weighted (13,2) order in the chart z = 1 after the 6-jet
        let v = ChartValuation::new(
            SurfaceId::P2,
            2,
            vec![rat(13, 1), rat(2, 1), rat(0, 1)],
        )
        .with_jet(vec![a12_jet()]);
        let curve = CurveSpec::from_poly(SurfaceId::P2, &q2).unwrap();
        assert_eq!(ord_along(&v, &curve).unwrap(), rat(26, 1));

        // the initial form consists of x² and a nonzero y¹³ term
        let chart = {
            let mut p = SparsePoly::zero(3);
            for (e, c) in &q2.terms {
                let mut e2 = e.clone();
                e2[2] = 0;
                p.add_term(e2, c);
            }
            p
        };
        let jet = a12_jet();
        let sub = chart
            .substitute(0, &SparsePoly::var(3, 0).add(&jet.shift))
            .unwrap();
        let init = sub.initial_form(&[rat(13, 1), rat(2, 1), rat(0, 1)]);
        assert!(!init.coeff(&[2, 0, 0]).is_zero());
        assert!(!init.coeff(&[0, 13, 0]).is_zero());
        assert_eq!(init.terms.len(), 2);
    }

    #[test]
    fn ord_along_examples() {
        // v = wt(5,4) at [0:0:1] on P², Q = y⁵ + x⁴z → 20
        let v = ChartValuation::new(SurfaceId::P2, 2, vec![rat(5, 1), rat(4, 1), rat(0, 1)]);
        let q = CurveSpec::from_poly(
            SurfaceId::P2,
            &poly3(&[(0, 5, 0, 1, 1), (4, 0, 1, 1, 1)]),
        )
        .unwrap();
        assert_eq!(ord_along(&v, &q).unwrap(), rat(20, 1));

        // L = {z = 0} misses the center: order 0
        let l = CurveSpec::from_poly(SurfaceId::P2, &poly3(&[(0, 0, 1, 1, 1)])).unwrap();
        assert_eq!(ord_along(&v, &l).unwrap(), rat(0, 1));

        // v = (1,6) at [1:0:0] on P(1,4,25), Q = z² + x²y¹² → 12
        let v = ChartValuation::new(
            SurfaceId::P1425,
            0,
            vec![rat(0, 1), rat(1, 1), rat(6, 1)],
        );
        let q = CurveSpec::from_poly(
            SurfaceId::P1425,
            &poly3(&[(0, 0, 2, 1, 1), (2, 12, 0, 1, 1)]),
        )
        .unwrap();
        assert_eq!(ord_along(&v, &q).unwrap(), rat(12, 1));

        // jet valuation wt(13,2) with the 6-jet, L = {x = 0} on P² → 4
        let v = ChartValuation::new(SurfaceId::P2, 2, vec![rat(13, 1), rat(2, 1), rat(0, 1)])
            .with_jet(vec![a12_jet()]);
        let l = CurveSpec::from_poly(SurfaceId::P2, &poly3(&[(1, 0, 0, 1, 1)])).unwrap();
        assert_eq!(ord_along(&v, &l).unwrap(), rat(4, 1));
    }

    #[test]
    fn ord_along_additive_in_multiplicity() {
        let v = ChartValuation::new(SurfaceId::P2, 2, vec![rat(5, 1), rat(4, 1), rat(0, 1)]);
        let comp = CurveComponent::generic(vec![vec![1, 0, 0], vec![0, 1, 0]], 1);
        let single = CurveSpec::new(SurfaceId::P2, vec![comp.clone()]).unwrap();
        let mut doubled_comp = comp.clone();
        doubled_comp.mult = 2;
        let doubled = CurveSpec::new(SurfaceId::P2, vec![doubled_comp]).unwrap();
        let o1 = ord_along(&v, &single).unwrap();
        let o2 = ord_along(&v, &doubled).unwrap();
        assert_eq!(&o1 * &rat(2, 1), o2);
    }

    #[test]
    fn generic_is_a_lower_bound_for_explicit() {
        let v = ChartValuation::new(SurfaceId::P2, 2, vec![rat(1, 1), rat(1, 1), rat(0, 1)]);
        let support = vec![vec![2, 0, 1], vec![0, 2, 1], vec![1, 1, 1]];
        let generic = CurveSpec::new(
            SurfaceId::P2,
            vec![CurveComponent::generic(support.clone(), 1)],
        )
        .unwrap();
        // x² − 2xy + y² = (x − y)² has the same support but no higher order
        // at a monomial valuation with equal weights; try cancelling coeffs
        let explicit = CurveSpec::new(
            SurfaceId::P2,
            vec![CurveComponent {
                support,
                coeffs: Coeffs::Explicit(vec![rat(1, 1), rat(1, 1), rat(-2, 1)]),
                mult: 1,
            }],
        )
        .unwrap();
        assert!(ord_along(&v, &generic).unwrap() <= ord_along(&v, &explicit).unwrap());
    }

    #[test]
    fn invariance_weight_examples() {
        // {y⁵} vs {x⁴} in the chart z = 1 → (5,4)·? the solution of 5n2 = 4n1
        assert_eq!(invariance_weights(&[(0, 5)], &[(4, 0)]), vec![(5, 4)]);
        // {z²xy}|x=1 chart of P(1,1,4) as (j,k) exponents vs {y¹⁰}
        // degree bookkeeping happens upstream; here plain exponent pairs
        assert_eq!(invariance_weights(&[(1, 2)], &[(10, 0)]), vec![(2, 9)]);
        // equal monomials are degenerate
        assert_eq!(invariance_weights(&[(1, 0)], &[(1, 0)]), Vec::<(u64, u64)>::new());
    }

    #[test]
    fn curve_json_round_trip() {
        let q = CurveSpec::new(
            SurfaceId::P114,
            vec![
                CurveComponent::explicit(&poly3(&[(1, 1, 2, 1, 1)]), 1),
                CurveComponent::generic(vec![vec![1, 0, 0], vec![0, 1, 0]], 2),
            ],
        )
        .unwrap();
        let json = serde_json::to_string(&q).unwrap();
        let back: CurveSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, q);
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }

    #[test]
    fn weighted_homogeneity_enforced() {
        // x and z are not of equal weight on P(1,1,4)
        let bad = CurveSpec::new(
            SurfaceId::P114,
            vec![CurveComponent::generic(
                vec![vec![1, 0, 0], vec![0, 0, 1]],
                1,
            )],
        );
        assert!(matches!(bad, Err(CurveError::NotWeightedHomogeneous)));
    }
}
