//! Complete fans for the weighted projective planes P(1,1,1), P(1,1,4) and
//! P(1,4,25), torus-invariant valuations as lattice points in cones, log
//! discrepancies, orders along invariant divisors, anticanonical polytopes
//! and exact S-invariants by parametric integration.

use crate::exactmath::{
    integrate_parametric_area, polygon_from_halfplanes, LatticePoint, ParamHalfPlane, Polygon,
    Rational,
};
use crate::surface::SurfaceId;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ToricError {
    #[error("no primitive integral ray assignment exists for weights ({0},{1},{2})")]
    NonPrimitiveSolution(u64, u64, u64),
    #[error("weights must be pairwise coprime, got ({0},{1},{2})")]
    WeightsNotCoprime(u64, u64, u64),
    #[error("point {0} lies in no cone of the fan")]
    PointOutsideFan(String),
    #[error("valuation point must be nonzero")]
    ZeroPoint,
    #[error("surface {0} is not toric")]
    NotToric(SurfaceId),
    #[error("area failed the quadratic-consistency check during S-integration")]
    NonPolynomialArea,
}

/// A maximal cone of the fan, spanned by two rays. `index` is |det| of the
/// primitive generators: the order of the cyclic quotient singularity at the
/// corresponding fixed point.
#[derive(Clone, Debug)]
pub struct Cone {
    pub rays: (usize, usize),
    pub index: BigInt,
    /// Coordinate that does not vanish at the fixed point of this cone; its
    /// chart is where local computations happen.
    pub chart_coordinate: usize,
}

/// Complete fan of a weighted projective plane. `rays[i]` generates the ray
/// of the invariant divisor `{coordinate_i = 0}`.
#[derive(Clone, Debug)]
pub struct ToricSurface {
    pub id: Option<SurfaceId>,
    pub weights: (u64, u64, u64),
    pub rays: Vec<LatticePoint>,
    pub coordinate_names: Vec<&'static str>,
    pub cones: Vec<Cone>,
}

fn modinv(a: i128, m: i128) -> Option<i128> {
    // extended Euclid
    let (mut old_r, mut r) = (a.rem_euclid(m), m);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m))
}

/// Standard fan of P(w0, w1, w2) for pairwise coprime weights.
///
/// Rays are primitive, satisfy w0·r0 + w1·r1 + w2·r2 = 0, and the cone
/// spanned by rays i and j has index equal to the remaining weight.
pub fn wps_fan(w0: u64, w1: u64, w2: u64) -> Result<ToricSurface, ToricError> {
    let (a, b, c) = (w0 as i128, w1 as i128, w2 as i128);
    if a.gcd(&b) != 1 || a.gcd(&c) != 1 || b.gcd(&c) != 1 {
        return Err(ToricError::WeightsNotCoprime(w0, w1, w2));
    }
    // r1 = (1,0), r2 = (s, w0) with s ≡ −w1·w2⁻¹ (mod w0); then
    // r0 = −(w1·r1 + w2·r2)/w0 is integral and primitive.
    let s = if a == 1 {
        0
    } else {
        let inv = modinv(c, a).ok_or(ToricError::NonPrimitiveSolution(w0, w1, w2))?;
        ((-b).rem_euclid(a) * inv).rem_euclid(a)
    };
    let r1 = LatticePoint::new(1, 0);
    let r2 = LatticePoint::new(s as i64, w0 as i64);
    let r0u = -(b + c * s) / a;
    let r0 = LatticePoint::new(r0u as i64, -(w2 as i64));
    for r in [&r0, &r1, &r2] {
        if !r.content().is_one() {
            return Err(ToricError::NonPrimitiveSolution(w0, w1, w2));
        }
    }
    let rays = vec![r0, r1, r2];
    // cones: for each pair the fixed point lives where those coordinates
    // vanish, i.e. the chart of the third coordinate
    let mut cones = Vec::new();
    for (i, j, k) in [(0usize, 1usize, 2usize), (1, 2, 0), (2, 0, 1)] {
        cones.push(Cone {
            rays: (i, j),
            index: rays[i].det(&rays[j]).abs(),
            chart_coordinate: k,
        });
    }
    Ok(ToricSurface {
        id: None,
        weights: (w0, w1, w2),
        rays,
        coordinate_names: vec!["x", "y", "z"],
        cones,
    })
}

fn build(id: SurfaceId) -> ToricSurface {
    let w = id.coordinate_weights();
    let mut s = wps_fan(w[0], w[1], w[2]).expect("catalog fan");
    s.id = Some(id);
    s
}

/// The fan of one of the three toric catalog surfaces.
pub fn surface(id: SurfaceId) -> &'static ToricSurface {
    static P2: OnceLock<ToricSurface> = OnceLock::new();
    static P114: OnceLock<ToricSurface> = OnceLock::new();
    static P1425: OnceLock<ToricSurface> = OnceLock::new();
    match id {
        SurfaceId::P2 => P2.get_or_init(|| build(SurfaceId::P2)),
        SurfaceId::P114 => P114.get_or_init(|| build(SurfaceId::P114)),
        SurfaceId::P1425 => P1425.get_or_init(|| build(SurfaceId::P1425)),
        SurfaceId::X26 => panic!("x26 is not toric"),
    }
}

impl ToricSurface {
    pub fn ray(&self, coordinate: usize) -> &LatticePoint {
        &self.rays[coordinate]
    }

    pub fn coordinate_index(&self, name: &str) -> Option<usize> {
        self.coordinate_names.iter().position(|n| *n == name)
    }

    /// The cone at the fixed point where coordinates i and j vanish.
    pub fn cone_at(&self, i: usize, j: usize) -> &Cone {
        self.cones
            .iter()
            .find(|c| (c.rays == (i, j)) || (c.rays == (j, i)))
            .expect("cone of the fan")
    }

    /// Facet description of the anticanonical polytope {m : ⟨m, ray⟩ ≥ −1}.
    pub fn anticanonical_halfplanes(&self) -> Vec<ParamHalfPlane> {
        self.rays
            .iter()
            .map(|r| {
                ParamHalfPlane::fixed(
                    Rational::from_bigint(r.u.clone()),
                    Rational::from_bigint(r.v.clone()),
                    Rational::from_int(-1),
                )
            })
            .collect()
    }

    pub fn anticanonical_polytope(&self) -> Polygon {
        let fixed: Vec<_> = self
            .anticanonical_halfplanes()
            .iter()
            .map(|h| h.at(&Rational::zero()))
            .collect();
        polygon_from_halfplanes(&fixed).expect("−K polytope is full-dimensional")
    }

    /// Lattice points of the m-th anticanonical polytope, i.e. dim H⁰(−mK).
    pub fn anticanonical_lattice_points(&self, m: u64) -> u64 {
        let fixed: Vec<_> = self
            .rays
            .iter()
            .map(|r| {
                crate::exactmath::HalfPlane::new(
                    Rational::from_bigint(r.u.clone()),
                    Rational::from_bigint(r.v.clone()),
                    Rational::from_int(-(m as i64)),
                )
            })
            .collect();
        polygon_from_halfplanes(&fixed)
            .map(|p| p.lattice_point_count())
            .unwrap_or(0)
    }
}

/// A torus-invariant valuation: a nonzero lattice point in the closure of a
/// maximal cone, recorded with its barycentric coordinates with respect to
/// the cone's primitive generators.
///
/// Non-primitive points are allowed; all outputs scale linearly, so callers
/// normalize by `primitive()` when a divisorial valuation is required.
#[derive(Clone, Debug)]
pub struct ToricValuation {
    pub surface: SurfaceId,
    pub point: LatticePoint,
    /// Ray indices of the containing cone.
    pub cone: (usize, usize),
    /// point = bary.0 · ray(cone.0) + bary.1 · ray(cone.1), both ≥ 0.
    pub barycentric: (Rational, Rational),
}

impl ToricValuation {
    /// Locate the cone containing `point` and compute barycentric
    /// coordinates exactly.
    pub fn from_point(id: SurfaceId, point: LatticePoint) -> Result<Self, ToricError> {
        if point.is_zero() {
            return Err(ToricError::ZeroPoint);
        }
        let surf = surface(id);
        for cone in &surf.cones {
            let (i, j) = cone.rays;
            let ri = &surf.rays[i];
            let rj = &surf.rays[j];
            let det = ri.det(rj);
            let alpha = Rational::from_bigs(point.det(rj), det.clone());
            let beta = Rational::from_bigs(ri.det(&point), det);
            if !alpha.is_negative() && !beta.is_negative() {
                return Ok(ToricValuation {
                    surface: id,
                    point,
                    cone: (i, j),
                    barycentric: (alpha, beta),
                });
            }
        }
        Err(ToricError::PointOutsideFan(point.to_string()))
    }

    /// The pushforward of the monomial valuation with the given weights on
    /// the orbifold coordinates at the fixed point where coordinates
    /// `vanishing.0` and `vanishing.1` vanish: the lattice point
    /// `w.0·r_i + w.1·r_j`.
    pub fn weighted_blowup(
        id: SurfaceId,
        vanishing: (usize, usize),
        w: (u64, u64),
    ) -> Result<Self, ToricError> {
        let surf = surface(id);
        let ri = surf.ray(vanishing.0);
        let rj = surf.ray(vanishing.1);
        let point = ri
            .scale(&BigInt::from(w.0))
            .add(&rj.scale(&BigInt::from(w.1)));
        if point.is_zero() {
            return Err(ToricError::ZeroPoint);
        }
        Ok(ToricValuation {
            surface: id,
            point,
            cone: vanishing,
            barycentric: (
                Rational::from_int(w.0 as i64),
                Rational::from_int(w.1 as i64),
            ),
        })
    }

    /// The divisorial valuation of the invariant divisor of a coordinate.
    pub fn ray(id: SurfaceId, coordinate: usize) -> Self {
        let surf = surface(id);
        let cone = surf
            .cones
            .iter()
            .find(|c| c.rays.0 == coordinate || c.rays.1 == coordinate)
            .expect("ray lies in some cone");
        let (i, j) = cone.rays;
        let bary = if i == coordinate {
            (Rational::one(), Rational::zero())
        } else {
            (Rational::zero(), Rational::one())
        };
        ToricValuation {
            surface: id,
            point: surf.rays[coordinate].clone(),
            cone: (i, j),
            barycentric: bary,
        }
    }

    /// Divide the point by its content; homogeneity rescales every invariant
    /// accordingly.
    pub fn primitive(&self) -> Self {
        let g = self.point.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        let gr = Rational::from_bigint(g.clone());
        ToricValuation {
            surface: self.surface,
            point: self.point.primitive(),
            cone: self.cone,
            barycentric: (&self.barycentric.0 / &gr, &self.barycentric.1 / &gr),
        }
    }

    pub fn scaled(&self, c: u64) -> Self {
        let cr = Rational::from_int(c as i64);
        ToricValuation {
            surface: self.surface,
            point: self.point.scale(&BigInt::from(c)),
            cone: self.cone,
            barycentric: (&self.barycentric.0 * &cr, &self.barycentric.1 * &cr),
        }
    }

    pub fn describe(&self) -> String {
        format!("{}:{}", self.surface, self.point)
    }
}

/// Boundary-free log discrepancy A_X(v): the piecewise-linear function with
/// value 1 on every ray, i.e. the sum of the barycentric coordinates.
pub fn log_discrepancy(v: &ToricValuation) -> Rational {
    &v.barycentric.0 + &v.barycentric.1
}

/// Order of the invariant divisor of `coordinate` along the valuation: the
/// barycentric coordinate along that ray when it bounds the cone, else 0.
pub fn ord_on_invariant_divisor(v: &ToricValuation, coordinate: usize) -> Rational {
    if v.cone.0 == coordinate {
        v.barycentric.0.clone()
    } else if v.cone.1 == coordinate {
        v.barycentric.1.clone()
    } else {
        Rational::zero()
    }
}

/// (−K)² as twice the area of the anticanonical polytope.
pub fn anticanonical_volume(surf: &ToricSurface) -> Rational {
    &surf.anticanonical_polytope().area() * &Rational::from_int(2)
}

/// Exact S-invariant of the boundary-free polarization −K:
/// `(1/vol(−K)) ∫₀^∞ vol(π*(−K) − tE) dt`,
/// computed on the parametric polytope family
/// `{m : ⟨m, ray_i⟩ ≥ −1, ⟨m, point⟩ ≥ t − A(v)}`.
pub fn s_invariant(surf: &ToricSurface, v: &ToricValuation) -> Result<Rational, ToricError> {
    let a = log_discrepancy(v);
    let mut family = surf.anticanonical_halfplanes();
    family.push(ParamHalfPlane::moving(
        Rational::from_bigint(v.point.u.clone()),
        Rational::from_bigint(v.point.v.clone()),
        -&a,
        Rational::one(),
    ));
    // The cut empties the polytope exactly when t − A exceeds the maximum of
    // ⟨·, point⟩ over the −K polytope, so that is the upper limit.
    let polytope = surf.anticanonical_polytope();
    let t_end = polytope
        .vertices()
        .iter()
        .map(|m| &v.point.dot_rat(&m.0, &m.1) + &a)
        .max()
        .expect("polytope has vertices");
    debug_assert!(
        crate::exactmath::area_at(&family, &(&t_end + &Rational::one())).is_zero(),
        "area must vanish beyond the pseudo-effective threshold"
    );
    let integral = integrate_parametric_area(&family, &Rational::zero(), &t_end)
        .map_err(|_| ToricError::NonPolynomialArea)?;
    let vol = anticanonical_volume(surf);
    Ok(&(&integral * &Rational::from_int(2)) / &vol)
}
