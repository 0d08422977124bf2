//! Exact integration of piecewise-quadratic area functions of one-parameter
//! half-plane families. Offsets move affinely in the parameter `t`; normals
//! stay fixed, so the area of the intersection is quadratic in `t` between
//! combinatorial events.

use super::polygon::{halfplane_intersection_area, HalfPlane};
use super::rational::Rational;
use super::ExactMathError;

/// Half-plane `{ m : ⟨m, normal⟩ ≥ off0 + off_t·t }`.
#[derive(Clone, Debug)]
pub struct ParamHalfPlane {
    pub normal: (Rational, Rational),
    pub off0: Rational,
    pub off_t: Rational,
}

impl ParamHalfPlane {
    pub fn fixed(nx: Rational, ny: Rational, offset: Rational) -> Self {
        ParamHalfPlane {
            normal: (nx, ny),
            off0: offset,
            off_t: Rational::zero(),
        }
    }

    pub fn moving(nx: Rational, ny: Rational, off0: Rational, off_t: Rational) -> Self {
        ParamHalfPlane {
            normal: (nx, ny),
            off0,
            off_t,
        }
    }

    pub fn at(&self, t: &Rational) -> HalfPlane {
        HalfPlane::new(
            self.normal.0.clone(),
            self.normal.1.clone(),
            &self.off0 + &(&self.off_t * t),
        )
    }
}

/// Area of the intersection at a fixed parameter value; zero when empty.
pub fn area_at(constraints: &[ParamHalfPlane], t: &Rational) -> Rational {
    let fixed: Vec<HalfPlane> = constraints.iter().map(|c| c.at(t)).collect();
    halfplane_intersection_area(&fixed)
}

/// Parameter values in `[t0, t1]` at which the combinatorics of the
/// intersection can change: three constraint lines concurrent, or two
/// parallel facet lines coincident. Between consecutive breakpoints the area
/// is a single quadratic.
pub fn breakpoints(constraints: &[ParamHalfPlane], t0: &Rational, t1: &Rational) -> Vec<Rational> {
    let n = constraints.len();
    let mut out: Vec<Rational> = vec![t0.clone(), t1.clone()];
    // Parallel-coincident events: n_i ∥ n_j with offsets matching at some t.
    for i in 0..n {
        for j in (i + 1)..n {
            let ci = &constraints[i];
            let cj = &constraints[j];
            let det =
                &(&ci.normal.0 * &cj.normal.1) - &(&ci.normal.1 * &cj.normal.0);
            if !det.is_zero() {
                continue;
            }
            // write n_j = s·n_i and solve off_j(t) = s·off_i(t)
            let s = if !ci.normal.0.is_zero() {
                &cj.normal.0 / &ci.normal.0
            } else {
                &cj.normal.1 / &ci.normal.1
            };
            let a = &cj.off_t - &(&s * &ci.off_t);
            let b = &cj.off0 - &(&s * &ci.off0);
            if !a.is_zero() {
                let root = -&b / &a;
                if root >= *t0 && root <= *t1 {
                    out.push(root);
                }
            }
        }
    }
    // Concurrency events: solve lines (i, j) by Cramer — the intersection
    // point is affine in t — and substitute into line k.
    for i in 0..n {
        for j in (i + 1)..n {
            let ci = &constraints[i];
            let cj = &constraints[j];
            let det =
                &(&ci.normal.0 * &cj.normal.1) - &(&ci.normal.1 * &cj.normal.0);
            if det.is_zero() {
                continue;
            }
            // x(t)·det = off_i(t)·n_j.y − n_i.y·off_j(t), likewise y(t)·det
            let x0 = &(&ci.off0 * &cj.normal.1) - &(&ci.normal.1 * &cj.off0);
            let xt = &(&ci.off_t * &cj.normal.1) - &(&ci.normal.1 * &cj.off_t);
            let y0 = &(&ci.normal.0 * &cj.off0) - &(&ci.off0 * &cj.normal.0);
            let yt = &(&ci.normal.0 * &cj.off_t) - &(&ci.off_t * &cj.normal.0);
            for (k, ck) in constraints.iter().enumerate() {
                if k == i || k == j {
                    continue;
                }
                // ⟨p(t), n_k⟩ = off_k(t), cleared of det
                let lhs_t = &(&ck.normal.0 * &xt) + &(&ck.normal.1 * &yt);
                let lhs_0 = &(&ck.normal.0 * &x0) + &(&ck.normal.1 * &y0);
                let a = &lhs_t - &(&ck.off_t * &det);
                let b = &lhs_0 - &(&ck.off0 * &det);
                if a.is_zero() {
                    continue;
                }
                let root = -&b / &a;
                if root >= *t0 && root <= *t1 {
                    out.push(root);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Fit `f(t) = p + q·t + r·t²` through three samples with distinct abscissae.
fn fit_quadratic(
    ts: [&Rational; 3],
    fs: [&Rational; 3],
) -> (Rational, Rational, Rational) {
    // Lagrange in closed form.
    let mut p = Rational::zero();
    let mut q = Rational::zero();
    let mut r = Rational::zero();
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let denom = &(ts[i] - ts[j]) * &(ts[i] - ts[k]);
        let scale = fs[i] / &denom;
        // (t − tj)(t − tk) = t² − (tj+tk)t + tj·tk
        r += &scale;
        q += &(&scale * &(-&(ts[j] + ts[k])));
        p += &(&scale * &(ts[j] * ts[k]));
    }
    (p, q, r)
}

fn eval_quadratic(c: &(Rational, Rational, Rational), t: &Rational) -> Rational {
    &c.0 + &(&c.1 * t) + &(&c.2 * &(t * t))
}

/// Exact `∫ area(t) dt` over `[t0, t1]`.
///
/// Breakpoints partition the range into pieces where the area is one
/// quadratic; on each piece the quadratic is recovered from three samples,
/// cross-checked on two more (`NonPolynomialArea` if the fit fails), and
/// integrated by the three-point rule `(h/6)(f(left) + 4f(mid) + f(right))`.
pub fn integrate_parametric_area(
    constraints: &[ParamHalfPlane],
    t0: &Rational,
    t1: &Rational,
) -> Result<Rational, ExactMathError> {
    if t1 < t0 {
        return Err(ExactMathError::EmptyRange);
    }
    if t0 == t1 {
        return Ok(Rational::zero());
    }
    let bps = breakpoints(constraints, t0, t1);
    let two = Rational::from_int(2);
    let four = Rational::from_int(4);
    let six = Rational::from_int(6);
    let mut total = Rational::zero();
    for w in bps.windows(2) {
        let (s0, s1) = (&w[0], &w[1]);
        if s0 == s1 {
            continue;
        }
        let h = s1 - s0;
        let quarter = &h / &four;
        let mid = s0 + &(&h / &two);
        let p1 = s0 + &quarter;
        let p3 = &mid + &quarter;
        let f0 = area_at(constraints, s0);
        let f1 = area_at(constraints, &p1);
        let fm = area_at(constraints, &mid);
        let f3 = area_at(constraints, &p3);
        let f4 = area_at(constraints, s1);
        let quad = fit_quadratic([s0, &mid, s1], [&f0, &fm, &f4]);
        if eval_quadratic(&quad, &p1) != f1 || eval_quadratic(&quad, &p3) != f3 {
            return Err(ExactMathError::NonPolynomialArea);
        }
        // (h/6)(f0 + 4·fm + f4) is exact for quadratics
        total += &(&(&h / &six) * &(&f0 + &(&four * &fm) + &f4));
    }
    Ok(total)
}
