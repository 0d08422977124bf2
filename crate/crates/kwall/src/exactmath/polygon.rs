//! Convex polygons from half-plane descriptions, with exact vertices.

use super::rational::Rational;
use super::ExactMathError;

/// The closed half-plane `{ m : ⟨m, normal⟩ ≥ offset }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfPlane {
    pub normal: (Rational, Rational),
    pub offset: Rational,
}

impl HalfPlane {
    pub fn new(nx: Rational, ny: Rational, offset: Rational) -> Self {
        assert!(
            !(nx.is_zero() && ny.is_zero()),
            "half-plane normal must be nonzero"
        );
        HalfPlane {
            normal: (nx, ny),
            offset,
        }
    }

    pub fn eval(&self, p: &(Rational, Rational)) -> Rational {
        &(&self.normal.0 * &p.0) + &(&self.normal.1 * &p.1) - &self.offset
    }

    pub fn contains(&self, p: &(Rational, Rational)) -> bool {
        !self.eval(p).is_negative()
    }

    /// Intersection point of the two boundary lines, `None` when parallel.
    pub fn line_intersection(&self, other: &HalfPlane) -> Option<(Rational, Rational)> {
        let det = &(&self.normal.0 * &other.normal.1) - &(&self.normal.1 * &other.normal.0);
        if det.is_zero() {
            return None;
        }
        let x = &(&self.offset * &other.normal.1) - &(&self.normal.1 * &other.offset);
        let y = &(&self.normal.0 * &other.offset) - &(&self.offset * &other.normal.0);
        Some((x / &det, y / &det))
    }
}

/// Convex polygon with counterclockwise exact vertices, no duplicates and no
/// three collinear.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon {
    vertices: Vec<(Rational, Rational)>,
}

fn cross(
    o: &(Rational, Rational),
    a: &(Rational, Rational),
    b: &(Rational, Rational),
) -> Rational {
    &(&(&a.0 - &o.0) * &(&b.1 - &o.1)) - &(&(&a.1 - &o.1) * &(&b.0 - &o.0))
}

impl Polygon {
    /// Convex hull of a point set (Andrew's monotone chain, exact
    /// comparisons). Returns `None` when the hull has zero area.
    pub fn hull(mut points: Vec<(Rational, Rational)>) -> Option<Polygon> {
        points.sort();
        points.dedup();
        if points.len() < 3 {
            return None;
        }
        let mut lower: Vec<(Rational, Rational)> = Vec::new();
        for p in &points {
            while lower.len() >= 2
                && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive()
            {
                lower.pop();
            }
            lower.push(p.clone());
        }
        let mut upper: Vec<(Rational, Rational)> = Vec::new();
        for p in points.iter().rev() {
            while upper.len() >= 2
                && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive()
            {
                upper.pop();
            }
            upper.push(p.clone());
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        if lower.len() < 3 {
            return None;
        }
        Some(Polygon { vertices: lower })
    }

    pub fn vertices(&self) -> &[(Rational, Rational)] {
        &self.vertices
    }

    /// Exact shoelace area (nonnegative for the CCW orientation we keep).
    pub fn area(&self) -> Rational {
        let n = self.vertices.len();
        let mut twice = Rational::zero();
        for i in 0..n {
            let p = &self.vertices[i];
            let q = &self.vertices[(i + 1) % n];
            twice += &(&(&p.0 * &q.1) - &(&p.1 * &q.0));
        }
        twice / Rational::from_int(2)
    }

    pub fn contains(&self, p: &(Rational, Rational)) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| !cross(&self.vertices[i], &self.vertices[(i + 1) % n], p).is_negative())
    }

    /// Facet half-planes re-derived from the edges (inward normals).
    pub fn edge_halfplanes(&self) -> Vec<HalfPlane> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let p = &self.vertices[i];
                let q = &self.vertices[(i + 1) % n];
                // inward normal of edge p→q for a CCW polygon
                let nx = &p.1 - &q.1;
                let ny = &q.0 - &p.0;
                let offset = &(&nx * &p.0) + &(&ny * &p.1);
                HalfPlane::new(nx, ny, offset)
            })
            .collect()
    }

    /// Number of lattice points in the closed polygon (direct bounding-box
    /// scan; fine at the sizes we use).
    pub fn lattice_point_count(&self) -> u64 {
        use num_bigint::BigInt;
        let xs: Vec<&Rational> = self.vertices.iter().map(|p| &p.0).collect();
        let ys: Vec<&Rational> = self.vertices.iter().map(|p| &p.1).collect();
        let min_x = xs.iter().cloned().min().unwrap().clone();
        let max_x = xs.iter().cloned().max().unwrap().clone();
        let min_y = ys.iter().cloned().min().unwrap().clone();
        let max_y = ys.iter().cloned().max().unwrap().clone();
        let lo_x = min_x.floor_int();
        let hi_x = (-(-&max_x).floor_int()).clone();
        let lo_y = min_y.floor_int();
        let hi_y = (-(-&max_y).floor_int()).clone();
        let mut count = 0u64;
        let mut x = lo_x;
        while x <= hi_x {
            let mut y = lo_y.clone();
            while y <= hi_y {
                let p = (
                    Rational::from_bigint(x.clone()),
                    Rational::from_bigint(y.clone()),
                );
                if self.contains(&p) {
                    count += 1;
                }
                y += BigInt::from(1);
            }
            x += BigInt::from(1);
        }
        count
    }
}

/// Exact intersection of closed half-planes.
///
/// Returns `None` (geometrically: Empty) when the intersection has zero
/// area — a segment, a point, or the void set. Inputs are assumed to cut out
/// a bounded region when nonempty; that holds for every polytope family in
/// this crate.
pub fn polygon_from_halfplanes(constraints: &[HalfPlane]) -> Option<Polygon> {
    let n = constraints.len();
    let mut candidates: Vec<(Rational, Rational)> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if let Some(p) = constraints[i].line_intersection(&constraints[j]) {
                if constraints.iter().all(|h| h.contains(&p)) {
                    candidates.push(p);
                }
            }
        }
    }
    Polygon::hull(candidates)
}

/// Area of the intersection, zero when Empty.
pub fn halfplane_intersection_area(constraints: &[HalfPlane]) -> Rational {
    match polygon_from_halfplanes(constraints) {
        Some(p) => p.area(),
        None => Rational::zero(),
    }
}

/// Validation used by tests: convexity, CCW orientation, no three collinear.
pub fn validate_polygon(p: &Polygon) -> Result<(), ExactMathError> {
    let v = p.vertices();
    let n = v.len();
    if n < 3 {
        return Err(ExactMathError::DegeneratePolygon);
    }
    for i in 0..n {
        let c = cross(&v[i], &v[(i + 1) % n], &v[(i + 2) % n]);
        if !c.is_positive() {
            return Err(ExactMathError::DegeneratePolygon);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::super::rational::rat;
    use super::*;

    fn hp(nx: i64, ny: i64, off: i64) -> HalfPlane {
        HalfPlane::new(rat(nx, 1), rat(ny, 1), rat(off, 1))
    }

    #[test]
    fn unit_simplex() {
        // x ≥ 0, y ≥ 0, x + y ≤ 1
        let cs = vec![hp(1, 0, 0), hp(0, 1, 0), hp(-1, -1, -1)];
        let p = polygon_from_halfplanes(&cs).unwrap();
        validate_polygon(&p).unwrap();
        assert_eq!(p.vertices().len(), 3);
        assert_eq!(p.area(), rat(1, 2));
        assert_eq!(p.lattice_point_count(), 3);
    }

    #[test]
    fn inconsistent_is_empty() {
        // x ≥ 0, y ≥ 0, x ≤ −1
        let cs = vec![hp(1, 0, 0), hp(0, 1, 0), hp(-1, 0, 1)];
        assert!(polygon_from_halfplanes(&cs).is_none());
    }

    #[test]
    fn zero_area_collapses_to_empty() {
        // 0 ≤ x ≤ 0, 0 ≤ y ≤ 1: a segment
        let cs = vec![hp(1, 0, 0), hp(-1, 0, 0), hp(0, 1, 0), hp(0, -1, -1)];
        assert!(polygon_from_halfplanes(&cs).is_none());
    }

    #[test]
    fn anticanonical_triangle_of_p2() {
        // the three facet inequalities of −K on the standard P² fan
        let cs = vec![hp(1, 0, -1), hp(0, 1, -1), hp(-1, -1, -1)];
        let p = polygon_from_halfplanes(&cs).unwrap();
        assert_eq!(p.area(), rat(9, 2));
        // vol(−K_P²) = 2·area = 9
        assert_eq!(p.lattice_point_count(), 10);
    }

    #[test]
    fn redundant_constraints_ignored() {
        let cs = vec![hp(1, 0, 0), hp(0, 1, 0), hp(-1, -1, -1), hp(1, 1, -5)];
        let p = polygon_from_halfplanes(&cs).unwrap();
        assert_eq!(p.area(), rat(1, 2));
    }

    #[test]
    fn edge_halfplane_round_trip() {
        let cs = vec![hp(1, 0, -1), hp(0, 1, -1), hp(-1, -1, -1)];
        let p = polygon_from_halfplanes(&cs).unwrap();
        let q = polygon_from_halfplanes(&p.edge_halfplanes()).unwrap();
        let mut a: Vec<_> = p.vertices().to_vec();
        let mut b: Vec<_> = q.vertices().to_vec();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }
}
