//! K-stability profiles of pair configurations: A, S, β and Futaki
//! characters as linear forms in the coefficients (a, b), together with the
//! admissibility machinery — existence constraints, the Gorenstein index
//! bound, the local-volume filter, T-singularity and Noether checks — and
//! the constants catalog for the non-toric surface X₂₆.

use crate::curvealg::{ord_along, ChartValuation, CurveError, CurveSpec};
use crate::exactmath::{rat, LinearForm, Rational};
use crate::surface::SurfaceId;
use crate::toric::{self, ToricError, ToricValuation};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KstabError {
    #[error("valuation outside the X26 catalog")]
    UncatalogedValuation,
    #[error("candidate curve list is incomplete: {0}")]
    IncompleteCandidates(String),
    #[error("order of the boundary along the valuation is zero")]
    DivisionByZero,
    #[error("coefficient sum must lie in (0,3)")]
    CoefficientSumOutOfRange,
    #[error("cyclic type 1/{0}({1},{2}) is invalid")]
    InvalidType(u64, u64, u64),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Toric(#[from] ToricError),
}

// -- surface descriptors ------------------------------------------------------

/// A cyclic quotient singularity 1/r(1,w) on a catalog surface, with the
/// Milnor number of its Q-Gorenstein smoothing and its local normalized
/// volume.
#[derive(Clone, Debug, Serialize)]
pub struct Singularity {
    pub r: u64,
    pub w: u64,
    pub milnor: u64,
    pub local_normalized_volume: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct X26Data {
    pub ambient_weights: [u64; 4],
    pub relation: &'static str,
    pub degree_q: u64,
    pub degree_l: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SurfaceDescriptor {
    pub id: SurfaceId,
    pub k_squared: Rational,
    pub picard_rank: u64,
    pub singularities: Vec<Singularity>,
    pub x26: Option<X26Data>,
}

/// Local normalized volume of a smooth surface point (n^n = 4 in dim 2).
fn smooth_local_volume() -> Rational {
    rat(4, 1)
}

/// Built-in descriptor of one of the four surfaces.
pub fn descriptor(id: SurfaceId) -> SurfaceDescriptor {
    let sing = |r: u64, w: u64| Singularity {
        r,
        w,
        milnor: match is_t_singularity(r, w) {
            Ok(TSingularity::Quotient { milnor, .. }) => milnor,
            Ok(TSingularity::DuVal { milnor }) => milnor,
            _ => panic!("catalog singularity must be T"),
        },
        local_normalized_volume: rat(4, r as i64),
    };
    match id {
        SurfaceId::P2 => SurfaceDescriptor {
            id,
            k_squared: rat(9, 1),
            picard_rank: 1,
            singularities: vec![],
            x26: None,
        },
        SurfaceId::P114 => SurfaceDescriptor {
            id,
            k_squared: rat(9, 1),
            picard_rank: 1,
            singularities: vec![sing(4, 1)],
            x26: None,
        },
        SurfaceId::P1425 => SurfaceDescriptor {
            id,
            k_squared: rat(9, 1),
            picard_rank: 1,
            singularities: vec![sing(25, 4), sing(4, 1)],
            x26: None,
        },
        SurfaceId::X26 => SurfaceDescriptor {
            id,
            k_squared: rat(9, 1),
            picard_rank: 1,
            singularities: vec![sing(25, 4)],
            x26: Some(X26Data {
                ambient_weights: [1, 2, 13, 25],
                relation: "xw = z^2 + y^13",
                degree_q: 25,
                degree_l: 5,
            }),
        },
    }
}

// -- T-singularities and Noether --------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TSingularity {
    /// A_{r−1}, i.e. 1/r(1, r−1); Milnor number r−1.
    DuVal { milnor: u64 },
    /// 1/(d n²)(1, dna − 1) with gcd(n, a) = 1; Milnor number d−1.
    Quotient { d: u64, n: u64, a: u64, milnor: u64 },
    NotT,
}

/// Classify the cyclic quotient 1/r(1, w) as a T-singularity.
pub fn is_t_singularity(r: u64, w: u64) -> Result<TSingularity, KstabError> {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    if r < 2 || w == 0 || w >= r || gcd(w, r) != 1 {
        return Err(KstabError::InvalidType(r, 1, w));
    }
    if w == r - 1 {
        return Ok(TSingularity::DuVal { milnor: r - 1 });
    }
    let mut n = 1u64;
    while n * n <= r {
        if r % (n * n) == 0 {
            let d = r / (n * n);
            // w = dna − 1 for some a coprime to n
            if (w + 1) % (d * n) == 0 {
                let a = (w + 1) / (d * n);
                if a >= 1 && gcd(a, n) == 1 {
                    return Ok(TSingularity::Quotient {
                        d,
                        n,
                        a,
                        milnor: d - 1,
                    });
                }
            }
        }
        n += 1;
    }
    Ok(TSingularity::NotT)
}

/// Noether-type identity K² + ρ + Σ μ_p = 10 for surfaces with
/// T-singularities.
pub fn noether_check(sd: &SurfaceDescriptor) -> bool {
    let mu: u64 = sd.singularities.iter().map(|s| s.milnor).sum();
    &sd.k_squared + &rat((sd.picard_rank + mu) as i64, 1) == rat(10, 1)
}

// -- index bound and local-volume filter --------------------------------------

/// Gorenstein index bound for a K-semistable degeneration of
/// (P², Σ cᵢCᵢ) with deg Cᵢ = dᵢ: min{⌊3/(3 − Σcᵢdᵢ)⌋, max dᵢ'}, where
/// dᵢ' = dᵢ except that entries with 3 | dᵢ enter as 2dᵢ/3.
pub fn index_bound(coeffs: &[(Rational, u64)]) -> Result<u64, KstabError> {
    let total: Rational = coeffs.iter().map(|(c, d)| c * &rat(*d as i64, 1)).sum();
    if !total.is_positive() || total >= rat(3, 1) {
        return Err(KstabError::CoefficientSumOutOfRange);
    }
    let gap = &rat(3, 1) - &total;
    let floor: u64 = (rat(3, 1) / gap)
        .floor_int()
        .to_string()
        .parse()
        .expect("small index");
    let dmax = coeffs
        .iter()
        .map(|(_, d)| if d % 3 == 0 { 2 * d / 3 } else { *d })
        .max()
        .unwrap_or(0);
    Ok(floor.min(dmax))
}

/// Surfaces whose every singular (or smooth) point satisfies the
/// local-volume admissibility (3 − 5a − b)² ≤ (9/4)·vol̂ at (a, b).
pub fn local_volume_filter(a: &Rational, b: &Rational) -> Vec<SurfaceId> {
    let lhs = {
        let v = &(&rat(3, 1) - &(&rat(5, 1) * a)) - b;
        &v * &v
    };
    SurfaceId::ALL
        .into_iter()
        .filter(|id| {
            descriptor(*id)
                .singularities
                .iter()
                .map(|s| s.local_normalized_volume.clone())
                .chain(std::iter::once(smooth_local_volume()))
                .all(|vol| lhs <= &rat(9, 4) * &vol)
        })
        .collect()
}

/// Existence constraints per surface, as linear forms required ≥ 0 on the
/// coefficient region where the surface can appear in the moduli space.
pub fn domain_constraints(id: SurfaceId, rank1_flag: bool) -> Vec<LinearForm> {
    let lf = |c0: i64, ca: i64, cb: i64| LinearForm::new(rat(c0, 1), rat(ca, 1), rat(cb, 1));
    match id {
        SurfaceId::P2 => vec![lf(0, 5, -2), lf(3, -5, -1)],
        SurfaceId::P114 => {
            let mut v = vec![lf(-3, 7, -1)];
            if rank1_flag {
                v.push(lf(-6, 11, 1));
            }
            v
        }
        SurfaceId::X26 => vec![lf(-8, 15, 1)],
        SurfaceId::P1425 => vec![lf(-63, 115, 11)],
    }
}

/// The coefficient domain polygon {a ≥ 0, b ≥ 0, 5a + b ≤ 3, 5a ≥ 2b}.
pub fn coefficient_domain() -> Vec<LinearForm> {
    vec![
        LinearForm::new(rat(0, 1), rat(1, 1), rat(0, 1)),
        LinearForm::new(rat(0, 1), rat(0, 1), rat(1, 1)),
        LinearForm::new(rat(3, 1), rat(-5, 1), rat(-1, 1)),
        LinearForm::new(rat(0, 1), rat(5, 1), rat(-2, 1)),
    ]
}

// -- pair configurations -------------------------------------------------------

/// A pair (Q, L) on one of the four surfaces, degree-checked against
/// Q ~ −(5/3)K and L ~ −(1/3)K.
#[derive(Clone, Debug)]
pub struct PairConfig {
    pub surface: SurfaceId,
    pub q: CurveSpec,
    pub l: CurveSpec,
}

impl PairConfig {
    pub fn new(surface: SurfaceId, q: CurveSpec, l: CurveSpec) -> Result<Self, KstabError> {
        if q.surface != surface || l.surface != surface {
            return Err(CurveError::CurveNotOnSurface {
                curve: q.surface,
                valuation: surface,
            }
            .into());
        }
        q.expect_degree(surface.degree_q())?;
        l.expect_degree(surface.degree_l())?;
        Ok(PairConfig { surface, q, l })
    }

    /// On P(1,1,4): rank of the z²-coefficient quadratic f₂ of Q, read off
    /// the support (generic coefficients count as independent).
    pub fn f2_rank(&self) -> Option<u8> {
        if self.surface != SurfaceId::P114 {
            return None;
        }
        let full = self.q.components.iter().fold(
            crate::curvealg::SparsePoly::constant(3, Rational::one()),
            |acc, c| acc.mul(&c.as_poly(3).pow(c.mult)),
        );
        let mut f2: Vec<(u32, u32)> = full
            .terms
            .keys()
            .filter(|e| e[2] == 2)
            .map(|e| (e[0], e[1]))
            .collect();
        f2.sort();
        f2.dedup();
        Some(match f2.len() {
            0 => 0,
            1 => {
                if f2[0] == (1, 1) {
                    2
                } else {
                    1
                }
            }
            _ => 2,
        })
    }
}

// -- valuations and profiles ---------------------------------------------------

/// The valuations the profile assembler understands.
#[derive(Clone, Debug)]
pub enum Valuation {
    /// Torus-invariant valuation on one of the three toric surfaces.
    Toric(ToricValuation),
    /// Quasi-monomial valuation on P² at the A₁₂ point: weighted blowup in
    /// the 6-jet coordinates with the given weights.
    JetP2 { weights: (u64, u64) },
    /// The quotient valuation at the 1/25(1,4) point of X₂₆ with
    /// (v(x), v(y), v(z), v(w)) = (26/25, 2/25, 13/25, 0).
    X26Catalog,
}

impl Valuation {
    pub fn describe(&self) -> String {
        match self {
            Valuation::Toric(v) => v.describe(),
            Valuation::JetP2 { weights } => {
                format!("p2:jet({},{})", weights.0, weights.1)
            }
            Valuation::X26Catalog => "x26:quotient(2,13)/25".to_string(),
        }
    }

    /// Boundary-free log discrepancy A_X.
    pub fn log_discrepancy_x(&self) -> Rational {
        match self {
            Valuation::Toric(v) => toric::log_discrepancy(v),
            Valuation::JetP2 { weights } => rat((weights.0 + weights.1) as i64, 1),
            Valuation::X26Catalog => rat(3, 5),
        }
    }

    /// The chart computation of orders of curves along the valuation.
    pub fn chart_valuation(&self) -> ChartValuation {
        match self {
            Valuation::Toric(v) => {
                let surf = toric::surface(v.surface);
                let chart = surf.cone_at(v.cone.0, v.cone.1).chart_coordinate;
                let mut values = vec![Rational::zero(); 3];
                values[v.cone.0] = v.barycentric.0.clone();
                values[v.cone.1] = v.barycentric.1.clone();
                values[chart] = Rational::zero();
                ChartValuation::new(v.surface, chart, values)
            }
            Valuation::JetP2 { weights } => ChartValuation::new(
                SurfaceId::P2,
                2,
                vec![
                    rat(weights.0 as i64, 1),
                    rat(weights.1 as i64, 1),
                    Rational::zero(),
                ],
            )
            .with_jet(vec![crate::curvealg::a12_jet()]),
            Valuation::X26Catalog => ChartValuation::new(
                SurfaceId::X26,
                3,
                vec![rat(26, 25), rat(2, 25), rat(13, 25), Rational::zero()],
            ),
        }
    }

    /// Boundary-free S-invariant S_X.
    pub fn s_x(&self) -> Result<Rational, KstabError> {
        match self {
            Valuation::Toric(v) => Ok(toric::s_invariant(toric::surface(v.surface), v)?),
            Valuation::JetP2 { weights } => {
                let candidates = jet_candidates(*weights)?;
                s_quasimonomial_p2(*weights, &candidates)
            }
            Valuation::X26Catalog => Ok(x26_catalog().s_x),
        }
    }
}

/// A cataloged valuation with its pinned invariants; the oracle validates
/// these numerically.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub description: &'static str,
    pub a_x: Rational,
    pub s_x: Rational,
}

/// The quotient valuation at the singular point of X₂₆.
pub fn x26_catalog() -> CatalogEntry {
    CatalogEntry {
        description: "x26 1/25(1,4)-point quotient valuation, chart weights (2,13)/25",
        a_x: rat(3, 5),
        s_x: rat(27, 5),
    }
}

/// The pushforward of ord₀ at the 1/4(1,1) point [0:1:0] of P(1,4,25);
/// kept as a catalog entry and cross-checked against the toric integral.
pub fn p1425_vertex_catalog() -> CatalogEntry {
    CatalogEntry {
        description: "p1425 [0:1:0] quotient of ord_0",
        a_x: rat(2, 1),
        s_x: rat(52, 5),
    }
}

/// The toric valuation realizing `p1425_vertex_catalog`.
pub fn p1425_vertex_valuation() -> ToricValuation {
    ToricValuation::weighted_blowup(SurfaceId::P1425, (0, 2), (1, 1)).expect("catalog valuation")
}

/// A, S and β of one valuation on one pair configuration, as linear forms
/// in (a, b).
#[derive(Clone, Debug, Serialize)]
pub struct KProfile {
    #[serde(rename = "A")]
    pub a: LinearForm,
    #[serde(rename = "S")]
    pub s: LinearForm,
    pub beta: LinearForm,
    pub valuation: String,
    /// Canonical display of the zero locus of β when it is a line.
    pub wall: Option<String>,
}

impl KProfile {
    pub fn to_json(&self) -> serde_json::Value {
        let forms = |f: &LinearForm| {
            serde_json::json!([f.c0.to_string(), f.ca.to_string(), f.cb.to_string()])
        };
        serde_json::json!({
            "A": forms(&self.a),
            "S": forms(&self.s),
            "beta": forms(&self.beta),
            "valuation": self.valuation,
            "wall": self.wall,
        })
    }
}

/// Assemble the K-stability profile of a valuation on a pair:
/// A = A_X − a·ord(Q) − b·ord(L), S = S_X·(1 − 5a/3 − b/3), β = A − S.
pub fn beta_profile(cfg: &PairConfig, v: &Valuation) -> Result<KProfile, KstabError> {
    match (cfg.surface, v) {
        (SurfaceId::X26, Valuation::X26Catalog) => {}
        (SurfaceId::X26, _) => return Err(KstabError::UncatalogedValuation),
        (_, Valuation::X26Catalog) => return Err(KstabError::UncatalogedValuation),
        _ => {}
    }
    let chart = v.chart_valuation();
    let ord_q = ord_along(&chart, &cfg.q)?;
    let ord_l = ord_along(&chart, &cfg.l)?;
    let a_x = v.log_discrepancy_x();
    let s_x = v.s_x()?;
    Ok(profile_from_parts(a_x, s_x, ord_q, ord_l, v.describe()))
}

/// Profile from precomputed invariants (used by the wall enumerations,
/// where the orders come out of the combinatorial data).
pub fn profile_from_parts(
    a_x: Rational,
    s_x: Rational,
    ord_q: Rational,
    ord_l: Rational,
    valuation: String,
) -> KProfile {
    let a = LinearForm::new(a_x, -&ord_q, -&ord_l);
    let s = LinearForm::new(s_x.clone(), &-&s_x * &rat(5, 3), &-&s_x * &rat(1, 3));
    let beta = &a - &s;
    let wall = beta.is_line().then(|| beta.display_wall());
    KProfile {
        a,
        s,
        beta,
        valuation,
        wall,
    }
}

/// Futaki character of the one-parameter subgroup with the given weights at
/// the surface's distinguished complexity-one center: β of the induced
/// exceptional divisor.
pub fn futaki_line(cfg: &PairConfig, weights: (u64, u64)) -> Result<LinearForm, KstabError> {
    let v = match cfg.surface {
        SurfaceId::P2 => Valuation::Toric(ToricValuation::weighted_blowup(
            SurfaceId::P2,
            (0, 1),
            weights,
        )?),
        SurfaceId::P114 => Valuation::Toric(ToricValuation::weighted_blowup(
            SurfaceId::P114,
            (1, 2),
            weights,
        )?),
        SurfaceId::P1425 => Valuation::Toric(ToricValuation::weighted_blowup(
            SurfaceId::P1425,
            (1, 2),
            weights,
        )?),
        SurfaceId::X26 => Valuation::X26Catalog,
    };
    Ok(beta_profile(cfg, &v)?.beta)
}

// -- quasi-monomial S on P² ----------------------------------------------------

/// Candidate curves for the jet valuation, with orders computed from the
/// actual equations: the generic line, the tangent line, the osculating
/// conic and the A₁₂ quintic for weights (13,2); just the generic line for
/// the ordinary blowup.
pub fn jet_candidates(weights: (u64, u64)) -> Result<Vec<(u64, Rational)>, KstabError> {
    use crate::curvealg::{CurveComponent, SparsePoly};
    if weights == (1, 1) {
        return Ok(vec![(1, rat(1, 1))]);
    }
    let chart = Valuation::JetP2 { weights }.chart_valuation();
    let mut out = Vec::new();
    // generic line through the center
    let generic_line = CurveSpec::new(
        SurfaceId::P2,
        vec![CurveComponent::generic(
            vec![vec![1, 0, 0], vec![0, 1, 0]],
            1,
        )],
    )?;
    out.push((1, ord_along(&chart, &generic_line)?));
    // tangent line {x = 0}
    let tangent = CurveSpec::from_poly(SurfaceId::P2, &SparsePoly::var(3, 0))?;
    out.push((1, ord_along(&chart, &tangent)?));
    // the conic y² − xz
    let conic = {
        let mut p = SparsePoly::zero(3);
        p.add_term(vec![0, 2, 0], &Rational::one());
        p.add_term(vec![1, 0, 1], &rat(-1, 1));
        CurveSpec::from_poly(SurfaceId::P2, &p)?
    };
    out.push((2, ord_along(&chart, &conic)?));
    // the A₁₂ quintic itself
    let quintic = CurveSpec::from_poly(SurfaceId::P2, &crate::curvealg::a12_quintic())?;
    out.push((5, ord_along(&chart, &quintic)?));
    Ok(out)
}

/// Quadratic q(t) = c0 + c1·t + c2·t² with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Quad {
    c0: Rational,
    c1: Rational,
    c2: Rational,
}

impl Quad {
    fn eval(&self, t: &Rational) -> Rational {
        &self.c0 + &(&self.c1 * t) + &(&self.c2 * &(t * t))
    }

    /// Exact integral over [t0, t1] by the three-point rule.
    fn integrate(&self, t0: &Rational, t1: &Rational) -> Rational {
        let h = t1 - t0;
        let mid = &(t0 + t1) / &rat(2, 1);
        &(&h / &rat(6, 1)) * &(&self.eval(t0) + &(&rat(4, 1) * &self.eval(&mid)) + &self.eval(t1))
    }

    /// All real roots when they are rational; `None` when a real root is
    /// irrational (which signals a broken phase structure to the caller).
    fn rational_roots(&self) -> Option<Vec<Rational>> {
        if self.c2.is_zero() {
            if self.c1.is_zero() {
                return Some(vec![]);
            }
            return Some(vec![-&self.c0 / &self.c1]);
        }
        let disc = &(&self.c1 * &self.c1) - &(&rat(4, 1) * &(&self.c2 * &self.c0));
        if disc.is_negative() {
            return Some(vec![]);
        }
        let sq = disc.sqrt()?;
        let two_a = &rat(2, 1) * &self.c2;
        Some(vec![
            &(&-&self.c1 - &sq) / &two_a,
            &(&-&self.c1 + &sq) / &two_a,
        ])
    }
}

/// Exact S of a quasi-monomial valuation over a smooth point of P² with
/// weights (n1, n2), given the candidate curves as (degree, order) pairs.
///
/// vol(3H − tE) runs a nef phase 9 − t²/(n1·n2) up to the smallest
/// threshold 3·deg·n1·n2/ord over the candidates, then Zariski phases peel
/// the extremal candidate until the volume reaches zero; each phase is
/// integrated exactly. Continuity, monotonicity and nonnegativity are
/// checked at every phase boundary; a failure reports
/// `IncompleteCandidates`.
pub fn s_quasimonomial_p2(
    weights: (u64, u64),
    candidates: &[(u64, Rational)],
) -> Result<Rational, KstabError> {
    let n1n2 = rat((weights.0 * weights.1) as i64, 1);
    let incomplete = |msg: &str| KstabError::IncompleteCandidates(msg.to_string());
    // intersection numbers on the blowup:
    //   C̃_i·C̃_j = d_i·d_j − e_i·e_j/(n1·n2),  D(t)·C̃_i = 3d_i − t·e_i/(n1·n2)
    let pair = |i: usize, j: usize| -> Rational {
        let (di, ei) = (&candidates[i].0, &candidates[i].1);
        let (dj, ej) = (&candidates[j].0, &candidates[j].1);
        &rat((di * dj) as i64, 1) - &(&(ei * ej) / &n1n2)
    };
    let d_dot = |i: usize| -> (Rational, Rational) {
        // value and t-coefficient of the affine function D(t)·C̃_i
        let (di, ei) = (&candidates[i].0, &candidates[i].1);
        (rat(3 * *di as i64, 1), -&(ei / &n1n2))
    };

    let mut peeled: Vec<usize> = Vec::new();
    let mut t_cur = Rational::zero();
    let mut integral = Rational::zero();
    let mut prev_vol_at_cut: Option<Rational> = None;

    loop {
        // Solve Gram·s(t) = D(t)·C̃ over affine functions of t.
        let k = peeled.len();
        let mut gram: Vec<Vec<Rational>> = (0..k)
            .map(|r| (0..k).map(|c| pair(peeled[r], peeled[c])).collect())
            .collect();
        let mut rhs: Vec<(Rational, Rational)> = peeled.iter().map(|&i| d_dot(i)).collect();
        for col in 0..k {
            let pivot_row = (col..k)
                .find(|&r| !gram[r][col].is_zero())
                .ok_or_else(|| incomplete("degenerate intersection matrix"))?;
            gram.swap(col, pivot_row);
            rhs.swap(col, pivot_row);
            for r in (col + 1)..k {
                if gram[r][col].is_zero() {
                    continue;
                }
                let f = &gram[r][col] / &gram[col][col];
                for c in col..k {
                    let sub = &f * &gram[col][c];
                    gram[r][c] = &gram[r][c] - &sub;
                }
                rhs[r].0 = &rhs[r].0 - &(&f * &rhs[col].0);
                rhs[r].1 = &rhs[r].1 - &(&f * &rhs[col].1);
            }
        }
        let mut s_aff: Vec<(Rational, Rational)> = vec![(Rational::zero(), Rational::zero()); k];
        for row in (0..k).rev() {
            let mut acc = rhs[row].clone();
            for c in (row + 1)..k {
                acc.0 = &acc.0 - &(&gram[row][c] * &s_aff[c].0);
                acc.1 = &acc.1 - &(&gram[row][c] * &s_aff[c].1);
            }
            s_aff[row] = (&acc.0 / &gram[row][row], &acc.1 / &gram[row][row]);
        }

        // vol(t) = D² − Σ s_i(t)·(D·C̃_i): quadratic in t
        let mut vol = Quad {
            c0: rat(9, 1),
            c1: Rational::zero(),
            c2: -&(&Rational::one() / &n1n2),
        };
        for (idx, &i) in peeled.iter().enumerate() {
            let (u0, u1) = d_dot(i);
            let (s0, s1) = &s_aff[idx];
            vol.c0 = &vol.c0 - &(s0 * &u0);
            vol.c1 = &vol.c1 - &(&(s0 * &u1) + &(s1 * &u0));
            vol.c2 = &vol.c2 - &(s1 * &u1);
        }

        // continuity across the phase boundary
        if let Some(prev) = &prev_vol_at_cut {
            if vol.eval(&t_cur) != *prev {
                return Err(incomplete("volume discontinuous at a phase boundary"));
            }
        }

        // next event: a curve threshold P·C̃ = 0 or the volume reaching 0
        let mut next_curve: Option<(Rational, usize)> = None;
        for idx in 0..candidates.len() {
            if peeled.contains(&idx) {
                continue;
            }
            let (mut p0, mut p1) = d_dot(idx);
            for (pi, &i) in peeled.iter().enumerate() {
                let g = pair(i, idx);
                p0 = &p0 - &(&s_aff[pi].0 * &g);
                p1 = &p1 - &(&s_aff[pi].1 * &g);
            }
            if p1.is_zero() {
                continue;
            }
            let root = -&p0 / &p1;
            if root > t_cur && next_curve.as_ref().map_or(true, |(r, _)| root < *r) {
                next_curve = Some((root, idx));
            }
        }
        // A rational root of the volume ends the integration; an irrational
        // crossing before the next curve threshold means the candidate list
        // is missing a curve, which the nonnegativity check below catches.
        let next_zero = vol
            .rational_roots()
            .unwrap_or_default()
            .into_iter()
            .filter(|r| *r > t_cur)
            .min();

        let (t_next, peel_next) = match (&next_zero, &next_curve) {
            (Some(z), Some((c, idx))) if c < z => (c.clone(), Some(*idx)),
            (Some(z), _) => (z.clone(), None),
            (None, Some((c, idx))) => (c.clone(), Some(*idx)),
            (None, None) => return Err(incomplete("volume never reaches zero")),
        };

        // sanity on this phase: vol ≥ 0 and nonincreasing on [t_cur, t_next],
        // checked exactly (endpoints, midpoint, and the interior vertex)
        let mid = &(&t_cur + &t_next) / &rat(2, 1);
        let (v0, vm, v1) = (vol.eval(&t_cur), vol.eval(&mid), vol.eval(&t_next));
        if v0.is_negative() || vm.is_negative() || v1.is_negative() {
            return Err(incomplete("volume went negative inside a phase"));
        }
        if !vol.c2.is_zero() {
            let vertex = &-&vol.c1 / &(&rat(2, 1) * &vol.c2);
            if vertex > t_cur && vertex < t_next && vol.eval(&vertex).is_negative() {
                return Err(incomplete("volume went negative inside a phase"));
            }
        }
        if v0 < vm || vm < v1 {
            return Err(incomplete("volume not monotone on a phase"));
        }

        integral += &vol.integrate(&t_cur, &t_next);

        match peel_next {
            None => {
                // the volume is zero at t_next: done
                return Ok(&integral / &rat(9, 1));
            }
            Some(idx) => {
                // the peeled configuration must stay negative definite
                let mut new_peeled = peeled.clone();
                new_peeled.push(idx);
                for m in 1..=new_peeled.len() {
                    let det = minor_det(&new_peeled[..m], &pair);
                    let sign_ok = if m % 2 == 1 {
                        det.is_negative()
                    } else {
                        det.is_positive()
                    };
                    if !sign_ok {
                        return Err(incomplete("peeled configuration is not negative definite"));
                    }
                }
                prev_vol_at_cut = Some(v1);
                t_cur = t_next;
                peeled = new_peeled;
            }
        }
    }
}

fn minor_det(indices: &[usize], pair: &dyn Fn(usize, usize) -> Rational) -> Rational {
    let m = indices.len();
    let mut mat: Vec<Vec<Rational>> = (0..m)
        .map(|r| (0..m).map(|c| pair(indices[r], indices[c])).collect())
        .collect();
    let mut det = Rational::one();
    for col in 0..m {
        let Some(pr) = (col..m).find(|&r| !mat[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pr != col {
            mat.swap(col, pr);
            det = -det;
        }
        det = &det * &mat[col][col];
        for r in (col + 1)..m {
            if mat[r][col].is_zero() {
                continue;
            }
            let f = &mat[r][col] / &mat[col][col];
            for c in col..m {
                let sub = &f * &mat[col][c];
                mat[r][c] = &mat[r][c] - &sub;
            }
        }
    }
    det
}

// -- lct certificates -----------------------------------------------------------

/// Upper-bound certificate for the log canonical threshold of
/// (P², Q + tL): A_X(v) / ord_v(Q + tL). Matching 3/(5+t) at the wall slope
/// certifies the endpoint claim.
pub fn lct_certificate(
    cfg: &PairConfig,
    v: &Valuation,
    t: &Rational,
) -> Result<Rational, KstabError> {
    let chart = v.chart_valuation();
    let ord = &ord_along(&chart, &cfg.q)? + &(t * &ord_along(&chart, &cfg.l)?);
    if ord.is_zero() {
        return Err(KstabError::DivisionByZero);
    }
    Ok(&v.log_discrepancy_x() / &ord)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvealg::{CurveComponent, SparsePoly};

    fn poly3(terms: &[(u32, u32, u32)]) -> SparsePoly {
        let mut p = SparsePoly::zero(3);
        for (a, b, c) in terms {
            p.add_term(vec![*a, *b, *c], &Rational::one());
        }
        p
    }

    fn poly4(terms: &[(u32, u32, u32, u32)]) -> SparsePoly {
        let mut p = SparsePoly::zero(4);
        for (a, b, c, d) in terms {
            p.add_term(vec![*a, *b, *c, *d], &Rational::one());
        }
        p
    }

    #[test]
    fn t_singularity_classification() {
        assert_eq!(
            is_t_singularity(25, 4).unwrap(),
            TSingularity::Quotient {
                d: 1,
                n: 5,
                a: 1,
                milnor: 0
            }
        );
        assert_eq!(
            is_t_singularity(4, 1).unwrap(),
            TSingularity::Quotient {
                d: 1,
                n: 2,
                a: 1,
                milnor: 0
            }
        );
        assert_eq!(is_t_singularity(5, 1).unwrap(), TSingularity::NotT);
        assert_eq!(
            is_t_singularity(3, 2).unwrap(),
            TSingularity::DuVal { milnor: 2 }
        );
        assert!(is_t_singularity(4, 2).is_err());
    }

    #[test]
    fn noether_on_all_four() {
        for id in SurfaceId::ALL {
            assert!(noether_check(&descriptor(id)), "noether fails on {id}");
        }
    }

    #[test]
    fn index_bound_examples() {
        assert_eq!(index_bound(&[(rat(1, 2), 5), (rat(1, 4), 1)]).unwrap(), 5);
        assert_eq!(index_bound(&[(rat(1, 5), 5), (rat(1, 5), 1)]).unwrap(), 1);
        assert_eq!(
            index_bound(&[(rat(1, 1000), 5), (rat(1, 1000), 1)]).unwrap(),
            1
        );
        // 3 | d entries enter as 2d/3
        assert_eq!(index_bound(&[(rat(1, 2), 3), (rat(1, 4), 1)]).unwrap(), 2);
        assert!(index_bound(&[(rat(3, 1), 1)]).is_err());
    }

    #[test]
    fn local_volume_filter_examples() {
        assert_eq!(
            local_volume_filter(&rat(1, 5), &rat(1, 5)),
            vec![SurfaceId::P2]
        );
        assert_eq!(
            local_volume_filter(&rat(1, 2), &rat(1, 4)),
            SurfaceId::ALL.to_vec()
        );
        assert_eq!(
            local_volume_filter(&rat(599, 1000), &rat(0, 1)),
            SurfaceId::ALL.to_vec()
        );
    }

    #[test]
    fn domain_constraint_lines() {
        let p2 = domain_constraints(SurfaceId::P2, false);
        assert_eq!(p2[0].display_wall(), "2b=5a");
        assert_eq!(p2[1].display_wall(), "5a+b=3");
        let p114 = domain_constraints(SurfaceId::P114, true);
        assert_eq!(p114[0].display_wall(), "7a-b=3");
        assert_eq!(p114[1].display_wall(), "11a+b=6");
        assert_eq!(
            domain_constraints(SurfaceId::X26, false)[0].display_wall(),
            "15a+b=8"
        );
        assert_eq!(
            domain_constraints(SurfaceId::P1425, false)[0].display_wall(),
            "115a+11b=63"
        );
    }

    #[test]
    fn beta_profile_p2_wall() {
        // (P², y⁵ + x⁴z, {z = 0}), v = wt(5,4) at [0:0:1]
        let q = CurveSpec::from_poly(SurfaceId::P2, &poly3(&[(0, 5, 0), (4, 0, 1)])).unwrap();
        let l = CurveSpec::from_poly(SurfaceId::P2, &poly3(&[(0, 0, 1)])).unwrap();
        let cfg = PairConfig::new(SurfaceId::P2, q, l).unwrap();
        let v = Valuation::Toric(
            ToricValuation::weighted_blowup(SurfaceId::P2, (0, 1), (5, 4)).unwrap(),
        );
        let p = beta_profile(&cfg, &v).unwrap();
        assert_eq!(p.beta, &p.a - &p.s);
        assert_eq!(p.wall.as_deref(), Some("3b=5a"));
        assert_eq!(p.beta.c0, rat(0, 1));
        assert_eq!(p.beta.ca, rat(-5, 1));
        assert_eq!(p.beta.cb, rat(3, 1));
    }

    #[test]
    fn beta_profile_x26_wall() {
        let q = CurveSpec::from_poly(SurfaceId::X26, &poly4(&[(0, 0, 0, 1)])).unwrap();
        let l = CurveSpec::from_poly(SurfaceId::X26, &poly4(&[(1, 2, 0, 0)])).unwrap();
        let cfg = PairConfig::new(SurfaceId::X26, q, l).unwrap();
        let p = beta_profile(&cfg, &Valuation::X26Catalog).unwrap();
        // β = 9a + (3/5)b − 24/5, wall 15a + b = 8
        assert_eq!(p.beta.c0, rat(-24, 5));
        assert_eq!(p.beta.ca, rat(9, 1));
        assert_eq!(p.beta.cb, rat(3, 5));
        assert_eq!(p.wall.as_deref(), Some("15a+b=8"));
    }

    #[test]
    fn beta_profile_p1425_wall() {
        let q = CurveSpec::from_poly(SurfaceId::P1425, &poly3(&[(0, 0, 2), (2, 12, 0)])).unwrap();
        let l = CurveSpec::from_poly(SurfaceId::P1425, &poly3(&[(2, 2, 0)])).unwrap();
        let cfg = PairConfig::new(SurfaceId::P1425, q, l).unwrap();
        let v = Valuation::Toric(
            ToricValuation::weighted_blowup(SurfaceId::P1425, (1, 2), (1, 6)).unwrap(),
        );
        let p = beta_profile(&cfg, &v).unwrap();
        assert_eq!(p.beta.c0, rat(21, 10));
        assert_eq!(p.beta.ca, rat(-23, 6));
        assert_eq!(p.beta.cb, rat(-11, 30));
        assert_eq!(p.wall.as_deref(), Some("115a+11b=63"));
    }

    #[test]
    fn beta_profile_p114_ray() {
        // (P(1,1,4), z²xy, xy), divisor H_x: wall 7a − b = 3
        let q = CurveSpec::from_poly(SurfaceId::P114, &poly3(&[(1, 1, 2)])).unwrap();
        let l = CurveSpec::from_poly(SurfaceId::P114, &poly3(&[(1, 1, 0)])).unwrap();
        let cfg = PairConfig::new(SurfaceId::P114, q, l).unwrap();
        let v = Valuation::Toric(ToricValuation::ray(SurfaceId::P114, 0));
        let p = beta_profile(&cfg, &v).unwrap();
        assert_eq!(p.beta.c0, rat(-1, 1));
        assert_eq!(p.beta.ca, rat(7, 3));
        assert_eq!(p.beta.cb, rat(-1, 3));
        assert_eq!(p.wall.as_deref(), Some("7a-b=3"));
    }

    #[test]
    fn futaki_lines() {
        // P², λ = diag(t⁵, t⁴, 1) on ({y⁵+x⁴z}, {z}) → 3b = 5a
        let q = CurveSpec::from_poly(SurfaceId::P2, &poly3(&[(0, 5, 0), (4, 0, 1)])).unwrap();
        let l = CurveSpec::from_poly(SurfaceId::P2, &poly3(&[(0, 0, 1)])).unwrap();
        let cfg = PairConfig::new(SurfaceId::P2, q, l).unwrap();
        let f = futaki_line(&cfg, (5, 4)).unwrap();
        assert_eq!(f.display_wall(), "3b=5a");

        // P(1,1,4), (2,9)-action on ({z²xy + y¹⁰}, {x²}) → 35a − 17b = 15
        let q = CurveSpec::from_poly(SurfaceId::P114, &poly3(&[(1, 1, 2), (0, 10, 0)])).unwrap();
        let l = CurveSpec::from_poly(SurfaceId::P114, &poly3(&[(2, 0, 0)])).unwrap();
        let cfg = PairConfig::new(SurfaceId::P114, q, l).unwrap();
        let f = futaki_line(&cfg, (2, 9)).unwrap();
        assert_eq!(f.c0, rat(5, 2));
        assert_eq!(f.ca, rat(-35, 6));
        assert_eq!(f.cb, rat(17, 6));
        assert_eq!(f.display_wall(), "35a-17b=15");

        // P(1,4,25), m2 = 6m1 on ({z²+x²y¹²}, {x¹⁰}) → 115a − 49b = 63
        let q = CurveSpec::from_poly(SurfaceId::P1425, &poly3(&[(0, 0, 2), (2, 12, 0)])).unwrap();
        let l = CurveSpec::from_poly(SurfaceId::P1425, &poly3(&[(10, 0, 0)])).unwrap();
        let cfg = PairConfig::new(SurfaceId::P1425, q, l).unwrap();
        let f = futaki_line(&cfg, (1, 6)).unwrap();
        assert_eq!(f.display_wall(), "115a-49b=63");
    }

    #[test]
    fn s_quasimonomial_examples() {
        let cands = jet_candidates((13, 2)).unwrap();
        let mut sorted = cands.clone();
        sorted.sort();
        assert_eq!(
            sorted,
            vec![
                (1, rat(2, 1)),
                (1, rat(4, 1)),
                (2, rat(10, 1)),
                (5, rat(26, 1))
            ]
        );
        assert_eq!(s_quasimonomial_p2((13, 2), &cands).unwrap(), rat(51, 5));
        assert_eq!(
            s_quasimonomial_p2((1, 1), &jet_candidates((1, 1)).unwrap()).unwrap(),
            rat(2, 1)
        );
        // dropping the quintic breaks the phase checks
        let broken: Vec<_> = cands.into_iter().filter(|(d, _)| *d != 5).collect();
        assert!(matches!(
            s_quasimonomial_p2((13, 2), &broken),
            Err(KstabError::IncompleteCandidates(_))
        ));
    }

    #[test]
    fn a12_wall_is_15a_plus_b_8() {
        let q = CurveSpec::from_poly(SurfaceId::P2, &crate::curvealg::a12_quintic()).unwrap();
        let l = CurveSpec::from_poly(SurfaceId::P2, &poly3(&[(1, 0, 0)])).unwrap();
        let cfg = PairConfig::new(SurfaceId::P2, q, l).unwrap();
        let p = beta_profile(&cfg, &Valuation::JetP2 { weights: (13, 2) }).unwrap();
        // A = 15 − 26a − 4b, S = (51/5)(1 − 5a/3 − b/3)
        assert_eq!(p.a.c0, rat(15, 1));
        assert_eq!(p.a.ca, rat(-26, 1));
        assert_eq!(p.a.cb, rat(-4, 1));
        assert_eq!(p.s.c0, rat(51, 5));
        assert_eq!(p.wall.as_deref(), Some("15a+b=8"));
    }

    #[test]
    fn lct_certificate_examples() {
        let q = CurveSpec::from_poly(SurfaceId::P2, &poly3(&[(0, 5, 0), (4, 0, 1)])).unwrap();
        let l = CurveSpec::from_poly(SurfaceId::P2, &poly3(&[(0, 0, 1)])).unwrap();
        let cfg = PairConfig::new(SurfaceId::P2, q, l.clone()).unwrap();
        let v = Valuation::Toric(
            ToricValuation::weighted_blowup(SurfaceId::P2, (0, 1), (5, 4)).unwrap(),
        );
        let t = rat(5, 3);
        let c = lct_certificate(&cfg, &v, &t).unwrap();
        assert_eq!(c, rat(9, 20));
        assert_eq!(c, &rat(3, 1) / &(&rat(5, 1) + &t));

        // smooth quintic through the center, ordinary blowup at t = 0: the
        // certificate 2/1 exceeds the lct value 3/5, so no wall arises
        let smooth = CurveSpec::new(
            SurfaceId::P2,
            vec![CurveComponent::generic(
                vec![
                    vec![0, 1, 4],
                    vec![1, 0, 4],
                    vec![0, 5, 0],
                    vec![5, 0, 0],
                    vec![4, 0, 1],
                ],
                1,
            )],
        )
        .unwrap();
        let cfg2 = PairConfig::new(SurfaceId::P2, smooth, l.clone()).unwrap();
        let v1 = Valuation::Toric(
            ToricValuation::weighted_blowup(SurfaceId::P2, (0, 1), (1, 1)).unwrap(),
        );
        let cert = lct_certificate(&cfg2, &v1, &rat(0, 1)).unwrap();
        assert_eq!(cert, rat(2, 1));
        assert!(cert > rat(3, 5));

        // a quintic missing the center has order zero
        let fermat =
            CurveSpec::from_poly(SurfaceId::P2, &poly3(&[(5, 0, 0), (0, 5, 0), (0, 0, 5)]))
                .unwrap();
        let cfg_miss = PairConfig::new(SurfaceId::P2, fermat, l.clone()).unwrap();
        assert!(matches!(
            lct_certificate(&cfg_miss, &v1, &rat(0, 1)),
            Err(KstabError::DivisionByZero)
        ));

        // ({y⁵+x³z²}, {z}), v = wt(5,3), t = 5/8 → 8/15 = 3/(5+5/8)
        let q = CurveSpec::from_poly(SurfaceId::P2, &poly3(&[(0, 5, 0), (3, 0, 2)])).unwrap();
        let cfg3 = PairConfig::new(SurfaceId::P2, q, l).unwrap();
        let v = Valuation::Toric(
            ToricValuation::weighted_blowup(SurfaceId::P2, (0, 1), (5, 3)).unwrap(),
        );
        let t = rat(5, 8);
        let c = lct_certificate(&cfg3, &v, &t).unwrap();
        assert_eq!(c, rat(8, 15));
        assert_eq!(c, &rat(3, 1) / &(&rat(5, 1) + &t));
    }

    #[test]
    fn f2_rank_detection() {
        let mk = |q: SparsePoly, l: SparsePoly| {
            PairConfig::new(
                SurfaceId::P114,
                CurveSpec::from_poly(SurfaceId::P114, &q).unwrap(),
                CurveSpec::from_poly(SurfaceId::P114, &l).unwrap(),
            )
            .unwrap()
        };
        let l = poly3(&[(1, 1, 0)]);
        assert_eq!(mk(poly3(&[(1, 1, 2)]), l.clone()).f2_rank(), Some(2));
        assert_eq!(
            mk(poly3(&[(2, 0, 2), (0, 6, 1)]), l.clone()).f2_rank(),
            Some(1)
        );
        assert_eq!(mk(poly3(&[(0, 6, 1), (6, 4, 0)]), l).f2_rank(), Some(0));
    }

    #[test]
    fn catalog_cross_checks() {
        // the [0:1:0]-point valuation on P(1,4,25): catalog vs toric integral
        let v = p1425_vertex_valuation();
        let cat = p1425_vertex_catalog();
        assert_eq!(toric::log_discrepancy(&v), cat.a_x);
        assert_eq!(
            toric::s_invariant(toric::surface(SurfaceId::P1425), &v).unwrap(),
            cat.s_x
        );
    }

    #[test]
    fn x26_valuation_is_required() {
        let q = CurveSpec::from_poly(SurfaceId::X26, &poly4(&[(0, 0, 0, 1)])).unwrap();
        let l = CurveSpec::from_poly(SurfaceId::X26, &poly4(&[(5, 0, 0, 0)])).unwrap();
        let cfg = PairConfig::new(SurfaceId::X26, q, l).unwrap();
        let v = Valuation::JetP2 { weights: (1, 1) };
        assert!(matches!(
            beta_profile(&cfg, &v),
            Err(KstabError::UncatalogedValuation)
        ));
    }

    #[test]
    fn beta_at_origin_is_a_minus_s() {
        let q = CurveSpec::from_poly(SurfaceId::P2, &poly3(&[(0, 5, 0), (4, 0, 1)])).unwrap();
        let l = CurveSpec::from_poly(SurfaceId::P2, &poly3(&[(0, 0, 1)])).unwrap();
        let cfg = PairConfig::new(SurfaceId::P2, q, l).unwrap();
        let v = Valuation::Toric(
            ToricValuation::weighted_blowup(SurfaceId::P2, (0, 1), (5, 4)).unwrap(),
        );
        let p = beta_profile(&cfg, &v).unwrap();
        let zero = Rational::zero();
        assert_eq!(
            p.beta.eval(&zero, &zero),
            &v.log_discrepancy_x() - &v.s_x().unwrap()
        );
    }

    #[test]
    fn x26_coordinate_orders() {
        let chart = Valuation::X26Catalog.chart_valuation();
        let l5 = |e: &[(u32, u32, u32, u32)]| {
            CurveSpec::from_poly(SurfaceId::X26, &poly4(e)).unwrap()
        };
        assert_eq!(
            ord_along(&chart, &l5(&[(5, 0, 0, 0)])).unwrap(),
            rat(26, 5)
        );
        assert_eq!(
            ord_along(&chart, &l5(&[(3, 1, 0, 0)])).unwrap(),
            rat(16, 5)
        );
        assert_eq!(ord_along(&chart, &l5(&[(1, 2, 0, 0)])).unwrap(), rat(6, 5));
    }
}
