//! PCF varieties: membership residuals, the Fermat–Pell projection, the
//! closed-form small types, and the curve models for types (0,3), (2,1),
//! (1,2) together with the maps between them.

use std::fmt;

use thiserror::Error;

use crate::continuant::{cf_matrix, Projective};
use crate::pcf::{e_matrix, roots_of_quad, Pcf, PcfError, QuadPoly, Root};
use crate::ring::{ExtElem, RingElem, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VarietyError {
    #[error("point is not on the variety")]
    NotMember,
    #[error("target (A, B, C) must not be (0, 0, 0)")]
    ZeroTarget,
    #[error("expected {expected} coordinates, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("period length must be positive")]
    EmptyPeriod,
    #[error("division by zero in {0}")]
    ZeroDivision(&'static str),
    #[error("{0} is not integral")]
    NotIntegral(String),
    #[error("parameter constraint violated: {0}")]
    Constraint(String),
    #[error("the extraneous point (0, 0) has no image")]
    Extraneous,
    #[error("type ({0},{1}) has no closed-form solver")]
    UnsupportedType(usize, usize),
    #[error("parse error in {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Pcf(#[from] PcfError),
}

type Result<T> = std::result::Result<T, VarietyError>;

/// Coefficients (A, B, C) of the target polynomial Ax² + Bx + C.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TargetRoots {
    pub a: RingElem,
    pub b: RingElem,
    pub c: RingElem,
}

impl TargetRoots {
    pub fn new(a: RingElem, b: RingElem, c: RingElem) -> Result<Self> {
        if a.is_zero() && b.is_zero() && c.is_zero() {
            return Err(VarietyError::ZeroTarget);
        }
        Ok(TargetRoots { a, b, c })
    }

    /// V(m): the roots ±√m, i.e. (1, 0, −m).
    pub fn sqrt_of(m: &RingElem) -> Self {
        TargetRoots { a: RingElem::one(), b: RingElem::zero(), c: -m }
    }

    pub fn conj(&self) -> Self {
        TargetRoots { a: self.a.conj(), b: self.b.conj(), c: self.c.conj() }
    }

    pub fn discriminant(&self) -> RingElem {
        &self.b * &self.b - RingElem::int(4) * &self.a * &self.c
    }

    pub fn as_quad(&self) -> QuadPoly {
        QuadPoly { a: self.a.clone(), b: self.b.clone(), c: self.c.clone() }
    }

    /// A y² + B y + C
    pub fn eval(&self, y: &RingElem) -> RingElem {
        &(&self.a * y + &self.b) * y + &self.c
    }
}

impl fmt::Display for TargetRoots {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// A point (b₁,…,b_N, a₁,…,a_k) of affine (N+k)-space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarietyPoint {
    pub coords: Vec<RingElem>,
    pub n: usize,
    pub k: usize,
}

impl VarietyPoint {
    pub fn new(coords: Vec<RingElem>, n: usize, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(VarietyError::EmptyPeriod);
        }
        if coords.len() != n + k {
            return Err(VarietyError::WrongArity { expected: n + k, got: coords.len() });
        }
        Ok(VarietyPoint { coords, n, k })
    }

    pub fn field(&self) -> i64 {
        self.coords.iter().map(|c| c.d()).max().unwrap_or(1)
    }

    pub fn to_pcf(&self) -> Pcf {
        Pcf::from_coords(&self.coords, self.n, self.field()).expect("k >= 1 and coordinates share a field")
    }

    pub fn from_pcf(p: &Pcf) -> Self {
        let (n, k) = p.pcf_type();
        VarietyPoint { coords: p.coords(), n, k }
    }

    pub fn negated(&self) -> Self {
        VarietyPoint { coords: self.coords.iter().map(|c| -c).collect(), n: self.n, k: self.k }
    }

    pub fn conj(&self) -> Self {
        VarietyPoint { coords: self.coords.iter().map(|c| c.conj()).collect(), n: self.n, k: self.k }
    }
}

impl fmt::Display for VarietyPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_point(&self.coords))
    }
}

/// `(e1, e2, ..., em)`
pub fn format_point(c: &[RingElem]) -> String {
    format!("({})", c.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", "))
}

/// Inverse of `format_point`.
pub fn parse_point(s: &str, d: i64) -> Result<Vec<RingElem>> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(&t);
    if inner.is_empty() {
        return Err(VarietyError::Parse { input: s.into(), reason: "empty point".into() });
    }
    inner.split(',').map(|e| RingElem::parse(e, d).map_err(VarietyError::from)).collect()
}

/// Defects of A(E₂₂−E₁₁) = B·E₂₁, −A·E₁₂ = C·E₂₁, −B·E₁₂ = C(E₂₂−E₁₁).
pub fn variety_residuals(t: &TargetRoots, p: &VarietyPoint) -> [RingElem; 3] {
    let e = e_matrix(&p.to_pcf());
    let diag = &e.e22 - &e.e11;
    [
        &t.a * &diag - &t.b * &e.e21,
        -(&t.a * &e.e12) - &t.c * &e.e21,
        -(&t.b * &e.e12) - &t.c * &diag,
    ]
}

pub fn is_member(t: &TargetRoots, p: &VarietyPoint) -> bool {
    variety_residuals(t, p).iter().all(RingElem::is_zero)
}

/// (E₁₂, E₂₁, E₂₂ − E₁₁): all zero iff E is scalar, i.e. p lies on the
/// divergence locus V_{N,k}.
pub fn vnk_residuals(p: &VarietyPoint) -> [RingElem; 3] {
    let e = e_matrix(&p.to_pcf());
    [e.e12.clone(), e.e21.clone(), &e.e22 - &e.e11]
}

/// The same triple computed from the period alone.
pub fn vnk_residuals_period(p: &VarietyPoint) -> [RingElem; 3] {
    let m = cf_matrix(&p.coords[p.n..]);
    [m.e12.clone(), m.e21.clone(), &m.e22 - &m.e11]
}

/// π_FP(p) = (E₂₁, E₂₂).
pub fn fp_project(t: &TargetRoots, p: &VarietyPoint) -> Result<(RingElem, RingElem)> {
    if !is_member(t, p) {
        return Err(VarietyError::NotMember);
    }
    let e = e_matrix(&p.to_pcf());
    Ok((e.e21, e.e22))
}

/// C x² − B x y + A y² − (−1)ᵏ A.
pub fn fp_conic_residual(t: &TargetRoots, k: usize, xy: &(RingElem, RingElem)) -> RingElem {
    let (x, y) = xy;
    let sign = if k % 2 == 0 { t.a.clone() } else { -&t.a };
    &t.c * x * x - &t.b * x * y + &t.a * y * y - sign
}

/// Exceptional cases where a component has more than the expected dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DegenerateCase {
    /// Type (1,2) with A = B = 0.
    OneTwoAB,
    /// Type (0,1) with C = −A.
    ZeroOneAntipodal,
    /// Type (0,2) with A = B = 0 (the line a₂ = 0).
    ZeroTwoAB,
    /// Type (0,2) with B = C = 0 (the line a₁ = 0).
    ZeroTwoBC,
}

pub fn degenerate_case(t: &TargetRoots, n: usize, k: usize) -> Option<DegenerateCase> {
    match (n, k) {
        (1, 2) if t.a.is_zero() && t.b.is_zero() => Some(DegenerateCase::OneTwoAB),
        (0, 1) if t.c == -&t.a => Some(DegenerateCase::ZeroOneAntipodal),
        (0, 2) if t.a.is_zero() && t.b.is_zero() => Some(DegenerateCase::ZeroTwoAB),
        (0, 2) if t.b.is_zero() && t.c.is_zero() => Some(DegenerateCase::ZeroTwoBC),
        _ => None,
    }
}

/// A solution point; coordinates may live in a quadratic extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallPoint {
    pub coords: Vec<Root>,
}

impl SmallPoint {
    fn base(c: Vec<RingElem>) -> Self {
        SmallPoint { coords: c.into_iter().map(Root::Finite).collect() }
    }

    /// Coordinates when all lie in the base field.
    pub fn base_coords(&self) -> Option<Vec<RingElem>> {
        self.coords
            .iter()
            .map(|r| match r {
                Root::Finite(x) => Some(x.clone()),
                _ => None,
            })
            .collect()
    }

    pub fn is_rational(&self) -> bool {
        self.base_coords().is_some()
    }

    pub fn is_integral(&self) -> bool {
        self.base_coords().is_some_and(|c| c.iter().all(RingElem::is_integral))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallSolution {
    pub points: Vec<SmallPoint>,
    /// Set when the solution set has a positive-dimensional (or otherwise
    /// oversized) component; such components are reported, not listed.
    pub degenerate: Option<DegenerateCase>,
}

/// Closed-form solutions for types (0,1), (0,2), (1,1) inside field `d`
/// or its quadratic extension.
pub fn solve_small_type(t: &TargetRoots, n: usize, k: usize, d: i64) -> Result<SmallSolution> {
    let degenerate = degenerate_case(t, n, k);
    let (a, b, c) = (&t.a, &t.b, &t.c);
    let lift = |e: RingElem| e.in_field(d).map_err(VarietyError::from);
    let points = match (n, k) {
        (0, 1) => {
            if !a.is_zero() && *c == -a {
                vec![SmallPoint::base(vec![lift(-(b / a))?])]
            } else {
                vec![]
            }
        }
        (0, 2) => {
            if degenerate.is_some() {
                vec![]
            } else if !a.is_zero() && !b.is_zero() && !c.is_zero() {
                vec![SmallPoint::base(vec![lift(-(b / a))?, lift(b / c)?]), SmallPoint::base(vec![lift(0.into())?, lift(0.into())?])]
            } else {
                vec![SmallPoint::base(vec![lift(0.into())?, lift(0.into())?])]
            }
        }
        (1, 1) => {
            if a.is_zero() {
                vec![]
            } else {
                let theta = lift(t.discriminant() / (a * a) - RingElem::int(4))?;
                let mid = -(b / a);
                let half = RingElem::frac(1, 2);
                let mut pts = Vec::new();
                if let Some(s) = theta.sqrt() {
                    for a1 in [s.clone(), -s] {
                        let b1 = &(&mid + &a1) * &half;
                        pts.push(SmallPoint::base(vec![b1, a1]));
                    }
                    pts.dedup();
                } else {
                    for sgn in [1, -1] {
                        let a1 = ExtElem::new(RingElem::zero(), RingElem::int(sgn), theta.clone())?;
                        let b1 = a1.add_base(&mid).scale(&half);
                        pts.push(SmallPoint { coords: vec![Root::Ext(b1), Root::Ext(a1)] });
                    }
                }
                pts
            }
        }
        _ => return Err(VarietyError::UnsupportedType(n, k)),
    };
    Ok(SmallSolution { points, degenerate })
}

/// A(x₂² + 1) − B x₂(x₂x₃ + 1) + C(x₂x₃ + 1)²: the plane model of type (0,3).
pub fn riot_residual(t: &TargetRoots, x2: &RingElem, x3: &RingElem) -> RingElem {
    let s = x2 * x3 + RingElem::one();
    &t.a * &(x2 * x2 + RingElem::one()) - &t.b * x2 * &s + &t.c * &s * &s
}

/// x₁ from −A(x₁x₂ + 1) = C(x₂x₃ + 1).
pub fn recover_x1_03(t: &TargetRoots, x2: &RingElem, x3: &RingElem) -> Result<RingElem> {
    if t.a.is_zero() {
        return Err(VarietyError::ZeroDivision("A"));
    }
    if x2.is_zero() {
        return Err(VarietyError::ZeroDivision("x2"));
    }
    let s = x2 * x3 + RingElem::one();
    Ok((-(&t.c * &s) / &t.a - RingElem::one()) / x2)
}

/// The rational parametrization of V(A,B,C)_{0,3} from B² − 4AC = R² + S².
pub fn param03(t: &TargetRoots, r: &RingElem, s: &RingElem, tp: &Projective) -> Result<[RingElem; 3]> {
    let disc = t.discriminant();
    if disc != r * r + s * s || disc.is_zero() {
        return Err(VarietyError::Constraint("B^2 - 4AC must equal R^2 + S^2 and be nonzero".into()));
    }
    if t.c == -&t.a {
        return Err(VarietyError::Constraint("C = -A".into()));
    }
    let two = RingElem::int(2);
    // (t² + 1, t² − 1, 2t), or the leading terms at t = ∞
    let (p1, m1, tt) = match tp {
        Projective::Finite(x) => (x * x + RingElem::one(), x * x - RingElem::one(), &two * x),
        Projective::Infinity => (RingElem::one(), RingElem::one(), RingElem::zero()),
    };
    let den = &t.b * &p1 - r * &m1 + s * &tt;
    let den2 = -(s * &m1) - r * &tt;
    if den.is_zero() || den2.is_zero() {
        return Err(VarietyError::ZeroDivision("parameter pole"));
    }
    let x1 = (-(&two * &t.c * &p1) + s * &m1 + r * &tt) / &den;
    let x2 = &den / &den2;
    let x3 = (&two * &t.a * &p1 + s * &m1 + r * &tt) / &den;
    Ok([x1, x2, x3])
}

/// The three defining equations for type (2,1) in coordinates (y₁, y₂, x₁).
pub fn curve21_residual(t: &TargetRoots, p: &[RingElem; 3]) -> [RingElem; 3] {
    let [y1, y2, x1] = p;
    let one = RingElem::one();
    let two = RingElem::int(2);
    let e21 = -(y2 * y2) + y2 * x1 + &one;
    let diag = &two * y1 * y2 * y2 + &two * y2 - &two * y1 * y2 * x1 - &two * y1 - x1;
    let neg_e12 = -(y1 * y1 * y2 * y2) - &two * y1 * y2 - &one + y1 * y1 * y2 * x1 + y1 * x1 + y1 * y1;
    [&t.a * &diag - &t.b * &e21, &t.a * &neg_e12 - &t.c * &e21, &t.b * &neg_e12 - &t.c * &diag]
}

/// z² = −4(Ay₁² + By₁ + C)² + B² − 4AC, with z = x₁(Ay₁² + By₁ + C).
pub fn curve21_quartic(t: &TargetRoots, y1: &RingElem) -> RingElem {
    let q = t.eval(y1);
    t.discriminant() - RingElem::int(4) * &q * &q
}

/// All base-field points of type (2,1) above a given y₁.
///
/// With Q = Ay₁² + By₁ + C ≠ 0 and s = (2Ay₁ + B)/Q, the fibre is
/// x₁ = ±√(quartic)/Q, y₂ = (x₁ − s)/2.
pub fn curve21_lift(t: &TargetRoots, y1: &RingElem) -> Vec<[RingElem; 3]> {
    let q = t.eval(y1);
    if q.is_zero() {
        return vec![];
    }
    let Some(z) = curve21_quartic(t, y1).sqrt() else { return vec![] };
    let s = (RingElem::int(2) * &t.a * y1 + &t.b) / &q;
    let mut out = Vec::new();
    for x1 in [&z / &q, -(&z / &q)] {
        let y2 = (&x1 - &s) * RingElem::frac(1, 2);
        let p = [y1.clone(), y2, x1];
        if curve21_residual(t, &p).iter().all(RingElem::is_zero) && !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// The second component of type (1,2): y₁ ↦ (y₁, x₁, x₂).
pub fn curve12_point(t: &TargetRoots, y1: &RingElem) -> Result<[RingElem; 3]> {
    let q = t.eval(y1);
    if q.is_zero() {
        return Err(VarietyError::ZeroDivision("A y1^2 + B y1 + C"));
    }
    if t.a.is_zero() {
        return Err(VarietyError::ZeroDivision("A"));
    }
    let l = RingElem::int(2) * &t.a * y1 + &t.b;
    Ok([y1.clone(), -(&l / &q), &l / &t.a])
}

/// A y₁² x₁ + B y₁ x₁ + B + 2A y₁ + C x₁ (the component equation).
pub fn curve12_residual(t: &TargetRoots, y1: &RingElem, x1: &RingElem) -> RingElem {
    &t.a * y1 * y1 * x1 + &t.b * y1 * x1 + &t.b + RingElem::int(2) * &t.a * y1 + &t.c * x1
}

/// y₁² x₁ + 2y₁ − m x₁, the component equation for V(m).
pub fn goods_residual(m: &RingElem, y1: &RingElem, x1: &RingElem) -> RingElem {
    y1 * y1 * x1 + RingElem::int(2) * y1 - m * x1
}

/// (a² b + 1) b − π
pub fn e_curve_residual(pi: &RingElem, a: &RingElem, b: &RingElem) -> RingElem {
    &(a * a * b + RingElem::one()) * b - pi
}

/// (y₁, x₁) ↦ (a, b) = (x₁/2, 2y₁/x₁).
pub fn reduce12_to_e(pi: &RingElem, y1: &RingElem, x1: &RingElem) -> Result<(RingElem, RingElem)> {
    if !goods_residual(pi, y1, x1).is_zero() {
        return Err(VarietyError::NotMember);
    }
    if x1.is_zero() {
        return Err(VarietyError::Extraneous);
    }
    let a = x1 * RingElem::frac(1, 2);
    let b = RingElem::int(2) * y1 / x1;
    Ok((a, b))
}

/// (a, b) ↦ (y₁, x₁) = (ab, 2a).
pub fn lift_e_to_12(pi: &RingElem, a: &RingElem, b: &RingElem) -> Result<(RingElem, RingElem)> {
    if !e_curve_residual(pi, a, b).is_zero() {
        return Err(VarietyError::NotMember);
    }
    Ok((a * b, RingElem::int(2) * a))
}

/// The PCF [ab; 2a, 2ab] attached to a point of the E-curve.
pub fn pcf_from_e_point(a: &RingElem, b: &RingElem, d: i64) -> Result<Pcf> {
    let ab = a * b;
    let two = RingElem::int(2);
    Ok(Pcf::new(vec![ab.clone()], vec![&two * a, &two * &ab], d)?)
}

/// The twist unit for the family action over Z[√2]: σ(2+w)/(2+w) = (w−1)².
pub fn twist_unit() -> RingElem {
    let t = RingElem::zw(-1, 1);
    let m = RingElem::zw(2, 1);
    debug_assert_eq!(m.conj() / &m, t.square());
    t
}

/// {±(y₁, x₁), ±(t⁻¹σ(y₁), t·σ(x₁))} with t = w − 1.
pub fn family_orbit(y1: &RingElem, x1: &RingElem) -> Result<Vec<(RingElem, RingElem)>> {
    if y1.is_zero() && x1.is_zero() {
        return Err(VarietyError::Extraneous);
    }
    let t = twist_unit();
    let ty = y1.conj() / &t;
    let tx = &t * &x1.conj();
    Ok(vec![(y1.clone(), x1.clone()), (-y1, -x1), (-&ty, -&tx), (ty, tx)])
}

/// uw = 2 + √2.
pub fn uw() -> RingElem {
    RingElem::u() * RingElem::w()
}

/// (z₁, z₂, z₃) on V(2+w)_{0,3} ↦ (a, b) = ((z₂z₃ + 1)/z₂², −uw·z₂²).
pub fn corr03_to_e(z: &[RingElem; 3]) -> Result<(RingElem, RingElem)> {
    let t = TargetRoots::sqrt_of(&uw());
    let p = VarietyPoint::new(z.to_vec(), 0, 3)?;
    if !is_member(&t, &p) {
        return Err(VarietyError::NotMember);
    }
    let z2sq = &z[1] * &z[1];
    if z2sq.is_zero() {
        return Err(VarietyError::ZeroDivision("z2"));
    }
    Ok(((&z[1] * &z[2] + RingElem::one()) / &z2sq, -(uw() * &z2sq)))
}

/// The quadruplet of (0,3)-points attached to (±a, b) with ‖b‖ = 2.
pub fn corr03_from_e(a: &RingElem, b: &RingElem) -> Result<Vec<[RingElem; 3]>> {
    if !e_curve_residual(&uw(), a, b).is_zero() {
        return Err(VarietyError::NotMember);
    }
    let r = (-b / uw())
        .in_field(2)?
        .sqrt()
        .ok_or_else(|| VarietyError::Constraint("-b/(uw) is not a square".into()))?;
    let n = r.norm();
    if !r.is_integral() || !(n == num_rational::BigRational::from_integer(1.into()) || n == num_rational::BigRational::from_integer((-1).into())) {
        return Err(VarietyError::Constraint("-b/(uw) is not the square of a unit".into()));
    }
    let one = RingElem::one();
    let mut out = Vec::new();
    for z2 in [r.clone(), -&r] {
        for aa in [a.clone(), -a] {
            let a2b1 = &aa * &aa * b + &one;
            let z1 = &z2 * &(&one + &aa * b) * &a2b1;
            let z3 = &z2 * &(&a2b1 + &aa);
            out.push([z1, z2.clone(), z3]);
        }
    }
    Ok(out)
}

/// (z₁, z₂, z₃) ↦ (y₁, x₁, x₂) = (z₁z₂ + 1, −2(z₂z₃ + 1)/z₂², 2(z₁z₂ + 1)).
pub fn corr03_to_12(z: &[RingElem; 3]) -> Result<[RingElem; 3]> {
    let z2sq = &z[1] * &z[1];
    if z2sq.is_zero() {
        return Err(VarietyError::ZeroDivision("z2"));
    }
    let y1 = &z[0] * &z[1] + RingElem::one();
    let x1 = RingElem::int(-2) * (&z[1] * &z[2] + RingElem::one()) / &z2sq;
    Ok([y1.clone(), x1, RingElem::int(2) * y1])
}

/// y² = x³ + a₂x² + a₄x + a₆.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicCurve {
    pub a2: RingElem,
    pub a4: RingElem,
    pub a6: RingElem,
}

impl CubicCurve {
    /// y² = x³ − x
    pub fn x3_minus_x() -> Self {
        CubicCurve { a2: 0.into(), a4: (-1).into(), a6: 0.into() }
    }

    /// y² = x(x + 2)(x + n)
    pub fn kouprey(n: i64) -> Self {
        CubicCurve { a2: (2 + n).into(), a4: (2 * n).into(), a6: 0.into() }
    }

    pub fn residual(&self, x: &RingElem, y: &RingElem) -> RingElem {
        y * y - (x * x * x + &self.a2 * x * x + &self.a4 * x + &self.a6)
    }
}

/// Residual of each point; all zero means every point lies on the curve.
pub fn verify_curve_points(curve: &CubicCurve, pts: &[(RingElem, RingElem)]) -> Vec<RingElem> {
    pts.iter().map(|(x, y)| curve.residual(x, y)).collect()
}

/// x = −wb/u and y = x·‖ab‖ for a point (a, b) of the E-curve over Z[√2].
pub fn kouprey_image(a: &RingElem, b: &RingElem) -> (RingElem, RingElem, i64) {
    let x = -(RingElem::w() * b) / RingElem::u();
    let nab = RingElem::rational((a * b).norm());
    let nb: i64 = num_traits::ToPrimitive::to_i64(&b.norm().to_integer()).unwrap_or(0);
    let y = &x * &nab;
    (x, y, nb)
}

/// The quadratic whose roots are the fixed points of a type-(0,1) PCF.
pub fn roots_of_target(t: &TargetRoots, d: i64) -> Result<crate::pcf::RootPair> {
    Ok(roots_of_quad(&t.as_quad(), d)?)
}
