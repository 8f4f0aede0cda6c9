//! Exact convergence decisions for PCFs, the dual verdict, Möbius orbit
//! classification, and convergence-rate estimates.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::continuant::{cf_matrix, finite_cf_value, CfError, Mat2, Projective};
use crate::numeric::{decimal_ext, decimal_ring, Interval};
use crate::pcf::{dual, e_matrix, eigenvalue, quad_of_matrix, roots_of_quad, Pcf, PcfError, Root};
use crate::ring::{RingElem, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConvergeError {
    #[error("determinant must be +1 or -1, got {0}")]
    BadDeterminant(String),
    #[error("parabolic case: convergence is sub-exponential")]
    SubExponential,
    #[error("the PCF does not converge")]
    NotConvergent,
    #[error(transparent)]
    Pcf(#[from] PcfError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Cf(#[from] CfError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DivergeReason {
    IdentityMultiple,
    Elliptic,
    Ineq,
}

impl fmt::Display for DivergeReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DivergeReason::IdentityMultiple => "identity-multiple",
            DivergeReason::Elliptic => "elliptic",
            DivergeReason::Ineq => "ineq",
        })
    }
}

/// A residue class of convergents with its own limit in the INEQ case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pariah {
    /// Convergents ending j terms into a period.
    pub shift: usize,
    pub limit: Projective,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Converges {
        value: Root,
        /// E₂₁β + E₂₂ at the limit (E₁₁ when the limit is ∞).
        lambda: Root,
        /// Double root: |λ| = 1 and convergence is sub-exponential.
        parabolic: bool,
    },
    Diverges {
        reason: DivergeReason,
        /// Limit of the non-pariah classes (INEQ case only).
        main_limit: Option<Root>,
        pariahs: Vec<Pariah>,
    },
}

impl Verdict {
    pub fn converges(&self) -> bool {
        matches!(self, Verdict::Converges { .. })
    }

    pub fn value(&self) -> Option<&Root> {
        match self {
            Verdict::Converges { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn reason(&self) -> Option<DivergeReason> {
        match self {
            Verdict::Diverges { reason, .. } => Some(*reason),
            _ => None,
        }
    }

    /// Is the value +√m (e.g. m = 2 + √2)?
    pub fn converges_to_positive_sqrt(&self, m: &RingElem) -> bool {
        self.value().is_some_and(|v| v.is_positive_sqrt_of(m))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Converges { value, .. } => write!(f, "Converges({value})"),
            Verdict::Diverges { reason, .. } => write!(f, "Diverges({reason})"),
        }
    }
}

/// Compare |λ| with 1 exactly. Complex λ (a root of a quadratic with
/// negative discriminant) uses |λ|² = λ·λ̄ = relative norm.
pub fn modulus_cmp_one(lambda: &Root) -> Result<Ordering, ConvergeError> {
    let s = match lambda {
        Root::Finite(x) => (x.square() - RingElem::one()).sign(),
        Root::Ext(x) if x.is_real() => (x * x).add_base(&RingElem::int(-1)).sign()?,
        Root::Ext(x) => (x.norm() - RingElem::one()).sign(),
        Root::Infinity => 1,
    };
    Ok(s.cmp(&0))
}

fn field_of(m: &Mat2) -> i64 {
    [&m.e11, &m.e12, &m.e21, &m.e22].iter().map(|e| e.d()).max().unwrap_or(1)
}

/// Shifts j with M(a_{j+1},…,a_{j+k})₂₁ = 0 and |M₂₂| > 1 (or < 1 when
/// `reversed`, the dual condition).
pub fn ineq_indices(per: &[RingElem], reversed: bool) -> Vec<usize> {
    let k = per.len();
    let mut out = Vec::new();
    for j in 0..k {
        let mut rot = per.to_vec();
        rot.rotate_left(j);
        let m = cf_matrix(&rot);
        if !m.e21.is_zero() {
            continue;
        }
        let s = (m.e22.square() - RingElem::one()).sign();
        if (!reversed && s > 0) || (reversed && s < 0) {
            out.push(j);
        }
    }
    out
}

/// Smallest INEQ shift, if any.
pub fn ineq_check(per: &[RingElem]) -> Option<usize> {
    ineq_indices(per, false).first().copied()
}

/// The exact convergence decision.
pub fn verdict(p: &Pcf) -> Result<Verdict, ConvergeError> {
    let e = e_matrix(p);
    if e.is_scalar() {
        return Ok(Verdict::Diverges { reason: DivergeReason::IdentityMultiple, main_limit: None, pariahs: vec![] });
    }
    let r = roots_of_quad(&quad_of_matrix(&e)?, p.d())?;
    if r.is_double() {
        let lambda = eigenvalue(&e, &r.first);
        return Ok(Verdict::Converges { value: r.first, lambda, parabolic: true });
    }
    let l1 = eigenvalue(&e, &r.first);
    let (beta, lambda) = match modulus_cmp_one(&l1)? {
        Ordering::Equal => {
            return Ok(Verdict::Diverges { reason: DivergeReason::Elliptic, main_limit: None, pariahs: vec![] })
        }
        Ordering::Greater => (r.first, l1),
        Ordering::Less => {
            let l2 = eigenvalue(&e, &r.second);
            (r.second, l2)
        }
    };
    let shifts = ineq_indices(p.per(), false);
    if !shifts.is_empty() {
        let mut pariahs = Vec::new();
        for j in shifts {
            let mut c = p.pre().to_vec();
            c.extend_from_slice(&p.per()[..j]);
            pariahs.push(Pariah { shift: j, limit: finite_cf_value(&c)? });
        }
        return Ok(Verdict::Diverges { reason: DivergeReason::Ineq, main_limit: Some(beta), pariahs });
    }
    Ok(Verdict::Converges { value: beta, lambda, parabolic: false })
}

/// Verdict for the dual PCF, which converges (when it does) to the other root.
pub fn dual_verdict(p: &Pcf) -> Result<Verdict, ConvergeError> {
    verdict(&dual(p))
}

/// Convergence speed of a PCF with |λ| ≠ 1 (display only).
#[derive(Clone, Debug, PartialEq)]
pub struct Rate {
    pub modulus: f64,
    pub digits_per_convergent: f64,
    pub digits_per_period: f64,
    pub convergents_per_digit: f64,
    /// |λ| as a certified truncated decimal.
    pub modulus_decimal: String,
}

pub fn rate(p: &Pcf) -> Result<Rate, ConvergeError> {
    let Verdict::Converges { lambda, parabolic, .. } = verdict(p)? else {
        return Err(ConvergeError::NotConvergent);
    };
    if parabolic {
        return Err(ConvergeError::SubExponential);
    }
    let abs = match modulus_sign(&lambda)? {
        s if s < 0 => lambda.negated(),
        _ => lambda,
    };
    let (iv, dec) = match &abs {
        Root::Finite(x) => (Interval::from_ring(x, 256), decimal_ring(x, 12)),
        Root::Ext(x) => (
            Interval::from_ext(x, 256).ok_or(ConvergeError::NotConvergent)?,
            decimal_ext(x, 12).ok_or(ConvergeError::NotConvergent)?,
        ),
        Root::Infinity => return Err(ConvergeError::NotConvergent),
    };
    let modulus = iv.midpoint_f64();
    let k = p.per().len() as f64;
    let lg = modulus.log10();
    Ok(Rate {
        modulus,
        digits_per_convergent: 2.0 * lg / k,
        digits_per_period: 2.0 * lg,
        convergents_per_digit: k / (2.0 * lg),
        modulus_decimal: dec,
    })
}

fn modulus_sign(lambda: &Root) -> Result<i8, ConvergeError> {
    Ok(match lambda {
        Root::Finite(x) => x.sign(),
        Root::Ext(x) => x.sign()?,
        Root::Infinity => 1,
    })
}

/// The six cases of a Möbius orbit z, Az, A²z, … with det A = ±1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MobiusCase {
    /// A is a scalar matrix.
    Identity,
    /// |tr| < 2 type, z a fixed point.
    EllipticFixed,
    /// Double fixed point; every orbit converges to it.
    Parabolic,
    /// Distinct |λ|, z the repelling fixed point.
    Repelling,
    /// |tr| < 2 type, z not fixed: the orbit rotates.
    EllipticDiverges,
    /// Distinct |λ|, z not repelling: converges to the attracting point.
    Attracted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MobiusOutcome {
    Fixed(Projective),
    ConvergesTo(Root),
    Diverges,
}

fn same_point(z: &Projective, r: &Root) -> bool {
    match (z, r) {
        (Projective::Infinity, Root::Infinity) => true,
        (Projective::Finite(a), Root::Finite(b)) => a == b,
        _ => false,
    }
}

pub fn classify_mobius(a: &Mat2, z: &Projective) -> Result<(MobiusCase, MobiusOutcome), ConvergeError> {
    let det = a.det();
    if !(det.is_one() || (-&det).is_one()) {
        return Err(ConvergeError::BadDeterminant(det.to_string()));
    }
    if a.is_scalar() {
        return Ok((MobiusCase::Identity, MobiusOutcome::Fixed(z.clone())));
    }
    let r = roots_of_quad(&quad_of_matrix(a)?, field_of(a))?;
    if r.is_double() {
        return Ok((MobiusCase::Parabolic, MobiusOutcome::ConvergesTo(r.first)));
    }
    let l1 = eigenvalue(a, &r.first);
    let (plus, minus) = match modulus_cmp_one(&l1)? {
        Ordering::Equal => {
            return Ok(if same_point(z, &r.first) || same_point(z, &r.second) {
                (MobiusCase::EllipticFixed, MobiusOutcome::Fixed(z.clone()))
            } else {
                (MobiusCase::EllipticDiverges, MobiusOutcome::Diverges)
            });
        }
        Ordering::Greater => (r.first, r.second),
        Ordering::Less => (r.second, r.first),
    };
    if same_point(z, &minus) {
        Ok((MobiusCase::Repelling, MobiusOutcome::Fixed(z.clone())))
    } else {
        Ok((MobiusCase::Attracted, MobiusOutcome::ConvergesTo(plus)))
    }
}
