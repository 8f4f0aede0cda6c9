//! Euler continuants, the matrices D(c) and M(c₁,…,cₙ), and values of
//! finite continued fractions on the projective line.

use std::fmt;
use std::ops::Mul;

use thiserror::Error;

use crate::ring::RingElem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CfError {
    #[error("indeterminate value 0/0")]
    Indeterminate,
    #[error("matrix is singular")]
    Singular,
}

/// A point of P¹ over the base field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Projective {
    Finite(RingElem),
    Infinity,
}

impl Projective {
    /// p/q as a projective point.
    pub fn from_pair(p: &RingElem, q: &RingElem) -> Result<Self, CfError> {
        match (p.is_zero(), q.is_zero()) {
            (true, true) => Err(CfError::Indeterminate),
            (_, true) => Ok(Projective::Infinity),
            _ => Ok(Projective::Finite(p / q)),
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Projective::Infinity)
    }
}

impl fmt::Display for Projective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Projective::Finite(e) => write!(f, "{e}"),
            Projective::Infinity => write!(f, "inf"),
        }
    }
}

/// [[e11, e12], [e21, e22]]
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub e11: RingElem,
    pub e12: RingElem,
    pub e21: RingElem,
    pub e22: RingElem,
}

impl Mat2 {
    pub fn new(e11: RingElem, e12: RingElem, e21: RingElem, e22: RingElem) -> Self {
        Mat2 { e11, e12, e21, e22 }
    }

    pub fn from_ints(m: [[i64; 2]; 2]) -> Self {
        Mat2::new(m[0][0].into(), m[0][1].into(), m[1][0].into(), m[1][1].into())
    }

    pub fn identity() -> Self {
        Mat2::from_ints([[1, 0], [0, 1]])
    }

    /// D(c) = [[c, 1], [1, 0]].
    pub fn d(c: &RingElem) -> Self {
        Mat2::new(c.clone(), RingElem::one(), RingElem::one(), RingElem::zero())
    }

    pub fn det(&self) -> RingElem {
        &self.e11 * &self.e22 - &self.e12 * &self.e21
    }

    pub fn trace(&self) -> RingElem {
        &self.e11 + &self.e22
    }

    pub fn is_scalar(&self) -> bool {
        self.e12.is_zero() && self.e21.is_zero() && self.e11 == self.e22
    }

    pub fn scale(&self, c: &RingElem) -> Self {
        Mat2::new(&self.e11 * c, &self.e12 * c, &self.e21 * c, &self.e22 * c)
    }

    pub fn inverse(&self) -> Result<Self, CfError> {
        let det = self.det();
        if det.is_zero() {
            return Err(CfError::Singular);
        }
        let di = det.inv().map_err(|_| CfError::Singular)?;
        Ok(Mat2::new(&self.e22 * &di, -(&self.e12 * &di), -(&self.e21 * &di), &self.e11 * &di))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Mat2::identity();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Möbius action on a projective point.
    pub fn apply(&self, z: &Projective) -> Result<Projective, CfError> {
        match z {
            Projective::Infinity => Projective::from_pair(&self.e11, &self.e21),
            Projective::Finite(z) => Projective::from_pair(&(&self.e11 * z + &self.e12), &(&self.e21 * z + &self.e22)),
        }
    }
}

impl Mul<&Mat2> for &Mat2 {
    type Output = Mat2;
    fn mul(self, o: &Mat2) -> Mat2 {
        Mat2::new(
            &self.e11 * &o.e11 + &self.e12 * &o.e21,
            &self.e11 * &o.e12 + &self.e12 * &o.e22,
            &self.e21 * &o.e11 + &self.e22 * &o.e21,
            &self.e21 * &o.e12 + &self.e22 * &o.e22,
        )
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        &self * &o
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.e11, self.e12, self.e21, self.e22)
    }
}

/// Kₙ(c₁,…,cₙ) with K₀ = 1, K₋₁ = 0.
pub fn continuant(c: &[RingElem]) -> RingElem {
    let mut prev = RingElem::zero();
    let mut cur = RingElem::one();
    for ci in c {
        let next = &cur * ci + &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Continuant of `c[i..j]` allowing the formal lengths −1 and −2
/// (j = i − 1 gives K₋₁ = 0, j = i − 2 gives K₋₂ = 1).
pub fn continuant_range(c: &[RingElem], i: usize, j: isize) -> RingElem {
    let len = j - i as isize;
    match len {
        -1 => RingElem::zero(),
        -2 => RingElem::one(),
        l if l < -2 => panic!("continuant of length {l}"),
        _ => continuant(&c[i..j as usize]),
    }
}

/// M(c) = D(c₁)⋯D(cₙ).
pub fn cf_matrix(c: &[RingElem]) -> Mat2 {
    c.iter().fold(Mat2::identity(), |acc, ci| &acc * &Mat2::d(ci))
}

/// [c₁,…,cₙ] = pₙ/qₙ on P¹ (∞ for the empty list).
pub fn finite_cf_value(c: &[RingElem]) -> Result<Projective, CfError> {
    let m = cf_matrix(c);
    Projective::from_pair(&m.e11, &m.e21)
}
