//! Periodic continued fractions [b₁,…,b_N; a₁,…,a_k]: the E-matrix, its
//! quadratic, the roots, the dual PCF, and the type-extension algebra.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

use crate::continuant::{cf_matrix, continuant, continuant_range, Mat2};
use crate::numeric::{decimal_ext, decimal_ring};
use crate::ring::{reduce_radicand, ExtElem, RingElem, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PcfError {
    #[error("E is a multiple of the identity; Quad vanishes")]
    IdentityMultiple,
    #[error("period must be nonempty")]
    EmptyPeriod,
    #[error("parse error in {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pcf {
    pre: Vec<RingElem>,
    per: Vec<RingElem>,
    d: i64,
}

impl Pcf {
    pub fn new(pre: Vec<RingElem>, per: Vec<RingElem>, d: i64) -> Result<Self, PcfError> {
        if per.is_empty() {
            return Err(PcfError::EmptyPeriod);
        }
        let lift = |v: Vec<RingElem>| v.iter().map(|e| e.in_field(d)).collect::<Result<Vec<_>, _>>();
        Ok(Pcf { pre: lift(pre)?, per: lift(per)?, d })
    }

    /// Build from integer partial quotients over Q.
    pub fn from_ints(pre: &[i64], per: &[i64]) -> Result<Self, PcfError> {
        Self::new(pre.iter().map(|&x| x.into()).collect(), per.iter().map(|&x| x.into()).collect(), 1)
    }

    /// Parse `[b1, ..., bN; a1, ..., ak]`; whitespace is ignored.
    pub fn parse(s: &str, d: i64) -> Result<Self, PcfError> {
        let err = |r: &str| PcfError::Parse { input: s.to_string(), reason: r.to_string() };
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = t.strip_prefix('[').and_then(|x| x.strip_suffix(']')).ok_or_else(|| err("expected [ ... ]"))?;
        let mut parts = inner.split(';');
        let (Some(pre), Some(per), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(err("expected exactly one ';'"));
        };
        let elems = |txt: &str| -> Result<Vec<RingElem>, PcfError> {
            if txt.is_empty() {
                return Ok(vec![]);
            }
            txt.split(',').map(|e| RingElem::parse(e, d).map_err(PcfError::from)).collect()
        };
        let per = elems(per)?;
        if per.is_empty() {
            return Err(err("empty period"));
        }
        Self::new(elems(pre)?, per, d)
    }

    pub fn pre(&self) -> &[RingElem] {
        &self.pre
    }

    pub fn per(&self) -> &[RingElem] {
        &self.per
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// (N, k)
    pub fn pcf_type(&self) -> (usize, usize) {
        (self.pre.len(), self.per.len())
    }

    /// All partial quotients negated; the value is negated too.
    pub fn negated(&self) -> Self {
        Pcf { pre: self.pre.iter().map(|e| -e).collect(), per: self.per.iter().map(|e| -e).collect(), d: self.d }
    }

    /// Coordinates (b₁,…,b_N, a₁,…,a_k) as a point of affine space.
    pub fn coords(&self) -> Vec<RingElem> {
        self.pre.iter().chain(&self.per).cloned().collect()
    }

    pub fn from_coords(coords: &[RingElem], n: usize, d: i64) -> Result<Self, PcfError> {
        Self::new(coords[..n].to_vec(), coords[n..].to_vec(), d)
    }

    /// The first `n` partial quotients c₁,…,cₙ.
    pub fn partial_quotients(&self, n: usize) -> Vec<RingElem> {
        let (nn, k) = self.pcf_type();
        (0..n).map(|i| if i < nn { self.pre[i].clone() } else { self.per[(i - nn) % k].clone() }).collect()
    }

    /// Strip pre-period entries equal to the last period entry, rotating the
    /// period each time; the value is unchanged.
    pub fn normalize(&self) -> Self {
        let mut pre = self.pre.clone();
        let mut per = self.per.clone();
        while let (Some(b), Some(a)) = (pre.last(), per.last()) {
            if b != a {
                break;
            }
            pre.pop();
            per.rotate_right(1);
        }
        Pcf { pre, per, d: self.d }
    }
}

impl fmt::Display for Pcf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[RingElem]| v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ");
        if self.pre.is_empty() {
            write!(f, "[; {}]", join(&self.per))
        } else {
            write!(f, "[{}; {}]", join(&self.pre), join(&self.per))
        }
    }
}

/// M(pre)⁻¹ = M([0, −b_N, …, −b₁, 0]).
fn pre_inverse(pre: &[RingElem]) -> Mat2 {
    if pre.is_empty() {
        return Mat2::identity();
    }
    let mut c = vec![RingElem::zero()];
    c.extend(pre.iter().rev().map(|b| -b));
    c.push(RingElem::zero());
    cf_matrix(&c)
}

/// E = M(pre)·M(per)·M(pre)⁻¹.
pub fn e_matrix(p: &Pcf) -> Mat2 {
    &(&cf_matrix(&p.pre) * &cf_matrix(&p.per)) * &pre_inverse(&p.pre)
}

/// The same matrix assembled entry-by-entry from continuants of reduced
/// lists (the 0-gluing identity applied to M([b, a, 0, −b, 0])).
pub fn e_matrix_from_continuants(p: &Pcf) -> Mat2 {
    let (n, k) = p.pcf_type();
    let a = &p.per;
    if n == 0 {
        return Mat2::new(
            continuant(a),
            continuant(&a[..k - 1]),
            continuant(&a[1..]),
            continuant_range(a, 1, k as isize - 1),
        );
    }
    // L = (b₁…b_N, a₁…a_{k−1}, a_k − b_N, −b_{N−1}, …, −b₁)
    let b = &p.pre;
    let mut l: Vec<RingElem> = b.clone();
    l.extend_from_slice(&a[..k - 1]);
    l.push(&a[k - 1] - &b[n - 1]);
    l.extend(b[..n - 1].iter().rev().map(|x| -x));
    let m = l.len() as isize;
    Mat2::new(
        continuant_range(&l, 0, m - 1),
        continuant(&l),
        continuant_range(&l, 1, m - 1),
        continuant_range(&l, 1, m),
    )
}

/// A x² + B x + C, not identically zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadPoly {
    pub a: RingElem,
    pub b: RingElem,
    pub c: RingElem,
}

impl QuadPoly {
    pub fn new(a: RingElem, b: RingElem, c: RingElem) -> Result<Self, PcfError> {
        if a.is_zero() && b.is_zero() && c.is_zero() {
            return Err(PcfError::IdentityMultiple);
        }
        Ok(QuadPoly { a, b, c })
    }

    pub fn scale(&self, s: &RingElem) -> Self {
        QuadPoly { a: &self.a * s, b: &self.b * s, c: &self.c * s }
    }

    /// B² − 4AC
    pub fn discriminant(&self) -> RingElem {
        &self.b * &self.b - RingElem::int(4) * &self.a * &self.c
    }

    /// True if `r` is a root (∞ is a root iff A = 0).
    pub fn vanishes_at(&self, r: &Root) -> bool {
        match r {
            Root::Infinity => self.a.is_zero(),
            Root::Finite(x) => (&(&self.a * x + &self.b) * x + &self.c).is_zero(),
            Root::Ext(x) => {
                let v = x.scale(&self.a).add_base(&self.b);
                (&v * x).add_base(&self.c).is_zero()
            }
        }
    }

    /// Same polynomial up to a nonzero scalar.
    pub fn proportional(&self, o: &QuadPoly) -> bool {
        let cross = |p: &RingElem, q: &RingElem, r: &RingElem, s: &RingElem| (p * s - q * r).is_zero();
        cross(&self.a, &self.b, &o.a, &o.b) && cross(&self.a, &self.c, &o.a, &o.c) && cross(&self.b, &self.c, &o.b, &o.c)
    }
}

impl fmt::Display for QuadPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})x^2 + ({})x + ({})", self.a, self.b, self.c)
    }
}

/// Quad(P) = E₂₁x² + (E₂₂ − E₁₁)x − E₁₂.
pub fn quad_poly(p: &Pcf) -> Result<QuadPoly, PcfError> {
    quad_of_matrix(&e_matrix(p))
}

pub fn quad_of_matrix(e: &Mat2) -> Result<QuadPoly, PcfError> {
    if e.is_scalar() {
        return Err(PcfError::IdentityMultiple);
    }
    QuadPoly::new(e.e21.clone(), &e.e22 - &e.e11, -&e.e12)
}

/// A root on P¹: in the base field, in a quadratic extension, or ∞.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Root {
    Finite(RingElem),
    Ext(ExtElem),
    Infinity,
}

impl Root {
    pub fn is_real(&self) -> bool {
        match self {
            Root::Ext(x) => x.is_real(),
            _ => true,
        }
    }

    pub fn negated(&self) -> Root {
        match self {
            Root::Finite(x) => Root::Finite(-x),
            Root::Ext(x) => Root::Ext(-x),
            Root::Infinity => Root::Infinity,
        }
    }

    /// Truncated decimal, when real and finite.
    pub fn decimal(&self, digits: usize) -> Option<String> {
        match self {
            Root::Finite(x) => Some(decimal_ring(x, digits)),
            Root::Ext(x) => decimal_ext(x, digits),
            Root::Infinity => None,
        }
    }

    /// Does this value satisfy v² = m and v > 0?
    pub fn is_positive_sqrt_of(&self, m: &RingElem) -> bool {
        match self {
            Root::Finite(x) => x.square() == *m && x.sign() > 0,
            Root::Ext(x) => {
                let sq = x * x;
                sq.y().is_zero() && *sq.x() == *m && x.sign() == Ok(1)
            }
            Root::Infinity => false,
        }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Root::Finite(x) => write!(f, "{x}"),
            Root::Infinity => write!(f, "inf"),
            Root::Ext(x) => {
                let (xx, yy, th) = (x.x(), x.y(), x.theta());
                let rad = format!("sqrt({th})");
                let rad = if x.branch() < 0 { format!("-{rad}") } else { rad };
                let ypart = if yy.is_one() {
                    rad
                } else if (-yy).is_one() {
                    format!("-{rad}")
                } else {
                    format!("({yy})*{rad}")
                };
                if xx.is_zero() {
                    write!(f, "{ypart}")
                } else {
                    write!(f, "{xx} + {ypart}")
                }
            }
        }
    }
}

/// The two roots of Quad. For irrational roots `first` is x + √θ and
/// `second` is x − √θ; for rational ones `first` is the larger.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootPair {
    pub first: Root,
    pub second: Root,
}

impl RootPair {
    pub fn is_double(&self) -> bool {
        self.first == self.second
    }

    pub fn as_vec(&self) -> Vec<Root> {
        vec![self.first.clone(), self.second.clone()]
    }

    pub fn contains(&self, r: &Root) -> bool {
        self.first == *r || self.second == *r
    }
}

/// Roots of a quadratic inside field `d` or its quadratic extension.
pub fn roots_of_quad(q: &QuadPoly, d: i64) -> Result<RootPair, PcfError> {
    if q.a.is_zero() {
        if q.b.is_zero() {
            return Ok(RootPair { first: Root::Infinity, second: Root::Infinity });
        }
        let r = -(&q.c / &q.b);
        return Ok(RootPair { first: Root::Finite(r), second: Root::Infinity });
    }
    let two_a = RingElem::int(2) * &q.a;
    let x0 = -(&q.b / &two_a);
    // θ = disc / (2A)², the discriminant of the monic polynomial
    let theta = (q.discriminant() / (&two_a * &two_a)).in_field(d)?;
    if theta.is_zero() {
        return Ok(RootPair { first: Root::Finite(x0.clone()), second: Root::Finite(x0) });
    }
    if let Some(s) = theta.sqrt() {
        let (p, m) = (&x0 + &s, &x0 - &s);
        let (hi, lo) = if p.cmp_real(&m).is_ge() { (p, m) } else { (m, p) };
        return Ok(RootPair { first: Root::Finite(hi), second: Root::Finite(lo) });
    }
    let (th, scale) = reduce_radicand(&theta);
    let th = th.in_field(d)?;
    let s = RingElem::rational(scale);
    let plus = ExtElem::new(x0.clone(), s.clone(), th.clone())?;
    let minus = ExtElem::new(x0, -s, th)?;
    Ok(RootPair { first: Root::Ext(plus), second: Root::Ext(minus) })
}

pub fn roots(p: &Pcf) -> Result<RootPair, PcfError> {
    roots_of_quad(&quad_poly(p)?, p.d)
}

/// The eigenvalue E₂₁β + E₂₂ attached to a fixed point β (E₁₁ for β = ∞).
pub fn eigenvalue(e: &Mat2, beta: &Root) -> Root {
    match beta {
        Root::Infinity => Root::Finite(e.e11.clone()),
        Root::Finite(x) => Root::Finite(&e.e21 * x + &e.e22),
        Root::Ext(x) => Root::Ext(x.scale(&e.e21).add_base(&e.e22)),
    }
}

/// P* with E(P*) = E(P)⁻¹.
pub fn dual(p: &Pcf) -> Pcf {
    let k = p.per.len();
    let rev_neg = |v: &[RingElem]| v.iter().rev().map(|x| -x).collect::<Vec<_>>();
    if p.pre.is_empty() {
        return Pcf { pre: vec![RingElem::zero().in_field(p.d).expect("d valid")], per: rev_neg(&p.per), d: p.d };
    }
    let n = p.pre.len();
    let mut pre = p.pre[..n - 1].to_vec();
    pre.push(&p.pre[n - 1] - &p.per[k - 1]);
    let mut per = rev_neg(&p.per[..k - 1]);
    per.push(-&p.per[k - 1]);
    Pcf { pre, per, d: p.d }
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// G with E(P repeated m times) − (scalar) = G·(E(P) − scalar).
pub fn g_multiplier(per: &[RingElem], m: u32) -> RingElem {
    assert!(m >= 1, "m must be positive");
    let k = per.len() as u64;
    let tr = cf_matrix(per).trace();
    let mut g = RingElem::zero();
    let m = m as u64;
    for j in 0..=((m - 1) / 2) {
        let sign = if ((k + 1) * j) % 2 == 0 { 1 } else { -1 };
        let c = RingElem::rational(BigRational::from_integer(binomial(m - 1 - j, j) * sign));
        g = g + c * tr.pow((m - 1 - 2 * j) as i64).expect("nonnegative power");
    }
    g
}

/// Reinterpret P as type (N + ℓ, m·k): absorb ℓ period terms into the
/// pre-period and repeat the period m times.
pub fn extend_type(p: &Pcf, l: usize, m: usize) -> Pcf {
    assert!(m >= 1, "m must be positive");
    let k = p.per.len();
    let mut pre = p.pre.clone();
    pre.extend((0..l).map(|i| p.per[i % k].clone()));
    let per = (0..m * k).map(|i| p.per[(i + l) % k].clone()).collect();
    Pcf { pre, per, d: p.d }
}
