//! Exact arithmetic in Q and Q(√d), relative quadratic extensions over them,
//! and 2-adic valuations in the two totally ramified quartic fields we need.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("field mismatch: Q(sqrt {0}) vs Q(sqrt {1})")]
    FieldMismatch(i64, i64),
    #[error("invalid field parameter d={0}: must be 1 or a squarefree integer >= 2")]
    InvalidD(i64),
    #[error("element with nonzero w-part over Q")]
    IrrationalOverQ,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a unit")]
    NotAUnit(String),
    #[error("{0} is not integral")]
    NotIntegral(String),
    #[error("modulus must be positive, got {0}")]
    BadModulus(i64),
    #[error("extension generator mismatch: {0} vs {1}")]
    ThetaMismatch(String, String),
    #[error("theta = {0} is a square in the base ring")]
    SquareTheta(String),
    #[error("value is not real: theta = {0} is negative")]
    NotReal(String),
    #[error("2 is not known to be totally ramified in the extension by sqrt({0})")]
    NotTotallyRamified(String),
    #[error("parse error in {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

pub type Result<T, E = RingError> = std::result::Result<T, E>;

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, m: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(m))
}

fn is_squarefree(d: i64) -> bool {
    let mut n = d;
    let mut p = 2i64;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        if n % p == 0 {
            n /= p;
        }
        p += 1;
    }
    true
}

/// Validate a field tag: 1 means Q, otherwise a squarefree integer >= 2.
pub fn check_d(d: i64) -> Result<()> {
    if d == 1 || (d >= 2 && is_squarefree(d)) {
        Ok(())
    } else {
        Err(RingError::InvalidD(d))
    }
}

/// Integer square root if `n` is a perfect square.
pub fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

/// Rational square root if `q` is the square of a rational.
pub fn rat_sqrt_exact(q: &BigRational) -> Option<BigRational> {
    let n = int_sqrt_exact(q.numer())?;
    let m = int_sqrt_exact(q.denom())?;
    Some(BigRational::new(n, m))
}

/// a + b·√d with rational a, b. `d == 1` tags plain rationals (then b == 0).
///
/// Rationals (d == 1) combine with any field; two different non-trivial
/// fields never mix. Operator impls panic on such a mismatch; the `try_*`
/// methods return the error instead.
#[derive(Clone, Debug)]
pub struct RingElem {
    a: BigRational,
    b: BigRational,
    d: i64,
}

impl RingElem {
    pub fn new(a: BigRational, b: BigRational, d: i64) -> Result<Self> {
        check_d(d)?;
        if d == 1 && !b.is_zero() {
            return Err(RingError::IrrationalOverQ);
        }
        Ok(RingElem { a, b, d })
    }

    pub fn rational(a: BigRational) -> Self {
        RingElem { a, b: BigRational::zero(), d: 1 }
    }

    pub fn int(n: i64) -> Self {
        Self::rational(rat(n))
    }

    pub fn frac(n: i64, m: i64) -> Self {
        Self::rational(ratio(n, m))
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    /// a + b·w in Z[√2].
    pub fn zw(a: i64, b: i64) -> Self {
        RingElem { a: rat(a), b: rat(b), d: 2 }
    }

    /// √d itself (for d = 1 this is 1).
    pub fn sqrt_d(d: i64) -> Result<Self> {
        check_d(d)?;
        if d == 1 {
            return Ok(Self::one());
        }
        Ok(RingElem { a: rat(0), b: rat(1), d })
    }

    /// w = √2.
    pub fn w() -> Self {
        Self::zw(0, 1)
    }

    /// u = 1 + √2, the fundamental unit of Z[√2].
    pub fn u() -> Self {
        Self::zw(1, 1)
    }

    /// The same value, tagged with field `d` (only widening from Q is allowed).
    pub fn in_field(&self, d: i64) -> Result<Self> {
        check_d(d)?;
        if self.d == d || self.b.is_zero() {
            Ok(RingElem { a: self.a.clone(), b: self.b.clone(), d: if self.b.is_zero() { d } else { self.d } })
        } else {
            Err(RingError::FieldMismatch(self.d, d))
        }
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }

    fn join(&self, other: &Self) -> Result<i64> {
        if self.d == other.d || other.d == 1 {
            Ok(self.d)
        } else if self.d == 1 {
            Ok(other.d)
        } else {
            Err(RingError::FieldMismatch(self.d, other.d))
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        let d = self.join(o)?;
        Ok(RingElem { a: &self.a + &o.a, b: &self.b + &o.b, d })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        let d = self.join(o)?;
        Ok(RingElem { a: &self.a - &o.a, b: &self.b - &o.b, d })
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        let d = self.join(o)?;
        let dd = rat(d);
        let a = &self.a * &o.a + &self.b * &o.b * dd;
        let b = &self.a * &o.b + &self.b * &o.a;
        Ok(RingElem { a, b, d })
    }

    pub fn try_div(&self, o: &Self) -> Result<Self> {
        self.try_mul(&o.inv()?)
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        Ok(RingElem { a: &self.a / &n, b: -&self.b / &n, d: self.d })
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one().in_field(self.d)?;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Field norm a² − d·b².
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * rat(self.d)
    }

    /// Galois conjugate √d ↦ −√d.
    pub fn conj(&self) -> Self {
        RingElem { a: self.a.clone(), b: -&self.b, d: self.d }
    }

    /// Trace a + σ(a) = 2a.
    pub fn trace(&self) -> BigRational {
        &self.a + &self.a
    }

    /// Exact sign under the real embedding √d > 0.
    pub fn sign(&self) -> i8 {
        let sa = sgn(&self.a);
        let sb = sgn(&self.b);
        if sb == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        if sa == 0 {
            return sb;
        }
        // opposite signs: whichever of a² and d·b² is larger wins
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * rat(self.d);
        if lhs > rhs {
            sa
        } else {
            sb
        }
    }

    pub fn cmp_real(&self, other: &Self) -> Ordering {
        match (self - other).sign() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    pub fn abs_real(&self) -> Self {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Square root inside the same field, canonically the non-negative one.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        if self.d == 1 {
            return rat_sqrt_exact(&self.a).map(Self::rational);
        }
        // r = x + y√d with r² = e: x² + d·y² = a, 2xy = b, and N(r)² = N(e).
        let n = rat_sqrt_exact(&self.norm())?;
        let two = rat(2);
        let dd = rat(self.d);
        for nn in [n.clone(), -n] {
            let x2 = (&self.a + &nn) / &two;
            let y2 = (&self.a - &nn) / (&two * &dd);
            let (Some(x), Some(y)) = (rat_sqrt_exact(&x2), rat_sqrt_exact(&y2)) else {
                continue;
            };
            for y in [y.clone(), -y] {
                let r = RingElem { a: x.clone(), b: y, d: self.d };
                if r.square() == *self {
                    return Some(if r.sign() < 0 { -r } else { r });
                }
            }
        }
        None
    }

    /// Coordinates reduced modulo m, each in [0, m).
    pub fn residue_class(&self, m: i64) -> Result<(i64, i64)> {
        if m <= 0 {
            return Err(RingError::BadModulus(m));
        }
        if !self.is_integral() {
            return Err(RingError::NotIntegral(self.to_string()));
        }
        let mm = BigInt::from(m);
        let ra = self.a.to_integer().mod_floor(&mm).to_i64().expect("small residue");
        let rb = self.b.to_integer().mod_floor(&mm).to_i64().expect("small residue");
        Ok((ra, rb))
    }

    /// Ordering used for deterministic output: a-coefficient, then b-coefficient.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        self.a.cmp(&other.a).then_with(|| self.b.cmp(&other.b)).then_with(|| {
            if self.b.is_zero() {
                Ordering::Equal
            } else {
                self.d.cmp(&other.d)
            }
        })
    }

    /// Parse the element grammar; `w` stands for √d.
    pub fn parse(s: &str, d: i64) -> Result<Self> {
        check_d(d)?;
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |reason: &str| RingError::Parse { input: s.to_string(), reason: reason.to_string() };
        if compact.is_empty() {
            return Err(err("empty element"));
        }
        let mut p = ElemParser { s: compact.as_bytes(), pos: 0 };
        let (a, b) = p.elem().map_err(|r| err(&r))?;
        if p.pos != p.s.len() {
            return Err(err("trailing characters"));
        }
        if d == 1 && !b.is_zero() {
            return Err(err("w is not available over Q"));
        }
        Ok(RingElem { a, b, d })
    }
}

struct ElemParser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl ElemParser<'_> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).ok()?;
        txt.parse().ok()
    }

    fn unsigned_rat(&mut self) -> Result<Option<BigRational>, String> {
        let Some(n) = self.digits() else { return Ok(None) };
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let m = self.digits().ok_or("expected denominator")?;
            if m.is_zero() {
                return Err("zero denominator".into());
            }
            return Ok(Some(BigRational::new(n, m)));
        }
        Ok(Some(BigRational::from_integer(n)))
    }

    fn neg(&mut self) -> bool {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    /// rat_w := ['-'] [rat '*'] 'w'
    fn rat_w(&mut self) -> Result<BigRational, String> {
        let neg = self.neg();
        let coeff = match self.unsigned_rat()? {
            Some(c) => {
                if self.peek() != Some(b'*') {
                    return Err("expected '*w'".into());
                }
                self.pos += 1;
                c
            }
            None => BigRational::one(),
        };
        if self.peek() != Some(b'w') {
            return Err("expected 'w'".into());
        }
        self.pos += 1;
        Ok(if neg { -coeff } else { coeff })
    }

    fn elem(&mut self) -> Result<(BigRational, BigRational), String> {
        let start = self.pos;
        let neg = self.neg();
        match self.unsigned_rat()? {
            None => {
                self.pos = start;
                let b = self.rat_w()?;
                Ok((BigRational::zero(), b))
            }
            Some(r) => {
                let a = if neg { -r } else { r };
                match self.peek() {
                    None => Ok((a, BigRational::zero())),
                    Some(b'*') => {
                        self.pos = start;
                        let b = self.rat_w()?;
                        Ok((BigRational::zero(), b))
                    }
                    Some(c @ (b'+' | b'-')) => {
                        self.pos += 1;
                        let b = self.rat_w()?;
                        Ok((a, if c == b'-' { -b } else { b }))
                    }
                    Some(_) => Err("unexpected character".into()),
                }
            }
        }
    }
}

fn sgn(q: &BigRational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

fn fmt_rat(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wpart = |b: &BigRational| {
            if b.is_one() {
                "w".to_string()
            } else {
                format!("{}*w", fmt_rat(b))
            }
        };
        if self.b.is_zero() {
            return write!(f, "{}", fmt_rat(&self.a));
        }
        if self.a.is_zero() {
            return if self.b.is_negative() { write!(f, "-{}", wpart(&-&self.b)) } else { write!(f, "{}", wpart(&self.b)) };
        }
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}", fmt_rat(&self.a), sign, wpart(&self.b.abs()))
    }
}

impl PartialEq for RingElem {
    fn eq(&self, o: &Self) -> bool {
        self.a == o.a && self.b == o.b && (self.b.is_zero() || self.d == o.d)
    }
}

impl Eq for RingElem {}

impl Hash for RingElem {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.a.hash(h);
        self.b.hash(h);
        if !self.b.is_zero() {
            self.d.hash(h);
        }
    }
}

impl PartialOrd for RingElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on coordinates (not the real order; see `cmp_real`).
impl Ord for RingElem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lex_cmp(other)
    }
}

impl From<i64> for RingElem {
    fn from(n: i64) -> Self {
        RingElem::int(n)
    }
}

impl From<BigRational> for RingElem {
    fn from(q: BigRational) -> Self {
        RingElem::rational(q)
    }
}

macro_rules! ring_binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&RingElem> for &RingElem {
            type Output = RingElem;
            fn $m(self, o: &RingElem) -> RingElem {
                self.$try(o).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<RingElem> for RingElem {
            type Output = RingElem;
            fn $m(self, o: RingElem) -> RingElem {
                (&self).$m(&o)
            }
        }
        impl $tr<&RingElem> for RingElem {
            type Output = RingElem;
            fn $m(self, o: &RingElem) -> RingElem {
                (&self).$m(o)
            }
        }
        impl $tr<RingElem> for &RingElem {
            type Output = RingElem;
            fn $m(self, o: RingElem) -> RingElem {
                self.$m(&o)
            }
        }
    };
}

ring_binop!(Add, add, try_add);
ring_binop!(Sub, sub, try_sub);
ring_binop!(Mul, mul, try_mul);
ring_binop!(Div, div, try_div);

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem { a: -&self.a, b: -&self.b, d: self.d }
    }
}

impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        -&self
    }
}

/// uᵏ for a unit u (norm ±1).
pub fn unit_power(u: &RingElem, k: i64) -> Result<RingElem> {
    let n = u.norm();
    if !u.is_integral() || !(n.is_one() || (-n).is_one()) {
        return Err(RingError::NotAUnit(u.to_string()));
    }
    u.pow(k)
}

/// All residues (a mod m, b mod m) of squares in Z[√d].
pub fn squares_mod(m: i64, d: i64) -> Result<Vec<(i64, i64)>> {
    check_d(d)?;
    let mut out = Vec::new();
    for a in 0..m {
        for b in 0..m {
            let e = RingElem::new(rat(a), rat(if d == 1 { 0 } else { b }), d)?;
            out.push(e.square().residue_class(m)?);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// A 2-adic valuation: a rational number or +∞.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(Ratio<i64>),
    Infinite,
}

impl Valuation {
    pub fn int(n: i64) -> Self {
        Valuation::Finite(Ratio::from_integer(n))
    }

    pub fn frac(n: i64, m: i64) -> Self {
        Valuation::Finite(Ratio::new(n, m))
    }
}

impl Ord for Valuation {
    fn cmp(&self, o: &Self) -> Ordering {
        match (self, o) {
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
            (Valuation::Infinite, _) => Ordering::Greater,
            (_, Valuation::Infinite) => Ordering::Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, o: Valuation) -> Valuation {
        match (self, o) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Infinite => write!(f, "inf"),
            Valuation::Finite(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Valuation::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

fn v2_int(n: &BigInt) -> i64 {
    n.trailing_zeros().expect("nonzero") as i64
}

/// Ordinary 2-adic valuation on Q.
pub fn val2_rational(q: &BigRational) -> Valuation {
    if q.is_zero() {
        return Valuation::Infinite;
    }
    Valuation::int(v2_int(q.numer()) - v2_int(q.denom()))
}

/// 2-adic valuation on Q(√2), normalized so val2(2) = 1; 2 = w² is ramified.
pub fn val2_k(e: &RingElem) -> Result<Valuation> {
    match e.d {
        1 => Ok(val2_rational(&e.a)),
        2 => Ok(match val2_rational(&e.norm()) {
            Valuation::Finite(v) => Valuation::Finite(v / 2),
            inf => inf,
        }),
        d => Err(RingError::NotTotallyRamified(format!("d={d}"))),
    }
}

/// x + y·v with v² = θ, x, y, θ in a common base field.
///
/// `branch` fixes which real square root v denotes when θ > 0: +1 means
/// v = +√θ under the embedding √d > 0. Arithmetic keeps the branch.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtElem {
    x: RingElem,
    y: RingElem,
    theta: RingElem,
    branch: i8,
}

impl ExtElem {
    /// Validated constructor: θ must not be a square in the base field.
    pub fn new(x: RingElem, y: RingElem, theta: RingElem) -> Result<Self> {
        if theta.sqrt().is_some() {
            return Err(RingError::SquareTheta(theta.to_string()));
        }
        x.join(&y)?;
        x.join(&theta)?;
        Ok(ExtElem { x, y, theta, branch: 1 })
    }

    pub fn with_branch(mut self, branch: i8) -> Self {
        self.branch = if branch < 0 { -1 } else { 1 };
        self
    }

    /// Embed a base element.
    pub fn from_base(x: RingElem, theta: &RingElem) -> Self {
        ExtElem { x, y: RingElem::zero(), theta: theta.clone(), branch: 1 }
    }

    /// The generator v itself.
    pub fn generator(theta: &RingElem) -> Result<Self> {
        Self::new(RingElem::zero(), RingElem::one(), theta.clone())
    }

    pub fn x(&self) -> &RingElem {
        &self.x
    }

    pub fn y(&self) -> &RingElem {
        &self.y
    }

    pub fn theta(&self) -> &RingElem {
        &self.theta
    }

    pub fn branch(&self) -> i8 {
        self.branch
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    fn compatible(&self, o: &Self) -> Result<()> {
        if self.theta != o.theta || self.branch != o.branch {
            return Err(RingError::ThetaMismatch(self.theta.to_string(), o.theta.to_string()));
        }
        Ok(())
    }

    fn make(&self, x: RingElem, y: RingElem) -> Self {
        ExtElem { x, y, theta: self.theta.clone(), branch: self.branch }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.compatible(o)?;
        Ok(self.make(self.x.try_add(&o.x)?, self.y.try_add(&o.y)?))
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.compatible(o)?;
        Ok(self.make(self.x.try_sub(&o.x)?, self.y.try_sub(&o.y)?))
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.compatible(o)?;
        let x = &self.x * &o.x + &self.theta * &self.y * &o.y;
        let y = &self.x * &o.y + &o.x * &self.y;
        Ok(self.make(x, y))
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        let ni = n.inv()?;
        Ok(self.make(&self.x * &ni, -(&self.y * &ni)))
    }

    pub fn try_div(&self, o: &Self) -> Result<Self> {
        self.try_mul(&o.inv()?)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.make(RingElem::one(), RingElem::zero());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &RingElem) -> Self {
        self.make(&self.x * c, &self.y * c)
    }

    pub fn add_base(&self, c: &RingElem) -> Self {
        self.make(&self.x + c, self.y.clone())
    }

    /// Relative norm x² − θy².
    pub fn norm(&self) -> RingElem {
        &self.x * &self.x - &self.theta * &self.y * &self.y
    }

    /// Absolute norm down to Q.
    pub fn abs_norm(&self) -> BigRational {
        self.norm().norm()
    }

    /// v ↦ −v.
    pub fn conj(&self) -> Self {
        self.make(self.x.clone(), -&self.y)
    }

    pub fn is_real(&self) -> bool {
        self.y.is_zero() || self.theta.sign() > 0
    }

    /// Exact sign of the real number x + y·v.
    pub fn sign(&self) -> Result<i8> {
        if self.y.is_zero() {
            return Ok(self.x.sign());
        }
        if self.theta.sign() < 0 {
            return Err(RingError::NotReal(self.theta.to_string()));
        }
        let sx = self.x.sign();
        let sy = self.y.sign() * self.branch;
        if sx == 0 || sx == sy {
            return Ok(if sx == 0 { sy } else { sx });
        }
        // x² − θy² > 0 means |x| dominates
        let diff = self.norm().sign();
        Ok(if diff > 0 { sx } else { sy })
    }

    /// 2-adic valuation, normalized so val2(2) = 1. Only for θ ∈ {1+√2, √2}.
    pub fn val2(&self) -> Result<Valuation> {
        if self.theta != RingElem::u() && self.theta != RingElem::w() {
            return Err(RingError::NotTotallyRamified(self.theta.to_string()));
        }
        Ok(match val2_rational(&self.abs_norm()) {
            Valuation::Finite(v) => Valuation::Finite(v / 4),
            inf => inf,
        })
    }
}

impl fmt::Display for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let root = if self.branch < 0 { "-v" } else { "v" };
        write!(f, "({}) + ({})*{} where v^2 = {}", self.x, self.y, root, self.theta)
    }
}

macro_rules! ext_binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&ExtElem> for &ExtElem {
            type Output = ExtElem;
            fn $m(self, o: &ExtElem) -> ExtElem {
                self.$try(o).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<ExtElem> for ExtElem {
            type Output = ExtElem;
            fn $m(self, o: ExtElem) -> ExtElem {
                (&self).$m(&o)
            }
        }
    };
}

ext_binop!(Add, add, try_add);
ext_binop!(Sub, sub, try_sub);
ext_binop!(Mul, mul, try_mul);
ext_binop!(Div, div, try_div);

impl Neg for &ExtElem {
    type Output = ExtElem;
    fn neg(self) -> ExtElem {
        self.make(-&self.x, -&self.y)
    }
}

impl Neg for ExtElem {
    type Output = ExtElem;
    fn neg(self) -> ExtElem {
        -&self
    }
}

/// Remove rational square factors from θ: returns (θ', s) with θ = s²·θ'.
///
/// θ' has integral coordinates with content free of squares of primes below
/// a fixed trial bound (and of a square cofactor). Used only to keep
/// printed radicands small.
pub fn reduce_radicand(theta: &RingElem) -> (RingElem, BigRational) {
    if theta.is_zero() {
        return (theta.clone(), BigRational::one());
    }
    // θ = N / q with q = lcm of denominators; θ = (N·q) / q²
    let q = theta.a.denom().lcm(theta.b.denom());
    let qq = BigRational::from_integer(q.clone());
    let na = (&theta.a * &qq * &qq).to_integer();
    let nb = (&theta.b * &qq * &qq).to_integer();
    let mut g = na.gcd(&nb);
    let mut s = BigInt::one();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(20_000);
    while p <= limit && &p * &p <= g {
        let pp = &p * &p;
        while (&g % &pp).is_zero() {
            g /= &pp;
            s *= &p;
        }
        p += 1;
    }
    if g > BigInt::one() {
        if let Some(r) = int_sqrt_exact(&g) {
            s *= &r;
        }
    }
    let s2 = BigRational::from_integer(&s * &s);
    let reduced = RingElem {
        a: BigRational::from_integer(na) / &s2,
        b: BigRational::from_integer(nb) / &s2,
        d: theta.d,
    };
    (reduced, BigRational::new(s, q))
}

/// Sign of a BigInt as i8.
pub fn int_sign(n: &BigInt) -> i8 {
    match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}
