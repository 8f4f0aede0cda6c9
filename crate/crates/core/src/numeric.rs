//! Certified fixed-point interval arithmetic.
//!
//! Used to print decimal approximations and as an independent oracle in
//! tests. Nothing in a decision path depends on it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::ring::{ExtElem, RingElem};

/// The closed interval [lo, hi] · 2^(−prec).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
    prec: u32,
}

fn shift_floor(n: &BigInt, s: u32) -> BigInt {
    n.div_floor(&(BigInt::one() << s))
}

fn shift_ceil(n: &BigInt, s: u32) -> BigInt {
    -((-n).div_floor(&(BigInt::one() << s)))
}

impl Interval {
    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        let scaled = q.numer() << prec;
        let lo = scaled.div_floor(q.denom());
        let hi = if (&lo * q.denom()) == scaled { lo.clone() } else { &lo + 1 };
        Interval { lo, hi, prec }
    }

    pub fn from_int(n: i64, prec: u32) -> Self {
        Self::from_rational(&BigRational::from_integer(n.into()), prec)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn lo(&self) -> BigRational {
        BigRational::new(self.lo.clone(), BigInt::one() << self.prec)
    }

    pub fn hi(&self) -> BigRational {
        BigRational::new(self.hi.clone(), BigInt::one() << self.prec)
    }

    pub fn width(&self) -> BigRational {
        BigRational::new(&self.hi - &self.lo, BigInt::one() << self.prec)
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Sign if it is certain.
    pub fn sign(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.prec, o.prec);
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi, prec: self.prec }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Interval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo, prec: self.prec }
    }

    pub fn neg(&self) -> Self {
        Interval { lo: -&self.hi, hi: -&self.lo, prec: self.prec }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let mn = c.iter().min().expect("nonempty");
        let mx = c.iter().max().expect("nonempty");
        Interval { lo: shift_floor(mn, self.prec), hi: shift_ceil(mx, self.prec), prec: self.prec }
    }

    /// None when the divisor interval straddles zero.
    pub fn div(&self, o: &Self) -> Option<Self> {
        if o.contains_zero() {
            return None;
        }
        let p = self.prec;
        let num = [&self.lo << p, &self.hi << p];
        let den = [&o.lo, &o.hi];
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        for n in &num {
            for d in den {
                let (f, c) = floor_ceil_div(n, d);
                lo = Some(lo.map_or(f.clone(), |x: BigInt| x.min(f)));
                hi = Some(hi.map_or(c.clone(), |x: BigInt| x.max(c)));
            }
        }
        Some(Interval { lo: lo.expect("set"), hi: hi.expect("set"), prec: p })
    }

    /// Square root of a non-negative interval (lower end clamped at 0).
    pub fn sqrt(&self) -> Option<Self> {
        if self.hi.is_negative() {
            return None;
        }
        let lo = if self.lo.is_negative() { BigInt::zero() } else { (&self.lo << self.prec).sqrt() };
        let hi = (&self.hi << self.prec).sqrt() + 1;
        Some(Interval { lo, hi, prec: self.prec })
    }

    pub fn abs(&self) -> Self {
        if self.lo.is_negative() && self.hi.is_positive() {
            Interval { lo: BigInt::zero(), hi: self.hi.clone().max(-&self.lo), prec: self.prec }
        } else if self.hi.is_negative() || (self.hi.is_zero() && self.lo.is_negative()) {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn max_abs_upper(&self) -> BigRational {
        BigRational::new(self.hi.abs().max(self.lo.abs()), BigInt::one() << self.prec)
    }

    pub fn from_ring(e: &RingElem, prec: u32) -> Self {
        let a = Self::from_rational(e.a(), prec);
        if e.b().is_zero() {
            return a;
        }
        let rd = Self::from_int(e.d(), prec).sqrt().expect("d > 0");
        a.add(&Self::from_rational(e.b(), prec).mul(&rd))
    }

    /// None for non-real elements.
    pub fn from_ext(e: &ExtElem, prec: u32) -> Option<Self> {
        let x = Self::from_ring(e.x(), prec);
        if e.y().is_zero() {
            return Some(x);
        }
        let th = Self::from_ring(e.theta(), prec);
        let mut v = th.sqrt()?;
        if e.branch() < 0 {
            v = v.neg();
        }
        Some(x.add(&Self::from_ring(e.y(), prec).mul(&v)))
    }

    pub fn midpoint_f64(&self) -> f64 {
        let sum = &self.lo + &self.hi;
        let bits = sum.bits();
        let shift = bits.saturating_sub(60);
        let top = (&sum >> shift).to_f64().unwrap_or(f64::NAN);
        top * 2f64.powi(shift as i32 - self.prec as i32 - 1)
    }

    /// Truncated decimal expansion with `digits` fractional digits, if the
    /// interval pins it (and the sign) down.
    pub fn decimal(&self, digits: usize) -> Option<String> {
        let scale = BigInt::from(10u32).pow(digits as u32);
        let one = BigInt::one() << self.prec;
        let tl = trunc_toward_zero(&self.lo * &scale, &one);
        let th = trunc_toward_zero(&self.hi * &scale, &one);
        if tl != th {
            return None;
        }
        let neg = self.sign()? < 0;
        Some(format_scaled(&tl.abs(), digits, neg))
    }
}

fn trunc_toward_zero(n: BigInt, d: &BigInt) -> BigInt {
    if n.is_negative() {
        -((-n).div_floor(d))
    } else {
        n.div_floor(d)
    }
}

fn format_scaled(n: &BigInt, digits: usize, neg: bool) -> String {
    let s = n.to_string();
    let body = if digits == 0 {
        s
    } else if s.len() <= digits {
        format!("0.{}{}", "0".repeat(digits - s.len()), s)
    } else {
        let (i, f) = s.split_at(s.len() - digits);
        format!("{i}.{f}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

fn floor_ceil_div(n: &BigInt, d: &BigInt) -> (BigInt, BigInt) {
    let f = n.div_floor(d);
    let c = if (&f * d) == *n { f.clone() } else { &f + 1 };
    (f, c)
}

fn bits_for_digits(digits: usize) -> u32 {
    (digits as f64 * 3.33) as u32 + 64
}

/// Decimal string for a real ring element, truncated to `digits` places.
pub fn decimal_ring(e: &RingElem, digits: usize) -> String {
    if e.b().is_zero() {
        return decimal_rational(e.a(), digits);
    }
    let mut prec = bits_for_digits(digits);
    loop {
        if let Some(s) = Interval::from_ring(e, prec).decimal(digits) {
            return s;
        }
        prec *= 2;
    }
}

/// Decimal string for a real extension element; None if not real.
pub fn decimal_ext(e: &ExtElem, digits: usize) -> Option<String> {
    if e.y().is_zero() {
        return Some(decimal_ring(e.x(), digits));
    }
    if !e.is_real() {
        return None;
    }
    let mut prec = bits_for_digits(digits);
    loop {
        let iv = Interval::from_ext(e, prec)?;
        if let Some(s) = iv.decimal(digits) {
            return Some(s);
        }
        prec *= 2;
    }
}

/// Exact truncated decimal of a rational.
pub fn decimal_rational(q: &BigRational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let n = q.numer() * &scale;
    let t = trunc_toward_zero(n, q.denom());
    let neg = q.is_negative();
    format_scaled(&t.abs(), digits, neg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two_digits() {
        let w = RingElem::w();
        assert_eq!(decimal_ring(&w, 10), "1.4142135623");
        assert_eq!(decimal_ring(&(-&w), 3), "-1.414");
        assert_eq!(decimal_rational(&BigRational::new((-1).into(), 3.into()), 4), "-0.3333");
        assert_eq!(decimal_ring(&RingElem::zw(1, -1), 4), "-0.4142");
    }
}
