//! Certified-interval oracles for the exact decision procedures, shared by
//! the oracle tests and the acceptance suite.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use pcflab::continuant::{cf_matrix, Mat2, Projective};
use pcflab::converge::{classify_mobius, MobiusOutcome};
use pcflab::numeric::Interval;
use pcflab::pcf::{Pcf, Root};
use pcflab::ring::RingElem;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Working precision in bits. Parabolic powers cancel about i bits at the
/// i-th squaring, so those orbits are retried with room for 100·101/2 bits
/// plus the entry size at every step.
pub const PREC: u32 = 1400;
pub const PREC_PARABOLIC: u32 = 8192;

pub type Vec2 = (Interval, Interval);
pub type IMat = [Interval; 4];

pub fn iv(e: &RingElem) -> Interval {
    iv_at(e, PREC)
}

pub fn iv_at(e: &RingElem, p: u32) -> Interval {
    Interval::from_ring(e, p)
}

pub fn tiny() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10u32).pow(20))
}

pub fn pow2(s: i64, p: u32) -> Interval {
    let q = if s >= 0 { BigRational::from_integer(BigInt::one() << s) } else { BigRational::new(BigInt::one(), BigInt::one() << (-s)) };
    Interval::from_rational(&q, p)
}

/// ⌊log₂⌋ of a positive rational, roughly.
pub fn log2(q: &BigRational) -> i64 {
    q.numer().bits() as i64 - q.denom().bits() as i64
}

pub fn normalize_vec(v: Vec2) -> Vec2 {
    let m = v.0.max_abs_upper().max(v.1.max_abs_upper());
    if m.is_zero() {
        return v;
    }
    let s = pow2(-log2(&m), v.0.prec());
    (v.0.mul(&s), v.1.mul(&s))
}

pub fn normalize_mat(m: IMat) -> IMat {
    let top = m.iter().map(Interval::max_abs_upper).max().expect("four entries");
    let s = pow2(-log2(&top), m[0].prec());
    m.map(|x| x.mul(&s))
}

pub fn imat(a: &Mat2, p: u32) -> IMat {
    [iv_at(&a.e11, p), iv_at(&a.e12, p), iv_at(&a.e21, p), iv_at(&a.e22, p)]
}

pub fn imul(a: &IMat, b: &IMat) -> IMat {
    [
        a[0].mul(&b[0]).add(&a[1].mul(&b[2])),
        a[0].mul(&b[1]).add(&a[1].mul(&b[3])),
        a[2].mul(&b[0]).add(&a[3].mul(&b[2])),
        a[2].mul(&b[1]).add(&a[3].mul(&b[3])),
    ]
}

pub fn apply(m: &IMat, v: &Vec2) -> Vec2 {
    normalize_vec((m[0].mul(&v.0).add(&m[1].mul(&v.1)), m[2].mul(&v.0).add(&m[3].mul(&v.1))))
}

pub fn proj_at(z: &Projective, p: u32) -> Vec2 {
    match z {
        Projective::Finite(x) => (iv_at(x, p), Interval::from_int(1, p)),
        Projective::Infinity => (Interval::from_int(1, p), Interval::from_int(0, p)),
    }
}

pub fn root_vec(r: &Root, p: u32) -> Vec2 {
    match r {
        Root::Finite(x) => proj_at(&Projective::Finite(x.clone()), p),
        Root::Infinity => proj_at(&Projective::Infinity, p),
        Root::Ext(x) => (Interval::from_ext(x, p).expect("real root"), Interval::from_int(1, p)),
    }
}

/// Upper bound on the chordal distance; None if the interval blew up.
pub fn chordal(a: &Vec2, b: &Vec2) -> Option<BigRational> {
    let num = a.0.mul(&b.1).sub(&a.1.mul(&b.0)).abs();
    let na = a.0.mul(&a.0).add(&a.1.mul(&a.1));
    let nb = b.0.mul(&b.0).add(&b.1.mul(&b.1));
    let den = na.mul(&nb).sqrt()?;
    Some(num.div(&den)?.max_abs_upper())
}

pub fn chordal_f64(a: &Vec2, b: &Vec2) -> f64 {
    let num = a.0.mul(&b.1).sub(&a.1.mul(&b.0)).abs();
    let na = a.0.mul(&a.0).add(&a.1.mul(&a.1));
    let nb = b.0.mul(&b.0).add(&b.1.mul(&b.1));
    num.midpoint_f64() / (na.midpoint_f64() * nb.midpoint_f64()).sqrt()
}

#[derive(Debug)]
pub enum Numeric {
    Fixed,
    Converges(Vec2),
    Diverges,
}

/// Is every coordinate of a normalized vector pinned to 2⁻²⁰⁰?
pub fn sharp(v: &Vec2) -> bool {
    let eps = BigRational::new(BigInt::one(), BigInt::one() << 200);
    v.0.width() < eps && v.1.width() < eps
}

/// Orbit of z under A, decided by A^(2^100) and A^(2^99). None when the
/// intervals are too wide to decide.
pub fn mobius_at(a: &Mat2, z: &Projective, p: u32) -> Option<Numeric> {
    let a0 = normalize_mat(imat(a, p));
    let mut m = a0.clone();
    let mut prev = a0.clone();
    for _ in 0..100 {
        prev = m.clone();
        m = normalize_mat(imul(&m, &m));
    }
    let zv = normalize_vec(proj_at(z, p));
    let l = apply(&m, &zv);
    let l_prev = apply(&prev, &zv);
    if !sharp(&l) || !sharp(&l_prev) {
        return None;
    }
    let al = apply(&a0, &l);
    let (d1, d2) = (chordal(&al, &l)?, chordal(&l_prev, &l)?);
    if d1 < tiny() && d2 < tiny() {
        Some(Numeric::Converges(l))
    } else if chordal_f64(&al, &l) > 1e-6 || chordal_f64(&l_prev, &l) > 1e-6 {
        Some(Numeric::Diverges)
    } else {
        None
    }
}

pub fn mobius_oracle(a: &Mat2, z: &Projective) -> (Numeric, u32) {
    if a.apply(z).ok().as_ref() == Some(z) {
        return (Numeric::Fixed, PREC);
    }
    for p in [PREC, PREC_PARABOLIC] {
        if let Some(n) = mobius_at(a, z, p) {
            return (n, p);
        }
    }
    panic!("inconclusive numeric orbit for {a} at {z}")
}

pub fn small(rng: &mut ChaCha8Rng, r: i64) -> RingElem {
    RingElem::zw(rng.random_range(-r..=r), rng.random_range(-r..=r))
}

/// A product of one to three D(c), det ±1.
pub fn conjugator(rng: &mut ChaCha8Rng) -> Mat2 {
    let n = rng.random_range(1..=3);
    let mut m = Mat2::identity();
    for _ in 0..n {
        m = &m * &Mat2::d(&small(rng, 2));
    }
    m
}

pub fn random_case(rng: &mut ChaCha8Rng) -> (Mat2, Projective) {
    let p = conjugator(rng);
    let pinv = p.inverse().expect("det ±1");
    let conj = |core: Mat2| &(&p * &core) * &pinv;
    let u = RingElem::u();
    let sgn = |rng: &mut ChaCha8Rng| if rng.random_bool(0.5) { RingElem::one() } else { RingElem::int(-1) };
    let a = match rng.random_range(0..6) {
        0 => {
            let n = rng.random_range(1..=4);
            let mut m = Mat2::identity();
            for _ in 0..n {
                m = &m * &Mat2::d(&small(rng, 3));
            }
            m
        }
        1 => {
            let k = rng.random_range(1..=3);
            let l = u.pow(k).unwrap();
            let s = sgn(rng);
            conj(Mat2::new(&s * &l, 0.into(), 0.into(), &s * &l.inv().unwrap()))
        }
        2 => {
            let s = sgn(rng);
            let c = small(rng, 3);
            conj(Mat2::new(s.clone(), if c.is_zero() { RingElem::one() } else { c }, 0.into(), s))
        }
        3 => {
            let core = match rng.random_range(0..5) {
                0 => Mat2::from_ints([[0, -1], [1, 0]]),
                1 => Mat2::from_ints([[0, -1], [1, 1]]),
                2 => Mat2::from_ints([[1, -1], [1, 0]]),
                3 => Mat2::new(RingElem::w(), (-1).into(), 1.into(), 0.into()),
                _ => Mat2::from_ints([[0, 1], [1, 0]]),
            };
            conj(core)
        }
        4 => Mat2::identity().scale(&sgn(rng)),
        _ => {
            // det −1 with distinct real eigenvalues ±u^{±k}
            let k = rng.random_range(1..=2);
            let l = u.pow(k).unwrap();
            conj(Mat2::new(l.clone(), 0.into(), 0.into(), -l.inv().unwrap()))
        }
    };
    let z = match rng.random_range(0..5) {
        0 => p.apply(&Projective::Finite(0.into())).unwrap(),
        1 => p.apply(&Projective::Infinity).unwrap(),
        2 => Projective::Infinity,
        _ => Projective::Finite(&small(rng, 5) * &RingElem::frac(1, rng.random_range(1..=3))),
    };
    (a, z)
}

pub fn same(a: &Vec2, b: &Vec2) -> bool {
    chordal(a, b).is_some_and(|d| d < tiny())
}

pub fn random_pcf(rng: &mut ChaCha8Rng) -> Pcf {
    let entry = |rng: &mut ChaCha8Rng| {
        if rng.random_bool(0.15) {
            RingElem::frac(rng.random_range(-3..=3), 2)
        } else {
            small(rng, 3)
        }
    };
    let n = rng.random_range(0..=2);
    let k = rng.random_range(1..=3);
    let pre = (0..n).map(|_| entry(rng)).collect();
    let per = (0..k).map(|_| entry(rng)).collect();
    Pcf::new(pre, per, 2).unwrap()
}

pub const TERMS: usize = 400;

/// Homogeneous (pₙ, qₙ) for the last `tail` values of n ≤ TERMS.
pub fn convergents(x: &Pcf, tail: usize) -> Vec<Vec2> {
    let c = x.partial_quotients(TERMS);
    let mut m = Mat2::identity();
    let mut out = Vec::with_capacity(tail);
    for (i, ci) in c.iter().enumerate() {
        m = &m * &cf_matrix(std::slice::from_ref(ci));
        if i + tail >= TERMS {
            out.push(normalize_vec((iv(&m.e11), iv(&m.e21))));
        }
    }
    out
}


/// Compare classify_mobius with the interval oracle on one (A, z).
/// Returns the case name on agreement.
pub fn check_mobius(a: &Mat2, z: &Projective) -> Result<String, String> {
    let (kind, exact) = classify_mobius(a, z).map_err(|e| e.to_string())?;
    let (num, p) = mobius_oracle(a, z);
    let ok = match (&exact, &num) {
        (MobiusOutcome::Fixed(q), Numeric::Fixed) => q == z,
        (MobiusOutcome::ConvergesTo(r), Numeric::Fixed) => same(&root_vec(r, p), &proj_at(z, p)),
        (MobiusOutcome::ConvergesTo(r), Numeric::Converges(l)) => same(&root_vec(r, p), l),
        (MobiusOutcome::Diverges, Numeric::Diverges) => true,
        _ => false,
    };
    if ok {
        Ok(format!("{kind:?}"))
    } else {
        Err(format!("A = {a}, z = {z}: exact {exact:?} ({kind:?}), numeric {num:?}"))
    }
}

/// Run `n` seeded random cases; returns how often each case occurred.
pub fn mobius_suite(seed: u64, n: usize) -> Result<std::collections::BTreeMap<String, usize>, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = std::collections::BTreeMap::new();
    for case in 0..n {
        let (a, z) = random_case(&mut rng);
        let kind = check_mobius(&a, &z).map_err(|e| format!("case {case}: {e}"))?;
        *seen.entry(kind).or_insert(0) += 1;
    }
    Ok(seen)
}
