//! 2-adic machinery in the quartic fields L₁ = K(√(1+√2)) and
//! L₂ = K(√√2), K = Q(√2): the unit u₁, the sequences rₙ, sₙ, tₙ,
//! the v-coefficients z(j), and finite-range checks of the valuation
//! identities that bound the solutions with ‖b‖ = ±1.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::Ratio;
use thiserror::Error;

use crate::ring::{val2_k, ExtElem, RingElem, RingError, Valuation};
use crate::search::{solve_e_curve, SearchError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkolemError {
    #[error("constant self-check failed: {0}")]
    SelfCheck(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Search(#[from] SearchError),
}

type Result<T> = std::result::Result<T, SkolemError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SkolemField {
    /// v² = 1 + √2
    L1,
    /// v² = √2
    L2,
}

/// Field constants, verified when constructed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkolemContext {
    pub field: SkolemField,
    /// u₁ or u₂: a generator of the relative norm-one units used.
    pub unit: ExtElem,
    /// α₁ = u + v, or α₂′ = u(w − v).
    pub alpha: ExtElem,
}

fn check(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(SkolemError::SelfCheck(what.into()))
    }
}

impl SkolemContext {
    pub fn l1() -> Result<Self> {
        let (w, u) = (RingElem::w(), RingElem::u());
        let th = u.clone();
        let unit = ExtElem::new(-&u, w.clone(), th.clone())?;
        let alpha = ExtElem::new(u.clone(), RingElem::one(), th.clone())?;
        let v = ExtElem::generator(&th)?;
        let one = ExtElem::from_base(RingElem::one(), &th);
        check(unit.norm().is_one(), "N(u1) = 1")?;
        check(alpha.norm() == &u * &w, "N(alpha1) = wu")?;
        check(ExtElem::from_base(u.clone(), &th) - v.clone() == -(&alpha * &unit), "u - v = -alpha1 u1")?;
        check((&one - &unit).norm() == RingElem::zw(4, 2), "N(1 - u1) = 4 + 2w")?;
        check((&one - &unit).abs_norm() == Ratio::from_integer(BigInt::from(8)), "N(1 - u1) over Q = 8")?;
        check((&one + &v).val2()? == Valuation::frac(1, 4), "val2(1 + v) = 1/4")?;
        Ok(SkolemContext { field: SkolemField::L1, unit, alpha })
    }

    pub fn l2() -> Result<Self> {
        let (w, u) = (RingElem::w(), RingElem::u());
        let th = w.clone();
        let unit = ExtElem::new(RingElem::zw(3, 2), RingElem::zw(2, 2), th.clone())?;
        let alpha = ExtElem::new(&u * &w, -&u, th.clone())?;
        let v = ExtElem::generator(&th)?;
        let one = ExtElem::from_base(RingElem::one(), &th);
        check(unit.norm().is_one(), "N(u2) = 1")?;
        check(unit == -((&one + &v) / (&one - &v)), "u2 = -(1 + v)/(1 - v)")?;
        // 1 + v is a unit here; v itself is the uniformizer
        check(v.val2()? == Valuation::frac(1, 4), "val2(v) = 1/4")?;
        Ok(SkolemContext { field: SkolemField::L2, unit, alpha })
    }

    /// α·unitᵏ
    pub fn orbit(&self, k: i64) -> Result<ExtElem> {
        Ok(&self.alpha * &self.unit.pow(k)?)
    }

    /// v-coefficient of α·unitᵏ.
    pub fn v_coeff(&self, k: i64) -> Result<RingElem> {
        Ok(self.orbit(k)?.y().clone())
    }
}

fn k_norm(e: &RingElem) -> BigInt {
    e.norm().to_integer()
}

/// (rₙ, sₙ, tₙ) with (1 − u₁²)ⁿ = rₙ + v sₙ and tₙ = rₙ + u sₙ.
pub fn rst(n: u32) -> Result<(RingElem, RingElem, RingElem)> {
    let ctx = SkolemContext::l1()?;
    let base = ExtElem::from_base(RingElem::one(), ctx.unit.theta()) - &ctx.unit * &ctx.unit;
    let p = base.pow(n as i64)?;
    let (r, s) = (p.x().clone(), p.y().clone());
    let t = &r + &(RingElem::u() * &s);
    Ok((r, s, t))
}

/// z(j): the v-coefficient of α₁u₁^{2j}.
pub fn z_of_j(j: i64) -> Result<RingElem> {
    SkolemContext::l1()?.v_coeff(2 * j)
}

/// N_{K/Q}(z(j)).
pub fn nz(j: i64) -> Result<BigInt> {
    Ok(k_norm(&z_of_j(j)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AprimeRow {
    /// The pair {k, 1 − k}.
    pub ks: (i64, i64),
    /// a′ up to sign (the base coefficient of α₁u₁ᵏ).
    pub aprime: RingElem,
    pub z: RingElem,
    pub nz: BigInt,
}

/// Rows for k ∈ ks, each paired with 1 − k.
pub fn aprime_z_table(ks: &[i64]) -> Result<Vec<AprimeRow>> {
    let ctx = SkolemContext::l1()?;
    ks.iter()
        .map(|&k| {
            let e = ctx.orbit(k)?;
            let z = e.y().clone();
            let nz = k_norm(&z);
            let a = e.x().clone();
            let aprime = if a.sign() < 0 { -a } else { a };
            Ok(AprimeRow { ks: (k, 1 - k), aprime, z, nz })
        })
        .collect()
}

/// The five smallest pairs.
pub const APRIME_KS: [i64; 5] = [0, 2, -2, 4, -4];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AddaxRow {
    pub n: u32,
    pub val_r: Valuation,
    pub val_s: Valuation,
    pub val_t: Valuation,
}

impl AddaxRow {
    pub fn bound(&self) -> Valuation {
        Valuation::frac(3 * self.n as i64, 2)
    }

    pub fn holds(&self) -> bool {
        self.val_r >= self.bound() && self.val_s >= self.bound() && self.val_t == self.bound()
    }
}

/// val₂ of rₙ, sₙ, tₙ for n ≤ nmax against the bound 3n/2.
pub fn addax_check(nmax: u32) -> Result<Vec<AddaxRow>> {
    (0..=nmax)
        .map(|n| {
            let (r, s, t) = rst(n)?;
            Ok(AddaxRow { n, val_r: val2_k(&r)?, val_s: val2_k(&s)?, val_t: val2_k(&t)? })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OryxReport {
    pub jmax: i64,
    pub pairs_checked: usize,
    /// (j, j′, observed, expected)
    pub violations: Vec<(i64, i64, i64, i64)>,
    /// j with N(z(j)) = ±1
    pub unit_norm_js: Vec<i64>,
}

impl OryxReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

fn v2(n: &BigInt) -> i64 {
    n.trailing_zeros().map(|t| t as i64).unwrap_or(i64::MAX)
}

/// val₂(N z(j′) − N z(j)) = val₂(j′ − j) + 4 for j ≡ j′ (mod 2), j ≠ j′.
pub fn oryx_check(jmax: i64) -> Result<OryxReport> {
    let ctx = SkolemContext::l1()?;
    let js: Vec<i64> = (-jmax..=jmax).collect();
    let norms: Vec<BigInt> = js.iter().map(|&j| ctx.v_coeff(2 * j).map(|z| k_norm(&z))).collect::<std::result::Result<_, _>>()?;
    let mut pairs = 0;
    let mut violations = Vec::new();
    for (i, &j) in js.iter().enumerate() {
        for (i2, &j2) in js.iter().enumerate().skip(i + 1) {
            if (j2 - j) % 2 != 0 {
                continue;
            }
            pairs += 1;
            let observed = v2(&(&norms[i2] - &norms[i]));
            let expected = v2(&BigInt::from(j2 - j)) + 4;
            if observed != expected {
                violations.push((j, j2, observed, expected));
            }
        }
    }
    let one = BigInt::from(1);
    let unit_norm_js = js.iter().zip(&norms).filter(|(_, n)| **n == one || **n == -one.clone()).map(|(&j, _)| j).collect();
    Ok(OryxReport { jmax, pairs_checked: pairs, violations, unit_norm_js })
}

/// k with |k| ≤ kmax whose v-coefficient in L₁ has norm ±1.
pub fn l1_unit_norm_ks(kmax: i64) -> Result<Vec<i64>> {
    unit_norm_ks(&SkolemContext::l1()?, kmax)
}

/// k with |k| ≤ kmax where α₂′u₂ᵏ has a v-coefficient of norm ±1.
pub fn l2_scan(kmax: i64) -> Result<Vec<i64>> {
    unit_norm_ks(&SkolemContext::l2()?, kmax)
}

fn unit_norm_ks(ctx: &SkolemContext, kmax: i64) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    for k in -kmax..=kmax {
        let n = k_norm(&ctx.v_coeff(k)?);
        if n == BigInt::from(1) || n == BigInt::from(-1) {
            out.push(k);
        }
    }
    Ok(out)
}

/// The b with ‖b‖ = −1 predicted by the unit-norm z's: {−u z², u σ(z)²}.
pub fn predicted_b_norm_minus_one(kmax: i64) -> Result<BTreeSet<RingElem>> {
    let ctx = SkolemContext::l1()?;
    let u = RingElem::u();
    let mut out = BTreeSet::new();
    for k in l1_unit_norm_ks(kmax)? {
        let z = ctx.v_coeff(k)?;
        out.insert(-(&u * &z.square()));
        out.insert(&u * &z.conj().square());
    }
    Ok(out)
}

/// The b with ‖b‖ = −1 among the E-curve solutions for π = 2 + w.
pub fn observed_b_norm_minus_one(kmax: u32) -> Result<BTreeSet<RingElem>> {
    let sol = solve_e_curve(&crate::variety::uw(), kmax, 2, true)?;
    let minus_one = Ratio::from_integer(BigInt::from(-1));
    Ok(sol.points.into_iter().map(|(_, b)| b).filter(|b| b.norm() == minus_one).collect())
}

fn pad(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r.iter().enumerate().map(|(i, s)| format!("{s:>w$}", w = widths[i])).collect();
        let _ = writeln!(out, "{}", line.join("  ").trim_end());
    }
    out
}

/// rₙ, sₙ, tₙ as rows over n = 0..=nmax.
pub fn format_rst_table(nmax: u32) -> Result<String> {
    let mut rows = vec![std::iter::once("n".to_string()).chain((0..=nmax).map(|n| n.to_string())).collect::<Vec<_>>()];
    let vals: Vec<_> = (0..=nmax).map(rst).collect::<Result<_>>()?;
    for (name, pick) in [("r_n", 0usize), ("s_n", 1), ("t_n", 2)] {
        let mut row = vec![name.to_string()];
        for v in &vals {
            row.push(match pick {
                0 => v.0.to_string(),
                1 => v.1.to_string(),
                _ => v.2.to_string(),
            });
        }
        rows.push(row);
    }
    Ok(pad(&rows))
}

pub fn format_aprime_table(rows: &[AprimeRow]) -> String {
    let mut t = vec![vec!["k".to_string()], vec!["a'".to_string()], vec!["z".to_string()], vec!["N(z)".to_string()]];
    for r in rows {
        t[0].push(format!("{},{}", r.ks.0, r.ks.1));
        t[1].push(format!("±({})", r.aprime));
        t[2].push(r.z.to_string());
        t[3].push(r.nz.to_string());
    }
    pad(&t)
}
