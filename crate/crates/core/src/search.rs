//! Enumeration engines: unit/divisor enumeration, congruence filters, the
//! Ljunggren oracle, box searches, and reproduction of the solution tables.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::converge::{verdict, ConvergeError};
use crate::pcf::{Pcf, PcfError};
use crate::ring::{int_sqrt_exact, squares_mod, unit_power, RingElem, RingError};
use crate::variety::{
    corr03_to_e, curve21_lift, curve21_quartic, format_point, is_member, param03, pcf_from_e_point, recover_x1_03,
    riot_residual, solve_small_type, uw, TargetRoots, VarietyError, VarietyPoint,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("unknown table {0:?}")]
    UnknownTable(String),
    #[error("unsupported target {0}: expected a unit times a power of w")]
    UnsupportedTarget(String),
    #[error("malformed fixture line {line:?}: {reason}")]
    Fixture { line: String, reason: String },
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Variety(#[from] VarietyError),
    #[error(transparent)]
    Pcf(#[from] PcfError),
    #[error(transparent)]
    Converge(#[from] ConvergeError),
}

type Result<T> = std::result::Result<T, SearchError>;

/// All (x, y) with x² + 1 = 2y⁴ and |y| ≤ bound.
pub fn ljunggren_oracle(bound: u64) -> Vec<(BigInt, BigInt)> {
    let mut out = Vec::new();
    for y in 1..=bound {
        let y = BigInt::from(y);
        let rhs: BigInt = BigInt::from(2) * y.pow(4) - 1;
        if let Some(x) = int_sqrt_exact(&rhs) {
            for sx in [x.clone(), -x.clone()] {
                for sy in [y.clone(), -y.clone()] {
                    out.push((sx.clone(), sy));
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// A candidate divisor with its norm tag ‖b‖.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub b: RingElem,
    pub norm: i64,
}

fn norm_i64(e: &RingElem) -> i64 {
    e.norm().to_integer().to_i64().expect("norm fits in i64")
}

/// ±uᵏ (and ±w·uᵏ when `target` is w) for |k| ≤ kmax.
pub fn unit_divisor_enum(target: &RingElem, kmax: u32) -> Result<Vec<Candidate>> {
    let w = RingElem::w();
    let with_w = if *target == w {
        true
    } else if target.is_integral() && norm_i64(target).abs() == 1 {
        false
    } else {
        return Err(SearchError::UnsupportedTarget(target.to_string()));
    };
    divisors_w_power(if with_w { 1 } else { 0 }, kmax)
}

/// ±uᵏ·wʲ for j ≤ e and |k| ≤ kmax.
fn divisors_w_power(e: u32, kmax: u32) -> Result<Vec<Candidate>> {
    let u = RingElem::u();
    let w = RingElem::w();
    let mut out = Vec::new();
    for j in 0..=e {
        let wj = w.pow(j as i64)?;
        for k in -(kmax as i64)..=kmax as i64 {
            let base = &wj * &unit_power(&u, k)?;
            for b in [base.clone(), -base] {
                let norm = norm_i64(&b);
                out.push(Candidate { b, norm });
            }
        }
    }
    Ok(out)
}

/// Integer divisors of n (both signs).
fn int_divisors(n: &BigInt) -> Vec<RingElem> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut i = BigInt::from(1);
    while &i * &i <= n {
        if (&n % &i).is_zero() {
            for dv in [i.clone(), &n / &i] {
                let e = RingElem::from(num_rational::BigRational::from_integer(dv));
                out.push(e.clone());
                out.push(-e);
            }
        }
        i += 1;
    }
    out.sort();
    out.dedup();
    out
}

/// How many candidates each stage discarded.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FilterStats {
    pub candidates: usize,
    pub rejected_norm_mod8: usize,
    pub rejected_not_integral: usize,
    pub rejected_mod4: usize,
    pub rejected_not_square: usize,
    pub accepted: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ECurveSolutions {
    pub points: Vec<(RingElem, RingElem)>,
    pub stats: FilterStats,
}

/// Integral points of (a²b + 1)b = π over Z (d = 1) or Z[√2] (d = 2).
///
/// Every b divides π, so b runs over divisors; then a² = (π − b)/b².
/// With `filtered`, two congruence tests run before the square root:
/// N(π − b) = N(ab)² must be a square mod 8, and a² must be a square mod 4.
pub fn solve_e_curve(pi: &RingElem, kmax: u32, d: i64, filtered: bool) -> Result<ECurveSolutions> {
    let candidates: Vec<RingElem> = if d == 1 {
        if !pi.is_rational() || !pi.is_integral() || pi.is_zero() {
            return Err(SearchError::UnsupportedTarget(pi.to_string()));
        }
        int_divisors(&pi.a().to_integer())
    } else if d == 2 {
        let n = norm_i64(pi);
        let e = if n == 0 { u32::MAX } else { n.unsigned_abs().trailing_zeros() };
        if e == u32::MAX || n.unsigned_abs() >> e != 1 {
            return Err(SearchError::UnsupportedTarget(pi.to_string()));
        }
        divisors_w_power(e, kmax)?.into_iter().map(|c| c.b).collect()
    } else {
        return Err(SearchError::UnsupportedTarget(format!("{pi} over d={d}")));
    };
    let squares4 = squares_mod(4, d)?;
    let mut stats = FilterStats { candidates: candidates.len(), ..Default::default() };
    let mut points = Vec::new();
    for b in candidates {
        let diff = pi - &b;
        if filtered && !matches!(norm_i64(&diff).rem_euclid(8), 0 | 1 | 4) {
            stats.rejected_norm_mod8 += 1;
            continue;
        }
        let q = &diff / &(&b * &b);
        if !q.is_integral() {
            stats.rejected_not_integral += 1;
            continue;
        }
        if filtered && !squares4.contains(&q.residue_class(4)?) {
            stats.rejected_mod4 += 1;
            continue;
        }
        let Some(s) = q.in_field(d)?.sqrt() else {
            stats.rejected_not_square += 1;
            continue;
        };
        stats.accepted += 1;
        for a in [s.clone(), -s] {
            let p = (a, b.clone());
            if !points.contains(&p) {
                points.push(p);
            }
        }
    }
    points.sort();
    Ok(ECurveSolutions { points, stats })
}

/// All integral vectors of length `dims` in field d whose coefficients lie
/// in [−bound, bound], filtered by `keep`.
pub fn box_search<F>(dims: usize, bound: i64, d: i64, mut keep: F) -> Vec<Vec<RingElem>>
where
    F: FnMut(&[RingElem]) -> bool,
{
    let mut values = Vec::new();
    for a in -bound..=bound {
        if d == 1 {
            values.push(RingElem::int(a));
        } else {
            for b in -bound..=bound {
                values.push(RingElem::new(crate::ring::rat(a), crate::ring::rat(b), d).expect("valid field"));
            }
        }
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; dims];
    loop {
        let p: Vec<RingElem> = idx.iter().map(|&i| values[i].clone()).collect();
        if keep(&p) {
            out.push(p);
        }
        let mut i = 0;
        loop {
            if i == dims {
                return out;
            }
            idx[i] += 1;
            if idx[i] < values.len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// Integral (0,3) points of V(t) with (x₂, x₃) in the box, x₁ recovered
/// from −A(x₁x₂ + 1) = C(x₂x₃ + 1).
pub fn search_03_box(t: &TargetRoots, bound: i64, d: i64) -> Vec<Vec<RingElem>> {
    let mut out = Vec::new();
    for p in box_search(2, bound, d, |p| riot_residual(t, &p[0], &p[1]).is_zero()) {
        let Ok(x1) = recover_x1_03(t, &p[0], &p[1]) else { continue };
        if !x1.is_integral() {
            continue;
        }
        let coords = vec![x1, p[0].clone(), p[1].clone()];
        if is_member(t, &VarietyPoint::new(coords.clone(), 0, 3).expect("arity 3")) {
            out.push(coords);
        }
    }
    out.sort();
    out
}

/// Integral points of V(2+w)_{0,3}: x₂ divides 1 + w so it is a unit ±uᵏ,
/// x₃ solves (x₂x₃ + 1)² = (x₂² + 1)/(2 + w), and x₁ comes from
/// x₁x₂ + 1 = (2 + w)(x₂x₃ + 1). `filtered` applies the norm test
/// N(x₂² + 1) = 2N(s)² ≡ 0, 2 (mod 8).
pub fn search_22_03(kmax: u32, filtered: bool) -> Result<(Vec<Vec<RingElem>>, FilterStats)> {
    let m = uw();
    let t = TargetRoots::sqrt_of(&m);
    let one = RingElem::one();
    let cands = divisors_w_power(0, kmax)?;
    let mut stats = FilterStats { candidates: cands.len(), ..Default::default() };
    let mut out = Vec::new();
    for Candidate { b, .. } in cands {
        let b2p1 = &b * &b + &one;
        if filtered && !matches!(norm_i64(&b2p1).rem_euclid(8), 0 | 2) {
            stats.rejected_norm_mod8 += 1;
            continue;
        }
        let q = &b2p1 / &m;
        if !q.is_integral() {
            stats.rejected_not_integral += 1;
            continue;
        }
        let Some(s) = q.sqrt() else {
            stats.rejected_not_square += 1;
            continue;
        };
        stats.accepted += 1;
        for sg in [s.clone(), -s] {
            let x3 = (&sg - &one) / &b;
            if !x3.is_integral() {
                continue;
            }
            let x1 = (&m * &(&b * &x3 + &one) - &one) / &b;
            let coords = vec![x1, b.clone(), x3];
            if is_member(&t, &VarietyPoint::new(coords.clone(), 0, 3)?) && !out.contains(&coords) {
                out.push(coords);
            }
        }
    }
    out.sort();
    Ok((out, stats))
}

/// Integral (2,1) points above y₁ in the box.
pub fn search_21_box(t: &TargetRoots, bound: i64, d: i64) -> Vec<Vec<RingElem>> {
    let mut out = Vec::new();
    for y in box_search(1, bound, d, |_| true) {
        for p in curve21_lift(t, &y[0]) {
            if p.iter().all(RingElem::is_integral) {
                out.push(p.to_vec());
            }
        }
    }
    out.sort();
    out
}

/// Integral y₁ (|y₁| ≤ bound) where the (2,1) quartic is a perfect square.
pub fn quartic_square_y1(t: &TargetRoots, bound: i64, d: i64) -> Vec<RingElem> {
    box_search(1, bound, d, |y| curve21_quartic(t, &y[0]).in_field(d).ok().and_then(|q| q.sqrt()).is_some_and(|z| z.is_integral()))
        .into_iter()
        .map(|mut v| v.remove(0))
        .collect()
}

/// The mod-4 obstruction for V(m)_{2,1} over Z[√2] with m = 2 + w: z = 2z′
/// and z′² = m − (y₁² − m)² must be a square mod 4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mod4Proof {
    pub squares: Vec<(i64, i64)>,
    pub residues: Vec<(i64, i64)>,
}

impl Mod4Proof {
    pub fn obstructs(&self) -> bool {
        self.residues.iter().all(|r| !self.squares.contains(r))
    }
}

pub fn mod4_proof_21(m: &RingElem) -> Result<Mod4Proof> {
    let squares = squares_mod(4, 2)?;
    let mut residues = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            let y = RingElem::zw(a, b);
            let q = &y * &y - m;
            let r = (m - &q * &q).residue_class(4)?;
            if !residues.contains(&r) {
                residues.push(r);
            }
        }
    }
    residues.sort();
    Ok(Mod4Proof { squares, residues })
}

/// Render a residue class (a, b) mod 4 as a small representative.
pub fn residue_repr(r: (i64, i64)) -> RingElem {
    let c = |x: i64| if x >= 3 { x - 4 } else { x };
    let (a, b) = r;
    // prefer the representative used in the text: w, −1−w, 3+2w
    if (a, b) == (3, 2) {
        return RingElem::zw(3, 2);
    }
    RingElem::zw(c(a), c(b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableName {
    Z03,
    Z22_03,
    Z21,
    Z22_21Empty,
    Z12,
    Z22_12,
    PcfRinds,
    PcfPot,
    SmallTypes,
}

impl TableName {
    pub const ALL: [TableName; 9] = [
        TableName::Z03,
        TableName::Z22_03,
        TableName::Z21,
        TableName::Z22_21Empty,
        TableName::Z12,
        TableName::Z22_12,
        TableName::PcfRinds,
        TableName::PcfPot,
        TableName::SmallTypes,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TableName::Z03 => "z_03",
            TableName::Z22_03 => "z22_03",
            TableName::Z21 => "z_21",
            TableName::Z22_21Empty => "z22_21_empty",
            TableName::Z12 => "z_12",
            TableName::Z22_12 => "z22_12",
            TableName::PcfRinds => "pcf_rinds",
            TableName::PcfPot => "pcf_pot",
            TableName::SmallTypes => "smalltypes",
        }
    }

    pub fn fixture(self) -> &'static str {
        match self {
            TableName::Z03 => include_str!("../fixtures/z_03.txt"),
            TableName::Z22_03 => include_str!("../fixtures/z22_03.txt"),
            TableName::Z21 => include_str!("../fixtures/z_21.txt"),
            TableName::Z22_21Empty => include_str!("../fixtures/z22_21_empty.txt"),
            TableName::Z12 => include_str!("../fixtures/z_12.txt"),
            TableName::Z22_12 => include_str!("../fixtures/z22_12.txt"),
            TableName::PcfRinds => include_str!("../fixtures/pcf_rinds.txt"),
            TableName::PcfPot => include_str!("../fixtures/pcf_pot.txt"),
            TableName::SmallTypes => include_str!("../fixtures/smalltypes.txt"),
        }
    }
}

impl std::str::FromStr for TableName {
    type Err = SearchError;
    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase();
        TableName::ALL
            .into_iter()
            .find(|t| t.as_str() == key)
            .ok_or_else(|| SearchError::UnknownTable(s.to_string()))
    }
}

impl fmt::Display for TableName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One row of a solution table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Entry {
    Point(Vec<RingElem>),
    Pcf(Pcf),
    /// A point tagged with its type and target (small-types table).
    Labeled(String, Vec<RingElem>),
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Point(c) => f.write_str(&format_point(c)),
            Entry::Pcf(p) => write!(f, "{p}"),
            Entry::Labeled(l, c) => write!(f, "{l}: {}", format_point(c)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub d: i64,
    pub entries: Vec<Entry>,
    /// Labels that occur in the fixture, including those expected empty.
    pub labels: Vec<String>,
}

fn small_label(ty: &str, target: &str) -> String {
    format!("V({target})_{{{ty}}}")
}

pub fn parse_fixture(text: &str) -> Result<Fixture> {
    let bad = |line: &str, reason: &str| SearchError::Fixture { line: line.into(), reason: reason.into() };
    let mut lines = text.lines();
    let header = lines.next().unwrap_or_default();
    let d = header
        .split(',')
        .find_map(|f| f.trim().trim_start_matches('#').trim().strip_prefix("d="))
        .and_then(|v| v.trim().parse::<i64>().ok())
        .ok_or_else(|| bad(header, "missing d= header"))?;
    let mut entries = Vec::new();
    let mut labels = Vec::new();
    for line in lines {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line.starts_with('[') {
            entries.push(Entry::Pcf(Pcf::parse(line, d)?));
        } else if line.starts_with('(') {
            entries.push(Entry::Point(crate::variety::parse_point(line, d)?));
        } else {
            let parts: Vec<&str> = line.split('|').map(str::trim).collect();
            let [ty, target, pt] = parts[..] else { return Err(bad(line, "expected 'type | target | point'")) };
            let target = format_point(&crate::variety::parse_point(target, d)?);
            let label = small_label(ty, target.trim_start_matches('(').trim_end_matches(')'));
            if !labels.contains(&label) {
                labels.push(label.clone());
            }
            if pt != "empty" {
                entries.push(Entry::Labeled(label, crate::variety::parse_point(pt, d)?));
            }
        }
    }
    Ok(Fixture { d, entries, labels })
}

/// Comparison of a recomputed table against its fixture.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableReport {
    pub name: TableName,
    pub expected: usize,
    pub found: Vec<Entry>,
    pub missing: Vec<Entry>,
    pub extra: Vec<Entry>,
    pub notes: Vec<String>,
}

impl TableReport {
    pub fn matches(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }

    pub fn matched(&self) -> usize {
        self.expected - self.missing.len()
    }
}

impl fmt::Display for TableReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "table {}: {}/{} matched, {} missing, {} extra", self.name, self.matched(), self.expected, self.missing.len(), self.extra.len())?;
        for e in &self.found {
            writeln!(f, "  {e}")?;
        }
        for e in &self.missing {
            writeln!(f, "  missing {e}")?;
        }
        for e in &self.extra {
            writeln!(f, "  extra {e}")?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        write!(f, "{}", if self.matches() { "MATCH" } else { "MISMATCH" })
    }
}

/// Defaults used when reproducing tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    pub kmax: u32,
    pub box_bound: i64,
    pub ljunggren: u64,
    /// Coefficient bound for searches over Z[√2].
    pub box22: i64,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds { kmax: 20, box_bound: 50, ljunggren: 1000, box22: 20 }
    }
}

fn positive_sqrt_pcfs(pcfs: Vec<Pcf>, m: &RingElem) -> Result<Vec<Pcf>> {
    let mut out = Vec::new();
    for p in pcfs {
        if verdict(&p)?.converges_to_positive_sqrt(m) {
            out.push(p);
        }
    }
    Ok(out)
}

pub fn reproduce_table(name: TableName) -> Result<TableReport> {
    reproduce_table_with(name, SearchBounds::default())
}

pub fn reproduce_table_with(name: TableName, bounds: SearchBounds) -> Result<TableReport> {
    let fixture = parse_fixture(name.fixture())?;
    let mut notes = Vec::new();
    let two = RingElem::int(2);
    let found: Vec<Entry> = match name {
        TableName::Z03 => {
            let t = TargetRoots::sqrt_of(&two);
            let pts = search_03_box(&t, bounds.box_bound, 1);
            // B² − 4AC = 8 = 2² + (−2)²
            let (r, s) = (RingElem::int(2), RingElem::int(-2));
            use crate::continuant::Projective::{Finite, Infinity};
            for tp in [Finite((-1).into()), Finite(0.into()), Finite(1.into()), Infinity] {
                if let Ok(p) = param03(&t, &r, &s, &tp) {
                    notes.push(format!("parametrization (R, S) = (2, -2) at t = {tp}: {}", format_point(&p)));
                }
            }
            pts.into_iter().map(Entry::Point).collect()
        }
        TableName::Z22_03 => {
            let (pts, stats) = search_22_03(bounds.kmax, true)?;
            notes.push(format!("unit candidates {}, rejected by norm mod 8: {}", stats.candidates, stats.rejected_norm_mod8));
            let ljung = ljunggren_oracle(bounds.ljunggren);
            for p in &pts {
                let b = &p[1];
                if norm_i64(b) == -1 {
                    let m = b.a().to_integer();
                    let y = int_sqrt_exact(&b.b().to_integer().abs());
                    let ok = y.is_some_and(|y| ljung.contains(&(m.clone(), y)));
                    if !ok {
                        notes.push(format!("a2 = {b} has no Ljunggren partner"));
                    }
                }
            }
            notes.push(format!("Ljunggren solutions up to {}: {}", bounds.ljunggren, ljung.len()));
            pts.into_iter().map(Entry::Point).collect()
        }
        TableName::Z21 => {
            let t = TargetRoots::sqrt_of(&two);
            let ys = quartic_square_y1(&t, bounds.box_bound, 1);
            notes.push(format!("y1 with square quartic: {}", format_point(&ys)));
            search_21_box(&t, bounds.box_bound, 1).into_iter().map(Entry::Point).collect()
        }
        TableName::Z22_21Empty => {
            let m = uw();
            let proof = mod4_proof_21(&m)?;
            let sq: Vec<String> = proof.squares.iter().map(|&r| residue_repr(r).to_string()).collect();
            let rs: Vec<String> = proof.residues.iter().map(|&r| residue_repr(r).to_string()).collect();
            notes.push(format!("squares mod 4: {{{}}}", sq.join(", ")));
            notes.push(format!("z'^2 residues mod 4: {{{}}}", rs.join(", ")));
            notes.push(format!("mod-4 obstruction: {}", if proof.obstructs() { "holds" } else { "fails" }));
            let pts = search_21_box(&TargetRoots::sqrt_of(&m), bounds.box22, 2);
            notes.push(format!("box search |coeff| <= {}: {} points", bounds.box22, pts.len()));
            pts.into_iter().map(Entry::Point).collect()
        }
        TableName::Z12 => {
            let sol = solve_e_curve(&two, bounds.kmax, 1, true)?;
            let pcfs = sol
                .points
                .iter()
                .filter(|(a, _)| !a.is_zero())
                .map(|(a, b)| pcf_from_e_point(a, b, 1))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            for p in positive_sqrt_pcfs(pcfs, &two)? {
                notes.push(format!("PCF of sqrt(2): {p}"));
            }
            sol.points.into_iter().map(|(a, b)| Entry::Point(vec![a, b])).collect()
        }
        TableName::Z22_12 => {
            let sol = solve_e_curve(&uw(), bounds.kmax, 2, true)?;
            let s = &sol.stats;
            notes.push(format!(
                "candidates {}, rejected: norm mod 8 {}, non-integral {}, mod 4 {}, non-square {}",
                s.candidates, s.rejected_norm_mod8, s.rejected_not_integral, s.rejected_mod4, s.rejected_not_square
            ));
            notes.push(format!("point count {} = 1 mod 4: {}", sol.points.len(), sol.points.len() % 4 == 1));
            sol.points.into_iter().map(|(a, b)| Entry::Point(vec![a, b])).collect()
        }
        TableName::PcfRinds => {
            let (pts, _) = search_22_03(bounds.kmax, true)?;
            let pcfs = pts.iter().map(|c| Pcf::new(vec![], c.clone(), 2)).collect::<std::result::Result<Vec<_>, _>>()?;
            positive_sqrt_pcfs(pcfs, &uw())?.into_iter().map(Entry::Pcf).collect()
        }
        TableName::PcfPot => {
            let sol = solve_e_curve(&uw(), bounds.kmax, 2, true)?;
            let pcfs = sol
                .points
                .iter()
                .filter(|(a, _)| !a.is_zero())
                .map(|(a, b)| pcf_from_e_point(a, b, 2))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            positive_sqrt_pcfs(pcfs, &uw())?.into_iter().map(Entry::Pcf).collect()
        }
        TableName::SmallTypes => {
            let mut out = Vec::new();
            for label in &fixture.labels {
                let (ty, target) = parse_small_label(label, fixture.d)?;
                let sol = solve_small_type(&target, ty.0, ty.1, fixture.d)?;
                if let Some(dg) = sol.degenerate {
                    notes.push(format!("{label}: degenerate component {dg:?}"));
                }
                for p in sol.points {
                    if let Some(c) = p.base_coords().filter(|c| c.iter().all(RingElem::is_integral)) {
                        out.push(Entry::Labeled(label.clone(), c));
                    }
                }
            }
            out
        }
    };
    Ok(compare(name, &fixture.entries, found, notes))
}

fn parse_small_label(label: &str, d: i64) -> Result<((usize, usize), TargetRoots)> {
    let bad = || SearchError::Fixture { line: label.into(), reason: "bad small-type label".into() };
    let inner = label.strip_prefix("V(").ok_or_else(bad)?;
    let (target, rest) = inner.split_once(")_{").ok_or_else(bad)?;
    let ty = rest.trim_end_matches('}');
    let (n, k) = ty.split_once(',').ok_or_else(bad)?;
    let ty = (n.trim().parse().map_err(|_| bad())?, k.trim().parse().map_err(|_| bad())?);
    let c = crate::variety::parse_point(target, d)?;
    let [a, b, cc] = <[RingElem; 3]>::try_from(c).map_err(|_| bad())?;
    Ok((ty, TargetRoots::new(a, b, cc)?))
}

fn compare(name: TableName, expected: &[Entry], found: Vec<Entry>, notes: Vec<String>) -> TableReport {
    let missing = expected.iter().filter(|e| !found.contains(e)).cloned().collect();
    let extra = found.iter().filter(|e| !expected.contains(e)).cloned().collect();
    TableReport { name, expected: expected.len(), found, missing, extra, notes }
}

/// The (0,3) point paired with a point (a, b) of the E-curve, when any.
pub fn e_point_of_03(z: &[RingElem]) -> Option<(RingElem, RingElem)> {
    let z: [RingElem; 3] = z.to_vec().try_into().ok()?;
    corr03_to_e(&z).ok()
}
