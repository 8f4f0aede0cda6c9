use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pcflab::converge::{rate, verdict, Verdict};
use pcflab::pcf::{dual, Pcf, PcfError, Root};
use pcflab::ring::{RingElem, RingError};
use pcflab::search::{self, Entry, TableName};
use pcflab::skolem;
use pcflab::variety::{self, TargetRoots, VarietyError, VarietyPoint};

mod error;

use error::CliError;

#[derive(Parser, Debug)]
#[command(name = "pcflab", version, about = "Exact periodic continued fractions over Q and Z[sqrt(d)]")]
struct Cli {
    /// Squarefree d of the base ring Z[sqrt(d)]; 1 means the rationals.
    #[arg(long, global = true, default_value_t = 2)]
    d: i64,
    /// Decimal digits shown for approximations.
    #[arg(long, global = true, env = "PCFLAB_PRECISION", default_value_t = 50)]
    precision: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    JsonLines,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide convergence of a PCF and print its value and rate.
    Eval { pcf: String },
    /// The dual PCF and its verdict.
    Dual { pcf: String },
    /// Membership in a PCF variety.
    Variety {
        #[command(subcommand)]
        cmd: VarietyCmd,
    },
    /// Fermat-Pell projection.
    Fp {
        #[command(subcommand)]
        cmd: FpCmd,
    },
    /// Searches and table reproduction.
    Search {
        #[command(subcommand)]
        cmd: SearchCmd,
    },
    /// Same as `search table`.
    Table { name: String },
    /// 2-adic reports.
    Skolem {
        #[command(subcommand)]
        cmd: SkolemCmd,
    },
}

#[derive(Args, Debug)]
struct PointArgs {
    /// PCF type as N,k.
    #[arg(long = "type")]
    ty: String,
    /// Target coefficients A,B,C of Ax^2 + Bx + C.
    #[arg(long)]
    target: String,
    /// Coordinates (b1, ..., bN, a1, ..., ak).
    #[arg(long)]
    point: String,
}

#[derive(Subcommand, Debug)]
enum VarietyCmd {
    /// Residuals of a point on V(target)_{N,k}.
    Check(PointArgs),
}

#[derive(Subcommand, Debug)]
enum FpCmd {
    /// Image of a variety point on the Fermat-Pell conic.
    Project(PointArgs),
}

#[derive(Subcommand, Debug)]
enum SearchCmd {
    /// Recompute a named table and compare it with its fixture.
    Table {
        /// z_03, z22_03, z_21, z22_21_empty, z_12, z22_12, pcf_rinds, pcf_pot or smalltypes.
        name: String,
    },
    /// Integer solutions of x^2 + 1 = 2y^4 with |y| up to a bound.
    Ljunggren {
        #[arg(long, default_value_t = 1000)]
        bound: u64,
    },
    /// Integral points (a, b) of b(a^2 b + 1) = pi.
    Ecurve {
        #[arg(long)]
        pi: String,
        /// Largest unit exponent tried.
        #[arg(long, default_value_t = 20)]
        kmax: u32,
        /// Skip the congruence pre-filters.
        #[arg(long)]
        no_filter: bool,
    },
}

#[derive(Subcommand, Debug)]
enum SkolemCmd {
    /// The r_n, s_n, t_n table.
    Rst {
        #[arg(long, default_value_t = 4)]
        nmax: u32,
    },
    /// The a', z and N(z) table.
    Table,
    /// 2-adic valuations of r_n, s_n, t_n against their bound.
    Addax {
        #[arg(long, default_value_t = 16)]
        nmax: u32,
    },
    /// 2-adic distance of N(z(j)) over pairs j, j' with |j| up to jmax.
    Oryx {
        #[arg(long, default_value_t = 30)]
        jmax: i64,
    },
    /// k where the second field's orbit has a unit-norm coefficient.
    L2 {
        #[arg(long, default_value_t = 20)]
        kmax: i64,
    },
}

/// Collects output lines so each command prints in one place.
struct Out {
    format: Format,
    lines: Vec<String>,
}

impl Out {
    fn text(&mut self, s: impl Into<String>) {
        if self.format == Format::Text {
            self.lines.push(s.into());
        }
    }

    fn record(&mut self, v: Value) {
        if self.format == Format::JsonLines {
            self.lines.push(v.to_string());
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = Out { format: cli.format, lines: Vec::new() };
    let res = run(&cli, &mut out);
    // a closed pipe (e.g. `| head`) just ends output early
    let mut stdout = std::io::stdout().lock();
    for l in &out.lines {
        if writeln!(stdout, "{l}").is_err() {
            break;
        }
    }
    drop(stdout);
    match res {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// Ok(true): success; Ok(false): mathematical negative.
fn run(cli: &Cli, out: &mut Out) -> Result<bool, CliError> {
    pcflab::ring::check_d(cli.d).map_err(|e| CliError::Usage(e.to_string()))?;
    let (d, digits) = (cli.d, cli.precision);
    match &cli.cmd {
        Command::Eval { pcf } => {
            let p = parse_pcf(pcf, d)?;
            report_pcf(&p, digits, out)
        }
        Command::Dual { pcf } => {
            let p = parse_pcf(pcf, d)?;
            let q = dual(&p).normalize();
            out.text(format!("dual: {q}"));
            report_pcf(&q, digits, out)
        }
        Command::Variety { cmd: VarietyCmd::Check(a) } => {
            let (t, pt) = parse_point_args(a, d)?;
            let res = variety::variety_residuals(&t, &pt);
            let member = res.iter().all(RingElem::is_zero);
            out.text(format!("point: {pt}"));
            out.text(format!("residuals: {}", variety::format_point(&res)));
            out.text(if member { "member" } else { "not a member" });
            if let Some(dg) = variety::degenerate_case(&t, pt.n, pt.k) {
                out.text(format!("note: degenerate case {dg:?}"));
            }
            out.record(json!({
                "coords": pt.to_string(),
                "residuals": res.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                "verdict": if member { "member" } else { "non-member" },
                "value_decimal": Value::Null,
            }));
            Ok(member)
        }
        Command::Fp { cmd: FpCmd::Project(a) } => {
            let (t, pt) = parse_point_args(a, d)?;
            match variety::fp_project(&t, &pt) {
                Ok(xy) => {
                    let r = variety::fp_conic_residual(&t, pt.k, &xy);
                    out.text(format!("image: ({}, {})", xy.0, xy.1));
                    out.text(format!("conic residual: {r}"));
                    out.record(json!({
                        "coords": pt.to_string(),
                        "image": [xy.0.to_string(), xy.1.to_string()],
                        "residuals": [r.to_string()],
                        "verdict": if r.is_zero() { "on-conic" } else { "off-conic" },
                        "value_decimal": Value::Null,
                    }));
                    Ok(r.is_zero())
                }
                Err(VarietyError::NotMember) => {
                    out.text("point is not on the variety");
                    out.record(json!({"coords": pt.to_string(), "residuals": Value::Null, "verdict": "non-member", "value_decimal": Value::Null}));
                    Ok(false)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Search { cmd: SearchCmd::Table { name } } | Command::Table { name } => table(name, digits, out),
        Command::Search { cmd: SearchCmd::Ljunggren { bound } } => {
            let sols = search::ljunggren_oracle(*bound);
            out.text(format!("x^2 + 1 = 2y^4, |y| <= {bound}: {} solutions", sols.len()));
            for (x, y) in &sols {
                out.text(format!("  ({x}, {y})"));
                out.record(json!({"coords": format!("({x}, {y})"), "residuals": ["0"], "verdict": "solution", "value_decimal": Value::Null}));
            }
            Ok(true)
        }
        Command::Search { cmd: SearchCmd::Ecurve { pi, kmax, no_filter } } => {
            let pi = parse_elem(pi, d)?;
            let sol = search::solve_e_curve(&pi, *kmax, d, !no_filter)?;
            let s = &sol.stats;
            out.text(format!("(a^2 b + 1) b = {pi}: {} points", sol.points.len()));
            for (a, b) in &sol.points {
                let r = variety::e_curve_residual(&pi, a, b);
                out.text(format!("  ({a}, {b})"));
                out.record(json!({"coords": format!("({a}, {b})"), "residuals": [r.to_string()], "verdict": "solution", "value_decimal": Value::Null}));
            }
            out.text(format!(
                "candidates {}, rejected: norm mod 8 {}, non-integral {}, mod 4 {}, non-square {}",
                s.candidates, s.rejected_norm_mod8, s.rejected_not_integral, s.rejected_mod4, s.rejected_not_square
            ));
            Ok(true)
        }
        Command::Skolem { cmd } => skolem_cmd(cmd, out),
    }
}

fn classify_pcf_error(e: PcfError) -> CliError {
    match e {
        PcfError::Parse { .. } | PcfError::Ring(RingError::Parse { .. }) => CliError::Usage(e.to_string()),
        e => e.into(),
    }
}

fn parse_pcf(s: &str, d: i64) -> Result<Pcf, CliError> {
    Pcf::parse(s, d).map_err(classify_pcf_error)
}

fn parse_elem(s: &str, d: i64) -> Result<RingElem, CliError> {
    RingElem::parse(s, d).map_err(|e| CliError::Usage(e.to_string()))
}

fn parse_list(s: &str, d: i64) -> Result<Vec<RingElem>, CliError> {
    variety::parse_point(s, d).map_err(|e| CliError::Usage(e.to_string()))
}

fn parse_point_args(a: &PointArgs, d: i64) -> Result<(TargetRoots, VarietyPoint), CliError> {
    let ty: Vec<usize> = a
        .ty
        .split(',')
        .map(|x| x.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("bad --type {:?}, expected N,k", a.ty)))?;
    let [n, k] = ty[..] else { return Err(CliError::Usage(format!("bad --type {:?}, expected N,k", a.ty))) };
    let t = parse_list(&a.target, d)?;
    let [ta, tb, tc] = <[RingElem; 3]>::try_from(t).map_err(|_| CliError::Usage("--target needs three coefficients".into()))?;
    let target = TargetRoots::new(ta, tb, tc).map_err(|e| CliError::Usage(e.to_string()))?;
    let pt = VarietyPoint::new(parse_list(&a.point, d)?, n, k).map_err(|e| CliError::Usage(e.to_string()))?;
    Ok((target, pt))
}

fn verdict_json(p: &Pcf, v: &Verdict, digits: usize) -> Value {
    let value = v.value().map(|r| r.to_string());
    let dec = v.value().and_then(|r| r.decimal(digits));
    let cpd = rate(p).ok().map(|r| r.convergents_per_digit);
    json!({
        "pcf": p.to_string(),
        "residuals": Value::Null,
        "verdict": v.to_string(),
        "value": value,
        "value_decimal": dec,
        "convergents_per_digit": cpd,
    })
}

fn report_pcf(p: &Pcf, digits: usize, out: &mut Out) -> Result<bool, CliError> {
    let v = verdict(p)?;
    out.record(verdict_json(p, &v, digits));
    out.text(format!("pcf: {p}"));
    match &v {
        Verdict::Converges { value, parabolic, .. } => {
            out.text("verdict: Converges");
            out.text(format!("value: {value}"));
            out.text(format!("decimal: {}", value.decimal(digits).unwrap_or_else(|| "n/a".into())));
            if *parabolic {
                out.text("rate: sub-exponential (parabolic)");
            } else if let Ok(r) = rate(p) {
                out.text(format!("|lambda|: {}", r.modulus_decimal));
                out.text(format!("convergents per digit: {:.3}", r.convergents_per_digit));
            }
            Ok(true)
        }
        Verdict::Diverges { reason, main_limit, pariahs } => {
            out.text(format!("verdict: Diverges ({reason})"));
            if let Some(m) = main_limit {
                out.text(format!("main limit: {m} ~ {}", m.decimal(digits.min(20)).unwrap_or_else(|| "n/a".into())));
            }
            for pa in pariahs {
                out.text(format!("pariah class j = {} mod {}: limit {}", pa.shift, p.per().len(), pa.limit));
            }
            Ok(false)
        }
    }
}

fn entry_json(e: &Entry, status: &str, digits: usize) -> Value {
    match e {
        Entry::Pcf(p) => {
            let v = verdict(p).ok();
            json!({
                "pcf": p.to_string(),
                "residuals": Value::Null,
                "verdict": v.as_ref().map(|v| v.to_string()),
                "value_decimal": v.as_ref().and_then(|v| v.value().and_then(|r: &Root| r.decimal(digits))),
                "status": status,
            })
        }
        other => json!({
            "coords": other.to_string(),
            "residuals": Value::Null,
            "verdict": Value::Null,
            "value_decimal": Value::Null,
            "status": status,
        }),
    }
}

fn table(name: &str, digits: usize, out: &mut Out) -> Result<bool, CliError> {
    let name: TableName = name.parse().map_err(|e: search::SearchError| CliError::Usage(e.to_string()))?;
    let report = search::reproduce_table(name)?;
    out.text(report.to_string());
    for e in &report.found {
        let status = if report.extra.contains(e) { "extra" } else { "match" };
        out.record(entry_json(e, status, digits));
    }
    for e in &report.missing {
        out.record(entry_json(e, "missing", digits));
    }
    out.record(json!({
        "table": name.as_str(),
        "matched": report.matched(),
        "expected": report.expected,
        "missing": report.missing.len(),
        "extra": report.extra.len(),
        "notes": report.notes,
    }));
    Ok(report.matches())
}

fn skolem_cmd(cmd: &SkolemCmd, out: &mut Out) -> Result<bool, CliError> {
    match cmd {
        SkolemCmd::Rst { nmax } => {
            out.text(skolem::format_rst_table(*nmax)?);
            for n in 0..=*nmax {
                let (r, s, t) = skolem::rst(n)?;
                out.record(json!({"n": n, "r": r.to_string(), "s": s.to_string(), "t": t.to_string()}));
            }
            Ok(true)
        }
        SkolemCmd::Table => {
            let rows = skolem::aprime_z_table(&skolem::APRIME_KS)?;
            out.text(skolem::format_aprime_table(&rows));
            for r in &rows {
                out.record(json!({"k": [r.ks.0, r.ks.1], "aprime": r.aprime.to_string(), "z": r.z.to_string(), "nz": r.nz.to_string()}));
            }
            Ok(true)
        }
        SkolemCmd::Addax { nmax } => {
            let rows = skolem::addax_check(*nmax)?;
            let ok = rows.iter().all(|r| r.holds());
            for r in &rows {
                out.text(format!(
                    "n={:>3}  val2(r)={:>6}  val2(s)={:>6}  val2(t)={:>6}  3n/2={:>6}  {}",
                    r.n,
                    r.val_r.to_string(),
                    r.val_s.to_string(),
                    r.val_t.to_string(),
                    r.bound().to_string(),
                    if r.holds() { "ok" } else { "FAIL" }
                ));
                out.record(json!({"n": r.n, "val_r": r.val_r.to_string(), "val_s": r.val_s.to_string(), "val_t": r.val_t.to_string(), "ok": r.holds()}));
            }
            out.text(if ok { "PASS" } else { "FAIL" });
            Ok(ok)
        }
        SkolemCmd::Oryx { jmax } => {
            let rep = skolem::oryx_check(*jmax)?;
            out.text(format!("pairs checked: {}", rep.pairs_checked));
            for (j, j2, o, e) in &rep.violations {
                out.text(format!("violation: j={j} j'={j2} observed {o} expected {e}"));
            }
            out.text(format!("j with N(z(j)) = +-1: {:?}", rep.unit_norm_js));
            out.text(if rep.passes() { "PASS" } else { "FAIL" });
            out.record(json!({"jmax": jmax, "pairs": rep.pairs_checked, "violations": rep.violations.len(), "unit_norm_js": rep.unit_norm_js, "pass": rep.passes()}));
            Ok(rep.passes())
        }
        SkolemCmd::L2 { kmax } => {
            let ks = skolem::l2_scan(*kmax)?;
            let set: Vec<String> = ks.iter().map(i64::to_string).collect();
            out.text(format!("k with |k| <= {kmax} and N(z) = +-1: {{{}}}", set.join(", ")));
            out.record(json!({"kmax": kmax, "ks": ks}));
            Ok(true)
        }
    }
}
