use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use horadam_core::horadam::{generate_window, HoradamParams};
use horadam_core::hse::{run_symbol_audit, HseContext, SymbolGrid};
use horadam_core::identities::{
    find_identity, run_scalar_audit_filtered, standard_param_grid, AuditRecord, AuditSummary, Bindings, Expected,
    IndexGrid,
};
use horadam_core::rings::{RingDescriptor, RingElement};
use horadam_core::symalg::{reduced_norm3, SymbolAlgebra};
use horadam_core::zerodiv::{scan, verify_zero_divisor_side, ModContext, Parity, ScanBounds, Side, ZDivRecord};

#[derive(Parser)]
#[command(name = "horadam", version, about = "Exact Horadam sequences, symbol algebras and zero-divisor scans")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print w_k for k in [from, to]
    Seq(SeqArgs),
    /// Evaluate identities and stream JSON-lines records, summary last
    Audit(AuditArgs),
    /// Degree-3 reduced norm of an element over Z_r(ε)
    Norm(NormArgs),
    /// Check ordinary and exponential generating functions of W_k
    Genfun(GenfunArgs),
    /// Scan (r, a, b, q, m) for zero-divisor criterion hits
    Zscan(ZscanArgs),
    /// Find an annihilator of W_{2m} or W_{2m+1} over Z_r(ε)
    Witness(WitnessArgs),
}

#[derive(Args)]
struct OutArg {
    /// Write output to FILE instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SeqArgs {
    /// Seeds and coefficients a0,a1,p,q
    #[arg(long, value_name = "A0,A1,P,Q", default_value = "0,1,1,1")]
    params: HoradamParams,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    from: i64,
    #[arg(long, default_value_t = 10, allow_negative_numbers = true)]
    to: i64,
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Scalar,
    Symbol,
    All,
}

#[derive(Args)]
struct AuditArgs {
    #[arg(long, value_enum, default_value_t = Suite::Scalar)]
    suite: Suite,
    /// Single parameter tuple; default is the built-in grid
    #[arg(long, value_name = "A0,A1,P,Q")]
    params: Option<HoradamParams>,
    /// Largest k, m and n visited (default 12 scalar, 8 symbol)
    #[arg(long)]
    k_max: Option<i64>,
    /// Restrict to these identity tags (repeatable)
    #[arg(long = "id", value_name = "TAG")]
    ids: Vec<String>,
    /// Symbol algebra degree N
    #[arg(long, default_value_t = 3)]
    degree: usize,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    a: i64,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    b: i64,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Args)]
struct NormArgs {
    /// Odd prime r ≠ 3
    #[arg(long)]
    r: u64,
    #[arg(long, allow_negative_numbers = true)]
    a: i64,
    #[arg(long, allow_negative_numbers = true)]
    b: i64,
    /// Nine coefficients c_{ij} in basis order i + 3j
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    coeffs: Vec<String>,
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GfKind {
    Ogf,
    Egf,
    Both,
}

#[derive(Args)]
struct GenfunArgs {
    /// Truncation order T
    #[arg(long = "order", value_name = "T", default_value_t = 16)]
    order: i64,
    #[arg(long, value_name = "A0,A1,P,Q", default_value = "0,1,1,1")]
    params: HoradamParams,
    #[arg(long, value_enum, default_value_t = GfKind::Both)]
    kind: GfKind,
    #[arg(long, default_value_t = 3)]
    degree: usize,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    a: i64,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    b: i64,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
    Both,
}

impl ParityArg {
    fn parities(self) -> Vec<Parity> {
        match self {
            ParityArg::Even => vec![Parity::Even],
            ParityArg::Odd => vec![Parity::Odd],
            ParityArg::Both => vec![Parity::Even, Parity::Odd],
        }
    }
}

#[derive(Args)]
struct ZscanArgs {
    #[arg(long, default_value_t = 50)]
    r_max: u64,
    #[arg(long, default_value_t = 6)]
    q_max: i64,
    #[arg(long, default_value_t = 6)]
    m_max: i64,
    #[arg(long, value_enum, default_value_t = ParityArg::Both)]
    parity: ParityArg,
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OneParity {
    Even,
    Odd,
}

#[derive(Args)]
struct WitnessArgs {
    #[arg(long)]
    r: u64,
    #[arg(long, allow_negative_numbers = true)]
    a: i64,
    #[arg(long, allow_negative_numbers = true)]
    b: i64,
    /// q for the canonical parameters (1, r, r, q)
    #[arg(long, allow_negative_numbers = true, required_unless_present = "params", conflicts_with = "params")]
    q: Option<i64>,
    /// Full parameters instead of the canonical ones
    #[arg(long, value_name = "A0,A1,P,Q")]
    params: Option<HoradamParams>,
    #[arg(long)]
    m: i64,
    #[arg(long, value_enum)]
    parity: OneParity,
    /// left: W·v = 0, right: v·W = 0
    #[arg(long, value_enum, default_value_t = SideArg::Left)]
    side: SideArg,
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{flag}: {msg}")]
    Invalid { flag: &'static str, msg: String },
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

fn invalid(flag: &'static str, e: impl std::fmt::Display) -> CliError {
    CliError::Invalid { flag, msg: e.to_string() }
}

/// Buffered output plus the pass/fail bit for the exit code.
struct Report {
    text: String,
    ok: bool,
}

impl Report {
    fn new() -> Self {
        Report { text: String::new(), ok: true }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn json(&mut self, v: &impl serde::Serialize) {
        self.line(serde_json::to_string(v).expect("serializable"));
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let rendered = e.to_string();
            eprintln!("{}", rendered.lines().next().unwrap_or("error: invalid arguments"));
            return ExitCode::from(2);
        }
    };
    let (out, result) = match cli.cmd {
        Command::Seq(a) => (a.out.out.clone(), seq(&a)),
        Command::Audit(a) => (a.out.out.clone(), audit(&a)),
        Command::Norm(a) => (a.out.out.clone(), norm(&a)),
        Command::Genfun(a) => (a.out.out.clone(), genfun(&a)),
        Command::Zscan(a) => (a.out.out.clone(), zscan(&a)),
        Command::Witness(a) => (a.out.out.clone(), witness(&a)),
    };
    let report = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(out, &report.text) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if report.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn emit(out: Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn seq(a: &SeqArgs) -> Result<Report, CliError> {
    if a.from > a.to {
        return Err(invalid("--to", format!("{} is below --from {}", a.to, a.from)));
    }
    let win = generate_window(&a.params, a.from, a.to).map_err(|e| invalid("--to", e))?;
    let mut r = Report::new();
    if a.csv {
        r.line("k,w_k");
    }
    for k in a.from..=a.to {
        let w = win.at(k);
        if a.json {
            r.json(&serde_json::json!({ "k": k, "w": w.to_string() }));
        } else if a.csv {
            r.line(format!("{k},{w}"));
        } else {
            r.line(format!("{k}\t{w}"));
        }
    }
    Ok(r)
}

fn expected_of(rec: &AuditRecord) -> Option<Expected> {
    find_identity(&rec.id)
        .map(|m| m.expected)
        .or_else(|| horadam_core::hse::find_symbol_identity(&rec.id).map(|m| m.expected))
}

fn audit(a: &AuditArgs) -> Result<Report, CliError> {
    if let Some(k) = a.k_max {
        if !(0..=40).contains(&k) {
            return Err(invalid("--k-max", format!("{k} is outside 0..=40")));
        }
    }
    let known = |id: &str| find_identity(id).is_some() || horadam_core::hse::find_symbol_identity(id).is_some();
    if let Some(bad) = a.ids.iter().find(|id| !known(id)) {
        return Err(invalid("--id", format!("unknown identity tag {bad:?}")));
    }
    let ids: Vec<&str> = a.ids.iter().map(String::as_str).collect();
    let filter = if ids.is_empty() { None } else { Some(ids.as_slice()) };
    let mut records = Vec::new();
    if matches!(a.suite, Suite::Scalar | Suite::All) {
        let params = match a.params {
            Some(p) => vec![p],
            None => standard_param_grid(),
        };
        let k = a.k_max.unwrap_or(12);
        let grid = IndexGrid { n_max: k, ..IndexGrid::with_index_range(0, k) };
        let rep = run_scalar_audit_filtered(&params, &grid, filter).map_err(|e| invalid("--suite", e))?;
        records.extend(rep.records);
    }
    if matches!(a.suite, Suite::Symbol | Suite::All) {
        let params = match a.params {
            Some(p) => vec![p],
            None => vec![HoradamParams::fibonacci(), HoradamParams::new(2, 1, 1, 1).expect("valid")],
        };
        let ctxs = params
            .iter()
            .map(|p| HseContext::rational(p, a.degree, a.a, a.b))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| invalid("--degree", e))?;
        let k = a.k_max.unwrap_or(8);
        let grid = SymbolGrid { k_max: k, n_max: k, product_n: (2, k.clamp(2, 8)), ..SymbolGrid::default() };
        let rep = run_symbol_audit(&ctxs, &grid, filter).map_err(|e| invalid("--suite", e))?;
        records.extend(rep.records);
    }
    let summary = AuditSummary::from_records(&records, expected_of);
    let mut r = Report::new();
    for rec in &records {
        r.json(rec);
    }
    r.json(&serde_json::json!({ "summary": summary }));
    r.ok = summary.expected_pass_failures == 0;
    Ok(r)
}

fn norm(a: &NormArgs) -> Result<Report, CliError> {
    if a.coeffs.len() != 9 {
        return Err(invalid("--coeffs", format!("expected 9 coefficients, got {}", a.coeffs.len())));
    }
    if a.r == 3 || !horadam_core::rings::is_odd_prime(a.r) {
        return Err(invalid("--r", format!("{} is not an odd prime other than 3", a.r)));
    }
    let base = RingDescriptor::mod_prime(a.r).map_err(|e| invalid("--r", e))?;
    let alg = SymbolAlgebra::cyclotomic(&base, 3, a.a, a.b).map_err(|e| invalid("--a", e))?;
    let coeffs = a
        .coeffs
        .iter()
        .map(|c| RingElement::parse(alg.field(), c))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| invalid("--coeffs", e))?;
    let z = alg.element(&coeffs).map_err(|e| invalid("--coeffs", e))?;
    let n = reduced_norm3(&z).map_err(|e| invalid("--coeffs", e))?;
    let mut r = Report::new();
    if a.json {
        r.json(&serde_json::json!({ "algebra": alg.header(), "element": z, "norm": n.to_string() }));
    } else {
        r.line(n.to_string());
    }
    Ok(r)
}

fn genfun(a: &GenfunArgs) -> Result<Report, CliError> {
    if !(4..=64).contains(&a.order) {
        return Err(invalid("--order", format!("{} is outside 4..=64", a.order)));
    }
    let ctx = HseContext::rational(&a.params, a.degree, a.a, a.b).map_err(|e| invalid("--degree", e))?;
    let t = a.order;
    let mut jobs: Vec<(&str, Bindings)> = Vec::new();
    let triples = [(1, 0), (2, 1), (3, 2)];
    if matches!(a.kind, GfKind::Ogf | GfKind::Both) {
        jobs.extend(triples.iter().map(|&(k, m)| ("T3.7", Bindings::new().with("T", t).with("k", k).with("m", m))));
        jobs.push(("C3.8", Bindings::new().with("T", t)));
    }
    if matches!(a.kind, GfKind::Egf | GfKind::Both) {
        jobs.extend(triples.iter().map(|&(k, m)| ("T3.9", Bindings::new().with("T", t).with("k", k).with("m", m))));
        jobs.push(("C3.10", Bindings::new().with("T", t)));
    }
    let mut records = Vec::new();
    for (id, b) in jobs {
        records.push(horadam_core::hse::eval_symbol_identity(id, &ctx, &b).map_err(|e| invalid("--order", e))?);
    }
    let summary = AuditSummary::from_records(&records, expected_of);
    let mut r = Report::new();
    for rec in &records {
        r.json(rec);
    }
    r.json(&serde_json::json!({ "summary": summary }));
    r.ok = summary.fail == 0;
    Ok(r)
}

const CSV_HEADER: &str = "r,parity,a,b,q,m,q_m_mod_r,criterion,norm_is_zero,witness_found,degenerate,r_mod_4";

fn csv_row(rec: &ZDivRecord) -> String {
    let mut s = String::new();
    write!(
        s,
        "{},{},{},{},{},{},{},{},{},{},{},{}",
        rec.r,
        rec.parity,
        rec.a,
        rec.b,
        rec.q,
        rec.m,
        rec.q_m_mod_r,
        rec.criterion_met,
        rec.norm_is_zero,
        rec.witness_found(),
        rec.degenerate,
        rec.r_mod_4
    )
    .expect("write to string");
    s
}

fn zscan(a: &ZscanArgs) -> Result<Report, CliError> {
    if !(5..=200).contains(&a.r_max) {
        return Err(invalid("--r-max", format!("{} is outside 5..=200", a.r_max)));
    }
    if a.q_max < 1 {
        return Err(invalid("--q-max", "must be at least 1"));
    }
    if a.m_max < 1 {
        return Err(invalid("--m-max", "must be at least 1"));
    }
    let bounds = ScanBounds::new(a.r_max, a.q_max, a.m_max, &a.parity.parities()).map_err(|e| invalid("--parity", e))?;
    let rep = scan(&bounds).map_err(|e| invalid("--r-max", e))?;
    let mut r = Report::new();
    if a.csv {
        r.line(CSV_HEADER);
        for rec in &rep.records {
            r.line(csv_row(rec));
        }
    } else {
        for rec in &rep.records {
            r.json(rec);
        }
        r.json(&serde_json::json!({ "summary": rep.summary }));
    }
    Ok(r)
}

fn witness(a: &WitnessArgs) -> Result<Report, CliError> {
    let params = match (a.params, a.q) {
        (Some(p), _) => p,
        (None, Some(q)) => HoradamParams::new(1, a.r as i64, a.r as i64, q).map_err(|e| invalid("--q", e))?,
        (None, None) => return Err(invalid("--q", "required unless --params is given")),
    };
    let parity = match a.parity {
        OneParity::Even => Parity::Even,
        OneParity::Odd => Parity::Odd,
    };
    if a.m < 0 {
        return Err(invalid("--m", "must be nonnegative"));
    }
    let side = match a.side {
        SideArg::Left => Side::Left,
        SideArg::Right => Side::Right,
    };
    let r = a.r as i64;
    for (flag, v) in [("--a", a.a), ("--b", a.b)] {
        if r > 0 && v.rem_euclid(r) == 0 {
            return Err(invalid(flag, format!("{v} is divisible by r = {}", a.r)));
        }
    }
    let flag = if a.params.is_some() { "--params" } else { "--q" };
    let ctx = ModContext::new(a.r, &params, a.a, a.b).map_err(|e| match e {
        horadam_core::Error::HypothesisViolated(_) => invalid(flag, e),
        other => invalid("--r", other),
    })?;
    let rec = verify_zero_divisor_side(&ctx, a.m, parity, side).map_err(|e| invalid("--m", e))?;
    let w = ctx.build_w(parity.index(a.m)).map_err(|e| invalid("--m", e))?;
    let mut r = Report::new();
    r.ok = rec.witness.is_some();
    if a.json {
        r.json(&rec);
        return Ok(r);
    }
    r.line(format!("W_{}\t{}", parity.index(a.m), w));
    r.line(format!("norm\t{}", rec.norm_direct));
    r.line(format!("criterion\t{}", rec.criterion_met));
    match &rec.witness {
        Some(v) => {
            let prod = match side {
                Side::Left => w.mul(v),
                Side::Right => v.mul(&w),
            }
            .map_err(|e| invalid("--m", e))?;
            r.line(format!("witness\t{v}"));
            r.line(format!("product\t{prod}"));
        }
        None => r.line("witness\tnone"),
    }
    Ok(r)
}
