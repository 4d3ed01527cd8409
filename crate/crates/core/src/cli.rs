//! Command-line front end.
//!
//! Exit codes: 0 success (or a true verdict), 1 a false verdict from
//! `divides`/`verify`/`family`, 2 invalid input, 3 an internal invariant
//! violation (formula/elimination disagreement, reproduction mismatch, or a
//! failed theorem instance).

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::divisibility::{pair_verdict, verify_main_theorem, Certificate, DivisibilityVerdict, PairKind};
use crate::error::Error;
use crate::exact::{bareiss_det, exact_inverse};
use crate::lab::{reproduce, search, FamilyInstance, GtdFilter, ReproCase, SearchParams};
use crate::smith::{det_by_formula, power_matrix, structural_inverse, CoefficientTable, PowerKind, PowerMatrixSpec};
use crate::structure::{analyze, ConditionGFailure, OrderedSet, StructureReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "gcd-matrix", version, about = "Exact power GCD/LCM matrices and their divisibility")]
struct Cli {
    /// Emit JSON (JSON lines in batch mode and for `search`).
    #[arg(long, global = true)]
    json: bool,
    /// Largest exponent accepted for a and b.
    #[arg(long, global = true, default_value_t = 256)]
    max_exponent: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct SetInput {
    /// Comma-separated set, e.g. 1,3,5,45.
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    set: Option<String>,
    /// File with one comma-separated set per line.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Gcd,
    Lcm,
}

impl From<KindArg> for PowerKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Gcd => PowerKind::Gcd,
            KindArg::Lcm => PowerKind::Lcm,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PairArg {
    GcdGcd,
    GcdLcm,
    LcmLcm,
}

impl From<PairArg> for PairKind {
    fn from(p: PairArg) -> Self {
        match p {
            PairArg::GcdGcd => PairKind::GcdGcd,
            PairArg::GcdLcm => PairKind::GcdLcm,
            PairArg::LcmLcm => PairKind::LcmLcm,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Gcd-closure, greatest-type divisors and condition G.
    Analyze {
        #[command(flatten)]
        input: SetInput,
    },
    /// Print the power GCD or LCM matrix.
    Matrix {
        #[command(flatten)]
        input: SetInput,
        #[arg(long)]
        a: u32,
        #[arg(long, value_enum, default_value = "gcd")]
        kind: KindArg,
    },
    /// Determinant by elimination and, on gcd-closed sets, by product formula.
    Det {
        #[command(flatten)]
        input: SetInput,
        #[arg(long)]
        a: u32,
        #[arg(long, value_enum, default_value = "gcd")]
        kind: KindArg,
    },
    /// Exact inverse, cross-checked against the coefficient formula where it applies.
    Inverse {
        #[command(flatten)]
        input: SetInput,
        #[arg(long)]
        a: u32,
        #[arg(long, value_enum, default_value = "gcd")]
        kind: KindArg,
    },
    /// Decide one divisibility relation by the integer quotient.
    Divides {
        #[command(flatten)]
        input: SetInput,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        #[arg(long, value_enum)]
        pair: PairArg,
    },
    /// Check hypotheses and all three relations for (S, a, b).
    Verify {
        #[command(flatten)]
        input: SetInput,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
    },
    /// The {1, u, v, uvw} family at exponent b.
    Family {
        #[arg(long)]
        u: u64,
        #[arg(long)]
        v: u64,
        #[arg(long)]
        w: u64,
        #[arg(long)]
        b: u32,
    },
    /// Exhaustive search over gcd-closed sets.
    Search {
        /// Exact set size (sets both bounds).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 1)]
        min_n: usize,
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        #[arg(long, default_value_t = 60)]
        max_element: u64,
        /// Exponent pairs as a:b, comma separated.
        #[arg(long, default_value = "1:2", value_delimiter = ',')]
        exponents: Vec<String>,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "gcd-gcd,gcd-lcm,lcm-lcm")]
        pairs: Vec<PairArg>,
        /// Keep sets whose max |G_S(x)| equals this value.
        #[arg(long, conflicts_with = "max_gtd_at_most")]
        max_gtd: Option<usize>,
        /// Keep sets whose max |G_S(x)| is at most this value.
        #[arg(long)]
        max_gtd_at_most: Option<usize>,
        /// Keep sets with this condition-G truth value.
        #[arg(long)]
        condition_g: Option<bool>,
        /// Also report verdicts where divisibility fails.
        #[arg(long)]
        all: bool,
    },
    /// Rebuild a published example: t13i, t13ii, t13iii-a, t13iii-b.
    Reproduce { case: String },
}

struct Ctx<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    json: bool,
}

type Outcome = Result<i32, (i32, String)>;

fn input_error(e: impl std::fmt::Display) -> (i32, String) {
    (EXIT_INPUT, e.to_string())
}

fn load_sets(input: &SetInput) -> Result<Vec<OrderedSet>, (i32, String)> {
    match (&input.set, &input.file) {
        (Some(s), _) => Ok(vec![s.parse().map_err(input_error)?]),
        (None, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
            let sets = text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(|l| l.parse::<OrderedSet>().map_err(|e| input_error(format!("{l}: {e}"))))
                .collect::<Result<Vec<_>, _>>()?;
            if sets.is_empty() {
                return Err(input_error(Error::EmptySet));
            }
            Ok(sets)
        }
        (None, None) => Err(input_error("either --set or --file is required")),
    }
}

fn check_exponent(name: &str, v: u32, cap: u32) -> Result<(), (i32, String)> {
    if v == 0 {
        Err(input_error(format!("--{name} must be a positive integer")))
    } else if v > cap {
        Err(input_error(format!("--{name} = {v} exceeds --max-exponent {cap}")))
    } else {
        Ok(())
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    let mut ctx = Ctx { out, err, json: cli.json };
    match dispatch(&mut ctx, cli.command, cli.max_exponent) {
        Ok(code) => code,
        Err((code, msg)) => {
            let _ = writeln!(ctx.err, "error: {msg}");
            code
        }
    }
}

macro_rules! emit {
    ($ctx:expr, $($arg:tt)*) => {
        writeln!($ctx.out, $($arg)*).map_err(|e| (EXIT_INPUT, e.to_string()))?
    };
}

fn dispatch(ctx: &mut Ctx, command: Command, cap: u32) -> Outcome {
    match command {
        Command::Analyze { input } => {
            for set in load_sets(&input)? {
                let report = analyze(&set);
                if ctx.json {
                    emit!(ctx, "{}", serde_json::to_string(&report).expect("report serializes"));
                } else {
                    print_structure(ctx, &report)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Matrix { input, a, kind } => {
            check_exponent("a", a, cap)?;
            for set in load_sets(&input)? {
                let spec = PowerMatrixSpec::new(set, a, kind.into()).map_err(input_error)?;
                let m = power_matrix(&spec);
                if ctx.json {
                    let v = json!({"set": spec.set, "a": a, "kind": spec.kind, "matrix": m.to_string_rows()});
                    emit!(ctx, "{v}");
                } else {
                    emit!(ctx, "{} a={a} on {}", kind_label(spec.kind), spec.set);
                    emit!(ctx, "{m}");
                }
            }
            Ok(EXIT_OK)
        }
        Command::Det { input, a, kind } => {
            check_exponent("a", a, cap)?;
            let mut code = EXIT_OK;
            for set in load_sets(&input)? {
                let spec = PowerMatrixSpec::new(set, a, kind.into()).map_err(input_error)?;
                let elim = bareiss_det(&power_matrix(&spec));
                let formula = match det_by_formula(&spec) {
                    Ok(v) => Some(v),
                    Err(Error::NotGcdClosed(..)) => None,
                    Err(e) => return Err(input_error(e)),
                };
                let agree = formula.as_ref().map(|f| f == &elim);
                if agree == Some(false) {
                    code = EXIT_INVARIANT;
                }
                if ctx.json {
                    let coefficients = CoefficientTable::compute(&spec.set, a).ok().map(|t| t.to_json());
                    let v = json!({
                        "set": spec.set, "a": a, "kind": spec.kind,
                        "det": elim.to_string(),
                        "formula": formula.as_ref().map(ToString::to_string),
                        "agree": agree,
                        "coefficients": coefficients,
                    });
                    emit!(ctx, "{v}");
                } else {
                    emit!(ctx, "det {} a={a} on {}", kind_label(spec.kind), spec.set);
                    emit!(ctx, "  elimination: {elim}");
                    match &formula {
                        Some(f) => emit!(ctx, "  product formula: {f} ({})", if agree == Some(true) { "agrees" } else { "DISAGREES" }),
                        None => emit!(ctx, "  product formula: n/a (set is not gcd closed)"),
                    }
                }
            }
            Ok(code)
        }
        Command::Inverse { input, a, kind } => {
            check_exponent("a", a, cap)?;
            let mut code = EXIT_OK;
            for set in load_sets(&input)? {
                let spec = PowerMatrixSpec::new(set, a, kind.into()).map_err(input_error)?;
                let inv = exact_inverse(&power_matrix(&spec)).map_err(input_error)?;
                let structural = structural_inverse(&spec).ok();
                let agree = structural.as_ref().map(|s| s == &inv);
                if agree == Some(false) {
                    code = EXIT_INVARIANT;
                }
                if ctx.json {
                    let v = json!({
                        "set": spec.set, "a": a, "kind": spec.kind,
                        "inverse": inv.to_string_rows(),
                        "structural_agrees": agree,
                    });
                    emit!(ctx, "{v}");
                } else {
                    emit!(ctx, "inverse of {} a={a} on {}", kind_label(spec.kind), spec.set);
                    emit!(ctx, "{inv}");
                    match agree {
                        Some(true) => emit!(ctx, "coefficient formula: agrees"),
                        Some(false) => emit!(ctx, "coefficient formula: DISAGREES"),
                        None => emit!(ctx, "coefficient formula: not applicable"),
                    }
                }
            }
            Ok(code)
        }
        Command::Divides { input, a, b, pair } => {
            check_exponent("a", a, cap)?;
            check_exponent("b", b, cap)?;
            let mut code = EXIT_OK;
            for set in load_sets(&input)? {
                let verdict = pair_verdict(set.elements(), a, b, pair.into()).map_err(input_error)?;
                if verdict.divides() != Some(true) {
                    code = code.max(EXIT_FALSE);
                }
                if ctx.json {
                    let mut v = verdict.to_json();
                    v["set"] = json!(set);
                    emit!(ctx, "{v}");
                } else {
                    print_verdict(ctx, &set, &verdict)?;
                }
            }
            Ok(code)
        }
        Command::Verify { input, a, b } => {
            check_exponent("a", a, cap)?;
            check_exponent("b", b, cap)?;
            let mut code = EXIT_OK;
            for set in load_sets(&input)? {
                let report = verify_main_theorem(&set, a, b).map_err(input_error)?;
                if report.violation() {
                    code = EXIT_INVARIANT;
                } else if !report.all_divide() {
                    code = code.max(EXIT_FALSE);
                }
                if ctx.json {
                    emit!(ctx, "{}", report.to_json());
                } else {
                    print_structure(ctx, &report.structure)?;
                    emit!(
                        ctx,
                        "a | b: {}; hypotheses (gcd closed, max |G| <= 2, condition G, a | b): {}",
                        yes_no(report.a_divides_b),
                        if report.preconditions_met { "met" } else { "not met" }
                    );
                    for v in &report.verdicts {
                        print_verdict(ctx, &set, v)?;
                    }
                    if report.violation() {
                        emit!(ctx, "INVARIANT VIOLATION: hypotheses hold but a relation fails");
                    }
                }
            }
            Ok(code)
        }
        Command::Family { u, v, w, b } => {
            check_exponent("b", b, cap)?;
            let inst = FamilyInstance::new(u, v, w).map_err(input_error)?;
            let (gq, lq) = inst.matrix_verdicts(b).map_err(input_error)?;
            let (gc, lc) = (inst.gcd_divides(b), inst.lcm_divides(b));
            let code = if gq != gc || lq != lc {
                EXIT_INVARIANT
            } else if gc && lc {
                EXIT_OK
            } else {
                EXIT_FALSE
            };
            if ctx.json {
                let j = json!({
                    "set": inst.set(), "u": u, "v": v, "w": w, "b": b,
                    "delta_1": inst.delta(1).to_string(),
                    "delta_b": inst.delta(b).to_string(),
                    "gamma_b": inst.gamma(b).to_string(),
                    "gcd_divides": gc, "gcd_divides_quotient": gq,
                    "lcm_divides": lc, "lcm_divides_quotient": lq,
                });
                emit!(ctx, "{j}");
            } else {
                emit!(ctx, "S = {}  (u,v,w) = ({u},{v},{w}), b = {b}", inst.set());
                emit!(ctx, "  delta_1 = {}", inst.delta(1));
                emit!(ctx, "  delta_b = {}", inst.delta(b));
                emit!(ctx, "  gamma_b = {}", inst.gamma(b));
                emit!(ctx, "  (S) | (S^b): {} (quotient check: {})", yes_no(gc), yes_no(gq));
                emit!(ctx, "  (S) | [S^b]: {} (quotient check: {})", yes_no(lc), yes_no(lq));
            }
            Ok(code)
        }
        Command::Search { n, min_n, max_n, max_element, exponents, pairs, max_gtd, max_gtd_at_most, condition_g, all } => {
            let exponents = exponents
                .iter()
                .map(|e| parse_exponent_pair(e, cap))
                .collect::<Result<Vec<_>, _>>()?;
            let (min_size, max_size) = n.map_or((min_n, max_n), |n| (n, n));
            let params = SearchParams {
                min_size,
                max_size,
                max_element,
                exponents,
                max_gtd: max_gtd
                    .map(GtdFilter::Exactly)
                    .or(max_gtd_at_most.map(GtdFilter::AtMost)),
                condition_g,
                pairs: pairs.into_iter().map(Into::into).collect(),
                include_misses: all,
            };
            let findings = search(&params).map_err(input_error)?;
            for f in &findings {
                if ctx.json {
                    emit!(ctx, "{}", serde_json::to_string(f).expect("finding serializes"));
                } else {
                    let divides = f.divides.map_or("n/a (singular)".to_string(), |d| d.to_string());
                    emit!(
                        ctx,
                        "{} a={} b={} {} divides={} max_gtd={} condition_G={}",
                        f.set, f.a, f.b, f.pair, divides, f.structure.max_gtd, f.structure.condition_g
                    );
                }
            }
            let _ = writeln!(ctx.err, "{} finding(s)", findings.len());
            Ok(EXIT_OK)
        }
        Command::Reproduce { case } => {
            let case: ReproCase = case
                .parse()
                .map_err(|_| input_error(format!("unknown case `{case}` (expected t13i, t13ii, t13iii-a, t13iii-b)")))?;
            let report = reproduce(case).map_err(input_error)?;
            if ctx.json {
                emit!(ctx, "{}", serde_json::to_string(&report).expect("report serializes"));
            } else {
                for line in &report.lines {
                    emit!(ctx, "{line}");
                }
                if let Some(m) = &report.mismatch {
                    emit!(ctx, "MISMATCH at ({}, {}): expected {}, got {}", m.row, m.col, m.expected, m.actual);
                }
                emit!(ctx, "{}: {}", case, if report.passed { "PASS" } else { "FAIL" });
            }
            Ok(if report.passed { EXIT_OK } else { EXIT_INVARIANT })
        }
    }
}

fn parse_exponent_pair(s: &str, cap: u32) -> Result<(u32, u32), (i32, String)> {
    let (a, b) = s.split_once(':').ok_or_else(|| input_error(format!("exponent pair `{s}` must look like a:b")))?;
    let a: u32 = a.trim().parse().map_err(|_| input_error(format!("bad exponent `{a}`")))?;
    let b: u32 = b.trim().parse().map_err(|_| input_error(format!("bad exponent `{b}`")))?;
    check_exponent("exponents", a, cap)?;
    check_exponent("exponents", b, cap)?;
    Ok((a, b))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn kind_label(kind: PowerKind) -> &'static str {
    match kind {
        PowerKind::Gcd => "power GCD matrix",
        PowerKind::Lcm => "power LCM matrix",
    }
}

fn pair_label(pair: PairKind, a: u32, b: u32) -> String {
    match pair {
        PairKind::GcdGcd => format!("(S^{a}) | (S^{b})"),
        PairKind::GcdLcm => format!("(S^{a}) | [S^{b}]"),
        PairKind::LcmLcm => format!("[S^{a}] | [S^{b}]"),
    }
}

fn print_verdict(ctx: &mut Ctx, set: &OrderedSet, v: &DivisibilityVerdict) -> Result<(), (i32, String)> {
    let label = pair_label(v.pair, v.a, v.b);
    match &v.certificate {
        Certificate::Quotient(q) => {
            emit!(ctx, "{label} on {set}: yes, quotient:");
            emit!(ctx, "{q}");
        }
        Certificate::Witness(w) => {
            emit!(ctx, "{label} on {set}: no, quotient entry ({}, {}) = {}", w.row, w.col, w.value);
        }
        Certificate::Inapplicable { det } => {
            emit!(ctx, "{label} on {set}: unknown, divisor matrix is singular (det {det})");
        }
    }
    Ok(())
}

fn print_structure(ctx: &mut Ctx, r: &StructureReport) -> Result<(), (i32, String)> {
    emit!(ctx, "set {}", r.set);
    match r.gcd_violation {
        None => emit!(ctx, "  gcd closed: yes"),
        Some(w) => emit!(ctx, "  gcd closed: no (gcd({}, {}) = {} missing)", w.x, w.y, w.gcd),
    }
    emit!(ctx, "  factor closed: {}", yes_no(r.factor_closed));
    emit!(ctx, "  divisor chain: {}", yes_no(r.divisor_chain));
    for (x, g) in &r.gtd_map {
        let g: Vec<String> = g.iter().map(u64::to_string).collect();
        emit!(ctx, "  G({x}) = {{{}}}", g.join(","));
    }
    emit!(ctx, "  max |G|: {}", r.max_gtd);
    emit!(ctx, "  condition G: {}", yes_no(r.condition_g));
    for v in &r.violations {
        match v.reason {
            ConditionGFailure::LcmMismatch { lcm } => {
                emit!(ctx, "    at {}: [{}, {}] = {} != {}", v.element, v.y1, v.y2, lcm, v.element)
            }
            ConditionGFailure::GcdNotCommonGtd { gcd } => emit!(
                ctx,
                "    at {}: ({}, {}) = {} is not a greatest-type divisor of both",
                v.element,
                v.y1,
                v.y2,
                gcd
            ),
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("gcd-matrix").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn exponent_cap_enforced() {
        let (code, _, err) = run_str(&["matrix", "--set", "1,2", "--a", "300"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(err.contains("max-exponent"));
        let (code, _, _) = run_str(&["--max-exponent", "400", "matrix", "--set", "1,2", "--a", "300"]);
        assert_eq!(code, EXIT_OK);
    }

    #[test]
    fn zero_exponent_rejected() {
        let (code, _, _) = run_str(&["divides", "--set", "1,2", "--a", "0", "--b", "2", "--pair", "gcd-gcd"]);
        assert_eq!(code, EXIT_INPUT);
    }

    #[test]
    fn exponent_pair_parsing() {
        assert_eq!(parse_exponent_pair("2:6", 10), Ok((2, 6)));
        assert!(parse_exponent_pair("2-6", 10).is_err());
        assert!(parse_exponent_pair("2:60", 10).is_err());
    }
}
