//! Command-line front end for the `chevbounds` calculators.
//!
//! [`run_with`] is the whole program; `main` only wires it to the process
//! streams so the tests can drive it in memory.

mod output;

use std::io::Write;

use chevbounds::bounds::{
    compare_thresholds, finite_group_report, generic_thresholds, scan_exponent_lemma, stability_constants,
    vanishing_range_from_twisted_ext, BsVariant, ThresholdReport, ThresholdTag,
};
use chevbounds::config::CAP_ENV_VAR;
use chevbounds::e1oracle::{check_bs_vanishing, check_weight_bounds, invariant_page, BoundKind};
use chevbounds::tables::{emit_table, structural_notes, TableKind};
use chevbounds::weightcomb::b_invariant;
use chevbounds::{
    structural_constants, weyl_character, Caps, CartanType, Error, Family, OutputFormat, RootSystem, Weight,
    WeightMultiset,
};
use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde_json::{json, Value};

use output::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONTRADICTION: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "chevbounds", version, about = "Exact vanishing and stability bounds for Chevalley group cohomology")]
struct Cli {
    /// Output format: text, json or csv.
    #[arg(long, global = true, default_value = "text", value_parser = parse_format)]
    format: OutputFormat,
    /// Override the multiset-entry and dimension cap (takes precedence over CHEVBOUNDS_CAP).
    #[arg(long, global = true)]
    cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Root-system data and the constants c, t.
    Info {
        #[arg(long = "type", value_parser = parse_type)]
        cartan: CartanType,
    },
    /// Vanishing range of H^m(G(F_q), k) for q = p^r.
    VanishRange {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        r: u64,
    },
    /// Generic-cohomology thresholds (s, r) for a module M.
    Generic {
        #[command(flatten)]
        base: TypePrimeDegree,
        /// b(M) given directly instead of through a module.
        #[arg(long, conflicts_with_all = ["weight", "module_weight"])]
        b: Option<u64>,
        #[command(flatten)]
        module: ModuleArgs,
    },
    /// New thresholds against the older ones for a module M.
    Compare {
        #[command(flatten)]
        base: TypePrimeDegree,
        #[command(flatten)]
        module: ModuleArgs,
    },
    /// Frobenius-twist stability constants C and F(m).
    Stability {
        #[command(flatten)]
        base: TypePrimeDegree,
        /// Report whether this twist count is in the stable range.
        #[arg(long)]
        s: Option<u64>,
    },
    /// Enumerate the E1 invariant page and check the weight bounds on it.
    VerifyE1 {
        #[command(flatten)]
        base: TypePrimeDegree,
        #[arg(long)]
        s: u32,
        #[arg(long, default_value_t = 0)]
        f: u32,
        /// λ in fundamental-weight coordinates.
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        weight: Weight,
        /// Weights of μ, as `coords[:multiplicity]`; defaults to the trivial weight.
        #[arg(long = "module-weight", value_parser = parse_module_weight, allow_hyphen_values = true)]
        module_weight: Vec<(Weight, u64)>,
        /// Restrict the B_s-vanishing comparison to one variant (a, b or c).
        #[arg(long, value_parser = parse_variant)]
        variant: Option<BsVariant>,
    },
    /// Exhaustive check of the numerical lemma behind the twisted Ext vanishing.
    #[command(name = "verify-lemma61")]
    VerifyExponentLemma {
        #[arg(long, default_value_t = 12)]
        max: u32,
        /// Primes to scan, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "2,3,5,7")]
        p: Vec<u64>,
    },
    /// Emit one of the reference tables.
    Table {
        /// structural, comparison-p2 or comparison-odd.
        #[arg(long, value_parser = parse_kind)]
        kind: TableKind,
    },
}

#[derive(Args, Debug)]
struct TypePrimeDegree {
    #[arg(long = "type", value_parser = parse_type)]
    cartan: CartanType,
    #[arg(long)]
    p: u64,
    #[arg(long)]
    m: u64,
}

#[derive(Args, Debug)]
struct ModuleArgs {
    /// Highest weight of H^0(λ); M is its full character.
    #[arg(long, value_parser = parse_weight, conflicts_with = "module_weight", allow_hyphen_values = true)]
    weight: Option<Weight>,
    /// An explicit weight of M, as `coords[:multiplicity]`; repeatable.
    #[arg(long = "module-weight", value_parser = parse_module_weight, allow_hyphen_values = true)]
    module_weight: Vec<(Weight, u64)>,
}

fn parse_with<T: std::str::FromStr<Err = Error>>(s: &str) -> Result<T, String> {
    s.parse::<T>().map_err(|e| e.to_string())
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    parse_with(s)
}

fn parse_type(s: &str) -> Result<CartanType, String> {
    parse_with(s)
}

fn parse_weight(s: &str) -> Result<Weight, String> {
    parse_with(s)
}

fn parse_variant(s: &str) -> Result<BsVariant, String> {
    parse_with(s)
}

fn parse_kind(s: &str) -> Result<TableKind, String> {
    parse_with(s)
}

fn parse_module_weight(s: &str) -> Result<(Weight, u64), String> {
    let (w, mult) = match s.rsplit_once(':') {
        Some((w, m)) => (w, m.trim().parse::<u64>().map_err(|_| format!("bad multiplicity in {s:?}"))?),
        None => (s, 1),
    };
    if mult == 0 {
        return Err(format!("zero multiplicity in {s:?}"));
    }
    Ok((parse_weight(w)?, mult))
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidInput(_) => EXIT_INVALID,
        Error::ResourceCap { .. } => EXIT_CAP,
        Error::Contradiction(_) => EXIT_CONTRADICTION,
    }
}

fn caps_for(cli_cap: Option<usize>) -> Caps {
    let caps = Caps::from_env();
    match cli_cap {
        Some(n) => caps.with_entry_cap(n),
        None => caps,
    }
}

/// Runs one invocation. `argv[0]` is the program name.
pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    if std::env::var(CAP_ENV_VAR).is_ok_and(|v| v.trim().parse::<usize>().is_err()) {
        let _ = writeln!(err, "error: {CAP_ENV_VAR} must be a non-negative integer");
        return EXIT_INVALID;
    }
    let caps = caps_for(cli.cap);
    let format = cli.format;
    match execute(cli.command, &caps, format, err) {
        Ok(Outcome::Report(report)) => {
            let _ = out.write_all(report.render(format).as_bytes());
            report.exit
        }
        Ok(Outcome::Raw(text)) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

enum Outcome {
    Report(Report),
    Raw(String),
}

fn root_system(t: CartanType, caps: &Caps) -> chevbounds::Result<RootSystem> {
    RootSystem::with_caps(t, caps)
}

fn explicit_module(rs: &RootSystem, weights: &[(Weight, u64)]) -> chevbounds::Result<WeightMultiset> {
    let mut ws = WeightMultiset::new();
    for (w, m) in weights {
        rs.check_rank(w)?;
        ws.insert(w.clone(), BigUint::from(*m));
    }
    Ok(ws)
}

/// M from `--weight` (full character) or `--module-weight` (explicit), else `k`.
fn module_from(rs: &RootSystem, args: &ModuleArgs, caps: &Caps) -> chevbounds::Result<WeightMultiset> {
    if let Some(w) = &args.weight {
        rs.check_rank(w)?;
        return weyl_character(rs, w, caps);
    }
    if args.module_weight.is_empty() {
        return Ok(WeightMultiset::trivial(rs.rank()));
    }
    explicit_module(rs, &args.module_weight)
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn threshold_line(r: &ThresholdReport) -> String {
    let e = r.e.as_ref().map_or("-".to_string(), |e| e.to_string());
    let f = r.f.map_or("-".to_string(), |f| f.to_string());
    let rmin = r.r_min.map_or("-".to_string(), |v| v.to_string());
    format!("{}: e={e} f={f} s>={} r>={rmin}", r.theorem_tag, r.s_min)
}

fn variant_tag(v: BsVariant) -> ThresholdTag {
    match v {
        BsVariant::A => ThresholdTag::BsVanishingEven,
        BsVariant::B => ThresholdTag::BsVanishingOdd,
        BsVariant::C => ThresholdTag::BsVanishingOddTopDigit,
    }
}

fn execute(cmd: Command, caps: &Caps, format: OutputFormat, err: &mut dyn Write) -> chevbounds::Result<Outcome> {
    match cmd {
        Command::Info { cartan } => info(cartan, caps, err),
        Command::VanishRange { p, r } => {
            let report = finite_group_report(p, r)?;
            let top = report.inputs_echo.m;
            if vanishing_range_from_twisted_ext(p, r)? != top {
                return Err(Error::Contradiction(format!(
                    "vanishing range for p={p}, r={r} disagrees with the twisted Ext criterion"
                )));
            }
            let mut text = format!("q = {p}^{r}\n");
            for c in &report.conditions {
                text.push_str(c);
                text.push('\n');
            }
            Ok(Outcome::Report(Report::new("vanish-range", to_value(&report), text, vec![report.theorem_tag])))
        }
        Command::Generic { base, b, module } => {
            let rs = root_system(base.cartan, caps)?;
            let b_module = match b {
                Some(b) => b,
                None => b_invariant(&rs, &module_from(&rs, &module, caps)?)?.value(),
            };
            let report = generic_thresholds(&rs, base.p, base.m, b_module)?;
            let mut text = format!("{} p={} m={} b(M)={b_module}\n", base.cartan, base.p, base.m);
            text.push_str(&format!("selected {}\n", threshold_line(&report)));
            for c in &report.considered {
                text.push_str(&format!("  considered {}\n", threshold_line(c)));
            }
            for c in &report.conditions {
                text.push_str(&format!("condition: {c}\n"));
            }
            Ok(Outcome::Report(Report::new("generic", to_value(&report), text, vec![report.theorem_tag])))
        }
        Command::Compare { base, module } => {
            let rs = root_system(base.cartan, caps)?;
            let ws = module_from(&rs, &module, caps)?;
            let report = compare_thresholds(&rs, base.p, base.m, &ws)?;
            let text = format!(
                "{} p={} m={} dim M={}\nuniform {}\nolder   {}\nf_delta={} e_delta={}{}\n",
                base.cartan,
                base.p,
                base.m,
                ws.total_dimension(),
                threshold_line(&report.uniform),
                threshold_line(&report.cpsvdk),
                report.f_delta,
                report.e_delta,
                if report.exception_flag { "\nolder e is the smaller one here" } else { "" },
            );
            let tags = vec![report.uniform.theorem_tag, report.cpsvdk.theorem_tag];
            Ok(Outcome::Report(Report::new("compare", to_value(&report), text, tags)))
        }
        Command::Stability { base, s } => {
            let rs = root_system(base.cartan, caps)?;
            let st = stability_constants(&rs, base.p, base.m)?;
            let mut text = format!("{} p={} m={}\nC={}\nF(m)={}\n", base.cartan, base.p, base.m, st.c, st.f);
            let mut value = to_value(&st);
            if let Some(s) = s {
                let stable = chevbounds::arith::int(s as i64) >= st.c;
                text.push_str(&format!("s={s}: {}\n", if stable { "stable" } else { "not covered by C" }));
                value["stable_at_s"] = json!(stable);
            }
            for n in &st.notes {
                text.push_str(&format!("note: {n}\n"));
            }
            let tags = vec![ThresholdTag::StabilityConstant, ThresholdTag::GoodFiltrationStability];
            Ok(Outcome::Report(Report::new("stability", value, text, tags)))
        }
        Command::VerifyE1 { base, s, f, weight, module_weight, variant } => {
            verify_e1(base, s, f, weight, module_weight, variant, caps)
        }
        Command::VerifyExponentLemma { max, p } => {
            let scan = scan_exponent_lemma(&p, max)?;
            let n = scan.counterexamples.len();
            let mut text = format!("{n} counterexamples over {}×{max}³ grid\n", p.len());
            text.push_str(&format!("{} evaluations, {} with hypotheses met\n", scan.evaluations, scan.hypotheses_met));
            for c in &scan.counterexamples {
                text.push_str(&format!("counterexample: p={} s={} f={} t={} part {:?}\n", c.p, c.s, c.f, c.t, c.part));
            }
            let mut report =
                Report::new("verify-lemma61", to_value(&scan), text, vec![ThresholdTag::TwistedExtVanishing]);
            if n > 0 {
                report.exit = EXIT_CONTRADICTION;
            }
            Ok(Outcome::Report(report))
        }
        Command::Table { kind } => table(kind, format, err).map(Outcome::Raw),
    }
}

fn info(cartan: CartanType, caps: &Caps, err: &mut dyn Write) -> chevbounds::Result<Outcome> {
    let rs = root_system(cartan, caps)?;
    let (c, t) = structural_constants(&rs);
    let invariants = rs.fundamental_group_invariants();
    let group = if invariants.iter().all(|&n| n == 1) {
        "trivial".to_string()
    } else {
        invariants.iter().map(|n| format!("Z/{n}")).collect::<Vec<_>>().join(" x ")
    };
    let text = format!(
        "type {cartan}\nrank={}\npositive roots={}\nh={} h∨={}\nX(T)/ZΦ = {group}\nhighest root={}\nhighest short root={}\nrho={}\nc={c} t={t} c·t={}\n",
        rs.rank(),
        rs.num_positive_roots(),
        rs.coxeter_number(),
        rs.dual_coxeter_number(),
        rs.highest_root().weight,
        rs.highest_short_root().weight,
        rs.rho(),
        c * t as i64,
    );
    if rs.family() == Family::D && rs.rank() % 2 == 1 {
        let _ = writeln!(err, "note: {}", structural_notes().join("; "));
    }
    let value = json!({
        "type": cartan.to_string(),
        "rank": rs.rank(),
        "cartan_matrix": rs.cartan_matrix(),
        "num_positive_roots": rs.num_positive_roots(),
        "coxeter_number": rs.coxeter_number(),
        "dual_coxeter_number": rs.dual_coxeter_number(),
        "fundamental_group_invariants": invariants,
        "highest_root": rs.highest_root().weight,
        "highest_short_root": rs.highest_short_root().weight,
        "rho": rs.rho(),
        "c": c,
        "t": t,
        "ct": c * t as i64,
    });
    Ok(Outcome::Report(Report::new("info", value, text, vec![ThresholdTag::PriorGeneric])))
}

fn table(kind: TableKind, format: OutputFormat, err: &mut dyn Write) -> chevbounds::Result<String> {
    if kind == TableKind::Structural {
        for n in structural_notes() {
            let _ = writeln!(err, "note: {n}");
        }
    }
    emit_table(kind, format)
}

#[allow(clippy::too_many_arguments)]
fn verify_e1(
    base: TypePrimeDegree,
    s: u32,
    f: u32,
    lambda: Weight,
    mu: Vec<(Weight, u64)>,
    variant: Option<BsVariant>,
    caps: &Caps,
) -> chevbounds::Result<Outcome> {
    let rs = root_system(base.cartan, caps)?;
    rs.check_rank(&lambda)?;
    let m = u32::try_from(base.m).map_err(|_| Error::InvalidInput("m is too large".into()))?;
    let mu_set = if mu.is_empty() { WeightMultiset::trivial(rs.rank()) } else { explicit_module(&rs, &mu)? };
    let page = invariant_page(&rs, base.p, s, f, &lambda, &mu_set, m, caps)?;
    let mut text = format!(
        "{} p={} s={s} f={f} m={m} λ={lambda}\npage: {} weights from {} tuples\n",
        base.cartan,
        base.p,
        page.gammas.len(),
        page.tuples
    );
    let mut value = json!({ "page": to_value(&page) });
    let mut tags = Vec::new();
    let mut failed = false;

    let rough = check_weight_bounds(&rs, &page, BoundKind::Rough)?;
    text.push_str(&format!(
        "rough bound {}: {} checked, {} violations\n",
        rough.bound,
        rough.checked,
        rough.violations.len()
    ));
    failed |= !rough.passed;
    value["rough"] = to_value(&rough);

    match check_weight_bounds(&rs, &page, BoundKind::Exact) {
        Ok(exact) => {
            text.push_str(&format!(
                "exact bound {}: {} checked, {} violations, {} equality hits{}\n",
                exact.bound,
                exact.checked,
                exact.violations.len(),
                exact.equality_hits.len(),
                if exact.equality_consistent { "" } else { " (equality with f > t(μ))" },
            ));
            failed |= !exact.passed;
            value["exact"] = to_value(&exact);
        }
        Err(Error::InvalidInput(why)) => {
            text.push_str(&format!("exact bound skipped: {why}\n"));
            value["exact"] = Value::Null;
        }
        Err(e) => return Err(e),
    }

    let trivial_mu = mu_set == WeightMultiset::trivial(rs.rank());
    if f == 0 && trivial_mu && s >= 1 && rs.highest_root().pair(&lambda) >= 1 {
        let mut vr = check_bs_vanishing(&rs, base.p, &lambda, s, m, caps)?;
        if let Some(v) = variant {
            if !vr.thresholds.iter().any(|t| t.variant == v) {
                return Err(Error::InvalidInput(format!("variant {v:?} does not apply at p={}", base.p)));
            }
            vr.thresholds.retain(|t| t.variant == v);
            vr.consistent = vr.page.is_empty() || vr.thresholds.iter().all(|t| !t.met);
        }
        for t in &vr.thresholds {
            tags.push(variant_tag(t.variant));
            text.push_str(&format!(
                "{}: s>={} {}\n",
                variant_tag(t.variant),
                t.s_threshold,
                if t.met { "met, page must be empty" } else { "not met" }
            ));
        }
        if !vr.consistent {
            text.push_str("vanishing threshold met but page is nonempty\n");
        }
        failed |= !vr.consistent;
        value["vanishing"] = to_value(&vr);
    } else if variant.is_some() {
        return Err(Error::InvalidInput("--variant needs f=0, trivial μ, s>=1 and ⟨λ,α̃∨⟩>=1".into()));
    }
    text.push_str(if failed { "result: FAILED\n" } else { "result: ok\n" });
    value["passed"] = json!(!failed);
    let mut report = Report::new("verify-e1", value, text, tags);
    if failed {
        report.exit = EXIT_CONTRADICTION;
    }
    Ok(Outcome::Report(report))
}
