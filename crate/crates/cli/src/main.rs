use std::fs::{self, OpenOptions};
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use hullforge::code::{CodeRecord, DEFAULT_SUBSET_BUDGET};
use hullforge::constructions::{
    build_eval_family, build_hull_tgrs, flex_base, rl_extend, scale_to_hull, EtaPolicy, FamilyParams, FlexLength,
    HullOptions, HullRecipe, LambdaPolicy,
};
use hullforge::eaqecc::{sweep_family, QTheorem, SweepOptions, SweepRow};
use hullforge::reproduce::{reproduce, ExampleId, ExampleReport};
use hullforge::{make_quadratic_extension, Error, Form, LinearCode, Mat};

const BUDGET_VAR: &str = "HULLFORGE_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "hullforge", version, about = "Hull-dimension constructions for TGRS and Roth-Lempel typed codes")]
struct Cli {
    /// JSON run configuration; used instead of a subcommand
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Command>,
}

/// Every run is determined by one of these, from flags or a JSON file.
#[derive(Subcommand, Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
enum Command {
    /// Build a code from a theorem recipe and check its predicted hull
    Construct(ConstructArgs),
    /// Recompute rank, distance class and both hull dimensions of a code file
    Verify(VerifyArgs),
    /// Rebuild a worked example and compare against golden values
    Reproduce(ReproduceArgs),
    /// Tabulate EAQECC parameters for one theorem over a range of q
    Sweep(SweepArgs),
}

#[derive(ValueEnum, Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Thm {
    QEven,
    QOdd,
    HermitianTgrs,
    RlExtend,
    RlFlexible,
}

#[derive(ValueEnum, Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Family {
    #[default]
    Roots,
    Affine,
    Coset,
}

#[derive(ValueEnum, Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
enum Length {
    #[default]
    #[value(name = "n")]
    #[serde(rename = "n")]
    N,
    #[value(name = "n+1")]
    #[serde(rename = "n+1")]
    NPlus1,
    #[value(name = "n+2")]
    #[serde(rename = "n+2")]
    NPlus2,
}

#[derive(ValueEnum, Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Lambda {
    #[default]
    Free,
    Boundary,
}

#[derive(ValueEnum, Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Eta {
    #[default]
    Smallest,
    Mds,
    Amds,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
struct ConstructArgs {
    #[arg(long)]
    thm: Thm,
    #[arg(long)]
    q: u32,
    /// Length for q-even, q-odd and the roots family
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    #[serde(default)]
    family: Family,
    /// Coset count (coset family) or row count (affine family)
    #[arg(long)]
    t: Option<usize>,
    /// Subgroup order N of the coset family
    #[arg(long = "big-n")]
    #[serde(rename = "N")]
    big_n: Option<usize>,
    /// Dimension (K for rl-extend)
    #[arg(long)]
    k: usize,
    /// Scaled coordinates for the TGRS theorems
    #[arg(long)]
    r: Option<usize>,
    /// Target hull for rl-flexible; defaults to the largest attainable
    #[arg(long)]
    j: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    #[serde(default)]
    length: Length,
    #[arg(long, value_enum, default_value_t)]
    #[serde(default)]
    lambda1: Lambda,
    #[arg(long, value_enum, default_value_t)]
    #[serde(default)]
    lambda2: Lambda,
    #[arg(long, value_enum, default_value_t)]
    #[serde(default)]
    eta: Eta,
    /// Draw the scaling unit from GF(q) instead of GF(q²)
    #[arg(long)]
    #[serde(default)]
    strict_unit: bool,
    /// Code JSON output
    #[arg(long)]
    out: Option<PathBuf>,
    /// CSV ledger to append the summary row to
    #[arg(long)]
    ledger: Option<PathBuf>,
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
struct VerifyArgs {
    file: PathBuf,
    /// Report JSON output
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
struct ReproduceArgs {
    /// q13, q7, q5 or all
    example: String,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
struct SweepArgs {
    /// Q0, Q1, Q2 or Q3
    #[arg(long)]
    thm: String,
    /// Values or inclusive ranges, e.g. `5,7` or `3-9`
    #[arg(long, value_delimiter = ',', required = true)]
    q: Vec<String>,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    json: Option<PathBuf>,
    /// Exit 1 if any record fails a bound
    #[arg(long)]
    #[serde(default)]
    check_bounds: bool,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, default_value_t = 30)]
    #[serde(default = "default_max_n")]
    max_n: usize,
}

fn default_max_n() -> usize {
    SweepOptions::default().max_n
}

/// A failed run: 1 for a verification mismatch, 2 for invalid input.
#[derive(Debug)]
struct Exit {
    code: u8,
    msg: String,
}

impl Exit {
    fn invalid(msg: impl Into<String>) -> Exit {
        Exit { code: 2, msg: msg.into() }
    }

    fn mismatch(msg: impl Into<String>) -> Exit {
        Exit { code: 1, msg: msg.into() }
    }
}

impl From<Error> for Exit {
    fn from(e: Error) -> Exit {
        let code = match e {
            Error::HullMismatch { .. } | Error::HullDisagreement { .. } | Error::Invariant(_) => 1,
            _ => 2,
        };
        Exit { code, msg: e.to_string() }
    }
}

impl From<std::io::Error> for Exit {
    fn from(e: std::io::Error) -> Exit {
        Exit::invalid(e.to_string())
    }
}

impl From<serde_json::Error> for Exit {
    fn from(e: serde_json::Error) -> Exit {
        Exit::invalid(e.to_string())
    }
}

impl From<csv::Error> for Exit {
    fn from(e: csv::Error) -> Exit {
        Exit::invalid(e.to_string())
    }
}

type Run<T = ()> = Result<T, Exit>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match (cli.config, cli.command) {
        (Some(path), None) => match load_config(&path) {
            Ok(c) => c,
            Err(e) => return fail(e),
        },
        (None, Some(c)) => c,
        (Some(_), Some(_)) => return fail(Exit::invalid("give either --config or a subcommand, not both")),
        (None, None) => return fail(Exit::invalid("no subcommand; see --help")),
    };
    let res = match command {
        Command::Construct(a) => construct(&a),
        Command::Verify(a) => verify(&a),
        Command::Reproduce(a) => cmd_reproduce(&a),
        Command::Sweep(a) => sweep(&a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(e),
    }
}

fn fail(e: Exit) -> ExitCode {
    eprintln!("error: {}", e.msg);
    ExitCode::from(e.code)
}

fn load_config(path: &Path) -> Run<Command> {
    let text = fs::read_to_string(path).map_err(|e| Exit::invalid(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Exit::invalid(format!("{}: {e}", path.display())))
}

/// Flag, then the environment override, then `default`.
fn budget(flag: Option<u64>, default: u64) -> Run<u64> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Exit::invalid(format!("{BUDGET_VAR}={v:?} is not a count"))),
        Err(_) => Ok(default),
    }
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Run {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

// ---------------------------------------------------------------- construct

/// What a code file records besides the generator.
#[derive(Clone, Debug, Serialize, Deserialize)]
struct Construction {
    theorem: Thm,
    form: Form,
    predicted_hull: usize,
    args: ConstructArgs,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct CodeFile {
    #[serde(flatten)]
    code: CodeRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    construction: Option<Construction>,
}

#[derive(Debug, Serialize, Deserialize)]
struct LedgerRow {
    theorem: Thm,
    q: u32,
    n: usize,
    k: usize,
    d_class: String,
    form: Form,
    hull: usize,
    verified: bool,
}

fn family_params(a: &ConstructArgs) -> Run<FamilyParams> {
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| Exit::invalid(format!("--{flag} is required for the {:?} family", a.family)));
    Ok(match a.family {
        Family::Roots => FamilyParams::Roots { n: need(a.n, "n")? },
        Family::Affine => FamilyParams::Affine { t: need(a.t, "t")? },
        Family::Coset => FamilyParams::Coset {
            big_n: need(a.big_n, "big-n")?,
            t: need(a.t, "t")?,
        },
    })
}

fn build(a: &ConstructArgs) -> Run<(LinearCode, Form, usize)> {
    let tgrs = |recipe: HullRecipe| -> Run<(LinearCode, Form, usize)> {
        let opts = HullOptions {
            eta: match a.eta {
                Eta::Smallest => EtaPolicy::Smallest,
                Eta::Mds => EtaPolicy::Mds,
                Eta::Amds => EtaPolicy::Amds,
            },
            strict_unit: a.strict_unit,
        };
        let c = build_hull_tgrs(&recipe, a.k, a.r.unwrap_or(0), opts)?;
        Ok((c.code.clone(), c.form(), c.expected_hull))
    };
    let n = || a.n.ok_or_else(|| Exit::invalid("--n is required"));
    match a.thm {
        Thm::QEven => tgrs(HullRecipe::QEven { q: a.q, n: n()? }),
        Thm::QOdd => tgrs(HullRecipe::QOdd { q: a.q, n: n()? }),
        Thm::HermitianTgrs => tgrs(HullRecipe::HermitianTgrs {
            q: a.q,
            family: family_params(a)?,
        }),
        Thm::RlExtend | Thm::RlFlexible => {
            let f = make_quadratic_extension(a.q)?;
            let fam = build_eval_family(&f, family_params(a)?, Form::Hermitian)?;
            if a.thm == Thm::RlExtend {
                let pol = |l: Lambda| match l {
                    Lambda::Free => LambdaPolicy::Free,
                    Lambda::Boundary => LambdaPolicy::Boundary,
                };
                let ext = rl_extend(&fam, a.k, pol(a.lambda1), pol(a.lambda2))?;
                return Ok((ext.code, Form::Hermitian, ext.predicted_hull));
            }
            let length = match a.length {
                Length::N => FlexLength::N,
                Length::NPlus1 => FlexLength::NPlus1,
                Length::NPlus2 => FlexLength::NPlus2,
            };
            let base = flex_base(&fam, a.k, length)?;
            let j = a.j.unwrap_or(base.hull);
            let unit = f.scaling_unit(Form::Hermitian, a.strict_unit)?;
            let c = scale_to_hull(&base, j, unit)?;
            Ok((c.code, Form::Hermitian, j))
        }
    }
}

fn construct(a: &ConstructArgs) -> Run {
    let budget = budget(a.budget, DEFAULT_SUBSET_BUDGET)?;
    let (code, form, predicted) = build(a)?;
    let report = code.hull_report(form)?;
    let verified = report.gram == predicted && report.intersection == predicted;
    let dist = code.distance_class(budget)?;
    let d = dist
        .exact()
        .map_or_else(|| format!("{}..{}", dist.d_lower, dist.d_upper), |d| d.to_string());
    println!(
        "{:?} q={} [{},{},{}] {} {form} hull {} (intersection {}), predicted {predicted}: {}",
        a.thm,
        a.q,
        code.n(),
        code.k(),
        d,
        dist.class,
        report.gram,
        report.intersection,
        if verified { "verified" } else { "MISMATCH" }
    );
    if let Some(path) = &a.out {
        let file = CodeFile {
            code: code.to_record(),
            construction: Some(Construction {
                theorem: a.thm,
                form,
                predicted_hull: predicted,
                args: ConstructArgs {
                    out: None,
                    ledger: None,
                    ..a.clone()
                },
            }),
        };
        write_json(path, &file)?;
    }
    if let Some(path) = &a.ledger {
        append_ledger(
            path,
            &LedgerRow {
                theorem: a.thm,
                q: a.q,
                n: code.n(),
                k: code.k(),
                d_class: dist.class.to_string(),
                form,
                hull: report.gram,
                verified,
            },
        )?;
    }
    if verified {
        Ok(())
    } else {
        Err(Exit::mismatch(format!("predicted hull {predicted}, measured {report:?}")))
    }
}

fn append_ledger(path: &Path, row: &LedgerRow) -> Run {
    let fresh = fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
    let file = OpenOptions::new().create(true).append(true).open(path)?;
    let mut w = csv::WriterBuilder::new().has_headers(fresh).from_writer(file);
    w.serialize(row)?;
    w.flush()?;
    Ok(())
}

// ------------------------------------------------------------------- verify

#[derive(Debug, Serialize)]
struct HullLine {
    form: Form,
    gram: Option<usize>,
    intersection: Option<usize>,
    predicted: Option<usize>,
    agree: bool,
}

#[derive(Debug, Serialize)]
struct VerifyReport {
    n: usize,
    k: usize,
    rank: usize,
    rank_ok: bool,
    distance_class: Option<String>,
    d_lower: Option<usize>,
    d_upper: Option<usize>,
    hulls: Vec<HullLine>,
    ok: bool,
}

fn verify(a: &VerifyArgs) -> Run {
    let budget = budget(a.budget, DEFAULT_SUBSET_BUDGET)?;
    let text = fs::read_to_string(&a.file).map_err(|e| Exit::invalid(format!("{}: {e}", a.file.display())))?;
    let file: CodeFile = serde_json::from_str(&text).map_err(|e| Exit::invalid(format!("{}: {e}", a.file.display())))?;
    let f = file.code.field.build()?;
    let gen = Mat::from_record(&f, &file.code.gen)?;
    let (n, k, rank) = (gen.cols(), gen.rows(), gen.rank());
    let mut report = VerifyReport {
        n,
        k,
        rank,
        rank_ok: rank == k,
        distance_class: None,
        d_lower: None,
        d_upper: None,
        hulls: Vec::new(),
        ok: false,
    };
    if report.rank_ok {
        let code = LinearCode::new(gen)?;
        if k > 0 {
            let d = code.distance_class(budget)?;
            report.distance_class = Some(d.class.to_string());
            report.d_lower = Some(d.d_lower);
            report.d_upper = Some(d.d_upper);
        }
        for form in [Form::Euclidean, Form::Hermitian] {
            let predicted = file
                .construction
                .as_ref()
                .filter(|c| c.form == form)
                .map(|c| c.predicted_hull);
            let line = match code.hull_report(form) {
                Ok(h) => HullLine {
                    form,
                    gram: Some(h.gram),
                    intersection: Some(h.intersection),
                    predicted,
                    agree: h.gram == h.intersection && predicted.is_none_or(|p| p == h.gram),
                },
                // the Hermitian form needs GF(q²)
                Err(Error::NotQuadratic) => HullLine {
                    form,
                    gram: None,
                    intersection: None,
                    predicted,
                    agree: predicted.is_none(),
                },
                Err(e) => return Err(e.into()),
            };
            report.hulls.push(line);
        }
    }
    report.ok = report.rank_ok && report.hulls.iter().all(|h| h.agree);
    print_verify(&report, file.construction.as_ref());
    if let Some(path) = &a.json {
        write_json(path, &report)?;
    }
    if report.ok {
        Ok(())
    } else if !report.rank_ok {
        Err(Exit::mismatch(format!("generator has rank {rank}, expected {k}")))
    } else {
        Err(Exit::mismatch("hull measurements disagree"))
    }
}

fn print_verify(r: &VerifyReport, c: Option<&Construction>) {
    let opt = |v: Option<usize>| v.map_or("-".to_string(), |x| x.to_string());
    match c {
        Some(c) => println!("code from {:?} ({}), n = {}, k = {}", c.theorem, c.form, r.n, r.k),
        None => println!("code without a recorded construction, n = {}, k = {}", r.n, r.k),
    }
    println!("rank {} of {}: {}", r.rank, r.k, if r.rank_ok { "ok" } else { "FAIL" });
    if let Some(class) = &r.distance_class {
        println!("distance {}..{} ({class})", opt(r.d_lower), opt(r.d_upper));
    }
    println!("{:<10} {:>5} {:>13} {:>10} {:>6}", "form", "gram", "intersection", "predicted", "agree");
    for h in &r.hulls {
        println!(
            "{:<10} {:>5} {:>13} {:>10} {:>6}",
            h.form.to_string(),
            opt(h.gram),
            opt(h.intersection),
            opt(h.predicted),
            if h.agree { "yes" } else { "NO" }
        );
    }
}

// ---------------------------------------------------------------- reproduce

fn cmd_reproduce(a: &ReproduceArgs) -> Run {
    let ids: Vec<ExampleId> = if a.example.eq_ignore_ascii_case("all") {
        ExampleId::ALL.to_vec()
    } else {
        vec![a.example.parse()?]
    };
    let reports = ids.into_iter().map(reproduce).collect::<Result<Vec<ExampleReport>, _>>()?;
    let mut bad = 0;
    for rep in &reports {
        println!("example {}", rep.id);
        for c in &rep.checks {
            let tag = if c.ok() { "ok" } else { "MISMATCH" };
            println!("  {tag:<8} {}: expected {} | measured {}", c.label, c.expected, c.measured);
            bad += !c.ok() as usize;
        }
        for note in &rep.notes {
            println!("  note: {note}");
        }
    }
    if let Some(path) = &a.json {
        write_json(path, &reports)?;
    }
    if bad == 0 {
        Ok(())
    } else {
        Err(Exit::mismatch(format!("{bad} golden comparisons failed")))
    }
}

// -------------------------------------------------------------------- sweep

#[derive(Serialize)]
struct CsvRow<'a> {
    q: u32,
    n: usize,
    k: usize,
    d: usize,
    d_exact: bool,
    c: usize,
    source_theorem: &'a str,
    classical_recipe_id: &'a str,
    mds_eaqecc: bool,
    bounds: String,
}

fn parse_qs(specs: &[String]) -> Run<Vec<u32>> {
    let mut qs = Vec::new();
    for s in specs {
        let bad = || Exit::invalid(format!("bad q value {s:?}"));
        if let Some((lo, hi)) = s.split_once('-') {
            let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
            let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
            // ranges skip non prime powers
            qs.extend((lo..=hi).filter(|&q| make_quadratic_extension(q).is_ok()));
        } else {
            let q: u32 = s.trim().parse().map_err(|_| bad())?;
            make_quadratic_extension(q)?;
            qs.push(q);
        }
    }
    qs.sort_unstable();
    qs.dedup();
    Ok(qs)
}

fn sweep(a: &SweepArgs) -> Run {
    let thm: QTheorem = a.thm.parse()?;
    let opts = SweepOptions {
        budget: budget(a.budget, SweepOptions::default().budget)?,
        max_n: a.max_n,
    };
    let mut rows: Vec<SweepRow> = Vec::new();
    for q in parse_qs(&a.q)? {
        let table = sweep_family(thm, q, opts)?;
        for s in &table.skipped {
            eprintln!("skipped {s}");
        }
        rows.extend(table.rows);
    }

    let mut csv_out = csv::Writer::from_writer(Vec::new());
    for r in &rows {
        let p = &r.params;
        csv_out.serialize(CsvRow {
            q: p.q,
            n: p.n,
            k: p.k,
            d: p.d,
            d_exact: p.d_exact,
            c: p.c,
            source_theorem: &p.source_theorem,
            classical_recipe_id: &p.classical_recipe_id,
            mds_eaqecc: r.bounds.mds_eaqecc,
            bounds: r.bounds.triple(),
        })?;
    }
    if rows.is_empty() {
        csv_out.write_record(["q", "n", "k", "d", "d_exact", "c", "source_theorem", "classical_recipe_id", "mds_eaqecc", "bounds"])?;
    }
    let bytes = csv_out.into_inner().map_err(|e| Exit::invalid(e.to_string()))?;
    match &a.csv {
        Some(path) => fs::write(path, &bytes)?,
        None => std::io::stdout().write_all(&bytes)?,
    }
    if let Some(path) = &a.json {
        write_json(path, &rows)?;
    }

    let failing = rows.iter().filter(|r| !r.bounds.all_pass()).count();
    let mismatched = rows.iter().filter(|r| r.d_mismatch()).count();
    eprintln!("{thm}: {} records, {failing} bound-violating, {mismatched} with d differing from the stated value", rows.len());
    if a.check_bounds && failing > 0 {
        return Err(Exit::mismatch(format!("{failing} records violate a bound")));
    }
    Ok(())
}
