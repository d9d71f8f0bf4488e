use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use posetcode::decode::{
    build_plan, build_table, decode_full, decode_leveled_alg1, decode_leveled_alg2, table_sizes,
    DecodePlan, SyndromeTable,
};
use posetcode::decomp::{
    canonical_form, is_canonical, maximal_p_decomposition, DecompositionReport,
};
use posetcode::format::{format_poset, parse_code, parse_poset, parse_vectors};
use posetcode::radius::{packing_radius_bounds, packing_radius_exact};
use posetcode::{selftest, Code, Error, Poset, PrimeField, Vector, DEFAULT_BUDGET};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

const DEFAULT_SEED: u64 = 1;

#[derive(Parser)]
#[command(
    name = "posetcode",
    version,
    about = "Linear codes under poset metrics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Maximum number of steps an exhaustive routine may take.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET, value_parser = positive_budget)]
    budget: u128,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args)]
struct PosetArg {
    #[arg(long)]
    poset: PathBuf,
}

#[derive(Args)]
struct Inputs {
    #[arg(long)]
    poset: PathBuf,
    #[arg(long)]
    code: PathBuf,
}

#[derive(Args)]
struct VectorArgs {
    /// A vector of space-separated residues; may be repeated.
    #[arg(long = "vec")]
    vecs: Vec<String>,
    /// File with one vector per line.
    #[arg(long)]
    vectors: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Decoder {
    Full,
    Alg1,
    Alg2,
}

#[derive(Subcommand)]
enum Command {
    /// Parse the inputs and report basic facts about them.
    Validate {
        #[arg(long)]
        poset: PathBuf,
        #[arg(long)]
        code: Option<PathBuf>,
    },
    /// Bring the generator matrix to canonical form.
    Canonicalize(Inputs),
    /// Maximal decomposition with its witness isometry.
    Decompose(Inputs),
    /// Profile of the maximal decomposition.
    Profile(Inputs),
    /// Degree of the maximal decomposition.
    Degree(Inputs),
    /// Hierarchical upper and lower neighbors of a poset.
    Neighbors(PosetArg),
    /// Poset weight of vectors.
    Weight {
        #[arg(long)]
        poset: PathBuf,
        #[command(flatten)]
        input: VectorArgs,
    },
    /// Minimum poset distance of the code.
    Mindist(Inputs),
    /// Packing radius, exact or bounded.
    Radius {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, conflicts_with = "bounds")]
        exact: bool,
        #[arg(long)]
        bounds: bool,
    },
    /// Syndrome table sizes of the full and leveled decoders.
    TablePlan(Inputs),
    /// Decode received vectors.
    Decode {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        input: VectorArgs,
        #[arg(long, value_enum, default_value = "alg2")]
        decoder: Decoder,
    },
    /// Check the fast algorithms against the brute-force oracles.
    Selftest,
    /// Time canonicalization and decoding on random instances.
    Bench {
        #[arg(long, default_value_t = 20)]
        instances: usize,
        #[arg(long, default_value_t = 10)]
        max_n: usize,
    },
}

fn positive_budget(s: &str) -> Result<u128, String> {
    match s.parse::<u128>() {
        Ok(0) => Err("budget must be positive".into()),
        Ok(b) => Ok(b),
        Err(e) => Err(e.to_string()),
    }
}

enum Failure {
    Input(String),
    Budget(String),
    Invariant(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Budget(_) => 2,
            Failure::Invariant(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Budget(m) | Failure::Invariant(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            Error::Invariant(_) => Failure::Invariant(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_poset(path: &Path) -> Result<Poset, Failure> {
    parse_poset(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_code(path: &Path) -> Result<Code, Failure> {
    parse_code(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_inputs(inputs: &Inputs) -> Result<(Poset, Code), Failure> {
    let p = load_poset(&inputs.poset)?;
    let c = load_code(&inputs.code)?;
    if p.n() != c.n() {
        return Err(Failure::Input(format!(
            "poset has n={} but code has n={}",
            p.n(),
            c.n()
        )));
    }
    Ok((p, c))
}

fn load_vectors(input: &VectorArgs, field: PrimeField, n: usize) -> Result<Vec<Vector>, Failure> {
    let mut out = Vec::new();
    for v in &input.vecs {
        out.extend(
            parse_vectors(v, field, n)
                .map_err(|e| Failure::Input(format!("--vec \"{v}\": {e}")))?,
        );
    }
    if let Some(path) = &input.vectors {
        let text = read(path)?;
        out.extend(
            parse_vectors(&text, field, n)
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?,
        );
    }
    if out.is_empty() {
        return Err(Failure::Input(
            "no vectors given (use --vec or --vectors)".into(),
        ));
    }
    Ok(out)
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn rows_text(rows: &[Vec<u32>]) -> String {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ")
                + "\n"
        })
        .collect()
}

#[derive(Serialize)]
struct PosetReport {
    n: usize,
    relations: Vec<(usize, usize)>,
    levels: Vec<posetcode::CoordSet>,
    hierarchical: bool,
}

impl From<&Poset> for PosetReport {
    fn from(p: &Poset) -> Self {
        PosetReport {
            n: p.n(),
            relations: p.cover_pairs(),
            levels: p.levels(),
            hierarchical: p.is_hierarchical(),
        }
    }
}

#[derive(Serialize)]
struct CodeSummary {
    q: u32,
    n: usize,
    k: usize,
}

#[derive(Serialize)]
struct ValidateReport {
    poset: PosetReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    code: Option<CodeSummary>,
}

fn validate(cli: &Cli, poset: &Path, code: Option<&Path>) -> Outcome {
    let p = load_poset(poset)?;
    let c = code.map(load_code).transpose()?;
    if let Some(c) = &c {
        if c.n() != p.n() {
            return Err(Failure::Input(format!(
                "poset has n={} but code has n={}",
                p.n(),
                c.n()
            )));
        }
    }
    let report = ValidateReport {
        poset: PosetReport::from(&p),
        code: c.map(|c| CodeSummary {
            q: c.q(),
            n: c.n(),
            k: c.k(),
        }),
    };
    if cli.json {
        return Ok(json(&report));
    }
    let mut out = String::new();
    let levels: Vec<String> = report.poset.levels.iter().map(|l| l.to_string()).collect();
    writeln!(
        out,
        "poset: n={} levels={} hierarchical={}",
        p.n(),
        levels.join(" "),
        p.is_hierarchical()
    )
    .unwrap();
    if let Some(c) = report.code {
        writeln!(out, "code: q={} n={} k={}", c.q, c.n, c.k).unwrap();
    }
    Ok(out)
}

#[derive(Serialize)]
struct CanonicalReport {
    matrix: Vec<Vec<u32>>,
    witness: Vec<Vec<u32>>,
    canonical: bool,
    profile: Vec<(usize, usize)>,
    degree: usize,
}

fn canonicalize(cli: &Cli, inputs: &Inputs) -> Outcome {
    let (p, c) = load_inputs(inputs)?;
    let cf = canonical_form(c.generator(), &p)?;
    let pd = maximal_p_decomposition(&c, &p)?;
    let report = CanonicalReport {
        canonical: is_canonical(&cf.matrix, &p),
        matrix: cf.matrix.to_rows(),
        witness: cf.witness.to_rows(),
        profile: pd.profile().entries(),
        degree: pd.degree(),
    };
    if cli.json {
        return Ok(json(&report));
    }
    Ok(format!(
        "{}profile {}\ndegree {}\n",
        rows_text(&report.matrix),
        pd.profile(),
        report.degree
    ))
}

fn decompose(cli: &Cli, inputs: &Inputs) -> Outcome {
    let (p, c) = load_inputs(inputs)?;
    let pd = maximal_p_decomposition(&c, &p)?;
    pd.validate(&p)?;
    let report = DecompositionReport::from(&pd);
    if cli.json {
        return Ok(json(&report));
    }
    let mut out = String::new();
    writeln!(out, "pointer {}", report.pointer_support).unwrap();
    for (i, comp) in report.components.iter().enumerate() {
        writeln!(out, "component {} support {}", i + 1, comp.support).unwrap();
        out.push_str(&rows_text(&comp.generators));
    }
    writeln!(out, "profile {}\ndegree {}", pd.profile(), report.degree).unwrap();
    writeln!(out, "witness").unwrap();
    out.push_str(&rows_text(&report.witness));
    Ok(out)
}

#[derive(Serialize)]
struct ProfileReport {
    profile: Vec<(usize, usize)>,
    degree: usize,
}

fn profile(cli: &Cli, inputs: &Inputs, degree_only: bool) -> Outcome {
    let (p, c) = load_inputs(inputs)?;
    let pd = maximal_p_decomposition(&c, &p)?;
    let report = ProfileReport {
        profile: pd.profile().entries(),
        degree: pd.degree(),
    };
    Ok(match (cli.json, degree_only) {
        (true, false) => json(&report),
        (true, true) => json(&serde_json::json!({ "degree": report.degree })),
        (false, false) => format!("{}\n", pd.profile()),
        (false, true) => format!("{}\n", report.degree),
    })
}

#[derive(Serialize)]
struct NeighborsReport {
    upper: PosetReport,
    lower: PosetReport,
}

fn neighbors(cli: &Cli, poset: &Path) -> Outcome {
    let p = load_poset(poset)?;
    let (up, down) = (p.upper_neighbor(), p.lower_neighbor());
    if cli.json {
        return Ok(json(&NeighborsReport {
            upper: PosetReport::from(&up),
            lower: PosetReport::from(&down),
        }));
    }
    Ok(format!(
        "# upper\n{}# lower\n{}",
        format_poset(&up),
        format_poset(&down)
    ))
}

#[derive(Serialize)]
struct WeightReport {
    vector: Vec<u32>,
    weight: usize,
}

fn weight(cli: &Cli, poset: &Path, input: &VectorArgs) -> Outcome {
    let p = load_poset(poset)?;
    let field = PrimeField::new(input_field(input)?).map_err(Failure::from)?;
    let vectors = load_vectors(input, field, p.n())?;
    let mut reports = Vec::new();
    for v in &vectors {
        reports.push(WeightReport {
            vector: v.residues().to_vec(),
            weight: v.p_weight(&p)?,
        });
    }
    if cli.json {
        return Ok(json(&reports));
    }
    Ok(reports.iter().map(|r| format!("{}\n", r.weight)).collect())
}

/// Weights depend only on supports, so any field that holds the largest
/// residue will do.
fn input_field(input: &VectorArgs) -> Result<u64, Failure> {
    let mut text = input.vecs.join("\n");
    if let Some(path) = &input.vectors {
        text.push('\n');
        text.push_str(&read(path)?);
    }
    let largest = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(str::split_whitespace)
        .filter_map(|t| t.parse::<u64>().ok())
        .max()
        .unwrap_or(0);
    let mut p = (largest + 1).max(2);
    while PrimeField::new(p).is_err() {
        p += 1;
    }
    Ok(p)
}

fn mindist(cli: &Cli, inputs: &Inputs) -> Outcome {
    let (p, c) = load_inputs(inputs)?;
    let d = c.min_distance(&p, cli.budget)?;
    Ok(if cli.json {
        json(&serde_json::json!({ "min_distance": d }))
    } else {
        format!("{d}\n")
    })
}

fn radius(cli: &Cli, inputs: &Inputs, exact: bool) -> Outcome {
    let (p, c) = load_inputs(inputs)?;
    if exact {
        let r = packing_radius_exact(&c, &p, cli.budget)?;
        return Ok(if cli.json {
            json(&serde_json::json!({ "exact": r }))
        } else {
            format!("{r}\n")
        });
    }
    let b = packing_radius_bounds(&c, &p, cli.budget)?;
    if cli.json {
        return Ok(json(&b));
    }
    let mut out = format!("lower {}\nupper {}\n", b.lower, b.upper);
    if let Some(r) = b.exact {
        writeln!(out, "exact {r}").unwrap();
    }
    Ok(out)
}

fn table_plan(cli: &Cli, inputs: &Inputs) -> Outcome {
    let (p, c) = load_inputs(inputs)?;
    let plan = build_plan(&c, &p, cli.budget)?;
    let t = table_sizes(&plan, &p);
    if cli.json {
        return Ok(json(&t));
    }
    let mut out = String::new();
    writeln!(out, "q={} n={} k={} pointer={}", t.q, t.n, t.k, t.pointer).unwrap();
    for (i, g) in t.groups.iter().enumerate() {
        let parts: Vec<String> = g
            .iter()
            .map(|c| format!("({},{})", t.components[*c].0, t.components[*c].1))
            .collect();
        writeln!(out, "group {}: {}", i + 1, parts.join(" ")).unwrap();
    }
    writeln!(out, "full {}", t.full).unwrap();
    writeln!(out, "reduced {}", t.reduced).unwrap();
    writeln!(out, "leveled total {}", t.leveled_total).unwrap();
    writeln!(out, "worst single lookup {}", t.worst_single_lookup).unwrap();
    writeln!(out, "stored total {}", t.stored_total).unwrap();
    Ok(out)
}

#[derive(Serialize)]
struct DecodeReport {
    received: Vec<u32>,
    codeword: Vec<u32>,
    distance: usize,
}

enum Prepared {
    Table(SyndromeTable),
    Plan(DecodePlan),
}

fn decode(cli: &Cli, inputs: &Inputs, input: &VectorArgs, decoder: Decoder) -> Outcome {
    let (p, c) = load_inputs(inputs)?;
    let received = load_vectors(input, c.field(), c.n())?;
    let prepared = match decoder {
        Decoder::Full => Prepared::Table(build_table(&c, &p, cli.budget)?),
        Decoder::Alg1 | Decoder::Alg2 => Prepared::Plan(build_plan(&c, &p, cli.budget)?),
    };
    let mut reports = Vec::new();
    for y in &received {
        let x = match (&prepared, decoder) {
            (Prepared::Table(t), _) => decode_full(t, y)?,
            (Prepared::Plan(plan), Decoder::Alg1) => decode_leveled_alg1(plan, y)?,
            (Prepared::Plan(plan), _) => decode_leveled_alg2(plan, y)?,
        };
        reports.push(DecodeReport {
            received: y.residues().to_vec(),
            distance: y.p_distance(&x, &p)?,
            codeword: x.residues().to_vec(),
        });
    }
    if cli.json {
        return Ok(json(&reports));
    }
    Ok(reports
        .iter()
        .map(|r| {
            format!(
                "{} {}",
                rows_text(std::slice::from_ref(&r.codeword)).trim_end(),
                r.distance
            ) + "\n"
        })
        .collect())
}

fn run_selftest(cli: &Cli) -> Outcome {
    let results = selftest::run(cli.seed)?;
    let failed = results.iter().filter(|r| !r.passed()).count();
    let out = if cli.json {
        json(&results)
    } else {
        let mut out = String::new();
        for r in &results {
            let status = if r.passed() { "PASS" } else { "FAIL" };
            writeln!(
                out,
                "{status} {} ({} instances, {} failures)",
                r.name, r.instances, r.failures
            )
            .unwrap();
            if let Some(d) = &r.detail {
                for line in d.lines() {
                    writeln!(out, "    {line}").unwrap();
                }
            }
        }
        out
    };
    if failed > 0 {
        print!("{out}");
        return Err(Failure::Invariant(format!(
            "{failed} selftest properties failed"
        )));
    }
    Ok(out)
}

#[derive(Serialize)]
struct BenchReport {
    instances: usize,
    canonicalize_ms: f64,
    plan_ms: f64,
    decode_full_ms: f64,
    decode_alg2_ms: f64,
    decoded_vectors: usize,
}

fn bench(cli: &Cli, instances: usize, max_n: usize) -> Outcome {
    if !(2..=16).contains(&max_n) {
        return Err(Failure::Input("--max-n must be in [2, 16]".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let f = PrimeField::BINARY;
    let mut report = BenchReport {
        instances,
        canonicalize_ms: 0.0,
        plan_ms: 0.0,
        decode_full_ms: 0.0,
        decode_alg2_ms: 0.0,
        decoded_vectors: 0,
    };
    let ms = |t: Instant| t.elapsed().as_secs_f64() * 1e3;
    for _ in 0..instances {
        let n = rng.gen_range(2..=max_n);
        let k = rng.gen_range(1..=n.min(6));
        let p = Poset::random(n, rng.gen_range(0.0..0.7), &mut rng)?;
        let c = Code::random(f, n, k, &mut rng)?;
        let t = Instant::now();
        canonical_form(c.generator(), &p)?;
        report.canonicalize_ms += ms(t);
        let t = Instant::now();
        let table = build_table(&c, &p, cli.budget)?;
        let plan = build_plan(&c, &p, cli.budget)?;
        report.plan_ms += ms(t);
        let ys: Vec<Vector> = (0..64).map(|_| Vector::random(f, n, &mut rng)).collect();
        let t = Instant::now();
        for y in &ys {
            decode_full(&table, y)?;
        }
        report.decode_full_ms += ms(t);
        let t = Instant::now();
        for y in &ys {
            decode_leveled_alg2(&plan, y)?;
        }
        report.decode_alg2_ms += ms(t);
        report.decoded_vectors += ys.len();
    }
    if cli.json {
        return Ok(json(&report));
    }
    Ok(format!(
        "instances {}\ncanonicalize {:.3} ms\nplan {:.3} ms\ndecode full {:.3} ms\ndecode alg2 {:.3} ms\nvectors {}\n",
        report.instances,
        report.canonicalize_ms,
        report.plan_ms,
        report.decode_full_ms,
        report.decode_alg2_ms,
        report.decoded_vectors
    ))
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Validate { poset, code } => validate(cli, poset, code.as_deref()),
        Command::Canonicalize(i) => canonicalize(cli, i),
        Command::Decompose(i) => decompose(cli, i),
        Command::Profile(i) => profile(cli, i, false),
        Command::Degree(i) => profile(cli, i, true),
        Command::Neighbors(a) => neighbors(cli, &a.poset),
        Command::Weight { poset, input } => weight(cli, poset, input),
        Command::Mindist(i) => mindist(cli, i),
        Command::Radius { inputs, exact, .. } => radius(cli, inputs, *exact),
        Command::TablePlan(i) => table_plan(cli, i),
        Command::Decode {
            inputs,
            input,
            decoder,
        } => decode(cli, inputs, input, *decoder),
        Command::Selftest => run_selftest(cli),
        Command::Bench { instances, max_n } => bench(cli, *instances, *max_n),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_classes_map_to_exit_codes() {
        let budget = Error::BudgetExceeded {
            required: 9,
            budget: 1,
        };
        assert_eq!(Failure::from(budget).code(), 2);
        assert_eq!(Failure::from(Error::Invariant("x".into())).code(), 3);
        assert_eq!(Failure::from(Error::ZeroDimension).code(), 1);
    }

    #[test]
    fn weight_field_covers_largest_residue() {
        let input = VectorArgs {
            vecs: vec!["0 4 1".into()],
            vectors: None,
        };
        assert_eq!(input_field(&input).ok(), Some(5));
    }

    #[test]
    fn budget_must_be_positive() {
        assert!(positive_budget("0").is_err());
        assert_eq!(positive_budget("12"), Ok(12));
    }
}
