//! `gabidulin`: encode, corrupt, list-decode and inspect Gabidulin codes.
//!
//! Exit codes: 0 ok, 1 I/O, 2 invalid input, 3 budget exceeded,
//! 4 oracle mismatch.

use std::fs;
use std::io::{self, BufRead, Read};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use gabidulin::channel::{corrupt, random_message};
use gabidulin::format::{
    basis_json, format_vector_int, format_vector_text, parse_vector, CodeDescriptor, OutcomeJson,
};
use gabidulin::oracle::{brute_force_closest, DEFAULT_ORACLE_BUDGET};
use gabidulin::{
    interpolation_trace, DecodeOptions, DecodeOutcome, Error, FElem, Field, FieldCtx,
    FieldDescriptor, GabidulinCode, LinPoly, Mat2,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "gabidulin",
    version,
    about = "Gabidulin rank-metric codes with minimal-list decoding"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Code descriptor `{"field": {...}, "g": [...], "k": ...}`, as a file or inline JSON
    #[arg(long, global = true)]
    code: Option<String>,
    /// Field descriptor `{"p": 2, "m": 3, ...}`, as a file or inline JSON
    #[arg(long, global = true)]
    field: Option<String>,
    /// Evaluation points, comma separated
    #[arg(long, global = true)]
    g: Option<String>,
    /// Code dimension
    #[arg(long, global = true)]
    k: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// RNG seed; drawn from the clock when omitted
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Candidate budget per decoding level, also caps oracle enumeration
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Decoder worker threads
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Print every intermediate basis
    #[arg(long, global = true)]
    trace: bool,
    /// Cross-check each decode against exhaustive search
    #[arg(long, global = true)]
    verify: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Vectors come from one inline value or from newline-delimited input.
#[derive(Args)]
struct Source {
    /// File with one vector per line, or `-` for stdin
    #[arg(long)]
    input: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Encode message coefficients (little-endian by q-power)
    Encode {
        #[arg(long)]
        message: Option<String>,
        #[command(flatten)]
        source: Source,
    },
    /// Add a random error of rank exactly `--rank`
    Corrupt {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        codeword: Option<String>,
        #[command(flatten)]
        source: Source,
    },
    /// List-decode received words
    Decode {
        #[arg(long)]
        received: Option<String>,
        #[command(flatten)]
        source: Source,
    },
    /// Print the interpolation basis of received words
    Basis {
        #[arg(long)]
        received: Option<String>,
        #[command(flatten)]
        source: Source,
    },
    /// Compare the decoder with exhaustive search, on given words or on
    /// `--count` random corrupted codewords
    Verify {
        #[arg(long)]
        received: Option<String>,
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 20)]
        count: usize,
        /// Error rank for random instances; random when omitted
        #[arg(long)]
        rank: Option<usize>,
    },
}

enum Failure {
    Io(String),
    Invalid(String),
    Budget(String),
    Mismatch(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Invalid(_) => 2,
            Failure::Budget(_) => 3,
            Failure::Mismatch(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Io(m) | Failure::Invalid(m) | Failure::Budget(m) | Failure::Mismatch(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

type Res<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = cli.common.seed.unwrap_or_else(|| {
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_nanos() as u64)
            .unwrap_or(0)
    });
    eprintln!("seed: {seed}");
    match run(&cli, seed) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: &Cli, seed: u64) -> Res<()> {
    let code = load_code(&cli.common)?;
    let field = code.field().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let common = &cli.common;
    let out = Output {
        field: &field,
        format: common.format,
    };
    match &cli.command {
        Command::Encode { message, source } => {
            for v in read_vectors(&field, message.as_deref(), source)? {
                let poly = LinPoly::from_coeffs(&field, v)?;
                out.vector(&code.encode(&code.message(poly)?));
            }
        }
        Command::Corrupt {
            rank,
            codeword,
            source,
        } => {
            for v in read_vectors(&field, codeword.as_deref(), source)? {
                check_len(&v, code.n())?;
                out.vector(&corrupt(&field, &v, *rank, &mut rng)?);
            }
        }
        Command::Decode { received, source } => {
            let mut mismatches = 0;
            for (i, r) in read_vectors(&field, received.as_deref(), source)?
                .iter()
                .enumerate()
            {
                let outcome = code.list_decode_with(r, &decode_options(common))?;
                out.outcome(&outcome, code.k(), i);
                if common.verify && !verify_one(&code, r, &outcome, oracle_budget(common))? {
                    mismatches += 1;
                }
            }
            if mismatches > 0 {
                return Err(Failure::Mismatch(format!(
                    "{mismatches} decodes disagree with exhaustive search"
                )));
            }
        }
        Command::Basis { received, source } => {
            for (i, r) in read_vectors(&field, received.as_deref(), source)?
                .iter()
                .enumerate()
            {
                let steps = interpolation_trace(&field, code.g(), r, code.k())?;
                let shown: Vec<(usize, &Mat2)> = if common.trace {
                    steps
                        .iter()
                        .enumerate()
                        .map(|(s, st)| (s + 1, &st.basis))
                        .collect()
                } else {
                    vec![(steps.len(), &steps.last().expect("n >= 1").basis)]
                };
                out.bases(&shown, common.trace, i);
            }
        }
        Command::Verify {
            received,
            source,
            count,
            rank,
        } => {
            let words = if received.is_some() || source.input.is_some() {
                read_vectors(&field, received.as_deref(), source)?
            } else {
                random_instances(&code, *count, *rank, &mut rng)?
            };
            let mut matched = 0;
            for (i, r) in words.iter().enumerate() {
                let outcome = code.list_decode_with(r, &decode_options(common))?;
                let ok = verify_one(&code, r, &outcome, oracle_budget(common))?;
                out.verdict(i, r, &outcome, ok);
                matched += ok as usize;
            }
            eprintln!("{matched}/{} MATCH", words.len());
            if matched != words.len() {
                return Err(Failure::Mismatch(format!(
                    "{} mismatches",
                    words.len() - matched
                )));
            }
        }
    }
    Ok(())
}

fn decode_options(common: &Common) -> DecodeOptions {
    let mut opts = DecodeOptions {
        jobs: common.jobs.max(1),
        ..DecodeOptions::default()
    };
    if let Some(b) = common.budget {
        opts.budget = b;
    }
    opts
}

fn oracle_budget(common: &Common) -> u64 {
    common.budget.unwrap_or(DEFAULT_ORACLE_BUDGET)
}

fn verify_one(
    code: &GabidulinCode,
    r: &[FElem],
    outcome: &DecodeOutcome,
    budget: u64,
) -> Res<bool> {
    let oracle = brute_force_closest(code, r, budget)?;
    let mut ours: Vec<Vec<FElem>> = outcome.entries.iter().map(|e| e.codeword.clone()).collect();
    ours.sort();
    let ok = oracle.distance == outcome.distance && oracle.codewords == ours;
    eprintln!("verify: {}", if ok { "MATCH" } else { "MISMATCH" });
    Ok(ok)
}

fn random_instances<R: Rng>(
    code: &GabidulinCode,
    count: usize,
    rank: Option<usize>,
    rng: &mut R,
) -> Res<Vec<Vec<FElem>>> {
    let max = code.n().min(code.field().m() as usize);
    (0..count)
        .map(|_| {
            let t = rank.unwrap_or_else(|| rng.random_range(0..=max));
            let c = code.encode(&random_message(code, rng));
            Ok(corrupt(code.field(), &c, t, rng)?)
        })
        .collect()
}

/// Inline JSON if it looks like an object, otherwise a file path.
fn json_arg(arg: &str) -> Res<String> {
    if arg.trim_start().starts_with('{') {
        Ok(arg.to_string())
    } else {
        fs::read_to_string(arg).map_err(|e| Failure::Io(format!("{arg}: {e}")))
    }
}

fn load_code(common: &Common) -> Res<GabidulinCode> {
    if let Some(code) = &common.code {
        if common.field.is_some() || common.g.is_some() || common.k.is_some() {
            return Err(Failure::Invalid(
                "--code excludes --field, --g and --k".into(),
            ));
        }
        let desc: CodeDescriptor = serde_json::from_str(&json_arg(code)?)
            .map_err(|e| Failure::Invalid(format!("code descriptor: {e}")))?;
        return Ok(desc.build()?);
    }
    let (Some(field), Some(g), Some(k)) = (&common.field, &common.g, common.k) else {
        return Err(Failure::Invalid(
            "give --code, or all of --field, --g and --k".into(),
        ));
    };
    let desc: FieldDescriptor = serde_json::from_str(&json_arg(field)?)
        .map_err(|e| Failure::Invalid(format!("field descriptor: {e}")))?;
    let field = FieldCtx::from_descriptor(&desc)?;
    let g = parse_vector(&field, g)?;
    Ok(GabidulinCode::new(&field, g, k)?)
}

fn read_vectors(field: &Field, inline: Option<&str>, source: &Source) -> Res<Vec<Vec<FElem>>> {
    let text = match (inline, source.input.as_deref()) {
        (Some(v), None) => v.to_string(),
        (None, Some("-")) => {
            let mut s = String::new();
            io::stdin()
                .lock()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Io(format!("stdin: {e}")))?;
            s
        }
        (None, Some(path)) => {
            fs::read_to_string(path).map_err(|e| Failure::Io(format!("{path}: {e}")))?
        }
        (Some(_), Some(_)) => {
            return Err(Failure::Invalid(
                "give a vector inline or --input, not both".into(),
            ))
        }
        (None, None) => return Err(Failure::Invalid("no input vector given".into())),
    };
    let vectors: Vec<Vec<FElem>> = text
        .as_bytes()
        .lines()
        .map_while(|l| l.ok())
        .filter(|l| !l.trim().is_empty())
        .map(|l| parse_vector(field, &l))
        .collect::<Result<_, _>>()?;
    if vectors.is_empty() {
        return Err(Failure::Invalid("input holds no vectors".into()));
    }
    Ok(vectors)
}

fn check_len(v: &[FElem], n: usize) -> Res<()> {
    if v.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: v.len(),
        }
        .into());
    }
    Ok(())
}

#[derive(Serialize)]
struct Verdict {
    instance: usize,
    received: Vec<u32>,
    distance: usize,
    list: usize,
    #[serde(rename = "match")]
    matched: bool,
}

struct Output<'a> {
    field: &'a Field,
    format: Format,
}

impl Output<'_> {
    fn vector(&self, v: &[FElem]) {
        match self.format {
            Format::Text => println!("{}", format_vector_text(self.field, v)),
            Format::Json => println!("[{}]", format_vector_int(v)),
        }
    }

    fn outcome(&self, outcome: &DecodeOutcome, k: usize, index: usize) {
        match self.format {
            Format::Json => println!("{}", to_json(&OutcomeJson::of(outcome, k))),
            Format::Text => {
                if index > 0 {
                    println!();
                }
                println!("distance {}", outcome.distance);
                println!("j {}", outcome.j_final);
                println!("list {}", outcome.entries.len());
                for e in &outcome.entries {
                    let coeffs: Vec<FElem> = (0..k).map(|i| e.message.poly().coeff(i)).collect();
                    println!(
                        "  message {}  ({})  codeword {}  error {}",
                        format_vector_text(self.field, &coeffs),
                        e.message.poly(),
                        format_vector_text(self.field, &e.codeword),
                        format_vector_text(self.field, &e.error)
                    );
                }
            }
        }
    }

    fn bases(&self, shown: &[(usize, &Mat2)], trace: bool, index: usize) {
        match self.format {
            Format::Json if trace => {
                let all: Vec<_> = shown.iter().map(|(_, b)| basis_json(b)).collect();
                println!("{}", to_json(&all));
            }
            Format::Json => println!("{}", to_json(&basis_json(shown[0].1))),
            Format::Text => {
                if index > 0 {
                    println!();
                }
                for (i, b) in shown {
                    println!("B{i}");
                    for row in &b.rows {
                        println!("  [{}, {}]", row.first, row.second);
                    }
                }
            }
        }
    }

    fn verdict(&self, index: usize, r: &[FElem], outcome: &DecodeOutcome, ok: bool) {
        match self.format {
            Format::Json => println!(
                "{}",
                to_json(&Verdict {
                    instance: index,
                    received: r.iter().map(|a| a.value()).collect(),
                    distance: outcome.distance,
                    list: outcome.entries.len(),
                    matched: ok,
                })
            ),
            Format::Text => println!(
                "{index}: {} distance {} list {} received {}",
                if ok { "MATCH" } else { "MISMATCH" },
                outcome.distance,
                outcome.entries.len(),
                format_vector_text(self.field, r)
            ),
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}
