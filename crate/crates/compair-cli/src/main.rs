//! Command-line front end: construct / verify / project / classify / search
//! over JSON pair records.
//!
//! Exit codes: 0 = success (predicate true, classification standard, search
//! found only standard/witnessed pairs); 1 = predicate false, non-standard
//! classification or unwitnessed pairs; 2 = usage error or malformed input;
//! 3 = resource limit.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use compair::arrays::ArrayPair;
use compair::construct::{
    parse_bitstring, standard_mixed_array_pair, standard_type2_array_pair, MixedParams,
    Type2Params,
};
use compair::error::Error;
use compair::project::{project_mixed_pair, project_type2_pair, Permutation};
use compair::records::{ArrayPairRecord, PairRecord, ParamsRecord, RecordKind, SeqPairRecord};
use compair::search::{
    classify_mixed_array_pair, classify_type2_array_pair, find_projection_witnesses,
    search_mixed_array_pairs, search_type2_array_pairs, search_type2_sequence_pairs,
    search_type3_sequence_pairs, ProjectionWitness, SearchOptions, SearchReport, SequenceKind,
};
use compair::sequences::{is_type1_seq_pair, is_type2_seq_pair, is_type3_seq_pair};

const EXIT_FALSE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "compair",
    version,
    about = "Construct, verify, project, classify and search binary complementary pairs"
)]
struct Cli {
    /// Seed for randomized operations (reserved; the fixed default keeps
    /// runs reproducible).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a standard pair for the given family parameters as JSON
    Construct(ConstructArgs),
    /// Evaluate a complementarity predicate on a pair record
    Verify(VerifyArgs),
    /// Project an array pair record to a sequence pair record
    Project(ProjectArgs),
    /// Match a pair against its standard family, or find projection witnesses
    Classify(ClassifyArgs),
    /// Exhaustively search for complementary pairs and emit a report
    Search(SearchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    #[value(name = "type1-array")]
    Type1Array,
    #[value(name = "type2-array")]
    Type2Array,
    #[value(name = "type3-array")]
    Type3Array,
    #[value(name = "mixed")]
    Mixed,
    #[value(name = "type1-seq")]
    Type1Seq,
    #[value(name = "type2-seq")]
    Type2Seq,
    #[value(name = "type3-seq")]
    Type3Seq,
}

impl KindArg {
    fn record_kind(self) -> RecordKind {
        match self {
            KindArg::Type1Array => RecordKind::Type1Array,
            KindArg::Type2Array => RecordKind::Type2Array,
            KindArg::Type3Array => RecordKind::Type3Array,
            KindArg::Mixed => RecordKind::Mixed,
            KindArg::Type1Seq => RecordKind::Type1Seq,
            KindArg::Type2Seq => RecordKind::Type2Seq,
            KindArg::Type3Seq => RecordKind::Type3Seq,
        }
    }
}

#[derive(Args)]
struct ConstructArgs {
    /// Family to construct: type2-array or mixed
    #[arg(long)]
    kind: KindArg,
    /// Number of Type-II variables
    #[arg(long)]
    m: usize,
    /// Linear coefficients c_1..c_m as a bit string, e.g. "010"
    #[arg(long)]
    c: Option<String>,
    /// For type2-array the constant term of f; for mixed the x0 coefficient
    #[arg(long)]
    c0: Option<u8>,
    /// Constant term of g - f
    #[arg(long)]
    cprime: Option<u8>,
    /// Mixed only: bilinear coefficients e_1..e_m as a bit string
    #[arg(long)]
    e: Option<String>,
    /// Mixed only: x0 coefficient of g - f
    #[arg(long)]
    e0: Option<u8>,
    /// Mixed only: constant term of f
    #[arg(long)]
    cconst: Option<u8>,
    /// Write the record here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Predicate to check; defaults to the record's own kind
    #[arg(long)]
    kind: Option<KindArg>,
    /// Pair record JSON file
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ProjectArgs {
    /// Array pair record JSON file (type2-array or mixed)
    #[arg(long)]
    input: PathBuf,
    /// Permutation as a 1-based image list, e.g. "2,1"; defaults to identity
    #[arg(long)]
    perm: Option<String>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Kind to classify against; defaults to the record's own kind
    #[arg(long)]
    kind: Option<KindArg>,
    /// Pair record JSON file
    #[arg(long)]
    input: PathBuf,
    /// For sequence kinds, list every witness instead of only the first
    #[arg(long)]
    all_witnesses: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    /// Search space: type2-array, mixed, type2-seq or type3-seq
    #[arg(long)]
    kind: KindArg,
    /// Number of Type-II variables (array kinds)
    #[arg(long)]
    m: Option<usize>,
    /// Sequence length (sequence kinds)
    #[arg(long)]
    length: Option<usize>,
    /// Worker threads for the lookup phase
    #[arg(long)]
    workers: Option<usize>,
    /// Allow sizes above the configured cutoffs
    #[arg(long)]
    force: bool,
    /// Attach every projection witness instead of just the first
    #[arg(long)]
    all_witnesses: bool,
    /// Write the report here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    /// Append a one-line CSV summary (kind, size, count, nonstandard_count,
    /// runtime_ms) to this file
    #[arg(long)]
    csv: Option<PathBuf>,
}

fn main() -> std::process::ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::ResourceLimit(_) => EXIT_RESOURCE,
                _ => EXIT_USAGE,
            };
            std::process::ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Construct(args) => construct(args),
        Command::Verify(args) => verify(args),
        Command::Project(args) => project(args),
        Command::Classify(args) => classify(args),
        Command::Search(args) => search(args),
    }
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match output {
        Some(path) => std::fs::write(path, format!("{text}\n"))?,
        None => println!("{text}"),
    }
    Ok(())
}

fn read_record(path: &PathBuf) -> Result<PairRecord, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    PairRecord::from_json(&text)
}

fn bit_flag(value: Option<u8>, name: &str) -> Result<bool, Error> {
    match value {
        None | Some(0) => Ok(false),
        Some(1) => Ok(true),
        Some(other) => Err(Error::InvalidInput(format!(
            "--{name} must be 0 or 1, got {other}"
        ))),
    }
}

fn bit_vector(value: &Option<String>, m: usize, name: &str) -> Result<Vec<bool>, Error> {
    match value {
        None => Ok(vec![false; m]),
        Some(s) => {
            let bits = parse_bitstring(s)?;
            if bits.len() != m {
                return Err(Error::InvalidInput(format!(
                    "--{name} must have exactly m={m} bits, got {}",
                    bits.len()
                )));
            }
            Ok(bits)
        }
    }
}

fn construct(args: ConstructArgs) -> Result<u8, Error> {
    let record = match args.kind {
        KindArg::Type2Array => {
            for (flag, name) in [(&args.e, "e")] {
                if flag.is_some() {
                    return Err(Error::InvalidInput(format!(
                        "--{name} only applies to --kind mixed"
                    )));
                }
            }
            if args.e0.is_some() || args.cconst.is_some() {
                return Err(Error::InvalidInput(
                    "--e0 and --cconst only apply to --kind mixed".into(),
                ));
            }
            let params = Type2Params::new(
                args.m,
                bit_vector(&args.c, args.m, "c")?,
                bit_flag(args.c0, "c0")?,
                bit_flag(args.cprime, "cprime")?,
            )?;
            let pair = standard_type2_array_pair(&params);
            ArrayPairRecord::from_pair(&pair).with_params(ParamsRecord::from(&params))
        }
        KindArg::Mixed => {
            let params = MixedParams::new(
                args.m,
                bit_vector(&args.e, args.m, "e")?,
                bit_vector(&args.c, args.m, "c")?,
                bit_flag(args.c0, "c0")?,
                bit_flag(args.cconst, "cconst")?,
                bit_flag(args.e0, "e0")?,
                bit_flag(args.cprime, "cprime")?,
            )?;
            let pair = standard_mixed_array_pair(&params);
            ArrayPairRecord::from_pair(&pair).with_params(ParamsRecord::from(&params))
        }
        _ => {
            return Err(Error::InvalidInput(
                "construct supports --kind type2-array and --kind mixed".into(),
            ))
        }
    };
    emit(
        &args.output,
        &serde_json::to_string_pretty(&record).expect("record serialization"),
    )?;
    Ok(0)
}

fn verify(args: VerifyArgs) -> Result<u8, Error> {
    let record = read_record(&args.input)?;
    let kind = args
        .kind
        .map(KindArg::record_kind)
        .unwrap_or_else(|| record.kind());
    let holds = match &record {
        PairRecord::Array(r) => {
            if !kind.is_array_kind() {
                return Err(Error::InvalidInput(format!(
                    "kind {kind} does not apply to an array record"
                )));
            }
            let base = r.to_pair()?;
            let pair = ArrayPair::new(
                base.f().clone(),
                base.g().clone(),
                kind.to_pair_kind().expect("array kind"),
            )?;
            pair.is_complementary()
        }
        PairRecord::Seq(r) => {
            if !kind.is_seq_kind() {
                return Err(Error::InvalidInput(format!(
                    "kind {kind} does not apply to a sequence record"
                )));
            }
            let (f, g) = r.to_seqs()?;
            match kind {
                RecordKind::Type1Seq => is_type1_seq_pair(&f, &g)?,
                RecordKind::Type2Seq => is_type2_seq_pair(&f, &g)?,
                RecordKind::Type3Seq => is_type3_seq_pair(&f, &g)?,
                _ => unreachable!("sequence kinds handled above"),
            }
        }
    };
    let result = serde_json::json!({ "kind": kind.as_str(), "holds": holds });
    emit(&args.output, &serde_json::to_string_pretty(&result).unwrap())?;
    Ok(if holds { 0 } else { EXIT_FALSE })
}

fn project(args: ProjectArgs) -> Result<u8, Error> {
    let record = read_record(&args.input)?;
    let r = match &record {
        PairRecord::Array(r) => r,
        PairRecord::Seq(_) => {
            return Err(Error::InvalidInput(
                "project expects an array pair record".into(),
            ))
        }
    };
    let pair = r.to_pair()?;
    let (seq_kind, seqs) = match r.kind {
        RecordKind::Type2Array => {
            let perm = match &args.perm {
                Some(s) => Permutation::parse(s)?,
                None => Permutation::identity(pair.variables()),
            };
            (RecordKind::Type2Seq, project_type2_pair(&pair, &perm)?)
        }
        RecordKind::Mixed => {
            let perm = match &args.perm {
                Some(s) => Permutation::parse(s)?,
                None => Permutation::identity(pair.variables() - 1),
            };
            (RecordKind::Type3Seq, project_mixed_pair(&pair, &perm)?)
        }
        other => {
            return Err(Error::InvalidInput(format!(
                "projection supports type2-array and mixed records, got {other}"
            )))
        }
    };
    let out = SeqPairRecord::from_seqs(seq_kind, &seqs.0, &seqs.1)?;
    emit(
        &args.output,
        &serde_json::to_string_pretty(&out).expect("record serialization"),
    )?;
    Ok(0)
}

fn classify(args: ClassifyArgs) -> Result<u8, Error> {
    let record = read_record(&args.input)?;
    let kind = args
        .kind
        .map(KindArg::record_kind)
        .unwrap_or_else(|| record.kind());
    match (&record, kind) {
        (PairRecord::Array(r), RecordKind::Type2Array | RecordKind::Mixed) => {
            let pair = r.to_pair()?;
            let classification = if kind == RecordKind::Type2Array {
                classify_type2_array_pair(pair.f(), pair.g())
            } else {
                classify_mixed_array_pair(pair.f(), pair.g())
            };
            let standard = classification.is_standard();
            let text = serde_json::to_string_pretty(&classification.to_record())
                .expect("record serialization");
            emit(&args.output, &text)?;
            Ok(if standard { 0 } else { EXIT_FALSE })
        }
        (PairRecord::Seq(r), RecordKind::Type2Seq | RecordKind::Type3Seq) => {
            let (f, g) = r.to_seqs()?;
            let seq_kind = if kind == RecordKind::Type2Seq {
                SequenceKind::TypeII
            } else {
                SequenceKind::TypeIII
            };
            let witnesses = find_projection_witnesses(&f, &g, seq_kind, args.all_witnesses)?;
            let mut result = serde_json::json!({
                "witness": witnesses.first().map(ProjectionWitness::to_record),
            });
            if args.all_witnesses {
                result["all_witnesses"] = serde_json::to_value(
                    witnesses
                        .iter()
                        .map(ProjectionWitness::to_record)
                        .collect::<Vec<_>>(),
                )
                .expect("record serialization");
            }
            emit(&args.output, &serde_json::to_string_pretty(&result).unwrap())?;
            Ok(if witnesses.is_empty() { EXIT_FALSE } else { 0 })
        }
        _ => Err(Error::InvalidInput(format!(
            "classify supports type2-array, mixed, type2-seq and type3-seq; \
             got kind {kind} for this record"
        ))),
    }
}

fn env_usize(name: &str) -> Result<Option<usize>, Error> {
    match std::env::var(name) {
        Err(_) => Ok(None),
        Ok(v) => v
            .parse()
            .map(Some)
            .map_err(|_| Error::InvalidInput(format!("{name} must be an integer, got \"{v}\""))),
    }
}

fn search(args: SearchArgs) -> Result<u8, Error> {
    let mut options = SearchOptions {
        force: args.force,
        all_witnesses: args.all_witnesses,
        workers: args.workers.unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get().min(8))
                .unwrap_or(1)
        }),
        ..SearchOptions::default()
    };
    if let Some(cutoff) = env_usize("COMPAIR_CUTOFF_M")? {
        options.cutoff_type2_m = cutoff;
        options.cutoff_mixed_m = cutoff;
    }
    if let Some(cutoff) = env_usize("COMPAIR_CUTOFF_L")? {
        options.cutoff_len = cutoff;
    }

    let need_m = || {
        args.m.ok_or_else(|| {
            Error::InvalidInput("array searches need --m; --length does not apply".into())
        })
    };
    let need_len = || {
        args.length.ok_or_else(|| {
            Error::InvalidInput("sequence searches need --length; --m does not apply".into())
        })
    };
    let started = Instant::now();
    let report: SearchReport = match args.kind {
        KindArg::Type2Array => {
            if args.length.is_some() {
                return Err(Error::InvalidInput("--length does not apply to array searches".into()));
            }
            search_type2_array_pairs(need_m()?, &options)?
        }
        KindArg::Mixed => {
            if args.length.is_some() {
                return Err(Error::InvalidInput("--length does not apply to array searches".into()));
            }
            search_mixed_array_pairs(need_m()?, &options)?
        }
        KindArg::Type2Seq => {
            if args.m.is_some() {
                return Err(Error::InvalidInput("--m does not apply to sequence searches".into()));
            }
            search_type2_sequence_pairs(need_len()?, &options)?
        }
        KindArg::Type3Seq => {
            if args.m.is_some() {
                return Err(Error::InvalidInput("--m does not apply to sequence searches".into()));
            }
            search_type3_sequence_pairs(need_len()?, &options)?
        }
        _ => {
            return Err(Error::InvalidInput(
                "search supports type2-array, mixed, type2-seq and type3-seq".into(),
            ))
        }
    };
    let runtime_ms = started.elapsed().as_millis();

    emit(&args.output, &report.to_json_pretty())?;
    if let Some(csv) = &args.csv {
        let mut text = String::new();
        if !csv.exists() {
            text.push_str(SearchReport::CSV_HEADER);
            text.push('\n');
        }
        text.push_str(&report.csv_row(runtime_ms));
        text.push('\n');
        use std::io::Write;
        let mut file = std::fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(csv)?;
        file.write_all(text.as_bytes())?;
    }
    Ok(if report.nonstandard_count == 0 {
        0
    } else {
        EXIT_FALSE
    })
}
