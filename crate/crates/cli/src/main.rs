//! `monocover` command-line interface.
//!
//! Exit codes: 0 valid / success, 1 mathematically invalid input,
//! 2 usage or parse error.

use std::fs;
use std::io::{self, BufRead, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use monocover::bounds::bounds_report;
use monocover::config::parse_search_config;
use monocover::corpus::{all_examples, ExampleId, ExampleRecord};
use monocover::report::{CertificateRecord, VerifyReport};
use monocover::search::{search, DedupMode};
use monocover::MonodromyPair;

// Standard output may be a closed pipe (`| head`); stop quietly instead of panicking.
macro_rules! out {
    ($($t:tt)*) => {{
        let _ = writeln!(io::stdout(), $($t)*);
    }};
}

macro_rules! out_raw {
    ($($t:tt)*) => {{
        let _ = write!(io::stdout(), $($t)*);
    }};
}

const EXIT_OK: u8 = 0;
const EXIT_INVALID: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "monocover", version, about = "Monodromy pairs for one-branch-point covers of an elliptic curve")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a pair (alpha, beta) given in cycle notation.
    Verify {
        /// Image of the first generator, e.g. "(1 2 3)".
        #[arg(required_unless_present = "certificates")]
        alpha: Option<String>,
        /// Image of the second generator.
        #[arg(required_unless_present = "certificates")]
        beta: Option<String>,
        #[arg(short, long, required_unless_present = "certificates")]
        degree: Option<usize>,
        /// Treat the fibration as stable when checking the bounds.
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        stable: bool,
        /// Print the JSON report instead of text.
        #[arg(long)]
        json: bool,
        /// Re-validate every line of a certificate JSON-lines file instead.
        #[arg(long, conflicts_with_all = ["alpha", "beta", "degree"])]
        certificates: Option<PathBuf>,
    },
    /// Run an exhaustive search described by a config file.
    Search {
        #[arg(short, long)]
        config: PathBuf,
        /// JSON-lines output; standard output when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write imprimitive near misses here (enables near-miss collection).
        #[arg(long)]
        near_misses: Option<PathBuf>,
    },
    /// Reproduce the built-in worked examples.
    Examples {
        /// 1, 2, 2-as-printed, 3@<n> (n >= 2) or all.
        #[arg(default_value = "all")]
        which: String,
        #[arg(long)]
        json: bool,
    },
    /// Check the inequalities for a fibration with one singular fibre.
    Bounds {
        #[arg(long)]
        genus: i64,
        #[arg(long)]
        chi: i64,
        #[arg(long = "k-squared")]
        k_squared: i64,
        #[arg(long)]
        c2: i64,
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        stable: bool,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Verify {
            certificates: Some(path),
            ..
        } => cmd_revalidate(&path),
        Command::Verify {
            alpha,
            beta,
            degree,
            stable,
            json,
            ..
        } => cmd_verify(
            &alpha.unwrap_or_default(),
            &beta.unwrap_or_default(),
            degree.unwrap_or_default(),
            stable,
            json,
        ),
        Command::Search {
            config,
            output,
            near_misses,
        } => cmd_search(&config, output.as_deref(), near_misses.as_deref()),
        Command::Examples { which, json } => cmd_examples(&which, json),
        Command::Bounds {
            genus,
            chi,
            k_squared,
            c2,
            stable,
            json,
        } => cmd_bounds(genus, chi, k_squared, c2, stable, json),
    };
    ExitCode::from(code)
}

fn cmd_verify(alpha: &str, beta: &str, degree: usize, stable: bool, json: bool) -> u8 {
    let pair = match MonodromyPair::parse(alpha, beta, degree) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let report = VerifyReport::build(&pair, stable);
    if json {
        out!("{}", report.to_json());
    } else {
        out_raw!("{report}");
    }
    if report.is_valid() {
        EXIT_OK
    } else {
        EXIT_INVALID
    }
}

fn cmd_revalidate(path: &std::path::Path) -> u8 {
    let file = match fs::File::open(path) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {}: {e}", path.display());
            return EXIT_USAGE;
        }
    };
    let (mut ok, mut bad) = (0usize, 0usize);
    for (lineno, line) in io::BufReader::new(file).lines().enumerate() {
        let line = match line {
            Ok(l) => l,
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_USAGE;
            }
        };
        if line.trim().is_empty() {
            continue;
        }
        let verdict = CertificateRecord::from_json_line(&line)
            .map_err(|e| e.to_string())
            .and_then(|r| r.revalidate().map_err(|e| e.to_string()));
        match verdict {
            Ok(Some(_)) => ok += 1,
            Ok(None) => {
                bad += 1;
                out!("line {}: certificate does not revalidate", lineno + 1);
            }
            Err(e) => {
                bad += 1;
                out!("line {}: {e}", lineno + 1);
            }
        }
    }
    out!("{ok} valid, {bad} invalid");
    if bad == 0 {
        EXIT_OK
    } else {
        EXIT_INVALID
    }
}

fn cmd_search(
    config: &std::path::Path,
    output: Option<&std::path::Path>,
    near_path: Option<&std::path::Path>,
) -> u8 {
    let text = match fs::read_to_string(config) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}: {e}", config.display());
            return EXIT_USAGE;
        }
    };
    let mut cfg = match parse_search_config(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    if near_path.is_some() {
        cfg.near_misses = true;
    }
    let outcome = match search(&cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let lines = outcome
        .certificates
        .iter()
        .map(|c| CertificateRecord::from_certificate(c).to_json_line());
    if let Err(e) = write_lines(output, lines) {
        eprintln!("error: writing certificates: {e}");
        return EXIT_USAGE;
    }
    if let Some(path) = near_path {
        let lines = outcome
            .near_misses
            .iter()
            .map(|n| CertificateRecord::new(&n.pair, &n.invariants).to_json_line());
        if let Err(e) = write_lines(Some(path), lines) {
            eprintln!("error: writing near misses: {e}");
            return EXIT_USAGE;
        }
    }
    let s = &outcome.stats;
    let dedup = match cfg.dedup {
        DedupMode::Off => "off",
        DedupMode::Centralizer => "centralizer",
        DedupMode::Full => "full",
    };
    eprintln!("degree:               {}", cfg.degree);
    eprintln!("pairs scanned:        {}", s.pairs_scanned);
    eprintln!("pruned (commutator):  {}", s.pruned_by_commutator);
    eprintln!("intransitive:         {}", s.intransitive);
    eprintln!("imprimitive:          {}", s.imprimitive);
    eprintln!("classes found ({dedup}): {}", s.classes_found);
    if cfg.near_misses {
        eprintln!("near-miss classes:    {}", outcome.near_misses.len());
    }
    eprintln!("written:              {}", outcome.certificates.len());
    eprintln!("workers:              {}", cfg.worker_count);
    eprintln!("wall time:            {:.3}s", s.elapsed.as_secs_f64());
    EXIT_OK
}

fn write_lines(path: Option<&std::path::Path>, lines: impl Iterator<Item = String>) -> io::Result<()> {
    let mut out: Box<dyn Write> = match path {
        Some(p) => Box::new(BufWriter::new(fs::File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    for line in lines {
        writeln!(out, "{line}")?;
    }
    out.flush()
}

fn cmd_examples(which: &str, json: bool) -> u8 {
    let ids = if which.trim() == "all" {
        all_examples()
    } else {
        match which.parse::<ExampleId>() {
            Ok(id) => vec![id],
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_USAGE;
            }
        }
    };
    let mut all_match = true;
    let mut json_out = Vec::new();
    for id in ids {
        let record = ExampleRecord::build(id).expect("selector validated");
        let check = record.check();
        all_match &= check.matches();
        if json {
            json_out.push(serde_json::json!({
                "example": record.name,
                "degree": record.degree,
                "alpha": record.alpha,
                "beta": record.beta,
                "matches": check.matches(),
                "mismatches": check.mismatches,
                "parse_error": check.parse_error,
                "report": check.report,
                "notes": record.notes,
            }));
            continue;
        }
        out!("== {} (d = {}) ==", record.name, record.degree);
        out!("alpha = {}   beta = {}", record.alpha, record.beta);
        for n in &record.notes {
            out!("note: {n}");
        }
        if let Some(err) = &check.parse_error {
            out!("rejected: {err}");
        }
        if let Some(report) = &check.report {
            out_raw!("{report}");
        }
        if check.matches() {
            out!("result: matches expected values");
        } else {
            for m in &check.mismatches {
                out!("MISMATCH {m}");
            }
        }
        out!();
    }
    if json {
        out!("{}", serde_json::to_string_pretty(&json_out).expect("serializes"));
    }
    if all_match {
        EXIT_OK
    } else {
        EXIT_INVALID
    }
}

fn cmd_bounds(g: i64, chi: i64, k_squared: i64, c2: i64, stable: bool, json: bool) -> u8 {
    if g < 2 {
        eprintln!("error: the fibre genus must be at least 2");
        return EXIT_USAGE;
    }
    let report = bounds_report(g, chi, k_squared, c2, stable);
    if json {
        out!("{}", serde_json::to_string_pretty(&report).expect("serializes"));
    } else {
        out_raw!("{report}");
    }
    if report.all_pass() {
        EXIT_OK
    } else {
        EXIT_INVALID
    }
}
