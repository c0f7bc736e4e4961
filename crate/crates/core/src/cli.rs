//! Command-line verbs: `relations`, `factor`, `verify`, `roundtrip`, `demo`.
//!
//! Exit codes: 0 success, 1 check failed, 2 not factored within budget,
//! 3 invalid input (including rank 1).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactring::{BaseRing, PolyCtx};
use crate::factorize::{factor_polynomial, Budget};
use crate::io::{read_json, to_json, CertificateFile, MatrixFile};
use crate::matrix::Matrix;
use crate::relations::run_relation_suite;
use crate::rootdata::{build_root_system, GroupModel, RootKind};
use crate::sample::{random_word, PolySpec};
use crate::words::eval_word;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_NOT_FACTORED: i32 = 2;
pub const EXIT_INVALID: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "chevalley", version, about = "Elementary factorization of polynomial matrices in SL_n and Sp_2n")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check commutator, additivity and torus relations on random arguments.
    Relations {
        #[arg(long = "type")]
        kind: RootKind,
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        vars: usize,
    },
    /// Factor a matrix file into elementary generators.
    Factor {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Write 0 as the wall time.
        #[arg(long)]
        no_timing: bool,
    },
    /// Re-evaluate a certificate from scratch.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Factor evaluations of random words.
    Roundtrip {
        #[arg(long = "type")]
        kind: RootKind,
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value_t = 1)]
        vars: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        max_len: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Factor diag(Cohn, 1) in SL_3(Z[x]) and show the SL_2 rejection.
    Demo {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args, Clone, Copy)]
pub struct BudgetArgs {
    #[arg(long)]
    pub budget_letters: Option<usize>,
    #[arg(long)]
    pub budget_degree: Option<u32>,
}

impl BudgetArgs {
    pub fn budget(&self) -> Budget {
        let mut b = Budget::default();
        if let Some(l) = self.budget_letters {
            b.max_letters = l;
        }
        if let Some(d) = self.budget_degree {
            b.max_degree = d;
        }
        b
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotFactored(_) | Error::DescentBudgetExceeded(_) | Error::SearchBoundExceeded(_) => EXIT_NOT_FACTORED,
        Error::VerificationFailed(_) => EXIT_MISMATCH,
        _ => EXIT_INVALID,
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run_from<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli.command, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            if code == EXIT_OK {
                let _ = write!(out, "{e}");
            } else {
                let _ = write!(err, "{e}");
            }
            code
        }
    }
}

pub fn run(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cmd {
        Command::Relations { kind, rank, trials, seed, vars } => relations(*kind, *rank, *trials, *seed, *vars, out),
        Command::Factor { input, out: path, budget, no_timing } => factor(input, path.as_deref(), &budget.budget(), !no_timing, out),
        Command::Verify { input } => verify(input, out),
        Command::Roundtrip { kind, rank, vars, trials, seed, max_len, budget } => {
            let report = roundtrip(GroupModel::new(*kind, *rank), *vars, *trials, *seed, *max_len, &budget.budget());
            report.map(|r| {
                let _ = writeln!(out, "{r}");
                if r.factored == r.trials { EXIT_OK } else { EXIT_NOT_FACTORED }
            })
        }
        Command::Demo { out: path } => demo(path.as_deref(), out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn relations(kind: RootKind, rank: usize, trials: usize, seed: u64, vars: usize, out: &mut dyn Write) -> Result<i32> {
    let report = run_relation_suite(kind, rank, trials, seed, vars)?;
    let _ = writeln!(out, "{report}");
    Ok(if report.passed() { EXIT_OK } else { EXIT_MISMATCH })
}

fn factor(input: &Path, path: Option<&Path>, budget: &Budget, timing: bool, out: &mut dyn Write) -> Result<i32> {
    let file: MatrixFile = read_json(input)?;
    let g = file.to_matrix()?;
    let cert = factor_polynomial(file.group, &g, budget)?;
    let text = to_json(&CertificateFile::from_certificate(&cert, timing));
    match path {
        Some(p) => {
            std::fs::write(p, &text).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
            let _ = writeln!(out, "verified certificate: {} letters, max degree {}", cert.word_length(), cert.max_degree());
        }
        None => {
            let _ = out.write_all(text.as_bytes());
        }
    }
    Ok(EXIT_OK)
}

/// Independent re-check: parse, evaluate the word letter by letter, multiply
/// by the residual, compare with the target.
pub fn verify_certificate(file: &CertificateFile) -> Result<bool> {
    let parts = file.parts()?;
    let product = eval_word(&parts.word).mul(&parts.residual);
    Ok(product == parts.target && parts.residual.is_constant())
}

fn verify(input: &Path, out: &mut dyn Write) -> Result<i32> {
    let file: CertificateFile = read_json(input)?;
    if verify_certificate(&file)? {
        let _ = writeln!(out, "OK: {} letters reproduce the target", file.word.len());
        Ok(EXIT_OK)
    } else {
        let _ = writeln!(out, "MISMATCH: the word does not reproduce the target");
        Ok(EXIT_MISMATCH)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundtripReport {
    pub model: GroupModel,
    pub nvars: usize,
    pub seed: u64,
    pub trials: usize,
    pub factored: usize,
    pub longest_word: usize,
    /// `(trial, message)` for every failure.
    pub failures: Vec<(usize, String)>,
}

impl std::fmt::Display for RoundtripReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, msg) in &self.failures {
            writeln!(f, "  trial {i}: {msg}")?;
        }
        write!(
            f,
            "roundtrip {}{} vars={} seed={}: {}/{} verified, longest word {}",
            self.model.kind, self.model.rank, self.nvars, self.seed, self.factored, self.trials, self.longest_word
        )
    }
}

/// Evaluates seeded random words (length `1..=max_len`, degree <= 2) and
/// factors them back. Trial `i` uses its own stream of `seed`.
pub fn roundtrip(model: GroupModel, nvars: usize, trials: usize, seed: u64, max_len: usize, budget: &Budget) -> Result<RoundtripReport> {
    let rs = build_root_system(model.kind, model.rank)?;
    let ctx = PolyCtx::new(BaseRing::Integers, nvars);
    let results: Vec<std::result::Result<usize, String>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64 + 1);
            let len = rng.gen_range(1..=max_len.max(1));
            let g = random_word(&mut rng, &rs, ctx, len, &PolySpec::default()).eval();
            match factor_polynomial(model, &g, budget) {
                Ok(c) if c.verified && c.recheck() => Ok(c.word_length()),
                Ok(_) => Err("certificate failed the re-check".to_string()),
                Err(e) => Err(e.to_string()),
            }
        })
        .collect();
    let mut report = RoundtripReport { model, nvars, seed, trials, factored: 0, longest_word: 0, failures: Vec::new() };
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(len) => {
                report.factored += 1;
                report.longest_word = report.longest_word.max(len);
            }
            Err(msg) => report.failures.push((i, msg)),
        }
    }
    Ok(report)
}

/// `[[1+2x, x^2], [-4, 1-2x]]`, padded with an identity block to size `n`.
pub fn cohn_matrix(n: usize) -> Matrix {
    let ctx = PolyCtx::new(BaseRing::Integers, 1);
    let mut rows: Vec<Vec<String>> = (0..n).map(|i| (0..n).map(|j| if i == j { "1" } else { "0" }.to_string()).collect()).collect();
    rows[0][0] = "1+2*x1".into();
    rows[0][1] = "x1^2".into();
    rows[1][0] = "-4".into();
    rows[1][1] = "1-2*x1".into();
    Matrix::parse(ctx, &rows).expect("fixed text")
}

fn demo(path: Option<&Path>, out: &mut dyn Write) -> Result<i32> {
    let g = cohn_matrix(3);
    let _ = writeln!(out, "diag(Cohn, 1) in SL_3(Z[x]):\n{g}");
    let cert = factor_polynomial(GroupModel::new(RootKind::A, 2), &g, &Budget::default())?;
    let _ = writeln!(out, "word ({} letters): {}", cert.word_length(), cert.word);
    let _ = writeln!(out, "re-check: {}", if cert.recheck() { "exact match" } else { "MISMATCH" });
    if let Some(p) = path {
        std::fs::write(p, to_json(&CertificateFile::from_certificate(&cert, false)))
            .map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
        let _ = writeln!(out, "certificate written to {}", p.display());
    }
    match factor_polynomial(GroupModel::new(RootKind::A, 1), &cohn_matrix(2), &Budget::default()) {
        Err(e) => {
            let _ = writeln!(out, "Cohn in SL_2(Z[x]): {e}");
        }
        Ok(_) => return Ok(EXIT_MISMATCH),
    }
    Ok(EXIT_OK)
}
