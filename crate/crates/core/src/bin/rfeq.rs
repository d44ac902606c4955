use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use rfeq::oracle::{self, Direction, Sampling};
use rfeq::{
    defining_equations, presentation_of_tuple, smith_normal_form, Alphabet, Error, Execution,
    NaEquations, Presentation, ProductSubgroup, SaturationReport, Seed, Word,
};

#[derive(Parser)]
#[command(name = "rfeq", version, about = "Na-equations and defining equations of subgroups of products of free groups")]
struct Cli {
    /// Run every loop on the current thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// First Betti number and Smith diagonal of a presentation.
    B1 { file: PathBuf },
    /// Presentation of the i-th projection of the generators (1-based).
    Present {
        file: PathBuf,
        #[arg(long)]
        factor: usize,
    },
    /// Na-equations presentation.
    Naeq { file: PathBuf },
    /// Defining equations, given b1 of the subgroup.
    Defeq {
        file: PathBuf,
        #[arg(long = "b1")]
        b1: usize,
        /// Maximum number of candidate words to scan.
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
    },
    /// Whether a word over s1..sk is trivial in the subgroup.
    Trivial {
        file: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Whether a word over s1..sk is central in the subgroup.
    Central {
        file: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Run the sampling oracle on the na-equations.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 4)]
        maxlen: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// A failure that ends the run, with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn malformed(message: String) -> Self {
        Failure { code: 2, message }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::malformed(format!("{}: cannot read: {e}", path.display())))
}

fn located(path: &Path, e: Error) -> Failure {
    match e {
        Error::Parse { line, message } => {
            Failure::malformed(format!("{}:{line}: {message}", path.display()))
        }
        other => Failure::malformed(format!("{}: {other}", path.display())),
    }
}

fn load_subgroup(path: &Path) -> Result<ProductSubgroup, Failure> {
    ProductSubgroup::parse(&read(path)?).map_err(|e| located(path, e))
}

fn parse_word(names: &Alphabet, text: &str) -> Result<Word, Failure> {
    names
        .parse_word(text)
        .map_err(|e| Failure::malformed(format!("--word: {e}")))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn b1(path: &Path) -> Result<String, Failure> {
    let p = Presentation::parse(&read(path)?).map_err(|e| located(path, e))?;
    let snf = smith_normal_form(&p.abelianization_matrix());
    let diagonal: Vec<String> = snf.invariant_factors().iter().map(ToString::to_string).collect();
    Ok(format!(
        "b1 = {}\ndiagonal = ({})\n",
        p.generators().len() - snf.rank,
        diagonal.join(", ")
    ))
}

fn present(path: &Path, factor: usize) -> Result<String, Failure> {
    let ps = load_subgroup(path)?;
    let count = ps.factors().len();
    if factor == 0 || factor > count {
        return Err(Failure::malformed(format!(
            "--factor: expected 1..={count}, found {factor}"
        )));
    }
    let i = factor - 1;
    let tuple = ps.project(i).map_err(|e| located(path, e))?;
    let f = &ps.factors()[i];
    let mut out = format!("# factor {factor}");
    if f.kind == rfeq::FactorKind::FreeAbelian {
        out.push_str(": free abelian, presented as a free group on its letters");
    }
    out.push('\n');
    let tp = presentation_of_tuple(f.rank(), &tuple, ps.names()).map_err(|e| located(path, e))?;
    writeln!(out, "# basis rank = {}", tp.basis_rank).unwrap();
    out.push_str(&tp.presentation(ps.names()).to_string());
    Ok(out)
}

fn naeq(path: &Path, exec: Execution) -> Result<String, Failure> {
    let ps = load_subgroup(path)?;
    let na = NaEquations::compute_with(&ps, exec);
    let mut out = String::new();
    writeln!(out, "# n = {}, n' = {}", na.factor_count, na.surviving.len()).unwrap();
    let sizes: Vec<String> = na
        .surviving
        .iter()
        .zip(&na.factor_relators)
        .map(|(i, r)| format!("factor {}: {}", i + 1, r.len()))
        .collect();
    writeln!(out, "# |R_i| = {}", if sizes.is_empty() { "none".into() } else { sizes.join(", ") }).unwrap();
    match &na.raw_count {
        Some(raw) => writeln!(
            out,
            "# raw count = {raw}, after dedup = {}",
            na.presentation.relators().len()
        )
        .unwrap(),
        None => writeln!(out, "# raw count = n/a").unwrap(),
    }
    out.push_str(&na.presentation.to_string());
    Ok(out)
}

fn report_block(names: &Alphabet, r: &SaturationReport) -> String {
    let seed = match r.seed {
        Seed::NestedCommutators => "nested commutators",
        Seed::Duplicated => "duplicated factor",
        Seed::Direct => "direct",
        Seed::Abelian => "abelian",
    };
    let n = r.added_relators.len();
    let trace: Vec<String> = r.b1_trace.iter().map(ToString::to_string).collect();
    let mut out = String::new();
    writeln!(out, "# seed: {seed}, {} relator(s)", r.seed_relator_count).unwrap();
    writeln!(out, "# added {n} relator{}", if n == 1 { "" } else { "s" }).unwrap();
    writeln!(out, "# b1 trace: {}", trace.join(" ")).unwrap();
    writeln!(out, "# terminated: {}", r.terminated).unwrap();
    writeln!(out, "# scanned: {}", r.scanned).unwrap();
    for w in &r.added_relators {
        writeln!(out, "# added: {}", names.format_word(w)).unwrap();
    }
    out
}

fn defeq(path: &Path, target: usize, budget: u64) -> Result<String, Failure> {
    let ps = load_subgroup(path)?;
    match defining_equations(&ps, target, budget) {
        Ok((p, report)) => Ok(format!("{p}{}", report_block(ps.names(), &report))),
        Err(Error::BudgetExhausted { report, .. }) => {
            print!("{}", report_block(ps.names(), &report));
            Err(Failure {
                code: 1,
                message: format!(
                    "{}: budget of {budget} scanned words exhausted at b1 = {}, target {target}",
                    path.display(),
                    report.b1_trace.last().copied().unwrap_or(0)
                ),
            })
        }
        Err(e @ Error::InconsistentTarget { .. }) => Err(Failure {
            code: 1,
            message: format!("{}: {e}", path.display()),
        }),
        Err(e) => Err(located(path, e)),
    }
}

fn membership(path: &Path, word: &str, central: bool) -> Result<String, Failure> {
    let ps = load_subgroup(path)?;
    let w = parse_word(ps.names(), word)?;
    let answer = if central { ps.is_central(&w) } else { ps.is_trivial(&w) };
    Ok(format!("{}\n", yes_no(answer)))
}

fn show_images(images: &[Word]) -> String {
    let ab = Alphabet::new(["a", "b"]).expect("valid names");
    images
        .iter()
        .enumerate()
        .map(|(j, w)| format!("s{} -> {}", j + 1, ab.format_word(w)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn verify(path: &Path, sampling: Sampling, exec: Execution) -> Result<(String, bool), Failure> {
    let ps = load_subgroup(path)?;
    let na = NaEquations::compute_with(&ps, exec);
    let relators = na.presentation.relators();
    let mut out = String::new();
    writeln!(out, "# sampled homomorphisms into F(a, b): a falsifier, not a prover").unwrap();
    writeln!(out, "# seed = {}, maxlen = {}", sampling.seed, sampling.max_len).unwrap();

    let mut violations = 0;
    if na.factor_relators.len() >= 2 {
        let report =
            oracle::check_against(&na.factor_relators, relators, ps.names().len(), sampling, exec);
        writeln!(out, "tested = {}", report.tested).unwrap();
        writeln!(out, "nonabelianCount = {}", report.nonabelian_count).unwrap();
        writeln!(out, "violations = {}", report.violations.len()).unwrap();
        for v in &report.violations {
            let dir = match v.direction {
                Direction::If => "if",
                Direction::OnlyIf => "only if",
            };
            writeln!(out, "# violation ({dir}) at sample {}: {}", v.sample, show_images(&v.images))
                .unwrap();
        }
        violations += report.violations.len();
    } else {
        writeln!(out, "tested = 0").unwrap();
        writeln!(out, "nonabelianCount = 0").unwrap();
        writeln!(out, "violations = 0").unwrap();
        writeln!(out, "# factorization check needs two non-abelian factors, found {}", na.factor_relators.len()).unwrap();
    }

    let quotient = oracle::check_quotient(&ps, &na.presentation);
    writeln!(out, "quotient = {}", if quotient { "ok" } else { "failed" }).unwrap();
    violations += usize::from(!quotient);

    let maps = oracle::check_factor_maps(&ps, relators, sampling, exec);
    writeln!(
        out,
        "factorMaps = {} tested, {} non-abelian, {} violations",
        maps.tested,
        maps.nonabelian_count,
        maps.nonabelian_violations()
    )
    .unwrap();
    violations += maps.nonabelian_violations();
    Ok((out, violations == 0))
}

fn run(cli: Cli) -> Result<(String, bool), Failure> {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let ok = |s: String| (s, true);
    match cli.command {
        Command::B1 { file } => b1(&file).map(ok),
        Command::Present { file, factor } => present(&file, factor).map(ok),
        Command::Naeq { file } => naeq(&file, exec).map(ok),
        Command::Defeq { file, b1, budget } => defeq(&file, b1, budget).map(ok),
        Command::Trivial { file, word } => membership(&file, &word, false).map(ok),
        Command::Central { file, word } => membership(&file, &word, true).map(ok),
        Command::Verify {
            file,
            samples,
            maxlen,
            seed,
        } => {
            if samples == 0 {
                return Err(Failure::malformed("--samples: must be at least 1".into()));
            }
            let sampling = Sampling {
                samples,
                max_len: maxlen,
                seed,
            };
            verify(&file, sampling, exec)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, clean)) => {
            print!("{out}");
            if clean {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("rfeq: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
