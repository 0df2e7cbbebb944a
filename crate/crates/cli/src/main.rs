//! `slicegenus` command line.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use slicegenus::bounds::{self, Variant};
use slicegenus::braid::{family, subsurface_split, BraidWord};
use slicegenus::search::{default_store_path, search_retrying, search_with_support, transport, CertStore, SearchBudget, STORE_ENV};
use slicegenus::seifert::seifert_matrix;
use slicegenus::signatures::{lt_profile, lt_signature, profile_csv, Theta};

#[derive(Parser)]
#[command(name = "slicegenus", version, about = "Slice-genus bounds for positive braid links")]
struct Cli {
    /// Certificate store directory.
    #[arg(long, global = true, env = STORE_ENV)]
    store: Option<PathBuf>,
    /// CSV instead of JSON where a table is produced.
    #[arg(long, global = true)]
    csv: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct BudgetArgs {
    #[arg(long = "budget-vector-draws")]
    vector_draws: Option<u32>,
    #[arg(long = "budget-w-draws")]
    w_draws: Option<u32>,
    #[arg(long = "budget-v-candidates")]
    v_candidates: Option<u32>,
    #[arg(long = "budget-climb-steps")]
    climb_steps: Option<u32>,
    #[arg(long = "budget-restarts")]
    restarts: Option<u32>,
}

impl BudgetArgs {
    fn budget(self) -> SearchBudget {
        let d = SearchBudget::default();
        SearchBudget {
            vector_draws: self.vector_draws.unwrap_or(d.vector_draws),
            w_draws: self.w_draws.unwrap_or(d.w_draws),
            v_candidates: self.v_candidates.unwrap_or(d.v_candidates),
            climb_steps: self.climb_steps.unwrap_or(d.climb_steps),
            restarts: self.restarts.unwrap_or(d.restarts),
            target_rank: None,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Seifert matrix in the brick basis.
    Seifert { word: String },
    /// Alexander polynomial of the canonical surface.
    Alexander { word: String },
    /// Levine-Tristram signature at one angle or on a midpoint profile.
    Ltsig {
        word: String,
        #[arg(long, conflicts_with = "profile")]
        theta: Option<Theta>,
        #[arg(long)]
        profile: Option<u64>,
    },
    /// Randomized search for an Alexander-trivial subgroup.
    Search {
        word: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Keep the first half of the basis on this many leading letters.
        #[arg(long)]
        prefix: Option<usize>,
        /// Re-seed until this rank is reached.
        #[arg(long)]
        target_rank: Option<usize>,
        #[arg(long, default_value_t = 10)]
        retries: u32,
        /// Transport the result into a longer word containing this one.
        #[arg(long)]
        into: Option<String>,
        /// Write the certificate into the store.
        #[arg(long)]
        save: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Re-verify a certificate file.
    Verify { certfile: PathBuf },
    /// Genus defect interval of `T(p, q)`.
    Bounds { p: usize, q: usize },
    /// All torus links with `p, q >= 3` up to a Betti number.
    Table {
        #[arg(long = "b1-max", default_value_t = 64)]
        b1_max: usize,
    },
    /// Subsurface rewriting of `Δ_n` into a split union.
    Rewrite {
        #[arg(long, num_args = 2, value_names = ["N", "L"], required = true)]
        split: Vec<usize>,
    },
    /// Defect counting behind the asymptotic bounds.
    Asymptotic {
        #[arg(long)]
        variant: Variant,
        #[arg(long)]
        n: usize,
    },
    /// Case analysis of the 6/7 proposition.
    Prop1 {
        #[arg(long, num_args = 2, value_names = ["P", "Q"], default_values_t = [40, 40])]
        max: Vec<usize>,
    },
}

#[derive(Debug)]
enum Failure {
    /// Bad input; exit 2.
    Usage(String),
    /// A check did not pass; exit 1.
    Verification(String),
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Braid word from `n=<k>; a1 a2 ...`, bare letters, or `family(params)`.
fn parse_word(text: &str) -> Result<BraidWord, Failure> {
    let t = text.trim();
    if t.starts_with("n=") {
        return Ok(BraidWord::parse_canonical(t)?);
    }
    if let Some((name, rest)) = t.split_once('(') {
        let args = rest
            .strip_suffix(')')
            .ok_or_else(|| Failure::Usage(format!("unclosed family call {t:?}")))?;
        let params = args
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| s.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(family(name.trim(), &params)?);
    }
    let max = t
        .split_whitespace()
        .filter_map(|tok| tok.split('^').next())
        .filter_map(|b| b.trim_start_matches('a').parse::<usize>().ok())
        .max()
        .unwrap_or(1);
    Ok(BraidWord::parse(t, max + 1)?)
}

fn emit<T: Serialize>(value: &T) {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value).expect("stdout");
    let _ = writeln!(out);
}

fn store(cli: &Cli) -> CertStore {
    CertStore::open(cli.store.clone().unwrap_or_else(default_store_path))
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Seifert { word } => {
            let w = parse_word(word)?;
            let d = seifert_matrix(&w)?;
            eprintln!("{}: {} bricks", w, d.size());
            emit(&d);
        }
        Command::Alexander { word } => {
            let w = parse_word(word)?;
            let a = seifert_matrix(&w)?.alexander();
            eprintln!("{}: {}", w, a.normalized);
            emit(&json!({ "word": w, "alexander": a }));
        }
        Command::Ltsig { word, theta, profile } => {
            let w = parse_word(word)?;
            let s = seifert_matrix(&w)?.matrix;
            match (theta, profile) {
                (Some(t), None) => {
                    let sample = lt_signature(&s, *t)?;
                    eprintln!("sigma = {}, nullity = {}", sample.sigma, sample.nullity);
                    emit(&sample);
                }
                (None, Some(n)) => {
                    let samples = lt_profile(&s, *n)?;
                    if cli.csv {
                        print!("{}", profile_csv(&samples));
                    } else {
                        emit(&samples);
                    }
                }
                _ => return Err(Failure::Usage("give exactly one of --theta and --profile".into())),
            }
        }
        Command::Search {
            word,
            seed,
            prefix,
            target_rank,
            retries,
            into,
            save,
            budget,
        } => {
            let w = parse_word(word)?;
            let budget = budget.budget();
            let mut cert = match target_rank {
                Some(t) => search_retrying(&w, *seed, &budget, *prefix, *t, *retries)?,
                None => search_with_support(&w, *seed, &budget, *prefix)?,
            };
            if let Some(target) = into {
                let target = parse_word(target)?;
                let found = cert;
                cert = transport(&found, &target)?;
                cert.seed = found.seed;
                cert.budget = found.budget;
                // a prefix keeps the whole basis on its own letters
                if target.letters().starts_with(w.letters()) {
                    cert.support_prefix = Some(w.len());
                }
            }
            eprintln!("{}: rank {} (seed {})", w, cert.rank(), cert.seed.unwrap_or(*seed));
            if *save {
                let path = store(cli).save(&cert)?;
                eprintln!("saved {}", path.display());
            }
            emit(&cert);
            if target_rank.is_some_and(|t| cert.rank() < t) {
                return Err(Failure::Verification(format!(
                    "reached rank {} below the target",
                    cert.rank()
                )));
            }
        }
        Command::Verify { certfile } => {
            let cert = CertStore::load(certfile)?;
            let rep = cert.verify();
            emit(&rep);
            if !rep.passed() {
                return Err(Failure::Verification(rep.failures().join(", ")));
            }
            eprintln!("rank {} verified", rep.rank);
        }
        Command::Bounds { p, q } => {
            let st = bounds::torus_stats(*p, *q)?;
            let (lo, mut provenance) = bounds::defect_lower(*p, *q, &store(cli))?;
            let (hi, sig) = bounds::defect_upper_with(*p, *q)?;
            provenance.extend(sig);
            let g4 = (lo == hi).then(|| st.genus - lo);
            eprintln!("T({p},{q}): genus {}, defect in [{lo}, {hi}]", st.genus);
            emit(&json!({
                "p": p,
                "q": q,
                "components": st.components,
                "betti": st.betti,
                "genus": st.genus,
                "defect_lo": lo,
                "defect_hi": hi,
                "g4": g4,
                "g4_lo": st.genus - hi,
                "g4_hi": st.genus - lo,
                "provenance": provenance,
            }));
            if lo > hi {
                return Err(Failure::Verification("lower bound exceeds upper bound".into()));
            }
        }
        Command::Table { b1_max } => {
            let rows = bounds::table(*b1_max, &store(cli))?;
            let exact = rows.iter().filter(|r| r.is_exact()).count();
            eprintln!("{} rows, {} exact", rows.len(), exact);
            if cli.csv {
                print!("{}", bounds::table_csv(&rows));
            } else {
                emit(&rows);
            }
            if let Some(bad) = rows.iter().find(|r| !r.is_consistent()) {
                return Err(Failure::Verification(format!("inconsistent row ({}, {})", bad.p, bad.q)));
            }
        }
        Command::Rewrite { split } => {
            let (n, l) = (split[0], split[1]);
            let r = subsurface_split(n, l)?;
            let ok = r.trace.verify();
            eprintln!("{} moves, {} deletions, verified: {ok}", r.trace.moves.len(), r.trace.deletions());
            emit(&json!({
                "n": n,
                "l": l,
                "part1": r.part1,
                "part2": r.part2,
                "final": r.trace.final_word,
                "verified": ok,
                "trace": r.trace.to_text(),
            }));
            if !ok {
                return Err(Failure::Verification("trace does not replay".into()));
            }
        }
        Command::Asymptotic { variant, n } => {
            let r = bounds::asymptotic_defect(*n, *variant)?;
            eprintln!("defect {} / genus {} (bound {})", r.defect, r.genus, r.slice_ratio);
            emit(&json!({
                "n": r.n,
                "variant": r.variant,
                "defect": r.defect.to_string(),
                "genus": r.genus.to_string(),
                "ratio": r.ratio.to_string(),
                "slice_ratio": r.slice_ratio.to_string(),
                "limit": r.limit.to_string(),
            }));
        }
        Command::Prop1 { max } => {
            let rep = bounds::prop1_verify(max[0], max[1], &store(cli))?;
            let gaps: Vec<Value> = rep.gaps().iter().map(|r| json!([r.p, r.q])).collect();
            eprintln!("{} rows, {} gaps", rep.rows.len(), gaps.len());
            emit(&rep);
            if !rep.passed() {
                return Err(Failure::Verification(format!("{} rows fail", gaps.len())));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
