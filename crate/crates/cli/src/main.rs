use clap::{Args, Parser, Subcommand};
use multicut_core::bench::{bench_instance, failed_row, render_report, BenchConfig};
use multicut_core::crossing::{check_claims, normalize};
use multicut_core::cuts::verify_solution;
use multicut_core::format::{parse_instance, parse_solution, write_instance, write_solution};
use multicut_core::gen::{generate, GenParams};
use multicut_core::planar::{crossed_faces, Drawing};
use multicut_core::solve::{solve_checked, with_drawing, SolveOptions, SolverKind};
use multicut_core::{Error, Instance};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "multicut", version, about = "Exact multicut on near-planar graphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve an instance and write the cut.
    Solve {
        /// kplanar, crossing, planar or oracle
        solver: SolverKind,
        file: PathBuf,
        #[command(flatten)]
        common: Common,
        /// Print solver progress on stderr.
        #[arg(long)]
        trace: bool,
        /// Compute a minimum-crossing drawing when the instance has none.
        #[arg(long)]
        draw_tiny: bool,
    },
    /// Generate a random near-planar instance.
    Gen {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        #[arg(long, default_value_t = 3)]
        t: usize,
        #[arg(long, default_value_t = 0)]
        pi: usize,
        #[arg(long, default_value_t = 0)]
        crossings: usize,
        #[arg(long, default_value_t = 1)]
        max_weight: u64,
        #[arg(long, default_value_t = 0.0)]
        inf_prob: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that a solution file is a multicut with the stated weight.
    Verify { instance: PathBuf, solution: PathBuf },
    /// Compare a solver with the oracle on every `.mc` file of a directory.
    Bench {
        dir: PathBuf,
        #[arg(long)]
        solver: Option<SolverKind>,
        #[command(flatten)]
        common: Common,
        /// Add wall-clock time per row.
        #[arg(long)]
        timing: bool,
    },
    /// Structure of the multicut duals of a drawn instance.
    DualReport {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        draw_tiny: bool,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 2)]
    pi_max: usize,
    #[arg(long, default_value_t = 24)]
    oracle_max_edges: usize,
    /// Write the result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Exit status with a message for stderr.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NoFiniteMulticut => 2,
            Error::Internal(_) => 3,
            _ => 1,
        };
        Failure(code, e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(1, format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Instance, Failure> {
    parse_instance(&read(path)?).map_err(|e| Failure(1, format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure(1, format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Solve { solver, file, common, trace, draw_tiny } => {
            let inst = load(&file)?;
            let opts = SolveOptions { pi_max: common.pi_max, oracle_max_edges: common.oracle_max_edges, draw_tiny, trace };
            let outcome = solve_checked(solver, &inst, &opts)?;
            for line in &outcome.trace {
                eprintln!("{line}");
            }
            emit(common.out.as_deref(), &write_solution(&outcome.solution))
        }
        Cmd::Gen { seed, n, density, t, pi, crossings, max_weight, inf_prob, out } => {
            let p = GenParams { seed, n, density, t, pi, crossings, max_weight, inf_prob };
            emit(out.as_deref(), &write_instance(&generate(&p)?))
        }
        Cmd::Verify { instance, solution } => {
            let inst = load(&instance)?;
            let sol = parse_solution(&read(&solution)?).map_err(|e| Failure(1, format!("{}: {e}", solution.display())))?;
            match verify_solution(&inst, &sol) {
                Ok(()) => {
                    println!("ok weight={}", sol.weight);
                    Ok(())
                }
                Err(e) => Err(Failure(1, e.to_string())),
            }
        }
        Cmd::Bench { dir, solver, common, timing } => {
            let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)
                .map_err(|e| Failure(1, format!("{}: {e}", dir.display())))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "mc"))
                .collect();
            files.sort();
            let cfg = BenchConfig {
                solve: SolveOptions { pi_max: common.pi_max, oracle_max_edges: common.oracle_max_edges, draw_tiny: true, trace: false },
                solver,
                timing,
            };
            let rows: Vec<_> = files
                .iter()
                .map(|f| {
                    let name = f.file_name().unwrap_or_default().to_string_lossy().into_owned();
                    match load(f) {
                        Ok(inst) => bench_instance(&name, &inst, &cfg),
                        Err(Failure(_, msg)) => failed_row(&name, &msg),
                    }
                })
                .collect();
            emit(common.out.as_deref(), &render_report(&rows))
        }
        Cmd::DualReport { file, common, draw_tiny } => {
            let inst = with_drawing(&load(&file)?, draw_tiny)?;
            let drawing = Drawing::new(inst.clone());
            let cf = crossed_faces(&drawing)?;
            let g = normalize(&drawing, &[])?;
            let r = check_claims(&g, common.oracle_max_edges, 8)?;
            let mut s = String::new();
            writeln!(s, "crbar={} f_star={}", drawing.cr_bar(), cf.f_star.len()).unwrap();
            writeln!(s, "mu={}", r.mu).unwrap();
            writeln!(s, "duals={}", r.duals_checked).unwrap();
            let tw = r.tw_max.map_or("-".to_string(), |t| t.to_string());
            writeln!(s, "tw={tw}").unwrap();
            if let Some((size, ok)) = r.dominating {
                writeln!(s, "dominating_size={size} dominating_r5={}", if ok { "yes" } else { "no" }).unwrap();
            }
            let yes = |b: bool| if b { "yes" } else { "no" };
            writeln!(s, "optimum_cuts_candidate={}", yes(r.optimum_cuts_candidate)).unwrap();
            writeln!(s, "candidate_cut_lifts={}", yes(r.candidate_cut_lifts)).unwrap();
            writeln!(s, "candidate_cut_optimal={}", yes(r.candidate_cut_optimal)).unwrap();
            writeln!(s, "violations_face={} violations_degree3={}", r.violations_face, r.violations_degree3).unwrap();
            writeln!(s, "claims={}", if r.passed() { "pass" } else { "fail" }).unwrap();
            emit(common.out.as_deref(), &s)?;
            if r.passed() {
                Ok(())
            } else {
                Err(Failure(3, "structural claims failed".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
