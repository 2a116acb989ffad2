use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use universal_pddl::encoders::{compile, compile_tm, report_bounds};
use universal_pddl::equivalence::fuzz;
use universal_pddl::exec::{bfs_plan, translate_plan_back, translate_plan_forward, validate_plan, BfsOutcome};
use universal_pddl::grounder::{ground, write_task, SourceMap};
use universal_pddl::model::{Bounds, Domain, Encoding, GroundTask, Manifest, Problem};
use universal_pddl::parser::{
    parse_domain_with_diagnostics, parse_machine, parse_plan, parse_problem, print_plan,
};

#[derive(Parser)]
#[command(name = "upd", version, about = "Compile propositional planning tasks into universal PDDL domains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum EncodingArg {
    Adl,
    Chain,
    Param,
}

impl From<EncodingArg> for Encoding {
    fn from(e: EncodingArg) -> Encoding {
        match e {
            EncodingArg::Adl => Encoding::Adl,
            EncodingArg::Chain => Encoding::Chain,
            EncodingArg::Param => Encoding::Param,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TmEncodingArg {
    Param,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    /// Compiled plan to original plan.
    Back,
    /// Original plan to compiled plan.
    Forward,
}

#[derive(Subcommand)]
enum Command {
    /// Ground a domain and problem into the plain-text task format.
    Ground {
        domain: PathBuf,
        problem: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compile a task into a universal domain; writes domain.pddl,
    /// problem.pddl and manifest.json.
    Compile {
        #[arg(long, value_enum)]
        encoding: EncodingArg,
        /// Slot counts P,A,D for the param encoding.
        #[arg(long, value_parser = parse_bounds)]
        bounds: Option<Bounds>,
        domain: PathBuf,
        problem: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Translate a plan between a compiled instance and its source task.
    Translate {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long, value_enum)]
        direction: DirectionArg,
        plan: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a plan against a domain and problem.
    Validate { domain: PathBuf, problem: PathBuf, plan: PathBuf },
    /// Find a shortest plan by breadth-first search.
    Solve {
        domain: PathBuf,
        problem: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        max_states: usize,
    },
    /// Compile a bounded-tape Turing machine at bounds (2,1,1).
    Tm {
        machine: PathBuf,
        #[arg(long, value_enum, default_value = "param")]
        encoding: TmEncodingArg,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Print the object count, maximum arity and plan-length bound exponent.
    Bounds { domain: PathBuf, problem: PathBuf },
    /// Cross-check plan existence across all encodings on random tasks.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        iters: usize,
        #[arg(long, default_value_t = 8)]
        props: usize,
        #[arg(long, default_value_t = 1_000_000)]
        max_states: usize,
        /// Where offending tasks are written.
        #[arg(long, default_value = ".")]
        failures: PathBuf,
    },
}

fn parse_bounds(text: &str) -> Result<Bounds, String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let [p, a, d] = parts.as_slice() else {
        return Err("expected P,A,D".into());
    };
    let num = |s: &str| s.parse::<usize>().map_err(|_| format!("`{s}` is not a number"));
    Ok(Bounds::new(num(p)?, num(a)?, num(d)?))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("{}: cannot read", path.display()))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("{}: cannot write", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(domain: &Path, problem: &Path) -> Result<(Domain, Problem)> {
    let (d, diags) = parse_domain_with_diagnostics(&read(domain)?)
        .with_context(|| format!("{}", domain.display()))?;
    for diag in diags {
        eprintln!("warning: {}:{}:{}: {}", domain.display(), diag.line, diag.col, diag.message);
    }
    let p = parse_problem(&read(problem)?).with_context(|| format!("{}", problem.display()))?;
    Ok((d, p))
}

fn load_ground(domain: &Path, problem: &Path) -> Result<(GroundTask, SourceMap)> {
    let (d, p) = load(domain, problem)?;
    Ok(ground(&d, &p)?)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Ground { domain, problem, output } => {
            let (t, _) = load_ground(&domain, &problem)?;
            write_out(output.as_deref(), &write_task(&t))?;
        }
        Command::Compile { encoding, bounds, domain, problem, output } => {
            let encoding = Encoding::from(encoding);
            if bounds.is_some() && encoding != Encoding::Param {
                bail!("--bounds only applies to the param encoding");
            }
            let (t, _) = load_ground(&domain, &problem)?;
            let c = compile(&t, encoding, bounds)?;
            c.write_to_dir(&output).with_context(|| format!("{}: cannot write", output.display()))?;
        }
        Command::Translate { manifest, direction, plan, output } => {
            let m = Manifest::from_json(&read(&manifest)?)
                .with_context(|| format!("{}", manifest.display()))?;
            let violations = m.check();
            if let Some(v) = violations.first() {
                bail!("{}: {v}", manifest.display());
            }
            let p = parse_plan(&read(&plan)?).with_context(|| format!("{}", plan.display()))?;
            let translated = match direction {
                DirectionArg::Back => translate_plan_back(&m, &p)?,
                DirectionArg::Forward => translate_plan_forward(&m, &p)?,
            };
            write_out(output.as_deref(), &print_plan(&translated))?;
        }
        Command::Validate { domain, problem, plan } => {
            let (t, _) = load_ground(&domain, &problem)?;
            let p = parse_plan(&read(&plan)?).with_context(|| format!("{}", plan.display()))?;
            let report = validate_plan(&t, &p)?;
            print!("{}", report.render());
            if !report.valid {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Solve { domain, problem, max_states } => {
            let (t, sources) = load_ground(&domain, &problem)?;
            let result = bfs_plan(&t, max_states);
            match result.outcome {
                BfsOutcome::Plan(plan) => print!("{}", print_plan(&sources.lift_plan(&plan))),
                BfsOutcome::NoPlan => bail!("no plan exists ({} states explored)", result.states),
                BfsOutcome::ResourceLimit => bail!("state limit of {max_states} reached, plan existence unknown"),
            }
        }
        Command::Tm { machine, encoding: TmEncodingArg::Param, output } => {
            let m = parse_machine(&read(&machine)?).with_context(|| format!("{}", machine.display()))?;
            let c = compile_tm(&m)?;
            c.write_to_dir(&output).with_context(|| format!("{}: cannot write", output.display()))?;
        }
        Command::Bounds { domain, problem } => {
            let (d, p) = load(&domain, &problem)?;
            print!("{}", report_bounds(&d, &p));
        }
        Command::Fuzz { seed, iters, props, max_states, failures } => {
            let report = fuzz(seed, iters, props, max_states);
            println!(
                "tasks: {} solvable: {} discrepancies: {}",
                report.tasks,
                report.solvable,
                report.discrepancies.len()
            );
            if !report.discrepancies.is_empty() {
                fs::create_dir_all(&failures)?;
                for d in &report.discrepancies {
                    let file = failures.join(format!("fuzz-{}-{}.task", d.seed, d.encoding));
                    fs::write(&file, write_task(&d.task))?;
                    let first = d.message.lines().next().unwrap_or("");
                    eprintln!("error: seed {} encoding {}: {first} (task in {})", d.seed, d.encoding, file.display());
                }
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            let chain: Vec<String> = e.chain().map(|c| c.to_string()).collect();
            eprintln!("error: {}", chain.join(": ").replace('\n', " "));
            ExitCode::from(1)
        }
    }
}
