use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use superkac::algebra::{Flavor, SuperAlgebraSpec};
use superkac::{Error, Result};
use superkac_cli::config::{parse_labels, parse_rational_list, RationalInput};
use superkac_cli::{execute, exit_code, load_config, write_outputs, Action, ExportWhat, JobConfig};

#[derive(Parser)]
#[command(name = "superkac", version, about = "Exact Kac modules of gl(m|n)/sl(m|n) and their self-extensions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the Kac module and write its matrices.
    Build(JobArgs),
    /// Check relations, degree profile, spectrum and the derivative identity.
    Verify(JobArgs),
    /// Compare s(b) with the typicality factors and locate singular vectors.
    Typicality(JobArgs),
    /// Build and verify the N-fold replication.
    Replicate(JobArgs),
    /// Build and verify the J_n(nu) twist; with --mu also decide isomorphism.
    Twist(JobArgs),
    /// Build the Heisenberg action and compare it with the induced module.
    Heisenberg(JobArgs),
    /// Export a module, the structure constants or the fundamental representation.
    Export(JobArgs),
    /// Run every job of a JSON config file.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Directory for the artifacts and reports of jobs that name none.
        #[arg(long = "out-dir")]
        out_dir: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Sl,
    Gl,
}

#[derive(Clone, Copy, ValueEnum)]
enum WhatArg {
    Module,
    Constants,
    Fundamental,
}

#[derive(Args)]
struct JobArgs {
    #[arg(long, value_enum)]
    algebra: FlavorArg,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    /// Even Dynkin labels, comma separated.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    labels: String,
    /// "symbolic" or a rational p/q.
    #[arg(long, default_value = "symbolic", allow_hyphen_values = true)]
    b: String,
    /// "symbolic" or a rational p/q (gl only).
    #[arg(long, default_value = "symbolic", allow_hyphen_values = true)]
    c: String,
    /// Number of copies for replicate.
    #[arg(long = "N")]
    n_copies: Option<usize>,
    /// Coupling constants lambda_1..lambda_{N-1}, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    lambdas: Option<String>,
    /// Twist direction nu_y,nu_z.
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<String>,
    /// Second direction for the isomorphism decision.
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    /// Length n of the J_n(nu) twist.
    #[arg(long = "n-twist")]
    n_twist: Option<usize>,
    #[arg(long, value_enum)]
    what: Option<WhatArg>,
    /// Exported module JSON to re-verify.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    report: Option<PathBuf>,
}

fn binding(s: &str) -> Option<RationalInput> {
    (s != "symbolic").then(|| RationalInput::Text(s.to_string()))
}

fn direction(s: &Option<String>) -> Result<Option<(RationalInput, RationalInput)>> {
    let Some(s) = s else { return Ok(None) };
    let mut v = parse_rational_list(s)?;
    if v.len() != 2 {
        return Err(Error::Parse(format!("direction `{s}` needs two components nu_y,nu_z")));
    }
    let z = v.pop().expect("two entries");
    Ok(Some((v.pop().expect("two entries"), z)))
}

impl JobArgs {
    fn into_job(self, action: Action) -> Result<JobConfig> {
        let algebra = match self.algebra {
            FlavorArg::Sl => SuperAlgebraSpec::new(Flavor::Sl, self.m, self.n)?,
            FlavorArg::Gl => SuperAlgebraSpec::new(Flavor::Gl, self.m, self.n)?,
        };
        let mut job = JobConfig::new(action, algebra, parse_labels(&self.labels)?);
        job.b = binding(&self.b);
        job.c = binding(&self.c);
        job.n_copies = self.n_copies;
        job.lambdas = self.lambdas.as_deref().map(parse_rational_list).transpose()?;
        job.nu = direction(&self.nu)?;
        job.mu = direction(&self.mu)?;
        job.n_twist = self.n_twist;
        job.what = self.what.map(|w| match w {
            WhatArg::Module => ExportWhat::Module,
            WhatArg::Constants => ExportWhat::Constants,
            WhatArg::Fundamental => ExportWhat::Fundamental,
        });
        job.input = self.input;
        job.out = self.out;
        job.report = self.report;
        Ok(job)
    }
}

fn jobs(command: Command) -> Result<Vec<JobConfig>> {
    let (action, args) = match command {
        Command::Run { config, out_dir } => {
            let mut jobs = load_config(&config)?;
            if let Some(dir) = out_dir {
                std::fs::create_dir_all(&dir)?;
                for (i, job) in jobs.iter_mut().enumerate() {
                    let stem = format!("{i:03}_{}", format!("{:?}", job.action).to_lowercase());
                    job.out.get_or_insert_with(|| dir.join(format!("{stem}.json")));
                    job.report.get_or_insert_with(|| dir.join(format!("{stem}.report.json")));
                }
            }
            return Ok(jobs);
        }
        Command::Build(a) => (Action::Build, a),
        Command::Verify(a) => (Action::Verify, a),
        Command::Typicality(a) => (Action::Typicality, a),
        Command::Replicate(a) => (Action::Replicate, a),
        Command::Twist(a) => (Action::Twist, a),
        Command::Heisenberg(a) => (Action::Heisenberg, a),
        Command::Export(a) => (Action::Export, a),
    };
    Ok(vec![args.into_job(action)?])
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = match jobs(cli.command) {
        Ok(j) => j,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mut worst = 0;
    for job in &jobs {
        let result = execute(job);
        let mut code = exit_code(&result);
        match &result {
            Ok(outcome) => {
                println!("== {}", outcome.title);
                print!("{}", outcome.report.render());
                if let Err(e) = write_outputs(job, outcome) {
                    eprintln!("error: {e}");
                    code = 2;
                }
            }
            Err(e) => {
                println!("== {}", superkac_cli::jobs::title(job));
                eprintln!("error: {e}");
            }
        }
        worst = worst.max(code);
    }
    ExitCode::from(worst as u8)
}
