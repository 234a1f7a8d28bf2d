//! `altcsit`: DoF regions, schedules, decodability checks and rate sweeps for
//! the two-user MISO broadcast channel with alternating CSIT.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use altcsit_core::channel::{draw_channels, split_seed};
use altcsit_core::compose::{corner_point, Corner};
use altcsit_core::doc::{RegionDoc, ScheduleDoc};
use altcsit_core::figures::{surface, tradeoff, triples_csv, SURFACE_HEADER, TRADEOFF_HEADER};
use altcsit_core::rational::{parse_rational, Rational};
use altcsit_core::sim::to_csv;
use altcsit_core::{
    build_trace, check_decodable, compose_corner, compose_point, dof_slope, rate_sweep, DofPoint,
    Error, LambdaPmf, Role, SchemeId, SchemeRef, SweepConfig, SweepTarget,
};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "altcsit", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Region inequalities, marginals, case, corner points and sum-DoF.
    Region {
        #[command(flatten)]
        pmf: PmfArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Validated time-sharing schedule for a corner or a target point.
    Compose {
        #[command(flatten)]
        pmf: PmfArg,
        #[command(flatten)]
        goal: Goal,
        #[command(flatten)]
        out: OutArg,
    },
    /// Rank-based decodability check of one scheme over random draws.
    Verify {
        #[command(flatten)]
        scheme: SchemeArg,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Monte Carlo rate sweep (CSV) and high-SNR DoF slope of a scheme or schedule.
    Simulate {
        #[arg(long, conflicts_with_all = ["pmf", "corner", "target"], required_unless_present = "pmf")]
        scheme: Option<SchemeId>,
        #[arg(long, default_value = "normal", requires = "scheme")]
        role: Role,
        /// Simulate the schedule for this distribution (with --corner or --target).
        #[arg(long, requires = "goal")]
        pmf: Option<String>,
        #[arg(long, group = "goal")]
        corner: Option<Corner>,
        #[arg(long, group = "goal", conflicts_with = "corner")]
        target: Option<String>,
        #[arg(long, default_value_t = 20.0, allow_negative_numbers = true)]
        snr_from: f64,
        #[arg(long, default_value_t = 60.0, allow_negative_numbers = true)]
        snr_to: f64,
        #[arg(long, default_value_t = 5.0)]
        snr_step: f64,
        #[arg(long, default_value_t = 2000)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Exact sum-DoF over the (λD, λP) simplex.
    Surface {
        #[arg(long, default_value = "1/30")]
        grid_step: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Least perfect and delayed CSIT needed for each sum-DoF.
    Tradeoff {
        #[arg(long, default_value = "1/60")]
        grid_step: String,
        #[arg(long, default_value = "1")]
        dof_from: String,
        #[arg(long, default_value = "2")]
        dof_to: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Symbol-level trace of one scheme on one channel draw.
    Trace {
        #[command(flatten)]
        scheme: SchemeArg,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Args)]
struct PmfArg {
    /// CSIT state fractions, e.g. "PD=1/2, DD=1/5". Mirror states are filled in.
    #[arg(long)]
    pmf: String,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Goal {
    /// P0, P1, P2, P1star or P2star.
    #[arg(long)]
    corner: Option<Corner>,
    /// A DoF pair "(d1,d2)" inside the region.
    #[arg(long)]
    target: Option<String>,
}

#[derive(Args)]
struct SchemeArg {
    /// Catalog id such as S2, S4/3-1 or S8/5.
    #[arg(long)]
    scheme: SchemeId,
    #[arg(long, default_value = "normal")]
    role: Role,
}

impl SchemeArg {
    fn get(&self) -> SchemeRef {
        SchemeRef::new(self.scheme, self.role)
    }
}

#[derive(Args)]
struct OutArg {
    /// Write the output here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl OutArg {
    fn emit(&self, text: &str) -> Result<(), Failure> {
        match &self.out {
            Some(p) => fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

enum Failure {
    Core(Error),
    Io(String),
    Undecodable(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

const EXIT_USAGE: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_SIMULATION: u8 = 3;

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(Error::Parse(_) | Error::InvalidConfig(_)) => EXIT_USAGE,
            Failure::Core(Error::DegenerateChannel(_) | Error::TooFewSlots { .. }) => {
                EXIT_SIMULATION
            }
            Failure::Core(_) => EXIT_DOMAIN,
            Failure::Io(_) => EXIT_USAGE,
            Failure::Undecodable(_) => EXIT_SIMULATION,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Core(e) => e.to_string(),
            Failure::Io(m) | Failure::Undecodable(m) => m.clone(),
        }
    }
}

fn schedule_for(
    pmf: &LambdaPmf,
    corner: Option<Corner>,
    target: Option<&str>,
) -> Result<ScheduleDoc, Error> {
    let (target, schedule) = match (corner, target) {
        (Some(c), _) => (corner_point(pmf, c), compose_corner(pmf, c)?),
        (None, Some(t)) => {
            let t = DofPoint::parse(t)?;
            let s = compose_point(pmf, &t)?;
            (t, s)
        }
        (None, None) => return Err(Error::Parse("need --corner or --target".into())),
    };
    Ok(ScheduleDoc::new(pmf, &target, schedule))
}

fn step(text: &str) -> Result<Rational, Error> {
    parse_rational(text)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Region { pmf, out } => {
            let pmf = LambdaPmf::parse(&pmf.pmf)?;
            out.emit(&RegionDoc::from_pmf(&pmf).render())
        }
        Command::Compose { pmf, goal, out } => {
            let pmf = LambdaPmf::parse(&pmf.pmf)?;
            let doc = schedule_for(&pmf, goal.corner, goal.target.as_deref())?;
            if !doc.report.passed() {
                return Err(Failure::Core(Error::InvalidSchedule(format!(
                    "schedule failed validation:\n{}",
                    doc.report
                ))));
            }
            out.emit(&doc.render())
        }
        Command::Verify {
            scheme,
            trials,
            seed,
        } => {
            let s = scheme.get();
            let n = s.spec().slots();
            let mut pass = [0usize; 2];
            for i in 0..trials as u64 {
                let t = build_trace(s, &draw_channels(split_seed(seed, i), n)?)?;
                let (a, b) = check_decodable(&t);
                pass[0] += a as usize;
                pass[1] += b as usize;
            }
            println!("scheme {s}");
            println!("rx1 {}/{trials}", pass[0]);
            println!("rx2 {}/{trials}", pass[1]);
            if pass != [trials, trials] {
                return Err(Failure::Undecodable(format!(
                    "{s} failed decodability on some trials"
                )));
            }
            Ok(())
        }
        Command::Simulate {
            scheme,
            role,
            pmf,
            corner,
            target,
            snr_from,
            snr_to,
            snr_step,
            trials,
            seed,
            out,
        } => {
            let cfg = SweepConfig::uniform(snr_from, snr_to, snr_step, trials, seed)?;
            let sweep_target = match (scheme, pmf) {
                (Some(id), _) => SweepTarget::Scheme(SchemeRef::new(id, role)),
                (None, Some(p)) => {
                    let pmf = LambdaPmf::parse(&p)?;
                    SweepTarget::Schedule(schedule_for(&pmf, corner, target.as_deref())?.schedule)
                }
                (None, None) => {
                    return Err(Failure::Core(Error::Parse("need --scheme or --pmf".into())))
                }
            };
            let label = sweep_target.label();
            let samples = rate_sweep(sweep_target, &cfg)?;
            let (d1, d2) = dof_slope(&samples)?;
            out.emit(&to_csv(&samples, &label))?;
            eprintln!("slope {label} d1={d1:.4} d2={d2:.4} sum={:.4}", d1 + d2);
            Ok(())
        }
        Command::Surface { grid_step, out } => {
            let rows = surface(&step(&grid_step)?)?;
            out.emit(&triples_csv(SURFACE_HEADER, &rows))
        }
        Command::Tradeoff {
            grid_step,
            dof_from,
            dof_to,
            out,
        } => {
            let rows = tradeoff(&step(&dof_from)?, &step(&dof_to)?, &step(&grid_step)?)?;
            out.emit(&triples_csv(TRADEOFF_HEADER, &rows))
        }
        Command::Trace { scheme, seed, out } => {
            let s = scheme.get();
            let t = build_trace(s, &draw_channels(seed, s.spec().slots())?)?;
            out.emit(&t.to_text())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}
