use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand};
use num_traits::One;
use tropreal::geometry::{HomogVector, TropicalCurve};
use tropreal::l32::{decide_one_edge, fan_realizable_opposite, length_interval, pair_of_curve, stats, Side};
use tropreal::matroid::{Matroid, PlaneIdeal};
use tropreal::projection::pushforward;
use tropreal::rational::fmt_q;
use tropreal::realizability::{certificate, decide, validate, EngineOptions};
use tropreal_cli::{read_curve, to_json, Parsed};

#[derive(Parser)]
#[command(
    name = "tropreal",
    version,
    about = "Relative realizability of tropical curves in tropical planes"
)]
struct Cli {
    /// Worker threads for per-basis work (output does not depend on it).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Lattice point `i,j` of the reference Newton polygon whose coefficient gets valuation 0.
    #[arg(long, global = true, value_parser = parse_pair)]
    anchor_vertex: Option<[i64; 2]>,
    /// Reference basis `j0,j1,j2`.
    #[arg(long, global = true, value_parser = parse_triple)]
    initial_basis: Option<[usize; 3]>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check balancing and containment in the Bergman fan.
    Validate {
        file: PathBuf,
    },
    /// Print 1 if the curve is realizable in the plane, -1 otherwise.
    Realizable {
        file: PathBuf,
    },
    /// Print a realizing polynomial or `none`.
    Certificate {
        file: PathBuf,
    },
    /// Push-forward to the coordinate plane of a basis.
    Project {
        file: PathBuf,
        #[arg(long, value_parser = parse_triple)]
        basis: [usize; 3],
    },
    Degree {
        file: PathBuf,
    },
    Recession {
        file: PathBuf,
    },
    /// Length interval and row statistics for one-edge curves in the plane of x0+x1+x2+x3.
    L32Interval {
        file: PathBuf,
    },
}

fn parse_list<T: std::str::FromStr, const N: usize>(s: &str) -> Result<[T; N], String> {
    let parts: Vec<T> = s
        .split(',')
        .map(|p| p.trim().parse::<T>().map_err(|_| format!("bad entry {p:?}")))
        .collect::<Result<_, _>>()?;
    parts
        .try_into()
        .map_err(|_| format!("expected {N} comma separated values"))
}

fn parse_pair(s: &str) -> Result<[i64; 2], String> {
    parse_list(s)
}

fn parse_triple(s: &str) -> Result<[usize; 3], String> {
    parse_list(s)
}

fn load(file: &Path) -> anyhow::Result<Parsed> {
    let p = read_curve(file)?;
    if !p.scale.is_one() {
        eprintln!("scale: {} (vertices rescaled to integral coordinates)", fmt_q(&p.scale));
    }
    Ok(p)
}

fn check(p: &Parsed) -> anyhow::Result<Matroid> {
    let m = Matroid::from_ideal(&p.ideal)?;
    validate(&m, &p.curve).context("invalid curve")?;
    Ok(m)
}

fn is_l32(ideal: &PlaneIdeal) -> bool {
    let g = ideal.generators();
    ideal.n() == 3 && g.len() == 1 && g[0].iter().all(|x| *x == g[0][0])
}

fn run(cli: &Cli) -> anyhow::Result<ExitCode> {
    let opts = EngineOptions {
        initial_basis: cli.initial_basis,
        anchor: cli.anchor_vertex,
    };
    match &cli.command {
        Command::Validate { file } => {
            let p = load(file)?;
            check(&p)?;
            println!("balanced: yes");
            println!("in Bergman fan: yes");
            println!("degree: {}", p.curve.degree()?);
            println!("scale: {}", fmt_q(&p.scale));
            Ok(ExitCode::SUCCESS)
        }
        Command::Realizable { file } => {
            let p = load(file)?;
            check(&p)?;
            let yes = decide(&p.ideal, &p.curve, &opts)?;
            println!("{}", if yes { 1 } else { -1 });
            Ok(verdict(yes))
        }
        Command::Certificate { file } => {
            let p = load(file)?;
            check(&p)?;
            match certificate(&p.ideal, &p.curve, &opts)? {
                Some((f, a0)) => {
                    let names: Vec<String> = a0.iter().map(|j| format!("x{j}")).collect();
                    println!("{}", f.to_string_with(&names));
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    println!("none");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Project { file, basis } => {
            let p = load(file)?;
            let m = check(&p)?;
            if !m.is_basis(basis) {
                bail!("{basis:?} is not a basis of the matroid");
            }
            let mut b = *basis;
            b.sort_unstable();
            let plane = pushforward(&p.curve, &b)?.to_tropical()?;
            println!("{}", to_json(&PlaneIdeal::new(2, vec![])?, &plane));
            Ok(ExitCode::SUCCESS)
        }
        Command::Degree { file } => {
            let p = load(file)?;
            check(&p)?;
            println!("{}", p.curve.degree()?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Recession { file } => {
            let p = load(file)?;
            check(&p)?;
            let n = p.curve.n();
            let origin = HomogVector::from_ints(&vec![0; n + 1]);
            let rays: Vec<_> = p.curve.recession_fan().into_iter().map(|(d, w)| (0, d, w)).collect();
            let fan = TropicalCurve::from_parts(n, vec![origin], &[], &rays)?;
            println!("{}", to_json(&p.ideal, &fan));
            Ok(ExitCode::SUCCESS)
        }
        Command::L32Interval { file } => {
            let p = load(file)?;
            if !is_l32(&p.ideal) {
                bail!("l32-interval needs the plane x0+x1+x2+x3");
            }
            check(&p)?;
            let (pair, q, qp) = pair_of_curve(&p.curve)?;
            println!("I = {}", length_interval(&pair));
            println!("q = {}, q' = {}", fmt_q(&q), fmt_q(&qp));
            println!(
                "fan realizable: {}",
                if fan_realizable_opposite(&pair) { "yes" } else { "no" }
            );
            println!("side vertex s n r l");
            for st in stats(&pair) {
                let side = match st.side {
                    Side::P3 => "P3",
                    Side::P1 => "P1",
                };
                println!(
                    "{side} ({},{}) {} {} {} {}",
                    st.vertex[0], st.vertex[1], st.s, st.n, st.r, st.l
                );
            }
            let yes = decide_one_edge(&pair, &q, &qp);
            println!("realizable: {}", if yes { 1 } else { -1 });
            Ok(verdict(yes))
        }
    }
}

fn verdict(yes: bool) -> ExitCode {
    if yes {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| anyhow!(e))
            .and_then(|pool| pool.install(|| run(&cli))),
        None => run(&cli),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
