use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use fzhop::bounds::{in_delta, in_n2, sigma_star_raster, RegionW};
use fzhop::charpoly::{aliases, cheb_p, cheb_p_star, cheb_q, p_poly_any, symmetry_set, IntPoly};
use fzhop::dynamics::{
    filled_julia_raster, inverse_cloud, julia_membership_raster, DEFAULT_LEVEL_CAP,
};
use fzhop::io::{write_cloud_csv, write_pgm};
use fzhop::raster::{raster_membership, RasterGrid, Window, MEMBER, UNCERTAIN};
use fzhop::spectra::{pi_cumulative, pi_n, sigma_n, SpectralCloud};
use fzhop::verify::{run_suite, SUITES};
use fzhop::SignVector;

const MAX_PI_PERIOD: usize = 14;
const MAX_SIGMA_SIZE: usize = 20;
const MAX_SIGMA_STAR_SIZE: usize = 12;
const MAX_RES: usize = 4096;
const MAX_DEPTH: usize = 24;

#[derive(Parser)]
#[command(
    name = "fzhop",
    version,
    about = "Spectra, bounds and Julia sets for the Feinberg-Zee hopping matrix"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the distinct polynomials p_k, k in K, up to a degree.
    Polys {
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
    },
    /// Sample pi_n (or Pi_n with --cumulative) to CSV.
    Pi {
        #[arg(long)]
        period: usize,
        #[arg(long)]
        cumulative: bool,
        #[arg(long, default_value_t = fzhop::spectra::DEFAULT_NUM_T)]
        num_t: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Eigenvalues of all finite sections of one size, to CSV.
    Sigma {
        #[arg(long)]
        period: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Raster of the pseudospectral upper bound Sigma*_n, to PGM.
    SigmaStar {
        #[arg(long)]
        period: usize,
        #[arg(long, default_value = "-2.2,2.2,-2.2,2.2", allow_hyphen_values = true)]
        window: String,
        #[arg(long, default_value = "256")]
        res: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Filled Julia set raster, to PGM (escape counts, or codes with --membership).
    Julia {
        #[arg(long)]
        poly: String,
        #[arg(long, default_value = "-2,2,-2,2", allow_hyphen_values = true)]
        window: String,
        #[arg(long, default_value = "512")]
        res: String,
        #[arg(long, default_value_t = 1000)]
        max_iter: usize,
        #[arg(long)]
        membership: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Inverse-iteration point cloud of the unit disk, to CSV.
    Cloud {
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value_t = 2000)]
        seeds: usize,
        #[arg(long, default_value_t = fzhop::dynamics::DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Raster of an explicit region (Delta, N2 or W), to PGM.
    Region {
        #[arg(long, value_enum)]
        set: RegionSet,
        #[arg(long, default_value = "-2.2,2.2,-2.2,2.2", allow_hyphen_values = true)]
        window: String,
        #[arg(long, default_value = "512")]
        res: String,
        /// Mark the circle of radius 1.1 and check that it lies in the set.
        #[arg(long)]
        overlay: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a verification suite ("all" runs every suite).
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RegionSet {
    Delta,
    N2,
    W,
}

enum Outcome {
    Ok,
    VerifyFailed,
}

/// A polynomial named on the command line, with whether it is known to lie
/// in S.
struct PolySpec {
    poly: IntPoly,
    in_s: bool,
    name: String,
}

impl FromStr for PolySpec {
    type Err = anyhow::Error;

    /// `P:m`, `Q:m`, `Pstar:m`, or a sign vector such as `(1,-1,1)` / `+-+`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((fam, m)) = s.split_once(':') {
            let m: usize = m
                .parse()
                .with_context(|| format!("bad index in poly spec {s:?}"))?;
            let poly = match fam {
                "P" => cheb_p(m)?,
                "Q" => cheb_q(m)?,
                "Pstar" => cheb_p_star(m)?,
                _ => bail!("unknown poly family {fam:?}; expected P, Q or Pstar"),
            };
            return Ok(Self {
                in_s: poly.degree() >= 2,
                poly,
                name: s.to_string(),
            });
        }
        let k: SignVector = s.parse().with_context(|| {
            format!("unknown poly spec {s:?}; expected P:m, Q:m, Pstar:m or a sign vector")
        })?;
        Ok(Self {
            poly: p_poly_any(&k),
            in_s: k.is_in_k(),
            name: k.to_string(),
        })
    }
}

fn parse_res(s: &str) -> Result<(usize, usize)> {
    let (w, h) = match s.split_once('x') {
        Some((w, h)) => (w.trim().parse()?, h.trim().parse()?),
        None => {
            let n: usize = s
                .trim()
                .parse()
                .with_context(|| format!("bad resolution {s:?}"))?;
            (n, n)
        }
    };
    if w == 0 || h == 0 || w > MAX_RES || h > MAX_RES {
        bail!("resolution {w}x{h} outside 1..={MAX_RES} per side");
    }
    Ok((w, h))
}

fn parse_window(s: &str) -> Result<Window> {
    Ok(s.parse::<Window>()?)
}

fn check_cap(what: &str, n: usize, lo: usize, hi: usize) -> Result<()> {
    if n < lo || n > hi {
        bail!("{what} = {n} outside the supported range {lo}..={hi}");
    }
    Ok(())
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    let f = File::create(path).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(BufWriter::new(f))
}

fn save_cloud(path: &Path, cloud: &SpectralCloud) -> Result<()> {
    write_cloud_csv(create(path)?, cloud).with_context(|| format!("writing {}", path.display()))
}

fn save_pgm(path: &Path, grid: &RasterGrid) -> Result<()> {
    write_pgm(create(path)?, grid).with_context(|| format!("writing {}", path.display()))
}

fn cmd_polys(max_degree: usize) -> Result<Outcome> {
    check_cap("max degree", max_degree, 2, 24)?;
    let set = symmetry_set(max_degree)?;
    println!("{:<28} {:<48} aliases", "k", "p_k(λ)");
    for s in &set {
        let names = aliases(&s.poly, &set).join(", ");
        println!(
            "{:<28} {:<48} {}",
            s.witnesses[0].to_string(),
            s.poly.to_string(),
            names
        );
    }
    println!("{} distinct polynomials", set.len());
    Ok(Outcome::Ok)
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.cmd {
        Cmd::Polys { max_degree } => cmd_polys(max_degree),
        Cmd::Pi {
            period,
            cumulative,
            num_t,
            out,
        } => {
            check_cap("period", period, 1, MAX_PI_PERIOD)?;
            let cloud = if cumulative {
                pi_cumulative(period, num_t)?
            } else {
                pi_n(period, num_t)?
            };
            save_cloud(&out, &cloud)?;
            println!(
                "{}: {} points -> {}",
                cloud.label,
                cloud.len(),
                out.display()
            );
            Ok(Outcome::Ok)
        }
        Cmd::Sigma { period, out } => {
            check_cap("period", period, 1, MAX_SIGMA_SIZE)?;
            let cloud = sigma_n(period)?;
            save_cloud(&out, &cloud)?;
            println!(
                "{}: {} points -> {}",
                cloud.label,
                cloud.len(),
                out.display()
            );
            Ok(Outcome::Ok)
        }
        Cmd::SigmaStar {
            period,
            window,
            res,
            out,
        } => {
            check_cap("period", period, 1, MAX_SIGMA_STAR_SIZE)?;
            let (w, h) = parse_res(&res)?;
            let g = sigma_star_raster(period, parse_window(&window)?, w, h)?;
            save_pgm(&out, &g)?;
            println!(
                "Sigma*_{period}: {} of {} pixels inside -> {}",
                g.count(MEMBER),
                w * h,
                out.display()
            );
            Ok(Outcome::Ok)
        }
        Cmd::Julia {
            poly,
            window,
            res,
            max_iter,
            membership,
            out,
        } => {
            let spec: PolySpec = poly.parse()?;
            check_cap("max iterations", max_iter, 1, 1_000_000)?;
            let (w, h) = parse_res(&res)?;
            let win = parse_window(&window)?;
            let g = if membership {
                julia_membership_raster(&spec.poly, win, w, h, max_iter, spec.in_s)?
            } else {
                filled_julia_raster(&spec.poly, win, w, h, max_iter, spec.in_s)?
            };
            save_pgm(&out, &g)?;
            let bounded = g
                .values
                .iter()
                .filter(|&&v| {
                    if membership {
                        v == MEMBER
                    } else {
                        v as usize == max_iter
                    }
                })
                .count();
            println!(
                "K({}) = K({}): {bounded} bounded pixels -> {}",
                spec.name,
                spec.poly,
                out.display()
            );
            Ok(Outcome::Ok)
        }
        Cmd::Cloud {
            poly,
            depth,
            seeds,
            seed,
            out,
        } => {
            let spec: PolySpec = poly.parse()?;
            check_cap("depth", depth, 1, MAX_DEPTH)?;
            check_cap("seeds", seeds, 1, DEFAULT_LEVEL_CAP)?;
            let cloud = inverse_cloud(&spec.poly, depth, seeds, seed)?;
            save_cloud(&out, &cloud)?;
            println!(
                "U({}): {} points -> {}",
                spec.name,
                cloud.len(),
                out.display()
            );
            Ok(Outcome::Ok)
        }
        Cmd::Region {
            set,
            window,
            res,
            overlay,
            out,
        } => {
            let (w, h) = parse_res(&res)?;
            let win = parse_window(&window)?;
            let region = RegionW::default();
            let pred = |z: Complex64| match set {
                RegionSet::Delta => in_delta(z),
                RegionSet::N2 => in_n2(z),
                RegionSet::W => region.contains(z),
            };
            let mut g = raster_membership(pred, win, w, h)?;
            let mut outcome = Outcome::Ok;
            if overlay {
                let (dx, dy) = g.pixel_size();
                let half = 0.5 * dx.max(dy);
                for j in 0..h {
                    for i in 0..w {
                        if (g.center(i, j).norm() - 1.1).abs() <= half {
                            g.set(i, j, UNCERTAIN);
                        }
                    }
                }
                let misses = (0..10_000)
                    .map(|j| {
                        Complex64::from_polar(1.1, std::f64::consts::TAU * j as f64 / 10_000.0)
                    })
                    .filter(|&z| !pred(z))
                    .count();
                println!(
                    "1.1-circle inside the set: {}",
                    if misses == 0 { "yes" } else { "no" }
                );
                if misses > 0 {
                    outcome = Outcome::VerifyFailed;
                }
            }
            save_pgm(&out, &g)?;
            println!(
                "{} of {} pixels inside -> {}",
                g.count(MEMBER),
                w * h,
                out.display()
            );
            Ok(outcome)
        }
        Cmd::Verify { suite } => {
            let names: Vec<&str> = if suite == "all" {
                SUITES.to_vec()
            } else if SUITES.contains(&suite.as_str()) {
                vec![suite.as_str()]
            } else {
                bail!(
                    "unknown suite {suite:?}; expected all or one of {}",
                    SUITES.join(", ")
                );
            };
            let mut ok = true;
            for name in names {
                let report = run_suite(name)?;
                print!("{report}");
                ok &= report.passed();
            }
            Ok(if ok {
                Outcome::Ok
            } else {
                Outcome::VerifyFailed
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::VerifyFailed) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
