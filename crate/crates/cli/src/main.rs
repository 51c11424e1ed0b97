use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use fanocheck::chow::{ExprValue, IntersectionRing, ProductBase, SplitBundleSpec};
use fanocheck::corpus::{run_corpus_file, RunOptions};
use fanocheck::geometry::{cone_smoothness, smoothness_verdict, AmbientSpace, ConeSmoothness, HypersurfaceVariety};
use fanocheck::lattice::{
    enumerate_classes, is_full_plane_config, langer_summary, pgl3_elements, pgl_orbit_canonical, plane_points,
    PicLattice, PointConfig,
};
use fanocheck::splitting::{delta1_probe, fedder_report, HypersurfaceRing};
use fanocheck::{delta1, parse_poly, CorpusError, Polynomial, Prime, VariableSet};

#[derive(Parser)]
#[command(name = "fanocheck", version, about = "Exact F_p checks for Fano threefold computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fedder's criterion for a weighted-homogeneous polynomial.
    Fsplit {
        #[command(flatten)]
        poly: PolyArgs,
        /// Print the full report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// The Witt carry Δ₁(f), or f^a·Δ₁(f)^b modulo the p^s-th Frobenius power.
    Delta1 {
        #[command(flatten)]
        poly: PolyArgs,
        /// Probe parameters `a,b,s`.
        #[arg(long, value_name = "A,B,S")]
        probe: Option<String>,
    },
    /// Smoothness of a hypersurface in a product of weighted projective spaces.
    Smooth {
        #[arg(short = 'p', long = "prime")]
        prime: u32,
        /// For example `P(1,1,1,1,3)` or `P2 x P2`.
        #[arg(long)]
        ambient: String,
        /// Comma-separated names for all coordinates, factor by factor.
        #[arg(long)]
        vars: Option<String>,
        #[arg(long)]
        poly: String,
        /// Only decide smoothness of the affine cone away from the irrelevant locus.
        #[arg(long)]
        cone: bool,
    },
    /// Intersection numbers on products of projective spaces and split bundles.
    Chow {
        /// Dimensions of the projective factors, e.g. `1,1,1`.
        #[arg(long)]
        base: String,
        /// Twists of the summands, `;`-separated, each a comma list over the
        /// base factors, e.g. `0,0;1,1`.
        #[arg(long, allow_hyphen_values = true)]
        bundle: Option<String>,
        #[arg(long, conflicts_with = "canonical", required_unless_present = "canonical")]
        expr: Option<String>,
        /// Print the canonical class.
        #[arg(long)]
        canonical: bool,
    },
    /// Picard-lattice and finite-plane queries.
    Lattice {
        #[command(subcommand)]
        query: LatticeQuery,
    },
    /// Run a corpus file and print a report.
    Verify {
        corpus: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Report every elapsed time as 0 so output is reproducible.
        #[arg(long)]
        no_timings: bool,
    },
}

#[derive(Args)]
struct PolyArgs {
    #[arg(short = 'p', long = "prime")]
    prime: u32,
    /// Comma-separated variables, each `name` or `name:weight`.
    #[arg(long)]
    vars: String,
    #[arg(long)]
    poly: String,
}

#[derive(Subcommand)]
enum LatticeQuery {
    /// (−1)-classes on the blowup of P² at `points` points.
    Exc {
        #[arg(long, default_value_t = 7)]
        points: usize,
        /// Summarize the Langer configuration (requires 7 points).
        #[arg(long)]
        langer: bool,
        /// List the classes.
        #[arg(long)]
        list: bool,
    },
    /// Order of PGL₃(F_q) and whether it fixes the full plane.
    Pgl {
        #[arg(short = 'q', long, default_value_t = 2)]
        q: u64,
    },
    /// Orbit and stabilizer sizes of a point set, e.g. `1,0,0;0,1,0;0,0,1;1,1,1`.
    Orbit {
        #[arg(short = 'q', long, default_value_t = 2)]
        q: u64,
        #[arg(long)]
        points: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

macro_rules! out {
    ($($arg:tt)*) => {
        write!(std::io::stdout().lock(), $($arg)*)?
    };
}

macro_rules! outln {
    ($($arg:tt)*) => {
        writeln!(std::io::stdout().lock(), $($arg)*)?
    };
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        // a closed reader such as `| head` is not an error
        Err(e) if e.downcast_ref::<io::Error>().is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe) => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Fsplit { poly, json } => {
            let ring = HypersurfaceRing::new(poly.parse()?)?;
            let report = fedder_report(&ring)?;
            if json {
                outln!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                outln!("{}", report.status);
                if let Some(w) = &report.witness {
                    outln!("witness: {w}");
                }
            }
        }
        Command::Delta1 { poly, probe } => {
            let f = poly.parse()?;
            let out = match probe {
                None => delta1(&f)?,
                Some(text) => {
                    let n = int_list(&text).context("--probe")?;
                    let [a, b, s] = n[..] else { bail!("--probe expects a,b,s") };
                    if a < 0 || b < 0 || s < 1 {
                        bail!("--probe needs a, b >= 0 and s >= 1");
                    }
                    delta1_probe(&HypersurfaceRing::new(f)?, a as u64, b as u64, s as u32)?
                }
            };
            outln!("{out}");
        }
        Command::Smooth { prime, ambient, vars, poly, cone } => {
            let names: Option<Vec<String>> = vars.map(|v| v.split(',').map(|s| s.trim().to_string()).collect());
            let space = AmbientSpace::parse(&ambient, names.as_deref())?;
            let variety = HypersurfaceVariety::parse(Prime::new(prime)?, space, &poly)?;
            if cone {
                match cone_smoothness(&variety)? {
                    ConeSmoothness::SmoothAwayFromIrrelevant => outln!("SmoothAwayFromIrrelevant"),
                    ConeSmoothness::SingularWitnessIdeal { chart, .. } => {
                        outln!("SingularWitnessIdeal");
                        outln!("chart: {}", chart.join("*"));
                    }
                }
            } else {
                outln!("{}", smoothness_verdict(&variety)?);
            }
        }
        Command::Chow { base, bundle, expr, canonical } => {
            let dims = int_list(&base).context("--base")?;
            let dims = dims.into_iter().map(usize::try_from).collect::<Result<Vec<_>, _>>().context("--base")?;
            let base = ProductBase::new(dims)?;
            let ring = match bundle {
                None => IntersectionRing::product(base),
                Some(text) => {
                    let twists = text.split(';').map(int_list).collect::<Result<Vec<_>>>().context("--bundle")?;
                    let spec = SplitBundleSpec::new(&base, twists)?;
                    IntersectionRing::bundle(base, spec)?
                }
            };
            if canonical {
                outln!("{}", ring.canonical_class());
            } else if let Some(expr) = expr {
                match ring.eval_expr(&expr)? {
                    ExprValue::Degree(n) => outln!("{n}"),
                    ExprValue::Element(e) => outln!("{e}"),
                }
            }
        }
        Command::Lattice { query } => lattice(query)?,
        Command::Verify { corpus, jobs, format, no_timings } => {
            if jobs == 0 {
                bail!("--jobs must be positive");
            }
            let report = match run_corpus_file(&corpus, RunOptions { jobs, timings: !no_timings }) {
                Ok(r) => r,
                Err(e @ CorpusError::Io { .. }) => bail!(e),
                Err(e) => bail!("{}: {e}", corpus.display()),
            };
            match format {
                Format::Json => outln!("{}", report.to_json()),
                Format::Text => out!("{}", report.to_text()),
            }
            return Ok(report.exit_code() as u8);
        }
    }
    Ok(0)
}

fn lattice(query: LatticeQuery) -> Result<()> {
    match query {
        LatticeQuery::Exc { points, langer, list } => {
            if langer {
                if points != 7 {
                    bail!("--langer needs --points 7");
                }
                let s = langer_summary()?;
                outln!("{s}");
                if list {
                    for c in &s.compatible {
                        outln!("compatible {c}");
                    }
                    for c in &s.neg2 {
                        outln!("(-2) {c}");
                    }
                }
            } else {
                let classes = enumerate_classes(&PicLattice::new(points)?, -1, -1, 3);
                outln!("(-1)-classes: {}", classes.len());
                if list {
                    for c in classes {
                        outln!("{c}");
                    }
                }
            }
        }
        LatticeQuery::Pgl { q } => {
            let order = pgl3_elements(q)?.len();
            let full = PointConfig::new(q, &plane_points(q)?)?;
            let fixed = is_full_plane_config(&full) && pgl_orbit_canonical(&full)?.orbit_size == 1;
            outln!("order: {order}; full plane fixed: {}", if fixed { "yes" } else { "no" });
        }
        LatticeQuery::Orbit { q, points } => {
            let pts = points
                .split(';')
                .map(|p| {
                    let c = int_list(p)?;
                    let [a, b, d] = c[..] else { bail!("points need three coordinates") };
                    let coord = |x: i64| u8::try_from(x).context("coordinate out of range");
                    Ok([coord(a)?, coord(b)?, coord(d)?])
                })
                .collect::<Result<Vec<_>>>()
                .context("--points")?;
            let o = pgl_orbit_canonical(&PointConfig::new(q, &pts)?)?;
            outln!("orbit: {}; stabilizer: {}", o.orbit_size, o.stabilizer_size);
        }
    }
    Ok(())
}

impl PolyArgs {
    fn parse(&self) -> Result<Polynomial> {
        let mut names = Vec::new();
        let mut weights = Vec::new();
        for item in self.vars.split(',') {
            let (name, w) = match item.split_once(':') {
                Some((n, w)) => (n, w.trim().parse::<u32>().with_context(|| format!("weight of {n:?}"))?),
                None => (item, 1),
            };
            names.push(name.trim().to_string());
            weights.push(vec![w]);
        }
        let vars = Arc::new(VariableSet::new(names, weights)?);
        Ok(parse_poly(&self.poly, &vars, Prime::new(self.prime)?)?)
    }
}

fn int_list(text: &str) -> Result<Vec<i64>> {
    text.split(',').map(|s| s.trim().parse::<i64>().with_context(|| format!("{s:?} is not an integer"))).collect()
}
