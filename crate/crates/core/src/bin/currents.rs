use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use currents::current::{RationalCurrent, Weight};
use currents::decomposition::{hull, is_binding, standard_decomposition, Geometry};
use currents::dt::{read_checkpoint, ArcSystem};
use currents::intersection::{current_pairing, self_intersection};
use currents::mcg::{parse_mapping_class, twist_generators};
use currents::measures::{
    homogeneous_ball_volume, homogeneous_ball_volume_quadrature, orbit_counting_experiment, simplex_integral,
    simplex_integral_monte_carlo, thurston_ball_estimate, top_scaling_exponent, unit_ball_bounds_experiment,
    OrbitSearchParams,
};
use currents::report::{load_metric, load_surface, resolve_output, LoadedMetric, RunHeader, SurfaceFile, OUT_DIR_ENV};
use currents::surface::RibbonSpine;
use currents::{Error, Result};

#[derive(Parser, Debug)]
#[command(
    name = "currents",
    version,
    about = "Rational geodesic currents on surfaces with boundary"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Genus, ignored when --surface is given.
    #[arg(long, global = true, default_value_t = 1)]
    genus: u32,
    /// Number of boundary components, ignored when --surface is given.
    #[arg(long, global = true, default_value_t = 1)]
    boundary: u32,
    /// Surface JSON file: {"genus": g, "boundary": n, "order": [...]}.
    #[arg(long, global = true)]
    surface: Option<PathBuf>,
    /// Metric JSON file (Fenchel-Nielsen or Schottky data).
    #[arg(long, global = true)]
    metric: Option<PathBuf>,
    /// Output file; defaults to $CURRENTS_OUT_DIR/<command>.<ext> or stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Intersection number of two currents.
    Intersect { w1: String, w2: String },
    /// Self-intersection number of a closed curve.
    Selfint { w: String },
    /// Integral multi-curves with l_P <= L, as CSV.
    Census {
        #[arg(long = "L")]
        l: f64,
        /// Resume after the last checkpoint of this CSV file.
        #[arg(long)]
        resume: Option<PathBuf>,
        #[arg(long, default_value_t = 10_000)]
        checkpoint_every: usize,
    },
    /// Lattice-point estimates of the Thurston measure over a grid of L.
    Thurston {
        #[arg(long, value_delimiter = ',', required = true)]
        grid: Vec<f64>,
    },
    /// Ball volume of a homogeneous measure.
    Homvol {
        #[arg(long)]
        d: f64,
        #[arg(long = "N")]
        big_n: u32,
        #[arg(long = "L")]
        l: f64,
        #[arg(long)]
        ell: f64,
        #[arg(long, default_value_t = 1.0)]
        m: f64,
    },
    /// Simplex constant, exact and by Monte-Carlo.
    Simplex {
        #[arg(long = "N")]
        big_n: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 200_000)]
        samples: usize,
    },
    /// Standard decomposition of a current.
    Decompose {
        #[arg(long)]
        current: String,
    },
    /// Whether a current is binding.
    Binding {
        #[arg(long)]
        current: String,
        #[arg(long)]
        bound: Option<f64>,
    },
    /// Hull of an scc-free current.
    Hull {
        #[arg(long)]
        current: String,
        #[arg(long)]
        bound: Option<f64>,
    },
    /// Orbit counts in hyperbolic-length balls.
    OrbitCount {
        #[arg(long)]
        curve: String,
        #[arg(long, value_delimiter = ',', required = true)]
        grid: Vec<f64>,
        #[arg(long, default_value_t = 1.5)]
        slack: f64,
        #[arg(long, default_value_t = 4.0)]
        max_slack: f64,
        #[arg(long, default_value_t = 2_000_000)]
        budget: usize,
    },
    /// Thurston-measure estimates over one-holed tori with the given
    /// boundary lengths.
    UnitBall {
        #[arg(long, value_delimiter = ',', required = true)]
        lengths: Vec<f64>,
        #[arg(long = "L")]
        l: f64,
        #[arg(long, default_value_t = 0.5)]
        systole: f64,
    },
    /// Image of a current under a mapping class such as "Ta*Tb^-1".
    Twist {
        #[arg(long)]
        phi: String,
        #[arg(long)]
        on: String,
    },
}

struct Sink {
    out: Box<dyn Write>,
}

impl Sink {
    fn open(global: &Global, command: &str, ext: &str) -> Result<Self> {
        let out: Box<dyn Write> = match resolve_output(global.out.as_deref(), command, ext) {
            Some(p) => Box::new(BufWriter::new(File::create(&p).map_err(|e| {
                Error::Io(format!(
                    "cannot create output file {} ({OUT_DIR_ENV} or --out): {e}",
                    p.display()
                ))
            })?)),
            None => Box::new(BufWriter::new(io::stdout())),
        };
        Ok(Sink { out })
    }

    fn json<T: Serialize>(&mut self, v: &T) -> Result<()> {
        serde_json::to_writer(&mut self.out, v)?;
        writeln!(self.out)?;
        Ok(())
    }

    fn header(&mut self, h: &RunHeader) -> Result<()> {
        self.json(&json!({ "header": h }))
    }
}

fn weight_json(w: Weight) -> Value {
    if w.is_integer() {
        json!(w.to_integer())
    } else {
        json!(w.to_string())
    }
}

fn spine_of(global: &Global) -> Result<RibbonSpine> {
    match &global.surface {
        Some(p) => load_surface(p)?.spine(),
        None => SurfaceFile {
            genus: global.genus,
            boundary: global.boundary,
            order: None,
        }
        .spine(),
    }
}

fn metric_of(global: &Global, spine: &RibbonSpine) -> Result<LoadedMetric> {
    load_metric(spine, global.metric.as_deref())
}

fn run(cli: Cli) -> Result<()> {
    let g = &cli.global;
    let spine = spine_of(g)?;
    match cli.command {
        Command::Intersect { w1, w2 } => {
            let c1 = RationalCurrent::parse(&w1, &spine)?;
            let c2 = RationalCurrent::parse(&w2, &spine)?;
            let iota = current_pairing(&spine, &c1, &c2);
            let mut sink = Sink::open(g, "intersect", "jsonl")?;
            sink.header(&RunHeader::new(
                "intersect",
                &spine,
                None,
                g.seed,
                json!({ "w1": w1, "w2": w2 }),
            ))?;
            sink.json(&json!({ "iota": weight_json(iota) }))
        }
        Command::Selfint { w } => {
            let (class, power) = spine.class(&w)?;
            let s = self_intersection(&spine, &class);
            // A p-th power of a primitive curve with s crossings has
            // p^2 s + p - 1.
            let p = power as u64;
            let mut sink = Sink::open(g, "selfint", "jsonl")?;
            sink.header(&RunHeader::new("selfint", &spine, None, g.seed, json!({ "w": w })))?;
            sink.json(&json!({ "selfint": p * p * s + p - 1, "class": class.to_string(), "power": power }))
        }
        Command::Census {
            l,
            resume,
            checkpoint_every,
        } => {
            let metric = metric_of(g, &spine)?;
            let arcs = ArcSystem::from_structure(&metric.structure)?;
            let after = match &resume {
                Some(p) => {
                    let f = File::open(p)
                        .map_err(|e| Error::Io(format!("cannot read checkpoint file {}: {e}", p.display())))?;
                    read_checkpoint(BufReader::new(f))?
                }
                None => None,
            };
            let params = json!({ "L": l, "checkpoint_every": checkpoint_every, "resume_after": after });
            let header = RunHeader::new("census", &spine, Some(&metric), g.seed, params);
            let target = resolve_output(g.out.as_deref(), "census", "csv");
            let mut out: Box<dyn Write> = match (&target, &after) {
                (Some(p), Some(_)) => Box::new(BufWriter::new(
                    std::fs::OpenOptions::new()
                        .append(true)
                        .open(p)
                        .map_err(|e| Error::Io(format!("cannot append to {}: {e}", p.display())))?,
                )),
                (Some(p), None) => {
                    Box::new(BufWriter::new(File::create(p).map_err(|e| {
                        Error::Io(format!("cannot create output file {}: {e}", p.display()))
                    })?))
                }
                (None, _) => Box::new(BufWriter::new(io::stdout())),
            };
            writeln!(out, "# {}", serde_json::to_string(&header)?)?;
            let rec = arcs.write_census_csv(l, after.as_deref(), checkpoint_every, &mut out)?;
            writeln!(out, "# summary,{}", serde_json::to_string(&rec)?)?;
            out.flush()?;
            Ok(())
        }
        Command::Thurston { grid } => {
            let metric = metric_of(g, &spine)?;
            let arcs = ArcSystem::from_structure(&metric.structure)?;
            let table = thurston_ball_estimate(&arcs, &grid)?;
            let mut sink = Sink::open(g, "thurston", "jsonl")?;
            sink.header(&RunHeader::new(
                "thurston",
                &spine,
                Some(&metric),
                g.seed,
                json!({ "grid": grid }),
            ))?;
            for row in &table {
                sink.json(row)?;
            }
            sink.json(&json!({ "scaling_exponent": top_scaling_exponent(&table) }))
        }
        Command::Homvol { d, big_n, l, ell, m } => {
            let v = homogeneous_ball_volume(d, big_n, l, ell, m)?;
            let q = homogeneous_ball_volume_quadrature(d, big_n, l, ell, m)?;
            let mut sink = Sink::open(g, "homvol", "jsonl")?;
            let params = json!({ "d": d, "N": big_n, "L": l, "ell": ell, "m": m });
            sink.header(&RunHeader::new("homvol", &spine, None, g.seed, params))?;
            sink.json(&json!({ "value": v.value, "quadrature": q.value, "quadrature_error": q.error }))
        }
        Command::Simplex { big_n, n, samples } => {
            let c = simplex_integral(big_n, n)?;
            let mc = simplex_integral_monte_carlo(big_n, n, samples, g.seed)?;
            let mut sink = Sink::open(g, "simplex", "jsonl")?;
            let params = json!({ "N": big_n, "n": n, "samples": samples });
            sink.header(&RunHeader::new("simplex", &spine, None, g.seed, params))?;
            sink.json(&json!({ "constant": c, "value": c.exact_f64(), "monte_carlo": mc }))
        }
        Command::Decompose { current } => {
            let c = RationalCurrent::parse(&current, &spine)?;
            let d = standard_decomposition(&spine, &c);
            let mut sink = Sink::open(g, "decompose", "jsonl")?;
            sink.header(&RunHeader::new(
                "decompose",
                &spine,
                None,
                g.seed,
                json!({ "current": current }),
            ))?;
            sink.json(&d)
        }
        Command::Binding { current, bound } => {
            let metric = metric_of(g, &spine)?;
            let c = RationalCurrent::parse(&current, &spine)?;
            let geo = Geometry::new(metric.structure.clone())?;
            let r = is_binding(&geo, &c, bound)?;
            let mut sink = Sink::open(g, "binding", "jsonl")?;
            let params = json!({ "current": current, "bound": r.bound, "lp_cutoff": r.lp_cutoff });
            sink.header(&RunHeader::new("binding", &spine, Some(&metric), g.seed, params))?;
            sink.json(&r)
        }
        Command::Hull { current, bound } => {
            let metric = metric_of(g, &spine)?;
            let c = RationalCurrent::parse(&current, &spine)?;
            let geo = Geometry::new(metric.structure.clone())?;
            let r = hull(&geo, &c, bound)?;
            let mut sink = Sink::open(g, "hull", "jsonl")?;
            let params = json!({ "current": current, "bound": r.bound, "lp_cutoff": r.lp_cutoff });
            sink.header(&RunHeader::new("hull", &spine, Some(&metric), g.seed, params))?;
            sink.json(&r)
        }
        Command::OrbitCount {
            curve,
            grid,
            slack,
            max_slack,
            budget,
        } => {
            let metric = metric_of(g, &spine)?;
            let c = RationalCurrent::parse(&curve, &spine)?;
            let gens = twist_generators(&spine)?;
            let params = OrbitSearchParams {
                slack,
                max_slack,
                budget,
            };
            let table = orbit_counting_experiment(&metric.structure, &gens, &c, &grid, params)?;
            let mut sink = Sink::open(g, "orbit-count", "jsonl")?;
            let hp = json!({
                "curve": curve,
                "grid": grid,
                "search": params,
                "generators": gens.iter().map(|x| x.name().to_string()).collect::<Vec<_>>(),
            });
            sink.header(&RunHeader::new("orbit-count", &spine, Some(&metric), g.seed, hp))?;
            for row in &table.rows {
                sink.json(row)?;
            }
            sink.json(&json!({
                "N": table.big_n,
                "top_slope": table.top_slope,
                "fit_slope": table.fit_slope,
                "fit_std_error": table.fit_std_error,
                "all_stable": table.all_stable,
            }))?;
            if !table.all_stable {
                let worst = table.rows.iter().find(|r| !r.stable).map_or(0.0, |r| r.l);
                return Err(Error::Unstable(worst));
            }
            Ok(())
        }
        Command::UnitBall { lengths, l, systole } => {
            let rows = unit_ball_bounds_experiment(&lengths, systole, l)?;
            let mut sink = Sink::open(g, "unit-ball", "jsonl")?;
            let params = json!({ "lengths": lengths, "L": l, "systole": systole });
            sink.header(&RunHeader::new("unit-ball", &spine, None, g.seed, params))?;
            for row in &rows {
                sink.json(row)?;
            }
            Ok(())
        }
        Command::Twist { phi, on } => {
            let f = parse_mapping_class(&spine, &phi)?;
            let c = RationalCurrent::parse(&on, &spine)?;
            let image = f.apply_current(&c);
            let mut sink = Sink::open(g, "twist", "jsonl")?;
            sink.header(&RunHeader::new(
                "twist",
                &spine,
                None,
                g.seed,
                json!({ "phi": phi, "on": on }),
            ))?;
            sink.json(&json!({ "image": image.to_string() }))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
