use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use capfreedom::axioms::{self, CheckReport, SuiteConfig};
use capfreedom::geometry::{set_weak_dominates, Being, CapabilitySet};
use capfreedom::instance::Instance;
use capfreedom::measures::{rank, Algorithm, GxConfig, Measure, Metric, Variant};
use capfreedom::plot::write_plot_data;
use capfreedom::report::{num, Format, Report};
use capfreedom::reproduce::{self, Bundle};
use capfreedom::{Error, Evaluator, Result, Sensitivity};

/// Freedom-of-choice measures over capability sets.
#[derive(Parser)]
#[command(name = "capfreedom", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score one set (or every set) of an instance.
    Evaluate {
        #[command(flatten)]
        m: MeasureArgs,
        /// Set to score; all sets when omitted.
        #[arg(long)]
        set: Option<String>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Rank the sets of an instance; ties are reported, not broken.
    Rank {
        #[command(flatten)]
        m: MeasureArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Compare bundled instances against reference values.
    Reproduce {
        /// example1 | example2 | example3 | compromise | table1 | all
        bundle: Bundle,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Check the axioms on an instance and/or on random instances.
    Axioms {
        #[arg(long)]
        instance: Option<PathBuf>,
        /// Run the seeded random suite.
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Scaling factors, comma separated (default 2,3,4,...).
        #[arg(long)]
        alpha: Option<String>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Export staircases, level lines and circles of a 2D instance as CSV.
    Plotdata {
        #[arg(long)]
        instance: PathBuf,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
        /// Also write plot.svg.
        #[arg(long)]
        svg: bool,
    },
}

#[derive(Args)]
struct MeasureArgs {
    #[arg(long)]
    instance: PathBuf,
    /// gx | max | min | compromise | instrumental | intrinsic | volume
    #[arg(long, default_value = "compromise")]
    measure: String,
    /// Reference-point variant: standard | optimistic | pessimistic
    #[arg(long)]
    variant: Option<Variant>,
    /// Power sensitivity phi(y) = y^gamma.
    #[arg(long, conflicts_with = "constant")]
    gamma: Option<f64>,
    /// Constant sensitivity phi(y) = c.
    #[arg(long)]
    constant: Option<f64>,
    /// Reference being, comma separated.
    #[arg(long)]
    k0: Option<String>,
    /// euclidean | weighted:w1,w2,...
    #[arg(long)]
    metric: Option<String>,
    /// auto | ie | sweep | quadrature | mc
    #[arg(long, default_value = "auto")]
    algorithm: Algorithm,
    /// Clip level regions to the capability space.
    #[arg(long)]
    clip: bool,
    /// Quadrature tolerance (relative; also caps the absolute one).
    #[arg(long)]
    tol: Option<f64>,
    /// Seed for Monte Carlo.
    #[arg(long)]
    seed: Option<u64>,
    /// Monte-Carlo sample count.
    #[arg(long)]
    trials: Option<usize>,
}

#[derive(Args)]
struct OutArgs {
    /// json | csv | md
    #[arg(long, default_value = "json")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_vec(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .map_err(|_| Error::Invalid(format!("'{x}' is not a number")))
        })
        .collect()
}

fn parse_metric(s: &str) -> Result<Metric> {
    match s.split_once(':') {
        None if s == "euclidean" => Ok(Metric::Euclidean),
        Some(("weighted", w)) => Ok(Metric::WeightedEuclidean(parse_vec(w)?)),
        _ => Err(Error::Invalid(format!("unknown metric '{s}'"))),
    }
}

impl MeasureArgs {
    fn load(&self) -> Result<(Instance, Evaluator, Measure)> {
        let inst = Instance::load(&self.instance)?;
        let mut ev = inst.evaluator()?;
        if let Some(g) = self.gamma {
            ev.sensitivity = Sensitivity::power(g)?;
        }
        if let Some(c) = self.constant {
            ev.sensitivity = Sensitivity::constant(c)?;
        }
        if let Some(t) = self.tol {
            ev.quad.rel_tol = t;
            ev.quad.abs_tol = ev.quad.abs_tol.min(t);
            ev.quad.validate()?;
        }
        if let Some(s) = self.seed {
            ev.quad.seed = s;
        }
        if let Some(n) = self.trials {
            ev.samples = n;
        }
        let measure = match self.measure.as_str() {
            "gx" => {
                let mut cfg = match (&inst.gx, &self.k0) {
                    (_, Some(k)) => GxConfig {
                        k0: Being::new(parse_vec(k)?)?,
                        metric: Metric::Euclidean,
                        variant: Variant::Standard,
                    },
                    (Some(g), None) => g.clone(),
                    (None, None) => {
                        return Err(Error::Invalid(
                            "gx needs --k0 or a gx block in the instance".into(),
                        ))
                    }
                };
                if let Some(g) = &inst.gx {
                    cfg.metric = g.metric.clone();
                    cfg.variant = g.variant;
                }
                if let Some(m) = &self.metric {
                    cfg.metric = parse_metric(m)?;
                }
                if let Some(v) = self.variant {
                    cfg.variant = v;
                }
                Measure::Gx(cfg)
            }
            "max" => Measure::Max,
            "min" => Measure::Min,
            "compromise" => Measure::Compromise(self.algorithm),
            "instrumental" => Measure::Instrumental { clip: self.clip },
            "intrinsic" => Measure::Intrinsic { clip: self.clip },
            "volume" => Measure::Volume,
            other => return Err(Error::Invalid(format!("unknown measure '{other}'"))),
        };
        Ok((inst, ev, measure))
    }
}

fn emit(report: &Report, out: &OutArgs) -> Result<()> {
    let text = report.render(out.format)?;
    match &out.out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn evaluate(m: &MeasureArgs, set: Option<&str>, out: &OutArgs) -> Result<bool> {
    let (inst, ev, measure) = m.load()?;
    let sets = match set {
        Some(name) => vec![(name.to_string(), inst.set(name)?)],
        None => inst.built_sets()?,
    };
    let mut r = Report::new(
        "evaluate",
        &["set", "measure", "score", "error_bound", "method", "diagnostics"],
    );
    for (name, s) in &sets {
        let res = ev.evaluate(s, &measure)?;
        r.push(vec![
            json!(name),
            json!(measure.name()),
            num(res.score),
            num(res.error_bound),
            json!(res.method),
            serde_json::to_value(&res.diagnostics)?,
        ]);
    }
    emit(&r, out)?;
    Ok(true)
}

fn rank_cmd(m: &MeasureArgs, out: &OutArgs) -> Result<bool> {
    let (inst, ev, measure) = m.load()?;
    let scored = inst
        .built_sets()?
        .into_iter()
        .map(|(n, s)| Ok((n, ev.evaluate(&s, &measure)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut r = Report::new("rank", &["position", "set", "score", "error_bound", "tied"]);
    for e in rank(&scored)? {
        r.push(vec![
            json!(e.position),
            json!(e.name),
            num(e.score),
            num(e.error_bound),
            json!(e.tied),
        ]);
    }
    emit(&r, out)?;
    Ok(true)
}

fn check_row(c: &CheckReport) -> Vec<Value> {
    vec![
        json!(c.name),
        json!(c.tried),
        json!(c.inconclusive),
        json!(c.failures.len()),
        num(c.tolerance),
        json!(if c.passed() { "pass" } else { "FAIL" }),
        c.failures.first().map_or(Value::Null, |f| json!(f)),
    ]
}

fn instance_checks(inst: &Instance, alpha: &[f64], tol: f64) -> Result<Vec<CheckReport>> {
    let ev = inst.evaluator()?;
    let sets: Vec<(String, CapabilitySet)> = inst
        .built_sets()?
        .into_iter()
        .filter(|(_, s)| !s.is_polyline())
        .collect();
    let names = ["indifference", "strong-monotonicity", "scaling", "bounded", "pareto-reduction", "continuity"];
    let mut reps: Vec<CheckReport> = names.iter().map(|n| CheckReport::new(n, tol)).collect();
    for (_, a) in &sets {
        reps[3].merge(axioms::check_bounded(&ev, a, tol)?);
        reps[4].merge(axioms::check_pareto_reduction(&ev, a.members(), tol)?);
        for (_, b) in &sets {
            if set_weak_dominates(a, b)? {
                reps[0].merge(axioms::check_indifference(&ev, a, b, tol)?);
                reps[1].merge(axioms::check_strong_monotonicity(&ev, a, b, tol)?);
            }
            reps[2].merge(axioms::check_scaling(&ev, a, b, alpha, tol)?);
            let (pa, pb) = (ev.compromise(a, Algorithm::Auto)?.score, ev.compromise(b, Algorithm::Auto)?.score);
            if pa > pb && a.dims() == 2 {
                let ctol = 1e-4 * (pa - pb);
                let mut c = axioms::check_intermediate(&ev, a, b, 0.5 * (pa + pb), ctol, 10_000, 0)?;
                c.tolerance = 1e-4;
                reps[5].tolerance = 1e-4;
                reps[5].merge(c);
            }
        }
    }
    Ok(reps)
}

#[allow(clippy::too_many_arguments)]
fn axioms_cmd(
    instance: Option<&PathBuf>,
    random: bool,
    trials: usize,
    seed: u64,
    tol: f64,
    alpha: Option<&str>,
    out: &OutArgs,
) -> Result<bool> {
    if instance.is_none() && !random {
        return Err(Error::Invalid("give --instance, --random, or both".into()));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Invalid("tolerance must be positive".into()));
    }
    let mut r = Report::new(
        "axioms",
        &["check", "tried", "inconclusive", "failures", "tolerance", "status", "first_failure"],
    );
    if let Some(p) = instance {
        let inst = Instance::load(p)?;
        let alpha = match alpha {
            Some(a) => parse_vec(a)?,
            None => (0..inst.dimensions).map(|i| i as f64 + 2.0).collect(),
        };
        for c in instance_checks(&inst, &alpha, tol)? {
            let mut row = check_row(&c);
            row[0] = json!(format!("instance/{}", c.name));
            r.push(row);
            r.ok &= c.passed();
        }
    }
    if random {
        let cfg = SuiteConfig {
            trials,
            seed,
            tol,
            ..SuiteConfig::default()
        };
        for c in axioms::random_suite(&cfg) {
            let mut row = check_row(&c);
            row[0] = json!(format!("random/{}", c.name));
            r.push(row);
            r.ok &= c.passed();
        }
    }
    emit(&r, out)?;
    Ok(r.ok)
}

fn run(cli: Cli) -> Result<bool> {
    match &cli.command {
        Command::Evaluate { m, set, out } => evaluate(m, set.as_deref(), out),
        Command::Rank { m, out } => rank_cmd(m, out),
        Command::Reproduce { bundle, out } => {
            let report = reproduce::report(&reproduce::reproduce(*bundle)?);
            emit(&report, out)?;
            Ok(report.ok)
        }
        Command::Axioms {
            instance,
            random,
            trials,
            seed,
            tol,
            alpha,
            out,
        } => axioms_cmd(instance.as_ref(), *random, *trials, *seed, *tol, alpha.as_deref(), out),
        Command::Plotdata { instance, out, svg } => {
            let inst = Instance::load(instance)?;
            for f in write_plot_data(&inst, out, *svg)? {
                println!("{}", f.display());
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
