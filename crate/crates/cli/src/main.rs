use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use pgqldpc::alist::to_alist;
use pgqldpc::bp::BpOptions;
use pgqldpc::classical::{build_construction, distance_witness, min_distance_oracle, Construction};
use pgqldpc::css::{build_family_in, paper_claim_report, quantum_distance, CssCode, CssFamily};
use pgqldpc::distance::SearchLimits;
use pgqldpc::geometry::{HyperovalPartition, PlaneModel};
use pgqldpc::report::{self, any_failed, Status};
use pgqldpc::sim::{curve_to_csv, linear_grid, run_monte_carlo};
use pgqldpc::tanner::analyze;
use pgqldpc::verify::{verify, Target, VerifyOptions, DEFAULT_DISTANCE_CAP};

/// Largest field degree the commands accept. Beyond it the dense GF(2)
/// matrices stop fitting comfortably in memory.
const MAX_S: u32 = 6;

#[derive(Parser)]
#[command(
    name = "pgqldpc",
    version,
    about = "LDPC and CSS codes from hyperovals in PG(2, 2^s)"
)]
struct Cli {
    /// Worker threads for distance search and Monte Carlo. Results do not depend on it.
    #[arg(long, global = true, env = "PGQLDPC_JOBS")]
    jobs: Option<usize>,

    /// Add run metadata (command line, time) to JSON output.
    #[arg(long, global = true)]
    stamp: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code and write alist file(s) plus a JSON report.
    Generate {
        #[command(flatten)]
        code: CodeArgs,
        /// Output path prefix; defaults to `<code>-s<s>`.
        #[arg(long)]
        out_prefix: Option<PathBuf>,
        /// Also compute distances, searching up to this weight.
        #[arg(long)]
        distance_cap: Option<usize>,
    },
    /// Check geometry invariants and published parameters. Exits 1 on any FAIL.
    Verify {
        #[arg(long, value_parser = parse_s)]
        s: u32,
        #[arg(long, conflicts_with = "all")]
        family: Option<CodeSpec>,
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = DEFAULT_DISTANCE_CAP)]
        distance_cap: usize,
        #[arg(long)]
        no_distance: bool,
        /// Also write the check list as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Tanner graph statistics as JSON.
    Analyze {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimum distance of a classical code or coset distance of a CSS code.
    Distance {
        #[command(flatten)]
        code: CodeArgs,
        /// Weight cap for codes too large to enumerate.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Depolarizing-channel Monte Carlo with the sum-product decoder.
    Simulate {
        #[command(flatten)]
        code: CodeArgs,
        /// `start:stop:count`, linearly spaced and inclusive.
        #[arg(long, conflicts_with = "p_list")]
        p_grid: Option<String>,
        /// Comma-separated probabilities.
        #[arg(long)]
        p_list: Option<String>,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Writes `<out>.csv` and `<out>.json`; without it the CSV goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = BpOptions::default().max_iters)]
        max_iters: usize,
        #[arg(long, default_value_t = BpOptions::default().clip)]
        clip: f64,
        #[arg(long, default_value_t = BpOptions::default().damping)]
        damping: f64,
    },
}

#[derive(Args)]
struct CodeArgs {
    #[arg(long, value_parser = parse_s)]
    s: u32,
    /// CSS family (pi, asym, sym-sk, sym-se) or classical construction tag.
    #[arg(
        long,
        required_unless_present = "construction",
        conflicts_with = "construction"
    )]
    family: Option<CodeSpec>,
    /// Classical construction: m-pi, m-pi-prime, h-sk, h-sea, h-se.
    #[arg(long)]
    construction: Option<Construction>,
}

impl CodeArgs {
    fn spec(&self) -> CodeSpec {
        match (self.family, self.construction) {
            (Some(f), _) => f,
            (None, Some(c)) => CodeSpec::Classical(c),
            (None, None) => unreachable!("clap requires one of the two"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum CodeSpec {
    Quantum(CssFamily),
    Classical(Construction),
}

impl CodeSpec {
    fn name(self) -> &'static str {
        match self {
            CodeSpec::Quantum(f) => f.name(),
            CodeSpec::Classical(c) => c.name(),
        }
    }
}

impl FromStr for CodeSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if let Ok(f) = s.parse::<CssFamily>() {
            return Ok(CodeSpec::Quantum(f));
        }
        s.parse::<Construction>()
            .map(CodeSpec::Classical)
            .map_err(|_| {
                format!("unknown code '{s}' (expected pi, asym, sym-sk, sym-se, m-pi, m-pi-prime, h-sk, h-sea or h-se)")
            })
    }
}

fn parse_s(v: &str) -> std::result::Result<u32, String> {
    let s: u32 = v.parse().map_err(|_| format!("'{v}' is not an integer"))?;
    if (1..=MAX_S).contains(&s) {
        Ok(s)
    } else {
        Err(format!(
            "unsupported s = {s}; supported range is 1..={MAX_S}"
        ))
    }
}

struct Setting {
    plane: PlaneModel,
    partition: HyperovalPartition,
}

impl Setting {
    fn new(s: u32) -> Result<Self> {
        let plane = PlaneModel::build(s)?;
        let partition = HyperovalPartition::standard(&plane)?;
        Ok(Self { plane, partition })
    }

    fn css(&self, f: CssFamily) -> Result<CssCode> {
        Ok(build_family_in(f, &self.plane, &self.partition)?)
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn finish(mut report: Value, stamp: bool) -> Value {
    if stamp {
        let now = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let args: Vec<String> = std::env::args().collect();
        report::stamp(&mut report, &args.join(" "), now);
    }
    report
}

fn cmd_generate(
    code: &CodeArgs,
    out_prefix: Option<PathBuf>,
    cap: Option<usize>,
    stamp: bool,
) -> Result<()> {
    let spec = code.spec();
    let prefix =
        out_prefix.unwrap_or_else(|| PathBuf::from(format!("{}-s{}", spec.name(), code.s)));
    let setting = Setting::new(code.s)?;
    let report = match spec {
        CodeSpec::Quantum(f) => {
            let css = setting.css(f)?;
            let distance = cap
                .map(|c| quantum_distance(&css, SearchLimits::with_cap(c)))
                .transpose()?;
            write_file(&with_suffix(&prefix, ".hx.alist"), &to_alist(&css.hx.h))?;
            write_file(&with_suffix(&prefix, ".hz.alist"), &to_alist(&css.hz.h))?;
            let checks = paper_claim_report(&css, distance.as_ref());
            report::quantum_report(&css, distance.as_ref(), &checks)
        }
        CodeSpec::Classical(c) => {
            let h = build_construction(c, &setting.plane, &setting.partition);
            let witness = distance_witness(c, &setting.plane, &setting.partition)?;
            let distance = cap
                .map(|cap| min_distance_oracle(&h, SearchLimits::with_cap(cap)).map(|(d, _)| d))
                .transpose()?;
            write_file(&with_suffix(&prefix, ".alist"), &to_alist(&h.h))?;
            report::classical_report(&h, distance, Some(witness.weight()), &[])
        }
    };
    write_file(
        &with_suffix(&prefix, ".json"),
        &to_json(&finish(report, stamp)),
    )
}

fn cmd_verify(
    s: u32,
    family: Option<CodeSpec>,
    all: bool,
    cap: usize,
    no_distance: bool,
    json_out: Option<PathBuf>,
    stamp: bool,
) -> Result<bool> {
    let target = match (family, all) {
        (Some(CodeSpec::Quantum(f)), _) => Target::Family(f),
        (Some(CodeSpec::Classical(c)), _) => Target::Construction(c),
        (None, true) => Target::All,
        (None, false) => bail!("verify needs --family or --all"),
    };
    let opts = VerifyOptions {
        limits: SearchLimits::with_cap(cap),
        skip_distance: no_distance,
    };
    let checks = verify(s, target, opts)?;
    for c in &checks {
        println!("{c}");
    }
    let count = |st: Status| checks.iter().filter(|c| c.status == st).count();
    println!(
        "s={s} {target}: {} pass, {} fail, {} flag, {} info",
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Flag),
        count(Status::Info)
    );
    if let Some(path) = json_out {
        let report = json!({
            "s": s,
            "target": target.to_string(),
            "distance_cap": if no_distance { None } else { Some(cap) },
            "checks": checks,
            "tool_version": env!("CARGO_PKG_VERSION"),
        });
        write_file(&path, &to_json(&finish(report, stamp)))?;
    }
    Ok(!any_failed(&checks))
}

fn cmd_analyze(code: &CodeArgs, out: Option<PathBuf>, stamp: bool) -> Result<()> {
    let setting = Setting::new(code.s)?;
    let stats = match code.spec() {
        CodeSpec::Classical(c) => {
            json!(analyze(
                &build_construction(c, &setting.plane, &setting.partition).h
            ))
        }
        CodeSpec::Quantum(f) => {
            let css = setting.css(f)?;
            json!({
                "hx": analyze(&css.hx.h),
                "hz": analyze(&css.hz.h),
                "stabilizer": analyze(&css.stabilizer_matrix().combined()),
            })
        }
    };
    let report = finish(
        json!({ "s": code.s, "code": code.spec().name(), "tanner": stats }),
        stamp,
    );
    match out {
        Some(path) => write_file(&path, &to_json(&report)),
        None => {
            print!("{}", to_json(&report));
            Ok(())
        }
    }
}

fn limits_for(cap: Option<usize>) -> SearchLimits {
    SearchLimits {
        cap,
        ..SearchLimits::default()
    }
}

fn cmd_distance(code: &CodeArgs, cap: Option<usize>) -> Result<()> {
    let setting = Setting::new(code.s)?;
    match code.spec() {
        CodeSpec::Classical(c) => {
            let h = build_construction(c, &setting.plane, &setting.partition);
            let (d, v) = min_distance_oracle(&h, limits_for(cap))?;
            println!(
                "{c} s={}: n={} k={} d: {d}",
                code.s,
                h.n(),
                h.n() - h.rank()
            );
            if let Some(v) = v {
                println!("minimum-weight codeword support: {:?}", v.support());
            }
        }
        CodeSpec::Quantum(f) => {
            let css = setting.css(f)?;
            let d = quantum_distance(&css, limits_for(cap))?;
            println!(
                "{f} s={}: n={} K={} D: {} (Z-type {}, X-type {})",
                code.s,
                css.n(),
                css.k(),
                d.overall,
                d.z_logical,
                d.x_logical
            );
        }
    }
    Ok(())
}

fn parse_p_values(grid: Option<&str>, list: Option<&str>) -> Result<Vec<f64>> {
    let ps = match (grid, list) {
        (Some(g), _) => {
            let parts: Vec<&str> = g.split(':').collect();
            let [start, stop, count] = parts[..] else {
                bail!("--p-grid expects start:stop:count, got '{g}'");
            };
            let count: usize = count.trim().parse().context("--p-grid count")?;
            if count == 0 {
                bail!("--p-grid count must be at least 1");
            }
            linear_grid(
                start.trim().parse().context("--p-grid start")?,
                stop.trim().parse().context("--p-grid stop")?,
                count,
            )
        }
        (None, Some(l)) => l
            .split(',')
            .map(|v| {
                v.trim()
                    .parse::<f64>()
                    .with_context(|| format!("--p-list value '{v}'"))
            })
            .collect::<Result<_>>()?,
        (None, None) => bail!("simulate needs --p-grid or --p-list"),
    };
    if let Some(p) = ps.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        bail!("probability {p} outside [0, 1]");
    }
    Ok(ps)
}

#[allow(clippy::too_many_arguments)]
fn cmd_simulate(
    code: &CodeArgs,
    p_grid: Option<String>,
    p_list: Option<String>,
    trials: u64,
    seed: u64,
    out: Option<PathBuf>,
    opts: BpOptions,
    stamp: bool,
) -> Result<()> {
    let CodeSpec::Quantum(f) = code.spec() else {
        bail!("simulate needs a CSS family (pi, asym, sym-sk, sym-se)");
    };
    if trials == 0 {
        bail!("--trials must be at least 1");
    }
    if opts.max_iters == 0 || opts.clip.is_nan() || opts.clip <= 0.0 || !(0.0..1.0).contains(&opts.damping) {
        bail!("need --max-iters >= 1, --clip > 0 and --damping in [0, 1)");
    }
    let ps = parse_p_values(p_grid.as_deref(), p_list.as_deref())?;
    let css = Setting::new(code.s)?.css(f)?;
    let curve = run_monte_carlo(&css, &ps, trials, seed, opts)?;
    let csv = curve_to_csv(&curve);
    match out {
        None => print!("{csv}"),
        Some(prefix) => {
            write_file(&with_suffix(&prefix, ".csv"), &csv)?;
            let mut report = json!({
                "family": f.name(),
                "s": code.s,
                "n": css.n(),
                "K": css.k(),
                "trials": trials,
                "decoder": opts,
                "curve": curve,
                "tool_version": env!("CARGO_PKG_VERSION"),
            });
            report::set_seed(&mut report, seed);
            write_file(
                &with_suffix(&prefix, ".json"),
                &to_json(&finish(report, stamp)),
            )?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            bail!("--jobs must be at least 1");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .context("configuring worker threads")?;
    }
    match cli.command {
        Command::Generate {
            code,
            out_prefix,
            distance_cap,
        } => cmd_generate(&code, out_prefix, distance_cap, cli.stamp)?,
        Command::Verify {
            s,
            family,
            all,
            distance_cap,
            no_distance,
            json,
        } => return cmd_verify(s, family, all, distance_cap, no_distance, json, cli.stamp),
        Command::Analyze { code, out } => cmd_analyze(&code, out, cli.stamp)?,
        Command::Distance { code, cap } => cmd_distance(&code, cap)?,
        Command::Simulate {
            code,
            p_grid,
            p_list,
            trials,
            seed,
            out,
            max_iters,
            clip,
            damping,
        } => cmd_simulate(
            &code,
            p_grid,
            p_list,
            trials,
            seed,
            out,
            BpOptions {
                max_iters,
                clip,
                damping,
            },
            cli.stamp,
        )?,
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
