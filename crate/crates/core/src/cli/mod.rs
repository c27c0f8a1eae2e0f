//! The `starshape` command line.
//!
//! Exit codes: 0 when everything ran and every verdict passed, 1 for a
//! computation failure or a failed verdict, 2 for bad usage or input.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{Error, Result};
use crate::exact::{parse_rational, ratio, Rational};
use crate::gin::{compute_gin_cached, GinCache, GinOptions, GinResult};
use crate::invariants::{scheme_report, star_report, verify_scheme, verify_theorem, InvariantReport};
use crate::scheme::{build_star, load_points, parse_points, FatPointScheme, StarMode};
use crate::shape::{svg_2d, CornerSimplex, Shape};

/// Points `(t^2 : t : 1)`, `t = 1..6`, on the conic `x1 x3 = x2^2`.
pub const CONIC_POINTS: &str = include_str!("../../data/conic.json");

/// Name accepted by `--points` for [`CONIC_POINTS`].
pub const CONIC_SCENARIO: &str = "@conic";

/// Environment variable naming the default cache directory.
pub const CACHE_ENV: &str = "STARSHAPE_CACHE";

#[derive(Debug, Parser)]
#[command(name = "starshape", version, about = "Generic initial ideals of symbolic powers of points and their limiting shapes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// gin of one symbolic power of a star configuration.
    Star {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Check a star configuration against its predicted limiting simplex for m = 1..m_max.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long = "m-max")]
        m_max: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Run the pipeline on a point file, optionally against expected simplex intercepts.
    Custom {
        /// Point-scheme JSON file, or `@conic` for the bundled six points on a conic.
        #[arg(long)]
        points: String,
        #[arg(long = "m-max")]
        m_max: u32,
        /// Comma-separated intercepts such as "2,3".
        #[arg(long = "expect-vertices")]
        expect_vertices: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Initial degree, Waldschmidt and regularity tables only.
    Invariants {
        #[arg(long, requires = "s", conflicts_with = "points")]
        n: Option<usize>,
        #[arg(long, requires = "n")]
        s: Option<usize>,
        #[arg(long, required_unless_present = "n")]
        points: Option<String>,
        #[arg(long = "m-max")]
        m_max: u32,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Vandermonde,
    Seeded,
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long, value_enum, default_value_t = ModeArg::Vandermonde)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long = "coeff-bound", default_value_t = 1000)]
    pub coeff_bound: i64,
    /// Write JSON here (`-` for standard output).
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Plane cases only.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    #[arg(long, env = CACHE_ENV)]
    pub cache: Option<PathBuf>,
    #[arg(long = "no-cache")]
    pub no_cache: bool,
}

impl Common {
    fn options(&self) -> GinOptions {
        GinOptions { seed: self.seed, coeff_bound: self.coeff_bound, ..GinOptions::default() }
    }

    fn star_mode(&self) -> StarMode {
        match self.mode {
            ModeArg::Vandermonde => StarMode::Vandermonde,
            ModeArg::Seeded => StarMode::Seeded { seed: self.seed, bound: self.coeff_bound },
        }
    }

    fn cache(&self) -> Result<Option<GinCache>> {
        match (&self.cache, self.no_cache) {
            (Some(dir), false) => Ok(Some(GinCache::new(dir)?)),
            _ => Ok(None),
        }
    }

    fn check(&self) -> Result<()> {
        if self.coeff_bound < 2 {
            return Err(Error::InvalidArgument(format!("--coeff-bound must be at least 2, got {}", self.coeff_bound)));
        }
        Ok(())
    }
}

/// Exit status for an error: 2 for anything the caller supplied wrongly.
pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::InvalidArgument(_) | Error::PointFile { .. } | Error::DimensionMismatch(_) => 2,
        _ => 1,
    }
}

/// Parses arguments and runs; human-readable output goes to `out`.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli.command, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// Runs one command. `Ok(false)` means it completed but a verdict failed.
pub fn execute(command: &Command, out: &mut dyn Write) -> Result<bool> {
    match command {
        Command::Star { n, s, m, common } => cmd_star(*n, *s, *m, common, out),
        Command::Verify { n, s, m_max, common } => cmd_verify(*n, *s, *m_max, common, out),
        Command::Custom { points, m_max, expect_vertices, common } => {
            cmd_custom(points, *m_max, expect_vertices.as_deref(), common, out)
        }
        Command::Invariants { n, s, points, m_max, common } => {
            cmd_invariants(*n, *s, points.as_deref(), *m_max, common, out)
        }
    }
}

fn star_args(n: usize, s: usize) -> Result<()> {
    if n == 0 || s < n {
        return Err(Error::InvalidArgument(format!("need s >= n >= 1, got n = {n}, s = {s}")));
    }
    Ok(())
}

/// JSON document for one star gin.
pub fn star_json(n: usize, s: usize, mode: StarMode, res: &GinResult) -> Result<serde_json::Value> {
    let shape = Shape::of_gin(res)?;
    let scaled = shape.scaled(res.m)?;
    let scaled_t: Vec<String> = scaled.intercepts()?.iter().map(Rational::to_string).collect();
    let mut doc = json!({
        "n": n,
        "s": s,
        "m": res.m,
        "mode": mode,
        "generators": res.artinian.generators(),
        "min_generators": res.min_generators.generators(),
        "hf_table": res.hf_table,
        "stop_degree": res.stop_degree,
        "colength": res.colength.to_string(),
        "t": res.t_values(),
        "scaled_t": scaled_t,
        "alpha": res.alpha(),
        "reg": res.regularity(),
        "seeds_used": res.seeds_used,
    });
    if n == 2 {
        doc["area"] = json!(scaled.q_area_2d()?.to_string());
    }
    Ok(doc)
}

fn cmd_star(n: usize, s: usize, m: u32, common: &Common, out: &mut dyn Write) -> Result<bool> {
    star_args(n, s)?;
    common.check()?;
    if m == 0 {
        return Err(Error::InvalidArgument("--m must be at least 1".into()));
    }
    let mode = common.star_mode();
    let star = build_star(n, s, mode)?;
    let res = compute_gin_cached(&star.scheme(m)?, &common.options(), common.cache()?.as_ref())?;
    let doc = star_json(n, s, mode, &res)?;

    writeln!(out, "star configuration n={n} s={s} m={m}: {} points", star.points.len())?;
    let gens: Vec<String> = res.artinian.generators().iter().map(ToString::to_string).collect();
    writeln!(out, "gin generators: {}", gens.join(", "))?;
    writeln!(out, "stop degree {}, colength {}, alpha {}, reg {}", res.stop_degree, res.colength, res.alpha(), res.regularity())?;
    writeln!(out, "t = {:?}", res.t_values())?;

    emit_json(common.json.as_deref(), &doc, out)?;
    if let Some(path) = &common.csv {
        std::fs::write(path, Shape::of_gin(&res)?.scaled(m)?.to_csv())?;
    }
    if let Some(path) = &common.svg {
        let w = CornerSimplex::for_star(n, s)?;
        write_svg(path, &Shape::of_gin(&res)?.scaled(m)?, Some(&w))?;
    }
    Ok(true)
}

fn cmd_verify(n: usize, s: usize, m_max: u32, common: &Common, out: &mut dyn Write) -> Result<bool> {
    star_args(n, s)?;
    common.check()?;
    let cache = common.cache()?;
    let report = verify_theorem(n, s, m_max, common.star_mode(), &common.options(), cache.as_ref())?;
    finish_report(&report, common, Some(CornerSimplex::for_star(n, s)?), last_shape_star(n, s, m_max, common)?, out)
}

/// Re-reads the largest power's gin (from cache or recomputation) for plots.
fn last_shape_star(n: usize, s: usize, m: u32, common: &Common) -> Result<Option<Shape>> {
    if common.svg.is_none() || n != 2 {
        return Ok(None);
    }
    let star = build_star(n, s, common.star_mode())?;
    let res = compute_gin_cached(&star.scheme(m)?, &common.options(), common.cache()?.as_ref())?;
    Ok(Some(Shape::of_gin(&res)?.scaled(m)?))
}

fn load_scheme(points: &str) -> Result<FatPointScheme> {
    if points == CONIC_SCENARIO {
        parse_points(CONIC_POINTS)
    } else {
        load_points(Path::new(points))
    }
}

/// Parses a comma-separated list of positive rationals.
pub fn parse_vertices(text: &str) -> Result<CornerSimplex> {
    let values = text
        .split(',')
        .map(parse_rational)
        .collect::<Result<Vec<_>>>()
        .map_err(|e| Error::InvalidArgument(format!("--expect-vertices: {e}")))?;
    CornerSimplex::new(values).map_err(|e| Error::InvalidArgument(format!("--expect-vertices: {e}")))
}

fn cmd_custom(points: &str, m_max: u32, expect: Option<&str>, common: &Common, out: &mut dyn Write) -> Result<bool> {
    common.check()?;
    if m_max == 0 {
        return Err(Error::InvalidArgument("--m-max must be at least 1".into()));
    }
    let sch = load_scheme(points)?;
    let target = expect.map(parse_vertices).transpose()?;
    let cache = common.cache()?;
    let report = verify_scheme(&sch, m_max, target.as_ref(), &common.options(), cache.as_ref())?;
    let shape = if common.svg.is_some() && sch.dim() == 2 {
        let res = compute_gin_cached(&sch.with_multiplicity(m_max)?, &common.options(), cache.as_ref())?;
        Some(Shape::of_gin(&res)?.scaled(m_max)?)
    } else {
        None
    };
    finish_report(&report, common, target, shape, out)
}

fn cmd_invariants(
    n: Option<usize>,
    s: Option<usize>,
    points: Option<&str>,
    m_max: u32,
    common: &Common,
    out: &mut dyn Write,
) -> Result<bool> {
    common.check()?;
    if m_max == 0 {
        return Err(Error::InvalidArgument("--m-max must be at least 1".into()));
    }
    let cache = common.cache()?;
    let ms: Vec<u32> = (1..=m_max).collect();
    let (mut report, scheme) = match (n, s, points) {
        (Some(n), Some(s), None) => {
            star_args(n, s)?;
            let sch = build_star(n, s, common.star_mode())?.scheme(1)?;
            let gins = crate::gin::compute_gins(&sch, &ms, &common.options(), cache.as_ref())?;
            (star_report(n, s, &gins)?, sch)
        }
        (None, None, Some(p)) => {
            let sch = load_scheme(p)?;
            let gins = crate::gin::compute_gins(&sch, &ms, &common.options(), cache.as_ref())?;
            (scheme_report(&sch, &gins, None)?, sch)
        }
        _ => return Err(Error::InvalidArgument("give either --n and --s, or --points".into())),
    };
    // Tables only: no simplex verdicts.
    report.verdicts.clear();
    report.target = None;
    for row in &mut report.rows {
        row.min_facet_value = None;
    }
    let wald: Vec<String> = report.rows.iter().map(|r| ratio(i64::from(r.alpha), i64::from(r.m)).to_string()).collect();
    let reg: Vec<String> = report.rows.iter().map(|r| ratio(i64::from(r.reg), i64::from(r.m)).to_string()).collect();
    writeln!(out, "{} points in P^{}", scheme.points().len(), scheme.dim())?;
    writeln!(out, "{:>3} {:>6} {:>10} {:>5} {:>10}", "m", "alpha", "alpha/m", "reg", "reg/m")?;
    for (i, r) in report.rows.iter().enumerate() {
        writeln!(out, "{:>3} {:>6} {:>10} {:>5} {:>10}", r.m, r.alpha, wald[i], r.reg, reg[i])?;
    }
    writeln!(out, "waldschmidt upper bound: {}", report.waldschmidt_min)?;
    writeln!(out, "asymptotic regularity estimate: {}", report.asreg_estimate)?;
    emit_json(common.json.as_deref(), &serde_json::to_value(&report)?, out)?;
    if let Some(path) = &common.csv {
        std::fs::write(path, report.to_csv())?;
    }
    Ok(true)
}

fn finish_report(
    report: &InvariantReport,
    common: &Common,
    target: Option<CornerSimplex>,
    shape: Option<Shape>,
    out: &mut dyn Write,
) -> Result<bool> {
    write!(out, "{}", report.render())?;
    emit_json(common.json.as_deref(), &serde_json::to_value(report)?, out)?;
    if let Some(path) = &common.csv {
        std::fs::write(path, report.to_csv())?;
    }
    if let Some(path) = &common.svg {
        match shape {
            Some(sh) => write_svg(path, &sh, target.as_ref())?,
            None => return Err(Error::InvalidArgument("--svg is only available in the plane".into())),
        }
    }
    Ok(report.all_pass())
}

fn emit_json(path: Option<&Path>, doc: &serde_json::Value, out: &mut dyn Write) -> Result<()> {
    let Some(path) = path else { return Ok(()) };
    let text = serde_json::to_string_pretty(doc)? + "\n";
    if path == Path::new("-") {
        out.write_all(text.as_bytes())?;
    } else {
        std::fs::write(path, text)?;
    }
    Ok(())
}

fn write_svg(path: &Path, shape: &Shape, target: Option<&CornerSimplex>) -> Result<()> {
    if shape.num_vars() != 2 {
        return Err(Error::InvalidArgument("--svg is only available in the plane".into()));
    }
    std::fs::write(path, svg_2d(shape, target)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (u8, String) {
        let mut out = Vec::new();
        let code = run(std::iter::once("starshape").chain(args.iter().copied()), &mut out);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_capture(&["star", "--n", "2", "--s", "1", "--m", "1", "--no-cache"]).0, 2);
        assert_eq!(run_capture(&["verify", "--n", "2", "--s", "4", "--m-max", "1", "--no-cache"]).0, 2);
        assert_eq!(run_capture(&["frobnicate"]).0, 2);
        assert_eq!(run_capture(&["star", "--n", "2"]).0, 2);
    }

    #[test]
    fn star_json_to_stdout() {
        let (code, out) = run_capture(&["star", "--n", "2", "--s", "3", "--m", "2", "--no-cache", "--json", "-"]);
        assert_eq!(code, 0);
        let start = out.find('{').unwrap();
        let doc: serde_json::Value = serde_json::from_str(&out[start..]).unwrap();
        assert_eq!(doc["generators"], json!([[3, 0], [2, 2], [1, 3], [0, 4]]));
        assert_eq!(doc["colength"], "9");
        assert_eq!(doc["scaled_t"], json!(["3/2", "2"]));
    }

    #[test]
    fn vertex_lists() {
        assert_eq!(parse_vertices("2,3").unwrap().intercepts(), &[Rational::from(2), Rational::from(3)]);
        assert!(parse_vertices("2,x").is_err());
        assert!(parse_vertices("2,0").is_err());
    }

    #[test]
    fn bundled_conic_parses() {
        let sch = load_scheme(CONIC_SCENARIO).unwrap();
        assert_eq!(sch.points().len(), 6);
        assert_eq!(sch.dim(), 2);
    }
}
