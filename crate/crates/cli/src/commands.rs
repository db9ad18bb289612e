//! Subcommand definitions and their handlers.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use dunkl::estimates::{growth_scan, smoothness_scan, BallKind, PairSampler, ScanConfig};
use dunkl::harness::Suite;
use dunkl::heat::{heat_apply_spectral, heat_kernel, heat_kernel_component, heat_kernel_series, parity_vectors};
use dunkl::hermite_basis::{AlphaParams, HermiteFn, MultiIndex};
use dunkl::quadrature::{SpectralCoeffs, SpectralCoeffsDto};
use dunkl::riesz::{
    dual_pairing_check, riesz_adjoint_spectral, riesz_apply_spectral, riesz_kernel_direct, Bump, PairingConfig,
    RieszKernel,
};
use serde::Serialize;

use crate::config::{load_config, RunConfig};
use crate::suite::run_suite;
use crate::{svg, CliError, CliResult, EXIT_FAIL};

#[derive(Debug, Parser)]
#[command(name = "dunkl", version, about = "Hermite expansions, heat kernels and Riesz transforms for the Z2^d Dunkl oscillator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every subcommand; they override the config file.
#[derive(Debug, Args, Clone, Default)]
pub struct Common {
    /// TOML run configuration.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Multiplicities, comma separated, e.g. `--alpha=-0.5,0.7`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub alpha: Option<Vec<f64>>,
    #[arg(long)]
    pub max_degree: Option<usize>,
    #[arg(long)]
    pub quad_points: Option<usize>,
    #[arg(long)]
    pub zeta_points: Option<usize>,
    #[arg(long)]
    pub s_points: Option<usize>,
    /// Output file; standard output when absent.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate basis functions on a grid (CSV).
    HermiteEval {
        #[command(flatten)]
        common: Common,
        /// Multi-index, comma separated; repeatable.
        #[arg(long = "n", required = true)]
        indices: Vec<String>,
        /// `lo:hi:count` per coordinate.
        #[arg(long, default_value = "-4:4:41", allow_hyphen_values = true)]
        grid: String,
        /// Also emit `delta_j h_n` for this coordinate (1-based).
        #[arg(long)]
        delta: Option<usize>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Evaluate the heat kernel and its parity components (CSV).
    HeatKernel {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        t: f64,
        /// CSV of pairs `x_1..x_d, y_1..y_d`.
        #[arg(long, conflicts_with = "grid")]
        pairs: Option<PathBuf>,
        /// `lo:hi:count`; all pairs of a tensor grid (one-dimensional only).
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        /// Add the truncated eigenfunction series at `max_degree`.
        #[arg(long)]
        series: bool,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Apply the heat semigroup to coefficients (JSON in, JSON out).
    HeatApply {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        coeffs: PathBuf,
        #[arg(long)]
        t: f64,
    },
    /// Apply a Riesz transform to coefficients (JSON in, JSON out).
    RieszApply {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        coeffs: PathBuf,
        /// Coordinate, 1-based.
        #[arg(long)]
        j: usize,
        /// Apply the adjoint instead.
        #[arg(long)]
        adjoint: bool,
    },
    /// Evaluate the Riesz kernel with its parity breakdown (CSV).
    RieszKernel {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        pairs: PathBuf,
        /// Add the slower t-integral evaluation as a cross-check column.
        #[arg(long)]
        direct: bool,
    },
    /// Compare the coefficient and kernel routes of a Riesz pairing (JSON).
    PairingCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        j: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        f_center: Vec<f64>,
        #[arg(long, value_delimiter = ',')]
        f_radius: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        g_center: Vec<f64>,
        #[arg(long, value_delimiter = ',')]
        g_radius: Vec<f64>,
        #[arg(long, default_value_t = 4.0)]
        steepness: f64,
        /// Truncation degree of the coefficient route.
        #[arg(long, default_value_t = 300)]
        degree: usize,
        #[arg(long, default_value_t = 1e-3)]
        tolerance: f64,
    },
    /// Run acceptance checks and write a JSON report; exits 1 on failure.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        /// Include wall times (makes the report run-dependent).
        #[arg(long)]
        timings: bool,
    },
    /// Size-estimate scan of the Riesz kernel (JSON).
    ScanGrowth {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        scan: ScanArgs,
    },
    /// Smoothness-estimate scan of the Riesz kernel (JSON).
    ScanSmoothness {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        scan: ScanArgs,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SuiteArg {
    Basis,
    Heat,
    Riesz,
    Estimates,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Basis => Suite::Basis,
            SuiteArg::Heat => Suite::Heat,
            SuiteArg::Riesz => Suite::Riesz,
            SuiteArg::Estimates => Suite::Estimates,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BallArg {
    Full,
    Positive,
}

#[derive(Debug, Args, Clone)]
pub struct ScanArgs {
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub j: usize,
    #[arg(long, default_value_t = 1000)]
    pub pairs: usize,
    #[arg(long, default_value_t = 32)]
    pub top_k: usize,
    #[arg(long, value_enum, default_value = "full")]
    pub ball: BallArg,
}

impl Common {
    /// The config file (if any) with flag overrides applied, validated.
    pub fn resolve(&self) -> CliResult<RunConfig> {
        let mut cfg = match (&self.config, &self.alpha) {
            (Some(p), _) => load_config(p)?,
            (None, Some(a)) => RunConfig::new(a.clone())?,
            (None, None) => return Err(CliError::Usage("either --config or --alpha is required".into())),
        };
        if let (Some(_), Some(a)) = (&self.config, &self.alpha) {
            cfg.alpha = a.clone();
            cfg.dimension = 0;
        }
        if let Some(v) = self.max_degree {
            cfg.max_degree = v;
        }
        if let Some(v) = self.quad_points {
            cfg.quad_points = v;
        }
        if let Some(v) = self.zeta_points {
            cfg.kernel.zeta_points = v;
        }
        if let Some(v) = self.s_points {
            cfg.kernel.s_points_per_dim = v;
        }
        if let Some(o) = &self.out {
            cfg.output = Some(o.clone());
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn sink(cfg: &RunConfig) -> CliResult<Box<dyn Write>> {
    Ok(match &cfg.output {
        Some(p) => Box::new(io::BufWriter::new(fs::File::create(p).map_err(io_err(p))?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn write_json(cfg: &RunConfig, value: &impl Serialize) -> CliResult<()> {
    let mut out = sink(cfg)?;
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out).and_then(|_| out.flush()).map_err(|e| CliError::Io {
        path: "<output>".into(),
        source: e,
    })
}

/// CSV with a leading `# schema: name/v1` line.
fn write_csv(cfg: &RunConfig, schema: &str, header: &[String], rows: &[Vec<f64>]) -> CliResult<()> {
    let mut out = sink(cfg)?;
    let io_fail = |e| CliError::Io {
        path: "<output>".into(),
        source: e,
    };
    writeln!(out, "# schema: {schema}").map_err(io_fail)?;
    {
        let mut w = csv::Writer::from_writer(&mut out);
        w.write_record(header)?;
        for r in rows {
            w.write_record(r.iter().map(|v| v.to_string()))?;
        }
        w.flush().map_err(io_fail)?;
    }
    out.flush().map_err(io_fail)
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(io_err(path))
}

/// `lo:hi:count`.
pub fn parse_grid(spec: &str) -> CliResult<Vec<f64>> {
    let bad = || CliError::Usage(format!("grid {spec:?} must be lo:hi:count"));
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let n: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if n == 0 || !(hi >= lo) {
        return Err(bad());
    }
    Ok((0..n)
        .map(|i| if n == 1 { lo } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 })
        .collect())
}

fn tensor(axis: &[f64], d: usize) -> Vec<Vec<f64>> {
    let mut pts = vec![Vec::new()];
    for _ in 0..d {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                axis.iter().map(move |&v| {
                    let mut q: Vec<f64> = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    pts
}

fn parse_index(s: &str, d: usize) -> CliResult<MultiIndex> {
    let v: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("multi-index {s:?} must be comma-separated integers")))?;
    if v.len() != d {
        return Err(CliError::Usage(format!("multi-index {s:?} has {} entries, expected {d}", v.len())));
    }
    Ok(MultiIndex::new(v))
}

/// 1-based coordinate from the command line to the library's 0-based one.
fn coordinate(j: usize, d: usize) -> CliResult<usize> {
    if j == 0 || j > d {
        return Err(CliError::Usage(format!("--j must be in 1..={d}, got {j}")));
    }
    Ok(j - 1)
}

/// Pairs file: `2d` numeric columns; `#` lines and a non-numeric header
/// row are skipped.
pub fn read_pairs(path: &Path, d: usize) -> CliResult<Vec<(Vec<f64>, Vec<f64>)>> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut out = Vec::new();
    for (k, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let vals: Result<Vec<f64>, _> = rec.iter().map(|s| s.parse::<f64>()).collect();
        let vals = match vals {
            Ok(v) => v,
            Err(_) if k == 0 => continue,
            Err(_) => return Err(CliError::Usage(format!("{}: row {} is not numeric", path.display(), k + 1))),
        };
        if vals.len() != 2 * d {
            return Err(CliError::Usage(format!(
                "{}: row {} has {} columns, expected {}",
                path.display(),
                k + 1,
                vals.len(),
                2 * d
            )));
        }
        out.push((vals[..d].to_vec(), vals[d..].to_vec()));
    }
    Ok(out)
}

fn point_header(d: usize) -> Vec<String> {
    (1..=d).map(|i| format!("x{i}")).chain((1..=d).map(|i| format!("y{i}"))).collect()
}

fn eps_label(eps: &[u8]) -> String {
    eps.iter().map(|e| e.to_string()).collect()
}

fn read_coeffs(path: &Path) -> CliResult<SpectralCoeffs<f64>> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    let dto: SpectralCoeffsDto<f64> = serde_json::from_str(&text)?;
    Ok(SpectralCoeffs::from_dto(dto)?)
}

/// Runs one parsed invocation and returns the process exit status.
pub fn run(cli: Cli) -> CliResult<i32> {
    match cli.command {
        Command::HermiteEval {
            common,
            indices,
            grid,
            delta,
            svg: svg_path,
        } => {
            let cfg = common.resolve()?;
            let d = cfg.dimension;
            let alpha = AlphaParams::new(cfg.alpha.clone())?;
            let fns: Vec<HermiteFn<f64>> = indices
                .iter()
                .map(|s| Ok(HermiteFn::new(parse_index(s, d)?, alpha.clone())?))
                .collect::<CliResult<_>>()?;
            let dj = delta.map(|j| coordinate(j, d)).transpose()?;
            let axis = parse_grid(&grid)?;
            let pts = tensor(&axis, d);
            let mut header: Vec<String> = (1..=d).map(|i| format!("x{i}")).collect();
            for f in &fns {
                let key = f.index().as_slice().iter().map(|v| v.to_string()).collect::<Vec<_>>().join("_");
                header.push(format!("h_{key}"));
                if let Some(j) = dj {
                    header.push(format!("delta{}_h_{key}", j + 1));
                }
            }
            let mut rows = Vec::with_capacity(pts.len());
            for x in &pts {
                let mut row = x.clone();
                for f in &fns {
                    row.push(f.eval(x)?);
                    if let Some(j) = dj {
                        row.push(f.delta(j, x)?);
                    }
                }
                rows.push(row);
            }
            if let Some(p) = svg_path {
                if d != 1 {
                    return Err(CliError::Usage("--svg needs a one-dimensional alpha".into()));
                }
                let series: Vec<(String, Vec<f64>)> = (d..header.len())
                    .map(|c| (header[c].clone(), rows.iter().map(|r| r[c]).collect()))
                    .collect();
                write_file(&p, &svg::line_chart("basis functions", &axis, &series))?;
            }
            write_csv(&cfg, "hermite-eval/v1", &header, &rows)?;
            Ok(0)
        }
        Command::HeatKernel {
            common,
            t,
            pairs,
            grid,
            series,
            svg: svg_path,
        } => {
            let cfg = common.resolve()?;
            let d = cfg.dimension;
            let alpha = AlphaParams::new(cfg.alpha.clone())?;
            let (list, axis) = match (&pairs, &grid) {
                (Some(p), _) => (read_pairs(p, d)?, None),
                (None, Some(g)) => {
                    if d != 1 {
                        return Err(CliError::Usage("--grid is one-dimensional; use --pairs".into()));
                    }
                    let axis = parse_grid(g)?;
                    let list = axis
                        .iter()
                        .flat_map(|&y| axis.iter().map(move |&x| (vec![x], vec![y])))
                        .collect();
                    (list, Some(axis))
                }
                (None, None) => return Err(CliError::Usage("one of --pairs or --grid is required".into())),
            };
            let eps = parity_vectors(d);
            let mut header = point_header(d);
            header.push("G".into());
            header.extend(eps.iter().map(|e| format!("G_eps{}", eps_label(e))));
            if series {
                header.push(format!("series_{}", cfg.max_degree));
            }
            let mut rows = Vec::with_capacity(list.len());
            for (x, y) in &list {
                let mut row: Vec<f64> = x.iter().chain(y).copied().collect();
                row.push(heat_kernel(&alpha, t, x, y)?);
                for e in &eps {
                    row.push(heat_kernel_component(&alpha, e, t, x, y)?);
                }
                if series {
                    row.push(heat_kernel_series(&alpha, t, x, y, cfg.max_degree)?);
                }
                rows.push(row);
            }
            if let Some(p) = svg_path {
                let axis = axis.ok_or_else(|| CliError::Usage("--svg needs --grid".into()))?;
                let values: Vec<Vec<f64>> = rows.chunks(axis.len()).map(|c| c.iter().map(|r| r[2]).collect()).collect();
                write_file(&p, &svg::heatmap(&format!("heat kernel, t = {t}"), &axis, &axis, &values))?;
            }
            write_csv(&cfg, "heat-kernel/v1", &header, &rows)?;
            Ok(0)
        }
        Command::HeatApply { common, coeffs, t } => {
            let cfg = output_only(&common)?;
            let c = read_coeffs(&coeffs)?;
            write_json(&cfg, &heat_apply_spectral(&c, t)?.to_dto())?;
            Ok(0)
        }
        Command::RieszApply {
            common,
            coeffs,
            j,
            adjoint,
        } => {
            let cfg = output_only(&common)?;
            let c = read_coeffs(&coeffs)?;
            let j = coordinate(j, c.dim())?;
            let out = if adjoint { riesz_adjoint_spectral(&c, j)? } else { riesz_apply_spectral(&c, j)? };
            write_json(&cfg, &out.to_dto())?;
            Ok(0)
        }
        Command::RieszKernel {
            common,
            j,
            pairs,
            direct,
        } => {
            let cfg = common.resolve()?;
            let d = cfg.dimension;
            let jj = coordinate(j, d)?;
            let alpha = AlphaParams::new(cfg.alpha.clone())?;
            let kern = RieszKernel::new(alpha.clone(), cfg.kernel.clone())?;
            let list = read_pairs(&pairs, d)?;
            let eps = parity_vectors(d);
            let mut header = point_header(d);
            header.push("R".into());
            header.extend(eps.iter().map(|e| format!("R_eps{}", eps_label(e))));
            if direct {
                header.push("R_direct".into());
            }
            let mut rows = Vec::with_capacity(list.len());
            for (x, y) in &list {
                let comps = kern.components(jj, x, y)?;
                let mut row: Vec<f64> = x.iter().chain(y).copied().collect();
                row.push(comps.iter().sum());
                row.extend(&comps);
                if direct {
                    row.push(riesz_kernel_direct(&alpha, jj, x, y)?);
                }
                rows.push(row);
            }
            write_csv(&cfg, "riesz-kernel/v1", &header, &rows)?;
            Ok(0)
        }
        Command::PairingCheck {
            common,
            j,
            f_center,
            f_radius,
            g_center,
            g_radius,
            steepness,
            degree,
            tolerance,
        } => {
            let cfg = common.resolve()?;
            let d = cfg.dimension;
            let jj = coordinate(j, d)?;
            for (name, v) in [("f-center", &f_center), ("f-radius", &f_radius), ("g-center", &g_center), ("g-radius", &g_radius)] {
                if v.len() != d {
                    return Err(CliError::Usage(format!("--{name} needs {d} entries")));
                }
            }
            let alpha = AlphaParams::new(cfg.alpha.clone())?;
            let f = Bump::new(f_center, f_radius)?.with_steepness(steepness);
            let g = Bump::new(g_center, g_radius)?.with_steepness(steepness);
            let setup = PairingConfig {
                max_degree: degree,
                ..PairingConfig::default()
            };
            let rep = dual_pairing_check(&f, &g, jj, &alpha, &setup, &cfg.kernel).map_err(|e| match e {
                dunkl::Error::InvalidArgument(m) => CliError::Usage(m),
                e => e.into(),
            })?;
            #[derive(Serialize)]
            struct Out {
                schema: &'static str,
                spectral: f64,
                kernel: f64,
                residual: f64,
                tolerance: f64,
                pass: bool,
            }
            let pass = rep.residual <= tolerance;
            write_json(
                &cfg,
                &Out {
                    schema: "pairing-check/v1",
                    spectral: rep.spectral,
                    kernel: rep.kernel,
                    residual: rep.residual,
                    tolerance,
                    pass,
                },
            )?;
            Ok(if pass { 0 } else { EXIT_FAIL })
        }
        Command::Verify { common, suite, timings } => {
            let cfg = match (&common.config, &common.alpha) {
                (None, None) => Common {
                    alpha: Some(vec![0.0]),
                    ..common.clone()
                }
                .resolve()?,
                _ => common.resolve()?,
            };
            let report = run_suite(&cfg, suite.into(), timings, |r| eprintln!("{}", r.line()));
            write_json(&cfg, &report)?;
            Ok(if report.pass { 0 } else { EXIT_FAIL })
        }
        Command::ScanGrowth { common, scan } => run_scan(&common, &scan, false),
        Command::ScanSmoothness { common, scan } => run_scan(&common, &scan, true),
    }
}

/// For commands whose inputs carry their own `alpha`: only `--out` matters.
fn output_only(common: &Common) -> CliResult<RunConfig> {
    let mut cfg = RunConfig::new(vec![0.0])?;
    cfg.output = common.out.clone();
    Ok(cfg)
}

fn run_scan(common: &Common, scan: &ScanArgs, smooth: bool) -> CliResult<i32> {
    let cfg = common.resolve()?;
    let d = cfg.dimension;
    let j = coordinate(scan.j, d)?;
    let alpha = AlphaParams::new(cfg.alpha.clone())?;
    let sampler = PairSampler::new(d, scan.seed);
    let scfg = ScanConfig {
        pairs: scan.pairs,
        top_k: scan.top_k,
        kernel: cfg.kernel.clone(),
        ball: match scan.ball {
            BallArg::Full => BallKind::Full,
            BallArg::Positive => BallKind::Positive,
        },
    };
    let report = if smooth {
        smoothness_scan(&alpha, j, &sampler, &scfg)?
    } else {
        growth_scan(&alpha, j, &sampler, &scfg)?
    };
    #[derive(Serialize)]
    struct Out<'a> {
        schema: &'static str,
        kind: &'static str,
        alpha: &'a [f64],
        j: usize,
        #[serde(flatten)]
        report: &'a dunkl::estimates::ScanReport,
    }
    write_json(
        &cfg,
        &Out {
            schema: "scan/v1",
            kind: if smooth { "smoothness" } else { "growth" },
            alpha: &cfg.alpha,
            j: scan.j,
            report: &report,
        },
    )?;
    Ok(if report.pass { 0 } else { EXIT_FAIL })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        assert_eq!(parse_grid("0:1:3").unwrap(), vec![0.0, 0.5, 1.0]);
        assert_eq!(parse_grid("2:2:1").unwrap(), vec![2.0]);
        assert!(parse_grid("1:0:3").is_err());
        assert!(parse_grid("0:1").is_err());
        assert!(parse_grid("a:1:2").is_err());
    }

    #[test]
    fn coordinates_are_one_based() {
        assert_eq!(coordinate(1, 2).unwrap(), 0);
        assert!(coordinate(0, 2).is_err());
        assert!(coordinate(3, 2).is_err());
    }

    #[test]
    fn index_parsing_checks_dimension() {
        assert_eq!(parse_index("2, 1", 2).unwrap().as_slice(), &[2, 1]);
        assert!(parse_index("2", 2).is_err());
        assert!(parse_index("x", 1).is_err());
    }

    #[test]
    fn pairs_file_with_header_and_comments() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("pairs.csv");
        fs::write(&p, "# note\nx1,y1\n0.5,1.5\n-1, 2\n").unwrap();
        let pairs = read_pairs(&p, 1).unwrap();
        assert_eq!(pairs, vec![(vec![0.5], vec![1.5]), (vec![-1.0], vec![2.0])]);
        fs::write(&p, "0.5,1.5,3\n").unwrap();
        assert!(read_pairs(&p, 1).is_err());
    }

    #[test]
    fn common_needs_alpha_or_config() {
        assert!(matches!(Common::default().resolve(), Err(CliError::Usage(_))));
        let c = Common {
            alpha: Some(vec![0.0, 1.0]),
            zeta_points: Some(48),
            ..Common::default()
        };
        let cfg = c.resolve().unwrap();
        assert_eq!((cfg.dimension, cfg.kernel.zeta_points), (2, 48));
        let bad = Common {
            alpha: Some(vec![-0.7]),
            ..Common::default()
        };
        assert_eq!(bad.resolve().unwrap_err().exit_code(), crate::EXIT_USAGE);
    }
}
