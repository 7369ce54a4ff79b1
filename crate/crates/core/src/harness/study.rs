//! Monte Carlo power, level and limit-law studies.
//!
//! Replication `rep` of grid cell `cell` draws its sample from stream
//! `cell * reps + rep` of the master seed, and results are merged by index,
//! so tables do not depend on the worker count.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constants::{alpha_ball, gumbel_cdf, LimitParams};
use crate::convexity::{test_nonparametric, test_semi_parametric, Method};
use crate::density::{BandwidthSpec, KernelSpec};
use crate::error::{Error, Result};
use crate::sampling::{SeededRng, ShapeSpec};
use crate::spacing::uniform_spacing;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StudyKind {
    Power,
    Limit,
    Level,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyConfig {
    pub kind: StudyKind,
    pub shapes: Vec<ShapeSpec>,
    pub sizes: Vec<usize>,
    pub reps: usize,
    pub gamma_level: f64,
    pub methods: Vec<Method>,
    pub kernel: KernelSpec,
    pub bandwidth: BandwidthSpec,
    pub seed: u64,
    pub workers: usize,
}

impl StudyConfig {
    pub fn power(shape: ShapeSpec, n: usize, method: Method, reps: usize, seed: u64) -> Self {
        Self {
            kind: StudyKind::Power,
            shapes: vec![shape],
            sizes: vec![n],
            reps,
            gamma_level: 0.05,
            methods: vec![method],
            kernel: KernelSpec::Gaussian,
            bandwidth: BandwidthSpec::default(),
            seed,
            workers: 1,
        }
    }

    pub fn limit(shape: ShapeSpec, n: usize, reps: usize, seed: u64) -> Self {
        Self {
            kind: StudyKind::Limit,
            methods: Vec::new(),
            ..Self::power(shape, n, Method::SemiParametric, reps, seed)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.reps < 1 {
            return Err(Error::InvalidParams("reps must be at least 1".into()));
        }
        if self.workers < 1 {
            return Err(Error::InvalidParams("workers must be at least 1".into()));
        }
        if self.shapes.is_empty() || self.sizes.is_empty() {
            return Err(Error::InvalidParams("empty shape or size grid".into()));
        }
        for s in &self.shapes {
            s.validate()?;
            if self.kind == StudyKind::Limit && s.convex_region().is_none() {
                return Err(Error::InvalidParams(format!(
                    "limit studies need a known convex support, got {}",
                    s.label()
                )));
            }
        }
        for &n in &self.sizes {
            if n < 3 {
                return Err(Error::InvalidParams(format!("sample size {n} below 3")));
            }
        }
        if self.kind != StudyKind::Limit && self.methods.is_empty() {
            return Err(Error::InvalidParams("no test method selected".into()));
        }
        let (BandwidthSpec::Fixed(h) | BandwidthSpec::Scaled(h)) = self.bandwidth;
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::InvalidBandwidth(h));
        }
        crate::constants::check_level(self.gamma_level)
    }

    /// FNV-1a hash of the JSON form, recorded with results.
    pub fn fingerprint(&self) -> String {
        let text = super::io::to_json(self);
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in text.bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
        format!("{h:016x}")
    }

    fn cells(&self) -> Vec<(usize, &ShapeSpec, usize)> {
        let mut out = Vec::new();
        for shape in &self.shapes {
            for &n in &self.sizes {
                out.push((out.len(), shape, n));
            }
        }
        out
    }

    fn pool(&self) -> Result<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .map_err(|e| Error::InvalidParams(format!("thread pool: {e}")))
    }

    fn stream(&self, cell: usize, rep: usize) -> u64 {
        (cell * self.reps + rep) as u64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerRow {
    pub shape: String,
    pub n: usize,
    pub method: Method,
    pub reps: usize,
    pub rejections: usize,
    /// Replications that failed on degenerate geometry; excluded from the
    /// proportion.
    pub failures: usize,
    pub proportion: f64,
    pub std_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerTable {
    pub rows: Vec<PowerRow>,
    pub seed: u64,
    pub config_hash: String,
    pub wall_seconds: f64,
}

impl PowerTable {
    pub fn row(&self, method: Method) -> Option<&PowerRow> {
        self.rows.iter().find(|r| r.method == method)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("shape,n,method,reps,rejections,failures,proportion,std_error\n");
        for r in &self.rows {
            s.push_str(&format!(
                "\"{}\",{},{},{},{},{},{},{}\n",
                r.shape,
                r.n,
                r.method.as_str(),
                r.reps,
                r.rejections,
                r.failures,
                super::io::format_float(r.proportion),
                super::io::format_float(r.std_error)
            ));
        }
        s
    }
}

/// Rejection proportions for every (shape, n, method) cell. All methods of a
/// cell see the same samples.
pub fn run_power_study(cfg: &StudyConfig) -> Result<PowerTable> {
    cfg.validate()?;
    let start = Instant::now();
    let pool = cfg.pool()?;
    let mut rows = Vec::new();
    for (cell, shape, n) in cfg.cells() {
        let outcomes: Vec<Vec<Option<bool>>> = pool.install(|| {
            (0..cfg.reps)
                .into_par_iter()
                .map(|rep| {
                    let mut rng = SeededRng::new(cfg.seed, cfg.stream(cell, rep));
                    let sample = shape.generate(n, &mut rng)?;
                    cfg.methods
                        .iter()
                        .map(|&m| {
                            let res = match m {
                                Method::SemiParametric => {
                                    test_semi_parametric(sample.points(), cfg.gamma_level)
                                }
                                Method::Nonparametric => test_nonparametric(
                                    sample.points(),
                                    cfg.gamma_level,
                                    cfg.kernel,
                                    cfg.bandwidth,
                                ),
                            };
                            match res {
                                Ok(r) => Ok(Some(r.reject)),
                                Err(e) if e.is_geometric() => Ok(None),
                                Err(e) => Err(e),
                            }
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()
        })?;
        for (k, &method) in cfg.methods.iter().enumerate() {
            let done: Vec<bool> = outcomes.iter().filter_map(|o| o[k]).collect();
            let failures = cfg.reps - done.len();
            let rejections = done.iter().filter(|&&r| r).count();
            let m = done.len().max(1) as f64;
            let p = rejections as f64 / m;
            rows.push(PowerRow {
                shape: shape.label(),
                n,
                method,
                reps: cfg.reps,
                rejections,
                failures,
                proportion: p,
                std_error: (p * (1.0 - p) / m).sqrt(),
            });
        }
    }
    Ok(PowerTable {
        rows,
        seed: cfg.seed,
        config_hash: cfg.fingerprint(),
        wall_seconds: start.elapsed().as_secs_f64(),
    })
}

/// Kolmogorov-Smirnov distance between a sample and the standard Gumbel law.
pub fn ks_gumbel(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() as f64;
    v.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = gumbel_cdf(x);
            ((i + 1) as f64 / m - f).max(f - i as f64 / m)
        })
        .fold(0.0, f64::max)
}

pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let k = v.len();
    if k % 2 == 1 {
        v[k / 2]
    } else {
        0.5 * (v[k / 2 - 1] + v[k / 2])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EcdfReport {
    pub shape: String,
    pub n: usize,
    /// Sorted normalised spacings `U`.
    pub u_values: Vec<f64>,
    pub ks_distance: f64,
    /// `(n V - log n) / log log n` per replication.
    pub band: Vec<f64>,
    pub band_median: f64,
    pub failures: usize,
}

impl EcdfReport {
    /// Plot-ready empirical CDF against the Gumbel CDF.
    pub fn to_csv(&self) -> String {
        let m = self.u_values.len() as f64;
        let mut s = String::from("u,ecdf,gumbel_cdf\n");
        for (i, &u) in self.u_values.iter().enumerate() {
            s.push_str(&format!(
                "{},{},{}\n",
                super::io::format_float(u),
                super::io::format_float((i + 1) as f64 / m),
                super::io::format_float(gumbel_cdf(u))
            ));
        }
        s
    }
}

/// Distribution of the uniform spacing on a known support, compared with
/// the Gumbel limit.
pub fn run_limit_study(cfg: &StudyConfig) -> Result<Vec<EcdfReport>> {
    cfg.validate()?;
    let pool = cfg.pool()?;
    let alpha = alpha_ball(2)?;
    let mut reports = Vec::new();
    for (cell, shape, n) in cfg.cells() {
        let support = shape.convex_region().expect("validated");
        let params = LimitParams::new(n, 2, alpha, cfg.gamma_level)?;
        let stats: Vec<Option<(f64, f64)>> = pool.install(|| {
            (0..cfg.reps)
                .into_par_iter()
                .map(|rep| {
                    let mut rng = SeededRng::new(cfg.seed, cfg.stream(cell, rep));
                    let sample = shape.generate(n, &mut rng)?;
                    match uniform_spacing(sample.points(), &support, &params) {
                        Ok(st) => Ok(Some((st.u, st.v))),
                        Err(e) if e.is_geometric() => Ok(None),
                        Err(e) => Err(e),
                    }
                })
                .collect::<Result<Vec<_>>>()
        })?;
        let ok: Vec<(f64, f64)> = stats.iter().flatten().copied().collect();
        if ok.is_empty() {
            return Err(Error::Numerical("every replication failed".into()));
        }
        let nf = n as f64;
        let mut u_values: Vec<f64> = ok.iter().map(|s| s.0).collect();
        u_values.sort_by(f64::total_cmp);
        let band: Vec<f64> = ok
            .iter()
            .map(|&(_, v)| (nf * v - nf.ln()) / nf.ln().ln())
            .collect();
        reports.push(EcdfReport {
            shape: shape.label(),
            n,
            ks_distance: ks_gumbel(&u_values),
            band_median: median(&band),
            u_values,
            band,
            failures: stats.len() - ok.len(),
        });
    }
    Ok(reports)
}
