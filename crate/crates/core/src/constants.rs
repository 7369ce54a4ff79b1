//! Closed-form constants of the spacing limit law: unit-ball volume, the
//! shape constants for the ball and the cube, the Gumbel law and the test
//! critical value.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function (Lanczos, g = 7) with reflection for `x < 1/2`.
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    let x = x - 1.0;
    let mut acc = LANCZOS_COEF[0];
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
}

/// Natural log of the gamma function for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        return (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = LANCZOS_COEF[0];
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

fn check_dim(d: u32) -> Result<()> {
    if d < 1 {
        return Err(Error::InvalidDimension(i64::from(d)));
    }
    Ok(())
}

/// Volume of the unit ball in dimension `d`.
pub fn omega(d: u32) -> Result<f64> {
    check_dim(d)?;
    let h = f64::from(d) / 2.0;
    Ok((h * PI.ln() - ln_gamma(h + 1.0)).exp())
}

/// Shape constant of the Euclidean ball,
/// `(1/d!) (sqrt(pi) Gamma(d/2 + 1) / Gamma((d + 1)/2))^(d - 1)`.
pub fn alpha_ball(d: u32) -> Result<f64> {
    check_dim(d)?;
    let df = f64::from(d);
    let ratio_ln = 0.5 * PI.ln() + ln_gamma(df / 2.0 + 1.0) - ln_gamma((df + 1.0) / 2.0);
    Ok(((df - 1.0) * ratio_ln - ln_gamma(df + 1.0)).exp())
}

/// Shape constant of the unit cube, which is one in every dimension.
pub fn alpha_cube(d: u32) -> Result<f64> {
    check_dim(d)?;
    Ok(1.0)
}

/// Inputs of the Gumbel normalisation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LimitParams {
    pub n: usize,
    pub d: u32,
    pub alpha: f64,
    pub gamma_level: f64,
}

impl LimitParams {
    pub fn new(n: usize, d: u32, alpha: f64, gamma_level: f64) -> Result<Self> {
        let p = Self {
            n,
            d,
            alpha,
            gamma_level,
        };
        p.validate()?;
        Ok(p)
    }

    /// Planar ball parameters, the setting of both convexity tests.
    pub fn planar(n: usize, gamma_level: f64) -> Result<Self> {
        Self::new(n, 2, alpha_ball(2)?, gamma_level)
    }

    pub fn validate(&self) -> Result<()> {
        check_dim(self.d)?;
        if self.n < 3 {
            return Err(Error::InvalidParams(format!(
                "sample size must be at least 3, got {}",
                self.n
            )));
        }
        if !(self.alpha.is_finite() && self.alpha > 0.0) {
            return Err(Error::InvalidParams(format!(
                "alpha must be positive, got {}",
                self.alpha
            )));
        }
        check_level(self.gamma_level)
    }
}

pub fn check_level(gamma_level: f64) -> Result<()> {
    if !(gamma_level > 0.0 && gamma_level < 1.0) {
        return Err(Error::InvalidParams(format!(
            "test level must lie in (0, 1), got {gamma_level}"
        )));
    }
    Ok(())
}

/// Centering term `log n + (d-1) log log n + log alpha`.
fn centering(n: usize, d: u32, alpha: f64) -> f64 {
    let nf = n as f64;
    nf.ln() + f64::from(d - 1) * nf.ln().ln() + alpha.ln()
}

/// Gumbel quantile `-log(-log(q))`.
pub fn gumbel_quantile(q: f64) -> f64 {
    -(-q.ln()).ln()
}

/// Critical value `c_{n,gamma}`: the statistic level above which the null
/// of convexity is rejected.
pub fn critical_value(p: &LimitParams) -> Result<f64> {
    p.validate()?;
    let nf = p.n as f64;
    Ok((gumbel_quantile(1.0 - p.gamma_level) + centering(p.n, p.d, p.alpha)) / nf)
}

/// Standard Gumbel distribution function `exp(-exp(-t))`.
pub fn gumbel_cdf(t: f64) -> f64 {
    (-(-t).exp()).exp()
}

/// Upper tail `1 - exp(-exp(-t))`, accurate for large `t`.
pub fn gumbel_sf(t: f64) -> f64 {
    -(-(-t).exp()).exp_m1()
}

/// Normalised spacing `n V - log n - (d-1) log log n - log alpha`.
pub fn u_statistic(n: usize, v: f64, d: u32, alpha: f64) -> Result<f64> {
    check_dim(d)?;
    if n < 3 {
        return Err(Error::InvalidParams(format!(
            "sample size must be at least 3, got {n}"
        )));
    }
    if !(v >= 0.0) || !(alpha > 0.0) {
        return Err(Error::InvalidParams(format!(
            "need V >= 0 and alpha > 0, got V = {v}, alpha = {alpha}"
        )));
    }
    Ok(n as f64 * v - centering(n, d, alpha))
}

/// Asymptotic p-value of an observed normalised spacing.
pub fn p_value(u: f64) -> f64 {
    gumbel_sf(u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn gamma_known_values() {
        assert!(rel(gamma(0.5), PI.sqrt()) < 1e-14);
        let mut fact = 1.0;
        for n in 1..=20u32 {
            assert!(rel(gamma(f64::from(n)), fact) < 1e-13, "Gamma({n})");
            fact *= f64::from(n);
        }
        // Gamma(7/2) = 15 sqrt(pi) / 8
        assert!(rel(gamma(3.5), 15.0 * PI.sqrt() / 8.0) < 1e-14);
        assert!(rel(ln_gamma(25.0), gamma(25.0).ln()) < 1e-14);
    }

    #[test]
    fn gamma_half_integers_by_recurrence() {
        // Gamma(k + 1/2) = (2k)! sqrt(pi) / (4^k k!), built by recurrence
        let mut g = PI.sqrt();
        for k in 0..24 {
            let x = k as f64 + 0.5;
            assert!(rel(gamma(x), g) < 1e-13, "Gamma({x})");
            assert!(rel(ln_gamma(x), g.ln()) < 1e-12 || g.ln().abs() < 1e-3);
            g *= x;
        }
    }

    #[test]
    fn omega_examples() {
        assert!(rel(omega(1).unwrap(), 2.0) < 1e-14);
        assert!(rel(omega(2).unwrap(), PI) < 1e-14);
        assert!(rel(omega(3).unwrap(), 4.0 * PI / 3.0) < 1e-14);
        assert!(rel(omega(4).unwrap(), PI * PI / 2.0) < 1e-14);
        assert!(matches!(omega(0), Err(Error::InvalidDimension(0))));
    }

    #[test]
    fn alpha_examples() {
        assert!((alpha_ball(1).unwrap() - 1.0).abs() < 1e-14);
        assert!((alpha_ball(2).unwrap() - 1.0).abs() < 1e-14);
        assert!(rel(alpha_ball(3).unwrap(), 3.0 * PI * PI / 32.0) < 1e-13);
        for d in [1, 2, 7] {
            assert_eq!(alpha_cube(d).unwrap(), 1.0);
        }
        assert!(alpha_ball(0).is_err() && alpha_cube(0).is_err());
    }

    #[test]
    fn alpha_ball_inverts_its_definition() {
        let mut fact = 1.0;
        for d in 1..=20u32 {
            fact *= f64::from(d);
            let df = f64::from(d);
            let ratio = gamma((df + 1.0) / 2.0) / (PI.sqrt() * gamma(df / 2.0 + 1.0));
            let back = alpha_ball(d).unwrap() * fact * ratio.powi(d as i32 - 1);
            assert!((back - 1.0).abs() < 1e-10, "d = {d}: {back}");
        }
    }

    #[test]
    fn critical_value_examples() {
        let c = critical_value(&LimitParams::new(100, 2, 1.0, 0.05).unwrap()).unwrap();
        assert!((c - 0.0910255).abs() < 5e-8, "{c}");
        let g = 1.0 - (-1f64).exp();
        let c = critical_value(&LimitParams::new(100, 2, 1.0, g).unwrap()).unwrap();
        let expect = (100f64.ln() + 100f64.ln().ln()) / 100.0;
        assert!((c - expect).abs() < 1e-15);
        assert!((c - 0.0613235).abs() < 5e-8);
        let c = critical_value(&LimitParams::new(3, 1, 1.0, 0.5).unwrap()).unwrap();
        assert!((c - 0.488375).abs() < 5e-7, "{c}");
    }

    #[test]
    fn critical_value_rejects_bad_params() {
        assert!(LimitParams::new(2, 2, 1.0, 0.05).is_err());
        assert!(LimitParams::new(100, 2, 1.0, 0.0).is_err());
        assert!(LimitParams::new(100, 2, 1.0, 1.0).is_err());
        assert!(LimitParams::new(100, 2, 0.0, 0.5).is_err());
    }

    #[test]
    fn gumbel_examples() {
        assert!((gumbel_cdf(0.0) - (-1f64).exp()).abs() < 1e-16);
        assert!((gumbel_cdf(50.0) - 1.0).abs() < 1e-15);
        let t = gumbel_quantile(0.95);
        assert!((t - 2.970195).abs() < 1e-6);
        assert!((gumbel_cdf(t) - 0.95).abs() < 1e-14);
        for k in 1..100 {
            let q = f64::from(k) / 100.0;
            assert!((gumbel_cdf(gumbel_quantile(q)) - q).abs() < 1e-12);
        }
    }

    #[test]
    fn u_statistic_examples() {
        let u = u_statistic(100, 0.0910255, 2, 1.0).unwrap();
        assert!((u - 2.9702).abs() < 1e-4);
        let u0 = u_statistic(100, 0.0, 2, 1.0).unwrap();
        assert!((u0 + 6.13235).abs() < 1e-5);
        let p = LimitParams::new(100, 2, 1.0, 0.05).unwrap();
        let c = critical_value(&p).unwrap();
        let pv = p_value(u_statistic(100, c, 2, 1.0).unwrap());
        assert!((pv - 0.05).abs() < 1e-13);
    }
}
