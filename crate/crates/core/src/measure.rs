//! Floating-point checks against the weighted Gaussian measure
//! `d mu = c h(x)^2 dm(x)`, `h(x)^2 = prod_{i<j} |x_i - x_j|^{2 kappa} |y0|^{2 kappa'}`.
//!
//! Nothing in here feeds back into the exact modules.

use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::exact::{format_rational, ExactRational};
use crate::poly::{Frame, SparsePoly};

const BATCH: u64 = 1 << 14;

/// Sampling parameters. The estimate is a pure function of the config and integrand.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct McConfig {
    pub samples: u64,
    pub seed: u64,
    pub kappa: f64,
    pub kappa_prime: f64,
}

impl McConfig {
    pub fn new(samples: u64, seed: u64, kappa: f64, kappa_prime: f64) -> Result<Self> {
        if samples == 0 {
            return Err(Error::Precondition("samples must be positive".into()));
        }
        for (name, v) in [("kappa", kappa), ("kappa_prime", kappa_prime)] {
            if !(v >= 0.0) {
                return Err(Error::NegativeParameter { name, value: v.to_string() });
            }
        }
        Ok(Self { samples, seed, kappa, kappa_prime })
    }
}

/// `c_{kappa, kappa'}` from
/// `c^{-1} = 2^{kappa'} G(kappa'+1/2) G(2 kappa+1) G(3 kappa+1) G(4 kappa+1) / (G(1/2) G(kappa+1)^3)`.
pub fn normalization_constant(kappa: f64, kappa_prime: f64) -> f64 {
    let ln_inv = kappa_prime * std::f64::consts::LN_2 + ln_gamma(kappa_prime + 0.5)
        - ln_gamma(0.5)
        + (2..=4).map(|j| ln_gamma(j as f64 * kappa + 1.0)).sum::<f64>()
        - 3.0 * ln_gamma(kappa + 1.0);
    (-ln_inv).exp()
}

/// `prod_{j=2}^{N} G(j kappa + 1) / G(kappa + 1)`.
pub fn selberg_product(n: usize, kappa: f64) -> f64 {
    (2..=n)
        .map(|j| ln_gamma(j as f64 * kappa + 1.0) - ln_gamma(kappa + 1.0))
        .sum::<f64>()
        .exp()
}

/// `E|Z|^{2a}` for a standard normal `Z`: `2^a G(a + 1/2) / G(1/2)`.
pub fn gaussian_abs_moment(a: f64) -> f64 {
    (a * std::f64::consts::LN_2 + ln_gamma(a + 0.5) - ln_gamma(0.5)).exp()
}

/// A polynomial lowered to `f64` coefficients, evaluated in its own frame.
struct FloatPoly {
    frame: Frame,
    terms: Vec<(Vec<i32>, f64)>,
}

impl FloatPoly {
    fn new(p: &SparsePoly) -> Result<Self> {
        if !matches!(p.frame(), Frame::X(4) | Frame::Y4) {
            return Err(Error::FrameMismatch { expected: "x4 or y4".into(), found: p.frame() });
        }
        let terms = p
            .terms()
            .map(|(m, c)| (m.exps().iter().map(|&e| e as i32).collect(), c.to_f64().unwrap_or(f64::NAN)))
            .collect();
        Ok(Self { frame: p.frame(), terms })
    }

    fn eval(&self, x: &[f64; 4], y: &[f64; 4]) -> f64 {
        let z = if self.frame == Frame::Y4 { y } else { x };
        self.terms
            .iter()
            .map(|(e, c)| c * e.iter().zip(z).map(|(&k, v)| v.powi(k)).product::<f64>())
            .sum()
    }
}

fn to_y(x: &[f64; 4]) -> [f64; 4] {
    [
        0.5 * (x[0] + x[1] + x[2] + x[3]),
        0.5 * (x[0] + x[1] - x[2] - x[3]),
        0.5 * (x[0] - x[1] + x[2] - x[3]),
        0.5 * (x[0] - x[1] - x[2] + x[3]),
    ]
}

/// Monte Carlo estimate with its standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
}

#[derive(Default, Clone, Copy)]
struct Moments {
    n: u64,
    sum: f64,
    sum_sq: f64,
}

/// `int f g d mu` estimated from standard-normal draws reweighted by `c h(x)^2`.
///
/// Samples are split into fixed-size batches; batch `b` draws from the ChaCha
/// stream `b` of `seed`, and batch sums are merged in batch order, so the
/// result does not depend on thread scheduling.
pub fn mc_inner_product(f: &SparsePoly, g: &SparsePoly, cfg: &McConfig) -> Result<McEstimate> {
    let (ff, gg) = (FloatPoly::new(f)?, FloatPoly::new(g)?);
    let c = normalization_constant(cfg.kappa, cfg.kappa_prime);
    let (k2, kp2) = (2.0 * cfg.kappa, 2.0 * cfg.kappa_prime);
    let batches = cfg.samples.div_ceil(BATCH);
    let parts: Vec<Moments> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(b);
            let count = BATCH.min(cfg.samples - b * BATCH);
            let mut m = Moments::default();
            for _ in 0..count {
                let x: [f64; 4] = std::array::from_fn(|_| StandardNormal.sample(&mut rng));
                let y = to_y(&x);
                let mut w = c * y[0].abs().powf(kp2);
                for i in 0..4 {
                    for j in i + 1..4 {
                        w *= (x[i] - x[j]).abs().powf(k2);
                    }
                }
                let v = w * ff.eval(&x, &y) * gg.eval(&x, &y);
                m.n += 1;
                m.sum += v;
                m.sum_sq += v * v;
            }
            m
        })
        .collect();
    let total = parts.iter().fold(Moments::default(), |a, b| Moments {
        n: a.n + b.n,
        sum: a.sum + b.sum,
        sum_sq: a.sum_sq + b.sum_sq,
    });
    let n = total.n as f64;
    let mean = total.sum / n;
    let var = if total.n > 1 { (total.sum_sq / n - mean * mean).max(0.0) * n / (n - 1.0) } else { 0.0 };
    Ok(McEstimate { estimate: mean, stderr: (var / n).sqrt() })
}

/// JSON report for one Monte Carlo run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct McReport {
    pub integrand: String,
    pub kappa: f64,
    pub kappa_prime: f64,
    pub samples: u64,
    pub seed: u64,
    pub estimate: f64,
    pub stderr: f64,
    pub exact: Option<String>,
}

impl McReport {
    pub fn new(integrand: impl Into<String>, cfg: &McConfig, est: McEstimate, exact: Option<&ExactRational>) -> Self {
        Self {
            integrand: integrand.into(),
            kappa: cfg.kappa,
            kappa_prime: cfg.kappa_prime,
            samples: cfg.samples,
            seed: cfg.seed,
            estimate: est.estimate,
            stderr: est.stderr,
            exact: exact.map(format_rational),
        }
    }

    /// `|estimate - exact| <= max(3 SE, rel |exact|)`; trivially true without an exact value.
    pub fn within(&self, rel: f64) -> bool {
        match &self.exact {
            None => true,
            Some(s) => {
                let exact = crate::exact::parse_rational(s).ok().and_then(|r| r.to_f64()).unwrap_or(f64::NAN);
                (self.estimate - exact).abs() <= (3.0 * self.stderr).max(rel * exact.abs())
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data serializes")
    }
}
