//! Exact rational scalars and the parameter context.
//!
//! All symbolic work in this crate is carried out over arbitrary-precision
//! rationals. The coupling constants `kappa` (the S_N / D_3 class) and
//! `kappa_prime` (the sign change along `v0`) are fixed rational values for
//! the lifetime of a [`ParamContext`].

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type ExactRational = BigRational;

/// Builds `p/q` in lowest terms.
pub fn rational(p: i64, q: i64) -> Result<ExactRational> {
    if q == 0 {
        return Err(Error::ZeroDenominator);
    }
    Ok(BigRational::new(BigInt::from(p), BigInt::from(q)))
}

/// Integer as a rational.
pub fn int(n: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<ExactRational> {
    let s = s.trim();
    match BigRational::from_str(s) {
        Ok(r) => Ok(r),
        Err(_) if s.contains('/') && s.rsplit('/').next().map(|d| d.trim()) == Some("0") => {
            Err(Error::ZeroDenominator)
        }
        Err(_) => Err(Error::Parse(format!("malformed rational `{s}`"))),
    }
}

/// Canonical text form: `"p/q"`, or `"p"` when the denominator is 1.
pub fn format_rational(r: &ExactRational) -> String {
    r.to_string()
}

/// Rising factorial `(t)_n = t (t+1) ... (t+n-1)`.
pub fn pochhammer(t: &ExactRational, n: u32) -> ExactRational {
    let mut acc = ExactRational::one();
    let mut f = t.clone();
    for _ in 0..n {
        acc *= &f;
        f += ExactRational::one();
    }
    acc
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Fixed parameter values shared by every operator and formula evaluation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParamContext {
    kappa: ExactRational,
    kappa_prime: ExactRational,
    nvars: usize,
}

impl ParamContext {
    /// Rejects negative parameters (the pairing is only positive definite
    /// for `kappa, kappa_prime >= 0`) and `nvars < 2`.
    pub fn new(kappa: ExactRational, kappa_prime: ExactRational, nvars: usize) -> Result<Self> {
        if kappa.is_negative() {
            return Err(Error::NegativeParameter { name: "kappa", value: kappa.to_string() });
        }
        if kappa_prime.is_negative() {
            return Err(Error::NegativeParameter {
                name: "kappa_prime",
                value: kappa_prime.to_string(),
            });
        }
        if nvars < 2 {
            return Err(Error::InvalidNvars(nvars));
        }
        Ok(Self { kappa, kappa_prime, nvars })
    }

    pub fn kappa(&self) -> &ExactRational {
        &self.kappa
    }

    pub fn kappa_prime(&self) -> &ExactRational {
        &self.kappa_prime
    }

    /// Number of variables `N` seen by the type-A operators.
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Same parameters with a different `N`.
    pub fn with_nvars(&self, nvars: usize) -> Result<Self> {
        Self::new(self.kappa.clone(), self.kappa_prime.clone(), nvars)
    }

    pub(crate) fn kappa_is_zero(&self) -> bool {
        self.kappa.is_zero()
    }
}

/// Free-function form of [`ParamContext::new`].
pub fn make_context(
    kappa: ExactRational,
    kappa_prime: ExactRational,
    nvars: usize,
) -> Result<ParamContext> {
    ParamContext::new(kappa, kappa_prime, nvars)
}
