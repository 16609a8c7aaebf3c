//! Exhaustive verification sweeps over labels up to a degree bound.
//!
//! Each suite checks one family of exact identities and reports how many
//! cases were examined, how many failed, and the first failing case in
//! canonical order. Sweeps run in parallel; reports are order-stable.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::basis4::{basis_norm, basis_poly4, invariant_f, BasisLabel};
use crate::combin::{
    compositions, compositions_up_to, e_epsilon, hook_product, partitions, sort_to_partition, Permutation,
};
use crate::error::{Error, Result};
use crate::exact::{factorial, format_rational, int, rational, ExactRational, ParamContext};
use crate::hermite_cs::{
    conjugated_hamiltonian, exp_neg_half_laplacian, hermite_basis, laguerre, operator_identities_check,
    LaplacianKind,
};
use crate::jack::{jack_norm, nsjp, nsjp_eval_ones, symmetric_jack};
use crate::ops::{cherednik_a, ExtendedY, Pairing, TypeA};
use crate::poly::{Frame, SparsePoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// Eigenfunction property of `zeta_alpha`.
    Eigen,
    /// Orthogonality and norms of `zeta_alpha`.
    Prop1,
    /// Orthogonality and norms of the four-variable basis.
    Prop2,
    EvalOnes,
    Hooks,
    /// Symmetric Jack invariance and norms.
    Jack,
    /// Laguerre form of `e^{-D0^2/2} y0^n`.
    Laguerre,
    Spectrum,
    Identities,
    F1Norm,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Eigen,
        Suite::Prop1,
        Suite::Prop2,
        Suite::EvalOnes,
        Suite::Hooks,
        Suite::Jack,
        Suite::Laguerre,
        Suite::Spectrum,
        Suite::Identities,
        Suite::F1Norm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Eigen => "eigen",
            Suite::Prop1 => "prop1",
            Suite::Prop2 => "prop2",
            Suite::EvalOnes => "eval-ones",
            Suite::Hooks => "hooks",
            Suite::Jack => "jack",
            Suite::Laguerre => "laguerre",
            Suite::Spectrum => "spectrum",
            Suite::Identities => "identities",
            Suite::F1Norm => "f1-norm",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub kappa: String,
    pub kappa_prime: String,
    pub max_degree: u32,
    pub checked: usize,
    pub failures: usize,
    pub first_counterexample: Option<String>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.checked > 0
    }
}

/// One verified case: a description and whether it held.
type Case = (String, bool);

fn tally(suite: Suite, ctx: &ParamContext, d: u32, cases: Vec<Case>, notes: Vec<String>) -> SuiteReport {
    let failures = cases.iter().filter(|c| !c.1).count();
    SuiteReport {
        suite: suite.name().into(),
        kappa: format_rational(ctx.kappa()),
        kappa_prime: format_rational(ctx.kappa_prime()),
        max_degree: d,
        checked: cases.len(),
        failures,
        first_counterexample: cases.into_iter().find(|c| !c.1).map(|c| c.0),
        notes,
    }
}

fn collect<T, F>(items: Vec<T>, f: F) -> Result<Vec<Case>>
where
    T: Sync,
    F: Fn(&T) -> Result<Vec<Case>> + Sync + Send,
{
    let nested: Vec<Vec<Case>> = items.par_iter().map(f).collect::<Result<_>>()?;
    Ok(nested.into_iter().flatten().collect())
}

/// Runs a suite. Type-A suites use `ctx.nvars()` variables (3 unless changed).
pub fn run_suite(suite: Suite, ctx: &ParamContext, d: u32) -> Result<SuiteReport> {
    let n = ctx.nvars();
    let mut notes = Vec::new();
    let cases = match suite {
        Suite::Eigen => collect(compositions_up_to(n, d), |a| {
            let z = nsjp(a, ctx)?;
            (1..=n)
                .map(|i| Ok((format!("U{i} zeta{a}"), cherednik_a(i, &z.poly, ctx)? == z.poly.scale(&z.spectral[i - 1]))))
                .collect()
        })?,
        Suite::Prop1 => {
            let labels = compositions_up_to(n, d);
            let polys: Vec<_> = labels.par_iter().map(|a| nsjp(a, ctx)).collect::<Result<_>>()?;
            let pairing = Pairing::new(TypeA(ctx.clone()));
            let idx: Vec<usize> = (0..labels.len()).collect();
            collect(idx, |&i| {
                let (a, za) = (&labels[i], &polys[i]);
                labels
                    .iter()
                    .zip(&polys)
                    .map(|(b, zb)| {
                        let v = pairing.pair(&za.poly, &zb.poly)?;
                        let ok = if a == b { v == za.norm } else { v.is_zero() };
                        Ok((format!("<zeta{a}, zeta{b}> = {}", format_rational(&v)), ok))
                    })
                    .collect()
            })?
        }
        Suite::Prop2 => {
            let pairing = Pairing::new(ExtendedY(ctx.clone()));
            let mut out = Vec::new();
            for deg in 0..=d {
                let labels: Vec<BasisLabel> = compositions(4, deg)
                    .into_iter()
                    .map(|a| BasisLabel::new(a.parts()[1..].to_vec(), a.parts()[0]))
                    .collect();
                let polys: Vec<_> = labels.par_iter().map(|l| basis_poly4(l, ctx)).collect::<Result<_>>()?;
                let idx: Vec<usize> = (0..labels.len()).collect();
                out.extend(collect(idx, |&i| {
                    (0..labels.len())
                        .map(|j| {
                            let v = pairing.pair(&polys[i], &polys[j])?;
                            let ok = if i == j { v == basis_norm(&labels[i], ctx)? } else { v.is_zero() };
                            Ok((format!("<p{:?}, p{:?}> = {}", labels[i], labels[j], format_rational(&v)), ok))
                        })
                        .collect()
                })?);
            }
            out
        }
        Suite::EvalOnes => collect(compositions_up_to(n, d), |a| {
            let v = nsjp(a, ctx)?.poly.evaluate(&vec![int(1); n])?;
            Ok(vec![(format!("zeta{a}(1,...,1) = {}", format_rational(&v)), v == nsjp_eval_ones(a, ctx))])
        })?,
        Suite::Hooks => collect(compositions_up_to(n, d), |a| {
            let (lambda, _) = sort_to_partition(a);
            let lp = lambda.as_composition();
            let kp1 = ctx.kappa() + int(1);
            let first = hook_product(a, &kp1, ctx) == e_epsilon(a, 1, ctx) * hook_product(lp, &kp1, ctx);
            let second = hook_product(lp, &int(1), ctx) == hook_product(a, &int(1), ctx) * e_epsilon(a, -1, ctx);
            Ok(vec![(format!("h(.,kappa+1) at {a}"), first), (format!("h(.,1) at {a}"), second)])
        })?,
        Suite::Jack => {
            let lambdas: Vec<_> = (0..=d).flat_map(|k| partitions(n, k)).collect();
            let pairing = Pairing::new(TypeA(ctx.clone()));
            collect(lambdas, |l| {
                let j = symmetric_jack(l, ctx)?;
                let mut v = Vec::new();
                for w in Permutation::generators(n) {
                    v.push((format!("{w:?} j{:?}", l.parts()), j.apply_permutation(&w)? == j));
                }
                let norm = pairing.pair(&j, &j)?;
                v.push((format!("<j{:?}, j> = {}", l.parts(), format_rational(&norm)), norm == jack_norm(l, ctx)));
                Ok(v)
            })?
        }
        Suite::Laguerre => {
            let kp = ctx.kappa_prime();
            collect((0..=d).collect(), |&m| {
                let mut v = Vec::new();
                for odd in [0u32, 1] {
                    let e = 2 * m + odd;
                    let y = SparsePoly::monomial(Frame::Y0, vec![e], int(1));
                    let lhs = exp_neg_half_laplacian(LaplacianKind::D0, &y, ctx)?;
                    let a = kp + rational(2 * odd as i64 - 1, 2)?;
                    let arg = SparsePoly::monomial(Frame::Y0, vec![2], rational(1, 2)?);
                    let scale = ExactRational::from_integer(factorial(m)) * int(-2).pow(m as i32);
                    let mut rhs = laguerre(m, &a)?.compose_univariate(&arg)?.scale(&scale);
                    if odd == 1 {
                        rhs = &rhs * &SparsePoly::var(Frame::Y0, 0)?;
                    }
                    v.push((format!("y0^{e}"), lhs == rhs));
                }
                Ok(v)
            })?
        }
        Suite::Spectrum => {
            let mut out = Vec::new();
            for deg in 0..=d {
                let labels: Vec<BasisLabel> = compositions(4, deg)
                    .into_iter()
                    .map(|a| BasisLabel::new(a.parts()[1..].to_vec(), a.parts()[0]))
                    .collect();
                let recs: Vec<_> = labels.par_iter().map(|l| hermite_basis(l, ctx)).collect::<Result<_>>()?;
                for r in &recs {
                    let ok = conjugated_hamiltonian(&r.poly, ctx)? == r.poly.scale(&r.energy);
                    out.push((format!("H {:?} energy {}", r.label, format_rational(&r.energy)), ok));
                }
                let same = recs.windows(2).all(|w| w[0].energy == w[1].energy);
                out.push((format!("degeneracy at degree {deg}"), same));
            }
            out
        }
        Suite::Identities => {
            let report = operator_identities_check(ctx, d)?;
            report
                .checks
                .iter()
                .map(|c| {
                    let tag = match &c.first_failure {
                        Some(m) => format!("{} at {m}", c.name),
                        None => c.name.to_string(),
                    };
                    notes.push(format!("{}: {} monomials, {} failures", c.name, c.tested, c.failures));
                    (tag, c.failures == 0)
                })
                .collect()
        }
        Suite::F1Norm => {
            let lambdas: Vec<_> = (0..=d).flat_map(|k| partitions(3, k)).collect();
            let results: Vec<_> = lambdas
                .par_iter()
                .map(|l| invariant_f(l, 1, ctx).map(|f| (l.clone(), f)))
                .collect::<Result<_>>()?;
            let (mut printed, mut corrected) = (0usize, 0usize);
            let cases = results
                .iter()
                .map(|(l, f)| {
                    let p = f.pairing_norm == f.printed_norm;
                    let c = f.pairing_norm == f.norm;
                    printed += p as usize;
                    corrected += c as usize;
                    (format!("F1{:?}: pairing {}", l.parts(), format_rational(&f.pairing_norm)), p || c)
                })
                .collect();
            notes.push(format!("printed 2^(2|lambda|) form matched {printed} of {}", results.len()));
            notes.push(format!("2^(2|lambda|+3) form matched {corrected} of {}", results.len()));
            cases
        }
    };
    Ok(tally(suite, ctx, d, cases, notes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_sweeps_pass() {
        let ctx = ParamContext::new(rational(1, 2).unwrap(), int(2), 3).unwrap();
        for s in Suite::ALL {
            let r = run_suite(s, &ctx, 2).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn f1_records_the_matching_form() {
        let ctx = ParamContext::new(int(1), int(0), 3).unwrap();
        let r = run_suite(Suite::F1Norm, &ctx, 1).unwrap();
        assert!(r.passed());
        assert_eq!(r.notes[0], "printed 2^(2|lambda|) form matched 0 of 2");
        assert_eq!(r.notes[1], "2^(2|lambda|+3) form matched 2 of 2");
    }
}
