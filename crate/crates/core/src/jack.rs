//! Nonsymmetric Jack polynomials `zeta_alpha` (x-monic), symmetric Jack
//! polynomials `j_lambda`, and closed-form norms and special values.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};

use crate::combin::{
    compositions, dominates, e_epsilon, gen_pochhammer, hook_product, orbit, orbit_count,
    sort_to_partition, spectral_vector, Composition, Partition,
};
use crate::error::{Error, Result};
use crate::exact::{int, ExactRational, ParamContext};
use crate::ops::cherednik_a;
use crate::poly::{Frame, SparsePoly};

/// An x-monic joint eigenfunction of the Cherednik operators.
#[derive(Clone, Debug, PartialEq)]
pub struct NsjpRecord {
    pub label: Composition,
    pub poly: SparsePoly,
    pub spectral: Vec<ExactRational>,
    pub norm: ExactRational,
}

/// Solves for `zeta_alpha` by back-substitution along the canonical order.
///
/// With `zeta = sum_beta A_beta x^beta` and `U_i` triangular, the coefficient
/// of `x^beta` in `U_i zeta = xi_i(alpha) zeta` reads
/// `(xi_i(beta) - xi_i(alpha)) A_beta = -sum_{gamma |> beta} [U_i]_{beta gamma} A_gamma`,
/// which is solved with the first `i` that separates `beta` from `alpha`.
fn solve(alpha: &Composition, ctx: &ParamContext) -> Result<NsjpRecord> {
    let n = ctx.nvars();
    if alpha.len() != n {
        return Err(Error::LengthMismatch { expected: n, found: alpha.len() });
    }
    if ctx.kappa_is_zero() {
        return Err(Error::Precondition("nonsymmetric Jack polynomials need kappa > 0".into()));
    }
    let frame = Frame::X(n);
    let xi_alpha = spectral_vector(alpha, ctx)?;
    // compositions() lists ascending canonical order; walk it downward from alpha
    let support: Vec<Composition> = compositions(n, alpha.weight())
        .into_iter()
        .rev()
        .filter(|b| b == alpha || dominates(alpha, b).unwrap_or(false))
        .collect();

    let mut coeffs: HashMap<&Composition, ExactRational> = HashMap::new();
    // images[gamma][i] = U_{i+1} x^gamma, only for gamma already solved
    let mut images: Vec<Vec<SparsePoly>> = Vec::with_capacity(support.len());
    for (k, beta) in support.iter().enumerate() {
        let a_beta = if k == 0 {
            ExactRational::one()
        } else {
            let xi_beta = spectral_vector(beta, ctx)?;
            let i = (0..n)
                .find(|&i| xi_beta[i] != xi_alpha[i])
                .ok_or_else(|| Error::SingularSolve(format!("{alpha} at {beta}")))?;
            let mut rhs = ExactRational::zero();
            for (gamma, img) in support[..k].iter().zip(&images) {
                let c = img[i].coeff(beta.parts());
                if !c.is_zero() {
                    rhs -= c * &coeffs[gamma];
                }
            }
            rhs / (&xi_beta[i] - &xi_alpha[i])
        };
        let mono = SparsePoly::monomial(frame, beta.parts().to_vec(), int(1));
        images.push((1..=n).map(|i| cherednik_a(i, &mono, ctx)).collect::<Result<_>>()?);
        coeffs.insert(beta, a_beta);
    }
    let poly = SparsePoly::from_terms(
        frame,
        support.iter().map(|b| (b.parts().to_vec(), coeffs[b].clone())),
    )?;
    Ok(NsjpRecord { label: alpha.clone(), poly, spectral: xi_alpha, norm: nsjp_norm(alpha, ctx) })
}

/// Atomic get-or-compute cache of [`NsjpRecord`]s keyed by label and parameters.
///
/// Concurrent misses on the same key may compute twice; both results are identical.
#[derive(Default)]
pub struct JackCache {
    map: RwLock<HashMap<(ParamContext, Composition), Arc<NsjpRecord>>>,
}

impl JackCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, alpha: &Composition, ctx: &ParamContext) -> Result<Arc<NsjpRecord>> {
        let key = (ctx.clone(), alpha.clone());
        if let Some(r) = self.map.read().unwrap().get(&key) {
            return Ok(r.clone());
        }
        let rec = Arc::new(solve(alpha, ctx)?);
        Ok(self.map.write().unwrap().entry(key).or_insert(rec).clone())
    }

    pub fn len(&self) -> usize {
        self.map.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn global_cache() -> &'static JackCache {
    static CACHE: OnceLock<JackCache> = OnceLock::new();
    CACHE.get_or_init(JackCache::new)
}

/// `zeta_alpha` in `x{N}` with `N = ctx.nvars()`, memoized process-wide.
pub fn nsjp(alpha: &Composition, ctx: &ParamContext) -> Result<Arc<NsjpRecord>> {
    global_cache().get(alpha, ctx)
}

/// `<zeta_alpha, zeta_alpha> = (N kappa + 1)_{alpha+} h(alpha, 1) / h(alpha, kappa + 1)`.
pub fn nsjp_norm(alpha: &Composition, ctx: &ParamContext) -> ExactRational {
    let (lambda, _) = sort_to_partition(alpha);
    let n = int(alpha.len() as i64);
    let top = gen_pochhammer(&lambda, &(ctx.kappa() * n + int(1)), ctx);
    let kp1 = ctx.kappa() + int(1);
    top * hook_product(alpha, &int(1), ctx) / hook_product(alpha, &kp1, ctx)
}

/// `j_lambda = sum_{alpha+ = lambda} E_{-1}(alpha) zeta_alpha`, monic in `x^lambda`.
pub fn symmetric_jack(lambda: &Partition, ctx: &ParamContext) -> Result<SparsePoly> {
    let mut acc = SparsePoly::zero(Frame::X(lambda.len()));
    for alpha in orbit(lambda) {
        let z = nsjp(&alpha, ctx)?;
        acc = &acc + &z.poly.scale(&e_epsilon(&alpha, -1, ctx));
    }
    Ok(acc)
}

/// `<j_lambda, j_lambda> = #orbit (N kappa + 1)_lambda h(lambda, 1) / (E_1(lambda^R) h(lambda, kappa + 1))`.
pub fn jack_norm(lambda: &Partition, ctx: &ParamContext) -> ExactRational {
    let l = lambda.as_composition();
    let n = int(l.len() as i64);
    let count = ExactRational::from_integer(orbit_count(lambda));
    let top = gen_pochhammer(lambda, &(ctx.kappa() * n + int(1)), ctx);
    let kp1 = ctx.kappa() + int(1);
    count * top * hook_product(l, &int(1), ctx)
        / (e_epsilon(&l.reversed(), 1, ctx) * hook_product(l, &kp1, ctx))
}

/// `zeta_alpha(1, ..., 1) = (N kappa + 1)_{alpha+} / h(alpha, kappa + 1)`.
pub fn nsjp_eval_ones(alpha: &Composition, ctx: &ParamContext) -> ExactRational {
    let (lambda, _) = sort_to_partition(alpha);
    let n = int(alpha.len() as i64);
    gen_pochhammer(&lambda, &(ctx.kappa() * n + int(1)), ctx)
        / hook_product(alpha, &(ctx.kappa() + int(1)), ctx)
}
