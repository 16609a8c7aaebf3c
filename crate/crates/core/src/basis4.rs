//! The orthogonal basis `p_gamma(y) y0^n` of the extended pairing, its norms,
//! and the `S4`-invariant eigenfunctions `F^0_lambda`, `F^1_lambda`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combin::{
    e_epsilon, gen_pochhammer, hook_product, orbit_count, sort_to_partition, Composition,
    Partition, Permutation,
};
use crate::error::{Error, Result};
use crate::exact::{factorial, int, pochhammer, rational, ExactRational, ParamContext};
use crate::jack::{nsjp, symmetric_jack};
use crate::ops::{Pairing, SignY0, TypeB};
use crate::poly::{Frame, SparsePoly};

/// `(E, w)` for every subset `E` of `{1,2,3}`: `w` sends `1..k` onto `E` and
/// `k+1..3` onto the complement, increasing on both blocks.
const W_TABLE: [(&[usize], [usize; 3]); 8] = [
    (&[], [1, 2, 3]),
    (&[1], [1, 2, 3]),
    (&[2], [2, 1, 3]),
    (&[3], [3, 1, 2]),
    (&[1, 2], [1, 2, 3]),
    (&[1, 3], [1, 3, 2]),
    (&[2, 3], [2, 3, 1]),
    (&[1, 2, 3], [1, 2, 3]),
];

/// `gamma = w beta` with `beta_i` odd exactly for `i <= k`, and `alpha = floor(beta / 2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelDecomposition {
    pub gamma: Composition,
    /// Odd positions of `gamma`, 1-based and increasing.
    pub e: Vec<usize>,
    pub k: usize,
    pub w: Permutation,
    pub beta: Composition,
    pub alpha: Composition,
}

/// A basis label: `gamma` for `y_1..y_3` and the power `n` of `y_0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisLabel {
    pub gamma: Composition,
    pub n: u32,
}

impl BasisLabel {
    pub fn new(gamma: Vec<u32>, n: u32) -> Self {
        Self { gamma: Composition::new(gamma), n }
    }

    pub fn degree(&self) -> u32 {
        self.gamma.weight() + self.n
    }
}

/// The order-preserving permutation attached to the subset `e`.
pub fn w_for_subset(e: &[usize]) -> Permutation {
    let (_, w) = W_TABLE.iter().find(|(s, _)| *s == e).expect("subset of {1,2,3}");
    Permutation::from_one_line(w).expect("table entry is a permutation")
}

pub fn decompose_label(gamma: &Composition) -> Result<LabelDecomposition> {
    if gamma.len() != 3 {
        return Err(Error::LengthMismatch { expected: 3, found: gamma.len() });
    }
    let g = gamma.parts();
    let e: Vec<usize> = (1..=3).filter(|&i| g[i - 1] % 2 == 1).collect();
    let w = w_for_subset(&e);
    let beta: Vec<u32> = (1..=3).map(|j| g[w.apply(j) - 1]).collect();
    let alpha = beta.iter().map(|b| b / 2).collect();
    Ok(LabelDecomposition {
        gamma: gamma.clone(),
        k: e.len(),
        e,
        w,
        beta: Composition::new(beta),
        alpha: Composition::new(alpha),
    })
}

/// `p_gamma = w (y_1 ... y_k zeta_alpha(y^2))` in `y3`.
pub fn basis_poly(gamma: &Composition, ctx: &ParamContext) -> Result<SparsePoly> {
    let d = decompose_label(gamma)?;
    let ctx3 = ctx.with_nvars(3)?;
    let z = nsjp(&d.alpha, &ctx3)?;
    let k = d.k;
    let lifted = z.poly.substitute_squares()?.map_monomials(Frame::Y3, |e, c| {
        let mut m = e.to_vec();
        for x in &mut m[..k] {
            *x += 1;
        }
        Some((m, c.clone()))
    });
    lifted.apply_permutation(&d.w)
}

/// `p_gamma(y) y0^n` in `y4`.
pub fn basis_poly4(label: &BasisLabel, ctx: &ParamContext) -> Result<SparsePoly> {
    let p = basis_poly(&label.gamma, ctx)?.embed_y4()?;
    let y0n = SparsePoly::monomial(Frame::Y4, vec![label.n, 0, 0, 0], int(1));
    Ok(&p * &y0n)
}

fn two_pow(e: u32) -> ExactRational {
    ExactRational::from_integer(BigInt::from(2).pow(e))
}

fn half() -> ExactRational {
    rational(1, 2).unwrap()
}

/// `<y0^n, y0^n>`: `2^{2m} m! (kappa' + 1/2)_m` for `n = 2m`,
/// `2^{2m+1} m! (kappa' + 1/2)_{m+1}` for `n = 2m + 1`.
pub fn y0_norm(n: u32, ctx: &ParamContext) -> ExactRational {
    let m = n / 2;
    let a = ctx.kappa_prime() + half();
    let fact = ExactRational::from_integer(factorial(m));
    if n % 2 == 0 {
        two_pow(2 * m) * fact * pochhammer(&a, m)
    } else {
        two_pow(2 * m + 1) * fact * pochhammer(&a, m + 1)
    }
}

/// `2^{|beta|} (3 kappa + 1)_{alpha+} (2 kappa + 1/2)_{(beta - alpha)+} h(alpha, 1) / h(alpha, kappa + 1)`.
pub fn p_norm(gamma: &Composition, ctx: &ParamContext) -> Result<ExactRational> {
    let d = decompose_label(gamma)?;
    let ctx3 = ctx.with_nvars(3)?;
    let k = ctx.kappa();
    let (alpha_plus, _) = sort_to_partition(&d.alpha);
    let diff = Composition::new(d.beta.parts().iter().zip(d.alpha.parts()).map(|(b, a)| b - a).collect());
    let (diff_plus, _) = sort_to_partition(&diff);
    Ok(two_pow(d.beta.weight())
        * gen_pochhammer(&alpha_plus, &(k * int(3) + int(1)), &ctx3)
        * gen_pochhammer(&diff_plus, &(k * int(2) + half()), &ctx3)
        * hook_product(&d.alpha, &int(1), &ctx3)
        / hook_product(&d.alpha, &(k + int(1)), &ctx3))
}

/// Closed-form `<p_gamma y0^n, p_gamma y0^n>_{kappa, kappa'}`.
pub fn basis_norm(label: &BasisLabel, ctx: &ParamContext) -> Result<ExactRational> {
    Ok(p_norm(&label.gamma, ctx)? * y0_norm(label.n, ctx))
}

/// Closed-form norm next to the value computed from the pairing.
#[derive(Clone, Debug, PartialEq)]
pub struct NormCheck {
    pub formula: ExactRational,
    pub pairing: ExactRational,
}

impl NormCheck {
    pub fn agrees(&self) -> bool {
        self.formula == self.pairing
    }
}

/// Evaluates [`basis_norm`] and the pairing of the basis polynomial with
/// itself, using the product structure `<y0^n, y0^n> <p_gamma, p_gamma>_kappa`.
pub fn basis_norm_checked(label: &BasisLabel, ctx: &ParamContext) -> Result<NormCheck> {
    let p = basis_poly(&label.gamma, ctx)?;
    let pb = Pairing::new(TypeB(ctx.clone())).pair(&p, &p)?;
    let y0 = SparsePoly::monomial(Frame::Y0, vec![label.n], int(1));
    let p0 = Pairing::new(SignY0(ctx.clone())).pair(&y0, &y0)?;
    Ok(NormCheck { formula: basis_norm(label, ctx)?, pairing: pb * p0 })
}

/// `A_lambda = #orbit (3 kappa + 1)_lambda h(lambda, 1) / (E_1(lambda^R) h(lambda, kappa + 1))`.
pub fn a_lambda(lambda: &Partition, ctx: &ParamContext) -> Result<ExactRational> {
    if lambda.len() != 3 {
        return Err(Error::LengthMismatch { expected: 3, found: lambda.len() });
    }
    let ctx3 = ctx.with_nvars(3)?;
    let l = lambda.as_composition();
    let k = ctx.kappa();
    Ok(ExactRational::from_integer(orbit_count(lambda))
        * gen_pochhammer(lambda, &(k * int(3) + int(1)), &ctx3)
        * hook_product(l, &int(1), &ctx3)
        / (e_epsilon(&l.reversed(), 1, &ctx3) * hook_product(l, &(k + int(1)), &ctx3)))
}

/// An `S4`-invariant eigenfunction `F^s_lambda = (y1 y2 y3)^s j_lambda(y^2)` with
/// its norms. `printed_norm` is `2^{2|lambda|} (2 kappa + 1/2)_{lambda + s} A_lambda`;
/// `norm` carries the extra `2^{3s}` that the pairing requires; `pairing_norm`
/// is the pairing computed directly.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantF {
    pub poly: SparsePoly,
    pub a_lambda: ExactRational,
    pub printed_norm: ExactRational,
    pub norm: ExactRational,
    pub pairing_norm: ExactRational,
}

pub fn invariant_f(lambda: &Partition, s: u32, ctx: &ParamContext) -> Result<InvariantF> {
    if s > 1 {
        return Err(Error::Precondition(format!("s must be 0 or 1, got {s}")));
    }
    let ctx3 = ctx.with_nvars(3)?;
    let a = a_lambda(lambda, ctx)?;
    let j = symmetric_jack(lambda, &ctx3)?.substitute_squares()?;
    let poly = if s == 1 {
        &j * &SparsePoly::monomial(Frame::Y3, vec![1, 1, 1], int(1))
    } else {
        j
    };
    let shifted = Partition::new(lambda.parts().iter().map(|p| p + s).collect())?;
    let printed =
        two_pow(2 * lambda.weight()) * gen_pochhammer(&shifted, &(ctx.kappa() * int(2) + half()), &ctx3) * &a;
    let norm = &printed * two_pow(3 * s);
    let pairing_norm = Pairing::new(TypeB(ctx3)).pair(&poly, &poly)?;
    Ok(InvariantF { poly, a_lambda: a, printed_norm: printed, norm, pairing_norm })
}

/// `y_E = prod_{i in E} y_i` in `y3`.
pub fn y_subset(e: &[usize]) -> SparsePoly {
    let mut exps = vec![0u32; 3];
    for &i in e {
        exps[i - 1] = 1;
    }
    SparsePoly::monomial(Frame::Y3, exps, ExactRational::one())
}

/// True when the pairing of every `y_E f(y^2)` with `y_E' g(y^2)`, `E != E'`, vanishes
/// for the supplied even parts.
pub fn parity_separated(evens: &[SparsePoly], ctx: &ParamContext) -> Result<bool> {
    let subsets: Vec<&[usize]> = W_TABLE.iter().map(|(s, _)| *s).collect();
    let p = Pairing::new(TypeB(ctx.clone()));
    for (a, e1) in subsets.iter().enumerate() {
        for e2 in &subsets[a + 1..] {
            for f in evens {
                for g in evens {
                    let lhs = &y_subset(e1) * f;
                    let rhs = &y_subset(e2) * g;
                    if !p.pair(&lhs, &rhs)?.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}
