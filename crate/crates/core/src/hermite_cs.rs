//! Gaussian-weight transforms `e^{-Delta/2}`, Laguerre polynomials, and the
//! conjugated Calogero-Sutherland Hamiltonian with its polynomial eigenfunctions.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::basis4::{basis_poly4, invariant_f, BasisLabel};
use crate::combin::{compositions_up_to, Partition};
use crate::error::{Error, Result};
use crate::exact::{factorial, int, pochhammer, rational, ExactRational, ParamContext};
use crate::ops::{cherednik_b, dunkl_d0, laplacian, OperatorKind};
use crate::poly::{Frame, SparsePoly};

/// Which Laplacian the exponential is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LaplacianKind {
    /// `Delta_B` on `y3` or `y4`.
    B,
    /// `D0^2` on `y0` or `y4`.
    D0,
    /// `Delta_h` on `y4` or `x4`.
    H,
}

impl LaplacianKind {
    fn operator(self) -> OperatorKind {
        match self {
            Self::B => OperatorKind::LaplacianB,
            Self::D0 => OperatorKind::D0,
            Self::H => OperatorKind::LaplacianH,
        }
    }

    fn accepts(self, frame: Frame) -> bool {
        matches!(
            (self, frame),
            (Self::B, Frame::Y3 | Frame::Y4) | (Self::D0, Frame::Y0 | Frame::Y4) | (Self::H, Frame::Y4 | Frame::X(4))
        )
    }
}

/// `e^{s Delta / 2} f = sum_k (s/2)^k / k! Delta^k f` for `s = +-1`; the
/// series stops once `Delta^k f` vanishes.
pub fn exp_half_laplacian(kind: LaplacianKind, sign: i64, f: &SparsePoly, ctx: &ParamContext) -> Result<SparsePoly> {
    if !kind.accepts(f.frame()) {
        return Err(Error::FrameMismatch { expected: format!("a frame for {kind:?}"), found: f.frame() });
    }
    let step = rational(sign.signum(), 2)?;
    let mut acc = f.clone();
    let mut term = f.clone();
    let mut k = 0i64;
    loop {
        term = laplacian(kind.operator(), &term, ctx)?;
        if term.is_zero() {
            return Ok(acc);
        }
        k += 1;
        term = term.scale(&(&step / int(k)));
        acc = &acc + &term;
    }
}

/// `e^{-Delta/2} f`.
pub fn exp_neg_half_laplacian(kind: LaplacianKind, f: &SparsePoly, ctx: &ParamContext) -> Result<SparsePoly> {
    exp_half_laplacian(kind, -1, f, ctx)
}

/// `L_n^a(t) = ((a+1)_n / n!) sum_i ((-n)_i / (a+1)_i) t^i / i!` in the `t` frame.
pub fn laguerre(n: u32, a: &ExactRational) -> Result<SparsePoly> {
    let a1 = a + int(1);
    if let Some(i) = (1..=n).find(|&i| pochhammer(&a1, i).is_zero()) {
        return Err(Error::VanishingPochhammer(i));
    }
    let lead = pochhammer(&a1, n) / ExactRational::from_integer(factorial(n));
    let minus_n = int(-(n as i64));
    let terms = (0..=n).map(|i| {
        let c = &lead * pochhammer(&minus_n, i)
            / (pochhammer(&a1, i) * ExactRational::from_integer(factorial(i)));
        (vec![i], c)
    });
    SparsePoly::from_terms(Frame::T, terms)
}

/// `L_n^a(y0^2 / 2)` in `y0`.
fn laguerre_in_y0(n: u32, a: &ExactRational) -> Result<SparsePoly> {
    let arg = SparsePoly::monomial(Frame::Y0, vec![2], rational(1, 2)?);
    laguerre(n, a)?.compose_univariate(&arg)
}

/// `|gamma| + n + 6 kappa + kappa' + 2`.
pub fn energy(label: &BasisLabel, ctx: &ParamContext) -> ExactRational {
    int(label.degree() as i64) + ctx.kappa() * int(6) + ctx.kappa_prime() + int(2)
}

/// A Hermite-type basis element `e^{-Delta_h/2}(p_gamma y0^n)` and its energy.
#[derive(Clone, Debug, PartialEq)]
pub struct HermiteRecord {
    pub label: BasisLabel,
    pub poly: SparsePoly,
    pub energy: ExactRational,
}

pub fn hermite_basis(label: &BasisLabel, ctx: &ParamContext) -> Result<HermiteRecord> {
    let p = basis_poly4(label, ctx)?;
    Ok(HermiteRecord {
        label: label.clone(),
        poly: exp_neg_half_laplacian(LaplacianKind::H, &p, ctx)?,
        energy: energy(label, ctx),
    })
}

/// `-Delta_B f - D0^2 f + sum_{i=0}^{3} y_i df/dy_i + (6 kappa + kappa' + 2) f` on `y4`.
pub fn conjugated_hamiltonian(f: &SparsePoly, ctx: &ParamContext) -> Result<SparsePoly> {
    if f.frame() != Frame::Y4 {
        return Err(Error::FrameMismatch { expected: "y4".into(), found: f.frame() });
    }
    let lap = laplacian(OperatorKind::LaplacianH, f, ctx)?;
    let shift = ctx.kappa() * int(6) + ctx.kappa_prime() + int(2);
    Ok(&(&f.euler() - &lap) + &f.scale(&shift))
}

/// `e^{-Delta_B/2}(F^s_lambda) L_n^{kappa' - 1/2}(y0^2 / 2)` in `y4`.
pub fn cs_invariant_eigenfunction(lambda: &Partition, s: u32, n: u32, ctx: &ParamContext) -> Result<SparsePoly> {
    let f = invariant_f(lambda, s, ctx)?.poly;
    let ef = exp_neg_half_laplacian(LaplacianKind::B, &f, ctx)?.embed_y4()?;
    let l = laguerre_in_y0(n, &(ctx.kappa_prime() - rational(1, 2)?))?.embed_y4()?;
    Ok(&ef * &l)
}

/// `2|lambda| + 3s + 2n + 6 kappa + kappa' + 2`.
pub fn cs_invariant_energy(lambda: &Partition, s: u32, n: u32, ctx: &ParamContext) -> ExactRational {
    int((2 * lambda.weight() + 3 * s + 2 * n) as i64) + ctx.kappa() * int(6) + ctx.kappa_prime() + int(2)
}

/// `sum_i U^B_i f` on `y3` or `y4`.
fn sum_cherednik_b(f: &SparsePoly, ctx: &ParamContext) -> Result<SparsePoly> {
    let mut acc = SparsePoly::zero(f.frame());
    for i in 1..=3 {
        acc = &acc + &cherednik_b(i, f, ctx)?;
    }
    Ok(acc)
}

/// `(D0 y0 - kappa' sigma0) f` on `y0` or `y4`.
pub fn d0_y0_minus_sigma(f: &SparsePoly, ctx: &ParamContext) -> Result<SparsePoly> {
    let pos = f
        .frame()
        .y0_position()
        .ok_or(Error::FrameMismatch { expected: "y0 or y4".into(), found: f.frame() })?;
    let shifted = f.map_monomials(f.frame(), |e, c| {
        let mut m = e.to_vec();
        m[pos] += 1;
        Some((m, c.clone()))
    });
    Ok(&dunkl_d0(&shifted, ctx)? - &f.sign_change(0)?.scale(ctx.kappa_prime()))
}

type Laurent = BTreeMap<i64, ExactRational>;

fn laurent_add(acc: &mut Laurent, e: i64, c: ExactRational) {
    if c.is_zero() {
        return;
    }
    let slot = acc.entry(e).or_insert_with(ExactRational::zero);
    *slot += c;
    if slot.is_zero() {
        acc.remove(&e);
    }
}

/// The right side of `D0^2 = d^2/dy0^2 + (2 kappa'/y0) d/dy0 - kappa' (1 - sigma0)/y0^2`
/// applied to `y0^n`, term by term as a Laurent polynomial.
fn d0_squared_display(n: u32, ctx: &ParamContext) -> Laurent {
    let (n, kp) = (n as i64, ctx.kappa_prime());
    let mut out = Laurent::new();
    laurent_add(&mut out, n - 2, int(n * (n - 1)));
    laurent_add(&mut out, n - 2, kp * int(2 * n));
    if n % 2 != 0 {
        laurent_add(&mut out, n - 2, -(kp * int(2)));
    }
    out
}

fn poly_to_laurent(p: &SparsePoly) -> Laurent {
    let mut out = Laurent::new();
    for (m, c) in p.terms() {
        laurent_add(&mut out, m.exps()[0] as i64, c.clone());
    }
    out
}

/// Outcome of one identity over a family of test monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub tested: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.failures == 0)
    }

    pub fn violations(&self) -> Vec<&IdentityCheck> {
        self.checks.iter().filter(|c| c.failures > 0).collect()
    }
}

fn run_check<I, F>(name: &'static str, cases: I, mut check: F) -> Result<IdentityCheck>
where
    I: IntoIterator<Item = Vec<u32>>,
    F: FnMut(&[u32]) -> Result<bool>,
{
    let mut out = IdentityCheck { name, tested: 0, failures: 0, first_failure: None };
    for e in cases {
        out.tested += 1;
        if !check(&e)? {
            out.failures += 1;
            out.first_failure.get_or_insert_with(|| format!("{e:?}"));
        }
    }
    Ok(out)
}

/// Checks the operator identities behind the spectrum on every monomial of
/// degree at most `d`.
pub fn operator_identities_check(ctx: &ParamContext, d: u32) -> Result<IdentityReport> {
    let kp = ctx.kappa_prime();
    let y3_monos = || compositions_up_to(3, d).into_iter().map(|c| c.parts().to_vec());
    let y4_monos = || compositions_up_to(4, d).into_iter().map(|c| c.parts().to_vec());
    let y0_monos = || (0..=d).map(|n| vec![n]);
    let mut checks = Vec::new();

    checks.push(run_check("B conjugation", y3_monos(), |e| {
        let m = SparsePoly::monomial(Frame::Y3, e.to_vec(), int(1));
        let up = exp_half_laplacian(LaplacianKind::B, 1, &m, ctx)?;
        let lhs = exp_half_laplacian(LaplacianKind::B, -1, &sum_cherednik_b(&up, ctx)?, ctx)?;
        let lap = laplacian(OperatorKind::LaplacianB, &m, ctx)?;
        let rhs = &(&m.euler() - &lap) + &m.scale(&(ctx.kappa() * int(6) + int(3)));
        Ok(lhs == rhs)
    })?);

    checks.push(run_check("D0 conjugation", y0_monos(), |e| {
        let m = SparsePoly::monomial(Frame::Y0, e.to_vec(), int(1));
        let up = exp_half_laplacian(LaplacianKind::D0, 1, &m, ctx)?;
        let lhs = exp_half_laplacian(LaplacianKind::D0, -1, &d0_y0_minus_sigma(&up, ctx)?, ctx)?;
        let lap = laplacian(OperatorKind::D0, &m, ctx)?;
        let rhs = &(&m.euler() - &lap) + &m.scale(&(kp + int(1)));
        Ok(lhs == rhs)
    })?);

    checks.push(run_check("D0 squared display", y0_monos(), |e| {
        let m = SparsePoly::monomial(Frame::Y0, e.to_vec(), int(1));
        let lhs = poly_to_laurent(&laplacian(OperatorKind::D0, &m, ctx)?);
        Ok(lhs == d0_squared_display(e[0], ctx))
    })?);

    checks.push(run_check("D0 y0 - kappa' sigma0 eigenvalues", y0_monos(), |e| {
        let m = SparsePoly::monomial(Frame::Y0, e.to_vec(), int(1));
        Ok(d0_y0_minus_sigma(&m, ctx)? == m.scale(&(int(e[0] as i64 + 1) + kp)))
    })?);

    checks.push(run_check("Hamiltonian conjugation", y4_monos(), |e| {
        let m = SparsePoly::monomial(Frame::Y4, e.to_vec(), int(1));
        let up = exp_half_laplacian(LaplacianKind::H, 1, &m, ctx)?;
        let inner = &(&sum_cherednik_b(&up, ctx)? + &d0_y0_minus_sigma(&up, ctx)?) - &up.scale(&int(2));
        let lhs = exp_half_laplacian(LaplacianKind::H, -1, &inner, ctx)?;
        Ok(lhs == conjugated_hamiltonian(&m, ctx)?)
    })?);

    checks.push(run_check("transform factorizes", y4_monos(), |e| {
        let m = SparsePoly::monomial(Frame::Y4, e.to_vec(), int(1));
        let whole = exp_neg_half_laplacian(LaplacianKind::H, &m, ctx)?;
        let b = SparsePoly::monomial(Frame::Y4, vec![0, e[1], e[2], e[3]], int(1));
        let z = SparsePoly::monomial(Frame::Y4, vec![e[0], 0, 0, 0], int(1));
        let parts = &exp_neg_half_laplacian(LaplacianKind::B, &b, ctx)?
            * &exp_neg_half_laplacian(LaplacianKind::D0, &z, ctx)?;
        Ok(whole == parts)
    })?);

    checks.push(run_check("Laguerre form of the D0 transform", y0_monos(), |e| {
        let n = e[0];
        let m = SparsePoly::monomial(Frame::Y0, vec![n], int(1));
        let lhs = exp_neg_half_laplacian(LaplacianKind::D0, &m, ctx)?;
        let half = n / 2;
        let a = if n % 2 == 0 { kp - rational(1, 2)? } else { kp + rational(1, 2)? };
        let scale = ExactRational::from_integer(factorial(half)) * int(-2).pow(half as i32);
        let mut rhs = laguerre_in_y0(half, &a)?.scale(&scale);
        if n % 2 == 1 {
            rhs = &rhs * &SparsePoly::var(Frame::Y0, 0)?;
        }
        Ok(lhs == rhs)
    })?);

    Ok(IdentityReport { checks })
}

/// Applies the inverse transform; `e^{Delta/2} e^{-Delta/2} f = f`.
pub fn exp_pos_half_laplacian(kind: LaplacianKind, f: &SparsePoly, ctx: &ParamContext) -> Result<SparsePoly> {
    exp_half_laplacian(kind, 1, f, ctx)
}

/// Leading-degree part of `f`, used to check that the transforms only add
/// lower-order corrections.
pub fn top_part(f: &SparsePoly) -> SparsePoly {
    match f.degree() {
        Some(d) => f.homogeneous_part(d),
        None => f.clone(),
    }
}

impl HermiteRecord {
    /// True when the top-degree part agrees with the untransformed basis element.
    pub fn top_matches(&self, ctx: &ParamContext) -> Result<bool> {
        Ok(top_part(&self.poly) == top_part(&basis_poly4(&self.label, ctx)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::{compositions, partitions};

    fn q(p: i64, r: i64) -> ExactRational {
        rational(p, r).unwrap()
    }

    fn ctx(k: ExactRational, kp: ExactRational) -> ParamContext {
        ParamContext::new(k, kp, 3).unwrap()
    }

    fn y4(e: &[u32]) -> SparsePoly {
        SparsePoly::monomial(Frame::Y4, e.to_vec(), int(1))
    }

    #[test]
    fn transform_examples() {
        let (k, kp) = (q(2, 5), q(7, 3));
        let c = ctx(k.clone(), kp.clone());
        for e in [[1, 0, 0, 0], [0, 0, 1, 0]] {
            assert_eq!(exp_neg_half_laplacian(LaplacianKind::H, &y4(&e), &c).unwrap(), y4(&e));
        }
        let y0sq = SparsePoly::monomial(Frame::Y0, vec![2], int(1));
        let expect = &y0sq - &SparsePoly::constant(Frame::Y0, int(1) + &kp * int(2));
        assert_eq!(exp_neg_half_laplacian(LaplacianKind::D0, &y0sq, &c).unwrap(), expect);
        let y1sq = SparsePoly::monomial(Frame::Y3, vec![2, 0, 0], int(1));
        let expect = &y1sq - &SparsePoly::constant(Frame::Y3, int(1) + &k * int(4));
        assert_eq!(exp_neg_half_laplacian(LaplacianKind::B, &y1sq, &c).unwrap(), expect);
        assert!(exp_neg_half_laplacian(LaplacianKind::D0, &y1sq, &c).is_err());
        assert!(exp_neg_half_laplacian(LaplacianKind::B, &y0sq, &c).is_err());
    }

    #[test]
    fn transforms_invert_each_other() {
        let c = ctx(q(1, 2), q(1, 2));
        for a in compositions_up_to(4, 5) {
            let m = y4(a.parts());
            let there = exp_neg_half_laplacian(LaplacianKind::H, &m, &c).unwrap();
            assert_eq!(exp_pos_half_laplacian(LaplacianKind::H, &there, &c).unwrap(), m);
            assert_eq!(top_part(&there), m);
        }
    }

    #[test]
    fn laguerre_examples() {
        let a = q(3, 4);
        assert_eq!(laguerre(0, &a).unwrap(), SparsePoly::one(Frame::T));
        let t = SparsePoly::var(Frame::T, 0).unwrap();
        assert_eq!(laguerre(1, &a).unwrap(), &SparsePoly::constant(Frame::T, &a + int(1)) - &t);
        // L_2^a(t) = (a+1)(a+2)/2 - (a+2) t + t^2/2
        let l2 = SparsePoly::from_terms(
            Frame::T,
            [(vec![0], (&a + int(1)) * (&a + int(2)) / int(2)), (vec![1], -(&a + int(2))), (vec![2], q(1, 2))],
        )
        .unwrap();
        assert_eq!(laguerre(2, &a).unwrap(), l2);
        assert!(matches!(laguerre(3, &int(-2)), Err(Error::VanishingPochhammer(2))));
    }

    #[test]
    fn laguerre_orthogonality_at_integer_parameter() {
        // int_0^inf t^i e^{-t} t^a dt = (a+i)! for integer a
        let a = 2u32;
        let moment = |i: u32| ExactRational::from_integer(factorial(a + i));
        for n in 0..5 {
            for m in 0..5 {
                let prod = &laguerre(n, &int(a as i64)).unwrap() * &laguerre(m, &int(a as i64)).unwrap();
                let mut v = ExactRational::zero();
                for (mono, c) in prod.terms() {
                    v += c * moment(mono.exps()[0]);
                }
                let expect = if n == m {
                    ExactRational::from_integer(factorial(n + a)) / ExactRational::from_integer(factorial(n))
                } else {
                    ExactRational::zero()
                };
                assert_eq!(v, expect);
            }
        }
    }

    #[test]
    fn hermite_examples() {
        let (k, kp) = (q(1, 3), q(5, 2));
        let c = ctx(k.clone(), kp.clone());
        let base = &k * int(6) + &kp + int(2);
        let r = hermite_basis(&BasisLabel::new(vec![0, 0, 0], 0), &c).unwrap();
        assert_eq!((r.poly, r.energy), (SparsePoly::one(Frame::Y4), base.clone()));
        let r = hermite_basis(&BasisLabel::new(vec![1, 1, 1], 0), &c).unwrap();
        assert_eq!(r.poly, y4(&[0, 1, 1, 1]));
        assert_eq!(r.energy, &base + int(3));
        assert_eq!(conjugated_hamiltonian(&r.poly, &c).unwrap(), r.poly.scale(&r.energy));
        let r = hermite_basis(&BasisLabel::new(vec![0, 0, 0], 2), &c).unwrap();
        let expect = &y4(&[2, 0, 0, 0]) - &SparsePoly::constant(Frame::Y4, int(1) + &kp * int(2));
        assert_eq!(r.poly, expect);
        assert_eq!(r.energy, &base + int(2));
        assert_eq!(conjugated_hamiltonian(&expect, &c).unwrap(), expect.scale(&(&base + int(2))));
        let one = SparsePoly::one(Frame::Y4);
        assert_eq!(conjugated_hamiltonian(&one, &c).unwrap(), one.scale(&base));
        assert!(conjugated_hamiltonian(&SparsePoly::one(Frame::Y3), &c).is_err());
    }

    #[test]
    fn spectrum_and_degeneracy() {
        for (k, kp) in [(q(1, 2), q(1, 2)), (int(1), int(2))] {
            let c = ctx(k, kp);
            for d in 0..=5 {
                let mut energies = Vec::new();
                for a in compositions(4, d) {
                    let l = BasisLabel::new(a.parts()[1..].to_vec(), a.parts()[0]);
                    let r = hermite_basis(&l, &c).unwrap();
                    assert!(r.top_matches(&c).unwrap());
                    assert_eq!(conjugated_hamiltonian(&r.poly, &c).unwrap(), r.poly.scale(&r.energy), "{l:?}");
                    energies.push(r.energy);
                }
                assert!(energies.windows(2).all(|w| w[0] == w[1]));
            }
        }
    }

    #[test]
    fn invariant_eigenfunction_examples() {
        let kp = q(3, 2);
        let c = ctx(q(1, 4), kp.clone());
        let zero = Partition::new(vec![0, 0, 0]).unwrap();
        assert_eq!(cs_invariant_eigenfunction(&zero, 0, 0, &c).unwrap(), SparsePoly::one(Frame::Y4));
        let expect = &SparsePoly::constant(Frame::Y4, &kp + q(1, 2)) - &y4(&[2, 0, 0, 0]).scale(&q(1, 2));
        assert_eq!(cs_invariant_eigenfunction(&zero, 0, 1, &c).unwrap(), expect);
        assert_eq!(cs_invariant_eigenfunction(&zero, 1, 0, &c).unwrap(), y4(&[0, 1, 1, 1]));
    }

    #[test]
    fn invariant_eigenfunctions() {
        let c = ctx(q(2, 3), q(1, 2));
        for d in 0..=2 {
            for lambda in partitions(3, d) {
                for s in 0..=1 {
                    for n in 0..=2 {
                        let f = cs_invariant_eigenfunction(&lambda, s, n, &c).unwrap();
                        let e = cs_invariant_energy(&lambda, s, n, &c);
                        assert_eq!(conjugated_hamiltonian(&f, &c).unwrap(), f.scale(&e), "{lambda:?} {s} {n}");
                    }
                }
            }
        }
    }

    #[test]
    fn identities_hold() {
        for (k, kp) in [(q(1, 2), q(1, 2)), (int(3), int(2)), (q(5, 7), int(0))] {
            let c = ctx(k, kp);
            let report = operator_identities_check(&c, 4).unwrap();
            assert!(report.ok(), "{:?}", report.violations());
            assert_eq!(report.checks.len(), 7);
        }
    }

    #[test]
    fn d0_y0_eigen_examples() {
        let kp = q(4, 9);
        let c = ctx(int(1), kp.clone());
        let one = SparsePoly::one(Frame::Y0);
        assert_eq!(d0_y0_minus_sigma(&one, &c).unwrap(), one.scale(&(int(1) + &kp)));
        let y0 = SparsePoly::var(Frame::Y0, 0).unwrap();
        assert_eq!(d0_y0_minus_sigma(&y0, &c).unwrap(), y0.scale(&(int(2) + &kp)));
    }
}
