//! Reflection-group operators: type-A Dunkl and Cherednik operators on the
//! `x` frame, the D3 (type-B at `kappa' = 0`) operators on `y_1..y_3`, the
//! sign-change operator `D0` on `y_0`, the `S4 x Z2` operators `D'_i`,
//! the Laplacians, and the bilinear pairings `f(D) g |_{0}`.
//!
//! Every difference quotient is evaluated termwise with the geometric-sum
//! identity, never by polynomial division. Operator indices follow the
//! mathematical convention: `x_1..x_N`, `y_1..y_3`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use crate::combin::compositions;
use crate::error::{Error, Result};
use crate::exact::{int, rational, ExactRational, ParamContext};
use crate::poly::{coord_entry, Frame, Monomial, SparsePoly};

/// Every operator this module knows how to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    DunklA(usize),
    CherednikA(usize),
    DunklB(usize),
    CherednikB(usize),
    D0,
    DunklPrime(usize),
    LaplacianB,
    LaplacianH,
}

/// Terms of `(u^a v^b - u^b v^a) / (u - v)` as `(sign, p, q)` for `u^p v^q`.
fn divided_difference(a: u32, b: u32) -> impl Iterator<Item = (i64, u32, u32)> {
    let (hi, lo, sign) = if a >= b { (a, b, 1) } else { (b, a, -1) };
    (0..hi - lo).map(move |p| (sign, lo + p, lo + (hi - lo - 1 - p)))
}

/// Adds `coef * (f - f s)/(z_p - z_q)` for the transposition `s` of positions
/// `p`, `q` applied to the monomial `e`.
fn add_swap_quotient(out: &mut SparsePoly, e: &[u32], p: usize, q: usize, coef: &ExactRational) {
    for (sign, ep, eq) in divided_difference(e[p], e[q]) {
        let mut m = e.to_vec();
        m[p] = ep;
        m[q] = eq;
        out.add_term(Monomial(m), coef * int(sign));
    }
}

/// Adds `coef * (f - f t)/(z_p + z_q)` where `t: z_p -> -z_q, z_q -> -z_p`.
fn add_antiswap_quotient(out: &mut SparsePoly, e: &[u32], p: usize, q: usize, coef: &ExactRational) {
    // substitute v = -z_q: f - f t = (-1)^b (u^a v^b - u^b v^a), divide by (u - v)
    let b = e[q];
    for (sign, ep, eq) in divided_difference(e[p], b) {
        let s = if (b + eq) % 2 == 0 { sign } else { -sign };
        let mut m = e.to_vec();
        m[p] = ep;
        m[q] = eq;
        out.add_term(Monomial(m), coef * int(s));
    }
}

/// Adds `coef * (f - f sigma)/z_p` where `sigma` negates `z_p`.
fn add_sign_quotient(out: &mut SparsePoly, e: &[u32], p: usize, coef: &ExactRational) {
    if e[p] % 2 == 1 {
        let mut m = e.to_vec();
        m[p] -= 1;
        out.add_term(Monomial(m), coef * int(2));
    }
}

fn add_derivative(out: &mut SparsePoly, e: &[u32], p: usize, coef: &ExactRational) {
    if e[p] > 0 {
        let mut m = e.to_vec();
        m[p] -= 1;
        out.add_term(Monomial(m), coef * int(e[p] as i64));
    }
}

fn check_type_a(i: usize, f: &SparsePoly, ctx: &ParamContext) -> Result<usize> {
    let n = ctx.nvars();
    if f.frame() != Frame::X(n) {
        return Err(Error::FrameMismatch { expected: format!("x{n}"), found: f.frame() });
    }
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, max: n });
    }
    Ok(i - 1)
}

fn dunkl_a_raw(i0: usize, f: &SparsePoly, kappa: &ExactRational) -> SparsePoly {
    let n = f.nvars();
    let mut out = SparsePoly::zero(f.frame());
    for (m, c) in f.terms() {
        let e = m.exps();
        add_derivative(&mut out, e, i0, c);
        if kappa.is_zero() {
            continue;
        }
        let kc = kappa * c;
        for j in (0..n).filter(|&j| j != i0) {
            add_swap_quotient(&mut out, e, i0, j, &kc);
        }
    }
    out
}

/// Type-A Dunkl operator `D_i f = df/dx_i + kappa sum_{j != i} (f - f(i,j))/(x_i - x_j)`.
pub fn dunkl_a(i: usize, f: &SparsePoly, ctx: &ParamContext) -> Result<SparsePoly> {
    let i0 = check_type_a(i, f, ctx)?;
    Ok(dunkl_a_raw(i0, f, ctx.kappa()))
}

/// Cherednik operator `U_i f = D_i(x_i f) - kappa sum_{j<i} (j,i) f`.
pub fn cherednik_a(i: usize, f: &SparsePoly, ctx: &ParamContext) -> Result<SparsePoly> {
    let i0 = check_type_a(i, f, ctx)?;
    let shifted = f.map_monomials(f.frame(), |e, c| {
        let mut m = e.to_vec();
        m[i0] += 1;
        Some((m, c.clone()))
    });
    let mut out = dunkl_a_raw(i0, &shifted, ctx.kappa());
    for j in 0..i0 {
        for (m, c) in f.swap_positions(j, i0).terms() {
            out.add_term(m.clone(), -(ctx.kappa() * c));
        }
    }
    Ok(out)
}

fn b_position(i: usize, f: &SparsePoly) -> Result<usize> {
    if !(1..=3).contains(&i) {
        return Err(Error::IndexOutOfRange { index: i, max: 3 });
    }
    f.frame().yb_position(i).ok_or(Error::FrameMismatch { expected: "y3 or y4".into(), found: f.frame() })
}

fn dunkl_b_raw(i: usize, f: &SparsePoly, kappa: &ExactRational) -> SparsePoly {
    let frame = f.frame();
    let p = frame.yb_position(i).unwrap();
    let mut out = SparsePoly::zero(frame);
    for (m, c) in f.terms() {
        let e = m.exps();
        add_derivative(&mut out, e, p, c);
        if kappa.is_zero() {
            continue;
        }
        let kc = kappa * c;
        for j in (1..=3).filter(|&j| j != i) {
            let q = frame.yb_position(j).unwrap();
            add_swap_quotient(&mut out, e, p, q, &kc);
            add_antiswap_quotient(&mut out, e, p, q, &kc);
        }
    }
    out
}

/// D3 Dunkl operator `D^B_i` on `y_1..y_3` (acts on `y3` or `y4`, leaving `y_0` alone).
pub fn dunkl_b(i: usize, f: &SparsePoly, ctx: &ParamContext) -> Result<SparsePoly> {
    b_position(i, f)?;
    Ok(dunkl_b_raw(i, f, ctx.kappa()))
}

/// `U^B_i f = D^B_i(y_i f) - kappa sum_{j<i} (sigma_ij + tau_ij) f`.
pub fn cherednik_b(i: usize, f: &SparsePoly, ctx: &ParamContext) -> Result<SparsePoly> {
    let p = b_position(i, f)?;
    let frame = f.frame();
    let shifted = f.map_monomials(frame, |e, c| {
        let mut m = e.to_vec();
        m[p] += 1;
        Some((m, c.clone()))
    });
    let mut out = dunkl_b_raw(i, &shifted, ctx.kappa());
    for j in 1..i {
        let q = frame.yb_position(j).unwrap();
        for (m, c) in f.terms() {
            let e = m.exps();
            let kc = ctx.kappa() * c;
            let mut s = e.to_vec();
            s.swap(p, q);
            out.add_term(Monomial(s.clone()), -kc.clone());
            // tau_ij: y_i -> -y_j, y_j -> -y_i
            let t = if (e[p] + e[q]) % 2 == 0 { -kc } else { kc };
            out.add_term(Monomial(s), t);
        }
    }
    Ok(out)
}

/// `D0 f = df/dy0 + (kappa'/y0)(f - f sigma0)` on `y0` or `y4`.
pub fn dunkl_d0(f: &SparsePoly, ctx: &ParamContext) -> Result<SparsePoly> {
    let p = f
        .frame()
        .y0_position()
        .ok_or(Error::FrameMismatch { expected: "y0 or y4".into(), found: f.frame() })?;
    let mut out = SparsePoly::zero(f.frame());
    for (m, c) in f.terms() {
        add_derivative(&mut out, m.exps(), p, c);
        add_sign_quotient(&mut out, m.exps(), p, &(ctx.kappa_prime() * c));
    }
    Ok(out)
}

/// `(f - f sigma0) / y0` for an `x4` polynomial, returned in `x4`.
fn sigma0_quotient_x(f: &SparsePoly) -> Result<SparsePoly> {
    let y = f.to_y()?;
    let mut q = SparsePoly::zero(Frame::Y4);
    for (m, c) in y.terms() {
        add_sign_quotient(&mut q, m.exps(), 0, c);
    }
    q.to_x()
}

/// `D'_i f = D_i f + (kappa' / (2 <x, v0>)) (f - f sigma0)` on `x4`.
pub fn dunkl_prime(i: usize, f: &SparsePoly, ctx: &ParamContext) -> Result<SparsePoly> {
    let ctx4 = ctx.with_nvars(4)?;
    let i0 = check_type_a(i, f, &ctx4)?;
    let mut out = dunkl_a_raw(i0, f, ctx.kappa());
    if !ctx.kappa_prime().is_zero() {
        let half = ctx.kappa_prime() * rational(1, 2).unwrap();
        out = &out + &sigma0_quotient_x(f)?.scale(&half);
    }
    Ok(out)
}

/// `Delta_B = sum (D^B_i)^2`, `D0^2`, or `Delta_h`.
///
/// `LaplacianH` accepts `y4` (as `Delta_B + D0^2`) or `x4` (as `sum (D'_i)^2`).
pub fn laplacian(kind: OperatorKind, f: &SparsePoly, ctx: &ParamContext) -> Result<SparsePoly> {
    match kind {
        OperatorKind::LaplacianB => {
            b_position(1, f)?;
            let mut out = SparsePoly::zero(f.frame());
            for i in 1..=3 {
                out = &out + &dunkl_b_raw(i, &dunkl_b_raw(i, f, ctx.kappa()), ctx.kappa());
            }
            Ok(out)
        }
        OperatorKind::D0 => dunkl_d0(&dunkl_d0(f, ctx)?, ctx),
        OperatorKind::LaplacianH => match f.frame() {
            Frame::Y4 => Ok(&laplacian(OperatorKind::LaplacianB, f, ctx)?
                + &laplacian(OperatorKind::D0, f, ctx)?),
            Frame::X(4) => {
                let mut out = SparsePoly::zero(f.frame());
                for i in 1..=4 {
                    out = &out + &dunkl_prime(i, &dunkl_prime(i, f, ctx)?, ctx)?;
                }
                Ok(out)
            }
            other => Err(Error::FrameMismatch { expected: "y4 or x4".into(), found: other }),
        },
        other => Err(Error::Parse(format!("{other:?} is not a Laplacian"))),
    }
}

/// Applies any operator by kind.
pub fn apply(kind: OperatorKind, f: &SparsePoly, ctx: &ParamContext) -> Result<SparsePoly> {
    match kind {
        OperatorKind::DunklA(i) => dunkl_a(i, f, ctx),
        OperatorKind::CherednikA(i) => cherednik_a(i, f, ctx),
        OperatorKind::DunklB(i) => dunkl_b(i, f, ctx),
        OperatorKind::CherednikB(i) => cherednik_b(i, f, ctx),
        OperatorKind::D0 => dunkl_d0(f, ctx),
        OperatorKind::DunklPrime(i) => dunkl_prime(i, f, ctx),
        OperatorKind::LaplacianB | OperatorKind::LaplacianH => laplacian(kind, f, ctx),
    }
}

/// A commuting family of Dunkl operators, one per storage position of a frame.
pub trait DunklFamily: Send + Sync {
    fn frame(&self) -> Frame;
    fn apply_at(&self, pos: usize, f: &SparsePoly) -> SparsePoly;
}

/// Type-A operators `D_1..D_N` on `x{N}`.
pub struct TypeA(pub ParamContext);
/// D3 operators `D^B_1..D^B_3` on `y3`.
pub struct TypeB(pub ParamContext);
/// `D0, D^B_1, D^B_2, D^B_3` on `y4`.
pub struct ExtendedY(pub ParamContext);
/// `D'_1..D'_4` on `x4`.
pub struct ExtendedX(pub ParamContext);
/// `D0` alone on `y0`.
pub struct SignY0(pub ParamContext);

impl DunklFamily for TypeA {
    fn frame(&self) -> Frame {
        Frame::X(self.0.nvars())
    }
    fn apply_at(&self, pos: usize, f: &SparsePoly) -> SparsePoly {
        dunkl_a_raw(pos, f, self.0.kappa())
    }
}

impl DunklFamily for TypeB {
    fn frame(&self) -> Frame {
        Frame::Y3
    }
    fn apply_at(&self, pos: usize, f: &SparsePoly) -> SparsePoly {
        dunkl_b_raw(pos + 1, f, self.0.kappa())
    }
}

impl DunklFamily for ExtendedY {
    fn frame(&self) -> Frame {
        Frame::Y4
    }
    fn apply_at(&self, pos: usize, f: &SparsePoly) -> SparsePoly {
        if pos == 0 {
            dunkl_d0(f, &self.0).expect("y4 frame")
        } else {
            dunkl_b_raw(pos, f, self.0.kappa())
        }
    }
}

impl DunklFamily for ExtendedX {
    fn frame(&self) -> Frame {
        Frame::X(4)
    }
    fn apply_at(&self, pos: usize, f: &SparsePoly) -> SparsePoly {
        dunkl_prime(pos + 1, f, &self.0).expect("x4 frame")
    }
}

impl DunklFamily for SignY0 {
    fn frame(&self) -> Frame {
        Frame::Y0
    }
    fn apply_at(&self, _pos: usize, f: &SparsePoly) -> SparsePoly {
        dunkl_d0(f, &self.0).expect("y0 frame")
    }
}

/// `f(D) g` for a single monomial `f = z^beta`, applied right to left.
pub fn apply_monomial_operator<F: DunklFamily + ?Sized>(
    family: &F,
    beta: &[u32],
    g: &SparsePoly,
) -> SparsePoly {
    let mut cur = g.clone();
    for (pos, &b) in beta.iter().enumerate() {
        for _ in 0..b {
            cur = family.apply_at(pos, &cur);
        }
    }
    cur
}

/// `f(D) g |_{0}` by direct operator application. Slow; used as a
/// cross-check of the Gram-table route.
pub fn pairing_direct<F: DunklFamily + ?Sized>(
    family: &F,
    f: &SparsePoly,
    g: &SparsePoly,
) -> Result<ExactRational> {
    for p in [f, g] {
        if p.frame() != family.frame() {
            return Err(Error::FrameMismatch { expected: family.frame().to_string(), found: p.frame() });
        }
    }
    let mut acc = ExactRational::zero();
    for (m, c) in f.terms() {
        let gd = g.homogeneous_part(m.degree());
        acc += c * apply_monomial_operator(family, m.exps(), &gd).constant_term();
    }
    Ok(acc)
}

/// Monomial Gram matrix `<z^beta, z^gamma>` of one degree.
struct Gram {
    index: HashMap<Vec<u32>, usize>,
    mat: Vec<Vec<ExactRational>>,
}

/// The pairing `<f, g> = f(D) g |_{z=0}` for a family of Dunkl operators,
/// with per-degree monomial Gram matrices built on demand and cached.
///
/// Degree `d` is built from degree `d-1` by peeling one operator off the
/// left factor: `<z^beta, z^gamma> = <z^(beta - e_i), D_i z^gamma>`.
pub struct Pairing<F: DunklFamily> {
    family: F,
    grams: Mutex<Vec<Arc<Gram>>>,
}

impl<F: DunklFamily> Pairing<F> {
    pub fn new(family: F) -> Self {
        Self { family, grams: Mutex::new(Vec::new()) }
    }

    pub fn family(&self) -> &F {
        &self.family
    }

    fn gram(&self, d: u32) -> Arc<Gram> {
        let mut grams = self.grams.lock().unwrap();
        while grams.len() <= d as usize {
            let deg = grams.len() as u32;
            let n = self.family.frame().nvars();
            let monos = compositions(n, deg);
            let index: HashMap<Vec<u32>, usize> =
                monos.iter().enumerate().map(|(k, a)| (a.parts().to_vec(), k)).collect();
            let mat = if deg == 0 {
                vec![vec![int(1)]]
            } else {
                let prev = grams.last().unwrap().clone();
                let frame = self.family.frame();
                // images[pos][gamma] = D_pos z^gamma
                let images: Vec<Vec<SparsePoly>> = (0..n)
                    .map(|pos| {
                        monos
                            .iter()
                            .map(|g| {
                                let z = SparsePoly::monomial(frame, g.parts().to_vec(), int(1));
                                self.family.apply_at(pos, &z)
                            })
                            .collect()
                    })
                    .collect();
                monos
                    .iter()
                    .map(|beta| {
                        let b = beta.parts();
                        let pos = b.iter().position(|&x| x > 0).unwrap();
                        let mut rest = b.to_vec();
                        rest[pos] -= 1;
                        let r = prev.index[&rest];
                        (0..monos.len())
                            .map(|gk| {
                                let mut acc = ExactRational::zero();
                                for (m, c) in images[pos][gk].terms() {
                                    acc += c * &prev.mat[r][prev.index[m.exps()]];
                                }
                                acc
                            })
                            .collect()
                    })
                    .collect()
            };
            grams.push(Arc::new(Gram { index, mat }));
        }
        grams[d as usize].clone()
    }

    /// `<z^beta, z^gamma>`.
    pub fn monomial_pairing(&self, beta: &[u32], gamma: &[u32]) -> ExactRational {
        let d: u32 = beta.iter().sum();
        if gamma.iter().sum::<u32>() != d {
            return ExactRational::zero();
        }
        let g = self.gram(d);
        g.mat[g.index[beta]][g.index[gamma]].clone()
    }

    pub fn pair(&self, f: &SparsePoly, g: &SparsePoly) -> Result<ExactRational> {
        let frame = self.family.frame();
        for p in [f, g] {
            if p.frame() != frame {
                return Err(Error::FrameMismatch { expected: frame.to_string(), found: p.frame() });
            }
        }
        let mut acc = ExactRational::zero();
        let dmax = match (f.degree(), g.degree()) {
            (Some(a), Some(b)) => a.min(b),
            _ => return Ok(acc),
        };
        for d in 0..=dmax {
            let fd: Vec<_> = f.terms().filter(|(m, _)| m.degree() == d).collect();
            if fd.is_empty() {
                continue;
            }
            let gd: Vec<_> = g.terms().filter(|(m, _)| m.degree() == d).collect();
            if gd.is_empty() {
                continue;
            }
            let gram = self.gram(d);
            for (mg, cg) in &gd {
                let col = gram.index[mg.exps()];
                let mut inner = ExactRational::zero();
                for (mf, cf) in &fd {
                    inner += *cf * &gram.mat[gram.index[mf.exps()]][col];
                }
                acc += inner * *cg;
            }
        }
        Ok(acc)
    }
}

/// `<f, g>_kappa`: type-A operators on `x{N}` (N from the context), D3
/// operators on `y3`.
pub fn pairing_kappa(f: &SparsePoly, g: &SparsePoly, ctx: &ParamContext) -> Result<ExactRational> {
    match f.frame() {
        Frame::X(n) => Pairing::new(TypeA(ctx.with_nvars(n)?)).pair(f, g),
        Frame::Y3 => Pairing::new(TypeB(ctx.clone())).pair(f, g),
        other => Err(Error::FrameMismatch { expected: "x{N} or y3".into(), found: other }),
    }
}

/// `<f, g>_{kappa, kappa'} = f(D'_1..D'_4) g |_{x=0}`; on `y4` this is realized
/// with `D0` and `D^B_i`, on `y0` with `D0` alone.
pub fn pairing_extended(f: &SparsePoly, g: &SparsePoly, ctx: &ParamContext) -> Result<ExactRational> {
    match f.frame() {
        Frame::Y4 => Pairing::new(ExtendedY(ctx.clone())).pair(f, g),
        Frame::X(4) => Pairing::new(ExtendedX(ctx.clone())).pair(f, g),
        Frame::Y0 => Pairing::new(SignY0(ctx.clone())).pair(f, g),
        other => Err(Error::FrameMismatch { expected: "y4, x4 or y0".into(), found: other }),
    }
}

/// Entry `(v_i)_j`, re-exported for x-frame constructions.
pub fn direction(i: usize, j: usize) -> ExactRational {
    coord_entry(i, j)
}
