//! Sparse multivariate polynomials over exact rationals, tagged with a
//! coordinate frame.
//!
//! Frames:
//! - `x{N}`: the ambient coordinates `x_1..x_N` (positions `0..N-1`);
//! - `y4`: the rotated coordinates `y_0..y_3`, position `k` holds `y_k`;
//! - `y3`: `y_1..y_3` only, position `k` holds `y_{k+1}`;
//! - `y0`: the single coordinate `y_0`;
//! - `t`: an auxiliary univariate variable (Laguerre polynomials).
//!
//! Arithmetic between different frames is an error; conversions are explicit.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::combin::{canonical_cmp, Permutation};
use crate::error::{Error, Result};
use crate::exact::{format_rational, int, parse_rational, rational, ExactRational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Frame {
    X(usize),
    Y4,
    Y3,
    Y0,
    T,
}

impl Frame {
    pub fn nvars(self) -> usize {
        match self {
            Frame::X(n) => n,
            Frame::Y4 => 4,
            Frame::Y3 => 3,
            Frame::Y0 | Frame::T => 1,
        }
    }

    /// Storage position of the variable with mathematical index `i`
    /// (`x_i` is 1-based, `y_k` uses its own subscript).
    pub fn position(self, i: usize) -> Result<usize> {
        let (lo, hi) = match self {
            Frame::X(n) => (1, n),
            Frame::Y4 => (0, 3),
            Frame::Y3 => (1, 3),
            Frame::Y0 | Frame::T => (0, 0),
        };
        if i < lo || i > hi {
            return Err(Error::IndexOutOfRange { index: i, max: hi });
        }
        Ok(i - lo)
    }

    /// Position of `y_0`, if this frame has one.
    pub fn y0_position(self) -> Option<usize> {
        match self {
            Frame::Y4 | Frame::Y0 => Some(0),
            _ => None,
        }
    }

    /// Position of `y_i`, `i = 1..=3`, if this frame has it.
    pub fn yb_position(self, i: usize) -> Option<usize> {
        if !(1..=3).contains(&i) {
            return None;
        }
        match self {
            Frame::Y4 => Some(i),
            Frame::Y3 => Some(i - 1),
            _ => None,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "y4" => Ok(Frame::Y4),
            "y3" => Ok(Frame::Y3),
            "y0" => Ok(Frame::Y0),
            "t" => Ok(Frame::T),
            _ => s
                .strip_prefix('x')
                .and_then(|n| n.parse::<usize>().ok())
                .filter(|&n| n >= 1)
                .map(Frame::X)
                .ok_or_else(|| Error::Parse(format!("unknown frame `{s}`"))),
        }
    }

    fn var_name(self, pos: usize) -> String {
        match self {
            Frame::X(_) => format!("x{}", pos + 1),
            Frame::Y4 => format!("y{pos}"),
            Frame::Y3 => format!("y{}", pos + 1),
            Frame::Y0 => "y0".into(),
            Frame::T => "t".into(),
        }
    }
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Frame::X(n) => write!(f, "x{n}"),
            Frame::Y4 => write!(f, "y4"),
            Frame::Y3 => write!(f, "y3"),
            Frame::Y0 => write!(f, "y0"),
            Frame::T => write!(f, "t"),
        }
    }
}

/// Exponent vector ordered by [`canonical_cmp`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        canonical_cmp(&self.0, &other.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePoly {
    frame: Frame,
    terms: BTreeMap<Monomial, ExactRational>,
}

impl SparsePoly {
    pub fn zero(frame: Frame) -> Self {
        Self { frame, terms: BTreeMap::new() }
    }

    pub fn constant(frame: Frame, c: ExactRational) -> Self {
        Self::monomial(frame, vec![0; frame.nvars()], c)
    }

    pub fn one(frame: Frame) -> Self {
        Self::constant(frame, ExactRational::one())
    }

    /// `c * z^exps`; panics if `exps.len()` differs from the frame's variable count.
    pub fn monomial(frame: Frame, exps: Vec<u32>, c: ExactRational) -> Self {
        assert_eq!(exps.len(), frame.nvars(), "exponent length does not match frame {frame}");
        let mut p = Self::zero(frame);
        p.add_term(Monomial(exps), c);
        p
    }

    /// The coordinate with mathematical index `i` (see [`Frame::position`]).
    pub fn var(frame: Frame, i: usize) -> Result<Self> {
        let pos = frame.position(i)?;
        let mut e = vec![0; frame.nvars()];
        e[pos] = 1;
        Ok(Self::monomial(frame, e, ExactRational::one()))
    }

    pub fn from_terms<I>(frame: Frame, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, ExactRational)>,
    {
        let mut p = Self::zero(frame);
        for (e, c) in terms {
            if e.len() != frame.nvars() {
                return Err(Error::LengthMismatch { expected: frame.nvars(), found: e.len() });
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn nvars(&self) -> usize {
        self.frame.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &ExactRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> ExactRational {
        self.terms.get(&Monomial(exps.to_vec())).cloned().unwrap_or_else(ExactRational::zero)
    }

    /// Largest term in the canonical order.
    pub fn leading(&self) -> Option<(&Monomial, &ExactRational)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Value at the origin.
    pub fn constant_term(&self) -> ExactRational {
        self.coeff(&vec![0; self.nvars()])
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: ExactRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.frame != other.frame {
            return Err(Error::FrameMismatch {
                expected: self.frame.to_string(),
                found: other.frame,
            });
        }
        Ok(())
    }

    pub(crate) fn expect_frame(&self, allowed: &[Frame], what: &str) -> Result<()> {
        if allowed.contains(&self.frame) {
            Ok(())
        } else {
            Err(Error::FrameMismatch { expected: what.to_string(), found: self.frame })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(self.frame);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let e: Vec<u32> = m1.0.iter().zip(&m2.0).map(|(a, b)| a + b).collect();
                out.add_term(Monomial(e), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.frame);
        }
        Self {
            frame: self.frame,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.frame);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Applies `f` to every exponent vector, accumulating coefficients.
    pub fn map_monomials<F>(&self, frame: Frame, mut f: F) -> Self
    where
        F: FnMut(&[u32], &ExactRational) -> Option<(Vec<u32>, ExactRational)>,
    {
        let mut out = Self::zero(frame);
        for (m, c) in &self.terms {
            if let Some((e, v)) = f(&m.0, c) {
                out.add_term(Monomial(e), v);
            }
        }
        out
    }

    pub fn evaluate(&self, point: &[ExactRational]) -> Result<ExactRational> {
        if point.len() != self.nvars() {
            return Err(Error::LengthMismatch { expected: self.nvars(), found: point.len() });
        }
        let mut acc = ExactRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Homogeneous component of degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Self {
            frame: self.frame,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Partial derivative with respect to the variable stored at `pos`.
    pub fn derivative(&self, pos: usize) -> Self {
        self.map_monomials(self.frame, |e, c| {
            if e[pos] == 0 {
                return None;
            }
            let mut e2 = e.to_vec();
            e2[pos] -= 1;
            Some((e2, c * int(e[pos] as i64)))
        })
    }

    /// Euler operator `sum_i z_i d/dz_i`: each term scaled by its degree.
    pub fn euler(&self) -> Self {
        self.map_monomials(self.frame, |e, c| {
            let d: u32 = e.iter().sum();
            Some((e.to_vec(), c * int(d as i64)))
        })
    }

    /// `w f`, acting on monomials by `z^alpha -> z^{w alpha}`.
    pub fn apply_permutation(&self, w: &Permutation) -> Result<Self> {
        if w.len() != self.nvars() {
            return Err(Error::LengthMismatch { expected: self.nvars(), found: w.len() });
        }
        Ok(self.map_monomials(self.frame, |e, c| Some((w.act_on(e), c.clone()))))
    }

    /// Swaps the variables stored at positions `p` and `q`.
    pub(crate) fn swap_positions(&self, p: usize, q: usize) -> Self {
        self.map_monomials(self.frame, |e, c| {
            let mut e2 = e.to_vec();
            e2.swap(p, q);
            Some((e2, c.clone()))
        })
    }

    /// Negates the variable stored at `pos`.
    pub(crate) fn negate_position(&self, pos: usize) -> Self {
        self.map_monomials(self.frame, |e, c| {
            Some((e.to_vec(), if e[pos] % 2 == 1 { -c.clone() } else { c.clone() }))
        })
    }

    /// Sign change `sigma_i`. In the y frames this negates `y_i`; for
    /// `sigma_0` on `x4` it is the reflection `x -> x - (sum x_j) v0`.
    pub fn sign_change(&self, i: usize) -> Result<Self> {
        match (self.frame, i) {
            (Frame::X(4), 0) => Ok(self.substitute_linear(Frame::X(4), &sigma0_x_matrix())),
            (Frame::Y4 | Frame::Y0, 0) => Ok(self.negate_position(0)),
            (Frame::Y4 | Frame::Y3, 1..=3) => Ok(self.negate_position(self.frame.position(i)?)),
            _ => Err(Error::FrameMismatch {
                expected: format!("frame carrying sigma_{i}"),
                found: self.frame,
            }),
        }
    }

    /// Substitutes `z_j = sum_k rows[j][k] u_k` for every old variable `z_j`.
    pub fn substitute_linear(&self, target: Frame, rows: &[Vec<ExactRational>]) -> Self {
        assert_eq!(rows.len(), self.nvars());
        let forms: Vec<SparsePoly> = rows
            .iter()
            .map(|row| {
                assert_eq!(row.len(), target.nvars());
                let mut p = SparsePoly::zero(target);
                for (k, c) in row.iter().enumerate() {
                    let mut e = vec![0; target.nvars()];
                    e[k] = 1;
                    p.add_term(Monomial(e), c.clone());
                }
                p
            })
            .collect();
        let mut powers: Vec<Vec<SparsePoly>> = forms.iter().map(|f| vec![SparsePoly::one(target), f.clone()]).collect();
        let mut out = SparsePoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = SparsePoly::constant(target, c.clone());
            for (j, &e) in m.0.iter().enumerate() {
                while powers[j].len() <= e as usize {
                    let next = powers[j].last().unwrap() * &forms[j];
                    powers[j].push(next);
                }
                if e > 0 {
                    t = &t * &powers[j][e as usize];
                }
            }
            for (m2, c2) in t.terms {
                out.add_term(m2, c2);
            }
        }
        out
    }

    /// Rewrites an `x4` polynomial in the `y` coordinates.
    pub fn to_y(&self) -> Result<Self> {
        self.expect_frame(&[Frame::X(4)], "x4")?;
        // x_j = sum_k (v_k)_j y_k
        let rows: Vec<Vec<ExactRational>> =
            (0..4).map(|j| (0..4).map(|k| coord_entry(k, j)).collect()).collect();
        Ok(self.substitute_linear(Frame::Y4, &rows))
    }

    /// Rewrites a `y4` polynomial in the `x` coordinates.
    pub fn to_x(&self) -> Result<Self> {
        self.expect_frame(&[Frame::Y4], "y4")?;
        // y_k = sum_j (v_k)_j x_j
        let rows: Vec<Vec<ExactRational>> =
            (0..4).map(|k| (0..4).map(|j| coord_entry(k, j)).collect()).collect();
        Ok(self.substitute_linear(Frame::X(4), &rows))
    }

    /// `f(z) -> f(y^2)`: doubles every exponent of a 3-variable polynomial.
    pub fn substitute_squares(&self) -> Result<Self> {
        if self.nvars() != 3 {
            return Err(Error::LengthMismatch { expected: 3, found: self.nvars() });
        }
        Ok(self.map_monomials(Frame::Y3, |e, c| {
            Some((e.iter().map(|a| 2 * a).collect(), c.clone()))
        }))
    }

    /// Embeds a `y3` or `y0` polynomial into `y4`.
    pub fn embed_y4(&self) -> Result<Self> {
        match self.frame {
            Frame::Y4 => Ok(self.clone()),
            Frame::Y3 => Ok(self.map_monomials(Frame::Y4, |e, c| {
                Some((vec![0, e[0], e[1], e[2]], c.clone()))
            })),
            Frame::Y0 => Ok(self.map_monomials(Frame::Y4, |e, c| {
                Some((vec![e[0], 0, 0, 0], c.clone()))
            })),
            other => Err(Error::FrameMismatch { expected: "y3 or y0".into(), found: other }),
        }
    }

    /// Reinterprets a univariate polynomial in another univariate frame.
    pub fn retag_univariate(&self, frame: Frame) -> Result<Self> {
        if self.nvars() != 1 || frame.nvars() != 1 {
            return Err(Error::FrameMismatch { expected: "univariate".into(), found: self.frame });
        }
        Ok(Self { frame, terms: self.terms.clone() })
    }

    /// Composes a univariate polynomial with `g`: returns `self(g)`.
    pub fn compose_univariate(&self, g: &SparsePoly) -> Result<Self> {
        if self.nvars() != 1 {
            return Err(Error::LengthMismatch { expected: 1, found: self.nvars() });
        }
        let deg = self.degree().unwrap_or(0);
        let mut acc = SparsePoly::zero(g.frame);
        for d in (0..=deg).rev() {
            acc = &acc * g;
            acc.add_term(Monomial(vec![0; g.nvars()]), self.coeff(&[d]));
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PolyJson::from(self)).expect("polynomial json")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let pj: PolyJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        pj.try_into()
    }
}

/// Entry `(v_k)_j` of the orthonormal vectors `v_0..v_3`.
pub fn coord_entry(k: usize, j: usize) -> ExactRational {
    const SIGNS: [[i64; 4]; 4] = [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]];
    rational(SIGNS[k][j], 2).unwrap()
}

/// The 4x4 matrix whose rows are `v_0..v_3`.
pub fn coord_matrix() -> Vec<Vec<ExactRational>> {
    (0..4).map(|k| (0..4).map(|j| coord_entry(k, j)).collect()).collect()
}

fn sigma0_x_matrix() -> Vec<Vec<ExactRational>> {
    // x_j -> x_j - (1/2) sum_i x_i
    (0..4)
        .map(|j| {
            (0..4)
                .map(|i| if i == j { rational(1, 2).unwrap() } else { rational(-1, 2).unwrap() })
                .collect()
        })
        .collect()
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let a = c.abs();
            let is_const = m.degree() == 0;
            if !a.is_one() || is_const {
                write!(f, "{}", format_rational(&a))?;
                if !is_const {
                    write!(f, "*")?;
                }
            }
            let mut first = true;
            for (pos, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{}", self.frame.var_name(pos))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&SparsePoly> for &SparsePoly {
            type Output = SparsePoly;
            /// Panics on a frame mismatch; use the `checked_*` form to recover.
            fn $m(self, rhs: &SparsePoly) -> SparsePoly {
                self.$checked(rhs).expect("frame mismatch in polynomial arithmetic")
            }
        }
        impl $tr<SparsePoly> for SparsePoly {
            type Output = SparsePoly;
            fn $m(self, rhs: SparsePoly) -> SparsePoly {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        self.scale(&-ExactRational::one())
    }
}

impl Neg for SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        -&self
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Vec<u32>,
    coef: String,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    nvars: usize,
    frame: String,
    terms: Vec<TermJson>,
}

impl From<&SparsePoly> for PolyJson {
    fn from(p: &SparsePoly) -> Self {
        PolyJson {
            nvars: p.nvars(),
            frame: p.frame.to_string(),
            terms: p
                .terms
                .iter()
                .map(|(m, c)| TermJson { exp: m.0.clone(), coef: format_rational(c) })
                .collect(),
        }
    }
}

impl TryFrom<PolyJson> for SparsePoly {
    type Error = Error;
    fn try_from(pj: PolyJson) -> Result<Self> {
        let frame = Frame::parse(&pj.frame)?;
        if frame.nvars() != pj.nvars {
            return Err(Error::LengthMismatch { expected: frame.nvars(), found: pj.nvars });
        }
        let mut terms = Vec::with_capacity(pj.terms.len());
        for t in pj.terms {
            terms.push((t.exp, parse_rational(&t.coef)?));
        }
        SparsePoly::from_terms(frame, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(p: i64, r: i64) -> ExactRational {
        rational(p, r).unwrap()
    }

    fn x(n: usize, i: usize) -> SparsePoly {
        SparsePoly::var(Frame::X(n), i).unwrap()
    }

    #[test]
    fn ring_examples() {
        let f = &x(3, 1) + &x(3, 2).scale(&q(3, 4));
        assert_eq!(&f + &SparsePoly::zero(Frame::X(3)), f);
        let prod = &(&x(3, 1) - &x(3, 2)) * &(&x(3, 1) + &x(3, 2));
        assert_eq!(prod, &x(3, 1).pow(2) - &x(3, 2).pow(2));
        assert_eq!(x(3, 1).scale(&int(2)).scale(&q(1, 2)), x(3, 1));
        assert!((&f - &f).is_zero());
        let y = SparsePoly::var(Frame::Y3, 1).unwrap();
        assert!(matches!(f.checked_add(&y), Err(Error::FrameMismatch { .. })));
        assert!(x(3, 1).checked_mul(&x(4, 1)).is_err());
    }

    #[test]
    fn evaluation() {
        let five = SparsePoly::constant(Frame::X(2), int(5));
        assert_eq!(five.evaluate(&[q(1, 3), int(9)]).unwrap(), int(5));
        let p = &x(2, 1) * &x(2, 2);
        assert_eq!(p.evaluate(&[int(2), int(3)]).unwrap(), int(6));
        assert!(p.evaluate(&[int(1)]).is_err());
    }

    #[test]
    fn permutations() {
        let f = &x(3, 1).pow(2) + &x(3, 2).scale(&q(1, 3));
        assert_eq!(f.apply_permutation(&Permutation::identity(3)).unwrap(), f);
        let t = Permutation::transposition(3, 1, 2).unwrap();
        assert_eq!(x(3, 1).apply_permutation(&t).unwrap(), x(3, 2));
        let w = Permutation::from_one_line(&[2, 3, 1]).unwrap();
        let m = SparsePoly::monomial(Frame::X(3), vec![3, 1, 0], int(1));
        assert_eq!(m.apply_permutation(&w).unwrap().coeff(&[0, 3, 1]), int(1));
    }

    #[test]
    fn permutation_group_action() {
        for n in [3usize, 4] {
            let gens = Permutation::generators(n);
            let all = Permutation::all(n);
            for d in 0..=3 {
                for a in crate::combin::compositions(n, d) {
                    let m = SparsePoly::monomial(Frame::X(n), a.parts().to_vec(), int(1));
                    for g in &gens {
                        for w in &all {
                            let lhs = m.apply_permutation(&g.compose(w)).unwrap();
                            let rhs = m.apply_permutation(w).unwrap().apply_permutation(g).unwrap();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn sign_changes() {
        let y = |i| SparsePoly::var(Frame::Y3, i).unwrap();
        let y1y2 = &y(1) * &y(2);
        assert_eq!(y1y2.sign_change(1).unwrap(), -&y1y2);
        let y0 = SparsePoly::var(Frame::Y4, 0).unwrap();
        assert_eq!(y0.pow(2).sign_change(0).unwrap(), y0.pow(2));
        let s: SparsePoly = (1..=4).map(|i| x(4, i)).fold(SparsePoly::zero(Frame::X(4)), |a, b| a + b);
        let expect = &x(4, 1) - &s.scale(&q(1, 2));
        assert_eq!(x(4, 1).sign_change(0).unwrap(), expect);
        assert!(y(1).sign_change(0).is_err());
        assert!(x(3, 1).sign_change(1).is_err());
        // sigma_0 in x agrees with y0 -> -y0 in y
        let f = &x(4, 1).pow(2) * &x(4, 3) + x(4, 2);
        assert_eq!(f.sign_change(0).unwrap().to_y().unwrap(), f.to_y().unwrap().sign_change(0).unwrap());
    }

    #[test]
    fn coordinate_change() {
        let yv = |k| SparsePoly::var(Frame::Y4, k).unwrap();
        let s = (1..=4).map(|i| x(4, i)).fold(SparsePoly::zero(Frame::X(4)), |a, b| a + b);
        assert_eq!(s.to_y().unwrap(), yv(0).scale(&int(2)));
        let norm2 = (1..=4).map(|i| x(4, i).pow(2)).fold(SparsePoly::zero(Frame::X(4)), |a, b| a + b);
        let ynorm2 = (0..4).map(|k| yv(k).pow(2)).fold(SparsePoly::zero(Frame::Y4), |a, b| a + b);
        assert_eq!(norm2.to_y().unwrap(), ynorm2);
        // point x = (2,0,0,0) corresponds to y = (1,1,1,1)
        let f = &(&yv(1) * &yv(2).pow(2)) + &yv(0).pow(3).scale(&q(2, 5));
        let fx = f.to_x().unwrap();
        assert_eq!(
            fx.evaluate(&[int(2), int(0), int(0), int(0)]).unwrap(),
            f.evaluate(&[int(1), int(1), int(1), int(1)]).unwrap()
        );
        assert_eq!(fx.to_y().unwrap(), f);
        // orthogonality of v0..v3
        let m = coord_matrix();
        for a in 0..4 {
            for b in 0..4 {
                let dot: ExactRational = (0..4).map(|j| &m[a][j] * &m[b][j]).sum();
                assert_eq!(dot, if a == b { int(1) } else { int(0) });
            }
        }
        assert!(x(3, 1).to_y().is_err());
    }

    #[test]
    fn squares() {
        let one = SparsePoly::one(Frame::X(3));
        assert_eq!(one.substitute_squares().unwrap(), SparsePoly::one(Frame::Y3));
        let z = &x(3, 1) * &x(3, 2);
        assert_eq!(z.substitute_squares().unwrap().coeff(&[2, 2, 0]), int(1));
        assert!(x(4, 1).substitute_squares().is_err());
    }

    #[test]
    fn json_round_trip_exact() {
        let f = &x(3, 1).pow(2).scale(&q(-7, 3)) + &x(3, 3).scale(&q(1, 2));
        let v = f.to_json();
        assert_eq!(v["frame"], "x3");
        assert_eq!(v["nvars"], 3);
        let back = SparsePoly::from_json(&v).unwrap();
        assert_eq!(back, f);
        assert_eq!(serde_json::to_string(&back.to_json()).unwrap(), serde_json::to_string(&v).unwrap());
        let bad = serde_json::json!({"nvars": 2, "frame": "y3", "terms": []});
        assert!(SparsePoly::from_json(&bad).is_err());
    }

    #[test]
    fn display() {
        let f = &x(3, 1).pow(2).scale(&q(-7, 3)) + &SparsePoly::constant(Frame::X(3), int(2));
        assert_eq!(f.to_string(), "-7/3*x1^2 + 2");
        assert_eq!(SparsePoly::zero(Frame::Y0).to_string(), "0");
    }

    fn arb_poly(n: usize) -> impl Strategy<Value = SparsePoly> {
        prop::collection::vec((prop::collection::vec(0u32..3, n), -9i64..9, 1i64..5), 0..6)
            .prop_map(move |ts| {
                SparsePoly::from_terms(Frame::X(n), ts.into_iter().map(|(e, p, r)| (e, q(p, r)))).unwrap()
            })
    }

    fn arb_point(n: usize) -> impl Strategy<Value = Vec<ExactRational>> {
        prop::collection::vec((-7i64..7, 1i64..4).prop_map(|(p, r)| q(p, r)), n)
    }

    proptest! {
        #[test]
        fn ring_ops_commute_with_evaluation(f in arb_poly(3), g in arb_poly(3), pt in arb_point(3)) {
            let (fv, gv) = (f.evaluate(&pt).unwrap(), g.evaluate(&pt).unwrap());
            prop_assert_eq!((&f + &g).evaluate(&pt).unwrap(), &fv + &gv);
            prop_assert_eq!((&f - &g).evaluate(&pt).unwrap(), &fv - &gv);
            prop_assert_eq!((&f * &g).evaluate(&pt).unwrap(), &fv * &gv);
        }

        #[test]
        fn coordinate_round_trip(f in arb_poly(4), pt in arb_point(4)) {
            let y = f.to_y().unwrap();
            prop_assert_eq!(y.to_x().unwrap(), f.clone());
            // evaluating in y at y_k = <x, v_k> gives f(x)
            let m = coord_matrix();
            let ypt: Vec<ExactRational> = (0..4).map(|k| (0..4).map(|j| &m[k][j] * &pt[j]).sum()).collect();
            prop_assert_eq!(y.evaluate(&ypt).unwrap(), f.evaluate(&pt).unwrap());
        }
    }
}
