//! Compositions, partitions and the combinatorial data attached to them:
//! dominance, ranks, spectral vectors, hook-length products, generalized
//! Pochhammer symbols and the symmetrization coefficients.
//!
//! Indices in this module follow the mathematical convention and start at 1.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::{factorial, int, ExactRational, ParamContext};

/// A finite sequence of nonnegative integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Self {
        Self(parts)
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|alpha|`.
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Largest index (1-based) with a positive part; 0 for the zero composition.
    pub fn length(&self) -> usize {
        self.0.iter().rposition(|&a| a > 0).map_or(0, |i| i + 1)
    }

    pub fn is_partition(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    /// Decreasing rearrangement.
    pub fn to_partition(&self) -> Partition {
        let mut p = self.0.clone();
        p.sort_unstable_by(|a, b| b.cmp(a));
        Partition(Composition(p))
    }

    /// Parts in reverse order.
    pub fn reversed(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }

    fn check_index(&self, i: usize) -> Result<usize> {
        if i == 0 || i > self.len() {
            return Err(Error::IndexOutOfRange { index: i, max: self.len() });
        }
        Ok(i - 1)
    }
}

impl From<Vec<u32>> for Composition {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

impl From<&[u32]> for Composition {
    fn from(v: &[u32]) -> Self {
        Self(v.to_vec())
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// A composition with weakly decreasing parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Composition);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        let c = Composition(parts);
        if !c.is_partition() {
            return Err(Error::NotPartition(c.to_string()));
        }
        Ok(Self(c))
    }

    pub fn as_composition(&self) -> &Composition {
        &self.0
    }

    pub fn parts(&self) -> &[u32] {
        self.0.parts()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.weight()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A permutation of `{1..n}`, stored 0-based: `images[i] = w(i+1) - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { images: (0..n).collect() }
    }

    /// From one-line notation `(w(1), ..., w(n))`, 1-based.
    pub fn from_one_line(w: &[usize]) -> Result<Self> {
        let n = w.len();
        let mut seen = vec![false; n];
        for &v in w {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::NotPermutation(w.to_vec()));
            }
            seen[v - 1] = true;
        }
        Ok(Self { images: w.iter().map(|v| v - 1).collect() })
    }

    /// Transposition `(i j)` on `{1..n}`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::IndexOutOfRange { index: i.max(j), max: n });
        }
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i - 1, j - 1);
        Ok(Self { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// `w(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|v| v + 1).collect()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Self { images: inv }
    }

    /// `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        Self { images: other.images.iter().map(|&v| self.images[v]).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `(w alpha)_i = alpha_{w^{-1}(i)}`.
    pub fn act_on(&self, alpha: &[u32]) -> Vec<u32> {
        let mut out = vec![0; alpha.len()];
        for (j, &a) in alpha.iter().enumerate() {
            out[self.images[j]] = a;
        }
        out
    }

    /// Adjacent transpositions `(i, i+1)` generating `S_n`.
    pub fn generators(n: usize) -> Vec<Self> {
        (1..n).map(|i| Self::transposition(n, i, i + 1).unwrap()).collect()
    }

    /// All permutations of `{1..n}` in lexicographic one-line order.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Self { images: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Composition(self.one_line().into_iter().map(|v| v as u32).collect()).fmt(f)
    }
}

/// Sorts `alpha` into `alpha+` and returns `w`, the inverse of `i -> r(alpha, i)`.
///
/// `w(k)` is the position holding the `k`-th largest part, so
/// `alpha+_k = alpha_{w(k)}`.
pub fn sort_to_partition(alpha: &Composition) -> (Partition, Permutation) {
    let ranks = ranks(alpha);
    let mut w = vec![0; alpha.len()];
    for (i, &r) in ranks.iter().enumerate() {
        w[r - 1] = i + 1;
    }
    (alpha.to_partition(), Permutation::from_one_line(&w).unwrap())
}

/// Partial-sum dominance on equal-length sequences, strict (`alpha != beta`).
fn partial_sum_dominates(alpha: &[u32], beta: &[u32]) -> bool {
    if alpha == beta {
        return false;
    }
    let (mut sa, mut sb) = (0u64, 0u64);
    for (a, b) in alpha.iter().zip(beta) {
        sa += *a as u64;
        sb += *b as u64;
        if sa < sb {
            return false;
        }
    }
    true
}

/// The dominance order `alpha |> beta`: equal weight, and either
/// `alpha+` strictly dominates `beta+`, or they share `alpha+` and
/// `alpha` dominates `beta` by partial sums.
pub fn dominates(alpha: &Composition, beta: &Composition) -> Result<bool> {
    if alpha.len() != beta.len() {
        return Err(Error::LengthMismatch { expected: alpha.len(), found: beta.len() });
    }
    if alpha.weight() != beta.weight() {
        return Ok(false);
    }
    let ap = alpha.to_partition();
    let bp = beta.to_partition();
    if ap == bp {
        Ok(partial_sum_dominates(alpha.parts(), beta.parts()))
    } else {
        Ok(partial_sum_dominates(ap.parts(), bp.parts()))
    }
}

/// Total order refining `dominates`: total degree, then `alpha+`
/// lexicographically, then `alpha` lexicographically.
///
/// Lexicographic order refines partial-sum dominance, so `alpha |> beta`
/// implies `canonical_cmp(alpha, beta) == Greater`.
pub fn canonical_cmp(alpha: &[u32], beta: &[u32]) -> Ordering {
    let da: u32 = alpha.iter().sum();
    let db: u32 = beta.iter().sum();
    da.cmp(&db)
        .then_with(|| {
            let mut a = alpha.to_vec();
            let mut b = beta.to_vec();
            a.sort_unstable_by(|x, y| y.cmp(x));
            b.sort_unstable_by(|x, y| y.cmp(x));
            a.cmp(&b)
        })
        .then_with(|| alpha.cmp(beta))
}

/// `r(alpha, i) = #{j: alpha_j > alpha_i} + #{j <= i: alpha_j = alpha_i}`.
pub fn rank(alpha: &Composition, i: usize) -> Result<usize> {
    let i0 = alpha.check_index(i)?;
    Ok(rank0(alpha.parts(), i0))
}

fn rank0(a: &[u32], i0: usize) -> usize {
    let ai = a[i0];
    a.iter().filter(|&&x| x > ai).count() + a[..=i0].iter().filter(|&&x| x == ai).count()
}

/// All ranks `r(alpha, 1..=N)`.
pub fn ranks(alpha: &Composition) -> Vec<usize> {
    (0..alpha.len()).map(|i| rank0(alpha.parts(), i)).collect()
}

/// `xi_i(alpha) = (N - r(alpha,i)) kappa + alpha_i + 1` for `i = 1..=N`.
pub fn spectral_vector(alpha: &Composition, ctx: &ParamContext) -> Result<Vec<ExactRational>> {
    let n = ctx.nvars();
    if alpha.len() != n {
        return Err(Error::LengthMismatch { expected: n, found: alpha.len() });
    }
    Ok(ranks(alpha)
        .into_iter()
        .zip(alpha.parts())
        .map(|(r, &a)| ctx.kappa() * int((n - r) as i64) + int(a as i64 + 1))
        .collect())
}

/// Leg-length `L(alpha; i, j)` of the node `(i, j)`, `1 <= j <= alpha_i`.
pub fn leg_length(alpha: &Composition, i: usize, j: u32) -> Result<usize> {
    let i0 = alpha.check_index(i)?;
    let a = alpha.parts();
    if j == 0 || j > a[i0] {
        return Err(Error::NodeOutsideDiagram { row: i, col: j as usize });
    }
    Ok(leg0(a, i0, j))
}

fn leg0(a: &[u32], i0: usize, j: u32) -> usize {
    let ai = a[i0];
    let below = a[i0 + 1..].iter().filter(|&&al| j <= al && al <= ai).count();
    let above = a[..i0].iter().filter(|&&al| j <= al + 1 && al + 1 <= ai).count();
    below + above
}

/// Hook-length product `h(alpha, t) = prod_{i,j} (alpha_i - j + t + kappa L(alpha;i,j))`
/// over the nodes `1 <= j <= alpha_i`.
pub fn hook_product(alpha: &Composition, t: &ExactRational, ctx: &ParamContext) -> ExactRational {
    let a = alpha.parts();
    let mut acc = ExactRational::one();
    for (i0, &ai) in a.iter().enumerate() {
        for j in 1..=ai {
            let l = leg0(a, i0, j);
            acc *= t + int(ai as i64 - j as i64) + ctx.kappa() * int(l as i64);
        }
    }
    acc
}

/// Generalized Pochhammer symbol `(t)_lambda = prod_i prod_{j<lambda_i} (t - (i-1) kappa + j)`.
pub fn gen_pochhammer(lambda: &Partition, t: &ExactRational, ctx: &ParamContext) -> ExactRational {
    let mut acc = ExactRational::one();
    for (i0, &li) in lambda.parts().iter().enumerate() {
        let base = t - ctx.kappa() * int(i0 as i64);
        for j in 0..li {
            acc *= &base + int(j as i64);
        }
    }
    acc
}

/// `E_eps(alpha) = prod_{i<j, alpha_i<alpha_j} (1 + eps kappa / ((r_i - r_j) kappa + alpha_j - alpha_i))`.
pub fn e_epsilon(alpha: &Composition, eps: i8, ctx: &ParamContext) -> ExactRational {
    let a = alpha.parts();
    let r = ranks(alpha);
    let k = ctx.kappa();
    let signed_k = if eps >= 0 { k.clone() } else { -k.clone() };
    let mut acc = ExactRational::one();
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if a[i] < a[j] {
                let denom = k * int(r[i] as i64 - r[j] as i64) + int(a[j] as i64 - a[i] as i64);
                acc *= ExactRational::one() + &signed_k / denom;
            }
        }
    }
    acc
}

/// `#{alpha : alpha+ = lambda}`: `N!` over the multiplicity factorials.
pub fn orbit_count(lambda: &Partition) -> BigInt {
    let p = lambda.parts();
    let mut denom = BigInt::one();
    let mut k = 0;
    while k < p.len() {
        let run = p[k..].iter().take_while(|&&x| x == p[k]).count();
        denom *= factorial(run as u32);
        k += run;
    }
    factorial(p.len() as u32) / denom
}

/// Distinct rearrangements of `lambda`, in canonical order.
pub fn orbit(lambda: &Partition) -> Vec<Composition> {
    let mut out: Vec<Composition> = Vec::new();
    let mut cur: Vec<u32> = lambda.parts().to_vec();
    cur.sort_unstable();
    let n = cur.len();
    loop {
        out.push(Composition(cur.clone()));
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out.sort_by(|a, b| canonical_cmp(a.parts(), b.parts()));
    out
}

/// All compositions of length `n` with weight `degree`, in canonical order.
pub fn compositions(n: usize, degree: u32) -> Vec<Composition> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if cur.len() + 1 == n {
            cur.push(left);
            out.push(Composition(cur.clone()));
            cur.pop();
            return;
        }
        for a in 0..=left {
            cur.push(a);
            rec(n, left - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    rec(n, degree, &mut Vec::with_capacity(n), &mut out);
    out.sort_by(|a, b| canonical_cmp(a.parts(), b.parts()));
    out
}

/// All compositions of length `n` with weight at most `max_degree`.
pub fn compositions_up_to(n: usize, max_degree: u32) -> Vec<Composition> {
    (0..=max_degree).flat_map(|d| compositions(n, d)).collect()
}

/// Partitions with at most `n` parts (padded to length `n`) of weight `degree`.
pub fn partitions(n: usize, degree: u32) -> Vec<Partition> {
    compositions(n, degree)
        .into_iter()
        .filter(Composition::is_partition)
        .map(Partition)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rational, ExactRational};

    fn c(v: &[u32]) -> Composition {
        Composition::from(v)
    }

    fn ctx(k: ExactRational, n: usize) -> ParamContext {
        ParamContext::new(k, int(0), n).unwrap()
    }

    /// Leg from its set description: rows below whose part lies in
    /// `[j, alpha_i]`, plus rows above contributing node `(l, j-1)` with
    /// `j-1 <= alpha_l < alpha_i`.
    fn leg_by_nodes(a: &[u32], i0: usize, j: u32) -> usize {
        let mut nodes = Vec::new();
        for (l, &al) in a.iter().enumerate() {
            if l > i0 && j <= al && al <= a[i0] {
                nodes.push((l, j));
            }
            if l < i0 && j - 1 <= al && al < a[i0] {
                nodes.push((l, j - 1));
            }
        }
        nodes.len()
    }

    #[test]
    fn sorting() {
        let (p, w) = sort_to_partition(&c(&[1, 3, 0]));
        assert_eq!(p.parts(), &[3, 1, 0]);
        assert_eq!(w.one_line(), vec![2, 1, 3]);
        let (p, w) = sort_to_partition(&c(&[0, 0, 0]));
        assert_eq!(p.parts(), &[0, 0, 0]);
        assert!(w.is_identity());
        let a = c(&[2, 6, 4]);
        let (p, w) = sort_to_partition(&a);
        assert_eq!(p.parts(), &[6, 4, 2]);
        assert_eq!(ranks(&a), vec![3, 1, 2]);
        for k in 1..=3 {
            assert_eq!(rank(&a, w.apply(k)).unwrap(), k);
            assert_eq!(p.parts()[k - 1], a.parts()[w.apply(k) - 1]);
        }
    }

    #[test]
    fn dominance_examples() {
        assert!(dominates(&c(&[2, 6, 4]), &c(&[5, 4, 3])).unwrap());
        assert!(dominates(&c(&[5, 4, 3]), &c(&[3, 4, 5])).unwrap());
        assert!(dominates(&c(&[1, 0, 0]), &c(&[0, 1, 0])).unwrap());
        assert!(!dominates(&c(&[0, 1, 0]), &c(&[1, 0, 0])).unwrap());
        assert!(!dominates(&c(&[1, 0]), &c(&[1, 0])).unwrap());
        assert!(!dominates(&c(&[2, 0]), &c(&[1, 0])).unwrap());
        assert!(dominates(&c(&[1, 0]), &c(&[1, 0, 0])).is_err());
    }

    #[test]
    fn dominance_is_strict_partial_order() {
        let all: Vec<_> = (0..=6).flat_map(|d| compositions(3, d)).collect();
        for a in &all {
            assert!(!dominates(a, a).unwrap());
        }
        for d in 0..=6 {
            let level = compositions(3, d);
            for a in &level {
                for b in &level {
                    if dominates(a, b).unwrap() {
                        assert!(!dominates(b, a).unwrap());
                        assert_eq!(canonical_cmp(a.parts(), b.parts()), Ordering::Greater);
                        for cc in &level {
                            if dominates(b, cc).unwrap() {
                                assert!(dominates(a, cc).unwrap(), "{a} {b} {cc}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rank_examples_and_permutation_property() {
        let a = c(&[2, 6, 4]);
        assert_eq!(rank(&a, 1).unwrap(), 3);
        assert_eq!(rank(&a, 2).unwrap(), 1);
        for i in 1..=3 {
            assert_eq!(rank(&c(&[0, 0, 0]), i).unwrap(), i);
        }
        assert!(rank(&a, 0).is_err());
        assert!(rank(&a, 4).is_err());
        for d in 0..=6 {
            for a in compositions(3, d) {
                let mut r = ranks(&a);
                r.sort();
                assert_eq!(r, vec![1, 2, 3]);
                let p = a.to_partition();
                assert_eq!(ranks(p.as_composition()), vec![1, 2, 3]);
            }
        }
    }

    #[test]
    fn spectral_examples() {
        let one = ctx(int(1), 3);
        let xs: Vec<_> = spectral_vector(&c(&[0, 0, 0]), &one).unwrap();
        assert_eq!(xs, vec![int(3), int(2), int(1)]);
        let k = rational(5, 7).unwrap();
        let cx = ctx(k.clone(), 3);
        let xs = spectral_vector(&c(&[2, 6, 4]), &cx).unwrap();
        assert_eq!(xs, vec![int(3), &k * int(2) + int(7), &k + int(5)]);
        let xs = spectral_vector(&c(&[0, 0, 1]), &cx).unwrap();
        // r = (2,3,1)
        assert_eq!(xs, vec![&k + int(1), int(1), &k * int(2) + int(2)]);
        assert!(spectral_vector(&c(&[0, 0]), &cx).is_err());
    }

    #[test]
    fn spectral_vector_is_injective() {
        for k in [rational(1, 2).unwrap(), int(1), int(3), rational(5, 7).unwrap()] {
            let cx = ctx(k, 3);
            for d in 0..=6 {
                let level = compositions(3, d);
                let specs: Vec<_> =
                    level.iter().map(|a| spectral_vector(a, &cx).unwrap()).collect();
                for i in 0..level.len() {
                    for j in i + 1..level.len() {
                        assert_ne!(specs[i], specs[j], "{} {}", level[i], level[j]);
                    }
                }
            }
        }
    }

    #[test]
    fn legs() {
        let a = c(&[2, 1, 0]);
        assert_eq!(leg_length(&a, 1, 1).unwrap(), 1);
        assert_eq!(leg_length(&a, 1, 2).unwrap(), 0);
        assert_eq!(leg_length(&c(&[0, 0, 1]), 3, 1).unwrap(), 2);
        assert!(matches!(leg_length(&a, 3, 1), Err(Error::NodeOutsideDiagram { .. })));
        assert!(leg_length(&a, 1, 3).is_err());
        for d in 0..=6 {
            for a in compositions(3, d).into_iter().chain(compositions(4, d.min(5))) {
                for (i0, &ai) in a.parts().iter().enumerate() {
                    for j in 1..=ai {
                        assert_eq!(leg_length(&a, i0 + 1, j).unwrap(), leg_by_nodes(a.parts(), i0, j));
                    }
                }
            }
        }
    }

    #[test]
    fn hooks() {
        for k in [rational(1, 2).unwrap(), int(3)] {
            let cx = ctx(k.clone(), 3);
            for t in [int(1), &k + int(1), rational(2, 9).unwrap()] {
                assert_eq!(hook_product(&c(&[0, 0, 0]), &t, &cx), int(1));
                // nodes (1,1): L=1, (1,2): L=0, (2,1): L=0
                let expect = &t * &t * (&t + &k + int(1));
                assert_eq!(hook_product(&c(&[2, 1, 0]), &t, &cx), expect);
                assert_eq!(hook_product(&c(&[0, 0, 1]), &t, &cx), &t + &k * int(2));
            }
        }
    }

    #[test]
    fn pochhammer_examples() {
        let k = rational(3, 2).unwrap();
        let cx = ctx(k.clone(), 3);
        let t = rational(7, 3).unwrap();
        assert_eq!(gen_pochhammer(&Partition::new(vec![0, 0, 0]).unwrap(), &t, &cx), int(1));
        let expect = &t * (&t + int(1)) * (&t - &k);
        assert_eq!(gen_pochhammer(&Partition::new(vec![2, 1, 0]).unwrap(), &t, &cx), expect);
        let t = &k * int(3) + int(1);
        assert_eq!(gen_pochhammer(&Partition::new(vec![1, 0, 0]).unwrap(), &t, &cx), t);
        assert!(Partition::new(vec![0, 1]).is_err());
    }

    #[test]
    fn e_eps_examples() {
        let k = rational(2, 5).unwrap();
        let cx2 = ctx(k.clone(), 2);
        let cx3 = ctx(k.clone(), 3);
        assert_eq!(e_epsilon(&c(&[3, 1, 1]), 1, &cx3), int(1));
        assert_eq!(e_epsilon(&c(&[3, 1, 1]), -1, &cx3), int(1));
        assert_eq!(e_epsilon(&c(&[0, 1]), -1, &cx2), (&k + int(1)).recip());
        let expect = (&k * int(3) + int(1)) / (&k + int(1));
        assert_eq!(e_epsilon(&c(&[0, 0, 1]), 1, &cx3), expect);
    }

    #[test]
    fn hook_symmetrization_identities() {
        for k in [rational(1, 2).unwrap(), int(1), int(3), rational(5, 7).unwrap()] {
            let cx = ctx(k.clone(), 3);
            let kp1 = &k + int(1);
            for a in compositions_up_to(3, 6) {
                let p = a.to_partition();
                let pc = p.as_composition();
                assert_eq!(
                    hook_product(&a, &kp1, &cx),
                    e_epsilon(&a, 1, &cx) * hook_product(pc, &kp1, &cx)
                );
                assert_eq!(
                    hook_product(pc, &int(1), &cx),
                    hook_product(&a, &int(1), &cx) * e_epsilon(&a, -1, &cx)
                );
            }
        }
    }

    #[test]
    fn orbits() {
        let p = |v: Vec<u32>| Partition::new(v).unwrap();
        assert_eq!(orbit_count(&p(vec![1, 0, 0])), BigInt::from(3));
        assert_eq!(orbit_count(&p(vec![0, 0, 0])), BigInt::from(1));
        assert_eq!(orbit_count(&p(vec![2, 1, 0])), BigInt::from(6));
        assert_eq!(orbit_count(&p(vec![2, 2, 1, 1])), BigInt::from(6));
        for d in 0..=6 {
            for l in partitions(3, d) {
                let o = orbit(&l);
                assert_eq!(BigInt::from(o.len()), orbit_count(&l));
                assert!(o.iter().all(|a| a.to_partition() == l));
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(compositions(3, 6).len(), 28);
        assert_eq!(compositions_up_to(3, 6).len(), 84);
        assert_eq!(compositions_up_to(4, 6).len(), 210);
        assert_eq!(partitions(3, 6).len(), 7);
        assert_eq!(Permutation::all(4).len(), 24);
    }

    #[test]
    fn permutation_action() {
        let w = Permutation::from_one_line(&[2, 3, 1]).unwrap();
        assert_eq!(w.act_on(&[3, 1, 0]), vec![0, 3, 1]);
        assert!(w.compose(&w.inverse()).is_identity());
        assert!(Permutation::from_one_line(&[1, 1, 2]).is_err());
        for a in Permutation::all(3) {
            for b in Permutation::all(3) {
                let v = [5, 2, 0];
                assert_eq!(a.compose(&b).act_on(&v), a.act_on(&b.act_on(&v)));
            }
        }
    }
}
