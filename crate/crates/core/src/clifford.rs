//! The split quadratic space `W = V ⊕ V*`, its spinor module `S = ∧V*`, and
//! the isomorphism between degree-two Clifford elements and `so(W, Q)`.
//!
//! Spinor basis vectors are subsets of `{1, …, m}` stored as bitmasks: bit
//! `j - 1` set means `f^j` is a factor of `f^{i_1} ∧ … ∧ f^{i_r}` with
//! increasing indices. `W` coordinates are ordered `(X_1, …, X_m, ξ_1, …, ξ_m)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{axpy, Matrix, SparseSpan};
use crate::rational::{frac, int, show, Rational};

pub const MAX_M: usize = 8;

pub type Subset = u32;

pub fn degree(s: Subset) -> usize {
    s.count_ones() as usize
}

/// Number of elements of `s` strictly below index `j` (0-based bit).
fn below(s: Subset, j: usize) -> u32 {
    (s & ((1u32 << j) - 1)).count_ones()
}

/// `f^j ∧ f^I` for 0-based `j`, as `(sign, subset)`.
pub fn wedge_basis(j: usize, s: Subset) -> Option<(bool, Subset)> {
    if s & (1 << j) != 0 {
        return None;
    }
    Some((below(s, j) % 2 == 1, s | (1 << j)))
}

/// Contraction `ι_{f_j} f^I` for 0-based `j`, as `(sign, subset)`.
pub fn contract_basis(j: usize, s: Subset) -> Option<(bool, Subset)> {
    if s & (1 << j) == 0 {
        return None;
    }
    Some((below(s, j) % 2 == 1, s & !(1 << j)))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WElement {
    pub x: Vec<Rational>,
    pub xi: Vec<Rational>,
}

impl WElement {
    pub fn zero(m: usize) -> Self {
        Self { x: vec![Rational::zero(); m], xi: vec![Rational::zero(); m] }
    }

    pub fn m(&self) -> usize {
        self.x.len()
    }

    /// The vector `f_j` (1-based).
    pub fn f_lower(m: usize, j: usize) -> Self {
        let mut w = Self::zero(m);
        w.x[j - 1] = Rational::one();
        w
    }

    /// The covector `f^j` (1-based).
    pub fn f_upper(m: usize, j: usize) -> Self {
        let mut w = Self::zero(m);
        w.xi[j - 1] = Rational::one();
        w
    }

    pub fn from_coords(coords: &[Rational]) -> Self {
        let m = coords.len() / 2;
        Self { x: coords[..m].to_vec(), xi: coords[m..].to_vec() }
    }

    pub fn coords(&self) -> Vec<Rational> {
        self.x.iter().chain(&self.xi).cloned().collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_coords(&self.coords().iter().zip(other.coords()).map(|(a, b)| a + b).collect::<Vec<_>>())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::from_coords(&self.coords().iter().map(|a| a * s).collect::<Vec<_>>())
    }

    pub fn sample(m: usize, rng: &mut impl Rng) -> Self {
        let c: Vec<Rational> = (0..2 * m).map(|_| frac(rng.gen_range(-4..=4), rng.gen_range(1..=3))).collect();
        Self::from_coords(&c)
    }
}

impl fmt::Debug for WElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x: Vec<String> = self.x.iter().map(show).collect();
        let xi: Vec<String> = self.xi.iter().map(show).collect();
        write!(f, "W(X=[{}], ξ=[{}])", x.join(", "), xi.join(", "))
    }
}

/// `Q((X,ξ),(Y,η)) = (η(X) + ξ(Y)) / 2`.
pub fn quad_q(w: &WElement, v: &WElement) -> Rational {
    let mut s = Rational::zero();
    for j in 0..w.m() {
        s += &v.xi[j] * &w.x[j] + &w.xi[j] * &v.x[j];
    }
    s / int(2)
}

/// Gram matrix of `Q` in `(X, ξ)` coordinates.
pub fn q_gram(m: usize) -> Matrix {
    Matrix::from_fn(2 * m, 2 * m, |i, j| if i + m == j || j + m == i { frac(1, 2) } else { Rational::zero() })
}

/// `xᵀG + Gx = 0` for the Gram matrix `G` of `Q`.
pub fn is_q_antisymmetric(x: &Matrix) -> bool {
    let g = q_gram(x.rows() / 2);
    (&(&x.transpose() * &g) + &(&g * x)).is_zero()
}

/// The orthogonal basis `e_j = f^j + f_j` (`Q = 1`) and `e_{j+m} = f^j − f_j` (`Q = −1`).
pub fn e_basis(m: usize) -> Vec<WElement> {
    let mut out = Vec::with_capacity(2 * m);
    for j in 1..=m {
        out.push(WElement::f_upper(m, j).add(&WElement::f_lower(m, j)));
    }
    for j in 1..=m {
        out.push(WElement::f_upper(m, j).add(&WElement::f_lower(m, j).scale(&int(-1))));
    }
    out
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Spinor {
    m: usize,
    coeffs: BTreeMap<Subset, Rational>,
}

impl Spinor {
    pub fn zero(m: usize) -> Self {
        Self { m, coeffs: BTreeMap::new() }
    }

    pub fn basis(m: usize, s: Subset) -> Self {
        let mut c = BTreeMap::new();
        c.insert(s, Rational::one());
        Self { m, coeffs: c }
    }

    /// `f^{i_1} ∧ … ∧ f^{i_r}` from 1-based indices in any order (with sign).
    pub fn wedge_of(m: usize, idx: &[usize]) -> Self {
        let mut s = Self::basis(m, 0);
        for &i in idx.iter().rev() {
            s = s.wedge_covector(i - 1);
        }
        s
    }

    pub fn from_map(m: usize, mut coeffs: BTreeMap<Subset, Rational>) -> Self {
        coeffs.retain(|_, v| !v.is_zero());
        Self { m, coeffs }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn coeffs(&self) -> &BTreeMap<Subset, Rational> {
        &self.coeffs
    }

    pub fn coeff(&self, s: Subset) -> Rational {
        self.coeffs.get(&s).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn wedge_covector(&self, j: usize) -> Self {
        let mut out = BTreeMap::new();
        for (s, c) in &self.coeffs {
            if let Some((neg, t)) = wedge_basis(j, *s) {
                out.insert(t, if neg { -c } else { c.clone() });
            }
        }
        Self { m: self.m, coeffs: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut c = self.coeffs.clone();
        for (s, v) in &other.coeffs {
            axpy(&mut c, s, v);
        }
        Self { m: self.m, coeffs: c }
    }

    pub fn scale(&self, a: &Rational) -> Self {
        Self::from_map(self.m, self.coeffs.iter().map(|(s, v)| (*s, v * a)).collect())
    }

    pub fn sample(m: usize, rng: &mut impl Rng) -> Self {
        let mut c = BTreeMap::new();
        for s in 0..(1u32 << m) {
            if rng.gen_bool(0.5) {
                c.insert(s, frac(rng.gen_range(-5..=5), rng.gen_range(1..=3)));
            }
        }
        Self::from_map(m, c)
    }
}

impl fmt::Debug for Spinor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|(s, c)| format!("{}·{}", show(c), subset_name(*s))).collect();
        f.write_str(&parts.join(" + "))
    }
}

pub fn subset_name(s: Subset) -> String {
    if s == 0 {
        return "1".into();
    }
    let idx: Vec<String> = (0..32).filter(|j| s & (1 << j) != 0).map(|j| format!("f{}", j + 1)).collect();
    idx.join("^")
}

/// `(X + ξ)·φ = ξ ∧ φ − ι_X φ`.
pub fn spin_act(w: &WElement, phi: &Spinor) -> Spinor {
    clifford_op(w).apply(phi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

/// A linear endomorphism of `S`, stored as sparse columns over the subset basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SpinorOp {
    m: usize,
    cols: Vec<BTreeMap<Subset, Rational>>,
}

impl SpinorOp {
    pub fn zero(m: usize) -> Self {
        Self { m, cols: vec![BTreeMap::new(); 1 << m] }
    }

    pub fn identity(m: usize) -> Self {
        Self::scalar(m, Rational::one())
    }

    pub fn scalar(m: usize, a: Rational) -> Self {
        let mut op = Self::zero(m);
        if !a.is_zero() {
            for (s, col) in op.cols.iter_mut().enumerate() {
                col.insert(s as Subset, a.clone());
            }
        }
        op
    }

    /// Operator from its action on each basis subset.
    pub fn from_fn(m: usize, f: impl Fn(Subset) -> Spinor) -> Self {
        Self { m, cols: (0..1u32 << m).map(|s| f(s).coeffs).collect() }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        1 << self.m
    }

    pub fn get(&self, row: Subset, col: Subset) -> Rational {
        self.cols[col as usize].get(&row).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn column(&self, col: Subset) -> Spinor {
        Spinor { m: self.m, coeffs: self.cols[col as usize].clone() }
    }

    /// Nonzero entries as `((row, col), value)`.
    pub fn entries(&self) -> impl Iterator<Item = ((Subset, Subset), &Rational)> {
        self.cols.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |(r, v)| ((*r, c as Subset), v)))
    }

    /// Entries keyed by flat index `row * 2^m + col`, for span computations.
    pub fn to_sparse_vec(&self) -> BTreeMap<usize, Rational> {
        let d = self.dim();
        self.entries().map(|((r, c), v)| (r as usize * d + c as usize, v.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(BTreeMap::is_empty)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(BTreeMap::len).sum()
    }

    /// Parity by form-degree shift; the zero operator is even.
    pub fn parity(&self) -> Parity {
        let (mut even, mut odd) = (false, false);
        for ((r, c), _) in self.entries() {
            if (degree(r) + degree(c)).is_multiple_of(2) {
                even = true;
            } else {
                odd = true;
            }
        }
        match (even, odd) {
            (_, false) => Parity::Even,
            (false, true) => Parity::Odd,
            (true, true) => Parity::Mixed,
        }
    }

    pub fn apply(&self, phi: &Spinor) -> Spinor {
        let mut out = BTreeMap::new();
        for (s, c) in &phi.coeffs {
            for (r, v) in &self.cols[*s as usize] {
                axpy(&mut out, r, &(v * c));
            }
        }
        Spinor { m: self.m, coeffs: out }
    }

    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.m, other.m, "spinor dimension mismatch");
        let cols = other
            .cols
            .iter()
            .map(|col| {
                let mut out = BTreeMap::new();
                for (k, b) in col {
                    for (r, a) in &self.cols[*k as usize] {
                        axpy(&mut out, r, &(a * b));
                    }
                }
                out
            })
            .collect();
        Self { m: self.m, cols }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut cols = self.cols.clone();
        for (col, oc) in cols.iter_mut().zip(&other.cols) {
            for (r, v) in oc {
                axpy(col, r, v);
            }
        }
        Self { m: self.m, cols }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// `self += a·other` in place.
    pub fn axpy_assign(&mut self, a: &Rational, other: &Self) {
        if a.is_zero() {
            return;
        }
        for (col, oc) in self.cols.iter_mut().zip(&other.cols) {
            for (r, v) in oc {
                axpy(col, r, &(v * a));
            }
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&int(-1))
    }

    pub fn scale(&self, a: &Rational) -> Self {
        if a.is_zero() {
            return Self::zero(self.m);
        }
        Self { m: self.m, cols: self.cols.iter().map(|c| c.iter().map(|(r, v)| (*r, v * a)).collect()).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut cols = vec![BTreeMap::new(); self.dim()];
        for ((r, c), v) in self.entries() {
            cols[r as usize].insert(c, v.clone());
        }
        Self { m: self.m, cols }
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.compose(other).sub(&other.compose(self))
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        self.compose(other).add(&other.compose(self))
    }

    /// Restriction to the block mapping degree `from` into degree `to`, as a dense matrix
    /// with rows and columns in increasing bitmask order.
    pub fn block(&self, from: usize, to: usize) -> Matrix {
        let src: Vec<Subset> = (0..1u32 << self.m).filter(|s| degree(*s) == from).collect();
        let dst: Vec<Subset> = (0..1u32 << self.m).filter(|s| degree(*s) == to).collect();
        Matrix::from_fn(dst.len(), src.len(), |i, j| self.get(dst[i], src[j]))
    }

    pub fn to_dense(&self) -> Matrix {
        let d = self.dim();
        Matrix::from_fn(d, d, |i, j| self.get(i as Subset, j as Subset))
    }
}

impl fmt::Debug for SpinorOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "SpinorOp[m={}](0)", self.m);
        }
        let parts: Vec<String> = self
            .entries()
            .map(|((r, c), v)| format!("{}:{}->{}", show(v), subset_name(c), subset_name(r)))
            .collect();
        write!(f, "SpinorOp[m={}]({})", self.m, parts.join(", "))
    }
}

/// Wedge with `f^j` (1-based).
pub fn epsilon(m: usize, j: usize) -> SpinorOp {
    SpinorOp::from_fn(m, |s| match wedge_basis(j - 1, s) {
        Some((neg, t)) => Spinor::basis(m, t).scale(&if neg { int(-1) } else { int(1) }),
        None => Spinor::zero(m),
    })
}

/// Contraction with `f_j` (1-based).
pub fn iota(m: usize, j: usize) -> SpinorOp {
    SpinorOp::from_fn(m, |s| match contract_basis(j - 1, s) {
        Some((neg, t)) => Spinor::basis(m, t).scale(&if neg { int(-1) } else { int(1) }),
        None => Spinor::zero(m),
    })
}

/// `E_w`: the matrix of `φ ↦ ξ ∧ φ − ι_X φ`.
pub fn clifford_op(w: &WElement) -> SpinorOp {
    let m = w.m();
    let mut op = SpinorOp::zero(m);
    for j in 0..m {
        if !w.xi[j].is_zero() {
            op = op.add(&epsilon(m, j + 1).scale(&w.xi[j]));
        }
        if !w.x[j].is_zero() {
            op = op.sub(&iota(m, j + 1).scale(&w.x[j]));
        }
    }
    op
}

/// Recovers `w` with `E_w = op`, if there is one.
pub fn clifford_preimage(op: &SpinorOp) -> Option<WElement> {
    let m = op.m();
    let one = op.column(0);
    let mut w = WElement::zero(m);
    for j in 0..m {
        w.xi[j] = one.coeff(1 << j);
        w.x[j] = -op.get(0, 1 << j);
    }
    (clifford_op(&w) == *op).then_some(w)
}

/// `ad(c)` as a matrix on `W` in `(X, ξ)` coordinates.
pub fn ad_of(c: &SpinorOp) -> Result<Matrix> {
    let m = c.m();
    let mut x = Matrix::zeros(2 * m, 2 * m);
    for k in 0..2 * m {
        let mut coords = vec![Rational::zero(); 2 * m];
        coords[k] = Rational::one();
        let e = clifford_op(&WElement::from_coords(&coords));
        let img = c.commutator(&e);
        let w = clifford_preimage(&img)
            .ok_or_else(|| Error::NotDegreeTwo(format!("[c, E_w] is not a Clifford vector for basis index {k}")))?;
        x.set_column(k, &w.coords());
    }
    Ok(x)
}

struct AdCache {
    monomials: Vec<SpinorOp>,
    span: SparseSpan<usize>,
}

fn ad_cache(m: usize) -> Arc<AdCache> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<AdCache>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = cache.lock().unwrap().get(&m) {
        return c.clone();
    }
    let built = Arc::new(build_ad_cache(m));
    cache.lock().unwrap().entry(m).or_insert(built).clone()
}

fn build_ad_cache(m: usize) -> AdCache {
    let e: Vec<SpinorOp> = e_basis(m).iter().map(clifford_op).collect();
    let mut monomials = Vec::new();
    let mut span = SparseSpan::new();
    for i in 0..2 * m {
        for j in i + 1..2 * m {
            let mono = e[i].compose(&e[j]);
            let ad = ad_of(&mono).expect("Clifford monomials of degree two");
            let independent = span.insert(ad.to_sparse());
            assert!(independent, "ad is injective on degree-two monomials");
            monomials.push(mono);
        }
    }
    AdCache { monomials, span }
}

/// Degree-two monomials `E_{e_i} E_{e_j}`, `i < j`, in lexicographic order.
pub fn degree_two_monomials(m: usize) -> Vec<SpinorOp> {
    ad_cache(m).monomials.clone()
}

/// The unique degree-two Clifford element `c` with `ad(c) = x`.
pub fn ad_inverse(x: &Matrix) -> Result<SpinorOp> {
    if !x.is_square() || !x.rows().is_multiple_of(2) {
        return Err(Error::Structural(format!("{}x{} is not an endomorphism of W", x.rows(), x.cols())));
    }
    if !is_q_antisymmetric(x) {
        return Err(Error::NotAntisymmetric(format!("{x:?}")));
    }
    let m = x.rows() / 2;
    let cache = ad_cache(m);
    let combo = cache
        .span
        .express(&x.to_sparse())
        .ok_or_else(|| Error::NotAntisymmetric("not in the span of ad images".into()))?;
    let mut c = SpinorOp::zero(m);
    for (k, a) in combo {
        c = c.add(&cache.monomials[k].scale(&a));
    }
    Ok(c)
}

/// Diagonal embedding `A ↦ diag(A, A)` of `so(m)` into `so(W, Q)`.
pub fn psi4(a: &Matrix) -> Result<Matrix> {
    if !a.is_square() || !(&a.transpose() + a).is_zero() {
        return Err(Error::NotAntisymmetric("ψ₄ needs an antisymmetric matrix".into()));
    }
    let m = a.rows();
    Ok(Matrix::from_fn(2 * m, 2 * m, |i, j| {
        if i < m && j < m {
            a[(i, j)].clone()
        } else if i >= m && j >= m {
            a[(i - m, j - m)].clone()
        } else {
            Rational::zero()
        }
    }))
}

/// `ν = E_{e_1} ⋯ E_{e_m}`.
pub fn nu_op(m: usize) -> SpinorOp {
    e_basis(m)[..m].iter().fold(SpinorOp::identity(m), |acc, e| acc.compose(&clifford_op(e)))
}

/// Sign of the shuffle permutation `(I, I^c)`.
pub fn shuffle_sign(s: Subset, m: usize) -> Rational {
    let mut inversions = 0;
    for j in 0..m {
        if s & (1 << j) == 0 {
            inversions += (s >> j).count_ones();
        }
    }
    if inversions % 2 == 0 {
        int(1)
    } else {
        int(-1)
    }
}

/// Flat Hodge star `⋆f^I = sign(I, I^c) f^{I^c}`.
pub fn hodge_star(phi: &Spinor) -> Spinor {
    let m = phi.m();
    let full = (1u32 << m) - 1;
    Spinor::from_map(m, phi.coeffs.iter().map(|(s, c)| (full & !s, c * shuffle_sign(*s, m))).collect())
}

pub fn hodge_star_op(m: usize) -> SpinorOp {
    SpinorOp::from_fn(m, |s| hodge_star(&Spinor::basis(m, s)))
}

/// The degree-`r` sign `(−1)^{mr + r(r−1)/2}` relating `ν` to `⋆`.
pub fn nu_sign(m: usize, r: usize) -> Rational {
    crate::rational::sign_pow(m * r + r * r.saturating_sub(1) / 2)
}

/// Random `Q`-antisymmetric matrix `G⁻¹B` with `B` antisymmetric integral.
pub fn sample_so_w(m: usize, rng: &mut impl Rng) -> Matrix {
    let mut b = Matrix::zeros(2 * m, 2 * m);
    for i in 0..2 * m {
        for j in i + 1..2 * m {
            let v = int(rng.gen_range(-3..=3));
            b[(i, j)] = v.clone();
            b[(j, i)] = -v;
        }
    }
    let g_inv = Matrix::from_fn(2 * m, 2 * m, |i, j| if i + m == j || j + m == i { int(2) } else { Rational::zero() });
    &g_inv * &b
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn quad_q_examples() {
        assert_eq!(quad_q(&WElement::f_lower(2, 1), &WElement::f_upper(2, 1)), frac(1, 2));
        let w = WElement::f_lower(2, 1).add(&WElement::f_upper(2, 1));
        assert_eq!(quad_q(&w, &w), int(1));
        assert_eq!(quad_q(&WElement::f_lower(2, 1), &WElement::f_lower(2, 2)), int(0));
    }

    #[test]
    fn e_basis_is_orthonormal_split() {
        for m in 1..=4 {
            let e = e_basis(m);
            for i in 0..2 * m {
                for j in 0..2 * m {
                    let expect = if i != j { 0 } else if i < m { 1 } else { -1 };
                    assert_eq!(quad_q(&e[i], &e[j]), int(expect));
                }
            }
        }
    }

    #[test]
    fn spin_act_examples() {
        let one = Spinor::basis(1, 0);
        assert_eq!(spin_act(&WElement::f_upper(1, 1), &one), Spinor::basis(1, 1));
        assert_eq!(spin_act(&WElement::f_lower(1, 1), &Spinor::basis(1, 1)), one.scale(&int(-1)));
    }

    #[test]
    fn spin_act_squares_to_minus_q() {
        let mut r = rng(7);
        for m in 1..=4 {
            for _ in 0..5 {
                let w = WElement::sample(m, &mut r);
                let phi = Spinor::sample(m, &mut r);
                let lhs = spin_act(&w, &spin_act(&w, &phi));
                assert_eq!(lhs, phi.scale(&-quad_q(&w, &w)));
            }
        }
    }

    #[test]
    fn clifford_op_m1_matrices() {
        let up = clifford_op(&WElement::f_upper(1, 1));
        assert_eq!(up.get(1, 0), int(1));
        assert_eq!(up.nnz(), 1);
        let low = clifford_op(&WElement::f_lower(1, 1));
        assert_eq!(low.get(0, 1), int(-1));
        assert_eq!(low.nnz(), 1);
        assert_eq!(up.parity(), Parity::Odd);
    }

    #[test]
    fn clifford_relation_on_basis_pairs() {
        for m in 1..=5 {
            let e = e_basis(m);
            let ops: Vec<SpinorOp> = e.iter().map(clifford_op).collect();
            for i in 0..2 * m {
                for j in 0..2 * m {
                    let lhs = ops[i].anticommutator(&ops[j]);
                    assert_eq!(lhs, SpinorOp::scalar(m, int(-2) * quad_q(&e[i], &e[j])));
                }
            }
        }
    }

    #[test]
    fn wedge_of_orders_factors() {
        assert_eq!(Spinor::wedge_of(3, &[2, 1]), Spinor::basis(3, 0b011).scale(&int(-1)));
        assert_eq!(Spinor::wedge_of(3, &[1, 3]), Spinor::basis(3, 0b101));
    }

    #[test]
    fn ad_of_examples() {
        assert!(ad_of(&SpinorOp::zero(2)).unwrap().is_zero());
        let e = e_basis(3);
        let c = clifford_op(&e[0]).compose(&clifford_op(&e[1]));
        let x = ad_of(&c).unwrap();
        let apply = |w: &WElement| WElement::from_coords(&x.apply(&w.coords()));
        assert_eq!(apply(&e[1]), e[0].scale(&int(-2)));
        assert_eq!(apply(&e[0]), e[1].scale(&int(2)));
        for k in 2..6 {
            assert_eq!(apply(&e[k]), WElement::zero(3));
        }
        assert!(is_q_antisymmetric(&x));
    }

    #[test]
    fn ad_rejects_odd_elements() {
        let c = clifford_op(&WElement::f_upper(2, 1));
        assert!(matches!(ad_of(&c), Err(Error::NotDegreeTwo(_))));
    }

    #[test]
    fn ad_inverse_of_rotation() {
        let m = 3;
        let mut a = Matrix::zeros(m, m);
        a[(0, 1)] = int(1);
        a[(1, 0)] = int(-1);
        let c = ad_inverse(&psi4(&a).unwrap()).unwrap();
        let e: Vec<SpinorOp> = e_basis(m).iter().map(clifford_op).collect();
        let shape = e[m].compose(&e[m + 1]).sub(&e[0].compose(&e[1]));
        // ad(E_a E_b)(w) = 2Q(a,w)b − 2Q(b,w)a fixes the scalar at 1/2.
        assert_eq!(c, shape.scale(&frac(1, 2)));
        assert!(ad_inverse(&Matrix::zeros(4, 4)).unwrap().is_zero());
    }

    #[test]
    fn ad_inverse_acts_on_covectors_by_a() {
        let mut r = rng(3);
        for m in 2..=4 {
            let mut a = Matrix::zeros(m, m);
            for i in 0..m {
                for j in i + 1..m {
                    let v = int(r.gen_range(-3..=3));
                    a[(i, j)] = v.clone();
                    a[(j, i)] = -v;
                }
            }
            let c = ad_inverse(&psi4(&a).unwrap()).unwrap();
            for j in 0..m {
                let img = c.apply(&Spinor::basis(m, 1 << j));
                let expect = Spinor::from_map(m, (0..m).map(|i| (1u32 << i, a[(i, j)].clone())).collect());
                assert_eq!(img, expect);
            }
        }
    }

    #[test]
    fn ad_inverse_rejects_non_antisymmetric() {
        assert!(matches!(ad_inverse(&Matrix::identity(4)), Err(Error::NotAntisymmetric(_))));
    }

    #[test]
    fn psi4_is_q_antisymmetric() {
        assert!(psi4(&Matrix::zeros(3, 3)).unwrap().is_zero());
        assert!(psi4(&Matrix::identity(2)).is_err());
        let mut a = Matrix::zeros(3, 3);
        a[(0, 2)] = int(2);
        a[(2, 0)] = int(-2);
        assert!(is_q_antisymmetric(&psi4(&a).unwrap()));
    }

    #[test]
    fn nu_examples() {
        let nu = nu_op(2);
        assert_eq!(nu.apply(&Spinor::basis(2, 0b01)), Spinor::basis(2, 0b10));
        let nu4 = nu_op(4);
        let star4 = hodge_star_op(4);
        assert_eq!(nu4.block(2, 2), star4.block(2, 2).scale(&int(-1)));
    }

    #[test]
    fn nu_is_signed_hodge_star() {
        for m in 1..=6 {
            let nu = nu_op(m);
            let star = hodge_star_op(m);
            for r in 0..=m {
                assert_eq!(nu.block(r, m - r), star.block(r, m - r).scale(&nu_sign(m, r)), "m={m} r={r}");
            }
        }
    }

    #[test]
    fn nu_commutes_with_rotations() {
        for m in 2..=4 {
            let nu = nu_op(m);
            for i in 0..m {
                for j in i + 1..m {
                    let mut a = Matrix::zeros(m, m);
                    a[(i, j)] = int(1);
                    a[(j, i)] = int(-1);
                    let c = ad_inverse(&psi4(&a).unwrap()).unwrap();
                    assert!(c.commutator(&nu).is_zero());
                }
            }
        }
    }

    #[test]
    fn hodge_star_examples() {
        assert_eq!(hodge_star(&Spinor::basis(2, 0)), Spinor::basis(2, 0b11));
        assert_eq!(hodge_star(&Spinor::basis(2, 0b11)), Spinor::basis(2, 0));
        assert_eq!(hodge_star(&Spinor::basis(3, 0b001)), Spinor::basis(3, 0b110));
    }

    #[test]
    fn star_star_sign() {
        for m in 1..=6 {
            let s = hodge_star_op(m);
            let ss = s.compose(&s);
            for r in 0..=m {
                let sign = crate::rational::sign_pow(r * (m - r));
                assert_eq!(ss.block(r, r), Matrix::identity(ss.block(r, r).rows()).scale(&sign));
            }
        }
    }

    #[test]
    fn ad_is_a_homomorphism() {
        let mut r = rng(11);
        for m in 1..=3 {
            for _ in 0..4 {
                let x = sample_so_w(m, &mut r);
                let y = sample_so_w(m, &mut r);
                let (cx, cy) = (ad_inverse(&x).unwrap(), ad_inverse(&y).unwrap());
                assert_eq!(ad_of(&cx.commutator(&cy)).unwrap(), x.commutator(&y));
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn ad_round_trip(m in 1usize..=3, seed in any::<u64>()) {
            let x = sample_so_w(m, &mut rng(seed));
            prop_assert!(is_q_antisymmetric(&x));
            let c = ad_inverse(&x).unwrap();
            prop_assert_eq!(ad_of(&c).unwrap(), x);
            prop_assert_eq!(ad_inverse(&ad_of(&c).unwrap()).unwrap(), c);
        }

        #[test]
        fn clifford_relation_random(m in 1usize..=4, seed in any::<u64>()) {
            let mut r = rng(seed);
            let (w, v) = (WElement::sample(m, &mut r), WElement::sample(m, &mut r));
            let lhs = clifford_op(&w).anticommutator(&clifford_op(&v));
            prop_assert_eq!(lhs, SpinorOp::scalar(m, int(-2) * quad_q(&w, &v)));
        }

        #[test]
        fn quad_q_symmetric(m in 1usize..=4, seed in any::<u64>()) {
            let mut r = rng(seed);
            let (w, v) = (WElement::sample(m, &mut r), WElement::sample(m, &mut r));
            prop_assert_eq!(quad_q(&w, &v), quad_q(&v, &w));
        }
    }
}
