//! `sl(2,K)`, `su_K(1,1)`, the superalgebras `su_K(1,1)_sup` and `L`, and the
//! embedding `ι` between them.
//!
//! Operators on `K²` are real `2d × 2d` matrices (`d = dim K`) acting on the
//! coordinates `(u₁ coords, u₂ coords)`. On `W = V ⊕ V*` with `V = Kⁿ`, the
//! real part `k` of component `a` sits at index `k·n + a` of the `X` block, and
//! likewise in the `ξ` block.

use num_traits::{One, Zero};
use rand::Rng;

use crate::clifford::{is_q_antisymmetric, q_gram};
use crate::error::{Error, Result};
use crate::linalg::{canonical_basis, sparse_rank, Matrix, SparseSpan};
use crate::normed_algebra::{Algebra, NormedElement};
use crate::rational::{frac, int, Rational};

pub type K2Operator = Matrix;
pub type SoW = Matrix;
pub type HomVW = Matrix;

/// A 2×2 matrix over `K`, row-major.
pub type KMat2 = [[NormedElement; 2]; 2];

/// Matrix of `x ↦ x·a` on `K` as a real vector space.
pub fn right_mult(a: &NormedElement) -> Matrix {
    let alg = a.algebra();
    let d = alg.dim();
    let mut m = Matrix::zeros(d, d);
    for k in 0..d {
        m.set_column(k, (&NormedElement::basis(alg, k) * a).coords());
    }
    m
}

/// Matrix of `x ↦ a·x` on `K`.
pub fn left_mult(a: &NormedElement) -> Matrix {
    let alg = a.algebra();
    let d = alg.dim();
    let mut m = Matrix::zeros(d, d);
    for k in 0..d {
        m.set_column(k, (a * &NormedElement::basis(alg, k)).coords());
    }
    m
}

/// `φ_A(u) = u A*`, that is `(φ_A u)_j = Σ_i u_i conj(A_{ji})`.
pub fn phi(a: &KMat2) -> K2Operator {
    let alg = a[0][0].algebra();
    let d = alg.dim();
    let mut m = Matrix::zeros(2 * d, 2 * d);
    for i in 0..2 {
        for k in 0..d {
            let e = NormedElement::basis(alg, k);
            let mut col = Vec::with_capacity(2 * d);
            for j in 0..2 {
                col.extend_from_slice((&e * &a[j][i].conj()).coords());
            }
            m.set_column(i * d + k, &col);
        }
    }
    m
}

/// Recovers `A` from `φ_A`, valid for associative `K` (where `φ` is left `K`-linear).
pub fn phi_inverse(op: &K2Operator, alg: Algebra) -> KMat2 {
    let d = alg.dim();
    let img = |i: usize, j: usize| {
        let col = op.column(i * d);
        NormedElement::new(alg, col[j * d..(j + 1) * d].to_vec()).unwrap().conj()
    };
    // φ(ε₁) = (conj A₁₁, conj A₂₁), φ(ε₂) = (conj A₁₂, conj A₂₂)
    [[img(0, 0), img(1, 0)], [img(0, 1), img(1, 1)]]
}

pub fn kmat(alg: Algebra, entries: [[&[i64]; 2]; 2]) -> KMat2 {
    let e = |c: &[i64]| {
        let mut v = vec![0; alg.dim()];
        v[..c.len()].copy_from_slice(c);
        NormedElement::from_ints(alg, &v).unwrap()
    };
    [[e(entries[0][0]), e(entries[0][1])], [e(entries[1][0]), e(entries[1][1])]]
}

fn kmat_from(alg: Algebra, f: impl Fn(usize, usize) -> NormedElement) -> KMat2 {
    let _ = alg;
    [[f(0, 0), f(0, 1)], [f(1, 0), f(1, 1)]]
}

pub fn kmat_mul(a: &KMat2, b: &KMat2) -> KMat2 {
    kmat_from(a[0][0].algebra(), |i, j| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]))
}

pub fn kmat_sub(a: &KMat2, b: &KMat2) -> KMat2 {
    kmat_from(a[0][0].algebra(), |i, j| &a[i][j] - &b[i][j])
}

pub fn kmat_star(a: &KMat2) -> KMat2 {
    kmat_from(a[0][0].algebra(), |i, j| a[j][i].conj())
}

/// Trace-free generators `diag(e_k, −e_k)`, `E₁₂e_k`, `E₂₁e_k`.
pub fn trace_free_generators(alg: Algebra) -> Vec<K2Operator> {
    let z = NormedElement::zero(alg);
    let mut out = Vec::new();
    for k in 0..alg.dim() {
        let e = NormedElement::basis(alg, k);
        out.push(phi(&[[e.clone(), z.clone()], [z.clone(), -&e]]));
        out.push(phi(&[[z.clone(), e.clone()], [z.clone(), z.clone()]]));
        out.push(phi(&[[z.clone(), z.clone()], [e.clone(), z.clone()]]));
    }
    out
}

fn matrices_to_canonical(mats: &[Matrix]) -> Vec<Matrix> {
    let Some(first) = mats.first() else { return Vec::new() };
    let (r, c) = (first.rows(), first.cols());
    let flat: Vec<Vec<Rational>> = mats.iter().map(Matrix::flatten).collect();
    canonical_basis(&flat, r * c).into_iter().map(|v| Matrix::from_flat(r, c, v)).collect()
}

/// Basis (reduced echelon, in flattened coordinates) of the Lie algebra generated by `gens`.
pub fn lie_closure(gens: &[Matrix]) -> Vec<Matrix> {
    let mut span = SparseSpan::new();
    let mut basis: Vec<Matrix> = Vec::new();
    for g in gens {
        if span.insert(g.to_sparse()) {
            basis.push(g.clone());
        }
    }
    let mut k = 0;
    while k < basis.len() {
        for j in 0..k {
            let b = basis[j].commutator(&basis[k]);
            if span.insert(b.to_sparse()) {
                basis.push(b);
            }
        }
        k += 1;
    }
    matrices_to_canonical(&basis)
}

pub fn span_dim(mats: &[Matrix]) -> usize {
    sparse_rank(mats.iter().map(Matrix::to_sparse))
}

pub fn in_span(basis: &[Matrix], x: &Matrix) -> bool {
    let mut span = SparseSpan::new();
    for b in basis {
        span.insert(b.to_sparse());
    }
    span.contains(&x.to_sparse())
}

/// Gram matrix of `q̌(u,v) = Re(½(u₁v̄₂ + u₂v̄₁))` on the real coordinates of `K²`.
pub fn q_check_gram(alg: Algebra) -> Matrix {
    q_gram(alg.dim())
}

pub fn sl_basis(alg: Algebra) -> Vec<K2Operator> {
    lie_closure(&trace_free_generators(alg))
}

/// The `q̌`-antisymmetric part of `sl(2,K)`.
pub fn su_basis(alg: Algebra) -> Vec<K2Operator> {
    let sl = sl_basis(alg);
    antisymmetric_subalgebra(&sl, &q_check_gram(alg))
}

/// Elements `Σ c_i b_i` of the span of `basis` with `xᵀG + Gx = 0`.
pub fn antisymmetric_subalgebra(basis: &[Matrix], gram: &Matrix) -> Vec<Matrix> {
    let cols: Vec<Vec<Rational>> =
        basis.iter().map(|b| (&(&b.transpose() * gram) + &(gram * b)).flatten()).collect();
    let n = gram.rows();
    let sys = Matrix::from_columns(n * n, &cols);
    let combos = sys.nullspace();
    let elems: Vec<Matrix> = combos
        .iter()
        .map(|c| {
            c.iter()
                .zip(basis)
                .filter(|(a, _)| !a.is_zero())
                .fold(Matrix::zeros(n, n), |acc, (a, b)| &acc + &b.scale(a))
        })
        .collect();
    matrices_to_canonical(&elems)
}

pub fn is_q_check_antisymmetric(x: &K2Operator) -> bool {
    is_q_antisymmetric(x)
}

/// `φ_{√−1·I₂}`, the generator added to `su_C(1,1)` to form `u_C(1,1)`.
pub fn u1_generator() -> K2Operator {
    let i = NormedElement::basis(Algebra::C, 1);
    let z = NormedElement::zero(Algebra::C);
    phi(&[[i.clone(), z.clone()], [z, i]])
}

pub fn uc11_basis() -> Vec<K2Operator> {
    let mut b = su_basis(Algebra::C);
    b.push(u1_generator());
    b
}

/// `u_K(1,1)`: equal to `su_K(1,1)` except for `K = C`.
pub fn u_basis(alg: Algebra) -> Vec<K2Operator> {
    if alg == Algebra::C {
        uc11_basis()
    } else {
        su_basis(alg)
    }
}

/// Element `(u₁, u₂)` of `K^{1,1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct K11Element {
    pub u1: NormedElement,
    pub u2: NormedElement,
}

impl K11Element {
    pub fn new(u1: NormedElement, u2: NormedElement) -> Result<Self> {
        if u1.algebra() != u2.algebra() {
            return Err(Error::Structural("K^{1,1} components from different algebras".into()));
        }
        Ok(Self { u1, u2 })
    }

    pub fn algebra(&self) -> Algebra {
        self.u1.algebra()
    }

    pub fn eps1(alg: Algebra) -> Self {
        Self { u1: NormedElement::one(alg), u2: NormedElement::zero(alg) }
    }

    pub fn eps2(alg: Algebra) -> Self {
        Self { u1: NormedElement::zero(alg), u2: NormedElement::one(alg) }
    }

    /// Real basis: `e_k ε₁` for `k < d`, then `e_k ε₂`.
    pub fn basis(alg: Algebra, i: usize) -> Self {
        let mut v = vec![Rational::zero(); 2 * alg.dim()];
        v[i] = Rational::one();
        Self::from_real(alg, &v)
    }

    pub fn basis_all(alg: Algebra) -> Vec<Self> {
        (0..2 * alg.dim()).map(|i| Self::basis(alg, i)).collect()
    }

    pub fn from_real(alg: Algebra, v: &[Rational]) -> Self {
        let d = alg.dim();
        Self {
            u1: NormedElement::new(alg, v[..d].to_vec()).unwrap(),
            u2: NormedElement::new(alg, v[d..].to_vec()).unwrap(),
        }
    }

    pub fn to_real(&self) -> Vec<Rational> {
        self.u1.coords().iter().chain(self.u2.coords()).cloned().collect()
    }

    pub fn scale_left(&self, a: &NormedElement) -> Self {
        Self { u1: a * &self.u1, u2: a * &self.u2 }
    }

    /// `u = u₁ᵣ + u₁ᵢ + u₂ᵣ + u₂ᵢ` along `Rε₁ ⊕ ImKε₁ ⊕ Rε₂ ⊕ ImKε₂`.
    pub fn decompose(&self) -> [Self; 4] {
        let alg = self.algebra();
        let z = NormedElement::zero(alg);
        [
            Self { u1: NormedElement::real(alg, self.u1.re()), u2: z.clone() },
            Self { u1: self.u1.im(), u2: z.clone() },
            Self { u1: z.clone(), u2: NormedElement::real(alg, self.u2.re()) },
            Self { u1: z, u2: self.u2.im() },
        ]
    }

    pub fn apply(&self, op: &K2Operator) -> Self {
        Self::from_real(self.algebra(), &op.apply(&self.to_real()))
    }

    pub fn sample(alg: Algebra, rng: &mut impl Rng) -> Self {
        Self { u1: NormedElement::sample(alg, rng), u2: NormedElement::sample(alg, rng) }
    }
}

pub fn q_check(u: &K11Element, v: &K11Element) -> Rational {
    (&(&u.u1 * &v.u2.conj()) + &(&u.u2 * &v.u1.conj())).re() / int(2)
}

/// `Q̂(u, u') = Σ_j Q(u(f^j), u'(f^j))` on `Hom(V*, W)`.
pub fn q_hat(u: &HomVW, v: &HomVW) -> Rational {
    let g = q_gram(u.rows() / 2);
    let gv = &g * v;
    u.entries().iter().zip(gv.entries()).map(|(a, b)| a * b).fold(Rational::zero(), |s, x| s + x)
}

/// Superalgebra `a ⊕ U ⊕ R` over a quadratic space.
///
/// The odd part is stored as a matrix so that both `K^{1,1}` (one column)
/// and `Hom(V*, W)` (`m` columns) fit; the form is `tr(uᵀ G v)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SuperElem {
    pub even: Matrix,
    pub odd: Matrix,
    pub scalar: Rational,
}

pub type SuperElement = SuperElem;
pub type LElement = SuperElem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Grade {
    Even,
    Odd,
    Center,
}

impl SuperElem {
    pub fn zero(n: usize, odd_cols: usize) -> Self {
        Self { even: Matrix::zeros(n, n), odd: Matrix::zeros(n, odd_cols), scalar: Rational::zero() }
    }

    pub fn even(x: Matrix, odd_cols: usize) -> Self {
        let n = x.rows();
        Self { even: x, odd: Matrix::zeros(n, odd_cols), scalar: Rational::zero() }
    }

    pub fn odd(u: Matrix) -> Self {
        let n = u.rows();
        Self { even: Matrix::zeros(n, n), odd: u, scalar: Rational::zero() }
    }

    pub fn center(n: usize, odd_cols: usize, a: Rational) -> Self {
        Self { even: Matrix::zeros(n, n), odd: Matrix::zeros(n, odd_cols), scalar: a }
    }

    /// Element of `su_K(1,1)_sup` from a triple `(x, u, a)`.
    pub fn sup(x: K2Operator, u: &K11Element, a: Rational) -> Self {
        let v = u.to_real();
        Self { even: x, odd: Matrix::from_columns(v.len(), &[v]), scalar: a }
    }

    pub fn odd_k11(&self, alg: Algebra) -> K11Element {
        K11Element::from_real(alg, &self.odd.column(0))
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero() && self.scalar.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { even: &self.even + &o.even, odd: &self.odd + &o.odd, scalar: &self.scalar + &o.scalar }
    }

    pub fn scale(&self, a: &Rational) -> Self {
        Self { even: self.even.scale(a), odd: self.odd.scale(a), scalar: &self.scalar * a }
    }

    /// The grade if homogeneous (zero counts as even).
    pub fn grade(&self) -> Option<Grade> {
        match (self.even.is_zero(), self.odd.is_zero(), self.scalar.is_zero()) {
            (_, true, true) => Some(Grade::Even),
            (true, false, true) => Some(Grade::Odd),
            (true, true, false) => Some(Grade::Center),
            _ => None,
        }
    }

    pub fn is_odd(&self) -> bool {
        self.grade() == Some(Grade::Odd)
    }
}

/// `[x+u+a, y+v+b] = ([x,y], x(v) − y(u), −2⟨u,v⟩)` with `⟨u,v⟩ = tr(uᵀ G v)`.
pub fn super_bracket(p: &SuperElem, q: &SuperElem, gram: &Matrix) -> SuperElem {
    let gv = gram * &q.odd;
    let form = p.odd.entries().iter().zip(gv.entries()).map(|(a, b)| a * b).fold(Rational::zero(), |s, x| s + x);
    SuperElem {
        even: p.even.commutator(&q.even),
        odd: &(&p.even * &q.odd) - &(&q.even * &p.odd),
        scalar: int(-2) * form,
    }
}

pub fn sup_bracket(p: &SuperElem, q: &SuperElem, alg: Algebra) -> SuperElem {
    super_bracket(p, q, &q_check_gram(alg))
}

/// Bracket of `L = so(W,Q) ⊕ Hom(V*,W) ⊕ R`; the odd form is `Q̂`.
pub fn l_super_bracket(p: &LElement, q: &LElement) -> LElement {
    super_bracket(p, q, &q_gram(p.even.rows() / 2))
}

/// Graded Jacobi `[a,[b,c]] = [[a,b],c] + (−1)^{|a||b|}[b,[a,c]]` for homogeneous inputs.
pub fn graded_jacobi_holds(a: &SuperElem, b: &SuperElem, c: &SuperElem, gram: &Matrix) -> bool {
    let br = |x: &SuperElem, y: &SuperElem| super_bracket(x, y, gram);
    let sign = if a.is_odd() && b.is_odd() { int(-1) } else { int(1) };
    let lhs = br(a, &br(b, c));
    let rhs = br(&br(a, b), c).add(&br(b, &br(a, c)).scale(&sign));
    lhs == rhs
}

/// Graded antisymmetry `[a,b] = −(−1)^{|a||b|}[b,a]`.
pub fn graded_antisymmetry_holds(a: &SuperElem, b: &SuperElem, gram: &Matrix) -> bool {
    let sign = if a.is_odd() && b.is_odd() { int(1) } else { int(-1) };
    super_bracket(a, b, gram) == super_bracket(b, a, gram).scale(&sign)
}

fn check_m(alg: Algebra, n: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::Config("n must be positive".into()));
    }
    if alg == Algebra::O && n != 1 {
        return Err(Error::Unsupported("K = O requires n = 1".into()));
    }
    Ok(n * alg.dim())
}

/// Index in `V = Kⁿ` of real part `k` of component `a`.
pub fn v_index(n: usize, a: usize, k: usize) -> usize {
    k * n + a
}

/// `ι(x)`: `x` applied to each `(x_a, ξ_a) ∈ K²`.
pub fn iota_so(x: &K2Operator, alg: Algebra, n: usize) -> Result<SoW> {
    let m = check_m(alg, n)?;
    let d = alg.dim();
    if x.rows() != 2 * d || !x.is_square() {
        return Err(Error::Structural(format!("operator of size {} on K² with dim K = {d}", x.rows())));
    }
    let w_index = |slot: usize, a: usize| {
        let (half, k) = (slot / d, slot % d);
        half * m + v_index(n, a, k)
    };
    let mut out = Matrix::zeros(2 * m, 2 * m);
    for a in 0..n {
        for i in 0..2 * d {
            for j in 0..2 * d {
                out[(w_index(i, a), w_index(j, a))] = x[(i, j)].clone();
            }
        }
    }
    Ok(out)
}

/// `ι(u)(ξ) = (ξu₁, ξu₂)` as a `2m × m` matrix.
pub fn iota_hom(u: &K11Element, n: usize) -> Result<HomVW> {
    let alg = u.algebra();
    let m = check_m(alg, n)?;
    let d = alg.dim();
    let mut out = Matrix::zeros(2 * m, m);
    for a in 0..n {
        for k in 0..d {
            let e = NormedElement::basis(alg, k);
            let col = v_index(n, a, k);
            let (p1, p2) = (&e * &u.u1, &e * &u.u2);
            for r in 0..d {
                out[(v_index(n, a, r), col)] = p1.coords()[r].clone();
                out[(m + v_index(n, a, r), col)] = p2.coords()[r].clone();
            }
        }
    }
    Ok(out)
}

pub fn iota_scalar(a: &Rational, m: usize) -> Rational {
    a * int(m as i64)
}

pub fn iota_super(p: &SuperElement, alg: Algebra, n: usize) -> Result<LElement> {
    let m = check_m(alg, n)?;
    Ok(LElement {
        even: iota_so(&p.even, alg, n)?,
        odd: iota_hom(&p.odd_k11(alg), n)?,
        scalar: iota_scalar(&p.scalar, m),
    })
}

/// Homogeneous basis of `su_K(1,1)_sup` (or the `u_K(1,1)` variant): even, odd, then the center.
pub fn sup_basis(alg: Algebra, unitary: bool) -> Vec<SuperElement> {
    let even = if unitary { u_basis(alg) } else { su_basis(alg) };
    let zero_u = K11Element::from_real(alg, &vec![Rational::zero(); 2 * alg.dim()]);
    let z = Matrix::zeros(2 * alg.dim(), 2 * alg.dim());
    let mut out: Vec<SuperElement> = even.into_iter().map(|x| SuperElem::sup(x, &zero_u, Rational::zero())).collect();
    out.extend(K11Element::basis_all(alg).iter().map(|u| SuperElem::sup(z.clone(), u, Rational::zero())));
    out.push(SuperElem::sup(z, &zero_u, Rational::one()));
    out
}

/// Basis pairs `(i, j)` with `[ι a_i, ι a_j] ≠ ι[a_i, a_j]`.
pub fn iota_homomorphism_failures(alg: Algebra, n: usize) -> Result<Vec<(usize, usize)>> {
    let basis = sup_basis(alg, true);
    let images: Vec<LElement> = basis.iter().map(|b| iota_super(b, alg, n)).collect::<Result<_>>()?;
    let mut bad = Vec::new();
    for i in 0..basis.len() {
        for j in i..basis.len() {
            let lhs = iota_super(&sup_bracket(&basis[i], &basis[j], alg), alg, n)?;
            if lhs != l_super_bracket(&images[i], &images[j]) {
                bad.push((i, j));
            }
        }
    }
    Ok(bad)
}

/// Whether `ι` is injective on `su_K(1,1)_sup`: rank of the images equals the dimension.
pub fn iota_is_injective(alg: Algebra, n: usize) -> Result<bool> {
    let basis = sup_basis(alg, true);
    let mut span = SparseSpan::new();
    for b in &basis {
        let l = iota_super(b, alg, n)?;
        let mut v = l.even.flatten();
        v.extend(l.odd.flatten());
        v.push(l.scalar);
        span.insert(crate::linalg::dense_to_sparse(&v));
    }
    Ok(span.dim() == basis.len())
}

/// Products `ι(x)∘ι(u)` over bases of `su_O(1,1)` and `O^{1,1}`.
pub fn octonion_products() -> Vec<HomVW> {
    let su = su_basis(Algebra::O);
    let us: Vec<HomVW> = K11Element::basis_all(Algebra::O).iter().map(|u| iota_hom(u, 1).unwrap()).collect();
    let mut out = Vec::with_capacity(su.len() * us.len());
    for x in &su {
        let ix = iota_so(x, Algebra::O, 1).unwrap();
        for u in &us {
            out.push(&ix * u);
        }
    }
    out
}

/// Dimension of `span{ι(x)∘ι(u)}`; `Hom(V*, W)` has dimension 128.
pub fn octonion_span_check() -> usize {
    span_dim(&octonion_products())
}

pub fn octonion_iota_hom_dim() -> usize {
    let us: Vec<HomVW> = K11Element::basis_all(Algebra::O).iter().map(|u| iota_hom(u, 1).unwrap()).collect();
    span_dim(&us)
}

/// Closure data for `ι(su_O) ⊕ ι(su_O)·ι(O^{1,1}) ⊕ R` under the `L` bracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    pub even_even: bool,
    pub even_odd: bool,
    pub odd_odd_scalar: bool,
    pub odd_dim: usize,
}

impl ClosureReport {
    pub fn closed(&self) -> bool {
        self.even_even && self.even_odd && self.odd_odd_scalar
    }
}

pub fn theorem314_closure() -> ClosureReport {
    let su: Vec<SoW> = su_basis(Algebra::O).iter().map(|x| iota_so(x, Algebra::O, 1).unwrap()).collect();
    let odd = octonion_products();
    let mut odd_span = SparseSpan::new();
    let mut odd_basis = Vec::new();
    for h in &odd {
        if odd_span.insert(h.to_sparse()) {
            odd_basis.push(h.clone());
        }
    }
    let even_even = su.iter().enumerate().all(|(i, x)| su[i..].iter().all(|y| in_span(&su, &x.commutator(y))));
    let even_odd = su.iter().all(|x| odd_basis.iter().all(|h| odd_span.contains(&(x * h).to_sparse())));
    let odd_odd_scalar = odd_basis.iter().take(16).all(|h| {
        odd_basis.iter().take(16).all(|g| {
            let b = l_super_bracket(&LElement::odd(h.clone()), &LElement::odd(g.clone()));
            b.even.is_zero() && b.odd.is_zero()
        })
    });
    ClosureReport { even_even, even_odd, odd_odd_scalar, odd_dim: odd_basis.len() }
}

/// Named basis of `su_H(1,1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SuHTag {
    L(usize),
    Lambda(usize),
    K(usize),
    H,
}

impl SuHTag {
    pub const ALL: [SuHTag; 10] = [
        SuHTag::L(1),
        SuHTag::L(2),
        SuHTag::L(3),
        SuHTag::Lambda(1),
        SuHTag::Lambda(2),
        SuHTag::Lambda(3),
        SuHTag::K(1),
        SuHTag::K(2),
        SuHTag::K(3),
        SuHTag::H,
    ];

    pub fn name(self) -> String {
        match self {
            SuHTag::L(s) => format!("L{s}"),
            SuHTag::Lambda(s) => format!("Lambda{s}"),
            SuHTag::K(s) => format!("K{s}"),
            SuHTag::H => "H".into(),
        }
    }

    /// The 2×2 quaternionic matrix: `L_s = (0 0; −J_s 0)`, `Λ_s = (0 J_s; 0 0)`,
    /// `K_s = diag(J_s, J_s)`, `H = diag(−1, 1)` with `J_s = e_s`.
    pub fn matrix(self) -> Result<KMat2> {
        let alg = Algebra::H;
        let z = NormedElement::zero(alg);
        let j = |s: usize| -> Result<NormedElement> {
            if (1..=3).contains(&s) {
                Ok(NormedElement::basis(alg, s))
            } else {
                Err(Error::Structural(format!("quaternion unit index {s} out of range")))
            }
        };
        Ok(match self {
            SuHTag::L(s) => [[z.clone(), z.clone()], [-&j(s)?, z]],
            SuHTag::Lambda(s) => [[z.clone(), j(s)?], [z.clone(), z]],
            SuHTag::K(s) => [[j(s)?, z.clone()], [z, j(s)?]],
            SuHTag::H => [[NormedElement::real(alg, int(-1)), z.clone()], [z, NormedElement::one(alg)]],
        })
    }

    pub fn operator(self) -> Result<K2Operator> {
        Ok(phi(&self.matrix()?))
    }
}

/// Hermitian matrix `(α+β, x; x̄, α−β)` with slots `(α, β, x₀, x₁, x₂, x₃)`.
fn hermitian(v: &[Rational]) -> KMat2 {
    let alg = Algebra::H;
    let x = NormedElement::new(alg, v[2..6].to_vec()).unwrap();
    [
        [NormedElement::real(alg, &v[0] + &v[1]), x.clone()],
        [x.conj(), NormedElement::real(alg, &v[0] - &v[1])],
    ]
}

fn hermitian_coords(h: &KMat2) -> Vec<Rational> {
    let a = h[0][0].re();
    let b = h[1][1].re();
    let mut v = vec![(&a + &b) / int(2), (&a - &b) / int(2)];
    v.extend_from_slice(h[0][1].coords());
    v
}

/// `τ_*(A): h ↦ A h + h A*` on hermitian 2×2 quaternionic matrices, in slot coordinates.
pub fn tau_star_matrix(a: &KMat2) -> Matrix {
    let mut out = Matrix::zeros(6, 6);
    for j in 0..6 {
        let mut e = vec![Rational::zero(); 6];
        e[j] = Rational::one();
        let h = hermitian(&e);
        let ah = kmat_mul(a, &h);
        let ha = kmat_mul(&h, &kmat_star(a));
        let img = kmat_from(Algebra::H, |r, c| &ah[r][c] + &ha[r][c]);
        out.set_column(j, &hermitian_coords(&img));
    }
    out
}

pub fn tau_star(tag: SuHTag) -> Result<Matrix> {
    Ok(tau_star_matrix(&tag.matrix()?))
}

/// `τ_*` of an operator in `su_H(1,1)`, through `A = φ⁻¹(x)`.
pub fn tau_star_of_operator(x: &K2Operator) -> Matrix {
    tau_star_matrix(&phi_inverse(x, Algebra::H))
}

fn e6(i: usize, j: usize) -> Matrix {
    Matrix::unit(6, 6, i - 1, j - 1)
}

/// The images listed for `τ_*` on the named basis, as printed.
pub fn tau_star_stated(tag: SuHTag) -> Matrix {
    match tag {
        SuHTag::L(s) => {
            let t = 3 + s;
            &(&(&e6(1, t) + &e6(t, 1)) - &e6(2, t)) + &e6(t, 2)
        }
        SuHTag::Lambda(s) => {
            let t = 3 + s;
            &(&(&e6(1, t) + &e6(t, 1)) + &e6(2, t)) - &e6(t, 2)
        }
        SuHTag::K(1) => (&e6(6, 5) - &e6(5, 6)).scale(&int(2)),
        SuHTag::K(2) => (&e6(4, 6) - &e6(6, 4)).scale(&int(2)),
        SuHTag::K(_) => (&e6(5, 4) - &e6(4, 5)).scale(&int(2)),
        SuHTag::H => (&e6(1, 2) + &e6(2, 1)).scale(&int(2)),
    }
}

/// Unordered basis pairs of `su_H(1,1)` on which `τ_*` fails to preserve brackets.
pub fn tau_star_homomorphism_failures() -> Vec<(SuHTag, SuHTag)> {
    let tags = SuHTag::ALL;
    let mut bad = Vec::new();
    for (i, a) in tags.iter().enumerate() {
        for b in &tags[i + 1..] {
            let (xa, xb) = (a.operator().unwrap(), b.operator().unwrap());
            let lhs = tau_star_of_operator(&xa.commutator(&xb));
            let rhs = tau_star(*a).unwrap().commutator(&tau_star(*b).unwrap());
            if lhs != rhs {
                bad.push((*a, *b));
            }
        }
    }
    bad
}

/// Outcome of the twisted-isomorphism checks for `φ(x) = p x q̄`, `θ(α) = q α q̄`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistReport {
    pub twist_law: bool,
    pub preserves_q_check: bool,
    pub preserves_iota_image: bool,
}

impl TwistReport {
    pub fn all(&self) -> bool {
        self.twist_law && self.preserves_q_check && self.preserves_iota_image
    }
}

pub fn twist_equivariance(p: &NormedElement, q: &NormedElement) -> Result<TwistReport> {
    let alg = Algebra::H;
    if p.algebra() != alg || q.algebra() != alg {
        return Err(Error::Structural("twist checks are defined for K = H".into()));
    }
    if p.norm_sq() != int(1) || q.norm_sq() != int(1) {
        return Err(Error::Structural("twist parameters must be unit quaternions".into()));
    }
    let qb = q.conj();
    let phi_v = |x: &NormedElement| &(p * x) * &qb;
    let theta = |a: &NormedElement| &(q * a) * &qb;

    let basis: Vec<NormedElement> = (0..4).map(|k| NormedElement::basis(alg, k)).collect();
    let twist_law = basis.iter().all(|x| basis.iter().all(|a| phi_v(&(x * a)) == &phi_v(x) * &theta(a)));

    let us = K11Element::basis_all(alg);
    let act = |u: &K11Element| K11Element { u1: theta(&u.u1), u2: theta(&u.u2) };
    let preserves_q_check = us.iter().all(|u| us.iter().all(|v| q_check(&act(u), &act(v)) == q_check(u, v)));

    // φ on V = H, and its action on W and on Hom(V*, W).
    let mut mphi = Matrix::zeros(4, 4);
    for (k, e) in basis.iter().enumerate() {
        mphi.set_column(k, phi_v(e).coords());
    }
    let g = Matrix::from_fn(8, 8, |i, j| {
        if i / 4 == j / 4 {
            mphi[(i % 4, j % 4)].clone()
        } else {
            Rational::zero()
        }
    });
    let g_inv = g.transpose();
    let mphi_inv = mphi.transpose();

    let su: Vec<SoW> = su_basis(alg).iter().map(|x| iota_so(x, alg, 1)).collect::<Result<_>>()?;
    let homs: Vec<HomVW> = us.iter().map(|u| iota_hom(u, 1)).collect::<Result<_>>()?;
    let even_ok = su.iter().all(|x| in_span(&su, &(&(&g * x) * &g_inv)));
    let odd_ok = homs.iter().all(|h| in_span(&homs, &(&(&g * h) * &mphi_inv)));
    Ok(TwistReport { twist_law, preserves_q_check, preserves_iota_image: even_ok && odd_ok })
}

/// Small random element of the span of `basis`.
pub fn sample_in_span(basis: &[Matrix], rng: &mut impl Rng) -> Matrix {
    let (r, c) = (basis[0].rows(), basis[0].cols());
    basis.iter().fold(Matrix::zeros(r, c), |acc, b| &acc + &b.scale(&frac(rng.gen_range(-3..=3), rng.gen_range(1..=2))))
}
