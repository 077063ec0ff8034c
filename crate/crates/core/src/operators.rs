//! The operators `ρ_x`, `D_u` and `Δ` on forms over flat `R^m`, and the
//! exact identities relating them to the superalgebras of [`crate::lie_super`].
//!
//! Sections of `so(W,Q)` and `Hom(V*,W)` are matrices with polynomial entries,
//! stored as `Σ y^α M_α`. A `Hom(V*,W)` matrix has column `j` equal to
//! `u(f^j)` in `W` coordinates.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};
use rand::Rng;

use crate::check::Check;
use crate::clifford::{clifford_op, epsilon, iota, nu_op, q_gram, sample_so_w, SpinorOp, WElement};
use crate::clifford::{ad_inverse, is_q_antisymmetric, Spinor};
use crate::diffop::{DiffOp, PolyForm, Symbol};
use crate::error::{Error, Result};
use crate::lie_super::{
    iota_hom, iota_so, iota_super, octonion_products, q_check, q_check_gram, q_hat, sup_basis, su_basis,
    super_bracket, HomVW, K11Element, LElement, SuperElement,
};
use crate::linalg::{sparse_rank, Matrix};
use crate::normed_algebra::Algebra;
use crate::poly::{Multi, Polynomial};
use crate::rational::{frac, int, sign_pow, Rational};

/// Matrix with polynomial entries, `Σ y^α M_α`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolySection {
    rows: usize,
    cols: usize,
    terms: BTreeMap<Multi, Matrix>,
}

impl PolySection {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, terms: BTreeMap::new() }
    }

    pub fn constant(a: Matrix) -> Self {
        Self::monomial(Multi::ZERO, a)
    }

    pub fn monomial(alpha: Multi, a: Matrix) -> Self {
        let mut s = Self::zero(a.rows(), a.cols());
        if !a.is_zero() {
            s.terms.insert(alpha, a);
        }
        s
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn terms(&self) -> &BTreeMap<Multi, Matrix> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn accumulate(&mut self, alpha: Multi, a: &Matrix) {
        let sum = match self.terms.get(&alpha) {
            Some(x) => x + a,
            None => a.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&alpha);
        } else {
            self.terms.insert(alpha, sum);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (a, m) in &o.terms {
            out.accumulate(*a, m);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.rows, self.cols);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(a, m)| (*a, m.scale(c))).collect();
        }
        out
    }

    /// Pointwise matrix product.
    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.rows, o.cols);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                out.accumulate(a.add(b), &(x * y));
            }
        }
        out
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn times_poly(&self, p: &Polynomial) -> Self {
        let mut out = Self::zero(self.rows, self.cols);
        for (a, x) in &self.terms {
            for (b, c) in p.terms() {
                out.accumulate(a.add(b), &x.scale(c));
            }
        }
        out
    }

    /// `∂/∂y_j` entrywise.
    pub fn derivative(&self, j: usize) -> Self {
        let mut out = Self::zero(self.rows, self.cols);
        for (a, x) in &self.terms {
            if a.0[j] > 0 {
                let mut e = a.0;
                e[j] -= 1;
                out.accumulate(Multi(e), &x.scale(&int(a.0[j] as i64)));
            }
        }
        out
    }

    pub fn eval(&self, p: &[Rational]) -> Matrix {
        let mut out = Matrix::zeros(self.rows, self.cols);
        for (a, x) in &self.terms {
            out = &out + &x.scale(&Polynomial::monomial(*a, Rational::one()).eval(p));
        }
        out
    }

    /// Every coefficient is `Q`-antisymmetric, hence so is every value.
    pub fn is_q_antisymmetric(&self) -> bool {
        self.rows == self.cols && self.terms.values().all(is_q_antisymmetric)
    }

    /// Random `so(W,Q)` section of coefficient degree `≤ deg`.
    pub fn sample_so(m: usize, deg: usize, rng: &mut impl Rng) -> Self {
        let mut out = Self::zero(2 * m, 2 * m);
        for d in 0..=deg {
            let monos = Multi::all_of_degree(m, d);
            let alpha = monos[rng.gen_range(0..monos.len())];
            out.accumulate(alpha, &sample_so_w(m, rng));
        }
        out
    }

    /// Random `Hom(V*,W)` section of coefficient degree `≤ deg`.
    pub fn sample_hom(m: usize, deg: usize, rng: &mut impl Rng) -> Self {
        let mut out = Self::zero(2 * m, m);
        for d in 0..=deg {
            let monos = Multi::all_of_degree(m, d);
            let alpha = monos[rng.gen_range(0..monos.len())];
            let a = Matrix::from_fn(2 * m, m, |_, _| int(rng.gen_range(-2..=2)));
            out.accumulate(alpha, &a);
        }
        out
    }

    /// Random section `Σ y^α b_α` with each `b_α` a random combination of `basis`.
    pub fn sample_in(basis: &[Matrix], m: usize, deg: usize, rng: &mut impl Rng) -> Self {
        let (r, c) = (basis[0].rows(), basis[0].cols());
        let mut out = Self::zero(r, c);
        for d in 0..=deg {
            let monos = Multi::all_of_degree(m, d);
            let alpha = monos[rng.gen_range(0..monos.len())];
            let mut a = Matrix::zeros(r, c);
            for _ in 0..2 {
                let b = &basis[rng.gen_range(0..basis.len())];
                a = &a + &b.scale(&int(rng.gen_range(1..=2)));
            }
            out.accumulate(alpha, &a);
        }
        out
    }
}

/// `d = Σ ε_j ∂_j`.
pub fn d_op(m: usize) -> DiffOp {
    (0..m).fold(DiffOp::zero(m), |acc, j| acc.add(&DiffOp::term(Multi::ZERO, epsilon(m, j + 1), Multi::unit(j))))
}

/// `d* = −Σ ι_j ∂_j`.
pub fn d_star_op(m: usize) -> DiffOp {
    (0..m).fold(DiffOp::zero(m), |acc, j| acc.sub(&DiffOp::term(Multi::ZERO, iota(m, j + 1), Multi::unit(j))))
}

/// `Δ = {d*, d}`.
pub fn laplacian(m: usize) -> DiffOp {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<DiffOp>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(l) = cache.lock().unwrap().get(&m) {
        return (**l).clone();
    }
    let l = Arc::new(d_star_op(m).anticommutator(&d_op(m)));
    (**cache.lock().unwrap().entry(m).or_insert(l)).clone()
}

/// `−Σ ∂_j²` built directly.
pub fn coordinate_laplacian(m: usize) -> DiffOp {
    (0..m).fold(DiffOp::zero(m), |acc, j| {
        acc.sub(&DiffOp::term(Multi::ZERO, SpinorOp::identity(m), Multi::unit(j).add(&Multi::unit(j))))
    })
}

/// `ρ_x = Σ y^α ad⁻¹(x_α)`.
pub fn rho_op(x: &PolySection) -> Result<DiffOp> {
    if !x.is_q_antisymmetric() {
        return Err(Error::NotAntisymmetric("ρ needs a Q-antisymmetric section".into()));
    }
    let m = x.rows() / 2;
    let mut out = DiffOp::zero(m);
    for (a, c) in x.terms() {
        out = out.add(&DiffOp::term(*a, ad_inverse(c)?, Multi::ZERO));
    }
    Ok(out)
}

pub fn rho_const(x: &Matrix) -> Result<DiffOp> {
    rho_op(&PolySection::constant(x.clone()))
}

fn column_op(u: &Matrix, j: usize) -> SpinorOp {
    clifford_op(&WElement::from_coords(&u.column(j)))
}

/// `D_u = Σ_j E_{u(f^j)} ∂_j`.
pub fn d_op_u(u: &PolySection) -> DiffOp {
    let m = u.cols();
    let mut out = DiffOp::zero(m);
    for (a, c) in u.terms() {
        for j in 0..m {
            out = out.add(&DiffOp::term(*a, column_op(c, j), Multi::unit(j)));
        }
    }
    out
}

pub fn d_const(u: &HomVW) -> DiffOp {
    d_op_u(&PolySection::constant(u.clone()))
}

/// `D_u x = Σ_j E_{u(f^j)} ∘ ad⁻¹(∂_j x)`, an operator of order zero.
pub fn d_u_x(u: &PolySection, x: &PolySection) -> Result<DiffOp> {
    let m = u.cols();
    let mut out = DiffOp::zero(m);
    for j in 0..m {
        let dx = x.derivative(j);
        for (a, c) in u.terms() {
            let e = DiffOp::term(*a, column_op(c, j), Multi::ZERO);
            out = out.add(&e.compose(&rho_op(&dx)?));
        }
    }
    Ok(out)
}

/// `Ψ(x, u, f) = ρ_x + D_u − (1/m) f Δ` on sections of `L`.
pub fn psi_l(x: &PolySection, u: &PolySection, f: &Polynomial) -> Result<DiffOp> {
    let m = u.cols();
    let lap = DiffOp::multiply(m, f).compose(&laplacian(m)).scale(&frac(-1, m as i64));
    Ok(rho_op(x)?.add(&d_op_u(u)).add(&lap))
}

/// `Ψ` on a constant element of `L`.
pub fn psi_l_elem(e: &LElement) -> Result<DiffOp> {
    psi_l(&PolySection::constant(e.even.clone()), &PolySection::constant(e.odd.clone()), &Polynomial::constant(e.scalar.clone()))
}

/// `ρ_ν⁻¹`, using `ν² = ±1`.
fn nu_inverse(m: usize) -> Result<SpinorOp> {
    let nu = nu_op(m);
    let sq = nu.compose(&nu);
    for c in [int(1), int(-1)] {
        if sq == SpinorOp::scalar(m, c.clone()) {
            return Ok(nu.scale(&c));
        }
    }
    Err(Error::Structural("ν² is not ±1".into()))
}

/// Label of the `i`-th real basis vector of `K^{1,1}`: `eps1`, `i.eps2`, `e5.eps1`, ...
pub fn k11_basis_name(alg: Algebra, i: usize) -> String {
    let d = alg.dim();
    let (k, s) = (i % d, i / d + 1);
    let unit = match (alg, k) {
        (_, 0) => String::new(),
        (Algebra::C | Algebra::H, 1) => "i.".into(),
        (Algebra::H, 2) => "j.".into(),
        (Algebra::H, 3) => "k.".into(),
        _ => format!("e{k}."),
    };
    format!("{unit}eps{s}")
}

/// The identities `d² = 0`, `{d, d*} = Δ`, `[Δ, d] = 0`, the symbol formulas,
/// `D_{ε₂} = d`, `D_{ε₁} = d*` and the `ν`-conjugation on flat `R^m`.
pub fn flat_identities(m: usize) -> Result<Vec<Check>> {
    let (d, ds, lap) = (d_op(m), d_star_op(m), laplacian(m));
    let zero = DiffOp::zero(m);
    let mut out = vec![
        Check::equal("d.d=0", &d.compose(&d), &zero),
        Check::equal("dstar.dstar=0", &ds.compose(&ds), &zero),
        Check::equal("laplacian=-sum-d2", &lap, &coordinate_laplacian(m)),
        Check::equal("laplacian.commutes-d", &lap.commutator(&d), &zero),
        Check::equal("laplacian.commutes-dstar", &lap.commutator(&ds), &zero),
    ];
    let y1sq = PolyForm::monomial(m, Multi::unit(0).add(&Multi::unit(0)), 0, Rational::one());
    out.push(Check::equal("laplacian.y1^2=-2", &lap.apply(&y1sq), &PolyForm::monomial(m, Multi::ZERO, 0, int(-2))));

    let xi: Vec<Rational> = (0..m).map(|j| int(j as i64 + 2)).collect();
    let p = vec![Rational::zero(); m];
    let xi_sq = xi.iter().fold(Rational::zero(), |s, x| s + x * x);
    out.push(Check::equal("symbol.laplacian=-|xi|^2", &lap.symbol(2)?.eval(&p, &xi), &SpinorOp::scalar(m, -xi_sq)));
    let mut w = WElement::zero(m);
    w.xi = xi.clone();
    out.push(Check::equal("symbol.d=clifford(0,xi)", &d.symbol(1)?.eval(&p, &xi), &clifford_op(&w)));

    let eps1 = iota_hom(&K11Element::eps1(Algebra::R), m)?;
    let eps2 = iota_hom(&K11Element::eps2(Algebra::R), m)?;
    out.push(Check::equal("D_eps2=d", &d_const(&eps2), &d));
    out.push(Check::equal("D_eps1=dstar", &d_const(&eps1), &ds));

    let nu = DiffOp::constant(nu_op(m));
    let conj = nu.compose(&d).compose(&DiffOp::constant(nu_inverse(m)?)).scale(&sign_pow(m - 1));
    out.push(Check::equal("D_eps1=nu-conjugate-of-D_eps2", &ds, &conj));
    Ok(out)
}

/// `[ρ_x, D_u] = D_{x·u} − D_u x`.
pub fn prop36_check(x: &PolySection, u: &PolySection) -> Result<bool> {
    Ok(prop36_sides(x, u)?.0 == prop36_sides(x, u)?.1)
}

fn prop36_sides(x: &PolySection, u: &PolySection) -> Result<(DiffOp, DiffOp)> {
    let lhs = rho_op(x)?.commutator(&d_op_u(u));
    let rhs = d_op_u(&x.mul(u)).sub(&d_u_x(u, x)?);
    Ok((lhs, rhs))
}

/// Seeded instances of the `[ρ_x, D_u]` identity on `R^m`.
pub fn prop36_checks(m: usize, max_deg: usize, rng: &mut impl Rng) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let mut run = |label: String, x: PolySection, u: PolySection| -> Result<()> {
        let (l, r) = prop36_sides(&x, &u)?;
        out.push(Check::truth(label, l == r, || format!("x = {x:?}; u = {u:?}; lhs = {}; rhs = {}", l.canonical(), r.canonical())));
        Ok(())
    };
    let eps2 = PolySection::constant(iota_hom(&K11Element::eps2(Algebra::R), m)?);
    run("zero".into(), PolySection::zero(2 * m, 2 * m), PolySection::sample_hom(m, max_deg, rng))?;
    run("constant".into(), PolySection::sample_so(m, 0, rng), PolySection::sample_hom(m, 0, rng))?;
    run("linear-x.eps2".into(), PolySection::sample_so(m, 1.min(max_deg), rng), eps2)?;
    for deg in 1..=max_deg {
        for s in 0..2 {
            run(format!("deg{deg}.sample{s}"), PolySection::sample_so(m, deg, rng), PolySection::sample_hom(m, deg, rng))?;
        }
    }
    Ok(out)
}

/// `{D_u, D_v} = 2q̌(u,v)Δ` for every pair of basis vectors of `K^{1,1}`.
pub fn prop39_checks(alg: Algebra, n: usize) -> Result<Vec<Check>> {
    let m = n * alg.dim();
    let basis = K11Element::basis_all(alg);
    let ds: Vec<DiffOp> = basis.iter().map(|u| Ok(d_const(&iota_hom(u, n)?))).collect::<Result<_>>()?;
    let lap = laplacian(m);
    let mut out = Vec::new();
    for i in 0..basis.len() {
        for j in i..basis.len() {
            let lhs = ds[i].anticommutator(&ds[j]);
            let rhs = lap.scale(&(int(2) * q_check(&basis[i], &basis[j])));
            let label = format!("{}-{}", k11_basis_name(alg, i), k11_basis_name(alg, j));
            out.push(Check::equal_by(label, &lhs, &rhs, DiffOp::canonical));
        }
    }
    Ok(out)
}

pub fn prop39_check(alg: Algebra, n: usize) -> Result<bool> {
    Ok(prop39_checks(alg, n)?.iter().all(|c| c.holds))
}

/// `σ₂({D_u, D_v} − 2q̌(u,v)Δ) = 0` on basis pairs; valid for `K = O` as well.
pub fn prop38_checks(alg: Algebra, n: usize) -> Result<Vec<Check>> {
    let m = n * alg.dim();
    let basis = K11Element::basis_all(alg);
    let ds: Vec<DiffOp> = basis.iter().map(|u| Ok(d_const(&iota_hom(u, n)?))).collect::<Result<_>>()?;
    let lap = laplacian(m);
    let mut out = Vec::new();
    for i in 0..basis.len() {
        for j in i..basis.len() {
            let rem = ds[i].anticommutator(&ds[j]).sub(&lap.scale(&(int(2) * q_check(&basis[i], &basis[j]))));
            let sym = rem.symbol(2)?;
            let label = format!("{}-{}", k11_basis_name(alg, i), k11_basis_name(alg, j));
            out.push(Check::truth(label, sym.is_zero(), || format!("remainder = {}", rem.canonical())));
        }
    }
    Ok(out)
}

fn grade_name(e: &LElement) -> &'static str {
    match e.grade() {
        Some(crate::lie_super::Grade::Even) => "even",
        Some(crate::lie_super::Grade::Odd) => "odd",
        Some(crate::lie_super::Grade::Center) => "center",
        None => "mixed",
    }
}

/// `Ψ∘ι` is a super-bracket homomorphism on every basis pair of `su_K(1,1)_sup`,
/// and `Ψ_L(ι(x,u,a)) = (ρ_{ιx}, D_{ιu}, −aΔ)`.
pub fn theorem310_checks(alg: Algebra, n: usize) -> Result<Vec<Check>> {
    if !alg.is_associative() {
        return Err(Error::Unsupported("the operator homomorphism needs associative K".into()));
    }
    super_homomorphism_checks(alg, n, &sup_basis(alg, false))
}

/// `[Ψι(a), Ψι(b)] = Ψι([a,b])` for all pairs of a homogeneous basis of a
/// superalgebra `g ⊕ K^{1,1} ⊕ R` whose even part acts on `K²`, with the
/// bracket taken against the form `q̌`.
pub fn super_homomorphism_checks(alg: Algebra, n: usize, basis: &[SuperElement]) -> Result<Vec<Check>> {
    let m = n * alg.dim();
    let gram = q_check_gram(alg);
    let images: Vec<LElement> = basis.iter().map(|b| iota_super(b, alg, n)).collect::<Result<_>>()?;
    let psis: Vec<DiffOp> = images.iter().map(psi_l_elem).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for (i, b) in basis.iter().enumerate() {
        let direct = rho_const(&iota_so(&b.even, alg, n)?)?
            .add(&d_const(&iota_hom(&b.odd_k11(alg), n)?))
            .sub(&laplacian(m).scale(&b.scalar));
        out.push(Check::equal_by(format!("scaling.{i}"), &psis[i], &direct, DiffOp::canonical));
    }
    for i in 0..basis.len() {
        for j in i..basis.len() {
            let lhs = psis[i].super_commutator(&psis[j])?;
            let rhs = psi_l_elem(&iota_super(&super_bracket(&basis[i], &basis[j], &gram), alg, n)?)?;
            let label = format!("{}-{}.{i}-{j}", grade_name(&images[i]), grade_name(&images[j]));
            out.push(Check::equal_by(label, &lhs, &rhs, DiffOp::canonical));
        }
    }
    Ok(out)
}

/// Polynomial section of `L`.
#[derive(Clone, Debug)]
pub struct LSection {
    pub x: PolySection,
    pub u: PolySection,
    pub f: Polynomial,
    /// Nominal operator order of `Ψ` of this section: 0, 1 or 2.
    pub order: usize,
}

impl LSection {
    fn psi(&self) -> Result<DiffOp> {
        psi_l(&self.x, &self.u, &self.f)
    }
}

/// Pointwise `L` bracket of homogeneous sections.
fn section_bracket(a: &LSection, b: &LSection) -> LSection {
    let mut f = Polynomial::zero();
    for (al, ua) in a.u.terms() {
        for (be, ub) in b.u.terms() {
            let q = q_hat(ua, ub);
            f = f.add(&Polynomial::monomial(al.add(be), q * int(-2)));
        }
    }
    LSection {
        x: a.x.commutator(&b.x),
        u: a.x.mul(&b.u).sub(&b.x.mul(&a.u)),
        f,
        order: 0,
    }
}

/// Graded-piece bases of the subspace of `L` being tested: `ι` images, or for
/// `K = O` the graded subspace `ι(su_O) ⊕ span ι(x)ι(u) ⊕ R`.
fn graded_bases(alg: Algebra, n: usize) -> Result<(Vec<Matrix>, Vec<Matrix>)> {
    let even: Vec<Matrix> = su_basis(alg).iter().map(|x| iota_so(x, alg, n)).collect::<Result<_>>()?;
    let odd: Vec<Matrix> = K11Element::basis_all(alg).iter().map(|u| iota_hom(u, n)).collect::<Result<_>>()?;
    Ok((even, odd))
}

/// Symbol-level homomorphism and fiber injectivity for `σ∘Ψ` with polynomial sections.
pub fn symbol_hom_checks(alg: Algebra, n: usize, max_deg: usize, rng: &mut impl Rng) -> Result<Vec<Check>> {
    let m = n * alg.dim();
    let (even, odd) = graded_bases(alg, n)?;
    let zx = PolySection::zero(2 * m, 2 * m);
    let zu = PolySection::zero(2 * m, m);
    let ex = |x: PolySection| LSection { x, u: zu.clone(), f: Polynomial::zero(), order: 0 };
    let od = |u: PolySection| LSection { x: zx.clone(), u, f: Polynomial::zero(), order: 1 };
    let ce = |f: Polynomial| LSection { x: zx.clone(), u: zu.clone(), f, order: 2 };
    let samples = [
        ("even", ex(PolySection::sample_in(&even, m, max_deg, rng))),
        ("even'", ex(PolySection::sample_in(&even, m, max_deg, rng))),
        ("odd", od(PolySection::sample_in(&odd, m, max_deg, rng))),
        ("odd'", od(PolySection::sample_in(&odd, m, max_deg, rng))),
        ("center", ce(Polynomial::sample(m, max_deg, rng).add(&Polynomial::one()))),
    ];
    let mut out = Vec::new();
    for i in 0..samples.len() {
        for j in i..samples.len() {
            let ((na, a), (nb, b)) = (&samples[i], &samples[j]);
            let k = a.order + b.order;
            let lhs = a.psi()?.super_commutator(&b.psi()?)?.symbol(k)?;
            let rhs = section_bracket(a, b).psi()?.symbol(k)?;
            out.push(Check::equal_by(format!("bracket.{na}-{nb}"), &lhs, &rhs, |s: &Symbol| format!("{s:?}")));
        }
    }
    out.push(injectivity_check(&even, &odd, m)?);
    Ok(out)
}

/// Rank of `σ∘Ψ` on the fiber equals the dimension of the graded subspace.
fn injectivity_check(even: &[Matrix], odd: &[Matrix], m: usize) -> Result<Check> {
    let mut vectors = Vec::new();
    let mut push = |deg: usize, s: Symbol| {
        let mut v = BTreeMap::new();
        for ((b, a), op) in s.terms() {
            for ((r, c), x) in op.entries() {
                v.insert((deg, *b, *a, r, c), x.clone());
            }
        }
        vectors.push(v);
    };
    for x in even {
        push(0, rho_const(x)?.symbol(0)?);
    }
    for u in odd {
        push(1, d_const(u).symbol(1)?);
    }
    push(2, laplacian(m).symbol(2)?);
    let expected = even.len() + odd.len() + 1;
    let rank = sparse_rank(vectors);
    Ok(Check::truth("injective", rank == expected, || format!("rank {rank}, expected {expected}")))
}

/// `σ₂({D_h, D_g}) = −(2/m)Q̂(h,g)|ξ|²` for seeded pairs from a basis of the
/// full 128-dimensional odd part of the octonionic graded subspace.
///
/// The witness records how many of the basis pairs violate the pointwise
/// condition `Q(h f^j, g f^k) + Q(h f^k, g f^j) = (2/m) δ_jk Q̂(h,g)`.
pub fn octonion_odd_symbol_check(rng: &mut impl Rng, samples: usize) -> Result<Check> {
    let m = 8;
    let mut basis = Vec::new();
    let mut span = crate::linalg::SparseSpan::new();
    for h in octonion_products() {
        if span.insert(h.to_sparse()) {
            basis.push(h);
        }
    }
    let g = q_gram(m);
    let q = |a: &Vec<Rational>, b: &Vec<Rational>| g.apply(b).iter().zip(a).fold(Rational::zero(), |s, (x, y)| s + x * y);
    let mut bad_pairs = 0usize;
    for i in 0..basis.len() {
        let hc: Vec<Vec<Rational>> = (0..m).map(|j| basis[i].column(j)).collect();
        for jdx in i..basis.len() {
            let gc: Vec<Vec<Rational>> = (0..m).map(|j| basis[jdx].column(j)).collect();
            let target = q_hat(&basis[i], &basis[jdx]) * frac(2, m as i64);
            let ok = (0..m).all(|a| {
                (a..m).all(|b| {
                    let s = q(&hc[a], &gc[b]) + q(&hc[b], &gc[a]);
                    let want = if a == b { target.clone() } else { Rational::zero() };
                    s == want
                })
            });
            if !ok {
                bad_pairs += 1;
            }
        }
    }
    let lap = laplacian(m);
    let mut failures = Vec::new();
    for _ in 0..samples {
        let (i, j) = (rng.gen_range(0..basis.len()), rng.gen_range(0..basis.len()));
        let lhs = d_const(&basis[i]).anticommutator(&d_const(&basis[j])).symbol(2)?;
        let rhs = lap.scale(&(q_hat(&basis[i], &basis[j]) * frac(2, m as i64))).symbol(2)?;
        if lhs != rhs {
            failures.push((i, j));
        }
    }
    let total = basis.len() * (basis.len() + 1) / 2;
    Ok(Check::truth("odd128", failures.is_empty() && bad_pairs == 0, || {
        format!("sampled basis pairs failing: {failures:?}; basis pairs failing the pointwise condition: {bad_pairs} of {total}")
    }))
}

/// Hodge-star relation for the flat `ν` in every degree, as spinor operators.
pub fn nu_star_identity(m: usize) -> bool {
    let nu = nu_op(m);
    (0..1u32 << m).all(|s| {
        let r = s.count_ones() as usize;
        nu.apply(&Spinor::basis(m, s)) == crate::clifford::hodge_star(&Spinor::basis(m, s)).scale(&crate::clifford::nu_sign(m, r))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::all_hold;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn d_of_coordinate_and_codifferential() {
        let m = 2;
        let y1 = PolyForm::monomial(m, Multi::unit(0), 0, int(1));
        assert_eq!(d_op(m).apply(&y1), PolyForm::monomial(m, Multi::ZERO, 1, int(1)));
        let y1dy1 = PolyForm::monomial(m, Multi::unit(0), 1, int(1));
        assert_eq!(d_star_op(m).apply(&y1dy1), PolyForm::monomial(m, Multi::ZERO, 0, int(-1)));
    }

    #[test]
    fn flat_identities_hold() {
        for m in 1..=4 {
            let checks = flat_identities(m).unwrap();
            assert!(all_hold(&checks), "m = {m}: {checks:?}");
        }
    }

    #[test]
    fn rho_of_zero_and_non_antisymmetric() {
        assert!(rho_const(&Matrix::zeros(4, 4)).unwrap().is_zero());
        assert!(matches!(rho_const(&Matrix::identity(4)), Err(Error::NotAntisymmetric(_))));
    }

    #[test]
    fn anticommutators_on_named_pairs() {
        let checks = prop39_checks(Algebra::C, 1).unwrap();
        assert!(checks.iter().any(|c| c.label == "eps1-eps2"));
        assert!(checks.iter().any(|c| c.label == "i.eps1-i.eps2"));
        assert!(all_hold(&checks));
        // {D_{iε₁}, D_{iε₂}} = Δ
        let u = iota_hom(&K11Element::basis(Algebra::C, 1), 1).unwrap();
        let v = iota_hom(&K11Element::basis(Algebra::C, 3), 1).unwrap();
        assert_eq!(d_const(&u).anticommutator(&d_const(&v)), laplacian(2));
    }

    #[test]
    fn anticommutators_for_associative_algebras() {
        for (alg, n) in [(Algebra::R, 1), (Algebra::R, 3), (Algebra::C, 2), (Algebra::H, 1)] {
            assert!(prop39_check(alg, n).unwrap(), "{alg} n={n}");
        }
    }

    #[test]
    fn super_homomorphism_small_cases() {
        for (alg, n) in [(Algebra::R, 1), (Algebra::R, 2), (Algebra::C, 1)] {
            let checks = theorem310_checks(alg, n).unwrap();
            let bad: Vec<_> = checks.iter().filter(|c| !c.holds).collect();
            assert!(bad.is_empty(), "{alg} n={n}: {bad:?}");
        }
    }

    #[test]
    fn symbol_anticommutators_for_quaternions() {
        assert!(all_hold(&prop38_checks(Algebra::H, 1).unwrap()));
    }

    #[test]
    fn bracket_with_polynomial_sections() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for m in 1..=3 {
            let checks = prop36_checks(m, 2, &mut rng).unwrap();
            assert!(all_hold(&checks), "m = {m}: {checks:?}");
        }
    }

    #[test]
    fn symbol_homomorphism_for_complex() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let checks = symbol_hom_checks(Algebra::C, 1, 2, &mut rng).unwrap();
        assert!(all_hold(&checks), "{checks:?}");
    }

    #[test]
    fn nu_matches_signed_star() {
        for m in 1..=5 {
            assert!(nu_star_identity(m));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn rho_is_a_lie_homomorphism(seed in any::<u64>(), m in 1usize..4) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (x, y) = (sample_so_w(m, &mut rng), sample_so_w(m, &mut rng));
            let lhs = rho_const(&x).unwrap().commutator(&rho_const(&y).unwrap());
            prop_assert_eq!(lhs, rho_const(&x.commutator(&y)).unwrap());
        }

        #[test]
        fn constant_sections_reduce(seed in any::<u64>(), m in 1usize..4) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = PolySection::sample_so(m, 0, &mut rng);
            let u = PolySection::sample_hom(m, 0, &mut rng);
            prop_assert!(d_u_x(&u, &x).unwrap().is_zero());
            prop_assert!(prop36_check(&x, &u).unwrap());
        }

        #[test]
        fn composition_order_is_bounded(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (u, v) = (PolySection::sample_hom(2, 1, &mut rng), PolySection::sample_hom(2, 1, &mut rng));
            let c = d_op_u(&u).compose(&d_op_u(&v));
            prop_assert!(c.order().unwrap_or(0) <= 2);
        }
    }
}
