//! Kähler, hyperkähler and semi-flat structures on flat space.
//!
//! Complex coordinates are `z_j = y_j + i y_{n+j}`, so the standard complex
//! structure is `J ∂_j = ∂_{n+j}` and `ω = Σ dy^j ∧ dy^{n+j}`. On `Hⁿ` the
//! structures `J_s` are right multiplication by the units `i, j, k`.

use num_traits::{One, Zero};

use crate::check::Check;
use crate::clifford::{epsilon, q_gram, Spinor, SpinorOp, Subset};
use crate::diffop::{CDiffOp, CForm, DiffOp, PolyForm};
use crate::error::{Error, Result};
use crate::lie_super::{
    in_span, iota_hom, iota_so, kmat, lie_closure, phi, q_check, q_check_gram, span_dim, su_basis,
    antisymmetric_subalgebra, K11Element, K2Operator, SuHTag, SuperElem, SuperElement,
};
use crate::linalg::{Matrix, SparseSpan};
use crate::normed_algebra::{Algebra, NormedElement};
use crate::operators::{d_const, d_op, d_star_op, laplacian, rho_const, super_homomorphism_checks};
use crate::poly::Multi;
use crate::rational::{frac, int, Rational};

/// Complex structure on `R^{2n}` with its Kähler form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexStructure {
    pub j: Matrix,
    pub omega: Spinor,
}

impl ComplexStructure {
    /// `ω(X, Y) = g(JX, Y)`, i.e. `ω = Σ_{a<b} J_{ba} dy^a ∧ dy^b`.
    pub fn new(j: Matrix) -> Self {
        let m = j.rows();
        let mut omega = Spinor::zero(m);
        for a in 0..m {
            for b in a + 1..m {
                let c = j[(b, a)].clone();
                if !c.is_zero() {
                    omega = omega.add(&Spinor::basis(m, (1 << a) | (1 << b)).scale(&c));
                }
            }
        }
        Self { j, omega }
    }

    pub fn standard(n: usize) -> Self {
        let mut j = Matrix::zeros(2 * n, 2 * n);
        for a in 0..n {
            j[(n + a, a)] = int(1);
            j[(a, n + a)] = int(-1);
        }
        Self::new(j)
    }

    pub fn is_valid(&self) -> bool {
        let m = self.j.rows();
        let id = Matrix::identity(m);
        &self.j * &self.j == -&id && &self.j.transpose() * &self.j == id
    }

    /// The operator `ω ∧`.
    pub fn wedge_op(&self) -> SpinorOp {
        wedge_with(&self.omega)
    }
}

/// `φ ↦ β ∧ φ` for a constant form `β`.
pub fn wedge_with(beta: &Spinor) -> SpinorOp {
    let m = beta.m();
    let mut out = SpinorOp::zero(m);
    for (s, c) in beta.coeffs() {
        let mut op = SpinorOp::identity(m);
        for j in (0..m).rev() {
            if s & (1 << j) != 0 {
                op = epsilon(m, j + 1).compose(&op);
            }
        }
        out = out.add(&op.scale(c));
    }
    out
}

/// `J_s` on `Hⁿ`: right multiplication by the `s`-th imaginary unit.
pub fn quaternionic_structure(n: usize, s: usize) -> Matrix {
    let m = 4 * n;
    let unit = NormedElement::basis(Algebra::H, s);
    let mut j = Matrix::zeros(m, m);
    for a in 0..n {
        for k in 0..4 {
            let img = &NormedElement::basis(Algebra::H, k) * &unit;
            for (r, c) in img.coords().iter().enumerate() {
                j[(r * n + a, k * n + a)] = c.clone();
            }
        }
    }
    j
}

/// `L`, `Λ`, `H` of `su_C(1,1)` and `h = diag(1, −1)`, as operators on `C²`.
pub fn lefschetz_matrices() -> [(&'static str, K2Operator); 4] {
    let c = Algebra::C;
    [
        ("L", phi(&kmat(c, [[&[0], &[0]], [&[0, -1], &[0]]]))),
        ("Lambda", phi(&kmat(c, [[&[0], &[0, 1]], [&[0], &[0]]]))),
        ("H", phi(&kmat(c, [[&[-1], &[0]], [&[0], &[1]]]))),
        ("h", phi(&kmat(c, [[&[1], &[0]], [&[0], &[-1]]]))),
    ]
}

/// Eigenvalue check `ρ|_{Ω^p} = (m/2 − p)` for a constant operator.
fn degree_eigenvalues(rho: &SpinorOp, m: usize) -> bool {
    *rho == SpinorOp::from_fn(m, |s| Spinor::basis(m, s).scale(&(frac(m as i64, 2) - int(s.count_ones() as i64))))
}

fn constant_part(op: &DiffOp) -> SpinorOp {
    op.terms().get(&(Multi::ZERO, Multi::ZERO)).cloned().unwrap_or_else(|| SpinorOp::zero(op.m()))
}

/// Expresses `x` in `basis`, if possible.
fn coordinates(basis: &[Matrix], x: &Matrix) -> Option<Vec<Rational>> {
    let mut span = SparseSpan::new();
    for b in basis {
        span.insert(b.to_sparse());
    }
    let combo = span.express(&x.to_sparse())?;
    let mut out = vec![Rational::zero(); basis.len()];
    for (k, v) in combo {
        out[k] = v;
    }
    Some(out)
}

/// Hard Lefschetz generators on flat `R^{2n}` with the standard complex structure.
pub fn lefschetz_generators(n: usize) -> Result<Vec<Check>> {
    let m = 2 * n;
    let cs = ComplexStructure::standard(n);
    let mats = lefschetz_matrices();
    let rhos: Vec<SpinorOp> =
        mats.iter().map(|(_, x)| Ok(constant_part(&rho_const(&iota_so(x, Algebra::C, n)?)?))).collect::<Result<_>>()?;
    let (l, lam, h_big, h) = (&rhos[0], &rhos[1], &rhos[2], &rhos[3]);
    let one = Spinor::basis(m, 0);
    let mut out = vec![
        Check::truth("J.valid", cs.is_valid(), || format!("{:?}", cs.j)),
        Check::equal("rho_L(1)=omega", &l.apply(&one), &cs.omega),
        Check::equal("rho_L=omega-wedge", l, &cs.wedge_op()),
        Check::equal("rho_Lambda=adjoint", lam, &l.transpose()),
        Check::equal("rho_H=[rho_L,rho_Lambda]", h_big, &l.commutator(lam)),
        Check::truth("rho_h=(m/2-p)", degree_eigenvalues(h, m), || format!("{h:?}")),
    ];
    // Bracket table of the 2×2 matrices, mirrored on operators.
    let basis: Vec<Matrix> = mats[..3].iter().map(|(_, x)| x.clone()).collect();
    for a in 0..3 {
        for b in a + 1..3 {
            let label = format!("sl2.[{},{}]", mats[a].0, mats[b].0);
            let Some(c) = coordinates(&basis, &mats[a].1.commutator(&mats[b].1)) else {
                out.push(Check::fail(label, "matrix bracket outside span{L, Lambda, H}"));
                continue;
            };
            let rhs = (0..3).fold(SpinorOp::zero(m), |acc, k| acc.add(&rhos[k].scale(&c[k])));
            out.push(Check::equal(label, &rhos[a].commutator(&rhos[b]), &rhs));
        }
    }
    Ok(out)
}

/// `ρ_h` on real forms: `h = diag(1, −1) ∈ su_R(1,1)` has eigenvalue `m/2 − p` on `Ω^p`.
pub fn real_degree_check(m: usize) -> Result<Check> {
    let h = phi(&kmat(Algebra::R, [[&[1], &[0]], [&[0], &[-1]]]));
    let rho = constant_part(&rho_const(&iota_so(&h, Algebra::R, m)?)?);
    Ok(Check::truth("rho_h=(m/2-p)", degree_eigenvalues(&rho, m), || format!("{rho:?}")))
}

/// `∂` and `∂̄` on complex forms over `Cⁿ`.
pub fn dolbeault_operators(n: usize) -> (CDiffOp, CDiffOp) {
    let m = 2 * n;
    let half = frac(1, 2);
    let mut del = CDiffOp::real(DiffOp::zero(m));
    let mut delbar = del.clone();
    for a in 0..n {
        let b = n + a;
        let ea = DiffOp::term(Multi::ZERO, epsilon(m, a + 1), Multi::ZERO);
        let eb = DiffOp::term(Multi::ZERO, epsilon(m, b + 1), Multi::ZERO);
        let (pa, pb) = (DiffOp::partial(m, a), DiffOp::partial(m, b));
        // dz_a ∧ ∂/∂z_a and dz̄_a ∧ ∂/∂z̄_a
        let dz = CDiffOp::new(ea.clone(), eb.clone());
        let dzbar = CDiffOp::new(ea, eb.scale(&int(-1)));
        let d_z = CDiffOp::new(pa.clone(), pb.scale(&int(-1)));
        let d_zbar = CDiffOp::new(pa, pb);
        del = del.add(&dz.compose(&d_z).scale(&half));
        delbar = delbar.add(&dzbar.compose(&d_zbar).scale(&half));
    }
    (del, delbar)
}

/// The Dolbeault identities on `Cⁿ`, with `∂*`, `∂̄*` the complex-bilinear
/// formal transposes, plus the same identity for the hermitian adjoint.
pub fn dolbeault_check(n: usize) -> Result<Vec<Check>> {
    let m = 2 * n;
    let alg = Algebra::C;
    let (del, delbar) = dolbeault_operators(n);
    let d = CDiffOp::real(d_op(m));
    let ds = CDiffOp::real(d_star_op(m));
    let lap = CDiffOp::real(laplacian(m));
    let d_u = |i: usize| -> Result<CDiffOp> { Ok(CDiffOp::real(d_const(&iota_hom(&K11Element::basis(alg, i), n)?))) };
    let (de1, die1, de2, die2) = (d_u(0)?, d_u(1)?, d_u(2)?, d_u(3)?);
    let (del_t, delbar_t) = (del.transpose(), delbar.transpose());
    let (del_h, delbar_h) = (del.hermitian_adjoint(), delbar.hermitian_adjoint());

    let zbar1 = CForm {
        re: PolyForm::monomial(m, Multi::unit(0), 0, int(1)),
        im: PolyForm::monomial(m, Multi::unit(n), 0, int(-1)),
    };
    let dzbar1 = CForm { re: PolyForm::monomial(m, Multi::ZERO, 1, int(1)), im: PolyForm::monomial(m, Multi::ZERO, 1 << n, int(-1)) };
    let zero_form = CForm::real(PolyForm::zero(m));
    let show = |x: &CDiffOp| format!("re: {}; im: {}", x.re.canonical(), x.im.canonical());
    Ok(vec![
        Check::equal("del(zbar1)=0", &del.apply(&zbar1), &zero_form),
        Check::equal("delbar(zbar1)=dzbar1", &delbar.apply(&zbar1), &dzbar1),
        Check::equal_by("d=del+delbar", &de2, &del.add(&delbar), show),
        Check::equal_by("D_eps2=d", &de2, &d, show),
        Check::equal_by("D_ieps2=i(delbar-del)", &die2, &delbar.sub(&del).times_i(), show),
        Check::equal_by("D_eps1=del*+delbar*", &de1, &del_t.add(&delbar_t), show),
        Check::equal_by("D_eps1=dstar", &de1, &ds, show),
        Check::equal_by("D_ieps1=i(delbar*-del*)", &die1, &delbar_t.sub(&del_t).times_i(), show),
        Check::equal_by("hermitian.D_ieps1=i(del*-delbar*)", &die1, &del_h.sub(&delbar_h).times_i(), show),
        Check::equal_by("{D_eps1,D_eps2}=laplacian", &de1.anticommutator(&de2), &lap, show),
        Check::equal_by("{D_ieps1,D_ieps2}=laplacian", &die1.anticommutator(&die2), &lap, show),
    ])
}

/// The ten generators of `su_H(1,1)` acting on forms over `Hⁿ`.
pub fn hyperkahler_generators(n: usize) -> Result<Vec<Check>> {
    let alg = Algebra::H;
    let m = 4 * n;
    let mut out = Vec::new();
    let js: Vec<Matrix> = (1..=3).map(|s| quaternionic_structure(n, s)).collect();
    for s in 0..3 {
        let cs = ComplexStructure::new(js[s].clone());
        let ls = constant_part(&rho_const(&iota_so(&SuHTag::L(s + 1).operator()?, alg, n)?)?);
        let lams = constant_part(&rho_const(&iota_so(&SuHTag::Lambda(s + 1).operator()?, alg, n)?)?);
        let tag = s + 1;
        out.push(Check::truth(format!("J{tag}.valid"), cs.is_valid(), || format!("{:?}", cs.j)));
        out.push(Check::equal(format!("rho_L{tag}(1)=omega{tag}"), &ls.apply(&Spinor::basis(m, 0)), &cs.omega));
        out.push(Check::equal(format!("rho_L{tag}=omega{tag}-wedge"), &ls, &cs.wedge_op()));
        out.push(Check::equal(format!("rho_Lambda{tag}=adjoint"), &lams, &ls.transpose()));
        let u = iota_hom(&K11Element::basis(alg, tag), n)?;
        let v = iota_hom(&K11Element::basis(alg, 4 + tag), n)?;
        out.push(Check::equal_by(
            format!("{{D_J{tag}eps1,D_J{tag}eps2}}=laplacian"),
            &d_const(&u).anticommutator(&d_const(&v)),
            &laplacian(m),
            DiffOp::canonical,
        ));
    }
    out.push(Check::equal("J2.J1=J3", &(&js[1] * &js[0]), &js[2]));
    let gens: Vec<K2Operator> = SuHTag::ALL.iter().map(|t| t.operator()).collect::<Result<_>>()?;
    let dim = lie_closure(&gens).len();
    out.push(Check::truth("closure-dim=10", dim == 10, || format!("dimension {dim}")));
    let z8 = K11Element::from_real(alg, &vec![Rational::zero(); 8]);
    let mut basis: Vec<SuperElement> = gens.iter().map(|x| SuperElem::sup(x.clone(), &z8, Rational::zero())).collect();
    basis.extend(K11Element::basis_all(alg).iter().map(|u| SuperElem::sup(Matrix::zeros(8, 8), u, Rational::zero())));
    basis.push(SuperElem::sup(Matrix::zeros(8, 8), &z8, Rational::one()));
    for c in super_homomorphism_checks(alg, n, &basis)? {
        out.push(Check { label: format!("table.{}", c.label), ..c });
    }
    Ok(out)
}

/// `ω^k ∧ : Λ^{n−k} → Λ^{n+k}` is an isomorphism on constant forms over `R^{2n}`.
pub fn hard_lefschetz_torus(n: usize, k: usize) -> Result<bool> {
    if k > n {
        return Err(Error::Config(format!("k = {k} exceeds n = {n}")));
    }
    let m = 2 * n;
    let omega = ComplexStructure::standard(n).wedge_op();
    let lk = (0..k).fold(SpinorOp::identity(m), |acc, _| omega.compose(&acc));
    let src: Vec<Subset> = (0..1u32 << m).filter(|s| s.count_ones() as usize == n - k).collect();
    let dst: Vec<Subset> = (0..1u32 << m).filter(|s| s.count_ones() as usize == n + k).collect();
    let block = Matrix::from_fn(dst.len(), src.len(), |r, c| lk.get(dst[r], src[c]));
    Ok(src.len() == dst.len() && block.rank() == src.len())
}

/// `q'(u,v) = Re ½(u₁v̄₃ + u₃v̄₁ + u₂v̄₄ + u₄v̄₂)` on `(K')⁴`, as a Gram matrix in
/// real coordinates `(u_p)_r` at index `p·dim K' + r`.
pub fn q_prime_gram(k_prime: Algebra) -> Matrix {
    let d = k_prime.dim();
    let vec_of = |i: usize| -> Vec<NormedElement> {
        (0..4).map(|p| if p == i / d { NormedElement::basis(k_prime, i % d) } else { NormedElement::zero(k_prime) }).collect()
    };
    let q = |u: &[NormedElement], v: &[NormedElement]| -> Rational {
        let t = |a: usize, b: usize| (&u[a] * &v[b].conj()).re();
        (t(0, 2) + t(2, 0) + t(1, 3) + t(3, 1)) / int(2)
    };
    Matrix::from_fn(4 * d, 4 * d, |i, j| q(&vec_of(i), &vec_of(j)))
}

/// Real form of the complex-linear generators of `sl(4, K')`.
fn sl4_generators(k_prime: Algebra) -> Vec<Matrix> {
    let d = k_prime.dim();
    let real = |p: usize, q: usize, unit: usize| -> Matrix {
        let mut out = Matrix::zeros(4 * d, 4 * d);
        let e = NormedElement::basis(k_prime, unit);
        for r in 0..d {
            let img = &e * &NormedElement::basis(k_prime, r);
            for (s, c) in img.coords().iter().enumerate() {
                out[(p * d + s, q * d + r)] = c.clone();
            }
        }
        out
    };
    let mut gens = Vec::new();
    for unit in 0..d {
        for p in 0..4 {
            for q in 0..4 {
                if p != q {
                    gens.push(real(p, q, unit));
                }
            }
            if p > 0 {
                gens.push(&real(0, 0, unit) - &real(p, p, unit));
            }
        }
    }
    gens
}

/// Basis of `su_{K'}(2,2)`: the `q'`-antisymmetric part of `sl(4, K')`.
pub fn su22_basis(k: Algebra) -> Result<Vec<Matrix>> {
    let kp = k.semi_flat_base().ok_or_else(|| Error::Unsupported(format!("no semi-flat reduction for {k}")))?;
    let sl = lie_closure(&sl4_generators(kp));
    Ok(antisymmetric_subalgebra(&sl, &q_prime_gram(kp)))
}

/// Standard `u_{K'}(n) ⊂ so(m)` acting on the component index of `V`.
pub fn u_kprime_n_basis(k: Algebra, n: usize) -> Result<Vec<Matrix>> {
    let kp = k.semi_flat_base().ok_or_else(|| Error::Unsupported(format!("no semi-flat reduction for {k}")))?;
    let d = k.dim();
    let m = n * d;
    // Left multiplication by a unit of K' on each K coordinate.
    let left = |unit: usize| -> Matrix {
        let e = NormedElement::basis(k, unit);
        Matrix::from_fn(d, d, |r, c| (&e * &NormedElement::basis(k, c)).coords()[r].clone())
    };
    let embed = |inner: &Matrix, comp: &Matrix| -> Matrix {
        Matrix::from_fn(m, m, |i, j| &inner[(i / n, j / n)] * &comp[(i % n, j % n)])
    };
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let anti = &Matrix::unit(n, n, a, b) - &Matrix::unit(n, n, b, a);
            out.push(embed(&left(0), &anti));
            if kp == Algebra::C {
                let sym = &Matrix::unit(n, n, a, b) + &Matrix::unit(n, n, b, a);
                out.push(embed(&left(1), &sym));
            }
        }
        if kp == Algebra::C {
            out.push(embed(&left(1), &Matrix::unit(n, n, a, a)));
        }
    }
    Ok(out)
}

/// `W → (K')ⁿ ⊗ (K')^{2,2}` identification: tensor coordinate `a·4d' + s`
/// maps to the `W` slot of component `a`, `K²` slot `s`.
pub fn semi_flat_identification(k: Algebra, n: usize) -> Matrix {
    let d = k.dim();
    let m = n * d;
    let mut p = Matrix::zeros(2 * m, 2 * m);
    for a in 0..n {
        for s in 0..2 * d {
            let w = (s / d) * m + crate::lie_super::v_index(n, a, s % d);
            p[(w, a * 2 * d + s)] = int(1);
        }
    }
    p
}

/// Killing form of a Lie algebra given by a basis closed under brackets.
fn killing_form(basis: &[Matrix]) -> Option<Matrix> {
    let ads: Vec<Matrix> = basis
        .iter()
        .map(|x| {
            let cols: Option<Vec<Vec<Rational>>> = basis.iter().map(|y| coordinates(basis, &x.commutator(y))).collect();
            cols.map(|c| Matrix::from_columns(basis.len(), &c))
        })
        .collect::<Option<_>>()?;
    let tr = |a: &Matrix| (0..a.rows()).fold(Rational::zero(), |s, i| s + &a[(i, i)]);
    Some(Matrix::from_fn(basis.len(), basis.len(), |i, j| tr(&(&ads[i] * &ads[j]))))
}

/// A 3-dimensional algebra is `sl(2,R)`: perfect, with nondegenerate and
/// indefinite Killing form.
fn is_split_sl2(basis: &[Matrix]) -> bool {
    if basis.len() != 3 {
        return false;
    }
    let brackets: Vec<Matrix> =
        (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).map(|(i, j)| basis[i].commutator(&basis[j])).collect();
    if span_dim(&brackets) != 3 {
        return false;
    }
    let Some(b) = killing_form(basis) else { return false };
    if b.rank() != 3 {
        return false;
    }
    !is_negative_definite(&b)
}

fn determinant(a: &Matrix) -> Rational {
    let n = a.rows();
    let mut m = a.clone();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[(r, c)].is_zero()) else { return Rational::zero() };
        if p != c {
            for j in 0..n {
                let t = m[(p, j)].clone();
                m[(p, j)] = m[(c, j)].clone();
                m[(c, j)] = t;
            }
            det = -det;
        }
        let piv = m[(c, c)].clone();
        det *= &piv;
        for r in c + 1..n {
            let f = &m[(r, c)] / &piv;
            for j in c..n {
                let v = &m[(c, j)] * &f;
                m[(r, j)] -= v;
            }
        }
    }
    det
}

/// Sylvester's criterion: leading principal minors alternate in sign.
pub fn is_negative_definite(b: &Matrix) -> bool {
    (1..=b.rows()).all(|k| {
        let d = determinant(&Matrix::from_fn(k, k, |i, j| b[(i, j)].clone()));
        if k % 2 == 1 { d < Rational::zero() } else { d > Rational::zero() }
    })
}

/// The `su_{K'}(2,2)_sup` extension on flat `R^{n·dim K}`.
pub fn semi_flat_action(k: Algebra, n: usize) -> Result<Vec<Check>> {
    let kp = k.semi_flat_base().ok_or_else(|| Error::Unsupported(format!("semi-flat models need K = C or H, got {k}")))?;
    let d = k.dim();
    let m = n * d;
    let mut out = Vec::new();

    let qp = q_prime_gram(kp);
    let p = semi_flat_identification(k, n);
    let block = Matrix::from_fn(2 * m, 2 * m, |i, j| if i / (2 * d) == j / (2 * d) { qp[(i % (2 * d), j % (2 * d))].clone() } else { Rational::zero() });
    out.push(Check::equal("isometry.Q=g(x)q'", &(&(&p.transpose() * &q_gram(m)) * &p), &block));
    out.push(Check::equal("q'=q-check", &qp, &q_check_gram(k)));

    let su22 = su22_basis(k)?;
    let expected = if k == Algebra::C { 6 } else { 15 };
    out.push(Check::truth(format!("dim={expected}"), su22.len() == expected, || format!("dimension {}", su22.len())));

    let images: Vec<Matrix> = su22.iter().map(|x| iota_so(x, k, n)).collect::<Result<_>>()?;
    let sub = su_basis(k);
    let sub_images: Vec<Matrix> = sub.iter().map(|x| iota_so(x, k, n)).collect::<Result<_>>()?;
    let contained = sub_images.iter().all(|x| in_span(&images, x));
    out.push(Check::truth("contains-iota-su_K(1,1)", contained, || "an element of ι(su_K(1,1)) lies outside the image".into()));
    let image_closed = images.iter().all(|x| images.iter().all(|y| in_span(&images, &x.commutator(y))));
    out.push(Check::truth("image-closed", image_closed, || "image is not bracket-closed".into()));

    let us: Vec<Matrix> =
        u_kprime_n_basis(k, n)?.iter().map(crate::clifford::psi4).collect::<Result<_>>()?;
    let commute = images.iter().all(|x| us.iter().all(|u| x.commutator(u).is_zero()));
    out.push(Check::truth("commutes-with-psi4(u_K'(n))", commute, || "nonzero commutator".into()));

    if k == Algebra::C {
        out.push(splitting_check(&su22, &sub));
    }

    // ε-basis of (K')^{2,2}: one unit in each K' slot.
    let eps: Vec<K11Element> = (0..4)
        .map(|q| {
            let mut v = vec![Rational::zero(); 2 * d];
            v[q * kp.dim()] = Rational::one();
            K11Element::from_real(k, &v)
        })
        .collect();
    let lap = laplacian(m);
    for a in 0..4 {
        for b in a..4 {
            let lhs = d_const(&iota_hom(&eps[a], n)?).anticommutator(&d_const(&iota_hom(&eps[b], n)?));
            let q = qp.apply(&eps[b].to_real()).iter().zip(eps[a].to_real()).fold(Rational::zero(), |s, (x, y)| s + x * y);
            debug_assert_eq!(q, q_check(&eps[a], &eps[b]));
            let rhs = lap.scale(&(int(2) * q));
            out.push(Check::equal_by(format!("eps{}-eps{}", a + 1, b + 1), &lhs, &rhs, DiffOp::canonical));
        }
    }

    let z = K11Element::from_real(k, &vec![Rational::zero(); 2 * d]);
    let mut basis: Vec<SuperElement> = su22.iter().map(|x| SuperElem::sup(x.clone(), &z, Rational::zero())).collect();
    basis.extend(K11Element::basis_all(k).iter().map(|u| SuperElem::sup(Matrix::zeros(2 * d, 2 * d), u, Rational::zero())));
    basis.push(SuperElem::sup(Matrix::zeros(2 * d, 2 * d), &z, Rational::one()));
    let table = super_homomorphism_checks(k, n, &basis)?;
    let failing: Vec<&str> = table.iter().filter(|c| !c.holds).map(|c| c.label.as_str()).collect();
    out.push(Check::truth("super-table", failing.is_empty(), || {
        format!("{} of {} table entries fail: {}", failing.len(), table.len(), failing.join(", "))
    }));
    Ok(out)
}

/// `so(2,2)` splits as `ι(su_C(1,1))` plus its centralizer, both `sl(2,R)`.
fn splitting_check(so22: &[Matrix], first: &[Matrix]) -> Check {
    // Centralizer of `first` inside `so22`, by exact nullspace.
    let n = so22.len();
    let rows: Vec<Vec<Rational>> = first
        .iter()
        .flat_map(|f| {
            let brs: Vec<Vec<Rational>> = so22.iter().map(|x| f.commutator(x).flatten()).collect();
            (0..brs[0].len()).map(move |e| brs.iter().map(|b| b[e].clone()).collect::<Vec<_>>())
        })
        .collect();
    let system = Matrix::from_fn(rows.len(), n, |i, j| rows[i][j].clone());
    let second: Vec<Matrix> = system
        .nullspace()
        .iter()
        .map(|c| so22.iter().zip(c).fold(Matrix::zeros(so22[0].rows(), so22[0].cols()), |acc, (x, a)| &acc + &x.scale(a)))
        .collect();
    let mut all = first.to_vec();
    all.extend(second.iter().cloned());
    let ok = second.len() == 3 && span_dim(&all) == 6 && is_split_sl2(first) && is_split_sl2(&second);
    Check::truth("so(2,2)=sl2+sl2", ok, || format!("centralizer dimension {}, total span {}", second.len(), span_dim(&all)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::all_hold;

    fn failures(c: &[Check]) -> Vec<&Check> {
        c.iter().filter(|c| !c.holds).collect()
    }

    #[test]
    fn kahler_generators() {
        for n in 1..=2 {
            let c = lefschetz_generators(n).unwrap();
            assert!(all_hold(&c), "{:?}", failures(&c));
        }
    }

    #[test]
    fn rho_h_on_real_forms() {
        for m in 1..=4 {
            assert!(real_degree_check(m).unwrap().holds);
        }
    }

    #[test]
    fn dolbeault_identities() {
        for n in 1..=2 {
            let c = dolbeault_check(n).unwrap();
            assert!(all_hold(&c), "{:?}", failures(&c));
        }
    }

    #[test]
    fn hyperkahler_n1() {
        let c = hyperkahler_generators(1).unwrap();
        assert!(all_hold(&c), "{:?}", failures(&c));
    }

    #[test]
    fn torus_lefschetz() {
        for n in 0..=3 {
            for k in 0..=n {
                assert!(hard_lefschetz_torus(n, k).unwrap(), "n={n} k={k}");
            }
        }
        assert!(hard_lefschetz_torus(1, 2).is_err());
    }

    #[test]
    fn omega_wedge_one() {
        let cs = ComplexStructure::standard(2);
        assert_eq!(cs.wedge_op().apply(&Spinor::basis(4, 0)), cs.omega);
        assert_eq!(cs.omega, Spinor::basis(4, 0b0101).add(&Spinor::basis(4, 0b1010)));
    }

    #[test]
    fn sylvester() {
        assert!(is_negative_definite(&Matrix::identity(2).scale(&int(-1))));
        assert!(!is_negative_definite(&Matrix::identity(2)));
    }

    #[test]
    fn semi_flat_complex() {
        let c = semi_flat_action(Algebra::C, 1).unwrap();
        let bad: Vec<&str> = failures(&c).iter().map(|c| c.label.as_str()).collect();
        assert!(bad.iter().all(|l| *l == "super-table"), "{bad:?}");
    }
}
