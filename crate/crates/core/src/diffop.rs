//! Polynomial-coefficient differential operators on forms over flat `R^m`.
//!
//! An operator is a finite sum `Σ y^α A ∂^β` with `A` a spinor matrix. Terms
//! are keyed by `(β, α)`; zero coefficients are never stored, so equality of
//! operators is equality of the maps.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;

use crate::clifford::{Parity, Spinor, SpinorOp, Subset};
use crate::error::{Error, Result};
use crate::poly::{binomial, falling, Multi, Polynomial};
use crate::rational::{int, show, Rational};

/// A form `Σ y^α φ_α` with spinor (constant-form) coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyForm {
    m: usize,
    terms: BTreeMap<Multi, Spinor>,
}

impl PolyForm {
    pub fn zero(m: usize) -> Self {
        Self { m, terms: BTreeMap::new() }
    }

    /// `c · y^α dy^I`.
    pub fn monomial(m: usize, alpha: Multi, s: Subset, c: Rational) -> Self {
        Self::from_spinor(m, alpha, Spinor::basis(m, s).scale(&c))
    }

    pub fn from_spinor(m: usize, alpha: Multi, phi: Spinor) -> Self {
        let mut terms = BTreeMap::new();
        if !phi.is_zero() {
            terms.insert(alpha, phi);
        }
        Self { m, terms }
    }

    /// `p(y) · φ` for a constant form `φ`.
    pub fn poly_times(p: &Polynomial, phi: &Spinor) -> Self {
        let mut out = Self::zero(phi.m());
        for (a, c) in p.terms() {
            out = out.add(&Self::from_spinor(phi.m(), *a, phi.scale(c)));
        }
        out
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &BTreeMap<Multi, Spinor> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut t = self.terms.clone();
        for (a, phi) in &o.terms {
            let sum = match t.get(a) {
                Some(x) => x.add(phi),
                None => phi.clone(),
            };
            if sum.is_zero() {
                t.remove(a);
            } else {
                t.insert(*a, sum);
            }
        }
        Self { m: self.m, terms: t }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.m);
        }
        Self { m: self.m, terms: self.terms.iter().map(|(a, p)| (*a, p.scale(c))).collect() }
    }

    /// Constant part when the form has no `y`-dependence.
    pub fn constant_part(&self) -> Spinor {
        self.terms.get(&Multi::ZERO).cloned().unwrap_or_else(|| Spinor::zero(self.m))
    }
}

impl fmt::Debug for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(a, p)| format!("y^{a:?}·({p:?})")).collect();
        f.write_str(&parts.join(" + "))
    }
}

type TermKey = (Multi, Multi);

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DiffOp {
    m: usize,
    terms: BTreeMap<TermKey, SpinorOp>,
}

fn accumulate(terms: &mut BTreeMap<TermKey, SpinorOp>, key: TermKey, c: &Rational, op: &SpinorOp) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&key) {
        Some(x) => {
            x.axpy_assign(c, op);
            if x.is_zero() {
                terms.remove(&key);
            }
        }
        None => {
            if !op.is_zero() {
                terms.insert(key, op.scale(c));
            }
        }
    }
}

impl DiffOp {
    pub fn zero(m: usize) -> Self {
        Self { m, terms: BTreeMap::new() }
    }

    pub fn identity(m: usize) -> Self {
        Self::constant(SpinorOp::identity(m))
    }

    /// `y^α A ∂^β`.
    pub fn term(alpha: Multi, a: SpinorOp, beta: Multi) -> Self {
        let m = a.m();
        let mut terms = BTreeMap::new();
        if !a.is_zero() {
            terms.insert((beta, alpha), a);
        }
        Self { m, terms }
    }

    /// Order-zero operator with constant coefficient.
    pub fn constant(a: SpinorOp) -> Self {
        Self::term(Multi::ZERO, a, Multi::ZERO)
    }

    /// `∂/∂y_j` (0-based) acting diagonally.
    pub fn partial(m: usize, j: usize) -> Self {
        Self::term(Multi::ZERO, SpinorOp::identity(m), Multi::unit(j))
    }

    /// Multiplication by `p(y)`.
    pub fn multiply(m: usize, p: &Polynomial) -> Self {
        Self::identity(m).left_mul_poly(p)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &BTreeMap<TermKey, SpinorOp> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest `|β|` present; `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.terms.keys().map(|(b, _)| b.degree()).max()
    }

    pub fn coeff_degree(&self) -> usize {
        self.terms.keys().map(|(_, a)| a.degree()).max().unwrap_or(0)
    }

    pub fn parity(&self) -> Parity {
        let mut acc: Option<Parity> = None;
        for op in self.terms.values() {
            let p = op.parity();
            acc = Some(match acc {
                None => p,
                Some(q) if q == p => q,
                _ => Parity::Mixed,
            });
        }
        acc.unwrap_or(Parity::Even)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut t = self.terms.clone();
        for (k, v) in &o.terms {
            accumulate(&mut t, *k, &Rational::one(), v);
        }
        Self { m: self.m, terms: t }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut t = self.terms.clone();
        for (k, v) in &o.terms {
            accumulate(&mut t, *k, &int(-1), v);
        }
        Self { m: self.m, terms: t }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.m);
        }
        Self { m: self.m, terms: self.terms.iter().map(|(k, v)| (*k, v.scale(c))).collect() }
    }

    /// `p(y) · self`.
    pub fn left_mul_poly(&self, p: &Polynomial) -> Self {
        let mut t = BTreeMap::new();
        for ((beta, alpha), op) in &self.terms {
            for (gamma, c) in p.terms() {
                accumulate(&mut t, (*beta, alpha.add(gamma)), c, op);
            }
        }
        Self { m: self.m, terms: t }
    }

    /// `self ∘ o` by the Leibniz rule
    /// `(y^α A ∂^β)(y^γ B ∂^δ) = Σ_μ C(β,μ) γ!/(γ−μ)! y^{α+γ−μ} AB ∂^{β−μ+δ}`.
    pub fn compose(&self, o: &Self) -> Self {
        assert_eq!(self.m, o.m, "operators on different spaces");
        let mut t = BTreeMap::new();
        for ((beta, alpha), a) in &self.terms {
            for ((delta, gamma), b) in &o.terms {
                let ab = a.compose(b);
                if ab.is_zero() {
                    continue;
                }
                for mu in beta.below() {
                    if !mu.le(gamma) {
                        continue;
                    }
                    let c = binomial(beta, &mu) * falling(gamma, &mu);
                    let key = (beta.checked_sub(&mu).unwrap().add(delta), alpha.add(gamma).checked_sub(&mu).unwrap());
                    accumulate(&mut t, key, &c, &ab);
                }
            }
        }
        Self { m: self.m, terms: t }
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.compose(o).sub(&o.compose(self))
    }

    pub fn anticommutator(&self, o: &Self) -> Self {
        self.compose(o).add(&o.compose(self))
    }

    /// Graded bracket: anticommutator iff both operands are odd.
    pub fn super_commutator(&self, o: &Self) -> Result<Self> {
        match (self.parity(), o.parity()) {
            (Parity::Mixed, _) | (_, Parity::Mixed) => {
                Err(Error::Parity("super bracket of an operator without definite parity".into()))
            }
            (Parity::Odd, Parity::Odd) => Ok(self.anticommutator(o)),
            _ => Ok(self.commutator(o)),
        }
    }

    pub fn apply(&self, f: &PolyForm) -> PolyForm {
        let mut out = PolyForm::zero(self.m);
        for ((beta, alpha), a) in &self.terms {
            for (gamma, phi) in f.terms() {
                let Some(rest) = gamma.checked_sub(beta) else { continue };
                let c = falling(gamma, beta);
                let img = a.apply(phi).scale(&c);
                out = out.add(&PolyForm::from_spinor(self.m, alpha.add(&rest), img));
            }
        }
        out
    }

    /// Formal transpose: `y^α A ∂^β ↦ (−∂)^β ∘ y^α Aᵀ`.
    pub fn formal_adjoint(&self) -> Self {
        let mut out = Self::zero(self.m);
        for ((beta, alpha), a) in &self.terms {
            let d = Self::term(Multi::ZERO, SpinorOp::identity(self.m), *beta);
            let sign = crate::rational::sign_pow(beta.degree());
            out = out.add(&d.compose(&Self::term(*alpha, a.transpose(), Multi::ZERO)).scale(&sign));
        }
        out
    }

    /// `σ_k`: the terms with `|β| = k`, with `∂^β ↦ ξ^β`.
    pub fn symbol(&self, k: usize) -> Result<Symbol> {
        if let Some(ord) = self.order() {
            if ord > k {
                return Err(Error::Structural(format!("σ_{k} requested for an operator of order {ord}")));
            }
        }
        let terms = self.terms.iter().filter(|((b, _), _)| b.degree() == k).map(|(k, v)| (*k, v.clone())).collect();
        Ok(Symbol { m: self.m, k, terms })
    }

    /// The part of order exactly `k`, as an operator.
    pub fn homogeneous_part(&self, k: usize) -> Self {
        Self {
            m: self.m,
            terms: self.terms.iter().filter(|((b, _), _)| b.degree() == k).map(|(k, v)| (*k, v.clone())).collect(),
        }
    }

    /// Canonical text: one `coeff·y^α·[matrix]·∂^β` summary per term.
    pub fn canonical(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((b, a), op)| {
                let entries: Vec<String> =
                    op.entries().map(|((r, c), v)| format!("{}@{}:{}", show(v), r, c)).collect();
                format!("y^{a:?}[{}]d^{b:?}", entries.join(" "))
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffOp[m={}, {} terms, order {:?}]", self.m, self.terms.len(), self.order())
    }
}

/// Principal symbol: `Σ ξ^β y^α A` homogeneous of degree `k` in `ξ`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Symbol {
    m: usize,
    k: usize,
    terms: BTreeMap<TermKey, SpinorOp>,
}

impl Symbol {
    pub fn zero(m: usize, k: usize) -> Self {
        Self { m, k, terms: BTreeMap::new() }
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<TermKey, SpinorOp> {
        &self.terms
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut t = self.terms.clone();
        for (k, v) in &o.terms {
            accumulate(&mut t, *k, &Rational::one(), v);
        }
        Self { m: self.m, k: self.k, terms: t }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.m, self.k);
        }
        Self { m: self.m, k: self.k, terms: self.terms.iter().map(|(k, v)| (*k, v.scale(c))).collect() }
    }

    /// Pointwise product; degrees add.
    pub fn mul(&self, o: &Self) -> Self {
        let mut t = BTreeMap::new();
        for ((b, a), x) in &self.terms {
            for ((d, g), y) in &o.terms {
                accumulate(&mut t, (b.add(d), a.add(g)), &Rational::one(), &x.compose(y));
            }
        }
        Self { m: self.m, k: self.k + o.k, terms: t }
    }

    /// Endomorphism at the point `p` and covector `ξ`.
    pub fn eval(&self, p: &[Rational], xi: &[Rational]) -> SpinorOp {
        let mut out = SpinorOp::zero(self.m);
        for ((b, a), op) in &self.terms {
            let c = Polynomial::monomial(*a, Rational::one()).eval(p) * Polynomial::monomial(*b, Rational::one()).eval(xi);
            out.axpy_assign(&c, op);
        }
        out
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Symbol[m={}, k={}, {} terms]", self.m, self.k, self.terms.len())
    }
}

/// Operator `re + i·im` on complex-valued forms.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CDiffOp {
    pub re: DiffOp,
    pub im: DiffOp,
}

/// Complex-valued form `re + i·im`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CForm {
    pub re: PolyForm,
    pub im: PolyForm,
}

impl CForm {
    pub fn real(f: PolyForm) -> Self {
        let m = f.m();
        Self { re: f, im: PolyForm::zero(m) }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn times_i(&self) -> Self {
        Self { re: self.im.scale(&int(-1)), im: self.re.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl CDiffOp {
    pub fn real(op: DiffOp) -> Self {
        let m = op.m();
        Self { re: op, im: DiffOp::zero(m) }
    }

    pub fn new(re: DiffOp, im: DiffOp) -> Self {
        Self { re, im }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { re: self.re.scale(c), im: self.im.scale(c) }
    }

    pub fn times_i(&self) -> Self {
        Self { re: self.im.scale(&int(-1)), im: self.re.clone() }
    }

    pub fn compose(&self, o: &Self) -> Self {
        Self {
            re: self.re.compose(&o.re).sub(&self.im.compose(&o.im)),
            im: self.re.compose(&o.im).add(&self.im.compose(&o.re)),
        }
    }

    pub fn anticommutator(&self, o: &Self) -> Self {
        self.compose(o).add(&o.compose(self))
    }

    /// Complex-bilinear formal transpose.
    pub fn transpose(&self) -> Self {
        Self { re: self.re.formal_adjoint(), im: self.im.formal_adjoint() }
    }

    /// Hermitian formal adjoint (conjugates the scalar `i`).
    pub fn hermitian_adjoint(&self) -> Self {
        Self { re: self.re.formal_adjoint(), im: self.im.formal_adjoint().scale(&int(-1)) }
    }

    pub fn apply(&self, f: &CForm) -> CForm {
        CForm {
            re: self.re.apply(&f.re).sub(&self.im.apply(&f.im)),
            im: self.re.apply(&f.im).add(&self.im.apply(&f.re)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

/// All monomial forms `y^α dy^I` with `|α| ≤ max_deg`.
pub fn monomial_forms(m: usize, max_deg: usize) -> Vec<PolyForm> {
    let mut out = Vec::new();
    for d in 0..=max_deg {
        for a in Multi::all_of_degree(m, d) {
            for s in 0..(1u32 << m) {
                out.push(PolyForm::monomial(m, a, s, Rational::one()));
            }
        }
    }
    out
}

/// Random operator with order `≤ order` and coefficient degree `≤ deg`, built
/// from the given spinor matrices.
pub fn sample_diffop(m: usize, mats: &[SpinorOp], order: usize, deg: usize, rng: &mut impl Rng) -> DiffOp {
    let mut out = DiffOp::zero(m);
    for _ in 0..3 {
        let a = &mats[rng.gen_range(0..mats.len())];
        let beta = Multi::all_of_degree(m, rng.gen_range(0..=order));
        let alpha = Multi::all_of_degree(m, rng.gen_range(0..=deg));
        let b = beta[rng.gen_range(0..beta.len())];
        let g = alpha[rng.gen_range(0..alpha.len())];
        out = out.add(&DiffOp::term(g, a.scale(&int(rng.gen_range(1..=3))), b));
    }
    out
}
