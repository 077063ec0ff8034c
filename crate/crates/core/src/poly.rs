//! Multi-indices and polynomials in `y₁, …, y_m` (`m ≤ 8`) with rational
//! coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use crate::linalg::axpy;
use crate::rational::{frac, show, Rational};

pub const MAX_VARS: usize = 8;

/// Exponent vector; also used for derivative orders `∂^β` and covector powers `ξ^β`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multi(pub [u8; MAX_VARS]);

impl Multi {
    pub const ZERO: Multi = Multi([0; MAX_VARS]);

    pub fn unit(j: usize) -> Self {
        let mut e = [0; MAX_VARS];
        e[j] = 1;
        Multi(e)
    }

    pub fn from_slice(s: &[u8]) -> Self {
        let mut e = [0; MAX_VARS];
        e[..s.len()].copy_from_slice(s);
        Multi(e)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&x| x as usize).sum()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(o.0) {
            *a += b;
        }
        Multi(e)
    }

    pub fn checked_sub(&self, o: &Self) -> Option<Self> {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(o.0) {
            *a = a.checked_sub(b)?;
        }
        Some(Multi(e))
    }

    pub fn le(&self, o: &Self) -> bool {
        self.0.iter().zip(o.0).all(|(a, b)| *a <= b)
    }

    /// All `μ` with `μ ≤ self` componentwise.
    pub fn below(&self) -> Vec<Multi> {
        let mut out = vec![Multi::ZERO];
        for j in 0..MAX_VARS {
            let mut next = Vec::new();
            for mu in &out {
                for k in 0..=self.0[j] {
                    let mut e = mu.0;
                    e[j] = k;
                    next.push(Multi(e));
                }
            }
            out = next;
        }
        out
    }

    /// All multi-indices of total degree `deg` in the first `m` variables.
    pub fn all_of_degree(m: usize, deg: usize) -> Vec<Multi> {
        fn go(m: usize, j: usize, left: usize, cur: &mut [u8; MAX_VARS], out: &mut Vec<Multi>) {
            if j + 1 == m {
                cur[j] = left as u8;
                out.push(Multi(*cur));
                cur[j] = 0;
                return;
            }
            for k in 0..=left {
                cur[j] = k as u8;
                go(m, j + 1, left - k, cur, out);
            }
            cur[j] = 0;
        }
        let mut out = Vec::new();
        if m == 0 {
            if deg == 0 {
                out.push(Multi::ZERO);
            }
            return out;
        }
        go(m, 0, deg, &mut [0; MAX_VARS], &mut out);
        out
    }
}

impl fmt::Debug for Multi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u8::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn factorial(n: u8) -> BigInt {
    (1..=n as u64).fold(BigInt::one(), |a, k| a * k)
}

/// `γ!/(γ−μ)!` (falling factorial), zero unless `μ ≤ γ`.
pub fn falling(gamma: &Multi, mu: &Multi) -> Rational {
    if !mu.le(gamma) {
        return Rational::zero();
    }
    let mut r = BigInt::one();
    for (g, u) in gamma.0.iter().zip(mu.0) {
        r *= factorial(*g) / factorial(g - u);
    }
    Rational::from_integer(r)
}

/// Multi-binomial `C(β, μ)`.
pub fn binomial(beta: &Multi, mu: &Multi) -> Rational {
    if !mu.le(beta) {
        return Rational::zero();
    }
    let mut r = BigInt::one();
    for (b, u) in beta.0.iter().zip(mu.0) {
        r *= factorial(*b) / (factorial(u) * factorial(b - u));
    }
    Rational::from_integer(r)
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Multi, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(Multi::ZERO, c)
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn monomial(alpha: Multi, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(alpha, c);
        }
        Self { terms }
    }

    /// The coordinate function `y_j` (0-based).
    pub fn var(j: usize) -> Self {
        Self::monomial(Multi::unit(j), Rational::one())
    }

    pub fn terms(&self) -> &BTreeMap<Multi, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Multi::degree).max().unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut t = self.terms.clone();
        for (k, v) in &o.terms {
            axpy(&mut t, k, v);
        }
        Self { terms: t }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn scale(&self, a: &Rational) -> Self {
        if a.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(k, v)| (*k, v * a)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut t = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                axpy(&mut t, &a.add(b), &(x * y));
            }
        }
        Self { terms: t }
    }

    /// `∂/∂y_j`.
    pub fn derivative(&self, j: usize) -> Self {
        let mut t = BTreeMap::new();
        for (a, v) in &self.terms {
            if a.0[j] > 0 {
                let mut e = a.0;
                e[j] -= 1;
                axpy(&mut t, &Multi(e), &(v * Rational::from_integer(BigInt::from(a.0[j]))));
            }
        }
        Self { terms: t }
    }

    pub fn eval(&self, p: &[Rational]) -> Rational {
        let mut s = Rational::zero();
        for (a, v) in &self.terms {
            let mut t = v.clone();
            for (j, &e) in a.0.iter().enumerate() {
                for _ in 0..e {
                    t *= &p[j];
                }
            }
            s += t;
        }
        s
    }

    /// Random polynomial of degree at most `deg` in `m` variables.
    pub fn sample(m: usize, deg: usize, rng: &mut impl Rng) -> Self {
        let mut t = BTreeMap::new();
        for d in 0..=deg {
            for a in Multi::all_of_degree(m, d) {
                if rng.gen_bool(0.4) {
                    axpy(&mut t, &a, &frac(rng.gen_range(-3..=3), rng.gen_range(1..=2)));
                }
            }
        }
        Self { terms: t }
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(a, v)| format!("{}·y^{:?}", show(v), a)).collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn monomial_enumeration() {
        assert_eq!(Multi::all_of_degree(3, 2).len(), 6);
        assert_eq!(Multi::all_of_degree(1, 4), vec![Multi::from_slice(&[4])]);
        assert_eq!(Multi::from_slice(&[2, 1]).below().len(), 6);
    }

    #[test]
    fn factorial_helpers() {
        let g = Multi::from_slice(&[3, 2]);
        assert_eq!(falling(&g, &Multi::from_slice(&[2, 1])), int(6 * 2));
        assert_eq!(binomial(&g, &Multi::from_slice(&[1, 1])), int(3 * 2));
        assert_eq!(falling(&g, &Multi::from_slice(&[4, 0])), int(0));
    }

    #[test]
    fn derivative_of_square() {
        let y = Polynomial::var(0);
        assert_eq!(y.mul(&y).derivative(0), y.scale(&int(2)));
        assert!(y.derivative(1).is_zero());
    }

    proptest! {
        #[test]
        fn leibniz_for_polynomials(seed in any::<u64>(), j in 0usize..3) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = Polynomial::sample(3, 2, &mut rng);
            let q = Polynomial::sample(3, 2, &mut rng);
            let lhs = p.mul(&q).derivative(j);
            let rhs = p.derivative(j).mul(&q).add(&p.mul(&q.derivative(j)));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn ring_axioms(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (p, q, r) = (Polynomial::sample(2, 2, &mut rng), Polynomial::sample(2, 2, &mut rng), Polynomial::sample(2, 1, &mut rng));
            prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
            prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
            prop_assert_eq!(p.mul(&q), q.mul(&p));
        }
    }
}
