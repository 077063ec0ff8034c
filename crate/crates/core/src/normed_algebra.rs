//! The four normed division algebras R, C, H, O with exact rational
//! coordinates.
//!
//! Elements are stored against the basis `1, e1, ..., e_{d-1}`. Products use
//! one signed 8x8 table; since each algebra sits inside the next as the
//! leading coordinates, the same table restricted to the first `d` indices
//! serves R, C and H as well.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{frac, int, show, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Algebra {
    R,
    C,
    H,
    O,
}

impl Algebra {
    pub const ALL: [Algebra; 4] = [Algebra::R, Algebra::C, Algebra::H, Algebra::O];

    pub fn dim(self) -> usize {
        match self {
            Algebra::R => 1,
            Algebra::C => 2,
            Algebra::H => 4,
            Algebra::O => 8,
        }
    }

    pub fn is_associative(self) -> bool {
        self != Algebra::O
    }

    pub fn name(self) -> &'static str {
        match self {
            Algebra::R => "R",
            Algebra::C => "C",
            Algebra::H => "H",
            Algebra::O => "O",
        }
    }

    /// K' for the semi-flat reduction: R below C, C below H.
    pub fn semi_flat_base(self) -> Option<Algebra> {
        match self {
            Algebra::C => Some(Algebra::R),
            Algebra::H => Some(Algebra::C),
            _ => None,
        }
    }

    pub fn parse(s: &str) -> Option<Algebra> {
        match s {
            "R" | "r" => Some(Algebra::R),
            "C" | "c" => Some(Algebra::C),
            "H" | "h" => Some(Algebra::H),
            "O" | "o" => Some(Algebra::O),
            _ => None,
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `e_i e_j = sign * e_k`, stored as `(sign, k)`.
///
/// Generated from the doubling rule `(a,b)(c,d) = (ac - conj(d) b, da + b conj(c))`
/// applied R -> C -> H -> O; `cayley_dickson_oracle` in the tests rebuilds it.
pub const OCTONION_TABLE: [[(i8, u8); 8]; 8] = [
    [(1, 0), (1, 1), (1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (1, 7)],
    [(1, 1), (-1, 0), (1, 3), (-1, 2), (1, 5), (-1, 4), (-1, 7), (1, 6)],
    [(1, 2), (-1, 3), (-1, 0), (1, 1), (1, 6), (1, 7), (-1, 4), (-1, 5)],
    [(1, 3), (1, 2), (-1, 1), (-1, 0), (1, 7), (-1, 6), (1, 5), (-1, 4)],
    [(1, 4), (-1, 5), (-1, 6), (-1, 7), (-1, 0), (1, 1), (1, 2), (1, 3)],
    [(1, 5), (1, 4), (-1, 7), (1, 6), (-1, 1), (-1, 0), (-1, 3), (1, 2)],
    [(1, 6), (1, 7), (1, 4), (-1, 5), (-1, 2), (1, 3), (-1, 0), (-1, 1)],
    [(1, 7), (-1, 6), (1, 5), (1, 4), (-1, 3), (-1, 2), (1, 1), (-1, 0)],
];

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NormedElement {
    algebra: Algebra,
    coords: Vec<Rational>,
}

impl NormedElement {
    pub fn new(algebra: Algebra, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != algebra.dim() {
            return Err(Error::Structural(format!(
                "{} coordinates supplied for {algebra} (dimension {})",
                coords.len(),
                algebra.dim()
            )));
        }
        Ok(Self { algebra, coords })
    }

    pub fn zero(algebra: Algebra) -> Self {
        Self { algebra, coords: vec![Rational::zero(); algebra.dim()] }
    }

    pub fn one(algebra: Algebra) -> Self {
        Self::basis(algebra, 0)
    }

    pub fn real(algebra: Algebra, r: Rational) -> Self {
        let mut e = Self::zero(algebra);
        e.coords[0] = r;
        e
    }

    /// The basis unit `e_i` (`e_0 = 1`).
    pub fn basis(algebra: Algebra, i: usize) -> Self {
        let mut e = Self::zero(algebra);
        e.coords[i] = Rational::one();
        e
    }

    pub fn from_ints(algebra: Algebra, coords: &[i64]) -> Result<Self> {
        Self::new(algebra, coords.iter().map(|&c| int(c)).collect())
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.algebra != other.algebra {
            return Err(Error::Structural(format!(
                "cannot multiply elements of {} and {}",
                self.algebra, other.algebra
            )));
        }
        let d = self.algebra.dim();
        let mut out = vec![Rational::zero(); d];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let (s, k) = OCTONION_TABLE[i][j];
                let p = a * b;
                if s > 0 {
                    out[k as usize] += p;
                } else {
                    out[k as usize] -= p;
                }
            }
        }
        Ok(Self { algebra: self.algebra, coords: out })
    }

    pub fn conj(&self) -> Self {
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(i, c)| if i == 0 { c.clone() } else { -c })
            .collect();
        Self { algebra: self.algebra, coords }
    }

    pub fn re(&self) -> Rational {
        self.coords[0].clone()
    }

    pub fn im(&self) -> Self {
        let mut e = self.clone();
        e.coords[0] = Rational::zero();
        e
    }

    pub fn norm_sq(&self) -> Rational {
        self.coords.iter().map(|c| c * c).fold(Rational::zero(), |a, b| a + b)
    }

    /// Real inner product `Re(a conj(b))`.
    pub fn dot(&self, other: &Self) -> Rational {
        self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).fold(Rational::zero(), |a, b| a + b)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self { algebra: self.algebra, coords: self.coords.iter().map(|c| c * s).collect() }
    }

    /// Deterministic rational point on the unit sphere of `algebra`.
    ///
    /// Uses inverse stereographic projection `(1 - |v|^2, 2v) / (1 + |v|^2)`
    /// of a rational vector `v` in the imaginary directions; for R the result
    /// is `+1` or `-1`.
    pub fn sample_unit(algebra: Algebra, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0000_0000_0001);
        if algebra == Algebra::R {
            let s = if rng.gen::<bool>() { 1 } else { -1 };
            return Self::real(algebra, int(s));
        }
        let v: Vec<Rational> =
            (1..algebra.dim()).map(|_| frac(rng.gen_range(-4..=4), rng.gen_range(1..=5))).collect();
        let vv = v.iter().map(|x| x * x).fold(Rational::zero(), |a, b| a + b);
        let den = Rational::one() + &vv;
        let mut coords = vec![(Rational::one() - &vv) / &den];
        coords.extend(v.iter().map(|x| (int(2) * x) / &den));
        Self { algebra, coords }
    }

    /// Element with small random rational coordinates.
    pub fn sample(algebra: Algebra, rng: &mut impl Rng) -> Self {
        let coords = (0..algebra.dim()).map(|_| frac(rng.gen_range(-5..=5), rng.gen_range(1..=4))).collect();
        Self { algebra, coords }
    }
}

impl Add for &NormedElement {
    type Output = NormedElement;
    fn add(self, rhs: &NormedElement) -> NormedElement {
        assert_eq!(self.algebra, rhs.algebra);
        NormedElement {
            algebra: self.algebra,
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &NormedElement {
    type Output = NormedElement;
    fn sub(self, rhs: &NormedElement) -> NormedElement {
        assert_eq!(self.algebra, rhs.algebra);
        NormedElement {
            algebra: self.algebra,
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &NormedElement {
    type Output = NormedElement;
    fn neg(self) -> NormedElement {
        NormedElement { algebra: self.algebra, coords: self.coords.iter().map(|a| -a).collect() }
    }
}

/// Panicking product for call sites that already share an algebra.
impl Mul for &NormedElement {
    type Output = NormedElement;
    fn mul(self, rhs: &NormedElement) -> NormedElement {
        NormedElement::mul(self, rhs).expect("algebra tags differ")
    }
}

impl fmt::Debug for NormedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(show).collect();
        write!(f, "{}({})", self.algebra, parts.join(", "))
    }
}

/// A basis triple witnessing that octonion multiplication is not associative.
pub fn octonion_associator_witness() -> (usize, usize, usize) {
    for i in 1..8 {
        for j in 1..8 {
            for k in 1..8 {
                let (a, b, c) = (
                    NormedElement::basis(Algebra::O, i),
                    NormedElement::basis(Algebra::O, j),
                    NormedElement::basis(Algebra::O, k),
                );
                if &(&a * &b) * &c != &a * &(&b * &c) {
                    return (i, j, k);
                }
            }
        }
    }
    unreachable!("octonions are not associative")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cd_conj(x: &[i64]) -> Vec<i64> {
        if x.len() == 1 {
            return x.to_vec();
        }
        let h = x.len() / 2;
        let mut out = cd_conj(&x[..h]);
        out.extend(x[h..].iter().map(|c| -c));
        out
    }

    /// Independent doubling construction `(a,b)(c,d) = (ac - conj(d) b, da + b conj(c))`.
    fn cayley_dickson_oracle(x: &[i64], y: &[i64]) -> Vec<i64> {
        if x.len() == 1 {
            return vec![x[0] * y[0]];
        }
        let h = x.len() / 2;
        let (a, b, c, d) = (&x[..h], &x[h..], &y[..h], &y[h..]);
        let ac = cayley_dickson_oracle(a, c);
        let db = cayley_dickson_oracle(&cd_conj(d), b);
        let da = cayley_dickson_oracle(d, a);
        let bc = cayley_dickson_oracle(b, &cd_conj(c));
        let mut out: Vec<i64> = ac.iter().zip(&db).map(|(p, q)| p - q).collect();
        out.extend(da.iter().zip(&bc).map(|(p, q)| p + q));
        out
    }

    #[test]
    fn table_matches_doubling_oracle() {
        for i in 0..8 {
            for j in 0..8 {
                let mut ei = vec![0; 8];
                let mut ej = vec![0; 8];
                ei[i] = 1;
                ej[j] = 1;
                let p = cayley_dickson_oracle(&ei, &ej);
                let (s, k) = OCTONION_TABLE[i][j];
                for (t, c) in p.iter().enumerate() {
                    let expect = if t == k as usize { s as i64 } else { 0 };
                    assert_eq!(*c, expect, "e{i} e{j}");
                }
            }
        }
    }

    #[test]
    fn unit_law_and_quaternion_units() {
        let x = NormedElement::from_ints(Algebra::H, &[2, -1, 3, 5]).unwrap();
        assert_eq!(&NormedElement::one(Algebra::H) * &x, x);
        let e = |i| NormedElement::basis(Algebra::H, i);
        assert_eq!(&e(1) * &e(2), e(3));
        let m1 = NormedElement::real(Algebra::H, int(-1));
        assert_eq!(&(&e(1) * &e(2)) * &e(3), m1);
        for i in 1..4 {
            assert_eq!(&e(i) * &e(i), m1);
        }
    }

    #[test]
    fn octonion_product_from_table() {
        let e1 = NormedElement::basis(Algebra::O, 1);
        let e2 = NormedElement::basis(Algebra::O, 2);
        let mut ei = vec![0; 8];
        let mut ej = vec![0; 8];
        ei[1] = 1;
        ej[2] = 1;
        let expect: Vec<Rational> = cayley_dickson_oracle(&ei, &ej).into_iter().map(int).collect();
        assert_eq!((&e1 * &e2).coords(), &expect[..]);
    }

    #[test]
    fn mismatched_tags_are_rejected() {
        let a = NormedElement::one(Algebra::C);
        let b = NormedElement::one(Algebra::H);
        assert!(matches!(a.mul(&b), Err(Error::Structural(_))));
    }

    #[test]
    fn conj_re_im_norm() {
        let one = NormedElement::one(Algebra::C);
        assert_eq!(one.conj(), one);
        assert!(one.im().is_zero());
        let z = NormedElement::new(Algebra::C, vec![frac(3, 5), frac(4, 5)]).unwrap();
        assert_eq!(z.norm_sq(), int(1));
    }

    #[test]
    fn octonions_fail_associativity_but_are_alternative() {
        let (i, j, k) = octonion_associator_witness();
        let e = |t| NormedElement::basis(Algebra::O, t);
        assert_ne!(&(&e(i) * &e(j)) * &e(k), &e(i) * &(&e(j) * &e(k)));
    }

    #[test]
    fn sample_unit_is_exact_and_reproducible() {
        for alg in Algebra::ALL {
            for seed in 0..20 {
                let u = NormedElement::sample_unit(alg, seed);
                assert_eq!(u.norm_sq(), int(1), "{alg} seed {seed}");
                assert_eq!(u, NormedElement::sample_unit(alg, seed));
            }
        }
        let r = NormedElement::sample_unit(Algebra::R, 3);
        assert!(r.re() == int(1) || r.re() == int(-1));
    }

    #[test]
    fn sample_unit_c_is_stereographic() {
        let u = NormedElement::sample_unit(Algebra::C, 11);
        // (1 - t^2, 2t) / (1 + t^2) with t = coords[1] / (1 + coords[0])
        let t = u.coords()[1].clone() / (int(1) + u.re());
        let den = int(1) + &t * &t;
        assert_eq!(u.re(), (int(1) - &t * &t) / &den);
    }

    fn elem(alg: Algebra) -> impl Strategy<Value = NormedElement> {
        prop::collection::vec((-6i64..=6, 1i64..=4), alg.dim())
            .prop_map(move |v| NormedElement::new(alg, v.into_iter().map(|(n, d)| frac(n, d)).collect()).unwrap())
    }

    fn any_alg() -> impl Strategy<Value = Algebra> {
        prop::sample::select(Algebra::ALL.to_vec())
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative((a, b) in any_alg().prop_flat_map(|k| (elem(k), elem(k)))) {
            prop_assert_eq!((&a * &b).norm_sq(), a.norm_sq() * b.norm_sq());
        }

        #[test]
        fn conj_is_anti_automorphism((a, b) in any_alg().prop_flat_map(|k| (elem(k), elem(k)))) {
            prop_assert_eq!((&a * &b).conj(), &b.conj() * &a.conj());
            prop_assert_eq!(&a * &a.conj(), NormedElement::real(a.algebra(), a.norm_sq()));
        }

        #[test]
        fn alternative_laws((a, b) in any_alg().prop_flat_map(|k| (elem(k), elem(k)))) {
            prop_assert_eq!(&a * &(&a * &b), &(&a * &a) * &b);
            prop_assert_eq!(&(&a * &b) * &b, &a * &(&b * &b));
        }

        #[test]
        fn associative_below_octonions(
            (a, b, c) in prop::sample::select(vec![Algebra::R, Algebra::C, Algebra::H])
                .prop_flat_map(|k| (elem(k), elem(k), elem(k)))
        ) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }
    }
}
