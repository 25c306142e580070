//! Univariate polynomials over a [`Field`], used to decide whether a family
//! of 2x2 minors has a common root.

use crate::error::{Error, Result};
use crate::field::Field;

/// Coefficients in ascending degree; trailing zeros are stripped so the
/// zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> Poly<F> {
    pub fn new(field: &F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Self { field: field.clone(), coeffs }
    }

    pub fn from_i64(field: &F, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.of_i64(c)).collect())
    }

    pub fn zero(field: &F) -> Self {
        Self { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn constant(field: &F, c: F::Elem) -> Self {
        Self::new(field, vec![c])
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = f.zero();
        let c = (0..n)
            .map(|i| f.add(self.coeffs.get(i).unwrap_or(&z), other.coeffs.get(i).unwrap_or(&z)))
            .collect();
        Self::new(f, c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&self.field.neg(&self.field.one())))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(|x| self.field.mul(c, x)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let f = &self.field;
        let mut c = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = f.add(&c[i + j], &f.mul(a, b));
            }
        }
        Self::new(f, c)
    }

    pub fn eval(&self, t: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, t), c))
    }

    /// Euclidean division: `(q, r)` with `self = q * divisor + r` and
    /// `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let f = &self.field;
        let Some(lead) = divisor.leading() else {
            return Err(Error::Domain("polynomial division by zero".into()));
        };
        let lead_inv = f.inv(lead)?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(f), self.clone()));
        }
        let mut quot = vec![f.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = f.mul(&rem[k + dd], &lead_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = f.sub(&rem[k + j], &f.mul(&c, d));
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(f, quot), Self::new(f, rem)))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&self.field.inv(l).expect("leading coefficient is nonzero")),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("divisor is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }
}

/// `gcd(f, g)` as a free function.
pub fn poly_gcd<F: Field>(f: &Poly<F>, g: &Poly<F>) -> Poly<F> {
    f.gcd(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::rng::SeededRng;
    use proptest::prelude::*;

    #[test]
    fn gcd_examples() {
        let q = Rationals::default();
        let p = |c: &[i64]| Poly::from_i64(&q, c);
        assert_eq!(poly_gcd(&p(&[-1, 0, 1]), &p(&[-1, 1])), p(&[-1, 1]));
        assert_eq!(poly_gcd(&p(&[0, 1]), &p(&[1])), p(&[1]));
        assert_eq!(poly_gcd(&p(&[-1, 0, 1]), &p(&[1, -2, 1])), p(&[-1, 1]));
        assert_eq!(poly_gcd(&p(&[2, 4]), &Poly::zero(&q)), p(&[2, 4]).monic());
        assert!(poly_gcd(&Poly::zero(&q), &Poly::zero(&q)).is_zero());
    }

    #[test]
    fn zero_has_no_coefficients() {
        let f = PrimeField::default();
        let z = Poly::from_i64(&f, &[0, 0, 0]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert_eq!(Poly::from_i64(&f, &[3, 0, 1, 0]).degree(), Some(2));
    }

    #[test]
    fn division_by_zero_polynomial() {
        let f = PrimeField::default();
        let a = Poly::from_i64(&f, &[1, 1]);
        assert!(a.div_rem(&Poly::zero(&f)).is_err());
    }

    fn random_poly(f: &PrimeField, rng: &mut SeededRng, deg: usize) -> Poly<PrimeField> {
        Poly::new(f, (0..=deg).map(|_| f.sample(rng)).collect())
    }

    proptest! {
        #[test]
        fn gcd_divides_both(seed in any::<u64>(), da in 0usize..5, db in 0usize..5, dc in 0usize..3) {
            let f = PrimeField::default();
            let mut rng = SeededRng::from_seed(seed);
            let common = random_poly(&f, &mut rng, dc);
            let a = random_poly(&f, &mut rng, da).mul(&common);
            let b = random_poly(&f, &mut rng, db).mul(&common);
            let g = a.gcd(&b);
            prop_assert!(!g.is_zero());
            prop_assert!(f.is_one(g.leading().unwrap()));
            prop_assert!(a.div_rem(&g).unwrap().1.is_zero());
            prop_assert!(b.div_rem(&g).unwrap().1.is_zero());
            prop_assert!(g.degree() >= common.degree());
        }

        #[test]
        fn division_identity(seed in any::<u64>(), da in 0usize..7, db in 0usize..4) {
            let f = PrimeField::default();
            let mut rng = SeededRng::from_seed(seed);
            let a = random_poly(&f, &mut rng, da);
            let b = random_poly(&f, &mut rng, db);
            prop_assume!(!b.is_zero());
            let (qt, r) = a.div_rem(&b).unwrap();
            prop_assert_eq!(qt.mul(&b).add(&r), a);
            prop_assert!(r.degree() < b.degree());
        }
    }
}
