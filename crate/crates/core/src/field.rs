//! Exact coefficient fields.
//!
//! Two fields are supported: a prime field with a word-sized modulus and the
//! rationals with arbitrary-precision numerators and denominators. Algorithms
//! elsewhere in the crate are generic over [`Field`], which owns all the
//! arithmetic; elements are plain values in canonical form, so equality of
//! elements is representational equality.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rng::SeededRng;

/// Default modulus, the Mersenne prime 2^31 - 1.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// Smallest modulus accepted by [`PrimeField::new`].
pub const MIN_PRIME: u64 = 1 << 20;

/// Default half-width of the integer window used to sample rationals.
pub const DEFAULT_WINDOW: u64 = 100;

/// Identifies the active coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldTag {
    PrimeField(u64),
    Rationals,
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::PrimeField(p) => write!(f, "GF({p})"),
            FieldTag::Rationals => write!(f, "QQ"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Send + Sync;

    fn tag(&self) -> FieldTag;

    /// Human-readable description, including sampling configuration.
    fn describe(&self) -> String;

    /// 0 for the rationals.
    fn characteristic(&self) -> u64;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn of_i64(&self, v: i64) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn apply(&self, op: ArithOp, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        match op {
            ArithOp::Add => Ok(self.add(a, b)),
            ArithOp::Sub => Ok(self.sub(a, b)),
            ArithOp::Mul => Ok(self.mul(a, b)),
            ArithOp::Div => self.div(a, b),
        }
    }

    /// Draws one element. Uniform over the field for prime fields; uniform
    /// over an integer window for the rationals.
    fn sample(&self, rng: &mut SeededRng) -> Self::Elem;

    fn sample_nonzero(&self, rng: &mut SeededRng) -> Self::Elem {
        loop {
            let x = self.sample(rng);
            if !self.is_zero(&x) {
                return x;
            }
        }
    }

    /// Exact rank of a matrix over this field. Fields with a faster exact
    /// method override the default Gaussian elimination.
    fn matrix_rank(m: &Matrix<Self>) -> usize
    where
        Self: Sized,
    {
        m.rank_by_elimination()
    }

    /// Pivot preference for elimination; lower is better. Elements of equal
    /// cost are chosen top to bottom.
    fn pivot_cost(&self, _a: &Self::Elem) -> u64 {
        0
    }

    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem>;
}

/// The prime field Z/pZ. Residues are stored in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// A prime field suitable for genericity checks: `p` must be prime and
    /// at least 2^20.
    pub fn new(p: u64) -> Result<Self> {
        if p < MIN_PRIME {
            return Err(Error::Domain(format!(
                "modulus {p} is below the minimum {MIN_PRIME}"
            )));
        }
        Self::new_small(p)
    }

    /// Any prime modulus. Only for toy computations and tests.
    pub fn new_small(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        Self { p: DEFAULT_PRIME }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn tag(&self) -> FieldTag {
        FieldTag::PrimeField(self.p)
    }

    fn describe(&self) -> String {
        self.tag().to_string()
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn of_i64(&self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.p as i128) as u64
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u64) -> Result<u64> {
        if *a == 0 {
            return Err(Error::Domain("division by zero".into()));
        }
        // Fermat: a^(p-2)
        Ok(pow_mod(*a, self.p - 2, self.p))
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn sample(&self, rng: &mut SeededRng) -> u64 {
        rng.gen_range(0..self.p)
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }

    fn parse(&self, s: &str) -> Result<u64> {
        let v: u64 = s
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        if v >= self.p {
            return Err(Error::Parse(format!("{v} is not a canonical residue mod {}", self.p)));
        }
        Ok(v)
    }
}

/// The rational numbers. Elements are reduced fractions with positive
/// denominators; `window` is the half-width `M` of the integer range
/// `[-M, M]` that [`Field::sample`] draws from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rationals {
    pub window: u64,
}

impl Rationals {
    pub fn with_window(window: u64) -> Self {
        Self { window }
    }
}

impl Default for Rationals {
    fn default() -> Self {
        Self { window: DEFAULT_WINDOW }
    }
}

impl Field for Rationals {
    type Elem = BigRational;

    fn tag(&self) -> FieldTag {
        FieldTag::Rationals
    }

    fn describe(&self) -> String {
        format!("QQ[window={}]", self.window)
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn of_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::Domain("division by zero".into()));
        }
        Ok(a.recip())
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }

    fn sample(&self, rng: &mut SeededRng) -> BigRational {
        let m = self.window as i64;
        let v = if m == 0 { 0 } else { rng.gen_range(-m..=m) };
        self.of_i64(v)
    }

    fn matrix_rank(m: &Matrix<Self>) -> usize {
        crate::matrix::rational_rank(m)
    }

    fn pivot_cost(&self, a: &BigRational) -> u64 {
        a.numer().bits().max(a.denom().bits())
    }

    fn format(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn parse(&self, s: &str) -> Result<BigRational> {
        let s = s.trim();
        let err = |e: String| Error::Parse(format!("{s:?}: {e}"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (
                BigInt::from_str(n).map_err(|e| err(e.to_string()))?,
                BigInt::from_str(d).map_err(|e| err(e.to_string()))?,
            ),
            None => (BigInt::from_str(s).map_err(|e| err(e.to_string()))?, BigInt::one()),
        };
        if !den.is_positive() {
            return Err(err("denominator must be positive".into()));
        }
        let r = BigRational::new(num.clone(), den.clone());
        // Only canonical spellings are accepted.
        if r.numer() != &num || r.denom() != &den {
            return Err(err("fraction is not reduced".into()));
        }
        Ok(r)
    }
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let m = m as u128;
    let mut acc: u128 = 1;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn axioms<F: Field>(f: &F, rng: &mut SeededRng, rounds: usize) {
        for _ in 0..rounds {
            let (x, y, z) = (f.sample(rng), f.sample(rng), f.sample(rng));
            assert_eq!(f.add(&f.add(&x, &y), &z), f.add(&x, &f.add(&y, &z)));
            assert_eq!(f.mul(&f.mul(&x, &y), &z), f.mul(&x, &f.mul(&y, &z)));
            assert_eq!(
                f.mul(&x, &f.add(&y, &z)),
                f.add(&f.mul(&x, &y), &f.mul(&x, &z))
            );
            assert_eq!(f.add(&x, &f.neg(&x)), f.zero());
            assert_eq!(f.sub(&x, &y), f.add(&x, &f.neg(&y)));
            if !f.is_zero(&x) {
                assert_eq!(f.mul(&x, &f.inv(&x).unwrap()), f.one());
            }
            assert_eq!(f.parse(&f.format(&x)).unwrap(), x);
        }
    }

    #[test]
    fn prime_field_axioms() {
        let mut rng = SeededRng::from_seed(11);
        axioms(&PrimeField::default(), &mut rng, 10_000);
    }

    #[test]
    fn rational_axioms() {
        let mut rng = SeededRng::from_seed(12);
        let q = Rationals::default();
        // exercise non-integer values too
        for _ in 0..10_000 {
            let x = q.sample(&mut rng);
            let d = q.sample_nonzero(&mut rng);
            let y = q.div(&x, &d).unwrap();
            let z = q.sample(&mut rng);
            assert_eq!(q.add(&q.add(&x, &y), &z), q.add(&x, &q.add(&y, &z)));
            assert_eq!(q.mul(&y, &q.add(&x, &z)), q.add(&q.mul(&y, &x), &q.mul(&y, &z)));
            assert_eq!(q.parse(&q.format(&y)).unwrap(), y);
            assert!(y.denom().is_positive());
        }
        axioms(&q, &mut rng, 1000);
    }

    #[test]
    fn small_field_division() {
        let f7 = PrimeField::new_small(7).unwrap();
        assert_eq!(f7.mul(&2, &4), 1);
        assert_eq!(f7.apply(ArithOp::Div, &1, &2).unwrap(), 4);
    }

    #[test]
    fn rational_addition() {
        let q = Rationals::default();
        let half = q.parse("1/2").unwrap();
        let third = q.parse("1/3").unwrap();
        assert_eq!(q.format(&q.apply(ArithOp::Add, &half, &third).unwrap()), "5/6");
    }

    #[test]
    fn multiplication_by_zero() {
        let mut rng = SeededRng::from_seed(3);
        let f = PrimeField::default();
        let x = f.sample(&mut rng);
        assert_eq!(f.mul(&x, &f.zero()), 0);
        let q = Rationals::default();
        let y = q.sample(&mut rng);
        assert!(q.is_zero(&q.mul(&y, &q.zero())));
    }

    #[test]
    fn division_by_zero_is_a_domain_error() {
        let f = PrimeField::default();
        assert!(matches!(f.div(&3, &0), Err(Error::Domain(_))));
        let q = Rationals::default();
        assert!(matches!(q.div(&q.one(), &q.zero()), Err(Error::Domain(_))));
    }

    #[test]
    fn modulus_validation() {
        assert!(PrimeField::new(DEFAULT_PRIME).is_ok());
        assert!(PrimeField::new(7).is_err());
        assert!(PrimeField::new(2_147_483_649).is_err());
        assert!(PrimeField::new_small(15).is_err());
    }

    #[test]
    fn primality_matches_trial_division() {
        let trial = |n: u64| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d));
        for n in 0..5000 {
            assert_eq!(is_prime(n), trial(n), "n = {n}");
        }
        assert!(is_prime(DEFAULT_PRIME));
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to 2, 3, 5, 7
    }

    #[test]
    fn zero_window_samples_zero() {
        let q = Rationals::with_window(0);
        let mut rng = SeededRng::from_seed(5);
        assert!((0..100).all(|_| q.is_zero(&q.sample(&mut rng))));
    }

    #[test]
    fn rational_window_bounds() {
        let q = Rationals::with_window(5);
        let mut rng = SeededRng::from_seed(6);
        for _ in 0..1000 {
            let x = q.sample(&mut rng);
            assert!(x.is_integer() && x.numer().abs() <= BigInt::from(5));
        }
    }

    #[test]
    fn non_canonical_strings_are_rejected() {
        let q = Rationals::default();
        assert!(q.parse("2/4").is_err());
        assert!(q.parse("1/-2").is_err());
        assert!(PrimeField::default().parse("2147483647").is_err());
    }

    #[test]
    fn large_modulus_arithmetic() {
        let f = PrimeField::new(18_446_744_073_709_551_557).unwrap();
        let a = f.modulus() - 1;
        assert_eq!(f.add(&a, &a), f.modulus() - 2);
        assert_eq!(f.mul(&a, &a), 1);
        assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
    }
}
