//! Algebra of the Barth slice.
//!
//! A slice point consists of four symmetric `n x n` matrices `A1, A2, B1, B2`
//! and four vectors `a1, a2, b1, b2` of length `n`, subject to three
//! skew-symmetric quadratic equations
//!
//! ```text
//! [A1,B1] + a1^b1 = 0
//! [A2,B2] + a2^b2 = 0
//! [A1,B2] + [A2,B1] + a1^b2 + a2^b1 = 0
//! ```
//!
//! where `a^b = a b^T - b a^T`. The equations are bilinear in the "half"
//! `(A1, A2, a1, a2)` and the "fiber" `(B1, B2, b1, b2)`, so freezing the half
//! makes them a linear system in the fiber.
//!
//! Coordinates: a half or fiber is vectorized as the upper triangle
//! (diagonal included, row-major) of its first matrix, then of its second
//! matrix, then the first vector, then the second. A residual is vectorized as
//! the strict upper triangles of `R1, R2, R3`, row-major.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::rng::SeededRng;

/// Number of independent entries of a symmetric `n x n` matrix.
pub fn sym_len(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Number of independent entries of a skew-symmetric `n x n` matrix.
pub fn skew_len(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Coordinate count of a half or a fiber, `n(n+3)`.
pub fn part_len(n: usize) -> usize {
    n * (n + 3)
}

/// Number of scalar equations, `3n(n-1)/2`.
pub fn equation_count(n: usize) -> usize {
    3 * skew_len(n)
}

/// Position of `(i, j)`, `i <= j`, in the row-major upper triangle.
fn sym_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * n - i * i.saturating_sub(1) / 2 + (j - i)
}

/// Position of `(i, j)`, `i < j`, in the row-major strict upper triangle.
fn skew_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

fn check_char<F: Field>(field: &F) -> Result<()> {
    if field.characteristic() == 2 {
        return Err(Error::Domain("characteristic 2 is not supported".into()));
    }
    Ok(())
}

/// Two symmetric matrices and two vectors: the shape shared by the half
/// `(A1, A2, a1, a2)` and the fiber `(B1, B2, b1, b2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SlicePart<F: Field> {
    n: usize,
    mats: [Matrix<F>; 2],
    vecs: [Vec<F::Elem>; 2],
}

/// `(A1, A2, a1, a2)`, the base of the projection onto the half.
pub type HalfData<F> = SlicePart<F>;
/// `(B1, B2, b1, b2)`, the unknowns of the fiber system.
pub type FiberData<F> = SlicePart<F>;

impl<F: Field> SlicePart<F> {
    pub fn new(mats: [Matrix<F>; 2], vecs: [Vec<F::Elem>; 2]) -> Result<Self> {
        let n = mats[0].rows();
        check_char(mats[0].field())?;
        for m in &mats {
            if m.shape() != (n, n) {
                return Err(Error::Shape(format!("expected {n}x{n}, got {:?}", m.shape())));
            }
            if !m.is_symmetric() {
                return Err(Error::Invariant("matrix is not symmetric".into()));
            }
        }
        for v in &vecs {
            if v.len() != n {
                return Err(Error::Shape(format!("expected vector of length {n}, got {}", v.len())));
            }
        }
        Ok(Self { n, mats, vecs })
    }

    pub fn zero(field: &F, n: usize) -> Self {
        Self {
            n,
            mats: [Matrix::zeros(field, n, n), Matrix::zeros(field, n, n)],
            vecs: [vec![field.zero(); n], vec![field.zero(); n]],
        }
    }

    /// Independent uniform entries; symmetric matrices are drawn through
    /// their upper triangles.
    pub fn random(field: &F, n: usize, rng: &mut SeededRng) -> Result<Self> {
        check_char(field)?;
        let coords: Vec<F::Elem> = (0..part_len(n)).map(|_| field.sample(rng)).collect();
        Self::from_coords(field, n, &coords)
    }

    pub fn from_coords(field: &F, n: usize, coords: &[F::Elem]) -> Result<Self> {
        if coords.len() != part_len(n) {
            return Err(Error::Shape(format!(
                "{} coordinates, expected {}",
                coords.len(),
                part_len(n)
            )));
        }
        let s = sym_len(n);
        let mat = |k: usize| {
            Matrix::from_fn(field, n, n, |i, j| coords[k * s + sym_index(n, i, j)].clone())
        };
        let vec = |k: usize| coords[2 * s + k * n..2 * s + (k + 1) * n].to_vec();
        Self::new([mat(0), mat(1)], [vec(0), vec(1)])
    }

    pub fn coords(&self) -> Vec<F::Elem> {
        let mut out = Vec::with_capacity(part_len(self.n));
        for m in &self.mats {
            for i in 0..self.n {
                for j in i..self.n {
                    out.push(m.get(i, j).clone());
                }
            }
        }
        for v in &self.vecs {
            out.extend(v.iter().cloned());
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &F {
        self.mats[0].field()
    }

    pub fn mat(&self, k: usize) -> &Matrix<F> {
        &self.mats[k]
    }

    pub fn vector(&self, k: usize) -> &[F::Elem] {
        &self.vecs[k]
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let f = self.field();
        if self.n != other.n {
            return Err(Error::Shape("adding slice parts of different sizes".into()));
        }
        let v = |k: usize| -> Vec<F::Elem> {
            self.vecs[k].iter().zip(&other.vecs[k]).map(|(a, b)| f.add(a, b)).collect()
        };
        Ok(Self {
            n: self.n,
            mats: [self.mats[0].add(&other.mats[0])?, self.mats[1].add(&other.mats[1])?],
            vecs: [v(0), v(1)],
        })
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = self.field();
        let v = |k: usize| self.vecs[k].iter().map(|x| f.mul(c, x)).collect();
        Self { n: self.n, mats: [self.mats[0].scale(c), self.mats[1].scale(c)], vecs: [v(0), v(1)] }
    }
}

/// A full slice point: half plus fiber.
#[derive(Debug, Clone, PartialEq)]
pub struct SliceData<F: Field> {
    pub half: HalfData<F>,
    pub fiber: FiberData<F>,
}

impl<F: Field> SliceData<F> {
    pub fn new(half: HalfData<F>, fiber: FiberData<F>) -> Result<Self> {
        if half.n != fiber.n {
            return Err(Error::Shape(format!("half n = {}, fiber n = {}", half.n, fiber.n)));
        }
        Ok(Self { half, fiber })
    }

    pub fn zero(field: &F, n: usize) -> Self {
        Self { half: SlicePart::zero(field, n), fiber: SlicePart::zero(field, n) }
    }

    pub fn random(field: &F, n: usize, rng: &mut SeededRng) -> Result<Self> {
        Ok(Self { half: SlicePart::random(field, n, rng)?, fiber: SlicePart::random(field, n, rng)? })
    }

    pub fn n(&self) -> usize {
        self.half.n
    }

    pub fn field(&self) -> &F {
        self.half.field()
    }

    /// Half coordinates followed by fiber coordinates: `2n(n+3)` entries.
    pub fn coords(&self) -> Vec<F::Elem> {
        let mut c = self.half.coords();
        c.extend(self.fiber.coords());
        c
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self { half: self.half.add(&other.half)?, fiber: self.fiber.add(&other.fiber)? })
    }
}

/// Left-hand sides `R1, R2, R3` of the slice equations.
#[derive(Debug, Clone, PartialEq)]
pub struct SliceResidual<F: Field> {
    pub r: [Matrix<F>; 3],
}

impl<F: Field> SliceResidual<F> {
    pub fn is_zero(&self) -> bool {
        self.r.iter().all(Matrix::is_zero)
    }

    /// Strict upper triangles of `R1, R2, R3`, row-major.
    pub fn coords(&self) -> Vec<F::Elem> {
        let mut out = Vec::new();
        for m in &self.r {
            let n = m.rows();
            for i in 0..n {
                for j in i + 1..n {
                    out.push(m.get(i, j).clone());
                }
            }
        }
        out
    }
}

/// `a b^T - b a^T`.
pub fn wedge<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Result<Matrix<F>> {
    if a.len() != b.len() {
        return Err(Error::Shape(format!("wedge of lengths {} and {}", a.len(), b.len())));
    }
    let n = a.len();
    Ok(Matrix::from_fn(field, n, n, |i, j| {
        field.sub(&field.mul(&a[i], &b[j]), &field.mul(&b[i], &a[j]))
    }))
}

fn commutator<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Result<Matrix<F>> {
    a.matmul(b)?.sub(&b.matmul(a)?)
}

/// `[A, B] + a^b`.
fn bracket<F: Field>(
    a_mat: &Matrix<F>,
    a_vec: &[F::Elem],
    b_mat: &Matrix<F>,
    b_vec: &[F::Elem],
) -> Result<Matrix<F>> {
    commutator(a_mat, b_mat)?.add(&wedge(a_mat.field(), a_vec, b_vec)?)
}

/// The three slice equations evaluated at `(half, fiber)`.
pub fn residual_of<F: Field>(half: &HalfData<F>, fiber: &FiberData<F>) -> Result<SliceResidual<F>> {
    if half.n != fiber.n {
        return Err(Error::Shape("half and fiber sizes differ".into()));
    }
    let r1 = bracket(&half.mats[0], &half.vecs[0], &fiber.mats[0], &fiber.vecs[0])?;
    let r2 = bracket(&half.mats[1], &half.vecs[1], &fiber.mats[1], &fiber.vecs[1])?;
    let r3 = bracket(&half.mats[0], &half.vecs[0], &fiber.mats[1], &fiber.vecs[1])?
        .add(&bracket(&half.mats[1], &half.vecs[1], &fiber.mats[0], &fiber.vecs[0])?)?;
    let res = SliceResidual { r: [r1, r2, r3] };
    if !res.r.iter().all(Matrix::is_skew) {
        return Err(Error::Invariant("residual is not skew-symmetric".into()));
    }
    Ok(res)
}

pub fn residual<F: Field>(x: &SliceData<F>) -> Result<SliceResidual<F>> {
    residual_of(&x.half, &x.fiber)
}

/// The purely bilinear term of the expansion
/// `residual(x + h) = residual(x) + directional(x; h) + residual_cross(h)`.
/// Since every equation is bilinear in (half, fiber), this is `residual(h)`.
pub fn residual_cross<F: Field>(h: &SliceData<F>) -> Result<SliceResidual<F>> {
    residual_of(&h.half, &h.fiber)
}

/// First-order term of the expansion: `B(x.half, h.fiber) + B(h.half, x.fiber)`.
pub fn directional<F: Field>(x: &SliceData<F>, h: &SliceData<F>) -> Result<SliceResidual<F>> {
    let a = residual_of(&x.half, &h.fiber)?;
    let b = residual_of(&h.half, &x.fiber)?;
    Ok(SliceResidual {
        r: [a.r[0].add(&b.r[0])?, a.r[1].add(&b.r[1])?, a.r[2].add(&b.r[2])?],
    })
}

/// Adds the coefficients of `[A, X] + a^x` (unknown `X`, `x` in fiber slot
/// `slot`) to the rows of equation block `block` of `sys`.
fn accumulate_bracket<F: Field>(
    sys: &mut Matrix<F>,
    block: usize,
    a_mat: &Matrix<F>,
    a_vec: &[F::Elem],
    slot: usize,
) {
    let f = a_mat.field().clone();
    let n = a_mat.rows();
    let s = sym_len(n);
    let row0 = block * skew_len(n);
    let mat_col = |i: usize, j: usize| slot * s + sym_index(n, i, j);
    let vec_col = |i: usize| 2 * s + slot * n + i;
    let mut bump = |row: usize, col: usize, v: &F::Elem, negate: bool| {
        if f.is_zero(v) {
            return;
        }
        let cur = sys.get(row, col);
        let next = if negate { f.sub(cur, v) } else { f.add(cur, v) };
        sys.set(row, col, next);
    };
    for i in 0..n {
        for j in i + 1..n {
            let row = row0 + skew_index(n, i, j);
            for k in 0..n {
                // (A X)_ij = sum_k A_ik X_kj ; (X A)_ij = sum_k X_ik A_kj
                bump(row, mat_col(k, j), a_mat.get(i, k), false);
                bump(row, mat_col(i, k), a_mat.get(k, j), true);
            }
            // (a x^T - x a^T)_ij = a_i x_j - x_i a_j
            bump(row, vec_col(j), &a_vec[i], false);
            bump(row, vec_col(i), &a_vec[j], true);
        }
    }
}

/// The linear system `L` with `residual(half, f).coords() = L * f.coords()`
/// for every fiber `f`. Shape `3n(n-1)/2 x n(n+3)`.
pub fn fiber_system<F: Field>(half: &HalfData<F>) -> Matrix<F> {
    let n = half.n;
    let mut sys = Matrix::zeros(half.field(), equation_count(n), part_len(n));
    accumulate_bracket(&mut sys, 0, &half.mats[0], &half.vecs[0], 0);
    accumulate_bracket(&mut sys, 1, &half.mats[1], &half.vecs[1], 1);
    accumulate_bracket(&mut sys, 2, &half.mats[0], &half.vecs[0], 1);
    accumulate_bracket(&mut sys, 2, &half.mats[1], &half.vecs[1], 0);
    sys
}

/// The fibers `(I,0,0,0)`, `(0,I,0,0)`, `(A1,A2,0,0)`, `(0,0,a1,a2)`, which
/// solve the slice equations for every half.
pub fn canonical_fiber_solutions<F: Field>(half: &HalfData<F>) -> Vec<FiberData<F>> {
    let f = half.field();
    let n = half.n;
    let id = Matrix::identity(f, n);
    let zm = Matrix::zeros(f, n, n);
    let zv = vec![f.zero(); n];
    vec![
        SlicePart { n, mats: [id.clone(), zm.clone()], vecs: [zv.clone(), zv.clone()] },
        SlicePart { n, mats: [zm.clone(), id], vecs: [zv.clone(), zv.clone()] },
        SlicePart { n, mats: half.mats.clone(), vecs: [zv.clone(), zv] },
        SlicePart { n, mats: [zm.clone(), zm], vecs: half.vecs.clone() },
    ]
}

/// Derivative of `residual(x).coords()` with respect to `x.coords()`.
/// Shape `3n(n-1)/2 x 2n(n+3)`; half columns first.
pub fn jacobian<F: Field>(x: &SliceData<F>) -> Matrix<F> {
    // [A,B] + a^b = -([B,A] + b^a): the half block is the fiber system of
    // the swapped pairing, negated.
    let half_block = fiber_system(&x.fiber).neg();
    let fiber_block = fiber_system(&x.half);
    half_block.hstack(&fiber_block).expect("blocks share the row count")
}

/// An element `(g, [[s, t], [u, v]])` of `O(n) x SL(2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement<F: Field> {
    g: Matrix<F>,
    m: [F::Elem; 4],
}

impl<F: Field> GroupElement<F> {
    /// `m = [s, t, u, v]`.
    pub fn new(g: Matrix<F>, m: [F::Elem; 4]) -> Result<Self> {
        let f = g.field().clone();
        if !g.is_square() {
            return Err(Error::Shape("group element g must be square".into()));
        }
        let ggt = g.matmul(&g.transpose())?;
        if ggt != Matrix::identity(&f, g.rows()) {
            return Err(Error::Invariant("g is not orthogonal".into()));
        }
        let det = f.sub(&f.mul(&m[0], &m[3]), &f.mul(&m[1], &m[2]));
        if !f.is_one(&det) {
            return Err(Error::Invariant("sv - tu != 1".into()));
        }
        Ok(Self { g, m })
    }

    pub fn identity(field: &F, n: usize) -> Self {
        Self { g: Matrix::identity(field, n), m: [field.one(), field.zero(), field.zero(), field.one()] }
    }

    pub fn g(&self) -> &Matrix<F> {
        &self.g
    }

    /// `[s, t, u, v]`.
    pub fn m(&self) -> &[F::Elem; 4] {
        &self.m
    }

    /// `self` after `first`: `apply(apply(x, first), self) = apply(x, self.after(first))`.
    /// Concretely `(g2 g1, m1 m2)`.
    pub fn after(&self, first: &Self) -> Result<Self> {
        let f = self.g.field();
        let [s1, t1, u1, v1] = &first.m;
        let [s2, t2, u2, v2] = &self.m;
        let dot = |a: &F::Elem, b: &F::Elem, c: &F::Elem, d: &F::Elem| f.add(&f.mul(a, b), &f.mul(c, d));
        Ok(Self {
            g: self.g.matmul(&first.g)?,
            m: [dot(s1, s2, t1, u2), dot(s1, t2, t1, v2), dot(u1, s2, v1, u2), dot(u1, t2, v1, v2)],
        })
    }

    pub fn random(field: &F, n: usize, rng: &mut SeededRng) -> Result<Self> {
        let g = random_orthogonal(field, n, rng)?;
        let m = random_sl2(field, rng);
        Self::new(g, m)
    }
}

/// `[s, t, u, v]` with `sv - tu = 1`.
pub fn random_sl2<F: Field>(field: &F, rng: &mut SeededRng) -> [F::Elem; 4] {
    let s = field.sample_nonzero(rng);
    let t = field.sample(rng);
    let u = field.sample(rng);
    let v = field
        .div(&field.add(&field.one(), &field.mul(&t, &u)), &s)
        .expect("s is nonzero");
    [s, t, u, v]
}

/// Cayley transform `(I - S)(I + S)^{-1}` of a skew matrix `S`.
pub fn cayley<F: Field>(skew: &Matrix<F>) -> Result<Matrix<F>> {
    if !skew.is_skew() {
        return Err(Error::Invariant("Cayley transform needs a skew matrix".into()));
    }
    let id = Matrix::identity(skew.field(), skew.rows());
    id.sub(skew)?.matmul(&id.add(skew)?.inverse()?)
}

const CAYLEY_ATTEMPTS: usize = 16;

/// A random element of `O(n)`: the Cayley transform of a random skew matrix
/// composed with a random signed permutation.
pub fn random_orthogonal<F: Field>(field: &F, n: usize, rng: &mut SeededRng) -> Result<Matrix<F>> {
    use rand::seq::SliceRandom;
    use rand::Rng;

    check_char(field)?;
    for _ in 0..CAYLEY_ATTEMPTS {
        let mut s = Matrix::zeros(field, n, n);
        for i in 0..n {
            for j in i + 1..n {
                let x = field.sample(rng);
                s.set(j, i, field.neg(&x));
                s.set(i, j, x);
            }
        }
        let Ok(c) = cayley(&s) else { continue };
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        let mut p = Matrix::zeros(field, n, n);
        for (i, &j) in perm.iter().enumerate() {
            let sign = if rng.gen::<bool>() { field.one() } else { field.neg(&field.one()) };
            p.set(i, j, sign);
        }
        return c.matmul(&p);
    }
    Err(Error::Sampling(format!("I + S singular in {CAYLEY_ATTEMPTS} attempts")))
}

/// The action `(g, m) . x`, images in the order `a1, b1, a2, b2`:
/// matrices go to `g M g^T`, `a_i -> s g a_i + u g b_i`,
/// `b_i -> t g a_i + v g b_i`.
pub fn apply_group<F: Field>(x: &SliceData<F>, e: &GroupElement<F>) -> Result<SliceData<F>> {
    let f = x.field();
    let g = &e.g;
    if g.rows() != x.n() {
        return Err(Error::Shape("group element acts on a different n".into()));
    }
    let gt = g.transpose();
    let conj = |m: &Matrix<F>| -> Result<Matrix<F>> { g.matmul(m)?.matmul(&gt) };
    let [s, t, u, v] = &e.m;
    let combine = |c1: &F::Elem, x1: &[F::Elem], c2: &F::Elem, x2: &[F::Elem]| -> Result<Vec<F::Elem>> {
        let mixed: Vec<F::Elem> =
            x1.iter().zip(x2).map(|(p, q)| f.add(&f.mul(c1, p), &f.mul(c2, q))).collect();
        g.mul_vec(&mixed)
    };
    let (ha, fb) = (&x.half, &x.fiber);
    let half = SlicePart::new(
        [conj(&ha.mats[0])?, conj(&ha.mats[1])?],
        [combine(s, &ha.vecs[0], u, &fb.vecs[0])?, combine(s, &ha.vecs[1], u, &fb.vecs[1])?],
    )?;
    let fiber = SlicePart::new(
        [conj(&fb.mats[0])?, conj(&fb.mats[1])?],
        [combine(t, &ha.vecs[0], v, &fb.vecs[0])?, combine(t, &ha.vecs[1], v, &fb.vecs[1])?],
    )?;
    SliceData::new(half, fiber)
}
