//! The monad matrix of a slice point and the checks built on it.
//!
//! A slice point is laid out as the `(2n+2) x 4n` block matrix
//!
//! ```text
//!  0    I    A1    A2
//! -I    0    B1    B2
//!  0    0    a1^T  a2^T
//!  0    0    b1^T  b2^T
//! ```
//!
//! with column blocks `C1..C4`. Against the symplectic form
//! `q = J_2n (+) J_2` the Gram blocks `M_ij = C_i^T q C_j` encode the
//! complex condition: the monad composition vanishes iff `M_ii = 0` and
//! `M_ij + M_ji = 0` for all `i < j`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::slice::SliceData;

#[derive(Debug, Clone, PartialEq)]
pub struct GammaMatrix<F: Field> {
    n: usize,
    body: Matrix<F>,
}

impl<F: Field> GammaMatrix<F> {
    /// Wraps an arbitrary `(2n+2) x 4n` matrix.
    pub fn from_matrix(n: usize, body: Matrix<F>) -> Result<Self> {
        if body.shape() != (2 * n + 2, 4 * n) {
            return Err(Error::Shape(format!(
                "gamma must be {}x{}, got {:?}",
                2 * n + 2,
                4 * n,
                body.shape()
            )));
        }
        Ok(Self { n, body })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn body(&self) -> &Matrix<F> {
        &self.body
    }

    /// Column block `C_{k+1}`, `k` in `0..4`, of shape `(2n+2) x n`.
    pub fn column_block(&self, k: usize) -> Matrix<F> {
        self.body.block(0, k * self.n, 2 * self.n + 2, self.n)
    }
}

pub fn build_gamma<F: Field>(x: &SliceData<F>) -> GammaMatrix<F> {
    let f = x.field();
    let n = x.n();
    let id = Matrix::identity(f, n);
    let mut body = Matrix::zeros(f, 2 * n + 2, 4 * n);
    body.set_block(0, n, &id);
    body.set_block(n, 0, &id.neg());
    body.set_block(0, 2 * n, x.half.mat(0));
    body.set_block(0, 3 * n, x.half.mat(1));
    body.set_block(n, 2 * n, x.fiber.mat(0));
    body.set_block(n, 3 * n, x.fiber.mat(1));
    for j in 0..n {
        body.set(2 * n, 2 * n + j, x.half.vector(0)[j].clone());
        body.set(2 * n, 3 * n + j, x.half.vector(1)[j].clone());
        body.set(2 * n + 1, 2 * n + j, x.fiber.vector(0)[j].clone());
        body.set(2 * n + 1, 3 * n + j, x.fiber.vector(1)[j].clone());
    }
    GammaMatrix { n, body }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticForm<F: Field> {
    pub n: usize,
    pub q: Matrix<F>,
}

impl<F: Field> SymplecticForm<F> {
    /// `J_2n (+) J_2` with `J_2k = [[0, I_k], [-I_k, 0]]`.
    pub fn standard(field: &F, n: usize) -> Self {
        let mut q = Matrix::zeros(field, 2 * n + 2, 2 * n + 2);
        let one = field.one();
        let minus = field.neg(&one);
        for i in 0..n {
            q.set(i, n + i, one.clone());
            q.set(n + i, i, minus.clone());
        }
        q.set(2 * n, 2 * n + 1, one);
        q.set(2 * n + 1, 2 * n, minus);
        Self { n, q }
    }
}

/// `M_ij = C_i^T q C_j` for `i, j` in `0..4`.
#[derive(Debug, Clone, PartialEq)]
pub struct GramBlocks<F: Field> {
    blocks: Vec<Matrix<F>>,
}

impl<F: Field> GramBlocks<F> {
    pub fn get(&self, i: usize, j: usize) -> &Matrix<F> {
        &self.blocks[4 * i + j]
    }
}

pub fn gram_blocks<F: Field>(gamma: &GammaMatrix<F>) -> Result<GramBlocks<F>> {
    let f = gamma.body.field();
    let q = SymplecticForm::standard(f, gamma.n).q;
    let cols: Vec<Matrix<F>> = (0..4).map(|k| gamma.column_block(k)).collect();
    let qc: Vec<Matrix<F>> = cols.iter().map(|c| q.matmul(c)).collect::<Result<_>>()?;
    let mut blocks = Vec::with_capacity(16);
    for ci in &cols {
        let cit = ci.transpose();
        for qcj in &qc {
            blocks.push(cit.matmul(qcj)?);
        }
    }
    let gram = GramBlocks { blocks };
    for i in 0..4 {
        for j in 0..4 {
            if gram.get(i, j).transpose() != gram.get(j, i).neg() {
                return Err(Error::Invariant(format!("Gram block ({i},{j}) breaks skewness")));
            }
        }
    }
    Ok(gram)
}

/// Coefficientwise vanishing of `sum_ij v_i v_j M_ij`.
pub fn monad_condition<F: Field>(gamma: &GammaMatrix<F>) -> Result<bool> {
    let m = gram_blocks(gamma)?;
    for i in 0..4 {
        if !m.get(i, i).is_zero() {
            return Ok(false);
        }
        for j in i + 1..4 {
            if !m.get(i, j).add(m.get(j, i))?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The fiber `sum_i v_i C_i` of the first monad map at the point `[v]`.
pub fn evaluate_alpha<F: Field>(gamma: &GammaMatrix<F>, v: &[F::Elem]) -> Result<Matrix<F>> {
    let f = gamma.body.field();
    if v.len() != 4 {
        return Err(Error::Shape(format!("point must have 4 coordinates, got {}", v.len())));
    }
    if v.iter().all(|x| f.is_zero(x)) {
        return Err(Error::Domain("the zero vector is not a projective point".into()));
    }
    let mut acc = Matrix::zeros(f, 2 * gamma.n + 2, gamma.n);
    for (k, c) in v.iter().enumerate() {
        if !f.is_zero(c) {
            acc = acc.add(&gamma.column_block(k).scale(c))?;
        }
    }
    Ok(acc)
}

/// Whether the monad maps have full rank over the point `[v]`.
pub fn point_rank_check<F: Field>(gamma: &GammaMatrix<F>, v: &[F::Elem]) -> Result<bool> {
    Ok(evaluate_alpha(gamma, v)?.rank() == gamma.n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PencilReport {
    /// No finite `t` (over the algebraic closure) drops the rank of
    /// `(a1 + t a2 | b1 + t b2)` below 2.
    pub finite_ok: bool,
    /// `(a2 | b2)` has rank 2.
    pub infinity_ok: bool,
}

/// The 2x2 minors of `(a1 + t a2 | b1 + t b2)` as polynomials in `t`.
pub fn pencil_minors<F: Field>(
    field: &F,
    a1: &[F::Elem],
    a2: &[F::Elem],
    b1: &[F::Elem],
    b2: &[F::Elem],
) -> Result<Vec<Poly<F>>> {
    let n = a1.len();
    if [a2.len(), b1.len(), b2.len()].iter().any(|&l| l != n) {
        return Err(Error::Shape("pencil vectors have different lengths".into()));
    }
    let lin = |c0: &F::Elem, c1: &F::Elem| Poly::new(field, vec![c0.clone(), c1.clone()]);
    let mut minors = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            let m = lin(&a1[i], &a2[i])
                .mul(&lin(&b1[j], &b2[j]))
                .sub(&lin(&b1[i], &b2[i]).mul(&lin(&a1[j], &a2[j])));
            minors.push(m);
        }
    }
    Ok(minors)
}

pub fn pencil_check<F: Field>(
    field: &F,
    a1: &[F::Elem],
    a2: &[F::Elem],
    b1: &[F::Elem],
    b2: &[F::Elem],
) -> Result<PencilReport> {
    let minors = pencil_minors(field, a1, a2, b1, b2)?;
    let nonzero: Vec<&Poly<F>> = minors.iter().filter(|m| !m.is_zero()).collect();
    let finite_ok = match nonzero.split_first() {
        None => false,
        Some((first, rest)) => {
            let g = rest.iter().fold((*first).clone(), |g, m| g.gcd(m));
            g.degree() == Some(0)
        }
    };
    let at_infinity = Matrix::from_fn(field, a2.len(), 2, |i, j| {
        if j == 0 { a2[i].clone() } else { b2[i].clone() }
    });
    Ok(PencilReport { finite_ok, infinity_ok: at_infinity.rank() == 2 })
}

/// [`pencil_check`] on the vectors of a slice point.
pub fn pencil_check_slice<F: Field>(x: &SliceData<F>) -> Result<PencilReport> {
    pencil_check(
        x.field(),
        x.half.vector(0),
        x.half.vector(1),
        x.fiber.vector(0),
        x.fiber.vector(1),
    )
}
