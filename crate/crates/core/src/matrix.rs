//! Dense exact matrices, row-major.

use std::fmt;

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::field::{Field, PrimeField, Rationals};

#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon<F: Field> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Self { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_vec(field: &F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { field: field.clone(), rows, cols, data })
    }

    pub fn from_rows(field: &F, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::from_vec(field, r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(field: &F, rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            field,
            rows.iter().map(|r| r.iter().map(|&v| field.of_i64(v)).collect()).collect(),
        )
    }

    /// Single column.
    pub fn column_vector(field: &F, v: &[F::Elem]) -> Self {
        Self { field: field.clone(), rows: v.len(), cols: 1, data: v.to_vec() }
    }

    pub fn from_fn(
        field: &F,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> F::Elem,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { field: field.clone(), rows, cols, data }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn into_rows(self) -> Vec<Vec<F::Elem>> {
        let cols = self.cols.max(1);
        if self.cols == 0 {
            return vec![Vec::new(); self.rows];
        }
        self.data.chunks(cols).map(<[_]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn is_skew(&self) -> bool {
        self.is_square() && *self == self.transpose().neg()
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect())
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&F::Elem, &F::Elem) -> F::Elem) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| op(a, b)).collect();
        Ok(Self { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| self.field.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| self.field.sub(a, b))
    }

    pub fn neg(&self) -> Self {
        self.map(|a| self.field.neg(a))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        self.map(|a| self.field.mul(c, a))
    }

    fn map(&self, op: impl Fn(&F::Elem) -> F::Elem) -> Self {
        Self {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(op).collect(),
        }
    }

    /// Copy of the `height x width` block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, height: usize, width: usize) -> Self {
        Self::from_fn(&self.field, height, width, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Shape("hstack with different row counts".into()));
        }
        let mut out = Self::zeros(&self.field, self.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(0, self.cols, other);
        Ok(out)
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::Shape("vstack with different column counts".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Self { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Index of the preferred pivot in column `c` among rows `from..`.
    fn choose_pivot(&self, c: usize, from: usize) -> Option<usize> {
        let f = &self.field;
        let mut best: Option<(usize, u64)> = None;
        for r in from..self.rows {
            let x = self.get(r, c);
            if f.is_zero(x) {
                continue;
            }
            let cost = f.pivot_cost(x);
            if best.is_none_or(|(_, b)| cost < b) {
                best = Some((r, cost));
                if cost == 0 {
                    break;
                }
            }
        }
        best.map(|(r, _)| r)
    }

    /// `row[target] -= factor * row[source]`, starting from column `from`.
    fn eliminate(&mut self, target: usize, source: usize, factor: &F::Elem, from: usize) {
        let f = self.field.clone();
        for j in from..self.cols {
            let s = &self.data[source * self.cols + j];
            if f.is_zero(s) {
                continue;
            }
            let delta = f.mul(factor, s);
            let idx = target * self.cols + j;
            self.data[idx] = f.sub(&self.data[idx], &delta);
        }
    }

    /// Exact rank over the field.
    pub fn rank(&self) -> usize {
        F::matrix_rank(self)
    }

    /// Exact rank by forward elimination with the field's pivot rule.
    pub fn rank_by_elimination(&self) -> usize {
        let mut m = self.clone();
        let f = self.field.clone();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = m.choose_pivot(c, r) else { continue };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for i in r + 1..m.rows {
                if f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = f.mul(m.get(i, c), &inv);
                m.eliminate(i, r, &factor, c);
            }
            r += 1;
        }
        r
    }

    /// Reduced row echelon form (Gauss-Jordan).
    pub fn rref(&self) -> Echelon<F> {
        let mut m = self.clone();
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = m.choose_pivot(c, r) else { continue };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let idx = r * m.cols + j;
                m.data[idx] = f.mul(&m.data[idx], &inv);
            }
            for i in 0..m.rows {
                if i == r || f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = m.get(i, c).clone();
                m.eliminate(i, r, &factor, c);
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { matrix: m, pivots }
    }

    /// A basis of the right kernel `{v : A v = 0}`, returned in reduced
    /// echelon form (as the rows of a matrix), so equal kernels produce
    /// identical bases.
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let Echelon { matrix: r, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let basis: Vec<Vec<F::Elem>> = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![f.zero(); self.cols];
                v[free] = f.one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = f.neg(r.get(i, free));
                }
                v
            })
            .collect();
        echelon_basis(f, self.cols, &basis)
    }

    /// Inverse of a square matrix.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(&self.field, n))?;
        let Echelon { matrix, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Domain("matrix is singular".into()));
        }
        Ok(matrix.block(0, n, n, n))
    }

    /// Plain-text dump: one row per line, entries separated by single spaces.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|x| self.field.format(x)).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn parse_dump(field: &F, text: &str) -> Result<Self> {
        let rows = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| l.split(' ').map(|tok| field.parse(tok)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(field, rows)
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} over {}\n{}", self.rows, self.cols, self.field.describe(), self.dump())
    }
}

/// Reduced echelon basis of the span of `vectors` (each of length `dim`).
pub fn echelon_basis<F: Field>(field: &F, dim: usize, vectors: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_vec(field, vectors.len(), dim, vectors.concat())
        .expect("vectors share a length");
    let Echelon { matrix, pivots } = m.rref();
    matrix.into_rows().into_iter().take(pivots.len()).collect()
}

/// Dimension of the span of `vectors`.
pub fn span_rank<F: Field>(field: &F, dim: usize, vectors: &[Vec<F::Elem>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_vec(field, vectors.len(), dim, vectors.concat())
        .expect("vectors share a length")
        .rank()
}

/// Whether two families of vectors span the same subspace, decided by
/// comparing their canonical echelon bases.
pub fn same_span<F: Field>(field: &F, dim: usize, a: &[Vec<F::Elem>], b: &[Vec<F::Elem>]) -> bool {
    echelon_basis(field, dim, a) == echelon_basis(field, dim, b)
}

/// Primes used for the modular lower bound in [`rational_rank`].
const RANK_PRIMES: [u64; 3] = [2_147_483_647, 2_305_843_009_213_693_951, 4_611_686_018_427_387_847];

/// Rank over the rationals.
///
/// Rows are scaled to integer rows (rank unchanged). Reducing an integer
/// matrix modulo a prime can only lower its rank, so a modular rank equal to
/// `min(rows, cols)` is exact. Otherwise the rank is computed by fraction-free
/// (Bareiss) elimination over the integers.
pub fn rational_rank(m: &Matrix<Rationals>) -> usize {
    let full = m.rows.min(m.cols);
    if full == 0 {
        return 0;
    }
    let rows = integer_rows(m);
    for &p in &RANK_PRIMES {
        let fp = PrimeField::new(p).expect("rank primes are prime");
        let big_p = BigInt::from(p);
        let reduced = Matrix::from_fn(&fp, m.rows, m.cols, |i, j| {
            rows[i][j].mod_floor(&big_p).to_u64().expect("residue fits in u64")
        });
        if reduced.rank_by_elimination() == full {
            return full;
        }
    }
    bareiss_rank(rows)
}

fn integer_rows(m: &Matrix<Rationals>) -> Vec<Vec<BigInt>> {
    (0..m.rows)
        .map(|i| {
            let row = m.row(i);
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect()
}

/// Rank of an integer matrix by fraction-free elimination; every division
/// is exact.
pub fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[c];
        for row in rest.iter_mut() {
            let lead = row[c].clone();
            for j in c + 1..cols {
                let v = pivot * &row[j] - &lead * &pivot_row[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
            row[c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::rng::SeededRng;

    fn random<F: Field>(f: &F, rng: &mut SeededRng, r: usize, c: usize) -> Matrix<F> {
        Matrix::from_fn(f, r, c, |_, _| f.sample(rng))
    }

    #[test]
    fn identity_is_neutral() {
        let f = PrimeField::default();
        let mut rng = SeededRng::from_seed(1);
        let a = random(&f, &mut rng, 4, 6);
        assert_eq!(a.matmul(&Matrix::identity(&f, 6)).unwrap(), a);
        assert_eq!(Matrix::identity(&f, 4).matmul(&a).unwrap(), a);
    }

    #[test]
    fn transpose_of_product() {
        let f = PrimeField::default();
        let mut rng = SeededRng::from_seed(2);
        for _ in 0..20 {
            let a = random(&f, &mut rng, 5, 5);
            let b = random(&f, &mut rng, 5, 5);
            assert_eq!(
                a.matmul(&b).unwrap().transpose(),
                b.transpose().matmul(&a.transpose()).unwrap()
            );
        }
    }

    #[test]
    fn small_product() {
        let q = Rationals::default();
        let a = Matrix::from_i64_rows(&q, &[&[0, 1], &[1, 0]]).unwrap();
        let b = Matrix::from_i64_rows(&q, &[&[1, 0], &[0, -1]]).unwrap();
        let expected = Matrix::from_i64_rows(&q, &[&[0, -1], &[1, 0]]).unwrap();
        assert_eq!(a.matmul(&b).unwrap(), expected);
    }

    #[test]
    fn shape_mismatch() {
        let f = PrimeField::default();
        let a = Matrix::zeros(&f, 2, 3);
        assert!(matches!(a.matmul(&a), Err(Error::Shape(_))));
        assert!(matches!(a.mul_vec(&[0, 0]), Err(Error::Shape(_))));
    }

    #[test]
    fn rank_examples() {
        let q = Rationals::default();
        assert_eq!(Matrix::zeros(&q, 3, 5).rank(), 0);
        assert_eq!(Matrix::identity(&q, 6).rank(), 6);
        assert_eq!(Matrix::from_i64_rows(&q, &[&[1, 2], &[2, 4]]).unwrap().rank(), 1);
        assert_eq!(Matrix::zeros(&q, 0, 4).rank(), 0);
    }

    #[test]
    fn kernel_examples() {
        let q = Rationals::default();
        let k = Matrix::from_i64_rows(&q, &[&[1, 1]]).unwrap().kernel_basis();
        assert_eq!(k, vec![vec![q.of_i64(1), q.of_i64(-1)]]);
        assert!(Matrix::identity(&q, 5).kernel_basis().is_empty());
        let f = PrimeField::default();
        assert_eq!(Matrix::zeros(&f, 0, 3).kernel_basis().len(), 3);
    }

    #[test]
    fn rank_nullity_and_kernel_membership() {
        let f = PrimeField::default();
        let mut rng = SeededRng::from_seed(3);
        for t in 0..30 {
            // low-rank products to get nontrivial kernels
            let inner = 1 + t % 5;
            let a = random(&f, &mut rng, 6, inner).matmul(&random(&f, &mut rng, inner, 8)).unwrap();
            let k = a.kernel_basis();
            assert_eq!(k.len() + a.rank(), a.cols());
            assert_eq!(span_rank(&f, 8, &k), k.len());
            for v in &k {
                assert!(a.mul_vec(v).unwrap().iter().all(|x| *x == 0));
            }
            assert_eq!(a.rank(), a.transpose().rank());
        }
    }

    #[test]
    fn rational_kernel_membership() {
        let q = Rationals::with_window(4);
        let mut rng = SeededRng::from_seed(4);
        for _ in 0..10 {
            let a = random(&q, &mut rng, 3, 2).matmul(&random(&q, &mut rng, 2, 6)).unwrap();
            let k = a.kernel_basis();
            assert_eq!(k.len() + a.rank(), 6);
            for v in &k {
                assert!(a.mul_vec(v).unwrap().iter().all(|x| q.is_zero(x)));
            }
        }
    }

    #[test]
    fn rational_rank_dominates_modular_rank() {
        use num_bigint::BigInt;
        use num_traits::ToPrimitive;
        let q = Rationals::with_window(3);
        let f = PrimeField::default();
        let p = BigInt::from(f.modulus());
        let mut rng = SeededRng::from_seed(5);
        let mut equal = 0;
        let trials = 200;
        for t in 0..trials {
            let inner = 1 + t % 6;
            let a = random(&q, &mut rng, 5, inner).matmul(&random(&q, &mut rng, inner, 6)).unwrap();
            let reduced = Matrix::from_fn(&f, 5, 6, |i, j| {
                let x = a.get(i, j).to_integer();
                ((x % &p + &p) % &p).to_u64().unwrap()
            });
            let (rq, rp) = (a.rank(), reduced.rank());
            assert!(rq >= rp);
            if rq == rp {
                equal += 1;
            }
        }
        assert!(equal * 100 >= trials * 99, "{equal}/{trials}");
    }

    #[test]
    fn rational_rank_routes_agree_with_elimination() {
        let q = Rationals::with_window(6);
        let mut rng = SeededRng::from_seed(7);
        for t in 0..60 {
            let (r, c) = (1 + t % 7, 1 + (t / 3) % 8);
            let inner = t % 5;
            let a = if inner == 0 {
                Matrix::zeros(&q, r, c)
            } else {
                random(&q, &mut rng, r, inner).matmul(&random(&q, &mut rng, inner, c)).unwrap()
            };
            // non-integral entries
            let d = q.sample_nonzero(&mut rng);
            let a = a.scale(&q.inv(&d).unwrap());
            let expected = a.rank_by_elimination();
            assert_eq!(a.rank(), expected);
            assert_eq!(bareiss_rank(integer_rows(&a)), expected);
        }
    }

    #[test]
    fn bareiss_handles_skipped_columns() {
        let i = |v: i64| BigInt::from(v);
        let a = vec![
            vec![i(0), i(2), i(4), i(1)],
            vec![i(0), i(1), i(2), i(3)],
            vec![i(0), i(3), i(6), i(4)],
        ];
        assert_eq!(bareiss_rank(a), 2);
        assert_eq!(bareiss_rank(vec![vec![i(0); 3]; 2]), 0);
    }

    #[test]
    fn inverse_roundtrip() {
        let f = PrimeField::default();
        let mut rng = SeededRng::from_seed(6);
        let a = random(&f, &mut rng, 5, 5);
        let inv = a.inverse().unwrap();
        assert_eq!(a.matmul(&inv).unwrap(), Matrix::identity(&f, 5));
        let q = Rationals::default();
        let singular = Matrix::from_i64_rows(&q, &[&[1, 2], &[2, 4]]).unwrap();
        assert!(matches!(singular.inverse(), Err(Error::Domain(_))));
    }

    #[test]
    fn dump_format() {
        let q = Rationals::default();
        let m = Matrix::from_rows(
            &q,
            vec![
                vec![q.parse("1/2").unwrap(), q.of_i64(-3)],
                vec![q.zero(), q.parse("-7/4").unwrap()],
            ],
        )
        .unwrap();
        assert_eq!(m.dump(), "1/2 -3\n0 -7/4\n");
        assert_eq!(Matrix::parse_dump(&q, &m.dump()).unwrap(), m);
    }

    #[test]
    fn same_span_detects_equal_and_different_subspaces() {
        let q = Rationals::default();
        let v = |xs: &[i64]| xs.iter().map(|&x| q.of_i64(x)).collect::<Vec<_>>();
        let a = vec![v(&[1, 0, 1]), v(&[0, 1, 1])];
        let b = vec![v(&[1, 1, 2]), v(&[1, -1, 0])];
        let c = vec![v(&[1, 0, 0]), v(&[0, 1, 1])];
        assert!(same_span(&q, 3, &a, &b));
        assert!(!same_span(&q, 3, &a, &c));
    }
}
