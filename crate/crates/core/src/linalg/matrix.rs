use std::fmt;
use std::ops::{Index, IndexMut};

use crate::scalar::{EuclideanRing, Field, Ring};

/// Dense row-major matrix over a commutative ring.
#[derive(Clone, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![R::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = R::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn diagonal(entries: Vec<R>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn rows_vec(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let t = a.mul_ref(b);
                        out[(i, j)] += &t;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[R]) -> Vec<R> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = R::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &a.mul_ref(b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.shape(), rhs.shape());
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.add_ref(b)).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.shape(), rhs.shape());
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.sub_ref(b)).collect(),
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|a| a.mul_ref(c))
    }

    /// Commutator `AB - BA`.
    pub fn commutator(&self, rhs: &Self) -> Self {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn block(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        Self::from_fn(a.rows + c.rows, a.cols + b.cols, |i, j| match (i < a.rows, j < a.cols) {
            (true, true) => a[(i, j)].clone(),
            (true, false) => b[(i, j - a.cols)].clone(),
            (false, true) => c[(i - a.rows, j)].clone(),
            (false, false) => d[(i - a.rows, j - a.cols)].clone(),
        })
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[target] += c * row[src]`.
    pub fn add_row_multiple(&mut self, target: usize, src: usize, c: &R) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if !s.is_zero() {
                let t = c.mul_ref(s);
                self.data[target * self.cols + j] += &t;
            }
        }
    }

    /// `col[target] += c * col[src]`.
    pub fn add_col_multiple(&mut self, target: usize, src: usize, c: &R) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if !s.is_zero() {
                let t = c.mul_ref(s);
                self.data[i * self.cols + target] += &t;
            }
        }
    }

    pub fn scale_row(&mut self, i: usize, c: &R) {
        for j in 0..self.cols {
            self.data[i * self.cols + j] = c.mul_ref(&self.data[i * self.cols + j]);
        }
    }

    pub fn scale_col(&mut self, j: usize, c: &R) {
        for i in 0..self.rows {
            self.data[i * self.cols + j] = c.mul_ref(&self.data[i * self.cols + j]);
        }
    }

    /// Determinant by cofactor expansion memoized over column subsets.
    /// Division-free, so valid over any commutative ring; `O(n 2^n)`.
    pub fn det_expansion(&self) -> R {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return R::one();
        }
        assert!(n <= 20, "det_expansion is exponential in the size");
        let mut memo: Vec<R> = vec![R::zero(); 1 << n];
        memo[0] = R::one();
        for mask in 1usize..(1 << n) {
            let k = mask.count_ones() as usize;
            let row = k - 1;
            let mut acc = R::zero();
            let mut pos = 0;
            for c in 0..n {
                if mask & (1 << c) == 0 {
                    continue;
                }
                let a = &self[(row, c)];
                let sub = &memo[mask & !(1 << c)];
                if !a.is_zero() && !sub.is_zero() {
                    let t = a.mul_ref(sub);
                    if (row + pos).is_multiple_of(2) {
                        acc += &t;
                    } else {
                        acc -= &t;
                    }
                }
                pos += 1;
            }
            memo[mask] = acc;
        }
        memo[(1 << n) - 1].clone()
    }
}

impl<R: EuclideanRing> Matrix<R> {
    /// Fraction-free (Bareiss) elimination. Returns the rank over the fraction
    /// field and, for square input, the determinant.
    pub fn bareiss(&self) -> (usize, Option<R>) {
        let mut a = self.clone();
        let (m, n) = self.shape();
        let mut prev = R::one();
        let mut rank = 0;
        let mut sign_flip = false;
        let mut col = 0;
        while rank < m && col < n {
            let Some(p) = (rank..m).find(|&i| !a[(i, col)].is_zero()) else {
                col += 1;
                continue;
            };
            if p != rank {
                a.swap_rows(p, rank);
                sign_flip = !sign_flip;
            }
            let piv = a[(rank, col)].clone();
            for i in rank + 1..m {
                for j in col + 1..n {
                    let v = piv.mul_ref(&a[(i, j)]).sub_ref(&a[(i, col)].mul_ref(&a[(rank, j)]));
                    a[(i, j)] = v.exact_div(&prev);
                }
                a[(i, col)] = R::zero();
            }
            prev = piv;
            rank += 1;
            col += 1;
        }
        let det = if self.is_square() {
            if rank < m {
                Some(R::zero())
            } else {
                let d = a[(m - 1, n - 1)].clone();
                Some(if sign_flip { d.neg_ref() } else { d })
            }
        } else {
            None
        };
        (rank, det)
    }

    pub fn rank_fraction_field(&self) -> usize {
        self.bareiss().0
    }

    pub fn det(&self) -> R {
        assert!(self.is_square());
        if self.rows == 0 {
            return R::one();
        }
        self.bareiss().1.unwrap()
    }
}

impl<F: Field> Matrix<F> {
    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut a = self.clone();
        let (m, n) = self.shape();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            if r == m {
                break;
            }
            let Some(p) = (r..m).find(|&i| !a[(i, c)].is_zero()) else { continue };
            a.swap_rows(p, r);
            let inv = a[(r, c)].inv().unwrap();
            a.scale_row(r, &inv);
            for i in 0..m {
                if i != r && !a[(i, c)].is_zero() {
                    let f = a[(i, c)].neg_ref();
                    a.add_row_multiple(i, r, &f);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let n = self.cols;
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); n];
                v[f] = F::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = r[(row, f)].neg_ref();
                }
                v
            })
            .collect()
    }

    /// Some solution of `A x = b`, if one exists.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let aug =
            Self::from_fn(
                self.rows,
                self.cols + 1,
                |i, j| {
                    if j < self.cols {
                        self[(i, j)].clone()
                    } else {
                        b[i].clone()
                    }
                },
            );
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r[(row, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                F::one()
            } else {
                F::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| r[(i, j + n)].clone()))
    }
}

impl<R> Index<(usize, usize)> for Matrix<R> {
    type Output = R;
    fn index(&self, (i, j): (usize, usize)) -> &R {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<R> IndexMut<(usize, usize)> for Matrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<R: fmt::Debug> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| format!("{:?}", self.data[i * self.cols + j])).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{HPoly, Rat};

    fn q(rows: &[&[i64]]) -> Matrix<Rat> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rat::from(x)).collect()).collect())
    }

    #[test]
    fn det_routes_agree() {
        let a = q(&[&[2, -1, 0, 3], &[1, 4, 2, 0], &[0, 5, -3, 1], &[7, 0, 1, 1]]);
        assert_eq!(a.det_expansion(), a.det());
        assert_eq!(a.det(), Rat::from(405));
    }

    #[test]
    fn rank_and_kernel() {
        let a = q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        assert_eq!(a.rank_fraction_field(), 2);
        for v in a.kernel() {
            assert!(a.mul_vec(&v).iter().all(Ring::is_zero));
        }
    }

    #[test]
    fn solve_and_inverse() {
        let a = q(&[&[2, 1], &[1, 3]]);
        let x = a.solve(&[Rat::from(3), Rat::from(5)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![Rat::from(3), Rat::from(5)]);
        assert_eq!(a.mul(&a.inverse().unwrap()), Matrix::identity(2));
        assert!(q(&[&[1, 2], &[2, 4]]).inverse().is_none());
        assert!(q(&[&[1, 2], &[2, 4]]).solve(&[Rat::from(1), Rat::from(0)]).is_none());
    }

    #[test]
    fn polynomial_det() {
        let h = HPoly::<Rat>::h();
        let one = HPoly::<Rat>::one();
        let a = Matrix::from_rows(vec![vec![h.clone(), one.clone()], vec![one.clone(), h.clone()]]);
        // h^2 - 1
        assert_eq!(a.det(), h.clone() * h - one);
    }
}
