use std::fmt;

use super::{Field, Scalar};

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref<F: Field> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
}

/// Counts of positive, negative and zero entries after congruence
/// diagonalization of a symmetric form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl fmt::Display for Inertia {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.positive, self.negative, self.zero)
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Self { rows: r, cols: c, data }
    }

    /// Matrix whose columns are the given vectors (all of length `len`).
    pub fn from_columns(len: usize, cols: &[Vec<F>]) -> Self {
        Self::from_fn(len, cols.len(), |r, c| cols[c][r].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * out.cols + c;
                    out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        (0..self.rows)
            .map(|r| {
                let mut acc = F::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc + a.clone() * b.clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |r, c| self.get(r, c).clone() + other.get(r, c).clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |r, c| self.get(r, c).clone() - other.get(r, c).clone())
    }

    pub fn scale(&self, s: &F) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Self { rows: self.rows + other.rows, cols: self.cols, data }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Gauss-Jordan elimination, pivoting on the first nonzero entry.
    pub fn rref(&self) -> Rref<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = F::one() / m.get(row, col).clone();
            for c in col..m.cols {
                let v = m.get(row, c).clone() * inv.clone();
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let f = m.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let pv = m.get(row, c).clone();
                    if pv.is_zero() {
                        continue;
                    }
                    let v = m.get(r, c).clone() - f.clone() * pv;
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Kernel basis; one vector per free column, with a 1 in that column.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let Rref { matrix, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![F::zero(); self.cols];
                v[fc] = F::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -matrix.get(r, fc).clone();
                }
                v
            })
            .collect()
    }

    /// A particular solution of `self · x = b` (free variables set to zero), or
    /// `None` when the system is inconsistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let aug = Self::from_fn(self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                b[r].clone()
            }
        });
        let Rref { matrix, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = matrix.get(r, self.cols).clone();
        }
        Some(x)
    }

    pub fn det(&self) -> F {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = F::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return F::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m.get(col, col).clone();
            det = det * pivot.clone();
            for r in col + 1..n {
                let f = m.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                let f = f / pivot.clone();
                for c in col..n {
                    let v = m.get(r, c).clone() - f.clone() * m.get(col, c).clone();
                    m.set(r, c, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self.get(r, c).clone()
            } else if c - n == r {
                F::one()
            } else {
                F::zero()
            }
        });
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |r, c| matrix.get(r, n + c).clone()))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }
}

impl Matrix<Scalar> {
    /// Symmetric Gaussian elimination: returns the diagonal `D` and an
    /// invertible `P` with `Pᵀ·B·P = D`.
    ///
    /// Panics if `self` is not symmetric.
    pub fn congruence_diagonalize(&self) -> (Vec<Scalar>, Matrix<Scalar>) {
        assert!(self.is_symmetric(), "congruence diagonalization needs a symmetric matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut p = Matrix::<Scalar>::identity(n);

        // a ← Eᵀ a E for the column operation E: col_dst += f·col_src.
        fn add_multiple(a: &mut Matrix<Scalar>, p: &mut Matrix<Scalar>, dst: usize, src: usize, f: &Scalar) {
            let n = a.rows;
            for r in 0..n {
                let v = a.get(r, dst) + &(f * a.get(r, src));
                a.set(r, dst, v);
            }
            for c in 0..n {
                let v = a.get(dst, c) + &(f * a.get(src, c));
                a.set(dst, c, v);
            }
            for r in 0..n {
                let v = p.get(r, dst) + &(f * p.get(r, src));
                p.set(r, dst, v);
            }
        }

        fn swap(a: &mut Matrix<Scalar>, p: &mut Matrix<Scalar>, i: usize, j: usize) {
            if i == j {
                return;
            }
            let n = a.rows;
            a.swap_rows(i, j);
            for r in 0..n {
                a.data.swap(r * n + i, r * n + j);
                p.data.swap(r * n + i, r * n + j);
            }
        }

        for k in 0..n {
            if a.get(k, k).is_zero() {
                if let Some(j) = (k + 1..n).find(|&j| !a.get(j, j).is_zero()) {
                    swap(&mut a, &mut p, k, j);
                } else if let Some(j) = (k + 1..n).find(|&j| !a.get(k, j).is_zero()) {
                    // a_kk = a_jj = 0, a_kj ≠ 0: new a_kk = 2 a_kj.
                    add_multiple(&mut a, &mut p, k, j, &Scalar::one());
                } else {
                    continue;
                }
            }
            let pivot = a.get(k, k).clone();
            for i in k + 1..n {
                let f = a.get(i, k).clone();
                if f.is_zero() {
                    continue;
                }
                let f = -(&f / &pivot);
                add_multiple(&mut a, &mut p, i, k, &f);
            }
        }
        let diag = (0..n).map(|i| a.get(i, i).clone()).collect();
        (diag, p)
    }

    /// Sylvester inertia of a symmetric form.
    pub fn inertia(&self) -> Inertia {
        let (d, _) = self.congruence_diagonalize();
        Inertia {
            positive: d.iter().filter(|x| x.is_positive()).count(),
            negative: d.iter().filter(|x| x.is_negative()).count(),
            zero: d.iter().filter(|x| x.is_zero()).count(),
        }
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Reduced echelon basis of the span of `vectors` (each of length `len`).
pub fn span_basis<F: Field>(len: usize, vectors: &[Vec<F>]) -> Vec<Vec<F>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(vectors.to_vec());
    assert_eq!(m.cols(), len);
    let Rref { matrix, pivots } = m.rref();
    (0..pivots.len()).map(|r| matrix.row(r).to_vec()).collect()
}

/// Subspace equality of two spans in `F^len`.
pub fn same_span<F: Field>(len: usize, a: &[Vec<F>], b: &[Vec<F>]) -> bool {
    span_basis(len, a) == span_basis(len, b)
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span<F: Field>(len: usize, basis: &[Vec<F>], v: &[F]) -> bool {
    let mut all = basis.to_vec();
    all.push(v.to_vec());
    span_basis(len, basis).len() == span_basis(len, &all).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;
    use proptest::prelude::*;

    fn mat(rows: &[&[i64]]) -> Matrix<Scalar> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Scalar::from(x)).collect()).collect())
    }

    #[test]
    fn rank_of_identity_and_zero() {
        assert_eq!(Matrix::<Scalar>::identity(2).rank(), 2);
        assert_eq!(Matrix::<Scalar>::zeros(3, 4).rank(), 0);
    }

    #[test]
    fn nullspace_of_identity_and_zero() {
        assert!(Matrix::<Scalar>::identity(3).nullspace().is_empty());
        let ns = Matrix::<Scalar>::zeros(2, 3).nullspace();
        assert_eq!(ns.len(), 3);
    }

    #[test]
    fn solve_inconsistent_and_particular() {
        let m = mat(&[&[1, 1], &[2, 2]]);
        assert!(m.solve(&[Scalar::from(1), Scalar::from(3)]).is_none());
        let x = m.solve(&[Scalar::from(2), Scalar::from(4)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![Scalar::from(2), Scalar::from(4)]);
    }

    #[test]
    fn det_and_inverse() {
        let m = mat(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(m.det(), Scalar::from(18));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(3));
        assert!(mat(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn congruence_examples() {
        let (d, _) = Matrix::<Scalar>::identity(2).congruence_diagonalize();
        assert_eq!(d, vec![Scalar::one(), Scalar::one()]);
        let (d, _) = mat(&[&[1, 0], &[0, -1]]).congruence_diagonalize();
        assert_eq!(d, vec![Scalar::one(), Scalar::from(-1)]);
        // Hyperbolic plane: eigenvalues ±1.
        let h = mat(&[&[0, 1], &[1, 0]]);
        let (d, p) = h.congruence_diagonalize();
        assert_eq!(p.transpose().mul(&h).mul(&p), Matrix::from_fn(2, 2, |r, c| if r == c { d[r].clone() } else { Scalar::zero() }));
        assert_eq!(h.inertia(), Inertia { positive: 1, negative: 1, zero: 0 });
    }

    #[test]
    fn span_helpers() {
        let a = vec![vec![Scalar::from(1), Scalar::from(1)]];
        let b = vec![vec![Scalar::from(2), Scalar::from(2)]];
        assert!(same_span(2, &a, &b));
        assert!(!in_span(2, &a, &[Scalar::one(), Scalar::zero()]));
    }

    fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix<Scalar>> {
        proptest::collection::vec((-3i64..=3, 1i64..=3), rows * cols)
            .prop_map(move |v| Matrix::from_fn(rows, cols, |r, c| q(v[r * cols + c].0, v[r * cols + c].1)))
    }

    fn invertible(n: usize) -> impl Strategy<Value = Matrix<Scalar>> {
        small_matrix(n, n).prop_filter("invertible", |m| !m.det().is_zero())
    }

    proptest! {
        #[test]
        fn rank_nullity_and_kernel_vectors(m in small_matrix(4, 6)) {
            let ns = m.nullspace();
            prop_assert_eq!(m.rank() + ns.len(), m.cols());
            for v in &ns {
                prop_assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
            }
        }

        #[test]
        fn rank_invariant_under_row_ops(m in small_matrix(4, 5), s in 1i64..5, perm in Just([2usize, 0, 3, 1])) {
            let permuted = Matrix::from_fn(4, 5, |r, c| m.get(perm[r], c).clone());
            prop_assert_eq!(permuted.rank(), m.rank());
            let cols = Matrix::from_fn(4, 5, |r, c| m.get(r, (c + 2) % 5).clone());
            prop_assert_eq!(cols.rank(), m.rank());
            let scaled = Matrix::from_fn(4, 5, |r, c| if r == 1 { m.get(r, c) * &Scalar::from(-s) } else { m.get(r, c).clone() });
            prop_assert_eq!(scaled.rank(), m.rank());
            prop_assert_eq!(crate::linalg::rank_fraction_free(&m), m.rank());
        }

        #[test]
        fn solve_resubstitutes(m in small_matrix(3, 4), x in proptest::collection::vec(-4i64..4, 4)) {
            let x: Vec<Scalar> = x.into_iter().map(Scalar::from).collect();
            let b = m.mul_vec(&x);
            let sol = m.solve(&b).expect("consistent by construction");
            prop_assert_eq!(m.mul_vec(&sol), b);
        }

        #[test]
        fn sylvester_inertia_is_a_congruence_invariant(a in small_matrix(4, 4), p in invertible(4)) {
            let b = a.add(&a.transpose());
            let (d, t) = b.congruence_diagonalize();
            let diag = Matrix::from_fn(4, 4, |r, c| if r == c { d[r].clone() } else { Scalar::zero() });
            prop_assert_eq!(t.transpose().mul(&b).mul(&t), diag);
            prop_assert!(!t.det().is_zero());
            let moved = p.transpose().mul(&b).mul(&p);
            prop_assert_eq!(moved.inertia(), b.inertia());
        }
    }
}
