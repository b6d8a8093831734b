//! Dense row-major matrix and the three kernels the recurrent stack is hot
//! in: `affine` (y = Wx + b), transposed multiply-accumulate, and outer
//! product accumulate. Accumulation is row-sequential in index order so a
//! checkpoint-reloaded run reproduces the original bit for bit.

use super::{MathError, Real};

/// Dense row-major matrix over a [`Real`] scalar.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Real> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self, MathError> {
        if data.len() != rows * cols {
            return Err(MathError::BadShape { len: data.len(), rows, cols });
        }
        if let Some(index) = data.iter().position(|v| !v.is_finite()) {
            return Err(MathError::NonFinite { index });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: &[&[T]]) -> Result<Self, MathError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(MathError::BadShape { len: row.len(), rows: r, cols: c });
            }
            data.extend_from_slice(row);
        }
        Self::from_vec(r, c, data)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [T] {
        &mut self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn fill(&mut self, v: T) {
        self.data.iter_mut().for_each(|x| *x = v);
    }

    /// y = Wx (+ b), appended into `out` (cleared first).
    pub fn affine_into(&self, x: &[T], bias: Option<&[T]>, out: &mut Vec<T>) -> Result<(), MathError> {
        if x.len() != self.cols || bias.is_some_and(|b| b.len() != self.rows) {
            return Err(MathError::DimMismatch {
                op: "affine",
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: x.len(),
                right_cols: bias.map_or(0, <[T]>::len),
            });
        }
        out.clear();
        for (i, row) in self.data.chunks_exact(self.cols).enumerate() {
            let mut acc = bias.map_or_else(T::zero, |b| b[i]);
            for (w, xv) in row.iter().zip(x) {
                acc += *w * *xv;
            }
            out.push(acc);
        }
        Ok(())
    }

    /// Same as [`Matrix::affine_into`] but adds onto existing entries of `out`.
    pub fn affine_acc(&self, x: &[T], out: &mut [T]) -> Result<(), MathError> {
        if x.len() != self.cols || out.len() != self.rows {
            return Err(MathError::DimMismatch {
                op: "affine_acc",
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: x.len(),
                right_cols: out.len(),
            });
        }
        for (acc, row) in out.iter_mut().zip(self.data.chunks_exact(self.cols)) {
            for (w, xv) in row.iter().zip(x) {
                *acc += *w * *xv;
            }
        }
        Ok(())
    }

    /// acc += Wᵀ y, the backward counterpart of `affine`.
    pub fn add_tr_mul(&self, y: &[T], acc: &mut [T]) {
        debug_assert_eq!(y.len(), self.rows);
        debug_assert_eq!(acc.len(), self.cols);
        for (yi, row) in y.iter().zip(self.data.chunks_exact(self.cols)) {
            for (a, w) in acc.iter_mut().zip(row) {
                *a += *yi * *w;
            }
        }
    }

    /// W += y xᵀ, the gradient accumulation kernel.
    pub fn add_outer(&mut self, y: &[T], x: &[T]) {
        debug_assert_eq!(y.len(), self.rows);
        debug_assert_eq!(x.len(), self.cols);
        for (yi, row) in y.iter().zip(self.data.chunks_exact_mut(self.cols)) {
            for (w, xv) in row.iter_mut().zip(x) {
                *w += *yi * *xv;
            }
        }
    }

    /// self += other, entrywise.
    pub fn add_assign(&mut self, other: &Matrix<T>) {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += *b;
        }
    }

    pub fn scale(&mut self, s: T) {
        self.data.iter_mut().for_each(|v| *v *= s);
    }
}

/// y_i = Σ_j W_ij x_j (+ b_i), row-sequential accumulation.
pub fn affine<T: Real>(w: &Matrix<T>, x: &[T], bias: Option<&[T]>) -> Result<Vec<T>, MathError> {
    let mut out = Vec::with_capacity(w.rows());
    w.affine_into(x, bias, &mut out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mathkit::Rng;
    use proptest::prelude::*;

    #[test]
    fn affine_identity_passes_input_through() {
        let w = Matrix::<f64>::identity(2);
        assert_eq!(affine(&w, &[3.0, 4.0], None).unwrap(), vec![3.0, 4.0]);
    }

    #[test]
    fn affine_zero_weights_returns_bias() {
        let w = Matrix::<f64>::zeros(2, 2);
        assert_eq!(affine(&w, &[5.0, 5.0], Some(&[1.0, -1.0])).unwrap(), vec![1.0, -1.0]);
    }

    #[test]
    fn affine_hand_arithmetic() {
        let w = Matrix::from_rows(&[&[1.0, 2.0], &[3.0, 4.0]]).unwrap();
        assert_eq!(affine(&w, &[1.0, 1.0], None).unwrap(), vec![3.0, 7.0]);
    }

    #[test]
    fn affine_rejects_bad_shapes() {
        let w = Matrix::<f64>::zeros(2, 3);
        let err = affine(&w, &[1.0, 2.0], None).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("2x3") && msg.contains("2x0"), "error names both shapes: {msg}");
        assert!(affine(&w, &[1.0, 2.0, 3.0], Some(&[0.0])).is_err());
    }

    #[test]
    fn from_vec_validates_shape_and_finiteness() {
        assert!(Matrix::from_vec(2, 2, vec![0.0; 3]).is_err());
        assert!(Matrix::from_vec(1, 2, vec![0.0, f64::NAN]).is_err());
    }

    #[test]
    fn transpose_mul_matches_direct_evaluation() {
        let w = Matrix::from_rows(&[&[1.0, 2.0], &[3.0, 4.0], &[5.0, 6.0]]).unwrap();
        let y = [1.0, 0.5, 0.25];
        let mut acc = vec![0.0; 2];
        w.add_tr_mul(&y, &mut acc);
        // Wᵀy computed by hand.
        assert_eq!(acc, vec![1.0 + 1.5 + 1.25, 2.0 + 2.0 + 1.5]);
    }

    #[test]
    fn outer_product_accumulates() {
        let mut w = Matrix::<f64>::zeros(2, 3);
        w.add_outer(&[2.0, -1.0], &[1.0, 0.0, 3.0]);
        w.add_outer(&[2.0, -1.0], &[1.0, 0.0, 3.0]);
        assert_eq!(w.data(), &[4.0, 0.0, 12.0, -2.0, 0.0, -6.0]);
    }

    proptest! {
        // affine(W, αx+βy) = α·affine(W,x) + β·affine(W,y) for unit-scale inputs.
        #[test]
        fn affine_is_linear(seed in 0u64..1000, rows in 1usize..12, cols in 1usize..12) {
            let mut rng = Rng::new(seed);
            let w = Matrix::from_fn(rows, cols, |_, _| rng.uniform(-1.0, 1.0).unwrap());
            let x: Vec<f64> = (0..cols).map(|_| rng.uniform(-1.0, 1.0).unwrap()).collect();
            let y: Vec<f64> = (0..cols).map(|_| rng.uniform(-1.0, 1.0).unwrap()).collect();
            let (a, b) = (rng.uniform(-1.0, 1.0).unwrap(), rng.uniform(-1.0, 1.0).unwrap());
            let mixed: Vec<f64> = x.iter().zip(&y).map(|(xv, yv)| a * xv + b * yv).collect();
            let lhs = affine(&w, &mixed, None).unwrap();
            let wx = affine(&w, &x, None).unwrap();
            let wy = affine(&w, &y, None).unwrap();
            for i in 0..rows {
                prop_assert!((lhs[i] - (a * wx[i] + b * wy[i])).abs() <= 1e-12);
            }
        }
    }
}
