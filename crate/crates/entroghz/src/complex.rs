//! Dense complex matrices sized for few-qubit operator algebra.
//!
//! Everything in this crate lives in dimension at most 8 (three qubits),
//! so a plain row-major `Vec<Complex64>` with straightforward O(n³)
//! products is the right tool. Hermitian eigenvalues are computed by
//! embedding the matrix as a real symmetric one of twice the size and
//! running cyclic Jacobi sweeps, which is deterministic and accurate to
//! machine precision at these sizes.

pub use num_complex::Complex64;

use crate::{Error, Result};

/// Tolerance for algebraic identity checks (Hermiticity, trace, equality).
pub const ALGEBRAIC_TOL: f64 = 1e-12;

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from rows of `(re, im)` pairs.
    pub fn from_rows(rows: &[&[(f64, f64)]]) -> Result<Self> {
        let dim = rows.len();
        let mut m = Self::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::Shape(format!(
                    "row {} has {} entries, expected {}",
                    i,
                    row.len(),
                    dim
                )));
            }
            for (j, &(re, im)) in row.iter().enumerate() {
                m[(i, j)] = Complex64::new(re, im);
            }
        }
        Ok(m)
    }

    /// Rank-1 projector |v⟩⟨v| of a (not necessarily normalized) vector.
    pub fn outer(v: &[Complex64]) -> Self {
        let dim = v.len();
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = v[i] * v[j].conj();
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            *a += b;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            *a -= b;
        }
        Ok(out)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let mut out = self.clone();
        for a in out.entries.iter_mut() {
            *a *= factor;
        }
        out
    }

    pub fn scale_re(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product; the left factor occupies the high index bits.
    pub fn kron(&self, other: &Self) -> Self {
        let (n, m) = (self.dim, other.dim);
        let mut out = Self::zeros(n * m);
        for i in 0..n {
            for j in 0..n {
                let a = self[(i, j)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for k in 0..m {
                    for l in 0..m {
                        out[(i * m + k, j * m + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = self[(j, i)].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Tr(self · other) without forming the product.
    pub fn trace_mul(&self, other: &Self) -> Result<Complex64> {
        self.check_same_dim(other)?;
        let n = self.dim;
        let mut t = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                t += self[(i, j)] * other[(j, i)];
            }
        }
        Ok(t)
    }

    /// Largest entry-wise deviation from `other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_same_dim(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim == other.dim && self.max_abs_diff(other).unwrap() <= tol
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.dagger()).unwrap() <= tol
    }

    /// Eigenvalues of a Hermitian matrix, ascending.
    ///
    /// The n×n Hermitian matrix A = R + iS is embedded as the real
    /// symmetric 2n×2n matrix [[R, -S], [S, R]], whose spectrum is that of
    /// A with every eigenvalue doubled; Jacobi sweeps then reduce it and
    /// every other sorted value is returned.
    pub fn hermitian_eigenvalues(&self) -> Result<Vec<f64>> {
        if !self.is_hermitian(1e-9) {
            return Err(Error::Shape(
                "eigenvalue routine requires a Hermitian matrix".into(),
            ));
        }
        let n = self.dim;
        let m = 2 * n;
        let mut a = vec![0.0f64; m * m];
        for i in 0..n {
            for j in 0..n {
                let z = self[(i, j)];
                a[i * m + j] = z.re;
                a[(i + n) * m + (j + n)] = z.re;
                a[i * m + (j + n)] = -z.im;
                a[(i + n) * m + j] = z.im;
            }
        }
        jacobi_symmetric_eigenvalues(&mut a, m);
        let mut all: Vec<f64> = (0..m).map(|i| a[i * m + i]).collect();
        all.sort_by(|x, y| x.partial_cmp(y).unwrap());
        Ok(all.into_iter().step_by(2).collect())
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::Shape(format!(
                "dimension mismatch: {} vs {}",
                self.dim, other.dim
            )))
        }
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.dim + j]
    }
}

/// In-place cyclic Jacobi diagonalization of a dense symmetric matrix.
/// Converges quadratically; 30 sweeps is far beyond what 16×16 needs.
fn jacobi_symmetric_eigenvalues(a: &mut [f64], n: usize) {
    let off = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                s += a[i * n + j] * a[i * n + j];
            }
        }
        s
    };
    let scale: f64 = (0..n * n).map(|k| a[k] * a[k]).sum::<f64>().max(1e-300);
    for _sweep in 0..30 {
        if off(a) <= 1e-30 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let tau = (aqq - app) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
}
