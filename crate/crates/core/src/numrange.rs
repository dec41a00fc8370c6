//! Dense complex-matrix kernel for numerical-range computations.
//!
//! Matrices here are tiny (2x2 and 4x4), so everything is dense, row-major
//! and allocation-light. The module covers the Hermitian/skew-Hermitian
//! split, Rayleigh quotients, the closed-form 2x2 elliptical range, support
//! functions generated by Hermitian eigenvalue sweeps, the Kippenhahn
//! tangent-line form, the resultant matrix `B` of the family
//! `f(x) = (x^2 - a)/(x^2 - b)`, and the permutation that block-diagonalises
//! `B` into `A2 (+) A2`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write as _;

use num_complex::Complex64;
// required for the float math methods without std; test and dev builds
// link std, whose inherent methods shadow the trait and make this "unused"
#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result};

/// Off-diagonal norm target for the cyclic Jacobi eigenvalue sweeps.
pub const JACOBI_OFF_TOL: f64 = 1e-13;

/// Square complex matrix, dense row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Zero matrix of dimension `n`.
    pub fn zero(n: usize) -> Self {
        ComplexMatrix {
            n,
            data: alloc::vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    /// Identity matrix of dimension `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Builds a matrix from rows; rejects ragged or non-square input, and any
    /// non-finite entry.
    pub fn from_rows(rows: &[&[Complex64]]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::Dimension {
                    expected: n,
                    got: row.len(),
                });
            }
            for &v in row.iter() {
                if !v.re.is_finite() || !v.im.is_finite() {
                    return Err(Error::Domain(String::from("non-finite matrix entry")));
                }
                data.push(v);
            }
        }
        Ok(ComplexMatrix { n, data })
    }

    /// Builds a matrix from real rows.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let converted: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| Complex64::new(v, 0.0)).collect())
            .collect();
        let refs: Vec<&[Complex64]> = converted.iter().map(|r| r.as_slice()).collect();
        Self::from_rows(&refs)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.n + j] = v;
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.n != rhs.n {
            return Err(Error::Dimension {
                expected: self.n,
                got: rhs.n,
            });
        }
        let mut out = Self::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..self.n {
                    acc += self.get(i, k) * rhs.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// Determinant by Laplace expansion; fine for n <= 4.
    pub fn det(&self) -> Complex64 {
        fn det_rec(n: usize, rows: &[usize], cols: &[usize], m: &ComplexMatrix) -> Complex64 {
            if n == 1 {
                return m.get(rows[0], cols[0]);
            }
            let mut acc = Complex64::new(0.0, 0.0);
            let mut sign = 1.0;
            for &c in cols.iter() {
                let sub: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                acc += sign * m.get(rows[0], c) * det_rec(n - 1, &rows[1..], &sub, m);
                sign = -sign;
            }
            acc
        }
        let idx: Vec<usize> = (0..self.n).collect();
        det_rec(self.n, &idx, &idx, self)
    }

    /// Frobenius norm.
    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, v| m.max(v.norm()))
    }

    fn linear_combine(&self, ca: Complex64, rhs: &Self, cb: Complex64) -> Self {
        let mut out = Self::zero(self.n);
        for k in 0..self.n * self.n {
            out.data[k] = ca * self.data[k] + cb * rhs.data[k];
        }
        out
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        for i in 0..self.n {
            for j in 0..self.n {
                if (self.get(i, j) - self.get(j, i).conj()).norm() > tol {
                    return false;
                }
            }
        }
        true
    }
}

/// Hermitian part `H = (M + M*)/2` and skew-Hermitian part `S = (M - M*)/2`.
pub fn hermitian_split(m: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let adj = m.adjoint();
    let half = Complex64::new(0.5, 0.0);
    let h = m.linear_combine(half, &adj, half);
    let s = m.linear_combine(half, &adj, -half);
    (h, s)
}

/// Rayleigh quotient `v*Mv / v*v`.
pub fn rayleigh(m: &ComplexMatrix, v: &[Complex64]) -> Result<Complex64> {
    if v.len() != m.dim() {
        return Err(Error::Dimension {
            expected: m.dim(),
            got: v.len(),
        });
    }
    let vv: f64 = v.iter().map(|x| x.norm_sqr()).sum();
    if vv == 0.0 {
        return Err(Error::Domain(String::from(
            "Rayleigh quotient of the zero vector",
        )));
    }
    let mut num = Complex64::new(0.0, 0.0);
    for i in 0..m.dim() {
        let mut mv = Complex64::new(0.0, 0.0);
        for j in 0..m.dim() {
            mv += m.get(i, j) * v[j];
        }
        num += v[i].conj() * mv;
    }
    Ok(num / vv)
}

/// Eigenvalues of a Hermitian matrix, ascending.
///
/// Closed form for n <= 2, cyclic Jacobi rotations otherwise (the matrices in
/// this crate never exceed 4x4).
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    let n = m.dim();
    if n == 1 {
        return alloc::vec![m.get(0, 0).re];
    }
    if n == 2 {
        let (alpha, gamma) = (m.get(0, 0).re, m.get(1, 1).re);
        let beta = m.get(0, 1);
        let mean = 0.5 * (alpha + gamma);
        let rad = (0.25 * (alpha - gamma) * (alpha - gamma) + beta.norm_sqr()).sqrt();
        return alloc::vec![mean - rad, mean + rad];
    }
    let mut a = m.clone();
    let scale = 1.0 + a.frobenius();
    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    off += a.get(i, j).norm_sqr();
                }
            }
        }
        if off.sqrt() <= JACOBI_OFF_TOL * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a.get(p, q);
                let r = apq.norm();
                if r <= JACOBI_OFF_TOL * scale / (n as f64) {
                    continue;
                }
                let phase = apq / r;
                let tau = (a.get(q, q).re - a.get(p, p).re) / (2.0 * r);
                let t = if tau == 0.0 {
                    1.0
                } else {
                    tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let mut g = ComplexMatrix::identity(n);
                g.set(p, p, Complex64::new(c, 0.0));
                g.set(p, q, Complex64::new(s, 0.0));
                g.set(q, p, -s * phase.conj());
                g.set(q, q, c * phase.conj());
                a = g.adjoint().mul(&a).unwrap().mul(&g).unwrap();
            }
        }
    }
    let mut eigs: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
    eigs.sort_by(|x, y| x.partial_cmp(y).unwrap());
    eigs
}

/// An ellipse (possibly degenerate) in the complex plane.
///
/// `semi_axis_u` points along `axis_angle` and carries the foci;
/// `semi_axis_v = 0` encodes a segment (normal matrix).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ellipse2D {
    pub center: Complex64,
    pub semi_axis_u: f64,
    pub semi_axis_v: f64,
    pub axis_angle: f64,
    pub foci: (Complex64, Complex64),
}

impl Ellipse2D {
    /// Closed-disc membership, with each semi-axis inflated by `tol`;
    /// evaluated in the ellipse's axis frame.
    pub fn contains(&self, w: Complex64, tol: f64) -> bool {
        let d = (w - self.center) * Complex64::from_polar(1.0, -self.axis_angle);
        let ru = self.semi_axis_u + tol;
        let rv = self.semi_axis_v + tol;
        if ru <= 0.0 || rv <= 0.0 {
            return false;
        }
        (d.re / ru) * (d.re / ru) + (d.im / rv) * (d.im / rv) <= 1.0
    }

    pub fn is_degenerate(&self) -> bool {
        self.semi_axis_v == 0.0
    }
}

/// Closed-disc membership of `w` in `e` inflated by `tol`.
pub fn ellipse_contains(e: &Ellipse2D, w: Complex64, tol: f64) -> bool {
    e.contains(w, tol)
}

/// The elliptical range of a 2x2 matrix.
///
/// Foci are the eigenvalues; the minor full-axis length is
/// `sqrt(trace(M*M) - |l1|^2 - |l2|^2)`, the major axis follows from the
/// focal distance. A zero minor axis yields the degenerate segment of a
/// normal matrix.
pub fn numerical_range_2x2(m: &ComplexMatrix) -> Result<Ellipse2D> {
    if m.dim() != 2 {
        return Err(Error::Dimension {
            expected: 2,
            got: m.dim(),
        });
    }
    let tr = m.trace();
    let det = m.det();
    let disc = (tr * tr - 4.0 * det).sqrt();
    let mut l1 = (tr + disc) / 2.0;
    let mut l2 = (tr - disc) / 2.0;
    // canonical focus order: arg(l1 - l2) in [0, pi), so signed-zero
    // branch-cut artifacts in the sqrt cannot flip the pair
    let d = l1 - l2;
    if d.im < 0.0 || (d.im == 0.0 && d.re < 0.0) {
        core::mem::swap(&mut l1, &mut l2);
    }
    let mstar_m = m.adjoint().mul(m)?;
    let minor_sq = (mstar_m.trace().re - l1.norm_sqr() - l2.norm_sqr()).max(0.0);
    let minor_semi = 0.5 * minor_sq.sqrt();
    let c = 0.5 * (l1 - l2).norm();
    let major_semi = (minor_semi * minor_semi + c * c).sqrt();
    let scale = 1.0 + m.max_abs_entry();
    let axis_angle = if c > 1e-14 * scale {
        let t = (l1 - l2).arg();
        // canonical representative in [0, pi)
        if t < 0.0 {
            t + core::f64::consts::PI
        } else {
            t
        }
    } else {
        0.0
    };
    let minor_semi = if minor_sq.sqrt() <= 1e-12 * scale {
        0.0
    } else {
        minor_semi
    };
    Ok(Ellipse2D {
        center: (l1 + l2) / 2.0,
        semi_axis_u: major_semi,
        semi_axis_v: minor_semi,
        axis_angle,
        foci: (l1, l2),
    })
}

/// Support function `d(theta) = max { Re(e^{-i theta} w) : w in W(M) }`,
/// i.e. the largest eigenvalue of `cos(theta) H + sin(theta) (-i S)`.
pub fn support_function(m: &ComplexMatrix, theta: f64) -> f64 {
    let (h, s) = hermitian_split(m);
    let minus_i_s = s.linear_combine(
        Complex64::new(0.0, -1.0),
        &ComplexMatrix::zero(m.dim()),
        Complex64::new(0.0, 0.0),
    );
    let k = h.linear_combine(
        Complex64::new(theta.cos(), 0.0),
        &minus_i_s,
        Complex64::new(theta.sin(), 0.0),
    );
    *hermitian_eigenvalues(&k).last().unwrap()
}

/// Kippenhahn line-coordinate form `det(a1 H - i a2 S + a3 I)`.
///
/// For every angle `theta`, the triple
/// `(cos theta, sin theta, -support_function(m, theta))` is a zero: the
/// support line is tangent to the boundary curve.
pub fn kippenhahn_eval(m: &ComplexMatrix, a1: f64, a2: f64, a3: f64) -> Complex64 {
    let (h, s) = hermitian_split(m);
    let term = h.linear_combine(
        Complex64::new(a1, 0.0),
        &s,
        Complex64::new(0.0, -a2),
    );
    let full = term.linear_combine(
        Complex64::new(1.0, 0.0),
        &ComplexMatrix::identity(m.dim()),
        Complex64::new(a3, 0.0),
    );
    full.det()
}

/// The 4x4 resultant matrix `B` of the pair `(x^2 - a, x^2 - b)`.
///
/// `det(B) = (a - b)^2`, nonzero exactly when the numerator and denominator
/// share no root. Any real `a`, `b` are accepted; validity of the dynamical
/// parameters is checked elsewhere.
pub fn resultant_matrix(a: f64, b: f64) -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        &[1.0, 0.0, -a, 0.0],
        &[0.0, 1.0, 0.0, -a],
        &[1.0, 0.0, -b, 0.0],
        &[0.0, 1.0, 0.0, -b],
    ])
    .expect("fixed 4x4 shape")
}

/// The fixed permutation matrix (identity rows in order 1,3,2,4) that
/// conjugates a resultant-shaped `B` into `A2 (+) A2`.
pub fn decomposition_permutation() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 0.0, 1.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 1.0],
    ])
    .expect("fixed 4x4 shape")
}

/// Unitary block decomposition `E* B E = diag(top, bottom)`.
///
/// Fails if `B` is not 4x4 or the conjugation does not block-diagonalise it
/// (i.e. `B` is not of resultant shape).
pub fn block_decompose(
    b: &ComplexMatrix,
) -> Result<(ComplexMatrix, ComplexMatrix, ComplexMatrix)> {
    if b.dim() != 4 {
        return Err(Error::Dimension {
            expected: 4,
            got: b.dim(),
        });
    }
    let e = decomposition_permutation();
    let conj = e.adjoint().mul(b)?.mul(&e)?;
    let scale = 1.0 + b.max_abs_entry();
    for i in 0..4 {
        for j in 0..4 {
            let off_block = (i < 2) != (j < 2);
            if off_block && conj.get(i, j).norm() > 1e-12 * scale {
                let mut msg = String::new();
                let _ = write!(
                    msg,
                    "conjugated matrix is not block-diagonal at ({i},{j})"
                );
                return Err(Error::Structural(msg));
            }
        }
    }
    let mut top = ComplexMatrix::zero(2);
    let mut bottom = ComplexMatrix::zero(2);
    for i in 0..2 {
        for j in 0..2 {
            top.set(i, j, conj.get(i, j));
            bottom.set(i, j, conj.get(i + 2, j + 2));
        }
    }
    Ok((e, top, bottom))
}

/// The coefficient matrix `A2 = [[1, -a], [1, -b]]` of the family.
pub fn coefficient_matrix(a: f64, b: f64) -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[1.0, -a], &[1.0, -b]]).expect("fixed 2x2 shape")
}
