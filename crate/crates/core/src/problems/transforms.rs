//! Search-space transformations shared by the suite functions.

use nalgebra::DMatrix;

use crate::rng::RngStream;

/// A dense orthogonal matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Rotation {
    n: usize,
    data: Vec<f64>,
}

impl Rotation {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        Self { n, data }
    }

    /// Haar-distributed random rotation: QR of a Gaussian matrix with the
    /// signs of R's diagonal folded into Q.
    pub fn random(n: usize, rng: &mut RngStream) -> Self {
        let g = DMatrix::from_fn(n, n, |_, _| rng.standard_normal());
        let qr = g.qr();
        let q = qr.q();
        let r = qr.r();
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let sign = if r[(j, j)] < 0.0 { -1.0 } else { 1.0 };
                data[i * n + j] = q[(i, j)] * sign;
            }
        }
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// `out = M x`
    pub fn apply(&self, x: &[f64], out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate() {
            let row = &self.data[i * self.n..(i + 1) * self.n];
            *o = row.iter().zip(x).map(|(a, b)| a * b).sum();
        }
    }

    pub fn apply_vec(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        self.apply(x, &mut out);
        out
    }

    /// `max |(MᵀM - I)_ij|`
    pub fn orthogonality_defect(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                let mut s = 0.0;
                for k in 0..n {
                    s += self.get(k, i) * self.get(k, j);
                }
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((s - target).abs());
            }
        }
        worst
    }
}

/// Oscillation transform applied to a scalar.
pub fn t_osz_scalar(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let xh = x.abs().ln();
    let (c1, c2) = if x > 0.0 { (10.0, 7.9) } else { (5.5, 3.1) };
    x.signum() * (xh + 0.049 * ((c1 * xh).sin() + (c2 * xh).sin())).exp()
}

pub fn t_osz(x: &mut [f64]) {
    for v in x.iter_mut() {
        *v = t_osz_scalar(*v);
    }
}

/// Asymmetry transform: positive coordinates are raised to
/// `1 + beta * i/(D-1) * sqrt(x_i)`.
pub fn t_asy(x: &mut [f64], beta: f64) {
    let d = x.len();
    let denom = (d.max(2) - 1) as f64;
    for (i, v) in x.iter_mut().enumerate() {
        if *v > 0.0 {
            *v = v.powf(1.0 + beta * (i as f64 / denom) * v.sqrt());
        }
    }
}

/// Diagonal of the conditioning matrix `Λ^α`: `α^{(1/2) i/(D-1)}`.
pub fn lambda_diag(alpha: f64, d: usize) -> Vec<f64> {
    let denom = (d.max(2) - 1) as f64;
    (0..d).map(|i| alpha.powf(0.5 * i as f64 / denom)).collect()
}

pub fn scale_in_place(x: &mut [f64], diag: &[f64]) {
    for (v, s) in x.iter_mut().zip(diag) {
        *v *= s;
    }
}

/// Boundary penalty `Σ max(0, |x_i| - 5)²`.
pub fn f_pen(x: &[f64]) -> f64 {
    x.iter().map(|v| (v.abs() - 5.0).max(0.0).powi(2)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_rotation_is_orthogonal() {
        let mut rng = RngStream::new(11);
        for n in [2, 5, 17, 40] {
            let r = Rotation::random(n, &mut rng);
            assert!(r.orthogonality_defect() < 1e-12);
        }
    }

    #[test]
    fn transforms_fix_zero_and_keep_sign() {
        assert_eq!(t_osz_scalar(0.0), 0.0);
        assert!(t_osz_scalar(2.0) > 0.0);
        assert!(t_osz_scalar(-2.0) < 0.0);
        assert!((t_osz_scalar(1.0) - 1.0).abs() < 1e-12);
        let mut v = vec![0.0, -1.0, 4.0];
        t_asy(&mut v, 0.2);
        assert_eq!(v[0], 0.0);
        assert_eq!(v[1], -1.0);
        assert!((v[2] - 4.0_f64.powf(1.0 + 0.2 * 1.0 * 2.0)).abs() < 1e-12);
    }

    #[test]
    fn lambda_endpoints() {
        let d = lambda_diag(100.0, 5);
        assert_eq!(d[0], 1.0);
        assert!((d[4] - 10.0).abs() < 1e-12);
    }
}
