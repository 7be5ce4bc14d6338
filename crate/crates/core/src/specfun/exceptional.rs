use super::poly::{jacobi, jacobi_deriv, jacobi_deriv_scaled, jacobi_scaled, laguerre};
use crate::error::{Error, Result};

/// `X_m` exceptional Laguerre polynomial of index `n + m`:
///
/// `L^(a)_m(-z) L^(a-1)_n(z) + L^(a-1)_m(-z) L^(a)_{n-1}(z)`.
///
/// Valid for every `n >= 0`; at `n = 0` it collapses to `L^(a)_m(-z)`.
///
/// # Panics
/// If `m == 0`.
pub fn x_laguerre(n: u32, m: u32, alpha: f64, z: f64) -> f64 {
    assert!(m >= 1, "exceptional order m must be at least 1");
    let (n, m) = (n as i32, m as i32);
    laguerre(m, alpha, -z) * laguerre(n, alpha - 1.0, z)
        + laguerre(m, alpha - 1.0, -z) * laguerre(n - 1, alpha, z)
}

/// `d/dz` of [`x_laguerre`].
pub fn x_laguerre_deriv(n: u32, m: u32, alpha: f64, z: f64) -> f64 {
    assert!(m >= 1, "exceptional order m must be at least 1");
    let (n, m) = (n as i32, m as i32);
    // d/dz L_k^(a)(-z) = L_{k-1}^(a+1)(-z)
    laguerre(m - 1, alpha + 1.0, -z) * laguerre(n, alpha - 1.0, z)
        - laguerre(m, alpha, -z) * laguerre(n - 1, alpha, z)
        + laguerre(m - 1, alpha, -z) * laguerre(n - 1, alpha, z)
        - laguerre(m, alpha - 1.0, -z) * laguerre(n - 2, alpha + 1.0, z)
}

struct XJacobiTerms {
    sign: f64,
    c1: f64,
    c2: f64,
}

fn x_jacobi_terms(n: u32, m: u32, alpha: f64, beta: f64) -> Result<XJacobiTerms> {
    let nf = f64::from(n);
    let den = 1.0 + alpha + nf;
    if den.abs() < 1e-14 {
        return Err(Error::DegenerateDenominator("exceptional Jacobi polynomial (1 + alpha + n = 0)"));
    }
    Ok(XJacobiTerms {
        sign: if m % 2 == 0 { 1.0 } else { -1.0 },
        c1: (1.0 + alpha + beta + nf) / (2.0 * den),
        c2: (1.0 + alpha - f64::from(m)) / den,
    })
}

/// `X_m` exceptional Jacobi polynomial of index `n + m`:
///
/// `(-1)^m [ c1 (z-1) P^(-a-1,b-1)_m P^(a+2,b)_{n-1} + c2 P^(-2-a,b)_m P^(a+1,b-1)_n ]`
/// with `c1 = (1+a+b+n)/(2(1+a+n))` and `c2 = (1+a-m)/(a+1+n)`.
pub fn x_jacobi(n: u32, m: u32, alpha: f64, beta: f64, z: f64) -> Result<f64> {
    let t = x_jacobi_terms(n, m, alpha, beta)?;
    let (n, m) = (n as i32, m as i32);
    let first = t.c1 * (z - 1.0) * jacobi(m, -alpha - 1.0, beta - 1.0, z) * jacobi(n - 1, alpha + 2.0, beta, z);
    let second = t.c2 * jacobi(m, -2.0 - alpha, beta, z) * jacobi(n, alpha + 1.0, beta - 1.0, z);
    Ok(t.sign * (first + second))
}

/// `d/dz` of [`x_jacobi`].
pub fn x_jacobi_deriv(n: u32, m: u32, alpha: f64, beta: f64, z: f64) -> Result<f64> {
    let t = x_jacobi_terms(n, m, alpha, beta)?;
    let (n, m) = (n as i32, m as i32);
    let (a1, b1) = (-alpha - 1.0, beta - 1.0);
    let (a2, b2) = (alpha + 2.0, beta);
    let (a3, b3) = (-2.0 - alpha, beta);
    let (a4, b4) = (alpha + 1.0, beta - 1.0);
    let p1 = jacobi(m, a1, b1, z);
    let p2 = jacobi(n - 1, a2, b2, z);
    let first = p1 * p2
        + (z - 1.0) * (jacobi_deriv(m, a1, b1, z) * p2 + p1 * jacobi_deriv(n - 1, a2, b2, z));
    let second = jacobi_deriv(m, a3, b3, z) * jacobi(n, a4, b4, z)
        + jacobi(m, a3, b3, z) * jacobi_deriv(n, a4, b4, z);
    Ok(t.sign * (t.c1 * first + t.c2 * second))
}

/// [`x_jacobi`] and its derivative divided by `z^(n+m)` and `z^(n+m-1)`,
/// for arguments large enough to overflow the unscaled form.
pub fn x_jacobi_scaled(n: u32, m: u32, alpha: f64, beta: f64, z: f64) -> Result<(f64, f64)> {
    let t = x_jacobi_terms(n, m, alpha, beta)?;
    let (n, m) = (n as i32, m as i32);
    let s = |k: i32, a: f64, b: f64| (jacobi_scaled(k, a, b, z), jacobi_deriv_scaled(k, a, b, z));
    let (p1, d1) = s(m, -alpha - 1.0, beta - 1.0);
    let (p2, d2) = s(n - 1, alpha + 2.0, beta);
    let (p3, d3) = s(m, -2.0 - alpha, beta);
    let (p4, d4) = s(n, alpha + 1.0, beta - 1.0);
    let shrink = 1.0 - 1.0 / z;
    let value = t.c1 * shrink * p1 * p2 + t.c2 * p3 * p4;
    let deriv = t.c1 * (p1 * p2 + shrink * (d1 * p2 + p1 * d2)) + t.c2 * (d3 * p4 + p3 * d4);
    Ok((t.sign * value, t.sign * deriv))
}
