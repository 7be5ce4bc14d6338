/// Generalized Laguerre polynomial `L_n^{(alpha)}(z)` by forward recurrence.
///
/// Negative `n` returns 0.
pub fn laguerre(n: i32, alpha: f64, z: f64) -> f64 {
    if n < 0 {
        return 0.0;
    }
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + alpha - z;
    for k in 1..n {
        let k = f64::from(k);
        let next = ((2.0 * k + 1.0 + alpha - z) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `d/dz L_n^{(alpha)}(z) = -L_{n-1}^{(alpha+1)}(z)`.
pub fn laguerre_deriv(n: i32, alpha: f64, z: f64) -> f64 {
    -laguerre(n - 1, alpha + 1.0, z)
}

/// Jacobi polynomial `P_n^{(alpha,beta)}(z)` for arbitrary real parameters.
///
/// Uses the three-term recurrence. When the parameters make a recurrence
/// coefficient vanish (`alpha + beta` a negative integer) the value is taken
/// from [`jacobi_explicit`], which is the continuous extension.
pub fn jacobi(n: i32, alpha: f64, beta: f64, z: f64) -> f64 {
    if n < 0 {
        return 0.0;
    }
    if n == 0 {
        return 1.0;
    }
    let ab = alpha + beta;
    let mut prev = 1.0;
    let mut cur = (alpha + 1.0) + 0.5 * (ab + 2.0) * (z - 1.0);
    for k in 1..n {
        let k = f64::from(k);
        let c = 2.0 * k + ab;
        let a1 = 2.0 * (k + 1.0) * (k + ab + 1.0) * c;
        if a1.abs() < 1e-12 * (1.0 + c.abs()).powi(3) {
            return jacobi_explicit(n, alpha, beta, z);
        }
        let a2 = (c + 1.0) * (alpha * alpha - beta * beta);
        let a3 = c * (c + 1.0) * (c + 2.0);
        let a4 = 2.0 * (k + alpha) * (k + beta) * (c + 2.0);
        let next = ((a2 + a3 * z) * cur - a4 * prev) / a1;
        prev = cur;
        cur = next;
    }
    cur
}

/// Finite-sum form
/// `sum_s C(n+alpha, n-s) C(n+beta, s) ((z-1)/2)^s ((z+1)/2)^(n-s)`,
/// valid for every real parameter pair.
pub fn jacobi_explicit(n: i32, alpha: f64, beta: f64, z: f64) -> f64 {
    if n < 0 {
        return 0.0;
    }
    let n = n as u32;
    let nf = f64::from(n);
    let zm = 0.5 * (z - 1.0);
    let zp = 0.5 * (z + 1.0);
    (0..=n)
        .map(|s| {
            binomial(nf + alpha, n - s)
                * binomial(nf + beta, s)
                * zm.powi(s as i32)
                * zp.powi((n - s) as i32)
        })
        .sum()
}

/// `P_n^{(alpha,beta)}(z) / z^n`, finite for arbitrarily large `|z|` where
/// the polynomial itself overflows.
///
/// Expanded in powers of `(z-1)/2` with coefficients
/// `C(n+alpha, n-k) (n+alpha+beta+1)_k / k!`, so a leading coefficient that
/// vanishes for the given parameters is an exact zero rather than a
/// cancellation residue.
pub fn jacobi_scaled(n: i32, alpha: f64, beta: f64, z: f64) -> f64 {
    if n < 0 {
        return 0.0;
    }
    let n = n as u32;
    let nf = f64::from(n);
    let half = 0.5 * (1.0 - 1.0 / z);
    let mut poch = 1.0;
    let mut sum = 0.0;
    for k in 0..=n {
        if k > 0 {
            poch *= (nf + alpha + beta + f64::from(k)) / f64::from(k);
        }
        // ((z-1)/2)^k / z^n = half^k z^(k-n)
        sum += binomial(nf + alpha, n - k) * poch * half.powi(k as i32) * z.powi(k as i32 - n as i32);
    }
    sum
}

/// `P_n'(z) / z^(n-1)`, the companion of [`jacobi_scaled`].
pub fn jacobi_deriv_scaled(n: i32, alpha: f64, beta: f64, z: f64) -> f64 {
    if n <= 0 {
        return 0.0;
    }
    0.5 * (f64::from(n) + alpha + beta + 1.0) * jacobi_scaled(n - 1, alpha + 1.0, beta + 1.0, z)
}

/// `d/dz P_n^{(alpha,beta)}(z) = (n+alpha+beta+1)/2 * P_{n-1}^{(alpha+1,beta+1)}(z)`.
pub fn jacobi_deriv(n: i32, alpha: f64, beta: f64, z: f64) -> f64 {
    if n <= 0 {
        return 0.0;
    }
    0.5 * (f64::from(n) + alpha + beta + 1.0) * jacobi(n - 1, alpha + 1.0, beta + 1.0, z)
}

/// Generalized binomial coefficient `C(x, k)` for real `x`.
fn binomial(x: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (x - f64::from(i)) / f64::from(i + 1))
}
