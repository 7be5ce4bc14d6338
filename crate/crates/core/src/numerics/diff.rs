/// Derivative order for [`central_diff`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffOrder {
    First,
    Second,
}

/// Five-point central difference, error `O(h^4)`.
pub fn central_diff(f: impl Fn(f64) -> f64, x: f64, order: DiffOrder, h: f64) -> f64 {
    let (fm2, fm1, fp1, fp2) = (f(x - 2.0 * h), f(x - h), f(x + h), f(x + 2.0 * h));
    match order {
        DiffOrder::First => (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h),
        DiffOrder::Second => (-fm2 + 16.0 * fm1 - 30.0 * f(x) + 16.0 * fp1 - fp2) / (12.0 * h * h),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_has_zero_derivatives() {
        assert!(central_diff(|_| 4.2, 1.0, DiffOrder::First, 1e-3).abs() < 1e-12);
        assert!(central_diff(|_| 4.2, 1.0, DiffOrder::Second, 1e-3).abs() < 1e-7);
    }

    #[test]
    fn quadratic_second_derivative() {
        let d2 = central_diff(|x| x * x, 0.7, DiffOrder::Second, 1e-3);
        assert!((d2 - 2.0).abs() < 1e-9);
    }

    #[test]
    fn fourth_order_convergence() {
        let err = |h: f64| (central_diff(f64::sin, 0.4, DiffOrder::First, h) - 0.4f64.cos()).abs();
        let ratio = err(0.1) / err(0.05);
        assert!((ratio - 16.0).abs() < 1.0, "ratio {ratio}");
    }
}
