use std::f64::consts::PI;

/// Asymptotic Kolmogorov survival function `P(K > √n·d)`.
///
/// Uses the alternating series `2 Σ (-1)^(j-1) exp(-2 j² λ²)` for λ ≥ 1.18 and the
/// Jacobi-transformed form `1 - (√(2π)/λ) Σ exp(-(2j-1)² π² / (8 λ²))` below it,
/// where the alternating series needs many terms.
pub fn kolmogorov_sf(d: f64, n: usize) -> f64 {
    if !(d > 0.0) || n == 0 {
        return 1.0;
    }
    let lambda = (n as f64).sqrt() * d;
    kolmogorov_sf_scaled(lambda)
}

/// `P(K > λ)` for the limiting Kolmogorov distribution.
pub fn kolmogorov_sf_scaled(lambda: f64) -> f64 {
    if !(lambda > 0.0) {
        return 1.0;
    }
    let p = if lambda < 1.18 {
        let k = -PI * PI / (8.0 * lambda * lambda);
        let mut sum = 0.0;
        for j in 1..=20 {
            let m = (2 * j - 1) as f64;
            let term = (k * m * m).exp();
            sum += term;
            if term < 1e-17 * sum {
                break;
            }
        }
        1.0 - (2.0 * PI).sqrt() / lambda * sum
    } else {
        let k = -2.0 * lambda * lambda;
        let mut sum = 0.0;
        let mut sign = 1.0;
        for j in 1..=100 {
            let jf = j as f64;
            let term = (k * jf * jf).exp();
            sum += sign * term;
            if term < 1e-17 {
                break;
            }
            sign = -sign;
        }
        2.0 * sum
    };
    p.clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_distance_is_one() {
        assert_eq!(kolmogorov_sf(0.0, 50), 1.0);
    }

    #[test]
    fn tabulated_fit_pvalues() {
        assert!((kolmogorov_sf(0.2042, 50) - 0.031).abs() < 0.003);
        assert!((kolmogorov_sf(0.0981, 50) - 0.72).abs() < 0.01);
    }

    #[test]
    fn branches_agree_at_switch() {
        let below = kolmogorov_sf_scaled(1.18 - 1e-12);
        let above = kolmogorov_sf_scaled(1.18 + 1e-12);
        assert!((below - above).abs() < 1e-11, "{below} {above}");
    }

    #[test]
    fn known_quantiles() {
        // classical critical values of the limiting distribution
        assert!((kolmogorov_sf_scaled(1.3581) - 0.05).abs() < 1e-4);
        assert!((kolmogorov_sf_scaled(1.6276) - 0.01).abs() < 1e-4);
        assert!((kolmogorov_sf_scaled(0.8276) - 0.5).abs() < 1e-3);
    }

    #[test]
    fn nonincreasing_in_d() {
        let mut prev = 1.0;
        for i in 0..=400 {
            let p = kolmogorov_sf(i as f64 * 0.0025, 50);
            assert!(p <= prev + 1e-15);
            prev = p;
        }
    }
}
