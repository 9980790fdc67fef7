use crate::dist::EglfrParams;

fn q(p: &EglfrParams, u: f64) -> f64 {
    p.quantile(u).expect("probability lies in (0, 1)")
}

/// Bowley skewness `(Q(3/4) - 2Q(1/2) + Q(1/4)) / (Q(3/4) - Q(1/4))`.
pub fn bowley_skewness(p: &EglfrParams) -> f64 {
    let (q1, q2, q3) = (q(p, 0.25), q(p, 0.5), q(p, 0.75));
    (q3 - 2.0 * q2 + q1) / (q3 - q1)
}

/// Moors kurtosis `(Q(7/8) - Q(5/8) + Q(3/8) - Q(1/8)) / (Q(6/8) - Q(2/8))`.
pub fn moors_kurtosis(p: &EglfrParams) -> f64 {
    let e = |k: f64| q(p, k / 8.0);
    (e(7.0) - e(5.0) + e(3.0) - e(1.0)) / (e(6.0) - e(2.0))
}
