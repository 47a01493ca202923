//! Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on the
//! Legendre recurrence, accurate to machine precision for the node counts
//! used here.

/// Nodes and weights of the `n`-point Gauss-Legendre rule on [-1, 1],
/// nodes in increasing order.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 2, "need at least two nodes");
    let mut rule = Vec::with_capacity(n);
    let nf = n as f64;
    // nodes come in +/- pairs; compute the upper half and mirror
    let half = n.div_ceil(2);
    for i in 0..half {
        // Tricomi-style initial guess for the i-th root from the top
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.push((x, w));
    }
    let mut full: Vec<(f64, f64)> = rule.iter().map(|&(x, w)| (-x, w)).collect();
    if n % 2 == 1 {
        // the middle node is zero; the mirrored copy duplicates it
        full.pop();
    }
    full.extend(rule.into_iter().rev());
    full
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn five_point_rule_matches_reference() {
        let rule = gauss_legendre(5);
        let nodes = [
            -0.906_179_845_938_664,
            -0.538_469_310_105_683_1,
            0.0,
            0.538_469_310_105_683_1,
            0.906_179_845_938_664,
        ];
        let weights = [
            0.236_926_885_056_189_08,
            0.478_628_670_499_366_47,
            0.568_888_888_888_888_9,
            0.478_628_670_499_366_47,
            0.236_926_885_056_189_08,
        ];
        for (i, &(x, w)) in rule.iter().enumerate() {
            assert_abs_diff_eq!(x, nodes[i], epsilon = 1e-14);
            assert_abs_diff_eq!(w, weights[i], epsilon = 1e-14);
        }
    }

    #[test]
    fn integrates_polynomials_exactly() {
        // an n-point rule is exact for degree 2n-1
        let rule = gauss_legendre(8);
        for deg in [0usize, 3, 7, 12, 15] {
            let got: f64 = rule
                .iter()
                .map(|&(x, w)| w * x.powi(deg as i32))
                .sum();
            let exact = if deg % 2 == 1 {
                0.0
            } else {
                2.0 / (deg as f64 + 1.0)
            };
            assert_abs_diff_eq!(got, exact, epsilon = 1e-14);
        }
    }

    #[test]
    fn even_count_has_no_zero_node() {
        let rule = gauss_legendre(48);
        assert_eq!(rule.len(), 48);
        assert!(rule.iter().all(|&(x, _)| x.abs() > 1e-3));
        let wsum: f64 = rule.iter().map(|&(_, w)| w).sum();
        assert_abs_diff_eq!(wsum, 2.0, epsilon = 1e-13);
    }
}
