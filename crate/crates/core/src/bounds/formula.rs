//! Closed-form bounds on the edge domination number, generic over the scalar.
//!
//! `delta` is the (maximum) degree, `n` the order and `m` the size.

use crate::scalar::Scalar;

fn s<T: Scalar>(x: usize) -> T {
    T::from_count(x)
}

fn half<T: Scalar>() -> T {
    T::one() / s(2)
}

/// `2n/3 - m/6`: subcubic bipartite T*-free graphs without cubic components.
pub fn t1_upper<T: Scalar>(n: usize, m: usize) -> T {
    s::<T>(2 * n) / s(3) - s::<T>(m) / s(6)
}

/// `Δn/(2Δ-1) - m/((Δ-1)(2Δ-1))`: maximum degree at most `Δ`, no `Δ`-regular component.
pub fn t2_upper<T: Scalar>(delta: usize, n: usize, m: usize) -> T {
    s::<T>(delta * n) / s(2 * delta - 1) - s::<T>(m) / s((delta - 1) * (2 * delta - 1))
}

/// `5n/12 + 1/2`: connected cubic bipartite T*-free graphs.
pub fn t3_upper<T: Scalar>(n: usize) -> T {
    s::<T>(5 * n) / s(12) + half()
}

/// `(Δ(2Δ-3)n + 2Δ) / (2(Δ-1)(2Δ-1))`: connected `Δ`-regular graphs.
pub fn t4_upper<T: Scalar>(delta: usize, n: usize) -> T {
    s::<T>(delta * (2 * delta - 3) * n + 2 * delta) / s(2 * (delta - 1) * (2 * delta - 1))
}

/// Conjectured `(2Δ-1)n/(4Δ) + 1/2` for connected `Δ`-regular graphs.
pub fn conj_upper<T: Scalar>(delta: usize, n: usize) -> T {
    s::<T>((2 * delta - 1) * n) / s(4 * delta) + half()
}

/// `Δn/(4Δ-2)`: every `Δ`-regular graph.
pub fn regular_lower<T: Scalar>(delta: usize, n: usize) -> T {
    s::<T>(delta * n) / s(4 * delta - 2)
}

/// `Δn/(2Δ+4)`: claw-free `Δ`-regular graphs.
pub fn clawfree_lower<T: Scalar>(delta: usize, n: usize) -> T {
    s::<T>(delta * n) / s(2 * delta + 4)
}

/// Limit of `t3_upper / regular_lower` at `Δ = 3`: `25/18`.
pub fn cubic_bip_tstar_ratio<T: Scalar>() -> T {
    s::<T>(25) / s(18)
}

/// Limit of `t4_upper / regular_lower`: `2 - 1/(Δ-1)`.
pub fn regular_ratio<T: Scalar>(delta: usize) -> T {
    s::<T>(2) - T::one() / s(delta - 1)
}

/// Limit of `t4_upper / clawfree_lower`: `1 + (4Δ-7)/(2Δ²-3Δ+1)`.
pub fn clawfree_regular_ratio<T: Scalar>(delta: usize) -> T {
    T::one() + s::<T>(4 * delta - 7) / s(2 * delta * delta - 3 * delta + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type Q = Ratio<i64>;

    fn q(a: i64, b: i64) -> Q {
        Q::new(a, b)
    }

    #[test]
    fn exact_values() {
        assert_eq!(t4_upper::<Q>(3, 6), q(3, 1));
        assert_eq!(t1_upper::<Q>(4, 4), q(2, 1));
        assert_eq!(t3_upper::<Q>(18), q(8, 1));
        assert_eq!(conj_upper::<Q>(3, 18), q(8, 1));
        assert_eq!(t2_upper::<Q>(3, 4, 4), q(2, 1));
        assert_eq!(t2_upper::<Q>(4, 4, 6), q(2, 1));
        assert_eq!(t2_upper::<Q>(3, 4, 3), q(21, 10));
        assert_eq!(regular_lower::<Q>(3, 10), q(3, 1));
        assert_eq!(regular_lower::<Q>(3, 6), q(9, 5));
        assert_eq!(clawfree_lower::<Q>(4, 6), q(2, 1));
        assert_eq!(t4_upper::<Q>(3, 10), q(96, 20));
    }

    #[test]
    fn regular_bound_is_bounded_degree_bound_after_peeling_an_edge() {
        for delta in 3..8 {
            for n in (2 * delta..40).filter(|n| (delta * n) % 2 == 0) {
                let m_rest = delta * n / 2 - (2 * delta - 1);
                let via_t2 = t2_upper::<Q>(delta, n - 2, m_rest) + Q::from_integer(1);
                assert_eq!(t4_upper::<Q>(delta, n), via_t2);
            }
        }
    }

    #[test]
    fn ratios_are_limits_of_quotients() {
        // upper/lower - limit shrinks like c/n
        for delta in 3..7 {
            let n = 1_000_000;
            let gap = t4_upper::<f64>(delta, n) / regular_lower::<f64>(delta, n) - regular_ratio::<f64>(delta);
            assert!(gap.abs() < 1e-5);
            let gap = t4_upper::<f64>(delta, n) / clawfree_lower::<f64>(delta, n) - clawfree_regular_ratio::<f64>(delta);
            assert!(gap.abs() < 1e-5);
        }
        let n = 1_000_000;
        let gap = t3_upper::<f64>(n) / regular_lower::<f64>(3, n) - cubic_bip_tstar_ratio::<f64>();
        assert!(gap.abs() < 1e-5);
        assert_eq!(regular_ratio::<Q>(3), q(3, 2));
    }

    #[test]
    fn float_and_exact_agree() {
        let exact = t2_upper::<Q>(5, 31, 40);
        let float = t2_upper::<f64>(5, 31, 40);
        assert!((*exact.numer() as f64 / *exact.denom() as f64 - float).abs() < 1e-12);
    }
}
