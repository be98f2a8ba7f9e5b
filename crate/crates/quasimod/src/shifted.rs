//! Shifted-symmetric functions on partitions and the q-bracket.
//!
//! Provides f_mu = z_sigma chi/dim, the power sums P_l and their regularized
//! versions p_l, the hook-length moments T_p, and the Siegel-Veech weight S_p.

use crate::character::{char_value, dim_irrep};
use crate::partition::{class_size, partitions_of, Partition};
use crate::quasimodular::bernoulli;
use crate::rational::{factorial, rat, rat_big, rat_pow, ratio, Rat};
use crate::series::{partition_gf, QSeries};
use num_traits::Zero;
use std::collections::HashMap;
use std::sync::{LazyLock, Mutex};

type Cache<K, V> = LazyLock<Mutex<HashMap<K, V>>>;

static F_MU_CACHE: Cache<(Vec<u32>, Vec<u32>), Rat> = LazyLock::new(|| Mutex::new(HashMap::new()));

/// f_mu(lambda) = z_mu chi^lambda(mu) / dim(lambda), where the character is
/// taken at mu completed with singletons and z_mu counts the permutations
/// with a marked support of |mu| of the |lambda| points arranged in cycles of
/// type mu. Zero when |mu| > |lambda|. For mu without singleton parts z_mu is
/// the plain conjugacy class size; the marked count is what makes f_1 = P_1.
pub fn f_mu(mu: &Partition, lambda: &Partition) -> Rat {
    let k = mu.size();
    if k > lambda.size() {
        return Rat::zero();
    }
    let key = (mu.parts().to_vec(), lambda.parts().to_vec());
    if let Some(v) = F_MU_CACHE.lock().unwrap().get(&key) {
        return v.clone();
    }
    let z = crate::rational::binomial(lambda.size(), k) * class_size(mu, k);
    let chi = char_value(lambda, mu).expect("mu fits after completion");
    let v = rat_big(z * chi) / rat_big(dim_irrep(lambda));
    F_MU_CACHE.lock().unwrap().insert(key, v.clone());
    v
}

/// P_l(lambda) = sum_i (lambda_i - i + 1/2)^l - (-i + 1/2)^l, a finite sum.
pub fn p_ell_big(ell: u32, lambda: &Partition) -> Rat {
    assert!(ell >= 1);
    let half = ratio(1, 2);
    let mut acc = Rat::zero();
    for (i, &part) in lambda.parts().iter().enumerate() {
        let i = (i + 1) as i64;
        let a = rat(part as i64 - i) + &half;
        let b = rat(-i) + &half;
        acc += rat_pow(&a, ell as i64) - rat_pow(&b, ell as i64);
    }
    acc
}

/// p_l = P_l + (1 - 2^{-l}) zeta(-l), with zeta(-l) = -B_{l+1}/(l+1).
pub fn p_ell_small(ell: u32, lambda: &Partition) -> Rat {
    p_ell_big(ell, lambda) + p_ell_constant(ell)
}

/// The regularization constant (1 - 2^{-l}) zeta(-l).
pub fn p_ell_constant(ell: u32) -> Rat {
    let zeta = -bernoulli(ell + 1) / rat(ell as i64 + 1);
    (rat(1) - rat_pow(&rat(2), -(ell as i64))) * zeta
}

/// Hook-length moment T_p(lambda) = sum over cells of (hook length)^{p-1}.
/// Defined for p >= -1; exact rational for negative exponents.
pub fn t_p(lambda: &Partition, p: i32) -> Rat {
    assert!(p >= -1);
    let mut acc = Rat::zero();
    for h in lambda.hooks() {
        acc += rat_pow(&rat(h as i64), (p - 1) as i64);
    }
    acc
}

/// The character-sum definition of T_p, kept as an independent oracle:
/// T_p(lambda) = (1/d!) sum over classes tau of |tau| S_p(tau) chi^lambda(tau)^2,
/// with S_p evaluated on the full cycle type (fixed points included).
pub fn t_p_character_sum(lambda: &Partition, p: i32) -> Rat {
    let d = lambda.size();
    let mut acc = Rat::zero();
    for tau in partitions_of(d) {
        let chi = char_value(lambda, &tau).unwrap();
        if chi.is_zero() {
            continue;
        }
        acc += rat_big(class_size(&tau, d)) * sv_weight(&tau, p) * rat_big(&chi * &chi);
    }
    acc / rat_big(factorial(d))
}

/// Siegel-Veech weight S_p(sigma) = sum of p-th powers of the parts.
pub fn sv_weight(sigma: &Partition, p: i32) -> Rat {
    sigma.parts().iter().map(|&part| rat_pow(&rat(part as i64), p as i64)).sum()
}

/// The q-bracket <F>_q = (sum_lambda F(lambda) q^{|lambda|}) / (sum_lambda q^{|lambda|}).
pub fn q_bracket<F>(f: F, order: usize) -> QSeries
where
    F: Fn(&Partition) -> Rat,
{
    numerator_series(f, order).div(&partition_gf(order)).expect("partition gf is a unit")
}

/// sum_lambda F(lambda) q^{|lambda|}, truncated.
pub fn numerator_series<F>(f: F, order: usize) -> QSeries
where
    F: Fn(&Partition) -> Rat,
{
    let coeffs: Vec<Rat> = (0..=order)
        .map(|d| partitions_of(d).iter().map(&f).sum())
        .collect();
    QSeries::from_coeffs(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn f_one_is_size() {
        for d in 0..=6 {
            for lam in partitions_of(d) {
                assert_eq!(f_mu(&p(&[1]), &lam), rat(d as i64));
                assert_eq!(p_ell_big(1, &lam), rat(d as i64), "P_1 = |lambda|");
            }
        }
    }

    #[test]
    fn f2_is_half_p2() {
        for d in 0..=8 {
            for lam in partitions_of(d) {
                assert_eq!(f_mu(&p(&[2]), &lam), p_ell_big(2, &lam) * ratio(1, 2));
            }
        }
    }

    #[test]
    fn f3_f4_f5_in_terms_of_p() {
        for d in 0..=8 {
            for lam in partitions_of(d) {
                let p1 = p_ell_big(1, &lam);
                let p2 = p_ell_big(2, &lam);
                let p3 = p_ell_big(3, &lam);
                let p4 = p_ell_big(4, &lam);
                let p5 = p_ell_big(5, &lam);
                let f3 = ratio(1, 3) * &p3 - ratio(1, 2) * &p1 * &p1 + ratio(5, 12) * &p1;
                assert_eq!(f_mu(&p(&[3]), &lam), f3, "f3 at {lam}");
                let f4 = ratio(1, 4) * &p4 - &p1 * &p2 + ratio(11, 8) * &p2;
                assert_eq!(f_mu(&p(&[4]), &lam), f4, "f4 at {lam}");
                let f5 = ratio(1, 5) * &p5 - &p3 * &p1 - ratio(1, 2) * &p2 * &p2
                    + ratio(5, 6) * &p1 * &p1 * &p1
                    - ratio(15, 4) * &p1 * &p1
                    + ratio(19, 6) * &p3
                    + ratio(189, 80) * &p1;
                assert_eq!(f_mu(&p(&[5]), &lam), f5, "f5 at {lam}");
            }
        }
    }

    #[test]
    fn p_ell_direct_values() {
        assert_eq!(p_ell_big(2, &Partition::empty()), rat(0));
        // P_2((2,1)) = (3/2)^2 - (-1/2)^2 + (-1/2)^2 - (-3/2)^2 = 0
        assert_eq!(p_ell_big(2, &p(&[2, 1])), rat(0));
        // constant shift between p and P
        for lam in partitions_of(5) {
            for ell in 1..=4 {
                assert_eq!(
                    p_ell_small(ell, &lam) - p_ell_small(ell, &Partition::empty()),
                    p_ell_big(ell, &lam)
                );
            }
        }
    }

    #[test]
    fn regularization_constants() {
        // p_1(empty) = (1/2) * zeta(-1) = -1/24
        assert_eq!(p_ell_small(1, &Partition::empty()), ratio(-1, 24));
        // zeta(-2) = 0 via B_3 = 0
        assert_eq!(p_ell_small(2, &Partition::empty()), rat(0));
    }

    #[test]
    fn t_p_trivial_cases() {
        assert_eq!(t_p(&Partition::empty(), 3), rat(0));
        for d in 0..=6 {
            for lam in partitions_of(d) {
                assert_eq!(t_p(&lam, 1), rat(d as i64), "T_1 = |lambda|");
            }
        }
    }

    #[test]
    fn t_p_hook_moment_matches_character_sum() {
        for d in 0..=5 {
            for lam in partitions_of(d) {
                for p_val in [-1, 1, 3] {
                    assert_eq!(
                        t_p(&lam, p_val),
                        t_p_character_sum(&lam, p_val),
                        "T_{p_val} at {lam}"
                    );
                }
            }
        }
    }

    #[test]
    fn sv_weight_values() {
        let sigma = p(&[2, 2, 1]);
        assert_eq!(sv_weight(&sigma, 0), rat(3));
        assert_eq!(sv_weight(&sigma, 1), rat(5));
        assert_eq!(sv_weight(&sigma, -1), rat(2));
    }

    #[test]
    fn bracket_of_one_is_one() {
        assert_eq!(q_bracket(|_| Rat::one(), 8), QSeries::one(8));
    }
}
