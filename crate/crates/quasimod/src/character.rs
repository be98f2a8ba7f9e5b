//! Irreducible characters of symmetric groups.
//!
//! `char_value` evaluates chi^lambda(sigma) by the Murnaghan-Nakayama
//! recursion on beta-sets, peeling the parts >= 2 of sigma and finishing with
//! the hook-length formula for the all-singletons tail. Values are memoized
//! globally; writes are idempotent so concurrent use is safe.

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::rational::factorial;
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::HashMap;
use std::sync::{LazyLock, Mutex};

type Cache<K, V> = LazyLock<Mutex<HashMap<K, V>>>;

static DIM_CACHE: Cache<Vec<u32>, BigInt> = LazyLock::new(|| Mutex::new(HashMap::new()));
static CHAR_CACHE: Cache<(Vec<u32>, Vec<u32>), BigInt> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// Dimension of the irreducible representation indexed by lambda
/// (hook-length formula).
pub fn dim_irrep(lambda: &Partition) -> BigInt {
    if let Some(v) = DIM_CACHE.lock().unwrap().get(lambda.parts()) {
        return v.clone();
    }
    let mut dim = factorial(lambda.size());
    for h in lambda.hooks() {
        dim /= BigInt::from(h);
    }
    DIM_CACHE.lock().unwrap().insert(lambda.parts().to_vec(), dim.clone());
    dim
}

/// chi^lambda(sigma), with sigma completed by singletons to |lambda|.
/// Rejects |sigma| > |lambda| (no completion exists).
pub fn char_value(lambda: &Partition, sigma: &Partition) -> Result<BigInt> {
    if sigma.size() > lambda.size() {
        return Err(Error::Invalid(format!(
            "class {sigma} does not fit in S_{}",
            lambda.size()
        )));
    }
    let big: Vec<u32> = sigma.parts().iter().copied().filter(|&p| p >= 2).collect();
    Ok(char_rec(lambda.parts().to_vec(), &big))
}

/// Recursion on the list of remaining parts >= 2 (any fixed order works; we
/// keep the caller's descending order).
fn char_rec(lambda: Vec<u32>, parts: &[u32]) -> BigInt {
    if parts.is_empty() {
        return dim_irrep(&Partition::new(lambda));
    }
    let key = (lambda.clone(), parts.to_vec());
    if let Some(v) = CHAR_CACHE.lock().unwrap().get(&key) {
        return v.clone();
    }

    let t = parts[0];
    let rest = &parts[1..];
    // beta-set: b_i = lambda_i + (k - 1 - i), strictly decreasing
    let k = lambda.len();
    let betas: Vec<i64> = (0..k).map(|i| lambda[i] as i64 + (k - 1 - i) as i64).collect();
    let mut total = BigInt::zero();
    for i in 0..k {
        let target = betas[i] - t as i64;
        if target < 0 || betas.contains(&target) {
            continue;
        }
        // ribbon height = number of betas strictly between target and betas[i]
        let height = betas.iter().filter(|&&b| b > target && b < betas[i]).count();
        let mut new_betas = betas.clone();
        new_betas[i] = target;
        new_betas.sort_unstable_by(|a, b| b.cmp(a));
        let new_lambda: Vec<u32> = new_betas
            .iter()
            .enumerate()
            .map(|(j, &b)| (b - (k - 1 - j) as i64) as u32)
            .filter(|&p| p > 0)
            .collect();
        let sub = char_rec(new_lambda, rest);
        if height % 2 == 0 {
            total += sub;
        } else {
            total -= sub;
        }
    }
    CHAR_CACHE.lock().unwrap().insert(key, total.clone());
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{class_size, partitions_of};

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn trivial_representation_is_constant_one() {
        for d in 1..=6 {
            for sigma in partitions_of(d) {
                assert_eq!(char_value(&p(&[d as u32]), &sigma).unwrap(), BigInt::from(1));
            }
        }
    }

    #[test]
    fn sign_representation() {
        for d in 1..=6 {
            let sign_shape = p(&vec![1u32; d]);
            for sigma in partitions_of(d) {
                // sign of a permutation of cycle type sigma
                let expected = if (d - sigma.len()) % 2 == 0 { 1 } else { -1 };
                assert_eq!(char_value(&sign_shape, &sigma).unwrap(), BigInt::from(expected));
            }
        }
    }

    #[test]
    fn standard_character_of_s3_at_three_cycle() {
        // forced by column orthogonality given the trivial and sign rows
        assert_eq!(char_value(&p(&[2, 1]), &p(&[3])).unwrap(), BigInt::from(-1));
        assert_eq!(char_value(&p(&[2, 1]), &p(&[2])).unwrap(), BigInt::from(0));
    }

    #[test]
    fn dims_match_hook_formula_and_identity_value() {
        assert_eq!(dim_irrep(&p(&[2, 1])), BigInt::from(2));
        assert_eq!(dim_irrep(&p(&[2, 2])), BigInt::from(2));
        for d in 0..=8usize {
            for lam in partitions_of(d) {
                assert_eq!(char_value(&lam, &Partition::empty()).unwrap(), dim_irrep(&lam));
            }
        }
    }

    #[test]
    fn singleton_completion() {
        // chi evaluated at a class given with or without explicit singletons
        assert_eq!(
            char_value(&p(&[3, 1]), &p(&[2])).unwrap(),
            char_value(&p(&[3, 1]), &p(&[2, 1, 1])).unwrap()
        );
        assert!(char_value(&p(&[2]), &p(&[3])).is_err());
    }

    #[test]
    fn second_orthogonality_up_to_d7() {
        // sum over lambda of chi(sigma) chi(tau) = delta * d!/z_sigma
        for d in 1..=7usize {
            let classes = partitions_of(d);
            let lambdas = partitions_of(d);
            for sigma in &classes {
                for tau in &classes {
                    let mut acc = BigInt::zero();
                    for lam in &lambdas {
                        acc += char_value(lam, sigma).unwrap() * char_value(lam, tau).unwrap();
                    }
                    let expected = if sigma == tau {
                        factorial(d) / class_size(sigma, d)
                    } else {
                        BigInt::zero()
                    };
                    assert_eq!(acc, expected, "d={d} sigma={sigma} tau={tau}");
                }
            }
        }
    }
}
