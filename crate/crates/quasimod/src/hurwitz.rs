//! Counting torus covers: the Burnside series N, the series N' of covers
//! without unramified components, and the connected series N°.

use crate::partition::{partitions_of, set_partitions, Partition, Profile};
use crate::rational::Rat;
use crate::series::{partition_gf, QSeries};
use crate::shifted::f_mu;
use num_traits::Zero;
use std::collections::HashMap;
use std::sync::{LazyLock, Mutex};

/// Counting variant selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// All covers (may contain unramified components).
    All,
    /// Covers without unramified components.
    Prime,
    /// Connected covers.
    Connected,
}

impl Variant {
    pub fn parse(s: &str) -> Option<Variant> {
        match s {
            "all" => Some(Variant::All),
            "prime" => Some(Variant::Prime),
            "connected" => Some(Variant::Connected),
            _ => None,
        }
    }
}

/// A counting request as the CLI sees it.
#[derive(Clone, Debug)]
pub struct CoverCountRequest {
    pub profile: Profile,
    pub order: usize,
    pub variant: Variant,
}

/// N(Pi): coefficient of q^d is sum over lambda |- d of prod_i f_{mu_i}(lambda).
pub fn n_series(profile: &Profile, order: usize) -> QSeries {
    let coeffs: Vec<Rat> = (0..=order)
        .map(|d| {
            partitions_of(d)
                .iter()
                .map(|lam| burnside_weight(profile, lam))
                .sum()
        })
        .collect();
    QSeries::from_coeffs(coeffs)
}

/// prod_i f_{mu_i}(lambda), the Burnside summand.
pub fn burnside_weight(profile: &Profile, lambda: &Partition) -> Rat {
    let mut acc = Rat::from_integer(1.into());
    for mu in profile.partitions() {
        acc *= f_mu(mu, lambda);
        if acc.is_zero() {
            break;
        }
    }
    acc
}

/// N'(Pi) = N(Pi) / N().
pub fn n_prime_series(profile: &Profile, order: usize) -> QSeries {
    n_series(profile, order)
        .div(&partition_gf(order))
        .expect("partition gf has constant term 1")
}

type Cache<K, V> = LazyLock<Mutex<HashMap<K, V>>>;

static CONNECTED_CACHE: Cache<(Profile, usize), QSeries> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// N°(Pi): connected covers, by inverting
/// N'(Pi) = sum over set partitions alpha of the ramification points of
/// prod over blocks A of N°(Pi_A).
pub fn n_connected_series(profile: &Profile, order: usize) -> QSeries {
    let key = (profile.canonical(), order);
    if let Some(s) = CONNECTED_CACHE.lock().unwrap().get(&key) {
        return s.clone();
    }
    let points = profile.ramification_points();
    let mut result = n_prime_series(profile, order);
    if points.is_empty() {
        // N'(empty) = 1 and there is no connected degree-0 cover
        result = QSeries::zero(order);
    } else {
        for alpha in set_partitions(points.len()) {
            if alpha.len() < 2 {
                continue;
            }
            let mut term = QSeries::one(order);
            for block in &alpha {
                let selected: Vec<(usize, usize)> = block.iter().map(|&i| points[i]).collect();
                let sub = profile.sub_profile(&selected);
                term = &term * &n_connected_series(&sub, order);
                if term.is_zero() {
                    break;
                }
            }
            result = &result - &term;
        }
    }
    CONNECTED_CACHE.lock().unwrap().insert(key, result.clone());
    result
}

/// Dispatch on the variant.
pub fn count_series(profile: &Profile, order: usize, variant: Variant) -> QSeries {
    match variant {
        Variant::All => n_series(profile, order),
        Variant::Prime => n_prime_series(profile, order),
        Variant::Connected => n_connected_series(profile, order),
    }
}
