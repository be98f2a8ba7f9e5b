//! Brute-force monodromy oracle.
//!
//! Enumerates Hurwitz tuples (alpha, beta, gamma_1..gamma_n) in S_d with
//! beta^-1 alpha^-1 beta alpha = gamma_n ... gamma_1 directly, as one-line
//! permutation arrays. This is the independent check for every
//! character-formula count, and for the Siegel-Veech weighted counts.

use crate::error::{Error, Result};
use crate::hurwitz::Variant;
use crate::partition::{Partition, Profile};
use crate::rational::{factorial, rat_big, Rat};
use crate::shifted::sv_weight;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

pub type Perm = Vec<usize>;

/// (p * q)(x) = p(q(x)): q acts first, matching right-to-left composition.
pub fn compose(p: &Perm, q: &Perm) -> Perm {
    q.iter().map(|&x| p[x]).collect()
}

pub fn inverse(p: &Perm) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

/// Cycle type including fixed points, as a partition of d.
pub fn cycle_type(p: &Perm) -> Partition {
    let mut seen = vec![false; p.len()];
    let mut parts = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u32;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        parts.push(len);
    }
    Partition::new(parts)
}

/// All elements of S_d in lexicographic one-line order.
pub fn all_perms(d: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut p: Perm = (0..d).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        if d < 2 {
            break;
        }
        let Some(i) = (0..d - 1).rev().find(|&i| p[i] < p[i + 1]) else {
            break;
        };
        let j = (i + 1..d).rev().find(|&j| p[j] > p[i]).unwrap();
        p.swap(i, j);
        p[i + 1..].reverse();
    }
    out
}

fn orbits(gens: &[&Perm], d: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; d];
    let mut out = Vec::new();
    for start in 0..d {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut frontier = vec![start];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = g[x];
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                    frontier.push(y);
                }
            }
        }
        out.push(orbit);
    }
    out
}

struct TupleFilter {
    variant: Variant,
}

impl TupleFilter {
    /// Checks the variant-specific condition on a complete Hurwitz tuple.
    fn accept(&self, alpha: &Perm, beta: &Perm, gammas: &[Perm], d: usize) -> bool {
        match self.variant {
            Variant::All => true,
            Variant::Connected => {
                let mut gens: Vec<&Perm> = vec![alpha, beta];
                gens.extend(gammas.iter());
                d > 0 && orbits(&gens, d).len() == 1
            }
            Variant::Prime => {
                let mut gens: Vec<&Perm> = vec![alpha, beta];
                gens.extend(gammas.iter());
                let orbit_list = orbits(&gens, d);
                // the gamma subgroup must move a point in every orbit
                orbit_list.iter().all(|orbit| {
                    orbit.iter().any(|&x| gammas.iter().any(|g| g[x] != x))
                })
            }
        }
    }
}

/// Estimated loop count for the enumeration: d!^2 * prod of class sizes of
/// the first n-1 prescribed classes.
pub fn oracle_cost(profile: &Profile, d: usize) -> BigInt {
    let fact = factorial(d);
    let mut cost = &fact * &fact;
    let mus = profile.partitions();
    for mu in mus.iter().take(mus.len().saturating_sub(1)) {
        cost *= crate::partition::class_size(mu, d);
    }
    cost
}

/// Enumerate all Hurwitz tuples of profile `profile` in S_d and fold them
/// with `weight`; the result is the weighted tuple count divided by d!.
fn enumerate_weighted<W>(
    profile: &Profile,
    d: usize,
    variant: Variant,
    budget: u128,
    weight: W,
) -> Result<Rat>
where
    W: Fn(&Perm) -> Rat,
{
    let required = oracle_cost(profile, d);
    let required_u128 = required.to_u128().unwrap_or(u128::MAX);
    if required_u128 > budget {
        return Err(Error::BudgetExceeded { required: required_u128, budget });
    }

    let mus: Vec<&Partition> = profile.partitions().iter().collect();
    let n = mus.len();
    // each prescribed class must fit in S_d
    let targets: Vec<Option<Partition>> = mus.iter().map(|mu| mu.completed(d)).collect();
    if targets.iter().any(Option::is_none) {
        return Ok(Rat::zero());
    }
    let targets: Vec<Partition> = targets.into_iter().map(Option::unwrap).collect();

    let perms = all_perms(d);
    // group S_d by cycle type once
    let mut by_type: std::collections::HashMap<Vec<u32>, Vec<usize>> = Default::default();
    for (i, p) in perms.iter().enumerate() {
        by_type.entry(cycle_type(p).parts().to_vec()).or_default().push(i);
    }
    let class_members = |t: &Partition| -> &[usize] {
        by_type.get(t.parts()).map(|v| &v[..]).unwrap_or(&[])
    };

    let filter = TupleFilter { variant };
    let mut total = Rat::zero();
    let mut gammas: Vec<Perm> = Vec::with_capacity(n);

    for alpha in &perms {
        let w = weight(alpha);
        if w.is_zero() {
            continue;
        }
        let alpha_inv = inverse(alpha);
        for beta in &perms {
            // commutator beta^-1 alpha^-1 beta alpha
            let comm = compose(&inverse(beta), &compose(&alpha_inv, &compose(beta, alpha)));
            // choose gamma_1..gamma_{n-1} in their classes; gamma_n is forced
            gammas.clear();
            let mut count = Rat::zero();
            rec_gammas(
                &comm,
                &targets,
                0,
                &perms,
                &class_members,
                &mut gammas,
                alpha,
                beta,
                d,
                &filter,
                &mut count,
            );
            total += w.clone() * count;
        }
    }
    Ok(total / rat_big(factorial(d)))
}

#[allow(clippy::too_many_arguments)]
fn rec_gammas<'a, F>(
    comm: &Perm,
    targets: &[Partition],
    idx: usize,
    perms: &'a [Perm],
    class_members: &F,
    gammas: &mut Vec<Perm>,
    alpha: &Perm,
    beta: &Perm,
    d: usize,
    filter: &TupleFilter,
    count: &mut Rat,
) where
    F: Fn(&Partition) -> &'a [usize],
{
    let n = targets.len();
    if n == 0 {
        // relation forces the commutator to be trivial
        let identity = comm.iter().enumerate().all(|(i, &x)| i == x);
        if identity && filter.accept(alpha, beta, gammas, d) {
            *count += Rat::one();
        }
        return;
    }
    if idx == n - 1 {
        // gamma_n = comm * (gamma_{n-1} ... gamma_1)^-1
        let mut prod: Perm = (0..d).collect();
        for g in gammas.iter() {
            prod = compose(g, &prod);
        }
        let gamma_n = compose(comm, &inverse(&prod));
        if cycle_type(&gamma_n) == targets[n - 1] {
            gammas.push(gamma_n);
            if filter.accept(alpha, beta, gammas, d) {
                *count += Rat::one();
            }
            gammas.pop();
        }
        return;
    }
    for &gi in class_members(&targets[idx]) {
        gammas.push(perms[gi].clone());
        rec_gammas(comm, targets, idx + 1, perms, class_members, gammas, alpha, beta, d, filter, count);
        gammas.pop();
    }
}

/// Brute-force N_d / N'_d / N°_d for one degree.
pub fn brute_force_n(profile: &Profile, d: usize, variant: Variant, budget: u128) -> Result<Rat> {
    enumerate_weighted(profile, d, variant, budget, |_| Rat::one())
}

/// Brute-force Siegel-Veech weighted count: each tuple weighted by
/// S_p of the full cycle type of alpha (fixed points included).
pub fn brute_force_sv(
    profile: &Profile,
    d: usize,
    p: i32,
    variant: Variant,
    budget: u128,
) -> Result<Rat> {
    enumerate_weighted(profile, d, variant, budget, |alpha| sv_weight(&cycle_type(alpha), p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hurwitz::{count_series, n_connected_series};
    use crate::rational::{rat, ratio};

    const BUDGET: u128 = 100_000_000;

    fn profile(s: &str) -> Profile {
        Profile::parse(s).unwrap()
    }

    #[test]
    fn permutation_plumbing() {
        let perms = all_perms(4);
        assert_eq!(perms.len(), 24);
        let p = vec![1, 0, 2, 3];
        let q = vec![0, 2, 1, 3];
        assert_eq!(compose(&p, &q), vec![1, 2, 0, 3]);
        assert_eq!(compose(&p, &inverse(&p)), vec![0, 1, 2, 3]);
        assert_eq!(cycle_type(&vec![1, 2, 0, 3]), Partition::new(vec![3, 1]));
    }

    #[test]
    fn degree_zero_conventions() {
        let pr = profile("(2),(2)");
        assert_eq!(brute_force_n(&Profile::empty(), 0, Variant::All, BUDGET).unwrap(), rat(1));
        assert_eq!(brute_force_n(&Profile::empty(), 0, Variant::Prime, BUDGET).unwrap(), rat(1));
        assert_eq!(
            brute_force_n(&Profile::empty(), 0, Variant::Connected, BUDGET).unwrap(),
            rat(0)
        );
        assert_eq!(brute_force_n(&pr, 0, Variant::All, BUDGET).unwrap(), rat(0));
    }

    #[test]
    fn h11_degree_two_connected_is_two() {
        let v = brute_force_n(&profile("(2),(2)"), 2, Variant::Connected, BUDGET).unwrap();
        assert_eq!(v, rat(2));
    }

    #[test]
    fn oracle_matches_character_series_for_three_cycle() {
        let pr = profile("(3)");
        for variant in [Variant::All, Variant::Prime, Variant::Connected] {
            let series = count_series(&pr, 5, variant);
            for d in 0..=5 {
                let brute = brute_force_n(&pr, d, variant, BUDGET).unwrap();
                assert_eq!(brute, series.coeff(d), "d={d} variant={variant:?}");
            }
        }
    }

    #[test]
    fn oracle_matches_character_series_for_two_transpositions() {
        let pr = profile("(2),(2)");
        for variant in [Variant::All, Variant::Prime, Variant::Connected] {
            let series = count_series(&pr, 4, variant);
            for d in 0..=4 {
                let brute = brute_force_n(&pr, d, variant, BUDGET).unwrap();
                assert_eq!(brute, series.coeff(d), "d={d} variant={variant:?}");
            }
        }
    }

    #[test]
    fn oracle_validates_connected_inversion_for_repeated_parts() {
        // profile (2,2): two ramification points over one branch point
        let pr = profile("(2,2)");
        let series = n_connected_series(&pr, 4);
        for d in 0..=4 {
            let brute = brute_force_n(&pr, d, Variant::Connected, BUDGET).unwrap();
            assert_eq!(brute, series.coeff(d), "d={d}");
        }
    }

    #[test]
    fn oracle_validates_connected_inversion_with_surviving_splittings() {
        // (3),(3) splits nontrivially: N' = N° + N°((3))^2, all terms nonzero
        let pr = profile("(3),(3)");
        let series = n_connected_series(&pr, 4);
        for d in 3..=4 {
            let brute = brute_force_n(&pr, d, Variant::Connected, BUDGET).unwrap();
            assert_eq!(brute, series.coeff(d), "d={d}");
        }
        // mixed repeated-part case: two 2-cycles over one branch point plus a
        // third over another
        let pr = profile("(2,2),(2)");
        let series = n_connected_series(&pr, 4);
        for d in 0..=4 {
            let brute = brute_force_n(&pr, d, Variant::Connected, BUDGET).unwrap();
            assert_eq!(brute, series.coeff(d), "d={d}");
        }
    }

    #[test]
    fn sv_oracle_validates_connected_inversion_with_surviving_splittings() {
        use crate::sv::c_connected_series;
        let pr = profile("(3),(3)");
        for p in [-1, 1] {
            let series = c_connected_series(&pr, p, 4);
            for d in 3..=4 {
                let brute = brute_force_sv(&pr, d, p, Variant::Connected, BUDGET).unwrap();
                assert_eq!(brute, series.coeff(d), "d={d} p={p}");
            }
        }
        let pr = profile("(2,2),(2)");
        for p in [-1, 1] {
            let series = c_connected_series(&pr, p, 4);
            for d in 0..=4 {
                let brute = brute_force_sv(&pr, d, p, Variant::Connected, BUDGET).unwrap();
                assert_eq!(brute, series.coeff(d), "d={d} p={p}");
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let pr = profile("(2)");
        match brute_force_n(&pr, 6, Variant::All, 10) {
            Err(Error::BudgetExceeded { required, budget }) => {
                assert_eq!(budget, 10);
                assert!(required > 10);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn sv_weights_by_alpha_cycle_type() {
        // H(1,1) at d=2: the four tuples all have gamma_i = (12); alpha is id
        // or the transposition, two tuples each. S_{-1}: id -> 1/1+1/1 = 2,
        // transposition -> 1/2. Total (2*2 + 2*1/2)/2! = 5/2.
        let v = brute_force_sv(&profile("(2),(2)"), 2, -1, Variant::All, BUDGET).unwrap();
        assert_eq!(v, ratio(5, 2));
    }
}
