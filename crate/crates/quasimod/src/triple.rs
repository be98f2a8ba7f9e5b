//! Triple Hurwitz numbers A, A' for numbered input/output profiles, and the
//! completed-cycle variants.
//!
//! A(w-, w+, F) is the character sum of eq-type
//! (prod w)^-1 sum over lambda |- d of chi_{[w-]} chi_{[w+]} F(lambda);
//! A' removes unramified components by subset inclusion-exclusion over
//! sub-tuples (the Moebius function is never materialized).

use crate::character::char_value;
use crate::partition::{partitions_of, Partition};
use crate::rational::{rat, rat_big, Rat};
use crate::shifted::{f_mu, p_ell_big};
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::{LazyLock, Mutex};

/// An ordered ("numbered") tuple of positive widths.
pub type WidthTuple = Vec<u32>;

fn tuple_sum(w: &[u32]) -> usize {
    w.iter().map(|&x| x as usize).sum()
}

/// The function F placed at a vertex of a graph sum.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum VertexFunction {
    /// F = 1 (empty ramification over z = 1).
    One,
    /// F = f_mu.
    FMu(Partition),
    /// F = P_mu / prod(mu_i), the completed cycle(s).
    Completed(Partition),
}

impl VertexFunction {
    pub fn eval(&self, lambda: &Partition) -> Rat {
        match self {
            VertexFunction::One => Rat::one(),
            VertexFunction::FMu(mu) => f_mu(mu, lambda),
            VertexFunction::Completed(mu) => {
                let mut acc = Rat::one();
                for &part in mu.parts() {
                    acc *= p_ell_big(part, lambda) / rat(part as i64);
                }
                acc
            }
        }
    }

    /// f_3 -> completed(3), etc.
    pub fn completed_single(ell: u32) -> VertexFunction {
        VertexFunction::Completed(Partition::new(vec![ell]))
    }
}

type Cache<K, V> = LazyLock<Mutex<HashMap<K, V>>>;
type TupleKey = (Vec<u32>, Vec<u32>, VertexFunction);

static A_CACHE: Cache<TupleKey, Rat> = LazyLock::new(|| Mutex::new(HashMap::new()));
static A_PRIME_CACHE: Cache<TupleKey, Rat> = LazyLock::new(|| Mutex::new(HashMap::new()));

fn sorted(w: &[u32]) -> Vec<u32> {
    let mut v = w.to_vec();
    v.sort_unstable();
    v
}

/// A(w-, w+, F): zero unless |w-| = |w+|.
pub fn a_number(w_minus: &[u32], w_plus: &[u32], f: &VertexFunction) -> Rat {
    let d = tuple_sum(w_minus);
    if d != tuple_sum(w_plus) {
        return Rat::zero();
    }
    let key = (sorted(w_minus), sorted(w_plus), f.clone());
    if let Some(v) = A_CACHE.lock().unwrap().get(&key) {
        return v.clone();
    }
    let cls_minus = Partition::new(key.0.clone());
    let cls_plus = Partition::new(key.1.clone());
    let mut acc = Rat::zero();
    for lam in partitions_of(d) {
        let fv = f.eval(&lam);
        if fv.is_zero() {
            continue;
        }
        let chi_m = char_value(&lam, &cls_minus).unwrap();
        if chi_m.is_zero() {
            continue;
        }
        let chi_p = char_value(&lam, &cls_plus).unwrap();
        if chi_p.is_zero() {
            continue;
        }
        acc += rat_big(chi_m * chi_p) * fv;
    }
    let mut norm = Rat::one();
    for &w in w_minus.iter().chain(w_plus) {
        norm *= rat(w as i64);
    }
    let v = acc / norm;
    A_CACHE.lock().unwrap().insert(key, v.clone());
    v
}

/// A(w-, w+, emptyset) in closed form: nonzero only when the two tuples agree
/// as multisets, and then equals prod(multiplicity factorials) / prod(w).
pub fn a_empty(w_minus: &[u32], w_plus: &[u32]) -> Rat {
    if sorted(w_minus) != sorted(w_plus) {
        return Rat::zero();
    }
    let mut acc = Rat::one();
    let mut mult: HashMap<u32, u32> = HashMap::new();
    for &w in w_minus {
        *mult.entry(w).or_insert(0) += 1;
    }
    for (&w, &m) in &mult {
        acc *= rat_big(crate::rational::factorial(m as usize));
        for _ in 0..m {
            acc /= rat(w as i64);
        }
    }
    acc
}

/// A'(w-, w+, F): triple Hurwitz numbers without unramified components, via
/// A(w-,w+,F) = sum over index-subset pairs (u-,u+) with equal weight of
/// A'(u-,u+,F) A(w- \ u-, w+ \ u+, emptyset), inverted recursively.
pub fn a_prime(w_minus: &[u32], w_plus: &[u32], f: &VertexFunction) -> Rat {
    if tuple_sum(w_minus) != tuple_sum(w_plus) {
        return Rat::zero();
    }
    let key = (sorted(w_minus), sorted(w_plus), f.clone());
    if let Some(v) = A_PRIME_CACHE.lock().unwrap().get(&key) {
        return v.clone();
    }
    let wm = &key.0;
    let wp = &key.1;
    let mut acc = a_number(wm, wp, f);
    // subtract all proper sub-pairs
    let m = wm.len();
    let n = wp.len();
    for mask_m in 0u32..(1 << m) {
        for mask_p in 0u32..(1 << n) {
            if mask_m == (1 << m) - 1 && mask_p == (1 << n) - 1 {
                continue; // the full pair is the unknown
            }
            let u_m: Vec<u32> =
                (0..m).filter(|&i| mask_m & (1 << i) != 0).map(|i| wm[i]).collect();
            let u_p: Vec<u32> =
                (0..n).filter(|&i| mask_p & (1 << i) != 0).map(|i| wp[i]).collect();
            if tuple_sum(&u_m) != tuple_sum(&u_p) {
                continue;
            }
            let rest_m: Vec<u32> =
                (0..m).filter(|&i| mask_m & (1 << i) == 0).map(|i| wm[i]).collect();
            let rest_p: Vec<u32> =
                (0..n).filter(|&i| mask_p & (1 << i) == 0).map(|i| wp[i]).collect();
            let cyl = a_empty(&rest_m, &rest_p);
            if cyl.is_zero() {
                continue;
            }
            let sub = a_prime(&u_m, &u_p, f);
            if !sub.is_zero() {
                acc -= sub * cyl;
            }
        }
    }
    A_PRIME_CACHE.lock().unwrap().insert(key, acc.clone());
    acc
}

/// Abar'(w-, w+, ell) = A'(w-, w+, P_ell / ell), the completed-cycle variant.
pub fn abar_prime(w_minus: &[u32], w_plus: &[u32], ell: u32) -> Rat {
    a_prime(w_minus, w_plus, &VertexFunction::completed_single(ell))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn fmu(parts: &[u32]) -> VertexFunction {
        VertexFunction::FMu(Partition::new(parts.to_vec()))
    }

    #[test]
    fn orthogonality_base_case() {
        for w in 1..=12u32 {
            assert_eq!(a_number(&[w], &[w], &VertexFunction::One), ratio(1, w as i64));
        }
        assert_eq!(a_number(&[2, 2], &[2, 2], &VertexFunction::One), ratio(1, 2));
        // and against the closed form
        assert_eq!(a_empty(&[2, 2], &[2, 2]), ratio(1, 2));
        for (wm, wp) in [(vec![3u32, 1], vec![2u32, 2]), (vec![4], vec![1, 3])] {
            assert_eq!(a_number(&wm, &wp, &VertexFunction::One), a_empty(&wm, &wp));
            assert_eq!(a_number(&wm, &wp, &VertexFunction::One), rat(0));
        }
        assert_eq!(a_number(&[2, 1], &[2, 1], &VertexFunction::One), a_empty(&[2, 1], &[2, 1]));
    }

    #[test]
    fn degree_mismatch_is_zero() {
        assert_eq!(a_number(&[2], &[3], &fmu(&[3])), rat(0));
        assert_eq!(a_prime(&[2], &[3], &fmu(&[3])), rat(0));
    }

    #[test]
    fn a_prime_one_cycle_with_three_cycle() {
        // A'(w, w, (3)) = w^2/6 - w/2 + 1/3
        for w in 1..=9i64 {
            let expected = ratio(w * w, 6) - ratio(w, 2) + ratio(1, 3);
            assert_eq!(a_prime(&[w as u32], &[w as u32], &fmu(&[3])), expected, "w={w}");
        }
    }

    #[test]
    fn a_prime_two_cycles_with_three_cycle() {
        // 1 if w1 != w2, 0 if w1 = w2
        for w1 in 1..=5u32 {
            for w2 in 1..=5u32 {
                let expected = if w1 == w2 { rat(0) } else { rat(1) };
                assert_eq!(a_prime(&[w1, w2], &[w1, w2], &fmu(&[3])), expected);
            }
        }
    }

    #[test]
    fn a_prime_transposition_vertex() {
        // A'((w1), (w2,w3), f_2) = 1 whenever w1 = w2 + w3 (the unnormalized
        // P_2 vertex value is 2)
        for w2 in 1..=4u32 {
            for w3 in 1..=4u32 {
                let w1 = w2 + w3;
                assert_eq!(a_prime(&[w1], &[w2, w3], &fmu(&[2])), rat(1));
                assert_eq!(
                    a_prime(&[w1], &[w2, w3], &VertexFunction::Completed(Partition::new(vec![2]))),
                    rat(1)
                );
            }
        }
    }

    #[test]
    fn a_prime_unramified_conventions() {
        assert_eq!(a_prime(&[], &[], &VertexFunction::One), rat(1));
        assert_eq!(a_prime(&[], &[], &fmu(&[3])), rat(0));
        assert_eq!(a_prime(&[], &[], &VertexFunction::completed_single(3)), rat(0));
        // emergent: no unramified components means A'( nonempty, One ) = 0
        for wm in [vec![1u32], vec![3], vec![2, 2], vec![1, 2, 3]] {
            assert_eq!(a_prime(&wm, &wm, &VertexFunction::One), rat(0), "{wm:?}");
        }
    }

    #[test]
    fn abar_prime_single_cycle_table() {
        // Abar'((w),(w),3) = w^2/6 - 1/12
        for w in 1..=9i64 {
            assert_eq!(abar_prime(&[w as u32], &[w as u32], 3), ratio(w * w, 6) - ratio(1, 12));
        }
        // Abar'((w1,w2),(w1,w2),3) = 2 with or without the wall w1 = w2
        for w1 in 1..=5u32 {
            for w2 in 1..=5u32 {
                assert_eq!(abar_prime(&[w1, w2], &[w1, w2], 3), rat(2), "w=({w1},{w2})");
            }
        }
        // one-loop P_1 vertex: value 1
        for w in 1..=6u32 {
            assert_eq!(abar_prime(&[w], &[w], 1), rat(1));
        }
    }

    #[test]
    fn parity_vanishing() {
        // A'(w-,w+,f_mu) = 0 when wt(mu) - l(w-) - l(w+) is odd;
        // Abar'(w-,w+,ell) = 0 when ell + 1 - l(w-) - l(w+) is odd.
        let tuples: Vec<Vec<u32>> = vec![
            vec![1], vec![2], vec![3], vec![1, 1], vec![2, 1], vec![3, 2],
            vec![2, 2], vec![1, 1, 2], vec![4],
        ];
        for wm in &tuples {
            for wp in &tuples {
                if tuple_sum(wm) != tuple_sum(wp) || tuple_sum(wm) > 8 {
                    continue;
                }
                for mu in [vec![2u32], vec![3], vec![4], vec![2, 2], vec![3, 2]] {
                    let mup = Partition::new(mu.clone());
                    if (mup.weight() + wm.len() + wp.len()) % 2 == 1 {
                        assert_eq!(
                            a_prime(wm, wp, &fmu(&mu)),
                            rat(0),
                            "mu={mu:?} wm={wm:?} wp={wp:?}"
                        );
                    }
                }
                for ell in 1..=5u32 {
                    if (ell as usize + 1 + wm.len() + wp.len()) % 2 == 1 {
                        assert_eq!(abar_prime(wm, wp, ell), rat(0), "ell={ell} {wm:?} {wp:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn linearity_reconstructs_f3_from_completed_cycles() {
        // f_3 = P_3/3 - (1/2) P_1^2 + (5/12) P_1 evaluated through A'
        // exercises both table columns of the one- and two-cycle cases.
        let p3 = VertexFunction::completed_single(3);
        let p1sq = VertexFunction::Completed(Partition::new(vec![1, 1]));
        let p1 = VertexFunction::completed_single(1);
        for (wm, wp) in [
            (vec![4u32], vec![4u32]),
            (vec![5], vec![5]),
            (vec![2, 3], vec![2, 3]),
            (vec![1, 4], vec![2, 3]),
        ] {
            let lhs = a_prime(&wm, &wp, &fmu(&[3]));
            // completed_single(3) is already P_3/3; Completed((1,1)) is P_1^2
            let rhs = a_prime(&wm, &wp, &p3) - ratio(1, 2) * a_prime(&wm, &wp, &p1sq)
                + ratio(5, 12) * a_prime(&wm, &wp, &p1);
            assert_eq!(lhs, rhs, "wm={wm:?} wp={wp:?}");
        }
    }
}
