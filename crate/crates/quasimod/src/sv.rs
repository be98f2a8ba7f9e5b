//! Siegel-Veech weighted counting.
//!
//! c_p weighs every cover by S_p of the horizontal monodromy's full cycle
//! type. The series c_p, c'_p, c°_p are computed through hook-length moments
//! T_p and q-brackets; the graph route decorates each global graph with the
//! extra prefactor sum_e h_e w_e^p, decomposed over the marked edge.

use crate::error::{Error, Result};
use crate::graphs::{
    enumerate_graphs_for_profile, orientations, oriented_sum, EdgeDir, EdgeHeight, EdgeRule,
    GlobalGraph,
};
use crate::hurwitz::{n_connected_series, n_prime_series};
use crate::partition::{partitions_of, set_partitions, Profile};
use crate::rational::{rat, rat_big, rat_pow, Rat};
use crate::series::QSeries;
use crate::shifted::{q_bracket, t_p};
use crate::triple::{a_prime, VertexFunction};
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::{LazyLock, Mutex};

/// A Siegel-Veech counting request.
#[derive(Clone, Debug)]
pub struct SvRequest {
    pub profile: Profile,
    pub p: i32,
    pub order: usize,
    pub variant: crate::hurwitz::Variant,
}

/// c_p(Pi) = sum over lambda of T_p(lambda) prod f_{mu_i}(lambda) q^{|lambda|}.
pub fn c_series(profile: &Profile, p: i32, order: usize) -> QSeries {
    let coeffs: Vec<Rat> = (0..=order)
        .map(|d| {
            partitions_of(d)
                .iter()
                .map(|lam| {
                    let w = crate::hurwitz::burnside_weight(profile, lam);
                    if w.is_zero() {
                        w
                    } else {
                        w * t_p(lam, p)
                    }
                })
                .sum()
        })
        .collect();
    QSeries::from_coeffs(coeffs)
}

/// c'_p(Pi) = <T_p prod f> - <T_p> <prod f>, as a difference of q-brackets.
pub fn c_prime_series(profile: &Profile, p: i32, order: usize) -> QSeries {
    let joint = q_bracket(
        |lam| {
            let w = crate::hurwitz::burnside_weight(profile, lam);
            if w.is_zero() {
                w
            } else {
                w * t_p(lam, p)
            }
        },
        order,
    );
    let tp_only = q_bracket(|lam| t_p(lam, p), order);
    &joint - &(&tp_only * &n_prime_series(profile, order))
}

type Cache<K, V> = LazyLock<Mutex<HashMap<K, V>>>;

static SV_CONNECTED_CACHE: Cache<(Profile, i32, usize), QSeries> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// c°_p(Pi): connected Siegel-Veech counting. The weight is additive over
/// components, so
/// c'(Pi) = sum over set partitions alpha of R, sum over a marked block A0,
///          c°(Pi_{A0}) prod over the other blocks of N°(Pi_A),
/// inverted recursively.
pub fn c_connected_series(profile: &Profile, p: i32, order: usize) -> QSeries {
    let key = (profile.canonical(), p, order);
    if let Some(s) = SV_CONNECTED_CACHE.lock().unwrap().get(&key) {
        return s.clone();
    }
    let points = profile.ramification_points();
    let mut result = c_prime_series(profile, p, order);
    for alpha in set_partitions(points.len()) {
        if alpha.len() < 2 {
            continue;
        }
        // connected factors per block
        let blocks: Vec<Profile> = alpha
            .iter()
            .map(|block| {
                let sel: Vec<(usize, usize)> = block.iter().map(|&i| points[i]).collect();
                profile.sub_profile(&sel)
            })
            .collect();
        let n_parts: Vec<QSeries> =
            blocks.iter().map(|b| n_connected_series(b, order)).collect();
        for (marked, block) in blocks.iter().enumerate() {
            let mut term = c_connected_series(block, p, order);
            if term.is_zero() {
                continue;
            }
            for (i, npart) in n_parts.iter().enumerate() {
                if i != marked {
                    term = &term * npart;
                    if term.is_zero() {
                        break;
                    }
                }
            }
            result = &result - &term;
        }
    }
    SV_CONNECTED_CACHE.lock().unwrap().insert(key, result.clone());
    result
}

pub fn sv_count_series(profile: &Profile, p: i32, order: usize, variant: crate::hurwitz::Variant) -> QSeries {
    match variant {
        crate::hurwitz::Variant::All => c_series(profile, p, order),
        crate::hurwitz::Variant::Prime => c_prime_series(profile, p, order),
        crate::hurwitz::Variant::Connected => c_connected_series(profile, p, order),
    }
}

/// S^SV_{i0}(G, m): the graph sum with prefactor h_{i0}/w_{i0}, one
/// orientation. Only orientation totals are convention-independent.
pub fn sv_graph_sum_i0_oriented(
    g: &GlobalGraph,
    dirs: &[EdgeDir],
    m: &[u32],
    i0: usize,
    order: usize,
) -> QSeries {
    let scalar = |e: usize, w: usize| {
        if e == i0 {
            rat_pow(&rat(w as i64), m[e] as i64)
        } else {
            rat_pow(&rat(w as i64), m[e] as i64 + 1)
        }
    };
    let height = |e: usize| if e == i0 { EdgeHeight::Marked } else { EdgeHeight::Std };
    let vertex = |_: usize, _: &[u32], _: &[u32]| Rat::one();
    oriented_sum(g, dirs, order, &EdgeRule { scalar: &scalar, height: &height }, &vertex)
}

/// S^SV_{i0}(Gamma, m): summed over orientations.
pub fn sv_graph_sum_i0(g: &GlobalGraph, m: &[u32], i0: usize, order: usize) -> QSeries {
    let mut acc = QSeries::zero(order);
    for dirs in orientations(g) {
        acc.add_assign_ref(&sv_graph_sum_i0_oriented(g, &dirs, m, i0, order));
    }
    acc
}

/// S^SV(Gamma, m) = sum over the marked edge.
pub fn sv_graph_sum(g: &GlobalGraph, m: &[u32], order: usize) -> QSeries {
    let mut acc = QSeries::zero(order);
    for i0 in 0..g.n_edges() {
        acc.add_assign_ref(&sv_graph_sum_i0(g, m, i0, order));
    }
    acc
}

/// c'_p(Pi, Gamma): the Siegel-Veech decorated sum of one labeled graph,
/// orientation-summed, with A' vertex factors.
pub fn sv_per_graph(g: &GlobalGraph, profile: &Profile, order: usize, p: i32) -> QSeries {
    assert_eq!(profile.len(), g.n_vertices());
    let mut acc = QSeries::zero(order);
    for i0 in 0..g.n_edges() {
        let scalar = |e: usize, w: usize| {
            if e == i0 {
                rat_pow(&rat(w as i64), p as i64 + 1)
            } else {
                rat(w as i64)
            }
        };
        let height = |e: usize| if e == i0 { EdgeHeight::Marked } else { EdgeHeight::Std };
        let vertex = |v: usize, w_in: &[u32], w_out: &[u32]| {
            a_prime(w_in, w_out, &VertexFunction::FMu(profile.partitions()[v].clone()))
        };
        for dirs in orientations(g) {
            acc.add_assign_ref(&oriented_sum(
                g,
                &dirs,
                order,
                &EdgeRule { scalar: &scalar, height: &height },
                &vertex,
            ));
        }
    }
    acc
}

/// Assemble c'_p(Pi) = sum over graphs of c'_p(Pi, Gamma)/|Aut(Gamma)| and
/// cross-check against the q-bracket route; a mismatch is a hard failure.
pub fn assemble_sv_prime(profile: &Profile, p: i32, order: usize) -> Result<QSeries> {
    let mut acc = QSeries::zero(order);
    for g in enumerate_graphs_for_profile(profile) {
        let contribution = sv_per_graph(&g, profile, order, p);
        acc.add_assign_ref(&contribution.scale(&rat_big(g.automorphism_order()).recip()));
    }
    let bracket = c_prime_series(profile, p, order);
    if let Some(n) = acc.first_difference(&bracket) {
        return Err(Error::CrossCheckMismatch {
            context: format!("assemble_sv_prime({profile}, p={p})"),
            first_diff: n,
        });
    }
    Ok(acc)
}

/// Constant-term route for the marked graph sum: the i0 factor is L (m = 0)
/// or Dq P^{(m-2)} (m >= 2); must reproduce the orientation-summed direct
/// route.
pub fn sv_constant_term(g: &GlobalGraph, m: &[u32], i0: usize, order: usize) -> Result<QSeries> {
    if g.has_loops() {
        return Err(Error::GraphNotReduced);
    }
    if let Some(&bad) = m.iter().find(|&&mi| mi % 2 != 0) {
        return Err(Error::OddEdgeExponent(bad));
    }
    let factors: Vec<crate::elliptic::CtFactor> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(a, b))| crate::elliptic::CtFactor {
            a,
            b,
            kind: if e == i0 {
                crate::elliptic::CtKind::SvMarked(m[e])
            } else {
                crate::elliptic::CtKind::PDeriv(m[e])
            },
        })
        .collect();
    let extracted = crate::elliptic::constant_term_product(g.n_vertices(), &factors, order);
    let direct = sv_graph_sum_i0(g, m, i0, order);
    if let Some(n) = extracted.first_difference(&direct) {
        return Err(Error::CrossCheckMismatch {
            context: format!("sv_constant_term({g}, i0={i0})"),
            first_diff: n,
        });
    }
    Ok(extracted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::{fourier_expansion, Which};
    use crate::hurwitz::Variant;
    use crate::oracle::brute_force_sv;
    use crate::quasimodular::{fit_quasimodular, sigma_series, QmPoly};
    use crate::rational::ratio;
    use crate::series::partition_gf;

    fn profile(s: &str) -> Profile {
        Profile::parse(s).unwrap()
    }

    #[test]
    fn c_series_empty_profile_p1_is_dq_partition_gf() {
        assert_eq!(c_series(&Profile::empty(), 1, 10), partition_gf(10).dq());
    }

    #[test]
    fn c_prime_empty_profile_vanishes() {
        for p in [-1, 1, 3] {
            assert!(c_prime_series(&Profile::empty(), p, 8).is_zero());
            assert!(c_connected_series(&Profile::empty(), p, 8).is_zero());
        }
    }

    #[test]
    fn oracle_matches_c_series() {
        let pr = profile("(2),(2)");
        for p in [-1, 1] {
            let series = c_series(&pr, p, 4);
            for d in 0..=4 {
                let brute = brute_force_sv(&pr, d, p, Variant::All, 100_000_000).unwrap();
                assert_eq!(brute, series.coeff(d), "d={d} p={p}");
            }
        }
    }

    #[test]
    fn oracle_matches_prime_and_connected() {
        let pr = profile("(2),(2)");
        for p in [-1, 1] {
            let prime = c_prime_series(&pr, p, 4);
            let conn = c_connected_series(&pr, p, 4);
            for d in 0..=4 {
                assert_eq!(
                    brute_force_sv(&pr, d, p, Variant::Prime, 100_000_000).unwrap(),
                    prime.coeff(d),
                    "prime d={d} p={p}"
                );
                assert_eq!(
                    brute_force_sv(&pr, d, p, Variant::Connected, 100_000_000).unwrap(),
                    conn.coeff(d),
                    "connected d={d} p={p}"
                );
            }
        }
    }

    #[test]
    fn h11_connected_equals_prime() {
        let pr = profile("(2),(2)");
        assert_eq!(
            c_connected_series(&pr, -1, 8),
            c_prime_series(&pr, -1, 8)
        );
    }

    #[test]
    fn h11_siegel_veech_closed_form() {
        let pr = profile("(2),(2)");
        let n = 17;
        let c = c_connected_series(&pr, -1, n);
        let mut expected = QmPoly::zero();
        expected.add_term([3, 0, 0], ratio(-10, 3));
        expected.add_term([1, 1, 0], ratio(5, 6));
        expected.add_term([0, 0, 1], ratio(7, 144));
        assert_eq!(c, expected.to_series(n));
        assert_eq!(fit_quasimodular(&c, 6).unwrap(), expected);
        // c° = 5/4 N° termwise
        let ncon = n_connected_series(&pr, n);
        assert_eq!(c, ncon.scale(&ratio(5, 4)));
    }

    #[test]
    fn sv_loop_factors() {
        let g = GlobalGraph::new(1, vec![(0, 0)]);
        let n = 12;
        // m = 0: sum h q^{hw} = sum sigma_1(n) q^n = G2 + 1/24
        assert_eq!(sv_graph_sum_i0(&g, &[0], 0, n), sigma_series(1, n));
        // m = 2: Dq S_0 = dq(sigma_series(1))
        assert_eq!(sv_graph_sum_i0(&g, &[2], 0, n), sigma_series(1, n).dq());
    }

    #[test]
    fn assembled_sv_prime_matches_bracket_route() {
        for (pr, p) in [("(3)", -1), ("(3)", 1), ("(2),(2)", -1)] {
            assemble_sv_prime(&profile(pr), p, 8).unwrap();
        }
    }

    #[test]
    fn h11_marked_graph_sums() {
        // c°((12),(12)) = (1/6)(S1 + S2 + S3) over the marked edges of the
        // triple-edge graph, each marked sum equal to [zeta^0] L P^2
        let g = GlobalGraph::new(2, vec![(0, 1), (0, 1), (0, 1)]);
        let n = 12;
        let c = c_connected_series(&profile("(2),(2)"), -1, n);
        let mut total = QSeries::zero(n);
        for i0 in 0..3 {
            total.add_assign_ref(&sv_graph_sum_i0(&g, &[0, 0, 0], i0, n));
        }
        assert_eq!(total.scale(&ratio(1, 6)), c);
        // single-variable Fourier route: [zeta^0] L(z) P(z)^2
        let l = fourier_expansion(Which::L, n as i64, n);
        let p2 = fourier_expansion(Which::PDeriv(0), n as i64, n).pow(2);
        let lp2 = l.mul(&p2).zeta0();
        assert_eq!(sv_graph_sum_i0(&g, &[0, 0, 0], 0, n), lp2);
        assert_eq!(lp2.scale(&ratio(1, 2)), c);
    }

    #[test]
    fn sv_splitting_identity() {
        // weight additivity over components: for two three-cycles,
        // c' = c° + 2 c°((3)) N°((3))
        let n = 8;
        let p = -1;
        let pr = profile("(3),(3)");
        let single = profile("(3)");
        let lhs = c_prime_series(&pr, p, n);
        let rhs = &c_connected_series(&pr, p, n)
            + &(&c_connected_series(&single, p, n) * &n_connected_series(&single, n))
                .scale(&rat(2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn connected_sv_fits_at_the_claimed_weight() {
        // c°_p is quasimodular of mixed weight <= wt(Pi) + p + 1 for odd p
        use crate::quasimodular::monomials_up_to_weight;
        for (pr, p, w) in [("(3)", -1i32, 4u32), ("(3)", 1, 6), ("(2),(2)", 1, 8)] {
            let order = monomials_up_to_weight(w).len() + 10;
            let c = c_connected_series(&profile(pr), p, order);
            fit_quasimodular(&c, w).unwrap_or_else(|e| panic!("fit {pr} p={p}: {e}"));
        }
    }

    #[test]
    fn sv_constant_term_cross_check() {
        let g = GlobalGraph::new(2, vec![(0, 1), (0, 1), (0, 1)]);
        sv_constant_term(&g, &[0, 0, 0], 0, 9).unwrap();
        sv_constant_term(&g, &[2, 0, 0], 0, 9).unwrap();
        sv_constant_term(&g, &[2, 0, 0], 1, 9).unwrap();
        let tri = GlobalGraph::new(3, vec![(0, 1), (1, 2), (0, 2)]);
        sv_constant_term(&tri, &[0, 0, 0], 1, 9).unwrap();
    }

    #[test]
    fn h11_intermediate_zeta_identities() {
        // [zeta^0] Z^2 P^2 and [zeta^0](P/2 - G2 + 1/12) P^2
        let n = 17;
        let z = fourier_expansion(Which::Z, n as i64, n);
        let p = fourier_expansion(Which::PDeriv(0), n as i64, n);
        let z2p2 = z.pow(2).mul(&p.pow(2)).zeta0();
        let mut expected = QmPoly::zero();
        expected.add_term([3, 0, 0], ratio(16, 3));
        expected.add_term([2, 0, 0], ratio(-2, 3));
        expected.add_term([1, 1, 0], ratio(-8, 3));
        expected.add_term([0, 1, 0], ratio(5, 18));
        expected.add_term([0, 0, 1], ratio(7, 180));
        assert_eq!(fit_quasimodular(&z2p2, 6).unwrap(), expected);

        let g2 = crate::quasimodular::eisenstein_series(2, n).unwrap();
        let shift = &g2.scale(&rat(-1)) + &QSeries::constant(ratio(1, 12), n);
        let half_p_shifted = crate::elliptic::ZetaExpansion::constant(shift, n as i64)
            .add(&p.scale(&ratio(1, 2)));
        let lhs = half_p_shifted.mul(&p.pow(2)).zeta0();
        let mut expected2 = QmPoly::zero();
        expected2.add_term([3, 0, 0], rat(-4));
        expected2.add_term([2, 0, 0], ratio(-1, 3));
        expected2.add_term([1, 1, 0], ratio(1, 3));
        expected2.add_term([0, 1, 0], ratio(5, 36));
        expected2.add_term([0, 0, 1], ratio(7, 60));
        assert_eq!(fit_quasimodular(&lhs, 6).unwrap(), expected2);
    }
}
