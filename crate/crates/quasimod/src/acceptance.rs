//! The acceptance suite: every shipped claim, checked end to end at exact
//! equality. `run_all` powers both the `acceptance` integration test and the
//! CLI `selftest` subcommand.

use crate::elliptic::{
    constant_term_graph, constant_term_product, fourier_expansion, fourier_z_power_zeta0,
    zeta0_z_power, CtFactor, CtKind, Which, ZetaExpansion,
};
use crate::graphs::{assemble_total, graph_series_nprime, GlobalGraph};
use crate::hurwitz::{count_series, n_connected_series, n_prime_series, Variant};
use crate::oracle::{brute_force_n, brute_force_sv};
use crate::partition::{partitions_of, Partition, Profile};
use crate::polyfit::{ssz_poly_fit, SszOutcome};
use crate::quasimodular::{fit_quasimodular, monomials_up_to_weight, sigma_series, QmPoly};
use crate::rational::{rat, ratio, Rat};
use crate::series::QSeries;
use crate::shifted::{f_mu, p_ell_big, q_bracket};
use crate::sv::{c_connected_series, c_series, sv_graph_sum_i0};
use crate::triple::abar_prime;
use num_bigint::BigInt;
use num_traits::Zero;
use std::time::Instant;

#[derive(Clone, Debug)]
pub struct Criterion {
    pub name: String,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
}

const ORACLE_BUDGET: u128 = 100_000_000;

fn run<F>(name: &str, f: F) -> Criterion
where
    F: FnOnce() -> Result<String, String>,
{
    let start = Instant::now();
    let outcome = f();
    let seconds = start.elapsed().as_secs_f64();
    match outcome {
        Ok(detail) => Criterion { name: name.into(), pass: true, detail, seconds },
        Err(detail) => Criterion { name: name.into(), pass: false, detail, seconds },
    }
}

fn ensure(cond: bool, msg: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

fn ensure_series_eq(actual: &QSeries, expected: &QSeries, what: &str) -> Result<(), String> {
    match actual.first_difference(expected) {
        None => Ok(()),
        Some(n) => Err(format!(
            "{what}: first difference at q^{n}: got {}, want {}",
            crate::rational::format_rat(&actual.coeff(n)),
            crate::rational::format_rat(&expected.coeff(n))
        )),
    }
}

fn qm(terms: &[(u32, u32, u32, i64, i64)]) -> QmPoly {
    let mut p = QmPoly::zero();
    for &(a, b, c, num, den) in terms {
        p.add_term([a, b, c], ratio(num, den));
    }
    p
}

fn int_series(prefix_zeros: usize, values: &[i64], order: usize) -> QSeries {
    let mut coeffs = vec![Rat::zero(); order + 1];
    for (i, &v) in values.iter().enumerate() {
        coeffs[prefix_zeros + i] = rat(v);
    }
    QSeries::from_coeffs(coeffs)
}

fn profile(s: &str) -> Profile {
    Profile::parse(s).unwrap()
}

/// Criterion 1: H(1,1) counting series and its closed form.
pub fn criterion_1() -> Criterion {
    run("1: N°((2),(2)) series and weight-6 fit", || {
        let pr = profile("(2),(2)");
        let golden = int_series(2, &[2, 16, 60, 160, 360, 672, 1240], 8);
        ensure_series_eq(&n_connected_series(&pr, 8), &golden, "N° to order 8")?;
        let fitted = fit_quasimodular(&n_connected_series(&pr, 17), 6)
            .map_err(|e| format!("fit failed: {e}"))?;
        let expected = qm(&[(3, 0, 0, -8, 3), (1, 1, 0, 2, 3), (0, 0, 1, 7, 180)]);
        ensure(fitted == expected, &format!("fit: got {fitted}, want {expected}"))?;
        Ok(format!("N°((2),(2)) = {expected}"))
    })
}

/// Criterion 2: H(2) fit and the graph decomposition with exact S_2
/// cancellation between the one-loop and two-loop graphs.
pub fn criterion_2() -> Criterion {
    run("2: N°((3)) fit and per-graph S-form decomposition", || {
        let pr = profile("(3)");
        let n = 14;
        let series = n_connected_series(&pr, n);
        // non-constant part: zero out q^0 and fit at weight wt(Pi) = 4
        let mut nonconst = series.clone();
        nonconst.set_coeff(0, Rat::zero());
        let fitted = fit_quasimodular(&nonconst, 4).map_err(|e| format!("fit failed: {e}"))?;
        let mut fitted_nc = fitted.clone();
        let c0 = fitted.coeff(&[0, 0, 0]);
        fitted_nc.add_term([0, 0, 0], -c0);
        let expected_nc = qm(&[(2, 0, 0, 3, 2), (0, 1, 0, -1, 4), (1, 0, 0, 3, 8)]);
        ensure(
            fitted_nc == expected_nc,
            &format!("non-constant fit: got {fitted_nc}, want {expected_nc}"),
        )?;

        // graph-decomposed path
        let s1 = sigma_series(1, n);
        let s2 = sigma_series(2, n);
        let s3 = sigma_series(3, n);
        let one_loop = GlobalGraph::new(1, vec![(0, 0)]);
        let two_loop = GlobalGraph::new(1, vec![(0, 0), (0, 0)]);
        let c1 = graph_series_nprime(&one_loop, &pr, n);
        let c2 = graph_series_nprime(&two_loop, &pr, n).scale(&ratio(1, 2));
        let c1_expected =
            &(&s3.scale(&ratio(1, 6)) - &s2.scale(&ratio(1, 2))) + &s1.scale(&ratio(1, 3));
        ensure_series_eq(&c1, &c1_expected, "one-loop contribution 1/6 S3 - 1/2 S2 + 1/3 S1")?;
        let c2_expected = &(&(&s1 * &s1) - &s1.dq()) + &s2;
        ensure_series_eq(&c2, &c2_expected.scale(&ratio(1, 2)), "two-loop (S1^2 - DqS1 + S2)/2")?;
        let total = &c1 + &c2;
        ensure_series_eq(&total, &n_prime_series(&pr, n), "graph total = Burnside N'")?;
        // the S2 terms cancel: the total equals the S2-free combination
        let s2_free = &(&s3.scale(&ratio(1, 6)) + &s1.scale(&ratio(1, 3)))
            + &(&(&s1 * &s1) - &s1.dq()).scale(&ratio(1, 2));
        ensure_series_eq(&total, &s2_free, "S2 terms cancel between the two graphs")?;
        Ok(format!("N°((3)) - const = {expected_nc}"))
    })
}

fn h1111_graph_a() -> GlobalGraph {
    GlobalGraph::new(4, vec![(0, 1), (0, 1), (0, 3), (1, 2), (2, 3), (2, 3)])
}

fn h1111_graph_b() -> GlobalGraph {
    GlobalGraph::new(4, vec![(0, 2), (0, 2), (0, 1), (1, 3), (1, 3), (2, 3)])
}

fn k4_graph() -> GlobalGraph {
    GlobalGraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
}

fn extract_only(g: &GlobalGraph, order: usize) -> QSeries {
    let factors: Vec<CtFactor> = g
        .edges()
        .iter()
        .map(|&(a, b)| CtFactor { a, b, kind: CtKind::PDeriv(0) })
        .collect();
    constant_term_product(g.n_vertices(), &factors, order)
}

/// Criterion 3: the H(1^4) per-graph values, their mixed-weight closed forms,
/// and the assembled connected count.
pub fn criterion_3() -> Criterion {
    run("3: H(1^4) per-graph series, fits, and assembled N°", || {
        let high = 33; // enough coefficients to pin a weight-12 fit
        let (ga, gb, gc) = (h1111_graph_a(), h1111_graph_b(), k4_graph());
        // order-8 values with the built-in direct-path cross-check
        let m6 = vec![0u32; 6];
        let a8 = constant_term_graph(&ga, &m6, 8).map_err(|e| e.to_string())?;
        let b8 = constant_term_graph(&gb, &m6, 8).map_err(|e| e.to_string())?;
        let golden_a = int_series(2, &[4, 224, 3088, 21888, 105136, 388288, 1197280], 8);
        let golden_b = int_series(4, &[40, 448, 2848, 11776, 41744], 8);
        ensure_series_eq(&a8, &golden_a, "series A to order 8")?;
        ensure_series_eq(&b8, &golden_b, "series B to order 8")?;

        // high-order extraction for the fits
        let (a33, (b33, c33)) = rayon::join(
            || extract_only(&ga, high),
            || rayon::join(|| extract_only(&gb, high), || extract_only(&gc, high)),
        );
        ensure_series_eq(&a33.truncate(8), &a8, "A extraction consistent across orders")?;
        ensure_series_eq(&b33.truncate(8), &b8, "B extraction consistent across orders")?;

        let weight12 = qm(&[
            (6, 0, 0, -256, 1),
            (4, 1, 0, 640, 3),
            (3, 0, 1, 112, 9),
            (2, 2, 0, -400, 9),
            (1, 1, 1, -140, 9),
            (0, 3, 0, 2000, 81),
            (0, 0, 2, 49, 108),
        ]);
        let a_weight10 = qm(&[
            (3, 1, 0, -256, 3),
            (2, 0, 1, -16, 5),
            (1, 2, 0, 320, 21),
            (0, 1, 1, 28, 9),
        ]);
        let expected_a = weight12.add(&a_weight10);
        let expected_b = weight12.add(&a_weight10.scale(&ratio(-1, 2)));
        let expected_c = qm(&[
            (6, 0, 0, -384, 1),
            (4, 1, 0, 480, 1),
            (2, 2, 0, -200, 1),
            (0, 3, 0, 250, 9),
        ]);
        let fit_a = fit_quasimodular(&a33, 12).map_err(|e| format!("fit A: {e}"))?;
        let fit_b = fit_quasimodular(&b33, 12).map_err(|e| format!("fit B: {e}"))?;
        let fit_c = fit_quasimodular(&c33, 12).map_err(|e| format!("fit C: {e}"))?;
        ensure(fit_a == expected_a, &format!("fit A: got {fit_a}"))?;
        ensure(fit_b == expected_b, &format!("fit B: got {fit_b}"))?;
        ensure(fit_c == expected_c, &format!("fit C: got {fit_c}"))?;
        ensure(
            fit_a.weight_part(12) == fit_b.weight_part(12),
            "weight-12 parts of A and B coincide",
        )?;
        ensure(
            fit_a.weight_part(10) == fit_b.weight_part(10).scale(&rat(-2)),
            "weight-10 part of A equals -2 times that of B",
        )?;

        // (1/4)(2A + 4B) + C = N°((2),(2),(2),(2))
        let combo = &(&a8.scale(&ratio(1, 2)) + &b8) + &constant_term_graph(&gc, &m6, 8)
            .map_err(|e| e.to_string())?;
        let golden_total = int_series(2, &[2, 160, 2448, 18304, 90552, 341568, 1068928], 8);
        ensure_series_eq(&combo, &golden_total, "(1/4)(2A+4B)+C to order 8")?;
        let pr = profile("(2),(2),(2),(2)");
        ensure_series_eq(&combo, &n_connected_series(&pr, 8), "combo equals N° to order 8")?;

        // and the assembled closed form matches a direct fit of N°
        let total_poly = fit_a.scale(&ratio(1, 2)).add(&fit_b).add(&fit_c);
        let n_fit = fit_quasimodular(&n_connected_series(&pr, high), 12)
            .map_err(|e| format!("fit N°: {e}"))?;
        ensure(
            n_fit == total_poly,
            &format!("N° closed form: got {n_fit}, want {total_poly}"),
        )?;
        Ok(format!("N°((2)^4) = {n_fit}"))
    })
}

/// Criterion 4: Siegel-Veech for H(1,1).
pub fn criterion_4() -> Criterion {
    run("4: c°_{-1}((2),(2)) closed form and zeta identities", || {
        let pr = profile("(2),(2)");
        let n = 17;
        let c = c_connected_series(&pr, -1, n);
        let expected = qm(&[(3, 0, 0, -10, 3), (1, 1, 0, 5, 6), (0, 0, 1, 7, 144)]);
        let fitted = fit_quasimodular(&c, 6).map_err(|e| format!("fit c°: {e}"))?;
        ensure(fitted == expected, &format!("c° fit: got {fitted}, want {expected}"))?;
        ensure_series_eq(
            &c,
            &n_connected_series(&pr, n).scale(&ratio(5, 4)),
            "c° = 5/4 N° termwise",
        )?;

        let z = fourier_expansion(Which::Z, n as i64, n);
        let p = fourier_expansion(Which::PDeriv(0), n as i64, n);
        let z2p2 = z.pow(2).mul(&p.pow(2)).zeta0();
        let expected_z2p2 = qm(&[
            (3, 0, 0, 16, 3),
            (2, 0, 0, -2, 3),
            (1, 1, 0, -8, 3),
            (0, 1, 0, 5, 18),
            (0, 0, 1, 7, 180),
        ]);
        ensure_series_eq(&z2p2, &expected_z2p2.to_series(n), "[zeta^0] Z^2 P^2")?;

        let g2 = crate::quasimodular::eisenstein_series(2, n).unwrap();
        let shift = &QSeries::constant(ratio(1, 12), n) - &g2;
        let half_p = ZetaExpansion::constant(shift, n as i64).add(&p.scale(&ratio(1, 2)));
        let second = half_p.mul(&p.pow(2)).zeta0();
        let expected_second = qm(&[
            (3, 0, 0, -4, 1),
            (2, 0, 0, -1, 3),
            (1, 1, 0, 1, 3),
            (0, 1, 0, 5, 36),
            (0, 0, 1, 7, 60),
        ]);
        ensure_series_eq(&second, &expected_second.to_series(n), "[zeta^0](P/2 - G2 + 1/12) P^2")?;

        // the marked-edge graph sums reproduce c° through 1/2 [zeta^0] L P^2
        let tri = GlobalGraph::new(2, vec![(0, 1), (0, 1), (0, 1)]);
        let mut marked = QSeries::zero(n);
        for i0 in 0..3 {
            marked.add_assign_ref(&sv_graph_sum_i0(&tri, &[0, 0, 0], i0, n));
        }
        ensure_series_eq(&marked.scale(&ratio(1, 6)), &c, "c° from the marked graph sums")?;
        Ok(format!("c°((2),(2)) = {expected}"))
    })
}

/// Criterion 5: constant terms of Z powers, both routes.
pub fn criterion_5() -> Criterion {
    run("5: [zeta^0] Z^e closed forms, e = 1..6", || {
        let expected: Vec<QmPoly> = vec![
            qm(&[(0, 0, 0, 1, 2)]),
            qm(&[(1, 0, 0, -2, 1), (0, 0, 0, 1, 6)]),
            qm(&[(1, 0, 0, -3, 1)]),
            qm(&[(2, 0, 0, 8, 1), (0, 1, 0, -1, 3), (1, 0, 0, -2, 1), (0, 0, 0, -1, 30)]),
            qm(&[(2, 0, 0, 20, 1), (0, 1, 0, -5, 6)]),
            qm(&[
                (0, 0, 1, -1, 60),
                (1, 1, 0, 4, 1),
                (3, 0, 0, -40, 1),
                (2, 0, 0, 20, 1),
                (0, 1, 0, -5, 6),
                (1, 0, 0, 1, 1),
                (0, 0, 0, 1, 42),
            ]),
        ];
        let n = 17;
        for (e, want) in (1u32..=6).zip(&expected) {
            // symbolic route (with its built-in Fourier cross-check)
            let sym = zeta0_z_power(e, n).map_err(|err| format!("e={e}: {err}"))?;
            ensure(&sym == want, &format!("e={e} symbolic: got {sym}, want {want}"))?;
            // independent Fourier-side extraction + fitting
            let fitted = fit_quasimodular(&fourier_z_power_zeta0(e, n), e)
                .map_err(|err| format!("e={e} fit: {err}"))?;
            ensure(&fitted == want, &format!("e={e} fitted: got {fitted}"))?;
        }
        Ok("six closed forms reproduced on both routes".into())
    })
}

/// Criterion 6: brute-force oracle equivalence.
pub fn criterion_6() -> Criterion {
    run("6: monodromy oracle matches the character formulas", || {
        let pr3 = profile("(3)");
        for variant in [Variant::All, Variant::Prime, Variant::Connected] {
            let series = count_series(&pr3, 6, variant);
            for d in 0..=6 {
                let brute = brute_force_n(&pr3, d, variant, ORACLE_BUDGET)
                    .map_err(|e| e.to_string())?;
                ensure(
                    brute == series.coeff(d),
                    &format!("(3) {variant:?} d={d}: oracle {brute} vs series"),
                )?;
            }
        }
        let pr22 = profile("(2),(2)");
        for variant in [Variant::All, Variant::Prime, Variant::Connected] {
            let series = count_series(&pr22, 5, variant);
            for d in 0..=5 {
                let brute = brute_force_n(&pr22, d, variant, ORACLE_BUDGET)
                    .map_err(|e| e.to_string())?;
                ensure(
                    brute == series.coeff(d),
                    &format!("(2),(2) {variant:?} d={d}: oracle {brute} vs series"),
                )?;
            }
        }
        for p in [-1, 1] {
            let series = c_series(&pr22, p, 4);
            for d in 0..=4 {
                let brute = brute_force_sv(&pr22, d, p, Variant::All, ORACLE_BUDGET)
                    .map_err(|e| e.to_string())?;
                ensure(
                    brute == series.coeff(d),
                    &format!("SV p={p} d={d}: oracle {brute} vs c_series"),
                )?;
            }
        }
        Ok("oracle agrees on (3) d<=6, (2),(2) d<=5, SV d<=4".into())
    })
}

/// Criterion 7: path equivalence between constant terms and lattice sums,
/// and between graph assembly and the Burnside route.
pub fn criterion_7() -> Criterion {
    run("7: constant-term/graph-sum and assembly/Burnside equivalences", || {
        let test_graphs: Vec<(GlobalGraph, Vec<u32>)> = vec![
            (GlobalGraph::new(2, vec![(0, 1)]), vec![0]),
            (GlobalGraph::new(2, vec![(0, 1), (0, 1)]), vec![0, 0]),
            (GlobalGraph::new(2, vec![(0, 1), (0, 1)]), vec![2, 0]),
            (GlobalGraph::new(2, vec![(0, 1), (0, 1), (0, 1)]), vec![0, 0, 0]),
            (GlobalGraph::new(3, vec![(0, 1), (1, 2)]), vec![0, 0]),
            (GlobalGraph::new(3, vec![(0, 1), (1, 2), (0, 2)]), vec![0, 0, 0]),
            (GlobalGraph::new(3, vec![(0, 1), (0, 1), (1, 2), (1, 2)]), vec![0, 0, 0, 0]),
            (GlobalGraph::new(4, vec![(0, 1), (1, 2), (2, 3), (0, 3)]), vec![0, 0, 0, 0]),
            (GlobalGraph::new(4, vec![(0, 1), (1, 2), (2, 3)]), vec![0, 2, 0]),
            (h1111_graph_a(), vec![0, 0, 0, 0, 0, 0]),
            (h1111_graph_b(), vec![0, 0, 0, 0, 0, 0]),
            (k4_graph(), vec![0, 0, 0, 0, 0, 0]),
        ];
        for (g, m) in &test_graphs {
            constant_term_graph(g, m, 8).map_err(|e| format!("graph {g}: {e}"))?;
        }
        for pr in ["(3)", "(4)", "(2),(2)", "(2,2)", "(2),(2),(2),(2)"] {
            assemble_total(&profile(pr), 8).map_err(|e| e.to_string())?;
        }
        Ok(format!("{} graphs and 5 profiles cross-checked at order 8", test_graphs.len()))
    })
}

/// Criterion 8: the property suites.
pub fn criterion_8() -> Criterion {
    run("8: property suites", || {
        // character orthogonality, d <= 7
        for d in 1..=7usize {
            let classes = partitions_of(d);
            for sigma in &classes {
                for tau in &classes {
                    let mut acc = BigInt::zero();
                    for lam in partitions_of(d) {
                        acc += crate::character::char_value(&lam, sigma).unwrap()
                            * crate::character::char_value(&lam, tau).unwrap();
                    }
                    let expected = if sigma == tau {
                        crate::rational::factorial(d) / crate::partition::class_size(sigma, d)
                    } else {
                        BigInt::zero()
                    };
                    ensure(acc == expected, &format!("orthogonality d={d} {sigma} {tau}"))?;
                }
            }
        }

        // f3/f4/f5 conversion identities, |lambda| <= 8
        for d in 0..=8usize {
            for lam in partitions_of(d) {
                let p1 = p_ell_big(1, &lam);
                let p2 = p_ell_big(2, &lam);
                let p3 = p_ell_big(3, &lam);
                let p4 = p_ell_big(4, &lam);
                let p5 = p_ell_big(5, &lam);
                let f3 = ratio(1, 3) * &p3 - ratio(1, 2) * &p1 * &p1 + ratio(5, 12) * &p1;
                let f4 = ratio(1, 4) * &p4 - &p1 * &p2 + ratio(11, 8) * &p2;
                let f5 = ratio(1, 5) * &p5 - &p3 * &p1 - ratio(1, 2) * &p2 * &p2
                    + ratio(5, 6) * &p1 * &p1 * &p1
                    - ratio(15, 4) * &p1 * &p1
                    + ratio(19, 6) * &p3
                    + ratio(189, 80) * &p1;
                ensure(f_mu(&Partition::new(vec![3]), &lam) == f3, &format!("f3 at {lam}"))?;
                ensure(f_mu(&Partition::new(vec![4]), &lam) == f4, &format!("f4 at {lam}"))?;
                ensure(f_mu(&Partition::new(vec![5]), &lam) == f5, &format!("f5 at {lam}"))?;
            }
        }

        // SSZ global polynomiality and evenness
        for (m, n, ell) in [(1usize, 1usize, 3u32), (1, 2, 2), (1, 2, 4), (2, 2, 5)] {
            match ssz_poly_fit(m, n, ell, 6) {
                SszOutcome::Polynomial(_) => {}
                other => return Err(format!("ssz({m},{n},{ell}): {other:?}")),
            }
        }
        // parity vanishing of Abar'
        for ell in 1..=5u32 {
            for (wm, wp) in [(vec![2u32], vec![2u32]), (vec![1, 2], vec![3]), (vec![2, 2], vec![1, 3])] {
                if (ell as usize + 1 + wm.len() + wp.len()) % 2 == 1 {
                    ensure(
                        abar_prime(&wm, &wp, ell).is_zero(),
                        &format!("parity vanishing ell={ell} {wm:?} {wp:?}"),
                    )?;
                }
            }
        }

        // Leibniz rule for dq
        let a = sigma_series(1, 10);
        let b = crate::series::partition_gf(10);
        ensure(
            (&a * &b).dq() == &(&a.dq() * &b) + &(&a * &b.dq()),
            "Leibniz rule for dq",
        )?;

        // fit round-trip at weight 12 on a deterministic dense polynomial
        let monomials = monomials_up_to_weight(12);
        let mut poly = QmPoly::zero();
        for (i, m) in monomials.iter().enumerate() {
            poly.add_term(*m, ratio(i as i64 + 1, 7) - ratio((i as i64 * 3) % 11, 5));
        }
        let n_ord = monomials.len() + 10;
        let refit = fit_quasimodular(&poly.to_series(n_ord), 12).map_err(|e| e.to_string())?;
        ensure(refit == poly, "fit round-trip at weight 12")?;

        // the q-bracket of p_2 vanishes (a single simple branch point is
        // impossible), so its weight-3 fit is the zero polynomial
        let bracket = q_bracket(|lam| crate::shifted::p_ell_small(2, lam), 20);
        ensure(bracket.is_zero(), "<p_2> = 0")?;
        Ok("orthogonality, conversions, SSZ, parity, Leibniz, fit round-trip".into())
    })
}

/// The full suite in order.
pub fn run_all() -> Vec<Criterion> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
    ]
}
