//! Polynomial interpolation of completed triple Hurwitz numbers.
//!
//! Abar'(w-, w+, (ell)) restricted to the hyperplane |w-| = |w+| is claimed
//! to be a single even polynomial of degree ell + 1 - m - n across all
//! chamber walls. `ssz_poly_fit` checks this on an integer grid: the last
//! output variable is eliminated through the hyperplane, a polynomial of the
//! claimed degree is fitted exactly, verified on every grid point, and its
//! parity inspected.

use crate::linalg::{self, Solve};
use crate::rational::{rat, rat_pow, Rat};
use crate::triple::abar_prime;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// Polynomial in several variables, exponent vector -> coefficient.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl MultiPoly {
    pub fn new(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Rat) {
        assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, point: &[i64]) -> Rat {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rat::zero();
        for (exps, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(exps) {
                t *= rat_pow(&rat(*x), e as i64);
            }
            acc += t;
        }
        acc
    }

    /// Total degrees present.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|e| e.iter().sum()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Render with the given variable names.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by_key(|e| std::cmp::Reverse((e.iter().sum::<u32>(), (*e).clone())));
        let mut out = String::new();
        for (i, exps) in keys.iter().enumerate() {
            let c = &self.terms[*exps];
            let (neg, abs) = crate::rational::format_rat_signed(c);
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (name, &e) in names.iter().zip(exps.iter()) {
                match e {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() {
                out.push_str(&abs);
            } else if abs == "1" {
                out.push_str(&factors.join("*"));
            } else {
                out.push_str(&format!("{}*{}", abs, factors.join("*")));
            }
        }
        out
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "MultiPoly({})", self.display_with(&names))
    }
}

/// Outcome of the SSZ polynomiality check.
#[derive(Clone, Debug)]
pub enum SszOutcome {
    /// The fitted polynomial in the free variables
    /// (w^-_1..w^-_m, w^+_1..w^+_{n-1}); w^+_n is |w^-| - sum of the listed
    /// w^+. Verified on every grid point; parity as claimed.
    Polynomial(MultiPoly),
    /// ell + 1 - m - n is odd (or negative) and the values vanish identically,
    /// as the parity statement demands.
    IdenticallyZero,
    /// A grid point where the fitted polynomial (or the zero claim) fails.
    Failure { point: (Vec<u32>, Vec<u32>), expected: Rat, actual: Rat },
    /// The fitted polynomial contains monomials of the wrong parity.
    ParityViolation { poly: MultiPoly },
}

/// Exponent vectors in `nvars` variables with total degree <= deg.
fn monomials_up_to(nvars: usize, deg: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..nvars {
        let mut next = Vec::new();
        for base in &out {
            let used: u32 = base.iter().sum();
            for e in 0..=(deg - used) {
                let mut v = base.clone();
                v.push(e);
                next.push(v);
            }
        }
        out = next;
    }
    out.sort_by_key(|e| (e.iter().sum::<u32>(), e.clone()));
    out
}

/// Grid points (w-, w+) in [1..radius]^{m+n} with equal sums.
pub fn ssz_grid(m: usize, n: usize, radius: u32) -> Vec<(Vec<u32>, Vec<u32>)> {
    fn tuples(len: usize, radius: u32) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for _ in 0..len {
            let mut next = Vec::new();
            for base in &out {
                for v in 1..=radius {
                    let mut t = base.clone();
                    t.push(v);
                    next.push(t);
                }
            }
            out = next;
        }
        out
    }
    let minus = tuples(m, radius);
    let plus = tuples(n, radius);
    let mut out = Vec::new();
    for wm in &minus {
        let sm: u32 = wm.iter().sum();
        for wp in &plus {
            if wp.iter().sum::<u32>() == sm {
                out.push((wm.clone(), wp.clone()));
            }
        }
    }
    out
}

/// Fit Abar'(w-, w+, ell) by a polynomial of degree ell + 1 - m - n on the
/// grid [1..radius]^{m+n} restricted to |w-| = |w+|.
pub fn ssz_poly_fit(m: usize, n: usize, ell: u32, radius: u32) -> SszOutcome {
    assert!(m >= 1 && n >= 1 && ell >= 1);
    let grid = ssz_grid(m, n, radius);
    let deg = ell as i64 + 1 - m as i64 - n as i64;

    if deg < 0 || deg % 2 != 0 {
        // parity (or negative degree): the values must vanish outright
        for (wm, wp) in &grid {
            let v = abar_prime(wm, wp, ell);
            if !v.is_zero() {
                return SszOutcome::Failure {
                    point: (wm.clone(), wp.clone()),
                    expected: Rat::zero(),
                    actual: v,
                };
            }
        }
        return SszOutcome::IdenticallyZero;
    }
    let deg = deg as u32;

    // free variables: all of w- and all but the last entry of w+
    let nfree = m + n - 1;
    let monomials = monomials_up_to(nfree, deg);
    let free_point = |wm: &[u32], wp: &[u32]| -> Vec<i64> {
        wm.iter().chain(wp[..n - 1].iter()).map(|&x| x as i64).collect()
    };

    let mut rows = Vec::with_capacity(grid.len());
    let mut rhs = Vec::with_capacity(grid.len());
    for (wm, wp) in &grid {
        let pt = free_point(wm, wp);
        rows.push(
            monomials
                .iter()
                .map(|e| {
                    e.iter()
                        .zip(&pt)
                        .map(|(&ee, &x)| rat_pow(&rat(x), ee as i64))
                        .product::<Rat>()
                })
                .collect::<Vec<Rat>>(),
        );
        rhs.push(abar_prime(wm, wp, ell));
    }

    let coeffs = match linalg::solve(&rows, &rhs) {
        Solve::Candidate(x) => x,
        Solve::RankDeficient => panic!("grid radius {radius} too small for degree {deg}"),
    };
    let mut poly = MultiPoly::new(nfree);
    for (e, c) in monomials.iter().zip(coeffs) {
        poly.add_term(e.clone(), c);
    }

    // verify on every grid point, the fitted ones included
    for (wm, wp) in &grid {
        let actual = abar_prime(wm, wp, ell);
        let predicted = poly.eval(&free_point(wm, wp));
        if predicted != actual {
            return SszOutcome::Failure {
                point: (wm.clone(), wp.clone()),
                expected: predicted,
                actual,
            };
        }
    }

    // evenness: only total degrees congruent to deg mod 2 may appear
    if poly.degrees().iter().any(|&d| d % 2 != deg % 2) {
        return SszOutcome::ParityViolation { poly };
    }
    SszOutcome::Polynomial(poly)
}

/// Variable names for the free variables of `ssz_poly_fit(m, n, ..)`.
pub fn ssz_var_names(m: usize, n: usize) -> Vec<String> {
    let mut names: Vec<String> = (1..=m).map(|i| format!("u{i}")).collect();
    names.extend((1..n).map(|i| format!("v{i}")));
    names
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn diagonal_cycle_case() {
        // m = n = 1, ell = 3: w^2/6 - 1/12 on the diagonal
        match ssz_poly_fit(1, 1, 3, 6) {
            SszOutcome::Polynomial(p) => {
                assert_eq!(p.eval(&[1]), ratio(1, 6) - ratio(1, 12));
                let mut expected = MultiPoly::new(1);
                expected.add_term(vec![2], ratio(1, 6));
                expected.add_term(vec![0], ratio(-1, 12));
                assert_eq!(p, expected);
            }
            other => panic!("expected polynomial, got {other:?}"),
        }
    }

    #[test]
    fn constant_transposition_vertex() {
        // m = 1, n = 2, ell = 2: the constant polynomial 1
        match ssz_poly_fit(1, 2, 2, 6) {
            SszOutcome::Polynomial(p) => {
                let mut expected = MultiPoly::new(2);
                expected.add_term(vec![0, 0], rat(1));
                assert_eq!(p, expected);
            }
            other => panic!("expected polynomial, got {other:?}"),
        }
    }

    #[test]
    fn odd_parity_is_identically_zero() {
        // m = n = 1, ell = 2: degree would be 1, odd
        assert!(matches!(ssz_poly_fit(1, 1, 2, 6), SszOutcome::IdenticallyZero));
    }

    #[test]
    fn global_polynomiality_with_walls() {
        // m = 1, n = 2, ell = 4 and m = n = 2, ell = 5 cross chamber walls
        assert!(matches!(ssz_poly_fit(1, 2, 4, 6), SszOutcome::Polynomial(_)));
        assert!(matches!(ssz_poly_fit(2, 2, 5, 6), SszOutcome::Polynomial(_)));
    }
}
