//! Eisenstein series and the graded ring Q[G2, G4, G6].
//!
//! `QmPoly` is an exact polynomial in the three generators, graded by
//! weight(G2^a G4^b G6^c) = 2a + 4b + 6c. `fit_quasimodular` recognizes a
//! truncated q-expansion as such a polynomial by exact linear algebra; every
//! available coefficient is an equation, and the fit succeeds only when all
//! of them are reproduced.

use crate::error::{Error, Result};
use crate::linalg::{self, Solve};
use crate::rational::{binomial, rat, rat_big, ratio, Rat};
use crate::series::QSeries;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::{LazyLock, Mutex};

static BERNOULLI_CACHE: LazyLock<Mutex<Vec<Rat>>> = LazyLock::new(|| Mutex::new(vec![Rat::one()]));

/// Bernoulli number B_n with the convention B_1 = -1/2.
pub fn bernoulli(n: u32) -> Rat {
    let mut cache = BERNOULLI_CACHE.lock().unwrap();
    while cache.len() <= n as usize {
        let m = cache.len();
        // sum_{k=0}^{m} C(m+1, k) B_k = 0
        let mut acc = Rat::zero();
        for (k, b) in cache.iter().enumerate() {
            acc += rat_big(binomial(m + 1, k)) * b;
        }
        let next = -acc / rat_big(binomial(m + 1, m));
        cache.push(next);
    }
    cache[n as usize].clone()
}

/// sum_{n>=1} sigma_m(n) q^n, the divisor-power sum series (constant term 0).
pub fn sigma_series(m: u32, order: usize) -> QSeries {
    let mut coeffs = vec![Rat::zero(); order + 1];
    for w in 1..=order {
        let wp = num_traits::pow::pow(rat(w as i64), m as usize);
        let mut n = w;
        while n <= order {
            coeffs[n] += &wp;
            n += w;
        }
    }
    QSeries::from_coeffs(coeffs)
}

/// Eisenstein series G_k = -B_k/(2k) + sum sigma_{k-1}(n) q^n, k even >= 2.
pub fn eisenstein_series(k: u32, order: usize) -> Result<QSeries> {
    if k < 2 || k % 2 != 0 {
        return Err(Error::BadEisensteinWeight(k as i64));
    }
    let mut s = sigma_series(k - 1, order);
    s.set_coeff(0, -bernoulli(k) / rat(2 * k as i64));
    Ok(s)
}

/// Exponent triple (a, b, c) for G2^a G4^b G6^c.
pub type Monomial = [u32; 3];

pub fn monomial_weight(m: &Monomial) -> u32 {
    2 * m[0] + 4 * m[1] + 6 * m[2]
}

/// All exponent triples of weight <= max_weight, ordered by (weight, a, b, c).
pub fn monomials_up_to_weight(max_weight: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for a in 0..=max_weight / 2 {
        for b in 0..=(max_weight.saturating_sub(2 * a)) / 4 {
            for c in 0..=(max_weight.saturating_sub(2 * a + 4 * b)) / 6 {
                out.push([a, b, c]);
            }
        }
    }
    out.sort_by_key(|m| (monomial_weight(m), m[0], m[1], m[2]));
    out
}

/// An exact polynomial in G2, G4, G6. No zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct QmPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl QmPoly {
    pub fn zero() -> Self {
        QmPoly::default()
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = QmPoly::default();
        p.add_term([0, 0, 0], c);
        p
    }

    pub fn gen_g2() -> Self {
        Self::monomial([1, 0, 0], Rat::one())
    }

    pub fn gen_g4() -> Self {
        Self::monomial([0, 1, 0], Rat::one())
    }

    pub fn gen_g6() -> Self {
        Self::monomial([0, 0, 1], Rat::one())
    }

    pub fn monomial(m: Monomial, c: Rat) -> Self {
        let mut p = QmPoly::default();
        p.add_term(m, c);
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Largest weight among the monomials present (zero polynomial: 0).
    pub fn max_weight(&self) -> u32 {
        self.terms.keys().map(monomial_weight).max().unwrap_or(0)
    }

    /// The set of weights present (the "mixed weight").
    pub fn weights(&self) -> Vec<u32> {
        let mut w: Vec<u32> = self.terms.keys().map(monomial_weight).collect();
        w.sort_unstable();
        w.dedup();
        w
    }

    /// The part of the polynomial of exactly the given weight.
    pub fn weight_part(&self, w: u32) -> QmPoly {
        QmPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| monomial_weight(m) == w)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &QmPoly) -> QmPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &QmPoly) -> QmPoly {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, c: &Rat) -> QmPoly {
        if c.is_zero() {
            return QmPoly::zero();
        }
        QmPoly { terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    pub fn mul(&self, other: &QmPoly) -> QmPoly {
        let mut out = QmPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term([m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2]], c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> QmPoly {
        let mut acc = QmPoly::constant(Rat::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// q d/dq as a derivation on the ring, via
    /// DqG2 = 5/6 G4 - 2 G2^2, DqG4 = 7/10 G6 - 8 G2 G4,
    /// DqG6 = 400/7 G4^2 - 12 G2 G6 (the ring is stable under Dq).
    pub fn dq(&self) -> QmPoly {
        let dg: [QmPoly; 3] = [
            QmPoly::monomial([0, 1, 0], ratio(5, 6)).add(&QmPoly::monomial([2, 0, 0], rat(-2))),
            QmPoly::monomial([0, 0, 1], ratio(7, 10)).add(&QmPoly::monomial([1, 1, 0], rat(-8))),
            QmPoly::monomial([0, 2, 0], ratio(400, 7)).add(&QmPoly::monomial([1, 0, 1], rat(-12))),
        ];
        let mut out = QmPoly::zero();
        for (m, c) in &self.terms {
            for i in 0..3 {
                if m[i] == 0 {
                    continue;
                }
                let mut lower = *m;
                lower[i] -= 1;
                let partial = QmPoly::monomial(lower, c * rat(m[i] as i64));
                out = out.add(&partial.mul(&dg[i]));
            }
        }
        out
    }

    /// Evaluation homomorphism: substitute the Eisenstein q-expansions.
    pub fn to_series(&self, order: usize) -> QSeries {
        let g = [
            eisenstein_series(2, order).unwrap(),
            eisenstein_series(4, order).unwrap(),
            eisenstein_series(6, order).unwrap(),
        ];
        // cache generator powers up to the needed exponents
        let max_exp =
            |i: usize| self.terms.keys().map(|m| m[i] as usize).max().unwrap_or(0);
        let pows: Vec<Vec<QSeries>> = (0..3)
            .map(|i| {
                let mut v = vec![QSeries::one(order)];
                for e in 1..=max_exp(i) {
                    let next = &v[e - 1] * &g[i];
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = QSeries::zero(order);
        for (m, c) in &self.terms {
            let t = &(&pows[0][m[0] as usize] * &pows[1][m[1] as usize]) * &pows[2][m[2] as usize];
            acc = &acc + &t.scale(c);
        }
        acc
    }
}

impl fmt::Display for QmPoly {
    /// Mathematical ordering: descending (weight, a, b, c).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Monomial> = self.terms.keys().collect();
        keys.sort_by_key(|m| std::cmp::Reverse((monomial_weight(m), m[0], m[1], m[2])));
        for (i, m) in keys.iter().enumerate() {
            let c = &self.terms[*m];
            let (neg, abs) = crate::rational::format_rat_signed(c);
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (gi, name) in ["G2", "G4", "G6"].iter().enumerate() {
                match m[gi] {
                    0 => {}
                    1 => factors.push((*name).to_string()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs == "1" {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QmPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QmPoly({self})")
    }
}

/// Recognize a truncated q-expansion as a polynomial in G2, G4, G6 of weight
/// <= max_weight. Every coefficient of `s` becomes an equation; the fit
/// succeeds only if all of them are reproduced exactly.
pub fn fit_quasimodular(s: &QSeries, max_weight: u32) -> Result<QmPoly> {
    let monomials = monomials_up_to_weight(max_weight);
    let dim = monomials.len();
    let n_eq = s.order() + 1;
    if n_eq <= dim {
        return Err(Error::UnderDetermined { unknowns: dim, equations: n_eq });
    }
    let order = s.order();
    let g = [
        eisenstein_series(2, order).unwrap(),
        eisenstein_series(4, order).unwrap(),
        eisenstein_series(6, order).unwrap(),
    ];
    let max_exp = |i: usize| monomials.iter().map(|m| m[i] as usize).max().unwrap_or(0);
    let pows: Vec<Vec<QSeries>> = (0..3)
        .map(|i| {
            let mut v = vec![QSeries::one(order)];
            for e in 1..=max_exp(i) {
                let next = &v[e - 1] * &g[i];
                v.push(next);
            }
            v
        })
        .collect();
    let columns: Vec<QSeries> = monomials
        .iter()
        .map(|m| &(&pows[0][m[0] as usize] * &pows[1][m[1] as usize]) * &pows[2][m[2] as usize])
        .collect();

    let rows: Vec<Vec<Rat>> =
        (0..n_eq).map(|n| columns.iter().map(|col| col.coeff(n)).collect()).collect();
    let rhs: Vec<Rat> = (0..n_eq).map(|n| s.coeff(n)).collect();

    let x = match linalg::solve(&rows, &rhs) {
        Solve::Candidate(x) => x,
        Solve::RankDeficient => {
            return Err(Error::UnderDetermined { unknowns: dim, equations: n_eq })
        }
    };

    let mut poly = QmPoly::zero();
    for (m, c) in monomials.iter().zip(&x) {
        poly.add_term(*m, c.clone());
    }
    // over-determination check: the candidate must reproduce every coefficient
    let check = poly.to_series(order);
    if let Some(n) = check.first_difference(s) {
        return Err(Error::FitMismatch { max_weight, first_mismatch: n });
    }
    Ok(poly)
}

/// Parse a monomial-coefficient list built by the CLI back into a polynomial.
pub fn qmpoly_from_terms(terms: Vec<(Monomial, Rat)>) -> QmPoly {
    let mut p = QmPoly::zero();
    for (m, c) in terms {
        p.add_term(m, c);
    }
    p
}
