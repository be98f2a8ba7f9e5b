//! Fourier and Laurent expansions of the functions Z, P, L, and nested
//! constant-term extraction.
//!
//! On the ordered domain |q zeta_{i+1}| < |zeta_i| < |zeta_{i+1}| < 1 the
//! constant term of a product of propagator factors P^{(m)}(z_a - z_b)
//! equals the corresponding graph sum. The extraction here walks the
//! variables in label order carrying a state of exposed zeta-monomials with
//! q-series weights; per-edge height sums are folded in closed form.

use crate::error::{Error, Result};
use crate::graphs::{graph_sum_s, GlobalGraph};
use crate::quasimodular::QmPoly;
use crate::rational::{binomial, rat, rat_big, rat_pow, ratio, Rat};
use crate::series::QSeries;
use num_traits::One;
use std::collections::{BTreeMap, HashMap};

// ---------------------------------------------------------------------------
// single-variable Fourier expansions

/// Which special function to expand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    Z,
    /// m-th derivative of the propagator P (m = 0 is P itself).
    PDeriv(u32),
    L,
}

/// Laurent-style expansion in one zeta variable: exponent -> q-series,
/// retained for |exponent| <= zeta_order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZetaExpansion {
    coeffs: BTreeMap<i64, QSeries>,
    zeta_order: i64,
    q_order: usize,
}

impl ZetaExpansion {
    pub fn zero(zeta_order: i64, q_order: usize) -> Self {
        ZetaExpansion { coeffs: BTreeMap::new(), zeta_order, q_order }
    }

    pub fn constant(s: QSeries, zeta_order: i64) -> Self {
        let q_order = s.order();
        let mut e = ZetaExpansion::zero(zeta_order, q_order);
        e.coeffs.insert(0, s);
        e
    }

    pub fn zeta_order(&self) -> i64 {
        self.zeta_order
    }

    pub fn q_order(&self) -> usize {
        self.q_order
    }

    /// Coefficient q-series at a zeta exponent.
    pub fn coeff(&self, k: i64) -> QSeries {
        self.coeffs.get(&k).cloned().unwrap_or_else(|| QSeries::zero(self.q_order))
    }

    /// The zeta-free coefficient.
    pub fn zeta0(&self) -> QSeries {
        self.coeff(0)
    }

    fn insert(&mut self, k: i64, s: QSeries) {
        if k.abs() <= self.zeta_order && !s.is_zero() {
            self.coeffs.insert(k, s);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let zeta_order = self.zeta_order.min(other.zeta_order);
        let q_order = self.q_order.min(other.q_order);
        let mut out = ZetaExpansion::zero(zeta_order, q_order);
        let keys: std::collections::BTreeSet<i64> =
            self.coeffs.keys().chain(other.coeffs.keys()).copied().collect();
        for k in keys {
            if k.abs() > zeta_order {
                continue;
            }
            let s = &self.coeff(k).truncate(q_order) + &other.coeff(k).truncate(q_order);
            if !s.is_zero() {
                out.coeffs.insert(k, s);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = self.clone();
        for s in out.coeffs.values_mut() {
            s.scale_assign(c);
        }
        out.coeffs.retain(|_, s| !s.is_zero());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rat(-1)))
    }

    /// Product, truncated in zeta-degree to the smaller zeta_order and in q
    /// to the smaller q_order. High zeta-frequencies are q-suppressed on the
    /// expansion domain, so for the coefficients near zeta^0 a build order of
    /// q_order + |retained exponent| makes the truncation exact.
    pub fn mul(&self, other: &Self) -> Self {
        let zeta_order = self.zeta_order.min(other.zeta_order);
        let q_order = self.q_order.min(other.q_order);
        let mut out = ZetaExpansion::zero(zeta_order, q_order);
        for (&k1, s1) in &self.coeffs {
            let s1 = s1.truncate(q_order);
            for (&k2, s2) in &other.coeffs {
                let k = k1 + k2;
                if k.abs() > zeta_order {
                    continue;
                }
                let product = &s1 * &s2.truncate(q_order);
                if product.is_zero() {
                    continue;
                }
                match out.coeffs.get_mut(&k) {
                    Some(acc) => *acc = &*acc + &product,
                    None => {
                        out.coeffs.insert(k, product);
                    }
                }
            }
        }
        out.coeffs.retain(|_, s| !s.is_zero());
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = ZetaExpansion::constant(QSeries::one(self.q_order), self.zeta_order);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

/// sum_{h >= hmin} q^{hw}, truncated.
fn geom(w: usize, hmin: usize, order: usize) -> QSeries {
    let mut s = QSeries::monomial(Rat::one(), hmin * w, order);
    s.mul_geom_assign(w);
    s
}

/// sum_{h >= 1} h q^{hw} = q^w/(1-q^w)^2, truncated.
fn geom_weighted(w: usize, order: usize) -> QSeries {
    let mut s = QSeries::monomial(Rat::one(), w, order);
    s.mul_geom_assign(w);
    s.mul_geom_assign(w);
    s
}

/// Fourier expansion of Z, P^{(m)} or L on |q| < |zeta| < 1.
pub fn fourier_expansion(which: Which, zeta_order: i64, q_order: usize) -> ZetaExpansion {
    let mut out = ZetaExpansion::zero(zeta_order, q_order);
    match which {
        Which::Z => {
            out.insert(0, QSeries::constant(ratio(1, 2), q_order));
            for k in 1..=zeta_order {
                out.insert(k, geom(k as usize, 0, q_order));
                out.insert(-k, geom(k as usize, 1, q_order).scale(&rat(-1)));
            }
        }
        Which::PDeriv(m) => {
            let sign = if m % 2 == 0 { rat(1) } else { rat(-1) };
            for k in 1..=zeta_order {
                let wpow = rat_pow(&rat(k), m as i64 + 1);
                out.insert(k, geom(k as usize, 0, q_order).scale(&wpow));
                out.insert(-k, geom(k as usize, 1, q_order).scale(&(wpow * &sign)));
            }
        }
        Which::L => {
            for k in 1..=zeta_order {
                let s = geom_weighted(k as usize, q_order);
                out.insert(k, s.clone());
                out.insert(-k, s);
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// multi-variable constant-term extraction

/// One factor of the product: a function of z_a - z_b with a < b.
#[derive(Clone, Debug)]
pub struct CtFactor {
    pub a: usize,
    pub b: usize,
    pub kind: CtKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CtKind {
    /// P^{(m)}(z_a - z_b), m even.
    PDeriv(u32),
    /// The Siegel-Veech marked factor: L(z_a - z_b) for m = 0 and
    /// Dq P^{(m-2)}(z_a - z_b) for even m >= 2. Both expand as
    /// sum_w w^m (zeta^w + zeta^-w) sum_{h>=1} h q^{hw}.
    SvMarked(u32),
}

/// Iterated constant term [zeta_n^0 ... zeta_1^0] of the product of factors,
/// on the standard ordered domain. Exact through q^order.
pub fn constant_term_product(n_vars: usize, factors: &[CtFactor], order: usize) -> QSeries {
    for f in factors {
        assert!(f.a < f.b && f.b < n_vars, "factors use ordered variable pairs");
    }
    // state: exposed zeta-exponents on the not-yet-integrated variables
    let mut state: HashMap<Vec<i64>, QSeries> = HashMap::new();
    state.insert(vec![0i64; n_vars], QSeries::one(order));

    for v in 0..n_vars {
        let local: Vec<&CtFactor> = factors.iter().filter(|f| f.a == v).collect();
        let mut next: HashMap<Vec<i64>, QSeries> = HashMap::new();
        for (expo, series) in &state {
            distribute(v, &local, expo, series, order, &mut next);
        }
        state = next;
        if state.is_empty() {
            break;
        }
    }

    match state.remove(&vec![0i64; n_vars]) {
        Some(s) => s,
        None => QSeries::zero(order),
    }
}

/// Enumerate the branch/width choices of the factors at variable v against
/// one state entry, requiring the total zeta_v exponent to vanish.
fn distribute(
    v: usize,
    local: &[&CtFactor],
    expo: &[i64],
    series: &QSeries,
    order: usize,
    next: &mut HashMap<Vec<i64>, QSeries>,
) {
    fn rec(
        v: usize,
        local: &[&CtFactor],
        idx: usize,
        expo_v: i64,
        expo: &mut Vec<i64>,
        series: &QSeries,
        order: usize,
        next: &mut HashMap<Vec<i64>, QSeries>,
    ) {
        if idx == local.len() {
            if expo_v != 0 {
                return;
            }
            let mut key = expo.clone();
            key[v] = 0;
            match next.get_mut(&key) {
                Some(acc) => acc.add_assign_ref(series),
                None => {
                    next.insert(key, series.clone());
                }
            }
            return;
        }
        let f = local[idx];
        let last = idx == local.len() - 1;
        let choices: Vec<(i64, usize)> = if last {
            // the final factor must cancel the accumulated exponent
            if expo_v == 0 {
                return;
            }
            let w = expo_v.unsigned_abs() as usize;
            if w > order {
                return;
            }
            vec![(-expo_v.signum(), w)]
        } else {
            let mut c = Vec::with_capacity(2 * order);
            for w in 1..=order {
                c.push((1i64, w));
                c.push((-1i64, w));
            }
            c
        };
        for (sign, w) in choices {
            let mut s = series.clone();
            match f.kind {
                CtKind::PDeriv(m) => {
                    s.scale_assign(&rat_pow(&rat(w as i64), m as i64 + 1));
                    if sign < 0 {
                        // zeta_v^{-w} branch: heights h >= 1
                        s.shift_assign(w);
                    }
                    s.mul_geom_assign(w);
                }
                CtKind::SvMarked(m) => {
                    s.scale_assign(&rat_pow(&rat(w as i64), m as i64));
                    s.shift_assign(w);
                    s.mul_geom_assign(w);
                    s.mul_geom_assign(w);
                }
            }
            if s.is_zero() {
                continue;
            }
            expo[f.b] -= sign * w as i64;
            rec(v, local, idx + 1, expo_v + sign * w as i64, expo, &s, order, next);
            expo[f.b] += sign * w as i64;
        }
    }
    let mut expo = expo.to_vec();
    let expo_v = expo[v];
    rec(v, local, 0, expo_v, &mut expo, series, order, next);
}

/// [zeta^0 ... zeta^0] of prod over edges of P^{(m_e)}(z_a - z_b) for a
/// reduced graph, cross-checked against the orientation-summed lattice sums.
pub fn constant_term_graph(g: &GlobalGraph, m: &[u32], order: usize) -> Result<QSeries> {
    if g.has_loops() {
        return Err(Error::GraphNotReduced);
    }
    if let Some(&bad) = m.iter().find(|&&mi| mi % 2 != 0) {
        return Err(Error::OddEdgeExponent(bad));
    }
    let factors: Vec<CtFactor> = g
        .edges()
        .iter()
        .zip(m)
        .map(|(&(a, b), &me)| CtFactor { a, b, kind: CtKind::PDeriv(me) })
        .collect();
    let extracted = constant_term_product(g.n_vertices(), &factors, order);
    let direct = graph_sum_s(g, m, order);
    if let Some(n) = extracted.first_difference(&direct) {
        return Err(Error::CrossCheckMismatch {
            context: format!("constant_term_graph({g})"),
            first_diff: n,
        });
    }
    Ok(extracted)
}

// ---------------------------------------------------------------------------
// Laurent expansions in u, with quasimodular coefficients

/// Laurent polynomial data in u: exponent -> QmPoly coefficient, exact for
/// exponents <= max_deg (all lower exponents are stored).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentU {
    terms: BTreeMap<i64, QmPoly>,
    max_deg: i64,
}

impl LaurentU {
    pub fn new(terms: BTreeMap<i64, QmPoly>, max_deg: i64) -> Self {
        let mut l = LaurentU { terms, max_deg };
        l.terms.retain(|&d, c| d <= l.max_deg && !c.is_zero());
        l
    }

    pub fn coeff(&self, deg: i64) -> QmPoly {
        assert!(deg <= self.max_deg, "coefficient beyond tracked degree");
        self.terms.get(&deg).cloned().unwrap_or_else(QmPoly::zero)
    }

    pub fn max_deg(&self) -> i64 {
        self.max_deg
    }

    /// Lowest exponent present (None for zero).
    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let max_deg = self.max_deg.min(other.max_deg);
        let mut terms = BTreeMap::new();
        let keys: std::collections::BTreeSet<i64> =
            self.terms.keys().chain(other.terms.keys()).copied().collect();
        for k in keys {
            if k > max_deg {
                continue;
            }
            let c = self.terms.get(&k).cloned().unwrap_or_else(QmPoly::zero).add(
                &other.terms.get(&k).cloned().unwrap_or_else(QmPoly::zero),
            );
            if !c.is_zero() {
                terms.insert(k, c);
            }
        }
        LaurentU { terms, max_deg }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        LaurentU {
            terms: self.terms.iter().map(|(&d, p)| (d, p.scale(c))).collect(),
            max_deg: self.max_deg,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (va, vb) = match (self.valuation(), other.valuation()) {
            (Some(a), Some(b)) => (a, b),
            // zero factor: exact to any degree
            _ => return LaurentU { terms: BTreeMap::new(), max_deg: self.max_deg.min(other.max_deg) },
        };
        let max_deg = (self.max_deg + vb).min(other.max_deg + va);
        let mut terms: BTreeMap<i64, QmPoly> = BTreeMap::new();
        for (&d1, c1) in &self.terms {
            for (&d2, c2) in &other.terms {
                let d = d1 + d2;
                if d > max_deg {
                    continue;
                }
                let prod = c1.mul(c2);
                match terms.get_mut(&d) {
                    Some(acc) => *acc = acc.add(&prod),
                    None => {
                        terms.insert(d, prod);
                    }
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentU { terms, max_deg }
    }

    pub fn pow(&self, e: u32) -> Self {
        // exact-degree tracking wants balanced powering, but repeated
        // multiplication gives the same (tight) bound here
        let mut acc = LaurentU::new(
            [(0i64, QmPoly::constant(Rat::one()))].into_iter().collect(),
            i64::MAX / 4,
        );
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

/// Laurent data of Z, P, L around u = 0 through u^max_u_degree:
/// Z = -1/u + 2 sum G_{2k+2} u^{2k+1}/(2k+1)!,
/// P = 1/u^2 + 2 sum G_{2k+2} u^{2k}/(2k)!,
/// L = 2 G2 + 1/12 + 2 sum Dq G_{2k} u^{2k}/(2k)!.
/// Degrees needing G8 or beyond are not expressible in the fixed generator
/// set and are rejected.
pub fn laurent_expansion(which: Which, max_u_degree: i64) -> Result<LaurentU> {
    let full = laurent_expansion_full(which)?;
    if max_u_degree > full.max_deg() {
        return Err(Error::Invalid(format!(
            "laurent data of {which:?} is exact only through u^{}, got degree {max_u_degree}",
            full.max_deg()
        )));
    }
    Ok(LaurentU::new(full.terms, max_u_degree))
}

fn laurent_expansion_full(which: Which) -> Result<LaurentU> {
    let g2 = QmPoly::gen_g2();
    let g4 = QmPoly::gen_g4();
    let g6 = QmPoly::gen_g6();
    match which {
        Which::Z => {
            let mut t = BTreeMap::new();
            t.insert(-1, QmPoly::constant(rat(-1)));
            t.insert(1, g2.scale(&rat(2)));
            t.insert(3, g4.scale(&ratio(2, 6)));
            t.insert(5, g6.scale(&ratio(2, 120)));
            // u^6 coefficient is zero (Z is odd); u^7 would need G8
            Ok(LaurentU::new(t, 6))
        }
        Which::PDeriv(0) => {
            let mut t = BTreeMap::new();
            t.insert(-2, QmPoly::constant(rat(1)));
            t.insert(0, g2.scale(&rat(2)));
            t.insert(2, g4.scale(&ratio(2, 2)));
            t.insert(4, g6.scale(&ratio(2, 24)));
            Ok(LaurentU::new(t, 5))
        }
        Which::PDeriv(m) => Err(Error::Invalid(format!(
            "laurent_expansion supports P itself, not P^({m})"
        ))),
        Which::L => {
            let mut t = BTreeMap::new();
            t.insert(0, g2.scale(&rat(2)).add(&QmPoly::constant(ratio(1, 12))));
            t.insert(2, g2.dq().scale(&ratio(2, 2)));
            t.insert(4, g4.dq().scale(&ratio(2, 24)));
            Ok(LaurentU::new(t, 5))
        }
    }
}

// ---------------------------------------------------------------------------
// constant terms of Z powers

/// [zeta^0] Z^e for e <= 7 as an exact polynomial in G2, G4, G6, computed by
/// the residue/triangular-system route and verified against the Fourier-side
/// numeric extraction to order `check_order`.
pub fn zeta0_z_power(e: u32, check_order: usize) -> Result<QmPoly> {
    let poly = zeta0_z_power_symbolic(e)?;
    let numeric = fourier_z_power_zeta0(e, check_order);
    let series = poly.to_series(check_order);
    if let Some(n) = numeric.first_difference(&series) {
        return Err(Error::CrossCheckMismatch {
            context: format!("zeta0_z_power({e})"),
            first_diff: n,
        });
    }
    Ok(poly)
}

/// Fourier-side [zeta^0] Z^e, numeric witness.
pub fn fourier_z_power_zeta0(e: u32, order: usize) -> QSeries {
    fourier_expansion(Which::Z, order as i64, order).pow(e).zeta0()
}

/// The symbolic route: odd powers via -1/2 Res_0 Z^l, even powers via the
/// triangular system from [zeta^0] (Z - 1/2)^l = 0 for odd l.
pub fn zeta0_z_power_symbolic(e: u32) -> Result<QmPoly> {
    if e == 0 {
        return Ok(QmPoly::constant(Rat::one()));
    }
    if e > 7 {
        return Err(Error::UnsupportedZPower(e));
    }
    let z = laurent_expansion_full(Which::Z)?;
    let residue = |ell: u32| -> QmPoly { z.pow(ell).coeff(-1) };

    let mut table: Vec<QmPoly> = vec![QmPoly::constant(Rat::one())];
    for j in 1..=e {
        let value = if j % 2 == 1 {
            residue(j).scale(&ratio(-1, 2))
        } else {
            // 0 = [zeta^0](Z - 1/2)^{j+1}
            //   = sum_i C(j+1, i) (-1/2)^{j+1-i} [zeta^0] Z^i
            let ell = j + 1; // odd
            let zl = residue(ell).scale(&ratio(-1, 2));
            let mut rhs = zl; // the i = ell term has coefficient 1
            for i in 0..j {
                let c = rat_big(binomial(ell as usize, i as usize))
                    * rat_pow(&ratio(-1, 2), (ell - i) as i64);
                rhs = rhs.add(&table[i as usize].scale(&c));
            }
            // 0 = rhs + C(ell, j)(-1/2) [zeta^0] Z^j
            let coeff = rat_big(binomial(ell as usize, j as usize)) * ratio(-1, 2);
            rhs.scale(&(-(Rat::one() / coeff)))
        };
        table.push(value);
    }
    Ok(table[e as usize].clone())
}
