//! Truncated q-series, Eisenstein series, the ring Q[G₂,G₄,G₆], the derivations
//! D and 𝔡, recognition of q-expansions, and growth polynomials ev[F].

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{bernoulli, fmt_rational, int, parse_rational, rat, PiSquaredPoly, Rational};

pub const DEFAULT_ORDER: usize = 20;
pub const RECOGNITION_MARGIN: usize = 8;

/// Coefficients a_0..a_N of a q-expansion truncated after q^N.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<Rational>,
}

impl QSeries {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a q-series has at least the constant term");
        Self { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(vec![Rational::zero(); n + 1])
    }

    pub fn constant(c: Rational, n: usize) -> Self {
        let mut s = Self::zero(n);
        s.coeffs[0] = c;
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    pub fn truncate(&self, n: usize) -> Self {
        Self::new(self.coeffs[..=n.min(self.order())].to_vec())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Self::new((0..=n).map(|i| &self.coeffs[i] + &o.coeffs[i]).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Self::new((0..=n).map(|i| &self.coeffs[i] - &o.coeffs[i]).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let mut v = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n + 1 - i) {
                v[i + j] += a * b;
            }
        }
        Self::new(v)
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Self {
        let a0 = &self.coeffs[0];
        assert!(!a0.is_zero(), "q-series inverse needs nonzero constant term");
        let n = self.order();
        let mut v = vec![Rational::zero(); n + 1];
        v[0] = a0.recip();
        for k in 1..=n {
            let mut s = Rational::zero();
            for j in 1..=k {
                s += &self.coeffs[j] * &v[k - j];
            }
            v[k] = -s / a0;
        }
        Self::new(v)
    }

    /// D = q d/dq
    pub fn d(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().map(|(n, c)| c * int(n as i64)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(fmt_rational).collect()
    }
}

/// σ_{k−1}(n) for n ≥ 1.
fn sigma(k1: u32, n: usize) -> Rational {
    let mut s = num_bigint::BigInt::zero();
    for d in 1..=n {
        if n % d == 0 {
            s += num_bigint::BigInt::from(d).pow(k1);
        }
    }
    Rational::from_integer(s)
}

/// G_k = −B_k/2k + Σ σ_{k−1}(n) q^n, truncated at q^N.
pub fn eisenstein(k: u32, n: usize) -> Result<QSeries> {
    if k < 2 || k % 2 == 1 {
        return Err(Error::Invalid(format!("Eisenstein series needs even k >= 2, got {k}")));
    }
    let mut v = vec![-bernoulli(k as usize) / int(2 * k as i64)];
    v.extend((1..=n).map(|m| sigma(k - 1, m)));
    Ok(QSeries::new(v))
}

/// Exponents (a,b,c) of G₂^a G₄^b G₆^c.
pub type Mono = (u32, u32, u32);

pub fn mono_weight(m: &Mono) -> u32 {
    2 * m.0 + 4 * m.1 + 6 * m.2
}

/// All monomials of weight exactly k.
pub fn monomials_of_weight(k: u32) -> Vec<Mono> {
    let mut out = Vec::new();
    if k % 2 == 1 {
        return out;
    }
    for c in 0..=k / 6 {
        for b in 0..=(k - 6 * c) / 4 {
            let r = k - 6 * c - 4 * b;
            out.push((r / 2, b, c));
        }
    }
    out.sort();
    out
}

/// Element of Q[G₂,G₄,G₆]; may mix weights.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QuasimodularForm {
    terms: BTreeMap<Mono, Rational>,
}

impl QuasimodularForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial((0, 0, 0), c)
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn monomial(m: Mono, c: Rational) -> Self {
        let mut f = Self::zero();
        f.add_term(m, c);
        f
    }

    pub fn g2() -> Self {
        Self::monomial((1, 0, 0), Rational::one())
    }

    pub fn g4() -> Self {
        Self::monomial((0, 1, 0), Rational::one())
    }

    pub fn g6() -> Self {
        Self::monomial((0, 0, 1), Rational::one())
    }

    pub fn add_term(&mut self, m: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Mono, Rational> {
        &self.terms
    }

    pub fn coeff(&self, m: &Mono) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The weight when all monomials share one; zero form reports None.
    pub fn weight(&self) -> Option<u32> {
        let mut ws = self.terms.keys().map(mono_weight);
        let w = ws.next()?;
        ws.all(|x| x == w).then_some(w)
    }

    pub fn homogeneous_part(&self, k: u32) -> Self {
        let mut f = Self::zero();
        for (m, c) in &self.terms {
            if mono_weight(m) == k {
                f.add_term(*m, c.clone());
            }
        }
        f
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut f = self.clone();
        for (m, c) in &o.terms {
            f.add_term(*m, c.clone());
        }
        f
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut f = Self::zero();
        for (m, x) in &self.terms {
            f.add_term(*m, x * c);
        }
        f
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut f = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                f.add_term((m1.0 + m2.0, m1.1 + m2.1, m1.2 + m2.2), c1 * c2);
            }
        }
        f
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// q-expansion to order N.
    pub fn expand(&self, n: usize) -> QSeries {
        let gens = [
            eisenstein(2, n).expect("weight 2"),
            eisenstein(4, n).expect("weight 4"),
            eisenstein(6, n).expect("weight 6"),
        ];
        let mut pow_cache: BTreeMap<(usize, u32), QSeries> = BTreeMap::new();
        let mut power = |g: usize, e: u32| -> QSeries {
            if let Some(s) = pow_cache.get(&(g, e)) {
                return s.clone();
            }
            let mut s = QSeries::constant(Rational::one(), n);
            for _ in 0..e {
                s = s.mul(&gens[g]);
            }
            pow_cache.insert((g, e), s.clone());
            s
        };
        let mut out = QSeries::zero(n);
        for ((a, b, c), coef) in &self.terms {
            let t = power(0, *a).mul(&power(1, *b)).mul(&power(2, *c));
            out = out.add(&t.scale(coef));
        }
        out
    }

    /// Apply a derivation given by its values on the three generators.
    fn derivation(&self, on_gens: &[QuasimodularForm; 3]) -> Self {
        let mut out = Self::zero();
        for (&(a, b, c), coef) in &self.terms {
            let exps = [a, b, c];
            for g in 0..3 {
                if exps[g] == 0 {
                    continue;
                }
                let mut rest = [a, b, c];
                rest[g] -= 1;
                let base = Self::monomial((rest[0], rest[1], rest[2]), coef * int(exps[g] as i64));
                out = out.add(&base.mul(&on_gens[g]));
            }
        }
        out
    }

    /// D = q d/dq via the Ramanujan identities in the G-normalization.
    pub fn d(&self) -> Self {
        let g2 = Self::g2();
        let g4 = Self::g4();
        let g6 = Self::g6();
        let dg2 = g2.mul(&g2).scale(&int(-2)).add(&g4.scale(&rat(5, 6)));
        let dg4 = g2.mul(&g4).scale(&int(-8)).add(&g6.scale(&rat(7, 10)));
        let dg6 = g2.mul(&g6).scale(&int(-12)).add(&g4.mul(&g4).scale(&rat(400, 7)));
        self.derivation(&[dg2, dg4, dg6])
    }

    pub fn d_pow(&self, j: u32) -> Self {
        (0..j).fold(self.clone(), |f, _| f.d())
    }

    /// 𝔡 with 𝔡G₂ = −1/2 and 𝔡G₄ = 𝔡G₆ = 0.
    pub fn frak_d(&self) -> Self {
        self.derivation(&[Self::constant(rat(-1, 2)), Self::zero(), Self::zero()])
    }

    pub fn to_json(&self) -> serde_json::Value {
        let monos: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|((a, b, c), q)| serde_json::json!([a, b, c, fmt_rational(q)]))
            .collect();
        serde_json::json!({ "weight": self.weight(), "monomials": monos })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = || Error::Parse("malformed quasimodular form JSON".into());
        let mut f = Self::zero();
        for m in v.get("monomials").and_then(|m| m.as_array()).ok_or_else(bad)? {
            let a = m.as_array().filter(|a| a.len() == 4).ok_or_else(bad)?;
            let e = |i: usize| a[i].as_u64().map(|x| x as u32).ok_or_else(bad);
            let q = parse_rational(a[3].as_str().ok_or_else(bad)?)?;
            f.add_term((e(0)?, e(1)?, e(2)?), q);
        }
        Ok(f)
    }
}

impl fmt::Display for QuasimodularForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for ((a, b, c), q) in &self.terms {
            let mut s = format!("({q})");
            for (e, name) in [(a, "G2"), (b, "G4"), (c, "G6")] {
                match e {
                    0 => {}
                    1 => s.push_str(&format!("*{name}")),
                    _ => s.push_str(&format!("*{name}^{e}")),
                }
            }
            parts.push(s);
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Exact solve of A x = b (rows of A are equations). Returns None when the
/// system is inconsistent or the solution is not unique.
pub fn solve_linear(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let ncols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut row = r.clone();
            row.push(x.clone());
            row
        })
        .collect();
    let mut row = 0;
    let mut pivots = Vec::new();
    for col in 0..ncols {
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in col..=ncols {
                    let t = &m[row][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if pivots.len() < ncols || m[row..].iter().any(|r| !r[ncols].is_zero()) {
        return None;
    }
    Some((0..ncols).map(|i| m[i][ncols].clone()).collect())
}

fn recognize_in(f: &QSeries, monos: &[Mono], weight: u32) -> Result<QuasimodularForm> {
    let n = f.order();
    if n + 1 < monos.len() + RECOGNITION_MARGIN {
        return Err(Error::Invalid(format!(
            "truncation order {n} too small to recognize among {} monomials",
            monos.len()
        )));
    }
    let basis: Vec<QSeries> = monos.iter().map(|m| QuasimodularForm::monomial(*m, Rational::one()).expand(n)).collect();
    let rows: Vec<Vec<Rational>> = (0..=n).map(|i| basis.iter().map(|s| s.coeff(i).clone()).collect()).collect();
    let sol = solve_linear(&rows, f.coeffs()).ok_or_else(|| Error::NotQuasimodular {
        weight,
        detail: "linear system inconsistent".into(),
    })?;
    let mut out = QuasimodularForm::zero();
    for (m, c) in monos.iter().zip(sol) {
        out.add_term(*m, c);
    }
    Ok(out)
}

/// The unique pure-weight form with the given expansion.
pub fn recognize(f: &QSeries, weight: u32) -> Result<QuasimodularForm> {
    recognize_in(f, &monomials_of_weight(weight), weight)
}

/// Recognition among all monomials of weight ≤ max_weight.
pub fn recognize_mixed(f: &QSeries, max_weight: u32) -> Result<QuasimodularForm> {
    let monos: Vec<Mono> = (0..=max_weight).step_by(2).flat_map(monomials_of_weight).collect();
    recognize_in(f, &monos, max_weight)
}

/// G_k as a polynomial in G₂,G₄,G₆.
pub fn eisenstein_form(k: u32) -> QuasimodularForm {
    match k {
        2 => QuasimodularForm::g2(),
        4 => QuasimodularForm::g4(),
        6 => QuasimodularForm::g6(),
        _ => {
            let n = monomials_of_weight(k).len() + RECOGNITION_MARGIN;
            let s = eisenstein(k, n).expect("even weight");
            // modular forms of weight k ≥ 4 live in Q[G₄,G₆]
            let monos: Vec<Mono> = monomials_of_weight(k).into_iter().filter(|m| m.0 == 0).collect();
            recognize_in(&s, &monos, k).expect("Eisenstein series are modular")
        }
    }
}

/// Polynomial in x = 1/h with coefficients in Q[π²].
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GrowthPolynomial {
    coeffs: BTreeMap<u32, PiSquaredPoly>,
}

impl GrowthPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(0, PiSquaredPoly::constant(Rational::one()))
    }

    pub fn term(deg: u32, c: PiSquaredPoly) -> Self {
        let mut g = Self::zero();
        g.add_term(deg, &c);
        g
    }

    fn add_term(&mut self, deg: u32, c: &PiSquaredPoly) {
        let e = self.coeffs.entry(deg).or_default();
        *e = e.add(c);
        if e.is_zero() {
            self.coeffs.remove(&deg);
        }
    }

    pub fn coeff(&self, deg: u32) -> PiSquaredPoly {
        self.coeffs.get(&deg).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, PiSquaredPoly> {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut g = self.clone();
        for (d, c) in &o.coeffs {
            g.add_term(*d, c);
        }
        g
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let mut g = Self::zero();
        for (d, c) in &self.coeffs {
            g.add_term(*d, &c.scale(q));
        }
        g
    }

    pub fn scale_poly(&self, p: &PiSquaredPoly) -> Self {
        let mut g = Self::zero();
        for (d, c) in &self.coeffs {
            g.add_term(*d, &c.mul(p));
        }
        g
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut g = Self::zero();
        for (d1, c1) in &self.coeffs {
            for (d2, c2) in &o.coeffs {
                g.add_term(d1 + d2, &c1.mul(c2));
            }
        }
        g
    }

    /// Multiply by x^k.
    pub fn shift(&self, k: u32) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(d, c)| (d + k, c.clone())).collect() }
    }

    /// −∂/∂h, acting as c·x^d ↦ d·c·x^{d+1}.
    pub fn minus_d_dh(&self) -> Self {
        let mut g = Self::zero();
        for (d, c) in &self.coeffs {
            g.add_term(d + 1, &c.scale(&int(*d as i64)));
        }
        g
    }
}

impl fmt::Display for GrowthPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|(d, c)| format!("[{c}]x^{d}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Constant term a₀(G_k) = −B_k/2k.
pub fn eisenstein_constant(k: u32) -> Rational {
    -bernoulli(k as usize) / int(2 * k as i64)
}

/// ev[G_k]: (π²/6)x² − x/2 for k = 2, a₀(G_k)(−4π²)^{k/2}x^k otherwise.
pub fn ev_eisenstein(k: u32) -> GrowthPolynomial {
    if k == 2 {
        return GrowthPolynomial::term(2, PiSquaredPoly::monomial(rat(1, 6), 1))
            .add(&GrowthPolynomial::term(1, PiSquaredPoly::constant(rat(-1, 2))));
    }
    GrowthPolynomial::term(k, PiSquaredPoly::two_pi_i_pow(k).scale(&eisenstein_constant(k)))
}

/// The algebra homomorphism ev on Q[G₂,G₄,G₆].
pub fn ev(f: &QuasimodularForm) -> GrowthPolynomial {
    let gens = [ev_eisenstein(2), ev_eisenstein(4), ev_eisenstein(6)];
    let pw = |g: usize, e: u32| (0..e).fold(GrowthPolynomial::one(), |acc, _| acc.mul(&gens[g]));
    let mut out = GrowthPolynomial::zero();
    for ((a, b, c), q) in f.terms() {
        out = out.add(&pw(0, *a).mul(&pw(1, *b)).mul(&pw(2, *c)).scale(q));
    }
    out
}

/// (−∂_h)^j ev[G_i].
pub fn ev_of_dj_gi(i: u32, j: u32) -> GrowthPolynomial {
    (0..j).fold(ev_eisenstein(i), |g, _| g.minus_d_dh())
}
