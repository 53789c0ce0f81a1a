//! Exact scalars: big rationals, Bernoulli numbers, polynomials in the formal
//! symbol π², and Q-linear combinations of √m and i√m.
//!
//! Bernoulli numbers use B_1 = −1/2, so the constant term of the Eisenstein
//! series G_k is −B_k/2k and G_2 starts with −1/24.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn big(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

/// Canonical text form: "p/q", or "p" when the denominator is 1.
pub fn fmt_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// serde adapter storing a rational as its "p/q" string.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

pub fn factorial_q(n: u64) -> Rational {
    Rational::from_integer(factorial(n))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// 2^e for any integer e.
pub fn pow2(e: i64) -> Rational {
    let p = BigInt::one() << e.unsigned_abs() as usize;
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

pub fn pow_q(q: &Rational, e: u32) -> Rational {
    num_traits::pow(q.clone(), e as usize)
}

static BERNOULLI: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// B_k with B_1 = −1/2.
pub fn bernoulli(k: usize) -> Rational {
    let mut cache = BERNOULLI.lock().expect("bernoulli cache poisoned");
    if cache.is_empty() {
        cache.push(int(1));
    }
    while cache.len() <= k {
        let m = cache.len() as u64;
        // Σ_{j=0}^{m} C(m+1, j) B_j = 0
        let mut s = Rational::zero();
        for (j, b) in cache.iter().enumerate() {
            s += big(&binomial(m + 1, j as u64)) * b;
        }
        cache.push(-s / int(m as i64 + 1));
    }
    cache[k].clone()
}

/// ζ(−k) = −B_{k+1}/(k+1) for k ≥ 1.
pub fn zeta_neg(k: usize) -> Rational {
    assert!(k >= 1, "zeta_neg needs k >= 1");
    -bernoulli(k + 1) / int(k as i64 + 1)
}

/// Polynomial in the formal generator π²; index j holds the coefficient of (π²)^j.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PiSquaredPoly {
    coeffs: Vec<Rational>,
}

impl PiSquaredPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// c·(π²)^j
    pub fn monomial(c: Rational, j: usize) -> Self {
        let mut v = vec![Rational::zero(); j + 1];
        v[j] = c;
        Self::from_coeffs(v)
    }

    /// (−4π²)^g, i.e. (2πi)^{2g}.
    pub fn two_pi_i_pow(two_g: u32) -> Self {
        assert!(two_g % 2 == 0, "odd power of 2πi is not a polynomial in π²");
        let g = two_g / 2;
        Self::monomial(pow_q(&int(-4), g), g as usize)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> Rational {
        self.coeffs.get(j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::from_coeffs((0..n).map(|j| self.coeff(j) + o.coeff(j)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&int(-1)))
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::from_coeffs(v)
    }

    /// If the polynomial is c·(π²)^j, return (c, j).
    pub fn as_monomial(&self) -> Option<(Rational, usize)> {
        let nz: Vec<usize> = (0..self.coeffs.len()).filter(|&j| !self.coeffs[j].is_zero()).collect();
        match nz.as_slice() {
            [j] => Some((self.coeffs[*j].clone(), *j)),
            _ => None,
        }
    }
}

impl fmt::Display for PiSquaredPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})pi^2")?,
                _ => write!(f, "({c})pi^{}", 2 * j)?,
            }
        }
        Ok(())
    }
}

/// Squarefree decomposition n = k²·m; returns (k, m).
pub fn squarefree_split(n: u64) -> (u64, u64) {
    assert!(n > 0);
    let (mut k, mut m, mut rest) = (1u64, 1u64, n);
    let mut p = 2u64;
    while p * p <= rest {
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        k *= p.pow(e / 2);
        if e % 2 == 1 {
            m *= p;
        }
        p += 1;
    }
    (k, m * rest)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Part {
    Re,
    Im,
}

/// Σ_m a_m √m + i Σ_m b_m √m with squarefree m.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AlgebraicValue {
    terms: BTreeMap<(Part, u64), Rational>,
}

impl AlgebraicValue {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn rational(q: Rational) -> Self {
        Self::term(Part::Re, 1, q)
    }

    /// c·√n (or c·i√n), with n reduced to squarefree form.
    pub fn term(part: Part, n: u64, c: Rational) -> Self {
        let mut v = Self::zero();
        v.add_term(part, n, c);
        v
    }

    /// √q for a non-negative rational q, times i if `imaginary`.
    pub fn sqrt_of(q: &Rational, imaginary: bool) -> Self {
        assert!(!q.is_negative());
        if q.is_zero() {
            return Self::zero();
        }
        // √(a/b) = √(ab)/b
        let ab = (q.numer() * q.denom()).to_u64().expect("radicand too large");
        let b = q.denom().clone();
        let part = if imaginary { Part::Im } else { Part::Re };
        Self::term(part, ab, Rational::new(BigInt::one(), b))
    }

    fn add_term(&mut self, part: Part, n: u64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let (k, m) = squarefree_split(n);
        let c = c * int(k as i64);
        let e = self.terms.entry((part, m)).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(part, m));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Part, u64, &Rational)> {
        self.terms.iter().map(|((p, m), c)| (*p, *m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&(Part::Re, 1)).cloned(),
            _ => None,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (p, m, c) in o.terms() {
            r.add_term(p, m, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&int(-1)))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let mut r = Self::zero();
        for (p, m, c) in self.terms() {
            r.add_term(p, m, c * q);
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for (p1, m1, c1) in self.terms() {
            for (p2, m2, c2) in o.terms() {
                let c = c1 * c2;
                let (part, c) = match (p1, p2) {
                    (Part::Re, Part::Re) => (Part::Re, c),
                    (Part::Im, Part::Im) => (Part::Re, -c),
                    _ => (Part::Im, c),
                };
                r.add_term(part, m1 * m2, c);
            }
        }
        r
    }

    pub fn conj(&self) -> Self {
        let mut r = self.clone();
        for ((p, _), c) in r.terms.iter_mut() {
            if *p == Part::Im {
                *c = -c.clone();
            }
        }
        r
    }

    /// Text rendering: "4", "-2", "+i√3", "1/2-1/2i√3", "-2i".
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        let only_im = self.terms.keys().all(|(p, _)| *p == Part::Im);
        for (i, ((p, m), c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if neg {
                out.push('-');
            } else if i > 0 || only_im {
                out.push('+');
            }
            let unit = match (p, *m) {
                (Part::Re, 1) => String::new(),
                (Part::Re, m) => format!("√{m}"),
                (Part::Im, 1) => "i".into(),
                (Part::Im, m) => format!("i√{m}"),
            };
            if unit.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&unit);
            } else {
                out.push_str(&format!("{a}{unit}"));
            }
        }
        out
    }
}

impl fmt::Display for AlgebraicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Serialize, Deserialize)]
struct AlgJson {
    re: Vec<(u64, String)>,
    im: Vec<(u64, String)>,
}

impl Serialize for AlgebraicValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pick = |part: Part| {
            self.terms()
                .filter(|(p, _, _)| *p == part)
                .map(|(_, m, c)| (m, fmt_rational(c)))
                .collect::<Vec<_>>()
        };
        AlgJson { re: pick(Part::Re), im: pick(Part::Im) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraicValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = AlgJson::deserialize(d)?;
        let mut v = AlgebraicValue::zero();
        for (part, list) in [(Part::Re, j.re), (Part::Im, j.im)] {
            for (m, c) in list {
                if m == 0 {
                    return Err(serde::de::Error::custom("radicand must be positive"));
                }
                v.add_term(part, m, parse_rational(&c).map_err(serde::de::Error::custom)?);
            }
        }
        Ok(v)
    }
}
