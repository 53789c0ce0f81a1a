//! The algebra Λ = Q[𝐩₁,𝐩₃,𝐩₅,…] (𝐩_i of weight i+1), its evaluation on
//! strict partitions, the elements 𝐡_ℓ, central characters 𝐟_ℓ, the
//! constants α_ℓ, and the operators ϱ_{i,j}, ∂₂ and 𝒟.
//!
//! A `SymFunc` only stores monomials; whether index k stands for 𝐩_k, for the
//! plain power sum p_k, or for 𝐡_k is up to the caller (the 𝐡-basis helpers
//! below say which).

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial_q, fmt_rational, int, parse_rational, pow_q, rat, zeta_neg, PiSquaredPoly, Rational};
use crate::partitions::{aut_factor, enumerate, Kind, Partition};
use crate::qmf::GrowthPolynomial;

/// Monomial: odd indices in increasing order.
pub type Monomial = Vec<u32>;

pub fn monomial_weight(m: &[u32]) -> u32 {
    m.iter().map(|i| i + 1).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SymFunc {
    terms: BTreeMap<Monomial, Rational>,
}

impl SymFunc {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Vec::new(), c)
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The generator with index k.
    pub fn gen(k: u32) -> Self {
        assert!(k % 2 == 1, "generators have odd index");
        Self::term(vec![k], Rational::one())
    }

    /// c·∏ generators; indices need not be sorted.
    pub fn term(mut m: Monomial, c: Rational) -> Self {
        m.sort_unstable();
        let mut f = Self::zero();
        f.add_term(m, c);
        f
    }

    /// The monomial 𝐩_ρ for a partition ρ with odd parts.
    pub fn p_rho(rho: &Partition) -> Self {
        Self::term(rho.parts().to_vec(), Rational::one())
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn coeff(&self, m: &[u32]) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&[])
    }

    pub fn weight(&self) -> Option<u32> {
        let mut ws = self.terms.keys().map(|m| monomial_weight(m));
        let w = ws.next()?;
        ws.all(|x| x == w).then_some(w)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.weight().is_some()
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().map(|m| monomial_weight(m)).max()
    }

    pub fn homogeneous_part(&self, k: u32) -> Self {
        let mut f = Self::zero();
        for (m, c) in &self.terms {
            if monomial_weight(m) == k {
                f.add_term(m.clone(), c.clone());
            }
        }
        f
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut f = self.clone();
        for (m, c) in &o.terms {
            f.add_term(m.clone(), c.clone());
        }
        f
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut f = Self::zero();
        if c.is_zero() {
            return f;
        }
        for (m, x) in &self.terms {
            f.terms.insert(m.clone(), x * c);
        }
        f
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut f = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let mut m = m1.clone();
                m.extend_from_slice(m2);
                m.sort_unstable();
                f.add_term(m, c1 * c2);
            }
        }
        f
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn product<'a>(fs: impl IntoIterator<Item = &'a SymFunc>) -> Self {
        fs.into_iter().fold(Self::one(), |acc, f| acc.mul(f))
    }

    /// ∂/∂(generator k).
    pub fn partial(&self, k: u32) -> Self {
        let mut f = Self::zero();
        for (m, c) in &self.terms {
            let e = m.iter().filter(|&&i| i == k).count();
            if e == 0 {
                continue;
            }
            let mut r = m.clone();
            let pos = r.iter().position(|&i| i == k).expect("present");
            r.remove(pos);
            f.add_term(r, c * int(e as i64));
        }
        f
    }

    /// ∂^{ℓ(ρ)}/∂𝐩_ρ
    pub fn partial_rho(&self, rho: &[u32]) -> Self {
        rho.iter().fold(self.clone(), |f, &k| f.partial(k))
    }

    /// Substitute each generator k by `img(k)`.
    pub fn substitute(&self, img: &dyn Fn(u32) -> SymFunc) -> Self {
        let mut cache: BTreeMap<u32, SymFunc> = BTreeMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for &k in m {
                let g = cache.entry(k).or_insert_with(|| img(k)).clone();
                t = t.mul(&g);
            }
            out = out.add(&t);
        }
        out
    }

    /// Evaluate with generator k ↦ val(k).
    pub fn eval_with(&self, val: &dyn Fn(u32) -> Rational) -> Rational {
        let mut cache: BTreeMap<u32, Rational> = BTreeMap::new();
        let mut s = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &k in m {
                t *= cache.entry(k).or_insert_with(|| val(k)).clone();
            }
            s += t;
        }
        s
    }

    /// 𝐩_k ↦ −½ζ(−k) + p_k(λ).
    pub fn eval(&self, lambda: &Partition) -> Rational {
        self.eval_with(&|k| bold_p_value(k, lambda))
    }

    pub fn eval_empty(&self) -> Rational {
        self.eval(&Partition::empty())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms.iter().map(|(m, c)| serde_json::json!([m, fmt_rational(c)])).collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = || Error::Parse("malformed symmetric function JSON".into());
        let mut f = Self::zero();
        for t in v.as_array().ok_or_else(bad)? {
            let pair = t.as_array().filter(|a| a.len() == 2).ok_or_else(bad)?;
            let idx: Vec<u32> = pair[0]
                .as_array()
                .ok_or_else(bad)?
                .iter()
                .map(|x| x.as_u64().map(|k| k as u32).filter(|k| k % 2 == 1).ok_or_else(bad))
                .collect::<Result<_>>()?;
            let c = parse_rational(pair[1].as_str().ok_or_else(bad)?)?;
            f = f.add(&Self::term(idx, c));
        }
        Ok(f)
    }
}

impl std::str::FromStr for SymFunc {
    type Err = Error;

    /// Text form such as `p1*p3`, `p1^2 - 1/2*p5`, `3/4` (sums of rational
    /// multiples of products of `pK` with odd K, optionally with `^e`).
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| Error::Parse(format!("{msg} in {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty expression".into()));
        }
        // Split into signed terms; a sign after '^' or at the start belongs to the term.
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() && !cur.ends_with('^') {
                terms.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if (ch == '+' || ch == '-') && cur.is_empty() {
                neg ^= ch == '-';
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(bad("dangling sign".into()));
        }
        terms.push((neg, cur));

        let mut out = Self::zero();
        for (neg, t) in terms {
            let mut c = Rational::one();
            let mut mono = Vec::new();
            for factor in t.split('*') {
                if let Some(rest) = factor.strip_prefix('p') {
                    let (k, e) = match rest.split_once('^') {
                        Some((k, e)) => (k, e.parse::<u32>().map_err(|_| bad(format!("bad exponent {e:?}")))?),
                        None => (rest, 1),
                    };
                    let k: u32 = k.parse().map_err(|_| bad(format!("bad index {k:?}")))?;
                    if k % 2 == 0 {
                        return Err(bad(format!("p{k} has even index")));
                    }
                    mono.extend(std::iter::repeat(k).take(e as usize));
                } else {
                    c *= parse_rational(factor).map_err(|_| bad(format!("bad factor {factor:?}")))?;
                }
            }
            if neg {
                c = -c;
            }
            out = out.add(&Self::term(mono, c));
        }
        Ok(out)
    }
}

impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut s = format!("({c})");
                for k in m {
                    s.push_str(&format!("*p{k}"));
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// p_k(λ) = Σ λ_i^k for any integer k.
pub fn p_power(k: i32, lambda: &Partition) -> Rational {
    lambda
        .parts()
        .iter()
        .map(|&x| if k >= 0 { pow_q(&int(x as i64), k as u32) } else { pow_q(&rat(1, x as i64), (-k) as u32) })
        .sum()
}

/// 𝐩_k(λ) = −½ζ(−k) + p_k(λ).
pub fn bold_p_value(k: u32, lambda: &Partition) -> Rational {
    -zeta_neg(k as usize) / int(2) + p_power(k as i32, lambda)
}

/// Power series in one variable with SymFunc coefficients, truncated.
type Series = Vec<SymFunc>;

fn series_exp(s: &Series) -> Series {
    // E' = S'E, with S_0 = 0
    let n = s.len();
    let mut e = vec![SymFunc::zero(); n];
    e[0] = SymFunc::one();
    for k in 1..n {
        let mut acc = SymFunc::zero();
        for j in 1..=k {
            if !s[j].is_zero() && !e[k - j].is_zero() {
                acc = acc.add(&s[j].mul(&e[k - j]).scale(&int(j as i64)));
            }
        }
        e[k] = acc.scale(&rat(1, k as i64));
    }
    e
}

fn series_mul(a: &Series, b: &Series) -> Series {
    let n = a.len().min(b.len());
    let mut c = vec![SymFunc::zero(); n];
    for i in 0..n {
        for j in 0..n - i {
            if !a[i].is_zero() && !b[j].is_zero() {
                c[i + j] = c[i + j].add(&a[i].mul(&b[j]));
            }
        }
    }
    c
}

/// 𝐡_ℓ = −(1/2ℓ)[u^{ℓ+1}] exp(−2ℓ Σ_k 𝐩_k u^{k+1}).
pub fn h_element(l: u32) -> SymFunc {
    assert!(l % 2 == 1, "h_element needs odd index");
    let deg = (l + 1) as usize;
    let mut s = vec![SymFunc::zero(); deg + 1];
    for k in (1..=l).step_by(2) {
        s[(k + 1) as usize] = SymFunc::gen(k).scale(&int(-2 * l as i64));
    }
    series_exp(&s)[deg].scale(&rat(-1, 2 * l as i64))
}

/// α_ℓ = −(1/2ℓ)[u^{ℓ+1}] exp(ℓ Σ_{s≥1} ζ(−s) u^{s+1}).
pub fn alpha(l: u32) -> Rational {
    assert!(l % 2 == 1, "alpha needs odd index");
    let deg = (l + 1) as usize;
    let mut s = vec![SymFunc::zero(); deg + 1];
    for k in 1..deg {
        s[k + 1] = SymFunc::constant(zeta_neg(k) * int(l as i64));
    }
    series_exp(&s)[deg].constant_term() * rat(-1, 2 * l as i64)
}

/// ℓ𝐟_ℓ as a polynomial in the plain power sums p_k (generator k = p_k).
pub fn f_element_symbolic(l: u32) -> SymFunc {
    assert!(l % 2 == 1, "f_element needs odd index");
    let deg = (l + 1) as usize;
    let mut prod = vec![SymFunc::zero(); deg + 1];
    prod[0] = SymFunc::one();
    for j in 1..l {
        let mut lin = vec![SymFunc::zero(); deg + 1];
        lin[0] = SymFunc::one();
        lin[1] = SymFunc::constant(int(-(j as i64)));
        prod = series_mul(&prod, &lin);
    }
    let mut s = vec![SymFunc::zero(); deg + 1];
    for k in (1..=l).step_by(2) {
        // (2/k) p_k t^k (1 − (1 − ℓt)^{−k}); (1−x)^{−k} = Σ C(k+r−1, r) x^r
        for r in 1..=deg {
            let e = k as usize + r;
            if e > deg {
                break;
            }
            let c = crate::exact::big(&crate::exact::binomial((k as usize + r - 1) as u64, r as u64))
                * pow_q(&int(l as i64), r as u32);
            s[e] = s[e].add(&SymFunc::gen(k).scale(&(-c * rat(2, k as i64))));
        }
    }
    series_mul(&prod, &series_exp(&s))[deg].scale(&rat(-1, 2 * l as i64))
}

/// 𝐟_ℓ(λ) from the series formula (so 𝐟₁ = p₁).
pub fn f_element(l: u32, lambda: &Partition) -> Rational {
    f_element_symbolic(l).eval_with(&|k| p_power(k as i32, lambda)) / int(l as i64)
}

/// ϱ_{i,j}(f) = Σ_{ρ ∈ OP, ℓ(ρ)=j, |ρ|=i+j} ∂^j f/∂𝐩_ρ / Aut(ρ).
pub fn rho_op(i: u32, j: u32, f: &SymFunc) -> SymFunc {
    assert!(i % 2 == 0, "rho_op needs even i");
    let mut out = SymFunc::zero();
    for rho in enumerate(Kind::Odd, i + j) {
        if rho.len() as u32 != j {
            continue;
        }
        let d = f.partial_rho(rho.parts());
        if !d.is_zero() {
            out = out.add(&d.scale(&crate::exact::big(&aut_factor(&rho)).recip()));
        }
    }
    out
}

/// ∂₂ = ∂/∂𝐩₁.
pub fn partial2(f: &SymFunc) -> SymFunc {
    f.partial(1)
}

/// 2𝒟 = ∂/∂𝐩₁ + Σ_{ℓ₁,ℓ₂ odd} (ℓ₁+ℓ₂) 𝐩_{ℓ₁+ℓ₂−1} ∂²/∂𝐩_{ℓ₁}∂𝐩_{ℓ₂}.
///
/// The sign of the first-order term is fixed by 𝔡⟨f⟩ = ⟨𝒟f⟩ with 𝔡G₂ = −1/2.
pub fn d_op(f: &SymFunc) -> SymFunc {
    let mut out = f.partial(1);
    let idx: Vec<u32> = {
        let mut v: Vec<u32> = f.terms().keys().flatten().copied().collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    for &a in &idx {
        let fa = f.partial(a);
        for &b in &idx {
            let fab = fa.partial(b);
            if fab.is_zero() {
                continue;
            }
            out = out.add(&fab.mul(&SymFunc::gen(a + b - 1)).scale(&int((a + b) as i64)));
        }
    }
    out.scale(&rat(1, 2))
}

pub fn d_op_pow(f: &SymFunc, j: u32) -> SymFunc {
    (0..j).fold(f.clone(), |g, _| d_op(&g))
}

/// e^𝒟 f = Σ_j 𝒟^j f / j!
pub fn exp_d(f: &SymFunc) -> SymFunc {
    let mut out = SymFunc::zero();
    let mut g = f.clone();
    let mut j = 0u64;
    while !g.is_zero() {
        out = out.add(&g.scale(&factorial_q(j).recip()));
        g = d_op(&g);
        j += 1;
    }
    out
}

/// ⟨f⟩_ℏ = (2πi)^k ℏ^{−k} (e^{(2πi)^{−2}ℏ𝒟} f)(∅) for f homogeneous of weight k,
/// as a polynomial in x = 1/ℏ.
pub fn exp_d_at_empty(f: &SymFunc) -> Result<GrowthPolynomial> {
    if f.is_zero() {
        return Ok(GrowthPolynomial::zero());
    }
    let k = f.weight().ok_or_else(|| Error::Invalid("exp_D_at_empty needs a homogeneous element".into()))?;
    if k % 2 == 1 {
        return Err(Error::Invalid("odd weight".into()));
    }
    let mut out = GrowthPolynomial::zero();
    let mut g = f.clone();
    for j in 0..=k / 2 {
        let v = g.eval_empty() / factorial_q(j as u64);
        if !v.is_zero() {
            let c = PiSquaredPoly::two_pi_i_pow(k - 2 * j).scale(&v);
            out = out.add(&GrowthPolynomial::term(k - j, c));
        }
        g = d_op(&g);
    }
    Ok(out)
}

/// 𝐩-basis element of an element written in the 𝐡-basis (generator ℓ = 𝐡_ℓ).
pub fn from_h_basis(g: &SymFunc) -> SymFunc {
    g.substitute(&h_element)
}

/// 𝐡-basis expression of 𝐩_k.
pub fn p_in_h_basis(k: u32) -> SymFunc {
    // 𝐡_k = 𝐩_k + (terms in 𝐩_j, j < k)
    let lower = h_element(k).sub(&SymFunc::gen(k));
    SymFunc::gen(k).sub(&lower.substitute(&|j| {
        assert!(j < k);
        p_in_h_basis(j)
    }))
}

/// 𝐡-basis expression of an element written in the 𝐩-basis.
pub fn to_h_basis(f: &SymFunc) -> SymFunc {
    f.substitute(&p_in_h_basis)
}

/// All monomials (as sorted index lists) of the given weight.
pub fn monomials_of_weight(k: u32) -> Vec<Monomial> {
    // generator i has weight i+1, so monomials ↔ partitions of k into even parts
    if k % 2 == 1 {
        return Vec::new();
    }
    enumerate(Kind::All, k / 2)
        .into_iter()
        .map(|p| {
            let mut m: Vec<u32> = p.parts().iter().map(|&x| 2 * x - 1).collect();
            m.sort_unstable();
            m
        })
        .collect()
}

/// All monomials of weight ≤ k.
pub fn monomials_up_to(k: u32) -> Vec<Monomial> {
    (0..=k).step_by(2).flat_map(monomials_of_weight).collect()
}
