//! The generating series 𝒜_I in the 𝐡-basis, the spin constants computed from
//! them, and the volume differences vol^±.
//!
//! Coefficients of 𝒜_I are `SymFunc`s whose generator ℓ stands for 𝐡_ℓ.
//!
//! Normalizations used throughout (see README):
//! - ⟨𝐡_{m₁}|⋯|𝐡_{m_n}⟩_L = ½ [z^μ] 𝒜_n |_{𝐡_ℓ ↦ 2α_ℓ}
//! - ⟨p₋₁|𝐡_{m₁}|⋯|𝐡_{m_n}⟩_L = (1/48) [z^μ] ∂₂(𝒜_n |_{𝐡_ℓ ↦ 2𝐡_ℓ}) at ∅
//! - vol^±(μ) = 2^{χ/2} ⟨𝐡_{m₁}|⋯|𝐡_{m_n}⟩_L / |μ|
//! - the c₀ numerator −4π² c₀^± vol = −12 · 2^{χ/2} ⟨p₋₁|𝐡_{m₁}|⋯⟩_L / |μ|

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::brackets::{l_bracket, ConnectedSpec};
use crate::error::{Error, Result};
use crate::exact::{factorial_q, int, pow2, rat, Rational};
use crate::symfun::{alpha, from_h_basis, h_element, partial2, SymFunc};

/// A signature μ = (m₁,…,m_n) with odd positive entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OddSignature(Vec<u32>);

impl OddSignature {
    pub fn new(mu: Vec<u32>) -> Result<Self> {
        if mu.is_empty() || mu.iter().any(|&m| m == 0 || m % 2 == 0) {
            return Err(Error::Invalid(format!("signature {mu:?} must be nonempty with odd positive entries")));
        }
        Ok(Self(mu))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// χ = n − |μ| = 2 − 2g
    pub fn chi(&self) -> i64 {
        self.n() as i64 - self.size() as i64
    }

    pub fn genus(&self) -> i64 {
        (2 - self.chi()) / 2
    }

    pub fn two_pow_half_chi(&self) -> Rational {
        pow2(self.chi() / 2)
    }
}

/// [z_i^a z_j^b] of 𝒜_{{i,j}}, from (N/D) − 1 with
/// N = 1 + Σ_ℓ ℓ𝐡_ℓ S_ℓ, D = 1 − Σ_ℓ 𝐡_ℓ S_ℓ, S_ℓ = Σ_{p+q=ℓ−1} z_i^{p+1} z_j^{q+1}.
fn pair_series(deg: u32) -> BTreeMap<(u32, u32), SymFunc> {
    type S = BTreeMap<(u32, u32), SymFunc>;
    fn mul(a: &S, b: &S, deg: u32) -> S {
        let mut r: S = BTreeMap::new();
        for (e1, p1) in a {
            for (e2, p2) in b {
                let e = (e1.0 + e2.0, e1.1 + e2.1);
                if e.0 + e.1 > deg {
                    continue;
                }
                let t = p1.mul(p2);
                let x = r.entry(e).or_default();
                *x = x.add(&t);
            }
        }
        r.retain(|_, v| !v.is_zero());
        r
    }
    fn add(a: &mut S, b: &S) {
        for (e, p) in b {
            let x = a.entry(*e).or_default();
            *x = x.add(p);
        }
        a.retain(|_, v| !v.is_zero());
    }
    let one: S = BTreeMap::from([((0, 0), SymFunc::one())]);
    let mut num = one.clone();
    let mut den_tail: S = BTreeMap::new();
    for l in (1..deg).step_by(2) {
        for p in 0..l {
            let e = (p + 1, l - p);
            if e.0 + e.1 > deg {
                continue;
            }
            add(&mut num, &BTreeMap::from([(e, SymFunc::gen(l).scale(&int(l as i64)))]));
            add(&mut den_tail, &BTreeMap::from([(e, SymFunc::gen(l))]));
        }
    }
    // 1/D = Σ_k (den_tail)^k; each factor raises the degree by ≥ 2
    let mut inv = one.clone();
    let mut pw = one;
    for _ in 0..deg / 2 {
        pw = mul(&pw, &den_tail, deg);
        add(&mut inv, &pw);
    }
    let mut r = mul(&num, &inv, deg);
    r.remove(&(0, 0));
    r
}

fn pair_cache() -> &'static Mutex<(u32, BTreeMap<(u32, u32), SymFunc>)> {
    static C: OnceLock<Mutex<(u32, BTreeMap<(u32, u32), SymFunc>)>> = OnceLock::new();
    C.get_or_init(|| Mutex::new((0, BTreeMap::new())))
}

/// [z^a] of 𝒜_{{i}} = z^{−1} + Σ_s 𝐡_{2s+1} z^{2s+1}.
pub fn a_single_coeff(a: i64) -> SymFunc {
    if a == -1 {
        SymFunc::one()
    } else if a >= 1 && a % 2 == 1 {
        SymFunc::gen(a as u32)
    } else {
        SymFunc::zero()
    }
}

/// [z_i^a z_j^b] 𝒜_{{i,j}}.
pub fn a_pair_coeff(a: u32, b: u32) -> SymFunc {
    let need = (a + b).max(2);
    let mut c = pair_cache().lock().expect("pair cache");
    if c.0 < need {
        *c = (need.max(2 * c.0), pair_series(need.max(2 * c.0)));
    }
    c.1.get(&(a, b)).cloned().unwrap_or_default()
}

/// The truncated series 𝒜_{{i,j}} up to total degree `deg`.
pub fn a_pair(deg: u32) -> BTreeMap<(u32, u32), SymFunc> {
    pair_series(deg)
}

fn general_cache() -> &'static Mutex<HashMap<Vec<u32>, SymFunc>> {
    static C: OnceLock<Mutex<HashMap<Vec<u32>, SymFunc>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Ordered tuples (I₁,…,I_k) of disjoint nonempty sets covering `items`.
fn ordered_set_partitions(items: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for sp in crate::partitions::set_partitions(items.len()) {
        let blocks: Vec<Vec<usize>> = sp.iter().map(|b| b.iter().map(|&i| items[i]).collect()).collect();
        permute(&blocks, &mut Vec::new(), &mut vec![false; blocks.len()], &mut out);
    }
    out
}

fn permute(blocks: &[Vec<usize>], cur: &mut Vec<Vec<usize>>, used: &mut Vec<bool>, out: &mut Vec<Vec<Vec<usize>>>) {
    if cur.len() == blocks.len() {
        out.push(cur.clone());
        return;
    }
    for i in 0..blocks.len() {
        if !used[i] {
            used[i] = true;
            cur.push(blocks[i].clone());
            permute(blocks, cur, used, out);
            cur.pop();
            used[i] = false;
        }
    }
}

/// Odd tuples (ℓ₁,…,ℓ_k) with Σ(ℓ_t + 1) ≤ budget.
fn odd_tuples(k: usize, budget: i64) -> Vec<Vec<u32>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut l = 1u32;
    while (l as i64 + 1) <= budget {
        for mut rest in odd_tuples(k - 1, budget - l as i64 - 1) {
            rest.insert(0, l);
            out.push(rest);
        }
        l += 2;
    }
    out
}

/// [∏ z_i^{a_i}] 𝒜_I for |I| = a.len() ≥ 1 (positive exponents when |I| ≥ 2).
pub fn a_coeff(a: &[u32]) -> SymFunc {
    match a.len() {
        0 => SymFunc::zero(),
        1 => a_single_coeff(a[0] as i64),
        2 => a_pair_coeff(a[0], a[1]),
        _ => {
            let mut key = a.to_vec();
            key.sort_unstable();
            if let Some(v) = general_cache().lock().expect("cache").get(&key) {
                return v.clone();
            }
            let v = a_general_coeff(&key);
            general_cache().lock().expect("cache").insert(key, v.clone());
            v
        }
    }
}

/// 𝒜_I = (1/(n−1)) Σ_{r<s} Σ_k (1/k!) Σ_{(I₁,…,I_k)} Σ_ℓ⃗ ∂_{𝐡_ℓ⃗}𝒜_{{r,s}} ∏_t [w^{ℓ_t}] 𝒜_{I_t ∪ {w}}
fn a_general_coeff(a: &[u32]) -> SymFunc {
    let n = a.len();
    let mut total = SymFunc::zero();
    for r in 0..n {
        for s in r + 1..n {
            let rest: Vec<usize> = (0..n).filter(|&i| i != r && i != s).collect();
            let pair = a_pair_coeff(a[r], a[s]);
            if pair.is_zero() {
                continue;
            }
            let budget = (a[r] + a[s] + 2) as i64;
            for blocks in ordered_set_partitions(&rest) {
                let k = blocks.len();
                let inv_k = factorial_q(k as u64).recip();
                for ls in odd_tuples(k, budget) {
                    let mut d = pair.clone();
                    for &l in &ls {
                        d = d.partial(l);
                        if d.is_zero() {
                            break;
                        }
                    }
                    if d.is_zero() {
                        continue;
                    }
                    let mut term = d;
                    for (blk, &l) in blocks.iter().zip(&ls) {
                        let mut sub: Vec<u32> = blk.iter().map(|&i| a[i]).collect();
                        sub.push(l);
                        let c = a_coeff(&sub);
                        term = term.mul(&c);
                        if term.is_zero() {
                            break;
                        }
                    }
                    total = total.add(&term.scale(&inv_k));
                }
            }
        }
    }
    total.scale(&rat(1, n as i64 - 1))
}

/// Substitute 𝐡_ℓ ↦ c·α_ℓ in an 𝐡-basis element.
pub fn subst_alpha(f: &SymFunc, c: &Rational) -> Rational {
    f.eval_with(&|l| c * alpha(l))
}

/// ⟨𝐡_{m₁}|⋯|𝐡_{m_n}⟩_L from the generating series.
pub fn h_l_genfun(mu: &OddSignature) -> Rational {
    subst_alpha(&a_coeff(mu.entries()), &int(2)) / int(2)
}

/// ⟨p₋₁|𝐡_{m₁}|⋯|𝐡_{m_n}⟩_L from the generating series.
pub fn pminus1_l_genfun(mu: &OddSignature) -> Rational {
    let c = a_coeff(mu.entries());
    let scaled = c.substitute(&|l| SymFunc::gen(l).scale(&int(2)));
    partial2(&from_h_basis(&scaled)).eval_empty() / int(48)
}

/// ⟨𝐡_{m₁}|⋯⟩_L from brackets.
pub fn h_l_bracket(mu: &OddSignature) -> Result<Rational> {
    l_bracket(&ConnectedSpec::plain(mu.entries().iter().map(|&m| h_element(m)).collect()))
}

/// ⟨p₋₁|𝐡_{m₁}|⋯⟩_L from brackets.
pub fn pminus1_l_bracket(mu: &OddSignature) -> Result<Rational> {
    l_bracket(&ConnectedSpec::with_pminus1(mu.entries().iter().map(|&m| h_element(m)).collect()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Bracket,
    Genfun,
}

fn numerator_from_l(mu: &OddSignature, l: &Rational) -> Rational {
    int(-12) * mu.two_pow_half_chi() * l / int(mu.size() as i64)
}

/// −4π² c₀^±(μ) vol(μ), the volume-free c₀ numerator.
pub fn c0_numerator(mu: &OddSignature, route: Route) -> Result<Rational> {
    let l = match route {
        Route::Bracket => pminus1_l_bracket(mu)?,
        Route::Genfun => pminus1_l_genfun(mu),
    };
    Ok(numerator_from_l(mu, &l))
}

/// The genfun formula read literally: 2^{χ/2}/(4|μ|) [z^μ] ∂₂𝒜_n|_{𝐡↦α}.
pub fn c0_numerator_genfun_literal(mu: &OddSignature) -> Rational {
    let c = from_h_basis(&a_coeff(mu.entries()));
    let d = crate::symfun::to_h_basis(&partial2(&c));
    mu.two_pow_half_chi() * subst_alpha(&d, &Rational::one()) / int(4 * mu.size() as i64)
}

/// c₀^± as a multiple of π^{−2}, given the non-spin volume vol(μ).
pub fn c0_pm(mu: &OddSignature, vol_mu: &Rational, route: Route) -> Result<Rational> {
    if vol_mu.is_zero() {
        return Err(Error::Invalid("volume must be nonzero".into()));
    }
    Ok(c0_numerator(mu, route)? / (int(-4) * vol_mu))
}

/// vol^±(μ) = 2^{χ/2} ⟨𝐡_{m₁}|⋯|𝐡_{m_n}⟩_L / |μ|.
pub fn vol_pm(mu: &OddSignature) -> Rational {
    mu.two_pow_half_chi() * h_l_genfun(mu) / int(mu.size() as i64)
}

/// c_i = m_i c₀ and c_cyl = |μ| c₀.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedConstants {
    pub c0: Rational,
    pub c_i: Vec<Rational>,
    pub c_cyl: Rational,
}

pub fn derived_constants(c0: &Rational, mu: &OddSignature) -> DerivedConstants {
    DerivedConstants {
        c0: c0.clone(),
        c_i: mu.entries().iter().map(|&m| c0 * int(m as i64)).collect(),
        c_cyl: c0 * int(mu.size() as i64),
    }
}

/// Every odd signature (entries weakly decreasing) with |μ| ≤ max_size and n ≤ max_n.
pub fn odd_signatures(max_size: u32, max_n: usize) -> Vec<OddSignature> {
    let mut out = Vec::new();
    for d in 1..=max_size {
        for p in crate::partitions::enumerate(crate::partitions::Kind::Odd, d) {
            if p.len() <= max_n {
                out.push(OddSignature(p.parts().to_vec()));
            }
        }
    }
    out
}
