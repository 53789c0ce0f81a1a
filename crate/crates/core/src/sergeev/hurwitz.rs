//! Weighted spin Hurwitz numbers: the character sum over strict partitions and a
//! brute-force count through lifts to the hyperoctahedral and Sergeev groups.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::perm::{all_perms, compose, cycle_type, representative, Perm};
use crate::error::{Error, Result};
use crate::exact::{int, pow2, Rational};
use crate::partitions::{enumerate, Kind, Partition};
use crate::symfun::{f_element, p_power};

pub const MAX_BRUTEFORCE_DEGREE: u32 = 4;

/// Degree and the odd ramification profiles μ⁽¹⁾,…,μ⁽ⁿ⁾ (padding by ones implicit).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HurwitzProfile {
    pub degree: u32,
    pub entries: Vec<Partition>,
}

impl HurwitzProfile {
    pub fn new(degree: u32, entries: Vec<Partition>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Invalid("degree must be at least 1".into()));
        }
        for mu in &entries {
            if mu.is_empty() || !mu.is_odd() {
                return Err(Error::Invalid(format!("profile entry {mu} must be a nonempty odd partition")));
            }
            if mu.size() > degree {
                return Err(Error::Invalid(format!("profile entry {mu} exceeds degree {degree}")));
            }
        }
        Ok(Self { degree, entries })
    }

    /// Entries separated by ';', parts by ','. The empty string is the
    /// unramified profile.
    pub fn parse(degree: u32, s: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for e in s.split(';').map(str::trim).filter(|e| !e.is_empty()) {
            let parts = e
                .split(',')
                .map(|x| x.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad profile entry {e:?}"))))
                .collect::<Result<Vec<_>>>()?;
            entries.push(Partition::new(parts));
        }
        Self::new(degree, entries)
    }

    /// χ = Σ(ℓ(μ⁽ⁱ⁾) − |μ⁽ⁱ⁾|), always even.
    pub fn chi(&self) -> i64 {
        self.entries.iter().map(|m| m.len() as i64 - m.size() as i64).sum()
    }

    pub fn padded(&self, i: usize) -> Partition {
        self.entries[i].padded(self.degree)
    }
}

impl fmt::Display for HurwitzProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.entries.iter().map(|m| m.to_string()).collect();
        write!(f, "d={} [{}]", self.degree, e.join("; "))
    }
}

/// Function of the monodromy α weighting each tuple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Weight {
    One,
    /// p_k for odd k, including k = −1.
    P(i32),
}

impl Weight {
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let k = match s.as_str() {
            "one" | "1" => return Ok(Weight::One),
            "pminus1" | "p-1" | "p_-1" => -1,
            _ => s
                .strip_prefix('p')
                .and_then(|k| k.parse::<i32>().ok())
                .ok_or_else(|| Error::Parse(format!("unknown weight {s:?}")))?,
        };
        if k % 2 == 0 || k < -1 {
            return Err(Error::Invalid(format!("weight p_{k} must have odd index ≥ −1")));
        }
        Ok(Weight::P(k))
    }

    pub fn eval(&self, cycle_type: &Partition) -> Rational {
        match self {
            Weight::One => int(1),
            Weight::P(k) => p_power(*k, cycle_type),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::One => write!(f, "one"),
            Weight::P(-1) => write!(f, "pminus1"),
            Weight::P(k) => write!(f, "p{k}"),
        }
    }
}

/// 𝐟_μ(λ) for a profile entry: the series element of its nontrivial part, and
/// 𝐟₁ = p₁ when there is none.
fn entry_value(mu: &Partition, lambda: &Partition) -> Result<Rational> {
    match mu.nontrivial().as_slice() {
        [] => Ok(f_element(1, lambda)),
        [l] => Ok(f_element(*l, lambda)),
        _ => Err(Error::Unsupported(format!("multi-part odd class unsupported: {mu}"))),
    }
}

/// 2^{χ/2} Σ_{λ∈SP(d)} (−1)^{ℓ(λ)} ∏ᵢ𝐟_{μ⁽ⁱ⁾}(λ)·f(λ).
pub fn weighted_spin_hurwitz_char(profile: &HurwitzProfile, weight: Weight) -> Result<Rational> {
    let mut s = Rational::zero();
    for lambda in enumerate(Kind::Strict, profile.degree) {
        let mut v = weight.eval(&lambda);
        for mu in &profile.entries {
            v *= entry_value(mu, &lambda)?;
        }
        if lambda.len() % 2 == 1 {
            v = -v;
        }
        s += v;
    }
    Ok(s * pow2(profile.chi() / 2))
}

/// A finite group given by its multiplication table, with the projection of each
/// element to S_d.
struct FinGroup {
    proj: Vec<usize>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    identity: u32,
    /// index of the pure permutation lift of each permutation
    pure: Vec<u32>,
}

impl FinGroup {
    fn order(&self) -> usize {
        self.proj.len()
    }

    fn m(&self, x: u32, y: u32) -> u32 {
        self.mul[x as usize * self.order() + y as usize]
    }

    fn conjugacy_class(&self, x: u32) -> Vec<u32> {
        let mut c: Vec<u32> = (0..self.order() as u32).map(|g| self.m(self.m(g, x), self.inv[g as usize])).collect();
        c.sort_unstable();
        c.dedup();
        c
    }
}

/// Elements ξ^a·σ·εᵉ of Se_d with ξᵢ² = ε, ξᵢξⱼ = εξⱼξᵢ and σξⱼσ⁻¹ = ξ_{σ(j)}.
/// Without `with_eps` this is the quotient B_d; `even` keeps words of even length.
fn clifford_group(d: usize, perms: &[Perm], with_eps: bool, even: bool) -> FinGroup {
    let index: HashMap<&Perm, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let eps_range = if with_eps { 2 } else { 1 };
    let mut elems = Vec::new();
    for (pi, _) in perms.iter().enumerate() {
        for a in 0u32..(1 << d) {
            if even && a.count_ones() % 2 == 1 {
                continue;
            }
            for e in 0..eps_range {
                elems.push((pi, a, e));
            }
        }
    }
    let code = |p: usize, a: u32, e: u32| (p << (d + 1)) | ((a as usize) << 1) | e as usize;
    let mut local = vec![u32::MAX; perms.len() << (d + 1)];
    for (i, &(p, a, e)) in elems.iter().enumerate() {
        local[code(p, a, e)] = i as u32;
    }
    let n = elems.len();
    let mut mul = vec![0u32; n * n];
    for (i, &(s, a, e)) in elems.iter().enumerate() {
        let sigma = &perms[s];
        for (j, &(t, b, f)) in elems.iter().enumerate() {
            // σ ξ^b σ⁻¹ = ± ξ^c
            let imgs: Vec<u8> = (0..d).filter(|k| b >> k & 1 == 1).map(|k| sigma[k]).collect();
            let mut sign = 0u32;
            for x in 0..imgs.len() {
                for y in x + 1..imgs.len() {
                    sign += (imgs[x] > imgs[y]) as u32;
                }
            }
            let c: u32 = imgs.iter().map(|&k| 1u32 << k).sum();
            // ξ^a ξ^c: reorder, then ξᵢ² = ε
            for x in 0..d {
                if a >> x & 1 == 1 {
                    sign += (c & ((1u32 << x) - 1)).count_ones();
                }
            }
            sign += (a & c).count_ones();
            let p = index[&compose(sigma, &perms[t])];
            let eps = if with_eps { (e + f + sign) % 2 } else { 0 };
            mul[i * n + j] = local[code(p, a ^ c, eps)];
        }
    }
    let identity = local[code(index[&super::perm::identity(d)], 0, 0)];
    let inv = (0..n)
        .map(|i| (0..n as u32).find(|&j| mul[i * n + j as usize] == identity).expect("group inverse"))
        .collect();
    let pure = (0..perms.len()).map(|p| local[code(p, 0, 0)]).collect();
    FinGroup { proj: elems.iter().map(|x| x.0).collect(), mul, inv, identity, pure }
}

/// Number of lifted Hurwitz tuples, by the permutation underlying α.
fn lifted_counts(g: &FinGroup, classes: &[Vec<u32>], nperms: usize) -> Vec<u64> {
    let n = g.order();
    let mut prod = vec![0u64; n];
    prod[g.identity as usize] = 1;
    for c in classes {
        let mut next = vec![0u64; n];
        for (x, &k) in prod.iter().enumerate() {
            if k != 0 {
                for &y in c {
                    next[g.m(x as u32, y) as usize] += k;
                }
            }
        }
        prod = next;
    }
    let mut per_perm = vec![0u64; nperms];
    for a in 0..n as u32 {
        let ai = g.inv[a as usize];
        let mut acc = 0u64;
        for b in 0..n as u32 {
            let comm = g.m(g.m(a, b), g.m(ai, g.inv[b as usize]));
            acc += prod[g.inv[comm as usize] as usize];
        }
        per_perm[g.proj[a as usize]] += acc;
    }
    per_perm
}

/// B_d, B_d⁰, Se_d, Se_d⁰ with their signs in the lifting identity; built once per degree.
fn lifting_groups(d: usize) -> Arc<Vec<(FinGroup, i64)>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<(FinGroup, i64)>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(g) = cache.lock().expect("group cache").get(&d) {
        return g.clone();
    }
    let perms = all_perms(d);
    let gs: Vec<(FinGroup, i64)> = [(false, false, 1), (false, true, -1), (true, false, -1), (true, true, 1)]
        .into_iter()
        .map(|(e, ev, s)| (clifford_group(d, &perms, e, ev), s))
        .collect();
    let gs = Arc::new(gs);
    cache.lock().expect("group cache").insert(d, gs.clone());
    gs
}

/// (1/d!) Σ_h (−1)^{s(h)} f(α) by enumerating lifts of Hurwitz tuples to B_d,
/// B_d⁰, Se_d and Se_d⁰. An entry without nontrivial part marks a regular point
/// and counts the d choices of its preimage, matching 𝐟₁ = p₁.
pub fn hurwitz_bruteforce(profile: &HurwitzProfile, weight: Weight) -> Result<Rational> {
    Ok(hurwitz_bruteforce_weights(profile, &[weight])?.remove(0))
}

/// The brute-force value for several weights from a single enumeration.
pub fn hurwitz_bruteforce_weights(profile: &HurwitzProfile, weights: &[Weight]) -> Result<Vec<Rational>> {
    let d = profile.degree as usize;
    if profile.degree > MAX_BRUTEFORCE_DEGREE {
        return Err(Error::Unsupported(format!(
            "brute force infeasible for degree {d} (limit {MAX_BRUTEFORCE_DEGREE})"
        )));
    }
    let perms = all_perms(d);
    let index: HashMap<&Perm, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let reps: Vec<usize> = (0..profile.entries.len())
        .map(|i| index[&representative(d, &profile.padded(i))])
        .collect();
    // Σ_G ± (lifted counts)/|G| per permutation
    let mut per_perm = vec![Rational::zero(); perms.len()];
    for (g, sign) in lifting_groups(d).iter() {
        let classes: Vec<Vec<u32>> = reps.iter().map(|&r| g.conjugacy_class(g.pure[r])).collect();
        let order = int(g.order() as i64);
        for (acc, k) in per_perm.iter_mut().zip(lifted_counts(g, &classes, perms.len())) {
            *acc += int(*sign * k as i64) / &order;
        }
    }
    let marking: i64 = profile
        .entries
        .iter()
        .map(|m| if m.nontrivial().is_empty() { d as i64 } else { 1 })
        .product();
    let scale = pow2(profile.chi() / 2) * int(marking);
    Ok(weights
        .iter()
        .map(|w| {
            let s: Rational = perms.iter().zip(&per_perm).map(|(p, c)| w.eval(&cycle_type(p)) * c).sum();
            s * &scale
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clifford_group_is_associative() {
        let perms = all_perms(3);
        let g = clifford_group(3, &perms, true, false);
        assert_eq!(g.order(), 96);
        let n = g.order() as u32;
        for x in (0..n).step_by(7) {
            for y in (0..n).step_by(5) {
                for z in (0..n).step_by(11) {
                    assert_eq!(g.m(g.m(x, y), z), g.m(x, g.m(y, z)));
                }
            }
        }
    }

    #[test]
    fn parse_profiles_and_weights() {
        let h = HurwitzProfile::parse(4, "3;1").unwrap();
        assert_eq!(h.chi(), -2);
        assert!(HurwitzProfile::parse(3, "2").is_err());
        assert_eq!(Weight::parse("pminus1").unwrap(), Weight::P(-1));
        assert!(Weight::parse("p2").is_err());
    }
}
