//! The genus-0 functions f, φ and φ^± with their closed base cases and the
//! two-vertex recursions.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{factorial_q, int, Rational};
use crate::partitions::subsets;

type Cache = Mutex<HashMap<Vec<i64>, Rational>>;

fn f_cache() -> &'static Cache {
    static C: OnceLock<Cache> = OnceLock::new();
    C.get_or_init(Default::default)
}

fn phi_cache(spin: bool) -> &'static Cache {
    static A: OnceLock<Cache> = OnceLock::new();
    static B: OnceLock<Cache> = OnceLock::new();
    if spin { B.get_or_init(Default::default) } else { A.get_or_init(Default::default) }
}

pub fn check_f_domain(mu: &[i64]) -> Result<()> {
    let n = mu.len() as i64;
    if n < 3 || mu[0] <= 0 || mu[1] <= 0 || mu.contains(&0) || mu.iter().sum::<i64>() != n - 2 {
        return Err(Error::Invalid(format!("f undefined at {mu:?}")));
    }
    Ok(())
}

/// (n−3)! [t^{m₂}] ∏_{i>2} t(1 − t^{−m_i})/(1 − t), all m_i < 0 for i > 2.
fn f_base(mu: &[i64]) -> Rational {
    let mut poly = vec![1i64];
    for &m in &mu[2..] {
        let mut fac = vec![0i64];
        fac.extend(std::iter::repeat(1).take((-m) as usize));
        let mut next = vec![0i64; poly.len() + fac.len() - 1];
        for (i, a) in poly.iter().enumerate() {
            for (j, b) in fac.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        poly = next;
    }
    let c = poly.get(mu[1] as usize).copied().unwrap_or(0);
    factorial_q(mu.len() as u64 - 3) * int(c)
}

/// f(μ) for μ = (m₁, m₂, …) with m₁, m₂ > 0, no zero entry and |μ| = n − 2.
pub fn f_value(mu: &[i64]) -> Result<Rational> {
    check_f_domain(mu)?;
    Ok(f_cached(mu))
}

fn f_key(mu: &[i64]) -> Vec<i64> {
    let mut k = mu.to_vec();
    k[2..].sort_unstable();
    k
}

fn f_cached(mu: &[i64]) -> Rational {
    let key = f_key(mu);
    if let Some(v) = f_cache().lock().expect("f cache").get(&key) {
        return v.clone();
    }
    let v = match key[2..].iter().position(|&m| m > 0) {
        None => f_base(&key),
        Some(p) => f_recursive(&key, 2 + p, 1),
    };
    f_cache().lock().expect("f cache").insert(key, v.clone());
    v
}

/// One split of type f_i: μ(v₋₁), μ(v₀) and the edge twist.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FSplit {
    pub lower: Vec<i64>,
    pub upper: Vec<i64>,
    pub m_e: i64,
}

/// All graphs of type f_i compatible with μ, with `third` the position of the
/// positive entry playing the role of leg 3 and `pivot` the position of leg i
/// (0-based; pivot ≠ 0, pivot ≠ third, μ[pivot] > 0).
pub fn f_type_splits(mu: &[i64], third: usize, pivot: usize) -> Vec<FSplit> {
    let others: Vec<usize> = (1..mu.len()).filter(|&j| j != third && j != pivot).collect();
    let mut out = Vec::new();
    for (s, o) in subsets(&others) {
        if o.is_empty() {
            continue;
        }
        let so: i64 = o.iter().map(|&j| mu[j]).sum();
        let m_e = o.len() as i64 - mu[third] - so;
        if m_e <= 0 {
            continue;
        }
        let mut lower = vec![mu[0], mu[pivot]];
        lower.extend(s.iter().map(|&j| mu[j]));
        lower.push(-m_e);
        let mut upper = vec![m_e, mu[third]];
        upper.extend(o.iter().map(|&j| mu[j]));
        out.push(FSplit { lower, upper, m_e });
    }
    out
}

fn f_recursive(mu: &[i64], third: usize, pivot: usize) -> Rational {
    let mut tot = Rational::zero();
    for s in f_type_splits(mu, third, pivot) {
        let a = f_cached(&s.lower);
        if a.is_zero() {
            continue;
        }
        tot += a * f_cached(&s.upper);
    }
    tot * int(mu[third])
}

/// f(μ) computed with an explicit choice of leg 3 and of the pivot leg i. The
/// result does not depend on the choice; this is used as a self-test.
pub fn f_with_pivot(mu: &[i64], third: usize, pivot: usize) -> Result<Rational> {
    check_f_domain(mu)?;
    if third < 2 || third >= mu.len() || mu[third] <= 0 || pivot == 0 || pivot == third || pivot >= mu.len() || mu[pivot] <= 0 {
        return Err(Error::Invalid(format!("bad pivot ({third},{pivot}) for {mu:?}")));
    }
    Ok(f_recursive(mu, third, pivot))
}

/// Both sides of the exchange identity Σ_{f₂}(m_e + m₃)f(Γ) = Σ_{f₃'}(m_e + m₂)f(Γ)
/// for m₁, m₂, m₃ > 0.
pub fn exchange_sides(mu: &[i64]) -> Result<(Rational, Rational)> {
    check_f_domain(mu)?;
    if mu.len() < 3 || mu[2] <= 0 {
        return Err(Error::Invalid("exchange identity needs m₃ > 0".into()));
    }
    let side = |third: usize, pivot: usize| {
        let mut tot = Rational::zero();
        for s in f_type_splits(mu, third, pivot) {
            tot += int(s.m_e + mu[third]) * f_cached(&s.lower) * f_cached(&s.upper);
        }
        tot
    };
    // type f₃' is type f₂ with the roles of legs 2 and 3 swapped
    Ok((side(2, 1), side(1, 2)))
}

pub fn check_phi_domain(mu: &[i64], spin: bool) -> Result<()> {
    let len = mu.len();
    let bad = || Err(Error::Invalid(format!("phi{} undefined at {mu:?}", if spin { "^±" } else { "" })));
    if len < 3 || mu[0] <= 0 {
        return bad();
    }
    let n = len as i64 - 2;
    let (a, b) = (mu[len - 2], mu[len - 1]);
    let mids = &mu[1..len - 2];
    if a > 0 || b > 0 || mids.contains(&0) || mu.iter().sum::<i64>() != n {
        return bad();
    }
    if spin && (a != 0 || b != 0 || mu[..len - 2].iter().any(|m| m.rem_euclid(2) == 0)) {
        return bad();
    }
    Ok(())
}

/// φ(μ) (spin = false) or φ^±(μ) (spin = true) for μ = (m₁, …, m_{n+1}, m_{n+2}).
///
/// Spin conventions: the base case is (−1)ⁿ(n−1)! and graphs of type φ₂
/// carry a sign −1. These are the signs under which the spin backbone sums
/// agree with the odd chain sums (see README).
pub fn phi_value(mu: &[i64], spin: bool) -> Result<Rational> {
    check_phi_domain(mu, spin)?;
    Ok(phi_cached(mu, spin))
}

fn phi_key(mu: &[i64]) -> Vec<i64> {
    let len = mu.len();
    let mut k = mu.to_vec();
    k[1..len - 2].sort_unstable();
    k
}

fn fv(mu: &[i64]) -> Rational {
    if check_f_domain(mu).is_err() {
        return Rational::zero();
    }
    f_cached(mu)
}

fn phi_cached(mu: &[i64], spin: bool) -> Rational {
    let key = phi_key(mu);
    if let Some(v) = phi_cache(spin).lock().expect("phi cache").get(&key) {
        return v.clone();
    }
    let v = phi_compute(&key, spin);
    phi_cache(spin).lock().expect("phi cache").insert(key, v.clone());
    v
}

fn cat(parts: &[&[i64]]) -> Vec<i64> {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}

fn phi_compute(mu: &[i64], spin: bool) -> Rational {
    let len = mu.len();
    let n = len as i64 - 2;
    let m1 = mu[0];
    let (a, b) = (mu[len - 2], mu[len - 1]);
    let mids = &mu[1..len - 2];
    let Some(p) = mids.iter().position(|&m| m > 0) else {
        let fact = factorial_q((n - 1) as u64);
        return if spin {
            if n % 2 == 0 { fact } else { -fact }
        } else {
            fact * mids.iter().fold(int(1), |acc, &m| acc * int(-m))
        };
    };
    let m2 = mids[p];
    let others: Vec<i64> = mids.iter().enumerate().filter(|&(j, _)| j != p).map(|(_, &m)| m).collect();
    let mut tot = Rational::zero();
    for (s, o) in subsets(&others) {
        let (ss, so): (i64, i64) = (s.iter().sum(), o.iter().sum());
        // φ₁ with n+2 on the lower vertex
        let me = o.len() as i64 - m2 - so;
        if me > 0 && !o.is_empty() {
            let lower = cat(&[&[m1], &s, &[-me, a, b]]);
            let upper = cat(&[&[m2, me], &o]);
            tot += phi_cached(&lower, spin) * fv(&upper);
        }
        if !spin {
            // φ₁ with n+2 on the upper vertex
            if b < 0 {
                let me = o.len() as i64 + 1 - m2 - so - b;
                if me > 0 {
                    let lower = cat(&[&[m1], &s, &[a, -me]]);
                    let upper = cat(&[&[m2, me], &o, &[b]]);
                    tot += phi_cached(&lower, spin) * fv(&upper);
                }
            }
            // φ₁'
            if a < 0 {
                let me = o.len() as i64 + 1 - m1 - so - a;
                if me > 0 {
                    let lower = cat(&[&[m2], &s, &[b, -me]]);
                    let upper = cat(&[&[m1, me], &o, &[a]]);
                    tot += phi_cached(&lower, spin) * fv(&upper);
                }
            }
        }
        // φ₂
        if m1 + ss + a == s.len() as i64 + 1 {
            let left = cat(&[&[m1], &s, &[a, 0]]);
            let right = cat(&[&[m2], &o, &[0, b]]);
            let t = phi_cached(&left, spin) * phi_cached(&right, spin);
            if spin { tot -= t } else { tot += t }
        }
    }
    if !spin {
        // φ₃
        for (s1, rest) in subsets(&others) {
            for (s2, s0) in subsets(&rest) {
                if s0.is_empty() {
                    continue;
                }
                let e1 = m1 + s1.iter().sum::<i64>() + a - (s1.len() as i64 + 1);
                let e2 = m2 + s2.iter().sum::<i64>() + b - (s2.len() as i64 + 1);
                if e1 <= 0 || e2 <= 0 {
                    continue;
                }
                let v1 = cat(&[&[m1], &s1, &[a, -e1]]);
                let v0 = cat(&[&[e1, e2], &s0]);
                let v2 = cat(&[&[m2], &s2, &[-e2, b]]);
                tot += int(e1 + e2) * phi_cached(&v1, spin) * fv(&v0) * phi_cached(&v2, spin);
            }
        }
    }
    tot * int(m2)
}
