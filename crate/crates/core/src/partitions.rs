//! Integer partitions (general, strict, odd) and set partitions with Möbius weights.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::exact::{factorial, Rational};

/// Weakly decreasing list of positive parts. Serializes as a JSON array.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    All,
    Strict,
    Odd,
}

impl Partition {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// Sorts the parts; zero parts are dropped.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_strict(&self) -> bool {
        self.0.windows(2).all(|w| w[0] > w[1])
    }

    pub fn is_odd(&self) -> bool {
        self.0.iter().all(|p| p % 2 == 1)
    }

    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// r_m(λ)
    pub fn mult(&self, m: u32) -> u32 {
        self.0.iter().filter(|&&p| p == m).count() as u32
    }

    /// Pads with ones up to size d.
    pub fn padded(&self, d: u32) -> Self {
        let mut v = self.0.clone();
        v.extend(std::iter::repeat(1).take(d.saturating_sub(self.size()) as usize));
        Self(v)
    }

    /// Parts greater than one.
    pub fn nontrivial(&self) -> Vec<u32> {
        self.0.iter().copied().filter(|&p| p > 1).collect()
    }

    pub fn product(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).product()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

/// All partitions of `size` of the given kind, lexicographically decreasing.
pub fn enumerate(kind: Kind, size: u32) -> Vec<Partition> {
    fn rec(kind: Kind, rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            if kind == Kind::Odd && p % 2 == 0 {
                continue;
            }
            cur.push(p);
            let next_max = if kind == Kind::Strict { p - 1 } else { p };
            rec(kind, rest - p, next_max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(kind, size, size, &mut Vec::new(), &mut out);
    out
}

/// Strict partitions of every size ≤ n.
pub fn strict_up_to(n: u32) -> Vec<Partition> {
    (0..=n).flat_map(|d| enumerate(Kind::Strict, d)).collect()
}

/// z_ρ = ∏ m^{r_m} r_m!
pub fn z_factor(rho: &Partition) -> Rational {
    let mut z = BigInt::from(1);
    for (m, r) in rho.multiplicities() {
        z *= BigInt::from(m).pow(r) * factorial(r as u64);
    }
    Rational::from_integer(z)
}

/// ∏ r_m(ρ)!
pub fn aut_factor(rho: &Partition) -> BigInt {
    rho.multiplicities().values().map(|&r| factorial(r as u64)).product()
}

/// Blocks are sorted lists of 0-based indices; blocks ordered by their minimum.
pub type SetPartition = Vec<Vec<usize>>;

/// All set partitions of {0,…,n−1}.
pub fn set_partitions(n: usize) -> Vec<SetPartition> {
    let mut out: Vec<SetPartition> = vec![Vec::new()];
    for i in 0..n {
        let mut next = Vec::new();
        for sp in out {
            for b in 0..sp.len() {
                let mut s = sp.clone();
                s[b].push(i);
                next.push(s);
            }
            let mut s = sp;
            s.push(vec![i]);
            next.push(s);
        }
        out = next;
    }
    out
}

/// μ(α) = (−1)^{ℓ(α)−1}(ℓ(α)−1)!
pub fn mobius(blocks: usize) -> BigInt {
    let f = factorial(blocks as u64 - 1);
    if blocks % 2 == 0 {
        -f
    } else {
        f
    }
}

pub fn set_partitions_with_mobius(n: usize) -> Vec<(SetPartition, BigInt)> {
    set_partitions(n)
        .into_iter()
        .map(|sp| {
            let w = mobius(sp.len());
            (sp, w)
        })
        .collect()
}

/// All ways to split `items` into (chosen, rest), preserving order.
pub fn subsets<T: Clone>(items: &[T]) -> Vec<(Vec<T>, Vec<T>)> {
    let n = items.len();
    (0u32..(1 << n))
        .map(|mask| {
            let mut a = Vec::new();
            let mut b = Vec::new();
            for (i, x) in items.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    a.push(x.clone());
                } else {
                    b.push(x.clone());
                }
            }
            (a, b)
        })
        .collect()
}

/// Ordered k-tuples of pairwise disjoint, possibly empty, subsets covering `items`.
pub fn labeled_splits<T: Clone>(items: &[T], k: usize) -> Vec<Vec<Vec<T>>> {
    let mut out = vec![vec![Vec::new(); k]];
    if k == 0 {
        return if items.is_empty() { out } else { Vec::new() };
    }
    for x in items {
        let mut next = Vec::with_capacity(out.len() * k);
        for s in &out {
            for j in 0..k {
                let mut t = s.clone();
                t[j].push(x.clone());
                next.push(t);
            }
        }
        out = next;
    }
    out
}

/// Compositions of `total` into exactly k positive parts.
pub fn compositions(total: i64, k: usize) -> Vec<Vec<i64>> {
    if k == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for x in 1..=(total - k as i64 + 1) {
        for mut r in compositions(total - x, k - 1) {
            r.insert(0, x);
            out.push(r);
        }
    }
    out
}
