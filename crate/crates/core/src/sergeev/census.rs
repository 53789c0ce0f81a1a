//! Horizontal cylinders of square-tiled surfaces given by Hurwitz tuples, with
//! branch points on n distinct horizontal levels of the torus.
//!
//! Band j (0 ≤ j < n) lies between levels j and j+1 and has monodromy
//! α_j = α·γ₁⋯γ_j. A cycle of α_j continues into band j+1 when it avoids the
//! support of γ_{j+1}; across the last level a cycle c of α_n = (αβ)α(αβ)⁻¹
//! continues as the cycle (αβ)⁻¹(c) of α_0.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use super::hurwitz::HurwitzProfile;
use super::perm::{all_perms, compose, cycle_type, cycles, inverse, transitive, Perm};
use crate::error::{Error, Result};
use crate::exact::{int, rat, serde_rational, Rational};

pub const MAX_CENSUS_WORK: u128 = 200_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusCylinder {
    pub width: u32,
    #[serde(with = "serde_rational")]
    pub height: Rational,
    /// f_i(Z) for i = 1..n
    pub f: Vec<u32>,
}

/// Aggregate over cylinders sharing the same vector (f_1,…,f_n).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub f: Vec<u32>,
    pub cylinders: u64,
    #[serde(with = "serde_rational")]
    pub sum_height_over_width: Rational,
    #[serde(with = "serde_rational")]
    pub sum_area: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub profile: HurwitzProfile,
    /// connected Hurwitz tuples
    pub tuples: u64,
    pub cylinders: u64,
    pub rows: Vec<CensusRow>,
    /// Σ_Z Σ_i f_i(Z)/2 over all cylinders
    #[serde(with = "serde_rational")]
    pub half_f_total: Rational,
    pub min_f_sum: u32,
    pub max_f_sum: u32,
    /// every tuple's cylinder areas add up to d
    pub areas_consistent: bool,
}

fn support(p: &[u8]) -> u64 {
    p.iter().enumerate().filter(|(i, &x)| *i as u8 != x).map(|(i, _)| 1u64 << i).sum()
}

fn mask(c: &[u8]) -> u64 {
    c.iter().map(|&i| 1u64 << i).sum()
}

/// The maximal horizontal cylinders of one tuple (α, β, γ₁,…,γ_n).
pub fn cylinders_of(alpha: &[u8], beta: &[u8], gammas: &[Perm]) -> Vec<CensusCylinder> {
    let n = gammas.len();
    let mut mono = vec![alpha.to_vec()];
    for g in &gammas[..n - 1] {
        let next = compose(mono.last().expect("nonempty"), g);
        mono.push(next);
    }
    let band_cycles: Vec<Vec<u64>> = mono.iter().map(|m| cycles(m).iter().map(|c| mask(c)).collect()).collect();
    let ab_inv = inverse(&compose(alpha, beta));
    let supports: Vec<u64> = gammas.iter().map(|g| support(g)).collect();
    // successor of each (band, cycle) node when it continues upward
    let next_of = |j: usize, c: u64| -> Option<(usize, u64)> {
        if c & supports[j] != 0 {
            return None;
        }
        if j + 1 < n {
            Some((j + 1, c))
        } else {
            let img: u64 = (0..alpha.len()).filter(|&i| c >> i & 1 == 1).map(|i| 1u64 << ab_inv[i]).sum();
            Some((0, img))
        }
    };
    let mut has_pred = BTreeMap::new();
    for (j, cs) in band_cycles.iter().enumerate() {
        for &c in cs {
            if let Some(t) = next_of(j, c) {
                has_pred.insert(t, true);
            }
        }
    }
    let mut out = Vec::new();
    let mut seen = BTreeMap::new();
    for (j, cs) in band_cycles.iter().enumerate() {
        for &c in cs {
            if has_pred.contains_key(&(j, c)) {
                continue;
            }
            let (mut cur, mut bands) = ((j, c), 1u32);
            seen.insert(cur, true);
            while let Some(t) = next_of(cur.0, cur.1) {
                seen.insert(t, true);
                cur = t;
                bands += 1;
            }
            let mut f = vec![0u32; n];
            // level j sits below band j; level 0 is the seam, i.e. level n
            f[if j == 0 { n - 1 } else { j - 1 }] += 1;
            f[cur.0] += 1;
            out.push(CensusCylinder { width: c.count_ones(), height: rat(bands as i64, n as i64), f });
        }
    }
    // closed loops never meet a singular level
    for (j, cs) in band_cycles.iter().enumerate() {
        for &c in cs {
            if seen.contains_key(&(j, c)) {
                continue;
            }
            let (mut cur, mut bands) = ((j, c), 0u32);
            loop {
                seen.insert(cur, true);
                bands += 1;
                cur = next_of(cur.0, cur.1).expect("closed loop");
                if cur == (j, c) {
                    break;
                }
            }
            out.push(CensusCylinder { width: c.count_ones(), height: rat(bands as i64, n as i64), f: vec![0; n] });
        }
    }
    out
}

pub fn cylinder_census(profile: &HurwitzProfile) -> Result<Census> {
    let d = profile.degree as usize;
    let n = profile.entries.len();
    if n == 0 {
        return Err(Error::Invalid("census needs at least one branch point".into()));
    }
    if d > 8 {
        return Err(Error::Unsupported(format!("census infeasible for degree {d}")));
    }
    let perms = all_perms(d);
    let types: Vec<_> = (0..n).map(|i| profile.padded(i)).collect();
    let class_members: Vec<Vec<&Perm>> =
        types.iter().map(|t| perms.iter().filter(|p| cycle_type(p) == *t).collect()).collect();
    let work = (perms.len() as u128).pow(2) * class_members[..n - 1].iter().map(|c| c.len() as u128).product::<u128>();
    if work > MAX_CENSUS_WORK {
        return Err(Error::Unsupported(format!("census infeasible: {work} candidate tuples")));
    }
    let mut rows: BTreeMap<Vec<u32>, CensusRow> = BTreeMap::new();
    let (mut tuples, mut cylinders) = (0u64, 0u64);
    let (mut min_f, mut max_f) = (u32::MAX, 0u32);
    let mut half_f = Rational::zero();
    let mut areas_ok = true;
    let mut choice = vec![0usize; n.saturating_sub(1)];
    for alpha in &perms {
        for beta in &perms {
            let comm = compose(&compose(alpha, beta), &compose(&inverse(alpha), &inverse(beta)));
            loop {
                let mut gammas: Vec<Perm> = choice.iter().enumerate().map(|(i, &k)| class_members[i][k].clone()).collect();
                let partial = gammas.iter().fold(comm.clone(), |acc, g| compose(&acc, g));
                let last = inverse(&partial);
                if cycle_type(&last) == types[n - 1] {
                    gammas.push(last);
                    let mut gens: Vec<&[u8]> = vec![alpha, beta];
                    gens.extend(gammas.iter().map(|g| g.as_slice()));
                    if transitive(d, &gens) {
                        tuples += 1;
                        let cyl = cylinders_of(alpha, beta, &gammas);
                        let area: Rational = cyl.iter().map(|z| &z.height * int(z.width as i64)).sum();
                        areas_ok &= area == int(d as i64);
                        for z in cyl {
                            cylinders += 1;
                            let s: u32 = z.f.iter().sum();
                            min_f = min_f.min(s);
                            max_f = max_f.max(s);
                            half_f += rat(s as i64, 2);
                            let r = rows.entry(z.f.clone()).or_insert_with(|| CensusRow {
                                f: z.f.clone(),
                                cylinders: 0,
                                sum_height_over_width: Rational::zero(),
                                sum_area: Rational::zero(),
                            });
                            r.cylinders += 1;
                            r.sum_height_over_width += &z.height / int(z.width as i64);
                            r.sum_area += &z.height * int(z.width as i64);
                        }
                    }
                }
                // advance the odometer over γ₁,…,γ_{n−1}
                let mut k = 0;
                while k < choice.len() {
                    choice[k] += 1;
                    if choice[k] < class_members[k].len() {
                        break;
                    }
                    choice[k] = 0;
                    k += 1;
                }
                if k == choice.len() {
                    break;
                }
            }
        }
    }
    Ok(Census {
        profile: profile.clone(),
        tuples,
        cylinders,
        rows: rows.into_values().collect(),
        half_f_total: half_f,
        min_f_sum: if cylinders == 0 { 0 } else { min_f },
        max_f_sum: max_f,
        areas_consistent: areas_ok,
    })
}
