//! Contributions of graphs and the sums over families that the identities
//! compare: the volume recursion, d₁ from backbones, chain and expanded-chain
//! sums, rooted trees, pairs of holes, and the fiberwise maps F_i and F.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial_q, int, Rational};

use super::families::{
    bb0, bb2, chains, classify_chain, classify_pre_expanded_chain, core_twists, expanded_chains, expanded_pairs,
    rooted_trees, CoreInfo, HalfMarker, VertexKind,
};
use super::genus0::{f_value, phi_value};
use super::graph::{Graph, Leg};
use super::volumes::{VolumeSource, VolumeTable};
use crate::partitions::{enumerate, Kind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Half {
    Leg(Leg),
    Edge(usize),
}

fn halves(g: &Graph, v: usize) -> Vec<(Half, i64)> {
    let mut h: Vec<(Half, i64)> = g.legs_at(v).iter().map(|l| (Half::Leg(l.leg), l.twist)).collect();
    h.extend(g.incident(v).into_iter().map(|(k, _, t)| (Half::Edge(k), t)));
    h
}

/// Half-edges to lower vertices; the legs r, h₁, h₂ count as such.
fn is_lower(h: Half, t: i64) -> bool {
    match h {
        Half::Edge(_) => t > 0,
        Half::Leg(Leg::Root | Leg::Hole(_)) => true,
        Half::Leg(_) => false,
    }
}

fn take(hs: &mut Vec<(Half, i64)>, which: Half) -> i64 {
    let k = hs.iter().position(|x| x.0 == which).expect("half-edge present");
    hs.remove(k).1
}

fn edge_between(g: &Graph, a: usize, b: usize) -> usize {
    g.incident(a).into_iter().find(|x| x.1 == b).expect("adjacent").0
}

fn sign_of(g: &Graph, spin: bool) -> Rational {
    if spin && g.horizontal_edges() % 2 == 1 { -Rational::one() } else { Rational::one() }
}

fn aut(g: &Graph) -> Rational {
    int(g.automorphisms() as i64)
}

/// c(v) for expanded chains, rooted trees and pairs of holes. `core` is the
/// core of an expanded chain (needed for bottoms), empty otherwise.
fn vertex_contribution(g: &Graph, v: usize, core: &[usize], vols: &dyn VolumeSource) -> Result<Rational> {
    let spin = vols.is_spin();
    let mut hs = halves(g, v);
    let lows: Vec<(Half, i64)> = hs.iter().copied().filter(|&(h, t)| is_lower(h, t)).collect();
    if g.genus[v] > 0 {
        let me: i64 = lows.iter().map(|x| x.1).sum();
        let mu: Vec<i64> = hs.iter().map(|x| x.1).collect();
        return Ok(int(me) * vols.vol(&mu)?);
    }
    match lows.len() {
        0 => {
            let j = core.iter().position(|&w| w == v).ok_or_else(|| Error::Invalid("bottom off the core".into()))?;
            let mark = g.ind(v).ok_or_else(|| Error::Invalid("bottom without marks".into()))?;
            let prev = if j == 0 { Half::Leg(Leg::Pole(1)) } else { Half::Edge(edge_between(g, v, core[j - 1])) };
            let next = if j + 1 == core.len() { Half::Leg(Leg::Pole(2)) } else { Half::Edge(edge_between(g, v, core[j + 1])) };
            let mj = take(&mut hs, Half::Leg(Leg::Mark(mark)));
            let a = take(&mut hs, prev);
            let b = take(&mut hs, next);
            let mut mu = vec![mj];
            mu.extend(hs.iter().map(|x| x.1));
            mu.extend([a, b]);
            Ok(int(mj) * phi_value(&mu, spin)?)
        }
        1 => {
            let mark = g.ind(v).ok_or_else(|| Error::Invalid("genus-0 vertex without marks".into()))?;
            let mj = take(&mut hs, Half::Leg(Leg::Mark(mark)));
            let me = take(&mut hs, lows[0].0);
            let mut mu = vec![mj, me];
            mu.extend(hs.iter().map(|x| x.1));
            Ok(int(mj) * f_value(&mu)?)
        }
        2 => {
            let a = take(&mut hs, lows[0].0);
            let b = take(&mut hs, lows[1].0);
            let mut mu = vec![a, b];
            mu.extend(hs.iter().map(|x| x.1));
            Ok(int(a + b) * f_value(&mu)?)
        }
        _ => Err(Error::Invalid("vertex with more than two lower half-edges".into())),
    }
}

/// cont(Γ) (or cont^± for spin sources, with the sign (−1)^{#horizontal edges}).
pub fn contribution(g: &Graph, core: &[usize], vols: &dyn VolumeSource) -> Result<Rational> {
    let mut prod = sign_of(g, vols.is_spin());
    for v in 0..g.num_vertices() {
        prod *= vertex_contribution(g, v, core, vols)?;
        if prod.is_zero() {
            return Ok(prod);
        }
    }
    Ok(prod / aut(g))
}

/// ĉont(Γ) of a chain (ĉont^± for spin sources).
pub fn chain_contribution(g: &Graph, mu: &[i64], vols: &dyn VolumeSource) -> Result<Rational> {
    let spin = vols.is_spin();
    let info = classify_chain(g, mu).ok_or_else(|| Error::Invalid(format!("not a chain: {g}")))?;
    let mut prod = sign_of(g, spin);
    for v in 0..g.num_vertices() {
        let tw = g.twists_at(v);
        let size: i64 = tw.iter().sum();
        let c = if g.genus[v] == 0 {
            let mi = super::families::mark_twist(mu, g.ind(v).expect("one mark"));
            int(mi) * factorial_q(g.valence(v) as u64 - 3)
        } else if info.figure_eights.contains(&v) {
            let me = g.incident(v)[0].2;
            if spin { int(size) * vols.vol(&tw)? } else { int(me * size) * vols.vol(&tw)? }
        } else {
            int(size) * vols.vol(&tw)?
        };
        prod *= if spin { -c } else { c };
    }
    Ok(prod / aut(g))
}

/// Σ over BB(μ)₂ of f(μ(v₋₁)) ∏m_e/|Aut| ∏vol; equals vol(μ) (or vol^±).
pub fn volume_recursion(mu: &[i64], vols: &dyn VolumeSource) -> Result<Rational> {
    let mut tot = Rational::zero();
    for g in bb2(mu, vols.is_spin()) {
        tot += backbone_term(&g, vols, |mut hs| {
            let m1 = take(&mut hs, Half::Leg(Leg::Mark(1)));
            let m2 = take(&mut hs, Half::Leg(Leg::Mark(2)));
            let mut m = vec![m1, m2];
            m.extend(hs.iter().map(|x| x.1));
            f_value(&m)
        })?;
    }
    Ok(tot)
}

/// d₁(μ) (d₁^± for spin sources) as the sum over BB(μ)₀.
pub fn d1(mu: &[i64], vols: &dyn VolumeSource) -> Result<Rational> {
    let spin = vols.is_spin();
    let mut tot = Rational::zero();
    for g in bb0(mu, spin) {
        tot += backbone_term(&g, vols, |mut hs| {
            let m1 = take(&mut hs, Half::Leg(Leg::Mark(1)));
            let a = take(&mut hs, Half::Leg(Leg::Pole(1)));
            let b = take(&mut hs, Half::Leg(Leg::Pole(2)));
            let mut m = vec![m1];
            m.extend(hs.iter().map(|x| x.1));
            m.extend([a, b]);
            phi_value(&m, spin)
        })? / int(2);
    }
    Ok(tot)
}

fn backbone_term(
    g: &Graph,
    vols: &dyn VolumeSource,
    centre: impl Fn(Vec<(Half, i64)>) -> Result<Rational>,
) -> Result<Rational> {
    let c = (0..g.num_vertices()).find(|&v| g.genus[v] == 0).expect("centre");
    let mut prod = centre(halves(g, c))?;
    for e in &g.edges {
        prod *= int(e.twist.abs());
    }
    for v in 0..g.num_vertices() {
        if v != c {
            prod *= vols.vol(&g.twists_at(v))?;
        }
    }
    Ok(prod / aut(g))
}

/// Σ ĉont over CH(μ) (CH(μ)^odd for spin sources).
pub fn chain_sum(mu: &[i64], vols: &dyn VolumeSource) -> Result<Rational> {
    let mut tot = Rational::zero();
    for g in chains(mu, vols.is_spin()) {
        tot += chain_contribution(&g, mu, vols)?;
    }
    Ok(tot)
}

/// Σ cont over ECH(μ)_i (odd expanded chains for spin sources).
pub fn expanded_chain_sum(mu: &[i64], vols: &dyn VolumeSource, i: u32) -> Result<Rational> {
    let mut tot = Rational::zero();
    for (g, info) in expanded_chains(mu, vols.is_spin(), i) {
        tot += contribution(&g, &info.core, vols)?;
    }
    Ok(tot)
}

/// Both sides of the rooted-tree identity: ((p + Σm) vol, Σ cont).
pub fn rooted_tree_sides(mu: &[i64], sigma: &[u32], p: i64, vols: &dyn VolumeSource) -> Result<(Rational, Rational)> {
    let mut sig: Vec<i64> = vec![p];
    sig.extend(sigma.iter().map(|&i| super::families::mark_twist(mu, i)));
    let lhs = int(sig.iter().sum()) * vols.vol(&sig)?;
    let mut rhs = Rational::zero();
    for g in rooted_trees(mu, sigma, p, vols.is_spin()) {
        rhs += contribution(&g, &[], vols)?;
    }
    Ok((lhs, rhs))
}

/// Both sides of the pair-of-holes identity for the chamber `marker`.
pub fn pair_of_holes_sides(
    mu: &[i64],
    sigma: &[u32],
    p1: i64,
    p2: i64,
    marker: HalfMarker,
    vols: &dyn VolumeSource,
) -> Result<(Rational, Rational)> {
    let mut sig: Vec<i64> = sigma.iter().map(|&i| super::families::mark_twist(mu, i)).collect();
    sig.extend([p1, p2]);
    let lhs = int(sig.iter().sum()) * vols.vol(&sig)?;
    let mut rhs = Rational::zero();
    for g in expanded_pairs(mu, sigma, p1, p2, marker) {
        rhs += contribution(&g, &[], vols)?;
    }
    Ok((lhs, rhs))
}

/// F_i : ECH(μ)_i → ECH(μ)_{i−1}.
pub fn map_f_i(g: &Graph, info: &CoreInfo, i: u32) -> Graph {
    let v = g.vertex_of(Leg::Mark(i)).expect("leg i");
    let contract: Vec<usize> = match info.kinds[v] {
        VertexKind::Decoration => Vec::new(),
        VertexKind::Link => g.incident(v).into_iter().filter(|x| x.2 > 0).map(|x| x.0).collect(),
        _ => {
            let j = info.core.iter().position(|&w| w == v).expect("core vertex");
            let mut c = vec![edge_between(g, v, info.core[j - 1])];
            if info.kinds[info.core[j - 1]] == VertexKind::Top {
                c.push(edge_between(g, info.core[j - 1], info.core[j - 2]));
            }
            c
        }
    };
    g.contract(&contract)
}

/// F : ECH(μ)_n → CH(μ): contract every edge not incident to a bottom.
pub fn map_f(g: &Graph, info: &CoreInfo) -> Graph {
    let bottom = |v: usize| info.kinds[v] == VertexKind::Bottom;
    let c: Vec<usize> = (0..g.edges.len()).filter(|&k| !bottom(g.edges[k].a) && !bottom(g.edges[k].b)).collect();
    g.contract(&c)
}

/// Outcome of a fiberwise comparison.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FiberReport {
    pub targets: usize,
    pub sources: usize,
    /// Canonical codes of targets whose fiber sum differs.
    pub mismatches: Vec<String>,
}

impl FiberReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn compare(targets: BTreeMap<String, Rational>, fibers: BTreeMap<String, Rational>, sources: usize) -> FiberReport {
    let mut r = FiberReport { targets: targets.len(), sources, mismatches: Vec::new() };
    for (k, v) in &targets {
        if fibers.get(k).cloned().unwrap_or_else(Rational::zero) != *v {
            r.mismatches.push(k.clone());
        }
    }
    r.mismatches.extend(fibers.into_iter().filter(|(k, v)| !targets.contains_key(k) && !v.is_zero()).map(|x| x.0));
    r
}

/// cont(Γ) = Σ_{F_i(Γ') = Γ} cont(Γ') for every Γ ∈ ECH(μ)_{i−1}, 1 < i ≤ n.
pub fn check_f_i_fibers(mu: &[i64], vols: &dyn VolumeSource, i: u32) -> Result<FiberReport> {
    let spin = vols.is_spin();
    let mut targets = BTreeMap::new();
    for (g, info) in expanded_chains(mu, spin, i - 1) {
        *targets.entry(g.canonical_code()).or_insert_with(Rational::zero) += contribution(&g, &info.core, vols)?;
    }
    let mut fibers = BTreeMap::new();
    let src = expanded_chains(mu, spin, i);
    for (g, info) in &src {
        let img = map_f_i(g, info, i);
        *fibers.entry(img.canonical_code()).or_insert_with(Rational::zero) += contribution(g, &info.core, vols)?;
    }
    Ok(compare(targets, fibers, src.len()))
}

/// ĉont(Γ) = Σ_{F(Γ') = Γ} cont(Γ') for every chain Γ.
pub fn check_chain_fibers(mu: &[i64], vols: &dyn VolumeSource) -> Result<FiberReport> {
    let spin = vols.is_spin();
    let mut targets = BTreeMap::new();
    for g in chains(mu, spin) {
        *targets.entry(g.canonical_code()).or_insert_with(Rational::zero) += chain_contribution(&g, mu, vols)?;
    }
    let mut fibers = BTreeMap::new();
    let src = expanded_chains(mu, spin, mu.len() as u32);
    for (g, info) in &src {
        let img = map_f(g, info);
        *fibers.entry(img.canonical_code()).or_insert_with(Rational::zero) += contribution(g, &info.core, vols)?;
    }
    Ok(compare(targets, fibers, src.len()))
}

/// Sanity helper for tests: the core of a pre-expanded chain with its kinds.
pub fn core_kinds(g: &Graph, mu: &[i64]) -> Option<Vec<(VertexKind, (i64, i64))>> {
    let info = classify_pre_expanded_chain(g, mu)?;
    Some(info.core.iter().enumerate().map(|(j, &v)| (info.kinds[v], core_twists(g, &info.core, j))).collect())
}

/// Extends a table of one-entry volumes to every signature of size at most
/// `max_size` through the backbone recursion. Signatures with |μ| − n odd are
/// skipped (no such stratum).
pub fn table_from_seeds(seeds: &VolumeTable, max_size: u32) -> Result<VolumeTable> {
    let mut t = seeds.clone();
    for size in 2..=max_size {
        for p in enumerate(Kind::All, size) {
            if p.len() < 2 || (size as usize - p.len()) % 2 == 1 {
                continue;
            }
            let mu: Vec<i64> = p.parts().iter().map(|&m| m as i64).collect();
            let v = volume_recursion(&mu, &t)?;
            t.insert(&mu, v)?;
        }
    }
    Ok(t)
}
