//! Cross-route verification suites. Each suite runs a family of exact identities
//! and reports one check per identity instance.

use std::time::Instant;

use serde::Serialize;

use crate::brackets::{bracket_closed, bracket_direct, modified_bracket, modified_bracket_series, n_bracket, l_bracket, ConnectedSpec};
use crate::error::{Error, Result};
use crate::exact::{int, rat, Rational};
use crate::graphs::families::HalfMarker;
use crate::graphs::identities::{
    chain_sum, check_chain_fibers, check_f_i_fibers, d1, expanded_chain_sum, pair_of_holes_sides, rooted_tree_sides,
    volume_recursion,
};
use crate::graphs::{SpinVolumes, VolumeSource, VolumeTable};
use crate::partitions::Partition;
use crate::qmf::{ev, QuasimodularForm};
use crate::sergeev::{
    character_table, cylinder_census, half_sums, hurwitz_bruteforce_weights, weighted_spin_hurwitz_char, Family, GroupId,
    HurwitzProfile, Weight, MAX_TABLE_DEGREE,
};
use crate::svgf::{c0_numerator, odd_signatures, OddSignature, Route};
use crate::symfun::{exp_d, exp_d_at_empty, monomials_of_weight, partial2, SymFunc};

pub const SUITES: [&str; 11] = [
    "tables",
    "orthogonality",
    "brackets",
    "modified",
    "hbar",
    "hurwitz",
    "svconst",
    "spin-graphs",
    "expansion",
    "growth",
    "census",
];

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// A failure that is expected and explained in the documentation.
    pub known_deviation: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self { name: name.into(), passed, known_deviation: false, detail: detail.into() }
    }

    fn eq<T: PartialEq + std::fmt::Display>(name: impl Into<String>, a: &T, b: &T) -> Self {
        Self::new(name, a == b, format!("{a} vs {b}"))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub elapsed_seconds: f64,
}

impl SuiteReport {
    /// Every check passed, apart from documented deviations.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || c.known_deviation)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed && !c.known_deviation).collect()
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub q_order: usize,
    /// Weight cap for the bracket suites.
    pub max_weight: u32,
    /// Largest |μ| for the graph suites.
    pub max_size: u32,
    /// Non-spin volume table for the non-spin parts of the expansion suite.
    pub vol_table: Option<VolumeTable>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { q_order: crate::qmf::DEFAULT_ORDER, max_weight: 10, max_size: 8, vol_table: None }
    }
}

pub fn run_suite(name: &str, opts: &VerifyOptions) -> Result<SuiteReport> {
    let t = Instant::now();
    let checks = match name {
        "tables" => tables()?,
        "orthogonality" => orthogonality()?,
        "brackets" => brackets(opts),
        "modified" => modified(opts),
        "hbar" => hbar(opts)?,
        "hurwitz" => hurwitz()?,
        "svconst" => svconst()?,
        "spin-graphs" => spin_graphs(opts)?,
        "expansion" => expansion(opts)?,
        "growth" => growth()?,
        "census" => census()?,
        _ => return Err(Error::Invalid(format!("unknown suite {name:?}; known: {}", SUITES.join(", ")))),
    };
    Ok(SuiteReport { suite: name.into(), checks, elapsed_seconds: t.elapsed().as_secs_f64() })
}

fn all_tables() -> Result<Vec<crate::sergeev::CharacterTable>> {
    let mut out = Vec::new();
    for d in 1..=MAX_TABLE_DEGREE {
        for f in Family::ALL {
            out.push(character_table(GroupId::new(f, d)?)?);
        }
    }
    Ok(out)
}

/// Internal consistency of the tables: dimensions at the identity, class sizes
/// summing to half the group, and the half-sum identities.
fn tables() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for t in all_tables()? {
        let name = t.group.name();
        let covered: u64 = t.classes.iter().map(|c| c.size).sum();
        // classes meeting εC are omitted, so the sizes stay within half the group
        out.push(Check::new(format!("{name} class sizes"), 2 * covered <= t.group.order(), format!("{covered}")));
        let dims: u64 = t.characters.iter().map(|c| c.dimension().pow(2)).sum();
        out.push(Check::new(
            format!("{name} Σ dim² = |G|/2"),
            2 * dims == t.group.order(),
            format!("{dims} vs {}", t.group.order() / 2),
        ));
    }
    for d in 1..=MAX_TABLE_DEGREE {
        for h in half_sums(d)? {
            out.push(Check::new(
                format!("half sum {} {} {}", h.identity, h.group, h.character),
                h.holds(),
                format!("{} / {}", h.first, h.second),
            ));
        }
    }
    Ok(out)
}

fn orthogonality() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for t in all_tables()? {
        out.push(Check::new(format!("{} rows", t.group.name()), t.rows_orthogonal(), ""));
        out.push(Check::new(format!("{} columns", t.group.name()), t.columns_orthogonal(), ""));
    }
    Ok(out)
}

fn monomials(max_weight: u32) -> Vec<SymFunc> {
    (0..=max_weight)
        .step_by(2)
        .flat_map(monomials_of_weight)
        .map(|m| SymFunc::term(m, int(1)))
        .collect()
}

fn label(f: &SymFunc) -> String {
    f.terms()
        .keys()
        .next()
        .map(|m| if m.is_empty() { "1".into() } else { m.iter().map(|k| format!("p{k}")).collect::<Vec<_>>().join("*") })
        .unwrap_or_else(|| "0".into())
}

fn brackets(opts: &VerifyOptions) -> Vec<Check> {
    monomials(opts.max_weight)
        .iter()
        .map(|f| {
            let closed = bracket_closed(f).expand(opts.q_order);
            let direct = bracket_direct(f, opts.q_order);
            Check::new(format!("<{}> closed = direct", label(f)), closed == direct, "")
        })
        .collect()
}

fn modified(opts: &VerifyOptions) -> Vec<Check> {
    let mut out: Vec<Check> = monomials(opts.max_weight)
        .iter()
        .map(|f| {
            let a = modified_bracket(f).expand(opts.q_order);
            let b = modified_bracket_series(f, opts.q_order);
            Check::new(format!("<{}>* routes", label(f)), a == b, "")
        })
        .collect();
    let p1 = modified_bracket(&SymFunc::gen(1));
    out.push(Check::new("<p1>* = G2", p1 == QuasimodularForm::g2(), format!("{:?}", p1.to_json())));
    out
}

fn hbar(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    // the ℏ-bracket range is pinned at weight 12 independent of the cap
    for f in monomials(opts.max_weight.max(12)) {
        let a = ev(&bracket_closed(&f));
        let b = exp_d_at_empty(&f)?;
        out.push(Check::new(format!("<{}>_hbar routes", label(&f)), a == b, ""));
        // ∂₂ e^𝒟 f = e^𝒟 Σ_{j≥1} ∂₂^j f
        let lhs = partial2(&exp_d(&f));
        let mut s = SymFunc::zero();
        let mut g = partial2(&f);
        while !g.is_zero() {
            s = s.add(&g);
            g = partial2(&g);
        }
        out.push(Check::new(format!("commutation on {}", label(&f)), lhs == exp_d(&s), ""));
    }
    Ok(out)
}

/// Profiles of degree d with at most two single-part odd branch points.
fn small_profiles(d: u32) -> Vec<HurwitzProfile> {
    let parts: Vec<u32> = (1..=d).filter(|m| m % 2 == 1).collect();
    let mut out = vec![HurwitzProfile::new(d, vec![]).expect("valid")];
    for (i, &a) in parts.iter().enumerate() {
        out.push(HurwitzProfile::new(d, vec![Partition::new(vec![a])]).expect("valid"));
        for &b in &parts[i..] {
            out.push(HurwitzProfile::new(d, vec![Partition::new(vec![a]), Partition::new(vec![b])]).expect("valid"));
        }
    }
    out
}

pub const HURWITZ_WEIGHTS: [Weight; 4] = [Weight::One, Weight::P(1), Weight::P(3), Weight::P(-1)];

fn hurwitz() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for d in 1..=crate::sergeev::hurwitz::MAX_BRUTEFORCE_DEGREE {
        for h in small_profiles(d) {
            let brute = hurwitz_bruteforce_weights(&h, &HURWITZ_WEIGHTS)?;
            for (w, b) in HURWITZ_WEIGHTS.iter().zip(brute) {
                let c = weighted_spin_hurwitz_char(&h, *w)?;
                out.push(Check::eq(format!("{h} weight {w}"), &c, &b));
            }
        }
    }
    let h = HurwitzProfile::parse(3, "3")?;
    out.push(Check::eq("d=3 (3) unweighted = -3", &weighted_spin_hurwitz_char(&h, Weight::One)?, &int(-3)));
    out.push(Check::eq("d=3 (3) p_-1 = -10/3", &weighted_spin_hurwitz_char(&h, Weight::P(-1))?, &rat(-10, 3)));
    // H(2) is purely odd, so the signed count is minus the number of
    // non-commuting pairs over 3!
    let perms = crate::sergeev::perm::all_perms(3);
    let noncommuting = perms
        .iter()
        .flat_map(|a| perms.iter().map(move |b| (a, b)))
        .filter(|(a, b)| crate::sergeev::perm::compose(a, b) != crate::sergeev::perm::compose(b, a))
        .count();
    out.push(Check::eq("d=3 (3) vs non-commuting pairs", &int(-3), &rat(-(noncommuting as i64), 6)));
    Ok(out)
}

fn svconst() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for mu in odd_signatures(9, 3) {
        let a = c0_numerator(&mu, Route::Bracket)?;
        let b = c0_numerator(&mu, Route::Genfun)?;
        out.push(Check::eq(format!("c0 numerator routes {:?}", mu.entries()), &a, &b));
    }
    let g = c0_numerator(&OddSignature::new(vec![1, 1])?, Route::Genfun)?;
    let mut c = Check::eq("genfun numerator (1,1) = 1/4", &g, &rat(1, 4));
    c.known_deviation = true;
    c.detail.push_str(" (the stated 1/4 is the formula read literally; both routes give -1/2)");
    out.push(c);
    Ok(out)
}

/// All distinct orderings of the odd signatures with |μ| ≤ max_size.
fn ordered_odd(max_size: u32) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for mu in odd_signatures(max_size, usize::MAX) {
        let mut v: Vec<i64> = mu.entries().iter().map(|&m| m as i64).collect();
        v.sort_unstable();
        loop {
            out.push(v.clone());
            if !next_permutation(&mut v) {
                break;
            }
        }
    }
    out
}

fn next_permutation(v: &mut [i64]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else { return false };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn numerator_of(mu: &[i64]) -> Result<Rational> {
    let sig = OddSignature::new(mu.iter().map(|&m| m as u32).collect())?;
    c0_numerator(&sig, Route::Bracket)
}

fn spin_graphs(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let vols = SpinVolumes::new();
    let mut out = Vec::new();
    for mu in ordered_odd(opts.max_size) {
        out.extend(mainint_checks(&mu, &vols)?);
    }
    Ok(out)
}

/// The chain-sum, d₁ and volume-recursion identities for one ordered signature.
/// Spin sources also compare against the volume-free c₀^± numerator.
pub fn mainint_checks(mu: &[i64], vols: &dyn VolumeSource) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let m1 = int(mu[0]);
    let half_chain = chain_sum(mu, vols)? / int(2);
    if vols.is_spin() {
        let n = numerator_of(mu)?;
        out.push(Check::eq(format!("{mu:?} chain sum / 2 = m1·numerator"), &half_chain, &(&m1 * &n)));
    }
    let dd = d1(mu, vols)?;
    out.push(Check::eq(format!("{mu:?} m1·d1 = chain sum / 2"), &(&m1 * &dd), &half_chain));
    // the recursion distinguishes two marks
    if mu.len() >= 2 {
        out.push(Check::eq(format!("{mu:?} volume recursion"), &volume_recursion(mu, vols)?, &vols.vol(mu)?));
    }
    Ok(out)
}

/// ECH_i = CH for every i, the fiber checks of the contraction maps, and (for
/// |μ| ≤ 6) the rooted-tree identities.
pub fn expansion_checks(mu: &[i64], vols: &dyn VolumeSource) -> Result<Vec<Check>> {
    let tag = if vols.is_spin() { "spin" } else { "non-spin" };
    let mut out = Vec::new();
    sector_expansion(mu, vols, tag, &mut out)?;
    if mu.iter().sum::<i64>() <= 6 {
        rooted_trees(mu, vols, tag, &mut out)?;
    }
    Ok(out)
}

fn sector_expansion(mu: &[i64], vols: &dyn VolumeSource, tag: &str, out: &mut Vec<Check>) -> Result<()> {
    let ch = chain_sum(mu, vols)?;
    for i in 1..=mu.len() as u32 {
        out.push(Check::eq(format!("{tag} {mu:?} ECH_{i} = CH"), &expanded_chain_sum(mu, vols, i)?, &ch));
        if i > 1 {
            let r = check_f_i_fibers(mu, vols, i)?;
            out.push(Check::new(format!("{tag} {mu:?} F_{i} fibers"), r.ok(), format!("{} mismatches", r.mismatches.len())));
        }
    }
    let r = check_chain_fibers(mu, vols)?;
    out.push(Check::new(format!("{tag} {mu:?} F fibers"), r.ok(), format!("{} mismatches", r.mismatches.len())));
    Ok(())
}

fn subsets_of(n: u32) -> Vec<Vec<u32>> {
    (1u32..(1 << n)).map(|m| (1..=n).filter(|i| m >> (i - 1) & 1 == 1).collect()).collect()
}

fn available(e: &Error) -> bool {
    !matches!(e, Error::VolumeUnavailable(_) | Error::Invalid(_))
}

fn rooted_trees(mu: &[i64], vols: &dyn VolumeSource, tag: &str, out: &mut Vec<Check>) -> Result<()> {
    for sigma in subsets_of(mu.len() as u32) {
        for p in 1..=5 {
            match rooted_tree_sides(mu, &sigma, p, vols) {
                Ok((l, r)) => out.push(Check::eq(format!("{tag} RT {mu:?} Σ={sigma:?} p={p}"), &l, &r)),
                Err(e) if !available(&e) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(())
}

fn pairs_of_holes(mu: &[i64], vols: &dyn VolumeSource, out: &mut Vec<Check>) -> Result<()> {
    let n = mu.len() as i64;
    for sigma in subsets_of(mu.len() as u32) {
        for p1 in 1..=3 {
            for p2 in 1..=3 {
                let mut first: Option<Rational> = None;
                for k in (-1..=2 * n + 1).step_by(2) {
                    match pair_of_holes_sides(mu, &sigma, p1, p2, HalfMarker(k), vols) {
                        Ok((l, r)) => {
                            out.push(Check::eq(format!("EP {mu:?} Σ={sigma:?} p=({p1},{p2}) I={k}/2"), &l, &r));
                            match &first {
                                None => first = Some(r),
                                Some(f) => out.push(Check::eq(
                                    format!("EP {mu:?} Σ={sigma:?} p=({p1},{p2}) chamber {k}/2 independent"),
                                    f,
                                    &r,
                                )),
                            }
                        }
                        Err(e) if !available(&e) => break,
                        Err(e) => return Err(e),
                    }
                }
            }
        }
    }
    Ok(())
}

fn expansion(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let spin = SpinVolumes::new();
    let mut out = Vec::new();
    for mu in odd_signatures(opts.max_size, usize::MAX) {
        let mu: Vec<i64> = mu.entries().iter().map(|&m| m as i64).collect();
        sector_expansion(&mu, &spin, "spin", &mut out)?;
        if mu.iter().sum::<i64>() <= 6 {
            rooted_trees(&mu, &spin, "spin", &mut out)?;
        }
    }
    if let Some(table) = &opts.vol_table {
        for mu in [vec![1, 1], vec![2, 2], vec![3, 1], vec![2, 4], vec![3, 3], vec![2, 2, 1], vec![3, 1, 1], vec![1, 1, 1, 1]] {
            match sector_expansion(&mu, table, "non-spin", &mut out) {
                Err(e) if !available(&e) => {}
                r => r?,
            }
            rooted_trees(&mu, table, "non-spin", &mut out)?;
        }
        pairs_of_holes(&[1, 1, 2, 1, 1], table, &mut out)?;
    }
    Ok(out)
}

/// [𝐩₁|𝐩₁]_N against ⟨𝐩₁|𝐩₁⟩_L·N³(2πi)²/3! at N = 400.
pub fn growth_ratio(n: usize) -> Result<f64> {
    let spec = ConnectedSpec::plain(vec![SymFunc::gen(1), SymFunc::gen(1)]);
    let l = l_bracket(&spec)?;
    let actual = n_bracket(&spec, n);
    let exact = actual / (l * int(n as i64).pow(3) / int(6));
    let approx = exact.numer().to_string().parse::<f64>().unwrap_or(f64::NAN)
        / exact.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
    // (2πi)² = −4π²
    Ok(approx / (-4.0 * std::f64::consts::PI * std::f64::consts::PI))
}

fn growth() -> Result<Vec<Check>> {
    let r = growth_ratio(400)?;
    Ok(vec![Check::new("[p1|p1]_400 / prediction within 15%", (r - 1.0).abs() < 0.15, format!("ratio {r:.4}"))])
}

fn census() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for d in 1..=4u32 {
        for m in (3..=d).step_by(2) {
            let h = HurwitzProfile::new(d, vec![Partition::new(vec![m])])?;
            let c = cylinder_census(&h)?;
            let n = h.entries.len() as u32;
            out.push(Check::new(
                format!("{h} 2 ≤ Σf ≤ 2n"),
                c.cylinders == 0 || (c.min_f_sum >= 2 && c.max_f_sum <= 2 * n),
                format!("{}..{}", c.min_f_sum, c.max_f_sum),
            ));
            out.push(Check::new(format!("{h} areas sum to d"), c.areas_consistent, format!("{} tuples", c.tuples)));
        }
    }
    let c = cylinder_census(&HurwitzProfile::parse(3, "3")?)?;
    out.push(Check::new(
        "d=3 (3) f1 = 2 everywhere",
        c.rows.len() == 1 && c.rows[0].f == vec![2],
        format!("{} cylinders over {} tuples", c.cylinders, c.tuples),
    ));
    Ok(out)
}
