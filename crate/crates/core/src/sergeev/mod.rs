//! Spin character tables of S̃_d, Ã_d, Se_d and Se_d⁰ for d ≤ 5, rebuilt from
//! central characters; weighted spin Hurwitz numbers and a cylinder census.

pub mod census;
pub mod hurwitz;
pub mod perm;

use std::collections::BTreeMap;

use num_integer::Roots;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{factorial, int, pow2, rat, AlgebraicValue, Part, Rational};
use crate::partitions::{enumerate, z_factor, Kind, Partition};
use crate::symfun::f_element;

pub use census::{cylinder_census, Census, CensusCylinder};
pub use hurwitz::{hurwitz_bruteforce, hurwitz_bruteforce_weights, weighted_spin_hurwitz_char, HurwitzProfile, Weight};

pub const MAX_TABLE_DEGREE: u32 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    SpinSym,
    SpinAlt,
    Sergeev,
    SergeevEven,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::SpinSym, Family::SpinAlt, Family::Sergeev, Family::SergeevEven];

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "spinsym" | "spin-symmetric" | "stilde" => Ok(Family::SpinSym),
            "spinalt" | "spin-alternating" | "atilde" => Ok(Family::SpinAlt),
            "sergeev" | "se" => Ok(Family::Sergeev),
            "sergeev0" | "sergeev-even" | "se0" => Ok(Family::SergeevEven),
            _ => Err(Error::Parse(format!(
                "unknown group family {s:?} (expected spinsym, spinalt, sergeev or sergeev0)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupId {
    pub family: Family,
    pub degree: u32,
}

impl GroupId {
    pub fn new(family: Family, degree: u32) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Invalid("degree must be at least 1".into()));
        }
        Ok(Self { family, degree })
    }

    pub fn order(&self) -> u64 {
        let f = factorial(self.degree as u64).to_u64().expect("small degree");
        match self.family {
            Family::SpinSym => 2 * f,
            Family::SpinAlt if self.degree == 1 => 2,
            Family::SpinAlt => f,
            Family::Sergeev => (1u64 << (self.degree + 1)) * f,
            Family::SergeevEven => (1u64 << self.degree) * f,
        }
    }

    pub fn name(&self) -> String {
        let d = self.degree;
        match self.family {
            Family::SpinSym => format!("S~_{d}"),
            Family::SpinAlt => format!("A~_{d}"),
            Family::Sergeev => format!("Se_{d}"),
            Family::SergeevEven => format!("Se0_{d}"),
        }
    }
}

/// Which of the two halves of a class that splits in the even subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sheet {
    A,
    B,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassLabel {
    /// C_ρ for ρ odd (the all-ones ρ is the identity class).
    PureOdd(Partition),
    /// Classes over a strict cycle type λ that are not all-odd: C_{λ,1} in Se_d,
    /// C_λ in Se_d⁰, the split classes of S̃_d.
    Twisted(Partition),
    /// One of the two halves of C_λ, λ odd and strict, in Ã_d or Se_d⁰.
    Half(Partition, Sheet),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinClass {
    pub label: ClassLabel,
    pub size: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinCharacter {
    pub lambda: Partition,
    /// `Some(true)` for the + character of a split pair.
    pub sign: Option<bool>,
    pub values: Vec<AlgebraicValue>,
}

impl SpinCharacter {
    pub fn dimension(&self) -> u64 {
        self.values[0]
            .as_rational()
            .and_then(|q| q.to_integer().to_u64())
            .expect("dimension is a positive integer")
    }

    pub fn label(&self) -> String {
        let s = match self.sign {
            Some(true) => "+",
            Some(false) => "-",
            None => "",
        };
        format!("{}{s}", self.lambda)
    }
}

fn delta(lambda: &Partition) -> u32 {
    lambda.len() as u32 % 2
}

fn eps(d: u32, lambda: &Partition) -> u32 {
    (d - lambda.len() as u32) % 2
}

fn ones(d: u32) -> Partition {
    Partition::new(vec![1; d as usize])
}

fn exact_u64(q: &Rational) -> u64 {
    assert!(q.is_integer() && !q.is_negative(), "expected a non-negative integer, got {q}");
    q.to_integer().to_u64().expect("fits in u64")
}

/// |C_ρ| in Se_d: 2^{d−ℓ(ρ)}·d!/z_ρ.
pub fn sergeev_class_size(d: u32, rho: &Partition) -> u64 {
    let f = Rational::from_integer(factorial(d as u64));
    exact_u64(&(f * pow2((d - rho.len() as u32) as i64) / z_factor(rho)))
}

/// d!/z_ρ, the size of the class of type ρ in S_d.
fn sym_class_size(d: u32, rho: &Partition) -> u64 {
    exact_u64(&(Rational::from_integer(factorial(d as u64)) / z_factor(rho)))
}

/// 𝐟_ρ(λ). Uses the series element for the single nontrivial part of ρ and 1 for
/// the identity class.
pub fn class_ratio(rho: &Partition, lambda: &Partition) -> Result<Rational> {
    if !rho.is_odd() {
        return Err(Error::Invalid(format!("class {rho} is not odd")));
    }
    if !lambda.is_strict() {
        return Err(Error::Invalid(format!("{lambda} is not a strict partition")));
    }
    if rho.size() > lambda.size() {
        return Err(Error::Invalid(format!("class {rho} is larger than {lambda}")));
    }
    match rho.nontrivial().as_slice() {
        [] => Ok(Rational::one()),
        [l] => Ok(f_element(*l, lambda)),
        _ => Err(Error::Unsupported(format!("multi-part odd class unsupported: {rho}"))),
    }
}

/// The supermodule characters θ^λ on the odd classes of Se_d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaTable {
    pub degree: u32,
    /// OP(d), lexicographically decreasing; the identity class is last.
    pub classes: Vec<Partition>,
    /// SP(d), lexicographically decreasing.
    pub lambdas: Vec<Partition>,
    pub dims: BTreeMap<Partition, u64>,
    pub values: BTreeMap<(Partition, Partition), Rational>,
}

impl ThetaTable {
    pub fn theta(&self, lambda: &Partition, rho: &Partition) -> Rational {
        self.values.get(&(lambda.clone(), rho.clone())).cloned().unwrap_or_else(Rational::zero)
    }

    /// φ^λ(ρ) = 2^{−(ℓ(ρ)+δ(λ)−ε(λ))/2}·θ^λ(ρ), the supermodule character of S̃_d.
    pub fn phi(&self, lambda: &Partition, rho: &Partition) -> Rational {
        let e = rho.len() as i64 + delta(lambda) as i64 - eps(self.degree, lambda) as i64;
        debug_assert!(e % 2 == 0);
        pow2(-e / 2) * self.theta(lambda, rho)
    }
}

fn check_degree(d: u32) -> Result<()> {
    if d == 0 || d > MAX_TABLE_DEGREE {
        return Err(Error::Unsupported(format!("character tables need 1 ≤ d ≤ {MAX_TABLE_DEGREE}, got {d}")));
    }
    Ok(())
}

pub fn theta_table(d: u32) -> Result<ThetaTable> {
    check_degree(d)?;
    let classes = enumerate(Kind::Odd, d);
    let lambdas = enumerate(Kind::Strict, d);
    let se_order = Rational::from_integer(factorial(d as u64)) * pow2(d as i64 + 1);
    let mut dims = BTreeMap::new();
    let mut values = BTreeMap::new();
    for lambda in &lambdas {
        let mut f = Vec::new();
        let mut norm = Rational::zero();
        for rho in &classes {
            let fr = class_ratio(rho, lambda)?;
            norm += &fr * &fr / int(sergeev_class_size(d, rho) as i64);
            f.push(fr);
        }
        let t = if lambda.len() % 2 == 0 { 1 } else { 2 };
        let dim_chi_sq = &se_order / (norm * int(2 * t));
        let n = if dim_chi_sq.is_integer() { dim_chi_sq.to_integer().to_u64() } else { None };
        let dim_chi = n.map(|n| (n, n.sqrt())).filter(|(n, r)| r * r == *n).map(|(_, r)| r).ok_or_else(|| {
            Error::Invalid(format!("internal inconsistency: dim² = {dim_chi_sq} for {lambda} is not a square"))
        })?;
        let dim = dim_chi << delta(lambda);
        dims.insert(lambda.clone(), dim);
        for (rho, fr) in classes.iter().zip(f) {
            let v = fr * int(dim as i64) / int(sergeev_class_size(d, rho) as i64);
            values.insert((lambda.clone(), rho.clone()), v);
        }
    }
    Ok(ThetaTable { degree: d, classes, lambdas, dims, values })
}

/// The full spin character table of a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    pub group: GroupId,
    pub classes: Vec<SpinClass>,
    pub characters: Vec<SpinCharacter>,
}

fn im_sqrt_prod(lambda: &Partition, c: Rational) -> AlgebraicValue {
    AlgebraicValue::term(Part::Im, lambda.product(), c)
}

fn signed(v: AlgebraicValue, plus: bool) -> AlgebraicValue {
    if plus { v } else { v.scale(&int(-1)) }
}

fn rows(lambdas: &[Partition], split: impl Fn(&Partition) -> bool) -> Vec<(Partition, Option<bool>)> {
    let mut out = Vec::new();
    for l in lambdas {
        if split(l) {
            out.push((l.clone(), Some(true)));
            out.push((l.clone(), Some(false)));
        } else {
            out.push((l.clone(), None));
        }
    }
    out
}

pub fn character_table(group: GroupId) -> Result<CharacterTable> {
    let d = group.degree;
    check_degree(d)?;
    if group.family == Family::SpinAlt && d == 1 {
        // Ã_1 coincides with S̃_1
        let mut t = character_table(GroupId { family: Family::SpinSym, degree: 1 })?;
        t.group = group;
        return Ok(t);
    }
    let th = theta_table(d)?;
    let e = ones(d);
    // OP classes without the identity, descending
    let odd: Vec<Partition> = th.classes.iter().filter(|r| **r != e).cloned().collect();
    let strict = &th.lambdas;
    let id_class = SpinClass { label: ClassLabel::PureOdd(e.clone()), size: 1 };
    let mut classes = vec![id_class];
    let rows_list;
    let mut values: Vec<Vec<AlgebraicValue>> = Vec::new();
    let q = |x: Rational| AlgebraicValue::rational(x);

    match group.family {
        Family::SpinSym => {
            for r in &odd {
                classes.push(SpinClass { label: ClassLabel::PureOdd(r.clone()), size: sym_class_size(d, r) });
            }
            for l in strict.iter().filter(|l| eps(d, l) == 1) {
                classes.push(SpinClass { label: ClassLabel::Twisted(l.clone()), size: sym_class_size(d, l) });
            }
            rows_list = rows(strict, |l| eps(d, l) == 1);
            for (l, s) in &rows_list {
                let half = if s.is_some() { rat(1, 2) } else { int(1) };
                values.push(
                    classes
                        .iter()
                        .map(|c| match &c.label {
                            ClassLabel::PureOdd(r) => q(th.phi(l, r) * &half),
                            ClassLabel::Twisted(k) if k == l => {
                                let v = AlgebraicValue::sqrt_of(&(int(l.product() as i64) / int(2)), true);
                                signed(v, s.unwrap_or(true))
                            }
                            _ => AlgebraicValue::zero(),
                        })
                        .collect(),
                );
            }
        }
        Family::SpinAlt => {
            for r in &odd {
                let size = sym_class_size(d, r);
                if r.is_strict() {
                    classes.push(SpinClass { label: ClassLabel::Half(r.clone(), Sheet::A), size: size / 2 });
                    classes.push(SpinClass { label: ClassLabel::Half(r.clone(), Sheet::B), size: size / 2 });
                } else {
                    classes.push(SpinClass { label: ClassLabel::PureOdd(r.clone()), size });
                }
            }
            rows_list = rows(strict, |l| eps(d, l) == 0);
            for (l, s) in &rows_list {
                values.push(
                    classes
                        .iter()
                        .map(|c| match &c.label {
                            ClassLabel::PureOdd(r) => q(th.phi(l, r) / int(2)),
                            ClassLabel::Half(r, sheet) if r == l => {
                                let im = signed(im_sqrt_prod(l, rat(1, 2)), s.unwrap_or(true));
                                let v = q(th.phi(l, r) / int(2)).add(&im);
                                if *sheet == Sheet::A { v } else { v.conj() }
                            }
                            ClassLabel::Half(r, _) => q(th.phi(l, r) / int(2)),
                            ClassLabel::Twisted(_) => unreachable!("no twisted classes in Ã_d"),
                        })
                        .collect(),
                );
            }
        }
        Family::Sergeev => {
            for r in &odd {
                classes.push(SpinClass { label: ClassLabel::PureOdd(r.clone()), size: sergeev_class_size(d, r) });
            }
            for l in strict.iter().filter(|l| delta(l) == 1) {
                classes.push(SpinClass { label: ClassLabel::Twisted(l.clone()), size: sergeev_class_size(d, l) });
            }
            rows_list = rows(strict, |l| delta(l) == 1);
            for (l, s) in &rows_list {
                let scale = pow2(-(delta(l) as i64));
                values.push(
                    classes
                        .iter()
                        .map(|c| match &c.label {
                            ClassLabel::PureOdd(r) => q(th.theta(l, r) * &scale),
                            ClassLabel::Twisted(k) if k == l => {
                                let c = pow2((l.len() as i64 - 1) / 2);
                                signed(im_sqrt_prod(l, c), s.unwrap_or(true))
                            }
                            _ => AlgebraicValue::zero(),
                        })
                        .collect(),
                );
            }
        }
        Family::SergeevEven => {
            for r in &odd {
                let size = sergeev_class_size(d, r);
                if r.is_strict() && r.len() % 2 == 0 {
                    classes.push(SpinClass { label: ClassLabel::Half(r.clone(), Sheet::A), size: size / 2 });
                    classes.push(SpinClass { label: ClassLabel::Half(r.clone(), Sheet::B), size: size / 2 });
                } else {
                    classes.push(SpinClass { label: ClassLabel::PureOdd(r.clone()), size });
                }
            }
            for l in strict.iter().filter(|l| delta(l) == 0 && !l.is_odd()) {
                classes.push(SpinClass { label: ClassLabel::Twisted(l.clone()), size: sergeev_class_size(d, l) });
            }
            rows_list = rows(strict, |l| delta(l) == 0);
            for (l, s) in &rows_list {
                let special = |l: &Partition| {
                    let c = pow2(l.len() as i64 / 2) / int(2);
                    signed(im_sqrt_prod(l, c), s.unwrap_or(true))
                };
                values.push(
                    classes
                        .iter()
                        .map(|c| match &c.label {
                            ClassLabel::PureOdd(r) => q(th.theta(l, r) / int(2)),
                            ClassLabel::Half(r, sheet) if r == l => {
                                let v = q(th.theta(l, r) / int(2)).add(&special(l));
                                if *sheet == Sheet::A { v } else { v.conj() }
                            }
                            ClassLabel::Half(r, _) => q(th.theta(l, r) / int(2)),
                            ClassLabel::Twisted(k) if k == l => special(l),
                            ClassLabel::Twisted(_) => AlgebraicValue::zero(),
                        })
                        .collect(),
                );
            }
        }
    }
    let characters = rows_list
        .into_iter()
        .zip(values)
        .map(|((lambda, sign), values)| SpinCharacter { lambda, sign, values })
        .collect();
    Ok(CharacterTable { group, classes, characters })
}

/// "(123)(45)" for λ = (3,2); "e" when λ has no part > 1.
fn cycle_notation(lambda: &Partition, reversed: bool) -> String {
    let mut out = String::new();
    let mut next = 1;
    for &m in lambda.parts() {
        if m > 1 {
            let mut c: Vec<String> = (next..next + m).map(|x| x.to_string()).collect();
            if reversed {
                c.reverse();
            }
            out.push_str(&format!("({})", c.concat()));
        }
        next += m;
    }
    if out.is_empty() { "e".into() } else { out }
}

impl CharacterTable {
    pub fn class_label(&self, c: &SpinClass) -> String {
        let perm_style = matches!(self.group.family, Family::SpinSym | Family::SpinAlt);
        match &c.label {
            ClassLabel::PureOdd(r) if r.nontrivial().is_empty() => "e".into(),
            ClassLabel::PureOdd(r) | ClassLabel::Twisted(r) if perm_style => cycle_notation(r, false),
            ClassLabel::Half(r, s) if perm_style => cycle_notation(r, *s == Sheet::B),
            ClassLabel::PureOdd(r) => format!("C_{{{}}}", cycle_notation(r, false)),
            ClassLabel::Twisted(r) if self.group.family == Family::Sergeev => {
                format!("C_{{{},1}}", cycle_notation(r, false))
            }
            ClassLabel::Twisted(r) => format!("C_{{{}}}", cycle_notation(r, false)),
            ClassLabel::Half(r, s) => {
                let tag = if *s == Sheet::A { "a" } else { "b" };
                format!("C_{{{}}}({tag})", cycle_notation(r, false))
            }
        }
    }

    fn grid(&self) -> Vec<Vec<String>> {
        let mut g = Vec::new();
        let mut head = vec![self.group.name()];
        head.extend(self.classes.iter().map(|c| self.class_label(c)));
        g.push(head);
        let mut sizes = vec![self.group.order().to_string()];
        sizes.extend(self.classes.iter().map(|c| c.size.to_string()));
        g.push(sizes);
        for ch in &self.characters {
            let mut row = vec![ch.label()];
            row.extend(ch.values.iter().map(|v| v.render()));
            g.push(row);
        }
        g
    }

    /// One line per table row, cells separated by " | ": group name and class
    /// labels, then the group order and class sizes, then one line per character.
    pub fn render_text(&self) -> String {
        self.grid().iter().map(|r| r.join(" | ") + "\n").collect()
    }

    pub fn render_csv(&self) -> String {
        let cell = |s: &String| if s.contains(',') || s.contains('"') { format!("\"{}\"", s.replace('"', "\"\"")) } else { s.clone() };
        self.grid().iter().map(|r| r.iter().map(cell).collect::<Vec<_>>().join(",") + "\n").collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "group": self.group.name(),
            "family": self.group.family,
            "degree": self.group.degree,
            "order": self.group.order(),
            "classes": self.classes.iter().map(|c| json!({
                "label": self.class_label(c),
                "size": c.size,
            })).collect::<Vec<_>>(),
            "characters": self.characters.iter().map(|ch| json!({
                "label": ch.label(),
                "lambda": ch.lambda,
                "sign": ch.sign.map(|s| if s { "+" } else { "-" }),
                "dimension": ch.dimension(),
                "values": ch.values.iter().map(|v| v.render()).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }

    fn half_order(&self) -> AlgebraicValue {
        AlgebraicValue::rational(rat(self.group.order() as i64, 2))
    }

    /// Σ_j |C_j| χ_i(C_j) conj(χ_i'(C_j)) = ½|G| δ_{ii'}.
    pub fn rows_orthogonal(&self) -> bool {
        let half = self.half_order();
        self.characters.iter().enumerate().all(|(i, a)| {
            self.characters.iter().enumerate().all(|(k, b)| {
                let mut s = AlgebraicValue::zero();
                for (j, c) in self.classes.iter().enumerate() {
                    s = s.add(&a.values[j].mul(&b.values[j].conj()).scale(&int(c.size as i64)));
                }
                if i == k { s == half } else { s.is_zero() }
            })
        })
    }

    /// Σ_i |C_j| χ_i(C_j) conj(χ_i(C_j')) = ½|G| δ_{jj'}.
    pub fn columns_orthogonal(&self) -> bool {
        let half = self.half_order();
        let n = self.classes.len();
        (0..n).all(|j| {
            (0..n).all(|k| {
                let mut s = AlgebraicValue::zero();
                for ch in &self.characters {
                    s = s.add(&ch.values[j].mul(&ch.values[k].conj()));
                }
                s = s.scale(&int(self.classes[j].size as i64));
                if j == k { s == half } else { s.is_zero() }
            })
        })
    }
}

/// One of the half-sum identities for a single character.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HalfSum {
    pub identity: &'static str,
    pub group: String,
    pub character: String,
    #[serde(with = "crate::exact::serde_rational")]
    pub first: Rational,
    #[serde(with = "crate::exact::serde_rational")]
    pub second: Rational,
}

impl HalfSum {
    pub fn holds(&self) -> bool {
        self.first == rat(1, 2) && self.second == rat(1, 2)
    }
}

fn abs_sq(v: &AlgebraicValue) -> Rational {
    v.mul(&v.conj()).as_rational().expect("|z|² is rational")
}

fn part_sq(v: &AlgebraicValue, part: Part) -> Rational {
    let mut r = AlgebraicValue::zero();
    for (p, m, c) in v.terms() {
        if p == part {
            r = r.add(&AlgebraicValue::term(Part::Re, m, c.clone()));
        }
    }
    r.mul(&r).as_rational().expect("square of a real quadratic number with one radical")
}

/// The half-sum identities for every applicable character of degree d. Sums run
/// over whole groups, so each tabulated class C counts together with εC.
pub fn half_sums(d: u32) -> Result<Vec<HalfSum>> {
    let mut out = Vec::new();
    let order = |t: &CharacterTable| int(t.group.order() as i64);
    let st = character_table(GroupId::new(Family::SpinSym, d)?)?;
    for ch in st.characters.iter().filter(|c| eps(d, &c.lambda) == 1) {
        let (mut a, mut b) = (Rational::zero(), Rational::zero());
        for (c, v) in st.classes.iter().zip(&ch.values) {
            let w = int(2 * c.size as i64) * abs_sq(v);
            match &c.label {
                ClassLabel::PureOdd(_) => a += w,
                ClassLabel::Twisted(l) if *l == ch.lambda => b += w,
                _ => {}
            }
        }
        out.push(HalfSum { identity: "spin-symmetric", group: st.group.name(), character: ch.label(), first: a / order(&st), second: b / order(&st) });
    }
    let se = character_table(GroupId::new(Family::Sergeev, d)?)?;
    for ch in se.characters.iter().filter(|c| delta(&c.lambda) == 1) {
        let (mut a, mut b) = (Rational::zero(), Rational::zero());
        for (c, v) in se.classes.iter().zip(&ch.values) {
            let w = int(2 * c.size as i64) * abs_sq(v);
            match &c.label {
                ClassLabel::PureOdd(_) => a += w,
                ClassLabel::Twisted(l) if *l == ch.lambda => b += w,
                _ => {}
            }
        }
        out.push(HalfSum { identity: "sergeev", group: se.group.name(), character: ch.label(), first: a / order(&se), second: b / order(&se) });
    }
    let s0 = character_table(GroupId::new(Family::SergeevEven, d)?)?;
    for ch in s0.characters.iter().filter(|c| delta(&c.lambda) == 0) {
        let (mut a, mut b) = (Rational::zero(), Rational::zero());
        for (c, v) in s0.classes.iter().zip(&ch.values) {
            a += int(2 * c.size as i64) * part_sq(v, Part::Re);
            b += int(2 * c.size as i64) * part_sq(v, Part::Im);
        }
        out.push(HalfSum { identity: "sergeev-even", group: s0.group.name(), character: ch.label(), first: a / order(&s0), second: b / order(&s0) });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn class_ratio_examples() {
        assert_eq!(class_ratio(&p(&[3, 1, 1]), &p(&[5])).unwrap(), int(20));
        assert_eq!(class_ratio(&p(&[1, 1, 1]), &p(&[2, 1])).unwrap(), int(1));
        assert_eq!(class_ratio(&p(&[3]), &p(&[2, 1])).unwrap(), int(-4));
        assert!(class_ratio(&p(&[3, 3]), &p(&[4, 2])).is_err());
    }

    #[test]
    fn theta_small() {
        let t = theta_table(3).unwrap();
        assert_eq!(t.dims[&p(&[3])], 8);
        assert_eq!(t.theta(&p(&[3]), &p(&[3])), int(2));
        assert_eq!(t.theta(&p(&[2, 1]), &p(&[1, 1, 1])), int(4));
        assert_eq!(t.theta(&p(&[2, 1]), &p(&[3])), int(-2));
    }

    #[test]
    fn cycle_labels() {
        assert_eq!(cycle_notation(&p(&[3, 2]), false), "(123)(45)");
        assert_eq!(cycle_notation(&p(&[5]), true), "(54321)");
        assert_eq!(cycle_notation(&p(&[1]), false), "e");
    }
}
