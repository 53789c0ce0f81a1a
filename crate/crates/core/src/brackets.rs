//! Spin q-brackets: direct enumeration over strict partitions, closed forms in
//! Q[G₂,G₄,G₆], connected brackets, the modified bracket ⟨f⟩*, insertions of
//! p₋₁, and the ℏ-, L- and N-brackets.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{big, int, rat, PiSquaredPoly, Rational};
use crate::partitions::{set_partitions_with_mobius, strict_up_to, Partition};
use crate::qmf::{
    eisenstein_form, ev, recognize, recognize_mixed, GrowthPolynomial, QSeries, QuasimodularForm, RECOGNITION_MARGIN,
};
use crate::symfun::{bold_p_value, p_power, partial2, rho_op, Monomial, SymFunc};

/// ∏_{m≥1} (1 − q^m)^{−1} truncated at q^N.
fn partition_series(n: usize) -> QSeries {
    let mut v = vec![Rational::zero(); n + 1];
    v[0] = Rational::one();
    for m in 1..=n {
        for k in m..=n {
            let t = v[k - m].clone();
            v[k] += t;
        }
    }
    QSeries::new(v)
}

/// ⟨f⟩ = Σ_{λ∈SP} (−1)^{ℓ(λ)} f(λ) q^{|λ|} / ∏(1 − q^m), for any f: SP → Q.
pub fn bracket_direct_fn(f: &dyn Fn(&Partition) -> Rational, n: usize) -> QSeries {
    let mut num = vec![Rational::zero(); n + 1];
    for lambda in strict_up_to(n as u32) {
        let v = f(&lambda);
        if v.is_zero() {
            continue;
        }
        let d = lambda.size() as usize;
        if lambda.len() % 2 == 0 {
            num[d] += v;
        } else {
            num[d] -= v;
        }
    }
    QSeries::new(num).mul(&partition_series(n))
}

/// Direct bracket of an element of Λ.
pub fn bracket_direct(f: &SymFunc, n: usize) -> QSeries {
    bracket_direct_fn(&|l| f.eval(l), n)
}

/// Direct bracket of p₋₁·f.
pub fn bracket_direct_pminus1(f: &SymFunc, n: usize) -> QSeries {
    bracket_direct_fn(&|l| p_power(-1, l) * f.eval(l), n)
}

fn closed_cache() -> &'static Mutex<HashMap<Monomial, QuasimodularForm>> {
    static C: OnceLock<Mutex<HashMap<Monomial, QuasimodularForm>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

fn eisenstein_cached(k: u32) -> QuasimodularForm {
    static C: OnceLock<Mutex<HashMap<u32, QuasimodularForm>>> = OnceLock::new();
    let c = C.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = c.lock().expect("cache").get(&k) {
        return f.clone();
    }
    let f = eisenstein_form(k);
    c.lock().expect("cache").insert(k, f.clone());
    f
}

/// D^j G_k as a form.
pub fn dj_gk(j: u32, k: u32) -> QuasimodularForm {
    eisenstein_cached(k).d_pow(j)
}

fn closed_monomial(m: &[u32]) -> QuasimodularForm {
    if m.is_empty() {
        return QuasimodularForm::one();
    }
    if let Some(f) = closed_cache().lock().expect("cache").get(m) {
        return f.clone();
    }
    // ⟨𝐩_k f⟩ = −Σ_{i,j} ⟨ϱ_{i,j} f⟩ D^j G_{k+i+1}
    let k = *m.last().expect("nonempty");
    let rest = SymFunc::term(m[..m.len() - 1].to_vec(), Rational::one());
    let deg = (m.len() - 1) as u32;
    let max_sum: u32 = m[..m.len() - 1].iter().sum();
    let mut out = QuasimodularForm::zero();
    for j in 0..=deg {
        for i in (0..=max_sum).step_by(2) {
            let r = rho_op(i, j, &rest);
            if r.is_zero() {
                continue;
            }
            out = out.sub(&bracket_closed(&r).mul(&dj_gk(j, k + i + 1)));
        }
    }
    closed_cache().lock().expect("cache").insert(m.to_vec(), out.clone());
    out
}

/// Closed form of ⟨f⟩ via the 𝐩_k-recursion with ⟨1⟩ = 1.
pub fn bracket_closed(f: &SymFunc) -> QuasimodularForm {
    let mut out = QuasimodularForm::zero();
    for (m, c) in f.terms() {
        out = out.add(&closed_monomial(m).scale(c));
    }
    out
}

/// A q-bracket in both representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketResult {
    pub q_expansion: QSeries,
    pub closed_form: Option<QuasimodularForm>,
    pub weight: u32,
}

impl BracketResult {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "weight": self.weight,
            "q_expansion": self.q_expansion.to_strings(),
            "closed_form": self.closed_form.as_ref().map(|f| f.to_json()),
        })
    }
}

fn total_weight(fs: &[SymFunc]) -> Result<u32> {
    let mut k = 0;
    for f in fs {
        if f.is_zero() {
            continue;
        }
        k += f.weight().ok_or_else(|| Error::Invalid("bracket slots must be homogeneous".into()))?;
    }
    Ok(k)
}

/// Möbius sum Σ_α μ(α) ∏_{A∈α} F(A) over set partitions of the slots.
fn mobius_sum<T: Clone>(
    n: usize,
    zero: T,
    block: &mut dyn FnMut(&[usize]) -> T,
    mul: &dyn Fn(&T, &T) -> T,
    add: &dyn Fn(&T, &T, &Rational) -> T,
) -> T {
    let mut cache: HashMap<Vec<usize>, T> = HashMap::new();
    let mut acc = zero;
    for (alpha, w) in set_partitions_with_mobius(n) {
        let mut prod: Option<T> = None;
        for b in &alpha {
            let v = cache.entry(b.clone()).or_insert_with(|| block(b)).clone();
            prod = Some(match prod {
                None => v,
                Some(p) => mul(&p, &v),
            });
        }
        if let Some(p) = prod {
            acc = add(&acc, &p, &big(&w));
        }
    }
    acc
}

fn product_of(fs: &[SymFunc], idx: &[usize]) -> SymFunc {
    SymFunc::product(idx.iter().map(|&i| &fs[i]))
}

/// Connected bracket ⟨f₁|⋯|f_n⟩ by the Möbius sum of closed forms.
pub fn connected_closed(fs: &[SymFunc]) -> QuasimodularForm {
    mobius_sum(
        fs.len(),
        QuasimodularForm::zero(),
        &mut |b| bracket_closed(&product_of(fs, b)),
        &|a, b| a.mul(b),
        &|acc, p, w| acc.add(&p.scale(w)),
    )
}

/// Connected bracket as a q-series from direct enumeration.
pub fn connected_series(fs: &[SymFunc], n: usize) -> QSeries {
    mobius_sum(
        fs.len(),
        QSeries::zero(n),
        &mut |b| bracket_direct(&product_of(fs, b), n),
        &|a, b| a.mul(b),
        &|acc, p, w| acc.add(&p.scale(w)),
    )
}

/// ⟨f₁|⋯|f_n⟩ by direct enumeration, recognized as a form of weight Σ wt(f_i).
pub fn connected_bracket(fs: &[SymFunc], n: usize) -> Result<BracketResult> {
    if fs.is_empty() {
        return Err(Error::Invalid("connected bracket needs at least one slot".into()));
    }
    let k = total_weight(fs)?;
    let q = connected_series(fs, n);
    let closed = recognize(&q, k)?;
    Ok(BracketResult { q_expansion: q, closed_form: Some(closed), weight: k })
}

/// ⟨f⟩* = Σ_{i≥2, j≥0} ⟨ϱ*_{i,j} f⟩ D^j G_i with ϱ*_{i,j} = ϱ_{i,j} + δ_{i,2} ϱ_{0,j+1}.
pub fn modified_bracket(f: &SymFunc) -> QuasimodularForm {
    let Some(maxw) = f.max_weight() else {
        return QuasimodularForm::zero();
    };
    let mut out = QuasimodularForm::zero();
    for j in 0..=maxw {
        for i in (2..=maxw).step_by(2) {
            let mut r = rho_op(i, j, f);
            if i == 2 {
                r = r.add(&rho_op(0, j + 1, f));
            }
            if r.is_zero() {
                continue;
            }
            out = out.add(&bracket_closed(&r).mul(&dj_gk(j, i)));
        }
    }
    out
}

/// ⟨f⟩* from q-series: −(⟨p₋₁f⟩ − ⟨p₋₁⟩⟨f⟩) − (1/24)⟨∂₂f⟩.
pub fn modified_bracket_series(f: &SymFunc, n: usize) -> QSeries {
    let conn = bracket_direct_pminus1(f, n)
        .sub(&bracket_direct_pminus1(&SymFunc::one(), n).mul(&bracket_direct(f, n)));
    conn.scale(&int(-1)).sub(&bracket_direct(&partial2(f), n).scale(&rat(1, 24)))
}

/// X(g) = ⟨p₋₁g⟩ − ⟨p₋₁⟩⟨g⟩ = −⟨g⟩* − (1/24)⟨∂₂g⟩ for g ∈ Λ.
fn p_minus1_block(g: &SymFunc) -> QuasimodularForm {
    modified_bracket(g)
        .scale(&int(-1))
        .sub(&bracket_closed(&partial2(g)).scale(&rat(1, 24)))
}

/// ⟨p₋₁|f₁|⋯|f_n⟩ in closed form. In the Möbius sum over Π({0,…,n}) the
/// block {0}∪A contributes ⟨p₋₁f_A⟩ = X(f_A) + ⟨p₋₁⟩⟨f_A⟩; the ⟨p₋₁⟩ parts add
/// up to ⟨p₋₁⟩ times a connected bracket with a constant slot, which vanishes.
/// So each such block is replaced by X(f_A), with X(1) = 0.
pub fn connected_pminus1_closed(fs: &[SymFunc]) -> QuasimodularForm {
    mobius_sum(
        fs.len() + 1,
        QuasimodularForm::zero(),
        &mut |b| {
            let idx: Vec<usize> = b.iter().filter(|&&i| i != 0).map(|i| i - 1).collect();
            let g = product_of(fs, &idx);
            if b.contains(&0) {
                p_minus1_block(&g)
            } else {
                bracket_closed(&g)
            }
        },
        &|a, b| a.mul(b),
        &|acc, p, w| acc.add(&p.scale(w)),
    )
}

/// ⟨p₋₁|f₁|⋯|f_n⟩ as a q-series from direct enumeration.
pub fn connected_pminus1_series(fs: &[SymFunc], n: usize) -> QSeries {
    mobius_sum(
        fs.len() + 1,
        QSeries::zero(n),
        &mut |b| {
            let idx: Vec<usize> = b.iter().filter(|&&i| i != 0).map(|i| i - 1).collect();
            let g = product_of(fs, &idx);
            if b.contains(&0) {
                bracket_direct_pminus1(&g, n)
            } else {
                bracket_direct(&g, n)
            }
        },
        &|a, b| a.mul(b),
        &|acc, p, w| acc.add(&p.scale(w)),
    )
}

/// ⟨p₋₁|f₁|⋯|f_n⟩ by direct enumeration, recognized among all forms of weight
/// ≤ Σ wt(f_i) (the result mixes weights k and k−2).
pub fn connected_with_pminus1(fs: &[SymFunc], n: usize) -> Result<BracketResult> {
    let k = total_weight(fs)?;
    let q = connected_pminus1_series(fs, n);
    let closed = recognize_mixed(&q, k).map_err(|e| match e {
        Error::NotQuasimodular { weight, .. } => Error::NotQuasimodular {
            weight,
            detail: "p_{-1} connected bracket not quasimodular".into(),
        },
        other => other,
    })?;
    Ok(BracketResult { q_expansion: q, closed_form: Some(closed), weight: k })
}

/// Slots of a connected bracket: an optional leading p₋₁ and elements of Λ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectedSpec {
    pub pminus1: bool,
    pub slots: Vec<SymFunc>,
}

impl ConnectedSpec {
    pub fn plain(slots: Vec<SymFunc>) -> Self {
        Self { pminus1: false, slots }
    }

    pub fn with_pminus1(slots: Vec<SymFunc>) -> Self {
        Self { pminus1: true, slots }
    }

    pub fn weight(&self) -> Result<u32> {
        total_weight(&self.slots)
    }

    /// Closed form of the connected bracket.
    pub fn closed(&self) -> QuasimodularForm {
        if self.pminus1 {
            connected_pminus1_closed(&self.slots)
        } else {
            connected_closed(&self.slots)
        }
    }

    pub fn series(&self, n: usize) -> QSeries {
        if self.pminus1 {
            connected_pminus1_series(&self.slots, n)
        } else {
            connected_series(&self.slots, n)
        }
    }
}

/// ⟨…⟩_ℏ = ev[⟨…⟩].
pub fn hbar_bracket(spec: &ConnectedSpec) -> GrowthPolynomial {
    ev(&spec.closed())
}

/// Leading term of a growth polynomial: the coefficient of x^{k−r+1} divided by
/// (2πi)^{k−2r+2}, where r counts the Λ-slots only.
pub fn leading_term(g: &GrowthPolynomial, k: u32, r: u32) -> Result<Rational> {
    let deg = k as i64 - r as i64 + 1;
    let pw = k as i64 - 2 * r as i64 + 2;
    if deg < 0 || pw < 0 || pw % 2 != 0 {
        return Err(Error::Invalid(format!("no leading term for weight {k} with {r} slots")));
    }
    let c = g.coeff(deg as u32);
    if c.is_zero() {
        return Ok(Rational::zero());
    }
    let (q, j) = c.as_monomial().ok_or(Error::PiResidue)?;
    if j as i64 != pw / 2 {
        return Err(Error::PiResidue);
    }
    let norm = PiSquaredPoly::two_pi_i_pow(pw as u32).as_monomial().expect("monomial").0;
    Ok(q / norm)
}

/// ⟨…⟩_L
pub fn l_bracket(spec: &ConnectedSpec) -> Result<Rational> {
    let k = spec.weight()?;
    leading_term(&hbar_bracket(spec), k, spec.slots.len() as u32)
}

/// [f₁|⋯|f_r]_N = Σ_{n=1}^N a_n, computed from the closed form.
pub fn n_bracket(spec: &ConnectedSpec, n: usize) -> Rational {
    let q = spec.closed().expand(n);
    q.coeffs()[1..].iter().sum()
}

/// Truncation order large enough to recognize a mixed-weight form of weight ≤ k.
pub fn mixed_recognition_order(k: u32) -> usize {
    let count: usize = (0..=k).step_by(2).map(|w| crate::qmf::monomials_of_weight(w).len()).sum();
    count + RECOGNITION_MARGIN
}

/// 𝐩_k(λ) as an SP-function, for callers that want a plain closure.
pub fn bold_p(k: u32) -> impl Fn(&Partition) -> Rational {
    move |l| bold_p_value(k, l)
}
