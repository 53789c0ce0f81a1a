use num_traits::Zero;
use proptest::prelude::*;
use spinsv::brackets::{
    bracket_closed, bracket_direct, bracket_direct_pminus1, l_bracket, modified_bracket, modified_bracket_series, n_bracket,
    ConnectedSpec,
};
use spinsv::exact::{int, rat, PiSquaredPoly, Rational};
use spinsv::qmf::{ev, QSeries, QuasimodularForm};
use spinsv::symfun::{exp_d_at_empty, monomials_of_weight, partial2, SymFunc};

const N: usize = 20;

fn sf(s: &str) -> SymFunc {
    s.parse().unwrap()
}

/// Strict partitions of n with parts ≤ max, built independently of the library.
fn strict(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        for mut rest in strict(n - first, first - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// ⟨f⟩ computed from scratch: Σ_λ (−1)^ℓ f(λ) q^|λ| times Σ p(n) qⁿ.
fn bracket_oracle(f: impl Fn(&[u32]) -> Rational) -> QSeries {
    let mut num = vec![Rational::zero(); N + 1];
    for n in 0..=N as u32 {
        for l in strict(n, n) {
            let s = if l.len() % 2 == 0 { int(1) } else { int(-1) };
            num[n as usize] += s * f(&l);
        }
    }
    let mut p = vec![0i64; N + 1];
    p[0] = 1;
    for m in 1..=N {
        for k in m..=N {
            p[k] += p[k - m];
        }
    }
    QSeries::new((0..=N).map(|k| (0..=k).map(|j| &num[j] * int(p[k - j])).sum()).collect())
}

fn sigma1_series(constant: Rational) -> QSeries {
    let mut v = vec![constant];
    v.extend((1..=N).map(|n| int((1..=n).filter(|d| n % d == 0).sum::<usize>() as i64)));
    QSeries::new(v)
}

#[test]
fn bracket_of_p1_is_minus_g2() {
    // 𝐩₁(λ) = 1/24 + |λ|
    let direct = bracket_oracle(|l| rat(1, 24) + int(l.iter().sum::<u32>() as i64));
    assert_eq!(direct, sigma1_series(rat(-1, 24)).scale(&int(-1)));
    assert_eq!(bracket_closed(&sf("p1")), QuasimodularForm::g2().scale(&int(-1)));
}

#[test]
fn unit_bracket_is_one() {
    assert_eq!(bracket_oracle(|_| int(1)), QSeries::constant(int(1), N));
    assert_eq!(bracket_direct(&SymFunc::one(), N), QSeries::constant(int(1), N));
}

#[test]
fn direct_bracket_matches_oracle() {
    // 𝐩₃(λ) = −1/240 + Σλᵢ³
    let p3 = |l: &[u32]| rat(-1, 240) + int(l.iter().map(|&x| (x as i64).pow(3)).sum());
    assert_eq!(bracket_direct(&sf("p3"), N), bracket_oracle(p3));
    assert_eq!(bracket_direct(&sf("p1*p3"), N), bracket_oracle(|l| (rat(1, 24) + int(l.iter().sum::<u32>() as i64)) * p3(l)));
}

#[test]
fn closed_equals_direct_through_weight_eight() {
    for k in (0..=8).step_by(2) {
        for m in monomials_of_weight(k) {
            let f = SymFunc::term(m.clone(), int(1));
            assert_eq!(bracket_closed(&f).expand(N), bracket_direct(&f, N), "{m:?}");
        }
    }
}

#[test]
fn modified_bracket_of_p1_is_g2() {
    assert_eq!(modified_bracket(&sf("p1")), QuasimodularForm::g2());
}

#[test]
fn modified_bracket_routes_agree() {
    for k in (2..=8).step_by(2) {
        for m in monomials_of_weight(k) {
            let f = SymFunc::term(m.clone(), int(1));
            assert_eq!(modified_bracket(&f).expand(N), modified_bracket_series(&f, N), "{m:?}");
        }
    }
}

#[test]
fn pminus1_insertion_rule() {
    // ⟨p₋₁|f⟩ = −⟨f⟩* − (1/24)⟨∂₂f⟩
    for s in ["p1", "p3", "p1*p1", "p1*p3", "p5"] {
        let f = sf(s);
        let spec = ConnectedSpec::with_pminus1(vec![f.clone()]);
        let expected = modified_bracket(&f).scale(&int(-1)).sub(&bracket_closed(&partial2(&f)).scale(&rat(1, 24)));
        assert_eq!(spec.closed(), expected, "{s}");
        // and against the direct enumeration: ⟨p₋₁f⟩ − ⟨p₋₁⟩⟨f⟩
        let direct = bracket_direct_pminus1(&f, N).sub(&bracket_direct_pminus1(&SymFunc::one(), N).mul(&bracket_direct(&f, N)));
        assert_eq!(spec.series(N), direct, "{s}");
    }
}

#[test]
fn frozen_closed_forms() {
    let g2 = QuasimodularForm::g2();
    let g4 = QuasimodularForm::g4();
    let g6 = QuasimodularForm::g6();
    let p1p1 = ConnectedSpec::plain(vec![sf("p1"), sf("p1")]).closed();
    assert_eq!(p1p1, g2.pow(2).scale(&int(2)).sub(&g4.scale(&rat(5, 6))));
    let p1p3 = ConnectedSpec::plain(vec![sf("p1"), sf("p3")]).closed();
    assert_eq!(p1p3, g2.mul(&g4).scale(&int(8)).sub(&g6.scale(&rat(7, 10))));
    assert_eq!(bracket_closed(&sf("p5")), g6.scale(&int(-1)));
}

#[test]
fn connected_two_point_is_a_cumulant() {
    let (a, b) = (sf("p1"), sf("p3"));
    let joint = bracket_closed(&a.mul(&b)).sub(&bracket_closed(&a).mul(&bracket_closed(&b)));
    assert_eq!(ConnectedSpec::plain(vec![a, b]).closed(), joint);
}

#[test]
fn l_bracket_of_p1_p1_by_hand() {
    // ev[2G₂² − (5/6)G₄] has x³-coefficient 2·2·(π²/6)(−1/2) = −π²/3, and the
    // leading term divides by (2πi)² = −4π²
    let spec = ConnectedSpec::plain(vec![sf("p1"), sf("p1")]);
    assert_eq!(ev(&spec.closed()).coeff(3), PiSquaredPoly::monomial(rat(-1, 3), 1));
    assert_eq!(l_bracket(&spec).unwrap(), rat(1, 12));
}

#[test]
fn frozen_l_brackets() {
    let l = |p: bool, s: &str| {
        let fs: Vec<SymFunc> = s.split('|').map(sf).collect();
        l_bracket(&ConnectedSpec { pminus1: p, slots: fs }).unwrap()
    };
    assert_eq!(l(false, "p1"), rat(1, 24));
    assert_eq!(l(false, "p3"), rat(-1, 240));
    assert_eq!(l(false, "p1|p3"), rat(-1, 60));
    assert_eq!(l(false, "p1|p1|p1"), rat(1, 4));
    assert_eq!(l(true, "p1"), rat(1, 24));
    assert_eq!(l(true, "p1|p1"), rat(1, 12));
    assert_eq!(l(true, "p1|p3"), int(0));
}

#[test]
fn hbar_bracket_two_routes() {
    for k in (0..=8).step_by(2) {
        for m in monomials_of_weight(k) {
            let f = SymFunc::term(m.clone(), int(1));
            assert_eq!(ev(&bracket_closed(&f)), exp_d_at_empty(&f).unwrap(), "{m:?}");
        }
    }
}

#[test]
fn n_bracket_is_partial_sum() {
    let spec = ConnectedSpec::plain(vec![sf("p1"), sf("p1")]);
    let s = spec.series(10);
    let partial: Rational = s.coeffs()[1..].iter().sum();
    assert_eq!(n_bracket(&spec, 10), partial);
}

#[test]
fn parser_accepts_sums_and_powers() {
    let f = sf("1/2*p1^2 - p3 + 3");
    assert_eq!(f, SymFunc::term(vec![1, 1], rat(1, 2)).sub(&SymFunc::gen(3)).add(&SymFunc::constant(int(3))));
    assert_eq!(sf("-p1"), SymFunc::gen(1).scale(&int(-1)));
    assert_eq!(sf("p3*p1"), sf("p1*p3"));
    for bad in ["", "p2", "p1+", "q1", "p1^x"] {
        assert!(bad.parse::<SymFunc>().is_err(), "{bad:?}");
    }
}

fn monomial() -> impl Strategy<Value = SymFunc> {
    proptest::collection::vec(prop_oneof![Just(1u32), Just(3), Just(5)], 0..3).prop_map(|m| SymFunc::term(m, int(1)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn bracket_is_linear(a in monomial(), b in monomial(), x in -9i64..9, y in -9i64..9) {
        let f = a.scale(&int(x)).add(&b.scale(&int(y)));
        let lhs = bracket_closed(&f);
        let rhs = bracket_closed(&a).scale(&int(x)).add(&bracket_closed(&b).scale(&int(y)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn connected_bracket_is_symmetric(a in monomial(), b in monomial()) {
        let ab = ConnectedSpec::plain(vec![a.clone(), b.clone()]).closed();
        let ba = ConnectedSpec::plain(vec![b, a]).closed();
        prop_assert_eq!(ab, ba);
    }
}
