use proptest::prelude::*;
use spinsv::exact::{int, rat, PiSquaredPoly, Rational};
use spinsv::qmf::{
    eisenstein, eisenstein_form, ev, ev_eisenstein, recognize, recognize_mixed, GrowthPolynomial, QSeries,
    QuasimodularForm,
};

/// σ_{k−1}(n) by trial division.
fn sigma(k: u32, n: usize) -> i64 {
    (1..=n).filter(|d| n % d == 0).map(|d| (d as i64).pow(k - 1)).sum()
}

fn g_series(k: u32, constant: Rational, n: usize) -> QSeries {
    let mut v = vec![constant];
    v.extend((1..=n).map(|m| int(sigma(k, m))));
    QSeries::new(v)
}

/// q d/dq, done by hand.
fn q_deriv(s: &QSeries) -> QSeries {
    QSeries::new(s.coeffs().iter().enumerate().map(|(i, c)| c * int(i as i64)).collect())
}

const N: usize = 20;

#[test]
fn eisenstein_expansions() {
    assert_eq!(eisenstein(2, N).unwrap(), g_series(2, rat(-1, 24), N));
    assert_eq!(eisenstein(4, N).unwrap(), g_series(4, rat(1, 240), N));
    assert_eq!(eisenstein(6, N).unwrap(), g_series(6, rat(-1, 504), N));
    assert!(eisenstein(3, N).is_err());
}

#[test]
fn ramanujan_identities_on_series() {
    let (g2, g4, g6) = (g_series(2, rat(-1, 24), N), g_series(4, rat(1, 240), N), g_series(6, rat(-1, 504), N));
    let rhs2 = g2.mul(&g2).scale(&int(-2)).add(&g4.scale(&rat(5, 6)));
    assert_eq!(q_deriv(&g2), rhs2);
    let rhs4 = g2.mul(&g4).scale(&int(-8)).add(&g6.scale(&rat(7, 10)));
    assert_eq!(q_deriv(&g4), rhs4);
    let rhs6 = g2.mul(&g6).scale(&int(-12)).add(&g4.mul(&g4).scale(&rat(400, 7)));
    assert_eq!(q_deriv(&g6), rhs6);
}

#[test]
fn derivative_matches_on_forms() {
    for f in [QuasimodularForm::g2(), QuasimodularForm::g4(), QuasimodularForm::g6()] {
        assert_eq!(f.d().expand(N), q_deriv(&f.expand(N)));
    }
    let f = QuasimodularForm::g2().mul(&QuasimodularForm::g4());
    assert_eq!(f.d().expand(N), q_deriv(&f.expand(N)));
}

#[test]
fn higher_eisenstein_in_the_ring() {
    // worked out by hand from E8 = E4², E10 = E4E6
    let g4 = QuasimodularForm::g4();
    assert_eq!(eisenstein_form(8), g4.mul(&g4).scale(&int(120)));
    assert_eq!(eisenstein_form(10), g4.mul(&QuasimodularForm::g6()).scale(&rat(5040, 11)));
    assert_eq!(eisenstein_form(8).expand(N), g_series(8, rat(1, 480), N));
}

#[test]
fn recognition_rejects_non_quasimodular() {
    let junk = QSeries::new((0..=N).map(|i| int(i as i64 * i as i64 + 1)).collect());
    assert!(recognize(&junk, 4).is_err());
}

#[test]
fn ev_of_generators() {
    // ev[G₂] = (π²/6)x² − x/2
    let g2 = ev_eisenstein(2);
    assert_eq!(g2.coeff(1), PiSquaredPoly::constant(rat(-1, 2)));
    assert_eq!(g2.coeff(2), PiSquaredPoly::monomial(rat(1, 6), 1));
    // ev[G₄] = (1/240)(2πi)⁴x⁴ = (16/240)π⁴x⁴
    assert_eq!(ev_eisenstein(4), GrowthPolynomial::term(4, PiSquaredPoly::monomial(rat(1, 15), 2)));
    assert_eq!(ev(&QuasimodularForm::g4()), ev_eisenstein(4));
}

fn form_strategy(k: u32) -> impl Strategy<Value = QuasimodularForm> {
    let monos = spinsv::qmf::monomials_of_weight(k);
    proptest::collection::vec(-50i64..50, monos.len()).prop_map(move |cs| {
        let mut f = QuasimodularForm::zero();
        for (m, c) in monos.iter().zip(cs) {
            f.add_term(*m, int(c));
        }
        f
    })
}

proptest! {
    // each case solves an exact linear system
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn recognition_inverts_expansion(f in (1u32..=6).prop_flat_map(|h| form_strategy(2 * h))) {
        let w = f.weight().unwrap_or(0);
        if !f.is_zero() {
            prop_assert_eq!(recognize(&f.expand(N), w).unwrap(), f.clone());
        }
        // 23 monomials of weight ≤ 12 need more coefficients
        prop_assert_eq!(recognize_mixed(&f.expand(32), 12).unwrap(), f);
    }

    #[test]
    fn ev_is_multiplicative(a in form_strategy(4), b in form_strategy(6)) {
        prop_assert_eq!(ev(&a.mul(&b)), ev(&a).mul(&ev(&b)));
    }

    #[test]
    fn derivative_raises_weight_by_two(f in form_strategy(6)) {
        if !f.is_zero() {
            prop_assert_eq!(f.d().weight(), Some(8));
        }
        prop_assert_eq!(f.d().expand(N), q_deriv(&f.expand(N)));
    }
}
