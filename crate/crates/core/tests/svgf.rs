use proptest::prelude::*;
use spinsv::exact::{int, parse_rational, rat, Rational};
use spinsv::graphs::{VolumeSource, VolumeTable};
use spinsv::svgf::{
    c0_numerator, c0_numerator_genfun_literal, c0_pm, derived_constants, odd_signatures, vol_pm, OddSignature, Route,
};

fn sig(mu: &[u32]) -> OddSignature {
    OddSignature::new(mu.to_vec()).unwrap()
}

fn fixture() -> VolumeTable {
    VolumeTable::from_json_str(include_str!("data/volumes.json")).unwrap()
}

#[test]
fn signatures_must_be_odd() {
    assert!(OddSignature::new(vec![2, 2]).is_err());
    assert!(OddSignature::new(vec![]).is_err());
    assert_eq!(sig(&[3, 1]).genus(), 2);
}

#[test]
fn numerator_routes_agree() {
    let sigs = odd_signatures(9, 3);
    // weakly decreasing odd triples, pairs and singletons of size ≤ 9
    let odd = (1..=9).step_by(2);
    let mut count = odd.clone().count();
    for a in odd.clone() {
        for b in (1..=a).step_by(2) {
            count += usize::from(a + b <= 9);
            count += (1..=b).step_by(2).filter(|c| a + b + c <= 9).count();
        }
    }
    assert_eq!(sigs.len(), count);
    for s in sigs {
        assert_eq!(c0_numerator(&s, Route::Bracket).unwrap(), c0_numerator(&s, Route::Genfun).unwrap(), "{:?}", s.entries());
    }
}

#[test]
fn literal_genfun_reading_at_one_one() {
    // the literal formula yields 1/4 at (1,1); the routes agree on −1/2
    let s = sig(&[1, 1]);
    assert_eq!(c0_numerator_genfun_literal(&s), rat(1, 4));
    assert_eq!(c0_numerator(&s, Route::Bracket).unwrap(), rat(-1, 2));
}

#[test]
fn torus_volume_by_hand() {
    // 𝐡₁ = 𝐩₁ and ⟨𝐩₁⟩_L = 1/24, with χ = 0
    assert_eq!(vol_pm(&sig(&[1])), rat(1, 24));
}

#[test]
fn odd_only_strata_have_opposite_spin_volume() {
    // H(0) and H(2), with any number of marked points, are a single odd component
    let t = fixture();
    for mu in [&[1][..], &[1, 1], &[1, 1, 1], &[1, 1, 1, 1], &[3], &[3, 1], &[3, 1, 1], &[3, 1, 1, 1]] {
        let m: Vec<i64> = mu.iter().map(|&x| x as i64).collect();
        assert_eq!(vol_pm(&sig(mu)), -t.vol(&m).unwrap(), "{mu:?}");
    }
}

#[test]
fn odd_only_strata_have_known_constants() {
    // c_area is 3/π² for the torus and 10/(3π²) for H(2); both are odd only
    let t = fixture();
    for (mu, c) in [(&[1][..], int(-3)), (&[1, 1], int(-3)), (&[3], rat(-10, 3)), (&[3, 1], rat(-10, 3)), (&[3, 1, 1], rat(-10, 3))] {
        let m: Vec<i64> = mu.iter().map(|&x| x as i64).collect();
        let v = t.vol(&m).unwrap();
        assert_eq!(c0_pm(&sig(mu), &v, Route::Bracket).unwrap(), c, "{mu:?}");
    }
}

#[test]
fn frozen_values() {
    let cases = [
        (&[5][..], "143/580608", "-37/11520"),
        (&[5, 1], "715/580608", "-37/2304"),
        (&[3, 3], "19/17920", "-23/1920"),
        (&[7], "-15697/199065600", "4919/5806080"),
        (&[3, 3, 1], "57/8960", "-23/320"),
    ];
    for (mu, v, n) in cases {
        assert_eq!(vol_pm(&sig(mu)), parse_rational(v).unwrap(), "{mu:?}");
        assert_eq!(c0_numerator(&sig(mu), Route::Bracket).unwrap(), parse_rational(n).unwrap(), "{mu:?}");
    }
}

#[test]
fn derived_constants_scale_c0() {
    let s = sig(&[5, 3, 1]);
    let d = derived_constants(&rat(2, 7), &s);
    assert_eq!(d.c_i, vec![rat(10, 7), rat(6, 7), rat(2, 7)]);
    assert_eq!(d.c_cyl, rat(18, 7));
}

#[test]
fn zero_volume_is_rejected() {
    assert!(c0_pm(&sig(&[3]), &Rational::from_integer(0.into()), Route::Bracket).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn entry_order_is_irrelevant(mut mu in proptest::collection::vec(prop_oneof![Just(1u32), Just(3), Just(5)], 1..4)) {
        let a = sig(&mu);
        mu.reverse();
        let b = sig(&mu);
        prop_assert_eq!(vol_pm(&a), vol_pm(&b));
        prop_assert_eq!(c0_numerator(&a, Route::Genfun).unwrap(), c0_numerator(&b, Route::Genfun).unwrap());
    }

    #[test]
    fn marked_point_scales_by_size(mu in proptest::collection::vec(prop_oneof![Just(1u32), Just(3), Just(5)], 1..3)) {
        // forgetting a marked point multiplies vol by |μ| and leaves c₀ alone
        let size = int(mu.iter().sum::<u32>() as i64);
        let mut with = mu.clone();
        with.push(1);
        let (a, b) = (sig(&mu), sig(&with));
        prop_assert_eq!(c0_numerator(&b, Route::Bracket).unwrap(), &size * c0_numerator(&a, Route::Bracket).unwrap());
        prop_assert_eq!(vol_pm(&b), size * vol_pm(&a));
    }
}
