use num_traits::Zero;
use proptest::prelude::*;
use spinsv::exact::{bernoulli, fmt_rational, int, parse_rational, rat, zeta_neg, AlgebraicValue, Part, Rational};
use spinsv::partitions::{enumerate, set_partitions, z_factor, Kind, Partition};

#[test]
fn rational_text_round_trip() {
    for s in ["0", "-3", "7/2", "-305/580608"] {
        assert_eq!(fmt_rational(&parse_rational(s).unwrap()), s);
    }
    assert_eq!(parse_rational(" 6/4 ").unwrap(), rat(3, 2));
    assert!(parse_rational("1/0").is_err());
    assert!(parse_rational("x").is_err());
}

#[test]
fn bernoulli_and_zeta_at_negative_integers() {
    assert_eq!(bernoulli(2), rat(1, 6));
    assert_eq!(bernoulli(4), rat(-1, 30));
    assert_eq!(bernoulli(12), rat(-691, 2730));
    assert_eq!(zeta_neg(1), rat(-1, 12));
    assert_eq!(zeta_neg(3), rat(1, 120));
    assert!(zeta_neg(2).is_zero());
}

#[test]
fn algebraic_rendering() {
    let i3 = AlgebraicValue::sqrt_of(&int(3), true);
    assert_eq!(i3.render(), "+i√3");
    assert_eq!(i3.scale(&int(-1)).render(), "-i√3");
    let w = AlgebraicValue::rational(rat(1, 2)).sub(&i3.scale(&rat(1, 2)));
    assert_eq!(w.render(), "1/2-1/2i√3");
    assert_eq!(AlgebraicValue::sqrt_of(&int(4), true).render(), "+2i");
    // √12 reduces to 2√3
    assert_eq!(AlgebraicValue::term(Part::Re, 12, int(1)).render(), "2√3");
}

#[test]
fn algebraic_products() {
    let i3 = AlgebraicValue::sqrt_of(&int(3), true);
    assert_eq!(i3.mul(&i3).as_rational(), Some(int(-3)));
    assert_eq!(i3.mul(&i3.conj()).as_rational(), Some(int(3)));
    let s2 = AlgebraicValue::sqrt_of(&rat(1, 2), false);
    assert_eq!(s2.mul(&s2).as_rational(), Some(rat(1, 2)));
}

// counts of strict partitions and of odd partitions (they coincide)
const STRICT_COUNTS: [usize; 16] = [1, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10, 12, 15, 18, 22, 27];

#[test]
fn partition_counts() {
    for (n, &c) in STRICT_COUNTS.iter().enumerate() {
        assert_eq!(enumerate(Kind::Strict, n as u32).len(), c, "strict {n}");
        assert_eq!(enumerate(Kind::Odd, n as u32).len(), c, "odd {n}");
    }
    let all: Vec<usize> = (0..10).map(|n| enumerate(Kind::All, n).len()).collect();
    assert_eq!(all, [1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
}

#[test]
fn enumeration_is_lex_decreasing() {
    let p = enumerate(Kind::Strict, 6);
    let parts: Vec<&[u32]> = p.iter().map(|x| x.parts()).collect();
    assert_eq!(parts, vec![&[6][..], &[5, 1], &[4, 2], &[3, 2, 1]]);
}

#[test]
fn class_sizes_sum_to_group_order() {
    // Σ_ρ n!/z_ρ = n!
    for n in 1..=7u32 {
        let s: Rational = enumerate(Kind::All, n).iter().map(|r| int(1) / z_factor(r)).sum();
        assert_eq!(s, int(1), "n = {n}");
    }
}

#[test]
fn bell_numbers() {
    let b: Vec<usize> = (0..7).map(|n| set_partitions(n).len()).collect();
    assert_eq!(b, [1, 1, 2, 5, 15, 52, 203]);
}

proptest! {
    #[test]
    fn rational_format_parses_back(n in -10_000i64..10_000, d in 1i64..10_000) {
        let q = rat(n, d);
        prop_assert_eq!(parse_rational(&fmt_rational(&q)).unwrap(), q);
    }

    #[test]
    fn conj_is_multiplicative(a in -20i64..20, b in -20i64..20, c in -20i64..20, e in -20i64..20, m in 2u64..12) {
        let x = AlgebraicValue::rational(int(a)).add(&AlgebraicValue::term(Part::Im, m, int(b)));
        let y = AlgebraicValue::rational(int(c)).add(&AlgebraicValue::term(Part::Im, m, int(e)));
        prop_assert_eq!(x.mul(&y).conj(), x.conj().mul(&y.conj()));
        prop_assert!(x.mul(&x.conj()).as_rational().is_some());
    }

    #[test]
    fn partition_normalizes(parts in proptest::collection::vec(1u32..9, 0..6)) {
        let p = Partition::new(parts.clone());
        prop_assert_eq!(p.size(), parts.iter().sum::<u32>());
        prop_assert!(p.parts().windows(2).all(|w| w[0] >= w[1]));
    }
}
