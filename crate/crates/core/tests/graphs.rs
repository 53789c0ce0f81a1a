use spinsv::exact::{int, rat, Rational};
use spinsv::graphs::families::HalfMarker;
use spinsv::graphs::genus0::{exchange_sides, f_value, f_with_pivot, phi_value};
use spinsv::graphs::identities::{
    chain_sum, check_chain_fibers, check_f_i_fibers, d1, expanded_chain_sum, pair_of_holes_sides, rooted_tree_sides,
    table_from_seeds, volume_recursion,
};
use spinsv::graphs::{SpinVolumes, VolumeSource, VolumeTable};
use spinsv::svgf::{c0_numerator, OddSignature, Route};

fn fixture() -> VolumeTable {
    VolumeTable::from_json_str(include_str!("data/volumes.json")).unwrap()
}

#[test]
fn fixture_follows_from_one_entry_seeds() {
    let t = fixture();
    let mut seeds = VolumeTable::new();
    for mu in [[1], [3], [5]] {
        seeds.insert(&mu, t.vol(&mu).unwrap()).unwrap();
    }
    let derived = table_from_seeds(&seeds, 6).unwrap();
    for (mu, v) in t.entries() {
        let m: Vec<i64> = mu.iter().map(|&x| x as i64).collect();
        assert_eq!(&derived.vol(&m).unwrap(), v, "{mu:?}");
    }
}

#[test]
fn volume_table_parsing() {
    let t = VolumeTable::from_json_str(r#"{"volumes": {"[3,1]": "3/640"}}"#).unwrap();
    assert_eq!(t.vol(&[1, 3]).unwrap(), rat(3, 640));
    assert!(matches!(t.vol(&[5]), Err(spinsv::error::Error::VolumeUnavailable(_))));
    let err = VolumeTable::from_json_str("{\n \"volumes\": {\n  \"[1]\": \"1/0\"\n }\n}").unwrap_err();
    assert!(err.to_string().contains("line 3"), "{err}");
    assert!(VolumeTable::from_json_str(r#"{"volumes": {"[x]": "1"}}"#).is_err());
    assert!(VolumeTable::from_json_str(r#"{"vols": {}}"#).is_err());
    let round = VolumeTable::from_json_str(&fixture().to_json().to_string()).unwrap();
    assert_eq!(round, fixture());
}

/// c_area = (3/π²)(Λ − κ) with κ = (1/12)Σ dᵢ(dᵢ+2)/(dᵢ+1), dᵢ = mᵢ − 1.
fn ekz_constant(lyapunov_sum: Rational, mu: &[i64]) -> Rational {
    let kappa: Rational = mu.iter().map(|&m| rat((m - 1) * (m + 1), m)).sum::<Rational>() / int(12);
    int(3) * (lyapunov_sum - kappa)
}

#[test]
fn non_spin_constants_match_lyapunov_sums() {
    // c₀ = −d₁/(4π² vol); Λ is 3/2 on H(1,1) and 7/4 on H(3,1)
    let t = fixture();
    for (mu, lambda) in [(vec![2, 2], rat(3, 2)), (vec![4, 2], rat(7, 4)), (vec![2, 4], rat(7, 4)), (vec![1, 1], int(1))] {
        let c0 = -d1(&mu, &t).unwrap() / (int(4) * t.vol(&mu).unwrap());
        assert_eq!(c0, ekz_constant(lambda, &mu), "{mu:?}");
    }
    assert_eq!(ekz_constant(rat(3, 2), &[2, 2]), rat(15, 4));
}

#[test]
fn genus_three_spin_numerator_matches_lyapunov_sums() {
    // H(4) = hyperelliptic (even) ∪ odd, with Λ = 9/5 and 8/5; volumes carry (−1)^g
    let t = fixture();
    let v = -t.vol(&[5]).unwrap();
    let diff = -SpinVolumes::new().vol(&[5]).unwrap();
    let (even, odd) = ((&v + &diff) / int(2), (&v - &diff) / int(2));
    let (ce, co) = (ekz_constant(rat(9, 5), &[5]), ekz_constant(rat(8, 5), &[5]));
    assert_eq!((ce.clone(), co.clone()), (rat(21, 5), rat(18, 5)));
    let expected = int(4) * (ce * even - co * odd);
    assert_eq!(c0_numerator(&OddSignature::new(vec![5]).unwrap(), Route::Bracket).unwrap(), expected);
}

fn ordered(mu: &[i64]) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = Vec::new();
    for i in 0..mu.len() {
        let mut v = vec![mu[i]];
        v.extend(mu.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, &x)| x));
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

#[test]
fn spin_main_identities() {
    let vols = SpinVolumes::new();
    for base in [vec![1], vec![3], vec![1, 1], vec![3, 1], vec![5], vec![3, 3], vec![3, 1, 1], vec![5, 1]] {
        for mu in ordered(&base) {
            let sig = OddSignature::new(base.iter().map(|&x| x as u32).collect()).unwrap();
            let n = c0_numerator(&sig, Route::Genfun).unwrap();
            let half_chain = chain_sum(&mu, &vols).unwrap() / int(2);
            let m1 = int(mu[0]);
            assert_eq!(half_chain, &m1 * &n, "{mu:?}");
            assert_eq!(&m1 * d1(&mu, &vols).unwrap(), half_chain, "{mu:?}");
            if mu.len() >= 2 {
                assert_eq!(volume_recursion(&mu, &vols).unwrap(), vols.vol(&mu).unwrap(), "{mu:?}");
            }
        }
    }
}

#[test]
fn non_spin_chain_identity() {
    let t = fixture();
    for base in [vec![1, 1], vec![2, 2], vec![3, 1], vec![4, 2], vec![2, 2, 1], vec![1, 1, 1, 1]] {
        for mu in ordered(&base) {
            let half_chain = chain_sum(&mu, &t).unwrap() / int(2);
            assert_eq!(int(mu[0]) * d1(&mu, &t).unwrap(), half_chain, "{mu:?}");
            assert_eq!(volume_recursion(&mu, &t).unwrap(), t.vol(&mu).unwrap(), "{mu:?}");
        }
    }
}

#[test]
fn expanded_chain_ladder() {
    let spin = SpinVolumes::new();
    let t = fixture();
    let cases: [(&[i64], &dyn VolumeSource); 5] =
        [(&[3, 1], &spin), (&[1, 3, 1], &spin), (&[3, 3], &spin), (&[2, 2, 1], &t), (&[3, 1], &t)];
    for (mu, vols) in cases {
        let ch = chain_sum(mu, vols).unwrap();
        for i in 1..=mu.len() as u32 {
            assert_eq!(expanded_chain_sum(mu, vols, i).unwrap(), ch, "{mu:?} i={i}");
            if i > 1 {
                assert!(check_f_i_fibers(mu, vols, i).unwrap().ok(), "{mu:?} F_{i}");
            }
        }
        assert!(check_chain_fibers(mu, vols).unwrap().ok(), "{mu:?} F");
    }
}

#[test]
fn rooted_tree_identity() {
    let spin = SpinVolumes::new();
    let t = fixture();
    let mut checked = 0;
    for (mu, vols) in [(vec![1, 1, 3], &spin as &dyn VolumeSource), (vec![1, 1, 1], &spin), (vec![2, 1, 1], &t), (vec![1, 1, 1, 1], &t)] {
        for sigma in [vec![1], vec![2], vec![1, 2], vec![2, 3], vec![1, 2, 3]] {
            for p in 1..=5 {
                match rooted_tree_sides(&mu, &sigma, p, vols) {
                    Ok((l, r)) => {
                        assert_eq!(l, r, "{mu:?} Σ={sigma:?} p={p}");
                        checked += 1;
                    }
                    Err(_) => continue,
                }
            }
        }
    }
    assert!(checked >= 20, "only {checked} cases");
}

#[test]
fn pair_of_holes_is_chamber_independent() {
    let t = fixture();
    let mu = [1, 1, 2, 1, 1];
    let mut checked = 0;
    for sigma in [vec![1, 2], vec![3], vec![1, 3, 5], vec![2, 4]] {
        for (p1, p2) in [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3)] {
            let mut first: Option<Rational> = None;
            for k in (-1..=11).step_by(2) {
                let Ok((l, r)) = pair_of_holes_sides(&mu, &sigma, p1, p2, HalfMarker(k), &t) else { break };
                assert_eq!(l, r, "Σ={sigma:?} p=({p1},{p2}) I={k}/2");
                if let Some(f) = &first {
                    assert_eq!(f, &r);
                }
                first.get_or_insert(r);
                checked += 1;
            }
        }
    }
    assert!(checked >= 20, "only {checked} cases");
}

#[test]
fn f_three_point_values() {
    // n = 3: f(a, b, c) = [t^b](t + ⋯ + t^{−c}), so 1 exactly when b ≤ −c
    for a in 1..6 {
        for b in 1..6 {
            let c = 1 - a - b;
            assert_eq!(f_value(&[a, b, c]).unwrap(), int(i64::from(b <= -c)), "({a},{b},{c})");
        }
    }
    assert!(f_value(&[1, 1]).is_err());
    assert!(f_value(&[0, 1, 0]).is_err());
}

/// Signatures (m₁, m₂, m₃, …) with m₁, m₂, m₃ > 0, every further entry
/// negative and |μ| = n − 2.
fn exchange_inputs() -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for n in 4..=6usize {
        for a in 1..=4 {
            for b in 1..=4 {
                for c in 1..=4 {
                    let rest = (n as i64 - 2) - a - b - c;
                    let k = n - 3;
                    // split `rest` into k negative parts, weakly increasing
                    let mut stack = vec![(Vec::<i64>::new(), rest)];
                    while let Some((parts, left)) = stack.pop() {
                        if parts.len() == k {
                            if left == 0 {
                                let mut mu = vec![a, b, c];
                                mu.extend(&parts);
                                out.push(mu);
                            }
                            continue;
                        }
                        let lo = parts.last().copied().unwrap_or(left);
                        for x in lo.max(left)..=-1 {
                            let mut p = parts.clone();
                            p.push(x);
                            stack.push((p, left - x));
                        }
                    }
                }
            }
        }
    }
    out
}

#[test]
fn exchange_identity_battery() {
    let inputs = exchange_inputs();
    assert!(inputs.len() >= 50, "{} cases", inputs.len());
    for mu in inputs {
        let (l, r) = exchange_sides(&mu).unwrap();
        assert_eq!(l, r, "{mu:?}");
    }
}

#[test]
fn f_is_independent_of_pivot() {
    let mut checked = 0;
    for mu in exchange_inputs() {
        let want = f_value(&mu).unwrap();
        for third in 2..mu.len() {
            for pivot in 1..mu.len() {
                if pivot != third && mu[third] > 0 && mu[pivot] > 0 {
                    assert_eq!(f_with_pivot(&mu, third, pivot).unwrap(), want, "{mu:?} ({third},{pivot})");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked >= 100);
}

#[test]
fn phi_spin_base_case() {
    // base (−1)ⁿ(n−1)! with n + 2 entries, all middle entries negative
    assert_eq!(phi_value(&[1, 0, 0], true).unwrap(), int(-1));
    assert_eq!(phi_value(&[3, -1, 0, 0], true).unwrap(), int(1));
    assert_eq!(phi_value(&[5, -1, -1, 0, 0], true).unwrap(), int(-2));
    assert!(phi_value(&[2, 0, 0], true).is_err());
}
