use std::collections::BTreeSet;

use spinsv::exact::{int, parse_rational, rat, AlgebraicValue};
use spinsv::sergeev::{
    character_table, cylinder_census, half_sums, hurwitz_bruteforce, hurwitz_bruteforce_weights, weighted_spin_hurwitz_char,
    Family, GroupId, HurwitzProfile, Weight, MAX_TABLE_DEGREE,
};

const APPENDIX: &str = include_str!("data/appendix_tables.txt");

/// Printed cells that contradict orthogonality: in each of these tables the
/// second half of a split class repeats the first half instead of its complex
/// conjugate. Entries are (group, row, column, printed, computed).
const ERRATA: [(&str, usize, usize, &str, &str); 8] = [
    ("A~_3", 2, 3, "1/2+1/2i√3", "1/2-1/2i√3"),
    ("A~_3", 3, 3, "1/2-1/2i√3", "1/2+1/2i√3"),
    ("A~_4", 3, 3, "-1/2+1/2i√3", "-1/2-1/2i√3"),
    ("A~_4", 4, 3, "-1/2-1/2i√3", "-1/2+1/2i√3"),
    ("Se0_4", 3, 3, "-1+i√3", "-1-i√3"),
    ("Se0_4", 4, 3, "-1-i√3", "-1+i√3"),
    ("A~_5", 2, 3, "1/2+1/2i√5", "1/2-1/2i√5"),
    ("A~_5", 3, 3, "1/2-1/2i√5", "1/2+1/2i√5"),
];

fn group_by_name(name: &str) -> GroupId {
    for f in Family::ALL {
        for d in 1..=MAX_TABLE_DEGREE {
            let g = GroupId::new(f, d).unwrap();
            if g.name() == name {
                return g;
            }
        }
    }
    panic!("unknown group {name}");
}

fn cells(text: &str) -> Vec<Vec<String>> {
    text.trim().lines().map(|l| l.split(" | ").map(str::to_string).collect()).collect()
}

/// Printed blocks, with the printed order 48 of Se0_4 replaced by 384.
fn appendix_blocks() -> Vec<(String, Vec<Vec<String>>)> {
    APPENDIX
        .split("\n\n")
        .filter(|b| !b.trim().is_empty())
        .map(|b| {
            let mut c = cells(b);
            let name = c[0][0].clone();
            if name == "Se0_4" {
                assert_eq!(c[1][0], "48");
                c[1][0] = "384".into();
            }
            (name, c)
        })
        .collect()
}

fn mismatches() -> Vec<(String, usize, usize, String, String)> {
    let mut out = Vec::new();
    for (name, printed) in appendix_blocks() {
        let ours = cells(&character_table(group_by_name(&name)).unwrap().render_text());
        assert_eq!(printed.len(), ours.len(), "{name}: row count");
        for (i, (a, b)) in printed.iter().zip(&ours).enumerate() {
            assert_eq!(a.len(), b.len(), "{name}: row {i} length");
            for (j, (x, y)) in a.iter().zip(b).enumerate() {
                if x != y {
                    out.push((name.clone(), i, j, x.clone(), y.clone()));
                }
            }
        }
    }
    out
}

#[test]
fn appendix_covers_every_printed_group() {
    let names: BTreeSet<String> = appendix_blocks().into_iter().map(|b| b.0).collect();
    // the printed appendix lists Ã₁ only as isomorphic to S̃₁
    assert_eq!(names.len(), 4 * MAX_TABLE_DEGREE as usize - 1);
    assert!(!names.contains("A~_1"));
    let a1 = character_table(GroupId::new(Family::SpinAlt, 1).unwrap()).unwrap();
    let s1 = character_table(GroupId::new(Family::SpinSym, 1).unwrap()).unwrap();
    assert_eq!(a1.characters, s1.characters);
}

#[test]
fn appendix_matches_up_to_errata() {
    let expected: Vec<_> = ERRATA.iter().map(|e| (e.0.to_string(), e.1, e.2, e.3.to_string(), e.4.to_string())).collect();
    assert_eq!(mismatches(), expected);
}

#[test]
fn printed_errata_break_orthogonality() {
    // the two printed columns of each erratum are identical, so they cannot be
    // orthogonal; the computed ones are conjugate
    for (name, printed) in appendix_blocks() {
        if !ERRATA.iter().any(|e| e.0 == name) {
            continue;
        }
        let col = ERRATA.iter().find(|e| e.0 == name).unwrap().2;
        assert!(printed[2..].iter().all(|r| r[col] == r[col - 1]), "{name}");
        let t = character_table(group_by_name(&name)).unwrap();
        for ch in &t.characters {
            assert_eq!(ch.values[col - 1], ch.values[col - 2].conj(), "{name}");
        }
    }
}

#[test]
fn se3_text_layout() {
    let t = character_table(GroupId::new(Family::Sergeev, 3).unwrap()).unwrap();
    assert_eq!(
        t.render_text(),
        "Se_3 | e | C_{(123)} | C_{(123),1}\n96 | 1 | 8 | 8\n3+ | 4 | 1 | +i√3\n3- | 4 | 1 | -i√3\n2,1 | 4 | -2 | 0\n"
    );
}

#[test]
fn csv_quotes_labels_with_commas() {
    let t = character_table(GroupId::new(Family::Sergeev, 3).unwrap()).unwrap();
    let csv = t.render_csv();
    assert!(csv.contains("\"C_{(123),1}\""));
    assert!(csv.lines().any(|l| l.starts_with("\"2,1\",4,-2,0")));
}

#[test]
fn orthogonality_for_all_tables() {
    for f in Family::ALL {
        for d in 1..=MAX_TABLE_DEGREE {
            let t = character_table(GroupId::new(f, d).unwrap()).unwrap();
            assert!(t.rows_orthogonal(), "{} rows", t.group.name());
            assert!(t.columns_orthogonal(), "{} columns", t.group.name());
            // spin irreducibles carry half the group: Σ dim² = |G|/2
            let s: u64 = t.characters.iter().map(|c| c.dimension().pow(2)).sum();
            assert_eq!(2 * s, t.group.order(), "{}", t.group.name());
            assert_eq!(t.characters.len(), t.classes.len(), "{} is square", t.group.name());
        }
    }
}

#[test]
fn group_orders() {
    let order = |f, d| GroupId::new(f, d).unwrap().order();
    assert_eq!(order(Family::SpinSym, 4), 48);
    assert_eq!(order(Family::SpinAlt, 5), 120);
    assert_eq!(order(Family::Sergeev, 4), 768);
    assert_eq!(order(Family::SergeevEven, 4), 384);
    assert!(GroupId::new(Family::Sergeev, 0).is_err());
    assert!(character_table(GroupId::new(Family::Sergeev, MAX_TABLE_DEGREE + 1).unwrap()).is_err());
}

#[test]
fn half_sum_identities() {
    for d in 1..=MAX_TABLE_DEGREE {
        for h in half_sums(d).unwrap() {
            assert!(h.holds(), "d={d} {} {}", h.identity, h.character);
        }
    }
}

#[test]
fn twisted_entries_are_imaginary_roots() {
    // ±i√(∏λ/2) on the twisted class of the split characters of S̃_d
    let t = character_table(GroupId::new(Family::SpinSym, 4).unwrap()).unwrap();
    let plus = t.characters.iter().find(|c| c.label() == "4+").unwrap();
    let twisted = plus.values.last().unwrap();
    assert_eq!(twisted.mul(twisted).as_rational(), Some(int(-2)));
    let minus = t.characters.iter().find(|c| c.label() == "4-").unwrap();
    assert_eq!(minus.values.last().unwrap(), &twisted.conj());
    let root = AlgebraicValue::sqrt_of(&int(2), true);
    assert!(*twisted == root || *twisted == root.conj());
}

// --- weighted Hurwitz numbers ---

type Perm = Vec<usize>;

fn perms(d: usize) -> Vec<Perm> {
    if d == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in perms(d - 1) {
        for pos in 0..d {
            let mut q = p.clone();
            q.insert(pos, d - 1);
            out.push(q);
        }
    }
    out
}

fn comp(a: &Perm, b: &Perm) -> Perm {
    b.iter().map(|&i| a[i]).collect()
}

fn inv(a: &Perm) -> Perm {
    let mut r = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        r[x] = i;
    }
    r
}

fn cycle_type(a: &Perm) -> Vec<usize> {
    let mut seen = vec![false; a.len()];
    let mut t = Vec::new();
    for s in 0..a.len() {
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = a[i];
            len += 1;
        }
        if len > 0 {
            t.push(len);
        }
    }
    t.sort_unstable_by(|x, y| y.cmp(x));
    t
}

fn transitive(gens: &[&Perm], d: usize) -> bool {
    let mut seen = vec![false; d];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for g in gens {
            if !seen[g[i]] {
                seen[g[i]] = true;
                stack.push(g[i]);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Connected pairs (α, β) in S_d whose commutator has cycle type `ty`.
fn commutator_pairs(d: usize, ty: &[usize]) -> usize {
    let all = perms(d);
    let mut n = 0;
    for a in &all {
        for b in &all {
            let c = comp(&comp(a, b), &comp(&inv(a), &inv(b)));
            if cycle_type(&c) == ty && transitive(&[a, b], d) {
                n += 1;
            }
        }
    }
    n
}

#[test]
fn unweighted_degree_three_counts_non_commuting_pairs() {
    // H(2) is purely odd, so the signed count is −#{non-commuting pairs}/3!
    let all = perms(3);
    let non_commuting = all.iter().flat_map(|a| all.iter().map(move |b| (a, b))).filter(|(a, b)| comp(a, b) != comp(b, a)).count();
    assert_eq!(non_commuting, 18);
    let h = HurwitzProfile::parse(3, "3").unwrap();
    let expected = rat(-(non_commuting as i64), 6);
    assert_eq!(weighted_spin_hurwitz_char(&h, Weight::One).unwrap(), expected);
    assert_eq!(hurwitz_bruteforce(&h, Weight::One).unwrap(), expected);
}

#[test]
fn degree_three_weighted_values() {
    let h = HurwitzProfile::parse(3, "3").unwrap();
    let w = [Weight::One, Weight::P(1), Weight::P(3), Weight::P(-1)];
    let brute = hurwitz_bruteforce_weights(&h, &w).unwrap();
    let expected = [int(-3), int(-9), int(-45), rat(-10, 3)];
    assert_eq!(brute, expected);
    for (wt, e) in w.iter().zip(&expected) {
        assert_eq!(&weighted_spin_hurwitz_char(&h, *wt).unwrap(), e, "{wt}");
    }
}

#[test]
fn character_sum_matches_bruteforce_up_to_degree_three() {
    let w = [Weight::One, Weight::P(1), Weight::P(3), Weight::P(-1)];
    for (d, p) in [(1, ""), (2, ""), (3, ""), (3, "1"), (3, "3"), (3, "3;3"), (3, "3;1"), (3, "1;1")] {
        let h = HurwitzProfile::parse(d, p).unwrap();
        let brute = hurwitz_bruteforce_weights(&h, &w).unwrap();
        for (wt, b) in w.iter().zip(&brute) {
            assert_eq!(&weighted_spin_hurwitz_char(&h, *wt).unwrap(), b, "d={d} {p:?} {wt}");
        }
    }
}

#[test]
fn frozen_degree_four_values() {
    let cases = [("3", ["-6", "-24", "-312", "-11/3"]), ("3;3", ["-12", "-48", "-912", "4/3"]), ("", ["0", "0", "-36", "13/12"])];
    let w = [Weight::One, Weight::P(1), Weight::P(3), Weight::P(-1)];
    for (p, vals) in cases {
        let h = HurwitzProfile::parse(4, p).unwrap();
        for (wt, v) in w.iter().zip(vals) {
            assert_eq!(weighted_spin_hurwitz_char(&h, *wt).unwrap(), parse_rational(v).unwrap(), "{p:?} {wt}");
        }
    }
}

#[test]
fn hurwitz_input_validation() {
    assert!(HurwitzProfile::parse(3, "2").is_err());
    assert!(HurwitzProfile::parse(3, "5").is_err());
    assert!(HurwitzProfile::parse(3, "a").is_err());
    assert!(Weight::parse("p2").is_err());
    assert!(Weight::parse("p-3").is_err());
    assert_eq!(Weight::parse("pminus1").unwrap(), Weight::P(-1));
    let multi = HurwitzProfile::parse(6, "3,3").unwrap();
    assert!(weighted_spin_hurwitz_char(&multi, Weight::One).is_err());
    assert!(hurwitz_bruteforce(&HurwitzProfile::parse(5, "3").unwrap(), Weight::One).is_err());
}

// --- cylinder census ---

#[test]
fn census_tuple_counts_match_commutator_counts() {
    for (d, p, ty) in [(3, "3", vec![3]), (4, "3", vec![3, 1]), (4, "", vec![1, 1, 1, 1])] {
        if p.is_empty() {
            assert!(cylinder_census(&HurwitzProfile::parse(d, p).unwrap()).is_err());
            continue;
        }
        let c = cylinder_census(&HurwitzProfile::parse(d, p).unwrap()).unwrap();
        assert_eq!(c.tuples as usize, commutator_pairs(d as usize, &ty), "d={d} {p}");
    }
}

#[test]
fn census_invariants() {
    for (d, p) in [(3, "3"), (4, "3"), (4, "3;3"), (4, "3;1"), (5, "5"), (5, "3;3")] {
        let h = HurwitzProfile::parse(d, p).unwrap();
        let n = h.entries.len() as u32;
        let c = cylinder_census(&h).unwrap();
        assert!(c.areas_consistent, "d={d} {p}");
        assert!(c.min_f_sum >= 2 && c.max_f_sum <= 2 * n, "d={d} {p}");
        let total: u64 = c.rows.iter().map(|r| r.cylinders).sum();
        assert_eq!(total, c.cylinders);
        // Σ areas over all tuples = d per tuple
        let area: spinsv::exact::Rational = c.rows.iter().map(|r| r.sum_area.clone()).sum();
        assert_eq!(area, int(d as i64 * c.tuples as i64), "d={d} {p}");
    }
}

#[test]
fn frozen_census() {
    let c = cylinder_census(&HurwitzProfile::parse(3, "3").unwrap()).unwrap();
    assert_eq!((c.tuples, c.cylinders), (18, 30));
    assert_eq!(c.rows.len(), 1);
    assert_eq!(c.rows[0].f, vec![2]);
    let c = cylinder_census(&HurwitzProfile::parse(4, "3;3").unwrap()).unwrap();
    assert_eq!((c.tuples, c.cylinders), (3240, 12048));
    let rows: Vec<(Vec<u32>, u64)> = c.rows.iter().map(|r| (r.f.clone(), r.cylinders)).collect();
    assert_eq!(rows, vec![(vec![0, 2], 168), (vec![1, 1], 11712), (vec![2, 0], 168)]);
}
