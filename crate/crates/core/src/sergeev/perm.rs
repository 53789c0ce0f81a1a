//! Permutations of {0,…,d−1} as image vectors; (xy)(i) = x(y(i)).

use crate::partitions::Partition;

pub type Perm = Vec<u8>;

pub fn identity(d: usize) -> Perm {
    (0..d as u8).collect()
}

/// All permutations in lexicographic order.
pub fn all_perms(d: usize) -> Vec<Perm> {
    fn rec(cur: &mut Perm, used: &mut Vec<bool>, out: &mut Vec<Perm>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                cur.push(x as u8);
                rec(cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; d], &mut out);
    out
}

pub fn compose(x: &[u8], y: &[u8]) -> Perm {
    y.iter().map(|&i| x[i as usize]).collect()
}

pub fn inverse(x: &[u8]) -> Perm {
    let mut r = vec![0u8; x.len()];
    for (i, &xi) in x.iter().enumerate() {
        r[xi as usize] = i as u8;
    }
    r
}

/// Cycles including fixed points, each starting at its smallest element.
pub fn cycles(x: &[u8]) -> Vec<Vec<u8>> {
    let mut seen = vec![false; x.len()];
    let mut out = Vec::new();
    for s in 0..x.len() {
        if seen[s] {
            continue;
        }
        let mut c = Vec::new();
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            c.push(i as u8);
            i = x[i] as usize;
        }
        out.push(c);
    }
    out
}

pub fn cycle_type(x: &[u8]) -> Partition {
    Partition::new(cycles(x).iter().map(|c| c.len() as u32).collect())
}

/// A permutation of the given cycle type: consecutive blocks, largest first.
pub fn representative(d: usize, ty: &Partition) -> Perm {
    let mut p = identity(d);
    let mut start = 0usize;
    for &m in ty.parts() {
        let m = m as usize;
        for k in 0..m {
            p[start + k] = (start + (k + 1) % m) as u8;
        }
        start += m;
    }
    p
}

/// Whether the generated group acts transitively.
pub fn transitive(d: usize, gens: &[&[u8]]) -> bool {
    if d == 0 {
        return true;
    }
    let mut seen = vec![false; d];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for g in gens {
            let j = g[i] as usize;
            if !seen[j] {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_types() {
        assert_eq!(all_perms(4).len(), 24);
        let r = representative(5, &Partition::new(vec![3, 2]));
        assert_eq!(cycle_type(&r), Partition::new(vec![3, 2]));
        let x = &all_perms(4)[7];
        assert_eq!(compose(x, &inverse(x)), identity(4));
    }
}
