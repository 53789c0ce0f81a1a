//! Generation and recognition of the graph families: rational backbone graphs,
//! chains, pre-expanded and expanded chains, rooted trees and expanded pairs of
//! holes. Generators build candidates structurally; the classifiers decide
//! membership directly from the definitions.

use std::collections::HashMap;

use crate::partitions::{compositions, enumerate, set_partitions, subsets, Kind};

use super::graph::{Graph, Leg};

/// Twist of mark i (1-based).
pub(crate) fn mark_twist(mu: &[i64], i: u32) -> i64 {
    mu[i as usize - 1]
}

/// A hanging tree: root vertex attached downward with twist `p` at the root.
#[derive(Clone, Debug)]
pub(crate) struct Sub {
    genus: u32,
    marks: Vec<u32>,
    p: i64,
    children: Vec<Sub>,
}

/// Which mark sets a genus-0 vertex may carry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum MarkRule {
    AtLeastOne,
    ExactlyOne,
    /// Exactly one mark ≤ i (any number of larger marks).
    Complexity(u32),
}

impl MarkRule {
    fn allows(self, marks: &[u32]) -> bool {
        match self {
            MarkRule::AtLeastOne => !marks.is_empty(),
            MarkRule::ExactlyOne => marks.len() == 1,
            MarkRule::Complexity(i) => marks.iter().filter(|&&m| m <= i).count() == 1,
        }
    }
}

pub(crate) struct TreeGen<'a> {
    mu: &'a [i64],
    spin: bool,
    rule: MarkRule,
    cache: HashMap<(Vec<u32>, u32), Vec<Sub>>,
    kids_cache: HashMap<(Vec<u32>, u32), Vec<Vec<Sub>>>,
}

impl<'a> TreeGen<'a> {
    pub(crate) fn new(mu: &'a [i64], spin: bool, rule: MarkRule) -> Self {
        Self { mu, spin, rule, cache: HashMap::new(), kids_cache: HashMap::new() }
    }

    /// Twist at the lower half-edge of a hanging tree of the given genus carrying `marks`.
    fn root_twist(&self, marks: &[u32], genus: u32) -> i64 {
        let s: i64 = marks.iter().map(|&m| mark_twist(self.mu, m)).sum();
        2 * genus as i64 - 1 - s + marks.len() as i64
    }

    fn twist_ok(&self, p: i64) -> bool {
        p >= 1 && (!self.spin || p % 2 == 1)
    }

    /// Hanging trees of total genus `genus` carrying exactly `marks`.
    fn subtrees(&mut self, marks: &[u32], genus: u32) -> Vec<Sub> {
        if genus == 0 {
            return Vec::new();
        }
        let key = (marks.to_vec(), genus);
        if let Some(v) = self.cache.get(&key) {
            return v.clone();
        }
        let p = self.root_twist(marks, genus);
        let mut out = Vec::new();
        if self.twist_ok(p) {
            out.push(Sub { genus, marks: marks.to_vec(), p, children: Vec::new() });
            for (own, rest) in subsets(marks) {
                if !self.rule.allows(&own) {
                    continue;
                }
                for kids in self.children(&rest, genus) {
                    out.push(Sub { genus: 0, marks: own.clone(), p, children: kids });
                }
            }
        }
        self.cache.insert(key, out.clone());
        out
    }

    /// Unordered collections of hanging trees covering `marks` with total genus `g`.
    fn children(&mut self, marks: &[u32], g: u32) -> Vec<Vec<Sub>> {
        let key = (marks.to_vec(), g);
        if let Some(v) = self.kids_cache.get(&key) {
            return v.clone();
        }
        let mut out = Vec::new();
        for g0 in 0..=g {
            let leaf_sets: Vec<Vec<u32>> = if g0 == 0 {
                vec![Vec::new()]
            } else {
                enumerate(Kind::All, g0).into_iter().map(|p| p.parts().to_vec()).collect()
            };
            for leaves in leaf_sets {
                let base: Vec<Sub> = leaves
                    .iter()
                    .map(|&gl| Sub { genus: gl, marks: Vec::new(), p: 2 * gl as i64 - 1, children: Vec::new() })
                    .collect();
                let rest = g - g0;
                if marks.is_empty() {
                    if rest == 0 {
                        out.push(base);
                    }
                    continue;
                }
                for sp in set_partitions(marks.len()) {
                    let blocks: Vec<Vec<u32>> = sp.iter().map(|b| b.iter().map(|&i| marks[i]).collect()).collect();
                    if blocks.len() as u32 > rest {
                        continue;
                    }
                    for comp in compositions(rest as i64, blocks.len()) {
                        let mut combos: Vec<Vec<Sub>> = vec![base.clone()];
                        for (b, &gb) in blocks.iter().zip(&comp) {
                            let opts = self.subtrees(b, gb as u32);
                            let mut next = Vec::new();
                            for c in &combos {
                                for o in &opts {
                                    let mut c2 = c.clone();
                                    c2.push(o.clone());
                                    next.push(c2);
                                }
                            }
                            combos = next;
                            if combos.is_empty() {
                                break;
                            }
                        }
                        out.extend(combos);
                    }
                }
            }
        }
        self.kids_cache.insert(key, out.clone());
        out
    }
}

pub(crate) fn graft(g: &mut Graph, mu: &[i64], sub: &Sub, parent: Option<usize>) -> usize {
    let v = g.add_vertex(sub.genus);
    for &m in &sub.marks {
        g.add_leg(Leg::Mark(m), v, mark_twist(mu, m));
    }
    if let Some(p) = parent {
        g.add_edge(v, p, sub.p);
    }
    for c in &sub.children {
        graft(g, mu, c, Some(v));
    }
    v
}

fn genus_total(twist_sum: i64, legs: usize) -> Option<u32> {
    let two_g = twist_sum - legs as i64 + 2;
    (two_g >= 0 && two_g % 2 == 0).then_some((two_g / 2) as u32)
}

fn marks_all(n: usize) -> Vec<u32> {
    (1..=n as u32).collect()
}

// ---------------------------------------------------------------------------
// Backbone graphs

/// Rational backbone graphs: a genus-0 centre carrying `center_legs` (and the
/// poles when `with_poles`) plus part of the other marks, and decorations of
/// positive genus each attached by one edge.
fn backbones(mu: &[i64], spin: bool, center_legs: &[u32], with_poles: bool) -> Vec<Graph> {
    let n = mu.len();
    let legs = n + if with_poles { 2 } else { 0 };
    let Some(genus) = genus_total(mu.iter().sum(), legs) else { return Vec::new() };
    let others: Vec<u32> = marks_all(n).into_iter().filter(|m| !center_legs.contains(m)).collect();
    let mut gen = TreeGen::new(mu, spin, MarkRule::AtLeastOne);
    let mut out = Vec::new();
    for (s, o) in subsets(&others) {
        // leaves only: decorations are single vertices
        for kids in gen.children(&o, genus) {
            if kids.iter().any(|k| !k.children.is_empty() || k.genus == 0) {
                continue;
            }
            let mut g = Graph::default();
            let c = g.add_vertex(0);
            for &m in center_legs.iter().chain(&s) {
                g.add_leg(Leg::Mark(m), c, mark_twist(mu, m));
            }
            if with_poles {
                g.add_leg(Leg::Pole(1), c, 0);
                g.add_leg(Leg::Pole(2), c, 0);
            }
            for k in &kids {
                graft(&mut g, mu, k, Some(c));
            }
            if g.twist_balanced() {
                out.push(g);
            }
        }
    }
    out
}

/// BB(μ)₂: legs 1 and 2 on the centre.
pub fn bb2(mu: &[i64], spin: bool) -> Vec<Graph> {
    if mu.len() < 2 {
        return Vec::new();
    }
    backbones(mu, spin, &[1, 2], false)
}

/// BB(μ)₀: leg 1 and the poles n+1, n+2 on the centre.
pub fn bb0(mu: &[i64], spin: bool) -> Vec<Graph> {
    backbones(mu, spin, &[1], true)
}

/// Recognizes a rational backbone graph whose centre carries `center_legs`.
pub fn is_backbone(g: &Graph, center_legs: &[Leg]) -> bool {
    if !g.is_rational_type() {
        return false;
    }
    let Some(c) = center_legs.first().and_then(|&l| g.vertex_of(l)) else { return false };
    if g.genus[c] != 0 || center_legs.iter().any(|&l| g.vertex_of(l) != Some(c)) {
        return false;
    }
    (0..g.num_vertices()).all(|v| v == c || (g.genus[v] > 0 && g.incident(v).len() == 1 && g.incident(v)[0].1 == c))
}

// ---------------------------------------------------------------------------
// Chains

/// Vertex classes of a chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainInfo {
    /// R(Γ) along the path from pole n+1 to pole n+2.
    pub rational: Vec<usize>,
    pub figure_eights: Vec<usize>,
    pub pairs_of_holes: Vec<usize>,
}

fn legs_are_marks_and_poles(g: &Graph, mu: &[i64]) -> bool {
    let n = mu.len();
    if g.legs.len() != n + 2 {
        return false;
    }
    let mut seen = vec![false; n];
    let mut poles = [false; 2];
    for l in &g.legs {
        match l.leg {
            Leg::Mark(i) if (1..=n as u32).contains(&i) && l.twist == mark_twist(mu, i) => {
                if std::mem::replace(&mut seen[i as usize - 1], true) {
                    return false;
                }
            }
            Leg::Pole(k) if (k == 1 || k == 2) && l.twist == 0 => {
                if std::mem::replace(&mut poles[k as usize - 1], true) {
                    return false;
                }
            }
            _ => return false,
        }
    }
    seen.into_iter().all(|s| s) && poles == [true, true]
}

pub fn classify_chain(g: &Graph, mu: &[i64]) -> Option<ChainInfo> {
    if !legs_are_marks_and_poles(g, mu) || !g.is_rational_type() {
        return None;
    }
    let v0 = g.vertex_of(Leg::Pole(1))?;
    if g.vertex_of(Leg::Mark(1)) != Some(v0) {
        return None;
    }
    let mut f = Vec::new();
    let mut p = Vec::new();
    for v in 0..g.num_vertices() {
        if g.genus[v] > 0 {
            match g.incident(v).len() {
                1 => f.push(v),
                2 => p.push(v),
                _ => return None,
            }
        }
    }
    for v in 0..g.num_vertices() {
        if g.genus[v] != 0 {
            continue;
        }
        if g.marks_at(v).len() != 1 {
            return None;
        }
        let poles = g.legs_at(v).iter().filter(|l| matches!(l.leg, Leg::Pole(_))).count();
        let special = poles + g.incident(v).iter().filter(|&&(_, w, t)| t == 0 || p.contains(&w)).count();
        if special != 2 {
            return None;
        }
    }
    let vk = g.vertex_of(Leg::Pole(2))?;
    let rational = g.path(v0, vk).into_iter().filter(|&v| g.genus[v] == 0).collect();
    Some(ChainInfo { rational, figure_eights: f, pairs_of_holes: p })
}

pub fn is_odd(g: &Graph) -> bool {
    g.legs.iter().map(|l| l.twist).chain(g.edges.iter().map(|e| e.twist.abs())).all(|t| t <= 0 || t % 2 == 1)
}

/// CH(μ), or CH(μ)^odd when `spin`.
pub fn chains(mu: &[i64], spin: bool) -> Vec<Graph> {
    let n = mu.len();
    let Some(genus) = genus_total(mu.iter().sum(), n + 2) else { return Vec::new() };
    let mut gen = TreeGen::new(mu, spin, MarkRule::AtLeastOne);
    let mut out = Vec::new();
    // each R vertex: (mark, figure eights, twist of its outgoing special half-edge, P vertex after it)
    struct Step {
        mark: u32,
        kids: Vec<Sub>,
        next: Option<(i64, Option<(u32, Vec<u32>, i64)>)>,
    }
    #[allow(clippy::too_many_arguments)]
    fn rec(
        gen: &mut TreeGen,
        mu: &[i64],
        spin: bool,
        t_in: i64,
        remaining: Vec<u32>,
        budget: u32,
        steps: &mut Vec<Step>,
        out: &mut Vec<Graph>,
    ) {
        let choices: Vec<u32> = if steps.is_empty() { vec![1] } else { remaining.clone() };
        for m in choices {
            let rest: Vec<u32> = remaining.iter().copied().filter(|&x| x != m).collect();
            for (h, rest2) in subsets(&rest) {
                for gv in 0..=budget {
                    for kids in gen.children(&h, gv) {
                        if kids.iter().any(|k| k.genus == 0) {
                            continue;
                        }
                        let k = kids.len() as i64;
                        let sp: i64 = kids.iter().map(|c| c.p).sum();
                        let t_out = k + 1 - t_in - mark_twist(mu, m) + sp;
                        if t_out > 0 {
                            continue;
                        }
                        let left = budget - gv;
                        if t_out == 0 {
                            if rest2.is_empty() && left == 0 {
                                steps.push(Step { mark: m, kids: kids.clone(), next: None });
                                out.push(build(mu, steps));
                                steps.pop();
                            }
                            if !rest2.is_empty() {
                                steps.push(Step { mark: m, kids: kids.clone(), next: Some((0, None)) });
                                rec(gen, mu, spin, 0, rest2.clone(), left, steps, out);
                                steps.pop();
                            }
                            continue;
                        }
                        // pair of holes: edge twists e1 = −t_out (towards v_j) and e2
                        if spin || rest2.is_empty() {
                            continue;
                        }
                        let e1 = -t_out;
                        for (q, rest3) in subsets(&rest2) {
                            if rest3.is_empty() {
                                continue;
                            }
                            let sq: i64 = q.iter().map(|&x| mark_twist(mu, x)).sum();
                            for gp in 1..=left {
                                let e2 = 2 * gp as i64 + q.len() as i64 - sq - e1;
                                if e2 <= 0 {
                                    continue;
                                }
                                steps.push(Step { mark: m, kids: kids.clone(), next: Some((t_out, Some((gp, q.clone(), e2)))) });
                                rec(gen, mu, spin, -e2, rest3.clone(), left - gp, steps, out);
                                steps.pop();
                            }
                        }
                    }
                }
            }
        }
    }
    fn build(mu: &[i64], steps: &[Step]) -> Graph {
        let mut g = Graph::default();
        let mut prev: Option<(usize, i64)> = None;
        for (j, s) in steps.iter().enumerate() {
            let v = g.add_vertex(0);
            g.add_leg(Leg::Mark(s.mark), v, mark_twist(mu, s.mark));
            if j == 0 {
                g.add_leg(Leg::Pole(1), v, 0);
            }
            if let Some((u, t)) = prev {
                g.add_edge(u, v, t);
            }
            for k in &s.kids {
                graft(&mut g, mu, k, Some(v));
            }
            match &s.next {
                None => g.add_leg(Leg::Pole(2), v, 0),
                Some((0, None)) => prev = Some((v, 0)),
                Some((t_out, Some((gp, q, e2)))) => {
                    let pv = g.add_vertex(*gp);
                    for &x in q {
                        g.add_leg(Leg::Mark(x), pv, mark_twist(mu, x));
                    }
                    g.add_edge(v, pv, *t_out);
                    prev = Some((pv, *e2));
                }
                Some(_) => unreachable!(),
            }
        }
        g
    }
    rec(&mut gen, mu, spin, 0, marks_all(n), genus, &mut Vec::new(), &mut out);
    out
}

// ---------------------------------------------------------------------------
// Expanded chains

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexKind {
    Bottom,
    Top,
    Middle,
    Link,
    Decoration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreInfo {
    pub core: Vec<usize>,
    pub kinds: Vec<VertexKind>,
}

/// Twists at v of the half-edges towards the previous and next core vertex
/// (poles count as 0).
pub(crate) fn core_twists(g: &Graph, core: &[usize], j: usize) -> (i64, i64) {
    let v = core[j];
    let tw = |w: usize| g.incident(v).into_iter().find(|x| x.1 == w).map(|x| x.2).expect("core edge");
    let prev = if j == 0 { 0 } else { tw(core[j - 1]) };
    let next = if j + 1 == core.len() { 0 } else { tw(core[j + 1]) };
    (prev, next)
}

/// Recognizes a pre-expanded chain and classifies its vertices.
pub fn classify_pre_expanded_chain(g: &Graph, mu: &[i64]) -> Option<CoreInfo> {
    if !legs_are_marks_and_poles(g, mu) || !g.is_rational_type() {
        return None;
    }
    let v0 = g.vertex_of(Leg::Pole(1))?;
    if g.vertex_of(Leg::Mark(1)) != Some(v0) {
        return None;
    }
    let core = g.path(v0, g.vertex_of(Leg::Pole(2))?);
    let mut kinds = vec![VertexKind::Link; g.num_vertices()];
    for (j, &v) in core.iter().enumerate() {
        let (a, b) = core_twists(g, &core, j);
        kinds[v] = if a <= 0 && b <= 0 {
            VertexKind::Bottom
        } else if a > 0 && b > 0 {
            VertexKind::Top
        } else if a != 0 && b != 0 {
            VertexKind::Middle
        } else {
            return None;
        };
    }
    for v in 0..g.num_vertices() {
        if g.genus[v] > 0 {
            kinds[v] = VertexKind::Decoration;
            if g.incident(v).len() != 1 {
                return None;
            }
            continue;
        }
        if g.twists_at(v).contains(&0) && kinds[v] != VertexKind::Bottom {
            return None;
        }
        if kinds[v] == VertexKind::Link && g.incident(v).iter().filter(|x| x.2 > 0).count() != 1 {
            return None;
        }
        if kinds[v] != VertexKind::Top && g.marks_at(v).is_empty() {
            return None;
        }
    }
    Some(CoreInfo { core, kinds })
}

/// Whether every top of the core is admissible.
pub fn tops_admissible(g: &Graph, info: &CoreInfo) -> bool {
    let core = &info.core;
    for (nn, &v) in core.iter().enumerate() {
        if info.kinds[v] != VertexKind::Top {
            continue;
        }
        let k1 = (0..nn).rev().find(|&j| info.kinds[core[j]] == VertexKind::Bottom);
        let k2 = (nn + 1..core.len()).find(|&j| info.kinds[core[j]] == VertexKind::Bottom);
        let (Some(k1), Some(k2)) = (k1, k2) else { return false };
        let Some(at) = g.ind(core[nn + 1]) else { return false };
        if (k1 + 1..=k2).any(|j| g.ind(core[j]).is_some_and(|x| x < at)) {
            return false;
        }
    }
    true
}

/// ECH(μ)_i membership for a classified pre-expanded chain.
pub fn in_ech(g: &Graph, info: &CoreInfo, i: u32) -> bool {
    for j in 1..=i {
        let Some(v) = g.vertex_of(Leg::Mark(j)) else { return false };
        let k = info.kinds[v];
        if k == VertexKind::Top {
            return false;
        }
        if k != VertexKind::Decoration && g.ind(v) != Some(j) {
            return false;
        }
    }
    for v in 0..g.num_vertices() {
        let k = info.kinds[v];
        if k != VertexKind::Decoration && k != VertexKind::Top && g.ind(v).map_or(true, |x| x > i) {
            return false;
        }
    }
    tops_admissible(g, info)
}

/// Pre-expanded chains compatible with (μ, 0, 0). With `complexity = Some(i)`
/// the genus-0 vertices are restricted to the mark pattern of ECH(μ)_i.
pub fn pre_expanded_chains(mu: &[i64], spin: bool, complexity: Option<u32>) -> Vec<Graph> {
    let n = mu.len();
    let Some(genus) = genus_total(mu.iter().sum(), n + 2) else { return Vec::new() };
    let rule = complexity.map_or(MarkRule::AtLeastOne, MarkRule::Complexity);
    let mut gen = TreeGen::new(mu, spin, rule);
    let mut out = Vec::new();
    struct Step {
        marks: Vec<u32>,
        kids: Vec<Sub>,
        t_out: i64,
    }
    #[allow(clippy::too_many_arguments)]
    fn rec(
        gen: &mut TreeGen,
        mu: &[i64],
        spin: bool,
        rule: MarkRule,
        t_in: i64,
        remaining: Vec<u32>,
        budget: u32,
        steps: &mut Vec<Step>,
        out: &mut Vec<Graph>,
    ) {
        for (l, rest) in subsets(&remaining) {
            if steps.is_empty() && !l.contains(&1) {
                continue;
            }
            let sl: i64 = l.iter().map(|&m| mark_twist(mu, m)).sum();
            for (h, rest2) in subsets(&rest) {
                for gv in 0..=budget {
                    for kids in gen.children(&h, gv) {
                        let k = kids.len() as i64;
                        let sp: i64 = kids.iter().map(|c| c.p).sum();
                        let t_out = l.len() as i64 + k - t_in - sl + sp;
                        if (t_in == 0 || t_out == 0) && (t_in > 0 || t_out > 0) {
                            continue;
                        }
                        if spin && t_out % 2 == 0 && t_out != 0 {
                            continue;
                        }
                        let top = t_in > 0 && t_out > 0;
                        let ok_marks = match rule {
                            MarkRule::Complexity(i) if top => l.iter().all(|&m| m > i),
                            _ if top => true,
                            r => r.allows(&l),
                        };
                        if !ok_marks {
                            continue;
                        }
                        let left = budget - gv;
                        if t_out == 0 && rest2.is_empty() && left == 0 {
                            steps.push(Step { marks: l.clone(), kids: kids.clone(), t_out: 0 });
                            out.push(build(mu, steps));
                            steps.pop();
                        }
                        if !rest2.is_empty() {
                            steps.push(Step { marks: l.clone(), kids, t_out });
                            rec(gen, mu, spin, rule, -t_out, rest2.clone(), left, steps, out);
                            steps.pop();
                        }
                    }
                }
            }
        }
    }
    fn build(mu: &[i64], steps: &[Step]) -> Graph {
        let mut g = Graph::default();
        let mut prev: Option<(usize, i64)> = None;
        let last = steps.len() - 1;
        for (j, s) in steps.iter().enumerate() {
            let v = g.add_vertex(0);
            for &m in &s.marks {
                g.add_leg(Leg::Mark(m), v, mark_twist(mu, m));
            }
            if j == 0 {
                g.add_leg(Leg::Pole(1), v, 0);
            }
            if j == last {
                g.add_leg(Leg::Pole(2), v, 0);
            }
            if let Some((u, t)) = prev {
                g.add_edge(u, v, t);
            }
            for k in &s.kids {
                graft(&mut g, mu, k, Some(v));
            }
            prev = Some((v, s.t_out));
        }
        g
    }
    rec(&mut gen, mu, spin, rule, 0, marks_all(n), genus, &mut Vec::new(), &mut out);
    out
}

/// ECH(μ)_i (odd expanded chains when `spin`), with their classifications.
pub fn expanded_chains(mu: &[i64], spin: bool, i: u32) -> Vec<(Graph, CoreInfo)> {
    pre_expanded_chains(mu, spin, Some(i))
        .into_iter()
        .filter_map(|g| {
            let info = classify_pre_expanded_chain(&g, mu)?;
            (in_ech(&g, &info, i) && (!spin || is_odd(&g))).then_some((g, info))
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Rooted trees

/// RT(μ, Σ, p): rooted trees with legs {r} ∪ Σ, leg r of twist p.
pub fn rooted_trees(mu: &[i64], sigma: &[u32], p: i64, spin: bool) -> Vec<Graph> {
    let s: i64 = sigma.iter().map(|&m| mark_twist(mu, m)).sum();
    let Some(genus) = genus_total(p + s, sigma.len() + 1) else { return Vec::new() };
    let mut gen = TreeGen::new(mu, spin, MarkRule::ExactlyOne);
    let mut marks = sigma.to_vec();
    marks.sort_unstable();
    let mut out = Vec::new();
    for sub in gen.subtrees(&marks, genus) {
        if sub.p != p {
            continue;
        }
        let mut g = Graph::default();
        let v = graft(&mut g, mu, &sub, None);
        g.add_leg(Leg::Root, v, p);
        out.push(g);
    }
    out
}

pub fn is_rooted_tree(g: &Graph, mu: &[i64], sigma: &[u32], p: i64) -> bool {
    if g.legs.len() != sigma.len() + 1 || !g.is_rational_type() {
        return false;
    }
    for l in &g.legs {
        let ok = match l.leg {
            Leg::Root => l.twist == p,
            Leg::Mark(i) => sigma.contains(&i) && l.twist == mark_twist(mu, i),
            _ => false,
        };
        if !ok {
            return false;
        }
    }
    if g.num_vertices() == 1 {
        return true;
    }
    let Some(root) = g.vertex_of(Leg::Root) else { return false };
    if g.horizontal_edges() > 0 {
        return false;
    }
    for v in 0..g.num_vertices() {
        let lower = g.incident(v).iter().filter(|x| x.2 > 0).count();
        if g.genus[v] > 0 {
            if g.incident(v).len() != 1 {
                return false;
            }
        } else if v == root {
            if g.legs_at(v).len() != 2 || lower != 0 {
                return false;
            }
        } else if g.legs_at(v).len() != 1 || lower != 1 {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Expanded pairs of holes

/// The marker I as twice its value, so that chambers are the odd integers
/// (I = k/2 for odd k) and I never equals an index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct HalfMarker(pub i64);

impl HalfMarker {
    fn lt_index(self, j: u32) -> bool {
        self.0 < 2 * j as i64
    }
}

/// Pre-expanded pairs of holes with legs Σ ∪ {h₁, h₂} of twists p₁, p₂.
pub fn pre_expanded_pairs(mu: &[i64], sigma: &[u32], p1: i64, p2: i64) -> Vec<Graph> {
    let s: i64 = sigma.iter().map(|&m| mark_twist(mu, m)).sum();
    let Some(genus) = genus_total(p1 + p2 + s, sigma.len() + 2) else { return Vec::new() };
    let mut gen = TreeGen::new(mu, false, MarkRule::ExactlyOne);
    let mut marks = sigma.to_vec();
    marks.sort_unstable();
    let mut out = Vec::new();
    struct Step {
        marks: Vec<u32>,
        kids: Vec<Sub>,
        t_out: i64,
    }
    #[allow(clippy::too_many_arguments)]
    fn rec(
        gen: &mut TreeGen,
        mu: &[i64],
        p2: i64,
        t_in: i64,
        seen_top: bool,
        remaining: Vec<u32>,
        budget: u32,
        steps: &mut Vec<Step>,
        out: &mut Vec<Graph>,
    ) {
        for (l, rest) in subsets(&remaining) {
            if l.len() > 1 {
                continue;
            }
            let sl: i64 = l.iter().map(|&m| mark_twist(mu, m)).sum();
            for (h, rest2) in subsets(&rest) {
                for gv in 0..=budget {
                    for kids in gen.children(&h, gv) {
                        let k = kids.len() as i64;
                        let sp: i64 = kids.iter().map(|c| c.p).sum();
                        let t_out = l.len() as i64 + k - t_in - sl + sp;
                        let left = budget - gv;
                        // last vertex: the outgoing half-edge is h₂
                        if t_out == p2 && rest2.is_empty() && left == 0 {
                            let top = t_in > 0;
                            if (top != l.is_empty()) || (top && seen_top) || (!top && !seen_top) {
                                // a top carries no mark, other core vertices exactly one
                            } else {
                                steps.push(Step { marks: l.clone(), kids: kids.clone(), t_out });
                                out.push(build(mu, steps));
                                steps.pop();
                            }
                        }
                        if t_out == 0 {
                            continue;
                        }
                        let top = t_in > 0 && t_out > 0;
                        if t_in < 0 && t_out < 0 {
                            continue;
                        }
                        if top == !l.is_empty() || (top && seen_top) {
                            continue;
                        }
                        // with no marks left only a final top can follow
                        let seen = seen_top || top;
                        if rest2.is_empty() && seen {
                            continue;
                        }
                        steps.push(Step { marks: l.clone(), kids, t_out });
                        rec(gen, mu, p2, -t_out, seen, rest2.clone(), left, steps, out);
                        steps.pop();
                    }
                }
            }
        }
    }
    fn build(mu: &[i64], steps: &[Step]) -> Graph {
        let mut g = Graph::default();
        let mut prev: Option<(usize, i64)> = None;
        let last = steps.len() - 1;
        for (j, s) in steps.iter().enumerate() {
            let v = g.add_vertex(0);
            for &m in &s.marks {
                g.add_leg(Leg::Mark(m), v, mark_twist(mu, m));
            }
            if let Some((u, t)) = prev {
                g.add_edge(u, v, t);
            }
            for k in &s.kids {
                graft(&mut g, mu, k, Some(v));
            }
            if j == last {
                g.add_leg(Leg::Hole(2), v, s.t_out);
            }
            prev = Some((v, s.t_out));
        }
        g
    }
    rec(&mut gen, mu, p2, p1, false, marks.clone(), genus, &mut Vec::new(), &mut out);
    for g in &mut out {
        // h₁ sits on the first core vertex, which was created first
        g.add_leg(Leg::Hole(1), 0, p1);
    }
    out
}

/// Recognizes a pre-expanded pair of holes and returns its core.
pub fn classify_pair_of_holes(g: &Graph, mu: &[i64], sigma: &[u32], p1: i64, p2: i64) -> Option<Vec<usize>> {
    if g.legs.len() != sigma.len() + 2 || !g.is_rational_type() || g.horizontal_edges() > 0 {
        return None;
    }
    for l in &g.legs {
        let ok = match l.leg {
            Leg::Hole(1) => l.twist == p1,
            Leg::Hole(2) => l.twist == p2,
            Leg::Mark(i) => sigma.contains(&i) && l.twist == mark_twist(mu, i),
            _ => false,
        };
        if !ok {
            return None;
        }
    }
    let core = g.path(g.vertex_of(Leg::Hole(1))?, g.vertex_of(Leg::Hole(2))?);
    if core.iter().any(|&v| g.genus[v] > 0) {
        return None;
    }
    // a core vertex is a top when both its core-side half-edges (holes included) are lower
    let lower_twist = |j: usize| -> (i64, i64) {
        let v = core[j];
        let tw = |w: usize| g.incident(v).into_iter().find(|x| x.1 == w).map(|x| x.2).expect("core edge");
        let a = if j == 0 { p1 } else { tw(core[j - 1]) };
        let b = if j + 1 == core.len() { p2 } else { tw(core[j + 1]) };
        (a, b)
    };
    let mut tops = 0;
    for j in 0..core.len() {
        let (a, b) = lower_twist(j);
        let top = a > 0 && b > 0;
        if top {
            tops += 1;
            if !g.marks_at(core[j]).is_empty() {
                return None;
            }
        } else if g.marks_at(core[j]).len() != 1 {
            return None;
        }
    }
    if tops != 1 {
        return None;
    }
    for v in 0..g.num_vertices() {
        if core.contains(&v) {
            continue;
        }
        if g.genus[v] > 0 {
            if g.incident(v).len() != 1 {
                return None;
            }
        } else if g.incident(v).iter().filter(|x| x.2 > 0).count() != 1 || g.marks_at(v).len() != 1 {
            return None;
        }
    }
    Some(core)
}

/// The admissibility condition of EP(μ, Σ, p₁, p₂, I).
pub fn pair_admissible(g: &Graph, core: &[usize], marker: HalfMarker) -> bool {
    let top = core.iter().position(|&v| g.marks_at(v).is_empty()).expect("a top");
    let core_marks: Vec<u32> = core.iter().flat_map(|&v| g.marks_at(v)).collect();
    if top + 1 == core.len() && core_marks.iter().all(|&j| marker.lt_index(j)) {
        return true;
    }
    match core_marks.iter().min() {
        Some(&j) => !marker.lt_index(j) && top + 1 < core.len() && g.marks_at(core[top + 1]).contains(&j),
        None => false,
    }
}

/// EP(μ, Σ, p₁, p₂, I).
pub fn expanded_pairs(mu: &[i64], sigma: &[u32], p1: i64, p2: i64, marker: HalfMarker) -> Vec<Graph> {
    pre_expanded_pairs(mu, sigma, p1, p2)
        .into_iter()
        .filter(|g| classify_pair_of_holes(g, mu, sigma, p1, p2).is_some_and(|core| pair_admissible(g, &core, marker)))
        .collect()
}
