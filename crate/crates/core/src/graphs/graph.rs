//! Twisted stable trees: storage, invariants, canonical codes, automorphism
//! counts and edge contraction.

use std::collections::BTreeMap;
use std::fmt;

/// Leg labels. Marks are 1-based; `Pole(1)`, `Pole(2)` are the legs n+1, n+2;
/// `Root` is the leg r of a rooted tree and `Hole(1)`, `Hole(2)` the legs h₁, h₂
/// of a pair of holes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Leg {
    Mark(u32),
    Pole(u8),
    Root,
    Hole(u8),
}

impl fmt::Display for Leg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Leg::Mark(i) => write!(f, "{i}"),
            Leg::Pole(k) => write!(f, "n+{k}"),
            Leg::Root => write!(f, "r"),
            Leg::Hole(k) => write!(f, "h{k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegRef {
    pub leg: Leg,
    pub vertex: usize,
    pub twist: i64,
}

/// An edge between `a` and `b`; `twist` is the twist of the half-edge at `a`
/// (the half-edge at `b` carries −twist).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub twist: i64,
}

impl Edge {
    pub fn twist_at(&self, v: usize) -> i64 {
        if v == self.a { self.twist } else { -self.twist }
    }

    pub fn other(&self, v: usize) -> usize {
        if v == self.a { self.b } else { self.a }
    }

    pub fn is_horizontal(&self) -> bool {
        self.twist == 0
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    pub genus: Vec<u32>,
    pub legs: Vec<LegRef>,
    pub edges: Vec<Edge>,
}

impl Graph {
    pub fn add_vertex(&mut self, genus: u32) -> usize {
        self.genus.push(genus);
        self.genus.len() - 1
    }

    pub fn add_leg(&mut self, leg: Leg, vertex: usize, twist: i64) {
        self.legs.push(LegRef { leg, vertex, twist });
    }

    pub fn add_edge(&mut self, a: usize, b: usize, twist_at_a: i64) {
        self.edges.push(Edge { a, b, twist: twist_at_a });
    }

    pub fn num_vertices(&self) -> usize {
        self.genus.len()
    }

    pub fn vertex_of(&self, leg: Leg) -> Option<usize> {
        self.legs.iter().find(|l| l.leg == leg).map(|l| l.vertex)
    }

    pub fn legs_at(&self, v: usize) -> Vec<&LegRef> {
        self.legs.iter().filter(|l| l.vertex == v).collect()
    }

    /// Incident edges as (edge index, neighbour, twist at v).
    pub fn incident(&self, v: usize) -> Vec<(usize, usize, i64)> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.a == v || e.b == v)
            .map(|(k, e)| (k, e.other(v), e.twist_at(v)))
            .collect()
    }

    /// n(v): number of incident half-edges.
    pub fn valence(&self, v: usize) -> usize {
        self.legs_at(v).len() + self.incident(v).len()
    }

    /// Twists of all half-edges at v.
    pub fn twists_at(&self, v: usize) -> Vec<i64> {
        let mut t: Vec<i64> = self.legs_at(v).iter().map(|l| l.twist).collect();
        t.extend(self.incident(v).iter().map(|x| x.2));
        t
    }

    pub fn horizontal_edges(&self) -> usize {
        self.edges.iter().filter(|e| e.is_horizontal()).count()
    }

    /// Minimal mark index at v.
    pub fn ind(&self, v: usize) -> Option<u32> {
        self.legs_at(v)
            .iter()
            .filter_map(|l| if let Leg::Mark(i) = l.leg { Some(i) } else { None })
            .min()
    }

    pub fn marks_at(&self, v: usize) -> Vec<u32> {
        let mut m: Vec<u32> = self
            .legs_at(v)
            .iter()
            .filter_map(|l| if let Leg::Mark(i) = l.leg { Some(i) } else { None })
            .collect();
        m.sort_unstable();
        m
    }

    pub fn is_tree(&self) -> bool {
        let nv = self.num_vertices();
        if nv == 0 || self.edges.len() + 1 != nv {
            return false;
        }
        let mut seen = vec![false; nv];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for (_, w, _) in self.incident(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Σ twists = 2g − 2 + n(v) and stability at every vertex.
    pub fn twist_balanced(&self) -> bool {
        (0..self.num_vertices()).all(|v| {
            let rhs = 2 * self.genus[v] as i64 - 2 + self.valence(v) as i64;
            rhs > 0 && self.twists_at(v).iter().sum::<i64>() == rhs
        })
    }

    /// Compact type, nonnegative legs, decorations with positive twists only.
    pub fn is_rational_type(&self) -> bool {
        self.is_tree()
            && self.twist_balanced()
            && self.legs.iter().all(|l| l.twist >= 0)
            && (0..self.num_vertices()).all(|v| self.genus[v] == 0 || self.twists_at(v).iter().all(|&t| t > 0))
    }

    /// The vertices on the path from `from` to `to`, inclusive.
    pub fn path(&self, from: usize, to: usize) -> Vec<usize> {
        let nv = self.num_vertices();
        let mut parent = vec![usize::MAX; nv];
        parent[from] = from;
        let mut queue = std::collections::VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            for (_, w, _) in self.incident(v) {
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        let mut p = vec![to];
        let mut cur = to;
        while cur != from {
            cur = parent[cur];
            p.push(cur);
        }
        p.reverse();
        p
    }

    fn root(&self) -> usize {
        self.legs.iter().min_by_key(|l| l.leg).map(|l| l.vertex).unwrap_or(0)
    }

    /// Canonical string: the tree rooted at the vertex carrying the smallest leg,
    /// children sorted. Isomorphic graphs (legs fixed) have equal codes.
    pub fn canonical_code(&self) -> String {
        fn code(g: &Graph, v: usize, parent: Option<usize>) -> String {
            let mut legs: Vec<(Leg, i64)> = g.legs_at(v).iter().map(|l| (l.leg, l.twist)).collect();
            legs.sort();
            let ls: Vec<String> = legs.iter().map(|(l, t)| format!("{l}:{t}")).collect();
            let mut kids: Vec<String> = g
                .incident(v)
                .into_iter()
                .filter(|&(_, w, _)| Some(w) != parent)
                .map(|(_, w, t)| format!("{t}>{}", code(g, w, Some(v))))
                .collect();
            kids.sort();
            format!("(g{} [{}] {{{}}})", g.genus[v], ls.join(","), kids.join(";"))
        }
        if self.num_vertices() == 0 {
            return String::new();
        }
        code(self, self.root(), None)
    }

    /// |Aut|: the number of vertex bijections fixing every leg and preserving
    /// genera, edges and twists, found by exhaustive search.
    pub fn automorphisms(&self) -> u64 {
        let nv = self.num_vertices();
        if nv == 0 {
            return 1;
        }
        let inv = |v: usize| {
            let mut legs: Vec<Leg> = self.legs_at(v).iter().map(|l| l.leg).collect();
            legs.sort();
            let mut tw: Vec<i64> = self.incident(v).iter().map(|x| x.2).collect();
            tw.sort_unstable();
            (self.genus[v], legs, tw)
        };
        let invs: Vec<_> = (0..nv).map(inv).collect();
        // BFS order from the root so every later vertex has an assigned parent
        let root = self.root();
        let mut order = vec![root];
        let mut parent = vec![None; nv];
        let mut seen = vec![false; nv];
        seen[root] = true;
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            for (_, w, _) in self.incident(v) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(v);
                    order.push(w);
                }
            }
            i += 1;
        }
        let mut adj: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for e in &self.edges {
            adj.insert((e.a, e.b), e.twist);
            adj.insert((e.b, e.a), -e.twist);
        }
        fn rec(
            k: usize,
            order: &[usize],
            parent: &[Option<usize>],
            invs: &[(u32, Vec<Leg>, Vec<i64>)],
            adj: &BTreeMap<(usize, usize), i64>,
            sigma: &mut Vec<Option<usize>>,
            used: &mut Vec<bool>,
        ) -> u64 {
            if k == order.len() {
                return 1;
            }
            let v = order[k];
            let mut count = 0;
            for w in 0..invs.len() {
                if used[w] || invs[w] != invs[v] {
                    continue;
                }
                if let Some(p) = parent[v] {
                    let sp = sigma[p].expect("parent assigned");
                    if adj.get(&(w, sp)) != adj.get(&(v, p)) {
                        continue;
                    }
                }
                sigma[v] = Some(w);
                used[w] = true;
                count += rec(k + 1, order, parent, invs, adj, sigma, used);
                used[w] = false;
                sigma[v] = None;
            }
            count
        }
        rec(0, &order, &parent, &invs, &adj, &mut vec![None; nv], &mut vec![false; nv])
    }

    /// Contract the listed edges; genera of merged vertices add up.
    pub fn contract(&self, edge_ids: &[usize]) -> Graph {
        let nv = self.num_vertices();
        let mut rep: Vec<usize> = (0..nv).collect();
        fn find(rep: &mut Vec<usize>, x: usize) -> usize {
            let mut r = x;
            while rep[r] != r {
                r = rep[r];
            }
            let mut c = x;
            while rep[c] != r {
                let n = rep[c];
                rep[c] = r;
                c = n;
            }
            r
        }
        for &k in edge_ids {
            let (a, b) = (find(&mut rep, self.edges[k].a), find(&mut rep, self.edges[k].b));
            rep[b] = a;
        }
        let mut idx = vec![usize::MAX; nv];
        let mut g = Graph::default();
        for v in 0..nv {
            let r = find(&mut rep, v);
            if idx[r] == usize::MAX {
                idx[r] = g.add_vertex(0);
            }
        }
        for v in 0..nv {
            let r = find(&mut rep, v);
            g.genus[idx[r]] += self.genus[v];
        }
        for l in &self.legs {
            let r = find(&mut rep, l.vertex);
            g.add_leg(l.leg, idx[r], l.twist);
        }
        for (k, e) in self.edges.iter().enumerate() {
            if edge_ids.contains(&k) {
                continue;
            }
            let (a, b) = (find(&mut rep, e.a), find(&mut rep, e.b));
            g.add_edge(idx[a], idx[b], e.twist);
        }
        g
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_code())
    }
}
