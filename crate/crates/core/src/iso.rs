//! Exact isomorphism testing for small simple graphs.
//!
//! Cheap invariants run first (order, size, degree sequence, distance
//! distribution). Survivors go through color refinement on the disjoint
//! union and a backtracking search that extends a partial map along a BFS
//! order of the first graph, keeping refined colors and adjacency to
//! already mapped vertices consistent.

use std::collections::{BTreeMap, VecDeque};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    adjacency: Vec<Vec<usize>>,
}

impl SimpleGraph {
    /// Neighbor lists are sorted and deduplicated; symmetry is the caller's
    /// responsibility.
    pub fn from_adjacency(mut adjacency: Vec<Vec<usize>>) -> Self {
        for row in &mut adjacency {
            row.sort_unstable();
            row.dedup();
        }
        Self { adjacency }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        Self::from_adjacency(adjacency)
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adjacency.iter().map(Vec::len).collect();
        d.sort_unstable();
        d
    }

    /// Per-vertex histogram of BFS distances (unreachable counted last),
    /// as a sorted multiset over vertices.
    fn distance_profile(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut profile: Vec<Vec<usize>> = (0..n)
            .map(|root| {
                let mut dist = vec![usize::MAX; n];
                let mut queue = VecDeque::from([root]);
                dist[root] = 0;
                let mut hist = vec![0usize; n + 1];
                while let Some(u) = queue.pop_front() {
                    hist[dist[u]] += 1;
                    for &w in &self.adjacency[u] {
                        if dist[w] == usize::MAX {
                            dist[w] = dist[u] + 1;
                            queue.push_back(w);
                        }
                    }
                }
                hist[n] = dist.iter().filter(|&&d| d == usize::MAX).count();
                hist
            })
            .collect();
        profile.sort();
        profile
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoOutcome {
    /// `map[a_vertex] = b_vertex`, already re-verified.
    Isomorphic(Vec<usize>),
    /// Name of the invariant or search stage that separated the graphs.
    Distinguished(String),
}

/// Checks that `map` is a bijection carrying the edges of `a` exactly onto
/// the edges of `b`.
pub fn verify_witness(a: &SimpleGraph, b: &SimpleGraph, map: &[usize]) -> Result<(), String> {
    if a.n() != b.n() || map.len() != a.n() {
        return Err("vertex counts differ".into());
    }
    let mut hit = vec![false; b.n()];
    for &m in map {
        if m >= b.n() || std::mem::replace(&mut hit[m], true) {
            return Err(format!("map is not a bijection at image {m}"));
        }
    }
    if a.edge_count() != b.edge_count() {
        return Err("edge counts differ".into());
    }
    for u in 0..a.n() {
        for &v in a.neighbors(u) {
            if !b.has_edge(map[u], map[v]) {
                return Err(format!("edge {u}-{v} maps to a non-edge"));
            }
        }
    }
    Ok(())
}

pub fn find_isomorphism(a: &SimpleGraph, b: &SimpleGraph) -> IsoOutcome {
    let distinguished = |what: &str| IsoOutcome::Distinguished(what.to_string());
    if a.n() != b.n() {
        return distinguished("vertex count");
    }
    if a.edge_count() != b.edge_count() {
        return distinguished("edge count");
    }
    if a.degree_sequence() != b.degree_sequence() {
        return distinguished("degree sequence");
    }
    if a.distance_profile() != b.distance_profile() {
        return distinguished("distance distribution");
    }
    let (ca, cb) = refine_colors(a, b);
    let hist = |c: &[usize]| {
        let mut h: BTreeMap<usize, usize> = BTreeMap::new();
        for &x in c {
            *h.entry(x).or_default() += 1;
        }
        h
    };
    if hist(&ca) != hist(&cb) {
        return distinguished("refined color classes");
    }
    let order = bfs_order(a);
    let mut search = Search {
        a,
        b,
        ca: &ca,
        cb: &cb,
        order: &order,
        map: vec![usize::MAX; a.n()],
        used: vec![false; b.n()],
    };
    if search.extend(0) {
        let map = search.map;
        match verify_witness(a, b, &map) {
            Ok(()) => IsoOutcome::Isomorphic(map),
            Err(e) => IsoOutcome::Distinguished(format!("internal: witness rejected ({e})")),
        }
    } else {
        distinguished("exhaustive search")
    }
}

/// Color refinement run on both graphs with a shared palette so that
/// classes are comparable across them.
fn refine_colors(a: &SimpleGraph, b: &SimpleGraph) -> (Vec<usize>, Vec<usize>) {
    let mut ca: Vec<usize> = (0..a.n()).map(|v| a.neighbors(v).len()).collect();
    let mut cb: Vec<usize> = (0..b.n()).map(|v| b.neighbors(v).len()).collect();
    let mut classes = usize::MAX;
    loop {
        let signature = |g: &SimpleGraph, c: &[usize], v: usize| {
            let mut s: Vec<usize> = g.neighbors(v).iter().map(|&w| c[w]).collect();
            s.sort_unstable();
            (c[v], s)
        };
        let sa: Vec<_> = (0..a.n()).map(|v| signature(a, &ca, v)).collect();
        let sb: Vec<_> = (0..b.n()).map(|v| signature(b, &cb, v)).collect();
        let mut palette: BTreeMap<&(usize, Vec<usize>), usize> = BTreeMap::new();
        for s in sa.iter().chain(sb.iter()) {
            let next = palette.len();
            palette.entry(s).or_insert(next);
        }
        let count = palette.len();
        ca = sa.iter().map(|s| palette[s]).collect();
        cb = sb.iter().map(|s| palette[s]).collect();
        if count == classes {
            return (ca, cb);
        }
        classes = count;
    }
}

fn bfs_order(g: &SimpleGraph) -> Vec<usize> {
    let mut seen = vec![false; g.n()];
    let mut order = Vec::with_capacity(g.n());
    for root in 0..g.n() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

struct Search<'a> {
    a: &'a SimpleGraph,
    b: &'a SimpleGraph,
    ca: &'a [usize],
    cb: &'a [usize],
    order: &'a [usize],
    map: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn consistent(&self, u: usize, x: usize) -> bool {
        if self.used[x] || self.ca[u] != self.cb[x] {
            return false;
        }
        let mut mapped_neighbors = 0;
        for &w in self.a.neighbors(u) {
            let image = self.map[w];
            if image != usize::MAX {
                if !self.b.has_edge(x, image) {
                    return false;
                }
                mapped_neighbors += 1;
            }
        }
        // Equal counts rule out extra edges from x to mapped vertices.
        let used_neighbors = self.b.neighbors(x).iter().filter(|&&y| self.used[y]).count();
        used_neighbors == mapped_neighbors
    }

    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let u = self.order[depth];
        let anchor = self
            .a
            .neighbors(u)
            .iter()
            .find(|&&w| self.map[w] != usize::MAX)
            .map(|&w| self.map[w]);
        let candidates: Vec<usize> = match anchor {
            Some(x) => self.b.neighbors(x).to_vec(),
            None => (0..self.b.n()).collect(),
        };
        for x in candidates {
            if !self.consistent(u, x) {
                continue;
            }
            self.map[u] = x;
            self.used[x] = true;
            if self.extend(depth + 1) {
                return true;
            }
            self.map[u] = usize::MAX;
            self.used[x] = false;
        }
        false
    }
}
