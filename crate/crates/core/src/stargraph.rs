//! The star `ell`-set transposition graph `ST^ell_k`.
//!
//! Two words are adjacent when one is obtained from the other by swapping
//! position 0 with a position `j` holding a different symbol. The edge is
//! colored `j`. The swap is an involution, so both endpoints agree on the
//! color.
//!
//! The graph is available implicitly ([`neighbors`], [`implicit_census`])
//! and explicitly ([`StarGraph`]), where vertices are lexicographic ranks.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;
use std::io::{self, Write};

use rayon::prelude::*;
use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mperm::{self, count_vertices, format_word, MultisetPerm, PermIndex};

pub const DEFAULT_VERTEX_BUDGET: u64 = 10_000_000;

/// Rows are processed in blocks of this many vertices by parallel sweeps.
const BLOCK: usize = 1 << 14;

/// Neighbors of `p`, one per position `j >= 1` with `p[j] != p[0]`, tagged
/// with color `j`, in ascending color order.
pub fn neighbors(p: &MultisetPerm) -> Vec<(MultisetPerm, usize)> {
    neighbor_colors(p.word())
        .map(|j| (p.swapped(j), j))
        .collect()
}

/// Colors present at a vertex: the positions whose symbol differs from the
/// first one.
pub fn neighbor_colors(word: &[u8]) -> impl Iterator<Item = usize> + '_ {
    let first = word.first().copied();
    (1..word.len()).filter(move |&j| Some(word[j]) != first)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ColoredEdge {
    pub u: usize,
    pub v: usize,
    pub color: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Slot {
    vertex: u32,
    color: u16,
}

/// Materialized `ST^ell_k`: a flat adjacency array of `n * degree` slots,
/// each row sorted by color.
#[derive(Debug, Clone)]
pub struct StarGraph {
    k: usize,
    ell: usize,
    n: usize,
    degree: usize,
    adjacency: Vec<Slot>,
}

impl StarGraph {
    pub fn build(k: usize, ell: usize) -> Result<Self> {
        Self::build_with_budget(k, ell, DEFAULT_VERTEX_BUDGET)
    }

    pub fn build_with_budget(k: usize, ell: usize, budget: u64) -> Result<Self> {
        let count = count_vertices(k, ell)?;
        if count > budget || count > u32::MAX as u64 {
            return Err(Error::BudgetExceeded {
                k,
                ell,
                required: count,
                budget: budget.min(u32::MAX as u64),
            });
        }
        if k * ell > u16::MAX as usize {
            return Err(Error::ParamOutOfRange {
                name: "k*ell",
                value: k * ell,
                reason: "word length must fit a 16-bit color",
            });
        }
        let n = count as usize;
        let degree = mperm::degree(k, ell);
        let mut adjacency = vec![
            Slot {
                vertex: 0,
                color: 0
            };
            n * degree
        ];
        if degree > 0 {
            adjacency
                .par_chunks_mut(BLOCK * degree)
                .enumerate()
                .for_each(|(block, rows)| {
                    let mut word = vec![0u8; k * ell];
                    mperm::unrank_into((block * BLOCK) as u64, count, k, ell, &mut word);
                    for row in rows.chunks_mut(degree) {
                        let mut slots = row.iter_mut();
                        for j in 1..word.len() {
                            if word[j] == word[0] {
                                continue;
                            }
                            word.swap(0, j);
                            let vertex = mperm::rank_word(&word, k, ell) as u32;
                            word.swap(0, j);
                            *slots.next().expect("degree mismatch") = Slot {
                                vertex,
                                color: j as u16,
                            };
                        }
                        mperm::next_word(&mut word);
                    }
                });
        }
        Ok(Self {
            k,
            ell,
            n,
            degree,
            adjacency,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of colors, `k*ell - 1`.
    pub fn palette_size(&self) -> usize {
        self.k * self.ell - 1
    }

    pub fn edge_count(&self) -> usize {
        self.n * self.degree / 2
    }

    pub fn word(&self, v: usize) -> MultisetPerm {
        MultisetPerm::unrank(PermIndex(v as u64), self.k, self.ell).expect("vertex in range")
    }

    pub fn vertex_of(&self, p: &MultisetPerm) -> usize {
        p.rank().as_usize()
    }

    /// `(neighbor, color)` pairs of `v` in ascending color order.
    pub fn neighbors(&self, v: usize) -> impl ExactSizeIterator<Item = (usize, usize)> + '_ {
        self.adjacency[v * self.degree..(v + 1) * self.degree]
            .iter()
            .map(|s| (s.vertex as usize, s.color as usize))
    }

    /// Slot index of the edge of color `color` at `v`, if present. Slot
    /// indices run over `0..n*degree` and are used for per-edge-end data.
    pub fn slot_of_color(&self, v: usize, color: usize) -> Option<usize> {
        let row = &self.adjacency[v * self.degree..(v + 1) * self.degree];
        row.binary_search_by_key(&(color as u16), |s| s.color)
            .ok()
            .map(|i| v * self.degree + i)
    }

    pub fn neighbor_by_color(&self, v: usize, color: usize) -> Option<usize> {
        self.slot_of_color(v, color)
            .map(|s| self.adjacency[s].vertex as usize)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).any(|(w, _)| w == v)
    }

    /// All edges with `u < v`, ordered by `u` then color.
    pub fn edges(&self) -> impl Iterator<Item = ColoredEdge> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&(v, _)| u < v)
                .map(move |(v, color)| ColoredEdge { u, v, color })
        })
    }

    /// Length of a shortest cycle with one such cycle as witness, or `None`
    /// for a forest.
    pub fn girth(&self) -> Girth {
        let best = (0..self.n)
            .into_par_iter()
            .filter_map(|root| self.shortest_cycle_through(root).map(|c| (c.len(), root, c)))
            .min_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        match best {
            Some((length, _, cycle)) => Girth {
                length: Some(length),
                cycle,
            },
            None => Girth {
                length: None,
                cycle: Vec::new(),
            },
        }
    }

    fn shortest_cycle_through(&self, root: usize) -> Option<Vec<usize>> {
        const UNSEEN: usize = usize::MAX;
        let mut dist = vec![UNSEEN; self.n];
        let mut parent = vec![UNSEEN; self.n];
        let mut queue = VecDeque::new();
        dist[root] = 0;
        queue.push_back(root);
        let mut best: Option<(usize, usize, usize)> = None;
        while let Some(u) = queue.pop_front() {
            if let Some((len, _, _)) = best {
                if 2 * dist[u] + 1 >= len {
                    break;
                }
            }
            for (w, _) in self.neighbors(u) {
                if dist[w] == UNSEEN {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if w != parent[u] {
                    let len = dist[u] + dist[w] + 1;
                    if best.is_none_or(|(b, _, _)| len < b) {
                        best = Some((len, u, w));
                    }
                }
            }
        }
        let (_, u, w) = best?;
        let climb = |mut x: usize| {
            let mut path = vec![x];
            while x != root {
                x = parent[x];
                path.push(x);
            }
            path
        };
        let mut cycle = climb(u);
        cycle.reverse();
        let mut back = climb(w);
        back.pop();
        cycle.extend(back);
        Some(cycle)
    }

    /// Connected components after deleting `removed` vertices and every
    /// edge whose color is in `removed_colors`. Each component is sorted;
    /// components are ordered by their smallest vertex.
    pub fn components(&self, removed: &[bool], removed_colors: &[usize]) -> Vec<Vec<usize>> {
        let mut color_gone = vec![false; self.k * self.ell];
        for &c in removed_colors {
            if c < color_gone.len() {
                color_gone[c] = true;
            }
        }
        let is_removed = |v: usize| removed.get(v).copied().unwrap_or(false);
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for start in 0..self.n {
            if seen[start] || is_removed(start) {
                continue;
            }
            seen[start] = true;
            stack.push(start);
            let mut component = Vec::new();
            while let Some(u) = stack.pop() {
                component.push(u);
                for (w, c) in self.neighbors(u) {
                    if !color_gone[c] && !seen[w] && !is_removed(w) {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            component.sort_unstable();
            out.push(component);
        }
        out
    }

    /// `u v color` per line, `u < v`.
    pub fn write_edge_list<W: Write>(&self, out: &mut W) -> io::Result<()> {
        for e in self.edges() {
            writeln!(out, "{} {} {}", e.u, e.v, e.color)?;
        }
        Ok(())
    }

    /// DOT with words as labels, edge colors as `color`/`label` attributes
    /// and, when given, vertex colors as `colorindex` attributes.
    pub fn write_dot<W: Write>(
        &self,
        out: &mut W,
        vertex_colors: Option<&[Option<usize>]>,
    ) -> io::Result<()> {
        writeln!(out, "graph ST_{}_{} {{", self.ell, self.k)?;
        let width = self.k * self.ell;
        let mut word = vec![0u8; width];
        if self.n > 0 {
            mperm::unrank_into(0, self.n as u64, self.k, self.ell, &mut word);
        }
        for v in 0..self.n {
            let mut attrs = format!("label=\"{}\"", format_word(&word, self.k));
            if let Some(Some(c)) = vertex_colors.and_then(|vc| vc.get(v)) {
                let _ = write!(attrs, ", colorindex={c}, colorscheme=\"{}\"", dot_scheme(width));
                let _ = write!(attrs, ", style=filled, fillcolor={c}");
            }
            writeln!(out, "  {v} [{attrs}];")?;
            mperm::next_word(&mut word);
        }
        for e in self.edges() {
            writeln!(
                out,
                "  {} -- {} [label={}, colorindex={}, colorscheme=\"{}\", color={}];",
                e.u,
                e.v,
                e.color,
                e.color,
                dot_scheme(width),
                e.color
            )?;
        }
        writeln!(out, "}}")
    }

    /// graph6 encoding (no `>>graph6<<` header), colors dropped.
    pub fn to_graph6(&self) -> String {
        let n = self.n;
        let mut bytes = Vec::new();
        if n <= 62 {
            bytes.push(n as u8 + 63);
        } else if n <= 258_047 {
            bytes.push(126);
            for shift in [12, 6, 0] {
                bytes.push(((n >> shift) & 63) as u8 + 63);
            }
        } else {
            bytes.extend([126, 126]);
            for shift in [30, 24, 18, 12, 6, 0] {
                bytes.push(((n >> shift) & 63) as u8 + 63);
            }
        }
        // Upper triangle, column by column: x(0,1), x(0,2), x(1,2), ...
        let total_bits = n * n.saturating_sub(1) / 2;
        let mut bits = vec![0u8; total_bits.div_ceil(6)];
        for e in self.edges() {
            let (i, j) = (e.u.min(e.v), e.u.max(e.v));
            let index = j * (j - 1) / 2 + i;
            bits[index / 6] |= 1 << (5 - index % 6);
        }
        bytes.extend(bits.into_iter().map(|b| b + 63));
        String::from_utf8(bytes).expect("graph6 is printable ASCII")
    }
}

fn dot_scheme(colors: usize) -> String {
    // Graphviz brewer schemes top out at 12 classes.
    format!("set3{}", colors.clamp(3, 12))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Girth {
    pub length: Option<usize>,
    /// Vertices of a shortest cycle in traversal order.
    pub cycle: Vec<usize>,
}

/// Result of a regularity sweep that never materializes the graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct ImplicitCensus {
    pub k: usize,
    pub ell: usize,
    pub vertices: u64,
    pub expected_degree: usize,
    pub degree_histogram: BTreeMap<usize, u64>,
    /// Vertices where the colors present are not exactly the positions
    /// holding a symbol different from the first one, or where a swap does
    /// not return to the original word.
    pub violations: u64,
    pub regular: bool,
}

/// Walks every word of `ST^ell_k` in parallel blocks, counting degrees and
/// checking the color rule at each vertex.
pub fn implicit_census(k: usize, ell: usize) -> Result<ImplicitCensus> {
    let count = count_vertices(k, ell)?;
    let expected_degree = mperm::degree(k, ell);
    let blocks = count.div_ceil(BLOCK as u64);
    let (degree_histogram, violations) = (0..blocks)
        .into_par_iter()
        .map(|block| {
            let start = block * BLOCK as u64;
            let end = (start + BLOCK as u64).min(count);
            let mut word = vec![0u8; k * ell];
            mperm::unrank_into(start, count, k, ell, &mut word);
            let mut hist: BTreeMap<usize, u64> = BTreeMap::new();
            let mut bad = 0u64;
            let mut scratch = word.clone();
            for _ in start..end {
                let mut deg = 0;
                let mut ok = true;
                for j in 1..word.len() {
                    if word[j] == word[0] {
                        continue;
                    }
                    deg += 1;
                    scratch.copy_from_slice(&word);
                    scratch.swap(0, j);
                    // The neighbor sees the same color and swaps back to us.
                    ok &= scratch[j] != scratch[0];
                    scratch.swap(0, j);
                    ok &= scratch == word;
                }
                *hist.entry(deg).or_default() += 1;
                bad += u64::from(!ok);
                mperm::next_word(&mut word);
            }
            (hist, bad)
        })
        .reduce(
            || (BTreeMap::new(), 0),
            |(mut a, x), (b, y)| {
                for (d, c) in b {
                    *a.entry(d).or_default() += c;
                }
                (a, x + y)
            },
        );
    let regular = degree_histogram.len() == 1 && degree_histogram.contains_key(&expected_degree);
    Ok(ImplicitCensus {
        k,
        ell,
        vertices: count,
        expected_degree,
        degree_histogram,
        violations,
        regular: regular && violations == 0,
    })
}
