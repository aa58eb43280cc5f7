//! Total colorings of `ST^ell_k` built from positions.
//!
//! Every edge is colored by its swap position. For `ell = 2` each word has
//! exactly one later position repeating its first symbol, and coloring the
//! vertex by that position gives a total coloring whose closed
//! neighborhoods are rainbow. For `ell = 3` only the 1-spheres around the
//! members of one position-match code are colored.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::codes::CodeRule;
use crate::error::{Error, Result};
use crate::report::{Counterexamples, VerificationReport, DEFAULT_COUNTEREXAMPLE_CAP};
use crate::stargraph::StarGraph;
use crate::MultisetPerm;

/// Colors are positions `1..=k*ell-1`. Vertex colors may be partial; edge
/// colors are stored per edge end (adjacency slot) and must agree at both
/// ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotalColoring {
    pub k: usize,
    pub ell: usize,
    pub palette_size: usize,
    pub vertex_color: Vec<Option<usize>>,
    pub edge_color: Vec<usize>,
    /// Drawing color names mapped to the integer colors of this run.
    pub legend: BTreeMap<String, usize>,
}

/// Serialized form: colored vertices by id and edges as `[u, v, color]`
/// with `u < v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringDocument {
    pub k: usize,
    pub ell: usize,
    pub palette_size: usize,
    pub vertex_color: BTreeMap<usize, usize>,
    pub edge_color: Vec<[usize; 3]>,
    pub legend: BTreeMap<String, usize>,
}

impl TotalColoring {
    /// Edge colors from the swap positions, vertex colors as given.
    pub fn with_vertex_colors(g: &StarGraph, vertex_color: Vec<Option<usize>>) -> Self {
        let edge_color = (0..g.n())
            .flat_map(|v| g.neighbors(v).map(|(_, c)| c))
            .collect();
        Self {
            k: g.k(),
            ell: g.ell(),
            palette_size: g.palette_size(),
            vertex_color,
            edge_color,
            legend: BTreeMap::new(),
        }
    }

    pub fn to_document(&self, g: &StarGraph) -> ColoringDocument {
        let vertex_color = self
            .vertex_color
            .iter()
            .enumerate()
            .filter_map(|(v, c)| c.map(|c| (v, c)))
            .collect();
        let degree = g.degree();
        let edge_color = (0..g.n())
            .flat_map(|u| {
                g.neighbors(u)
                    .enumerate()
                    .filter(move |&(_, (v, _))| u < v)
                    .map(move |(i, (v, _))| [u, v, self.edge_color[u * degree + i]])
            })
            .collect();
        ColoringDocument {
            k: self.k,
            ell: self.ell,
            palette_size: self.palette_size,
            vertex_color,
            edge_color,
            legend: self.legend.clone(),
        }
    }

    /// Vertices of each color.
    pub fn vertex_classes(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (v, c) in self.vertex_color.iter().enumerate() {
            if let Some(c) = c {
                classes.entry(*c).or_default().push(v);
            }
        }
        classes
    }

    /// Edges `(u, v)` with `u < v` of each color.
    pub fn edge_classes(&self, g: &StarGraph) -> BTreeMap<usize, Vec<(usize, usize)>> {
        let mut classes: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for [u, v, c] in self.to_document(g).edge_color {
            classes.entry(c).or_default().push((u, v));
        }
        classes
    }
}

/// The later positions repeating the first symbol.
fn matching_positions(word: &[u8]) -> impl Iterator<Item = usize> + '_ {
    (1..word.len()).filter(move |&j| word[j] == word[0])
}

fn require_ell(g: &StarGraph, ell: usize) -> Result<()> {
    if g.ell() != ell {
        return Err(Error::UnsupportedEll {
            expected: ell,
            found: g.ell(),
        });
    }
    Ok(())
}

/// Names given to the color classes of `ST^2_2` and of the spheres of
/// `ST^3_2` in their customary drawings, each pinned by a representative
/// word.
fn drawing_legend(k: usize, ell: usize) -> &'static [(&'static str, &'static str)] {
    match (k, ell) {
        (2, 2) => &[("blue", "0011"), ("green", "0101"), ("red", "0110")],
        (2, 3) => &[
            ("blue", "011100"),
            ("hazel", "010110"),
            ("red", "001110"),
            ("green", "011010"),
        ],
        _ => &[],
    }
}

fn legend_for(g: &StarGraph, vertex_color: &[Option<usize>]) -> BTreeMap<String, usize> {
    drawing_legend(g.k(), g.ell())
        .iter()
        .filter_map(|&(name, word)| {
            let p = MultisetPerm::parse(word, g.k(), g.ell()).ok()?;
            vertex_color[g.vertex_of(&p)].map(|c| (name.to_string(), c))
        })
        .collect()
}

/// For `ell = 2`: each vertex gets its unique matching position, each edge
/// its swap position.
pub fn build_total_coloring(g: &StarGraph) -> Result<TotalColoring> {
    require_ell(g, 2)?;
    let vertex_color: Vec<Option<usize>> = crate::mperm::enumerate(g.k(), g.ell())?
        .map(|p| matching_positions(p.word()).next())
        .collect();
    let mut coloring = TotalColoring::with_vertex_colors(g, vertex_color);
    coloring.legend = legend_for(g, &coloring.vertex_color);
    Ok(coloring)
}

/// Adjacent vertices differ, edges at a vertex differ, and no edge shares
/// a color with either endpoint. Both ends of every edge must agree on its
/// color.
pub fn verify_proper_total(c: &TotalColoring, g: &StarGraph) -> Result<VerificationReport> {
    let colors = full_vertex_colors(c)?;
    let mut report = VerificationReport::new("proper-total-coloring", g.k(), g.ell());
    let mut found = Counterexamples::new(DEFAULT_COUNTEREXAMPLE_CAP);
    let degree = g.degree();
    let mut used = BTreeSet::new();
    for v in 0..g.n() {
        used.insert(colors[v]);
        let mut seen = BTreeSet::new();
        for (i, (w, _)) in g.neighbors(v).enumerate() {
            let e = c.edge_color[v * degree + i];
            used.insert(e);
            let detail = if !seen.insert(e) {
                Some(format!("two edges of color {e} at the vertex"))
            } else if e == colors[v] {
                Some(format!("edge to {w} shares color {e} with the vertex"))
            } else if v < w && colors[v] == colors[w] {
                Some(format!("adjacent to {w}, both color {}", colors[v]))
            } else {
                let back = g
                    .neighbors(w)
                    .position(|(x, _)| x == v)
                    .map(|j| c.edge_color[w * degree + j]);
                (back != Some(e)).then(|| format!("edge to {w} colored inconsistently"))
            };
            if let Some(detail) = detail {
                found.push(v, g.word(v).to_string(), detail);
            }
        }
    }
    report.count("palette_size", c.palette_size as u64, None);
    report.count("colors_used", used.len() as u64, Some(c.palette_size as u64));
    report.absorb(found.finish());
    Ok(report)
}

fn full_vertex_colors(c: &TotalColoring) -> Result<Vec<usize>> {
    c.vertex_color
        .iter()
        .enumerate()
        .map(|(vertex, col)| col.ok_or(Error::PartialColoring { vertex }))
        .collect()
}

/// For `ell = 2`: the vertex colors on every closed neighborhood are the
/// whole palette, each once.
pub fn verify_totally_efficient(c: &TotalColoring, g: &StarGraph) -> Result<VerificationReport> {
    require_ell(g, 2)?;
    let colors = full_vertex_colors(c)?;
    let mut report = VerificationReport::new("totally-efficient-coloring", g.k(), g.ell());
    let mut found = Counterexamples::new(DEFAULT_COUNTEREXAMPLE_CAP);
    let palette: Vec<usize> = (1..=c.palette_size).collect();
    let mut distinct_hist: BTreeMap<u64, u64> = BTreeMap::new();
    for v in 0..g.n() {
        let mut seen: Vec<usize> = std::iter::once(colors[v])
            .chain(g.neighbors(v).map(|(w, _)| colors[w]))
            .collect();
        seen.sort_unstable();
        let mut distinct = seen.clone();
        distinct.dedup();
        *distinct_hist.entry(distinct.len() as u64).or_default() += 1;
        if seen != palette {
            found.push(
                v,
                g.word(v).to_string(),
                format!("closed neighborhood colors {seen:?}"),
            );
        }
    }
    report.count("closed_neighborhood_size", g.degree() as u64 + 1, None);
    report.count("palette_size", c.palette_size as u64, None);
    report.histogram("distinct_colors_per_closed_neighborhood", distinct_hist);
    report.absorb(found.finish());
    Ok(report)
}

/// For `ell = 3`: colors every member `v` of `Sigma_{i_star}` with its
/// other matching position `j != i_star` and checks, per center, that the
/// incident edge colors together with `j` are the palette minus `i_star`.
pub fn sphere_coloring(g: &StarGraph, i_star: usize) -> Result<(TotalColoring, VerificationReport)> {
    require_ell(g, 3)?;
    let width = g.k() * g.ell();
    if i_star == 0 || i_star >= width {
        return Err(Error::ParamOutOfRange {
            name: "i_star",
            value: i_star,
            reason: "position must be in 1..k*ell",
        });
    }
    let rule = CodeRule::PositionMatch(i_star);
    let mut vertex_color = Vec::with_capacity(g.n());
    let mut report =
        VerificationReport::new("almost-totally-efficient-spheres", g.k(), g.ell()).param("i_star", i_star as u64);
    let mut found = Counterexamples::new(DEFAULT_COUNTEREXAMPLE_CAP);
    let expected: BTreeSet<usize> = (1..width).filter(|&c| c != i_star).collect();
    let mut centers = 0u64;
    let mut sphere_hist: BTreeMap<u64, u64> = BTreeMap::new();
    for (v, p) in crate::mperm::enumerate(g.k(), g.ell())?.enumerate() {
        if !rule.admits(p.word()) {
            vertex_color.push(None);
            continue;
        }
        centers += 1;
        let j = matching_positions(p.word())
            .find(|&j| j != i_star)
            .expect("three copies of the first symbol");
        vertex_color.push(Some(j));
        *sphere_hist.entry(j as u64).or_default() += 1;
        let edge_colors: BTreeSet<usize> = g.neighbors(v).map(|(_, c)| c).collect();
        let mut present = edge_colors.clone();
        present.insert(j);
        if edge_colors.contains(&i_star) {
            found.push(v, p.to_string(), format!("edge of color {i_star} at a center"));
        } else if edge_colors.contains(&j) {
            found.push(v, p.to_string(), format!("sphere color {j} repeats an edge color"));
        } else if present != expected {
            found.push(v, p.to_string(), format!("sphere sees colors {present:?}"));
        }
    }
    let mut coloring = TotalColoring::with_vertex_colors(g, vertex_color);
    coloring.legend = legend_for(g, &coloring.vertex_color);
    report.count("centers", centers, None);
    report.count("missing_color", i_star as u64, None);
    report.histogram("centers_per_sphere_color", sphere_hist);
    report.absorb(found.finish());
    Ok((coloring, report))
}
