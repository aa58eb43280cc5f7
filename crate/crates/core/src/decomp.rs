//! Decomposition of `ST^ell_k` after deleting a position-match code
//! `Sigma_i` and all edges of color `i`, and the nesting of the resulting
//! pieces into copies of `ST^ell_{k-1}`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use crate::codes::{self, build_s, build_sigma, verify_efficient};
use crate::error::{Error, Result};
use crate::iso::{find_isomorphism, verify_witness, IsoOutcome, SimpleGraph};
use crate::mperm::count_vertices;
use crate::stargraph::{StarGraph, DEFAULT_VERTEX_BUDGET};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct ComponentCensus {
    pub k: usize,
    pub ell: usize,
    pub i: usize,
    /// Whether `k > 2`, the range for which the decomposition is asserted.
    pub within_stated_range: bool,
    pub vertices: u64,
    pub removed_vertices: u64,
    pub removed_edges: u64,
    /// `(n - |Sigma_i|) / 2` for `ell >= 2`: each remaining vertex has one
    /// color-`i` edge.
    pub expected_removed_edges: Option<u64>,
    pub edge_accounting_ok: bool,
    pub component_count: u64,
    /// Component size -> number of components of that size.
    pub component_sizes: BTreeMap<u64, u64>,
    pub reference_size: u64,
    pub size_homogeneous: bool,
    /// The closed form `k * ell^(k-1)`.
    pub formula_count: u64,
    /// `(n - |Sigma_i|) / |ST^ell_{k-1}|` when that division is exact.
    pub arithmetic_count: Option<u64>,
    pub arithmetic_matches_census: bool,
    pub formula_mismatch: bool,
    /// Per component, in component order.
    pub iso_verdicts: Vec<bool>,
    pub all_isomorphic: bool,
}

impl ComponentCensus {
    /// Every computed fact is internally consistent and each component is a
    /// verified copy of `ST^ell_{k-1}`. The closed-form count is reported,
    /// not required.
    pub fn consistent(&self) -> bool {
        self.edge_accounting_ok
            && self.size_homogeneous
            && self.arithmetic_matches_census
            && self.all_isomorphic
    }
}

/// Bijection from a component's vertices (in sorted order) onto the
/// vertices of the reference graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoWitness {
    pub component: Vec<usize>,
    pub image: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoResult {
    pub isomorphic: bool,
    pub witness: Option<IsoWitness>,
    /// Invariant that separated the graphs when not isomorphic.
    pub distinguished_by: Option<String>,
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub census: ComponentCensus,
    pub components: Vec<Vec<usize>>,
    pub witnesses: Vec<Option<IsoWitness>>,
}

/// Subgraph of `g` induced by `component`, without edges of the given
/// colors. Local vertex `t` is `component[t]`.
fn induced(g: &StarGraph, component: &[usize], removed_colors: &[usize]) -> SimpleGraph {
    let adjacency = component
        .iter()
        .map(|&v| {
            g.neighbors(v)
                .filter(|(_, c)| !removed_colors.contains(c))
                .filter_map(|(w, _)| component.binary_search(&w).ok())
                .collect()
        })
        .collect();
    SimpleGraph::from_adjacency(adjacency)
}

fn reference_graph(k: usize, ell: usize) -> Result<SimpleGraph> {
    let r = StarGraph::build(k, ell)?;
    Ok(SimpleGraph::from_edges(r.n(), r.edges().map(|e| (e.u, e.v))))
}

fn check_against(
    g: &StarGraph,
    component: &[usize],
    removed_colors: &[usize],
    reference: &SimpleGraph,
) -> Result<IsoResult> {
    let local = induced(g, component, removed_colors);
    Ok(match find_isomorphism(&local, reference) {
        IsoOutcome::Isomorphic(image) => {
            verify_witness(&local, reference, &image).map_err(Error::WitnessInvalid)?;
            IsoResult {
                isomorphic: true,
                witness: Some(IsoWitness {
                    component: component.to_vec(),
                    image,
                }),
                distinguished_by: None,
            }
        }
        IsoOutcome::Distinguished(why) if why.starts_with("internal") => {
            return Err(Error::WitnessInvalid(why));
        }
        IsoOutcome::Distinguished(why) => IsoResult {
            isomorphic: false,
            witness: None,
            distinguished_by: Some(why),
        },
    })
}

/// Tests whether the subgraph induced by `component` (minus edges of
/// `removed_colors`) is isomorphic to `ST^ref_ell_ref_k`, with a
/// re-verified witness on success.
pub fn check_component_isomorphism(
    component: &[usize],
    g: &StarGraph,
    removed_colors: &[usize],
    ref_k: usize,
    ref_ell: usize,
) -> Result<IsoResult> {
    let reference = reference_graph(ref_k, ref_ell)?;
    check_against(g, component, removed_colors, &reference)
}

/// Deletes `Sigma_i` and every color-`i` edge, then takes the census of the
/// remaining components against `ST^ell_{k-1}`.
pub fn decompose(g: &StarGraph, i: usize) -> Result<Decomposition> {
    let (k, ell) = (g.k(), g.ell());
    if k < 2 {
        return Err(Error::ParamOutOfRange {
            name: "k",
            value: k,
            reason: "decomposition needs k >= 2",
        });
    }
    let sigma = build_sigma(i, k, ell)?;
    let removed: Vec<bool> = (0..g.n()).map(|v| sigma.contains(v)).collect();
    let removed_edges = g.edges().filter(|e| e.color == i).count() as u64;
    let components = g.components(&removed, &[i]);

    let n = g.n() as u64;
    let remaining = n - sigma.len() as u64;
    let reference_size = count_vertices(k - 1, ell)?;
    let mut component_sizes: BTreeMap<u64, u64> = BTreeMap::new();
    for c in &components {
        *component_sizes.entry(c.len() as u64).or_default() += 1;
    }
    let size_homogeneous = component_sizes.keys().all(|&s| s == reference_size);
    let arithmetic_count = remaining.is_multiple_of(reference_size).then(|| remaining / reference_size);
    let component_count = components.len() as u64;
    let formula_count = (k as u64).saturating_mul((ell as u64).saturating_pow(k as u32 - 1));
    let expected_removed_edges = (ell >= 2).then_some(remaining / 2);

    let reference = reference_graph(k - 1, ell)?;
    let results: Vec<IsoResult> = components
        .par_iter()
        .map(|c| check_against(g, c, &[i], &reference))
        .collect::<Result<_>>()?;
    let iso_verdicts: Vec<bool> = results.iter().map(|r| r.isomorphic).collect();

    let census = ComponentCensus {
        k,
        ell,
        i,
        within_stated_range: k > 2,
        vertices: n,
        removed_vertices: sigma.len() as u64,
        removed_edges,
        expected_removed_edges,
        edge_accounting_ok: expected_removed_edges.is_none_or(|e| e == removed_edges),
        component_count,
        component_sizes,
        reference_size,
        size_homogeneous,
        formula_count,
        arithmetic_count,
        arithmetic_matches_census: arithmetic_count == Some(component_count),
        formula_mismatch: formula_count != component_count,
        all_isomorphic: iso_verdicts.iter().all(|&b| b),
        iso_verdicts,
    };
    Ok(Decomposition {
        census,
        components,
        witnesses: results.into_iter().map(|r| r.witness).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainLevel {
    pub k: usize,
    pub vertices: u64,
    /// Every `S_i` is an efficient dominating `ell`-set; `None` for `ST^1_2`.
    pub first_entry_codes_efficient: Option<bool>,
    /// Every `Sigma_i` is an efficient dominating `(ell-1)`-set; `None` for
    /// `ell = 1`.
    pub position_codes_efficient: Option<bool>,
    /// Decomposition at the last position; `None` at `k = 2`.
    pub census: Option<ComponentCensus>,
    /// The pieces at this level are copies of the next level's graph.
    pub nested: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub ell: usize,
    pub max_k: usize,
    pub levels: Vec<ChainLevel>,
    /// Levels skipped because they exceed the vertex budget.
    pub skipped: Vec<usize>,
    pub partial: bool,
    pub passed: bool,
}

/// Walks `k = max_k, ..., 2`, certifying the codes at each level and, for
/// `k >= 3`, that removing `Sigma_{k ell - 1}` and its color leaves copies of
/// the level below.
pub fn chain_report(max_k: usize, ell: usize) -> Result<ChainReport> {
    chain_report_with_budget(max_k, ell, DEFAULT_VERTEX_BUDGET)
}

pub fn chain_report_with_budget(max_k: usize, ell: usize, budget: u64) -> Result<ChainReport> {
    if max_k < 2 {
        return Err(Error::ParamOutOfRange {
            name: "max_k",
            value: max_k,
            reason: "chain needs k >= 2",
        });
    }
    let mut levels = Vec::new();
    let mut skipped = Vec::new();
    for k in (2..=max_k).rev() {
        let g = match StarGraph::build_with_budget(k, ell, budget) {
            Ok(g) => g,
            Err(Error::BudgetExceeded { .. }) | Err(Error::Overflow { .. }) => {
                skipped.push(k);
                continue;
            }
            Err(e) => return Err(e),
        };
        let first_entry_codes_efficient = if k * ell >= 3 {
            let mut ok = true;
            for i in 0..k {
                ok &= verify_efficient(&g, &build_s(i, k, ell)?, ell).is_efficient;
            }
            Some(ok)
        } else {
            None
        };
        let position_codes_efficient = if ell >= 2 {
            let mut ok = true;
            for i in 1..k * ell {
                ok &= codes::verify_efficient(&g, &build_sigma(i, k, ell)?, ell - 1).is_efficient;
            }
            Some(ok)
        } else {
            None
        };
        let (census, nested) = if k >= 3 {
            let d = decompose(&g, k * ell - 1)?;
            let nested = d.census.consistent();
            (Some(d.census), Some(nested))
        } else {
            (None, None)
        };
        levels.push(ChainLevel {
            k,
            vertices: g.n() as u64,
            first_entry_codes_efficient,
            position_codes_efficient,
            census,
            nested,
        });
    }
    let passed = levels.iter().all(|l| {
        l.first_entry_codes_efficient != Some(false)
            && l.position_codes_efficient != Some(false)
            && l.nested != Some(false)
    });
    Ok(ChainReport {
        ell,
        max_k,
        partial: !skipped.is_empty(),
        levels,
        skipped,
        passed,
    })
}
