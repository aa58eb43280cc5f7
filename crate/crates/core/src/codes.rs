//! Generalized perfect codes of `ST^ell_k`.
//!
//! A set `S` is an efficient dominating `t`-set when it is independent and
//! every vertex outside it has exactly `t` neighbors inside it. Two families
//! are built here:
//!
//! * `S_i`: words starting with symbol `i` (multiplicity `t = ell`);
//! * `Sigma_i`: words whose position `i` repeats the first symbol
//!   (multiplicity `t = ell - 1`).

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mperm::{self, count_vertices, format_word, MultisetPerm, PermIndex};
use crate::report::{Counterexamples, VerificationReport, DEFAULT_COUNTEREXAMPLE_CAP};
use crate::stargraph::{self, StarGraph};

/// Subset enumeration is used up to this many vertices.
pub const DEFAULT_SUBSET_SEARCH_LIMIT: usize = 24;
/// Backtracking search refuses graphs larger than this.
pub const BACKTRACK_SEARCH_LIMIT: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "rule", content = "i")]
pub enum CodeRule {
    /// Words whose first symbol is `i`.
    FirstEntry(usize),
    /// Words with `word[0] == word[i]`.
    PositionMatch(usize),
}

impl CodeRule {
    pub fn admits(&self, word: &[u8]) -> bool {
        match *self {
            CodeRule::FirstEntry(i) => word.first().map(|&s| s as usize) == Some(i),
            CodeRule::PositionMatch(i) => word.len() > i && word[0] == word[i],
        }
    }
}

impl fmt::Display for CodeRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeRule::FirstEntry(i) => write!(f, "S_{i}"),
            CodeRule::PositionMatch(i) => write!(f, "Sigma_{i}"),
        }
    }
}

/// A vertex subset of `ST^ell_k`, optionally tagged with the rule that
/// generated it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeSet {
    rule: Option<CodeRule>,
    k: usize,
    ell: usize,
    mask: Vec<bool>,
    members: Vec<usize>,
}

impl CodeSet {
    /// All words admitted by `rule`.
    pub fn from_rule(rule: CodeRule, k: usize, ell: usize) -> Result<Self> {
        let n = count_vertices(k, ell)? as usize;
        let mask: Vec<bool> = mperm::enumerate(k, ell)?
            .map(|p| rule.admits(p.word()))
            .collect();
        debug_assert_eq!(mask.len(), n);
        Ok(Self::from_mask(Some(rule), k, ell, mask))
    }

    /// An arbitrary vertex set, given by vertex ids.
    pub fn from_members(k: usize, ell: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let n = count_vertices(k, ell)?;
        let mut mask = vec![false; n as usize];
        for v in members {
            if v as u64 >= n {
                return Err(Error::IndexOutOfRange {
                    index: v as u64,
                    count: n,
                });
            }
            mask[v] = true;
        }
        Ok(Self::from_mask(None, k, ell, mask))
    }

    /// An arbitrary vertex set, given by words.
    pub fn from_words<'a>(k: usize, ell: usize, words: impl IntoIterator<Item = &'a MultisetPerm>) -> Result<Self> {
        Self::from_members(k, ell, words.into_iter().map(|p| p.rank().as_usize()))
    }

    fn from_mask(rule: Option<CodeRule>, k: usize, ell: usize, mask: Vec<bool>) -> Self {
        let members = mask
            .iter()
            .enumerate()
            .filter_map(|(v, &m)| m.then_some(v))
            .collect();
        Self {
            rule,
            k,
            ell,
            mask,
            members,
        }
    }

    pub fn rule(&self) -> Option<CodeRule> {
        self.rule
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Sorted vertex ids.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, v: usize) -> bool {
        self.mask.get(v).copied().unwrap_or(false)
    }

    pub fn contains_word(&self, p: &MultisetPerm) -> bool {
        match self.rule {
            Some(rule) => rule.admits(p.word()),
            None => self.contains(p.rank().as_usize()),
        }
    }

    pub fn words(&self) -> impl Iterator<Item = MultisetPerm> + '_ {
        self.members.iter().map(move |&v| {
            MultisetPerm::unrank(PermIndex(v as u64), self.k, self.ell).expect("member in range")
        })
    }

    pub fn label(&self) -> String {
        self.rule
            .map(|r| r.to_string())
            .unwrap_or_else(|| "custom".to_string())
    }

    /// One word per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in self.words() {
            out.push_str(&p.to_string());
            out.push('\n');
        }
        out
    }

    pub fn header(&self) -> CodeSetHeader {
        CodeSetHeader {
            rule: self.rule,
            k: self.k,
            ell: self.ell,
            cardinality: self.len(),
        }
    }
}

/// JSON header accompanying a word-per-line code set file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSetHeader {
    pub rule: Option<CodeRule>,
    pub k: usize,
    pub ell: usize,
    pub cardinality: usize,
}

/// `S_i`: the words of `ST^ell_k` beginning with symbol `i`.
pub fn build_s(i: usize, k: usize, ell: usize) -> Result<CodeSet> {
    mperm::check_params(k, ell)?;
    if i >= k {
        return Err(Error::ParamOutOfRange {
            name: "i",
            value: i,
            reason: "first-entry symbol must be below k",
        });
    }
    CodeSet::from_rule(CodeRule::FirstEntry(i), k, ell)
}

/// `Sigma_i`: the words of `ST^ell_k` with `word[0] == word[i]`. Empty
/// when `ell == 1`.
pub fn build_sigma(i: usize, k: usize, ell: usize) -> Result<CodeSet> {
    mperm::check_params(k, ell)?;
    if i == 0 || i >= k * ell {
        return Err(Error::ParamOutOfRange {
            name: "i",
            value: i,
            reason: "position must be in 1..k*ell",
        });
    }
    CodeSet::from_rule(CodeRule::PositionMatch(i), k, ell)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct DominationReport {
    pub code: String,
    pub k: usize,
    pub ell: usize,
    pub target: usize,
    pub members: usize,
    pub independent: bool,
    /// Number of code neighbors -> number of non-members with that many.
    pub histogram: BTreeMap<usize, u64>,
    pub is_efficient: bool,
    pub violations: u64,
    pub counterexamples: Vec<crate::report::Counterexample>,
}

pub fn verify_efficient(g: &StarGraph, s: &CodeSet, target: usize) -> DominationReport {
    verify_efficient_capped(g, s, target, DEFAULT_COUNTEREXAMPLE_CAP)
}

/// Full sweep: independence of `s` and `|N(v) ∩ s|` for every `v ∉ s`.
///
/// `is_efficient` holds when `s` is independent and every non-member sees
/// exactly `target` members (vacuously when `s` is everything).
pub fn verify_efficient_capped(
    g: &StarGraph,
    s: &CodeSet,
    target: usize,
    cap: usize,
) -> DominationReport {
    let (histogram, independent, found) = (0..g.n())
        .into_par_iter()
        .fold(
            || (BTreeMap::<usize, u64>::new(), true, Counterexamples::new(cap)),
            |(mut hist, mut independent, mut found), v| {
                let inside = g.neighbors(v).filter(|&(w, _)| s.contains(w)).count();
                if s.contains(v) {
                    if inside > 0 {
                        independent = false;
                        found.push(
                            v,
                            g.word(v).to_string(),
                            format!("code member adjacent to {inside} code members"),
                        );
                    }
                } else {
                    *hist.entry(inside).or_default() += 1;
                    if inside != target {
                        found.push(
                            v,
                            g.word(v).to_string(),
                            format!("{inside} code neighbors, expected {target}"),
                        );
                    }
                }
                (hist, independent, found)
            },
        )
        .reduce(
            || (BTreeMap::new(), true, Counterexamples::new(cap)),
            |(mut ha, ia, fa), (hb, ib, fb)| {
                for (key, c) in hb {
                    *ha.entry(key).or_default() += c;
                }
                (ha, ia && ib, fa.merge(fb))
            },
        );
    let found = found.finish();
    let is_efficient = independent && histogram.keys().all(|&key| key == target);
    DominationReport {
        code: s.label(),
        k: g.k(),
        ell: g.ell(),
        target,
        members: s.len(),
        independent,
        histogram,
        is_efficient,
        violations: found.total(),
        counterexamples: found.items().to_vec(),
    }
}

/// The dominating set of `v` with respect to `s`: `{v}` for a member,
/// otherwise its neighbors inside `s` in ascending color order.
pub fn decode(v: &MultisetPerm, s: &CodeSet) -> Vec<MultisetPerm> {
    debug_assert_eq!((v.k(), v.ell()), (s.k(), s.ell()));
    if s.contains_word(v) {
        return vec![v.clone()];
    }
    stargraph::neighbors(v)
        .into_iter()
        .filter(|(w, _)| s.contains_word(w))
        .map(|(w, _)| w)
        .collect()
}

/// Membership multiplicity of every vertex across `family`; passes when
/// each vertex lies in exactly one set.
pub fn verify_vertex_partition(family: &[CodeSet], n: usize) -> VerificationReport {
    let (k, ell) = family.first().map(|s| (s.k(), s.ell())).unwrap_or((0, 0));
    let mut report = VerificationReport::new("vertex-partition", k, ell);
    let mut found = Counterexamples::new(DEFAULT_COUNTEREXAMPLE_CAP);
    let mut hist: BTreeMap<u64, u64> = BTreeMap::new();
    for v in 0..n {
        let m = family.iter().filter(|s| s.contains(v)).count() as u64;
        *hist.entry(m).or_default() += 1;
        if m != 1 {
            let word = if k > 0 {
                MultisetPerm::unrank(PermIndex(v as u64), k, ell)
                    .map(|p| p.to_string())
                    .unwrap_or_default()
            } else {
                String::new()
            };
            found.push(v, word, format!("in {m} sets"));
        }
    }
    report.count("sets", family.len() as u64, None);
    report.count("vertices", n as u64, None);
    report.histogram("multiplicity", hist);
    report.absorb(found.finish());
    report
}

/// Checks that the domination stars `{v} ∪ decode(v, S_i)`, over all `i`
/// and all `v ∉ S_i`, cover every edge exactly twice, that each star is an
/// induced `K_{1,ell}`, and that each member of `S_i` is a leaf of exactly
/// `(k-1) ell` stars with respect to `S_i`.
pub fn verify_star_double_cover(g: &StarGraph, family: &[CodeSet]) -> VerificationReport {
    let (k, ell) = (g.k(), g.ell());
    let mut report = VerificationReport::new("star-double-cover", k, ell);
    let mut coverage = vec![0u32; g.n() * g.degree()];
    let mut membership = vec![vec![0u64; g.n()]; family.len()];
    let mut star_sizes: BTreeMap<u64, u64> = BTreeMap::new();
    let mut found = Counterexamples::new(DEFAULT_COUNTEREXAMPLE_CAP);
    for (f, s) in family.iter().enumerate() {
        for v in 0..g.n() {
            if s.contains(v) {
                continue;
            }
            let leaves: Vec<(usize, usize)> =
                g.neighbors(v).filter(|&(w, _)| s.contains(w)).collect();
            *star_sizes.entry(leaves.len() as u64).or_default() += 1;
            if leaves.len() != ell {
                found.push(
                    v,
                    g.word(v).to_string(),
                    format!("star wrt {} has {} leaves", s.label(), leaves.len()),
                );
            }
            for (a, &(x, _)) in leaves.iter().enumerate() {
                if leaves[a + 1..].iter().any(|&(y, _)| g.has_edge(x, y)) {
                    found.push(
                        v,
                        g.word(v).to_string(),
                        format!("star wrt {} is not induced", s.label()),
                    );
                }
            }
            for &(w, color) in &leaves {
                let slot = g.slot_of_color(v.min(w), color).expect("edge present");
                coverage[slot] += 1;
                membership[f][w] += 1;
            }
        }
    }
    let mut cover_hist: BTreeMap<u64, u64> = BTreeMap::new();
    for e in g.edges() {
        let slot = g.slot_of_color(e.u, e.color).expect("edge present");
        let c = coverage[slot] as u64;
        *cover_hist.entry(c).or_default() += 1;
        if c != 2 {
            found.push(
                e.u,
                g.word(e.u).to_string(),
                format!("edge {}-{} (color {}) covered {c} times", e.u, e.v, e.color),
            );
        }
    }
    let expected = mperm::degree(k, ell) as u64;
    let mut member_hist: BTreeMap<u64, u64> = BTreeMap::new();
    for (f, s) in family.iter().enumerate() {
        for &v in s.members() {
            let m = membership[f][v];
            *member_hist.entry(m).or_default() += 1;
            if m != expected {
                found.push(
                    v,
                    g.word(v).to_string(),
                    format!("leaf of {m} stars wrt {}, expected {expected}", s.label()),
                );
            }
        }
    }
    report.count("edges", g.edge_count() as u64, None);
    report.count("stars_per_member", expected, None);
    report.histogram("edge_coverage", cover_hist);
    report.histogram("star_membership", member_hist);
    report.histogram("star_size", star_sizes);
    report.absorb(found.finish());
    report
}

/// For `S_i`, checks that the occurrences of `i` at non-initial positions
/// of each non-member `v` correspond one-to-one with `decode(v, S_i)`
/// through the swap with position 0.
pub fn verify_occurrence_bijection(s: &CodeSet) -> Result<VerificationReport> {
    let (k, ell) = (s.k(), s.ell());
    let symbol = match s.rule() {
        Some(CodeRule::FirstEntry(i)) => i,
        _ => {
            return Err(Error::ParamOutOfRange {
                name: "rule",
                value: 0,
                reason: "occurrence bijection applies to first-entry codes",
            })
        }
    };
    let mut report = VerificationReport::new("occurrence-bijection", k, ell).param("i", symbol as u64);
    let mut found = Counterexamples::new(DEFAULT_COUNTEREXAMPLE_CAP);
    let mut checked = 0u64;
    for (v, p) in mperm::enumerate(k, ell)?.enumerate() {
        if s.contains(v) {
            continue;
        }
        checked += 1;
        let mut images: Vec<MultisetPerm> = (1..p.len())
            .filter(|&h| p.word()[h] as usize == symbol)
            .map(|h| p.swapped(h))
            .collect();
        let occurrences = images.len();
        images.sort();
        images.dedup();
        let mut decoded = decode(&p, s);
        decoded.sort();
        if images.len() != occurrences {
            found.push(v, p.to_string(), "occurrence map is not injective".into());
        } else if images != decoded {
            found.push(v, p.to_string(), "occurrence images differ from the decoded set".into());
        }
    }
    report.count("non_members_checked", checked, None);
    report.absorb(found.finish());
    Ok(report)
}

/// Every vertex set of `g` that is independent and dominates each outside
/// vertex exactly `target` times, each listed as sorted vertex ids, in
/// lexicographic order.
///
/// Uses subset enumeration up to `max_n` vertices and backtracking beyond.
pub fn exhaustive_code_search(g: &StarGraph, target: usize, max_n: usize) -> Result<Vec<Vec<usize>>> {
    if g.n() <= max_n.min(30) {
        subset_code_search(g, target)
    } else {
        backtrack_code_search(g, target)
    }
}

/// Brute force over all `2^n` subsets (requires `n <= 30`).
pub fn subset_code_search(g: &StarGraph, target: usize) -> Result<Vec<Vec<usize>>> {
    let n = g.n();
    if n > 30 {
        return Err(Error::InstanceTooLarge { n, limit: 30 });
    }
    let adjacency: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).fold(0u32, |acc, (w, _)| acc | (1 << w)))
        .collect();
    let mut out = Vec::new();
    for set in 0u32..(1u32 << n) {
        let ok = (0..n).all(|v| {
            let inside = (adjacency[v] & set).count_ones() as usize;
            if set >> v & 1 == 1 {
                inside == 0
            } else {
                inside == target
            }
        });
        if ok {
            out.push((0..n).filter(|&v| set >> v & 1 == 1).collect::<Vec<_>>());
        }
    }
    out.sort();
    Ok(out)
}

/// Backtracking over vertices in id order, pruning on independence and on
/// whether each excluded vertex can still reach exactly `target` code
/// neighbors.
pub fn backtrack_code_search(g: &StarGraph, target: usize) -> Result<Vec<Vec<usize>>> {
    let n = g.n();
    if n > BACKTRACK_SEARCH_LIMIT {
        return Err(Error::InstanceTooLarge {
            n,
            limit: BACKTRACK_SEARCH_LIMIT,
        });
    }
    let adjacency: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).map(|(w, _)| w).collect()).collect();
    let mut search = Backtrack {
        adjacency: &adjacency,
        target,
        state: vec![Decision::Open; n],
        inside: vec![0; n],
        open: adjacency.iter().map(Vec::len).collect(),
        out: Vec::new(),
    };
    search.run(0);
    let mut out = search.out;
    out.sort();
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Decision {
    Open,
    In,
    Out,
}

struct Backtrack<'a> {
    adjacency: &'a [Vec<usize>],
    target: usize,
    state: Vec<Decision>,
    /// Neighbors already in the set.
    inside: Vec<usize>,
    /// Neighbors not yet decided.
    open: Vec<usize>,
    out: Vec<Vec<usize>>,
}

impl Backtrack<'_> {
    fn feasible_out(&self, v: usize) -> bool {
        self.inside[v] <= self.target && self.inside[v] + self.open[v] >= self.target
    }

    fn run(&mut self, v: usize) {
        if v == self.state.len() {
            let members = (0..v).filter(|&u| self.state[u] == Decision::In).collect();
            self.out.push(members);
            return;
        }
        let adjacency = self.adjacency;
        // Include v: no neighbor may be in the set, and excluded neighbors
        // must not exceed the target.
        if self.inside[v] == 0
            && adjacency[v]
                .iter()
                .all(|&w| self.state[w] != Decision::Out || self.inside[w] < self.target)
        {
            self.state[v] = Decision::In;
            for &w in &adjacency[v] {
                self.inside[w] += 1;
                self.open[w] -= 1;
            }
            self.run(v + 1);
            for &w in &adjacency[v] {
                self.inside[w] -= 1;
                self.open[w] += 1;
            }
        }
        // Exclude v.
        self.state[v] = Decision::Out;
        for &w in &adjacency[v] {
            self.open[w] -= 1;
        }
        let ok = self.feasible_out(v)
            && adjacency[v]
                .iter()
                .all(|&w| self.state[w] != Decision::Out || self.feasible_out(w));
        if ok {
            self.run(v + 1);
        }
        for &w in &adjacency[v] {
            self.open[w] += 1;
        }
        self.state[v] = Decision::Open;
    }
}

/// Outcome of comparing a claimed dominating set against [`decode`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominatingSetAudit {
    pub vertex: String,
    pub claimed: Vec<String>,
    pub computed: Vec<String>,
    /// The claimed list, as a set, equals the computed one.
    pub reproduced: bool,
    /// Claimed entries that are not valid words, with the reason.
    pub invalid: Vec<(String, String)>,
    /// Claimed entries listed more than once.
    pub repeated: Vec<String>,
    /// Valid claimed entries missing from the computed set.
    pub unexpected: Vec<String>,
    /// Computed entries the claim leaves out.
    pub missing: Vec<String>,
}

/// Checks a printed dominating set `claimed` of `vertex` with respect to
/// `s` against the swap rule.
pub fn audit_dominating_set(vertex: &str, claimed: &[&str], s: &CodeSet) -> Result<DominatingSetAudit> {
    let v = MultisetPerm::parse(vertex, s.k(), s.ell())?;
    let computed: Vec<String> = decode(&v, s).iter().map(|p| p.to_string()).collect();
    let mut invalid = Vec::new();
    let mut repeated = Vec::new();
    let mut unexpected = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for &c in claimed {
        if !seen.insert(c) {
            repeated.push(c.to_string());
            continue;
        }
        match MultisetPerm::parse(c, s.k(), s.ell()) {
            Err(e) => invalid.push((c.to_string(), e.to_string())),
            Ok(_) if !computed.iter().any(|w| w == c) => unexpected.push(c.to_string()),
            Ok(_) => {}
        }
    }
    let missing: Vec<String> = computed
        .iter()
        .filter(|w| !seen.contains(w.as_str()))
        .cloned()
        .collect();
    let reproduced = invalid.is_empty() && repeated.is_empty() && unexpected.is_empty() && missing.is_empty();
    Ok(DominatingSetAudit {
        vertex: vertex.to_string(),
        claimed: claimed.iter().map(|c| c.to_string()).collect(),
        computed,
        reproduced,
        invalid,
        repeated,
        unexpected,
        missing,
    })
}

/// Renders a set of vertex ids of `ST^ell_k` as words.
pub fn words_of(members: &[usize], k: usize, ell: usize) -> Vec<String> {
    let mut word = vec![0u8; k * ell];
    let n = count_vertices(k, ell).unwrap_or(0);
    members
        .iter()
        .map(|&v| {
            mperm::unrank_into(v as u64, n, k, ell, &mut word);
            format_word(&word, k)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str, k: usize, ell: usize) -> MultisetPerm {
        MultisetPerm::parse(s, k, ell).unwrap()
    }

    fn strings(ws: &[MultisetPerm]) -> Vec<String> {
        ws.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn code_sizes() {
        assert_eq!(build_s(0, 3, 2).unwrap().len(), 30);
        assert_eq!(build_s(0, 3, 3).unwrap().len(), 560);
        let s0 = build_s(0, 2, 2).unwrap();
        assert_eq!(strings(&s0.words().collect::<Vec<_>>()), ["0011", "0101", "0110"]);
        let sigma = build_sigma(5, 2, 3).unwrap();
        assert_eq!(sigma.len(), 8);
        assert_eq!(build_sigma(8, 3, 3).unwrap().len(), 420);
        let sigma1 = build_sigma(1, 2, 2).unwrap();
        assert_eq!(strings(&sigma1.words().collect::<Vec<_>>()), ["0011", "1100"]);
        assert!(build_sigma(1, 3, 1).unwrap().is_empty());
    }

    #[test]
    fn code_parameter_errors() {
        assert!(matches!(build_s(3, 3, 2), Err(Error::ParamOutOfRange { name: "i", .. })));
        assert!(matches!(build_sigma(0, 3, 2), Err(Error::ParamOutOfRange { name: "i", .. })));
        assert!(matches!(build_sigma(6, 3, 2), Err(Error::ParamOutOfRange { name: "i", .. })));
    }

    #[test]
    fn efficiency_reports() {
        let g = StarGraph::build(3, 2).unwrap();
        let r = verify_efficient(&g, &build_s(0, 3, 2).unwrap(), 2);
        assert!(r.is_efficient);
        assert_eq!(r.histogram, BTreeMap::from([(2, 60)]));

        let g = StarGraph::build(2, 3).unwrap();
        assert!(verify_efficient(&g, &build_sigma(5, 2, 3).unwrap(), 2).is_efficient);

        let g = StarGraph::build(2, 2).unwrap();
        let single = CodeSet::from_words(2, 2, [&word("0011", 2, 2)]).unwrap();
        let r = verify_efficient(&g, &single, 2);
        assert!(!r.is_efficient);
        assert!(r.independent);
        assert_eq!(r.histogram, BTreeMap::from([(0, 3), (1, 2)]));
        assert_eq!(r.violations, 5);
    }

    #[test]
    fn dependent_set_is_caught() {
        let g = StarGraph::build(2, 2).unwrap();
        // 0011 (rank 0) and 1001 (rank 3) are adjacent.
        let s = CodeSet::from_members(2, 2, [0, 3]).unwrap();
        let r = verify_efficient(&g, &s, 1);
        assert!(!r.independent);
        assert!(!r.is_efficient);
    }

    #[test]
    fn decode_fixtures() {
        let s = build_s(0, 3, 2).unwrap();
        assert_eq!(strings(&decode(&word("100122", 3, 2), &s)), ["010122", "001122"]);
        assert_eq!(strings(&decode(&word("120120", 3, 2), &s)), ["021120", "020121"]);
        let s = build_s(0, 3, 3).unwrap();
        assert_eq!(
            strings(&decode(&word("100011222", 3, 3), &s)),
            ["010011222", "001011222", "000111222"]
        );
        let s = build_s(0, 2, 2).unwrap();
        assert_eq!(strings(&decode(&word("0011", 2, 2), &s)), ["0011"]);
    }

    #[test]
    fn partition_checks() {
        let s: Vec<CodeSet> = (0..3).map(|i| build_s(i, 3, 2).unwrap()).collect();
        assert!(verify_vertex_partition(&s, 90).passed);
        let sigma: Vec<CodeSet> = (1..6).map(|i| build_sigma(i, 3, 2).unwrap()).collect();
        assert!(verify_vertex_partition(&sigma, 90).passed);
        let sigma: Vec<CodeSet> = (1..6).map(|i| build_sigma(i, 2, 3).unwrap()).collect();
        let r = verify_vertex_partition(&sigma, 20);
        assert!(!r.passed);
        assert_eq!(r.histograms["multiplicity"], BTreeMap::from([(2, 20)]));
    }

    #[test]
    fn star_double_cover_small() {
        let g = StarGraph::build(2, 2).unwrap();
        let family: Vec<CodeSet> = (0..2).map(|i| build_s(i, 2, 2).unwrap()).collect();
        let r = verify_star_double_cover(&g, &family);
        assert!(r.passed, "{r:?}");
        assert_eq!(r.histograms["edge_coverage"], BTreeMap::from([(2, 6)]));
    }

    #[test]
    fn occurrence_bijection_small() {
        let r = verify_occurrence_bijection(&build_s(0, 3, 2).unwrap()).unwrap();
        assert!(r.passed);
        assert_eq!(r.counts[0].computed, 60);
        assert!(verify_occurrence_bijection(&build_sigma(1, 3, 2).unwrap()).is_err());
    }

    #[test]
    fn searches_agree_on_small_graphs() {
        for (k, ell) in [(2, 2), (3, 1), (2, 3)] {
            let g = StarGraph::build(k, ell).unwrap();
            for target in 0..=3 {
                assert_eq!(
                    subset_code_search(&g, target).unwrap(),
                    backtrack_code_search(&g, target).unwrap(),
                    "k={k} ell={ell} target={target}"
                );
            }
        }
    }

    #[test]
    fn search_on_the_six_cycle() {
        let g = StarGraph::build(2, 2).unwrap();
        let two = exhaustive_code_search(&g, 2, DEFAULT_SUBSET_SEARCH_LIMIT).unwrap();
        assert_eq!(two, [build_s(0, 2, 2).unwrap().members(), build_s(1, 2, 2).unwrap().members()]);
        let one = exhaustive_code_search(&g, 1, DEFAULT_SUBSET_SEARCH_LIMIT).unwrap();
        let mut sigmas: Vec<Vec<usize>> =
            (1..4).map(|i| build_sigma(i, 2, 2).unwrap().members().to_vec()).collect();
        sigmas.sort();
        assert_eq!(one, sigmas);
    }

    #[test]
    fn code_set_text() {
        let s = build_sigma(1, 2, 2).unwrap();
        assert_eq!(s.to_text(), "0011\n1100\n");
        let header = serde_json::to_string(&s.header()).unwrap();
        assert_eq!(
            header,
            r#"{"rule":{"rule":"PositionMatch","i":1},"k":2,"ell":2,"cardinality":2}"#
        );
    }

    #[test]
    fn audit_separates_repeats_invalid_and_missing() {
        let s = build_s(0, 2, 2).unwrap();
        let a = audit_dominating_set("1001", &["0101", "0101", "0111"], &s).unwrap();
        assert!(!a.reproduced);
        assert_eq!(a.repeated, ["0101"]);
        assert_eq!(a.invalid.len(), 1);
        assert_eq!(a.missing, ["0011"]);
        let ok = audit_dominating_set("1001", &["0011", "0101"], &s).unwrap();
        assert!(ok.reproduced, "{ok:?}");
    }
}
