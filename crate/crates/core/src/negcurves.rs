//! (-1)-curves on `Bl_n P^2`, their meet graph and blow-down configurations.
//!
//! For `n <= 8` points in general position every numerical (-1)-class,
//! i.e. every integer class with `C^2 = -1` and `C.K = -1`, is the class of
//! an irreducible smooth rational curve. This is the classical description
//! of del Pezzo surfaces and is taken as an assumption here; effectivity is
//! never checked.
//!
//! A blow-down configuration is a set of `n` pairwise disjoint (-1)-curves.
//! Contracting it realises the surface as `Bl_n P^2` again, and the images
//! of lines give one family of quasi-lines. For `n = 5` the configurations
//! are therefore in bijection with the quasi-line families on the surface.
//! For other `n` the count is still returned, but that geometric reading is
//! not claimed.

use std::cmp::Reverse;
use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, SurfaceModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `E_i`.
    Exceptional,
    /// `H - E_i - E_j`, strict transform of the line through two points.
    Line,
    /// `2H - E_{i1} - ... - E_{i5}`, strict transform of a conic.
    Conic,
    /// Anything else (cubics, quartics, ... for `n >= 7`).
    Higher,
}

impl Family {
    pub fn of(cls: &DivisorClass) -> Family {
        let count = |v: i64| cls.e.iter().filter(|&&x| x == v).count();
        let zeros = count(0);
        match cls.h {
            0 if count(1) == 1 && zeros + 1 == cls.len() => Family::Exceptional,
            1 if count(-1) == 2 && zeros + 2 == cls.len() => Family::Line,
            2 if count(-1) == 5 && zeros + 5 == cls.len() => Family::Conic,
            _ => Family::Higher,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Exceptional => "exceptional",
            Family::Line => "line",
            Family::Conic => "conic",
            Family::Higher => "higher",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct NegCurve {
    #[serde(rename = "class")]
    pub cls: DivisorClass,
    pub family: Family,
}

impl NegCurve {
    /// Validates the numerical (-1) conditions and tags the family.
    pub fn new(s: &SurfaceModel, cls: DivisorClass) -> Result<NegCurve> {
        let sq = s.self_intersection(&cls)?;
        let k = s.intersect(&cls, &s.canonical_class())?;
        if sq != -1 || k != -1 {
            return Err(Error::InvalidCurve {
                class: cls.to_string(),
                reason: format!("C^2 = {sq}, C.K = {k}; both must be -1"),
            });
        }
        let family = Family::of(&cls);
        Ok(NegCurve { cls, family })
    }

    pub fn label(&self) -> String {
        self.cls.to_string()
    }

    fn sort_key(&self) -> (Family, i64, Reverse<Vec<u64>>) {
        let mult = self.cls.e.iter().map(|x| x.unsigned_abs()).collect();
        (self.family, self.cls.h, Reverse(mult))
    }
}

/// Canonical order: family, then `h`, then the multiplicity vector
/// `(|e_1|, ..., |e_n|)` in decreasing lexicographic order, so that `E1`
/// precedes `E2` and `H-E1-E2` precedes `H-E1-E3`.
pub fn sort_canonical(curves: &mut [NegCurve]) {
    curves.sort_by_cached_key(NegCurve::sort_key);
}

/// Every (-1)-class on `Bl_n P^2`, canonically sorted.
///
/// Writing `C = hH - sum m_i E_i`, the two conditions read
/// `sum m_i^2 = h^2 + 1` and `sum m_i = 3h - 1`. Cauchy-Schwarz gives
/// `(3h - 1)^2 <= n (h^2 + 1)`, i.e. `(9 - n) h^2 - 6h + (1 - n) <= 0`,
/// which for `n <= 8` confines `h` to `-1..=7`, and then
/// `|m_i| <= sqrt(h^2 + 1) <= 7`. Inside that box the search is exhaustive:
/// coordinates are chosen one at a time with the remaining square budget
/// and the remaining sum both pruned by the same inequality.
pub fn enumerate_minus_one(s: &SurfaceModel) -> Vec<NegCurve> {
    let n = s.n();
    let mut out = Vec::new();
    for h in H_RANGE {
        let (sq, sum) = (h * h + 1, 3 * h - 1);
        if sum * sum > n as i64 * sq {
            continue;
        }
        let mut mult = Vec::with_capacity(n);
        search_multiplicities(n, sq, sum, &mut mult, &mut |m| {
            let cls = DivisorClass::new(h, m.iter().map(|x| -x).collect());
            out.push(NegCurve::new(s, cls).expect("search only yields (-1)-classes"));
        });
    }
    sort_canonical(&mut out);
    out
}

const H_RANGE: std::ops::RangeInclusive<i64> = -1..=7;

fn search_multiplicities(
    n: usize,
    sq_left: i64,
    sum_left: i64,
    mult: &mut Vec<i64>,
    emit: &mut dyn FnMut(&[i64]),
) {
    let slots = (n - mult.len()) as i64;
    if slots == 0 {
        if sq_left == 0 && sum_left == 0 {
            emit(mult);
        }
        return;
    }
    if sum_left * sum_left > slots * sq_left {
        return;
    }
    let bound = isqrt(sq_left);
    for m in -bound..=bound {
        mult.push(m);
        search_multiplicities(n, sq_left - m * m, sum_left - m, mult, emit);
        mult.pop();
    }
}

fn isqrt(v: i64) -> i64 {
    let mut r = (v as f64).sqrt() as i64;
    while r * r > v {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    r
}

/// Meet graph of a list of (-1)-curves: vertices are the curves, edges join
/// curves with positive intersection number.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveGraph {
    pub curves: Vec<NegCurve>,
    pub meet_adjacency: Vec<Vec<bool>>,
    /// Full intersection matrix; the diagonal holds `-1`.
    pub intersections: Vec<Vec<i64>>,
}

/// Builds the meet graph.
///
/// Distinct (-1)-curves on a del Pezzo surface never have negative
/// intersection; a negative entry (for instance a repeated class) is an
/// [`Error::InvalidCurve`].
pub fn meet_graph(s: &SurfaceModel, curves: &[NegCurve]) -> Result<CurveGraph> {
    for c in curves {
        let checked = NegCurve::new(s, c.cls.clone())?;
        if checked.family != c.family {
            return Err(Error::InvalidCurve {
                class: c.label(),
                reason: format!("tagged {:?}, shape says {:?}", c.family, checked.family),
            });
        }
    }
    let len = curves.len();
    let mut intersections = vec![vec![0i64; len]; len];
    let mut adj = vec![vec![false; len]; len];
    for i in 0..len {
        intersections[i][i] = -1;
        for j in i + 1..len {
            let v = s.intersect(&curves[i].cls, &curves[j].cls)?;
            if v < 0 {
                return Err(Error::InvalidCurve {
                    class: curves[j].label(),
                    reason: format!(
                        "intersection {v} with {} is negative (repeated class?)",
                        curves[i].label()
                    ),
                });
            }
            intersections[i][j] = v;
            intersections[j][i] = v;
            adj[i][j] = v >= 1;
            adj[j][i] = v >= 1;
        }
    }
    Ok(CurveGraph {
        curves: curves.to_vec(),
        meet_adjacency: adj,
        intersections,
    })
}

impl CurveGraph {
    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.meet_adjacency[i][j]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.meet_adjacency[i].iter().filter(|&&b| b).count()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.len()).map(|i| self.degree(i)).sum::<usize>() / 2
    }

    /// `Some(d)` if every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let first = self.degree(0);
        (1..self.len()).all(|i| self.degree(i) == first).then_some(first)
    }

    /// Length of a shortest cycle, `None` for a forest.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for root in 0..self.len() {
            let mut dist = vec![usize::MAX; self.len()];
            let mut parent = vec![usize::MAX; self.len()];
            let mut queue = VecDeque::from([root]);
            dist[root] = 0;
            while let Some(u) = queue.pop_front() {
                for v in 0..self.len() {
                    if !self.meet_adjacency[u][v] {
                        continue;
                    }
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v {
                        let cycle = dist[u] + dist[v] + 1;
                        best = Some(best.map_or(cycle, |b| b.min(cycle)));
                    }
                }
            }
        }
        best
    }

    /// The subgraph induced on the curves of one family.
    pub fn restrict_to(&self, family: Family) -> CurveGraph {
        let keep: Vec<usize> = (0..self.len())
            .filter(|&i| self.curves[i].family == family)
            .collect();
        self.induced(&keep)
    }

    pub fn induced(&self, keep: &[usize]) -> CurveGraph {
        CurveGraph {
            curves: keep.iter().map(|&i| self.curves[i].clone()).collect(),
            meet_adjacency: keep
                .iter()
                .map(|&i| keep.iter().map(|&j| self.meet_adjacency[i][j]).collect())
                .collect(),
            intersections: keep
                .iter()
                .map(|&i| keep.iter().map(|&j| self.intersections[i][j]).collect())
                .collect(),
        }
    }

    /// All independent sets of size `k`, as sorted vertex-index lists in
    /// lexicographic order.
    ///
    /// Plain backtracking. Vertices are visited in a fixed order (degree
    /// descending, ties by index) and each set is produced once, as the
    /// increasing sequence of its positions in that order.
    pub fn independent_sets(&self, k: usize) -> Vec<Vec<usize>> {
        let len = self.len();
        if k == 0 {
            return vec![Vec::new()];
        }
        if k > len {
            return Vec::new();
        }
        let mut order: Vec<usize> = (0..len).collect();
        order.sort_by_key(|&v| (Reverse(self.degree(v)), v));
        let pos_of: Vec<usize> = {
            let mut p = vec![0; len];
            for (pos, &v) in order.iter().enumerate() {
                p[v] = pos;
            }
            p
        };
        // non-neighbours, indexed by position in `order`
        let free: Vec<BitSet> = order
            .iter()
            .map(|&v| {
                let mut b = BitSet::new(len);
                for (u, &pos) in pos_of.iter().enumerate() {
                    if u != v && !self.meet_adjacency[v][u] {
                        b.insert(pos);
                    }
                }
                b
            })
            .collect();

        let mut out = Vec::new();
        let mut chosen = Vec::with_capacity(k);
        let all = BitSet::full(len);
        extend_independent(&free, &all, 0, k, &mut chosen, &mut out);

        let mut sets: Vec<Vec<usize>> = out
            .into_iter()
            .map(|positions| {
                let mut s: Vec<usize> = positions.into_iter().map(|p| order[p]).collect();
                s.sort_unstable();
                s
            })
            .collect();
        sets.sort();
        sets
    }

    /// DOT rendering; vertex labels are the class strings and edges carry
    /// the intersection number when it exceeds one.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        writeln!(out, "graph {name} {{").unwrap();
        for (i, c) in self.curves.iter().enumerate() {
            writeln!(out, "  {i} [label=\"{}\", family=\"{}\"];", c.label(), c.family.name()).unwrap();
        }
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.meet_adjacency[i][j] {
                    match self.intersections[i][j] {
                        1 => writeln!(out, "  {i} -- {j};").unwrap(),
                        m => writeln!(out, "  {i} -- {j} [label=\"{m}\"];").unwrap(),
                    }
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

fn extend_independent(
    free: &[BitSet],
    candidates: &BitSet,
    from: usize,
    k: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if chosen.len() == k {
        out.push(chosen.clone());
        return;
    }
    if candidates.count_from(from) < k - chosen.len() {
        return;
    }
    let mut p = from;
    while let Some(v) = candidates.next_from(p) {
        chosen.push(v);
        let next = candidates.intersection(&free[v]);
        extend_independent(free, &next, v + 1, k, chosen, out);
        chosen.pop();
        p = v + 1;
    }
}

#[derive(Debug, Clone)]
struct BitSet {
    words: Vec<u64>,
    len: usize,
}

impl BitSet {
    fn new(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    fn full(len: usize) -> Self {
        let mut b = BitSet::new(len);
        for i in 0..len {
            b.insert(i);
        }
        b
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn intersection(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
            len: self.len,
        }
    }

    fn next_from(&self, from: usize) -> Option<usize> {
        if from >= self.len {
            return None;
        }
        let mut w = from / 64;
        let mut word = self.words[w] & (u64::MAX << (from % 64));
        loop {
            if word != 0 {
                return Some(w * 64 + word.trailing_zeros() as usize);
            }
            w += 1;
            if w >= self.words.len() {
                return None;
            }
            word = self.words[w];
        }
    }

    fn count_from(&self, from: usize) -> usize {
        if from >= self.len {
            return 0;
        }
        let w = from / 64;
        let head = (self.words[w] & (u64::MAX << (from % 64))).count_ones() as usize;
        head + self.words[w + 1..].iter().map(|x| x.count_ones() as usize).sum::<usize>()
    }
}

/// All `k`-subsets of the (-1)-curves of `s` that are pairwise disjoint,
/// each listed in canonical curve order; the list itself is sorted.
pub fn disjoint_configurations(s: &SurfaceModel, k: usize) -> Result<Vec<Vec<NegCurve>>> {
    if k < 1 || k > s.n() {
        return Err(Error::domain(format!(
            "configuration size must be in 1..={}, got {k}",
            s.n()
        )));
    }
    let graph = meet_graph(s, &enumerate_minus_one(s))?;
    Ok(configurations_in(&graph, k))
}

/// Independent `k`-sets of an already built meet graph, as curve lists.
pub fn configurations_in(graph: &CurveGraph, k: usize) -> Vec<Vec<NegCurve>> {
    graph
        .independent_sets(k)
        .into_iter()
        .map(|set| set.into_iter().map(|i| graph.curves[i].clone()).collect())
        .collect()
}

/// Number of blow-down configurations, `|disjoint_configurations(s, n)|`.
///
/// `n = 0` counts the empty configuration once (`P^2` with its lines).
pub fn quasiline_family_count(s: &SurfaceModel) -> Result<usize> {
    if s.n() == 0 {
        return Ok(1);
    }
    Ok(disjoint_configurations(s, s.n())?.len())
}

/// Coarse classification of configurations: those containing a curve of
/// family `Higher`, then those containing a conic, then by the number of
/// exceptional curves.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Breakdown {
    pub higher: usize,
    pub conic: usize,
    pub by_exceptional: BTreeMap<usize, usize>,
}

impl Breakdown {
    pub fn of(configs: &[Vec<NegCurve>]) -> Breakdown {
        let mut b = Breakdown::default();
        for c in configs {
            let has = |f: Family| c.iter().any(|x| x.family == f);
            if has(Family::Higher) {
                b.higher += 1;
            } else if has(Family::Conic) {
                b.conic += 1;
            } else {
                let e = c.iter().filter(|x| x.family == Family::Exceptional).count();
                *b.by_exceptional.entry(e).or_default() += 1;
            }
        }
        b
    }

    /// Named buckets: `higher`, `conic`, `<count>_exceptional` and
    /// `all_exceptional` for configurations made of exceptional curves only.
    /// Empty buckets are omitted.
    pub fn named(&self, config_size: usize) -> BTreeMap<String, usize> {
        const WORDS: [&str; 9] = [
            "zero", "one", "two", "three", "four", "five", "six", "seven", "eight",
        ];
        let mut m = BTreeMap::new();
        if self.higher > 0 {
            m.insert("higher".to_string(), self.higher);
        }
        if self.conic > 0 {
            m.insert("conic".to_string(), self.conic);
        }
        for (&e, &count) in &self.by_exceptional {
            let key = if e == config_size {
                "all_exceptional".to_string()
            } else {
                format!("{}_exceptional", WORDS.get(e).copied().unwrap_or("many"))
            };
            m.insert(key, count);
        }
        m
    }
}
