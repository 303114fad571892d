//! Finite incidence models and the stable-closure fixpoint.
//!
//! An [`IncidenceModel`] is a finite point set with a family of "lines"
//! (subsets of at least two points), standing in for a variety with a
//! family of quasi-lines. Fix a basepoint `x`. A set `V` is *stable* at `x`
//! when every line through `x` that meets `V` in a point other than `x` is
//! contained in `V`. Excluding `x` matters: once `x` is in `V`, every line
//! through `x` meets `V` there, and the condition would force `V` to swallow
//! all lines through `x`.
//!
//! [`IncidenceModel::stable_closure`] computes the least stable set
//! containing a seed `y` by absorbing, at every step, all lines through `x`
//! that meet the current set away from `x`. The result does not depend on
//! the order in which lines are stored.
//!
//! Finite models have no notion of a general point. Statements about
//! general pairs become statements about all pairs joined by a line, which
//! adversarial models are free to violate.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PointId(pub usize);

pub type PointSet = BTreeSet<PointId>;

/// Directory holding the bundled fixture models (`fano.json`, ...) and
/// their `*.expected.json` sidecars.
pub fn bundled_fixtures_dir() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

/// On-disk form: `{"points": ["P0", ...], "lines": [["P0", "P1", "P3"], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub points: Vec<String>,
    pub lines: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceModel {
    points: Vec<String>,
    index: HashMap<String, PointId>,
    /// Each line sorted by point id.
    lines: Vec<Vec<PointId>>,
    /// Line indices through each point.
    incident: Vec<Vec<usize>>,
}

impl IncidenceModel {
    /// Validates eagerly: duplicate or empty point ids, lines with fewer than
    /// two points, repeated points inside a line, dangling ids and duplicate
    /// lines are all rejected with the offending line index.
    pub fn new(points: Vec<String>, lines: Vec<Vec<String>>) -> Result<Self> {
        let mut index = HashMap::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if p.is_empty() {
                return Err(Error::InvalidModel(format!("point #{i} has an empty id")));
            }
            if index.insert(p.clone(), PointId(i)).is_some() {
                return Err(Error::InvalidModel(format!("duplicate point id `{p}`")));
            }
        }
        let mut resolved: Vec<Vec<PointId>> = Vec::with_capacity(lines.len());
        let mut seen: HashMap<Vec<PointId>, usize> = HashMap::new();
        for (li, line) in lines.iter().enumerate() {
            if line.len() < 2 {
                return Err(Error::InvalidModel(format!(
                    "line #{li} has {} point(s); lines need at least two",
                    line.len()
                )));
            }
            let mut ids = Vec::with_capacity(line.len());
            for name in line {
                let id = *index.get(name).ok_or_else(|| {
                    Error::InvalidModel(format!("line #{li} refers to unknown point `{name}`"))
                })?;
                ids.push(id);
            }
            ids.sort_unstable();
            if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidModel(format!(
                    "line #{li} lists point `{}` twice",
                    points[w[0].0]
                )));
            }
            if let Some(first) = seen.insert(ids.clone(), li) {
                return Err(Error::InvalidModel(format!(
                    "line #{li} duplicates line #{first}"
                )));
            }
            resolved.push(ids);
        }
        let mut incident = vec![Vec::new(); points.len()];
        for (li, line) in resolved.iter().enumerate() {
            for p in line {
                incident[p.0].push(li);
            }
        }
        Ok(IncidenceModel {
            points,
            index,
            lines: resolved,
            incident,
        })
    }

    pub fn from_file_data(data: ModelFile) -> Result<Self> {
        IncidenceModel::new(data.points, data.lines)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let data: ModelFile =
            serde_json::from_str(text).map_err(|e| Error::InvalidModel(e.to_string()))?;
        IncidenceModel::from_file_data(data)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        IncidenceModel::from_json(&text).map_err(|e| match e {
            Error::InvalidModel(m) => Error::InvalidModel(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn to_file_data(&self) -> ModelFile {
        ModelFile {
            points: self.points.clone(),
            lines: self.lines.iter().map(|l| self.names(l)).collect(),
        }
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn line_count(&self) -> usize {
        self.lines.len()
    }

    pub fn point_ids(&self) -> impl Iterator<Item = PointId> {
        (0..self.points.len()).map(PointId)
    }

    pub fn name(&self, p: PointId) -> &str {
        &self.points[p.0]
    }

    /// Names in model order.
    pub fn names<'a>(&self, set: impl IntoIterator<Item = &'a PointId>) -> Vec<String> {
        let mut ids: Vec<PointId> = set.into_iter().copied().collect();
        ids.sort_unstable();
        ids.into_iter().map(|p| self.points[p.0].clone()).collect()
    }

    pub fn id(&self, name: &str) -> Result<PointId> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownPoint(name.to_string()))
    }

    pub fn line(&self, li: usize) -> &[PointId] {
        &self.lines[li]
    }

    pub fn lines(&self) -> &[Vec<PointId>] {
        &self.lines
    }

    /// Indices of the lines through `x`.
    pub fn lines_through(&self, x: PointId) -> &[usize] {
        &self.incident[x.0]
    }

    /// Lines through the named point, as name lists.
    pub fn lines_through_named(&self, x: &str) -> Result<Vec<Vec<String>>> {
        let x = self.id(x)?;
        Ok(self
            .lines_through(x)
            .iter()
            .map(|&li| self.names(&self.lines[li]))
            .collect())
    }

    /// Whether `v` is stable at `x`.
    pub fn is_stable(&self, x: PointId, v: &PointSet) -> bool {
        self.lines_through(x).iter().all(|&li| {
            let line = &self.lines[li];
            let meets = line.iter().any(|p| *p != x && v.contains(p));
            !meets || line.iter().all(|p| v.contains(p))
        })
    }

    /// Least set containing `y` that is stable at `x`, with the chain of
    /// intermediate sets.
    pub fn stable_closure_ids(&self, x: PointId, y: PointId) -> Result<ClosureResult> {
        if x == y {
            return Err(Error::DegenerateQuery(self.name(x).to_string()));
        }
        let through_x = self.lines_through(x);
        let mut current: PointSet = BTreeSet::from([y]);
        let mut chain = vec![current.clone()];
        loop {
            let mut next = current.clone();
            for &li in through_x {
                let line = &self.lines[li];
                if line.iter().any(|p| *p != x && current.contains(p)) {
                    next.extend(line.iter().copied());
                }
            }
            if next == current {
                break;
            }
            chain.push(next.clone());
            current = next;
        }
        debug_assert!(chain.len() <= self.points.len());
        let no_line = current.len() == 1;
        Ok(ClosureResult {
            basepoint: self.name(x).to_string(),
            seed: self.name(y).to_string(),
            leaf: self.names(&current),
            chain: chain.iter().map(|v| self.names(v)).collect(),
            stable: self.is_stable(x, &current),
            no_line,
            leaf_ids: current,
        })
    }

    pub fn stable_closure(&self, x: &str, y: &str) -> Result<ClosureResult> {
        self.stable_closure_ids(self.id(x)?, self.id(y)?)
    }

    /// Number of lines through both points.
    pub fn e_invariant_ids(&self, x: PointId, y: PointId) -> Result<usize> {
        if x == y {
            return Err(Error::DegenerateQuery(self.name(x).to_string()));
        }
        Ok(self
            .lines_through(x)
            .iter()
            .filter(|&&li| self.lines[li].binary_search(&y).is_ok())
            .count())
    }

    pub fn e_invariant(&self, x: &str, y: &str) -> Result<usize> {
        self.e_invariant_ids(self.id(x)?, self.id(y)?)
    }

    /// Histogram of the e-invariant over all unordered pairs of points.
    pub fn e_distribution(&self) -> Result<BTreeMap<usize, usize>> {
        if self.points.len() < 2 {
            return Err(Error::domain("e-distribution needs at least two points"));
        }
        let mut hist = BTreeMap::new();
        for (a, b) in self.pairs() {
            *hist.entry(self.e_invariant_ids(a, b)?).or_insert(0) += 1;
        }
        Ok(hist)
    }

    fn pairs(&self) -> impl Iterator<Item = (PointId, PointId)> + '_ {
        let n = self.points.len();
        (0..n).flat_map(move |a| (a + 1..n).map(move |b| (PointId(a), PointId(b))))
    }

    /// Pairs `(x, y)` joined by a line whose two leaves differ: the closure
    /// of `y` at `x` is not the closure of `x` at `y`.
    ///
    /// The condition is symmetric, so each unordered pair is reported once,
    /// first point first in model order. An empty result is the symmetric
    /// case; any entry is a witness of asymmetry.
    pub fn assumption_check(&self) -> Result<Vec<(String, String)>> {
        if self.points.len() < 2 {
            return Err(Error::domain("assumption check needs at least two points"));
        }
        let mut out = Vec::new();
        for (a, b) in self.pairs() {
            if self.e_invariant_ids(a, b)? == 0 {
                continue;
            }
            let ab = self.stable_closure_ids(a, b)?;
            let ba = self.stable_closure_ids(b, a)?;
            if ab.leaf_ids != ba.leaf_ids {
                out.push((self.name(a).to_string(), self.name(b).to_string()));
            }
        }
        Ok(out)
    }

    /// Leaves at `x`: for every `y != x` its closure, with seeds sharing a
    /// leaf grouped together. Leaves that overlap outside `x` are listed in
    /// [`LeafPartition::overlaps`].
    pub fn leaf_partition(&self, x: &str) -> Result<LeafPartition> {
        let x = self.id(x)?;
        let mut groups: Vec<(PointSet, Vec<PointId>)> = Vec::new();
        for y in self.point_ids().filter(|&y| y != x) {
            let leaf = self.stable_closure_ids(x, y)?.leaf_ids;
            match groups.iter_mut().find(|(l, _)| *l == leaf) {
                Some((_, seeds)) => seeds.push(y),
                None => groups.push((leaf, vec![y])),
            }
        }
        let mut overlaps = Vec::new();
        for i in 0..groups.len() {
            for j in i + 1..groups.len() {
                let shared: Vec<PointId> = groups[i]
                    .0
                    .intersection(&groups[j].0)
                    .filter(|p| **p != x)
                    .copied()
                    .collect();
                if !shared.is_empty() {
                    overlaps.push(LeafOverlap {
                        first: i,
                        second: j,
                        shared: self.names(&shared),
                    });
                }
            }
        }
        let leaves = groups
            .iter()
            .map(|(leaf, seeds)| Leaf {
                points: self.names(leaf),
                size: leaf.len(),
                seeds: self.names(seeds),
                contains_basepoint: leaf.contains(&x),
                ids: leaf.clone(),
            })
            .collect();
        Ok(LeafPartition {
            basepoint: self.name(x).to_string(),
            leaves,
            overlaps,
        })
    }

    /// Collapses every leaf at `x` to a point and reports the e-distribution
    /// of the resulting model.
    ///
    /// Applicable only when there are at least two leaves, the symmetry check
    /// passes, and leaves meet only in `x`. The image of a line is the set of
    /// leaves it meets away from `x`; images with at least two leaves become
    /// the quotient's lines, with repeats merged and counted in
    /// [`QuotientReport::line_multiplicities`].
    pub fn quotient_e_check(&self, x: &str) -> Result<QuotientReport> {
        let partition = self.leaf_partition(x)?;
        let xid = self.id(x)?;
        let not_applicable = |reason: String| QuotientReport {
            basepoint: partition.basepoint.clone(),
            applicable: false,
            reason: Some(reason),
            leaves: partition.leaves.iter().map(|l| l.points.clone()).collect(),
            quotient: None,
            line_multiplicities: Vec::new(),
            e_distribution: BTreeMap::new(),
            e_at_most_one: None,
        };
        if partition.leaves.len() < 2 {
            return Ok(not_applicable(format!(
                "{} leaf at the basepoint; nothing to collapse",
                partition.leaves.len()
            )));
        }
        let violations = self.assumption_check()?;
        if let Some((a, b)) = violations.first() {
            return Ok(not_applicable(format!(
                "symmetry fails for {} pair(s), first ({a}, {b})",
                violations.len()
            )));
        }
        if let Some(o) = partition.overlaps.first() {
            return Ok(not_applicable(format!(
                "leaves {} and {} share {:?} besides the basepoint",
                o.first, o.second, o.shared
            )));
        }

        let mut leaf_of = vec![None; self.points.len()];
        for (i, leaf) in partition.leaves.iter().enumerate() {
            for p in leaf.ids.iter().filter(|p| **p != xid) {
                leaf_of[p.0] = Some(i);
            }
        }
        let mut images: Vec<(Vec<usize>, usize)> = Vec::new();
        for line in &self.lines {
            let image: BTreeSet<usize> = line.iter().filter_map(|p| leaf_of[p.0]).collect();
            if image.len() < 2 {
                continue;
            }
            let image: Vec<usize> = image.into_iter().collect();
            match images.iter_mut().find(|(l, _)| *l == image) {
                Some((_, count)) => *count += 1,
                None => images.push((image, 1)),
            }
        }
        let point_names: Vec<String> = (0..partition.leaves.len()).map(|i| format!("F{i}")).collect();
        let quotient = IncidenceModel::new(
            point_names.clone(),
            images
                .iter()
                .map(|(l, _)| l.iter().map(|&i| point_names[i].clone()).collect())
                .collect(),
        )?;
        let e_distribution = quotient.e_distribution()?;
        let e_at_most_one = e_distribution.keys().all(|&e| e <= 1);
        Ok(QuotientReport {
            basepoint: partition.basepoint.clone(),
            applicable: true,
            reason: None,
            leaves: partition.leaves.iter().map(|l| l.points.clone()).collect(),
            line_multiplicities: images.iter().map(|(_, c)| *c).collect(),
            quotient: Some(quotient.to_file_data()),
            e_distribution,
            e_at_most_one: Some(e_at_most_one),
        })
    }

    /// Same model with one more line.
    pub fn with_line(&self, line: Vec<String>) -> Result<Self> {
        let mut data = self.to_file_data();
        data.lines.push(line);
        IncidenceModel::from_file_data(data)
    }

    /// Same model with the lines listed in a different order.
    pub fn with_line_order(&self, order: &[usize]) -> Result<Self> {
        let data = self.to_file_data();
        let mut used = HashSet::new();
        if order.len() != data.lines.len() || !order.iter().all(|&i| i < order.len() && used.insert(i)) {
            return Err(Error::domain("line order must be a permutation of the line indices"));
        }
        IncidenceModel::new(
            data.points,
            order.iter().map(|&i| data.lines[i].clone()).collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureResult {
    pub basepoint: String,
    pub seed: String,
    /// The stable set, in model order.
    pub leaf: Vec<String>,
    /// `V0 = {seed}`, strictly increasing, ending at the leaf.
    pub chain: Vec<Vec<String>>,
    pub stable: bool,
    /// No line joins the basepoint and the seed, so the leaf is `{seed}`.
    pub no_line: bool,
    #[serde(skip)]
    pub leaf_ids: PointSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Leaf {
    pub points: Vec<String>,
    pub size: usize,
    /// Points `y != x` whose closure is this leaf.
    pub seeds: Vec<String>,
    pub contains_basepoint: bool,
    #[serde(skip)]
    pub ids: PointSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeafOverlap {
    pub first: usize,
    pub second: usize,
    pub shared: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeafPartition {
    pub basepoint: String,
    /// Ordered by first seed.
    pub leaves: Vec<Leaf>,
    pub overlaps: Vec<LeafOverlap>,
}

impl LeafPartition {
    pub fn sizes(&self) -> Vec<usize> {
        self.leaves.iter().map(|l| l.size).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientReport {
    pub basepoint: String,
    pub applicable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub leaves: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient: Option<ModelFile>,
    /// How many original lines map onto each quotient line.
    pub line_multiplicities: Vec<usize>,
    pub e_distribution: BTreeMap<usize, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e_at_most_one: Option<bool>,
}
