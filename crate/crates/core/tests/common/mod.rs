//! Brute-force oracles shared by the integration suites. Nothing here calls
//! into the algorithms it is used to check.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// All `[h, e1, ..., en]` with `e.e`-form value `-1` and canonical degree
/// `-1`, searched over the box `|h|, |e_i| <= bound` without pruning.
///
/// Multiplicity tuples are enumerated up to order (non-increasing) and then
/// expanded to all distinct permutations.
pub fn brute_minus_one(n: usize, bound: i64) -> BTreeSet<Vec<i64>> {
    let mut out = BTreeSet::new();
    for h in -bound..=bound {
        let mut tuple = Vec::with_capacity(n);
        sorted_tuples(n, bound, bound, &mut tuple, &mut |m| {
            let sq: i64 = m.iter().map(|x| x * x).sum();
            let sum: i64 = m.iter().sum();
            // C^2 = h^2 - sum m^2, C.K = -3h + sum m
            if h * h - sq == -1 && -3 * h + sum == -1 {
                let mut perm: Vec<i64> = m.to_vec();
                perm.sort_unstable();
                loop {
                    let mut v = vec![h];
                    v.extend(perm.iter().map(|x| -x));
                    out.insert(v);
                    if !next_permutation(&mut perm) {
                        break;
                    }
                }
            }
        });
    }
    out
}

fn sorted_tuples(n: usize, max: i64, bound: i64, cur: &mut Vec<i64>, f: &mut dyn FnMut(&[i64])) {
    if cur.len() == n {
        f(cur);
        return;
    }
    for v in (-bound..=max).rev() {
        cur.push(v);
        sorted_tuples(n, v, bound, cur, f);
        cur.pop();
    }
}

pub fn next_permutation(v: &mut [i64]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// `a.b` for flat `[h, e...]` vectors.
pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a[0] * b[0] - a[1..].iter().zip(&b[1..]).map(|(x, y)| x * y).sum::<i64>()
}

/// All `k`-subsets of `0..classes.len()` whose classes pairwise intersect
/// to zero, by exhaustive subset enumeration.
pub fn brute_disjoint_subsets(classes: &[Vec<i64>], k: usize) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    let mut idx: Vec<usize> = (0..k).collect();
    let n = classes.len();
    if k > n {
        return out;
    }
    loop {
        let ok = idx
            .iter()
            .enumerate()
            .all(|(a, &i)| idx[a + 1..].iter().all(|&j| dot(&classes[i], &classes[j]) <= 0));
        if ok {
            out.insert(idx.clone());
        }
        // advance to the next combination in lexicographic order
        let mut p = k;
        while p > 0 && idx[p - 1] == n - k + p - 1 {
            p -= 1;
        }
        if p == 0 {
            return out;
        }
        idx[p - 1] += 1;
        for q in p..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

/// Plain incidence data: `lines[i]` is a sorted list of point indices.
#[derive(Debug, Clone)]
pub struct RawModel {
    pub points: usize,
    pub lines: Vec<Vec<usize>>,
}

impl RawModel {
    pub fn names(&self) -> Vec<String> {
        (0..self.points).map(|i| format!("p{i}")).collect()
    }

    pub fn to_model(&self) -> ql_core::IncidenceModel {
        ql_core::IncidenceModel::new(
            self.names(),
            self.lines
                .iter()
                .map(|l| l.iter().map(|&p| format!("p{p}")).collect())
                .collect(),
        )
        .expect("generated models are valid")
    }

    /// Intersection of every subset containing `y` that is stable at `x`,
    /// over all `2^points` subsets.
    pub fn brute_minimal_stable(&self, x: usize, y: usize) -> BTreeSet<usize> {
        assert!(self.points <= 16);
        let through_x: Vec<u32> = self
            .lines
            .iter()
            .filter(|l| l.contains(&x))
            .map(|l| l.iter().fold(0u32, |m, &p| m | 1 << p))
            .collect();
        let xbit = 1u32 << x;
        let mut meet = (1u32 << self.points) - 1;
        for s in 0u32..(1 << self.points) {
            if s & (1 << y) == 0 {
                continue;
            }
            let stable = through_x
                .iter()
                .all(|&l| l & s & !xbit == 0 || l & s == l);
            if stable {
                meet &= s;
            }
        }
        (0..self.points).filter(|p| meet & (1 << p) != 0).collect()
    }
}

/// Random model with `2..=max_points` points and up to `max_lines` distinct
/// lines of size >= 2.
pub fn random_model(rng: &mut StdRng, max_points: usize, max_lines: usize) -> RawModel {
    let points = rng.random_range(2..=max_points);
    let target = rng.random_range(0..=max_lines);
    let mut lines: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut attempts = 0;
    while lines.len() < target && attempts < 10 * max_lines {
        attempts += 1;
        let size = rng.random_range(2..=points.min(4));
        let mut l: BTreeSet<usize> = BTreeSet::new();
        while l.len() < size {
            l.insert(rng.random_range(0..points));
        }
        lines.insert(l.into_iter().collect());
    }
    let mut lines: Vec<Vec<usize>> = lines.into_iter().collect();
    // shuffle so that line order is not always sorted
    for i in (1..lines.len()).rev() {
        lines.swap(i, rng.random_range(0..=i));
    }
    RawModel { points, lines }
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// `binom(n, k)` from Pascal's rule.
pub fn pascal_binomial(n: usize, k: usize) -> BigUint {
    let mut row = vec![BigUint::from(1u32)];
    for i in 1..=n {
        let mut next = vec![BigUint::from(1u32); i + 1];
        for j in 1..i {
            next[j] = &row[j - 1] + &row[j];
        }
        row = next;
    }
    row[k].clone()
}

/// `log10 binom(n, k)` as a float sum.
pub fn log10_binomial(n: u64, k: u64) -> f64 {
    (0..k).map(|i| ((n - i) as f64).log10() - ((k - i) as f64).log10()).sum()
}

/// Smallest `d >= 2` with `s < r - 1 + (d-1)/d (n - r)`, compared as exact
/// rationals; `None` if no `d <= limit` works.
pub fn leaf_section_scan(n: i64, r: i64, s: i64, limit: i64) -> Option<i64> {
    let q = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
    (2..=limit).find(|&d| q(s, 1) < q(r - 1, 1) + q(d - 1, d) * q(n - r, 1))
}

pub fn histogram<I: IntoIterator<Item = usize>>(it: I) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for v in it {
        *m.entry(v).or_insert(0) += 1;
    }
    m
}
