//! Intersection theory on the Picard lattice of `Bl_n P^2`.
//!
//! Classes are written in the basis `(H, E1, ..., En)` where `H` is the
//! pullback of a line and `Ei` are the exceptional curves. The Gram matrix
//! is `diag(1, -1, ..., -1)`, so the form has signature `(1, n)`.
//!
//! Coefficients are `i64`; every product and sum is checked and an
//! [`Error::Overflow`] is returned instead of wrapping.

use std::fmt;
use std::ops::{Add, Neg};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest number of blown-up points for which `-K` stays ample.
pub const MAX_POINTS: usize = 8;

/// The lattice context: `Bl_n P^2` with `n` points in general position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSurface")]
pub struct SurfaceModel {
    n: usize,
}

#[derive(Deserialize)]
struct RawSurface {
    n: usize,
}

impl TryFrom<RawSurface> for SurfaceModel {
    type Error = Error;

    fn try_from(raw: RawSurface) -> Result<Self> {
        SurfaceModel::new(raw.n)
    }
}

impl SurfaceModel {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_POINTS {
            return Err(Error::domain(format!(
                "number of blown-up points must be in 0..={MAX_POINTS}, got {n}"
            )));
        }
        Ok(SurfaceModel { n })
    }

    /// Number of blown-up points.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Rank of the Picard lattice, `n + 1`.
    pub fn rank(&self) -> usize {
        self.n + 1
    }

    pub fn hyperplane(&self) -> DivisorClass {
        DivisorClass::new(1, vec![0; self.n])
    }

    /// The exceptional class `E_i`, 1-based as in the usual notation.
    pub fn exceptional(&self, i: usize) -> Result<DivisorClass> {
        if i == 0 || i > self.n {
            return Err(Error::domain(format!(
                "exceptional index must be in 1..={}, got {i}",
                self.n
            )));
        }
        let mut e = vec![0; self.n];
        e[i - 1] = 1;
        Ok(DivisorClass::new(0, e))
    }

    /// `d H - sum m_i E_i`, the class of a degree-`d` curve with
    /// multiplicity `m_i` at the `i`-th point.
    pub fn class_with_multiplicities(&self, degree: i64, mult: &[i64]) -> Result<DivisorClass> {
        self.check_len(mult.len())?;
        let e = mult
            .iter()
            .map(|&m| m.checked_neg().ok_or(Error::Overflow("negation")))
            .collect::<Result<Vec<_>>>()?;
        Ok(DivisorClass::new(degree, e))
    }

    pub fn intersect(&self, a: &DivisorClass, b: &DivisorClass) -> Result<i64> {
        self.check(a)?;
        self.check(b)?;
        let mut acc = a.h.checked_mul(b.h).ok_or(Error::Overflow("intersection product"))?;
        for (x, y) in a.e.iter().zip(&b.e) {
            let term = x.checked_mul(*y).ok_or(Error::Overflow("intersection product"))?;
            acc = acc.checked_sub(term).ok_or(Error::Overflow("intersection sum"))?;
        }
        Ok(acc)
    }

    pub fn self_intersection(&self, a: &DivisorClass) -> Result<i64> {
        self.intersect(a, a)
    }

    /// `K = -3H + E1 + ... + En`.
    pub fn canonical_class(&self) -> DivisorClass {
        DivisorClass::new(-3, vec![1; self.n])
    }

    /// Degree with respect to the anticanonical class, `-K . a`.
    pub fn anticanonical_degree(&self, a: &DivisorClass) -> Result<i64> {
        self.intersect(&self.canonical_class(), a)?
            .checked_neg()
            .ok_or(Error::Overflow("negation"))
    }

    /// Ensures `a` lives on this surface.
    pub fn check(&self, a: &DivisorClass) -> Result<()> {
        self.check_len(a.e.len())
    }

    fn check_len(&self, found: usize) -> Result<()> {
        if found != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found,
            });
        }
        Ok(())
    }
}

/// An integer class `h H + sum e_i E_i`.
///
/// Serialized as the flat JSON array `[h, e1, ..., en]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorClass {
    pub h: i64,
    pub e: Vec<i64>,
}

impl DivisorClass {
    pub fn new(h: i64, e: Vec<i64>) -> Self {
        DivisorClass { h, e }
    }

    /// Number of exceptional coefficients.
    pub fn len(&self) -> usize {
        self.e.len()
    }

    pub fn is_empty(&self) -> bool {
        self.e.is_empty()
    }

    /// Multiplicities `m_i = -e_i`, the way curves through the blown-up
    /// points are usually written.
    pub fn multiplicities(&self) -> Vec<i64> {
        self.e.iter().map(|&x| -x).collect()
    }

    /// Applies an index permutation: coefficient `i` moves to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<DivisorClass> {
        if perm.len() != self.e.len() {
            return Err(Error::DimensionMismatch {
                expected: self.e.len(),
                found: perm.len(),
            });
        }
        let mut e = vec![0; self.e.len()];
        let mut seen = vec![false; self.e.len()];
        for (i, &p) in perm.iter().enumerate() {
            if p >= e.len() || seen[p] {
                return Err(Error::domain("not a permutation"));
            }
            seen[p] = true;
            e[p] = self.e[i];
        }
        Ok(DivisorClass::new(self.h, e))
    }

    /// Extends the class to `Bl_m` with `m >= n` by zero padding.
    pub fn padded(&self, m: usize) -> DivisorClass {
        let mut e = self.e.clone();
        e.resize(m.max(e.len()), 0);
        DivisorClass::new(self.h, e)
    }

    pub fn checked_add(&self, other: &DivisorClass) -> Result<DivisorClass> {
        if self.e.len() != other.e.len() {
            return Err(Error::DimensionMismatch {
                expected: self.e.len(),
                found: other.e.len(),
            });
        }
        let h = self.h.checked_add(other.h).ok_or(Error::Overflow("class sum"))?;
        let e = self
            .e
            .iter()
            .zip(&other.e)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow("class sum")))
            .collect::<Result<Vec<_>>>()?;
        Ok(DivisorClass::new(h, e))
    }

    pub fn to_vec(&self) -> Vec<i64> {
        let mut v = Vec::with_capacity(self.e.len() + 1);
        v.push(self.h);
        v.extend_from_slice(&self.e);
        v
    }

    pub fn from_slice(coeffs: &[i64]) -> Result<DivisorClass> {
        match coeffs.split_first() {
            Some((h, e)) => Ok(DivisorClass::new(*h, e.to_vec())),
            None => Err(Error::domain("a class needs at least the H coefficient")),
        }
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;

    /// Panics on length mismatch or overflow; use
    /// [`DivisorClass::checked_add`] for fallible addition.
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        self.checked_add(rhs).expect("class addition")
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;

    fn neg(self) -> DivisorClass {
        DivisorClass::new(-self.h, self.e.iter().map(|x| -x).collect())
    }
}

impl fmt::Display for DivisorClass {
    /// Renders e.g. `2H-E1-E2-E3-E4-E5`, `E3`, `-3H+E1+E2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut term = |f: &mut fmt::Formatter<'_>, c: i64, sym: String| -> fmt::Result {
            if c == 0 {
                return Ok(());
            }
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            first = false;
            match c.unsigned_abs() {
                1 => write!(f, "{sign}{sym}"),
                k => write!(f, "{sign}{k}{sym}"),
            }
        };
        term(f, self.h, "H".to_string())?;
        for (i, &c) in self.e.iter().enumerate() {
            term(f, c, format!("E{}", i + 1))?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for DivisorClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vec().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DivisorClass {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<i64>::deserialize(deserializer)?;
        DivisorClass::from_slice(&v).map_err(serde::de::Error::custom)
    }
}
