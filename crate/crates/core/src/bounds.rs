//! Exact evaluation of the explicit bounds on `e(X, l)` and the numerical
//! inequalities used to prove them.
//!
//! Every value is computed with arbitrary-precision integers or rationals.
//! Floating point only appears in [`BoundReport::log10`], which is for
//! display.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Values with more decimal digits than this are serialized in structured
/// form instead of as a decimal string.
pub const JSON_DIGIT_LIMIT: usize = 10_000;

/// Refuse to materialize bounds with more digits than this.
pub const MAX_EXACT_DIGITS: f64 = 5.0e6;

/// The statement a report instantiates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Statement {
    /// `e(X, l) <= 16 (deg l)^3 / deg X` when the symmetry assumption fails.
    DichotomyCaseTwo,
    /// Binomial bound on the components of the Chow scheme of the leaf.
    ChowComponents,
    /// `E . l < d` for the exceptional divisor over the basepoint.
    LeafSection,
    /// `dim_x Sing(F_x) >= rk F_x - 1`.
    SingularLocus,
    /// `(D^2)(H^2) <= (D.H)^2` on a surface.
    HodgeSurface,
    /// `(D^2.H)(H^3) <= (D.H^2)^2` on a threefold.
    HodgeThreefold,
    /// `(mu^* H)^2 <= 4 (deg l)^2` for the leaf through two general points.
    LeafDegree,
    /// `h^0(L, O(H)) <= (d+1)(d+2)/2` and `N <= d(d+3)/2`.
    SectionsAndEmbedding,
}

impl Statement {
    pub fn formula(self) -> &'static str {
        match self {
            Statement::DichotomyCaseTwo => "e(X,l) <= 16 (deg l)^3 / deg X",
            Statement::ChowComponents => "e(X,l) <= binom(h0 * max(d, H^2), h0 - 1)^(d^2 * h0)",
            Statement::LeafSection => "dim Sing < rk - 1 + (d-1)/d (n - rk)  =>  E.l < d",
            Statement::SingularLocus => "dim_x Sing(F_x) >= rk F_x - 1",
            Statement::HodgeSurface => "(D^2)(H^2) <= (D.H)^2",
            Statement::HodgeThreefold => "(D^2.H)(H^3) <= (D.H^2)^2",
            Statement::LeafDegree => "(mu^* H)^2 <= 4 (deg l)^2",
            Statement::SectionsAndEmbedding => "h0 <= (d+1)(d+2)/2, N <= d(d+3)/2",
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.formula())
    }
}

/// Local data of the foliation at the basepoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FoliationProfile {
    /// Dimension of `X`.
    pub n: u32,
    pub rank: u32,
    /// Local dimension of the singular locus at `x`.
    pub sing_dim: u32,
}

impl FoliationProfile {
    /// Requires `1 <= rank <= n` and `sing_dim <= n - 2` (the singular locus
    /// of a foliation has codimension at least two). Profiles with
    /// `sing_dim < rank - 1` are accepted; see [`Self::is_consistent`].
    pub fn new(n: u32, rank: u32, sing_dim: u32) -> Result<Self> {
        if rank < 1 || rank > n {
            return Err(Error::domain(format!("rank must be in 1..=n (n = {n}), got {rank}")));
        }
        if sing_dim + 2 > n {
            return Err(Error::domain(format!(
                "singular locus must have codimension >= 2: sing_dim {sing_dim} > n - 2 with n = {n}"
            )));
        }
        Ok(FoliationProfile { n, rank, sing_dim })
    }

    /// Whether the profile satisfies `sing_dim >= rank - 1`.
    pub fn is_consistent(&self) -> bool {
        self.sing_dim >= sing_dim_lower_bound(self.rank)
    }

    fn inputs(&self) -> BTreeMap<String, i64> {
        inputs(&[
            ("n", self.n.into()),
            ("rank", self.rank.into()),
            ("sing_dim", self.sing_dim.into()),
        ])
    }

    fn flags(&self) -> Vec<String> {
        if self.is_consistent() {
            Vec::new()
        } else {
            vec![format!(
                "inconsistent profile: sing_dim {} < rank - 1 = {}",
                self.sing_dim,
                self.rank - 1
            )]
        }
    }
}

/// Degree data of a quasi-line and its ambient variety.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegreeData {
    pub deg_l: u64,
    pub deg_x: u64,
    /// `H . l`.
    pub d: u64,
    /// Degree of the leaf surface under the embedding.
    pub surf_deg: u64,
    pub h0: Option<u64>,
}

impl DegreeData {
    pub fn new(deg_l: u64, deg_x: u64, d: u64, surf_deg: u64, h0: Option<u64>) -> Result<Self> {
        for (name, v) in [("deg_l", deg_l), ("deg_X", deg_x), ("d", d), ("surf_deg", surf_deg)] {
            positive(name, v)?;
        }
        if let Some(h) = h0 {
            positive("h0", h)?;
        }
        Ok(DegreeData {
            deg_l,
            deg_x,
            d,
            surf_deg,
            h0,
        })
    }

    pub fn dichotomy(&self) -> Result<BoundReport> {
        dichotomy_bound(self.deg_l, self.deg_x)
    }

    pub fn chow(&self) -> Result<BoundReport> {
        chow_component_bound(self.d, self.surf_deg, self.h0)
    }
}

/// `binom(top, bottom)^exponent`, kept alongside the expanded value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BinomPower {
    pub top: u64,
    pub bottom: u64,
    pub exponent: u64,
}

impl fmt::Display for BinomPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "binom({}, {})^{}", self.top, self.bottom, self.exponent)
    }
}

/// Exact value of a bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundValue {
    pub exact: BigRational,
    pub form: Option<BinomPower>,
}

impl BoundValue {
    fn integer(v: impl Into<BigInt>) -> Self {
        BoundValue {
            exact: BigRational::from_integer(v.into()),
            form: None,
        }
    }

    pub fn is_integer(&self) -> bool {
        self.exact.is_integer()
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.exact.to_integer())
    }

    /// `p/q` in lowest terms, or just `p` for integers.
    pub fn decimal_string(&self) -> String {
        if self.is_integer() {
            self.exact.numer().to_string()
        } else {
            format!("{}/{}", self.exact.numer(), self.exact.denom())
        }
    }

    /// Number of decimal digits of the integer part (at least one).
    pub fn digits(&self) -> usize {
        let int = self.exact.to_integer().abs();
        if int.is_zero() {
            1
        } else {
            int.to_string().len()
        }
    }
}

/// An evaluated bound.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub statement: Statement,
    pub inputs: BTreeMap<String, i64>,
    pub value: BoundValue,
    /// `log10(value)`, display only.
    pub log10: f64,
    pub flags: Vec<String>,
}

impl BoundReport {
    fn new(statement: Statement, inputs: BTreeMap<String, i64>, value: BoundValue) -> Self {
        let log10 = match value.form {
            Some(f) => f.exponent as f64 * log10_int(&BigInt::from(binomial(
                BigUint::from(f.top),
                BigUint::from(f.bottom),
            ))),
            None => log10_int(value.exact.numer()) - log10_int(value.exact.denom()),
        };
        BoundReport {
            statement,
            inputs,
            value,
            log10,
            flags: Vec::new(),
        }
    }

    /// Short human rendering: the structured form and digit count for big
    /// values, the plain value otherwise.
    pub fn summary(&self, full: bool) -> String {
        let digits = self.value.digits();
        match self.value.form {
            Some(form) if !full => format!(
                "{form} ({digits} digits, log10 = {:.6})",
                self.log10
            ),
            _ => self.value.decimal_string(),
        }
    }
}

impl Serialize for BoundReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Structured {
            binom: [u64; 2],
            exponent: u64,
        }

        let digits = self.value.digits();
        let mut map = serializer.serialize_map(None)?;
        map.serialize_entry("statement", &self.statement)?;
        map.serialize_entry("formula", self.statement.formula())?;
        map.serialize_entry("inputs", &self.inputs)?;
        match self.value.form {
            Some(f) if digits > JSON_DIGIT_LIMIT => map.serialize_entry(
                "value",
                &Structured {
                    binom: [f.top, f.bottom],
                    exponent: f.exponent,
                },
            )?,
            _ => map.serialize_entry("value", &self.value.decimal_string())?,
        }
        if let Some(f) = self.value.form {
            map.serialize_entry("form", &f.to_string())?;
        }
        map.serialize_entry("digits", &digits)?;
        map.serialize_entry("log10", &self.log10)?;
        map.serialize_entry("flags", &self.flags)?;
        map.end()
    }
}

/// `log10 |v|` from the decimal expansion: exact digit count plus the
/// leading seventeen digits.
pub fn log10_int(v: &BigInt) -> f64 {
    let s = v.abs().to_string();
    if s.len() <= 17 {
        return s.parse::<f64>().expect("decimal digits").log10();
    }
    let lead: f64 = s[..17].parse().expect("decimal digits");
    lead.log10() + (s.len() - 17) as f64
}

fn positive(name: &str, v: u64) -> Result<()> {
    if v == 0 {
        return Err(Error::domain(format!("{name} must be positive")));
    }
    Ok(())
}

fn inputs(pairs: &[(&str, i64)]) -> BTreeMap<String, i64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn to_i64(v: u64) -> i64 {
    i64::try_from(v).unwrap_or(i64::MAX)
}

/// `16 deg_l^3 / deg_X` as an exact rational.
pub fn dichotomy_bound(deg_l: u64, deg_x: u64) -> Result<BoundReport> {
    positive("deg_l", deg_l)?;
    positive("deg_X", deg_x)?;
    let num = BigInt::from(16u32) * BigInt::from(deg_l).pow(3);
    let value = BigRational::new(num, BigInt::from(deg_x));
    Ok(BoundReport::new(
        Statement::DichotomyCaseTwo,
        inputs(&[("deg_l", to_i64(deg_l)), ("deg_X", to_i64(deg_x))]),
        BoundValue {
            exact: value,
            form: None,
        },
    ))
}

/// `((d+1)(d+2)/2, d(d+3)/2)`: the section bound and the embedding
/// dimension bound for a leaf with `H . l = d`.
pub fn h0_and_embedding_bounds(d: u64) -> Result<(u64, u64)> {
    positive("d", d)?;
    let h0 = (d + 1)
        .checked_mul(d + 2)
        .ok_or(Error::Overflow("section bound"))?
        / 2;
    Ok((h0, h0 - 1))
}

/// `binom(h0 * max(d, surf_deg), h0 - 1)^(d^2 * h0)`.
///
/// With `h0` defaulting to `(d+1)(d+2)/2` the lower index is
/// `h0 - 1 = d(d+3)/2` and the exponent is `d^2 h0 = d^2 (d+1)(d+2)/2`, so
/// the default instance is exactly [`chow_bound_literal`]. Passing a smaller
/// known `h0` sharpens the bound.
pub fn chow_component_bound(d: u64, surf_deg: u64, h0: Option<u64>) -> Result<BoundReport> {
    positive("d", d)?;
    positive("surf_deg", surf_deg)?;
    let h0 = match h0 {
        Some(h) => {
            positive("h0", h)?;
            h
        }
        None => h0_and_embedding_bounds(d)?.0,
    };
    let top = h0
        .checked_mul(d.max(surf_deg))
        .ok_or(Error::Overflow("binomial top index"))?;
    let exponent = d
        .checked_mul(d)
        .and_then(|x| x.checked_mul(h0))
        .ok_or(Error::Overflow("exponent"))?;
    let form = BinomPower {
        top,
        bottom: h0 - 1,
        exponent,
    };
    let exact = binom_power(form)?;
    let mut report = BoundReport::new(
        Statement::ChowComponents,
        inputs(&[
            ("d", to_i64(d)),
            ("surf_deg", to_i64(surf_deg)),
            ("h0", to_i64(h0)),
        ]),
        BoundValue {
            exact: BigRational::from_integer(exact.into()),
            form: Some(form),
        },
    );
    if h0 > h0_and_embedding_bounds(d)?.0 {
        report
            .flags
            .push(format!("h0 = {h0} exceeds the section bound (d+1)(d+2)/2"));
    }
    Ok(report)
}

/// The Chow-component bound written exactly as stated for the default
/// section count: `binom((d+1)(d+2)/2 * max(d, H^2), d(d+3)/2)^(d^2(d+1)(d+2)/2)`.
pub fn chow_bound_literal(d: u64, surf_deg: u64) -> Result<BigUint> {
    positive("d", d)?;
    positive("surf_deg", surf_deg)?;
    let top = (d + 1) * (d + 2) / 2 * d.max(surf_deg);
    let bottom = d * (d + 3) / 2;
    let exponent = d * d * (d + 1) * (d + 2) / 2;
    binom_power(BinomPower {
        top,
        bottom,
        exponent,
    })
}

fn binom_power(f: BinomPower) -> Result<BigUint> {
    let base = binomial(BigUint::from(f.top), BigUint::from(f.bottom));
    let estimate = f.exponent as f64 * log10_int(&BigInt::from(base.clone()));
    if estimate > MAX_EXACT_DIGITS {
        return Err(Error::domain(format!(
            "{f} has about {estimate:.0} digits, beyond the exact-evaluation limit"
        )));
    }
    let exp = u32::try_from(f.exponent).map_err(|_| Error::Overflow("exponent"))?;
    Ok(num_traits::pow(base, exp as usize))
}

/// Guaranteed upper bound on `E . l` for a quasi-line in a general leaf.
///
/// Returns `d0 - 1` where `d0 >= 2` is the least integer with
/// `sing_dim < rank - 1 + (d0 - 1)/d0 * (n - rank)`. The comparison is done
/// in integers as `d (sing_dim - rank + 1) < (d - 1)(n - rank)`.
pub fn leaf_section_bound(p: &FoliationProfile) -> Result<u32> {
    if p.rank >= p.n {
        return Err(Error::domain(format!(
            "foliation of rank {} on an {}-fold is trivial",
            p.rank, p.n
        )));
    }
    let excess = i64::from(p.sing_dim) - i64::from(p.rank) + 1;
    let corank = i64::from(p.n - p.rank);
    let cap = i64::from(p.n) * i64::from(p.n + 1);
    let mut d: i64 = 2;
    // the right side tends to n - 1 > sing_dim, so d = corank + 1 always works
    while d * excess >= (d - 1) * corank {
        d += 1;
        assert!(d <= cap, "leaf section scan did not terminate for {p:?}");
    }
    Ok((d - 1) as u32)
}

pub fn leaf_section_report(p: &FoliationProfile) -> Result<BoundReport> {
    let v = leaf_section_bound(p)?;
    let mut r = BoundReport::new(Statement::LeafSection, p.inputs(), BoundValue::integer(v));
    r.flags = p.flags();
    Ok(r)
}

/// `rank - 1`, the lower bound on the local dimension of the singular locus.
pub fn sing_dim_lower_bound(rank: u32) -> u32 {
    rank.saturating_sub(1)
}

/// `4 deg_l^2`.
pub fn leaf_degree_bound(deg_l: u64) -> Result<u64> {
    positive("deg_l", deg_l)?;
    deg_l
        .checked_mul(deg_l)
        .and_then(|x| x.checked_mul(4))
        .ok_or(Error::Overflow("leaf degree bound"))
}

pub fn leaf_degree_report(deg_l: u64) -> Result<BoundReport> {
    let v = leaf_degree_bound(deg_l)?;
    Ok(BoundReport::new(
        Statement::LeafDegree,
        inputs(&[("deg_l", to_i64(deg_l))]),
        BoundValue::integer(v),
    ))
}

/// `D2 * H2 <= DH^2`, the Hodge index inequality on a surface with `H`
/// ample (`H2 > 0`).
pub fn hodge_surface_check(d2: i64, h2: i64, dh: i64) -> Result<bool> {
    if h2 <= 0 {
        return Err(Error::domain("H^2 must be positive for an ample H"));
    }
    Ok(i128::from(d2) * i128::from(h2) <= i128::from(dh) * i128::from(dh))
}

/// `D2H * H3 <= DH2^2` on a threefold with `H` ample (`H3 > 0`).
pub fn hodge_threefold_check(d2h: i64, h3: i64, dh2: i64) -> Result<bool> {
    if h3 <= 0 {
        return Err(Error::domain("H^3 must be positive for an ample H"));
    }
    Ok(i128::from(d2h) * i128::from(h3) <= i128::from(dh2) * i128::from(dh2))
}

/// Result of a predicate or small integer evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub statement: Statement,
    pub formula: &'static str,
    pub inputs: BTreeMap<String, i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub holds: Option<bool>,
    pub values: BTreeMap<String, i64>,
    pub flags: Vec<String>,
}

impl CheckReport {
    fn new(statement: Statement, inputs: BTreeMap<String, i64>) -> Self {
        CheckReport {
            statement,
            formula: statement.formula(),
            inputs,
            holds: None,
            values: BTreeMap::new(),
            flags: Vec::new(),
        }
    }

    pub fn hodge_surface(d2: i64, h2: i64, dh: i64) -> Result<Self> {
        let mut r = CheckReport::new(
            Statement::HodgeSurface,
            inputs(&[("D2", d2), ("H2", h2), ("DH", dh)]),
        );
        let holds = hodge_surface_check(d2, h2, dh)?;
        r.holds = Some(holds);
        if !holds {
            r.flags.push("data inconsistent with an ample H".to_string());
        }
        Ok(r)
    }

    pub fn hodge_threefold(d2h: i64, h3: i64, dh2: i64) -> Result<Self> {
        let mut r = CheckReport::new(
            Statement::HodgeThreefold,
            inputs(&[("D2H", d2h), ("H3", h3), ("DH2", dh2)]),
        );
        let holds = hodge_threefold_check(d2h, h3, dh2)?;
        r.holds = Some(holds);
        if !holds {
            r.flags.push("data inconsistent with an ample H".to_string());
        }
        Ok(r)
    }

    /// Lower bound for the rank alone, plus the consistency predicate when a
    /// full profile is supplied.
    pub fn singular_locus(rank: u32, profile: Option<&FoliationProfile>) -> Result<Self> {
        if rank < 1 {
            return Err(Error::domain("rank must be at least 1"));
        }
        let mut r = CheckReport::new(Statement::SingularLocus, inputs(&[("rank", rank.into())]));
        r.values
            .insert("lower_bound".to_string(), sing_dim_lower_bound(rank).into());
        if let Some(p) = profile {
            r.inputs = p.inputs();
            r.holds = Some(p.is_consistent());
            r.flags = p.flags();
        }
        Ok(r)
    }

    pub fn sections(d: u64) -> Result<Self> {
        let (h0, n) = h0_and_embedding_bounds(d)?;
        let mut r = CheckReport::new(Statement::SectionsAndEmbedding, inputs(&[("d", to_i64(d))]));
        r.values.insert("h0".to_string(), to_i64(h0));
        r.values.insert("N".to_string(), to_i64(n));
        Ok(r)
    }
}
