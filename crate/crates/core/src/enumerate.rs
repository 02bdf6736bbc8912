//! Exhaustive counts over a whole group, next to their closed forms.

use std::collections::BTreeMap;
use std::io::Write;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{enumerate_group, Family, GroupContext, SignedPermutation};
use crate::oracle::{max_order_from_env, CayleyGraph};
use crate::stats;

/// Guards on how large a group may be enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Highest rank enumerated in types B and D.
    pub max_rank: usize,
    /// Highest group order enumerated in any type.
    pub max_order: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_rank: 6,
            max_order: max_order_from_env(),
        }
    }
}

impl Limits {
    pub fn check(&self, ctx: &GroupContext) -> Result<()> {
        if ctx.family != Family::A && ctx.rank > self.max_rank {
            return Err(Error::RankCapExceeded {
                family: ctx.family,
                rank: ctx.rank,
                max_rank: self.max_rank,
            });
        }
        if ctx.order() > self.max_order {
            return Err(Error::CapExceeded {
                order: ctx.order(),
                cap: self.max_order,
            });
        }
        Ok(())
    }

    fn elements(&self, ctx: &GroupContext) -> Result<Vec<SignedPermutation>> {
        self.check(ctx)?;
        Ok(enumerate_group(ctx, self.max_order)?.collect())
    }

    fn graph(&self, ctx: &GroupContext) -> Result<std::sync::Arc<CayleyGraph>> {
        self.check(ctx)?;
        CayleyGraph::shared(ctx)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Enumerated,
    ClosedForm,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRow {
    pub key: String,
    pub count: u64,
    pub source: Source,
}

/// Counts of one statistic over `family_n`, one row per key.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountTable {
    pub family: Family,
    pub n: usize,
    pub statistic: String,
    pub rows: Vec<CountRow>,
}

#[derive(Serialize)]
struct CsvRecord<'a> {
    family: Family,
    n: usize,
    statistic: &'a str,
    key: &'a str,
    count: u64,
    source: Source,
}

impl CountTable {
    fn new(ctx: &GroupContext, statistic: &str) -> Self {
        Self {
            family: ctx.family,
            n: ctx.rank,
            statistic: statistic.to_string(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, key: impl ToString, count: u64, source: Source) {
        self.rows.push(CountRow {
            key: key.to_string(),
            count,
            source,
        });
    }

    pub fn get(&self, key: &str, source: Source) -> Option<u64> {
        self.rows
            .iter()
            .find(|r| r.key == key && r.source == source)
            .map(|r| r.count)
    }

    /// Sum of the enumerated rows.
    pub fn enumerated_total(&self) -> u64 {
        self.rows
            .iter()
            .filter(|r| r.source == Source::Enumerated)
            .map(|r| r.count)
            .sum()
    }

    /// Writes `family,n,statistic,key,count,source` with a header row.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::Unsupported(format!("csv output failed: {e}"));
        for r in &self.rows {
            w.serialize(CsvRecord {
                family: self.family,
                n: self.n,
                statistic: &self.statistic,
                key: &r.key,
                count: r.count,
                source: r.source,
            })
            .map_err(io)?;
        }
        w.flush()
            .map_err(|e| Error::Unsupported(format!("csv output failed: {e}")))
    }
}

/// Histogram of `dp` over the group.
pub fn depth_distribution(ctx: &GroupContext, limits: &Limits) -> Result<CountTable> {
    let elems = limits.elements(ctx)?;
    let hist = elems
        .par_iter()
        .fold(BTreeMap::new, |mut m, w| {
            *m.entry(stats::dp(w, ctx)).or_insert(0u64) += 1;
            m
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    let mut table = CountTable::new(ctx, "depth");
    for (k, v) in hist {
        table.push(k, v, Source::Enumerated);
    }
    Ok(table)
}

/// Number of `w` with `dp(w) = l_S(w)`.
pub fn count_depth_eq_length(ctx: &GroupContext, limits: &Limits) -> Result<u64> {
    let elems = limits.elements(ctx)?;
    Ok(elems
        .par_iter()
        .filter(|w| stats::dp(w, ctx) == stats::ell_s(w, ctx))
        .count() as u64)
}

/// `C_{n+1}` in type B and `(n+3) C_n / 2 - 1` in type D.
pub fn depth_eq_length_closed_form(ctx: &GroupContext) -> Result<u64> {
    let n = ctx.rank as u64;
    match ctx.family {
        Family::A => Err(Error::Unsupported("no closed form in type A".into())),
        Family::B => catalan(n + 1),
        Family::D => {
            let c = catalan(n)?;
            checked((n + 3).checked_mul(c)).map(|v| v / 2 - 1)
        }
    }
}

/// Number of `w` with `l_T(w) = dp(w) = l_S(w)`, with `l_T` from the oracle.
pub fn count_boolean(ctx: &GroupContext, limits: &Limits) -> Result<u64> {
    Ok(boolean_lengths(ctx, limits)?.values().sum())
}

fn boolean_lengths(ctx: &GroupContext, limits: &Limits) -> Result<BTreeMap<u64, u64>> {
    let g = limits.graph(ctx)?;
    let mut hist = BTreeMap::new();
    for w in g.vertices() {
        let ls = stats::ell_s(w, ctx);
        if g.lt(w)? == ls && stats::dp(w, ctx) == ls {
            *hist.entry(ls).or_insert(0) += 1;
        }
    }
    Ok(hist)
}

/// Boolean elements of length exactly `k`.
pub fn count_boolean_by_length(ctx: &GroupContext, k: u64, limits: &Limits) -> Result<u64> {
    Ok(boolean_lengths(ctx, limits)?.get(&k).copied().unwrap_or(0))
}

/// `F_{2n+1}` in type B; in type D (rank at least 4), the two-root closed
/// form evaluated exactly in `Q(sqrt 5)`.
pub fn boolean_closed_form(ctx: &GroupContext) -> Result<u64> {
    match ctx.family {
        Family::A => Err(Error::Unsupported("no closed form in type A".into())),
        Family::B => fibonacci(2 * ctx.rank as u64 + 1),
        Family::D if ctx.rank < 4 => Err(Error::Unsupported(
            "the type D boolean closed form needs rank at least 4".into(),
        )),
        Family::D => d_boolean_closed_form(ctx.rank as u32),
    }
}

/// Closed form for the boolean elements of length `k`.
pub fn boolean_by_length_closed_form(ctx: &GroupContext, k: u64) -> Result<u64> {
    let n = ctx.rank as i64;
    let k = k as i64;
    match ctx.family {
        Family::A => Err(Error::Unsupported("no closed form in type A".into())),
        Family::B if k == 0 => Ok(1),
        Family::B => {
            let mut sum = 0u64;
            for i in 1..=k {
                sum = checked(sum.checked_add(checked(
                    binom(n + 1 - i, k + 1 - i)?.checked_mul(binom(k - 1, i - 1)?),
                )?))?;
            }
            Ok(sum)
        }
        Family::D if n == 1 => Ok(u64::from(k == 0)),
        Family::D => {
            let v = l(n, k)? as i128 + 2 * l(n, k - 1)? as i128
                - l(n - 2, k - 1)? as i128
                - l(n - 2, k - 2)? as i128;
            u64::try_from(v).map_err(|_| Error::Unsupported(format!("negative count {v}")))
        }
    }
}

/// `L(n, k) = sum_{i=1}^k C(n-i, k+1-i) C(k-1, i-1)`, with `L(n, 0) = 1` for
/// `n >= 0` and zero wherever an argument is out of range.
fn l(n: i64, k: i64) -> Result<u64> {
    if k < 0 || n < 0 {
        return Ok(0);
    }
    if k == 0 {
        return Ok(1);
    }
    let mut sum = 0u64;
    for i in 1..=k {
        sum = checked(sum.checked_add(checked(
            binom(n - i, k + 1 - i)?.checked_mul(binom(k - 1, i - 1)?),
        )?))?;
    }
    Ok(sum)
}

/// Elements with `2 dp(w) = l_T(w) + l_S(w)`.
pub fn shallow_elements(ctx: &GroupContext, limits: &Limits) -> Result<Vec<SignedPermutation>> {
    let g = limits.graph(ctx)?;
    let mut out = Vec::new();
    for w in g.vertices() {
        if 2 * stats::dp(w, ctx) == g.lt(w)? + stats::ell_s(w, ctx) {
            out.push(w.clone());
        }
    }
    Ok(out)
}

fn checked(v: Option<u64>) -> Result<u64> {
    v.ok_or_else(|| Error::Unsupported("closed form overflows 64 bits".into()))
}

/// `C(n, k)`, zero when `k < 0`, `n < 0` or `k > n`.
fn binom(n: i64, k: i64) -> Result<u64> {
    if n < 0 || k < 0 || k > n {
        return Ok(0);
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut c: u128 = 1;
    for i in 0..k {
        c = c * u128::from(n - i) / u128::from(i + 1);
    }
    u64::try_from(c).map_err(|_| Error::Unsupported("closed form overflows 64 bits".into()))
}

pub fn catalan(m: u64) -> Result<u64> {
    Ok(binom(2 * m as i64, m as i64)? / (m + 1))
}

/// `F_1 = F_2 = 1`.
pub fn fibonacci(m: u64) -> Result<u64> {
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..m {
        (a, b) = (b, checked(a.checked_add(b))?);
    }
    Ok(a)
}

/// `x + y sqrt(5)` with rational `x`, `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct QSqrt5 {
    x: BigRational,
    y: BigRational,
}

impl QSqrt5 {
    fn new(x: (i64, i64), y: (i64, i64)) -> Self {
        let r = |(p, q): (i64, i64)| BigRational::new(BigInt::from(p), BigInt::from(q));
        Self { x: r(x), y: r(y) }
    }

    fn int(v: i64) -> Self {
        Self::new((v, 1), (0, 1))
    }

    fn inverse(&self) -> Self {
        let norm = &self.x * &self.x - BigRational::from_integer(5.into()) * &self.y * &self.y;
        Self {
            x: &self.x / &norm,
            y: -&self.y / &norm,
        }
    }

    fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::int(1), |acc, _| &acc * self)
    }
}

impl Add for &QSqrt5 {
    type Output = QSqrt5;
    fn add(self, o: &QSqrt5) -> QSqrt5 {
        QSqrt5 {
            x: &self.x + &o.x,
            y: &self.y + &o.y,
        }
    }
}

impl Sub for &QSqrt5 {
    type Output = QSqrt5;
    fn sub(self, o: &QSqrt5) -> QSqrt5 {
        self + &(-o)
    }
}

impl Neg for &QSqrt5 {
    type Output = QSqrt5;
    fn neg(self) -> QSqrt5 {
        QSqrt5 {
            x: -&self.x,
            y: -&self.y,
        }
    }
}

impl Mul for &QSqrt5 {
    type Output = QSqrt5;
    fn mul(self, o: &QSqrt5) -> QSqrt5 {
        let five = BigRational::from_integer(5.into());
        QSqrt5 {
            x: &self.x * &o.x + five * &self.y * &o.y,
            y: &self.x * &o.y + &self.y * &o.x,
        }
    }
}

/// `(13 - 4b) / (a^2 (a - b)) a^n + (13 - 4a) / (b^2 (b - a)) b^n` with
/// `a, b = (3 +- sqrt 5) / 2`.
fn d_boolean_closed_form(n: u32) -> Result<u64> {
    let a = QSqrt5::new((3, 2), (1, 2));
    let b = QSqrt5::new((3, 2), (-1, 2));
    let thirteen = QSqrt5::int(13);
    let four = QSqrt5::int(4);
    let term = |p: &QSqrt5, q: &QSqrt5| {
        let num = &thirteen - &(&four * q);
        let den = &(p * p) * &(p - q);
        &(&num * &den.inverse()) * &p.pow(n)
    };
    let v = &term(&a, &b) + &term(&b, &a);
    if !v.y.is_zero() || !v.x.denom().is_one() {
        return Err(Error::Unsupported(format!(
            "closed form is not an integer: {} + {} sqrt5",
            v.x, v.y
        )));
    }
    v.x.to_integer()
        .to_u64()
        .ok_or_else(|| Error::Unsupported("closed form overflows 64 bits".into()))
}
