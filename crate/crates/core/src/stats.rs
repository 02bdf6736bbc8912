//! Closed-form statistics: Coxeter length, reflection depths, and the depth
//! formula with its correction terms.
//!
//! The depth of an element is
//!
//! ```text
//! type A:  sum of exceedances  sum_{w(i) > i} (w(i) - i)
//! type B:  exceedances + sum_{w(i) < 0} |w(i)| + (o^B(w) - neg(w)) / 2
//! type D:  exceedances + sum_{w(i) < 0} |w(i)| + (o^D(w) - neg(w))
//! ```
//!
//! where `o^B`, `o^D` are the oddness statistics of [`crate::blocks`].

use serde::{Deserialize, Serialize};

use crate::blocks;
use crate::error::{Error, Result};
use crate::group::{Family, GroupContext, Reflection, SignedPermutation};

/// The pieces of the inversion-count length formula.
///
/// `total` is `inv + neg + nsp` in type B, `inv + nsp` in type D and `inv`
/// in type A. A pair may be counted both in `inv` and in `nsp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthBreakdown {
    pub inv: u64,
    pub neg: u64,
    pub nsp: u64,
    pub total: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthBreakdown {
    pub exceedance_sum: u64,
    pub neg_abs_sum: u64,
    pub oddness: u64,
    /// `(o^B - neg) / 2` in type B, `o^D - neg` in type D, 0 in type A.
    pub correction: i64,
    pub total: u64,
}

pub fn length(w: &SignedPermutation, ctx: &GroupContext) -> LengthBreakdown {
    let win = w.window();
    let n = win.len();
    let mut inv = 0;
    let mut nsp = 0;
    for a in 0..n {
        for b in a + 1..n {
            if win[a] > win[b] {
                inv += 1;
            }
            if win[a] + win[b] < 0 {
                nsp += 1;
            }
        }
    }
    let neg = w.neg() as u64;
    let total = match ctx.family {
        Family::A => inv,
        Family::B => inv + neg + nsp,
        Family::D => inv + nsp,
    };
    LengthBreakdown {
        inv,
        neg,
        nsp,
        total,
    }
}

/// Coxeter length, the `total` of [`length`].
pub fn ell_s(w: &SignedPermutation, ctx: &GroupContext) -> u64 {
    length(w, ctx).total
}

/// Depth of a reflection: `j - i` for `t_ij`; `i + j - 1` (B) or
/// `i + j - 2` (D) for `t_{-i j}`; `i` for `t_{-i i}`.
pub fn reflection_depth(t: Reflection, ctx: &GroupContext) -> Result<u64> {
    ctx.check_reflection(t)?;
    Ok(reflection_depth_unchecked(t, ctx.family))
}

pub(crate) fn reflection_depth_unchecked(t: Reflection, family: Family) -> u64 {
    let d = match t {
        Reflection::Swap { i, j } => j - i,
        Reflection::BarSwap { i, j } if family == Family::D => i + j - 2,
        Reflection::BarSwap { i, j } => i + j - 1,
        Reflection::BarFix { i } => i,
    };
    d as u64
}

/// `sum_{i in [n], w(i) > i} (w(i) - i)`.
pub fn exceedance_sum(w: &SignedPermutation) -> u64 {
    w.window()
        .iter()
        .enumerate()
        .map(|(k, &x)| (x as i64 - (k as i64 + 1)).max(0) as u64)
        .sum()
}

/// `sum_{w(i) < 0} |w(i)|`.
pub fn neg_abs_sum(w: &SignedPermutation) -> u64 {
    w.window()
        .iter()
        .filter(|&&x| x < 0)
        .map(|&x| x.unsigned_abs() as u64)
        .sum()
}

/// Depth through the closed formula.
///
/// Panics if `w` is not an element of `ctx` (for instance an odd window in
/// type D, where the D-oddness is undefined).
pub fn depth(w: &SignedPermutation, ctx: &GroupContext) -> DepthBreakdown {
    if let Err(e) = ctx.check(w) {
        panic!("depth of a non-member: {e}");
    }
    let exceedance_sum = exceedance_sum(w);
    let neg = w.neg() as i64;
    let (neg_abs_sum, oddness, correction) = match ctx.family {
        Family::A => (0, 0, 0),
        Family::B => {
            let o = blocks::oddness_b(w) as i64;
            // each block's negative count has the parity the block records
            assert_eq!((o - neg).rem_euclid(2), 0, "o^B and neg have equal parity");
            (neg_abs_sum(w), o, (o - neg) / 2)
        }
        Family::D => {
            let o = blocks::oddness_d(w).expect("checked membership") as i64;
            (neg_abs_sum(w), o, o - neg)
        }
    };
    let total = exceedance_sum as i64 + neg_abs_sum as i64 + correction;
    debug_assert!(total >= 0);
    DepthBreakdown {
        exceedance_sum,
        neg_abs_sum,
        oddness: oddness as u64,
        correction,
        total: total as u64,
    }
}

/// The depth total alone.
pub fn dp(w: &SignedPermutation, ctx: &GroupContext) -> u64 {
    depth(w, ctx).total
}

/// The alternate depth formula, summing exceedances over all of
/// `[-n, n] \ {0}`:
///
/// ```text
/// type B:  ( S + o^B - neg ) / 2
/// type D:  ( S - 2 neg ) / 2 + o^D
/// ```
///
/// In type A the two-sided sum is twice the exceedance sum.
pub fn depth_alt(w: &SignedPermutation, ctx: &GroupContext) -> u64 {
    if let Err(e) = ctx.check(w) {
        panic!("depth of a non-member: {e}");
    }
    let n = w.rank() as i32;
    let two_sided: i64 = (-n..=n)
        .filter(|&i| i != 0)
        .map(|i| (w.at(i) - i) as i64)
        .filter(|&d| d > 0)
        .sum();
    let neg = w.neg() as i64;
    let doubled = match ctx.family {
        Family::A => two_sided,
        Family::B => two_sided + blocks::oddness_b(w) as i64 - neg,
        Family::D => {
            two_sided - 2 * neg + 2 * blocks::oddness_d(w).expect("checked membership") as i64
        }
    };
    assert_eq!(doubled % 2, 0);
    (doubled / 2) as u64
}

/// Maximal depth in B_n or D_n and how many elements attain it.
///
/// B_n: `n(n+1)/2`, attained only by `[-1, ..., -n]`. D_n: `C(n,2) +
/// floor(n/2)`, attained by `2^((n-2)/2)` elements for even `n` and
/// `2^((n+1)/2)` for odd `n`.
pub fn max_depth_profile(ctx: &GroupContext) -> Result<(u64, u64)> {
    let n = ctx.rank as u64;
    match ctx.family {
        Family::A => Err(Error::Unsupported(
            "max_depth_profile covers types B and D only".into(),
        )),
        Family::B => Ok((n * (n + 1) / 2, 1)),
        Family::D if n < 2 => Err(Error::Unsupported(
            "max_depth_profile for type D needs rank at least 2".into(),
        )),
        Family::D => {
            let max = n * (n - 1) / 2 + n / 2;
            let achievers = if n.is_multiple_of(2) {
                1 << ((n - 2) / 2)
            } else {
                1 << (n.div_ceil(2))
            };
            Ok((max, achievers))
        }
    }
}
