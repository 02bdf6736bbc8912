//! Depth-realizing reduced reflection factorizations.
//!
//! Both algorithms sort `w` to the identity by right multiplication with
//! reflections, one block at a time. Reading the applied reflections in
//! reverse gives `w = t_1 ... t_r` with `sum dp(t_k) = dp(w)` and
//! `sum l_S(t_k) = l_S(w)`.
//!
//! Type B (per B-block):
//! 1. *shuffle*: while some entry sits left of its natural position
//!    (`w(i) > i`), take the largest such entry and swap it with the smallest
//!    entry in positions `i+1 ..= w(i)`;
//! 2. *unsign*: swap-and-negate the two negative entries of largest absolute
//!    value, or negate the only negative entry; then back to 1.
//!
//! Type D (per D-block), ignoring the trailing run of fixed points:
//! 1. *shuffle* inside the last B-block as above;
//! 2. *join*: if there is more than one B-block, swap the first position of
//!    the last B-block with its left neighbour and go back to 1;
//! 3. *unsign* the two most negative entries, then back to 1.

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::blocks::{self, restrict};
use crate::error::Result;
use crate::group::{
    reflection_word, Family, GroupContext, Reflection, SignedPermutation, SimpleWord,
};
use crate::stats;

/// An ordered reflection factorization `w = t_1 ... t_r` with its costs and
/// the prefixes `w_k = t_1 ... t_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub ctx: GroupContext,
    pub reflections: Vec<Reflection>,
    pub depth_cost: u64,
    pub length_cost: u64,
    /// `w_0 = e, w_1, ..., w_r`.
    pub trace: Vec<SignedPermutation>,
}

impl Factorization {
    /// Builds the cost ledger and trace for a reflection sequence.
    pub fn new(ctx: GroupContext, reflections: Vec<Reflection>) -> Result<Self> {
        let mut trace = Vec::with_capacity(reflections.len() + 1);
        let mut cur = ctx.identity();
        trace.push(cur.clone());
        let mut depth_cost = 0;
        for &t in &reflections {
            depth_cost += stats::reflection_depth(t, &ctx)?;
            cur = cur.right_mul(t);
            trace.push(cur.clone());
        }
        // l_S(t) = 2 dp(t) - 1 for every reflection
        let length_cost = 2 * depth_cost - reflections.len() as u64;
        Ok(Self {
            ctx,
            reflections,
            depth_cost,
            length_cost,
            trace,
        })
    }

    pub fn len(&self) -> usize {
        self.reflections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reflections.is_empty()
    }

    /// The product `t_1 ... t_r`.
    pub fn product(&self) -> SignedPermutation {
        self.trace
            .last()
            .cloned()
            .unwrap_or_else(|| self.ctx.identity())
    }
}

impl Serialize for Factorization {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let steps: Vec<ReflectionJson> = self
            .reflections
            .iter()
            .map(|&t| ReflectionJson::new(t, self.ctx.family))
            .collect();
        let mut s = serializer.serialize_struct("Factorization", 5)?;
        s.serialize_field("family", &self.ctx.family)?;
        s.serialize_field("reflections", &steps)?;
        s.serialize_field("depth_cost", &self.depth_cost)?;
        s.serialize_field("length_cost", &self.length_cost)?;
        s.serialize_field("trace", &self.trace)?;
        s.end()
    }
}

/// `{"kind":"BarSwap","i":1,"j":4,"dp":4}`; `BarFix` has no `j`.
#[derive(Debug, Clone, Serialize)]
pub struct ReflectionJson {
    pub kind: &'static str,
    pub i: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    pub dp: u64,
}

impl ReflectionJson {
    pub fn new(t: Reflection, family: Family) -> Self {
        let (i, j) = t.indices();
        Self {
            kind: t.kind_name(),
            i,
            j: match t {
                Reflection::BarFix { .. } => None,
                _ => Some(j),
            },
            dp: stats::reflection_depth_unchecked(t, family),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StepKind {
    Shuffle,
    Join,
    Unsign,
}

/// One right multiplication performed while sorting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SortStep {
    pub kind: StepKind,
    #[serde(serialize_with = "ser_display")]
    pub reflection: Reflection,
    pub before: SignedPermutation,
    pub after: SignedPermutation,
}

fn ser_display<S: Serializer>(t: &Reflection, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(t)
}

fn position_of_largest_exceedance(u: &[i32], range: std::ops::Range<usize>) -> Option<usize> {
    range.filter(|&k| u[k] > k as i32 + 1).max_by_key(|&k| u[k])
}

/// Step 1 move for the entry at 0-based position `p`: the swap partner is the
/// smallest entry among positions `p+2 ..= u[p]` (1-based).
fn shuffle_move(u: &[i32], p: usize) -> Reflection {
    let i = p + 1;
    let target = u[p] as usize;
    let j = (i + 1..=target)
        .min_by_key(|&j| u[j - 1])
        .expect("an exceedance has a nonempty range");
    Reflection::Swap { i, j }
}

/// The two negative entries of largest absolute value, as 1-based positions
/// `(i, j)` with `i < j`.
fn two_most_negative(u: &[i32]) -> Option<(usize, usize)> {
    let mut negs: Vec<usize> = (0..u.len()).filter(|&k| u[k] < 0).collect();
    negs.sort_by_key(|&k| u[k]);
    match negs[..] {
        [a, b, ..] => Some((a.min(b) + 1, a.max(b) + 1)),
        _ => None,
    }
}

/// After the shuffle phase: entries beyond the largest negative absolute
/// value `k` are fixed points, the first `k` entries form one B-block, and
/// every positive entry sits at or right of its natural position.
pub(crate) fn shuffle_observation_holds(u: &SignedPermutation) -> bool {
    let win = u.window();
    let k = win
        .iter()
        .filter(|&&x| x < 0)
        .map(|&x| x.unsigned_abs() as usize)
        .max()
        .unwrap_or(0);
    let tail_fixed = win[k..]
        .iter()
        .enumerate()
        .all(|(p, &x)| x == (k + p + 1) as i32);
    let settled = win
        .iter()
        .enumerate()
        .all(|(p, &x)| x < 0 || x <= p as i32 + 1);
    let head_block = k == 0 || blocks::b_decompose(&restrict(u, 0, k)).len() == 1;
    tail_fixed && settled && head_block
}

/// Sorts one B-indecomposable block; returns the applied moves in order.
fn sort_b_block(block: &SignedPermutation) -> Vec<(StepKind, Reflection)> {
    let mut u = block.clone();
    let m = u.rank();
    let mut moves = Vec::new();
    loop {
        while let Some(p) = position_of_largest_exceedance(u.window(), 0..m) {
            let t = shuffle_move(u.window(), p);
            moves.push((StepKind::Shuffle, t));
            u = u.right_mul(t);
        }
        debug_assert!(shuffle_observation_holds(&u), "{u}");
        let t = match two_most_negative(u.window()) {
            Some((i, j)) => Reflection::BarSwap { i, j },
            None => match u.window().iter().position(|&x| x < 0) {
                Some(p) => Reflection::BarFix { i: p + 1 },
                None => break,
            },
        };
        moves.push((StepKind::Unsign, t));
        u = u.right_mul(t);
    }
    debug_assert!(u.is_identity());
    moves
}

/// Sorts one D-indecomposable block; returns the applied moves in order.
fn sort_d_block(block: &SignedPermutation) -> Vec<(StepKind, Reflection)> {
    let mut u = block.clone();
    let mut moves = Vec::new();
    loop {
        let win = u.window();
        let trailing = win
            .iter()
            .enumerate()
            .rev()
            .take_while(|&(p, &x)| x == p as i32 + 1)
            .count();
        let relevant = win.len() - trailing;
        if relevant == 0 {
            break;
        }
        let cuts = blocks::b_decompose(&u).cuts;
        let start = cuts
            .iter()
            .rev()
            .find(|&&c| c < relevant)
            .copied()
            .unwrap_or(0);
        let (kind, t) = if let Some(p) = position_of_largest_exceedance(win, start..relevant) {
            (StepKind::Shuffle, shuffle_move(win, p))
        } else if start > 0 {
            (
                StepKind::Join,
                Reflection::Swap {
                    i: start,
                    j: start + 1,
                },
            )
        } else {
            let (i, j) =
                two_most_negative(win).expect("a non-identity settled D-block has negatives");
            (StepKind::Unsign, Reflection::BarSwap { i, j })
        };
        moves.push((kind, t));
        u = u.right_mul(t);
    }
    moves
}

fn run_blocks(
    w: &SignedPermutation,
    ranges: Vec<(usize, usize)>,
    sort_block: fn(&SignedPermutation) -> Vec<(StepKind, Reflection)>,
) -> Vec<Vec<SortStep>> {
    let mut cur = w.clone();
    ranges
        .into_iter()
        .map(|(lo, hi)| {
            sort_block(&restrict(w, lo, hi))
                .into_iter()
                .map(|(kind, t)| {
                    let t = t.shifted(lo);
                    let before = cur.clone();
                    cur = cur.right_mul(t);
                    SortStep {
                        kind,
                        reflection: t,
                        before,
                        after: cur.clone(),
                    }
                })
                .collect()
        })
        .collect()
}

/// Steps of the type B algorithm, grouped by B-block from left to right.
/// Also valid for unsigned permutations, where only shuffles occur.
pub fn sort_b_steps(w: &SignedPermutation) -> Vec<Vec<SortStep>> {
    let ranges = blocks::b_decompose(w).ranges().collect();
    run_blocks(w, ranges, sort_b_block)
}

/// Steps of the type D algorithm, grouped by D-block from left to right.
pub fn sort_d_steps(w: &SignedPermutation) -> Result<Vec<Vec<SortStep>>> {
    let ranges = blocks::d_decompose(w)?.ranges().collect();
    Ok(run_blocks(w, ranges, sort_d_block))
}

/// Each block's applied moves reversed, blocks concatenated left to right.
fn assemble(ctx: GroupContext, per_block: Vec<Vec<SortStep>>) -> Factorization {
    let reflections = per_block
        .into_iter()
        .flat_map(|steps| steps.into_iter().rev().map(|s| s.reflection))
        .collect();
    Factorization::new(ctx, reflections).expect("algorithm emits legal reflections")
}

/// Type B algorithm on `w ∈ B_n`.
pub fn sort_b(w: &SignedPermutation) -> Factorization {
    assemble(GroupContext::b(w.rank()), sort_b_steps(w))
}

/// Type D algorithm on `w ∈ D_n`.
pub fn sort_d(w: &SignedPermutation) -> Result<Factorization> {
    Ok(assemble(GroupContext::d(w.rank()), sort_d_steps(w)?))
}

/// Dispatches on the family; type A uses the type B algorithm, which only
/// ever shuffles on unsigned input.
pub fn factorize(w: &SignedPermutation, ctx: &GroupContext) -> Result<Factorization> {
    ctx.check(w)?;
    match ctx.family {
        Family::A => Ok(assemble(*ctx, sort_b_steps(w))),
        Family::B => Ok(sort_b(w)),
        Family::D => sort_d(w),
    }
}

/// Whether `l_S(w) = l_S(w t) + l_S(t)`, read off the window of `w`.
pub fn is_reduced_step(w: &SignedPermutation, t: Reflection, ctx: &GroupContext) -> Result<bool> {
    ctx.check_reflection(t)?;
    let at = |k: usize| w.window()[k - 1];
    let ok = match t {
        Reflection::Swap { i, j } => {
            at(i) > at(j) && (i + 1..j).all(|k| at(i) > at(k) && at(k) > at(j))
        }
        Reflection::BarSwap { i, j } => {
            let (wi, wj) = (at(i), at(j));
            let centre = match ctx.family {
                Family::D => wi + wj < 0,
                _ => wi < 0 && wj < 0,
            };
            centre
                && (1..i).all(|k| at(k) > wi && at(k) + wj < 0)
                && (1..j)
                    .filter(|&k| k != i)
                    .all(|k| at(k) > wj && wi + at(k) < 0)
        }
        Reflection::BarFix { i } => at(i) < 0 && (1..i).all(|k| at(k).abs() < at(i).abs()),
    };
    Ok(ok)
}

/// Concatenation of the reflection words of `t_1, ..., t_r`.
pub fn expand_to_word(f: &Factorization) -> SimpleWord {
    let mut word = SimpleWord::default();
    for &t in &f.reflections {
        word.extend(&reflection_word(t, &f.ctx).expect("legal reflection"));
    }
    word
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    /// `t_1 ... t_r == w` and the stored trace matches.
    pub product: bool,
    /// `sum dp(t_k) == dp(w)`.
    pub depth: bool,
    /// `sum l_S(t_k) == l_S(w)`.
    pub length: bool,
    /// every step `w_{k-1} -> w_k` is reduced.
    pub reduced_chain: bool,
    pub expected_depth: u64,
    pub expected_length: u64,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.product && self.depth && self.length && self.reduced_chain
    }
}

/// Recomputes every invariant of `f` against `w` from scratch.
pub fn verify(f: &Factorization, w: &SignedPermutation, ctx: &GroupContext) -> VerifyReport {
    let mut cur = ctx.identity();
    let mut trace = vec![cur.clone()];
    let mut reduced_chain = true;
    let mut legal = true;
    let mut depth_sum = 0;
    for &t in &f.reflections {
        if !ctx.is_legal(t) {
            legal = false;
            break;
        }
        cur = cur.right_mul(t);
        depth_sum += stats::reflection_depth_unchecked(t, ctx.family);
        reduced_chain &= is_reduced_step(&cur, t, ctx).unwrap_or(false);
        trace.push(cur.clone());
    }
    if !ctx.contains(w) {
        return VerifyReport {
            product: false,
            depth: false,
            length: false,
            reduced_chain: false,
            expected_depth: 0,
            expected_length: 0,
        };
    }
    let expected_depth = stats::dp(w, ctx);
    let expected_length = stats::ell_s(w, ctx);
    let length_sum = if legal {
        2 * depth_sum - f.reflections.len() as u64
    } else {
        0
    };
    VerifyReport {
        product: legal && cur == *w && trace == f.trace,
        depth: legal && depth_sum == expected_depth && f.depth_cost == depth_sum,
        length: legal && length_sum == expected_length && f.length_cost == length_sum,
        reduced_chain: legal && reduced_chain,
        expected_depth,
        expected_length,
    }
}
