//! The full invariant suite behind `verify-all`: every formula against the
//! graph oracle, every factorization against its four invariants, the
//! coincidence characterizations and the enumeration identities.

use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{self, avoids_all, PatternList, ShortBraidDetector};
use crate::enumerate::{self, Limits};
use crate::error::Result;
use crate::factorize;
use crate::group::{Family, GroupContext, SignedPermutation};
use crate::oracle::{check_delta_lemma, CayleyGraph};
use crate::stats;

/// How many counterexamples a failing check keeps.
const MAX_FAILURES: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub family: Family,
    pub n: usize,
    pub checked: u64,
    pub passed: bool,
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub family: Family,
    pub max_n: usize,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn failed_checks(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

struct Check {
    result: CheckResult,
}

impl Check {
    fn new(name: &'static str, ctx: &GroupContext) -> Self {
        Self {
            result: CheckResult {
                name,
                family: ctx.family,
                n: ctx.rank,
                checked: 0,
                passed: true,
                failures: Vec::new(),
                note: None,
            },
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.result.checked += 1;
        if !ok {
            self.result.passed = false;
            if self.result.failures.len() < MAX_FAILURES {
                self.result.failures.push(what());
            }
        }
    }

    /// Folds in per-element outcomes computed in parallel.
    fn absorb(&mut self, outcomes: Vec<Option<String>>) {
        for o in outcomes {
            let failed = o.is_some();
            self.record(!failed, || o.unwrap_or_default());
        }
    }

    fn done(self) -> CheckResult {
        self.result
    }
}

fn per_element<F>(elems: &[SignedPermutation], f: F) -> Vec<Option<String>>
where
    F: Fn(&SignedPermutation) -> Option<String> + Sync + Send,
{
    elems.par_iter().map(f).collect()
}

fn rank_checks(ctx: &GroupContext, limits: &Limits) -> Result<Vec<CheckResult>> {
    limits.check(ctx)?;
    let g = CayleyGraph::shared(ctx)?;
    let elems = g.vertices();
    let mut out = Vec::new();

    let mut c = Check::new("depth_formula_matches_oracle", ctx);
    c.absorb(per_element(elems, |w| {
        let (f, o) = (stats::dp(w, ctx), g.depth(w).ok()?);
        (f != o).then(|| format!("{w}: formula {f}, oracle {o}"))
    }));
    out.push(c.done());

    let mut c = Check::new("alternate_depth_formula", ctx);
    c.absorb(per_element(elems, |w| {
        let (f, alt) = (stats::dp(w, ctx), stats::depth_alt(w, ctx));
        (f != alt).then(|| format!("{w}: {f} vs {alt}"))
    }));
    out.push(c.done());

    let mut c = Check::new("length_formula_matches_bfs", ctx);
    c.absorb(per_element(elems, |w| {
        let (f, o) = (stats::ell_s(w, ctx), g.ls(w).ok()?);
        (f != o).then(|| format!("{w}: formula {f}, bfs {o}"))
    }));
    out.push(c.done());

    let mut c = Check::new("reflection_length_chain", ctx);
    c.absorb(per_element(elems, |w| {
        let (lt, lr, ls) = (g.lt(w).ok()?, g.lr(w).ok()?, g.ls(w).ok()?);
        let dp = stats::dp(w, ctx);
        let ok = lt <= lr && lr <= ls && 2 * dp == lr + ls;
        (!ok).then(|| format!("{w}: lt {lt}, lr {lr}, ls {ls}, dp {dp}"))
    }));
    out.push(c.done());

    let mut c = Check::new("factorization_invariants", ctx);
    c.absorb(per_element(elems, |w| {
        let f = match factorize::factorize(w, ctx) {
            Ok(f) => f,
            Err(e) => return Some(format!("{w}: {e}")),
        };
        let report = factorize::verify(&f, w, ctx);
        let word_len = factorize::expand_to_word(&f).len() as u64;
        let ok = report.passed() && word_len == stats::ell_s(w, ctx);
        (!ok).then(|| format!("{w}: {report:?}, word length {word_len}"))
    }));
    out.push(c.done());

    let mut c = Check::new("reduced_step_predicate", ctx);
    let ts = ctx.reflections();
    c.absorb(per_element(elems, |w| {
        let lw = stats::ell_s(w, ctx);
        ts.iter().find_map(|&t| {
            let lt = stats::ell_s(&t.to_element(ctx.rank), ctx);
            let lwt = stats::ell_s(&w.right_mul(t), ctx);
            let predicted = factorize::is_reduced_step(w, t, ctx).ok()?;
            (predicted != (lw == lwt + lt)).then(|| format!("{w} {t}"))
        })
    }));
    out.push(c.done());

    let mut c = Check::new("depth_eq_length_iff_short_braid_avoiding", ctx);
    let mut det = ShortBraidDetector::new(ctx)?;
    for w in elems {
        let eq = stats::dp(w, ctx) == stats::ell_s(w, ctx);
        let sba = det.is_short_braid_avoiding(w)?;
        c.record(eq == sba, || {
            format!("{w}: dp=l_S {eq}, short-braid-avoiding {sba}")
        });
    }
    out.push(c.done());

    let mut c = Check::new("boolean_iff_lt_eq_ls", ctx);
    c.absorb(per_element(elems, |w| {
        let boolean = classify::is_boolean(w, ctx).ok()?;
        let (lt, ls) = (g.lt(w).ok()?, g.ls(w).ok()?);
        let dp = stats::dp(w, ctx);
        let ok = boolean == (lt == ls) && (!boolean || dp == ls);
        (!ok).then(|| format!("{w}: boolean {boolean}, lt {lt}, dp {dp}, ls {ls}"))
    }));
    out.push(c.done());

    if ctx.family != Family::A {
        out.extend(pattern_checks(ctx, elems));
    }

    out.extend(enumeration_checks(ctx, limits)?);

    if ctx.rank <= 5 {
        let mut c = Check::new("delta_lemma", ctx);
        let report = check_delta_lemma(ctx)?;
        c.result.checked = report.pairs_checked;
        c.result.passed = report.violations.is_empty();
        c.result.failures = report
            .violations
            .iter()
            .take(MAX_FAILURES)
            .map(|v| format!("{} {}: {} - {} > {}", v.w, v.t, v.dp_w, v.dp_t, v.dp_wt))
            .collect();
        out.push(c.done());
    }
    Ok(out)
}

fn pattern_checks(ctx: &GroupContext, elems: &[SignedPermutation]) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let eq_list = PatternList::depth_eq_length(ctx.family).expect("B or D");
    let bool_list = PatternList::boolean(ctx.family).expect("B or D");
    let published = PatternList::published(ctx.family);

    let mut c = Check::new("depth_eq_length_pattern_characterization", ctx);
    c.absorb(per_element(elems, |w| {
        let eq = stats::dp(w, ctx) == stats::ell_s(w, ctx);
        (eq != avoids_all(w, eq_list)).then(|| format!("{w}: dp=l_S {eq}"))
    }));
    c.result.note = published_note(elems, published[0], eq_list, |w| {
        stats::dp(w, ctx) == stats::ell_s(w, ctx)
    });
    out.push(c.done());

    let mut c = Check::new("boolean_pattern_characterization", ctx);
    c.absorb(per_element(elems, |w| {
        let b = classify::is_boolean(w, ctx).ok()?;
        (b != avoids_all(w, bool_list)).then(|| format!("{w}: boolean {b}"))
    }));
    c.result.note = published_note(elems, published[1], bool_list, |w| {
        classify::is_boolean(w, ctx).unwrap_or(false)
    });
    out.push(c.done());
    out
}

/// Mismatch count of a published list whose amended form is what gets checked.
fn published_note<F>(
    elems: &[SignedPermutation],
    published: PatternList,
    used: PatternList,
    property: F,
) -> Option<String>
where
    F: Fn(&SignedPermutation) -> bool + Sync + Send,
{
    if published == used {
        return None;
    }
    let mismatches = elems
        .par_iter()
        .filter(|w| property(w) != avoids_all(w, published))
        .count();
    Some(format!(
        "checked with {}; the published {} disagrees on {mismatches} elements",
        used.name, published.name
    ))
}

fn enumeration_checks(ctx: &GroupContext, limits: &Limits) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let n = ctx.rank;
    let family = ctx.family;

    if family != Family::A && (family == Family::B || n >= 2) {
        let mut c = Check::new("depth_eq_length_count", ctx);
        let (e, f) = (
            enumerate::count_depth_eq_length(ctx, limits)?,
            enumerate::depth_eq_length_closed_form(ctx)?,
        );
        c.record(e == f, || format!("enumerated {e}, closed form {f}"));
        out.push(c.done());

        let mut c = Check::new("max_depth_profile", ctx);
        let table = enumerate::depth_distribution(ctx, limits)?;
        let (max, count) = stats::max_depth_profile(ctx)?;
        let last = table.rows.last().expect("nonempty group");
        c.record(last.key == max.to_string() && last.count == count, || {
            format!(
                "top row {}:{}, predicted {max}:{count}",
                last.key, last.count
            )
        });
        c.record(table.enumerated_total() as u128 == ctx.order(), || {
            format!("histogram sums to {}", table.enumerated_total())
        });
        out.push(c.done());
    }

    if family != Family::A {
        let mut c = Check::new("boolean_counts", ctx);
        let total = enumerate::count_boolean(ctx, limits)?;
        if family == Family::B || n >= 4 {
            let f = enumerate::boolean_closed_form(ctx)?;
            c.record(total == f, || {
                format!("enumerated {total}, closed form {f}")
            });
        }
        let mut sum = 0;
        for k in 0..=ctx.generators().len() as u64 {
            let e = enumerate::count_boolean_by_length(ctx, k, limits)?;
            let f = enumerate::boolean_by_length_closed_form(ctx, k)?;
            c.record(e == f, || {
                format!("length {k}: enumerated {e}, closed form {f}")
            });
            sum += e;
        }
        c.record(sum == total, || {
            format!("by-length sum {sum}, total {total}")
        });
        out.push(c.done());
    }
    Ok(out)
}

/// Runs every check for ranks `1..=max_n` of `family`.
pub fn run_suite(family: Family, max_n: usize, limits: &Limits) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    for n in 1..=max_n {
        checks.extend(rank_checks(&GroupContext::new(family, n)?, limits)?);
    }
    Ok(SuiteReport {
        family,
        max_n,
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}
