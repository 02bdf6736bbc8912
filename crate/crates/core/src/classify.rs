//! When depth coincides with length and reflection length: short-braid
//! avoidance, boolean elements and signed pattern avoidance.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Family, GroupContext, SignedPermutation, SimpleWord};
use crate::oracle::max_order_from_env;
use crate::stats;

/// A short signed permutation used as a pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct SignedPattern(pub &'static [i32]);

/// A named list of patterns whose joint avoidance characterizes a property.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PatternList {
    pub name: &'static str,
    pub patterns: &'static [SignedPattern],
}

macro_rules! patterns {
    ($name:ident, $($p:expr),+ $(,)?) => {
        pub const $name: PatternList = PatternList {
            name: stringify!($name),
            patterns: &[$(SignedPattern(&$p)),+],
        };
    };
}

patterns!(
    B_DEPTH_EQ_LENGTH,
    [-1, -2],
    [-2, -1],
    [1, -2],
    [3, 2, 1],
    [3, 2, -1],
    [3, 1, -2],
);

patterns!(
    D_DEPTH_EQ_LENGTH,
    [-1, -2, -3],
    [1, -2, -3],
    [-2, -1, -3],
    [2, -1, -3],
    [-2, 1, -3],
    [2, 1, -3],
    [-3, -1, -2],
    [3, -1, -2],
    [-3, 1, -2],
    [3, 1, -2],
    [-3, 2, 1],
    [3, 2, 1],
    [-3, 2, -1],
    [3, 2, -1],
    [-1, -3, -2],
    [1, -3, -2],
    [-2, -3, -1],
    [-2, -3, 1],
    [2, -3, -1],
    [2, -3, 1],
);

patterns!(
    B_BOOLEAN,
    [-1, -2],
    [-2, -1],
    [1, -2],
    [3, 2, 1],
    [3, 2, -1],
    [-3, 2, 1],
    [3, -2, 1],
    [3, 4, 1, 2],
    [3, 4, -1, 2],
    [-3, 4, 1, 2],
);

patterns!(
    D_BOOLEAN,
    [-1, -2, -3],
    [-1, -3, -2],
    [-2, -1, -3],
    [-2, -3, -1],
    [-3, -1, -2],
    [-3, -2, -1],
    [3, 2, 1],
    [3, 4, 1, 2],
    [3, 2, -1],
    [3, -1, -2],
    [3, 4, -1, -2],
    [3, 4, -2, -1],
    [-3, 2, 1],
    [-2, -3, 1],
    [-3, 4, 1, 2],
    [-4, -3, 1, 2],
    [1, -2],
    [3, -2, 1],
    [-3, 2, -1],
    [-3, 4, -1, 2],
);

// The two lists above that do not characterize their property under plain
// signed containment, each completed by the single missing pattern found by
// exhaustive search through rank 6.
patterns!(
    B_DEPTH_EQ_LENGTH_AMENDED,
    [-1, -2],
    [-2, -1],
    [1, -2],
    [3, 2, 1],
    [3, 2, -1],
    [3, 1, -2],
    [-3, 2, 1],
);

patterns!(
    D_BOOLEAN_AMENDED,
    [-1, -2, -3],
    [-1, -3, -2],
    [-2, -1, -3],
    [-2, -3, -1],
    [-3, -1, -2],
    [-3, -2, -1],
    [3, 2, 1],
    [3, 4, 1, 2],
    [3, 2, -1],
    [3, -1, -2],
    [3, 4, -1, -2],
    [3, 4, -2, -1],
    [-3, 2, 1],
    [-2, -3, 1],
    [-3, 4, 1, 2],
    [-4, -3, 1, 2],
    [1, -2],
    [3, -2, 1],
    [-3, 2, -1],
    [-3, 4, -1, 2],
    [3, 4, -1, 2],
);

/// The lists as originally published.
pub const PUBLISHED_PATTERN_LISTS: [PatternList; 4] =
    [B_DEPTH_EQ_LENGTH, D_DEPTH_EQ_LENGTH, B_BOOLEAN, D_BOOLEAN];

pub const ALL_PATTERN_LISTS: [PatternList; 6] = [
    B_DEPTH_EQ_LENGTH,
    D_DEPTH_EQ_LENGTH,
    B_BOOLEAN,
    D_BOOLEAN,
    B_DEPTH_EQ_LENGTH_AMENDED,
    D_BOOLEAN_AMENDED,
];

impl PatternList {
    pub fn by_name(name: &str) -> Option<Self> {
        ALL_PATTERN_LISTS.into_iter().find(|l| l.name == name)
    }

    /// The list whose avoidance is equivalent to `dp = l_S` in `family`.
    pub fn depth_eq_length(family: Family) -> Option<Self> {
        match family {
            Family::A => None,
            Family::B => Some(B_DEPTH_EQ_LENGTH_AMENDED),
            Family::D => Some(D_DEPTH_EQ_LENGTH),
        }
    }

    /// The list whose avoidance is equivalent to being boolean in `family`.
    pub fn boolean(family: Family) -> Option<Self> {
        match family {
            Family::A => None,
            Family::B => Some(B_BOOLEAN),
            Family::D => Some(D_BOOLEAN_AMENDED),
        }
    }

    /// The published depth-equals-length and boolean lists for `family`.
    pub fn published(family: Family) -> Vec<Self> {
        match family {
            Family::A => vec![],
            Family::B => vec![B_DEPTH_EQ_LENGTH, B_BOOLEAN],
            Family::D => vec![D_DEPTH_EQ_LENGTH, D_BOOLEAN],
        }
    }
}

/// Whether some subsequence of `w` has the signs of `p` and the same
/// relative order of absolute values.
pub fn contains_pattern(w: &SignedPermutation, p: SignedPattern) -> bool {
    fn embed(w: &[i32], p: &[i32], from: usize, chosen: &mut Vec<i32>) -> bool {
        let k = chosen.len();
        if k == p.len() {
            return true;
        }
        for pos in from..=w.len() - (p.len() - k) {
            let x = w[pos];
            if (x < 0) != (p[k] < 0) {
                continue;
            }
            let consistent = chosen
                .iter()
                .zip(p)
                .all(|(&y, &q)| (y.abs() < x.abs()) == (q.abs() < p[k].abs()));
            if consistent {
                chosen.push(x);
                if embed(w, p, pos + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let (w, p) = (w.window(), p.0);
    p.len() <= w.len() && embed(w, p, 0, &mut Vec::with_capacity(p.len()))
}

pub fn avoids_all(w: &SignedPermutation, list: PatternList) -> bool {
    list.patterns.iter().all(|&p| !contains_pattern(w, p))
}

fn check_cap(ctx: &GroupContext) -> Result<()> {
    let (order, cap) = (ctx.order(), max_order_from_env());
    if order > cap {
        return Err(Error::CapExceeded { order, cap });
    }
    Ok(())
}

/// Memoized search for a reduced word containing a factor `s_i s_j s_i`.
///
/// Such a word either ends in the factor, or is a reduced word of `w s`
/// followed by a right descent `s`. The memo is owned by one detector, so
/// share it across queries on one thread rather than across threads.
#[derive(Debug)]
pub struct ShortBraidDetector {
    ctx: GroupContext,
    memo: HashMap<SignedPermutation, bool>,
}

impl ShortBraidDetector {
    pub fn new(ctx: &GroupContext) -> Result<Self> {
        check_cap(ctx)?;
        Ok(Self {
            ctx: *ctx,
            memo: HashMap::new(),
        })
    }

    fn ends_in_short_braid(&self, w: &SignedPermutation, len: u64) -> bool {
        if len < 3 {
            return false;
        }
        let gens = self.ctx.generators();
        gens.iter().any(|&i| {
            let si = self.ctx.generator(i).expect("listed");
            gens.iter().filter(|&&j| j != i).any(|&j| {
                let sj = self.ctx.generator(j).expect("listed");
                let u = w.right_mul(si).right_mul(sj).right_mul(si);
                stats::ell_s(&u, &self.ctx) + 3 == len
            })
        })
    }

    fn has_short_braid(&mut self, w: &SignedPermutation) -> bool {
        if let Some(&v) = self.memo.get(w) {
            return v;
        }
        let len = stats::ell_s(w, &self.ctx);
        let found = self.ends_in_short_braid(w, len)
            || self.ctx.right_descents(w).into_iter().any(|s| {
                let t = self.ctx.generator(s).expect("listed");
                self.has_short_braid(&w.right_mul(t))
            });
        self.memo.insert(w.clone(), found);
        found
    }

    pub fn is_short_braid_avoiding(&mut self, w: &SignedPermutation) -> Result<bool> {
        self.ctx.check(w)?;
        Ok(!self.has_short_braid(w))
    }
}

/// No reduced word of `w` contains a consecutive factor `s_i s_j s_i`.
pub fn is_short_braid_avoiding(w: &SignedPermutation, ctx: &GroupContext) -> Result<bool> {
    ShortBraidDetector::new(ctx)?.is_short_braid_avoiding(w)
}

/// Same predicate as [`is_short_braid_avoiding`]; in type B these are exactly
/// the fully commutative top-and-bottom elements.
pub fn is_fully_commutative_top_and_bottom(
    w: &SignedPermutation,
    ctx: &GroupContext,
) -> Result<bool> {
    if ctx.family != Family::B {
        return Err(Error::Unsupported(
            "fully commutative top-and-bottom is defined here for type B only".into(),
        ));
    }
    is_short_braid_avoiding(w, ctx)
}

pub fn depth_equals_length(w: &SignedPermutation, ctx: &GroupContext) -> Result<bool> {
    ctx.check(w)?;
    Ok(stats::dp(w, ctx) == stats::ell_s(w, ctx))
}

/// One reduced word (hence every reduced word) has no repeated letter.
pub fn is_boolean(w: &SignedPermutation, ctx: &GroupContext) -> Result<bool> {
    ctx.check(w)?;
    Ok(ctx.reduced_word(w).has_distinct_letters())
}

/// Every reduced word of `w`, sorted lexicographically.
pub fn reduced_words(w: &SignedPermutation, ctx: &GroupContext) -> Result<Vec<SimpleWord>> {
    fn go(
        w: &SignedPermutation,
        ctx: &GroupContext,
        memo: &mut HashMap<SignedPermutation, Vec<Vec<usize>>>,
    ) -> Vec<Vec<usize>> {
        if w.is_identity() {
            return vec![Vec::new()];
        }
        if let Some(v) = memo.get(w) {
            return v.clone();
        }
        let mut out = Vec::new();
        for s in ctx.right_descents(w) {
            let t = ctx.generator(s).expect("listed");
            for mut word in go(&w.right_mul(t), ctx, memo) {
                word.push(s);
                out.push(word);
            }
        }
        memo.insert(w.clone(), out.clone());
        out
    }
    check_cap(ctx)?;
    ctx.check(w)?;
    let mut words = go(w, ctx, &mut HashMap::new());
    words.sort();
    Ok(words.into_iter().map(SimpleWord::new).collect())
}

/// Every predicate of this module evaluated on one element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub short_braid_avoiding: bool,
    pub boolean: bool,
    pub depth_eq_length: bool,
    pub avoids: Vec<(&'static str, bool)>,
}

pub fn classify(w: &SignedPermutation, ctx: &GroupContext) -> Result<Classification> {
    let mut lists: Vec<PatternList> = Vec::new();
    for l in PatternList::published(ctx.family)
        .into_iter()
        .chain(PatternList::depth_eq_length(ctx.family))
        .chain(PatternList::boolean(ctx.family))
    {
        if !lists.contains(&l) {
            lists.push(l);
        }
    }
    let avoids = lists
        .into_iter()
        .map(|l| (l.name, avoids_all(w, l)))
        .collect();
    Ok(Classification {
        short_braid_avoiding: is_short_braid_avoiding(w, ctx)?,
        boolean: is_boolean(w, ctx)?,
        depth_eq_length: depth_equals_length(w, ctx)?,
        avoids,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::elements;
    use crate::oracle::CayleyGraph;

    fn w(v: &[i32]) -> SignedPermutation {
        SignedPermutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn shipped_data_matches_constants() {
        let data: HashMap<String, Vec<Vec<i32>>> =
            serde_json::from_str(include_str!("../data/patterns.json")).unwrap();
        assert_eq!(data.len(), 6);
        for list in ALL_PATTERN_LISTS {
            let ours: Vec<Vec<i32>> = list.patterns.iter().map(|p| p.0.to_vec()).collect();
            assert_eq!(data[list.name], ours, "{}", list.name);
        }
        let sizes: Vec<usize> = ALL_PATTERN_LISTS.iter().map(|l| l.patterns.len()).collect();
        assert_eq!(sizes, vec![6, 20, 10, 20, 7, 21]);
        for list in ALL_PATTERN_LISTS {
            for p in list.patterns {
                assert!(SignedPermutation::new(p.0.to_vec()).is_ok());
                assert!((2..=4).contains(&p.0.len()));
            }
        }
    }

    #[test]
    fn pattern_examples() {
        let x = w(&[-4, -2, -3, -1]);
        assert!(contains_pattern(&x, SignedPattern(&[-2, -1])));
        assert!(!contains_pattern(&x, SignedPattern(&[1, -2])));
        assert!(contains_pattern(&x, SignedPattern(&[-4, -2, -3, -1])));
        let e = SignedPermutation::identity(5);
        assert!(!contains_pattern(&e, SignedPattern(&[-1])));
        assert!(!contains_pattern(&e, SignedPattern(&[2, 1])));
        assert!(!contains_pattern(&w(&[1]), SignedPattern(&[1, 2])));
        for list in ALL_PATTERN_LISTS {
            assert!(avoids_all(&e, list));
        }
        assert!(!avoids_all(&w(&[3, 2, 1]), B_DEPTH_EQ_LENGTH));
    }

    #[test]
    fn predicate_examples() {
        let b2 = GroupContext::b(2);
        assert!(is_short_braid_avoiding(&b2.identity(), &b2).unwrap());
        let s010 = SimpleWord::new(vec![0, 1, 0]).evaluate(&b2).unwrap();
        assert!(!is_short_braid_avoiding(&s010, &b2).unwrap());
        for ctx in [GroupContext::a(4), GroupContext::b(4), GroupContext::d(4)] {
            assert!(depth_equals_length(&ctx.identity(), &ctx).unwrap());
            assert!(is_boolean(&ctx.identity(), &ctx).unwrap());
            for s in ctx.generators() {
                let g = ctx.generator(s).unwrap().to_element(4);
                assert!(depth_equals_length(&g, &ctx).unwrap());
                assert!(is_boolean(&g, &ctx).unwrap());
            }
        }
        assert!(!depth_equals_length(&w(&[-4, -2, -3, -1]), &GroupContext::b(4)).unwrap());
        assert!(is_fully_commutative_top_and_bottom(&w(&[1, 2]), &GroupContext::d(2)).is_err());
    }

    #[test]
    fn small_counts() {
        let b3 = GroupContext::b(3);
        let mut det = ShortBraidDetector::new(&b3).unwrap();
        let sba = elements(&b3)
            .unwrap()
            .iter()
            .filter(|x| det.is_short_braid_avoiding(x).unwrap())
            .count();
        assert_eq!(sba, 14);
        let b2 = GroupContext::b(2);
        let booleans = elements(&b2)
            .unwrap()
            .iter()
            .filter(|x| is_boolean(x, &b2).unwrap())
            .count();
        assert_eq!(booleans, 5);
    }

    #[test]
    fn exhaustive_equivalences() {
        for n in 1..=5 {
            for ctx in [GroupContext::a(n), GroupContext::b(n), GroupContext::d(n)] {
                let g = CayleyGraph::shared(&ctx).unwrap();
                let mut det = ShortBraidDetector::new(&ctx).unwrap();
                for x in g.vertices() {
                    let eq = depth_equals_length(x, &ctx).unwrap();
                    assert_eq!(eq, det.is_short_braid_avoiding(x).unwrap(), "{x} {ctx:?}");
                    if let Some(list) = PatternList::depth_eq_length(ctx.family) {
                        assert_eq!(eq, avoids_all(x, list), "{x} {ctx:?}");
                    }
                    let boolean = is_boolean(x, &ctx).unwrap();
                    let (lt, ls) = (g.lt(x).unwrap(), g.ls(x).unwrap());
                    assert_eq!(boolean, lt == ls, "{x} {ctx:?}");
                    if boolean {
                        assert_eq!(g.depth(x).unwrap(), ls);
                    }
                    if let Some(list) = PatternList::boolean(ctx.family) {
                        assert_eq!(boolean, avoids_all(x, list), "{x} {ctx:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn distinct_letters_is_all_or_none() {
        for n in 1..=4 {
            for ctx in [GroupContext::a(n), GroupContext::b(n), GroupContext::d(n)] {
                let rank = ctx.generators().len() as u64;
                for x in elements(&ctx).unwrap() {
                    // longer words repeat a letter by pigeonhole
                    if stats::ell_s(&x, &ctx) > rank {
                        assert!(!is_boolean(&x, &ctx).unwrap());
                        continue;
                    }
                    let words = reduced_words(&x, &ctx).unwrap();
                    assert!(words.iter().all(|u| u.evaluate(&ctx).unwrap() == x));
                    let distinct: Vec<bool> =
                        words.iter().map(|u| u.has_distinct_letters()).collect();
                    assert!(distinct.iter().all(|&d| d == distinct[0]), "{x} {ctx:?}");
                }
            }
        }
    }

    #[test]
    fn published_lists_miss_one_pattern_each() {
        let b3 = GroupContext::b(3);
        let x = w(&[-3, 2, 1]);
        // t13 t_{-1,1} is reduced with depth 2 + 1 < 4
        assert_eq!(stats::dp(&x, &b3), 3);
        assert_eq!(stats::ell_s(&x, &b3), 4);
        assert!(avoids_all(&x, B_DEPTH_EQ_LENGTH));
        assert!(!avoids_all(&x, B_DEPTH_EQ_LENGTH_AMENDED));

        let d5 = GroupContext::d(5);
        let y = w(&[-2, 4, 5, -1, 3]);
        assert!(!is_boolean(&y, &d5).unwrap());
        assert!(avoids_all(&y, D_BOOLEAN));
        assert!(!avoids_all(&y, D_BOOLEAN_AMENDED));
    }

    #[test]
    fn reduced_word_count_of_longest_b3_element() {
        let b3 = GroupContext::b(3);
        let words = reduced_words(&SignedPermutation::negative_identity(3), &b3).unwrap();
        assert_eq!(words.len(), 42);
        assert!(words.iter().all(|u| u.len() == 9));
    }
}
