//! Brute-force baselines on the fully enumerated group.
//!
//! Nothing here uses the closed formulas: lengths come from a breadth-first
//! search over the simple generators, and the reflection set is generated as
//! the union of conjugacy classes of the generators.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, VecDeque};
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{
    enumerate_group, Family, GroupContext, Reflection, SignedPermutation, SimpleWord,
};
use crate::stats;

/// Default vertex cap for graph construction.
pub const DEFAULT_MAX_ORDER: u128 = 1_000_000;

/// Environment variable overriding [`DEFAULT_MAX_ORDER`].
pub const MAX_ORDER_ENV: &str = "COXDEPTH_MAX_ORDER";

const UNSEEN: u32 = u32::MAX;

/// The cap in effect: `COXDEPTH_MAX_ORDER` if set and numeric, else the default.
pub fn max_order_from_env() -> u128 {
    std::env::var(MAX_ORDER_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_ORDER)
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Lehmer rank of `|w|` combined with the sign pattern. Injective on
/// signed permutations of a fixed rank, and dense on `[0, n! 2^n)`.
fn slot(w: &[i32], signed: bool) -> usize {
    let n = w.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = w[i + 1..].iter().filter(|x| x.abs() < w[i].abs()).count();
        rank = rank * (n - i) + smaller;
    }
    if !signed {
        return rank;
    }
    let signs = w
        .iter()
        .enumerate()
        .fold(0, |acc, (k, &x)| acc | (usize::from(x < 0) << k));
    (rank << n) | signs
}

/// A shortest-path witness edge.
#[derive(Debug, Clone, Copy)]
struct ReflectionEdge {
    element: usize,
    weight: u64,
    length: u32,
}

/// The Bruhat graph of a finite classical group: vertices are elements, and
/// `w -- wt` for every reflection `t`, weighted by `(l_S(t) + 1) / 2`.
///
/// Adjacency is generated on demand from the reflection list through the
/// vertex index, so memory stays linear in the group order.
#[derive(Debug)]
pub struct CayleyGraph {
    pub ctx: GroupContext,
    vertices: Vec<SignedPermutation>,
    index: Vec<u32>,
    generators: Vec<usize>,
    reflections: Vec<ReflectionEdge>,
    ls: Vec<u32>,
    depth: OnceLock<Vec<u64>>,
    lt: OnceLock<Vec<u32>>,
    lr: OnceLock<Vec<u32>>,
}

impl CayleyGraph {
    /// Enumerates the group and computes `l_S` and the reflection set.
    pub fn build(ctx: &GroupContext, cap: u128) -> Result<Self> {
        let vertices: Vec<SignedPermutation> = enumerate_group(ctx, cap)?.collect();
        let signed = ctx.family != Family::A;
        let table_len = factorial(ctx.rank) << if signed { ctx.rank } else { 0 };
        let mut index = vec![UNSEEN; table_len];
        for (k, v) in vertices.iter().enumerate() {
            index[slot(v.window(), signed)] = k as u32;
        }
        let mut graph = Self {
            ctx: *ctx,
            vertices,
            index,
            generators: Vec::new(),
            reflections: Vec::new(),
            ls: Vec::new(),
            depth: OnceLock::new(),
            lt: OnceLock::new(),
            lr: OnceLock::new(),
        };
        graph.generators = ctx
            .generators()
            .into_iter()
            .map(|s| graph.vertex_of(&ctx.generator(s).expect("listed").to_element(ctx.rank)))
            .collect();
        graph.ls = graph.bfs(|g, v, push| {
            for &s in &g.generators {
                push(g.mul(v, s));
            }
        });
        graph.reflections = graph.conjugacy_closure();
        Ok(graph)
    }

    /// A graph shared across callers for each `(family, rank)`, built under
    /// the cap from [`max_order_from_env`].
    pub fn shared(ctx: &GroupContext) -> Result<Arc<Self>> {
        static CACHE: OnceLock<Mutex<HashMap<GroupContext, Arc<CayleyGraph>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(g) = cache.lock().expect("cache lock").get(ctx) {
            return Ok(g.clone());
        }
        let g = Arc::new(Self::build(ctx, max_order_from_env())?);
        cache
            .lock()
            .expect("cache lock")
            .entry(*ctx)
            .or_insert(g.clone());
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[SignedPermutation] {
        &self.vertices
    }

    fn vertex_of(&self, w: &SignedPermutation) -> usize {
        self.index[slot(w.window(), self.ctx.family != Family::A)] as usize
    }

    /// Vertex index of `w`, if it is an element of this group.
    pub fn lookup(&self, w: &SignedPermutation) -> Result<usize> {
        if w.rank() != self.ctx.rank {
            return Err(Error::RankMismatch {
                left: w.rank(),
                right: self.ctx.rank,
            });
        }
        self.ctx.check(w)?;
        Ok(self.vertex_of(w))
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let p = self.vertices[a]
            .compose(&self.vertices[b])
            .expect("same rank");
        self.vertex_of(&p)
    }

    /// `{x s x^-1 : x in W, s in S}`, sorted by vertex index.
    fn conjugacy_closure(&self) -> Vec<ReflectionEdge> {
        let mut seen = vec![false; self.order()];
        for (x, v) in self.vertices.iter().enumerate() {
            let inv = self.vertex_of(&v.inverse());
            for &s in &self.generators {
                seen[self.mul(self.mul(x, s), inv)] = true;
            }
        }
        seen.iter()
            .enumerate()
            .filter(|&(_, &b)| b)
            .map(|(t, _)| ReflectionEdge {
                element: t,
                weight: u64::from(self.ls[t]).div_ceil(2),
                length: self.ls[t],
            })
            .collect()
    }

    /// The reflections, recovered as elements.
    pub fn reflection_elements(&self) -> Vec<SignedPermutation> {
        self.reflections
            .iter()
            .map(|r| self.vertices[r.element].clone())
            .collect()
    }

    /// Unweighted single-source distances from the identity.
    fn bfs<F>(&self, neighbours: F) -> Vec<u32>
    where
        F: Fn(&Self, usize, &mut dyn FnMut(usize)),
    {
        let mut dist = vec![UNSEEN; self.order()];
        let start = self.vertex_of(&self.ctx.identity());
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v] + 1;
            neighbours(self, v, &mut |u| {
                if dist[u] == UNSEEN {
                    dist[u] = d;
                    queue.push_back(u);
                }
            });
        }
        dist
    }

    fn depth_table(&self) -> &[u64] {
        self.depth.get_or_init(|| {
            let mut dist = vec![u64::MAX; self.order()];
            let start = self.vertex_of(&self.ctx.identity());
            dist[start] = 0;
            let mut heap = BinaryHeap::from([Reverse((0u64, start))]);
            while let Some(Reverse((d, v))) = heap.pop() {
                if d > dist[v] {
                    continue;
                }
                for r in &self.reflections {
                    let u = self.mul(v, r.element);
                    let nd = d + r.weight;
                    if nd < dist[u] {
                        dist[u] = nd;
                        heap.push(Reverse((nd, u)));
                    }
                }
            }
            dist
        })
    }

    fn lt_table(&self) -> &[u32] {
        self.lt.get_or_init(|| {
            self.bfs(|g, v, push| {
                for r in &g.reflections {
                    push(g.mul(v, r.element));
                }
            })
        })
    }

    fn lr_table(&self) -> &[u32] {
        self.lr.get_or_init(|| {
            self.bfs(|g, v, push| {
                for r in &g.reflections {
                    let u = g.mul(v, r.element);
                    if g.ls[u] == g.ls[v] + r.length {
                        push(u);
                    }
                }
            })
        })
    }

    /// Minimum weight of a path from `e` to `w`.
    pub fn depth(&self, w: &SignedPermutation) -> Result<u64> {
        Ok(self.depth_table()[self.lookup(w)?])
    }

    /// Minimum number of reflections with product `w`.
    pub fn lt(&self, w: &SignedPermutation) -> Result<u64> {
        Ok(self.lt_table()[self.lookup(w)?].into())
    }

    /// Minimum number of reflections along a chain that is increasing in
    /// right weak order.
    pub fn lr(&self, w: &SignedPermutation) -> Result<u64> {
        Ok(self.lr_table()[self.lookup(w)?].into())
    }

    /// Minimum number of simple generators with product `w`.
    pub fn ls(&self, w: &SignedPermutation) -> Result<u64> {
        Ok(self.ls[self.lookup(w)?].into())
    }

    /// All four statistics for every vertex, in vertex order.
    pub fn table(&self) -> Vec<OracleRow> {
        let (dp, lt, lr) = (self.depth_table(), self.lt_table(), self.lr_table());
        (0..self.order())
            .map(|k| OracleRow {
                window: self.vertices[k].window().to_vec(),
                dp: dp[k],
                lt: lt[k].into(),
                lr: lr[k].into(),
                ls: self.ls[k].into(),
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleRow {
    pub window: Vec<i32>,
    pub dp: u64,
    pub lt: u64,
    pub lr: u64,
    pub ls: u64,
}

pub fn oracle_depth(w: &SignedPermutation, ctx: &GroupContext) -> Result<u64> {
    CayleyGraph::shared(ctx)?.depth(w)
}

pub fn oracle_lt(w: &SignedPermutation, ctx: &GroupContext) -> Result<u64> {
    CayleyGraph::shared(ctx)?.lt(w)
}

pub fn oracle_lr(w: &SignedPermutation, ctx: &GroupContext) -> Result<u64> {
    CayleyGraph::shared(ctx)?.lr(w)
}

pub fn oracle_ls(w: &SignedPermutation, ctx: &GroupContext) -> Result<u64> {
    CayleyGraph::shared(ctx)?.ls(w)
}

/// Reflection length by letter omission: the least `k` such that deleting
/// `k` letters from one reduced word of `w` leaves a word for the identity.
pub fn dyer_reflection_length(w: &SignedPermutation, ctx: &GroupContext) -> Result<u64> {
    ctx.check(w)?;
    let word = ctx.reduced_word(w);
    let n = word.len();
    for k in 0..=n {
        let mut found = false;
        for_each_subset(n, k, &mut |dropped| {
            if found {
                return;
            }
            let letters = (0..n)
                .filter(|p| !dropped.contains(p))
                .map(|p| word.letters[p])
                .collect();
            found = SimpleWord::new(letters)
                .evaluate(ctx)
                .map(|e| e.is_identity())
                .unwrap_or(false);
        });
        if found {
            return Ok(k as u64);
        }
    }
    unreachable!("dropping every letter leaves the identity")
}

fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for p in start..n {
            cur.push(p);
            go(p + 1, n, k, cur, f);
            cur.pop();
        }
    }
    go(0, n, k, &mut Vec::with_capacity(k), f);
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaViolation {
    pub w: SignedPermutation,
    #[serde(serialize_with = "ser_display")]
    pub t: Reflection,
    pub dp_w: u64,
    pub dp_t: u64,
    pub dp_wt: u64,
}

fn ser_display<S: serde::Serializer>(t: &Reflection, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(t)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaReport {
    pub pairs_checked: u64,
    pub violations: Vec<DeltaViolation>,
}

/// Checks `dp(w) - dp(t) <= dp(wt)` over every element and reflection,
/// using the closed depth formula.
pub fn check_delta_lemma(ctx: &GroupContext) -> Result<DeltaReport> {
    let elems: Vec<SignedPermutation> = enumerate_group(ctx, max_order_from_env())?.collect();
    let ts = ctx.reflections();
    let mut report = DeltaReport {
        pairs_checked: 0,
        violations: Vec::new(),
    };
    for w in &elems {
        let dp_w = stats::dp(w, ctx);
        for &t in &ts {
            let dp_t = stats::reflection_depth_unchecked(t, ctx.family);
            let dp_wt = stats::dp(&w.right_mul(t), ctx);
            report.pairs_checked += 1;
            if dp_w > dp_t + dp_wt {
                report.violations.push(DeltaViolation {
                    w: w.clone(),
                    t,
                    dp_w,
                    dp_t,
                    dp_wt,
                });
            }
        }
    }
    Ok(report)
}
