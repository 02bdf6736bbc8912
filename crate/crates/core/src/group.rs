//! Signed permutations in window notation, the reflection catalog, simple
//! generator words, and element enumeration for the groups S_n, B_n, D_n.
//!
//! Every element is stored as the window `[w(1), ..., w(n)]`; the values on
//! negative positions follow from `w(-i) = -w(i)`. Type A elements are the
//! sign-free windows, type D elements the windows with an even number of
//! negative entries.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of elements [`enumerate_group`] will stream.
pub const DEFAULT_ENUMERATION_CAP: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    D,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" | "S" | "s" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "D" | "d" => Ok(Family::D),
            other => Err(Error::Unsupported(format!("unknown family {other:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => "A",
            Family::B => "B",
            Family::D => "D",
        };
        f.write_str(c)
    }
}

/// A rank together with a family; fixes the simple generators, the
/// reflections and which formulas apply.
///
/// Type A of rank `n` is the symmetric group S_n acting on `[n]`, so it has
/// `n - 1` simple generators. Types B and D have `n` generators, except that
/// D_1 is the trivial group and has none.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupContext {
    pub family: Family,
    pub rank: usize,
}

impl GroupContext {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        Ok(Self { family, rank })
    }

    pub fn a(rank: usize) -> Self {
        Self::new(Family::A, rank).expect("positive rank")
    }

    pub fn b(rank: usize) -> Self {
        Self::new(Family::B, rank).expect("positive rank")
    }

    pub fn d(rank: usize) -> Self {
        Self::new(Family::D, rank).expect("positive rank")
    }

    /// Number of elements: n!, 2^n n!, or 2^(n-1) n!.
    pub fn order(&self) -> u128 {
        let fact: u128 = (1..=self.rank as u128).product();
        match self.family {
            Family::A => fact,
            Family::B => fact << self.rank,
            Family::D => fact << (self.rank - 1),
        }
    }

    /// Simple generator letters: `1..n` for type A, `0..n` for B and D.
    pub fn generators(&self) -> Vec<usize> {
        match self.family {
            Family::A => (1..self.rank).collect(),
            Family::B => (0..self.rank).collect(),
            Family::D if self.rank >= 2 => (0..self.rank).collect(),
            Family::D => Vec::new(),
        }
    }

    /// The reflection a simple generator letter stands for.
    pub fn generator(&self, letter: usize) -> Result<Reflection> {
        let t = match (letter, self.family) {
            (0, Family::B) => Reflection::BarFix { i: 1 },
            (0, Family::D) => Reflection::BarSwap { i: 1, j: 2 },
            (0, Family::A) => return Err(Error::Unsupported("type A has no generator s_0".into())),
            (l, _) => Reflection::Swap { i: l, j: l + 1 },
        };
        self.check_reflection(t)?;
        Ok(t)
    }

    pub fn identity(&self) -> SignedPermutation {
        SignedPermutation::identity(self.rank)
    }

    pub fn contains(&self, w: &SignedPermutation) -> bool {
        self.check(w).is_ok()
    }

    /// Checks that `w` is an element of this group.
    pub fn check(&self, w: &SignedPermutation) -> Result<()> {
        if w.rank() != self.rank {
            return Err(Error::RankMismatch {
                left: w.rank(),
                right: self.rank,
            });
        }
        match self.family {
            Family::A if w.neg() > 0 => Err(Error::NegativeInTypeA {
                window: w.window.clone(),
            }),
            Family::D if w.neg() % 2 == 1 => Err(Error::OddNegativeCount {
                window: w.window.clone(),
                rank: self.rank,
            }),
            _ => Ok(()),
        }
    }

    pub fn is_legal(&self, t: Reflection) -> bool {
        self.check_reflection(t).is_ok()
    }

    pub fn check_reflection(&self, t: Reflection) -> Result<()> {
        let n = self.rank;
        let ok = match t {
            Reflection::Swap { i, j } => 1 <= i && i < j && j <= n,
            Reflection::BarSwap { i, j } => self.family != Family::A && 1 <= i && i < j && j <= n,
            Reflection::BarFix { i } => self.family == Family::B && 1 <= i && i <= n,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::IllegalReflection {
                reflection: t.to_string(),
                family: self.family,
                rank: n,
            })
        }
    }

    /// All reflections of the group: the `t_ij`, then the `t_{-i j}`, then
    /// the `t_{-i i}`, each in lexicographic order of indices.
    pub fn reflections(&self) -> Vec<Reflection> {
        let n = self.rank;
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                out.push(Reflection::Swap { i, j });
            }
        }
        if self.family != Family::A {
            for i in 1..=n {
                for j in i + 1..=n {
                    out.push(Reflection::BarSwap { i, j });
                }
            }
        }
        if self.family == Family::B {
            out.extend((1..=n).map(|i| Reflection::BarFix { i }));
        }
        out
    }

    /// Parses a window and checks membership in this group.
    pub fn parse(&self, text: &str) -> Result<SignedPermutation> {
        let w: SignedPermutation = text.parse()?;
        self.check(&w)?;
        Ok(w)
    }

    /// Right multiplication `w * t`, rejecting reflections foreign to the group.
    pub fn apply_reflection(
        &self,
        w: &SignedPermutation,
        t: Reflection,
    ) -> Result<SignedPermutation> {
        self.check_reflection(t)?;
        if w.rank() != self.rank {
            return Err(Error::RankMismatch {
                left: w.rank(),
                right: self.rank,
            });
        }
        Ok(w.right_mul(t))
    }

    /// Whether `w * s` is shorter than `w` for the generator `letter`.
    pub fn is_right_descent(&self, w: &SignedPermutation, letter: usize) -> bool {
        let win = &w.window;
        match (letter, self.family) {
            (0, Family::B) => win[0] < 0,
            (0, Family::D) => win[0] + win[1] < 0,
            (0, Family::A) => false,
            (l, _) => win[l - 1] > win[l],
        }
    }

    pub fn right_descents(&self, w: &SignedPermutation) -> Vec<usize> {
        self.generators()
            .into_iter()
            .filter(|&l| self.is_right_descent(w, l))
            .collect()
    }

    /// One reduced word, built by repeatedly peeling off the smallest right
    /// descent.
    pub fn reduced_word(&self, w: &SignedPermutation) -> SimpleWord {
        let mut cur = w.clone();
        let mut rev = Vec::new();
        while let Some(l) = self
            .generators()
            .into_iter()
            .find(|&l| self.is_right_descent(&cur, l))
        {
            cur = cur.right_mul(self.generator(l).expect("generator"));
            rev.push(l);
        }
        rev.reverse();
        SimpleWord { letters: rev }
    }
}

/// A bijection of `[-n, n] \ {0}` commuting with negation, stored by its
/// window.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i32>", into = "Vec<i32>")]
pub struct SignedPermutation {
    window: Vec<i32>,
}

impl SignedPermutation {
    pub fn new(window: Vec<i32>) -> Result<Self> {
        let n = window.len();
        if n == 0 {
            return Err(Error::ZeroRank);
        }
        let mut seen = vec![false; n + 1];
        for &x in &window {
            let a = x.unsigned_abs() as usize;
            if a == 0 || a > n || seen[a] {
                return Err(Error::NotAPermutation { window, rank: n });
            }
            seen[a] = true;
        }
        Ok(Self { window })
    }

    pub(crate) fn from_window_unchecked(window: Vec<i32>) -> Self {
        debug_assert!(Self::new(window.clone()).is_ok());
        Self { window }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            window: (1..=n as i32).collect(),
        }
    }

    /// `[-1, -2, ..., -n]`.
    pub fn negative_identity(n: usize) -> Self {
        Self {
            window: (1..=n as i32).map(|x| -x).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i32] {
        &self.window
    }

    pub fn into_window(self) -> Vec<i32> {
        self.window
    }

    pub fn is_identity(&self) -> bool {
        self.window
            .iter()
            .enumerate()
            .all(|(k, &x)| x == k as i32 + 1)
    }

    /// `w(i)` for `i` in `[-n, n] \ {0}`.
    pub fn at(&self, i: i32) -> i32 {
        if i > 0 {
            self.window[i as usize - 1]
        } else {
            -self.window[(-i) as usize - 1]
        }
    }

    /// Number of negative window entries.
    pub fn neg(&self) -> usize {
        self.window.iter().filter(|&&x| x < 0).count()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.rank()];
        for (k, &x) in self.window.iter().enumerate() {
            let pos = k as i32 + 1;
            inv[x.unsigned_abs() as usize - 1] = pos * x.signum();
        }
        Self { window: inv }
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch {
                left: self.rank(),
                right: other.rank(),
            });
        }
        let window = other.window.iter().map(|&v| self.at(v)).collect();
        Ok(Self { window })
    }

    /// Right multiplication by a reflection, acting on window positions.
    ///
    /// Panics if an index of `t` exceeds the rank.
    pub fn right_mul(&self, t: Reflection) -> Self {
        let mut window = self.window.clone();
        match t {
            Reflection::Swap { i, j } => window.swap(i - 1, j - 1),
            Reflection::BarSwap { i, j } => {
                window.swap(i - 1, j - 1);
                window[i - 1] = -window[i - 1];
                window[j - 1] = -window[j - 1];
            }
            Reflection::BarFix { i } => window[i - 1] = -window[i - 1],
        }
        Self { window }
    }
}

impl TryFrom<Vec<i32>> for SignedPermutation {
    type Error = Error;

    fn try_from(window: Vec<i32>) -> Result<Self> {
        Self::new(window)
    }
}

impl From<SignedPermutation> for Vec<i32> {
    fn from(w: SignedPermutation) -> Self {
        w.window
    }
}

impl FromStr for SignedPermutation {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let window = text
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                match tok.parse::<i32>() {
                    Ok(x) if x != 0 && !tok.starts_with('+') => Ok(x),
                    _ => Err(Error::MalformedToken {
                        token: tok.to_string(),
                    }),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(window)
    }
}

impl fmt::Display for SignedPermutation {
    /// Comma-separated window, the same format [`FromStr`] accepts.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, x) in self.window.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// JSON form of an element: `{"family":"B","window":[-2,1,3]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypedElement {
    pub family: Family,
    pub window: Vec<i32>,
}

impl TypedElement {
    pub fn new(family: Family, w: &SignedPermutation) -> Self {
        Self {
            family,
            window: w.window.clone(),
        }
    }

    pub fn into_parts(self) -> Result<(GroupContext, SignedPermutation)> {
        let w = SignedPermutation::new(self.window)?;
        let ctx = GroupContext::new(self.family, w.rank())?;
        ctx.check(&w)?;
        Ok((ctx, w))
    }
}

/// A reflection, with 1-based indices.
///
/// `Swap { i, j }` is `t_ij`, `BarSwap { i, j }` is `t_{-i j}` and
/// `BarFix { i }` is `t_{-i i}`; in the first two `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Reflection {
    Swap { i: usize, j: usize },
    BarSwap { i: usize, j: usize },
    BarFix { i: usize },
}

impl Reflection {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Reflection::Swap { .. } => "Swap",
            Reflection::BarSwap { .. } => "BarSwap",
            Reflection::BarFix { .. } => "BarFix",
        }
    }

    /// The two indices; `BarFix` repeats its index.
    pub fn indices(&self) -> (usize, usize) {
        match *self {
            Reflection::Swap { i, j } | Reflection::BarSwap { i, j } => (i, j),
            Reflection::BarFix { i } => (i, i),
        }
    }

    /// Shift both indices right by `offset` positions.
    pub fn shifted(self, offset: usize) -> Self {
        match self {
            Reflection::Swap { i, j } => Reflection::Swap {
                i: i + offset,
                j: j + offset,
            },
            Reflection::BarSwap { i, j } => Reflection::BarSwap {
                i: i + offset,
                j: j + offset,
            },
            Reflection::BarFix { i } => Reflection::BarFix { i: i + offset },
        }
    }

    /// The reflection as a group element of rank `n`.
    pub fn to_element(self, n: usize) -> SignedPermutation {
        SignedPermutation::identity(n).right_mul(self)
    }
}

impl fmt::Display for Reflection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reflection::Swap { i, j } => write!(f, "t[{i},{j}]"),
            Reflection::BarSwap { i, j } => write!(f, "t[-{i},{j}]"),
            Reflection::BarFix { i } => write!(f, "t[-{i},{i}]"),
        }
    }
}

/// A word in the simple generators. Letter 0 is `s_0^B` or `s_0^D`
/// depending on the context; letter `k >= 1` is `s_k`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SimpleWord {
    pub letters: Vec<usize>,
}

impl SimpleWord {
    pub fn new(letters: Vec<usize>) -> Self {
        Self { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The product `s_{a_1} s_{a_2} ... s_{a_k}` in `ctx`.
    pub fn evaluate(&self, ctx: &GroupContext) -> Result<SignedPermutation> {
        let mut w = ctx.identity();
        for &l in &self.letters {
            w = w.right_mul(ctx.generator(l)?);
        }
        Ok(w)
    }

    pub fn extend(&mut self, other: &SimpleWord) {
        self.letters.extend_from_slice(&other.letters);
    }

    /// Whether no letter occurs twice.
    pub fn has_distinct_letters(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.letters.iter().all(|l| seen.insert(*l))
    }
}

impl fmt::Display for SimpleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "s{l}")?;
        }
        Ok(())
    }
}

/// The palindromic reduced word of a reflection.
pub fn reflection_word(t: Reflection, ctx: &GroupContext) -> Result<SimpleWord> {
    ctx.check_reflection(t)?;
    let mut letters = Vec::new();
    match t {
        Reflection::Swap { i, j } => {
            letters.extend((i + 1..j).rev());
            letters.push(i);
            letters.extend(i + 1..j);
        }
        Reflection::BarFix { i } => {
            letters.extend((1..i).rev());
            letters.push(0);
            letters.extend(1..i);
        }
        Reflection::BarSwap { i, j } => {
            letters.extend((1..i).rev());
            letters.extend((2..j).rev());
            match ctx.family {
                Family::B => letters.extend([0, 1, 0]),
                _ => letters.push(0),
            }
            letters.extend(2..j);
            letters.extend(1..i);
        }
    }
    Ok(SimpleWord { letters })
}

/// Streams every element of the group exactly once, in lexicographic order
/// of windows.
pub fn enumerate_group(ctx: &GroupContext, cap: u128) -> Result<Elements> {
    let order = ctx.order();
    if order > cap {
        return Err(Error::CapExceeded { order, cap });
    }
    Ok(Elements::new(*ctx))
}

/// Convenience wrapper collecting [`enumerate_group`] with the default cap.
pub fn elements(ctx: &GroupContext) -> Result<Vec<SignedPermutation>> {
    Ok(enumerate_group(ctx, DEFAULT_ENUMERATION_CAP)?.collect())
}

/// Lexicographic backtracking over windows.
#[derive(Debug, Clone)]
pub struct Elements {
    ctx: GroupContext,
    candidates: Vec<i32>,
    choice: Vec<usize>,
    used: Vec<bool>,
    started: bool,
}

impl Elements {
    fn new(ctx: GroupContext) -> Self {
        let n = ctx.rank as i32;
        let candidates = match ctx.family {
            Family::A => (1..=n).collect(),
            _ => (-n..=-1).chain(1..=n).collect(),
        };
        Self {
            ctx,
            candidates,
            choice: Vec::with_capacity(ctx.rank),
            used: vec![false; ctx.rank + 1],
            started: false,
        }
    }

    fn slot(&self, c: usize) -> usize {
        self.candidates[c].unsigned_abs() as usize
    }

    fn advance(&mut self) -> bool {
        let mut from = 0;
        if self.started {
            match self.choice.pop() {
                Some(last) => {
                    let s = self.slot(last);
                    self.used[s] = false;
                    from = last + 1;
                }
                None => return false,
            }
        }
        self.started = true;
        loop {
            let next = (from..self.candidates.len()).find(|&c| !self.used[self.slot(c)]);
            match next {
                Some(c) => {
                    let s = self.slot(c);
                    self.used[s] = true;
                    self.choice.push(c);
                    if self.choice.len() == self.ctx.rank {
                        return true;
                    }
                    from = 0;
                }
                None => match self.choice.pop() {
                    Some(last) => {
                        let s = self.slot(last);
                        self.used[s] = false;
                        from = last + 1;
                    }
                    None => return false,
                },
            }
        }
    }
}

impl Iterator for Elements {
    type Item = SignedPermutation;

    fn next(&mut self) -> Option<SignedPermutation> {
        loop {
            if !self.advance() {
                return None;
            }
            let window: Vec<i32> = self.choice.iter().map(|&c| self.candidates[c]).collect();
            if self.ctx.family == Family::D && window.iter().filter(|&&x| x < 0).count() % 2 == 1 {
                continue;
            }
            return Some(SignedPermutation { window });
        }
    }
}
