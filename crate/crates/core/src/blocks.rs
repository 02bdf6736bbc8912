//! Direct sums and the type B / type D block decompositions.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::group::{Family, GroupContext, SignedPermutation};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum BlockFlavor {
    #[default]
    B,
    D,
}

/// Block boundaries of a decomposition.
///
/// `cuts` holds the last position of every block (so the final cut is the
/// rank), and `parities[k]` is `true` when block `k` has an odd number of
/// negative entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDecomposition {
    pub cuts: Vec<usize>,
    pub parities: Vec<bool>,
    #[serde(skip)]
    pub flavor: BlockFlavor,
}

impl BlockDecomposition {
    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }

    /// Half-open position ranges `(start, end)`, 0-based.
    pub fn ranges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let starts = std::iter::once(0).chain(self.cuts.iter().copied());
        starts.zip(self.cuts.iter().copied())
    }

    /// Each block re-indexed to start at 1.
    pub fn blocks(&self, w: &SignedPermutation) -> Vec<SignedPermutation> {
        self.ranges().map(|(lo, hi)| restrict(w, lo, hi)).collect()
    }

    pub fn odd_blocks(&self) -> usize {
        self.parities.iter().filter(|&&p| p).count()
    }
}

/// The window positions `lo..hi` (0-based, half-open) of `w`, shifted down so
/// that they form a signed permutation of `[hi - lo]`. The caller guarantees
/// that `lo` and `hi` are block boundaries.
pub(crate) fn restrict(w: &SignedPermutation, lo: usize, hi: usize) -> SignedPermutation {
    let shift = lo as i32;
    let window = w.window()[lo..hi]
        .iter()
        .map(|&x| x.signum() * (x.abs() - shift))
        .collect();
    SignedPermutation::from_window_unchecked(window)
}

/// `(u ⊕ v)(i) = u(i)` for `i <= k`, and `sign(v(i-k)) (|v(i-k)| + k)` after.
pub fn direct_sum(u: &SignedPermutation, v: &SignedPermutation) -> SignedPermutation {
    let k = u.rank() as i32;
    let window = u
        .window()
        .iter()
        .copied()
        .chain(v.window().iter().map(|&x| x.signum() * (x.abs() + k)))
        .collect();
    SignedPermutation::from_window_unchecked(window)
}

/// Direct sum of a non-empty sequence of blocks.
pub fn direct_sum_all<'a, I>(blocks: I) -> Option<SignedPermutation>
where
    I: IntoIterator<Item = &'a SignedPermutation>,
{
    blocks.into_iter().fold(None, |acc, b| match acc {
        None => Some(b.clone()),
        Some(a) => Some(direct_sum(&a, b)),
    })
}

/// Positions `p` (1-based) after which `w` splits: `{|w(1)|, ..., |w(p)|} = [p]`.
fn b_cuts(w: &SignedPermutation) -> Vec<usize> {
    let mut cuts = Vec::new();
    let mut max_abs = 0;
    for (k, &x) in w.window().iter().enumerate() {
        max_abs = max_abs.max(x.unsigned_abs() as usize);
        if max_abs == k + 1 {
            cuts.push(k + 1);
        }
    }
    cuts
}

fn negative_parities(w: &SignedPermutation, cuts: &[usize]) -> Vec<bool> {
    let mut lo = 0;
    cuts.iter()
        .map(|&hi| {
            let negs = w.window()[lo..hi].iter().filter(|&&x| x < 0).count();
            lo = hi;
            negs % 2 == 1
        })
        .collect()
}

/// The unique splitting into B-indecomposable blocks.
pub fn b_decompose(w: &SignedPermutation) -> BlockDecomposition {
    let cuts = b_cuts(w);
    let parities = negative_parities(w, &cuts);
    BlockDecomposition {
        cuts,
        parities,
        flavor: BlockFlavor::B,
    }
}

/// B-oddness: the number of B-blocks with an odd number of negative entries.
pub fn oddness_b(w: &SignedPermutation) -> usize {
    b_decompose(w).odd_blocks()
}

fn require_d(w: &SignedPermutation) -> Result<()> {
    GroupContext::new(Family::D, w.rank())?.check(w)
}

/// The type D decomposition: cut exactly at the B-cuts whose prefix holds an
/// even number of negative entries.
pub fn d_decompose(w: &SignedPermutation) -> Result<BlockDecomposition> {
    require_d(w)?;
    let b = b_decompose(w);
    let mut cuts = Vec::new();
    let mut odd = false;
    for (&cut, &p) in b.cuts.iter().zip(&b.parities) {
        odd ^= p;
        if !odd {
            cuts.push(cut);
        }
    }
    let parities = vec![false; cuts.len()];
    Ok(BlockDecomposition {
        cuts,
        parities,
        flavor: BlockFlavor::D,
    })
}

/// D-oddness: number of B-blocks minus number of D-blocks.
pub fn oddness_d(w: &SignedPermutation) -> Result<usize> {
    let d = d_decompose(w)?;
    Ok(b_decompose(w).len() - d.len())
}

/// Oddness for whichever family the context names; 0 in type A.
pub fn oddness(w: &SignedPermutation, ctx: &GroupContext) -> Result<usize> {
    match ctx.family {
        Family::A => Ok(0),
        Family::B => Ok(oddness_b(w)),
        Family::D => oddness_d(w),
    }
}

/// Number of B-blocks inside each D-block of `w`.
pub fn b_blocks_per_d_block(w: &SignedPermutation) -> Result<Vec<usize>> {
    let d = d_decompose(w)?;
    let b = b_decompose(w);
    Ok(d.ranges()
        .map(|(lo, hi)| b.cuts.iter().filter(|&&c| c > lo && c <= hi).count())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::elements;

    fn w(v: &[i32]) -> SignedPermutation {
        SignedPermutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn direct_sum_examples() {
        assert_eq!(direct_sum(&w(&[1]), &w(&[1])), w(&[1, 2]));
        assert_eq!(
            direct_sum(&w(&[4, -3, 1, -2]), &w(&[3, 1, -2])),
            w(&[4, -3, 1, -2, 7, 5, -6])
        );
        assert_eq!(direct_sum(&w(&[-2, 1]), &w(&[-1])), w(&[-2, 1, -3]));
    }

    #[test]
    fn b_decomposition_examples() {
        let x = w(&[4, -3, 1, -2, 7, 5, -6, 9, -8]);
        let dec = b_decompose(&x);
        assert_eq!(dec.cuts, vec![4, 7, 9]);
        assert_eq!(
            dec.blocks(&x),
            vec![w(&[4, -3, 1, -2]), w(&[3, 1, -2]), w(&[2, -1])]
        );
        assert_eq!(oddness_b(&x), 2);

        let y = w(&[-8, 1, 9, 3, 5, 2, -6, 4, 7]);
        assert_eq!(b_decompose(&y).cuts, vec![9]);
        assert_eq!(oddness_b(&y), 0);

        assert_eq!(
            b_decompose(&SignedPermutation::identity(5)).cuts,
            vec![1, 2, 3, 4, 5]
        );
        assert_eq!(oddness_b(&SignedPermutation::identity(5)), 0);
        assert_eq!(oddness_b(&SignedPermutation::negative_identity(6)), 6);
    }

    #[test]
    fn d_decomposition_examples() {
        let x = w(&[-2, 1, 3, 4, -5, -7, -8, 6]);
        let dec = d_decompose(&x).unwrap();
        assert_eq!(dec.cuts, vec![5, 8]);
        assert_eq!(dec.blocks(&x), vec![w(&[-2, 1, 3, 4, -5]), w(&[-2, -3, 1])]);
        assert_eq!(b_blocks_per_d_block(&x).unwrap(), vec![4, 1]);
        assert_eq!(oddness_d(&x).unwrap(), 3);

        assert_eq!(
            d_decompose(&SignedPermutation::identity(4)).unwrap().cuts,
            vec![1, 2, 3, 4]
        );
        assert_eq!(oddness_d(&SignedPermutation::identity(4)).unwrap(), 0);
        assert_eq!(d_decompose(&w(&[-2, -1])).unwrap().cuts, vec![2]);

        for n in 2..=8 {
            let mut v: Vec<i32> = (1..=n).collect();
            v[0] = -1;
            v[n as usize - 1] = -n;
            assert_eq!(oddness_d(&w(&v)).unwrap(), n as usize - 1);
        }
        assert!(d_decompose(&w(&[-1, 2])).is_err());
        assert!(oddness_d(&w(&[-1, 2])).is_err());
    }

    #[test]
    fn json_shape() {
        let dec = b_decompose(&w(&[4, -3, 1, -2, 7, 5, -6, 9, -8]));
        assert_eq!(
            serde_json::to_string(&dec).unwrap(),
            r#"{"cuts":[4,7,9],"parities":[false,true,true]}"#
        );
    }

    #[test]
    fn exhaustive_block_properties() {
        for n in 1..=6 {
            for x in elements(&GroupContext::b(n)).unwrap() {
                let dec = b_decompose(&x);
                let blocks = dec.blocks(&x);
                assert_eq!(direct_sum_all(&blocks).unwrap(), x);
                // every block is B-indecomposable
                for b in &blocks {
                    assert_eq!(b_decompose(b).len(), 1);
                }
            }
            for x in elements(&GroupContext::d(n)).unwrap() {
                let dd = d_decompose(&x).unwrap();
                let blocks = dd.blocks(&x);
                assert_eq!(direct_sum_all(&blocks).unwrap(), x);
                for b in &blocks {
                    assert_eq!(d_decompose(b).unwrap().len(), 1);
                    // first and last B-sub-blocks odd, interior ones even
                    let sub = b_decompose(b);
                    if sub.len() > 1 {
                        let p = &sub.parities;
                        assert!(p[0] && p[p.len() - 1], "{x}");
                        assert!(p[1..p.len() - 1].iter().all(|&q| !q), "{x}");
                    }
                }
                let ob = oddness_b(&x);
                let od = oddness_d(&x).unwrap();
                assert!(2 * od >= ob, "{x}");
            }
        }
    }

    #[test]
    fn oddness_is_additive() {
        let all3 = elements(&GroupContext::b(3)).unwrap();
        let all2 = elements(&GroupContext::b(2)).unwrap();
        for u in &all3 {
            for v in &all2 {
                let s = direct_sum(u, v);
                assert_eq!(oddness_b(&s), oddness_b(u) + oddness_b(v));
                if u.neg() % 2 == 0 && v.neg() % 2 == 0 {
                    assert_eq!(
                        oddness_d(&s).unwrap(),
                        oddness_d(u).unwrap() + oddness_d(v).unwrap()
                    );
                }
            }
        }
    }
}
