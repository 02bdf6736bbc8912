//! Length and depth breakdowns of one element in each family.
//!
//!     cargo run --example depth_statistics -- "5,-1,-3,2,-4,6,9,-8,7"
use coxdepth::group::Family;
use coxdepth::{stats, GroupContext, SignedPermutation};

fn main() -> coxdepth::Result<()> {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "-4,-2,-3,-1".into());
    let w: SignedPermutation = text.parse()?;
    for family in [Family::A, Family::B, Family::D] {
        let ctx = GroupContext::new(family, w.rank())?;
        if !ctx.contains(&w) {
            println!("{family}{}: not an element", w.rank());
            continue;
        }
        let l = stats::length(&w, &ctx);
        let d = stats::depth(&w, &ctx);
        println!(
            "{family}{}: l_S = {} (inv {}, neg {}, nsp {}), dp = {} (exc {}, |neg| {}, oddness {}, correction {})",
            w.rank(),
            l.total,
            l.inv,
            l.neg,
            l.nsp,
            d.total,
            d.exceedance_sum,
            d.neg_abs_sum,
            d.oddness,
            d.correction
        );
    }
    Ok(())
}
