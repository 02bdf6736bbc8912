//! Step-by-step run of the type B sorting algorithm.
//!
//!     cargo run --example sort_type_b -- "-6,-3,-2,8,7,5,9,-4,-1"
use coxdepth::factorize::{sort_b, sort_b_steps, verify};
use coxdepth::{stats, GroupContext, SignedPermutation};

fn main() -> coxdepth::Result<()> {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "-6,-3,-2,8,7,5,9,-4,-1".into());
    let w: SignedPermutation = text.parse()?;
    let ctx = GroupContext::b(w.rank());

    for (k, block) in sort_b_steps(&w).iter().enumerate() {
        println!("block {}", k + 1);
        for s in block {
            let dp = stats::reflection_depth(s.reflection, &ctx)?;
            println!(
                "  {:<8} {:<9} dp {dp}  -> [{}]",
                format!("{:?}", s.kind),
                s.reflection.to_string(),
                s.after
            );
        }
    }
    let f = sort_b(&w);
    let line: Vec<String> = f.reflections.iter().map(|t| t.to_string()).collect();
    println!("w = {}", line.join(" "));
    println!("cost {} = dp(w) = {}", f.depth_cost, stats::dp(&w, &ctx));
    println!("{:?}", verify(&f, &w, &ctx));
    Ok(())
}
