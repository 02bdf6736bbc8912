//! Step-by-step run of the type D sorting algorithm, including the joins
//! that merge B-blocks of odd sign.
//!
//!     cargo run --example sort_type_d -- "5,-1,-3,2,-4,6,9,-8,7"
use coxdepth::factorize::{expand_to_word, sort_d, sort_d_steps, verify};
use coxdepth::{stats, GroupContext, SignedPermutation};

fn main() -> coxdepth::Result<()> {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "5,-1,-3,2,-4,6,9,-8,7".into());
    let w: SignedPermutation = text.parse()?;
    let ctx = GroupContext::d(w.rank());

    for s in sort_d_steps(&w)?.iter().flatten() {
        let dp = stats::reflection_depth(s.reflection, &ctx)?;
        println!(
            "{:<8} {:<9} dp {dp}  [{}] -> [{}]",
            format!("{:?}", s.kind),
            s.reflection.to_string(),
            s.before,
            s.after
        );
    }
    let f = sort_d(&w)?;
    println!(
        "{} reflections, cost {} = dp(w) = {}",
        f.len(),
        f.depth_cost,
        stats::dp(&w, &ctx)
    );
    println!("as simple generators: {}", expand_to_word(&f));
    println!("{}", serde_json::to_string(&verify(&f, &w, &ctx)).unwrap());
    Ok(())
}
