//! Brute-force depth, l_T, l_R and l_S from the Bruhat graph, compared with
//! the closed formula over a whole group.
use coxdepth::oracle::CayleyGraph;
use coxdepth::{stats, GroupContext};

fn main() -> coxdepth::Result<()> {
    let ctx = GroupContext::d(4);
    let g = CayleyGraph::build(&ctx, 1_000_000)?;
    println!(
        "{} vertices, {} reflections",
        g.order(),
        g.reflection_elements().len()
    );

    let mut disagreements = 0;
    let mut strict = 0;
    for row in g.table() {
        let w = coxdepth::SignedPermutation::new(row.window.clone())?;
        disagreements += usize::from(row.dp != stats::dp(&w, &ctx));
        if row.lt < row.lr && row.lr < row.ls {
            strict += 1;
            if strict <= 3 {
                println!(
                    "[{w}]: l_T {} < l_R {} < l_S {}, dp {}",
                    row.lt, row.lr, row.ls, row.dp
                );
            }
        }
    }
    println!("formula disagrees with the graph on {disagreements} elements");
    println!("{strict} elements have l_T < l_R < l_S");
    Ok(())
}
