//! B- and D-block decompositions and the oddness corrections.
use coxdepth::blocks::{b_decompose, d_decompose, direct_sum_all, oddness_b, oddness_d};
use coxdepth::SignedPermutation;

fn main() -> coxdepth::Result<()> {
    let w: SignedPermutation = "-2,1,3,4,-5,-7,-8,6".parse()?;
    let b = b_decompose(&w);
    let d = d_decompose(&w)?;
    println!("w = [{w}]");
    for (name, dec) in [("B", &b), ("D", &d)] {
        let parts: Vec<String> = dec.blocks(&w).iter().map(|x| format!("[{x}]")).collect();
        println!("{name}-blocks: {}", parts.join(" + "));
    }
    println!("o^B = {}, o^D = {}", oddness_b(&w), oddness_d(&w)?);
    assert_eq!(direct_sum_all(&b.blocks(&w)), Some(w));
    Ok(())
}
