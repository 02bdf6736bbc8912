//! Signed permutations in window notation: parsing, composition,
//! reflections and reduced words.
use coxdepth::{GroupContext, Reflection, SignedPermutation};

fn main() -> coxdepth::Result<()> {
    let b4 = GroupContext::b(4);
    let w: SignedPermutation = "-4,-2,-3,-1".parse()?;
    let u: SignedPermutation = "2,-1,4,3".parse()?;

    println!("w = [{w}], u = [{u}]");
    println!("w u = [{}]", w.compose(&u)?);
    println!("w^-1 = [{}]", w.inverse());
    println!("w(-2) = {}", w.at(-2));

    for t in [
        Reflection::Swap { i: 1, j: 3 },
        Reflection::BarSwap { i: 2, j: 4 },
        Reflection::BarFix { i: 2 },
    ] {
        let word = coxdepth::group::reflection_word(t, &b4)?;
        println!("w {t} = [{}]   ({t} = {word})", w.right_mul(t));
    }

    println!("reduced word of w in B4: {}", b4.reduced_word(&w));
    println!("same window in D4: {}", GroupContext::d(4).reduced_word(&w));
    println!(
        "B4 has {} reflections, D4 has {}",
        b4.reflections().len(),
        GroupContext::d(4).reflections().len()
    );
    Ok(())
}
