//! When does depth equal length, and when do all three of l_T, dp, l_S agree?
use coxdepth::classify::{avoids_all, classify, PatternList, ShortBraidDetector};
use coxdepth::group::{elements, Family};
use coxdepth::{stats, GroupContext};

fn main() -> coxdepth::Result<()> {
    let w = "-3,2,1".parse()?;
    let b3 = GroupContext::b(3);
    println!("[{w}] in B3: {:?}", classify(&w, &b3)?);
    println!("dp {} vs l_S {}", stats::dp(&w, &b3), stats::ell_s(&w, &b3));

    for family in [Family::B, Family::D] {
        let ctx = GroupContext::new(family, 4)?;
        let list = PatternList::depth_eq_length(family).unwrap();
        let mut det = ShortBraidDetector::new(&ctx)?;
        let (mut eq, mut agree) = (0, 0);
        for x in elements(&ctx)? {
            let sba = det.is_short_braid_avoiding(&x)?;
            eq += usize::from(sba);
            agree += usize::from(sba == avoids_all(&x, list));
        }
        println!(
            "{family}4: {eq} short-braid-avoiding elements; {} agrees on {agree}/{}",
            list.name,
            ctx.order()
        );
    }
    Ok(())
}
