//! Depth histograms and coincidence counts next to their closed forms,
//! written as CSV.
use coxdepth::enumerate::{self, Limits};
use coxdepth::GroupContext;

fn main() -> coxdepth::Result<()> {
    let limits = Limits::default();
    for n in 1..=5 {
        let (b, d) = (GroupContext::b(n), GroupContext::d(n));
        print!(
            "n={n}: B dp=l_S {} (Catalan {}), B boolean {} (Fibonacci {})",
            enumerate::count_depth_eq_length(&b, &limits)?,
            enumerate::depth_eq_length_closed_form(&b)?,
            enumerate::count_boolean(&b, &limits)?,
            enumerate::boolean_closed_form(&b)?,
        );
        if n >= 4 {
            print!(
                ", D boolean {} (closed form {})",
                enumerate::count_boolean(&d, &limits)?,
                enumerate::boolean_closed_form(&d)?
            );
        }
        println!();
    }
    enumerate::depth_distribution(&GroupContext::d(5), &limits)?.write_csv(std::io::stdout())
}
