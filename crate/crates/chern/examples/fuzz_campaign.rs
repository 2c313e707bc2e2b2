//! A small random campaign: m-primary monomial ideals in k[x,y] and on
//! monomial curves, asserting every e1 route agrees with the fitted value.

use chern::report::{fuzz_campaign, fuzz_text};

fn main() -> chern::Result<()> {
    for dim in [1, 2] {
        let campaign = fuzz_campaign(dim, 5, 2026, 5)?;
        println!("dim {dim}:");
        print!("{}", fuzz_text(&campaign));
        assert_eq!(campaign.violations(), 0);
    }
    Ok(())
}
