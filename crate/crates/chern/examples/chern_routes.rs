//! Compute e1 of the m^2-adic filtration on k[x,y] by every route and show
//! they agree: the Euler-characteristic sum, the dimension-2 homology
//! formula, and the fundamental-lemma assembly all give 1.

use chern::chern::{chern_report, ChernContext};
use chern::parse::parse_job;
use chern::report;

fn main() -> chern::Result<()> {
    let job = parse_job(
        br#"{
            "vars": ["x", "y"],
            "ideal": ["x^2", "x*y", "y^2"],
            "reduction": ["x^2", "y^2"],
            "max_n": 10
        }"#,
    )?;
    let ctx = ChernContext::new(job.filtration()?, job.max_n)?;
    let rep = chern_report(&ctx, job.reduction.clone(), job.seed)?;
    print!("{}", report::chern_text(&job, &ctx, &rep));
    assert!(rep.consistent);
    Ok(())
}
