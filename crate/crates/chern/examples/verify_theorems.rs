//! Run the dimension-1 theorem verifiers on their classic witnesses: the
//! cusp k[a,b]/(b^2 - a^3) and the semigroup ring k[t^4, t^5, t^6] presented
//! as k[a,b,c]/(b^2 - ac, a^3 - c^2).

use chern::chern::{verify_huneke_dim1, verify_lipman, verify_rees, verify_sally, ChernContext};
use chern::field::PrimeField;
use chern::filtration::Filtration;
use chern::parse::parse_poly;
use chern::report::verify_text;
use chern::ring::{PresentedRing, RingIdeal};

fn main() -> chern::Result<()> {
    let field = PrimeField::new(32003)?;

    let cusp_vars = vec!["a".to_string(), "b".to_string()];
    let cusp = PresentedRing::new(
        field,
        cusp_vars.clone(),
        vec![parse_poly("b^2 - a^3", &cusp_vars, field)?],
    )?;
    let a = parse_poly("a", &cusp_vars, field)?;
    let ctx = ChernContext::new(Filtration::adic(RingIdeal::maximal(cusp))?, 10)?;
    print!("{}", verify_text(&verify_rees(&ctx, &[a.clone()])?));
    print!("{}", verify_text(&verify_lipman(&ctx, &a)?));
    print!("{}", verify_text(&verify_huneke_dim1(&ctx, &a)?));

    let sg_vars = vec!["a".to_string(), "b".to_string(), "c".to_string()];
    let sg = PresentedRing::new(
        field,
        sg_vars.clone(),
        vec![
            parse_poly("b^2 - a*c", &sg_vars, field)?,
            parse_poly("a^3 - c^2", &sg_vars, field)?,
        ],
    )?;
    let a = parse_poly("a", &sg_vars, field)?;
    let ctx = ChernContext::new(Filtration::adic(RingIdeal::maximal(sg))?, 10)?;
    print!("{}", verify_text(&verify_sally(&ctx, &a)?));
    Ok(())
}
