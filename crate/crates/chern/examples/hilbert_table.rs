//! Hilbert-Samuel table and coefficients of the m-adic filtration on the
//! cusp k[a,b]/(b^2 - a^3): H(n) = 2n - 1, so e0 = 2, e1 = 1.

use chern::chern::ChernContext;
use chern::field::PrimeField;
use chern::filtration::Filtration;
use chern::parse::parse_poly;
use chern::report;
use chern::ring::{PresentedRing, RingIdeal};

fn main() -> chern::Result<()> {
    let field = PrimeField::new(32003)?;
    let vars = vec!["a".to_string(), "b".to_string()];
    let rel = parse_poly("b^2 - a^3", &vars, field)?;
    let ring = PresentedRing::new(field, vars, vec![rel])?;
    let f = Filtration::adic(RingIdeal::maximal(ring))?;
    let ctx = ChernContext::new(f, 10)?;
    print!("{}", report::hilbert_text(&ctx.table, &ctx.coeffs));
    Ok(())
}
