//! Integral closures of powers of J = (x^3, y^2) in k[x,y] via the Newton
//! polygon, and the Chern number of the closure filtration.

use chern::chern::{e1_dim2, ChernContext};
use chern::field::PrimeField;
use chern::filtration::Filtration;
use chern::parse::parse_poly;
use chern::ring::{PresentedRing, RingIdeal};

fn main() -> chern::Result<()> {
    let field = PrimeField::new(32003)?;
    let vars = vec!["x".to_string(), "y".to_string()];
    let ring = PresentedRing::new(field, vars.clone(), vec![])?;
    let x3 = parse_poly("x^3", &vars, field)?;
    let y2 = parse_poly("y^2", &vars, field)?;
    let seed = RingIdeal::from_gens(ring, vec![x3.clone(), y2.clone()]);
    let f = Filtration::newton_closure(seed)?;
    for n in 1..=4 {
        let gens: Vec<String> = f
            .term(n)?
            .lift()
            .interreduced()?
            .gens()
            .iter()
            .map(|g| g.render(&vars))
            .collect();
        println!("closure of J^{n} = ({})", gens.join(", "));
    }
    let ctx = ChernContext::new(f, 8)?;
    println!("coefficients: {:?}", ctx.coeffs.e);
    let (e1, _) = e1_dim2(&ctx, &x3, &y2)?;
    println!("e1 from the closure formula with the pair (x^3, y^2): {e1}");
    assert_eq!(e1, ctx.e1());
    Ok(())
}
