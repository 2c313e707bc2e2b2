//! Find a minimal reduction of the m^2-adic filtration on k[x,y] and verify
//! the window J·I_n = I_{n+1}.

use chern::field::PrimeField;
use chern::filtration::Filtration;
use chern::parse::parse_poly;
use chern::reduction::{find_minimal_reduction, is_reduction};
use chern::ring::{PresentedRing, RingIdeal};

fn main() -> chern::Result<()> {
    let field = PrimeField::new(32003)?;
    let vars = vec!["x".to_string(), "y".to_string()];
    let ring = PresentedRing::new(field, vars.clone(), vec![])?;
    let gens = ["x^2", "x*y", "y^2"]
        .iter()
        .map(|t| parse_poly(t, &vars, field))
        .collect::<chern::Result<Vec<_>>>()?;
    let f = Filtration::adic(RingIdeal::from_gens(ring.clone(), gens))?;
    let red = find_minimal_reduction(&f, 42, 10)?;
    let names: Vec<String> = red.gens.iter().map(|g| g.render(&vars)).collect();
    println!("J = ({})", names.join(", "));
    println!("verified J·I_n = I_(n+1) from n0 = {} over window {}", red.verified_at, red.window);
    let j = RingIdeal::from_gens(ring, red.gens.clone());
    assert!(is_reduction(&f, &j, 10)?.is_some());
    Ok(())
}
