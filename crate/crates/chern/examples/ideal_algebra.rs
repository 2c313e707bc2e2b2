//! Exact ideal algebra in k[x,y]: Groebner bases, intersections, colons,
//! and colengths by standard-monomial counting.

use chern::field::PrimeField;
use chern::ideal::Ideal;
use chern::parse::parse_poly;

fn main() -> chern::Result<()> {
    let field = PrimeField::new(32003)?;
    let vars = vec!["x".to_string(), "y".to_string()];
    let p = |t: &str| parse_poly(t, &vars, field);

    let twisted = Ideal::new(field, 2, vec![p("x^2 - y")?, p("x*y - 1")?]);
    let gb = twisted.groebner()?;
    println!("reduced Groebner basis:");
    for g in gb.elements() {
        println!("  {}", g.render(&vars));
    }

    let a = Ideal::new(field, 2, vec![p("x^2")?, p("y")?]);
    let b = Ideal::new(field, 2, vec![p("x")?, p("y^2")?]);
    let meet = a.intersect(&b)?;
    let gens: Vec<String> =
        meet.interreduced()?.gens().iter().map(|g| g.render(&vars)).collect();
    println!("(x^2, y) ∩ (x, y^2) = ({})", gens.join(", "));

    let m2 = Ideal::new(field, 2, vec![p("x^2")?, p("x*y")?, p("y^2")?]);
    let colon = m2.colon(&Ideal::new(field, 2, vec![p("x")?]))?;
    let gens: Vec<String> =
        colon.interreduced()?.gens().iter().map(|g| g.render(&vars)).collect();
    println!("m^2 : x = ({})", gens.join(", "));
    println!("colength of m^2 = {:?}", m2.colength()?);
    Ok(())
}
