// Reduced Groebner bases of a small ideal under three monomial orders.
//
// ```bash
// cargo run --example groebner_basis
// ```

use charvar::poly::BuchbergerOptions;
use charvar::{buchberger, MonomialOrder, Polynomial};

pub fn run_example() -> charvar::Result<()> {
    let names = ["x", "y", "s"];
    let owned: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    let gens = [Polynomial::parse("x^2 + y^2 - s", &names)?, Polynomial::parse("x*y - 1", &names)?];
    for order in [MonomialOrder::Grevlex, MonomialOrder::Lex, MonomialOrder::elimination(2)] {
        let gb = buchberger(&gens, names.len(), order, &BuchbergerOptions::default())?;
        println!("{order}:");
        for g in gb.elements() {
            println!("  {}", g.to_string_with(&owned, &order));
        }
        assert!(gens.iter().all(|g| gb.contains(g)));
    }
    Ok(())
}

fn main() -> charvar::Result<()> {
    run_example()
}
