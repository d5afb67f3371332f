// Decide whether `Q[x, y, s] / I` is a finitely generated `Q[s]`-module.
//
// ```bash
// cargo run --example module_finiteness
// ```

use charvar::finiteness::finiteness_of;
use charvar::poly::BuchbergerOptions;
use charvar::Polynomial;

pub fn run_example() -> charvar::Result<()> {
    let names = ["x", "y", "s"];
    let owned: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    let cases = [
        ("finite", vec!["x^2 - s", "y^3 - x*s"]),
        ("not finite", vec!["x^2 - s", "x*y - 1"]),
        ("not finite", vec!["x*s - 1", "y^2 - s"]),
    ];
    for (label, gens) in cases {
        let gens: Vec<Polynomial> = gens.iter().map(|g| Polynomial::parse(g, &names)).collect::<Result<_, _>>()?;
        let (_, verdict) = finiteness_of(&gens, &owned, &BuchbergerOptions::default())?;
        match verdict.generator_strings() {
            Some(ms) => println!("{label}: generated by {}", ms.join(", ")),
            None => println!("{label}: no pure power for {}", verdict.missing().join(", ")),
        }
        assert_eq!(verdict.finitely_generated, label == "finite");
    }
    Ok(())
}

fn main() -> charvar::Result<()> {
    run_example()
}
