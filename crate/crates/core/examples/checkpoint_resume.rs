// Interrupt a Groebner basis computation with a pair budget, save the
// checkpoint, and resume it to the same basis.
//
// ```bash
// cargo run --example checkpoint_resume
// ```

use charvar::poly::{resume, Budget, BuchbergerOptions, Checkpoint};
use charvar::{buchberger, Error, MonomialOrder, Polynomial};

pub fn run_example() -> charvar::Result<()> {
    let names = ["a", "b", "c", "d"];
    let gens = ["a + b + c + d", "a*b + b*c + c*d + d*a", "a*b*c + b*c*d + c*d*a + d*a*b", "a*b*c*d - 1"]
        .iter()
        .map(|g| Polynomial::parse(g, &names))
        .collect::<Result<Vec<_>, _>>()?;
    let order = MonomialOrder::Grevlex;
    let limited = BuchbergerOptions {
        budget: Budget {
            max_pairs: Some(3),
            max_degree: None,
        },
        ..Default::default()
    };
    let checkpoint = match buchberger(&gens, names.len(), order, &limited) {
        Err(Error::Budget { checkpoint, .. }) => *checkpoint,
        other => panic!("expected the budget to run out, got {other:?}"),
    };
    println!("stopped after {} pairs, {} pending", checkpoint.stats().pairs, checkpoint.pending_pairs());

    let dir = std::env::temp_dir().join(format!("charvar-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("cyclic4.json");
    checkpoint.save(&path)?;
    let gb = resume(Checkpoint::load(&path)?, &BuchbergerOptions::default())?;
    std::fs::remove_dir_all(&dir)?;

    let full = buchberger(&gens, names.len(), order, &BuchbergerOptions::default())?;
    assert_eq!(gb.elements(), full.elements());
    println!("resumed basis has {} elements, same as an uninterrupted run", gb.len());
    Ok(())
}

fn main() -> charvar::Result<()> {
    run_example()
}
