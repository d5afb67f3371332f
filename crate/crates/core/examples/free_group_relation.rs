// The seven trace coordinates of a rank-three free group satisfy one
// polynomial relation; print it.
//
// ```bash
// cargo run --example free_group_relation
// ```

use charvar::{free_group_relations, MonomialOrder, ReductionEngine};

pub fn run_example() -> charvar::Result<()> {
    let mut engine = ReductionEngine::new(3);
    let names = engine.names();
    let relations = free_group_relations(3, &mut engine)?;
    println!("coordinates: {}", names.join(", "));
    for r in &relations {
        println!("0 = {}", r.to_string_with(&names, &MonomialOrder::Grevlex));
    }
    assert_eq!(relations.len(), 1);
    Ok(())
}

fn main() -> charvar::Result<()> {
    run_example()
}
