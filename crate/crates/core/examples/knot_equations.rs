// Defining equations of the character variety of the figure-eight knot
// group, with the meridian trace adjoined as the slope coordinate `s`.
//
// ```bash
// cargo run --example knot_equations
// ```

use charvar::{augment_with_slope, variety_ideal_with, GroupPresentation, MonomialOrder, ReductionEngine};

const FIGURE_EIGHT: &str = "generators: a b\nrelators: AbaBabABaB\nperipheral meridian: a\n";

pub fn run_example() -> charvar::Result<()> {
    let group = GroupPresentation::parse(FIGURE_EIGHT)?;
    let mut engine = ReductionEngine::new(group.rank());
    let ideal = variety_ideal_with(&group, &mut engine)?;
    let slope = group.slope_word("meridian")?;
    let ideal = augment_with_slope(&ideal, &slope, &mut engine)?;
    let names = ideal.coordinates().to_vec();
    for g in ideal.generators() {
        println!("0 = {}", g.to_string_with(&names, &MonomialOrder::Grevlex));
    }
    println!("{}", serde_json::to_string_pretty(&ideal.to_json()).expect("json"));
    Ok(())
}

fn main() -> charvar::Result<()> {
    run_example()
}
