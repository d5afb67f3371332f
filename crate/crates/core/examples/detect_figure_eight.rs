// Run the full detection pipeline on the figure-eight knot group for the
// meridian slope.
//
// ```bash
// cargo run --example detect_figure_eight
// ```

use charvar::poly::BuchbergerOptions;
use charvar::{detect, GroupPresentation};

const FIGURE_EIGHT: &str = "generators: a b\nrelators: AbaBabABaB\nperipheral meridian: a\n";

pub fn run_example() -> charvar::Result<()> {
    let group = GroupPresentation::parse(FIGURE_EIGHT)?;
    let slopes = [group.slope_word("meridian")?];
    let report = detect(&group, &slopes, &BuchbergerOptions::default())?;
    for line in &report.narrative {
        println!("{line}");
    }
    println!("conclusion: {}", report.conclusion.as_str());
    Ok(())
}

fn main() -> charvar::Result<()> {
    run_example()
}
