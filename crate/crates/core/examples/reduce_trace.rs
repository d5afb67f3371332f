// Rewrite the trace of a word as a polynomial in the canonical trace
// coordinates, and check it against explicit SL(2) matrices.
//
// ```bash
// cargo run --example reduce_trace
// ```

use charvar::trace::coordinate_values;
use charvar::{numeric_trace, Mat2, ReductionEngine, Word};

pub fn run_example() -> charvar::Result<()> {
    let mut engine = ReductionEngine::new(2);
    let names = engine.names();
    for text in ["aa", "abAB", "aabb", "abab"] {
        let w = Word::parse(text, 2)?;
        let p = engine.reduce(&w);
        println!("tr {text:>5} = {}", p.to_string_with(&names, &charvar::MonomialOrder::Grevlex));

        // Evaluate at a concrete pair of matrices: both sides agree.
        let mats = [Mat2::from_ints(2, 1, 1, 1), Mat2::from_ints(1, 0, 3, 1)];
        let point = coordinate_values(&mats)?;
        assert_eq!(p.eval(&point), numeric_trace(&w, &mats)?);
    }
    Ok(())
}

fn main() -> charvar::Result<()> {
    run_example()
}
