//! Weak metrics induced by directed graphs: the circle example, the
//! symmetrization inequality and bi-minimal paths.

use hilbgeom::discrete::{
    circle_fixture, find_biminimal_path, induced_weak_metric, symmetrize_lengths,
    verify_symmetrization_inequality, WeightedDigraph, DEFAULT_SEARCH_BUDGET,
};

fn main() -> hilbgeom::Result<()> {
    let circle = circle_fixture();
    println!(
        "circle: d(x,y) = {}, d(y,x) = {}",
        induced_weak_metric(&circle, 0, 1)?,
        induced_weak_metric(&circle, 1, 0)?
    );
    let sym = symmetrize_lengths(&circle)?;
    println!(
        "symmetrized lengths: d(x,y) = {}",
        induced_weak_metric(&sym, 0, 1)?
    );
    println!(
        "check: {:?}",
        verify_symmetrization_inequality(&circle, 0, 1)?
    );
    println!(
        "bi-minimal path: {:?}",
        find_biminimal_path(&circle, 0, 1, DEFAULT_SEARCH_BUDGET)?
    );

    let text = r#"[{"u":0,"v":1,"len":1,"rev_id":1},{"u":1,"v":0,"len":2,"rev_id":0},
                   {"u":1,"v":2,"len":1,"rev_id":3},{"u":2,"v":1,"len":3,"rev_id":2},
                   {"u":0,"v":2,"len":5,"rev_id":5},{"u":2,"v":0,"len":6,"rev_id":4}]"#;
    let g = WeightedDigraph::from_json(text)?;
    println!(
        "chain: bi-minimal path {:?}",
        find_biminimal_path(&g, 0, 2, DEFAULT_SEARCH_BUDGET)?
    );
    println!("chain: {:?}", verify_symmetrization_inequality(&g, 0, 2)?);
    Ok(())
}
