//! Reading bodies and points from JSON and writing a symmetrized polytope back.

use hilbgeom::io::{body_to_json, parse_body, parse_points};
use hilbgeom::{distance_matrix, symmetrize_polytope_body, MetricKind, Point};

fn main() -> hilbgeom::Result<()> {
    let body = parse_body(
        r#"{"type": "hpolytope", "facets": [
              {"normal": [1, 0], "offset": 2}, {"normal": [0, 1], "offset": 1},
              {"normal": [-1, -1], "offset": 1}]}"#,
    )?;
    println!("witness computed by LP: {:?}", body.witness().as_slice());
    let points = parse_points("[[0, 0], [1, 0.5], [-0.5, 0.2]]")?;
    println!(
        "{}",
        distance_matrix(&body, &points, MetricKind::Hilbert)?.to_json()
    );
    let sym = symmetrize_polytope_body(&body, &Point::from_slice(&[0.0, 0.0])?)?;
    println!("{}", body_to_json(&sym));
    Ok(())
}
