//! Harmonic symmetrization: intervals, the symmetrized gauge, the exact
//! construction for polytopes and a conic fit for the disk.

use hilbgeom::harmonic::circle_directions;
use hilbgeom::{
    fit_conic, symmetrize_body_sampled, symmetrize_interval, symmetrize_polytope_body,
    symmetrized_gauge, Closedness, ConvexBody, Point, PointedInterval,
};

fn main() -> hilbgeom::Result<()> {
    let interval = PointedInterval::on_real_line(-1.0, 3.0, 0.0, Closedness::Closed)?;
    let sym = symmetrize_interval(&interval)?;
    println!("[-1, 3] about 0 becomes [{}, {}]", sym.lower, sym.upper);

    let triangle = ConvexBody::from_vertices(&[
        Point::from_slice(&[0.0, 0.0])?,
        Point::from_slice(&[3.0, 0.0])?,
        Point::from_slice(&[0.0, 3.0])?,
    ])?;
    let centroid = Point::from_slice(&[1.0, 1.0])?;
    let hexagon = symmetrize_polytope_body(&triangle, &centroid)?;
    let pruned = hexagon.as_polytope().expect("polytope").prune_redundant()?;
    println!(
        "triangle at its centroid: {} facets, {} after pruning",
        hexagon.constraint_count(),
        pruned.facets().len()
    );
    for v in pruned.vertices_2d()? {
        println!("  vertex {:?}", v.as_slice());
    }
    let xi = hilbgeom::Direction::from_slice(&[1.0, 0.3])?;
    println!(
        "gauge of the hexagon {} vs q {}",
        hexagon.gauge(&centroid, &xi)?,
        symmetrized_gauge(&triangle, &centroid, &xi)?
    );

    let disk = ConvexBody::unit_ball(2);
    let x = Point::from_slice(&[0.5, 0.2])?;
    let boundary: Vec<Point> = symmetrize_body_sampled(&disk, &x, &circle_directions(64))?
        .iter()
        .filter_map(|s| s.point().cloned())
        .collect();
    let fit = fit_conic(&boundary)?;
    println!(
        "disk symmetrized at (0.5, 0.2): conic residual {:e}, ellipse: {}",
        fit.residual,
        fit.is_ellipse()
    );
    Ok(())
}
