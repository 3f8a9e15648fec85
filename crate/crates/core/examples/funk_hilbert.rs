//! Funk and Hilbert distances, their symmetrizations and a distance matrix.

use hilbgeom::{distance, distance_matrix, ConvexBody, MetricKind, Point};

fn main() -> hilbgeom::Result<()> {
    let disk = ConvexBody::unit_ball(2);
    let x = Point::from_slice(&[0.0, 0.0])?;
    let y = Point::from_slice(&[0.5, 0.0])?;
    for kind in MetricKind::ALL {
        println!(
            "{:>12}(x, y) = {:.15}",
            kind.name(),
            distance(&disk, kind, &x, &y)?.value()
        );
    }
    // On the disk the Hilbert metric is the Klein model: H(0, r) = artanh(r).
    println!("artanh(1/2)      = {:.15}", 0.5f64.atanh());

    let triangle = ConvexBody::from_vertices(&[
        Point::from_slice(&[0.0, 0.0])?,
        Point::from_slice(&[3.0, 0.0])?,
        Point::from_slice(&[0.0, 3.0])?,
    ])?;
    let points = [[1.0, 1.0], [0.4, 1.8], [2.2, 0.3]].map(|c| Point::from_slice(&c).unwrap());
    let funk = distance_matrix(&triangle, &points, MetricKind::Funk)?;
    let hilbert = distance_matrix(&triangle, &points, MetricKind::Hilbert)?;
    println!(
        "funk matrix (symmetric: {}):\n{}",
        funk.is_symmetric(),
        funk.to_csv()
    );
    println!(
        "hilbert matrix (symmetric: {}):\n{}",
        hilbert.is_symmetric(),
        hilbert.to_csv()
    );
    Ok(())
}
