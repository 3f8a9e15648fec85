//! Boundaries of Funk and Hilbert balls, written as SVG to the system temp
//! directory.

use hilbgeom::harmonic::circle_directions;
use hilbgeom::svg::{Overlay, OverlayShape, Scene};
use hilbgeom::{metric_ball_boundary, BallKind, ConvexBody, Point};

fn main() -> hilbgeom::Result<()> {
    let disk = ConvexBody::unit_ball(2);
    let center = Point::from_slice(&[0.3, 0.2])?;
    let dirs = circle_directions(96);
    let mut scene = Scene::new(disk.clone())?;
    scene.add(Overlay::new(
        "center",
        OverlayShape::Points(vec![center.clone()]),
        "black",
    ))?;
    for (kind, color) in [(BallKind::Funk, "#c0392b"), (BallKind::Hilbert, "#2471a3")] {
        for radius in [0.25, 0.75] {
            let pts: Vec<Point> = metric_ball_boundary(&disk, &center, radius, kind, &dirs)?
                .into_iter()
                .collect::<hilbgeom::Result<_>>()?;
            scene.add(Overlay::new(
                format!("{kind:?} {radius}"),
                OverlayShape::Polygon(pts),
                color,
            ))?;
        }
    }
    let path = std::env::temp_dir().join("hilbgeom_balls.svg");
    std::fs::write(&path, scene.to_svg()).expect("writable temp dir");
    println!("wrote {}", path.display());

    // Centered Hilbert balls of the disk are Euclidean disks of radius tanh(ρ).
    let origin = Point::from_slice(&[0.0, 0.0])?;
    let p = metric_ball_boundary(&disk, &origin, 1.0, BallKind::Hilbert, &dirs[..1])?.remove(0)?;
    println!(
        "Hilbert ball of radius 1 at the centre reaches {:.15} (tanh 1 = {:.15})",
        p.as_slice()[0],
        1f64.tanh()
    );
    Ok(())
}
