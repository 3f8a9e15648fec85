//! Radial functions, Minkowski gauges and the separation properties of the
//! weak metric `p(y − x)` for a few bodies.

use hilbgeom::{ball_gauge_closed_form, ConvexBody, Direction, HPolytope, Point};

fn main() -> hilbgeom::Result<()> {
    let origin = Point::from_slice(&[0.0, 0.0])?;
    let xi = Direction::from_slice(&[3.0, 4.0])?;

    let disk = ConvexBody::unit_ball(2);
    println!(
        "unit disk: r(0, (3,4)) = {}",
        disk.radial_function(&origin, &xi)?
    );
    println!("unit disk: p(0, (3,4)) = {}", disk.gauge(&origin, &xi)?);

    let b2 = ConvexBody::ball(origin.clone(), 2.0)?;
    let x = Point::from_slice(&[1.0, 0.0])?;
    let e1 = Direction::axis(2, 0);
    println!(
        "B(0,2) at (1,0) towards e1: gauge {} (closed form {})",
        b2.gauge(&x, &e1)?,
        ball_gauge_closed_form(2.0, &x, &e1)?
    );

    let half_plane = ConvexBody::half_space(e1.clone(), 1.0)?;
    println!(
        "half-plane x1 <= 1, gauge of (-1, 2): {}",
        half_plane.gauge(&origin, &Direction::from_slice(&[-1.0, 2.0])?)?
    );

    let square = ConvexBody::polytope(HPolytope::aabb(&[-1.0, -1.0], &[1.0, 1.0])?);
    for (name, body) in [
        ("disk", &disk),
        ("square", &square),
        ("half-plane", &half_plane),
    ] {
        let flags = body.classify_separation(&origin)?;
        println!("{name:>10}: {flags:?}");
    }
    Ok(())
}
