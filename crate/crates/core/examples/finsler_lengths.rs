//! Path lengths for the tautological and reversible Lagrangians, the
//! difference-quotient limit and a minimality experiment.

use hilbgeom::finsler::{
    busemann_mayer_check, minimality_experiment, path_length, LagrangianKind, PerturbationConfig,
    Polyline, SampledCurve,
};
use hilbgeom::quadrature::Tolerance;
use hilbgeom::{funk, hilbert, ConvexBody, Direction, Point};

fn main() -> hilbgeom::Result<()> {
    let disk = ConvexBody::unit_ball(2);
    let x = Point::from_slice(&[-0.3, 0.1])?;
    let y = Point::from_slice(&[0.6, -0.2])?;
    let tol = Tolerance::default();

    let segment = Polyline::segment(&x, &y)?;
    let taut = path_length(
        &disk,
        &segment.clone().into(),
        LagrangianKind::Tautological,
        tol,
    )?;
    let rev = path_length(&disk, &segment.into(), LagrangianKind::Reversible, tol)?;
    println!(
        "segment: tautological {taut} vs funk {}",
        funk(&disk, &x, &y)?
    );
    println!(
        "segment: reversible   {rev} vs hilbert {}",
        hilbert(&disk, &x, &y)?
    );

    let bent = Polyline::new(vec![x.clone(), Point::from_slice(&[0.1, 0.5])?, y.clone()])?;
    let bent_len = path_length(&disk, &bent.into(), LagrangianKind::Tautological, tol)?;
    println!("bent path: {bent_len} (longer than the segment)");

    let r = 0.5;
    let arc = SampledCurve::from_fn(
        0.0,
        std::f64::consts::PI,
        33,
        |t| Point::from_slice(&[r * t.cos(), r * t.sin()]).unwrap(),
        |t| Direction::from_slice(&[-r * t.sin(), r * t.cos()]).unwrap(),
    )?;
    println!(
        "half circle of radius 1/2: {}",
        path_length(&disk, &arc.into(), LagrangianKind::Reversible, tol)?
    );

    let xi = Direction::from_slice(&[1.0, 0.0])?;
    let limit = busemann_mayer_check(
        &disk,
        &Point::from_slice(&[0.0, 0.0])?,
        &xi,
        LagrangianKind::Reversible,
    )?;
    println!("lim H(0, t e1) / t = {limit:.12}");

    let report = minimality_experiment(
        &disk,
        &x,
        &y,
        LagrangianKind::Tautological,
        500,
        0,
        &PerturbationConfig::default(),
    )?;
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    Ok(())
}
