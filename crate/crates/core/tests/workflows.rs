//! Pipelines that cross module boundaries.

use lipgeo::curves::{uniform_grid, Polyline};
use lipgeo::geodesic::{self, straightness_check, GeodesicProblem};
use lipgeo::holder::{self, FitOptions};
use lipgeo::metrics::Metric;
use lipgeo::norms::{NormSpec, Vector};
use lipgeo::reparam;

fn v(c: &[f64]) -> Vector {
    Vector::new(c.to_vec()).unwrap()
}

#[test]
fn glued_geodesics_through_a_midpoint_stay_optimal() {
    let m = Metric::lp(3.0).unwrap();
    let (a, mid, b) = (v(&[0.0, 0.0]), v(&[0.5, 1.0]), v(&[1.0, 2.0]));
    let first =
        geodesic::solve(&GeodesicProblem::new(m.clone(), a.clone(), mid.clone(), 8).unwrap())
            .unwrap();
    let second =
        geodesic::solve(&GeodesicProblem::new(m.clone(), mid, b.clone(), 8).unwrap()).unwrap();
    let joined = first
        .path
        .glue(&second.path.rescale(1.0, 2.0).unwrap())
        .unwrap();
    assert_eq!(joined.len(), 17);
    assert!(straightness_check(&joined, &m, 1e-9).unwrap());
    let whole = m.distance(&a, &b).unwrap();
    assert!((joined.length(&m).unwrap() - whole).abs() < 1e-12);
    // Each half runs at d(a, b) / 2 per unit time; glued over [0, 2] the
    // constant is that same speed.
    assert!((joined.lipschitz_estimate(&m).unwrap() - whole / 2.0).abs() < 1e-12);
}

#[test]
fn finite_difference_reparam_of_a_helix_is_unit_speed() {
    let ts: Vec<f64> = uniform_grid(4001).into_iter().map(|s| 4.0 * s).collect();
    let pts: Vec<Vec<f64>> = ts.iter().map(|t| vec![t.cos(), t.sin(), 0.5 * t]).collect();
    let c = Polyline::from_coords(ts, pts).unwrap();
    let c1 = reparam::central_difference_derivs(&c).unwrap();
    let q =
        reparam::unit_speed_reparam(&c1, &NormSpec::l2(), reparam::DEFAULT_SPEED_FLOOR).unwrap();
    let expected = 4.0 * 1.25f64.sqrt();
    assert!((q.interval_length() - expected).abs() < 1e-5);
    let report = reparam::verify_unit_speed(&q, &NormSpec::l2(), 1e-4).unwrap();
    assert!(report.passed(), "{report:?}");
}

#[test]
fn koch_curve_box_and_covering_dimensions_agree() {
    let koch = holder::koch_generator(6).unwrap();
    let sides: Vec<f64> = (2..6).map(|k| 3f64.powi(-k)).collect();
    let counts = holder::box_counts(&koch, &sides).unwrap();
    // Least-squares slope of log N against −log side.
    let xs: Vec<f64> = counts.iter().map(|(s, _)| -s.ln()).collect();
    let ys: Vec<f64> = counts.iter().map(|(_, n)| (*n as f64).ln()).collect();
    let (mx, my) = (xs.iter().sum::<f64>() / 4.0, ys.iter().sum::<f64>() / 4.0);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let dim = sxy / sxx;
    let target = 4f64.ln() / 3f64.ln();
    assert!((dim - target).abs() < 0.1, "box dimension {dim}");

    let dom: Vec<Vector> = koch.params().iter().map(|&t| v(&[t])).collect();
    let fit = holder::fit_holder(
        &dom,
        koch.points(),
        &Metric::l1(),
        &Metric::l2(),
        FitOptions::fit(),
    )
    .unwrap();
    assert!(
        (1.0 / fit.alpha - target).abs() < 0.06,
        "1/alpha = {}",
        1.0 / fit.alpha
    );
}

#[test]
fn snowflaked_range_lowers_the_fitted_order() {
    let xs = uniform_grid(300);
    let dom: Vec<Vector> = xs.iter().map(|&x| v(&[x])).collect();
    let plain =
        holder::fit_holder(&dom, &dom, &Metric::l2(), &Metric::l2(), FitOptions::fit()).unwrap();
    let snow = Metric::l2().snowflake(0.5).unwrap();
    let flaked = holder::fit_holder(&dom, &dom, &Metric::l2(), &snow, FitOptions::fit()).unwrap();
    assert!((plain.alpha - 1.0).abs() < 1e-9);
    assert!((flaked.alpha - 0.5).abs() < 1e-9);
    assert!((flaked.constant - 1.0).abs() < 1e-9);
}
