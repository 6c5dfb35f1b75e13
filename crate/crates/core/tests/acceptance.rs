//! End-to-end acceptance checks. Runs as a plain binary (`harness = false`)
//! and prints one PASS/FAIL line per criterion; exits non-zero if any fails.

use std::f64::consts::LN_2;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use lipgeo::curves::{uniform_grid, Polyline};
use lipgeo::geodesic::{self, coordinate_staircase, linfty_geodesic_family, GeodesicProblem};
use lipgeo::holder::{self, lip_calculus, FitOptions, LipBound, LipOp};
use lipgeo::metrics::{self, triangle_excess, Metric, MetricSpace, RawMetric};
use lipgeo::norms::{NormSpec, Vector};
use lipgeo::reparam::{self, SampledC1Curve};
use lipgeo::sampling::{self, CheckOptions};
use rand::seq::SliceRandom;
use rand::Rng;

struct Outcome {
    passed: bool,
    detail: String,
}

type Criterion = (&'static str, fn() -> Outcome);

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn v(c: &[f64]) -> Vector {
    Vector::new(c.to_vec()).unwrap()
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

// 1. Norm chain, sqrt(n)/n comparisons and exponent monotonicity on 1e5
//    vectors spread over n in {1, 2, 3, 10, 100}; relative tolerance 1e-9;
//    under 10 s.
fn norm_inequalities() -> Outcome {
    const TOL: f64 = 1e-9;
    let dims = [1usize, 2, 3, 10, 100];
    let exps = [1.0, 1.5, 2.0, 3.0, f64::INFINITY];
    let norms: Vec<NormSpec> = exps.iter().map(|&p| NormSpec::lp(p).unwrap()).collect();
    let (violations, elapsed) = timed(|| {
        let mut rng = sampling::rng(1);
        let mut violations = 0usize;
        let mut le = |a: f64, b: f64| {
            if a > b * (1.0 + TOL) {
                violations += 1;
            }
        };
        for i in 0..100_000 {
            let n = dims[i % dims.len()];
            let x = Vector::new(sampling::random_coords(&mut rng, n)).unwrap();
            let vals: Vec<f64> = norms.iter().map(|nm| nm.eval(&x).unwrap()).collect();
            let (l1, l2, li) = (vals[0], vals[2], vals[4]);
            let nf = n as f64;
            le(li, l2);
            le(l2, l1);
            le(l1, nf * li);
            le(l2, nf.sqrt() * li);
            le(l1, nf.sqrt() * l2);
            for p in 0..exps.len() {
                for q in p..exps.len() {
                    le(vals[q], vals[p]);
                }
                le(li, vals[p]);
            }
        }
        violations
    });
    outcome(
        violations == 0 && elapsed < Duration::from_secs(10),
        format!("violations = {violations}, runtime = {elapsed:.2?} (limit 10 s)"),
    )
}

// 2. Triangle inequality on 1e5 triples for every lp x snowflake pair, plus
//    the squared-distance counterexample d(0, 2) = 4 > 1 + 1.
fn metric_axioms() -> Outcome {
    let mut total = 0;
    let mut checks = 0;
    for p in [1.0, 2.0, 3.0, f64::INFINITY] {
        for beta in [1.0, 0.5, 0.25] {
            let m = Metric::lp(p).unwrap().snowflake(beta).unwrap();
            let report =
                metrics::check_metric_axioms(&m, 3, CheckOptions::new(100_000, 2)).unwrap();
            let tri = report.property("triangle_inequality").unwrap();
            checks += tri.checks;
            total += report.violations();
        }
    }
    let squared = RawMetric(|x: &[f64], y: &[f64]| (x[0] - y[0]).powi(2));
    let d02 = squared.dist(&[0.0], &[2.0]);
    let sum = squared.dist(&[0.0], &[1.0]) + squared.dist(&[1.0], &[2.0]);
    let counterexample =
        d02 == 4.0 && sum == 2.0 && triangle_excess(&squared, &[0.0], &[1.0], &[2.0]) == 2.0;
    outcome(
        total == 0 && checks == 1_200_000 && counterexample,
        format!("violations = {total} over {checks} triples; beta = 2: d(0,2) = {d02} vs {sum}"),
    )
}

// 3. Strictly convex geodesics: k within 1e-3 of d_N(endpoints), pointwise
//    deviation from the affine path <= 1e-2, each solve under 5 s.
fn geodesic_optimality() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for p in [2.0, 3.0] {
        for segments in [16, 64] {
            let m = Metric::lp(p).unwrap();
            let a = v(&[0.0, 0.0]);
            let b = v(&[1.0, 1.0]);
            let prob = GeodesicProblem::new(m, a.clone(), b.clone(), segments).unwrap();
            let bound = prob.lower_bound();
            for perturbed in [false, true] {
                // The perturbed run starts from seeded noise of size 0.1 around
                // the affine path.
                let interior: Vec<Vector> = if perturbed {
                    let mut rng = sampling::rng(segments as u64);
                    (1..segments)
                        .map(|j| {
                            let t = j as f64 / segments as f64;
                            v(&[
                                t + rng.random_range(-0.1..0.1),
                                t + rng.random_range(-0.1..0.1),
                            ])
                        })
                        .collect()
                } else {
                    Vec::new()
                };
                let (res, elapsed) = timed(|| {
                    if perturbed {
                        geodesic::solve_from(&prob, &interior).unwrap()
                    } else {
                        geodesic::solve(&prob).unwrap()
                    }
                });
                let dev = res
                    .path
                    .params()
                    .iter()
                    .zip(res.path.points())
                    .map(|(&t, q)| {
                        let affine = a.lerp(&b, t).unwrap();
                        NormSpec::l2().eval(&q.sub(&affine).unwrap()).unwrap()
                    })
                    .fold(0.0, f64::max);
                let good = res.converged
                    && (res.k - bound).abs() <= 1e-3
                    && dev <= 1e-2
                    && elapsed < Duration::from_secs(5);
                ok &= good;
                let start = if perturbed { "perturbed" } else { "affine" };
                parts.push(format!(
                    "l{p}/{segments}/{start}: k-d = {:.1e}, dev = {dev:.1e}, {elapsed:.1?}",
                    res.k - bound
                ));
            }
        }
    }
    outcome(ok, parts.join("; "))
}

// 4. l1 staircase and diagonal both have length exactly 2; ten seeded
//    members of the l∞ graph family have estimate <= 1 + 1e-12.
fn non_uniqueness() -> Outcome {
    let a = v(&[0.0, 0.0]);
    let b = v(&[1.0, 1.0]);
    let stair = coordinate_staircase(&a, &b, 1).unwrap();
    let diag = Polyline::segment(&a, &b, 2).unwrap();
    let l1 = Metric::l1();
    let d1 = l1.distance(&a, &b).unwrap();
    let (ls, ld) = (stair.length(&l1).unwrap(), diag.length(&l1).unwrap());
    let mut ok = ls == 2.0 && ld == 2.0 && d1 == 2.0;

    let mut worst: f64 = 0.0;
    let n = 201;
    for seed in 0..10u64 {
        // Random bridge: equal numbers of up and down steps of slope ±1,
        // shuffled, with some flat steps.
        let mut rng = sampling::rng(seed);
        let flats = 2 * rng.random_range(0..50);
        let ups = (n - 1 - flats) / 2;
        let mut steps: Vec<i64> = std::iter::repeat_n(1, ups)
            .chain(std::iter::repeat_n(-1, ups))
            .chain(std::iter::repeat_n(0, n - 1 - 2 * ups))
            .collect();
        steps.shuffle(&mut rng);
        let mut level = 0i64;
        let mut phi = vec![0.0];
        for s in steps {
            level += s;
            phi.push(level as f64 / (n - 1) as f64);
        }
        let graph = linfty_geodesic_family(&phi).unwrap();
        let est = graph.lipschitz_estimate(&Metric::linf()).unwrap();
        worst = worst.max(est);
        ok &= est <= 1.0 + 1e-12 && graph.end().as_slice() == [1.0, 0.0];
    }
    outcome(
        ok,
        format!("staircase = {ls}, diagonal = {ld}, d_1 = {d1}; l∞ family max estimate = {worst}"),
    )
}

// 5. Parabola (t²/2, 0) on [0.1, 1] at 1e4 samples: output parameters match
//    (t² − 0.01)/2 within 1e-6; l2 estimate within 1e-4 of 1.
fn reparameterization() -> Outcome {
    let eps = 0.1;
    let params: Vec<f64> = uniform_grid(10_000)
        .into_iter()
        .map(|s| eps + (1.0 - eps) * s)
        .collect();
    let c = SampledC1Curve::from_fn(params.clone(), |t| vec![t * t / 2.0, 0.0], |t| vec![t, 0.0])
        .unwrap();
    let q = reparam::unit_speed_reparam(&c, &NormSpec::l2(), reparam::DEFAULT_SPEED_FLOOR).unwrap();
    let max_err = q
        .params()
        .iter()
        .zip(&params)
        .map(|(r, t)| (r - (t * t - eps * eps) / 2.0).abs())
        .fold(0.0, f64::max);
    let k = q.lipschitz_estimate(&Metric::l2()).unwrap();
    outcome(
        max_err <= 1e-6 && (k - 1.0).abs() <= 1e-4,
        format!("max |φ − closed form| = {max_err:.2e}, estimate = {k}"),
    )
}

// 6. length <= estimate · interval on 1e3 seeded random polylines.
fn length_bound() -> Outcome {
    let mut rng = sampling::rng(6);
    let metrics = [
        Metric::l1(),
        Metric::l2(),
        Metric::lp(3.0).unwrap(),
        Metric::linf(),
        Metric::l2().snowflake(0.5).unwrap(),
    ];
    let mut violations = 0;
    let mut worst = f64::NEG_INFINITY;
    for i in 0..1000 {
        let n = rng.random_range(2..40);
        let dim = rng.random_range(1..5);
        let mut t = rng.random_range(-10.0..10.0);
        let mut params = Vec::with_capacity(n);
        let mut points = Vec::with_capacity(n);
        for _ in 0..n {
            params.push(t);
            t += rng.random_range(1e-3..2.0);
            points.push(sampling::random_coords(&mut rng, dim));
        }
        let c = Polyline::from_coords(params, points).unwrap();
        let m = &metrics[i % metrics.len()];
        let len = c.length(m).unwrap();
        let bound = c.lipschitz_estimate(m).unwrap() * c.interval_length();
        let margin = (len - bound) / bound.max(f64::MIN_POSITIVE);
        worst = worst.max(margin);
        // Allow only floating-point roundoff in the comparison.
        if margin > 1e-12 {
            violations += 1;
        }
    }
    outcome(
        violations == 0,
        format!("violations = {violations}, worst relative margin = {worst:.2e}"),
    )
}

// 7. sqrt fixture: C = 1 ± 1e-6 at α = 1/2. Koch level 6: fitted α within
//    0.03 of log 3 / log 4. Under 30 s.
fn holder_fitting() -> Outcome {
    let ((c_sqrt, alpha_koch), elapsed) = timed(|| {
        let xs = uniform_grid(1000);
        let dom: Vec<Vector> = xs.iter().map(|&x| v(&[x])).collect();
        let ran: Vec<Vector> = xs.iter().map(|&x| v(&[x.sqrt()])).collect();
        let sqrt_fit = holder::fit_holder(
            &dom,
            &ran,
            &Metric::l1(),
            &Metric::l1(),
            FitOptions::fixed(0.5),
        )
        .unwrap();

        let koch = holder::koch_generator(6).unwrap();
        let dom: Vec<Vector> = koch.params().iter().map(|&t| v(&[t])).collect();
        let koch_fit = holder::fit_holder(
            &dom,
            koch.points(),
            &Metric::l1(),
            &Metric::l2(),
            FitOptions::fit(),
        )
        .unwrap();
        (sqrt_fit.constant, koch_fit.alpha)
    });
    let target = 3f64.ln() / (2.0 * LN_2);
    outcome(
        (c_sqrt - 1.0).abs() <= 1e-6 && (alpha_koch - target).abs() <= 0.03 && elapsed < Duration::from_secs(30),
        format!("sqrt C = {c_sqrt}, Koch α = {alpha_koch:.4} (target {target:.4}), runtime = {elapsed:.2?}"),
    )
}

// 8. Koch level 8 covering sums at α = log 4 / log 3 over scales
//    {3, 9, 27, 81} stay within a factor 3; unit segment at α = 1 gives sums
//    within 1e-9 of 1.
fn covering_sums() -> Outcome {
    let scales = [3, 9, 27, 81];
    let alpha = 2.0 * LN_2 / 3f64.ln();
    let koch = holder::koch_generator(8).unwrap();
    let sums = holder::hausdorff_covering_sum(&koch, &Metric::l2(), alpha, &scales).unwrap();
    let hi = sums.iter().map(|s| s.1).fold(f64::NEG_INFINITY, f64::max);
    let lo = sums.iter().map(|s| s.1).fold(f64::INFINITY, f64::min);

    let seg = Polyline::segment(&v(&[0.0, 0.0]), &v(&[1.0, 0.0]), 81 * 8 + 1).unwrap();
    let seg_sums = holder::hausdorff_covering_sum(&seg, &Metric::l2(), 1.0, &scales).unwrap();
    let seg_err = seg_sums
        .iter()
        .map(|s| (s.1 - 1.0).abs())
        .fold(0.0, f64::max);
    let koch_text: Vec<String> = sums.iter().map(|(s, v)| format!("{s}: {v:.4}")).collect();
    outcome(
        lo > 0.0 && hi / lo <= 3.0 && seg_err <= 1e-9,
        format!(
            "Koch sums [{}], ratio = {:.3}; segment max error = {seg_err:.1e}",
            koch_text.join(", "),
            hi / lo
        ),
    )
}

// 9. Sum, scale and compose rules on 1e3 (C, α) grid pairs against
//    functions built to those bounds on 1e2 sample points.
fn lip_calculus_identities() -> Outcome {
    // f(x) = C |x − a|^α is (C, α)-Hölder on R for α <= 1; sampled on 100
    // points it is a piecewise-linear function with that bound at samples.
    let xs = uniform_grid(100);
    let build = |c: f64, alpha: f64, a: f64| -> Vec<f64> {
        xs.iter().map(|x| c * (x - a).abs().powf(alpha)).collect()
    };
    let holds = |f: &[f64], bound: LipBound| -> bool {
        for i in 0..xs.len() {
            for j in i + 1..xs.len() {
                let lhs = (f[i] - f[j]).abs();
                let rhs = bound.constant() * (xs[j] - xs[i]).powf(bound.order());
                if lhs > rhs * (1.0 + 1e-12) + 1e-300 {
                    return false;
                }
            }
        }
        true
    };

    let cs: Vec<f64> = (0..40)
        .map(|i| 10f64.powf(-2.0 + 4.0 * i as f64 / 39.0))
        .collect();
    let alphas: Vec<f64> = (0..25).map(|i| 0.1 + 0.9 * i as f64 / 24.0).collect();
    let grid: Vec<(f64, f64)> = cs
        .iter()
        .flat_map(|&c| alphas.iter().map(move |&a| (c, a)))
        .collect();
    assert_eq!(grid.len(), 1000);

    let mut rng = sampling::rng(9);
    let mut failures = 0;
    let mut checks = 0;
    for (idx, &(c1, alpha)) in grid.iter().enumerate() {
        let b1 = LipBound::new(c1, alpha).unwrap();
        let a1: f64 = rng.random_range(0.0..1.0);
        let f = build(c1, alpha, a1);

        // Sum with a partner of equal order.
        let c2 = cs[(idx * 7) % cs.len()];
        let b2 = LipBound::new(c2, alpha).unwrap();
        let g = build(-c2, alpha, rng.random_range(0.0..1.0));
        let sum: Vec<f64> = f.iter().zip(&g).map(|(a, b)| a + b).collect();
        checks += 1;
        failures += usize::from(!holds(
            &sum,
            lip_calculus(LipOp::Sum, b1, Some(b2)).unwrap(),
        ));

        // Scale.
        let s: f64 = rng.random_range(-5.0..5.0);
        let scaled: Vec<f64> = f.iter().map(|y| s * y).collect();
        checks += 1;
        failures += usize::from(!holds(
            &scaled,
            lip_calculus(LipOp::Scale(s), b1, None).unwrap(),
        ));

        // Compose outer ∘ inner with the mirrored grid entry as inner.
        let (ci, ai) = grid[grid.len() - 1 - idx];
        let inner_bound = LipBound::new(ci, ai).unwrap();
        let inner = build(ci, ai, rng.random_range(0.0..1.0));
        let centre: f64 = rng.random_range(-1.0..1.0);
        let composed: Vec<f64> = inner
            .iter()
            .map(|y| c1 * (y - centre).abs().powf(alpha))
            .collect();
        checks += 1;
        failures += usize::from(!holds(
            &composed,
            lip_calculus(LipOp::Compose, b1, Some(inner_bound)).unwrap(),
        ));
    }
    outcome(
        failures == 0,
        format!("{failures} violations over {checks} constructed combinations"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 norm inequality suite", norm_inequalities),
        ("2 metric axiom suite", metric_axioms),
        (
            "3 geodesic optimality (strictly convex)",
            geodesic_optimality,
        ),
        ("4 geodesic non-uniqueness witnesses", non_uniqueness),
        ("5 unit-speed reparameterization", reparameterization),
        ("6 length bound", length_bound),
        ("7 Hölder fitting", holder_fitting),
        ("8 covering-sum proxy", covering_sums),
        ("9 Lipschitz calculus identities", lip_calculus_identities),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let (result, elapsed) = timed(run);
        let tag = if result.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] {name} ({elapsed:.2?}): {}", result.detail);
        if !result.passed {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
