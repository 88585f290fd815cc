//! End-to-end acceptance checks. Runs without the libtest harness so that each criterion
//! prints a single PASS/FAIL line.

mod common;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use carousel_core::carousel::{carousel_check, carousel_falsify, segment_counterexample, CarouselResult, Triangle};
use carousel_core::convex_kernel::Angle;
use carousel_core::convex_kernel::{contains, ConvexBody, DirectedLine, Point, Tolerance, Verdict};
use carousel_core::crossing::{crosses, disk_test, DiskTest, SearchConfig};
use carousel_core::disk_properties::{property_ladder, PropVerdict, PropertyReport, Witness};
use carousel_core::tangency::{common_tangents, parallel_support_beyond_secant, pointed_supporting_line, slide_turn};
use rand::Rng;

use common::*;

type Outcome = std::result::Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn disk_soundness() -> Outcome {
    let mut rng = rng(1);
    let mut slowest = Duration::ZERO;
    for i in 0..10 {
        let k = ConvexBody::disk(point_in(&mut rng, 10.0), rng.gen_range(0.1..10.0));
        let t0 = Instant::now();
        let r = disk_test(&k, &SearchConfig::default(), &Tolerance::default());
        let dt = t0.elapsed();
        slowest = slowest.max(dt);
        ensure(matches!(r, DiskTest::NoWitnessFound { .. }), || format!("disk {i} ({k:?}) produced a witness"))?;
        ensure(dt < Duration::from_secs(60), || format!("disk {i} took {dt:?}"))?;
    }
    Ok(format!("10 disks, no witness, slowest {:.1}s", slowest.as_secs_f64()))
}

fn non_disk_refutation() -> Outcome {
    let tol = Tolerance::default();
    let shapes = [
        ("ellipse", ConvexBody::ellipse(Point::ORIGIN, 1.0, 0.8, 0.0)),
        ("square", square()),
        ("reuleaux", ConvexBody::reuleaux(Point::ORIGIN, 2.0, 0.0)),
        ("trapezoid", trapezoid()),
    ];
    let mut parts = Vec::new();
    for (name, k) in shapes {
        let t0 = Instant::now();
        let r = disk_test(&k, &SearchConfig::default(), &tol);
        let dt = t0.elapsed();
        let DiskTest::Witness { phi, .. } = r else {
            return Err(format!("{name}: no witness"));
        };
        ensure(phi.is_isometry(), || format!("{name}: transform is not an isometry"))?;
        let k1 = k.apply(&phi);
        let w = crosses(&k, &k1, &tol);
        let w = w.witness().ok_or_else(|| format!("{name}: crosses() does not confirm"))?;
        let m = w.validate(&k, &k1, tol.eps_geom).ok_or_else(|| format!("{name}: witness does not validate"))?;
        ensure(m > 1e-7, || format!("{name}: margin {m:e}"))?;
        ensure(dt < Duration::from_secs(120), || format!("{name}: took {dt:?}"))?;
        parts.push(format!("{name} {m:.2e}"));
    }
    Ok(format!("margins {}", parts.join(", ")))
}

fn ellipse_touch(nu: f64, a: f64, b: f64) -> Point {
    let h = (a * a * nu.cos().powi(2) + b * b * nu.sin().powi(2)).sqrt();
    Point::new(a * a * nu.cos() / h, b * b * nu.sin() / h)
}

fn rotated_ellipses() -> Outcome {
    let tol = Tolerance::default();
    let e1 = ConvexBody::ellipse(Point::ORIGIN, 1.0, 0.6, 0.0);
    let e2 = ConvexBody::ellipse(Point::ORIGIN, 1.0, 0.6, FRAC_PI_2);
    let ts = common_tangents(&e1, &e2, &tol);
    ensure(ts.tangents.len() == 4, || format!("{} tangents", ts.tangents.len()))?;
    for k in 0..4 {
        let want = FRAC_PI_4 + FRAC_PI_2 * k as f64;
        ensure(ts.tangents.iter().any(|t| angle_gap(t.normal, want) < 1e-6), || format!("no tangent at {want}"))?;
    }
    let w = *crosses(&e1, &e2, &tol).witness().ok_or("no crossing witness")?;
    let normals = [w.t1.outward_normal().radians(), w.t2.outward_normal().radians()];
    let uses = |nu: f64| normals.iter().any(|&n| angle_gap(n, nu) < 1e-6);
    ensure(uses(FRAC_PI_4) && uses(5.0 * FRAC_PI_4), || format!("witness tangents at {normals:?}"))?;
    let mut worst: f64 = 0.0;
    for (t, pts) in [(w.t1, [w.u1, w.u1p]), (w.t2, [w.u2, w.u2p])] {
        let nu = t.outward_normal().radians();
        let p1 = ellipse_touch(nu, 1.0, 0.6);
        let p2 = ellipse_touch(nu - FRAC_PI_2, 1.0, 0.6).rotate(FRAC_PI_2);
        let d = (pts[0].dist(p1).max(pts[1].dist(p2))).min(pts[0].dist(p2).max(pts[1].dist(p1)));
        worst = worst.max(d);
    }
    ensure(worst < 1e-6, || format!("touch points off by {worst:e}"))?;
    Ok(format!("4 tangents, witness at pi/4 and 5pi/4, touch error {worst:.1e}"))
}

fn carousel_end_to_end() -> Outcome {
    let tol = Tolerance::default();
    let k = ConvexBody::ellipse(Point::ORIGIN, 1.0, 0.8, 0.0);
    let f = carousel_falsify(&k, &SearchConfig::default(), &tol)
        .map_err(|e| format!("falsify: {e}"))?
        .ok_or("falsify found no witness")?;
    let v = carousel_check(&k, &f.k1, &f.triangle, &tol).map_err(|e| e.to_string())?;
    ensure(v.result == CarouselResult::Unsat, || format!("ellipse verdict {:?}", v.result))?;
    let worst = v.margins.iter().cloned().fold(f64::MIN, f64::max);
    ensure(worst < -1e-6, || format!("ellipse margins {:?}", v.margins))?;
    let (k0, k1, t) = segment_counterexample();
    let s = carousel_check(&k0, &k1, &t, &tol).map_err(|e| e.to_string())?;
    let sworst = s.margins.iter().cloned().fold(f64::MIN, f64::max);
    ensure(s.result == CarouselResult::Unsat && sworst < 0.0, || format!("segments {:?}", s))?;
    Ok(format!("ellipse UNSAT (max margin {worst:.2e}), segments UNSAT (max margin {sworst:.2e})"))
}

fn carousel_positive() -> Outcome {
    let tol = Tolerance::default();
    let mut rng = rng(5);
    for i in 0..100 {
        let (t, d0, d1) = disks_in_triangle(&mut rng);
        let tri = Triangle::new(t[0], t[1], t[2]).map_err(|e| e.to_string())?;
        let v = carousel_check(&d0, &d1, &tri, &tol).map_err(|e| format!("placement {i}: {e}"))?;
        ensure(matches!(v.result, CarouselResult::Sat { .. }), || {
            format!("placement {i}: {:?} for {d0:?}, {d1:?} in {t:?}", v.result)
        })?;
    }
    Ok("100 placements SAT".into())
}

fn verdict(r: &[PropertyReport], n: u8) -> PropVerdict {
    r.iter().find(|x| x.id.number() == n).map(|x| x.verdict).unwrap_or(PropVerdict::Unknown)
}

fn ladder_discrimination() -> Outcome {
    let tol = Tolerance::default().with_eps(1e-6);
    let disk = property_ladder(&ConvexBody::disk(Point::ORIGIN, 1.0), &tol);
    ensure(disk.iter().all(|r| r.verdict == PropVerdict::Pass), || format!("disk: {disk:?}"))?;
    let sq = property_ladder(&square(), &tol);
    ensure(verdict(&sq, 11) == PropVerdict::Fail && verdict(&sq, 13) == PropVerdict::Fail, || "square".into())?;
    let e = property_ladder(&ConvexBody::ellipse(Point::ORIGIN, 1.0, 0.8, 0.0), &tol);
    let opposed_at = match &e[0].witness {
        Some(Witness::Direction { theta, .. }) if e[0].verdict == PropVerdict::Fail => *theta,
        _ => return Err(format!("ellipse (9): {:?}", e[0])),
    };
    ensure(angle_gap(opposed_at, FRAC_PI_4) < 1e-12, || format!("ellipse (9) fails at {opposed_at}"))?;
    let radial = e.iter().find(|r| r.id.number() == 28).unwrap();
    let spread = radial.measure("radial_spread").unwrap_or(f64::NAN);
    ensure(radial.verdict == PropVerdict::Fail && (spread - 0.2).abs() <= 1e-6, || {
        format!("ellipse (28): {radial:?}")
    })?;
    let re = property_ladder(&ConvexBody::reuleaux(Point::ORIGIN, 2.0, 0.0), &tol);
    ensure(verdict(&re, 11) == PropVerdict::Fail && verdict(&re, 24) == PropVerdict::Fail, || "reuleaux".into())?;
    Ok(format!("disk all PASS; ellipse radial spread {spread:.9}"))
}

fn oracle_equivalence() -> Outcome {
    let tol = Tolerance::default().with_eps(1e-7);
    let mut rng = rng(7);
    let t0 = Instant::now();
    let mut contained = 0;
    for i in 0..200 {
        let ca = point_in(&mut rng, 0.3);
        let a = random_polygon(&mut rng, 20, ca, 1.0);
        let (cb, rb) = (point_in(&mut rng, 0.6), rng.gen_range(0.1..0.9));
        let b = random_polygon(&mut rng, 20, cb, rb);
        let (va, vb) = (a.vertices().unwrap(), b.vertices().unwrap());
        let worst = vb.iter().map(|&v| -a.point_margin(v)).fold(f64::MIN, f64::max);
        if worst.abs() <= 1e-7 {
            continue;
        }
        let oracle = worst <= 0.0;
        let got = contains(&a, &b, &tol);
        ensure(got.verdict != Verdict::Unknown && got.is_contained() == oracle, || {
            format!("pair {i}: contains {:?} vs oracle {oracle} (vertex excess {worst:e})", got.verdict)
        })?;
        contained += oracle as usize;
        let mut want = vertex_pair_tangents(va, vb, 1e-9);
        let ts = common_tangents(&a, &b, &tol);
        let mut have: Vec<f64> = ts.tangents.iter().map(|t| t.normal).collect();
        want.sort_by(f64::total_cmp);
        have.sort_by(f64::total_cmp);
        let matched = |xs: &[f64], ys: &[f64]| xs.iter().all(|&x| ys.iter().any(|&y| angle_gap(x, y) < 1e-7));
        ensure(want.len() == have.len() && matched(&want, &have) && matched(&have, &want), || {
            format!("pair {i}: tangents {have:?} vs oracle {want:?}")
        })?;
    }
    let dt = t0.elapsed();
    ensure(dt < Duration::from_secs(30), || format!("took {dt:?}"))?;
    Ok(format!("200 pairs agree ({contained} contained), {:.1}s", dt.as_secs_f64()))
}

fn primitive_contracts() -> Outcome {
    let mut rng = rng(8);
    let mut worst_side = f64::MIN;
    for i in 0..100 {
        let k = random_body(&mut rng);
        let c = k.center();
        let spread = 0.3 * (0..8).map(|j| k.width(PI * j as f64 / 8.0)).fold(f64::MAX, f64::min);
        let through = c + Point::unit(rng.gen_range(0.0..TAU)) * rng.gen_range(0.0..spread);
        let l = DirectedLine::new(through, Angle::new(rng.gen_range(0.0..TAU)));
        let (z, lp) = parallel_support_beyond_secant(&k, &l).map_err(|e| format!("case {i}: {e}"))?;
        let side = l.signed_distance(z).max(l.signed_distance(lp.anchor));
        worst_side = worst_side.max(side);
        ensure(side < -1e-9, || format!("case {i}: not strictly right ({side:e})"))?;
        ensure(lp.direction.dist(l.direction) < 1e-12, || format!("case {i}: not parallel"))?;
    }
    let mut worst_close: f64 = 0.0;
    for i in 0..100 {
        let k = random_body(&mut rng);
        let start = pointed_supporting_line(&k, rng.gen_range(0.0..TAU));
        let end = slide_turn(&k, start, |s| s.swept >= TAU, 720).map_err(|e| format!("slide {i}: {e}"))?;
        let d = end.psl.point.dist(start.point).max(end.psl.line.direction.dist(start.line.direction));
        worst_close = worst_close.max(d);
        ensure(d < 1e-6, || format!("slide {i}: closes to within {d:e}"))?;
    }
    Ok(format!("secant offset <= {worst_side:.2e}, slide closure {worst_close:.1e}"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        ("disk soundness", disk_soundness),
        ("non-disk refutation", non_disk_refutation),
        ("rotated-ellipse witness", rotated_ellipses),
        ("carousel end-to-end", carousel_end_to_end),
        ("carousel on disks", carousel_positive),
        ("property ladder", ladder_discrimination),
        ("oracle equivalence", oracle_equivalence),
        ("primitive contracts", primitive_contracts),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t0.elapsed().as_secs_f64();
        match out {
            Ok(msg) => println!("criterion {}: PASS [{name}] {msg} ({secs:.1}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL [{name}] {msg} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} of 8 criteria passed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
