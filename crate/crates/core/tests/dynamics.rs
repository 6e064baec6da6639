use fzhop::charpoly::{cheb_p, cheb_p_star, symmetry_set};
use fzhop::dynamics::{
    attracting_fixed_point_sweep, classify_all_critical_orbits, filled_julia_raster,
    find_attracting_fixed_points, fixed_points, inverse_cloud, inverse_cloud_from, iterate_orbit,
    julia_membership_raster, OrbitStatus, TrapParams, COUNTEREXAMPLE_K, DEFAULT_MAX_ITER,
};
use fzhop::raster::{MEMBER, OUTSIDE};
use fzhop::spectra::{pi_cumulative, PointIndex};
use fzhop::{Complex64, IntPoly, SignVector, Window};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn backward_orbits_map_onto_previous_level() {
    let seeds: Vec<Complex64> = (0..40)
        .map(|j| Complex64::from_polar(0.3 + 0.015 * j as f64, 0.37 * j as f64))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for s in symmetry_set(6).unwrap() {
        let p = &s.poly;
        let depth = 3;
        let cloud = inverse_cloud_from(p, &seeds, depth, 5_000, 1).unwrap();
        for d in 1..=depth {
            let level: Vec<Complex64> = cloud
                .points
                .iter()
                .filter(|q| q.param == d as f64)
                .map(|q| q.z)
                .collect();
            let parents: Vec<Complex64> = if d == 1 {
                seeds.clone()
            } else {
                cloud
                    .points
                    .iter()
                    .filter(|q| q.param == (d - 1) as f64)
                    .map(|q| q.z)
                    .collect()
            };
            let idx = PointIndex::new(&parents).unwrap();
            for z in level.choose_multiple(&mut rng, 100) {
                let dist = idx.nearest_distance(p.evaluate(*z));
                assert!(dist <= 1e-8, "{p} level {d}: {dist:e}");
            }
        }
    }
}

#[test]
fn inverse_cloud_of_square_approaches_circle() {
    let sq = IntPoly::monomial(1, 2);
    let seeds: Vec<Complex64> = (0..16)
        .map(|j| Complex64::from_polar(0.9, 0.4 * j as f64))
        .collect();
    let cloud = inverse_cloud_from(&sq, &seeds, 6, 1 << 20, 0).unwrap();
    for pt in &cloud.points {
        let want = 0.9f64.powf(0.5f64.powi(pt.param as i32));
        assert!((pt.z.norm() - want).abs() < 1e-12);
    }
    assert_eq!(cloud.len(), 16 * (2 + 4 + 8 + 16 + 32 + 64));
}

#[test]
fn inverse_clouds_of_s_stay_inside_radius_two() {
    for s in symmetry_set(7).unwrap() {
        let cloud = inverse_cloud(&s.poly, 6, 2000, 9).unwrap();
        assert!(!cloud.is_empty());
        for z in cloud.zs() {
            assert!(z.norm() < 2.0, "{}: {z}", s.poly);
        }
    }
}

#[test]
fn inverse_cloud_of_p2_fills_the_disk() {
    let p2 = cheb_p(2).unwrap();
    let mut cloud = inverse_cloud(&p2, 8, 5000, 2).unwrap().zs();
    // Symmetrise under z ↦ iz and conjugation.
    let base = cloud.clone();
    for z in base {
        cloud.extend([z * c(0.0, 1.0), z.conj(), -z]);
    }
    let idx = PointIndex::new(&cloud).unwrap();
    // Preimages under λ² have density ∝ |z|², so the centre is sampled
    // most thinly.
    let (mut outer, mut inner): (f64, f64) = (0.0, 0.0);
    for i in -20..=20 {
        for j in -20..=20 {
            let z = c(i as f64 / 20.0, j as f64 / 20.0);
            let d = idx.nearest_distance(z);
            if z.norm() <= 1.0 {
                inner = inner.max(d);
            }
            if z.norm() <= 1.0 && z.norm() >= 0.3 {
                outer = outer.max(d);
            }
        }
    }
    assert!(outer < 0.05, "{outer}");
    assert!(inner < 0.15, "{inner}");
    assert!(cloud.iter().all(|z| z.norm() <= 1.0 + 1e-12));
}

#[test]
fn members_of_s_have_no_member_pixels_beyond_two() {
    for s in symmetry_set(6).unwrap() {
        let max_iter = 200;
        let g = filled_julia_raster(
            &s.poly,
            Window::square(2.6).unwrap(),
            128,
            128,
            max_iter,
            true,
        )
        .unwrap();
        for j in 0..128 {
            for i in 0..128 {
                if g.get(i, j) == max_iter as u32 {
                    assert!(g.center(i, j).norm() <= 2.0, "{}", s.poly);
                }
            }
        }
    }
}

#[test]
fn julia_boundaries_near_periodic_spectra() {
    let pi10 = pi_cumulative(10, 129).unwrap();
    let idx = PointIndex::new(&pi10.zs()).unwrap();
    for m in 2..=5 {
        let p = cheb_p(m).unwrap();
        let g =
            julia_membership_raster(&p, Window::square(2.2).unwrap(), 256, 256, 500, true).unwrap();
        let mut worst: f64 = 0.0;
        for j in 1..255 {
            for i in 1..255 {
                if g.get(i, j) != MEMBER {
                    continue;
                }
                let edge = [(i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)]
                    .iter()
                    .any(|&(a, b)| g.get(a, b) == OUTSIDE);
                if edge {
                    worst = worst.max(idx.nearest_distance(g.center(i, j)));
                }
            }
        }
        assert!(worst <= 0.05, "P_{m}: {worst}");
    }
}

#[test]
fn orbit_examples() {
    let trap = TrapParams::default();
    let p4s = cheb_p_star(4).unwrap();
    let v = iterate_orbit(&p4s, c(0.0, 1.0), 100, &trap, true);
    assert_eq!(v.status, OrbitStatus::Escaped);
    assert_eq!(v.witness, c(3.0, 0.0));
    assert_eq!(
        iterate_orbit(&p4s, c(0.0, 0.0), 100, &trap, true).status,
        OrbitStatus::TrappedInT
    );
    let sq = IntPoly::monomial(1, 2);
    assert_eq!(
        iterate_orbit(&sq, c(0.5, 0.0), 100, &trap, true).status,
        OrbitStatus::TrappedInT
    );
    assert_eq!(
        iterate_orbit(&sq, c(1.5, 0.0), 100, &trap, true).status,
        OrbitStatus::Escaped
    );
    // The boundary circle is invariant; the disk part of T keeps it.
    assert_eq!(
        iterate_orbit(&sq, Complex64::from_polar(1.0, 0.3), 100, &trap, true).status,
        OrbitStatus::TrappedInT
    );
    // Too few iterations to decide.
    assert_eq!(
        iterate_orbit(&sq, c(0.5, 0.0), 10, &trap, true).status,
        OrbitStatus::Undecided
    );
}

#[test]
fn chebyshev_critical_orbits_decided() {
    let trap = TrapParams::default();
    for m in 2..=8 {
        let p = cheb_p(m).unwrap();
        let v = classify_all_critical_orbits(&p, DEFAULT_MAX_ITER, &trap).unwrap();
        for (z, verdict) in &v {
            assert_ne!(verdict.status, OrbitStatus::Undecided, "P_{m} at {z}");
        }
    }
}

#[test]
fn fixed_point_residuals() {
    for s in symmetry_set(12).unwrap() {
        for (z, _) in fixed_points(&s.poly).unwrap() {
            let r = (s.poly.evaluate(z) - z).norm();
            assert!(r <= 1e-9, "{}: {z} residual {r:e}", s.poly);
        }
    }
    let k = SignVector::new(&COUNTEREXAMPLE_K).unwrap();
    let p = fzhop::charpoly::p_poly(&k).unwrap();
    for (z, _) in fixed_points(&p).unwrap() {
        assert!((p.evaluate(z) - z).norm() <= 1e-9, "{z}");
    }
}

#[test]
fn zero_is_attracting_for_even_members() {
    for s in symmetry_set(8).unwrap() {
        let p = &s.poly;
        if p.degree() % 2 != 0 {
            continue;
        }
        let att = find_attracting_fixed_points(p).unwrap();
        assert!(
            att.iter().any(|(z, m)| z.norm() < 1e-12 && m.norm() == 0.0),
            "{p}"
        );
    }
}

#[test]
fn attracting_fixed_points_of_square() {
    let sq = IntPoly::monomial(1, 2);
    let all = fixed_points(&sq).unwrap();
    assert_eq!(all.len(), 2);
    let att = find_attracting_fixed_points(&sq).unwrap();
    assert_eq!(att.len(), 1);
    assert!(att[0].0.norm() < 1e-12 && att[0].1.norm() == 0.0);
}

#[test]
fn sweep_finds_the_degree_18_example() {
    let hits = attracting_fixed_point_sweep(20).unwrap();
    let k = SignVector::new(&COUNTEREXAMPLE_K).unwrap();
    let p = fzhop::charpoly::p_poly(&k).unwrap();
    let found = hits
        .iter()
        .find(|h| h.poly == p && (h.point - c(1.21544069, 0.0)).norm() < 1e-6)
        .expect("degree-18 example");
    assert!((found.multiplier.re + 0.69).abs() < 1e-2);
    // No smaller member of S has such a fixed point.
    assert!(
        hits.iter().all(|h| h.poly.degree() >= 18),
        "{:?}",
        hits.iter().map(|h| h.poly.degree()).collect::<Vec<_>>()
    );
    for h in hits.iter().filter(|h| h.poly.degree() == 19) {
        eprintln!(
            "degree 19: k = {}, fixed point {:.10}, multiplier {:.6}",
            h.k, h.point, h.multiplier
        );
    }
}
