use fzhop::charpoly::{
    cheb_p, cheb_p_star, cheb_q, p_poly, p_poly_any, p_poly_via_k, q_of_entries, q_poly,
    star_transform, symmetry_set,
};
use fzhop::signvec::enumerate_k;
use fzhop::{Complex64, IntPoly, SignVector, Window};
use proptest::prelude::*;

fn sign_vec(max_len: usize) -> impl Strategy<Value = SignVector> {
    (1..=max_len).prop_flat_map(|n| {
        prop::collection::vec(prop::bool::ANY, n).prop_map(|b| {
            SignVector::new(
                &b.iter()
                    .map(|&x| if x { 1 } else { -1 })
                    .collect::<Vec<_>>(),
            )
            .unwrap()
        })
    })
}

fn k_member(max_len: usize) -> impl Strategy<Value = SignVector> {
    (2..=max_len).prop_flat_map(|n| {
        prop::collection::vec(prop::bool::ANY, (n - 2).div_ceil(2)).prop_map(move |half| {
            let m = n - 2;
            let mut e = vec![0i8; n];
            for j in 0..m {
                let b = half[j.min(m - 1 - j)];
                e[j] = if b { 1 } else { -1 };
            }
            e[n - 2] = -1;
            e[n - 1] = 1;
            SignVector::new(&e).unwrap()
        })
    })
}

/// Points with `|λ| >= 2`.
fn outer_point() -> impl Strategy<Value = Complex64> {
    (2.0f64..6.0, 0.0f64..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn p_invariant_under_reversal_and_shifts(k in sign_vec(40), s in -80i64..80) {
        let p = p_poly_any(&k);
        prop_assert_eq!(&p_poly_any(&k.reverse()), &p);
        prop_assert_eq!(&p_poly_any(&k.cyclic_shift(s)), &p);
    }

    #[test]
    fn negation_rule(k in sign_vec(40)) {
        let n = k.len();
        prop_assert_eq!(star_transform(&p_poly_any(&k), n).unwrap(), p_poly_any(&k.negate()));
        prop_assert_eq!(star_transform(&q_poly(&k), n + 1).unwrap(), q_poly(&k.negate()));
    }

    #[test]
    fn sign_vector_involutions(k in sign_vec(64), s in -200i64..200) {
        prop_assert_eq!(k.reverse().reverse(), k);
        prop_assert_eq!(k.negate().negate(), k);
        prop_assert_eq!(k.cyclic_shift(s).cyclic_shift(-s), k);
        prop_assert_eq!(k.cyclic_shift(k.len() as i64), k);
    }

    #[test]
    fn parse_round_trips(k in sign_vec(64)) {
        prop_assert_eq!(k.to_string().parse::<SignVector>().unwrap(), k);
        prop_assert_eq!(k.to_compact().parse::<SignVector>().unwrap(), k);
    }

    #[test]
    fn q_shape(k in sign_vec(40)) {
        let q = q_poly(&k);
        let n = k.len();
        prop_assert!(q.is_monic());
        prop_assert_eq!(q.degree(), n + 1);
        if n % 2 == 1 {
            prop_assert!(q.is_even());
            prop_assert_eq!(q.coeff(0).abs(), 1);
        } else {
            prop_assert!(q.is_odd());
            prop_assert_eq!(q.coeff(0), 0);
        }
    }

    #[test]
    fn q_growth_outside_radius_two(k in sign_vec(24), z in outer_point()) {
        let e = k.entries();
        let n = e.len();
        let q = q_of_entries(&e).evaluate(z).norm();
        let slack = 1e-9 * q;
        prop_assert!(q + slack >= (n + 2) as f64);
        prop_assert!(q + slack >= q_of_entries(&e[..n - 1]).evaluate(z).norm() + 1.0);
        prop_assert!(q + slack >= q_of_entries(&e[1..]).evaluate(z).norm() + 1.0);
    }

    #[test]
    fn p_growth_on_k(k in k_member(24), z in outer_point()) {
        let p = p_poly(&k).unwrap().evaluate(z).norm();
        prop_assert!(p * (1.0 + 1e-9) >= 2.0 * k.len() as f64);
    }

    #[test]
    fn generated_members_are_in_k(k in k_member(64)) {
        prop_assert!(k.is_in_k());
    }

    #[test]
    fn factorisation_on_k(k in k_member(40)) {
        prop_assert_eq!(p_poly_via_k(&k).unwrap(), p_poly(&k).unwrap());
    }

    #[test]
    fn window_round_trips(a in -5.0f64..0.0, b in 0.1f64..5.0, c in -5.0f64..0.0, d in 0.1f64..5.0) {
        let w = Window::new(a, b, c, d).unwrap();
        prop_assert_eq!(w.to_string().parse::<Window>().unwrap(), w);
    }
}

#[test]
fn q_growth_exhaustive_on_small_lengths() {
    let pts: Vec<Complex64> = (0..200)
        .map(|j| Complex64::from_polar(2.0 + (j % 7) as f64 * 0.37, 0.1 + j as f64 * 0.731))
        .collect();
    for n in 1..=10 {
        for k in SignVector::all(n).unwrap() {
            let q = q_poly(&k);
            for &z in &pts {
                let v = q.evaluate(z).norm();
                assert!(v * (1.0 + 1e-12) >= (n + 2) as f64, "{k} at {z}");
            }
        }
    }
}

#[test]
fn k_enumeration_matches_brute_force() {
    for n in 2..=16 {
        let brute: Vec<SignVector> = SignVector::all(n)
            .unwrap()
            .filter(|k| k.is_in_k())
            .collect();
        let listed = enumerate_k(n).unwrap();
        assert_eq!(listed, brute, "n = {n}");
        assert_eq!(listed.len(), 1 << (n.div_ceil(2) - 1));
    }
}

#[test]
fn chebyshev_families_from_sign_vectors() {
    for m in 2..=12 {
        let mut e = vec![1i8; m];
        e[m - 2] = -1;
        assert_eq!(
            p_poly(&SignVector::new(&e).unwrap()).unwrap(),
            cheb_p(m).unwrap(),
            "P_{m}"
        );
        let mut e = vec![-1i8; m];
        e[m - 1] = 1;
        assert_eq!(
            p_poly(&SignVector::new(&e).unwrap()).unwrap(),
            cheb_p_star(m).unwrap(),
            "P_{m}*"
        );
    }
    for m in 2..=8 {
        let e: Vec<i8> = (1..2 * m)
            .map(|j| if j % 2 == 0 { 1 } else { -1 })
            .collect();
        assert_eq!(
            p_poly(&SignVector::new(&e).unwrap()).unwrap(),
            cheb_q(m).unwrap(),
            "Q_{m}"
        );
    }
}

#[test]
fn chebyshev_closed_form() {
    // P_m(2 cos θ) = 2 cos θ · sin(mθ)/sin θ.
    for m in 1..=30 {
        let p = cheb_p(m).unwrap();
        for j in 1..10 {
            let t = j as f64 * 0.3;
            let x = 2.0 * t.cos();
            let want = x * (m as f64 * t).sin() / t.sin();
            let scale = p.abs_eval(x.abs());
            assert!(
                (p.eval_f64(x) - want).abs() <= 1e-13 * scale + 1e-9,
                "m = {m}"
            );
        }
    }
}

#[test]
fn small_polynomials_at_zero() {
    let set = symmetry_set(8).unwrap();
    for s in &set {
        let p = &s.poly;
        let d = p.derivative();
        if p.degree() % 2 == 0 {
            assert!(p.is_even(), "{p}");
            assert_eq!((p.coeff(0), d.coeff(0)), (0, 0), "{p}");
        } else if p.degree() <= 7 {
            assert!(p.is_odd(), "{p}");
            assert_eq!(p.coeff(0), 0, "{p}");
            assert_eq!(d.coeff(0).abs(), 1, "{p}");
        }
    }
}

#[test]
fn q_values_for_a_fixed_vector() {
    // Direct 3x3 determinant of the tridiagonal matrix with subdiagonal
    // entries (k_1, k_2) and ones above, compared with q for k = (1, -1).
    let k = SignVector::new(&[1, -1]).unwrap();
    let q = q_poly(&k);
    // det [[λ,1,0],[k1,λ,1],[0,k2,λ]] = λ^3 - λ(k1 + k2)
    assert_eq!(q, IntPoly::new(vec![0, 0, 0, 1]));
}
