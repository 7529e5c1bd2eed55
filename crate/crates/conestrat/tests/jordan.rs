use conestrat::jordan::{
    self, box_op, cone_power, in_cone, lmap, lorentz_boost, lorentz_rotation, polar_decompose, product, quad_rep,
    quad_rep_polarized, sample_element, sample_in_cone, spectral_rank2, spectral_sym, sym_congruence, sym_from_matrix,
    sym_to_matrix, trace_form, AlgebraDescriptor, JordanElement,
};
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn close(a: &JordanElement, b: &JordanElement, tol: f64) -> bool {
    let scale = 1.0 + b.coords.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    a.coords.iter().zip(&b.coords).all(|(x, y)| (x - y).abs() <= tol * scale)
}

fn algebras() -> Vec<AlgebraDescriptor> {
    (3..=6).map(AlgebraDescriptor::lorentz).chain((2..=4).map(AlgebraDescriptor::sym)).collect()
}

/// `(x₀y₀ + ⟨x̄, ȳ⟩, x₀ȳ + y₀x̄)`.
fn lorentz_product_oracle(x: &[f64], y: &[f64]) -> Vec<f64> {
    let mut out = vec![x.iter().zip(y).map(|(a, b)| a * b).sum()];
    out.extend((1..x.len()).map(|i| x[0] * y[i] + y[0] * x[i]));
    out
}

#[test]
fn lorentz_product_matches_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in 3..=6 {
        let a = AlgebraDescriptor::lorentz(n);
        for _ in 0..20 {
            let x = sample_element(&a, &mut rng);
            let y = sample_element(&a, &mut rng);
            let xy = product(&x, &y).unwrap();
            let want = JordanElement::new(&a, lorentz_product_oracle(&x.coords, &y.coords)).unwrap();
            assert!(close(&xy, &want, 1e-14));
            assert!((jordan::trace(&x) - 2.0 * x.coords[0]).abs() < 1e-14);
            let d = x.coords[0].powi(2) - x.coords[1..].iter().map(|c| c * c).sum::<f64>();
            assert!((jordan::det(&x) - d).abs() < 1e-12);
        }
    }
}

#[test]
fn sym_product_is_symmetrized_matrix_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for n in 2..=4 {
        let a = AlgebraDescriptor::sym(n);
        for _ in 0..20 {
            let x = sample_element(&a, &mut rng);
            let y = sample_element(&a, &mut rng);
            let (mx, my) = (sym_to_matrix(&x).unwrap(), sym_to_matrix(&y).unwrap());
            let want = sym_from_matrix(&((&mx * &my + &my * &mx) * 0.5));
            assert!(close(&product(&x, &y).unwrap(), &want, 1e-13));
            assert!((jordan::trace(&x) - mx.trace()).abs() < 1e-13);
            assert!((jordan::det(&x) - mx.determinant()).abs() < 1e-12);
            // P(X)Y = XYX.
            let want = sym_from_matrix(&(&mx * &my * &mx));
            assert!(close(&quad_rep(&x).apply(&y).unwrap(), &want, 1e-12));
        }
    }
}

#[test]
fn sym_matrix_round_trip() {
    let m = DMatrix::from_row_slice(3, 3, &[1.0, 2.0, 3.0, 2.0, 5.0, -1.0, 3.0, -1.0, 7.0]);
    assert_eq!(sym_to_matrix(&sym_from_matrix(&m)).unwrap(), m);
}

#[test]
fn identity_is_unit() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for a in algebras() {
        let e = jordan::identity(&a);
        let x = sample_element(&a, &mut rng);
        assert!(close(&product(&e, &x).unwrap(), &x, 1e-15));
        assert!((jordan::det(&e) - 1.0).abs() < 1e-15);
        assert!(in_cone(&e));
    }
}

#[test]
fn quad_rep_definitions_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for a in algebras() {
        for _ in 0..10 {
            let x = sample_element(&a, &mut rng);
            let y = sample_element(&a, &mut rng);
            let z = sample_element(&a, &mut rng);
            // P(x) = 2L(x)² − L(x²).
            let x2 = product(&x, &x).unwrap();
            let l = lmap(&x);
            let want = &l.matrix * &l.matrix * 2.0 - &lmap(&x2).matrix;
            assert!((&quad_rep(&x).matrix - want).amax() < 1e-12);
            // P(x)e = x².
            assert!(close(&quad_rep(&x).apply(&jordan::identity(&a)).unwrap(), &x2, 1e-12));
            // P(x, x) = P(x), and x□y z = x(yz) + (xy)z − y(xz).
            assert!((&quad_rep_polarized(&x, &x).unwrap().matrix - &quad_rep(&x).matrix).amax() < 1e-12);
            let lhs = box_op(&x, &y).unwrap().apply(&z).unwrap();
            let yz = product(&y, &z).unwrap();
            let xy = product(&x, &y).unwrap();
            let xz = product(&x, &z).unwrap();
            let rhs = product(&x, &yz).unwrap().lincomb(1.0, &product(&xy, &z).unwrap(), 1.0).unwrap();
            let rhs = rhs.lincomb(1.0, &product(&y, &xz).unwrap(), -1.0).unwrap();
            assert!(close(&lhs, &rhs, 1e-12));
        }
    }
}

#[test]
fn inverse_and_powers() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for a in algebras() {
        for _ in 0..10 {
            let x = sample_in_cone(&a, &mut rng);
            let e = jordan::identity(&a);
            let inv = jordan::inverse(&x).unwrap();
            assert!(close(&product(&x, &inv).unwrap(), &e, 1e-10));
            let r = jordan::sqrt(&x).unwrap();
            assert!(in_cone(&r));
            assert!(close(&product(&r, &r).unwrap(), &x, 1e-10));
            let s = cone_power(&x, 0.3).unwrap();
            let t = cone_power(&x, 0.7).unwrap();
            assert!(close(&product(&s, &t).unwrap(), &x, 1e-10));
            assert!((jordan::det(&s) - jordan::det(&x).powf(0.3)).abs() < 1e-10 * jordan::det(&x).powf(0.3));
            // P(x)⁻¹ = P(x⁻¹).
            let pinv = quad_rep(&x).inverse().unwrap();
            assert!((&pinv.matrix - &quad_rep(&inv).matrix).amax() < 1e-8 * (1.0 + pinv.matrix.amax()));
        }
    }
}

#[test]
fn spectral_decompositions_reconstruct() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let a = AlgebraDescriptor::lorentz(5);
    for _ in 0..10 {
        let x = sample_element(&a, &mut rng);
        let ((l1, l2), c1, c2) = spectral_rank2(&x).unwrap();
        assert!(l1 >= l2);
        assert!(close(&c1.lincomb(l1, &c2, l2).unwrap(), &x, 1e-12));
        assert!(close(&product(&c1, &c1).unwrap(), &c1, 1e-12));
        assert!(product(&c1, &c2).unwrap().coords.iter().all(|c| c.abs() < 1e-12));
        assert!((l1 * l2 - jordan::det(&x)).abs() < 1e-12);
    }
    let a = AlgebraDescriptor::sym(3);
    for _ in 0..10 {
        let x = sample_element(&a, &mut rng);
        let (ev, frame) = spectral_sym(&x).unwrap();
        assert!(ev.windows(2).all(|w| w[0] >= w[1]));
        let mut acc = JordanElement::new(&a, vec![0.0; a.n]).unwrap();
        for (l, c) in ev.iter().zip(&frame) {
            acc = acc.lincomb(1.0, c, *l).unwrap();
        }
        assert!(close(&acc, &x, 1e-12));
        assert!((ev.iter().product::<f64>() - jordan::det(&x)).abs() < 1e-11);
    }
    assert!(spectral_rank2(&jordan::identity(&AlgebraDescriptor::sym(2))).is_err());
}

#[test]
fn cone_automorphisms() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let a = AlgebraDescriptor::lorentz(4);
    let g = lorentz_boost(&a, 2, 0.7).unwrap().compose(&lorentz_rotation(&a, 1, 3, 0.4).unwrap()).unwrap();
    for _ in 0..10 {
        let x = sample_in_cone(&a, &mut rng);
        let gx = g.apply(&x).unwrap();
        assert!(in_cone(&gx));
        assert!((jordan::det(&gx) - jordan::det(&x)).abs() < 1e-10 * jordan::det(&x));
    }
    let (c, k) = polar_decompose(&g).unwrap();
    assert!(in_cone(&c));
    assert!((&quad_rep(&c).compose(&k).unwrap().matrix - &g.matrix).amax() < 1e-10);
    assert!((&k.adjoint().compose(&k).unwrap().matrix - DMatrix::identity(4, 4)).amax() < 1e-10);

    let m = DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 0.0, 1.5]);
    let s = sym_congruence(&m);
    let x = sample_in_cone(&AlgebraDescriptor::sym(2), &mut rng);
    let want = sym_from_matrix(&(&m * sym_to_matrix(&x).unwrap() * m.transpose()));
    assert!(close(&s.apply(&x).unwrap(), &want, 1e-12));
    assert!((s.det() - m.determinant().powi(3)).abs() < 1e-10);
}

#[test]
fn mismatched_algebras_are_rejected() {
    let a = AlgebraDescriptor::lorentz(3);
    let b = AlgebraDescriptor::sym(2);
    assert!(JordanElement::new(&a, vec![1.0, 0.0]).is_err());
    let x = jordan::identity(&a);
    let y = jordan::identity(&b);
    assert!(product(&x, &y).is_err());
    assert!(trace_form(&x, &y).is_err());
    assert!(quad_rep(&x).apply(&y).is_err());
}

proptest! {
    #[test]
    fn det_of_quad_action(seed in any::<u64>(), which in 0usize..7) {
        let a = &algebras()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = sample_in_cone(a, &mut rng);
        let y = sample_in_cone(a, &mut rng);
        let lhs = jordan::det(&quad_rep(&y).apply(&x).unwrap());
        let rhs = jordan::det(&y).powi(2) * jordan::det(&x);
        prop_assert!((lhs - rhs).abs() <= 1e-9 * rhs.abs());
        prop_assert!(in_cone(&quad_rep(&y).apply(&x).unwrap()));
    }

    #[test]
    fn trace_form_is_symmetric_and_associative(seed in any::<u64>(), which in 0usize..7) {
        let a = &algebras()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = sample_element(a, &mut rng);
        let y = sample_element(a, &mut rng);
        let z = sample_element(a, &mut rng);
        prop_assert!((trace_form(&x, &y).unwrap() - trace_form(&y, &x).unwrap()).abs() < 1e-12);
        let l = trace_form(&product(&x, &y).unwrap(), &z).unwrap();
        let r = trace_form(&x, &product(&y, &z).unwrap()).unwrap();
        prop_assert!((l - r).abs() < 1e-11);
    }
}
