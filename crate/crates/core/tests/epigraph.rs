use translative::epigraph::{
    epi_direction, epi_oracle, extend, monotone_transfer_check, restriction_check,
    strict_transfer_check, AffineTerm, ExtendedFunction,
};
use translative::generate::builtin_functions;
use translative::oracle::{dir_closure_member, phi_oracle};
use translative::props::{
    check_convex, check_pos_homog, check_subadditive, check_translative, ConeSpec, Sampler,
};
use translative::{ExtReal, TriState};

const TOL: f64 = 1e-9;

fn lifted_samples(seed: u64, n: usize, count: usize) -> Vec<Vec<f64>> {
    Sampler::new(seed).box_points(n + 1, count, 10.0)
}

#[test]
fn identity_and_oracle_agree_for_every_family() {
    for f in builtin_functions(2) {
        let phi = extend(&f);
        let oracle = epi_oracle(&f);
        let k = epi_direction(2);
        for z in lifted_samples(1, 2, 60) {
            let (y, s) = (&z[..2], z[2]);
            let exact = phi.eval(&z).unwrap();
            assert_eq!(exact, f.eval(y).unwrap().sub_finite(s));
            let approx = phi_oracle(&oracle, &k, &z, TOL).unwrap();
            assert!(exact.approx_eq(approx, 2.0 * TOL), "{}: {z:?} {exact} vs {approx}", f.label());
        }
        let ys = Sampler::new(2).box_points(2, 60, 10.0);
        assert!(restriction_check(&f, &ys, TOL, true).unwrap().passed(), "{}", f.label());
    }
}

#[test]
fn extensions_are_translative() {
    let ts = [-2.0, 0.5, 7.0];
    for f in builtin_functions(3) {
        let zs = lifted_samples(3, 3, 50);
        let r = check_translative(&extend(&f), &epi_direction(3), &zs, &ts, TOL).unwrap();
        assert!(r.passed(), "{}", f.label());
    }
}

#[test]
fn epigraphs_are_directionally_closed() {
    for f in builtin_functions(2) {
        let o = epi_oracle(&f);
        let k = epi_direction(2);
        for z in lifted_samples(4, 2, 40) {
            if dir_closure_member(&o, &k, &z, 1.0, 40).unwrap() == TriState::In {
                let fy = f.eval(&z[..2]).unwrap();
                assert!(fy.le_tol(ExtReal::finite(z[2]), 1e-11), "{}: {z:?}", f.label());
            }
        }
    }
}

#[test]
fn properties_transfer_to_the_extension() {
    let zs = lifted_samples(5, 2, 300);
    let abs = extend(&ExtendedFunction::abs_sum(2).unwrap());
    assert!(check_convex(&abs, &zs, &[0.3, 0.5], TOL).unwrap().passed());
    assert!(check_pos_homog(&abs, &zs, &[0.5, 4.0], TOL).unwrap().passed());
    assert!(check_subadditive(&abs, &zs, 5000, TOL).unwrap().passed());

    // −|y₁| breaks convexity and subadditivity; an offset breaks homogeneity
    let concave = extend(&ExtendedFunction::from_fn(2, "neg_abs", |y| ExtReal::from(-y[0].abs())));
    assert!(!check_convex(&concave, &zs, &[0.3, 0.5], TOL).unwrap().passed());
    assert!(!check_subadditive(&concave, &zs, 5000, TOL).unwrap().passed());
    let offset = extend(
        &ExtendedFunction::max_affine(vec![AffineTerm { c: vec![1.0, 1.0], c0: 1.0 }]).unwrap(),
    );
    assert!(!check_pos_homog(&offset, &zs, &[0.5, 4.0], TOL).unwrap().passed());
}

#[test]
fn monotone_transfer_on_orthant() {
    let mut s = Sampler::new(6);
    let base = s.box_points(2, 30, 5.0);
    let plus = ConeSpec::nonnegative_orthant(2);
    let cloud = s.displaced_cloud(&base, &plus, 2, 2.0);
    for f in builtin_functions(2) {
        let r = monotone_transfer_check(&f, &plus, &cloud, 1000, TOL).unwrap();
        assert!(r.agree, "{}: {:?} vs {:?}", f.label(), r.f_side.verdict, r.phi_side.verdict);
    }
}

#[test]
fn strict_transfer_needs_finite_values_when_zero_is_in_the_cone() {
    let samples = vec![vec![0.0, 0.0], vec![1.0, 1.0]];
    let zero = ConeSpec::zero(2);
    let finite = ExtendedFunction::abs_sum(2).unwrap();
    assert!(strict_transfer_check(&finite, &zero, &samples, 10).unwrap().agree);
    let top = ExtendedFunction::constant(2, ExtReal::PosInf).unwrap();
    let r = strict_transfer_check(&top, &zero, &samples, 10).unwrap();
    assert!(r.f_side.passed() && !r.phi_side.passed());
}
