//! Property tests for assembly and material invariants.

use nalgebra::DVector;
use proptest::prelude::*;
use ssi_model::{
    build_soil_structure_model, period_lengthening, DampingSpec, FoundationModel,
    FoundationProps, NonlinearMaterial, Story, SupportCompliance,
};

fn story_strategy() -> impl Strategy<Value = Story> {
    (
        0.1..100.0_f64,
        0.5..10.0_f64,
        1.0..1e6_f64,
        0.0..50.0_f64,
    )
        .prop_map(|(mass, height, stiffness, rotary_inertia)| Story {
            mass,
            height,
            stiffness,
            rotary_inertia,
            yield_disp: None,
            hardening: 0.0,
        })
}

proptest! {
    #[test]
    fn assembled_matrices_are_symmetric(
        stories in prop::collection::vec(story_strategy(), 1..6),
        mf in 0.0..100.0_f64,
        lf in 0.0..100.0_f64,
        e in 0.0..5.0_f64,
        k0h in 1.0..1e6_f64,
        c0h in 0.0..1e4_f64,
        k0r in 1.0..1e8_f64,
        c0r in 0.0..1e6_f64,
        c1r in 0.0..1e6_f64,
        i1r in 0.1..1e4_f64,
    ) {
        let n = stories.len();
        let model = build_soil_structure_model(
            &stories,
            &FoundationProps { mass: mf, rotary_inertia: lf, eccentricity: e },
            &FoundationModel::Physical { k0h, c0h, k0r, c0r, c1r, i1r, fk: 0.0, fc: 0.0 },
            &DampingSpec::Rayleigh { alpha_m: 0.1, beta_k: 0.001 },
        ).unwrap();
        let k = model.initial_stiffness();
        for a in [&model.mass, &model.damping, &k] {
            let asym = (a - a.transpose()).abs().max();
            prop_assert!(asym <= 1e-9 * a.abs().max().max(1.0));
        }
        // top story diagonal carries only its own stiffness
        prop_assert!((k[(n - 1, n - 1)] - stories[n - 1].stiffness).abs()
            <= 1e-12 * stories[n - 1].stiffness);
        // mass must stay positive definite (Cholesky succeeds)
        prop_assert!(model.mass.clone().cholesky().is_some());
    }

    #[test]
    fn restoring_force_is_consistent_with_the_tangent(
        stories in prop::collection::vec(story_strategy(), 1..5),
        scale in 1e-6..1e-3_f64,
    ) {
        let model = build_soil_structure_model(
            &stories,
            &FoundationProps { mass: 1.0, rotary_inertia: 1.0, eccentricity: 1.0 },
            &FoundationModel::SwayOnly { k0h: 100.0, c0h: 1.0, fk: 0.0, fc: 0.0 },
            &DampingSpec::Rayleigh { alpha_m: 0.0, beta_k: 0.0 },
        ).unwrap();
        let n = model.ndof();
        let u = DVector::from_fn(n, |i, _| scale * ((i + 1) as f64));
        let (f, kt) = model.internal_force_and_tangent(&u);
        // elastic everywhere: force equals tangent times displacement
        let err = (&kt * &u - &f).abs().max();
        prop_assert!(err <= 1e-9 * f.abs().max().max(1e-30));
    }

    #[test]
    fn unloading_tangent_is_elastic(
        u1 in -0.01..0.01_f64,
        uy in 1e-4..1e-2_f64,
        hardening in 0.0..0.9_f64,
    ) {
        let k = 250.0;
        let mut m = NonlinearMaterial::kinematic_hardening(k, uy, hardening).unwrap();
        m.commit(u1);
        let (f1, _) = m.force_and_tangent(u1);
        let step = 0.05 * uy * if f1 >= 0.0 { -1.0 } else { 1.0 };
        let (_, kt) = m.force_and_tangent(u1 + step);
        prop_assert!((kt - k).abs() <= 1e-9 * k);
    }

    #[test]
    fn zero_hardening_matches_the_perfectly_plastic_rule(
        path in prop::collection::vec(-0.02..0.02_f64, 1..12),
        uy in 1e-4..1e-2_f64,
    ) {
        let k = 180.0;
        let mut a = NonlinearMaterial::kinematic_hardening(k, uy, 0.0).unwrap();
        let mut b = NonlinearMaterial::elastic_perfectly_plastic(k, uy).unwrap();
        for &u in &path {
            let (fa, ka) = a.force_and_tangent(u);
            let (fb, kb) = b.force_and_tangent(u);
            prop_assert!((fa - fb).abs() <= 1e-12 * (k * uy));
            prop_assert!((ka - kb).abs() <= 1e-12 * k);
            a.commit(u);
            b.commit(u);
        }
    }

    #[test]
    fn period_ratio_decreases_with_rocking_stiffness(
        k_s in 10.0..1e4_f64,
        h_s in 1.0..30.0_f64,
        kt_low in 1e2..1e6_f64,
        factor in 1.5..100.0_f64,
    ) {
        let kt_high = kt_low * factor;
        let ku = k_s * 2.0;
        let run = |kt: f64| {
            let sway = move |_: f64| ku;
            let rocking = move |_: f64| kt;
            let fnd = |_: f64| 0.0;
            period_lengthening(
                k_s, h_s, 0.5, 0.05,
                &SupportCompliance {
                    sway_stiffness: &sway,
                    rocking_stiffness: &rocking,
                    foundation_damping: &fnd,
                },
                1e-12, 200,
            ).unwrap().ratio
        };
        let (r_low, r_high) = (run(kt_low), run(kt_high));
        prop_assert!(r_low >= r_high);
        prop_assert!(r_high >= 1.0);
    }
}
