mod common;

use proptest::prelude::*;
use stacking_core::{generate, validate_instance, DistributionSpec, STUDY_PRESETS};

#[test]
fn same_arguments_same_instance() {
    for s in STUDY_PRESETS.iter().chain(&["usq", "fixed:0.1"]) {
        let spec: DistributionSpec = s.parse().unwrap();
        assert_eq!(
            generate(&spec, 500, 42).unwrap(),
            generate(&spec, 500, 42).unwrap()
        );
        assert_ne!(
            generate(&spec, 500, 42).unwrap(),
            generate(&spec, 500, 43).unwrap()
        );
    }
}

#[test]
fn uniform_square_mean_length() {
    // E|a - b| for independent uniforms is 1/3
    let inst = generate(&DistributionSpec::UniformSquare, 100_000, 2024).unwrap();
    let mean = inst.iter().map(|i| i.len()).sum::<f64>() / inst.len() as f64;
    assert!((mean - 1.0 / 3.0).abs() < 0.01, "{mean}");
}

#[test]
fn bounded_length_mean_matches_band_density() {
    // on the band |a - b| <= l the length has density 2(1 - x) / (l(2 - l)),
    // giving E = (l^2 - 2 l^3 / 3) / (l (2 - l))
    for ell in [0.1, 0.5, 0.8] {
        let expected = (ell * ell - 2.0 * ell * ell * ell / 3.0) / (ell * (2.0 - ell));
        let inst = generate(&DistributionSpec::UniformMaxLen { ell }, 50_000, 3).unwrap();
        let mean = inst.iter().map(|i| i.len()).sum::<f64>() / inst.len() as f64;
        assert!(
            (mean - expected).abs() < 0.01 * ell.max(0.1),
            "ell {ell}: {mean} vs {expected}"
        );
    }
}

#[test]
fn gaussian_intervals_leave_the_unit_interval() {
    let spec: DistributionSpec = "g:0:5:1:0.2".parse().unwrap();
    let inst = generate(&spec, 2000, 1).unwrap();
    assert!(inst.iter().any(|i| i.start < 0.0));
    assert!(inst.iter().any(|i| i.end > 1.0));
    let mean_len = inst.iter().map(|i| i.len()).sum::<f64>() / inst.len() as f64;
    assert!((mean_len - 1.0).abs() < 0.03, "{mean_len}");
}

#[test]
fn arrival_order_is_start_order() {
    let inst = generate(&"u:0.3".parse().unwrap(), 1000, 8).unwrap();
    assert!(inst.items().windows(2).all(|w| w[0].start < w[1].start));
    assert!(inst.iter().enumerate().all(|(k, i)| i.id == k));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_instances_are_valid(
        which in 0usize..5,
        ell in 0.01f64..=1.0,
        len in 0.01f64..0.99,
        n in 1usize..400,
        seed in any::<u64>(),
    ) {
        let spec = match which {
            0 => DistributionSpec::UniformSquare,
            1 => DistributionSpec::UniformMaxLen { ell },
            2 => DistributionSpec::GaussianCL { mu_c: 0.0, sigma_c: 1.0, mu_l: 1.0, sigma_l: 0.4 },
            3 => DistributionSpec::GaussianCL { mu_c: 0.3, sigma_c: 5.0, mu_l: 0.1, sigma_l: 1.0 },
            _ => DistributionSpec::FixedLen { length: len },
        };
        let inst = generate(&spec, n, seed).unwrap();
        prop_assert_eq!(inst.len(), n);
        prop_assert!(validate_instance(inst.items().to_vec()).is_ok());
        for it in &inst {
            match spec {
                DistributionSpec::UniformMaxLen { ell } => {
                    prop_assert!(it.len() <= ell && it.start >= 0.0 && it.end < 1.0)
                }
                DistributionSpec::UniformSquare => prop_assert!(it.start >= 0.0 && it.end < 1.0),
                DistributionSpec::FixedLen { length } => {
                    prop_assert!((it.len() - length).abs() <= 1e-15)
                }
                DistributionSpec::GaussianCL { .. } => prop_assert!(it.len() > 0.0),
            }
        }
    }
}
