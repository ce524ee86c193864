use std::f64::consts::PI;

use proptest::prelude::*;
use struve_core::gamma::gamma;
use struve_core::lauricella::{
    lauricella_eval, omega, GlobalParam, LauricellaSpec, LocalParam, MultiIndex,
};
use struve_core::series::{fox_wright, FoxWrightSpec, SeriesControl};
use struve_core::{real, Complex64};

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

fn local(v: &[(f64, f64)]) -> Vec<LocalParam> {
    v.iter().map(|&(x, w)| LocalParam::new(real(x), w)).collect()
}

/// Two-variable spec with per-variable blocks only.
fn separable(u: [&[(f64, f64)]; 2], l: [&[(f64, f64)]; 2]) -> LauricellaSpec {
    LauricellaSpec::new(
        2,
        vec![],
        vec![],
        vec![local(u[0]), local(u[1])],
        vec![local(l[0]), local(l[1])],
    )
    .unwrap()
}

fn one_var(u: &[(f64, f64)], l: &[(f64, f64)]) -> LauricellaSpec {
    LauricellaSpec::new(1, vec![], vec![], vec![local(u)], vec![local(l)]).unwrap()
}

proptest! {
    #[test]
    fn single_variable_matches_fox_wright(
        up in prop::collection::vec((0.5f64..3.0, 1u8..=2), 2),
        lo in prop::collection::vec((0.5f64..3.0, 1u8..=2), 2),
        r in 0.0f64..1.0,
        phi in -PI..PI,
    ) {
        let margin = 1.0 + lo.iter().map(|p| p.1 as f64).sum::<f64>()
            - up.iter().map(|p| p.1 as f64).sum::<f64>();
        prop_assume!(margin > 0.0);
        let spec = LauricellaSpec::new(
            1,
            up.iter().map(|&(v, w)| GlobalParam::new(real(v), vec![w as f64])).collect(),
            lo.iter().map(|&(v, w)| GlobalParam::new(real(v), vec![w as f64])).collect(),
            vec![vec![]],
            vec![vec![]],
        ).unwrap();
        let fw_spec = FoxWrightSpec::new(
            up.iter().map(|&(v, w)| (real(v), w as f64)).collect(),
            lo.iter().map(|&(v, w)| (real(v), w as f64)).collect(),
        ).unwrap();
        let z = Complex64::from_polar(r, phi);
        let ctl = SeriesControl::default();
        let l = lauricella_eval(&spec, &[z], &ctl).unwrap().value;
        let mut k = real(1.0);
        for &(v, _) in &lo { k *= gamma(real(v)).unwrap(); }
        for &(v, _) in &up { k /= gamma(real(v)).unwrap(); }
        let f = fox_wright(&fw_spec, z, &ctl).unwrap().value;
        prop_assert!(rel(l, k * f) <= 1e-12);
    }

    #[test]
    fn permutation_symmetry(
        vals in prop::collection::vec(0.5f64..3.0, 9),
        zs in prop::collection::vec(-0.5f64..0.5, 3),
    ) {
        let spec = LauricellaSpec::new(
            3,
            vec![GlobalParam::new(real(vals[0]), vec![2.0, 1.0, 2.0])],
            vec![GlobalParam::new(real(vals[1]), vec![2.0, 2.0, 1.0])],
            vec![local(&[(vals[2], 1.0)]), local(&[(vals[3], 1.0)]), local(&[(vals[4], 1.0)])],
            vec![
                local(&[(1.5, 1.0), (vals[5], 1.0)]),
                local(&[(vals[6], 1.0)]),
                local(&[(vals[7], 1.0), (vals[8], 1.0)]),
            ],
        ).unwrap();
        let z: Vec<Complex64> = zs.iter().map(|&v| real(v)).collect();
        let ctl = SeriesControl::default();
        let base = lauricella_eval(&spec, &z, &ctl).unwrap();
        // symmetry is only checkable to the precision the summation itself reports
        prop_assume!(base.error_bound() <= 1e-14 * base.value.norm());
        let base = base.value;
        for perm in [[1usize, 2, 0], [2, 0, 1], [0, 2, 1]] {
            let pz: Vec<Complex64> = perm.iter().map(|&i| z[i]).collect();
            let v = lauricella_eval(&spec.permuted(&perm).unwrap(), &pz, &ctl).unwrap().value;
            prop_assert!(rel(v, base) <= 1e-13, "{perm:?}: {v} vs {base}");
        }
    }

    #[test]
    fn omega_factorizes_without_global_blocks(
        a in 0.5f64..3.0, b in 0.5f64..3.0, c in 0.5f64..3.0, d in 0.5f64..3.0,
        k1 in 0usize..15, k2 in 0usize..15,
    ) {
        let u0: &[(f64, f64)] = &[(a, 1.0)];
        let u1: &[(f64, f64)] = &[(b, 2.0)];
        let l0: &[(f64, f64)] = &[(c, 1.0)];
        let l1: &[(f64, f64)] = &[(d, 1.0), (1.5, 1.0)];
        let joint = omega(&separable([u0, u1], [l0, l1]), &MultiIndex(vec![k1, k2])).unwrap();
        let first = omega(&one_var(u0, l0), &MultiIndex(vec![k1])).unwrap();
        let second = omega(&one_var(u1, l1), &MultiIndex(vec![k2])).unwrap();
        prop_assert!(rel(joint, first * second) <= 1e-13);
    }
}

#[test]
fn separable_series_is_a_product() {
    let ctl = SeriesControl::default();
    let u0: &[(f64, f64)] = &[(1.5, 1.0)];
    let u1: &[(f64, f64)] = &[(0.7, 1.0), (2.0, 1.0)];
    let l0: &[(f64, f64)] = &[(2.5, 1.0), (1.5, 1.0)];
    let l1: &[(f64, f64)] = &[(1.2, 1.0), (3.0, 1.0)];
    let z = [real(-1.3), real(0.8)];
    let joint = lauricella_eval(&separable([u0, u1], [l0, l1]), &z, &ctl).unwrap().value;
    let a = lauricella_eval(&one_var(u0, l0), &z[..1], &ctl).unwrap().value;
    let b = lauricella_eval(&one_var(u1, l1), &z[1..], &ctl).unwrap().value;
    assert!(rel(joint, a * b) <= 1e-12);
}
