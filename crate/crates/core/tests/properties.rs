//! Invariants that must hold for every coefficient sequence and point.

mod common;

use num_complex::Complex64;
use proptest::prelude::*;
use xizeros::cli::{parse_complex, parse_zeros_csv, write_zeros_csv, ZerosMeta};
use xizeros::profiles::CoefficientSequence;
use xizeros::xi::{c_f, h, h_star_neg, EvalContext};
use xizeros::zerocount::{count_report, CountOptions, Method, ZeroRecord};

use common::{ctx, test_sequences};

fn arb_coeffs() -> impl Strategy<Value = Vec<Complex64>> {
    proptest::collection::vec((-3i32..=3, -2i32..=2), 1..4).prop_filter_map("all zero", |v| {
        let c: Vec<Complex64> = v.iter().map(|&(a, b)| Complex64::new(a as f64, b as f64)).collect();
        c.iter().any(|z| z.norm() > 0.0).then_some(c)
    })
}

fn arb_point() -> impl Strategy<Value = Complex64> {
    (-2.0f64..2.0, -10.0f64..10.0).prop_map(|(re, im)| Complex64::new(re, im))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn decomposition_everywhere(c in arb_coeffs(), s in arb_point()) {
        let ctx = EvalContext::with_defaults(CoefficientSequence::new(c).unwrap());
        let cf = c_f(&ctx, s).unwrap();
        let a = h(&ctx, s).unwrap();
        let b = h_star_neg(&ctx, s).unwrap();
        let err = cf.err_estimate.max(a.err_estimate).max(b.err_estimate);
        prop_assert!((cf.value - a.value - b.value).norm() <= 4.0 * err);
    }

    #[test]
    fn reflection_about_the_line(c in arb_coeffs(), s in arb_point()) {
        // C_F(−s̄) = conj C_F(s), so zeros pair up across Re s = 0.
        let ctx = EvalContext::with_defaults(CoefficientSequence::new(c).unwrap());
        let a = c_f(&ctx, s).unwrap();
        let b = c_f(&ctx, -s.conj()).unwrap();
        prop_assert!((a.value.conj() - b.value).norm() <= 4.0 * (a.err_estimate + b.err_estimate));
    }

    #[test]
    fn complex_literals_round_trip(re in -1e6f64..1e6, im in -1e6f64..1e6) {
        let text = format!("{re:?}{im:+?}i");
        prop_assert_eq!(parse_complex(&text).unwrap(), Complex64::new(re, im));
        prop_assert_eq!(parse_complex(&format!("i*{im:?}")).unwrap(), Complex64::new(0.0, im));
    }

    #[test]
    fn zeros_csv_round_trip(
        rows in proptest::collection::vec((-5.0f64..5.0, -40.0f64..40.0, 1usize..4, any::<bool>(), 0usize..3, 0.0f64..1e-6), 0..12),
        t in proptest::option::of(2.0f64..40.0),
    ) {
        let methods = [Method::LineScan, Method::Winding, Method::WindingPolish];
        let records: Vec<ZeroRecord> = rows
            .iter()
            .map(|&(re, im, m, on, k, r)| ZeroRecord {
                position: Complex64::new(re, im),
                multiplicity: m,
                on_line: on,
                method: methods[k],
                residual: r,
                trusted: true,
            })
            .collect();
        let meta = ZerosMeta { target: Some("C_F".into()), t, beta: Some(3.0) };
        let mut buf = Vec::new();
        write_zeros_csv(&records, &meta, &mut buf).unwrap();
        let (back, m) = parse_zeros_csv(std::str::from_utf8(&buf).unwrap()).unwrap();
        prop_assert_eq!(back, records);
        prop_assert_eq!(m, meta);
    }
}

#[test]
fn zero_sets_are_symmetric() {
    for (name, c) in test_sequences() {
        let report = count_report(&ctx(&c), 20.0, 3.0, &CountOptions::default()).unwrap();
        let zeros = report.zeros();
        assert_eq!(report.n_bar % 2, 0, "{name}");
        for z in &zeros {
            let mirror = -z.position.conj();
            let partner = zeros
                .iter()
                .find(|w| (w.position - mirror).norm() < 1e-8)
                .unwrap_or_else(|| panic!("{name}: no mirror for {}", z.position));
            assert_eq!(partner.multiplicity, z.multiplicity);
        }
        assert!(report.n_bar >= report.n1_bar);
        assert_eq!(report.n1_bar, report.histogram.get(&1).copied().unwrap_or(0));
        assert_eq!(report.n0_prime, report.histogram.values().sum::<usize>());
    }
}

#[test]
fn agreement_on_delta_truncations() {
    // Beyond the four shipped sequences: the first few truncations of the
    // product expansion, at the default strip half-width.
    for n in 1..=3 {
        let ctx = EvalContext::with_defaults(CoefficientSequence::delta_truncation(n).unwrap());
        let report = count_report(&ctx, 15.0, 3.0, &CountOptions::default()).unwrap();
        let located: usize = report.zeros().iter().map(|z| z.multiplicity).sum();
        assert_eq!(located, report.n_bar, "N = {n}");
        assert!(report.consistent);
    }
}
