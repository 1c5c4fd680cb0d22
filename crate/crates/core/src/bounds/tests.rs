use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::families::{
    complete_descriptor, cycle_descriptor, icosahedron, icosahedron_descriptor, johnson_descriptor, srg_spectrum,
    SrgParams,
};
use crate::graph::{closed_blowup_graph, Graph};
use crate::spectral::eigen_spectrum;

fn surd(s: &str) -> EigenValue {
    EigenValue::exact(Surd::parse_exact(s).unwrap())
}

fn frac(p: i128, q: i128) -> EigenValue {
    EigenValue::Rational(Rational::new(p, q))
}

#[test]
fn icosahedron_blowup_spectrum() {
    let b = blowup_spectrum(&icosahedron_descriptor().unwrap(), 2).unwrap();
    assert_eq!(b.spectrum.n(), 24);
    let want = Spectrum::from_pairs([
        (EigenValue::integer(11), 1),
        (surd("1+2*sqrt(5)"), 3),
        (EigenValue::integer(-1), 17),
        (surd("1-2*sqrt(5)"), 3),
    ])
    .unwrap();
    assert_eq!(b.spectrum, want);
}

#[test]
fn blowup_t1_is_identity() {
    let d = icosahedron_descriptor().unwrap();
    assert_eq!(&blowup_spectrum(&d, 1).unwrap().spectrum, d.spectrum());
    assert!(blowup_spectrum(&d, 0).is_err());
}

#[test]
fn merge_order_below_minus_one() {
    let c4 = cycle_descriptor(4).unwrap();
    let b = blowup_spectrum(&c4, 2).unwrap();
    assert_eq!(b.spectrum.to_string(), "5^1 1^2 (-1)^4 (-3)^1");
    assert_eq!(kth_largest_of_blowup(&c4, 2, 4).unwrap(), EigenValue::integer(-1));
    // the shortcut t·λ_4 + t - 1 would give -3
    assert_eq!(kth_largest_of_blowup(&c4, 2, 8).unwrap(), EigenValue::integer(-3));
    assert!(kth_largest_of_blowup(&c4, 2, 9).is_err());
}

#[test]
fn blowup_kth_values() {
    let ico = icosahedron_descriptor().unwrap();
    assert_eq!(kth_largest_of_blowup(&ico, 3, 4).unwrap(), surd("2+3*sqrt(5)"));
    let j7 = johnson_descriptor(7, 2).unwrap();
    assert_eq!(kth_largest_of_blowup(&j7, 2, 7).unwrap(), EigenValue::integer(7));
}

#[test]
fn limit_ratios() {
    let ico = icosahedron_descriptor().unwrap();
    let l = limit_ratio(&ico, 4).unwrap();
    assert_eq!(l.value, surd("1/12+1/12*sqrt(5)"));
    assert!(l.attained);
    for k in 4..=16i128 {
        let d = johnson_descriptor(k as usize, 2).unwrap();
        assert_eq!(
            limit_ratio(&d, k as usize).unwrap().value,
            frac(2 * (k - 3), k * (k - 1))
        );
    }
    for n in 1..6 {
        assert_eq!(
            limit_ratio(&complete_descriptor(n).unwrap(), 1).unwrap().value,
            EigenValue::integer(1)
        );
    }
    let c4 = cycle_descriptor(4).unwrap();
    let l = limit_ratio(&c4, 4).unwrap();
    assert_eq!(l.value, EigenValue::integer(0));
    assert!(!l.attained);
    assert!(limit_ratio(&c4, 5).is_err());
}

#[test]
fn finite_ratio_icosahedron_t1() {
    let ico = icosahedron_descriptor().unwrap();
    let r = finite_ratio(&ico, 1, 4).unwrap();
    assert_eq!(r, surd("0+1/12*sqrt(5)"));
    assert!((r.to_f64() - 0.186339).abs() < 5e-7);
}

#[test]
fn reference_formulas() {
    assert_eq!(nikiforov_upper(2).unwrap(), 0.5);
    assert_eq!(nikiforov_upper(17).unwrap(), 0.125);
    assert!(nikiforov_upper(4).unwrap() > (1.0 + 5f64.sqrt()) / 12.0);
    assert!((nikiforov_upper(4).unwrap() - 0.28868).abs() < 1e-5);
    assert!(nikiforov_upper(1).is_err());
    assert!((reference_lower(5).unwrap() - 2.0 / 9.0).abs() < 1e-15);
    assert!((reference_lower(6).unwrap() - 2.0 / 11.0).abs() < 1e-15);
    assert!(reference_lower(6).unwrap() < 0.2);
    assert!((reference_lower(10).unwrap() - 2.0 / 19.0).abs() < 1e-15);
    assert!(reference_lower(4).is_err());
    assert!(nikiforov_asymptotic_lower(100).unwrap() < nikiforov_upper(100).unwrap());
}

#[test]
fn certificates() {
    let c = certify(&icosahedron_descriptor().unwrap(), 4).unwrap();
    assert_eq!(c.ratio, surd("1/12+1/12*sqrt(5)"));
    assert_eq!(c.verification, Verification::Verified);
    assert_eq!(format!("{:.5}", c.ratio.to_f64()), "0.26967");

    let c = certify(&srg_spectrum(SrgParams::new(243, 132, 81, 60)).unwrap(), 22).unwrap();
    assert_eq!(c.ratio, frac(25, 243));
    assert_eq!(c.verification, Verification::ExactFormula);

    let c = certify(&complete_descriptor(5).unwrap(), 2).unwrap();
    assert_eq!(c.ratio, EigenValue::integer(0));
    assert!(!c.attained);

    let numeric = SpectralDescriptor::explicit("k5", crate::graph::complete(5).unwrap()).unwrap();
    let c = certify(&numeric, 2).unwrap();
    assert_eq!(c.ratio, EigenValue::integer(0));
    assert!(!c.attained);
}

#[test]
fn dominance_violation_is_an_error() {
    // an asserted spectrum that claims λ_2 = 3 on 4 vertices
    let s = Spectrum::from_pairs([(EigenValue::integer(3), 2), (EigenValue::integer(-3), 2)]).unwrap();
    let d = crate::families::asserted_descriptor("bogus", 4, s, "test").unwrap();
    assert!(matches!(certify(&d, 2), Err(Error::InternalConsistency(_))));
    assert!(check_dominance(1, 5.0, "k=1 is unconstrained").is_ok());
}

#[test]
fn certificate_json_round_trip() {
    for c in [
        certify(&icosahedron_descriptor().unwrap(), 4).unwrap(),
        certify(&crate::families::taylor_co3_descriptor().unwrap(), 24).unwrap(),
        certify(
            &SpectralDescriptor::explicit("c7", crate::graph::cycle(7).unwrap()).unwrap(),
            3,
        )
        .unwrap(),
    ] {
        let text = serde_json::to_string(&c).unwrap();
        let back: BoundCertificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
        assert!(back.recheck().unwrap());
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        for key in ["k", "descriptor", "ratio", "verification"] {
            assert!(v.get(key).is_some(), "{key} missing in {text}");
        }
        assert!(v["ratio"]["float"].is_f64());
    }
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let mut g = Graph::empty(n).unwrap();
    let p = rng.gen_range(0.1..0.9);
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) {
                g.toggle_edge(u, v);
            }
        }
    }
    g
}

#[test]
fn analytic_blowup_matches_eigensolver() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..50 {
        let n = rng.gen_range(1..=10);
        let g = random_graph(&mut rng, n);
        let d = SpectralDescriptor::explicit("random", g.clone()).unwrap();
        for t in 1..=3 {
            let analytic = blowup_spectrum(&d, t).unwrap().spectrum;
            let numeric = eigen_spectrum(&closed_blowup_graph(&g, t).unwrap()).unwrap();
            assert!(numeric.approx_eq(&analytic, 1e-8), "{g:?}, t = {t}");
        }
    }
    let ico = icosahedron();
    let numeric = eigen_spectrum(&closed_blowup_graph(&ico, 2).unwrap()).unwrap();
    let analytic = blowup_spectrum(&icosahedron_descriptor().unwrap(), 2).unwrap().spectrum;
    assert!(numeric.approx_eq(&analytic, 1e-8));
}

#[test]
fn table_reproduces_and_improves() {
    let rows = reproduce_table().unwrap();
    assert_eq!(rows.len(), 21);
    for row in &rows {
        let k = row.entry.k;
        assert!(row.matched(), "row {k}");
        for c in &row.certificates {
            assert!(c.ratio.to_f64() <= nikiforov_upper(k).unwrap() + DOMINANCE_SLACK);
            if k >= 6 {
                assert!(c.ratio.to_f64() > reference_lower(k).unwrap(), "row {k}");
            }
            if (6..=16).contains(&k) {
                assert_eq!(c.ratio, frac(2 * (k as i128 - 3), k as i128 * (k as i128 - 1)));
            }
            // finite ratios increase towards the limit
            let mut prev = f64::NEG_INFINITY;
            for t in 1..=10 {
                let r = finite_ratio(&c.descriptor, t, k).unwrap().to_f64();
                assert!(r >= prev - 1e-15 && r <= c.ratio.to_f64() + 1e-15, "row {k}, t = {t}");
                prev = r;
            }
        }
        if k == 24 {
            assert_eq!(row.certificates[0].verification, Verification::Asserted);
        }
    }
    let row8 = &rows[4];
    assert_eq!(row8.certificates[0].ratio, row8.certificates[1].ratio);
    assert_eq!(rows[7].certificates[0].ratio, frac(8, 55));
    assert_eq!(rows[15].certificates[0].ratio, frac(2, 19));
}
