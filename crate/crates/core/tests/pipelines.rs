//! End-to-end use of the public API: tables, series, specializations,
//! cylinder moments and the serialized record forms.

use genus_core::algebra::{BivariateLaurent, KappaPolynomial, LaurentSeries, Var};
use genus_core::combinatorics::{enumerate_genus_table, moments_from_table, GenusTable, IntegerPartition, Kind};
use genus_core::cylinder::{annular_oracle, m2_coefficient, m2_for_spec, BivariateCumulantSpec, DEFAULT_ANNULAR_LIMIT};
use genus_core::genfun_part::{m_coefficient, w_par_genus};
use genus_core::genfun_perm::{alpha_coefficient, w_per_genus};
use genus_core::records::{bivariate_dump, polynomial_rows, MomentRecord};
use genus_core::spec::{KappaSpec, ParamPoly, Preset};
use genus_core::verify::{run_checks, VerifyConfig, CHECK_NAMES};
use genus_core::Error;

#[test]
fn genus_table_json_round_trip() {
    let t = enumerate_genus_table(6, Kind::Partition, 10).unwrap();
    let json = serde_json::to_string(&t).unwrap();
    let back: GenusTable = serde_json::from_str(&json).unwrap();
    assert_eq!(back, t);
    let a = IntegerPartition::of(6, vec![3, 3]).unwrap();
    // Ten partitions of type (3,3): three noncrossing, one of genus two.
    assert_eq!(t.get(0, &a) + t.get(1, &a) + t.get(2, &a), 10);
    assert_eq!((t.get(0, &a), t.get(1, &a), t.get(2, &a)), (3, 6, 1));
    // An inconsistent table is rejected on load.
    let bad = json.replacen("\"n\":6", "\"n\":7", 1);
    assert!(serde_json::from_str::<GenusTable>(&bad).is_err());
}

#[test]
fn oracle_limits_are_enforced() {
    assert!(matches!(enumerate_genus_table(10, Kind::Permutation, 9), Err(Error::OracleLimitExceeded { .. })));
    assert!(matches!(annular_oracle(5, 5, Kind::Partition, DEFAULT_ANNULAR_LIMIT), Err(Error::OracleLimitExceeded { .. })));
}

#[test]
fn series_and_table_agree_on_a_sample() {
    let t = enumerate_genus_table(8, Kind::Permutation, 9).unwrap();
    assert_eq!(moments_from_table(&t, 2), alpha_coefficient(2, 8, 8).unwrap());
    let t = enumerate_genus_table(8, Kind::Partition, 10).unwrap();
    assert_eq!(moments_from_table(&t, 2), m_coefficient(2, 8, 8).unwrap());
}

#[test]
fn cutoff_below_size_is_rejected() {
    assert!(matches!(alpha_coefficient(1, 6, 5), Err(Error::CutoffTooSmall { .. })));
    assert!(matches!(m_coefficient(3, 8, 8), Err(Error::UnsupportedGenus { .. })));
}

#[test]
fn partition_series_is_regular() {
    let x = LaurentSeries::kappa_generator(8);
    for g in 1..=2 {
        let w = w_par_genus(g, &x, 6).unwrap();
        assert!(w.min_deg() >= 0, "genus {g}");
        let wp = w_per_genus(g, &x, 6).unwrap();
        assert!(wp.trunc() == Some(6));
    }
}

#[test]
fn specialization_end_to_end() {
    let s = genus_core::genfun_perm::specialize_series(1, &KappaSpec::preset(Preset::Stirling1), 5).unwrap();
    assert_eq!(s[5], "15*k + 40*k^2 + 15*k^3".parse::<ParamPoly>().unwrap());
    let b = genus_core::genfun_part::specialize_partition_series(1, &KappaSpec::preset(Preset::Bell), 6).unwrap();
    // Genus-one set partitions of sizes 4, 5, 6: B_n minus the Catalan
    // numbers, minus the single genus-two partition of size 6.
    assert_eq!(b[4].to_string(), "1");
    assert_eq!(b[5].to_string(), "10");
    assert_eq!(b[6].to_string(), "70");
}

#[test]
fn cylinder_sector_and_dump() {
    let spec = BivariateCumulantSpec::generic(4, 4).without_second_order();
    let got = m2_for_spec(Kind::Permutation, &spec, 1, 3).unwrap();
    assert_eq!(got, annular_oracle(1, 3, Kind::Permutation, DEFAULT_ANNULAR_LIMIT).unwrap());
    let full = m2_coefficient(Kind::Permutation, 1, 1).unwrap();
    assert_eq!(full.to_string(), "k1_1 + k2");
    let w = genus_core::cylinder::w2(Kind::Partition, &BivariateCumulantSpec::generic(2, 2), 2, 2).unwrap();
    let dump = bivariate_dump(&w);
    assert!(dump.iter().all(|(a, b, _)| *a < 2 && *b < 2));
    let sym = BivariateLaurent::new(w.iter().map(|(d, c)| (d, c.clone())), w.trunc1(), w.trunc2());
    assert!(sym.agrees_with(&w.swap()));
    assert!(w.residue_in(Var::Y1).unwrap().is_zero());
}

#[test]
fn records_serialize() {
    let p: KappaPolynomial = "k2^2 + 5*k4 + 4*k1*k3".parse().unwrap();
    let rec = MomentRecord::new(Kind::Permutation, 1, 4, &p);
    let v = serde_json::to_value(&rec).unwrap();
    assert_eq!(v["poly"], "4*k1*k3 + k2^2 + 5*k4");
    let rows = polynomial_rows(&p);
    assert_eq!(rows[0], ("k1*k3".to_string(), "4".to_string()));
}

#[test]
fn reduced_verification_run() {
    let cfg = VerifyConfig { permutation_n: 7, partition_n: 8, cylinder_order: 5, cylinder_oracle_size: 5, ..VerifyConfig::default() };
    let reports = run_checks(&CHECK_NAMES, &cfg).unwrap();
    assert_eq!(reports.len(), CHECK_NAMES.len());
    for r in reports {
        assert!(r.passed, "{r}");
    }
}
