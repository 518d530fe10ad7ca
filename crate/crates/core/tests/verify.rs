mod common;

use arrlab::rational::{self, frac, int};
use arrlab::verify::{generate, verify_flat_identity, verify_main_theorem, GeneratorSpec, Method, VerifyOptions};
use arrlab::IntersectionLattice;

#[test]
fn random_fixture_is_pinned() {
    let arr = generate(&GeneratorSpec::Random { m: 5, d: 3, seed: 7, range: 5 }).unwrap();
    let want = vec![
        vec![int(1), int(0), int(-1)],
        vec![int(1), frac(-5, 2), int(1)],
        vec![int(1), frac(2, 3), frac(2, 3)],
        vec![int(0), int(1), frac(-3, 4)],
        vec![int(1), int(0), int(2)],
    ];
    assert_eq!(arr.normals(), want);
    assert_eq!(arr.rank(), 3);
    assert_eq!(common::whitney_charpoly(&arr.normals()), vec![-6, 10, -5, 1]);
}

#[test]
fn generated_families_are_central_and_rational() {
    for spec in ["boolean:4", "braid:4", "threelines", "random:m=7,d=4,seed=3,range=2"] {
        let arr = generate(&spec.parse().unwrap()).unwrap();
        let chi = IntersectionLattice::build(&arr).characteristic_polynomial();
        assert_eq!(
            chi.coefficients().iter().map(|c| rational::to_i64(c).unwrap()).collect::<Vec<_>>(),
            common::whitney_charpoly(&arr.normals()),
            "{spec}"
        );
    }
}

#[test]
fn braid_report_bookkeeping() {
    let braid = generate(&GeneratorSpec::Braid { n: 3 }).unwrap();
    let rep = verify_main_theorem(&braid, &VerifyOptions::default()).unwrap();
    let json: serde_json::Value = serde_json::from_str(&rep.to_json()).unwrap();
    assert_eq!(json["essentialized"], true);
    assert_eq!(json["index_shift"], 1);
    assert_eq!(json["charpoly"], serde_json::json!(["1", "-3", "2"]));
    assert_eq!(json["pass"], true);
}

#[test]
fn flat_totals_add_up_to_theorem_rows() {
    let arr = generate(&GeneratorSpec::Random { m: 4, d: 3, seed: 2, range: 3 }).unwrap();
    let opts = VerifyOptions { samples: 20_000, seed: 5, ..VerifyOptions::default() };
    let rep = verify_main_theorem(&arr, &opts).unwrap();
    assert!(rep.pass, "{}", rep.to_text());
    for row in &rep.theorem {
        let expected: i64 = rep.flats.iter().filter(|f| f.dim == row.k).map(|f| f.expected.parse::<i64>().unwrap()).sum();
        assert_eq!(expected.to_string(), row.expected);
        let estimate: f64 = rep.flats.iter().filter(|f| f.dim == row.k).map(|f| f.estimate).sum();
        assert!((estimate - row.estimate).abs() < 1e-9);
    }
}

#[test]
fn flat_identity_monte_carlo_on_three_lines() {
    let tl = generate(&GeneratorSpec::ThreeLines).unwrap();
    let opts = VerifyOptions { samples: 50_000, seed: 8, method: Method::MonteCarlo, ..VerifyOptions::default() };
    let rows = verify_flat_identity(&tl, &opts).unwrap();
    let expected: Vec<&str> = rows.iter().map(|r| r.expected.as_str()).collect();
    assert_eq!(expected, ["1", "1", "1", "1", "2"]);
    assert!(rows.iter().all(|r| r.pass), "{rows:?}");
}

#[test]
fn same_seed_same_report() {
    let arr = generate(&GeneratorSpec::Boolean { d: 3 }).unwrap();
    let opts = VerifyOptions { samples: 10_000, seed: 77, ..VerifyOptions::default() };
    let a = verify_main_theorem(&arr, &opts).unwrap().to_json();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
    let b = pool.install(|| verify_main_theorem(&arr, &opts).unwrap().to_json());
    assert_eq!(a, b);
}
