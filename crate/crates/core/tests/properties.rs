use corner_calculus::chains::{check_chain_map, Ring};
use corner_calculus::io::{self, ChainDoc};
use corner_calculus::maps::{check_boundary_of_fibre_product, Target};
use corner_calculus::products::{cup, Cochain};
use corner_calculus::random::{Caps, Sampler};
use corner_calculus::rational::{self, Rational};
use corner_calculus::suites::{self, Options};
use corner_calculus::Error;
use num_bigint::BigInt;
use proptest::prelude::*;

fn caps() -> Caps {
    Caps { max_dim: 3, max_vertices: 8 }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn rationals_print_and_parse(n in -1000i64..1000, d in 1i64..1000) {
        let q = Rational::new(BigInt::from(n), BigInt::from(d));
        prop_assert_eq!(rational::parse(&rational::format(&q)).unwrap(), q);
    }

    #[test]
    fn boundary_squares_to_zero(seed in any::<u64>()) {
        let mut s = Sampler::new(seed, caps());
        let y = s.small_target();
        let c = s.chain(&y, 6, 3).unwrap();
        prop_assert!(c.boundary().unwrap().boundary().unwrap().is_zero());
    }

    #[test]
    fn chains_survive_a_file_round_trip(seed in any::<u64>()) {
        let mut s = Sampler::new(seed, caps());
        let y = s.small_target();
        let c = s.chain(&y, 4, 3).unwrap();
        let text = io::to_string(&ChainDoc::of_chain(&c));
        let back = io::from_str::<ChainDoc>(&text).unwrap().chain(None).unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn fibre_product_boundaries(seed in any::<u64>()) {
        let mut s = Sampler::new(seed, caps());
        let y = s.small_target();
        let a = s.any_cell(&y, 2);
        let b = s.mapped_cell(&y, y.dim().max(1), 0);
        match check_boundary_of_fibre_product(&a, &b) {
            Ok(c) => prop_assert!(c.pass, "{:?}", c.witness),
            Err(Error::NotTransverse(_)) | Err(Error::NotSubmersion(_)) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn singular_chains_commute_with_boundary(seed in any::<u64>()) {
        let mut s = Sampler::new(seed, caps());
        let y = s.small_target();
        let sc = s.singular_chain(&y, 3, 3);
        prop_assert!(check_chain_map(&sc).unwrap().is_none());
    }
}

#[test]
fn reports_do_not_depend_on_workers() {
    for name in ["swap", "cap", "singular"] {
        let one = suites::by_name(name, &Options { count: 12, seed: 5, jobs: 1, ..Options::default() }).unwrap();
        let four = suites::by_name(name, &Options { count: 12, seed: 5, jobs: 4, ..Options::default() }).unwrap();
        assert_eq!(one, four, "{name}");
        assert!(one.pass, "{name}");
    }
}

#[test]
fn unit_cochain_over_the_circle() {
    let text = r#"{"schema": "corner-calculus/1", "target": {"kind": "torus", "dim": 1}, "terms": [
        {"coeff": "3/2", "generator": {"polytope": {"ambient_dim": 0, "vertices": [[]]}, "circles": 1,
            "map": {"target": {"kind": "torus", "dim": 1}, "matrix": [["1"]]}}}]}"#;
    let one: Cochain = io::from_str::<ChainDoc>(text).unwrap().cochain().unwrap();
    assert_eq!(one.degrees(), vec![0]);
    let sq = cup(&one, &one).unwrap();
    // same space and map; the product tag merges the labels
    let terms: Vec<_> = sq.chain.terms.iter().collect();
    assert_eq!(terms.len(), 1);
    assert_eq!(*terms[0].1, rational::frac(9, 4));
    assert_eq!(terms[0].0.faces[0].1, vec![1, 1]);
    assert_eq!(sq.degrees(), vec![0]);
    assert_eq!(sq.target, Target::torus(1));
    assert_eq!(sq.chain.ring, Ring::Q);
}

#[test]
fn every_named_suite_runs() {
    let opts = Options { count: 3, seed: 11, ..Options::default() };
    for name in suites::SUITES {
        let r = suites::by_name(name, &opts).unwrap();
        assert!(r.pass, "{name}: {}", r.markdown());
        assert_eq!(r.schema, io::SCHEMA);
    }
    assert!(suites::by_name("nothing", &opts).is_none());
}
