mod common;

use plink::embedding::affine_apply;
use plink::homology::homology;
use plink::io::{parse, to_string, ComplexFile, FormFile};
use plink::linking::{crossing_oracle, lk, Link};
use plink::rational::{format_rat, parse_rat, ratio};
use plink::realize::{apply_twists, decompose_symmetric, reconstruct, twist_schedule, Move, TwistSchedule};
use plink::seifert::random_affine;
use plink::verify::{random_link, random_symmetric};
use plink::{Ring, SimplicialComplex, SymForm};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn sym(n: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(-bound..=bound, n * (n + 1) / 2).prop_map(move |v| {
        let mut m = vec![vec![0; n]; n];
        let mut k = 0;
        for i in 0..n {
            for j in i..n {
                m[i][j] = v[k];
                m[j][i] = v[k];
                k += 1;
            }
        }
        m
    })
}

fn sized_sym(max: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (0..=max).prop_flat_map(move |n| sym(n, bound))
}

proptest! {
    #[test]
    fn decomposition_reconstructs(m in sized_sym(6, 9)) {
        let n = m.len();
        let f = SymForm::new(m.clone()).unwrap();
        prop_assert_eq!(reconstruct(n, &decompose_symmetric(&f)), m);
    }

    #[test]
    fn schedules_round_trip((base, half) in (0usize..=5).prop_flat_map(|n| (sym(n, 9), sym(n, 6)))) {
        let n = base.len();
        let target: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| base[i][j] + 2 * half[i][j]).collect()).collect();
        let (b, t) = (SymForm::new(base).unwrap(), SymForm::new(target).unwrap());
        let sched = twist_schedule(&b, &t).unwrap();
        prop_assert_eq!(apply_twists(&b, &sched).unwrap(), t);
    }

    #[test]
    fn twists_preserve_parity_and_invert(m in sym(3, 9), s in prop::collection::vec(-2i64..=2, 3), l in -3i64..=3) {
        prop_assume!(s.iter().any(|&x| x != 0));
        let f = SymForm::new(m).unwrap();
        let there = apply_twists(&f, &TwistSchedule { moves: vec![Move { s: s.clone(), l }] }).unwrap();
        prop_assert_eq!(there.mod2(), f.mod2());
        let back = apply_twists(&there, &TwistSchedule { moves: vec![Move { s, l: -l }] }).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn odd_differences_are_rejected(m in sym(3, 9), i in 0usize..3, j in 0usize..3) {
        let b = SymForm::new(m.clone()).unwrap();
        let mut t = m;
        t[i][j] += 1;
        if i != j {
            t[j][i] += 1;
        }
        let err = twist_schedule(&b, &SymForm::new(t).unwrap()).unwrap_err();
        prop_assert_eq!(err.kind(), "parity-violation");
    }

    #[test]
    fn rationals_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
        let r = ratio(n, d);
        prop_assert_eq!(parse_rat(&format_rat(&r)).unwrap(), r);
    }

    #[test]
    fn forms_serialize(m in sized_sym(4, 20)) {
        let f = SymForm::new(m).unwrap();
        let back: FormFile = parse(&to_string(&FormFile::from_form(&f)), "form").unwrap();
        prop_assert_eq!(back.form().unwrap(), f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn linking_invariants(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = random_link(&mut rng);
        let link = Link::new(a.clone(), b.clone()).unwrap();
        let v = lk(&link, seed).unwrap();
        prop_assert_eq!(lk(&link, seed.wrapping_add(1)).unwrap(), v);
        prop_assert_eq!(lk(&link.swapped(), seed).unwrap(), v);
        prop_assert_eq!(lk(&Link::new(a.neg(), b.clone()).unwrap(), seed).unwrap(), -v);
        prop_assert_eq!(crossing_oracle(&a, &b, seed).unwrap(), v);
        prop_assert_eq!(common::gauss_lk(&a, &b, 1e-3), Some(v));
        let (m, t) = random_affine(&mut rng);
        let image = |g: &plink::GeoChain| g.map_points(|p| affine_apply(&m, &t, p)).unwrap();
        prop_assert_eq!(lk(&Link::new(image(&a), image(&b)).unwrap(), seed).unwrap(), v);
        prop_assert_eq!(lk(&Link::new(a.subdivide(), b).unwrap(), seed).unwrap(), v);
    }

    #[test]
    fn euler_characteristic_matches_betti_numbers(
        n in 4usize..9,
        tris in prop::collection::vec((0usize..9, 0usize..9, 0usize..9), 1..14),
    ) {
        let tops: Vec<Vec<usize>> = tris
            .into_iter()
            .map(|(a, b, c)| vec![a % n, b % n, c % n])
            .filter(|t| t[0] != t[1] && t[1] != t[2] && t[0] != t[2])
            .collect();
        prop_assume!(!tops.is_empty());
        let k = SimplicialComplex::from_maximal(n, tops).unwrap();
        for ring in [Ring::Z, Ring::Z2] {
            let chi: i64 = (0..=k.dim())
                .map(|d| (if d % 2 == 0 { 1 } else { -1 }) * homology(&k, d, ring).free_rank() as i64)
                .sum();
            prop_assert_eq!(chi, k.euler_characteristic());
        }
        for d in 0..=k.dim() {
            prop_assert_eq!(homology(&k, d, Ring::Z).free_rank(), common::betti(&k, d, common::BIG_PRIME));
            prop_assert_eq!(homology(&k, d, Ring::Z2).free_rank(), common::betti(&k, d, 2));
        }
        let back: ComplexFile = parse(&to_string(&ComplexFile::from_complex(&k)), "k").unwrap();
        prop_assert_eq!(back.complex().unwrap(), k);
    }
}

#[test]
fn random_symmetric_is_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 0..6 {
        let m = random_symmetric(&mut rng, n, 4);
        assert!(SymForm::new(m).is_ok());
    }
}
