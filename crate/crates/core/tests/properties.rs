use std::collections::BTreeSet;

use proptest::prelude::*;

use bergman::cremona::{crem_map, enumerate_cremona_bases, DEFAULT_BASIS_BUDGET};
use bergman::fan::{in_bergman_fan, in_bergman_fan_by_circuits, TropicalPoint};
use bergman::generators::{self, GeneratorSpec};
use bergman::{ElementSet, Matroid};

/// Fraction-free elimination over the integers.
fn bareiss_rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    if a.is_empty() {
        return 0;
    }
    let cols = a[0].len();
    let mut rank = 0;
    let mut prev = 1i128;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, p);
        for r in rank + 1..a.len() {
            for k in c + 1..cols {
                a[r][k] = (a[rank][c] * a[r][k] - a[r][c] * a[rank][k]) / prev;
            }
            a[r][c] = 0;
        }
        prev = a[rank][c];
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}

fn vectors() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (2usize..=4, 3usize..=9).prop_flat_map(|(dim, n)| prop::collection::vec(prop::collection::vec(-2i64..=2, dim), n))
        .prop_filter("no zero vectors", |vs| vs.iter().all(|v| v.iter().any(|&x| x != 0)))
}

fn subset(n: usize) -> impl Strategy<Value = ElementSet> {
    prop::collection::vec(any::<bool>(), n).prop_map(|bits| bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect())
}

fn named(i: usize) -> Matroid {
    match i {
        0 => generators::a3_example(),
        1 => generators::fano(),
        2 => generators::uniform(3, 6).unwrap(),
        3 => generators::complete_graph(5).unwrap(),
        _ => generators::coxeter_matroid("B3".parse().unwrap()).unwrap().matroid,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn rank_matches_elimination(vs in vectors(), bits in prop::collection::vec(any::<bool>(), 9)) {
        let m = Matroid::from_integer_vectors(None, &vs).unwrap();
        let s: ElementSet = (0..vs.len()).filter(|&i| bits[i]).collect();
        let rows: Vec<Vec<i64>> = s.iter().map(|e| vs[e].clone()).collect();
        prop_assert_eq!(m.rk(s), bareiss_rank(&rows));
        prop_assert_eq!(m.rank(), bareiss_rank(&vs));
    }

    #[test]
    fn closure_axioms(i in 0usize..5, seed in any::<u64>()) {
        let m = named(i);
        let n = m.size();
        let x: ElementSet = (0..n).filter(|k| seed >> (k % 64) & 1 == 1).collect();
        let c = m.cl(x);
        prop_assert!(x.is_subset(c));
        prop_assert_eq!(m.cl(c), c);
        prop_assert_eq!(m.rk(c), m.rk(x));
        for e in (m.all() - c).iter() {
            prop_assert_eq!(m.rk(c.with(e)), m.rk(c) + 1);
        }
    }

    #[test]
    fn flat_indicator_membership(i in 0usize..5, s in subset(10)) {
        let m = named(i);
        let s = s & m.all();
        let w = TropicalPoint::indicator(m.size(), s);
        prop_assert_eq!(in_bergman_fan(&m, &w).unwrap(), m.is_flat(s));
        prop_assert_eq!(in_bergman_fan_by_circuits(&m, &w).unwrap(), m.is_flat(s));
    }

    #[test]
    fn fan_is_a_cone(i in 0usize..5, ws in prop::collection::vec(0i64..4, 10), k in 1i64..5, t in -3i64..3) {
        let m = named(i);
        let w = TropicalPoint::new(ws[..m.size()].to_vec());
        let shifted = w.scale(k).add(&TropicalPoint::new(vec![t; m.size()]));
        prop_assert_eq!(in_bergman_fan(&m, &w).unwrap(), in_bergman_fan(&m, &shifted).unwrap());
    }

    #[test]
    fn crem_preserves_the_fan(order in Just((0..6).collect::<Vec<usize>>()).prop_shuffle(), cs in prop::collection::vec(0i64..4, 6), which in 0usize..4) {
        let m = generators::a3_example();
        let bases = enumerate_cremona_bases(&m, DEFAULT_BASIS_BUDGET).unwrap();
        let c = crem_map(&m, &bases[which]).unwrap();
        // a point of the cone over the flag cl(e1) ⊂ cl(e1, e2) ⊂ ..
        let mut w = TropicalPoint::zero(6);
        let mut prefix = ElementSet::EMPTY;
        for (&e, &k) in order.iter().zip(&cs) {
            prefix = m.cl(prefix.with(e));
            w = w.add(&TropicalPoint::indicator(6, prefix).scale(k));
        }
        prop_assert!(in_bergman_fan(&m, &w).unwrap());
        let image = c.apply(&w);
        prop_assert!(in_bergman_fan(&m, &image).unwrap());
        prop_assert!(c.apply(&image).same_class(&w));
    }

    #[test]
    fn bitset_matches_btreeset(a in prop::collection::btree_set(0usize..128, 0..20), b in prop::collection::btree_set(0usize..128, 0..20)) {
        let (x, y): (ElementSet, ElementSet) = (a.iter().copied().collect(), b.iter().copied().collect());
        let back = |s: ElementSet| s.iter().collect::<BTreeSet<_>>();
        prop_assert_eq!(back(x | y), a.union(&b).copied().collect::<BTreeSet<_>>());
        prop_assert_eq!(back(x & y), a.intersection(&b).copied().collect::<BTreeSet<_>>());
        prop_assert_eq!(back(x - y), a.difference(&b).copied().collect::<BTreeSet<_>>());
        prop_assert_eq!(x.len(), a.len());
        prop_assert_eq!(x.min(), a.first().copied());
        prop_assert_eq!(x.is_subset(y), a.is_subset(&b));
    }

    #[test]
    fn json_round_trip(vs in vectors()) {
        let m = Matroid::from_integer_vectors(None, &vs).unwrap();
        let back = Matroid::from_json(&m.to_json().unwrap()).unwrap();
        prop_assert_eq!(back.size(), m.size());
        for s in bergman::bitset::subsets_of_size(m.all(), 2.min(m.size())) {
            prop_assert_eq!(back.rk(s), m.rk(s));
        }
        prop_assert_eq!(back.flats_of_rank(1).unwrap().len(), m.flats_of_rank(1).unwrap().len());
    }
}

#[test]
fn generator_strings_round_trip() {
    for s in ["A1", "B2", "D4", "E6", "F4", "H3", "example:A3", "K5", "U:2,5", "fano", "dowling:Z3", "dowling-pc:Z2xZ2"] {
        let g: GeneratorSpec = s.parse().unwrap();
        assert_eq!(g.to_string(), s);
        assert!(g.build().is_ok(), "{s}");
    }
    for bad in ["", "A0", "K1", "U:4,2", "dowling:S3", "Z9"] {
        assert!(bad.parse::<GeneratorSpec>().is_err(), "{bad:?} accepted");
    }
}

#[test]
fn bareiss_oracle_sanity() {
    assert_eq!(bareiss_rank(&[vec![1, 2], vec![2, 4]]), 1);
    assert_eq!(bareiss_rank(&[vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 2]]), 2);
    assert_eq!(bareiss_rank(&[vec![0, 0], vec![0, 3]]), 1);
}
