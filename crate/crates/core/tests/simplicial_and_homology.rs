use std::collections::BTreeSet;

use ncgar_core::verify::cone_lemma;
use ncgar_core::{homology, order_complex, smith_normal_form, AbstractComplex, FinitePoset, IntegerMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

fn example() -> AbstractComplex {
    AbstractComplex::from_maximal_faces(labels(4), &[vec![0, 1, 2], vec![1, 3]])
}

#[test]
fn example_complex_from_its_poset() {
    let poset = FinitePoset::from_pairs(labels(4), &[(1, 0), (1, 2), (1, 3), (0, 2)]);
    let oc = order_complex(&poset);
    assert!(oc.same_faces(&example()));
    assert_eq!(oc.f_vector(), [4, 4, 1]);
    assert_eq!(oc.euler_characteristic(), 1);
    let four = oc.vertex_index("4").unwrap();
    assert_eq!(oc.star(four).unwrap().faces_json().to_string(), r#"[[],["2"],["4"],["2","4"]]"#);
    assert_eq!(oc.link(four).unwrap().faces_json().to_string(), r#"[[],["2"]]"#);
    assert_eq!(oc.link(oc.vertex_index("2").unwrap()).unwrap().is_cone(), None);
    let all = oc.closure(&oc.maximal_faces()).unwrap();
    assert!(all.same_faces(&oc));
    assert_eq!(oc.closure(&[vec![]]).unwrap().num_faces(), 1);
    assert!(cone_lemma(&oc).passed());
}

#[test]
fn antichain_and_point() {
    let antichain = order_complex(&FinitePoset::from_pairs(labels(3), &[]));
    assert_eq!(antichain.f_vector(), [3]);
    assert_eq!(antichain.homology().betti(), [3]);
    let point = AbstractComplex::from_maximal_faces(labels(1), &[vec![0]]);
    assert_eq!(point.homology().to_string(), "H0=Z");
    assert_eq!(point.star(0).unwrap().num_faces(), 2);
    assert_eq!(point.link(0).unwrap().num_faces(), 1);
    assert_eq!(point.is_cone(), Some(0));
}

#[test]
fn json_and_dot_exports() {
    let d = example();
    assert_eq!(
        d.to_json().to_string(),
        r#"{"maximal_faces":[[1,3],[0,1,2]],"vertices":["1","2","3","4"]}"#
    );
    assert_eq!(AbstractComplex::from_json(&d.to_json()).unwrap(), d);
    assert!(d.to_dot().contains("v1 -- v3;"));
    let bad = serde_json::json!({"vertices": ["a"], "maximal_faces": [[0, 1]]});
    assert!(AbstractComplex::from_json(&bad).is_err());
}

/// Invariant factors from determinantal divisors: `d_k` is the gcd of all
/// `k × k` minors, and the `k`-th factor is `d_k / d_{k-1}`.
fn determinantal_factors(m: &[Vec<i64>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut prev = BigInt::from(1);
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<i64>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c]).collect()).collect();
                g = g.gcd(&det(&sub));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (k - 1..n)
        .flat_map(|last| {
            subsets(last, k - 1).into_iter().map(move |mut s| {
                s.push(last);
                s
            })
        })
        .collect()
}

/// Laplace expansion along the first row.
fn det(m: &[Vec<i64>]) -> BigInt {
    if m.is_empty() {
        return BigInt::from(1);
    }
    let mut total = BigInt::zero();
    for j in 0..m.len() {
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
            .collect();
        let term = BigInt::from(m[0][j]) * det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

#[test]
fn smith_worked_values() {
    let diag = IntegerMatrix::from_dense(2, 2, &[vec![2, 0], vec![0, 3]]);
    assert_eq!(smith_normal_form(&diag), [BigInt::from(1), BigInt::from(6)]);
    assert_eq!(smith_normal_form(&IntegerMatrix::identity(4)), vec![BigInt::from(1); 4]);
    assert!(smith_normal_form(&IntegerMatrix::zeros(3, 2)).is_empty());
}

#[test]
fn homology_of_a_circle_and_projective_plane() {
    // Boundary of a triangle.
    let circle = AbstractComplex::from_maximal_faces(labels(3), &[vec![0, 1], vec![1, 2], vec![0, 2]]);
    assert_eq!(circle.homology().to_string(), "H0=Z H1=Z");
    // Six-vertex triangulation of RP².
    let rp2 = AbstractComplex::from_maximal_faces(
        labels(6),
        &[
            vec![0, 1, 2],
            vec![0, 2, 3],
            vec![0, 3, 4],
            vec![0, 4, 5],
            vec![0, 1, 5],
            vec![1, 2, 4],
            vec![2, 3, 5],
            vec![1, 3, 4],
            vec![1, 3, 5],
            vec![2, 4, 5],
        ],
    );
    assert_eq!(rp2.euler_characteristic(), 1);
    assert_eq!(rp2.homology().to_string(), "H0=Z H1=Z/2 H2=0");
    assert!(cone_lemma(&rp2).passed());
}

fn small_matrix() -> impl Strategy<Value = (usize, usize, Vec<Vec<i64>>)> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-6i64..=6, c), r).prop_map(move |m| (r, c, m))
    })
}

fn random_complex() -> impl Strategy<Value = AbstractComplex> {
    prop::collection::vec(prop::collection::btree_set(0usize..6, 1..=4), 0..6).prop_map(|faces| {
        let maximal: Vec<Vec<usize>> = faces.into_iter().map(|f| f.into_iter().collect()).collect();
        AbstractComplex::from_maximal_faces(labels(6), &maximal)
    })
}

proptest! {
    #[test]
    fn smith_matches_determinantal_divisors((r, c, m) in small_matrix()) {
        let mat = IntegerMatrix::from_dense(r, c, &m);
        let snf = smith_normal_form(&mat);
        prop_assert_eq!(&snf, &determinantal_factors(&m));
        for pair in snf.windows(2) {
            prop_assert!((&pair[1] % &pair[0]).is_zero());
        }
        prop_assert!(snf.iter().all(|d| d.is_positive()));
    }

    #[test]
    fn smith_is_invariant_under_unimodular_moves((r, c, m) in small_matrix(), k in -3i64..=3, i in 0usize..4, j in 0usize..4) {
        let mut moved = m.clone();
        let (i, j) = (i % r, j % r);
        if i != j {
            let row = moved[j].clone();
            for (x, y) in moved[i].iter_mut().zip(row) {
                *x += k * y;
            }
        }
        moved.swap(0, r - 1);
        let a = smith_normal_form(&IntegerMatrix::from_dense(r, c, &m));
        let b = smith_normal_form(&IntegerMatrix::from_dense(r, c, &moved));
        prop_assert_eq!(a, b);
    }

    #[test]
    fn complexes_satisfy_the_cone_lemma(c in random_complex()) {
        prop_assert!(c.is_closed());
        prop_assert!(cone_lemma(&c).passed());
        for v in 0..c.vertices().len() {
            prop_assert!(c.star(v).unwrap().is_closed());
            prop_assert!(c.link(v).unwrap().is_closed());
        }
        let cone = c.cone("apex").unwrap();
        prop_assert_eq!(cone.num_faces(), 2 * c.num_faces());
        prop_assert!(cone.is_cone().is_some());
        prop_assert!(cone.homology().is_point());
        prop_assert_eq!(c.homology().euler_characteristic(), c.euler_characteristic());
        prop_assert_eq!(AbstractComplex::from_json(&c.to_json()).unwrap().label_faces(), c.label_faces());
    }

    #[test]
    fn order_complexes_of_posets_with_a_bottom_are_points(pairs in prop::collection::vec((1usize..6, 1usize..6), 0..8)) {
        let mut rel: Vec<(usize, usize)> = pairs.into_iter().filter(|(a, b)| a < b).collect();
        rel.extend((1..6).map(|x| (0, x)));
        let p = FinitePoset::from_pairs(labels(6), &rel);
        let oc = order_complex(&p);
        prop_assert!(oc.homology().is_point());
        let chains: BTreeSet<Vec<usize>> = p.chains().into_iter().collect();
        prop_assert_eq!(chains.len(), oc.num_faces());
    }
}

#[test]
fn homology_rejects_non_complexes() {
    let d1 = IntegerMatrix::from_dense(1, 1, &[vec![1]]);
    let d2 = IntegerMatrix::from_dense(1, 1, &[vec![1]]);
    assert!(homology(&[d1, d2]).is_err());
}
