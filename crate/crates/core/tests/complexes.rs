use std::collections::BTreeSet;
use std::sync::{Arc, LazyLock};

use ncgar_core::complex_builder::{
    chains_above_identity, format_class, identification_classes, verify_example_identifications,
};
use ncgar_core::monoid::DEFAULT_BUDGET;
use ncgar_core::verify::{action_checks, positive_complex_checks};
use ncgar_core::{build_k, build_x_plus, make_system, DualMonoid, Error, Family, GroupForm, NCLattice};

fn monoid(f: Family, n: usize) -> DualMonoid {
    DualMonoid::new(Arc::new(NCLattice::standard(Arc::new(make_system(f, n).unwrap())).unwrap()))
}

static S3: LazyLock<DualMonoid> = LazyLock::new(|| monoid(Family::A, 2));
static S4: LazyLock<DualMonoid> = LazyLock::new(|| monoid(Family::A, 3));

/// Strict chains `I < w₁ < … < w_k` counted by depth-first search on `leq`.
fn chain_counts(lat: &NCLattice) -> Vec<usize> {
    fn extend(lat: &NCLattice, last: usize, depth: usize, counts: &mut Vec<usize>) {
        if counts.len() <= depth {
            counts.push(0);
        }
        counts[depth] += 1;
        for w in 1..lat.len() {
            if w != last && lat.leq(last, w) {
                extend(lat, w, depth + 1, counts);
            }
        }
    }
    let mut counts = Vec::new();
    extend(lat, 0, 0, &mut counts);
    counts
}

/// Positive elements with at most `m` factors, found by grouping all words
/// of `m` simples (the identity included) into rewriting classes.
fn oracle_vertex_count(m: &DualMonoid, factors: usize) -> usize {
    let n = m.lattice().len();
    let mut classes = BTreeSet::new();
    let mut word = vec![0; factors];
    loop {
        let w: Vec<usize> = word.iter().copied().filter(|&s| s != 0).collect();
        classes.insert(m.oracle_closure(&w, DEFAULT_BUDGET).unwrap());
        let mut i = 0;
        while i < factors && word[i] + 1 == n {
            word[i] = 0;
            i += 1;
        }
        if i == factors {
            break;
        }
        word[i] += 1;
    }
    classes.len()
}

#[test]
fn chains_match_a_direct_count() {
    for m in [&*S3, &*S4] {
        let lat = m.lattice();
        let ours: Vec<usize> = chains_above_identity(lat).iter().map(Vec::len).collect();
        assert_eq!(ours, chain_counts(lat));
    }
    assert_eq!(chain_counts(S3.lattice()), [1, 4, 3]);
    assert_eq!(chain_counts(S4.lattice()), [1, 13, 28, 16]);
}

#[test]
fn truncations_have_the_right_vertices_and_are_points() {
    for (m, max) in [(&*S3, 3), (&*S4, 2)] {
        for k in 0..=max {
            let x = build_x_plus(m, k, DEFAULT_BUDGET).unwrap();
            assert_eq!(x.vertex_count(), oracle_vertex_count(m, k), "m = {k}");
            assert!(x.homology().is_point());
            let r = positive_complex_checks(&x);
            assert!(r.passed(), "{r}");
            if k > 0 {
                let r = x.verify_descending_links();
                assert!(r.passed(), "{r}");
            }
        }
    }
}

#[test]
fn first_truncation_of_s3() {
    let x = build_x_plus(&S3, 1, DEFAULT_BUDGET).unwrap();
    assert_eq!(x.complex().f_vector(), [5, 7, 3]);
    assert_eq!(x.vertex_label(0), "e");
    let gamma = x.vertex_count() - 1;
    assert_eq!(x.vertex_label(gamma), "(1,2,3)");
    assert!(x.descending_link(gamma).unwrap().is_cone().is_some());
    assert!(x.ascending_link(0).unwrap().is_cone().is_some());
    assert!(matches!(x.descending_star(99), Err(Error::UnknownVertex(_))));
    assert!(matches!(build_x_plus(&S4, 3, 10), Err(Error::BudgetExceeded(_))));
}

#[test]
fn translation_lands_in_the_next_truncations() {
    for (m, max) in [(&*S3, 2), (&*S4, 1)] {
        let rank = m.lattice().system().rank();
        for k in 0..=max {
            let x = build_x_plus(m, k, DEFAULT_BUDGET).unwrap();
            let next = build_x_plus(m, k + 1, DEFAULT_BUDGET).unwrap();
            let r = action_checks(&x, &next);
            assert!(r.passed(), "{r}");
            let far = build_x_plus(m, k + rank, DEFAULT_BUDGET).unwrap();
            let gamma = GroupForm {
                gamma_power: 0,
                positive: m.left_normal_form(&[m.gamma()]),
            };
            let faces: Vec<&Vec<usize>> = x.complex().faces().iter().collect();
            let images: BTreeSet<Vec<usize>> = faces.iter().map(|f| x.act(&gamma, f, &far).unwrap()).collect();
            assert_eq!(images.len(), faces.len());
        }
    }
}

#[test]
fn translation_out_of_the_truncation_is_reported() {
    let x = build_x_plus(&S3, 1, DEFAULT_BUDGET).unwrap();
    let gamma = GroupForm {
        gamma_power: 0,
        positive: S3.left_normal_form(&[S3.gamma()]),
    };
    let top = x.vertex_count() - 1;
    assert!(matches!(x.act(&gamma, &[top], &x), Err(Error::OutOfTruncation(_))));
}

#[test]
fn quotient_complex_homology() {
    let k3 = build_k(S3.lattice_arc());
    assert_eq!(k3.cell_counts(), [1, 4, 3]);
    assert_eq!(k3.euler_characteristic(), 0);
    assert!(k3.verify_boundary_squares().passed());
    assert_eq!(k3.homology().unwrap().to_string(), "H0=Z H1=Z H2=0");
    let k4 = build_k(S4.lattice_arc());
    assert_eq!(k4.cell_counts(), [1, 13, 28, 16]);
    assert_eq!(k4.euler_characteristic(), 0);
    assert!(k4.verify_boundary_squares().passed());
    assert_eq!(k4.homology().unwrap().to_string(), "H0=Z H1=Z H2=Z/2 H3=0");
    let json = k3.to_json();
    assert_eq!(json["cells"].as_array().unwrap().len(), 3);
    assert_eq!(json["boundary"].as_array().unwrap().len(), 2);
}

#[test]
fn identification_classes_of_s3() {
    let lat = S3.lattice();
    assert!(verify_example_identifications(lat));
    let classes = identification_classes(lat);
    assert_eq!(classes.len(), 4);
    assert_eq!(format_class(lat, &classes[1]), "{I, (1,2)} ~ {(1,3), (1,2,3)}");
    assert!(!verify_example_identifications(S4.lattice()));
    let classes = identification_classes(S4.lattice());
    let faces: Vec<&Vec<usize>> = classes.iter().flatten().collect();
    let distinct: BTreeSet<&Vec<usize>> = faces.iter().copied().collect();
    assert_eq!(distinct.len(), faces.len());
    assert!(classes.iter().all(|c| c[0][0] == 0));
}
