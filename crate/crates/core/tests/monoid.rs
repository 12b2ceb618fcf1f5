use std::collections::BTreeSet;
use std::sync::{Arc, LazyLock};

use ncgar_core::monoid::{Simple, DEFAULT_BUDGET};
use ncgar_core::verify;
use ncgar_core::{make_system, DualMonoid, Error, Family, GroupForm, Letter, NCLattice};
use proptest::prelude::*;

fn monoid(f: Family, n: usize) -> DualMonoid {
    DualMonoid::new(Arc::new(NCLattice::standard(Arc::new(make_system(f, n).unwrap())).unwrap()))
}

static S3: LazyLock<DualMonoid> = LazyLock::new(|| monoid(Family::A, 2));
static S4: LazyLock<DualMonoid> = LazyLock::new(|| monoid(Family::A, 3));
static B3: LazyLock<DualMonoid> = LazyLock::new(|| monoid(Family::B, 3));

fn word(m: &DualMonoid, text: &str) -> Vec<Simple> {
    m.parse_word(text).unwrap().0
}

#[test]
fn gamma_closure_has_four_words() {
    let m = &*S3;
    let closure = m.oracle_closure(&[m.gamma()], DEFAULT_BUDGET).unwrap();
    let text: BTreeSet<String> = closure.iter().map(|w| m.format_word(w)).collect();
    let expected: BTreeSet<String> = ["(1,2,3)", "(1,2)*(2,3)", "(2,3)*(1,3)", "(1,3)*(1,2)"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    assert_eq!(text, expected);
    assert_eq!(m.oracle_closure(&word(m, "(1,2)"), 10).unwrap().len(), 1);
    assert_eq!(m.oracle_closure(&[], 10).unwrap(), BTreeSet::from([vec![]]));
    assert!(matches!(m.oracle_closure(&vec![1; 13], DEFAULT_BUDGET), Err(Error::BudgetExceeded(_))));
}

#[test]
fn worked_normal_forms() {
    let m = &*S3;
    let nf = |t: &str| m.format_word(m.left_normal_form(&word(m, t)).factors());
    assert_eq!(nf("(1,2)*(2,3)"), "(1,2,3)");
    assert_eq!(nf("(1,2)*(1,2)"), "(1,2)*(1,2)");
    assert!(m.positively_equal(&word(m, "(1,2)*(2,3)*(1,2)"), &word(m, "(2,3)*(1,2)*(2,3)")));
    for w in 0..m.lattice().len() {
        let lat = m.lattice();
        let pair: Vec<Simple> = [lat.right_complement(w), w].into_iter().filter(|&x| x != 0).collect();
        assert!(m.positively_equal(&[m.gamma()], &pair));
    }
}

#[test]
fn lifts_of_worked_words() {
    let m = &*S3;
    let lift = |t: &str| m.positive_lift(&m.parse_letters(t).unwrap());
    let g = lift("(1,2)^-1*(1,2)");
    assert_eq!(m.format_group(&g), "g^-1 * (1,2,3)");
    assert!(m.positively_equal(g.positive.factors(), &[m.gamma()]));
    let h = lift("(1,2)*(1,2)^-1");
    assert_eq!(h.gamma_power, 1);
    assert!(m.positively_equal(h.positive.factors(), &[m.gamma()]));
    assert!(m.group_equal(&g, &lift("e")));
    assert_eq!(m.canonical(&g), GroupForm::default());
    assert!(m.group_equal(&lift("(1,2)*(2,3)*(1,2)"), &lift("(2,3)*(1,2)*(2,3)")));
    assert!(!m.group_equal(&lift("(1,2)"), &lift("(2,3)")));
    let p = lift("(1,2)*(2,3)");
    assert_eq!((p.gamma_power, m.format_word(p.positive.factors())), (0, "(1,2,3)".to_string()));
    assert_eq!(
        m.group_json(&g).to_string(),
        r#"{"factors":["(1,2,3)"],"gamma_power":1}"#
    );
    let text = m.format_group(&g);
    assert!(m.group_equal(&m.positive_lift(&m.parse_letters(&text).unwrap()), &g));
}

#[test]
fn prefixes_and_joins() {
    let m = &*S3;
    let lat = m.lattice();
    let (u, w) = (lat.parse_member("(1,2)").unwrap(), lat.parse_member("(2,3)").unwrap());
    let a = [lat.left_complement(u)];
    let b = [lat.left_complement(w)];
    let c = m.common_prefix(u, &a, w, &b).unwrap();
    assert_eq!((c.e, c.f), (a[0], b[0]));
    assert!(c.rest.is_empty());
    assert!(matches!(m.common_prefix(u, &[], w, &[]), Err(Error::NotEqualInput)));
    let reflections: Vec<usize> = (1..lat.len()).filter(|&x| lat.rank_of(x) == 1).collect();
    let (x, z) = m.join_prefix(&[m.gamma()], &reflections).unwrap();
    assert_eq!(x, m.gamma());
    assert!(z.is_empty());
    let (x, z) = m.join_suffix(&[m.gamma()], &reflections).unwrap();
    assert_eq!(x, m.gamma());
    assert!(z.is_empty());
    assert!(matches!(m.join_prefix(&[u], &[w]), Err(Error::NotDivisible(_))));
}

#[test]
fn oracle_agrees_with_normal_forms_on_short_words() {
    for m in [&*S3, &*S4, &*B3] {
        let r = verify::normal_forms_against_oracle(m, 4, DEFAULT_BUDGET).unwrap();
        assert!(r.passed(), "{r}");
    }
}

fn words(n: usize, max_factors: usize) -> impl Strategy<Value = Vec<Simple>> {
    prop::collection::vec(1..n, 0..=max_factors)
}

fn letters(n: usize, max_letters: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((1..n, any::<bool>()), 0..=max_letters)
        .prop_map(|v| v.into_iter().map(|(simple, inverse)| Letter { simple, inverse }).collect())
}

proptest! {
    #[test]
    fn normal_forms_are_canonical(w in words(14, 7), seed in any::<u64>()) {
        let m = &*S4;
        let nf = m.left_normal_form(&w);
        prop_assert!(m.is_left_weighted(nf.factors()));
        prop_assert_eq!(&m.left_normal_form(nf.factors()), &nf);
        prop_assert_eq!(m.length(nf.factors()), m.length(&w));
        prop_assert_eq!(m.evaluate(nf.factors()), m.evaluate(&w));
        let rnf = m.right_normal_form(&w);
        prop_assert_eq!(&m.left_normal_form(rnf.factors()), &nf);
        let mut rng = verify::rng(seed);
        let v = verify::random_rewrite(m, &w, 8, &mut rng);
        prop_assert!(m.positively_equal(&w, &v));
        prop_assert_eq!(m.length(&v), m.length(&w));
    }

    #[test]
    fn division_recovers_the_word(w in words(20, 5), j in 1usize..20) {
        let m = &*B3;
        if m.left_divides(j, &w) {
            let q = m.left_divide(&w, j).unwrap();
            let mut back = vec![j];
            back.extend(q.factors());
            prop_assert!(m.positively_equal(&back, &w));
        } else {
            prop_assert!(m.left_divide(&w, j).is_err());
        }
        if m.right_divides(j, &w) {
            let q = m.right_divide(&w, j).unwrap();
            let mut back = q.factors().to_vec();
            back.push(j);
            prop_assert!(m.positively_equal(&back, &w));
        }
        let mut jw = vec![j];
        jw.extend(&w);
        prop_assert!(m.left_divides(j, &jw));
    }

    #[test]
    fn common_prefix_factors_both_sides(w in words(14, 5), u in 1usize..14, v in 1usize..14) {
        let m = &*S4;
        let lat = m.lattice();
        // Build ⟨u⟩A ≐ ⟨v⟩B from a word both divide.
        let top = lat.join_idx(u, v);
        let mut p = vec![top];
        p.extend(&w);
        let a = m.left_divide(&p, u).unwrap();
        let b = m.left_divide(&p, v).unwrap();
        let c = m.common_prefix(u, a.factors(), v, b.factors()).unwrap();
        prop_assert_eq!(lat.mul(u, c.e), Some(top));
        prop_assert_eq!(lat.mul(v, c.f), Some(top));
        let c = m.common_suffix(a.factors(), u, a.factors(), u).unwrap();
        prop_assert_eq!((c.e, c.f), (0, 0));
    }

    #[test]
    fn cancellation(a in words(14, 4), u in 1usize..14, seed in any::<u64>()) {
        let m = &*S4;
        let mut rng = verify::rng(seed);
        let b = verify::random_rewrite(m, &a, 5, &mut rng);
        let mut ua = vec![u]; ua.extend(&a);
        let mut ub = vec![u]; ub.extend(&b);
        prop_assert!(m.positively_equal(&ua, &ub));
        prop_assert!(m.left_cancel(u, &a, &b) && m.right_cancel(u, &a, &b));
    }

    #[test]
    fn lifts_respect_the_group(u in letters(5, 6), seed in any::<u64>()) {
        let m = &*S3;
        let lu = m.positive_lift(&u);
        prop_assert_eq!(lu.gamma_power, u.iter().filter(|l| l.inverse).count());
        prop_assert_eq!(m.evaluate_group(&lu), verify::evaluate_letters(m, &u));
        let mut rng = verify::rng(seed);
        let v = verify::random_group_rewrite(m, &u, 5, &mut rng);
        prop_assert!(m.group_equal(&lu, &m.positive_lift(&v)));
        let c = m.canonical(&lu);
        prop_assert!(c.gamma_power <= lu.gamma_power);
        prop_assert!(m.group_equal(&c, &lu));
        let text = m.format_group(&c);
        prop_assert!(m.group_equal(&m.positive_lift(&m.parse_letters(&text).unwrap()), &c));
    }

    #[test]
    fn twists_commute_past_gamma(a in words(14, 4), k in 0usize..4) {
        let m = &*S4;
        let gk = vec![m.gamma(); k];
        let mut left = gk.clone();
        left.extend(&a);
        let mut right = m.gamma_twist(&a, k).0;
        right.extend(&gk);
        prop_assert!(m.positively_equal(&left, &right));
    }
}
