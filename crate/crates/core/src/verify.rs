//! Invariant suites shared by the command line and the test harness.
//!
//! Each check returns a [`VerificationReport`]; randomized checks draw from a
//! seeded ChaCha generator so that runs are reproducible.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex_builder::{build_k, build_x_plus, chains_above_identity, PositiveComplex};
use crate::coxeter::{CoxeterSystem, Family};
use crate::error::{Error, Result};
use crate::monoid::{DualMonoid, GroupForm, Letter, Simple, DEFAULT_BUDGET};
use crate::nc_lattice::{AbsolutePoset, NCLattice};
use crate::report::VerificationReport;
use crate::simplicial::AbstractComplex;

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Groups up to this order are checked pair by pair.
pub const EXHAUSTIVE_ORDER: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Order,
    Lattice,
    Monoid,
    Complex,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Suite::All),
            "order" => Ok(Suite::Order),
            "lattice" => Ok(Suite::Lattice),
            "monoid" => Ok(Suite::Monoid),
            "complex" => Ok(Suite::Complex),
            _ => Err(Error::parse(0, "expected all, order, lattice, monoid or complex")),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::All => "all",
            Suite::Order => "order",
            Suite::Lattice => "lattice",
            Suite::Monoid => "monoid",
            Suite::Complex => "complex",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Number of random instances per randomized check.
    pub samples: usize,
    pub budget: usize,
    /// Largest truncation built by the complex suite; chosen from the
    /// lattice size when absent.
    pub max_m: Option<usize>,
    /// Largest reflection length of words compared with the oracle.
    pub oracle_length: Option<u32>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: DEFAULT_SEED,
            samples: 1000,
            budget: DEFAULT_BUDGET,
            max_m: None,
            oracle_length: None,
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Runs the requested suites in a fixed order.
pub fn run(sys: &Arc<CoxeterSystem>, suite: Suite, opts: &VerifyOptions) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    if matches!(suite, Suite::All | Suite::Order) {
        out.extend(order_suite(sys, opts));
    }
    if suite == Suite::Order {
        return Ok(out);
    }
    let lat = Arc::new(NCLattice::standard(sys.clone())?);
    if matches!(suite, Suite::All | Suite::Lattice) {
        out.extend(lattice_suite(&lat));
    }
    let monoid = DualMonoid::new(lat);
    if matches!(suite, Suite::All | Suite::Monoid) {
        out.extend(monoid_suite(&monoid, opts)?);
    }
    if matches!(suite, Suite::All | Suite::Complex) {
        out.extend(complex_suite(&monoid, opts)?);
    }
    Ok(out)
}

// ---------------------------------------------------------------- order

pub fn order_suite(sys: &CoxeterSystem, opts: &VerifyOptions) -> Vec<VerificationReport> {
    let mut rng = rng(opts.seed);
    let poset = AbsolutePoset::new(sys);
    if sys.order() <= EXHAUSTIVE_ORDER {
        vec![
            reflection_checks(sys),
            length_lemmas(sys),
            poset.check_axioms(),
            poset.check_division_lemmas(),
        ]
    } else {
        vec![
            reflection_checks(sys),
            random_length_lemmas(sys, opts.samples, &mut rng),
            random_division_lemmas(sys, opts.samples, &mut rng),
        ]
    }
}

/// Reflections, the rank bound on reflection length, and `ℓ(γ) = rank`.
pub fn reflection_checks(sys: &CoxeterSystem) -> VerificationReport {
    let mut report = VerificationReport::new(format!("reflections of {}", sys.name()));
    let refl: BTreeSet<usize> = sys.reflection_indices().iter().copied().collect();
    for &t in &refl {
        for u in 0..sys.order() {
            let c = sys.conj_idx(u, t);
            report.check(refl.contains(&c), || {
                format!("{} conjugated by {} is not a reflection", sys.format_idx(t), sys.format_idx(u))
            });
        }
    }
    for w in 0..sys.order() {
        let l = sys.length_idx(w);
        report.check(l as usize <= sys.rank(), || format!("{} exceeds the rank", sys.format_idx(w)));
        report.check((l == 1) == refl.contains(&w), || {
            format!("{} has length {l} but reflection status {}", sys.format_idx(w), refl.contains(&w))
        });
        if let Some(c) = sys.element(w).cycle_count() {
            let n = sys.rank() + 1;
            report.check(l as usize == n - c, || format!("{} breaks n - cycles", sys.format_idx(w)));
        }
    }
    let g = sys.coxeter_index();
    report.check(sys.length_idx(g) as usize == sys.rank(), || "gamma is not of maximal length".into());
    report
}

fn check_length_pair(report: &mut VerificationReport, sys: &CoxeterSystem, u: usize, w: usize) {
    let l = |x| sys.length_idx(x);
    report.check(l(sys.conj_idx(u, w)) == l(w), || {
        format!("length of {} changes under conjugation by {}", sys.format_idx(w), sys.format_idx(u))
    });
    report.check(l(sys.mul_idx(u, w)) <= l(u) + l(w), || {
        format!("length of {}*{} is not subadditive", sys.format_idx(u), sys.format_idx(w))
    });
}

/// Conjugation invariance and subadditivity of reflection length on every
/// pair.
pub fn length_lemmas(sys: &CoxeterSystem) -> VerificationReport {
    let mut report = VerificationReport::new(format!("length lemmas on {}", sys.name()));
    for u in 0..sys.order() {
        for w in 0..sys.order() {
            check_length_pair(&mut report, sys, u, w);
        }
    }
    report
}

pub fn random_length_lemmas(sys: &CoxeterSystem, samples: usize, rng: &mut impl Rng) -> VerificationReport {
    let mut report = VerificationReport::new(format!("length lemmas on {} (random)", sys.name()));
    for _ in 0..samples {
        let (u, w) = (rng.gen_range(0..sys.order()), rng.gen_range(0..sys.order()));
        check_length_pair(&mut report, sys, u, w);
    }
    report
}

/// Random chains `u ≤ v ≤ w`, checked against both division lemmas.
pub fn random_division_lemmas(sys: &CoxeterSystem, samples: usize, rng: &mut impl Rng) -> VerificationReport {
    let poset = AbsolutePoset::new(sys);
    let mut report = VerificationReport::new(format!("division lemmas on {} (random)", sys.name()));
    let n = sys.order();
    for _ in 0..samples {
        let w = rng.gen_range(0..n);
        let below: Vec<usize> = (0..n).filter(|&x| poset.leq(x, w)).collect();
        let u = below[rng.gen_range(0..below.len())];
        let between: Vec<usize> = below.iter().copied().filter(|&x| poset.leq(u, x)).collect();
        let v = between[rng.gen_range(0..between.len())];
        let ui = sys.inv_idx(u);
        let left = sys.mul_idx(ui, w);
        let right = sys.mul_idx(w, ui);
        let uv = sys.mul_idx(ui, v);
        let vw = sys.ldiv_idx(v, w);
        report.check(
            poset.leq(left, w) && poset.leq(right, w) && poset.leq(uv, left) && poset.leq(vw, left),
            || {
                format!(
                    "division lemmas fail on {} <= {} <= {}",
                    sys.format_idx(u),
                    sys.format_idx(v),
                    sys.format_idx(w)
                )
            },
        );
    }
    report
}

// -------------------------------------------------------------- lattice

pub fn lattice_suite(lat: &NCLattice) -> Vec<VerificationReport> {
    let mut closure = VerificationReport::new(format!("conjugates of NC({})", lat.system().name()));
    for w in 0..lat.len() {
        closure.check(lat.rank_of(lat.right_complement(w)) + lat.rank_of(w) == lat.rank(), || {
            format!("complement of {} has the wrong rank", lat.format(w))
        });
        closure.check(lat.rank_of(lat.twist(w)) == lat.rank_of(w), || {
            format!("twist of {} has the wrong rank", lat.format(w))
        });
    }
    vec![lat.verify_lattice(), lat.verify_lattice_lemmas(), closure]
}

// --------------------------------------------------------------- monoid

pub fn monoid_suite(monoid: &DualMonoid, opts: &VerifyOptions) -> Result<Vec<VerificationReport>> {
    let mut rng = rng(opts.seed);
    let rank = monoid.lattice().rank();
    let oracle_length = opts.oracle_length.unwrap_or((rank + 2).min(6));
    Ok(vec![
        relation_checks(monoid),
        gamma_identities(monoid, 3),
        braid_relations(monoid),
        normal_forms_against_oracle(monoid, oracle_length, opts.budget)?,
        random_cancellation(monoid, opts.samples, &mut rng),
        random_twists(monoid, opts.samples, &mut rng),
        random_embedding(monoid, opts.samples, &mut rng),
    ])
}

/// `⟨w⟩` as a word; the identity is the empty word.
fn simple_word(s: Simple) -> Vec<Simple> {
    if s == 0 {
        Vec::new()
    } else {
        vec![s]
    }
}

fn cat(parts: &[&[Simple]]) -> Vec<Simple> {
    parts.concat()
}

/// Every defining relation evaluates consistently in `W` and is a
/// positive equality.
pub fn relation_checks(monoid: &DualMonoid) -> VerificationReport {
    let lat = monoid.lattice();
    let mut report = VerificationReport::new(format!("defining relations of NC({})", lat.system().name()));
    for (a, b, c) in monoid.defining_relations() {
        report.check(monoid.evaluate(&[a, b]) == monoid.evaluate(&[c]), || {
            format!("{} * {} does not evaluate to {}", lat.format(a), lat.format(b), lat.format(c))
        });
        report.check(monoid.positively_equal(&[a, b], &[c]), || {
            format!("{} * {} is not equal to {}", lat.format(a), lat.format(b), lat.format(c))
        });
    }
    report
}

/// The three `⟨γ⟩` identities for every member and their twisted forms
/// for `k ≤ max_k`.
pub fn gamma_identities(monoid: &DualMonoid, max_k: usize) -> VerificationReport {
    let lat = monoid.lattice();
    let g = simple_word(monoid.gamma());
    let mut report = VerificationReport::new(format!("gamma identities in NC({})", lat.system().name()));
    for w in 0..lat.len() {
        for k in 0..=max_k {
            let v = lat.twist_by(w, k);
            let gv_inv = lat.right_complement(v);
            let gvg = lat.twist(v);
            let a = cat(&[&simple_word(gv_inv), &simple_word(v)]);
            let b = cat(&[&simple_word(gvg), &simple_word(gv_inv)]);
            let c_left = cat(&[&g, &simple_word(v)]);
            let c_right = cat(&[&simple_word(gvg), &g]);
            report.check(
                monoid.positively_equal(&g, &a)
                    && monoid.positively_equal(&g, &b)
                    && monoid.positively_equal(&c_left, &c_right),
                || format!("gamma identities fail for {} with k = {k}", lat.format(w)),
            );
            report.check(
                monoid.evaluate(&a) == monoid.evaluate(&g) && monoid.evaluate(&c_left) == monoid.evaluate(&c_right),
                || format!("gamma identities do not evaluate for {} with k = {k}", lat.format(w)),
            );
        }
    }
    report
}

/// Artin relations among the simple reflections: alternating words of
/// length `m(i, j)` are positively equal.
pub fn braid_relations(monoid: &DualMonoid) -> VerificationReport {
    let lat = monoid.lattice();
    let sys = lat.system();
    let mut report = VerificationReport::new(format!("braid relations in NC({})", sys.name()));
    let gens: Vec<Option<usize>> = sys
        .generator_indices()
        .iter()
        .map(|&s| lat.member_of_system_index(s))
        .collect();
    let m = sys.coxeter_matrix();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let (Some(a), Some(b)) = (gens[i], gens[j]) else {
                report.check(false, || format!("generator {i} or {j} is not below gamma"));
                continue;
            };
            let alt = |x: usize, y: usize| -> Vec<Simple> {
                (0..m[i][j]).map(|k| if k % 2 == 0 { x } else { y }).collect()
            };
            report.check(monoid.positively_equal(&alt(a, b), &alt(b, a)), || {
                format!("braid relation of length {} fails for {} and {}", m[i][j], lat.format(a), lat.format(b))
            });
        }
    }
    report
}

/// All words whose reflection lengths sum to exactly `length`.
pub fn words_of_length(monoid: &DualMonoid, length: u32) -> Vec<Vec<Simple>> {
    let lat = monoid.lattice();
    let mut by_len: Vec<Vec<Vec<Simple>>> = vec![vec![Vec::new()]];
    for l in 1..=length {
        let mut words = Vec::new();
        for s in monoid.simples() {
            let r = lat.rank_of(s);
            if r <= l {
                for w in &by_len[(l - r) as usize] {
                    let mut v = w.clone();
                    v.push(s);
                    words.push(v);
                }
            }
        }
        by_len.push(words);
    }
    by_len.pop().unwrap_or_default()
}

/// Normal-form equality agrees with the relation-closure oracle on every
/// word of reflection length at most `max_length`. Each closure is
/// computed once and then serves as the class of all its words.
pub fn normal_forms_against_oracle(
    monoid: &DualMonoid,
    max_length: u32,
    budget: usize,
) -> Result<VerificationReport> {
    let lat = monoid.lattice();
    let mut report = VerificationReport::new(format!(
        "normal forms vs relation closure in NC({}), length <= {max_length}",
        lat.system().name()
    ));
    for l in 0..=max_length {
        let words = words_of_length(monoid, l);
        let mut classified: BTreeSet<Vec<Simple>> = BTreeSet::new();
        let mut forms = BTreeSet::new();
        for w in &words {
            if classified.contains(w) {
                continue;
            }
            let class = monoid.oracle_closure(w, budget)?;
            let nf = monoid.left_normal_form(w);
            report.check(monoid.is_left_weighted(nf.factors()), || {
                format!("normal form of {} is not left-weighted", monoid.format_word(w))
            });
            for v in &class {
                report.check(monoid.left_normal_form(v) == nf, || {
                    format!("{} and {} differ in normal form", monoid.format_word(w), monoid.format_word(v))
                });
                report.check(monoid.length(v) == l, || format!("{} changed length", monoid.format_word(v)));
            }
            report.check(forms.insert(nf), || {
                format!("normal form of {} is shared by two classes", monoid.format_word(w))
            });
            classified.extend(class);
        }
        report.check(classified.len() == words.len(), || format!("closure left length {l}"));
    }
    Ok(report)
}

/// A random word built from `factors` random simples.
pub fn random_word(monoid: &DualMonoid, factors: usize, rng: &mut impl Rng) -> Vec<Simple> {
    let n = monoid.lattice().len();
    (0..factors).map(|_| rng.gen_range(1..n)).collect()
}

/// Applies `steps` random substitutions of defining relations.
pub fn random_rewrite(monoid: &DualMonoid, word: &[Simple], steps: usize, rng: &mut impl Rng) -> Vec<Simple> {
    let lat = monoid.lattice();
    let mut w = word.to_vec();
    for _ in 0..steps {
        if w.is_empty() {
            break;
        }
        let i = rng.gen_range(0..w.len());
        let merge = i + 1 < w.len() && rng.gen_bool(0.5);
        if merge {
            if let Some(c) = lat.mul(w[i], w[i + 1]) {
                w.splice(i..i + 2, [c]);
            }
        } else {
            let below: Vec<usize> = (1..lat.len()).filter(|&a| a != w[i] && lat.leq(a, w[i])).collect();
            if !below.is_empty() {
                let a = below[rng.gen_range(0..below.len())];
                let b = lat.ldiv(a, w[i]).unwrap();
                w.splice(i..i + 1, [a, b]);
            }
        }
    }
    w
}

/// Cancellation on random equal pairs, and on random pairs in general.
pub fn random_cancellation(monoid: &DualMonoid, samples: usize, rng: &mut impl Rng) -> VerificationReport {
    let lat = monoid.lattice();
    let mut report = VerificationReport::new(format!("cancellation in NC({})", lat.system().name()));
    for _ in 0..samples {
        let u = rng.gen_range(1..lat.len());
        let factors = rng.gen_range(0..5);
        let a = random_word(monoid, factors, rng);
        let b = if rng.gen_bool(0.5) {
            random_rewrite(monoid, &a, 6, rng)
        } else {
            random_word(monoid, factors, rng)
        };
        let ua = cat(&[&[u], &a]);
        let ub = cat(&[&[u], &b]);
        let au = cat(&[&a, &[u]]);
        let bu = cat(&[&b, &[u]]);
        let eq = monoid.positively_equal(&a, &b);
        report.check(
            eq == monoid.positively_equal(&ua, &ub) && eq == monoid.positively_equal(&au, &bu),
            || format!("cancelling {} fails for {}", lat.format(u), monoid.format_word(&a)),
        );
        report.check(monoid.left_cancel(u, &a, &b) && monoid.right_cancel(u, &a, &b), || {
            format!("cancellation check fails for {}", monoid.format_word(&a))
        });
    }
    report
}

/// `⟨γ⟩ᵏA ≐ twist(A, k)⟨γ⟩ᵏ` on random words.
pub fn random_twists(monoid: &DualMonoid, samples: usize, rng: &mut impl Rng) -> VerificationReport {
    let lat = monoid.lattice();
    let g = monoid.gamma();
    let mut report = VerificationReport::new(format!("gamma twists in NC({})", lat.system().name()));
    for _ in 0..samples {
        let k = rng.gen_range(0..4);
        let factors = rng.gen_range(0..4);
        let a = random_word(monoid, factors, rng);
        let gk = vec![g; k];
        let twisted = monoid.gamma_twist(&a, k);
        report.check(
            monoid.positively_equal(&cat(&[&gk, &a]), &cat(&[twisted.factors(), &gk]))
                && monoid.length(twisted.factors()) == monoid.length(&a),
            || format!("twist by {k} fails for {}", monoid.format_word(&a)),
        );
    }
    report
}

pub fn random_letters(monoid: &DualMonoid, len: usize, rng: &mut impl Rng) -> Vec<Letter> {
    let n = monoid.lattice().len();
    (0..len)
        .map(|_| Letter {
            simple: rng.gen_range(1..n),
            inverse: rng.gen_bool(0.5),
        })
        .collect()
}

/// Image of a mixed word under `⟨w⟩ ↦ ℓ(w)`, a homomorphism to the integers.
pub fn exponent_sum(monoid: &DualMonoid, letters: &[Letter]) -> i64 {
    letters
        .iter()
        .map(|l| {
            let r = monoid.lattice().rank_of(l.simple) as i64;
            if l.inverse {
                -r
            } else {
                r
            }
        })
        .sum()
}

fn group_exponent_sum(monoid: &DualMonoid, g: &GroupForm) -> i64 {
    monoid.length(g.positive.factors()) as i64 - (g.gamma_power as i64) * monoid.lattice().rank() as i64
}

/// Rewrites a mixed word without changing its value in the group: inserts
/// or deletes inverse pairs and applies relations inside positive runs.
pub fn random_group_rewrite(monoid: &DualMonoid, letters: &[Letter], steps: usize, rng: &mut impl Rng) -> Vec<Letter> {
    let lat = monoid.lattice();
    let mut w = letters.to_vec();
    for _ in 0..steps {
        match rng.gen_range(0..3) {
            0 => {
                let at = rng.gen_range(0..=w.len());
                let s = rng.gen_range(1..lat.len());
                let first = rng.gen_bool(0.5);
                let pair = [
                    Letter { simple: s, inverse: first },
                    Letter { simple: s, inverse: !first },
                ];
                w.splice(at..at, pair);
            }
            1 => {
                if let Some(i) = (0..w.len().saturating_sub(1))
                    .find(|&i| w[i].simple == w[i + 1].simple && w[i].inverse != w[i + 1].inverse)
                {
                    w.drain(i..i + 2);
                }
            }
            _ => {
                if w.is_empty() {
                    continue;
                }
                let i = rng.gen_range(0..w.len());
                let l = w[i];
                if l.inverse {
                    // ⟨ab⟩⁻¹ = ⟨b⟩⁻¹⟨a⟩⁻¹
                    let below: Vec<usize> = (1..lat.len()).filter(|&a| a != l.simple && lat.leq(a, l.simple)).collect();
                    if !below.is_empty() {
                        let a = below[rng.gen_range(0..below.len())];
                        let b = lat.ldiv(a, l.simple).unwrap();
                        w.splice(i..i + 1, [Letter { simple: b, inverse: true }, Letter { simple: a, inverse: true }]);
                    }
                } else {
                    let rewritten = random_rewrite(monoid, &[l.simple], 1, rng);
                    w.splice(i..i + 1, rewritten.into_iter().map(|s| Letter { simple: s, inverse: false }));
                }
            }
        }
    }
    w
}

/// Equal mixed words are identified by their lifts, and words that differ
/// in `W` or in exponent sum are kept apart.
pub fn random_embedding(monoid: &DualMonoid, samples: usize, rng: &mut impl Rng) -> VerificationReport {
    let lat = monoid.lattice();
    let mut report = VerificationReport::new(format!("positive lifts in NC({})", lat.system().name()));
    for _ in 0..samples {
        let len = rng.gen_range(0..6);
        let u = random_letters(monoid, len, rng);
        let v = random_group_rewrite(monoid, &u, 4, rng);
        let (lu, lv) = (monoid.positive_lift(&u), monoid.positive_lift(&v));
        report.check(monoid.group_equal(&lu, &lv), || {
            format!("{} and {} are not identified", monoid.format_letters(&u), monoid.format_letters(&v))
        });
        report.check(
            lu.gamma_power == u.iter().filter(|l| l.inverse).count()
                && group_exponent_sum(monoid, &lu) == exponent_sum(monoid, &u),
            || format!("lift of {} has the wrong shape", monoid.format_letters(&u)),
        );

        let other = random_letters(monoid, rng.gen_range(0..6), rng);
        let lo = monoid.positive_lift(&other);
        let differ = monoid.evaluate_group(&lu) != monoid.evaluate_group(&lo)
            || exponent_sum(monoid, &u) != exponent_sum(monoid, &other);
        report.check(!(differ && monoid.group_equal(&lu, &lo)), || {
            format!("{} and {} are conflated", monoid.format_letters(&u), monoid.format_letters(&other))
        });
        report.check(
            monoid.evaluate_group(&lu) == evaluate_letters(monoid, &u),
            || format!("lift of {} evaluates wrongly", monoid.format_letters(&u)),
        );
    }
    report
}

/// Direct image of a mixed word in `W`.
pub fn evaluate_letters(monoid: &DualMonoid, letters: &[Letter]) -> crate::GroupElement {
    let lat = monoid.lattice();
    let sys = lat.system();
    let w = letters.iter().fold(0, |acc, l| {
        let x = lat.system_index(l.simple);
        sys.mul_idx(acc, if l.inverse { sys.inv_idx(x) } else { x })
    });
    sys.element(w).clone()
}

// -------------------------------------------------------------- complex

/// Default truncation depth: larger for the smaller lattices.
pub fn default_max_m(lat: &NCLattice) -> usize {
    match lat.len() {
        0..=5 => 3,
        6..=20 => 2,
        _ => 1,
    }
}

pub fn complex_suite(monoid: &DualMonoid, opts: &VerifyOptions) -> Result<Vec<VerificationReport>> {
    let mut rng = rng(opts.seed);
    let max_m = opts.max_m.unwrap_or_else(|| default_max_m(monoid.lattice()));
    let mut out = Vec::new();
    let xs: Vec<PositiveComplex> = (0..=max_m + 1)
        .map(|m| build_x_plus(monoid, m, opts.budget))
        .collect::<Result<_>>()?;
    for m in 0..=max_m {
        let x = &xs[m];
        out.push(positive_complex_checks(x));
        if m > 0 {
            out.push(x.verify_descending_links());
        }
        out.push(cone_lemma(x.complex()));
        out.push(action_checks(x, &xs[m + 1]));
    }
    out.push(quotient_checks(monoid));
    out.push(limit_spot_check(monoid, max_m, &xs[max_m + 1], opts.samples, &mut rng));
    Ok(out)
}

/// Closure, increasing labels, descending star as a cone, and trivial
/// reduced homology.
pub fn positive_complex_checks(x: &PositiveComplex) -> VerificationReport {
    let lat = x.monoid().lattice();
    let mut report = VerificationReport::new(format!("X_{}^+ over NC({})", x.m(), lat.system().name()));
    let c = x.complex();
    report.check(c.is_closed(), || "face set is not closed".into());
    for f in c.faces() {
        report.check(f.windows(2).all(|p| x.length(p[0]) < x.length(p[1])), || {
            let labels: Vec<&str> = f.iter().map(|&v| x.vertex_label(v)).collect();
            format!("labels of {labels:?} do not increase in length")
        });
    }
    for v in 0..x.vertex_count() {
        let star = x.descending_star(v).unwrap();
        let cone = x.descending_link(v).unwrap().cone(x.vertex_label(v));
        report.check(cone.is_ok_and(|cone| star.same_faces(&cone)), || {
            format!("descending star of {} is not a cone", x.vertex_label(v))
        });
        let star = x.ascending_star(v).unwrap();
        let cone = x.ascending_link(v).unwrap().cone(x.vertex_label(v));
        report.check(cone.is_ok_and(|cone| star.same_faces(&cone)), || {
            format!("ascending star of {} is not a cone", x.vertex_label(v))
        });
    }
    let h = x.homology();
    report.check(h.is_point(), || format!("homology is {h}"));
    report
}

/// `star(v) = cone(v, link(v))` for every vertex.
pub fn cone_lemma(c: &AbstractComplex) -> VerificationReport {
    let mut report = VerificationReport::new("star is the cone over the link");
    for v in (0..c.vertices().len()).filter(|&v| c.contains(&[v])) {
        let star = c.star(v).unwrap();
        let cone = c.link(v).unwrap().cone(&c.vertices()[v]);
        report.check(cone.is_ok_and(|cone| star.same_faces(&cone)), || {
            format!("star of {} is not the cone over its link", c.vertices()[v])
        });
    }
    report
}

/// Translation by the identity fixes faces, and translation by `⟨γ⟩` and by
/// each simple maps faces of `x` injectively onto faces of `target`.
pub fn action_checks(x: &PositiveComplex, target: &PositiveComplex) -> VerificationReport {
    let monoid = x.monoid();
    let mut report = VerificationReport::new(format!("action on X_{}^+", x.m()));
    let faces: Vec<&Vec<usize>> = x.complex().faces().iter().filter(|f| !f.is_empty()).collect();
    for f in &faces {
        report.check(x.act(&GroupForm::default(), f, x).as_ref() == Ok(*f), || format!("identity moves {f:?}"));
    }
    for s in monoid.simples() {
        let g = GroupForm {
            gamma_power: 0,
            positive: monoid.left_normal_form(&[s]),
        };
        let mut images = BTreeSet::new();
        for f in &faces {
            match x.act(&g, f, target) {
                Ok(img) => {
                    report.check(img.len() == f.len(), || format!("translate of {f:?} collapsed"));
                    images.insert(img);
                }
                Err(e) => {
                    report.check(false, || format!("translate of {f:?} by {}: {e}", monoid.format_word(&[s])));
                }
            }
        }
        report.check(images.len() == faces.len(), || {
            format!("translation by {} is not injective", monoid.format_word(&[s]))
        });
    }
    report
}

/// `∂∂ = 0`, cell counts against chain counts, Euler characteristic, and
/// `H₀ = ℤ` for the quotient complex.
pub fn quotient_checks(monoid: &DualMonoid) -> VerificationReport {
    let lat = monoid.lattice();
    let k = build_k(monoid.lattice_arc());
    let mut report = k.verify_boundary_squares();
    report.name = format!("quotient complex K for NC({})", lat.system().name());
    let chains = chains_above_identity(lat);
    report.check(k.cell_counts() == chains.iter().map(Vec::len).collect::<Vec<_>>(), || {
        "cell counts differ from chain counts".into()
    });
    report.check(k.cell_counts()[0] == 1, || "more than one vertex".into());
    match k.homology() {
        Ok(h) => {
            report.check(h.groups.first().is_some_and(|g| g.betti == 1 && g.torsion.is_empty()), || {
                format!("H0 is {}", h.groups[0])
            });
            report.check(h.euler_characteristic() == k.euler_characteristic(), || {
                "Euler characteristic of homology differs from cell count".into()
            });
        }
        Err(e) => {
            report.check(false, || e.to_string());
        }
    }
    report
}

/// A face of the truncation with mixed labels, translated by `⟨γ⟩ᵏ`, is a
/// face of a positive truncation, and translating back recovers it.
pub fn limit_spot_check(
    monoid: &DualMonoid,
    m: usize,
    positive: &PositiveComplex,
    samples: usize,
    rng: &mut impl Rng,
) -> VerificationReport {
    let lat = monoid.lattice();
    let chains: Vec<Vec<usize>> = chains_above_identity(lat).into_iter().flatten().collect();
    let mut report = VerificationReport::new(format!("mixed faces of X_{m} over NC({})", lat.system().name()));
    for _ in 0..samples {
        let len = rng.gen_range(0..=m);
        let g0 = random_letters(monoid, len, rng);
        let chain = &chains[rng.gen_range(0..chains.len())];
        let lift = monoid.positive_lift(&g0);
        report.check(lift.gamma_power <= m, || format!("{} needs too many gammas", monoid.format_letters(&g0)));
        let mut face = Vec::new();
        let mut ok = true;
        for &w in std::iter::once(&0).chain(chain) {
            let mut p = lift.positive.factors().to_vec();
            p.extend(simple_word(w));
            let p = monoid.left_normal_form(&p);
            let back = GroupForm {
                gamma_power: lift.gamma_power,
                positive: p.clone(),
            };
            let mut letters = g0.clone();
            if w != 0 {
                letters.push(Letter { simple: w, inverse: false });
            }
            ok &= monoid.group_equal(&back, &monoid.positive_lift(&letters));
            match positive.index_of(&p) {
                Some(i) => face.push(i),
                None => ok = false,
            }
        }
        report.check(ok && positive.complex().contains(&face), || {
            format!(
                "face of {} along a chain of length {} is not a translate",
                monoid.format_letters(&g0),
                chain.len()
            )
        });
    }
    report
}

/// Systems covered by the standard test matrix.
pub fn standard_systems() -> Vec<(Family, usize)> {
    let mut v = vec![
        (Family::A, 1),
        (Family::A, 2),
        (Family::A, 3),
        (Family::A, 4),
        (Family::B, 2),
        (Family::B, 3),
        (Family::D, 4),
    ];
    v.extend((3..=8).map(|m| (Family::I2, m)));
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::make_system;

    #[test]
    fn suite_names_round_trip() {
        for s in [Suite::All, Suite::Order, Suite::Lattice, Suite::Monoid, Suite::Complex] {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn full_suite_on_a2() {
        let sys = Arc::new(make_system(Family::A, 2).unwrap());
        let opts = VerifyOptions {
            samples: 200,
            ..Default::default()
        };
        for r in run(&sys, Suite::All, &opts).unwrap() {
            assert!(r.passed(), "{r}");
            assert!(r.checked > 0, "{} checked nothing", r.name);
        }
    }

    #[test]
    fn words_by_length() {
        let sys = Arc::new(make_system(Family::A, 2).unwrap());
        let m = DualMonoid::new(Arc::new(NCLattice::standard(sys).unwrap()));
        let counts: Vec<usize> = (0..5).map(|l| words_of_length(&m, l).len()).collect();
        assert_eq!(counts, [1, 3, 10, 33, 109]);
    }
}
