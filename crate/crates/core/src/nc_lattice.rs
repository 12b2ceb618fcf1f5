//! The absolute order on a Coxeter group and the lattice of non-crossing
//! elements `NC(W, γ) = [I, γ]`.
//!
//! Members are indexed in (rank, canonical text) order, so the identity is
//! always member 0 and `γ` is always the last member. All product tables
//! are filled at build time; the monoid and complex layers only read them.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde_json::json;

use crate::coxeter::CoxeterSystem;
use crate::element::GroupElement;
use crate::error::{Error, Result};
use crate::poset::FinitePoset;
use crate::report::VerificationReport;

/// `u ≤ w` in the absolute order, for system indices.
pub fn absolute_leq_idx(sys: &CoxeterSystem, u: usize, w: usize) -> bool {
    sys.length_idx(w) == sys.length_idx(u) + sys.length_idx(sys.ldiv_idx(u, w))
}

/// `u ≤ w ⟺ ℓ(w) = ℓ(u) + ℓ(u⁻¹w)`.
pub fn absolute_leq(sys: &CoxeterSystem, u: &GroupElement, w: &GroupElement) -> Result<bool> {
    Ok(absolute_leq_idx(sys, sys.require(u)?, sys.require(w)?))
}

/// The absolute order on all of `W`, evaluated on demand.
#[derive(Clone, Copy, Debug)]
pub struct AbsolutePoset<'a> {
    system: &'a CoxeterSystem,
}

impl<'a> AbsolutePoset<'a> {
    pub fn new(system: &'a CoxeterSystem) -> Self {
        AbsolutePoset { system }
    }

    pub fn leq(&self, u: usize, w: usize) -> bool {
        absolute_leq_idx(self.system, u, w)
    }

    /// The whole group as an explicit poset. Quadratic in `|W|`.
    pub fn to_finite_poset(&self) -> FinitePoset {
        let labels = (0..self.system.order())
            .map(|i| self.system.format_idx(i))
            .collect();
        FinitePoset::from_relation(labels, |u, w| self.leq(u, w))
    }

    /// Poset axioms, checked on every pair and every comparable triple.
    pub fn check_axioms(&self) -> VerificationReport {
        let mut report = self.to_finite_poset().check_axioms();
        report.name = format!("absolute order on {}", self.system.name());
        report
    }

    /// `u ≤ w ⟹ u⁻¹w ≤ w and wu⁻¹ ≤ w`, and
    /// `u ≤ v ≤ w ⟹ u⁻¹v ≤ u⁻¹w and v⁻¹w ≤ u⁻¹w`, exhaustively.
    pub fn check_division_lemmas(&self) -> VerificationReport {
        let sys = self.system;
        let n = sys.order();
        let mut report = VerificationReport::new(format!("division lemmas on {}", sys.name()));
        let above: Vec<Vec<usize>> = (0..n)
            .map(|u| (0..n).filter(|&w| self.leq(u, w)).collect())
            .collect();
        for u in 0..n {
            let ui = sys.inv_idx(u);
            for &w in &above[u] {
                let left = sys.mul_idx(ui, w);
                let right = sys.mul_idx(w, ui);
                report.check(self.leq(left, w) && self.leq(right, w), || {
                    format!("quotients of {} by {} are not below it", sys.format_idx(w), sys.format_idx(u))
                });
                for &v in &above[u] {
                    if !self.leq(v, w) {
                        continue;
                    }
                    let uv = sys.mul_idx(ui, v);
                    let vw = sys.ldiv_idx(v, w);
                    report.check(self.leq(uv, left) && self.leq(vw, left), || {
                        format!(
                            "chain {} <= {} <= {} violates the quotient inequalities",
                            sys.format_idx(u),
                            sys.format_idx(v),
                            sys.format_idx(w)
                        )
                    });
                }
            }
        }
        report
    }
}

/// Members of the lattice as a packed bitset per member.
#[derive(Clone, Debug)]
struct Bits {
    words: usize,
    data: Vec<u64>,
}

impl Bits {
    fn new(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        Bits {
            words,
            data: vec![0; rows * words],
        }
    }

    fn set(&mut self, r: usize, c: usize) {
        self.data[r * self.words + c / 64] |= 1 << (c % 64);
    }

    fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.words..(r + 1) * self.words]
    }
}

fn and(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn highest(bits: &[u64]) -> Option<usize> {
    bits.iter()
        .enumerate()
        .rev()
        .find(|(_, &w)| w != 0)
        .map(|(i, &w)| i * 64 + 63 - w.leading_zeros() as usize)
}

fn lowest(bits: &[u64]) -> Option<usize> {
    bits.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
}

const NONE: u16 = u16::MAX;

/// The interval `[I, γ]` of the absolute order with its lattice and product
/// tables. Immutable after [`build_nc`].
#[derive(Debug)]
pub struct NCLattice {
    system: Arc<CoxeterSystem>,
    gamma: usize,
    members: Vec<usize>,
    lookup: HashMap<usize, usize>,
    rank: Vec<u32>,
    leq: Bits,
    covers: Vec<(usize, usize)>,
    meet: Vec<u16>,
    join: Vec<u16>,
    mul: Vec<u16>,
    ldiv: Vec<u16>,
    rdiv: Vec<u16>,
    left_complement: Vec<usize>,
    right_complement: Vec<usize>,
    twist: Vec<usize>,
}

/// Builds `NC(W, γ)`, failing if `γ` is not a Coxeter element or if some
/// pair lacks a meet or join.
pub fn build_nc(system: Arc<CoxeterSystem>, gamma: &GroupElement) -> Result<NCLattice> {
    let g = system.require(gamma)?;
    NCLattice::from_index(system, g)
}

impl NCLattice {
    /// Builds the lattice for the standard Coxeter element `s₁ ⋯ sₙ`.
    pub fn standard(system: Arc<CoxeterSystem>) -> Result<Self> {
        let g = system.coxeter_index();
        Self::from_index(system, g)
    }

    pub fn from_index(system: Arc<CoxeterSystem>, gamma: usize) -> Result<Self> {
        if !system.is_coxeter_element(gamma) {
            return Err(Error::NotCoxeterElement(system.format_idx(gamma)));
        }
        let sys = &*system;
        let mut members: Vec<(u32, String, usize)> = (0..sys.order())
            .filter(|&w| absolute_leq_idx(sys, w, gamma))
            .map(|w| (sys.length_idx(w), sys.format_idx(w), w))
            .collect();
        members.sort();
        let rank: Vec<u32> = members.iter().map(|m| m.0).collect();
        let members: Vec<usize> = members.into_iter().map(|m| m.2).collect();
        let n = members.len();
        assert!(n < NONE as usize, "lattice too large for u16 tables");
        let lookup: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &w)| (w, i)).collect();

        let mut leq = Bits::new(n, n);
        let mut geq = Bits::new(n, n);
        for a in 0..n {
            for b in a..n {
                if absolute_leq_idx(sys, members[a], members[b]) {
                    leq.set(b, a);
                    geq.set(a, b);
                }
            }
        }

        let mut meet = vec![NONE; n * n];
        let mut join = vec![NONE; n * n];
        for a in 0..n {
            for b in 0..n {
                let lower = and(leq.row(a), leq.row(b));
                let m = highest(&lower).filter(|&m| leq.row(m) == lower.as_slice());
                let upper = and(geq.row(a), geq.row(b));
                let j = lowest(&upper).filter(|&j| geq.row(j) == upper.as_slice());
                let (Some(m), Some(j)) = (m, j) else {
                    return Err(Error::LatticeViolation {
                        kind: if m.is_none() { "meet" } else { "join" },
                        a: sys.format_idx(members[a]),
                        b: sys.format_idx(members[b]),
                    });
                };
                meet[a * n + b] = m as u16;
                join[a * n + b] = j as u16;
            }
        }

        let is_leq = |a: usize, b: usize| leq.row(b)[a / 64] >> (a % 64) & 1 == 1;
        let mut covers = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if rank[b] == rank[a] + 1 && is_leq(a, b) {
                    covers.push((a, b));
                }
            }
        }

        let mut mul = vec![NONE; n * n];
        let mut ldiv = vec![NONE; n * n];
        let mut rdiv = vec![NONE; n * n];
        for a in 0..n {
            let wa = members[a];
            let ia = sys.inv_idx(wa);
            for b in 0..n {
                let wb = members[b];
                if let Some(&c) = lookup.get(&sys.mul_idx(wa, wb)) {
                    if rank[c] == rank[a] + rank[b] {
                        mul[a * n + b] = c as u16;
                    }
                }
                if is_leq(a, b) {
                    ldiv[a * n + b] = lookup[&sys.mul_idx(ia, wb)] as u16;
                }
                if let Some(&c) = lookup.get(&sys.mul_idx(wb, ia)) {
                    if rank[b] == rank[c] + rank[a] {
                        rdiv[a * n + b] = c as u16;
                    }
                }
            }
        }

        let gi = sys.inv_idx(gamma);
        let left_complement = members
            .iter()
            .map(|&w| lookup[&sys.ldiv_idx(w, gamma)])
            .collect();
        let right_complement = members
            .iter()
            .map(|&w| lookup[&sys.mul_idx(gamma, sys.inv_idx(w))])
            .collect();
        let twist = members
            .iter()
            .map(|&w| lookup[&sys.mul_idx(sys.mul_idx(gamma, w), gi)])
            .collect();

        Ok(NCLattice {
            gamma,
            members,
            lookup,
            rank,
            leq,
            covers,
            meet,
            join,
            mul,
            ldiv,
            rdiv,
            left_complement,
            right_complement,
            twist,
            system,
        })
    }

    pub fn system(&self) -> &Arc<CoxeterSystem> {
        &self.system
    }

    pub fn gamma(&self) -> &GroupElement {
        self.system.element(self.gamma)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Member index of the identity.
    pub fn bottom(&self) -> usize {
        0
    }

    /// Member index of `γ`.
    pub fn top(&self) -> usize {
        self.members.len() - 1
    }

    pub fn member(&self, i: usize) -> &GroupElement {
        self.system.element(self.members[i])
    }

    pub fn members(&self) -> impl Iterator<Item = &GroupElement> + '_ {
        self.members.iter().map(|&w| self.system.element(w))
    }

    /// System index of member `i`.
    pub fn system_index(&self, i: usize) -> usize {
        self.members[i]
    }

    pub fn member_of_system_index(&self, w: usize) -> Option<usize> {
        self.lookup.get(&w).copied()
    }

    pub fn index_of(&self, w: &GroupElement) -> Option<usize> {
        self.system.index_of(w).and_then(|i| self.member_of_system_index(i))
    }

    /// Member index of `w`, or [`Error::NotAMember`].
    pub fn require(&self, w: &GroupElement) -> Result<usize> {
        self.index_of(w).ok_or_else(|| Error::NotAMember(w.to_string()))
    }

    pub fn parse_member(&self, text: &str) -> Result<usize> {
        let w = GroupElement::parse(self.system.shape(), text)?;
        self.require(&w)
    }

    pub fn format(&self, i: usize) -> String {
        self.member(i).to_string()
    }

    pub fn rank_of(&self, i: usize) -> u32 {
        self.rank[i]
    }

    /// Rank of the lattice, `ℓ(γ)`.
    pub fn rank(&self) -> u32 {
        self.rank[self.top()]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq.row(b)[a / 64] >> (a % 64) & 1 == 1
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn meet_idx(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b] as usize
    }

    pub fn join_idx(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b] as usize
    }

    pub fn meet(&self, u: &GroupElement, w: &GroupElement) -> Result<GroupElement> {
        Ok(self.member(self.meet_idx(self.require(u)?, self.require(w)?)).clone())
    }

    pub fn join(&self, u: &GroupElement, w: &GroupElement) -> Result<GroupElement> {
        Ok(self.member(self.join_idx(self.require(u)?, self.require(w)?)).clone())
    }

    /// `a · b` when `ℓ(ab) = ℓ(a) + ℓ(b)` and `ab ≤ γ`.
    pub fn mul(&self, a: usize, b: usize) -> Option<usize> {
        opt(self.mul[a * self.len() + b])
    }

    /// `a⁻¹ b` when `a ≤ b`.
    pub fn ldiv(&self, a: usize, b: usize) -> Option<usize> {
        opt(self.ldiv[a * self.len() + b])
    }

    /// `b a⁻¹` when `a` is a right factor of `b`.
    pub fn rdiv(&self, a: usize, b: usize) -> Option<usize> {
        opt(self.rdiv[a * self.len() + b])
    }

    /// `a⁻¹ γ`
    pub fn left_complement(&self, a: usize) -> usize {
        self.left_complement[a]
    }

    /// `γ a⁻¹`
    pub fn right_complement(&self, a: usize) -> usize {
        self.right_complement[a]
    }

    /// `γ a γ⁻¹`
    pub fn twist(&self, a: usize) -> usize {
        self.twist[a]
    }

    /// `γᵏ a γ⁻ᵏ`
    pub fn twist_by(&self, a: usize, k: usize) -> usize {
        let order = self.system.element(self.gamma).order();
        (0..k % order).fold(a, |x, _| self.twist[x])
    }

    /// Cover relations `a ⋖ b`, sorted.
    pub fn hasse_edges(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// All maximal chains `I = c₀ ⋖ c₁ ⋖ … ⋖ γ`.
    pub fn maximal_chains(&self) -> Vec<Vec<usize>> {
        let mut up: Vec<Vec<usize>> = vec![Vec::new(); self.len()];
        for &(a, b) in &self.covers {
            up[a].push(b);
        }
        let mut out = Vec::new();
        let mut stack = vec![vec![self.bottom()]];
        while let Some(chain) = stack.pop() {
            let last = *chain.last().unwrap();
            if last == self.top() {
                out.push(chain);
                continue;
            }
            for &b in up[last].iter().rev() {
                let mut next = chain.clone();
                next.push(b);
                stack.push(next);
            }
        }
        out
    }

    /// The lattice as an explicit [`FinitePoset`].
    pub fn poset(&self) -> FinitePoset {
        let labels = (0..self.len()).map(|i| self.format(i)).collect();
        FinitePoset::from_relation(labels, |a, b| self.leq(a, b))
    }

    /// Re-derives every meet and join by bound scans and compares them with
    /// the tables.
    pub fn verify_lattice(&self) -> VerificationReport {
        let poset = self.poset();
        let mut report = VerificationReport::new(format!("lattice NC({})", self.system.name()));
        for a in 0..self.len() {
            for b in 0..self.len() {
                let m = poset.meet(a, b);
                let j = poset.join(a, b);
                report.check(m == Some(self.meet_idx(a, b)) && j == Some(self.join_idx(a, b)), || {
                    format!("meet or join of {} and {} is wrong", self.format(a), self.format(b))
                });
            }
        }
        report
    }

    /// Lattice laws, purity of maximal chains, and the join identities used
    /// by the cancellation arguments, checked on every pair and triple.
    pub fn verify_lattice_lemmas(&self) -> VerificationReport {
        let n = self.len();
        let mut report = VerificationReport::new(format!("lattice identities NC({})", self.system.name()));
        let (m, j) = (|a, b| self.meet_idx(a, b), |a, b| self.join_idx(a, b));
        let f = |i: usize| self.format(i);
        for a in 0..n {
            report.check(m(a, a) == a && j(a, a) == a, || format!("{} is not idempotent", f(a)));
            report.check(j(a, 0) == a && m(a, self.top()) == a, || format!("{} breaks the bounds", f(a)));
            for b in 0..n {
                report.check(m(a, b) == m(b, a) && j(a, b) == j(b, a), || {
                    format!("{} and {} do not commute", f(a), f(b))
                });
                report.check(j(a, m(a, b)) == a && m(a, j(a, b)) == a, || {
                    format!("absorption fails for {} and {}", f(a), f(b))
                });
            }
        }
        for u in 0..n {
            for v in 0..n {
                for w in 0..n {
                    report.check(
                        j(j(u, v), w) == j(u, j(v, w)) && m(m(u, v), w) == m(u, m(v, w)),
                        || format!("associativity fails for {}, {}, {}", f(u), f(v), f(w)),
                    );
                    self.check_join_triple(&mut report, u, v, w);
                    self.check_distr_triple(&mut report, u, v, w);
                }
            }
        }
        for chain in self.maximal_chains() {
            report.check(chain.len() == self.rank() as usize + 1, || {
                format!("maximal chain of length {} is not pure", chain.len() - 1)
            });
        }
        report
    }

    fn check_join_triple(&self, report: &mut VerificationReport, u: usize, v: usize, w: usize) {
        let q = |x: usize, y: usize| self.ldiv(x, y).expect("quotient of comparable members");
        let (uv, vw, uw) = (self.join_idx(u, v), self.join_idx(v, w), self.join_idx(u, w));
        let top = self.join_idx(uv, w);
        let (a, b) = (q(u, uv), q(v, uv));
        let (c, d) = (q(v, vw), q(w, vw));
        let (e, f) = (q(u, uw), q(w, uw));
        let (g, h, i) = (q(uv, top), q(vw, top), q(uw, top));
        let ok = |x: usize, y: usize, z: usize, x2: usize, y2: usize| {
            let jn = self.join_idx(x, y);
            self.mul(x, z) == Some(jn) && self.mul(x2, y2) == Some(jn)
        };
        report.check(ok(a, e, g, e, i) && ok(b, c, g, c, h) && ok(d, f, h, f, i), || {
            format!(
                "join identities fail for {}, {}, {}",
                self.format(u),
                self.format(v),
                self.format(w)
            )
        });
    }

    fn check_distr_triple(&self, report: &mut VerificationReport, v: usize, b: usize, c: usize) {
        let (Some(vb), Some(vc)) = (self.mul(v, b), self.mul(v, c)) else {
            return;
        };
        let bc = self.join_idx(b, c);
        let g = self.ldiv(b, bc).expect("b below b join c");
        let expected = self.mul(vb, g);
        report.check(expected == Some(self.join_idx(vb, vc)), || {
            format!(
                "translated join fails for v={}, b={}, c={}",
                self.format(v),
                self.format(b),
                self.format(c)
            )
        });
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "system": self.system.name(),
            "gamma": self.gamma().to_string(),
            "members": (0..self.len()).map(|i| self.format(i)).collect::<Vec<_>>(),
            "covers": self.covers.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
            "rank": self.rank,
        })
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph NC {\n  rankdir=BT;\n  node [shape=plaintext];\n");
        for r in 0..=self.rank() {
            let ids: Vec<String> = (0..self.len())
                .filter(|&i| self.rank[i] == r)
                .map(|i| format!("n{i}"))
                .collect();
            let _ = writeln!(out, "  {{ rank=same; {}; }}", ids.join("; "));
        }
        for i in 0..self.len() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", self.format(i));
        }
        for &(a, b) in &self.covers {
            let _ = writeln!(out, "  n{a} -> n{b};");
        }
        out.push_str("}\n");
        out
    }
}

fn opt(x: u16) -> Option<usize> {
    (x != NONE).then_some(x as usize)
}

/// Conjugation `w ↦ v w v⁻¹` carrying `NC(W, γ₁)` onto `NC(W, γ₂)`.
#[derive(Clone, Debug)]
pub struct ConjugationIsomorphism {
    pub conjugator: GroupElement,
    /// Pairs `(w, v w v⁻¹)` in the member order of the source lattice.
    pub pairs: Vec<(GroupElement, GroupElement)>,
}

/// Finds `v` with `γ₂ = v γ₁ v⁻¹` by a scan over `W` and checks that
/// conjugation by `v` is an order isomorphism between the two lattices.
pub fn conjugation_isomorphism(
    system: &Arc<CoxeterSystem>,
    gamma1: &GroupElement,
    gamma2: &GroupElement,
) -> Result<ConjugationIsomorphism> {
    let source = build_nc(system.clone(), gamma1)?;
    let target = build_nc(system.clone(), gamma2)?;
    let sys = &**system;
    let (g1, g2) = (sys.require(gamma1)?, sys.require(gamma2)?);
    for v in 0..sys.order() {
        if sys.conj_idx(v, g1) != g2 {
            continue;
        }
        let image: Option<Vec<usize>> = (0..source.len())
            .map(|i| target.member_of_system_index(sys.conj_idx(v, source.system_index(i))))
            .collect();
        let Some(image) = image else { continue };
        let mut seen = vec![false; target.len()];
        let bijective = image.len() == target.len()
            && image.iter().all(|&j| !std::mem::replace(&mut seen[j], true));
        let monotone = (0..source.len()).all(|a| {
            (0..source.len()).all(|b| source.leq(a, b) == target.leq(image[a], image[b]))
        });
        if bijective && monotone {
            return Ok(ConjugationIsomorphism {
                conjugator: sys.element(v).clone(),
                pairs: (0..source.len())
                    .map(|i| (source.member(i).clone(), target.member(image[i]).clone()))
                    .collect(),
            });
        }
    }
    Err(Error::NotConjugate(gamma1.to_string(), gamma2.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{make_system, Family};

    fn lattice(family: Family, n: usize) -> NCLattice {
        NCLattice::standard(Arc::new(make_system(family, n).unwrap())).unwrap()
    }

    #[test]
    fn sizes() {
        assert_eq!(lattice(Family::A, 1).len(), 2);
        assert_eq!(lattice(Family::A, 2).len(), 5);
        assert_eq!(lattice(Family::A, 3).len(), 14);
        assert_eq!(lattice(Family::B, 2).len(), 6);
        assert_eq!(lattice(Family::I2, 5).len(), 7);
    }

    #[test]
    fn s3_meets_and_joins() {
        let lat = lattice(Family::A, 2);
        assert_eq!(lat.gamma().to_string(), "(1,2,3)");
        let sh = lat.system().shape();
        let p = |t| GroupElement::parse(sh, t).unwrap();
        assert_eq!(lat.join(&p("(1,2)"), &p("(2,3)")).unwrap(), p("(1,2,3)"));
        assert!(lat.meet(&p("(1,2)"), &p("(2,3)")).unwrap().is_identity());
        assert_eq!(lat.hasse_edges().len(), 6);
        assert_eq!(lat.maximal_chains().len(), 3);
        assert!(matches!(lat.meet(&p("(1,3,2)"), &p("e")), Err(Error::NotAMember(_))));
    }

    #[test]
    fn members_are_ordered_by_rank_then_text() {
        let lat = lattice(Family::A, 2);
        let text: Vec<String> = (0..lat.len()).map(|i| lat.format(i)).collect();
        assert_eq!(text, ["e", "(1,2)", "(1,3)", "(2,3)", "(1,2,3)"]);
    }

    #[test]
    fn product_tables() {
        let lat = lattice(Family::A, 2);
        let t = lat.parse_member("(1,2)").unwrap();
        let g = lat.top();
        let c = lat.left_complement(t);
        assert_eq!(lat.mul(t, c), Some(g));
        assert_eq!(lat.ldiv(t, g), Some(c));
        assert_eq!(lat.rdiv(c, g), Some(t));
        assert_eq!(lat.mul(t, t), None);
        assert_eq!(lat.twist_by(t, 3), t);
    }

    #[test]
    fn lattice_checks_pass() {
        for (f, n) in [(Family::A, 2), (Family::A, 3), (Family::B, 2), (Family::I2, 4)] {
            let lat = lattice(f, n);
            assert!(lat.verify_lattice().passed());
            let r = lat.verify_lattice_lemmas();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn full_group_is_not_a_lattice() {
        let sys = make_system(Family::A, 2).unwrap();
        let report = AbsolutePoset::new(&sys).to_finite_poset().verify_lattice();
        assert!(!report.passed());
        assert!(report
            .violations
            .iter()
            .any(|v| v.contains("(1,2,3)") && v.contains("(1,3,2)") && v.contains("join")));
    }

    #[test]
    fn order_lemmas_on_small_groups() {
        for (f, n) in [(Family::A, 3), (Family::B, 2), (Family::I2, 5)] {
            let sys = make_system(f, n).unwrap();
            let p = AbsolutePoset::new(&sys);
            assert!(p.check_axioms().passed());
            assert!(p.check_division_lemmas().passed());
        }
    }

    #[test]
    fn rejects_non_coxeter_elements() {
        let sys = Arc::new(make_system(Family::A, 2).unwrap());
        let t = sys.parse_element("(1,2)").unwrap();
        assert!(matches!(build_nc(sys, &t), Err(Error::NotCoxeterElement(_))));
    }

    #[test]
    fn conjugation_between_coxeter_elements() {
        let sys = Arc::new(make_system(Family::A, 2).unwrap());
        let g1 = sys.parse_element("(1,2,3)").unwrap();
        let g2 = sys.parse_element("(1,3,2)").unwrap();
        let iso = conjugation_isomorphism(&sys, &g1, &g2).unwrap();
        assert_eq!(iso.pairs.len(), 5);
        let same = conjugation_isomorphism(&sys, &g1, &g1).unwrap();
        assert!(same.conjugator.is_identity());
        assert!(same.pairs.iter().all(|(a, b)| a == b));
    }

    #[test]
    fn exports() {
        let lat = lattice(Family::A, 2);
        let j = lat.to_json();
        assert_eq!(j["system"], "A2");
        assert_eq!(j["members"].as_array().unwrap().len(), 5);
        assert_eq!(j["rank"], json!([0, 1, 1, 1, 2]));
        let dot = lat.to_dot();
        assert!(dot.contains("rankdir=BT"));
        assert_eq!(dot.matches("->").count(), 6);
    }
}
