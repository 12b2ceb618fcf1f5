//! Finite posets given by an explicit order relation.

use crate::report::VerificationReport;

#[derive(Clone, Debug)]
pub struct FinitePoset {
    labels: Vec<String>,
    /// `leq[a * n + b]` is `a ≤ b`.
    leq: Vec<bool>,
}

impl FinitePoset {
    /// Builds a poset from a relation that is already a partial order.
    pub fn from_relation(labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Self {
        let n = labels.len();
        let leq = (0..n * n).map(|k| leq(k / n, k % n)).collect();
        FinitePoset { labels, leq }
    }

    /// Builds a poset from generating pairs `(a, b)` meaning `a ≤ b`, taking
    /// the reflexive-transitive closure.
    pub fn from_pairs(labels: Vec<String>, pairs: &[(usize, usize)]) -> Self {
        let n = labels.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(a, b) in pairs {
            leq[a * n + b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        FinitePoset { labels, leq }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    /// Cover relations `a ⋖ b`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) && !(0..n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Greatest lower bound, if one exists.
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.len())
            .filter(|&r| self.leq(r, a) && self.leq(r, b))
            .collect();
        lower
            .iter()
            .copied()
            .find(|&l| lower.iter().all(|&r| self.leq(r, l)))
    }

    /// Least upper bound, if one exists.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let upper: Vec<usize> = (0..self.len())
            .filter(|&r| self.leq(a, r) && self.leq(b, r))
            .collect();
        upper
            .iter()
            .copied()
            .find(|&u| upper.iter().all(|&r| self.leq(u, r)))
    }

    /// Reflexivity, antisymmetry and transitivity, checked exhaustively.
    pub fn check_axioms(&self) -> VerificationReport {
        let n = self.len();
        let mut report = VerificationReport::new("poset axioms");
        for a in 0..n {
            report.check(self.leq(a, a), || format!("{} is not reflexive", self.labels[a]));
            for b in 0..n {
                if a != b {
                    report.check(!(self.leq(a, b) && self.leq(b, a)), || {
                        format!("antisymmetry fails for {} and {}", self.labels[a], self.labels[b])
                    });
                }
                if !self.leq(a, b) {
                    continue;
                }
                for c in 0..n {
                    if self.leq(b, c) {
                        report.check(self.leq(a, c), || {
                            format!(
                                "transitivity fails for {} <= {} <= {}",
                                self.labels[a], self.labels[b], self.labels[c]
                            )
                        });
                    }
                }
            }
        }
        report
    }

    /// Checks that every ordered pair has a meet and a join.
    pub fn verify_lattice(&self) -> VerificationReport {
        let mut report = VerificationReport::new("lattice");
        for a in 0..self.len() {
            for b in 0..self.len() {
                let (x, y) = (&self.labels[a], &self.labels[b]);
                report.check(self.meet(a, b).is_some(), || format!("no meet for {x} and {y}"));
                report.check(self.join(a, b).is_some(), || format!("no join for {x} and {y}"));
            }
        }
        report
    }

    /// All maximal chains, listed bottom to top.
    pub fn maximal_chains(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let covers = self.covers();
        let mut up: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b) in &covers {
            up[a].push(b);
        }
        let minimal = (0..n).filter(|&a| !(0..n).any(|b| self.lt(b, a)));
        let mut out = Vec::new();
        let mut stack: Vec<Vec<usize>> = minimal.map(|a| vec![a]).collect();
        stack.reverse();
        while let Some(chain) = stack.pop() {
            let top = *chain.last().unwrap();
            if up[top].is_empty() {
                out.push(chain);
                continue;
            }
            for &b in up[top].iter().rev() {
                let mut next = chain.clone();
                next.push(b);
                stack.push(next);
            }
        }
        out
    }

    /// Every chain `p₀ < p₁ < … < p_k`, the empty chain included, listed
    /// bottom to top.
    pub fn chains(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut out = vec![Vec::new()];
        let mut i = 0;
        while i < out.len() {
            let chain = out[i].clone();
            let candidates: Vec<usize> = match chain.last() {
                None => (0..n).collect(),
                Some(&top) => (0..n).filter(|&b| self.lt(top, b)).collect(),
            };
            for b in candidates {
                let mut next = chain.clone();
                next.push(b);
                out.push(next);
            }
            i += 1;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The four-element poset with 2 ≤ 1, 2 ≤ 3, 2 ≤ 4, 1 ≤ 3.
    fn small() -> FinitePoset {
        let labels = ["1", "2", "3", "4"].map(String::from).to_vec();
        FinitePoset::from_pairs(labels, &[(1, 0), (1, 2), (1, 3), (0, 2)])
    }

    #[test]
    fn covers_of_small_poset() {
        let p = small();
        let covers: Vec<(&str, &str)> = p
            .covers()
            .into_iter()
            .map(|(a, b)| (p.label(a), p.label(b)))
            .collect();
        assert_eq!(covers, [("1", "3"), ("2", "1"), ("2", "4")]);
        assert!(p.check_axioms().passed());
    }

    #[test]
    fn meets_and_joins() {
        let p = small();
        assert_eq!(p.meet(0, 3), Some(1));
        assert_eq!(p.join(0, 1), Some(0));
        assert_eq!(p.join(2, 3), None);
        let report = p.verify_lattice();
        assert!(!report.passed());
    }

    #[test]
    fn chains_of_small_poset() {
        let p = small();
        assert_eq!(p.maximal_chains(), vec![vec![1, 0, 2], vec![1, 3]]);
        // ∅, 4 singletons, {2,1}, {2,3}, {2,4}, {1,3}, {2,1,3}
        assert_eq!(p.chains().len(), 10);
    }

    #[test]
    fn antichain() {
        let p = FinitePoset::from_pairs(vec!["a".into(), "b".into()], &[]);
        assert!(p.covers().is_empty());
        assert_eq!(p.maximal_chains().len(), 2);
        assert_eq!(p.meet(0, 1), None);
    }
}
