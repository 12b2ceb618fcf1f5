//! Truncations `X_m⁺` of the positive part of the complex on the dual
//! braid group, and the one-vertex quotient complex `K`.
//!
//! A vertex of `X_m⁺` is a monoid element whose left-weighted normal form
//! has at most `m` factors. A face is `{g, g⟨w₁⟩, …, g⟨w_k⟩}` for a chain
//! `I < w₁ < … < w_k` in the lattice with every vertex inside the
//! truncation. Vertices are indexed by (reflection length, text), so every
//! face lists its vertices in chain order.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use serde_json::json;

use crate::chain_algebra::{homology, HomologySummary, IntegerMatrix};
use crate::error::{Error, Result};
use crate::monoid::{DualMonoid, GroupForm, NormalForm};
use crate::nc_lattice::NCLattice;
use crate::report::VerificationReport;
use crate::simplicial::AbstractComplex;

/// Strictly increasing chains `w₁ < … < w_k` of non-identity members,
/// grouped by `k`. Entry 0 holds only the empty chain.
pub fn chains_above_identity(lat: &NCLattice) -> Vec<Vec<Vec<usize>>> {
    let mut by_len: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new()]];
    let mut current: Vec<Vec<usize>> = (1..lat.len()).map(|a| vec![a]).collect();
    while !current.is_empty() {
        let next = current
            .iter()
            .flat_map(|c| {
                let top = *c.last().unwrap();
                (1..lat.len()).filter(move |&b| lat.lt(top, b)).map(move |b| {
                    let mut d = c.clone();
                    d.push(b);
                    d
                })
            })
            .collect();
        by_len.push(std::mem::replace(&mut current, next));
    }
    by_len
}

#[derive(Debug)]
pub struct PositiveComplex {
    monoid: DualMonoid,
    m: usize,
    labels: Vec<NormalForm>,
    index: HashMap<NormalForm, usize>,
    complex: AbstractComplex,
}

/// Builds `X_m⁺`. Fails once the vertex count passes `budget`.
pub fn build_x_plus(monoid: &DualMonoid, m: usize, budget: usize) -> Result<PositiveComplex> {
    let lat = monoid.lattice();
    let mut seen: BTreeSet<NormalForm> = BTreeSet::from([NormalForm::default()]);
    let mut frontier = vec![NormalForm::default()];
    for _ in 0..m {
        let mut next = Vec::new();
        for p in &frontier {
            for s in monoid.simples() {
                let mut w = p.factors().to_vec();
                w.push(s);
                let q = monoid.left_normal_form(&w);
                if q.len() <= m && !seen.contains(&q) {
                    seen.insert(q.clone());
                    next.push(q);
                    if seen.len() > budget {
                        return Err(Error::BudgetExceeded(budget));
                    }
                }
            }
        }
        frontier = next;
    }

    let mut keyed: Vec<(u32, String, NormalForm)> = seen
        .into_iter()
        .map(|p| (monoid.length(p.factors()), monoid.format_word(p.factors()), p))
        .collect();
    keyed.sort();
    let names: Vec<String> = keyed.iter().map(|k| k.1.clone()).collect();
    let labels: Vec<NormalForm> = keyed.into_iter().map(|k| k.2).collect();
    let index: HashMap<NormalForm, usize> = labels.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();

    let chains = chains_above_identity(lat);
    let mut faces = BTreeSet::from([Vec::new()]);
    for (g, p) in labels.iter().enumerate() {
        let step: Vec<Option<usize>> = (0..lat.len())
            .map(|s| {
                if s == 0 {
                    return Some(g);
                }
                let mut w = p.factors().to_vec();
                w.push(s);
                index.get(&monoid.left_normal_form(&w)).copied()
            })
            .collect();
        faces.insert(vec![g]);
        for chain in chains.iter().flatten() {
            let face: Option<Vec<usize>> = std::iter::once(Some(g))
                .chain(chain.iter().map(|&w| step[w]))
                .collect();
            if let Some(face) = face {
                debug_assert!(face.windows(2).all(|p| p[0] < p[1]));
                faces.insert(face);
            }
        }
    }

    Ok(PositiveComplex {
        monoid: monoid.clone(),
        m,
        labels,
        index,
        complex: AbstractComplex::from_closed_faces(names, faces),
    })
}

impl PositiveComplex {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn monoid(&self) -> &DualMonoid {
        &self.monoid
    }

    pub fn complex(&self) -> &AbstractComplex {
        &self.complex
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn vertex(&self, v: usize) -> &NormalForm {
        &self.labels[v]
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.complex.vertices()[v]
    }

    pub fn index_of(&self, p: &NormalForm) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Reflection length of the label at `v`.
    pub fn length(&self, v: usize) -> u32 {
        self.monoid.length(self.labels[v].factors())
    }

    /// Number of normal-form factors of the label at `v`.
    pub fn canonical_length(&self, v: usize) -> usize {
        self.labels[v].len()
    }

    fn check(&self, v: usize) -> Result<()> {
        if v < self.labels.len() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v.to_string()))
        }
    }

    /// Faces with `v` as the top vertex, and the same faces minus `v`.
    fn descending_faces(&self, v: usize) -> (BTreeSet<Vec<usize>>, BTreeSet<Vec<usize>>) {
        let mut star = BTreeSet::from([Vec::new()]);
        let mut link = BTreeSet::from([Vec::new()]);
        for f in self.complex.faces() {
            if f.last() == Some(&v) {
                let g = f[..f.len() - 1].to_vec();
                star.insert(g.clone());
                star.insert(f.clone());
                link.insert(g);
            }
        }
        (star, link)
    }

    /// Faces with `v` as the bottom vertex, and the same faces minus `v`.
    fn ascending_faces(&self, v: usize) -> (BTreeSet<Vec<usize>>, BTreeSet<Vec<usize>>) {
        let mut star = BTreeSet::from([Vec::new()]);
        let mut link = BTreeSet::from([Vec::new()]);
        for f in self.complex.faces() {
            if f.first() == Some(&v) {
                let g = f[1..].to_vec();
                star.insert(g.clone());
                star.insert(f.clone());
                link.insert(g);
            }
        }
        (star, link)
    }

    pub fn descending_star(&self, v: usize) -> Result<AbstractComplex> {
        self.check(v)?;
        Ok(self.complex.reindexed(self.descending_faces(v).0))
    }

    pub fn descending_link(&self, v: usize) -> Result<AbstractComplex> {
        self.check(v)?;
        Ok(self.complex.reindexed(self.descending_faces(v).1))
    }

    pub fn ascending_star(&self, v: usize) -> Result<AbstractComplex> {
        self.check(v)?;
        Ok(self.complex.reindexed(self.ascending_faces(v).0))
    }

    pub fn ascending_link(&self, v: usize) -> Result<AbstractComplex> {
        self.check(v)?;
        Ok(self.complex.reindexed(self.ascending_faces(v).1))
    }

    /// The cone vertex predicted for the descending link of `v`: with
    /// `P = Qᵢ⟨xᵢ⟩` for the link vertices `Qᵢ`, it is `Q` with
    /// `P = Q⟨x₁ ∨ … ∨ x_k⟩`.
    pub fn predicted_cone_vertex(&self, v: usize) -> Result<Option<usize>> {
        self.check(v)?;
        let monoid = &self.monoid;
        let lat = monoid.lattice();
        let p = &self.labels[v];
        let (_, link) = self.descending_faces(v);
        let neighbours: BTreeSet<usize> = link.iter().flatten().copied().collect();
        let mut x = 0;
        for &q in &neighbours {
            let base = self.labels[q].factors();
            let xi = monoid.simples().find(|&s| {
                let mut w = base.to_vec();
                w.push(s);
                monoid.left_normal_form(&w) == *p
            });
            match xi {
                Some(xi) => x = lat.join_idx(x, xi),
                None => return Ok(None),
            }
        }
        if neighbours.is_empty() {
            return Ok(None);
        }
        let q = monoid.right_divide(p.factors(), x)?;
        Ok(self.index_of(&q))
    }

    /// Checks that the descending link of every vertex with `m` normal-form
    /// factors is a cone, and that the predicted vertex is a cone vertex.
    pub fn verify_descending_links(&self) -> VerificationReport {
        let mut report = VerificationReport::new(format!("descending links of X_{}^+", self.m));
        for v in 0..self.vertex_count() {
            if self.canonical_length(v) != self.m || self.m == 0 {
                continue;
            }
            let label = self.vertex_label(v).to_string();
            let link = self.descending_link(v).expect("vertex exists");
            let found = link.is_cone();
            report.check(found.is_some(), || format!("descending link of {label} is not a cone"));
            let predicted = self.predicted_cone_vertex(v).ok().flatten();
            let predicted_ok = predicted.is_some_and(|c| {
                link.vertex_index(self.vertex_label(c))
                    .is_ok_and(|i| is_cone_vertex(&link, i))
            });
            report.check(predicted_ok, || {
                format!("predicted cone vertex for {label} is not a cone vertex")
            });
            if let Some(c) = predicted {
                report.note(format!("{label}: cone vertex {}", self.vertex_label(c)));
            }
        }
        report
    }

    /// Translates the labels of a face by `g`, in canonical group form.
    pub fn act_labels(&self, g: &GroupForm, face: &[usize]) -> Result<Vec<GroupForm>> {
        face.iter()
            .map(|&v| {
                self.check(v)?;
                let mut w = g.positive.factors().to_vec();
                w.extend(self.labels[v].factors());
                Ok(self.monoid.canonical(&GroupForm {
                    gamma_power: g.gamma_power,
                    positive: self.monoid.left_normal_form(&w),
                }))
            })
            .collect()
    }

    /// Translates a face by `g` and locates it in `target`.
    pub fn act(&self, g: &GroupForm, face: &[usize], target: &PositiveComplex) -> Result<Vec<usize>> {
        let mut out = Vec::with_capacity(face.len());
        for h in self.act_labels(g, face)? {
            let text = self.monoid.format_group(&h);
            if h.gamma_power > 0 {
                return Err(Error::OutOfTruncation(text));
            }
            out.push(target.index_of(&h.positive).ok_or(Error::OutOfTruncation(text))?);
        }
        out.sort_unstable();
        if !target.complex.contains(&out) {
            return Err(Error::OutOfTruncation(format!("{out:?}")));
        }
        Ok(out)
    }

    pub fn homology(&self) -> HomologySummary {
        self.complex.homology()
    }
}

fn is_cone_vertex(c: &AbstractComplex, v: usize) -> bool {
    c.faces().iter().all(|f| {
        let mut g = f.clone();
        if let Err(pos) = g.binary_search(&v) {
            g.insert(pos, v);
        }
        c.faces().contains(&g)
    })
}

/// The quotient `K`: one `k`-cell per chain `I < w₁ < … < w_k`, with the
/// chain `(w₀, …, w_k)` identified with `(I, w₀⁻¹w₁, …, w₀⁻¹w_k)`.
#[derive(Debug)]
pub struct QuotientComplexK {
    lattice: Arc<NCLattice>,
    cells: Vec<Vec<Vec<usize>>>,
    boundaries: Vec<IntegerMatrix>,
}

pub fn build_k(lattice: &Arc<NCLattice>) -> QuotientComplexK {
    let lat = &**lattice;
    let cells = chains_above_identity(lat);
    let lookup: Vec<HashMap<&[usize], usize>> = cells
        .iter()
        .map(|cs| cs.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect())
        .collect();
    let mut boundaries = Vec::new();
    for k in 1..cells.len() {
        let mut m = IntegerMatrix::zeros(cells[k - 1].len(), cells[k].len());
        for (j, chain) in cells[k].iter().enumerate() {
            let w1 = chain[0];
            let shifted: Vec<usize> = chain[1..]
                .iter()
                .map(|&w| lat.ldiv(w1, w).expect("chain is increasing"))
                .collect();
            m.add_to(lookup[k - 1][shifted.as_slice()], j, &BigInt::from(1));
            for i in 0..k {
                let mut face = chain.clone();
                face.remove(i);
                let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
                m.add_to(lookup[k - 1][face.as_slice()], j, &BigInt::from(sign));
            }
        }
        boundaries.push(m);
    }
    QuotientComplexK {
        lattice: lattice.clone(),
        cells,
        boundaries,
    }
}

impl QuotientComplexK {
    pub fn cells(&self, dim: usize) -> &[Vec<usize>] {
        &self.cells[dim]
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cell_counts()
            .iter()
            .enumerate()
            .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    /// `[∂₁, …, ∂ₙ]`.
    pub fn boundaries(&self) -> &[IntegerMatrix] {
        &self.boundaries
    }

    pub fn verify_boundary_squares(&self) -> VerificationReport {
        let mut report = VerificationReport::new("boundary of boundary in K");
        for (k, pair) in self.boundaries.windows(2).enumerate() {
            let zero = pair[0].mul(&pair[1]).is_ok_and(|p| p.is_zero());
            report.check(zero, || format!("d{} d{} is nonzero", k + 1, k + 2));
        }
        report
    }

    pub fn homology(&self) -> Result<HomologySummary> {
        homology(&self.boundaries)
    }

    pub fn format_cell(&self, dim: usize, i: usize) -> String {
        let parts: Vec<String> = self.cells[dim][i].iter().map(|&w| self.lattice.format(w)).collect();
        format!("({})", parts.join(" < "))
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "cells": self.cell_counts(),
            "boundary": self.boundaries.iter().map(IntegerMatrix::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Faces of the order complex of the lattice, grouped by the cell of `K`
/// they are identified with. Only classes with at least two faces are
/// returned; in each class the face through `I` comes first.
pub fn identification_classes(lat: &NCLattice) -> Vec<Vec<Vec<usize>>> {
    let mut classes: BTreeMap<Vec<usize>, Vec<Vec<usize>>> = BTreeMap::new();
    let poset_chains = lat.poset().chains();
    for chain in poset_chains.into_iter().filter(|c| !c.is_empty()) {
        let w0 = chain[0];
        let rep: Vec<usize> = chain[1..].iter().map(|&w| lat.ldiv(w0, w).unwrap()).collect();
        classes.entry(rep).or_default().push(chain);
    }
    let mut out: Vec<Vec<Vec<usize>>> = classes
        .into_values()
        .filter(|c| c.len() > 1)
        .map(|mut c| {
            c.sort_by(|a, b| (a[0] != 0, a).cmp(&(b[0] != 0, b)));
            c
        })
        .collect();
    out.sort_by(|a, b| (a[0].len(), &a[0]).cmp(&(b[0].len(), &b[0])));
    out
}

/// Renders a class as `{I} ~ {(1,2)} ~ …`, writing the identity as `I`.
pub fn format_class(lat: &NCLattice, class: &[Vec<usize>]) -> String {
    let faces: Vec<String> = class
        .iter()
        .map(|f| {
            let parts: Vec<String> = f
                .iter()
                .map(|&w| if w == 0 { "I".to_string() } else { lat.format(w) })
                .collect();
            format!("{{{}}}", parts.join(", "))
        })
        .collect();
    faces.join(" ~ ")
}

/// The identifications worked out by hand for `S₃` with `γ = (1,2,3)`.
pub const S3_IDENTIFICATIONS: [&[&[&str]]; 4] = [
    &[&["I"], &["(1,2)"], &["(2,3)"], &["(1,3)"], &["(1,2,3)"]],
    &[&["I", "(1,2)"], &["(1,3)", "(1,2,3)"]],
    &[&["I", "(2,3)"], &["(1,2)", "(1,2,3)"]],
    &[&["I", "(1,3)"], &["(2,3)", "(1,2,3)"]],
];

/// Whether the identification classes of `lat` are exactly the four
/// hand-computed classes for `S₃`.
pub fn verify_example_identifications(lat: &NCLattice) -> bool {
    let as_sets = |classes: Vec<Vec<Vec<String>>>| -> BTreeSet<BTreeSet<BTreeSet<String>>> {
        classes
            .into_iter()
            .map(|c| c.into_iter().map(|f| f.into_iter().collect()).collect())
            .collect()
    };
    let ours = identification_classes(lat)
        .into_iter()
        .map(|c| {
            c.into_iter()
                .map(|f| {
                    f.into_iter()
                        .map(|w| if w == 0 { "I".to_string() } else { lat.format(w) })
                        .collect()
                })
                .collect()
        })
        .collect();
    let expected = S3_IDENTIFICATIONS
        .iter()
        .map(|c| c.iter().map(|f| f.iter().map(|s| s.to_string()).collect()).collect())
        .collect();
    as_sets(ours) == as_sets(expected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{make_system, Family};
    use crate::monoid::DEFAULT_BUDGET;
    use crate::nc_lattice::NCLattice;
    use crate::simplicial::order_complex;

    fn monoid(f: Family, n: usize) -> DualMonoid {
        let sys = Arc::new(make_system(f, n).unwrap());
        DualMonoid::new(Arc::new(NCLattice::standard(sys).unwrap()))
    }

    #[test]
    fn small_truncations_of_s3() {
        let m = monoid(Family::A, 2);
        let x0 = build_x_plus(&m, 0, DEFAULT_BUDGET).unwrap();
        assert_eq!(x0.complex().f_vector(), [1]);
        let x1 = build_x_plus(&m, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(x1.complex().f_vector(), [5, 7, 3]);
        assert!(x1.complex().is_closed());
        let delta = order_complex(&m.lattice().poset());
        assert_eq!(delta.f_vector(), [5, 7, 3]);
        assert!(x1.homology().is_point());
        let x2 = build_x_plus(&m, 2, DEFAULT_BUDGET).unwrap();
        assert!(x2.complex().is_closed());
        assert!(x2.homology().is_point());
        assert!(matches!(build_x_plus(&m, 3, 10), Err(Error::BudgetExceeded(10))));
    }

    #[test]
    fn descending_links_are_cones() {
        let m = monoid(Family::A, 2);
        for k in 1..=3 {
            let x = build_x_plus(&m, k, DEFAULT_BUDGET).unwrap();
            let r = x.verify_descending_links();
            assert!(r.passed(), "{r}");
        }
        let x2 = build_x_plus(&m, 2, DEFAULT_BUDGET).unwrap();
        let gamma = x2.index_of(&m.left_normal_form(&[m.gamma()])).unwrap();
        let link = x2.descending_link(gamma).unwrap();
        assert_eq!(link.is_cone(), Some(0));
        assert_eq!(link.vertices()[0], "e");
        assert_eq!(x2.descending_link(0).unwrap().num_faces(), 1);
    }

    #[test]
    fn action_by_gamma() {
        let m = monoid(Family::A, 2);
        let x1 = build_x_plus(&m, 1, DEFAULT_BUDGET).unwrap();
        let x2 = build_x_plus(&m, 2, DEFAULT_BUDGET).unwrap();
        let g = GroupForm {
            gamma_power: 0,
            positive: m.left_normal_form(&[m.gamma()]),
        };
        for f in x1.complex().faces().iter().filter(|f| !f.is_empty()) {
            let image = x1.act(&g, f, &x2).unwrap();
            assert_eq!(image.len(), f.len());
        }
        let inv = m.positive_lift(&m.parse_letters("(1,2)^-1").unwrap());
        let inv = m.canonical(&inv);
        assert!(matches!(x1.act(&inv, &[0], &x2), Err(Error::OutOfTruncation(_))));
        assert_eq!(x1.act(&GroupForm::default(), &[0, 1], &x1).unwrap(), [0, 1]);
    }

    #[test]
    fn quotient_of_s3() {
        let m = monoid(Family::A, 2);
        let k = build_k(m.lattice_arc());
        assert_eq!(k.cell_counts(), [1, 4, 3]);
        assert_eq!(k.euler_characteristic(), 0);
        assert!(k.boundaries()[0].is_zero());
        assert!(k.verify_boundary_squares().passed());
        assert_eq!(k.homology().unwrap().to_string(), "H0=Z H1=Z H2=0");
        assert!(verify_example_identifications(m.lattice()));
        let classes = identification_classes(m.lattice());
        assert_eq!(
            format_class(m.lattice(), &classes[1]),
            "{I, (1,2)} ~ {(1,3), (1,2,3)}"
        );
    }

    #[test]
    fn quotient_of_s4() {
        let m = monoid(Family::A, 3);
        let k = build_k(m.lattice_arc());
        assert_eq!(k.cell_counts(), [1, 13, 28, 16]);
        assert_eq!(k.euler_characteristic(), 0);
        let h = k.homology().unwrap();
        assert_eq!(h.betti()[..2], [1, 1]);
        assert!(!verify_example_identifications(m.lattice()));
    }
}
