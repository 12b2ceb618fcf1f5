//! Abstract simplicial complexes over opaque string labels.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use serde_json::json;

use crate::chain_algebra::{homology, HomologySummary, IntegerMatrix};
use crate::error::{Error, Result};
use crate::poset::FinitePoset;

/// A containment-closed set of faces, each a sorted list of vertex indices.
/// The empty face is always present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractComplex {
    vertices: Vec<String>,
    faces: BTreeSet<Vec<usize>>,
}

impl AbstractComplex {
    /// The complex `{∅}` on the given vertices; vertices are not faces yet.
    fn bare(vertices: Vec<String>) -> Self {
        AbstractComplex {
            vertices,
            faces: BTreeSet::from([Vec::new()]),
        }
    }

    fn insert_closed(&mut self, face: &[usize]) {
        let mut face = face.to_vec();
        face.sort_unstable();
        face.dedup();
        if self.faces.contains(&face) {
            return;
        }
        let k = face.len();
        for mask in 0u64..(1 << k) {
            let sub: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| face[i]).collect();
            self.faces.insert(sub);
        }
    }

    /// Trusts that `faces` is containment-closed and contains `∅`.
    pub(crate) fn from_closed_faces(vertices: Vec<String>, faces: BTreeSet<Vec<usize>>) -> Self {
        debug_assert!(faces.contains(&Vec::new()));
        AbstractComplex { vertices, faces }
    }

    /// Whether every subset of every face is a face.
    pub fn is_closed(&self) -> bool {
        self.faces.contains(&Vec::new())
            && self.faces.iter().all(|f| {
                (0..f.len()).all(|i| {
                    let mut g = f.clone();
                    g.remove(i);
                    self.faces.contains(&g)
                })
            })
    }

    /// Containment closure of the given faces, listed by vertex index.
    pub fn from_maximal_faces(vertices: Vec<String>, maximal: &[Vec<usize>]) -> Self {
        let mut c = Self::bare(vertices);
        for f in maximal {
            c.insert_closed(f);
        }
        c
    }

    /// Like [`from_maximal_faces`](Self::from_maximal_faces), naming faces by label.
    pub fn from_labeled_faces(vertices: Vec<String>, maximal: &[Vec<&str>]) -> Result<Self> {
        let mut c = Self::bare(vertices);
        for f in maximal {
            let idx = f.iter().map(|l| c.vertex_index(l)).collect::<Result<Vec<_>>>()?;
            c.insert_closed(&idx);
        }
        Ok(c)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, label: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == label)
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn faces(&self) -> &BTreeSet<Vec<usize>> {
        &self.faces
    }

    pub fn contains(&self, face: &[usize]) -> bool {
        let mut f = face.to_vec();
        f.sort_unstable();
        self.faces.contains(&f)
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    /// Faces ordered by size, then lexicographically by vertex index.
    pub fn sorted_faces(&self) -> Vec<&Vec<usize>> {
        let mut v: Vec<&Vec<usize>> = self.faces.iter().collect();
        v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        v
    }

    /// Faces as label lists, ordered as in [`sorted_faces`](Self::sorted_faces).
    pub fn labeled_faces(&self) -> Vec<Vec<&str>> {
        self.sorted_faces()
            .into_iter()
            .map(|f| f.iter().map(|&i| self.vertices[i].as_str()).collect())
            .collect()
    }

    pub fn maximal_faces(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self
            .faces
            .iter()
            .filter(|f| {
                !(0..self.vertices.len()).any(|v| {
                    if f.contains(&v) {
                        return false;
                    }
                    let mut g = (*f).clone();
                    g.push(v);
                    g.sort_unstable();
                    self.faces.contains(&g)
                })
            })
            .cloned()
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Dimension of the largest face; `-1` for `{∅}`.
    pub fn dimension(&self) -> isize {
        self.faces.iter().map(Vec::len).max().unwrap_or(0) as isize - 1
    }

    /// `f[k]` is the number of `k`-dimensional faces.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; (self.dimension() + 1) as usize];
        for face in &self.faces {
            if !face.is_empty() {
                f[face.len() - 1] += 1;
            }
        }
        f
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    /// Restricts to the given faces and drops unused vertices, keeping the
    /// relative vertex order.
    pub(crate) fn reindexed(&self, faces: BTreeSet<Vec<usize>>) -> Self {
        let used: BTreeSet<usize> = faces.iter().flatten().copied().collect();
        let mut map = vec![usize::MAX; self.vertices.len()];
        let mut vertices = Vec::new();
        for &v in &used {
            map[v] = vertices.len();
            vertices.push(self.vertices[v].clone());
        }
        let faces = faces
            .into_iter()
            .map(|f| f.into_iter().map(|v| map[v]).collect())
            .collect();
        AbstractComplex { vertices, faces }
    }

    /// Smallest subcomplex containing the given faces.
    pub fn closure(&self, faces: &[Vec<usize>]) -> Result<Self> {
        let mut out = BTreeSet::from([Vec::new()]);
        for f in faces {
            let mut f = f.clone();
            f.sort_unstable();
            if !self.faces.contains(&f) {
                return Err(Error::FaceNotInComplex(self.format_face(&f)));
            }
            for g in &self.faces {
                if g.iter().all(|v| f.binary_search(v).is_ok()) {
                    out.insert(g.clone());
                }
            }
        }
        Ok(self.reindexed(out))
    }

    /// Closure of the faces named by labels.
    pub fn closure_labeled(&self, faces: &[Vec<&str>]) -> Result<Self> {
        let idx = faces
            .iter()
            .map(|f| f.iter().map(|l| self.vertex_index(l)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        self.closure(&idx)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertices.len() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v.to_string()))
        }
    }

    /// Faces containing `v`, together with the same faces with `v` removed;
    /// this is the closure of the faces containing `v`.
    fn star_faces(&self, v: usize) -> BTreeSet<Vec<usize>> {
        let mut out = BTreeSet::from([Vec::new()]);
        for f in self.faces.iter().filter(|f| f.binary_search(&v).is_ok()) {
            out.insert(f.iter().copied().filter(|&x| x != v).collect());
            out.insert(f.clone());
        }
        out
    }

    /// Closure of the faces containing `v`.
    pub fn star(&self, v: usize) -> Result<Self> {
        self.check_vertex(v)?;
        Ok(self.reindexed(self.star_faces(v)))
    }

    /// Faces of the star of `v` not containing `v`.
    pub fn link(&self, v: usize) -> Result<Self> {
        self.check_vertex(v)?;
        let faces = self.star_faces(v).into_iter().filter(|f| !f.contains(&v)).collect();
        Ok(self.reindexed(faces))
    }

    /// Adds a new vertex `c` joined to every face.
    pub fn cone(&self, c: &str) -> Result<Self> {
        if self.vertices.iter().any(|v| v == c) {
            return Err(Error::DuplicateVertex(c.to_string()));
        }
        let n = self.vertices.len();
        let mut vertices = self.vertices.clone();
        vertices.push(c.to_string());
        let mut faces = self.faces.clone();
        for f in &self.faces {
            let mut g = f.clone();
            g.push(n);
            faces.insert(g);
        }
        Ok(AbstractComplex { vertices, faces })
    }

    /// Smallest vertex `v` with `F ∪ {v}` a face for every face `F`.
    pub fn is_cone(&self) -> Option<usize> {
        (0..self.vertices.len()).find(|&v| {
            self.faces.iter().all(|f| {
                if f.contains(&v) {
                    return true;
                }
                let mut g = f.clone();
                g.push(v);
                g.sort_unstable();
                self.faces.contains(&g)
            })
        })
    }

    /// Faces as label sets, for comparing complexes on different vertex
    /// orders.
    pub fn label_faces(&self) -> BTreeSet<BTreeSet<String>> {
        self.faces
            .iter()
            .map(|f| f.iter().map(|&v| self.vertices[v].clone()).collect())
            .collect()
    }

    pub fn same_faces(&self, other: &AbstractComplex) -> bool {
        self.label_faces() == other.label_faces()
    }

    fn format_face(&self, f: &[usize]) -> String {
        let labels: Vec<String> = f
            .iter()
            .map(|&v| self.vertices.get(v).cloned().unwrap_or_else(|| v.to_string()))
            .collect();
        format!("{{{}}}", labels.join(","))
    }

    /// Faces of each dimension `0..=dim`, sorted.
    pub fn faces_by_dimension(&self) -> Vec<Vec<&Vec<usize>>> {
        let mut out: Vec<Vec<&Vec<usize>>> = vec![Vec::new(); (self.dimension() + 1) as usize];
        for f in &self.faces {
            if !f.is_empty() {
                out[f.len() - 1].push(f);
            }
        }
        out
    }

    /// `[∂₁, …, ∂_d]` of the simplicial chain complex, faces ordered as in
    /// [`faces_by_dimension`](Self::faces_by_dimension). A complex with only
    /// vertices yields a single `n × 0` matrix.
    pub fn boundary_matrices(&self) -> Vec<IntegerMatrix> {
        let by_dim = self.faces_by_dimension();
        if by_dim.is_empty() {
            return vec![IntegerMatrix::zeros(0, 0)];
        }
        if by_dim.len() == 1 {
            return vec![IntegerMatrix::zeros(by_dim[0].len(), 0)];
        }
        (1..by_dim.len())
            .map(|k| {
                let lower = &by_dim[k - 1];
                let mut m = IntegerMatrix::zeros(lower.len(), by_dim[k].len());
                for (j, f) in by_dim[k].iter().enumerate() {
                    for i in 0..f.len() {
                        let mut g = (*f).clone();
                        g.remove(i);
                        let row = lower.binary_search(&&g).expect("face of a face");
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        m.set(row, j, BigInt::from(sign));
                    }
                }
                m
            })
            .collect()
    }

    pub fn homology(&self) -> HomologySummary {
        homology(&self.boundary_matrices()).expect("simplicial boundaries compose to zero")
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "vertices": self.vertices,
            "maximal_faces": self.maximal_faces(),
        })
    }

    /// Inverse of [`AbstractComplex::to_json`].
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        #[derive(serde::Deserialize)]
        struct Raw {
            vertices: Vec<String>,
            maximal_faces: Vec<Vec<usize>>,
        }
        let raw: Raw = serde_json::from_value(value.clone()).map_err(|e| Error::parse(0, e.to_string()))?;
        let n = raw.vertices.len();
        if let Some(&v) = raw.maximal_faces.iter().flatten().find(|&&v| v >= n) {
            return Err(Error::UnknownVertex(v.to_string()));
        }
        Ok(Self::from_maximal_faces(raw.vertices, &raw.maximal_faces))
    }

    /// Faces as label lists in canonical order.
    pub fn faces_json(&self) -> serde_json::Value {
        json!(self.labeled_faces())
    }

    /// The 1-skeleton as an undirected DOT graph.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph complex {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "  v{i} [label=\"{v}\"];");
        }
        for f in self.faces.iter().filter(|f| f.len() == 2) {
            let _ = writeln!(out, "  v{} -- v{};", f[0], f[1]);
        }
        out.push_str("}\n");
        out
    }
}

/// The complex of all chains of `p`.
pub fn order_complex(p: &FinitePoset) -> AbstractComplex {
    let mut faces = BTreeSet::new();
    for mut chain in p.chains() {
        chain.sort_unstable();
        faces.insert(chain);
    }
    AbstractComplex {
        vertices: p.labels().to_vec(),
        faces,
    }
}
