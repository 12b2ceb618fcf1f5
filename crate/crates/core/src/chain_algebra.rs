//! Exact integer linear algebra: Smith normal form and homology of finite
//! chain complexes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::json;

use crate::error::{Error, Result};

/// Sparse integer matrix; each row maps column index to a nonzero entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, BigInt>>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![BTreeMap::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds from dense rows; every row must have `cols` entries.
    pub fn from_dense<T: Into<BigInt> + Clone>(rows: usize, cols: usize, entries: &[Vec<T>]) -> Self {
        assert_eq!(entries.len(), rows, "row count");
        let mut m = Self::zeros(rows, cols);
        for (i, row) in entries.iter().enumerate() {
            assert_eq!(row.len(), cols, "column count in row {i}");
            for (j, x) in row.iter().enumerate() {
                m.set(i, j, x.clone().into());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.data[i].get(&j).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        if x.is_zero() {
            self.data[i].remove(&j);
        } else {
            self.data[i].insert(j, x);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, x: &BigInt) {
        let v = self.get(i, j) + x;
        self.set(i, j, v);
    }

    pub fn nonzeros(&self) -> usize {
        self.data.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BTreeMap::is_empty)
    }

    pub fn row_entries(&self, i: usize) -> impl Iterator<Item = (usize, &BigInt)> {
        self.data[i].iter().map(|(&j, x)| (j, x))
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!(self
            .to_dense()
            .iter()
            .map(|row| row.iter().map(big_json).collect::<Vec<_>>())
            .collect::<Vec<_>>())
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != other.rows {
            return Err(Error::NotAChainComplex(format!(
                "cannot compose {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntegerMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (&k, a) in &self.data[i] {
                for (&j, b) in &other.data[k] {
                    *acc.entry(j).or_default() += a * b;
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.data[i] = acc;
        }
        Ok(out)
    }

    pub fn transpose(&self) -> IntegerMatrix {
        let mut out = IntegerMatrix::zeros(self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for (&j, x) in row {
                out.data[j].insert(i, x.clone());
            }
        }
        out
    }
}

fn big_json(x: &BigInt) -> serde_json::Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

/// Invariant factors `d₁ | d₂ | … | d_r` of `m`, all positive; `r` is the
/// rank.
pub fn smith_normal_form(m: &IntegerMatrix) -> Vec<BigInt> {
    let (units, rest) = eliminate_units(m);
    let mut factors = vec![BigInt::one(); units];
    factors.extend(dense_smith(rest));
    factors
}

/// Repeatedly pivots on entries equal to ±1, each pivot contributing an
/// invariant factor 1 and removing one row and one column. Returns the
/// number of pivots and the remaining dense block.
fn eliminate_units(m: &IntegerMatrix) -> (usize, Vec<Vec<BigInt>>) {
    let mut rows: Vec<Option<BTreeMap<usize, BigInt>>> = m.data.iter().cloned().map(Some).collect();
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols];
    for (i, row) in m.data.iter().enumerate() {
        for &j in row.keys() {
            col_rows[j].insert(i);
        }
    }
    let mut units = 0;
    loop {
        let mut best: Option<(usize, usize, usize, usize)> = None;
        for (i, row) in rows.iter().enumerate() {
            let Some(row) = row else { continue };
            for (&j, x) in row {
                if x.abs().is_one() {
                    let key = (col_rows[j].len(), row.len(), i, j);
                    if best.is_none_or(|b| key < b) {
                        best = Some(key);
                    }
                }
            }
        }
        let Some((_, _, r, c)) = best else { break };
        let pivot_row = rows[r].take().unwrap();
        let u = pivot_row[&c].clone();
        for &j in pivot_row.keys() {
            col_rows[j].remove(&r);
        }
        let others: Vec<usize> = col_rows[c].iter().copied().collect();
        for i in others {
            let row = rows[i].as_mut().unwrap();
            let factor = &row[&c] * &u;
            for (&j, x) in &pivot_row {
                let v = row.remove(&j).unwrap_or_default() - &factor * x;
                if v.is_zero() {
                    col_rows[j].remove(&i);
                } else {
                    row.insert(j, v);
                    col_rows[j].insert(i);
                }
            }
        }
        debug_assert!(col_rows[c].is_empty());
        units += 1;
    }
    let live_cols: Vec<usize> = (0..m.cols).filter(|&j| !col_rows[j].is_empty()).collect();
    let dense = rows
        .into_iter()
        .flatten()
        .filter(|r| !r.is_empty())
        .map(|r| live_cols.iter().map(|j| r.get(j).cloned().unwrap_or_default()).collect())
        .collect();
    (units, dense)
}

/// Dense Smith normal form with minimal-absolute-value pivoting.
fn dense_smith(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_entry(&a, t, t) else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let v = &q * &a[t][j];
                    a[i][j] -= v;
                }
                dirty |= !a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for i in t..rows {
                    let v = &q * &a[i][t];
                    a[i][j] -= v;
                }
                dirty |= !a[t][j].is_zero();
            }
            if dirty {
                let (pi, pj) = min_in_cross(&a, t);
                a.swap(t, pi);
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                continue;
            }
            let p = a[t][t].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &p).is_zero()));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

fn min_entry(a: &[Vec<BigInt>], r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(r0) {
        for (j, x) in row.iter().enumerate().skip(c0) {
            if !x.is_zero() && best.as_ref().is_none_or(|b| x.abs() < b.0) {
                best = Some((x.abs(), i, j));
            }
        }
    }
    best.map(|b| (b.1, b.2))
}

/// Smallest nonzero entry in row `t` or column `t` at or beyond `(t, t)`.
fn min_in_cross(a: &[Vec<BigInt>], t: usize) -> (usize, usize) {
    let mut best = (a[t][t].abs(), t, t);
    for (i, row) in a.iter().enumerate().skip(t) {
        let x = &row[t];
        if !x.is_zero() && (best.0.is_zero() || x.abs() < best.0) {
            best = (x.abs(), i, t);
        }
    }
    for (j, x) in a[t].iter().enumerate().skip(t) {
        if !x.is_zero() && (best.0.is_zero() || x.abs() < best.0) {
            best = (x.abs(), t, j);
        }
    }
    (best.1, best.2)
}

/// One homology group `ℤ^betti ⊕ ⨁ ℤ/dᵢ`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

/// Integral homology in degrees `0..=n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomologySummary {
    pub groups: Vec<HomologyGroup>,
}

impl HomologySummary {
    pub fn betti(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.betti).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.groups
            .iter()
            .enumerate()
            .map(|(k, g)| if k % 2 == 0 { g.betti as i64 } else { -(g.betti as i64) })
            .sum()
    }

    /// Homology of a point: `H₀ = ℤ` and nothing else.
    pub fn is_point(&self) -> bool {
        self.groups.first().is_some_and(|g| g.betti == 1 && g.torsion.is_empty())
            && self.groups.iter().skip(1).all(HomologyGroup::is_trivial)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "H": self.groups.iter().map(|g| json!({
                "betti": g.betti,
                "torsion": g.torsion.iter().map(big_json).collect::<Vec<_>>(),
            })).collect::<Vec<_>>()
        })
    }
}

impl fmt::Display for HomologySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .groups
            .iter()
            .enumerate()
            .map(|(k, g)| format!("H{k}={g}"))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Homology of `C_n → … → C_1 → C_0` from `[∂₁, …, ∂ₙ]`, where `∂ₖ` has
/// `dim C_{k-1}` rows and `dim C_k` columns. Degrees above the last
/// nonzero chain group are omitted.
pub fn homology(boundaries: &[IntegerMatrix]) -> Result<HomologySummary> {
    for (k, pair) in boundaries.windows(2).enumerate() {
        let product = pair[0].mul(&pair[1])?;
        if !product.is_zero() {
            return Err(Error::NotAChainComplex(format!(
                "boundary {} composed with boundary {} is nonzero",
                k + 1,
                k + 2
            )));
        }
    }
    let Some(first) = boundaries.first() else {
        return Ok(HomologySummary::default());
    };
    let dims: Vec<usize> = std::iter::once(first.rows())
        .chain(boundaries.iter().map(IntegerMatrix::cols))
        .collect();
    let factors: Vec<Vec<BigInt>> = boundaries.iter().map(smith_normal_form).collect();
    let rank = |k: usize| -> usize {
        if k == 0 || k > factors.len() {
            0
        } else {
            factors[k - 1].len()
        }
    };
    let top = dims.iter().rposition(|&d| d > 0).unwrap_or(0);
    let groups = (0..=top)
        .map(|k| HomologyGroup {
            betti: dims[k] - rank(k) - rank(k + 1),
            torsion: if k < factors.len() {
                factors[k].iter().filter(|d| !d.is_one()).cloned().collect()
            } else {
                Vec::new()
            },
        })
        .collect();
    Ok(HomologySummary { groups })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, cols: usize, e: &[Vec<i64>]) -> IntegerMatrix {
        IntegerMatrix::from_dense(rows, cols, e)
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn smith_examples() {
        assert_eq!(smith_normal_form(&IntegerMatrix::identity(3)), ints(&[1, 1, 1]));
        assert_eq!(smith_normal_form(&m(2, 2, &[vec![2, 0], vec![0, 3]])), ints(&[1, 6]));
        assert!(smith_normal_form(&IntegerMatrix::zeros(3, 2)).is_empty());
        assert_eq!(
            smith_normal_form(&m(2, 2, &[vec![2, 4], vec![6, 8]])),
            ints(&[2, 4])
        );
        assert_eq!(
            smith_normal_form(&m(3, 3, &[vec![2, 0, 0], vec![0, 4, 0], vec![0, 0, 6]])),
            ints(&[2, 2, 12])
        );
    }

    #[test]
    fn homology_of_small_complexes() {
        let point = homology(&[IntegerMatrix::zeros(1, 0)]).unwrap();
        assert!(point.is_point());
        assert_eq!(point.to_string(), "H0=Z");
        // circle: two vertices, two edges
        let d1 = m(2, 2, &[vec![-1, -1], vec![1, 1]]);
        let circle = homology(&[d1]).unwrap();
        assert_eq!(circle.betti(), [1, 1]);
        // projective-plane style torsion: one vertex, one edge, one 2-cell glued twice
        let rp = homology(&[IntegerMatrix::zeros(1, 1), m(1, 1, &[vec![2]])]).unwrap();
        assert_eq!(rp.to_string(), "H0=Z H1=Z/2 H2=0");
        assert_eq!(
            rp.to_json(),
            json!({"H":[{"betti":1,"torsion":[]},{"betti":0,"torsion":[2]},{"betti":0,"torsion":[]}]})
        );
        assert_eq!(homology(&[IntegerMatrix::zeros(0, 0)]).unwrap().to_string(), "H0=0");
    }

    #[test]
    fn rejects_non_complexes() {
        let d1 = m(1, 1, &[vec![1]]);
        let d2 = m(1, 1, &[vec![1]]);
        assert!(matches!(homology(&[d1.clone(), d2]), Err(Error::NotAChainComplex(_))));
        assert!(matches!(homology(&[d1, IntegerMatrix::zeros(2, 1)]), Err(Error::NotAChainComplex(_))));
    }

    #[test]
    fn product_and_transpose() {
        let a = m(2, 3, &[vec![1, 2, 0], vec![0, 1, -1]]);
        let b = a.transpose();
        let p = a.mul(&b).unwrap();
        assert_eq!(p.to_dense(), vec![ints(&[5, 2]), ints(&[2, 2])]);
        assert_eq!(a.nonzeros(), 4);
    }
}
