//! Finite Coxeter systems of types A, B, D and I₂(m), fully enumerated.
//!
//! Elements are indexed in breadth-first order from the identity over the
//! simple reflections, each layer sorted by canonical text, so index `0` is
//! always the identity. Reflection length is the breadth-first distance from
//! the identity in the Cayley graph generated by all reflections.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::element::{ElementShape, GroupElement};
use crate::error::{Error, Result};

/// Largest group we are willing to enumerate.
pub const MAX_ORDER: usize = 60_000;

/// Products are tabulated up to this order.
const TABLE_ORDER: usize = 2_048;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
    D,
    I2,
}

/// A system descriptor such as `A3`, `B2`, `D4` or `I2(7)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SystemDescriptor {
    pub family: Family,
    /// The rank for A, B, D; the label m for I₂(m).
    pub param: usize,
}

impl fmt::Display for SystemDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::A => write!(f, "A{}", self.param),
            Family::B => write!(f, "B{}", self.param),
            Family::D => write!(f, "D{}", self.param),
            Family::I2 => write!(f, "I2({})", self.param),
        }
    }
}

impl FromStr for SystemDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let number = |digits: &str, at: usize| -> Result<usize> {
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::parse(at, "expected a positive integer"));
            }
            digits
                .parse()
                .map_err(|_| Error::parse(at, "integer out of range"))
        };
        let (family, param) = if let Some(rest) = s.strip_prefix("I2(") {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| Error::parse(s.len(), "expected ')'"))?;
            (Family::I2, number(inner, 3)?)
        } else {
            let family = match s.chars().next() {
                Some('A') => Family::A,
                Some('B') => Family::B,
                Some('D') => Family::D,
                _ => return Err(Error::parse(0, "expected A, B, D or I2(")),
            };
            (family, number(&s[1..], 1)?)
        };
        Ok(SystemDescriptor { family, param })
    }
}

impl SystemDescriptor {
    fn shape(&self) -> ElementShape {
        match self.family {
            Family::A => ElementShape::Perm(self.param + 1),
            Family::B | Family::D => ElementShape::Signed(self.param),
            Family::I2 => ElementShape::Dihedral(self.param as u32),
        }
    }

    /// Classical group order, or `None` on overflow.
    pub fn expected_order(&self) -> Option<usize> {
        let factorial = |n: usize| (1..=n).try_fold(1usize, |acc, k| acc.checked_mul(k));
        let n = self.param;
        match self.family {
            Family::A => factorial(n + 1),
            Family::B => factorial(n)?.checked_mul(1usize.checked_shl(n as u32)?),
            Family::D => factorial(n)?.checked_mul(1usize.checked_shl(n as u32 - 1)?),
            Family::I2 => n.checked_mul(2),
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match self.family {
            Family::A | Family::B => self.param >= 1,
            Family::D => self.param >= 2,
            Family::I2 => self.param >= 3,
        };
        if !ok {
            return Err(Error::UnsupportedType(format!("{self}: parameter out of range")));
        }
        match self.expected_order() {
            Some(order) if order <= MAX_ORDER => Ok(()),
            _ => Err(Error::UnsupportedType(format!(
                "{self}: group order exceeds {MAX_ORDER}"
            ))),
        }
    }

    fn simple_reflections(&self) -> Vec<GroupElement> {
        let n = self.param;
        match self.family {
            Family::A => (0..n)
                .map(|i| {
                    let mut p: Vec<u8> = (0..=n as u8).collect();
                    p.swap(i, i + 1);
                    GroupElement::Perm(p.into())
                })
                .collect(),
            Family::B | Family::D => {
                let identity: Vec<i8> = (1..=n as i8).collect();
                let mut gens = Vec::with_capacity(n);
                let mut first = identity.clone();
                if self.family == Family::B {
                    // 1 ↦ −1
                    first[0] = -1;
                } else {
                    // 1 ↦ −2, 2 ↦ −1
                    first[0] = -2;
                    first[1] = -1;
                }
                gens.push(GroupElement::Signed(first.into()));
                for i in 0..n - 1 {
                    let mut w = identity.clone();
                    w.swap(i, i + 1);
                    gens.push(GroupElement::Signed(w.into()));
                }
                gens
            }
            Family::I2 => [0, 1]
                .into_iter()
                .map(|k| GroupElement::Dihedral {
                    m: n as u32,
                    reflection: true,
                    k,
                })
                .collect(),
        }
    }
}

/// A finite Coxeter system with every element, the reflection set and the
/// reflection-length table precomputed. Immutable once built.
#[derive(Debug)]
pub struct CoxeterSystem {
    descriptor: SystemDescriptor,
    shape: ElementShape,
    generators: Vec<usize>,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
    reflections: Vec<usize>,
    is_reflection: Vec<bool>,
    length: Vec<u32>,
    inverse: Vec<usize>,
    table: Option<Vec<u16>>,
}

/// Builds a fully enumerated Coxeter system.
pub fn make_system(family: Family, rank_or_m: usize) -> Result<CoxeterSystem> {
    CoxeterSystem::new(SystemDescriptor {
        family,
        param: rank_or_m,
    })
}

impl CoxeterSystem {
    pub fn new(descriptor: SystemDescriptor) -> Result<Self> {
        descriptor.validate()?;
        let shape = descriptor.shape();
        let gens = descriptor.simple_reflections();

        let mut elements = vec![shape.identity()];
        let mut index = HashMap::new();
        index.insert(shape.identity(), 0);
        let mut frontier = vec![0usize];
        while !frontier.is_empty() {
            let mut layer: Vec<(String, GroupElement)> = Vec::new();
            for &i in &frontier {
                for s in &gens {
                    let x = elements[i].mul(s);
                    if !index.contains_key(&x) {
                        index.insert(x.clone(), usize::MAX);
                        layer.push((x.to_string(), x));
                    }
                }
            }
            layer.sort();
            frontier.clear();
            for (_, x) in layer {
                let i = elements.len();
                index.insert(x.clone(), i);
                elements.push(x);
                frontier.push(i);
            }
        }
        debug_assert_eq!(Some(elements.len()), descriptor.expected_order());

        let generators: Vec<usize> = gens.iter().map(|s| index[s]).collect();
        let inverse: Vec<usize> = elements.iter().map(|x| index[&x.inverse()]).collect();

        let table = (elements.len() <= TABLE_ORDER).then(|| {
            let n = elements.len();
            let mut t = Vec::with_capacity(n * n);
            for a in &elements {
                for b in &elements {
                    t.push(index[&a.mul(b)] as u16);
                }
            }
            t
        });

        let mut is_reflection = vec![false; elements.len()];
        for w in &elements {
            for s in &gens {
                is_reflection[index[&s.conjugate_by(w)]] = true;
            }
        }
        let reflections: Vec<usize> = (0..elements.len()).filter(|&i| is_reflection[i]).collect();

        let mut length = vec![u32::MAX; elements.len()];
        length[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for &t in &reflections {
                let j = index[&elements[i].mul(&elements[t])];
                if length[j] == u32::MAX {
                    length[j] = length[i] + 1;
                    queue.push_back(j);
                }
            }
        }

        Ok(CoxeterSystem {
            descriptor,
            shape,
            generators,
            elements,
            index,
            reflections,
            is_reflection,
            length,
            inverse,
            table,
        })
    }

    pub fn descriptor(&self) -> SystemDescriptor {
        self.descriptor
    }

    pub fn family(&self) -> Family {
        self.descriptor.family
    }

    pub fn name(&self) -> String {
        self.descriptor.to_string()
    }

    pub fn shape(&self) -> ElementShape {
        self.shape
    }

    /// Number of simple reflections.
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn index_of(&self, w: &GroupElement) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Index of `w`, or [`Error::NotInSystem`].
    pub fn require(&self, w: &GroupElement) -> Result<usize> {
        self.index_of(w).ok_or_else(|| Error::NotInSystem {
            element: w.to_string(),
            system: self.name(),
        })
    }

    pub fn identity(&self) -> &GroupElement {
        &self.elements[0]
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    pub fn generators(&self) -> Vec<&GroupElement> {
        self.generators.iter().map(|&i| &self.elements[i]).collect()
    }

    pub fn reflection_indices(&self) -> &[usize] {
        &self.reflections
    }

    /// The reflection set T, the conjugacy closure of the generators.
    pub fn reflections(&self) -> Vec<&GroupElement> {
        self.reflections.iter().map(|&i| &self.elements[i]).collect()
    }

    pub fn is_reflection(&self, i: usize) -> bool {
        self.is_reflection[i]
    }

    pub fn mul_idx(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.elements.len() + b] as usize,
            None => self.index[&self.elements[a].mul(&self.elements[b])],
        }
    }

    pub fn inv_idx(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `a⁻¹ · b`
    pub fn ldiv_idx(&self, a: usize, b: usize) -> usize {
        self.mul_idx(self.inverse[a], b)
    }

    /// `u · w · u⁻¹`
    pub fn conj_idx(&self, u: usize, w: usize) -> usize {
        self.mul_idx(self.mul_idx(u, w), self.inverse[u])
    }

    pub fn length_idx(&self, i: usize) -> u32 {
        self.length[i]
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        let product = a.try_mul(b)?;
        self.require(a)?;
        self.require(b)?;
        Ok(product)
    }

    pub fn inverse(&self, a: &GroupElement) -> Result<GroupElement> {
        Ok(self.elements[self.inverse[self.require(a)?]].clone())
    }

    /// `u · w · u⁻¹`
    pub fn conjugate(&self, u: &GroupElement, w: &GroupElement) -> Result<GroupElement> {
        Ok(self.elements[self.conj_idx(self.require(u)?, self.require(w)?)].clone())
    }

    /// Reflection length ℓ(w).
    pub fn reflection_length(&self, w: &GroupElement) -> Result<u32> {
        Ok(self.length[self.require(w)?])
    }

    /// The standard Coxeter element `s₁ · s₂ ⋯ sₙ`.
    pub fn coxeter_element(&self) -> GroupElement {
        self.elements[self.coxeter_index()].clone()
    }

    pub fn coxeter_index(&self) -> usize {
        self.generators
            .iter()
            .fold(0, |acc, &s| self.mul_idx(acc, s))
    }

    /// Whether `w` is conjugate to `s₁ ⋯ sₙ`.
    pub fn is_coxeter_element(&self, w: usize) -> bool {
        let c = self.coxeter_index();
        self.length[w] as usize == self.rank()
            && (0..self.order()).any(|u| self.conj_idx(u, c) == w)
    }

    /// Coxeter matrix entries `m(i, j)`, the order of `sᵢ sⱼ`.
    pub fn coxeter_matrix(&self) -> Vec<Vec<usize>> {
        let gens = self.generators();
        gens.iter()
            .map(|a| gens.iter().map(|b| a.mul(b).order()).collect())
            .collect()
    }

    /// Number of elements of each reflection length.
    pub fn length_histogram(&self) -> Vec<usize> {
        let max = self.length.iter().copied().max().unwrap_or(0) as usize;
        let mut hist = vec![0; max + 1];
        for &l in &self.length {
            hist[l as usize] += 1;
        }
        hist
    }

    pub fn parse_element(&self, text: &str) -> Result<GroupElement> {
        let w = GroupElement::parse(self.shape, text)?;
        self.require(&w)?;
        Ok(w)
    }

    pub fn format_element(&self, w: &GroupElement) -> String {
        w.to_string()
    }

    pub fn format_idx(&self, i: usize) -> String {
        self.elements[i].to_string()
    }
}
