//! Exact group elements and their text form.
//!
//! Three concrete models cover the implemented families:
//!
//! * type A: permutations of `{1, …, n}`,
//! * types B and D: signed permutations in window notation,
//! * type I₂(m): symmetries of a regular m-gon acting on ℤ/m, where
//!   `rot:k` is `x ↦ x + k` and `ref:k` is `x ↦ k − x`.
//!
//! Products compose as functions: `(u·v)(x) = u(v(x))`, so `v` acts first.
//! With this convention `(1,2)·(2,3) = (1,2,3)`.
//!
//! Canonical text: the identity is `e`; permutations use cycle notation with
//! each cycle starting at its smallest entry, cycles sorted by that entry and
//! fixed points omitted; signed permutations use `signed:` followed by the
//! window; dihedral elements are `rot:k` / `ref:k` with `0 ≤ k < m`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    /// `images[i]` is the (0-based) image of `i`.
    Perm(Box<[u8]>),
    /// `window[i]` is the signed (1-based) image of `i + 1`.
    Signed(Box<[i8]>),
    Dihedral { m: u32, reflection: bool, k: u32 },
}

/// The ambient model an element lives in; needed to parse text such as `e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ElementShape {
    Perm(usize),
    Signed(usize),
    Dihedral(u32),
}

impl ElementShape {
    pub fn identity(self) -> GroupElement {
        match self {
            ElementShape::Perm(n) => GroupElement::Perm((0..n as u8).collect()),
            ElementShape::Signed(n) => GroupElement::Signed((1..=n as i8).collect()),
            ElementShape::Dihedral(m) => GroupElement::Dihedral {
                m,
                reflection: false,
                k: 0,
            },
        }
    }
}

impl GroupElement {
    pub fn shape(&self) -> ElementShape {
        match self {
            GroupElement::Perm(p) => ElementShape::Perm(p.len()),
            GroupElement::Signed(w) => ElementShape::Signed(w.len()),
            GroupElement::Dihedral { m, .. } => ElementShape::Dihedral(*m),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            GroupElement::Perm(p) => p.iter().enumerate().all(|(i, &x)| i == x as usize),
            GroupElement::Signed(w) => w.iter().enumerate().all(|(i, &x)| x as isize == i as isize + 1),
            GroupElement::Dihedral { reflection, k, .. } => !reflection && *k == 0,
        }
    }

    /// Product `self · rhs` (apply `rhs` first), or [`Error::MixedSystems`]
    /// when the two elements live in different models.
    pub fn try_mul(&self, rhs: &GroupElement) -> Result<GroupElement> {
        match (self, rhs) {
            (GroupElement::Perm(a), GroupElement::Perm(b)) if a.len() == b.len() => {
                Ok(GroupElement::Perm(b.iter().map(|&x| a[x as usize]).collect()))
            }
            (GroupElement::Signed(a), GroupElement::Signed(b)) if a.len() == b.len() => {
                Ok(GroupElement::Signed(
                    b.iter()
                        .map(|&x| {
                            let y = a[x.unsigned_abs() as usize - 1];
                            if x < 0 {
                                -y
                            } else {
                                y
                            }
                        })
                        .collect(),
                ))
            }
            (
                &GroupElement::Dihedral {
                    m,
                    reflection: ra,
                    k: a,
                },
                &GroupElement::Dihedral {
                    m: m2,
                    reflection: rb,
                    k: b,
                },
            ) if m == m2 => {
                let (reflection, k) = match (ra, rb) {
                    (false, false) => (false, (a + b) % m),
                    (false, true) => (true, (a + b) % m),
                    (true, false) => (true, (a + m - b) % m),
                    (true, true) => (false, (a + m - b) % m),
                };
                Ok(GroupElement::Dihedral { m, reflection, k })
            }
            _ => Err(Error::MixedSystems),
        }
    }

    /// Product `self · rhs`. Panics if the shapes differ.
    pub fn mul(&self, rhs: &GroupElement) -> GroupElement {
        self.try_mul(rhs)
            .unwrap_or_else(|_| panic!("cannot multiply {self} by {rhs}"))
    }

    pub fn inverse(&self) -> GroupElement {
        match self {
            GroupElement::Perm(p) => {
                let mut inv = vec![0u8; p.len()];
                for (i, &x) in p.iter().enumerate() {
                    inv[x as usize] = i as u8;
                }
                GroupElement::Perm(inv.into())
            }
            GroupElement::Signed(w) => {
                let mut inv = vec![0i8; w.len()];
                for (i, &x) in w.iter().enumerate() {
                    let src = i as i8 + 1;
                    inv[x.unsigned_abs() as usize - 1] = if x < 0 { -src } else { src };
                }
                GroupElement::Signed(inv.into())
            }
            &GroupElement::Dihedral { m, reflection, k } => {
                if reflection {
                    self.clone()
                } else {
                    GroupElement::Dihedral {
                        m,
                        reflection,
                        k: (m - k) % m,
                    }
                }
            }
        }
    }

    /// `u · self · u⁻¹`.
    pub fn conjugate_by(&self, u: &GroupElement) -> GroupElement {
        u.mul(self).mul(&u.inverse())
    }

    /// Multiplicative order.
    pub fn order(&self) -> usize {
        let mut x = self.clone();
        let mut n = 1;
        while !x.is_identity() {
            x = x.mul(self);
            n += 1;
        }
        n
    }

    /// Number of cycles of a permutation, fixed points included.
    pub fn cycle_count(&self) -> Option<usize> {
        match self {
            GroupElement::Perm(p) => Some(perm_cycles(p, true).len()),
            _ => None,
        }
    }

    /// Number of negative entries in a signed permutation's window.
    pub fn negative_count(&self) -> Option<usize> {
        match self {
            GroupElement::Signed(w) => Some(w.iter().filter(|&&x| x < 0).count()),
            _ => None,
        }
    }

    /// Parses canonical (or any grammatical) text in the given model.
    pub fn parse(shape: ElementShape, text: &str) -> Result<GroupElement> {
        Parser::new(text).element(shape)
    }
}

/// Cycles of a 0-based permutation, each starting at its smallest entry and
/// sorted by that entry.
fn perm_cycles(p: &[u8], keep_fixed: bool) -> Vec<Vec<usize>> {
    let mut seen = vec![false; p.len()];
    let mut cycles = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = p[start] as usize;
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = p[x] as usize;
        }
        if keep_fixed || cycle.len() > 1 {
            cycles.push(cycle);
        }
    }
    cycles
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("e");
        }
        match self {
            GroupElement::Perm(p) => {
                for cycle in perm_cycles(p, false) {
                    f.write_str("(")?;
                    for (i, x) in cycle.iter().enumerate() {
                        if i > 0 {
                            f.write_str(",")?;
                        }
                        write!(f, "{}", x + 1)?;
                    }
                    f.write_str(")")?;
                }
                Ok(())
            }
            GroupElement::Signed(w) => {
                f.write_str("signed:")?;
                for (i, x) in w.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
            GroupElement::Dihedral { reflection, k, .. } => {
                write!(f, "{}:{k}", if *reflection { "ref" } else { "rot" })
            }
        }
    }
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            text: text.as_bytes(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<u8> {
        self.text.get(self.pos).copied()
    }

    fn expect(&mut self, byte: u8) -> Result<()> {
        match self.peek() {
            Some(b) if b == byte => {
                self.pos += 1;
                Ok(())
            }
            Some(b) => Err(Error::parse(
                self.pos,
                format!("expected '{}', found '{}'", byte as char, b as char),
            )),
            None => Err(Error::parse(
                self.pos,
                format!("expected '{}', found end of input", byte as char),
            )),
        }
    }

    fn starts_with(&self, prefix: &str) -> bool {
        self.text[self.pos..].starts_with(prefix.as_bytes())
    }

    fn int(&mut self) -> Result<i64> {
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if self.pos == digits {
            return Err(Error::parse(self.pos, "expected an integer"));
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::parse(start, "integer out of range"))
    }

    fn end(&self) -> Result<()> {
        if self.pos == self.text.len() {
            Ok(())
        } else {
            Err(Error::parse(self.pos, "unexpected trailing input"))
        }
    }

    fn element(&mut self, shape: ElementShape) -> Result<GroupElement> {
        if self.text == b"e" {
            return Ok(shape.identity());
        }
        let element = match (self.peek(), shape) {
            (Some(b'('), ElementShape::Perm(n)) => GroupElement::Perm(self.cycles(n)?.into()),
            (Some(b'('), ElementShape::Signed(n)) => GroupElement::Signed(
                self.cycles(n)?.iter().map(|&x| x as i8 + 1).collect(),
            ),
            (_, ElementShape::Signed(n)) if self.starts_with("signed:") => {
                self.pos += "signed:".len();
                self.window(n)?
            }
            (_, ElementShape::Dihedral(m)) if self.starts_with("rot:") || self.starts_with("ref:") => {
                let reflection = self.starts_with("ref:");
                self.pos += 4;
                let at = self.pos;
                let k = self.int()?;
                if k < 0 || k >= m as i64 {
                    return Err(Error::parse(at, format!("index must lie in 0..{m}")));
                }
                GroupElement::Dihedral {
                    m,
                    reflection,
                    k: k as u32,
                }
            }
            _ => {
                return Err(Error::parse(
                    self.pos,
                    format!("expected an element of {shape:?}"),
                ))
            }
        };
        self.end()?;
        Ok(element)
    }

    /// A product of cycles over `{1..n}`, composed right to left.
    fn cycles(&mut self, n: usize) -> Result<Vec<u8>> {
        let mut perm: Vec<u8> = (0..n as u8).collect();
        while self.peek() == Some(b'(') {
            self.pos += 1;
            let mut cycle: Vec<usize> = Vec::new();
            loop {
                let at = self.pos;
                let x = self.int()?;
                if x < 1 || x > n as i64 {
                    return Err(Error::parse(at, format!("entry must lie in 1..={n}")));
                }
                let x = x as usize - 1;
                if cycle.contains(&x) {
                    return Err(Error::parse(at, "repeated entry in cycle"));
                }
                cycle.push(x);
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    _ => break,
                }
            }
            if cycle.len() < 2 {
                return Err(Error::parse(self.pos, "a cycle needs at least two entries"));
            }
            self.expect(b')')?;
            let mut c: Vec<u8> = (0..n as u8).collect();
            for (i, &x) in cycle.iter().enumerate() {
                c[x] = cycle[(i + 1) % cycle.len()] as u8;
            }
            // Cycles further right act first.
            perm = c.iter().map(|&x| perm[x as usize]).collect();
        }
        Ok(perm)
    }

    fn window(&mut self, n: usize) -> Result<GroupElement> {
        let mut window = Vec::with_capacity(n);
        let mut used = vec![false; n];
        loop {
            let at = self.pos;
            let x = self.int()?;
            if x == 0 || x.unsigned_abs() as usize > n {
                return Err(Error::parse(at, format!("entry must satisfy 1 <= |x| <= {n}")));
            }
            let slot = x.unsigned_abs() as usize - 1;
            if used[slot] {
                return Err(Error::parse(at, "repeated absolute value in window"));
            }
            used[slot] = true;
            window.push(x as i8);
            if self.peek() == Some(b' ') {
                self.pos += 1;
            } else {
                break;
            }
        }
        if window.len() != n {
            return Err(Error::parse(self.pos, format!("window must have {n} entries")));
        }
        Ok(GroupElement::Signed(window.into()))
    }
}
