//! The dual braid monoid over `NC(W, γ)` and its group of fractions.
//!
//! A simple is a member index of the lattice other than the identity
//! (member 0). Words are stored as member indices; the identity never
//! appears as a factor.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;
use std::sync::Arc;

use serde_json::json;

use crate::element::GroupElement;
use crate::error::{Error, Result};
use crate::nc_lattice::NCLattice;

/// Default node budget for [`DualMonoid::oracle_closure`].
pub const DEFAULT_BUDGET: usize = 1_000_000;
/// Longest word the closure oracle accepts.
pub const ORACLE_MAX_LENGTH: u32 = 12;

/// Member index of a non-identity element of the lattice.
pub type Simple = usize;

/// A word in the simples, possibly non-canonical.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PositiveWord(pub Vec<Simple>);

impl PositiveWord {
    pub fn empty() -> Self {
        PositiveWord(Vec::new())
    }

    pub fn factors(&self) -> &[Simple] {
        &self.0
    }

    pub fn concat(&self, other: &PositiveWord) -> PositiveWord {
        PositiveWord(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn prepend(&self, s: Simple) -> PositiveWord {
        PositiveWord(std::iter::once(s).chain(self.0.iter().copied()).collect())
    }

    pub fn append(&self, s: Simple) -> PositiveWord {
        let mut f = self.0.clone();
        f.push(s);
        PositiveWord(f)
    }
}

/// A word in left-weighted form: for adjacent `(a, b)`, `a⁻¹γ ∧ b = I`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm(Vec<Simple>);

impl NormalForm {
    pub fn factors(&self) -> &[Simple] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_word(&self) -> PositiveWord {
        PositiveWord(self.0.clone())
    }
}

/// `⟨γ⟩⁻ᵏ · positive`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupForm {
    pub gamma_power: usize,
    pub positive: NormalForm,
}

/// One letter of a word in the simples and their inverses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Letter {
    pub simple: Simple,
    pub inverse: bool,
}

/// Positively equal words with their factorizations through a common tail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonFactor {
    pub e: usize,
    pub f: usize,
    pub rest: NormalForm,
}

#[derive(Clone, Debug)]
pub struct DualMonoid {
    lattice: Arc<NCLattice>,
}

impl DualMonoid {
    pub fn new(lattice: Arc<NCLattice>) -> Self {
        DualMonoid { lattice }
    }

    pub fn lattice(&self) -> &NCLattice {
        &self.lattice
    }

    pub fn lattice_arc(&self) -> &Arc<NCLattice> {
        &self.lattice
    }

    /// The simple `⟨γ⟩`.
    pub fn gamma(&self) -> Simple {
        self.lattice.top()
    }

    pub fn simples(&self) -> std::ops::Range<usize> {
        1..self.lattice.len()
    }

    /// Sum of the reflection lengths of the factors.
    pub fn length(&self, word: &[Simple]) -> u32 {
        word.iter().map(|&s| self.lattice.rank_of(s)).sum()
    }

    /// Every `(w₁, w₂, w₃)` with `w₁ w₂ = w₃` and `ℓ(w₁) + ℓ(w₂) = ℓ(w₃)`,
    /// over non-identity members.
    pub fn defining_relations(&self) -> Vec<(Simple, Simple, Simple)> {
        let mut out = Vec::new();
        for a in self.simples() {
            for b in self.simples() {
                if let Some(c) = self.lattice.mul(a, b) {
                    out.push((a, b, c));
                }
            }
        }
        out
    }

    pub fn left_normal_form(&self, word: &[Simple]) -> NormalForm {
        let lat = &*self.lattice;
        let mut f: Vec<Simple> = word.iter().copied().filter(|&s| s != 0).collect();
        let mut i = 0;
        while i + 1 < f.len() {
            let (a, b) = (f[i], f[i + 1]);
            let s = lat.meet_idx(lat.left_complement(a), b);
            if s == 0 {
                i += 1;
                continue;
            }
            f[i] = lat.mul(a, s).expect("a·s stays below γ");
            let rest = lat.ldiv(s, b).expect("s divides b");
            if rest == 0 {
                f.remove(i + 1);
            } else {
                f[i + 1] = rest;
            }
            i = i.saturating_sub(1);
        }
        NormalForm(f)
    }

    /// Right-weighted form: for adjacent `(a, b)`, `a ∧ γb⁻¹ = I`.
    pub fn right_normal_form(&self, word: &[Simple]) -> NormalForm {
        let lat = &*self.lattice;
        let mut f: Vec<Simple> = word.iter().copied().filter(|&s| s != 0).collect();
        let mut i = 0;
        while i + 1 < f.len() {
            let (a, b) = (f[i], f[i + 1]);
            let s = lat.meet_idx(a, lat.right_complement(b));
            if s == 0 {
                i += 1;
                continue;
            }
            f[i + 1] = lat.mul(s, b).expect("s·b stays below γ");
            let rest = lat.rdiv(s, a).expect("s is a right factor of a");
            if rest == 0 {
                f.remove(i);
            } else {
                f[i] = rest;
            }
            i = i.saturating_sub(1);
        }
        NormalForm(f)
    }

    pub fn is_left_weighted(&self, factors: &[Simple]) -> bool {
        let lat = &*self.lattice;
        factors.iter().all(|&s| s != 0)
            && factors
                .windows(2)
                .all(|p| lat.meet_idx(lat.left_complement(p[0]), p[1]) == 0)
    }

    pub fn positively_equal(&self, a: &[Simple], b: &[Simple]) -> bool {
        self.left_normal_form(a) == self.left_normal_form(b)
    }

    /// All words reachable from `word` by single substitutions of a defining
    /// relation, found by breadth-first search.
    pub fn oracle_closure(&self, word: &[Simple], budget: usize) -> Result<BTreeSet<Vec<Simple>>> {
        if self.length(word) > ORACLE_MAX_LENGTH {
            return Err(Error::BudgetExceeded(ORACLE_MAX_LENGTH as usize));
        }
        let lat = &*self.lattice;
        let start: Vec<Simple> = word.iter().copied().filter(|&s| s != 0).collect();
        let mut seen = BTreeSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(w) = queue.pop_front() {
            let mut next = Vec::new();
            for i in 0..w.len() {
                for a in self.simples() {
                    if a != w[i] && lat.leq(a, w[i]) {
                        let b = lat.ldiv(a, w[i]).unwrap();
                        let mut v = w[..i].to_vec();
                        v.extend([a, b]);
                        v.extend(&w[i + 1..]);
                        next.push(v);
                    }
                }
                if i + 1 < w.len() {
                    if let Some(c) = lat.mul(w[i], w[i + 1]) {
                        let mut v = w[..i].to_vec();
                        v.push(c);
                        v.extend(&w[i + 2..]);
                        next.push(v);
                    }
                }
            }
            for v in next {
                if seen.insert(v.clone()) {
                    if seen.len() > budget {
                        return Err(Error::BudgetExceeded(budget));
                    }
                    queue.push_back(v);
                }
            }
        }
        Ok(seen)
    }

    /// Whether `⟨u⟩A ≐ ⟨u⟩B ⟹ A ≐ B` holds for this instance.
    pub fn left_cancel(&self, u: Simple, a: &[Simple], b: &[Simple]) -> bool {
        let ua = PositiveWord(a.to_vec()).prepend(u);
        let ub = PositiveWord(b.to_vec()).prepend(u);
        !self.positively_equal(&ua.0, &ub.0) || self.positively_equal(a, b)
    }

    /// Whether `A⟨u⟩ ≐ B⟨u⟩ ⟹ A ≐ B` holds for this instance.
    pub fn right_cancel(&self, u: Simple, a: &[Simple], b: &[Simple]) -> bool {
        let au = PositiveWord(a.to_vec()).append(u);
        let bu = PositiveWord(b.to_vec()).append(u);
        !self.positively_equal(&au.0, &bu.0) || self.positively_equal(a, b)
    }

    pub fn left_divides(&self, j: usize, word: &[Simple]) -> bool {
        let nf = self.left_normal_form(word);
        j == 0 || nf.0.first().is_some_and(|&h| self.lattice.leq(j, h))
    }

    /// `Q` with `⟨j⟩Q ≐ word`.
    pub fn left_divide(&self, word: &[Simple], j: usize) -> Result<NormalForm> {
        let mut nf = self.left_normal_form(word).0;
        if j == 0 {
            return Ok(NormalForm(nf));
        }
        match nf.first().and_then(|&h| self.lattice.ldiv(j, h)) {
            Some(q) => {
                nf[0] = q;
                Ok(self.left_normal_form(&nf))
            }
            None => Err(Error::NotDivisible(self.lattice.format(j))),
        }
    }

    pub fn right_divides(&self, j: usize, word: &[Simple]) -> bool {
        let nf = self.right_normal_form(word);
        j == 0 || nf.0.last().is_some_and(|&t| self.lattice.rdiv(j, t).is_some())
    }

    /// `Q` with `Q⟨j⟩ ≐ word`.
    pub fn right_divide(&self, word: &[Simple], j: usize) -> Result<NormalForm> {
        let mut nf = self.right_normal_form(word).0;
        if j == 0 {
            return Ok(self.left_normal_form(&nf));
        }
        match nf.last().and_then(|&t| self.lattice.rdiv(j, t)) {
            Some(q) => {
                *nf.last_mut().unwrap() = q;
                Ok(self.left_normal_form(&nf))
            }
            None => Err(Error::NotDivisible(self.lattice.format(j))),
        }
    }

    /// For `⟨u⟩A ≐ ⟨w⟩B`, returns `e, f, C` with `u ∨ w = ue = wf`,
    /// `A ≐ ⟨e⟩C` and `B ≐ ⟨f⟩C`.
    pub fn common_prefix(&self, u: Simple, a: &[Simple], w: Simple, b: &[Simple]) -> Result<CommonFactor> {
        let lat = &*self.lattice;
        let ua = PositiveWord(a.to_vec()).prepend(u).0;
        let wb = PositiveWord(b.to_vec()).prepend(w).0;
        if !self.positively_equal(&ua, &wb) {
            return Err(Error::NotEqualInput);
        }
        let j = lat.join_idx(u, w);
        let e = lat.ldiv(u, j).expect("u below u join w");
        let f = lat.ldiv(w, j).expect("w below u join w");
        let rest = self.left_divide(&ua, j)?;
        let ok = self.positively_equal(a, &rest.to_word().prepend(e).0)
            && self.positively_equal(b, &rest.to_word().prepend(f).0);
        if !ok {
            return Err(Error::NotDivisible(lat.format(j)));
        }
        Ok(CommonFactor { e, f, rest })
    }

    /// For `A⟨u⟩ ≐ B⟨w⟩`, returns `e, f, C` with `u ∨ w = eu = fw`,
    /// `A ≐ C⟨e⟩` and `B ≐ C⟨f⟩`.
    pub fn common_suffix(&self, a: &[Simple], u: Simple, b: &[Simple], w: Simple) -> Result<CommonFactor> {
        let lat = &*self.lattice;
        let au = PositiveWord(a.to_vec()).append(u).0;
        let bw = PositiveWord(b.to_vec()).append(w).0;
        if !self.positively_equal(&au, &bw) {
            return Err(Error::NotEqualInput);
        }
        let j = lat.join_idx(u, w);
        let e = lat.rdiv(u, j).expect("u right factor of u join w");
        let f = lat.rdiv(w, j).expect("w right factor of u join w");
        let rest = self.right_divide(&au, j)?;
        let ok = self.positively_equal(a, &rest.to_word().append(e).0)
            && self.positively_equal(b, &rest.to_word().append(f).0);
        if !ok {
            return Err(Error::NotDivisible(lat.format(j)));
        }
        Ok(CommonFactor { e, f, rest })
    }

    /// `Z` with `P ≐ ⟨a₁ ∨ … ∨ a_k⟩ Z`, given that each `aᵢ` left-divides `P`.
    pub fn join_prefix(&self, word: &[Simple], prefixes: &[Simple]) -> Result<(usize, NormalForm)> {
        let lat = &*self.lattice;
        let mut x = 0;
        for &a in prefixes {
            if !self.left_divides(a, word) {
                return Err(Error::NotDivisible(lat.format(a)));
            }
            x = lat.join_idx(x, a);
        }
        Ok((x, self.left_divide(word, x)?))
    }

    /// `Z` with `P ≐ Z ⟨a₁ ∨ … ∨ a_k⟩`, given that each `aᵢ` right-divides `P`.
    pub fn join_suffix(&self, word: &[Simple], suffixes: &[Simple]) -> Result<(usize, NormalForm)> {
        let lat = &*self.lattice;
        let mut x = 0;
        for &a in suffixes {
            if !self.right_divides(a, word) {
                return Err(Error::NotDivisible(lat.format(a)));
            }
            x = lat.join_idx(x, a);
        }
        Ok((x, self.right_divide(word, x)?))
    }

    /// Replaces every factor `⟨w⟩` by `⟨γᵏ w γ⁻ᵏ⟩`.
    pub fn gamma_twist(&self, word: &[Simple], k: usize) -> PositiveWord {
        PositiveWord(word.iter().map(|&s| self.lattice.twist_by(s, k)).collect())
    }

    /// Rewrites a word in simples and their inverses as `⟨γ⟩⁻ᵏ P`, where `k`
    /// is the number of inverse letters. Each inverse is absorbed through
    /// `⟨w⟩⁻¹ = ⟨γ⟩⁻¹⟨γw⁻¹⟩` after pushing `⟨γ⟩⁻¹` to the front.
    pub fn positive_lift(&self, letters: &[Letter]) -> GroupForm {
        let lat = &*self.lattice;
        let mut k = 0;
        let mut p: Vec<Simple> = Vec::new();
        for l in letters {
            if l.simple == 0 {
                continue;
            }
            if l.inverse {
                for s in p.iter_mut() {
                    *s = lat.twist(*s);
                }
                p.push(lat.right_complement(l.simple));
                k += 1;
            } else {
                p.push(l.simple);
            }
        }
        GroupForm {
            gamma_power: k,
            positive: self.left_normal_form(&p),
        }
    }

    /// Strips leading `⟨γ⟩` factors against the `⟨γ⟩⁻ᵏ` prefix.
    pub fn canonical(&self, g: &GroupForm) -> GroupForm {
        let gamma = self.gamma();
        let mut k = g.gamma_power;
        let mut f = self.left_normal_form(g.positive.factors()).0;
        let strip = f.iter().take_while(|&&s| s == gamma).count().min(k);
        f.drain(..strip);
        k -= strip;
        GroupForm {
            gamma_power: k,
            positive: NormalForm(f),
        }
    }

    pub fn group_equal(&self, g: &GroupForm, h: &GroupForm) -> bool {
        let k = g.gamma_power.max(h.gamma_power);
        self.pad(g, k) == self.pad(h, k)
    }

    fn pad(&self, g: &GroupForm, k: usize) -> NormalForm {
        let mut w = vec![self.gamma(); k - g.gamma_power];
        w.extend(g.positive.factors());
        self.left_normal_form(&w)
    }

    /// Image of a positive word under the projection onto `W`.
    pub fn evaluate(&self, word: &[Simple]) -> GroupElement {
        let lat = &*self.lattice;
        let sys = lat.system();
        let w = word
            .iter()
            .fold(0, |acc, &s| sys.mul_idx(acc, lat.system_index(s)));
        sys.element(w).clone()
    }

    pub fn evaluate_group(&self, g: &GroupForm) -> GroupElement {
        let lat = &*self.lattice;
        let sys = lat.system();
        let gi = sys.inv_idx(lat.system_index(self.gamma()));
        let front = (0..g.gamma_power).fold(0, |acc, _| sys.mul_idx(acc, gi));
        let back = sys.index_of(&self.evaluate(g.positive.factors())).unwrap();
        sys.element(sys.mul_idx(front, back)).clone()
    }

    pub fn format_word(&self, word: &[Simple]) -> String {
        if word.is_empty() {
            return "e".into();
        }
        let parts: Vec<String> = word.iter().map(|&s| self.lattice.format(s)).collect();
        parts.join("*")
    }

    pub fn format_letters(&self, letters: &[Letter]) -> String {
        if letters.is_empty() {
            return "e".into();
        }
        let mut out = String::new();
        for (i, l) in letters.iter().enumerate() {
            if i > 0 {
                out.push('*');
            }
            out.push_str(&self.lattice.format(l.simple));
            if l.inverse {
                out.push_str("^-1");
            }
        }
        out
    }

    pub fn format_group(&self, g: &GroupForm) -> String {
        let word = self.format_word(g.positive.factors());
        if g.gamma_power == 0 {
            word
        } else if g.positive.is_empty() {
            format!("g^-{}", g.gamma_power)
        } else {
            let mut out = String::new();
            let _ = write!(out, "g^-{} * {word}", g.gamma_power);
            out
        }
    }

    pub fn group_json(&self, g: &GroupForm) -> serde_json::Value {
        json!({
            "gamma_power": g.gamma_power,
            "factors": g.positive.factors().iter().map(|&s| self.lattice.format(s)).collect::<Vec<_>>(),
        })
    }

    /// Parses `*`-separated factors; `e` alone is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<PositiveWord> {
        let letters = self.parse_letters(text)?;
        if let Some(pos) = letters.iter().position(|l| l.inverse) {
            return Err(Error::parse(pos, "inverse letter in a positive word"));
        }
        Ok(PositiveWord(letters.into_iter().map(|l| l.simple).collect()))
    }

    /// Parses `*`-separated factors, each optionally suffixed `^-1`. The
    /// token `g` stands for `⟨γ⟩` and `g^-k` for `k` copies of its inverse.
    pub fn parse_letters(&self, text: &str) -> Result<Vec<Letter>> {
        if text.trim() == "e" || text.trim().is_empty() {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        let mut offset = 0;
        for token in text.split('*') {
            let lead = token.len() - token.trim_start().len();
            let pos = offset + lead;
            offset += token.len() + 1;
            let token = token.trim();
            let (body, power) = match token.rfind('^') {
                Some(i) => {
                    let exp = &token[i + 1..];
                    let k: usize = exp
                        .strip_prefix('-')
                        .and_then(|k| k.parse().ok())
                        .filter(|&k| k > 0)
                        .ok_or_else(|| Error::parse(pos + i + 1, "exponent must be -k with k >= 1"))?;
                    (token[..i].trim(), Some(k))
                }
                None => (token, None),
            };
            if body.is_empty() {
                return Err(Error::parse(pos, "empty factor"));
            }
            let simple = if body == "g" {
                self.gamma()
            } else {
                let w = GroupElement::parse(self.lattice.system().shape(), body).map_err(|e| match e {
                    Error::Parse { pos: p, msg } => Error::parse(pos + p, msg),
                    other => other,
                })?;
                if w.is_identity() {
                    return Err(Error::parse(pos, "identity is not a factor"));
                }
                self.lattice.require(&w)?
            };
            match power {
                None => out.push(Letter { simple, inverse: false }),
                Some(k) if body == "g" => {
                    out.extend((0..k).map(|_| Letter { simple, inverse: true }));
                }
                Some(1) => out.push(Letter { simple, inverse: true }),
                Some(_) => return Err(Error::parse(pos, "only g takes exponents other than -1")),
            }
        }
        Ok(out)
    }
}
