//! PBW monomials and normal ordering in the universal enveloping algebra.
//!
//! The PBW order puts the central block first, then `L_k` with indices
//! ascending left to right, then `I_k` ascending. Straightening repeatedly
//! replaces an adjacent out-of-order pair `x y` by `y x + [x, y]`, recursing
//! on the bracket terms; each step either shortens the word or reduces its
//! inversion count, so it terminates, and by the PBW theorem the result does
//! not depend on which pair is rewritten first.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num::traits::Zero;

use crate::algebra::{ad_weight, bracket_gen, Generator, LieElement};
use crate::rational::{rat, Rational};

/// An ordered monomial `z^t L I`: central exponents for `(z0, z1, z2, z3)`
/// (with `z0 = I_0`), then `L_k` exponents, then `I_k` exponents. `I_0`
/// never appears in the `I` block.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PBWMonomial {
    central: [u32; 4],
    l_exp: BTreeMap<i64, u32>,
    i_exp: BTreeMap<i64, u32>,
}

impl PBWMonomial {
    /// The empty monomial, i.e. 1.
    pub fn one() -> PBWMonomial {
        PBWMonomial::default()
    }

    pub fn is_one(&self) -> bool {
        self.central == [0; 4] && self.l_exp.is_empty() && self.i_exp.is_empty()
    }

    pub fn central(&self) -> &[u32; 4] {
        &self.central
    }

    pub fn l_exponents(&self) -> impl Iterator<Item = (i64, u32)> + '_ {
        self.l_exp.iter().map(|(&k, &e)| (k, e))
    }

    pub fn i_exponents(&self) -> impl Iterator<Item = (i64, u32)> + '_ {
        self.i_exp.iter().map(|(&k, &e)| (k, e))
    }

    /// Multiply in `count` factors of a central generator.
    pub fn push_central(&mut self, slot: usize, count: u32) {
        self.central[slot] += count;
    }

    /// Multiply in `count` factors of `L_k`.
    pub fn push_l(&mut self, k: i64, count: u32) {
        if count > 0 {
            *self.l_exp.entry(k).or_insert(0) += count;
        }
    }

    /// Multiply in `count` factors of `I_k` (`k != 0`; `I_0` goes to the
    /// central block).
    pub fn push_i(&mut self, k: i64, count: u32) {
        if count == 0 {
            return;
        }
        if k == 0 {
            self.central[0] += count;
        } else {
            *self.i_exp.entry(k).or_insert(0) += count;
        }
    }

    /// Factors in canonical reading order.
    pub fn factors(&self) -> Vec<Generator> {
        let mut out = Vec::new();
        for _ in 0..self.central[0] {
            out.push(Generator::I(0));
        }
        for i in 1..4 {
            for _ in 0..self.central[i] {
                out.push(Generator::Z(i as u8));
            }
        }
        for (&k, &e) in &self.l_exp {
            for _ in 0..e {
                out.push(Generator::L(k));
            }
        }
        for (&k, &e) in &self.i_exp {
            for _ in 0..e {
                out.push(Generator::I(k));
            }
        }
        out
    }

    /// Sum of the `ad`-weights of all factors.
    pub fn weight(&self) -> i64 {
        let l: i64 = self.l_exp.iter().map(|(&k, &e)| k * e as i64).sum();
        let i: i64 = self.i_exp.iter().map(|(&k, &e)| k * e as i64).sum();
        l + i
    }

    /// True when every factor has non-positive index (centrals allowed).
    pub fn is_in_b_minus(&self) -> bool {
        self.l_exp.keys().all(|&k| k <= 0) && self.i_exp.keys().all(|&k| k < 0)
    }
}

/// A sparse rational combination of PBW monomials. No zero coefficients are
/// stored; equality is map equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UEAElement {
    terms: BTreeMap<PBWMonomial, Rational>,
}

impl UEAElement {
    pub fn zero() -> UEAElement {
        UEAElement::default()
    }

    pub fn one() -> UEAElement {
        UEAElement::monomial(PBWMonomial::one())
    }

    pub fn scalar(c: Rational) -> UEAElement {
        let mut e = UEAElement::zero();
        e.add_term(PBWMonomial::one(), c);
        e
    }

    pub fn monomial(m: PBWMonomial) -> UEAElement {
        let mut e = UEAElement::zero();
        e.add_term(m, rat(1));
        e
    }

    /// Degree-one embedding of a Lie element.
    pub fn from_lie(x: &LieElement) -> UEAElement {
        let mut e = UEAElement::zero();
        for (g, c) in x.terms() {
            let mut m = PBWMonomial::one();
            match g {
                Generator::L(k) => m.push_l(k, 1),
                Generator::I(k) => m.push_i(k, 1),
                Generator::Z(i) => m.push_central(i as usize, 1),
            }
            e.add_term(m, c.clone());
        }
        e
    }

    pub fn add_term(&mut self, m: PBWMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PBWMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &PBWMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scaled(&self, c: &Rational) -> UEAElement {
        if c.is_zero() {
            return UEAElement::zero();
        }
        UEAElement {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn is_in_b_minus(&self) -> bool {
        self.terms.keys().all(|m| m.is_in_b_minus())
    }
}

impl Add<&UEAElement> for &UEAElement {
    type Output = UEAElement;
    fn add(self, rhs: &UEAElement) -> UEAElement {
        let mut out = self.clone();
        for (m, c) in rhs.terms() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&UEAElement> for &UEAElement {
    type Output = UEAElement;
    fn sub(self, rhs: &UEAElement) -> UEAElement {
        let mut out = self.clone();
        for (m, c) in rhs.terms() {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &UEAElement {
    type Output = UEAElement;
    fn neg(self) -> UEAElement {
        self.scaled(&rat(-1))
    }
}

/// An unordered product of generators, the input form for straightening.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Word(pub Vec<Generator>);

impl Word {
    pub fn from_monomial(m: &PBWMonomial) -> Word {
        Word(m.factors())
    }
}

/// Which adjacent out-of-order pair the straightening loop rewrites first.
/// The result is the same either way (tested); the knob exists to check
/// exactly that.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    LeftmostFirst,
    RightmostFirst,
}

/// Position of a generator in the PBW total order: centrals first (mutually
/// equal: they commute), then `L` by index, then `I` by index.
fn pbw_rank(g: Generator) -> (u8, i64) {
    if g.is_central() {
        (0, 0)
    } else {
        match g {
            Generator::L(k) => (1, k),
            Generator::I(k) => (2, k),
            Generator::Z(_) => unreachable!(),
        }
    }
}

fn fold_sorted(word: &[Generator]) -> PBWMonomial {
    let mut m = PBWMonomial::one();
    for &g in word {
        match g {
            Generator::Z(i) => m.push_central(i as usize, 1),
            Generator::I(k) => m.push_i(k, 1),
            Generator::L(k) => m.push_l(k, 1),
        }
    }
    m
}

/// The unique normal form of a word, computed with the given pair-selection
/// strategy.
pub fn normal_form_with(word: &Word, strategy: Strategy) -> UEAElement {
    let mut out = UEAElement::zero();
    let mut stack: Vec<(Rational, Vec<Generator>)> = vec![(rat(1), word.0.clone())];
    while let Some((coeff, w)) = stack.pop() {
        let mut disorder = None;
        let positions: Box<dyn Iterator<Item = usize>> = match strategy {
            Strategy::LeftmostFirst => Box::new(0..w.len().saturating_sub(1)),
            Strategy::RightmostFirst => Box::new((0..w.len().saturating_sub(1)).rev()),
        };
        for i in positions {
            if pbw_rank(w[i]).cmp(&pbw_rank(w[i + 1])) == Ordering::Greater {
                disorder = Some(i);
                break;
            }
        }
        match disorder {
            None => out.add_term(fold_sorted(&w), coeff),
            Some(i) => {
                let mut swapped = w.clone();
                swapped.swap(i, i + 1);
                for (g, c) in bracket_gen(w[i], w[i + 1]).terms() {
                    let mut contracted = Vec::with_capacity(w.len() - 1);
                    contracted.extend_from_slice(&w[..i]);
                    contracted.push(g);
                    contracted.extend_from_slice(&w[i + 2..]);
                    stack.push((&coeff * c, contracted));
                }
                stack.push((coeff, swapped));
            }
        }
    }
    out
}

/// The unique element of the enveloping algebra equal to the product of the
/// word's factors, written in the PBW basis.
pub fn normal_form(word: &Word) -> UEAElement {
    normal_form_with(word, Strategy::LeftmostFirst)
}

/// Product in the enveloping algebra: concatenate reading orders and
/// straighten, extended bilinearly.
pub fn multiply(a: &UEAElement, b: &UEAElement) -> UEAElement {
    let mut out = UEAElement::zero();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let mut w = ma.factors();
            w.extend(mb.factors());
            for (m, c) in normal_form(&Word(w)).terms() {
                out.add_term(m.clone(), ca * cb * c);
            }
        }
    }
    out
}

/// Sum of the `ad`-weights of a word's factors.
pub fn word_weight(word: &Word) -> i64 {
    word.0.iter().map(|&g| ad_weight(g)).sum()
}
