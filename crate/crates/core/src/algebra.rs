//! The twisted Heisenberg-Virasoro Lie algebra.
//!
//! The algebra is spanned by `L_k`, `I_k` for integer `k` together with the
//! central elements `z_1, z_2, z_3`, with brackets
//!
//! ```text
//! [L_k, L_j] = (j - k) L_{k+j} + d(j,-k) (k^3 - k)/12 z1
//! [L_k, I_j] = j I_{k+j}       + d(j,-k) (k^2 - k)    z2
//! [I_k, I_j] = d(j,-k) k z3
//! [z_i,  - ] = 0
//! ```
//!
//! where `d` is the Kronecker delta. `I_0` brackets to zero with everything
//! (both structure constants vanish at index 0), so it is central too; at the
//! PBW level it is the fourth central symbol `z0`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num::traits::Zero;

use crate::rational::{rat, Rational};

/// A basis symbol of the algebra.
///
/// `Z` indices are restricted to 1, 2, 3; `I(0)` is the fourth central
/// element (`z0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    L(i64),
    I(i64),
    Z(u8),
}

impl Generator {
    /// The central generator `z_i` for `i` in `1..=3`.
    pub fn z(i: u8) -> Generator {
        assert!((1..=3).contains(&i), "z index must be 1, 2 or 3");
        Generator::Z(i)
    }

    /// Index of the generator; 0 for `z_1, z_2, z_3`.
    pub fn index(&self) -> i64 {
        match self {
            Generator::L(k) | Generator::I(k) => *k,
            Generator::Z(_) => 0,
        }
    }

    /// True for `z_1, z_2, z_3` and `I_0`.
    pub fn is_central(&self) -> bool {
        matches!(self, Generator::Z(_) | Generator::I(0))
    }

    /// Slot of a central generator in the `(z0, z1, z2, z3)` exponent vector.
    pub fn central_slot(&self) -> Option<usize> {
        match self {
            Generator::I(0) => Some(0),
            Generator::Z(i) => Some(*i as usize),
            _ => None,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::L(k) => write!(f, "L[{k}]"),
            Generator::I(0) => write!(f, "z0"),
            Generator::I(k) => write!(f, "I[{k}]"),
            Generator::Z(i) => write!(f, "z{i}"),
        }
    }
}

/// The three standard subalgebras of the triangular decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SubalgebraId {
    NPlus,
    NMinus,
    Cartan,
}

/// Weight of a generator under the adjoint action of `L_0`.
pub fn ad_weight(g: Generator) -> i64 {
    match g {
        Generator::L(k) | Generator::I(k) => k,
        Generator::Z(_) => 0,
    }
}

/// Classify a generator: positive index to `n+`, negative to `n-`,
/// everything of weight zero (`L_0`, `I_0`, `z_i`) to the Cartan part.
pub fn classify(g: Generator) -> SubalgebraId {
    match g.index() {
        k if k > 0 => SubalgebraId::NPlus,
        k if k < 0 => SubalgebraId::NMinus,
        _ => SubalgebraId::Cartan,
    }
}

/// An element of the Lie algebra: a finite rational combination of
/// generators. Zero coefficients are never stored, so equality is map
/// equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LieElement {
    terms: BTreeMap<Generator, Rational>,
}

impl LieElement {
    pub fn zero() -> LieElement {
        LieElement::default()
    }

    pub fn generator(g: Generator) -> LieElement {
        LieElement::from_term(g, rat(1))
    }

    pub fn from_term(g: Generator, c: Rational) -> LieElement {
        let mut e = LieElement::zero();
        e.add_term(g, c);
        e
    }

    pub fn add_term(&mut self, g: Generator, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(g).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Generator, &Rational)> {
        self.terms.iter().map(|(g, c)| (*g, c))
    }

    pub fn coefficient(&self, g: Generator) -> Rational {
        self.terms.get(&g).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scaled(&self, c: &Rational) -> LieElement {
        if c.is_zero() {
            return LieElement::zero();
        }
        LieElement {
            terms: self.terms.iter().map(|(g, x)| (*g, x * c)).collect(),
        }
    }
}

impl Add<&LieElement> for &LieElement {
    type Output = LieElement;
    fn add(self, rhs: &LieElement) -> LieElement {
        let mut out = self.clone();
        for (g, c) in rhs.terms() {
            out.add_term(g, c.clone());
        }
        out
    }
}

impl Sub<&LieElement> for &LieElement {
    type Output = LieElement;
    fn sub(self, rhs: &LieElement) -> LieElement {
        let mut out = self.clone();
        for (g, c) in rhs.terms() {
            out.add_term(g, -c.clone());
        }
        out
    }
}

impl Neg for &LieElement {
    type Output = LieElement;
    fn neg(self) -> LieElement {
        self.scaled(&rat(-1))
    }
}

/// Bracket of two generators, written in the defining relations.
/// Coefficients are computed in big integers: `k^3` outgrows machine
/// integers long before the index itself does.
pub fn bracket_gen(x: Generator, y: Generator) -> LieElement {
    use num::BigInt;
    use Generator::*;
    let sum = |k: i64, j: i64| {
        k.checked_add(j)
            .expect("generator index overflow in a bracket")
    };
    let big = |k: i64| BigInt::from(k);
    let mut out = LieElement::zero();
    match (x, y) {
        (Z(_), _) | (_, Z(_)) => {}
        (L(k), L(j)) => {
            out.add_term(L(sum(k, j)), Rational::from_integer(big(j) - big(k)));
            if j == -k {
                let cubic = big(k) * big(k) * big(k) - big(k);
                out.add_term(Z(1), Rational::new(cubic, BigInt::from(12)));
            }
        }
        (L(k), I(j)) => {
            out.add_term(I(sum(k, j)), rat(j));
            if j == -k {
                out.add_term(Z(2), Rational::from_integer(big(k) * big(k) - big(k)));
            }
        }
        (I(k), L(j)) => {
            // antisymmetry: -[L_j, I_k]
            out.add_term(I(sum(k, j)), Rational::from_integer(-big(k)));
            if k == -j {
                out.add_term(Z(2), Rational::from_integer(big(j) - big(j) * big(j)));
            }
        }
        (I(k), I(j)) => {
            if j == -k {
                out.add_term(Z(3), rat(k));
            }
        }
    }
    out
}

/// Bilinear extension of [`bracket_gen`].
pub fn bracket(x: &LieElement, y: &LieElement) -> LieElement {
    let mut out = LieElement::zero();
    for (g, a) in x.terms() {
        for (h, b) in y.terms() {
            for (r, c) in bracket_gen(g, h).terms() {
                out.add_term(r, a * b * c);
            }
        }
    }
    out
}

/// The central reduction: deletes `z_1, z_2, z_3` terms. `I_0` is retained
/// (it is not in the kernel).
pub fn reduce_central(x: &LieElement) -> LieElement {
    let mut out = LieElement::zero();
    for (g, c) in x.terms() {
        if !matches!(g, Generator::Z(_)) {
            out.add_term(g, c.clone());
        }
    }
    out
}

/// All generators with `|index| <= max_index` (plus the three `z_i`),
/// in a fixed order. Handy for exhaustive law checks.
pub fn generators_up_to(max_index: i64) -> Vec<Generator> {
    let mut out = Vec::new();
    for k in -max_index..=max_index {
        out.push(Generator::L(k));
        out.push(Generator::I(k));
    }
    for i in 1..=3 {
        out.push(Generator::Z(i));
    }
    out
}
