//! Whittaker modules: the universal module, its central reductions, the
//! action, defects (the dot action) and degree statistics.
//!
//! A Whittaker map `psi` takes rational values on `L_1`, `L_2`, `I_1`; the
//! commutator relations force `psi(L_i) = 0` for `i >= 3` and
//! `psi(I_j) = 0` for `j >= 2`, so those three values determine it. The
//! universal module has basis `z^t L_{-lambda} I_{-mu} w` over
//! pseudopartition/partition pairs and central exponents `t`; a reduced
//! module evaluates the centrals at a character `xi` and keeps the
//! `L_{-lambda} I_{-mu} w` part. Reduced covers both the nonsingular
//! quotients and the singular-psi induced modules: the basis and the action
//! formulas are identical, only the admissibility requirement on `psi`
//! differs.

use std::cmp::{Ordering, Reverse};
use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num::traits::{One, Zero};

use crate::algebra::{bracket_gen, Generator, LieElement, SubalgebraId};
use crate::error::{Error, Result};
use crate::partitions::{Partition, Pseudopartition};
use crate::rational::{rat, Rational};
use crate::uea::{normal_form, PBWMonomial, UEAElement, Word};

/// Values of a Whittaker homomorphism on the generating triple of `n+`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WhittakerMap {
    l1: Rational,
    l2: Rational,
    i1: Rational,
}

impl WhittakerMap {
    pub fn new(l1: Rational, l2: Rational, i1: Rational) -> WhittakerMap {
        WhittakerMap { l1, l2, i1 }
    }

    /// Extended constructor that also accepts explicit values at other `n+`
    /// generators; nonzero values at `L_i` (`i >= 3`) or `I_j` (`j >= 2`)
    /// are rejected, since the commutator relations force them to vanish.
    pub fn with_explicit(
        l1: Rational,
        l2: Rational,
        i1: Rational,
        extra: &[(Generator, Rational)],
    ) -> Result<WhittakerMap> {
        for (g, v) in extra {
            if crate::algebra::classify(*g) != SubalgebraId::NPlus {
                return Err(Error::Usage(format!("{g} is not in n+")));
            }
            let forced_zero = match g {
                Generator::L(k) => *k >= 3,
                Generator::I(k) => *k >= 2,
                Generator::Z(_) => unreachable!(),
            };
            if forced_zero && !v.is_zero() {
                return Err(Error::ForbiddenPsiValue(g.to_string()));
            }
        }
        Ok(WhittakerMap::new(l1, l2, i1))
    }

    pub fn is_nonsingular(&self) -> bool {
        !self.l1.is_zero() && !self.l2.is_zero() && !self.i1.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.l1.is_zero() && self.l2.is_zero() && self.i1.is_zero()
    }

    /// `psi(g)`, taking the value 0 outside `{L_1, L_2, I_1}` (in
    /// particular on all of `b-`, where the defect convention needs it).
    pub fn value(&self, g: Generator) -> Rational {
        match g {
            Generator::L(1) => self.l1.clone(),
            Generator::L(2) => self.l2.clone(),
            Generator::I(1) => self.i1.clone(),
            _ => Rational::zero(),
        }
    }

    pub fn l1(&self) -> &Rational {
        &self.l1
    }

    pub fn l2(&self) -> &Rational {
        &self.l2
    }

    pub fn i1(&self) -> &Rational {
        &self.i1
    }
}

/// The scalars by which the four central elements `z_0 .. z_3` act.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralCharacter {
    values: [Rational; 4],
}

impl CentralCharacter {
    pub fn new(values: [Rational; 4]) -> CentralCharacter {
        CentralCharacter { values }
    }

    pub fn zero() -> CentralCharacter {
        CentralCharacter::new([
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
        ])
    }

    pub fn value(&self, slot: usize) -> &Rational {
        &self.values[slot]
    }
}

/// Which module a vector lives in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleSpec {
    Universal(WhittakerMap),
    Reduced(WhittakerMap, CentralCharacter),
}

impl ModuleSpec {
    /// The universal module; requires nonsingular `psi`.
    pub fn universal(psi: WhittakerMap) -> Result<ModuleSpec> {
        if !psi.is_nonsingular() {
            return Err(Error::SingularPsi);
        }
        Ok(ModuleSpec::Universal(psi))
    }

    /// A reduced module; accepts any `psi` that is not identically zero
    /// (singular `psi` gives the induced modules of the singular family).
    pub fn reduced(psi: WhittakerMap, xi: CentralCharacter) -> Result<ModuleSpec> {
        if psi.is_zero() {
            return Err(Error::ZeroPsi);
        }
        Ok(ModuleSpec::Reduced(psi, xi))
    }

    pub fn psi(&self) -> &WhittakerMap {
        match self {
            ModuleSpec::Universal(psi) => psi,
            ModuleSpec::Reduced(psi, _) => psi,
        }
    }

    pub fn xi(&self) -> Option<&CentralCharacter> {
        match self {
            ModuleSpec::Universal(_) => None,
            ModuleSpec::Reduced(_, xi) => Some(xi),
        }
    }

    pub fn is_universal(&self) -> bool {
        matches!(self, ModuleSpec::Universal(_))
    }
}

/// Index of a module basis vector: central exponents `t` (always zero in a
/// reduced module), the `L` pseudopartition and the `I` partition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BasisIndex {
    pub t: [u32; 4],
    pub lambda: Pseudopartition,
    pub mu: Partition,
}

impl BasisIndex {
    /// The index of the cyclic vector `w`.
    pub fn cyclic() -> BasisIndex {
        BasisIndex::default()
    }

    pub fn is_cyclic(&self) -> bool {
        self.t == [0; 4] && self.lambda.is_empty() && self.mu.is_empty()
    }

    /// `|lambda + mu|`, the degree of the basis vector.
    pub fn degree(&self) -> u64 {
        self.lambda.size() + self.mu.size()
    }

    /// The creation word `L_{-lambda} I_{-mu}` in canonical reading order
    /// (the central part is kept in `t`, not in the word).
    pub fn word(&self) -> Vec<Generator> {
        let mut out = Vec::new();
        for (k, count) in self.lambda.iter().collect::<Vec<_>>().into_iter().rev() {
            for _ in 0..count {
                out.push(Generator::L(-(k as i64)));
            }
        }
        for (k, count) in self.mu.iter().collect::<Vec<_>>().into_iter().rev() {
            for _ in 0..count {
                out.push(Generator::I(-(k as i64)));
            }
        }
        out
    }

    /// Read a `b-` monomial back into a basis index. `None` if the monomial
    /// has a factor of positive index.
    pub fn from_monomial(m: &PBWMonomial) -> Option<BasisIndex> {
        let mut idx = BasisIndex {
            t: *m.central(),
            ..BasisIndex::default()
        };
        for (k, e) in m.l_exponents() {
            if k > 0 {
                return None;
            }
            idx.lambda.add_part((-k) as u32, e);
        }
        for (k, e) in m.i_exponents() {
            if k >= 0 {
                return None;
            }
            idx.mu.add_part((-k) as u32, e);
        }
        Some(idx)
    }

    fn order_key(
        &self,
    ) -> (
        u64,
        u32,
        u64,
        &Pseudopartition,
        &Partition,
        u32,
        Reverse<[u32; 4]>,
    ) {
        (
            self.degree(),
            self.lambda.zeros(),
            self.mu.size(),
            &self.lambda,
            &self.mu,
            self.t.iter().sum(),
            Reverse(self.t),
        )
    }
}

// The basis enumeration order: graded by degree, then by the L_0 exponent,
// then mu-light terms first, then lexicographic on the multiplicity maps,
// then central monomials graded by total degree with z0-heavy first.
impl Ord for BasisIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl PartialOrd for BasisIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An element of a Whittaker module: a sparse rational combination of basis
/// indices. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleVector {
    spec: ModuleSpec,
    terms: BTreeMap<BasisIndex, Rational>,
}

impl ModuleVector {
    pub fn zero(spec: ModuleSpec) -> ModuleVector {
        ModuleVector {
            spec,
            terms: BTreeMap::new(),
        }
    }

    /// The cyclic vector `w` (coefficient 1 at the empty index).
    pub fn cyclic(spec: ModuleSpec) -> ModuleVector {
        ModuleVector::basis(spec, BasisIndex::cyclic())
    }

    pub fn basis(spec: ModuleSpec, idx: BasisIndex) -> ModuleVector {
        let mut v = ModuleVector::zero(spec);
        v.add_term(idx, rat(1));
        v
    }

    pub fn spec(&self) -> &ModuleSpec {
        &self.spec
    }

    pub fn add_term(&mut self, idx: BasisIndex, c: Rational) {
        if c.is_zero() {
            return;
        }
        debug_assert!(
            self.spec.is_universal() || idx.t == [0; 4],
            "reduced module vectors have no central exponents"
        );
        let entry = self.terms.entry(idx.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&idx);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisIndex, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, idx: &BasisIndex) -> Rational {
        self.terms.get(idx).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scaled(&self, c: &Rational) -> ModuleVector {
        if c.is_zero() {
            return ModuleVector::zero(self.spec.clone());
        }
        ModuleVector {
            spec: self.spec.clone(),
            terms: self.terms.iter().map(|(i, x)| (i.clone(), x * c)).collect(),
        }
    }

    /// Maximum degree over nonzero terms; `None` is the zero vector's
    /// "minus infinity".
    pub fn maxdeg(&self) -> Option<u64> {
        self.terms.keys().map(|i| i.degree()).max()
    }

    /// Maximum `L_0` exponent over nonzero terms; `None` for zero.
    pub fn max_l0(&self) -> Option<u32> {
        self.terms.keys().map(|i| i.lambda.zeros()).max()
    }

    /// The single term `c * w`, if that is the whole vector.
    pub fn as_cyclic_multiple(&self) -> Option<Rational> {
        if self.terms.len() == 1 {
            let (idx, c) = self.terms.iter().next().unwrap();
            if idx.is_cyclic() {
                return Some(c.clone());
            }
        }
        None
    }
}

impl Add<&ModuleVector> for &ModuleVector {
    type Output = ModuleVector;
    fn add(self, rhs: &ModuleVector) -> ModuleVector {
        assert_eq!(self.spec, rhs.spec, "module spec mismatch");
        let mut out = self.clone();
        for (i, c) in rhs.terms() {
            out.add_term(i.clone(), c.clone());
        }
        out
    }
}

impl Sub<&ModuleVector> for &ModuleVector {
    type Output = ModuleVector;
    fn sub(self, rhs: &ModuleVector) -> ModuleVector {
        assert_eq!(self.spec, rhs.spec, "module spec mismatch");
        let mut out = self.clone();
        for (i, c) in rhs.terms() {
            out.add_term(i.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &ModuleVector {
    type Output = ModuleVector;
    fn neg(self) -> ModuleVector {
        self.scaled(&rat(-1))
    }
}

/// `make_psi` of the operations table.
pub fn make_psi(l1: Rational, l2: Rational, i1: Rational) -> WhittakerMap {
    WhittakerMap::new(l1, l2, i1)
}

/// Action of a single generator.
pub fn act(g: Generator, v: &ModuleVector) -> ModuleVector {
    let mut out = ModuleVector::zero(v.spec().clone());
    for (idx, c) in v.terms() {
        accumulate_scaled(&mut out, &act_on_basis(v.spec(), g, idx), c);
    }
    out
}

/// Linear extension of [`act`] to Lie elements.
pub fn act_lie(x: &LieElement, v: &ModuleVector) -> ModuleVector {
    let mut out = ModuleVector::zero(v.spec().clone());
    for (g, c) in x.terms() {
        accumulate_scaled(&mut out, &act(g, v), c);
    }
    out
}

/// Action of an enveloping-algebra element: factor by factor, rightmost
/// factor first.
pub fn act_uea(u: &UEAElement, v: &ModuleVector) -> ModuleVector {
    let mut out = ModuleVector::zero(v.spec().clone());
    for (m, c) in u.terms() {
        let mut cur = v.clone();
        for &g in m.factors().iter().rev() {
            cur = act(g, &cur);
        }
        accumulate_scaled(&mut out, &cur, c);
    }
    out
}

/// The dot action `g . v = g v - psi(g) v`. For `g` outside `n+` the
/// `psi` value is zero and this is the plain action.
pub fn defect(g: Generator, v: &ModuleVector) -> ModuleVector {
    let psi_g = v.spec().psi().value(g);
    let mut out = act(g, v);
    if !psi_g.is_zero() {
        for (idx, c) in v.terms() {
            out.add_term(idx.clone(), -(c * &psi_g));
        }
    }
    out
}

/// Evaluate the central exponents of a universal-module vector at `xi`,
/// landing in the reduced module.
pub fn evaluate_central(v: &ModuleVector, xi: &CentralCharacter) -> Result<ModuleVector> {
    let psi = match v.spec() {
        ModuleSpec::Universal(psi) => psi.clone(),
        ModuleSpec::Reduced(..) => {
            return Err(Error::Usage(
                "evaluate_central expects a universal-module vector".into(),
            ))
        }
    };
    let spec = ModuleSpec::Reduced(psi, xi.clone());
    let mut out = ModuleVector::zero(spec);
    for (idx, c) in v.terms() {
        let scale = central_scale(xi, &idx.t);
        let reduced = BasisIndex {
            t: [0; 4],
            lambda: idx.lambda.clone(),
            mu: idx.mu.clone(),
        };
        out.add_term(reduced, c * scale);
    }
    Ok(out)
}

/// Deterministic enumeration of basis indices with `|lambda + mu| <= degree`,
/// `lambda(0) <= l0` and (universal modules only) `|t| <= zdeg`.
pub fn basis_enumerate(spec: &ModuleSpec, degree: u32, l0: u32, zdeg: u32) -> Vec<BasisIndex> {
    let pairs = crate::partitions::enumerate_pairs(degree, l0);
    let ts: Vec<[u32; 4]> = if spec.is_universal() {
        central_monomials(zdeg)
    } else {
        vec![[0; 4]]
    };
    let mut out = Vec::with_capacity(pairs.len() * ts.len());
    for (lambda, mu) in pairs {
        for t in &ts {
            out.push(BasisIndex {
                t: *t,
                lambda: lambda.clone(),
                mu: mu.clone(),
            });
        }
    }
    out
}

/// Central exponent vectors with `|t| <= zdeg`, graded by total degree,
/// `z0`-heavy first within a grade.
pub fn central_monomials(zdeg: u32) -> Vec<[u32; 4]> {
    let mut out = Vec::new();
    for total in 0..=zdeg {
        for t0 in (0..=total).rev() {
            for t1 in (0..=total - t0).rev() {
                for t2 in (0..=total - t0 - t1).rev() {
                    let t3 = total - t0 - t1 - t2;
                    out.push([t0, t1, t2, t3]);
                }
            }
        }
    }
    out
}

fn accumulate_scaled(out: &mut ModuleVector, v: &ModuleVector, c: &Rational) {
    for (idx, x) in v.terms() {
        out.add_term(idx.clone(), x * c);
    }
}

fn central_scale(xi: &CentralCharacter, t: &[u32; 4]) -> Rational {
    let mut scale = Rational::one();
    for (slot, &e) in t.iter().enumerate() {
        for _ in 0..e {
            scale *= xi.value(slot);
        }
    }
    scale
}

/// Action of one generator on one basis vector.
///
/// Three cases:
/// - centrals bump a `t` exponent (universal) or multiply by `xi` (reduced);
/// - generators of non-positive index stay inside `U(b-)`, so prepending and
///   straightening lands directly back in the basis;
/// - positive-index generators use `g (u w) = [g, u] w + psi(g) u w` with the
///   bracket expanded as a derivation, each substituted word evaluated
///   recursively (the recursion is on strictly shorter words).
fn act_on_basis(spec: &ModuleSpec, g: Generator, idx: &BasisIndex) -> ModuleVector {
    if let Some(slot) = g.central_slot() {
        return match spec {
            ModuleSpec::Universal(_) => {
                let mut t = idx.t;
                t[slot] += 1;
                ModuleVector::basis(
                    spec.clone(),
                    BasisIndex {
                        t,
                        lambda: idx.lambda.clone(),
                        mu: idx.mu.clone(),
                    },
                )
            }
            ModuleSpec::Reduced(_, xi) => {
                ModuleVector::basis(spec.clone(), idx.clone()).scaled(xi.value(slot))
            }
        };
    }

    let word = idx.word();
    let mut out = ModuleVector::zero(spec.clone());

    if g.index() <= 0 {
        let mut full = Vec::with_capacity(word.len() + 1);
        full.push(g);
        full.extend_from_slice(&word);
        for (m, c) in normal_form(&Word(full)).terms() {
            let sub = BasisIndex::from_monomial(m)
                .expect("straightening a b- word stays in b-");
            add_with_central(&mut out, sub, c.clone());
        }
    } else {
        // psi(g) u w
        out.add_term(
            BasisIndex {
                t: [0; 4],
                lambda: idx.lambda.clone(),
                mu: idx.mu.clone(),
            },
            spec.psi().value(g),
        );
        // [g, u] w as a sum over factor substitutions
        for i in 0..word.len() {
            for (h, c) in bracket_gen(g, word[i]).terms() {
                let mut sub = Vec::with_capacity(word.len());
                sub.extend_from_slice(&word[..i]);
                sub.push(h);
                sub.extend_from_slice(&word[i + 1..]);
                let evaluated = eval_word(spec, &sub);
                accumulate_scaled(&mut out, &evaluated, c);
            }
        }
    }

    // multiply the original central part back in; it commutes with g
    apply_central_exponents(spec, &mut out, &idx.t)
}

/// Evaluate a word of generators on the cyclic vector, rightmost factor
/// first.
fn eval_word(spec: &ModuleSpec, factors: &[Generator]) -> ModuleVector {
    let mut v = ModuleVector::cyclic(spec.clone());
    for &g in factors.iter().rev() {
        if v.is_zero() {
            break;
        }
        v = act(g, &v);
    }
    v
}

fn add_with_central(out: &mut ModuleVector, idx: BasisIndex, c: Rational) {
    match out.spec().clone() {
        ModuleSpec::Universal(_) => out.add_term(idx, c),
        ModuleSpec::Reduced(_, xi) => {
            let scale = central_scale(&xi, &idx.t);
            out.add_term(
                BasisIndex {
                    t: [0; 4],
                    lambda: idx.lambda,
                    mu: idx.mu,
                },
                c * scale,
            );
        }
    }
}

fn apply_central_exponents(
    spec: &ModuleSpec,
    v: &mut ModuleVector,
    t: &[u32; 4],
) -> ModuleVector {
    if *t == [0; 4] {
        return std::mem::replace(v, ModuleVector::zero(spec.clone()));
    }
    match spec {
        ModuleSpec::Universal(_) => {
            let mut out = ModuleVector::zero(spec.clone());
            for (idx, c) in v.terms() {
                let mut shifted = idx.clone();
                for (dst, add) in shifted.t.iter_mut().zip(t) {
                    *dst += add;
                }
                out.add_term(shifted, c.clone());
            }
            out
        }
        ModuleSpec::Reduced(_, xi) => v.scaled(&central_scale(xi, t)),
    }
}
