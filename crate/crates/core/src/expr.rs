//! The element grammar: parsing and canonical printing.
//!
//! ```text
//! element := ['-'] term { ('+'|'-') term }
//! term    := coeff ['*' factor { '*' factor }] | factor { '*' factor }
//! factor  := gen ['^' nat] | 'w'
//! gen     := 'L[' int ']' | 'I[' int ']' | 'z0' | 'z1' | 'z2' | 'z3'
//! coeff   := int ['/' nat]
//! ```
//!
//! Whitespace is insignificant. `w` may appear at most once per term and
//! only as the final factor; its presence marks a module element, its
//! absence an enveloping-algebra element, and mixing the two in one element
//! is an error. `z0` and `I[0]` are the same generator.
//!
//! Printing is canonical: terms in basis-enumeration order, coefficients in
//! lowest terms, so `parse . format` is the identity.

use num::traits::{One, Signed, Zero};
use num::BigInt;

use crate::algebra::{Generator, LieElement};
use crate::error::{Error, Result};
use crate::modules::{act, BasisIndex, ModuleSpec, ModuleVector};
use crate::rational::Rational;
use crate::uea::{normal_form, PBWMonomial, UEAElement, Word};

/// A parsed element: either a formal sum of generator words (no `w`), or a
/// module vector (every term ended in `w`, evaluated against the module
/// spec).
#[derive(Debug, Clone)]
pub enum Element {
    Words(Vec<(Rational, Word)>),
    Vector(ModuleVector),
}

impl Element {
    /// The element as a module vector. Only the zero element converts from
    /// the `w`-less side.
    pub fn into_vector(self, spec: &ModuleSpec) -> Result<ModuleVector> {
        match self {
            Element::Vector(v) => Ok(v),
            Element::Words(terms) if terms.is_empty() => Ok(ModuleVector::zero(spec.clone())),
            Element::Words(_) => Err(Error::Usage(
                "expected a module element: every term must end in *w".into(),
            )),
        }
    }

    /// The element as a normal-ordered enveloping-algebra element.
    pub fn to_uea(&self) -> Result<UEAElement> {
        match self {
            Element::Words(terms) => {
                let mut out = UEAElement::zero();
                for (c, word) in terms {
                    for (m, x) in normal_form(word).terms() {
                        out.add_term(m.clone(), c * x);
                    }
                }
                Ok(out)
            }
            Element::Vector(_) => Err(Error::Usage(
                "expected an algebra element, found a module element (drop the *w)".into(),
            )),
        }
    }

    /// The element as a Lie element; every word must be a single generator.
    pub fn to_lie(&self) -> Result<LieElement> {
        match self {
            Element::Words(terms) => {
                let mut out = LieElement::zero();
                for (c, word) in terms {
                    if word.0.len() != 1 {
                        return Err(Error::Usage(
                            "expected a Lie element: one generator per term".into(),
                        ));
                    }
                    out.add_term(word.0[0], c.clone());
                }
                Ok(out)
            }
            Element::Vector(_) => Err(Error::Usage(
                "expected a Lie element, found a module element".into(),
            )),
        }
    }
}

/// Parse an element. Module elements (terms ending in `w`) are evaluated
/// in `spec`, which is therefore required for them.
pub fn parse_element(text: &str, spec: Option<&ModuleSpec>) -> Result<Element> {
    Parser::new(text).element(spec)
}

/// Parse a single bare generator, e.g. `L[-2]` or `z1`.
pub fn parse_generator(text: &str) -> Result<Generator> {
    let mut p = Parser::new(text);
    p.skip_ws();
    let g = p.generator()?;
    p.skip_ws();
    p.expect_eof()?;
    Ok(g)
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

#[derive(Debug, Clone, PartialEq)]
struct RawTerm {
    coeff: Rational,
    factors: Vec<(Generator, u32)>,
    has_w: bool,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Parser<'a> {
        Parser {
            text,
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        let mut line = 1;
        let mut col = 1;
        for b in &self.bytes[..self.pos.min(self.bytes.len())] {
            if *b == b'\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        Error::Syntax {
            line,
            col,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", b as char)))
        }
    }

    fn expect_eof(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos == self.bytes.len() {
            Ok(())
        } else {
            Err(self.err("unexpected trailing input"))
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        Ok(self.text[start..self.pos]
            .parse()
            .expect("digit run parses as an integer"))
    }

    fn signed_int(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let negative = self.eat(b'-');
        self.skip_ws();
        let n = self.digits()?;
        Ok(if negative { -n } else { n })
    }

    fn generator(&mut self) -> Result<Generator> {
        match self.peek() {
            Some(kind @ (b'L' | b'I')) => {
                self.bump();
                self.skip_ws();
                self.expect(b'[')?;
                let n = self.signed_int()?;
                let k: i64 = num::ToPrimitive::to_i64(&n)
                    .ok_or_else(|| self.err("index out of range"))?;
                self.skip_ws();
                self.expect(b']')?;
                Ok(if kind == b'L' {
                    Generator::L(k)
                } else {
                    Generator::I(k)
                })
            }
            Some(b'z') => {
                self.bump();
                match self.bump() {
                    Some(b'0') => Ok(Generator::I(0)),
                    Some(b @ b'1'..=b'3') => Ok(Generator::Z(b - b'0')),
                    _ => Err(self.err("z index must be 0, 1, 2 or 3")),
                }
            }
            _ => Err(self.err("expected a generator")),
        }
    }

    fn term(&mut self, leading_negative: bool) -> Result<RawTerm> {
        self.skip_ws();
        let mut coeff = Rational::one();
        let mut factors: Vec<(Generator, u32)> = Vec::new();
        let mut has_w = false;
        let mut explicit_coeff = false;

        let negative = leading_negative ^ self.eat(b'-');
        self.skip_ws();

        if matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            let numer = self.digits()?;
            let mut denom = BigInt::one();
            self.skip_ws();
            if self.eat(b'/') {
                self.skip_ws();
                denom = self.digits()?;
                if denom.is_zero() {
                    return Err(self.err("zero denominator"));
                }
            }
            coeff = Rational::new(numer, denom);
            explicit_coeff = true;
        }

        loop {
            self.skip_ws();
            if explicit_coeff || !factors.is_empty() || has_w {
                // factors after the first thing require a '*'
                let save = self.pos;
                self.skip_ws();
                if !self.eat(b'*') {
                    self.pos = save;
                    break;
                }
                self.skip_ws();
            } else if !matches!(self.peek(), Some(b'L') | Some(b'I') | Some(b'z') | Some(b'w')) {
                break;
            }
            if has_w {
                return Err(self.err("w must be the final factor of a term"));
            }
            if self.eat(b'w') {
                has_w = true;
                continue;
            }
            let g = self.generator()?;
            let mut exp = 1u32;
            self.skip_ws();
            if self.eat(b'^') {
                self.skip_ws();
                let e = self.digits()?;
                exp = num::ToPrimitive::to_u32(&e)
                    .ok_or_else(|| self.err("exponent out of range"))?;
            }
            factors.push((g, exp));
        }

        if !explicit_coeff && factors.is_empty() && !has_w {
            return Err(self.err("expected a term"));
        }
        if negative {
            coeff = -coeff;
        }
        Ok(RawTerm {
            coeff,
            factors,
            has_w,
        })
    }

    fn element(&mut self, spec: Option<&ModuleSpec>) -> Result<Element> {
        self.skip_ws();
        let mut terms = vec![self.term(false)?];
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    terms.push(self.term(false)?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    terms.push(self.term(true)?);
                }
                None => break,
                Some(b) => return Err(self.err(format!("unexpected '{}'", b as char))),
            }
        }

        let any_w = terms.iter().any(|t| t.has_w);
        let all_w = terms.iter().all(|t| t.has_w);
        if any_w && !all_w {
            return Err(Error::MixedElement);
        }

        if any_w {
            let spec = spec.ok_or_else(|| {
                Error::Usage("module elements need a module context (psi, xi)".into())
            })?;
            let mut out = ModuleVector::zero(spec.clone());
            for t in terms {
                if t.coeff.is_zero() {
                    continue;
                }
                let mut v = ModuleVector::cyclic(spec.clone());
                for &(g, exp) in t.factors.iter().rev() {
                    for _ in 0..exp {
                        v = act(g, &v);
                    }
                }
                out = &out + &v.scaled(&t.coeff);
            }
            Ok(Element::Vector(out))
        } else {
            let mut words = Vec::new();
            for t in terms {
                if t.coeff.is_zero() {
                    continue;
                }
                let mut gens = Vec::new();
                for (g, exp) in t.factors {
                    for _ in 0..exp {
                        gens.push(g);
                    }
                }
                words.push((t.coeff, Word(gens)));
            }
            Ok(Element::Words(words))
        }
    }
}

// ---------------------------------------------------------------------------
// printing

fn display_rank(g: Generator) -> (u8, i64) {
    match g {
        Generator::L(k) => (0, k),
        Generator::I(0) => (2, 4),
        Generator::I(k) => (1, k),
        Generator::Z(i) => (2, i as i64),
    }
}

/// Append one rendered term; handles signs and the `1*` elision.
fn push_term(out: &mut String, coeff: &Rational, body: Option<&str>) {
    let negative = coeff.is_negative();
    let mag = coeff.abs();
    if out.is_empty() {
        if negative {
            out.push('-');
        }
    } else if negative {
        out.push_str(" - ");
    } else {
        out.push_str(" + ");
    }
    match body {
        Some(b) if mag.is_one() => out.push_str(b),
        Some(b) => {
            out.push_str(&mag.to_string());
            out.push('*');
            out.push_str(b);
        }
        None => out.push_str(&mag.to_string()),
    }
}

fn push_factor(parts: &mut Vec<String>, g: &str, exp: u32) {
    if exp == 1 {
        parts.push(g.to_string());
    } else if exp > 1 {
        parts.push(format!("{g}^{exp}"));
    }
}

fn monomial_body(m: &PBWMonomial) -> Option<String> {
    let mut parts = Vec::new();
    let central = m.central();
    push_factor(&mut parts, "z0", central[0]);
    push_factor(&mut parts, "z1", central[1]);
    push_factor(&mut parts, "z2", central[2]);
    push_factor(&mut parts, "z3", central[3]);
    for (k, e) in m.l_exponents() {
        push_factor(&mut parts, &format!("L[{k}]"), e);
    }
    for (k, e) in m.i_exponents() {
        push_factor(&mut parts, &format!("I[{k}]"), e);
    }
    if parts.is_empty() {
        None
    } else {
        Some(parts.join("*"))
    }
}

/// Canonical text of a basis index, e.g. `z1*L[-2]*L[0]^2*I[-1]*w`.
pub fn format_basis_index(idx: &BasisIndex) -> String {
    let mut parts = Vec::new();
    push_factor(&mut parts, "z0", idx.t[0]);
    push_factor(&mut parts, "z1", idx.t[1]);
    push_factor(&mut parts, "z2", idx.t[2]);
    push_factor(&mut parts, "z3", idx.t[3]);
    let entries: Vec<(u32, u32)> = idx.lambda.iter().collect();
    for (k, e) in entries.into_iter().rev() {
        push_factor(&mut parts, &format!("L[{}]", -(k as i64)), e);
    }
    let entries: Vec<(u32, u32)> = idx.mu.iter().collect();
    for (k, e) in entries.into_iter().rev() {
        push_factor(&mut parts, &format!("I[{}]", -(k as i64)), e);
    }
    parts.push("w".to_string());
    parts.join("*")
}

/// Canonical text of a Lie element: `L` terms by ascending index, then `I`
/// terms, then the centrals `z1, z2, z3, z0`.
pub fn format_lie(x: &LieElement) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let mut terms: Vec<(Generator, &Rational)> = x.terms().collect();
    terms.sort_by_key(|(g, _)| display_rank(*g));
    let mut out = String::new();
    for (g, c) in terms {
        push_term(&mut out, c, Some(&g.to_string()));
    }
    out
}

/// Canonical text of an enveloping-algebra element.
pub fn format_uea(u: &UEAElement) -> String {
    if u.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (m, c) in u.terms() {
        push_term(&mut out, c, monomial_body(m).as_deref());
    }
    out
}

/// Canonical text of a module vector, terms in basis-enumeration order.
pub fn format_vector(v: &ModuleVector) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, c) in v.terms() {
        push_term(&mut out, c, Some(&format_basis_index(idx)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{bracket_gen, Generator::*};
    use crate::modules::{defect, make_psi, CentralCharacter};
    use crate::partitions::{Partition, Pseudopartition};
    use crate::rational::{rat, ratio};

    fn reduced_spec() -> ModuleSpec {
        ModuleSpec::reduced(
            make_psi(rat(2), rat(3), rat(5)),
            CentralCharacter::new([rat(1), rat(1), rat(1), rat(1)]),
        )
        .unwrap()
    }

    fn universal_spec() -> ModuleSpec {
        ModuleSpec::universal(make_psi(rat(2), rat(3), rat(5))).unwrap()
    }

    #[test]
    fn parses_basis_word() {
        let spec = universal_spec();
        let e = parse_element("L[-2]*L[0]^2*I[-1]*w", Some(&spec)).unwrap();
        let v = e.into_vector(&spec).unwrap();
        let expected = ModuleVector::basis(
            spec,
            BasisIndex {
                t: [0; 4],
                lambda: Pseudopartition::from_parts(&[0, 0, 2]),
                mu: Partition::from_parts(&[1]),
            },
        );
        assert_eq!(v, expected);
    }

    #[test]
    fn parses_two_term_vector() {
        let spec = universal_spec();
        let e = parse_element("3/2*z1*w - L[-1]*w", Some(&spec)).unwrap();
        let v = e.into_vector(&spec).unwrap();
        let mut expected = ModuleVector::zero(spec.clone());
        expected.add_term(
            BasisIndex {
                t: [0, 1, 0, 0],
                ..BasisIndex::default()
            },
            ratio(3, 2),
        );
        expected.add_term(
            BasisIndex {
                t: [0; 4],
                lambda: Pseudopartition::from_parts(&[1]),
                mu: Partition::new(),
            },
            rat(-1),
        );
        assert_eq!(v, expected);
    }

    #[test]
    fn rejects_mixed_kinds() {
        let spec = reduced_spec();
        let err = parse_element("L[1]*w + I[2]", Some(&spec));
        assert!(matches!(err, Err(Error::MixedElement)));
    }

    #[test]
    fn rejects_w_in_the_middle() {
        let spec = reduced_spec();
        assert!(parse_element("w*L[1]", Some(&spec)).is_err());
        assert!(parse_element("L[1]*w*w", Some(&spec)).is_err());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_element("L[-1] +* w", None) {
            Err(Error::Syntax { line, col, .. }) => {
                assert_eq!(line, 1);
                assert!(col > 1);
            }
            other => panic!("expected a syntax error, got {other:?}"),
        }
    }

    #[test]
    fn defect_formats_as_expected() {
        // format(defect(L_1, L_-1 w)) = "-2*L[0]*w"
        let spec = reduced_spec();
        let v = parse_element("L[-1]*w", Some(&spec))
            .unwrap()
            .into_vector(&spec)
            .unwrap();
        let d = defect(L(1), &v);
        assert_eq!(format_vector(&d), "-2*L[0]*w");
    }

    #[test]
    fn formats_zero() {
        let spec = reduced_spec();
        assert_eq!(format_vector(&ModuleVector::zero(spec)), "0");
        assert_eq!(format_uea(&UEAElement::zero()), "0");
        assert_eq!(format_lie(&LieElement::zero()), "0");
    }

    #[test]
    fn bracket_prints_centrals_last() {
        let b = bracket_gen(L(2), L(-2));
        assert_eq!(format_lie(&b), "-4*L[0] + 1/2*z1");
    }

    #[test]
    fn round_trips_vector_formatting() {
        let spec = universal_spec();
        // a handful of structured vectors
        let texts = [
            "w",
            "L[-1]*w",
            "z0^2*z3*L[-3]*L[0]*I[-2]^2*w",
            "5*w - 7/3*L[-1]*w + z1*I[-1]*w",
        ];
        for text in texts {
            let v = parse_element(text, Some(&spec))
                .unwrap()
                .into_vector(&spec)
                .unwrap();
            let printed = format_vector(&v);
            let back = parse_element(&printed, Some(&spec))
                .unwrap()
                .into_vector(&spec)
                .unwrap();
            assert_eq!(back, v, "round trip failed for {text}");
        }
    }

    #[test]
    fn round_trips_uea_formatting() {
        let words = ["L[1]*L[-1]", "I[1]*I[-1]*L[0]", "L[2]*L[-2] + 4*z2"];
        for text in words {
            let u = parse_element(text, None).unwrap().to_uea().unwrap();
            let printed = format_uea(&u);
            let back = parse_element(&printed, None).unwrap().to_uea().unwrap();
            assert_eq!(back, u, "round trip failed for {text}");
        }
    }

    #[test]
    fn parse_generator_accepts_bare_generators() {
        assert_eq!(parse_generator("L[-2]").unwrap(), L(-2));
        assert_eq!(parse_generator(" I[3] ").unwrap(), I(3));
        assert_eq!(parse_generator("z0").unwrap(), I(0));
        assert_eq!(parse_generator("z2").unwrap(), Z(2));
        assert!(parse_generator("z4").is_err());
        assert!(parse_generator("L[1]*L[2]").is_err());
    }

    #[test]
    fn scalar_terms_parse() {
        let e = parse_element("3/2", None).unwrap();
        let u = e.to_uea().unwrap();
        assert_eq!(format_uea(&u), "3/2");
        let zero = parse_element("0", None).unwrap();
        assert!(zero.to_uea().unwrap().is_zero());
        // "0" converts to the zero vector too
        let spec = reduced_spec();
        let z = parse_element("0", None).unwrap().into_vector(&spec).unwrap();
        assert!(z.is_zero());
    }
}
