//! Recursive-descent parser for the text grammar
//!
//! ```text
//! forest     := "1" | tree (" " tree)*
//! tree       := "[" forest? "]_" INT
//! word       := "ε" | DIGIT+            (d ≤ 9)
//!             | "e" INT ("." INT)*
//! multiindex := "(" INT ("," INT)* ")"
//! lincomb    := term (("+"|"-") term)*
//! term       := RATIONAL "*" atom | atom | RATIONAL
//! ```
//!
//! A bare `RATIONAL` term stands for that multiple of the unit (for digit words it is
//! read as a word instead).

use super::{Forest, Letter, MultiIndex, Tree, Word, MAX_DIM};
use crate::linalg::LinComb;
use crate::scalar::{int, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("label {label} at byte {offset} is outside [1, {dim}]")]
    LabelOutOfRange { label: u64, dim: usize, offset: usize },
    #[error("dimension {0} is outside [1, 64]")]
    BadDimension(usize),
}

/// Which basis a piece of text is read in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Word,
    Forest,
    MultiIndex,
}

/// A parsed linear combination tagged with its basis kind.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyComb {
    Word(LinComb<Word>),
    Forest(LinComb<Forest>),
    Poly(LinComb<MultiIndex>),
}

impl AnyComb {
    pub fn kind(&self) -> Kind {
        match self {
            AnyComb::Word(_) => Kind::Word,
            AnyComb::Forest(_) => Kind::Forest,
            AnyComb::Poly(_) => Kind::MultiIndex,
        }
    }

    pub fn render(&self, dim: usize, float: bool) -> String {
        match self {
            AnyComb::Word(x) => x.render(dim, float),
            AnyComb::Forest(x) => x.render(dim, float),
            AnyComb::Poly(x) => x.render(dim, float),
        }
    }

    pub fn to_json(&self, dim: usize, float: bool) -> serde_json::Value {
        match self {
            AnyComb::Word(x) => x.to_json(dim, float),
            AnyComb::Forest(x) => x.to_json(dim, float),
            AnyComb::Poly(x) => x.to_json(dim, float),
        }
    }
}

pub fn parse_expr(text: &str, kind: Kind, dim: usize) -> Result<AnyComb, ParseError> {
    if dim == 0 || dim > MAX_DIM {
        return Err(ParseError::BadDimension(dim));
    }
    let mut p = Parser { src: text, pos: 0, dim };
    let out = match kind {
        Kind::Word => AnyComb::Word(p.lincomb(kind, Word::empty(), |p| p.word())?),
        Kind::Forest => AnyComb::Forest(p.lincomb(kind, Forest::unit(), |p| p.forest_atom())?),
        Kind::MultiIndex => {
            AnyComb::Poly(p.lincomb(kind, MultiIndex::zero(dim), |p| p.multiindex())?)
        }
    };
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

/// Parses a single forest (no coefficients).
pub fn parse_forest(text: &str, dim: usize) -> Result<Forest, ParseError> {
    single(text, dim, |p| p.forest_atom())
}

pub fn parse_word(text: &str, dim: usize) -> Result<Word, ParseError> {
    single(text, dim, |p| p.word())
}

pub fn parse_multiindex(text: &str, dim: usize) -> Result<MultiIndex, ParseError> {
    single(text, dim, |p| p.multiindex())
}

fn single<T>(
    text: &str,
    dim: usize,
    f: impl FnOnce(&mut Parser) -> Result<T, ParseError>,
) -> Result<T, ParseError> {
    if dim == 0 || dim > MAX_DIM {
        return Err(ParseError::BadDimension(dim));
    }
    let mut p = Parser { src: text, pos: 0, dim };
    p.skip_ws();
    let v = f(&mut p)?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    dim: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, message: &str) -> ParseError {
        ParseError::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c)))
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    fn uint(&mut self) -> Result<u64, ParseError> {
        let at = self.pos;
        let d = self.digits().ok_or_else(|| self.err("expected an integer"))?;
        d.parse::<u64>().map_err(|_| ParseError::Syntax {
            offset: at,
            message: "integer too large".into(),
        })
    }

    fn label(&mut self) -> Result<Letter, ParseError> {
        let at = self.pos;
        let v = self.uint()?;
        if v == 0 || v as usize > self.dim {
            return Err(ParseError::LabelOutOfRange {
                label: v,
                dim: self.dim,
                offset: at,
            });
        }
        Ok(v as Letter)
    }

    /// Reads `-?INT(/INT)?`; on failure the position is unchanged.
    fn rational(&mut self) -> Option<(Scalar, bool)> {
        let start = self.pos;
        let negative = self.eat('-');
        let Some(num) = self.digits() else {
            self.pos = start;
            return None;
        };
        let num: BigInt = num.parse().ok()?;
        let mut plain = !negative;
        let mut value = BigRational::from_integer(if negative { -num } else { num });
        let before_slash = self.pos;
        if self.eat('/') {
            match self.digits() {
                Some(den) => {
                    let den: BigInt = den.parse().ok()?;
                    if den == BigInt::from(0) {
                        self.pos = start;
                        return None;
                    }
                    value /= BigRational::from_integer(den);
                    plain = false;
                }
                None => self.pos = before_slash,
            }
        }
        Some((value, plain))
    }

    fn lincomb<B: Ord + Clone>(
        &mut self,
        kind: Kind,
        unit: B,
        mut atom: impl FnMut(&mut Self) -> Result<B, ParseError>,
    ) -> Result<LinComb<B>, ParseError> {
        let mut out = LinComb::zero();
        self.skip_ws();
        let mut sign = int(1);
        if self.eat('-') {
            sign = int(-1);
            self.skip_ws();
        } else if self.eat('+') {
            self.skip_ws();
        }
        loop {
            let (c, b) = self.term(kind, &unit, &mut atom)?;
            out.add_term(b, sign * c);
            self.skip_ws();
            if self.eat('+') {
                sign = int(1);
            } else if self.eat('-') {
                sign = int(-1);
            } else {
                break;
            }
            self.skip_ws();
        }
        Ok(out)
    }

    fn term<B: Clone>(
        &mut self,
        kind: Kind,
        unit: &B,
        atom: &mut impl FnMut(&mut Self) -> Result<B, ParseError>,
    ) -> Result<(Scalar, B), ParseError> {
        let start = self.pos;
        if let Some((c, plain)) = self.rational() {
            let after = self.pos;
            self.skip_ws();
            if self.eat('*') {
                self.skip_ws();
                return Ok((c, atom(self)?));
            }
            if kind == Kind::Word && plain && self.dim <= 9 {
                self.pos = start;
                return Ok((Scalar::one(), atom(self)?));
            }
            self.pos = after;
            return Ok((c, unit.clone()));
        }
        Ok((Scalar::one(), atom(self)?))
    }

    fn forest_atom(&mut self) -> Result<Forest, ParseError> {
        if self.peek() == Some('1') && !self.rest()[1..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
            return Ok(Forest::unit());
        }
        let mut trees = vec![self.tree()?];
        loop {
            let save = self.pos;
            self.skip_ws();
            if self.peek() == Some('[') {
                trees.push(self.tree()?);
            } else {
                self.pos = save;
                break;
            }
        }
        Ok(Forest::from_trees(trees))
    }

    fn tree(&mut self) -> Result<Tree, ParseError> {
        self.expect('[')?;
        self.skip_ws();
        let children = if self.peek() == Some(']') {
            Forest::unit()
        } else {
            self.forest_atom()?
        };
        self.skip_ws();
        self.expect(']')?;
        self.expect('_')?;
        let label = self.label()?;
        Ok(Tree::new(label, children))
    }

    fn word(&mut self) -> Result<Word, ParseError> {
        if self.eat('ε') {
            return Ok(Word::empty());
        }
        if self.eat('e') {
            let mut letters = vec![self.label()?];
            while self.eat('.') {
                letters.push(self.label()?);
            }
            return Ok(Word::new(letters));
        }
        if self.dim > 9 {
            return Err(self.err("digit words need d ≤ 9; use the e1.2.3 form"));
        }
        let start = self.pos;
        let digits = self.digits().ok_or_else(|| self.err("expected a word"))?;
        let mut letters = Vec::with_capacity(digits.len());
        for (k, ch) in digits.chars().enumerate() {
            let v = ch.to_digit(10).unwrap() as usize;
            if v == 0 || v > self.dim {
                return Err(ParseError::LabelOutOfRange {
                    label: v as u64,
                    dim: self.dim,
                    offset: start + k,
                });
            }
            letters.push(v as Letter);
        }
        Ok(Word::new(letters))
    }

    fn multiindex(&mut self) -> Result<MultiIndex, ParseError> {
        self.expect('(')?;
        let mut entries = Vec::new();
        loop {
            self.skip_ws();
            let v = self.uint()?;
            entries.push(u32::try_from(v).map_err(|_| self.err("exponent too large"))?);
            self.skip_ws();
            if !self.eat(',') {
                break;
            }
        }
        self.expect(')')?;
        if entries.len() != self.dim {
            return Err(self.err(&format!(
                "multi-index has {} entries but d = {}",
                entries.len(),
                self.dim
            )));
        }
        Ok(MultiIndex::new(entries))
    }
}
