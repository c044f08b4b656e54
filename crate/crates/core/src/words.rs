//! Free-group words and finite group presentations.
//!
//! Generators are 1-based indices everywhere in the library; names only
//! exist on a [`GroupPresentation`] for parsing and printing.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// A single run `x_gen^exp` inside a word. `exp` is never zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub gen: usize,
    pub exp: i64,
}

/// A freely reduced word in a free group, stored as maximal runs.
///
/// Because runs are merged and cancelled on construction, two words are equal
/// letter-by-letter exactly when their run lists are equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    runs: Vec<Syllable>,
}

impl Word {
    pub fn identity() -> Self {
        Word { runs: Vec::new() }
    }

    pub fn generator(gen: usize) -> Self {
        Word::power(gen, 1)
    }

    pub fn power(gen: usize, exp: i64) -> Self {
        assert!(gen >= 1, "generator indices are 1-based");
        let mut w = Word::identity();
        w.push(gen, exp);
        w
    }

    /// Builds a word from signed letters: `3` is `x_3`, `-3` is `x_3^{-1}`.
    pub fn from_letters(letters: &[i64]) -> Self {
        let mut w = Word::identity();
        for &l in letters {
            assert!(l != 0, "letter 0 is not a generator");
            w.push(l.unsigned_abs() as usize, l.signum());
        }
        w
    }

    pub fn from_syllables<I: IntoIterator<Item = (usize, i64)>>(syllables: I) -> Self {
        let mut w = Word::identity();
        for (g, e) in syllables {
            w.push(g, e);
        }
        w
    }

    /// Appends `x_gen^exp`, cancelling against the tail.
    fn push(&mut self, gen: usize, exp: i64) {
        if exp == 0 {
            return;
        }
        if let Some(last) = self.runs.last_mut() {
            if last.gen == gen {
                last.exp += exp;
                if last.exp == 0 {
                    self.runs.pop();
                }
                return;
            }
        }
        self.runs.push(Syllable { gen, exp });
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.runs
    }

    /// Letters as `(generator, ±1)` pairs.
    pub fn letters(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.runs
            .iter()
            .flat_map(|s| std::iter::repeat((s.gen, s.exp.signum())).take(s.exp.unsigned_abs() as usize))
    }

    /// Number of letters.
    pub fn len(&self) -> usize {
        self.runs.iter().map(|s| s.exp.unsigned_abs() as usize).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn max_generator(&self) -> usize {
        self.runs.iter().map(|s| s.gen).max().unwrap_or(0)
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for s in &other.runs {
            w.push(s.gen, s.exp);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word {
            runs: self.runs.iter().rev().map(|s| Syllable { gen: s.gen, exp: -s.exp }).collect(),
        }
    }

    pub fn pow(&self, exp: i64) -> Word {
        let base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..exp.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    /// `[a,b] = a b a^-1 b^-1`.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        free_reduce(&[
            WordFactor::Word(a.clone()),
            WordFactor::Word(b.clone()),
            WordFactor::Inverse(a.clone()),
            WordFactor::Inverse(b.clone()),
        ])
    }

    /// Signed number of occurrences of generator `gen`.
    pub fn exponent_sum(&self, gen: usize) -> i64 {
        self.runs.iter().filter(|s| s.gen == gen).map(|s| s.exp).sum()
    }

    /// Renders the word with the given generator names; the identity prints as `1`.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        WordDisplay { word: self, names: Some(names) }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        WordDisplay { word: self, names: None }.fmt(f)
    }
}

struct WordDisplay<'a> {
    word: &'a Word,
    names: Option<&'a [String]>,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_identity() {
            return write!(f, "1");
        }
        for (i, s) in self.word.runs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match self.names.and_then(|n| n.get(s.gen - 1)) {
                Some(name) => write!(f, "{name}")?,
                None => write!(f, "x{}", s.gen)?,
            }
            if s.exp != 1 {
                write!(f, "^{}", s.exp)?;
            }
        }
        Ok(())
    }
}

/// A factor in a product handed to [`free_reduce`].
#[derive(Clone, Debug)]
pub enum WordFactor {
    Word(Word),
    Inverse(Word),
}

/// Freely reduced product of the factors, inverting those marked as such.
pub fn free_reduce(product: &[WordFactor]) -> Word {
    let mut out = Word::identity();
    for f in product {
        match f {
            WordFactor::Word(w) => {
                for s in &w.runs {
                    out.push(s.gen, s.exp);
                }
            }
            WordFactor::Inverse(w) => {
                for s in w.runs.iter().rev() {
                    out.push(s.gen, -s.exp);
                }
            }
        }
    }
    out
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("generator index {index} out of range 1..={count}")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("presentation needs at least one generator")]
    NoGenerators,
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
}

/// Exponent sum of generator `gen` in `w`, checked against the generator count.
pub fn exponent_sum(w: &Word, gen: usize, gen_count: usize) -> Result<i64, WordError> {
    if gen == 0 || gen > gen_count {
        return Err(WordError::IndexOutOfRange { index: gen, count: gen_count });
    }
    Ok(w.exponent_sum(gen))
}

/// A finite presentation `<x_1..x_n | r_1..r_m>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    names: Vec<String>,
    relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(names: Vec<String>, relators: Vec<Word>) -> Result<Self, WordError> {
        if names.is_empty() {
            return Err(WordError::NoGenerators);
        }
        let mut seen = HashMap::new();
        for n in &names {
            if seen.insert(n.as_str(), ()).is_some() {
                return Err(WordError::DuplicateName(n.clone()));
            }
        }
        for r in &relators {
            let g = r.max_generator();
            if g > names.len() {
                return Err(WordError::IndexOutOfRange { index: g, count: names.len() });
            }
        }
        Ok(GroupPresentation { names, relators })
    }

    /// Generators named `x1..xn`.
    pub fn with_default_names(gen_count: usize, relators: Vec<Word>) -> Result<Self, WordError> {
        Self::new((1..=gen_count).map(|i| format!("x{i}")).collect(), relators)
    }

    pub fn gen_count(&self) -> usize {
        self.names.len()
    }

    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name).map(|i| i + 1)
    }

    /// Free product: generators of `other` are shifted past ours.
    pub fn free_product(&self, other: &GroupPresentation) -> Result<Self, WordError> {
        let shift = self.gen_count();
        let mut names = self.names.clone();
        names.extend(other.names.iter().cloned());
        let mut rels = self.relators.clone();
        rels.extend(other.relators.iter().map(|r| shift_word(r, shift)));
        GroupPresentation::new(names, rels)
    }

    /// Direct product: the free product plus every cross commutator.
    pub fn direct_product(&self, other: &GroupPresentation) -> Result<Self, WordError> {
        let shift = self.gen_count();
        let mut p = self.free_product(other)?;
        for a in 1..=shift {
            for b in 1..=other.gen_count() {
                p.relators.push(Word::commutator(&Word::generator(a), &Word::generator(b + shift)));
            }
        }
        Ok(p)
    }
}

fn shift_word(w: &Word, shift: usize) -> Word {
    Word::from_syllables(w.syllables().iter().map(|s| (s.gen + shift, s.exp)))
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gens: {}; rels:", self.names.join(" "))?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            if r.is_identity() {
                // an empty relator has no factor syntax; x^0 parses back to the identity
                write!(f, " {}^0", self.names[0])?;
            } else {
                write!(f, " {}", r.display_with(&self.names))?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("unknown generator `{name}` at line {line}, column {column}")]
    UnknownGenerator { name: String, line: usize, column: usize },
    #[error("empty generator list")]
    NoGenerators,
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
}

impl ParseError {
    /// `(line, column)` of the error, when it has one.
    pub fn location(&self) -> Option<(usize, usize)> {
        match self {
            ParseError::Syntax { line, column, .. } | ParseError::UnknownGenerator { line, column, .. } => {
                Some((*line, *column))
            }
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Colon,
    Semi,
    Caret,
    Comma,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let single = |t: Tok| Token { tok: t, line: tl, column: tc };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => {}
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            ':' => out.push(single(Tok::Colon)),
            ';' => out.push(single(Tok::Semi)),
            '^' => out.push(single(Tok::Caret)),
            ',' => out.push(single(Tok::Comma)),
            '[' => out.push(single(Tok::LBracket)),
            ']' => out.push(single(Tok::RBracket)),
            '(' => out.push(single(Tok::LParen)),
            ')' => out.push(single(Tok::RParen)),
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                col += i - start;
                out.push(Token { tok: Tok::Ident(s), line: tl, column: tc });
                continue;
            }
            c if c.is_ascii_digit() || c == '-' || c == '+' => {
                let start = i;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                col += i - start;
                let v = s.parse::<i64>().map_err(|_| ParseError::Syntax {
                    line: tl,
                    column: tc,
                    message: format!("invalid integer `{s}`"),
                })?;
                out.push(Token { tok: Tok::Int(v), line: tl, column: tc });
                continue;
            }
            other => {
                return Err(ParseError::Syntax {
                    line: tl,
                    column: tc,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
        i += 1;
        col += 1;
    }
    out.push(Token { tok: Tok::Eof, line, column: col });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    names: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        let t = self.peek();
        Err(ParseError::Syntax { line: t.line, column: t.column, message: message.into() })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek().tok == tok {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek().tok, Tok::Ident(_) | Tok::LBracket | Tok::LParen)
    }

    // word := factor+
    fn word(&mut self) -> Result<Word, ParseError> {
        if !self.starts_factor() {
            return self.err("expected a word");
        }
        let mut w = Word::identity();
        while self.starts_factor() {
            let f = self.factor()?;
            w = w.mul(&f);
        }
        Ok(w)
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        if self.peek().tok != Tok::Caret {
            return Ok(1);
        }
        self.bump();
        match self.peek().tok.clone() {
            Tok::Int(v) => {
                self.bump();
                Ok(v)
            }
            _ => self.err("expected integer exponent after `^`"),
        }
    }

    fn factor(&mut self) -> Result<Word, ParseError> {
        let t = self.bump();
        let base = match t.tok {
            Tok::Ident(name) => match self.names.iter().position(|n| *n == name) {
                Some(i) => Word::generator(i + 1),
                None => return Err(ParseError::UnknownGenerator { name, line: t.line, column: t.column }),
            },
            Tok::LBracket => {
                let a = self.word()?;
                self.expect(Tok::Comma, "`,` inside commutator")?;
                let b = self.word()?;
                self.expect(Tok::RBracket, "`]`")?;
                Word::commutator(&a, &b)
            }
            Tok::LParen => {
                let a = self.word()?;
                self.expect(Tok::RParen, "`)`")?;
                a
            }
            _ => {
                self.pos -= 1;
                return self.err("expected a generator, `[` or `(`");
            }
        };
        let e = self.exponent()?;
        Ok(base.pow(e))
    }
}

/// Parses `gens: a b c; rels: w1; w2; ...`.
///
/// Factors are generator names with an optional integer exponent, commutators
/// `[u,v]` (expanded as `u v u^-1 v^-1`) and parenthesised groups, which also
/// accept exponents. `#` starts a comment running to the end of the line.
pub fn parse_presentation(text: &str) -> Result<GroupPresentation, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0, names: &[] };
    match p.peek().tok.clone() {
        Tok::Ident(s) if s == "gens" => {
            p.bump();
        }
        _ => return p.err("expected `gens:`"),
    }
    p.expect(Tok::Colon, "`:` after `gens`")?;
    let mut names: Vec<String> = Vec::new();
    while let Tok::Ident(s) = p.peek().tok.clone() {
        p.bump();
        if names.contains(&s) {
            return Err(ParseError::DuplicateName(s));
        }
        names.push(s);
    }
    if names.is_empty() {
        return Err(ParseError::NoGenerators);
    }
    p.expect(Tok::Semi, "`;` after generator list")?;
    match p.peek().tok.clone() {
        Tok::Ident(s) if s == "rels" => {
            p.bump();
        }
        _ => return p.err("expected `rels:`"),
    }
    p.expect(Tok::Colon, "`:` after `rels`")?;
    p.names = &names;
    let mut relators = Vec::new();
    loop {
        match p.peek().tok {
            Tok::Eof => break,
            Tok::Semi => {
                p.bump();
            }
            _ => {
                relators.push(p.word()?);
                match p.peek().tok {
                    Tok::Semi | Tok::Eof => {}
                    _ => return p.err("expected `;` between relators"),
                }
            }
        }
    }
    drop(p);
    GroupPresentation::new(names, relators).map_err(|e| match e {
        WordError::DuplicateName(n) => ParseError::DuplicateName(n),
        _ => ParseError::NoGenerators,
    })
}

/// Parses a single word against known generator names.
pub fn parse_word(text: &str, names: &[String]) -> Result<Word, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0, names };
    let w = p.word()?;
    if p.peek().tok != Tok::Eof {
        return p.err("trailing input after word");
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Word {
        Word::generator(i)
    }

    #[test]
    fn nested_commutator_parses_to_ten_letters() {
        let p = parse_presentation("gens: x y; rels: [x,[x,y]]").unwrap();
        assert_eq!(p.gen_count(), 2);
        assert_eq!(p.relator_count(), 1);
        let r = &p.relators()[0];
        assert_eq!(r.len(), 10);
        assert_eq!(*r, Word::from_letters(&[1, 1, 2, -1, -2, -1, 2, 1, -2, -1]));
    }

    #[test]
    fn free_group_has_no_relators() {
        let p = parse_presentation("gens: x; rels:").unwrap();
        assert_eq!(p.gen_count(), 1);
        assert_eq!(p.relator_count(), 0);
    }

    #[test]
    fn explicit_letters_match_commutator() {
        let p = parse_presentation("gens: x y; rels: x y x^-1 y^-1").unwrap();
        assert_eq!(p.relators()[0], Word::commutator(&x(1), &x(2)));
    }

    #[test]
    fn parse_errors_carry_locations() {
        let e = parse_presentation("gens: x y;\nrels: x z").unwrap_err();
        assert_eq!(e, ParseError::UnknownGenerator { name: "z".into(), line: 2, column: 9 });
        let e = parse_presentation("gens: ; rels: x").unwrap_err();
        assert_eq!(e, ParseError::NoGenerators);
        let e = parse_presentation("gens: x y; rels: [x y]").unwrap_err();
        assert!(matches!(e, ParseError::Syntax { line: 1, column: 22, .. }), "{e:?}");
        assert!(parse_presentation("gens: x x; rels:").is_err());
    }

    #[test]
    fn multiple_relators_and_powers() {
        let p = parse_presentation("gens: a b; rels: a^2; (a b)^3; b^-2 a").unwrap();
        assert_eq!(p.relator_count(), 3);
        assert_eq!(p.relators()[1].len(), 6);
        assert_eq!(p.relators()[2], Word::from_letters(&[-2, -2, 1]));
    }

    #[test]
    fn cancellation() {
        let w = free_reduce(&[WordFactor::Word(x(1)), WordFactor::Inverse(x(1))]);
        assert!(w.is_identity());
        let c = Word::commutator(&x(1), &x(2));
        assert!(free_reduce(&[WordFactor::Word(c.clone()), WordFactor::Inverse(c.clone())]).is_identity());
        assert_eq!(Word::commutator(&x(1), &c).len(), 10);
    }

    #[test]
    fn exponent_sums() {
        let w = Word::from_syllables([(1, 2), (2, 1), (3, 3), (4, 5)]);
        assert_eq!(exponent_sum(&w, 4, 4), Ok(5));
        let c = Word::commutator(&x(1), &x(2));
        assert_eq!(c.exponent_sum(1), 0);
        assert_eq!(c.exponent_sum(2), 0);
        assert_eq!(Word::identity().exponent_sum(1), 0);
        assert!(exponent_sum(&w, 5, 4).is_err());
        assert!(exponent_sum(&w, 0, 4).is_err());
    }

    #[test]
    fn display_round_trip() {
        let p = parse_presentation("gens: a b2 c_d; rels: [a,b2]^2 c_d^-3; a").unwrap();
        let q = parse_presentation(&p.to_string()).unwrap();
        assert_eq!(p, q);
    }
}
