//! Construction words for tensor representations.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr  := prod (('⊕' | '+') prod)*
//! prod  := atom (('⊗' | 'x') atom)*
//! atom  := 'V' | 'V*' | 'std' | 'dual'
//!        | ('Sym' | 'sym' | 'S') '^' k '(' expr ')'
//!        | ('Alt' | 'alt' | 'Λ' | 'wedge') '^' k '(' expr ')'
//!        | 'tensor' '(' expr ',' expr ')' | 'sum' '(' expr ',' expr ')'
//!        | '(' expr ')'
//! ```
//!
//! Superscript digits (`Λ²`) are accepted in place of `^k`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Word {
    Std,
    Dual,
    Tensor(Box<Word>, Box<Word>),
    Sum(Box<Word>, Box<Word>),
    Sym(usize, Box<Word>),
    Alt(usize, Box<Word>),
}

impl Word {
    pub fn tensor(a: Word, b: Word) -> Word {
        Word::Tensor(Box::new(a), Box::new(b))
    }

    pub fn sum(a: Word, b: Word) -> Word {
        Word::Sum(Box::new(a), Box::new(b))
    }

    pub fn sym(k: usize, a: Word) -> Word {
        Word::Sym(k, Box::new(a))
    }

    pub fn alt(k: usize, a: Word) -> Word {
        Word::Alt(k, Box::new(a))
    }

    /// Dimension of the constructed space when the standard space has dimension `n`.
    pub fn dim(&self, n: usize) -> usize {
        match self {
            Word::Std | Word::Dual => n,
            Word::Tensor(a, b) => a.dim(n) * b.dim(n),
            Word::Sum(a, b) => a.dim(n) + b.dim(n),
            Word::Sym(k, a) => binomial(a.dim(n) + k - 1, *k),
            Word::Alt(k, a) => binomial(a.dim(n), *k),
        }
    }

    /// Total tensor degree.
    pub fn degree(&self) -> usize {
        match self {
            Word::Std | Word::Dual => 1,
            Word::Tensor(a, b) => a.degree() + b.degree(),
            Word::Sum(a, b) => a.degree().max(b.degree()),
            Word::Sym(k, a) | Word::Alt(k, a) => k * a.degree(),
        }
    }

    pub fn parse(s: &str) -> Result<Word> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = Parser { chars, pos: 0 };
        let w = p.expr()?;
        if p.pos != p.chars.len() {
            return Err(p.err("trailing input"));
        }
        Ok(w)
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: usize = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Std => write!(f, "V"),
            Word::Dual => write!(f, "V*"),
            Word::Tensor(a, b) => write!(f, "({a} ⊗ {b})"),
            Word::Sum(a, b) => write!(f, "({a} ⊕ {b})"),
            Word::Sym(k, a) => write!(f, "Sym^{k}({a})"),
            Word::Alt(k, a) => write!(f, "Alt^{k}({a})"),
        }
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!(
            "construction word: {msg} at character {}",
            self.pos
        ))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{c}'")))
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        let k: Vec<char> = kw.chars().collect();
        if self.chars[self.pos..].starts_with(&k) {
            self.pos += k.len();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Word> {
        let mut w = self.prod()?;
        while self.eat('⊕') || self.eat('+') {
            let r = self.prod()?;
            w = Word::sum(w, r);
        }
        Ok(w)
    }

    fn prod(&mut self) -> Result<Word> {
        let mut w = self.atom()?;
        while self.eat('⊗') || self.eat('x') {
            let r = self.atom()?;
            w = Word::tensor(w, r);
        }
        Ok(w)
    }

    fn exponent(&mut self) -> Result<usize> {
        const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
        let mut digits = String::new();
        if self.eat('^') {
            while let Some(c) = self.peek().filter(|c| c.is_ascii_digit()) {
                digits.push(c);
                self.pos += 1;
            }
        } else {
            while let Some(d) = self.peek().and_then(|c| SUP.iter().position(|&s| s == c)) {
                digits.push(char::from(b'0' + d as u8));
                self.pos += 1;
            }
        }
        let k: usize = digits
            .parse()
            .map_err(|_| self.err("expected an exponent"))?;
        if k == 0 {
            return Err(self.err("exponent must be positive"));
        }
        Ok(k)
    }

    fn paren_expr(&mut self) -> Result<Word> {
        self.expect('(')?;
        let w = self.expr()?;
        self.expect(')')?;
        Ok(w)
    }

    fn binary(&mut self) -> Result<(Word, Word)> {
        self.expect('(')?;
        let a = self.expr()?;
        self.expect(',')?;
        let b = self.expr()?;
        self.expect(')')?;
        Ok((a, b))
    }

    fn atom(&mut self) -> Result<Word> {
        if self.keyword("tensor") {
            let (a, b) = self.binary()?;
            return Ok(Word::tensor(a, b));
        }
        if self.keyword("sum") {
            let (a, b) = self.binary()?;
            return Ok(Word::sum(a, b));
        }
        if self.keyword("std") {
            return Ok(Word::Std);
        }
        if self.keyword("dual") {
            return Ok(Word::Dual);
        }
        for kw in ["Sym", "sym", "S"] {
            if self.keyword(kw) {
                let k = self.exponent()?;
                let w = self.paren_expr()?;
                return Ok(Word::sym(k, w));
            }
        }
        for kw in ["Alt", "alt", "wedge", "Λ"] {
            if self.keyword(kw) {
                let k = self.exponent()?;
                let w = self.paren_expr()?;
                return Ok(Word::alt(k, w));
            }
        }
        if self.eat('V') {
            if self.eat('*') {
                return Ok(Word::Dual);
            }
            return Ok(Word::Std);
        }
        if self.peek() == Some('(') {
            return self.paren_expr();
        }
        Err(self.err("unexpected token"))
    }
}
