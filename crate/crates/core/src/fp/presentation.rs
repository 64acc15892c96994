use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    /// Column in a coset table: `2g` for the generator, `2g + 1` for its inverse.
    pub fn column(self) -> usize {
        2 * self.generator + usize::from(self.inverse)
    }
}

pub type Word = Vec<Letter>;

/// Freely reduces a word.
pub fn free_reduce(word: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(word.len());
    for &l in word {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// A finite presentation `⟨ generators | relators ⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generator_names: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generator_names: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        if generator_names.is_empty() {
            return Err(Error::InvalidPresentation("no generators".into()));
        }
        for (i, name) in generator_names.iter().enumerate() {
            if generator_names[..i].contains(name) {
                return Err(Error::InvalidPresentation(format!(
                    "generator '{name}' declared twice"
                )));
            }
        }
        let mut reduced = Vec::with_capacity(relators.len());
        for r in relators {
            if let Some(bad) = r.iter().find(|l| l.generator >= generator_names.len()) {
                return Err(Error::InvalidPresentation(format!(
                    "relator uses undeclared generator #{}",
                    bad.generator
                )));
            }
            let w = free_reduce(&r);
            if w.is_empty() {
                return Err(Error::InvalidPresentation("empty relator".into()));
            }
            reduced.push(w);
        }
        Ok(Presentation {
            generator_names,
            relators: reduced,
        })
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_count(&self) -> usize {
        self.generator_names.len()
    }

    /// `⟨x, y | x⁴, y^{2(σ+1)}, (xy)², (x⁻¹y)²⟩`.
    pub fn accola_maclachlan(genus: u64) -> Self {
        let x = Letter::new(0, false);
        let y = Letter::new(1, false);
        let xi = x.inv();
        let n = 2 * (genus as usize + 1);
        Presentation::new(
            vec!["x".into(), "y".into()],
            vec![vec![x; 4], vec![y; n], vec![x, y, x, y], vec![xi, y, xi, y]],
        )
        .expect("well-formed presentation")
    }

    pub fn word_to_string(&self, w: &[Letter]) -> String {
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < w.len() {
            let l = w[i];
            let mut run = 1;
            while i + run < w.len() && w[i + run] == l {
                run += 1;
            }
            let name = &self.generator_names[l.generator];
            parts.push(match (l.inverse, run) {
                (false, 1) => name.clone(),
                (false, k) => format!("{name}^{k}"),
                (true, k) => format!("{name}^-{k}"),
            });
            i += run;
        }
        parts.join("*")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} |", self.generator_names.join(","))?;
        for (i, r) in self.relators.iter().enumerate() {
            write!(
                f,
                "{}{}",
                if i == 0 { " " } else { ", " },
                self.word_to_string(r)
            )?;
        }
        f.write_str(">")
    }
}

impl FromStr for Presentation {
    type Err = Error;

    /// Grammar (whitespace ignored):
    ///
    /// ```text
    /// presentation := '<' ident (',' ident)* '|' [ word (',' word)* ] '>'
    /// word         := factor ('*' factor)*
    /// factor       := atom [ '^' ['-'] digits ]
    /// atom         := ident | '(' word ')' | '[' word ',' word ']'
    /// ```
    ///
    /// `[u,v]` denotes `u v u⁻¹ v⁻¹`.
    fn from_str(s: &str) -> Result<Self> {
        let text: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut parser = Parser {
            text,
            pos: 0,
            names: Vec::new(),
        };
        parser.presentation()
    }
}

struct Parser {
    text: Vec<char>,
    pos: usize,
    names: Vec<String>,
}

impl Parser {
    fn err(&self, msg: &str) -> Error {
        Error::InvalidPresentation(format!("{msg} at offset {}", self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.text.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{c}'")))
        }
    }

    fn ident(&mut self) -> Result<String> {
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => self.pos += 1,
            _ => return Err(self.err("expected identifier")),
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        Ok(self.text[start..self.pos].iter().collect())
    }

    fn presentation(&mut self) -> Result<Presentation> {
        self.expect('<')?;
        loop {
            let name = self.ident()?;
            self.names.push(name);
            if self.peek() == Some(',') {
                self.pos += 1;
            } else {
                break;
            }
        }
        self.expect('|')?;
        let mut relators = Vec::new();
        if self.peek() != Some('>') {
            loop {
                relators.push(self.word()?);
                if self.peek() == Some(',') {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        self.expect('>')?;
        if self.pos != self.text.len() {
            return Err(self.err("trailing input"));
        }
        Presentation::new(std::mem::take(&mut self.names), relators)
    }

    fn word(&mut self) -> Result<Word> {
        let mut w = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            w.extend(self.factor()?);
        }
        Ok(w)
    }

    fn factor(&mut self) -> Result<Word> {
        let atom = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(atom);
        }
        self.pos += 1;
        let negative = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits: String = self.text[start..self.pos].iter().collect();
        let exp: usize = digits.parse().map_err(|_| self.err("expected exponent"))?;
        let base: Word = if negative {
            atom.iter().rev().map(|l| l.inv()).collect()
        } else {
            atom
        };
        Ok(base
            .iter()
            .copied()
            .cycle()
            .take(base.len() * exp)
            .collect())
    }

    fn atom(&mut self) -> Result<Word> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(')')?;
                Ok(w)
            }
            Some('[') => {
                self.pos += 1;
                let u = self.word()?;
                self.expect(',')?;
                let v = self.word()?;
                self.expect(']')?;
                let mut w = u.clone();
                w.extend(v.iter().copied());
                w.extend(u.iter().rev().map(|l| l.inv()));
                w.extend(v.iter().rev().map(|l| l.inv()));
                Ok(w)
            }
            _ => {
                let name = self.ident()?;
                let g = self
                    .names
                    .iter()
                    .position(|n| *n == name)
                    .ok_or_else(|| self.err(&format!("undeclared generator '{name}'")))?;
                Ok(vec![Letter::new(g, false)])
            }
        }
    }
}
