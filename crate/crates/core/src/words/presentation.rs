use std::collections::{BTreeSet, HashMap};
use std::fmt;

use super::{cyclic_reduce, free_reduce, push_reduced, Letter, Word};
use crate::error::{Error, Result};

/// A finite presentation together with the generator subsets spanning the
/// parabolic subgroups `H_1..H_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub names: Vec<String>,
    /// Cyclically reduced, nonempty.
    pub relators: Vec<Word>,
    /// Zero-based generator indices, sorted, pairwise distinct subsets.
    pub parabolics: Vec<Vec<usize>>,
}

impl Presentation {
    pub fn new(names: Vec<String>, relators: Vec<Word>, parabolics: Vec<Vec<usize>>) -> Result<Self> {
        let p = Presentation {
            names,
            relators,
            parabolics,
        };
        p.validate()?;
        Ok(p)
    }

    /// Free group on `n` generators with default names.
    pub fn free(n: usize) -> Self {
        Presentation {
            names: default_names(n),
            relators: Vec::new(),
            parabolics: Vec::new(),
        }
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn with_parabolics(mut self, parabolics: Vec<Vec<usize>>) -> Result<Self> {
        self.parabolics = parabolics;
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        if self.names.is_empty() {
            return Err(Error::InvalidInput("presentation needs at least one generator".into()));
        }
        let n = self.generator_count();
        for r in &self.relators {
            if r.is_empty() {
                return Err(Error::InvalidInput("empty relator".into()));
            }
            if let Some(l) = r.letters().iter().find(|l| l.generator() >= n) {
                return Err(Error::InvalidInput(format!("relator uses generator {} of {n}", l.generator())));
            }
        }
        let mut seen = BTreeSet::new();
        for p in &self.parabolics {
            if p.iter().any(|&g| g >= n) {
                return Err(Error::InvalidInput(format!("parabolic {p:?} exceeds {n} generators")));
            }
            if p.is_empty() {
                return Err(Error::InvalidInput("empty parabolic subset".into()));
            }
            let sorted: BTreeSet<usize> = p.iter().copied().collect();
            if !seen.insert(sorted) {
                return Err(Error::InvalidInput(format!("duplicate parabolic subset {p:?}")));
            }
        }
        Ok(())
    }

    pub fn format_word(&self, w: &Word) -> String {
        format_word(w, &self.names)
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        parse_word(text, &self.names)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gens {}", self.names.join(","))?;
        if !self.relators.is_empty() {
            let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
            write!(f, "; rel {}", rels.join(","))?;
        }
        if !self.parabolics.is_empty() {
            let pars: Vec<String> = self
                .parabolics
                .iter()
                .map(|p| {
                    let names: Vec<&str> = p.iter().map(|&g| self.names[g].as_str()).collect();
                    format!("{{{}}}", names.join(","))
                })
                .collect();
            write!(f, "; par {}", pars.join(","))?;
        }
        Ok(())
    }
}

/// `a, b, ..., z, z1, z2, ...`
pub fn default_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("z{}", i - 25)
            }
        })
        .collect()
}

/// Prints runs of equal letters as powers: `a^3b'^2a`.
pub fn format_word(w: &Word, names: &[String]) -> String {
    let mut out = String::new();
    let s = w.letters();
    let mut i = 0;
    while i < s.len() {
        let l = s[i];
        let mut j = i;
        while j < s.len() && s[j] == l {
            j += 1;
        }
        let run = j - i;
        let name = names
            .get(l.generator())
            .cloned()
            .unwrap_or_else(|| format!("g{}", l.generator() + 1));
        if run == 1 {
            out.push_str(&name);
            if l.is_inverse() {
                out.push('\'');
            }
        } else if l.is_inverse() {
            out.push_str(&format!("{name}^-{run}"));
        } else {
            out.push_str(&format!("{name}^{run}"));
        }
        i = j;
    }
    out
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src,
            bytes: src.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    /// Identifier: one ASCII letter followed by digits.
    fn name(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        match self.bytes.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() => self.pos += 1,
            _ => return Err(self.err("expected a generator name")),
        }
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        Ok(&self.src[start..self.pos])
    }

    fn keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        if rest.starts_with(kw)
            && rest[kw.len()..]
                .chars()
                .next()
                .map_or(true, |c| !c.is_ascii_alphanumeric())
        {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.bytes.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| Error::Syntax {
                position: start,
                message: "expected an integer exponent".into(),
            })
    }

    fn word(&mut self, lookup: &HashMap<&str, usize>) -> Result<Word> {
        let mut out: Vec<Letter> = Vec::new();
        let mut any = false;
        loop {
            let factor = match self.peek() {
                Some(b'[') => {
                    self.pos += 1;
                    let x = self.word(lookup)?;
                    self.expect(b',')?;
                    let y = self.word(lookup)?;
                    self.expect(b']')?;
                    x.mul(&y).mul(&x.inverse()).mul(&y.inverse())
                }
                Some(b'(') => {
                    self.pos += 1;
                    let x = self.word(lookup)?;
                    self.expect(b')')?;
                    x
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let start = self.pos;
                    let name = self.name()?;
                    let g = *lookup.get(name).ok_or_else(|| Error::UnknownGenerator {
                        name: name.to_string(),
                        position: start,
                    })?;
                    Word::letter(Letter::pos(g))
                }
                _ => break,
            };
            let mut factor = factor;
            loop {
                if self.eat(b'\'') {
                    factor = factor.inverse();
                } else if self.eat(b'^') {
                    let n = self.integer()?;
                    factor = factor.pow(n);
                } else {
                    break;
                }
            }
            for &l in factor.letters() {
                push_reduced(&mut out, l);
            }
            any = true;
        }
        if !any {
            return Err(self.err("expected a word"));
        }
        Ok(Word::from_letters(out))
    }
}

/// Parses a single word over the given generator names.
pub fn parse_word(text: &str, names: &[String]) -> Result<Word> {
    let lookup: HashMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let mut p = Parser::new(text);
    if p.at_end() {
        return Ok(Word::empty());
    }
    let w = p.word(&lookup)?;
    if !p.at_end() {
        return Err(p.err("trailing input"));
    }
    Ok(free_reduce(&w))
}

/// Parses `gens a,b; rel [a,b]; par {a}`. The `rel` and `par` clauses are
/// optional; relators are freely and cyclically reduced but not rotated.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut p = Parser::new(text);
    if !p.keyword("gens") {
        return Err(p.err("expected 'gens'"));
    }
    let mut names: Vec<String> = Vec::new();
    loop {
        let start = p.pos;
        let n = p.name()?;
        if names.iter().any(|m| m == n) {
            return Err(Error::Syntax {
                position: start,
                message: format!("duplicate generator '{n}'"),
            });
        }
        names.push(n.to_string());
        if !p.eat(b',') {
            break;
        }
    }
    let lookup: HashMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let mut relators = Vec::new();
    let mut parabolics = Vec::new();
    let mut seen_rel = false;
    let mut seen_par = false;
    while p.eat(b';') {
        if p.at_end() {
            break;
        }
        if !seen_rel && !seen_par && p.keyword("rel") {
            seen_rel = true;
            loop {
                let start = p.pos;
                let w = p.word(&lookup)?;
                let r = cyclic_reduce(&w);
                if r.is_empty() {
                    return Err(Error::Syntax {
                        position: start,
                        message: "relator reduces to the empty word".into(),
                    });
                }
                relators.push(r);
                if !p.eat(b',') {
                    break;
                }
            }
        } else if !seen_par && p.keyword("par") {
            seen_par = true;
            loop {
                p.expect(b'{')?;
                let mut set = BTreeSet::new();
                loop {
                    let start = p.pos;
                    let n = p.name()?;
                    let g = *lookup.get(n).ok_or_else(|| Error::UnknownGenerator {
                        name: n.to_string(),
                        position: start,
                    })?;
                    set.insert(g);
                    if !p.eat(b',') {
                        break;
                    }
                }
                p.expect(b'}')?;
                parabolics.push(set.into_iter().collect::<Vec<_>>());
                if !p.eat(b',') {
                    break;
                }
            }
        } else {
            return Err(p.err("expected 'rel' or 'par'"));
        }
    }
    if !p.at_end() {
        return Err(p.err("trailing input"));
    }
    Presentation::new(names, relators, parabolics)
}
