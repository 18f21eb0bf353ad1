//! Text grammar for permutations.
//!
//! ```text
//! input   := ws (oneline | cycles) ws
//! oneline := '[' ws (entry (ws ',' ws entry)*)? ws ']'
//! cycles  := '(' ws ')' | group (ws group)*
//! group   := '(' ws entry (ws ',' ws entry)* ws ')'
//! entry   := ('+' | '-')? digits ('^' digits)?
//! ```
//!
//! Colors (`^c`) are accepted only by [`parse_colored`]. In cycle notation a
//! magnitude that never appears is a fixed point, so the degree is the
//! largest magnitude written.

use cyclic_descents::perm::MAX_DEGREE;
use cyclic_descents::{ColoredPermutation, CycleNotation, SignedCycle, SignedPermutation};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("invalid permutation: {0}")]
    Semantic(String),
}

/// A parsed signed permutation, remembering which notation it was written in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PermText {
    OneLine(SignedPermutation),
    Cycles(CycleNotation),
}

impl PermText {
    pub fn to_permutation(&self) -> SignedPermutation {
        match self {
            PermText::OneLine(s) => s.clone(),
            PermText::Cycles(c) => c.to_permutation(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Shape {
    OneLine,
    Cycles,
}

struct Entry {
    value: i64,
    color: Option<u32>,
    column: usize,
}

struct Parsed {
    shape: Shape,
    groups: Vec<Vec<Entry>>,
}

struct Lexer {
    chars: Vec<char>,
    at: usize,
    colored: bool,
}

impl Lexer {
    fn new(src: &str, colored: bool) -> Self {
        Self { chars: src.chars().collect(), at: 0, colored }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { column: self.at + 1, message: message.into() })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).copied()
    }

    fn ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.at += 1;
        }
    }

    fn digits(&mut self) -> Result<u64, ParseError> {
        let start = self.at;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.at += 1;
        }
        if start == self.at {
            return match self.peek() {
                Some(c) => self.err(format!("expected a number, found '{c}'")),
                None => self.err("expected a number, found end of input"),
            };
        }
        let text: String = self.chars[start..self.at].iter().collect();
        text.parse().or_else(|_| {
            self.at = start;
            self.err(format!("number {text} is too large"))
        })
    }

    fn entry(&mut self) -> Result<Entry, ParseError> {
        let column = self.at + 1;
        let negative = match self.peek() {
            Some('-') => {
                self.at += 1;
                true
            }
            Some('+') => {
                self.at += 1;
                false
            }
            _ => false,
        };
        let magnitude = self.digits()?;
        let magnitude = i64::try_from(magnitude).or_else(|_| self.err("number is too large"))?;
        let value = if negative { -magnitude } else { magnitude };
        let color = if self.peek() == Some('^') {
            if !self.colored {
                return self.err("colors are only allowed for colored permutations");
            }
            self.at += 1;
            let c = self.digits()?;
            Some(u32::try_from(c).or_else(|_| self.err("color is too large"))?)
        } else {
            None
        };
        Ok(Entry { value, color, column })
    }

    /// Entries separated by commas up to `close`, which is consumed.
    fn list(&mut self, close: char, allow_empty: bool) -> Result<Vec<Entry>, ParseError> {
        let mut out = Vec::new();
        self.ws();
        if self.peek() == Some(close) {
            if !allow_empty {
                return self.err("empty cycle");
            }
            self.at += 1;
            return Ok(out);
        }
        loop {
            self.ws();
            out.push(self.entry()?);
            self.ws();
            match self.peek() {
                Some(',') => self.at += 1,
                Some(c) if c == close => {
                    self.at += 1;
                    return Ok(out);
                }
                Some(c) => return self.err(format!("expected ',' or '{close}', found '{c}'")),
                None => return self.err(format!("expected ',' or '{close}', found end of input")),
            }
        }
    }

    fn parse(mut self) -> Result<Parsed, ParseError> {
        self.ws();
        let parsed = match self.peek() {
            Some('[') => {
                self.at += 1;
                Parsed { shape: Shape::OneLine, groups: vec![self.list(']', true)?] }
            }
            Some('(') => {
                let mut groups = Vec::new();
                self.at += 1;
                self.ws();
                if self.peek() == Some(')') {
                    self.at += 1;
                } else {
                    groups.push(self.list(')', false)?);
                    self.ws();
                    while self.peek() == Some('(') {
                        self.at += 1;
                        groups.push(self.list(')', false)?);
                        self.ws();
                    }
                }
                Parsed { shape: Shape::Cycles, groups }
            }
            Some(c) => return self.err(format!("expected '[' or '(', found '{c}'")),
            None => return self.err("empty input"),
        };
        self.ws();
        if let Some(c) = self.peek() {
            return self.err(format!("unexpected '{c}' after the permutation"));
        }
        Ok(parsed)
    }
}

fn semantic(e: impl ToString) -> ParseError {
    ParseError::Semantic(e.to_string())
}

fn to_i32(e: &Entry) -> Result<i32, ParseError> {
    i32::try_from(e.value)
        .map_err(|_| ParseError::Semantic(format!("entry {} at column {} is out of range", e.value, e.column)))
}

/// Adds a fixed point for every magnitude up to the largest that is absent.
fn with_fixed_points(mut groups: Vec<Vec<i32>>) -> Result<Vec<Vec<i32>>, ParseError> {
    let n = groups.iter().flatten().map(|v| v.unsigned_abs() as usize).max().unwrap_or(0);
    if n > MAX_DEGREE {
        return Err(ParseError::Semantic(format!("magnitude {n} exceeds the degree cap {MAX_DEGREE}")));
    }
    let mut seen = vec![false; n + 1];
    for &v in groups.iter().flatten() {
        seen[v.unsigned_abs() as usize] = true;
    }
    groups.extend((1..=n).filter(|&m| !seen[m]).map(|m| vec![m as i32]));
    Ok(groups)
}

pub fn parse_permutation_text(s: &str) -> Result<PermText, ParseError> {
    let parsed = Lexer::new(s, false).parse()?;
    let groups = parsed
        .groups
        .iter()
        .map(|g| g.iter().map(to_i32).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    match parsed.shape {
        Shape::OneLine => {
            let images = groups.into_iter().next().unwrap_or_default();
            SignedPermutation::new(images).map(PermText::OneLine).map_err(semantic)
        }
        Shape::Cycles => {
            let groups = with_fixed_points(groups)?;
            let n = groups.iter().map(Vec::len).sum();
            let cycles = groups
                .into_iter()
                .map(SignedCycle::new)
                .collect::<Result<Vec<_>, _>>()
                .map_err(semantic)?;
            CycleNotation::new(n, cycles).map(PermText::Cycles).map_err(semantic)
        }
    }
}

pub fn parse_signed(s: &str) -> Result<SignedPermutation, ParseError> {
    parse_permutation_text(s).map(|p| p.to_permutation())
}

/// Parses a colored permutation with `r` colors. One-line entries are
/// `ω(i)^τ(i)`; in cycle notation an entry `a^c` means the element before
/// `a` has color `c`. Omitted colors are 0.
pub fn parse_colored(s: &str, r: u32) -> Result<ColoredPermutation, ParseError> {
    let parsed = Lexer::new(s, true).parse()?;
    for e in parsed.groups.iter().flatten() {
        if e.value <= 0 {
            return Err(ParseError::Semantic(format!(
                "entry {} at column {} must be positive in a colored permutation",
                e.value, e.column
            )));
        }
    }
    let value = |e: &Entry| u32::try_from(e.value).map_err(|_| semantic(format!("entry {} is too large", e.value)));
    match parsed.shape {
        Shape::OneLine => {
            let entries = parsed.groups.into_iter().next().unwrap_or_default();
            let omega = entries.iter().map(value).collect::<Result<Vec<_>, _>>()?;
            let tau = entries.iter().map(|e| e.color.unwrap_or(0)).collect();
            ColoredPermutation::new(omega, tau, r).map_err(semantic)
        }
        Shape::Cycles => {
            let mut cycles = parsed
                .groups
                .iter()
                .map(|g| g.iter().map(|e| Ok((value(e)?, e.color.unwrap_or(0)))).collect())
                .collect::<Result<Vec<Vec<(u32, u32)>>, ParseError>>()?;
            let n = cycles.iter().flatten().map(|&(a, _)| a as usize).max().unwrap_or(0);
            if n > MAX_DEGREE {
                return Err(ParseError::Semantic(format!("value {n} exceeds the degree cap {MAX_DEGREE}")));
            }
            let mut seen = vec![false; n + 1];
            for &(a, _) in cycles.iter().flatten() {
                seen[a as usize] = true;
            }
            cycles.extend((1..=n).filter(|&m| !seen[m]).map(|m| vec![(m as u32, 0)]));
            ColoredPermutation::from_cycles(n, &cycles, r).map_err(semantic)
        }
    }
}
