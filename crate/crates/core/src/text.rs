//! The bit-exact text format.
//!
//! * word: a string of letters, the empty word spelled `_` (e.g. `aababb`)
//! * tree: `T ::= '_' | letter | '(' T '.' T ')'` (e.g. `((c.d)._)`)
//! * variables spelled `x1`, `x2`, … in polynomial positions
//! * the context hole spelled `y`
//!
//! Rendering and parsing round-trip exactly; rendering never emits the
//! collapsed node `(_._)` but the parser accepts and normalizes it.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::alphabet::Alphabet;
use crate::object::{Mode, Object, Sym, Tree};
use crate::polynomial::{Context, Polynomial};

/// Which non-letter symbols a parse may produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymbolPolicy {
    pub vars: bool,
    pub hole: bool,
}

impl SymbolPolicy {
    /// Plain objects of the algebra: letters only.
    pub fn ground() -> Self {
        SymbolPolicy { vars: false, hole: false }
    }

    /// Polynomial bodies: letters and variables.
    pub fn polynomial() -> Self {
        SymbolPolicy { vars: true, hole: false }
    }

    /// One-hole contexts: letters and the hole.
    pub fn context() -> Self {
        SymbolPolicy { vars: false, hole: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl ParseError {
    fn new(pos: usize, message: impl Into<String>) -> Self {
        ParseError { pos, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at position {}: {}", self.pos, self.message)
    }
}

impl core::error::Error for ParseError {}

struct Cursor<'a> {
    input: &'a [u8],
    pos: usize,
    sigma: &'a Alphabet,
    policy: SymbolPolicy,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.input.get(self.pos).map(|&b| b as char)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn expect(&mut self, want: char) -> Result<(), ParseError> {
        match self.bump() {
            Some(c) if c == want => Ok(()),
            Some(c) => Err(ParseError::new(self.pos - 1, format!("expected '{want}', found '{c}'"))),
            None => Err(ParseError::new(self.pos, format!("expected '{want}', found end of input"))),
        }
    }

    /// A leaf symbol: letter, `x<digits>` or `y` depending on the policy.
    fn symbol(&mut self) -> Result<Sym, ParseError> {
        let start = self.pos;
        let c = self
            .bump()
            .ok_or_else(|| ParseError::new(start, "expected a symbol, found end of input"))?;
        if c == 'x' && self.policy.vars {
            let mut digits = String::new();
            while matches!(self.peek(), Some(d) if d.is_ascii_digit()) {
                digits.push(self.bump().unwrap());
            }
            if digits.is_empty() {
                return Err(ParseError::new(start, "expected digits after 'x'"));
            }
            let i: u32 = digits
                .parse()
                .map_err(|_| ParseError::new(start, "variable index out of range"))?;
            if i == 0 {
                return Err(ParseError::new(start, "variable indices start at x1"));
            }
            return Ok(Sym::Var(i));
        }
        if c == 'y' && self.policy.hole {
            return Ok(Sym::Hole);
        }
        if self.sigma.contains(c) {
            return Ok(Sym::Letter(c));
        }
        Err(ParseError::new(start, format!("'{c}' is not a letter of the alphabet")))
    }

    fn tree(&mut self) -> Result<Tree, ParseError> {
        match self.peek() {
            Some('_') => {
                self.bump();
                Ok(Tree::Empty)
            }
            Some('(') => {
                self.bump();
                let l = self.tree()?;
                self.expect('.')?;
                let r = self.tree()?;
                self.expect(')')?;
                Ok(Tree::node(l, r))
            }
            Some(_) => Ok(Tree::Leaf(self.symbol()?)),
            None => Err(ParseError::new(self.pos, "expected a tree, found end of input")),
        }
    }

    fn word(&mut self) -> Result<Vec<Sym>, ParseError> {
        if self.input == b"_" {
            self.pos = 1;
            return Ok(Vec::new());
        }
        let mut syms = Vec::new();
        while self.peek().is_some() {
            syms.push(self.symbol()?);
        }
        Ok(syms)
    }
}

/// Parse one object in the given mode.
pub fn parse_object(
    input: &str,
    mode: Mode,
    sigma: &Alphabet,
    policy: SymbolPolicy,
) -> Result<Object, ParseError> {
    if !input.is_ascii() {
        return Err(ParseError::new(0, "input must be ascii"));
    }
    let mut cur = Cursor { input: input.as_bytes(), pos: 0, sigma, policy };
    let obj = match mode {
        Mode::Word => Object::Word(cur.word()?),
        Mode::Tree => Object::Tree(cur.tree()?),
    };
    if cur.pos != cur.input.len() {
        return Err(ParseError::new(cur.pos, "trailing input after the term"));
    }
    Ok(obj)
}

/// Parse a plain object: letters only.
pub fn parse_ground(input: &str, mode: Mode, sigma: &Alphabet) -> Result<Object, ParseError> {
    parse_object(input, mode, sigma, SymbolPolicy::ground())
}

/// Parse a polynomial body; the arity is the largest variable mentioned.
pub fn parse_polynomial(input: &str, mode: Mode, sigma: &Alphabet) -> Result<Polynomial, ParseError> {
    let body = parse_object(input, mode, sigma, SymbolPolicy::polynomial())?;
    let arity = body.max_var() as usize;
    Polynomial::new(body, arity).map_err(|e| ParseError::new(0, e.to_string()))
}

/// Parse a one-hole context (exactly one `y`).
pub fn parse_context(input: &str, mode: Mode, sigma: &Alphabet) -> Result<Context, ParseError> {
    let body = parse_object(input, mode, sigma, SymbolPolicy::context())?;
    Context::new(body).map_err(|e| ParseError::new(0, e.to_string()))
}

fn push_sym(out: &mut String, s: &Sym) {
    match s {
        Sym::Letter(c) => out.push(*c),
        Sym::Var(i) => {
            out.push('x');
            out.push_str(&i.to_string());
        }
        Sym::Hole => out.push('y'),
    }
}

fn push_tree(out: &mut String, t: &Tree) {
    match t {
        Tree::Empty => out.push('_'),
        Tree::Leaf(s) => push_sym(out, s),
        Tree::Node(l, r) => {
            out.push('(');
            push_tree(out, l);
            out.push('.');
            push_tree(out, r);
            out.push(')');
        }
    }
}

/// Render an object in the text format.
pub fn render(o: &Object) -> String {
    match o {
        Object::Word(syms) => {
            if syms.is_empty() {
                return "_".to_string();
            }
            let mut out = String::new();
            for s in syms {
                push_sym(&mut out, s);
            }
            out
        }
        Object::Tree(t) => {
            let mut out = String::new();
            push_tree(&mut out, t);
            out
        }
    }
}

/// The deterministic presentation order: by length, then by rendered text.
pub fn sort_key(o: &Object) -> (usize, String) {
    (o.length(), render(o))
}

impl fmt::Display for Object {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render(self))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render(self.body()))
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render(self.body()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma() -> Alphabet {
        Alphabet::parse("abcd").unwrap()
    }

    #[test]
    fn word_round_trip() {
        let s = sigma();
        for input in ["_", "a", "aababb", "abcd"] {
            let o = parse_ground(input, Mode::Word, &s).unwrap();
            assert_eq!(render(&o), input);
        }
        assert_eq!(parse_ground("_", Mode::Word, &s).unwrap(), Object::empty(Mode::Word));
    }

    #[test]
    fn tree_round_trip() {
        let s = sigma();
        for input in ["_", "a", "(a.b)", "((c.d)._)", "(((c.d)._).(c.d))"] {
            let o = parse_ground(input, Mode::Tree, &s).unwrap();
            assert_eq!(render(&o), input);
        }
    }

    #[test]
    fn parser_normalizes_collapsed_pair() {
        let s = sigma();
        let o = parse_ground("(_._)", Mode::Tree, &s).unwrap();
        assert_eq!(o, Object::empty(Mode::Tree));
        assert_eq!(render(&o), "_");
    }

    #[test]
    fn polynomials_and_contexts() {
        let s = sigma();
        let p = parse_polynomial("ax1x1b", Mode::Word, &s).unwrap();
        assert_eq!(p.arity(), 1);
        assert_eq!(render(p.body()), "ax1x1b");

        let p = parse_polynomial("((b.x1).x2)", Mode::Tree, &s).unwrap();
        assert_eq!(p.arity(), 2);

        let c = parse_context("aby", Mode::Word, &s).unwrap();
        assert_eq!(render(c.body()), "aby");
        assert!(parse_context("ab", Mode::Word, &s).is_err());
        assert!(parse_context("yy", Mode::Word, &s).is_err());
    }

    #[test]
    fn errors_carry_positions() {
        let s = sigma();
        let e = parse_ground("abz", Mode::Word, &s).unwrap_err();
        assert_eq!(e.pos, 2);
        let e = parse_ground("(a.b", Mode::Tree, &s).unwrap_err();
        assert_eq!(e.pos, 4);
        let e = parse_ground("(a.b))", Mode::Tree, &s).unwrap_err();
        assert_eq!(e.pos, 5);
        // vars rejected in ground positions
        assert!(parse_ground("ax1", Mode::Word, &s).is_err());
        // x needs an index in polynomial positions
        assert!(parse_polynomial("ax", Mode::Word, &s).is_err());
        assert!(parse_polynomial("ax0", Mode::Word, &s).is_err());
    }
}
