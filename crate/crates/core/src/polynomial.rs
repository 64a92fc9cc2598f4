//! Polynomials over the algebra and one-hole contexts.
//!
//! An n-ary [`Polynomial`] is an object over the alphabet extended with the
//! variables `x1, …, xn`; evaluating it substitutes arguments for variables.
//! Its multidegree counts occurrences per variable, which in turn governs the
//! length of every value through an affine law ([`length_law_check`]).
//!
//! A [`Context`] is the degree-1 unary case with the distinguished hole
//! symbol `y`: the witness that one object occurs inside another
//! ([`find_occurrence`]).

use alloc::vec::Vec;
use core::fmt;

use crate::object::{Mode, Object, Sym, Tree};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolynomialError {
    /// The body mentions a variable above the declared arity.
    ArityTooSmall { declared: usize, max_var: u32 },
    /// Polynomial bodies must not contain the context hole.
    HoleInBody,
    /// A context must contain exactly one hole.
    HoleCount(usize),
}

impl fmt::Display for PolynomialError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolynomialError::ArityTooSmall { declared, max_var } => write!(
                f,
                "declared arity {declared} but the body mentions x{max_var}"
            ),
            PolynomialError::HoleInBody => write!(f, "polynomial bodies cannot contain 'y'"),
            PolynomialError::HoleCount(n) => {
                write!(f, "a context needs exactly one hole, found {n}")
            }
        }
    }
}

impl core::error::Error for PolynomialError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalError {
    NotEnoughArgs { arity: usize, got: usize },
    ModeMismatch { expected: Mode, got: Mode },
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::NotEnoughArgs { arity, got } => {
                write!(f, "polynomial of arity {arity} applied to {got} arguments")
            }
            EvalError::ModeMismatch { expected, got } => {
                write!(f, "argument mode {got} does not match polynomial mode {expected}")
            }
        }
    }
}

impl core::error::Error for EvalError {}

/// An n-ary polynomial: a body over `Σ ∪ {x1..xn}` plus its declared arity.
///
/// The declared arity may exceed the largest variable actually used; the
/// multidegree then carries trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Polynomial {
    body: Object,
    arity: usize,
}

impl Polynomial {
    pub fn new(body: Object, arity: usize) -> Result<Self, PolynomialError> {
        if body.count_holes() > 0 {
            return Err(PolynomialError::HoleInBody);
        }
        let max_var = body.max_var();
        if max_var as usize > arity {
            return Err(PolynomialError::ArityTooSmall {
                declared: arity,
                max_var,
            });
        }
        Ok(Polynomial { body, arity })
    }

    /// A variable-free polynomial of arity 0.
    pub fn constant(body: Object) -> Result<Self, PolynomialError> {
        Self::new(body, 0)
    }

    /// The identity polynomial `x1`.
    pub fn identity(mode: Mode) -> Self {
        Polynomial {
            body: Object::var(mode, 1),
            arity: 1,
        }
    }

    pub fn body(&self) -> &Object {
        &self.body
    }

    pub fn into_body(self) -> Object {
        self.body
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn mode(&self) -> Mode {
        self.body.mode()
    }

    /// Re-declare the arity, e.g. to pad with unused trailing variables.
    pub fn with_arity(self, arity: usize) -> Result<Self, PolynomialError> {
        Self::new(self.body, arity)
    }

    /// Occurrence counts `⟨k1..kn⟩` of each variable.
    pub fn multidegree(&self) -> Vec<usize> {
        (1..=self.arity as u32)
            .map(|i| self.body.count_sym(&Sym::Var(i)))
            .collect()
    }

    /// Symbol count `s(P)`: the length for words, leaves plus `⋆` nodes for
    /// trees.
    pub fn size(&self) -> usize {
        self.body.size()
    }

    /// Substitute `args[i-1]` for each `x_i`. Extra arguments beyond the
    /// arity are permitted and ignored.
    pub fn eval(&self, args: &[Object]) -> Result<Object, EvalError> {
        if args.len() < self.arity {
            return Err(EvalError::NotEnoughArgs {
                arity: self.arity,
                got: args.len(),
            });
        }
        for a in &args[..self.arity] {
            if a.mode() != self.mode() {
                return Err(EvalError::ModeMismatch {
                    expected: self.mode(),
                    got: a.mode(),
                });
            }
        }
        Ok(substitute(&self.body, &mut |s| match s {
            Sym::Var(i) => Some(args[(i - 1) as usize].clone()),
            _ => None,
        }))
    }
}

/// Substitute symbols by whole objects, rebuilding with the normalizing
/// constructors. `lookup` returns `None` for symbols left alone.
fn substitute(body: &Object, lookup: &mut impl FnMut(&Sym) -> Option<Object>) -> Object {
    match body {
        Object::Word(syms) => {
            let mut out: Vec<Sym> = Vec::with_capacity(syms.len());
            for s in syms {
                match lookup(s) {
                    None => out.push(*s),
                    Some(Object::Word(w)) => out.extend_from_slice(&w),
                    Some(Object::Tree(_)) => unreachable!("mode checked by callers"),
                }
            }
            Object::Word(out)
        }
        Object::Tree(t) => Object::Tree(substitute_tree(t, lookup)),
    }
}

fn substitute_tree(t: &Tree, lookup: &mut impl FnMut(&Sym) -> Option<Object>) -> Tree {
    match t {
        Tree::Empty => Tree::Empty,
        Tree::Leaf(s) => match lookup(s) {
            None => Tree::Leaf(*s),
            Some(Object::Tree(u)) => u,
            Some(Object::Word(_)) => unreachable!("mode checked by callers"),
        },
        Tree::Node(l, r) => Tree::node(substitute_tree(l, lookup), substitute_tree(r, lookup)),
    }
}

/// A degree-1 unary polynomial: an object with exactly one hole `y`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Context {
    body: Object,
}

impl Context {
    pub fn new(body: Object) -> Result<Self, PolynomialError> {
        let holes = body.count_holes();
        if holes != 1 {
            return Err(PolynomialError::HoleCount(holes));
        }
        Ok(Context { body })
    }

    /// The bare hole: the context with `apply(u) = u`.
    pub fn hole(mode: Mode) -> Self {
        Context {
            body: Object::atom(mode, Sym::Hole),
        }
    }

    pub fn body(&self) -> &Object {
        &self.body
    }

    pub fn mode(&self) -> Mode {
        self.body.mode()
    }

    /// Plug `u` into the hole.
    ///
    /// Panics on a mode mismatch.
    pub fn apply(&self, u: &Object) -> Object {
        assert_eq!(
            self.mode(),
            u.mode(),
            "context application: mode mismatch"
        );
        substitute(&self.body, &mut |s| match s {
            Sym::Hole => Some(u.clone()),
            _ => None,
        })
    }
}

/// The leftmost occurrence of `u` inside `t`, as the context `C` with
/// `C(u) = t`, or `None` when `u` is not a sub-object of `t`.
///
/// Words take the occurrence with the smallest start index; trees check the
/// root first and then recurse left before right, the same order the
/// reduction step uses.
///
/// Panics on a mode mismatch.
pub fn find_occurrence(t: &Object, u: &Object) -> Option<Context> {
    assert_eq!(t.mode(), u.mode(), "find_occurrence: mode mismatch");
    match (t, u) {
        (Object::Word(hay), Object::Word(needle)) => {
            let i = find_word(hay, needle)?;
            let mut body = Vec::with_capacity(hay.len() - needle.len() + 1);
            body.extend_from_slice(&hay[..i]);
            body.push(Sym::Hole);
            body.extend_from_slice(&hay[i + needle.len()..]);
            Some(Context {
                body: Object::Word(body),
            })
        }
        (Object::Tree(hay), Object::Tree(needle)) => find_tree(hay, needle).map(|body| Context {
            body: Object::Tree(body),
        }),
        _ => unreachable!(),
    }
}

/// Start indices of every occurrence of `needle` in `hay`, overlapping ones
/// included. The empty needle occurs at every position.
pub(crate) fn word_occurrences(hay: &[Sym], needle: &[Sym]) -> Vec<usize> {
    if needle.len() > hay.len() {
        return Vec::new();
    }
    (0..=hay.len() - needle.len())
        .filter(|&i| &hay[i..i + needle.len()] == needle)
        .collect()
}

fn find_word(hay: &[Sym], needle: &[Sym]) -> Option<usize> {
    if needle.len() > hay.len() {
        return None;
    }
    (0..=hay.len() - needle.len()).find(|&i| &hay[i..i + needle.len()] == needle)
}

fn find_tree(hay: &Tree, needle: &Tree) -> Option<Tree> {
    if hay == needle {
        return Some(Tree::Leaf(Sym::Hole));
    }
    match hay {
        Tree::Node(l, r) => {
            if let Some(cl) = find_tree(l, needle) {
                Some(Tree::Node(cl.into(), r.clone()))
            } else {
                find_tree(r, needle).map(|cr| Tree::Node(l.clone(), cr.into()))
            }
        }
        _ => None,
    }
}

/// Every object obtained from `t` by replacing a single occurrence of
/// `needle` with `repl`. Empty when `needle` does not occur.
pub fn occurrence_replacements(t: &Object, needle: &Object, repl: &Object) -> Vec<Object> {
    assert_eq!(t.mode(), needle.mode());
    assert_eq!(t.mode(), repl.mode());
    match (t, needle) {
        (Object::Word(hay), Object::Word(n)) => {
            let r = match repl {
                Object::Word(r) => r,
                _ => unreachable!(),
            };
            word_occurrences(hay, n)
                .into_iter()
                .map(|i| {
                    let mut out = Vec::with_capacity(hay.len() - n.len() + r.len());
                    out.extend_from_slice(&hay[..i]);
                    out.extend_from_slice(r);
                    out.extend_from_slice(&hay[i + n.len()..]);
                    Object::Word(out)
                })
                .collect()
        }
        (Object::Tree(hay), Object::Tree(n)) => {
            let r = match repl {
                Object::Tree(r) => r,
                _ => unreachable!(),
            };
            let mut out = Vec::new();
            tree_replacements(hay, n, r, &mut out);
            out.into_iter().map(Object::Tree).collect()
        }
        _ => unreachable!(),
    }
}

fn tree_replacements(hay: &Tree, needle: &Tree, repl: &Tree, out: &mut Vec<Tree>) {
    if hay == needle {
        out.push(repl.clone());
    }
    if let Tree::Node(l, r) = hay {
        let mut hits = Vec::new();
        tree_replacements(l, needle, repl, &mut hits);
        out.extend(hits.into_iter().map(|t| Tree::node(t, (**r).clone())));
        let mut hits = Vec::new();
        tree_replacements(r, needle, repl, &mut hits);
        out.extend(hits.into_iter().map(|t| Tree::node((**l).clone(), t)));
    }
}

/// Check the affine length law
/// `|P(u1,…,un)| = |P(⊥,…,⊥)| + Σ ki·|ui|`
/// for concrete arguments. Holds for every polynomial; exposed as a hook for
/// tests and demos.
pub fn length_law_check(p: &Polynomial, args: &[Object]) -> Result<bool, EvalError> {
    let bottoms: Vec<Object> = (0..p.arity()).map(|_| Object::empty(p.mode())).collect();
    let base = p.eval(&bottoms)?.length();
    let value = p.eval(args)?.length();
    let expected: usize = base
        + p.multidegree()
            .iter()
            .zip(args)
            .map(|(k, u)| k * u.length())
            .sum::<usize>();
    Ok(value == expected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::object::Mode;

    fn leaf(c: char) -> Object {
        Object::letter(Mode::Tree, c)
    }

    fn tvar(i: u32) -> Object {
        Object::var(Mode::Tree, i)
    }

    #[test]
    fn eval_substitutes_structurally() {
        // (b ⋆ x1) ⋆ x2 at (⊥, c ⋆ d) gives (b ⋆ ⊥) ⋆ (c ⋆ d)
        let p = Polynomial::new(leaf('b').star(&tvar(1)).star(&tvar(2)), 2).unwrap();
        let bottom = Object::empty(Mode::Tree);
        let cd = leaf('c').star(&leaf('d'));
        let got = p.eval(&[bottom.clone(), cd.clone()]).unwrap();
        assert_eq!(got, leaf('b').star(&bottom).star(&cd));
    }

    #[test]
    fn eval_identity_and_words() {
        let id = Polynomial::identity(Mode::Tree);
        let u = leaf('a').star(&leaf('b'));
        assert_eq!(id.eval(&[u.clone()]).unwrap(), u);

        // "a x1 x1 b" at "ba" gives "ababab"
        let body = Object::Word(alloc::vec![
            Sym::Letter('a'),
            Sym::Var(1),
            Sym::Var(1),
            Sym::Letter('b'),
        ]);
        let p = Polynomial::new(body, 1).unwrap();
        assert_eq!(p.eval(&[Object::word_of("ba")]).unwrap(), Object::word_of("ababab"));
    }

    #[test]
    fn eval_errors() {
        let p = Polynomial::identity(Mode::Tree);
        assert!(matches!(p.eval(&[]), Err(EvalError::NotEnoughArgs { .. })));
        assert!(matches!(
            p.eval(&[Object::word_of("a")]),
            Err(EvalError::ModeMismatch { .. })
        ));
        // extra arguments are fine
        assert!(p.eval(&[leaf('a'), leaf('b')]).is_ok());
    }

    #[test]
    fn arity_is_validated() {
        assert!(matches!(
            Polynomial::new(tvar(3), 2),
            Err(PolynomialError::ArityTooSmall { .. })
        ));
        assert!(matches!(
            Polynomial::new(Object::atom(Mode::Tree, Sym::Hole), 0),
            Err(PolynomialError::HoleInBody)
        ));
        let padded = Polynomial::new(tvar(1), 3).unwrap();
        assert_eq!(padded.multidegree(), alloc::vec![1, 0, 0]);
    }

    #[test]
    fn length_law_instances() {
        // x1 ⋆ (a ⋆ x1): base 1, k = 2, so length 5 at |u| = 2
        let p = Polynomial::new(tvar(1).star(&leaf('a').star(&tvar(1))), 1).unwrap();
        let u = leaf('c').star(&leaf('d'));
        assert_eq!(p.eval(&[u.clone()]).unwrap().length(), 5);
        assert!(length_law_check(&p, &[u]).unwrap());

        let c = Polynomial::constant(leaf('a').star(&leaf('b'))).unwrap();
        assert!(length_law_check(&c, &[]).unwrap());

        let q = Polynomial::new(leaf('b').star(&tvar(1)).star(&tvar(2)), 2).unwrap();
        let args = [leaf('a').star(&leaf('a')), leaf('a').star(&leaf('a')).star(&leaf('a'))];
        assert_eq!(q.eval(&args).unwrap().length(), 6);
        assert!(length_law_check(&q, &args).unwrap());
    }

    #[test]
    fn occurrence_is_leftmost() {
        let t = Object::word_of("ababa");
        let u = Object::word_of("aba");
        let ctx = find_occurrence(&t, &u).unwrap();
        assert_eq!(
            ctx.body(),
            &Object::Word(alloc::vec![Sym::Hole, Sym::Letter('b'), Sym::Letter('a')])
        );
        assert_eq!(ctx.apply(&u), t);

        assert_eq!(find_occurrence(&t, &t), Some(Context::hole(Mode::Word)));
        assert_eq!(find_occurrence(&Object::word_of("ab"), &Object::word_of("ba")), None);
    }

    #[test]
    fn occurrence_in_trees_prefers_left() {
        let cd = leaf('c').star(&leaf('d'));
        let t = cd.star(&Object::empty(Mode::Tree)).star(&cd);
        let ctx = find_occurrence(&t, &cd).unwrap();
        let expected = Object::atom(Mode::Tree, Sym::Hole)
            .star(&Object::empty(Mode::Tree))
            .star(&cd);
        assert_eq!(ctx.body(), &expected);
        assert_eq!(ctx.apply(&cd), t);
    }

    #[test]
    fn context_application_renormalizes() {
        // plugging ⊥ next to an empty sibling collapses the node
        let body = Object::atom(Mode::Tree, Sym::Hole).star(&Object::empty(Mode::Tree));
        let ctx = Context::new(body).unwrap();
        assert_eq!(ctx.apply(&Object::empty(Mode::Tree)), Object::empty(Mode::Tree));
    }

    #[test]
    fn all_replacements_cover_overlaps() {
        let t = Object::word_of("aaa");
        let got = occurrence_replacements(&t, &Object::word_of("aa"), &Object::word_of("b"));
        assert_eq!(got, alloc::vec![Object::word_of("ba"), Object::word_of("ab")]);

        let cd = leaf('c').star(&leaf('d'));
        let tree = cd.star(&Object::empty(Mode::Tree)).star(&cd);
        let got = occurrence_replacements(&tree, &cd, &leaf('a'));
        assert_eq!(got.len(), 2);
        assert!(got.contains(&leaf('a').star(&Object::empty(Mode::Tree)).star(&cd)));
        assert!(got.contains(&cd.star(&Object::empty(Mode::Tree)).star(&leaf('a'))));
    }
}
