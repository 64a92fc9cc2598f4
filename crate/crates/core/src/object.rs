//! Elements of the two free binary algebras.
//!
//! An [`Object`] is either a word over an alphabet or a leaf-labelled binary
//! tree, in both cases including the neutral element `⊥` (the empty word or
//! the empty tree). Both algebras carry one binary operation [`Object::star`]
//! and a length measure that is additive under it:
//!
//! * `length(⊥) = 0`
//! * `length(σ) = 1` for a letter `σ`
//! * `length(u ⋆ v) = length(u) + length(v)`
//!
//! Words concatenate under `⋆`; trees pair up under a fresh root node. For
//! trees the decomposition `t = t₁ ⋆ t₂` is unique, which is why the pair
//! `(⊥, ⊥)` is collapsed to `⊥` at construction time.
//!
//! Symbols are a superset of alphabet letters: polynomial variables
//! `x1, x2, …` and the context hole `y` are symbols too, so a polynomial body
//! is literally an `Object` over the extended alphabet and all the rewriting
//! machinery applies to it unchanged.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::alphabet::Alphabet;

/// Which of the two algebras an [`Object`] lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    Word,
    Tree,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Word => write!(f, "word"),
            Mode::Tree => write!(f, "tree"),
        }
    }
}

/// Side selector for tree leaf counting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

/// One symbol of the extended alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sym {
    /// A letter of the base alphabet.
    Letter(char),
    /// The polynomial variable `x_i` (1-based).
    Var(u32),
    /// The hole of a one-hole context.
    Hole,
}

impl Sym {
    pub fn is_letter(&self) -> bool {
        matches!(self, Sym::Letter(_))
    }
}

/// A leaf-labelled binary tree. `Node(Empty, Empty)` never occurs; use
/// [`Tree::node`] to construct nodes so the collapse is maintained.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tree {
    Empty,
    Leaf(Sym),
    Node(Box<Tree>, Box<Tree>),
}

impl Tree {
    /// Pair two trees under a fresh root, identifying `⊥ ⋆ ⊥` with `⊥`.
    pub fn node(left: Tree, right: Tree) -> Tree {
        if left == Tree::Empty && right == Tree::Empty {
            Tree::Empty
        } else {
            Tree::Node(Box::new(left), Box::new(right))
        }
    }

    pub fn leaf(c: char) -> Tree {
        Tree::Leaf(Sym::Letter(c))
    }

    /// Number of leaf symbols (letters, variables or holes).
    pub fn length(&self) -> usize {
        match self {
            Tree::Empty => 0,
            Tree::Leaf(_) => 1,
            Tree::Node(l, r) => l.length() + r.length(),
        }
    }

    /// Number of symbols including the internal `⋆` nodes.
    pub fn size(&self) -> usize {
        match self {
            Tree::Empty => 0,
            Tree::Leaf(_) => 1,
            Tree::Node(l, r) => 1 + l.size() + r.size(),
        }
    }

    pub fn count_sym(&self, s: &Sym) -> usize {
        match self {
            Tree::Empty => 0,
            Tree::Leaf(x) => usize::from(x == s),
            Tree::Node(l, r) => l.count_sym(s) + r.count_sym(s),
        }
    }

    fn for_each_sym(&self, f: &mut impl FnMut(&Sym)) {
        match self {
            Tree::Empty => {}
            Tree::Leaf(x) => f(x),
            Tree::Node(l, r) => {
                l.for_each_sym(f);
                r.for_each_sym(f);
            }
        }
    }
}

/// An element of the free binary algebra over the extended alphabet.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Object {
    Word(Vec<Sym>),
    Tree(Tree),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    /// A letter argument is not part of the alphabet.
    UnknownLetter(char),
    /// The operation only exists in tree mode (or only in word mode).
    WrongMode { expected: Mode, got: Mode },
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::UnknownLetter(c) => write!(f, "letter '{c}' is not in the alphabet"),
            AlgebraError::WrongMode { expected, got } => {
                write!(f, "operation requires {expected} mode, got {got} mode")
            }
        }
    }
}

impl core::error::Error for AlgebraError {}

impl Object {
    /// The neutral element `⊥` of the given mode.
    pub fn empty(mode: Mode) -> Object {
        match mode {
            Mode::Word => Object::Word(Vec::new()),
            Mode::Tree => Object::Tree(Tree::Empty),
        }
    }

    pub fn letter(mode: Mode, c: char) -> Object {
        Object::atom(mode, Sym::Letter(c))
    }

    pub fn var(mode: Mode, i: u32) -> Object {
        Object::atom(mode, Sym::Var(i))
    }

    pub fn atom(mode: Mode, s: Sym) -> Object {
        match mode {
            Mode::Word => Object::Word(vec![s]),
            Mode::Tree => Object::Tree(Tree::Leaf(s)),
        }
    }

    /// Build a word from a string of letters. Panics if the mode is abused;
    /// parsing with error reporting lives in [`crate::text`].
    pub fn word_of(s: &str) -> Object {
        Object::Word(s.chars().map(Sym::Letter).collect())
    }

    pub fn mode(&self) -> Mode {
        match self {
            Object::Word(_) => Mode::Word,
            Object::Tree(_) => Mode::Tree,
        }
    }

    /// The binary operation of the algebra: concatenation for words, pairing
    /// under a fresh root for trees (with `⊥ ⋆ ⊥ = ⊥`).
    ///
    /// Panics on a mode mismatch; the two operands must live in one algebra.
    pub fn star(&self, other: &Object) -> Object {
        match (self, other) {
            (Object::Word(u), Object::Word(v)) => {
                let mut w = Vec::with_capacity(u.len() + v.len());
                w.extend_from_slice(u);
                w.extend_from_slice(v);
                Object::Word(w)
            }
            (Object::Tree(l), Object::Tree(r)) => Object::Tree(Tree::node(l.clone(), r.clone())),
            _ => panic!("star: mode mismatch ({} vs {})", self.mode(), other.mode()),
        }
    }

    /// Total number of symbol occurrences.
    pub fn length(&self) -> usize {
        match self {
            Object::Word(u) => u.len(),
            Object::Tree(t) => t.length(),
        }
    }

    /// Symbol count `s(·)`: equals the length for words; for trees every `⋆`
    /// node counts as one extra symbol. This is the measure that makes
    /// bounded tree universes finite.
    pub fn size(&self) -> usize {
        match self {
            Object::Word(u) => u.len(),
            Object::Tree(t) => t.size(),
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            Object::Word(u) => u.is_empty(),
            Object::Tree(t) => *t == Tree::Empty,
        }
    }

    /// True for the elements of `Σ` embedded in the algebra: a one-letter
    /// word or a single labelled leaf. `⊥ ⋆ σ` and friends are not atoms.
    pub fn is_atom(&self) -> bool {
        match self {
            Object::Word(u) => u.len() == 1 && u[0].is_letter(),
            Object::Tree(t) => matches!(t, Tree::Leaf(s) if s.is_letter()),
        }
    }

    /// True when the object mentions no variable and no hole.
    pub fn is_ground(&self) -> bool {
        let mut ground = true;
        self.for_each_sym(&mut |s| ground &= s.is_letter());
        ground
    }

    pub fn count_sym(&self, s: &Sym) -> usize {
        match self {
            Object::Word(u) => u.iter().filter(|x| *x == s).count(),
            Object::Tree(t) => t.count_sym(s),
        }
    }

    /// Number of occurrences of a letter of the alphabet.
    pub fn letter_count(&self, c: char, sigma: &Alphabet) -> Result<usize, AlgebraError> {
        if !sigma.contains(c) {
            return Err(AlgebraError::UnknownLetter(c));
        }
        Ok(self.count_sym(&Sym::Letter(c)))
    }

    /// Largest variable index occurring, or 0 if none.
    pub fn max_var(&self) -> u32 {
        let mut m = 0;
        self.for_each_sym(&mut |s| {
            if let Sym::Var(i) = s {
                m = m.max(*i);
            }
        });
        m
    }

    pub fn count_holes(&self) -> usize {
        self.count_sym(&Sym::Hole)
    }

    pub(crate) fn for_each_sym(&self, f: &mut impl FnMut(&Sym)) {
        match self {
            Object::Word(u) => u.iter().for_each(|s| f(s)),
            Object::Tree(t) => t.for_each_sym(f),
        }
    }

    /// The unique decomposition `t = t₁ ⋆ t₂` of a tree that is neither `⊥`
    /// nor an atom. Words have no unique decomposition; they return `None`.
    pub fn decompose(&self) -> Option<(Object, Object)> {
        match self {
            Object::Tree(Tree::Node(l, r)) => {
                Some((Object::Tree((**l).clone()), Object::Tree((**r).clone())))
            }
            _ => None,
        }
    }

    /// Count of left (`Side::Left`) or right (`Side::Right`) leaves of a
    /// tree. `⊥` has none; a bare atom has none either (it only becomes a
    /// left or right leaf once it is starred into a bigger tree); for
    /// `u = t ⋆ t′` a left child that is an atom contributes one left leaf.
    pub fn leaf_side_count(&self, side: Side) -> Result<usize, AlgebraError> {
        match self {
            Object::Word(_) => Err(AlgebraError::WrongMode {
                expected: Mode::Tree,
                got: Mode::Word,
            }),
            Object::Tree(t) => Ok(tree_side_count(t, side)),
        }
    }
}

fn tree_side_count(t: &Tree, side: Side) -> usize {
    match t {
        Tree::Empty | Tree::Leaf(_) => 0,
        Tree::Node(l, r) => {
            let (outer, inner) = match side {
                Side::Left => (&**l, &**r),
                Side::Right => (&**r, &**l),
            };
            let own = match outer {
                Tree::Leaf(_) => 1,
                _ => tree_side_count(outer, side),
            };
            own + tree_side_count(inner, side)
        }
    }
}

/// All objects of the algebra over the given symbols, within a bound:
/// words of length at most `bound`, trees of symbol count at most `bound`.
///
/// Lengths alone do not bound the tree universe (`⊥ ⋆ t` keeps the length of
/// `t`), hence the size measure there.
pub fn enumerate_objects(mode: Mode, symbols: &[Sym], bound: usize) -> Vec<Object> {
    match mode {
        Mode::Word => {
            let mut out = vec![Vec::new()];
            let mut layer: Vec<Vec<Sym>> = vec![Vec::new()];
            for _ in 0..bound {
                let mut next = Vec::with_capacity(layer.len() * symbols.len());
                for w in &layer {
                    for &s in symbols {
                        let mut w2 = w.clone();
                        w2.push(s);
                        next.push(w2);
                    }
                }
                out.extend(next.iter().cloned());
                layer = next;
            }
            out.into_iter().map(Object::Word).collect()
        }
        Mode::Tree => {
            // by_size[s] lists every tree of symbol count exactly s
            let mut by_size: Vec<Vec<Tree>> = Vec::with_capacity(bound + 1);
            by_size.push(vec![Tree::Empty]);
            if bound >= 1 {
                by_size.push(symbols.iter().map(|&s| Tree::Leaf(s)).collect());
            }
            for s in 2..=bound {
                let mut layer = Vec::new();
                for i in 0..s {
                    let j = s - 1 - i;
                    for l in &by_size[i] {
                        for r in &by_size[j] {
                            if *l == Tree::Empty && *r == Tree::Empty {
                                continue;
                            }
                            layer.push(Tree::Node(Box::new(l.clone()), Box::new(r.clone())));
                        }
                    }
                }
                by_size.push(layer);
            }
            by_size
                .into_iter()
                .flatten()
                .map(Object::Tree)
                .collect()
        }
    }
}

/// Upper bound on `enumerate_objects(mode, symbols, bound).len()` computed
/// without materializing anything, saturating on overflow.
pub fn universe_count(mode: Mode, symbol_count: usize, bound: usize) -> usize {
    match mode {
        Mode::Word => {
            let mut total: usize = 0;
            let mut layer: usize = 1;
            for _ in 0..=bound {
                total = total.saturating_add(layer);
                layer = layer.saturating_mul(symbol_count);
            }
            total
        }
        Mode::Tree => {
            let mut counts: Vec<usize> = Vec::with_capacity(bound + 1);
            counts.push(1);
            if bound >= 1 {
                counts.push(symbol_count);
            }
            for s in 2..=bound {
                let mut c: usize = 0;
                for i in 0..s {
                    c = c.saturating_add(counts[i].saturating_mul(counts[s - 1 - i]));
                }
                counts.push(c);
            }
            counts.iter().fold(0usize, |a, &b| a.saturating_add(b))
        }
    }
}
