//! Replacement of a pattern `τ` by a smaller object `v`, and everything the
//! canonical forms of the principal congruence `∼_{τ,v}` need.
//!
//! [`reduce_once`] rewrites the leftmost occurrence of `τ`; [`reduce_star`]
//! iterates it to the irreducible fixpoint, which terminates whenever
//! `|v| < |τ|`. For `τ` in the curated set CT ([`in_ct`]) the fixpoint is a
//! canonical representative: two objects are congruent exactly when their
//! fixpoints coincide ([`equivalent`]). Outside CT that criterion is unsound
//! (e.g. `τ = aba` self-overlaps) and only the bounded closure oracle in
//! [`crate::congruence`] applies.
//!
//! CT is mode specific: every tree of length at least 2 qualifies, while
//! words must have the shape `aⁿbabⁿ` with `n > 1` over the alphabet's two
//! designated letters.

use alloc::vec::Vec;
use core::fmt;

use crate::alphabet::Alphabet;
use crate::object::{Mode, Object, Sym};
use crate::polynomial::{find_occurrence, Context, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RewriteError {
    ModeMismatch { left: Mode, right: Mode },
    /// `reduce_once` was asked to rewrite an object without an occurrence of
    /// the pattern.
    Irreducible,
    /// `|v| ≥ |τ|`: iterated replacement is not guaranteed to terminate.
    NonTerminating { tau_len: usize, v_len: usize },
    /// Canonical-form equivalence is only sound for `τ` in CT.
    TauNotInCt,
    /// The fresh variable for a polynomial reduction already occurs.
    VariableCollision(u32),
}

impl fmt::Display for RewriteError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RewriteError::ModeMismatch { left, right } => {
                write!(f, "pattern and replacement live in different modes ({left} vs {right})")
            }
            RewriteError::Irreducible => write!(f, "object has no occurrence of the pattern"),
            RewriteError::NonTerminating { tau_len, v_len } => write!(
                f,
                "replacement length {v_len} is not smaller than pattern length {tau_len}; \
                 the rewrite fixpoint may not terminate"
            ),
            RewriteError::TauNotInCt => write!(
                f,
                "tau is not in CT, so equal canonical forms do not decide the congruence; \
                 use the bounded closure oracle instead"
            ),
            RewriteError::VariableCollision(i) => {
                write!(f, "fresh variable x{i} already occurs in the polynomial")
            }
        }
    }
}

impl core::error::Error for RewriteError {}

/// A rewrite rule `τ → v` over one algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionSpec {
    tau: Object,
    v: Object,
}

impl ReductionSpec {
    pub fn new(tau: Object, v: Object) -> Result<Self, RewriteError> {
        if tau.mode() != v.mode() {
            return Err(RewriteError::ModeMismatch {
                left: tau.mode(),
                right: v.mode(),
            });
        }
        Ok(ReductionSpec { tau, v })
    }

    pub fn tau(&self) -> &Object {
        &self.tau
    }

    pub fn v(&self) -> &Object {
        &self.v
    }

    pub fn mode(&self) -> Mode {
        self.tau.mode()
    }
}

/// Is `tau` a sub-object (factor or subtree) of `t`?
pub fn is_reducible(t: &Object, tau: &Object) -> bool {
    find_occurrence(t, tau).is_some()
}

/// Replace the leftmost occurrence of the pattern; errors when there is none.
pub fn reduce_once(t: &Object, spec: &ReductionSpec) -> Result<Object, RewriteError> {
    match find_occurrence(t, spec.tau()) {
        Some(ctx) => Ok(ctx.apply(spec.v())),
        None => Err(RewriteError::Irreducible),
    }
}

/// Iterate [`reduce_once`] until the object is irreducible.
///
/// Requires `|v| < |τ|`; every step then strictly shrinks the object, so the
/// fixpoint is reached after finitely many steps.
pub fn reduce_star(t: &Object, spec: &ReductionSpec) -> Result<Object, RewriteError> {
    if spec.v().length() >= spec.tau().length() {
        return Err(RewriteError::NonTerminating {
            tau_len: spec.tau().length(),
            v_len: spec.v().length(),
        });
    }
    let mut cur = t.clone();
    while let Some(ctx) = find_occurrence(&cur, spec.tau()) {
        cur = ctx.apply(spec.v());
    }
    Ok(cur)
}

/// Membership in the curated set CT of patterns whose canonical forms decide
/// the congruence: ground trees of length at least 2, and ground words of the
/// shape `aⁿbabⁿ` with `n > 1` for the designated letters `a`, `b`.
pub fn in_ct(tau: &Object, sigma: &Alphabet) -> bool {
    if !tau.is_ground() {
        return false;
    }
    match tau {
        Object::Tree(_) => tau.length() >= 2,
        Object::Word(w) => {
            let (a, b) = match sigma.second() {
                Some(b) => (Sym::Letter(sigma.first()), Sym::Letter(b)),
                None => return false,
            };
            let n = w.iter().take_while(|&&s| s == a).count();
            n > 1
                && w.len() == 2 * n + 2
                && w[n] == b
                && w[n + 1] == a
                && w[n + 2..].iter().all(|&s| s == b)
        }
    }
}

/// The word `aⁿbabⁿ` over the designated letters. `None` when the alphabet
/// has a single letter or `n < 2`.
pub fn ct_word(sigma: &Alphabet, n: usize) -> Option<Object> {
    let b = sigma.second()?;
    if n < 2 {
        return None;
    }
    let a = sigma.first();
    let mut syms = Vec::with_capacity(2 * n + 2);
    syms.extend(core::iter::repeat(Sym::Letter(a)).take(n));
    syms.push(Sym::Letter(b));
    syms.push(Sym::Letter(a));
    syms.extend(core::iter::repeat(Sym::Letter(b)).take(n));
    Some(Object::Word(syms))
}

/// The left comb `(((a ⋆ a) ⋆ a) ⋆ …) ⋆ a` with `len` leaves, all labelled by
/// the first letter. Any such comb of length at least 2 is in CT.
pub fn ct_tree_comb(sigma: &Alphabet, len: usize) -> Option<Object> {
    if len < 2 {
        return None;
    }
    let a = Object::letter(Mode::Tree, sigma.first());
    let mut t = a.clone();
    for _ in 1..len {
        t = t.star(&a);
    }
    Some(t)
}

/// Decide `t ∼_{τ,v} t′` by comparing canonical forms.
///
/// Sound only for `τ ∈ CT` with `|v| < |τ|`; refuses other patterns.
pub fn equivalent(
    t: &Object,
    t2: &Object,
    spec: &ReductionSpec,
    sigma: &Alphabet,
) -> Result<bool, RewriteError> {
    if !in_ct(spec.tau(), sigma) {
        return Err(RewriteError::TauNotInCt);
    }
    Ok(reduce_star(t, spec)? == reduce_star(t2, spec)?)
}

/// Does the canonical form forget which of `τ` or `v` was plugged into the
/// context? `Red*(C(τ)) = Red*(C(v))` holds for every context whenever
/// `τ ∈ CT`; for self-overlapping words it can fail.
pub fn check_assumption1(
    tau: &Object,
    v: &Object,
    ctx: &Context,
) -> Result<bool, RewriteError> {
    let spec = ReductionSpec::new(tau.clone(), v.clone())?;
    let left = reduce_star(&ctx.apply(tau), &spec)?;
    let right = reduce_star(&ctx.apply(v), &spec)?;
    Ok(left == right)
}

/// Replace every occurrence of `τ` inside a polynomial body by a fresh
/// variable, treating the body as an object over the extended alphabet.
///
/// Returns the input unchanged when the body is already `τ`-irreducible;
/// otherwise the declared arity grows to cover the fresh variable.
pub fn polynomial_reduce(
    q: &Polynomial,
    tau: &Object,
    fresh: u32,
) -> Result<Polynomial, RewriteError> {
    if q.body().count_sym(&Sym::Var(fresh)) > 0 {
        return Err(RewriteError::VariableCollision(fresh));
    }
    let spec = ReductionSpec::new(tau.clone(), Object::var(q.mode(), fresh))?;
    let reduced = reduce_star(q.body(), &spec)?;
    if &reduced == q.body() {
        return Ok(q.clone());
    }
    let arity = q.arity().max(fresh as usize);
    Ok(Polynomial::new(reduced, arity).expect("reduction cannot introduce holes"))
}

/// Why an object is or is not strongly `τ`-irreducible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StrongIrreducibility {
    /// Irreducible and, for words, overlap-free: the object survives every
    /// `Red*` as a sub-object.
    Strong,
    /// The definition requires `|w| ≥ |τ|`.
    TooShort,
    /// `τ` occurs inside the object.
    Reducible,
    /// Words only: the reported word is a suffix of `w` and a proper
    /// nonempty prefix of `τ`, so an occurrence of `w` can be destroyed by a
    /// reduction starting inside it.
    SuffixPrefixOverlap(Object),
    /// Words only: the reported word is a prefix of `w` and a proper
    /// nonempty suffix of `τ`.
    PrefixSuffixOverlap(Object),
}

impl StrongIrreducibility {
    pub fn is_strong(&self) -> bool {
        matches!(self, StrongIrreducibility::Strong)
    }
}

impl fmt::Display for StrongIrreducibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrongIrreducibility::Strong => write!(f, "strongly irreducible"),
            StrongIrreducibility::TooShort => write!(f, "shorter than tau"),
            StrongIrreducibility::Reducible => write!(f, "reducible (tau occurs)"),
            StrongIrreducibility::SuffixPrefixOverlap(t) => {
                write!(f, "overlap: '{t}' is a suffix of the word and a prefix of tau")
            }
            StrongIrreducibility::PrefixSuffixOverlap(t) => {
                write!(f, "overlap: '{t}' is a prefix of the word and a suffix of tau")
            }
        }
    }
}

/// Classify `w` against the strong irreducibility criterion.
///
/// Trees: a `τ`-irreducible tree of length at least `|τ|` is strongly
/// irreducible. Words additionally require that `w` and `τ` do not overlap;
/// the variants report the longest offending overlap word.
pub fn strong_irreducibility(w: &Object, tau: &Object) -> StrongIrreducibility {
    if w.length() < tau.length() {
        return StrongIrreducibility::TooShort;
    }
    if is_reducible(w, tau) {
        return StrongIrreducibility::Reducible;
    }
    if let (Object::Word(w), Object::Word(t)) = (w, tau) {
        // longest t' ∉ {ε, τ} that is a suffix of w and a prefix of τ
        for len in (1..t.len().min(w.len()) + 1).rev() {
            if len == t.len() {
                continue;
            }
            if w[w.len() - len..] == t[..len] {
                return StrongIrreducibility::SuffixPrefixOverlap(Object::Word(t[..len].to_vec()));
            }
        }
        for len in (1..t.len().min(w.len()) + 1).rev() {
            if len == t.len() {
                continue;
            }
            if w[..len] == t[t.len() - len..] {
                return StrongIrreducibility::PrefixSuffixOverlap(
                    Object::Word(t[t.len() - len..].to_vec()),
                );
            }
        }
    }
    StrongIrreducibility::Strong
}

pub fn is_strongly_irreducible(w: &Object, tau: &Object) -> bool {
    strong_irreducibility(w, tau).is_strong()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_context, parse_ground, parse_polynomial, render};

    fn sigma() -> Alphabet {
        Alphabet::parse("abcd").unwrap()
    }

    fn word(s: &str) -> Object {
        parse_ground(s, Mode::Word, &sigma()).unwrap()
    }

    fn tree(s: &str) -> Object {
        parse_ground(s, Mode::Tree, &sigma()).unwrap()
    }

    #[test]
    fn reducibility_examples() {
        assert!(is_reducible(&tree("(((c.d)._).(c.d))"), &tree("(c.d)")));
        assert!(!is_reducible(&word("ab"), &word("aba")));
        assert!(is_reducible(&word("aaa"), &word("aa")));
    }

    #[test]
    fn two_step_tree_reduction() {
        let spec = ReductionSpec::new(tree("(c.d)"), tree("a")).unwrap();
        let t = tree("(((c.d)._).(c.d))");
        let t1 = reduce_once(&t, &spec).unwrap();
        assert_eq!(render(&t1), "((a._).(c.d))");
        let t2 = reduce_once(&t1, &spec).unwrap();
        assert_eq!(render(&t2), "((a._).a)");
        assert_eq!(reduce_once(&t2, &spec), Err(RewriteError::Irreducible));
        assert_eq!(reduce_star(&t, &spec).unwrap(), t2);
    }

    #[test]
    fn word_reduction_is_leftmost() {
        let spec = ReductionSpec::new(word("aba"), word("_")).unwrap();
        assert_eq!(reduce_once(&word("ababa"), &spec).unwrap(), word("ba"));

        let spec = ReductionSpec::new(word("aa"), word("b")).unwrap();
        assert_eq!(reduce_star(&word("aaa"), &spec).unwrap(), word("ba"));
        // already irreducible objects come back unchanged
        assert_eq!(reduce_star(&word("bab"), &spec).unwrap(), word("bab"));
    }

    #[test]
    fn reduce_star_guards_termination() {
        let spec = ReductionSpec::new(word("a"), word("ab")).unwrap();
        assert!(matches!(
            reduce_star(&word("aaa"), &spec),
            Err(RewriteError::NonTerminating { .. })
        ));
    }

    #[test]
    fn ct_membership() {
        let s = sigma();
        assert!(in_ct(&word("aababb"), &s));
        assert!(in_ct(&word("aaababbb"), &s));
        assert!(!in_ct(&word("aba"), &s));
        assert!(!in_ct(&word("aabb"), &s));
        assert!(!in_ct(&word("aababbb"), &s));
        assert!(!in_ct(&tree("a"), &s));
        assert!(in_ct(&tree("(a.b)"), &s));
        assert_eq!(ct_word(&s, 2).unwrap(), word("aababb"));
        assert_eq!(ct_word(&s, 1), None);
        assert_eq!(render(&ct_tree_comb(&s, 4).unwrap()), "(((a.a).a).a)");

        let one = Alphabet::parse("a").unwrap();
        assert!(!in_ct(&Object::word_of("aabaabb"), &one));
    }

    #[test]
    fn equivalence_needs_ct() {
        let s = sigma();
        let spec = ReductionSpec::new(word("aababb"), word("_")).unwrap();
        assert!(!equivalent(&word("ab"), &word("ba"), &spec, &s).unwrap());
        assert!(equivalent(&word("abaababb"), &word("ab"), &spec, &s).unwrap());

        let bad = ReductionSpec::new(word("aba"), word("_")).unwrap();
        assert_eq!(
            equivalent(&word("ababa"), &word("ab"), &bad, &s),
            Err(RewriteError::TauNotInCt)
        );
    }

    #[test]
    fn assumption1_fails_on_self_overlap() {
        let s = sigma();
        let ctx = parse_context("aby", Mode::Word, &s).unwrap();
        let spec = ReductionSpec::new(word("aba"), word("_")).unwrap();
        assert_eq!(reduce_star(&word("ababa"), &spec).unwrap(), word("ba"));
        assert_eq!(reduce_star(&word("ab"), &spec).unwrap(), word("ab"));
        assert!(!check_assumption1(&word("aba"), &word("_"), &ctx).unwrap());
        // aababb does not self-overlap; the same context is harmless
        assert!(check_assumption1(&word("aababb"), &word("_"), &ctx).unwrap());
    }

    #[test]
    fn polynomial_reduction() {
        let s = sigma();
        // ((b.x1).(c.d)) reduces to ((b.x1).x2)
        let q = parse_polynomial("((b.x1).(c.d))", Mode::Tree, &s).unwrap();
        let p = polynomial_reduce(&q, &tree("(c.d)"), 2).unwrap();
        assert_eq!(render(p.body()), "((b.x1).x2)");
        assert_eq!(p.arity(), 2);
        assert_eq!(p.multidegree(), alloc::vec![1, 1]);

        // already irreducible: unchanged, arity kept
        let q = parse_polynomial("((b.x1).c)", Mode::Tree, &s).unwrap();
        assert_eq!(polynomial_reduce(&q, &tree("(c.d)"), 2).unwrap(), q);

        let q = parse_polynomial("aababbx1", Mode::Word, &s).unwrap();
        let p = polynomial_reduce(&q, &word("aababb"), 2).unwrap();
        assert_eq!(render(p.body()), "x2x1");

        assert_eq!(
            polynomial_reduce(&q, &word("aababb"), 1),
            Err(RewriteError::VariableCollision(1))
        );
    }

    #[test]
    fn strong_irreducibility_table() {
        let tau = word("aabb");
        let cases = [
            ("aaabb", StrongIrreducibility::Reducible),
            ("aabbb", StrongIrreducibility::Reducible),
            ("aabb", StrongIrreducibility::Reducible),
            ("aaab", StrongIrreducibility::SuffixPrefixOverlap(word("aab"))),
            ("abbb", StrongIrreducibility::PrefixSuffixOverlap(word("abb"))),
        ];
        for (w, expected) in cases {
            assert_eq!(strong_irreducibility(&word(w), &tau), expected, "case {w}");
        }
        assert!(is_strongly_irreducible(&word("ababab"), &word("aababb")));
        assert_eq!(strong_irreducibility(&word("ab"), &tau), StrongIrreducibility::TooShort);
    }

    #[test]
    fn tree_strong_irreducibility_is_plain_irreducibility() {
        let tau = tree("(a.b)");
        assert!(is_strongly_irreducible(&tree("(b.a)"), &tau));
        assert!(is_strongly_irreducible(&tree("((b.a).b)"), &tau));
        assert_eq!(
            strong_irreducibility(&tree("((a.b).a)"), &tau),
            StrongIrreducibility::Reducible
        );
    }
}
