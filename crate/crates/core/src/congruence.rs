//! Decidable congruences and the bounded closure oracle.
//!
//! [`closure_oracle`] computes, inside a finite universe, the congruence
//! generated by identifying `u` with `v` everywhere: it seeds a union-find
//! with every pair obtained by replacing one occurrence of `u` by `v`, then
//! closes under compatibility with `⋆` until nothing changes. Chains between
//! two small objects can pass through slightly larger ones, so the seeding
//! universe is padded by the size of `u` before the partition is restricted
//! to the requested bound.
//!
//! The oracle is brute force and only correct up to its bound, but it is
//! independent of the canonical-form machinery in [`crate::rewrite`], which
//! makes the two mutually checkable.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::alphabet::Alphabet;
use crate::object::{enumerate_objects, universe_count, Mode, Object, Side, Sym};
use crate::polynomial::occurrence_replacements;
use crate::rewrite::{in_ct, ReductionSpec};
use crate::text::sort_key;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosureError {
    ModeMismatch,
    NotGround,
    UnknownLetter(char),
    UniverseTooLarge { needed: usize, cap: usize },
}

impl fmt::Display for ClosureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosureError::ModeMismatch => write!(f, "generator pair lives in different modes"),
            ClosureError::NotGround => write!(f, "generators must be variable-free"),
            ClosureError::UnknownLetter(c) => {
                write!(f, "generator uses letter '{c}' outside the alphabet")
            }
            ClosureError::UniverseTooLarge { needed, cap } => {
                write!(f, "bounded universe needs {needed} objects, cap is {cap}")
            }
        }
    }
}

impl core::error::Error for ClosureError {}

#[derive(Debug, Clone, Copy)]
pub struct ClosureConfig {
    /// Hard cap on the padded universe, counted in objects.
    pub max_universe: usize,
}

impl Default for ClosureConfig {
    fn default() -> Self {
        ClosureConfig { max_universe: 500_000 }
    }
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect() }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let up = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = up;
            x = up;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb) as usize] = ra.min(rb);
        true
    }
}

/// A partition of a bounded universe of objects, with deterministic class
/// numbering: classes are ordered by their smallest member (length first,
/// rendered text second), members likewise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    index: BTreeMap<Object, u32>,
    classes: Vec<Vec<Object>>,
}

impl Partition {
    fn build(universe: Vec<Object>, uf: &mut UnionFind, keep: impl Fn(&Object) -> bool) -> Self {
        let mut groups: BTreeMap<u32, Vec<Object>> = BTreeMap::new();
        for (i, obj) in universe.into_iter().enumerate() {
            if keep(&obj) {
                groups.entry(uf.find(i as u32)).or_default().push(obj);
            }
        }
        let mut classes: Vec<Vec<Object>> = groups
            .into_values()
            .map(|mut members| {
                members.sort_by_key(sort_key);
                members
            })
            .collect();
        classes.sort_by_key(|members| sort_key(&members[0]));
        let mut index = BTreeMap::new();
        for (id, members) in classes.iter().enumerate() {
            for m in members {
                index.insert(m.clone(), id as u32);
            }
        }
        Partition { index, classes }
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// The class id of an object, or `None` outside the universe.
    pub fn class_id(&self, t: &Object) -> Option<usize> {
        self.index.get(t).map(|&i| i as usize)
    }

    pub fn members(&self, class: usize) -> &[Object] {
        &self.classes[class]
    }

    /// `Some(true/false)` when both objects are inside the universe.
    pub fn same_class(&self, a: &Object, b: &Object) -> Option<bool> {
        Some(self.class_id(a)? == self.class_id(b)?)
    }

    pub fn classes(&self) -> impl Iterator<Item = &[Object]> {
        self.classes.iter().map(|c| c.as_slice())
    }

    /// The members of minimal length within a class.
    pub fn minimal_members(&self, class: usize) -> Vec<&Object> {
        let members = &self.classes[class];
        let min = members.iter().map(Object::length).min().unwrap();
        members.iter().filter(|m| m.length() == min).collect()
    }

    /// One `class <id>: m1 m2 …` line per class, in presentation order.
    pub fn render_lines(&self) -> Vec<String> {
        self.classes
            .iter()
            .enumerate()
            .map(|(id, members)| {
                let mut line = format!("class {id}:");
                for m in members {
                    line.push(' ');
                    line.push_str(&crate::text::render(m));
                }
                line
            })
            .collect()
    }

    /// The partition as a canonical set of blocks, for equality checks
    /// against other partitions of the same universe.
    pub fn blocks(&self) -> Vec<Vec<Object>> {
        self.classes.clone()
    }
}

fn check_ground(x: &Object, sigma: &Alphabet) -> Result<(), ClosureError> {
    if !x.is_ground() {
        return Err(ClosureError::NotGround);
    }
    let mut bad = None;
    x.for_each_sym(&mut |s| {
        if let Sym::Letter(c) = s {
            if !sigma.contains(*c) && bad.is_none() {
                bad = Some(*c);
            }
        }
    });
    match bad {
        Some(c) => Err(ClosureError::UnknownLetter(c)),
        None => Ok(()),
    }
}

/// The join length of `x ⋆ z` in the universe measure (`size`), used for the
/// compatibility bound.
fn star_size(mode: Mode, a: usize, b: usize) -> usize {
    match mode {
        Mode::Word => a + b,
        Mode::Tree => 1 + a + b,
    }
}

/// Brute-force restriction of the congruence generated by the pair `(u, v)`
/// to the universe of objects of size at most `bound` (for words the size is
/// the length).
pub fn closure_oracle(
    u: &Object,
    v: &Object,
    bound: usize,
    sigma: &Alphabet,
    config: ClosureConfig,
) -> Result<Partition, ClosureError> {
    if u.mode() != v.mode() {
        return Err(ClosureError::ModeMismatch);
    }
    check_ground(u, sigma)?;
    check_ground(v, sigma)?;
    let mode = u.mode();
    let padded = bound + u.size();
    let needed = universe_count(mode, sigma.len(), padded);
    if needed > config.max_universe {
        return Err(ClosureError::UniverseTooLarge { needed, cap: config.max_universe });
    }

    let letters: Vec<Sym> = sigma.letters().iter().map(|&c| Sym::Letter(c)).collect();
    let universe = enumerate_objects(mode, &letters, padded);
    let index: BTreeMap<&Object, u32> = universe
        .iter()
        .enumerate()
        .map(|(i, o)| (o, i as u32))
        .collect();
    let mut uf = UnionFind::new(universe.len());

    // seed with every one-occurrence replacement that stays inside the
    // padded universe
    for (i, t) in universe.iter().enumerate() {
        for replaced in occurrence_replacements(t, u, v) {
            if let Some(&j) = index.get(&replaced) {
                uf.union(i as u32, j);
            }
        }
    }

    // close under compatibility: x ~ y forces x⋆z ~ y⋆z and z⋆x ~ z⋆y
    let mut by_size: Vec<Vec<u32>> = alloc::vec![Vec::new(); padded + 1];
    for (i, t) in universe.iter().enumerate() {
        by_size[t.size()].push(i as u32);
    }
    loop {
        let mut changed = false;
        let mut groups: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for i in 0..universe.len() as u32 {
            groups.entry(uf.find(i)).or_default().push(i);
        }
        for members in groups.values() {
            if members.len() < 2 {
                continue;
            }
            // pairing against the smallest member keeps every join of the
            // other members inside the bound whenever their own join is
            let &anchor = members
                .iter()
                .min_by_key(|&&i| universe[i as usize].size())
                .unwrap();
            let a_obj = &universe[anchor as usize];
            for &y in members {
                if y == anchor {
                    continue;
                }
                let y_obj = &universe[y as usize];
                let room = match padded.checked_sub(star_size(mode, y_obj.size(), 0)) {
                    Some(r) => r,
                    None => continue,
                };
                for z_bucket in &by_size[..=room] {
                    for &z in z_bucket {
                        let z_obj = &universe[z as usize];
                        let left = index[&a_obj.star(z_obj)];
                        let right = index[&y_obj.star(z_obj)];
                        changed |= uf.union(left, right);
                        let left = index[&z_obj.star(a_obj)];
                        let right = index[&z_obj.star(y_obj)];
                        changed |= uf.union(left, right);
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }

    let keep_bound = bound;
    Ok(Partition::build(universe, &mut uf, |o| o.size() <= keep_bound))
}

/// The decidable congruence families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CongruenceSpec {
    /// The congruence generated by identifying `u` and `v` in every context.
    Principal { u: Object, v: Object },
    /// Equal total length.
    TotalLength,
    /// Equal number of occurrences of one letter.
    LetterCount(char),
    /// Words: equal first letter (the empty word is alone in its class).
    FirstLetter,
    /// Trees: equal number of left (or right) leaves, atoms each alone in
    /// their own class.
    LeafSideCount(Side),
    /// Equal length modulo a fixed modulus.
    LengthMod(usize),
}

impl fmt::Display for CongruenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CongruenceSpec::Principal { u, v } => write!(f, "principal({u},{v})"),
            CongruenceSpec::TotalLength => write!(f, "total-length"),
            CongruenceSpec::LetterCount(c) => write!(f, "letter-count({c})"),
            CongruenceSpec::FirstLetter => write!(f, "first-letter"),
            CongruenceSpec::LeafSideCount(Side::Left) => write!(f, "left-leaves"),
            CongruenceSpec::LeafSideCount(Side::Right) => write!(f, "right-leaves"),
            CongruenceSpec::LengthMod(m) => write!(f, "length-mod-{m}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CongruenceError {
    WrongMode { spec: String, mode: Mode },
    InvalidModulus,
    UnknownLetter(char),
    Closure(ClosureError),
}

impl fmt::Display for CongruenceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CongruenceError::WrongMode { spec, mode } => {
                write!(f, "congruence {spec} is not defined in {mode} mode")
            }
            CongruenceError::InvalidModulus => write!(f, "length modulus must be at least 1"),
            CongruenceError::UnknownLetter(c) => {
                write!(f, "letter '{c}' is not in the alphabet")
            }
            CongruenceError::Closure(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for CongruenceError {}

impl From<ClosureError> for CongruenceError {
    fn from(e: ClosureError) -> Self {
        CongruenceError::Closure(e)
    }
}

enum DeciderKind {
    TotalLength,
    LetterCount(Sym),
    FirstLetter,
    LeafSideCount(Side),
    LengthMod(usize),
    /// Exact decision by canonical forms (`u ∈ CT`, `|v| < |u|`).
    Canonical(ReductionSpec),
    /// Bounded closure fallback; inconclusive outside its universe.
    Bounded(Partition),
}

/// A decision procedure for one congruence family, possibly bounded.
pub struct Decider {
    kind: DeciderKind,
}

impl Decider {
    /// Whether two objects are congruent; `None` when the family is only
    /// decided on a bounded universe and an argument falls outside it.
    pub fn congruent(&self, x: &Object, y: &Object) -> Option<bool> {
        match &self.kind {
            DeciderKind::TotalLength => Some(x.length() == y.length()),
            DeciderKind::LetterCount(s) => Some(x.count_sym(s) == y.count_sym(s)),
            DeciderKind::FirstLetter => match (x, y) {
                (Object::Word(a), Object::Word(b)) => Some(a.first() == b.first()),
                _ => None,
            },
            DeciderKind::LeafSideCount(side) => {
                if x.is_atom() || y.is_atom() {
                    return Some(x == y);
                }
                let cx = x.leaf_side_count(*side).ok()?;
                let cy = y.leaf_side_count(*side).ok()?;
                Some(cx == cy)
            }
            DeciderKind::LengthMod(m) => Some(x.length() % m == y.length() % m),
            DeciderKind::Canonical(spec) => {
                // preconditions checked at construction; failures are bugs
                let a = crate::rewrite::reduce_star(x, spec).ok()?;
                let b = crate::rewrite::reduce_star(y, spec).ok()?;
                Some(a == b)
            }
            DeciderKind::Bounded(p) => p.same_class(x, y),
        }
    }

    /// True when the decider answers everywhere, not just inside a bound.
    pub fn is_exact(&self) -> bool {
        !matches!(self.kind, DeciderKind::Bounded(_))
    }
}

impl CongruenceSpec {
    /// Build a decision procedure for this family in the given mode.
    ///
    /// Principal congruences with `u ∈ CT` and `|v| < |u|` are decided
    /// exactly by canonical forms; other principal pairs fall back to a
    /// closure partition bounded by `bound`.
    pub fn decider(
        &self,
        mode: Mode,
        sigma: &Alphabet,
        bound: usize,
        config: ClosureConfig,
    ) -> Result<Decider, CongruenceError> {
        let kind = match self {
            CongruenceSpec::TotalLength => DeciderKind::TotalLength,
            CongruenceSpec::LengthMod(m) => {
                if *m == 0 {
                    return Err(CongruenceError::InvalidModulus);
                }
                DeciderKind::LengthMod(*m)
            }
            CongruenceSpec::LetterCount(c) => {
                if !sigma.contains(*c) {
                    return Err(CongruenceError::UnknownLetter(*c));
                }
                DeciderKind::LetterCount(Sym::Letter(*c))
            }
            CongruenceSpec::FirstLetter => {
                if mode != Mode::Word {
                    return Err(CongruenceError::WrongMode {
                        spec: format!("{self}"),
                        mode,
                    });
                }
                DeciderKind::FirstLetter
            }
            CongruenceSpec::LeafSideCount(side) => {
                if mode != Mode::Tree {
                    return Err(CongruenceError::WrongMode {
                        spec: format!("{self}"),
                        mode,
                    });
                }
                DeciderKind::LeafSideCount(*side)
            }
            CongruenceSpec::Principal { u, v } => {
                if in_ct(u, sigma) && v.length() < u.length() {
                    let spec = ReductionSpec::new(u.clone(), v.clone())
                        .map_err(|_| CongruenceError::Closure(ClosureError::ModeMismatch))?;
                    DeciderKind::Canonical(spec)
                } else {
                    DeciderKind::Bounded(closure_oracle(u, v, bound, sigma, config)?)
                }
            }
        };
        Ok(Decider { kind })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_ground;

    fn sigma() -> Alphabet {
        Alphabet::parse("ab").unwrap()
    }

    fn word(s: &str) -> Object {
        parse_ground(s, Mode::Word, &sigma()).unwrap()
    }

    #[test]
    fn shortest_members_need_not_be_unique() {
        let p = closure_oracle(&word("aa"), &word("b"), 3, &sigma(), ClosureConfig::default())
            .unwrap();
        let class = p.class_id(&word("aaa")).unwrap();
        assert_eq!(p.class_id(&word("ab")), Some(class));
        assert_eq!(p.class_id(&word("ba")), Some(class));
        let minimal = p.minimal_members(class);
        assert_eq!(minimal, alloc::vec![&word("ab"), &word("ba")]);
    }

    #[test]
    fn identity_pair_gives_identity_partition() {
        let p = closure_oracle(&word("ab"), &word("ab"), 3, &sigma(), ClosureConfig::default())
            .unwrap();
        assert_eq!(p.class_count(), 15);
        assert!(p.classes().all(|c| c.len() == 1));
    }

    #[test]
    fn universe_cap_is_enforced() {
        let cfg = ClosureConfig { max_universe: 10 };
        assert!(matches!(
            closure_oracle(&word("aa"), &word("b"), 3, &sigma(), cfg),
            Err(ClosureError::UniverseTooLarge { .. })
        ));
    }

    #[test]
    fn out_of_alphabet_generators_are_rejected() {
        let u = Object::word_of("ca");
        assert_eq!(
            closure_oracle(&u, &word("a"), 3, &sigma(), ClosureConfig::default()),
            Err(ClosureError::UnknownLetter('c'))
        );
    }

    #[test]
    fn family_deciders() {
        let s = sigma();
        let cfg = ClosureConfig::default();
        let len = CongruenceSpec::TotalLength.decider(Mode::Word, &s, 4, cfg).unwrap();
        assert_eq!(len.congruent(&word("ab"), &word("ba")), Some(true));
        assert_eq!(len.congruent(&word("ab"), &word("b")), Some(false));

        let first = CongruenceSpec::FirstLetter.decider(Mode::Word, &s, 4, cfg).unwrap();
        assert_eq!(first.congruent(&word("ba"), &word("bb")), Some(true));
        assert_eq!(first.congruent(&word("ab"), &word("bb")), Some(false));
        assert_eq!(first.congruent(&word("_"), &word("a")), Some(false));
        assert!(CongruenceSpec::FirstLetter.decider(Mode::Tree, &s, 4, cfg).is_err());

        let count = CongruenceSpec::LetterCount('a').decider(Mode::Word, &s, 4, cfg).unwrap();
        assert_eq!(count.congruent(&word("ab"), &word("ba")), Some(true));
        assert_eq!(count.congruent(&word("aa"), &word("ab")), Some(false));

        // principal pair in CT: decided exactly, even far beyond any bound
        let principal = CongruenceSpec::Principal { u: word("aababb"), v: word("_") }
            .decider(Mode::Word, &s, 4, cfg)
            .unwrap();
        assert!(principal.is_exact());
        assert_eq!(principal.congruent(&word("abaababbbb"), &word("abbb")), Some(true));

        // outside CT: bounded fallback
        let fallback = CongruenceSpec::Principal { u: word("aa"), v: word("b") }
            .decider(Mode::Word, &s, 3, cfg)
            .unwrap();
        assert!(!fallback.is_exact());
        assert_eq!(fallback.congruent(&word("aaa"), &word("ba")), Some(true));
        assert_eq!(fallback.congruent(&word("aaaa"), &word("ba")), None);
    }

    #[test]
    fn leaf_side_decider_isolates_atoms() {
        let s = sigma();
        let cfg = ClosureConfig::default();
        let d = CongruenceSpec::LeafSideCount(Side::Left)
            .decider(Mode::Tree, &s, 4, cfg)
            .unwrap();
        let a = parse_ground("a", Mode::Tree, &s).unwrap();
        let b = parse_ground("b", Mode::Tree, &s).unwrap();
        let bottom = parse_ground("_", Mode::Tree, &s).unwrap();
        let ab = parse_ground("(a.b)", Mode::Tree, &s).unwrap();
        let ba = parse_ground("(b.a)", Mode::Tree, &s).unwrap();
        assert_eq!(d.congruent(&a, &b), Some(false));
        assert_eq!(d.congruent(&a, &a), Some(true));
        // ⊥ is not an atom: it compares by left-leaf count
        assert_eq!(d.congruent(&bottom, &a), Some(false));
        assert_eq!(d.congruent(&ab, &ba), Some(true));
    }
}
