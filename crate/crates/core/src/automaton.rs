//! The automaton over bLSP morphisms whose paths follow fragilities.
//!
//! A state is a sub-alphabet, a bLSP morphism and a set of fragility tuples.
//! `(q, f, q′)` is a transition when
//!
//! 1. `f` is the morphism of `q`;
//! 2. `alph(q)` is the set of letters of `f(alph(q′))`;
//! 3. `f` is not breaking for any tuple of `q′`;
//! 4. the tuples of `q` are exactly those created by `f` on `alph(q′)` or
//!    propagated through `f` from the tuples of `q′`, restricted to `alph(q)`.
//!
//! States are built on demand: for fixed `f` and `q′` conditions 2 and 4
//! determine `q`, so [`backward_state`] walks a directive word right to left.
//!
//! Both recognition modes of [`recognize`] check finite prefixes only. The
//! empty-tail mode assumes a fragility-free continuation; the word-tail mode
//! reads states off supplied word prefixes. Neither decides recognition of
//! an infinite directive word.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::blsp::{enumerate, BlspMorphism};
use crate::desub::desubstitute;
use crate::error::{Error, Result};
use crate::fragility::{fragility_tuples, new_fragility_tuples, propagated_tuples, FragilityTuple};
use crate::word::{LetterSet, Word};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AutomatonState {
    alph: LetterSet,
    morphism: BlspMorphism,
    tuples: BTreeSet<FragilityTuple>,
}

impl AutomatonState {
    pub fn new(alph: LetterSet, morphism: BlspMorphism, tuples: BTreeSet<FragilityTuple>) -> Result<Self> {
        if let Some(x) = alph.iter().find(|&x| !morphism.domain().contains(x)) {
            return Err(Error::DomainError(x));
        }
        for t in &tuples {
            if !t.letters().is_subset(alph) {
                return Err(Error::Parse(format!("tuple {t} uses letters outside {alph}")));
            }
        }
        Ok(AutomatonState { alph, morphism, tuples })
    }

    pub fn alph(&self) -> LetterSet {
        self.alph
    }

    pub fn morphism(&self) -> &BlspMorphism {
        &self.morphism
    }

    pub fn tuples(&self) -> &BTreeSet<FragilityTuple> {
        &self.tuples
    }
}

/// `({a,b}|[ba,b]|{(a,b,c|c,a)})`
impl fmt::Display for AutomatonState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{}|{{", self.alph, self.morphism)?;
        for (i, t) in self.tuples.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str("})")
    }
}

impl fmt::Debug for AutomatonState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for AutomatonState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected (alph|morphism|{{tuples}}), got {s:?}"));
        let inner = s.trim().strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        let (alph, rest) = inner.split_once('|').ok_or_else(bad)?;
        let (morphism, tuples) = rest.split_once("|{").ok_or_else(bad)?;
        let tuples = tuples.strip_suffix('}').ok_or_else(bad)?;
        let tuples = tuples
            .split_inclusive(')')
            .map(|t| t.trim().trim_start_matches(',').trim())
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<Result<_>>()?;
        AutomatonState::new(alph.parse()?, morphism.parse()?, tuples)
    }
}

/// The reason a triple `(q, f, q′)` is not a transition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Condition 1.
    Label { expected: BlspMorphism, found: BlspMorphism },
    /// Condition 2; `found` is `None` when `alph(q′)` leaves the domain of `f`.
    Alphabet { expected: LetterSet, found: Option<LetterSet> },
    /// Condition 3.
    Breaking(FragilityTuple),
    /// Condition 4.
    Tuples { missing: BTreeSet<FragilityTuple>, unexpected: BTreeSet<FragilityTuple> },
}

impl Violation {
    pub fn condition(&self) -> u8 {
        match self {
            Violation::Label { .. } => 1,
            Violation::Alphabet { .. } => 2,
            Violation::Breaking(_) => 3,
            Violation::Tuples { .. } => 4,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Label { expected, found } => {
                write!(f, "condition 1: label {found} differs from state morphism {expected}")
            }
            Violation::Alphabet { expected, found: Some(found) } => {
                write!(f, "condition 2: alphabet {expected} but images cover {found}")
            }
            Violation::Alphabet { expected, found: None } => {
                write!(f, "condition 2: alphabet {expected} but the target alphabet leaves the morphism domain")
            }
            Violation::Breaking(t) => write!(f, "condition 3: morphism is breaking for {t}"),
            Violation::Tuples { missing, unexpected } => write!(
                f,
                "condition 4: missing {} tuple(s), unexpected {} tuple(s)",
                missing.len(),
                unexpected.len()
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionCheck {
    pub violation: Option<Violation>,
}

impl TransitionCheck {
    pub fn ok(&self) -> bool {
        self.violation.is_none()
    }

    pub fn violated_condition(&self) -> Option<u8> {
        self.violation.as_ref().map(Violation::condition)
    }
}

/// Tuples forced on the source of a transition labeled `f` into `target`.
fn forced_tuples(f: &BlspMorphism, target: &AutomatonState, alph: LetterSet) -> BTreeSet<FragilityTuple> {
    new_fragility_tuples(f, target.alph)
        .into_iter()
        .chain(propagated_tuples(f, &target.tuples))
        .filter(|t| t.letters().is_subset(alph))
        .collect()
}

fn first_breaking(f: &BlspMorphism, target: &AutomatonState) -> Option<FragilityTuple> {
    target
        .tuples
        .iter()
        .copied()
        .find(|t| f.is_breaking(t.a, t.b, t.c).unwrap_or(false))
}

/// Checks the four transition conditions in order and reports the first violation.
pub fn is_transition(q: &AutomatonState, f: &BlspMorphism, target: &AutomatonState) -> TransitionCheck {
    let fail = |v| TransitionCheck { violation: Some(v) };
    if *f != q.morphism {
        return fail(Violation::Label { expected: q.morphism.clone(), found: f.clone() });
    }
    let covered = f.image_alphabet(target.alph).ok();
    if covered != Some(q.alph) {
        return fail(Violation::Alphabet { expected: q.alph, found: covered });
    }
    if let Some(t) = first_breaking(f, target) {
        return fail(Violation::Breaking(t));
    }
    let expected = forced_tuples(f, target, q.alph);
    if expected != q.tuples {
        return fail(Violation::Tuples {
            missing: expected.difference(&q.tuples).copied().collect(),
            unexpected: q.tuples.difference(&expected).copied().collect(),
        });
    }
    TransitionCheck { violation: None }
}

/// The unique state `q` with morphism `f` such that `(q, f, target)` is a transition.
pub fn backward_state(f: &BlspMorphism, target: &AutomatonState) -> Result<AutomatonState> {
    let alph = f.image_alphabet(target.alph)?;
    if let Some(tuple) = first_breaking(f, target) {
        return Err(Error::Breaking { step: None, tuple });
    }
    let tuples = forced_tuples(f, target, alph);
    Ok(AutomatonState { alph, morphism: f.clone(), tuples })
}

/// State of a word prefix: its alphabet, its desubstitution morphism and the
/// fragility tuples visible within `fragility_bound`. Tuples may grow when
/// the prefix is extended.
pub fn state_of_word(w: &Word, fragility_bound: usize) -> Result<AutomatonState> {
    let morphism = desubstitute(w)?.morphism;
    Ok(AutomatonState { alph: w.alph(), morphism, tuples: fragility_tuples(w, fragility_bound) })
}

/// Like [`state_of_word`] but with a caller-chosen morphism component.
pub fn state_of_word_under(w: &Word, f: &BlspMorphism, fragility_bound: usize) -> Result<AutomatonState> {
    AutomatonState::new(w.alph(), f.clone(), fragility_tuples(w, fragility_bound))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainReport {
    pub states: Vec<AutomatonState>,
    pub steps: Vec<TransitionCheck>,
}

impl ChainReport {
    /// 1-based index of the first failing step with its violation.
    pub fn first_failure(&self) -> Option<(usize, &Violation)> {
        self.steps
            .iter()
            .enumerate()
            .find_map(|(i, s)| s.violation.as_ref().map(|v| (i + 1, v)))
    }
}

/// Validates `(q(words[i]), directive[i], q(words[i+1]))` for every step,
/// where `words[i] = directive[i](words[i+1])` up to an incomplete last image.
pub fn check_chain(words: &[Word], directive: &[BlspMorphism], fragility_bound: usize) -> Result<ChainReport> {
    if directive.is_empty() {
        return Err(Error::EmptyDirective);
    }
    if words.len() != directive.len() + 1 {
        return Err(Error::Parse(format!(
            "{} words for {} morphisms; expected one more word than morphisms",
            words.len(),
            directive.len()
        )));
    }
    let mut states = Vec::with_capacity(words.len());
    for (i, f) in directive.iter().enumerate() {
        let image = f.apply(&words[i + 1])?;
        let rest = words[i].strip_prefix(image.letters()).ok_or(Error::NotAnImage { step: i + 1 })?;
        let incomplete = rest.is_empty() || f.images().any(|(_, img)| img.len() > rest.len() && img.starts_with(rest));
        if !incomplete {
            return Err(Error::NotAnImage { step: i + 1 });
        }
        states.push(state_of_word_under(&words[i], f, fragility_bound)?);
    }
    states.push(state_of_word(&words[directive.len()], fragility_bound)?);
    let steps = directive
        .iter()
        .enumerate()
        .map(|(i, f)| is_transition(&states[i], f, &states[i + 1]))
        .collect();
    Ok(ChainReport { states, steps })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tail {
    /// Seed the last state with this alphabet and no tuples.
    Empty(LetterSet),
    /// One word prefix per state, `directive.len() + 1` of them.
    Words(Vec<Word>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recognition {
    /// States from `q_1` to `q_{n+1}`; on rejection only the suffix computed so far.
    pub states: Vec<AutomatonState>,
    /// 1-based step and the violated condition.
    pub rejection: Option<(usize, Violation)>,
}

impl Recognition {
    pub fn accepted(&self) -> bool {
        self.rejection.is_none()
    }
}

/// Checks a finite directive prefix against the automaton.
pub fn recognize(directive: &[BlspMorphism], tail: &Tail) -> Result<Recognition> {
    if directive.is_empty() {
        return Err(Error::EmptyDirective);
    }
    match tail {
        Tail::Empty(alph) => {
            // the morphism of the seed state is never consulted
            let seed = AutomatonState::new(*alph, BlspMorphism::star(*alph)?, BTreeSet::new())?;
            recognize_from(directive, seed)
        }
        Tail::Words(words) => {
            let report = check_chain(words, directive, usize::MAX)?;
            let rejection = report.first_failure().map(|(i, v)| (i, v.clone()));
            Ok(Recognition { states: report.states, rejection })
        }
    }
}

/// Empty-tail recognition from an explicit seed state `q_{n+1}`.
pub fn recognize_from(directive: &[BlspMorphism], seed: AutomatonState) -> Result<Recognition> {
    let mut states = vec![seed];
    for (i, f) in directive.iter().enumerate().rev() {
        let target = states.last().expect("non-empty chain");
        match backward_state(f, target) {
            Ok(q) => states.push(q),
            Err(Error::Breaking { tuple, .. }) => {
                states.reverse();
                return Ok(Recognition { states, rejection: Some((i + 1, Violation::Breaking(tuple))) });
            }
            Err(e) => return Err(e),
        }
    }
    states.reverse();
    Ok(Recognition { states, rejection: None })
}

/// An explicit fragment of the automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    pub states: Vec<AutomatonState>,
    /// `(source index, label, target index)`
    pub transitions: Vec<(usize, BlspMorphism, usize)>,
}

impl Graph {
    /// One line per transition: `source -label-> target`.
    pub fn edge_list(&self) -> String {
        let mut out = String::new();
        for (s, f, t) in &self.transitions {
            let _ = writeln!(out, "{} -{}-> {}", self.states[*s], f, self.states[*t]);
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph automaton {\n  rankdir=LR;\n  node [shape=box, style=rounded];\n");
        for (i, q) in self.states.iter().enumerate() {
            let _ = writeln!(out, "  q{i} [label=\"{q}\"];");
        }
        for (s, f, t) in &self.transitions {
            let _ = writeln!(out, "  q{s} -> q{t} [label=\"{f}\"];");
        }
        out.push_str("}\n");
        out
    }
}

/// The binary automaton restricted to states that carry a transition.
///
/// Binary words have no fragilities, so every state has an empty tuple set.
/// States with an empty alphabet are left out since no word has an empty
/// alphabet, and states without outgoing transitions are pruned repeatedly.
pub fn binary_automaton() -> Graph {
    let ab = LetterSet::first_n(2).expect("two letters");
    let morphisms: Vec<BlspMorphism> = enumerate(ab).expect("two letters").collect();
    let mut states = Vec::new();
    for bits in 1..=ab.bits() {
        for f in &morphisms {
            states.push(AutomatonState {
                alph: LetterSet::from_bits(bits),
                morphism: f.clone(),
                tuples: BTreeSet::new(),
            });
        }
    }
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (i, q) in states.iter().enumerate() {
        for (j, target) in states.iter().enumerate() {
            if is_transition(q, &q.morphism, target).ok() {
                edges.push((i, j));
            }
        }
    }
    let mut alive = vec![true; states.len()];
    loop {
        let mut changed = false;
        for i in 0..states.len() {
            if alive[i] && !edges.iter().any(|&(s, t)| s == i && alive[t]) {
                alive[i] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let index: Vec<Option<usize>> = alive
        .iter()
        .scan(0, |next, &a| {
            Some(a.then(|| {
                *next += 1;
                *next - 1
            }))
        })
        .collect();
    let transitions = edges
        .iter()
        .filter_map(|&(s, t)| Some((index[s]?, states[s].morphism.clone(), index[t]?)))
        .collect();
    let states = states.into_iter().zip(&alive).filter(|(_, &a)| a).map(|(q, _)| q).collect();
    Graph { states, transitions }
}
