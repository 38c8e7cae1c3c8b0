//! Fragilities: configurations through which a bLSP morphism can destroy
//! the LSP property.
//!
//! A word `u` is an `(a,b,c,β,γ)`-fragility of `w` when `u·a` is a prefix of
//! `w` while `β·u·b` and `γ·u·c` occur in `w`, with `a, b, c` pairwise
//! distinct and `β ≠ γ`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::blsp::BlspMorphism;
use crate::error::{Error, Result};
use crate::word::{Letter, LetterSet, Word};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FragilityTuple {
    pub a: Letter,
    pub b: Letter,
    pub c: Letter,
    pub beta: Letter,
    pub gamma: Letter,
}

impl FragilityTuple {
    pub fn new(a: Letter, b: Letter, c: Letter, beta: Letter, gamma: Letter) -> Result<Self> {
        if a == b || b == c || a == c {
            return Err(Error::NotATriple(a, b, c));
        }
        if beta == gamma {
            return Err(Error::Parse(format!("β and γ must differ, both are {beta}")));
        }
        Ok(FragilityTuple { a, b, c, beta, gamma })
    }

    pub fn letters(&self) -> LetterSet {
        [self.a, self.b, self.c, self.beta, self.gamma].into_iter().collect()
    }

    pub fn triple(&self) -> (Letter, Letter, Letter) {
        (self.a, self.b, self.c)
    }
}

/// `(a,b,c|β,γ)`
impl fmt::Display for FragilityTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{}|{},{})", self.a, self.b, self.c, self.beta, self.gamma)
    }
}

impl fmt::Debug for FragilityTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for FragilityTuple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected (a,b,c|β,γ), got {s:?}"));
        let inner = s.trim().strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        let (left, right) = inner.split_once('|').ok_or_else(bad)?;
        let letters = |part: &str| -> Result<Vec<Letter>> { part.split(',').map(str::parse).collect() };
        match (letters(left)?.as_slice(), letters(right)?.as_slice()) {
            (&[a, b, c], &[beta, gamma]) => FragilityTuple::new(a, b, c, beta, gamma),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FragilityWitness {
    pub tuple: FragilityTuple,
    pub u: Word,
}

/// `(a,b,c|β,γ):u`, with `-` standing for ε.
impl fmt::Display for FragilityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.u.is_empty() {
            write!(f, "{}:-", self.tuple)
        } else {
            write!(f, "{}:{}", self.tuple, self.u)
        }
    }
}

impl FromStr for FragilityWitness {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (tuple, u) = s
            .trim()
            .rsplit_once(':')
            .ok_or_else(|| Error::Parse(format!("expected tuple:word, got {s:?}")))?;
        let u = if u == "-" { Word::empty() } else { u.parse()? };
        Ok(FragilityWitness { tuple: tuple.parse()?, u })
    }
}

/// Z-array: `z[i]` is the length of the longest common prefix of `w` and `w[i..]`.
fn z_array(w: &[Letter]) -> Vec<usize> {
    let n = w.len();
    let mut z = vec![0; n];
    if n == 0 {
        return z;
    }
    z[0] = n;
    let (mut left, mut right) = (0, 0);
    for i in 1..n {
        if i < right {
            z[i] = z[i - left].min(right - i);
        }
        while i + z[i] < n && w[z[i]] == w[i + z[i]] {
            z[i] += 1;
        }
        if i + z[i] > right {
            left = i;
            right = i + z[i];
        }
    }
    z
}

/// All fragility witnesses `u` of `w` with `|u| ≤ max_witness_len`.
pub fn fragilities(w: &[Letter], max_witness_len: usize) -> BTreeSet<FragilityWitness> {
    let n = w.len();
    if n == 0 {
        return BTreeSet::new();
    }
    let z = z_array(w);
    let max_len = max_witness_len.min(n.saturating_sub(1));
    // (left letter, right letter) pairs around inner occurrences of each prefix length
    let mut contexts: Vec<BTreeSet<(Letter, Letter)>> = vec![BTreeSet::new(); max_len + 1];
    for i in 1..n {
        let reach = z[i].min(max_len).min(n - 1 - i);
        for (len, ctx) in contexts.iter_mut().enumerate().take(reach + 1) {
            ctx.insert((w[i - 1], w[i + len]));
        }
    }
    let mut out = BTreeSet::new();
    for (len, ctx) in contexts.iter().enumerate() {
        let a = w[len];
        for &(beta, b) in ctx {
            for &(gamma, c) in ctx {
                if let Ok(tuple) = FragilityTuple::new(a, b, c, beta, gamma) {
                    out.insert(FragilityWitness { tuple, u: Word::from(&w[..len]) });
                }
            }
        }
    }
    out
}

/// Distinct tuples of [`fragilities`].
pub fn fragility_tuples(w: &[Letter], max_witness_len: usize) -> BTreeSet<FragilityTuple> {
    fragilities(w, max_witness_len).into_iter().map(|x| x.tuple).collect()
}

pub fn is_fragile(w: &[Letter], a: Letter, b: Letter, c: Letter, max_witness_len: usize) -> Result<bool> {
    if a == b || b == c || a == c {
        return Err(Error::NotATriple(a, b, c));
    }
    Ok(fragilities(w, max_witness_len).iter().any(|x| x.tuple.triple() == (a, b, c)))
}

fn length_two_factors(f: &BlspMorphism, letters: LetterSet) -> BTreeSet<(Letter, Letter)> {
    letters
        .iter()
        .filter_map(|x| f.image(x))
        .flat_map(|img| img.windows(2).map(|p| (p[0], p[1])).collect::<Vec<_>>())
        .collect()
}

/// Tuples `(first(f), b, c, β, γ)` with `βb` and `γc` inside images of `letters`.
pub fn new_fragility_tuples(f: &BlspMorphism, letters: LetterSet) -> BTreeSet<FragilityTuple> {
    let a = f.first();
    let pairs = length_two_factors(f, letters);
    let mut out = BTreeSet::new();
    for &(beta, b) in &pairs {
        for &(gamma, c) in &pairs {
            if let Ok(t) = FragilityTuple::new(a, b, c, beta, gamma) {
                out.insert(t);
            }
        }
    }
    out
}

/// Tuples inherited through `f` from `tuples`: a common prefix `x` of
/// `f(a′)α`, `f(b′)α`, `f(c′)α` followed by three distinct letters.
pub fn propagated_tuples(f: &BlspMorphism, tuples: &BTreeSet<FragilityTuple>) -> BTreeSet<FragilityTuple> {
    let alpha = f.first();
    let extended = |x: Letter| f.image(x).map(|img| img.clone().push(alpha));
    let mut out = BTreeSet::new();
    for t in tuples {
        let (Some(ia), Some(ib), Some(ic)) = (extended(t.a), extended(t.b), extended(t.c)) else {
            continue;
        };
        // the three words share a prefix only up to their first disagreement
        let split = (0..ia.len().min(ib.len()).min(ic.len()))
            .find(|&i| !(ia[i] == ib[i] && ib[i] == ic[i]));
        if let Some(i) = split {
            if let Ok(p) = FragilityTuple::new(ia[i], ib[i], ic[i], t.beta, t.gamma) {
                out.insert(p);
            }
        }
    }
    out
}
