//! Factor analysis: left special factors, the LSP test, borders and the
//! right-extension of finite LSP words.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::suffix_automaton::SuffixAutomaton;
use crate::word::{Letter, LetterSet, Word};

/// Above this length left special factors are read off a suffix automaton
/// instead of the occurrence-refinement index.
pub const INDEX_LIMIT: usize = 10_000;

/// A factor with at least two distinct left extensions inside a word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeftSpecialReport {
    pub factor: Word,
    pub extensions: LetterSet,
    pub is_prefix: bool,
}

/// Distinct factors of length `n`. Empty when `n > |w|`.
pub fn factors(w: &[Letter], n: usize) -> BTreeSet<Word> {
    if n > w.len() {
        return BTreeSet::new();
    }
    if n == 0 {
        return BTreeSet::from([Word::empty()]);
    }
    w.windows(n).map(Word::from).collect()
}

/// Every left special factor of `w`, sorted by length then lexicographically.
pub fn left_special_factors(w: &[Letter]) -> Vec<LeftSpecialReport> {
    let mut reports = if w.len() <= INDEX_LIMIT {
        refine_occurrences(w, false)
    } else {
        from_suffix_automaton(w)
    };
    reports.sort_by(|x, y| {
        (x.factor.len(), &x.factor).cmp(&(y.factor.len(), &y.factor))
    });
    reports
}

/// Shortest left special factor of `w` that is not a prefix of `w`
/// (lexicographically least among the shortest), if any.
pub fn non_prefix_left_special(w: &[Letter]) -> Option<Word> {
    if w.len() <= INDEX_LIMIT {
        refine_occurrences(w, true)
            .into_iter()
            .filter(|r| !r.is_prefix)
            .min_by(|x, y| (x.factor.len(), &x.factor).cmp(&(y.factor.len(), &y.factor)))
            .map(|r| r.factor)
    } else {
        left_special_factors(w)
            .into_iter()
            .find(|r| !r.is_prefix)
            .map(|r| r.factor)
    }
}

/// True iff every left special factor of `w` is one of its prefixes.
pub fn is_lsp(w: &[Letter]) -> bool {
    non_prefix_left_special(w).is_none()
}

/// Groups all occurrences of each factor length by length.
///
/// Left special factors are prefix-closed, so level `n + 1` only refines the
/// left special groups of level `n` by the letter following each occurrence.
/// With `stop_at_violation`, refinement halts after the first level that
/// contains a non-prefix left special factor.
fn refine_occurrences(w: &[Letter], stop_at_violation: bool) -> Vec<LeftSpecialReport> {
    let n = w.len();
    let mut out = Vec::new();
    // each group: sorted start positions of one factor of length `len`
    let mut groups: Vec<Vec<usize>> = vec![(0..=n).collect()];
    let mut len = 0;
    loop {
        let mut next_groups = Vec::new();
        let mut violated = false;
        for occ in groups {
            let extensions: LetterSet = occ.iter().filter(|&&s| s > 0).map(|&s| w[s - 1]).collect();
            if extensions.len() < 2 {
                continue;
            }
            let is_prefix = occ.first() == Some(&0);
            violated |= !is_prefix;
            let start = occ[0];
            out.push(LeftSpecialReport {
                factor: Word::from(&w[start..start + len]),
                extensions,
                is_prefix,
            });
            let mut by_next: [Vec<usize>; crate::word::MAX_LETTERS] = Default::default();
            for s in occ {
                if s + len < n {
                    by_next[w[s + len].index()].push(s);
                }
            }
            next_groups.extend(by_next.into_iter().filter(|g| g.len() >= 2));
        }
        if next_groups.is_empty() || (stop_at_violation && violated) {
            break;
        }
        groups = next_groups;
        len += 1;
    }
    out
}

/// Left special factors are exactly the longest members of suffix-automaton
/// classes whose suffix-link children carry two distinct left letters.
fn from_suffix_automaton(w: &[Letter]) -> Vec<LeftSpecialReport> {
    let sa = SuffixAutomaton::build(w);
    let mut extensions = vec![LetterSet::EMPTY; sa.state_count()];
    for child in 1..sa.state_count() {
        let parent = sa.link(child).expect("non-initial state has a link");
        // letter immediately left of the parent's longest string inside
        // the child's first occurrence
        let pos = sa.first_end(child) - sa.max_len(parent);
        extensions[parent].insert(w[pos]);
    }
    (0..sa.state_count())
        .filter(|&s| extensions[s].len() >= 2)
        .map(|s| {
            let len = sa.max_len(s);
            let factor = if s == 0 {
                Word::empty()
            } else {
                let end = sa.first_end(s) + 1;
                Word::from(&w[end - len..end])
            };
            let is_prefix = factor.is_prefix_of(w);
            LeftSpecialReport { factor, extensions: extensions[s], is_prefix }
        })
        .collect()
}

/// Longest proper border of a non-empty word.
pub fn longest_border(w: &[Letter]) -> Result<Word> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let fail = failure_function(w);
    Ok(Word::from(&w[..fail[w.len() - 1]]))
}

/// `fail[i]` is the length of the longest proper border of `w[..=i]`.
fn failure_function(w: &[Letter]) -> Vec<usize> {
    let mut fail = vec![0; w.len()];
    let mut k = 0;
    for i in 1..w.len() {
        while k > 0 && w[i] != w[k] {
            k = fail[k - 1];
        }
        if w[i] == w[k] {
            k += 1;
        }
        fail[i] = k;
    }
    fail
}

/// The letter that follows the longest border of an LSP word inside it;
/// appending it keeps the word LSP.
pub fn extend_right_lsp(w: &[Letter]) -> Result<Letter> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    if !is_lsp(w) {
        return Err(Error::NotLsp);
    }
    let border = longest_border(w)?;
    Ok(w[border.len()])
}

/// Length-`n` prefix of `p^ω` where `w = p·u` and `u` is the longest border of `w`.
pub fn periodic_lsp_extension(w: &[Letter], n: usize) -> Result<Word> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    if !is_lsp(w) {
        return Err(Error::NotLsp);
    }
    if n < w.len() {
        return Err(Error::TooShort { requested: n, len: w.len() });
    }
    let period = w.len() - longest_border(w)?.len();
    Ok((0..n).map(|i| w[i % period]).collect())
}

/// Longest common prefix.
pub fn lcp(u: &[Letter], v: &[Letter]) -> Word {
    u.iter().zip(v).take_while(|(x, y)| x == y).map(|(x, _)| *x).collect()
}
