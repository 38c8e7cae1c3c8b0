//! Desubstitution of words into bLSP images and directive-word extraction.
//!
//! The first letter `α` of `w` starts every block; each adjacent pair inside
//! a block is an edge of a graph on `alph(w)`. When that graph is a tree
//! rooted at `α`, the root paths define a bLSP morphism `f` and `w` parses
//! as `f(w′)` followed by a possibly incomplete last block.

use crate::blsp::{BlspMorphism, RootedTree};
use crate::error::{DesubFailure, Error, Result};
use crate::word::{Letter, LetterSet, Word, MAX_LETTERS};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesubResult {
    /// Morphism on `alph(w)`; its restriction to `alph(quotient)` is unique.
    pub morphism: BlspMorphism,
    pub quotient: Word,
    /// Trailing block whose letter cannot be decided yet (possibly ε).
    pub remainder: Word,
}

fn failure(reason: DesubFailure, witness: &[Letter]) -> Error {
    Error::NotDesubstitutable { reason, witness: Word::from(witness), depth: None }
}

/// Splits `w` as `f(w′)·r` for the bLSP morphism read off its length-two factors.
///
/// The last block becomes the remainder when it is a proper prefix of
/// another image, since a longer continuation of `w` could extend it.
pub fn desubstitute(w: &[Letter]) -> Result<DesubResult> {
    let alpha = *w.first().ok_or(Error::EmptyWord)?;
    let mut parent: [Option<Letter>; MAX_LETTERS] = [None; MAX_LETTERS];
    for pair in w.windows(2) {
        let (p, x) = (pair[0], pair[1]);
        if x == alpha {
            continue;
        }
        if p == x {
            return Err(failure(DesubFailure::Cycle, pair));
        }
        match parent[x.index()] {
            Some(q) if q != p => return Err(failure(DesubFailure::TwoParents, pair)),
            _ => parent[x.index()] = Some(p),
        }
    }
    let alph = Word::from_letters(w.to_vec()).alph();
    for x in alph.iter() {
        let mut cur = x;
        let mut trail = vec![x];
        while cur != alpha {
            cur = parent[cur.index()].expect("every non-initial letter follows some letter");
            trail.push(cur);
            if trail.len() > alph.len() {
                trail.reverse();
                return Err(failure(DesubFailure::Cycle, &trail));
            }
        }
    }
    let tree = RootedTree {
        root: alpha,
        parents: alph.iter().filter_map(|x| parent[x.index()].map(|p| (x, p))).collect(),
    };
    let morphism = BlspMorphism::from_tree(&tree)?;
    let has_children: LetterSet = tree.parents.values().copied().collect();

    let starts: Vec<usize> = (0..w.len()).filter(|&i| w[i] == alpha).collect();
    let mut quotient = Vec::with_capacity(starts.len());
    let mut remainder = Word::empty();
    for (k, &start) in starts.iter().enumerate() {
        let end = starts.get(k + 1).copied().unwrap_or(w.len());
        let block = &w[start..end];
        let last = block[block.len() - 1];
        let matches = morphism.image(last).is_some_and(|img| img.letters() == block);
        let is_final = end == w.len();
        if is_final && (!matches || has_children.contains(last)) {
            let is_proper_prefix = morphism
                .images()
                .any(|(_, img)| img.len() > block.len() && img.starts_with(block));
            if is_proper_prefix {
                remainder = Word::from(block);
                break;
            }
        }
        if !matches {
            return Err(failure(DesubFailure::BlockMismatch, block));
        }
        quotient.push(last);
    }
    Ok(DesubResult { morphism, quotient: Word::from_letters(quotient), remainder })
}

/// Morphisms extracted by iterated desubstitution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectivePrefix {
    pub morphisms: Vec<BlspMorphism>,
    pub residual: Word,
    /// Length of the discarded remainder at each level.
    pub remainder_lens: Vec<usize>,
    /// Set when a level failed to shorten the word (e.g. `a^n` under `[a]`).
    pub degenerate: bool,
}

impl DirectivePrefix {
    /// `f1(f2(…fk(residual)…))`, a prefix of the analyzed word.
    pub fn expand(&self) -> Result<Word> {
        self.morphisms
            .iter()
            .rev()
            .try_fold(self.residual.clone(), |acc, f| f.apply(&acc))
    }
}

/// Desubstitutes repeatedly, at most `max_depth` times, stopping once the
/// quotient has length at most one or stops shrinking.
pub fn directive_prefix(w: &[Letter], max_depth: usize) -> Result<DirectivePrefix> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut out = DirectivePrefix {
        morphisms: Vec::new(),
        residual: Word::from(w),
        remainder_lens: Vec::new(),
        degenerate: false,
    };
    for depth in 1..=max_depth {
        if out.residual.len() <= 1 {
            break;
        }
        let step = desubstitute(&out.residual).map_err(|e| match e {
            Error::NotDesubstitutable { reason, witness, .. } => {
                Error::NotDesubstitutable { reason, witness, depth: Some(depth) }
            }
            other => other,
        })?;
        let shrank = step.quotient.len() < out.residual.len();
        out.morphisms.push(step.morphism);
        out.remainder_lens.push(step.remainder.len());
        out.residual = step.quotient;
        if !shrank {
            out.degenerate = true;
            break;
        }
    }
    Ok(out)
}

/// `f1(f2(⋯fk(branch)⋯))` for the first `k` morphisms of `directive`.
pub fn generate(directive: &[BlspMorphism], branch: Letter, k: usize) -> Result<Word> {
    if directive.is_empty() {
        return Err(Error::EmptyDirective);
    }
    if k > directive.len() {
        return Err(Error::DepthOutOfRange { depth: k, len: directive.len() });
    }
    let used = &directive[..k];
    for pair in used.windows(2) {
        let produced = pair[1].image_alphabet(pair[1].domain())?;
        if let Some(x) = produced.iter().find(|&x| !pair[0].domain().contains(x)) {
            return Err(Error::DomainError(x));
        }
    }
    if let Some(last) = used.last() {
        if !last.domain().contains(branch) {
            return Err(Error::DomainError(branch));
        }
    }
    used.iter()
        .rev()
        .try_fold(Word::from_letters(vec![branch]), |acc, f| f.apply(&acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lsp::is_lsp;
    use crate::word::{l, w};

    fn m(s: &str) -> BlspMorphism {
        s.parse().unwrap()
    }

    #[test]
    fn fibonacci_prefix() {
        let r = desubstitute(&w("abaababaabaab")).unwrap();
        assert_eq!(r.morphism, m("[a,ab]"));
        assert_eq!(r.quotient, w("babbabab"));
        assert_eq!(r.remainder, w(""));
        assert_eq!(r.morphism.apply(&r.quotient).unwrap(), w("abaababaabaab"));
    }

    #[test]
    fn ternary_prefix() {
        let r = desubstitute(&w("aacb")).unwrap();
        assert_eq!(r.morphism, m("[a,acb,ac]"));
        assert_eq!(r.quotient, w("ab"));
        assert_eq!(r.remainder, w(""));
    }

    #[test]
    fn single_block() {
        let r = desubstitute(&w("ba")).unwrap();
        assert_eq!(r.morphism, m("[ba,b]"));
        assert_eq!(r.quotient, w("a"));
        assert_eq!(r.remainder, w(""));
    }

    #[test]
    fn ambiguous_last_block_is_kept_as_remainder() {
        let r = desubstitute(&w("abaa")).unwrap();
        assert_eq!(r.morphism, m("[a,ab]"));
        assert_eq!(r.quotient, w("ba"));
        assert_eq!(r.remainder, w("a"));
        let r = desubstitute(&w("aacbaac")).unwrap();
        assert_eq!(r.quotient, w("aba"));
        assert_eq!(r.remainder, w("ac"));
    }

    #[test]
    fn failures_carry_witnesses() {
        let err = desubstitute(&w("baa")).unwrap_err();
        assert_eq!(err, Error::NotDesubstitutable { reason: DesubFailure::Cycle, witness: w("aa"), depth: None });
        let err = desubstitute(&w("abcacb")).unwrap_err();
        assert_eq!(err, Error::NotDesubstitutable { reason: DesubFailure::TwoParents, witness: w("ac"), depth: None });
        assert_eq!(desubstitute(&w("")), Err(Error::EmptyWord));
    }

    #[test]
    fn unary_word() {
        let r = desubstitute(&w("aaaa")).unwrap();
        assert_eq!(r.morphism, m("[a]"));
        assert_eq!(r.quotient, w("aaaa"));
    }

    #[test]
    fn iterated_desubstitution() {
        let d = directive_prefix(&w("abaababaabaab"), 3).unwrap();
        assert_eq!(d.morphisms, vec![m("[a,ab]"), m("[ba,b]"), m("[a,ab]")]);
        assert_eq!(d.remainder_lens, vec![0, 1, 1]);
        assert_eq!(d.residual, w("ba"));
        assert!(!d.degenerate);
        assert!(d.expand().unwrap().is_prefix_of(&w("abaababaabaab")));
    }

    #[test]
    fn iteration_stops_on_non_progress() {
        let d = directive_prefix(&w("aaaa"), 1).unwrap();
        assert_eq!(d.morphisms, vec![m("[a]")]);
        assert_eq!(d.residual, w("aaaa"));
        assert!(d.degenerate);
        let d = directive_prefix(&w("aaaa"), 5).unwrap();
        assert_eq!(d.morphisms.len(), 1);
    }

    #[test]
    fn iteration_reports_failure_depth() {
        // level 1 gives quotient "baa", which is not desubstitutable
        let word = m("[a,ab]").apply(&w("baab")).unwrap();
        match directive_prefix(&word, 4) {
            Err(Error::NotDesubstitutable { depth, .. }) => assert_eq!(depth, Some(2)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(directive_prefix(&w("baa"), 1), Err(Error::NotDesubstitutable { depth: Some(1), .. })));
    }

    #[test]
    fn generation() {
        let tau_a = BlspMorphism::tau_a();
        let tau_b = BlspMorphism::tau_b();
        assert_eq!(generate(&vec![tau_a.clone(); 5], l('b'), 5).unwrap(), w("aaaaab"));
        let alternating: Vec<_> = (0..8).map(|i| if i % 2 == 0 { tau_a.clone() } else { tau_b.clone() }).collect();
        let fib = generate(&alternating, l('a'), 8).unwrap();
        assert!(is_lsp(&fib));
        let mut fibonacci = w("a");
        while fibonacci.len() < fib.len() {
            fibonacci = fibonacci.iter().flat_map(|&x| if x == l('a') { vec![l('a'), l('b')] } else { vec![l('a')] }).collect();
        }
        assert!(fib.is_prefix_of(&fibonacci));
        let g = m("[a,acb,ac]");
        assert_eq!(generate(&[g.clone(), g.clone()], l('b'), 2).unwrap(), w("aacacb"));
    }

    #[test]
    fn generation_errors() {
        assert_eq!(generate(&[], l('a'), 0), Err(Error::EmptyDirective));
        let tau_a = BlspMorphism::tau_a();
        assert_eq!(generate(std::slice::from_ref(&tau_a), l('c'), 1), Err(Error::DomainError(l('c'))));
        assert_eq!(generate(std::slice::from_ref(&tau_a), l('a'), 2), Err(Error::DepthOutOfRange { depth: 2, len: 1 }));
        assert_eq!(generate(&[tau_a, m("[a,ab,abc]")], l('a'), 2), Err(Error::DomainError(l('c'))));
    }
}
