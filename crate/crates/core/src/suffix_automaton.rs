//! Online suffix automaton construction.
//!
//! The automaton of `w` has between `|w| + 1` and `2|w| − 1` states; it has
//! exactly `|w| + 1` states iff every left special factor of `w` is a prefix.
//! [`is_lsp_via_sa`] uses that count as an oracle independent of
//! [`crate::lsp::is_lsp`].

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::word::{Letter, MAX_LETTERS};

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone)]
struct State {
    len: usize,
    link: u32,
    first_end: usize,
}

#[derive(Debug, Clone)]
pub struct SuffixAutomaton {
    states: Vec<State>,
    // flat transition table, `width` columns per state
    next: Vec<u32>,
    width: usize,
    terminal: Vec<bool>,
}

impl SuffixAutomaton {
    pub fn build(w: &[Letter]) -> Self {
        let width = w.iter().map(|l| l.index() + 1).max().unwrap_or(1).min(MAX_LETTERS);
        let mut sa = SuffixAutomaton {
            states: Vec::with_capacity(2 * w.len() + 1),
            next: Vec::with_capacity(width * (2 * w.len() + 1)),
            width,
            terminal: Vec::new(),
        };
        sa.push(State { len: 0, link: NONE, first_end: 0 }, None);
        let mut last = 0u32;
        for (i, &c) in w.iter().enumerate() {
            last = sa.extend(last, c, i);
        }
        sa.terminal = vec![false; sa.states.len()];
        let mut p = last;
        while p != NONE {
            sa.terminal[p as usize] = true;
            p = sa.states[p as usize].link;
        }
        sa
    }

    fn push(&mut self, state: State, copy_from: Option<u32>) -> u32 {
        let id = self.states.len() as u32;
        self.states.push(state);
        match copy_from {
            Some(q) => {
                let start = q as usize * self.width;
                self.next.extend_from_within(start..start + self.width);
            }
            None => self.next.extend(std::iter::repeat_n(NONE, self.width)),
        }
        id
    }

    fn go(&self, s: u32, c: Letter) -> u32 {
        self.next[s as usize * self.width + c.index()]
    }

    fn set(&mut self, s: u32, c: Letter, t: u32) {
        self.next[s as usize * self.width + c.index()] = t;
    }

    fn extend(&mut self, last: u32, c: Letter, pos: usize) -> u32 {
        let cur_len = self.states[last as usize].len + 1;
        let cur = self.push(State { len: cur_len, link: 0, first_end: pos }, None);
        let mut p = last;
        while p != NONE && self.go(p, c) == NONE {
            self.set(p, c, cur);
            p = self.states[p as usize].link;
        }
        if p == NONE {
            return cur;
        }
        let q = self.go(p, c);
        if self.states[p as usize].len + 1 == self.states[q as usize].len {
            self.states[cur as usize].link = q;
            return cur;
        }
        let clone_state = State {
            len: self.states[p as usize].len + 1,
            link: self.states[q as usize].link,
            first_end: self.states[q as usize].first_end,
        };
        let clone = self.push(clone_state, Some(q));
        while p != NONE && self.go(p, c) == q {
            self.set(p, c, clone);
            p = self.states[p as usize].link;
        }
        self.states[q as usize].link = clone;
        self.states[cur as usize].link = clone;
        cur
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn transition_count(&self) -> usize {
        self.next.iter().filter(|&&t| t != NONE).count()
    }

    pub fn initial(&self) -> usize {
        0
    }

    /// Length of the longest string in the class of `state`.
    pub fn max_len(&self, state: usize) -> usize {
        self.states[state].len
    }

    pub fn link(&self, state: usize) -> Option<usize> {
        match self.states[state].link {
            NONE => None,
            s => Some(s as usize),
        }
    }

    /// End position of the first occurrence of the strings in `state`.
    pub fn first_end(&self, state: usize) -> usize {
        self.states[state].first_end
    }

    pub fn transition(&self, state: usize, c: Letter) -> Option<usize> {
        if c.index() >= self.width {
            return None;
        }
        match self.go(state as u32, c) {
            NONE => None,
            t => Some(t as usize),
        }
    }

    fn run(&self, u: &[Letter]) -> Option<usize> {
        u.iter().try_fold(0, |s, &c| self.transition(s, c))
    }

    pub fn contains_factor(&self, u: &[Letter]) -> bool {
        self.run(u).is_some()
    }

    /// True iff `u` is a suffix of the source word (ε included).
    pub fn accepts(&self, u: &[Letter]) -> bool {
        self.run(u).is_some_and(|s| self.terminal[s])
    }

    /// One line per transition: `from letter to`, then the terminal states.
    pub fn edge_list(&self) -> String {
        let mut out = String::new();
        for s in 0..self.state_count() {
            for c in Letter::all().take(self.width) {
                if let Some(t) = self.transition(s, c) {
                    let _ = writeln!(out, "{s} {c} {t}");
                }
            }
        }
        let finals: Vec<String> = (0..self.state_count())
            .filter(|&s| self.terminal[s])
            .map(|s| s.to_string())
            .collect();
        let _ = writeln!(out, "final {}", finals.join(" "));
        out
    }
}

/// A word is LSP exactly when its suffix automaton has the minimal `|w| + 1` states.
pub fn is_lsp_via_sa(w: &[Letter]) -> Result<bool> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(SuffixAutomaton::build(w).state_count() == w.len() + 1)
}
