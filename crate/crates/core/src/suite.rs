//! Self-checks bundled for `lspw verify`.
//!
//! Each criterion is a finite, exhaustive check. Criteria 8 to 10 stand in
//! for the statement about infinite words, which no finite run can decide.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use crate::automaton::{binary_automaton, recognize, Tail, Violation};
use crate::blsp::{enumerate, BlspMorphism};
use crate::desub::generate;
use crate::error::{Error, Result};
use crate::fragility::{fragilities, new_fragility_tuples, propagated_tuples};
use crate::lsp::{extend_right_lsp, is_lsp, non_prefix_left_special, periodic_lsp_extension};
use crate::suffix_automaton::is_lsp_via_sa;
use crate::word::{Letter, LetterSet, Word};

pub const CRITERIA: [(u8, &str); 11] = [
    (1, "enumeration counts 1, 2, 9, 64, 625"),
    (2, "ternary catalogue"),
    (3, "LSP verdicts and witnesses"),
    (4, "breaking triples"),
    (5, "refinement and suffix-automaton oracles agree"),
    (6, "right and periodic extension"),
    (7, "binary automaton graph"),
    (8, "binary directive prefixes generate LSP words"),
    (9, "g-chain behaviour"),
    (10, "fragilities of images come from new or shorter ones"),
    (11, "LSP images have LSP preimages"),
];

const BUNDLES: [(&str, &[u8]); 5] = [
    ("enumeration", &[1, 2]),
    ("lsp", &[3, 5, 6]),
    ("morphisms", &[4, 8]),
    ("automaton", &[7, 9]),
    ("surrogates", &[8, 9, 10, 11]),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} criterion {}: {} ({})", self.id, self.title, self.detail)
    }
}

/// Names accepted by [`bundle`].
pub fn bundle_names() -> Vec<String> {
    let mut names = vec!["all".to_string()];
    names.extend(BUNDLES.iter().map(|(n, _)| n.to_string()));
    names.extend((1..=11).map(|i| i.to_string()));
    names
}

/// Criterion ids for a bundle name: `all`, a number, or a named group.
pub fn bundle(name: &str) -> Result<Vec<u8>> {
    if name == "all" {
        return Ok((1..=11).collect());
    }
    if let Some((_, ids)) = BUNDLES.iter().find(|(n, _)| *n == name) {
        return Ok(ids.to_vec());
    }
    match name.parse::<u8>() {
        Ok(id @ 1..=11) => Ok(vec![id]),
        _ => Err(Error::Parse(format!("unknown suite {name:?}; expected one of {}", bundle_names().join(", ")))),
    }
}

pub fn run_bundle(name: &str) -> Result<Vec<Outcome>> {
    Ok(bundle(name)?.into_iter().map(run).collect())
}

pub fn run(id: u8) -> Outcome {
    let start = Instant::now();
    let result = match id {
        1 => enumeration_counts(),
        2 => ternary_catalogue(),
        3 => verdicts(),
        4 => breaking_triples(),
        5 => oracle_agreement(),
        6 => extensions(),
        7 => binary_graph(),
        8 => binary_prefixes(),
        9 => g_chain(),
        10 => image_fragilities(),
        11 => reflection(),
        _ => Err(format!("no criterion {id}")),
    };
    let elapsed = start.elapsed();
    let title = CRITERIA.iter().find(|(i, _)| *i == id).map_or("unknown", |(_, t)| t);
    let (passed, detail) = match result {
        Ok(detail) => (true, detail),
        Err(detail) => (false, detail),
    };
    Outcome { id, title, passed, detail: format!("{detail}; {:.2?}", elapsed), elapsed }
}

type Check = std::result::Result<String, String>;

fn letters(s: &str) -> Word {
    s.parse().expect("literal word")
}

fn morphism(s: &str) -> BlspMorphism {
    s.parse().expect("literal morphism")
}

fn abc() -> LetterSet {
    LetterSet::first_n(3).expect("three letters")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn enumeration_counts() -> Check {
    let counts: Vec<usize> = (1..=5)
        .map(|n| enumerate(LetterSet::first_n(n).expect("n ≤ 8")).map(|e| e.count()))
        .collect::<Result<_>>()
        .map_err(|e| e.to_string())?;
    ensure(counts == [1, 2, 9, 64, 625], || format!("counts {counts:?}"))?;
    Ok(format!("counts {counts:?}"))
}

fn ternary_catalogue() -> Check {
    let got: BTreeSet<BlspMorphism> = enumerate(abc()).map_err(|e| e.to_string())?.collect();
    let expected: BTreeSet<BlspMorphism> = [
        "[a,ab,abc]", "[a,ab,ac]", "[a,acb,ac]", "[ba,b,bac]", "[ba,b,bc]",
        "[bca,b,bc]", "[ca,cab,c]", "[ca,cb,c]", "[cba,cb,c]",
    ]
    .into_iter()
    .map(morphism)
    .collect();
    ensure(got == expected, || format!("got {} morphisms, differing from the catalogue", got.len()))?;
    Ok("9 morphisms match".into())
}

fn verdicts() -> Check {
    let cases = [("abaa", None), ("baa", Some("a")), ("aaacacb", Some("ac"))];
    for (word, witness) in cases {
        let w = letters(word);
        let found = non_prefix_left_special(&w);
        ensure(found == witness.map(letters), || format!("{word}: witness {found:?}"))?;
        ensure(is_lsp(&w) == witness.is_none(), || format!("{word}: wrong verdict"))?;
    }
    Ok("3 words".into())
}

fn breaking_triples() -> Check {
    let g = morphism("[a,acb,ac]");
    let (a, b, c) = (Letter::new(0).unwrap(), Letter::new(1).unwrap(), Letter::new(2).unwrap());
    ensure(g.is_breaking(a, b, c) == Ok(true), || "g is not breaking for (a,b,c)".into())?;
    for f in [BlspMorphism::tau_a(), BlspMorphism::tau_b()] {
        ensure(f.breaking_triples().is_empty(), || format!("{f} has breaking triples"))?;
    }
    Ok("g breaks (a,b,c); binary morphisms break nothing".into())
}

fn oracle_agreement() -> Check {
    let mut checked = 0usize;
    for (k, max) in [(2, 12), (3, 9)] {
        for w in Word::all_up_to(LetterSet::first_n(k).expect("k ≤ 8"), max).skip(1) {
            let via_sa = is_lsp_via_sa(&w).map_err(|e| e.to_string())?;
            ensure(is_lsp(&w) == via_sa, || format!("mismatch on {w}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} words, 0 mismatches"))
}

fn extensions() -> Check {
    let mut checked = 0usize;
    for w in Word::all_up_to(abc(), 10).skip(1).filter(|w| is_lsp(w)) {
        let x = extend_right_lsp(&w).map_err(|e| format!("{w}: {e}"))?;
        ensure(is_lsp(&w.clone().push(x)), || format!("{w}{x} is not LSP"))?;
        let p = periodic_lsp_extension(&w, 4 * w.len()).map_err(|e| format!("{w}: {e}"))?;
        ensure(p.len() == 4 * w.len() && w.is_prefix_of(&p) && is_lsp(&p), || format!("periodic extension of {w} fails"))?;
        checked += 1;
    }
    Ok(format!("{checked} LSP words"))
}

/// The four states and eight transitions of the binary automaton.
pub const BINARY_EDGES: [&str; 8] = [
    "({a}|[a,ab]|{}) -[a,ab]-> ({a}|[a,ab]|{})",
    "({a,b}|[a,ab]|{}) -[a,ab]-> ({a,b}|[a,ab]|{})",
    "({a,b}|[a,ab]|{}) -[a,ab]-> ({a,b}|[ba,b]|{})",
    "({a,b}|[a,ab]|{}) -[a,ab]-> ({b}|[ba,b]|{})",
    "({a,b}|[ba,b]|{}) -[ba,b]-> ({a}|[a,ab]|{})",
    "({a,b}|[ba,b]|{}) -[ba,b]-> ({a,b}|[a,ab]|{})",
    "({a,b}|[ba,b]|{}) -[ba,b]-> ({a,b}|[ba,b]|{})",
    "({b}|[ba,b]|{}) -[ba,b]-> ({b}|[ba,b]|{})",
];

fn binary_graph() -> Check {
    let g = binary_automaton();
    let got: BTreeSet<String> = g.edge_list().lines().map(String::from).collect();
    let expected: BTreeSet<String> = BINARY_EDGES.iter().map(|s| s.to_string()).collect();
    ensure(g.states.len() == 4 && g.transitions.len() == 8, || {
        format!("{} states, {} transitions", g.states.len(), g.transitions.len())
    })?;
    ensure(got == expected, || "edge list differs".into())?;
    Ok("4 states, 8 transitions".into())
}

fn binary_prefixes() -> Check {
    let taus = [BlspMorphism::tau_a(), BlspMorphism::tau_b()];
    let mut checked = 0usize;
    for mask in 0u32..256 {
        let d: Vec<BlspMorphism> = (0..8).map(|i| taus[(mask >> i & 1) as usize].clone()).collect();
        for branch in LetterSet::first_n(2).expect("two letters").iter() {
            let w = generate(&d, branch, 8).map_err(|e| e.to_string())?;
            ensure(is_lsp(&w), || format!("prefix {mask:08b} on {branch} gives non-LSP {w}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} words"))
}

/// A Fibonacci prefix of length at least `min_len` from alternating τa, τb.
pub fn fibonacci_prefix(min_len: usize) -> Word {
    let taus = [BlspMorphism::tau_a(), BlspMorphism::tau_b()];
    let mut depth = 1;
    loop {
        let d: Vec<BlspMorphism> = (0..depth).map(|i| taus[i % 2].clone()).collect();
        let w = generate(&d, Letter::new(0).expect("a"), depth).expect("binary directive");
        if w.len() >= min_len {
            return w;
        }
        depth += 1;
    }
}

fn g_chain() -> Check {
    let g = morphism("[a,acb,ac]");
    let fib = fibonacci_prefix(200);
    let image = g.apply(&fib).map_err(|e| e.to_string())?;
    let bounded = image.clone().push(g.first());
    let kept = bounded.prefix(bounded.len() - g.max_image_len());
    ensure(is_lsp(&kept), || "g(F) prefix is not LSP".into())?;
    let twice = g.apply(&image).map_err(|e| e.to_string())?;
    let witness = non_prefix_left_special(&twice);
    ensure(witness == Some(letters("ac")), || format!("g(g(F)) witness {witness:?}"))?;
    let r = recognize(&[g.clone(), g], &Tail::Empty(abc())).map_err(|e| e.to_string())?;
    let expected = Violation::Breaking("(a,b,c|c,a)".parse().expect("literal tuple"));
    ensure(r.rejection == Some((1, expected)), || format!("rejection {:?}", r.rejection))?;
    Ok(format!("|F| = {}; rejected at step 1", fib.len()))
}

fn image_fragilities() -> Check {
    let mut checked = 0usize;
    for f in enumerate(abc()).map_err(|e| e.to_string())? {
        for w in Word::all_up_to(abc(), 5).skip(1) {
            let big = f.apply(&w).map_err(|e| e.to_string())?.push(f.first());
            let small = fragilities(&w, w.len());
            let fresh = new_fragility_tuples(&f, w.alph());
            for x in fragilities(&big, big.len()) {
                let explained = if x.u.is_empty() {
                    fresh.contains(&x.tuple)
                } else {
                    small.iter().any(|y| {
                        y.u.len() < x.u.len()
                            && f.apply(&y.u).is_ok_and(|img| img.len() < x.u.len() && img.is_prefix_of(&x.u))
                            && propagated_tuples(&f, &[y.tuple].into()).contains(&x.tuple)
                    })
                };
                ensure(explained, || format!("{f} on {w}: witness {x} unexplained"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} witnesses"))
}

fn reflection() -> Check {
    let mut checked = 0usize;
    for f in enumerate(abc()).map_err(|e| e.to_string())? {
        for w in Word::all_up_to(abc(), 6).skip(1) {
            let big = f.apply(&w).map_err(|e| e.to_string())?.push(f.first());
            if is_lsp(&big) {
                ensure(is_lsp(&w), || format!("{f}: image of {w} is LSP but {w} is not"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} LSP images"))
}
