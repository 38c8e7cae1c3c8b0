//! Basic LSP (bLSP) morphisms.
//!
//! A bLSP morphism fixes exactly one letter `α` and maps every other letter
//! `β` to `f(γ)·β` for some letter `γ`. Such morphisms are in bijection with
//! labeled rooted trees: `f(β)` is the root-to-`β` path.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lsp::lcp;
use crate::word::{Letter, LetterSet, Word, MAX_LETTERS};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BlspMorphism {
    domain: LetterSet,
    // one image per domain letter, in alphabetical order
    images: Vec<Word>,
    first: Letter,
}

impl BlspMorphism {
    /// Validates `images`, assigned to the letters of `domain` in order.
    pub fn new(domain: LetterSet, images: Vec<Word>) -> Result<Self> {
        if images.len() != domain.len() {
            return Err(Error::Parse(format!(
                "{} images for a domain of {} letters",
                images.len(),
                domain.len()
            )));
        }
        let pairs: Vec<(Letter, &Word)> = domain.iter().zip(&images).collect();
        let fixed: Word = pairs
            .iter()
            .filter(|(x, img)| img.letters() == [*x])
            .map(|(x, _)| *x)
            .collect();
        if fixed.len() > 1 {
            return Err(Error::MultipleFixedLetters(fixed));
        }
        for &(beta, img) in &pairs {
            if fixed.first() == Some(beta) {
                continue;
            }
            let shaped = img.last() == Some(beta)
                && pairs
                    .iter()
                    .any(|(_, other)| other.letters() == &img[..img.len() - 1]);
            if !shaped {
                return Err(Error::BadImageShape(beta));
            }
        }
        let first = fixed.first().ok_or(Error::NoFixedLetter)?;
        Ok(BlspMorphism { domain, images, first })
    }

    /// Validates a letter-to-image mapping; the domain is its key set.
    pub fn from_map(map: &BTreeMap<Letter, Word>) -> Result<Self> {
        BlspMorphism::new(map.keys().copied().collect(), map.values().cloned().collect())
    }

    /// Star tree rooted at the least letter: `[a, ab, ac, …]`.
    pub fn star(domain: LetterSet) -> Result<Self> {
        let root = domain.min().ok_or(Error::NoFixedLetter)?;
        let images = domain
            .iter()
            .map(|x| if x == root { Word::from_letters(vec![x]) } else { Word::from_letters(vec![root, x]) })
            .collect();
        BlspMorphism::new(domain, images)
    }

    /// `τa = [a, ab]`.
    pub fn tau_a() -> Self {
        "[a,ab]".parse().expect("valid literal")
    }

    /// `τb = [ba, b]`.
    pub fn tau_b() -> Self {
        "[ba,b]".parse().expect("valid literal")
    }

    pub fn domain(&self) -> LetterSet {
        self.domain
    }

    /// The fixed letter, which is also the first letter of every image.
    pub fn first(&self) -> Letter {
        self.first
    }

    pub fn image(&self, x: Letter) -> Option<&Word> {
        self.domain.iter().position(|d| d == x).map(|i| &self.images[i])
    }

    fn image_or_err(&self, x: Letter) -> Result<&Word> {
        self.image(x).ok_or(Error::DomainError(x))
    }

    pub fn images(&self) -> impl Iterator<Item = (Letter, &Word)> {
        self.domain.iter().zip(&self.images)
    }

    /// Longest image length.
    pub fn max_image_len(&self) -> usize {
        self.images.iter().map(|i| i.len()).max().unwrap_or(0)
    }

    pub fn apply(&self, w: &[Letter]) -> Result<Word> {
        let mut out = Vec::with_capacity(w.len() * 2);
        for &x in w {
            out.extend_from_slice(self.image_or_err(x)?);
        }
        Ok(Word::from_letters(out))
    }

    /// Letters occurring in the images of `letters`.
    pub fn image_alphabet(&self, letters: LetterSet) -> Result<LetterSet> {
        letters
            .iter()
            .try_fold(LetterSet::EMPTY, |acc, x| Ok(acc.union(self.image_or_err(x)?.alph())))
    }

    /// True iff `|lcp(f(b), f(c))| > |lcp(f(a), f(b))|`.
    pub fn is_breaking(&self, a: Letter, b: Letter, c: Letter) -> Result<bool> {
        if a == b || b == c || a == c {
            return Err(Error::NotATriple(a, b, c));
        }
        let (fa, fb, fc) = (self.image_or_err(a)?, self.image_or_err(b)?, self.image_or_err(c)?);
        Ok(lcp(fb, fc).len() > lcp(fa, fb).len())
    }

    /// All ordered triples of distinct domain letters on which `self` is breaking.
    pub fn breaking_triples(&self) -> BTreeSet<(Letter, Letter, Letter)> {
        let d = self.domain;
        let mut out = BTreeSet::new();
        for a in d.iter() {
            for b in d.iter().filter(|&b| b != a) {
                for c in d.iter().filter(|&c| c != a && c != b) {
                    if self.is_breaking(a, b, c).unwrap_or(false) {
                        out.insert((a, b, c));
                    }
                }
            }
        }
        out
    }

    pub fn to_tree(&self) -> RootedTree {
        let parents = self
            .images()
            .filter(|(x, _)| *x != self.first)
            .map(|(x, img)| (x, img[img.len() - 2]))
            .collect();
        RootedTree { root: self.first, parents }
    }

    pub fn from_tree(tree: &RootedTree) -> Result<Self> {
        let vertices = tree.vertices();
        let mut images = Vec::with_capacity(vertices.len());
        for v in vertices.iter() {
            let mut path = vec![v];
            let mut cur = v;
            while cur != tree.root {
                let p = *tree.parents.get(&cur).ok_or(Error::DisconnectedVertex(cur))?;
                if !vertices.contains(p) {
                    return Err(Error::DisconnectedVertex(cur));
                }
                if path.len() > vertices.len() {
                    return Err(Error::CyclicParentLinks(v));
                }
                path.push(p);
                cur = p;
            }
            if tree.parents.contains_key(&tree.root) {
                return Err(Error::CyclicParentLinks(tree.root));
            }
            path.reverse();
            images.push(Word::from_letters(path));
        }
        BlspMorphism::new(vertices, images)
    }

    /// Composition `self ∘ other` as a raw substitution.
    pub fn compose(&self, other: &BlspMorphism) -> Result<Substitution> {
        Substitution::from(self).compose(&Substitution::from(other))
    }

    fn sort_key(&self) -> [u32; MAX_LETTERS] {
        let mut key = [0; MAX_LETTERS];
        for (slot, img) in key.iter_mut().zip(&self.images) {
            *slot = encode_image(img);
        }
        key
    }
}

/// Packs a word of at most 8 letters into 4-bit nibbles, most significant
/// first, so that integer order is lexicographic order.
fn encode_image(img: &[Letter]) -> u32 {
    let mut code = 0u32;
    for i in 0..MAX_LETTERS {
        let nibble = img.get(i).map_or(0, |x| x.index() as u32 + 1);
        code = (code << 4) | nibble;
    }
    code
}

fn decode_image(code: u32) -> Word {
    (0..MAX_LETTERS)
        .map(|i| (code >> (4 * (MAX_LETTERS - 1 - i))) & 0xf)
        .take_while(|&n| n != 0)
        .map(|n| Letter::new(n as usize - 1).expect("nibble in range"))
        .collect()
}

impl fmt::Display for BlspMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bracket_list(f, self.images.iter())?;
        if !self.domain.is_initial_segment() {
            write!(f, " domain={}", Word::from_iter(self.domain.iter()))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BlspMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn write_bracket_list<'a>(f: &mut fmt::Formatter<'_>, images: impl Iterator<Item = &'a Word>) -> fmt::Result {
    f.write_str("[")?;
    for (i, img) in images.enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{img}")?;
    }
    f.write_str("]")
}

/// Parses `[u1,u2,…]` optionally followed by `domain=xyz`; without the
/// attribute the domain is the first `|images|` letters of `alphabet`.
fn parse_bracket_list(s: &str, alphabet: LetterSet) -> Result<(LetterSet, Vec<Word>)> {
    let s = s.trim();
    let close = s.find(']').ok_or_else(|| Error::Parse(format!("missing ']' in {s:?}")))?;
    let body = s[..close]
        .trim()
        .strip_prefix('[')
        .ok_or_else(|| Error::Parse(format!("missing '[' in {s:?}")))?;
    let images: Vec<Word> = if body.trim().is_empty() {
        Vec::new()
    } else {
        body.split(',').map(|part| part.trim().parse()).collect::<Result<_>>()?
    };
    let rest = s[close + 1..].trim();
    let domain = if rest.is_empty() {
        if images.len() > alphabet.len() {
            return Err(Error::AlphabetTooLarge(images.len()));
        }
        alphabet.iter().take(images.len()).collect()
    } else {
        let letters = rest
            .strip_prefix("domain=")
            .ok_or_else(|| Error::Parse(format!("unexpected trailing text {rest:?}")))?;
        let word: Word = letters.trim().parse()?;
        let set = word.alph();
        if set.len() != word.len() || !word.windows(2).all(|p| p[0] < p[1]) {
            return Err(Error::Parse(format!("domain {letters:?} must list distinct letters in order")));
        }
        set
    };
    Ok((domain, images))
}

impl FromStr for BlspMorphism {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BlspMorphism::parse_in(s, LetterSet::first_n(MAX_LETTERS)?)
    }
}

impl BlspMorphism {
    /// Parses a morphism literal whose default domain is drawn from `alphabet`.
    pub fn parse_in(s: &str, alphabet: LetterSet) -> Result<Self> {
        let (domain, images) = parse_bracket_list(s, alphabet)?;
        BlspMorphism::new(domain, images)
    }
}

/// Parses a directive word `[a,ab];[ba,b];…`.
pub fn parse_directive(s: &str) -> Result<Vec<BlspMorphism>> {
    parse_directive_in(s, LetterSet::first_n(MAX_LETTERS)?)
}

/// Like [`parse_directive`] with default domains drawn from `alphabet`.
pub fn parse_directive_in(s: &str, alphabet: LetterSet) -> Result<Vec<BlspMorphism>> {
    s.split([';', '\n'])
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| BlspMorphism::parse_in(p, alphabet))
        .collect()
}

pub fn format_directive(d: &[BlspMorphism]) -> String {
    d.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(";")
}

/// A labeled rooted tree on a sub-alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    pub root: Letter,
    pub parents: BTreeMap<Letter, Letter>,
}

impl RootedTree {
    pub fn vertices(&self) -> LetterSet {
        self.parents.keys().copied().collect::<LetterSet>().with(self.root)
    }

    /// The path tree `v1 → v2 → …` rooted at `v1`.
    pub fn path(vertices: &[Letter]) -> Self {
        let parents = vertices.windows(2).map(|p| (p[1], p[0])).collect();
        RootedTree { root: vertices[0], parents }
    }
}

/// Every bLSP morphism over `alphabet`, lexicographically ordered on the
/// image tuple `(f(a), f(b), …)`. There are `n^(n−1)` of them.
pub fn enumerate(alphabet: LetterSet) -> Result<Enumeration> {
    let n = alphabet.len();
    if n > MAX_LETTERS {
        return Err(Error::AlphabetTooLarge(n));
    }
    let letters: Vec<Letter> = alphabet.iter().collect();
    let mut keys = Vec::new();
    if n == 1 {
        keys.push(encode_key(&letters, &[None]));
    } else if n >= 2 {
        // Prüfer sequences give each unrooted tree once; every vertex may be the root.
        let count = n.pow(n as u32 - 2);
        let mut seq = vec![0usize; n - 2];
        for mut code in 0..count {
            for s in seq.iter_mut() {
                *s = code % n;
                code /= n;
            }
            let edges = prufer_edges(&seq, n);
            for root in 0..n {
                keys.push(encode_key(&letters, &orient(&edges, n, root)));
            }
        }
    }
    keys.sort_unstable();
    Ok(Enumeration { domain: alphabet, keys, pos: 0 })
}

fn prufer_edges(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

fn orient(edges: &[(usize, usize)], n: usize, root: usize) -> Vec<Option<usize>> {
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    let mut stack = vec![root];
    seen[root] = true;
    while let Some(v) = stack.pop() {
        for &(x, y) in edges {
            let other = if x == v { y } else if y == v { x } else { continue };
            if !seen[other] {
                seen[other] = true;
                parent[other] = Some(v);
                stack.push(other);
            }
        }
    }
    parent
}

fn encode_key(letters: &[Letter], parent: &[Option<usize>]) -> [u32; MAX_LETTERS] {
    let mut key = [0; MAX_LETTERS];
    for (v, slot) in key.iter_mut().enumerate().take(letters.len()) {
        let mut path = vec![letters[v]];
        let mut cur = v;
        while let Some(p) = parent[cur] {
            path.push(letters[p]);
            cur = p;
        }
        path.reverse();
        *slot = encode_image(&path);
    }
    key
}

/// Iterator returned by [`enumerate`].
#[derive(Debug, Clone)]
pub struct Enumeration {
    domain: LetterSet,
    keys: Vec<[u32; MAX_LETTERS]>,
    pos: usize,
}

impl Iterator for Enumeration {
    type Item = BlspMorphism;

    fn next(&mut self) -> Option<BlspMorphism> {
        let key = self.keys.get(self.pos)?;
        self.pos += 1;
        let images: Vec<Word> = key[..self.domain.len()].iter().map(|&c| decode_image(c)).collect();
        let first = images.iter().find(|i| i.len() == 1).and_then(|i| i.first())?;
        Some(BlspMorphism { domain: self.domain, images, first })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = self.keys.len() - self.pos;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Enumeration {}

/// A raw letter-to-word substitution, used for composites that need not be bLSP.
#[derive(Clone, PartialEq, Eq)]
pub struct Substitution {
    images: BTreeMap<Letter, Word>,
}

impl Substitution {
    pub fn new(images: BTreeMap<Letter, Word>) -> Self {
        Substitution { images }
    }

    pub fn image(&self, x: Letter) -> Option<&Word> {
        self.images.get(&x)
    }

    pub fn apply(&self, w: &[Letter]) -> Result<Word> {
        let mut out = Vec::new();
        for &x in w {
            out.extend_from_slice(self.images.get(&x).ok_or(Error::DomainError(x))?);
        }
        Ok(Word::from_letters(out))
    }

    /// `self ∘ other`: `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Substitution) -> Result<Substitution> {
        let images = other
            .images
            .iter()
            .map(|(&x, img)| Ok((x, self.apply(img)?)))
            .collect::<Result<_>>()?;
        Ok(Substitution { images })
    }
}

impl From<&BlspMorphism> for Substitution {
    fn from(f: &BlspMorphism) -> Self {
        Substitution { images: f.images().map(|(x, img)| (x, img.clone())).collect() }
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bracket_list(f, self.images.values())?;
        let domain: LetterSet = self.images.keys().copied().collect();
        if !domain.is_initial_segment() {
            write!(f, " domain={}", Word::from_iter(domain.iter()))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Substitution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (domain, images) = parse_bracket_list(s, LetterSet::first_n(MAX_LETTERS)?)?;
        if domain.len() != images.len() {
            return Err(Error::Parse(format!("{} images for {} letters", images.len(), domain.len())));
        }
        Ok(Substitution { images: domain.iter().zip(images).collect() })
    }
}

impl PartialOrd for BlspMorphism {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BlspMorphism {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.domain, self.sort_key()).cmp(&(other.domain, other.sort_key()))
    }
}
