//! Brute-force oracles that share no code with the library algorithms.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

/// Words as plain byte strings over `b'a'..`.
pub type Bytes = Vec<u8>;

pub fn all_words(k: u8, max_len: usize) -> Vec<Bytes> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for x in 0..k {
                let mut v: Bytes = w.clone();
                v.push(b'a' + x);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

pub fn occurs(w: &[u8], u: &[u8]) -> bool {
    u.is_empty() || w.windows(u.len()).any(|x| x == u)
}

/// Left special factors by direct definition: `xu` and `yu` both occur.
pub fn left_special(w: &[u8]) -> BTreeSet<Bytes> {
    let mut lefts: BTreeMap<Bytes, BTreeSet<u8>> = BTreeMap::new();
    for i in 1..=w.len() {
        for j in i..=w.len() {
            lefts.entry(w[i..j].to_vec()).or_default().insert(w[i - 1]);
        }
    }
    lefts.into_iter().filter(|(_, s)| s.len() >= 2).map(|(u, _)| u).collect()
}

pub fn is_lsp(w: &[u8]) -> bool {
    left_special(w).iter().all(|u| w.starts_with(u))
}

/// Shortest non-prefix left special factor, least in lexicographic order.
pub fn witness(w: &[u8]) -> Option<Bytes> {
    left_special(w)
        .into_iter()
        .filter(|u| !w.starts_with(u))
        .min_by(|x, y| x.len().cmp(&y.len()).then(x.cmp(y)))
}

/// `(a, b, c, β, γ, u)` by definition: `ua` a prefix, `βub` and `γuc` factors.
pub type Frag = (u8, u8, u8, u8, u8, Bytes);

pub fn fragilities(w: &[u8]) -> BTreeSet<Frag> {
    let alph: BTreeSet<u8> = w.iter().copied().collect();
    let mut out = BTreeSet::new();
    for len in 0..w.len() {
        let u = &w[..len];
        let a = w[len];
        for &beta in &alph {
            for &gamma in &alph {
                if beta == gamma {
                    continue;
                }
                for &b in &alph {
                    for &c in &alph {
                        if a == b || b == c || a == c {
                            continue;
                        }
                        let left = [&[beta][..], u, &[b]].concat();
                        let right = [&[gamma][..], u, &[c]].concat();
                        if occurs(w, &left) && occurs(w, &right) {
                            out.insert((a, b, c, beta, gamma, u.to_vec()));
                        }
                    }
                }
            }
        }
    }
    out
}

/// A morphism as its image list, indexed by letter.
pub fn apply(images: &[Bytes], w: &[u8]) -> Bytes {
    w.iter().flat_map(|&x| images[(x - b'a') as usize].iter().copied()).collect()
}

/// All rooted labeled trees on `n` vertices as root-path images, by brute
/// force over every parent array (`parent[root] = root`).
pub fn tree_morphisms(n: u8) -> BTreeSet<Vec<Bytes>> {
    let n = n as usize;
    let mut out = BTreeSet::new();
    for code in 0..n.pow(n as u32) {
        let parents: Vec<usize> = (0..n).map(|v| code / n.pow(v as u32) % n).collect();
        let roots: Vec<usize> = (0..n).filter(|&v| parents[v] == v).collect();
        if roots.len() != 1 {
            continue;
        }
        let paths: Option<Vec<Bytes>> = (0..n)
            .map(|v| {
                let mut path = vec![b'a' + v as u8];
                let mut cur = v;
                while cur != roots[0] {
                    cur = parents[cur];
                    path.push(b'a' + cur as u8);
                    if path.len() > n {
                        return None;
                    }
                }
                path.reverse();
                Some(path)
            })
            .collect();
        out.extend(paths);
    }
    out
}

pub fn show(images: &[Bytes]) -> String {
    let parts: Vec<String> = images.iter().map(|i| String::from_utf8_lossy(i).into_owned()).collect();
    format!("[{}]", parts.join(","))
}
