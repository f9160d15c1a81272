//! Symmetric group in one-line notation.
//!
//! Values are 1-based. `compose(p, q)` is `p ∘ q`, so a product of simple
//! reflections applies its rightmost factor first, and `s_i ∘ w` swaps the
//! values `i` and `i + 1` in the one-line notation of `w`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default bound on the word length accepted by the subword oracle.
pub const DEFAULT_WORD_CAP: usize = 20;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(Error::NotAPermutation { n, images });
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    /// The simple reflection `s_i`, `1 <= i < n`.
    pub fn simple(n: usize, i: usize) -> Result<Self> {
        transposition(n, i, i + 1)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of the 1-based point `i`.
    #[inline]
    pub fn at(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        compose(self, other)
    }

    /// `self ∘ s_i`: swaps the entries at positions `i` and `i + 1`.
    pub fn mul_simple_right(&self, i: usize) -> Self {
        let mut images = self.images.clone();
        images.swap(i - 1, i);
        Permutation { images }
    }

    /// `s_i ∘ self`: swaps the values `i` and `i + 1`.
    pub fn mul_simple_left(&self, i: usize) -> Self {
        let images = self
            .images
            .iter()
            .map(|&v| {
                if v == i {
                    i + 1
                } else if v == i + 1 {
                    i
                } else {
                    v
                }
            })
            .collect();
        Permutation { images }
    }

    pub fn length(&self) -> usize {
        length(self)
    }

    pub fn reduced_word(&self) -> ReducedWord {
        reduced_word(self)
    }

    /// Extends a permutation of `1..m` to `1..n` by fixing `m+1..n`.
    pub fn extend(&self, n: usize) -> Self {
        let mut images = self.images.clone();
        images.extend(self.n() + 1..=n.max(self.n()));
        Permutation { images }
    }

    /// The restriction to `1..m`; only meaningful when `1..m` is stable.
    pub fn restrict(&self, m: usize) -> Result<Self> {
        Permutation::from_images(self.images[..m].to_vec())
    }

    /// Right descents: positions `i` with `w(i) > w(i+1)`.
    pub fn descents(&self) -> impl Iterator<Item = usize> + '_ {
        (1..self.n()).filter(move |&i| self.at(i) > self.at(i + 1))
    }

    /// All permutations of `1..n` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        (1..=n)
            .permutations(n)
            .map(|images| Permutation { images })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.images.iter().join(","))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.images.iter().join(","))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let images = trimmed
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad permutation entry {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_images(images)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A word in the simple reflections, written `s1.s3.s2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ReducedWord {
    letters: Vec<usize>,
}

impl ReducedWord {
    /// Wraps letters without checking reducedness; see [`ReducedWord::checked`].
    pub fn new(letters: Vec<usize>) -> Self {
        ReducedWord { letters }
    }

    /// Builds the word and verifies that it is reduced in `S_n`.
    pub fn checked(n: usize, letters: Vec<usize>) -> Result<Self> {
        let word = ReducedWord { letters };
        let w = word.evaluate(n)?;
        if w.length() != word.len() {
            return Err(Error::NotReduced(word.to_string()));
        }
        Ok(word)
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The product `s_{i_1} ∘ … ∘ s_{i_l}` in `S_n`.
    pub fn evaluate(&self, n: usize) -> Result<Permutation> {
        let mut w = Permutation::identity(n);
        for &i in &self.letters {
            if i == 0 || i >= n {
                return Err(Error::IndexOutOfRange { n, i, j: i + 1 });
            }
            w = w.mul_simple_right(i);
        }
        Ok(w)
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        write!(f, "{}", self.letters.iter().map(|i| format!("s{i}")).join("."))
    }
}

impl FromStr for ReducedWord {
    type Err = Error;

    /// Accepts `s1.s3.s2`, `s1 s3 s2`, `1.3.2`, and `e`/`id`/empty for the identity.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || t == "e" || t == "id" {
            return Ok(ReducedWord::default());
        }
        let letters = t
            .split(|c: char| c == '.' || c == '*' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .map(|p| {
                p.trim_start_matches('s')
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad word letter {p:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ReducedWord { letters })
    }
}

pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    if p.n() != q.n() {
        return Err(Error::SizeMismatch {
            left: p.n(),
            right: q.n(),
        });
    }
    Ok(Permutation {
        images: q.images.iter().map(|&v| p.at(v)).collect(),
    })
}

/// Number of inversions.
pub fn length(p: &Permutation) -> usize {
    let v = &p.images;
    let mut count = 0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                count += 1;
            }
        }
    }
    count
}

/// The lexicographically first reduced word: peel off the smallest left
/// descent each time.
pub fn reduced_word(p: &Permutation) -> ReducedWord {
    let mut w = p.clone();
    let mut letters = Vec::with_capacity(length(p));
    loop {
        let inv = w.inverse();
        let Some(i) = inv.descents().next() else { break };
        w = w.mul_simple_left(i);
        letters.push(i);
    }
    ReducedWord { letters }
}

/// Bruhat order by the prefix-dominance (tableau) criterion.
pub fn bruhat_leq(u: &Permutation, w: &Permutation) -> Result<bool> {
    if u.n() != w.n() {
        return Err(Error::SizeMismatch {
            left: u.n(),
            right: w.n(),
        });
    }
    Ok(bruhat_leq_unchecked(u, w))
}

pub(crate) fn bruhat_leq_unchecked(u: &Permutation, w: &Permutation) -> bool {
    let n = u.n();
    if length(u) > length(w) {
        return false;
    }
    let mut a: Vec<usize> = Vec::with_capacity(n);
    let mut b: Vec<usize> = Vec::with_capacity(n);
    for i in 0..n {
        insert_sorted(&mut a, u.images[i]);
        insert_sorted(&mut b, w.images[i]);
        if a.iter().zip(&b).any(|(x, y)| x > y) {
            return false;
        }
    }
    true
}

fn insert_sorted(v: &mut Vec<usize>, x: usize) {
    let pos = v.partition_point(|&y| y < x);
    v.insert(pos, x);
}

/// All products of subwords of `word`, as elements of `S_n`.
pub fn subword_products(n: usize, word: &ReducedWord) -> Result<BTreeSet<Permutation>> {
    let mut reached = BTreeSet::new();
    reached.insert(Permutation::identity(n));
    for &i in word.letters() {
        if i == 0 || i >= n {
            return Err(Error::IndexOutOfRange { n, i, j: i + 1 });
        }
        let extended: Vec<Permutation> = reached.iter().map(|x| x.mul_simple_right(i)).collect();
        reached.extend(extended);
    }
    Ok(reached)
}

/// `{τ : τ ⪯ w}` via the subword property of one reduced word of `w`.
pub fn lower_interval(w: &Permutation, cap: usize) -> Result<BTreeSet<Permutation>> {
    let word = reduced_word(w);
    if word.len() > cap {
        return Err(Error::WordCapExceeded {
            len: word.len(),
            cap,
        });
    }
    subword_products(w.n(), &word)
}

/// Bruhat order by subword enumeration; independent of [`bruhat_leq`].
pub fn bruhat_leq_oracle(u: &Permutation, w: &Permutation, cap: usize) -> Result<bool> {
    if u.n() != w.n() {
        return Err(Error::SizeMismatch {
            left: u.n(),
            right: w.n(),
        });
    }
    Ok(lower_interval(w, cap)?.contains(u))
}

/// Positions (1-based, increasing) of an occurrence of `pat` in `w`.
pub fn find_pattern(w: &Permutation, pat: &Permutation) -> Option<Vec<usize>> {
    let m = pat.n();
    if m > w.n() {
        return None;
    }
    (1..=w.n()).combinations(m).find(|pos| {
        (0..m).all(|a| {
            (a + 1..m).all(|b| {
                (w.at(pos[a]) < w.at(pos[b])) == (pat.images[a] < pat.images[b])
            })
        })
    })
}

pub fn contains_pattern(w: &Permutation, pat: &Permutation) -> bool {
    find_pattern(w, pat).is_some()
}

/// The transposition exchanging `i` and `j`, `1 <= i < j <= n`.
pub fn transposition(n: usize, i: usize, j: usize) -> Result<Permutation> {
    if i == 0 || i >= j || j > n {
        return Err(Error::IndexOutOfRange { n, i, j });
    }
    let mut images: Vec<usize> = (1..=n).collect();
    images.swap(i - 1, j - 1);
    Ok(Permutation { images })
}
