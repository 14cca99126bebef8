//! General block codes over the alphabet `{0, .., d-1}`.
//!
//! Nothing here assumes linearity: minimum distance is computed by pairwise
//! enumeration, and the Singleton bound is asserted every time a distance is
//! produced.

use std::collections::HashSet;
use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::OnceLock;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::text;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Word(Vec<u32>);

impl Word {
    pub fn new(symbols: Vec<u32>) -> Self {
        Word(symbols)
    }

    pub fn symbols(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }

    fn without(&self, i: usize) -> Word {
        let mut s = self.0.clone();
        s.remove(i);
        Word(s)
    }
}

impl From<Vec<u32>> for Word {
    fn from(v: Vec<u32>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().join(" "))
    }
}

pub fn hamming_distance(a: &[u32], b: &[u32]) -> Result<usize> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    Ok(distance(a, b))
}

#[inline]
fn distance(a: &[u32], b: &[u32]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// `base^exp` as `u128`, or `None` on overflow.
pub(crate) fn checked_pow(base: u64, exp: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base as u128)?;
    }
    Some(acc)
}

/// Exact `log_base(value)` when `value` is a power of `base`.
pub(crate) fn exact_log(value: u64, base: u64) -> Option<usize> {
    if base < 2 {
        return (value == 1).then_some(0);
    }
    let (mut v, mut k) = (value, 0);
    while v > 1 {
        if v % base != 0 {
            return None;
        }
        v /= base;
        k += 1;
    }
    (v == 1).then_some(k)
}

pub fn singleton_bound_holds(size: u64, d: u32, n: usize, delta: usize) -> bool {
    match checked_pow(d as u64, n + 1 - delta.min(n + 1)) {
        Some(bound) => size as u128 <= bound,
        None => true,
    }
}

/// A set of distinct words of common length `n` over `{0, .., d-1}`.
///
/// Words are kept sorted, so equality and text output are canonical.
#[derive(Debug, Clone)]
pub struct Code {
    n: usize,
    d: u32,
    words: Vec<Word>,
    min_distance: OnceLock<usize>,
}

impl PartialEq for Code {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.d == other.d && self.words == other.words
    }
}

impl Eq for Code {}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MdsVerdict {
    pub is_mds: bool,
    pub n: usize,
    pub d: u32,
    pub size: u64,
    pub min_distance: usize,
    /// `log_d(size)`; integral exactly when `size` is a power of `d`.
    pub k: f64,
    /// Whether the minimum distance equals `ceil(n/2) + 1`.
    pub ame_distance: bool,
}

impl Code {
    pub fn new(n: usize, d: u32, words: impl IntoIterator<Item = Word>) -> Result<Self> {
        let mut words = Self::validated(n, d, words)?;
        words.sort_unstable();
        if let Some(dup) = words.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateWord(dup[0].0.clone()));
        }
        Ok(Self::from_sorted(n, d, words))
    }

    /// Records a minimum distance established by other means, such as the
    /// minimum weight of a linear code.
    pub(crate) fn with_min_distance(self, delta: usize) -> Self {
        let _ = self.min_distance.set(delta);
        self
    }

    /// Like [`Code::new`] but silently merges duplicate words.
    pub fn merging(n: usize, d: u32, words: impl IntoIterator<Item = Word>) -> Result<Self> {
        let mut words = Self::validated(n, d, words)?;
        words.sort_unstable();
        words.dedup();
        Ok(Self::from_sorted(n, d, words))
    }

    fn validated(n: usize, d: u32, words: impl IntoIterator<Item = Word>) -> Result<Vec<Word>> {
        if n == 0 || d == 0 {
            return Err(Error::InvalidParams(format!(
                "word length and alphabet size must be positive (n={n}, d={d})"
            )));
        }
        let words: Vec<Word> = words.into_iter().collect();
        for w in &words {
            if w.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: w.len(),
                });
            }
            if let Some(&s) = w.0.iter().find(|&&s| s >= d) {
                return Err(Error::InvalidSymbol {
                    symbol: s as u64,
                    alphabet: d,
                });
            }
        }
        Ok(words)
    }

    fn from_sorted(n: usize, d: u32, words: Vec<Word>) -> Self {
        Code {
            n,
            d,
            words,
            min_distance: OnceLock::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> u32 {
        self.d
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.binary_search(w).is_ok()
    }

    /// Exact minimum pairwise Hamming distance, cached after the first call.
    pub fn min_distance(&self) -> Result<usize> {
        if self.words.len() < 2 {
            return Err(Error::TooFewWords(self.words.len()));
        }
        let delta = *self.min_distance.get_or_init(|| {
            let words = &self.words;
            let hit_one = AtomicBool::new(false);
            let delta = (0..words.len())
                .into_par_iter()
                .map(|i| {
                    let mut best = usize::MAX;
                    for w in &words[i + 1..] {
                        if hit_one.load(Ordering::Relaxed) {
                            return 1;
                        }
                        best = best.min(distance(words[i].symbols(), w.symbols()));
                        if best == 1 {
                            hit_one.store(true, Ordering::Relaxed);
                            break;
                        }
                    }
                    best
                })
                .min()
                .unwrap_or(usize::MAX);
            assert!(
                singleton_bound_holds(words.len() as u64, self.d, self.n, delta),
                "Singleton bound violated: |C|={} d={} n={} delta={}",
                words.len(),
                self.d,
                self.n,
                delta
            );
            delta
        });
        Ok(delta)
    }

    pub fn mds_verdict(&self) -> Result<MdsVerdict> {
        let delta = self.min_distance()?;
        let size = self.words.len() as u64;
        let is_mds = checked_pow(self.d as u64, self.n - delta + 1) == Some(size as u128);
        let k = match exact_log(size, self.d as u64) {
            Some(k) => k as f64,
            None => (size as f64).ln() / (self.d as f64).ln(),
        };
        Ok(MdsVerdict {
            is_mds,
            n: self.n,
            d: self.d,
            size,
            min_distance: delta,
            k,
            ame_distance: delta == self.n.div_ceil(2) + 1,
        })
    }

    /// Orthogonal-array strength test: every projection onto `t` coordinates
    /// hits each of the `d^t` tuples exactly `|C| / d^t` times.
    pub fn oa_strength_check(&self, t: usize) -> Result<bool> {
        if t > self.n {
            return Err(Error::InvalidStrength { t, n: self.n });
        }
        let size = self.words.len() as u128;
        let cells = match checked_pow(self.d as u64, t) {
            Some(c) if c <= size && size.is_multiple_of(c) => c as usize,
            _ => return Ok(false),
        };
        let per_cell = (size / cells as u128) as u32;
        let subsets: Vec<Vec<usize>> = (0..self.n).combinations(t).collect();
        Ok(subsets.par_iter().all(|subset| {
            let mut counts = vec![0u32; cells];
            for w in &self.words {
                let idx = subset
                    .iter()
                    .fold(0usize, |acc, &c| acc * self.d as usize + w.0[c] as usize);
                counts[idx] += 1;
            }
            counts.iter().all(|&c| c == per_cell)
        }))
    }

    /// Deletes coordinate `i`. Returns the punctured code and whether the
    /// number of words survived (no two words merged).
    pub fn puncture(&self, i: usize) -> Result<(Code, bool)> {
        self.check_reducible(i)?;
        let out = Code::merging(self.n - 1, self.d, self.words.iter().map(|w| w.without(i)))?;
        let preserved = out.len() == self.len();
        Ok((out, preserved))
    }

    /// Keeps the words with symbol `s` at coordinate `i`, then deletes `i`.
    pub fn shorten(&self, i: usize, s: u32) -> Result<Code> {
        self.check_reducible(i)?;
        if s >= self.d {
            return Err(Error::InvalidSymbol {
                symbol: s as u64,
                alphabet: self.d,
            });
        }
        let kept: Vec<Word> = self
            .words
            .iter()
            .filter(|w| w.0[i] == s)
            .map(|w| w.without(i))
            .collect();
        if kept.is_empty() {
            return Err(Error::EmptyResult);
        }
        Code::new(self.n - 1, self.d, kept)
    }

    fn check_reducible(&self, i: usize) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidParams(
                "cannot drop a coordinate from words of length 1".into(),
            ));
        }
        if i >= self.n {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.n,
            });
        }
        Ok(())
    }

    /// Text form: `n=<n> d=<d>` then one word per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("n={} d={}\n", self.n, self.d);
        for w in &self.words {
            out.push_str(&w.to_string());
            out.push('\n');
        }
        out
    }

    pub fn from_text(input: &str) -> Result<Self> {
        let mut lines = input.lines().enumerate();
        let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
        let [n, d] = text::header(header, ["n", "d"], 1)?;
        let d = u32::try_from(d).map_err(|_| Error::parse(1, "alphabet too large"))?;
        let mut words = Vec::new();
        let mut seen = HashSet::new();
        for (idx, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let symbols = text::symbols(line, idx + 1)?;
            if !seen.insert(symbols.clone()) {
                return Err(Error::parse(idx + 1, "duplicate word"));
            }
            words.push(Word(symbols));
        }
        Code::new(n as usize, d, words)
    }
}
