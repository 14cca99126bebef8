//! Minimal-support AME states built from MDS codes, and the two
//! verification routes for the maximally-mixed-marginal property.
//!
//! A state is a sparse map from basis kets (words over `{0, .., d-1}`) to
//! complex amplitudes. For every site subset `B` with `|B| = m <= n/2` the
//! reduced density matrix obtained by tracing out the complement must equal
//! `Id / d^m`.
//!
//! - [`verify_uniform_combinatorial`] decides this by exact counting on the
//!   support (uniform-magnitude states only).
//! - [`verify_uniform_dense`] computes each partial trace numerically.
//!
//! The two are independent and must agree on every uniform-amplitude state.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::code::{checked_pow, Code, Word};
use crate::error::{Error, Result};
use crate::text;

pub const NORM_TOLERANCE: f64 = 1e-12;
pub const DENSE_TOLERANCE: f64 = 1e-12;
/// Largest reduced-density dimension `d^m` handled by the numeric route.
pub const DENSITY_DIM_LIMIT: u64 = 10_000_000;
/// Largest number of entries materialized by [`reduced_density`].
pub const DENSE_MATRIX_LIMIT: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct AmeState {
    n: usize,
    d: u32,
    kets: BTreeMap<Word, Complex64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BipartitionReport {
    /// The kept sites `B`; the complement is traced out.
    pub subset: Vec<usize>,
    pub m: usize,
    /// Largest absolute entry of `rho_B - Id / d^m`.
    pub deviation: f64,
    pub pass: bool,
}

impl AmeState {
    pub fn new(n: usize, d: u32, kets: impl IntoIterator<Item = (Word, Complex64)>) -> Result<Self> {
        if n == 0 || d < 2 {
            return Err(Error::InvalidParams(format!(
                "need n >= 1 sites and local dimension d >= 2 (n={n}, d={d})"
            )));
        }
        let mut map = BTreeMap::new();
        for (w, amp) in kets {
            if w.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: w.len(),
                });
            }
            if let Some(&s) = w.symbols().iter().find(|&&s| s >= d) {
                return Err(Error::InvalidSymbol {
                    symbol: s as u64,
                    alphabet: d,
                });
            }
            if amp == Complex64::new(0.0, 0.0) {
                continue;
            }
            if map.insert(w.clone(), amp).is_some() {
                return Err(Error::DuplicateWord(w.into_inner()));
            }
        }
        let norm: f64 = map.values().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOLERANCE || norm.is_nan() {
            return Err(Error::NotNormalized(norm));
        }
        Ok(AmeState { n, d, kets: map })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn kets(&self) -> &BTreeMap<Word, Complex64> {
        &self.kets
    }

    pub fn support_size(&self) -> usize {
        self.kets.len()
    }

    pub fn minimal_support_size(&self) -> Option<u64> {
        checked_pow(self.d as u64, self.n / 2).and_then(|v| u64::try_from(v).ok())
    }

    pub fn is_minimal_support(&self) -> bool {
        self.minimal_support_size() == Some(self.kets.len() as u64)
    }

    /// Whether all amplitudes share one magnitude (relative tolerance 1e-12).
    pub fn has_uniform_magnitude(&self) -> bool {
        let mut mags = self.kets.values().map(|a| a.norm());
        let Some(first) = mags.next() else {
            return false;
        };
        mags.all(|m| (m - first).abs() <= NORM_TOLERANCE * first)
    }

    /// Multiplies every amplitude by the matching unit phase `exp(i theta)`.
    pub fn with_phases(&self, phases: &[f64]) -> Result<AmeState> {
        if phases.len() != self.kets.len() {
            return Err(Error::LengthMismatch {
                expected: self.kets.len(),
                found: phases.len(),
            });
        }
        let kets = self
            .kets
            .iter()
            .zip(phases)
            .map(|((w, a), &t)| (w.clone(), a * Complex64::from_polar(1.0, t)));
        AmeState::new(self.n, self.d, kets)
    }

    /// Text form: `n=<n> d=<d>` then `<word> <re> <im>` per ket.
    pub fn to_text(&self) -> String {
        let mut out = format!("n={} d={}\n", self.n, self.d);
        for (w, a) in &self.kets {
            out.push_str(&format!("{} {} {}\n", w, a.re, a.im));
        }
        out
    }

    pub fn from_text(input: &str) -> Result<Self> {
        let mut lines = input.lines().enumerate();
        let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
        let [n, d] = text::header(header, ["n", "d"], 1)?;
        let d = u32::try_from(d).map_err(|_| Error::parse(1, "local dimension too large"))?;
        let n = n as usize;
        let mut kets = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for (idx, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != n + 2 {
                return Err(Error::parse(
                    idx + 1,
                    format!("expected {n} symbols followed by real and imaginary parts"),
                ));
            }
            let word = text::symbols(&tokens[..n].join(" "), idx + 1)?;
            let parse = |t: &str| {
                t.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| Error::parse(idx + 1, format!("bad amplitude `{t}`")))
            };
            let amp = Complex64::new(parse(tokens[n])?, parse(tokens[n + 1])?);
            if !seen.insert(word.clone()) {
                return Err(Error::parse(idx + 1, "duplicate ket"));
            }
            kets.push((Word::new(word), amp));
        }
        AmeState::new(n, d, kets)
    }
}

/// Uniform positive superposition over the codewords of an MDS code with
/// `d^floor(n/2)` words and minimum distance `ceil(n/2) + 1`.
pub fn state_from_code(code: &Code) -> Result<AmeState> {
    let (n, d) = (code.n(), code.alphabet());
    if n < 2 {
        return Err(Error::NotAmeRelevantMds(format!("need at least 2 sites, got {n}")));
    }
    let expected = checked_pow(d as u64, n / 2).unwrap_or(u128::MAX);
    if code.len() as u128 != expected {
        return Err(Error::NotAmeRelevantMds(format!(
            "code has {} words, minimal support needs {d}^{} = {expected}",
            code.len(),
            n / 2
        )));
    }
    let verdict = code.mds_verdict()?;
    if !verdict.is_mds {
        return Err(Error::NotAmeRelevantMds(format!(
            "code is not MDS (|C| = {}, delta = {})",
            verdict.size, verdict.min_distance
        )));
    }
    if !verdict.ame_distance {
        return Err(Error::NotAmeRelevantMds(format!(
            "minimum distance {} differs from ceil(n/2)+1 = {}",
            verdict.min_distance,
            n.div_ceil(2) + 1
        )));
    }
    let amp = Complex64::new(1.0 / (code.len() as f64).sqrt(), 0.0);
    AmeState::new(n, d, code.words().iter().map(|w| (w.clone(), amp)))
}

/// The support of a uniform-magnitude minimal-support state, as a code.
pub fn code_from_state(state: &AmeState) -> Result<Code> {
    if !state.has_uniform_magnitude() {
        return Err(Error::NonUniformSupport);
    }
    let expected = state.minimal_support_size().unwrap_or(u64::MAX);
    if state.support_size() as u64 != expected {
        return Err(Error::WrongSupportSize {
            expected,
            found: state.support_size() as u64,
        });
    }
    Code::new(state.n, state.d, state.kets.keys().cloned())
}

/// Every `B` with `1 <= |B| <= floor(n/2)`, by size, then lexicographically.
pub fn bipartitions(n: usize) -> Vec<Vec<usize>> {
    (1..=n / 2).flat_map(|m| (0..n).combinations(m)).collect()
}

fn check_subset(n: usize, subset: &[usize]) -> Result<()> {
    if subset.len() > n {
        return Err(Error::BadSubset(format!("{} sites requested out of {n}", subset.len())));
    }
    if let Some(&s) = subset.iter().find(|&&s| s >= n) {
        return Err(Error::BadSubset(format!("site {s} out of range for {n} sites")));
    }
    if subset.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadSubset(format!("{subset:?} is not strictly increasing")));
    }
    Ok(())
}

/// Mixed-radix index helpers: kept sites and traced sites of each ket.
struct Split {
    d: u64,
    kept: Vec<usize>,
    traced: Vec<usize>,
}

impl Split {
    fn new(n: usize, d: u32, kept: &[usize]) -> Result<Self> {
        if checked_pow(d as u64, n).is_none_or(|v| v > u64::MAX as u128) {
            return Err(Error::BudgetExceeded(format!("{d}^{n} basis states do not fit 64-bit indices")));
        }
        let traced = (0..n).filter(|i| !kept.contains(i)).collect();
        Ok(Split {
            d: d as u64,
            kept: kept.to_vec(),
            traced,
        })
    }

    fn index(&self, sites: &[usize], w: &Word) -> u64 {
        sites
            .iter()
            .fold(0, |acc, &s| acc * self.d + w.symbols()[s] as u64)
    }

    fn kept(&self, w: &Word) -> u64 {
        self.index(&self.kept, w)
    }

    fn traced(&self, w: &Word) -> u64 {
        self.index(&self.traced, w)
    }
}

/// Exact rational `num / den`, compared by cross multiplication.
#[derive(Clone, Copy)]
struct Ratio {
    num: u128,
    den: u128,
}

impl Ratio {
    const ZERO: Ratio = Ratio { num: 0, den: 1 };

    fn max(self, other: Ratio) -> Ratio {
        if other.num * self.den > self.num * other.den {
            other
        } else {
            self
        }
    }
}

fn combinatorial_report(state: &AmeState, subset: &[usize]) -> Result<BipartitionReport> {
    let split = Split::new(state.n, state.d, subset)?;
    let m = subset.len();
    let support = state.kets.len() as u128;
    let cells = checked_pow(state.d as u64, m).unwrap_or(u128::MAX);
    let mut worst = Ratio::ZERO;

    // diagonal: rho_B[x][x] = (#support words with B-projection x) / N
    let mut counts: HashMap<u64, u128> = HashMap::new();
    for w in state.kets.keys() {
        *counts.entry(split.kept(w)).or_default() += 1;
    }
    if (counts.len() as u128) < cells {
        // some tuple is never hit: that diagonal entry is 0
        worst = worst.max(Ratio { num: 1, den: cells });
    }
    for &c in counts.values() {
        let scaled = c * cells;
        worst = worst.max(Ratio {
            num: scaled.abs_diff(support),
            den: support * cells,
        });
    }

    // off-diagonal: words agreeing on the traced sites couple distinct kept
    // tuples, each pair contributing 1/N
    let mut by_traced: Vec<(u64, u64)> = state
        .kets
        .keys()
        .map(|w| (split.traced(w), split.kept(w)))
        .collect();
    by_traced.sort_unstable();
    let mut pairs: HashMap<(u64, u64), u128> = HashMap::new();
    for group in by_traced.chunk_by(|a, b| a.0 == b.0) {
        for (i, a) in group.iter().enumerate() {
            for b in &group[i + 1..] {
                let key = (a.1.min(b.1), a.1.max(b.1));
                *pairs.entry(key).or_default() += 1;
            }
        }
    }
    if let Some(&c) = pairs.values().max() {
        worst = worst.max(Ratio { num: c, den: support });
    }

    let deviation = worst.num as f64 / worst.den as f64;
    Ok(BipartitionReport {
        subset: subset.to_vec(),
        m,
        deviation,
        pass: worst.num == 0,
    })
}

/// Exact counting verification over every `B` with `|B| <= floor(n/2)`.
///
/// For a uniform-magnitude state the marginal on `B` is `Id / d^m` iff the
/// projection of the support onto `B` is uniform and no two support words
/// agree on the traced sites.
pub fn verify_uniform_combinatorial(state: &AmeState) -> Result<Vec<BipartitionReport>> {
    if !state.has_uniform_magnitude() {
        return Err(Error::NonUniformSupport);
    }
    bipartitions(state.n)
        .par_iter()
        .map(|b| combinatorial_report(state, b))
        .collect()
}

/// Sparse partial trace: diagonal plus the nonzero off-diagonal entries
/// `(row, col, value)` with `row < col`.
struct SparseDensity {
    dim: u64,
    diagonal: Vec<f64>,
    upper: HashMap<(u64, u64), Complex64>,
}

fn partial_trace(state: &AmeState, subset: &[usize]) -> Result<SparseDensity> {
    check_subset(state.n, subset)?;
    let split = Split::new(state.n, state.d, subset)?;
    let dim = checked_pow(state.d as u64, subset.len())
        .filter(|&v| v <= DENSITY_DIM_LIMIT as u128)
        .ok_or_else(|| {
            Error::BudgetExceeded(format!(
                "reduced density of dimension {}^{} exceeds {DENSITY_DIM_LIMIT}",
                state.d,
                subset.len()
            ))
        })? as u64;
    let mut entries: Vec<(u64, u64, Complex64)> = state
        .kets
        .iter()
        .map(|(w, &a)| (split.traced(w), split.kept(w), a))
        .collect();
    entries.sort_unstable_by_key(|e| (e.0, e.1));
    let mut diagonal = vec![0.0; dim as usize];
    let mut upper: HashMap<(u64, u64), Complex64> = HashMap::new();
    for group in entries.chunk_by(|a, b| a.0 == b.0) {
        for (i, &(_, x, ax)) in group.iter().enumerate() {
            diagonal[x as usize] += ax.norm_sqr();
            for &(_, y, ay) in &group[i + 1..] {
                // rho[x][y] = sum over traced configurations of psi(x) conj(psi(y))
                *upper.entry((x, y)).or_default() += ax * ay.conj();
            }
        }
    }
    Ok(SparseDensity { dim, diagonal, upper })
}

/// Dense reduced density matrix on the kept sites `subset`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl DensityMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Complex64]> {
        self.entries.chunks(self.dim)
    }
}

pub fn reduced_density(state: &AmeState, subset: &[usize]) -> Result<DensityMatrix> {
    let sparse = partial_trace(state, subset)?;
    let dim = sparse.dim;
    if dim as u128 * dim as u128 > DENSE_MATRIX_LIMIT as u128 {
        return Err(Error::BudgetExceeded(format!(
            "dense {dim}x{dim} matrix exceeds {DENSE_MATRIX_LIMIT} entries"
        )));
    }
    let dim = dim as usize;
    let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
    for (i, &v) in sparse.diagonal.iter().enumerate() {
        entries[i * dim + i] = Complex64::new(v, 0.0);
    }
    for (&(x, y), &v) in &sparse.upper {
        let (x, y) = (x as usize, y as usize);
        entries[x * dim + y] += v;
        entries[y * dim + x] += v.conj();
    }
    Ok(DensityMatrix { dim, entries })
}

fn dense_report(state: &AmeState, subset: &[usize], tolerance: f64) -> Result<BipartitionReport> {
    let sparse = partial_trace(state, subset)?;
    let target = 1.0 / sparse.dim as f64;
    let diag = sparse
        .diagonal
        .iter()
        .map(|v| (v - target).abs())
        .fold(0.0, f64::max);
    let off = sparse.upper.values().map(|v| v.norm()).fold(0.0, f64::max);
    let deviation = diag.max(off);
    Ok(BipartitionReport {
        subset: subset.to_vec(),
        m: subset.len(),
        deviation,
        pass: deviation <= tolerance,
    })
}

/// Numeric partial-trace verification over every `B` with `|B| <= floor(n/2)`.
pub fn verify_uniform_dense(state: &AmeState, tolerance: f64) -> Result<Vec<BipartitionReport>> {
    bipartitions(state.n)
        .par_iter()
        .map(|b| dense_report(state, b, tolerance))
        .collect()
}

pub fn all_pass(reports: &[BipartitionReport]) -> bool {
    reports.iter().all(|r| r.pass)
}

/// AME(n, d) -> AME(n-1, d): puncture the last site when `n` is odd,
/// shorten it at symbol 0 when `n` is even.
pub fn reduce_ame(state: &AmeState) -> Result<AmeState> {
    if state.n < 3 {
        return Err(Error::InvalidParams(format!(
            "reduction needs at least 3 sites, state has {}",
            state.n
        )));
    }
    let verified = |s: &AmeState, what: &str| -> Result<()> {
        match verify_uniform_combinatorial(s) {
            Ok(r) if all_pass(&r) && s.is_minimal_support() => Ok(()),
            Ok(_) => Err(Error::VerificationFailed(format!("{what} is not AME of minimal support"))),
            Err(e) => Err(Error::VerificationFailed(format!("{what}: {e}"))),
        }
    };
    verified(state, "input")?;
    let code = code_from_state(state)?;
    let last = state.n - 1;
    let reduced = if state.n % 2 == 1 {
        code.puncture(last)?.0
    } else {
        code.shorten(last, 0)?
    };
    let out = state_from_code(&reduced).map_err(|e| Error::VerificationFailed(e.to_string()))?;
    verified(&out, "output")?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform(n: usize, d: u32, words: &[&[u32]]) -> AmeState {
        let a = Complex64::new(1.0 / (words.len() as f64).sqrt(), 0.0);
        AmeState::new(n, d, words.iter().map(|w| (Word::new(w.to_vec()), a))).unwrap()
    }

    fn diagonal_code(d: u32) -> Code {
        Code::new(2, d, (0..d).map(|i| Word::new(vec![i, i]))).unwrap()
    }

    fn ternary_4_2() -> Code {
        let words = (0..3)
            .flat_map(|i| (0..3).map(move |j| Word::new(vec![i, j, (i + j) % 3, (i + 2 * j) % 3])));
        Code::new(4, 3, words).unwrap()
    }

    fn verdicts(r: &[BipartitionReport]) -> Vec<bool> {
        r.iter().map(|r| r.pass).collect()
    }

    #[test]
    fn bell_like_states() {
        for d in 2..6 {
            let s = state_from_code(&diagonal_code(d)).unwrap();
            assert_eq!(s.support_size(), d as usize);
            assert!(s.is_minimal_support());
            for a in s.kets().values() {
                assert!((a.re - 1.0 / (d as f64).sqrt()).abs() < 1e-15);
            }
            let c = verify_uniform_combinatorial(&s).unwrap();
            let r = verify_uniform_dense(&s, DENSE_TOLERANCE).unwrap();
            assert!(all_pass(&c) && all_pass(&r));
            assert!(r.iter().all(|r| r.deviation < 1e-15));
        }
        let bell = state_from_code(&diagonal_code(2)).unwrap();
        assert_eq!(code_from_state(&bell).unwrap(), diagonal_code(2));
    }

    #[test]
    fn reduced_density_examples() {
        let bell = state_from_code(&diagonal_code(2)).unwrap();
        let rho = reduced_density(&bell, &[0]).unwrap();
        assert_eq!(rho.dim(), 2);
        assert!((rho.get(0, 0).re - 0.5).abs() < 1e-15);
        assert!((rho.get(1, 1).re - 0.5).abs() < 1e-15);
        assert_eq!(rho.get(0, 1), Complex64::new(0.0, 0.0));

        let product = uniform(2, 2, &[&[0, 0]]);
        let rho = reduced_density(&product, &[0]).unwrap();
        assert_eq!(rho.get(0, 0).re, 1.0);
        assert_eq!(rho.get(1, 1).re, 0.0);

        let ame43 = state_from_code(&ternary_4_2()).unwrap();
        for b in (0..4).combinations(2) {
            let rho = reduced_density(&ame43, &b).unwrap();
            assert_eq!(rho.dim(), 9);
            assert!((rho.trace().re - 1.0).abs() < 1e-12);
            for r in 0..9 {
                for c in 0..9 {
                    let target = if r == c { 1.0 / 9.0 } else { 0.0 };
                    assert!((rho.get(r, c) - target).norm() <= 1e-12);
                }
            }
        }

        assert!(matches!(reduced_density(&ame43, &[4]), Err(Error::BadSubset(_))));
        assert!(matches!(reduced_density(&ame43, &[1, 0]), Err(Error::BadSubset(_))));
    }

    #[test]
    fn off_diagonal_coherence() {
        // (|00> + |01>)/sqrt2: site 0 is pure, site 1 is |+><+|
        let s = uniform(2, 2, &[&[0, 0], &[0, 1]]);
        let rho = reduced_density(&s, &[1]).unwrap();
        assert!((rho.get(0, 1).re - 0.5).abs() < 1e-15);
        assert!((rho.get(1, 0).re - 0.5).abs() < 1e-15);
        let c = verify_uniform_combinatorial(&s).unwrap();
        let r = verify_uniform_dense(&s, DENSE_TOLERANCE).unwrap();
        assert_eq!(verdicts(&c), vec![false, false]);
        assert!((c[0].deviation - 0.5).abs() < 1e-15);
        assert_eq!(verdicts(&r), verdicts(&c));
        assert!((c[1].deviation - 0.5).abs() < 1e-15);
        assert!((r[1].deviation - 0.5).abs() < 1e-15);
    }

    #[test]
    fn failing_three_site_state() {
        let s = uniform(3, 2, &[&[0, 0, 0], &[1, 1, 0]]);
        let c = verify_uniform_combinatorial(&s).unwrap();
        let r = verify_uniform_dense(&s, DENSE_TOLERANCE).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(verdicts(&c), vec![true, true, false]);
        assert_eq!(verdicts(&r), verdicts(&c));
        assert_eq!(c[2].subset, vec![2]);
        assert_eq!(c[2].deviation, 0.5);
        assert!((r[2].deviation - 0.5).abs() < 1e-15);
    }

    #[test]
    fn ame_4_3() {
        let s = state_from_code(&ternary_4_2()).unwrap();
        assert_eq!(s.support_size(), 9);
        for a in s.kets().values() {
            assert!((a.re - 1.0 / 3.0).abs() < 1e-15);
        }
        let c = verify_uniform_combinatorial(&s).unwrap();
        let r = verify_uniform_dense(&s, DENSE_TOLERANCE).unwrap();
        assert_eq!(c.len(), 4 + 6);
        assert!(all_pass(&c) && all_pass(&r));
        let back = code_from_state(&s).unwrap();
        let v = back.mds_verdict().unwrap();
        assert_eq!((back.len(), v.min_distance), (9, 3));
    }

    #[test]
    fn state_from_code_rejections() {
        let cube = Code::new(2, 2, (0..4).map(|v| Word::new(vec![v & 1, v >> 1]))).unwrap();
        assert!(matches!(state_from_code(&cube), Err(Error::NotAmeRelevantMds(_))));
        let not_mds = Code::new(2, 2, [Word::new(vec![0, 0]), Word::new(vec![0, 1])]).unwrap();
        assert!(matches!(state_from_code(&not_mds), Err(Error::NotAmeRelevantMds(_))));
        // MDS with the right size but the wrong distance: puncturing AME(4,3)
        // leaves 9 words of length 3 where only 3 are allowed.
        let (p, _) = ternary_4_2().puncture(3).unwrap();
        assert!(matches!(state_from_code(&p), Err(Error::NotAmeRelevantMds(_))));
    }

    #[test]
    fn code_from_state_rejections() {
        let a = Complex64::new(0.6, 0.0);
        let b = Complex64::new(0.8, 0.0);
        let skewed = AmeState::new(2, 2, [(Word::new(vec![0, 0]), a), (Word::new(vec![1, 1]), b)]).unwrap();
        assert_eq!(code_from_state(&skewed), Err(Error::NonUniformSupport));
        assert_eq!(verify_uniform_combinatorial(&skewed), Err(Error::NonUniformSupport));
        let product = uniform(2, 2, &[&[0, 0]]);
        assert_eq!(
            code_from_state(&product),
            Err(Error::WrongSupportSize { expected: 2, found: 1 })
        );
    }

    #[test]
    fn state_validation() {
        let half = Complex64::new(0.5, 0.0);
        assert!(matches!(
            AmeState::new(2, 2, [(Word::new(vec![0, 0]), half)]),
            Err(Error::NotNormalized(_))
        ));
        assert!(matches!(
            AmeState::new(2, 2, [(Word::new(vec![0, 2]), Complex64::new(1.0, 0.0))]),
            Err(Error::InvalidSymbol { .. })
        ));
        assert!(AmeState::new(2, 1, []).is_err());
    }

    #[test]
    fn text_round_trip() {
        let s = state_from_code(&ternary_4_2()).unwrap();
        let text = s.to_text();
        assert!(text.starts_with("n=4 d=3\n0 0 0 0 0.3333333333333333 0\n"));
        let back = AmeState::from_text(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.to_text(), text);
        assert!(AmeState::from_text("n=2 d=2\n0 0 1\n").is_err());
        assert!(AmeState::from_text("n=2 d=2\n0 0 1 nan\n").is_err());
        assert!(AmeState::from_text("n=2 d=2\n0 0 0.7 0\n").is_err());
        assert!(AmeState::from_text("garbage").is_err());
    }

    #[test]
    fn reduction_parity_rule() {
        let s = state_from_code(&ternary_4_2()).unwrap();
        let r = reduce_ame(&s).unwrap();
        assert_eq!((r.n(), r.support_size()), (3, 3));
        let r2 = reduce_ame(&r).unwrap();
        assert_eq!((r2.n(), r2.support_size()), (2, 3));
        assert!(matches!(reduce_ame(&r2), Err(Error::InvalidParams(_))));

        let bad = uniform(3, 2, &[&[0, 0, 0], &[1, 1, 0]]);
        assert!(matches!(reduce_ame(&bad), Err(Error::VerificationFailed(_))));
    }

    #[test]
    fn bipartition_order() {
        let b = bipartitions(4);
        assert_eq!(b[0], vec![0]);
        assert_eq!(b[4], vec![0, 1]);
        assert_eq!(b.len(), 10);
        assert_eq!(bipartitions(7).len(), 63);
        assert_eq!(bipartitions(6).len(), 41);
    }
}
