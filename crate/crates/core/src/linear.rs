//! Linear codes over GF(q) given by a full-rank generator matrix.

use std::collections::HashSet;

use itertools::Itertools;
use rayon::prelude::*;

use crate::code::{checked_pow, Code, Word};
use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::text;

/// Largest `k` or `n` accepted for a generator matrix.
pub const MAX_DIM: usize = 64;
/// Largest number of codewords `q^k` that will be enumerated.
pub const ENUMERATION_LIMIT: u128 = 10_000_000;

pub type Matrix = Vec<Vec<u32>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    field: FiniteField,
    gen: Matrix,
}

impl LinearCode {
    pub fn new(field: FiniteField, gen: Matrix) -> Result<Self> {
        let k = gen.len();
        let n = gen.first().map_or(0, Vec::len);
        if k == 0 || n == 0 || k > n || n > MAX_DIM {
            return Err(Error::DimensionOutOfRange { k, n });
        }
        if let Some(row) = gen.iter().find(|r| r.len() != n) {
            return Err(Error::LengthMismatch {
                expected: n,
                found: row.len(),
            });
        }
        if let Some(&v) = gen.iter().flatten().find(|&&v| v >= field.order()) {
            return Err(Error::ValueOutOfRange {
                value: v as u64,
                order: field.order(),
            });
        }
        let rank = rank(&field, &gen);
        if rank != k {
            return Err(Error::RankDeficient { rank, expected: k });
        }
        Ok(LinearCode { field, gen })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    pub fn k(&self) -> usize {
        self.gen.len()
    }

    pub fn n(&self) -> usize {
        self.gen[0].len()
    }

    fn encode(&self, message: &[u32]) -> Vec<u32> {
        let f = &self.field;
        let mut out = vec![0; self.n()];
        for (row, &m) in self.gen.iter().zip(message) {
            if m == 0 {
                continue;
            }
            for (o, &g) in out.iter_mut().zip(row) {
                *o = f.add(*o, f.mul(m, g));
            }
        }
        out
    }

    fn messages(&self) -> Result<impl Iterator<Item = Vec<u32>> + '_> {
        let q = self.field.order();
        let count = checked_pow(q as u64, self.k()).filter(|&c| c <= ENUMERATION_LIMIT);
        let count = count.ok_or_else(|| {
            Error::BudgetExceeded(format!(
                "{}^{} codewords exceed the enumeration limit {ENUMERATION_LIMIT}",
                q,
                self.k()
            ))
        })?;
        let k = self.k();
        Ok((0..count as u64).map(move |mut v| {
            let mut m = vec![0; k];
            for slot in m.iter_mut().rev() {
                *slot = (v % q as u64) as u32;
                v /= q as u64;
            }
            m
        }))
    }

    /// All `q^k` codewords as a general [`Code`].
    pub fn codewords(&self) -> Result<Code> {
        let words: Vec<Word> = self.messages()?.map(|m| Word::new(self.encode(&m))).collect();
        Code::new(self.n(), self.field.order(), words)
    }

    /// [`LinearCode::codewords`] with the minimum distance taken from the
    /// minimum weight instead of pairwise comparison; the two agree for
    /// linear codes.
    pub fn to_code(&self) -> Result<Code> {
        let weight = self.min_weight()?;
        let code = self.codewords()?;
        Ok(if code.len() > 1 { code.with_min_distance(weight) } else { code })
    }

    /// Minimum nonzero weight, computed by enumerating all codewords.
    pub fn min_weight(&self) -> Result<usize> {
        let weight = self
            .messages()?
            .skip(1)
            .map(|m| self.encode(&m).iter().filter(|&&s| s != 0).count())
            .min();
        Ok(weight.unwrap_or(0))
    }

    /// MDS test: every set of `k` columns of the generator is nonsingular.
    pub fn is_mds(&self) -> bool {
        let (k, n) = (self.k(), self.n());
        let column_sets: Vec<Vec<usize>> = (0..n).combinations(k).collect();
        column_sets.par_iter().all(|cols| {
            let sub: Matrix = self
                .gen
                .iter()
                .map(|row| cols.iter().map(|&c| row[c]).collect())
                .collect();
            rank(&self.field, &sub) == k
        })
    }

    /// Reduced row echelon form: identity on the first `k` independent
    /// columns. Generates the same code.
    pub fn systematize(&self) -> LinearCode {
        let mut gen = self.gen.clone();
        rref(&self.field, &mut gen);
        LinearCode {
            field: self.field.clone(),
            gen,
        }
    }

    /// Positions of the leading ones of the reduced row echelon form.
    pub fn information_set(&self) -> Vec<usize> {
        let mut gen = self.gen.clone();
        rref(&self.field, &mut gen)
    }

    /// The block `P` when the generator has the form `[I_k | P]`.
    pub fn parity_block(&self) -> Option<Matrix> {
        let k = self.k();
        let systematic = self
            .gen
            .iter()
            .enumerate()
            .all(|(i, row)| (0..k).all(|j| row[j] == u32::from(i == j)));
        systematic.then(|| self.gen.iter().map(|row| row[k..].to_vec()).collect())
    }

    /// Deletes coordinate `i`, keeping dimension `k`.
    pub fn puncture(&self, i: usize) -> Result<LinearCode> {
        if i >= self.n() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.n(),
            });
        }
        let gen = self
            .gen
            .iter()
            .map(|row| {
                let mut r = row.clone();
                r.remove(i);
                r
            })
            .collect();
        LinearCode::new(self.field.clone(), gen)
    }

    /// `[I_k | P]` for a parity block `P`.
    pub fn from_parity_block(field: FiniteField, parity: &Matrix) -> Result<LinearCode> {
        let k = parity.len();
        let gen = parity
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let mut row: Vec<u32> = (0..k).map(|j| u32::from(i == j)).collect();
                row.extend_from_slice(p);
                row
            })
            .collect();
        LinearCode::new(field, gen)
    }

    /// Text form: `q=<q> k=<k> n=<n>` then `k` rows of encodings.
    pub fn to_text(&self) -> String {
        let mut out = format!("q={} k={} n={}\n", self.field.order(), self.k(), self.n());
        for row in &self.gen {
            out.push_str(&row.iter().join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(input: &str) -> Result<Self> {
        let mut lines = input.lines().enumerate();
        let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
        let [q, k, n] = text::header(header, ["q", "k", "n"], 1)?;
        let field = FiniteField::new(q)?;
        let mut gen = Vec::new();
        for (idx, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let row = text::symbols(line, idx + 1)?;
            if row.len() as u64 != n {
                return Err(Error::parse(idx + 1, format!("expected {n} entries")));
            }
            gen.push(row);
        }
        if gen.len() as u64 != k {
            return Err(Error::parse(1, format!("expected {k} rows, found {}", gen.len())));
        }
        LinearCode::new(field, gen)
    }
}

/// Row-reduces `m` in place and returns the pivot columns.
pub fn rref(f: &FiniteField, m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        let inv = f.inv(m[r][c]).expect("pivot is nonzero");
        for v in m[r].iter_mut() {
            *v = f.mul(*v, inv);
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let factor = row[c];
                for (v, &p) in row.iter_mut().zip(&pivot) {
                    *v = f.sub(*v, f.mul(factor, p));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(f: &FiniteField, m: &Matrix) -> usize {
    let mut m = m.clone();
    rref(f, &mut m).len()
}

/// Generalized Reed–Solomon code: row `r` is `(v_i * alpha_i^r)_i` for
/// `r = 0..k`.
pub fn grs_code(field: &FiniteField, alphas: &[u32], multipliers: &[u32], k: usize) -> Result<LinearCode> {
    let n = alphas.len();
    if multipliers.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: multipliers.len(),
        });
    }
    if k == 0 || k > n || n > MAX_DIM {
        return Err(Error::DimensionOutOfRange { k, n });
    }
    let q = field.order();
    let mut seen = HashSet::new();
    for &a in alphas {
        if a >= q {
            return Err(Error::ValueOutOfRange {
                value: a as u64,
                order: q,
            });
        }
        if !seen.insert(a) {
            return Err(Error::DuplicateEvaluationPoint(a));
        }
    }
    for (i, &v) in multipliers.iter().enumerate() {
        if v >= q {
            return Err(Error::ValueOutOfRange {
                value: v as u64,
                order: q,
            });
        }
        if v == 0 {
            return Err(Error::ZeroMultiplier(i));
        }
    }
    let gen = (0..k)
        .map(|r| {
            alphas
                .iter()
                .zip(multipliers)
                .map(|(&a, &v)| field.mul(v, field.pow(a, r as u64)))
                .collect()
        })
        .collect();
    LinearCode::new(field.clone(), gen)
}

/// Doubly extended Reed–Solomon code of length `q + 1`: evaluations of all
/// polynomials of degree `< k` at every field element, plus the coefficient
/// of `x^(k-1)`.
pub fn extended_grs(field: &FiniteField, k: usize) -> Result<LinearCode> {
    let q = field.order() as usize;
    if k == 0 || k > q {
        return Err(Error::DimensionOutOfRange { k, n: q + 1 });
    }
    extended_grs_truncated(field, q + 1, k)
}

/// [`extended_grs`] with the trailing evaluation points dropped so that the
/// length is `n`: points `0..n-1` in encoding order, then the extra
/// coordinate.
pub fn extended_grs_truncated(field: &FiniteField, n: usize, k: usize) -> Result<LinearCode> {
    let q = field.order() as usize;
    if n < 2 || n > q + 1 || k == 0 || k > n {
        return Err(Error::DimensionOutOfRange { k, n });
    }
    let alphas: Vec<u32> = (0..(n - 1) as u32).collect();
    let ones = vec![1; n - 1];
    let base = grs_code(field, &alphas, &ones, k.min(n - 1))?;
    let mut gen = base.gen;
    if k == n {
        // all points used and one row short: the extension column completes
        // the square Vandermonde-like matrix.
        gen.push(alphas.iter().map(|&a| field.pow(a, (k - 1) as u64)).collect());
    }
    for (r, row) in gen.iter_mut().enumerate() {
        row.push(u32::from(r == k - 1));
    }
    LinearCode::new(field.clone(), gen)
}
