//! Existence gates and bounds on `N(d)`, the largest number of sites `n`
//! for which a minimal-support AME(n, d) state exists.
//!
//! Existence is downward closed in `n` (see [`crate::ame::reduce_ame`]), so
//! `N(d)` determines the whole picture for a given `d`.

use serde::Serialize;

use crate::field::is_prime_power;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GateVerdict {
    pub allowed: bool,
    pub explanation: String,
}

/// The necessary condition `d >= ceil(n/2) + 1` for `n >= 4`.
pub fn necessary_condition(n: usize, d: usize) -> GateVerdict {
    let needed = n.div_ceil(2) + 1;
    if n < 4 {
        return GateVerdict {
            allowed: true,
            explanation: format!("n={n} < 4: the necessary condition d >= ceil(n/2)+1 does not apply"),
        };
    }
    if d >= needed {
        GateVerdict {
            allowed: true,
            explanation: format!(
                "necessary condition satisfied: d={d} >= ceil({n}/2)+1 = {needed}"
            ),
        }
    } else {
        GateVerdict {
            allowed: false,
            explanation: format!(
                "excluded by the necessary condition for minimal support: \
                 n={n} >= 4 requires d >= ceil(n/2)+1 = {needed}, but d={d}"
            ),
        }
    }
}

/// Known exact values of `N(d)` that do not follow from the generic bounds.
pub(crate) fn known_exact(d: usize) -> Option<(usize, &'static str)> {
    match d {
        5 => Some((
            6,
            "no linear MDS [7,3] code over GF(5) (exhaustive systematic search) \
             plus the nonlinear-to-linear equivalence of MDS codes over a 5-symbol alphabet",
        )),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub d: usize,
    pub lower: usize,
    pub upper: usize,
    pub exact: Option<usize>,
    pub note: String,
}

/// One row per `d` in `3..=d_max`.
///
/// - lower: `d + 1` for prime powers (extended Reed–Solomon codes), otherwise
///   2 (the generalized Bell state always exists).
/// - upper: `2d - 2`. The necessary condition gives `N(d) <= 2d - 2` for even
///   `N(d)` and `<= 2d - 3` for odd; the larger of the two is even, so `2d - 2`
///   is the best parity-consistent value.
/// - exact: recorded values, or the common value when the bounds meet.
pub fn bounds_table(d_max: usize) -> Vec<Bounds> {
    (3..=d_max)
        .map(|d| {
            let prime_power = is_prime_power(d as u64);
            let lower = if prime_power { d + 1 } else { 2 };
            let upper = 2 * d - 2;
            let mut notes = vec![if prime_power {
                format!("lower: extended Reed-Solomon MDS codes over GF({d})")
            } else {
                "lower: generalized Bell state only; no constructive bound for non-prime-power d"
                    .to_string()
            }];
            let exact = if let Some((value, provenance)) = known_exact(d) {
                notes.push(format!("exact: {provenance}"));
                Some(value)
            } else if lower == upper {
                notes.push("exact: lower and upper bounds coincide".to_string());
                Some(lower)
            } else {
                None
            };
            Bounds {
                d,
                lower,
                upper,
                exact,
                note: notes.join("; "),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gate_examples() {
        let v = necessary_condition(6, 2);
        assert!(!v.allowed);
        assert!(v.explanation.contains("necessary condition"));
        assert!(necessary_condition(7, 5).allowed);
        assert!(necessary_condition(4, 3).allowed);
        assert!(!necessary_condition(5, 3).allowed);
        assert!(necessary_condition(3, 2).allowed);
        assert!(necessary_condition(2, 2).allowed);
    }

    #[test]
    fn table_rows() {
        let t = bounds_table(9);
        assert_eq!(t.len(), 7);
        let row = |d: usize| t.iter().find(|r| r.d == d).unwrap().clone();

        let r5 = row(5);
        assert_eq!((r5.lower, r5.upper, r5.exact), (6, 8, Some(6)));

        // d=3: GF(3) gives AME(4,3); the gate rules out n=5 since 3 < 4.
        let r3 = row(3);
        assert_eq!((r3.lower, r3.upper, r3.exact), (4, 4, Some(4)));
        assert!(!necessary_condition(5, 3).allowed);

        let r7 = row(7);
        assert_eq!((r7.lower, r7.upper, r7.exact), (8, 12, None));
        assert_eq!(row(9).lower, 10);
        assert_eq!((row(6).lower, row(6).upper), (2, 10));

        for r in &t {
            assert!(r.lower <= r.upper);
            if let Some(e) = r.exact {
                assert!(r.lower <= e && e <= r.upper);
            }
        }
        assert!(bounds_table(2).is_empty());
    }
}
