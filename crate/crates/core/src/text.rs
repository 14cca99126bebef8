//! Shared helpers for the line-oriented text formats.

use crate::error::{Error, Result};

/// Parses a header such as `n=4 d=3` with exactly the given keys, in order.
pub(crate) fn header<const N: usize>(line: &str, keys: [&str; N], lineno: usize) -> Result<[u64; N]> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    if tokens.len() != N {
        return Err(Error::parse(
            lineno,
            format!("expected header `{}`", keys.map(|k| format!("{k}=<int>")).join(" ")),
        ));
    }
    let mut out = [0u64; N];
    for ((slot, token), key) in out.iter_mut().zip(&tokens).zip(keys) {
        let value = token
            .strip_prefix(key)
            .and_then(|rest| rest.strip_prefix('='))
            .ok_or_else(|| Error::parse(lineno, format!("expected `{key}=<int>`, found `{token}`")))?;
        *slot = value
            .parse()
            .map_err(|_| Error::parse(lineno, format!("bad integer in `{token}`")))?;
    }
    Ok(out)
}

pub(crate) fn symbols(line: &str, lineno: usize) -> Result<Vec<u32>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<u32>()
                .map_err(|_| Error::parse(lineno, format!("bad symbol `{t}`")))
        })
        .collect()
}
