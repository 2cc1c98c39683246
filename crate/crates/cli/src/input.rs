//! Loading arrangements and parsing fiber and prime lists.

use std::fs;
use std::path::Path;

use logchern::arrangement::{ArrangementSpec, ExtensionChoice};
use logchern::library::builtin;
use logchern::number::is_prime;

use crate::error::{CliError, CliResult};

/// Reads `builtin:<name>` or a JSON file.
pub fn load_spec(input: &str) -> CliResult<ArrangementSpec> {
    if let Some(name) = input.strip_prefix("builtin:") {
        return Ok(builtin(name)?);
    }
    let text = fs::read_to_string(Path::new(input)).map_err(|source| CliError::Io {
        path: input.to_string(),
        source,
    })?;
    parse_spec(input, &text)
}

/// Parses JSON text; syntax and shape errors carry the offending line.
pub fn parse_spec(origin: &str, text: &str) -> CliResult<ArrangementSpec> {
    let spec: ArrangementSpec = serde_json::from_str(text).map_err(|e| {
        let line = e.line();
        let snippet = text
            .lines()
            .nth(line.saturating_sub(1))
            .unwrap_or_default()
            .trim_end()
            .to_string();
        CliError::Parse {
            origin: origin.to_string(),
            line,
            column: e.column(),
            message: e.to_string(),
            snippet,
        }
    })?;
    spec.ensure_valid()?;
    Ok(spec)
}

/// Parses a removal set such as `1-8`, `3,4,9` or `9-12,15`. An empty
/// string, `none` or `ext` is the extended arrangement.
pub fn parse_xi(text: &str) -> CliResult<ExtensionChoice> {
    let text = text.trim();
    if text.is_empty() || text == "none" || text == "ext" || text == "{}" {
        return Ok(ExtensionChoice::extended());
    }
    let inner = text.trim_start_matches('{').trim_end_matches('}');
    let mut fibers = Vec::new();
    for part in inner.split(',') {
        let part = part.trim().trim_start_matches(['F', 'f']);
        let bad = || CliError::Usage(format!("cannot read fiber set `{text}`"));
        if let Some((a, b)) = part.split_once('-').or_else(|| part.split_once("..")) {
            let a: usize = a.trim().parse().map_err(|_| bad())?;
            let b: usize = b.trim().trim_start_matches(['F', 'f', '.']).parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            fibers.extend(a..=b);
        } else {
            fibers.push(part.parse().map_err(|_| bad())?);
        }
    }
    Ok(ExtensionChoice::removing(fibers))
}

/// Parses `lo-hi` or a comma list and keeps the primes, in order.
pub fn parse_primes(text: &str) -> CliResult<Vec<u64>> {
    let text = text.trim();
    let bad = || CliError::Usage(format!("cannot read prime list `{text}`"));
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((a, b)) = part.split_once('-').or_else(|| part.split_once("..")) {
            let a: u64 = a.trim().parse().map_err(|_| bad())?;
            let b: u64 = b.trim().trim_start_matches('.').parse().map_err(|_| bad())?;
            out.extend(logchern::number::primes_in(a, b));
        } else {
            let p: u64 = part.parse().map_err(|_| bad())?;
            if is_prime(p) {
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// `count` primes spread evenly over `primes`, endpoints included.
pub fn spread(primes: &[u64], count: usize) -> Vec<u64> {
    if count == 0 || count >= primes.len() {
        return primes.to_vec();
    }
    if count == 1 {
        return vec![primes[0]];
    }
    let last = primes.len() - 1;
    let mut out: Vec<u64> = (0..count)
        .map(|i| primes[i * last / (count - 1)])
        .collect();
    out.dedup();
    out
}
