//! Generator files.
//!
//! ```text
//! # comment
//! degree 3
//! signs=100 perm=1 2 3
//! signs=000 perm=2 3 1
//! ```
//!
//! The first non-blank, non-comment line is `degree N`. Each further line is
//! one generator: `signs=` followed by exactly N characters `0`/`1` (position
//! 1 first), then `perm=` followed by the N images of `1..N`. `#` starts a
//! comment anywhere on a line.

use std::path::Path;

use super::{Bits, Perm, SignedPerm, MAX_DEGREE};
use crate::error::{Error, Result};

pub fn parse_generator_file(path: &Path) -> Result<(usize, Vec<SignedPerm>)> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_generators(&text)
}

pub fn parse_generators(text: &str) -> Result<(usize, Vec<SignedPerm>)> {
    let mut degree = None;
    let mut gens = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        match degree {
            None => {
                let rest = line
                    .strip_prefix("degree")
                    .ok_or_else(|| err("expected `degree N`".into()))?;
                let n: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| err(format!("bad degree `{}`", rest.trim())))?;
                if n == 0 {
                    return Err(err("degree must be positive".into()));
                }
                if n > MAX_DEGREE {
                    return Err(Error::resource("degree", MAX_DEGREE, n));
                }
                degree = Some(n);
            }
            Some(n) => gens.push(parse_generator_line(line, n).map_err(err)?),
        }
    }
    let n = degree.ok_or(Error::Parse {
        line: text.lines().count().max(1),
        message: "missing `degree N` line".into(),
    })?;
    Ok((n, gens))
}

fn parse_generator_line(line: &str, n: usize) -> std::result::Result<SignedPerm, String> {
    let rest = line
        .strip_prefix("signs=")
        .ok_or("expected `signs=<bits> perm=<images>`")?;
    let (signs, rest) = rest.split_once(char::is_whitespace).ok_or("missing `perm=`")?;
    let perm = rest.trim_start().strip_prefix("perm=").ok_or("missing `perm=`")?;
    if signs.len() != n {
        return Err(format!("expected {n} sign bits, found {}", signs.len()));
    }
    let bits = Bits::parse(signs).ok_or_else(|| format!("bad sign bits `{signs}`"))?;
    let images: Vec<usize> = perm
        .split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| format!("bad image `{t}`")))
        .collect::<std::result::Result<_, _>>()?;
    if images.len() != n {
        return Err(format!("expected {n} images, found {}", images.len()));
    }
    let p = Perm::from_one_line(&images).map_err(|e| e.to_string())?;
    SignedPerm::new(bits, p).map_err(|e| e.to_string())
}

/// Inverse of [`parse_generators`].
pub fn write_generators(degree: usize, gens: &[SignedPerm]) -> String {
    let mut out = format!("degree {degree}\n");
    for g in gens {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}
