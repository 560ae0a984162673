//! Ideals as generator lists, and the text file format.

use super::parse::{parse_polynomial, Ring};
use super::poly::Polynomial;
use crate::error::{Error, Result};
use crate::groebner::MonomialOrder;
use sha2::{Digest, Sha256};
use std::fmt;

/// Ideal in `Q[x0..x(n-1)]`, never storing the zero polynomial.
#[derive(Clone, PartialEq, Eq)]
pub struct Ideal {
    nvars: usize,
    gens: Vec<Polynomial>,
}

impl Ideal {
    /// Drops zero generators; fails if a generator lives in another ring.
    pub fn new(nvars: usize, gens: Vec<Polynomial>) -> Result<Self> {
        for g in &gens {
            if g.nvars() != nvars {
                return Err(Error::RingMismatch { expected: nvars, found: g.nvars() });
            }
        }
        Ok(Ideal { nvars, gens: gens.into_iter().filter(|g| !g.is_zero()).collect() })
    }

    pub fn zero(nvars: usize) -> Self {
        Ideal { nvars, gens: vec![] }
    }

    pub fn unit(nvars: usize) -> Self {
        Ideal { nvars, gens: vec![Polynomial::one(nvars)] }
    }

    pub fn principal(f: Polynomial) -> Self {
        let n = f.nvars();
        Ideal::new(n, vec![f]).unwrap()
    }

    /// Parses generators in `x0..xN` with `N + 1 = nvars`.
    pub fn parse(nvars: usize, lines: &[&str]) -> Result<Self> {
        let ring = Ring { nvars, prefix: "x".into() };
        let gens = lines
            .iter()
            .map(|l| parse_polynomial(l, &ring))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(nvars, gens)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(Polynomial::is_homogeneous)
    }

    pub fn max_degree(&self) -> u64 {
        self.gens.iter().filter_map(Polynomial::total_degree).max().unwrap_or(0)
    }

    /// `I + (f_1, ..., f_k)`.
    pub fn with(&self, extra: impl IntoIterator<Item = Polynomial>) -> Result<Ideal> {
        let mut gens = self.gens.clone();
        gens.extend(extra);
        Ideal::new(self.nvars, gens)
    }

    /// Embeds into a ring with `nvars` variables, sending variable `i` to `map[i]`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Ideal {
        Ideal {
            nvars,
            gens: self.gens.iter().map(|g| g.remap(nvars, map)).collect(),
        }
    }

    /// Stable content hash of the generator list.
    pub fn hash_hex(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!("ring {}\n", self.nvars));
        for g in &self.gens {
            h.update(g.fmt_with(&|i| format!("x{i}")));
            h.update("\n");
        }
        hex::encode(h.finalize())
    }

    /// Hash of the pair (ideal, order), used as a cache key.
    pub fn cache_key(&self, order: &MonomialOrder) -> String {
        let mut h = Sha256::new();
        h.update(self.hash_hex());
        h.update(order.tag());
        hex::encode(h.finalize())
    }

    /// Ideal file text: `ring N` then one generator per line.
    pub fn to_file_string(&self, comments: &[String]) -> String {
        let mut s = String::new();
        for c in comments {
            s.push_str("# ");
            s.push_str(c);
            s.push('\n');
        }
        s.push_str(&format!("ring {}\n", self.nvars.saturating_sub(1)));
        for g in &self.gens {
            s.push_str(&g.fmt_with(&|i| format!("x{i}")));
            s.push('\n');
        }
        s
    }

    /// Parses the ideal file format.  Lines starting with `#` and blank
    /// lines are skipped; the first remaining line must be `ring N`.
    pub fn from_file_string(text: &str) -> Result<Ideal> {
        let mut lines = content_lines(text);
        let (lineno, header) = lines
            .next()
            .ok_or_else(|| Error::Syntax { pos: 0, msg: "missing 'ring N' header".into() })?;
        let n = parse_header(header, "ring", lineno)?;
        let ring = Ring::projective(n);
        let mut gens = Vec::new();
        for (lineno, l) in lines {
            let f = parse_polynomial(l, &ring).map_err(|e| at_line(e, lineno))?;
            if f.is_zero() {
                return Err(Error::ZeroGenerator);
            }
            gens.push(f);
        }
        Ideal::new(n + 1, gens)
    }

    pub fn read(path: &std::path::Path) -> Result<Ideal> {
        Ideal::from_file_string(&std::fs::read_to_string(path)?)
    }
}

pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub(crate) fn parse_header(line: &str, keyword: &str, lineno: usize) -> Result<usize> {
    let mut it = line.split_whitespace();
    match (it.next(), it.next().and_then(|n| n.parse().ok()), it.next()) {
        (Some(k), Some(n), None) if k == keyword => Ok(n),
        _ => Err(Error::Syntax {
            pos: 0,
            msg: format!("line {lineno}: expected '{keyword} <n>'"),
        }),
    }
}

pub(crate) fn at_line(e: Error, lineno: usize) -> Error {
    match e {
        Error::Syntax { pos, msg } => Error::Syntax { pos, msg: format!("line {lineno}: {msg}") },
        other => other,
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", g.join(", "))
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
