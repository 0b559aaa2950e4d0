//! Permutations of `{1..n}`: composition, cycle decomposition, cycle types,
//! and disjoint-cycle notation parsing/formatting.
//!
//! Points are 1-based everywhere in the public API, matching the usual
//! mathematical notation `(1 2 3)(4 5)`.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("invalid image sequence of length {degree}: {reason}")]
    NotABijection { degree: usize, reason: String },
}

/// Error produced by [`Permutation::parse_cycles`], with the byte offset of
/// the offending token.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

/// A bijection of `{1..n}`, stored as the image sequence `images[i-1] = g(i)`.
///
/// Ordering is lexicographic on the image sequence, which puts the identity
/// first among all permutations of a given degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (1..=degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image sequence (`images[i-1]` is the
    /// image of point `i`). Rejects anything that is not a bijection of
    /// `{1..n}`.
    pub fn from_images(images: Vec<u32>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v as usize > n {
                return Err(PermError::NotABijection {
                    degree: n,
                    reason: format!("value {v} out of range 1..={n}"),
                });
            }
            if seen[(v - 1) as usize] {
                return Err(PermError::NotABijection {
                    degree: n,
                    reason: format!("value {v} appears more than once"),
                });
            }
            seen[(v - 1) as usize] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `i`.
    pub fn apply(&self, i: u32) -> u32 {
        self.images[(i - 1) as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i as u32 + 1)
    }

    /// Composition `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        let images = other
            .images
            .iter()
            .map(|&v| self.images[(v - 1) as usize])
            .collect();
        Permutation { images }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            images[(v - 1) as usize] = i as u32 + 1;
        }
        Permutation { images }
    }

    /// `self` composed with itself `k` times; `pow(0)` is the identity.
    pub fn pow(&self, k: u64) -> Permutation {
        let mut acc = Permutation::identity(self.degree());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose_unchecked(&base);
            }
            base = base.compose_unchecked(&base);
            k >>= 1;
        }
        acc
    }

    /// Disjoint cycles covering all of `{1..n}`, fixed points included as
    /// singletons. Each cycle starts at its smallest point; cycles are ordered
    /// by that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 1..=n as u32 {
            if seen[(start - 1) as usize] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            loop {
                seen[(p - 1) as usize] = true;
                cycle.push(p);
                p = self.apply(p);
                if p == start {
                    break;
                }
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Order of the permutation: the lcm of its cycle lengths. Exact even
    /// when the lcm overflows machine integers.
    pub fn order(&self) -> BigUint {
        self.cycles()
            .iter()
            .fold(BigUint::one(), |acc, c| acc.lcm(&BigUint::from(c.len())))
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut lengths: Vec<u32> = self.cycles().iter().map(|c| c.len() as u32).collect();
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        CycleType {
            lengths,
            degree: self.degree() as u32,
        }
    }

    /// Whether the cycle type, ignoring fixed points, is exactly `[2]`, `[3]`
    /// or `[2,2]` — i.e. the element is conjugate in the full symmetric group
    /// to `(1 2)`, `(1 2 3)` or `(1 2)(3 4)`.
    pub fn is_forbidden_type(&self) -> bool {
        self.cycle_type().is_forbidden()
    }

    /// Parses whitespace-tolerant disjoint cycle notation, e.g. `"(1 2 3)(4 5)"`.
    /// `"()"` and `"id"` denote the identity. Points must lie in `1..=degree`
    /// and may appear at most once across all cycles.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation, ParseError> {
        parse_cycles_impl(text, degree)
    }

    /// Formats the nontrivial cycles, smallest point first in each cycle.
    /// The identity formats as `"()"`.
    pub fn format_cycles(&self) -> String {
        let mut out = String::new();
        for cycle in self.cycles() {
            if cycle.len() < 2 {
                continue;
            }
            out.push('(');
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                out.push_str(&p.to_string());
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_cycles())
    }
}

/// Multiset of cycle lengths (fixed points included), sorted descending so
/// that the lengths always sum to the degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    lengths: Vec<u32>,
    degree: u32,
}

impl CycleType {
    pub fn lengths(&self) -> &[u32] {
        &self.lengths
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Cycle lengths `> 1`, i.e. the type with fixed points dropped.
    pub fn nontrivial_lengths(&self) -> Vec<u32> {
        self.lengths.iter().copied().filter(|&l| l > 1).collect()
    }

    pub fn is_forbidden(&self) -> bool {
        matches!(self.nontrivial_lengths().as_slice(), [2] | [3] | [2, 2])
    }

    /// lcm of the cycle lengths: the order of any element of this type.
    pub fn element_order(&self) -> BigUint {
        self.lengths
            .iter()
            .fold(BigUint::one(), |acc, &l| acc.lcm(&BigUint::from(l)))
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, l) in self.lengths.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "]")
    }
}

fn parse_cycles_impl(text: &str, degree: usize) -> Result<Permutation, ParseError> {
    let err = |position: usize, message: &str| ParseError {
        position,
        message: message.to_string(),
    };

    let bytes = text.as_bytes();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };

    skip_ws(&mut pos);
    if pos == bytes.len() {
        return Err(err(pos, "empty input; expected cycles, \"()\" or \"id\""));
    }

    if text[pos..].starts_with("id") {
        pos += 2;
        skip_ws(&mut pos);
        if pos != bytes.len() {
            return Err(err(pos, "unexpected input after \"id\""));
        }
        return Ok(Permutation::identity(degree));
    }

    let mut images: Vec<u32> = (1..=degree as u32).collect();
    let mut used = vec![false; degree];

    while pos < bytes.len() {
        if bytes[pos] != b'(' {
            return Err(err(pos, "expected '('"));
        }
        pos += 1;
        let mut cycle: Vec<u32> = Vec::new();
        loop {
            skip_ws(&mut pos);
            if pos == bytes.len() {
                return Err(err(pos, "unclosed cycle: expected ')'"));
            }
            if bytes[pos] == b')' {
                pos += 1;
                break;
            }
            if !bytes[pos].is_ascii_digit() {
                return Err(err(pos, "expected a point or ')'"));
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let point: u64 = text[start..pos]
                .parse()
                .map_err(|_| err(start, "point does not fit in an integer"))?;
            if point == 0 || point > degree as u64 {
                return Err(ParseError {
                    position: start,
                    message: format!("point {point} out of range 1..={degree}"),
                });
            }
            let point = point as u32;
            if used[(point - 1) as usize] {
                return Err(ParseError {
                    position: start,
                    message: format!("point {point} appears more than once"),
                });
            }
            used[(point - 1) as usize] = true;
            cycle.push(point);
        }
        for (i, &p) in cycle.iter().enumerate() {
            let next = cycle[(i + 1) % cycle.len()];
            images[(p - 1) as usize] = next;
        }
        skip_ws(&mut pos);
    }

    Ok(Permutation { images })
}
