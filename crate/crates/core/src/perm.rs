//! Permutations of `0..degree` and their cycle notation.
//!
//! Permutations act on the right: `i^(xy) = (i^x)^y`, so `x.mul(&y)` applies
//! `x` first. Text I/O uses 1-based points, e.g. `(1,2,3)(4,5)`; the identity
//! prints as `()`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image vector, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::InvalidPermutation("degree must be positive".into()));
        }
        let mut seen = vec![false; images.len()];
        for &im in &images {
            let im = im as usize;
            if im >= images.len() {
                return Err(Error::InvalidPermutation(format!(
                    "image {} out of range for degree {}",
                    im + 1,
                    images.len()
                )));
            }
            if seen[im] {
                return Err(Error::InvalidPermutation(format!(
                    "image {} occurs twice",
                    im + 1
                )));
            }
            seen[im] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation from 0-based disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidPermutation("degree must be positive".into()));
        }
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for &pt in cycle {
                if pt as usize >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} exceeds degree {}",
                        pt + 1,
                        degree
                    )));
                }
                if used[pt as usize] {
                    return Err(Error::InvalidPermutation(format!(
                        "repeated point in cycle: {}",
                        pt + 1
                    )));
                }
                used[pt as usize] = true;
            }
            for (k, &pt) in cycle.iter().enumerate() {
                images[pt as usize] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Parses 1-based cycle notation such as `(1,2,3)(4,5)` or `(1 2 3)`.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let cycles = parse_cycles(text).map_err(|(col, msg)| Error::InvalidPermutation(
            format!("{msg} at column {}", col + 1),
        ))?;
        Permutation::from_cycles(degree, &cycles)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `self` then `other`.
    pub fn mul(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            inv[im as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `other^-1 * self * other`.
    pub fn conjugate_by(&self, other: &Permutation) -> Permutation {
        let mut out = vec![0u32; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            out[other.images[i] as usize] = other.images[im as usize];
        }
        Permutation { images: out }
    }

    /// `self^-1 other^-1 self other`.
    pub fn commutator(&self, other: &Permutation) -> Permutation {
        self.inverse()
            .mul(&other.inverse())
            .mul(self)
            .mul(other)
    }

    pub fn pow(&self, mut exp: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| i as u32 == im)
    }

    pub fn first_moved_point(&self) -> Option<u32> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &im)| *i as u32 != im)
            .map(|(i, _)| i as u32)
    }

    /// Disjoint cycles of length at least two, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = vec![start as u32];
            seen[start] = true;
            let mut cur = self.images[start];
            while cur as usize != start {
                seen[cur as usize] = true;
                cycle.push(cur);
                cur = self.images[cur as usize];
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| crate::arith::lcm(acc, c.len() as u64))
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().filter(|c| c.len() % 2 == 0).count() % 2 == 0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, pt) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", pt + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

/// Parses cycle notation into 0-based cycles. Errors carry a 0-based column.
pub(crate) fn parse_cycles(text: &str) -> std::result::Result<Vec<Vec<u32>>, (usize, String)> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut cycles = Vec::new();
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && (bytes[*pos] as char).is_whitespace() {
            *pos += 1;
        }
    };
    skip_ws(&mut pos);
    if pos == bytes.len() {
        return Err((pos, "expected '('".into()));
    }
    while pos < bytes.len() {
        if bytes[pos] != b'(' {
            return Err((pos, "expected '('".into()));
        }
        pos += 1;
        let mut cycle: Vec<u32> = Vec::new();
        loop {
            skip_ws(&mut pos);
            if pos >= bytes.len() {
                return Err((pos, "expected point or ')'".into()));
            }
            match bytes[pos] {
                b')' => {
                    pos += 1;
                    break;
                }
                b',' if !cycle.is_empty() => {
                    pos += 1;
                    skip_ws(&mut pos);
                    if pos >= bytes.len() || !bytes[pos].is_ascii_digit() {
                        return Err((pos, "expected point".into()));
                    }
                }
                b'0'..=b'9' => {
                    let start = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    let value: u64 = text[start..pos]
                        .parse()
                        .map_err(|_| (start, "point too large".to_string()))?;
                    if value == 0 || value > u32::MAX as u64 {
                        return Err((start, "points are numbered from 1".into()));
                    }
                    let pt = (value - 1) as u32;
                    if cycle.contains(&pt) {
                        return Err((start, "repeated point in cycle".into()));
                    }
                    cycle.push(pt);
                }
                _ => return Err((pos, "expected point, ',' or ')'".into())),
            }
        }
        if cycle.len() > 1 {
            cycles.push(cycle);
        }
        skip_ws(&mut pos);
    }
    Ok(cycles)
}
