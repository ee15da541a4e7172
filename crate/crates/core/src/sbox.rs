//! SBoxes, difference distribution tables, and the possible/impossible
//! partition of the 2n-bit difference space.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

/// Smallest supported SBox width in bits.
pub const MIN_BITS: u32 = 3;
/// Largest supported SBox width in bits.
pub const MAX_BITS: u32 = 6;

/// An n-bit substitution box given by its lookup table.
///
/// The table does not have to be a permutation; bijectivity is detected and
/// recorded for reporting, never enforced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SBox {
    n: u32,
    table: Vec<u8>,
    bijective: bool,
}

impl SBox {
    /// Builds an SBox from its lookup table. The width is inferred from the
    /// table length, which must be a power of two between 2^3 and 2^6.
    pub fn new(table: Vec<u8>) -> Result<Self> {
        let len = table.len();
        if !len.is_power_of_two() {
            return Err(Error::InvalidSbox(format!(
                "table length {len} is not a power of two"
            )));
        }
        let n = len.trailing_zeros();
        if !(MIN_BITS..=MAX_BITS).contains(&n) {
            return Err(Error::InvalidSbox(format!(
                "table length {len} implies {n}-bit words, supported range is {MIN_BITS}..={MAX_BITS} bits"
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| v as usize >= len) {
            return Err(Error::InvalidSbox(format!(
                "entry {bad:#x} out of range for {n}-bit words"
            )));
        }
        let mut seen = vec![false; len];
        for &v in &table {
            seen[v as usize] = true;
        }
        let bijective = seen.iter().all(|&s| s);
        Ok(SBox { n, table, bijective })
    }

    /// Parses a table of whitespace- or comma-separated hex words.
    pub fn parse(text: &str) -> Result<Self> {
        let mut table = Vec::new();
        for tok in text.split(|c: char| c.is_whitespace() || c == ',') {
            if tok.is_empty() {
                continue;
            }
            let tok = tok.trim_start_matches("0x").trim_start_matches("0X");
            let v = u8::from_str_radix(tok, 16)
                .map_err(|_| Error::InvalidSbox(format!("bad hex word {tok:?}")))?;
            table.push(v);
        }
        SBox::new(table)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of table entries, 2^n.
    pub fn size(&self) -> usize {
        self.table.len()
    }

    /// Dimension of the difference space, 2n.
    pub fn dim(&self) -> usize {
        2 * self.n as usize
    }

    pub fn table(&self) -> &[u8] {
        &self.table
    }

    pub fn is_bijective(&self) -> bool {
        self.bijective
    }

    #[inline]
    pub fn lookup(&self, x: usize) -> u8 {
        self.table[x]
    }
}

/// One input/output difference pair, viewed as a vertex of {0,1}^(2n).
///
/// The canonical bit order is (x_0, ..., x_{n-1}, y_0, ..., y_{n-1}) with x_0
/// the most significant bit of the input difference and the x block preceding
/// the y block. Under that order a point's index is `(input << n) | output`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiffPoint {
    index: u16,
    dim: u8,
}

impl DiffPoint {
    pub fn new(dim: usize, index: u16) -> Self {
        debug_assert!(dim % 2 == 0 && dim <= 12);
        debug_assert!((index as usize) < (1usize << dim));
        DiffPoint {
            index,
            dim: dim as u8,
        }
    }

    pub fn from_diffs(n: u32, input: u8, output: u8) -> Self {
        debug_assert!((input as usize) < (1 << n) && (output as usize) < (1 << n));
        DiffPoint {
            index: ((input as u16) << n) | output as u16,
            dim: (2 * n) as u8,
        }
    }

    pub fn index(&self) -> u16 {
        self.index
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    /// Component i of the point under the canonical bit order.
    #[inline]
    pub fn bit(&self, i: usize) -> u8 {
        debug_assert!(i < self.dim as usize);
        ((self.index >> (self.dim as usize - 1 - i)) & 1) as u8
    }

    pub fn input_diff(&self) -> u8 {
        (self.index >> (self.dim / 2)) as u8
    }

    pub fn output_diff(&self) -> u8 {
        (self.index & ((1 << (self.dim / 2)) - 1)) as u8
    }

    pub fn bits(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.dim as usize).map(move |i| self.bit(i))
    }

    /// Weight of the point (number of set components).
    pub fn weight(&self) -> u32 {
        self.index.count_ones()
    }
}

impl fmt::Display for DiffPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim as usize / 2;
        write!(
            f,
            "({:0width$b} -> {:0width$b})",
            self.input_diff(),
            self.output_diff(),
            width = n
        )
    }
}

impl fmt::Debug for DiffPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for DiffPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("DiffPoint", 3)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("input", &self.input_diff())?;
        st.serialize_field("output", &self.output_diff())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for DiffPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            dim: u8,
            input: u8,
            output: u8,
        }
        let raw = Raw::deserialize(d)?;
        Ok(DiffPoint::from_diffs(
            raw.dim as u32 / 2,
            raw.input,
            raw.output,
        ))
    }
}

/// Difference distribution table: `count(u, v)` is the number of inputs `w`
/// with `S(w) ^ S(w ^ u) = v`.
#[derive(Clone, Debug)]
pub struct Ddt {
    n: u32,
    counts: Vec<u32>,
}

impl Ddt {
    pub fn compute(sbox: &SBox) -> Ddt {
        let size = sbox.size();
        let mut counts = vec![0u32; size * size];
        for u in 0..size {
            for w in 0..size {
                let v = sbox.lookup(w) ^ sbox.lookup(w ^ u);
                counts[u * size + v as usize] += 1;
            }
        }
        Ddt {
            n: sbox.n(),
            counts,
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn size(&self) -> usize {
        1 << self.n
    }

    #[inline]
    pub fn count(&self, u: usize, v: usize) -> u32 {
        self.counts[u * self.size() + v]
    }

    /// Splits the point space into possible (count > 0) and impossible
    /// (count = 0) transitions, both sorted by point index.
    pub fn split(&self) -> Partition {
        let size = self.size();
        let dim = 2 * self.n as usize;
        let mut possible = Vec::new();
        let mut impossible = Vec::new();
        for u in 0..size {
            for v in 0..size {
                let p = DiffPoint::from_diffs(self.n, u as u8, v as u8);
                if self.count(u, v) > 0 {
                    possible.push(p);
                } else {
                    impossible.push(p);
                }
            }
        }
        Partition {
            dim,
            possible,
            impossible,
        }
    }
}

/// The possible/impossible split of the full 2n-bit point space.
#[derive(Clone, Debug)]
pub struct Partition {
    dim: usize,
    possible: Vec<DiffPoint>,
    impossible: Vec<DiffPoint>,
}

impl Partition {
    pub fn new(dim: usize, possible: Vec<DiffPoint>, impossible: Vec<DiffPoint>) -> Self {
        Partition {
            dim,
            possible,
            impossible,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn possible(&self) -> &[DiffPoint] {
        &self.possible
    }

    pub fn impossible(&self) -> &[DiffPoint] {
        &self.impossible
    }

    /// Position of `point` in the sorted impossible list, if impossible.
    pub fn impossible_position(&self, point: DiffPoint) -> Option<usize> {
        self.impossible.binary_search(&point).ok()
    }
}
