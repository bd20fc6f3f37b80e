//! Truth-table representation of m-variable binary functions.
//!
//! A function f: {0,1}^m -> Z2 is stored as a table of 2^m bits where bit t
//! holds f(x) for t = sum_k x_k * 2^(k-1), i.e. x1 is the least-significant
//! bit of the table index. Variables are numbered 1..=m throughout.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// An m-variable binary function stored as a truth table.
///
/// `m = 0` is allowed and denotes a single-bit constant.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    m: usize,
    table: Vec<bool>,
}

impl BooleanFunction {
    /// Build a function from its truth table, bit t = f(t).
    ///
    /// `bits` must have length exactly 2^m and contain only 0/1 values.
    pub fn from_truth_table(bits: &[u8], m: usize) -> Result<Self> {
        if bits.len() != 1usize << m {
            return Err(Error::InvalidInput(format!(
                "truth table for m={} must have {} entries, got {}",
                m,
                1usize << m,
                bits.len()
            )));
        }
        if let Some(b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::InvalidInput(format!(
                "truth table entries must be 0 or 1, got {b}"
            )));
        }
        Ok(Self {
            m,
            table: bits.iter().map(|&b| b == 1).collect(),
        })
    }

    /// Build a function from the truth table packed into an integer
    /// (bit t of `index` = f(t)). Requires m <= 6.
    pub fn from_index(m: usize, index: u64) -> Result<Self> {
        if m > 6 {
            return Err(Error::InvalidInput(format!(
                "packed truth table only supports m <= 6, got m={m}"
            )));
        }
        let size = 1usize << m;
        if size < 64 && index >> size != 0 {
            return Err(Error::InvalidInput(format!(
                "index {index:#x} has bits beyond table size {size}"
            )));
        }
        Ok(Self {
            m,
            table: (0..size).map(|t| index >> t & 1 == 1).collect(),
        })
    }

    /// The constant function with the given value.
    pub fn constant(m: usize, value: bool) -> Self {
        Self {
            m,
            table: vec![value; 1 << m],
        }
    }

    /// Number of variables.
    pub fn variables(&self) -> usize {
        self.m
    }

    /// Truth-table length, 2^m.
    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        false // table length is 2^m >= 1
    }

    /// Evaluate at the point packed as t = sum_k x_k * 2^(k-1).
    pub fn eval(&self, t: usize) -> bool {
        self.table[t]
    }

    /// The raw truth table.
    pub fn table(&self) -> &[bool] {
        &self.table
    }

    /// Truth table packed into a u64 (bit t = f(t)). Requires m <= 6.
    pub fn table_value(&self) -> u64 {
        assert!(self.m <= 6, "table_value requires m <= 6");
        self.table
            .iter()
            .enumerate()
            .fold(0u64, |acc, (t, &b)| acc | (b as u64) << t)
    }

    /// Pointwise XOR with another function of the same arity.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.m != other.m {
            return Err(Error::InvalidInput(format!(
                "cannot add functions with m={} and m={}",
                self.m, other.m
            )));
        }
        Ok(Self {
            m: self.m,
            table: self
                .table
                .iter()
                .zip(&other.table)
                .map(|(&a, &b)| a ^ b)
                .collect(),
        })
    }

    /// Fix variable `var` (1-based) to `bit`, renumbering the remaining
    /// variables to 1..=m-1 in their original order.
    pub fn restrict(&self, var: usize, bit: bool) -> Result<Self> {
        if var == 0 || var > self.m {
            return Err(Error::InvalidInput(format!(
                "variable index {var} out of range 1..={}",
                self.m
            )));
        }
        let k = var - 1;
        let low_mask = (1usize << k) - 1;
        let size = 1usize << (self.m - 1);
        let table = (0..size)
            .map(|t| {
                let full = (t & low_mask) | ((bit as usize) << k) | ((t & !low_mask) << 1);
                self.table[full]
            })
            .collect();
        Ok(Self {
            m: self.m - 1,
            table,
        })
    }

    /// Algebraic normal form via the binary Moebius transform.
    pub fn to_anf(&self) -> Anf {
        let mut coeffs = self.table.clone();
        for k in 0..self.m {
            let stride = 1usize << k;
            for t in 0..coeffs.len() {
                if t & stride != 0 {
                    coeffs[t] ^= coeffs[t ^ stride];
                }
            }
        }
        let monomials = coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c)
            .map(|(mask, _)| mask as u32)
            .collect();
        Anf {
            m: self.m,
            monomials,
        }
    }

    /// Truth table as lowercase hex of the packed integer (bit t = f(t)),
    /// e.g. table (0,0,0,1) -> "0x8".
    pub fn to_hex(&self) -> String {
        bits_to_hex(&self.table)
    }

    /// Parse a hex truth table (see [`BooleanFunction::to_hex`]).
    pub fn from_hex(m: usize, s: &str) -> Result<Self> {
        let table = bits_from_hex(s, 1usize << m)?;
        Ok(Self { m, table })
    }
}

impl fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BooleanFunction(m={}, {})", self.m, self.to_hex())
    }
}

/// Algebraic normal form: a set of multilinear monomials over Z2.
///
/// Each monomial is a bitmask over variables 1..=m (bit k-1 set means x_k
/// is a factor); the empty mask is the constant term.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Anf {
    m: usize,
    monomials: BTreeSet<u32>,
}

impl Anf {
    /// Build an ANF from monomial bitmasks. Masks must fit in m bits;
    /// duplicates cancel in pairs (Z2 coefficients).
    pub fn from_monomials<I: IntoIterator<Item = u32>>(m: usize, masks: I) -> Result<Self> {
        let mut monomials = BTreeSet::new();
        for mask in masks {
            if m < 32 && mask >> m != 0 {
                return Err(Error::InvalidInput(format!(
                    "monomial {mask:#b} uses variables beyond m={m}"
                )));
            }
            if !monomials.insert(mask) {
                monomials.remove(&mask);
            }
        }
        Ok(Self { m, monomials })
    }

    pub fn zero(m: usize) -> Self {
        Self {
            m,
            monomials: BTreeSet::new(),
        }
    }

    pub fn variables(&self) -> usize {
        self.m
    }

    /// The monomial set, ordered by bitmask value.
    pub fn monomials(&self) -> &BTreeSet<u32> {
        &self.monomials
    }

    pub fn contains(&self, mask: u32) -> bool {
        self.monomials.contains(&mask)
    }

    /// Largest monomial degree, 0 for the zero function.
    pub fn degree(&self) -> u32 {
        self.monomials
            .iter()
            .map(|mask| mask.count_ones())
            .max()
            .unwrap_or(0)
    }

    /// Evaluate the monomial sum at the packed point x.
    pub fn eval(&self, x: u32) -> bool {
        self.monomials
            .iter()
            .filter(|&&mask| x & mask == mask)
            .count()
            % 2
            == 1
    }

    /// Symmetric difference of monomial sets (pointwise XOR of functions).
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.m != other.m {
            return Err(Error::InvalidInput(format!(
                "cannot add ANFs with m={} and m={}",
                self.m, other.m
            )));
        }
        let monomials = self
            .monomials
            .symmetric_difference(&other.monomials)
            .copied()
            .collect();
        Ok(Self {
            m: self.m,
            monomials,
        })
    }

    /// Expand back to a truth table (inverse of [`BooleanFunction::to_anf`]).
    pub fn to_boolean_function(&self) -> BooleanFunction {
        // The Moebius transform is an involution, so running it over the
        // coefficient table recovers the truth table.
        let mut table = vec![false; 1 << self.m];
        for &mask in &self.monomials {
            table[mask as usize] = true;
        }
        for k in 0..self.m {
            let stride = 1usize << k;
            for t in 0..table.len() {
                if t & stride != 0 {
                    table[t] ^= table[t ^ stride];
                }
            }
        }
        BooleanFunction { m: self.m, table }
    }
}

impl fmt::Display for Anf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return write!(f, "0");
        }
        let term = |mask: u32| -> String {
            if mask == 0 {
                return "1".to_string();
            }
            (1..=self.m)
                .filter(|k| mask >> (k - 1) & 1 == 1)
                .map(|k| format!("x{k}"))
                .collect::<Vec<_>>()
                .join("*")
        };
        let s = self
            .monomials
            .iter()
            .map(|&mask| term(mask))
            .collect::<Vec<_>>()
            .join(" + ");
        write!(f, "{s}")
    }
}

impl fmt::Debug for Anf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Anf(m={}, {})", self.m, self)
    }
}

/// Encode a little-endian bit vector as minimal lowercase hex with a 0x prefix.
pub(crate) fn bits_to_hex(bits: &[bool]) -> String {
    let nibbles = bits.len().div_ceil(4);
    let mut digits: Vec<char> = Vec::with_capacity(nibbles);
    for n in 0..nibbles {
        let mut v = 0u8;
        for k in 0..4 {
            let t = 4 * n + k;
            if t < bits.len() && bits[t] {
                v |= 1 << k;
            }
        }
        digits.push(char::from_digit(v as u32, 16).unwrap());
    }
    while digits.len() > 1 && *digits.last().unwrap() == '0' {
        digits.pop();
    }
    let mut s = String::from("0x");
    s.extend(digits.iter().rev());
    s
}

/// Decode hex (optionally 0x-prefixed) into a bit vector of the given length.
pub(crate) fn bits_from_hex(s: &str, len: usize) -> Result<Vec<bool>> {
    let digits = s.strip_prefix("0x").unwrap_or(s);
    if digits.is_empty() {
        return Err(Error::InvalidInput("empty hex string".into()));
    }
    let mut bits = vec![false; len];
    for (n, c) in digits.chars().rev().enumerate() {
        let v = c
            .to_digit(16)
            .ok_or_else(|| Error::InvalidInput(format!("invalid hex digit '{c}' in \"{s}\"")))?;
        for k in 0..4 {
            if v >> k & 1 == 1 {
                let t = 4 * n + k;
                if t >= len {
                    return Err(Error::InvalidInput(format!(
                        "hex value \"{s}\" has bits beyond table length {len}"
                    )));
                }
                bits[t] = true;
            }
        }
    }
    Ok(bits)
}
