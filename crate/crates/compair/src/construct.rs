//! The standard quadratic families of complementary array pairs, their
//! enumerators, and the length-2 primitive pairs.
//!
//! A standard Type-II pair on m variables is
//!
//! ```text
//! f = sum_{i<j} x_i x_j + sum_i c_i x_i + c0,    g = f + sum_i x_i + c'
//! ```
//!
//! and a standard mixed Type-II/III pair on m Type-II variables plus x0 is
//!
//! ```text
//! f = sum_{i<j} x_i x_j + x0 sum_i e_i x_i + sum_i c_i x_i + c0 x0 + c,
//! g = f + sum_i x_i + e0 x0 + c'.
//! ```
//!
//! Parameter vectors are encoded little-endian into an integer for stable
//! iteration order; see [`Type2Params::from_index`] and
//! [`MixedParams::from_index`].

use crate::arrays::{ArrayPair, PairKind};
use crate::boolfun::Anf;
use crate::error::{Error, Result};
use crate::sequences::Sequence;

/// Parameters (c_1..c_m, c0, c') of a standard Type-II pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Type2Params {
    pub m: usize,
    pub c: Vec<bool>,
    pub c0: bool,
    pub cprime: bool,
}

impl Type2Params {
    pub fn new(m: usize, c: Vec<bool>, c0: bool, cprime: bool) -> Result<Self> {
        if c.len() != m {
            return Err(Error::InvalidInput(format!(
                "c must have length m={m}, got {}",
                c.len()
            )));
        }
        Ok(Self { m, c, c0, cprime })
    }

    pub fn zeros(m: usize) -> Self {
        Self {
            m,
            c: vec![false; m],
            c0: false,
            cprime: false,
        }
    }

    /// Decode from the little-endian parameter integer: bits 0..m hold
    /// c_1..c_m, bit m holds c0, bit m+1 holds c'.
    pub fn from_index(m: usize, index: u64) -> Result<Self> {
        if index >> (m + 2) != 0 {
            return Err(Error::InvalidInput(format!(
                "parameter index {index} out of range for m={m}"
            )));
        }
        Ok(Self {
            m,
            c: (0..m).map(|i| index >> i & 1 == 1).collect(),
            c0: index >> m & 1 == 1,
            cprime: index >> (m + 1) & 1 == 1,
        })
    }

    pub fn to_index(&self) -> u64 {
        let mut index = 0u64;
        for (i, &ci) in self.c.iter().enumerate() {
            index |= (ci as u64) << i;
        }
        index |= (self.c0 as u64) << self.m;
        index |= (self.cprime as u64) << (self.m + 1);
        index
    }
}

/// Parameters (e_1..e_m, c_1..c_m, c0, c, e0, c') of a standard mixed pair.
///
/// `c0` is the coefficient of x0 in f and `cconst` its constant term.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MixedParams {
    pub m: usize,
    pub e: Vec<bool>,
    pub c: Vec<bool>,
    pub c0: bool,
    pub cconst: bool,
    pub e0: bool,
    pub cprime: bool,
}

impl MixedParams {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        m: usize,
        e: Vec<bool>,
        c: Vec<bool>,
        c0: bool,
        cconst: bool,
        e0: bool,
        cprime: bool,
    ) -> Result<Self> {
        if e.len() != m || c.len() != m {
            return Err(Error::InvalidInput(format!(
                "e and c must have length m={m}, got {} and {}",
                e.len(),
                c.len()
            )));
        }
        Ok(Self {
            m,
            e,
            c,
            c0,
            cconst,
            e0,
            cprime,
        })
    }

    pub fn zeros(m: usize) -> Self {
        Self {
            m,
            e: vec![false; m],
            c: vec![false; m],
            c0: false,
            cconst: false,
            e0: false,
            cprime: false,
        }
    }

    /// Decode from the little-endian parameter integer: bits 0..m hold e,
    /// bits m..2m hold c, then c0, c, e0, c' in ascending bit order.
    pub fn from_index(m: usize, index: u64) -> Result<Self> {
        if index >> (2 * m + 4) != 0 {
            return Err(Error::InvalidInput(format!(
                "parameter index {index} out of range for m={m}"
            )));
        }
        Ok(Self {
            m,
            e: (0..m).map(|i| index >> i & 1 == 1).collect(),
            c: (0..m).map(|i| index >> (m + i) & 1 == 1).collect(),
            c0: index >> (2 * m) & 1 == 1,
            cconst: index >> (2 * m + 1) & 1 == 1,
            e0: index >> (2 * m + 2) & 1 == 1,
            cprime: index >> (2 * m + 3) & 1 == 1,
        })
    }

    pub fn to_index(&self) -> u64 {
        let mut index = 0u64;
        for (i, &ei) in self.e.iter().enumerate() {
            index |= (ei as u64) << i;
        }
        for (i, &ci) in self.c.iter().enumerate() {
            index |= (ci as u64) << (self.m + i);
        }
        index |= (self.c0 as u64) << (2 * self.m);
        index |= (self.cconst as u64) << (2 * self.m + 1);
        index |= (self.e0 as u64) << (2 * self.m + 2);
        index |= (self.cprime as u64) << (2 * self.m + 3);
        index
    }
}

/// Parse a parameter bit string like "010" (character i is bit i+1).
pub fn parse_bitstring(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::InvalidInput(format!(
                "bit string may contain only 0 and 1, got '{other}'"
            ))),
        })
        .collect()
}

pub fn to_bitstring(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Mask with one bit per variable 1..=m.
fn all_singletons(m: usize) -> impl Iterator<Item = u32> {
    (0..m).map(|i| 1u32 << i)
}

/// The quadratic form sum_{1 <= i < j <= m} x_i x_j as monomial masks.
fn quadratic_form(m: usize) -> Vec<u32> {
    let mut masks = vec![];
    for i in 0..m {
        for j in i + 1..m {
            masks.push(1u32 << i | 1u32 << j);
        }
    }
    masks
}

/// Build the standard Type-II pair for the given parameters.
pub fn standard_type2_array_pair(params: &Type2Params) -> ArrayPair {
    let m = params.m;
    let mut monomials = quadratic_form(m);
    monomials.extend(all_singletons(m).enumerate().filter_map(|(i, mask)| {
        params.c[i].then_some(mask)
    }));
    if params.c0 {
        monomials.push(0);
    }
    let f = Anf::from_monomials(m, monomials)
        .expect("masks fit")
        .to_boolean_function();

    let mut delta = all_singletons(m).collect::<Vec<_>>();
    if params.cprime {
        delta.push(0);
    }
    let g = f
        .add(&Anf::from_monomials(m, delta).expect("masks fit").to_boolean_function())
        .expect("equal arity");
    ArrayPair::new(f, g, PairKind::TypeII).expect("equal arity")
}

/// Build the standard mixed Type-II/III pair; x0 is the last coordinate
/// (variable m+1) of the returned (m+1)-variable functions.
pub fn standard_mixed_array_pair(params: &MixedParams) -> ArrayPair {
    let m = params.m;
    let nvars = m + 1;
    let x0 = 1u32 << m;
    let mut monomials = quadratic_form(m);
    for i in 0..m {
        if params.e[i] {
            monomials.push(x0 | 1 << i);
        }
        if params.c[i] {
            monomials.push(1 << i);
        }
    }
    if params.c0 {
        monomials.push(x0);
    }
    if params.cconst {
        monomials.push(0);
    }
    let f = Anf::from_monomials(nvars, monomials)
        .expect("masks fit")
        .to_boolean_function();

    let mut delta = all_singletons(m).collect::<Vec<_>>();
    if params.e0 {
        delta.push(x0);
    }
    if params.cprime {
        delta.push(0);
    }
    let g = f
        .add(
            &Anf::from_monomials(nvars, delta)
                .expect("masks fit")
                .to_boolean_function(),
        )
        .expect("equal arity");
    ArrayPair::new(f, g, PairKind::Mixed).expect("equal arity")
}

/// All 2^(m+2) standard Type-II pairs in parameter-index order.
pub fn enumerate_standard_type2(m: usize) -> Vec<ArrayPair> {
    (0..1u64 << (m + 2))
        .map(|index| standard_type2_array_pair(&Type2Params::from_index(m, index).expect("range")))
        .collect()
}

/// All 2^(2m+4) standard mixed pairs in parameter-index order.
pub fn enumerate_standard_mixed(m: usize) -> Vec<ArrayPair> {
    (0..1u64 << (2 * m + 4))
        .map(|index| standard_mixed_array_pair(&MixedParams::from_index(m, index).expect("range")))
        .collect()
}

/// The length-2 seed pairs: A=(1,1), B=(1,-1) for Type-II and
/// A=(1,1), B=(1,1) for Type-III, as binary sequences.
pub fn primitive_pairs() -> ((Sequence, Sequence), (Sequence, Sequence)) {
    let type2 = (
        Sequence::from_bits(&[0, 0]).expect("length 2"),
        Sequence::from_bits(&[0, 1]).expect("length 2"),
    );
    let type3 = (
        Sequence::from_bits(&[0, 0]).expect("length 2"),
        Sequence::from_bits(&[0, 0]).expect("length 2"),
    );
    (type2, type3)
}
