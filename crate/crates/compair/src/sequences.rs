//! Sequence-side mirror of [`crate::arrays`]: generating functions,
//! aperiodic autocorrelation and the Type-I/II/III sequence-pair predicates.
//!
//! Sequences of any length L >= 1 are first-class inputs; non-power-of-2
//! lengths are needed for the negative search results.

use std::fmt;

use crate::boolfun::{bits_from_hex, bits_to_hex};
use crate::error::{Error, Result};
use crate::lpoly::LaurentPoly;

/// A binary sequence f(0), ..., f(L-1) over Z2.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Sequence {
    values: Vec<bool>,
}

impl Sequence {
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::InvalidInput("sequence length must be >= 1".into()));
        }
        if let Some(b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::InvalidInput(format!(
                "sequence entries must be 0 or 1, got {b}"
            )));
        }
        Ok(Self {
            values: bits.iter().map(|&b| b == 1).collect(),
        })
    }

    pub fn from_bools(values: Vec<bool>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidInput("sequence length must be >= 1".into()));
        }
        Ok(Self { values })
    }

    /// Sequence of length `len` whose entries are the low bits of `index`
    /// (entry t = bit t). Requires len <= 64.
    pub fn from_index(len: usize, index: u64) -> Result<Self> {
        if len == 0 || len > 64 {
            return Err(Error::InvalidInput(format!(
                "packed sequence length must be 1..=64, got {len}"
            )));
        }
        if len < 64 && index >> len != 0 {
            return Err(Error::InvalidInput(format!(
                "index {index:#x} has bits beyond length {len}"
            )));
        }
        Ok(Self {
            values: (0..len).map(|t| index >> t & 1 == 1).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false // length is always >= 1
    }

    pub fn get(&self, t: usize) -> bool {
        self.values[t]
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    /// Entries packed into a u64 (bit t = f(t)). Requires L <= 64.
    pub fn value_bits(&self) -> u64 {
        assert!(self.len() <= 64, "value_bits requires L <= 64");
        self.values
            .iter()
            .enumerate()
            .fold(0u64, |acc, (t, &b)| acc | (b as u64) << t)
    }

    /// Same little-endian hex encoding as truth tables, e.g. (0,0,0,1) -> "0x8".
    pub fn to_hex(&self) -> String {
        bits_to_hex(&self.values)
    }

    pub fn from_hex(len: usize, s: &str) -> Result<Self> {
        if len == 0 {
            return Err(Error::InvalidInput("sequence length must be >= 1".into()));
        }
        Ok(Self {
            values: bits_from_hex(s, len)?,
        })
    }
}

impl fmt::Debug for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sequence(L={}, {})", self.len(), self.to_hex())
    }
}

/// Aperiodic autocorrelation at shift tau, -L < tau < L.
pub fn seq_autocorrelation(f: &Sequence, tau: i64) -> Result<i64> {
    let len = f.len() as i64;
    if tau.abs() >= len {
        return Err(Error::InvalidInput(format!(
            "shift {tau} out of range for length {len}"
        )));
    }
    let mut sum = 0i64;
    for t in 0..len {
        let shifted = t + tau;
        if (0..len).contains(&shifted) {
            sum += if f.get(shifted as usize) ^ f.get(t as usize) {
                -1
            } else {
                1
            };
        }
    }
    Ok(sum)
}

/// Generating function F(z) = sum_t (-1)^f(t) z^t (univariate).
pub fn seq_generating_function(f: &Sequence) -> LaurentPoly {
    let mut poly = LaurentPoly::zero(1);
    for t in 0..f.len() {
        let coeff = if f.get(t) { -1 } else { 1 };
        let term = LaurentPoly::term(1, &[t as i32], coeff).expect("univariate term");
        poly = poly.add(&term).expect("univariate");
    }
    poly
}

fn check_equal_length(f: &Sequence, g: &Sequence) -> Result<usize> {
    if f.len() != g.len() {
        return Err(Error::InvalidInput(format!(
            "sequences have lengths {} and {}",
            f.len(),
            g.len()
        )));
    }
    Ok(f.len())
}

/// Right-hand side 2 * (1 + s z^2 + s^2 z^4 + ... ) with sign s = +-1.
fn rhs_geometric(len: usize, sign: i64) -> LaurentPoly {
    let mut rhs = LaurentPoly::zero(1);
    let mut coeff = 2i64;
    for j in 0..len {
        rhs = rhs
            .add(&LaurentPoly::term(1, &[2 * j as i32], coeff).expect("term"))
            .expect("univariate");
        coeff *= sign;
    }
    rhs
}

/// F(z) F(1/z) + G(z) G(1/z) = 2L.
pub fn is_type1_seq_pair(f: &Sequence, g: &Sequence) -> Result<bool> {
    let len = check_equal_length(f, g)?;
    let fp = seq_generating_function(f);
    let gp = seq_generating_function(g);
    let lhs = &(&fp * &fp.invert_vars()) + &(&gp * &gp.invert_vars());
    Ok(lhs == LaurentPoly::constant(1, 2 * len as i64))
}

/// F^2 + G^2 = 2 (1 + z^2 + z^4 + ... + z^(2(L-1))).
pub fn is_type2_seq_pair(f: &Sequence, g: &Sequence) -> Result<bool> {
    let len = check_equal_length(f, g)?;
    let fp = seq_generating_function(f);
    let gp = seq_generating_function(g);
    Ok(&(&fp * &fp) + &(&gp * &gp) == rhs_geometric(len, 1))
}

/// F(z) F(-z) + G(z) G(-z) = 2 (1 - z^2 + z^4 - ... + (-1)^(L-1) z^(2(L-1))).
pub fn is_type3_seq_pair(f: &Sequence, g: &Sequence) -> Result<bool> {
    let len = check_equal_length(f, g)?;
    let fp = seq_generating_function(f);
    let gp = seq_generating_function(g);
    let lhs = &(&fp * &fp.negate_var(1).expect("univariate"))
        + &(&gp * &gp.negate_var(1).expect("univariate"));
    Ok(lhs == rhs_geometric(len, -1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn seq(bits: &[u8]) -> Sequence {
        Sequence::from_bits(bits).unwrap()
    }

    fn random_sequence(rng: &mut StdRng, len: usize) -> Sequence {
        let bits: Vec<u8> = (0..len).map(|_| rng.random_range(0..=1)).collect();
        seq(&bits)
    }

    #[test]
    fn autocorrelation_examples() {
        let f = seq(&[0, 0, 0, 1]);
        assert_eq!(seq_autocorrelation(&f, 0).unwrap(), 4);
        assert_eq!(seq_autocorrelation(&f, 1).unwrap(), 1);
        assert_eq!(seq_autocorrelation(&f, 3).unwrap(), -1);
        assert!(seq_autocorrelation(&f, 4).is_err());
        assert!(seq_autocorrelation(&f, -4).is_err());

        let mut rng = StdRng::seed_from_u64(21);
        for _ in 0..20 {
            let len = rng.random_range(1..=16usize);
            let f = random_sequence(&mut rng, len);
            assert_eq!(seq_autocorrelation(&f, 0).unwrap(), len as i64);
        }
    }

    #[test]
    fn autocorrelation_is_symmetric_in_shift() {
        let mut rng = StdRng::seed_from_u64(22);
        for _ in 0..50 {
            let len = rng.random_range(1..=32usize);
            let f = random_sequence(&mut rng, len);
            for tau in 0..len as i64 {
                assert_eq!(
                    seq_autocorrelation(&f, tau).unwrap(),
                    seq_autocorrelation(&f, -tau).unwrap()
                );
            }
        }
    }

    #[test]
    fn generating_function_examples() {
        assert_eq!(seq_generating_function(&seq(&[0, 0])).to_string(), "1 + 1*z1");
        assert_eq!(seq_generating_function(&seq(&[0, 1])).to_string(), "1 + -1*z1");
        let p = seq_generating_function(&seq(&[0, 0, 0, 1]));
        assert_eq!(p.coeff(&[0]), 1);
        assert_eq!(p.coeff(&[1]), 1);
        assert_eq!(p.coeff(&[2]), 1);
        assert_eq!(p.coeff(&[3]), -1);
    }

    #[test]
    fn type1_examples() {
        assert!(is_type1_seq_pair(&seq(&[0, 0]), &seq(&[0, 1])).unwrap());
        assert!(!is_type1_seq_pair(&seq(&[0, 0]), &seq(&[0, 0])).unwrap());
        assert!(is_type1_seq_pair(&seq(&[0, 0]), &seq(&[0, 0, 0])).is_err());
    }

    #[test]
    fn type1_agrees_with_correlation_sums() {
        // independent oracle: C_f(tau) + C_g(tau) = 0 for all tau != 0
        for len in 1..=4usize {
            for fi in 0..1u64 << len {
                for gi in 0..1u64 << len {
                    let f = Sequence::from_index(len, fi).unwrap();
                    let g = Sequence::from_index(len, gi).unwrap();
                    let by_corr = (1..len as i64).all(|tau| {
                        seq_autocorrelation(&f, tau).unwrap()
                            + seq_autocorrelation(&g, tau).unwrap()
                            == 0
                    });
                    assert_eq!(is_type1_seq_pair(&f, &g).unwrap(), by_corr);
                }
            }
        }
    }

    #[test]
    fn type2_examples() {
        // the primitive pair A = (1,1), B = (1,-1)
        assert!(is_type2_seq_pair(&seq(&[0, 0]), &seq(&[0, 1])).unwrap());
        assert!(is_type2_seq_pair(&seq(&[0, 0, 0, 1]), &seq(&[0, 1, 1, 1])).unwrap());
        assert!(!is_type2_seq_pair(&seq(&[0, 0]), &seq(&[0, 0])).unwrap());
    }

    #[test]
    fn type3_examples() {
        // the primitive pair A = (1,1), B = (1,1)
        assert!(is_type3_seq_pair(&seq(&[0, 0]), &seq(&[0, 0])).unwrap());
        assert!(is_type3_seq_pair(&seq(&[0, 0, 0, 0]), &seq(&[0, 0, 1, 1])).unwrap());
        // L = 2 exhaustive: all 16 ordered pairs pass
        for fi in 0..4u64 {
            for gi in 0..4u64 {
                let f = Sequence::from_index(2, fi).unwrap();
                let g = Sequence::from_index(2, gi).unwrap();
                assert!(is_type3_seq_pair(&f, &g).unwrap());
            }
        }
    }

    #[test]
    fn no_type2_pairs_at_non_power_of_two_lengths() {
        for len in [3usize, 5, 6, 7] {
            for fi in 0..1u64 << len {
                for gi in 0..1u64 << len {
                    let f = Sequence::from_index(len, fi).unwrap();
                    let g = Sequence::from_index(len, gi).unwrap();
                    assert!(!is_type2_seq_pair(&f, &g).unwrap(), "L={len} f={fi} g={gi}");
                }
            }
        }
    }

    #[test]
    fn correlation_coefficient_duality() {
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..200 {
            let len = rng.random_range(1..=64usize);
            let f = random_sequence(&mut rng, len);
            let fp = seq_generating_function(&f);
            let prod = &fp * &fp.invert_vars();
            for tau in -(len as i64 - 1)..len as i64 {
                assert_eq!(
                    prod.coeff(&[tau as i32]),
                    seq_autocorrelation(&f, tau).unwrap()
                );
            }
        }
    }

    #[test]
    fn hex_round_trip() {
        let f = seq(&[0, 0, 0, 1]);
        assert_eq!(f.to_hex(), "0x8");
        assert_eq!(Sequence::from_hex(4, "0x8").unwrap(), f);
        assert!(Sequence::from_hex(0, "0x0").is_err());
        assert!(Sequence::from_hex(2, "0x10").is_err());
    }
}
