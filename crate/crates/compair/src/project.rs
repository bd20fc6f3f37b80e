//! Array-to-sequence projections and their inverses.
//!
//! A permutation pi of {1..m} flattens an m-variable array to a sequence of
//! length 2^m via the index map t = sum_k x_k * 2^(pi(k)-1). Mixed pairs use
//! t = sum_k 2^(pi(k)) x_k + x0 instead, which pins the Type-III variable x0
//! to the least-significant sequence index; that specific placement is what
//! turns mixed array pairs into Type-III sequence pairs.

use std::fmt;

use itertools::Itertools;

use crate::arrays::{ArrayPair, PairKind};
use crate::boolfun::BooleanFunction;
use crate::error::{Error, Result};
use crate::sequences::Sequence;

/// A permutation of {1..m} stored as its image vector (1-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn from_image(image: Vec<usize>) -> Result<Self> {
        let m = image.len();
        let mut seen = vec![false; m];
        for &v in &image {
            if v == 0 || v > m || seen[v - 1] {
                return Err(Error::InvalidInput(format!(
                    "image vector {image:?} is not a permutation of 1..={m}"
                )));
            }
            seen[v - 1] = true;
        }
        Ok(Self { image })
    }

    pub fn identity(m: usize) -> Self {
        Self {
            image: (1..=m).collect(),
        }
    }

    /// Parse a comma-separated 1-based image list such as "2,1,3".
    pub fn parse(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Ok(Self::identity(0));
        }
        let image = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidInput(format!("invalid permutation entry '{part}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_image(image)
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    /// Image of k (1-based).
    pub fn apply(&self, k: usize) -> usize {
        self.image[k - 1]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// All m! permutations in lexicographic image order.
    pub fn all(m: usize) -> Vec<Self> {
        (1..=m)
            .permutations(m)
            .map(|image| Self { image })
            .collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.image.iter().map(|v| v.to_string()).join(","))
    }
}

fn check_perm_len(perm: &Permutation, m: usize) -> Result<()> {
    if perm.len() != m {
        return Err(Error::InvalidInput(format!(
            "permutation acts on {} variables, array has {m}",
            perm.len()
        )));
    }
    Ok(())
}

/// Sequence index for the plain projection, t = sum_k x_k 2^(pi(k)-1).
fn plain_index(perm: &Permutation, x: usize) -> usize {
    (1..=perm.len())
        .filter(|&k| x >> (k - 1) & 1 == 1)
        .fold(0, |acc, k| acc | 1 << (perm.apply(k) - 1))
}

/// Sequence index for the mixed projection, t = sum_k 2^pi(k) x_k + x0,
/// where x packs the Type-II variables in its low m bits and x0 on top.
fn mixed_index(perm: &Permutation, x: usize) -> usize {
    let m = perm.len();
    let mut t = x >> m & 1;
    for k in 1..=m {
        if x >> (k - 1) & 1 == 1 {
            t |= 1 << perm.apply(k);
        }
    }
    t
}

/// Flatten an array to the length-2^m sequence with f(t) = f(x).
pub fn project_array(f: &BooleanFunction, perm: &Permutation) -> Result<Sequence> {
    check_perm_len(perm, f.variables())?;
    let mut values = vec![false; f.len()];
    for x in 0..f.len() {
        values[plain_index(perm, x)] = f.eval(x);
    }
    Sequence::from_bools(values)
}

/// Inverse of [`project_array`] for the same permutation.
pub fn unproject_array(seq: &Sequence, perm: &Permutation) -> Result<BooleanFunction> {
    let m = perm.len();
    if seq.len() != 1 << m {
        return Err(Error::InvalidInput(format!(
            "sequence length {} is not 2^{m}",
            seq.len()
        )));
    }
    let bits: Vec<u8> = (0..seq.len())
        .map(|x| seq.get(plain_index(perm, x)) as u8)
        .collect();
    BooleanFunction::from_truth_table(&bits, m)
}

/// Project both members of a Type-II pair with the same permutation.
pub fn project_type2_pair(pair: &ArrayPair, perm: &Permutation) -> Result<(Sequence, Sequence)> {
    if pair.kind() != PairKind::TypeII {
        return Err(Error::InvalidInput(format!(
            "expected a Type-II pair, got {:?}",
            pair.kind()
        )));
    }
    Ok((
        project_array(pair.f(), perm)?,
        project_array(pair.g(), perm)?,
    ))
}

/// Project a mixed pair to a length-2^(m+1) sequence pair; the permutation
/// acts on the m Type-II variables and x0 lands on the low index bit.
pub fn project_mixed_pair(pair: &ArrayPair, perm: &Permutation) -> Result<(Sequence, Sequence)> {
    if pair.kind() != PairKind::Mixed {
        return Err(Error::InvalidInput(format!(
            "expected a mixed pair, got {:?}",
            pair.kind()
        )));
    }
    check_perm_len(perm, pair.variables() - 1)?;
    let flatten = |h: &BooleanFunction| -> Result<Sequence> {
        let mut values = vec![false; h.len()];
        for x in 0..h.len() {
            values[mixed_index(perm, x)] = h.eval(x);
        }
        Sequence::from_bools(values)
    };
    Ok((flatten(pair.f())?, flatten(pair.g())?))
}

/// Inverse of the mixed projection: rebuild the (m+1)-variable function
/// (x0 last) from a length-2^(m+1) sequence.
pub fn unproject_mixed(seq: &Sequence, perm: &Permutation) -> Result<BooleanFunction> {
    let m = perm.len();
    if seq.len() != 1 << (m + 1) {
        return Err(Error::InvalidInput(format!(
            "sequence length {} is not 2^{}",
            seq.len(),
            m + 1
        )));
    }
    let bits: Vec<u8> = (0..seq.len())
        .map(|x| seq.get(mixed_index(perm, x)) as u8)
        .collect();
    BooleanFunction::from_truth_table(&bits, m + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrays::generating_function;
    use crate::construct::{
        enumerate_standard_mixed, enumerate_standard_type2, standard_mixed_array_pair,
        standard_type2_array_pair, MixedParams, Type2Params,
    };
    use crate::sequences::{is_type2_seq_pair, is_type3_seq_pair, seq_generating_function};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use std::collections::HashSet;

    fn bf(bits: &[u8], m: usize) -> BooleanFunction {
        BooleanFunction::from_truth_table(bits, m).unwrap()
    }

    #[test]
    fn permutation_validation_and_parsing() {
        assert!(Permutation::from_image(vec![2, 1, 3]).is_ok());
        assert!(Permutation::from_image(vec![1, 1]).is_err());
        assert!(Permutation::from_image(vec![0, 1]).is_err());
        assert!(Permutation::from_image(vec![3, 1]).is_err());
        let p = Permutation::parse("2,1,3").unwrap();
        assert_eq!(p.image(), &[2, 1, 3]);
        assert_eq!(p.to_string(), "2,1,3");
        assert!(Permutation::parse("2,x").is_err());
        assert_eq!(Permutation::all(3).len(), 6);
        assert_eq!(Permutation::all(0).len(), 1);
    }

    #[test]
    fn identity_projection_is_the_table() {
        let mut rng = StdRng::seed_from_u64(31);
        for _ in 0..20 {
            let m = rng.random_range(0..=5usize);
            let bits: Vec<u8> = (0..1usize << m).map(|_| rng.random_range(0..=1)).collect();
            let f = bf(&bits, m);
            let seq = project_array(&f, &Permutation::identity(m)).unwrap();
            assert_eq!(seq.values(), f.table());
        }
    }

    #[test]
    fn swap_projection_example() {
        // f = x1 on two variables, pi = (2,1): x1 is weighted by 2
        let f = bf(&[0, 1, 0, 1], 2);
        let seq = project_array(&f, &Permutation::from_image(vec![2, 1]).unwrap()).unwrap();
        assert_eq!(seq, Sequence::from_bits(&[0, 0, 1, 1]).unwrap());
    }

    #[test]
    fn projection_matches_generating_function_substitution() {
        let mut rng = StdRng::seed_from_u64(32);
        for _ in 0..50 {
            let m = rng.random_range(1..=5usize);
            let bits: Vec<u8> = (0..1usize << m).map(|_| rng.random_range(0..=1)).collect();
            let f = bf(&bits, m);
            let perms = Permutation::all(m);
            let perm = &perms[rng.random_range(0..perms.len())];
            let seq = project_array(&f, perm).unwrap();
            let exps: Vec<u32> = (1..=m).map(|k| 1u32 << (perm.apply(k) - 1)).collect();
            assert_eq!(
                generating_function(&f).substitute_powers(&exps).unwrap(),
                seq_generating_function(&seq)
            );
        }
    }

    #[test]
    fn projection_is_a_bijection() {
        for m in 0..=3usize {
            for perm in Permutation::all(m) {
                let mut images = HashSet::new();
                for fi in 0..1u64 << (1 << m) {
                    let f = BooleanFunction::from_index(m, fi).unwrap();
                    let seq = project_array(&f, &perm).unwrap();
                    assert_eq!(unproject_array(&seq, &perm).unwrap(), f);
                    images.insert(seq.value_bits());
                }
                assert_eq!(images.len(), 1 << (1 << m));
            }
        }
    }

    #[test]
    fn type2_pair_projection_examples() {
        let pair = standard_type2_array_pair(&Type2Params::zeros(2));
        let (sf, sg) = project_type2_pair(&pair, &Permutation::identity(2)).unwrap();
        assert_eq!(sf, Sequence::from_bits(&[0, 0, 0, 1]).unwrap());
        assert_eq!(sg, Sequence::from_bits(&[0, 1, 1, 1]).unwrap());
        assert!(is_type2_seq_pair(&sf, &sg).unwrap());

        let primitive = standard_type2_array_pair(&Type2Params::zeros(1));
        let (pf, pg) = project_type2_pair(&primitive, &Permutation::identity(1)).unwrap();
        assert_eq!(pf, Sequence::from_bits(&[0, 0]).unwrap());
        assert_eq!(pg, Sequence::from_bits(&[0, 1]).unwrap());

        // kind gate
        let mixed = standard_mixed_array_pair(&MixedParams::zeros(1));
        assert!(project_type2_pair(&mixed, &Permutation::identity(2)).is_err());
        assert!(project_mixed_pair(&pair, &Permutation::identity(2)).is_err());
    }

    #[test]
    fn standard_family_projection_set_is_permutation_invariant() {
        // the quadratic form is symmetric, so every pi yields the same set
        for m in 1..=4usize {
            let pairs = enumerate_standard_type2(m);
            let mut reference: HashSet<(u64, u64)> = HashSet::new();
            for pair in &pairs {
                let (sf, sg) = project_type2_pair(pair, &Permutation::identity(m)).unwrap();
                reference.insert((sf.value_bits(), sg.value_bits()));
            }
            for perm in Permutation::all(m) {
                let mut set = HashSet::new();
                for pair in &pairs {
                    let (sf, sg) = project_type2_pair(pair, &perm).unwrap();
                    set.insert((sf.value_bits(), sg.value_bits()));
                }
                assert_eq!(set, reference, "m={m} pi={perm}");
            }
        }
    }

    #[test]
    fn mixed_pair_projection_examples() {
        let pair = standard_mixed_array_pair(&MixedParams::zeros(1));
        let (sf, sg) = project_mixed_pair(&pair, &Permutation::identity(1)).unwrap();
        assert_eq!(sf, Sequence::from_bits(&[0, 0, 0, 0]).unwrap());
        assert_eq!(sg, Sequence::from_bits(&[0, 0, 1, 1]).unwrap());
        assert!(is_type3_seq_pair(&sf, &sg).unwrap());

        // m = 0 mixed pairs project to length-2 Type-III pairs
        for index in 0..16u64 {
            let pair = standard_mixed_array_pair(&MixedParams::from_index(0, index).unwrap());
            let (sf, sg) = project_mixed_pair(&pair, &Permutation::identity(0)).unwrap();
            assert_eq!(sf.len(), 2);
            assert!(is_type3_seq_pair(&sf, &sg).unwrap());
        }
    }

    #[test]
    fn mixed_projection_matches_generating_function_substitution() {
        let mut rng = StdRng::seed_from_u64(33);
        for _ in 0..50 {
            let m = rng.random_range(0..=3usize);
            let index = rng.random_range(0..1u64 << (2 * m + 4));
            let pair = standard_mixed_array_pair(&MixedParams::from_index(m, index).unwrap());
            let perms = Permutation::all(m);
            let perm = &perms[rng.random_range(0..perms.len())];
            let (sf, _) = project_mixed_pair(&pair, perm).unwrap();
            // z_k -> z^(2^pi(k)) for the Type-II variables, z0 -> z
            let mut exps: Vec<u32> = (1..=m).map(|k| 1u32 << perm.apply(k)).collect();
            exps.push(1);
            assert_eq!(
                generating_function(pair.f()).substitute_powers(&exps).unwrap(),
                seq_generating_function(&sf)
            );
        }
    }

    #[test]
    fn mixed_unprojection_inverts_projection() {
        for m in 0..=2usize {
            for perm in Permutation::all(m) {
                for fi in 0..1u64 << (1 << (m + 1)) {
                    let f = BooleanFunction::from_index(m + 1, fi).unwrap();
                    let pair =
                        ArrayPair::new(f.clone(), f.clone(), PairKind::Mixed).unwrap();
                    let (sf, _) = project_mixed_pair(&pair, &perm).unwrap();
                    assert_eq!(unproject_mixed(&sf, &perm).unwrap(), f);
                }
            }
        }
    }

    #[test]
    fn type_preservation_on_random_standard_pairs() {
        let mut rng = StdRng::seed_from_u64(34);
        for _ in 0..200 {
            let m = rng.random_range(1..=4usize);
            let index = rng.random_range(0..1u64 << (m + 2));
            let pair = standard_type2_array_pair(&Type2Params::from_index(m, index).unwrap());
            let perms = Permutation::all(m);
            let perm = &perms[rng.random_range(0..perms.len())];
            let (sf, sg) = project_type2_pair(&pair, perm).unwrap();
            assert!(is_type2_seq_pair(&sf, &sg).unwrap());
        }
        for _ in 0..200 {
            let m = rng.random_range(0..=3usize);
            let index = rng.random_range(0..1u64 << (2 * m + 4));
            let pair = standard_mixed_array_pair(&MixedParams::from_index(m, index).unwrap());
            let perms = Permutation::all(m);
            let perm = &perms[rng.random_range(0..perms.len())];
            let (sf, sg) = project_mixed_pair(&pair, perm).unwrap();
            assert!(is_type3_seq_pair(&sf, &sg).unwrap());
        }
    }

    #[test]
    fn mixed_family_projection_set_is_permutation_invariant() {
        // closure check: every pi yields the identity-pi projected set
        for m in 0..=3usize {
            let pairs = enumerate_standard_mixed(m);
            let mut reference: HashSet<(u64, u64)> = HashSet::new();
            for pair in &pairs {
                let (sf, sg) = project_mixed_pair(pair, &Permutation::identity(m)).unwrap();
                reference.insert((sf.value_bits(), sg.value_bits()));
            }
            for perm in Permutation::all(m) {
                let mut set = HashSet::new();
                for pair in &pairs {
                    let (sf, sg) = project_mixed_pair(pair, &perm).unwrap();
                    set.insert((sf.value_bits(), sg.value_bits()));
                }
                assert_eq!(set, reference, "m={m} pi={perm}");
            }
        }
    }
}
