//! Exact multivariate Laurent-polynomial arithmetic over the integers.
//!
//! Polynomials are sparse maps from exponent vectors (which may hold negative
//! exponents) to nonzero 64-bit coefficients. Every identity in this crate is
//! checked as exact polynomial equality; there are no tolerances anywhere.
//! For products of generating functions of m-variable arrays the coefficients
//! are bounded by 2^(2m), so 64-bit arithmetic is exact for every feasible m;
//! overflow is a checked error rather than silent wraparound.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// A Laurent polynomial in `nvars` indeterminates z1..z_nvars.
///
/// Canonical form: the term map never stores zero coefficients, and equality
/// is map equality.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, i64>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, value: i64) -> Self {
        let mut terms = BTreeMap::new();
        if value != 0 {
            terms.insert(vec![0; nvars], value);
        }
        Self { nvars, terms }
    }

    /// The single term `coeff * z^exps`.
    pub fn term(nvars: usize, exps: &[i32], coeff: i64) -> Result<Self> {
        if exps.len() != nvars {
            return Err(Error::InvalidInput(format!(
                "exponent vector length {} does not match nvars {}",
                exps.len(),
                nvars
            )));
        }
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(exps.to_vec(), coeff);
        }
        Ok(Self { nvars, terms })
    }

    /// The indeterminate z_k (1-based).
    pub fn var(nvars: usize, k: usize) -> Result<Self> {
        if k == 0 || k > nvars {
            return Err(Error::InvalidInput(format!(
                "variable index {k} out of range 1..={nvars}"
            )));
        }
        let mut exps = vec![0; nvars];
        exps[k - 1] = 1;
        Self::term(nvars, &exps, 1)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Sparse term map in canonical (sorted, zero-free) form.
    pub fn terms(&self) -> &BTreeMap<Vec<i32>, i64> {
        &self.terms
    }

    /// Coefficient of z^exps, zero if absent.
    pub fn coeff(&self, exps: &[i32]) -> i64 {
        self.terms.get(exps).copied().unwrap_or(0)
    }

    fn check_same_nvars(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::InvalidInput(format!(
                "polynomials have {} and {} variables",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_nvars(other)?;
        let mut terms = self.terms.clone();
        for (exps, &c) in &other.terms {
            match terms.get_mut(exps) {
                Some(acc) => {
                    *acc = checked_add(*acc, c)?;
                    if *acc == 0 {
                        terms.remove(exps);
                    }
                }
                None => {
                    terms.insert(exps.clone(), c);
                }
            }
        }
        Ok(Self {
            nvars: self.nvars,
            terms,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1)?)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_nvars(other)?;
        // Accumulate in a hash map, then canonicalize once.
        let mut acc: HashMap<Vec<i32>, i64> =
            HashMap::with_capacity(self.terms.len().max(other.terms.len()));
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let mut exps = Vec::with_capacity(self.nvars);
                for (&a, &b) in ea.iter().zip(eb) {
                    exps.push(a.checked_add(b).ok_or_else(|| {
                        Error::CoefficientOverflow("exponent overflow in mul".into())
                    })?);
                }
                let c = checked_mul(ca, cb)?;
                let slot = acc.entry(exps).or_insert(0);
                *slot = checked_add(*slot, c)?;
            }
        }
        let terms = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        Ok(Self {
            nvars: self.nvars,
            terms,
        })
    }

    pub fn scale(&self, factor: i64) -> Result<Self> {
        if factor == 0 {
            return Ok(Self::zero(self.nvars));
        }
        let mut terms = BTreeMap::new();
        for (exps, &c) in &self.terms {
            terms.insert(exps.clone(), checked_mul(c, factor)?);
        }
        Ok(Self {
            nvars: self.nvars,
            terms,
        })
    }

    /// Substitute z_k -> -z_k: each coefficient picks up (-1)^(exponent of z_k).
    pub fn negate_var(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.nvars {
            return Err(Error::InvalidInput(format!(
                "variable index {k} out of range 1..={}",
                self.nvars
            )));
        }
        let terms = self
            .terms
            .iter()
            .map(|(exps, &c)| {
                let c = if exps[k - 1].rem_euclid(2) == 1 { -c } else { c };
                (exps.clone(), c)
            })
            .collect();
        Ok(Self {
            nvars: self.nvars,
            terms,
        })
    }

    /// Substitute every z_k -> z_k^(-1), negating all exponent vectors.
    pub fn invert_vars(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(exps, &c)| (exps.iter().map(|&e| -e).collect(), c))
            .collect();
        Self {
            nvars: self.nvars,
            terms,
        }
    }

    /// Substitute z_k -> z^(exps\[k\]) for a single new indeterminate z.
    ///
    /// Requires every exponent of `self` to be nonnegative and every entry of
    /// `exps` to be positive; terms that land on the same power merge exactly.
    pub fn substitute_powers(&self, exps: &[u32]) -> Result<Self> {
        if exps.len() != self.nvars {
            return Err(Error::InvalidInput(format!(
                "need {} substitution exponents, got {}",
                self.nvars,
                exps.len()
            )));
        }
        if exps.contains(&0) {
            return Err(Error::InvalidInput(
                "substitution exponents must be positive".into(),
            ));
        }
        let mut acc: BTreeMap<Vec<i32>, i64> = BTreeMap::new();
        for (evec, &c) in &self.terms {
            let mut power: i64 = 0;
            for (&e, &s) in evec.iter().zip(exps) {
                if e < 0 {
                    return Err(Error::Unsupported(
                        "substitute_powers requires nonnegative exponents".into(),
                    ));
                }
                power += e as i64 * s as i64;
            }
            let power = i32::try_from(power).map_err(|_| {
                Error::CoefficientOverflow("exponent overflow in substitute_powers".into())
            })?;
            let slot = acc.entry(vec![power]).or_insert(0);
            *slot = checked_add(*slot, c)?;
        }
        acc.retain(|_, c| *c != 0);
        Ok(Self {
            nvars: 1,
            terms: acc,
        })
    }
}

fn checked_add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b)
        .ok_or_else(|| Error::CoefficientOverflow(format!("{a} + {b} exceeds 64 bits")))
}

fn checked_mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b)
        .ok_or_else(|| Error::CoefficientOverflow(format!("{a} * {b} exceeds 64 bits")))
}

// Operator sugar for contexts where the operands are known to have matching
// variable counts and desk-scale coefficients; panics otherwise.

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: Self) -> LaurentPoly {
        LaurentPoly::add(self, rhs).expect("polynomial addition")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: Self) -> LaurentPoly {
        LaurentPoly::sub(self, rhs).expect("polynomial subtraction")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: Self) -> LaurentPoly {
        LaurentPoly::mul(self, rhs).expect("polynomial multiplication")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1).expect("polynomial negation")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .terms
            .iter()
            .map(|(exps, &c)| {
                let vars: Vec<String> = exps
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e != 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            format!("z{}", i + 1)
                        } else {
                            format!("z{}^{}", i + 1, e)
                        }
                    })
                    .collect();
                if vars.is_empty() {
                    format!("{c}")
                } else {
                    format!("{}*{}", c, vars.join("*"))
                }
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({} vars: {})", self.nvars, self)
    }
}
