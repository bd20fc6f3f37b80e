//! Complementary-array machinery: generating functions, aperiodic
//! autocorrelation, the four pair predicates and the restriction structure
//! they induce.
//!
//! An m-variable function doubles as a 2 x 2 x ... x 2 array of +-1 entries
//! via (-1)^f. Every predicate here is an exact polynomial identity in
//! [`LaurentPoly`] arithmetic; the correlation-sum formulations are kept in
//! test code as independent oracles.

use crate::boolfun::BooleanFunction;
use crate::error::{Error, Result};
use crate::lpoly::LaurentPoly;

/// Which complementarity predicate a pair is claimed to satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairKind {
    /// Golay pairs: F(z) F(1/z) + G(z) G(1/z) = 2^(m+1).
    TypeI,
    /// F^2 + G^2 = 2 prod (1 + z_k^2).
    TypeII,
    /// F(z) F(-z) + G(z) G(-z) = 2 prod (1 - z_k^2).
    TypeIII,
    /// Type-III in the designated variable x0, Type-II in the others.
    /// By convention x0 is the last stored coordinate.
    Mixed,
}

/// An ordered pair of equal-arity functions with a kind tag.
///
/// `(f, g)` and `(g, f)` are distinct records; deduplication is a
/// presentation concern.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArrayPair {
    f: BooleanFunction,
    g: BooleanFunction,
    kind: PairKind,
}

impl ArrayPair {
    pub fn new(f: BooleanFunction, g: BooleanFunction, kind: PairKind) -> Result<Self> {
        if f.variables() != g.variables() {
            return Err(Error::InvalidInput(format!(
                "pair members have {} and {} variables",
                f.variables(),
                g.variables()
            )));
        }
        if kind == PairKind::Mixed && f.variables() == 0 {
            return Err(Error::InvalidInput(
                "a mixed pair needs at least the x0 variable".into(),
            ));
        }
        Ok(Self { f, g, kind })
    }

    pub fn f(&self) -> &BooleanFunction {
        &self.f
    }

    pub fn g(&self) -> &BooleanFunction {
        &self.g
    }

    pub fn kind(&self) -> PairKind {
        self.kind
    }

    /// Total variable count of each member.
    pub fn variables(&self) -> usize {
        self.f.variables()
    }

    /// 1-based index of the Type-III coordinate (mixed pairs only).
    pub fn x0_index(&self) -> Option<usize> {
        (self.kind == PairKind::Mixed).then_some(self.f.variables())
    }

    /// Evaluate the predicate named by the kind tag.
    pub fn is_complementary(&self) -> bool {
        match self.kind {
            PairKind::TypeI => is_type1_array_pair(&self.f, &self.g),
            PairKind::TypeII => is_type2_array_pair(&self.f, &self.g),
            PairKind::TypeIII => is_type3_array_pair(&self.f, &self.g),
            PairKind::Mixed => is_mixed_pair(&self.f, &self.g),
        }
    }
}

/// Generating function F(z) = sum_x (-1)^f(x) z1^x1 ... zm^xm.
pub fn generating_function(f: &BooleanFunction) -> LaurentPoly {
    let m = f.variables();
    let mut poly = LaurentPoly::zero(m);
    for t in 0..f.len() {
        let exps: Vec<i32> = (0..m).map(|k| (t >> k & 1) as i32).collect();
        let coeff = if f.eval(t) { -1 } else { 1 };
        let term = LaurentPoly::term(m, &exps, coeff).expect("exponent length");
        poly = poly.add(&term).expect("matching nvars");
    }
    poly
}

/// Aperiodic autocorrelation of the array at shift `tau`.
///
/// Summands where x + tau leaves {0,1}^m contribute zero.
pub fn autocorrelation(f: &BooleanFunction, tau: &[i8]) -> i64 {
    let m = f.variables();
    assert_eq!(tau.len(), m, "shift vector length must equal m");
    assert!(
        tau.iter().all(|&t| (-1..=1).contains(&t)),
        "shift components must lie in -1..=1"
    );
    let mut sum = 0i64;
    'outer: for x in 0..f.len() {
        let mut shifted = 0usize;
        for (k, &t) in tau.iter().enumerate() {
            let xk = (x >> k & 1) as i8 + t;
            if !(0..=1).contains(&xk) {
                continue 'outer;
            }
            shifted |= (xk as usize) << k;
        }
        sum += if f.eval(shifted) ^ f.eval(x) { -1 } else { 1 };
    }
    sum
}

/// All 3^m shift vectors over {-1, 0, 1}^m.
pub fn all_shifts(m: usize) -> Vec<Vec<i8>> {
    let mut shifts = vec![vec![]];
    for _ in 0..m {
        shifts = shifts
            .into_iter()
            .flat_map(|s| {
                [-1i8, 0, 1].into_iter().map(move |t| {
                    let mut next = s.clone();
                    next.push(t);
                    next
                })
            })
            .collect();
    }
    shifts
}

fn assert_equal_arity(f: &BooleanFunction, g: &BooleanFunction) -> usize {
    assert_eq!(
        f.variables(),
        g.variables(),
        "pair members must have equal variable counts"
    );
    f.variables()
}

/// Product of `2 * factor(z_k)` terms shared by the predicate right-hand sides.
fn rhs_product(m: usize, factor_coeff: i64) -> LaurentPoly {
    let mut rhs = LaurentPoly::constant(m, 2);
    for k in 0..m {
        let mut exps = vec![0; m];
        exps[k] = 2;
        let factor = LaurentPoly::constant(m, 1)
            .add(&LaurentPoly::term(m, &exps, factor_coeff).expect("term"))
            .expect("nvars");
        rhs = rhs.mul(&factor).expect("nvars");
    }
    rhs
}

/// F(z) F(1/z) + G(z) G(1/z) = 2^(m+1).
pub fn is_type1_array_pair(f: &BooleanFunction, g: &BooleanFunction) -> bool {
    let m = assert_equal_arity(f, g);
    let fp = generating_function(f);
    let gp = generating_function(g);
    let lhs = &(&fp * &fp.invert_vars()) + &(&gp * &gp.invert_vars());
    lhs == LaurentPoly::constant(m, 1 << (m + 1))
}

/// F^2 + G^2 = 2 prod_k (1 + z_k^2).
pub fn is_type2_array_pair(f: &BooleanFunction, g: &BooleanFunction) -> bool {
    let m = assert_equal_arity(f, g);
    let fp = generating_function(f);
    let gp = generating_function(g);
    &(&fp * &fp) + &(&gp * &gp) == rhs_product(m, 1)
}

/// F(z) F(-z) + G(z) G(-z) = 2 prod_k (1 - z_k^2).
pub fn is_type3_array_pair(f: &BooleanFunction, g: &BooleanFunction) -> bool {
    let m = assert_equal_arity(f, g);
    let fp = generating_function(f);
    let gp = generating_function(g);
    let negate_all = |p: &LaurentPoly| {
        let mut q = p.clone();
        for k in 1..=m {
            q = q.negate_var(k).expect("in range");
        }
        q
    };
    &(&fp * &negate_all(&fp)) + &(&gp * &negate_all(&gp)) == rhs_product(m, -1)
}

/// Mixed Type-II/III predicate with x0 stored as the last coordinate:
/// F(z, z0) F(z, -z0) + G(z, z0) G(z, -z0) = 2 (1 - z0^2) prod_k (1 + z_k^2).
pub fn is_mixed_pair(f: &BooleanFunction, g: &BooleanFunction) -> bool {
    let nvars = assert_equal_arity(f, g);
    assert!(nvars >= 1, "a mixed pair needs the x0 variable");
    let x0 = nvars; // 1-based index of the Type-III variable
    let fp = generating_function(f);
    let gp = generating_function(g);
    let lhs = &(&fp * &fp.negate_var(x0).expect("in range"))
        + &(&gp * &gp.negate_var(x0).expect("in range"));

    // 2 * prod over the Type-II variables, widened, times (1 - z0^2)
    let mut rhs = widen(&rhs_product(nvars - 1, 1), nvars);
    let mut exps = vec![0; nvars];
    exps[x0 - 1] = 2;
    let z0_factor = LaurentPoly::constant(nvars, 1)
        .sub(&LaurentPoly::term(nvars, &exps, 1).expect("term"))
        .expect("nvars");
    rhs = rhs.mul(&z0_factor).expect("nvars");
    lhs == rhs
}

/// Reinterpret a polynomial in the first `p.nvars()` variables as one in
/// `nvars` variables (new trailing variables appear with exponent zero).
fn widen(p: &LaurentPoly, nvars: usize) -> LaurentPoly {
    assert!(nvars >= p.nvars());
    let mut out = LaurentPoly::zero(nvars);
    for (exps, &c) in p.terms() {
        let mut wide = exps.clone();
        wide.resize(nvars, 0);
        out = out
            .add(&LaurentPoly::term(nvars, &wide, c).expect("term"))
            .expect("nvars");
    }
    out
}

/// Split f into its restrictions at the last variable: f = (f0, f1) with
/// F(z) = F0 + F1 * z_last as generating functions.
pub fn decompose_last(f: &BooleanFunction) -> Result<(BooleanFunction, BooleanFunction)> {
    let m = f.variables();
    if m == 0 {
        return Err(Error::InvalidInput(
            "cannot decompose a 0-variable function".into(),
        ));
    }
    Ok((f.restrict(m, false)?, f.restrict(m, true)?))
}

/// For a Type-II pair with at least one variable, return the sign K in
/// {+1, -1} such that F1 = K G0 and G1 = -K F0 hold as exact polynomial
/// identities over the restrictions at the last variable.
pub fn type2_pairing_sign(f: &BooleanFunction, g: &BooleanFunction) -> Result<i8> {
    if f.variables() != g.variables() {
        return Err(Error::InvalidInput(
            "pair members must have equal variable counts".into(),
        ));
    }
    if f.variables() == 0 {
        return Err(Error::InvalidInput(
            "pairing sign needs at least one variable".into(),
        ));
    }
    if !is_type2_array_pair(f, g) {
        return Err(Error::InvalidInput(
            "pairing sign is only defined for Type-II pairs".into(),
        ));
    }
    let (f0, f1) = decompose_last(f)?;
    let (g0, g1) = decompose_last(g)?;
    let (fp0, fp1) = (generating_function(&f0), generating_function(&f1));
    let (gp0, gp1) = (generating_function(&g0), generating_function(&g1));
    if fp1 == gp0 && gp1 == -&fp0 {
        Ok(1)
    } else if fp1 == -&gp0 && gp1 == fp0 {
        Ok(-1)
    } else {
        Err(Error::InternalError(
            "Type-II pair admits neither pairing sign".into(),
        ))
    }
}
