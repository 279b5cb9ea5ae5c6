//! Negative (Hirzebruch–Jung) continued fractions.
//!
//! `[a_1,…,a_n]⁻ = a_1 − 1/(a_2 − 1/(… − 1/a_n))`. Canonical expansions have
//! every term ≥ 2 and are unique with that property; general evaluation
//! admits arbitrary integer terms (needed for the splicing identities used
//! when simplifying vertex-norm sequences).

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// A nonempty sequence of continued-fraction terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegCF {
    terms: Vec<i64>,
}

impl NegCF {
    pub fn new(terms: Vec<i64>) -> Self {
        assert!(!terms.is_empty(), "continued fraction must be nonempty");
        NegCF { terms }
    }

    pub fn terms(&self) -> &[i64] {
        &self.terms
    }
}

/// Canonical expansion of `num/den` with all terms ≥ 2.
///
/// `a = ⌈num/den⌉`, then recurse on `(den, a·den − num)` until the remainder
/// vanishes. Requires `num > den ≥ 1` and `gcd(num, den) = 1`.
pub fn neg_cf_expand(num: i64, den: i64) -> Result<NegCF> {
    if den < 1 || num <= den {
        return Err(Error::InvalidInput(format!(
            "expansion needs num > den >= 1, got {num}/{den}"
        )));
    }
    if num.gcd(&den) != 1 {
        return Err(Error::InvalidInput(format!("{num}/{den} is not reduced")));
    }
    let mut terms = Vec::new();
    let (mut n, mut d) = (num, den);
    while d != 0 {
        let a = n.div_euclid(d) + i64::from(n.rem_euclid(d) != 0); // ⌈n/d⌉
        terms.push(a);
        let r = a * d - n;
        n = d;
        d = r;
    }
    debug_assert!(terms.iter().all(|&a| a >= 2));
    Ok(NegCF::new(terms))
}

/// Exact value of the continued fraction, folding right to left.
pub fn neg_cf_eval(cf: &NegCF) -> Result<BigRational> {
    let mut val: Option<BigRational> = None;
    for &a in cf.terms().iter().rev() {
        let a = BigRational::from_integer(BigInt::from(a));
        val = Some(match val {
            None => a,
            Some(tail) => {
                if tail.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                a - tail.recip()
            }
        });
    }
    Ok(val.expect("NegCF is nonempty"))
}

/// `neg_cf_eval` for a plain term slice.
pub fn eval_terms(terms: &[i64]) -> Result<BigRational> {
    neg_cf_eval(&NegCF::new(terms.to_vec()))
}

/// Convenience: evaluate and demand a reduced fraction `num/den` with
/// `den > 0`.
pub fn eval_as_pair(terms: &[i64]) -> Result<(BigInt, BigInt)> {
    let v = eval_terms(terms)?;
    let (num, den) = (v.numer().clone(), v.denom().clone());
    debug_assert!(den.is_positive());
    Ok((num, den))
}
