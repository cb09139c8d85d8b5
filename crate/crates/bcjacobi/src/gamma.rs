//! Gamma-function ratios of the kind appearing in the evaluation and Pieri
//! formulas. Every ratio used here has either an integer argument offset or
//! an integer multiplicity, so it telescopes into a finite product of linear
//! factors; no gamma function is ever evaluated.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{int, is_integer, to_i64, Rat};

/// Gamma(A - m) Gamma(B) / (Gamma(A) Gamma(B - m)) where
/// A = x_lam - m_half/2 and B = x_zero - m_half/2.
pub(crate) fn upsilon_ratio(x_lam: &Rat, x_zero: &Rat, m_alpha: &Rat, m_half: &Rat) -> Result<Rat> {
    let a = x_lam - m_half / int(2);
    let b = x_zero - m_half / int(2);
    let diff = &a - &b;
    let mut num = int(1);
    let mut den = int(1);
    if is_integer(&diff) {
        let n = to_i64(&diff).ok_or_else(|| Error::DegenerateFactor("offset overflow".into()))?;
        if n >= 0 {
            for t in 0..n {
                num *= &b - m_alpha + int(t);
                den *= &b + int(t);
            }
        } else {
            for t in 0..-n {
                num *= &a + int(t);
                den *= &a - m_alpha + int(t);
            }
        }
    } else if is_integer(m_alpha) {
        let m = to_i64(m_alpha).ok_or_else(|| Error::DegenerateFactor("multiplicity overflow".into()))?;
        if m >= 0 {
            for s in 1..=m {
                num *= &b - int(s);
                den *= &a - int(s);
            }
        } else {
            for t in 0..-m {
                num *= &a + int(t);
                den *= &b + int(t);
            }
        }
    } else {
        return Err(Error::DegenerateFactor(format!(
            "neither the offset {diff} nor the multiplicity {m_alpha} is an integer"
        )));
    }
    if den.is_zero() {
        return Err(Error::DegenerateFactor(format!(
            "zero denominator at A = {a}, B = {b}, m = {m_alpha}"
        )));
    }
    Ok(num / den)
}

/// Guard used by callers before dividing by a formula denominator.
pub(crate) fn nonzero(x: &Rat, what: &str) -> Result<()> {
    if x.is_zero() {
        Err(Error::ZeroDenominator(what.to_string()))
    } else {
        Ok(())
    }
}
