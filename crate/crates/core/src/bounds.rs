//! Closed-form exponents and bounds for degree Ramsey numbers of even
//! cycles `C_2k`.

use std::fmt::Write as _;

use num_rational::Ratio;
use num_traits::{CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

/// 1 when `k` is even, 0 when odd.
pub fn parity_delta(k: u32) -> i64 {
    i64::from(k.is_multiple_of(2))
}

fn check_k(k: u32) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!(
            "k must be at least 2, got {k}"
        )));
    }
    Ok(())
}

/// Exponent `1 + 2/(3k - 5 + delta)` of the lower bound
/// `R_Δ(C_2k, s) = Ω((s / log s)^e)`.
pub fn lower_bound_exponent(k: u32) -> Result<Rational> {
    check_k(k)?;
    Ok(Rational::one() + Rational::new(2, 3 * i64::from(k) - 5 + parity_delta(k)))
}

/// Exponent `1 - 2/(3k - 3 + delta)` of the number of girth `> 2k` parts
/// needed for `K_n` (up to a log factor) by random copies of a dense seed.
pub fn cover_rate_exponent(k: u32) -> Result<Rational> {
    check_k(k)?;
    Ok(Rational::one() - Rational::new(2, 3 * i64::from(k) - 3 + parity_delta(k)))
}

/// Exponent of the known tight order `Θ(s^e)` for `k` in {2, 3, 5}.
pub fn tight_exponent(k: u32) -> Option<Rational> {
    match k {
        2 => Some(Rational::from_integer(2)),
        3 => Some(Rational::new(3, 2)),
        5 => Some(Rational::new(5, 4)),
        _ => None,
    }
}

/// Upper-bound exponent `1 + 1/(k - 1)`.
pub fn upper_bound_exponent(k: u32) -> Result<Rational> {
    check_k(k)?;
    Ok(Rational::one() + Rational::new(1, i64::from(k) - 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundQuery {
    pub k: u32,
    pub s: u64,
    /// Turán constant with `ex(n, C_2k) <= c_k n^(1 + 1/k)` scaled as in
    /// `c_k n^(1 - 1/k) > s`. No default exists.
    pub c_k: Option<Rational>,
}

impl BoundQuery {
    fn base(&self) -> Result<Rational> {
        check_k(self.k)?;
        if self.s < 1 {
            return Err(Error::InvalidArgument("s must be at least 1".into()));
        }
        let c = self.c_k.ok_or(Error::MissingTuranConstant)?;
        if !c.is_positive() {
            return Err(Error::InvalidArgument(format!(
                "c_k must be positive, got {c}"
            )));
        }
        let s = i64::try_from(self.s).map_err(|_| Error::InvalidArgument("s too large".into()))?;
        Ok(Rational::from_integer(s) / c)
    }
}

/// `(s / c_k)^(1 + 1/(k-1)) - 1`.
pub fn upper_bound(q: &BoundQuery) -> Result<f64> {
    let x = q.base()?;
    let e = upper_bound_exponent(q.k)?;
    let xf = x.to_f64().unwrap_or(f64::NAN);
    Ok(xf.powf(e.to_f64().unwrap_or(f64::NAN)) - 1.0)
}

/// [`upper_bound`] as an exact rational, when `(s / c_k)^(1/(k-1))` is
/// rational and the result fits in `i64`.
pub fn upper_bound_exact(q: &BoundQuery) -> Result<Option<Rational>> {
    let x = q.base()?;
    let r = q.k - 1;
    let (Some(num), Some(den)) = (exact_root(*x.numer(), r), exact_root(*x.denom(), r)) else {
        return Ok(None);
    };
    let root = Rational::new(num, den);
    Ok(x.checked_mul(&root)
        .and_then(|v| v.checked_sub(&Rational::one())))
}

fn exact_root(v: i64, r: u32) -> Option<i64> {
    if v < 0 {
        return None;
    }
    if v.is_zero() || r == 1 {
        return Some(v);
    }
    let guess = (v as f64).powf(1.0 / f64::from(r)).round() as i64;
    (guess.saturating_sub(1)..=guess + 1).find(|&c| c >= 0 && c.checked_pow(r) == Some(v))
}

/// Human-readable summary of all bounds known for `C_2k`.
pub fn bounds_report(q: &BoundQuery) -> Result<String> {
    let lower = lower_bound_exponent(q.k)?;
    let mut s = String::new();
    let _ = writeln!(s, "report: bounds");
    let _ = writeln!(s, "log: natural");
    let _ = writeln!(s, "cycle: C{}", 2 * q.k);
    let _ = writeln!(s, "k: {}", q.k);
    let _ = writeln!(s, "s: {}", q.s);
    let _ = writeln!(s, "delta: {}", parity_delta(q.k));
    let _ = writeln!(s, "lower_bound_exponent: {lower}");
    let _ = writeln!(
        s,
        "lower_bound: R_Δ(C{}, s) = Ω((s/ln s)^({lower}))",
        2 * q.k
    );
    if q.s >= 2 {
        let sf = q.s as f64;
        let _ = writeln!(
            s,
            "lower_bound_shape: {:.6}",
            (sf / sf.ln()).powf(lower.to_f64().unwrap_or(f64::NAN))
        );
    }
    match tight_exponent(q.k) {
        Some(t) => {
            let _ = writeln!(s, "tight_order: R_Δ(C{}, s) = Θ(s^({t}))", 2 * q.k);
        }
        None => {
            let _ = writeln!(s, "tight_order: unknown");
        }
    }
    let _ = writeln!(s, "cover_rate_exponent: {}", cover_rate_exponent(q.k)?);
    let _ = writeln!(s, "upper_bound_exponent: {}", upper_bound_exponent(q.k)?);
    match q.c_k {
        Some(c) => {
            let _ = writeln!(s, "c_k: {c}");
            let _ = writeln!(s, "upper_bound: {}", upper_bound(q)?);
            if let Some(v) = upper_bound_exact(q)? {
                let _ = writeln!(s, "upper_bound_exact: {v}");
            }
        }
        None => {
            let _ = writeln!(s, "upper_bound: requires --ck (no default Turán constant)");
        }
    }
    let _ = writeln!(
        s,
        "general_form: if ex(n, L_F) = Ω(n^(1+η)) then R_Δ(F, s) = Ω((s/ln s)^(1/(1-η))) for η < 1, \
         and 2^Ω(s^(1/4)) for η = 1"
    );
    Ok(s)
}
