//! Truncated Laurent series with polynomial coefficients.
//!
//! A `Series` stores dense coefficients for orders `low ..= trunc` of a formal
//! Laurent series in one variable. The invariant read on the data is:
//!
//! - coefficients below `low` are exactly zero;
//! - coefficients in `low ..= trunc` are exactly the stored polynomials;
//! - coefficients above `trunc` are unknown.
//!
//! Every operation propagates the truncation window conservatively: the
//! result's window is the largest range provably exact given the inputs (for
//! a product, `min(trunc_a + val_b, trunc_b + val_a)` where `val` is the
//! order of the first nonzero known coefficient). Asking for a coefficient
//! outside the window is an error, never a silent zero — recomputing any
//! pipeline at a higher truncation and truncating the result must agree with
//! the lower-truncation run.
//!
//! `exp`, `log`, `pow` (rational exponents), `compose` and `reverse` check
//! their classical preconditions exactly and report violations as errors.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::{json, Value};

use crate::poly::Poly;
use crate::rational::Rational;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct Series {
    low: i64,
    coeffs: Vec<Poly>, // orders low ..= low + len - 1; never empty
}

impl Series {
    /// The zero series, exact through order `trunc`.
    pub fn zero(trunc: i64) -> Series {
        let low = trunc.min(0);
        let len = usize::try_from(trunc - low + 1).expect("window fits usize");
        Series {
            low,
            coeffs: vec![Poly::zero(); len],
        }
    }

    /// A constant, exact through order `trunc >= 0`.
    pub fn constant(p: Poly, trunc: i64) -> Series {
        assert!(trunc >= 0, "constant series needs trunc >= 0");
        let mut s = Series::zero(trunc);
        s.coeffs[0] = p;
        s
    }

    /// The variable `z`, exact through order `trunc >= 1`.
    pub fn var_z(trunc: i64) -> Series {
        Series::monomial(1, Poly::one(), trunc)
    }

    /// `p * z^n`, exact through order `trunc >= n`.
    pub fn monomial(n: i64, p: Poly, trunc: i64) -> Series {
        assert!(trunc >= n, "monomial above truncation");
        let len = usize::try_from(trunc - n + 1).expect("window fits usize");
        let mut coeffs = vec![Poly::zero(); len];
        coeffs[0] = p;
        Series { low: n, coeffs }
    }

    /// Builds from explicit coefficients for orders `low ..= low + len - 1`.
    pub fn from_coeffs(low: i64, coeffs: Vec<Poly>) -> Series {
        assert!(!coeffs.is_empty(), "series window must be nonempty");
        Series { low, coeffs }
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn trunc(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    /// Order of the first nonzero known coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|p| !p.is_zero())
            .map(|i| self.low + i as i64)
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    /// The coefficient of `z^n`; an error outside the exact window.
    pub fn coeff(&self, n: i64) -> Result<Poly> {
        if n < self.low || n > self.trunc() {
            return Err(Error::CoeffBeyondTruncation {
                n,
                low: self.low,
                trunc: self.trunc(),
            });
        }
        Ok(self.coeffs[(n - self.low) as usize].clone())
    }

    fn coeff_known(&self, n: i64) -> Poly {
        if n < self.low || n > self.trunc() {
            Poly::zero()
        } else {
            self.coeffs[(n - self.low) as usize].clone()
        }
    }

    /// `(order, coefficient)` pairs over the exact window.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &Poly)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, p)| (self.low + i as i64, p))
    }

    /// Lowers the claimed truncation to `t` (no-op if already lower).
    pub fn truncate_to(&self, t: i64) -> Series {
        if t >= self.trunc() {
            return self.clone();
        }
        if t < self.low {
            return Series::zero(t);
        }
        let len = (t - self.low + 1) as usize;
        Series {
            low: self.low,
            coeffs: self.coeffs[..len].to_vec(),
        }
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: i64) -> Series {
        Series {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Series {
        self.map_coeffs(|p| p.scale(r))
    }

    pub fn scale_poly(&self, q: &Poly) -> Series {
        self.map_coeffs(|p| p * q)
    }

    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> Series {
        Series {
            low: self.low,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Termwise derivative `d/dz`; the window shifts down by one.
    pub fn derivative(&self) -> Series {
        Series {
            low: self.low - 1,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, p)| p.scale(&Rational::int(self.low + i as i64)))
                .collect(),
        }
    }

    /// Multiplicative inverse via the standard coefficient recurrence.
    ///
    /// Requires the leading known coefficient to be an invertible constant;
    /// the result is exact through `trunc - 2*val`.
    pub fn reciprocal(&self) -> Result<Series> {
        let va = self
            .valuation()
            .ok_or_else(|| Error::LeadingNotUnit("0".to_string()))?;
        let lead = self.coeff_known(va);
        let lead_const = lead
            .as_constant()
            .filter(|r| !r.is_zero())
            .ok_or_else(|| Error::LeadingNotUnit(lead.to_string()))?;
        let inv_lead = lead_const.recip().expect("nonzero");
        // Normalized tail u_i = a_{va+i} / lead, u_0 = 1.
        let m = (self.trunc() - va) as usize;
        let u: Vec<Poly> = (0..=m)
            .map(|i| self.coeff_known(va + i as i64).scale(&inv_lead))
            .collect();
        let mut b: Vec<Poly> = Vec::with_capacity(m + 1);
        b.push(Poly::one());
        for n in 1..=m {
            let mut acc = Poly::zero();
            for k in 1..=n {
                acc.add_assign(&(&u[k] * &b[n - k]));
            }
            b.push(-&acc);
        }
        Ok(Series {
            low: -va,
            coeffs: b.iter().map(|p| p.scale(&inv_lead)).collect(),
        })
    }

    /// `exp` of a series with no constant or negative-order terms, via the
    /// coefficient recurrence `n h_n = sum_j j u_j h_{n-j}` (intermediates
    /// are the partial answers, never raw powers of the argument).
    pub fn exp(&self) -> Result<Series> {
        if let Some(v) = self.valuation() {
            if v <= 0 {
                return Err(Error::ExpLowOrder(self.coeff_known(v).to_string(), v));
            }
        }
        let t = self.trunc();
        if t < 0 {
            return Ok(Series::zero(t));
        }
        let u: Vec<Poly> = (0..=t).map(|j| self.coeff_known(j)).collect();
        let mut h: Vec<Poly> = Vec::with_capacity(u.len());
        h.push(Poly::one());
        for n in 1..=t as usize {
            let mut acc = Poly::zero();
            for j in 1..=n {
                if u[j].is_zero() {
                    continue;
                }
                acc.add_assign(&(&u[j].scale(&Rational::int(j as i64)) * &h[n - j]));
            }
            h.push(acc.scale(&Rational::new(1, n as i64)));
        }
        Ok(Series::from_coeffs(0, h))
    }

    /// `log` of a series with constant term exactly 1, via the recurrence
    /// `n u_n = n h_n - sum_{j<n} j u_j h_{n-j}`.
    pub fn log(&self) -> Result<Series> {
        let t = self.trunc();
        let c0 = if self.low <= 0 && t >= 0 {
            self.coeff_known(0)
        } else {
            Poly::zero()
        };
        if let Some(v) = self.valuation() {
            if v < 0 || c0 != Poly::one() {
                let order = if v < 0 { v } else { 0 };
                return Err(Error::LogConstantTerm(
                    self.coeff_known(order).to_string(),
                    order,
                ));
            }
        } else {
            return Err(Error::LogConstantTerm("0".to_string(), 0));
        }
        let h: Vec<Poly> = (0..=t).map(|n| self.coeff_known(n)).collect();
        let mut u: Vec<Poly> = Vec::with_capacity(h.len());
        u.push(Poly::zero());
        for n in 1..=t as usize {
            let mut acc = h[n].scale(&Rational::int(n as i64));
            for j in 1..n {
                if u[j].is_zero() || h[n - j].is_zero() {
                    continue;
                }
                acc.add_assign(&-&(&u[j].scale(&Rational::int(j as i64)) * &h[n - j]));
            }
            u.push(acc.scale(&Rational::new(1, n as i64)));
        }
        Ok(Series::from_coeffs(0, u))
    }

    /// Integer power by repeated multiplication (negative via `reciprocal`).
    pub fn powi(&self, e: i64) -> Result<Series> {
        let base = if e < 0 {
            self.reciprocal()?
        } else {
            self.clone()
        };
        let n = e.unsigned_abs();
        if n == 0 {
            return Ok(Series::constant(Poly::one(), self.trunc().max(0)));
        }
        let mut acc = base.clone();
        for _ in 1..n {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Rational power `a^e`, realized as `lead^e * z^(e*val) * exp(e*log(1+u))`
    /// after factoring out the leading monomial `lead * z^val`.
    ///
    /// Errors: non-unit leading coefficient, `e*val` not an integer, or a
    /// leading constant without an exact rational `e`-th power.
    pub fn pow(&self, e: &Rational) -> Result<Series> {
        let va = match self.valuation() {
            Some(v) => v,
            None => {
                return if e.as_i64().map(|i| i > 0).unwrap_or(false) {
                    Ok(Series::zero(self.trunc()))
                } else {
                    Err(Error::LeadingNotUnit("0".to_string()))
                };
            }
        };
        let lead = self.coeff_known(va);
        let lead_const = lead
            .as_constant()
            .filter(|r| !r.is_zero())
            .ok_or_else(|| Error::LeadingNotUnit(lead.to_string()))?;
        let shifted_exp = e * &Rational::int(va);
        let es = shifted_exp
            .as_i64()
            .ok_or_else(|| Error::NonIntegralLeadingExponent {
                low: va,
                exp: e.to_string(),
            })?;
        let lead_pow = lead_const.pow_rational(e)?;
        let inv_lead = lead_const.recip().expect("nonzero");
        // 1 + u, exact through trunc - va.
        let m = (self.trunc() - va) as usize;
        let unit = Series::from_coeffs(
            0,
            (0..=m)
                .map(|i| self.coeff_known(va + i as i64).scale(&inv_lead))
                .collect(),
        );
        let powered = unit.log()?.scale(e).exp()?;
        Ok(powered.shift(es).scale(&lead_pow))
    }

    /// Composition `outer(inner)`; `inner` must have valuation >= 1 and
    /// `outer` no negative-order terms.
    pub fn compose(outer: &Series, inner: &Series) -> Result<Series> {
        if let Some(v) = outer.valuation() {
            if v < 0 {
                return Err(Error::ComposeOuterOrder(v));
            }
        }
        let ti = inner.trunc();
        let to = outer.trunc();
        let v = match inner.valuation() {
            Some(v) if v >= 1 => v,
            Some(v) => return Err(Error::ComposeInnerOrder(v)),
            // Inner is known-zero: only outer's constant term survives.
            None => {
                let c0 = if outer.low <= 0 {
                    outer.coeff_known(0)
                } else {
                    Poly::zero()
                };
                return Ok(Series::constant(c0, ti.max(0)));
            }
        };
        // Unknown outer tail enters at order (to+1) * v; unknown inner tail at
        // ti + 1 (through any k >= 1 power).
        let t = ti.min((to + 1) * v - 1);
        if t < 0 {
            return Ok(Series::zero(t));
        }
        let mut acc = Series::constant(outer.coeff_known(0), t);
        let mut power = Series::constant(Poly::one(), t);
        let mut k: i64 = 1;
        while k * v <= t && k <= to {
            power = (&power * inner).truncate_to(t);
            acc = &acc + &power.scale_poly(&outer.coeff_known(k));
            k += 1;
        }
        Ok(acc.truncate_to(t))
    }

    /// Compositional inverse of `z + O(z^2)` by Newton iteration on
    /// `compose`: each step solves `self(g) = z` to twice the previous order.
    pub fn reverse(&self) -> Result<Series> {
        let bad = || {
            let v = self.valuation().unwrap_or(self.low);
            Error::ReverseNormalization(self.coeff_known(v).to_string(), v)
        };
        match self.valuation() {
            Some(1) if self.coeff_known(1) == Poly::one() => {}
            _ => return Err(bad()),
        }
        let t = self.trunc();
        let z = Series::var_z(t);
        let deriv = self.derivative();
        let mut g = Series::var_z(t);
        for _ in 0..usize::try_from(t).unwrap_or(0).max(1) + 2 {
            let err = &Series::compose(self, &g)? - &z;
            if err.is_zero() {
                return Ok(g);
            }
            let slope = Series::compose(&deriv, &g)?.reciprocal()?;
            g = &g - &(&err * &slope).truncate_to(t);
        }
        unreachable!("Newton iteration for series reversal failed to converge");
    }

    /// Applies a polynomial substitution to every coefficient.
    pub fn substitute_c<F: FnMut(u16) -> Poly>(&self, mut f: F) -> Series {
        Series {
            low: self.low,
            coeffs: self.coeffs.iter().map(|p| p.substitute_c(&mut f)).collect(),
        }
    }

    /// Canonical text rendering: coefficient terms ascending in the order of
    /// `z`, multi-term coefficients parenthesized.
    pub fn to_text(&self, var: &str, letter: char) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (n, p) in self.iter() {
            if p.is_zero() {
                continue;
            }
            let ptxt = p.to_text(letter);
            let wrapped = if p.num_terms() > 1 {
                format!("({ptxt})")
            } else {
                ptxt
            };
            let term = match n {
                0 => wrapped,
                1 => format!("{wrapped}*{var}"),
                _ => format!("{wrapped}*{var}^{n}"),
            };
            parts.push(term);
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }

    /// JSON rendering: `{"var": ..., "low": n0, "coeffs": [...]}` with one
    /// polynomial per order from `low` upward.
    pub fn to_json(&self, var: &str) -> Value {
        json!({
            "var": var,
            "low": self.low,
            "coeffs": self.coeffs.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Series> {
        let bad = |detail: &str| Error::InvalidJson {
            what: "Series",
            detail: detail.to_string(),
        };
        let low = v
            .get("low")
            .and_then(|x| x.as_i64())
            .ok_or_else(|| bad("missing low"))?;
        let arr = v
            .get("coeffs")
            .and_then(|x| x.as_array())
            .ok_or_else(|| bad("missing coeffs"))?;
        if arr.is_empty() {
            return Err(bad("empty coeffs"));
        }
        let coeffs = arr
            .iter()
            .map(Poly::from_json)
            .collect::<Result<Vec<_>>>()?;
        Ok(Series { low, coeffs })
    }
}

/// Mathematical equality: same truncation claim and the same coefficients
/// (window padding with zeros is irrelevant).
impl PartialEq for Series {
    fn eq(&self, other: &Self) -> bool {
        if self.trunc() != other.trunc() {
            return false;
        }
        let lo = self.low.min(other.low);
        (lo..=self.trunc()).all(|n| self.coeff_known(n) == other.coeff_known(n))
    }
}

impl Eq for Series {}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        let low = self.low.min(rhs.low);
        let trunc = self.trunc().min(rhs.trunc());
        let len = usize::try_from(trunc - low + 1).expect("nonempty window");
        let coeffs = (0..len)
            .map(|i| {
                let n = low + i as i64;
                &self.coeff_known(n) + &rhs.coeff_known(n)
            })
            .collect();
        Series { low, coeffs }
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        self + &(-rhs)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.map_coeffs(|p| -p)
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        let (ta, tb) = (self.trunc(), rhs.trunc());
        let (va, vb) = (self.valuation(), rhs.valuation());
        // Pollution starts at the earliest product of an unknown tail with a
        // nonzero known part (or of the two tails).
        let mut exact_through = ta + tb + 1;
        if let Some(vb) = vb {
            exact_through = exact_through.min(ta + vb);
        }
        if let Some(va) = va {
            exact_through = exact_through.min(tb + va);
        }
        let (va, vb) = match (va, vb) {
            (Some(va), Some(vb)) => (va, vb),
            // Known part of the product is identically zero.
            _ => return Series::zero(exact_through),
        };
        let low = va + vb;
        let trunc = exact_through;
        let len = usize::try_from(trunc - low + 1).expect("nonempty window");
        let mut coeffs = vec![Poly::zero(); len];
        for (na, pa) in self.iter() {
            if pa.is_zero() {
                continue;
            }
            for (nb, pb) in rhs.iter() {
                let n = na + nb;
                if n < low || n > trunc || pb.is_zero() {
                    continue;
                }
                coeffs[(n - low) as usize].add_assign(&(pa * pb));
            }
        }
        Series { low, coeffs }
    }
}

macro_rules! forward_owned_series_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Series {
            type Output = Series;
            fn $method(self, rhs: Series) -> Series {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_series_binop!(Add, add);
forward_owned_series_binop!(Sub, sub);
forward_owned_series_binop!(Mul, mul);

impl Neg for Series {
    type Output = Series;
    fn neg(self) -> Series {
        -&self
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text("z", 'c'))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(j: u16) -> Poly {
        Poly::var(j)
    }

    #[test]
    fn mul_examples() {
        let one = Series::constant(Poly::one(), 5);
        let z = Series::var_z(5);
        let a = &one + &z;
        let b = &one - &z;
        let prod = &a * &b;
        assert_eq!(prod.coeff(0).unwrap(), Poly::one());
        assert_eq!(prod.coeff(1).unwrap(), Poly::zero());
        assert_eq!(prod.coeff(2).unwrap(), -&Poly::one());
        assert_eq!(prod.trunc(), 5);

        // (z^-1 + 1) * z = 1 + z; z must be known through order 2 for the
        // product to be exact through order 1 (its unknown z^2 tail times
        // z^-1 pollutes order 1 otherwise).
        let laurent = Series::from_coeffs(-1, vec![Poly::one(), Poly::one()]);
        let shifted = &laurent * &Series::var_z(2);
        assert_eq!(shifted.coeff(0).unwrap(), Poly::one());
        assert_eq!(shifted.coeff(1).unwrap(), Poly::one());
        assert_eq!(shifted.trunc(), 1);
        assert_eq!((&laurent * &Series::var_z(1)).trunc(), 0);
    }

    #[test]
    fn mul_truncation_is_conservative() {
        // Knowing 1/(1-z) only to z^3 and (1-z) to z^1 pins the product only
        // to z^1.
        let a = Series::from_coeffs(0, vec![Poly::one(); 4]);
        let b = Series::from_coeffs(0, vec![Poly::one(), -&Poly::one()]);
        let p = &a * &b;
        assert_eq!(p.trunc(), 1);
        assert!(p.coeff(2).is_err());
    }

    #[test]
    fn reciprocal_examples() {
        // 1/(1-z) to z^3
        let a = &Series::constant(Poly::one(), 3) - &Series::var_z(3);
        let r = a.reciprocal().unwrap();
        for n in 0..=3 {
            assert_eq!(r.coeff(n).unwrap(), Poly::one());
        }
        // 1/(1 + c1 z) = 1 - c1 z + c1^2 z^2
        let b = &Series::constant(Poly::one(), 2) + &Series::monomial(1, c(1), 2);
        let rb = b.reciprocal().unwrap();
        assert_eq!(rb.coeff(1).unwrap(), -&c(1));
        assert_eq!(rb.coeff(2).unwrap(), &c(1) * &c(1));
        // 1/z = z^-1
        let z = Series::var_z(3);
        let rz = z.reciprocal().unwrap();
        assert_eq!(rz.low(), -1);
        assert_eq!(rz.coeff(-1).unwrap(), Poly::one());
        // failure: leading coefficient c1 is not a unit
        let bad = Series::monomial(0, c(1), 2);
        assert!(matches!(bad.reciprocal(), Err(Error::LeadingNotUnit(_))));
        let a_times = &a * &a.reciprocal().unwrap();
        assert_eq!(a_times.coeff(0).unwrap(), Poly::one());
        assert_eq!(a_times.coeff(1).unwrap(), Poly::zero());
    }

    #[test]
    fn exp_log_examples() {
        // log(1+z) = z - z^2/2 + z^3/3
        let a = &Series::constant(Poly::one(), 3) + &Series::var_z(3);
        let l = a.log().unwrap();
        assert_eq!(l.coeff(1).unwrap(), Poly::one());
        assert_eq!(l.coeff(2).unwrap(), Poly::constant(Rational::new(-1, 2)));
        assert_eq!(l.coeff(3).unwrap(), Poly::constant(Rational::new(1, 3)));

        // exp(-c1 z) = 1 - c1 z + c1^2/2 z^2
        let e = Series::monomial(1, -&c(1), 2).exp().unwrap();
        assert_eq!(e.coeff(0).unwrap(), Poly::one());
        assert_eq!(e.coeff(1).unwrap(), -&c(1));
        assert_eq!(
            e.coeff(2).unwrap(),
            (&c(1) * &c(1)).scale(&Rational::new(1, 2))
        );

        // exp(log(1 + c1 z + c2 z^2)) round-trips.
        let s = Series::from_coeffs(0, vec![Poly::one(), c(1), c(2)]);
        assert_eq!(s.log().unwrap().exp().unwrap(), s);

        // contract violations
        assert!(matches!(
            Series::constant(Poly::one(), 2).exp(),
            Err(Error::ExpLowOrder(_, 0))
        ));
        assert!(matches!(
            (&Series::constant(Poly::int(2), 2)).log(),
            Err(Error::LogConstantTerm(_, 0))
        ));
    }

    #[test]
    fn pow_examples() {
        // (1+z)^-2 = 1 - 2z + 3z^2
        let a = &Series::constant(Poly::one(), 2) + &Series::var_z(2);
        let p = a.pow(&Rational::int(-2)).unwrap();
        assert_eq!(p.coeff(0).unwrap(), Poly::one());
        assert_eq!(p.coeff(1).unwrap(), Poly::int(-2));
        assert_eq!(p.coeff(2).unwrap(), Poly::int(3));

        // (1 + c1 z)^(1/2) = 1 + c1/2 z - c1^2/8 z^2
        let b = &Series::constant(Poly::one(), 2) + &Series::monomial(1, c(1), 2);
        let h = b.pow(&Rational::new(1, 2)).unwrap();
        assert_eq!(h.coeff(1).unwrap(), c(1).scale(&Rational::new(1, 2)));
        assert_eq!(
            h.coeff(2).unwrap(),
            (&c(1) * &c(1)).scale(&Rational::new(-1, 8))
        );

        // (z + c1 z^2)^3 starts at z^3
        let f = &Series::var_z(4) + &Series::monomial(2, c(1), 4);
        let cube = f.pow(&Rational::int(3)).unwrap();
        assert_eq!(cube.low(), 3);
        assert_eq!(cube.coeff(3).unwrap(), Poly::one());
        assert_eq!(cube.coeff(4).unwrap(), c(1).scale(&Rational::int(3)));
        assert_eq!(cube, f.powi(3).unwrap().truncate_to(cube.trunc()));

        // z^(1/2) has a non-integral leading exponent
        assert!(matches!(
            Series::var_z(3).pow(&Rational::new(1, 2)),
            Err(Error::NonIntegralLeadingExponent { low: 1, .. })
        ));
        // (4 + z)^(1/2) works: exact square root of the lead
        let four = &Series::constant(Poly::int(4), 2) + &Series::var_z(2);
        let root = four.pow(&Rational::new(1, 2)).unwrap();
        assert_eq!(root.coeff(0).unwrap(), Poly::int(2));
        // (2 + z)^(1/2) does not
        let two = &Series::constant(Poly::int(2), 2) + &Series::var_z(2);
        assert!(matches!(
            two.pow(&Rational::new(1, 2)),
            Err(Error::NoExactRoot { .. })
        ));
    }

    #[test]
    fn compose_examples() {
        // 1/(1-w) composed with w = z + z^2: geometric resummation.
        let outer = Series::from_coeffs(0, vec![Poly::one(); 4]);
        let inner = &Series::var_z(3) + &Series::monomial(2, Poly::one(), 3);
        let comp = Series::compose(&outer, &inner).unwrap();
        assert_eq!(comp.coeff(0).unwrap(), Poly::one());
        assert_eq!(comp.coeff(1).unwrap(), Poly::one());
        assert_eq!(comp.coeff(2).unwrap(), Poly::int(2));
        assert_eq!(comp.coeff(3).unwrap(), Poly::int(3));

        // w^2 composed with z + c1 z^2 = z^2 + 2 c1 z^3 + ...
        let sq = Series::monomial(2, Poly::one(), 3);
        let f = &Series::var_z(3) + &Series::monomial(2, c(1), 3);
        let comp2 = Series::compose(&sq, &f).unwrap();
        assert_eq!(comp2.coeff(2).unwrap(), Poly::one());
        assert_eq!(comp2.coeff(3).unwrap(), c(1).scale(&Rational::int(2)));

        // identity outer
        let id = Series::var_z(3);
        assert_eq!(Series::compose(&id, &f).unwrap(), f);

        // inner with constant term is rejected
        let bad_inner = Series::constant(Poly::one(), 3);
        assert!(matches!(
            Series::compose(&outer, &bad_inner),
            Err(Error::ComposeInnerOrder(0))
        ));
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(Series::var_z(5).reverse().unwrap(), Series::var_z(5));

        // reverse(z + z^2) = z - z^2 + 2z^3 - 5z^4 (Catalan signs)
        let a = &Series::var_z(4) + &Series::monomial(2, Poly::one(), 4);
        let g = a.reverse().unwrap();
        assert_eq!(g.coeff(2).unwrap(), Poly::int(-1));
        assert_eq!(g.coeff(3).unwrap(), Poly::int(2));
        assert_eq!(g.coeff(4).unwrap(), Poly::int(-5));

        // reverse(z + c1 z^2) = z - c1 z^2 + 2 c1^2 z^3
        let b = &Series::var_z(3) + &Series::monomial(2, c(1), 3);
        let gb = b.reverse().unwrap();
        assert_eq!(gb.coeff(2).unwrap(), -&c(1));
        assert_eq!(
            gb.coeff(3).unwrap(),
            (&c(1) * &c(1)).scale(&Rational::int(2))
        );
        // defining property
        let check = Series::compose(&b, &gb).unwrap();
        assert_eq!(check, Series::var_z(check.trunc()));

        assert!(matches!(
            (&Series::var_z(3) + &Series::constant(Poly::one(), 3)).reverse(),
            Err(Error::ReverseNormalization(..))
        ));
    }

    /// Lagrange inversion: [z^n] reverse(a) = (1/n) [w^(n-1)] (w/a(w))^n.
    #[test]
    fn reverse_matches_lagrange_inversion() {
        let trunc = 6;
        let mut f = Series::var_z(trunc);
        f = &f + &Series::monomial(2, c(1), trunc);
        f = &f + &Series::monomial(3, c(2), trunc);
        let g = f.reverse().unwrap();
        for n in 1..=trunc {
            let ratio = (&Series::var_z(trunc) * &f.reciprocal().unwrap()).truncate_to(trunc);
            let powed = ratio.powi(n).unwrap();
            let lagrange = powed.coeff(n - 1).unwrap().scale(&Rational::new(1, n));
            assert_eq!(g.coeff(n).unwrap(), lagrange, "order {n}");
        }
    }

    #[test]
    fn coeff_window_contract() {
        let one_plus_z = &Series::constant(Poly::one(), 3) + &Series::var_z(3);
        assert!(matches!(
            one_plus_z.coeff(5),
            Err(Error::CoeffBeyondTruncation { n: 5, .. })
        ));
        let laurent = Series::monomial(-1, Poly::one(), 2);
        assert_eq!(laurent.coeff(-1).unwrap(), Poly::one());
    }

    #[test]
    fn derivative_examples() {
        // d/dz (z^-1 + c1 z^2) = -z^-2 + 2 c1 z
        let s = &Series::monomial(-1, Poly::one(), 2) + &Series::monomial(2, c(1), 2);
        let d = s.derivative();
        assert_eq!(d.coeff(-2).unwrap(), Poly::int(-1));
        assert_eq!(d.coeff(1).unwrap(), c(1).scale(&Rational::int(2)));
        assert_eq!(d.trunc(), 1);
    }

    #[test]
    fn text_and_json() {
        let s = &Series::monomial(
            2,
            &(&Poly::int(12) * &c(2)) - &(&Poly::int(12) * &(&c(1) * &c(1))),
            3,
        ) + &Series::monomial(3, c(3), 3);
        assert_eq!(s.to_text("z", 'c'), "(12*c2 - 12*c1^2)*z^2 + c3*z^3");
        let js = s.to_json("z");
        assert_eq!(Series::from_json(&js).unwrap(), s);
        assert_eq!(Series::zero(2).to_text("z", 'c'), "0");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn recompute_higher_then_truncate_agrees(extra in 1i64..4) {
            // A pipeline run at higher truncation and truncated agrees with
            // the lower-truncation run.
            let t = 5i64;
            let run = |trunc: i64| {
                let f = &Series::var_z(trunc) + &Series::monomial(2, c(1), trunc);
                let phi = (&f * &Series::var_z(trunc).reciprocal().unwrap()).truncate_to(trunc - 1);
                &phi.log().unwrap().exp().unwrap() * &f.reverse().unwrap().derivative()
            };
            let lo = run(t);
            let hi = run(t + extra);
            prop_assert_eq!(lo.clone(), hi.truncate_to(lo.trunc()));
        }

        #[test]
        fn mul_is_associative_and_commutative(
            a0 in -4i64..5, a1 in -4i64..5, b0 in -4i64..5, b1 in -4i64..5
        ) {
            let a = Series::from_coeffs(0, vec![Poly::int(a0), Poly::int(a1), c(1)]);
            let b = Series::from_coeffs(-1, vec![Poly::int(b0), Poly::int(b1), c(2)]);
            let d = Series::from_coeffs(1, vec![c(1), Poly::int(2)]);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &d, &a * &(&b * &d));
        }
    }
}
