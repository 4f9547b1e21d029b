//! Bivariate power series truncated by total degree.
//!
//! A `BiSeries` stores polynomial coefficients for monomials `x^p y^q`
//! (`p, q >= 0`) and is exact for every `p + q <= max_total`; higher-degree
//! coefficients are unknown and asking for one is an error. The truncation
//! bound propagates through products and logarithms the same way the
//! univariate window does, tracking the lowest total degree a factor's
//! unknown tail can pollute.

use std::collections::BTreeMap;

use crate::poly::Poly;
use crate::rational::Rational;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSeries {
    max_total: i64,
    // (p, q) -> coefficient of x^p y^q; zero coefficients are not stored.
    terms: BTreeMap<(i64, i64), Poly>,
}

impl BiSeries {
    pub fn zero(max_total: i64) -> BiSeries {
        assert!(max_total >= 0, "total-degree bound must be nonnegative");
        BiSeries {
            max_total,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(p: Poly, max_total: i64) -> BiSeries {
        let mut s = BiSeries::zero(max_total);
        s.add_term(0, 0, p);
        s
    }

    /// `coeff * x^p y^q`, exact through total degree `max_total >= p + q`.
    pub fn monomial(p: i64, q: i64, coeff: Poly, max_total: i64) -> BiSeries {
        assert!(p >= 0 && q >= 0, "bivariate exponents must be nonnegative");
        assert!(p + q <= max_total, "monomial above total truncation");
        let mut s = BiSeries::zero(max_total);
        s.add_term(p, q, coeff);
        s
    }

    pub fn max_total(&self) -> i64 {
        self.max_total
    }

    /// Minimal total degree of a nonzero known term.
    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().map(|&(p, q)| p + q).min()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of `x^p y^q`; an error beyond the total-degree bound.
    pub fn coeff(&self, p: i64, q: i64) -> Result<Poly> {
        if p < 0 || q < 0 || p + q > self.max_total {
            return Err(Error::BiCoeffBeyondTruncation {
                p,
                q,
                max_total: self.max_total,
            });
        }
        Ok(self.terms.get(&(p, q)).cloned().unwrap_or_else(Poly::zero))
    }

    pub fn add_term(&mut self, p: i64, q: i64, coeff: Poly) {
        if p + q > self.max_total || coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry((p, q)).or_insert_with(Poly::zero);
        entry.add_assign(&coeff);
        if entry.is_zero() {
            self.terms.remove(&(p, q));
        }
    }

    pub fn add(&self, rhs: &BiSeries) -> BiSeries {
        let mut out = BiSeries::zero(self.max_total.min(rhs.max_total));
        for (&(p, q), c) in &self.terms {
            out.add_term(p, q, c.clone());
        }
        for (&(p, q), c) in &rhs.terms {
            out.add_term(p, q, c.clone());
        }
        out
    }

    pub fn neg(&self) -> BiSeries {
        self.map_coeffs(|p| -p)
    }

    pub fn sub(&self, rhs: &BiSeries) -> BiSeries {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, r: &Rational) -> BiSeries {
        self.map_coeffs(|p| p.scale(r))
    }

    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> BiSeries {
        let mut out = BiSeries::zero(self.max_total);
        for (&(p, q), c) in &self.terms {
            out.add_term(p, q, f(c));
        }
        out
    }

    pub fn mul(&self, rhs: &BiSeries) -> BiSeries {
        let (ta, tb) = (self.max_total, rhs.max_total);
        let mut exact_through = ta + tb + 1;
        if let Some(vb) = rhs.valuation() {
            exact_through = exact_through.min(ta + vb);
        }
        if let Some(va) = self.valuation() {
            exact_through = exact_through.min(tb + va);
        }
        let mut out = BiSeries::zero(exact_through);
        for (&(pa, qa), ca) in &self.terms {
            for (&(pb, qb), cb) in &rhs.terms {
                if pa + pb + qa + qb > out.max_total {
                    continue;
                }
                out.add_term(pa + pb, qa + qb, ca * cb);
            }
        }
        out
    }

    /// `log` of a series with constant term exactly 1.
    pub fn log(&self) -> Result<BiSeries> {
        let c0 = self.coeff(0, 0)?;
        if c0 != Poly::one() {
            return Err(Error::LogConstantTerm(c0.to_string(), 0));
        }
        let t = self.max_total;
        let u = self.sub(&BiSeries::constant(Poly::one(), t));
        let v = u.valuation().unwrap_or(t + 1).max(1);
        let mut acc = BiSeries::zero(t);
        let mut power = BiSeries::constant(Poly::one(), t);
        let mut k: i64 = 1;
        while k * v <= t {
            power = power.mul(&u).truncate_to(t);
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc = acc.add(&power.scale(&Rational::new(sign, k)));
            k += 1;
        }
        Ok(acc)
    }

    /// Lowers the claimed total-degree bound (no-op if already lower).
    pub fn truncate_to(&self, t: i64) -> BiSeries {
        if t >= self.max_total {
            return self.clone();
        }
        let mut out = BiSeries::zero(t);
        for (&(p, q), c) in &self.terms {
            out.add_term(p, q, c.clone());
        }
        out
    }

    /// The operator `y * d/dy`: multiplies each term by its `y`-exponent.
    pub fn y_ddy(&self) -> BiSeries {
        let mut out = BiSeries::zero(self.max_total);
        for (&(p, q), c) in &self.terms {
            out.add_term(p, q, c.scale(&Rational::int(q)));
        }
        out
    }

    /// Exchanges the two variables.
    pub fn swap_vars(&self) -> BiSeries {
        let mut out = BiSeries::zero(self.max_total);
        for (&(p, q), c) in &self.terms {
            out.add_term(q, p, c.clone());
        }
        out
    }
}
