//! Sparse polynomials in `c1, c2, ...` and the weight-zero parameters `h`, `cc`.
//!
//! `Poly` is a sparse map from monomials to nonzero rational coefficients,
//! kept in a canonical graded order: weight of the `c`-part first (with
//! `deg c_j = j`; `h` and `cc` carry weight zero), then the `c`-exponents
//! compared from `c1` upward with smaller exponents first, then the `h` and
//! `cc` exponents. Iteration, text rendering and JSON all follow this order,
//! so equal polynomials have byte-identical renderings.
//!
//! # Key operations
//! - ring arithmetic (`+`, `-`, `*`, negation, scalar multiplication);
//! - `weight_truncate`: drop all monomials of weight above a bound;
//! - `partial`: formal derivative with respect to one `c_j`;
//! - `substitute_c`: simultaneous substitution `c_j -> f(j)` with memoized
//!   powers (used to specialize the universal coefficients).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::{json, Value};

use crate::multi_index::MultiIndex;
use crate::rational::Rational;
use crate::{Error, Result};

/// A power product `h^h_exp * cc^cc_exp * prod c_j^(m_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Monomial {
    pub cs: MultiIndex,
    pub h_exp: u16,
    pub cc_exp: u16,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn from_cs(cs: MultiIndex) -> Self {
        Monomial {
            cs,
            h_exp: 0,
            cc_exp: 0,
        }
    }

    /// Weight of the `c`-part; `h` and `cc` are weightless.
    pub fn weight(&self) -> u64 {
        self.cs.m1()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            cs: self.cs.mul(&other.cs),
            h_exp: self
                .h_exp
                .checked_add(other.h_exp)
                .expect("h exponent overflow"),
            cc_exp: self
                .cc_exp
                .checked_add(other.cc_exp)
                .expect("cc exponent overflow"),
        }
    }

    pub fn is_one(&self) -> bool {
        self.cs.is_empty() && self.h_exp == 0 && self.cc_exp == 0
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cs
            .cmp(&other.cs)
            .then_with(|| self.h_exp.cmp(&other.h_exp))
            .then_with(|| self.cc_exp.cmp(&other.cc_exp))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(r: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(Monomial::one(), r);
        }
        Poly { terms }
    }

    pub fn int(n: i64) -> Self {
        Poly::constant(Rational::int(n))
    }

    /// The variable `c_j`.
    pub fn var(j: u16) -> Self {
        Poly::from_monomial(Monomial::from_cs(MultiIndex::single(j, 1)), Rational::one())
    }

    /// The weight-zero parameter `h`.
    pub fn sym_h() -> Self {
        Poly::from_monomial(
            Monomial {
                cs: MultiIndex::empty(),
                h_exp: 1,
                cc_exp: 0,
            },
            Rational::one(),
        )
    }

    /// The weight-zero parameter `cc`.
    pub fn sym_cc() -> Self {
        Poly::from_monomial(
            Monomial {
                cs: MultiIndex::empty(),
                h_exp: 0,
                cc_exp: 1,
            },
            Rational::one(),
        )
    }

    pub fn from_monomial(m: Monomial, coeff: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(m, coeff);
        }
        Poly { terms }
    }

    /// Monomial `c^m` with coefficient 1.
    pub fn from_multi_index(m: &MultiIndex, coeff: Rational) -> Self {
        Poly::from_monomial(Monomial::from_cs(m.clone()), coeff)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// `Some(value)` when the polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff_of(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of the pure `c`-monomial `c^m`.
    pub fn coeff_of_cs(&self, m: &MultiIndex) -> Rational {
        self.coeff_of(&Monomial::from_cs(m.clone()))
    }

    /// Largest weight among monomials (0 for the zero polynomial).
    pub fn max_weight(&self) -> u64 {
        self.terms.keys().map(|m| m.weight()).max().unwrap_or(0)
    }

    /// Largest `c`-variable index that appears.
    pub fn max_c_index(&self) -> u16 {
        self.terms
            .keys()
            .map(|m| m.cs.max_index())
            .max()
            .unwrap_or(0)
    }

    /// True when every monomial has `c`-weight exactly `w` (zero qualifies).
    pub fn is_weight_homogeneous(&self, w: u64) -> bool {
        self.terms.keys().all(|m| m.weight() == w)
    }

    pub fn add_assign(&mut self, other: &Poly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    /// `self += scale * other`, fused to avoid intermediate clones.
    pub fn add_assign_scaled(&mut self, other: &Poly, scale: &Rational) {
        if scale.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * scale);
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = &*o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, r: &Rational) -> Poly {
        if r.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Drops every monomial of weight greater than `max_weight`.
    pub fn weight_truncate(&self, max_weight: u64) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weight() <= max_weight)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Formal partial derivative with respect to `c_j`.
    pub fn partial(&self, j: u16) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.cs.exp(j);
            if e == 0 {
                continue;
            }
            let reduced = Monomial {
                cs: m.cs.div_var(j).expect("exponent present"),
                h_exp: m.h_exp,
                cc_exp: m.cc_exp,
            };
            out.add_term(reduced, c * &Rational::int(e as i64));
        }
        out
    }

    /// Simultaneous substitution `c_j -> f(j)`; `h` and `cc` are untouched.
    /// Powers of each replacement are computed once and reused.
    pub fn substitute_c<F: FnMut(u16) -> Poly>(&self, mut f: F) -> Poly {
        let mut powers: BTreeMap<u16, Vec<Poly>> = BTreeMap::new();
        let mut power = |j: u16, e: u16, f: &mut F| -> Poly {
            let entry = powers.entry(j).or_insert_with(|| vec![Poly::one(), f(j)]);
            while entry.len() <= e as usize {
                let next = &entry[entry.len() - 1] * &entry[1];
                entry.push(next);
            }
            entry[e as usize].clone()
        };
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut term = Poly::from_monomial(
                Monomial {
                    cs: MultiIndex::empty(),
                    h_exp: m.h_exp,
                    cc_exp: m.cc_exp,
                },
                c.clone(),
            );
            for (j, e) in m.cs.pairs() {
                term = &term * &power(j, e, &mut f);
            }
            out.add_assign(&term);
        }
        out
    }

    /// Canonical text rendering with a caller-chosen letter for the indexed
    /// variables, e.g. `3*c2 - 2*c1^2` or, with letter `b`, `3*b2 - 2*b1^2`.
    pub fn to_text(&self, letter: char) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = c.abs();
            let mut factors: Vec<String> = Vec::new();
            for (name, e) in [("h", m.h_exp), ("cc", m.cc_exp)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            for (j, e) in m.cs.pairs() {
                if e == 1 {
                    factors.push(format!("{letter}{j}"));
                } else {
                    factors.push(format!("{letter}{j}^{e}"));
                }
            }
            if factors.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }

    /// JSON rendering: a list of `{"exps": [[j, m_j], ...], "coeff": "num/den"}`
    /// objects in canonical term order; nonzero `h`/`cc` exponents appear as
    /// extra `"h"`/`"cc"` integer fields.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let exps: Vec<Value> = m.cs.pairs().map(|(j, e)| json!([j, e])).collect();
                let mut obj = serde_json::Map::new();
                obj.insert("exps".to_string(), Value::Array(exps));
                if m.h_exp > 0 {
                    obj.insert("h".to_string(), json!(m.h_exp));
                }
                if m.cc_exp > 0 {
                    obj.insert("cc".to_string(), json!(m.cc_exp));
                }
                obj.insert("coeff".to_string(), json!(c.to_string()));
                Value::Object(obj)
            })
            .collect();
        Value::Array(terms)
    }

    pub fn from_json(v: &Value) -> Result<Poly> {
        let bad = |detail: &str| Error::InvalidJson {
            what: "Poly",
            detail: detail.to_string(),
        };
        let arr = v.as_array().ok_or_else(|| bad("expected array"))?;
        let mut out = Poly::zero();
        for term in arr {
            let obj = term.as_object().ok_or_else(|| bad("expected object"))?;
            let coeff: Rational = obj
                .get("coeff")
                .and_then(|c| c.as_str())
                .ok_or_else(|| bad("missing coeff"))?
                .parse()
                .map_err(|e: Error| bad(&e.to_string()))?;
            let exps = obj
                .get("exps")
                .and_then(|e| e.as_array())
                .ok_or_else(|| bad("missing exps"))?;
            let mut pairs = Vec::new();
            for pair in exps {
                let pair = pair
                    .as_array()
                    .filter(|p| p.len() == 2)
                    .ok_or_else(|| bad("bad exps pair"))?;
                let j = pair[0].as_u64().ok_or_else(|| bad("bad index"))?;
                let e = pair[1].as_u64().ok_or_else(|| bad("bad exponent"))?;
                pairs.push((
                    u16::try_from(j).map_err(|_| bad("index too large"))?,
                    u16::try_from(e).map_err(|_| bad("exponent too large"))?,
                ));
            }
            let h_exp = obj
                .get("h")
                .map(|x| x.as_u64().ok_or_else(|| bad("bad h")))
                .transpose()?
                .unwrap_or(0);
            let cc_exp = obj
                .get("cc")
                .map(|x| x.as_u64().ok_or_else(|| bad("bad cc")))
                .transpose()?
                .unwrap_or(0);
            out.add_term(
                Monomial {
                    cs: MultiIndex::from_pairs(pairs),
                    h_exp: u16::try_from(h_exp).map_err(|_| bad("h too large"))?,
                    cc_exp: u16::try_from(cc_exp).map_err(|_| bad("cc too large"))?,
                },
                coeff,
            );
        }
        Ok(out)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, &Rational::int(-1));
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        // Iterate the smaller factor outermost.
        let (small, large) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = Poly::zero();
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&Rational::int(-1))
    }
}

macro_rules! forward_owned_poly_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_poly_binop!(Add, add);
forward_owned_poly_binop!(Sub, sub);
forward_owned_poly_binop!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text('c'))
    }
}
