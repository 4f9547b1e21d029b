//! Expansions attached to the universal normalized series
//! `f(z) = z + c_1 z^2 + c_2 z^3 + ...` with symbolic coefficients:
//!
//! * the power ratios `z^(p+2) f'(z)^2 / f(z)^(p+2)` and
//!   `z^(p+1) f''(z) / f(z)^p`, whose `c^m z^(||m||)` coefficients are the
//!   closed-form families [`coeff_a`] and [`coeff_b`];
//! * the Schwarzian-derivative series
//!   `z^2 (2 f'''/f' - 3 (f''/f')^2)` with coefficient family [`coeff_d`];
//! * the combination [`q_series`] `= h * z^2 f'^2/f^2 + (cc/24) * z^2 S_f`,
//!   whose `z^n` coefficient is the multiplication part of the lowered
//!   Virasoro generators;
//! * Grunsky coefficients `beta_(n,k)` of
//!   `g(w) = w + b_1 + b_2 w^(-1) + ...`, by a closed multi-index formula
//!   ([`grunsky`]) and by the logarithmic generating kernel
//!   `zeta d/dzeta ln((g(zeta) - g(z))/(zeta - z))` ([`grunsky_oracle`]).
//!
//! Every closed form enumerates multi-indices and evaluates explicit
//! coefficients; the `*_oracle` companions recompute the same series purely
//! with the arithmetic from [`crate::series`]/[`crate::biseries`], so
//! equality between the two is a genuine check. In the Grunsky context the
//! symbolic variables are printed `b_j`, with the same weight convention
//! `deg b_j = j`.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::biseries::BiSeries;
use crate::expand::cyclotomic_n;
use crate::multi_index::MultiIndex;
use crate::poly::Poly;
use crate::rational::{factorial, rising, Rational};
use crate::series::Series;
use crate::symfun::waring_p_rationals;
use crate::{Error, Result};

/// The universal normalized series truncated at coefficient weight `order`:
/// all series derived from it are exact through `z`-order `order`.
#[derive(Clone, Copy, Debug)]
pub struct SchlichtSymbol {
    order: i64,
}

impl SchlichtSymbol {
    pub fn new(order: i64) -> SchlichtSymbol {
        assert!(order >= 0, "SchlichtSymbol: order must be nonnegative");
        SchlichtSymbol { order }
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    /// `f(z) = z + c_1 z^2 + ... + c_order z^(order+1)`, exact through
    /// `z^(order+1)`.
    pub fn f(&self) -> Series {
        let coeffs: Vec<Poly> = std::iter::once(Poly::one())
            .chain((1..=self.order).map(|j| Poly::var(j as u16)))
            .collect();
        Series::from_coeffs(1, coeffs)
    }

    /// `phi(z) = f(z)/z = 1 + c_1 z + ...`, exact through `z^order`.
    pub fn phi(&self) -> Series {
        self.f().shift(-1)
    }
}

/// Product of the factorials of the exponents, `prod_j m_j!`.
fn exponent_factorial(m: &MultiIndex) -> Rational {
    let mut acc = Rational::one();
    for (_, e) in m.pairs() {
        acc = &acc * &factorial(e as u64);
    }
    acc
}

/// Coefficient of `c^m z^(||m||) / prod m_j!` in `z^(p+2) f'(z)^2 / f(z)^(p+2)`.
///
/// For `|m| >= 2` this is
/// `(-1)^(|m|) (p+2)(p+3)...(p+|m|-1) {p(p+1) + M1^2 - 2(p+1)M1 - M2}`
/// (the factorial ratio `(p+|m|-1)!/(p+1)!` written as a finite rising
/// product, so the value is polynomial in `p`). For `|m| = 1` the brace
/// factors as `(p+1)(p-2j)` against a ratio `1/(p+1)`, and the cancelled
/// form `2j - p` is used (`j` the single active index); for the empty index
/// the value is `1`.
pub fn coeff_a(m: &MultiIndex, p: &Rational) -> Rational {
    let (m0, m1, m2) = m.stats();
    match m0 {
        0 => Rational::one(),
        1 => &Rational::int(2 * m.max_index() as i64) - p,
        _ => {
            let p1 = p + &Rational::one();
            let brace = &(&(p * &p1) + &Rational::int(m1 as i64 * m1 as i64))
                - &(&p1.scale_int(2 * m1 as i64) + &Rational::int(m2 as i64));
            let mut acc = &rising(p, 2, m0 as i64 - 1) * &brace;
            if m0 % 2 == 1 {
                acc = -&acc;
            }
            acc
        }
    }
}

/// Coefficient of `c^m z^(||m||) / prod m_j!` in `z^(p+1) f''(z) / f(z)^p`:
/// `(-1)^(|m|+1) p(p+1)...(p+|m|-2) (M1 + M2)`, and `0` for the empty index
/// (`f''` has no constant term).
pub fn coeff_b(m: &MultiIndex, p: &Rational) -> Rational {
    let (m0, m1, m2) = m.stats();
    if m0 == 0 {
        return Rational::zero();
    }
    let mut acc = rising(p, 0, m0 as i64 - 2).scale_int((m1 + m2) as i64);
    if m0 % 2 == 0 {
        acc = -&acc;
    }
    acc
}

/// Coefficient family of the Schwarzian series: the full term of
/// `z^2 S_f(z)` at `c^m z^(||m||)` is
/// `coeff_d(m) * prod_j (j+1)^(m_j) / prod_j m_j! * c^m` with
/// `coeff_d(m) = (-1)^(|m|) (|m|-1)! {M2 - 3 M1^2 + 2 M1}`, and `0` for the
/// empty index (the Schwarzian of the identity vanishes).
pub fn coeff_d(m: &MultiIndex) -> Rational {
    let (m0, m1, m2) = m.stats();
    if m0 == 0 {
        return Rational::zero();
    }
    let brace = m2 as i64 - 3 * (m1 as i64) * (m1 as i64) + 2 * m1 as i64;
    let mut acc = factorial(m0 - 1).scale_int(brace);
    if m0 % 2 == 1 {
        acc = -&acc;
    }
    acc
}

/// Assemble `sum over {m : ||m|| <= n} of term(m) * c^m z^(||m||)`.
fn assemble(n: i64, mut term: impl FnMut(&MultiIndex) -> Rational) -> Series {
    assert!(n >= 0, "series order must be nonnegative");
    let mut coeffs = vec![Poly::zero(); n as usize + 1];
    for w in 0..=n as u64 {
        let target = &mut coeffs[w as usize];
        MultiIndex::for_each_of_weight(w, 1, &mut |mi| {
            let t = term(mi);
            if !t.is_zero() {
                target.add_assign(&Poly::from_multi_index(mi, t));
            }
        });
    }
    Series::from_coeffs(0, coeffs)
}

/// `z^(p+2) f'(z)^2 / f(z)^(p+2)` through order `n`, from [`coeff_a`].
pub fn expand_a(p: &Rational, n: i64) -> Series {
    assemble(n, |mi| &coeff_a(mi, p) / &exponent_factorial(mi))
}

/// Oracle for [`expand_a`]: `f'^2 (f/z)^(-(p+2))` by series arithmetic.
pub fn expand_a_oracle(p: &Rational, n: i64) -> Result<Series> {
    let sym = SchlichtSymbol::new(n);
    let fp = sym.f().derivative();
    let e = -&(p + &Rational::int(2));
    Ok((&(&fp * &fp) * &sym.phi().pow(&e)?).truncate_to(n))
}

/// `z^(p+1) f''(z) / f(z)^p` through order `n`, from [`coeff_b`].
pub fn expand_b(p: &Rational, n: i64) -> Series {
    assemble(n, |mi| &coeff_b(mi, p) / &exponent_factorial(mi))
}

/// Oracle for [`expand_b`]: `z f'' (f/z)^(-p)` by series arithmetic.
pub fn expand_b_oracle(p: &Rational, n: i64) -> Result<Series> {
    let sym = SchlichtSymbol::new(n);
    let zfpp = sym.f().derivative().derivative().shift(1);
    Ok((&zfpp * &sym.phi().pow(&-p)?).truncate_to(n))
}

/// `z^2 S_f(z) = z^2 (2 f'''/f' - 3 (f''/f')^2)` through order `n`, from
/// [`coeff_d`].
pub fn schwarzian(n: i64) -> Series {
    assemble(n, |mi| {
        let d = coeff_d(mi);
        if d.is_zero() {
            return d;
        }
        let mut jp1 = Rational::one();
        for (j, e) in mi.pairs() {
            jp1 = &jp1 * &Rational::int(j as i64 + 1).pow(e as i32);
        }
        &(&d * &jp1) / &exponent_factorial(mi)
    })
}

/// Oracle for [`schwarzian`]: assembled from derivatives of `f` by series
/// arithmetic.
pub fn schwarzian_oracle(n: i64) -> Result<Series> {
    assert!(n >= 0, "schwarzian_oracle: order must be nonnegative");
    // Build at weight >= 2 so the intermediate windows stay nonempty, then
    // cut back; coefficients beyond weight n cannot appear at z-order <= n.
    let sym = SchlichtSymbol::new(n.max(2));
    let f1 = sym.f().derivative();
    let f2 = f1.derivative();
    let f3 = f2.derivative();
    let r1 = f1.reciprocal()?;
    let first = (&f3 * &r1).scale(&Rational::int(2)).shift(2);
    let ratio = &f2 * &r1;
    let second = (&ratio * &ratio).scale(&Rational::int(3)).shift(2);
    Ok((&first - &second).truncate_to(n))
}

/// `sum_n Q_n z^n = h z^2 f'^2/f^2 + (cc/24) z^2 S_f` through order `n`:
/// the coefficient of `z^n` is the multiplication operator `Q_n` in
/// `Q[c_1, ...; h, cc]`.
pub fn q_series(n: i64) -> Series {
    let a_part = expand_a(&Rational::zero(), n).scale_poly(&Poly::sym_h());
    let s_part = schwarzian(n)
        .scale_poly(&Poly::sym_cc())
        .scale(&Rational::new(1, 24));
    &a_part + &s_part
}

/// Grunsky coefficient `beta_(n,k)` of `g(w) = w + b_1 + b_2 w^(-1) + ...`
/// as a polynomial in `b_2, ..., b_(n+k)` (weight-homogeneous of weight
/// `n + k` under `deg b_j = j`; `b_1` never appears).
///
/// Closed form: `n * sum over {m : ||m|| = n+k, m_1 = 0, |m| <= k} of
/// b^m (|m|-1)!/prod m_j! * P_(k-|m|)(L_1, ..., L_(k-|m|))` where `L_i` is
/// the divisor-weighted sum of [`cyclotomic_n`] for the shifted weights
/// `mu_j = m_(j+1)`, `j >= 2`.
pub fn grunsky(n: u64, k: u64) -> Poly {
    assert!(n >= 1 && k >= 1, "grunsky: indices must be positive");
    let mut out = Poly::zero();
    MultiIndex::for_each_of_weight(n + k, 2, &mut |mi| {
        let m0 = mi.m0();
        if m0 > k {
            return;
        }
        // Slot j >= 2 of cyclotomic_n holds mu_j = m_(j+1).
        let top = mi.max_index();
        let mu: Vec<Poly> = (0..top.saturating_sub(2))
            .map(|i| Poly::int(mi.exp(i + 3) as i64))
            .collect();
        let ls: Vec<Rational> = (1..=(k - m0))
            .map(|i| {
                cyclotomic_n(&mu, i)
                    .as_constant()
                    .expect("integer weights give a constant value")
            })
            .collect();
        let pk = waring_p_rationals((k - m0) as usize, &ls).expect("enough arguments supplied");
        if pk.is_zero() {
            return;
        }
        let coeff = &(&factorial(m0 - 1) / &exponent_factorial(mi)) * &pk;
        out.add_assign(&Poly::from_multi_index(mi, coeff.scale_int(n as i64)));
    });
    out
}

/// Dense table of Grunsky coefficients for `n + k <= max_weight`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrunskyTable {
    max_weight: i64,
    entries: BTreeMap<(u64, u64), Poly>,
}

impl GrunskyTable {
    /// Fill the table from the closed form [`grunsky`].
    pub fn closed_form(max_weight: i64) -> GrunskyTable {
        assert!(max_weight >= 2, "GrunskyTable: max_weight must be >= 2");
        let mut entries = BTreeMap::new();
        for n in 1..=(max_weight as u64 - 1) {
            for k in 1..=(max_weight as u64 - n) {
                entries.insert((n, k), grunsky(n, k));
            }
        }
        GrunskyTable {
            max_weight,
            entries,
        }
    }

    pub fn max_weight(&self) -> i64 {
        self.max_weight
    }

    pub fn get(&self, n: u64, k: u64) -> Option<&Poly> {
        self.entries.get(&(n, k))
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u64, &Poly)> {
        self.entries.iter().map(|(&(n, k), p)| (n, k, p))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (n, k, p) in self.iter() {
            out.push_str(&format!("beta[{n},{k}] = {}\n", p.to_text('b')));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .iter()
            .map(|(n, k, p)| json!({"n": n, "k": k, "poly": p.to_json()}))
            .collect();
        json!({"maxWeight": self.max_weight, "entries": entries})
    }

    pub fn from_json(v: &Value) -> Result<GrunskyTable> {
        let bad = |detail: &str| Error::InvalidJson {
            what: "GrunskyTable",
            detail: detail.to_string(),
        };
        let max_weight = v
            .get("maxWeight")
            .and_then(Value::as_i64)
            .ok_or_else(|| bad("missing maxWeight"))?;
        let list = v
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing entries"))?;
        let mut entries = BTreeMap::new();
        for e in list {
            let n = e
                .get("n")
                .and_then(Value::as_u64)
                .ok_or_else(|| bad("entry missing n"))?;
            let k = e
                .get("k")
                .and_then(Value::as_u64)
                .ok_or_else(|| bad("entry missing k"))?;
            let poly = Poly::from_json(e.get("poly").ok_or_else(|| bad("entry missing poly"))?)?;
            entries.insert((n, k), poly);
        }
        Ok(GrunskyTable {
            max_weight,
            entries,
        })
    }
}

/// Grunsky table for `n + k <= max_weight` from the logarithmic kernel.
///
/// In the variables `x = 1/z`, `y = 1/zeta` the divided difference becomes
/// `(g(zeta) - g(z))/(zeta - z) = 1 - sum_(j>=2) b_j x y (x^(j-2) + x^(j-3) y
/// + ... + y^(j-2))`, a bivariate series with constant term 1 and no `b_1`;
/// `beta_(n,k)` is the coefficient of `x^k y^n` in `-y d/dy` of its
/// logarithm.
pub fn grunsky_oracle(max_weight: i64) -> Result<GrunskyTable> {
    assert!(max_weight >= 2, "grunsky_oracle: max_weight must be >= 2");
    let mut d = BiSeries::constant(Poly::one(), max_weight);
    for j in 2..=max_weight {
        let neg_bj = -&Poly::var(j as u16);
        for i in 0..=(j - 2) {
            d.add_term(1 + i, j - 1 - i, neg_bj.clone());
        }
    }
    let kernel = d.log()?.y_ddy().neg();
    let mut entries = BTreeMap::new();
    for n in 1..=(max_weight as u64 - 1) {
        for k in 1..=(max_weight as u64 - n) {
            entries.insert((n, k), kernel.coeff(k as i64, n as i64)?);
        }
    }
    Ok(GrunskyTable {
        max_weight,
        entries,
    })
}
