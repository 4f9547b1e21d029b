//! Virasoro generators as exact first-order differential operators on the
//! coefficient ring `Q[c1, c2, ...; h, cc]`.
//!
//! A [`DiffOp`] is a finite-horizon representation of an operator
//!
//! ```text
//!     L = sum_{p=1}^{p_max} a_p(c) d/dc_p  +  a_0(c),
//! ```
//!
//! storing the derivation coefficients `a_p`, the multiplication part `a_0`,
//! a weight shift (applying the operator to a weight-homogeneous polynomial
//! of weight `w` yields weight `w + shift`), and the horizon `p_max` up to
//! which the components are known exactly.
//!
//! The generators come in three families:
//!
//! * `L_k` for `k >= 1` ([`build_l_plus`]): `d/dc_k + sum_{p>=1} (1+p) c_p
//!   d/dc_{k+p}`, lowering weight by `k`;
//! * `L_0` ([`build_l_zero`]): the grading operator `sum p c_p d/dc_p`;
//! * `L_{-k}` for `k >= 1` ([`build_l_minus`]): raising weight by `k`, with
//!   two independent closed-form constructions (a series expansion in powers
//!   of `f` and a finite derivative-form expression) plus a residue oracle
//!   ([`build_l_minus_oracle`]) computed purely by series arithmetic.
//!
//! The centrally extended generators ([`build_hat`]) add a multiplication
//! part: `h` for `L_0` and the coefficient `Q_k` of the anomaly series for
//! `L_{-k}`.  The extended family closes under the bracket as
//!
//! ```text
//!     [L_n, L_m] = (n - m) L_{n+m} + (cc/12)(n^3 - n) delta_{n+m,0},
//! ```
//!
//! which [`verify_virasoro`] checks component by component.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::poly::Poly;
use crate::rational::Rational;
use crate::series::Series;
use crate::univalent::{expand_a, q_series, SchlichtSymbol};
use crate::{Error, Result};

/// A first-order differential operator with polynomial coefficients,
/// truncated to derivation components `d/dc_p` with `p <= p_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOp {
    /// Nonzero derivation coefficients, keyed by the variable index `p`.
    deriv: BTreeMap<u16, Poly>,
    /// The multiplication (zeroth-order) part.
    mult: Poly,
    /// Weight shift: the operator maps weight `w` to weight `w + shift`.
    shift: i64,
    /// Components `d/dc_p` are known exactly for `1 <= p <= p_max`.
    p_max: i64,
}

impl DiffOp {
    /// The zero operator with the given weight shift and horizon.
    pub fn zero(shift: i64, p_max: i64) -> DiffOp {
        assert!(p_max >= 0, "operator horizon must be nonnegative");
        assert!(p_max <= i64::from(u16::MAX), "operator horizon too large");
        DiffOp {
            deriv: BTreeMap::new(),
            mult: Poly::zero(),
            shift,
            p_max,
        }
    }

    /// Multiplication by a fixed polynomial, with no derivation part.
    pub fn multiplication(mult: Poly, shift: i64, p_max: i64) -> DiffOp {
        let mut op = DiffOp::zero(shift, p_max);
        op.mult = mult;
        op
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn p_max(&self) -> i64 {
        self.p_max
    }

    pub fn mult(&self) -> &Poly {
        &self.mult
    }

    /// The coefficient of `d/dc_p`; an error beyond the horizon.
    pub fn deriv_coeff(&self, p: i64) -> Result<Poly> {
        assert!(p >= 1, "derivation components are indexed from 1");
        if p > self.p_max {
            return Err(Error::HorizonExceeded {
                needed: p,
                available: self.p_max,
            });
        }
        Ok(self
            .deriv
            .get(&(p as u16))
            .cloned()
            .unwrap_or_else(Poly::zero))
    }

    /// The stored nonzero derivation components, in increasing `p`.
    pub fn components(&self) -> impl Iterator<Item = (u16, &Poly)> {
        self.deriv.iter().map(|(p, c)| (*p, c))
    }

    fn set_component(&mut self, p: i64, c: Poly) {
        assert!(1 <= p && p <= self.p_max, "component outside horizon");
        if !c.is_zero() {
            self.deriv.insert(p as u16, c);
        }
    }

    /// Applies the full operator to a polynomial.
    ///
    /// Errors with [`Error::HorizonExceeded`] when the argument involves a
    /// variable `c_p` with `p` beyond the horizon, since the component acting
    /// on it would be unknown.
    pub fn apply(&self, x: &Poly) -> Result<Poly> {
        let mut out = self.derivation(x)?;
        if !self.mult.is_zero() {
            out.add_assign(&(&self.mult * x));
        }
        Ok(out)
    }

    /// Applies only the derivation part `sum a_p d/dc_p`.
    pub fn derivation(&self, x: &Poly) -> Result<Poly> {
        let needed = i64::from(x.max_c_index());
        if needed > self.p_max {
            return Err(Error::HorizonExceeded {
                needed,
                available: self.p_max,
            });
        }
        let mut out = Poly::zero();
        for (&p, coef) in self.deriv.range(..=x.max_c_index()) {
            let d = x.partial(p);
            if !d.is_zero() {
                out.add_assign(&(coef * &d));
            }
        }
        Ok(out)
    }

    /// Multiplies every coefficient by a rational constant.
    pub fn scale(&self, r: &Rational) -> DiffOp {
        let mut out = DiffOp::zero(self.shift, self.p_max);
        for (&p, c) in &self.deriv {
            out.set_component(i64::from(p), c.scale(r));
        }
        out.mult = self.mult.scale(r);
        out
    }

    /// Sum of two operators with the same weight shift; the horizon is the
    /// smaller of the two.
    pub fn add(&self, other: &DiffOp) -> Result<DiffOp> {
        if self.shift != other.shift {
            return Err(Error::ShiftMismatch(self.shift, other.shift));
        }
        let mut out = DiffOp::zero(self.shift, self.p_max.min(other.p_max));
        for p in 1..=out.p_max {
            let mut c = self.deriv_coeff(p)?;
            c.add_assign(&other.deriv_coeff(p)?);
            out.set_component(p, c);
        }
        let mut m = self.mult.clone();
        m.add_assign(&other.mult);
        out.mult = m;
        Ok(out)
    }

    /// The commutator `[a, b] = a b - b a`.
    ///
    /// For first-order operators the second-order terms cancel, leaving the
    /// derivation coefficients `a(b_q) - b(a_q)` and the multiplication part
    /// `a(b_0) - b(a_0)`, where only the derivation parts of `a` and `b` act.
    /// The result is exact for components
    /// `p <= min(p_max) - max(|shift_a|, |shift_b|)`, since the input
    /// coefficients at component `q` involve variables up to `q + shift`.
    pub fn commutator(a: &DiffOp, b: &DiffOp) -> Result<DiffOp> {
        let margin = a.shift.abs().max(b.shift.abs());
        let p_max = (a.p_max.min(b.p_max) - margin).max(0);
        let mut out = DiffOp::zero(a.shift + b.shift, p_max);
        for q in 1..=p_max {
            let mut c = a.derivation(&b.deriv_coeff(q)?)?;
            c.add_assign(&-&b.derivation(&a.deriv_coeff(q)?)?);
            out.set_component(q, c);
        }
        let mut m = a.derivation(&b.mult)?;
        m.add_assign(&-&b.derivation(&a.mult)?);
        out.mult = m;
        Ok(out)
    }

    /// Checks the weight bookkeeping: every derivation coefficient `a_p` must
    /// be homogeneous of weight `p + shift`, and the multiplication part of
    /// weight `shift`.
    pub fn satisfies_weight_contract(&self) -> bool {
        for (&p, c) in &self.deriv {
            if c.is_zero() {
                continue;
            }
            let w = i64::from(p) + self.shift;
            if w < 0 || !c.is_weight_homogeneous(w as u64) {
                return false;
            }
        }
        if self.mult.is_zero() {
            return true;
        }
        self.shift >= 0 && self.mult.is_weight_homogeneous(self.shift as u64)
    }

    /// Renders the operator line by line: the weight shift, the
    /// multiplication part, then every component up to the horizon.
    pub fn to_text(&self) -> String {
        let mut lines = Vec::with_capacity(self.p_max as usize + 2);
        lines.push(format!("weight shift: {}", self.shift));
        lines.push(format!("mult: {}", self.mult.to_text('c')));
        for p in 1..=self.p_max {
            let c = self
                .deriv
                .get(&(p as u16))
                .cloned()
                .unwrap_or_else(Poly::zero);
            lines.push(format!("d/dc{}: {}", p, c.to_text('c')));
        }
        lines.join("\n")
    }

    /// Serializes as `{"shift", "mult", "deriv": [{"p", "coeff"}, ...]}`,
    /// listing every component up to the horizon so that the horizon
    /// round-trips.
    pub fn to_json(&self) -> Value {
        let deriv: Vec<Value> = (1..=self.p_max)
            .map(|p| {
                let c = self
                    .deriv
                    .get(&(p as u16))
                    .cloned()
                    .unwrap_or_else(Poly::zero);
                json!({ "p": p, "coeff": c.to_json() })
            })
            .collect();
        json!({
            "shift": self.shift,
            "mult": self.mult.to_json(),
            "deriv": deriv,
        })
    }

    pub fn from_json(v: &Value) -> Result<DiffOp> {
        let bad = |detail: &str| Error::InvalidJson {
            what: "DiffOp",
            detail: detail.to_string(),
        };
        let obj = v.as_object().ok_or_else(|| bad("expected an object"))?;
        let shift = obj
            .get("shift")
            .and_then(Value::as_i64)
            .ok_or_else(|| bad("missing integer field \"shift\""))?;
        let mult = Poly::from_json(
            obj.get("mult")
                .ok_or_else(|| bad("missing field \"mult\""))?,
        )?;
        let entries = obj
            .get("deriv")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing array field \"deriv\""))?;
        let mut deriv = BTreeMap::new();
        let mut p_max = 0i64;
        for e in entries {
            let p = e
                .get("p")
                .and_then(Value::as_i64)
                .ok_or_else(|| bad("component without integer field \"p\""))?;
            if !(1..=i64::from(u16::MAX)).contains(&p) {
                return Err(bad("component index out of range"));
            }
            let coeff = Poly::from_json(
                e.get("coeff")
                    .ok_or_else(|| bad("component without field \"coeff\""))?,
            )?;
            if deriv.insert(p as u16, coeff).is_some() {
                return Err(bad("duplicate component index"));
            }
            p_max = p_max.max(p);
        }
        let mut op = DiffOp::zero(shift, p_max);
        for (p, c) in deriv {
            if !c.is_zero() {
                op.deriv.insert(p, c);
            }
        }
        op.mult = mult;
        Ok(op)
    }
}

/// `L_k = d/dc_k + sum_{p>=1} (1+p) c_p d/dc_{k+p}` for `k >= 1`; lowers
/// weight by `k`.
pub fn build_l_plus(k: u64, p_max: i64) -> DiffOp {
    assert!(k >= 1, "build_l_plus needs k >= 1");
    let ki = i64::try_from(k).expect("index fits i64");
    let mut op = DiffOp::zero(-ki, p_max);
    if ki <= p_max {
        op.set_component(ki, Poly::one());
    }
    for p in (ki + 1)..=p_max {
        let q = p - ki;
        op.set_component(p, Poly::var(q as u16).scale(&Rational::int(q + 1)));
    }
    op
}

/// The grading operator `L_0 = sum_{p>=1} p c_p d/dc_p`.
pub fn build_l_zero(p_max: i64) -> DiffOp {
    let mut op = DiffOp::zero(0, p_max);
    for p in 1..=p_max {
        op.set_component(p, Poly::var(p as u16).scale(&Rational::int(p)));
    }
    op
}

/// Which closed-form construction of `L_{-k}` to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LMinusForm {
    /// The expansion `sum_{j>=0} A_j f^{j+2}` whose weight-`(j+k+1)`
    /// coefficients `A_j` come from the closed-form expansion of
    /// `z^{j+3} f'^2 / f^{j+3}`.
    Series,
    /// The finite expression `z^{1-k} f' - sum_{j=0}^{k} B_j f^{1-j}` with
    /// `B_j` the weight-`(k-j)` coefficient of the closed-form expansion of
    /// `z^{-j+2} f'^2 / f^{-j+2}`.
    Derivative,
}

/// The raising generator `L_{-k}(z)` as a series in `z`, via the expansion in
/// powers of `f`.  Exact through `z^{p_max + 1}`; the coefficient of
/// `z^{p+1}` is the `d/dc_p` component.
pub fn l_minus_series(k: u64, p_max: i64) -> Series {
    assert!(k >= 1, "l_minus_series needs k >= 1");
    assert!(p_max >= 0, "horizon must be nonnegative");
    let ki = i64::try_from(k).expect("index fits i64");
    let mut acc = Series::zero(p_max + 1);
    if p_max == 0 {
        return acc;
    }
    let sym = SchlichtSymbol::new(p_max + ki);
    let f = sym.f();
    let mut fpow = (&f * &f).truncate_to(p_max + 1);
    for j in 0..p_max {
        let order = j + ki + 1;
        let aj = expand_a(&Rational::int(j + 1), order)
            .coeff(order)
            .expect("closed-form expansion covers the requested order");
        acc = &acc + &fpow.scale_poly(&aj);
        fpow = (&fpow * &f).truncate_to(p_max + 1);
    }
    acc
}

/// The raising generator `L_{-k}(z)` as a series in `z`, via the finite
/// derivative-form expression.  Exact through `z^{p_max + 1}`; all orders
/// below `z^2` cancel.
pub fn l_minus_derivative(k: u64, p_max: i64) -> Series {
    assert!(k >= 1, "l_minus_derivative needs k >= 1");
    assert!(p_max >= 0, "horizon must be nonnegative");
    let ki = i64::try_from(k).expect("index fits i64");
    let sym = SchlichtSymbol::new(p_max + ki);
    let f = sym.f();
    let mut acc = f.derivative().shift(1 - ki);
    for j in 0..=ki {
        let w = ki - j;
        let inner = expand_a(&Rational::int(-j), w)
            .coeff(w)
            .expect("closed-form expansion covers the requested order");
        let fpow = f
            .powi(1 - j)
            .expect("f starts with an invertible leading term");
        acc = &acc - &fpow.scale_poly(&inner);
    }
    acc.truncate_to(p_max + 1)
}

fn tangent_op(series: &Series, k: u64, p_max: i64) -> DiffOp {
    assert!(
        series.trunc() >= p_max + 1,
        "tangent series window too small for the requested horizon"
    );
    let mut op = DiffOp::zero(i64::try_from(k).expect("index fits i64"), p_max);
    for p in 1..=p_max {
        let c = series
            .coeff(p + 1)
            .expect("window checked above and low <= 2");
        op.set_component(p, c);
    }
    op
}

/// `L_{-k}` for `k >= 1` as a differential operator; raises weight by `k`.
/// Both forms produce identical operators.
pub fn build_l_minus(k: u64, p_max: i64, form: LMinusForm) -> DiffOp {
    let series = match form {
        LMinusForm::Series => l_minus_series(k, p_max),
        LMinusForm::Derivative => l_minus_derivative(k, p_max),
    };
    tangent_op(&series, k, p_max)
}

/// Residue oracle for `L_{-k}`: expands the vector-field kernel
///
/// ```text
///     f(z)^2 f'(t)^2 / ((f(t) - f(z)) f(t)^2)
/// ```
///
/// geometrically in the region `|z| < |t|` as
/// `sum_{j>=0} f(z)^{j+2} f'(t)^2 / f(t)^{j+3}` and reads off the residue in
/// `t` against `t^{1-k}`, i.e. the coefficient of `t^{k-2}`.  Everything is
/// computed by direct series arithmetic, independent of any closed-form
/// coefficient formulas.
pub fn build_l_minus_oracle(k: u64, p_max: i64) -> DiffOp {
    assert!(k >= 1, "build_l_minus_oracle needs k >= 1");
    assert!(p_max >= 0, "horizon must be nonnegative");
    let ki = i64::try_from(k).expect("index fits i64");
    let mut acc = Series::zero(p_max + 1);
    if p_max > 0 {
        let sym = SchlichtSymbol::new(p_max + ki);
        let f = sym.f();
        let fp = f.derivative();
        let phi_inv = sym
            .phi()
            .reciprocal()
            .expect("phi starts with constant term 1");
        // u = f'(t)^2 / (t^{j+3} phi(t)^{j+3}), tracked without the monomial
        // t^{-(j+3)}: the residue picks the coefficient of t^{k+j+1}.
        let mut u = &(&fp * &fp) * &phi_inv.powi(3).expect("phi is invertible");
        let mut fpow = (&f * &f).truncate_to(p_max + 1);
        for j in 0..p_max {
            let aj = u
                .coeff(ki + j + 1)
                .expect("the t-window reaches the residue order");
            acc = &acc + &fpow.scale_poly(&aj);
            u = &u * &phi_inv;
            fpow = (&fpow * &f).truncate_to(p_max + 1);
        }
    }
    tangent_op(&acc, k, p_max)
}

/// The centrally extended generator: `L_n` itself for `n > 0`, `L_0 + h` for
/// `n = 0`, and `L_{-k} + Q_k` for `n = -k < 0`, where `Q_k` is the
/// weight-`k` coefficient of the anomaly series.
pub fn build_hat(n: i64, p_max: i64) -> DiffOp {
    build_hat_with_form(n, p_max, LMinusForm::Derivative)
}

/// [`build_hat`] with an explicit choice of construction for the raising
/// generators (both produce identical operators).
pub fn build_hat_with_form(n: i64, p_max: i64, form: LMinusForm) -> DiffOp {
    if n > 0 {
        build_l_plus(n as u64, p_max)
    } else if n == 0 {
        let mut op = build_l_zero(p_max);
        op.mult = Poly::sym_h();
        op
    } else {
        let k = (-n) as u64;
        let mut op = build_l_minus(k, p_max, form);
        op.mult = q_series(-n)
            .coeff(-n)
            .expect("anomaly series covers the requested order");
        op
    }
}

/// One mismatching component of a bracket relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    /// `"d/dc<p>"` or `"mult"`.
    pub component: String,
    pub lhs: Poly,
    pub rhs: Poly,
}

/// The outcome of checking `[L_n, L_m] = (n - m) L_{n+m} +
/// (cc/12)(n^3 - n) delta_{n+m,0}` on all components `p <= max_weight`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationOutcome {
    pub n: i64,
    pub m: i64,
    pub max_weight: i64,
    pub mismatches: Vec<Mismatch>,
}

impl RelationOutcome {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    /// One summary line, plus both sides of every mismatch when failing.
    pub fn describe(&self) -> String {
        if self.passed() {
            format!(
                "[L({}), L({})]: PASS (components p <= {})",
                self.n, self.m, self.max_weight
            )
        } else {
            let mut s = format!(
                "[L({}), L({})]: FAIL ({} mismatching component(s))",
                self.n,
                self.m,
                self.mismatches.len()
            );
            for mm in &self.mismatches {
                s.push_str(&format!(
                    "\n  {}: bracket = {}, relation = {}",
                    mm.component,
                    mm.lhs.to_text('c'),
                    mm.rhs.to_text('c')
                ));
            }
            s
        }
    }
}

/// Checks the bracket relation for prebuilt extended generators `a = L_n`
/// and `b = L_m`.  The horizons must allow the commutator to reach
/// `max_weight`.
pub fn verify_relation_with(
    a: &DiffOp,
    b: &DiffOp,
    n: i64,
    m: i64,
    max_weight: i64,
) -> Result<RelationOutcome> {
    let lhs = DiffOp::commutator(a, b)?;
    if lhs.p_max() < max_weight {
        return Err(Error::HorizonExceeded {
            needed: max_weight,
            available: lhs.p_max(),
        });
    }
    let mut rhs = build_hat(n + m, max_weight).scale(&Rational::int(n - m));
    if n + m == 0 {
        let central = Poly::sym_cc().scale(&Rational::new(n * n * n - n, 12));
        rhs = rhs.add(&DiffOp::multiplication(central, 0, max_weight))?;
    }
    let mut mismatches = Vec::new();
    for q in 1..=max_weight {
        let l = lhs.deriv_coeff(q)?;
        let r = rhs.deriv_coeff(q)?;
        if l != r {
            mismatches.push(Mismatch {
                component: format!("d/dc{}", q),
                lhs: l,
                rhs: r,
            });
        }
    }
    if lhs.mult() != rhs.mult() {
        mismatches.push(Mismatch {
            component: "mult".to_string(),
            lhs: lhs.mult().clone(),
            rhs: rhs.mult().clone(),
        });
    }
    Ok(RelationOutcome {
        n,
        m,
        max_weight,
        mismatches,
    })
}

/// Builds the extended generators for `n` and `m` with enough margin and
/// checks the bracket relation on all components `p <= max_weight`.
pub fn verify_virasoro(n: i64, m: i64, max_weight: i64) -> Result<RelationOutcome> {
    let horizon = max_weight + n.abs().max(m.abs());
    let a = build_hat(n, horizon);
    let b = build_hat(m, horizon);
    verify_relation_with(&a, &b, n, m, max_weight)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn c(j: u16) -> Poly {
        Poly::var(j)
    }

    #[test]
    fn l_plus_applies_to_small_polynomials() {
        let l1 = build_l_plus(1, 6);
        let l2 = build_l_plus(2, 6);
        assert_eq!(l1.apply(&c(1)).unwrap(), Poly::one());
        assert_eq!(l1.apply(&c(2)).unwrap(), c(1).scale(&r(2, 1)));
        assert_eq!(l1.apply(&c(3)).unwrap(), c(2).scale(&r(3, 1)));
        assert_eq!(l2.apply(&c(1)).unwrap(), Poly::zero());
        assert_eq!(l2.apply(&c(2)).unwrap(), Poly::one());
        assert_eq!(l2.apply(&c(3)).unwrap(), c(1).scale(&r(2, 1)));
        // Product rule: L_1(c1^3) = 3 c1^2.
        assert_eq!(l1.apply(&c(1).pow(3)).unwrap(), c(1).pow(2).scale(&r(3, 1)));
        // Constants are annihilated.
        assert_eq!(l1.apply(&Poly::one()).unwrap(), Poly::zero());
    }

    #[test]
    fn l_zero_measures_weight() {
        let l0 = build_l_zero(8);
        let x = &c(1).pow(2) * &c(3);
        assert_eq!(l0.apply(&x).unwrap(), x.scale(&r(5, 1)));
        assert_eq!(l0.apply(&Poly::one()).unwrap(), Poly::zero());
        let hx = &Poly::sym_h() * &c(2);
        assert_eq!(l0.apply(&hx).unwrap(), hx.scale(&r(2, 1)));
    }

    #[test]
    fn apply_beyond_horizon_is_an_error() {
        let l1 = build_l_plus(1, 3);
        let err = l1.apply(&c(4)).unwrap_err();
        assert!(matches!(
            err,
            Error::HorizonExceeded {
                needed: 4,
                available: 3
            }
        ));
    }

    #[test]
    fn l_minus_frozen_components() {
        for form in [LMinusForm::Series, LMinusForm::Derivative] {
            let lm1 = build_l_minus(1, 4, form);
            let mut d1 = c(2).scale(&r(3, 1));
            d1.add_assign(&c(1).pow(2).scale(&r(-2, 1)));
            assert_eq!(lm1.deriv_coeff(1).unwrap(), d1);
            let mut d2 = c(3).scale(&r(4, 1));
            d2.add_assign(&(&c(1) * &c(2)).scale(&r(-2, 1)));
            assert_eq!(lm1.deriv_coeff(2).unwrap(), d2);
        }
    }

    #[test]
    fn l_minus_low_orders_cancel() {
        for k in 1..=4u64 {
            let s = l_minus_derivative(k, 6);
            for order in (1 - k as i64)..=1 {
                assert!(
                    s.coeff(order).unwrap().is_zero(),
                    "k = {}, order {} should cancel",
                    k,
                    order
                );
            }
        }
    }

    #[test]
    fn l_minus_forms_and_oracle_agree() {
        for k in 1..=3u64 {
            let series = build_l_minus(k, 6, LMinusForm::Series);
            let deriv = build_l_minus(k, 6, LMinusForm::Derivative);
            let oracle = build_l_minus_oracle(k, 6);
            assert_eq!(series, deriv, "forms disagree at k = {}", k);
            assert_eq!(deriv, oracle, "oracle disagrees at k = {}", k);
        }
    }

    #[test]
    fn weight_contracts_hold() {
        for k in 1..=4 {
            assert!(build_l_plus(k, 8).satisfies_weight_contract());
            assert!(build_l_minus(k, 8, LMinusForm::Derivative).satisfies_weight_contract());
            assert!(build_hat(-(k as i64), 8).satisfies_weight_contract());
        }
        assert!(build_l_zero(8).satisfies_weight_contract());
        assert!(build_hat(0, 8).satisfies_weight_contract());
    }

    #[test]
    fn witt_bracket_on_lowering_generators() {
        // [L_1, L_2] = (1 - 2) L_3 = -L_3.
        let l1 = build_l_plus(1, 8);
        let l2 = build_l_plus(2, 8);
        let bracket = DiffOp::commutator(&l1, &l2).unwrap();
        let expected = build_l_plus(3, 6).scale(&r(-1, 1));
        assert_eq!(bracket, expected);
    }

    #[test]
    fn first_mixed_bracket_gives_grading_operator() {
        // [L_1, L_-1] = 2 (L_0 + h), including the multiplication part.
        let a = build_hat(1, 8);
        let b = build_hat(-1, 8);
        let bracket = DiffOp::commutator(&a, &b).unwrap();
        let expected = build_hat(0, 7).scale(&r(2, 1));
        assert_eq!(bracket, expected);
    }

    #[test]
    fn central_term_appears_at_weight_two() {
        // [L_2, L_-2] = 4 (L_0 + h) + cc/2.
        let a = build_hat(2, 8);
        let b = build_hat(-2, 8);
        let bracket = DiffOp::commutator(&a, &b).unwrap();
        let mut expected_mult = Poly::sym_h().scale(&r(4, 1));
        expected_mult.add_assign(&Poly::sym_cc().scale(&r(1, 2)));
        assert_eq!(bracket.mult(), &expected_mult);
        for q in 1..=bracket.p_max() {
            assert_eq!(
                bracket.deriv_coeff(q).unwrap(),
                c(q as u16).scale(&r(4 * q, 1))
            );
        }
    }

    #[test]
    fn hats_act_on_the_vacuum() {
        let one = Poly::one();
        assert_eq!(build_hat(0, 4).apply(&one).unwrap(), Poly::sym_h());
        for k in 1..=4 {
            assert_eq!(build_hat(k, 4).apply(&one).unwrap(), Poly::zero());
        }
        let q1 = (&Poly::sym_h() * &c(1)).scale(&r(2, 1));
        assert_eq!(build_hat(-1, 4).apply(&one).unwrap(), q1);
    }

    #[test]
    fn relation_holds_on_a_small_grid() {
        for n in -2..=2i64 {
            for m in -2..=2i64 {
                let outcome = verify_virasoro(n, m, 5).unwrap();
                assert!(outcome.passed(), "{}", outcome.describe());
            }
        }
    }

    #[test]
    fn grading_relation_for_raising_generators() {
        // [L_0, L_-2] = 2 L_-2.
        let outcome = verify_virasoro(0, -2, 6).unwrap();
        assert!(outcome.passed(), "{}", outcome.describe());
    }

    #[test]
    fn insufficient_horizon_is_reported() {
        let a = build_hat(1, 3);
        let b = build_hat(-1, 3);
        let err = verify_relation_with(&a, &b, 1, -1, 5).unwrap_err();
        assert!(matches!(
            err,
            Error::HorizonExceeded {
                needed: 5,
                available: 2
            }
        ));
    }

    #[test]
    fn json_round_trip_preserves_the_operator() {
        for op in [
            build_hat(-1, 5),
            build_hat(0, 5),
            build_hat(3, 5),
            DiffOp::zero(0, 0),
        ] {
            let back = DiffOp::from_json(&op.to_json()).unwrap();
            assert_eq!(back, op);
        }
        assert!(DiffOp::from_json(&json!({ "shift": 1 })).is_err());
        assert!(DiffOp::from_json(&json!({
            "shift": 1,
            "mult": Poly::zero().to_json(),
            "deriv": [{ "p": 0, "coeff": Poly::one().to_json() }],
        }))
        .is_err());
    }

    #[test]
    fn text_rendering_lists_every_component() {
        let op = build_hat(-1, 2);
        let mut d1 = c(2).scale(&r(3, 1));
        d1.add_assign(&c(1).pow(2).scale(&r(-2, 1)));
        let mut d2 = c(3).scale(&r(4, 1));
        d2.add_assign(&(&c(1) * &c(2)).scale(&r(-2, 1)));
        let q1 = (&Poly::sym_h() * &c(1)).scale(&r(2, 1));
        let text = op.to_text();
        assert_eq!(
            text,
            format!(
                "weight shift: 1\nmult: {}\nd/dc1: {}\nd/dc2: {}",
                q1.to_text('c'),
                d1.to_text('c'),
                d2.to_text('c')
            )
        );
    }

    #[test]
    fn scaling_and_addition_respect_shifts() {
        let l1 = build_l_plus(1, 4);
        let doubled = l1.scale(&r(2, 1));
        assert_eq!(
            doubled.deriv_coeff(2).unwrap(),
            c(1).scale(&r(4, 1)),
            "scaling acts coefficientwise"
        );
        let sum = l1.add(&l1).unwrap();
        assert_eq!(sum, doubled);
        let err = l1.add(&build_l_zero(4)).unwrap_err();
        assert!(matches!(err, Error::ShiftMismatch(-1, 0)));
    }
}
