//! Exact rational scalars.
//!
//! `Rational` is an arbitrary-precision rational number with a machine-word
//! fast path: values are kept as reduced `i64` fractions while they fit and
//! are promoted to a heap-allocated `BigRational` only when they do not.
//!
//! Invariants:
//! - always in lowest terms, denominator > 0, canonical zero is `0/1`;
//! - the big representation is used only for values that do not fit the small
//!   one, so structural equality of the representation is value equality.
//!
//! The fast path matters: polynomial multiplication spends most of its time
//! here, and in this crate's computations almost every coefficient fits a
//! machine word.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

#[derive(Clone, Debug)]
enum Repr {
    /// Reduced fraction with positive denominator.
    Small(i64, i64),
    /// Used only when numerator or denominator does not fit `i64`.
    Big(Box<BigRational>),
}

#[derive(Clone, Debug)]
pub struct Rational(Repr);

fn gcd_i128(a: i128, b: i128) -> i128 {
    a.unsigned_abs().gcd(&b.unsigned_abs()) as i128
}

/// Build from an unreduced `i128` fraction, demoting to the small
/// representation when possible.
fn from_i128(num: i128, den: i128) -> Rational {
    assert!(den != 0, "rational with zero denominator");
    if num == 0 {
        return Rational(Repr::Small(0, 1));
    }
    let sign = if (num < 0) != (den < 0) { -1 } else { 1 };
    let (mut n, mut d) = (num.unsigned_abs(), den.unsigned_abs());
    let g = n.gcd(&d);
    n /= g;
    d /= g;
    if n <= i64::MAX as u128 && d <= i64::MAX as u128 {
        Rational(Repr::Small(sign * n as i64, d as i64))
    } else {
        let big = BigRational::new(BigInt::from(sign) * BigInt::from(n), BigInt::from(d));
        Rational(Repr::Big(Box::new(big)))
    }
}

/// Demote an already-reduced `BigRational` when it fits machine words.
fn demote(big: BigRational) -> Rational {
    if let (Some(n), Some(d)) = (big.numer().to_i64(), big.denom().to_i64()) {
        Rational(Repr::Small(n, d))
    } else {
        Rational(Repr::Big(Box::new(big)))
    }
}

impl Rational {
    pub fn zero() -> Self {
        Rational(Repr::Small(0, 1))
    }

    pub fn one() -> Self {
        Rational(Repr::Small(1, 1))
    }

    pub fn int(n: i64) -> Self {
        Rational(Repr::Small(n, 1))
    }

    /// `n/d` in lowest terms. Panics if `d == 0`.
    pub fn new(n: i64, d: i64) -> Self {
        from_i128(n as i128, d as i128)
    }

    pub fn from_big(big: BigRational) -> Self {
        demote(big.reduced())
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    /// The numerator when the value is an integer that fits `i64`.
    pub fn as_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(n, 1) => Some(*n),
            _ => None,
        }
    }

    pub fn abs(&self) -> Rational {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Product with an integer.
    pub fn scale_int(&self, k: i64) -> Rational {
        self * &Rational::int(k)
    }

    pub fn recip(&self) -> Option<Rational> {
        if self.is_zero() {
            return None;
        }
        Some(match &self.0 {
            Repr::Small(n, d) => from_i128(*d as i128, *n as i128),
            Repr::Big(b) => demote(b.recip()),
        })
    }

    /// Integer power; `e < 0` inverts (panics on zero base).
    pub fn pow(&self, e: i32) -> Rational {
        if e == 0 {
            return Rational::one();
        }
        if self.is_zero() {
            assert!(e > 0, "zero raised to a non-positive power");
            return Rational::zero();
        }
        let base = if e < 0 {
            self.recip().expect("nonzero")
        } else {
            self.clone()
        };
        let mut acc = Rational::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    /// Exact rational power with a rational exponent, when one exists.
    ///
    /// Integer exponents always succeed on nonzero values. For an exponent
    /// `a/b` the value must possess an exact rational `b`-th root.
    pub fn pow_rational(&self, e: &Rational) -> Result<Rational> {
        if let Some(i) = e.as_i64() {
            if self.is_zero() && i <= 0 {
                return Err(Error::LeadingNotUnit("0".to_string()));
            }
            return Ok(self.pow(i32::try_from(i).expect("exponent fits i32")));
        }
        let no_root = || Error::NoExactRoot {
            base: self.to_string(),
            exp: e.to_string(),
        };
        let big = self.to_big();
        let eb = e.to_big();
        let root_deg = eb.denom().to_u32().ok_or_else(no_root)?;
        if self.is_zero() {
            return if e.is_negative() {
                Err(Error::LeadingNotUnit("0".to_string()))
            } else {
                Ok(Rational::zero())
            };
        }
        if big.is_negative() && root_deg % 2 == 0 {
            return Err(no_root());
        }
        let root = |x: &BigInt| -> Result<BigInt> {
            let r = x.nth_root(root_deg);
            if &r.pow(root_deg) == x {
                Ok(r)
            } else {
                Err(no_root())
            }
        };
        let rn = root(big.numer())?;
        let rd = root(big.denom())?;
        let base_root = Rational::from_big(BigRational::new(rn, rd));
        let a = eb.numer().to_i32().ok_or_else(no_root)?;
        Ok(base_root.pow(a))
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        // Canonical representation: Big is only used when Small cannot hold
        // the value, so cross-representation values are never equal.
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            (Repr::Big(a), Repr::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl Add for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                let num = (*a as i128)
                    .checked_mul(*d as i128)
                    .and_then(|x| x.checked_add(*c as i128 * *b as i128));
                match num {
                    Some(n) => from_i128(n, *b as i128 * *d as i128),
                    None => demote(self.to_big() + rhs.to_big()),
                }
            }
            _ => demote(self.to_big() + rhs.to_big()),
        }
    }
}

impl Sub for &Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        self + &(-rhs)
    }
}

impl Mul for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                // Cross-cancel before multiplying to keep intermediates small.
                let g1 = gcd_i128(*a as i128, *d as i128).max(1);
                let g2 = gcd_i128(*c as i128, *b as i128).max(1);
                let n = (*a as i128 / g1) * (*c as i128 / g2);
                let den = (*b as i128 / g2) * (*d as i128 / g1);
                from_i128(n, den)
            }
            _ => demote(self.to_big() * rhs.to_big()),
        }
    }
}

impl Div for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        let inv = rhs.recip().expect("division by zero rational");
        self * &inv
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match &self.0 {
            Repr::Small(n, d) => Rational(Repr::Small(-n, *d)),
            Repr::Big(b) => demote(-(**b).clone()),
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| &acc + &x)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::int(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) => {
                if b.is_integer() {
                    write!(f, "{}", b.numer())
                } else {
                    write!(f, "{}/{}", b.numer(), b.denom())
                }
            }
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Parses `"num"` or `"num/den"` with arbitrary-precision integers.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidRational(s.to_string());
        let (num_str, den_str) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let num = BigInt::from_str(num_str.trim()).map_err(|_| bad())?;
        let den = BigInt::from_str(den_str.trim()).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(Rational::from_big(BigRational::new(num, den)))
    }
}

/// `n!` as a rational.
pub fn factorial(n: u64) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    Rational::from_big(BigRational::from_integer(acc))
}

/// Binomial coefficient `C(n, k)` for integer `n >= 0`.
pub fn binomial(n: u64, k: u64) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    Rational::from_big(BigRational::new(num, den))
}

/// Falling product `p (p-1) ... (p-(count-1))` with a rational start.
pub fn falling(p: &Rational, count: u64) -> Rational {
    let mut acc = Rational::one();
    for i in 0..count {
        acc = &acc * &(p - &Rational::int(i as i64));
    }
    acc
}

/// Rising product `(p+from) (p+from+1) ... (p+to)`; empty when `to < from`.
pub fn rising(p: &Rational, from: i64, to: i64) -> Rational {
    let mut acc = Rational::one();
    let mut i = from;
    while i <= to {
        acc = &acc * &(p + &Rational::int(i));
        i += 1;
    }
    acc
}
