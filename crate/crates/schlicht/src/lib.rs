//! Exact computer algebra for the Taylor coefficients of univalent functions.
//!
//! Everything here is computed over arbitrary-precision rationals — no floats,
//! no numeric tolerances. The crate provides, bottom up:
//!
//! - [`rational`]: exact rational scalars with a machine-word fast path;
//! - [`multi_index`]: sparse exponent vectors graded by weight;
//! - [`poly`]: sparse multivariate polynomials in the coefficient symbols
//!   `c1, c2, ...` plus two weight-zero parameters `h` and `cc`;
//! - [`series`] / [`biseries`]: truncated Laurent series (one and two
//!   variables) with polynomial coefficients and conservative truncation
//!   bookkeeping;
//! - [`symfun`]: Waring and Faber polynomials and their symmetric-function
//!   identities;
//! - [`expand`]: closed-form coefficient expansions of structured series
//!   (products of binomial powers, cyclotomic ratios, compositions, divided
//!   differences), each paired with a generic series oracle;
//! - [`univalent`]: coefficient expansions attached to a normalized univalent
//!   function `f(z) = z + c1 z^2 + ...` — the three classical kernels
//!   `z^(p+2) f'^2 / f^(p+2)`, `z^(p+1) f'' / f^p`, `z^2 S_f` — plus the
//!   `Q`-series and Grunsky coefficients;
//! - [`virasoro`]: first-order differential operators `L_k` on the polynomial
//!   ring in the `c_j`, their central extensions, and exact commutator checks;
//! - [`verify`]: named verification suites comparing every closed form against
//!   an independent series oracle;
//! - [`cli`]: the command-line surface over all of the above, with
//!   deterministic text/JSON output.
//!
//! The library's guiding rule: every explicit formula is cross-checked against
//! a derivation-free oracle built only from generic series arithmetic, so a
//! transcription mistake in either side cannot hide.

pub mod biseries;
pub mod cli;
pub mod expand;
pub mod multi_index;
pub mod poly;
pub mod rational;
pub mod series;
pub mod symfun;
pub mod univalent;
pub mod verify;
pub mod virasoro;

pub use biseries::BiSeries;
pub use multi_index::MultiIndex;
pub use poly::{Monomial, Poly};
pub use rational::Rational;
pub use series::Series;

/// Errors reported by series and operator computations.
///
/// All of these are contract violations (asking for data beyond a truncation
/// horizon, inverting a non-unit, ...) — never silent approximations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("cannot parse rational from {0:?}")]
    InvalidRational(String),
    #[error("no exact rational {exp} power of {base}")]
    NoExactRoot { base: String, exp: String },
    #[error("leading coefficient {0} is not an invertible constant")]
    LeadingNotUnit(String),
    #[error("non-integral leading exponent: z^{low} raised to the power {exp}")]
    NonIntegralLeadingExponent { low: i64, exp: String },
    #[error(
        "exp requires a series with no constant or negative-order terms; found {0} at order {1}"
    )]
    ExpLowOrder(String, i64),
    #[error("log requires constant term exactly 1; found {0} at order {1}")]
    LogConstantTerm(String, i64),
    #[error("composition requires inner order >= 1; inner series starts at order {0}")]
    ComposeInnerOrder(i64),
    #[error("composition requires outer order >= 0; outer series starts at order {0}")]
    ComposeOuterOrder(i64),
    #[error(
        "reverse requires a series of the form z + O(z^2); found leading term {0} at order {1}"
    )]
    ReverseNormalization(String, i64),
    #[error("coefficient of order {n} is outside the exact window [{low}, {trunc}]")]
    CoeffBeyondTruncation { n: i64, low: i64, trunc: i64 },
    #[error("bivariate coefficient ({p}, {q}) is beyond total truncation degree {max_total}")]
    BiCoeffBeyondTruncation { p: i64, q: i64, max_total: i64 },
    #[error("{what} needs at least {needed} arguments, got {got}")]
    NotEnoughArguments {
        what: &'static str,
        needed: usize,
        got: usize,
    },
    #[error("{0} is undefined for n = 0")]
    UndefinedAtZero(&'static str),
    #[error("operator component horizon exceeded: need components up to p = {needed}, operator carries p <= {available}")]
    HorizonExceeded { needed: i64, available: i64 },
    #[error("operators have incompatible weight shifts {0} and {1}")]
    ShiftMismatch(i64, i64),
    #[error("invalid JSON for {what}: {detail}")]
    InvalidJson { what: &'static str, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
