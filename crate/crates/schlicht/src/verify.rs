//! Named verification suites.
//!
//! Every closed-form expansion in the library is replayed against an
//! independently computed oracle — generic series arithmetic that never
//! touches the closed-form coefficient formulas — and compared exactly.
//! Randomized parameter draws are generated from a seeded stream so every
//! run is reproducible byte for byte.
//!
//! Suites:
//!
//! * `symfun` — Waring/Faber polynomial identities, the inverse-pair
//!   property, and the one-variable Faber defining condition;
//! * `lemmas` — the five structured coefficient expansions of [`crate::expand`]
//!   against their series oracles, with random rational parameters;
//! * `prop31` — the univalent-function kernels (`expand_a`, `expand_b`,
//!   the Schwarzian) against derivative-built oracles, plus the Möbius
//!   vanishing check;
//! * `grunsky` — the closed-form Grunsky table against the log-derivative
//!   oracle, with symmetry and independence checks;
//! * `virasoro` — generator form equivalence, highest-weight conditions,
//!   and the full bracket-relation grid;
//! * `all` — everything above.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::biseries::BiSeries;
use crate::expand;
use crate::poly::Poly;
use crate::rational::Rational;
use crate::series::Series;
use crate::symfun;
use crate::univalent::{self, GrunskyTable};
use crate::virasoro::{self, DiffOp, LMinusForm};
use crate::Result;

/// The named verification suites exposed on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Symfun,
    Lemmas,
    Prop31,
    Grunsky,
    Virasoro,
    All,
}

impl Suite {
    pub fn parse(name: &str) -> Option<Suite> {
        match name {
            "symfun" => Some(Suite::Symfun),
            "lemmas" => Some(Suite::Lemmas),
            "prop31" => Some(Suite::Prop31),
            "grunsky" => Some(Suite::Grunsky),
            "virasoro" => Some(Suite::Virasoro),
            "all" => Some(Suite::All),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Symfun => "symfun",
            Suite::Lemmas => "lemmas",
            Suite::Prop31 => "prop31",
            Suite::Grunsky => "grunsky",
            Suite::Virasoro => "virasoro",
            Suite::All => "all",
        }
    }
}

/// Outcome of one named check: on failure, `detail` holds the first
/// counterexample with both the closed-form and the oracle value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: Option<String>,
}

impl CheckResult {
    fn pass(name: impl Into<String>) -> CheckResult {
        CheckResult {
            name: name.into(),
            passed: true,
            detail: None,
        }
    }

    fn fail(name: impl Into<String>, detail: String) -> CheckResult {
        CheckResult {
            name: name.into(),
            passed: false,
            detail: Some(detail),
        }
    }

    fn of(name: impl Into<String>, outcome: std::result::Result<(), String>) -> CheckResult {
        match outcome {
            Ok(()) => CheckResult::pass(name),
            Err(detail) => CheckResult::fail(name, detail),
        }
    }

    /// One line per passing check; failing checks append the counterexample.
    pub fn describe(&self) -> String {
        if self.passed {
            format!("PASS  {}", self.name)
        } else {
            format!(
                "FAIL  {}\n      {}",
                self.name,
                self.detail.as_deref().unwrap_or("(no detail)")
            )
        }
    }
}

/// Runs a suite at the given order with the given random seed.
pub fn run(suite: Suite, order: i64, seed: u64) -> Result<Vec<CheckResult>> {
    match suite {
        Suite::Symfun => suite_symfun(order),
        Suite::Lemmas => suite_lemmas(order, seed),
        Suite::Prop31 => suite_prop31(order),
        Suite::Grunsky => suite_grunsky(order),
        Suite::Virasoro => suite_virasoro(order),
        Suite::All => {
            let mut out = suite_symfun(order)?;
            out.extend(suite_lemmas(order, seed)?);
            out.extend(suite_prop31(order)?);
            out.extend(suite_grunsky(order)?);
            out.extend(suite_virasoro(order)?);
            Ok(out)
        }
    }
}

// ---------------------------------------------------------------------------
// comparison helpers

fn coeff_in_window(s: &Series, n: i64) -> Poly {
    if n < s.low() {
        Poly::zero()
    } else {
        s.coeff(n).expect("order within the exact window")
    }
}

/// Compares two series exactly through `min(through, both windows)`.
fn series_check(name: String, closed: &Series, oracle: &Series, through: i64) -> CheckResult {
    let top = through.min(closed.trunc()).min(oracle.trunc());
    let bottom = closed.low().min(oracle.low());
    for n in bottom..=top {
        let a = coeff_in_window(closed, n);
        let b = coeff_in_window(oracle, n);
        if a != b {
            return CheckResult::fail(
                name,
                format!(
                    "coefficient of z^{}: closed form = {}, oracle = {}",
                    n,
                    a.to_text('c'),
                    b.to_text('c')
                ),
            );
        }
    }
    CheckResult::pass(name)
}

fn poly_check(name: String, closed: &Poly, oracle: &Poly, letter: char) -> CheckResult {
    if closed == oracle {
        CheckResult::pass(name)
    } else {
        CheckResult::fail(
            name,
            format!(
                "closed form = {}, oracle = {}",
                closed.to_text(letter),
                oracle.to_text(letter)
            ),
        )
    }
}

/// Compares two bivariate expansions exactly through total degree
/// `min(through, both truncations)`.
fn bi_check(name: String, closed: &BiSeries, oracle: &BiSeries, through: i64) -> CheckResult {
    let top = through.min(closed.max_total()).min(oracle.max_total());
    for total in 0..=top {
        for p in 0..=total {
            let q = total - p;
            let a = closed.coeff(p, q).expect("within total truncation");
            let b = oracle.coeff(p, q).expect("within total truncation");
            if a != b {
                return CheckResult::fail(
                    name,
                    format!(
                        "coefficient of z^{} u^{}: closed form = {}, oracle = {}",
                        p,
                        q,
                        a.to_text('c'),
                        b.to_text('c')
                    ),
                );
            }
        }
    }
    CheckResult::pass(name)
}

// ---------------------------------------------------------------------------
// random draws

fn draw_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=9))
}

fn draw_nonzero_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let r = draw_rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

fn draw_small_int(rng: &mut ChaCha8Rng) -> Rational {
    Rational::int(rng.gen_range(-3..=3))
}

// ---------------------------------------------------------------------------
// suites

/// Waring/Faber polynomial identities over their free generators, the
/// concrete-alphabet anchor, the inverse-pair property, and the Faber
/// defining condition.
pub fn suite_symfun(order: i64) -> Result<Vec<CheckResult>> {
    let n_max = order.clamp(1, 12) as usize;
    let mut out = Vec::new();
    let vars: Vec<Poly> = (1..=n_max).map(|j| Poly::var(j as u16)).collect();

    // The Waring polynomial applied to signed power sums (written in the
    // elementary generators, which are algebraically free) returns the n-th
    // elementary generator itself.
    let power_in_elem = symfun::power_sums_in_elementary(n_max);
    for n in 1..=n_max {
        let args: Vec<Poly> = (1..=n)
            .map(|j| {
                let p = power_in_elem[j - 1].clone();
                if j % 2 == 1 {
                    -&p
                } else {
                    p
                }
            })
            .collect();
        let value = symfun::waring_p(n, &args)?;
        out.push(poly_check(
            format!("waring polynomial recovers the elementary generator (n = {n})"),
            &value,
            &Poly::var(n as u16),
            'e',
        ));
    }

    // Dually, the Faber polynomial applied to the elementary generators
    // (written in the free power-sum generators) returns the signed power sum.
    let elem_in_power = symfun::elementary_in_power_sums(n_max);
    for n in 1..=n_max {
        let args: Vec<Poly> = elem_in_power[..n].to_vec();
        let value = symfun::faber_q(n, &args)?;
        let expected = if n % 2 == 1 {
            -&Poly::var(n as u16)
        } else {
            Poly::var(n as u16)
        };
        out.push(poly_check(
            format!("faber polynomial recovers the signed power sum (n = {n})"),
            &value,
            &expected,
            'p',
        ));
    }

    // Concrete anchor: on an explicit alphabet x_1..x_n the same identity
    // holds with the power sums and elementary polynomials computed directly.
    for n in 1..=n_max.min(5) {
        let xs: Vec<Poly> = (1..=n).map(|j| Poly::var(j as u16)).collect();
        let args: Vec<Poly> = (1..=n)
            .map(|k| {
                let p = symfun::newton_sum(k, &xs);
                if k % 2 == 1 {
                    -&p
                } else {
                    p
                }
            })
            .collect();
        let value = symfun::waring_p(n, &args)?;
        let expected = symfun::elementary_symmetric(n, &xs);
        out.push(poly_check(
            format!("waring theorem on a concrete alphabet (n = {n})"),
            &value,
            &expected,
            'x',
        ));
    }

    // Inverse pair: each family applied to the other collapses to the
    // identity.
    let warings: Vec<Poly> = (1..=n_max)
        .map(|i| symfun::waring_p(i, &vars))
        .collect::<Result<_>>()?;
    let fabers: Vec<Poly> = (1..=n_max)
        .map(|i| symfun::faber_q(i, &vars))
        .collect::<Result<_>>()?;
    for n in 1..=n_max {
        let via_faber = symfun::faber_q(n, &warings[..n])?;
        out.push(poly_check(
            format!("faber of waring collapses to the identity (n = {n})"),
            &via_faber,
            &vars[n - 1],
            'a',
        ));
        let via_waring = symfun::waring_p(n, &fabers[..n])?;
        out.push(poly_check(
            format!("waring of faber collapses to the identity (n = {n})"),
            &via_waring,
            &vars[n - 1],
            'a',
        ));
    }

    // Closed forms against the generating-series oracles.
    for n in 1..=n_max {
        out.push(poly_check(
            format!("waring polynomial vs series oracle (n = {n})"),
            &symfun::waring_p(n, &vars)?,
            &symfun::waring_p_oracle(n, &vars)?,
            'a',
        ));
        out.push(poly_check(
            format!("faber polynomial vs series oracle (n = {n})"),
            &symfun::faber_q(n, &vars)?,
            &symfun::faber_q_oracle(n, &vars)?,
            'a',
        ));
    }

    // Faber defining condition: the defect has only negative orders.
    for n in 1..=n_max.min(8) {
        let k_max = (12 - n as i64).max(1);
        let defect = symfun::phi_defect(n, k_max)?;
        let mut bad = None;
        for m in defect.low()..=0 {
            let c = coeff_in_window(&defect, m);
            if !c.is_zero() {
                bad = Some((m, c));
                break;
            }
        }
        out.push(CheckResult::of(
            format!("faber defect carries only negative orders (n = {n})"),
            match bad {
                None => Ok(()),
                Some((m, c)) => Err(format!(
                    "coefficient of w^{}: closed form = {}, oracle = 0",
                    m,
                    c.to_text('b')
                )),
            },
        ));
    }

    Ok(out)
}

/// The five structured coefficient expansions against their series oracles,
/// with seeded random rational parameters (integer exponents on even draws
/// exercise the plain-product oracle path; rational exponents exercise the
/// exp/log path).
pub fn suite_lemmas(order: i64, seed: u64) -> Result<Vec<CheckResult>> {
    let n = order.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();

    for draw in 0..10usize {
        let len = 3 + draw % 3;
        let alpha: Vec<Rational> = (0..len).map(|_| draw_nonzero_rational(&mut rng)).collect();
        let mu_scalars: Vec<Rational> = (0..len)
            .map(|_| {
                if draw % 2 == 0 {
                    draw_small_int(&mut rng)
                } else {
                    draw_rational(&mut rng)
                }
            })
            .collect();
        let mu: Vec<Poly> = mu_scalars.iter().map(|r| Poly::constant(r.clone())).collect();
        let closed = expand::product_powers_expand(&alpha, &mu, n)?;
        let oracle = expand::product_powers_oracle(&alpha, &mu, n)?;
        out.push(series_check(
            format!("binomial-product expansion vs oracle (draw {draw})"),
            &closed,
            &oracle,
            n,
        ));
    }

    for draw in 0..10usize {
        let len = 3 + draw % 3;
        let mu_scalars: Vec<Rational> = (0..len)
            .map(|_| {
                if draw % 2 == 0 {
                    draw_small_int(&mut rng)
                } else {
                    draw_rational(&mut rng)
                }
            })
            .collect();
        let mu: Vec<Poly> = mu_scalars.iter().map(|r| Poly::constant(r.clone())).collect();
        let closed = expand::cyclotomic_ratio_expand(&mu, n)?;
        let oracle = expand::cyclotomic_ratio_oracle(&mu, n)?;
        out.push(series_check(
            format!("cyclotomic-ratio expansion vs oracle (draw {draw})"),
            &closed,
            &oracle,
            n,
        ));
    }

    for draw in 0..10usize {
        let a: Vec<Poly> = (0..=n as usize)
            .map(|_| Poly::constant(draw_rational(&mut rng)))
            .collect();
        let closed = expand::compose_expand(&a, n);
        let oracle = expand::compose_oracle(&a, n)?;
        out.push(series_check(
            format!("composition expansion vs oracle (draw {draw})"),
            &closed,
            &oracle,
            n,
        ));
    }

    for draw in 0..10usize {
        let alpha: Vec<Rational> = (0..n as usize).map(|_| draw_rational(&mut rng)).collect();
        let k = draw % 4;
        let p = draw_rational(&mut rng);
        let closed = expand::psi_phi_expand(&alpha, k, &p, n);
        let oracle = expand::psi_phi_oracle(&alpha, k, &p, n)?;
        out.push(series_check(
            format!("power-times-ratio expansion vs oracle (k = {k}, draw {draw})"),
            &closed,
            &oracle,
            n,
        ));
    }

    for draw in 0..10usize {
        let len = 2 + draw % 4;
        let a: Vec<Poly> = (0..len)
            .map(|_| Poly::constant(draw_rational(&mut rng)))
            .collect();
        let closed = expand::divided_difference_expand(&a, n);
        let oracle = expand::divided_difference_oracle(&a, n)?;
        out.push(bi_check(
            format!("divided-difference expansion vs oracle (draw {draw})"),
            &closed,
            &oracle,
            n,
        ));
    }

    Ok(out)
}

fn sample_ps() -> Vec<Rational> {
    vec![
        Rational::int(0),
        Rational::int(1),
        Rational::int(-1),
        Rational::int(2),
        Rational::int(-2),
        Rational::new(1, 2),
        Rational::new(-3, 2),
        Rational::new(7, 5),
        Rational::int(5),
    ]
}

/// The univalent-function kernels against derivative-built oracles, plus the
/// Möbius vanishing check and the anomaly-series spot values.
pub fn suite_prop31(order: i64) -> Result<Vec<CheckResult>> {
    let n = order.max(2);
    let mut out = Vec::new();

    for p in sample_ps() {
        let closed = univalent::expand_a(&p, n);
        let oracle = univalent::expand_a_oracle(&p, n)?;
        out.push(series_check(
            format!("kernel f'^2 expansion vs oracle (p = {p})"),
            &closed,
            &oracle,
            n,
        ));
        let closed = univalent::expand_b(&p, n);
        let oracle = univalent::expand_b_oracle(&p, n)?;
        out.push(series_check(
            format!("kernel f'' expansion vs oracle (p = {p})"),
            &closed,
            &oracle,
            n,
        ));
    }

    let closed = univalent::schwarzian(n);
    let oracle = univalent::schwarzian_oracle(n)?;
    out.push(series_check(
        "schwarzian expansion vs derivative-built oracle".to_string(),
        &closed,
        &oracle,
        n,
    ));

    // The Schwarzian annihilates the Möbius family c_j = a^j (symbolic a).
    let moebius = closed.substitute_c(|j| Poly::sym_h().pow(u32::from(j)));
    let mut bad = None;
    for m in moebius.low()..=moebius.trunc() {
        let c = coeff_in_window(&moebius, m);
        if !c.is_zero() {
            bad = Some((m, c));
            break;
        }
    }
    out.push(CheckResult::of(
        format!("schwarzian vanishes on the moebius family (order {n})"),
        match bad {
            None => Ok(()),
            Some((m, c)) => Err(format!(
                "coefficient of z^{}: closed form = {}, oracle = 0",
                m,
                c.to_text('c')
            )),
        },
    ));

    // Frozen low-order values of the anomaly series.
    let q = univalent::q_series(2);
    out.push(poly_check(
        "anomaly series order 0".to_string(),
        &q.coeff(0)?,
        &Poly::sym_h(),
        'c',
    ));
    out.push(poly_check(
        "anomaly series order 1".to_string(),
        &q.coeff(1)?,
        &(&Poly::sym_h() * &Poly::var(1)).scale(&Rational::int(2)),
        'c',
    ));
    let mut q2 = &Poly::sym_h()
        * &{
            let mut t = Poly::var(2).scale(&Rational::int(4));
            t.add_assign(&-&Poly::var(1).pow(2));
            t
        };
    q2.add_assign(&(&Poly::sym_cc().scale(&Rational::new(1, 2)) * &{
        let mut t = Poly::var(2);
        t.add_assign(&-&Poly::var(1).pow(2));
        t
    }));
    out.push(poly_check(
        "anomaly series order 2".to_string(),
        &q.coeff(2)?,
        &q2,
        'c',
    ));

    Ok(out)
}

/// The closed-form Grunsky table against the log-derivative oracle, plus
/// symmetry, first-variable independence, and weight homogeneity.
pub fn suite_grunsky(order: i64) -> Result<Vec<CheckResult>> {
    let w = order.max(2);
    let mut out = Vec::new();
    let closed = GrunskyTable::closed_form(w);
    let oracle = univalent::grunsky_oracle(w)?;

    let mut first_bad = None;
    for (n, k, poly) in closed.iter() {
        let other = oracle.get(n, k).cloned().unwrap_or_else(Poly::zero);
        if poly != &other {
            first_bad = Some((n, k, poly.clone(), other));
            break;
        }
    }
    out.push(CheckResult::of(
        format!("grunsky closed form vs log-derivative oracle (n + k <= {w})"),
        match first_bad {
            None => Ok(()),
            Some((n, k, a, b)) => Err(format!(
                "entry ({}, {}): closed form = {}, oracle = {}",
                n,
                k,
                a.to_text('b'),
                b.to_text('b')
            )),
        },
    ));

    out.push(poly_check(
        "grunsky entry (1, 1) is the second coefficient".to_string(),
        closed.get(1, 1).expect("entry within table"),
        &Poly::var(2),
        'b',
    ));

    let mut sym_bad = None;
    for (n, k, poly) in closed.iter() {
        let mirrored = closed.get(k, n).expect("table is total").clone();
        let lhs = poly.scale(&Rational::int(k as i64));
        let rhs = mirrored.scale(&Rational::int(n as i64));
        if lhs != rhs {
            sym_bad = Some((n, k, lhs, rhs));
            break;
        }
    }
    out.push(CheckResult::of(
        "grunsky symmetry k*beta(n,k) = n*beta(k,n)".to_string(),
        match sym_bad {
            None => Ok(()),
            Some((n, k, a, b)) => Err(format!(
                "entry ({}, {}): closed form = {}, oracle = {}",
                n,
                k,
                a.to_text('b'),
                b.to_text('b')
            )),
        },
    ));

    let mut dep_bad = None;
    'outer: for (n, k, poly) in closed.iter() {
        for (mono, _) in poly.terms() {
            if mono.cs.exp(1) != 0 {
                dep_bad = Some((n, k, poly.clone()));
                break 'outer;
            }
        }
    }
    out.push(CheckResult::of(
        "grunsky entries never involve the first coefficient".to_string(),
        match dep_bad {
            None => Ok(()),
            Some((n, k, p)) => Err(format!(
                "entry ({}, {}): closed form = {}, oracle excludes b1",
                n,
                k,
                p.to_text('b')
            )),
        },
    ));

    let mut weight_bad = None;
    for (n, k, poly) in closed.iter() {
        if !poly.is_weight_homogeneous(n + k) {
            weight_bad = Some((n, k, poly.clone()));
            break;
        }
    }
    out.push(CheckResult::of(
        "grunsky entries are weight homogeneous".to_string(),
        match weight_bad {
            None => Ok(()),
            Some((n, k, p)) => Err(format!(
                "entry ({}, {}): closed form = {}, oracle is homogeneous of weight {}",
                n,
                k,
                p.to_text('b'),
                n + k
            )),
        },
    ));

    Ok(out)
}

/// Generator form equivalence, weight contracts, highest-weight conditions,
/// and the full bracket-relation grid `|n|, |m| <= 4` at the given weight.
pub fn suite_virasoro(order: i64) -> Result<Vec<CheckResult>> {
    let n_weight = order.max(2);
    let mut out = Vec::new();

    // Triple agreement of the raising-generator constructions.
    for k in 1..=5u64 {
        let series = virasoro::build_l_minus(k, 8, LMinusForm::Series);
        let deriv = virasoro::build_l_minus(k, 8, LMinusForm::Derivative);
        let oracle = virasoro::build_l_minus_oracle(k, 8);
        let name = format!("raising generator forms agree (k = {k}, p <= 8)");
        if series != deriv {
            out.push(CheckResult::fail(
                name,
                "series form and derivative form differ".to_string(),
            ));
        } else if deriv != oracle {
            let mut detail = "closed forms differ from the residue oracle".to_string();
            for p in 1..=8 {
                let a = deriv.deriv_coeff(p)?;
                let b = oracle.deriv_coeff(p)?;
                if a != b {
                    detail = format!(
                        "component d/dc{}: closed form = {}, oracle = {}",
                        p,
                        a.to_text('c'),
                        b.to_text('c')
                    );
                    break;
                }
            }
            out.push(CheckResult::fail(name, detail));
        } else {
            out.push(CheckResult::pass(name));
        }
    }

    // Frozen spot value.
    let lm1 = virasoro::build_l_minus(1, 4, LMinusForm::Derivative);
    let mut spot = Poly::var(2).scale(&Rational::int(3));
    spot.add_assign(&Poly::var(1).pow(2).scale(&Rational::int(-2)));
    out.push(poly_check(
        "raising generator spot value (k = 1, component 1)".to_string(),
        &lm1.deriv_coeff(1)?,
        &spot,
        'c',
    ));

    // Weight contracts for every constructor.
    let mut contract_bad = None;
    for n in -4..=4i64 {
        let op = virasoro::build_hat(n, 8);
        if !op.satisfies_weight_contract() {
            contract_bad = Some(n);
            break;
        }
    }
    out.push(CheckResult::of(
        "generators satisfy the weight contract (|n| <= 4, p <= 8)".to_string(),
        match contract_bad {
            None => Ok(()),
            Some(n) => Err(format!(
                "generator n = {n}: closed form violates homogeneity, oracle expects weight p - n"
            )),
        },
    ));

    // Highest-weight conditions.
    let one = Poly::one();
    out.push(poly_check(
        "vacuum eigenvalue of the grading generator".to_string(),
        &virasoro::build_hat(0, 4).apply(&one)?,
        &Poly::sym_h(),
        'c',
    ));
    for k in 1..=4i64 {
        out.push(poly_check(
            format!("lowering generator annihilates the vacuum (n = {k})"),
            &virasoro::build_hat(k, 4).apply(&one)?,
            &Poly::zero(),
            'c',
        ));
    }
    out.push(poly_check(
        "first raising generator on the vacuum".to_string(),
        &virasoro::build_hat(-1, 4).apply(&one)?,
        &(&Poly::sym_h() * &Poly::var(1)).scale(&Rational::int(2)),
        'c',
    ));

    // Central-term spot value: [L(2), L(-2)] carries cc/2 beyond 4(L_0 + h).
    let a = virasoro::build_hat(2, n_weight + 2);
    let b = virasoro::build_hat(-2, n_weight + 2);
    let bracket = DiffOp::commutator(&a, &b)?;
    let mut expected = Poly::sym_h().scale(&Rational::int(4));
    expected.add_assign(&Poly::sym_cc().scale(&Rational::new(1, 2)));
    out.push(poly_check(
        "central charge appears at (n, m) = (2, -2)".to_string(),
        bracket.mult(),
        &expected,
        'c',
    ));

    // The full bracket grid, with the generators cached at a horizon wide
    // enough for every pair.
    let horizon = n_weight + 4;
    let mut hats = std::collections::BTreeMap::new();
    for n in -4..=4i64 {
        hats.insert(n, virasoro::build_hat(n, horizon));
    }
    for n in -4..=4i64 {
        for m in -4..=4i64 {
            let outcome =
                virasoro::verify_relation_with(&hats[&n], &hats[&m], n, m, n_weight)?;
            let name = format!(
                "bracket relation [L({}), L({})] on components p <= {}",
                n, m, n_weight
            );
            if outcome.passed() {
                out.push(CheckResult::pass(name));
            } else {
                let mm = &outcome.mismatches[0];
                out.push(CheckResult::fail(
                    name,
                    format!(
                        "component {}: closed form = {}, oracle = {}",
                        mm.component,
                        mm.lhs.to_text('c'),
                        mm.rhs.to_text('c')
                    ),
                ));
            }
        }
    }

    Ok(out)
}
