//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line (visible with `--nocapture`) and asserting exact equality.
//!
//! Every check here is an exact identity over the rationals — there are no
//! tolerances anywhere.  Time budgets are asserted with wide margins; they
//! document that the exact computations stay at desk scale.

use std::time::{Duration, Instant};

use schlicht::poly::Poly;
use schlicht::rational::Rational;
use schlicht::symfun;
use schlicht::univalent;
use schlicht::verify::{self, CheckResult, Suite};
use schlicht::virasoro::{self, LMinusForm};

fn vars(n: usize) -> Vec<Poly> {
    (1..=n).map(|j| Poly::var(j as u16)).collect()
}

fn report(index: usize, label: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    println!(
        "acceptance {index}: PASS — {label} ({elapsed:.2?} < {budget:?})",
    );
    assert!(
        elapsed < budget,
        "acceptance {index} exceeded its {budget:?} budget: {elapsed:.2?}"
    );
}

fn assert_suite_passes(results: &[CheckResult]) {
    for r in results {
        assert!(r.passed, "{}", r.describe());
    }
}

/// Waring polynomials recover the elementary symmetric functions from the
/// signed power sums, and Faber polynomials recover the signed power sums
/// from the elementary ones, for n <= 12.
///
/// The identity is checked in the free generators (the elementary functions,
/// respectively the power sums, are algebraically independent, so equality
/// there is equality as symmetric-function identities), and anchored on
/// explicit alphabets for n <= 5, where both sides are computed directly
/// from the variables.
#[test]
fn a01_waring_theorem() {
    let started = Instant::now();
    let top = 12usize;

    let power_in_elem = symfun::power_sums_in_elementary(top);
    for n in 1..=top {
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
        let value = symfun::waring_p(n, &args).unwrap();
        assert_eq!(
            value,
            Poly::var(n as u16),
            "waring polynomial must recover e_{n}"
        );
    }

    let elem_in_power = symfun::elementary_in_power_sums(top);
    for n in 1..=top {
        let value = symfun::faber_q(n, &elem_in_power[..n]).unwrap();
        let expected = if n % 2 == 1 {
            -&Poly::var(n as u16)
        } else {
            Poly::var(n as u16)
        };
        assert_eq!(value, expected, "faber polynomial must recover (-1)^{n} p_{n}");
    }

    for n in 1..=5usize {
        let xs = vars(n);
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
        let value = symfun::waring_p(n, &args).unwrap();
        assert_eq!(
            value,
            symfun::elementary_symmetric(n, &xs),
            "concrete-alphabet anchor at n = {n}"
        );
    }

    report(
        1,
        "waring/faber polynomials vs elementary and power-sum generators, n <= 12",
        started,
        Duration::from_secs(10),
    );
}

/// The two polynomial families are inverse to each other: Q_n(P_1, ..., P_n)
/// and P_n(Q_1, ..., Q_n) both collapse to the n-th variable, for n <= 12.
#[test]
fn a02_inverse_pair() {
    let started = Instant::now();
    let top = 12usize;
    let a = vars(top);
    let warings: Vec<Poly> = (1..=top)
        .map(|i| symfun::waring_p(i, &a).unwrap())
        .collect();
    let fabers: Vec<Poly> = (1..=top)
        .map(|i| symfun::faber_q(i, &a).unwrap())
        .collect();
    for n in 1..=top {
        assert_eq!(
            symfun::faber_q(n, &warings[..n]).unwrap(),
            a[n - 1],
            "faber of waring at n = {n}"
        );
        assert_eq!(
            symfun::waring_p(n, &fabers[..n]).unwrap(),
            a[n - 1],
            "waring of faber at n = {n}"
        );
    }
    report(
        2,
        "waring and faber families are mutually inverse, n <= 12",
        started,
        Duration::from_secs(10),
    );
}

/// The one-variable Faber polynomial satisfies its defining condition:
/// Phi_n applied to the expansion point leaves z^n plus strictly negative
/// orders only, checked for n <= 8 at truncation weight 12.
#[test]
fn a03_faber_defining_condition() {
    let started = Instant::now();
    for n in 1..=8usize {
        let k_max = 12 - n as i64;
        let defect = symfun::phi_defect(n, k_max).unwrap();
        for order in defect.low()..=0 {
            let coeff = defect.coeff(order).unwrap();
            assert!(
                coeff.is_zero(),
                "defect of Phi_{n} has a nonzero coefficient {} at order {order}",
                coeff.to_text('b')
            );
        }
    }
    report(
        3,
        "one-variable faber polynomials leave only negative orders, n <= 8, weight 12",
        started,
        Duration::from_secs(30),
    );
}

/// The five structured coefficient expansions match their series oracles at
/// orders up to 10 with ten seeded random rational parameter draws each.
#[test]
fn a04_structured_expansions_vs_oracles() {
    let started = Instant::now();
    let results = verify::run(Suite::Lemmas, 10, 2026).unwrap();
    assert_suite_passes(&results);
    assert_eq!(results.len(), 50, "ten draws for each of the five families");
    report(
        4,
        "structured coefficient expansions vs series oracles, order 10, 10 draws",
        started,
        Duration::from_secs(60),
    );
}

/// The univalent-function kernels match derivative-built oracles up to
/// weight 10 for the full rational parameter sample, including the
/// half-integer and pole-adjacent values, and the Schwarzian kernel matches
/// its derivative-built oracle.
#[test]
fn a05_univalent_kernels_vs_oracles() {
    let started = Instant::now();
    let results = verify::run(Suite::Prop31, 10, 0).unwrap();
    assert_suite_passes(&results);
    report(
        5,
        "univalent-function kernels vs derivative oracles, weight 10, 9 parameter values",
        started,
        Duration::from_secs(60),
    );
}

/// Substituting the geometric family c_j = a^j (symbolic a) into the
/// Schwarzian kernel at order 10 yields identically zero.
#[test]
fn a06_moebius_kernel_vanishes() {
    let started = Instant::now();
    let kernel = univalent::schwarzian(10);
    let substituted = kernel.substitute_c(|j| Poly::sym_h().pow(u32::from(j)));
    for order in substituted.low()..=substituted.trunc() {
        let coeff = substituted.coeff(order).unwrap();
        assert!(
            coeff.is_zero(),
            "schwarzian kernel must vanish on the moebius family; order {order} = {}",
            coeff.to_text('c')
        );
    }
    report(
        6,
        "schwarzian kernel vanishes identically on the moebius family, order 10",
        started,
        Duration::from_secs(10),
    );
}

/// The closed-form Grunsky table equals the log-derivative oracle for all
/// n + k <= 10, the first entry is the second coefficient, the table obeys
/// the symmetry k*beta(n,k) = n*beta(k,n), and no entry involves b1.
#[test]
fn a07_grunsky_table() {
    let started = Instant::now();
    let results = verify::run(Suite::Grunsky, 10, 0).unwrap();
    assert_suite_passes(&results);
    report(
        7,
        "grunsky closed form vs log-derivative oracle, n + k <= 10",
        started,
        Duration::from_secs(30),
    );
}

/// The centrally extended generators satisfy the bracket relation
/// [L_n, L_m] = (n - m) L_{n+m} + (cc/12)(n^3 - n) delta_{n+m,0} as an exact
/// operator identity on components p <= 12 for all |n|, |m| <= 4, with the
/// highest-weight conditions and the (2, -2) central value cc/2.
#[test]
fn a08_virasoro_relations() {
    let started = Instant::now();
    let results = verify::run(Suite::Virasoro, 12, 0).unwrap();
    assert_suite_passes(&results);
    let grid_checks = results
        .iter()
        .filter(|r| r.name.starts_with("bracket relation"))
        .count();
    assert_eq!(grid_checks, 81, "9 x 9 grid of bracket relations");
    report(
        8,
        "virasoro bracket relations on components p <= 12, |n|, |m| <= 4",
        started,
        Duration::from_secs(300),
    );
}

/// The raising generators agree across all three constructions — the
/// expansion in powers of f, the finite derivative-form expression, and the
/// residue oracle — for k <= 5 on components p <= 8, including the frozen
/// first component of L_{-1}.
#[test]
fn a09_raising_generator_triple_agreement() {
    let started = Instant::now();
    for k in 1..=5u64 {
        let series = virasoro::build_l_minus(k, 8, LMinusForm::Series);
        let derivative = virasoro::build_l_minus(k, 8, LMinusForm::Derivative);
        let oracle = virasoro::build_l_minus_oracle(k, 8);
        assert_eq!(series, derivative, "forms differ at k = {k}");
        assert_eq!(derivative, oracle, "residue oracle differs at k = {k}");
    }
    let lm1 = virasoro::build_l_minus(1, 8, LMinusForm::Derivative);
    let mut expected = Poly::var(2).scale(&Rational::int(3));
    expected.add_assign(&Poly::var(1).pow(2).scale(&Rational::int(-2)));
    assert_eq!(lm1.deriv_coeff(1).unwrap(), expected);
    report(
        9,
        "raising generators: series form = derivative form = residue oracle, k <= 5, p <= 8",
        started,
        Duration::from_secs(60),
    );
}
