//! Waring and Faber polynomials, Newton sums, and elementary symmetric
//! polynomials.
//!
//! The Waring polynomial `P_n(a_1, ..., a_n)` is the explicit partition sum
//!
//! ```text
//! P_n = sum over {mu : sum_j j*mu_j = n} of
//!       (-1)^(|mu|) * prod_j a_j^(mu_j) / (j^(mu_j) * mu_j!)
//! ```
//!
//! and equals the coefficient of `z^n` in `exp(-sum_j a_j z^j / j)`. The
//! Faber polynomial `Q_n(b_1, ..., b_n)` is
//!
//! ```text
//! Q_n = n * sum over {mu} of (-1)^(|mu|) * (|mu| - 1)! * prod_j b_j^(mu_j) / mu_j!
//! ```
//!
//! and equals the coefficient of `z^n` in `-z h'(z)/h(z)` for
//! `h = 1 + sum_j b_j z^j`. Both are computed from the partition sums here,
//! so the generating-function identities remain genuine tests (see the
//! `*_oracle` functions) rather than tautologies.
//!
//! `faber_phi` builds the one-variable Faber polynomial
//! `Phi_n(z) = Q_n(b_1 - z, b_2, ..., b_n)` attached to
//! `g(z) = z h(1/z) = z + b_1 + b_2 z^{-1} + ...`; its defining property is
//! that `Phi_n(g(z)) - z^n` has only negative powers of `z`. The oracle
//! `phi_defect` computes that composition with the substitution `z -> 1/w`
//! so all series stay one-sidedly truncated.

use crate::multi_index::MultiIndex;
use crate::poly::Poly;
use crate::rational::{binomial, factorial, Rational};
use crate::series::Series;
use crate::{Error, Result};

/// Memoized nonnegative powers of a fixed argument list.
struct PowerTable<'a> {
    args: &'a [Poly],
    pows: Vec<Vec<Poly>>,
}

impl<'a> PowerTable<'a> {
    fn new(args: &'a [Poly]) -> Self {
        PowerTable {
            args,
            pows: vec![vec![Poly::one()]; args.len()],
        }
    }

    fn power(&mut self, j: u16, e: u16) -> &Poly {
        let idx = (j - 1) as usize;
        let col = &mut self.pows[idx];
        while col.len() <= e as usize {
            let next = col.last().expect("nonempty") * &self.args[idx];
            col.push(next);
        }
        &self.pows[idx][e as usize]
    }

    /// `prod_j args[j-1]^(m_j)`.
    fn monomial(&mut self, m: &MultiIndex) -> Poly {
        let mut acc = Poly::one();
        for (j, e) in m.pairs() {
            acc = &acc * self.power(j, e);
        }
        acc
    }
}

fn require_args(what: &'static str, needed: usize, args: &[Poly]) -> Result<()> {
    if args.len() < needed {
        return Err(Error::NotEnoughArguments {
            what,
            needed,
            got: args.len(),
        });
    }
    Ok(())
}

/// The Waring polynomial `P_n(a_1, ..., a_n)` by the explicit partition sum.
pub fn waring_p(n: usize, args: &[Poly]) -> Result<Poly> {
    require_args("waring_P", n, args)?;
    if n == 0 {
        return Ok(Poly::one());
    }
    let mut table = PowerTable::new(args);
    let mut acc = Poly::zero();
    MultiIndex::for_each_of_weight(n as u64, 1, &mut |m| {
        let mut coeff = Rational::one();
        for (j, e) in m.pairs() {
            let denom = &Rational::int(j as i64).pow(e as i32) * &factorial(e as u64);
            coeff = &coeff / &denom;
        }
        if m.m0() % 2 == 1 {
            coeff = -&coeff;
        }
        acc.add_assign(&table.monomial(m).scale(&coeff));
    });
    Ok(acc)
}

/// [`waring_p`] specialized to rational arguments.
pub fn waring_p_rationals(n: usize, args: &[Rational]) -> Result<Rational> {
    if args.len() < n {
        return Err(Error::NotEnoughArguments {
            what: "waring_P",
            needed: n,
            got: args.len(),
        });
    }
    if n == 0 {
        return Ok(Rational::one());
    }
    let mut acc = Rational::zero();
    MultiIndex::for_each_of_weight(n as u64, 1, &mut |m| {
        let mut term = Rational::one();
        for (j, e) in m.pairs() {
            let denom = &Rational::int(j as i64).pow(e as i32) * &factorial(e as u64);
            term = &(&term * &args[j as usize - 1].pow(e as i32)) / &denom;
        }
        if m.m0() % 2 == 1 {
            term = -&term;
        }
        acc = &acc + &term;
    });
    Ok(acc)
}

/// The Faber polynomial `Q_n(b_1, ..., b_n)` by the explicit partition sum.
pub fn faber_q(n: usize, args: &[Poly]) -> Result<Poly> {
    if n == 0 {
        return Err(Error::UndefinedAtZero("faber_Q"));
    }
    require_args("faber_Q", n, args)?;
    let mut table = PowerTable::new(args);
    let mut acc = Poly::zero();
    MultiIndex::for_each_of_weight(n as u64, 1, &mut |m| {
        let m0 = m.m0();
        let mut coeff = &Rational::int(n as i64) * &factorial(m0 - 1);
        for (_, e) in m.pairs() {
            coeff = &coeff / &factorial(e as u64);
        }
        if m0 % 2 == 1 {
            coeff = -&coeff;
        }
        acc.add_assign(&table.monomial(m).scale(&coeff));
    });
    Ok(acc)
}

/// Generating-function oracle for `waring_p`: the coefficient of `z^n` in
/// `exp(-sum_j a_j z^j / j)`.
pub fn waring_p_oracle(n: usize, args: &[Poly]) -> Result<Poly> {
    require_args("waring_P oracle", n, args)?;
    if n == 0 {
        return Ok(Poly::one());
    }
    let t = n as i64;
    let mut u = Series::zero(t);
    for j in 1..=n {
        u = &u + &Series::monomial(j as i64, args[j - 1].scale(&Rational::new(-1, j as i64)), t);
    }
    u.exp()?.coeff(t)
}

/// Generating-function oracle for `faber_q`: the coefficient of `z^n` in
/// `-z h'(z) / h(z)` for `h = 1 + sum_j b_j z^j`.
pub fn faber_q_oracle(n: usize, args: &[Poly]) -> Result<Poly> {
    if n == 0 {
        return Err(Error::UndefinedAtZero("faber_Q oracle"));
    }
    require_args("faber_Q oracle", n, args)?;
    let t = n as i64;
    let mut h = Series::constant(Poly::one(), t);
    for j in 1..=n {
        h = &h + &Series::monomial(j as i64, args[j - 1].clone(), t);
    }
    // -z h'/h; h' is exact to t-1, so z*h' is exact to t.
    let num = (&Series::var_z(t) * &h.derivative()).truncate_to(t);
    (&-&num * &h.reciprocal()?).coeff(t)
}

/// The Newton power sum `p_k(x) = sum_i x_i^k` (`p_0` counts the arguments).
pub fn newton_sum(k: usize, xs: &[Poly]) -> Poly {
    if k == 0 {
        return Poly::int(xs.len() as i64);
    }
    let mut acc = Poly::zero();
    for x in xs {
        acc.add_assign(&x.pow(k as u32));
    }
    acc
}

/// The elementary symmetric polynomial `e_k(x)`; zero when `k > len(x)`.
pub fn elementary_symmetric(k: usize, xs: &[Poly]) -> Poly {
    if k > xs.len() {
        return Poly::zero();
    }
    // Row DP over prod_i (1 + x_i t), keeping e_0..e_k of the prefix.
    let mut row = vec![Poly::zero(); k + 1];
    row[0] = Poly::one();
    for x in xs {
        for j in (1..=k).rev() {
            let bump = &row[j - 1] * x;
            row[j].add_assign(&bump);
        }
    }
    row.pop().expect("nonempty row")
}

/// `p_1..p_n` rewritten as polynomials in free generators `e_1..e_n`
/// (represented by the variables `c_1..c_n`), via the Newton recursion
/// `p_k = sum_{i<k} (-1)^(i-1) e_i p_{k-i} + (-1)^(k-1) k e_k`.
pub fn power_sums_in_elementary(n: usize) -> Vec<Poly> {
    let mut p: Vec<Poly> = Vec::with_capacity(n);
    for k in 1..=n {
        let mut acc = Poly::var(k as u16).scale(&Rational::int(if k % 2 == 1 {
            k as i64
        } else {
            -(k as i64)
        }));
        for i in 1..k {
            let term = &Poly::var(i as u16) * &p[k - i - 1];
            acc.add_assign(&if i % 2 == 1 { term } else { -&term });
        }
        p.push(acc);
    }
    p
}

/// `e_1..e_n` rewritten as polynomials in free generators `p_1..p_n`
/// (represented by the variables `c_1..c_n`), via the same recursion solved
/// for `e_k`: `e_k = (1/k) sum_{i=1}^{k} (-1)^(i-1) p_i e_{k-i}`.
pub fn elementary_in_power_sums(n: usize) -> Vec<Poly> {
    let mut e: Vec<Poly> = Vec::with_capacity(n);
    for k in 1..=n {
        let mut acc = Poly::zero();
        for i in 1..=k {
            let prev = if i == k { Poly::one() } else { e[k - i - 1].clone() };
            let term = &Poly::var(i as u16) * &prev;
            acc.add_assign(&if i % 2 == 1 { term } else { -&term });
        }
        e.push(acc.scale(&Rational::new(1, k as i64)));
    }
    e
}

/// The one-variable Faber polynomial `Phi_n(z) = Q_n(b_1 - z, b_2, ..., b_n)`
/// as its coefficient list in `z` (index = power, length `n + 1`).
pub fn faber_phi(n: usize, args: &[Poly]) -> Result<Vec<Poly>> {
    if n == 0 {
        return Err(Error::UndefinedAtZero("faber_Phi"));
    }
    require_args("faber_Phi", n, args)?;
    let mut table = PowerTable::new(args);
    let mut out = vec![Poly::zero(); n + 1];
    MultiIndex::for_each_of_weight(n as u64, 1, &mut |m| {
        let m0 = m.m0();
        let mut coeff = &Rational::int(n as i64) * &factorial(m0 - 1);
        for (_, e) in m.pairs() {
            coeff = &coeff / &factorial(e as u64);
        }
        if m0 % 2 == 1 {
            coeff = -&coeff;
        }
        // The b_1 slot carries (b_1 - z)^(mu_1); expand it binomially and the
        // rest of the partition product is independent of z.
        let mu1 = m.exp(1);
        let mut rest = Poly::constant(coeff);
        for (j, e) in m.pairs() {
            if j == 1 {
                continue;
            }
            rest = &rest * table.power(j, e);
        }
        for i in 0..=mu1 {
            let mut c = binomial(mu1 as u64, i as u64);
            if i % 2 == 1 {
                c = -&c;
            }
            let term = &rest.scale(&c) * table.power(1, mu1 - i);
            out[i as usize].add_assign(&term);
        }
    });
    Ok(out)
}

/// Evaluates a polynomial (coefficient list, index = power) at a series.
///
/// The polynomial's coefficients are exact at every order, so only the
/// chained powers of `s` constrain the result window: for a degree-`d`
/// polynomial and a Laurent argument of valuation `v < 0` the result is
/// exact through `s.trunc() + (d - 1) * v` (and gains exactness for
/// `v >= 1`).
pub fn eval_poly_at_series(coeffs: &[Poly], s: &Series) -> Series {
    // Window for the constant term: beyond every other term's bound, so the
    // pairwise `add` minimum is decided by the powers alone.
    let generous = (s.trunc().abs() + coeffs.len() as i64 + 1).max(1);
    let mut acc: Option<Series> = None;
    let mut power: Option<Series> = None;
    for (i, cp) in coeffs.iter().enumerate() {
        if i >= 1 {
            power = Some(match power.take() {
                None => s.clone(),
                Some(p) => &p * s,
            });
        }
        if cp.is_zero() {
            continue;
        }
        let term = if i == 0 {
            Series::constant(cp.clone(), generous)
        } else {
            power.as_ref().expect("power advanced").scale_poly(cp)
        };
        acc = Some(match acc.take() {
            None => term,
            Some(a) => &a + &term,
        });
    }
    acc.unwrap_or_else(|| Series::zero(s.trunc()))
}

/// The defect `Phi_n(g(z)) - z^n` of the Faber defining condition, computed
/// in the variable `w = 1/z`: returns `Phi_n(1/w + b_1 + b_2 w + ...) -
/// w^{-n}` with symbolic `b_j`, exact through order `k_max` in `w`. The
/// defining condition says all coefficients at orders <= 0 vanish.
pub fn phi_defect(n: usize, k_max: i64) -> Result<Series> {
    if n == 0 {
        return Err(Error::UndefinedAtZero("faber_Phi"));
    }
    // g(1/w) = w^{-1} + b_1 + b_2 w + ... + b_j w^{j-1}; keeping orders
    // through k_max + n - 1 makes the n-fold products exact through k_max.
    let top = k_max + n as i64 - 1;
    let b_count = (top + 1) as usize;
    let mut coeffs = vec![Poly::one()];
    for j in 1..=b_count {
        coeffs.push(Poly::var(j as u16));
    }
    let ghat = Series::from_coeffs(-1, coeffs);
    let args: Vec<Poly> = (1..=n.max(b_count)).map(|j| Poly::var(j as u16)).collect();
    let phi = faber_phi(n, &args)?;
    let value = eval_poly_at_series(&phi, &ghat);
    Ok(&value - &Series::monomial(-(n as i64), Poly::one(), value.trunc()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(n: usize) -> Vec<Poly> {
        (1..=n).map(|j| Poly::var(j as u16)).collect()
    }

    fn half() -> Rational {
        Rational::new(1, 2)
    }

    #[test]
    fn waring_small_values() {
        let a = vars(3);
        assert_eq!(waring_p(0, &[]).unwrap(), Poly::one());
        assert_eq!(waring_p(1, &a).unwrap(), -&Poly::var(1));
        // P_2 = a_1^2/2 - a_2/2
        let p2 = waring_p(2, &a).unwrap();
        let expect = &Poly::var(1).pow(2).scale(&half()) - &Poly::var(2).scale(&half());
        assert_eq!(p2, expect);
        assert!(matches!(
            waring_p(3, &vars(2)),
            Err(Error::NotEnoughArguments { needed: 3, got: 2, .. })
        ));
    }

    #[test]
    fn faber_small_values() {
        let b = vars(3);
        assert_eq!(faber_q(1, &b).unwrap(), -&Poly::var(1));
        // Q_2 = b_1^2 - 2 b_2
        assert_eq!(
            faber_q(2, &b).unwrap(),
            &Poly::var(1).pow(2) - &Poly::var(2).scale(&Rational::int(2))
        );
        // Q_3 = -b_1^3 + 3 b_1 b_2 - 3 b_3
        let q3 = faber_q(3, &b).unwrap();
        let expect = &(&-&Poly::var(1).pow(3)
            + &(&Poly::var(1) * &Poly::var(2)).scale(&Rational::int(3)))
            - &Poly::var(3).scale(&Rational::int(3));
        assert_eq!(q3, expect);
        assert!(matches!(faber_q(0, &b), Err(Error::UndefinedAtZero(_))));
    }

    #[test]
    fn generating_function_consistency() {
        let a = vars(10);
        for n in 0..=10 {
            assert_eq!(
                waring_p(n, &a).unwrap(),
                waring_p_oracle(n, &a).unwrap(),
                "waring n={n}"
            );
        }
        for n in 1..=10 {
            assert_eq!(
                faber_q(n, &a).unwrap(),
                faber_q_oracle(n, &a).unwrap(),
                "faber n={n}"
            );
        }
    }

    #[test]
    fn newton_and_elementary_examples() {
        let x = vars(3);
        assert_eq!(
            newton_sum(2, &x[..2]),
            &Poly::var(1).pow(2) + &Poly::var(2).pow(2)
        );
        let e2 = elementary_symmetric(2, &x);
        let expect = &(&(&Poly::var(1) * &Poly::var(2)) + &(&Poly::var(1) * &Poly::var(3)))
            + &(&Poly::var(2) * &Poly::var(3));
        assert_eq!(e2, expect);
        assert_eq!(elementary_symmetric(4, &x[..2]), Poly::zero());
        assert_eq!(elementary_symmetric(0, &x), Poly::one());
        assert_eq!(newton_sum(0, &x), Poly::int(3));
    }

    /// Newton's identities hold verbatim for the direct expansions:
    /// `k e_k = sum_{i=1}^{k} (-1)^(i-1) e_{k-i} p_i`.
    #[test]
    fn newton_identities_direct() {
        let x = vars(8);
        for k in 1..=8 {
            let mut rhs = Poly::zero();
            for i in 1..=k {
                let term = &elementary_symmetric(k - i, &x) * &newton_sum(i, &x);
                rhs.add_assign(&if i % 2 == 1 { term } else { -&term });
            }
            assert_eq!(
                elementary_symmetric(k, &x).scale(&Rational::int(k as i64)),
                rhs,
                "k={k}"
            );
        }
    }

    /// The free-generator rewrites agree with the direct expansions under
    /// the substitution c_j -> e_j(x) (resp. c_j -> p_j(x)).
    #[test]
    fn generator_rewrites_match_direct() {
        let nv = 6;
        let x = vars(nv);
        let p_in_e = power_sums_in_elementary(nv);
        let e_in_p = elementary_in_power_sums(nv);
        let es: Vec<Poly> = (1..=nv).map(|k| elementary_symmetric(k, &x)).collect();
        let ps: Vec<Poly> = (1..=nv).map(|k| newton_sum(k, &x)).collect();
        for k in 1..=nv {
            assert_eq!(
                p_in_e[k - 1].substitute_c(&mut |j| es[(j - 1) as usize].clone()),
                ps[k - 1],
                "p_{k} in e"
            );
            assert_eq!(
                e_in_p[k - 1].substitute_c(&mut |j| ps[(j - 1) as usize].clone()),
                es[k - 1],
                "e_{k} in p"
            );
        }
    }

    /// Waring's theorem, direct form in `n` symbolic variables:
    /// `P_n(-p_1, p_2, ..., (-1)^n p_n) = e_n` and
    /// `Q_n(e_1, ..., e_n) = (-1)^n p_n`.
    #[test]
    fn waring_theorem_direct_small() {
        for n in 1..=5usize {
            let x = vars(n);
            let signed_p: Vec<Poly> = (1..=n)
                .map(|k| {
                    let p = newton_sum(k, &x);
                    if k % 2 == 1 {
                        -&p
                    } else {
                        p
                    }
                })
                .collect();
            assert_eq!(
                waring_p(n, &signed_p).unwrap(),
                elementary_symmetric(n, &x),
                "P direction n={n}"
            );
            let es: Vec<Poly> = (1..=n).map(|k| elementary_symmetric(k, &x)).collect();
            let pn = newton_sum(n, &x);
            let signed_pn = if n % 2 == 1 { -&pn } else { pn };
            assert_eq!(faber_q(n, &es).unwrap(), signed_pn, "Q direction n={n}");
        }
    }

    /// Waring's theorem in the free generators, which the direct checks
    /// above ground: with `P_k` the power sums written in free `e`-variables,
    /// `P_n(-P_1, ..., (-1)^n P_n) = e_n`; dually with `E_k` the elementary
    /// symmetrics in free `p`-variables, `Q_n(E_1, ..., E_n) = (-1)^n p_n`.
    #[test]
    fn waring_theorem_free_generators() {
        let nmax = 9usize;
        let p_in_e = power_sums_in_elementary(nmax);
        let e_in_p = elementary_in_power_sums(nmax);
        for n in 1..=nmax {
            let signed_p: Vec<Poly> = (0..n)
                .map(|i| {
                    if (i + 1) % 2 == 1 {
                        -&p_in_e[i]
                    } else {
                        p_in_e[i].clone()
                    }
                })
                .collect();
            assert_eq!(
                waring_p(n, &signed_p).unwrap(),
                Poly::var(n as u16),
                "P direction n={n}"
            );
            let pn = Poly::var(n as u16);
            let signed_pn = if n % 2 == 1 { -&pn } else { pn };
            assert_eq!(
                faber_q(n, &e_in_p[..n]).unwrap(),
                signed_pn,
                "Q direction n={n}"
            );
        }
    }

    /// The Waring and Faber families invert each other:
    /// `Q_n(P_1(a), ..., P_n(a)) = a_n` and `P_n(Q_1(b), ..., Q_n(b)) = b_n`.
    #[test]
    fn waring_faber_inversion() {
        let nmax = 8usize;
        let a = vars(nmax);
        let ps: Vec<Poly> = (1..=nmax).map(|k| waring_p(k, &a).unwrap()).collect();
        let qs: Vec<Poly> = (1..=nmax).map(|k| faber_q(k, &a).unwrap()).collect();
        for n in 1..=nmax {
            assert_eq!(faber_q(n, &ps).unwrap(), Poly::var(n as u16), "Q(P)={n}");
            assert_eq!(waring_p(n, &qs).unwrap(), Poly::var(n as u16), "P(Q)={n}");
        }
    }

    #[test]
    fn phi_small_values() {
        let b = vars(4);
        // Phi_1 = z - b_1
        assert_eq!(faber_phi(1, &b).unwrap(), vec![-&Poly::var(1), Poly::one()]);
        // Phi_2 = z^2 - 2 b_1 z + b_1^2 - 2 b_2
        let phi2 = faber_phi(2, &b).unwrap();
        assert_eq!(
            phi2,
            vec![
                &Poly::var(1).pow(2) - &Poly::var(2).scale(&Rational::int(2)),
                Poly::var(1).scale(&Rational::int(-2)),
                Poly::one(),
            ]
        );
        assert!(matches!(faber_phi(0, &b), Err(Error::UndefinedAtZero(_))));
    }

    /// Defining condition: the defect has no orders <= 0, and its positive
    /// coefficients reproduce the hand-computed Grunsky values.
    #[test]
    fn phi_defining_condition() {
        for n in 1..=4usize {
            let defect = phi_defect(n, 5).unwrap();
            assert!(defect.trunc() >= 5);
            for k in defect.low()..=0 {
                assert_eq!(
                    defect.coeff(k).unwrap(),
                    Poly::zero(),
                    "n={n} order {k} should vanish"
                );
            }
        }
        // n=1: defect = b_2 w + b_3 w^2 + ...
        let d1 = phi_defect(1, 3).unwrap();
        assert_eq!(d1.coeff(1).unwrap(), Poly::var(2));
        assert_eq!(d1.coeff(2).unwrap(), Poly::var(3));
        // n=2: defect = 2 b_3 w + (2 b_4 + b_2^2) w^2 + ...
        let d2 = phi_defect(2, 3).unwrap();
        assert_eq!(d2.coeff(1).unwrap(), Poly::var(3).scale(&Rational::int(2)));
        assert_eq!(
            d2.coeff(2).unwrap(),
            &Poly::var(4).scale(&Rational::int(2)) + &Poly::var(2).pow(2)
        );
    }
}
