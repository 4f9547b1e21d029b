//! Closed-form Taylor expansions of structured products and composites.
//!
//! Every operation here evaluates an explicit multi-index/partition formula
//! and is paired with an `*_oracle` companion that recomputes the same object
//! by direct series arithmetic (`exp`, `log`, `pow`, `compose`, long
//! multiplication). The closed forms never call the oracle route and vice
//! versa, so equality between the two is a genuine check.
//!
//! The recurring ingredients:
//!
//! * weighted Newton sums `T_k = (-1)^k sum_j mu_j alpha_j^k`, which turn
//!   `prod_j (1 + alpha_j s)^(mu_j)` into `sum_l P_l(T_1, ..., T_l) s^l`
//!   (with `P_l` the Waring polynomial from [`crate::symfun`]);
//! * divisor-weighted sums `N_p = -sum_(j>=2) mu_j + sum_(j>=2, j|p) j mu_j`,
//!   which do the same for `prod_(j>=2) ((1-t^j)/(1-t))^(mu_j)`;
//! * multi-index sums over the exponents of `c_1, c_2, ...` for composites
//!   `f(theta(z))`, for `psi^k phi^p`, and for divided differences
//!   `H((theta(z) - theta(u))/(z - u))`.

use crate::biseries::BiSeries;
use crate::multi_index::MultiIndex;
use crate::poly::Poly;
use crate::rational::{factorial, falling, Rational};
use crate::series::Series;
use crate::symfun::{waring_p, waring_p_rationals};
use crate::Result;

/// Weighted Newton sum `T_k = (-1)^k sum_j mu_j alpha_j^k` for `k >= 1`.
///
/// The exponent weights `mu` may be symbolic polynomials; `alpha` and `mu`
/// must have the same length (pairing `alpha_j` with `mu_j`).
pub fn weighted_newton(alpha: &[Rational], mu: &[Poly], k: usize) -> Poly {
    assert_eq!(
        alpha.len(),
        mu.len(),
        "weighted_newton: alpha and mu must pair up"
    );
    assert!(k >= 1, "weighted_newton: k must be positive");
    let mut acc = Poly::zero();
    for (a, m) in alpha.iter().zip(mu) {
        acc.add_assign(&m.scale(&a.pow(k as i32)));
    }
    if k % 2 == 1 {
        acc = -&acc;
    }
    acc
}

/// `prod_j (1 + alpha_j s)^(mu_j)` through order `n`, via the closed form
/// `sum_l P_l(T_1, ..., T_l) s^l` with `T_k` the weighted Newton sums.
pub fn product_powers_expand(alpha: &[Rational], mu: &[Poly], n: i64) -> Result<Series> {
    assert!(n >= 0, "product_powers_expand: order must be nonnegative");
    let ts: Vec<Poly> = (1..=n as usize)
        .map(|k| weighted_newton(alpha, mu, k))
        .collect();
    let coeffs = (0..=n as usize)
        .map(|l| waring_p(l, &ts))
        .collect::<Result<Vec<_>>>()?;
    Ok(Series::from_coeffs(0, coeffs))
}

/// Oracle for [`product_powers_expand`] by direct series arithmetic.
///
/// When every `mu_j` is an integer constant the product is computed by plain
/// repeated multiplication (negative exponents via reciprocals); otherwise it
/// is assembled as `exp(sum_j mu_j log(1 + alpha_j s))` with the logarithms
/// expanded termwise. Neither route touches the Newton-sum combinatorics.
pub fn product_powers_oracle(alpha: &[Rational], mu: &[Poly], n: i64) -> Result<Series> {
    assert!(n >= 0, "product_powers_oracle: order must be nonnegative");
    assert_eq!(
        alpha.len(),
        mu.len(),
        "product_powers_oracle: alpha and mu must pair up"
    );
    let int_exps: Option<Vec<i64>> = mu
        .iter()
        .map(|m| m.as_constant().and_then(|r| r.as_i64()))
        .collect();
    if let Some(exps) = int_exps {
        let mut acc = Series::constant(Poly::one(), n);
        for (a, e) in alpha.iter().zip(exps) {
            let mut base = vec![Poly::one(), Poly::constant(a.clone())];
            base.resize(n as usize + 1, Poly::zero());
            acc = &acc * &Series::from_coeffs(0, base).powi(e)?;
        }
        return Ok(acc.truncate_to(n));
    }
    // log(1 + alpha s) = sum_k (-1)^(k-1) alpha^k s^k / k, summed with weights.
    let mut u = vec![Poly::zero(); n as usize + 1];
    for (a, m) in alpha.iter().zip(mu) {
        for k in 1..=n {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let r = &a.pow(k as i32) * &Rational::new(sign, k);
            u[k as usize].add_assign(&m.scale(&r));
        }
    }
    Series::from_coeffs(0, u).exp()
}

/// Divisor-weighted sum `N_p = -sum_(j>=2) mu_j + sum_(j>=2, j|p) j mu_j`.
///
/// The slice is indexed from `j = 2`: `mu[0]` is the weight of `j = 2`,
/// `mu[1]` of `j = 3`, and so on.
pub fn cyclotomic_n(mu: &[Poly], p: u64) -> Poly {
    assert!(p >= 1, "cyclotomic_n: p must be positive");
    let mut acc = Poly::zero();
    for (i, m) in mu.iter().enumerate() {
        let j = i as u64 + 2;
        acc.add_assign(&(-m));
        if p % j == 0 {
            acc.add_assign(&m.scale(&Rational::int(j as i64)));
        }
    }
    acc
}

/// `prod_(j>=2) ((1 - t^j)/(1 - t))^(mu_j)` through order `n`, via the closed
/// form `sum_l P_l(N_1, ..., N_l) t^l` (`mu` indexed from `j = 2` as in
/// [`cyclotomic_n`]).
pub fn cyclotomic_ratio_expand(mu: &[Poly], n: i64) -> Result<Series> {
    assert!(n >= 0, "cyclotomic_ratio_expand: order must be nonnegative");
    let ns: Vec<Poly> = (1..=n as u64).map(|p| cyclotomic_n(mu, p)).collect();
    let coeffs = (0..=n as usize)
        .map(|l| waring_p(l, &ns))
        .collect::<Result<Vec<_>>>()?;
    Ok(Series::from_coeffs(0, coeffs))
}

/// Oracle for [`cyclotomic_ratio_expand`] by direct series arithmetic.
///
/// Integer weights use the exact quotient `(1 - t^j)/(1 - t) =
/// 1 + t + ... + t^(j-1)` and repeated multiplication; symbolic weights use
/// `exp(sum_j mu_j (log(1 - t^j) - log(1 - t)))` with the logarithms expanded
/// termwise, bypassing the divisor-sum bookkeeping.
pub fn cyclotomic_ratio_oracle(mu: &[Poly], n: i64) -> Result<Series> {
    assert!(n >= 0, "cyclotomic_ratio_oracle: order must be nonnegative");
    let int_exps: Option<Vec<i64>> = mu
        .iter()
        .map(|m| m.as_constant().and_then(|r| r.as_i64()))
        .collect();
    if let Some(exps) = int_exps {
        let mut acc = Series::constant(Poly::one(), n);
        for (i, e) in exps.iter().enumerate() {
            let j = i + 2;
            let mut base = vec![Poly::one(); j.min(n as usize + 1)];
            base.resize(n as usize + 1, Poly::zero());
            acc = &acc * &Series::from_coeffs(0, base).powi(*e)?;
        }
        return Ok(acc.truncate_to(n));
    }
    // -log(1 - t) = sum_k t^k / k and -log(1 - t^j) = sum_m t^(jm) / m.
    let mut u = vec![Poly::zero(); n as usize + 1];
    for (i, m) in mu.iter().enumerate() {
        let j = (i + 2) as i64;
        for k in 1..=n {
            u[k as usize].add_assign(&m.scale(&Rational::new(1, k)));
        }
        let mut e = 1;
        while j * e <= n {
            u[(j * e) as usize].add_assign(&m.scale(&Rational::new(-1, e)));
            e += 1;
        }
    }
    Series::from_coeffs(0, u).exp()
}

/// Multinomial factor `|m|! / prod_j m_j!` of a multi-index.
fn multinomial(mi: &MultiIndex) -> Rational {
    let mut acc = factorial(mi.m0());
    for (_, e) in mi.pairs() {
        acc = &acc / &factorial(e as u64);
    }
    acc
}

/// Composite `f(theta(z))` through order `n` for `f(xi) = sum_i A_i xi^i`
/// (coefficients `a[i]`, beyond the slice treated as zero) and the generic
/// series `theta(z) = c_1 z + c_2 z^2 + ...` in the symbolic coefficients.
///
/// Closed form: the coefficient of `z^w` is
/// `sum over {m : ||m|| = w} of A_(|m|) |m|!/prod m_j! c^m`.
pub fn compose_expand(a: &[Poly], n: i64) -> Series {
    assert!(n >= 0, "compose_expand: order must be nonnegative");
    let mut coeffs = vec![Poly::zero(); n as usize + 1];
    for w in 0..=n as u64 {
        let target = &mut coeffs[w as usize];
        MultiIndex::for_each_of_weight(w, 1, &mut |mi| {
            let m0 = mi.m0() as usize;
            if m0 < a.len() && !a[m0].is_zero() {
                let mono = Poly::from_multi_index(mi, multinomial(mi));
                target.add_assign(&(&a[m0] * &mono));
            }
        });
    }
    Series::from_coeffs(0, coeffs)
}

/// Oracle for [`compose_expand`] by direct series composition.
pub fn compose_oracle(a: &[Poly], n: i64) -> Result<Series> {
    assert!(n >= 0, "compose_oracle: order must be nonnegative");
    let mut outer = a.to_vec();
    outer.resize(n as usize + 1, Poly::zero());
    let inner: Vec<Poly> = (1..=n).map(|j| Poly::var(j as u16)).collect();
    if inner.is_empty() {
        // Order 0: theta contributes nothing, only A_0 survives.
        return Ok(Series::constant(outer[0].clone(), 0));
    }
    Series::compose(
        &Series::from_coeffs(0, outer),
        &Series::from_coeffs(1, inner),
    )
}

/// Waring polynomial of rational arguments, as a rational.
fn waring_p_const(k: usize, args: &[Rational]) -> Rational {
    waring_p_rationals(k, args).expect("enough arguments supplied")
}

/// Weighted Newton sums `T_1, ..., T_k` of a multi-index against `alpha`
/// (entries of `alpha` beyond the slice are treated as zero).
fn newton_sums_of_index(alpha: &[Rational], mi: &MultiIndex, k: usize) -> Vec<Rational> {
    (1..=k)
        .map(|i| {
            let mut t = Rational::zero();
            for (j, e) in mi.pairs() {
                if let Some(a) = alpha.get(j as usize - 1) {
                    t = &t + &(&Rational::int(e as i64) * &a.pow(i as i32));
                }
            }
            if i % 2 == 1 {
                t = -&t;
            }
            t
        })
        .collect()
}

/// `psi(z)^k phi(z)^p` through order `n`, for `phi = 1 + c_1 z + c_2 z^2 + ...`
/// and `psi = alpha_1 c_1 z + alpha_2 c_2 z^2 + ...` (entries of `alpha`
/// beyond the slice are treated as zero).
///
/// Closed form: the coefficient of `c^m z^(||m||)` is
/// `k! * p(p-1)...(p - (|m|-k) + 1) / prod m_j! * P_k(T_1, ..., T_k)`,
/// with `T_i` the weighted Newton sums of `m` against `alpha`. The falling
/// product has `|m| - k` factors (empty when `|m| = k`), and terms with
/// `|m| < k` vanish because `P_k` of an index with fewer than `k` parts is
/// zero. The coefficient agrees with the quotient form
/// `k! (p+k)(p+k-1)...(p+k-|m|+1) / ((p+1)...(p+k))` wherever the latter is
/// defined, but is polynomial in `p` and so makes sense for every `p`.
pub fn psi_phi_expand(alpha: &[Rational], k: usize, p: &Rational, n: i64) -> Series {
    assert!(n >= 0, "psi_phi_expand: order must be nonnegative");
    let kfact = factorial(k as u64);
    let mut coeffs = vec![Poly::zero(); n as usize + 1];
    for w in 0..=n as u64 {
        let target = &mut coeffs[w as usize];
        MultiIndex::for_each_of_weight(w, 1, &mut |mi| {
            let m0 = mi.m0();
            if (m0 as usize) < k {
                return;
            }
            let ts = newton_sums_of_index(alpha, mi, k);
            let pk = waring_p_const(k, &ts);
            if pk.is_zero() {
                return;
            }
            let mut coef = &(&kfact * &falling(p, m0 - k as u64)) * &pk;
            for (_, e) in mi.pairs() {
                coef = &coef / &factorial(e as u64);
            }
            target.add_assign(&Poly::from_multi_index(mi, coef));
        });
    }
    Series::from_coeffs(0, coeffs)
}

/// Oracle for [`psi_phi_expand`] by direct series arithmetic
/// (`psi^k` by repeated multiplication, `phi^p` by exp/log).
pub fn psi_phi_oracle(alpha: &[Rational], k: usize, p: &Rational, n: i64) -> Result<Series> {
    assert!(n >= 0, "psi_phi_oracle: order must be nonnegative");
    let phi_coeffs: Vec<Poly> = std::iter::once(Poly::one())
        .chain((1..=n).map(|j| Poly::var(j as u16)))
        .collect();
    let phi = Series::from_coeffs(0, phi_coeffs);
    let psi_coeffs: Vec<Poly> = std::iter::once(Poly::zero())
        .chain((1..=n).map(|j| match alpha.get(j as usize - 1) {
            Some(a) => Poly::var(j as u16).scale(a),
            None => Poly::zero(),
        }))
        .collect();
    let psi = Series::from_coeffs(0, psi_coeffs);
    Ok((&psi.powi(k as i64)? * &phi.pow(p)?).truncate_to(n))
}

/// Divided difference `H((theta(z) - theta(u))/(z - u))` through total order
/// `n`, for `H(1 + xi) = A_0 + A_1 xi + ...` (coefficients `a[i]`) and
/// `theta(z) = z + c_1 z^2 + c_2 z^3 + ...`.
///
/// Closed form: each multi-index `m` contributes
/// `A_(|m|) |m|!/prod m_j! c^m sum_(p+q=||m||) P_p(Ntilde_1, ..., Ntilde_p) z^p u^q`
/// where `Ntilde_p` is the divisor-weighted sum of [`cyclotomic_n`] for the
/// shifted weights `mu_j = m_(j-1)`, `j >= 2`.
pub fn divided_difference_expand(a: &[Poly], n: i64) -> BiSeries {
    assert!(
        n >= 0,
        "divided_difference_expand: order must be nonnegative"
    );
    let mut out = BiSeries::zero(n);
    for w in 0..=n as u64 {
        MultiIndex::for_each_of_weight(w, 1, &mut |mi| {
            let m0 = mi.m0() as usize;
            if m0 >= a.len() || a[m0].is_zero() {
                return;
            }
            let base = &a[m0] * &Poly::from_multi_index(mi, multinomial(mi));
            // mu_j = m_(j-1) for j >= 2, so slot j of cyclotomic_n (starting
            // at j = 2) holds the exponent of c_(j-1).
            let mu: Vec<Poly> = (1..=w as u16)
                .map(|j| Poly::int(mi.exp(j) as i64))
                .collect();
            let ns: Vec<Rational> = (1..=w)
                .map(|p| {
                    cyclotomic_n(&mu, p)
                        .as_constant()
                        .expect("integer weights give a constant value")
                })
                .collect();
            for zp in 0..=w {
                let pk = waring_p_const(zp as usize, &ns);
                if !pk.is_zero() {
                    out.add_term(zp as i64, (w - zp) as i64, base.scale(&pk));
                }
            }
        });
    }
    out
}

/// Oracle for [`divided_difference_expand`] by direct bivariate arithmetic:
/// `(theta(z) - theta(u))/(z - u) = 1 + sum_j c_j (z^j + z^(j-1) u + ... + u^j)`
/// followed by Horner evaluation of `H`.
pub fn divided_difference_oracle(a: &[Poly], n: i64) -> Result<BiSeries> {
    assert!(
        n >= 0,
        "divided_difference_oracle: order must be nonnegative"
    );
    let mut xi = BiSeries::zero(n);
    for j in 1..=n {
        let cj = Poly::var(j as u16);
        for i in 0..=j {
            xi.add_term(i, j - i, cj.clone());
        }
    }
    let mut acc = BiSeries::zero(n);
    for ai in a.iter().rev() {
        acc = acc.mul(&xi);
        acc.add_term(0, 0, ai.clone());
    }
    Ok(acc)
}
