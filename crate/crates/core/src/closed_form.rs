//! Closed-form evaluation for complete bipartite graphs, the recurrence
//! that generates it, and the binomial identity behind its induction.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{binom, one_minus_x_pow, IntPolynomial};

/// Generalized binomial coefficient: `C(-1, j) = (-1)^j`, `C(a, j) = 0` for
/// `0 <= a < j`, standard values otherwise. Upper arguments below -1 have
/// no convention here and are rejected outright.
pub fn gen_binomial(a: i64, j: u64) -> BigInt {
    assert!(a >= -1, "gen_binomial is only defined for a >= -1, got {a}");
    if a == -1 {
        if j % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        }
    } else {
        binom(a as u64, j)
    }
}

/// `I_{K_{m,n}}(x) = Σ_j C(m-1, j) C(n-1, j) x^j`; an edgeless class
/// (`m = 0` or `n = 0`) degenerates to isolated vertices with value
/// `(1 - x)^{count - 1}`.
pub fn interior_complete(m: usize, n: usize) -> Result<IntPolynomial> {
    if m == 0 && n == 0 {
        return Err(Error::InvalidInput(
            "the interior polynomial is undefined for the empty graph".into(),
        ));
    }
    if m == 0 || n == 0 {
        return Ok(one_minus_x_pow(m.max(n) - 1));
    }
    let top = m.min(n) - 1;
    let coeffs: Vec<BigInt> = (0..=top as u64)
        .map(|j| binom(m as u64 - 1, j) * binom(n as u64 - 1, j))
        .collect();
    Ok(IntPolynomial::from_coeffs(coeffs))
}

/// The alternating binomial-weighted sum
/// `Σ_{k=1..n} (-1)^{k-1} C(n, k) I_{K_{m,n-k}}`, with the smaller
/// polynomials supplied by `lookup`.
///
/// This reproduces `I_{K_{m,n}}` when the recursion deletes a
/// non-expanding class, i.e. when `m <= n`; for `m > n` the formal sum is
/// still computed but no longer equals the interior polynomial.
pub fn complete_recurrence_rhs(
    m: usize,
    n: usize,
    lookup: impl Fn(usize, usize) -> IntPolynomial,
) -> IntPolynomial {
    assert!(n >= 1, "the recurrence needs a nonempty class to delete");
    let mut acc = IntPolynomial::zero();
    for k in 1..=n {
        let term = lookup(m, n - k).scale(&binom(n as u64, k as u64));
        acc = if k % 2 == 1 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

/// Left-hand side of the identity
/// `Σ_{k=1..n} (-1)^{k-1} C(n, k) C(n-k-1, j) = C(n-1, j)`; the `k = n`
/// term runs through `C(-1, j)`.
pub fn binom_identity_lhs(n: u64, j: u64) -> Result<BigInt> {
    if n < 1 || j > n - 1 {
        return Err(Error::InvalidInput(format!(
            "identity arguments need n >= 1 and 0 <= j <= n-1, got n={n}, j={j}"
        )));
    }
    let mut acc = BigInt::zero();
    for k in 1..=n {
        let term = binom(n, k) * gen_binomial(n as i64 - k as i64 - 1, j);
        if k % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}
