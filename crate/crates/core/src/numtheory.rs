//! Integer arithmetic functions: totient, Möbius, divisors, gcd residue
//! classes and Ramanujan sums.
//!
//! Everything here is trial-division based and capped at `2^31 - 1`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest argument accepted by the arithmetic functions.
pub const MAX_ARGUMENT: u64 = (1 << 31) - 1;

/// Default tolerance for the direct summation form of the Ramanujan sum.
pub const DEFAULT_DIRECT_TOL: f64 = 1e-8;

fn check_arg(n: u64, what: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidInput(format!("{what} must be positive, got 0")));
    }
    if n > MAX_ARGUMENT {
        return Err(Error::InvalidInput(format!(
            "{what} = {n} exceeds the supported maximum {MAX_ARGUMENT}"
        )));
    }
    Ok(())
}

/// Greatest common divisor with `gcd(0, n) = n`.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Prime factorization as `(prime, exponent)` pairs in ascending prime order.
pub fn factorize(n: u64) -> Result<Vec<(u64, u32)>> {
    check_arg(n, "n")?;
    let mut rest = n;
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        out.push((rest, 1));
    }
    Ok(out)
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> Result<u64> {
    Ok(factorize(n)?
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1)))
}

/// Möbius function.
pub fn moebius(n: u64) -> Result<i64> {
    let f = factorize(n)?;
    if f.iter().any(|&(_, e)| e > 1) {
        return Ok(0);
    }
    Ok(if f.len() % 2 == 0 { 1 } else { -1 })
}

/// Number of distinct prime divisors.
pub fn prime_omega(n: u64) -> Result<u32> {
    Ok(factorize(n)?.len() as u32)
}

pub fn is_square_free(n: u64) -> Result<bool> {
    Ok(moebius(n)? != 0)
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    let mut divs = vec![1u64];
    for (p, e) in factorize(n)? {
        let current = divs.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..current {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    Ok(divs)
}

/// `B(d, n) = { t : 1 <= t <= n, gcd(t, n) = d }`, ascending.
///
/// Has exactly `euler_phi(n / d)` elements: `t = d * u` with `u` coprime to `n / d`.
pub fn residue_class(d: u64, n: u64) -> Result<Vec<u64>> {
    check_arg(n, "n")?;
    check_arg(d, "d")?;
    if !n.is_multiple_of(d) {
        return Err(Error::NotADivisor { d, n });
    }
    let q = n / d;
    Ok((1..=q).filter(|&u| gcd(u, q) == 1).map(|u| u * d).collect())
}

/// Ramanujan sum `C(r, n)` via Hölder's closed form
/// `φ(n) / φ(n / (n, r)) · μ(n / (n, r))`.
///
/// `r` is reduced modulo `n` first, so `r = 0` and `r = n` both give `φ(n)`.
pub fn ramanujan_hoelder(r: u64, n: u64) -> Result<i64> {
    check_arg(n, "n")?;
    let g = gcd(r % n, n);
    let q = n / g;
    let phi_n = euler_phi(n)?;
    let phi_q = euler_phi(q)?;
    debug_assert_eq!(phi_n % phi_q, 0);
    Ok((phi_n / phi_q) as i64 * moebius(q)?)
}

/// Ramanujan sum evaluated by summing `exp(2πi·k·r/n)` over `k ∈ B(1, n)` in
/// ascending order.
///
/// Fails with [`Error::InternalInconsistency`] if the imaginary part is not
/// below `tol`, or the real part strays more than `tol` from the closed form.
pub fn ramanujan_direct(r: u64, n: u64, tol: f64) -> Result<f64> {
    check_arg(n, "n")?;
    let r = r % n;
    let sum: Complex64 = residue_class(1, n)?
        .into_iter()
        .map(|k| {
            // Reduce the exponent before scaling to keep the angle small.
            let e = ((k as u128 * r as u128) % n as u128) as f64;
            Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * e / n as f64)
        })
        .sum();
    if sum.im.abs() >= tol {
        return Err(Error::InternalInconsistency(format!(
            "C({r},{n}) direct sum has imaginary residual {}",
            sum.im
        )));
    }
    let closed = ramanujan_hoelder(r, n)? as f64;
    if (sum.re - closed).abs() >= tol {
        return Err(Error::InternalInconsistency(format!(
            "C({r},{n}) direct sum {} disagrees with closed form {closed}",
            sum.re
        )));
    }
    Ok(sum.re)
}

/// Ramanujan sum together with both evaluation routes.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct RamanujanValue {
    pub r: u64,
    pub n: u64,
    pub value: i64,
    pub direct: f64,
}

impl RamanujanValue {
    pub fn compute(r: u64, n: u64, tol: f64) -> Result<Self> {
        Ok(Self {
            r,
            n,
            value: ramanujan_hoelder(r, n)?,
            direct: ramanujan_direct(r, n, tol)?,
        })
    }
}

/// `C(r, n)` for `r = 0..n`.
pub fn ramanujan_row(n: u64, tol: f64) -> Result<Vec<RamanujanValue>> {
    check_arg(n, "n")?;
    (0..n).map(|r| RamanujanValue::compute(r, n, tol)).collect()
}
