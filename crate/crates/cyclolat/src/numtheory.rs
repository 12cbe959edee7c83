//! Exact multiplicative number theory: factorization, totient, Moebius,
//! divisor counts, inverse totient and cyclotomic polynomials.
//!
//! Everything here is deterministic trial-division arithmetic; the targets
//! of this crate never exceed a few million, so no probabilistic primality
//! is involved.

use num::{BigInt, One, Zero};

use crate::error::{invalid, Error, Result};

/// Largest `N` accepted by [`phi_sieve`].
pub const SIEVE_CAP: u64 = 100_000_000;

/// Ordered prime-power decomposition of a positive integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub n: u64,
    /// `(prime, exponent)` pairs with strictly increasing primes.
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn phi(&self) -> u64 {
        let mut phi = self.n;
        for &(p, _) in &self.factors {
            phi = phi / p * (p - 1);
        }
        phi
    }

    pub fn omega(&self) -> u32 {
        self.factors.len() as u32
    }

    pub fn tau(&self) -> u64 {
        self.factors.iter().map(|&(_, e)| e as u64 + 1).product()
    }

    pub fn radical(&self) -> u64 {
        self.factors.iter().map(|&(p, _)| p).product()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub fn is_power_of_two(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].0 == 2 || self.n == 1
    }
}

fn require_positive(n: u64) -> Result<()> {
    if n == 0 {
        Err(invalid("n must be positive"))
    } else {
        Ok(())
    }
}

/// Trial-division factorization with a 2-3-5 wheel.
pub fn factorize(n: u64) -> Result<Factorization> {
    require_positive(n)?;
    let mut factors = Vec::new();
    let mut m = n;
    for p in [2u64, 3, 5] {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    }
    const WHEEL: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
    let mut p = 7u64;
    let mut w = 0usize;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += WHEEL[w];
        w = (w + 1) % WHEEL.len();
    }
    if m > 1 {
        factors.push((m, 1));
    }
    Ok(Factorization { n, factors })
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> Result<u64> {
    Ok(factorize(n)?.phi())
}

/// Moebius function: 0 when `n` is not square-free, otherwise `(-1)^omega(n)`.
pub fn moebius(n: u64) -> Result<i8> {
    let f = factorize(n)?;
    if !f.is_squarefree() {
        Ok(0)
    } else if f.omega() % 2 == 0 {
        Ok(1)
    } else {
        Ok(-1)
    }
}

/// Number of distinct prime divisors.
pub fn omega(n: u64) -> Result<u32> {
    Ok(factorize(n)?.omega())
}

/// Number of divisors.
pub fn tau(n: u64) -> Result<u64> {
    Ok(factorize(n)?.tau())
}

/// Radical of `n`: the product of its distinct primes.
pub fn squarefree_part(n: u64) -> Result<u64> {
    Ok(factorize(n)?.radical())
}

/// Smallest odd prime dividing `n`, absent when `n` is a power of two
/// (including 1).
pub fn smallest_odd_prime_divisor(n: u64) -> Result<Option<u64>> {
    let f = factorize(n)?;
    Ok(f.factors.iter().map(|&(p, _)| p).find(|&p| p > 2))
}

/// Least prime factor of `n >= 2`.
pub fn smallest_prime_divisor(n: u64) -> Result<u64> {
    if n < 2 {
        return Err(invalid("smallest_prime_divisor requires n >= 2"));
    }
    Ok(factorize(n)?.factors[0].0)
}

/// All divisors of `n`, ascending.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    let f = factorize(n)?;
    let mut divs = vec![1u64];
    for &(p, e) in &f.factors {
        let prev = divs.clone();
        let mut pe = 1u64;
        for _ in 0..e {
            pe *= p;
            divs.extend(prev.iter().map(|d| d * pe));
        }
    }
    divs.sort_unstable();
    Ok(divs)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut p = 3;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += 2;
    }
    true
}

/// All `n` with `phi(n) = d`, ascending. Builds candidates as products of
/// prime powers `p^k` with `(p-1) p^(k-1)` dividing `d`, over strictly
/// increasing primes, so the cost is driven by the divisor structure of
/// `d` rather than by a search bound.
pub fn inverse_totient(d: u64) -> Vec<u64> {
    fn rec(d: u64, min_p: u64, acc: u64, out: &mut Vec<u64>) {
        if d == 1 {
            out.push(acc);
        }
        for e in divisors(d).expect("d positive") {
            let p = e + 1;
            if p < min_p || !is_prime(p) {
                continue;
            }
            // phi(p^k) = (p-1) p^(k-1)
            let mut cofactor = e;
            let mut pk = p;
            while d % cofactor == 0 {
                rec(d / cofactor, p + 1, acc * pk, out);
                match (cofactor.checked_mul(p), pk.checked_mul(p)) {
                    (Some(c), Some(q)) if d % c == 0 => {
                        cofactor = c;
                        pk = q;
                    }
                    _ => break,
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(d, 2, 1, &mut out);
    out.sort_unstable();
    out
}

/// `phi(k)` for `1 <= k <= n`, via a linear smallest-prime-factor sieve.
/// Index 0 of the returned vector is unused and holds 0.
pub fn phi_sieve(n: u64) -> Result<Vec<u64>> {
    require_positive(n)?;
    if n > SIEVE_CAP {
        return Err(Error::BudgetExceeded(format!(
            "sieve size {n} exceeds cap {SIEVE_CAP}"
        )));
    }
    let n = n as usize;
    let mut phi = vec![0u64; n + 1];
    let mut primes: Vec<usize> = Vec::new();
    phi[1] = 1;
    for i in 2..=n {
        if phi[i] == 0 {
            phi[i] = i as u64 - 1;
            primes.push(i);
        }
        for &p in &primes {
            let ip = i * p;
            if ip > n {
                break;
            }
            if i % p == 0 {
                phi[ip] = phi[i] * p as u64;
                break;
            }
            phi[ip] = phi[i] * (p as u64 - 1);
        }
    }
    // Mark unfilled entries (primes) lazily is already handled above; entry 0
    // stays 0 as a sentinel.
    Ok(phi)
}

/// Smallest-prime-factor table for `2 <= k <= n` (`spf[0] = spf[1] = 0`).
pub fn spf_sieve(n: u64) -> Result<Vec<u32>> {
    require_positive(n)?;
    if n > SIEVE_CAP {
        return Err(Error::BudgetExceeded(format!(
            "sieve size {n} exceeds cap {SIEVE_CAP}"
        )));
    }
    let n = n as usize;
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    Ok(spf)
}

/// Coefficients of the n-th cyclotomic polynomial, ascending degree, exact.
///
/// Computed by iterated exact division: `Phi_n = (x^n - 1) / prod_{d|n, d<n} Phi_d`.
pub fn cyclotomic_polynomial(n: u64) -> Result<Vec<BigInt>> {
    require_positive(n)?;
    let divs = divisors(n)?;
    let mut cache: Vec<Vec<BigInt>> = Vec::new();
    for &d in &divs {
        // x^d - 1
        let mut poly = vec![BigInt::zero(); d as usize + 1];
        poly[0] = BigInt::from(-1);
        poly[d as usize] = BigInt::one();
        for (i, &e) in divs.iter().enumerate() {
            if e < d && d % e == 0 {
                poly = poly_div_exact(&poly, &cache[i])?;
            }
        }
        cache.push(poly);
    }
    Ok(cache.pop().expect("n divides n"))
}

/// Exact division of integer polynomials with monic divisor.
pub(crate) fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Result<Vec<BigInt>> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    if dn < dd {
        return Err(Error::Inconsistent("polynomial division underflow".into()));
    }
    let mut rem: Vec<BigInt> = num.to_vec();
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for k in (0..=dn - dd).rev() {
        let c = rem[k + dd].clone();
        if !c.is_zero() {
            for j in 0..=dd {
                let t = &c * &den[j];
                rem[k + j] -= t;
            }
        }
        quot[k] = c;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return Err(Error::Inconsistent("polynomial division not exact".into()));
    }
    Ok(quot)
}

/// Remainder of `x^k` modulo the monic polynomial `m`, ascending coefficients.
pub(crate) fn power_mod_poly(k: u64, m: &[BigInt]) -> Vec<BigInt> {
    let deg = m.len() - 1;
    let mut rem = vec![BigInt::zero(); deg];
    if (k as usize) < deg {
        rem[k as usize] = BigInt::one();
        return rem;
    }
    // Start from x^(deg-1) and multiply by x with reduction.
    rem[deg - 1] = BigInt::one();
    for _ in 0..(k - (deg as u64 - 1)) {
        let lead = rem[deg - 1].clone();
        for i in (1..deg).rev() {
            rem[i] = rem[i - 1].clone() - &lead * &m[i];
        }
        rem[0] = -&lead * &m[0];
    }
    rem
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::integer::gcd;
    use proptest::prelude::*;

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(12).unwrap().factors, vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(7).unwrap().factors, vec![(7, 1)]);
        assert_eq!(factorize(360).unwrap().factors, vec![(2, 3), (3, 2), (5, 1)]);
        assert!(factorize(1).unwrap().factors.is_empty());
        assert!(factorize(0).is_err());
    }

    #[test]
    fn totient_examples() {
        assert_eq!(euler_phi(9).unwrap(), 6);
        assert_eq!(euler_phi(16).unwrap(), 8);
        assert_eq!(euler_phi(660).unwrap(), 160);
        assert!(euler_phi(0).is_err());
    }

    #[test]
    fn moebius_examples() {
        assert_eq!(moebius(1).unwrap(), 1);
        assert_eq!(moebius(6).unwrap(), 1);
        assert_eq!(moebius(12).unwrap(), 0);
        assert_eq!(moebius(30).unwrap(), -1);
    }

    #[test]
    fn omega_tau_examples() {
        assert_eq!(tau(15).unwrap(), 4);
        assert_eq!(omega(15).unwrap(), 2);
        assert_eq!(omega(252).unwrap(), 3);
        assert_eq!(tau(16).unwrap(), 5);
        assert_eq!(omega(16).unwrap(), 1);
    }

    #[test]
    fn squarefree_part_examples() {
        assert_eq!(squarefree_part(72).unwrap(), 6);
        assert_eq!(squarefree_part(7).unwrap(), 7);
        assert_eq!(squarefree_part(400).unwrap(), 10);
    }

    #[test]
    fn prime_divisor_examples() {
        assert_eq!(smallest_odd_prime_divisor(35).unwrap(), Some(5));
        assert_eq!(smallest_odd_prime_divisor(16).unwrap(), None);
        assert_eq!(smallest_odd_prime_divisor(1).unwrap(), None);
        assert_eq!(smallest_odd_prime_divisor(52).unwrap(), Some(13));
        assert_eq!(smallest_prime_divisor(9).unwrap(), 3);
        assert_eq!(smallest_prime_divisor(35).unwrap(), 5);
        assert_eq!(smallest_prime_divisor(97).unwrap(), 97);
        assert!(smallest_prime_divisor(1).is_err());
    }

    #[test]
    fn inverse_totient_examples() {
        assert_eq!(inverse_totient(8), vec![15, 16, 20, 24, 30]);
        assert_eq!(inverse_totient(6), vec![7, 9, 14, 18]);
        assert_eq!(inverse_totient(3), Vec::<u64>::new());
        assert_eq!(inverse_totient(1), vec![1, 2]);
    }

    #[test]
    fn inverse_totient_contains_n() {
        for n in 1..=10_000u64 {
            let d = euler_phi(n).unwrap();
            assert!(inverse_totient(d).contains(&n), "n = {n}");
        }
    }

    #[test]
    fn phi_sieve_matches_euler_phi() {
        let sieve = phi_sieve(2000).unwrap();
        assert_eq!(&sieve[1..=6], &[1, 1, 2, 2, 4, 2]);
        assert_eq!(sieve[660], 160);
        assert_eq!(sieve[72], 24);
        for n in 1..=2000u64 {
            assert_eq!(sieve[n as usize], euler_phi(n).unwrap(), "n = {n}");
        }
        assert!(phi_sieve(0).is_err());
        assert!(phi_sieve(SIEVE_CAP + 1).is_err());
    }

    #[test]
    fn totient_divisor_sum() {
        for n in 1..=10_000u64 {
            let sum: u64 = divisors(n)
                .unwrap()
                .iter()
                .map(|&d| euler_phi(d).unwrap())
                .sum();
            assert_eq!(sum, n);
        }
    }

    #[test]
    fn tau_of_radical_is_two_to_omega() {
        for n in 1..=10_000u64 {
            assert_eq!(
                tau(squarefree_part(n).unwrap()).unwrap(),
                1u64 << omega(n).unwrap()
            );
        }
    }

    fn poly(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic_polynomial(1).unwrap(), poly(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(4).unwrap(), poly(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(12).unwrap(), poly(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(7).unwrap(), poly(&[1, 1, 1, 1, 1, 1, 1]));
    }

    #[test]
    fn cyclotomic_structure() {
        for n in 1..=200u64 {
            let c = cyclotomic_polynomial(n).unwrap();
            let phi = euler_phi(n).unwrap() as usize;
            assert_eq!(c.len(), phi + 1, "degree phi(n) for n = {n}");
            assert!(c[phi].is_one(), "monic for n = {n}");
            if n > 1 {
                // Second-highest coefficient is -mu(n).
                assert_eq!(c[phi - 1], BigInt::from(-moebius(n).unwrap()));
            }
        }
        // Phi_p(1) = p for primes p.
        for p in [2u64, 3, 5, 7, 11, 13, 97] {
            let sum: BigInt = cyclotomic_polynomial(p).unwrap().into_iter().sum();
            assert_eq!(sum, BigInt::from(p));
        }
    }

    #[test]
    fn cyclotomic_product_is_xn_minus_1() {
        for n in 1..=200u64 {
            let mut prod = poly(&[1]);
            for d in divisors(n).unwrap() {
                let c = cyclotomic_polynomial(d).unwrap();
                let mut next = vec![BigInt::zero(); prod.len() + c.len() - 1];
                for (i, a) in prod.iter().enumerate() {
                    for (j, b) in c.iter().enumerate() {
                        next[i + j] += a * b;
                    }
                }
                prod = next;
            }
            let mut expect = vec![BigInt::zero(); n as usize + 1];
            expect[0] = BigInt::from(-1);
            expect[n as usize] = BigInt::one();
            assert_eq!(prod, expect, "n = {n}");
        }
    }

    proptest! {
        #[test]
        fn multiplicative_on_coprime_pairs(a in 1u64..1000, b in 1u64..1000) {
            prop_assume!(gcd(a, b) == 1);
            prop_assert!(a * b <= 1_000_000);
            prop_assert_eq!(euler_phi(a * b).unwrap(), euler_phi(a).unwrap() * euler_phi(b).unwrap());
            prop_assert_eq!(moebius(a * b).unwrap(), moebius(a).unwrap() * moebius(b).unwrap());
            prop_assert_eq!(tau(a * b).unwrap(), tau(a).unwrap() * tau(b).unwrap());
        }
    }
}
