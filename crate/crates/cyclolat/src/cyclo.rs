//! Exact invariants of the cyclotomic lattice of the n-th cyclotomic field:
//! pairwise cosines, Gram matrix, maximal and average coherence (closed form
//! and brute force), discriminant, determinant, orthogonality defect,
//! packing density and the orthogonality product measure.
//!
//! Coherence values are exact rationals. The defect and the product measure
//! are kept as exact *squares* plus floating roots: the squared quantities
//! are rational, the roots generally are not, so rounding happens only at
//! the final square root.

use astro_float::BigFloat;
use num::{BigInt, One, Signed, Zero};

use crate::error::{invalid, Error, Result};
use crate::hiprec::{self, DEFAULT_PRECISION_BITS};
use crate::linalg;
use crate::numtheory::{self, Factorization};
use crate::rational::{rat, rat_int, Rat};

/// Descriptor of the cyclotomic lattice for a given `n > 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloLattice {
    pub n: u64,
    /// Rank, `phi(n)`.
    pub d: u64,
    /// Number of minimal vectors up to sign: `n` for odd `n`, `n/2` for even.
    pub s_half: u64,
    pub is_two_power: bool,
}

impl CycloLattice {
    pub fn new(n: u64) -> Result<Self> {
        let f = check_n(n)?;
        Ok(CycloLattice {
            n,
            d: f.phi(),
            s_half: if n % 2 == 0 { n / 2 } else { n },
            is_two_power: f.is_power_of_two(),
        })
    }
}

/// Full bundle of exact and floating invariants of one cyclotomic lattice.
#[derive(Debug, Clone)]
pub struct LatticeStats {
    pub lattice: CycloLattice,
    pub max_coherence: Rat,
    pub avg_coherence: Rat,
    pub discriminant: BigInt,
    pub det_gram_exact: Rat,
    pub defect_squared: Rat,
    pub defect_float: BigFloat,
    pub packing_density: BigFloat,
    /// Absent when the average coherence is zero (powers of two).
    pub pi_squared: Option<Rat>,
    pub pi_float: Option<BigFloat>,
}

/// Controls for [`stats`].
#[derive(Debug, Clone)]
pub struct StatsOptions {
    pub precision_bits: usize,
    /// Verify closed-form coherence against the brute-force scans before
    /// returning. The scan is quadratic in `n`; skip it for very large `n`.
    pub verify_bruteforce: bool,
}

impl Default for StatsOptions {
    fn default() -> Self {
        StatsOptions {
            precision_bits: DEFAULT_PRECISION_BITS,
            verify_bruteforce: true,
        }
    }
}

fn check_n(n: u64) -> Result<Factorization> {
    if n <= 2 {
        return Err(invalid(format!("n must be > 2, got {n}")));
    }
    numtheory::factorize(n)
}

/// Cosine of the angle between the k1-th and k2-th minimal vectors:
/// `mu(m)/phi(m)` with `m = n / gcd(k1 - k2, n)`.
pub fn cosine(n: u64, k1: u64, k2: u64) -> Result<Rat> {
    let lat = CycloLattice::new(n)?;
    if k1 == k2 {
        return Err(invalid("cosine requires distinct indices"));
    }
    for k in [k1, k2] {
        if k < 1 || k > lat.s_half {
            return Err(invalid(format!(
                "index {k} out of range 1..={}",
                lat.s_half
            )));
        }
    }
    Ok(cosine_unchecked(n, k1.abs_diff(k2)))
}

fn cosine_unchecked(n: u64, diff: u64) -> Rat {
    let m = n / num::integer::gcd(diff, n);
    let mu = numtheory::moebius(m).expect("m positive");
    if mu == 0 {
        Rat::zero()
    } else {
        rat(
            mu as i64,
            numtheory::euler_phi(m).expect("m positive") as i64,
        )
    }
}

/// Trace-form inner product of the k1-th and k2-th powers of the root of
/// unity: `phi(n)/(2 phi(m)) * mu(m)`; equal exponents give `phi(n)/2`.
pub fn inner_product(n: u64, k1: u64, k2: u64) -> Result<Rat> {
    let f = check_n(n)?;
    for k in [k1, k2] {
        if k < 1 || k > n {
            return Err(invalid(format!("exponent {k} out of range 1..={n}")));
        }
    }
    let phi = f.phi();
    if k1 == k2 {
        return Ok(rat(phi as i64, 2));
    }
    let m = n / num::integer::gcd(k1.abs_diff(k2), n);
    let mu = numtheory::moebius(m)?;
    if mu == 0 {
        return Ok(Rat::zero());
    }
    let phi_m = numtheory::euler_phi(m)?;
    Ok(rat(mu as i64 * phi as i64, 2 * phi_m as i64))
}

/// Gram matrix of the power basis `{zeta^j : 0 <= j < phi(n)}`.
pub fn gram_matrix(n: u64) -> Result<Vec<Vec<Rat>>> {
    let f = check_n(n)?;
    let d = f.phi() as usize;
    let mut g = vec![vec![Rat::zero(); d]; d];
    for i in 0..d {
        for j in 0..=i {
            let v = if i == j {
                rat(f.phi() as i64, 2)
            } else {
                // Exponent difference i - j; inner_product only depends on it.
                inner_product(n, i as u64 + 1, j as u64 + 1)?
            };
            g[i][j] = v.clone();
            g[j][i] = v;
        }
    }
    Ok(g)
}

/// Closed-form maximal coherence: 0 for powers of two, otherwise `1/(p-1)`
/// for the smallest odd prime `p` dividing `n`.
pub fn max_coherence_closed(n: u64) -> Result<Rat> {
    check_n(n)?;
    match numtheory::smallest_odd_prime_divisor(n)? {
        None => Ok(Rat::zero()),
        Some(p) => Ok(rat(1, p as i64 - 1)),
    }
}

/// Maximal coherence by a fully naive pairwise scan over the minimal
/// vectors. This is the lowest-assumption exact oracle for the closed form.
pub fn max_coherence_bruteforce(n: u64) -> Result<Rat> {
    let lat = CycloLattice::new(n)?;
    let table = CosTable::new(n, lat.s_half);
    let mut best = Rat::zero();
    for k1 in 2..=lat.s_half {
        for k2 in 1..k1 {
            let c = table.abs_cos(k1 - k2);
            if *c > best {
                best = c.clone();
            }
        }
    }
    Ok(best)
}

/// Per-vector average coherence: the mean absolute cosine between the k-th
/// minimal vector and all others.
pub fn avg_coherence_alpha(n: u64, k: u64) -> Result<Rat> {
    let lat = CycloLattice::new(n)?;
    if k < 1 || k > lat.s_half {
        return Err(invalid(format!("index {k} out of range 1..={}", lat.s_half)));
    }
    let table = CosTable::new(n, lat.s_half);
    Ok(table.avg_for(k, lat.s_half))
}

/// Closed-form average coherence: `(2^omega - 1)/(n - 1)` for odd `n`,
/// `(2^omega - 2)/(n - 2)` for even `n`.
pub fn avg_coherence_closed(n: u64) -> Result<Rat> {
    let f = check_n(n)?;
    let pow = 1i64 << f.omega();
    if n % 2 == 1 {
        Ok(rat(pow - 1, n as i64 - 1))
    } else {
        Ok(rat(pow - 2, n as i64 - 2))
    }
}

/// Average coherence as defined: the maximum of the per-vector averages,
/// scanned over every k as an independent check of k-invariance.
pub fn avg_coherence_bruteforce(n: u64) -> Result<Rat> {
    let lat = CycloLattice::new(n)?;
    let table = CosTable::new(n, lat.s_half);
    let mut best: Option<Rat> = None;
    for k in 1..=lat.s_half {
        let a = table.avg_for(k, lat.s_half);
        if best.as_ref().is_none_or(|b| a > *b) {
            best = Some(a);
        }
    }
    Ok(best.expect("s_half >= 1"))
}

/// Absolute cosines of one lattice, indexed by exponent difference. The
/// cosine depends only on `gcd(diff, n)`, so the table is shared across a
/// whole pairwise scan.
struct CosTable {
    by_diff_gcd: Vec<Rat>,
    n: u64,
}

impl CosTable {
    fn new(n: u64, s_half: u64) -> Self {
        let mut by_diff_gcd = vec![Rat::zero(); n as usize + 1];
        for diff in 1..=s_half.max(1) {
            let g = num::integer::gcd(diff, n) as usize;
            if by_diff_gcd[g].is_zero() {
                by_diff_gcd[g] = cosine_unchecked(n, diff).abs();
            }
        }
        CosTable { by_diff_gcd, n }
    }

    fn abs_cos(&self, diff: u64) -> &Rat {
        &self.by_diff_gcd[num::integer::gcd(diff, self.n) as usize]
    }

    fn avg_for(&self, k: u64, s_half: u64) -> Rat {
        // Group the O(s_half) terms by gcd class to keep the rational
        // arithmetic short; the per-k scan itself stays genuinely naive.
        let mut counts = vec![0u32; self.n as usize + 1];
        for j in 1..=s_half {
            if j != k {
                counts[num::integer::gcd(j.abs_diff(k), self.n) as usize] += 1;
            }
        }
        let mut sum = Rat::zero();
        for (g, &c) in counts.iter().enumerate() {
            if c > 0 && !self.by_diff_gcd[g].is_zero() {
                sum += &self.by_diff_gcd[g] * rat_int(c);
            }
        }
        sum / rat_int(s_half - 1)
    }
}

/// Discriminant of the n-th cyclotomic field:
/// `(-1)^(phi/2) n^phi / prod_{p|n} p^(phi/(p-1))`.
pub fn discriminant(n: u64) -> Result<BigInt> {
    let f = check_n(n)?;
    let phi = f.phi();
    let mut num = BigInt::from(n).pow(phi as u32);
    for &(p, _) in &f.factors {
        let e = phi / (p - 1);
        debug_assert_eq!(phi % (p - 1), 0);
        num /= BigInt::from(p).pow(e as u32);
    }
    if (phi / 2) % 2 == 1 {
        num = -num;
    }
    Ok(num)
}

/// Determinant of the Gram matrix via the discriminant formula:
/// `2^(-phi) |Delta|`.
pub fn det_gram_formula(n: u64) -> Result<Rat> {
    let f = check_n(n)?;
    let phi = f.phi();
    Ok(Rat::new(
        discriminant(n)?.abs(),
        BigInt::one() << phi,
    ))
}

/// Determinant of the Gram matrix, computed both from the discriminant
/// formula and by fraction-free elimination of the doubled (integral) Gram
/// matrix. The two routes must agree exactly.
pub fn det_gram_exact(n: u64) -> Result<Rat> {
    let formula = det_gram_formula(n)?;
    let g = gram_matrix(n)?;
    let d = g.len();
    // 2*Gram is integral.
    let doubled: Vec<Vec<BigInt>> = g
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    let t = x * rat_int(2);
                    debug_assert!(t.is_integer());
                    t.to_integer()
                })
                .collect()
        })
        .collect();
    let det = linalg::bareiss_determinant(&doubled);
    let elim = Rat::new(det, BigInt::one() << d);
    if elim != formula {
        return Err(Error::Inconsistent(format!(
            "det(Gram({n})): elimination gives {elim}, formula gives {formula}"
        )));
    }
    Ok(formula)
}

/// Squared orthogonality defect by the lattice-invariant route
/// `(phi/2)^phi / det(Gram)` and by the closed cyclotomic formula; the two
/// must agree exactly. Returns the exact square and its floating root.
pub fn orthogonality_defect(n: u64) -> Result<(Rat, BigFloat)> {
    orthogonality_defect_bits(n, DEFAULT_PRECISION_BITS)
}

pub fn orthogonality_defect_bits(n: u64, precision_bits: usize) -> Result<(Rat, BigFloat)> {
    let f = check_n(n)?;
    let phi = f.phi();
    // Route 1: |L|^d / det(L), squared.
    let min_pow = Rat::new(BigInt::from(phi).pow(phi as u32), BigInt::one() << phi);
    let via_det = min_pow / det_gram_formula(n)?;
    // Route 2: the closed formula, squared:
    // nu^2 = phi^phi * prod p^(phi/(p-1)) / n^phi.
    let mut num = BigInt::from(phi).pow(phi as u32);
    for &(p, _) in &f.factors {
        num *= BigInt::from(p).pow((phi / (p - 1)) as u32);
    }
    let closed = Rat::new(num, BigInt::from(n).pow(phi as u32));
    if via_det != closed {
        return Err(Error::Inconsistent(format!(
            "nu^2({n}): determinant route {via_det} != closed route {closed}"
        )));
    }
    let root = hiprec::sqrt_rat(&closed, precision_bits);
    Ok((closed, root))
}

/// Unit-ball volume `v_d` by the recurrence `v_d = (2 pi / d) v_(d-2)`.
fn unit_ball_volume(d: u64, p: usize) -> BigFloat {
    let rm = astro_float::RoundingMode::ToEven;
    let two_pi = {
        let mut t = hiprec::pi(p);
        t.set_exponent(t.exponent().unwrap() + 1);
        t
    };
    let mut v = if d % 2 == 0 {
        hiprec::rat_to_float(&rat_int(1), p)
    } else {
        hiprec::rat_to_float(&rat_int(2), p)
    };
    let mut k = if d % 2 == 0 { 2 } else { 3 };
    while k <= d {
        v = v.mul(&two_pi, p, rm).div(&BigFloat::from_u64(k, p), p, rm);
        k += 2;
    }
    v
}

/// Sphere packing density `delta = v_d * nu / 2^d`.
pub fn packing_density(n: u64) -> Result<BigFloat> {
    packing_density_bits(n, DEFAULT_PRECISION_BITS)
}

pub fn packing_density_bits(n: u64, precision_bits: usize) -> Result<BigFloat> {
    let f = check_n(n)?;
    let d = f.phi();
    let rm = astro_float::RoundingMode::ToEven;
    let p = precision_bits + 64;
    let (_, nu) = orthogonality_defect_bits(n, p)?;
    let v = unit_ball_volume(d, p);
    let mut delta = v.mul(&nu, p, rm);
    delta.set_exponent(delta.exponent().unwrap() - d as i32);
    delta.set_precision(precision_bits, rm).expect("precision");
    Ok(delta)
}

/// Orthogonality product measure `Pi = |S'| nu / (d A)`, exact in squared
/// form; absent when the average coherence is zero.
pub fn product_measure(n: u64) -> Result<Option<(Rat, BigFloat)>> {
    product_measure_bits(n, DEFAULT_PRECISION_BITS)
}

pub fn product_measure_bits(
    n: u64,
    precision_bits: usize,
) -> Result<Option<(Rat, BigFloat)>> {
    let lat = CycloLattice::new(n)?;
    let avg = avg_coherence_closed(n)?;
    if avg.is_zero() {
        return Ok(None);
    }
    let (nu_sq, _) = orthogonality_defect_bits(n, precision_bits)?;
    let s_half = rat_int(lat.s_half);
    let d = rat_int(lat.d);
    let definitional = (&s_half * &s_half * &nu_sq) / (&d * &d * (&avg * &avg));
    // Closed route from the explicit product-measure formula, squared.
    let f = numtheory::factorize(n)?;
    let phi = f.phi();
    let mut disc_abs = BigInt::from(n).pow(phi as u32);
    for &(p, _) in &f.factors {
        disc_abs /= BigInt::from(p).pow((phi / (p - 1)) as u32);
    }
    let pow_omega = BigInt::from(1u64 << f.omega());
    let closed = if n % 2 == 0 {
        let a = BigInt::from(n) * BigInt::from(n - 2);
        Rat::new(
            &a * &a * BigInt::from(phi).pow(phi as u32 - 2),
            BigInt::from(4) * (&pow_omega - BigInt::from(2)).pow(2u32) * disc_abs,
        )
    } else {
        let a = BigInt::from(n) * BigInt::from(n - 1);
        Rat::new(
            &a * &a * BigInt::from(phi).pow(phi as u32 - 2),
            (&pow_omega - BigInt::one()).pow(2u32) * disc_abs,
        )
    };
    if definitional != closed {
        return Err(Error::Inconsistent(format!(
            "Pi^2({n}): definitional route {definitional} != closed route {closed}"
        )));
    }
    let root = hiprec::sqrt_rat(&closed, precision_bits);
    Ok(Some((closed, root)))
}

/// All invariants of one lattice, with optional brute-force verification of
/// the closed-form coherence values.
pub fn stats(n: u64, opts: &StatsOptions) -> Result<LatticeStats> {
    let lattice = CycloLattice::new(n)?;
    let max_coherence = max_coherence_closed(n)?;
    let avg_coherence = avg_coherence_closed(n)?;
    if opts.verify_bruteforce {
        let mc = max_coherence_bruteforce(n)?;
        if mc != max_coherence {
            return Err(Error::Inconsistent(format!(
                "C({n}): brute force {mc} != closed form {max_coherence}"
            )));
        }
        let ac = avg_coherence_bruteforce(n)?;
        if ac != avg_coherence {
            return Err(Error::Inconsistent(format!(
                "A({n}): brute force {ac} != closed form {avg_coherence}"
            )));
        }
    }
    let discriminant = discriminant(n)?;
    let det_gram_exact = det_gram_formula(n)?;
    let (defect_squared, defect_float) = orthogonality_defect_bits(n, opts.precision_bits)?;
    let packing_density = packing_density_bits(n, opts.precision_bits)?;
    let pi = product_measure_bits(n, opts.precision_bits)?;
    let (pi_squared, pi_float) = match pi {
        Some((sq, fl)) => (Some(sq), Some(fl)),
        None => (None, None),
    };
    Ok(LatticeStats {
        lattice,
        max_coherence,
        avg_coherence,
        discriminant,
        det_gram_exact,
        defect_squared,
        defect_float,
        packing_density,
        pi_squared,
        pi_float,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hiprec::to_f64;

    #[test]
    fn cosine_examples() {
        assert_eq!(cosine(7, 2, 1).unwrap(), rat(-1, 6));
        assert_eq!(cosine(12, 4, 1).unwrap(), Rat::zero());
        assert_eq!(cosine(15, 2, 1).unwrap(), rat(1, 8));
        assert!(cosine(7, 3, 3).is_err());
        assert!(cosine(7, 8, 1).is_err());
        assert!(cosine(2, 1, 2).is_err());
    }

    #[test]
    fn inner_product_examples() {
        assert_eq!(inner_product(7, 1, 1).unwrap(), rat_int(3));
        assert_eq!(inner_product(4, 2, 1).unwrap(), Rat::zero());
        assert_eq!(inner_product(3, 2, 1).unwrap(), rat(-1, 2));
        assert!(inner_product(2, 1, 1).is_err());
    }

    #[test]
    fn gram_examples() {
        let g4 = gram_matrix(4).unwrap();
        assert_eq!(g4, vec![vec![rat_int(1), rat_int(0)], vec![rat_int(0), rat_int(1)]]);
        let g3 = gram_matrix(3).unwrap();
        assert_eq!(
            g3,
            vec![vec![rat_int(1), rat(-1, 2)], vec![rat(-1, 2), rat_int(1)]]
        );
        let g8 = gram_matrix(8).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j { rat_int(2) } else { Rat::zero() };
                assert_eq!(g8[i][j], expect);
            }
        }
    }

    #[test]
    fn max_coherence_examples() {
        assert_eq!(max_coherence_closed(16).unwrap(), Rat::zero());
        assert_eq!(max_coherence_closed(7).unwrap(), rat(1, 6));
        assert_eq!(max_coherence_closed(148).unwrap(), rat(1, 36));
        assert_eq!(max_coherence_bruteforce(9).unwrap(), rat(1, 2));
        assert_eq!(max_coherence_bruteforce(16).unwrap(), Rat::zero());
        assert_eq!(max_coherence_bruteforce(35).unwrap(), rat(1, 4));
    }

    #[test]
    fn avg_coherence_examples() {
        for k in 1..=9 {
            assert_eq!(avg_coherence_alpha(9, k).unwrap(), rat(1, 8));
        }
        assert_eq!(
            avg_coherence_alpha(15, 1).unwrap(),
            avg_coherence_alpha(15, 7).unwrap()
        );
        assert_eq!(avg_coherence_alpha(16, 3).unwrap(), Rat::zero());
        assert!(avg_coherence_alpha(16, 9).is_err());
        assert_eq!(avg_coherence_closed(35).unwrap(), rat(3, 34));
        assert_eq!(avg_coherence_closed(24).unwrap(), rat(1, 11));
        assert_eq!(avg_coherence_closed(216).unwrap(), rat(1, 107));
        assert_eq!(avg_coherence_bruteforce(9).unwrap(), rat(1, 8));
        assert_eq!(avg_coherence_bruteforce(45).unwrap(), rat(3, 44));
        assert_eq!(avg_coherence_bruteforce(52).unwrap(), rat(1, 25));
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(3).unwrap(), BigInt::from(-3));
        assert_eq!(discriminant(4).unwrap(), BigInt::from(-4));
        assert_eq!(discriminant(7).unwrap(), BigInt::from(-16807));
    }

    #[test]
    fn det_gram_examples() {
        assert_eq!(det_gram_exact(3).unwrap(), rat(3, 4));
        assert_eq!(det_gram_exact(4).unwrap(), rat_int(1));
        assert_eq!(det_gram_exact(5).unwrap(), rat(125, 16));
    }

    #[test]
    fn defect_examples() {
        let (sq, root) = orthogonality_defect(7).unwrap();
        assert_eq!(sq, rat(46656, 16807));
        assert!((to_f64(&root) - 1.66666).abs() < 1e-3);
        let (sq16, root16) = orthogonality_defect(16).unwrap();
        assert_eq!(sq16, rat_int(1));
        assert_eq!(to_f64(&root16), 1.0);
        let (_, root15) = orthogonality_defect(15).unwrap();
        assert!((to_f64(&root15) - 3.640) <= 1e-3 && to_f64(&root15) > 3.640);
    }

    #[test]
    fn packing_density_examples() {
        let d4 = to_f64(&packing_density(4).unwrap());
        assert!((d4 - std::f64::consts::PI / 4.0).abs() < 1e-12);
        let d3 = to_f64(&packing_density(3).unwrap());
        assert!((d3 - 0.906899682).abs() < 1e-8);
        let d7 = to_f64(&packing_density(7).unwrap());
        assert!((d7 - 0.134532448).abs() < 1e-8);
    }

    #[test]
    fn product_measure_examples() {
        let (_, p7) = product_measure(7).unwrap().unwrap();
        assert!((to_f64(&p7) - 11.662).abs() < 1e-3);
        let (_, p9) = product_measure(9).unwrap().unwrap();
        assert!((to_f64(&p9) - 18.475).abs() < 1e-3);
        assert!(product_measure(16).unwrap().is_none());
    }

    #[test]
    fn stats_examples() {
        let s45 = stats(45, &StatsOptions::default()).unwrap();
        assert_eq!(s45.max_coherence, rat(1, 2));
        assert_eq!(s45.avg_coherence, rat(3, 44));
        assert!((to_f64(&s45.defect_float) - 48.263).abs() < 1e-2);
        assert!((to_f64(s45.pi_float.as_ref().unwrap()) - 1327.257).abs() < 0.1);

        let s660 = stats(660, &StatsOptions::default()).unwrap();
        assert_eq!(s660.avg_coherence, rat(7, 329));
        assert!((to_f64(&s660.defect_float) / 1.753e16 - 1.0).abs() < 1e-3);
        assert!((to_f64(s660.pi_float.as_ref().unwrap()) / 1.699e18 - 1.0).abs() < 1e-3);

        let s8 = stats(8, &StatsOptions::default()).unwrap();
        assert_eq!(s8.max_coherence, Rat::zero());
        assert_eq!(s8.avg_coherence, Rat::zero());
        assert_eq!(s8.defect_squared, rat_int(1));
        assert!(s8.pi_squared.is_none());
    }

    #[test]
    fn cosine_bounded_by_half() {
        for n in 3..=300u64 {
            let lat = CycloLattice::new(n).unwrap();
            for k in 2..=lat.s_half {
                let c = cosine(n, k, 1).unwrap().abs();
                assert!(c <= rat(1, 2), "n = {n}, k = {k}");
            }
        }
    }
}
