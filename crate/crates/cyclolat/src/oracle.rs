//! Independent verification layer: numeric Minkowski embedding, exact
//! short-vector enumeration, generic frame coherence on arbitrary vector
//! sets, tight-frame checking and basis orthogonality defect.
//!
//! Nothing in this module reuses the closed-form coherence formulas it is
//! meant to check: the embedding works from high-precision trigonometry and
//! the enumeration works from the integral doubled Gram matrix alone.

use astro_float::{BigFloat, RoundingMode};
use num::{BigInt, One, Signed, Zero};

use crate::cyclo;
use crate::error::{invalid, Error, Result};
use crate::hiprec;
use crate::numtheory;
use crate::rational::{rat_int, Rat};

/// Default cap on visited enumeration nodes.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

const RM: RoundingMode = RoundingMode::ToEven;

/// Numeric Minkowski embedding basis of the n-th cyclotomic lattice.
///
/// Column `j` holds the embedding of `zeta^j`: the interleaved real and
/// imaginary parts of `e^(2 pi i a j / n)` over the conjugate-pair
/// representatives `a` with `gcd(a, n) = 1`, `1 <= a < n/2`, ascending.
pub struct EmbeddingBasis {
    pub n: u64,
    pub d: u64,
    /// Column-major: `columns[j]` is the embedded vector of `zeta^j`.
    pub columns: Vec<Vec<BigFloat>>,
    pub precision_bits: usize,
}

impl EmbeddingBasis {
    /// Columns as `f64` vectors for the tolerance-based frame checks.
    pub fn columns_f64(&self) -> Vec<Vec<f64>> {
        self.columns
            .iter()
            .map(|c| c.iter().map(hiprec::to_f64).collect())
            .collect()
    }

    /// Embedded coordinates of `zeta^k` for any exponent `0 <= k < n`.
    pub fn embed_power(&self, k: u64) -> Vec<BigFloat> {
        let p = self.precision_bits;
        let reps = embedding_reps(self.n);
        let mut v = Vec::with_capacity(self.d as usize);
        for a in reps {
            let (c, s) = hiprec::cos_sin_2pi_frac(a * k % self.n, self.n, p);
            v.push(c);
            v.push(s);
        }
        v
    }
}

fn embedding_reps(n: u64) -> Vec<u64> {
    (1..n.div_ceil(2))
        .filter(|&a| num::integer::gcd(a, n) == 1)
        .collect()
}

/// Numeric Minkowski embedding of the power basis at the given precision.
pub fn minkowski_basis(n: u64, precision_bits: usize) -> Result<EmbeddingBasis> {
    if n <= 2 {
        return Err(invalid(format!("n must be > 2, got {n}")));
    }
    if precision_bits < 53 {
        return Err(invalid("precisionBits must be at least 53"));
    }
    let d = numtheory::euler_phi(n)?;
    let reps = embedding_reps(n);
    debug_assert_eq!(reps.len() as u64 * 2, d);
    let mut columns = Vec::with_capacity(d as usize);
    for j in 0..d {
        let mut col = Vec::with_capacity(d as usize);
        for &a in &reps {
            let (c, s) = hiprec::cos_sin_2pi_frac(a * j % n, n, precision_bits);
            col.push(c);
            col.push(s);
        }
        columns.push(col);
    }
    Ok(EmbeddingBasis {
        n,
        d,
        columns,
        precision_bits,
    })
}

/// Outcome of comparing the numeric embedding Gram with the exact one.
#[derive(Debug, Clone, Copy)]
pub struct GramCheck {
    pub max_deviation: f64,
    pub pass: bool,
}

/// Maximum entrywise deviation between the Gram matrix of the embedded
/// power basis and the exact trace-form Gram matrix.
pub fn numeric_gram_check(n: u64, precision_bits: usize, tol: f64) -> Result<GramCheck> {
    let basis = minkowski_basis(n, precision_bits)?;
    let exact = cyclo::gram_matrix(n)?;
    let p = precision_bits;
    let d = basis.d as usize;
    let mut max_dev = 0.0f64;
    for i in 0..d {
        for j in 0..=i {
            let mut dot = BigFloat::new(p);
            for k in 0..d {
                dot = dot.add(&basis.columns[i][k].mul(&basis.columns[j][k], p, RM), p, RM);
            }
            let exact_f = hiprec::rat_to_float(&exact[i][j], p);
            let dev = hiprec::to_f64(&dot.sub(&exact_f, p, RM).abs());
            if dev > max_dev {
                max_dev = dev;
            }
        }
    }
    Ok(GramCheck {
        max_deviation: max_dev,
        pass: max_dev <= tol,
    })
}

/// Coordinates of `zeta^k` in the power basis, by exact reduction of `x^k`
/// modulo the n-th cyclotomic polynomial.
pub fn root_of_unity_coords(n: u64, k: u64) -> Result<Vec<BigInt>> {
    if n <= 2 {
        return Err(invalid(format!("n must be > 2, got {n}")));
    }
    if k >= n {
        return Err(invalid(format!("exponent {k} out of range 0..{n}")));
    }
    let phi_n = numtheory::cyclotomic_polynomial(n)?;
    Ok(numtheory::power_mod_poly(k, &phi_n))
}

/// Output of exact short-vector enumeration.
#[derive(Debug, Clone)]
pub struct ShortVectorReport {
    pub n: u64,
    /// Exact minimum of the doubled (integral) quadratic form.
    pub min_norm_doubled: u64,
    /// Number of lattice vectors attaining the minimum (counting both signs).
    pub count: u64,
    /// All minimizers, sorted lexicographically by coordinates.
    pub vectors: Vec<Vec<BigInt>>,
    pub nodes_visited: u64,
}

/// Ceiling of `sqrt(a/b)` as an over-approximation: `sqrt(a/b) <= (isqrt(a*b)+1)/b`.
fn sqrt_upper_bound(r: &Rat) -> Rat {
    debug_assert!(!r.is_negative());
    let ab = r.numer() * r.denom();
    let s = ab.sqrt() + BigInt::one();
    Rat::new(s, r.denom().clone())
}

/// Enumerates all nonzero lattice vectors `v` with `v^T (2 Gram) v` at most
/// `doubled_norm_bound`, by Fincke-Pohst enumeration with exact rational
/// pivots, and reports the exact minimum together with all minimizers.
pub fn short_vectors(
    n: u64,
    doubled_norm_bound: u64,
    node_budget: u64,
) -> Result<ShortVectorReport> {
    let gram = cyclo::gram_matrix(n)?;
    let d = gram.len();
    let phi = d as u64;
    if doubled_norm_bound < phi {
        return Err(invalid(format!(
            "doubled norm bound {doubled_norm_bound} is below the doubled minimum {phi}"
        )));
    }
    // Doubled Gram is integral.
    let q: Vec<Vec<Rat>> = gram
        .iter()
        .map(|row| row.iter().map(|x| x * rat_int(2)).collect())
        .collect();
    let chol = fp_decompose(&q)?;
    let bound = rat_int(doubled_norm_bound);

    let mut found: Vec<(Vec<i64>, Rat)> = Vec::new();
    let mut nodes = 0u64;
    let mut x = vec![0i64; d];
    enumerate_level(
        &chol,
        d,
        &bound,
        &mut x,
        &mut found,
        &mut nodes,
        node_budget,
    )?;

    // Stored values are the unused part of the budget: norm = bound - remaining.
    let norms: Vec<Rat> = found.iter().map(|(_, rem)| &bound - rem).collect();
    let min_norm = norms
        .iter()
        .min()
        .cloned()
        .ok_or_else(|| Error::Inconsistent("no nonzero vector within bound".into()))?;
    debug_assert!(min_norm.is_integer());
    let mut vectors: Vec<Vec<BigInt>> = found
        .iter()
        .zip(&norms)
        .filter(|(_, norm)| **norm == min_norm)
        .map(|((v, _), _)| v.iter().map(|&c| BigInt::from(c)).collect())
        .collect();
    vectors.sort();
    Ok(ShortVectorReport {
        n,
        min_norm_doubled: u64::try_from(min_norm.to_integer())
            .map_err(|_| Error::Inconsistent("negative minimum".into()))?,
        count: vectors.len() as u64,
        vectors,
        nodes_visited: nodes,
    })
}

/// Fincke-Pohst quadratic-form decomposition with exact rational pivots.
fn fp_decompose(q: &[Vec<Rat>]) -> Result<Vec<Vec<Rat>>> {
    let n = q.len();
    let mut a = q.to_vec();
    for i in 0..n {
        if !a[i][i].is_positive() {
            return Err(Error::Inconsistent("matrix not positive definite".into()));
        }
        for j in i + 1..n {
            let r = &a[i][j] / &a[i][i];
            for k in j..n {
                let t = &r * &a[i][k];
                a[j][k] = &a[j][k] - &t;
            }
            a[i][j] = r;
        }
    }
    Ok(a)
}

fn enumerate_level(
    chol: &[Vec<Rat>],
    level: usize,
    remaining: &Rat,
    x: &mut Vec<i64>,
    found: &mut Vec<(Vec<i64>, Rat)>,
    nodes: &mut u64,
    budget: u64,
) -> Result<()> {
    debug_assert!(level > 0);
    let i = level - 1;
    // center u = sum_{j>i} q_ij x_j
    let mut u = Rat::zero();
    for j in level..chol.len() {
        if x[j] != 0 {
            u += &chol[i][j] * rat_int(x[j]);
        }
    }
    let radius = sqrt_upper_bound(&(remaining / &chol[i][i]));
    let lo = (-&u - &radius).ceil().to_integer();
    let hi = (-&u + &radius).floor().to_integer();
    let lo = i64::try_from(lo).map_err(|_| Error::BudgetExceeded("range overflow".into()))?;
    let hi = i64::try_from(hi).map_err(|_| Error::BudgetExceeded("range overflow".into()))?;
    for xi in lo..=hi {
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::BudgetExceeded(format!(
                "enumeration exceeded node budget {budget}"
            )));
        }
        let t = rat_int(xi) + &u;
        let used = &chol[i][i] * &t * &t;
        if used > *remaining {
            continue;
        }
        x[i] = xi;
        let next = remaining - &used;
        if i == 0 {
            if x.iter().any(|&c| c != 0) {
                found.push((x.clone(), next.clone()));
            }
        } else {
            enumerate_level(chol, i, &next, x, found, nodes, budget)?;
        }
    }
    x[i] = 0;
    Ok(())
}

/// Result of checking the minimal-vector characterization for one `n`.
#[derive(Debug, Clone)]
pub struct MinimalVectorCheck {
    pub n: u64,
    pub ok: bool,
    pub min_norm_doubled: u64,
    pub count: u64,
    pub expected_count: u64,
    pub nodes_visited: u64,
}

/// Confirms by enumeration that the doubled minimum is `phi(n)`, that the
/// number of minimizers is `s` (`n` for even `n`, `2n` for odd `n`) and
/// that the minimizers are exactly the signed root-of-unity coordinate
/// vectors.
pub fn verify_minimal_vectors(n: u64, node_budget: u64) -> Result<MinimalVectorCheck> {
    let phi = numtheory::euler_phi(n)?;
    if n <= 2 {
        return Err(invalid(format!("n must be > 2, got {n}")));
    }
    let report = short_vectors(n, phi, node_budget)?;
    let expected_count = if n % 2 == 0 { n } else { 2 * n };

    let mut expected: Vec<Vec<BigInt>> = Vec::new();
    for k in 0..n {
        let coords = root_of_unity_coords(n, k)?;
        let neg: Vec<BigInt> = coords.iter().map(|c| -c).collect();
        expected.push(coords);
        expected.push(neg);
    }
    expected.sort();
    expected.dedup();

    let ok = report.min_norm_doubled == phi
        && report.count == expected_count
        && report.vectors == expected;
    Ok(MinimalVectorCheck {
        n,
        ok,
        min_norm_doubled: report.min_norm_doubled,
        count: report.count,
        expected_count,
        nodes_visited: report.nodes_visited,
    })
}

fn check_vector_set(vectors: &[Vec<f64>]) -> Result<()> {
    if vectors.len() < 2 {
        return Err(invalid("need at least two vectors"));
    }
    for v in vectors {
        if v.iter().all(|&c| c == 0.0) {
            return Err(invalid("zero vector in set"));
        }
        if v.len() != vectors[0].len() {
            return Err(invalid("inconsistent vector dimensions"));
        }
    }
    Ok(())
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Maximal coherence of an arbitrary finite vector set: the largest
/// absolute pairwise cosine.
pub fn set_coherence(vectors: &[Vec<f64>]) -> Result<f64> {
    check_vector_set(vectors)?;
    let norms: Vec<f64> = vectors.iter().map(|v| norm(v)).collect();
    let mut best = 0.0f64;
    for i in 0..vectors.len() {
        for j in 0..i {
            let c = (dot(&vectors[i], &vectors[j]) / (norms[i] * norms[j])).abs();
            if c > best {
                best = c;
            }
        }
    }
    Ok(best)
}

/// Average coherence of an arbitrary finite vector set: the maximum over
/// `x` of the mean absolute cosine between `x` and the other vectors.
pub fn set_avg_coherence(vectors: &[Vec<f64>]) -> Result<f64> {
    check_vector_set(vectors)?;
    let norms: Vec<f64> = vectors.iter().map(|v| norm(v)).collect();
    let mut best = 0.0f64;
    for i in 0..vectors.len() {
        let mut sum = 0.0;
        for j in 0..vectors.len() {
            if i != j {
                sum += (dot(&vectors[i], &vectors[j]) / (norms[i] * norms[j])).abs();
            }
        }
        let avg = sum / (vectors.len() as f64 - 1.0);
        if avg > best {
            best = avg;
        }
    }
    Ok(best)
}

/// Outcome of a tight-frame (strong eutaxy) check.
#[derive(Debug, Clone, Copy)]
pub struct TightFrameReport {
    pub is_tight: bool,
    pub frame_constant: f64,
    /// Largest entrywise deviation from the scaled identity (or projector).
    pub max_deviation: f64,
}

/// Checks that the frame operator `sum_x x x^T` is `c` times the identity
/// on the span of the vectors (entrywise within `tol`), for a set of
/// equal-norm vectors spanning a space of dimension `rank`.
///
/// When the span is a proper subspace of the ambient space the operator is
/// compared against `c` times the orthogonal projector, via the equivalent
/// identity `F^2 = c F` together with `trace(F) = c * rank`.
pub fn tight_frame_check(vectors: &[Vec<f64>], rank: usize, tol: f64) -> Result<TightFrameReport> {
    check_vector_set(vectors)?;
    if vectors.len() < rank {
        return Err(invalid("fewer vectors than the stated rank"));
    }
    let norms: Vec<f64> = vectors.iter().map(|v| norm(v)).collect();
    let base = norms[0];
    for nv in &norms {
        if (nv - base).abs() > tol * base.max(1.0) {
            return Err(invalid("vectors do not have uniform norms"));
        }
    }
    let dim = vectors[0].len();
    let mut f = vec![vec![0.0f64; dim]; dim];
    for v in vectors {
        for i in 0..dim {
            for j in 0..dim {
                f[i][j] += v[i] * v[j];
            }
        }
    }
    let trace: f64 = (0..dim).map(|i| f[i][i]).sum();
    let c = trace / rank as f64;
    let mut max_dev = 0.0f64;
    if rank == dim {
        for (i, row) in f.iter().enumerate() {
            for (j, &entry) in row.iter().enumerate() {
                let expect = if i == j { c } else { 0.0 };
                max_dev = max_dev.max((entry - expect).abs());
            }
        }
    } else {
        // F = c P  <=>  F^2 = c F (with the trace pinning c).
        for i in 0..dim {
            for j in 0..dim {
                let ff: f64 = (0..dim).map(|k| f[i][k] * f[k][j]).sum();
                max_dev = max_dev.max((ff - c * f[i][j]).abs() / c.max(1.0));
            }
        }
    }
    Ok(TightFrameReport {
        is_tight: max_dev <= tol * c.max(1.0),
        frame_constant: c,
        max_deviation: max_dev,
    })
}

/// Orthogonality defect of an explicit basis: the product of the vector
/// norms divided by the absolute determinant of the basis matrix.
pub fn orthogonality_defect_of_basis(basis: &[Vec<f64>]) -> Result<f64> {
    if basis.is_empty() {
        return Err(invalid("empty basis"));
    }
    let d = basis.len();
    if basis.iter().any(|v| v.len() != d) {
        return Err(invalid("basis must be square (d vectors of length d)"));
    }
    let det = lu_determinant(basis);
    if det.abs() < 1e-12 {
        return Err(invalid("basis is numerically singular"));
    }
    let prod: f64 = basis.iter().map(|v| norm(v)).product();
    Ok(prod / det.abs())
}

fn lu_determinant(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let mut det = 1.0f64;
    for k in 0..n {
        let (pivot, _) = a
            .iter()
            .enumerate()
            .skip(k)
            .map(|(i, row)| (i, row[k].abs()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        if a[pivot][k] == 0.0 {
            return 0.0;
        }
        if pivot != k {
            a.swap(pivot, k);
            det = -det;
        }
        det *= a[k][k];
        for i in k + 1..n {
            let factor = a[i][k] / a[k][k];
            for j in k..n {
                let t = factor * a[k][j];
                a[i][j] -= t;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn bf_close(x: &BigFloat, want: f64, tol: f64) -> bool {
        (hiprec::to_f64(x) - want).abs() <= tol
    }

    #[test]
    fn embedding_n4_is_identity() {
        let b = minkowski_basis(4, 128).unwrap();
        assert_eq!(b.d, 2);
        assert!(bf_close(&b.columns[0][0], 1.0, 1e-30));
        assert!(bf_close(&b.columns[0][1], 0.0, 1e-30));
        assert!(bf_close(&b.columns[1][0], 0.0, 1e-30));
        assert!(bf_close(&b.columns[1][1], 1.0, 1e-30));
    }

    #[test]
    fn embedding_n3_second_column() {
        let b = minkowski_basis(3, 128).unwrap();
        assert!(bf_close(&b.columns[1][0], -0.5, 1e-30));
        assert!(bf_close(&b.columns[1][1], 3f64.sqrt() / 2.0, 1e-15));
    }

    #[test]
    fn embedding_n5_column_norms() {
        let b = minkowski_basis(5, 128).unwrap();
        assert_eq!(b.d, 4);
        for col in &b.columns {
            let sq: f64 = col.iter().map(|x| hiprec::to_f64(x).powi(2)).sum();
            assert!((sq - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn embedding_rejects_small_n() {
        assert!(minkowski_basis(2, 128).is_err());
        assert!(minkowski_basis(5, 10).is_err());
    }

    #[test]
    fn gram_check_examples() {
        let g = numeric_gram_check(12, 256, 1e-9).unwrap();
        assert!(g.pass, "deviation {}", g.max_deviation);
        let g = numeric_gram_check(3, 53, 1e-9).unwrap();
        assert!(g.max_deviation < 1e-12);
        assert!(numeric_gram_check(2, 256, 1e-9).is_err());
    }

    #[test]
    fn coords_examples() {
        let c = |v: Vec<i64>| -> Vec<BigInt> { v.into_iter().map(BigInt::from).collect() };
        assert_eq!(root_of_unity_coords(7, 2).unwrap(), c(vec![0, 0, 1, 0, 0, 0]));
        assert_eq!(root_of_unity_coords(5, 4).unwrap(), c(vec![-1, -1, -1, -1]));
        assert_eq!(root_of_unity_coords(4, 3).unwrap(), c(vec![0, -1]));
        assert!(root_of_unity_coords(5, 5).is_err());
    }

    #[test]
    fn short_vectors_n5() {
        let r = short_vectors(5, 4, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(r.min_norm_doubled, 4);
        assert_eq!(r.count, 10);
    }

    #[test]
    fn short_vectors_n7() {
        let r = short_vectors(7, 6, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(r.min_norm_doubled, 6);
        assert_eq!(r.count, 14);
    }

    #[test]
    fn short_vectors_n8_units() {
        let r = short_vectors(8, 4, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(r.min_norm_doubled, 4);
        assert_eq!(r.count, 8);
        for v in &r.vectors {
            let nz: Vec<&BigInt> = v.iter().filter(|c| !c.is_zero()).collect();
            assert_eq!(nz.len(), 1);
            assert_eq!(nz[0].abs(), BigInt::one());
        }
    }

    #[test]
    fn short_vectors_budget() {
        match short_vectors(35, 24, 100) {
            Err(Error::BudgetExceeded(_)) => {}
            other => panic!("expected budget exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn verify_examples() {
        for (n, count) in [(7, 14), (12, 12), (9, 18)] {
            let r = verify_minimal_vectors(n, DEFAULT_NODE_BUDGET).unwrap();
            assert!(r.ok, "n={n}: {r:?}");
            assert_eq!(r.count, count);
        }
    }

    #[test]
    fn set_coherence_examples() {
        let ortho = vec![
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ];
        assert_eq!(set_coherence(&ortho).unwrap(), 0.0);
        assert_eq!(set_avg_coherence(&ortho).unwrap(), 0.0);

        let s3 = 3f64.sqrt() / 2.0;
        let mercedes = vec![vec![1.0, 0.0], vec![-0.5, s3], vec![-0.5, -s3]];
        assert!((set_coherence(&mercedes).unwrap() - 0.5).abs() < 1e-15);
        assert!((set_avg_coherence(&mercedes).unwrap() - 0.5).abs() < 1e-15);

        assert!(set_coherence(&[vec![1.0]]).is_err());
        assert!(set_coherence(&[vec![1.0], vec![0.0]]).is_err());
    }

    #[test]
    fn set_coherence_embedded_s7() {
        let b = minkowski_basis(7, 128).unwrap();
        let vecs: Vec<Vec<f64>> = (1..=7)
            .map(|k| b.embed_power(k).iter().map(hiprec::to_f64).collect())
            .collect();
        let c = set_coherence(&vecs).unwrap();
        assert!((c - 1.0 / 6.0).abs() < 1e-9, "got {c}");
        let a = set_avg_coherence(&vecs).unwrap();
        assert!((a - 1.0 / 6.0).abs() < 1e-9, "got {a}");
    }

    #[test]
    fn tight_frame_examples() {
        let basis = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        let r = tight_frame_check(&basis, 2, 1e-12).unwrap();
        assert!(r.is_tight);
        assert!((r.frame_constant - 1.0).abs() < 1e-12);

        let b = minkowski_basis(5, 128).unwrap();
        let vecs: Vec<Vec<f64>> = (1..=5)
            .map(|k| b.embed_power(k).iter().map(hiprec::to_f64).collect())
            .collect();
        let r = tight_frame_check(&vecs, 4, 1e-8).unwrap();
        assert!(r.is_tight, "dev {}", r.max_deviation);
        assert!((r.frame_constant - 2.5).abs() < 1e-8);
    }

    #[test]
    fn tight_frame_rejects_mixed_norms() {
        let bad = vec![vec![1.0, 0.0], vec![0.0, 2.0], vec![1.0, 1.0]];
        assert!(tight_frame_check(&bad, 2, 1e-9).is_err());
    }

    #[test]
    fn defect_examples() {
        let id = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        assert!((orthogonality_defect_of_basis(&id).unwrap() - 1.0).abs() < 1e-15);

        let hex = vec![vec![1.0, 0.0], vec![-0.5, 3f64.sqrt() / 2.0]];
        let d = orthogonality_defect_of_basis(&hex).unwrap();
        assert!((d - 2.0 / 3f64.sqrt()).abs() < 1e-12);

        let b = minkowski_basis(7, 192).unwrap();
        let cols = b.columns_f64();
        let d = orthogonality_defect_of_basis(&cols).unwrap();
        let (_, nu) = cyclo::orthogonality_defect(7).unwrap();
        assert!((d - hiprec::to_f64(&nu)).abs() < 1e-6, "got {d}");

        let sing = vec![vec![1.0, 2.0], vec![2.0, 4.0]];
        assert!(orthogonality_defect_of_basis(&sing).is_err());
    }

    #[test]
    fn sqrt_bound_is_upper() {
        for (a, b) in [(2i64, 1i64), (3, 4), (7, 5), (100, 9)] {
            let r = rat(a, b);
            let s = sqrt_upper_bound(&r);
            assert!(&s * &s >= r);
        }
    }
}
