//! Root lattices A_n, D_n, E6, E7, E8: minimal-vector generation and
//! coherence statistics, both by brute force over the generated roots and
//! from the closed forms.
//!
//! All root coordinates are stored doubled so that E8's half-integer roots
//! become integers; every root then has doubled squared norm 8 and every
//! pairwise inner product is an exact integer.

use num::{BigInt, One, Signed, Zero};

use crate::error::{invalid, Result};
use crate::linalg;
use crate::rational::{bigint_pow, rat, rat_int, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    A,
    D,
    E,
}

impl Family {
    pub fn label(&self, rank: u64) -> String {
        match self {
            Family::A => format!("A{rank}"),
            Family::D => format!("D{rank}"),
            Family::E => format!("E{rank}"),
        }
    }
}

/// One representative per +/- pair of the root system, doubled coordinates.
#[derive(Debug, Clone)]
pub struct RootSystem {
    pub family: Family,
    pub rank: u64,
    pub ambient_dim: usize,
    pub vectors_doubled: Vec<Vec<i64>>,
}

/// Generates the minimal-vector representatives of the given root lattice.
///
/// A_n lives in dimension n+1 (coordinate sums zero), D_n in dimension n,
/// the E-family in dimension 8. Representatives are normalized so that the
/// first nonzero coordinate is positive.
pub fn generate(family: Family, rank: u64) -> Result<RootSystem> {
    let vectors = match family {
        Family::A => {
            if rank < 1 {
                return Err(invalid("A_n requires rank >= 1"));
            }
            let dim = (rank + 1) as usize;
            let mut v = Vec::new();
            for i in 0..dim {
                for j in i + 1..dim {
                    let mut x = vec![0i64; dim];
                    x[i] = 2;
                    x[j] = -2;
                    v.push(x);
                }
            }
            v
        }
        Family::D => {
            if rank < 4 {
                return Err(invalid("D_n requires rank >= 4"));
            }
            let dim = rank as usize;
            let mut v = Vec::new();
            for i in 0..dim {
                for j in i + 1..dim {
                    for s in [2i64, -2] {
                        let mut x = vec![0i64; dim];
                        x[i] = 2;
                        x[j] = s;
                        v.push(x);
                    }
                }
            }
            v
        }
        Family::E => {
            if !(6..=8).contains(&rank) {
                return Err(invalid("E-family rank must be 6, 7 or 8"));
            }
            let mut v = generate(Family::D, 8)?.vectors_doubled;
            // Half-integer roots: all coordinates +-1 (doubled from +-1/2),
            // even number of minus signs; first coordinate fixed positive to
            // pick one per +/- pair.
            for mask in 0u32..128 {
                if mask.count_ones() % 2 != 0 {
                    continue;
                }
                let mut x = vec![1i64; 8];
                for b in 0..7 {
                    if mask & (1 << b) != 0 {
                        x[b + 1] = -1;
                    }
                }
                v.push(x);
            }
            if rank <= 7 {
                v.retain(|x| x[6] + x[7] == 0);
            }
            if rank == 6 {
                v.retain(|x| x[5] + x[7] == 0);
            }
            v
        }
    };
    let ambient_dim = vectors[0].len();
    debug_assert!(vectors
        .iter()
        .all(|x| x.iter().map(|c| c * c).sum::<i64>() == 8));
    Ok(RootSystem {
        family,
        rank,
        ambient_dim,
        vectors_doubled: vectors,
    })
}

/// Coherence statistics of a root lattice.
///
/// Two orthogonality-defect conventions are carried side by side:
/// `nu_def` follows the definition (determinant of the lattice, i.e. the
/// square root of the Gram determinant, in the denominator) while
/// `nu_table` puts the Gram determinant itself in the denominator. The two
/// agree exactly when the Gram determinant is 1 (E8). The product measure
/// is reported for both conventions.
#[derive(Debug, Clone)]
pub struct RootStats {
    pub family: Family,
    pub rank: u64,
    pub s_half: u64,
    pub max_coherence: Rat,
    pub avg_coherence: Rat,
    /// Exact determinant of the (undoubled) Gram matrix of a root basis.
    pub det_gram: BigInt,
    /// nu_def^2 = 2^rank / det(Gram), exact.
    pub nu_def_sq: Rat,
    /// nu_table^2 = 2^rank / det(Gram)^2, exact.
    pub nu_table_sq: Rat,
    /// (sHalf * nu_table / (rank * A))^2, exact.
    pub pi_table_sq: Rat,
    pub nu_def: f64,
    pub nu_table: f64,
    pub pi_def: f64,
    pub pi_table: f64,
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Exact Gram determinant of the lattice spanned by the roots, via Hermite
/// reduction of the doubled generators. The doubled basis scales the Gram
/// determinant by 4^rank.
fn det_gram_of_roots(system: &RootSystem) -> Result<BigInt> {
    let basis = linalg::hermite_normal_form(&system.vectors_doubled);
    if basis.len() != system.rank as usize {
        return Err(invalid(format!(
            "root generators span rank {} but expected {}",
            basis.len(),
            system.rank
        )));
    }
    let r = basis.len();
    let mut gram = vec![vec![BigInt::zero(); r]; r];
    for i in 0..r {
        for j in 0..r {
            gram[i][j] = basis[i]
                .iter()
                .zip(&basis[j])
                .map(|(x, y)| x * y)
                .sum::<BigInt>();
        }
    }
    let det_doubled = linalg::bareiss_determinant(&gram);
    let scale = bigint_pow(4, system.rank);
    let (q, rem) = num::Integer::div_rem(&det_doubled, &scale);
    if !rem.is_zero() || !q.is_positive() {
        return Err(invalid("doubled Gram determinant not divisible by 4^rank"));
    }
    Ok(q)
}

fn stats_from(
    system: &RootSystem,
    c: Rat,
    a: Rat,
    det_gram: BigInt,
) -> RootStats {
    let rank = system.rank;
    let s_half = system.vectors_doubled.len() as u64;
    let two_r = bigint_pow(2, rank);
    let nu_def_sq = Rat::new(two_r.clone(), det_gram.clone());
    let nu_table_sq = Rat::new(two_r, &det_gram * &det_gram);
    // Pi = sHalf * nu / (rank * A)
    let scale = rat_int(s_half) / (rat_int(rank) * &a);
    let scale_sq = &scale * &scale;
    let pi_table_sq = &scale_sq * &nu_table_sq;
    let pi_def_sq = &scale_sq * &nu_def_sq;
    let to_f = crate::rational::rat_to_f64;
    RootStats {
        family: system.family,
        rank,
        s_half,
        max_coherence: c,
        avg_coherence: a,
        det_gram,
        nu_def: to_f(&nu_def_sq).sqrt(),
        nu_table: to_f(&nu_table_sq).sqrt(),
        pi_def: to_f(&pi_def_sq).sqrt(),
        pi_table: to_f(&pi_table_sq).sqrt(),
        nu_def_sq,
        nu_table_sq,
        pi_table_sq,
    }
}

/// Statistics computed by exact pairwise scan over the generated roots.
///
/// Also asserts, per vector, that the number of non-orthogonal partners is
/// the same for every root.
pub fn bruteforce_stats(family: Family, rank: u64) -> Result<RootStats> {
    let system = generate(family, rank)?;
    let v = &system.vectors_doubled;
    let m = v.len();
    if m < 2 {
        return Err(invalid("need at least two roots for coherence"));
    }
    // Doubled squared norms are all 8, so cos(x, y) = dot(x, y) / 8.
    let mut max_abs_dot = 0i64;
    let mut max_row_sum = 0i64;
    let mut nonzero_counts = Vec::with_capacity(m);
    for i in 0..m {
        let mut row_sum = 0i64;
        let mut nonzero = 0u64;
        for j in 0..m {
            if i == j {
                continue;
            }
            let d = dot(&v[i], &v[j]).abs();
            debug_assert!(d <= 8, "non-root inner product {d}");
            if d != 0 {
                nonzero += 1;
            }
            if d > max_abs_dot {
                max_abs_dot = d;
            }
            row_sum += d;
        }
        if row_sum > max_row_sum {
            max_row_sum = row_sum;
        }
        nonzero_counts.push(nonzero);
    }
    if nonzero_counts.iter().any(|&c| c != nonzero_counts[0]) {
        return Err(crate::error::Error::Inconsistent(
            "per-root non-orthogonality counts are not constant".into(),
        ));
    }
    let c = rat(max_abs_dot, 8);
    let a = rat(max_row_sum, 8 * (m as i64 - 1));
    let det = det_gram_of_roots(&system)?;
    Ok(stats_from(&system, c, a, det))
}

/// Statistics from the closed forms (sHalf, C, A, Gram determinant) for
/// each family, without scanning root pairs.
pub fn closed_form_stats(family: Family, rank: u64) -> Result<RootStats> {
    let system = generate(family, rank)?;
    let n = rank as i64;
    let (s_half, a, det): (u64, Rat, BigInt) = match family {
        Family::A => (
            (rank * (rank + 1) / 2),
            rat(2, n + 2),
            BigInt::from(n + 1),
        ),
        Family::D => (
            rank * (rank - 1),
            rat(2 * (n - 2), n * n - n - 1),
            BigInt::from(4),
        ),
        Family::E => match rank {
            6 => (36, rat(2, 7), BigInt::from(3)),
            7 => (63, rat(8, 31), BigInt::from(2)),
            _ => (120, rat(28, 119), BigInt::one()),
        },
    };
    debug_assert_eq!(s_half as usize, system.vectors_doubled.len());
    Ok(stats_from(&system, rat(1, 2), a, det))
}

/// The product-measure value printed for E7 in the source table, which is
/// not consistent with that row's own sHalf, A and nu via the defining
/// formula (the formula gives about 197.3). Kept only for documentation
/// and display; never used as a check target.
pub const E7_PRINTED_PI: f64 = 13.138;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_counts() {
        assert_eq!(generate(Family::A, 2).unwrap().vectors_doubled.len(), 3);
        assert_eq!(generate(Family::D, 4).unwrap().vectors_doubled.len(), 12);
        assert_eq!(generate(Family::E, 8).unwrap().vectors_doubled.len(), 120);
        assert_eq!(generate(Family::E, 7).unwrap().vectors_doubled.len(), 63);
        assert_eq!(generate(Family::E, 6).unwrap().vectors_doubled.len(), 36);
        assert!(generate(Family::D, 3).is_err());
        assert!(generate(Family::E, 5).is_err());
    }

    #[test]
    fn generated_structure() {
        let a3 = generate(Family::A, 3).unwrap();
        assert_eq!(a3.ambient_dim, 4);
        for v in &a3.vectors_doubled {
            assert_eq!(v.iter().sum::<i64>(), 0);
        }
        let d5 = generate(Family::D, 5).unwrap();
        for v in &d5.vectors_doubled {
            assert_eq!(v.iter().sum::<i64>() % 4, 0);
        }
        let e7 = generate(Family::E, 7).unwrap();
        for v in &e7.vectors_doubled {
            assert_eq!(v[6] + v[7], 0);
        }
        let e6 = generate(Family::E, 6).unwrap();
        for v in &e6.vectors_doubled {
            assert_eq!(v[6] + v[7], 0);
            assert_eq!(v[5] + v[7], 0);
        }
    }

    #[test]
    fn brute_examples() {
        let a2 = bruteforce_stats(Family::A, 2).unwrap();
        assert_eq!(a2.max_coherence, rat(1, 2));
        assert_eq!(a2.avg_coherence, rat(1, 2));

        let d4 = bruteforce_stats(Family::D, 4).unwrap();
        assert_eq!(d4.avg_coherence, rat(4, 11));

        let e8 = bruteforce_stats(Family::E, 8).unwrap();
        assert_eq!(e8.avg_coherence, rat(28, 119));
        assert_eq!(e8.det_gram, BigInt::one());
        assert_eq!(e8.nu_table_sq, rat(256, 1));
        assert_eq!(e8.pi_table_sq, rat(1020 * 1020, 1));
    }

    #[test]
    fn gram_determinants() {
        for (fam, rank, det) in [
            (Family::A, 2, 3i64),
            (Family::A, 5, 6),
            (Family::D, 4, 4),
            (Family::D, 7, 4),
            (Family::E, 6, 3),
            (Family::E, 7, 2),
            (Family::E, 8, 1),
        ] {
            let s = generate(fam, rank).unwrap();
            assert_eq!(det_gram_of_roots(&s).unwrap(), BigInt::from(det), "{fam:?} {rank}");
        }
    }

    #[test]
    fn closed_examples() {
        let a4 = closed_form_stats(Family::A, 4).unwrap();
        assert_eq!(a4.avg_coherence, rat(1, 3));
        assert_eq!(a4.pi_table_sq, rat(36, 1));

        let e6 = closed_form_stats(Family::E, 6).unwrap();
        assert_eq!(e6.s_half, 36);
        assert_eq!(e6.max_coherence, rat(1, 2));
        assert_eq!(e6.avg_coherence, rat(2, 7));
        assert_eq!(e6.nu_table_sq, rat(64, 9));
        assert_eq!(e6.pi_table_sq, rat(3136, 1));

        let d6 = closed_form_stats(Family::D, 6).unwrap();
        assert_eq!(d6.avg_coherence, rat(8, 29));
        assert_eq!(d6.nu_table_sq, rat(4, 1));
        assert_eq!(d6.pi_table_sq, rat(21025, 16));
    }

    #[test]
    fn brute_matches_closed() {
        let mut cases: Vec<(Family, u64)> = (2..=9).map(|r| (Family::A, r)).collect();
        cases.extend((4..=9).map(|r| (Family::D, r)));
        cases.extend((6..=8).map(|r| (Family::E, r)));
        for (fam, rank) in cases {
            let b = bruteforce_stats(fam, rank).unwrap();
            let c = closed_form_stats(fam, rank).unwrap();
            assert_eq!(b.s_half, c.s_half, "{fam:?} {rank}");
            assert_eq!(b.max_coherence, c.max_coherence, "{fam:?} {rank}");
            assert_eq!(b.avg_coherence, c.avg_coherence, "{fam:?} {rank}");
            assert_eq!(b.det_gram, c.det_gram, "{fam:?} {rank}");
            assert_eq!(b.nu_table_sq, c.nu_table_sq, "{fam:?} {rank}");
            assert_eq!(b.pi_table_sq, c.pi_table_sq, "{fam:?} {rank}");
        }
    }

    #[test]
    fn table_formula_shapes() {
        // A_n: nu^2 = 2^n/(n+1)^2, pi^2 = (n+2)^2 2^(n-4).
        for n in 2..=9i64 {
            let s = closed_form_stats(Family::A, n as u64).unwrap();
            assert_eq!(s.nu_table_sq, Rat::new(BigInt::from(2).pow(n as u32), BigInt::from((n + 1) * (n + 1))));
            let want_pi_sq = rat((n + 2) * (n + 2), 16) * rat_int(2i64.pow(n as u32));
            assert_eq!(s.pi_table_sq, want_pi_sq);
        }
        // D_n: nu^2 = 2^(n-4), pi^2 = ((n-1)(n^2-n-1)/(n-2))^2 2^(n-6).
        for n in 4..=9i64 {
            let s = closed_form_stats(Family::D, n as u64).unwrap();
            assert_eq!(s.nu_table_sq, rat_int(2i64.pow((n - 4) as u32)));
            let base = rat((n - 1) * (n * n - n - 1), n - 2);
            let want = &base * &base * rat(2i64.pow(n as u32), 64);
            assert_eq!(s.pi_table_sq, want);
        }
    }

    #[test]
    fn e7_printed_pi_is_inconsistent() {
        let e7 = closed_form_stats(Family::E, 7).unwrap();
        let formula_pi = crate::rational::rat_to_f64(&e7.pi_table_sq).sqrt();
        assert!((formula_pi - 197.28).abs() < 0.01, "got {formula_pi}");
        assert!((formula_pi - E7_PRINTED_PI).abs() > 100.0);
    }
}
