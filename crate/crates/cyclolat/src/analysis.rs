//! Dimension-indexed tables of cyclotomic lattice statistics, extremum
//! markers, empirical average-order sums, and CSV/JSON export.

use num::{BigInt, One, Zero};
use serde_json::{json, Value};

use crate::cyclo::{self, LatticeStats, StatsOptions};
use crate::error::{invalid, Error, Result};
use crate::hiprec;
use crate::numtheory;
use crate::rational::{parse_fraction, rat_to_f64, render_fraction, Rat};
use crate::roots::RootStats;

/// Per-column extremum flags: the `n` values attaining the minimal C, the
/// minimal A, the maximal nu and the maximal Pi in a dimension table. Ties
/// all get marked. The Pi marker skips rows where Pi is undefined.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Markers {
    pub min_c: Vec<u64>,
    pub min_a: Vec<u64>,
    pub max_nu: Vec<u64>,
    pub max_pi: Vec<u64>,
}

/// All cyclotomic lattices of a fixed rank, ascending in n, with duplicate
/// lattices removed (n = 2m for odd m gives the same lattice as m).
#[derive(Debug)]
pub struct DimensionTable {
    pub d: u64,
    pub rows: Vec<LatticeStats>,
    pub markers: Markers,
}

fn compute_markers(rows: &[LatticeStats]) -> Markers {
    let mut markers = Markers::default();
    if rows.is_empty() {
        return markers;
    }
    let min_c = rows.iter().map(|r| &r.max_coherence).min().unwrap();
    let min_a = rows.iter().map(|r| &r.avg_coherence).min().unwrap();
    let max_nu = rows.iter().map(|r| &r.defect_squared).max().unwrap();
    let max_pi = rows.iter().filter_map(|r| r.pi_squared.as_ref()).max();
    for r in rows {
        let n = r.lattice.n;
        if &r.max_coherence == min_c {
            markers.min_c.push(n);
        }
        if &r.avg_coherence == min_a {
            markers.min_a.push(n);
        }
        if &r.defect_squared == max_nu {
            markers.max_nu.push(n);
        }
        if let (Some(pi), Some(best)) = (r.pi_squared.as_ref(), max_pi) {
            if pi == best {
                markers.max_pi.push(n);
            }
        }
    }
    markers
}

/// Builds the table of all rank-d cyclotomic lattices.
///
/// The row set is the inverse totient preimage of d with every n = 2 (mod
/// 4) dropped: such n have n/2 odd with the same lattice, and n/2 is
/// always present.
pub fn table_for_dimension(d: u64, opts: &StatsOptions) -> Result<DimensionTable> {
    if d == 0 || d % 2 != 0 {
        return Err(invalid(format!("rank must be a positive even integer, got {d}")));
    }
    let mut ns: Vec<u64> = numtheory::inverse_totient(d)
        .into_iter()
        .filter(|&n| n > 2 && n % 4 != 2)
        .collect();
    ns.sort_unstable();
    let rows: Vec<LatticeStats> = ns
        .into_iter()
        .map(|n| cyclo::stats(n, opts))
        .collect::<Result<_>>()?;
    let markers = compute_markers(&rows);
    Ok(DimensionTable { d, rows, markers })
}

/// Empirical sums of C_n and A_n up to N, next to the source's predicted
/// growth rates. The sums are exact rationals (kept unreduced); no
/// pass/fail judgment is attached since the prediction itself is an open
/// question.
#[derive(Debug)]
pub struct AverageOrderReport {
    pub max_n: u64,
    pub sum_c: Rat,
    pub sum_a: Rat,
    /// sum over 3 <= n <= N of 2 ln(n) / n
    pub predicted_c: f64,
    /// sum over 3 <= n <= N of ln(2) ln(n) / n
    pub predicted_a: f64,
    pub ratio_c: f64,
    pub ratio_a: f64,
}

/// Adds a list of fractions exactly by pairwise tree merging, without
/// reducing intermediate results (per-step gcd on huge denominators is the
/// bottleneck, not the multiplies). The result is not reduced.
fn tree_sum(mut terms: Vec<(BigInt, BigInt)>) -> Rat {
    if terms.is_empty() {
        return Rat::zero();
    }
    while terms.len() > 1 {
        let mut next = Vec::with_capacity(terms.len().div_ceil(2));
        let mut it = terms.into_iter();
        while let Some((a, b)) = it.next() {
            match it.next() {
                Some((c, d)) => next.push((&a * &d + &c * &b, b * d)),
                None => next.push((a, b)),
            }
        }
        terms = next;
    }
    let (num, den) = terms.pop().unwrap();
    Rat::new_raw(num, den)
}

/// C_n and A_n for all 3 <= n <= N from sieved tables, summed exactly.
pub fn average_order_report(max_n: u64) -> Result<AverageOrderReport> {
    if max_n < 3 {
        return Err(invalid("N must be at least 3"));
    }
    let spf = numtheory::spf_sieve(max_n)?;
    let mut c_terms = Vec::new();
    let mut a_terms = Vec::new();
    for n in 3..=max_n {
        // smallest odd prime divisor and distinct prime count via the sieve
        let mut m = n;
        let mut omega = 0u32;
        let mut least_odd = 0u64;
        while m > 1 {
            let p = spf[m as usize] as u64;
            omega += 1;
            if p % 2 == 1 && least_odd == 0 {
                least_odd = p;
            }
            while m % p == 0 {
                m /= p;
            }
        }
        if least_odd != 0 {
            c_terms.push((BigInt::one(), BigInt::from(least_odd - 1)));
        }
        let (num, den) = if n % 2 == 1 {
            ((1u64 << omega) - 1, n - 1)
        } else {
            ((1u64 << omega) - 2, n - 2)
        };
        if num != 0 {
            a_terms.push((BigInt::from(num), BigInt::from(den)));
        }
    }
    let sum_c = tree_sum(c_terms);
    let sum_a = tree_sum(a_terms);
    let mut predicted_c = 0.0f64;
    let mut predicted_a = 0.0f64;
    for n in 3..=max_n {
        let t = (n as f64).ln() / n as f64;
        predicted_c += 2.0 * t;
        predicted_a += std::f64::consts::LN_2 * t;
    }
    let ratio_c = rat_to_f64(&sum_c) / predicted_c;
    let ratio_a = rat_to_f64(&sum_a) / predicted_a;
    Ok(AverageOrderReport {
        max_n,
        sum_c,
        sum_a,
        predicted_c,
        predicted_a,
        ratio_c,
        ratio_a,
    })
}

fn rat_json(r: &Rat) -> Value {
    json!({
        "num": r.numer().to_string(),
        "den": r.denom().to_string(),
        "float": rat_to_f64(r),
    })
}

fn rat_from_json(v: &Value) -> Result<Rat> {
    let num = v
        .get("num")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("missing rational num".into()))?;
    let den = v
        .get("den")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("missing rational den".into()))?;
    parse_fraction(&format!("{num}/{den}"))
}

const FLOAT_SIG_DIGITS: usize = 12;

fn row_nu_string(r: &LatticeStats) -> String {
    hiprec::format_sig(&r.defect_float, FLOAT_SIG_DIGITS)
}

fn row_pi_string(r: &LatticeStats) -> String {
    match &r.pi_float {
        Some(pi) => hiprec::format_sig(pi, FLOAT_SIG_DIGITS),
        None => String::new(),
    }
}

/// CSV rendering of lattice stats rows. Rationals are rendered as "p/q",
/// irrational columns as decimals; undefined Pi as an empty field.
pub fn rows_to_csv(rows: &[LatticeStats]) -> String {
    let mut out = String::from("n,phi,sHalf,C,A,nu,Pi\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.lattice.n,
            r.lattice.d,
            r.lattice.s_half,
            render_fraction(&r.max_coherence),
            render_fraction(&r.avg_coherence),
            row_nu_string(r),
            row_pi_string(r),
        ));
    }
    out
}

/// CSV rendering of a dimension table.
pub fn table_to_csv(table: &DimensionTable) -> String {
    rows_to_csv(&table.rows)
}

/// JSON object for one lattice stats row; exact rationals carry num/den
/// strings next to a float, Pi is null when undefined.
pub fn stats_json_value(r: &LatticeStats) -> Value {
    json!({
        "n": r.lattice.n,
        "phi": r.lattice.d,
        "sHalf": r.lattice.s_half,
        "C": rat_json(&r.max_coherence),
        "A": rat_json(&r.avg_coherence),
        "nuSquared": rat_json(&r.defect_squared),
        "nu": hiprec::to_f64(&r.defect_float),
        "piSquared": r.pi_squared.as_ref().map(rat_json).unwrap_or(Value::Null),
        "Pi": r.pi_float.as_ref().map(|x| json!(hiprec::to_f64(x))).unwrap_or(Value::Null),
    })
}

/// JSON rendering of a dimension table.
pub fn table_to_json(table: &DimensionTable) -> String {
    let rows: Vec<Value> = table.rows.iter().map(stats_json_value).collect();
    let v = json!({
        "dimension": table.d,
        "rows": rows,
        "markers": {
            "minC": table.markers.min_c,
            "minA": table.markers.min_a,
            "maxNu": table.markers.max_nu,
            "maxPi": table.markers.max_pi,
        },
    });
    serde_json::to_string_pretty(&v).expect("static json")
}

/// Parsed form of an exported table row; exact rational fields only.
#[derive(Debug, PartialEq, Eq)]
pub struct ParsedRow {
    pub n: u64,
    pub c: Rat,
    pub a: Rat,
    pub nu_squared: Rat,
    pub pi_squared: Option<Rat>,
}

/// Parses the JSON produced by [`table_to_json`], recovering the exact
/// rational fields (round-trip check support).
pub fn table_from_json(s: &str) -> Result<(u64, Vec<ParsedRow>, Markers)> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    let d = v
        .get("dimension")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("missing dimension".into()))?;
    let rows = v
        .get("rows")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing rows".into()))?;
    let mut parsed = Vec::with_capacity(rows.len());
    for r in rows {
        let n = r
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("missing n".into()))?;
        let pi_squared = match r.get("piSquared") {
            None | Some(Value::Null) => None,
            Some(x) => Some(rat_from_json(x)?),
        };
        parsed.push(ParsedRow {
            n,
            c: rat_from_json(r.get("C").ok_or_else(|| Error::Parse("missing C".into()))?)?,
            a: rat_from_json(r.get("A").ok_or_else(|| Error::Parse("missing A".into()))?)?,
            nu_squared: rat_from_json(
                r.get("nuSquared")
                    .ok_or_else(|| Error::Parse("missing nuSquared".into()))?,
            )?,
            pi_squared,
        });
    }
    let marker_list = |key: &str| -> Result<Vec<u64>> {
        v.get("markers")
            .and_then(|m| m.get(key))
            .and_then(Value::as_array)
            .map(|a| a.iter().filter_map(Value::as_u64).collect())
            .ok_or_else(|| Error::Parse(format!("missing marker list {key}")))
    };
    let markers = Markers {
        min_c: marker_list("minC")?,
        min_a: marker_list("minA")?,
        max_nu: marker_list("maxNu")?,
        max_pi: marker_list("maxPi")?,
    };
    Ok((d, parsed, markers))
}

/// CSV rendering of root lattice statistics, carrying both defect
/// conventions.
pub fn roots_to_csv(stats: &[RootStats]) -> String {
    let mut out = String::from("family,rank,sHalf,C,A,nuDef,nuTable,PiDef,PiTable\n");
    for s in stats {
        out.push_str(&format!(
            "{},{},{},{},{},{:.6},{:.6},{:.6},{:.6}\n",
            s.family.label(s.rank),
            s.rank,
            s.s_half,
            render_fraction(&s.max_coherence),
            render_fraction(&s.avg_coherence),
            s.nu_def,
            s.nu_table,
            s.pi_def,
            s.pi_table,
        ));
    }
    out
}
