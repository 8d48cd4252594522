//! Pearson, Spearman, and Kendall correlation.
//!
//! Every coefficient is `Option<f64>`: `None` means undefined, which happens
//! when either variable is constant.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Two equally long, finite samples with at least two observations.
#[derive(Debug, Clone, Copy)]
pub struct PairedSample<'a> {
    a: &'a [f64],
    b: &'a [f64],
}

impl<'a> PairedSample<'a> {
    pub fn new(a: &'a [f64], b: &'a [f64]) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::LengthMismatch {
                expected: a.len(),
                actual: b.len(),
            });
        }
        if a.len() < 2 {
            return Err(Error::InvalidParameter(format!(
                "correlation needs at least 2 observations, got {}",
                a.len()
            )));
        }
        if let Some(x) = a.iter().chain(b).find(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "non-finite observation {x}"
            )));
        }
        Ok(PairedSample { a, b })
    }

    pub fn a(&self) -> &'a [f64] {
        self.a
    }

    pub fn b(&self) -> &'a [f64] {
        self.b
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    fn has_constant_side(&self) -> bool {
        is_constant(self.a) || is_constant(self.b)
    }
}

fn is_constant(xs: &[f64]) -> bool {
    xs.iter().all(|&x| x == xs[0])
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Product-moment correlation, computed from centered sums.
pub fn pearson(x: &PairedSample<'_>) -> Option<f64> {
    if x.has_constant_side() {
        return None;
    }
    let (ma, mb) = (mean(x.a), mean(x.b));
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (&a, &b) in x.a.iter().zip(x.b) {
        let (da, db) = (a - ma, b - mb);
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    Some((sab / (saa.sqrt() * sbb.sqrt())).clamp(-1.0, 1.0))
}

/// Fractional ranks starting at 1; tied values share the mean of their positions.
pub fn rank(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        // Positions start+1 ..= end, averaged.
        let shared = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = shared;
        }
        start = end;
    }
    ranks
}

/// Pearson correlation of the fractional ranks.
pub fn spearman(x: &PairedSample<'_>) -> Option<f64> {
    if x.has_constant_side() {
        return None;
    }
    let (ra, rb) = (rank(x.a), rank(x.b));
    pearson(&PairedSample { a: &ra, b: &rb })
}

/// `1 − 6Σd²/(s(s²−1))`, which equals [`spearman`] only when neither sample has ties.
pub fn spearman_rank_difference(x: &PairedSample<'_>) -> f64 {
    let (ra, rb) = (rank(x.a), rank(x.b));
    let d2: f64 = ra.iter().zip(&rb).map(|(p, q)| (p - q) * (p - q)).sum();
    let s = x.len() as f64;
    1.0 - 6.0 * d2 / (s * (s * s - 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KendallVariant {
    /// `(s_c − s_d) / (s(s−1)/2)`, no tie correction.
    TauA,
    /// Denominator `sqrt((n0 − n1)(n0 − n2))`, correcting for ties in either variable.
    #[default]
    TauB,
}

impl FromStr for KendallVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "tau_a" | "a" => Ok(KendallVariant::TauA),
            "tau_b" | "b" => Ok(KendallVariant::TauB),
            other => Err(Error::InvalidParameter(format!(
                "unknown Kendall variant {other:?}"
            ))),
        }
    }
}

impl fmt::Display for KendallVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KendallVariant::TauA => "tau_a",
            KendallVariant::TauB => "tau_b",
        })
    }
}

/// Pair statistics behind Kendall's tau.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairCounts {
    /// `s(s−1)/2`.
    pub pairs: u64,
    /// Pairs tied in `a` (including those tied in both).
    pub tied_a: u64,
    /// Pairs tied in `b` (including those tied in both).
    pub tied_b: u64,
    pub tied_both: u64,
    pub discordant: u64,
}

impl PairCounts {
    pub fn concordant(&self) -> u64 {
        self.pairs + self.tied_both - self.tied_a - self.tied_b - self.discordant
    }

    /// `s_c − s_d`.
    pub fn score(&self) -> i64 {
        self.concordant() as i64 - self.discordant as i64
    }
}

fn tied_pairs_in_runs<T>(sorted: &[T], same: impl Fn(&T, &T) -> bool) -> u64 {
    let mut total = 0u64;
    let mut run = 1u64;
    for w in sorted.windows(2) {
        if same(&w[0], &w[1]) {
            run += 1;
        } else {
            total += run * (run - 1) / 2;
            run = 1;
        }
    }
    total + run * (run - 1) / 2
}

/// Sorts `values` ascending and returns the number of strict inversions.
fn merge_sort_inversions(values: &mut Vec<f64>) -> u64 {
    let n = values.len();
    let mut buf = vec![0.0; n];
    let mut swaps = 0u64;
    let mut width = 1;
    while width < n {
        let mut lo = 0;
        while lo < n {
            let mid = (lo + width).min(n);
            let hi = (lo + 2 * width).min(n);
            let (mut i, mut j, mut k) = (lo, mid, lo);
            while i < mid && j < hi {
                if values[j] < values[i] {
                    buf[k] = values[j];
                    swaps += (mid - i) as u64;
                    j += 1;
                } else {
                    buf[k] = values[i];
                    i += 1;
                }
                k += 1;
            }
            buf[k..k + (mid - i)].copy_from_slice(&values[i..mid]);
            k += mid - i;
            buf[k..k + (hi - j)].copy_from_slice(&values[j..hi]);
            lo = hi;
        }
        std::mem::swap(values, &mut buf);
        width *= 2;
    }
    swaps
}

/// Concordance counts in `O(s log s)` (Knight's merge-sort method).
pub fn pair_counts(x: &PairedSample<'_>) -> PairCounts {
    let s = x.len() as u64;
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&i, &j| {
        x.a[i]
            .total_cmp(&x.a[j])
            .then_with(|| x.b[i].total_cmp(&x.b[j]))
    });
    let tied_a = tied_pairs_in_runs(&order, |&i, &j| x.a[i] == x.a[j]);
    let tied_both = tied_pairs_in_runs(&order, |&i, &j| x.a[i] == x.a[j] && x.b[i] == x.b[j]);

    let mut bs: Vec<f64> = order.iter().map(|&i| x.b[i]).collect();
    let discordant = merge_sort_inversions(&mut bs);
    let tied_b = tied_pairs_in_runs(&bs, |p, q| p == q);

    PairCounts {
        pairs: s * (s - 1) / 2,
        tied_a,
        tied_b,
        tied_both,
        discordant,
    }
}

pub fn kendall(x: &PairedSample<'_>, variant: KendallVariant) -> Option<f64> {
    if x.has_constant_side() {
        return None;
    }
    let c = pair_counts(x);
    let score = c.score() as f64;
    let tau = match variant {
        KendallVariant::TauA => score / c.pairs as f64,
        KendallVariant::TauB => {
            let left = (c.pairs - c.tied_a) as f64;
            let right = (c.pairs - c.tied_b) as f64;
            score / (left.sqrt() * right.sqrt())
        }
    };
    Some(tau.clamp(-1.0, 1.0))
}

/// The four coefficients reported for one pair of measures.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Coefficients {
    pub pearson: Option<f64>,
    pub spearman: Option<f64>,
    pub kendall_b: Option<f64>,
    pub kendall_a: Option<f64>,
}

impl Coefficients {
    pub fn compute(a: &[f64], b: &[f64]) -> Result<Self> {
        let x = PairedSample::new(a, b)?;
        Ok(Coefficients {
            pearson: pearson(&x),
            spearman: spearman(&x),
            kendall_b: kendall(&x, KendallVariant::TauB),
            kendall_a: kendall(&x, KendallVariant::TauA),
        })
    }

    pub fn kendall(&self, variant: KendallVariant) -> Option<f64> {
        match variant {
            KendallVariant::TauA => self.kendall_a,
            KendallVariant::TauB => self.kendall_b,
        }
    }

    /// Field-wise mean over repetitions. A field that is undefined in any
    /// repetition is undefined in the mean.
    pub fn mean(items: &[Coefficients]) -> Coefficients {
        fn avg(items: &[Coefficients], get: impl Fn(&Coefficients) -> Option<f64>) -> Option<f64> {
            if items.is_empty() {
                return None;
            }
            let mut total = 0.0;
            for c in items {
                total += get(c)?;
            }
            Some(total / items.len() as f64)
        }
        Coefficients {
            pearson: avg(items, |c| c.pearson),
            spearman: avg(items, |c| c.spearman),
            kendall_b: avg(items, |c| c.kendall_b),
            kendall_a: avg(items, |c| c.kendall_a),
        }
    }
}

/// Coefficients for every compared pair of measures on one network.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationReport {
    pub network_id: String,
    pub size: usize,
    /// `((measure_x, measure_y), coefficients)` in report order.
    pub pairs: Vec<((String, String), Coefficients)>,
}

impl CorrelationReport {
    pub fn get(&self, x: &str, y: &str) -> Option<&Coefficients> {
        self.pairs
            .iter()
            .find(|((p, q), _)| p == x && q == y)
            .map(|(_, c)| c)
    }
}

/// `"%.6f"` or the literal `undefined`.
pub fn format_coefficient(c: Option<f64>) -> String {
    match c {
        Some(x) => format!("{x:.6}"),
        None => "undefined".to_string(),
    }
}
