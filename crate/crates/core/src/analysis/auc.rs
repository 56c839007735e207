//! Area under the ROC curve via the Mann-Whitney statistic.
//!
//! The statistic is accumulated as an integer count of doubled wins (a win
//! is 2, a tie 1), so equal AUCs compare equal bit-for-bit and the
//! first-maximizer rule of the grid search is exact.

use std::cmp::Ordering;

use crate::error::{invalid, Error, Result};
use crate::scalar::Scalar;

/// Doubled Mann-Whitney count and its denominator `2 * P * N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankCount {
    pub doubled_wins: u64,
    pub doubled_pairs: u64,
}

impl RankCount {
    pub fn auc<T: Scalar>(self) -> T {
        T::from_u64(self.doubled_wins).unwrap() / T::from_u64(self.doubled_pairs).unwrap()
    }
}

/// Sorts `order` by score and counts positive-over-negative wins, ties half.
pub fn rank_count<T: Scalar>(scores: &[T], labels: &[bool], order: &mut Vec<usize>) -> Result<RankCount> {
    if scores.len() != labels.len() {
        return invalid(format!("{} scores but {} labels", scores.len(), labels.len()));
    }
    if scores.iter().any(|s| s.is_nan()) {
        return invalid("scores must not be NaN");
    }
    let pos = labels.iter().filter(|&&l| l).count() as u64;
    let neg = labels.len() as u64 - pos;
    if pos == 0 || neg == 0 {
        return Err(Error::DegenerateInput("AUC needs both classes".into()));
    }
    order.clear();
    order.extend(0..scores.len());
    order.sort_unstable_by(|&a, &b| scores[a].partial_cmp(&scores[b]).unwrap_or(Ordering::Equal));

    let mut doubled_wins = 0u64;
    let mut neg_below = 0u64;
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        let (mut p, mut n) = (0u64, 0u64);
        while j < order.len() && scores[order[j]] == scores[order[i]] {
            if labels[order[j]] {
                p += 1;
            } else {
                n += 1;
            }
            j += 1;
        }
        doubled_wins += 2 * p * neg_below + p * n;
        neg_below += n;
        i = j;
    }
    Ok(RankCount { doubled_wins, doubled_pairs: 2 * pos * neg })
}

/// Probability that a random positive outscores a random negative, ties counted half.
pub fn auc_roc<T: Scalar>(scores: &[T], labels: &[bool]) -> Result<T> {
    Ok(rank_count(scores, labels, &mut Vec::new())?.auc())
}

/// Spearman rank correlation with average ranks for ties. Zero when either
/// side is constant.
pub fn spearman<T: Scalar>(x: &[T], y: &[T]) -> Result<T> {
    if x.len() != y.len() || x.len() < 2 {
        return invalid("spearman needs two equal-length series of at least 2 values");
    }
    let rx = average_ranks(x);
    let ry = average_ranks(y);
    let n = T::from_usize_exact(x.len());
    let mx = rx.iter().copied().sum::<T>() / n;
    let my = ry.iter().copied().sum::<T>() / n;
    let (mut sxy, mut sxx, mut syy) = (T::zero(), T::zero(), T::zero());
    for (a, b) in rx.iter().zip(&ry) {
        let (dx, dy) = (*a - mx, *b - my);
        sxy = sxy + dx * dy;
        sxx = sxx + dx * dx;
        syy = syy + dy * dy;
    }
    if sxx == T::zero() || syy == T::zero() {
        return Ok(T::zero());
    }
    Ok(sxy / (sxx * syy).sqrt())
}

fn average_ranks<T: Scalar>(v: &[T]) -> Vec<T> {
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by(|&a, &b| v[a].partial_cmp(&v[b]).unwrap_or(Ordering::Equal));
    let mut ranks = vec![T::zero(); v.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j < order.len() && v[order[j]] == v[order[i]] {
            j += 1;
        }
        // 1-based ranks i+1..=j averaged
        let r = T::from_usize_exact(i + j + 1) / T::lit(2.0);
        for &k in &order[i..j] {
            ranks[k] = r;
        }
        i = j;
    }
    ranks
}
