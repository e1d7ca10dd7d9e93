//! LRU stack distances and exact hit-rate curves.
//!
//! The stack distance of a lookup is the rank of its id in an LRU list over
//! all prior lookups (1 = most recent); first-ever references are compulsory.
//! Distances are computed with a Fenwick tree over last-access timestamps in
//! O(log n) per lookup; a naive O(n^2) re-scan lives in the test code as the
//! independent oracle.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::trace::VectorId;
use crate::{Error, Result};

/// Stack distance of one lookup.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StackDistance {
    /// First-ever reference to the id; a miss at any cache size.
    Compulsory,
    /// Rank of the id in the LRU list at reference time (1 = top).
    Finite(u32),
}

/// Per-lookup stack distances, aligned with one table's flattened lookups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StackDistanceSeries {
    distances: Vec<StackDistance>,
}

impl StackDistanceSeries {
    pub fn distances(&self) -> &[StackDistance] {
        &self.distances
    }

    pub fn len(&self) -> usize {
        self.distances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.distances.is_empty()
    }

    pub fn compulsory_count(&self) -> u64 {
        self.distances
            .iter()
            .filter(|d| matches!(d, StackDistance::Compulsory))
            .count() as u64
    }

    /// Lookups that would miss in an LRU cache of `size` vectors:
    /// compulsory references plus reuses at distance greater than `size`.
    pub fn miss_count(&self, size: u64) -> u64 {
        self.distances
            .iter()
            .filter(|d| match d {
                StackDistance::Compulsory => true,
                StackDistance::Finite(x) => *x as u64 > size,
            })
            .count() as u64
    }
}

struct Fenwick {
    tree: Vec<u32>,
}

impl Fenwick {
    fn new(len: usize) -> Self {
        Self { tree: vec![0; len + 1] }
    }

    fn add(&mut self, mut i: usize, delta: i32) {
        while i < self.tree.len() {
            self.tree[i] = (self.tree[i] as i64 + delta as i64) as u32;
            i += i & i.wrapping_neg();
        }
    }

    /// Sum of positions 1..=i.
    fn prefix(&self, mut i: usize) -> u32 {
        let mut s = 0;
        while i > 0 {
            s += self.tree[i];
            i -= i & i.wrapping_neg();
        }
        s
    }
}

/// Stack distance of every lookup in order.
///
/// Maintains one bit per distinct id at its last-access timestamp; the rank
/// of a re-referenced id is the count of ids touched more recently, plus one.
pub fn stack_distances(lookups: &[VectorId]) -> StackDistanceSeries {
    let mut distances = Vec::with_capacity(lookups.len());
    let mut fenwick = Fenwick::new(lookups.len());
    let mut last: BTreeMap<u32, usize> = BTreeMap::new();
    for (t, id) in lookups.iter().enumerate() {
        let now = t + 1; // timestamps are 1-based
        match last.insert(id.0, now) {
            None => distances.push(StackDistance::Compulsory),
            Some(prev) => {
                let more_recent = fenwick.prefix(now - 1) - fenwick.prefix(prev);
                distances.push(StackDistance::Finite(more_recent + 1));
                fenwick.add(prev, -1);
            }
        }
        fenwick.add(now, 1);
    }
    StackDistanceSeries { distances }
}

/// One point of a hit-rate curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub size: u64,
    pub hit_rate: f64,
}

/// Hit rate as a function of cache size in vectors; non-decreasing in size.
#[derive(Debug, Clone, PartialEq)]
pub struct HitRateCurve {
    pub points: Vec<CurvePoint>,
}

/// Exact hit-rate curve from a stack distance series.
///
/// `hit_rate(s)` is the fraction of lookups with finite distance <= s.
pub fn hit_rate_curve(series: &StackDistanceSeries, sizes: &[u64]) -> Result<HitRateCurve> {
    if series.is_empty() {
        return Err(Error::EmptySeries);
    }
    if sizes.is_empty() || sizes[0] == 0 || sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidSizes);
    }
    let mut finite: Vec<u32> = series
        .distances
        .iter()
        .filter_map(|d| match d {
            StackDistance::Finite(x) => Some(*x),
            StackDistance::Compulsory => None,
        })
        .collect();
    finite.sort_unstable();
    let total = series.len() as f64;
    let points = sizes
        .iter()
        .map(|&s| {
            let hits = finite.partition_point(|&d| d as u64 <= s);
            CurvePoint { size: s, hit_rate: hits as f64 / total }
        })
        .collect();
    Ok(HitRateCurve { points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;

    /// O(n^2) reference: walk an explicit most-recent-first list.
    fn naive_stack_distances(lookups: &[VectorId]) -> Vec<StackDistance> {
        let mut lru: Vec<u32> = Vec::new();
        let mut out = Vec::with_capacity(lookups.len());
        for id in lookups {
            match lru.iter().position(|&x| x == id.0) {
                None => {
                    out.push(StackDistance::Compulsory);
                    lru.insert(0, id.0);
                }
                Some(pos) => {
                    out.push(StackDistance::Finite(pos as u32 + 1));
                    lru.remove(pos);
                    lru.insert(0, id.0);
                }
            }
        }
        out
    }

    fn ids(raw: &[u32]) -> Vec<VectorId> {
        raw.iter().map(|&i| VectorId(i)).collect()
    }

    #[test]
    fn two_element_queue() {
        let s = stack_distances(&ids(&[0, 1, 0]));
        assert_eq!(
            s.distances(),
            &[
                StackDistance::Compulsory,
                StackDistance::Compulsory,
                StackDistance::Finite(2)
            ]
        );
    }

    #[test]
    fn immediate_reuse_has_distance_one() {
        let s = stack_distances(&ids(&[5, 5]));
        assert_eq!(
            s.distances(),
            &[StackDistance::Compulsory, StackDistance::Finite(1)]
        );
    }

    #[test]
    fn matches_naive_oracle_on_random_sequence() {
        let mut rng = StdRng::seed_from_u64(99);
        let lookups: Vec<VectorId> =
            (0..1000).map(|_| VectorId(rng.gen_range(0..50))).collect();
        let fast = stack_distances(&lookups);
        assert_eq!(fast.distances(), naive_stack_distances(&lookups).as_slice());
    }

    #[test]
    fn matches_naive_oracle_on_larger_alphabet() {
        let mut rng = StdRng::seed_from_u64(7);
        for trial in 0..10 {
            let n = rng.gen_range(2..400);
            let lookups: Vec<VectorId> =
                (0..2000).map(|_| VectorId(rng.gen_range(0..n))).collect();
            let fast = stack_distances(&lookups);
            assert_eq!(
                fast.distances(),
                naive_stack_distances(&lookups).as_slice(),
                "trial {trial}"
            );
        }
    }

    #[test]
    fn curve_from_worked_example() {
        let s = stack_distances(&ids(&[0, 1, 0]));
        let c = hit_rate_curve(&s, &[1, 2]).unwrap();
        assert_eq!(c.points[0], CurvePoint { size: 1, hit_rate: 0.0 });
        assert_eq!(c.points[1], CurvePoint { size: 2, hit_rate: 1.0 / 3.0 });
    }

    #[test]
    fn curve_is_monotone_and_saturates_at_compulsory_rate() {
        let mut rng = StdRng::seed_from_u64(3);
        let lookups: Vec<VectorId> =
            (0..5000).map(|_| VectorId(rng.gen_range(0..200))).collect();
        let s = stack_distances(&lookups);
        let sizes: Vec<u64> = (1..=200).collect();
        let c = hit_rate_curve(&s, &sizes).unwrap();
        for w in c.points.windows(2) {
            assert!(w[0].hit_rate <= w[1].hit_rate);
        }
        let distinct = 200u64;
        let full = hit_rate_curve(&s, &[distinct]).unwrap().points[0].hit_rate;
        let compulsory = s.compulsory_count() as f64 / s.len() as f64;
        assert!((1.0 - full - compulsory).abs() < 1e-12);
    }

    #[test]
    fn curve_rejects_bad_arguments() {
        let s = stack_distances(&ids(&[]));
        assert_eq!(hit_rate_curve(&s, &[1]).unwrap_err(), Error::EmptySeries);
        let s = stack_distances(&ids(&[0]));
        assert_eq!(hit_rate_curve(&s, &[]).unwrap_err(), Error::InvalidSizes);
        assert_eq!(hit_rate_curve(&s, &[2, 2]).unwrap_err(), Error::InvalidSizes);
        assert_eq!(hit_rate_curve(&s, &[0, 1]).unwrap_err(), Error::InvalidSizes);
    }
}
