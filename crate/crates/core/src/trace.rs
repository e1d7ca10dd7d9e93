//! Lookup-trace data model and per-table statistics.
//!
//! A trace is an ordered sequence of lookup queries, each addressing one
//! embedding table with a non-empty list of vector ids. Ids are table-local
//! and dense: `0 <= id < n` where `n` is the table's vector count. Duplicate
//! ids inside one query are permitted and each occurrence counts as one
//! lookup.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Identifier of one embedding table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TableId(pub u32);

/// Table-local index of one embedding vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VectorId(pub u32);

/// One lookup query: a non-empty list of vector ids within a single table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    pub table: TableId,
    pub ids: Vec<VectorId>,
}

impl Query {
    pub fn new(table: TableId, ids: Vec<VectorId>) -> Result<Self> {
        if ids.is_empty() {
            return Err(Error::EmptyQuery);
        }
        Ok(Self { table, ids })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }
}

/// An ordered sequence of queries plus the vector count of every table.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Trace {
    queries: Vec<Query>,
    tables: BTreeMap<TableId, u32>,
}

impl Trace {
    pub fn new(tables: BTreeMap<TableId, u32>) -> Self {
        Self { queries: Vec::new(), tables }
    }

    /// Build a trace from parts, validating every id against its table.
    pub fn from_parts(tables: BTreeMap<TableId, u32>, queries: Vec<Query>) -> Result<Self> {
        let mut trace = Self::new(tables);
        for q in queries {
            trace.push(q)?;
        }
        Ok(trace)
    }

    /// Append a query, validating its table and ids.
    pub fn push(&mut self, query: Query) -> Result<()> {
        if query.ids.is_empty() {
            return Err(Error::EmptyQuery);
        }
        let n = *self
            .tables
            .get(&query.table)
            .ok_or(Error::UnknownTable(query.table.0))?;
        for id in &query.ids {
            if id.0 >= n {
                return Err(Error::IdOutOfRange { id: id.0, n });
            }
        }
        self.queries.push(query);
        Ok(())
    }

    pub fn queries(&self) -> &[Query] {
        &self.queries
    }

    pub fn tables(&self) -> &BTreeMap<TableId, u32> {
        &self.tables
    }

    pub fn vector_count(&self, table: TableId) -> Result<u32> {
        self.tables
            .get(&table)
            .copied()
            .ok_or(Error::UnknownTable(table.0))
    }

    pub fn total_lookups(&self) -> u64 {
        self.queries.iter().map(|q| q.ids.len() as u64).sum()
    }

    pub fn table_lookups(&self, table: TableId) -> u64 {
        self.queries_for(table).map(|q| q.ids.len() as u64).sum()
    }

    /// Queries addressing `table`, in arrival order.
    pub fn queries_for(&self, table: TableId) -> impl Iterator<Item = &Query> {
        self.queries.iter().filter(move |q| q.table == table)
    }

    /// Flattened lookup sequence of one table, in arrival order.
    pub fn lookups_for(&self, table: TableId) -> Vec<VectorId> {
        let mut out = Vec::new();
        for q in self.queries_for(table) {
            out.extend_from_slice(&q.ids);
        }
        out
    }
}

/// Split a trace into a training prefix and an evaluation remainder.
///
/// The first `ceil(fraction * queries)` queries go to the training trace;
/// order is preserved and the halves are disjoint. An empty evaluation half
/// is legal.
pub fn split(trace: &Trace, fraction: f64) -> Result<(Trace, Trace)> {
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(Error::InvalidFraction(fraction));
    }
    if trace.queries.is_empty() {
        return Err(Error::EmptyTrace);
    }
    let cut = libm::ceil(fraction * trace.queries.len() as f64) as usize;
    let cut = cut.min(trace.queries.len());
    let train = Trace {
        queries: trace.queries[..cut].to_vec(),
        tables: trace.tables.clone(),
    };
    let eval = Trace {
        queries: trace.queries[cut..].to_vec(),
        tables: trace.tables.clone(),
    };
    Ok((train, eval))
}

/// One histogram bucket: access counts in `[lo, hi]` and how many vectors
/// fall there.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HistogramBucket {
    pub lo: u64,
    pub hi: u64,
    pub count: u64,
}

/// Per-vector access-count histogram with decade buckets plus an explicit
/// zero-access bucket.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    pub buckets: Vec<HistogramBucket>,
}

/// Histogram of per-vector access counts for one table.
///
/// Buckets are the zero bucket `[0, 0]` followed by decades `[1, 9]`,
/// `[10, 99]`, ... up to the maximum observed count.
pub fn access_histogram(trace: &Trace, table: TableId) -> Result<Histogram> {
    let n = trace.vector_count(table)?;
    let mut counts = vec![0u64; n as usize];
    for q in trace.queries_for(table) {
        for id in &q.ids {
            counts[id.0 as usize] += 1;
        }
    }
    let max = counts.iter().copied().max().unwrap_or(0);
    let mut buckets = vec![HistogramBucket { lo: 0, hi: 0, count: 0 }];
    let mut lo = 1u64;
    while lo <= max {
        let hi = lo.saturating_mul(10) - 1;
        buckets.push(HistogramBucket { lo, hi, count: 0 });
        lo = hi + 1;
    }
    for &c in &counts {
        let idx = if c == 0 {
            0
        } else {
            // decade of c: number of digits
            let mut d = 0;
            let mut x = c;
            while x > 0 {
                d += 1;
                x /= 10;
            }
            d
        };
        buckets[idx as usize].count += 1;
    }
    Ok(Histogram { buckets })
}

/// Fraction of a table's lookups that touch an id for the first time.
pub fn compulsory_miss_rate(trace: &Trace, table: TableId) -> Result<f64> {
    let n = trace.vector_count(table)?;
    let mut seen = vec![false; n as usize];
    let mut distinct = 0u64;
    let mut lookups = 0u64;
    for q in trace.queries_for(table) {
        for id in &q.ids {
            lookups += 1;
            if !seen[id.0 as usize] {
                seen[id.0 as usize] = true;
                distinct += 1;
            }
        }
    }
    if lookups == 0 {
        return Err(Error::NoLookups(table.0));
    }
    Ok(distinct as f64 / lookups as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(table: u32, n: u32, lists: &[&[u32]]) -> Trace {
        let mut tables = BTreeMap::new();
        tables.insert(TableId(table), n);
        let mut trace = Trace::new(tables);
        for ids in lists {
            trace
                .push(Query {
                    table: TableId(table),
                    ids: ids.iter().map(|&i| VectorId(i)).collect(),
                })
                .unwrap();
        }
        trace
    }

    #[test]
    fn push_validates_ids() {
        let mut trace = t(0, 8, &[]);
        let err = trace
            .push(Query { table: TableId(0), ids: vec![VectorId(9)] })
            .unwrap_err();
        assert_eq!(err, Error::IdOutOfRange { id: 9, n: 8 });
        let err = trace
            .push(Query { table: TableId(1), ids: vec![VectorId(0)] })
            .unwrap_err();
        assert_eq!(err, Error::UnknownTable(1));
    }

    #[test]
    fn split_takes_ceiling_prefix() {
        let trace = t(0, 4, &[&[0], &[1], &[2], &[3], &[0], &[1], &[2], &[3], &[0], &[1]]);
        let (train, eval) = split(&trace, 0.8).unwrap();
        assert_eq!(train.queries().len(), 8);
        assert_eq!(eval.queries().len(), 2);
        assert_eq!(train.queries()[0], trace.queries()[0]);
        assert_eq!(eval.queries()[1], trace.queries()[9]);
    }

    #[test]
    fn split_single_query_keeps_train_nonempty() {
        let trace = t(0, 4, &[&[0]]);
        let (train, eval) = split(&trace, 0.5).unwrap();
        assert_eq!(train.queries().len(), 1);
        assert!(eval.queries().is_empty());
    }

    #[test]
    fn split_rejects_bad_fraction() {
        let trace = t(0, 4, &[&[0]]);
        assert_eq!(split(&trace, 0.0).unwrap_err(), Error::InvalidFraction(0.0));
        assert_eq!(split(&trace, 1.0).unwrap_err(), Error::InvalidFraction(1.0));
    }

    #[test]
    fn histogram_buckets_by_decade() {
        // v0 x3, v1 x1, n=4 -> zero bucket 2, decade [1,9] 2
        let trace = t(0, 4, &[&[0, 1, 0], &[0]]);
        let h = access_histogram(&trace, TableId(0)).unwrap();
        assert_eq!(
            h.buckets,
            vec![
                HistogramBucket { lo: 0, hi: 0, count: 2 },
                HistogramBucket { lo: 1, hi: 9, count: 2 },
            ]
        );
    }

    #[test]
    fn histogram_of_empty_trace_is_all_zero_bucket() {
        let trace = t(0, 4, &[]);
        let h = access_histogram(&trace, TableId(0)).unwrap();
        assert_eq!(h.buckets, vec![HistogramBucket { lo: 0, hi: 0, count: 4 }]);
    }

    #[test]
    fn histogram_bucket_counts_conserve_vectors() {
        let big = [0u32; 150];
        let trace = t(0, 64, &[&big[..], &[1, 2, 3, 1]]);
        let h = access_histogram(&trace, TableId(0)).unwrap();
        let total: u64 = h.buckets.iter().map(|b| b.count).sum();
        assert_eq!(total, 64);
        // 150 accesses of v0 land in [100, 999]
        let b = h.buckets.iter().find(|b| b.lo == 100).unwrap();
        assert_eq!((b.hi, b.count), (999, 1));
    }

    #[test]
    fn compulsory_rate_counts_distinct_over_lookups() {
        let trace = t(0, 4, &[&[0, 1], &[0, 2]]);
        assert_eq!(compulsory_miss_rate(&trace, TableId(0)).unwrap(), 0.75);
    }

    #[test]
    fn compulsory_rate_is_one_when_all_distinct() {
        let trace = t(0, 4, &[&[0, 1], &[2, 3]]);
        assert_eq!(compulsory_miss_rate(&trace, TableId(0)).unwrap(), 1.0);
    }

    #[test]
    fn compulsory_rate_needs_lookups() {
        let trace = t(0, 4, &[]);
        assert_eq!(
            compulsory_miss_rate(&trace, TableId(0)).unwrap_err(),
            Error::NoLookups(0)
        );
    }
}
