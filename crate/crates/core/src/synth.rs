//! Synthetic workload generator with planted co-access structure.
//!
//! Each table's id space is carved into latent groups (scattered over the id
//! space by a seeded shuffle, so no layout can recover them by id order
//! alone). Queries pick a group by a Zipf draw, then sample ids from inside
//! it; embeddings are drawn as group centroid plus isotropic jitter so the
//! groups are also Euclidean clusters. Generation is a pure function of
//! (spec, seed).

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::trace::{Query, TableId, Trace, VectorId};
use crate::util::{normal, rand01, shuffle, uniform_u32};
use crate::{Error, Result};

/// Query length distribution: `min + Binomial(max - min, p)` with `p` chosen
/// so the mean is exact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LengthSpec {
    pub mean: f64,
    pub min: u32,
    pub max: u32,
}

/// Parameters of the synthetic workload.
#[derive(Debug, Clone, PartialEq)]
pub struct WorkloadSpec {
    /// Number of tables; each gets its own groups, queries and embeddings.
    pub tables: u32,
    /// Vectors per table.
    pub vectors_per_table: u32,
    /// Embedding dimension.
    pub dim: u32,
    /// Latent group count per table.
    pub groups: u32,
    /// Vectors per latent group; `groups * group_size <= vectors_per_table`.
    pub group_size: u32,
    /// Zipf skew over groups; 0 means uniform.
    pub zipf_alpha: f64,
    pub query_len: LengthSpec,
    /// Queries generated per table.
    pub num_queries: u64,
    /// Probability that a lookup escapes its group to a uniform random id.
    pub noise: f64,
}

impl WorkloadSpec {
    pub fn validate(&self) -> Result<()> {
        let err = |m| Err(Error::InvalidSpec(m));
        if self.tables == 0 {
            return err("tables must be >= 1");
        }
        if self.vectors_per_table == 0 {
            return err("vectors_per_table must be >= 1");
        }
        if self.dim == 0 {
            return err("dim must be >= 1");
        }
        if self.groups == 0 || self.group_size == 0 {
            return err("groups and group_size must be >= 1");
        }
        if self.groups as u64 * self.group_size as u64 > self.vectors_per_table as u64 {
            return err("groups * group_size exceeds vectors_per_table");
        }
        if self.zipf_alpha < 0.0 || !self.zipf_alpha.is_finite() {
            return err("zipf_alpha must be finite and >= 0");
        }
        let l = &self.query_len;
        if l.min == 0 {
            return err("query_len.min must be >= 1");
        }
        if !(l.min as f64 <= l.mean && l.mean <= l.max as f64) {
            return err("query_len must satisfy min <= mean <= max");
        }
        if !(0.0..=1.0).contains(&self.noise) {
            return err("noise must lie in [0, 1]");
        }
        Ok(())
    }
}

/// Dense n x d matrix of embedding values, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingMatrix {
    pub n: u32,
    pub dim: u32,
    pub values: Vec<f32>,
}

impl EmbeddingMatrix {
    pub fn new(n: u32, dim: u32, values: Vec<f32>) -> Result<Self> {
        if dim == 0 || values.len() != n as usize * dim as usize {
            return Err(Error::InvalidSpec("embedding matrix shape mismatch"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidSpec("embedding values must be finite"));
        }
        Ok(Self { n, dim, values })
    }

    pub fn row(&self, id: u32) -> &[f32] {
        let d = self.dim as usize;
        &self.values[id as usize * d..(id as usize + 1) * d]
    }

    /// Submatrix of the given rows, in the given order.
    pub fn gather(&self, ids: &[u32]) -> EmbeddingMatrix {
        let d = self.dim as usize;
        let mut values = Vec::with_capacity(ids.len() * d);
        for &id in ids {
            values.extend_from_slice(self.row(id));
        }
        EmbeddingMatrix { n: ids.len() as u32, dim: self.dim, values }
    }
}

// One ChaCha stream per (table, purpose) keeps generation independent
// per table and reproducible.
const STREAM_GROUPS: u64 = 0;
const STREAM_QUERIES: u64 = 1;
const STREAM_EMBED: u64 = 2;

fn table_rng(seed: u64, table: u32, purpose: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(table as u64 * 3 + purpose);
    rng
}

/// Latent group of every id in `table` (`u32::MAX` for ungrouped ids).
///
/// This is the planted ground truth the generator itself uses; it is exposed
/// so experiments can verify recovery against it.
pub fn latent_groups(spec: &WorkloadSpec, seed: u64, table: u32) -> Vec<u32> {
    let n = spec.vectors_per_table;
    let mut ids: Vec<u32> = (0..n).collect();
    let mut rng = table_rng(seed, table, STREAM_GROUPS);
    shuffle(&mut rng, &mut ids);
    let mut group_of = vec![u32::MAX; n as usize];
    for g in 0..spec.groups {
        for s in 0..spec.group_size {
            let id = ids[(g * spec.group_size + s) as usize];
            group_of[id as usize] = g;
        }
    }
    group_of
}

/// Member ids of every latent group, each sorted ascending.
pub fn latent_group_members(spec: &WorkloadSpec, seed: u64, table: u32) -> Vec<Vec<u32>> {
    let group_of = latent_groups(spec, seed, table);
    let mut members = vec![Vec::with_capacity(spec.group_size as usize); spec.groups as usize];
    for (id, &g) in group_of.iter().enumerate() {
        if g != u32::MAX {
            members[g as usize].push(id as u32);
        }
    }
    members
}

fn zipf_cdf(groups: u32, alpha: f64) -> Vec<f64> {
    let mut cdf = Vec::with_capacity(groups as usize);
    let mut acc = 0.0;
    for i in 0..groups {
        acc += libm::pow((i + 1) as f64, -alpha);
        cdf.push(acc);
    }
    cdf
}

fn zipf_draw<R: RngCore>(rng: &mut R, cdf: &[f64]) -> u32 {
    let total = *cdf.last().unwrap();
    let u = rand01(rng) * total;
    let idx = cdf.partition_point(|&c| c <= u);
    (idx as u32).min(cdf.len() as u32 - 1)
}

fn draw_len<R: RngCore>(rng: &mut R, l: &LengthSpec) -> u32 {
    if l.max == l.min {
        return l.min;
    }
    let p = (l.mean - l.min as f64) / ((l.max - l.min) as f64);
    let mut len = l.min;
    for _ in 0..(l.max - l.min) {
        if rand01(rng) < p {
            len += 1;
        }
    }
    len
}

/// Generate a trace and one embedding matrix per table.
///
/// Deterministic in (spec, seed): the same inputs produce byte-identical
/// traces and embeddings.
pub fn generate_workload(spec: &WorkloadSpec, seed: u64) -> Result<(Trace, Vec<EmbeddingMatrix>)> {
    spec.validate()?;
    let n = spec.vectors_per_table;
    let mut tables = BTreeMap::new();
    for t in 0..spec.tables {
        tables.insert(TableId(t), n);
    }
    let mut trace = Trace::new(tables);
    let mut embeddings = Vec::with_capacity(spec.tables as usize);
    let cdf = zipf_cdf(spec.groups, spec.zipf_alpha);

    for t in 0..spec.tables {
        let members = latent_group_members(spec, seed, t);
        let group_of = latent_groups(spec, seed, t);

        let mut qrng = table_rng(seed, t, STREAM_QUERIES);
        for _ in 0..spec.num_queries {
            let g = zipf_draw(&mut qrng, &cdf) as usize;
            let len = draw_len(&mut qrng, &spec.query_len);
            let mut ids = Vec::with_capacity(len as usize);
            for _ in 0..len {
                let mut id = members[g][uniform_u32(&mut qrng, spec.group_size) as usize];
                if spec.noise > 0.0 && rand01(&mut qrng) < spec.noise {
                    id = uniform_u32(&mut qrng, n);
                }
                ids.push(VectorId(id));
            }
            trace.push(Query { table: TableId(t), ids })?;
        }

        let mut erng = table_rng(seed, t, STREAM_EMBED);
        let d = spec.dim as usize;
        let mut centroids = vec![0.0f64; spec.groups as usize * d];
        for c in centroids.iter_mut() {
            *c = normal(&mut erng);
        }
        // jitter sigma relative to typical centroid spacing sqrt(2d)
        let sigma = 0.05 * libm::sqrt(2.0 * spec.dim as f64);
        let mut values = Vec::with_capacity(n as usize * d);
        for id in 0..n {
            let g = group_of[id as usize];
            for j in 0..d {
                let v = if g == u32::MAX {
                    normal(&mut erng)
                } else {
                    centroids[g as usize * d + j] + sigma * normal(&mut erng)
                };
                values.push(v as f32);
            }
        }
        embeddings.push(EmbeddingMatrix::new(n, spec.dim, values)?);
    }
    Ok((trace, embeddings))
}
