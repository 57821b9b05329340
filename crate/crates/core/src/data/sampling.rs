//! Index schedules that decide which samples each stochastic iteration sees.
//!
//! Three schedules are available:
//!
//! - [`SamplingKind::IidUniform`]: every draw is independent and uniform over
//!   the visible samples of a class.
//! - [`SamplingKind::EpochPermutation`]: each class is consumed as a fresh
//!   random permutation, so every block of `m_i` draws covers every index of
//!   class `i` exactly once.
//! - [`SamplingKind::LcmBalanced`]: over every aligned block of
//!   `d = lcm(m1, m2)` iterations, each positive index is drawn exactly
//!   `d / m1` times and each negative index `d / m2` times, in uniformly
//!   shuffled order. Under this schedule the block average of the per-pair
//!   objectives equals the full-batch objective.
//!
//! The balanced schedule draws without replacement from the block multiset
//! using a Fenwick tree over remaining counts, so memory stays `O(m)` even
//! when `lcm(m1, m2)` is large.

use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Dataset, Label};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SamplingKind {
    #[default]
    IidUniform,
    EpochPermutation,
    LcmBalanced,
}

impl SamplingKind {
    pub fn name(self) -> &'static str {
        match self {
            SamplingKind::IidUniform => "iid",
            SamplingKind::EpochPermutation => "epoch",
            SamplingKind::LcmBalanced => "lcm",
        }
    }
}

impl std::str::FromStr for SamplingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "iid" => Ok(SamplingKind::IidUniform),
            "epoch" => Ok(SamplingKind::EpochPermutation),
            "lcm" => Ok(SamplingKind::LcmBalanced),
            other => Err(Error::invalid(format!(
                "unknown sampling policy {other:?} (expected iid, epoch or lcm)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SamplingPolicy {
    pub kind: SamplingKind,
    pub seed: u64,
}

impl SamplingPolicy {
    pub fn new(kind: SamplingKind, seed: u64) -> Self {
        SamplingPolicy { kind, seed }
    }
}

type MaskFn = dyn Fn(Label, &[f64]) -> bool + Send + Sync;

/// Marks samples that the sampler must never return.
#[derive(Clone)]
pub struct SamplingMask {
    excluded: Arc<MaskFn>,
    description: String,
}

impl SamplingMask {
    /// Arbitrary exclusion predicate over `(class, features)`.
    pub fn from_fn<F>(description: impl Into<String>, excluded: F) -> Self
    where
        F: Fn(Label, &[f64]) -> bool + Send + Sync + 'static,
    {
        SamplingMask {
            excluded: Arc::new(excluded),
            description: description.into(),
        }
    }

    /// Hides samples of `class` whose feature `feature` lies in `[lo, hi]`.
    pub fn interval(class: Label, feature: usize, lo: f64, hi: f64) -> Self {
        Self::from_fn(
            format!("class {class}, x{} in [{lo}, {hi}]", feature + 1),
            move |label, x| label == class && x.get(feature).is_some_and(|&v| lo <= v && v <= hi),
        )
    }

    pub fn excludes(&self, label: Label, features: &[f64]) -> bool {
        (self.excluded)(label, features)
    }

    pub fn description(&self) -> &str {
        &self.description
    }
}

impl fmt::Debug for SamplingMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SamplingMask")
            .field("description", &self.description)
            .finish()
    }
}

/// Indices of `label` that survive `mask`, in stored order.
pub fn visible_indices(data: &Dataset, label: Label, mask: Option<&SamplingMask>) -> Result<Vec<usize>> {
    let idx: Vec<usize> = data
        .class_rows(label)
        .enumerate()
        .filter(|(_, x)| !mask.is_some_and(|m| m.excludes(label, x)))
        .map(|(i, _)| i)
        .collect();
    if idx.is_empty() {
        return Err(Error::MaskExcludesClass(label));
    }
    Ok(idx)
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Counts over `0..len` with prefix-sum search, used to draw without
/// replacement from a multiset.
#[derive(Debug, Clone)]
struct Fenwick {
    tree: Vec<u64>,
    top_bit: usize,
}

impl Fenwick {
    fn filled(len: usize, count: u64) -> Self {
        let mut f = Fenwick {
            tree: vec![0; len + 1],
            top_bit: if len == 0 { 0 } else { 1 << (usize::BITS - 1 - len.leading_zeros()) },
        };
        f.fill(count);
        f
    }

    fn fill(&mut self, count: u64) {
        for i in 1..self.tree.len() {
            self.tree[i] = count * (i & i.wrapping_neg()) as u64;
        }
    }

    /// Smallest index whose inclusive prefix sum exceeds `target`.
    fn find(&self, mut target: u64) -> usize {
        let len = self.tree.len() - 1;
        let mut pos = 0usize;
        let mut step = self.top_bit;
        while step > 0 {
            let next = pos + step;
            if next <= len && self.tree[next] <= target {
                pos = next;
                target -= self.tree[next];
            }
            step >>= 1;
        }
        pos
    }

    fn decrement(&mut self, idx: usize) {
        let mut i = idx + 1;
        while i < self.tree.len() {
            self.tree[i] -= 1;
            i += i & i.wrapping_neg();
        }
    }
}

#[derive(Debug, Clone)]
enum Schedule {
    Iid,
    Permutation { order: Vec<usize>, pos: usize },
    Multiset { counts: Fenwick, per_index: u64, remaining: u64 },
}

/// An endless stream of indices drawn from a fixed candidate list.
#[derive(Debug, Clone)]
pub struct IndexStream {
    candidates: Vec<usize>,
    rng: ChaCha8Rng,
    schedule: Schedule,
}

impl IndexStream {
    /// `per_block` only matters for [`SamplingKind::LcmBalanced`]: it is the
    /// number of times each candidate appears in one block.
    pub fn new(candidates: Vec<usize>, kind: SamplingKind, per_block: u64, seed: u64, stream: u64) -> Self {
        assert!(!candidates.is_empty(), "index stream needs at least one candidate");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        let len = candidates.len();
        let schedule = match kind {
            SamplingKind::IidUniform => Schedule::Iid,
            SamplingKind::EpochPermutation => Schedule::Permutation {
                order: (0..len).collect(),
                pos: len,
            },
            SamplingKind::LcmBalanced => {
                let per_index = per_block.max(1);
                Schedule::Multiset {
                    counts: Fenwick::filled(len, per_index),
                    per_index,
                    remaining: per_index * len as u64,
                }
            }
        };
        IndexStream {
            candidates,
            rng,
            schedule,
        }
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    /// Next index into the underlying class (not into the candidate list).
    #[inline]
    pub fn next_index(&mut self) -> usize {
        let len = self.candidates.len();
        let slot = match &mut self.schedule {
            Schedule::Iid => self.rng.random_range(0..len),
            Schedule::Permutation { order, pos } => {
                if *pos == len {
                    order.shuffle(&mut self.rng);
                    *pos = 0;
                }
                let s = order[*pos];
                *pos += 1;
                s
            }
            Schedule::Multiset {
                counts,
                per_index,
                remaining,
            } => {
                if *remaining == 0 {
                    counts.fill(*per_index);
                    *remaining = *per_index * len as u64;
                }
                let target = self.rng.random_range(0..*remaining);
                let s = counts.find(target);
                counts.decrement(s);
                *remaining -= 1;
                s
            }
        };
        self.candidates[slot]
    }
}

/// Draws one positive and one negative index per iteration.
#[derive(Debug, Clone)]
pub struct PairSampler {
    positive: IndexStream,
    negative: IndexStream,
    block: u64,
}

impl PairSampler {
    pub fn new(policy: SamplingPolicy, data: &Dataset, mask: Option<&SamplingMask>) -> Result<Self> {
        let pos = visible_indices(data, Label::Positive, mask)?;
        let neg = visible_indices(data, Label::Negative, mask)?;
        let (m1, m2) = (pos.len() as u64, neg.len() as u64);
        let block = match policy.kind {
            SamplingKind::IidUniform => 1,
            SamplingKind::EpochPermutation => if m1 == m2 { m1 } else { lcm(m1, m2) },
            SamplingKind::LcmBalanced => lcm(m1, m2),
        };
        let per = |m: u64| if policy.kind == SamplingKind::LcmBalanced { block / m } else { 1 };
        Ok(PairSampler {
            positive: IndexStream::new(pos, policy.kind, per(m1), policy.seed, 1),
            negative: IndexStream::new(neg, policy.kind, per(m2), policy.seed, 2),
            block,
        })
    }

    /// `(positive index, negative index)` for the next iteration.
    #[inline]
    pub fn next_pair(&mut self) -> (usize, usize) {
        (self.positive.next_index(), self.negative.next_index())
    }

    /// Number of iterations after which the schedule's count guarantees hold
    /// (1 for i.i.d. sampling).
    pub fn block_len(&self) -> u64 {
        self.block
    }

    pub fn visible(&self) -> (usize, usize) {
        (self.positive.len(), self.negative.len())
    }
}

/// Draws one pooled index (positives `0..m1`, negatives `m1..`) per iteration.
#[derive(Debug, Clone)]
pub struct PooledSampler {
    stream: IndexStream,
}

impl PooledSampler {
    pub fn new(policy: SamplingPolicy, data: &Dataset, mask: Option<&SamplingMask>) -> Result<Self> {
        let m1 = data.n_positive();
        let mut pooled = visible_indices(data, Label::Positive, mask)?;
        pooled.extend(visible_indices(data, Label::Negative, mask)?.into_iter().map(|j| j + m1));
        Ok(PooledSampler {
            stream: IndexStream::new(pooled, policy.kind, 1, policy.seed, 3),
        })
    }

    #[inline]
    pub fn next_index(&mut self) -> usize {
        self.stream.next_index()
    }
}
