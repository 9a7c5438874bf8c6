//! Exhaustive codeword enumeration in Gray-code order.
//!
//! The index space `[0, 2^k)` is cut into contiguous chunks. Each chunk seeds
//! a running codeword from the Gray code of its first index and then flips
//! one basis row per step, so every codeword costs one row XOR. Chunk results
//! are merged with associative operations, which makes the output independent
//! of the thread count.

use crate::bits::{popcount, xor_words, BitSet};

/// Smallest chunk worth handing to a worker.
const MIN_CHUNK: u64 = 1 << 12;

/// Rows flattened into one contiguous word buffer.
#[derive(Debug, Clone)]
pub struct RowBundle {
    width_words: usize,
    rows: usize,
    data: Vec<u64>,
}

impl RowBundle {
    pub fn new(rows: &[BitSet]) -> Self {
        let width_words = rows.first().map_or(0, |r| r.words().len());
        let mut data = Vec::with_capacity(width_words * rows.len());
        for r in rows {
            assert_eq!(r.words().len(), width_words, "ragged rows");
            data.extend_from_slice(r.words());
        }
        RowBundle {
            width_words,
            rows: rows.len(),
            data,
        }
    }

    /// Each row is `left[i] ‖ right[i]`; used to track `x` and `x²` together.
    pub fn paired(left: &[BitSet], right: &[BitSet]) -> Self {
        assert_eq!(left.len(), right.len());
        let w = left.first().map_or(0, |r| r.words().len());
        let mut data = Vec::with_capacity(2 * w * left.len());
        for (l, r) in left.iter().zip(right) {
            data.extend_from_slice(l.words());
            data.extend_from_slice(r.words());
        }
        RowBundle {
            width_words: 2 * w,
            rows: left.len(),
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn width_words(&self) -> usize {
        self.width_words
    }

    #[inline]
    fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.width_words..(i + 1) * self.width_words]
    }

    /// Number of codewords, `2^rows`.
    pub fn codewords(&self) -> u128 {
        1u128 << self.rows
    }
}

#[inline]
fn gray(i: u64) -> u64 {
    i ^ (i >> 1)
}

/// Visit the codewords with Gray indices `start..end` in order.
pub fn scan_range(bundle: &RowBundle, start: u64, end: u64, mut visit: impl FnMut(&[u64])) {
    if start >= end {
        return;
    }
    let mut buf = vec![0u64; bundle.width_words];
    let g = gray(start);
    for j in 0..bundle.rows {
        if (g >> j) & 1 == 1 {
            xor_words(&mut buf, bundle.row(j));
        }
    }
    let mut i = start;
    loop {
        visit(&buf);
        i += 1;
        if i == end {
            break;
        }
        xor_words(&mut buf, bundle.row(i.trailing_zeros() as usize));
    }
}

fn chunks(total: u64, threads: usize) -> Vec<(u64, u64)> {
    let want = (threads.max(1) as u64) * 8;
    let size = (total / want).max(MIN_CHUNK).min(total.max(1));
    let mut out = Vec::new();
    let mut s = 0;
    while s < total {
        let e = (s + size).min(total);
        out.push((s, e));
        s = e;
    }
    out
}

fn histogram_range(bundle: &RowBundle, start: u64, end: u64, width_bits: usize) -> Vec<u64> {
    let mut hist = vec![0u64; width_bits + 1];
    scan_range(bundle, start, end, |w| hist[popcount(w)] += 1);
    hist
}

#[cfg(feature = "parallel")]
fn merge(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

/// Weight histogram of all `2^k` codewords (the zero word included at
/// index 0), single-threaded.
pub fn histogram_sequential(bundle: &RowBundle, width_bits: usize) -> Vec<u64> {
    let total = checked_total(bundle);
    histogram_range(bundle, 0, total, width_bits)
}

#[cfg(feature = "parallel")]
pub fn histogram_parallel(bundle: &RowBundle, width_bits: usize, threads: usize) -> Vec<u64> {
    use rayon::prelude::*;
    let total = checked_total(bundle);
    let work = || {
        let n = rayon::current_num_threads();
        chunks(total, n)
            .into_par_iter()
            .map(|(s, e)| histogram_range(bundle, s, e, width_bits))
            .reduce(|| vec![0u64; width_bits + 1], merge)
    };
    with_threads(threads, work)
}

/// Dispatches to the parallel path when the `parallel` feature is on.
/// `threads == 0` means the default pool.
pub fn histogram(bundle: &RowBundle, width_bits: usize, threads: usize) -> Vec<u64> {
    #[cfg(feature = "parallel")]
    {
        if threads != 1 {
            return histogram_parallel(bundle, width_bits, threads);
        }
    }
    let _ = threads;
    histogram_sequential(bundle, width_bits)
}

/// Counts codewords whose two halves agree (for a paired bundle `x ‖ x²`,
/// the idempotents in the span, zero included).
pub fn count_balanced(bundle: &RowBundle, threads: usize) -> u64 {
    let total = checked_total(bundle);
    let half = bundle.width_words / 2;
    let count_range = |(s, e): (u64, u64)| {
        let mut c = 0u64;
        scan_range(bundle, s, e, |w| {
            if w[..half] == w[half..] {
                c += 1;
            }
        });
        c
    };
    #[cfg(feature = "parallel")]
    {
        if threads != 1 {
            use rayon::prelude::*;
            return with_threads(threads, || {
                chunks(total, rayon::current_num_threads())
                    .into_par_iter()
                    .map(count_range)
                    .sum()
            });
        }
    }
    let _ = threads;
    chunks(total, 1).into_iter().map(count_range).sum()
}

/// Reference path: rebuild each codeword from scratch from the bits of its
/// index. Quadratic in `k`; only for cross-checking small codes.
pub fn histogram_naive(rows: &[BitSet], width_bits: usize) -> Vec<u64> {
    let k = rows.len();
    assert!(k < 32, "naive enumeration is for small dimensions only");
    let mut hist = vec![0u64; width_bits + 1];
    for m in 0u64..(1 << k) {
        let mut x = BitSet::zeros(width_bits);
        for (j, row) in rows.iter().enumerate() {
            if (m >> j) & 1 == 1 {
                x.xor_assign(row);
            }
        }
        hist[x.count_ones()] += 1;
    }
    hist
}

fn checked_total(bundle: &RowBundle) -> u64 {
    assert!(
        bundle.rows < 64,
        "dimension {} too large to enumerate",
        bundle.rows
    );
    1u64 << bundle.rows
}

#[cfg(feature = "parallel")]
fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    if threads == 0 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}
