//! Sequential and data-parallel execution of the inner loops.
//!
//! Reductions are split into fixed-size chunks whose partial sums are combined
//! in index order, so both strategies give bit-identical results regardless
//! of thread count.

use std::ops::Range;

use num_complex::Complex64;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Samples per reduction chunk.
pub const CHUNK: usize = 4096;

/// How independent work items are scheduled.
///
/// `Parallel` runs on the rayon pool when the `parallel` feature is enabled
/// and falls back to `Sequential` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

fn chunks(n: usize) -> impl Iterator<Item = Range<usize>> + Clone {
    (0..n.div_ceil(CHUNK)).map(move |c| c * CHUNK..((c + 1) * CHUNK).min(n))
}

/// `sum_{i in 0..n} term(i)` over fixed chunks.
pub fn chunked_sum<F>(n: usize, exec: Execution, chunk_sum: F) -> Complex64
where
    F: Fn(Range<usize>) -> Complex64 + Sync,
{
    let partials: Vec<Complex64> = if exec.is_parallel() {
        #[cfg(feature = "parallel")]
        {
            chunks(n)
                .collect::<Vec<_>>()
                .into_par_iter()
                .map(&chunk_sum)
                .collect()
        }
        #[cfg(not(feature = "parallel"))]
        unreachable!()
    } else {
        chunks(n).map(&chunk_sum).collect()
    };
    partials
        .into_iter()
        .fold(Complex64::new(0.0, 0.0), |acc, p| acc + p)
}

/// `items.map(f)`, results in input order.
pub fn map_ordered<T, R, F>(items: &[T], exec: Execution, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    if exec.is_parallel() {
        #[cfg(feature = "parallel")]
        {
            return items.par_iter().map(f).collect();
        }
    }
    items.iter().map(f).collect()
}

/// Runs both closures, concurrently when allowed.
pub fn join<A, B, RA, RB>(exec: Execution, a: A, b: B) -> (RA, RB)
where
    A: FnOnce() -> RA + Send,
    B: FnOnce() -> RB + Send,
    RA: Send,
    RB: Send,
{
    if exec.is_parallel() {
        #[cfg(feature = "parallel")]
        {
            return rayon::join(a, b);
        }
    }
    (a(), b())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree_bitwise() {
        let n = 3 * CHUNK + 17;
        let term = |r: Range<usize>| {
            r.map(|i| Complex64::new((i as f64).sin(), 1.0 / (1.0 + i as f64)))
                .fold(Complex64::new(0.0, 0.0), |a, b| a + b)
        };
        let seq = chunked_sum(n, Execution::Sequential, term);
        let par = chunked_sum(n, Execution::Parallel, term);
        assert_eq!(seq.re.to_bits(), par.re.to_bits());
        assert_eq!(seq.im.to_bits(), par.im.to_bits());
    }

    #[test]
    fn chunks_cover_range() {
        let covered: usize = chunks(2 * CHUNK + 1).map(|r| r.len()).sum();
        assert_eq!(covered, 2 * CHUNK + 1);
        assert_eq!(chunks(0).count(), 0);
    }

    #[test]
    fn map_keeps_order() {
        let items: Vec<u32> = (0..1000).collect();
        let out = map_ordered(&items, Execution::Parallel, |x| x * 2);
        assert!(out.iter().enumerate().all(|(i, &v)| v == 2 * i as u32));
    }
}
