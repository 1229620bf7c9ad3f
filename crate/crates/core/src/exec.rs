//! Execution strategy for the bulk loops.
//!
//! Reductions over lattice points run data-parallel when the `parallel`
//! feature is enabled (the default) and sequentially otherwise.  Both paths
//! sum fixed-size blocks in index order and then fold the ordered block sums,
//! so the result is bit-identical regardless of strategy or thread count.
//! The `_seq` variants are always available; the benchmark suite uses them to
//! compare the two paths directly.

const BLOCK: usize = 8192;

/// Sum `f(i)` for `i in 0..n`, parallel when the feature allows.
pub fn sum_indexed<F>(n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let nblocks = n.div_ceil(BLOCK);
        let partials: Vec<f64> = (0..nblocks)
            .into_par_iter()
            .map(|b| block_sum(b, n, &f))
            .collect();
        partials.iter().sum()
    }
    #[cfg(not(feature = "parallel"))]
    {
        sum_indexed_seq(n, f)
    }
}

/// Sequential twin of [`sum_indexed`]; same blocking, same bits.
pub fn sum_indexed_seq<F>(n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64,
{
    let nblocks = n.div_ceil(BLOCK);
    (0..nblocks).map(|b| block_sum(b, n, &f)).sum()
}

#[inline]
fn block_sum<F: Fn(usize) -> f64>(b: usize, n: usize, f: &F) -> f64 {
    let lo = b * BLOCK;
    let hi = (lo + BLOCK).min(n);
    let mut s = 0.0;
    for i in lo..hi {
        s += f(i);
    }
    s
}

/// Accumulate a small fixed number of sums in one sweep (e.g. the three
/// charge formulas over one lattice pass).
pub fn sum_indexed_multi<const K: usize, F>(n: usize, f: F) -> [f64; K]
where
    F: Fn(usize) -> [f64; K] + Sync,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let nblocks = n.div_ceil(BLOCK);
        let partials: Vec<[f64; K]> = (0..nblocks)
            .into_par_iter()
            .map(|b| block_sum_multi(b, n, &f))
            .collect();
        fold_multi(&partials)
    }
    #[cfg(not(feature = "parallel"))]
    {
        sum_indexed_multi_seq(n, f)
    }
}

/// Sequential twin of [`sum_indexed_multi`].
pub fn sum_indexed_multi_seq<const K: usize, F>(n: usize, f: F) -> [f64; K]
where
    F: Fn(usize) -> [f64; K],
{
    let nblocks = n.div_ceil(BLOCK);
    let partials: Vec<[f64; K]> = (0..nblocks).map(|b| block_sum_multi(b, n, &f)).collect();
    fold_multi(&partials)
}

#[inline]
fn block_sum_multi<const K: usize, F: Fn(usize) -> [f64; K]>(b: usize, n: usize, f: &F) -> [f64; K] {
    let lo = b * BLOCK;
    let hi = (lo + BLOCK).min(n);
    let mut s = [0.0; K];
    for i in lo..hi {
        let v = f(i);
        for k in 0..K {
            s[k] += v[k];
        }
    }
    s
}

#[inline]
fn fold_multi<const K: usize>(partials: &[[f64; K]]) -> [f64; K] {
    let mut s = [0.0; K];
    for p in partials {
        for k in 0..K {
            s[k] += p[k];
        }
    }
    s
}

/// Fill `out[i] = f(i)`, parallel when the feature allows.
pub fn fill_indexed<T, F>(out: &mut [T], f: F)
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        out.par_iter_mut().enumerate().for_each(|(i, slot)| *slot = f(i));
    }
    #[cfg(not(feature = "parallel"))]
    {
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = f(i);
        }
    }
}

/// Reports whether this build dispatches bulk loops through a thread pool.
pub fn parallel_enabled() -> bool {
    cfg!(feature = "parallel")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_sums_are_bit_identical() {
        let f = |i: usize| ((i as f64) * 0.37).sin() / (i as f64 + 1.0);
        let a = sum_indexed(100_000, f);
        let b = sum_indexed_seq(100_000, f);
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn multi_sum_matches_single_sums() {
        let g = |i: usize| {
            let x = i as f64;
            [x, x * x]
        };
        let [s1, s2] = sum_indexed_multi(1000, g);
        assert_eq!(s1, sum_indexed_seq(1000, |i| i as f64));
        assert_eq!(s2, sum_indexed_seq(1000, |i| (i as f64) * (i as f64)));
    }
}
