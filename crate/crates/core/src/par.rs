//! Data-parallel helpers. With the `parallel` feature the work runs on the rayon pool;
//! without it, or inside a one-thread pool, everything runs sequentially in order.

/// Maps `f` over `items`, keeping the input order.
pub fn map_vec<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        if rayon::current_num_threads() > 1 && items.len() > 1 {
            return items.into_par_iter().map(f).collect();
        }
    }
    items.into_iter().map(f).collect()
}

/// Sums `f` over `0..n`.
pub fn sum_range<F>(n: usize, f: F) -> usize
where
    F: Fn(usize) -> usize + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        if rayon::current_num_threads() > 1 && n > 1 {
            return (0..n).into_par_iter().map(f).sum();
        }
    }
    (0..n).map(f).sum()
}

/// Runs `f` with at most `jobs` worker threads (0 keeps the ambient pool).
pub fn with_jobs<R: Send>(jobs: usize, f: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    {
        if jobs > 0 {
            if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
                return pool.install(f);
            }
        }
    }
    let _ = jobs;
    f()
}

/// Number of workers the helpers above will use.
pub fn current_jobs() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_kept() {
        let v: Vec<usize> = (0..100).collect();
        let out = with_jobs(4, || map_vec(v.clone(), |x| x * 2));
        assert_eq!(out, v.iter().map(|x| x * 2).collect::<Vec<_>>());
        assert_eq!(with_jobs(1, || sum_range(10, |i| i)), 45);
    }
}
