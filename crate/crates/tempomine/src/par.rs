//! Thin data-parallel shim: with the `parallel` feature the work is
//! spread over a rayon pool sized by `workers` (0 = rayon's default);
//! without it everything runs sequentially. Results always come back in
//! input order, so callers see identical output either way.

/// Maps `f` over `items`, preserving order.
#[cfg(feature = "parallel")]
pub fn map<T, U, F>(items: &[T], f: F, workers: usize) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    if workers == 1 {
        return items.iter().map(f).collect();
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if workers > 0 {
        builder = builder.num_threads(workers);
    }
    match builder.build() {
        Ok(pool) => pool.install(|| items.par_iter().map(f).collect()),
        Err(_) => items.iter().map(f).collect(),
    }
}

/// Maps `f` over `items`, preserving order.
#[cfg(not(feature = "parallel"))]
pub fn map<T, U, F>(items: &[T], f: F, _workers: usize) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync,
{
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    #[test]
    fn preserves_input_order() {
        let xs: Vec<u32> = (0..100).collect();
        let ys = super::map(&xs, |&x| x * 2, 4);
        assert_eq!(ys, (0..100).map(|x| x * 2).collect::<Vec<_>>());
    }
}
