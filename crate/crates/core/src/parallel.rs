//! Data-parallel helpers. With the `parallel` feature the work is spread over the
//! rayon pool; without it every call runs on the current thread. Output order is
//! always the input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Parallelism {
    Sequential,
    #[default]
    Parallel,
}

impl Parallelism {
    /// True only when parallel execution was requested and compiled in.
    pub fn enabled(self) -> bool {
        cfg!(feature = "parallel") && self == Parallelism::Parallel
    }
}

pub fn map<T, U, F>(items: &[T], par: Parallelism, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if par.enabled() {
        return items.par_iter().map(f).collect();
    }
    let _ = par;
    items.iter().map(f).collect()
}

pub fn map_range<U, F>(n: usize, par: Parallelism, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if par.enabled() {
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = par;
    (0..n).map(f).collect()
}
