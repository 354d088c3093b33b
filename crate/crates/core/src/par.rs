//! Data-parallel sweeps over index ranges with a sequential fallback.
//!
//! With the `parallel` feature (default) `Exec::Parallel` runs on the rayon
//! pool; without it every strategy runs sequentially. Results always come back
//! in index order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    #[default]
    Parallel,
    Sequential,
}

impl Exec {
    #[cfg(feature = "parallel")]
    fn parallel(self) -> bool {
        self == Exec::Parallel
    }

    /// `f(i)` for every `i < n`, in index order.
    pub fn map_range<T, F>(self, n: u64, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.parallel() {
            return (0..n).into_par_iter().map(f).collect();
        }
        (0..n).map(f).collect()
    }

    /// The `Some` results of `f(i)` for `i < n`, in index order.
    pub fn filter_map_range<T, F>(self, n: u64, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> Option<T> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.parallel() {
            return (0..n).into_par_iter().filter_map(f).collect();
        }
        (0..n).filter_map(f).collect()
    }

    /// The `Some` result with the smallest index.
    pub fn find_first<T, F>(self, n: u64, f: F) -> Option<T>
    where
        T: Send,
        F: Fn(u64) -> Option<T> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.parallel() {
            return (0..n).into_par_iter().filter_map(f).find_first(|_| true);
        }
        (0..n).find_map(f)
    }

    /// Maps every item, stopping at the first error (by index).
    pub fn try_map<I, T, E, F>(self, items: &[I], f: F) -> Result<Vec<T>, E>
    where
        I: Sync,
        T: Send,
        E: Send,
        F: Fn(&I) -> Result<T, E> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree_and_keep_order() {
        for exec in [Exec::Parallel, Exec::Sequential] {
            assert_eq!(exec.map_range(5, |i| i * i), vec![0, 1, 4, 9, 16]);
            assert_eq!(exec.filter_map_range(10, |i| (i % 3 == 0).then_some(i)), vec![0, 3, 6, 9]);
            assert_eq!(exec.find_first(100, |i| (i > 40 && i % 7 == 0).then_some(i)), Some(42));
            let r: Result<Vec<u32>, String> = exec.try_map(&[1, 2, 3], |&x| if x < 3 { Ok(x) } else { Err(format!("{x}")) });
            assert_eq!(r, Err("3".to_string()));
        }
    }
}
