//! Execution policy for the data-parallel loops.
//!
//! With the `parallel` feature (on by default) [`Exec::Parallel`] runs on the
//! rayon global pool. Without it both variants run sequentially, so callers
//! never need to cfg-gate.

/// How to run an embarrassingly parallel loop. Results are always returned
/// in input order, whichever variant is used.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// True when this policy will actually fan out to worker threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    pub(crate) fn map_range<R, F>(self, range: std::ops::Range<usize>, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            use rayon::prelude::*;
            return range.into_par_iter().map(f).collect();
        }
        range.map(f).collect()
    }

    pub(crate) fn map_slice<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    pub(crate) fn all_range<F>(self, range: std::ops::Range<usize>, f: F) -> bool
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            use rayon::prelude::*;
            return range.into_par_iter().all(f);
        }
        range.into_iter().all(f)
    }

    /// First index in `range` (smallest) for which `f` holds.
    pub(crate) fn find_first<F>(self, range: std::ops::Range<usize>, f: F) -> Option<usize>
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            use rayon::prelude::*;
            return range.into_par_iter().find_first(|&i| f(i));
        }
        range.into_iter().find(|&i| f(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_policies_agree_and_keep_order() {
        for exec in [Exec::Sequential, Exec::Parallel] {
            assert_eq!(exec.map_range(0..5, |i| i * i), vec![0, 1, 4, 9, 16]);
            assert_eq!(exec.map_slice(&[3, 1, 2], |&x| x + 1), vec![4, 2, 3]);
            assert!(exec.all_range(0..100, |i| i < 100));
            assert_eq!(exec.find_first(0..1000, |i| i % 97 == 96), Some(96));
        }
    }
}
