//! Data-parallel helpers over index ranges and slices.
//!
//! With the `parallel` feature these dispatch to rayon; without it they run
//! the same closures sequentially. Every helper is order-preserving, so
//! witnesses picked with [`find_first`] are identical in both modes.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Smallest index in `0..n` satisfying `pred`.
pub fn find_first<F>(n: usize, pred: F) -> Option<usize>
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().find_first(|&i| pred(i))
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).find(|&i| pred(i))
    }
}

/// First item of `items` (in slice order) satisfying `pred`.
pub fn find_first_in<T, F>(items: &[T], pred: F) -> Option<&T>
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    find_first(items.len(), |i| pred(&items[i])).map(|i| &items[i])
}

/// First `Some` produced by `f` over `0..n`, in index order.
pub fn find_map_first<T, F>(n: usize, f: F) -> Option<T>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().find_map_first(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).find_map(f)
    }
}

pub fn all<F>(n: usize, pred: F) -> bool
where
    F: Fn(usize) -> bool + Sync + Send,
{
    find_first(n, |i| !pred(i)).is_none()
}

pub fn map<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

pub fn map_slice<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    map(items.len(), |i| f(&items[i]))
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn find_first_is_leftmost() {
        assert_eq!(find_first(1000, |i| i % 7 == 3 && i > 100), Some(101));
        assert_eq!(find_first(10, |_| false), None);
        assert_eq!(find_map_first(50, |i| (i * i > 30).then_some(i)), Some(6));
    }

    #[test]
    fn map_preserves_order() {
        let v = map(100, |i| i * 2);
        assert!(v.iter().enumerate().all(|(i, &x)| x == 2 * i));
        assert!(all(5, |i| i < 5));
    }
}
