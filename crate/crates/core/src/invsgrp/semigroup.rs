use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::par;

/// Index of an element of an [`InverseSemigroup`].
pub type SElem = usize;

/// A finite inverse semigroup given by its Cayley table.
#[derive(Clone)]
pub struct InverseSemigroup {
    labels: Vec<String>,
    index: HashMap<String, SElem>,
    table: Vec<SElem>,
    star: Vec<SElem>,
    idempotent: Vec<bool>,
}

impl fmt::Debug for InverseSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("InverseSemigroup")
            .field("labels", &self.labels)
            .finish()
    }
}

impl InverseSemigroup {
    /// Validates `table` (row-major, `table[s * n + t] = st`) as an inverse
    /// semigroup.
    pub fn new(labels: Vec<String>, table: Vec<SElem>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::MalformedSpec("semigroup has no elements".into()));
        }
        if table.len() != n * n || table.iter().any(|&x| x >= n) {
            return Err(Error::MalformedSpec("semigroup table is not total".into()));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::MalformedSpec(format!("duplicate semigroup element `{l}`")));
            }
        }
        let m = |a: usize, b: usize| table[a * n + b];
        if let Some(bad) = par::find_first(n * n * n, |idx| {
            let (a, b, c) = (idx / (n * n), idx / n % n, idx % n);
            m(m(a, b), c) != m(a, m(b, c))
        }) {
            let (a, b, c) = (bad / (n * n), bad / n % n, bad % n);
            return Err(Error::SemigroupNotAssociative(
                labels[a].clone(),
                labels[b].clone(),
                labels[c].clone(),
            ));
        }
        let inverses = par::map(n, |s| {
            (0..n)
                .filter(|&t| m(m(s, t), s) == s && m(m(t, s), t) == t)
                .take(2)
                .collect::<Vec<_>>()
        });
        let mut star = Vec::with_capacity(n);
        for (s, inv) in inverses.into_iter().enumerate() {
            match inv.len() {
                0 => return Err(Error::NoInverse(labels[s].clone())),
                1 => star.push(inv[0]),
                _ => return Err(Error::NonUniqueInverse(labels[s].clone())),
            }
        }
        let idempotent = (0..n).map(|s| m(s, s) == s).collect();
        Ok(InverseSemigroup {
            labels,
            index,
            table,
            star,
            idempotent,
        })
    }

    /// From labels and a multiplication function.
    pub fn from_fn(labels: Vec<String>, f: impl Fn(SElem, SElem) -> SElem) -> Result<Self> {
        let n = labels.len();
        let table = (0..n * n).map(|i| f(i / n, i % n)).collect();
        InverseSemigroup::new(labels, table)
    }

    /// The one-element semigroup.
    pub fn trivial(label: &str) -> Self {
        InverseSemigroup::new(vec![label.to_string()], vec![0]).expect("trivial semigroup")
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn elements(&self) -> std::ops::Range<SElem> {
        0..self.size()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, s: SElem) -> &str {
        &self.labels[s]
    }

    pub fn index_of(&self, label: &str) -> Option<SElem> {
        self.index.get(label).copied()
    }

    #[inline]
    pub fn mul(&self, s: SElem, t: SElem) -> SElem {
        self.table[s * self.size() + t]
    }

    #[inline]
    pub fn star(&self, s: SElem) -> SElem {
        self.star[s]
    }

    pub fn is_idempotent(&self, s: SElem) -> bool {
        self.idempotent[s]
    }

    pub fn idempotents(&self) -> Vec<SElem> {
        self.elements().filter(|&s| self.idempotent[s]).collect()
    }

    /// `s <= t` iff `s = t s* s`.
    pub fn natural_le(&self, s: SElem, t: SElem) -> bool {
        s == self.mul(t, self.mul(self.star(s), s))
    }

    /// All pairs `(r, s)` with `r <= s` and `r != s`.
    pub fn strict_order_pairs(&self) -> Vec<(SElem, SElem)> {
        let mut out = Vec::new();
        for r in self.elements() {
            for s in self.elements() {
                if r != s && self.natural_le(r, s) {
                    out.push((r, s));
                }
            }
        }
        out
    }

    /// An element `z` with `zs = sz = z` for all `s`.
    pub fn zero(&self) -> Option<SElem> {
        self.elements()
            .find(|&z| self.elements().all(|s| self.mul(z, s) == z && self.mul(s, z) == z))
    }

    /// Symmetric inverse monoid on `{1..n}`: all partial injections, composed
    /// right to left. Label `i`-th character is the image of `i + 1`, or `_`.
    pub fn symmetric_inverse_monoid(n: usize) -> Result<Self> {
        if n == 0 || n > 6 {
            return Err(Error::BadParams(format!("symmetric inverse monoid degree {n} not in 1..=6")));
        }
        // maps[i][x] = image of x or n for undefined
        let mut maps: Vec<Vec<usize>> = Vec::new();
        let total = (n + 1).pow(n as u32);
        for mut code in 0..total {
            let mut m = vec![0; n];
            for slot in m.iter_mut() {
                *slot = code % (n + 1);
                code /= n + 1;
            }
            let mut seen = vec![false; n];
            let injective = m.iter().all(|&y| {
                if y == n {
                    true
                } else if seen[y] {
                    false
                } else {
                    seen[y] = true;
                    true
                }
            });
            if injective {
                maps.push(m);
            }
        }
        maps.sort_by_key(|m| {
            let defined = m.iter().filter(|&&y| y < n).count();
            (std::cmp::Reverse(defined), m.clone())
        });
        let labels: Vec<String> = maps
            .iter()
            .map(|m| {
                m.iter()
                    .map(|&y| if y == n { '_' } else { char::from(b'1' + y as u8) })
                    .collect()
            })
            .collect();
        let lookup: HashMap<Vec<usize>, usize> =
            maps.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        InverseSemigroup::from_fn(labels, |s, t| {
            let comp: Vec<usize> = (0..n)
                .map(|x| {
                    let y = maps[t][x];
                    if y == n {
                        n
                    } else {
                        maps[s][y]
                    }
                })
                .collect();
            lookup[&comp]
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn trivial_semigroup() {
        let s = InverseSemigroup::trivial("e");
        assert_eq!(s.star(0), 0);
        assert!(s.is_idempotent(0));
    }

    #[test]
    fn symmetric_inverse_monoid_on_two() {
        let s = InverseSemigroup::symmetric_inverse_monoid(2).unwrap();
        assert_eq!(s.size(), 7);
        let empty = s.index_of("__").unwrap();
        let id = s.index_of("12").unwrap();
        let e1 = s.index_of("1_").unwrap();
        for t in s.elements() {
            assert!(s.natural_le(empty, t));
            assert!(s.natural_le(t, t));
        }
        assert!(s.natural_le(e1, id));
        assert!(!s.natural_le(id, e1));
        assert_eq!(s.zero(), Some(empty));
        assert_eq!(s.idempotents().len(), 4);
    }

    #[test]
    fn left_zero_band_has_two_inverses() {
        let r = InverseSemigroup::new(labels(&["a", "b"]), vec![0, 0, 1, 1]);
        assert!(matches!(r, Err(Error::NonUniqueInverse(_))));
    }

    #[test]
    fn rejects_nonassociative_and_missing_inverse() {
        // x*y = 1 unless both 1, a non-associative magma on {0,1}
        let r = InverseSemigroup::new(labels(&["a", "b"]), vec![1, 1, 1, 0]);
        assert!(matches!(r, Err(Error::SemigroupNotAssociative(..))));
        // null semigroup on two elements: 0 absorbing, b*b = 0; b has no inverse
        let r = InverseSemigroup::new(labels(&["z", "b"]), vec![0, 0, 0, 0]);
        assert!(matches!(r, Err(Error::NoInverse(l)) if l == "b"));
    }
}
