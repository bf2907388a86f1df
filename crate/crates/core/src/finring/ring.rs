use std::fmt;

use super::group::{Elem, FinAbGroup};
use crate::error::{Error, Result};

/// Rings up to this order keep a full multiplication table.
const TABLE_LIMIT: usize = 256;
/// Largest `rank * order` for which left multiplication by generators is cached.
const LEFT_CACHE_LIMIT: usize = 1 << 22;

/// A finite ring, not necessarily associative or unital, given by the
/// products of additive generators.
#[derive(Clone)]
pub struct FinRing {
    name: String,
    group: FinAbGroup,
    // k x k products e_i e_j
    consts: Vec<Elem>,
    // k x n products e_i * b
    left_basis: Option<Vec<Elem>>,
    table: Option<Vec<Elem>>,
    associative: bool,
    commutative: bool,
}

impl fmt::Debug for FinRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinRing")
            .field("name", &self.name)
            .field("ranks", &self.group.ranks())
            .field("associative", &self.associative)
            .field("commutative", &self.commutative)
            .finish()
    }
}

impl FinRing {
    /// Builds a ring from the structure constants `consts[i * k + j] = e_i e_j`.
    pub fn new(name: impl Into<String>, group: FinAbGroup, consts: Vec<Elem>) -> Result<Self> {
        let name = name.into();
        let k = group.rank();
        if consts.len() != k * k {
            return Err(Error::MalformedSpec(format!(
                "ring `{name}`: expected {} structure constants, got {}",
                k * k,
                consts.len()
            )));
        }
        let ranks = group.ranks().to_vec();
        for i in 0..k {
            for j in 0..k {
                let c = consts[i * k + j];
                if c >= group.order() {
                    return Err(Error::MalformedSpec(format!(
                        "ring `{name}`: product {} {} out of range",
                        i + 1,
                        j + 1
                    )));
                }
                if group.scale(ranks[i] as i64, c) != 0 || group.scale(ranks[j] as i64, c) != 0 {
                    return Err(Error::MalformedSpec(format!(
                        "ring `{name}`: product {} {} = {} is not killed by the generator orders {} and {}",
                        i + 1,
                        j + 1,
                        group.fmt_elem(c),
                        ranks[i],
                        ranks[j]
                    )));
                }
            }
        }
        let n = group.order();
        let mut ring = FinRing {
            name,
            group,
            consts,
            left_basis: None,
            table: None,
            associative: false,
            commutative: false,
        };
        if k.saturating_mul(n) <= LEFT_CACHE_LIMIT {
            let cache = crate::par::map(k * n, |idx| ring.basis_times(idx / n, idx % n));
            ring.left_basis = Some(cache);
        }
        if n <= TABLE_LIMIT {
            let mut table = vec![0; n * n];
            for a in 0..n {
                for b in 0..n {
                    table[a * n + b] = ring.mul_slow(a, b);
                }
            }
            ring.table = Some(table);
        }
        ring.commutative = (0..k).all(|i| (0..k).all(|j| ring.consts[i * k + j] == ring.consts[j * k + i]));
        ring.associative = ring.find_nonassociative_triple().is_none();
        Ok(ring)
    }

    /// Ring from ranks and 0-based `(i, j, product vector)` triples; pairs not
    /// listed multiply to zero.
    pub fn from_spec(
        name: impl Into<String>,
        ranks: Vec<u32>,
        products: &[(usize, usize, Vec<i64>)],
        cap: usize,
    ) -> Result<Self> {
        let name = name.into();
        let group = FinAbGroup::new(ranks, cap)?;
        let k = group.rank();
        let mut consts = vec![0; k * k];
        for (i, j, v) in products {
            if *i >= k || *j >= k {
                return Err(Error::MalformedSpec(format!(
                    "ring `{name}`: generator index out of range in product {} {}",
                    i + 1,
                    j + 1
                )));
            }
            if v.len() != k {
                return Err(Error::MalformedSpec(format!(
                    "ring `{name}`: product {} {} has {} components, expected {k}",
                    i + 1,
                    j + 1,
                    v.len()
                )));
            }
            consts[i * k + j] = group.from_digits(v);
        }
        FinRing::new(name, group, consts)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    pub fn structure_constant(&self, i: usize, j: usize) -> Elem {
        self.consts[i * self.rank() + j]
    }

    pub fn is_associative(&self) -> bool {
        self.associative
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn is_zero_ring(&self) -> bool {
        self.order() == 1
    }

    /// Element with the given component vector.
    pub fn elem(&self, v: &[i64]) -> Elem {
        self.group.from_digits(v)
    }

    pub fn fmt_elem(&self, x: Elem) -> String {
        self.group.fmt_elem(x)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.group.add(a, b)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.group.sub(a, b)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.group.neg(a)
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.table {
            Some(t) => t[a * self.order() + b],
            None => self.mul_slow(a, b),
        }
    }

    fn basis_times(&self, i: usize, b: Elem) -> Elem {
        let k = self.rank();
        let mut acc = 0;
        for j in 0..k {
            let bj = self.group.digit(b, j);
            if bj != 0 {
                acc = self.group.add(acc, self.group.scale(bj as i64, self.consts[i * k + j]));
            }
        }
        acc
    }

    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        let n = self.order();
        let mut acc = 0;
        for i in 0..self.rank() {
            let ai = self.group.digit(a, i);
            if ai != 0 {
                let eb = match &self.left_basis {
                    Some(c) => c[i * n + b],
                    None => self.basis_times(i, b),
                };
                acc = self.group.add(acc, self.group.scale(ai as i64, eb));
            }
        }
        acc
    }

    /// First basis triple with `(e_i e_j) e_k != e_i (e_j e_k)`.
    pub fn find_nonassociative_triple(&self) -> Option<(usize, usize, usize)> {
        let k = self.rank();
        let bases = self.group.basis_elems();
        for i in 0..k {
            for j in 0..k {
                let ij = self.consts[i * k + j];
                for l in 0..k {
                    let lhs = self.mul(ij, bases[l]);
                    let rhs = self.mul(bases[i], self.consts[j * k + l]);
                    if lhs != rhs {
                        return Some((i, j, l));
                    }
                }
            }
        }
        None
    }

    pub fn require_associative(&self) -> Result<()> {
        if self.associative {
            Ok(())
        } else {
            Err(Error::NotAssociative(self.name.clone()))
        }
    }

    /// Every element, in index order.
    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FinRing {
        FinRing::from_spec("F2", vec![2], &[(0, 0, vec![1])], 4096).unwrap()
    }

    #[test]
    fn prime_field_flags() {
        let r = f2();
        assert!(r.is_associative() && r.is_commutative());
        assert_eq!(r.mul(1, 1), 1);
        assert_eq!(r.mul(1, 0), 0);
    }

    #[test]
    fn zero_multiplication_ring() {
        let r = FinRing::from_spec("Z", vec![2], &[], 4096).unwrap();
        assert!(r.is_associative() && r.is_commutative());
        assert_eq!(r.mul(1, 1), 0);
    }

    #[test]
    fn rejects_inconsistent_constants() {
        // e_1 of order 2 times anything must be killed by 2
        let e = FinRing::from_spec("bad", vec![2, 3], &[(0, 1, vec![0, 1])], 4096);
        assert!(matches!(e, Err(Error::MalformedSpec(_))));
        let e = FinRing::from_spec("bad", vec![2], &[(0, 0, vec![1, 0])], 4096);
        assert!(matches!(e, Err(Error::MalformedSpec(_))));
    }

    #[test]
    fn nonassociative_detected() {
        // e1 e1 = e2, e1 e2 = 0, e2 e1 = e1 gives (e1 e1) e1 = e2 e1 = e1 != 0 = e1 (e1 e1)
        let r = FinRing::from_spec(
            "na",
            vec![2, 2],
            &[(0, 0, vec![0, 1]), (1, 0, vec![1, 0])],
            4096,
        )
        .unwrap();
        assert!(!r.is_associative());
        assert!(r.require_associative().is_err());
    }

    #[test]
    fn table_and_slow_paths_agree() {
        let r = FinRing::from_spec(
            "Z4",
            vec![4, 2],
            &[(0, 0, vec![1, 0]), (0, 1, vec![0, 1]), (1, 0, vec![0, 1]), (1, 1, vec![0, 1])],
            4096,
        )
        .unwrap();
        for a in r.elements() {
            for b in r.elements() {
                assert_eq!(r.mul(a, b), r.mul_slow(a, b));
            }
        }
    }
}
