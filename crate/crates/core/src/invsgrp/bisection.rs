use std::collections::HashMap;
use std::sync::Arc;

use super::groupoid::{FinGroupoid, Mor, Obj};
use super::semigroup::{InverseSemigroup, SElem};
use crate::error::{Error, Result};

/// Largest `|G_1|` whose subsets are enumerated.
pub const DEFAULT_BISECTION_CAP: usize = 12;
/// Largest number of bisections accepted; validating the Cayley table is
/// cubic in this number.
pub const MAX_BISECTIONS: usize = 512;

/// The inverse semigroup `G^a` of all bisections of a finite discrete
/// groupoid, elements stored as bit masks over `G_1`.
#[derive(Clone, Debug)]
pub struct BisectionSemigroup {
    pub groupoid: Arc<FinGroupoid>,
    pub semigroup: Arc<InverseSemigroup>,
    masks: Vec<u64>,
    index: HashMap<u64, SElem>,
}

pub fn is_bisection(g: &FinGroupoid, mask: u64) -> bool {
    let (mut ds, mut cs) = (0u64, 0u64);
    for m in g.morphisms() {
        if mask >> m & 1 == 1 {
            let (d, c) = (1u64 << g.dom(m), 1u64 << g.cod(m));
            if ds & d != 0 || cs & c != 0 {
                return false;
            }
            ds |= d;
            cs |= c;
        }
    }
    true
}

pub fn mask_product(g: &FinGroupoid, u: u64, v: u64) -> u64 {
    let mut out = 0;
    for a in g.morphisms().filter(|&a| u >> a & 1 == 1) {
        for b in g.morphisms().filter(|&b| v >> b & 1 == 1) {
            if let Some(ab) = g.compose(a, b) {
                out |= 1 << ab;
            }
        }
    }
    out
}

pub fn mask_inverse(g: &FinGroupoid, u: u64) -> u64 {
    g.morphisms()
        .filter(|&a| u >> a & 1 == 1)
        .fold(0, |acc, a| acc | 1 << g.inverse(a))
}

pub fn mask_label(g: &FinGroupoid, u: u64) -> String {
    if u == 0 {
        return "0".to_string();
    }
    let parts: Vec<&str> = g
        .morphisms()
        .filter(|&a| u >> a & 1 == 1)
        .map(|a| g.label(a))
        .collect();
    parts.join("|")
}

impl BisectionSemigroup {
    pub fn new(groupoid: Arc<FinGroupoid>, cap: usize) -> Result<Self> {
        let n = groupoid.size();
        if n > cap.min(63) {
            return Err(Error::cap("groupoid morphisms for bisections", n as u128, cap.min(63)));
        }
        let mut masks: Vec<u64> = (0..1u64 << n).filter(|&m| is_bisection(&groupoid, m)).collect();
        if masks.len() > MAX_BISECTIONS {
            return Err(Error::cap("bisections", masks.len() as u128, MAX_BISECTIONS));
        }
        masks.sort_by_key(|&m| (m.count_ones(), m));
        let index: HashMap<u64, SElem> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let k = masks.len();
        let mut table = vec![0; k * k];
        for (i, &u) in masks.iter().enumerate() {
            for (j, &v) in masks.iter().enumerate() {
                let w = mask_product(&groupoid, u, v);
                table[i * k + j] = *index.get(&w).ok_or_else(|| {
                    Error::InternalInconsistency(format!(
                        "product of bisections {} and {} is not a bisection",
                        mask_label(&groupoid, u),
                        mask_label(&groupoid, v)
                    ))
                })?;
            }
        }
        let labels = masks.iter().map(|&m| mask_label(&groupoid, m)).collect();
        let semigroup = InverseSemigroup::new(labels, table)?;
        let b = BisectionSemigroup {
            groupoid,
            semigroup: Arc::new(semigroup),
            masks,
            index,
        };
        b.cross_check()?;
        Ok(b)
    }

    fn cross_check(&self) -> Result<()> {
        let g = &self.groupoid;
        let s = &self.semigroup;
        let units = (1u64 << g.object_count()) - 1;
        for (i, &u) in self.masks.iter().enumerate() {
            if self.masks[s.star(i)] != mask_inverse(g, u) {
                return Err(Error::InternalInconsistency(format!(
                    "star of {} is not its inverse set",
                    s.label(i)
                )));
            }
            if s.is_idempotent(i) != (u & !units == 0) {
                return Err(Error::InternalInconsistency(format!(
                    "idempotency of {} disagrees with containment in the objects",
                    s.label(i)
                )));
            }
            for (j, &v) in self.masks.iter().enumerate() {
                if s.natural_le(i, j) != (u & !v == 0) {
                    return Err(Error::InternalInconsistency(format!(
                        "order {} <= {} disagrees with inclusion",
                        s.label(i),
                        s.label(j)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn mask(&self, s: SElem) -> u64 {
        self.masks[s]
    }

    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    pub fn index_of_mask(&self, m: u64) -> Option<SElem> {
        self.index.get(&m).copied()
    }

    pub fn members(&self, s: SElem) -> Vec<Mor> {
        let u = self.masks[s];
        self.groupoid.morphisms().filter(|&a| u >> a & 1 == 1).collect()
    }

    /// `c(U)` as an object mask.
    pub fn range(&self, s: SElem) -> u64 {
        self.members(s)
            .into_iter()
            .fold(0, |acc, a| acc | 1 << self.groupoid.cod(a))
    }

    /// `d(U)` as an object mask.
    pub fn source(&self, s: SElem) -> u64 {
        self.members(s)
            .into_iter()
            .fold(0, |acc, a| acc | 1 << self.groupoid.dom(a))
    }

    /// `theta_U`: object `x` in `d(U)` to `c(g)` for the `g` in `U` with `d(g) = x`.
    pub fn theta(&self, s: SElem, x: Obj) -> Option<Obj> {
        self.members(s)
            .into_iter()
            .find(|&a| self.groupoid.dom(a) == x)
            .map(|a| self.groupoid.cod(a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bis(g: FinGroupoid) -> BisectionSemigroup {
        BisectionSemigroup::new(Arc::new(g), DEFAULT_BISECTION_CAP).unwrap()
    }

    #[test]
    fn bisection_counts() {
        assert_eq!(bis(FinGroupoid::discrete(1).unwrap()).len(), 2);
        let b = bis(FinGroupoid::pair(2).unwrap());
        assert_eq!(b.len(), 7);
        assert!(b.semigroup.index_of("e12|e21").is_some());
        assert!(b.semigroup.index_of("1|2").is_some());
        assert_eq!(b.semigroup.label(0), "0");
        assert_eq!(bis(FinGroupoid::pair(3).unwrap()).len(), 34);
        assert_eq!(bis(FinGroupoid::cyclic(2).unwrap()).len(), 3);
    }

    #[test]
    fn theta_moves_objects() {
        let b = bis(FinGroupoid::pair(2).unwrap());
        let u = b.semigroup.index_of("e21").unwrap();
        assert_eq!(b.theta(u, 0), Some(1));
        assert_eq!(b.theta(u, 1), None);
    }

    #[test]
    fn cap_enforced() {
        let g = FinGroupoid::discrete(13).unwrap();
        assert!(BisectionSemigroup::new(Arc::new(g), DEFAULT_BISECTION_CAP).unwrap_err().is_cap());
    }
}
