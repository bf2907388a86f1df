use std::sync::Arc;

use super::action::{ga_partial_action, FunctionRing};
use super::algebra::SteinbergAlgebra;
use crate::error::Result;
use crate::finring::{Elem, FinRing};
use crate::invsgrp::{BisectionSemigroup, FinGroupoid};
use crate::paction::PartialAction;
use crate::skew::SkewRing;

/// `α: L_c(G_0) ⋊_π G^a → A_K(G)` and `β` in the other direction, both as
/// full tables.
#[derive(Clone, Debug)]
pub struct Translation {
    pub algebra: Arc<SteinbergAlgebra>,
    pub functions: Arc<FunctionRing>,
    pub bisections: Arc<BisectionSemigroup>,
    pub skew: SkewRing,
    /// Indexed by quotient elements.
    pub alpha: Vec<Elem>,
    /// Indexed by elements of `A_K(G)`, using fibre decompositions.
    pub beta: Vec<Elem>,
}

/// Splits the support of a function into `(value, bisection mask)` pieces:
/// for each nonzero value in order of first appearance, its preimage is
/// scanned in morphism order and a new bisection is opened whenever the
/// next morphism would repeat a domain or codomain.
pub fn fibre_decomposition(g: &FinGroupoid, values: &[Elem]) -> Vec<(Elem, u64)> {
    let mut distinct: Vec<Elem> = Vec::new();
    for &v in values {
        if v != 0 && !distinct.contains(&v) {
            distinct.push(v);
        }
    }
    let mut out = Vec::new();
    for k in distinct {
        let (mut mask, mut ds, mut cs) = (0u64, 0u64, 0u64);
        for m in g.morphisms().filter(|&m| values[m] == k) {
            let (d, c) = (1u64 << g.dom(m), 1u64 << g.cod(m));
            if ds & d != 0 || cs & c != 0 {
                out.push((k, mask));
                (mask, ds, cs) = (0, 0, 0);
            }
            mask |= 1 << m;
            ds |= d;
            cs |= c;
        }
        if mask != 0 {
            out.push((k, mask));
        }
    }
    out
}

/// One piece per morphism in the support.
pub fn singleton_decomposition(g: &FinGroupoid, values: &[Elem]) -> Vec<(Elem, u64)> {
    g.morphisms()
        .filter(|&m| values[m] != 0)
        .map(|m| (values[m], 1u64 << m))
        .collect()
}

impl Translation {
    /// The quotient is built within `cap`; `L_π` itself is never enumerated
    /// unless it also fits.
    pub fn new(algebra: Arc<SteinbergAlgebra>, bisections: Arc<BisectionSemigroup>, cap: usize) -> Result<Self> {
        let functions = Arc::new(FunctionRing::new(
            algebra.coeff.clone(),
            algebra.groupoid.object_count(),
            cap,
        )?);
        let action = ga_partial_action(&functions, &bisections)?;
        Translation::from_action(algebra, functions, bisections, Arc::new(action), cap)
    }

    pub fn from_action(
        algebra: Arc<SteinbergAlgebra>,
        functions: Arc<FunctionRing>,
        bisections: Arc<BisectionSemigroup>,
        action: Arc<PartialAction>,
        cap: usize,
    ) -> Result<Self> {
        let skew = SkewRing::new(action, cap)?;
        let mut t = Translation {
            algebra,
            functions,
            bisections,
            skew,
            alpha: Vec::new(),
            beta: Vec::new(),
        };
        t.alpha = crate::par::map(t.skew.ring.order(), |q| t.alpha_of_vec(&t.skew.representative(q)));
        t.beta = crate::par::map(t.algebra.order(), |f| {
            t.beta_of(&fibre_decomposition(&t.algebra.groupoid, &t.algebra.values(f)))
        });
        Ok(t)
    }

    pub fn quotient(&self) -> &FinRing {
        &self.skew.ring
    }

    /// `α` on a coordinate vector of `L_π`: `f δ_B ↦ (x ↦ f(c(x)))` on `B`.
    pub fn alpha_of_vec(&self, v: &[i128]) -> Elem {
        let k = &*self.algebra.coeff;
        let g = &*self.algebra.groupoid;
        let mut out = vec![0; g.size()];
        for u in self.bisections.semigroup.elements() {
            let f = self.skew.sym.coefficient(v, u);
            if f == 0 {
                continue;
            }
            let vals = self.functions.values(f);
            for m in self.bisections.members(u) {
                out[m] = k.add(out[m], vals[g.cod(m)]);
            }
        }
        self.algebra.from_values(&out)
    }

    /// `Σ_j \overline{(k_j)_{c(B_j)} δ_{B_j}}`.
    pub fn beta_of(&self, pieces: &[(Elem, u64)]) -> Elem {
        let q = &*self.skew.ring;
        pieces.iter().fold(0, |acc, &(k, mask)| {
            let u = self.bisections.index_of_mask(mask).expect("pieces are bisections");
            let f = self.functions.constant_on(k, self.bisections.range(u));
            q.add(acc, self.skew.class_of(u, f).expect("k_{c(U)} lies in D_U"))
        })
    }

    /// First function whose fibre and singleton decompositions have
    /// different images.
    pub fn decomposition_failure(&self) -> Option<String> {
        let a = &self.algebra;
        crate::par::find_map_first(a.order(), |f| {
            let vals = a.values(f);
            let single = self.beta_of(&singleton_decomposition(&a.groupoid, &vals));
            (single != self.beta[f]).then(|| format!("decompositions of {} disagree", a.ring.fmt_elem(f)))
        })
    }

    /// First failure of: `α` vanishing on the relation ideal, `α ∘ β = id`,
    /// `β ∘ α = id`, and both maps being additive and multiplicative.
    pub fn round_trip_failure(&self) -> Option<String> {
        let a = &*self.algebra.ring;
        let q = &*self.skew.ring;
        if self.skew.relation_ideal.rows().iter().any(|r| self.alpha_of_vec(r) != 0) {
            return Some("alpha does not vanish on the relation ideal".into());
        }
        if let Some(f) = a.elements().find(|&f| self.alpha[self.beta[f]] != f) {
            return Some(format!("alpha(beta({})) differs", a.fmt_elem(f)));
        }
        if let Some(x) = q.elements().find(|&x| self.beta[self.alpha[x]] != x) {
            return Some(format!("beta(alpha({})) differs", q.fmt_elem(x)));
        }
        hom_failure(q, a, &self.alpha, "alpha").or_else(|| hom_failure(a, q, &self.beta, "beta"))
    }
}

fn hom_failure(src: &FinRing, dst: &FinRing, map: &[Elem], name: &str) -> Option<String> {
    let basis = src.group().basis_elems();
    let additive = crate::par::find_map_first(src.order(), |x| {
        basis
            .iter()
            .find(|&&b| map[src.add(x, b)] != dst.add(map[x], map[b]))
            .map(|&b| format!("{name} is not additive at {} + {}", src.fmt_elem(x), src.fmt_elem(b)))
    });
    additive.or_else(|| {
        for &x in &basis {
            for &y in &basis {
                if map[src.mul(x, y)] != dst.mul(map[x], map[y]) {
                    return Some(format!(
                        "{name} is not multiplicative at {} * {}",
                        src.fmt_elem(x),
                        src.fmt_elem(y)
                    ));
                }
            }
        }
        None
    })
}
