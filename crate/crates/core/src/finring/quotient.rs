use super::group::{Elem, FinAbGroup};
use super::ideal::{absorbs, Ideal, Side};
use super::intmat::{smith, IntMat};
use super::ring::FinRing;
use super::subgroup::Subgroup;
use crate::error::{Error, Result};

/// `R / I` together with the projection and canonical coset representatives.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub ring: FinRing,
    proj: Vec<Elem>,
    reps: Vec<Elem>,
}

impl Quotient {
    #[inline]
    pub fn project(&self, x: Elem) -> Elem {
        self.proj[x]
    }

    /// Lexicographically smallest element of the coset `q`.
    #[inline]
    pub fn representative(&self, q: Elem) -> Elem {
        self.reps[q]
    }

    pub fn projection_table(&self) -> &[Elem] {
        &self.proj
    }
}

/// Quotient of `r` by a subgroup `i` that must be a two-sided ideal.
pub fn quotient_ring(r: &FinRing, i: &Ideal) -> Result<Quotient> {
    quotient_by(r, &i.group)
}

pub fn quotient_by(r: &FinRing, i: &Subgroup) -> Result<Quotient> {
    let whole = Subgroup::whole(r.group());
    if let Some((a, b)) = absorbs(r, i, &whole, Side::Both) {
        return Err(Error::IllDefinedProduct(format!(
            "{} * {} leaves the ideal",
            r.fmt_elem(a),
            r.fmt_elem(b)
        )));
    }
    let g = r.group();
    let k = g.rank();
    let mut rows: Vec<Vec<i128>> = i
        .basis()
        .iter()
        .map(|&x| g.digits(x).into_iter().map(i128::from).collect())
        .collect();
    for (j, &d) in g.ranks().iter().enumerate() {
        let mut row = vec![0i128; k];
        row[j] = d as i128;
        rows.push(row);
    }
    let s = smith(&IntMat::from_rows(&rows, k));
    let kept: Vec<usize> = (0..k).filter(|&j| s.diagonal[j] != 1).collect();
    let qranks: Vec<u32> = kept
        .iter()
        .map(|&j| {
            assert!(s.diagonal[j] > 1, "finite group quotient has positive invariants");
            s.diagonal[j] as u32
        })
        .collect();
    let qg = FinAbGroup::new(qranks, usize::MAX)?;

    let project = |x: Elem| -> Elem {
        let digits: Vec<i128> = g.digits(x).into_iter().map(i128::from).collect();
        let y = s.v.left_mul(&digits);
        let coords: Vec<i128> = kept.iter().map(|&j| y[j]).collect();
        qg.from_digits(&coords)
    };
    let proj: Vec<Elem> = crate::par::map(r.order(), project);

    let mut reps = vec![usize::MAX; qg.order()];
    for (x, &q) in proj.iter().enumerate() {
        if reps[q] == usize::MAX {
            reps[q] = x;
        }
    }
    if reps.contains(&usize::MAX) || i.elements().iter().any(|&x| proj[x] != 0) {
        return Err(Error::InternalInconsistency(
            "quotient projection is not onto or does not kill the ideal".into(),
        ));
    }
    let kernel = proj.iter().filter(|&&q| q == 0).count();
    if kernel != i.order() {
        return Err(Error::InternalInconsistency(format!(
            "quotient kernel has {kernel} elements, ideal has {}",
            i.order()
        )));
    }

    // quotient generator f_t is the image of row `kept[t]` of V^{-1}
    let lifts: Vec<Elem> = kept
        .iter()
        .map(|&j| {
            let row: Vec<i128> = s.v_inv.row(j).to_vec();
            g.from_digits(&row)
        })
        .collect();
    let qk = lifts.len();
    let mut consts = vec![0; qk * qk];
    for a in 0..qk {
        for b in 0..qk {
            consts[a * qk + b] = proj[r.mul(lifts[a], lifts[b])];
        }
    }
    let ring = FinRing::new(format!("{}/I", r.name()), qg, consts)?;
    Ok(Quotient { ring, proj, reps })
}
