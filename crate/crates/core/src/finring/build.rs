//! Standard ring constructors.

use super::group::{Elem, FinAbGroup};
use super::ring::FinRing;
use crate::error::{Error, Result};

pub fn prime_field(p: u32) -> Result<FinRing> {
    if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
        return Err(Error::BadParams(format!("{p} is not prime")));
    }
    FinRing::from_spec(format!("F{p}"), vec![p], &[(0, 0, vec![1])], usize::MAX)
}

/// The ring on `Z/d_1 x ... x Z/d_k` with all products zero.
pub fn zero_ring(ranks: Vec<u32>, cap: usize) -> Result<FinRing> {
    let name = format!("Zero{ranks:?}");
    FinRing::from_spec(name, ranks, &[], cap)
}

/// Direct product `a x b`; generators of `a` come first.
pub fn product(a: &FinRing, b: &FinRing, cap: usize) -> Result<FinRing> {
    let group = a.group().product(b.group(), cap)?;
    let (ka, kb) = (a.rank(), b.rank());
    let k = ka + kb;
    let mut consts = vec![0; k * k];
    let embed_a = |x: Elem| x * b.order();
    for i in 0..ka {
        for j in 0..ka {
            consts[i * k + j] = embed_a(a.structure_constant(i, j));
        }
    }
    for i in 0..kb {
        for j in 0..kb {
            consts[(ka + i) * k + ka + j] = b.structure_constant(i, j);
        }
    }
    FinRing::new(format!("{}x{}", a.name(), b.name()), group, consts)
}

/// `a^n` with componentwise operations; copy `i` occupies generators
/// `i * rank(a) ..`.
pub fn power(a: &FinRing, n: usize, cap: usize) -> Result<FinRing> {
    let mut ranks = Vec::with_capacity(a.rank() * n);
    for _ in 0..n {
        ranks.extend_from_slice(a.group().ranks());
    }
    let group = FinAbGroup::new(ranks, cap)?;
    let ka = a.rank();
    let k = ka * n;
    let mut consts = vec![0; k * k];
    for c in 0..n {
        for i in 0..ka {
            for j in 0..ka {
                let digits = a.group().digits(a.structure_constant(i, j));
                let mut v = vec![0i64; k];
                for (t, d) in digits.into_iter().enumerate() {
                    v[c * ka + t] = d as i64;
                }
                consts[(c * ka + i) * k + c * ka + j] = group.from_digits(&v);
            }
        }
    }
    FinRing::new(format!("{}^{}", a.name(), n), group, consts)
}

/// `n x n` matrices over `a`. Generator `(i, j, t)` is `E_ij` times the
/// `t`-th generator of `a`, at position `(i * n + j) * rank(a) + t`.
pub fn matrix_ring(a: &FinRing, n: usize, cap: usize) -> Result<FinRing> {
    let ka = a.rank();
    let mut ranks = Vec::with_capacity(n * n * ka);
    for _ in 0..n * n {
        ranks.extend_from_slice(a.group().ranks());
    }
    let group = FinAbGroup::new(ranks, cap)?;
    let k = n * n * ka;
    let mut consts = vec![0; k * k];
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                for s in 0..ka {
                    for t in 0..ka {
                        let digits = a.group().digits(a.structure_constant(s, t));
                        let mut v = vec![0i64; k];
                        for (u, d) in digits.into_iter().enumerate() {
                            v[(i * n + l) * ka + u] = d as i64;
                        }
                        let row = (i * n + j) * ka + s;
                        let col = (j * n + l) * ka + t;
                        consts[row * k + col] = group.from_digits(&v);
                    }
                }
            }
        }
    }
    FinRing::new(format!("M{}({})", n, a.name()), group, consts)
}

fn poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    // den monic
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    while r.len() > dd {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dd;
        for (i, &c) in den.iter().enumerate() {
            let idx = shift + i;
            r[idx] = (r[idx] + p - (lead * c) % p) % p;
        }
        r.pop();
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

fn monic_polys(deg: usize, p: u32) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as usize).pow(deg as u32);
    (0..count).map(move |mut idx| {
        let mut v = vec![0u32; deg + 1];
        for c in v.iter_mut().take(deg) {
            *c = (idx % p as usize) as u32;
            idx /= p as usize;
        }
        v[deg] = 1;
        v
    })
}

/// First monic irreducible polynomial of degree `n` over `F_p`, lowest
/// coefficient first.
pub fn irreducible_poly(p: u32, n: usize) -> Vec<u32> {
    monic_polys(n, p)
        .find(|f| {
            (1..=n / 2).all(|d| monic_polys(d, p).all(|g| !poly_rem(f, &g, p).is_empty()))
        })
        .expect("irreducible polynomials exist in every degree")
}

/// The field with `p^n` elements as `F_p[x]/(f)`; component `i` is the
/// coefficient of `x^i`.
pub fn galois_field(p: u32, n: usize, cap: usize) -> Result<FinRing> {
    prime_field(p)?;
    if n == 0 {
        return Err(Error::BadParams("extension degree must be positive".into()));
    }
    let order = (p as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if order > cap as u128 {
        return Err(Error::cap("field order", order, cap));
    }
    let f = irreducible_poly(p, n);
    let mut products = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut mono = vec![0u32; i + j + 1];
            mono[i + j] = 1;
            let mut rem = poly_rem(&mono, &f, p);
            rem.resize(n, 0);
            products.push((i, j, rem.into_iter().map(i64::from).collect()));
        }
    }
    let name = if n == 1 {
        format!("F{p}")
    } else {
        format!("F{}", p.pow(n as u32))
    };
    FinRing::from_spec(name, vec![p; n], &products, cap)
}

/// `x -> x^p` as an element table.
pub fn frobenius(r: &FinRing, p: u32) -> Vec<Elem> {
    r.elements()
        .map(|x| {
            let mut y = x;
            for _ in 1..p {
                y = r.mul(y, x);
            }
            y
        })
        .collect()
}

/// Multiplicative identity, if the ring has one.
pub fn one(r: &FinRing) -> Option<Elem> {
    let bases = r.group().basis_elems();
    r.elements()
        .find(|&e| bases.iter().all(|&b| r.mul(e, b) == b && r.mul(b, e) == b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::predicates::{is_simple, unitality};

    #[test]
    fn matrix_ring_flags() {
        let m = matrix_ring(&prime_field(2).unwrap(), 2, 4096).unwrap();
        assert_eq!(m.order(), 16);
        assert!(m.is_associative());
        assert!(!m.is_commutative());
        assert_eq!(one(&m), Some(m.elem(&[1, 0, 0, 1])));
    }

    #[test]
    fn galois_fields_are_fields() {
        for (p, n) in [(2, 2), (2, 3), (3, 2), (5, 1)] {
            let f = galois_field(p, n, 4096).unwrap();
            assert!(f.is_associative() && f.is_commutative());
            let one = one(&f).unwrap();
            for x in f.elements().skip(1) {
                assert!(f.elements().any(|y| f.mul(x, y) == one), "{p}^{n}: {x} not invertible");
            }
            assert!(is_simple(&f));
            let fr = frobenius(&f, p);
            let mut sorted = fr.clone();
            sorted.sort();
            assert_eq!(sorted, f.elements().collect::<Vec<_>>());
        }
    }

    #[test]
    fn products_and_powers() {
        let f3 = prime_field(3).unwrap();
        let f2 = prime_field(2).unwrap();
        let r = product(&f2, &f3, 4096).unwrap();
        assert_eq!(r.order(), 6);
        assert!(unitality(&r).unital);
        let p = power(&f2, 3, 4096).unwrap();
        assert_eq!(one(&p), Some(7));
        assert!(prime_field(4).is_err());
    }
}
