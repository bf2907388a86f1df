use crate::error::{Error, Result};

/// Index of an element of a [`FinAbGroup`]: the mixed-radix encoding of its
/// component vector, first component most significant. Index order is
/// therefore lexicographic order on vectors.
pub type Elem = usize;

/// Default cap on the order of any enumerated group or ring.
pub const DEFAULT_CAP: usize = 4096;

/// Product of cyclic groups `Z/d_1 x ... x Z/d_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinAbGroup {
    ranks: Vec<u32>,
    strides: Vec<usize>,
    order: usize,
    // every d_i is 2, so addition is xor on indices
    elementary2: bool,
}

impl FinAbGroup {
    pub fn new(ranks: Vec<u32>, cap: usize) -> Result<Self> {
        if let Some(i) = ranks.iter().position(|&d| d == 0) {
            return Err(Error::MalformedSpec(format!("rank {} is zero", i + 1)));
        }
        let mut order: u128 = 1;
        for &d in &ranks {
            order = order.saturating_mul(d as u128);
        }
        if order > cap as u128 {
            return Err(Error::cap("group order", order, cap));
        }
        let k = ranks.len();
        let mut strides = vec![1usize; k];
        for i in (0..k.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * ranks[i + 1] as usize;
        }
        let elementary2 = ranks.iter().all(|&d| d == 2);
        Ok(FinAbGroup {
            ranks,
            strides,
            order: order as usize,
            elementary2,
        })
    }

    pub fn trivial() -> Self {
        FinAbGroup {
            ranks: Vec::new(),
            strides: Vec::new(),
            order: 1,
            elementary2: true,
        }
    }

    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }

    pub fn rank(&self) -> usize {
        self.ranks.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn digit(&self, x: Elem, i: usize) -> u32 {
        ((x / self.strides[i]) % self.ranks[i] as usize) as u32
    }

    pub fn digits(&self, x: Elem) -> Vec<u32> {
        (0..self.rank()).map(|i| self.digit(x, i)).collect()
    }

    /// Encodes an integer vector, reducing each component into range.
    pub fn from_digits<T: Copy + Into<i128>>(&self, v: &[T]) -> Elem {
        debug_assert_eq!(v.len(), self.rank());
        v.iter()
            .zip(&self.ranks)
            .zip(&self.strides)
            .map(|((&c, &d), &st)| (c.into().rem_euclid(d as i128) as usize) * st)
            .sum()
    }

    /// The `i`-th standard generator.
    pub fn basis(&self, i: usize) -> Elem {
        if self.ranks[i] == 1 {
            0
        } else {
            self.strides[i]
        }
    }

    pub fn basis_elems(&self) -> Vec<Elem> {
        (0..self.rank()).map(|i| self.basis(i)).collect()
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.elementary2 {
            return a ^ b;
        }
        let mut out = 0;
        for i in 0..self.ranks.len() {
            let d = self.ranks[i] as usize;
            let st = self.strides[i];
            out += ((a / st % d + b / st % d) % d) * st;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.elementary2 {
            return a;
        }
        let mut out = 0;
        for i in 0..self.ranks.len() {
            let d = self.ranks[i] as usize;
            let st = self.strides[i];
            out += ((d - a / st % d) % d) * st;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// `n * a` for any integer `n`.
    pub fn scale(&self, n: i64, a: Elem) -> Elem {
        if self.elementary2 {
            return if n.rem_euclid(2) == 1 { a } else { 0 };
        }
        let mut out = 0;
        for i in 0..self.ranks.len() {
            let d = self.ranks[i] as i64;
            let st = self.strides[i];
            let c = (a / st) as i64 % d;
            out += ((c * n.rem_euclid(d)).rem_euclid(d) as usize) * st;
        }
        out
    }

    /// Additive order of `a`.
    pub fn elem_order(&self, a: Elem) -> usize {
        let mut n = 1;
        let mut x = a;
        while x != 0 {
            x = self.add(x, a);
            n += 1;
        }
        n
    }

    pub fn fmt_elem(&self, x: Elem) -> String {
        let parts: Vec<String> = self.digits(x).iter().map(|d| d.to_string()).collect();
        format!("({})", parts.join(","))
    }

    /// Concatenation `self x other`; elements of `self` occupy the most
    /// significant digits.
    pub fn product(&self, other: &FinAbGroup, cap: usize) -> Result<FinAbGroup> {
        let mut ranks = self.ranks.clone();
        ranks.extend_from_slice(&other.ranks);
        FinAbGroup::new(ranks, cap)
    }
}
