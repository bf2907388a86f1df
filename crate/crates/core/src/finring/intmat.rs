//! Small dense integer matrices: Smith normal form with tracked column
//! transforms, and left kernels by unimodular row reduction. Used to put
//! quotients and subgroups of finite abelian groups into cyclic-product form.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i128>], cols: usize) -> Self {
        let mut m = IntMat::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, &x) in r.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i128] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_dst += q * row_src
    fn add_row(&mut self, dst: usize, src: usize, q: i128) {
        for j in 0..self.cols {
            let v = self[(src, j)];
            self[(dst, j)] += q * v;
        }
    }

    /// col_dst += q * col_src
    fn add_col(&mut self, dst: usize, src: usize, q: i128) {
        for i in 0..self.rows {
            let v = self[(i, src)];
            self[(i, dst)] += q * v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = -self[(i, j)];
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            self[(i, j)] = -self[(i, j)];
        }
    }

    /// Row vector times matrix.
    pub fn left_mul(&self, v: &[i128]) -> Vec<i128> {
        assert_eq!(v.len(), self.rows);
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| v[i] * self[(i, j)]).sum())
            .collect()
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                out[(i, j)] = (0..self.cols).map(|k| self[(i, k)] * other[(k, j)]).sum();
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = i128;
    fn index(&self, (i, j): (usize, usize)) -> &i128 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i128 {
        &mut self.data[i * self.cols + j]
    }
}

/// `U * M * V = diag(diagonal)` for some unimodular `U`; only `V` and its
/// inverse are kept.
#[derive(Clone, Debug)]
pub struct Smith {
    /// Length `cols`; entries past `rows` are zero.
    pub diagonal: Vec<i128>,
    pub v: IntMat,
    pub v_inv: IntMat,
}

struct ColOps<'a> {
    m: &'a mut IntMat,
    v: &'a mut IntMat,
    v_inv: &'a mut IntMat,
}

impl ColOps<'_> {
    fn swap(&mut self, a: usize, b: usize) {
        self.m.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    /// col_dst += q * col_src
    fn add(&mut self, dst: usize, src: usize, q: i128) {
        self.m.add_col(dst, src, q);
        self.v.add_col(dst, src, q);
        self.v_inv.add_row(src, dst, -q);
    }

    fn negate(&mut self, j: usize) {
        self.m.negate_col(j);
        self.v.negate_col(j);
        self.v_inv.negate_row(j);
    }
}

fn min_nonzero(m: &IntMat, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..m.rows {
        for j in t..m.cols {
            let x = m[(i, j)].abs();
            if x != 0 && best.is_none_or(|(bi, bj)| x < m[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

pub fn smith(input: &IntMat) -> Smith {
    let (rows, cols) = (input.rows, input.cols);
    let mut m = input.clone();
    let mut v = IntMat::identity(cols);
    let mut v_inv = IntMat::identity(cols);
    let steps = rows.min(cols);
    let mut t = 0;
    while t < steps {
        let Some((pi, pj)) = min_nonzero(&m, t) else {
            break;
        };
        m.swap_rows(t, pi);
        ColOps {
            m: &mut m,
            v: &mut v,
            v_inv: &mut v_inv,
        }
        .swap(t, pj);
        loop {
            let p = m[(t, t)];
            let mut residue = false;
            for i in t + 1..rows {
                if m[(i, t)] != 0 {
                    let q = m[(i, t)] / p;
                    m.add_row(i, t, -q);
                    residue |= m[(i, t)] != 0;
                }
            }
            for j in t + 1..cols {
                if m[(t, j)] != 0 {
                    let q = m[(t, j)] / p;
                    ColOps {
                        m: &mut m,
                        v: &mut v,
                        v_inv: &mut v_inv,
                    }
                    .add(j, t, -q);
                    residue |= m[(t, j)] != 0;
                }
            }
            if residue {
                // bring the smallest remainder in row/col t to the pivot
                let mut best = (t, t);
                for i in t + 1..rows {
                    if m[(i, t)] != 0 && m[(i, t)].abs() < m[best].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if m[(t, j)] != 0 && m[(t, j)].abs() < m[best].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    m.swap_rows(t, best.0);
                } else if best.1 != t {
                    ColOps {
                        m: &mut m,
                        v: &mut v,
                        v_inv: &mut v_inv,
                    }
                    .swap(t, best.1);
                }
                continue;
            }
            let p = m[(t, t)];
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[(i, j)] % p != 0));
            match bad {
                Some(i) => m.add_row(t, i, 1),
                None => break,
            }
        }
        if m[(t, t)] < 0 {
            ColOps {
                m: &mut m,
                v: &mut v,
                v_inv: &mut v_inv,
            }
            .negate(t);
        }
        t += 1;
    }
    let diagonal = (0..cols)
        .map(|i| if i < rows { m[(i, i)] } else { 0 })
        .collect();
    Smith {
        diagonal,
        v,
        v_inv,
    }
}

/// A basis of `{ y : y * M = 0 }` as rows.
pub fn left_kernel(input: &IntMat) -> IntMat {
    let (n, cols) = (input.rows, input.cols);
    let width = cols + n;
    let mut aug = IntMat::zeros(n, width);
    for i in 0..n {
        for j in 0..cols {
            aug[(i, j)] = input[(i, j)];
        }
        aug[(i, cols + i)] = 1;
    }
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        loop {
            let pivot = (r..n)
                .filter(|&i| aug[(i, c)] != 0)
                .min_by_key(|&i| aug[(i, c)].abs());
            let Some(p) = pivot else { break };
            aug.swap_rows(r, p);
            let mut clean = true;
            for i in r + 1..n {
                if aug[(i, c)] != 0 {
                    let q = aug[(i, c)] / aug[(r, c)];
                    aug.add_row(i, r, -q);
                    clean &= aug[(i, c)] == 0;
                }
            }
            if clean {
                break;
            }
        }
        if aug[(r, c)] != 0 {
            r += 1;
        }
    }
    let mut out = IntMat::zeros(n - r, n);
    for (k, i) in (r..n).enumerate() {
        for j in 0..n {
            out[(k, j)] = aug[(i, cols + j)];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_smith(m: &IntMat) {
        let s = smith(m);
        assert_eq!(s.v.mul(&s.v_inv), IntMat::identity(m.cols()));
        let mv = m.mul(&s.v);
        // row space of M V equals row space of diag: every row of M V is a
        // combination of diagonal rows, i.e. entry j divisible by d_j
        for i in 0..mv.rows() {
            for j in 0..mv.cols() {
                let d = s.diagonal[j];
                if d == 0 {
                    assert_eq!(mv[(i, j)], 0);
                } else {
                    assert_eq!(mv[(i, j)] % d, 0);
                }
            }
        }
        let nz: Vec<i128> = s.diagonal.iter().copied().filter(|&d| d != 0).collect();
        for w in nz.windows(2) {
            assert_eq!(w[1] % w[0], 0, "divisibility chain {:?}", s.diagonal);
        }
    }

    #[test]
    fn smith_of_diagonal_with_relation() {
        // Z/2 x Z/4 modulo (1,2)  ~  Z/4
        let m = IntMat::from_rows(&[vec![1, 2], vec![2, 0], vec![0, 4]], 2);
        check_smith(&m);
        let s = smith(&m);
        let prod: i128 = s.diagonal.iter().product();
        assert_eq!(prod, 4);
    }

    #[test]
    fn smith_various() {
        check_smith(&IntMat::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3));
        check_smith(&IntMat::from_rows(&[vec![6, 0], vec![0, 4], vec![3, 2]], 2));
        let s = smith(&IntMat::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3));
        assert_eq!(s.diagonal, vec![2, 6, 12]);
    }

    #[test]
    fn left_kernel_annihilates() {
        let m = IntMat::from_rows(&[vec![1, 1], vec![2, 0], vec![0, 2]], 2);
        let k = left_kernel(&m);
        assert_eq!(k.rows(), 1);
        let prod = k.mul(&m);
        assert!((0..prod.cols()).all(|j| prod[(0, j)] == 0));
        assert_ne!(k.row(0).iter().filter(|&&x| x != 0).count(), 0);
    }
}
