//! Dense matrices over `F_q` with row-vector conventions: a vector is a row,
//! and a matrix acts on it from the right.

use std::fmt;

use crate::fields::BaseField;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat({}x{})[", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, " / ")?;
            }
            for c in 0..self.cols {
                write!(f, "{}", self.get(r, c))?;
                if c + 1 < self.cols {
                    write!(f, ",")?;
                }
            }
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<u32>) -> Mat {
        assert_eq!(data.len(), rows * cols);
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Mat {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        Mat {
            rows: rows.len(),
            cols,
            data,
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, rhs: &Mat, f: &BaseField) -> Mat {
        assert_eq!(self.cols, rhs.rows, "matrix product shape");
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let rrow = rhs.row(k);
                let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, &b) in orow.iter_mut().zip(rrow) {
                    if b != 0 {
                        *o = f.add(*o, f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[u32], f: &BaseField) -> Vec<u32> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![0u32; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.row(k)) {
                if b != 0 {
                    *o = f.add(*o, f.mul(a, b));
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Mat, f: &BaseField) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Mat, f: &BaseField) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: u32, f: &BaseField) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    pub fn hstack(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.rows, rhs.rows);
        let cols = self.cols + rhs.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(rhs.row(r));
        }
        Mat {
            rows: self.rows,
            cols,
            data,
        }
    }

    pub fn vstack(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&rhs.data);
        Mat {
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        let mut out = Mat::zeros(rows, cols);
        for r in 0..rows {
            out.data[r * cols..(r + 1) * cols]
                .copy_from_slice(&self.row(r0 + r)[c0..c0 + cols]);
        }
        out
    }

    pub fn from_blocks(a: &Mat, b: &Mat, c: &Mat, d: &Mat) -> Mat {
        a.hstack(b).vstack(&c.hstack(d))
    }

    pub fn block_diag(a: &Mat, d: &Mat) -> Mat {
        Mat::from_blocks(
            a,
            &Mat::zeros(a.rows, d.cols),
            &Mat::zeros(d.rows, a.cols),
            d,
        )
    }

    /// Reduced row-echelon form in place; returns the pivot columns.
    /// Zero rows end up at the bottom.
    pub fn rref_in_place(&mut self, f: &BaseField) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c));
            if inv != 1 {
                for j in c..self.cols {
                    let v = self.get(r, j);
                    self.set(r, j, f.mul(v, inv));
                }
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor == 0 {
                    continue;
                }
                let nf = f.neg(factor);
                for j in c..self.cols {
                    let v = self.get(r, j);
                    if v != 0 {
                        let cur = self.get(i, j);
                        self.set(i, j, f.add(cur, f.mul(nf, v)));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self, f: &BaseField) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place(f);
        (m, p)
    }

    pub fn rank(&self, f: &BaseField) -> usize {
        self.rref(f).1.len()
    }

    /// RREF restricted to its nonzero rows: a canonical basis of the row space.
    pub fn row_space(&self, f: &BaseField) -> Mat {
        let (m, p) = self.rref(f);
        m.block(0, 0, p.len(), m.cols)
    }

    pub fn inverse(&self, f: &BaseField) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let aug = self.hstack(&Mat::identity(n));
        let (m, pivots) = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(m.block(0, n, n, n))
    }

    /// Basis (as rows) of `{x : self · xᵀ = 0}`.
    pub fn right_nullspace(&self, f: &BaseField) -> Mat {
        let (m, pivots) = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Mat::zeros(free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, 1);
            for (r, &pc) in pivots.iter().enumerate() {
                out.set(k, pc, f.neg(m.get(r, fc)));
            }
        }
        out
    }

    /// Basis (as rows) of `{x : x · self = 0}`.
    pub fn left_nullspace(&self, f: &BaseField) -> Mat {
        self.transpose().right_nullspace(f)
    }

    /// Characteristic polynomial `det(xI - A)`, little-endian and monic.
    pub fn char_poly(&self, f: &BaseField) -> Vec<u32> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut h = self.clone();
        // Similarity reduction to upper Hessenberg form.
        for c in 0..n.saturating_sub(2) {
            let Some(pr) = (c + 1..n).find(|&i| h.get(i, c) != 0) else {
                continue;
            };
            if pr != c + 1 {
                for j in 0..n {
                    h.data.swap(pr * n + j, (c + 1) * n + j);
                }
                for i in 0..n {
                    h.data.swap(i * n + pr, i * n + c + 1);
                }
            }
            let inv = f.inv(h.get(c + 1, c));
            for i in c + 2..n {
                let factor = f.mul(h.get(i, c), inv);
                if factor == 0 {
                    continue;
                }
                // row_i -= factor * row_{c+1}
                for j in 0..n {
                    let v = f.sub(h.get(i, j), f.mul(factor, h.get(c + 1, j)));
                    h.set(i, j, v);
                }
                // col_{c+1} += factor * col_i
                for j in 0..n {
                    let v = f.add(h.get(j, c + 1), f.mul(factor, h.get(j, i)));
                    h.set(j, c + 1, v);
                }
            }
        }
        // p_k = (x - h_kk) p_{k-1} - Σ_{i<k} h_ik (Π_{j=i+1..k} h_{j,j-1}) p_{i-1}
        let mut polys: Vec<Vec<u32>> = vec![vec![1]];
        for k in 0..n {
            let prev = &polys[k];
            let mut next = vec![0u32; k + 2];
            for (d, &c) in prev.iter().enumerate() {
                next[d + 1] = f.add(next[d + 1], c);
                next[d] = f.sub(next[d], f.mul(h.get(k, k), c));
            }
            let mut prod = 1u32;
            for i in (0..k).rev() {
                prod = f.mul(prod, h.get(i + 1, i));
                let coef = f.mul(h.get(i, k), prod);
                if coef == 0 {
                    continue;
                }
                for (d, &c) in polys[i].iter().enumerate() {
                    next[d] = f.sub(next[d], f.mul(coef, c));
                }
            }
            polys.push(next);
        }
        polys.pop().unwrap()
    }
}

/// All `k × n` matrices in reduced row-echelon form of rank `k` over `F_q`,
/// i.e. one canonical basis for every `k`-subspace of `F_q^n`. Sorted.
pub fn grassmannian(k: usize, n: usize, f: &BaseField) -> Vec<Mat> {
    let q = f.order();
    let mut out = Vec::new();
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        // free positions: (row r, col c) with c > pivot[r], c not a pivot
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| {
                let pr = pivots[r];
                let piv = &pivots;
                (pr + 1..n)
                    .filter(move |c| !piv.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let mut vals = vec![0u32; free.len()];
        loop {
            let mut m = Mat::zeros(k, n);
            for (r, &pc) in pivots.iter().enumerate() {
                m.set(r, pc, 1);
            }
            for (&(r, c), &v) in free.iter().zip(&vals) {
                m.set(r, c, v);
            }
            out.push(m);
            // odometer
            let mut i = 0;
            while i < vals.len() {
                vals[i] += 1;
                if vals[i] < q {
                    break;
                }
                vals[i] = 0;
                i += 1;
            }
            if i == vals.len() {
                break;
            }
        }
        // next pivot combination
        let mut i = k;
        loop {
            if i == 0 {
                out.sort();
                return out;
            }
            i -= 1;
            if pivots[i] < n - k + i {
                pivots[i] += 1;
                for j in i + 1..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Gaussian binomial coefficient `[n choose k]_q`, saturating.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        let a = (q as u128).checked_pow(n - i).map(|x| x - 1);
        let b = (q as u128).checked_pow(i + 1).map(|x| x - 1);
        match (a, b, num.checked_mul(a.unwrap_or(0))) {
            (Some(_), Some(b), Some(n2)) => {
                num = n2;
                den *= b;
                let g = gcd(num, den);
                num /= g;
                den /= g;
            }
            _ => return u128::MAX,
        }
    }
    num / den
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// `|GL_n(q)|`, saturating.
pub fn gl_order(n: u32, q: u64) -> u128 {
    let qn = match (q as u128).checked_pow(n) {
        Some(v) => v,
        None => return u128::MAX,
    };
    let mut acc: u128 = 1;
    let mut qi: u128 = 1;
    for _ in 0..n {
        acc = match acc.checked_mul(qn - qi) {
            Some(v) => v,
            None => return u128::MAX,
        };
        qi *= q as u128;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::FieldTower;

    fn f2() -> FieldTower {
        FieldTower::new(2, 1, 2).unwrap()
    }

    #[test]
    fn rref_and_rank() {
        let t = FieldTower::new(3, 1, 2).unwrap();
        let f = t.base();
        let m = Mat::from_rows(&[vec![1, 2, 0], vec![2, 1, 0], vec![0, 0, 1]]);
        assert_eq!(m.rank(f), 2);
        let (r, p) = m.rref(f);
        assert_eq!(p, vec![0, 2]);
        assert_eq!(r.row(0), &[1, 2, 0]);
        assert_eq!(r.row(1), &[0, 0, 1]);
    }

    #[test]
    fn inverse_roundtrip() {
        let t = FieldTower::new(3, 1, 2).unwrap();
        let f = t.base();
        let m = Mat::from_rows(&[vec![1, 2, 0], vec![0, 1, 1], vec![2, 0, 1]]);
        let inv = m.inverse(f).unwrap();
        assert_eq!(m.mul(&inv, f), Mat::identity(3));
        let singular = Mat::from_rows(&[vec![1, 2], vec![2, 1]]);
        assert!(singular.inverse(f).is_none());
    }

    #[test]
    fn nullspace_is_annihilated() {
        let t = f2();
        let f = t.base();
        let m = Mat::from_rows(&[vec![1, 1, 0, 1], vec![0, 1, 1, 1]]);
        let ns = m.right_nullspace(f);
        assert_eq!(ns.rows(), 2);
        assert!(m.mul(&ns.transpose(), f).is_zero());
    }

    #[test]
    fn grassmannian_counts_match_gaussian_binomial() {
        for (p, k, n) in [(2u64, 2usize, 4usize), (2, 3, 6), (3, 2, 4), (3, 1, 3)] {
            let t = FieldTower::new(p, 1, 2).unwrap();
            let g = grassmannian(k, n, t.base());
            assert_eq!(g.len() as u128, gaussian_binomial(n as u32, k as u32, p));
            let mut sorted = g.clone();
            sorted.dedup();
            assert_eq!(sorted.len(), g.len());
            for m in &g {
                assert_eq!(m.rref(t.base()).0, *m);
            }
        }
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
        assert_eq!(gaussian_binomial(6, 3, 2), 1395);
    }

    #[test]
    fn gl_orders() {
        assert_eq!(gl_order(3, 2), 168);
        assert_eq!(gl_order(4, 2), 20160);
        assert_eq!(gl_order(3, 3), 11232);
    }

    fn det_brute(m: &Mat, f: &BaseField) -> u32 {
        // Leibniz over permutations for small n.
        let n = m.rows();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = 0u32;
        fn sign(p: &[usize]) -> bool {
            let mut inv = 0;
            for i in 0..p.len() {
                for j in i + 1..p.len() {
                    if p[i] > p[j] {
                        inv += 1;
                    }
                }
            }
            inv % 2 == 0
        }
        fn next_perm(p: &mut [usize]) -> bool {
            let n = p.len();
            if n < 2 {
                return false;
            }
            let mut i = n - 1;
            while i > 0 && p[i - 1] >= p[i] {
                i -= 1;
            }
            if i == 0 {
                return false;
            }
            let mut j = n - 1;
            while p[j] <= p[i - 1] {
                j -= 1;
            }
            p.swap(i - 1, j);
            p[i..].reverse();
            true
        }
        loop {
            let mut prod = 1u32;
            for (r, &c) in perm.iter().enumerate() {
                prod = f.mul(prod, m.get(r, c));
            }
            total = if sign(&perm) { f.add(total, prod) } else { f.sub(total, prod) };
            if !next_perm(&mut perm) {
                break;
            }
        }
        total
    }

    #[test]
    fn char_poly_matches_determinant_evaluation() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for p in [2u64, 3, 5] {
            let t = FieldTower::new(p, 1, 2).unwrap();
            let f = t.base();
            for n in 1..=4 {
                for _ in 0..30 {
                    let data = (0..n * n).map(|_| rng.gen_range(0..p as u32)).collect();
                    let a = Mat::from_vec(n, n, data);
                    let cp = a.char_poly(f);
                    assert_eq!(cp.len(), n + 1);
                    for x in 0..p as u32 {
                        let xi = Mat::identity(n).scale(x, f);
                        let want = det_brute(&xi.sub(&a, f), f);
                        let got = cp.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c));
                        assert_eq!(got, want);
                    }
                }
            }
        }
    }
}
