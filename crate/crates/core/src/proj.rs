//! Points and subspaces of `PG(n-1, q)` as plain vectors over `F_q`.

use std::collections::BTreeSet;

use crate::fields::BaseField;
use crate::linalg::Mat;

/// A projective point, normalized so that its first nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint(Vec<u32>);

impl ProjPoint {
    /// Normalizes a nonzero vector; `None` for the zero vector.
    pub fn new(mut v: Vec<u32>, f: &BaseField) -> Option<ProjPoint> {
        let lead = *v.iter().find(|&&x| x != 0)?;
        if lead != 1 {
            let inv = f.inv(lead);
            for x in v.iter_mut() {
                *x = f.mul(*x, inv);
            }
        }
        Some(ProjPoint(v))
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

/// All points of the projective subspace spanned by the rows of `basis`.
/// The rows are assumed independent.
pub fn subspace_points(basis: &Mat, f: &BaseField) -> Vec<ProjPoint> {
    let k = basis.rows();
    let q = f.order() as u64;
    let total = q.pow(k as u32);
    let mut out = BTreeSet::new();
    for idx in 1..total {
        let mut rest = idx;
        let coeffs: Vec<u32> = (0..k)
            .map(|_| {
                let d = (rest % q) as u32;
                rest /= q;
                d
            })
            .collect();
        // only coefficient vectors whose first nonzero entry is 1
        if coeffs.iter().find(|&&c| c != 0) != Some(&1) {
            continue;
        }
        let v = basis.apply_row(&coeffs, f);
        if let Some(p) = ProjPoint::new(v, f) {
            out.insert(p);
        }
    }
    out.into_iter().collect()
}

/// Canonical basis (RREF rows) of the span of the given points.
pub fn span(points: &[&ProjPoint], f: &BaseField) -> Mat {
    let rows: Vec<Vec<u32>> = points.iter().map(|p| p.0.clone()).collect();
    Mat::from_rows(&rows).row_space(f)
}

/// Whether `p` lies in the row space of `basis` (full row rank assumed).
pub fn contains(basis: &Mat, p: &ProjPoint, f: &BaseField) -> bool {
    let m = basis.vstack(&Mat::from_rows(std::slice::from_ref(&p.0)));
    m.rank(f) == basis.rows()
}

/// The line through two distinct points, as the RREF of their span.
pub fn line_through(a: &ProjPoint, b: &ProjPoint, f: &BaseField) -> Mat {
    span(&[a, b], f)
}

/// Intersection of two row spaces, as a canonical basis.
pub fn intersect(a: &Mat, b: &Mat, f: &BaseField) -> Mat {
    // x·a = y·b  ⇔  (x | -y) · [a; b] = 0
    let stacked = a.vstack(b);
    let kernel = stacked.left_nullspace(f);
    let n = a.cols();
    let mut rows = Vec::new();
    for r in 0..kernel.rows() {
        let x = &kernel.row(r)[..a.rows()];
        rows.push(a.apply_row(x, f));
    }
    if rows.is_empty() {
        return Mat::zeros(0, n);
    }
    Mat::from_rows(&rows).row_space(f)
}
