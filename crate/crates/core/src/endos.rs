//! The ring `E = End_q(F_{q^t})`.
//!
//! An endomorphism is stored as its `t × t` matrix over `F_q` in the fixed
//! basis `1, y, …, y^{t-1}`, row `i` holding the coordinates of the image of
//! the `i`-th basis vector. Maps are written as exponents, so `αβ` means
//! "first `α`, then `β`" and its matrix is `M_α · M_β`.

use crate::error::{parse_err, Error, Result};
use crate::fields::{FieldTower, FqtElem};
use crate::linalg::Mat;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Endo(Mat);

impl Endo {
    pub fn from_matrix(m: Mat) -> Endo {
        assert_eq!(m.rows(), m.cols());
        Endo(m)
    }

    pub fn matrix(&self) -> &Mat {
        &self.0
    }

    pub fn into_matrix(self) -> Mat {
        self.0
    }

    pub fn zero(tower: &FieldTower) -> Endo {
        let t = tower.t() as usize;
        Endo(Mat::zeros(t, t))
    }

    pub fn identity(tower: &FieldTower) -> Endo {
        Endo(Mat::identity(tower.t() as usize))
    }

    /// The endomorphism whose basis images are the given field elements.
    pub fn from_images(tower: &FieldTower, images: &[FqtElem]) -> Endo {
        let rows: Vec<Vec<u32>> = images.iter().map(|&x| tower.coeffs(x)).collect();
        Endo(Mat::from_rows(&rows))
    }

    fn basis(tower: &FieldTower) -> Vec<FqtElem> {
        let t = tower.t() as usize;
        (0..t)
            .map(|i| {
                let mut c = vec![0u32; t];
                c[i] = 1;
                tower.from_coeffs(&c)
            })
            .collect()
    }

    /// `ρ_a : x ↦ a·x`.
    pub fn rho(tower: &FieldTower, a: FqtElem) -> Endo {
        let images: Vec<_> = Self::basis(tower)
            .into_iter()
            .map(|b| tower.mul(a, b))
            .collect();
        Self::from_images(tower, &images)
    }

    /// `σ^i : x ↦ x^(q^i)`.
    pub fn frobenius(tower: &FieldTower, i: u32) -> Endo {
        let images: Vec<_> = Self::basis(tower)
            .into_iter()
            .map(|b| tower.frobenius(b, i))
            .collect();
        Self::from_images(tower, &images)
    }

    /// `x ↦ Σ c_i x^(q^i)`.
    pub fn from_qpoly(tower: &FieldTower, c: &[FqtElem]) -> Endo {
        assert_eq!(c.len(), tower.t() as usize, "q-polynomial needs t coefficients");
        let images: Vec<_> = Self::basis(tower)
            .into_iter()
            .map(|b| {
                c.iter().enumerate().fold(FqtElem::ZERO, |acc, (i, &ci)| {
                    tower.add(acc, tower.mul(ci, tower.frobenius(b, i as u32)))
                })
            })
            .collect();
        Self::from_images(tower, &images)
    }

    /// The unique `c` with `q`-degree below `t` representing this map,
    /// found by solving the Moore system over `F_{q^t}`.
    pub fn to_qpoly(&self, tower: &FieldTower) -> Vec<FqtElem> {
        let t = tower.t() as usize;
        let basis = Self::basis(tower);
        // rows: basis_j; unknowns c_i; coefficient (basis_j)^(q^i); rhs basis_j^self
        let mut sys: Vec<Vec<FqtElem>> = basis
            .iter()
            .map(|&b| {
                let mut row: Vec<FqtElem> = (0..t).map(|i| tower.frobenius(b, i as u32)).collect();
                row.push(self.apply(tower, b));
                row
            })
            .collect();
        for col in 0..t {
            let piv = (col..t)
                .find(|&r| !sys[r][col].is_zero())
                .expect("Moore matrix of a basis is invertible");
            sys.swap(col, piv);
            let inv = tower.inv(sys[col][col]);
            for v in sys[col].iter_mut() {
                *v = tower.mul(*v, inv);
            }
            for r in 0..t {
                if r == col || sys[r][col].is_zero() {
                    continue;
                }
                let factor = sys[r][col];
                for k in 0..=t {
                    let sub = tower.mul(factor, sys[col][k]);
                    sys[r][k] = tower.sub(sys[r][k], sub);
                }
            }
        }
        sys.into_iter().map(|row| row[t]).collect()
    }

    pub fn apply(&self, tower: &FieldTower, x: FqtElem) -> FqtElem {
        let v = self.0.apply_row(&tower.coeffs(x), tower.base());
        tower.from_coeffs(&v)
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Endo, tower: &FieldTower) -> Endo {
        Endo(self.0.mul(&other.0, tower.base()))
    }

    pub fn add(&self, other: &Endo, tower: &FieldTower) -> Endo {
        Endo(self.0.add(&other.0, tower.base()))
    }

    pub fn sub(&self, other: &Endo, tower: &FieldTower) -> Endo {
        Endo(self.0.sub(&other.0, tower.base()))
    }

    pub fn invert(&self, tower: &FieldTower) -> Result<Endo> {
        self.0.inverse(tower.base()).map(Endo).ok_or(Error::SingularEndo)
    }

    pub fn rank(&self, tower: &FieldTower) -> usize {
        self.0.rank(tower.base())
    }

    pub fn kernel_dim(&self, tower: &FieldTower) -> usize {
        tower.t() as usize - self.rank(tower)
    }

    pub fn is_invertible(&self, tower: &FieldTower) -> bool {
        self.kernel_dim(tower) == 0
    }

    /// Whether some `u ≠ 0` has `u^β = λu`.
    pub fn has_eigenvalue(&self, tower: &FieldTower, lambda: FqtElem) -> bool {
        self.sub(&Endo::rho(tower, lambda), tower).kernel_dim(tower) >= 1
    }

    pub fn power(&self, tower: &FieldTower, k: u32) -> Endo {
        let mut acc = Endo::identity(tower);
        for _ in 0..k {
            acc = acc.compose(self, tower);
        }
        acc
    }

    /// Every element of `E`, in index order of the flattened matrix.
    pub fn enumerate(tower: &FieldTower) -> impl Iterator<Item = Endo> + '_ {
        let t = tower.t() as usize;
        let q = tower.q() as u64;
        let total = q.pow((t * t) as u32);
        (0..total).map(move |mut idx| {
            let data = (0..t * t)
                .map(|_| {
                    let d = (idx % q) as u32;
                    idx /= q;
                    d
                })
                .collect();
            Endo(Mat::from_vec(t, t, data))
        })
    }

    /// Output form: `Q:` and the `q`-polynomial coefficients separated by `/`.
    pub fn encode(&self, tower: &FieldTower) -> String {
        let parts: Vec<String> = self.to_qpoly(tower).iter().map(|&c| tower.encode(c)).collect();
        format!("Q:{}", parts.join("/"))
    }

    /// Matrix form: `M:` and `t` rows separated by `/`, entries comma-separated
    /// `F_q` indices (`0..q`).
    pub fn encode_matrix(&self, tower: &FieldTower) -> String {
        let t = tower.t() as usize;
        let rows: Vec<String> = (0..t)
            .map(|r| {
                self.0
                    .row(r)
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        format!("M:{}", rows.join("/"))
    }

    /// Accepts either the `Q:` or the `M:` form.
    pub fn decode(tower: &FieldTower, s: &str) -> Result<Endo> {
        let s = s.trim();
        let t = tower.t() as usize;
        if let Some(body) = s.strip_prefix("Q:") {
            let coeffs = body
                .split('/')
                .map(|c| tower.decode(c))
                .collect::<Result<Vec<_>>>()?;
            if coeffs.len() != t {
                return Err(parse_err(format!("Q: form needs {t} coefficients")));
            }
            Ok(Endo::from_qpoly(tower, &coeffs))
        } else if let Some(body) = s.strip_prefix("M:") {
            let rows: Vec<&str> = body.split('/').collect();
            if rows.len() != t {
                return Err(parse_err(format!("M: form needs {t} rows")));
            }
            let mut data = Vec::with_capacity(t * t);
            for row in rows {
                let entries: Vec<&str> = row.split(',').collect();
                if entries.len() != t {
                    return Err(parse_err(format!("M: row {row:?} needs {t} entries")));
                }
                for e in entries {
                    let v: u32 = e
                        .trim()
                        .parse()
                        .map_err(|_| parse_err(format!("bad entry {e:?}")))?;
                    if v >= tower.q() {
                        return Err(parse_err(format!("entry {v} not below q")));
                    }
                    data.push(v);
                }
            }
            Ok(Endo(Mat::from_vec(t, t, data)))
        } else {
            Err(parse_err("endomorphism must start with Q: or M:"))
        }
    }
}
