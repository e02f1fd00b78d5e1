//! The projective lines `PG(1, q^t)` and `PG(1, E)`.
//!
//! A point `E(α, β)` of `PG(1, E)` is stored as the RREF of the `t × 2t`
//! matrix `[M_α | M_β]`; its row space is the `t`-dimensional subspace
//! `{(u^α, u^β)}` of `F_q^{2t}`, so two points are equal exactly when their
//! matrices are. Projectivities are invertible `2 × 2` matrices over `E`,
//! stored as the `2t × 2t` block matrix that acts on row vectors `(u | v)`.

use std::fmt;

use crate::endos::Endo;
use crate::error::{parse_err, Error, Result};
use crate::fields::{FieldTower, FqtElem};
use crate::linalg::{gaussian_binomial, grassmannian, Mat};
use crate::proj::{subspace_points, ProjPoint};

/// Default cap on the number of points produced by [`enumerate_ring_points`].
pub const DEFAULT_POINT_BUDGET: u128 = 1 << 22;

/// A point `⟨(a, b)⟩` of `PG(1, q^t)` with `a = 1`, or `(a, b) = (0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldPoint {
    a: FqtElem,
    b: FqtElem,
}

impl FieldPoint {
    pub fn new(tower: &FieldTower, a: FqtElem, b: FqtElem) -> Result<FieldPoint> {
        if a.is_zero() {
            if b.is_zero() {
                return Err(Error::ZeroPoint);
            }
            return Ok(FieldPoint { a, b: FqtElem::ONE });
        }
        Ok(FieldPoint {
            a: FqtElem::ONE,
            b: tower.mul(b, tower.inv(a)),
        })
    }

    /// `⟨(1, b)⟩`.
    pub fn affine(b: FqtElem) -> FieldPoint {
        FieldPoint { a: FqtElem::ONE, b }
    }

    pub fn infinity() -> FieldPoint {
        FieldPoint {
            a: FqtElem::ZERO,
            b: FqtElem::ONE,
        }
    }

    pub fn a(&self) -> FqtElem {
        self.a
    }

    pub fn b(&self) -> FqtElem {
        self.b
    }

    /// Dense index in `0..=q^t`: `⟨(1, b)⟩ ↦ index(b)`, `⟨(0, 1)⟩ ↦ q^t`.
    pub fn index(&self, tower: &FieldTower) -> usize {
        if self.a.is_zero() {
            tower.order() as usize
        } else {
            self.b.index() as usize
        }
    }

    /// All `q^t + 1` points, sorted.
    pub fn all(tower: &FieldTower) -> Vec<FieldPoint> {
        let mut v: Vec<FieldPoint> = tower.elements().map(FieldPoint::affine).collect();
        v.push(FieldPoint::infinity());
        v.sort();
        v
    }

    pub fn encode(&self, tower: &FieldTower) -> String {
        format!("{}|{}", tower.encode(self.a), tower.encode(self.b))
    }

    pub fn decode(tower: &FieldTower, s: &str) -> Result<FieldPoint> {
        let (a, b) = s
            .trim()
            .split_once('|')
            .ok_or_else(|| parse_err("field point must be a|b"))?;
        FieldPoint::new(tower, tower.decode(a)?, tower.decode(b)?)
    }
}

/// A `2 × 2` matrix over `F_{q^t}` acting on row vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldMat2(pub [FqtElem; 4]);

impl FieldMat2 {
    pub fn identity() -> FieldMat2 {
        FieldMat2([FqtElem::ONE, FqtElem::ZERO, FqtElem::ZERO, FqtElem::ONE])
    }

    pub fn det(&self, tower: &FieldTower) -> FqtElem {
        let [a, b, c, d] = self.0;
        tower.sub(tower.mul(a, d), tower.mul(b, c))
    }

    pub fn mul(&self, rhs: &FieldMat2, tower: &FieldTower) -> FieldMat2 {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = rhs.0;
        let ad = |x, y, z, w| tower.add(tower.mul(x, y), tower.mul(z, w));
        FieldMat2([ad(a, e, b, g), ad(a, f, b, h), ad(c, e, d, g), ad(c, f, d, h)])
    }

    pub fn inverse(&self, tower: &FieldTower) -> Option<FieldMat2> {
        let det = self.det(tower);
        let inv = tower.try_inv(det).ok()?;
        let [a, b, c, d] = self.0;
        Some(FieldMat2([
            tower.mul(d, inv),
            tower.neg(tower.mul(b, inv)),
            tower.neg(tower.mul(c, inv)),
            tower.mul(a, inv),
        ]))
    }

    /// Scales so that the first nonzero entry is 1.
    pub fn normalized(&self, tower: &FieldTower) -> FieldMat2 {
        let lead = *self.0.iter().find(|x| !x.is_zero()).expect("zero matrix");
        let inv = tower.inv(lead);
        FieldMat2(self.0.map(|x| tower.mul(x, inv)))
    }

    /// `(a, b) · m`.
    #[inline]
    pub fn apply_vec(&self, tower: &FieldTower, a: FqtElem, b: FqtElem) -> (FqtElem, FqtElem) {
        let [m11, m12, m21, m22] = self.0;
        (
            tower.add(tower.mul(a, m11), tower.mul(b, m21)),
            tower.add(tower.mul(a, m12), tower.mul(b, m22)),
        )
    }

    pub fn apply(&self, tower: &FieldTower, p: &FieldPoint) -> FieldPoint {
        let (a, b) = self.apply_vec(tower, p.a, p.b);
        FieldPoint::new(tower, a, b).expect("invertible matrix")
    }

    /// The matrix sending `⟨(1,0)⟩, ⟨(0,1)⟩, ⟨(1,1)⟩` to `p, q, r`.
    pub fn from_triple(tower: &FieldTower, p: &FieldPoint, q: &FieldPoint, r: &FieldPoint) -> Option<FieldMat2> {
        let d = tower.sub(tower.mul(p.a, q.b), tower.mul(p.b, q.a));
        let dinv = tower.try_inv(d).ok()?;
        let lambda = tower.mul(tower.sub(tower.mul(r.a, q.b), tower.mul(r.b, q.a)), dinv);
        let mu = tower.mul(tower.sub(tower.mul(p.a, r.b), tower.mul(p.b, r.a)), dinv);
        if lambda.is_zero() || mu.is_zero() {
            return None;
        }
        Some(FieldMat2([
            tower.mul(lambda, p.a),
            tower.mul(lambda, p.b),
            tower.mul(mu, q.a),
            tower.mul(mu, q.b),
        ]))
    }

    /// The unique element of `PGL_2(q^t)` sending one triple of distinct
    /// points to another; `None` when a triple has repeated points.
    pub fn map_triple(tower: &FieldTower, from: [&FieldPoint; 3], to: [&FieldPoint; 3]) -> Option<FieldMat2> {
        let a = FieldMat2::from_triple(tower, from[0], from[1], from[2])?;
        let b = FieldMat2::from_triple(tower, to[0], to[1], to[2])?;
        Some(a.inverse(tower)?.mul(&b, tower))
    }

    /// The projectivity of `PG(1, E)` with entries `ρ_{m_ij}`.
    pub fn lift(&self, tower: &FieldTower) -> RingProjectivity {
        let [a, b, c, d] = self.0.map(|x| Endo::rho(tower, x));
        RingProjectivity::from_entries(tower, &a, &b, &c, &d).expect("invertible matrix")
    }
}

/// A point of `PG(1, E)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingPoint {
    mat: Mat,
}

impl fmt::Debug for RingPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingPoint{:?}", self.mat)
    }
}

impl RingPoint {
    /// Canonicalizes any `t × 2t` matrix of rank `t`.
    pub fn from_matrix(tower: &FieldTower, m: &Mat) -> Result<RingPoint> {
        let t = tower.t() as usize;
        if m.rows() != t || m.cols() != 2 * t {
            return Err(Error::DimensionMismatch(format!(
                "ring point needs a {t}x{} matrix",
                2 * t
            )));
        }
        let (r, pivots) = m.rref(tower.base());
        if pivots.len() < t {
            return Err(Error::NotAdmissible {
                rank: pivots.len(),
                needed: t,
            });
        }
        Ok(RingPoint { mat: r })
    }

    /// `E(α, β)`.
    pub fn new(tower: &FieldTower, alpha: &Endo, beta: &Endo) -> Result<RingPoint> {
        Self::from_matrix(tower, &alpha.matrix().hstack(beta.matrix()))
    }

    /// `E(𝟙, β)`.
    pub fn graph(tower: &FieldTower, beta: &Endo) -> RingPoint {
        // [I | M] is already reduced
        let t = tower.t() as usize;
        RingPoint {
            mat: Mat::identity(t).hstack(beta.matrix()),
        }
    }

    pub fn matrix(&self) -> &Mat {
        &self.mat
    }

    /// A generating pair `(α, β)` with `E(α, β) = self`.
    pub fn pair(&self) -> (Endo, Endo) {
        let t = self.mat.rows();
        (
            Endo::from_matrix(self.mat.block(0, 0, t, t)),
            Endo::from_matrix(self.mat.block(0, t, t, t)),
        )
    }

    /// `β` if the point is `E(𝟙, β)`.
    pub fn graph_endo(&self) -> Option<Endo> {
        let t = self.mat.rows();
        (self.mat.block(0, 0, t, t) == Mat::identity(t))
            .then(|| Endo::from_matrix(self.mat.block(0, t, t, t)))
    }

    /// Two points are distant iff their subspaces are complementary.
    pub fn is_distant(&self, other: &RingPoint, tower: &FieldTower) -> bool {
        self.mat.vstack(&other.mat).rank(tower.base()) == self.mat.cols()
    }

    /// The `θ_{t-1}` projective points of the subspace.
    pub fn points(&self, tower: &FieldTower) -> Vec<ProjPoint> {
        subspace_points(&self.mat, tower.base())
    }

    /// `T · diag(ρ_h, ρ_h)`.
    pub fn scale(&self, tower: &FieldTower, h: FqtElem) -> Result<RingPoint> {
        if h.is_zero() {
            return Err(Error::ZeroScalar);
        }
        let r = Endo::rho(tower, h);
        let d = Mat::block_diag(r.matrix(), r.matrix());
        Self::from_matrix(tower, &self.mat.mul(&d, tower.base()))
    }

    /// Text form: `t` lines of `2t` base-q digits (`0-9a-z`); for `q > 36`
    /// the entries of a line are comma-separated decimals.
    pub fn encode(&self, tower: &FieldTower) -> String {
        encode_rows(&self.mat, tower.q())
    }

    /// Accepts rows separated by newlines or `/`; any rank-`t` matrix is
    /// accepted and canonicalized.
    pub fn decode(tower: &FieldTower, s: &str) -> Result<RingPoint> {
        let t = tower.t() as usize;
        let m = decode_rows(s, t, 2 * t, tower.q())?;
        Self::from_matrix(tower, &m)
    }
}

const DIGITS: &[u8] = b"0123456789abcdefghijklmnopqrstuvwxyz";

pub(crate) fn encode_rows(m: &Mat, q: u32) -> String {
    (0..m.rows())
        .map(|r| {
            if q <= 36 {
                m.row(r).iter().map(|&v| DIGITS[v as usize] as char).collect::<String>()
            } else {
                m.row(r).iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
            }
        })
        .collect::<Vec<_>>()
        .join("\n")
}

pub(crate) fn decode_rows(s: &str, rows: usize, cols: usize, q: u32) -> Result<Mat> {
    let lines: Vec<&str> = s
        .trim()
        .split(['\n', '/'])
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .collect();
    if lines.len() != rows {
        return Err(parse_err(format!("expected {rows} rows, got {}", lines.len())));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for line in lines {
        let entries: Vec<u32> = if q <= 36 {
            line.chars()
                .map(|c| {
                    c.to_digit(36)
                        .filter(|&d| d < q)
                        .ok_or_else(|| parse_err(format!("bad digit {c:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            line.split(',')
                .map(|e| {
                    e.trim()
                        .parse::<u32>()
                        .ok()
                        .filter(|&d| d < q)
                        .ok_or_else(|| parse_err(format!("bad entry {e:?}")))
                })
                .collect::<Result<_>>()?
        };
        if entries.len() != cols {
            return Err(parse_err(format!("row needs {cols} entries")));
        }
        data.extend(entries);
    }
    Ok(Mat::from_vec(rows, cols, data))
}

/// A projectivity of `PG(1, E)`: `(α β; γ δ) ∈ GL_2(E)`.
///
/// On `F_q^{2t}` it acts by `(u, v) ↦ (u^α + v^γ, u^β + v^δ)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingProjectivity {
    mat: Mat,
}

impl fmt::Debug for RingProjectivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingProjectivity{:?}", self.mat)
    }
}

impl RingProjectivity {
    pub fn from_matrix(tower: &FieldTower, m: Mat) -> Result<RingProjectivity> {
        let n = 2 * tower.t() as usize;
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch(format!("projectivity needs {n}x{n}")));
        }
        if m.rank(tower.base()) < n {
            return Err(Error::SingularProjectivity);
        }
        Ok(RingProjectivity { mat: m })
    }

    pub fn from_entries(tower: &FieldTower, alpha: &Endo, beta: &Endo, gamma: &Endo, delta: &Endo) -> Result<RingProjectivity> {
        Self::from_matrix(
            tower,
            Mat::from_blocks(alpha.matrix(), beta.matrix(), gamma.matrix(), delta.matrix()),
        )
    }

    pub fn identity(tower: &FieldTower) -> RingProjectivity {
        RingProjectivity {
            mat: Mat::identity(2 * tower.t() as usize),
        }
    }

    /// `(0 𝟙; 𝟙 0)`.
    pub fn swap(tower: &FieldTower) -> RingProjectivity {
        let i = Endo::identity(tower);
        let z = Endo::zero(tower);
        Self::from_entries(tower, &z, &i, &i, &z).unwrap()
    }

    pub fn diag(tower: &FieldTower, a: &Endo, d: &Endo) -> Result<RingProjectivity> {
        let z = Endo::zero(tower);
        Self::from_entries(tower, a, &z, &z, d)
    }

    pub fn matrix(&self) -> &Mat {
        &self.mat
    }

    /// `[α, β, γ, δ]`.
    pub fn entries(&self) -> [Endo; 4] {
        let t = self.mat.rows() / 2;
        [(0, 0), (0, t), (t, 0), (t, t)].map(|(r, c)| Endo::from_matrix(self.mat.block(r, c, t, t)))
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &RingProjectivity, tower: &FieldTower) -> RingProjectivity {
        RingProjectivity {
            mat: self.mat.mul(&other.mat, tower.base()),
        }
    }

    pub fn inverse(&self, tower: &FieldTower) -> RingProjectivity {
        RingProjectivity {
            mat: self.mat.inverse(tower.base()).expect("invertible by construction"),
        }
    }

    pub fn apply(&self, tower: &FieldTower, p: &RingPoint) -> RingPoint {
        let m = p.mat.mul(&self.mat, tower.base());
        RingPoint::from_matrix(tower, &m).expect("invertible map preserves rank")
    }

    pub fn apply_point(&self, tower: &FieldTower, x: &ProjPoint) -> ProjPoint {
        ProjPoint::new(self.mat.apply_row(x.coords(), tower.base()), tower.base())
            .expect("invertible map")
    }

    /// Same action on points of `PG(1, E)`: the matrix up to a central unit.
    pub fn same_action(&self, other: &RingProjectivity, tower: &FieldTower) -> bool {
        let f = tower.base();
        // central units of E are the nonzero scalars of F_q
        (1..f.order()).any(|c| self.mat.scale(c, f) == other.mat)
    }

    pub fn encode(&self, tower: &FieldTower) -> String {
        encode_rows(&self.mat, tower.q())
    }

    pub fn decode(tower: &FieldTower, s: &str) -> Result<RingProjectivity> {
        let n = 2 * tower.t() as usize;
        Self::from_matrix(tower, decode_rows(s, n, n, tower.q())?)
    }
}

/// `ι : ⟨(a, b)⟩ ↦ E(ρ_a, ρ_b)`.
pub fn embed_field_point(tower: &FieldTower, p: &FieldPoint) -> RingPoint {
    RingPoint::new(tower, &Endo::rho(tower, p.a), &Endo::rho(tower, p.b))
        .expect("(ρ_a, ρ_b) is admissible for (a, b) ≠ 0")
}

/// Inverse of [`embed_field_point`]: succeeds iff the subspace is closed
/// under multiplication by `F_{q^t}` on both coordinates.
pub fn preimage_in_standard_chain(tower: &FieldTower, p: &RingPoint) -> Result<FieldPoint> {
    let f = tower.base();
    let t = tower.t() as usize;
    let ry = Endo::rho(tower, tower.y());
    let d = Mat::block_diag(ry.matrix(), ry.matrix());
    let moved = p.mat.mul(&d, f);
    if p.mat.vstack(&moved).rank(f) != t {
        return Err(Error::NotOnChain);
    }
    let row = p.mat.row(0);
    let u = tower.from_coeffs(&row[..t]);
    let v = tower.from_coeffs(&row[t..]);
    let fp = FieldPoint::new(tower, u, v)?;
    debug_assert_eq!(embed_field_point(tower, &fp), *p);
    Ok(fp)
}

/// An `F`-chain: the image of the standard chain under `witness`.
#[derive(Debug, Clone)]
pub struct Chain {
    points: Vec<RingPoint>,
    witness: RingProjectivity,
}

impl Chain {
    /// `PG(1, q^t)^ι`.
    pub fn standard(tower: &FieldTower) -> Chain {
        let mut points: Vec<RingPoint> = FieldPoint::all(tower)
            .iter()
            .map(|p| embed_field_point(tower, p))
            .collect();
        points.sort();
        Chain {
            points,
            witness: RingProjectivity::identity(tower),
        }
    }

    pub fn image(&self, tower: &FieldTower, phi: &RingProjectivity) -> Chain {
        let mut points: Vec<RingPoint> = self.points.iter().map(|p| phi.apply(tower, p)).collect();
        points.sort();
        Chain {
            points,
            witness: self.witness.then(phi, tower),
        }
    }

    pub fn points(&self) -> &[RingPoint] {
        &self.points
    }

    pub fn witness(&self) -> &RingProjectivity {
        &self.witness
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &RingPoint) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn same_points(&self, other: &Chain) -> bool {
        self.points == other.points
    }

    pub fn common_points(&self, other: &Chain) -> usize {
        self.points.iter().filter(|p| other.contains(p)).count()
    }
}

/// A projectivity taking three distinct points of `c1` to three distinct
/// points of `c2` (in order) and `c1` onto `c2`.
pub fn map_triples_on_chains(
    tower: &FieldTower,
    c1: &Chain,
    from: [&RingPoint; 3],
    c2: &Chain,
    to: [&RingPoint; 3],
) -> Result<RingProjectivity> {
    let distinct = |x: [&RingPoint; 3]| x[0] != x[1] && x[0] != x[2] && x[1] != x[2];
    if !distinct(from) || !distinct(to) {
        return Err(Error::PointsNotOnChain);
    }
    if !from.iter().all(|p| c1.contains(p)) || !to.iter().all(|p| c2.contains(p)) {
        return Err(Error::PointsNotOnChain);
    }
    let back1 = c1.witness.inverse(tower);
    let back2 = c2.witness.inverse(tower);
    let pre = |w: &RingProjectivity, p: &RingPoint| {
        preimage_in_standard_chain(tower, &w.apply(tower, p)).map_err(|_| Error::PointsNotOnChain)
    };
    let a = [pre(&back1, from[0])?, pre(&back1, from[1])?, pre(&back1, from[2])?];
    let b = [pre(&back2, to[0])?, pre(&back2, to[1])?, pre(&back2, to[2])?];
    let m = FieldMat2::map_triple(tower, [&a[0], &a[1], &a[2]], [&b[0], &b[1], &b[2]])
        .ok_or(Error::PointsNotOnChain)?;
    Ok(back1.then(&m.lift(tower), tower).then(&c2.witness, tower))
}

/// Every point of `PG(1, E)`, sorted by matrix.
pub fn enumerate_ring_points(tower: &FieldTower, budget: u128) -> Result<Vec<RingPoint>> {
    let t = tower.t();
    let count = gaussian_binomial(2 * t, t, tower.q() as u64);
    if count > budget {
        return Err(Error::BudgetExceeded(format!(
            "{count} points of PG(1,E) exceed budget {budget}"
        )));
    }
    Ok(grassmannian(t as usize, 2 * t as usize, tower.base())
        .into_iter()
        .map(|mat| RingPoint { mat })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f8() -> FieldTower {
        FieldTower::new(2, 1, 3).unwrap()
    }

    fn sigma(t: &FieldTower) -> Endo {
        Endo::frobenius(t, 1)
    }

    #[test]
    fn ring_point_basics() {
        let t = f8();
        let i = Endo::identity(&t);
        let z = Endo::zero(&t);
        let p = RingPoint::new(&t, &i, &z).unwrap();
        assert_eq!(p.matrix(), &Mat::identity(3).hstack(&Mat::zeros(3, 3)));
        assert_eq!(
            RingPoint::new(&t, &z, &z),
            Err(Error::NotAdmissible { rank: 0, needed: 3 })
        );
        let beta = sigma(&t);
        let base = RingPoint::new(&t, &i, &beta).unwrap();
        for c in t.nonzero() {
            let rc = Endo::rho(&t, c);
            let scaled = RingPoint::new(&t, &rc, &rc.compose(&beta, &t)).unwrap();
            assert_eq!(scaled, base);
        }
        assert_eq!(RingPoint::graph(&t, &beta), base);
    }

    #[test]
    fn distant_relation() {
        let t = f8();
        let e10 = embed_field_point(&t, &FieldPoint::affine(FqtElem::ZERO));
        let e01 = embed_field_point(&t, &FieldPoint::infinity());
        assert!(e10.is_distant(&e01, &t));
        assert!(e01.is_distant(&e10, &t));
        let pts = enumerate_ring_points(&FieldTower::new(2, 1, 2).unwrap(), DEFAULT_POINT_BUDGET).unwrap();
        let t2 = FieldTower::new(2, 1, 2).unwrap();
        assert!(pts.iter().all(|p| !p.is_distant(p, &t2)));
        let a = RingPoint::graph(&t, &sigma(&t));
        let b = RingPoint::graph(&t, &Endo::rho(&t, FqtElem::ONE));
        assert!(!a.is_distant(&b, &t));
    }

    #[test]
    fn embedding_chain_points_pairwise_distant() {
        let t = f8();
        let fps = FieldPoint::all(&t);
        assert_eq!(fps.len(), 9);
        let emb: Vec<_> = fps.iter().map(|p| embed_field_point(&t, p)).collect();
        let mut pairs = 0;
        for i in 0..emb.len() {
            for j in i + 1..emb.len() {
                assert!(emb[i].is_distant(&emb[j], &t));
                pairs += 1;
            }
        }
        assert_eq!(pairs, 36);
        assert_eq!(
            embed_field_point(&t, &FieldPoint::affine(FqtElem::ZERO)),
            RingPoint::new(&t, &Endo::identity(&t), &Endo::zero(&t)).unwrap()
        );
        assert_eq!(
            embed_field_point(&t, &FieldPoint::infinity()),
            RingPoint::new(&t, &Endo::zero(&t), &Endo::identity(&t)).unwrap()
        );
        for (fp, rp) in fps.iter().zip(&emb) {
            assert_eq!(preimage_in_standard_chain(&t, rp).unwrap(), *fp);
        }
        assert_eq!(
            preimage_in_standard_chain(&t, &RingPoint::graph(&t, &sigma(&t))),
            Err(Error::NotOnChain)
        );
    }

    #[test]
    fn projectivity_action() {
        let t = f8();
        let id = RingProjectivity::identity(&t);
        let sw = RingProjectivity::swap(&t);
        let e10 = embed_field_point(&t, &FieldPoint::affine(FqtElem::ZERO));
        let e01 = embed_field_point(&t, &FieldPoint::infinity());
        assert_eq!(sw.apply(&t, &e10), e01);
        assert_eq!(sw.apply(&t, &e01), e10);
        let p = RingPoint::graph(&t, &sigma(&t));
        assert_eq!(id.apply(&t, &p), p);
        let phi = RingProjectivity::diag(&t, &Endo::identity(&t), &sigma(&t)).unwrap();
        let composed = phi.then(&sw, &t);
        assert_eq!(composed.apply(&t, &p), sw.apply(&t, &phi.apply(&t, &p)));
        assert!(matches!(
            RingProjectivity::diag(&t, &Endo::zero(&t), &sigma(&t)),
            Err(Error::SingularProjectivity)
        ));
    }

    #[test]
    fn dual_computation_of_image() {
        // E(α,β)^φ = E(αφ11 + βφ21, αφ12 + βφ22)
        let t = f8();
        let y = Endo::rho(&t, t.y());
        let s = sigma(&t);
        let phi = RingProjectivity::from_entries(&t, &s, &y, &Endo::zero(&t), &s.compose(&y, &t)).unwrap();
        for beta in Endo::enumerate(&t).step_by(11) {
            let p = RingPoint::graph(&t, &beta);
            let (a, b) = p.pair();
            let [p11, p12, p21, p22] = phi.entries();
            let alpha2 = a.compose(&p11, &t).add(&b.compose(&p21, &t), &t);
            let beta2 = a.compose(&p12, &t).add(&b.compose(&p22, &t), &t);
            assert_eq!(RingPoint::new(&t, &alpha2, &beta2).unwrap(), phi.apply(&t, &p));
        }
    }

    #[test]
    fn scaling() {
        let t = f8();
        let p = RingPoint::graph(&t, &sigma(&t));
        assert_eq!(p.scale(&t, FqtElem::ONE).unwrap(), p);
        assert_eq!(p.scale(&t, FqtElem::ZERO), Err(Error::ZeroScalar));
        let scaled: std::collections::BTreeSet<_> = t.nonzero().map(|h| p.scale(&t, h).unwrap()).collect();
        assert_eq!(scaled.len(), 7);
        let t3 = FieldTower::new(3, 1, 3).unwrap();
        let p3 = RingPoint::graph(&t3, &Endo::frobenius(&t3, 1));
        for l in t3.base_nonzero() {
            assert_eq!(p3.scale(&t3, l).unwrap(), p3);
        }
    }

    #[test]
    fn standard_chain_counts() {
        let t = f8();
        let c = Chain::standard(&t);
        assert_eq!(c.len(), 9);
        assert!(c.same_points(&c.image(&t, &RingProjectivity::identity(&t))));
    }

    #[test]
    fn chain_images_have_pairwise_distant_points() {
        let t = f8();
        let phi = RingProjectivity::from_entries(
            &t,
            &sigma(&t),
            &Endo::identity(&t),
            &Endo::rho(&t, t.y()),
            &Endo::zero(&t),
        )
        .unwrap();
        let c = Chain::standard(&t).image(&t, &phi);
        for a in c.points() {
            for b in c.points() {
                assert_eq!(a.is_distant(b, &t), a != b);
            }
        }
    }

    #[test]
    fn map_triples_standard() {
        let t = f8();
        let c = Chain::standard(&t);
        let p10 = embed_field_point(&t, &FieldPoint::affine(FqtElem::ZERO));
        let p01 = embed_field_point(&t, &FieldPoint::infinity());
        let p11 = embed_field_point(&t, &FieldPoint::affine(FqtElem::ONE));
        let id = map_triples_on_chains(&t, &c, [&p10, &p01, &p11], &c, [&p10, &p01, &p11]).unwrap();
        assert!(id.same_action(&RingProjectivity::identity(&t), &t));
        let sw = map_triples_on_chains(&t, &c, [&p10, &p01, &p11], &c, [&p01, &p10, &p11]).unwrap();
        assert!(sw.same_action(&RingProjectivity::swap(&t), &t));
        assert_eq!(
            map_triples_on_chains(&t, &c, [&p10, &p10, &p11], &c, [&p01, &p10, &p11]).unwrap_err(),
            Error::PointsNotOnChain
        );
        let off = RingPoint::graph(&t, &sigma(&t));
        assert_eq!(
            map_triples_on_chains(&t, &c, [&p10, &p01, &off], &c, [&p01, &p10, &p11]).unwrap_err(),
            Error::PointsNotOnChain
        );
    }

    #[test]
    fn ring_point_enumeration_counts() {
        let t2 = FieldTower::new(2, 1, 2).unwrap();
        assert_eq!(enumerate_ring_points(&t2, DEFAULT_POINT_BUDGET).unwrap().len(), 35);
        let t = f8();
        let pts = enumerate_ring_points(&t, DEFAULT_POINT_BUDGET).unwrap();
        assert_eq!(pts.len(), 1395);
        let e10 = embed_field_point(&t, &FieldPoint::affine(FqtElem::ZERO));
        assert_eq!(pts.iter().filter(|p| p.is_distant(&e10, &t)).count(), 512);
        assert!(matches!(enumerate_ring_points(&t, 1000), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn text_forms() {
        let t = f8();
        let p = RingPoint::graph(&t, &sigma(&t));
        let s = p.encode(&t);
        assert_eq!(s.lines().count(), 3);
        assert!(s.lines().all(|l| l.len() == 6));
        assert_eq!(RingPoint::decode(&t, &s).unwrap(), p);
        assert_eq!(RingPoint::decode(&t, &s.replace('\n', "/")).unwrap(), p);
        assert!(RingPoint::decode(&t, "100000/010000/000000").is_err());
        let fp = FieldPoint::new(&t, t.y(), FqtElem::ONE).unwrap();
        assert_eq!(FieldPoint::decode(&t, &fp.encode(&t)).unwrap(), fp);
        assert_eq!(FieldPoint::decode(&t, "0;0;0|0;0;0"), Err(Error::ZeroPoint));
        let phi = RingProjectivity::swap(&t);
        assert_eq!(RingProjectivity::decode(&t, &phi.encode(&t)).unwrap(), phi);
    }
}
