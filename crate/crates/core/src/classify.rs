//! Pseudoregulus detection and equivalence of linear sets.

use std::collections::BTreeSet;

use crate::endos::Endo;
use crate::error::{Error, Result};
use crate::fields::{FieldTower, FqtElem};
use crate::linalg::{gl_order, Mat};
use crate::linsets::{is_scattered, l_prime, theta, LinearSet};
use crate::ringline::{Chain, FieldMat2, FieldPoint, RingPoint, RingProjectivity};

/// Search limits, in candidates examined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    /// Maximum `q^{t²}` for scans over every `E(𝟙, β)`.
    pub beta_scan: u128,
    /// Maximum `|PGL_2(q^t)|` for the cyclic-action scan.
    pub pgl_scan: u128,
    /// Maximum `θ³ · |GL_t(q)|` for the swap search.
    pub swap_search: u128,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            beta_scan: 1 << 20,
            pgl_scan: 1 << 25,
            swap_search: 1 << 28,
        }
    }
}

impl Budgets {
    pub fn beta_scan_cost(tower: &FieldTower) -> u128 {
        (tower.q() as u128).pow(tower.t() * tower.t())
    }

    pub fn pgl_cost(tower: &FieldTower) -> u128 {
        let n = tower.order() as u128;
        n * n * n - n
    }

    pub fn swap_cost(tower: &FieldTower) -> u128 {
        let th = theta(tower.t(), tower.q() as u64) as u128;
        th * th * th * gl_order(tower.t(), tower.q() as u64)
    }
}

/// `⟨(a, b)⟩ ↦ ⟨(a^η, b^η) · m⟩` with `η : x ↦ x^{q^eta}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldProjectivity {
    pub m: FieldMat2,
    pub eta: u32,
}

impl FieldProjectivity {
    pub fn new(tower: &FieldTower, m: FieldMat2, eta: u32) -> Result<FieldProjectivity> {
        if m.det(tower).is_zero() {
            return Err(Error::SingularProjectivity);
        }
        Ok(FieldProjectivity {
            m: m.normalized(tower),
            eta: eta % tower.t(),
        })
    }

    pub fn identity() -> FieldProjectivity {
        FieldProjectivity {
            m: FieldMat2::identity(),
            eta: 0,
        }
    }

    pub fn apply(&self, tower: &FieldTower, p: &FieldPoint) -> FieldPoint {
        let a = tower.frobenius(p.a(), self.eta);
        let b = tower.frobenius(p.b(), self.eta);
        let (x, y) = self.m.apply_vec(tower, a, b);
        FieldPoint::new(tower, x, y).expect("invertible matrix")
    }

    pub fn maps_onto(&self, tower: &FieldTower, from: &LinearSet, to: &LinearSet) -> bool {
        from.len() == to.len() && from.points().iter().all(|p| to.contains(&self.apply(tower, p)))
    }

    pub fn encode(&self, tower: &FieldTower) -> String {
        let e: Vec<String> = self.m.0.iter().map(|&x| tower.encode(x)).collect();
        format!("{}|{}/{}|{}@{}", e[0], e[1], e[2], e[3], self.eta)
    }
}

/// `{⟨(1, u^{q-1})⟩ : u ≠ 0}`.
pub fn canonical_pseudoregulus(tower: &FieldTower) -> LinearSet {
    let e = tower.q() as u64 - 1;
    LinearSet::from_points(tower.nonzero().map(|u| FieldPoint::affine(tower.pow(u, e))))
}

/// Which field-side maps an equivalence search may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Collineations {
    /// `PGL_2(q^t)` only.
    Projective,
    /// `PΓL_2(q^t)` with companion automorphisms over `F_q`.
    Semilinear,
}

struct Membership {
    bits: Vec<bool>,
}

impl Membership {
    fn new(tower: &FieldTower, l: &LinearSet) -> Membership {
        let mut bits = vec![false; tower.order() as usize + 1];
        for p in l.points() {
            bits[p.index(tower)] = true;
        }
        Membership { bits }
    }

    #[inline]
    fn has(&self, tower: &FieldTower, p: &FieldPoint) -> bool {
        self.bits[p.index(tower)]
    }
}

/// A collineation `κ` with `L1^κ = L2`, if any. The least three points of
/// `L1` are sent to every ordered triple of `L2` in turn; each choice fixes
/// the matrix part.
pub fn equivalent_under_collineations(
    tower: &FieldTower,
    l1: &LinearSet,
    l2: &LinearSet,
    kind: Collineations,
) -> Result<Option<FieldProjectivity>> {
    if l1.len() < 3 {
        return Err(Error::SetTooSmall(l1.len()));
    }
    if l1.len() != l2.len() {
        return Ok(None);
    }
    let target = Membership::new(tower, l2);
    let etas = match kind {
        Collineations::Projective => 0..1,
        Collineations::Semilinear => 0..tower.t(),
    };
    let pts2 = l2.points();
    for eta in etas {
        let moved: Vec<FieldPoint> = l1
            .points()
            .iter()
            .map(|p| {
                FieldPoint::new(tower, tower.frobenius(p.a(), eta), tower.frobenius(p.b(), eta))
                    .expect("nonzero")
            })
            .collect();
        let from = FieldMat2::from_triple(tower, &moved[0], &moved[1], &moved[2])
            .expect("distinct points")
            .inverse(tower)
            .expect("invertible");
        for (i, y1) in pts2.iter().enumerate() {
            for (j, y2) in pts2.iter().enumerate() {
                if i == j {
                    continue;
                }
                for (k, y3) in pts2.iter().enumerate() {
                    if k == i || k == j {
                        continue;
                    }
                    let to = FieldMat2::from_triple(tower, y1, y2, y3).expect("distinct points");
                    let m = from.mul(&to, tower);
                    if moved[3..].iter().all(|p| target.has(tower, &m.apply(tower, p))) {
                        let kappa = FieldProjectivity::new(tower, m, eta)?;
                        debug_assert!(kappa.maps_onto(tower, l1, l2));
                        return Ok(Some(kappa));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Every element of `PGL_2(q^t)` as a normalized matrix, in lexicographic
/// order of the free entries.
pub fn pgl2_elements(tower: &FieldTower) -> impl Iterator<Item = FieldMat2> + '_ {
    let one = FqtElem::ONE;
    let zero = FqtElem::ZERO;
    let with_a = tower.elements().flat_map(move |b| {
        tower.elements().flat_map(move |c| {
            tower
                .elements()
                .filter(move |&d| tower.sub(d, tower.mul(b, c)) != zero)
                .map(move |d| FieldMat2([one, b, c, d]))
        })
    });
    let without_a = tower
        .nonzero()
        .flat_map(move |c| tower.elements().map(move |d| FieldMat2([zero, one, c, d])));
    with_a.chain(without_a)
}

/// An element of `PGL_2(q^t)` whose cyclic group is regular on `l`.
pub fn has_cyclic_regular_action(
    tower: &FieldTower,
    l: &LinearSet,
    budgets: &Budgets,
) -> Result<Option<FieldProjectivity>> {
    let cost = Budgets::pgl_cost(tower);
    if cost > budgets.pgl_scan {
        return Err(Error::BudgetExceeded(format!(
            "PGL_2 scan of {cost} elements exceeds {}",
            budgets.pgl_scan
        )));
    }
    let Some(p0) = l.points().first() else {
        return Ok(None);
    };
    let member = Membership::new(tower, l);
    let n = l.len();
    for g in pgl2_elements(tower) {
        let mut x = g.apply(tower, p0);
        let mut steps = 1;
        while x != *p0 && steps <= n && member.has(tower, &x) {
            x = g.apply(tower, &x);
            steps += 1;
        }
        if x == *p0 && steps == n {
            return Ok(Some(FieldProjectivity::new(tower, g, 0)?));
        }
    }
    Ok(None)
}

/// Whether `⟨g⟩` acts regularly on `l`.
pub fn acts_regularly(tower: &FieldTower, g: &FieldProjectivity, l: &LinearSet) -> bool {
    let Some(p0) = l.points().first() else {
        return false;
    };
    let mut orbit = BTreeSet::new();
    let mut x = *p0;
    loop {
        if !orbit.insert(x) || orbit.len() > l.len() {
            break;
        }
        x = g.apply(tower, &x);
    }
    x == *p0 && orbit.len() == l.len() && orbit.iter().all(|p| l.contains(p))
}

/// Outcome of an optional classifier cross-check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Check<W> {
    Found(W),
    Absent,
    Skipped(String),
}

impl<W> Check<W> {
    pub fn found(&self) -> Option<bool> {
        match self {
            Check::Found(_) => Some(true),
            Check::Absent => Some(false),
            Check::Skipped(_) => None,
        }
    }

    fn from_result(r: Result<Option<W>>) -> Result<Check<W>> {
        match r {
            Ok(Some(w)) => Ok(Check::Found(w)),
            Ok(None) => Ok(Check::Absent),
            Err(Error::BudgetExceeded(m)) => Ok(Check::Skipped(m)),
            Err(e) => Err(e),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ClassifierVerdict {
    pub pseudoregulus: bool,
    pub witness_equiv: Option<FieldProjectivity>,
    pub cyclic: Check<FieldProjectivity>,
    pub swap: Check<RingProjectivity>,
}

impl ClassifierVerdict {
    /// Whether every cross-check that ran agrees with the verdict.
    pub fn consistent(&self) -> bool {
        [self.cyclic.found(), self.swap.found()]
            .into_iter()
            .flatten()
            .all(|v| v == self.pseudoregulus)
    }
}

/// Classifies a scattered point. The verdict is the projective equivalence
/// of `B(T)` with the canonical set; the cyclic-action scan and the swap
/// search run as cross-checks when their budgets allow.
pub fn is_pseudoregulus_type(tower: &FieldTower, t: &RingPoint, budgets: &Budgets) -> Result<ClassifierVerdict> {
    let b = LinearSet::of(tower, t);
    if b.len() as u64 != theta(tower.t(), tower.q() as u64) {
        return Err(Error::NotScattered);
    }
    let canon = canonical_pseudoregulus(tower);
    let witness_equiv = equivalent_under_collineations(tower, &canon, &b, Collineations::Projective)?;
    let cyclic = Check::from_result(has_cyclic_regular_action(tower, &b, budgets))?;
    let swap = Check::from_result(find_swap_projectivity(tower, t, budgets))?;
    Ok(ClassifierVerdict {
        pseudoregulus: witness_equiv.is_some(),
        witness_equiv,
        cyclic,
        swap,
    })
}

/// `diag(𝟙, σ^i)`, which maps `L_T` onto `L'_T` for `T = E(𝟙, σ^i)`.
pub fn pseudoregulus_swap(tower: &FieldTower, i: u32) -> Result<RingProjectivity> {
    if gcd(i, tower.t()) != 1 {
        return Err(Error::NotGenerator(i));
    }
    RingProjectivity::diag(tower, &Endo::identity(tower), &Endo::frobenius(tower, i))
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Whether `φ` maps the subspaces of `from` onto those of `to`.
pub fn maps_family(tower: &FieldTower, phi: &RingProjectivity, from: &[RingPoint], to: &[RingPoint]) -> bool {
    let mut img: Vec<RingPoint> = from.iter().map(|p| phi.apply(tower, p)).collect();
    img.sort();
    img.dedup();
    let mut target = to.to_vec();
    target.sort();
    img == target
}

struct Frame {
    to_standard: Mat,
}

impl Frame {
    /// A collineation taking three pairwise complementary subspaces to
    /// `[I|0]`, `[0|I]`, `[I|I]`.
    fn new(tower: &FieldTower, a: &Mat, b: &Mat, c: &Mat) -> Option<Frame> {
        let f = tower.base();
        let t = a.rows();
        let n_inv = a.vstack(b).inverse(f)?;
        let w = c.mul(&n_inv, f);
        let p_inv = w.block(0, 0, t, t).inverse(f)?;
        let cm = p_inv.mul(&w.block(0, t, t, t), f);
        let c_inv = cm.inverse(f)?;
        Some(Frame {
            to_standard: n_inv.mul(&Mat::block_diag(&Mat::identity(t), &c_inv), f),
        })
    }

    /// `A` with `X · frame = [I | A]`.
    fn graph(&self, tower: &FieldTower, x: &Mat) -> Option<Mat> {
        let f = tower.base();
        let t = x.rows();
        let w = x.mul(&self.to_standard, f);
        let p_inv = w.block(0, 0, t, t).inverse(f)?;
        Some(p_inv.mul(&w.block(0, t, t, t), f))
    }
}

/// Basis of `{M : A M = M B}` as `t × t` matrices.
fn intertwiners(tower: &FieldTower, a: &Mat, b: &Mat) -> Vec<Mat> {
    let f = tower.base();
    let t = a.rows();
    let mut k = Mat::zeros(t * t, t * t);
    for i in 0..t {
        for j in 0..t {
            let row = i * t + j;
            for r in 0..t {
                let v = a.get(i, r);
                if v != 0 {
                    let col = r * t + j;
                    k.set(row, col, f.add(k.get(row, col), v));
                }
            }
            for c in 0..t {
                let v = b.get(c, j);
                if v != 0 {
                    let col = i * t + c;
                    k.set(row, col, f.sub(k.get(row, col), v));
                }
            }
        }
    }
    let ns = k.right_nullspace(f);
    (0..ns.rows())
        .map(|r| Mat::from_vec(t, t, ns.row(r).to_vec()))
        .collect()
}

/// All nonzero combinations of `basis` with first nonzero coefficient 1.
fn projective_combinations<'a>(tower: &'a FieldTower, basis: &'a [Mat]) -> impl Iterator<Item = Mat> + 'a {
    let f = tower.base();
    let q = f.order() as u64;
    let d = basis.len() as u32;
    let t = basis.first().map_or(0, |m| m.rows());
    (1..q.pow(d)).filter_map(move |mut idx| {
        let coeffs: Vec<u32> = (0..d)
            .map(|_| {
                let c = (idx % q) as u32;
                idx /= q;
                c
            })
            .collect();
        if coeffs.iter().find(|&&c| c != 0) != Some(&1) {
            return None;
        }
        let mut m = Mat::zeros(t, t);
        for (c, b) in coeffs.iter().zip(basis) {
            if *c != 0 {
                m = m.add(&b.scale(*c, f), f);
            }
        }
        Some(m)
    })
}

fn swap_members(tower: &FieldTower, t: &RingPoint, budgets: &Budgets) -> Result<(Vec<RingPoint>, Vec<RingPoint>)> {
    let cost = Budgets::swap_cost(tower);
    if cost > budgets.swap_search {
        return Err(Error::BudgetExceeded(format!(
            "swap search of {cost} candidates exceeds {}",
            budgets.swap_search
        )));
    }
    let b = LinearSet::of(tower, t);
    if b.len() as u64 != theta(tower.t(), tower.q() as u64) {
        return Err(Error::NotScattered);
    }
    Ok((b.embedded(tower), l_prime(tower, t).members().to_vec()))
}

/// A projectivity `φ` with `L_T^φ = L'_T`, if one exists.
///
/// The scalings `diag(ρ_h, ρ_h)` fix `L_T` pointwise and permute `L'_T`
/// transitively, so the least member of `L_T` may be sent to `T` itself.
/// For every ordered choice of two more images, both triples are moved to a
/// standard frame, where the remaining freedom is `diag(M, M)` acting on
/// graphs `[I | A]` by conjugation; `M` is found by solving `A M = M B`.
pub fn find_swap_projectivity(tower: &FieldTower, t: &RingPoint, budgets: &Budgets) -> Result<Option<RingProjectivity>> {
    let (ls, lp) = swap_members(tower, t, budgets)?;
    let f = tower.base();
    let n = tower.t() as usize;
    let fx = Frame::new(tower, ls[0].matrix(), ls[1].matrix(), ls[2].matrix())
        .ok_or(Error::NotScattered)?;
    let a_graphs: Vec<Mat> = ls[2..]
        .iter()
        .map(|x| fx.graph(tower, x.matrix()).ok_or(Error::NotScattered))
        .collect::<Result<_>>()?;
    let mut a_polys: Vec<Vec<u32>> = a_graphs.iter().map(|a| a.char_poly(f)).collect();
    a_polys.sort();
    // pivot with the smallest centralizer, skipping the identity graph
    let pivot = a_graphs[1..]
        .iter()
        .min_by_key(|a| intertwiners(tower, a, a).len())
        .cloned();
    let pivot_poly = pivot.as_ref().map(|p| p.char_poly(f));
    let y1 = t.matrix();
    for y2 in lp.iter().filter(|y| y.matrix() != y1) {
        for y3 in lp.iter().filter(|y| y.matrix() != y1 && *y != y2) {
            let Some(fy) = Frame::new(tower, y1, y2.matrix(), y3.matrix()) else {
                continue;
            };
            let mut b_graphs = Vec::with_capacity(lp.len() - 2);
            for y in &lp {
                if y.matrix() == y1 || y == y2 {
                    continue;
                }
                match fy.graph(tower, y.matrix()) {
                    Some(b) => b_graphs.push(b),
                    None => break,
                }
            }
            if b_graphs.len() != a_graphs.len() {
                continue;
            }
            let mut b_polys: Vec<Vec<u32>> = b_graphs.iter().map(|b| b.char_poly(f)).collect();
            b_polys.sort();
            if a_polys != b_polys {
                continue;
            }
            b_graphs.sort();
            let candidates: Vec<Mat> = match (&pivot, &pivot_poly) {
                (Some(pa), Some(pp)) => {
                    let mut v = Vec::new();
                    for b in b_graphs.iter().filter(|b| &b.char_poly(f) == pp) {
                        let basis = intertwiners(tower, pa, b);
                        v.extend(projective_combinations(tower, &basis));
                    }
                    v
                }
                _ => vec![Mat::identity(n)],
            };
            for m in candidates {
                let Some(m_inv) = m.inverse(f) else {
                    continue;
                };
                let ok = a_graphs
                    .iter()
                    .all(|a| b_graphs.binary_search(&m_inv.mul(a, f).mul(&m, f)).is_ok());
                if !ok {
                    continue;
                }
                let back = fy.to_standard.inverse(f).expect("frame is invertible");
                let g = fx.to_standard.mul(&Mat::block_diag(&m, &m), f).mul(&back, f);
                let phi = RingProjectivity::from_matrix(tower, g)?;
                if maps_family(tower, &phi, &ls, &lp) {
                    return Ok(Some(phi));
                }
            }
        }
    }
    Ok(None)
}

/// `GL_t(q)` modulo scalars: invertible matrices with first nonzero entry 1.
pub fn pgl_matrices(tower: &FieldTower) -> Vec<Mat> {
    let f = tower.base();
    let t = tower.t() as usize;
    let basis: Vec<Mat> = (0..t * t)
        .map(|i| {
            let mut m = Mat::zeros(t, t);
            m.set(i / t, i % t, 1);
            m
        })
        .collect();
    projective_combinations(tower, &basis)
        .filter(|m| m.inverse(f).is_some())
        .collect()
}

/// Reference search for [`find_swap_projectivity`]: every ordered triple of
/// image members and every `diag(M, M)` in the residual group.
pub fn find_swap_projectivity_exhaustive(
    tower: &FieldTower,
    t: &RingPoint,
    budgets: &Budgets,
) -> Result<Option<RingProjectivity>> {
    let (ls, lp) = swap_members(tower, t, budgets)?;
    let f = tower.base();
    let fx = Frame::new(tower, ls[0].matrix(), ls[1].matrix(), ls[2].matrix())
        .ok_or(Error::NotScattered)?;
    let residual = pgl_matrices(tower);
    let lp_sorted: Vec<&Mat> = lp.iter().map(RingPoint::matrix).collect();
    for (i, y1) in lp.iter().enumerate() {
        for (j, y2) in lp.iter().enumerate() {
            for (k, y3) in lp.iter().enumerate() {
                if i == j || j == k || i == k {
                    continue;
                }
                let Some(fy) = Frame::new(tower, y1.matrix(), y2.matrix(), y3.matrix()) else {
                    continue;
                };
                let back = fy.to_standard.inverse(f).expect("invertible");
                for m in &residual {
                    let g = fx.to_standard.mul(&Mat::block_diag(m, m), f).mul(&back, f);
                    let hits = ls[3..].iter().all(|x| {
                        let img = x.matrix().mul(&g, f).row_space(f);
                        lp_sorted.binary_search(&&img).is_ok()
                    });
                    if hits {
                        return Ok(Some(RingProjectivity::from_matrix(tower, g)?));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// The projectivity `E(α, β) ↦ E(η⁻¹αη, η⁻¹βη) · (ρ_{m_ij})`, which acts on
/// the standard chain as `κ` does on `PG(1, q^t)`.
pub fn extend_collineation(tower: &FieldTower, kappa: &FieldProjectivity) -> RingProjectivity {
    let eta = Endo::frobenius(tower, kappa.eta);
    let d = RingProjectivity::diag(tower, &eta, &eta).expect("Frobenius is invertible");
    d.then(&kappa.m.lift(tower), tower)
}

/// `diag(ρ_d, ρ_d)` for `d` running over `F_{q^t}^* / F_q^*`.
pub fn chain_fixing_maps(tower: &FieldTower) -> Vec<RingProjectivity> {
    let th = theta(tower.t(), tower.q() as u64);
    let g = tower.primitive();
    (0..th)
        .map(|k| {
            let r = Endo::rho(tower, tower.pow(g, k));
            RingProjectivity::diag(tower, &r, &r).expect("nonzero scalar")
        })
        .collect()
}

/// The greatest proper divisor `s` of `t`, giving the bound `q^s + 1`.
pub fn lemma_bound(q: u64, t: u32) -> u64 {
    let s = (1..t).rev().find(|s| t.is_multiple_of(*s)).unwrap_or(1);
    q.pow(s) + 1
}

/// Number of common points of two distinct chains.
pub fn chain_intersection(c1: &Chain, c2: &Chain) -> Result<usize> {
    if c1.same_points(c2) {
        return Err(Error::EqualChains);
    }
    Ok(c1.common_points(c2))
}

/// Whether `T` is scattered and its `L_T` lies inside no chain other than
/// the standard one among `chains`.
pub fn l_set_outside_chains(tower: &FieldTower, t: &RingPoint, chains: &[Chain]) -> Result<bool> {
    if !is_scattered(tower, t) {
        return Err(Error::NotScattered);
    }
    let l = LinearSet::of(tower, t).embedded(tower);
    let standard = Chain::standard(tower);
    Ok(chains
        .iter()
        .filter(|c| !c.same_points(&standard))
        .all(|c| !l.iter().all(|p| c.contains(p))))
}
