//! Linear sets `B(T)`, the chain-point set `L_T`, the scaling family `L'_T`,
//! the hypersurface covered by their subspaces, reguli, and the
//! reconstruction of the second family of maximal subspaces.

use std::collections::{BTreeSet, HashMap};

use crate::endos::Endo;
use crate::error::{Error, Result};
use crate::fields::{FieldTower, FqtElem};
use crate::linalg::Mat;
use crate::proj::{line_through, span, subspace_points, ProjPoint};
use crate::ringline::{embed_field_point, FieldPoint, RingPoint};

/// `θ_{n-1} = (q^n - 1)/(q - 1)`, the number of points of `PG(n-1, q)`.
pub fn theta(n: u32, q: u64) -> u64 {
    assert!(n >= 1, "theta needs n >= 1");
    (0..n).map(|i| q.pow(i)).sum()
}

/// The points of `PG(1, q^t)` together with their images under `ι`.
#[derive(Debug, Clone)]
pub struct ChainPoints {
    pairs: Vec<(FieldPoint, RingPoint)>,
}

impl ChainPoints {
    pub fn new(tower: &FieldTower) -> ChainPoints {
        let pairs = FieldPoint::all(tower)
            .into_iter()
            .map(|p| {
                let r = embed_field_point(tower, &p);
                (p, r)
            })
            .collect();
        ChainPoints { pairs }
    }

    pub fn pairs(&self) -> &[(FieldPoint, RingPoint)] {
        &self.pairs
    }
}

/// A linear set of `PG(1, q^t)`, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSet {
    points: Vec<FieldPoint>,
    source: Option<RingPoint>,
}

impl LinearSet {
    pub fn from_points(points: impl IntoIterator<Item = FieldPoint>) -> LinearSet {
        let set: BTreeSet<FieldPoint> = points.into_iter().collect();
        LinearSet {
            points: set.into_iter().collect(),
            source: None,
        }
    }

    /// `B(T)`: the field points whose image under `ι` is not distant from `T`.
    pub fn of(tower: &FieldTower, t: &RingPoint) -> LinearSet {
        Self::of_with(tower, &ChainPoints::new(tower), t)
    }

    pub fn of_with(tower: &FieldTower, chain: &ChainPoints, t: &RingPoint) -> LinearSet {
        let points = chain
            .pairs
            .iter()
            .filter(|(_, r)| !r.is_distant(t, tower))
            .map(|(p, _)| *p)
            .collect();
        LinearSet {
            points,
            source: Some(t.clone()),
        }
    }

    /// `B(T)` read off from the points of `T^Ψ`: each `⟨(u, v)⟩_q` gives
    /// `⟨(u, v)⟩_{q^t}`.
    pub fn of_by_points(tower: &FieldTower, t: &RingPoint) -> LinearSet {
        let n = tower.t() as usize;
        let mut set = LinearSet::from_points(t.points(tower).into_iter().map(|x| {
            let u = tower.from_coeffs(&x.coords()[..n]);
            let v = tower.from_coeffs(&x.coords()[n..]);
            FieldPoint::new(tower, u, v).expect("nonzero vector")
        }));
        set.source = Some(t.clone());
        set
    }

    pub fn points(&self) -> &[FieldPoint] {
        &self.points
    }

    pub fn source(&self) -> Option<&RingPoint> {
        self.source.as_ref()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &FieldPoint) -> bool {
        self.points.binary_search(p).is_ok()
    }

    /// `ι`-image, sorted.
    pub fn embedded(&self, tower: &FieldTower) -> Vec<RingPoint> {
        let mut v: Vec<RingPoint> = self.points.iter().map(|p| embed_field_point(tower, p)).collect();
        v.sort();
        v
    }
}

/// Whether `#B(T) = θ_{t-1}`.
pub fn is_scattered(tower: &FieldTower, t: &RingPoint) -> bool {
    is_scattered_with(tower, &ChainPoints::new(tower), t)
}

pub fn is_scattered_with(tower: &FieldTower, chain: &ChainPoints, t: &RingPoint) -> bool {
    LinearSet::of_with(tower, chain, t).len() as u64 == theta(tower.t(), tower.q() as u64)
}

/// `L_T`, sorted.
pub fn l_set(tower: &FieldTower, t: &RingPoint) -> Vec<RingPoint> {
    LinearSet::of(tower, t).embedded(tower)
}

/// `{u^β / u : u ≠ 0}`.
pub fn quotient_set(tower: &FieldTower, beta: &Endo) -> BTreeSet<FqtElem> {
    tower
        .nonzero()
        .map(|u| tower.mul(beta.apply(tower, u), tower.inv(u)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyTag {
    First,
    Second,
}

/// A set of `(t-1)`-subspaces of `PG(2t-1, q)`, given as points of `PG(1, E)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceFamily {
    members: Vec<RingPoint>,
    tag: FamilyTag,
}

impl SubspaceFamily {
    pub fn new(members: impl IntoIterator<Item = RingPoint>, tag: FamilyTag) -> SubspaceFamily {
        let set: BTreeSet<RingPoint> = members.into_iter().collect();
        SubspaceFamily {
            members: set.into_iter().collect(),
            tag,
        }
    }

    /// `U(T) = L_T^Ψ`.
    pub fn first(tower: &FieldTower, t: &RingPoint) -> SubspaceFamily {
        Self::new(l_set(tower, t), FamilyTag::First)
    }

    /// `U'(T) = L'_T^Ψ`, the distinct scalings `Th`.
    pub fn second(tower: &FieldTower, t: &RingPoint) -> SubspaceFamily {
        Self::new(
            tower.nonzero().map(|h| t.scale(tower, h).expect("h is nonzero")),
            FamilyTag::Second,
        )
    }

    pub fn members(&self) -> &[RingPoint] {
        &self.members
    }

    pub fn tag(&self) -> FamilyTag {
        self.tag
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn pairwise_distant(&self, tower: &FieldTower) -> bool {
        let m = &self.members;
        (0..m.len()).all(|i| (i + 1..m.len()).all(|j| m[i].is_distant(&m[j], tower)))
    }

    /// Same members, ignoring the tag.
    pub fn same_members(&self, other: &SubspaceFamily) -> bool {
        self.members == other.members
    }
}

/// `L'_T`, sorted.
pub fn l_prime(tower: &FieldTower, t: &RingPoint) -> SubspaceFamily {
    SubspaceFamily::second(tower, t)
}

/// A set of points of `PG(2t-1, q)` with the family members through each.
#[derive(Debug, Clone)]
pub struct PointSetQ {
    incidence: HashMap<ProjPoint, Vec<usize>>,
}

impl PointSetQ {
    pub fn len(&self) -> usize {
        self.incidence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.incidence.is_empty()
    }

    pub fn contains(&self, x: &ProjPoint) -> bool {
        self.incidence.contains_key(x)
    }

    /// Indices of the members containing `x`.
    pub fn members_through(&self, x: &ProjPoint) -> &[usize] {
        self.incidence.get(x).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn sorted_points(&self) -> Vec<ProjPoint> {
        let mut v: Vec<ProjPoint> = self.incidence.keys().cloned().collect();
        v.sort();
        v
    }

    /// Whether every point lies on exactly one member.
    pub fn is_partitioned(&self) -> bool {
        self.incidence.values().all(|v| v.len() == 1)
    }
}

/// The union of the point sets of all members.
pub fn hypersurface_points(tower: &FieldTower, family: &SubspaceFamily) -> PointSetQ {
    let mut incidence: HashMap<ProjPoint, Vec<usize>> = HashMap::new();
    for (i, m) in family.members.iter().enumerate() {
        for x in m.points(tower) {
            incidence.entry(x).or_default().push(i);
        }
    }
    PointSetQ { incidence }
}

fn scaled_point(tower: &FieldTower, x: &ProjPoint, h: FqtElem) -> ProjPoint {
    let n = tower.t() as usize;
    let u = tower.mul(tower.from_coeffs(&x.coords()[..n]), h);
    let v = tower.mul(tower.from_coeffs(&x.coords()[n..]), h);
    let mut c = tower.coeffs(u);
    c.extend(tower.coeffs(v));
    ProjPoint::new(c, tower.base()).expect("nonzero")
}

fn collinear(tower: &FieldTower, pts: &[ProjPoint]) -> bool {
    let rows: Vec<Vec<u32>> = pts.iter().map(|p| p.coords().to_vec()).collect();
    Mat::from_rows(&rows).rank(tower.base()) == 2
}

/// Checks that `(⟨h⟩_q, X) ↦ X · diag(ρ_h, ρ_h)` embeds the product space
/// `PG(t-1, q) × T^Ψ`: it is injective and maps lines of either kind to lines.
pub fn product_embedding_check(tower: &FieldTower, t: &RingPoint) -> Result<bool> {
    if !is_scattered(tower, t) {
        return Err(Error::NotScattered);
    }
    let f = tower.base();
    let n = tower.t() as usize;
    let hs = subspace_points(&Mat::identity(n), f);
    let h_elems: Vec<FqtElem> = hs.iter().map(|h| tower.from_coeffs(h.coords())).collect();
    let xs = t.points(tower);
    let mut images = BTreeSet::new();
    for &h in &h_elems {
        for x in &xs {
            images.insert(scaled_point(tower, x, h));
        }
    }
    if images.len() != hs.len() * xs.len() {
        return Ok(false);
    }
    let lines_of = |pts: &[ProjPoint]| -> Vec<Vec<ProjPoint>> {
        let mut seen = BTreeSet::new();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                seen.insert(line_through(&pts[i], &pts[j], f));
            }
        }
        seen.into_iter().map(|l| subspace_points(&l, f)).collect()
    };
    for line in lines_of(&hs) {
        let line_h: Vec<FqtElem> = line.iter().map(|h| tower.from_coeffs(h.coords())).collect();
        for x in &xs {
            let img: Vec<ProjPoint> = line_h.iter().map(|&h| scaled_point(tower, x, h)).collect();
            if !collinear(tower, &img) {
                return Ok(false);
            }
        }
    }
    for line in lines_of(&xs) {
        for &h in &h_elems {
            let img: Vec<ProjPoint> = line.iter().map(|x| scaled_point(tower, x, h)).collect();
            if !collinear(tower, &img) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A regulus: members of a family meeting a transversal line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Regulus {
    pub members: Vec<usize>,
}

/// The `q + 1` members of `family` meeting the line `y` (a `2 × 2t` basis),
/// transversality checked against the incidence of `q_set`.
pub fn regulus_of_line(tower: &FieldTower, y: &Mat, q_set: &PointSetQ) -> Result<Regulus> {
    let pts = subspace_points(y, tower.base());
    let mut members = BTreeSet::new();
    for x in &pts {
        match q_set.members_through(x) {
            [m] => {
                if !members.insert(*m) {
                    return Err(Error::NotTransversal(
                        "a member meets the line in two points".into(),
                    ));
                }
            }
            [] => return Err(Error::NotTransversal("a point of the line is on no member".into())),
            _ => {
                return Err(Error::NotTransversal(
                    "a point of the line is on several members".into(),
                ))
            }
        }
    }
    Ok(Regulus {
        members: members.into_iter().collect(),
    })
}

/// Lines through `x` meeting every member of the regulus, found by joining
/// `x` to the points of another member.
pub fn transversals_through(
    tower: &FieldTower,
    family: &SubspaceFamily,
    regulus: &Regulus,
    q_set: &PointSetQ,
    x: &ProjPoint,
) -> Vec<Mat> {
    let f = tower.base();
    let own = q_set.members_through(x).first().copied();
    let Some(&other) = regulus.members.iter().find(|&&m| Some(m) != own) else {
        return Vec::new();
    };
    let mut found = BTreeSet::new();
    for y in family.members[other].points(tower) {
        let line = line_through(x, &y, f);
        let mut hit = BTreeSet::new();
        for z in subspace_points(&line, f) {
            for &m in q_set.members_through(&z) {
                if regulus.members.binary_search(&m).is_ok() {
                    hit.insert(m);
                }
            }
        }
        if hit.len() == regulus.members.len() {
            found.insert(line);
        }
    }
    found.into_iter().collect()
}

/// Lines of the subspace `v` through its point `z`.
fn lines_through_in(tower: &FieldTower, v_points: &[ProjPoint], z: &ProjPoint) -> Vec<Mat> {
    let f = tower.base();
    let set: BTreeSet<Mat> = v_points
        .iter()
        .filter(|w| *w != z)
        .map(|w| line_through(z, w, f))
        .collect();
    set.into_iter().collect()
}

/// Rebuilds the second family of maximal subspaces from the first family
/// and one member `v` of the second, using transversals of reguli only.
pub fn reconstruct_second_family(
    tower: &FieldTower,
    first: &SubspaceFamily,
    v: &RingPoint,
) -> Result<SubspaceFamily> {
    let f = tower.base();
    let n = tower.t() as usize;
    let no = |m: &str| Error::NoProductStructure(m.to_string());
    let q_set = hypersurface_points(tower, first);
    if !q_set.is_partitioned() {
        return Err(no("members of the first family intersect"));
    }
    let v_points = v.points(tower);
    let mut v_meet: HashMap<usize, ProjPoint> = HashMap::new();
    for x in &v_points {
        match q_set.members_through(x) {
            [m] => {
                if v_meet.insert(*m, x.clone()).is_some() {
                    return Err(no("the subspace meets a member in more than a point"));
                }
            }
            _ => return Err(no("the subspace leaves the hypersurface")),
        }
    }
    if v_meet.len() != first.len() {
        return Err(no("the subspace misses a member"));
    }
    let theta_pts = v_points.len();
    let mut covered: HashMap<ProjPoint, usize> = v_points.iter().map(|x| (x.clone(), 0)).collect();
    let mut members = vec![v.clone()];
    for x in q_set.sorted_points() {
        if covered.contains_key(&x) {
            continue;
        }
        let mx = q_set.members_through(&x)[0];
        let z = &v_meet[&mx];
        let mut collected: BTreeSet<ProjPoint> = BTreeSet::new();
        collected.insert(x.clone());
        for y in lines_through_in(tower, &v_points, z) {
            let reg = regulus_of_line(tower, &y, &q_set)
                .map_err(|e| Error::NoProductStructure(e.to_string()))?;
            let tr = transversals_through(tower, first, &reg, &q_set, &x);
            if tr.len() != 1 {
                return Err(no("a regulus has no unique transversal through the point"));
            }
            collected.extend(subspace_points(&tr[0], f));
        }
        let refs: Vec<&ProjPoint> = collected.iter().collect();
        let basis = span(&refs, f);
        if basis.rows() != n || collected.len() != theta_pts {
            return Err(no("collected points do not form a maximal subspace"));
        }
        let member = RingPoint::from_matrix(tower, &basis)?;
        let idx = members.len();
        for p in &collected {
            if covered.insert(p.clone(), idx).is_some() {
                return Err(no("reconstructed members intersect"));
            }
        }
        members.push(member);
    }
    if covered.len() != q_set.len() || members.len() != first.len() {
        return Err(no("reconstructed members do not partition the hypersurface"));
    }
    Ok(SubspaceFamily::new(members, FamilyTag::Second))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ringline::{enumerate_ring_points, DEFAULT_POINT_BUDGET};

    fn f8() -> FieldTower {
        FieldTower::new(2, 1, 3).unwrap()
    }

    fn t0(t: &FieldTower) -> RingPoint {
        RingPoint::graph(t, &Endo::frobenius(t, 1))
    }

    #[test]
    fn theta_values() {
        assert_eq!(theta(3, 2), 7);
        assert_eq!(theta(1, 5), 1);
        assert_eq!(theta(4, 3), 40);
    }

    #[test]
    fn b_of_frobenius_point() {
        let t = f8();
        let b = LinearSet::of(&t, &t0(&t));
        let expected = LinearSet::from_points(t.nonzero().map(FieldPoint::affine));
        assert_eq!(b.points(), expected.points());
        assert!(is_scattered(&t, &t0(&t)));
        let zero = RingPoint::graph(&t, &Endo::zero(&t));
        assert_eq!(LinearSet::of(&t, &zero).points(), &[FieldPoint::affine(FqtElem::ZERO)]);
        let bb = t.y();
        let on_chain = RingPoint::graph(&t, &Endo::rho(&t, bb));
        assert_eq!(LinearSet::of(&t, &on_chain).points(), &[FieldPoint::affine(bb)]);
    }

    #[test]
    fn both_characterizations_of_b_agree() {
        let t = f8();
        for p in enumerate_ring_points(&t, DEFAULT_POINT_BUDGET).unwrap().iter().step_by(7) {
            let a = LinearSet::of(&t, p);
            assert_eq!(a.points(), LinearSet::of_by_points(&t, p).points());
            assert!(a.len() as u64 <= theta(3, 2));
        }
    }

    #[test]
    fn quotient_sets() {
        let t = f8();
        assert_eq!(quotient_set(&t, &Endo::rho(&t, t.y())), [t.y()].into());
        let i = quotient_set(&t, &Endo::frobenius(&t, 1));
        assert_eq!(i.len(), 7);
        assert!(!i.contains(&FqtElem::ZERO));
    }

    #[test]
    fn families_of_t0() {
        let t = f8();
        let tp = t0(&t);
        let u = SubspaceFamily::first(&t, &tp);
        let u2 = l_prime(&t, &tp);
        assert_eq!(u.len(), 7);
        assert_eq!(u2.len(), 7);
        assert!(u2.pairwise_distant(&t));
        let q1 = hypersurface_points(&t, &u);
        let q2 = hypersurface_points(&t, &u2);
        assert_eq!(q1.len(), 49);
        assert_eq!(q1.sorted_points(), q2.sorted_points());
        assert!(q1.is_partitioned() && q2.is_partitioned());
        for a in u.members() {
            for b in u2.members() {
                let both = a.matrix().vstack(b.matrix()).rank(t.base());
                assert_eq!(both, 5, "members meet in exactly one point");
            }
        }
        let chain_point = embed_field_point(&t, &FieldPoint::affine(t.y()));
        assert_eq!(l_prime(&t, &chain_point).members(), std::slice::from_ref(&chain_point));
        let single = SubspaceFamily::new([chain_point], FamilyTag::First);
        assert_eq!(hypersurface_points(&t, &single).len(), 7);
    }

    #[test]
    fn product_embedding() {
        let t = f8();
        assert_eq!(product_embedding_check(&t, &t0(&t)), Ok(true));
        let zero = RingPoint::graph(&t, &Endo::zero(&t));
        assert_eq!(product_embedding_check(&t, &zero), Err(Error::NotScattered));
    }

    #[test]
    fn reguli_and_transversals() {
        let t = f8();
        let f = t.base();
        let tp = t0(&t);
        let u = SubspaceFamily::first(&t, &tp);
        let qs = hypersurface_points(&t, &u);
        let inside = u.members()[0].matrix().block(0, 0, 2, 6);
        assert!(matches!(regulus_of_line(&t, &inside, &qs), Err(Error::NotTransversal(_))));
        let y = tp.matrix().block(0, 0, 2, 6);
        let reg = regulus_of_line(&t, &y, &qs).unwrap();
        assert_eq!(reg.members.len(), 3);
        // every line through an off-regulus-line hypersurface point, by brute force
        let all = subspace_points(&Mat::identity(6), f);
        let reg_pts: BTreeSet<ProjPoint> = reg
            .members
            .iter()
            .flat_map(|&m| u.members()[m].points(&t))
            .collect();
        let x = reg_pts.iter().find(|p| !tp.points(&t).contains(p)).unwrap().clone();
        let mut lines = BTreeSet::new();
        for z in &all {
            if *z == x {
                continue;
            }
            let l = line_through(&x, z, f);
            let hits: BTreeSet<usize> = subspace_points(&l, f)
                .iter()
                .flat_map(|p| qs.members_through(p).to_vec())
                .filter(|m| reg.members.contains(m))
                .collect();
            if hits.len() == 3 {
                lines.insert(l);
            }
        }
        assert_eq!(lines.len(), 1);
        let fast = transversals_through(&t, &u, &reg, &qs, &x);
        assert_eq!(fast, lines.into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn reconstruction_matches_scalings() {
        let t = f8();
        let tp = t0(&t);
        let u = SubspaceFamily::first(&t, &tp);
        let rebuilt = reconstruct_second_family(&t, &u, &tp).unwrap();
        assert!(rebuilt.same_members(&l_prime(&t, &tp)));
        let bad = u.members()[0].clone();
        assert!(matches!(
            reconstruct_second_family(&t, &u, &bad),
            Err(Error::NoProductStructure(_))
        ));
    }

    #[test]
    fn reconstruction_at_t2_gives_opposite_regulus() {
        let t = FieldTower::new(3, 1, 2).unwrap();
        let tp = t0(&t);
        let u = SubspaceFamily::first(&t, &tp);
        assert_eq!(u.len(), 4);
        let rebuilt = reconstruct_second_family(&t, &u, &tp).unwrap();
        assert_eq!(rebuilt.len(), 4);
        let qs = hypersurface_points(&t, &u);
        // every line of the quadric meeting all of U is in the rebuilt family
        for m in rebuilt.members() {
            let hit: BTreeSet<usize> = m
                .points(&t)
                .iter()
                .flat_map(|p| qs.members_through(p).to_vec())
                .collect();
            assert_eq!(hit.len(), 4);
        }
        assert!(rebuilt.same_members(&l_prime(&t, &tp)));
    }
}
