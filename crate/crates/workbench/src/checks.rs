//! One executable check per claim, run on a single tower.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use linset_core::classify::{
    acts_regularly, canonical_pseudoregulus, chain_fixing_maps, chain_intersection,
    equivalent_under_collineations, extend_collineation,
    has_cyclic_regular_action, is_pseudoregulus_type, l_set_outside_chains, lemma_bound,
    maps_family, pseudoregulus_swap, Budgets, Collineations,
};
use linset_core::endos::Endo;
use linset_core::fields::{FieldTower, FqtElem};
use linset_core::linalg::Mat;
use linset_core::linsets::{
    hypersurface_points, l_prime, product_embedding_check, quotient_set, reconstruct_second_family,
    regulus_of_line, theta, transversals_through, LinearSet, SubspaceFamily,
};
use linset_core::proj::{line_through, subspace_points, ProjPoint};
use linset_core::ringline::{
    embed_field_point, map_triples_on_chains, Chain, FieldMat2, FieldPoint, RingPoint,
    RingProjectivity,
};
use linset_core::Error;
use rand::Rng;
use rayon::prelude::*;

use crate::context::Context;
use crate::report::{Status, VerificationReport};
use crate::sample;
use crate::spread::regular_spread_count_t2;

/// What a check found when it ran to completion.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub cases: u64,
    pub witnesses: u64,
    pub detail: Option<String>,
    pub failure: Option<String>,
}

impl Outcome {
    fn pass(cases: u64, witnesses: u64) -> Outcome {
        Outcome {
            cases,
            witnesses,
            ..Outcome::default()
        }
    }

    fn with_detail(mut self, d: impl Into<String>) -> Outcome {
        self.detail = Some(d.into());
        self
    }

    fn fail(cases: u64, counterexample: impl Into<String>) -> Outcome {
        Outcome {
            cases,
            failure: Some(counterexample.into()),
            ..Outcome::default()
        }
    }
}

/// Why a check did not run to completion.
#[derive(Debug, Clone)]
pub enum Skip {
    Budget(String),
    Precondition(String),
    Error(Error),
}

impl From<Error> for Skip {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded(m) => Skip::Budget(m),
            other => Skip::Error(other),
        }
    }
}

pub type CheckResult = std::result::Result<Outcome, Skip>;
type CheckFn = fn(&Context) -> CheckResult;

/// Every check id, in the order `all` runs them.
pub const CHECKS: &[(&str, CheckFn)] = &[
    ("prop1", prop1),
    ("prop_th", prop_th),
    ("prop5", prop5),
    ("prop6", prop6),
    ("prop7", prop7),
    ("prop8", prop8),
    ("prop9", prop9),
    ("lemma10", lemma10),
    ("prop10", prop10),
    ("prop11", prop11),
    ("prop12", prop12),
    ("prop13", prop13),
    ("thm14", thm14),
    ("thm15", thm15),
    ("prop16", prop16),
    ("ex_t0", ex_t0),
    ("ex_t1", ex_t1),
    ("nonequiv", nonequiv),
    ("remark_t2", remark_t2),
];

pub fn ids() -> impl Iterator<Item = &'static str> {
    CHECKS.iter().map(|(id, _)| *id)
}

pub fn lookup(id: &str) -> Option<CheckFn> {
    CHECKS.iter().find(|(i, _)| *i == id).map(|(_, f)| *f)
}

/// Runs one check and wraps the result as a report.
pub fn run(id: &str, ctx: &Context, timings: bool) -> Option<VerificationReport> {
    let check = lookup(id)?;
    let start = Instant::now();
    let result = check(ctx);
    let wall = start.elapsed().as_millis();
    let tower = &ctx.tower;
    let (status, outcome) = match result {
        Ok(o) => match o.failure.clone() {
            None => (Status::Pass, o),
            Some(c) => (Status::Fail { counterexample: c }, o),
        },
        Err(Skip::Budget(m)) => (Status::Skipped { reason: format!("budget: {m}") }, Outcome::default()),
        Err(Skip::Precondition(m)) => (
            Status::Skipped {
                reason: format!("precondition: {m}"),
            },
            Outcome::default(),
        ),
        Err(Skip::Error(e)) => (
            Status::Fail {
                counterexample: format!("error: {e}"),
            },
            Outcome::default(),
        ),
    };
    Some(VerificationReport {
        id: id.to_string(),
        p: tower.p(),
        e: tower.e(),
        q: tower.q(),
        t: tower.t(),
        status,
        cases: outcome.cases,
        witnesses: outcome.witnesses,
        detail: outcome.detail,
        wall_ms: timings.then_some(wall),
    })
}

fn th(tower: &FieldTower) -> usize {
    theta(tower.t(), tower.q() as u64) as usize
}

fn enc(tower: &FieldTower, b: &Endo) -> String {
    b.encode(tower)
}

fn flat(tower: &FieldTower, p: &RingPoint) -> String {
    p.encode(tower).replace('\n', "/")
}

fn sorted(mut v: Vec<RingPoint>) -> Vec<RingPoint> {
    v.sort();
    v.dedup();
    v
}

/// Triples on random chains can be mapped onto each other, and
/// projectivities preserve the distant relation.
fn prop1(ctx: &Context) -> CheckResult {
    let tower = &ctx.tower;
    let mut rng = ctx.rng("prop1");
    let standard = Chain::standard(tower);
    let trials = 25;
    for trial in 0..trials {
        let c1 = standard.image(tower, &sample::projectivity(tower, &mut rng));
        let c2 = standard.image(tower, &sample::projectivity(tower, &mut rng));
        let i = sample::distinct_indices(c1.len(), 3, &mut rng);
        let j = sample::distinct_indices(c2.len(), 3, &mut rng);
        let from = [&c1.points()[i[0]], &c1.points()[i[1]], &c1.points()[i[2]]];
        let to = [&c2.points()[j[0]], &c2.points()[j[1]], &c2.points()[j[2]]];
        let pi = map_triples_on_chains(tower, &c1, from, &c2, to)?;
        let triples_ok = (0..3).all(|k| pi.apply(tower, from[k]) == *to[k]);
        if !triples_ok || !c1.image(tower, &pi).same_points(&c2) {
            return Ok(Outcome::fail(trial, format!("trial {trial}: {}", pi.encode(tower).replace('\n', "/"))));
        }
        let phi = sample::projectivity(tower, &mut rng);
        let a = RingPoint::graph(tower, &sample::endo(tower, &mut rng));
        let b = c1.points()[i[0]].clone();
        if a.is_distant(&b, tower) != phi.apply(tower, &a).is_distant(&phi.apply(tower, &b), tower) {
            return Ok(Outcome::fail(trial, format!("distant relation not preserved at {}", flat(tower, &a))));
        }
    }
    Ok(Outcome::pass(trials, trials))
}

/// Scalings of a scattered point and the hypersurface their subspaces cover.
fn prop_th(ctx: &Context) -> CheckResult {
    let tower = &ctx.tower;
    let n = th(tower);
    let base: Vec<FqtElem> = tower.base_nonzero().collect();
    let results: Vec<Option<String>> = ctx
        .scattered()?
        .par_iter()
        .map(|(beta, t)| {
            let second = l_prime(tower, t);
            if second.len() != n || !second.pairwise_distant(tower) {
                return Some(format!("{}: {} scalings", enc(tower, beta), second.len()));
            }
            for h in tower.nonzero() {
                let th = t.scale(tower, h).unwrap();
                for &l in &base {
                    if t.scale(tower, tower.mul(h, l)).unwrap() != th {
                        return Some(format!("{}: Th differs from T(hλ)", enc(tower, beta)));
                    }
                }
            }
            let first = SubspaceFamily::first(tower, t);
            let q1 = hypersurface_points(tower, &first);
            let q2 = hypersurface_points(tower, &second);
            if q1.len() != n * n || !q1.is_partitioned() || !q2.is_partitioned() {
                return Some(format!("{}: hypersurface of {} points", enc(tower, beta), q1.len()));
            }
            if q1.sorted_points() != q2.sorted_points() {
                return Some(format!("{}: families cover different sets", enc(tower, beta)));
            }
            let meet_once = first.members().iter().all(|a| {
                second
                    .members()
                    .iter()
                    .all(|b| a.matrix().vstack(b.matrix()).rank(tower.base()) == 2 * n_t(tower) - 1)
            });
            if !meet_once {
                return Some(format!("{}: members of the two families do not meet in a point", enc(tower, beta)));
            }
            None
        })
        .collect();
    finish(results)
}

fn n_t(tower: &FieldTower) -> usize {
    tower.t() as usize
}

fn finish(results: Vec<Option<String>>) -> CheckResult {
    let cases = results.len() as u64;
    match results.into_iter().flatten().next() {
        Some(c) => Ok(Outcome::fail(cases, c)),
        None => Ok(Outcome::pass(cases, cases)),
    }
}

/// Structure of `L_T` for `T = E(𝟙, β)` over every `β`.
fn prop5(ctx: &Context) -> CheckResult {
    let tower = &ctx.tower;
    let n = th(tower);
    let endos = ctx.all_endos()?;
    let zero_point = embed_field_point(tower, &FieldPoint::affine(FqtElem::ZERO));
    let results: Vec<(bool, Option<String>)> = endos
        .par_iter()
        .map(|beta| {
            let t = RingPoint::graph(tower, beta);
            let b = LinearSet::of_with(tower, ctx.chain(), &t);
            let e = || enc(tower, beta);
            if b.len() > n {
                return (false, Some(format!("{}: #B = {}", e(), b.len())));
            }
            if b.points() != LinearSet::of_by_points(tower, &t).points() {
                return (false, Some(format!("{}: the two descriptions of B differ", e())));
            }
            if b.len() < n {
                return (false, None);
            }
            let quotients = quotient_set(tower, beta);
            if quotients.len() != n {
                return (true, Some(format!("{}: #I = {}", e(), quotients.len())));
            }
            let l = b.embedded(tower);
            let from_i = sorted(
                quotients
                    .iter()
                    .map(|&c| RingPoint::graph(tower, &Endo::rho(tower, c)))
                    .collect(),
            );
            if l != from_i {
                return (true, Some(format!("{}: L_T differs from the quotient points", e())));
            }
            let singular = !beta.is_invertible(tower);
            if l.contains(&zero_point) != singular {
                return (true, Some(format!("{}: E(1,0) membership disagrees with singularity", e())));
            }
            let mut classes: BTreeMap<FqtElem, BTreeSet<FqtElem>> = BTreeMap::new();
            for u in tower.nonzero() {
                let c = tower.mul(beta.apply(tower, u), tower.inv(u));
                classes.entry(c).or_default().insert(u);
            }
            for members in classes.values() {
                let u = *members.iter().next().unwrap();
                let line: BTreeSet<FqtElem> = tower.base_nonzero().map(|l| tower.mul(u, l)).collect();
                if *members != line {
                    return (true, Some(format!("{}: equal quotients from independent vectors", e())));
                }
            }
            if beta.kernel_dim(tower) > 1 {
                return (true, Some(format!("{}: kernel of dimension {}", e(), beta.kernel_dim(tower))));
            }
            (true, None)
        })
        .collect();
    let cases = results.len() as u64;
    let witnesses = results.iter().filter(|r| r.0).count() as u64;
    match results.into_iter().find_map(|r| r.1) {
        Some(c) => Ok(Outcome::fail(cases, c)),
        None => Ok(Outcome::pass(cases, witnesses).with_detail(format!("{witnesses} scattered"))),
    }
}

/// The product-space embedding for every scattered point.
fn prop6(ctx: &Context) -> CheckResult {
    let tower = &ctx.tower;
    let results: Vec<Option<String>> = ctx
        .scattered()?
        .par_iter()
        .map(|(beta, t)| match product_embedding_check(tower, t) {
            Ok(true) => None,
            Ok(false) => Some(format!("{}: not an embedding", enc(tower, beta))),
            Err(e) => Some(format!("{}: {e}", enc(tower, beta))),
        })
        .collect();
    finish(results)
}

/// Extensions of random collineations act as the collineation on the chain.
fn prop7(ctx: &Context) -> CheckResult {
    let tower = &ctx.tower;
    let mut rng = ctx.rng("prop7");
    let chain = ctx.chain();
    let trials = 100;
    for trial in 0..trials {
        let kappa = sample::field_projectivity(tower, &mut rng);
        let ext = extend_collineation(tower, &kappa);
        for (p, r) in chain.pairs() {
            if ext.apply(tower, r) != embed_field_point(tower, &kappa.apply(tower, p)) {
                return Ok(Outcome::fail(trial, format!("{} at {}", kappa.encode(tower), p.encode(tower))));
            }
        }
    }
    Ok(Outcome::pass(trials, trials))
}

/// The maps `diag(ρ_d, ρ_d)` fix the chain pointwise and are pairwise
/// distinct point maps.
fn prop8(ctx: &Context) -> CheckResult {
    let tower = &ctx.tower;
    let maps = chain_fixing_maps(tower);
    let n = th(tower);
    if maps.len() != n {
        return Ok(Outcome::fail(0, format!("{} maps", maps.len())));
    }
    for m in &maps {
        if ctx.chain().pairs().iter().any(|(_, r)| m.apply(tower, r) != *r) {
            return Ok(Outcome::fail(0, format!("{} moves a chain point", m.encode(tower).replace('\n', "/"))));
        }
    }
    let probe = RingPoint::graph(tower, &Endo::frobenius(tower, 1));
    let images: BTreeSet<RingPoint> = maps.iter().map(|m| m.apply(tower, &probe)).collect();
    if images.len() != n {
        return Ok(Outcome::fail(n as u64, "two maps agree on every point"));
    }
    for l in tower.base_nonzero() {
        let r = Endo::rho(tower, l);
        let d = RingProjectivity::diag(tower, &r, &r)?;
        if !d.same_action(&RingProjectivity::identity(tower), tower) {
            return Ok(Outcome::fail(n as u64, format!("scalar {} acts nontrivially", tower.encode(l))));
        }
    }
    Ok(Outcome::pass(n as u64, n as u64))
}

/// `L_{T^π} = (L_T)^π` and `L'_{T^π} = (L'_T)^π` for chain-preserving `π`.
fn prop9(ctx: &Context) -> CheckResult {
    let tower = &ctx.tower;
    let mut rng = ctx.rng("prop9");
    let trials = 40;
    let canon = canonical_pseudoregulus(tower);
    let mut scattered_seen = 0;
    for trial in 0..trials {
        let kappa = sample::field_projectivity(tower, &mut rng);
        let pi = extend_collineation(tower, &kappa);
        let beta = sample::endo(tower, &mut rng);
        let t = RingPoint::graph(tower, &beta);
        let tp = pi.apply(tower, &t);
        let l_img = sorted(LinearSet::of(tower, &t).embedded(tower).iter().map(|p| pi.apply(tower, p)).collect());
        if LinearSet::of(tower, &tp).embedded(tower) != l_img {
            return Ok(Outcome::fail(trial, format!("L_T at {}", enc(tower, &beta))));
        }
        let lp_img = sorted(l_prime(tower, &t).members().iter().map(|p| pi.apply(tower, p)).collect());
        if l_prime(tower, &tp).members() != lp_img.as_slice() {
            return Ok(Outcome::fail(trial, format!("L'_T at {}", enc(tower, &beta))));
        }
        let b = LinearSet::of(tower, &t);
        if b.len() == th(tower) && b.len() >= 3 {
            scattered_seen += 1;
            let before = equivalent_under_collineations(tower, &canon, &b, Collineations::Projective)?.is_some();
            let after = equivalent_under_collineations(tower, &canon, &LinearSet::of(tower, &tp), Collineations::Projective)?
                .is_some();
            if before != after {
                return Ok(Outcome::fail(trial, format!("verdict changes at {}", enc(tower, &beta))));
            }
        }
    }
    Ok(Outcome::pass(trials, scattered_seen))
}

/// Distinct chains share at most `q^s + 1` points.
fn lemma10(ctx: &Context) -> CheckResult {
    let tower = &ctx.tower;
    let mut rng = ctx.rng("lemma10");
    let bound = lemma_bound(tower.q() as u64, tower.t()) as usize;
    let standard = Chain::standard(tower);
    let n = tower.t() as usize;
    let mut largest = 0;
    let mut cases = 0;
    let mut attempt = 0;
    while cases < 500 && attempt < 5000 {
        attempt += 1;
        let (c1, c2) = if attempt % 2 == 0 {
            let c1 = standard.image(tower, &sample::projectivity(tower, &mut rng));
            let c2 = standard.image(tower, &sample::projectivity(tower, &mut rng));
            (c1, c2)
        } else {
            // both chains pass through ι⟨(1,0)⟩, ι⟨(0,1)⟩, ι⟨(1,1)⟩
            let m = sample::invertible_matrix(tower, n, &mut rng);
            let d = RingProjectivity::from_matrix(tower, Mat::block_diag(&m, &m))?;
            let shift = extend_collineation(tower, &sample::field_projectivity(tower, &mut rng));
            let c1 = standard.image(tower, &shift);
            let c2 = standard.image(tower, &d).image(tower, &shift);
            (c1, c2)
        };
        let common = match chain_intersection(&c1, &c2) {
            Ok(k) => k,
            Err(Error::EqualChains) => continue,
            Err(e) => return Err(e.into()),
        };
        cases += 1;
        largest = largest.max(common);
        if common > bound {
            return Ok(Outcome::fail(cases, format!("{common} common points, bound {bound}")));
        }
    }
    Ok(Outcome::pass(cases, cases).with_detail(format!("largest intersection {largest}, bound {bound}")))
}

/// `L_T` lies in no chain other than the standard one, tested on chains
/// through three of its points.
fn prop10(ctx: &Context) -> CheckResult {
    let tower = &ctx.tower;
    if tower.t() < 3 {
        return Err(Skip::Precondition("needs t >= 3".into()));
    }
    let mut rng = ctx.rng("prop10");
    let standard = Chain::standard(tower);
    let n = tower.t() as usize;
    let mut cases = 0;
    for (beta, t) in ctx.scattered()?.iter().take(20) {
        let b = LinearSet::of_with(tower, ctx.chain(), t);
        let p = b.points();
        let frame = FieldMat2::from_triple(tower, &p[0], &p[1], &p[2]).expect("distinct points").lift(tower);
        let back = frame.inverse(tower);
        let mut chains = Vec::new();
        for _ in 0..25 {
            let m = sample::invertible_matrix(tower, n, &mut rng);
            let d = RingProjectivity::from_matrix(tower, Mat::block_diag(&m, &m))?;
            let c = standard.image(tower, &back.then(&d, tower).then(&frame, tower));
            if !c.same_points(&standard) {
                chains.push(c);
            }
        }
        cases += chains.len() as u64;
        if !l_set_outside_chains(tower, t, &chains)? {
            return Ok(Outcome::fail(cases, format!("{}: L_T inside another chain", enc(tower, beta))));
        }
    }
    Ok(Outcome::pass(cases, cases))
}

/// `diag(𝟙, τ)` maps `L_T` onto `L'_T` for `T = E(𝟙, τ)`, `τ` a generator.
fn prop11(ctx: &Context) -> CheckResult {
    let tower = &ctx.tower;
    let mut cases = 0;
    let mut witness = None;
    for i in 1..tower.t() {
        let Ok(phi) = pseudoregulus_swap(tower, i) else {
            continue;
        };
        cases += 1;
        let t = RingPoint::graph(tower, &Endo::frobenius(tower, i));
        let l = LinearSet::of_with(tower, ctx.chain(), &t).embedded(tower);
        if !maps_family(tower, &phi, &l, l_prime(tower, &t).members()) {
            return Ok(Outcome::fail(cases, format!("exponent {i}")));
        }
        witness.get_or_insert_with(|| phi.encode(tower).replace('\n', "/"));
    }
    Ok(Outcome::pass(cases, cases).with_detail(format!("witness {}", witness.unwrap_or_default())))
}

/// Lines of `T^Ψ` are transversals of reguli of `U(T)` with unique
/// transversals through each further point.
fn prop12(ctx: &Context) -> CheckResult {
    let tower = &ctx.tower;
    let f = tower.base();
    let q = tower.q() as usize;
    let mut cases = 0;
    for (beta, t) in ctx.scattered()?.iter().take(10) {
        let first = SubspaceFamily::first(tower, t);
        let q_set = hypersurface_points(tower, &first);
        let v_points = t.points(tower);
        let mut lines = BTreeSet::new();
        for a in 0..v_points.len() {
            for b in a + 1..v_points.len() {
                lines.insert(line_through(&v_points[a], &v_points[b], f));
            }
        }
        for y in &lines {
            let reg = regulus_of_line(tower, y, &q_set)?;
            if reg.members.len() != q + 1 {
                return Ok(Outcome::fail(cases, format!("{}: regulus of {} members", enc(tower, beta), reg.members.len())));
            }
            for &m in &reg.members {
                for x in first.members()[m].points(tower) {
                    if v_points.contains(&x) {
                        continue;
                    }
                    cases += 1;
                    let tr = transversals_through(tower, &first, &reg, &q_set, &x);
                    if tr.len() != 1 {
                        return Ok(Outcome::fail(cases, format!("{}: {} transversals", enc(tower, beta), tr.len())));
                    }
                    let on: BTreeSet<usize> = subspace_points(&tr[0], f)
                        .iter()
                        .flat_map(|p| q_set.members_through(p).to_vec())
                        .collect();
                    if on.len() != q + 1 {
                        return Ok(Outcome::fail(cases, format!("{}: transversal not on the member set", enc(tower, beta))));
                    }
                }
            }
        }
        let inside = first.members()[0].matrix().block(0, 0, 2, 2 * tower.t() as usize);
        if regulus_of_line(tower, &inside, &q_set).is_ok() {
            return Ok(Outcome::fail(cases, "a line inside a member was accepted"));
        }
    }
    Ok(Outcome::pass(cases, cases))
}

/// The second family is determined by the first and one of its members.
fn prop13(ctx: &Context) -> CheckResult {
    let tower = &ctx.tower;
    let results: Vec<Option<String>> = ctx
        .scattered()?
        .par_iter()
        .map(|(beta, t)| {
            let first = SubspaceFamily::first(tower, t);
            match reconstruct_second_family(tower, &first, t) {
                Ok(rebuilt) if rebuilt.same_members(&l_prime(tower, t)) => None,
                Ok(_) => Some(format!("{}: reconstruction differs from L'_T", enc(tower, beta))),
                Err(e) => Some(format!("{}: {e}", enc(tower, beta))),
            }
        })
        .collect();
    finish(results)
}

/// Collineations between linear sets extend to projectivities between
/// their chain-point sets; at `t = 2` all scattered sets are equivalent.
fn thm14(ctx: &Context) -> CheckResult {
    let tower = &ctx.tower;
    let scattered = ctx.scattered()?;
    if scattered.len() < 2 {
        return Err(Skip::Precondition("fewer than two scattered points".into()));
    }
    let mut rng = ctx.rng("thm14");
    let pairs: Vec<(usize, usize)> = if tower.t() == 2 {
        (1..scattered.len()).map(|j| (0, j)).collect()
    } else {
        (0..40)
            .map(|_| (rng.gen_range(0..scattered.len()), rng.gen_range(0..scattered.len())))
            .collect()
    };
    let mut witnesses = 0;
    for &(i, j) in &pairs {
        let (bi, ti) = &scattered[i];
        let (bj, tj) = &scattered[j];
        let li = LinearSet::of_with(tower, ctx.chain(), ti);
        let lj = LinearSet::of_with(tower, ctx.chain(), tj);
        let Some(kappa) = equivalent_under_collineations(tower, &li, &lj, Collineations::Semilinear)? else {
            if tower.t() == 2 {
                return Ok(Outcome::fail(pairs.len() as u64, format!("{} and {} inequivalent", enc(tower, bi), enc(tower, bj))));
            }
            continue;
        };
        witnesses += 1;
        let ext = extend_collineation(tower, &kappa);
        if !maps_family(tower, &ext, &li.embedded(tower), &lj.embedded(tower)) {
            return Ok(Outcome::fail(pairs.len() as u64, format!("extension of {} fails", kappa.encode(tower))));
        }
    }
    Ok(Outcome::pass(pairs.len() as u64, witnesses))
}

/// Equivalence with the canonical set, a regular cyclic group and a swap
/// projectivity occur together.
fn thm15(ctx: &Context) -> CheckResult {
    let tower = &ctx.tower;
    if tower.t() < 3 {
        return Err(Skip::Precondition("needs t >= 3".into()));
    }
    require(Budgets::pgl_cost(tower), ctx.budgets.pgl_scan, "PGL_2 scan")?;
    require(Budgets::swap_cost(tower), ctx.budgets.swap_search, "swap search")?;
    let results: Vec<Result<(bool, Option<String>), Error>> = ctx
        .scattered()?
        .par_iter()
        .map(|(beta, t)| {
            let v = is_pseudoregulus_type(tower, t, &ctx.budgets)?;
            let msg = (!v.consistent()).then(|| {
                format!(
                    "{}: equivalence {}, cyclic {:?}, swap {:?}",
                    enc(tower, beta),
                    v.pseudoregulus,
                    v.cyclic.found(),
                    v.swap.found()
                )
            });
            Ok((v.pseudoregulus, msg))
        })
        .collect();
    let results = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    let cases = results.len() as u64;
    let witnesses = results.iter().filter(|r| r.0).count() as u64;
    match results.into_iter().find_map(|r| r.1) {
        Some(c) => Ok(Outcome::fail(cases, c)),
        None => Ok(Outcome::pass(cases, witnesses).with_detail(format!("{witnesses} of pseudoregulus type"))),
    }
}

fn require(cost: u128, cap: u128, what: &str) -> Result<(), Skip> {
    if cost > cap {
        return Err(Skip::Budget(format!("{what} of {cost} exceeds {cap}")));
    }
    Ok(())
}

/// Sets of pseudoregulus type admit a cyclic group acting regularly.
fn prop16(ctx: &Context) -> CheckResult {
    let tower = &ctx.tower;
    require(Budgets::pgl_cost(tower), ctx.budgets.pgl_scan, "PGL_2 scan")?;
    let canon = canonical_pseudoregulus(tower);
    if canon.len() < 3 {
        return Err(Skip::Precondition("linear sets have fewer than three points".into()));
    }
    let results: Vec<Result<Option<String>, Error>> = ctx
        .scattered()?
        .par_iter()
        .map(|(beta, t)| {
            let b = LinearSet::of_with(tower, ctx.chain(), t);
            if equivalent_under_collineations(tower, &canon, &b, Collineations::Projective)?.is_none() {
                return Ok(None);
            }
            Ok(match has_cyclic_regular_action(tower, &b, &ctx.budgets)? {
                Some(g) if acts_regularly(tower, &g, &b) => None,
                _ => Some(format!("{}: no regular cyclic group", enc(tower, beta))),
            })
        })
        .collect();
    let results = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    finish(results)
}

/// `E(𝟙, τ)` is scattered of pseudoregulus type for every generator `τ`.
fn ex_t0(ctx: &Context) -> CheckResult {
    let tower = &ctx.tower;
    let canon = canonical_pseudoregulus(tower);
    let mut cases = 0;
    for i in (1..tower.t()).filter(|&i| gcd(i, tower.t()) == 1) {
        cases += 1;
        let t = RingPoint::graph(tower, &Endo::frobenius(tower, i));
        let b = LinearSet::of_with(tower, ctx.chain(), &t);
        if b.len() != th(tower) {
            return Ok(Outcome::fail(cases, format!("exponent {i}: #B = {}", b.len())));
        }
        if b.len() >= 3 && equivalent_under_collineations(tower, &canon, &b, Collineations::Projective)?.is_none() {
            return Ok(Outcome::fail(cases, format!("exponent {i}: not equivalent to the canonical set")));
        }
    }
    Ok(Outcome::pass(cases, cases))
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `E(𝟙, σρ_g + σ^{t-1})`.
pub fn t1_point(tower: &FieldTower, g: FqtElem) -> RingPoint {
    let t = tower.t() as usize;
    let mut c = vec![FqtElem::ZERO; t];
    c[1] = g;
    c[t - 1] = tower.add(c[t - 1], FqtElem::ONE);
    RingPoint::graph(tower, &Endo::from_qpoly(tower, &c))
}

/// The elements `g ≠ 0` whose norm is not 1.
pub fn non_norm_one(tower: &FieldTower) -> Vec<FqtElem> {
    tower.nonzero().filter(|&g| tower.norm(g) != FqtElem::ONE).collect()
}

/// `E(𝟙, σρ_g + σ^{t-1})` is scattered whenever the norm of `g` is not 1.
fn ex_t1(ctx: &Context) -> CheckResult {
    let tower = &ctx.tower;
    let gs = non_norm_one(tower);
    if gs.is_empty() {
        return Err(Skip::Precondition("every nonzero element has norm 1".into()));
    }
    let results: Vec<Option<String>> = gs
        .par_iter()
        .map(|&g| {
            let b = LinearSet::of_with(tower, ctx.chain(), &t1_point(tower, g));
            (b.len() != th(tower)).then(|| format!("g = {}: #B = {}", tower.encode(g), b.len()))
        })
        .collect();
    finish(results)
}

/// `B(T_0)` and `B(T_1)` are inequivalent under every collineation.
fn nonequiv(ctx: &Context) -> CheckResult {
    let tower = &ctx.tower;
    if tower.q() <= 3 || tower.t() <= 3 {
        return Err(Skip::Precondition("needs q > 3 and t > 3".into()));
    }
    let gs = non_norm_one(tower);
    let b0 = LinearSet::of_with(tower, ctx.chain(), &RingPoint::graph(tower, &Endo::frobenius(tower, 1)));
    let results: Vec<Result<Option<String>, Error>> = gs
        .par_iter()
        .map(|&g| {
            let b1 = LinearSet::of_with(tower, ctx.chain(), &t1_point(tower, g));
            Ok(equivalent_under_collineations(tower, &b0, &b1, Collineations::Semilinear)?
                .map(|k| format!("g = {}: {}", tower.encode(g), k.encode(tower))))
        })
        .collect();
    let results = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    finish(results)
}

/// The number of regular spreads through a regulus of `PG(3, q)`.
fn remark_t2(ctx: &Context) -> CheckResult {
    let tower = &ctx.tower;
    if tower.t() != 2 {
        return Err(Skip::Precondition("needs t = 2".into()));
    }
    let q = tower.q() as u64;
    let count = regular_spread_count_t2(tower);
    let expected = q * (q - 1) / 2;
    if count != expected {
        return Ok(Outcome::fail(1, format!("{count} lines, expected {expected}")));
    }
    Ok(Outcome::pass(1, count).with_detail(format!("{count} external lines")))
}

/// Points of `PG(n-1, q)` for a check that scans a whole space.
pub fn all_points(tower: &FieldTower, n: usize) -> Vec<ProjPoint> {
    subspace_points(&Mat::identity(n), tower.base())
}
