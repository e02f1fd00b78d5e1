//! One row per endomorphism `β`, describing `E(𝟙, β)`.

use linset_core::classify::{canonical_pseudoregulus, equivalent_under_collineations, Collineations};
use linset_core::endos::Endo;
use linset_core::linsets::{theta, LinearSet};
use linset_core::ringline::RingPoint;
use linset_core::Result;
use rayon::prelude::*;

use crate::context::Context;
use crate::report::CensusRow;

struct Scan {
    beta: String,
    set: Option<LinearSet>,
    pseudoregulus: bool,
}

/// Rows sorted by the `Q:` encoding of `β`. Scattered rows carry the index
/// of the class of `B(T)` under `PΓL_2(q^t)`, numbered by first appearance.
pub fn census(ctx: &Context) -> Result<Vec<CensusRow>> {
    let tower = &ctx.tower;
    let endos = ctx.all_endos()?;
    let n = theta(tower.t(), tower.q() as u64) as usize;
    let canon = canonical_pseudoregulus(tower);
    let mut scans: Vec<Scan> = endos
        .par_iter()
        .map(|b: &Endo| {
            let t = RingPoint::graph(tower, b);
            let set = LinearSet::of_with(tower, ctx.chain(), &t);
            let scattered = set.len() == n;
            let pseudoregulus = scattered
                && (n < 3
                    || equivalent_under_collineations(tower, &canon, &set, Collineations::Projective)
                        .expect("at least three points")
                        .is_some());
            Scan {
                beta: b.encode(tower),
                set: scattered.then_some(set),
                pseudoregulus,
            }
        })
        .collect();
    scans.sort_by(|a, b| a.beta.cmp(&b.beta));

    let mut reps: Vec<(LinearSet, bool)> = Vec::new();
    let mut rows = Vec::with_capacity(scans.len());
    for s in scans {
        let orbit_id = match &s.set {
            None => None,
            Some(set) => Some(match class_of(ctx, &reps, set, s.pseudoregulus)? {
                Some(i) => i,
                None => {
                    reps.push((set.clone(), s.pseudoregulus));
                    reps.len() - 1
                }
            }),
        };
        rows.push(CensusRow {
            q: tower.q(),
            t: tower.t(),
            beta: s.beta,
            scattered: s.set.is_some(),
            pseudoregulus: s.pseudoregulus,
            orbit_id,
        });
    }
    Ok(rows)
}

fn class_of(ctx: &Context, reps: &[(LinearSet, bool)], set: &LinearSet, pseudoregulus: bool) -> Result<Option<usize>> {
    for (i, (rep, rep_pr)) in reps.iter().enumerate() {
        // pseudoregulus type is a union of classes
        if *rep_pr != pseudoregulus {
            continue;
        }
        if pseudoregulus || set.len() < 3 {
            return Ok(Some(i));
        }
        if equivalent_under_collineations(&ctx.tower, rep, set, Collineations::Semilinear)?.is_some() {
            return Ok(Some(i));
        }
    }
    Ok(None)
}
