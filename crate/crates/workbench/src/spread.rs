//! Counting regular spreads through a regulus at `t = 2`.

use std::collections::BTreeSet;

use linset_core::endos::Endo;
use linset_core::fields::FieldTower;
use linset_core::linalg::Mat;
use linset_core::linsets::{hypersurface_points, SubspaceFamily};
use linset_core::proj::{line_through, subspace_points};
use linset_core::ringline::RingPoint;

/// Lines through the least point off the quadric `Q` covered by the
/// regulus `L_T^Ψ` (`T = E(𝟙, σ)`) that miss `Q`. Each such line gives one
/// regular spread containing the regulus.
pub fn regular_spread_count_t2(tower: &FieldTower) -> u64 {
    assert_eq!(tower.t(), 2, "needs a tower with t = 2");
    let f = tower.base();
    let t = RingPoint::graph(tower, &Endo::frobenius(tower, 1));
    let quadric = hypersurface_points(tower, &SubspaceFamily::first(tower, &t));
    let space = subspace_points(&Mat::identity(4), f);
    let x = space
        .iter()
        .find(|p| !quadric.contains(p))
        .expect("the quadric is not the whole space");
    let lines: BTreeSet<Mat> = space
        .iter()
        .filter(|y| *y != x)
        .map(|y| line_through(x, y, f))
        .collect();
    lines
        .iter()
        .filter(|l| subspace_points(l, f).iter().all(|p| !quadric.contains(p)))
        .count() as u64
}
