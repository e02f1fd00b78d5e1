//! Seeded random objects for the sampled checks.

use linset_core::classify::FieldProjectivity;
use linset_core::endos::Endo;
use linset_core::fields::{FieldTower, FqtElem};
use linset_core::linalg::Mat;
use linset_core::ringline::{FieldMat2, RingProjectivity};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn elem(tower: &FieldTower, rng: &mut ChaCha8Rng) -> FqtElem {
    tower.elem(rng.gen_range(0..tower.order())).unwrap()
}

pub fn endo(tower: &FieldTower, rng: &mut ChaCha8Rng) -> Endo {
    let t = tower.t() as usize;
    Endo::from_matrix(matrix(tower, t, rng))
}

fn matrix(tower: &FieldTower, n: usize, rng: &mut ChaCha8Rng) -> Mat {
    let q = tower.q();
    Mat::from_vec(n, n, (0..n * n).map(|_| rng.gen_range(0..q)).collect())
}

pub fn invertible_matrix(tower: &FieldTower, n: usize, rng: &mut ChaCha8Rng) -> Mat {
    loop {
        let m = matrix(tower, n, rng);
        if m.rank(tower.base()) == n {
            return m;
        }
    }
}

pub fn projectivity(tower: &FieldTower, rng: &mut ChaCha8Rng) -> RingProjectivity {
    let n = 2 * tower.t() as usize;
    RingProjectivity::from_matrix(tower, invertible_matrix(tower, n, rng)).unwrap()
}

pub fn field_projectivity(tower: &FieldTower, rng: &mut ChaCha8Rng) -> FieldProjectivity {
    loop {
        let m = FieldMat2([elem(tower, rng), elem(tower, rng), elem(tower, rng), elem(tower, rng)]);
        if !m.det(tower).is_zero() {
            let eta = rng.gen_range(0..tower.t());
            return FieldProjectivity::new(tower, m, eta).unwrap();
        }
    }
}

/// `k` distinct indices below `n`.
pub fn distinct_indices(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    rand::seq::index::sample(rng, n, k).into_vec()
}
