//! Shared state for the checks run on one tower.

use std::sync::OnceLock;

use linset_core::classify::Budgets;
use linset_core::endos::Endo;
use linset_core::fields::FieldTower;
use linset_core::linsets::{is_scattered_with, ChainPoints};
use linset_core::ringline::RingPoint;
use linset_core::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub struct Context {
    pub tower: FieldTower,
    pub budgets: Budgets,
    pub seed: u64,
    chain: ChainPoints,
    scattered: OnceLock<Vec<(Endo, RingPoint)>>,
}

impl Context {
    pub fn new(tower: FieldTower, budgets: Budgets, seed: u64) -> Context {
        let chain = ChainPoints::new(&tower);
        Context {
            tower,
            budgets,
            seed,
            chain,
            scattered: OnceLock::new(),
        }
    }

    pub fn chain(&self) -> &ChainPoints {
        &self.chain
    }

    /// A generator private to one check, so results do not depend on the
    /// order in which checks run.
    pub fn rng(&self, salt: &str) -> ChaCha8Rng {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in salt.bytes() {
            h = (h ^ b as u64).wrapping_mul(0x0100_0000_01b3);
        }
        ChaCha8Rng::seed_from_u64(self.seed ^ h)
    }

    pub fn require_beta_scan(&self) -> Result<()> {
        let cost = Budgets::beta_scan_cost(&self.tower);
        if cost > self.budgets.beta_scan {
            return Err(Error::BudgetExceeded(format!(
                "scan of {cost} endomorphisms exceeds {}",
                self.budgets.beta_scan
            )));
        }
        Ok(())
    }

    /// Every `β ∈ E`, in enumeration order.
    pub fn all_endos(&self) -> Result<Vec<Endo>> {
        self.require_beta_scan()?;
        Ok(Endo::enumerate(&self.tower).collect())
    }

    /// Every scattered `E(𝟙, β)` with its `β`, in enumeration order.
    pub fn scattered(&self) -> Result<&[(Endo, RingPoint)]> {
        self.require_beta_scan()?;
        Ok(self.scattered.get_or_init(|| {
            let tower = &self.tower;
            let endos: Vec<Endo> = Endo::enumerate(tower).collect();
            endos
                .into_par_iter()
                .filter_map(|b| {
                    let p = RingPoint::graph(tower, &b);
                    is_scattered_with(tower, &self.chain, &p).then_some((b, p))
                })
                .collect()
        }))
    }
}
