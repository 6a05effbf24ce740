//! Seeded random instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::numerics::{int, rat, ExtCost, Rational};
use crate::priced_game::{Action, Dest, Player, PricedGame};
use crate::ptg::{Ptg, PtgAction};
use crate::sptg::{Interval, Sptg};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomConfig {
    pub seed: u64,
    pub states: usize,
    /// Actions per state are drawn from `1..=max_actions`.
    pub max_actions: usize,
    /// Costs may be `∞` (about one in eight).
    pub infinite_costs: bool,
    /// Every rate is 1 and every cost 0.
    pub reachability: bool,
    /// All states belong to this player.
    pub one_player: Option<Player>,
    /// Timed games get up to `states` reset actions.
    pub resets: bool,
    /// Minimizers get rates in `5..=8`, maximizers keep `0..=4`, and finite
    /// costs are multiples of 1/2. Waiting is then rarely the minimizer's best
    /// option, and cost lines cross inside `(0, 1)` far more often.
    pub contrast: bool,
}

impl RandomConfig {
    pub fn new(seed: u64, states: usize, max_actions: usize) -> Self {
        RandomConfig {
            seed,
            states,
            max_actions,
            infinite_costs: false,
            reachability: false,
            one_player: None,
            resets: false,
            contrast: false,
        }
    }
}

struct Draw {
    rng: ChaCha8Rng,
    cfg: RandomConfig,
}

impl Draw {
    fn new(cfg: &RandomConfig) -> Self {
        assert!(
            cfg.states >= 1 && cfg.max_actions >= 1,
            "need at least one state and action"
        );
        Draw {
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
            cfg: cfg.clone(),
        }
    }

    fn owners(&mut self) -> Vec<Player> {
        (0..self.cfg.states)
            .map(|_| match self.cfg.one_player {
                Some(p) => p,
                None if self.rng.gen_bool(0.5) => Player::Min,
                None => Player::Max,
            })
            .collect()
    }

    fn rates(&mut self, owners: &[Player]) -> Vec<Rational> {
        owners
            .iter()
            .map(|&p| match (self.cfg.reachability, self.cfg.contrast, p) {
                (true, _, _) => int(1),
                (false, true, Player::Min) => int(self.rng.gen_range(5..=8)),
                (false, _, _) => int(self.rng.gen_range(0..=4)),
            })
            .collect()
    }

    fn cost(&mut self) -> ExtCost {
        if self.cfg.reachability {
            ExtCost::zero()
        } else if self.cfg.infinite_costs && self.rng.gen_ratio(1, 8) {
            ExtCost::Infinity
        } else if self.cfg.contrast {
            ExtCost::Finite(rat(self.rng.gen_range(0..=8), 2))
        } else {
            ExtCost::from_int(self.rng.gen_range(0..=4))
        }
    }

    /// Mostly forward edges, so that maximizers do not always find a cycle.
    fn dest(&mut self, from: usize, first: bool) -> Dest {
        let n = self.cfg.states;
        let exit = if first { 0.7 } else { 0.25 };
        if self.rng.gen_bool(exit) {
            Dest::Bottom
        } else if from + 1 < n && self.rng.gen_bool(0.9) {
            Dest::State(self.rng.gen_range(from + 1..n))
        } else {
            Dest::State(self.rng.gen_range(0..n))
        }
    }

    fn actions(&mut self) -> Vec<Action<ExtCost>> {
        let mut out = Vec::new();
        for from in 0..self.cfg.states {
            for i in 0..self.rng.gen_range(1..=self.cfg.max_actions) {
                let to = self.dest(from, i == 0);
                let cost = self.cost();
                out.push(Action { from, to, cost });
            }
        }
        out
    }
}

pub fn random_priced(cfg: &RandomConfig) -> PricedGame<ExtCost> {
    let mut d = Draw::new(cfg);
    let owners = d.owners();
    let actions = d.actions();
    PricedGame::new(owners, actions).expect("generated games are valid")
}

pub fn random_sptg(cfg: &RandomConfig) -> Sptg {
    let mut d = Draw::new(cfg);
    let owners = d.owners();
    let rates = d.rates(&owners);
    let actions = d.actions();
    Sptg::from_parts(owners, rates, actions).expect("generated games are valid")
}

/// A timed game on `[0, M]` with `M ∈ {1, 2, 3}`. Intervals use at most
/// three distinct endpoints (0, `M` and possibly one point in between), and
/// the first action of every state is available at `M`.
pub fn random_ptg(cfg: &RandomConfig) -> Ptg {
    let mut d = Draw::new(cfg);
    let owners = d.owners();
    let rates = d.rates(&owners);
    let base = d.actions();
    let rng = &mut d.rng;
    let m = int(rng.gen_range(1..=3));
    let mut pool = vec![int(0), m.clone()];
    if rng.gen_bool(0.7) {
        pool.push(rat(rng.gen_range(1..4), 4) * &m);
    }
    pool.sort();
    let mut first = vec![true; cfg.states];
    let mut actions: Vec<PtgAction> = base
        .into_iter()
        .map(|a| {
            let interval = if std::mem::take(&mut first[a.from]) {
                let lo = pool.choose(rng).expect("non-empty").clone();
                Interval {
                    lo_closed: lo == m || rng.gen_bool(0.7),
                    lo,
                    hi: m.clone(),
                    hi_closed: true,
                }
            } else {
                random_interval(rng, &pool)
            };
            PtgAction {
                from: a.from,
                to: a.to,
                cost: a.cost,
                interval,
                reset: false,
            }
        })
        .collect();
    if cfg.resets {
        let count = rng.gen_range(0..=cfg.states);
        let mut ids: Vec<usize> = (0..actions.len()).collect();
        ids.shuffle(rng);
        for &j in ids.iter().take(count) {
            actions[j].reset = true;
        }
    }
    Ptg::new(owners, rates, actions).expect("generated games are valid")
}

fn random_interval(rng: &mut ChaCha8Rng, pool: &[Rational]) -> Interval {
    let a = rng.gen_range(0..pool.len());
    let b = rng.gen_range(a..pool.len());
    let (lo, hi) = (pool[a].clone(), pool[b].clone());
    if lo == hi {
        return Interval::point(lo);
    }
    Interval {
        lo,
        hi,
        lo_closed: rng.gen_bool(0.7),
        hi_closed: rng.gen_bool(0.7),
    }
}
