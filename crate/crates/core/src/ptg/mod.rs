//! One-clock priced timed games with availability intervals and resets.
//!
//! Time runs over `[0, M]`. Each action can only be taken at times inside its
//! interval; reset actions send the clock back to 0. Solving goes through a
//! chain of reductions down to simple games on `[0, 1]`: resets are unfolded
//! into layers, and each layer is cut at every interval endpoint.

mod reduction;
mod solve;

pub use reduction::{
    build_interval_sptg, build_moment_game, endpoint_ladder, layer_game,
    transform_endpoint_actions, IntervalSptg, Transformed,
};
pub use solve::{solve_ptg, Provenance, PtgResult, PtgStats};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::numerics::{ExtCost, Rational};
use crate::priced_game::{Dest, Player};
use crate::sptg::{Interval, Sptg};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PtgAction {
    pub from: usize,
    pub to: Dest,
    pub cost: ExtCost,
    pub interval: Interval,
    pub reset: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ptg {
    owners: Vec<Player>,
    rates: Vec<Rational>,
    actions: Vec<PtgAction>,
    by_state: Vec<Vec<usize>>,
    horizon: Rational,
}

impl Ptg {
    /// Validates a game. Besides basic well-formedness every state must have
    /// an action available at the horizon `M`, so that no play gets stuck.
    pub fn new(owners: Vec<Player>, rates: Vec<Rational>, actions: Vec<PtgAction>) -> Result<Self> {
        let n = owners.len();
        if rates.len() != n {
            return Err(Error::Validation(format!(
                "{} rates for {n} states",
                rates.len()
            )));
        }
        if let Some(k) = rates.iter().position(Signed::is_negative) {
            return Err(Error::Validation(format!(
                "state {k} has negative rate {}",
                rates[k]
            )));
        }
        let mut by_state = vec![Vec::new(); n];
        let mut horizon = Rational::zero();
        for (id, a) in actions.iter().enumerate() {
            if a.from >= n || matches!(a.to, Dest::State(t) if t >= n) {
                return Err(Error::Validation(format!(
                    "action {id} references an unknown state"
                )));
            }
            if a.cost < ExtCost::zero() {
                return Err(Error::Validation(format!(
                    "action {id} has negative cost {}",
                    a.cost
                )));
            }
            let iv = &a.interval;
            if iv.lo.is_negative() {
                return Err(Error::Validation(format!(
                    "action {id} is available before time 0"
                )));
            }
            if iv.lo > iv.hi {
                return Err(Error::Validation(format!(
                    "action {id} has interval {iv} with lo > hi"
                )));
            }
            if iv.is_empty() {
                return Err(Error::Validation(format!(
                    "action {id} has empty interval {iv}"
                )));
            }
            if iv.hi > horizon {
                horizon = iv.hi.clone();
            }
            by_state[a.from].push(id);
        }
        if let Some(k) = by_state.iter().position(Vec::is_empty) {
            return Err(Error::Validation(format!("state {k} has no actions")));
        }
        let g = Ptg {
            owners,
            rates,
            actions,
            by_state,
            horizon,
        };
        for k in 0..n {
            if g.available_at(k, &g.horizon).next().is_none() {
                return Err(Error::Validation(format!(
                    "state {k} has no action available at the horizon {}",
                    g.horizon
                )));
            }
        }
        Ok(g)
    }

    /// A game where every action is available on `[0, 1]` and nothing resets.
    pub fn from_sptg(g: &Sptg) -> Self {
        let actions = g
            .game()
            .actions()
            .iter()
            .map(|a| PtgAction {
                from: a.from,
                to: a.to,
                cost: a.cost.clone(),
                interval: Interval::closed(Rational::zero(), num_traits::One::one()),
                reset: false,
            })
            .collect();
        Ptg::new(g.game().owners().to_vec(), g.rates().to_vec(), actions)
            .expect("a valid simple game is a valid timed game")
    }

    pub fn num_states(&self) -> usize {
        self.owners.len()
    }

    pub fn owners(&self) -> &[Player] {
        &self.owners
    }

    pub fn owner(&self, k: usize) -> Player {
        self.owners[k]
    }

    pub fn rates(&self) -> &[Rational] {
        &self.rates
    }

    pub fn actions(&self) -> &[PtgAction] {
        &self.actions
    }

    pub fn action(&self, j: usize) -> &PtgAction {
        &self.actions[j]
    }

    pub fn actions_of(&self, k: usize) -> &[usize] {
        &self.by_state[k]
    }

    /// `M`: the largest interval endpoint.
    pub fn horizon(&self) -> &Rational {
        &self.horizon
    }

    /// Actions of `k` that may be taken at time `x`.
    pub fn available_at<'a>(
        &'a self,
        k: usize,
        x: &'a Rational,
    ) -> impl Iterator<Item = usize> + 'a {
        self.by_state[k]
            .iter()
            .copied()
            .filter(move |&j| self.actions[j].interval.contains(x))
    }

    pub fn has_resets(&self) -> bool {
        self.actions.iter().any(|a| a.reset)
    }

    /// Distinct destinations of reset actions; the number of unfolding layers
    /// is one more than this.
    pub fn reset_targets(&self) -> usize {
        let mut t: Vec<usize> = self
            .actions
            .iter()
            .filter(|a| a.reset)
            .filter_map(|a| match a.to {
                Dest::State(k) => Some(k),
                Dest::Bottom => None,
            })
            .collect();
        t.sort();
        t.dedup();
        t.len()
    }
}
