//! Untimed two-player priced games.
//!
//! Player 1 (the minimizer) tries to reach the terminal `⊥` cheaply, player 2
//! (the maximizer) tries to make that expensive or impossible. Games are
//! generic over the [`CostDomain`] so the same algorithms run on plain costs
//! and on the ε-augmented costs used by the timed sweep.

mod dijkstra;
mod potential;
mod strategy_iteration;

pub use dijkstra::{extended_dijkstra, extended_dijkstra_filtered};
pub use potential::{potential_less, potential_matrix, PotentialMatrix};
pub use strategy_iteration::{
    normalize, single_switch_iteration, strategy_iteration, IterationOutcome,
};

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::numerics::CostDomain;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    /// Player 1, who pays.
    Min,
    /// Player 2, who is paid.
    Max,
}

impl Player {
    /// `1` or `2`, as used in game files.
    pub fn number(self) -> u8 {
        match self {
            Player::Min => 1,
            Player::Max => 2,
        }
    }
}

/// Where an action leads.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dest {
    State(usize),
    Bottom,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Action<C> {
    pub from: usize,
    pub to: Dest,
    pub cost: C,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PricedGame<C> {
    owners: Vec<Player>,
    actions: Vec<Action<C>>,
    by_state: Vec<Vec<usize>>,
}

/// A positional strategy profile: the chosen action id for every state.
pub type Profile = Vec<usize>;

impl<C: CostDomain> PricedGame<C> {
    /// Validates and indexes a game. Every state needs at least one action and
    /// every cost must be non-negative.
    pub fn new(owners: Vec<Player>, actions: Vec<Action<C>>) -> Result<Self> {
        let n = owners.len();
        let mut by_state = vec![Vec::new(); n];
        for (id, a) in actions.iter().enumerate() {
            if a.from >= n {
                return Err(Error::Validation(format!(
                    "action {id} leaves unknown state {}",
                    a.from
                )));
            }
            if let Dest::State(t) = a.to {
                if t >= n {
                    return Err(Error::Validation(format!(
                        "action {id} enters unknown state {t}"
                    )));
                }
            }
            if a.cost < C::zero() {
                return Err(Error::Validation(format!(
                    "action {id} has negative cost {}",
                    a.cost
                )));
            }
            by_state[a.from].push(id);
        }
        if let Some(k) = by_state.iter().position(Vec::is_empty) {
            return Err(Error::Validation(format!("state {k} has no actions")));
        }
        Ok(PricedGame {
            owners,
            actions,
            by_state,
        })
    }

    pub fn num_states(&self) -> usize {
        self.owners.len()
    }

    pub fn num_actions(&self) -> usize {
        self.actions.len()
    }

    pub fn owner(&self, k: usize) -> Player {
        self.owners[k]
    }

    pub fn owners(&self) -> &[Player] {
        &self.owners
    }

    pub fn action(&self, j: usize) -> &Action<C> {
        &self.actions[j]
    }

    pub fn actions(&self) -> &[Action<C>] {
        &self.actions
    }

    /// Action ids leaving state `k`, in increasing order.
    pub fn actions_of(&self, k: usize) -> &[usize] {
        &self.by_state[k]
    }

    /// Checks that `sigma` picks one of each state's own actions.
    pub fn check_profile(&self, sigma: &[usize]) -> Result<()> {
        if sigma.len() != self.num_states() {
            return Err(Error::Validation(format!(
                "profile covers {} states, game has {}",
                sigma.len(),
                self.num_states()
            )));
        }
        for (k, &j) in sigma.iter().enumerate() {
            if j >= self.actions.len() || self.actions[j].from != k {
                return Err(Error::Validation(format!(
                    "profile picks action {j} at state {k}, which it does not own"
                )));
            }
        }
        Ok(())
    }

    /// The lowest-numbered action of every state.
    pub fn first_profile(&self) -> Profile {
        self.by_state.iter().map(|a| a[0]).collect()
    }
}

/// Number of actions on a play until `⊥`, or infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Hops {
    Finite(usize),
    Infinite,
}

/// Payoff together with path length, compared lexicographically. A payoff of
/// infinity always comes with infinite length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Valuation<C> {
    pub payoff: C,
    pub hops: Hops,
}

impl<C: CostDomain> Valuation<C> {
    pub fn new(payoff: C, hops: Hops) -> Self {
        let hops = if payoff.is_infinite() {
            Hops::Infinite
        } else {
            hops
        };
        Valuation { payoff, hops }
    }

    pub fn infinite() -> Self {
        Valuation {
            payoff: C::infinity(),
            hops: Hops::Infinite,
        }
    }

    /// Valuation of taking an action of cost `cost` into a place valued `next`.
    pub fn extend(cost: &C, next: &Valuation<C>) -> Self {
        let hops = match next.hops {
            Hops::Finite(h) => Hops::Finite(h + 1),
            Hops::Infinite => Hops::Infinite,
        };
        Valuation::new(cost.plus(&next.payoff), hops)
    }

    /// The valuation of `⊥` itself.
    pub fn terminal() -> Self {
        Valuation {
            payoff: C::zero(),
            hops: Hops::Finite(0),
        }
    }
}

impl<C: Ord> PartialOrd for Valuation<C> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<C: Ord> Ord for Valuation<C> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.payoff
            .cmp(&other.payoff)
            .then(self.hops.cmp(&other.hops))
    }
}

impl<C: fmt::Display> fmt::Display for Valuation<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.hops {
            Hops::Finite(h) => write!(f, "({}, {h})", self.payoff),
            Hops::Infinite => write!(f, "({}, inf)", self.payoff),
        }
    }
}

/// Valuations under a fixed profile, plus the last action of every finite play.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation<C> {
    pub values: Vec<Valuation<C>>,
    /// The action that enters `⊥` on the play from each state, if any.
    pub exits: Vec<Option<usize>>,
}

impl<C: CostDomain> Evaluation<C> {
    pub fn payoffs(&self) -> Vec<C> {
        self.values.iter().map(|v| v.payoff.clone()).collect()
    }

    /// Valuation of a destination.
    pub fn of(&self, d: Dest) -> Valuation<C> {
        match d {
            Dest::Bottom => Valuation::terminal(),
            Dest::State(k) => self.values[k].clone(),
        }
    }
}

/// Follows `sigma` from every state. Plays that cycle are worth infinity.
pub fn evaluate_profile<C: CostDomain>(game: &PricedGame<C>, sigma: &[usize]) -> Evaluation<C> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Unseen,
        OnPath,
        Done,
    }
    let n = game.num_states();
    let mut marks = vec![Mark::Unseen; n];
    let mut values: Vec<Valuation<C>> = vec![Valuation::infinite(); n];
    let mut exits = vec![None; n];
    for start in 0..n {
        if marks[start] == Mark::Done {
            continue;
        }
        let mut path = Vec::new();
        let mut k = start;
        // Walk until ⊥, a solved state, or a cycle.
        let (mut next, mut exit) = loop {
            marks[k] = Mark::OnPath;
            path.push(k);
            let a = game.action(sigma[k]);
            match a.to {
                Dest::Bottom => break (Valuation::terminal(), Some(sigma[k])),
                Dest::State(t) => match marks[t] {
                    Mark::Done => break (values[t].clone(), exits[t]),
                    Mark::OnPath => break (Valuation::infinite(), None),
                    Mark::Unseen => k = t,
                },
            }
        };
        for &k in path.iter().rev() {
            let here = Valuation::extend(&game.action(sigma[k]).cost, &next);
            if here.hops == Hops::Infinite {
                exit = None;
            }
            values[k] = here.clone();
            exits[k] = exit;
            marks[k] = Mark::Done;
            next = here;
        }
    }
    Evaluation { values, exits }
}

/// An improving switch and whether it improves the payoff itself, not just
/// the path length.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Switch {
    pub action: usize,
    pub strong: bool,
}

/// All improving switches for `player` with respect to `sigma`.
pub fn improving_switches<C: CostDomain>(
    game: &PricedGame<C>,
    sigma: &[usize],
    eval: &Evaluation<C>,
    player: Player,
) -> Vec<Switch> {
    let mut out = Vec::new();
    for k in 0..game.num_states() {
        if game.owner(k) != player {
            continue;
        }
        let current = &eval.values[k];
        for &j in game.actions_of(k) {
            if j == sigma[k] {
                continue;
            }
            let a = game.action(j);
            let candidate = Valuation::extend(&a.cost, &eval.of(a.to));
            let (improves, strong) = match player {
                Player::Min => (candidate < *current, candidate.payoff < current.payoff),
                Player::Max => (candidate > *current, candidate.payoff > current.payoff),
            };
            if improves {
                out.push(Switch { action: j, strong });
            }
        }
    }
    out
}

/// `sigma[B]`: replaces the choice at every state touched by `switches`.
pub fn apply_switches<C>(
    game: &PricedGame<C>,
    sigma: &[usize],
    switches: &[usize],
) -> Result<Profile> {
    let mut out = sigma.to_vec();
    let mut touched = vec![false; sigma.len()];
    for &j in switches {
        let k = game.actions[j].from;
        if touched[k] {
            return Err(Error::Validation(format!(
                "two switches at state {k} in one improving set"
            )));
        }
        touched[k] = true;
        out[k] = j;
    }
    Ok(out)
}

/// Picks one switch per state: strongly improving first, then lowest id.
pub(crate) fn one_per_state(
    game_states: usize,
    switches: &[Switch],
    from: impl Fn(usize) -> usize,
) -> Vec<usize> {
    let mut best: Vec<Option<Switch>> = vec![None; game_states];
    for s in switches {
        let slot = &mut best[from(s.action)];
        let replace = match slot {
            None => true,
            Some(cur) => {
                (s.strong, std::cmp::Reverse(s.action))
                    > (cur.strong, std::cmp::Reverse(cur.action))
            }
        };
        if replace {
            *slot = Some(*s);
        }
    }
    best.into_iter().flatten().map(|s| s.action).collect()
}
