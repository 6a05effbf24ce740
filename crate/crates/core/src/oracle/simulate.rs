//! Plays a timed profile out from a start configuration.

use std::collections::HashSet;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numerics::{ExtCost, Rational};
use crate::priced_game::Dest;
use crate::ptg::Ptg;
use crate::sptg::{Choice, Sptg, TimedProfile};

/// The parts of a timed game a play needs.
pub trait Arena {
    fn num_states(&self) -> usize;
    fn rate(&self, k: usize) -> &Rational;
    fn source(&self, j: usize) -> usize;
    fn target(&self, j: usize) -> Dest;
    fn cost(&self, j: usize) -> &ExtCost;
    fn resets(&self, j: usize) -> bool;
    fn available(&self, j: usize, x: &Rational) -> bool;
    fn horizon(&self) -> Rational;
}

impl Arena for Sptg {
    fn num_states(&self) -> usize {
        self.game().num_states()
    }

    fn rate(&self, k: usize) -> &Rational {
        &self.rates()[k]
    }

    fn source(&self, j: usize) -> usize {
        self.game().action(j).from
    }

    fn target(&self, j: usize) -> Dest {
        self.game().action(j).to
    }

    fn cost(&self, j: usize) -> &ExtCost {
        &self.game().action(j).cost
    }

    fn resets(&self, _: usize) -> bool {
        false
    }

    fn available(&self, j: usize, _: &Rational) -> bool {
        j < self.game().num_actions()
    }

    fn horizon(&self) -> Rational {
        Rational::one()
    }
}

impl Arena for Ptg {
    fn num_states(&self) -> usize {
        Ptg::num_states(self)
    }

    fn rate(&self, k: usize) -> &Rational {
        &self.rates()[k]
    }

    fn source(&self, j: usize) -> usize {
        self.action(j).from
    }

    fn target(&self, j: usize) -> Dest {
        self.action(j).to
    }

    fn cost(&self, j: usize) -> &ExtCost {
        &self.action(j).cost
    }

    fn resets(&self, j: usize) -> bool {
        self.action(j).reset
    }

    fn available(&self, j: usize, x: &Rational) -> bool {
        j < self.actions().len() && self.action(j).interval.contains(x)
    }

    fn horizon(&self) -> Rational {
        Ptg::horizon(self).clone()
    }
}

/// One move: wait `delay` in `state`, then take `action` at `time`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlayStep {
    pub state: usize,
    pub time: Rational,
    pub delay: Rational,
    pub action: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Play {
    pub steps: Vec<PlayStep>,
    /// Whether the play reached `⊥`.
    pub terminal: bool,
    /// Waiting costs plus action costs; `∞` when the play never ends.
    pub cost: ExtCost,
}

/// Follows `profile` from state `start` at time `x`.
///
/// A waiting cell is left at its right end, where the next cell takes over.
/// Profiles are positional, so revisiting a `(state, time)` configuration
/// means the play loops forever; its cost is then `∞`.
pub fn simulate<A: Arena>(
    g: &A,
    profile: &TimedProfile,
    start: Dest,
    x: &Rational,
) -> Result<Play> {
    let mut steps = Vec::new();
    let mut cost = ExtCost::zero();
    let Dest::State(mut k) = start else {
        return Ok(Play {
            steps,
            terminal: true,
            cost,
        });
    };
    let horizon = g.horizon();
    if *x < Rational::zero() || *x > horizon {
        return Err(Error::Domain(format!(
            "start time {x} outside [0, {horizon}]"
        )));
    }
    let mut x = x.clone();
    let mut delay = Rational::zero();
    let mut seen = HashSet::new();
    loop {
        if k >= g.num_states() || k >= profile.cells.len() {
            return Err(Error::Validation(format!(
                "profile has no cells for state {k}"
            )));
        }
        if !seen.insert((k, x.clone())) {
            return Ok(Play {
                steps,
                terminal: false,
                cost: ExtCost::Infinity,
            });
        }
        let cell = profile
            .cell_at(k, &x)
            .ok_or_else(|| Error::Validation(format!("profile undefined for state {k} at {x}")))?;
        match cell.choice {
            Choice::Wait => {
                let end = cell.interval.hi.clone();
                if !cell.interval.is_right_open() || end > horizon {
                    return Err(Error::Validation(format!(
                        "state {k} waits on {} past the end of time",
                        cell.interval
                    )));
                }
                let d = &end - &x;
                cost = cost.plus_scaled(g.rate(k), &d);
                delay += d;
                x = end;
            }
            Choice::Action(j) => {
                if !g.available(j, &x) || g.source(j) != k {
                    return Err(Error::Validation(format!(
                        "state {k} plays action {j}, which is not available to it at {x}"
                    )));
                }
                cost = &cost + g.cost(j);
                steps.push(PlayStep {
                    state: k,
                    time: x.clone(),
                    delay: std::mem::take(&mut delay),
                    action: j,
                });
                if g.resets(j) {
                    x = Rational::zero();
                }
                match g.target(j) {
                    Dest::Bottom => {
                        return Ok(Play {
                            steps,
                            terminal: true,
                            cost,
                        })
                    }
                    Dest::State(t) => k = t,
                }
            }
        }
    }
}
