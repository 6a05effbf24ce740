//! Backward induction on the number of transitions, over whole functions.
//!
//! Iterate `v⁰ ≡ ∞` and
//! `vᵗ⁺¹_k = wait(opt_j (c_j + vᵗ_{d(j)}), r_k)` where `opt` is min or max by
//! owner and `wait` folds in the option to wait before acting. The exact
//! fixpoint is the value.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numerics::{ExtCost, Pwl, Rational};
use crate::priced_game::{Dest, Player};
use crate::sptg::Sptg;

#[derive(Clone, Debug)]
pub struct ValueIteration {
    pub values: Vec<Pwl>,
    /// Operator applications until the first repeated iterate.
    pub iterations: usize,
}

/// `n·Π(|A_k| + 1) + 1`, enough operator applications for any simple game
/// to reach its fixpoint, saturating at `usize::MAX`.
pub fn default_cap(g: &Sptg) -> usize {
    let product = (0..g.num_states()).fold(1usize, |acc, k| {
        acc.saturating_mul(g.game().actions_of(k).len() + 1)
    });
    g.num_states().saturating_mul(product).saturating_add(1)
}

pub fn value_iteration_sptg(g: &Sptg, cap: usize) -> Result<ValueIteration> {
    let (lo, hi) = (Rational::zero(), Rational::one());
    let n = g.num_states();
    let game = g.game();
    let bottom = Pwl::constant(lo.clone(), hi.clone(), ExtCost::zero())?;
    let mut v = vec![Pwl::constant(lo, hi, ExtCost::Infinity)?; n];
    for t in 1..=cap {
        let mut next = Vec::with_capacity(n);
        for k in 0..n {
            let options: Vec<Pwl> = game
                .actions_of(k)
                .iter()
                .map(|&j| {
                    let a = game.action(j);
                    let target = match a.to {
                        Dest::Bottom => &bottom,
                        Dest::State(s) => &v[s],
                    };
                    target.add_const(&a.cost)
                })
                .collect();
            let minimize = game.owner(k) == Player::Min;
            let best = if minimize {
                Pwl::min_envelope(&options)?
            } else {
                Pwl::max_envelope(&options)?
            };
            next.push(best.wait_closure(&g.rates()[k], minimize)?);
        }
        if next == v {
            return Ok(ValueIteration {
                values: v,
                iterations: t,
            });
        }
        v = next;
    }
    Err(Error::NonConvergence(cap))
}
