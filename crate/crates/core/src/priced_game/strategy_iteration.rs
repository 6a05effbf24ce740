//! Strategy iteration: the minimizer improves, the maximizer best-responds.

use super::{
    apply_switches, evaluate_profile, extended_dijkstra_filtered, improving_switches,
    one_per_state, Evaluation, Player, PricedGame, Profile, Switch,
};
use crate::error::Result;
use crate::numerics::CostDomain;

#[derive(Clone, Debug)]
pub struct IterationOutcome<C> {
    pub profile: Profile,
    pub evaluation: Evaluation<C>,
    /// Number of single-state strategy changes made along the way.
    pub switches: usize,
}

impl<C: CostDomain> IterationOutcome<C> {
    pub fn values(&self) -> Vec<C> {
        self.evaluation.payoffs()
    }
}

fn changed(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Replaces the maximizer's part of `sigma` with a best response that also
/// leaves no length-only improving switch.
fn max_best_response<C: CostDomain>(
    game: &PricedGame<C>,
    sigma: &[usize],
    switches: &mut usize,
) -> Result<Profile> {
    let (_, reply) = extended_dijkstra_filtered(game, |j| {
        let k = game.action(j).from;
        game.owner(k) == Player::Max || sigma[k] == j
    });
    *switches += changed(sigma, &reply);
    let mut current = reply;
    loop {
        let eval = evaluate_profile(game, &current);
        let found = improving_switches(game, &current, &eval, Player::Max);
        if found.is_empty() {
            return Ok(current);
        }
        let set = one_per_state(game.num_states(), &found, |j| game.action(j).from);
        *switches += set.len();
        current = apply_switches(game, &current, &set)?;
    }
}

/// Runs strategy iteration from `sigma0` until neither player has an
/// improving switch. The result is optimal, including the path-length
/// tie-break.
///
/// The maximizer is brought to a best response before the minimizer's first
/// move, so an arbitrary start profile is accepted.
pub fn strategy_iteration<C: CostDomain>(
    game: &PricedGame<C>,
    sigma0: &[usize],
) -> Result<IterationOutcome<C>> {
    game.check_profile(sigma0)?;
    let mut switches = 0;
    let mut sigma = sigma0.to_vec();
    loop {
        sigma = max_best_response(game, &sigma, &mut switches)?;
        let eval = evaluate_profile(game, &sigma);
        let found = improving_switches(game, &sigma, &eval, Player::Min);
        if found.is_empty() {
            return Ok(IterationOutcome {
                profile: sigma,
                evaluation: eval,
                switches,
            });
        }
        let set = one_per_state(game.num_states(), &found, |j| game.action(j).from);
        switches += set.len();
        sigma = apply_switches(game, &sigma, &set)?;
    }
}

/// Turns a value-optimal profile into one without any improving switch.
/// Payoffs stay the same; only path lengths are adjusted.
pub fn normalize<C: CostDomain>(
    game: &PricedGame<C>,
    sigma: &[usize],
) -> Result<IterationOutcome<C>> {
    strategy_iteration(game, sigma)
}

fn pick_single(found: &[Switch]) -> usize {
    found
        .iter()
        .min_by_key(|s| (!s.strong, s.action))
        .expect("non-empty switch list")
        .action
}

/// Strategy iteration with one switch at a time. The maximizer switches
/// until it has nothing left to improve, then the minimizer makes one switch,
/// and so on. `hook(before, action, after)` observes every switch.
pub fn single_switch_iteration<C: CostDomain>(
    game: &PricedGame<C>,
    sigma0: &[usize],
    mut hook: impl FnMut(&[usize], usize, &[usize]),
) -> Result<IterationOutcome<C>> {
    game.check_profile(sigma0)?;
    let mut switches = 0;
    let mut sigma = sigma0.to_vec();
    loop {
        let mut eval = evaluate_profile(game, &sigma);
        loop {
            let found = improving_switches(game, &sigma, &eval, Player::Max);
            if found.is_empty() {
                break;
            }
            let j = pick_single(&found);
            let next = apply_switches(game, &sigma, &[j])?;
            hook(&sigma, j, &next);
            switches += 1;
            sigma = next;
            eval = evaluate_profile(game, &sigma);
        }
        let found = improving_switches(game, &sigma, &eval, Player::Min);
        if found.is_empty() {
            return Ok(IterationOutcome {
                profile: sigma,
                evaluation: eval,
                switches,
            });
        }
        let j = pick_single(&found);
        let next = apply_switches(game, &sigma, &[j])?;
        hook(&sigma, j, &next);
        switches += 1;
        sigma = next;
    }
}
