//! Exhaustive enumeration of positional profiles.

use crate::error::{Error, Result};
use crate::numerics::CostDomain;
use crate::priced_game::{evaluate_profile, Player, PricedGame};

/// Largest number of profiles [`brute_force_priced`] agrees to enumerate.
pub const BRUTE_FORCE_BUDGET: u128 = 1_000_000;

/// Per state, the maximum over maximizer strategies of the minimum over
/// minimizer strategies of the payoff.
pub fn brute_force_priced<C: CostDomain>(game: &PricedGame<C>) -> Result<Vec<C>> {
    let n = game.num_states();
    let total = (0..n).fold(1u128, |acc, k| {
        acc.saturating_mul(game.actions_of(k).len() as u128)
    });
    if total > BRUTE_FORCE_BUDGET {
        return Err(Error::Budget(format!(
            "{total} profiles exceed the enumeration budget of {BRUTE_FORCE_BUDGET}"
        )));
    }
    let mins: Vec<usize> = (0..n).filter(|&k| game.owner(k) == Player::Min).collect();
    let maxs: Vec<usize> = (0..n).filter(|&k| game.owner(k) == Player::Max).collect();
    let mut sigma = game.first_profile();
    let mut best: Vec<Option<C>> = vec![None; n];
    for_each_choice(game, &maxs, &mut sigma, &mut |sigma| {
        let mut inner: Vec<Option<C>> = vec![None; n];
        let mut s = sigma.to_vec();
        for_each_choice(game, &mins, &mut s, &mut |s| {
            let e = evaluate_profile(game, s);
            for (slot, v) in inner.iter_mut().zip(e.values) {
                if slot.as_ref().map_or(true, |c| v.payoff < *c) {
                    *slot = Some(v.payoff);
                }
            }
        });
        for (slot, v) in best.iter_mut().zip(inner) {
            let v = v.expect("at least one profile");
            if slot.as_ref().map_or(true, |c| v > *c) {
                *slot = Some(v);
            }
        }
    });
    Ok(best
        .into_iter()
        .map(|v| v.expect("at least one profile"))
        .collect())
}

/// Calls `f` once for every assignment of actions to `states`, odometer style.
fn for_each_choice<C>(
    game: &PricedGame<C>,
    states: &[usize],
    sigma: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]),
) where
    C: CostDomain,
{
    let mut idx = vec![0usize; states.len()];
    loop {
        for (i, &k) in states.iter().enumerate() {
            sigma[k] = game.actions_of(k)[idx[i]];
        }
        f(sigma);
        let mut pos = 0;
        loop {
            if pos == states.len() {
                return;
            }
            idx[pos] += 1;
            if idx[pos] < game.actions_of(states[pos]).len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ExtCost;
    use crate::priced_game::extended_dijkstra;
    use crate::priced_game::tests::act;

    #[test]
    fn single_exit() {
        let g = PricedGame::new(vec![Player::Min], vec![act(0, None, Some(5))]).unwrap();
        assert_eq!(brute_force_priced(&g).unwrap(), extended_dijkstra(&g).0);
    }

    #[test]
    fn self_loop_maximizer_is_infinite() {
        let g = PricedGame::new(
            vec![Player::Max],
            vec![act(0, None, Some(0)), act(0, Some(0), Some(0))],
        )
        .unwrap();
        assert_eq!(brute_force_priced(&g).unwrap(), vec![ExtCost::Infinity]);
    }

    #[test]
    fn refuses_huge_games() {
        let n = 13;
        let mut actions = Vec::new();
        for k in 0..n {
            for c in 0..3 {
                actions.push(act(k, None, Some(c)));
            }
        }
        let g = PricedGame::new(vec![Player::Min; n], actions).unwrap();
        assert!(matches!(brute_force_priced(&g), Err(Error::Budget(_))));
    }
}
