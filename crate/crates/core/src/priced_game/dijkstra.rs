//! Extended Dijkstra for priced games with a maximizing adversary.
//!
//! States are settled in order of increasing value, starting from `⊥`. A
//! minimizer state can be settled through any action into the settled set; a
//! maximizer state only once all of its actions lead there, at the largest
//! resulting cost. States never settled have value infinity.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::{Dest, Player, PricedGame, Profile};
use crate::numerics::CostDomain;

/// Solves `game`, returning per-state values and a profile attaining them.
///
/// Ties between equal candidate values are broken by state index and then by
/// action index, so the result is deterministic.
pub fn extended_dijkstra<C: CostDomain>(game: &PricedGame<C>) -> (Vec<C>, Profile) {
    extended_dijkstra_filtered(game, |_| true)
}

/// As [`extended_dijkstra`] but only using actions for which `allowed` holds.
/// Every state must keep at least one allowed action.
pub fn extended_dijkstra_filtered<C: CostDomain>(
    game: &PricedGame<C>,
    allowed: impl Fn(usize) -> bool,
) -> (Vec<C>, Profile) {
    let n = game.num_states();
    let mut incoming: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut into_bottom = Vec::new();
    let mut pending = vec![0usize; n];
    for (j, a) in game.actions().iter().enumerate() {
        if !allowed(j) {
            continue;
        }
        pending[a.from] += 1;
        match a.to {
            Dest::State(t) => incoming[t].push(j),
            Dest::Bottom => into_bottom.push(j),
        }
    }
    let mut value: Vec<Option<C>> = vec![None; n];
    let mut choice: Vec<Option<usize>> = vec![None; n];
    // Largest candidate seen so far for each maximizer state.
    let mut max_best: Vec<Option<(C, usize)>> = vec![None; n];
    let mut heap: BinaryHeap<Reverse<(C, usize, usize)>> = BinaryHeap::new();

    let offer = |j: usize,
                 reached: &C,
                 heap: &mut BinaryHeap<Reverse<(C, usize, usize)>>,
                 pending: &mut [usize],
                 max_best: &mut [Option<(C, usize)>]| {
        let a = game.action(j);
        let k = a.from;
        let candidate = a.cost.plus(reached);
        match game.owner(k) {
            Player::Min => {
                if !candidate.is_infinite() {
                    heap.push(Reverse((candidate, k, j)));
                }
            }
            Player::Max => {
                pending[k] -= 1;
                let better = match &max_best[k] {
                    None => true,
                    Some((c, _)) => candidate > *c,
                };
                if better {
                    max_best[k] = Some((candidate, j));
                }
                if pending[k] == 0 {
                    let (c, j) = max_best[k].clone().expect("set above");
                    if !c.is_infinite() {
                        heap.push(Reverse((c, k, j)));
                    }
                }
            }
        }
    };

    let zero = C::zero();
    for &j in &into_bottom {
        offer(j, &zero, &mut heap, &mut pending, &mut max_best);
    }
    while let Some(Reverse((c, k, j))) = heap.pop() {
        if value[k].is_some() {
            continue;
        }
        value[k] = Some(c.clone());
        choice[k] = Some(j);
        for &i in &incoming[k] {
            if value[game.action(i).from].is_none() {
                offer(i, &c, &mut heap, &mut pending, &mut max_best);
            }
        }
    }

    // Unsettled states are worth infinity; pick actions that keep them so.
    let settled: Vec<bool> = value.iter().map(Option::is_some).collect();
    let mut profile = Vec::with_capacity(n);
    for k in 0..n {
        if let Some(j) = choice[k] {
            profile.push(j);
            continue;
        }
        let mut options = game.actions_of(k).iter().copied().filter(|&j| allowed(j));
        let first = options.clone().next().expect("every state keeps an action");
        let pick = match game.owner(k) {
            Player::Min => first,
            Player::Max => options
                .find(|&j| {
                    let a = game.action(j);
                    a.cost.is_infinite() || matches!(a.to, Dest::State(t) if !settled[t])
                })
                .unwrap_or(first),
        };
        profile.push(pick);
    }
    let values = value
        .into_iter()
        .map(|v| v.unwrap_or_else(C::infinity))
        .collect();
    (values, profile)
}
