//! Exhaustive enumeration of small games, up to renaming of states.

use crate::numerics::{int, ExtCost};
use crate::priced_game::{Action, Dest, Player, PricedGame};
use crate::sptg::Sptg;

/// The values a grid draws from.
#[derive(Clone, Debug)]
pub struct GridSpec {
    pub states: usize,
    /// Each state gets between 1 and `max_actions` actions.
    pub max_actions: usize,
    pub costs: Vec<ExtCost>,
    /// Ignored for untimed games.
    pub rates: Vec<i64>,
}

/// One state: owner, rate index, sorted `(destination, cost index)` pairs.
/// Destination `n` stands for `⊥`.
type StateSpec = (u8, usize, Vec<(usize, usize)>);

fn multisets(options: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(
        start: usize,
        options: usize,
        max_len: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max_len {
            return;
        }
        for o in start..options {
            cur.push(o);
            go(o, options, max_len, cur, out);
            cur.pop();
        }
    }
    go(0, options, max_len, &mut cur, &mut out);
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn relabel(specs: &[StateSpec], perm: &[usize]) -> Vec<StateSpec> {
    let n = specs.len();
    let mut out = vec![(0, 0, Vec::new()); n];
    for (k, (o, r, acts)) in specs.iter().enumerate() {
        let mut acts: Vec<(usize, usize)> = acts
            .iter()
            .map(|&(d, c)| (if d == n { n } else { perm[d] }, c))
            .collect();
        acts.sort();
        out[perm[k]] = (*o, *r, acts);
    }
    out
}

/// Calls `f` on every game of the grid with exactly `spec.states` states,
/// skipping games that are a renaming of an earlier one. Returns the number
/// of games visited.
fn for_each_spec(spec: &GridSpec, timed: bool, f: &mut dyn FnMut(&[StateSpec])) -> usize {
    let n = spec.states;
    let pairs: Vec<(usize, usize)> = (0..=n)
        .flat_map(|d| (0..spec.costs.len()).map(move |c| (d, c)))
        .collect();
    let sets = multisets(pairs.len(), spec.max_actions);
    let rates = if timed { spec.rates.len() } else { 1 };
    let mut per_state: Vec<StateSpec> = Vec::new();
    for owner in [1u8, 2] {
        for r in 0..rates {
            for s in &sets {
                per_state.push((owner, r, s.iter().map(|&i| pairs[i]).collect()));
            }
        }
    }
    let perms = permutations(n);
    let mut idx = vec![0usize; n];
    let mut count = 0;
    loop {
        let game: Vec<StateSpec> = idx.iter().map(|&i| per_state[i].clone()).collect();
        if perms.iter().all(|p| relabel(&game, p) >= game) {
            f(&game);
            count += 1;
        }
        let mut pos = 0;
        loop {
            if pos == n {
                return count;
            }
            idx[pos] += 1;
            if idx[pos] < per_state.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn parts(spec: &GridSpec, game: &[StateSpec]) -> (Vec<Player>, Vec<Action<ExtCost>>) {
    let n = game.len();
    let owners = game
        .iter()
        .map(|(o, _, _)| if *o == 1 { Player::Min } else { Player::Max })
        .collect();
    let actions = game
        .iter()
        .enumerate()
        .flat_map(|(k, (_, _, acts))| {
            acts.iter().map(move |&(d, c)| Action {
                from: k,
                to: if d == n { Dest::Bottom } else { Dest::State(d) },
                cost: spec.costs[c].clone(),
            })
        })
        .collect();
    (owners, actions)
}

/// All priced games of the grid; see [`GridSpec`].
pub fn priced_grid(spec: &GridSpec, f: &mut dyn FnMut(PricedGame<ExtCost>)) -> usize {
    for_each_spec(spec, false, &mut |game| {
        let (owners, actions) = parts(spec, game);
        f(PricedGame::new(owners, actions).expect("grid games are valid"));
    })
}

/// All simple timed games of the grid; see [`GridSpec`].
pub fn sptg_grid(spec: &GridSpec, f: &mut dyn FnMut(Sptg)) -> usize {
    for_each_spec(spec, true, &mut |game| {
        let (owners, actions) = parts(spec, game);
        let rates = game.iter().map(|(_, r, _)| int(spec.rates[*r])).collect();
        f(Sptg::from_parts(owners, rates, actions).expect("grid games are valid"));
    })
}
