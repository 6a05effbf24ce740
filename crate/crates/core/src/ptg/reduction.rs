//! Building blocks of the reduction from timed games to simple games.

use num_traits::{One, Zero};

use super::{Ptg, PtgAction};
use crate::error::{Error, Result};
use crate::numerics::{ExtCost, Rational};
use crate::priced_game::{Action, Dest, Player, PricedGame};
use crate::sptg::{Interval, Sptg};

/// `0` and every interval endpoint, in strictly decreasing order.
pub fn endpoint_ladder(g: &Ptg) -> Vec<Rational> {
    let mut xs: Vec<Rational> = g
        .actions()
        .iter()
        .flat_map(|a| [a.interval.lo.clone(), a.interval.hi.clone()])
        .collect();
    xs.push(Rational::zero());
    xs.sort_by(|a, b| b.cmp(a));
    xs.dedup();
    xs
}

/// One layer of the reset unfolding, as a reset-free game. A reset action
/// becomes an exit paying its own cost plus the value at time 0 of its target
/// in the next layer; in the last layer (`next = None`) it costs infinity.
pub fn layer_game(g: &Ptg, next: Option<&[ExtCost]>) -> Ptg {
    let actions = g
        .actions()
        .iter()
        .map(|a| match (a.reset, a.to) {
            (true, Dest::State(t)) => PtgAction {
                from: a.from,
                to: Dest::Bottom,
                cost: match next {
                    Some(v) => &a.cost + &v[t],
                    None => ExtCost::Infinity,
                },
                interval: a.interval.clone(),
                reset: false,
            },
            _ => PtgAction {
                reset: false,
                ..a.clone()
            },
        })
        .collect();
    Ptg::new(g.owners().to_vec(), g.rates().to_vec(), actions)
        .expect("unfolding keeps the game valid")
}

/// The untimed game of the single moment `x`: only actions available at `x`,
/// plus (when `v` is given) an exit from every state `k` at cost `v[k]`
/// standing for "let time pass".
///
/// Action `i` of the result is original action `origin[i]`, or the exit of
/// state `i − len(origin)` past the end.
pub fn build_moment_game(
    g: &Ptg,
    v: Option<&[ExtCost]>,
    x: &Rational,
) -> Result<(PricedGame<ExtCost>, Vec<usize>)> {
    let mut actions = Vec::new();
    let mut origin = Vec::new();
    for (j, a) in g.actions().iter().enumerate() {
        if a.reset {
            return Err(Error::Validation(
                "moment games need a reset-free game".into(),
            ));
        }
        if a.interval.contains(x) {
            origin.push(j);
            actions.push(Action {
                from: a.from,
                to: a.to,
                cost: a.cost.clone(),
            });
        }
    }
    if let Some(v) = v {
        for (k, value) in v.iter().enumerate() {
            actions.push(Action {
                from: k,
                to: Dest::Bottom,
                cost: value.clone(),
            });
        }
    }
    Ok((PricedGame::new(g.owners().to_vec(), actions)?, origin))
}

/// A simple game standing for one open interval between ladder points.
#[derive(Clone, Debug)]
pub struct IntervalSptg {
    pub sptg: Sptg,
    /// The extra maximizer state that absorbs early exits of the minimizer.
    pub max_state: usize,
    /// Original action id behind each action; `None` for added exits.
    pub origin: Vec<Option<usize>>,
}

/// The simple game for an interval of length `width` whose availability is
/// that of the interior time `x`, and whose right end is worth `v_right`.
///
/// Every state gets an exit worth `v_right[k]`. Exits of maximizer states go
/// straight to `⊥`: leaving early only forfeits waiting income. Exits of
/// minimizer states go through an extra maximizer state with the largest
/// rate, which makes leaving early never cheaper than waiting. Actions that
/// reach `⊥` in the original game keep doing so; they are legitimately
/// available inside the interval. Rates are scaled by `width`.
pub fn build_interval_sptg(
    g: &Ptg,
    v_right: &[ExtCost],
    x: &Rational,
    width: &Rational,
) -> Result<IntervalSptg> {
    if *width <= Rational::zero() {
        return Err(Error::Validation(format!(
            "interval width {width} is not positive"
        )));
    }
    let n = g.num_states();
    let max_state = n;
    let mut owners = g.owners().to_vec();
    owners.push(Player::Max);
    let mut rates: Vec<Rational> = g.rates().iter().map(|r| r * width).collect();
    let top = rates.iter().max().cloned().unwrap_or_else(Rational::zero);
    rates.push(top);
    let mut actions = Vec::new();
    let mut origin = Vec::new();
    for (j, a) in g.actions().iter().enumerate() {
        if a.reset {
            return Err(Error::Validation(
                "interval games need a reset-free game".into(),
            ));
        }
        if a.interval.contains(x) {
            actions.push(Action {
                from: a.from,
                to: a.to,
                cost: a.cost.clone(),
            });
            origin.push(Some(j));
        }
    }
    for (k, value) in v_right.iter().enumerate() {
        let to = match g.owner(k) {
            Player::Min => Dest::State(max_state),
            Player::Max => Dest::Bottom,
        };
        actions.push(Action {
            from: k,
            to,
            cost: value.clone(),
        });
        origin.push(None);
    }
    actions.push(Action {
        from: max_state,
        to: Dest::Bottom,
        cost: ExtCost::zero(),
    });
    origin.push(None);
    Ok(IntervalSptg {
        sptg: Sptg::from_parts(owners, rates, actions)?,
        max_state,
        origin,
    })
}

#[derive(Clone, Debug)]
pub struct Transformed {
    pub sptg: Sptg,
    pub max_state: usize,
    pub origin: Vec<Option<usize>>,
}

/// Turns a game on `[0, 1]` whose actions are available either on `[0, 1]`
/// or only at time 1 into a simple game with one extra state.
///
/// Maximizer actions available only at 1 are made available throughout, as
/// the maximizer can always wait for them. Minimizer ones are redirected to
/// an extra maximizer state with the largest rate and a free exit. Parallel
/// actions keep only the one their owner prefers.
pub fn transform_endpoint_actions(g: &Ptg) -> Result<Transformed> {
    let one = Rational::one();
    let full = Interval::closed(Rational::zero(), one.clone());
    let end = Interval::point(one.clone());
    if *g.horizon() != one {
        return Err(Error::Validation(
            "endpoint transform needs horizon 1".into(),
        ));
    }
    let n = g.num_states();
    let max_state = n;
    let mut candidates: Vec<(usize, Action<ExtCost>)> = Vec::new();
    for (j, a) in g.actions().iter().enumerate() {
        if a.reset {
            return Err(Error::Validation(format!("action {j} resets the clock")));
        }
        let to = if a.interval == full {
            a.to
        } else if a.interval == end {
            if a.to != Dest::Bottom {
                return Err(Error::Validation(format!(
                    "action {j} is only available at time 1 but does not end the game"
                )));
            }
            match g.owner(a.from) {
                Player::Max => Dest::Bottom,
                Player::Min => Dest::State(max_state),
            }
        } else {
            return Err(Error::Validation(format!(
                "action {j} has interval {}, expected [0, 1] or [1, 1]",
                a.interval
            )));
        };
        candidates.push((
            j,
            Action {
                from: a.from,
                to,
                cost: a.cost.clone(),
            },
        ));
    }
    // Keep the owner-preferred action among parallel ones (lowest id on ties).
    let mut kept: Vec<(usize, Action<ExtCost>)> = Vec::new();
    for (j, a) in candidates {
        match kept
            .iter_mut()
            .find(|(_, b)| b.from == a.from && b.to == a.to)
        {
            Some(slot) => {
                let better = match g.owner(a.from) {
                    Player::Min => a.cost < slot.1.cost,
                    Player::Max => a.cost > slot.1.cost,
                };
                if better {
                    *slot = (j, a);
                }
            }
            None => kept.push((j, a)),
        }
    }
    kept.sort_by_key(|(j, _)| *j);
    let mut origin: Vec<Option<usize>> = kept.iter().map(|(j, _)| Some(*j)).collect();
    let mut actions: Vec<Action<ExtCost>> = kept.into_iter().map(|(_, a)| a).collect();
    actions.push(Action {
        from: max_state,
        to: Dest::Bottom,
        cost: ExtCost::zero(),
    });
    origin.push(None);
    let mut owners = g.owners().to_vec();
    owners.push(Player::Max);
    let mut rates = g.rates().to_vec();
    rates.push(rates.iter().max().cloned().unwrap_or_else(Rational::zero));
    Ok(Transformed {
        sptg: Sptg::from_parts(owners, rates, actions)?,
        max_state,
        origin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{int, rat, Pwl};
    use crate::priced_game::extended_dijkstra;
    use crate::ptg::tests::pa;
    use crate::sptg::solve_sptg;

    fn fig3() -> Ptg {
        Ptg::new(
            vec![Player::Min, Player::Max],
            vec![int(1), int(0)],
            vec![
                pa(0, Some(1), 0, Interval::closed(int(0), int(1)), false),
                pa(1, None, 1, Interval::point(int(0)), false),
                pa(1, None, 0, Interval::point(int(1)), false),
            ],
        )
        .unwrap()
    }

    #[test]
    fn ladder_descends_through_zero() {
        assert_eq!(endpoint_ladder(&fig3()), vec![int(1), int(0)]);
    }

    #[test]
    fn moment_game_at_zero() {
        let (game, origin) =
            build_moment_game(&fig3(), Some(&[ExtCost::zero(), ExtCost::zero()]), &int(0)).unwrap();
        assert_eq!(origin, vec![0, 1]);
        let (v, _) = extended_dijkstra(&game);
        assert_eq!(v, vec![ExtCost::zero(), ExtCost::from_int(1)]);
    }

    #[test]
    fn moment_game_without_actions_forces_exit() {
        let (game, origin) = build_moment_game(
            &fig3(),
            Some(&[ExtCost::zero(), ExtCost::from_int(3)]),
            &rat(1, 2),
        )
        .unwrap();
        assert_eq!(origin, vec![0]);
        assert_eq!(extended_dijkstra(&game).0[1], ExtCost::from_int(3));
    }

    #[test]
    fn interval_game_scales_rates() {
        let g = Ptg::new(
            vec![Player::Min, Player::Max],
            vec![int(2), int(1)],
            vec![
                pa(0, None, 0, Interval::closed(int(0), int(1)), false),
                pa(1, None, 0, Interval::closed(int(0), int(1)), false),
            ],
        )
        .unwrap();
        let ig = build_interval_sptg(
            &g,
            &[ExtCost::zero(), ExtCost::zero()],
            &rat(1, 2),
            &rat(1, 3),
        )
        .unwrap();
        assert_eq!(ig.sptg.rates(), &[rat(2, 3), rat(1, 3), rat(2, 3)]);
        assert_eq!(ig.sptg.num_states(), 3);
        // Minimizer exit goes through the max state, maximizer exit does not.
        assert_eq!(ig.sptg.game().action(2).to, Dest::State(2));
        assert_eq!(ig.sptg.game().action(3).to, Dest::Bottom);
        assert!(
            build_interval_sptg(&g, &[ExtCost::zero(), ExtCost::zero()], &rat(1, 2), &int(0))
                .is_err()
        );
    }

    #[test]
    fn endpoint_transform_single_minimizer() {
        let g = Ptg::new(
            vec![Player::Min],
            vec![int(1)],
            vec![pa(0, None, 0, Interval::point(int(1)), false)],
        )
        .unwrap();
        let t = transform_endpoint_actions(&g).unwrap();
        assert_eq!(t.sptg.num_states(), 2);
        assert_eq!(t.sptg.game().num_actions(), 2);
        let r = solve_sptg(&t.sptg).unwrap();
        assert_eq!(
            r.values[0],
            Pwl::affine(int(0), int(1), ExtCost::from_int(1), int(-1)).unwrap()
        );
    }

    #[test]
    fn endpoint_transform_rejects_and_prunes() {
        let bad = Ptg::new(
            vec![Player::Min, Player::Min],
            vec![int(1), int(1)],
            vec![
                pa(0, Some(1), 0, Interval::point(int(1)), false),
                pa(1, None, 0, Interval::closed(int(0), int(1)), false),
            ],
        )
        .unwrap();
        assert!(transform_endpoint_actions(&bad).is_err());
        let parallel = Ptg::new(
            vec![Player::Max],
            vec![int(1)],
            vec![
                pa(0, None, 1, Interval::closed(int(0), int(1)), false),
                pa(0, None, 3, Interval::closed(int(0), int(1)), false),
            ],
        )
        .unwrap();
        let t = transform_endpoint_actions(&parallel).unwrap();
        assert_eq!(t.origin, vec![Some(1), None]);
    }

    #[test]
    fn last_layer_makes_resets_infinite() {
        let g = Ptg::new(
            vec![Player::Max],
            vec![int(1)],
            vec![
                pa(0, Some(0), 0, Interval::closed(int(0), int(1)), true),
                pa(0, None, 0, Interval::point(int(1)), false),
            ],
        )
        .unwrap();
        let last = layer_game(&g, None);
        assert!(!last.has_resets());
        assert_eq!(last.action(0).cost, ExtCost::Infinity);
        let inner = layer_game(&g, Some(&[ExtCost::from_int(2)]));
        assert_eq!(inner.action(0).cost, ExtCost::from_int(2));
    }
}
