//! Simple priced timed games on `[0, 1]` and the backward sweep solving them.
//!
//! At time `x` the game is summarized by an untimed ε-game in which every
//! state may also "wait": exit at cost `v_k(x) + r_k·ε`. Solving that game
//! gives the values just before `x` (base) and their slopes (ε-coefficient).
//! The optimal profile stays optimal until two of the affine cost lines of a
//! state cross, which is the next event point.

mod strategy;

pub use strategy::{Cell, Choice, Interval, TimedProfile};

use std::time::{Duration, Instant};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numerics::{CostDomain, EpsCost, ExtCost, Piece, Pwl, PwlBuilder, Rational};
use crate::priced_game::{
    evaluate_profile, extended_dijkstra, normalize, potential_less, potential_matrix,
    single_switch_iteration, strategy_iteration, Action, Dest, Evaluation, Player, PricedGame,
    Profile,
};
use strategy::CellCollector;

/// A priced game whose states charge `rate` per unit of time spent waiting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sptg {
    game: PricedGame<ExtCost>,
    rates: Vec<Rational>,
}

impl Sptg {
    pub fn new(game: PricedGame<ExtCost>, rates: Vec<Rational>) -> Result<Self> {
        if rates.len() != game.num_states() {
            return Err(Error::Validation(format!(
                "{} rates for {} states",
                rates.len(),
                game.num_states()
            )));
        }
        if let Some(k) = rates.iter().position(Signed::is_negative) {
            return Err(Error::Validation(format!(
                "state {k} has negative rate {}",
                rates[k]
            )));
        }
        Ok(Sptg { game, rates })
    }

    /// Convenience constructor from raw parts.
    pub fn from_parts(
        owners: Vec<Player>,
        rates: Vec<Rational>,
        actions: Vec<Action<ExtCost>>,
    ) -> Result<Self> {
        Sptg::new(PricedGame::new(owners, actions)?, rates)
    }

    pub fn game(&self) -> &PricedGame<ExtCost> {
        &self.game
    }

    pub fn rates(&self) -> &[Rational] {
        &self.rates
    }

    pub fn num_states(&self) -> usize {
        self.game.num_states()
    }

    /// Id of the waiting action of state `k` in the ε-game.
    pub fn wait_action(&self, k: usize) -> usize {
        self.game.num_actions() + k
    }

    /// Distinct rates in ascending order, always including `0`.
    pub fn rate_ladder(&self) -> Vec<Rational> {
        let mut r: Vec<Rational> = self.rates.clone();
        r.push(Rational::zero());
        r.sort();
        r.dedup();
        r
    }

    /// Whether only one player owns states.
    pub fn is_one_player(&self) -> bool {
        let o = self.game.owners();
        o.iter().all(|&p| p == o[0])
    }
}

/// The ε-game at a time where the values are `v_at_x`: original actions keep
/// their cost, and state `k` gains an exit of cost `v_k(x) + r_k·ε`.
pub fn build_eps_game(g: &Sptg, v_at_x: &[ExtCost]) -> PricedGame<EpsCost> {
    let mut actions: Vec<Action<EpsCost>> = g
        .game
        .actions()
        .iter()
        .map(|a| Action {
            from: a.from,
            to: a.to,
            cost: EpsCost::plain(a.cost.clone()),
        })
        .collect();
    for (k, v) in v_at_x.iter().enumerate() {
        actions.push(Action {
            from: k,
            to: Dest::Bottom,
            cost: EpsCost::new(v.clone(), g.rates[k].clone()),
        });
    }
    PricedGame::new(g.game.owners().to_vec(), actions).expect("extension of a valid game")
}

/// Values and a normalized optimal profile at time 1, where no time is left
/// to wait.
pub fn solve_at_time_one(g: &Sptg) -> Result<(Vec<ExtCost>, Profile)> {
    let (_, sigma) = extended_dijkstra(&g.game);
    let out = normalize(&g.game, &sigma)?;
    Ok((out.values(), out.profile))
}

/// The affine cost line `A + B·t` (with `t = x − x''`) of taking action `j`.
fn action_line(gx: &PricedGame<EpsCost>, eval: &Evaluation<EpsCost>, j: usize) -> EpsCost {
    let a = gx.action(j);
    a.cost.plus(&eval.of(a.to).payoff)
}

/// Largest `x' ∈ [0, x)` where some alternative line of a state meets the
/// line of its chosen action, among line pairs that differ at `x`.
pub fn next_event_point(
    gx: &PricedGame<EpsCost>,
    x: &Rational,
    eval: &Evaluation<EpsCost>,
    sigma: &[usize],
) -> Rational {
    let mut best = Rational::zero();
    for k in 0..gx.num_states() {
        let chosen = &eval.values[k].payoff;
        let (ExtCost::Finite(a1), b1) = (chosen.base(), chosen.eps()) else {
            continue;
        };
        for &j in gx.actions_of(k) {
            if j == sigma[k] {
                continue;
            }
            let line = action_line(gx, eval, j);
            let (ExtCost::Finite(a2), b2) = (line.base(), line.eps()) else {
                continue;
            };
            if a1 == a2 || b1 == b2 {
                continue;
            }
            let t = (a2 - a1) / (b1 - b2);
            if t.is_positive() && t <= *x {
                let meet = x - t;
                if meet > best {
                    best = meet;
                }
            }
        }
    }
    best
}

/// How each ε-game along the sweep is solved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum InnerSolver {
    /// Extended Dijkstra followed by length normalization.
    #[default]
    Dijkstra,
    /// Strategy iteration warm-started from the previous profile.
    StrategyIteration,
    /// One switch at a time from the previous profile, checking that the
    /// potential matrix strictly decreases with every switch.
    Instrumented,
}

#[derive(Clone, Debug, Default)]
pub struct SolveOptions {
    pub inner: InnerSolver,
    pub timings: bool,
    /// Upper bound on sweep steps before giving up.
    pub max_steps: Option<usize>,
}

/// One solved ε-game of the sweep, valid on `[lo, x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepStep {
    pub x: Rational,
    pub lo: Rational,
    pub values_at_x: Vec<ExtCost>,
    /// Optimal profile of the ε-game; waiting actions have ids past the
    /// original actions.
    pub profile: Profile,
    /// Value slopes `−b` on `[lo, x)`.
    pub slopes: Vec<Rational>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Distinct interior breakpoints over all value functions.
    pub event_points: usize,
    pub sweep_steps: usize,
    pub switches: usize,
    /// Single switches that failed to decrease the potential (instrumented
    /// runs only).
    pub potential_violations: usize,
    /// The first event point found below time 1.
    pub first_event: Option<Rational>,
    pub step_times: Vec<Duration>,
}

#[derive(Clone, Debug)]
pub struct SweepResult {
    pub values: Vec<Pwl>,
    pub strategy: TimedProfile,
    /// Profile used at time 1 (original action ids).
    pub profile_at_one: Profile,
    pub steps: Vec<SweepStep>,
    pub stats: SolveStats,
}

impl SweepResult {
    /// Distinct interior breakpoints of the value functions, ascending.
    pub fn event_points(&self) -> Vec<Rational> {
        let mut xs: Vec<Rational> = self
            .values
            .iter()
            .flat_map(|f| f.interior_breaks().iter().cloned())
            .collect();
        xs.sort();
        xs.dedup();
        xs
    }
}

pub fn solve_sptg(g: &Sptg) -> Result<SweepResult> {
    solve_sptg_with(g, &SolveOptions::default())
}

pub fn solve_sptg_with(g: &Sptg, opts: &SolveOptions) -> Result<SweepResult> {
    let n = g.num_states();
    let (v1, sigma1) = solve_at_time_one(g)?;
    let ladder = g.rate_ladder();
    let mut stats = SolveStats::default();
    let mut cells = CellCollector::new(n);
    for k in 0..n {
        cells.push_point(k, Rational::one(), Choice::Action(sigma1[k]));
    }
    // Segments per state, right to left: (lo, hi, value at hi, slope).
    let mut segs: Vec<Vec<(Rational, Rational, ExtCost, Rational)>> = vec![Vec::new(); n];
    let mut steps = Vec::new();
    let mut x = Rational::one();
    let mut v = v1.clone();
    let mut sigma = sigma1.clone();
    let wait_base = g.game.num_actions();
    while x.is_positive() {
        if let Some(cap) = opts.max_steps {
            if steps.len() >= cap {
                return Err(Error::Budget(format!("sweep exceeded {cap} steps")));
            }
        }
        let started = opts.timings.then(Instant::now);
        let gx = build_eps_game(g, &v);
        let out = match opts.inner {
            InnerSolver::Dijkstra => {
                let (_, s) = extended_dijkstra(&gx);
                normalize(&gx, &s)?
            }
            InnerSolver::StrategyIteration => strategy_iteration(&gx, &sigma)?,
            InnerSolver::Instrumented => {
                let mut violations = 0;
                let mut failure = None;
                let out = single_switch_iteration(&gx, &sigma, |before, _, after| {
                    let p = potential_matrix(&gx, before, &ladder);
                    let q = potential_matrix(&gx, after, &ladder);
                    match (p, q) {
                        (Ok(p), Ok(q)) => {
                            if !potential_less(&q, &p).unwrap_or(false) {
                                violations += 1;
                            }
                        }
                        (Err(e), _) | (_, Err(e)) => failure = Some(e),
                    }
                })?;
                if let Some(e) = failure {
                    return Err(e);
                }
                stats.potential_violations += violations;
                out
            }
        };
        stats.switches += out.switches;
        let eval = &out.evaluation;
        let next = next_event_point(&gx, &x, eval, &out.profile);
        if stats.first_event.is_none() {
            stats.first_event = Some(next.clone());
        }
        let mut slopes = Vec::with_capacity(n);
        for k in 0..n {
            let payoff = &eval.values[k].payoff;
            let slope = -payoff.eps().clone();
            let at_x = payoff.base().clone();
            debug_assert_eq!(at_x, v[k], "ε-game base value must equal v(x)");
            segs[k].push((next.clone(), x.clone(), at_x, slope.clone()));
            let j = out.profile[k];
            let choice = if j >= wait_base {
                Choice::Wait
            } else {
                Choice::Action(j)
            };
            cells.push_span(k, next.clone(), x.clone(), choice);
            slopes.push(slope);
        }
        let width = &x - &next;
        let v_next: Vec<ExtCost> = v
            .iter()
            .zip(&slopes)
            .map(|(val, s)| val.plus_scaled(s, &-width.clone()))
            .collect();
        steps.push(SweepStep {
            x: x.clone(),
            lo: next.clone(),
            values_at_x: v.clone(),
            profile: out.profile.clone(),
            slopes,
        });
        if let Some(t) = started {
            stats.step_times.push(t.elapsed());
        }
        sigma = out.profile;
        v = v_next;
        x = next;
    }
    let values: Vec<Pwl> = segs
        .into_iter()
        .zip(&v1)
        .map(|(mut s, end)| {
            s.reverse();
            build_values(&s, end)
        })
        .collect::<Result<_>>()?;
    stats.sweep_steps = steps.len();
    let result = SweepResult {
        values,
        strategy: cells.finish(),
        profile_at_one: sigma1,
        steps,
        stats,
    };
    let event_points = result.event_points().len();
    Ok(SweepResult {
        stats: SolveStats {
            event_points,
            ..result.stats
        },
        ..result
    })
}

fn build_values(segs: &[(Rational, Rational, ExtCost, Rational)], end: &ExtCost) -> Result<Pwl> {
    let (lo, hi, at_hi, slope) = &segs[0];
    let mut b = PwlBuilder::new(lo.clone(), at_hi.plus_scaled(slope, &(lo - hi)));
    for (lo, hi, at_hi, slope) in segs {
        b.push_continuous(
            hi.clone(),
            Piece::new(at_hi.plus_scaled(slope, &(lo - hi)), slope.clone()),
        )?;
    }
    b.set_last_point(end.clone());
    let f = b.finish();
    if !f.is_continuous() {
        return Err(Error::Validation(
            "sweep produced a discontinuous value function".into(),
        ));
    }
    Ok(f)
}

/// Re-solves nothing: checks that `profile` leaves no improving switch in the
/// ε-game recorded by `step`.
pub fn step_certificate(g: &Sptg, step: &SweepStep) -> Vec<usize> {
    let gx = build_eps_game(g, &step.values_at_x);
    let eval = evaluate_profile(&gx, &step.profile);
    let mut bad: Vec<usize> = [Player::Min, Player::Max]
        .into_iter()
        .flat_map(|p| crate::priced_game::improving_switches(&gx, &step.profile, &eval, p))
        .map(|s| s.action)
        .collect();
    bad.sort();
    bad
}

/// Upper bound on event points: `min(12^n, Π(|A_k| + 1))`, saturating.
pub fn event_point_bound(g: &Sptg) -> u128 {
    let n = g.num_states() as u32;
    let twelve = 12u128.checked_pow(n).unwrap_or(u128::MAX);
    let product = (0..g.num_states()).fold(1u128, |acc, k| {
        acc.saturating_mul(g.game.actions_of(k).len() as u128 + 1)
    });
    twelve.min(product)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{int, rat};
    use crate::oracle::fixtures::fixture_a;

    fn fin(p: i64, q: i64) -> ExtCost {
        ExtCost::Finite(rat(p, q))
    }

    fn act(from: usize, to: Option<usize>, cost: ExtCost) -> Action<ExtCost> {
        Action {
            from,
            to: to.map_or(Dest::Bottom, Dest::State),
            cost,
        }
    }

    #[test]
    fn eps_game_adds_waiting_exits() {
        let g = fixture_a();
        let gx = build_eps_game(&g, &[fin(1, 2), ExtCost::Infinity, fin(0, 1)]);
        assert_eq!(gx.num_actions(), 7);
        assert_eq!(gx.action(4).cost, EpsCost::new(fin(1, 2), int(5)));
        assert!(gx.action(5).cost.is_infinite());
        assert_eq!(gx.action(1).cost, EpsCost::plain(fin(1, 2)));
    }

    #[test]
    fn fixture_a_values() {
        let r = solve_sptg(&fixture_a()).unwrap();
        let k1 = &r.values[0];
        assert_eq!(k1.breaks(), &[int(0), rat(1, 2), int(1)]);
        assert_eq!(k1.pieces()[0], Piece::new(fin(3, 2), int(-1)));
        assert_eq!(k1.pieces()[1], Piece::new(fin(1, 1), int(-2)));
        assert_eq!(
            r.values[1],
            Pwl::affine(int(0), int(1), fin(2, 1), int(-2)).unwrap()
        );
        assert_eq!(
            r.values[2],
            Pwl::affine(int(0), int(1), fin(1, 1), int(-1)).unwrap()
        );
        assert_eq!(r.stats.event_points, 1);
        assert_eq!(r.event_points(), vec![rat(1, 2)]);
        assert_eq!(r.stats.first_event, Some(rat(1, 2)));
        let cells: Vec<(Interval, Choice)> = r.strategy.cells[0]
            .iter()
            .map(|c| (c.interval.clone(), c.choice))
            .collect();
        assert_eq!(
            cells,
            vec![
                (Interval::right_open(int(0), rat(1, 2)), Choice::Action(1)),
                (Interval::right_open(rat(1, 2), int(1)), Choice::Action(0)),
                (Interval::point(int(1)), Choice::Action(0)),
            ]
        );
        assert_eq!(r.strategy.choice_at(1, &rat(1, 3)), Some(Choice::Wait));
        r.strategy.check_tiling(&int(0), &int(1)).unwrap();
    }

    #[test]
    fn inner_solvers_agree() {
        let g = fixture_a();
        let base = solve_sptg(&g).unwrap();
        for inner in [InnerSolver::StrategyIteration, InnerSolver::Instrumented] {
            let r = solve_sptg_with(
                &g,
                &SolveOptions {
                    inner,
                    ..Default::default()
                },
            )
            .unwrap();
            assert_eq!(r.values, base.values);
            assert_eq!(r.stats.potential_violations, 0);
        }
    }

    #[test]
    fn free_game_is_zero() {
        let g = Sptg::from_parts(
            vec![Player::Min, Player::Max],
            vec![int(0), int(0)],
            vec![act(0, None, fin(0, 1)), act(1, None, fin(0, 1))],
        )
        .unwrap();
        let r = solve_sptg(&g).unwrap();
        for f in &r.values {
            assert_eq!(*f, Pwl::constant(int(0), int(1), ExtCost::zero()).unwrap());
        }
    }

    #[test]
    fn maximizer_waits_to_the_end() {
        let g = Sptg::from_parts(
            vec![Player::Max],
            vec![int(1)],
            vec![act(0, None, fin(0, 1))],
        )
        .unwrap();
        let r = solve_sptg(&g).unwrap();
        assert_eq!(
            r.values[0],
            Pwl::affine(int(0), int(1), fin(1, 1), int(-1)).unwrap()
        );
        assert_eq!(r.stats.event_points, 0);
        // Cells: wait on [0,1), act at 1.
        assert_eq!(r.strategy.cells[0].len(), 2);
    }

    #[test]
    fn time_one_solutions() {
        let g = Sptg::from_parts(
            vec![Player::Min],
            vec![int(1)],
            vec![act(0, None, fin(1, 2)), act(0, None, fin(2, 1))],
        )
        .unwrap();
        assert_eq!(solve_at_time_one(&g).unwrap().0, vec![fin(1, 2)]);
        let cyc = Sptg::from_parts(
            vec![Player::Min],
            vec![int(1)],
            vec![act(0, Some(0), fin(0, 1))],
        )
        .unwrap();
        assert_eq!(solve_at_time_one(&cyc).unwrap().0, vec![ExtCost::Infinity]);
        let r = solve_sptg(&cyc).unwrap();
        assert!(r.values[0].is_constant_infinity());
    }

    #[test]
    fn single_exit_minimizer_has_no_event() {
        let g = Sptg::from_parts(
            vec![Player::Min],
            vec![int(1)],
            vec![act(0, None, fin(1, 2))],
        )
        .unwrap();
        let (v, sigma) = solve_at_time_one(&g).unwrap();
        let gx = build_eps_game(&g, &v);
        let eval = evaluate_profile(&gx, &sigma);
        assert_eq!(next_event_point(&gx, &int(1), &eval, &sigma), int(0));
        let r = solve_sptg(&g).unwrap();
        assert_eq!(
            r.values[0],
            Pwl::constant(int(0), int(1), fin(1, 2)).unwrap()
        );
    }

    #[test]
    fn steps_carry_certificates() {
        let g = fixture_a();
        let r = solve_sptg(&g).unwrap();
        for s in &r.steps {
            assert!(step_certificate(&g, s).is_empty());
        }
        assert_eq!(event_point_bound(&g), 12);
    }
}
