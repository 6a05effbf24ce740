//! Certifies a solved simple game by playing its strategies out.

use num_traits::{One, Zero};

use super::simulate::simulate;
use crate::numerics::Rational;
use crate::priced_game::Dest;
use crate::sptg::{step_certificate, Choice, Sptg, SweepResult};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EquilibriumReport {
    /// Number of simulated starts.
    pub probes: usize,
    /// Number of sweep steps whose ε-game profile was rechecked.
    pub certificates: usize,
    pub failures: Vec<String>,
}

impl EquilibriumReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Probe times for one state: both ends and the midpoint of every cell, plus
/// a uniform grid so that at least `samples` times are tried.
pub fn sample_times(result: &SweepResult, k: usize, samples: usize) -> Vec<Rational> {
    let two = Rational::from_integer(2.into());
    let mut t = Vec::new();
    for c in &result.strategy.cells[k] {
        let iv = &c.interval;
        t.push(iv.lo.clone());
        t.push((&iv.lo + &iv.hi) / &two);
        t.push(iv.hi.clone());
    }
    let grid = samples.saturating_sub(1).max(1);
    for i in 0..=grid {
        t.push(Rational::new(i.into(), grid.into()));
    }
    t.sort();
    t.dedup();
    t
}

/// Checks that simulating the returned profile from sampled starts costs
/// exactly the returned value, and that no recorded ε-game profile admits an
/// improving switch.
pub fn check_equilibrium(g: &Sptg, result: &SweepResult, samples: usize) -> EquilibriumReport {
    let mut report = EquilibriumReport::default();
    let n = g.num_states();
    if let Err(e) = result
        .strategy
        .check_tiling(&Rational::zero(), &Rational::one())
    {
        report
            .failures
            .push(format!("strategy does not tile [0, 1]: {e}"));
        return report;
    }
    for k in 0..n {
        for x in sample_times(result, k, samples) {
            report.probes += 1;
            let expected = result.values[k].at(&x);
            let cell = result
                .strategy
                .cell_at(k, &x)
                .map(|c| format!("cell {} ({})", c.interval, c.choice))
                .unwrap_or_default();
            match simulate(g, &result.strategy, Dest::State(k), &x) {
                Ok(play) if play.cost == expected => {}
                Ok(play) => report.failures.push(format!(
                    "state {k} at {x} in {cell}: play costs {}, value is {expected}",
                    play.cost
                )),
                Err(e) => report
                    .failures
                    .push(format!("state {k} at {x} in {cell}: {e}")),
            }
        }
    }
    let wait_base = g.game().num_actions();
    for (i, step) in result.steps.iter().enumerate() {
        report.certificates += 1;
        let bad = step_certificate(g, step);
        if !bad.is_empty() {
            report.failures.push(format!(
                "sweep step {i} on [{}, {}): improving switches {bad:?}",
                step.lo, step.x
            ));
        }
        let two = Rational::from_integer(2.into());
        let mid = (&step.lo + &step.x) / &two;
        for k in 0..n {
            let j = step.profile[k];
            let want = if j >= wait_base {
                Choice::Wait
            } else {
                Choice::Action(j)
            };
            if result.strategy.choice_at(k, &mid) != Some(want) {
                report.failures.push(format!(
                    "sweep step {i}: state {k} cell at {mid} disagrees with the ε-game profile"
                ));
            }
        }
    }
    report
}
