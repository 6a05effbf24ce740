//! Solving general one-clock games by reduction to simple games.

use num_traits::Zero;

use super::reduction::{
    build_interval_sptg, build_moment_game, endpoint_ladder, layer_game, IntervalSptg,
};
use super::Ptg;
use crate::error::Result;
use crate::numerics::{ExtCost, Pwl, PwlBuilder, Rational, Side};
use crate::priced_game::extended_dijkstra;
use crate::sptg::{solve_sptg, SweepResult};

/// Where one piece of a value function came from.
#[derive(Clone, Debug)]
pub struct Provenance {
    pub layer: usize,
    pub lo: Rational,
    pub hi: Rational,
    pub game: IntervalSptg,
    pub sweep: SweepResult,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PtgStats {
    pub layers: usize,
    /// Number of ladder points, including 0.
    pub ladder_points: usize,
    /// Number of simple games solved.
    pub oracle_calls: usize,
    pub sweep_steps: usize,
    pub switches: usize,
}

#[derive(Clone, Debug)]
pub struct PtgResult {
    /// Value functions on `[0, M]`. They may jump at ladder points; optimal
    /// strategies need not exist, only ε-optimal ones.
    pub values: Vec<Pwl>,
    pub ladder: Vec<Rational>,
    pub stats: PtgStats,
    pub provenance: Vec<Provenance>,
}

/// Solves a game with intervals and resets.
///
/// Resets are unfolded into `r + 1` layers, `r` being the number of distinct
/// reset targets: more resets than that would revisit a configuration. The
/// last layer is solved first; its values at time 0 price the resets of the
/// layer above.
pub fn solve_ptg(g: &Ptg) -> Result<PtgResult> {
    let layers = g.reset_targets() + 1;
    let mut stats = PtgStats {
        layers,
        ..PtgStats::default()
    };
    let mut provenance = Vec::new();
    let mut next: Option<Vec<ExtCost>> = None;
    let mut top = Vec::new();
    let mut ladder = Vec::new();
    for layer in (0..layers).rev() {
        let game = if g.has_resets() {
            layer_game(g, next.as_deref())
        } else {
            g.clone()
        };
        let (values, l) = solve_reset_free(&game, layer, &mut stats, &mut provenance)?;
        next = Some(values.iter().map(|f| f.at(&Rational::zero())).collect());
        top = values;
        ladder = l;
    }
    stats.ladder_points = ladder.len();
    provenance.reverse();
    Ok(PtgResult {
        values: top,
        ladder,
        stats,
        provenance,
    })
}

fn solve_reset_free(
    g: &Ptg,
    layer: usize,
    stats: &mut PtgStats,
    provenance: &mut Vec<Provenance>,
) -> Result<(Vec<Pwl>, Vec<Rational>)> {
    let n = g.num_states();
    let ladder = endpoint_ladder(g);
    let d = ladder.len();
    let (at_top, _) = build_moment_game(g, None, &ladder[0])?;
    let mut point_values = vec![extended_dijkstra(&at_top).0];
    // Rescaled interval functions, right to left.
    let mut spans: Vec<Vec<Pwl>> = Vec::new();
    let two = Rational::from_integer(2.into());
    for i in 1..d {
        let (hi, lo) = (&ladder[i - 1], &ladder[i]);
        let width = hi - lo;
        let x = (hi + lo) / &two;
        let (moment, _) = build_moment_game(g, Some(&point_values[i - 1]), &x)?;
        let v_left_of_hi = extended_dijkstra(&moment).0;
        let game = build_interval_sptg(g, &v_left_of_hi, &x, &width)?;
        let sweep = solve_sptg(&game.sptg)?;
        stats.oracle_calls += 1;
        stats.sweep_steps += sweep.stats.sweep_steps;
        stats.switches += sweep.stats.switches;
        let right_of_lo: Vec<ExtCost> = sweep.values[..n]
            .iter()
            .map(|f| f.at(&Rational::zero()))
            .collect();
        let (moment, _) = build_moment_game(g, Some(&right_of_lo), lo)?;
        point_values.push(extended_dijkstra(&moment).0);
        spans.push(
            sweep.values[..n]
                .iter()
                .map(|f| f.rescale(lo, hi))
                .collect::<Result<_>>()?,
        );
        provenance.push(Provenance {
            layer,
            lo: lo.clone(),
            hi: hi.clone(),
            game,
            sweep,
        });
    }
    let mut values = Vec::with_capacity(n);
    for k in 0..n {
        let mut b = PwlBuilder::new(ladder[d - 1].clone(), point_values[d - 1][k].clone());
        for i in (1..d).rev() {
            // Interval (ladder[i], ladder[i-1]) is spans[i - 1].
            let f = &spans[i - 1][k];
            let last = f.breaks().len() - 1;
            for (idx, piece) in f.pieces().iter().enumerate() {
                let right = f.breaks()[idx + 1].clone();
                let point = if idx + 1 == last {
                    point_values[i - 1][k].clone()
                } else {
                    f.points()[idx + 1].clone()
                };
                b.push(right, piece.clone(), point)?;
            }
        }
        values.push(b.finish());
    }
    Ok((values, ladder))
}

impl PtgResult {
    /// Value at `x`, or the right limit when `right` is set.
    pub fn value(&self, k: usize, x: &Rational, right: bool) -> Result<ExtCost> {
        self.values[k].eval(x, if right { Side::Right } else { Side::At })
    }
}
