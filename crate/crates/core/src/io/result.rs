//! Result documents: value functions, strategies and solver statistics.

use std::time::Duration;

use serde::{Deserialize, Serialize};

use super::game::{GameKind, IntervalDoc, Names, Number, FORMAT_VERSION};
use super::{Diagnostic, DiagnosticCode};
use crate::error::{Error, Result};
use crate::numerics::{parse_rational, ExtCost, Piece, Pwl, PwlBuilder};
use crate::ptg::PtgResult;
use crate::sptg::{Choice, Interval, SweepResult, TimedProfile};

/// One affine piece on `(left, right)`.
///
/// `value_at_left` is the right limit at `left`. When the function jumps,
/// `left_jump` holds its value exactly at `left`; on the last segment
/// `right_jump` does the same for `right`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentDoc {
    pub left: Number,
    pub right: Number,
    pub value_at_left: Number,
    pub slope: Number,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left_jump: Option<Number>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right_jump: Option<Number>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellDoc {
    pub interval: IntervalDoc,
    /// An action id, or `"wait"`.
    pub choice: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateResult {
    pub state: String,
    /// Value of an untimed game.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<Number>,
    /// Optimal action of an untimed game.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub segments: Vec<SegmentDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub strategy: Vec<CellDoc>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StatsDoc {
    /// Interior breakpoints of the value functions (simple games).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub event_points: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep_steps: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub switches: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_calls: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layers: Option<usize>,
    /// Only present when timing was requested, so that output stays
    /// reproducible by default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_us: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultDocument {
    pub format: u32,
    pub kind: GameKind,
    pub states: Vec<StateResult>,
    /// Interval endpoints of a timed game, descending.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ladder: Option<Vec<Number>>,
    pub stats: StatsDoc,
}

/// What [`emit_result`] can serialize.
#[derive(Clone, Copy, Debug)]
pub enum ResultInput<'a> {
    Priced {
        values: &'a [ExtCost],
        profile: &'a [usize],
    },
    Sptg(&'a SweepResult),
    Ptg(&'a PtgResult),
}

impl ResultDocument {
    pub fn new(input: ResultInput<'_>, names: &Names, wall_time: Option<Duration>) -> Self {
        let wall_time_us = wall_time.map(|d| d.as_micros().try_into().unwrap_or(u64::MAX));
        match input {
            ResultInput::Priced { values, profile } => ResultDocument {
                format: FORMAT_VERSION,
                kind: GameKind::Priced,
                states: values
                    .iter()
                    .zip(profile)
                    .enumerate()
                    .map(|(k, (v, &j))| StateResult {
                        state: names.states[k].clone(),
                        value: Some(Number::of_cost(v)),
                        action: Some(names.actions[j].clone()),
                        segments: Vec::new(),
                        strategy: Vec::new(),
                    })
                    .collect(),
                ladder: None,
                stats: StatsDoc {
                    wall_time_us,
                    ..StatsDoc::default()
                },
            },
            ResultInput::Sptg(r) => ResultDocument {
                format: FORMAT_VERSION,
                kind: GameKind::Sptg,
                states: states(&r.values, Some(&r.strategy), names),
                ladder: None,
                stats: StatsDoc {
                    event_points: Some(r.stats.event_points),
                    sweep_steps: Some(r.stats.sweep_steps),
                    switches: Some(r.stats.switches),
                    wall_time_us,
                    ..StatsDoc::default()
                },
            },
            ResultInput::Ptg(r) => ResultDocument {
                format: FORMAT_VERSION,
                kind: GameKind::Ptg,
                states: states(&r.values, None, names),
                ladder: Some(r.ladder.iter().map(Number::of).collect()),
                stats: StatsDoc {
                    sweep_steps: Some(r.stats.sweep_steps),
                    switches: Some(r.stats.switches),
                    oracle_calls: Some(r.stats.oracle_calls),
                    layers: Some(r.stats.layers),
                    wall_time_us,
                    ..StatsDoc::default()
                },
            },
        }
    }

    /// Rebuilds the value functions of a timed result.
    pub fn values(&self) -> Result<Vec<Pwl>> {
        self.states
            .iter()
            .map(|s| decode(&s.state, &s.segments))
            .collect()
    }

    /// Rebuilds the strategy of a simple-game result.
    pub fn strategy(&self, names: &Names) -> Result<TimedProfile> {
        let cells = self
            .states
            .iter()
            .map(|s| {
                s.strategy
                    .iter()
                    .map(|c| {
                        let choice = if c.choice == "wait" {
                            Choice::Wait
                        } else {
                            let j = names
                                .actions
                                .iter()
                                .position(|a| *a == c.choice)
                                .ok_or_else(|| {
                                    Error::Parse(format!(
                                        "state {}: unknown action {:?}",
                                        s.state, c.choice
                                    ))
                                })?;
                            Choice::Action(j)
                        };
                        let interval = Interval {
                            lo: parse_rational(&c.interval.lo.0)?,
                            hi: parse_rational(&c.interval.hi.0)?,
                            lo_closed: c.interval.lo_closed,
                            hi_closed: c.interval.hi_closed,
                        };
                        Ok(crate::sptg::Cell { interval, choice })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        Ok(TimedProfile { cells })
    }
}

fn states(values: &[Pwl], strategy: Option<&TimedProfile>, names: &Names) -> Vec<StateResult> {
    values
        .iter()
        .enumerate()
        .map(|(k, f)| StateResult {
            state: names.states[k].clone(),
            value: None,
            action: None,
            segments: encode(f),
            strategy: strategy
                .map(|p| {
                    p.cells[k]
                        .iter()
                        .map(|c| CellDoc {
                            interval: IntervalDoc::of(&c.interval),
                            choice: match c.choice {
                                Choice::Wait => "wait".into(),
                                Choice::Action(j) => names.actions[j].clone(),
                            },
                        })
                        .collect()
                })
                .unwrap_or_default(),
        })
        .collect()
}

fn encode(f: &Pwl) -> Vec<SegmentDoc> {
    let b = f.breaks();
    let points = f.points();
    if f.pieces().is_empty() {
        return vec![SegmentDoc {
            left: Number::of(&b[0]),
            right: Number::of(&b[0]),
            value_at_left: Number::of_cost(&points[0]),
            slope: Number("0".into()),
            left_jump: None,
            right_jump: None,
        }];
    }
    let last = f.pieces().len() - 1;
    f.pieces()
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let end = p.start.plus_scaled(&p.slope, &(&b[i + 1] - &b[i]));
            SegmentDoc {
                left: Number::of(&b[i]),
                right: Number::of(&b[i + 1]),
                value_at_left: Number::of_cost(&p.start),
                slope: Number::of(&p.slope),
                left_jump: (points[i] != p.start).then(|| Number::of_cost(&points[i])),
                right_jump: (i == last && points[i + 1] != end)
                    .then(|| Number::of_cost(&points[i + 1])),
            }
        })
        .collect()
}

fn decode(state: &str, segs: &[SegmentDoc]) -> Result<Pwl> {
    let bad = |what: String| Error::Parse(format!("state {state}: {what}"));
    let first = segs.first().ok_or_else(|| bad("no segments".into()))?;
    let cost = |n: &Number| ExtCost::parse(&n.0);
    let lo = parse_rational(&first.left.0)?;
    let start = cost(first.left_jump.as_ref().unwrap_or(&first.value_at_left))?;
    if segs.len() == 1 && first.left == first.right {
        return Ok(PwlBuilder::new(lo, start).finish());
    }
    let mut b = PwlBuilder::new(lo, start);
    for (i, s) in segs.iter().enumerate() {
        let left = parse_rational(&s.left.0)?;
        if left != *b.last_break() {
            return Err(bad(format!(
                "segment {i} starts at {left}, not {}",
                b.last_break()
            )));
        }
        let right = parse_rational(&s.right.0)?;
        let piece = Piece::new(cost(&s.value_at_left)?, parse_rational(&s.slope.0)?);
        let point = match segs.get(i + 1) {
            Some(next) => cost(next.left_jump.as_ref().unwrap_or(&next.value_at_left))?,
            None => match &s.right_jump {
                Some(v) => cost(v)?,
                None => piece.start.plus_scaled(&piece.slope, &(&right - &left)),
            },
        };
        b.push(right, piece, point)?;
    }
    Ok(b.finish())
}

/// Pretty-printed result document, newline terminated. Identical inputs give
/// byte-identical output unless `wall_time` is given.
pub fn emit_result(input: ResultInput<'_>, names: &Names, wall_time: Option<Duration>) -> String {
    let mut s = serde_json::to_string_pretty(&ResultDocument::new(input, names, wall_time))
        .expect("result documents always serialize");
    s.push('\n');
    s
}

pub fn parse_result(text: &str) -> std::result::Result<ResultDocument, Diagnostic> {
    serde_json::from_str(text).map_err(|e| {
        Diagnostic::new(
            DiagnosticCode::Schema,
            format!("line {}, column {}", e.line(), e.column()),
            e.to_string(),
        )
    })
}
