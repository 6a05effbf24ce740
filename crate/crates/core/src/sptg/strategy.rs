//! Piecewise-constant timed strategies.

use std::fmt;

use crate::numerics::Rational;

/// What a state does at a given time: take an action now, or wait.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Choice {
    Action(usize),
    Wait,
}

impl fmt::Display for Choice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Choice::Action(j) => write!(f, "action {j}"),
            Choice::Wait => f.write_str("wait"),
        }
    }
}

/// A time interval with independently open or closed ends.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn closed(lo: Rational, hi: Rational) -> Self {
        Interval {
            lo,
            hi,
            lo_closed: true,
            hi_closed: true,
        }
    }

    /// `[lo, hi)`.
    pub fn right_open(lo: Rational, hi: Rational) -> Self {
        Interval {
            lo,
            hi,
            lo_closed: true,
            hi_closed: false,
        }
    }

    pub fn point(x: Rational) -> Self {
        Interval::closed(x.clone(), x)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = if self.lo_closed {
            *x >= self.lo
        } else {
            *x > self.lo
        };
        let below = if self.hi_closed {
            *x <= self.hi
        } else {
            *x < self.hi
        };
        above && below
    }

    /// Has no points.
    pub fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && !(self.lo_closed && self.hi_closed))
    }

    /// Contains some `(x, x + δ)` for every `x` in it.
    pub fn is_right_open(&self) -> bool {
        !self.hi_closed && self.lo < self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.lo_closed { '[' } else { '(' };
        let r = if self.hi_closed { ']' } else { ')' };
        write!(f, "{l}{}, {}{r}", self.lo, self.hi)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub interval: Interval,
    pub choice: Choice,
}

/// Per state, disjoint cells covering the time domain in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TimedProfile {
    pub cells: Vec<Vec<Cell>>,
}

impl TimedProfile {
    pub fn choice_at(&self, state: usize, x: &Rational) -> Option<Choice> {
        self.cells[state]
            .iter()
            .find(|c| c.interval.contains(x))
            .map(|c| c.choice)
    }

    /// The cell of `state` containing `x`.
    pub fn cell_at(&self, state: usize, x: &Rational) -> Option<&Cell> {
        self.cells[state].iter().find(|c| c.interval.contains(x))
    }

    /// Checks that every state's cells tile `[lo, hi]` in order and that
    /// waiting only happens on cells with room to the right.
    pub fn check_tiling(&self, lo: &Rational, hi: &Rational) -> Result<(), String> {
        for (k, cells) in self.cells.iter().enumerate() {
            let mut cursor = (lo.clone(), true);
            for c in cells {
                let iv = &c.interval;
                if iv.is_empty() {
                    return Err(format!("state {k}: empty cell {iv}"));
                }
                if iv.lo != cursor.0 || iv.lo_closed != cursor.1 {
                    return Err(format!("state {k}: cell {iv} does not continue the tiling"));
                }
                if c.choice == Choice::Wait && !iv.is_right_open() {
                    return Err(format!("state {k}: waiting cell {iv} ends closed"));
                }
                cursor = (iv.hi.clone(), !iv.hi_closed);
            }
            if cursor != (hi.clone(), false) {
                return Err(format!("state {k}: cells stop at {} before {hi}", cursor.0));
            }
        }
        Ok(())
    }
}

/// Accumulates right-open cells per state from a right-to-left sweep.
#[derive(Debug)]
pub(crate) struct CellCollector {
    /// Per state, cells in decreasing time order.
    rev: Vec<Vec<Cell>>,
}

impl CellCollector {
    pub fn new(n: usize) -> Self {
        CellCollector {
            rev: vec![Vec::new(); n],
        }
    }

    pub fn push_point(&mut self, k: usize, x: Rational, choice: Choice) {
        self.rev[k].push(Cell {
            interval: Interval::point(x),
            choice,
        });
    }

    /// Adds `[lo, hi)`, merging with the previously added cell when it starts
    /// at `hi`, is right-open and makes the same choice.
    pub fn push_span(&mut self, k: usize, lo: Rational, hi: Rational, choice: Choice) {
        if let Some(last) = self.rev[k].last_mut() {
            if last.choice == choice
                && last.interval.lo == hi
                && last.interval.lo_closed
                && !last.interval.hi_closed
            {
                last.interval.lo = lo;
                return;
            }
        }
        self.rev[k].push(Cell {
            interval: Interval::right_open(lo, hi),
            choice,
        });
    }

    pub fn finish(self) -> TimedProfile {
        TimedProfile {
            cells: self
                .rev
                .into_iter()
                .map(|mut v| {
                    v.reverse();
                    v
                })
                .collect(),
        }
    }
}
