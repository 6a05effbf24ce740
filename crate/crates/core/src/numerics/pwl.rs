//! Piecewise-linear functions over a closed rational interval.
//!
//! A [`Pwl`] stores breakpoints `b_0 < b_1 < ... < b_p`, one affine piece per
//! open gap `(b_i, b_{i+1})` and an explicit point value at every breakpoint.
//! Keeping point values separate lets the same type represent the
//! discontinuous value functions of general games; continuity is a checked
//! property, not an assumption.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use super::{ExtCost, Rational};
use crate::error::{Error, Result};

/// Which value to read at a point: the point value or a one-sided limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    At,
    Left,
    Right,
}

/// An affine piece on an open gap, described by its right-limit at the left
/// breakpoint and its slope. Infinite pieces always have slope zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Piece {
    pub start: ExtCost,
    pub slope: Rational,
}

impl Piece {
    pub fn new(start: ExtCost, slope: Rational) -> Self {
        let slope = if start.is_infinite() {
            Rational::zero()
        } else {
            slope
        };
        Piece { start, slope }
    }

    pub fn infinite() -> Self {
        Piece::new(ExtCost::Infinity, Rational::zero())
    }

    /// Value at `x` of the line through `(origin, start)`.
    fn value(&self, origin: &Rational, x: &Rational) -> ExtCost {
        self.start.plus_scaled(&self.slope, &(x - origin))
    }

    fn shifted(&self, origin: &Rational, new_origin: &Rational) -> Piece {
        Piece::new(self.value(origin, new_origin), self.slope.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pwl {
    breaks: Vec<Rational>,
    pieces: Vec<Piece>,
    points: Vec<ExtCost>,
}

/// Builds a function left to right from consecutive pieces.
#[derive(Debug)]
pub struct PwlBuilder {
    breaks: Vec<Rational>,
    pieces: Vec<Piece>,
    points: Vec<ExtCost>,
}

impl PwlBuilder {
    /// Starts at `lo` with the given point value.
    pub fn new(lo: Rational, value: ExtCost) -> Self {
        PwlBuilder {
            breaks: vec![lo],
            pieces: Vec::new(),
            points: vec![value],
        }
    }

    /// Appends the piece on `(last, right)` and the point value at `right`.
    pub fn push(&mut self, right: Rational, piece: Piece, value_at_right: ExtCost) -> Result<()> {
        let last = self.breaks.last().expect("builder starts non-empty");
        if right <= *last {
            return Err(Error::Domain(format!(
                "breakpoint {right} does not increase past {last}"
            )));
        }
        self.breaks.push(right);
        self.pieces.push(piece);
        self.points.push(value_at_right);
        Ok(())
    }

    /// Appends a continuous piece: the point value at `right` is the piece's
    /// left limit there.
    pub fn push_continuous(&mut self, right: Rational, piece: Piece) -> Result<()> {
        let last = self
            .breaks
            .last()
            .expect("builder starts non-empty")
            .clone();
        let end = piece.value(&last, &right);
        self.push(right, piece, end)
    }

    pub fn last_break(&self) -> &Rational {
        self.breaks.last().expect("builder starts non-empty")
    }

    /// Overrides the most recent point value.
    pub fn set_last_point(&mut self, value: ExtCost) {
        *self.points.last_mut().expect("builder starts non-empty") = value;
    }

    pub fn finish(self) -> Pwl {
        let mut f = Pwl {
            breaks: self.breaks,
            pieces: self.pieces,
            points: self.points,
        };
        f.canonicalize();
        f
    }
}

impl Pwl {
    /// The constant function `value` on `[lo, hi]`.
    pub fn constant(lo: Rational, hi: Rational, value: ExtCost) -> Result<Self> {
        if lo > hi {
            return Err(Error::Domain(format!("empty domain [{lo}, {hi}]")));
        }
        let mut b = PwlBuilder::new(lo.clone(), value.clone());
        if hi > lo {
            b.push_continuous(hi, Piece::new(value, Rational::zero()))?;
        }
        Ok(b.finish())
    }

    /// The affine function `value_at_lo + slope·(x − lo)` on `[lo, hi]`.
    pub fn affine(
        lo: Rational,
        hi: Rational,
        value_at_lo: ExtCost,
        slope: Rational,
    ) -> Result<Self> {
        if lo >= hi {
            return Err(Error::Domain(format!("degenerate domain [{lo}, {hi}]")));
        }
        let mut b = PwlBuilder::new(lo, value_at_lo.clone());
        b.push_continuous(hi, Piece::new(value_at_lo, slope))?;
        Ok(b.finish())
    }

    pub fn lo(&self) -> &Rational {
        &self.breaks[0]
    }

    pub fn hi(&self) -> &Rational {
        self.breaks.last().expect("non-empty breakpoints")
    }

    pub fn breaks(&self) -> &[Rational] {
        &self.breaks
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn points(&self) -> &[ExtCost] {
        &self.points
    }

    /// Breakpoints strictly inside the domain.
    pub fn interior_breaks(&self) -> &[Rational] {
        if self.breaks.len() <= 2 {
            &[]
        } else {
            &self.breaks[1..self.breaks.len() - 1]
        }
    }

    fn left_limit_at(&self, i: usize) -> ExtCost {
        self.pieces[i - 1].value(&self.breaks[i - 1], &self.breaks[i])
    }

    /// True when point values agree with both one-sided limits everywhere.
    pub fn is_continuous(&self) -> bool {
        (0..self.breaks.len()).all(|i| {
            (i == 0 || self.left_limit_at(i) == self.points[i])
                && (i == self.pieces.len() || self.pieces[i].start == self.points[i])
        })
    }

    /// Whether the point value at breakpoint `i` differs from the left limit.
    pub fn jump_from_left(&self, i: usize) -> bool {
        i > 0 && self.left_limit_at(i) != self.points[i]
    }

    /// Whether the point value at breakpoint `i` differs from the right limit.
    pub fn jump_to_right(&self, i: usize) -> bool {
        i < self.pieces.len() && self.pieces[i].start != self.points[i]
    }

    pub fn is_constant_infinity(&self) -> bool {
        self.points.iter().all(ExtCost::is_infinite)
            && self.pieces.iter().all(|p| p.start.is_infinite())
    }

    /// Locates `x`: `Ok(i)` if `x` is breakpoint `i`, `Err(i)` if `x` lies in
    /// the open gap after breakpoint `i`.
    fn locate(&self, x: &Rational) -> Result<std::result::Result<usize, usize>> {
        if x < self.lo() || x > self.hi() {
            return Err(Error::Domain(format!(
                "{x} outside [{}, {}]",
                self.lo(),
                self.hi()
            )));
        }
        Ok(match self.breaks.binary_search(x) {
            Ok(i) => Ok(i),
            Err(i) => Err(i - 1),
        })
    }

    pub fn eval(&self, x: &Rational, side: Side) -> Result<ExtCost> {
        let loc = self.locate(x)?;
        match side {
            Side::Left if x <= self.lo() => {
                return Err(Error::Domain(format!("no left limit at {x}")))
            }
            Side::Right if x >= self.hi() => {
                return Err(Error::Domain(format!("no right limit at {x}")))
            }
            _ => {}
        }
        Ok(match (loc, side) {
            (Ok(i), Side::At) => self.points[i].clone(),
            (Ok(i), Side::Left) => self.left_limit_at(i),
            (Ok(i), Side::Right) => self.pieces[i].start.clone(),
            (Err(i), _) => self.pieces[i].value(&self.breaks[i], x),
        })
    }

    /// Point value; panics outside the domain.
    pub fn at(&self, x: &Rational) -> ExtCost {
        self.eval(x, Side::At).expect("point inside domain")
    }

    /// The piece valid on a neighbourhood to the right of `x` (`x < hi`),
    /// re-based so that its `start` is the right limit at `x`.
    pub fn piece_right_of(&self, x: &Rational) -> Result<Piece> {
        if x >= self.hi() {
            return Err(Error::Domain(format!("no piece right of {x}")));
        }
        let i = match self.locate(x)? {
            Ok(i) | Err(i) => i,
        };
        Ok(self.pieces[i].shifted(&self.breaks[i], x))
    }

    /// Adds a constant (possibly infinite) to every value.
    pub fn add_const(&self, c: &ExtCost) -> Pwl {
        Pwl {
            breaks: self.breaks.clone(),
            pieces: self
                .pieces
                .iter()
                .map(|p| Piece::new(&p.start + c, p.slope.clone()))
                .collect(),
            points: self.points.iter().map(|v| v + c).collect(),
        }
        .canonical()
    }

    /// Adds the linear term `rate·x` (`rate` may be negative).
    fn add_linear(&self, rate: &Rational) -> Pwl {
        Pwl {
            breaks: self.breaks.clone(),
            pieces: self
                .pieces
                .iter()
                .zip(&self.breaks)
                .map(|(p, b)| Piece::new(p.start.plus_scaled(rate, b), &p.slope + rate))
                .collect(),
            points: self
                .points
                .iter()
                .zip(&self.breaks)
                .map(|(v, b)| v.plus_scaled(rate, b))
                .collect(),
        }
        .canonical()
    }

    fn canonical(mut self) -> Pwl {
        self.canonicalize();
        self
    }

    /// Maps the domain affinely: the result `g` on `[lo', hi']` satisfies
    /// `g(lo' + s·(x − lo)) = f(x)` with `s = (hi' − lo') / (hi − lo)`.
    pub fn rescale(&self, new_lo: &Rational, new_hi: &Rational) -> Result<Pwl> {
        if self.breaks.len() == 1 || new_lo >= new_hi {
            return Err(Error::Domain("rescale needs non-degenerate domains".into()));
        }
        let s = (new_hi - new_lo) / (self.hi() - self.lo());
        let map = |x: &Rational| new_lo + &s * (x - self.lo());
        Ok(Pwl {
            breaks: self.breaks.iter().map(map).collect(),
            pieces: self
                .pieces
                .iter()
                .map(|p| Piece::new(p.start.clone(), &p.slope / &s))
                .collect(),
            points: self.points.clone(),
        })
    }

    /// Restricts to `[lo, hi]` within the domain.
    pub fn restrict(&self, lo: &Rational, hi: &Rational) -> Result<Pwl> {
        let _ = self.locate(lo)?;
        let _ = self.locate(hi)?;
        if lo > hi {
            return Err(Error::Domain(format!("empty restriction [{lo}, {hi}]")));
        }
        let mut b = PwlBuilder::new(lo.clone(), self.at(lo));
        let mut cursor = lo.clone();
        for x in self
            .breaks
            .iter()
            .filter(|x| *x > lo && *x < hi)
            .chain([hi])
        {
            if *x == cursor {
                continue;
            }
            let piece = self.piece_right_of(&cursor)?;
            b.push(x.clone(), piece, self.at(x))?;
            cursor = x.clone();
        }
        Ok(b.finish())
    }

    /// Merges adjacent pieces that lie on one line and agree at the shared
    /// breakpoint. Afterwards representational equality is function equality.
    pub fn canonicalize(&mut self) {
        let mut i = 1;
        while i + 1 < self.breaks.len() {
            let prev = &self.pieces[i - 1];
            let next = &self.pieces[i];
            let continued = prev.value(&self.breaks[i - 1], &self.breaks[i]);
            let mergeable =
                prev.slope == next.slope && continued == next.start && continued == self.points[i];
            if mergeable {
                self.breaks.remove(i);
                self.pieces.remove(i);
                self.points.remove(i);
            } else {
                i += 1;
            }
        }
    }

    pub fn min_envelope(fs: &[Pwl]) -> Result<Pwl> {
        envelope(fs, Ordering::Less)
    }

    pub fn max_envelope(fs: &[Pwl]) -> Result<Pwl> {
        envelope(fs, Ordering::Greater)
    }

    /// Folds in the option to wait before acting.
    ///
    /// For the minimizer, `g(x) = inf { rate·(x' − x) + f(x') : x' ∈ [x, hi] }`;
    /// for the maximizer the same with `sup`.
    pub fn wait_closure(&self, rate: &Rational, minimize: bool) -> Result<Pwl> {
        if rate.is_negative() {
            return Err(Error::Validation(format!("negative rate {rate}")));
        }
        let h = self.add_linear(rate);
        let n = h.breaks.len();
        if n == 1 {
            return Ok(self.clone());
        }
        let better = |a: &ExtCost, b: &ExtCost| -> ExtCost {
            let pick_a = if minimize { a <= b } else { a >= b };
            if pick_a {
                a.clone()
            } else {
                b.clone()
            }
        };
        // Right-to-left scan. `points[i]` is the best value over [b_i, hi];
        // `tail` is the best value (possibly only approached) over (b_i, hi].
        let mut points = h.points.clone();
        let mut gaps: Vec<Vec<(Rational, Piece)>> = vec![Vec::new(); n - 1];
        for i in (0..n - 1).rev() {
            let (b0, b1) = (&h.breaks[i], &h.breaks[i + 1]);
            let piece = &h.pieces[i];
            let cap = better(&piece.value(b0, b1), &points[i + 1]);
            gaps[i] = clip_line(piece, b0, b1, &cap, minimize);
            let tail = better(&piece.start, &cap);
            points[i] = better(&h.points[i], &tail);
        }
        let mut b = PwlBuilder::new(h.breaks[0].clone(), points[0].clone());
        for (i, gap) in gaps.into_iter().enumerate() {
            let mut parts = gap.into_iter().peekable();
            while let Some((_, piece)) = parts.next() {
                match parts.peek() {
                    Some((x, next)) => b.push(x.clone(), piece, next.start.clone())?,
                    None => b.push(h.breaks[i + 1].clone(), piece, points[i + 1].clone())?,
                }
            }
        }
        Ok(b.finish().add_linear(&-rate))
    }
}

/// Splits `better(line, cap)` on `(b0, b1)` into at most two pieces, returned
/// left to right as `(left endpoint, piece based at that endpoint)`.
fn clip_line(
    line: &Piece,
    b0: &Rational,
    b1: &Rational,
    cap: &ExtCost,
    minimize: bool,
) -> Vec<(Rational, Piece)> {
    let constant = |x: &Rational| (x.clone(), Piece::new(cap.clone(), Rational::zero()));
    let keep_line = |x: &Rational| (x.clone(), line.shifted(b0, x));
    let (start, c) = match (&line.start, cap) {
        (ExtCost::Finite(s), ExtCost::Finite(c)) => (s, c),
        (ExtCost::Infinity, ExtCost::Infinity) => return vec![constant(b0)],
        (ExtCost::Infinity, _) => {
            return vec![if minimize {
                constant(b0)
            } else {
                keep_line(b0)
            }]
        }
        (_, ExtCost::Infinity) => {
            return vec![if minimize {
                keep_line(b0)
            } else {
                constant(b0)
            }]
        }
    };
    let line_wins = |x: &Rational| {
        let v = start + &line.slope * (x - b0);
        if minimize {
            v < *c
        } else {
            v > *c
        }
    };
    if line.slope.is_zero() {
        return vec![if line_wins(b0) {
            keep_line(b0)
        } else {
            constant(b0)
        }];
    }
    // Crossing point of the line with the constant cap.
    let cross = b0 + (c - start) / &line.slope;
    if cross <= *b0 || cross >= *b1 {
        let mid = (b0 + b1) / Rational::from_integer(2.into());
        return vec![if line_wins(&mid) {
            keep_line(b0)
        } else {
            constant(b0)
        }];
    }
    let before = (b0 + &cross) / Rational::from_integer(2.into());
    if line_wins(&before) {
        vec![keep_line(b0), constant(&cross)]
    } else {
        vec![constant(b0), keep_line(&cross)]
    }
}

fn envelope(fs: &[Pwl], prefer: Ordering) -> Result<Pwl> {
    let first = fs
        .first()
        .ok_or_else(|| Error::Domain("envelope of no functions".into()))?;
    if fs
        .iter()
        .any(|f| f.lo() != first.lo() || f.hi() != first.hi())
    {
        return Err(Error::Domain("envelope over mismatched domains".into()));
    }
    let pick = |a: ExtCost, b: ExtCost| if a.cmp(&b) == prefer { a } else { b };
    let mut xs: Vec<Rational> = fs.iter().flat_map(|f| f.breaks.iter().cloned()).collect();
    xs.sort();
    xs.dedup();
    let mut all = xs.clone();
    for w in xs.windows(2) {
        let (b0, b1) = (&w[0], &w[1]);
        let lines: Vec<Piece> = fs
            .iter()
            .map(|f| f.piece_right_of(b0))
            .collect::<Result<_>>()?;
        for (i, p) in lines.iter().enumerate() {
            for q in &lines[i + 1..] {
                if let Some(x) = crossing(p, q, b0) {
                    if x > *b0 && x < *b1 {
                        all.push(x);
                    }
                }
            }
        }
    }
    all.sort();
    all.dedup();
    let point = |x: &Rational| {
        fs.iter()
            .map(|f| f.at(x))
            .reduce(&pick)
            .expect("non-empty function list")
    };
    let mut b = PwlBuilder::new(all[0].clone(), point(&all[0]));
    for w in all.windows(2) {
        let (c0, c1) = (&w[0], &w[1]);
        let mid = (c0 + c1) / Rational::from_integer(2.into());
        let best = fs
            .iter()
            .map(|f| (f.eval(&mid, Side::At).expect("inside domain"), f))
            .reduce(|a, b| if b.0.cmp(&a.0) == prefer { b } else { a })
            .expect("non-empty function list")
            .1;
        b.push(c1.clone(), best.piece_right_of(c0)?, point(c1))?;
    }
    Ok(b.finish())
}

/// Where two pieces, both based at `origin`, cross (if they do so at one point).
fn crossing(p: &Piece, q: &Piece, origin: &Rational) -> Option<Rational> {
    match (&p.start, &q.start) {
        (ExtCost::Finite(a), ExtCost::Finite(b)) if p.slope != q.slope => {
            Some(origin + (b - a) / (&p.slope - &q.slope))
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{int, rat};
    use proptest::prelude::*;

    fn fin(p: i64, q: i64) -> ExtCost {
        ExtCost::Finite(rat(p, q))
    }

    fn line(v0: ExtCost, slope: i64) -> Pwl {
        Pwl::affine(int(0), int(1), v0, int(slope)).unwrap()
    }

    #[test]
    fn eval_piecewise() {
        let mut b = PwlBuilder::new(int(0), fin(0, 1));
        b.push_continuous(rat(1, 2), Piece::new(fin(0, 1), int(0)))
            .unwrap();
        b.push_continuous(int(1), Piece::new(fin(1, 1), int(-2)))
            .unwrap();
        b.set_last_point(fin(0, 1));
        let f = b.finish();
        assert_eq!(f.eval(&rat(3, 4), Side::At).unwrap(), fin(1, 2));
        assert_eq!(f.eval(&rat(1, 2), Side::Right).unwrap(), fin(1, 1));
        assert_eq!(f.eval(&rat(1, 2), Side::Left).unwrap(), fin(0, 1));
        assert!(!f.is_continuous());
        assert!(f.eval(&int(2), Side::At).is_err());
        assert!(f.eval(&int(0), Side::Left).is_err());
        assert!(f.eval(&int(1), Side::Right).is_err());
    }

    #[test]
    fn constant_infinity_everywhere() {
        let f = Pwl::constant(int(0), int(1), ExtCost::Infinity).unwrap();
        assert!(f.is_constant_infinity());
        assert_eq!(f.at(&rat(1, 3)), ExtCost::Infinity);
    }

    #[test]
    fn min_envelope_finds_crossing() {
        let f = line(fin(2, 1), -2);
        let g = line(fin(3, 2), -1);
        let m = Pwl::min_envelope(&[f.clone(), g.clone()]).unwrap();
        assert_eq!(m.breaks(), &[int(0), rat(1, 2), int(1)]);
        assert_eq!(m.pieces()[0], Piece::new(fin(3, 2), int(-1)));
        assert_eq!(m.pieces()[1], Piece::new(fin(1, 1), int(-2)));
        assert!(m.is_continuous());
        let inf = Pwl::constant(int(0), int(1), ExtCost::Infinity).unwrap();
        assert_eq!(Pwl::min_envelope(&[f.clone(), inf]).unwrap(), f);
        let zero = Pwl::constant(int(0), int(1), ExtCost::zero()).unwrap();
        let one_minus = line(fin(1, 1), -1);
        assert_eq!(
            Pwl::max_envelope(&[one_minus.clone(), zero]).unwrap(),
            one_minus
        );
    }

    #[test]
    fn mismatched_domains_rejected() {
        let f = line(fin(1, 1), 0);
        let g = Pwl::constant(int(0), int(2), fin(1, 1)).unwrap();
        assert!(Pwl::min_envelope(&[f, g]).is_err());
    }

    #[test]
    fn wait_closure_examples() {
        let half = Pwl::constant(int(0), int(1), fin(1, 2)).unwrap();
        assert_eq!(half.wait_closure(&int(1), true).unwrap(), half);

        let one_minus = line(fin(1, 1), -1);
        let zero = Pwl::constant(int(0), int(1), ExtCost::zero()).unwrap();
        assert_eq!(one_minus.wait_closure(&int(0), true).unwrap(), zero);
        assert_eq!(zero.wait_closure(&int(1), false).unwrap(), one_minus);
        assert!(zero.wait_closure(&int(-1), true).is_err());
    }

    #[test]
    fn wait_closure_respects_point_values() {
        // Cheap only exactly at 1: a minimizer with free waiting reaches it.
        let mut b = PwlBuilder::new(int(0), fin(5, 1));
        b.push(int(1), Piece::new(fin(5, 1), int(0)), fin(1, 1))
            .unwrap();
        let f = b.finish();
        let g = f.wait_closure(&int(0), true).unwrap();
        assert_eq!(g, Pwl::constant(int(0), int(1), fin(1, 1)).unwrap());
        // A maximizer facing infinity later gets infinity now.
        let mut b = PwlBuilder::new(int(0), fin(0, 1));
        b.push_continuous(rat(1, 2), Piece::new(fin(0, 1), int(0)))
            .unwrap();
        b.push_continuous(int(1), Piece::infinite()).unwrap();
        let f = b.finish();
        let g = f.wait_closure(&int(1), false).unwrap();
        assert!(g.is_constant_infinity());
        // ...while a minimizer keeps the finite part.
        let g = f.wait_closure(&int(1), true).unwrap();
        assert_eq!(g.at(&rat(1, 4)), ExtCost::zero());
        assert_eq!(g.at(&rat(3, 4)), ExtCost::Infinity);
    }

    #[test]
    fn rescale_and_restrict() {
        let f = line(fin(1, 1), -1);
        let g = f.rescale(&int(2), &int(4)).unwrap();
        assert_eq!(g.at(&int(3)), fin(1, 2));
        assert_eq!(g.pieces()[0].slope, rat(-1, 2));
        let h = f.restrict(&rat(1, 4), &rat(1, 2)).unwrap();
        assert_eq!(h.at(&rat(1, 4)), fin(3, 4));
        assert_eq!(h.breaks().len(), 2);
    }

    #[test]
    fn canonical_form_merges_collinear_pieces() {
        let mut b = PwlBuilder::new(int(0), fin(1, 1));
        b.push_continuous(rat(1, 3), Piece::new(fin(1, 1), int(-1)))
            .unwrap();
        b.push_continuous(int(1), Piece::new(fin(2, 3), int(-1)))
            .unwrap();
        assert_eq!(b.finish(), line(fin(1, 1), -1));
    }

    fn arb_pwl() -> impl Strategy<Value = Pwl> {
        let piece = (prop::option::weighted(0.85, (0i64..8, 1i64..4)), -4i64..5);
        (
            prop::collection::btree_set(1i64..12, 0..4),
            prop::collection::vec(piece, 5),
        )
            .prop_map(|(cuts, pieces)| {
                let mut xs: Vec<Rational> = cuts.into_iter().map(|c| rat(c, 12)).collect();
                xs.push(int(1));
                let mut first = true;
                let mut b = PwlBuilder::new(int(0), ExtCost::zero());
                for (x, (start, slope)) in xs.into_iter().zip(pieces) {
                    let start = match start {
                        Some((p, q)) => fin(p, q),
                        None => ExtCost::Infinity,
                    };
                    if first {
                        b.set_last_point(start.clone());
                        first = false;
                    }
                    b.push_continuous(x, Piece::new(start, int(slope))).unwrap();
                }
                b.finish()
            })
    }

    fn samples() -> Vec<Rational> {
        (0..=1000).map(|i| rat(i, 1000)).collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn min_envelope_matches_pointwise(fs in prop::collection::vec(arb_pwl(), 1..4)) {
            let m = Pwl::min_envelope(&fs).unwrap();
            for x in samples() {
                let expect = fs.iter().map(|f| f.at(&x)).min().unwrap();
                prop_assert_eq!(m.at(&x), expect);
            }
        }

        #[test]
        fn max_envelope_matches_pointwise(fs in prop::collection::vec(arb_pwl(), 1..4)) {
            let m = Pwl::max_envelope(&fs).unwrap();
            for x in samples().into_iter().step_by(7) {
                let expect = fs.iter().map(|f| f.at(&x)).max().unwrap();
                prop_assert_eq!(m.at(&x), expect);
            }
        }

        #[test]
        fn zero_rate_wait_is_running_extremum(f in arb_pwl()) {
            // Grid containing every breakpoint, so extrema over the tail are
            // attained on it.
            let xs: Vec<Rational> = (0..=120).map(|i| rat(i, 120)).collect();
            let gmin = f.wait_closure(&int(0), true).unwrap();
            let gmax = f.wait_closure(&int(0), false).unwrap();
            for (i, x) in xs.iter().enumerate() {
                // Infima may only be approached at a jump, so one-sided limits
                // count as candidates too.
                let mut cands = Vec::new();
                for (k, y) in xs[i..].iter().enumerate() {
                    cands.push(f.at(y));
                    if k > 0 {
                        cands.push(f.eval(y, Side::Left).unwrap());
                    }
                    if y < f.hi() {
                        cands.push(f.eval(y, Side::Right).unwrap());
                    }
                }
                prop_assert_eq!(gmin.at(x), cands.iter().min().unwrap().clone());
                prop_assert_eq!(gmax.at(x), cands.iter().max().unwrap().clone());
            }
        }

        #[test]
        fn wait_closure_dominates_and_is_monotone(f in arb_pwl(), rate in 0i64..4) {
            let r = int(rate);
            let g = f.wait_closure(&r, true).unwrap();
            let h = f.wait_closure(&r, false).unwrap();
            for x in samples().into_iter().step_by(37) {
                prop_assert!(g.at(&x) <= f.at(&x));
                prop_assert!(h.at(&x) >= f.at(&x));
                // Waiting until any later grid point is an option.
                for y in samples().into_iter().step_by(111).filter(|y| *y >= x) {
                    let via = f.at(&y).plus_scaled(&r, &(&y - &x));
                    prop_assert!(g.at(&x) <= via);
                    prop_assert!(h.at(&x) >= via);
                }
            }
        }
    }
}
