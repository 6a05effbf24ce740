//! Small hand-checked games with known answers.
//!
//! Expected values were derived by hand (backward induction over the few
//! possible plays) and are cross-checked against value iteration in tests.

use crate::numerics::{int, rat, ExtCost, Piece, Pwl, PwlBuilder, Rational};
use crate::priced_game::{Action, Dest, Player, PotentialMatrix};
use crate::ptg::{Ptg, PtgAction};
use crate::sptg::{Interval, Sptg};

fn exit(from: usize, to: Option<usize>, cost: Rational) -> Action<ExtCost> {
    Action {
        from,
        to: to.map_or(Dest::Bottom, Dest::State),
        cost: ExtCost::Finite(cost),
    }
}

/// Three states: a minimizer `k1` (rate 5) choosing between two maximizers,
/// `k2a` (rate 2, free exit) reached for free and `k2b` (rate 1, free exit)
/// reached at cost 1/2.
///
/// The maximizers wait until time 1, so `v_k2a = 2 − 2x` and `v_k2b = 1 − x`;
/// `k1` moves immediately and pays `min(2 − 2x, 3/2 − x)`, switching at 1/2.
pub fn fixture_a() -> Sptg {
    Sptg::from_parts(
        vec![Player::Min, Player::Max, Player::Max],
        vec![int(5), int(2), int(1)],
        vec![
            exit(0, Some(1), int(0)),
            exit(0, Some(2), rat(1, 2)),
            exit(1, None, int(0)),
            exit(2, None, int(0)),
        ],
    )
    .expect("fixture is well formed")
}

/// Expected values of [`fixture_a`], in state order.
pub fn fixture_a_values() -> Vec<Pwl> {
    let mut k1 = PwlBuilder::new(int(0), ExtCost::Finite(rat(3, 2)));
    k1.push_continuous(rat(1, 2), Piece::new(ExtCost::Finite(rat(3, 2)), int(-1)))
        .expect("increasing");
    k1.push_continuous(int(1), Piece::new(ExtCost::from_int(1), int(-2)))
        .expect("increasing");
    vec![
        k1.finish(),
        Pwl::affine(int(0), int(1), ExtCost::from_int(2), int(-2)).expect("non-degenerate"),
        Pwl::affine(int(0), int(1), ExtCost::from_int(1), int(-1)).expect("non-degenerate"),
    ]
}

/// Minimizer state 1 (rate 1) moves for free to maximizer state 2 (rate 0) at
/// any time in `[0, 1]`; state 2 can only exit at time 0 (cost 1) or at time 1
/// (free).
///
/// State 2 is worth 1 at time 0 and 0 afterwards. State 1 is worth 0
/// everywhere, but at time 0 only as a limit: it must wait a little first.
pub fn fig3() -> Ptg {
    Ptg::new(
        vec![Player::Min, Player::Max],
        vec![int(1), int(0)],
        vec![
            PtgAction {
                from: 0,
                to: Dest::State(1),
                cost: ExtCost::zero(),
                interval: Interval::closed(int(0), int(1)),
                reset: false,
            },
            PtgAction {
                from: 1,
                to: Dest::Bottom,
                cost: ExtCost::from_int(1),
                interval: Interval::point(int(0)),
                reset: false,
            },
            PtgAction {
                from: 1,
                to: Dest::Bottom,
                cost: ExtCost::zero(),
                interval: Interval::point(int(1)),
                reset: false,
            },
        ],
    )
    .expect("fixture is well formed")
}

/// A maximizer (rate 1) that can reset itself for free at any time, or exit
/// for free at time 1. Resetting forever keeps the play going: value ∞.
pub fn reset_loop() -> Ptg {
    Ptg::new(
        vec![Player::Max],
        vec![int(1)],
        vec![
            PtgAction {
                from: 0,
                to: Dest::State(0),
                cost: ExtCost::zero(),
                interval: Interval::closed(int(0), int(1)),
                reset: true,
            },
            PtgAction {
                from: 0,
                to: Dest::Bottom,
                cost: ExtCost::zero(),
                interval: Interval::point(int(1)),
                reset: false,
            },
        ],
    )
    .expect("fixture is well formed")
}

/// Four potential matrices of a reference strategy-iteration run, in the
/// order they were visited. Each one is strictly below its predecessor.
pub fn potential_chain() -> [PotentialMatrix; 4] {
    let m = |rows: &[[i64; 4]]| {
        PotentialMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).expect("rectangular")
    };
    [
        m(&[
            [0, 0, 0, 0],
            [-1, 0, 0, 0],
            [-1, 0, 0, 0],
            [1, 0, 0, 0],
            [0, 0, 0, 0],
        ]),
        m(&[[-1, 0, -1, 1], [0, 0, -1, 0], [0, 0, 1, 0], [0; 4], [0; 4]]),
        m(&[[-1, 1, 0, 1], [-1, -1, 0, 0], [0; 4], [0; 4], [0; 4]]),
        m(&[[-1, 0, -1, 1], [-1, 0, 0, 1], [0; 4], [0; 4], [0; 4]]),
    ]
}
