//! Parameterized game families with known event-point counts.

use crate::numerics::{int, rat, ExtCost, Rational};
use crate::priced_game::{Action, Dest, Player};
use crate::sptg::Sptg;

/// A maximizer root (rate 0) choosing among `k` maximizers, branch `i`
/// having rate `i` and a single exit of cost `Σ_{m=i}^{k-1} (m+1)/(k+1)`.
///
/// Branch `i` is worth `c_i + i·(1 − x)`; consecutive branches cross at
/// `x = 1 − (i+1)/(k+1)`, so the root's value has `k − 1` event points.
/// Every state belongs to the maximizer.
pub fn staircase(k: usize) -> Sptg {
    assert!(k >= 1, "need at least one branch");
    let kk = k as i64;
    let cost = |i: i64| -> Rational { (i..kk).map(|m| rat(m + 1, kk + 1)).sum() };
    let mut owners = vec![Player::Max];
    let mut rates = vec![int(0)];
    let mut actions = Vec::new();
    for i in 0..kk {
        let s = i as usize + 1;
        owners.push(Player::Max);
        rates.push(int(i));
        actions.push(Action {
            from: 0,
            to: Dest::State(s),
            cost: ExtCost::zero(),
        });
        actions.push(Action {
            from: s,
            to: Dest::Bottom,
            cost: ExtCost::Finite(cost(i)),
        });
    }
    Sptg::from_parts(owners, rates, actions).expect("family members are valid")
}
