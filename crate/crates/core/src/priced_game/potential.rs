//! The potential matrix used to bound the number of sweep events.
//!
//! Row `ℓ` (1-based) and column `r` count the maximizer states minus the
//! minimizer states whose play reaches `⊥` in exactly `ℓ` steps through an
//! exit of the `r`-th smallest rate.

use super::{evaluate_profile, Player, PricedGame};
use crate::error::{Error, Result};
use crate::numerics::{EpsCost, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PotentialMatrix {
    /// `rows[ℓ - 1][r]`.
    rows: Vec<Vec<i64>>,
}

impl PotentialMatrix {
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let width = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != width) {
            return Err(Error::Validation("ragged potential matrix".into()));
        }
        Ok(PotentialMatrix { rows })
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn entry(&self, length: usize, rate_rank: usize) -> i64 {
        self.rows[length - 1][rate_rank]
    }

    fn shape(&self) -> (usize, usize) {
        (self.rows.len(), self.rows.first().map_or(0, Vec::len))
    }
}

/// Builds the potential of `sigma` in an ε-game, where the ε-coefficient of
/// an exit's cost is the waiting rate it stands for. `rates` is the ascending
/// list of distinct rates, including `0`.
pub fn potential_matrix(
    game: &PricedGame<EpsCost>,
    sigma: &[usize],
    rates: &[Rational],
) -> Result<PotentialMatrix> {
    let n = game.num_states();
    let mut rows = vec![vec![0i64; rates.len()]; n];
    let eval = evaluate_profile(game, sigma);
    for k in 0..n {
        let (Some(exit), super::Hops::Finite(len)) = (eval.exits[k], eval.values[k].hops) else {
            continue;
        };
        let rate = game.action(exit).cost.eps();
        let rank = rates
            .binary_search(rate)
            .map_err(|_| Error::Validation(format!("rate {rate} missing from the rate ladder")))?;
        rows[len - 1][rank] += match game.owner(k) {
            Player::Max => 1,
            Player::Min => -1,
        };
    }
    Ok(PotentialMatrix { rows })
}

/// `p ≺ q`: scanning columns by ascending rate and, inside a column, rows by
/// ascending length, the first differing entry is smaller in `p`.
pub fn potential_less(p: &PotentialMatrix, q: &PotentialMatrix) -> Result<bool> {
    if p.shape() != q.shape() {
        return Err(Error::Validation(format!(
            "potential shapes differ: {:?} vs {:?}",
            p.shape(),
            q.shape()
        )));
    }
    let (rows, cols) = p.shape();
    for c in 0..cols {
        for r in 0..rows {
            let (a, b) = (p.rows[r][c], q.rows[r][c]);
            if a != b {
                return Ok(a < b);
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{int, ExtCost};
    use crate::priced_game::{Action, Dest};

    fn m(rows: &[[i64; 4]]) -> PotentialMatrix {
        PotentialMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn reference_chain_decreases() {
        let [p1, p2, p3, p4] = crate::oracle::fixtures::potential_chain();
        assert!(potential_less(&p4, &p3).unwrap());
        assert!(potential_less(&p3, &p2).unwrap());
        assert!(potential_less(&p2, &p1).unwrap());
        assert!(!potential_less(&p1, &p2).unwrap());
        assert!(!potential_less(&p1, &p1).unwrap());
    }

    #[test]
    fn last_entry_decides_when_rest_agree() {
        let mut a = m(&[[0; 4], [0; 4]]);
        let b = a.clone();
        a.rows[1][3] = -1;
        assert!(potential_less(&a, &b).unwrap());
        assert!(!potential_less(&b, &a).unwrap());
        let c = m(&[[0; 4]]);
        assert!(potential_less(&a, &c).is_err());
    }

    fn eps_act(from: usize, to: Option<usize>, base: i64, eps: i64) -> Action<EpsCost> {
        Action {
            from,
            to: to.map_or(Dest::Bottom, Dest::State),
            cost: EpsCost::new(ExtCost::from_int(base), int(eps)),
        }
    }

    #[test]
    fn counts_states_by_length_and_rate() {
        let g = PricedGame::new(
            vec![Player::Max, Player::Max, Player::Min],
            vec![
                eps_act(0, None, 0, 1),
                eps_act(1, None, 0, 1),
                eps_act(2, Some(0), 0, 0),
            ],
        )
        .unwrap();
        let rates = [int(0), int(1)];
        let p = potential_matrix(&g, &[0, 1, 2], &rates).unwrap();
        assert_eq!(p.rows(), &[vec![0, 2], vec![0, -1], vec![0, 0]]);
        assert_eq!(p.entry(1, 1), 2);

        let cyc = PricedGame::new(
            vec![Player::Max, Player::Min],
            vec![eps_act(0, Some(1), 0, 0), eps_act(1, Some(0), 0, 0)],
        )
        .unwrap();
        let p = potential_matrix(&cyc, &[0, 1], &rates).unwrap();
        assert!(p.rows().iter().flatten().all(|&x| x == 0));
    }
}
