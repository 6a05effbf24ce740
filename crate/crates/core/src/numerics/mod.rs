//! Exact arithmetic foundations.
//!
//! Everything in the solver is computed over arbitrary-precision rationals.
//! Costs live in [`ExtCost`] (non-negative rationals plus infinity), and the
//! sweep works in [`EpsCost`], the lexicographically ordered domain `a + b·ε`
//! where `ε` is an infinitesimal.

mod pwl;

pub use pwl::{Piece, Pwl, PwlBuilder, Side};

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational in canonical form.
pub type Rational = num_rational::BigRational;

/// Shorthand for building `p/q`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Shorthand for an integer-valued rational.
pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Parses `"p/q"`, `"p"` or a decimal-free integer literal. Both ASCII `-`
/// and U+2212 are accepted as a minus sign so that negative inputs are
/// reported as negative instead of as garbage.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let trimmed = text.trim();
    let normalized = trimmed.replace('\u{2212}', "-");
    if normalized.is_empty() {
        return Err(Error::Parse(format!("empty number {text:?}")));
    }
    let value = Rational::from_str(&normalized)
        .map_err(|_| Error::Parse(format!("not an exact rational: {text:?}")))?;
    Ok(value)
}

/// Inverse of [`parse_rational`]: `"p/q"`, or `"p"` for integers.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

/// Approximate decimal rendering, only used for non-verified output.
pub fn approx_f64(value: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    value.to_f64().unwrap_or(f64::NAN)
}

/// A non-negative exact cost or infinity.
///
/// The variant order matters: the derived `Ord` puts every finite value below
/// `Infinity`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtCost {
    Finite(Rational),
    Infinity,
}

impl ExtCost {
    pub fn zero() -> Self {
        ExtCost::Finite(Rational::zero())
    }

    pub fn from_int(v: i64) -> Self {
        ExtCost::Finite(int(v))
    }

    /// Validated constructor for costs coming from game data.
    pub fn non_negative(value: Rational) -> Result<Self> {
        if value.is_negative() {
            return Err(Error::Validation(format!("negative cost {value}")));
        }
        Ok(ExtCost::Finite(value))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtCost::Infinity)
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtCost::Finite(v) => Some(v),
            ExtCost::Infinity => None,
        }
    }

    /// `self + t·rate`, absorbing infinity.
    pub fn plus_scaled(&self, rate: &Rational, t: &Rational) -> Self {
        match self {
            ExtCost::Finite(v) => ExtCost::Finite(v + rate * t),
            ExtCost::Infinity => ExtCost::Infinity,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        if text.trim() == "inf" {
            return Ok(ExtCost::Infinity);
        }
        Ok(ExtCost::Finite(parse_rational(text)?))
    }
}

impl From<Rational> for ExtCost {
    fn from(value: Rational) -> Self {
        ExtCost::Finite(value)
    }
}

impl Add for ExtCost {
    type Output = ExtCost;
    fn add(self, rhs: ExtCost) -> ExtCost {
        match (self, rhs) {
            (ExtCost::Finite(a), ExtCost::Finite(b)) => ExtCost::Finite(a + b),
            _ => ExtCost::Infinity,
        }
    }
}

impl<'a> Add<&'a ExtCost> for &'a ExtCost {
    type Output = ExtCost;
    fn add(self, rhs: &ExtCost) -> ExtCost {
        match (self, rhs) {
            (ExtCost::Finite(a), ExtCost::Finite(b)) => ExtCost::Finite(a + b),
            _ => ExtCost::Infinity,
        }
    }
}

impl fmt::Display for ExtCost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtCost::Finite(v) => write!(f, "{v}"),
            ExtCost::Infinity => f.write_str("inf"),
        }
    }
}

/// `base + eps·ε`, compared lexicographically.
///
/// When `base` is infinite the `eps` component is forced to zero, so all
/// infinite values compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EpsCost {
    base: ExtCost,
    eps: Rational,
}

impl EpsCost {
    pub fn new(base: ExtCost, eps: Rational) -> Self {
        let eps = if base.is_infinite() {
            Rational::zero()
        } else {
            eps
        };
        EpsCost { base, eps }
    }

    pub fn plain(base: ExtCost) -> Self {
        EpsCost::new(base, Rational::zero())
    }

    pub fn base(&self) -> &ExtCost {
        &self.base
    }

    pub fn eps(&self) -> &Rational {
        &self.eps
    }
}

impl PartialOrd for EpsCost {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for EpsCost {
    fn cmp(&self, other: &Self) -> Ordering {
        self.base
            .cmp(&other.base)
            .then_with(|| self.eps.cmp(&other.eps))
    }
}

impl fmt::Display for EpsCost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.eps.is_zero() {
            write!(f, "{}", self.base)
        } else {
            write!(f, "{} + {}ε", self.base, self.eps)
        }
    }
}

/// The ordered cost domain a priced game is solved over.
///
/// An ordered commutative monoid with an absorbing top element; subtraction is
/// never needed.
pub trait CostDomain: Clone + Ord + fmt::Debug + fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn infinity() -> Self;
    fn is_infinite(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
}

impl CostDomain for ExtCost {
    fn zero() -> Self {
        ExtCost::zero()
    }
    fn infinity() -> Self {
        ExtCost::Infinity
    }
    fn is_infinite(&self) -> bool {
        ExtCost::is_infinite(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
}

impl CostDomain for EpsCost {
    fn zero() -> Self {
        EpsCost::plain(ExtCost::zero())
    }
    fn infinity() -> Self {
        EpsCost::plain(ExtCost::Infinity)
    }
    fn is_infinite(&self) -> bool {
        self.base.is_infinite()
    }
    fn plus(&self, other: &Self) -> Self {
        EpsCost::new(&self.base + &other.base, &self.eps + &other.eps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rational_round_trip() {
        for text in ["0", "3/2", "-7/4", "12"] {
            let r = parse_rational(text).unwrap();
            assert_eq!(format_rational(&r), text);
        }
        assert_eq!(parse_rational("4/6").unwrap(), rat(2, 3));
        assert_eq!(parse_rational("\u{2212}1").unwrap(), int(-1));
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn infinity_absorbs_and_dominates() {
        let a = ExtCost::from_int(3);
        assert_eq!(a.clone() + ExtCost::Infinity, ExtCost::Infinity);
        assert!(ExtCost::Infinity > a);
        assert_eq!(ExtCost::parse("inf").unwrap(), ExtCost::Infinity);
        assert!(ExtCost::non_negative(int(-1)).is_err());
    }

    #[test]
    fn eps_cost_normalizes_infinity() {
        let x = EpsCost::new(ExtCost::Infinity, int(5));
        let y = EpsCost::new(ExtCost::Infinity, int(0));
        assert_eq!(x, y);
        assert_eq!(x.eps(), &int(0));
    }

    #[test]
    fn eps_cost_is_lexicographic() {
        let a = EpsCost::new(ExtCost::from_int(1), int(7));
        let b = EpsCost::new(ExtCost::from_int(2), int(0));
        let c = EpsCost::new(ExtCost::from_int(1), int(8));
        assert!(a < b);
        assert!(a < c);
        assert!(c < b);
        let sum = a.plus(&c);
        assert_eq!(sum, EpsCost::new(ExtCost::from_int(2), int(15)));
    }

    fn arb_eps() -> impl Strategy<Value = EpsCost> {
        (prop::option::of((0i64..6, 1i64..4)), -3i64..4).prop_map(|(base, eps)| match base {
            Some((p, q)) => EpsCost::new(ExtCost::Finite(rat(p, q)), int(eps)),
            None => EpsCost::new(ExtCost::Infinity, int(eps)),
        })
    }

    proptest! {
        #[test]
        fn eps_order_is_total_and_sort_is_lexicographic(mut xs in prop::collection::vec(arb_eps(), 0..12)) {
            xs.sort();
            for w in xs.windows(2) {
                let (a, b) = (&w[0], &w[1]);
                prop_assert!(a.base() < b.base() || (a.base() == b.base() && a.eps() <= b.eps()));
            }
        }

        #[test]
        fn eps_addition_is_monotone(a in arb_eps(), b in arb_eps(), c in arb_eps()) {
            if a <= b {
                prop_assert!(a.plus(&c) <= b.plus(&c));
            }
        }
    }
}
