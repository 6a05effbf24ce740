//! The game description format.
//!
//! ```json
//! {
//!   "format": 1,
//!   "kind": "sptg",
//!   "states": [{"id": "k1", "owner": 1, "rate": 5}],
//!   "actions": [{"id": "a1", "from": "k1", "to": "bot", "cost": "1/2"}]
//! }
//! ```
//!
//! `kind` is `priced`, `sptg` or `ptg`. Owner 1 minimizes, owner 2
//! maximizes. `to` is a state id or `"bot"` for the terminal. Numbers are
//! integers or strings holding `p/q`; costs may also be `"inf"`. Rates are
//! required for `sptg` and `ptg` and absent for `priced`. Only `ptg` actions
//! carry an `interval` (`lo`, `hi`, optional `lo_closed`/`hi_closed`, both
//! defaulting to `true`) and an optional `reset` flag.

use std::collections::HashMap;
use std::fmt;

use num_traits::Signed;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Diagnostic, DiagnosticCode};
use crate::numerics::{format_rational, parse_rational, ExtCost, Rational};
use crate::priced_game::{Action, Dest, Player, PricedGame};
use crate::ptg::{Ptg, PtgAction};
use crate::sptg::{Interval, Sptg};

pub const FORMAT_VERSION: u32 = 1;

/// Reserved name of the terminal state.
const BOTTOM: &str = "bot";

/// A number or id as written: JSON strings and integers are both accepted.
/// Decimals are kept as text and rejected during validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Number(pub String);

impl Number {
    pub fn of(value: &Rational) -> Self {
        Number(format_rational(value))
    }

    pub fn of_cost(value: &ExtCost) -> Self {
        match value {
            ExtCost::Finite(v) => Number::of(v),
            ExtCost::Infinity => Number("inf".into()),
        }
    }
}

impl Serialize for Number {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Number {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct Scalar;
        impl Visitor<'_> for Scalar {
            type Value = Number;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a string or an integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Number, E> {
                Ok(Number(v.to_owned()))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Number, E> {
                Ok(Number(v.to_string()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Number, E> {
                Ok(Number(v.to_string()))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Number, E> {
                Ok(Number(v.to_string()))
            }
        }
        d.deserialize_any(Scalar)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GameKind {
    Priced,
    Sptg,
    Ptg,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameDocument {
    pub format: u32,
    pub kind: GameKind,
    pub states: Vec<StateDoc>,
    pub actions: Vec<ActionDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateDoc {
    pub id: Number,
    pub owner: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rate: Option<Number>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionDoc {
    pub id: Number,
    pub from: Number,
    pub to: Number,
    pub cost: Number,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<IntervalDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reset: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntervalDoc {
    pub lo: Number,
    pub hi: Number,
    #[serde(default = "yes")]
    pub lo_closed: bool,
    #[serde(default = "yes")]
    pub hi_closed: bool,
}

fn yes() -> bool {
    true
}

impl IntervalDoc {
    pub fn of(iv: &Interval) -> Self {
        IntervalDoc {
            lo: Number::of(&iv.lo),
            hi: Number::of(&iv.hi),
            lo_closed: iv.lo_closed,
            hi_closed: iv.hi_closed,
        }
    }
}

/// A validated game of any kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LoadedGame {
    Priced(PricedGame<ExtCost>),
    Sptg(Sptg),
    Ptg(Ptg),
}

impl LoadedGame {
    pub fn kind(&self) -> GameKind {
        match self {
            LoadedGame::Priced(_) => GameKind::Priced,
            LoadedGame::Sptg(_) => GameKind::Sptg,
            LoadedGame::Ptg(_) => GameKind::Ptg,
        }
    }

    pub fn num_states(&self) -> usize {
        match self {
            LoadedGame::Priced(g) => g.num_states(),
            LoadedGame::Sptg(g) => g.num_states(),
            LoadedGame::Ptg(g) => g.num_states(),
        }
    }

    pub fn num_actions(&self) -> usize {
        match self {
            LoadedGame::Priced(g) => g.num_actions(),
            LoadedGame::Sptg(g) => g.game().num_actions(),
            LoadedGame::Ptg(g) => g.actions().len(),
        }
    }
}

/// User-facing ids of states and actions, by index.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Names {
    pub states: Vec<String>,
    pub actions: Vec<String>,
}

impl Names {
    /// `s0, s1, …` and `a0, a1, …`.
    pub fn generic(states: usize, actions: usize) -> Self {
        Names {
            states: (0..states).map(|k| format!("s{k}")).collect(),
            actions: (0..actions).map(|j| format!("a{j}")).collect(),
        }
    }

    pub fn dest(&self, d: Dest) -> &str {
        match d {
            Dest::Bottom => BOTTOM,
            Dest::State(k) => &self.states[k],
        }
    }
}

/// Parses and validates a game description.
pub fn parse_game(text: &str) -> Result<(LoadedGame, Names), Diagnostic> {
    GameDocument::parse(text)?.to_game()
}

impl GameDocument {
    /// Parses the JSON structure only.
    pub fn parse(text: &str) -> Result<Self, Diagnostic> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let doc: GameDocument = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            let message = inner.to_string();
            let code = match inner.classify() {
                serde_json::error::Category::Data if message.starts_with("unknown field") => {
                    DiagnosticCode::UnknownField
                }
                serde_json::error::Category::Data => DiagnosticCode::Schema,
                _ => DiagnosticCode::Syntax,
            };
            let location = if path == "." || code == DiagnosticCode::Syntax {
                format!("line {}, column {}", inner.line(), inner.column())
            } else {
                format!("{path} (line {}, column {})", inner.line(), inner.column())
            };
            Diagnostic::new(code, location, message)
        })?;
        Ok(doc)
    }

    /// Checks ids, references, numbers and kind-specific fields, then builds
    /// the game.
    pub fn to_game(&self) -> Result<(LoadedGame, Names), Diagnostic> {
        use DiagnosticCode as C;
        if self.format != FORMAT_VERSION {
            return Err(Diagnostic::new(
                C::UnsupportedFormat,
                "format",
                format!(
                    "format {} is not supported (expected {FORMAT_VERSION})",
                    self.format
                ),
            ));
        }
        let timed = self.kind != GameKind::Priced;
        let mut state_ids = HashMap::new();
        let mut owners = Vec::new();
        let mut rates = Vec::new();
        for (i, s) in self.states.iter().enumerate() {
            let at = |field: &str| format!("states[{i}].{field}");
            if s.id.0 == BOTTOM {
                return Err(Diagnostic::new(
                    C::DuplicateId,
                    at("id"),
                    "\"bot\" is reserved for the terminal",
                ));
            }
            if state_ids.insert(s.id.0.clone(), i).is_some() {
                return Err(Diagnostic::new(
                    C::DuplicateId,
                    at("id"),
                    format!("duplicate state id {:?}", s.id.0),
                ));
            }
            owners.push(match s.owner {
                1 => Player::Min,
                2 => Player::Max,
                o => {
                    return Err(Diagnostic::new(
                        C::BadOwner,
                        at("owner"),
                        format!("owner must be 1 or 2, not {o}"),
                    ))
                }
            });
            match (&s.rate, timed) {
                (Some(r), true) => {
                    let r = number(&r.0, &at("rate"))?;
                    if r.is_negative() {
                        return Err(Diagnostic::new(
                            C::NegativeRate,
                            at("rate"),
                            format!("negative rate {r}"),
                        ));
                    }
                    rates.push(r);
                }
                (None, true) => {
                    return Err(Diagnostic::new(
                        C::KindMismatch,
                        at("rate"),
                        "timed games need a rate for every state",
                    ));
                }
                (Some(_), false) => {
                    return Err(Diagnostic::new(
                        C::KindMismatch,
                        at("rate"),
                        "priced games have no rates",
                    ));
                }
                (None, false) => {}
            }
        }
        let mut action_ids = HashMap::new();
        let mut actions = Vec::new();
        for (j, a) in self.actions.iter().enumerate() {
            let at = |field: &str| format!("actions[{j}].{field}");
            if action_ids.insert(a.id.0.clone(), j).is_some() {
                return Err(Diagnostic::new(
                    C::DuplicateId,
                    at("id"),
                    format!("duplicate action id {:?}", a.id.0),
                ));
            }
            let from = *state_ids.get(&a.from.0).ok_or_else(|| {
                Diagnostic::new(
                    C::DanglingReference,
                    at("from"),
                    format!("unknown state {:?}", a.from.0),
                )
            })?;
            let to = if a.to.0 == BOTTOM {
                Dest::Bottom
            } else {
                Dest::State(*state_ids.get(&a.to.0).ok_or_else(|| {
                    Diagnostic::new(
                        C::DanglingReference,
                        at("to"),
                        format!("unknown state {:?}", a.to.0),
                    )
                })?)
            };
            let cost = if a.cost.0.trim() == "inf" {
                ExtCost::Infinity
            } else {
                let c = number(&a.cost.0, &at("cost"))?;
                if c.is_negative() {
                    return Err(Diagnostic::new(
                        C::NegativeCost,
                        at("cost"),
                        format!("negative cost {c}"),
                    ));
                }
                ExtCost::Finite(c)
            };
            let interval = match (&a.interval, self.kind) {
                (Some(iv), GameKind::Ptg) => Some(interval(iv, &at("interval"))?),
                (None, GameKind::Ptg) => {
                    return Err(Diagnostic::new(
                        C::KindMismatch,
                        at("interval"),
                        "ptg actions need an interval",
                    ));
                }
                (Some(_), _) => {
                    return Err(Diagnostic::new(
                        C::KindMismatch,
                        at("interval"),
                        "only ptg actions have intervals",
                    ));
                }
                (None, _) => None,
            };
            if a.reset.is_some() && self.kind != GameKind::Ptg {
                return Err(Diagnostic::new(
                    C::KindMismatch,
                    at("reset"),
                    "only ptg actions can reset",
                ));
            }
            actions.push((from, to, cost, interval, a.reset.unwrap_or(false)));
        }
        let invalid = |e: crate::Error| Diagnostic::new(C::InvalidGame, "", e.to_string());
        let plain = || -> Vec<Action<ExtCost>> {
            actions
                .iter()
                .map(|(from, to, cost, _, _)| Action {
                    from: *from,
                    to: *to,
                    cost: cost.clone(),
                })
                .collect()
        };
        let game = match self.kind {
            GameKind::Priced => {
                LoadedGame::Priced(PricedGame::new(owners, plain()).map_err(invalid)?)
            }
            GameKind::Sptg => {
                LoadedGame::Sptg(Sptg::from_parts(owners, rates, plain()).map_err(invalid)?)
            }
            GameKind::Ptg => {
                let actions = actions
                    .into_iter()
                    .map(|(from, to, cost, interval, reset)| PtgAction {
                        from,
                        to,
                        cost,
                        interval: interval.expect("checked above"),
                        reset,
                    })
                    .collect();
                LoadedGame::Ptg(Ptg::new(owners, rates, actions).map_err(invalid)?)
            }
        };
        let names = Names {
            states: self.states.iter().map(|s| s.id.0.clone()).collect(),
            actions: self.actions.iter().map(|a| a.id.0.clone()).collect(),
        };
        Ok((game, names))
    }

    /// The document describing `game`, with canonical number spelling.
    pub fn from_game(game: &LoadedGame, names: &Names) -> Self {
        let state = |k: usize, owner: Player, rate: Option<&Rational>| StateDoc {
            id: Number(names.states[k].clone()),
            owner: owner.number(),
            rate: rate.map(Number::of),
        };
        let action = |j: usize, from: usize, to: Dest, cost: &ExtCost| ActionDoc {
            id: Number(names.actions[j].clone()),
            from: Number(names.states[from].clone()),
            to: Number(names.dest(to).to_owned()),
            cost: Number::of_cost(cost),
            interval: None,
            reset: None,
        };
        let (states, actions) = match game {
            LoadedGame::Priced(g) => (
                (0..g.num_states())
                    .map(|k| state(k, g.owner(k), None))
                    .collect(),
                g.actions()
                    .iter()
                    .enumerate()
                    .map(|(j, a)| action(j, a.from, a.to, &a.cost))
                    .collect(),
            ),
            LoadedGame::Sptg(g) => (
                (0..g.num_states())
                    .map(|k| state(k, g.game().owner(k), Some(&g.rates()[k])))
                    .collect(),
                g.game()
                    .actions()
                    .iter()
                    .enumerate()
                    .map(|(j, a)| action(j, a.from, a.to, &a.cost))
                    .collect(),
            ),
            LoadedGame::Ptg(g) => (
                (0..g.num_states())
                    .map(|k| state(k, g.owner(k), Some(&g.rates()[k])))
                    .collect(),
                g.actions()
                    .iter()
                    .enumerate()
                    .map(|(j, a)| ActionDoc {
                        interval: Some(IntervalDoc::of(&a.interval)),
                        reset: a.reset.then_some(true),
                        ..action(j, a.from, a.to, &a.cost)
                    })
                    .collect(),
            ),
        };
        GameDocument {
            format: FORMAT_VERSION,
            kind: game.kind(),
            states,
            actions,
        }
    }
}

/// Pretty-printed game document, newline terminated.
pub fn emit_game(game: &LoadedGame, names: &Names) -> String {
    let mut s = serde_json::to_string_pretty(&GameDocument::from_game(game, names))
        .expect("game documents always serialize");
    s.push('\n');
    s
}

fn number(text: &str, at: &str) -> Result<Rational, Diagnostic> {
    parse_rational(text).map_err(|_| {
        Diagnostic::new(
            DiagnosticCode::BadNumber,
            at,
            format!("{text:?} is not an exact rational (write an integer or p/q)"),
        )
    })
}

fn interval(iv: &IntervalDoc, at: &str) -> Result<Interval, Diagnostic> {
    let lo = number(&iv.lo.0, &format!("{at}.lo"))?;
    let hi = number(&iv.hi.0, &format!("{at}.hi"))?;
    if lo.is_negative() {
        return Err(Diagnostic::new(
            DiagnosticCode::IntervalOrder,
            at,
            format!("interval starts before time 0 at {lo}"),
        ));
    }
    if lo > hi {
        return Err(Diagnostic::new(
            DiagnosticCode::IntervalOrder,
            at,
            format!("lo {lo} exceeds hi {hi}"),
        ));
    }
    let iv = Interval {
        lo,
        hi,
        lo_closed: iv.lo_closed,
        hi_closed: iv.hi_closed,
    };
    if iv.is_empty() {
        return Err(Diagnostic::new(
            DiagnosticCode::EmptyInterval,
            at,
            format!("interval {iv} is empty"),
        ));
    }
    Ok(iv)
}
