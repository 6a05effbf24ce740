//! Text formats: game descriptions in, result documents and plot tables out.
//!
//! Everything is JSON except the plot table, which is CSV. Rationals are
//! written as strings (`"3/2"`, `"-1"`, `"inf"`) so that nothing is rounded.

mod game;
mod plot;
mod result;

pub use game::{
    emit_game, parse_game, ActionDoc, GameDocument, GameKind, IntervalDoc, LoadedGame, Names,
    Number, StateDoc, FORMAT_VERSION,
};
pub use plot::{emit_plot, fast_numerics_enabled, FAST_NUMERICS_ENV};
pub use result::{
    emit_result, parse_result, CellDoc, ResultDocument, ResultInput, SegmentDoc, StateResult,
    StatsDoc,
};

use std::fmt;

/// Stable identifiers for each class of input error.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiagnosticCode {
    Syntax,
    UnknownField,
    UnsupportedFormat,
    /// Well-formed JSON of the wrong shape: missing fields, wrong types.
    Schema,
    DuplicateId,
    DanglingReference,
    BadNumber,
    BadOwner,
    NegativeRate,
    NegativeCost,
    IntervalOrder,
    EmptyInterval,
    KindMismatch,
    InvalidGame,
}

impl DiagnosticCode {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagnosticCode::Syntax => "E001",
            DiagnosticCode::UnknownField => "E002",
            DiagnosticCode::UnsupportedFormat => "E003",
            DiagnosticCode::Schema => "E004",
            DiagnosticCode::DuplicateId => "E010",
            DiagnosticCode::DanglingReference => "E011",
            DiagnosticCode::BadNumber => "E020",
            DiagnosticCode::BadOwner => "E021",
            DiagnosticCode::NegativeRate => "E022",
            DiagnosticCode::NegativeCost => "E023",
            DiagnosticCode::IntervalOrder => "E024",
            DiagnosticCode::EmptyInterval => "E025",
            DiagnosticCode::KindMismatch => "E026",
            DiagnosticCode::InvalidGame => "E030",
        }
    }
}

impl fmt::Display for DiagnosticCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An input error with a code and a location: `line:column` for syntax
/// problems, a field path such as `actions[2].cost` otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub code: DiagnosticCode,
    pub location: String,
    pub message: String,
}

impl Diagnostic {
    pub fn new(
        code: DiagnosticCode,
        location: impl Into<String>,
        message: impl Into<String>,
    ) -> Self {
        Diagnostic {
            code,
            location: location.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.location.is_empty() {
            write!(f, "{}: {}", self.code, self.message)
        } else {
            write!(f, "{} at {}: {}", self.code, self.location, self.message)
        }
    }
}

impl std::error::Error for Diagnostic {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{int, ExtCost};
    use crate::ptg::solve_ptg;
    use crate::sptg::solve_sptg;

    const FIXTURE_A: &str = include_str!("../../fixtures/fixture-a.json");
    const FIG3: &str = include_str!("../../fixtures/fig3.json");

    fn code_of(text: &str) -> DiagnosticCode {
        parse_game(text).unwrap_err().code
    }

    fn with_action_field(field: &str) -> String {
        FIXTURE_A.replacen(
            "\"cost\": \"1/2\"",
            &format!("\"cost\": \"1/2\", {field}"),
            1,
        )
    }

    #[test]
    fn parses_fixture_a() {
        let (g, names) = parse_game(FIXTURE_A).unwrap();
        assert_eq!(g.kind(), GameKind::Sptg);
        assert_eq!((g.num_states(), g.num_actions()), (3, 4));
        assert_eq!(names.states, ["k1", "k2a", "k2b"]);
        assert_eq!(g, LoadedGame::Sptg(crate::oracle::fixtures::fixture_a()));
    }

    #[test]
    fn parses_fig3() {
        let (g, _) = parse_game(FIG3).unwrap();
        assert_eq!(g, LoadedGame::Ptg(crate::oracle::fixtures::fig3()));
    }

    #[test]
    fn infinite_cost() {
        let text = FIXTURE_A.replace("\"cost\": \"1/2\"", "\"cost\": \"inf\"");
        let (LoadedGame::Sptg(g), _) = parse_game(&text).unwrap() else {
            panic!()
        };
        assert_eq!(g.game().action(1).cost, ExtCost::Infinity);
    }

    #[test]
    fn diagnostics_have_distinct_codes() {
        use DiagnosticCode as C;
        assert_eq!(
            code_of(&FIXTURE_A.replace("\"1/2\"", "\"\u{2212}1\"")),
            C::NegativeCost
        );
        assert_eq!(
            code_of(&FIXTURE_A.replace("\"rate\": 5", "\"rate\": -5")),
            C::NegativeRate
        );
        assert_eq!(
            code_of(&FIXTURE_A.replace("\"rate\": 5", "\"rate\": 0.5")),
            C::BadNumber
        );
        assert_eq!(
            code_of(&FIXTURE_A.replace("\"to\": \"k2a\"", "\"to\": \"k9\"")),
            C::DanglingReference
        );
        assert_eq!(
            code_of(&FIXTURE_A.replace("\"id\": \"k2b\"", "\"id\": \"k2a\"")),
            C::DuplicateId
        );
        assert_eq!(
            code_of(&FIXTURE_A.replace("\"owner\": 1", "\"owner\": 3")),
            C::BadOwner
        );
        assert_eq!(
            code_of(&with_action_field("\"colour\": 1")),
            C::UnknownField
        );
        assert_eq!(
            code_of(&with_action_field("\"reset\": true")),
            C::KindMismatch
        );
        assert_eq!(
            code_of(&FIXTURE_A.replace("\"format\": 1", "\"format\": 9")),
            C::UnsupportedFormat
        );
        assert_eq!(
            code_of(&FIXTURE_A.replace("\"kind\": \"sptg\"", "\"kind\": \"graph\"")),
            C::Schema
        );
        assert_eq!(
            code_of(&FIXTURE_A.replace("\"owner\": 1", "\"owner\": \"one\"")),
            C::Schema
        );
        assert_eq!(code_of(&FIXTURE_A[..40]), C::Syntax);
        let backwards = FIG3.replace("\"lo\": 0, \"hi\": 1}", "\"lo\": 2, \"hi\": 1}");
        assert_eq!(code_of(&backwards), C::IntervalOrder);
        let empty = FIG3.replace(
            "\"lo\": 0, \"hi\": 0}",
            "\"lo\": 0, \"hi\": 0, \"hi_closed\": false}",
        );
        assert_eq!(code_of(&empty), C::EmptyInterval);
        let stuck = FIG3.replace(
            "\"lo\": 1, \"hi\": 1}",
            "\"lo\": 1, \"hi\": 1, \"lo_closed\": false, \"hi_closed\": true}",
        );
        assert_eq!(code_of(&stuck), C::EmptyInterval);
        let no_exit = FIXTURE_A.replace("\"from\": \"k2b\"", "\"from\": \"k2a\"");
        assert_eq!(code_of(&no_exit), C::InvalidGame);
    }

    #[test]
    fn locations_point_at_the_problem() {
        let d = parse_game(&FIXTURE_A.replace("\"1/2\"", "\"-1\"")).unwrap_err();
        assert_eq!(d.location, "actions[1].cost");
        let d = parse_game(&with_action_field("\"colour\": 1")).unwrap_err();
        assert!(d.location.starts_with("actions[1]"), "{}", d.location);
        assert!(d.location.contains("line 11"), "{}", d.location);
        let d = parse_game("{\n  \"format\": 1,\n  oops\n}").unwrap_err();
        assert_eq!(d.location, "line 3, column 3");
    }

    #[test]
    fn game_round_trip() {
        for text in [
            FIXTURE_A,
            FIG3,
            include_str!("../../fixtures/self-loop.json"),
        ] {
            let (g, names) = parse_game(text).unwrap();
            let again = emit_game(&g, &names);
            let (g2, names2) = parse_game(&again).unwrap();
            assert_eq!((g2, names2), (g.clone(), names.clone()));
            assert_eq!(emit_game(&g, &names), again);
        }
    }

    #[test]
    fn result_round_trip() {
        let (LoadedGame::Sptg(g), names) = parse_game(FIXTURE_A).unwrap() else {
            panic!()
        };
        let r = solve_sptg(&g).unwrap();
        let text = emit_result(ResultInput::Sptg(&r), &names, None);
        assert_eq!(text, emit_result(ResultInput::Sptg(&r), &names, None));
        let doc = parse_result(&text).unwrap();
        assert_eq!(doc.values().unwrap(), r.values);
        assert_eq!(doc.strategy(&names).unwrap(), r.strategy);
        assert_eq!(doc.stats.event_points, Some(1));

        let (LoadedGame::Ptg(g), names) = parse_game(FIG3).unwrap() else {
            panic!()
        };
        let r = solve_ptg(&g).unwrap();
        let doc = parse_result(&emit_result(ResultInput::Ptg(&r), &names, None)).unwrap();
        assert_eq!(doc.values().unwrap(), r.values);
        assert_eq!(
            doc.states[1].segments[0].left_jump,
            Some(Number("1".into()))
        );
    }

    #[test]
    fn zero_width_result_round_trip() {
        let f = crate::numerics::Pwl::constant(int(0), int(0), ExtCost::from_int(4)).unwrap();
        let r = crate::ptg::PtgResult {
            values: vec![f.clone()],
            ladder: vec![int(0)],
            stats: Default::default(),
            provenance: Vec::new(),
        };
        let names = Names::generic(1, 1);
        let doc = parse_result(&emit_result(ResultInput::Ptg(&r), &names, None)).unwrap();
        assert_eq!(doc.values().unwrap(), vec![f]);
    }

    #[test]
    fn plot_rows_for_fixture_a() {
        let (LoadedGame::Sptg(g), names) = parse_game(FIXTURE_A).unwrap() else {
            panic!()
        };
        let r = solve_sptg(&g).unwrap();
        let csv = emit_plot(&r.values, &names, false);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "state,x_left,x_right,v_left,v_right");
        assert_eq!(lines[1], "k1,0,1/2,3/2,1");
        assert_eq!(lines[2], "k1,1/2,1,1,0");
        assert_eq!(lines[3], "k2a,0,1,2,0");
        assert_eq!(lines.len(), 5);
        let decimal = emit_plot(&r.values, &names, true);
        assert!(decimal.contains("k1,0,0.5,1.5,1"));
    }

    #[test]
    fn plot_marks_jumps_and_infinity() {
        let (LoadedGame::Ptg(g), names) = parse_game(FIG3).unwrap() else {
            panic!()
        };
        let r = solve_ptg(&g).unwrap();
        let csv = emit_plot(&r.values, &names, false);
        assert!(csv.contains("p2,0,0,1,1\np2,0,1,0,0\n"), "{csv}");
        let inf = crate::numerics::Pwl::constant(int(0), int(1), ExtCost::Infinity).unwrap();
        let csv = emit_plot(&[inf], &Names::generic(1, 0), false);
        assert!(csv.ends_with("s0,0,1,inf,inf\n"));
    }
}
