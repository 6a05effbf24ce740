//! Segment tables for external plotting tools.

use crate::numerics::{approx_f64, format_rational, ExtCost, Pwl, Rational};

use super::game::Names;

/// Environment variable switching plot output to decimal approximations.
pub const FAST_NUMERICS_ENV: &str = "PTG_FAST_NUMERICS";

/// Whether [`FAST_NUMERICS_ENV`] is set to `1`, `true` or `yes`. Solving is
/// exact either way; only plot rendering is affected.
pub fn fast_numerics_enabled() -> bool {
    std::env::var(FAST_NUMERICS_ENV)
        .map(|v| matches!(v.trim().to_ascii_lowercase().as_str(), "1" | "true" | "yes"))
        .unwrap_or(false)
}

/// CSV with columns `state,x_left,x_right,v_left,v_right`, one row per
/// piece: `v_left` is the limit from the right at `x_left` and `v_right` the
/// limit from the left at `x_right`. Points where the function differs from
/// a neighbouring limit get their own row with `x_left = x_right`.
///
/// With `decimal`, numbers are printed as floating-point approximations.
pub fn emit_plot(values: &[Pwl], names: &Names, decimal: bool) -> String {
    let num = |x: &Rational| {
        if decimal {
            approx_f64(x).to_string()
        } else {
            format_rational(x)
        }
    };
    let cost = |c: &ExtCost| match c {
        ExtCost::Finite(v) => num(v),
        ExtCost::Infinity => "inf".to_owned(),
    };
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["state", "x_left", "x_right", "v_left", "v_right"])
        .expect("writing to memory");
    for (k, f) in values.iter().enumerate() {
        let state = names.states[k].as_str();
        let b = f.breaks();
        let points = f.points();
        let pieces = f.pieces();
        let mut row = |l: &Rational, r: &Rational, vl: &ExtCost, vr: &ExtCost| {
            w.write_record([state, &num(l), &num(r), &cost(vl), &cost(vr)])
                .expect("writing to memory");
        };
        for i in 0..b.len() {
            let from_left = i.checked_sub(1).map(|p| {
                let piece = &pieces[p];
                piece.start.plus_scaled(&piece.slope, &(&b[i] - &b[p]))
            });
            let from_right = pieces.get(i).map(|p| &p.start);
            let isolated = pieces.is_empty()
                || from_left.as_ref().is_some_and(|v| *v != points[i])
                || from_right.is_some_and(|v| *v != points[i]);
            if isolated {
                row(&b[i], &b[i], &points[i], &points[i]);
            }
            if let Some(p) = pieces.get(i) {
                let end = p.start.plus_scaled(&p.slope, &(&b[i + 1] - &b[i]));
                row(&b[i], &b[i + 1], &p.start, &end);
            }
        }
    }
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("csv output is UTF-8")
}
