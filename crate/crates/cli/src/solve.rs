use std::path::Path;
use std::time::Instant;

use anyhow::{Context, Result};
use ptg_core::io::{
    emit_plot, emit_result, fast_numerics_enabled, parse_game, LoadedGame, Names, ResultInput,
};
use ptg_core::oracle::{
    brute_force_priced, check_equilibrium, default_cap, value_iteration_sptg, BRUTE_FORCE_BUDGET,
};
use ptg_core::priced_game::{extended_dijkstra, strategy_iteration};
use ptg_core::ptg::solve_ptg;
use ptg_core::sptg::solve_sptg;
use serde_json::json;

use crate::Outcome;

/// Simulated starts per state when verifying.
const PROBES: usize = 50;

pub fn run(
    file: &Path,
    out: Option<&Path>,
    plot: Option<&Path>,
    verify: bool,
    timings: bool,
) -> Outcome {
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => return Outcome::InputError(format!("{}: {e}", file.display())),
    };
    let (game, names) = match parse_game(&text) {
        Ok(g) => g,
        Err(d) => return Outcome::InputError(format!("{}: {d}", file.display())),
    };
    match solve(&game, &names, out, plot, verify, timings) {
        Ok(true) => Outcome::Ok,
        Ok(false) => Outcome::VerificationFailed,
        Err(e) => Outcome::InputError(format!("{e:#}")),
    }
}

struct Check {
    name: &'static str,
    passed: bool,
    detail: String,
}

fn solve(
    game: &LoadedGame,
    names: &Names,
    out: Option<&Path>,
    plot: Option<&Path>,
    verify: bool,
    timings: bool,
) -> Result<bool> {
    let started = Instant::now();
    let mut checks = Vec::new();
    let (document, values) = match game {
        LoadedGame::Priced(g) => {
            let (values, profile) = extended_dijkstra(g);
            let elapsed = timings.then(|| started.elapsed());
            if verify {
                let si = strategy_iteration(g, &g.first_profile())?;
                checks.push(Check {
                    name: "strategy_iteration",
                    passed: si.values() == values,
                    detail: format!("{} switches", si.switches),
                });
                match brute_force_priced(g) {
                    Ok(bf) => checks.push(Check {
                        name: "brute_force",
                        passed: bf == values,
                        detail: String::new(),
                    }),
                    Err(_) => checks.push(Check {
                        name: "brute_force",
                        passed: true,
                        detail: format!("skipped: more than {BRUTE_FORCE_BUDGET} profiles"),
                    }),
                }
            }
            let input = ResultInput::Priced {
                values: &values,
                profile: &profile,
            };
            (emit_result(input, names, elapsed), None)
        }
        LoadedGame::Sptg(g) => {
            let r = solve_sptg(g)?;
            let elapsed = timings.then(|| started.elapsed());
            if verify {
                let report = check_equilibrium(g, &r, PROBES);
                checks.push(Check {
                    name: "equilibrium",
                    passed: report.passed(),
                    detail: report.failures.join("; "),
                });
                let (passed, detail) = match value_iteration_sptg(g, default_cap(g)) {
                    Ok(vi) => (
                        vi.values == r.values,
                        format!("{} iterations", vi.iterations),
                    ),
                    Err(e) => (false, e.to_string()),
                };
                checks.push(Check {
                    name: "value_iteration",
                    passed,
                    detail,
                });
            }
            (
                emit_result(ResultInput::Sptg(&r), names, elapsed),
                Some(r.values),
            )
        }
        LoadedGame::Ptg(g) => {
            let r = solve_ptg(g)?;
            let elapsed = timings.then(|| started.elapsed());
            if verify {
                let failures: Vec<String> =
                    r.provenance
                        .iter()
                        .flat_map(|p| {
                            let report = check_equilibrium(&p.game.sptg, &p.sweep, PROBES);
                            report.failures.into_iter().map(move |f| {
                                format!("layer {} [{}, {}]: {f}", p.layer, p.lo, p.hi)
                            })
                        })
                        .collect();
                checks.push(Check {
                    name: "equilibrium",
                    passed: failures.is_empty(),
                    detail: failures.join("; "),
                });
                let bound = r.stats.layers * r.ladder.len();
                checks.push(Check {
                    name: "oracle_calls",
                    passed: r.stats.oracle_calls <= bound,
                    detail: format!("{} of at most {bound}", r.stats.oracle_calls),
                });
            }
            (
                emit_result(ResultInput::Ptg(&r), names, elapsed),
                Some(r.values),
            )
        }
    };
    match out {
        Some(path) => std::fs::write(path, &document)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{document}"),
    }
    if let Some(path) = plot {
        let values = values.context("plots need a timed game")?;
        let table = emit_plot(&values, names, fast_numerics_enabled());
        std::fs::write(path, table).with_context(|| format!("writing {}", path.display()))?;
    }
    if !verify {
        return Ok(true);
    }
    let passed = checks.iter().all(|c| c.passed);
    let report = json!({
        "verified": passed,
        "checks": checks
            .iter()
            .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
            .collect::<Vec<_>>(),
    });
    eprintln!("{report}");
    Ok(passed)
}
