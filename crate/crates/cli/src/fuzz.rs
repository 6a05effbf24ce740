use ptg_core::io::{emit_game, LoadedGame, Names};
use ptg_core::oracle::{
    brute_force_priced, check_equilibrium, default_cap, random_priced, random_ptg, random_sptg,
    value_iteration_sptg, RandomConfig,
};
use ptg_core::priced_game::{extended_dijkstra, strategy_iteration};
use ptg_core::ptg::solve_ptg;
use ptg_core::sptg::solve_sptg;
use rayon::prelude::*;

use crate::Outcome;

/// Checks one seed: a priced game against brute force and strategy
/// iteration, a simple game against value iteration and simulation, and a
/// timed game's pieces against simulation. Returns the offending game on
/// failure.
fn check_seed(seed: u64, size: usize) -> Result<(), (String, LoadedGame)> {
    let cfg = RandomConfig {
        infinite_costs: seed % 3 == 0,
        contrast: seed % 2 == 1,
        resets: seed % 2 == 0,
        ..RandomConfig::new(seed, size, 3)
    };
    let g = random_priced(&cfg);
    let (d, _) = extended_dijkstra(&g);
    let si = strategy_iteration(&g, &g.first_profile()).map(|o| o.values());
    let agree = match (brute_force_priced(&g), si) {
        (Ok(bf), Ok(si)) => bf == d && si == d,
        // Too many profiles to enumerate: compare the two solvers only.
        (Err(_), Ok(si)) => si == d,
        (_, Err(_)) => false,
    };
    if !agree {
        return Err(("priced solvers disagree".into(), LoadedGame::Priced(g)));
    }

    let g = random_sptg(&cfg);
    let problem = match solve_sptg(&g) {
        Err(e) => Some(e.to_string()),
        Ok(r) => match value_iteration_sptg(&g, default_cap(&g)) {
            Err(e) => Some(e.to_string()),
            Ok(vi) if vi.values != r.values => Some("sweep and value iteration disagree".into()),
            Ok(_) => {
                let report = check_equilibrium(&g, &r, 50);
                (!report.passed()).then(|| report.failures.join("; "))
            }
        },
    };
    if let Some(p) = problem {
        return Err((p, LoadedGame::Sptg(g)));
    }

    let g = random_ptg(&cfg);
    let problem = match solve_ptg(&g) {
        Err(e) => Some(e.to_string()),
        Ok(r) if r.stats.oracle_calls > r.stats.layers * r.ladder.len() => {
            Some("too many simple-game solves".into())
        }
        Ok(r) => r.provenance.iter().find_map(|p| {
            let report = check_equilibrium(&p.game.sptg, &p.sweep, 50);
            (!report.passed()).then(|| report.failures.join("; "))
        }),
    };
    match problem {
        Some(p) => Err((p, LoadedGame::Ptg(g))),
        None => Ok(()),
    }
}

pub fn run(seed: u64, count: u64, size: usize) -> Outcome {
    if size == 0 {
        return Outcome::InputError("--size must be at least 1".into());
    }
    let failures: Vec<(u64, String, LoadedGame)> = (seed..seed.saturating_add(count))
        .into_par_iter()
        .filter_map(|s| check_seed(s, size).err().map(|(msg, g)| (s, msg, g)))
        .collect();
    println!(
        "fuzz: {count} seeds from {seed}, {size} states: {} agree, {} disagree",
        count - failures.len() as u64,
        failures.len()
    );
    for (s, msg, g) in &failures {
        let names = Names::generic(g.num_states(), g.num_actions());
        eprintln!("seed {s}: {msg}\n{}", emit_game(g, &names));
    }
    if failures.is_empty() {
        Outcome::Ok
    } else {
        Outcome::VerificationFailed
    }
}
