use ptg_core::oracle::{
    brute_force_priced, check_equilibrium, random_priced, random_ptg, random_sptg,
    value_iteration_sptg, RandomConfig,
};
use ptg_core::priced_game::{extended_dijkstra, strategy_iteration, Player};
use ptg_core::ptg::{solve_ptg, Ptg};
use ptg_core::sptg::{solve_sptg, solve_sptg_with, InnerSolver, SolveOptions};

#[test]
fn sweep_matches_value_iteration() {
    for seed in 0..120 {
        let cfg = RandomConfig {
            infinite_costs: seed % 3 == 0,
            contrast: seed % 2 == 0,
            ..RandomConfig::new(seed, 1 + (seed as usize % 6), 3)
        };
        let g = random_sptg(&cfg);
        let r = solve_sptg(&g).unwrap();
        let vi = value_iteration_sptg(&g, 10_000).unwrap();
        assert_eq!(r.values, vi.values, "seed {seed}: {g:?}");
        let report = check_equilibrium(&g, &r, 50);
        assert!(report.passed(), "seed {seed}: {:?}", report.failures);
    }
}

#[test]
fn inner_solvers_agree() {
    for seed in 0..60 {
        let g = random_sptg(&RandomConfig::new(seed, 3, 3));
        let base = solve_sptg(&g).unwrap();
        for inner in [InnerSolver::StrategyIteration, InnerSolver::Instrumented] {
            let opts = SolveOptions {
                inner,
                ..SolveOptions::default()
            };
            let r = solve_sptg_with(&g, &opts).unwrap();
            assert_eq!(r.values, base.values, "seed {seed}");
            assert_eq!(r.stats.potential_violations, 0, "seed {seed}");
        }
    }
}

#[test]
fn priced_solvers_agree() {
    for seed in 0..200 {
        let cfg = RandomConfig {
            infinite_costs: true,
            ..RandomConfig::new(seed, 1 + seed as usize % 3, 3)
        };
        let g = random_priced(&cfg);
        let (d, _) = extended_dijkstra(&g);
        let si = strategy_iteration(&g, &g.first_profile()).unwrap().values();
        let bf = brute_force_priced(&g).unwrap();
        assert_eq!(d, si, "seed {seed}");
        assert_eq!(d, bf, "seed {seed}");
    }
}

#[test]
fn timed_games_embed_simple_ones() {
    for seed in 0..40 {
        let g = random_sptg(&RandomConfig::new(seed, 3, 3));
        let direct = solve_sptg(&g).unwrap();
        let via = solve_ptg(&Ptg::from_sptg(&g)).unwrap();
        assert_eq!(via.values, direct.values, "seed {seed}");
    }
}

#[test]
fn random_timed_games_solve_within_call_budget() {
    for seed in 0..80 {
        let cfg = RandomConfig {
            resets: true,
            infinite_costs: seed % 4 == 0,
            ..RandomConfig::new(seed, 3, 3)
        };
        let g = random_ptg(&cfg);
        let r = solve_ptg(&g).unwrap();
        let d = r.ladder.len();
        assert!(r.stats.oracle_calls <= r.stats.layers * d, "seed {seed}");
        assert_eq!(r.values.len(), g.num_states());
        assert_eq!(r.values[0].hi(), g.horizon());
    }
}

#[test]
fn one_player_event_points() {
    for seed in 0..60 {
        let p = if seed % 2 == 0 {
            Player::Min
        } else {
            Player::Max
        };
        let g = random_sptg(&RandomConfig {
            one_player: Some(p),
            ..RandomConfig::new(seed, 4, 3)
        });
        let r = solve_sptg(&g).unwrap();
        let n = g.num_states();
        assert!(r.stats.event_points <= n * (n + 1), "seed {seed}");
    }
}
