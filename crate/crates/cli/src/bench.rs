use std::time::{Duration, Instant};

use ptg_core::oracle::{families, random_ptg, random_sptg, RandomConfig};
use ptg_core::ptg::solve_ptg;
use ptg_core::sptg::solve_sptg;

use clap::ValueEnum;

use crate::{Family, Outcome};

/// Runs are sequential so that timings do not compete for cores.
pub fn run(family: Family, size: usize, count: u64, seed: u64) -> Outcome {
    if size == 0 {
        return Outcome::InputError("--size must be at least 1".into());
    }
    println!("family,instance,states,actions,event_points,sweep_steps,oracle_calls,micros");
    let mut total = Duration::ZERO;
    for i in 0..count {
        let s = seed + i;
        let started = Instant::now();
        let row = match family {
            Family::Automata => {
                let g = families::staircase(size + i as usize);
                let r = solve_sptg(&g);
                r.map(|r| {
                    (
                        g.num_states(),
                        g.game().num_actions(),
                        r.stats.event_points,
                        r.stats.sweep_steps,
                        1,
                    )
                })
            }
            Family::Random => {
                let g = random_sptg(&RandomConfig {
                    contrast: s % 2 == 1,
                    ..RandomConfig::new(s, size, 4)
                });
                let r = solve_sptg(&g);
                r.map(|r| {
                    (
                        g.num_states(),
                        g.game().num_actions(),
                        r.stats.event_points,
                        r.stats.sweep_steps,
                        1,
                    )
                })
            }
            Family::Reach => {
                let cfg = RandomConfig {
                    reachability: true,
                    resets: true,
                    ..RandomConfig::new(s, size, 4)
                };
                let g = random_ptg(&cfg);
                let r = solve_ptg(&g);
                r.map(|r| {
                    (
                        g.num_states(),
                        g.actions().len(),
                        0,
                        r.stats.sweep_steps,
                        r.stats.oracle_calls,
                    )
                })
            }
        };
        let elapsed = started.elapsed();
        total += elapsed;
        match row {
            Ok((n, m, l, steps, calls)) => {
                let name = family.to_possible_value().expect("no skipped variants");
                println!(
                    "{},{s},{n},{m},{l},{steps},{calls},{}",
                    name.get_name(),
                    elapsed.as_micros()
                );
            }
            Err(e) => return Outcome::InputError(format!("instance {s}: {e}")),
        }
    }
    eprintln!("total {:?}", total);
    Outcome::Ok
}
