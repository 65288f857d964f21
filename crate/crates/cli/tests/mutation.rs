//! The verification suites must catch a solver whose chain choice is wrong.

use stacking::verify::{run_all, suite_equivalence, Level, Solvers};
use stacking_core::{contains, solve_offline, solve_online, Capacity, Coloring, Instance};

/// Algorithm B, except a new item joins the containing chain with the
/// largest top end instead of the smallest.
fn inverted_tie_break(inst: &Instance, h: Capacity) -> Coloring {
    struct Chain {
        top: usize,
        color: u32,
        block: usize,
    }
    let mut chains: Vec<Chain> = Vec::new();
    let mut expiry: Vec<(f64, u32)> = Vec::new();
    let mut colors = Vec::with_capacity(inst.len());
    let mut chi = 0u32;
    for it in inst {
        let host = (0..chains.len())
            .filter(|&k| contains(&inst[chains[k].top], it))
            .max_by(|&a, &b| inst[chains[a].top].end.total_cmp(&inst[chains[b].top].end));
        let color = match host {
            Some(k) if chains[k].block < h.get() => {
                chains[k].block += 1;
                chains[k].top = it.id;
                chains[k].color
            }
            _ => {
                let free = (0..expiry.len())
                    .filter(|&e| expiry[e].0 < it.start)
                    .min_by(|&a, &b| {
                        expiry[a]
                            .0
                            .total_cmp(&expiry[b].0)
                            .then(expiry[a].1.cmp(&expiry[b].1))
                    });
                let color = match free {
                    Some(e) => expiry.swap_remove(e).1,
                    None => {
                        chi += 1;
                        chi
                    }
                };
                expiry.push((it.end, color));
                match host {
                    Some(k) => {
                        chains[k] = Chain {
                            top: it.id,
                            color,
                            block: 1,
                        };
                    }
                    None => chains.push(Chain {
                        top: it.id,
                        color,
                        block: 1,
                    }),
                }
                color
            }
        };
        colors.push(color);
    }
    Coloring {
        colors,
        num_colors: chi,
    }
}

#[test]
fn inverted_tie_break_is_caught() {
    let solvers = Solvers {
        online: &inverted_tie_break,
        offline: &solve_offline,
    };
    let report = suite_equivalence(Level::Quick, &solvers);
    assert!(!report.passed());
    let shown = report.to_string();
    assert!(shown.starts_with("FAIL online-offline"));
    assert!(shown.contains("seed "), "{shown}");
}

#[test]
fn mutant_agrees_when_no_choice_exists() {
    // with one chain at most the tie-break never matters
    let inst = stacking_core::validate_instance(
        [
            (0.0, 10.0),
            (1.0, 9.0),
            (2.0, 8.0),
            (3.0, 7.0),
            (11.0, 12.0),
        ]
        .iter()
        .enumerate()
        .map(|(k, &(s, e))| stacking_core::Interval::new(k, s, e)),
    )
    .unwrap();
    let h = Capacity::new(2).unwrap();
    assert_eq!(inverted_tie_break(&inst, h), solve_online(&inst, h));
}

#[test]
fn correct_solvers_pass_every_suite() {
    for r in run_all(Level::Quick, &Solvers::default()) {
        assert!(r.passed(), "{r}");
    }
}
