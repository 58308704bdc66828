use proptest::prelude::*;
use qsp_core::dust::linspace;
use qsp_core::gedanken::{
    run_atwood_cycle, run_pair_cycle, Account, Atwood, AtwoodMode, GravContext, Outcome,
};

fn ctx(g: f64) -> GravContext {
    GravContext::new(g, 1.0).unwrap()
}

#[test]
fn corrected_cycle_runs_a_thousand_times() {
    let c = ctx(0.01);
    let run = run_atwood_cycle(
        &c,
        &Atwood::calibrated(&c, 1.0, 1.0),
        AtwoodMode::Corrected,
        1000,
    )
    .unwrap();
    assert_eq!(run.outcome, Outcome::Perpetual);
    assert!(run.ledger.max_drift() < 1e-12);
    assert_eq!(run.ledger.history.len(), 4000);
    // Only the field pays: everything else returns to its opening balance.
    let net = run.ledger.net_deltas();
    assert!(net[Account::AtomInternal as usize].abs() < 1e-12);
    assert!(net[Account::Photon as usize].abs() < 1e-12);
    assert_eq!(net[Account::StorageCell as usize], 0.0);
}

#[test]
fn miscalibrated_height_halts_first_cycle() {
    let c = ctx(0.01);
    let tuned = Atwood::calibrated(&c, 1.0, 1.0);
    for factor in [0.99, 1.01] {
        let setup = Atwood {
            height: tuned.height * factor,
            ..tuned
        };
        let run = run_atwood_cycle(&c, &setup, AtwoodMode::Corrected, 10).unwrap();
        assert_eq!(run.outcome, Outcome::Halted { cycle: 1 }, "factor {factor}");
        assert!(run.ledger.max_drift() < 1e-12);
    }
}

#[test]
fn morrison_storage_equals_excitation_work() {
    for (g, gap, l) in [(0.01, 1.0, 1.0), (0.002, 3.0, 5.0), (1e-4, 0.5, 20.0)] {
        let c = GravContext::new(g, 2.0).unwrap();
        let run = run_atwood_cycle(
            &c,
            &Atwood::calibrated(&c, gap, l),
            AtwoodMode::MorrisonOriginal,
            3,
        )
        .unwrap();
        assert_eq!(run.outcome, Outcome::Halted { cycle: 1 });
        let expected = g * gap * l / 4.0;
        let stored = run.ledger.balance(Account::StorageCell);
        assert!(
            (stored - expected).abs() <= 1e-15 * expected,
            "{stored} vs {expected}"
        );
    }
}

#[test]
fn morrison_gain_vanishes_as_height_shrinks() {
    let c = ctx(0.01);
    let mut last = f64::INFINITY;
    for l in [1.0, 1e-2, 1e-4, 1e-6] {
        let run = run_atwood_cycle(
            &c,
            &Atwood::calibrated(&c, 1.0, l),
            AtwoodMode::MorrisonOriginal,
            1,
        )
        .unwrap();
        let stored = run.ledger.balance(Account::StorageCell);
        assert!(stored < last);
        last = stored;
    }
    assert!(last < 1e-7);
}

#[test]
fn pair_cycle_gain_is_linear_in_mass_and_height() {
    let g = 0.01;
    let c = ctx(g);
    for m in linspace(0.5, 2.5, 5) {
        for l in linspace(1.0, 5.0, 5) {
            let ledger = run_pair_cycle(&c, m, l).unwrap();
            let expected = 2.0 * m * g * l;
            let kinetic = ledger.balance(Account::Kinetic);
            assert!(
                (kinetic - expected).abs() <= 1e-15 * expected,
                "m={m} L={l}"
            );
            assert!(ledger.max_drift() < 1e-12);
        }
    }
}

proptest! {
    #[test]
    fn every_step_conserves_total(g in 1e-4f64..0.05, gap in 0.1f64..10.0, l in 0.1f64..5.0, cycles in 1usize..20) {
        let c = ctx(g);
        for mode in [AtwoodMode::Corrected, AtwoodMode::MorrisonOriginal] {
            let run = run_atwood_cycle(&c, &Atwood::calibrated(&c, gap, l), mode, cycles).unwrap();
            let scale = gap.max(1.0);
            for step in &run.ledger.history {
                prop_assert!((step.total - run.ledger.initial_total()).abs() < 1e-12 * scale);
                prop_assert!(step.deltas.iter().sum::<f64>().abs() < 1e-12 * scale);
            }
        }
    }
}
