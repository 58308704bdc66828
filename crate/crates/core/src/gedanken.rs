//! Energy bookkeeping for the antigravity gedanken experiments.
//!
//! Three scenarios run in a uniform field with potential `φ(z) = g z`:
//!
//! * Morrison's original Atwood cycle, with height-independent atomic levels
//!   and an energy drain on the falling pan.
//! * The corrected cycle, where the field lowers the excited level of the
//!   upper atom by `δE` and the machine height is chosen so the photon's
//!   redshift is exactly `δE`.
//! * The particle/antiparticle pair lifted, annihilated, blueshifted on the
//!   way down and recreated with extra kinetic energy.
//!
//! Each step posts balanced deltas to a [`Ledger`]; the total is checked,
//! not assumed. Shifts are first order in `g z / c^2`. The field account is
//! an unbounded reservoir: the drop in `g` from the mass it gives up is not
//! modelled.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GravContext {
    pub g: f64,
    pub c: f64,
}

impl GravContext {
    pub fn new(g: f64, c: f64) -> Result<Self> {
        if !(g > 0.0) || !(c > 0.0) {
            return Err(Error::Domain(format!(
                "need g > 0 and c > 0, got g={g}, c={c}"
            )));
        }
        Ok(GravContext { g, c })
    }

    pub fn potential(&self, z: f64) -> f64 {
        self.g * z
    }

    /// Energy change of a photon of energy `e` moving from `z_from` to
    /// `z_to`.
    pub fn photon_shift(&self, e: f64, z_from: f64, z_to: f64) -> f64 {
        -e * ((self.potential(z_to) - self.potential(z_from)) / (self.c * self.c))
    }

    /// `E' = E (1 - g (z_to - z_from) / c^2)`.
    pub fn shift_photon(&self, e: f64, z_from: f64, z_to: f64) -> Result<f64> {
        if !(e > 0.0) {
            return Err(Error::Domain(format!(
                "photon energy must be positive, got {e}"
            )));
        }
        let factor = 1.0 - (self.potential(z_to) - self.potential(z_from)) / (self.c * self.c);
        if !(factor > 0.0) {
            return Err(Error::UnphysicalShift { factor });
        }
        Ok(e + self.photon_shift(e, z_from, z_to))
    }

    /// Extra weight `g ΔE / c^2` of an atom carrying excitation `ΔE`.
    pub fn excitation_weight(&self, gap: f64) -> Result<f64> {
        if gap < 0.0 {
            return Err(Error::Domain(format!(
                "excitation energy must be non-negative, got {gap}"
            )));
        }
        Ok(self.g * gap / (self.c * self.c))
    }

    /// Height whose redshift removes exactly `level_shift` from a photon of
    /// energy `gap`.
    pub fn calibrate_height(&self, gap: f64, level_shift: f64) -> Result<f64> {
        if !(level_shift > 0.0 && level_shift < gap) {
            return Err(Error::Domain(format!(
                "need 0 < δE < ΔE, got δE={level_shift}, ΔE={gap}"
            )));
        }
        Ok(level_shift * self.c * self.c / (self.g * gap))
    }

    /// Level shift `ΔE g z / c^2` of an atom at height `z` under the
    /// distortion model `gap(z) = ΔE (1 - g z / c^2)`.
    pub fn level_shift_at(&self, gap: f64, z: f64) -> f64 {
        gap * (self.potential(z) / (self.c * self.c))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AtomState {
    Ground,
    Excited,
}

/// An atom in one of the pans.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub gap0: f64,
    pub z: f64,
    pub state: AtomState,
}

impl Atom {
    /// Local level spacing `gap0 (1 - g z / c^2)`.
    pub fn gap(&self, ctx: &GravContext) -> f64 {
        self.gap0 - ctx.level_shift_at(self.gap0, self.z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Account {
    AtomInternal,
    Photon,
    StorageCell,
    Field,
    Kinetic,
}

impl Account {
    pub const ALL: [Account; 5] = [
        Account::AtomInternal,
        Account::Photon,
        Account::StorageCell,
        Account::Field,
        Account::Kinetic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Account::AtomInternal => "atom_internal",
            Account::Photon => "photon",
            Account::StorageCell => "storage_cell",
            Account::Field => "field",
            Account::Kinetic => "kinetic",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LedgerStep {
    pub cycle: usize,
    pub label: &'static str,
    pub deltas: [f64; 5],
    pub balances: [f64; 5],
    pub total: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ledger {
    balances: [f64; 5],
    initial_total: f64,
    pub history: Vec<LedgerStep>,
}

impl Ledger {
    pub fn new(opening: &[(Account, f64)]) -> Self {
        let mut balances = [0.0; 5];
        for &(acc, x) in opening {
            balances[acc as usize] += x;
        }
        Ledger {
            balances,
            initial_total: balances.iter().sum(),
            history: Vec::new(),
        }
    }

    pub fn balance(&self, acc: Account) -> f64 {
        self.balances[acc as usize]
    }

    pub fn balances(&self) -> [f64; 5] {
        self.balances
    }

    pub fn total(&self) -> f64 {
        self.balances.iter().sum()
    }

    pub fn initial_total(&self) -> f64 {
        self.initial_total
    }

    pub fn post(&mut self, cycle: usize, label: &'static str, entries: &[(Account, f64)]) {
        let mut deltas = [0.0; 5];
        for &(acc, x) in entries {
            deltas[acc as usize] += x;
            self.balances[acc as usize] += x;
        }
        self.history.push(LedgerStep {
            cycle,
            label,
            deltas,
            balances: self.balances,
            total: self.total(),
        });
    }

    /// Largest `|total - initial total|` over all recorded steps.
    pub fn max_drift(&self) -> f64 {
        self.history
            .iter()
            .map(|s| (s.total - self.initial_total).abs())
            .fold(0.0, f64::max)
    }

    /// Net change of each account since the opening balances.
    pub fn net_deltas(&self) -> [f64; 5] {
        let mut net = [0.0; 5];
        for step in &self.history {
            for (n, d) in net.iter_mut().zip(step.deltas) {
                *n += d;
            }
        }
        net
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AtwoodMode {
    MorrisonOriginal,
    Corrected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Perpetual,
    Halted { cycle: usize },
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Perpetual => f.write_str("perpetual"),
            Outcome::Halted { cycle } => write!(f, "halted({cycle})"),
        }
    }
}

/// Machine geometry and atomic levels for an Atwood run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atwood {
    /// Level spacing `ΔE` at the bottom of the machine.
    pub gap: f64,
    /// Pan separation `L`.
    pub height: f64,
    /// `δE`, how far the upper atom's excited level sits below `ΔE` in the
    /// corrected cycle.
    pub level_shift: f64,
}

impl Atwood {
    /// Levels distorted for the machine's own height.
    pub fn calibrated(ctx: &GravContext, gap: f64, height: f64) -> Self {
        Atwood {
            gap,
            height,
            level_shift: ctx.level_shift_at(gap, height),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AtwoodRun {
    pub ledger: Ledger,
    pub outcome: Outcome,
}

/// Fraction of `ΔE` by which photon and level may disagree and still
/// resonate.
pub const RESONANCE_TOLERANCE: f64 = 1e-12;

pub fn run_atwood_cycle(
    ctx: &GravContext,
    setup: &Atwood,
    mode: AtwoodMode,
    cycles: usize,
) -> Result<AtwoodRun> {
    use Account::*;

    let Atwood {
        gap,
        height,
        level_shift,
    } = *setup;
    if !(gap > 0.0 && height > 0.0) {
        return Err(Error::Domain(format!(
            "need ΔE > 0 and L > 0, got ΔE={gap}, L={height}"
        )));
    }
    if !(ctx.potential(height) / (ctx.c * ctx.c) < 1.0) {
        return Err(Error::Domain("g L / c^2 must be below 1".into()));
    }

    // The excited atom starts in the upper pan.
    let top_gap = match mode {
        AtwoodMode::MorrisonOriginal => gap,
        AtwoodMode::Corrected => gap - level_shift,
    };
    let mut ledger = Ledger::new(&[(AtomInternal, top_gap)]);

    for cycle in 1..=cycles {
        match mode {
            AtwoodMode::MorrisonOriginal => {
                let work = ctx.excitation_weight(gap)? * height;
                ledger.post(cycle, "descent", &[(Field, -work), (StorageCell, work)]);
            }
            AtwoodMode::Corrected => {
                // The field does work on the falling atom's levels.
                let gain = gap - top_gap;
                ledger.post(cycle, "descent", &[(Field, -gain), (AtomInternal, gain)]);
            }
        }
        ledger.post(cycle, "decay", &[(AtomInternal, -gap), (Photon, gap)]);

        let arrived = ctx.shift_photon(gap, 0.0, height)?;
        let shift = arrived - gap;
        ledger.post(cycle, "photon climb", &[(Photon, shift), (Field, -shift)]);

        if (arrived - top_gap).abs() > RESONANCE_TOLERANCE * gap {
            return Ok(AtwoodRun {
                ledger,
                outcome: Outcome::Halted { cycle },
            });
        }
        ledger.post(
            cycle,
            "absorption",
            &[(Photon, -arrived), (AtomInternal, arrived)],
        );
    }
    Ok(AtwoodRun {
        ledger,
        outcome: Outcome::Perpetual,
    })
}

/// The pair cycle: lift at no cost, annihilate at `L`, blueshift down,
/// recreate at the bottom.
pub fn run_pair_cycle(ctx: &GravContext, m: f64, height: f64) -> Result<Ledger> {
    use Account::*;

    if !(m > 0.0) || height < 0.0 {
        return Err(Error::Domain(format!(
            "need m > 0 and L >= 0, got m={m}, L={height}"
        )));
    }
    if !(2.0 * ctx.potential(height) / (ctx.c * ctx.c) < 1.0) {
        return Err(Error::Domain("2 g L / c^2 must be below 1".into()));
    }
    let rest = 2.0 * m * ctx.c * ctx.c;
    let mut ledger = Ledger::new(&[(AtomInternal, rest)]);

    // +m and -m: no net weight, so lifting costs nothing.
    ledger.post(1, "lift", &[]);
    ledger.post(1, "annihilation", &[(AtomInternal, -rest), (Photon, rest)]);
    let gain = ctx.photon_shift(rest, height, 0.0);
    ledger.post(1, "photon descent", &[(Photon, gain), (Field, -gain)]);
    ledger.post(
        1,
        "pair creation",
        &[
            (Photon, -(rest + gain)),
            (AtomInternal, rest),
            (Kinetic, gain),
        ],
    );
    Ok(ledger)
}
