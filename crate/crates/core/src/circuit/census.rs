use serde::{Deserialize, Serialize};

use super::{validate, Layer, LocationType, Orientation, Schedule, ValidationReport};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientationCounts {
    pub v_cnot: u64,
    pub h_cnot: u64,
    pub v_swap: u64,
    pub h_swap: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocationCensus {
    /// Indexed by `LocationType::index()`.
    pub counts: [u64; 7],
    pub total: u64,
    pub gate_total: u64,
    pub swap_total: u64,
    pub time_steps: u64,
    pub orientation: OrientationCounts,
}

impl LocationCensus {
    pub fn count(&self, t: LocationType) -> u64 {
        self.counts[t.index()]
    }

    pub fn idle(&self) -> u64 {
        self.count(LocationType::Idle)
    }

    /// Census with every location of type `t` removed.
    pub fn without(&self, t: LocationType) -> LocationCensus {
        let mut c = *self;
        c.counts[t.index()] = 0;
        c.refresh_totals();
        if t == LocationType::Swap {
            c.orientation.v_swap = 0;
            c.orientation.h_swap = 0;
        }
        if t == LocationType::Cnot {
            c.orientation.v_cnot = 0;
            c.orientation.h_cnot = 0;
        }
        c
    }

    fn refresh_totals(&mut self) {
        self.total = self.counts.iter().sum();
        self.gate_total = self.total - self.idle();
        self.swap_total = self.count(LocationType::Swap);
    }
}

/// Census of an explicit list of layers; layers marked fault-free are
/// skipped. IDLE locations are counted as they appear.
pub fn census_of_layers(layers: &[Layer]) -> LocationCensus {
    let mut c = LocationCensus::default();
    for layer in layers.iter().filter(|l| !l.fault_free) {
        c.time_steps += 1;
        for loc in &layer.locations {
            c.counts[loc.kind.index()] += 1;
            match (loc.kind, loc.orientation) {
                (LocationType::Cnot, Orientation::Vertical) => c.orientation.v_cnot += 1,
                (LocationType::Cnot, Orientation::Horizontal) => c.orientation.h_cnot += 1,
                (LocationType::Swap, Orientation::Vertical) => c.orientation.v_swap += 1,
                (LocationType::Swap, Orientation::Horizontal) => c.orientation.h_swap += 1,
                _ => {}
            }
        }
    }
    c.refresh_totals();
    c
}

/// Per-type counts of the noisy part of a valid schedule, with IDLE
/// locations synthesized where the schedule leaves a live qubit unoperated.
pub fn census(s: &Schedule) -> Result<LocationCensus, ValidationReport> {
    let report = validate(s);
    if !report.is_empty() {
        return Err(report);
    }
    Ok(census_of_layers(&s.with_idles().layers))
}
