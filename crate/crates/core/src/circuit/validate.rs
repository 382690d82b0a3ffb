use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::Serialize;

use super::{advance_liveness, GridCoord, LocationType, Schedule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    TimeMismatch,
    DuplicateId,
    Arity,
    OutOfBounds,
    LayerConflict,
    Locality,
    Orientation,
    SwapRule,
    DeadOperand,
    PrepOnLive,
    Check,
    FrameUpdate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub location: Option<u32>,
    pub time: Option<u32>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.kind)?;
        if let Some(id) = self.location {
            write!(f, " at location {id}")?;
        }
        if let Some(t) = self.time {
            write!(f, " (t={t})")?;
        }
        write!(f, ": {}", self.detail)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn count(&self, kind: ViolationKind) -> usize {
        self.violations.iter().filter(|v| v.kind == kind).count()
    }
}

/// Checks layer exclusivity, locality, the SWAP rule, liveness and the
/// consistency of checks and frame updates.
pub fn validate(s: &Schedule) -> ValidationReport {
    let mut out = Vec::new();
    let mut push = |kind, location, time, detail: String| out.push(Violation { kind, location, time, detail });

    let mut ids = HashSet::new();
    let mut meas_ids = HashSet::new();
    let mut meas_time = std::collections::HashMap::new();
    for b in s.entry_blocks.iter().chain(&s.exit_blocks) {
        for site in b.sites {
            if !s.grid.contains(site) {
                push(ViolationKind::OutOfBounds, None, None, format!("block site {site} outside the grid"));
            }
        }
    }

    let mut live: BTreeSet<GridCoord> = s.initial_live();
    let mut live_after = Vec::with_capacity(s.layers.len());
    for (k, layer) in s.layers.iter().enumerate() {
        let t = k as u32 + 1;
        if layer.time != t {
            push(ViolationKind::TimeMismatch, None, Some(layer.time), format!("layer {k} labelled t={}", layer.time));
        }
        let mut used = HashSet::new();
        for loc in &layer.locations {
            let id = Some(loc.id);
            if !ids.insert(loc.id) {
                push(ViolationKind::DuplicateId, id, Some(t), "id reused".into());
            }
            if loc.time != layer.time {
                push(ViolationKind::TimeMismatch, id, Some(t), format!("location says t={}", loc.time));
            }
            if loc.operands.len() != loc.kind.arity() {
                push(ViolationKind::Arity, id, Some(t), format!("{} with {} operands", loc.kind, loc.operands.len()));
                continue;
            }
            let mut in_bounds = true;
            for &site in &loc.operands {
                if !s.grid.contains(site) {
                    push(ViolationKind::OutOfBounds, id, Some(t), format!("{site} outside the grid"));
                    in_bounds = false;
                }
                if !used.insert(site) {
                    push(ViolationKind::LayerConflict, id, Some(t), format!("{site} used twice in one layer"));
                }
            }
            if !in_bounds {
                continue;
            }
            if loc.kind.arity() == 2 {
                let (a, b) = (loc.operands[0], loc.operands[1]);
                let axis = s.grid.axis(a, b);
                if s.grid.nearest_neighbor && s.grid.manhattan(a, b) != 1 {
                    push(ViolationKind::Locality, id, Some(t), format!("{a} and {b} are not neighbours"));
                } else if axis != loc.orientation {
                    push(ViolationKind::Orientation, id, Some(t), format!("stored {:?}, axis is {axis:?}", loc.orientation));
                }
            }
            let is_live = |c: &GridCoord| live.contains(c);
            match loc.kind {
                LocationType::PrepPlus | LocationType::PrepZero => {
                    if is_live(&loc.operands[0]) {
                        push(ViolationKind::PrepOnLive, id, Some(t), format!("{} already live", loc.operands[0]));
                    }
                }
                LocationType::Swap => {
                    let (la, lb) = (is_live(&loc.operands[0]), is_live(&loc.operands[1]));
                    if la == lb {
                        let what = if la { "two live qubits" } else { "two dummies" };
                        push(ViolationKind::SwapRule, id, Some(t), format!("swap of {what}"));
                    }
                }
                _ => {
                    for site in &loc.operands {
                        if !is_live(site) {
                            push(ViolationKind::DeadOperand, id, Some(t), format!("{} on dummy {site}", loc.kind));
                        }
                    }
                }
            }
            if loc.kind.is_measurement() {
                meas_ids.insert(loc.id);
                meas_time.insert(loc.id, t);
            }
        }
        advance_liveness(&mut live, &layer.locations);
        live_after.push(live.clone());
    }

    for b in &s.exit_blocks {
        for site in b.sites {
            if !live.contains(&site) && !s.layers.is_empty() {
                push(ViolationKind::DeadOperand, None, None, format!("exit site {site} is not live at the end"));
            }
        }
    }

    for c in &s.detection_checks {
        for m in &c.measurements {
            if !meas_ids.contains(m) {
                push(ViolationKind::Check, Some(*m), None, format!("check {:?} names a non-measurement", c.label));
            }
        }
        if c.expected_parity > 1 {
            push(ViolationKind::Check, None, None, format!("check {:?} parity {}", c.label, c.expected_parity));
        }
    }
    for u in &s.frame_updates {
        if u.time == 0 || u.time as usize > s.layers.len() {
            push(ViolationKind::FrameUpdate, None, Some(u.time), format!("update {:?} outside the schedule", u.label));
            continue;
        }
        for m in &u.condition {
            match meas_time.get(m) {
                Some(&mt) if mt <= u.time => {}
                _ => push(ViolationKind::FrameUpdate, Some(*m), Some(u.time), format!("update {:?} condition", u.label)),
            }
        }
        if u.sites.len() != u.pauli.chars().count() {
            push(ViolationKind::FrameUpdate, None, Some(u.time), format!("update {:?} arity", u.label));
        }
        for site in &u.sites {
            if !live_after[u.time as usize - 1].contains(site) {
                push(ViolationKind::FrameUpdate, None, Some(u.time), format!("update {:?} targets dummy {site}", u.label));
            }
        }
    }
    ValidationReport { violations: out }
}
