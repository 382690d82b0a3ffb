use std::collections::HashMap;

use thiserror::Error;

use super::{FrameUpdate, Layer, LocationType, Schedule, Structure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComposeError {
    #[error("no parts to compose")]
    Empty,
    #[error("structure mismatch: part exits as {exit:?} but the next enters as {entry:?}")]
    StructureMismatch { exit: Option<Structure>, entry: Option<Structure> },
    #[error("grid mismatch between {0:?} and {1:?}")]
    GridMismatch(String, String),
    #[error("layer {0} mixes fault-free and noisy locations")]
    FlagConflict(u32),
}

/// Old-id -> new-id map assigning contiguous ids from `next` in id order.
fn renumber(s: &Schedule, next: &mut u32) -> HashMap<u32, u32> {
    let mut ids: Vec<u32> = s.locations().map(|l| l.id).collect();
    ids.sort_unstable();
    ids.into_iter()
        .map(|id| {
            let new = *next;
            *next += 1;
            (id, new)
        })
        .collect()
}

fn merge_into(out: &mut Schedule, part: &Schedule, offset: u32, map: &HashMap<u32, u32>) -> Result<(), ComposeError> {
    for layer in &part.layers {
        let t = layer.time + offset;
        let had_locations = out.layers.get(t as usize - 1).is_some_and(|l| !l.locations.is_empty());
        let target: &mut Layer = out.layer_mut(t);
        if had_locations && !layer.locations.is_empty() && target.fault_free != layer.fault_free {
            return Err(ComposeError::FlagConflict(t));
        }
        if !had_locations {
            target.fault_free = layer.fault_free;
        }
        target.pre_arrival |= layer.pre_arrival;
        for loc in &layer.locations {
            let mut l = loc.clone();
            l.id = map[&loc.id];
            l.time = t;
            target.locations.push(l);
        }
    }
    for c in &part.detection_checks {
        let mut c = c.clone();
        c.measurements = c.measurements.iter().map(|m| map[m]).collect();
        out.detection_checks.push(c);
    }
    for u in &part.frame_updates {
        let mut u = u.clone();
        u.time += offset;
        u.condition = u.condition.iter().map(|m| map[m]).collect();
        out.frame_updates.push(u);
    }
    Ok(())
}

/// Frame updates apply after their layer. A qubit SWAPped by the other part
/// after its own part last touched it receives its correction at the new
/// site.
fn follow_swaps(layers: &[Layer], updates: &mut [FrameUpdate], foreign: impl Fn(u32) -> bool) {
    for u in updates {
        let end = (u.time as usize).min(layers.len());
        for s in &mut u.sites {
            let native_touch = layers[..end]
                .iter()
                .rposition(|l| l.locations.iter().any(|loc| !foreign(loc.id) && loc.operands.contains(s)))
                .map_or(0, |k| k + 1);
            for layer in &layers[native_touch..end] {
                for loc in layer.locations.iter().filter(|l| l.kind == LocationType::Swap && foreign(l.id)) {
                    let (a, b) = (loc.operands[0], loc.operands[1]);
                    if *s == a {
                        *s = b;
                    } else if *s == b {
                        *s = a;
                    }
                }
            }
        }
    }
}

fn check_grid(a: &Schedule, b: &Schedule) -> Result<(), ComposeError> {
    if a.grid != b.grid {
        return Err(ComposeError::GridMismatch(a.name.clone(), b.name.clone()));
    }
    Ok(())
}

fn fresh(base: &Schedule, name: String) -> Schedule {
    let mut out = Schedule::empty(&name, base.grid.clone());
    out.entry_structure = base.entry_structure;
    out.entry_blocks = base.entry_blocks.clone();
    out
}

/// Runs `other` starting `offset` steps into `base`; overlapping layers are
/// merged. Ids of both parts are renumbered contiguously.
pub fn splice(base: &Schedule, other: &Schedule, offset: u32) -> Result<Schedule, ComposeError> {
    check_grid(base, other)?;
    if base.exit_structure != other.entry_structure {
        return Err(ComposeError::StructureMismatch { exit: base.exit_structure, entry: other.entry_structure });
    }
    let mut out = fresh(base, format!("{}+{}", base.name, other.name));
    let mut next = 0;
    let m1 = renumber(base, &mut next);
    let m2 = renumber(other, &mut next);
    merge_into(&mut out, base, 0, &m1)?;
    let base_updates = out.frame_updates.len();
    merge_into(&mut out, other, offset, &m2)?;
    let split = m1.len() as u32;
    let (first, second) = out.frame_updates.split_at_mut(base_updates);
    follow_swaps(&out.layers, first, |id| id >= split);
    follow_swaps(&out.layers, second, |id| id < split);
    out.exit_structure = other.exit_structure;
    out.exit_blocks = if other.exit_blocks.is_empty() { base.exit_blocks.clone() } else { other.exit_blocks.clone() };
    Ok(out)
}

/// Sequential composition with renumbered time steps and ids.
pub fn compose(parts: &[Schedule]) -> Result<Schedule, ComposeError> {
    let (first, rest) = parts.split_first().ok_or(ComposeError::Empty)?;
    let mut acc = first.clone();
    for p in rest {
        let offset = acc.num_steps() as u32;
        let name = format!("{}+{}", acc.name, p.name);
        acc = splice(&acc, p, offset)?;
        acc.name = name;
    }
    if rest.is_empty() {
        return Ok(first.clone());
    }
    Ok(acc)
}

/// Side-by-side union of schedules on disjoint sites, all starting at t=1.
pub fn parallel(parts: &[Schedule]) -> Result<Schedule, ComposeError> {
    let (first, _) = parts.split_first().ok_or(ComposeError::Empty)?;
    let name = parts.iter().map(|p| p.name.as_str()).collect::<Vec<_>>().join("|");
    let mut out = fresh(first, name);
    out.entry_blocks.clear();
    out.exit_structure = first.exit_structure;
    let mut next = 0;
    for p in parts {
        check_grid(first, p)?;
        if p.entry_structure != first.entry_structure || p.exit_structure != first.exit_structure {
            return Err(ComposeError::StructureMismatch { exit: first.exit_structure, entry: p.entry_structure });
        }
        let map = renumber(p, &mut next);
        merge_into(&mut out, p, 0, &map)?;
        out.entry_blocks.extend(p.entry_blocks.iter().cloned());
        out.exit_blocks.extend(p.exit_blocks.iter().cloned());
    }
    out.entry_blocks.sort_by_key(|b| b.tile);
    out.exit_blocks.sort_by_key(|b| b.tile);
    Ok(out)
}
