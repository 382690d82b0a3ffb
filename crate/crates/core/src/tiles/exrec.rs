use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::{
    content_hash, parallel, splice, validate, GridCoord, Layer, LocationType, Schedule, Structure, ValidationReport,
};

use super::routing::cnot_routing;
use super::{build_ed_on, build_ed_with_layout, data_sites, EdLayout, EdVariant, TileSize};

pub const EXREC_FORMAT: &str = "knill2d.exrec";
const EXREC_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ExRecError {
    #[error("schedule {name:?} failed validation: {report:?}")]
    Invalid { name: String, report: ValidationReport },
    #[error("decoder entry does not match the noisy exit on tile {0}")]
    Seam(u32),
    #[error("decoder layers must all be fault-free")]
    NoisyDecoder,
    #[error("malformed exRec JSON: {0}")]
    Json(String),
}

/// Noisy CNOT exRec followed by an ideal ED per tile acting as decoder.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExRec {
    pub name: String,
    pub noisy: Schedule,
    pub decoder: Schedule,
}

impl ExRec {
    pub fn new(name: &str, noisy: Schedule, mut decoder: Schedule) -> Result<ExRec, ExRecError> {
        for layer in &mut decoder.layers {
            layer.fault_free = true;
        }
        let rec = ExRec { name: name.to_string(), noisy, decoder };
        rec.check()?;
        Ok(rec)
    }

    pub fn check(&self) -> Result<(), ExRecError> {
        for s in [&self.noisy, &self.decoder] {
            let report = validate(s);
            if !report.is_empty() {
                return Err(ExRecError::Invalid { name: s.name.clone(), report });
            }
        }
        if self.decoder.layers.iter().any(|l| !l.fault_free) {
            return Err(ExRecError::NoisyDecoder);
        }
        for b in &self.noisy.exit_blocks {
            let ok = self.decoder.entry_blocks.iter().any(|d| d.tile == b.tile && d.sites == b.sites);
            if !ok {
                return Err(ExRecError::Seam(b.tile));
            }
        }
        if self.noisy.exit_blocks.len() != self.decoder.entry_blocks.len() {
            return Err(ExRecError::Seam(0));
        }
        Ok(())
    }

    pub fn content_hash(&self) -> String {
        content_hash(self)
    }

    pub fn num_tiles(&self) -> usize {
        self.noisy.entry_blocks.len()
    }
}

pub fn exrec_to_json(rec: &ExRec) -> String {
    let v = serde_json::json!({ "format": EXREC_FORMAT, "version": EXREC_VERSION, "exrec": rec });
    serde_json::to_string_pretty(&v).expect("exRec serializes")
}

pub fn exrec_from_json(text: &str) -> Result<ExRec, ExRecError> {
    #[derive(Deserialize)]
    struct Doc {
        format: String,
        version: u32,
        exrec: ExRec,
    }
    let doc: Doc = serde_json::from_str(text).map_err(|e| ExRecError::Json(e.to_string()))?;
    if doc.format != EXREC_FORMAT || doc.version != EXREC_VERSION {
        return Err(ExRecError::Json(format!("unexpected format {:?} v{}", doc.format, doc.version)));
    }
    Ok(doc.exrec)
}

fn pair(variant: EdVariant, size: TileSize, structure: Structure) -> Schedule {
    parallel(&[build_ed_on(variant, size, structure, 0, 2), build_ed_on(variant, size, structure, 1, 2)])
        .expect("tiles are disjoint")
}

fn mark_pre_arrival(s: &mut Schedule, steps: u32) {
    for layer in s.layers.iter_mut().take(steps as usize) {
        layer.pre_arrival = true;
    }
}

/// Two-tile CNOT exRec: ED+ on both tiles, transversal CNOT, ED0 on both,
/// then an ideal ED+ per tile as decoder.
pub fn build_cnot_exrec(size: TileSize) -> ExRec {
    let name = format!("cnot_exrec_{}", size.label());
    let (noisy, decoder) = match size {
        TileSize::Nonlocal => nonlocal(),
        _ => local(size),
    };
    ExRec::new(&name, noisy.with_idles(), decoder).expect("shipped exRec is consistent")
}

/// ED0 timing per tile: start step of the Bell-pair preparation and how
/// many steps earlier the (a, b) ancilla blocks are prepared.
struct ZeroTiming {
    start: [u32; 2],
    lead: [(u32, u32); 2],
}

fn local(size: TileSize) -> (Schedule, Schedule) {
    let mut ed_plus = pair(EdVariant::Plus, size, Structure::I);
    mark_pre_arrival(&mut ed_plus, 3);
    let routing = cnot_routing(size);
    let noisy = match size {
        // Routing starts with the ED+ measurement layer; ED0 ancillas are
        // prepared while the last routing SWAPs run.
        TileSize::FiveByFive => {
            let routed = splice(&ed_plus, &routing, 4).expect("routing follows ED+");
            let zero_start = routed.num_steps() as u32 - 3;
            let ed_zero = pair(EdVariant::Zero, size, Structure::I);
            splice(&routed, &ed_zero, zero_start).expect("ED0 follows routing")
        }
        // Routing starts with the ED+ data CNOT layer. Tile 0 runs its ED0
        // one step ahead of tile 1, whose ancillas are prepared two steps
        // early and wait.
        _ => {
            let routed = splice(&ed_plus, &routing, 3).expect("routing follows ED+");
            let timing = ZeroTiming { start: [11, 12], lead: [(0, 0), (2, 2)] };
            let (ed_zero, first) = staggered_zero(size, &timing);
            splice(&routed, &ed_zero, first - 1).expect("ED0 follows routing")
        }
    };
    let mut noisy = noisy;
    noisy.name = format!("cnot_exrec_{}_noisy", size.label());
    let decoder = pair(EdVariant::Plus, size, Structure::II);
    (noisy, decoder)
}

/// Copy of `s` with `k` empty layers in front.
fn delayed(s: &Schedule, k: u32) -> Schedule {
    let mut out = s.clone();
    let mut layers: Vec<Layer> = (1..=k).map(|time| Layer { time, ..Layer::default() }).collect();
    for mut layer in out.layers.drain(..) {
        layer.time += k;
        for loc in &mut layer.locations {
            loc.time += k;
        }
        layers.push(layer);
    }
    out.layers = layers;
    for u in &mut out.frame_updates {
        u.time += k;
    }
    out
}

/// Moves the preparations on `sites` `lead` steps earlier.
fn advance_preps(s: &mut Schedule, sites: &[GridCoord; 4], lead: u32) {
    if lead == 0 {
        return;
    }
    let mut moved = Vec::new();
    for layer in &mut s.layers {
        let (keep, go): (Vec<_>, Vec<_>) =
            layer.locations.drain(..).partition(|l| !(l.kind.is_prep() && sites.contains(&l.operands[0])));
        layer.locations = keep;
        moved.extend(go);
    }
    for mut loc in moved {
        loc.time -= lead;
        s.layers[loc.time as usize - 1].locations.push(loc);
    }
}

/// ED0 pair with per-tile start and ancilla lead; returns the schedule and
/// the exRec step of its first layer.
fn staggered_zero(size: TileSize, timing: &ZeroTiming) -> (Schedule, u32) {
    let origin = (0..2).map(|t| timing.start[t] - timing.lead[t].0.max(timing.lead[t].1)).min().expect("two tiles");
    let tiles: Vec<Schedule> = (0..2u32)
        .map(|t| {
            let k = t as usize;
            let mut s = delayed(&build_ed_on(EdVariant::Zero, size, Structure::I, t, 2), timing.start[k] - origin);
            let layout = EdLayout::standard(EdVariant::Zero, size, Structure::I, t);
            advance_preps(&mut s, &layout.a, timing.lead[k].0);
            advance_preps(&mut s, &layout.b, timing.lead[k].1);
            s
        })
        .collect();
    (parallel(&tiles).expect("tiles are disjoint"), origin)
}

fn nonlocal() -> (Schedule, Schedule) {
    let size = TileSize::Nonlocal;
    let grid = size.grid(2);
    let mut ed_plus = pair(EdVariant::Plus, size, Structure::I);
    mark_pre_arrival(&mut ed_plus, 3);

    let mut cnot = Schedule::empty("transversal_cnot_nonlocal", grid.clone());
    cnot.entry_structure = Some(Structure::II);
    cnot.exit_structure = Some(Structure::II);
    let centre = |t| data_sites(size, Structure::II, t);
    cnot.entry_blocks = (0..2).map(|t| crate::circuit::LogicalBlock::new(t, centre(t))).collect();
    cnot.exit_blocks = cnot.entry_blocks.clone();
    for k in 0..4 {
        cnot.push(1, LocationType::Cnot, vec![centre(0)[k], centre(1)[k]]);
    }

    // ED0 with its output block on the otherwise unused top row, so its
    // ancillas can be prepared while ED+ is still running.
    let top_row = |t| [1, 2, 3, 4].map(|c| GridCoord::new(0, c, t));
    let row_side = |t| [(1, 2), (4, 2), (1, 3), (4, 3)].map(|(r, c)| GridCoord::new(r, c, t));
    let ed_zero = parallel(
        &(0..2)
            .map(|t| {
                let layout = EdLayout { a: row_side(t), b: top_row(t), b_moves: None };
                build_ed_with_layout(
                    EdVariant::Zero,
                    grid.clone(),
                    t,
                    centre(t),
                    &layout,
                    (Some(Structure::II), Some(Structure::I)),
                    &format!("ed_zero_nonlocal_t{t}"),
                )
            })
            .collect::<Vec<_>>(),
    )
    .expect("tiles are disjoint");

    let with_cnot = splice(&ed_plus, &cnot, 5).expect("CNOT follows ED+");
    let mut noisy = splice(&with_cnot, &ed_zero, 3).expect("ED0 overlaps ED+");
    noisy.name = "cnot_exrec_nonlocal_noisy".into();

    let decoder = parallel(
        &(0..2)
            .map(|t| {
                let layout = EdLayout::standard(EdVariant::Plus, size, Structure::I, t);
                build_ed_with_layout(
                    EdVariant::Plus,
                    grid.clone(),
                    t,
                    top_row(t),
                    &layout,
                    (Some(Structure::I), Some(Structure::II)),
                    &format!("decoder_nonlocal_t{t}"),
                )
            })
            .collect::<Vec<_>>(),
    )
    .expect("tiles are disjoint");
    (noisy, decoder)
}
