use std::collections::BTreeSet;
use std::path::Path;

use knill2d::circuit::{
    census, compose, content_hash, schedule_from_json, schedule_to_json, validate, ComposeError, LocationType, Schedule,
    Structure, ViolationKind,
};
use knill2d::tiles::{
    build_cnot_exrec, build_ed, build_prep, deviation_report, exrec_from_json, gate_count_matrix, EdSwaps, EdVariant,
    OpKind, PrepKind, TileSize, TileSpec,
};

fn data(rel: &str) -> String {
    let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/v1").join(rel);
    std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

fn all_single_tile() -> Vec<(String, Schedule)> {
    let mut out = Vec::new();
    for size in TileSize::ALL {
        for (v, tag) in [(EdVariant::Plus, "plus"), (EdVariant::Zero, "zero")] {
            for st in [Structure::I, Structure::II] {
                out.push((format!("ed_{tag}_{st}_{}", size.label()), build_ed(v, &TileSpec::new(size, st))));
            }
        }
        for (k, tag) in [(PrepKind::Plus, "plus"), (PrepKind::Zero, "zero")] {
            out.push((format!("prep_{tag}_{}", size.label()), build_prep(k, &TileSpec::new(size, Structure::I))));
        }
    }
    out
}

#[test]
fn every_shipped_schedule_validates() {
    for (name, s) in all_single_tile() {
        assert!(validate(&s).is_empty(), "{name}: {:?}", validate(&s));
    }
    for size in TileSize::ALL {
        let rec = build_cnot_exrec(size);
        rec.check().unwrap();
        for s in [&rec.noisy, &rec.decoder] {
            for layer in &s.layers {
                let mut seen = BTreeSet::new();
                for loc in &layer.locations {
                    for op in &loc.operands {
                        assert!(seen.insert(*op), "{} t={} reuses {op}", s.name, layer.time);
                    }
                }
            }
        }
    }
}

#[test]
fn ed_census_matches_gate_count_table() {
    let m = gate_count_matrix();
    for size in [TileSize::FiveByFive, TileSize::FourByFour] {
        for variant in [EdVariant::Plus, EdVariant::Zero] {
            for st in [Structure::I, Structure::II] {
                let s = build_ed(variant, &TileSpec::new(size, st));
                let c = census(&s).unwrap();
                let swaps = match (variant, st) {
                    (_, Structure::I) => EdSwaps::STRUCTURE_I,
                    (EdVariant::Plus, Structure::II) => EdSwaps::ED_PLUS_STRUCTURE_II,
                    (EdVariant::Zero, Structure::II) => EdSwaps::ED_ZERO_STRUCTURE_II,
                };
                let want = |k| m.resolved(k, OpKind::Ed, swaps);
                assert_eq!(c.orientation.v_cnot, want(OpKind::VCnot), "{}", s.name);
                assert_eq!(c.orientation.h_cnot, want(OpKind::HCnot), "{}", s.name);
                assert_eq!(c.orientation.v_swap, want(OpKind::VSwap), "{}", s.name);
                assert_eq!(c.orientation.h_swap, want(OpKind::HSwap), "{}", s.name);
                assert_eq!(c.count(LocationType::PrepPlus), want(OpKind::PrepPlus));
                assert_eq!(c.count(LocationType::PrepZero), want(OpKind::PrepZero));
                assert_eq!(c.count(LocationType::MeasX), want(OpKind::MeasX));
                assert_eq!(c.count(LocationType::MeasZ), want(OpKind::MeasZ));
                let steps = if st == Structure::I { 5 } else { 6 };
                assert_eq!(c.time_steps, steps, "{}", s.name);
            }
        }
    }
}

#[test]
fn ed_zero_uses_the_same_operations_as_ed_plus() {
    for size in TileSize::ALL {
        let a = census(&build_ed(EdVariant::Plus, &TileSpec::new(size, Structure::I))).unwrap();
        let b = census(&build_ed(EdVariant::Zero, &TileSpec::new(size, Structure::I))).unwrap();
        assert_eq!(a.counts, b.counts);
        assert_eq!(a.time_steps, b.time_steps);
    }
}

#[test]
fn prep_census_matches_gate_count_table() {
    let m = gate_count_matrix();
    for size in [TileSize::FiveByFive, TileSize::FourByFour] {
        for (kind, col) in [(PrepKind::Plus, OpKind::PrepPlus), (PrepKind::Zero, OpKind::PrepZero)] {
            let c = census(&build_prep(kind, &TileSpec::new(size, Structure::I))).unwrap();
            let want = |k| m.resolved(k, col, EdSwaps::STRUCTURE_I);
            assert_eq!(c.orientation.v_cnot, want(OpKind::VCnot));
            assert_eq!(c.orientation.h_cnot, want(OpKind::HCnot));
            assert_eq!(c.orientation.v_swap, want(OpKind::VSwap));
            assert_eq!(c.orientation.h_swap, want(OpKind::HSwap));
            assert_eq!(c.count(LocationType::PrepPlus), want(OpKind::PrepPlus));
            assert_eq!(c.count(LocationType::PrepZero), want(OpKind::PrepZero));
        }
    }
}

#[test]
fn exrec_censuses() {
    let c = census(&build_cnot_exrec(TileSize::FiveByFive).noisy).unwrap();
    assert_eq!((c.total, c.idle(), c.time_steps, c.gate_total, c.swap_total), (196, 32, 14, 164, 48));
    let c = census(&build_cnot_exrec(TileSize::FourByFour).noisy).unwrap();
    assert_eq!((c.total, c.idle(), c.time_steps, c.gate_total, c.swap_total), (228, 74, 16, 154, 38));
    let c = census(&build_cnot_exrec(TileSize::Nonlocal).noisy).unwrap();
    assert_eq!((c.total, c.idle(), c.time_steps, c.swap_total), (148, 32, 8, 0));
}

#[test]
fn empty_schedule_has_zero_census() {
    let s = Schedule::empty("empty", TileSize::FiveByFive.grid(1));
    let c = census(&s).unwrap();
    assert_eq!((c.total, c.time_steps), (0, 0));
}

#[test]
fn json_round_trip_is_identity() {
    for (name, s) in all_single_tile() {
        let text = schedule_to_json(&s);
        let back = schedule_from_json(&text).unwrap();
        assert_eq!(back, s, "{name}");
        assert_eq!(schedule_to_json(&back), text, "{name}");
    }
}

#[test]
fn shipped_data_matches_builders() {
    for (name, s) in all_single_tile() {
        let shipped = schedule_from_json(&data(&format!("schedules/{name}.json"))).unwrap();
        assert_eq!(shipped, s, "{name}");
        assert_eq!(content_hash(&shipped), content_hash(&s));
    }
    for size in TileSize::ALL {
        let shipped = exrec_from_json(&data(&format!("schedules/cnot_exrec_{}.json", size.label()))).unwrap();
        assert_eq!(shipped, build_cnot_exrec(size), "{}", size.label());
    }
    let shipped: serde_json::Value = serde_json::from_str(&data("deviation_report.json")).unwrap();
    assert_eq!(shipped, serde_json::to_value(deviation_report()).unwrap());
}

#[test]
fn swapping_two_live_data_qubits_is_one_violation() {
    let ed = build_ed(EdVariant::Plus, &TileSpec::new(TileSize::FiveByFive, Structure::I));
    let a = TileSize::FiveByFive.site(1, 1, 0);
    let b = TileSize::FiveByFive.site(1, 2, 0);
    assert_eq!(ed.entry_blocks[0].sites[0], a);
    let mut s = Schedule::empty("two_live", ed.grid.clone());
    s.entry_blocks = ed.entry_blocks.clone();
    s.push(1, LocationType::PrepZero, vec![b]);
    s.push(2, LocationType::Swap, vec![a, b]);
    let report = validate(&s);
    assert_eq!(report.violations.len(), 1, "{report:?}");
    assert_eq!(report.violations[0].kind, ViolationKind::SwapRule);
}

#[test]
fn compose_identity_and_tag_rule() {
    let a = build_ed(EdVariant::Plus, &TileSpec::new(TileSize::FiveByFive, Structure::I));
    assert_eq!(compose(std::slice::from_ref(&a)).unwrap(), a);
    let err = compose(&[a.clone(), a.clone()]).unwrap_err();
    assert!(matches!(err, ComposeError::StructureMismatch { .. }));
    assert!(matches!(compose(&[]), Err(ComposeError::Empty)));
}

#[test]
fn compose_renumbers_bijectively_and_adds_censuses() {
    for size in [TileSize::FiveByFive, TileSize::FourByFour] {
        let a = build_ed(EdVariant::Plus, &TileSpec::new(size, Structure::I));
        let b = build_ed(EdVariant::Zero, &TileSpec::new(size, Structure::II));
        let ab = compose(&[a.clone(), b.clone()]).unwrap();
        let ids: BTreeSet<u32> = ab.locations().map(|l| l.id).collect();
        let n = a.locations().count() + b.locations().count();
        assert_eq!(ids.len(), n);
        assert_eq!(ids, (0..n as u32).collect());
        assert!(validate(&ab).is_empty(), "{:?}", validate(&ab));
        let (ca, cb, cab) = (census(&a).unwrap(), census(&b).unwrap(), census(&ab).unwrap());
        assert_eq!(cab.total, ca.total + cb.total);
        assert_eq!(cab.time_steps, ca.time_steps + cb.time_steps);
        assert_eq!(ab.detection_checks.len(), 4);
        assert_eq!(ab.frame_updates.len(), 4);
    }
}

#[test]
fn deviation_report_lists_the_published_conflicts() {
    let r = deviation_report();
    let find = |s: &str, m: &str| r.iter().find(|d| d.schedule == s && d.target_metric == m);
    assert_eq!(find("cnot_exrec_5x5", "gate_total").unwrap().realized_value, 164.0);
    assert_eq!(find("cnot_exrec_5x5", "swap_total").unwrap().realized_value, 48.0);
    assert!(find("cnot_exrec_5x5", "total").is_none());
    assert!(find("cnot_exrec_4x4", "swap_total").is_none());
    assert!(find("cnot_exrec_4x4", "idle").is_none());
    assert!(find("cnot_exrec_4x4", "time_steps").is_none());
}
