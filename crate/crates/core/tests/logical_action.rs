mod common;

use common::{run, Input};
use knill2d::circuit::{Schedule, Structure};
use knill2d::tiles::{build_cnot_exrec, build_ed, build_prep, EdVariant, PrepKind, TileSize, TileSpec};

const SEEDS: u64 = 6;

fn assert_ed_identity(s: &Schedule, variant: EdVariant) {
    for seed in 0..SEEDS {
        for flip in [false, true] {
            for (input, logical) in [(Input::PlusZero { flip }, "X^L"), (Input::ZeroPlus { flip }, "Z^L")] {
                let mut r = run(s, &[input], seed);
                assert!(!r.detected, "{}: fault-free run detected", s.name);
                let out = s.exit_blocks[0].clone();
                for stab in ["XXXX", "ZZZZ"] {
                    let op = r.op(&out, stab);
                    assert_eq!(r.sign(&op), Some(true), "{} {stab}", s.name);
                }
                let op = r.op(&out, logical);
                assert_eq!(r.sign(&op), Some(!flip), "{} {logical} {input:?}", s.name);
                // The spectator is refreshed by the teleportation ancilla.
                let spectator = match variant {
                    EdVariant::Plus => "X^S",
                    EdVariant::Zero => "Z^S",
                };
                let op = r.op(&out, spectator);
                assert!(r.sign(&op).is_some(), "{} {spectator} indefinite", s.name);
            }
        }
    }
}

#[test]
fn every_ed_is_a_logical_identity() {
    for size in TileSize::ALL {
        for variant in [EdVariant::Plus, EdVariant::Zero] {
            for structure in [Structure::I, Structure::II] {
                let s = build_ed(variant, &TileSpec::new(size, structure));
                assert_ed_identity(&s, variant);
            }
        }
    }
}

#[test]
fn preparations_produce_encoded_states() {
    for size in TileSize::ALL {
        for (kind, checks) in [(PrepKind::Plus, [("X^L", true), ("Z^S", true)]), (PrepKind::Zero, [("Z^L", true), ("X^S", true)])] {
            let s = build_prep(kind, &TileSpec::new(size, Structure::I));
            let mut r = run(&s, &[], 0);
            let out = s.exit_blocks[0].clone();
            for (name, sign) in [("XXXX", true), ("ZZZZ", true)].into_iter().chain(checks) {
                let op = r.op(&out, name);
                assert_eq!(r.sign(&op), Some(sign), "{} {name}", s.name);
            }
        }
    }
}

#[test]
fn exrec_noisy_part_is_a_logical_cnot() {
    for size in TileSize::ALL {
        let rec = build_cnot_exrec(size);
        let s = &rec.noisy;
        let (o0, o1) = (s.exit_blocks[0].clone(), s.exit_blocks[1].clone());
        for seed in 0..SEEDS {
            for (a, b) in [(false, false), (true, false), (false, true), (true, true)] {
                // X_c -> X_c X_t and Z_t -> Z_c Z_t.
                let mut r = run(s, &[Input::PlusZero { flip: a }, Input::ZeroPlus { flip: b }], seed);
                assert!(!r.detected, "{}", s.name);
                let xx = r.product(&[(&o0, "X^L"), (&o1, "X^L")]);
                let zz = r.product(&[(&o0, "Z^L"), (&o1, "Z^L")]);
                assert_eq!(r.sign(&xx), Some(!a), "{} XX", s.name);
                assert_eq!(r.sign(&zz), Some(!b), "{} ZZ", s.name);
                for blk in [&o0, &o1] {
                    for stab in ["XXXX", "ZZZZ"] {
                        let op = r.op(blk, stab);
                        assert_eq!(r.sign(&op), Some(true), "{} {stab}", s.name);
                    }
                }
                // Z_c and X_t pass through unchanged.
                let mut r = run(s, &[Input::ZeroPlus { flip: a }, Input::PlusZero { flip: b }], seed);
                let z0 = r.op(&o0, "Z^L");
                let x1 = r.op(&o1, "X^L");
                assert_eq!(r.sign(&z0), Some(!a), "{} Z_c", s.name);
                assert_eq!(r.sign(&x1), Some(!b), "{} X_t", s.name);
            }
        }
    }
}

#[test]
fn exrec_decoder_is_a_logical_identity() {
    for size in TileSize::ALL {
        let rec = build_cnot_exrec(size);
        let d = &rec.decoder;
        for seed in 0..SEEDS {
            for flip in [false, true] {
                let mut r = run(d, &[Input::PlusZero { flip }, Input::ZeroPlus { flip: !flip }], seed);
                assert!(!r.detected);
                let x0 = r.op(&d.exit_blocks[0], "X^L");
                let z1 = r.op(&d.exit_blocks[1], "Z^L");
                assert_eq!(r.sign(&x0), Some(!flip), "{}", d.name);
                assert_eq!(r.sign(&z1), Some(flip), "{}", d.name);
            }
        }
    }
}
