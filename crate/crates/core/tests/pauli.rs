use knill2d::clifford::{conjugate, conjugate_inverse, CliffordGate, GateKind};
use knill2d::oracle::oracle_statevector;
use knill2d::pauli::{c4, PauliOp};
use knill2d::tableau::Tableau;
use proptest::prelude::*;

const N: usize = 4;

fn pauli_op(n: usize) -> impl Strategy<Value = PauliOp> {
    let mask = (1u128 << n) - 1;
    (any::<u128>(), any::<u128>()).prop_map(move |(x, z)| PauliOp::from_masks(n, x & mask, z & mask).unwrap())
}

fn gate(n: usize) -> impl Strategy<Value = CliffordGate> {
    prop_oneof![
        (0..n).prop_map(|q| CliffordGate::one(GateKind::H, q)),
        (0..n).prop_map(|q| CliffordGate::one(GateKind::S, q)),
        (0..n).prop_map(|q| CliffordGate::one(GateKind::Idle, q)),
        (0..n, 1..n).prop_map(move |(a, d)| CliffordGate::cnot(a, (a + d) % n)),
        (0..n, 1..n).prop_map(move |(a, d)| CliffordGate::swap(a, (a + d) % n)),
    ]
}

/// Symplectic commutation from per-qubit letters.
fn commutes_by_letters(a: &PauliOp, b: &PauliOp) -> bool {
    let anti = (0..a.num_qubits())
        .filter(|&q| {
            let (p, r) = (a.get(q), b.get(q));
            p != knill2d::Pauli::I && r != knill2d::Pauli::I && p != r
        })
        .count();
    anti % 2 == 0
}

fn apply(tab: &mut Tableau, g: &CliffordGate) {
    let q = g.operands();
    match g.kind() {
        GateKind::H => tab.h(q[0]),
        GateKind::S => tab.s(q[0]),
        GateKind::Cnot => tab.cnot(q[0], q[1]),
        GateKind::Swap => tab.swap(q[0], q[1]),
        GateKind::Idle => {}
        k => panic!("{k:?}"),
    }
}

#[test]
fn c4_relations() {
    let [sx, sz] = c4::stabilizers();
    assert!(sx.commutes(&sz).unwrap());
    let [xl, zl, xs, zs] = c4::logicals();
    assert!(!xl.commutes(&zl).unwrap());
    assert!(!xs.commutes(&zs).unwrap());
    for (a, b) in [(&xl, &xs), (&xl, &zs), (&zl, &xs), (&zl, &zs)] {
        assert!(a.commutes(b).unwrap());
    }
    assert_eq!(xl.mul(&xs).unwrap().mul(&sx).unwrap().to_string(), "IXXI");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn product_is_an_abelian_group_up_to_phase(a in pauli_op(9), b in pauli_op(9), c in pauli_op(9)) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert!(a.mul(&a).unwrap().is_identity());
    }

    #[test]
    fn commutation_is_symmetric_and_symplectic(a in pauli_op(9), b in pauli_op(9)) {
        let ab = a.commutes(&b).unwrap();
        prop_assert_eq!(ab, b.commutes(&a).unwrap());
        prop_assert_eq!(ab, commutes_by_letters(&a, &b));
    }

    #[test]
    fn text_round_trip(a in pauli_op(9)) {
        let back: PauliOp = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn conjugation_inverts_and_preserves_commutation(
        gates in prop::collection::vec(gate(N), 0..12),
        a in pauli_op(N),
        b in pauli_op(N),
    ) {
        let fwd = |p: &PauliOp| gates.iter().fold(p.clone(), |acc, g| conjugate(g, &acc).unwrap());
        let (ca, cb) = (fwd(&a), fwd(&b));
        let back = gates.iter().rev().fold(ca.clone(), |acc, g| conjugate_inverse(g, &acc).unwrap());
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(ca.commutes(&cb).unwrap(), a.commutes(&b).unwrap());
        prop_assert_eq!(ca.mul(&cb).unwrap(), fwd(&a.mul(&b).unwrap()));
    }

    #[test]
    fn conjugated_stabilizers_stabilize_the_exact_state(gates in prop::collection::vec(gate(N), 0..16)) {
        let branches = oracle_statevector(N, &gates, &[]).unwrap();
        prop_assert_eq!(branches.len(), 1);
        for q in 0..N {
            let z = PauliOp::single(N, q, knill2d::Pauli::Z).unwrap();
            let p = gates.iter().fold(z, |acc, g| conjugate(g, &acc).unwrap());
            let e = branches[0].expectation(&p).unwrap();
            prop_assert!((e.abs() - 1.0).abs() < 1e-9, "{} -> {}", p, e);
        }
    }

    #[test]
    fn tableau_agrees_with_the_exact_state(
        gates in prop::collection::vec(gate(N), 0..16),
        probes in prop::collection::vec(pauli_op(N), 8),
        basis_x in any::<bool>(),
    ) {
        let mut circuit = gates.clone();
        circuit.push(CliffordGate::one(if basis_x { GateKind::MeasX } else { GateKind::MeasZ }, 0));
        for branch in oracle_statevector(N, &circuit, &[]).unwrap() {
            let mut tab = Tableau::new(N);
            for g in &gates {
                apply(&mut tab, g);
            }
            let m = if basis_x { tab.measure_x(0, branch.record[0]) } else { tab.measure_z(0, branch.record[0]) };
            prop_assert_eq!(m, branch.record[0]);
            for p in &probes {
                let mut p = p.clone();
                p.set(0, knill2d::Pauli::I).unwrap();
                let e = branch.expectation(&p).unwrap();
                match tab.stabilizer_sign(&p) {
                    Some(true) => prop_assert!((e - 1.0).abs() < 1e-9, "{} {}", p, e),
                    Some(false) => prop_assert!((e + 1.0).abs() < 1e-9, "{} {}", p, e),
                    None => prop_assert!(e.abs() < 1e-9, "{} {}", p, e),
                }
            }
        }
    }
}
