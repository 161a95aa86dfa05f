//! Cross-checks of the bit-packed Pauli algebra against the dense matrix
//! model in `common`. The matrix side is built from explicit 2x2 letters and
//! Kronecker products only, so agreement here pins down the mask arithmetic,
//! the phase bookkeeping, and every conjugation rule independently.

mod common;

use common::*;
use dfskit::{pauli, PauliOperator, PauliSum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn all_ops(n: usize, phases: &[u8]) -> Vec<PauliOperator> {
    let mut out = Vec::new();
    for x in 0..(1u64 << n) {
        for z in 0..(1u64 << n) {
            for &p in phases {
                out.push(PauliOperator::from_masks(n, x, z, p).unwrap());
            }
        }
    }
    out
}

fn random_op(rng: &mut ChaCha8Rng, n: usize) -> PauliOperator {
    let w = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    PauliOperator::from_masks(n, rng.random::<u64>() & w, rng.random::<u64>() & w, rng.random::<u8>() % 4)
        .unwrap()
}

#[test]
fn multiplication_matches_matrices_exhaustively() {
    // Every letter pair with every phase pair on one qubit, then every mask
    // pair on two and three qubits.
    for (n, phases) in [(1usize, vec![0u8, 1, 2, 3]), (2, vec![0, 3]), (3, vec![0])] {
        let ops = all_ops(n, &phases);
        for a in &ops {
            for b in &ops {
                let got = op_matrix(&a.mul(b).unwrap());
                let want = op_matrix(a).mul(&op_matrix(b));
                assert!(
                    got.approx_eq(&want, 1e-12),
                    "product mismatch: {a} * {b} = {:?}",
                    a.mul(b).unwrap()
                );
            }
        }
    }
}

#[test]
fn multiplication_matches_matrices_randomized_wide() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let a = random_op(&mut rng, 6);
        let b = random_op(&mut rng, 6);
        let got = op_matrix(&a.mul(&b).unwrap());
        let want = op_matrix(&a).mul(&op_matrix(&b));
        assert!(got.approx_eq(&want, 1e-12), "product mismatch: {a} * {b}");
    }
}

#[test]
fn commutation_matches_matrices() {
    let ops = all_ops(2, &[0]);
    for a in &ops {
        for b in &ops {
            let ma = op_matrix(a);
            let mb = op_matrix(b);
            let comm = ma.mul(&mb).add(&mb.mul(&ma).scale(-ONE));
            let vanishes = comm.max_abs_diff(&Mat::zeros(4)) <= 1e-12;
            assert_eq!(
                a.commutes_with(b).unwrap(),
                vanishes,
                "commutation mismatch for {a}, {b}"
            );
        }
    }
}

#[test]
fn quarter_conjugation_matches_sandwich() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut anticommuting_seen = 0;
    while anticommuting_seen < 40 {
        let b = random_op(&mut rng, 3);
        let a = random_op(&mut rng, 3).bare();
        if a.is_identity_mask() {
            continue;
        }
        if b.anticommutes_with(&a).unwrap() {
            anticommuting_seen += 1;
        }
        for sign in [1i8, -1] {
            let got = op_matrix(&b.conjugate_quarter(&a, sign).unwrap());
            let u = rotation_unitary(&a, f64::from(sign) * std::f64::consts::FRAC_PI_4);
            let want = conj_sandwich(&u, &op_matrix(&b));
            assert!(
                got.approx_eq(&want, 1e-12),
                "quarter conjugation mismatch: B={b}, A={a}, sign={sign}"
            );
        }
    }
}

#[test]
fn rotation_conjugation_matches_sandwich() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let angles = [0.0, 0.17, -0.9, std::f64::consts::FRAC_PI_4, 2.5];
    for _ in 0..30 {
        let b = random_op(&mut rng, 3);
        let a = random_op(&mut rng, 3).bare();
        if a.is_identity_mask() {
            continue;
        }
        for &phi in &angles {
            let got = sum_matrix(&b.conjugate_rotation(&a, phi).unwrap());
            let u = rotation_unitary(&a, phi);
            let want = conj_sandwich(&u, &op_matrix(&b));
            assert!(
                got.approx_eq(&want, 1e-10),
                "rotation conjugation mismatch: B={b}, A={a}, phi={phi}"
            );
        }
    }
}

#[test]
fn r_and_q_conjugation_match_matrices() {
    let rm = r_matrix();
    let qm = q_matrix();
    // The defining table of Q, checked at the matrix level first.
    assert!(conj_forward(&qm, &letter_matrix('Z')).approx_eq(&letter_matrix('X'), 1e-12));
    assert!(conj_forward(&qm, &letter_matrix('X')).approx_eq(&letter_matrix('Y'), 1e-12));
    assert!(conj_forward(&qm, &letter_matrix('Y')).approx_eq(&letter_matrix('Z'), 1e-12));

    for op in all_ops(2, &[0, 1]) {
        for q in 0..2 {
            let got_r = op_matrix(&op.conjugate_r(q).unwrap());
            let want_r = conj_forward(&gate_on(2, q, &rm), &op_matrix(&op));
            assert!(got_r.approx_eq(&want_r, 1e-12), "R mismatch on {op} qubit {q}");

            let got_q = op_matrix(&op.conjugate_q(q).unwrap());
            let want_q = conj_forward(&gate_on(2, q, &qm), &op_matrix(&op));
            assert!(got_q.approx_eq(&want_q, 1e-12), "Q mismatch on {op} qubit {q}");
        }
    }
}

#[test]
fn cnot_conjugation_matches_matrices() {
    for op in all_ops(2, &[0, 2]) {
        for (c, t) in [(0usize, 1usize), (1, 0)] {
            let got = op_matrix(&op.conjugate_cnot(c, t).unwrap());
            let want = conj_forward(&cnot_matrix(2, c, t), &op_matrix(&op));
            assert!(got.approx_eq(&want, 1e-12), "CNOT mismatch on {op}, c={c}, t={t}");
        }
    }
    // Spread-out wires on a wider register.
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    for _ in 0..25 {
        let op = random_op(&mut rng, 4);
        for (c, t) in [(0usize, 3usize), (2, 1), (3, 0)] {
            let got = op_matrix(&op.conjugate_cnot(c, t).unwrap());
            let want = conj_forward(&cnot_matrix(4, c, t), &op_matrix(&op));
            assert!(got.approx_eq(&want, 1e-12), "CNOT mismatch on {op}, c={c}, t={t}");
        }
    }
}

#[test]
fn pauli_sums_mirror_matrix_arithmetic() {
    let mut rng = ChaCha8Rng::seed_from_u64(59);
    for _ in 0..20 {
        let terms: Vec<_> = (0..4)
            .map(|_| {
                (
                    num_complex::Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5),
                    random_op(&mut rng, 3),
                )
            })
            .collect();
        let s = PauliSum::from_terms(3, terms.clone()).unwrap();
        let mut want = Mat::zeros(8);
        for (c, op) in &terms {
            want = want.add(&op_matrix(op).scale(*c));
        }
        assert!(sum_matrix(&s).approx_eq(&want, 1e-12));
    }
}

#[test]
fn wide_registers_stay_consistent() {
    // No matrices at 64 qubits; exercise the mask paths for overflow bugs.
    let a = PauliOperator::from_masks(64, u64::MAX, 0, 0).unwrap();
    let b = PauliOperator::from_masks(64, 0, u64::MAX, 0).unwrap();
    let ab = a.mul(&b).unwrap();
    assert_eq!(ab.x_mask(), u64::MAX);
    assert_eq!(ab.z_mask(), u64::MAX);
    // 64 overlapping XZ pairs: phase (-i)^64 = 1... per-qubit XZ = -iY.
    assert_eq!(ab.phase_exp(), (3 * 64) % 4);
    assert!(a.commutes_with(&b).unwrap(), "even overlap commutes");
    let spec = pauli("XZ").embed(64, 62).unwrap();
    assert_eq!(spec.support(), vec![62, 63]);
}
