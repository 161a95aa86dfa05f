//! Full-matrix checks of synthesized circuits: every construction must equal
//! the exponential (or encoded gate) it claims to implement, as a dense
//! unitary, not just as a conjugation ledger.

mod common;

use common::{circuit_unitary, op_matrix, rotation_unitary, Mat, ONE};
use dfskit::codes::{
    five_qubit_code, four_two_two_code, six_one_code, steane_code, xx_chain_code, xzyx_code,
};
use dfskit::{
    synth_css_cnot, synth_euler, synth_general_cnot, synth_logical_rotation, synth_logical_zz,
    Angle, CentralBody, Layout, LogicalAxis, PauliOperator, StabilizerCode,
};
use num_complex::Complex64;

const LAYOUTS: [Layout; 2] = [Layout::Sequential, Layout::Parallel];
const CENTRALS: [CentralBody; 2] = [CentralBody::One, CentralBody::Two];

fn logical_op(code: &StabilizerCode, axis: LogicalAxis, j: usize) -> PauliOperator {
    match axis {
        LogicalAxis::Z => *code.logical_z(j),
        LogicalAxis::X => *code.logical_x(j),
        LogicalAxis::Y => code.logical_y(j),
    }
}

#[test]
fn rotations_match_their_exponentials() {
    let small = [xx_chain_code(), four_two_two_code(), xzyx_code(), five_qubit_code()];
    let large = [six_one_code(), steane_code()];
    let mut cases: Vec<(StabilizerCode, Vec<Angle>)> = Vec::new();
    for code in small {
        cases.push((code, vec![Angle::Radians(0.37), Angle::QuarterPi(1)]));
    }
    for code in large {
        cases.push((code, vec![Angle::Radians(0.37)]));
    }

    for (code, angles) in &cases {
        for j in 0..code.encoded_count() {
            for axis in [LogicalAxis::Z, LogicalAxis::X, LogicalAxis::Y] {
                let target = logical_op(code, axis, j);
                for &angle in angles {
                    let want = rotation_unitary(&target, angle.radians());
                    for layout in LAYOUTS {
                        for central in CENTRALS {
                            let c = synth_logical_rotation(code, axis, j, angle, layout, central)
                                .unwrap();
                            c.validate().unwrap();
                            let got = circuit_unitary(&c);
                            assert!(
                                got.approx_eq(&want, 1e-9),
                                "rotation mismatch: n={} j={j} axis={axis:?} angle={angle} \
                                 layout={layout:?} central={central:?} diff={}",
                                code.n_qubits(),
                                got.max_abs_diff(&want),
                            );
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn zz_couplings_match_their_exponentials() {
    let pairs: Vec<(StabilizerCode, usize, usize)> = vec![
        (four_two_two_code(), 0, 1),
        (xzyx_code(), 0, 1),
        (xzyx_code(), 0, 2),
        (xzyx_code(), 1, 2),
    ];
    for (code, i, j) in &pairs {
        let target = code.logical_z(*i).mul(code.logical_z(*j)).unwrap();
        assert_eq!(target.phase_exp(), 0);
        let angle = Angle::Radians(0.81);
        let want = rotation_unitary(&target, angle.radians());
        for layout in LAYOUTS {
            for central in CENTRALS {
                let c = synth_logical_zz(code, *i, *j, angle, layout, central).unwrap();
                c.validate().unwrap();
                let got = circuit_unitary(&c);
                assert!(
                    got.approx_eq(&want, 1e-10),
                    "zz mismatch on n={} pair ({i},{j}), diff={}",
                    code.n_qubits(),
                    got.max_abs_diff(&want),
                );
            }
        }
    }
}

#[test]
fn euler_sequences_compose_the_right_unitary() {
    let cases = [
        (xx_chain_code(), Angle::Radians(0.3), Angle::Radians(0.9), Angle::Radians(-0.5)),
        (xx_chain_code(), Angle::QuarterPi(1), Angle::QuarterPi(2), Angle::QuarterPi(-1)),
        (five_qubit_code(), Angle::Radians(-1.1), Angle::Radians(0.4), Angle::Radians(2.0)),
    ];
    for (code, alpha, theta, beta) in &cases {
        let zbar = op_matrix(code.logical_z(0));
        let ybar = op_matrix(&code.logical_y(0));
        let dim = 1 << code.n_qubits();
        let half = |m: &Mat, a: &Angle| {
            // exp(-i a/2 M) for an involution M.
            let phi = -a.radians() / 2.0;
            Mat::identity(dim)
                .scale(Complex64::new(phi.cos(), 0.0))
                .add(&m.scale(Complex64::new(0.0, phi.sin())))
        };
        let want = half(&zbar, beta).mul(&half(&ybar, theta)).mul(&half(&zbar, alpha));
        for layout in LAYOUTS {
            for central in CENTRALS {
                let c = synth_euler(code, 0, *alpha, *theta, *beta, layout, central).unwrap();
                c.validate().unwrap();
                let got = circuit_unitary(&c);
                assert!(
                    got.approx_eq(&want, 1e-10),
                    "euler mismatch on n={}, diff={}",
                    code.n_qubits(),
                    got.max_abs_diff(&want),
                );
            }
        }
    }
}

fn ideal_cnot_times_phase(n: usize, z_a: &PauliOperator, x_b: &PauliOperator) -> Mat {
    // exp(-i pi/4 Za) exp(-i pi/4 Xb) exp(+i pi/4 Za Xb) equals
    // e^{-i pi/4} (1 + Za + Xb - Za Xb)/2 because the three axes commute.
    let dim = 1 << n;
    let za = op_matrix(z_a);
    let xb = op_matrix(x_b);
    let mut m = Mat::identity(dim).add(&za).add(&xb).add(&za.mul(&xb).scale(-ONE));
    m = m.scale(Complex64::new(0.5, 0.0));
    m.scale(Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_4))
}

#[test]
fn general_cnot_matches_closed_form() {
    let a = xx_chain_code();
    let b = xx_chain_code();
    let n = a.n_qubits() + b.n_qubits();
    let z_a = a.logical_z(0).embed(n, 0).unwrap();
    let x_b = b.logical_x(0).embed(n, a.n_qubits()).unwrap();
    let want = ideal_cnot_times_phase(n, &z_a, &x_b);

    for (slices, layout, central) in [
        (1usize, Layout::Sequential, CentralBody::Two),
        (2, Layout::Parallel, CentralBody::One),
    ] {
        let c = synth_general_cnot(&a, 0, &b, 0, slices, layout, central).unwrap();
        c.validate().unwrap();
        let got = circuit_unitary(&c);
        assert!(
            got.approx_eq(&want, 1e-9),
            "general cnot mismatch, slices={slices}, diff={}",
            got.max_abs_diff(&want),
        );
    }
}

#[test]
fn general_cnot_between_different_codes() {
    let a = four_two_two_code();
    let b = xx_chain_code();
    let n = a.n_qubits() + b.n_qubits();
    let z_a = a.logical_z(1).embed(n, 0).unwrap();
    let x_b = b.logical_x(0).embed(n, a.n_qubits()).unwrap();
    let want = ideal_cnot_times_phase(n, &z_a, &x_b);

    let c = synth_general_cnot(&a, 1, &b, 0, 1, Layout::Sequential, CentralBody::Two).unwrap();
    let got = circuit_unitary(&c);
    assert!(got.approx_eq(&want, 1e-9), "diff={}", got.max_abs_diff(&want));
}

#[test]
fn transversal_cnot_acts_as_encoded_cnot() {
    for code in [xx_chain_code(), four_two_two_code()] {
        let k = code.n_qubits();
        let n = 2 * k;
        let c = synth_css_cnot(&code).unwrap();
        let u = circuit_unitary(&c);

        let fwd = |p: &PauliOperator| u.mul(&op_matrix(p)).mul(&u.adjoint());
        let pair = |left: &PauliOperator, right: &PauliOperator| {
            left.embed(n, 0).unwrap().mul(&right.embed(n, k).unwrap()).unwrap()
        };
        let id = PauliOperator::identity(k).unwrap();

        // Generators map into the doubled group, logicals follow the
        // control-propagates-X, target-propagates-Z pattern.
        for g in code.generators() {
            let g_first = pair(g, &id);
            let g_second = pair(&id, g);
            let x_part = g.x_mask() != 0;
            let want_first = if x_part { pair(g, g) } else { g_first };
            let want_second = if x_part { g_second } else { pair(g, g) };
            assert!(fwd(&g_first).approx_eq(&op_matrix(&want_first), 1e-10));
            assert!(fwd(&g_second).approx_eq(&op_matrix(&want_second), 1e-10));
        }
        for j in 0..code.encoded_count() {
            let xb = code.logical_x(j);
            let zb = code.logical_z(j);
            assert!(fwd(&pair(xb, &id)).approx_eq(&op_matrix(&pair(xb, xb)), 1e-10));
            assert!(fwd(&pair(&id, xb)).approx_eq(&op_matrix(&pair(&id, xb)), 1e-10));
            assert!(fwd(&pair(zb, &id)).approx_eq(&op_matrix(&pair(zb, &id)), 1e-10));
            assert!(fwd(&pair(&id, zb)).approx_eq(&op_matrix(&pair(zb, zb)), 1e-10));
        }
    }
}
