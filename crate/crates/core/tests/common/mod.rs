//! Dense complex-matrix model used as an independent check on the bit-packed
//! algebra. Everything here works on explicit 2^n x 2^n matrices built by
//! Kronecker products, so it shares no code path with the masks it audits.

#![allow(dead_code)]

use dfskit::{PauliOperator, PauliSum};
use num_complex::Complex64;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const IM: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Clone, PartialEq)]
pub struct Mat {
    pub dim: usize,
    pub a: Vec<Complex64>,
}

impl Mat {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, a: vec![ZERO; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.a[i * dim + i] = ONE;
        }
        m
    }

    pub fn from_rows(rows: &[&[Complex64]]) -> Self {
        let dim = rows.len();
        let mut m = Self::zeros(dim);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), dim);
            for (j, v) in r.iter().enumerate() {
                m.a[i * dim + j] = *v;
            }
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.a[i * self.dim + j]
    }

    pub fn mul(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.dim, rhs.dim);
        let d = self.dim;
        let mut out = Mat::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let v = self.a[i * d + k];
                if v == ZERO {
                    continue;
                }
                for j in 0..d {
                    out.a[i * d + j] += v * rhs.a[k * d + j];
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.dim, rhs.dim);
        let mut out = self.clone();
        for (o, r) in out.a.iter_mut().zip(&rhs.a) {
            *o += r;
        }
        out
    }

    pub fn scale(&self, f: Complex64) -> Mat {
        let mut out = self.clone();
        for v in &mut out.a {
            *v *= f;
        }
        out
    }

    pub fn adjoint(&self) -> Mat {
        let d = self.dim;
        let mut out = Mat::zeros(d);
        for i in 0..d {
            for j in 0..d {
                out.a[j * d + i] = self.a[i * d + j].conj();
            }
        }
        out
    }

    pub fn kron(&self, rhs: &Mat) -> Mat {
        let d1 = self.dim;
        let d2 = rhs.dim;
        let d = d1 * d2;
        let mut out = Mat::zeros(d);
        for i1 in 0..d1 {
            for j1 in 0..d1 {
                let v = self.a[i1 * d1 + j1];
                if v == ZERO {
                    continue;
                }
                for i2 in 0..d2 {
                    for j2 in 0..d2 {
                        out.a[(i1 * d2 + i2) * d + (j1 * d2 + j2)] = v * rhs.a[i2 * d2 + j2];
                    }
                }
            }
        }
        out
    }

    pub fn max_abs_diff(&self, rhs: &Mat) -> f64 {
        assert_eq!(self.dim, rhs.dim);
        self.a
            .iter()
            .zip(&rhs.a)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, rhs: &Mat, tol: f64) -> bool {
        self.dim == rhs.dim && self.max_abs_diff(rhs) <= tol
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        let d = self.dim;
        let mut out = vec![ZERO; d];
        for i in 0..d {
            let mut acc = ZERO;
            for j in 0..d {
                acc += self.a[i * d + j] * v[j];
            }
            out[i] = acc;
        }
        out
    }
}

pub fn letter_matrix(c: char) -> Mat {
    match c {
        'I' => Mat::from_rows(&[&[ONE, ZERO], &[ZERO, ONE]]),
        'X' => Mat::from_rows(&[&[ZERO, ONE], &[ONE, ZERO]]),
        'Y' => Mat::from_rows(&[&[ZERO, -IM], &[IM, ZERO]]),
        'Z' => Mat::from_rows(&[&[ONE, ZERO], &[ZERO, -ONE]]),
        _ => panic!("bad letter {c}"),
    }
}

/// Qubit 0 is the leftmost letter, i.e. the most significant index bit.
pub fn op_matrix(op: &PauliOperator) -> Mat {
    let mut m = Mat::identity(1);
    for q in 0..op.n_qubits() {
        m = m.kron(&letter_matrix(op.letter_at(q).to_char()));
    }
    let phase = match op.phase_exp() {
        0 => ONE,
        1 => IM,
        2 => -ONE,
        _ => -IM,
    };
    m.scale(phase)
}

pub fn sum_matrix(s: &PauliSum) -> Mat {
    let mut m = Mat::zeros(1 << s.n_qubits());
    for (c, op) in s.terms() {
        m = m.add(&op_matrix(op).scale(*c));
    }
    m
}

/// exp(i * phi * A) for an involution A, as cos(phi) I + i sin(phi) A.
pub fn rotation_unitary(axis: &PauliOperator, phi: f64) -> Mat {
    let dim = 1 << axis.n_qubits();
    let ma = op_matrix(axis);
    Mat::identity(dim)
        .scale(Complex64::new(phi.cos(), 0.0))
        .add(&ma.scale(Complex64::new(0.0, phi.sin())))
}

/// Basis-swap gate: R = (X + Z)/sqrt(2), the Hadamard matrix.
pub fn r_matrix() -> Mat {
    let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    Mat::from_rows(&[&[ONE, ONE], &[ONE, -ONE]]).scale(s)
}

/// Cycling gate Q with Q Z Q† = X, Q X Q† = Y, Q Y Q† = Z.
pub fn q_matrix() -> Mat {
    let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    Mat::from_rows(&[&[ONE, -IM], &[ONE, IM]]).scale(s)
}

/// Embed a single-qubit gate at `qubit` in an n-qubit register.
pub fn gate_on(n: usize, qubit: usize, g: &Mat) -> Mat {
    assert_eq!(g.dim, 2);
    let mut m = Mat::identity(1);
    for q in 0..n {
        if q == qubit {
            m = m.kron(g);
        } else {
            m = m.kron(&Mat::identity(2));
        }
    }
    m
}

/// CNOT as a permutation matrix; bit of qubit q sits at position n-1-q.
pub fn cnot_matrix(n: usize, control: usize, target: usize) -> Mat {
    let dim = 1usize << n;
    let cb = n - 1 - control;
    let tb = n - 1 - target;
    let mut m = Mat::zeros(dim);
    for j in 0..dim {
        let i = if (j >> cb) & 1 == 1 { j ^ (1 << tb) } else { j };
        m.a[i * dim + j] = ONE;
    }
    m
}

/// U† B U.
pub fn conj_sandwich(u: &Mat, b: &Mat) -> Mat {
    u.adjoint().mul(b).mul(u)
}

/// U B U†.
pub fn conj_forward(u: &Mat, b: &Mat) -> Mat {
    u.mul(b).mul(&u.adjoint())
}

/// Dense unitary of a whole circuit, gates applied in time order.
pub fn circuit_unitary(c: &dfskit::Circuit) -> Mat {
    use dfskit::Gate;
    let mut u = Mat::identity(1 << c.n_qubits);
    for gate in &c.gates {
        let g = match gate {
            Gate::PauliExp { axis, angle } => rotation_unitary(axis, angle.radians()),
            Gate::ParallelPauliExp { axes, angle } => {
                let mut m = Mat::identity(1 << c.n_qubits);
                for axis in axes {
                    m = rotation_unitary(axis, angle.radians()).mul(&m);
                }
                m
            }
            Gate::Cnot { control, target } => cnot_matrix(c.n_qubits, *control, *target),
            Gate::R { qubit } => gate_on(c.n_qubits, *qubit, &r_matrix()),
            Gate::Q { qubit } => gate_on(c.n_qubits, *qubit, &q_matrix()),
            Gate::ControlledPauli { control, pauli } => {
                let dim = 1 << c.n_qubits;
                let hi = 1usize << (c.n_qubits - 1 - control);
                let p = op_matrix(pauli);
                let mut m = Mat::zeros(dim);
                for i in 0..dim {
                    for j in 0..dim {
                        m.a[i * dim + j] = if j & hi == 0 {
                            if i == j { ONE } else { ZERO }
                        } else {
                            p.at(i, j)
                        };
                    }
                }
                m
            }
            Gate::MeasureZ { .. } => panic!("measurement has no unitary"),
        };
        u = g.mul(&u);
    }
    u
}
