//! Complex-weighted sums of Pauli operators.
//!
//! Conjugation by a quarter turn keeps a single operator a single operator;
//! conjugation by an arbitrary-angle rotation splits an anticommuting term
//! in two. `PauliSum` is the closure of `PauliOperator` under that split.
//!
//! Invariants after `normalize`: every stored operator has phase_exp 0 (the
//! phase is absorbed into the coefficient), terms are sorted by mask pair,
//! duplicates are merged, and coefficients below `COEFF_TOL` are dropped.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::PauliOperator;
use crate::COEFF_TOL;

pub fn phase_to_complex(phase_exp: u8) -> Complex64 {
    match phase_exp % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

#[derive(Clone, PartialEq)]
pub struct PauliSum {
    n_qubits: usize,
    terms: Vec<(Complex64, PauliOperator)>,
}

impl PauliSum {
    pub fn zero(n_qubits: usize) -> Self {
        Self { n_qubits, terms: Vec::new() }
    }

    pub fn from_op(op: &PauliOperator) -> Self {
        let mut s = Self::zero(op.n_qubits());
        s.push(Complex64::new(1.0, 0.0), *op);
        s.normalize();
        s
    }

    pub fn from_terms(
        n_qubits: usize,
        terms: impl IntoIterator<Item = (Complex64, PauliOperator)>,
    ) -> Result<Self> {
        let mut s = Self::zero(n_qubits);
        for (c, op) in terms {
            if op.n_qubits() != n_qubits {
                return Err(Error::WidthMismatch { expected: n_qubits, got: op.n_qubits() });
            }
            s.push(c, op);
        }
        s.normalize();
        Ok(s)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[(Complex64, PauliOperator)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The sole term, if there is exactly one.
    pub fn single_term(&self) -> Option<(Complex64, PauliOperator)> {
        match self.terms.as_slice() {
            [(c, op)] => Some((*c, *op)),
            _ => None,
        }
    }

    /// Present as sign * operator when the sum is one term with coefficient
    /// close to ±1.
    pub fn as_signed_op(&self, tol: f64) -> Option<(i8, PauliOperator)> {
        let (c, op) = self.single_term()?;
        if (c - 1.0).norm() <= tol {
            Some((1, op))
        } else if (c + 1.0).norm() <= tol {
            Some((-1, op))
        } else {
            None
        }
    }

    fn push(&mut self, coeff: Complex64, op: PauliOperator) {
        let c = coeff * phase_to_complex(op.phase_exp());
        self.terms.push((c, op.bare()));
    }

    fn normalize(&mut self) {
        self.terms
            .sort_by_key(|(_, op)| (op.x_mask(), op.z_mask()));
        let mut merged: Vec<(Complex64, PauliOperator)> = Vec::with_capacity(self.terms.len());
        for (c, op) in self.terms.drain(..) {
            match merged.last_mut() {
                Some((c0, op0)) if op0.same_mask(&op) => *c0 += c,
                _ => merged.push((c, op)),
            }
        }
        merged.retain(|(c, _)| c.norm() > COEFF_TOL);
        self.terms = merged;
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::WidthMismatch { expected: self.n_qubits, got: other.n_qubits });
        }
        let mut out = self.clone();
        out.terms.extend_from_slice(&other.terms);
        out.normalize();
        Ok(out)
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        let mut out = self.clone();
        for (c, _) in &mut out.terms {
            *c *= factor;
        }
        out.normalize();
        out
    }

    /// Σ |c|².
    pub fn norm_sq(&self) -> f64 {
        self.terms.iter().map(|(c, _)| c.norm_sqr()).sum()
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if self.n_qubits != other.n_qubits {
            return false;
        }
        match self.add(&other.scaled(Complex64::new(-1.0, 0.0))) {
            Ok(diff) => diff.terms.iter().all(|(c, _)| c.norm() <= tol),
            Err(_) => false,
        }
    }

    /// Sum -> U† (sum) U for U = exp(i * phi * axis), term by term.
    pub fn conjugate_rotation(&self, axis: &PauliOperator, phi: f64) -> Result<Self> {
        let mut out = Self::zero(self.n_qubits);
        for (c, op) in &self.terms {
            if op.commutes_with(axis)? {
                out.push(*c, *op);
            } else {
                let cos = (2.0 * phi).cos();
                let sin = (2.0 * phi).sin();
                out.push(c * cos, *op);
                let cross = op.mul(axis)?.times_i();
                out.push(c * sin, cross);
            }
        }
        out.normalize();
        Ok(out)
    }

    /// Sum -> U† (sum) U for U = exp(i * sign * π/4 * axis). Exact.
    pub fn conjugate_quarter(&self, axis: &PauliOperator, sign: i8) -> Result<Self> {
        self.map_ops(|op| op.conjugate_quarter(axis, sign))
    }

    pub fn conjugate_r(&self, qubit: usize) -> Result<Self> {
        self.map_ops(|op| op.conjugate_r(qubit))
    }

    pub fn conjugate_q(&self, qubit: usize) -> Result<Self> {
        self.map_ops(|op| op.conjugate_q(qubit))
    }

    pub fn conjugate_cnot(&self, control: usize, target: usize) -> Result<Self> {
        self.map_ops(|op| op.conjugate_cnot(control, target))
    }

    fn map_ops(&self, f: impl Fn(&PauliOperator) -> Result<PauliOperator>) -> Result<Self> {
        let mut out = Self::zero(self.n_qubits);
        for (c, op) in &self.terms {
            out.push(*c, f(op)?);
        }
        out.normalize();
        Ok(out)
    }
}

impl PauliOperator {
    /// B -> U† B U for U = exp(i * phi * axis).
    ///
    /// One term if B commutes with the axis, otherwise
    /// cos(2phi) B + i sin(2phi) B axis.
    pub fn conjugate_rotation(&self, axis: &PauliOperator, phi: f64) -> Result<PauliSum> {
        PauliSum::from_op(self).conjugate_rotation(axis, phi)
    }
}

impl std::fmt::Debug for PauliSum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (c, op)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({:.6}{:+.6}i)*{}", c.re, c.im, op)?;
        }
        Ok(())
    }
}
