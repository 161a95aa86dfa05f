//! Dense statevector engine: exact gate application, codespace extraction,
//! encoded-action measurement, and the exhaustive fault-injection sweep.

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::pauli::PauliOperator;
use crate::stab::StabilizerCode;
use crate::sum::PauliSum;
use crate::synth::{synth_general_cnot, CentralBody, Layout};
use crate::syndrome::{build_syndrome_table, measure_syndrome};
use crate::verify::trace_heisenberg;
use crate::DENSE_QUBIT_CAP;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Map a qubit index (0 = leftmost letter) to its position in a state index
/// (0 = most significant bit).
fn index_bit(n: usize, qubit: usize) -> usize {
    n - 1 - qubit
}

/// Translate a qubit-indexed mask into a state-index mask.
fn index_mask(n: usize, qubit_mask: u64) -> usize {
    let mut out = 0usize;
    for q in 0..n {
        if qubit_mask >> q & 1 == 1 {
            out |= 1 << index_bit(n, q);
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    fn check_width(n_qubits: usize) -> Result<()> {
        if n_qubits == 0 || n_qubits > DENSE_QUBIT_CAP {
            return Err(Error::StateTooLarge { qubits: n_qubits, cap: DENSE_QUBIT_CAP });
        }
        Ok(())
    }

    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        Self::check_width(n_qubits)?;
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::Parse(format!("basis index {index} out of range for {n_qubits} qubits")));
        }
        let mut amps = vec![ZERO; dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { n_qubits, amps })
    }

    pub fn zero(n_qubits: usize) -> Result<Self> {
        Self::basis(n_qubits, 0)
    }

    /// Build from raw amplitudes, normalizing; the vector must not be null.
    pub fn from_amplitudes(n_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        Self::check_width(n_qubits)?;
        if amps.len() != 1usize << n_qubits {
            return Err(Error::Parse(format!(
                "expected {} amplitudes, got {}",
                1usize << n_qubits,
                amps.len()
            )));
        }
        let mut state = Self { n_qubits, amps };
        let norm = state.norm();
        if norm < 1e-12 {
            return Err(Error::Parse("cannot normalize a null vector".into()));
        }
        let inv = Complex64::new(1.0 / norm, 0.0);
        for a in &mut state.amps {
            *a *= inv;
        }
        Ok(state)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// <self|other>.
    pub fn inner(&self, other: &Self) -> Complex64 {
        debug_assert_eq!(self.n_qubits, other.n_qubits);
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn fidelity(&self, other: &Self) -> f64 {
        self.inner(other).norm_sqr()
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let n = self.n_qubits + other.n_qubits;
        Self::check_width(n)?;
        let dim_b = other.amps.len();
        let mut amps = vec![ZERO; self.amps.len() * dim_b];
        for (i, a) in self.amps.iter().enumerate() {
            if *a == ZERO {
                continue;
            }
            for (j, b) in other.amps.iter().enumerate() {
                amps[i * dim_b + j] = a * b;
            }
        }
        Ok(Self { n_qubits: n, amps })
    }

    /// Apply a Pauli operator, phase included, in one pass.
    pub fn apply_pauli(&mut self, op: &PauliOperator) -> Result<()> {
        if op.n_qubits() != self.n_qubits {
            return Err(Error::WidthMismatch { expected: self.n_qubits, got: op.n_qubits() });
        }
        let n = self.n_qubits;
        let flip = index_mask(n, op.x_mask());
        let zmask = index_mask(n, op.z_mask());
        let y_count = (op.x_mask() & op.z_mask()).count_ones();
        let base = [
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, -1.0),
        ][usize::from((op.phase_exp() + (y_count % 4) as u8) % 4)];
        let mut out = vec![ZERO; self.amps.len()];
        for (i, a) in self.amps.iter().enumerate() {
            if *a == ZERO {
                continue;
            }
            let sign = if (i & zmask).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            out[i ^ flip] = base * sign * a;
        }
        self.amps = out;
        Ok(())
    }

    fn apply_rotation(&mut self, axis: &PauliOperator, phi: f64) -> Result<()> {
        if axis.phase_exp() % 2 != 0 {
            return Err(Error::Unsupported("rotation axis must be Hermitian".into()));
        }
        // exp(i phi A) = cos(phi) I + i sin(phi) A, since A squares to I.
        let mut rotated = self.clone();
        rotated.apply_pauli(axis)?;
        let c = Complex64::new(phi.cos(), 0.0);
        let s = Complex64::new(0.0, phi.sin());
        for (a, r) in self.amps.iter_mut().zip(&rotated.amps) {
            *a = c * *a + s * r;
        }
        Ok(())
    }

    fn check_qubit(&self, qubit: usize) -> Result<usize> {
        if qubit >= self.n_qubits {
            return Err(Error::QubitOutOfRange { index: qubit, n_qubits: self.n_qubits });
        }
        Ok(1usize << index_bit(self.n_qubits, qubit))
    }

    fn apply_one_qubit(&mut self, qubit: usize, m: [[Complex64; 2]; 2]) -> Result<()> {
        let bit = self.check_qubit(qubit)?;
        for i in 0..self.amps.len() {
            if i & bit != 0 {
                continue;
            }
            let a0 = self.amps[i];
            let a1 = self.amps[i | bit];
            self.amps[i] = m[0][0] * a0 + m[0][1] * a1;
            self.amps[i | bit] = m[1][0] * a0 + m[1][1] * a1;
        }
        Ok(())
    }

    /// Project the given qubit onto `outcome` and renormalize; the branch
    /// probability is returned so callers can detect impossible outcomes.
    fn project_qubit(&mut self, qubit: usize, outcome: u64) -> Result<f64> {
        let bit = self.check_qubit(qubit)?;
        let mut kept = 0.0;
        for (i, a) in self.amps.iter().enumerate() {
            let b = u64::from(i & bit != 0);
            if b == outcome {
                kept += a.norm_sqr();
            }
        }
        if kept > 1e-300 {
            let inv = Complex64::new(1.0 / kept.sqrt(), 0.0);
            for (i, a) in self.amps.iter_mut().enumerate() {
                let b = u64::from(i & bit != 0);
                if b == outcome {
                    *a *= inv;
                } else {
                    *a = ZERO;
                }
            }
        }
        Ok(kept)
    }

    /// Apply one gate. Unitary gates return None; MeasureZ returns the
    /// outcome bits, bit i following the order of its qubit list.
    pub fn apply_gate(&mut self, gate: &Gate, rng: &mut ChaCha8Rng) -> Result<Option<u64>> {
        match gate {
            Gate::PauliExp { axis, angle } => {
                self.apply_rotation(axis, angle.radians())?;
            }
            Gate::ParallelPauliExp { axes, angle } => {
                for axis in axes {
                    self.apply_rotation(axis, angle.radians())?;
                }
            }
            Gate::Cnot { control, target } => {
                let cb = self.check_qubit(*control)?;
                let tb = self.check_qubit(*target)?;
                for i in 0..self.amps.len() {
                    if i & cb != 0 && i & tb == 0 {
                        self.amps.swap(i, i | tb);
                    }
                }
            }
            Gate::R { qubit } => {
                let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
                self.apply_one_qubit(*qubit, [[s, s], [s, -s]])?;
            }
            Gate::Q { qubit } => {
                let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
                let im = Complex64::new(0.0, 1.0);
                self.apply_one_qubit(*qubit, [[s, -s * im], [s, s * im]])?;
            }
            Gate::ControlledPauli { control, pauli } => {
                let cb = self.check_qubit(*control)?;
                if pauli.n_qubits() != self.n_qubits {
                    return Err(Error::WidthMismatch {
                        expected: self.n_qubits,
                        got: pauli.n_qubits(),
                    });
                }
                if pauli.x_mask() >> control & 1 == 1 {
                    return Err(Error::Unsupported(
                        "controlled Pauli may not flip its own control".into(),
                    ));
                }
                let n = self.n_qubits;
                let flip = index_mask(n, pauli.x_mask());
                let zmask = index_mask(n, pauli.z_mask());
                let y_count = (pauli.x_mask() & pauli.z_mask()).count_ones();
                let base = [
                    Complex64::new(1.0, 0.0),
                    Complex64::new(0.0, 1.0),
                    Complex64::new(-1.0, 0.0),
                    Complex64::new(0.0, -1.0),
                ][usize::from((pauli.phase_exp() + (y_count % 4) as u8) % 4)];
                let mut out = self.amps.clone();
                for (i, a) in self.amps.iter().enumerate() {
                    if i & cb == 0 {
                        continue;
                    }
                    let sign = if (i & zmask).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                    out[i ^ flip] = base * sign * a;
                }
                self.amps = out;
            }
            Gate::MeasureZ { qubits } => {
                let mut bits = 0u64;
                for (pos, q) in qubits.iter().enumerate() {
                    let bit = self.check_qubit(*q)?;
                    let mut p1 = 0.0;
                    for (i, a) in self.amps.iter().enumerate() {
                        if i & bit != 0 {
                            p1 += a.norm_sqr();
                        }
                    }
                    let outcome = u64::from(rng.random::<f64>() < p1);
                    self.project_qubit(*q, outcome)?;
                    bits |= outcome << pos;
                }
                return Ok(Some(bits));
            }
        }
        debug_assert!((self.norm() - 1.0).abs() < 1e-12);
        Ok(None)
    }

    /// Run a whole circuit, collecting the outcome words of its MeasureZ
    /// gates in order.
    pub fn run_circuit(&mut self, circuit: &Circuit, rng: &mut ChaCha8Rng) -> Result<Vec<u64>> {
        if circuit.n_qubits != self.n_qubits {
            return Err(Error::WidthMismatch { expected: self.n_qubits, got: circuit.n_qubits });
        }
        let mut outcomes = Vec::new();
        for gate in &circuit.gates {
            if let Some(bits) = self.apply_gate(gate, rng)? {
                outcomes.push(bits);
            }
        }
        Ok(outcomes)
    }

    /// Projectively measure a Hermitian Pauli observable. Returns true for
    /// the -1 outcome; the state collapses onto the outcome eigenspace.
    pub fn measure_pauli(&mut self, op: &PauliOperator, rng: &mut ChaCha8Rng) -> Result<bool> {
        if op.phase_exp() % 2 != 0 {
            return Err(Error::Unsupported("cannot measure a non-Hermitian operator".into()));
        }
        let mut hit = self.clone();
        hit.apply_pauli(op)?;
        let overlap = self.inner(&hit).re;
        let p_minus = ((1.0 - overlap) / 2.0).clamp(0.0, 1.0);
        let minus = rng.random::<f64>() < p_minus;
        let sign = if minus { -1.0 } else { 1.0 };
        let p = if minus { p_minus } else { 1.0 - p_minus };
        let inv = Complex64::new(1.0 / (2.0 * p.sqrt()), 0.0);
        for (a, h) in self.amps.iter_mut().zip(&hit.amps) {
            *a = (*a + sign * h) * inv;
        }
        Ok(minus)
    }

    /// Split off the trailing `suffix` qubits of a product state. Fails with
    /// the measured purity if the two halves are entangled beyond `tol`.
    pub fn split_off_suffix(&self, suffix: usize, tol: f64) -> Result<(StateVector, StateVector)> {
        if suffix == 0 || suffix >= self.n_qubits {
            return Err(Error::Parse(format!("cannot split {suffix} qubits off {}", self.n_qubits)));
        }
        let da = 1usize << (self.n_qubits - suffix);
        let db = 1usize << suffix;
        // Reduced suffix density matrix rho[a][b] = sum_d conj(M[d][a]) M[d][b].
        let mut rho = vec![ZERO; db * db];
        for d in 0..da {
            let row = &self.amps[d * db..(d + 1) * db];
            for a in 0..db {
                if row[a] == ZERO {
                    continue;
                }
                for b in 0..db {
                    rho[a * db + b] += row[a].conj() * row[b];
                }
            }
        }
        let purity: f64 = rho.iter().map(|v| v.norm_sqr()).sum();
        if purity < 1.0 - tol {
            return Err(Error::DataAncillaEntangled { purity });
        }
        // Dominant eigenvector of rho by power iteration from its largest
        // diagonal column.
        let start = (0..db).max_by(|&a, &b| rho[a * db + a].re.total_cmp(&rho[b * db + b].re)).unwrap();
        let mut v: Vec<Complex64> = (0..db).map(|a| rho[a * db + start]).collect();
        for _ in 0..80 {
            let mut next = vec![ZERO; db];
            for a in 0..db {
                let mut acc = ZERO;
                for b in 0..db {
                    acc += rho[a * db + b] * v[b];
                }
                next[a] = acc;
            }
            let norm = next.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-300 {
                break;
            }
            for x in &mut next {
                *x /= norm;
            }
            v = next;
        }
        let suffix_state = StateVector::from_amplitudes(suffix, v.clone())?;
        let mut data = vec![ZERO; da];
        for d in 0..da {
            let mut acc = ZERO;
            for a in 0..db {
                acc += self.amps[d * db + a] * v[a].conj();
            }
            data[d] = acc;
        }
        let data_state = StateVector::from_amplitudes(self.n_qubits - suffix, data)?;
        Ok((data_state, suffix_state))
    }
}

/// The 2^l codewords of a code, ordered so that logical qubit j reads off
/// bit (l-1-j) of the word index: Z-bar_j gives (-1)^bit and X-bar_j flips
/// exactly that bit. Word 0 has every logical Z at +1; the phase is fixed
/// by making its first nonzero amplitude real positive, and the other words
/// are built from it by encoded X products.
pub fn codespace_basis(code: &StabilizerCode) -> Result<Vec<StateVector>> {
    let n = code.n_qubits();
    StateVector::check_width(n)?;
    let l = code.encoded_count();
    let dim = 1usize << n;

    let mut zero_word = None;
    for k in 0..dim {
        let mut state = StateVector::basis(n, k)?;
        for g in code.generators() {
            let mut hit = state.clone();
            hit.apply_pauli(g)?;
            for (a, h) in state.amps.iter_mut().zip(&hit.amps) {
                *a = (*a + h) * 0.5;
            }
        }
        for j in 0..l {
            let mut hit = state.clone();
            hit.apply_pauli(code.logical_z(j))?;
            for (a, h) in state.amps.iter_mut().zip(&hit.amps) {
                *a = (*a + h) * 0.5;
            }
        }
        let norm = state.norm();
        if norm > 1e-9 {
            let first = *state.amps.iter().find(|a| a.norm() > norm * 1e-9).unwrap();
            let fix = first.conj() / first.norm() / norm;
            for a in &mut state.amps {
                *a *= fix;
            }
            zero_word = Some(state);
            break;
        }
    }
    let zero_word = zero_word.ok_or_else(|| {
        Error::Unsupported("codespace projector annihilated every basis state".into())
    })?;

    let mut words = Vec::with_capacity(1 << l);
    for m in 0..1usize << l {
        let mut word = zero_word.clone();
        for j in 0..l {
            if m >> (l - 1 - j) & 1 == 1 {
                word.apply_pauli(code.logical_x(j))?;
            }
        }
        words.push(word);
    }
    Ok(words)
}

/// What a circuit does to the codespace: the matrix of codeword overlaps
/// and the worst norm lost outside the codespace.
#[derive(Clone, Debug)]
pub struct EncodedAction {
    pub dim: usize,
    /// Row-major: matrix[i * dim + j] = <word_i | U | word_j>.
    pub matrix: Vec<Complex64>,
    pub leakage: f64,
}

pub fn encoded_action(circuit: &Circuit, code: &StabilizerCode) -> Result<EncodedAction> {
    if circuit.n_qubits != code.n_qubits() {
        return Err(Error::WidthMismatch { expected: code.n_qubits(), got: circuit.n_qubits });
    }
    if circuit.gates.iter().any(|g| matches!(g, Gate::MeasureZ { .. })) {
        return Err(Error::Unsupported("encoded action needs a unitary circuit".into()));
    }
    let words = codespace_basis(code)?;
    let dim = words.len();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut matrix = vec![ZERO; dim * dim];
    let mut leakage = 0.0f64;
    for (j, word) in words.iter().enumerate() {
        let mut state = word.clone();
        state.run_circuit(circuit, &mut rng)?;
        // Leakage as an explicit residual: subtracting the codespace
        // component keeps the result linear in rounding noise, where
        // sqrt(1 - kept) would amplify it to sqrt scale.
        let mut res = state.amps.clone();
        for (i, basis) in words.iter().enumerate() {
            let amp = basis.inner(&state);
            matrix[i * dim + j] = amp;
            for (r, b) in res.iter_mut().zip(&basis.amps) {
                *r -= amp * b;
            }
        }
        let out = res.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        leakage = leakage.max(out);
    }
    Ok(EncodedAction { dim, matrix, leakage })
}

/// Spectral-norm distance between two dim x dim matrices after aligning the
/// global phase to maximize |trace overlap|.
pub fn phase_aligned_distance(a: &[Complex64], b: &[Complex64], dim: usize) -> Result<f64> {
    if a.len() != dim * dim || b.len() != dim * dim {
        return Err(Error::Parse("matrix buffers do not match the given dimension".into()));
    }
    let t: Complex64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
    let phase = if t.norm() > 1e-300 { t.conj() / t.norm() } else { Complex64::new(1.0, 0.0) };
    let d: Vec<Complex64> = a.iter().zip(b).map(|(x, y)| x - phase * y).collect();
    // Largest singular value of D via power iteration on D-dagger D.
    let mut h = vec![ZERO; dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            let mut acc = ZERO;
            for k in 0..dim {
                acc += d[k * dim + i].conj() * d[k * dim + j];
            }
            h[i * dim + j] = acc;
        }
    }
    let start = (0..dim).max_by(|&i, &j| h[i * dim + i].re.total_cmp(&h[j * dim + j].re)).unwrap();
    let mut v: Vec<Complex64> = (0..dim).map(|i| h[i * dim + start]).collect();
    if v.iter().all(|x| x.norm() < 1e-300) {
        return Ok(0.0);
    }
    let mut lambda = 0.0f64;
    for _ in 0..200 {
        let mut next = vec![ZERO; dim];
        for i in 0..dim {
            let mut acc = ZERO;
            for j in 0..dim {
                acc += h[i * dim + j] * v[j];
            }
            next[i] = acc;
        }
        let norm = next.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-300 {
            return Ok(0.0);
        }
        for x in &mut next {
            *x /= norm;
        }
        let new_lambda = norm / v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        v = next;
        if (new_lambda - lambda).abs() < 1e-15 * new_lambda.max(1.0) {
            lambda = new_lambda;
            break;
        }
        lambda = new_lambda;
    }
    Ok(lambda.max(0.0).sqrt())
}

/// Distance between the sliced two-block encoded CNOT and the ideal one,
/// both taken as matrices on the joint codespace.
pub fn trotter_error(code_a: &StabilizerCode, code_b: &StabilizerCode, slices: usize) -> Result<f64> {
    let circuit =
        synth_general_cnot(code_a, 0, code_b, 0, slices, Layout::Sequential, CentralBody::Two)?;
    let joint = code_a.tensor(code_b)?;
    let action = encoded_action(&circuit, &joint)?;
    let l = joint.encoded_count();
    let la = code_a.encoded_count();
    let dim = 1usize << l;
    let control = 1usize << (l - 1);
    let target = 1usize << (l - 1 - la);
    let mut ideal = vec![ZERO; dim * dim];
    for col in 0..dim {
        let row = if col & control != 0 { col ^ target } else { col };
        ideal[row * dim + col] = Complex64::new(1.0, 0.0);
    }
    phase_aligned_distance(&action.matrix, &ideal, dim)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InjectionProtocol {
    /// Measure the transformed stabilizer right after the fault, apply the
    /// table correction, then finish the circuit.
    MeasureAndCorrect,
    /// Only measure; record what the syndrome saw and what the fault cost.
    DetectOnly,
}

#[derive(Clone, Debug)]
pub struct InjectionCase {
    pub error: PauliOperator,
    pub location: usize,
    pub syndrome: u64,
    pub correction: Option<PauliOperator>,
    pub fidelity: f64,
}

#[derive(Clone, Debug)]
pub struct InjectionReport {
    pub cases: Vec<InjectionCase>,
    pub worst_fidelity: f64,
}

/// Insert every nonidentity group element at every fault location, measure
/// the momentary stabilizer through encoded ancillas, correct from the
/// syndrome table, finish the run, and compare with the clean run.
///
/// The input is a fixed generic encoded state (distinct weights and phases
/// across all codewords) so encoded-level damage cannot hide in a symmetry.
pub fn exhaustive_fault_injection(
    circuit: &Circuit,
    code: &StabilizerCode,
    protocol: InjectionProtocol,
    seed: u64,
) -> Result<InjectionReport> {
    let trace = trace_heisenberg(circuit, code)?;
    let errors = code.enumerate_group()?;
    let words = codespace_basis(code)?;

    let n = code.n_qubits();
    let mut amps = vec![ZERO; 1 << n];
    for (m, word) in words.iter().enumerate() {
        let w = Complex64::from_polar((m + 1) as f64, 0.6 * m as f64);
        for (a, b) in amps.iter_mut().zip(word.amplitudes()) {
            *a += w * b;
        }
    }
    let input = StateVector::from_amplitudes(n, amps)?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut reference = input.clone();
    reference.run_circuit(circuit, &mut rng)?;

    // One syndrome table per fault location, over the untransformed error
    // group against the transformed generators.
    let tables: Vec<_> = trace
        .locations
        .iter()
        .map(|loc| build_syndrome_table(&loc.stabilizer, &errors))
        .collect::<Result<Vec<_>>>()?;

    let jobs: Vec<(usize, usize)> = (0..trace.locations.len())
        .flat_map(|j| (1..errors.len()).map(move |e| (e, j)))
        .collect();

    let cases: Vec<InjectionCase> = jobs
        .par_iter()
        .map(|&(e_idx, j)| -> Result<InjectionCase> {
            let error = errors[e_idx];
            let mut rng =
                ChaCha8Rng::seed_from_u64(seed ^ (e_idx as u64).wrapping_mul(0x9e3779b97f4a7c15) ^ (j as u64));
            let mut state = input.clone();
            for gate in &circuit.gates[..j] {
                state.apply_gate(gate, &mut rng)?;
            }
            state.apply_pauli(&error)?;
            let syndrome =
                measure_syndrome(&mut state, &trace.locations[j].stabilizer, code, &mut rng)?;
            let mut correction = None;
            if protocol == InjectionProtocol::MeasureAndCorrect {
                if let Some(c) = tables[j].correction_for(syndrome) {
                    if !c.is_identity_mask() {
                        state.apply_pauli(&c)?;
                        correction = Some(c);
                    }
                }
            }
            for gate in &circuit.gates[j..] {
                state.apply_gate(gate, &mut rng)?;
            }
            Ok(InjectionCase {
                error,
                location: j,
                syndrome,
                correction,
                fidelity: state.fidelity(&reference),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let worst_fidelity = cases.iter().map(|c| c.fidelity).fold(1.0, f64::min);
    Ok(InjectionReport { cases, worst_fidelity })
}

/// Keep `PauliSum` in the module's public story: the encoded action of a
/// traced circuit can be reassembled from the final normalizer rows, which
/// is exactly what the verifier's ledgers certify. Used by tests.
pub fn sum_expectation(state: &StateVector, sum: &PauliSum) -> Result<Complex64> {
    let mut acc = ZERO;
    for (c, op) in sum.terms() {
        let mut hit = state.clone();
        hit.apply_pauli(op)?;
        acc += c * state.inner(&hit);
    }
    Ok(acc)
}
