//! Stabilizer group analysis: generator validation, a standard form for the
//! check matrix, encoded operator construction, group membership, and error
//! classification.
//!
//! Column blocks. Gaussian elimination over GF(2) picks pivot columns for
//! the X parts (the r block), then pivot columns for the Z parts of the
//! leftover rows (the s block); the columns left over carry the encoded
//! qubits (the l block). Everything downstream cites those three column
//! sets, so they are stored on the code rather than recomputed.

use crate::error::{Error, Result};
use crate::pauli::PauliOperator;
use crate::ENUM_CAP_LOG2;

/// Linear basis over GF(2) symplectic vectors with exact operator tracking.
///
/// Each stored row remembers a product of inserted operators whose mask
/// equals the row, so membership queries can recover the unique group
/// element carrying a given mask, sign included.
struct Gf2Basis {
    n_qubits: usize,
    rows: Vec<(u128, PauliOperator)>,
}

fn sym_vec(op: &PauliOperator) -> u128 {
    ((op.z_mask() as u128) << 64) | op.x_mask() as u128
}

fn high_bit(v: u128) -> u32 {
    127 - v.leading_zeros()
}

impl Gf2Basis {
    fn new(n_qubits: usize) -> Self {
        Self { n_qubits, rows: Vec::new() }
    }

    /// Residual mask and the accumulated product of basis operators used.
    /// A zero residual means the product carries exactly the query's mask.
    fn reduce(&self, op: &PauliOperator) -> (u128, PauliOperator) {
        let mut v = sym_vec(op);
        let mut acc = PauliOperator::identity(self.n_qubits).unwrap();
        for (row, p) in &self.rows {
            if v != 0 && (v >> high_bit(*row)) & 1 == 1 {
                v ^= row;
                acc = acc.mul(p).unwrap();
            }
        }
        (v, acc)
    }

    /// Insert if independent. Returns the representing product when the mask
    /// is already in the span.
    fn insert(&mut self, op: &PauliOperator) -> Option<PauliOperator> {
        let (v, acc) = self.reduce(op);
        if v == 0 {
            return Some(acc);
        }
        let row_op = acc.mul(op).unwrap();
        debug_assert_eq!(sym_vec(&row_op), v);
        let pos = self
            .rows
            .partition_point(|(r, _)| high_bit(*r) > high_bit(v));
        self.rows.insert(pos, (v, row_op));
        None
    }

    /// The unique group element with the query's mask, if the mask is in
    /// the span.
    fn representative(&self, op: &PauliOperator) -> Option<PauliOperator> {
        let (v, acc) = self.reduce(op);
        if v == 0 {
            Some(acc)
        } else {
            None
        }
    }
}

/// Check widths, Hermiticity, commutativity, and independence; pin down
/// which generator breaks which rule.
pub fn validate_generators(n_qubits: usize, generators: &[PauliOperator]) -> Result<()> {
    for (i, g) in generators.iter().enumerate() {
        if g.n_qubits() != n_qubits {
            return Err(Error::WidthMismatch { expected: n_qubits, got: g.n_qubits() });
        }
        if g.phase_exp() % 2 == 1 {
            return Err(Error::GeneratorNotHermitian { index: i });
        }
        for (j, h) in generators.iter().enumerate().take(i) {
            if !g.commutes_with(h)? {
                return Err(Error::NonAbelian { i: j, j: i });
            }
        }
    }
    let mut basis = Gf2Basis::new(n_qubits);
    for (i, g) in generators.iter().enumerate() {
        if let Some(rep) = basis.insert(g) {
            return if rep.phase_exp() == g.phase_exp() {
                Err(Error::DependentGenerators { index: i })
            } else {
                Err(Error::MinusIdentityInGroup { index: i })
            };
        }
    }
    Ok(())
}

fn gf2_rank(masks: impl IntoIterator<Item = u64>) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for mut v in masks {
        for b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
        }
    }
    basis.len()
}

/// A validated stabilizer code with its standard-form data.
#[derive(Clone)]
pub struct StabilizerCode {
    n_qubits: usize,
    generators: Vec<PauliOperator>,
    css: bool,
    x_pivot_cols: Vec<usize>,
    z_pivot_cols: Vec<usize>,
    logical_cols: Vec<usize>,
    standard_z: Vec<PauliOperator>,
    standard_x: Vec<PauliOperator>,
}

impl StabilizerCode {
    pub fn new(n_qubits: usize, generators: Vec<PauliOperator>) -> Result<Self> {
        validate_generators(n_qubits, &generators)?;
        let m = generators.len();
        // An independent abelian set without -I spans an isotropic subspace,
        // so validation already caps m at n_qubits.
        assert!(m <= n_qubits);

        let rx = gf2_rank(generators.iter().map(|g| g.x_mask()));
        let rz = gf2_rank(generators.iter().map(|g| g.z_mask()));
        let css = rx + rz == m;

        let rows = if css {
            css_generating_set(n_qubits, &generators)
        } else {
            generators.clone()
        };
        let (x_pivot_cols, z_pivot_cols, logical_cols, standard_z, standard_x) =
            derive_standard_form(n_qubits, rows);

        let code = Self {
            n_qubits,
            generators,
            css,
            x_pivot_cols,
            z_pivot_cols,
            logical_cols,
            standard_z,
            standard_x,
        };
        debug_assert!(code.standard_form_is_consistent());
        Ok(code)
    }

    fn standard_form_is_consistent(&self) -> bool {
        let l = self.encoded_count();
        for g in &self.generators {
            for op in self.standard_z.iter().chain(&self.standard_x) {
                if !op.commutes_with(g).unwrap() {
                    return false;
                }
            }
        }
        for i in 0..l {
            for j in 0..l {
                let zx = self.standard_z[i].commutes_with(&self.standard_x[j]).unwrap();
                if zx != (i != j) {
                    return false;
                }
                if !self.standard_z[i].commutes_with(&self.standard_z[j]).unwrap() {
                    return false;
                }
                if !self.standard_x[i].commutes_with(&self.standard_x[j]).unwrap() {
                    return false;
                }
            }
        }
        true
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    /// Number of encoded qubits.
    pub fn encoded_count(&self) -> usize {
        self.n_qubits - self.generators.len()
    }

    pub fn is_css(&self) -> bool {
        self.css
    }

    pub fn x_pivot_cols(&self) -> &[usize] {
        &self.x_pivot_cols
    }

    pub fn z_pivot_cols(&self) -> &[usize] {
        &self.z_pivot_cols
    }

    pub fn logical_cols(&self) -> &[usize] {
        &self.logical_cols
    }

    pub fn standard_z(&self) -> &[PauliOperator] {
        &self.standard_z
    }

    pub fn standard_x(&self) -> &[PauliOperator] {
        &self.standard_x
    }

    pub fn logical_z(&self, j: usize) -> &PauliOperator {
        &self.standard_z[j]
    }

    pub fn logical_x(&self, j: usize) -> &PauliOperator {
        &self.standard_x[j]
    }

    /// i X̄_j Z̄_j, the Hermitian encoded Y.
    pub fn logical_y(&self, j: usize) -> PauliOperator {
        self.standard_x[j].mul(&self.standard_z[j]).unwrap().times_i()
    }

    /// All 2^m group elements, identity first, exact signs.
    pub fn enumerate_group(&self) -> Result<Vec<PauliOperator>> {
        let m = self.generators.len();
        if m as u32 > ENUM_CAP_LOG2 {
            return Err(Error::GroupTooLarge { generators: m, cap_log2: ENUM_CAP_LOG2 });
        }
        let mut out = Vec::with_capacity(1 << m);
        let mut acc = PauliOperator::identity(self.n_qubits)?;
        out.push(acc);
        for k in 1usize..(1 << m) {
            // Gray code: element k differs from k-1 by one generator.
            let idx = k.trailing_zeros() as usize;
            acc = acc.mul(&self.generators[idx])?;
            out.push(acc);
        }
        Ok(out)
    }

    fn mask_basis(&self) -> Gf2Basis {
        let mut basis = Gf2Basis::new(self.n_qubits);
        for g in &self.generators {
            basis.insert(g);
        }
        basis
    }

    /// The unique group element sharing the query's letters, if any.
    pub fn group_representative(&self, op: &PauliOperator) -> Option<PauliOperator> {
        if op.n_qubits() != self.n_qubits {
            return None;
        }
        self.mask_basis().representative(op)
    }

    /// Letters appear in the group; the sign may differ.
    pub fn contains_mask(&self, op: &PauliOperator) -> bool {
        self.group_representative(op).is_some()
    }

    /// The exact signed operator is a group element.
    pub fn contains_exact(&self, op: &PauliOperator) -> bool {
        self.group_representative(op)
            .is_some_and(|rep| rep.phase_exp() == op.phase_exp())
    }

    /// Commutes with every generator.
    pub fn in_normalizer(&self, op: &PauliOperator) -> Result<bool> {
        for g in &self.generators {
            if !op.commutes_with(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// a = q b for some group element q, signs included.
    pub fn logically_equal(&self, a: &PauliOperator, b: &PauliOperator) -> Result<bool> {
        let prod = a.mul(&b.adjoint())?;
        Ok(self.contains_exact(&prod))
    }

    /// The combined code on two adjacent blocks: every generator of `self`
    /// on the low qubits, every generator of `other` on the high qubits.
    /// Standard-form data comes out block-local because elimination never
    /// mixes columns across blocks.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let n = self.n_qubits + other.n_qubits;
        let mut gens = Vec::with_capacity(self.generators.len() + other.generators.len());
        for g in &self.generators {
            gens.push(g.embed(n, 0)?);
        }
        for g in &other.generators {
            gens.push(g.embed(n, self.n_qubits)?);
        }
        Self::new(n, gens)
    }
}

/// Re-generate a CSS group as pure-X rows followed by pure-Z rows.
///
/// Eliminating the Z parts leaves the non-pivot rows with zero Z part: a
/// basis of the pure-X subgroup. Same story with X and Z swapped. The two
/// subgroups intersect only in the identity, and for a CSS group their
/// dimensions add up to the whole, so the union generates it.
fn css_generating_set(n_qubits: usize, generators: &[PauliOperator]) -> Vec<PauliOperator> {
    let pure_x = eliminate_leaving_pure(n_qubits, generators, false);
    let pure_z = eliminate_leaving_pure(n_qubits, generators, true);
    let mut out = pure_x;
    out.extend(pure_z);
    debug_assert_eq!(out.len(), generators.len());
    out
}

fn eliminate_leaving_pure(
    n_qubits: usize,
    generators: &[PauliOperator],
    on_x: bool,
) -> Vec<PauliOperator> {
    let mut rows = generators.to_vec();
    let part = |op: &PauliOperator| if on_x { op.x_mask() } else { op.z_mask() };
    let mut piv = 0;
    for col in 0..n_qubits {
        let bit = 1u64 << col;
        let Some(idx) = (piv..rows.len()).find(|&k| part(&rows[k]) & bit != 0) else {
            continue;
        };
        rows.swap(piv, idx);
        for k in 0..rows.len() {
            if k != piv && part(&rows[k]) & bit != 0 {
                rows[k] = rows[k].mul(&rows[piv]).unwrap();
            }
        }
        piv += 1;
    }
    rows.split_off(piv)
}

type StandardForm = (
    Vec<usize>,
    Vec<usize>,
    Vec<usize>,
    Vec<PauliOperator>,
    Vec<PauliOperator>,
);

/// Row-reduce the check matrix and read the encoded operators off it.
///
/// After full X-part reduction the pivot rows carry an identity on the r
/// columns; the remaining rows have no X part at all, and their Z parts
/// restricted to the non-r columns always have full rank: a combination
/// supported only on r columns would anticommute with the pivot row of any
/// column it touches. Encoded Z_j is pure Z: a Z on its l column plus Z's
/// patching up commutation with the X pivots. Encoded X_j carries an X on
/// its l column, X's on s columns mirroring the Z rows that see that l
/// column, and Z's on r columns fixing commutation with the pivot rows.
fn derive_standard_form(n_qubits: usize, mut rows: Vec<PauliOperator>) -> StandardForm {
    let m = rows.len();

    let mut x_pivot_cols: Vec<usize> = Vec::new();
    for col in 0..n_qubits {
        let bit = 1u64 << col;
        let piv = x_pivot_cols.len();
        let Some(idx) = (piv..m).find(|&k| rows[k].x_mask() & bit != 0) else {
            continue;
        };
        rows.swap(piv, idx);
        for k in 0..m {
            if k != piv && rows[k].x_mask() & bit != 0 {
                rows[k] = rows[k].mul(&rows[piv]).unwrap();
            }
        }
        x_pivot_cols.push(col);
    }
    let r = x_pivot_cols.len();
    debug_assert!(rows[r..].iter().all(|row| row.x_mask() == 0));

    let mut z_pivot_cols: Vec<usize> = Vec::new();
    for col in 0..n_qubits {
        if x_pivot_cols.contains(&col) {
            continue;
        }
        let bit = 1u64 << col;
        let piv = r + z_pivot_cols.len();
        let Some(idx) = (piv..m).find(|&k| rows[k].z_mask() & bit != 0) else {
            continue;
        };
        rows.swap(piv, idx);
        for k in r..m {
            if k != piv && rows[k].z_mask() & bit != 0 {
                rows[k] = rows[k].mul(&rows[piv]).unwrap();
            }
        }
        z_pivot_cols.push(col);
    }
    let s = z_pivot_cols.len();
    assert_eq!(s, m - r, "z-only rows always have full rank off the r columns");

    let logical_cols: Vec<usize> = (0..n_qubits)
        .filter(|c| !x_pivot_cols.contains(c) && !z_pivot_cols.contains(c))
        .collect();

    let mut standard_z = Vec::with_capacity(logical_cols.len());
    let mut standard_x = Vec::with_capacity(logical_cols.len());
    for &q in &logical_cols {
        let qbit = 1u64 << q;

        let mut zj = qbit;
        for i in 0..r {
            if rows[i].x_mask() & qbit != 0 {
                zj |= 1u64 << x_pivot_cols[i];
            }
        }
        standard_z.push(PauliOperator::from_masks(n_qubits, 0, zj, 0).unwrap());

        let mut xj_x = qbit;
        let w: Vec<bool> = (0..s).map(|k| rows[r + k].z_mask() & qbit != 0).collect();
        for k in 0..s {
            if w[k] {
                xj_x |= 1u64 << z_pivot_cols[k];
            }
        }
        let mut xj_z = 0u64;
        for i in 0..r {
            let mut parity = rows[i].z_mask() & qbit != 0;
            for k in 0..s {
                parity ^= w[k] && rows[i].z_mask() & (1u64 << z_pivot_cols[k]) != 0;
            }
            if parity {
                xj_z |= 1u64 << x_pivot_cols[i];
            }
        }
        standard_x.push(PauliOperator::from_masks(n_qubits, xj_x, xj_z, 0).unwrap());
    }

    (x_pivot_cols, z_pivot_cols, logical_cols, standard_z, standard_x)
}

/// How an error relates to a (possibly transformed) stabilizer group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Letters match a group element: acts trivially on the code space.
    InStabilizer,
    /// Anticommutes with at least one generator: flips a syndrome bit.
    Detectable,
    /// Commutes with everything but is not in the group: an encoded
    /// operation, invisible to every syndrome.
    UndetectableLogical,
}

/// Classifies errors against a fixed generator list.
pub struct ErrorClassifier {
    n_qubits: usize,
    generators: Vec<PauliOperator>,
    basis: Gf2Basis,
}

impl ErrorClassifier {
    pub fn new(n_qubits: usize, generators: Vec<PauliOperator>) -> Result<Self> {
        let mut basis = Gf2Basis::new(n_qubits);
        for g in &generators {
            if g.n_qubits() != n_qubits {
                return Err(Error::WidthMismatch { expected: n_qubits, got: g.n_qubits() });
            }
            basis.insert(g);
        }
        Ok(Self { n_qubits, generators, basis })
    }

    pub fn from_code(code: &StabilizerCode) -> Self {
        Self::new(code.n_qubits(), code.generators().to_vec()).unwrap()
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    pub fn classify(&self, error: &PauliOperator) -> Result<ErrorClass> {
        if error.n_qubits() != self.n_qubits {
            return Err(Error::WidthMismatch { expected: self.n_qubits, got: error.n_qubits() });
        }
        if self.basis.representative(error).is_some() {
            return Ok(ErrorClass::InStabilizer);
        }
        for g in &self.generators {
            if !error.commutes_with(g)? {
                return Ok(ErrorClass::Detectable);
            }
        }
        Ok(ErrorClass::UndetectableLogical)
    }

    /// Syndrome bits against the generator letters; bit i set when the
    /// error anticommutes with generator i. Signs of the generators do not
    /// matter here; they shift measured values, not the anticommutation.
    pub fn syndrome_bits(&self, error: &PauliOperator) -> Result<u64> {
        let mut bits = 0u64;
        for (i, g) in self.generators.iter().enumerate() {
            if !error.commutes_with(g)? {
                bits |= 1u64 << i;
            }
        }
        Ok(bits)
    }

    /// A set of errors is correctable iff no quotient of two of them is an
    /// undetectable encoded operation. Returns the offending pairs.
    pub fn correctability_gaps(
        &self,
        errors: &[PauliOperator],
    ) -> Result<Vec<(usize, usize)>> {
        let mut gaps = Vec::new();
        for i in 0..errors.len() {
            for j in (i + 1)..errors.len() {
                let quot = errors[i].adjoint().mul(&errors[j])?;
                if self.classify(&quot)? == ErrorClass::UndetectableLogical {
                    gaps.push((i, j));
                }
            }
        }
        Ok(gaps)
    }

    pub fn check_correctability(&self, errors: &[PauliOperator]) -> Result<bool> {
        Ok(self.correctability_gaps(errors)?.is_empty())
    }
}

/// Text format for generator lists: blank lines and `#` comments are
/// skipped, an optional `K=<n>` line pins the qubit count, and every other
/// line is one operator.
pub fn parse_generator_file(text: &str) -> Result<(usize, Vec<PauliOperator>)> {
    let mut declared: Option<usize> = None;
    let mut gens: Vec<PauliOperator> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let flat: String = line.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(v) = flat.strip_prefix("K=").or_else(|| flat.strip_prefix("k=")) {
            let n: usize = v
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad qubit count {v:?}", lineno + 1)))?;
            declared = Some(n);
            continue;
        }
        let op: PauliOperator = line
            .parse()
            .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
        gens.push(op);
    }
    let n = match (declared, gens.first()) {
        (Some(n), _) => n,
        (None, Some(g)) => g.n_qubits(),
        (None, None) => return Err(Error::Parse("no generators and no K= line".into())),
    };
    for g in &gens {
        if g.n_qubits() != n {
            return Err(Error::WidthMismatch { expected: n, got: g.n_qubits() });
        }
    }
    Ok((n, gens))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::pauli;

    fn ops(strs: &[&str]) -> Vec<PauliOperator> {
        strs.iter().map(|s| pauli(s)).collect()
    }

    #[test]
    fn validation_pins_down_failures() {
        assert!(matches!(
            validate_generators(2, &ops(&["XI", "ZI"])),
            Err(Error::NonAbelian { i: 0, j: 1 })
        ));
        // XX * ZZ = (-iY)(-iY) = -YY, so -YY is the redundant generator and
        // +YY is the one that smuggles -I into the group.
        assert!(matches!(
            validate_generators(2, &ops(&["XX", "ZZ", "-YY"])),
            Err(Error::DependentGenerators { index: 2 })
        ));
        assert!(matches!(
            validate_generators(2, &ops(&["XX", "ZZ", "YY"])),
            Err(Error::MinusIdentityInGroup { index: 2 })
        ));
        assert!(matches!(
            validate_generators(2, &ops(&["iXX"])),
            Err(Error::GeneratorNotHermitian { index: 0 })
        ));
        assert!(matches!(
            validate_generators(2, &ops(&["XXX"])),
            Err(Error::WidthMismatch { expected: 2, got: 3 })
        ));
        assert!(validate_generators(2, &ops(&["XX", "-ZZ"])).is_ok());
    }

    #[test]
    fn xxxx_yyyy_is_dependent_with_plus_sign() {
        // XXXX * ZZZZ = (XZ)^4 = (-i)^4 YYYY = +YYYY, so +YYYY is dependent
        // and -YYYY would put -I in the group.
        assert!(matches!(
            validate_generators(4, &ops(&["XXXX", "ZZZZ", "YYYY"])),
            Err(Error::DependentGenerators { index: 2 })
        ));
        assert!(matches!(
            validate_generators(4, &ops(&["XXXX", "ZZZZ", "-YYYY"])),
            Err(Error::MinusIdentityInGroup { index: 2 })
        ));
    }

    #[test]
    fn pure_x_chain_standard_form() {
        let code = StabilizerCode::new(4, ops(&["XXII", "IXXI", "IIXX"])).unwrap();
        assert!(code.is_css());
        assert_eq!(code.encoded_count(), 1);
        assert_eq!(code.x_pivot_cols(), &[0, 1, 2]);
        assert_eq!(code.z_pivot_cols(), &[] as &[usize]);
        assert_eq!(code.logical_cols(), &[3]);
        assert_eq!(*code.logical_z(0), pauli("ZZZZ"));
        assert_eq!(*code.logical_x(0), pauli("IIIX"));
        // IIIX is XIII times the group element XIIX.
        assert!(code.logically_equal(&pauli("IIIX"), &pauli("XIII")).unwrap());
    }

    #[test]
    fn xxxx_zzzz_standard_form() {
        let code = StabilizerCode::new(4, ops(&["XXXX", "ZZZZ"])).unwrap();
        assert!(code.is_css());
        assert_eq!(code.encoded_count(), 2);
        assert_eq!(code.x_pivot_cols(), &[0]);
        assert_eq!(code.z_pivot_cols(), &[1]);
        assert_eq!(code.logical_cols(), &[2, 3]);
        assert_eq!(*code.logical_z(0), pauli("ZIZI"));
        assert_eq!(*code.logical_z(1), pauli("ZIIZ"));
        assert_eq!(*code.logical_x(0), pauli("IXXI"));
        assert_eq!(*code.logical_x(1), pauli("IXIX"));
    }

    #[test]
    fn seven_qubit_css_standard_form() {
        let code = StabilizerCode::new(
            7,
            ops(&[
                "IIIXXXX", "IXXIIXX", "XIXIXIX", "IIIZZZZ", "IZZIIZZ", "ZIZIZIZ",
            ]),
        )
        .unwrap();
        assert!(code.is_css());
        assert_eq!(code.encoded_count(), 1);
        assert_eq!(code.x_pivot_cols(), &[0, 1, 3]);
        assert_eq!(code.z_pivot_cols(), &[2, 4, 6]);
        assert_eq!(code.logical_cols(), &[5]);
        assert_eq!(*code.logical_z(0), pauli("IZIZIZI"));
        assert_eq!(*code.logical_x(0), pauli("IIXIXXI"));
    }

    #[test]
    fn five_qubit_code_is_not_css() {
        let code = StabilizerCode::new(
            5,
            ops(&["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]),
        )
        .unwrap();
        assert!(!code.is_css());
        assert_eq!(code.encoded_count(), 1);
        assert_eq!(code.x_pivot_cols().len(), 4);
        assert_eq!(code.z_pivot_cols().len(), 0);
        assert_eq!(code.logical_cols().len(), 1);
        let q = code.logical_cols()[0];
        let xbar = code.logical_x(0);
        // One X on the encoded column, Z's elsewhere, no other X's.
        assert_eq!(xbar.x_mask(), 1 << q);
        assert_ne!(xbar.z_mask(), 0);
        let zbar = code.logical_z(0);
        assert_eq!(zbar.x_mask(), 0);
    }

    #[test]
    fn standard_form_pairing_holds_across_codes() {
        let codes = [
            StabilizerCode::new(4, ops(&["XXII", "IXXI", "IIXX"])).unwrap(),
            StabilizerCode::new(4, ops(&["XXXX", "ZZZZ"])).unwrap(),
            StabilizerCode::new(5, ops(&["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"])).unwrap(),
            StabilizerCode::new(
                6,
                ops(&["XIIIIX", "IXIIIX", "IIXIIX", "ZZZZIZ", "ZZZIZZ"]),
            )
            .unwrap(),
        ];
        for code in &codes {
            let l = code.encoded_count();
            for j in 0..l {
                assert!(code.in_normalizer(code.logical_z(j)).unwrap());
                assert!(code.in_normalizer(code.logical_x(j)).unwrap());
                assert!(!code.contains_mask(code.logical_z(j)));
                assert!(!code.contains_mask(code.logical_x(j)));
                let y = code.logical_y(j);
                assert_eq!(y.phase_exp() % 2, 0, "encoded Y must be Hermitian");
            }
        }
    }

    #[test]
    fn six_qubit_code_matches_hand_derivation() {
        let code = StabilizerCode::new(
            6,
            ops(&["XIIIIX", "IXIIIX", "IIXIIX", "ZZZZIZ", "ZZZIZZ"]),
        )
        .unwrap();
        assert!(code.is_css());
        assert_eq!(code.encoded_count(), 1);
        assert_eq!(code.x_pivot_cols(), &[0, 1, 2]);
        assert_eq!(code.z_pivot_cols(), &[3, 4]);
        assert_eq!(code.logical_cols(), &[5]);
        assert_eq!(*code.logical_z(0), pauli("ZZZIIZ"));
        assert_eq!(*code.logical_x(0), pauli("IIIXXX"));
    }

    #[test]
    fn group_enumeration_is_exact() {
        let code = StabilizerCode::new(4, ops(&["XXXX", "ZZZZ"])).unwrap();
        let group = code.enumerate_group().unwrap();
        assert_eq!(group.len(), 4);
        assert!(group[0].is_identity());
        let shown: Vec<String> = group.iter().map(|g| g.to_string()).collect();
        assert!(shown.contains(&"XXXX".into()));
        assert!(shown.contains(&"ZZZZ".into()));
        assert!(shown.contains(&"YYYY".into()), "sign matters: +YYYY, got {shown:?}");
        for g in &group {
            assert_eq!(g.phase_exp() % 2, 0);
        }
    }

    #[test]
    fn membership_queries_track_signs() {
        let code = StabilizerCode::new(4, ops(&["XXII", "IXXI", "IIXX"])).unwrap();
        assert!(code.contains_exact(&pauli("XIXI")));
        assert!(code.contains_mask(&pauli("-XIXI")));
        assert!(!code.contains_exact(&pauli("-XIXI")));
        assert!(!code.contains_mask(&pauli("ZIII")));
        assert_eq!(code.group_representative(&pauli("XIIX")), Some(pauli("XIIX")));
    }

    #[test]
    fn classification_splits_three_ways() {
        let code = StabilizerCode::new(4, ops(&["XXII", "IXXI", "IIXX"])).unwrap();
        let cls = ErrorClassifier::from_code(&code);
        assert_eq!(cls.classify(&pauli("XXII")).unwrap(), ErrorClass::InStabilizer);
        assert_eq!(cls.classify(&pauli("ZIII")).unwrap(), ErrorClass::Detectable);
        assert_eq!(
            cls.classify(&pauli("ZZZZ")).unwrap(),
            ErrorClass::UndetectableLogical
        );
        assert_eq!(
            cls.classify(&pauli("XIII")).unwrap(),
            ErrorClass::UndetectableLogical,
            "bare X acts as the encoded X here"
        );
        assert_eq!(cls.syndrome_bits(&pauli("ZIII")).unwrap(), 0b001);
        assert_eq!(cls.syndrome_bits(&pauli("IZII")).unwrap(), 0b011);
    }

    #[test]
    fn correctability_of_single_phase_flips() {
        let code = StabilizerCode::new(4, ops(&["XXII", "IXXI", "IIXX"])).unwrap();
        let cls = ErrorClassifier::from_code(&code);
        let mut errs = ops(&["IIII", "ZIII", "IZII", "IIZI", "IIIZ"]);
        assert!(cls.check_correctability(&errs).unwrap());
        errs.push(pauli("XIII"));
        let gaps = cls.correctability_gaps(&errs).unwrap();
        assert!(gaps.contains(&(0, 5)), "identity vs encoded X: {gaps:?}");
    }

    #[test]
    fn tensor_keeps_blocks_separate() {
        let a = StabilizerCode::new(4, ops(&["XXII", "IXXI", "IIXX"])).unwrap();
        let b = StabilizerCode::new(4, ops(&["XXXX", "ZZZZ"])).unwrap();
        let ab = a.tensor(&b).unwrap();
        assert_eq!(ab.n_qubits(), 8);
        assert_eq!(ab.encoded_count(), 3);
        assert_eq!(*ab.logical_z(0), pauli("ZZZZ").embed(8, 0).unwrap());
        assert_eq!(*ab.logical_x(0), pauli("IIIX").embed(8, 0).unwrap());
        assert_eq!(*ab.logical_z(1), pauli("ZIZI").embed(8, 4).unwrap());
        assert_eq!(*ab.logical_x(2), pauli("IXIX").embed(8, 4).unwrap());
    }

    #[test]
    fn generator_file_round_trip() {
        let text = "# comment\nK=4\nXXII\n IXXI\nIIXX\n";
        let (n, gens) = parse_generator_file(text).unwrap();
        assert_eq!(n, 4);
        assert_eq!(gens, ops(&["XXII", "IXXI", "IIXX"]));
        let (n2, gens2) = parse_generator_file("XX\n-ZZ\n").unwrap();
        assert_eq!(n2, 2);
        assert_eq!(gens2[1], pauli("-ZZ"));
        assert!(parse_generator_file("K=3\nXX\n").is_err());
        assert!(parse_generator_file("# nothing\n").is_err());
    }

    #[test]
    fn zero_generator_code_is_all_logical() {
        let code = StabilizerCode::new(2, vec![]).unwrap();
        assert_eq!(code.encoded_count(), 2);
        assert_eq!(*code.logical_z(0), pauli("ZI"));
        assert_eq!(*code.logical_x(1), pauli("IX"));
    }
}
