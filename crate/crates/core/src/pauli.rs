//! Bit-packed Pauli operators on up to 64 qubits.
//!
//! An operator is i^k * (L_0 ⊗ L_1 ⊗ ... ⊗ L_{n-1}) where every letter L_q
//! is one of I, X, Y, Z. Letter q lives in bit q of two masks:
//! (x,z) = (0,0) -> I, (1,0) -> X, (0,1) -> Z, (1,1) -> Y.
//! Y is the Hermitian letter, so the masks never hide a phase on their own;
//! the global phase i^k is tracked separately in `phase_exp` (k mod 4).
//!
//! Qubit 0 is the leftmost letter in the string form, and bit 0 of the masks.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Hard width cap imposed by the u64 mask representation.
pub const MAX_QUBITS: usize = 64;

/// One tensor factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c.to_ascii_uppercase() {
            'I' => Some(Letter::I),
            'X' => Some(Letter::X),
            'Y' => Some(Letter::Y),
            'Z' => Some(Letter::Z),
            _ => None,
        }
    }
}

/// i^phase_exp * tensor of letters, bit-packed.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    n_qubits: usize,
    x_mask: u64,
    z_mask: u64,
    phase_exp: u8,
}

fn check_width(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Unsupported("operator needs at least one qubit".into()));
    }
    if n > MAX_QUBITS {
        return Err(Error::TooManyQubits { requested: n, cap: MAX_QUBITS });
    }
    Ok(())
}

fn width_mask(n: usize) -> u64 {
    if n == 64 { u64::MAX } else { (1u64 << n) - 1 }
}

impl PauliOperator {
    pub fn identity(n_qubits: usize) -> Result<Self> {
        check_width(n_qubits)?;
        Ok(Self { n_qubits, x_mask: 0, z_mask: 0, phase_exp: 0 })
    }

    pub fn from_masks(n_qubits: usize, x_mask: u64, z_mask: u64, phase_exp: u8) -> Result<Self> {
        check_width(n_qubits)?;
        let w = width_mask(n_qubits);
        if x_mask & !w != 0 || z_mask & !w != 0 {
            let stray = ((x_mask | z_mask) & !w).trailing_zeros() as usize;
            return Err(Error::QubitOutOfRange { index: stray, n_qubits });
        }
        Ok(Self { n_qubits, x_mask, z_mask, phase_exp: phase_exp % 4 })
    }

    pub fn single(n_qubits: usize, qubit: usize, letter: Letter) -> Result<Self> {
        let mut op = Self::identity(n_qubits)?;
        op.set_letter(qubit, letter)?;
        Ok(op)
    }

    /// Builder form of `set_letter`, handy for spelling out operators qubit
    /// by qubit.
    pub fn with_letter(mut self, qubit: usize, letter: Letter) -> Result<Self> {
        self.set_letter(qubit, letter)?;
        Ok(self)
    }

    pub fn set_letter(&mut self, qubit: usize, letter: Letter) -> Result<()> {
        if qubit >= self.n_qubits {
            return Err(Error::QubitOutOfRange { index: qubit, n_qubits: self.n_qubits });
        }
        let bit = 1u64 << qubit;
        let (x, z) = letter.bits();
        self.x_mask = if x { self.x_mask | bit } else { self.x_mask & !bit };
        self.z_mask = if z { self.z_mask | bit } else { self.z_mask & !bit };
        Ok(())
    }

    pub fn letter_at(&self, qubit: usize) -> Letter {
        debug_assert!(qubit < self.n_qubits);
        let x = (self.x_mask >> qubit) & 1 == 1;
        let z = (self.z_mask >> qubit) & 1 == 1;
        Letter::from_bits(x, z)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn x_mask(&self) -> u64 {
        self.x_mask
    }

    pub fn z_mask(&self) -> u64 {
        self.z_mask
    }

    pub fn phase_exp(&self) -> u8 {
        self.phase_exp
    }

    pub fn with_phase_exp(mut self, phase_exp: u8) -> Self {
        self.phase_exp = phase_exp % 4;
        self
    }

    /// Same letters, phase forced to +1.
    pub fn bare(mut self) -> Self {
        self.phase_exp = 0;
        self
    }

    pub fn negated(mut self) -> Self {
        self.phase_exp = (self.phase_exp + 2) % 4;
        self
    }

    /// Conjugate transpose: letters unchanged, phase conjugated.
    pub fn adjoint(mut self) -> Self {
        self.phase_exp = (4 - self.phase_exp) % 4;
        self
    }

    pub fn times_i(mut self) -> Self {
        self.phase_exp = (self.phase_exp + 1) % 4;
        self
    }

    pub fn is_identity_mask(&self) -> bool {
        self.x_mask == 0 && self.z_mask == 0
    }

    pub fn is_identity(&self) -> bool {
        self.is_identity_mask() && self.phase_exp == 0
    }

    /// Letters match, phase ignored.
    pub fn same_mask(&self, other: &Self) -> bool {
        self.n_qubits == other.n_qubits
            && self.x_mask == other.x_mask
            && self.z_mask == other.z_mask
    }

    pub fn weight(&self) -> u32 {
        (self.x_mask | self.z_mask).count_ones()
    }

    pub fn support(&self) -> Vec<usize> {
        let mut m = self.x_mask | self.z_mask;
        let mut out = Vec::with_capacity(m.count_ones() as usize);
        while m != 0 {
            let q = m.trailing_zeros() as usize;
            out.push(q);
            m &= m - 1;
        }
        out
    }

    fn check_same_width(&self, other: &Self) -> Result<()> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::WidthMismatch { expected: self.n_qubits, got: other.n_qubits });
        }
        Ok(())
    }

    /// Exact operator product.
    ///
    /// Accumulates, per qubit, the power of i produced when two letters are
    /// written as X^x Z^z normal forms and recombined; the popcount form sums
    /// the per-qubit contributions mod 4 in one pass.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_same_width(rhs)?;
        let x3 = self.x_mask ^ rhs.x_mask;
        let z3 = self.z_mask ^ rhs.z_mask;
        let t = (self.x_mask & self.z_mask).count_ones()
            + (rhs.x_mask & rhs.z_mask).count_ones()
            + 3 * (x3 & z3).count_ones()
            + 2 * (self.z_mask & rhs.x_mask).count_ones();
        let phase = (self.phase_exp as u32 + rhs.phase_exp as u32 + t) % 4;
        Ok(Self { n_qubits: self.n_qubits, x_mask: x3, z_mask: z3, phase_exp: phase as u8 })
    }

    pub fn commutes_with(&self, other: &Self) -> Result<bool> {
        self.check_same_width(other)?;
        let p = (self.x_mask & other.z_mask).count_ones()
            + (self.z_mask & other.x_mask).count_ones();
        Ok(p % 2 == 0)
    }

    pub fn anticommutes_with(&self, other: &Self) -> Result<bool> {
        Ok(!self.commutes_with(other)?)
    }

    /// A ⊗ B on the concatenated register; self takes the low qubit indices.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let n = self.n_qubits + other.n_qubits;
        check_width(n)?;
        Ok(Self {
            n_qubits: n,
            x_mask: self.x_mask | (other.x_mask << self.n_qubits),
            z_mask: self.z_mask | (other.z_mask << self.n_qubits),
            phase_exp: (self.phase_exp + other.phase_exp) % 4,
        })
    }

    /// Place these letters at `offset` inside a wider identity register.
    pub fn embed(&self, n_total: usize, offset: usize) -> Result<Self> {
        check_width(n_total)?;
        if offset + self.n_qubits > n_total {
            return Err(Error::QubitOutOfRange {
                index: offset + self.n_qubits - 1,
                n_qubits: n_total,
            });
        }
        Ok(Self {
            n_qubits: n_total,
            x_mask: self.x_mask << offset,
            z_mask: self.z_mask << offset,
            phase_exp: self.phase_exp,
        })
    }

    /// Letters on `range` as a standalone operator; the phase stays behind.
    pub fn sub_operator(&self, range: Range<usize>) -> Result<Self> {
        if range.end > self.n_qubits || range.is_empty() {
            return Err(Error::QubitOutOfRange {
                index: range.end.saturating_sub(1),
                n_qubits: self.n_qubits,
            });
        }
        let w = width_mask(range.len());
        Ok(Self {
            n_qubits: range.len(),
            x_mask: (self.x_mask >> range.start) & w,
            z_mask: (self.z_mask >> range.start) & w,
            phase_exp: 0,
        })
    }

    /// B -> U† B U for U = exp(i * sign * π/4 * axis).
    ///
    /// Commuting B passes through; anticommuting B maps to the single
    /// operator i * sign * B * axis, still exact.
    pub fn conjugate_quarter(&self, axis: &Self, sign: i8) -> Result<Self> {
        debug_assert!(sign == 1 || sign == -1);
        if self.commutes_with(axis)? {
            return Ok(*self);
        }
        let mut out = self.mul(axis)?;
        out.phase_exp = (out.phase_exp + if sign >= 0 { 1 } else { 3 }) % 4;
        Ok(out)
    }

    /// B -> R B R† for the basis-swap gate R on `qubit`: X <-> Z, Y -> -Y.
    pub fn conjugate_r(&self, qubit: usize) -> Result<Self> {
        if qubit >= self.n_qubits {
            return Err(Error::QubitOutOfRange { index: qubit, n_qubits: self.n_qubits });
        }
        let bit = 1u64 << qubit;
        let xb = self.x_mask & bit;
        let zb = self.z_mask & bit;
        let mut out = *self;
        out.x_mask = (self.x_mask & !bit) | if zb != 0 { bit } else { 0 };
        out.z_mask = (self.z_mask & !bit) | if xb != 0 { bit } else { 0 };
        if xb != 0 && zb != 0 {
            out.phase_exp = (out.phase_exp + 2) % 4;
        }
        Ok(out)
    }

    /// B -> Q B Q† for the cycling gate Q on `qubit`: Z -> X -> Y -> Z.
    pub fn conjugate_q(&self, qubit: usize) -> Result<Self> {
        if qubit >= self.n_qubits {
            return Err(Error::QubitOutOfRange { index: qubit, n_qubits: self.n_qubits });
        }
        let bit = 1u64 << qubit;
        let xb = self.x_mask & bit != 0;
        let zb = self.z_mask & bit != 0;
        let mut out = *self;
        out.x_mask = (self.x_mask & !bit) | if xb != zb { bit } else { 0 };
        out.z_mask = (self.z_mask & !bit) | if xb { bit } else { 0 };
        Ok(out)
    }

    /// B -> CNOT B CNOT† with the given control and target.
    pub fn conjugate_cnot(&self, control: usize, target: usize) -> Result<Self> {
        if control >= self.n_qubits {
            return Err(Error::QubitOutOfRange { index: control, n_qubits: self.n_qubits });
        }
        if target >= self.n_qubits || target == control {
            return Err(Error::QubitOutOfRange { index: target, n_qubits: self.n_qubits });
        }
        let xc = (self.x_mask >> control) & 1;
        let zc = (self.z_mask >> control) & 1;
        let xt = (self.x_mask >> target) & 1;
        let zt = (self.z_mask >> target) & 1;
        let mut out = *self;
        out.x_mask ^= xc << target;
        out.z_mask ^= zt << control;
        // The lone sign flip in the letter table: X⊗Z -> -Y⊗Y and Y⊗Y -> -X⊗Z.
        if xc & zt & (xt ^ zc ^ 1) == 1 {
            out.phase_exp = (out.phase_exp + 2) % 4;
        }
        Ok(out)
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.phase_exp {
            0 => {}
            1 => write!(f, "i")?,
            2 => write!(f, "-")?,
            3 => write!(f, "-i")?,
            _ => unreachable!(),
        }
        for q in 0..self.n_qubits {
            write!(f, "{}", self.letter_at(q).to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for PauliOperator {
    type Err = Error;

    /// Accepts an optional phase prefix (+, -, i, +i, -i) followed by one
    /// letter per qubit. Letters may be lower case, but a *leading* lower
    /// case 'i' always reads as the imaginary unit.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let (phase_exp, rest) = if let Some(r) = t.strip_prefix("+i").or_else(|| t.strip_prefix("i")) {
            (1u8, r)
        } else if let Some(r) = t.strip_prefix("-i") {
            (3u8, r)
        } else if let Some(r) = t.strip_prefix('-') {
            (2u8, r)
        } else if let Some(r) = t.strip_prefix('+') {
            (0u8, r)
        } else {
            (0u8, t)
        };
        let rest = rest.trim_start();
        if rest.is_empty() {
            return Err(Error::Parse(format!("no letters in operator {t:?}")));
        }
        if rest.chars().count() > MAX_QUBITS {
            return Err(Error::TooManyQubits { requested: rest.chars().count(), cap: MAX_QUBITS });
        }
        let mut op = PauliOperator::identity(rest.chars().count())?;
        for (q, c) in rest.chars().enumerate() {
            let letter = Letter::from_char(c)
                .ok_or_else(|| Error::Parse(format!("bad letter {c:?} in operator {t:?}")))?;
            op.set_letter(q, letter)?;
        }
        op.phase_exp = phase_exp;
        Ok(op)
    }
}

/// Shorthand used all over the tests; panics on bad input.
pub fn pauli(s: &str) -> PauliOperator {
    s.parse().unwrap()
}
