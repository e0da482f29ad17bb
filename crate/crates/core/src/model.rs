//! Model parameters and finite truncations of the parity-class Jacobi matrices.
//!
//! In parity class `±` the Hamiltonian acts as the Jacobi matrix with diagonal
//! `d±(k) = k ± (-1)^k Δ` and off-diagonal `a(k) = g√k`, indexed from `k = 0`.

use std::fmt;

use crate::{Error, Result, Scalar};

/// Coupling `g` and half level-splitting `Δ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams<T> {
    g: T,
    delta: T,
}

impl<T: Scalar> ModelParams<T> {
    /// `g` must be positive and finite. `Δ = 0` is accepted: it is the
    /// displaced-oscillator limit with the closed-form spectrum `k - g²`.
    pub fn new(g: T, delta: T) -> Result<Self> {
        if !(g > T::zero()) || !g.is_finite() {
            return Err(Error::InvalidParams(format!(
                "coupling g = {g} must be > 0"
            )));
        }
        if !(delta >= T::zero()) || !delta.is_finite() {
            return Err(Error::InvalidParams(format!(
                "level splitting delta = {delta} must be >= 0"
            )));
        }
        Ok(Self { g, delta })
    }

    pub fn g(&self) -> T {
        self.g
    }

    pub fn delta(&self) -> T {
        self.delta
    }

    pub fn g_squared(&self) -> T {
        self.g * self.g
    }

    /// Amplitude `C = Δ / √(2πg)` of the oscillating eigenvalue correction.
    pub fn amplitude(&self) -> T {
        self.delta / (T::lit(2.0) * T::PI() * self.g).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ParityClass {
    Plus,
    Minus,
}

impl ParityClass {
    pub const BOTH: [ParityClass; 2] = [ParityClass::Plus, ParityClass::Minus];

    /// `+1` for `Plus`, `-1` for `Minus`.
    pub fn sign(self) -> i8 {
        match self {
            ParityClass::Plus => 1,
            ParityClass::Minus => -1,
        }
    }

    pub fn opposite(self) -> Self {
        match self {
            ParityClass::Plus => ParityClass::Minus,
            ParityClass::Minus => ParityClass::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            ParityClass::Plus => '+',
            ParityClass::Minus => '-',
        }
    }
}

impl fmt::Display for ParityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParityClass::Plus => "plus",
            ParityClass::Minus => "minus",
        })
    }
}

/// `d±(k) = k ± (-1)^k Δ`.
pub fn diagonal_entry<T: Scalar>(k: usize, parity: ParityClass, params: &ModelParams<T>) -> T {
    let alternating = if k.is_multiple_of(2) {
        T::one()
    } else {
        -T::one()
    };
    let signed = match parity {
        ParityClass::Plus => alternating,
        ParityClass::Minus => -alternating,
    };
    T::from_count(k) + signed * params.delta
}

/// `a(k) = g√k`, defined for `k >= 1`.
pub fn offdiagonal_entry<T: Scalar>(k: usize, params: &ModelParams<T>) -> Result<T> {
    if k == 0 {
        return Err(Error::IndexOutOfRange {
            index: 0,
            min: 1,
            max: usize::MAX,
        });
    }
    Ok(params.g * T::from_count(k).sqrt())
}

/// A finite symmetric tridiagonal matrix, off-diagonal stored once.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalMatrix<T> {
    diag: Vec<T>,
    offdiag: Vec<T>,
}

impl<T: Scalar> TridiagonalMatrix<T> {
    /// `offdiag[i]` couples rows `i` and `i + 1`, so it must be one shorter
    /// than `diag`.
    pub fn new(diag: Vec<T>, offdiag: Vec<T>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::EmptyTruncation);
        }
        if offdiag.len() + 1 != diag.len() {
            return Err(Error::MalformedMatrix(format!(
                "diagonal has {} entries but off-diagonal has {}",
                diag.len(),
                offdiag.len()
            )));
        }
        if diag.iter().chain(&offdiag).any(|x| !x.is_finite()) {
            return Err(Error::MalformedMatrix("non-finite entry".into()));
        }
        Ok(Self { diag, offdiag })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[T] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[T] {
        &self.offdiag
    }

    /// Largest absolute entry.
    pub fn scale(&self) -> T {
        self.diag
            .iter()
            .chain(&self.offdiag)
            .fold(T::zero(), |acc, x| acc.max(x.abs()))
    }

    /// Gershgorin enclosure `[lo, hi]` of the spectrum.
    pub fn gershgorin_bounds(&self) -> (T, T) {
        let n = self.dim();
        let mut lo = T::infinity();
        let mut hi = T::neg_infinity();
        for i in 0..n {
            let left = if i > 0 {
                self.offdiag[i - 1].abs()
            } else {
                T::zero()
            };
            let right = if i + 1 < n {
                self.offdiag[i].abs()
            } else {
                T::zero()
            };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// Leading `m × m` principal block.
    pub fn leading_block(&self, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::EmptyTruncation);
        }
        if m > self.dim() {
            return Err(Error::IndexOutOfRange {
                index: m,
                min: 1,
                max: self.dim(),
            });
        }
        Ok(Self {
            diag: self.diag[..m].to_vec(),
            offdiag: self.offdiag[..m - 1].to_vec(),
        })
    }
}

/// The leading `dim × dim` block of the parity-class Jacobi matrix.
pub fn build_truncated<T: Scalar>(
    parity: ParityClass,
    params: &ModelParams<T>,
    dim: usize,
) -> Result<TridiagonalMatrix<T>> {
    if dim == 0 {
        return Err(Error::EmptyTruncation);
    }
    let diag = (0..dim)
        .map(|k| diagonal_entry(k, parity, params))
        .collect();
    let offdiag = (1..dim)
        .map(|k| params.g * T::from_count(k).sqrt())
        .collect();
    TridiagonalMatrix::new(diag, offdiag)
}
