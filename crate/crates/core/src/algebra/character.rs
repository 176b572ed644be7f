use std::f64::consts::TAU;
use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;

/// The root of unity `exp(2 pi i * numerator / denominator)`, stored exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CharacterValue {
    numerator: u32,
    denominator: u32,
}

impl CharacterValue {
    pub fn new(numerator: u64, denominator: u32) -> Self {
        assert!(denominator > 0, "character modulus must be positive");
        Self {
            numerator: (numerator % denominator as u64) as u32,
            denominator,
        }
    }

    pub fn one(denominator: u32) -> Self {
        Self::new(0, denominator)
    }

    pub fn numerator(self) -> u32 {
        self.numerator
    }

    pub fn denominator(self) -> u32 {
        self.denominator
    }

    pub fn is_one(self) -> bool {
        self.numerator == 0
    }

    pub fn conj(self) -> Self {
        Self::new((self.denominator - self.numerator) as u64, self.denominator)
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::from_polar(1.0, TAU * self.numerator as f64 / self.denominator as f64)
    }
}

impl Mul for CharacterValue {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.denominator, rhs.denominator, "character moduli differ");
        Self::new(
            self.numerator as u64 + rhs.numerator as u64,
            self.denominator,
        )
    }
}

impl fmt::Display for CharacterValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e(2pi i {}/{})", self.numerator, self.denominator)
    }
}

/// An exact sum of m-th roots of unity: `counts[k]` copies of `exp(2 pi i k/m)`.
///
/// Sums of character values are accumulated here and only converted to
/// floating point once, at the end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AngleSum {
    counts: Vec<i64>,
}

impl AngleSum {
    pub fn zero(modulus: u32) -> Self {
        Self {
            counts: vec![0; modulus as usize],
        }
    }

    pub fn modulus(&self) -> u32 {
        self.counts.len() as u32
    }

    pub fn add(&mut self, value: CharacterValue, times: i64) {
        debug_assert_eq!(value.denominator, self.modulus());
        self.counts[value.numerator as usize] += times;
    }

    pub fn add_angle(&mut self, numerator: usize, times: i64) {
        self.counts[numerator] += times;
    }

    pub fn counts(&self) -> &[i64] {
        &self.counts
    }

    pub fn accumulate(&mut self, other: &AngleSum) {
        debug_assert_eq!(self.modulus(), other.modulus());
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
    }

    /// Exact product in Z[zeta_m] (cyclic convolution of the angle counts).
    pub fn product(&self, other: &AngleSum) -> AngleSum {
        let m = self.counts.len();
        debug_assert_eq!(m, other.counts.len());
        let mut out = vec![0i64; m];
        for (i, &a) in self.counts.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.counts.iter().enumerate() {
                if b != 0 {
                    out[(i + j) % m] += a * b;
                }
            }
        }
        AngleSum { counts: out }
    }

    /// Number of unit-modulus terms, counted with sign; bounds the rounding error.
    pub fn term_mass(&self) -> f64 {
        self.counts.iter().map(|c| c.unsigned_abs() as f64).sum()
    }

    pub fn to_complex(&self) -> Complex64 {
        let m = self.counts.len() as f64;
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| Complex64::from_polar(c as f64, TAU * k as f64 / m))
            .sum()
    }
}
