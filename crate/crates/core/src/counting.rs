//! Three independent routes to `|Pi_{alpha,beta}(E)|`:
//!
//! * `brute_force_count`: the triple loop over `E^3`.
//! * `fast_count`: `sum_x r_alpha(x) * r_beta(x)` with
//!   `r_gamma(x) = #{y in E : x.y = gamma}`, one pass over `E x E`.
//! * `character_decomposition`: the orthogonality expansion
//!   `q^-2 sum_{s,t} sum_{x,y,z} chi(s(x.y - alpha)) chi(t(beta - x.z))`
//!   split by whether `s`, `t` vanish, each piece in closed form.
//!
//! `character_decomposition_direct` evaluates the same expansion by literally
//! summing character values, and is kept as a slow cross-check.

use std::fmt;
use std::ops::{Add, Sub};

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::algebra::{AngleSum, Elem};
use crate::error::{Error, Result};
use crate::par::{self, Strategy};
use crate::pointset::PointSet;

/// `num / den` with a fixed denominator (always `q^2` here).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QRational {
    pub num: i128,
    pub den: u64,
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl QRational {
    pub fn new(num: i128, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        Self { num, den }
    }

    pub fn from_int(n: i128, den: u64) -> Self {
        Self::new(n * den as i128, den)
    }

    pub fn abs(self) -> Self {
        Self::new(self.num.abs(), self.den)
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Exact integer value, if the fraction is integral.
    pub fn as_integer(self) -> Option<i128> {
        (self.num % self.den as i128 == 0).then(|| self.num / self.den as i128)
    }

    /// Lowest terms, as `(numerator, denominator)`.
    pub fn reduced(self) -> (i128, u128) {
        let g = gcd_u128(self.num.unsigned_abs(), self.den as u128).max(1);
        (self.num / g as i128, self.den as u128 / g)
    }
}

impl Add for QRational {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.den, rhs.den, "denominators differ");
        Self::new(self.num + rhs.num, self.den)
    }
}

impl Sub for QRational {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        assert_eq!(self.den, rhs.den, "denominators differ");
        Self::new(self.num - rhs.num, self.den)
    }
}

impl fmt::Display for QRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.reduced() {
            (n, 1) => write!(f, "{n}"),
            (n, d) => write!(f, "{n}/{d}"),
        }
    }
}

impl Serialize for QRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Exact I + II + III split of the triple count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TripleDecomposition {
    /// `s = t = 0`: `n^3 / q^2`.
    pub term_i: QRational,
    /// Exactly one of `s`, `t` zero.
    pub term_ii: QRational,
    /// Both nonzero.
    pub term_iii: QRational,
    pub total: QRational,
    pub brute_total: Option<u64>,
}

impl TripleDecomposition {
    pub fn is_consistent(&self) -> bool {
        let sum_ok = self.term_i + self.term_ii + self.term_iii == self.total;
        let brute_ok = self
            .brute_total
            .is_none_or(|b| self.total.as_integer() == Some(b as i128));
        sum_ok && brute_ok
    }
}

/// Numeric counterpart of [`TripleDecomposition`] from literal character sums.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DirectDecomposition {
    pub term_i: Complex64,
    pub term_ii: Complex64,
    pub term_iii: Complex64,
    pub total: Complex64,
    /// Upper bound on accumulated floating-point error in `total`.
    pub error_bound: f64,
}

/// `r_gamma(x)` for every `x` in `E`, indexed like the point set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceProfile {
    pub gamma: Elem,
    pub counts: Vec<u64>,
}

impl IncidenceProfile {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// `h(gamma) = #{(x, y) in E^2 : x.y = gamma}`, indexed by element code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DotHistogram {
    pub counts: Vec<u64>,
}

impl DotHistogram {
    pub fn get(&self, gamma: Elem) -> u64 {
        self.counts[gamma as usize]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Above this many points the cubic oracle is not used outside explicit oracle tests.
pub const BRUTE_FORCE_LIMIT: usize = 200;

/// Size guard for `character_decomposition_direct`.
pub const DIRECT_LIMIT: usize = 64;

fn check_scalar(set: &PointSet, gamma: Elem) {
    assert!(
        gamma < set.ring().q(),
        "scalar {gamma} is not reduced modulo q = {}",
        set.ring().q()
    );
}

pub fn brute_force_count(set: &PointSet, alpha: Elem, beta: Elem) -> u64 {
    check_scalar(set, alpha);
    check_scalar(set, beta);
    let ring = set.ring();
    let mut count = 0u64;
    for u in set.iter() {
        for v in set.iter() {
            if ring.dot_unchecked(u, v) != alpha {
                continue;
            }
            for w in set.iter() {
                if ring.dot_unchecked(u, w) == beta {
                    count += 1;
                }
            }
        }
    }
    count
}

/// `(r_alpha(x), r_beta(x))` from one scan over `E`.
#[inline]
fn incidence_pair(set: &PointSet, i: usize, alpha: Elem, beta: Elem) -> (u64, u64) {
    let ring = set.ring();
    let x = set.point(i);
    let (mut ra, mut rb) = (0u64, 0u64);
    for y in set.iter() {
        let d = ring.dot_unchecked(x, y);
        ra += (d == alpha) as u64;
        rb += (d == beta) as u64;
    }
    (ra, rb)
}

pub fn fast_count(set: &PointSet, alpha: Elem, beta: Elem) -> u64 {
    fast_count_with(set, alpha, beta, Strategy::default())
}

pub fn fast_count_with(set: &PointSet, alpha: Elem, beta: Elem, strategy: Strategy) -> u64 {
    check_scalar(set, alpha);
    check_scalar(set, beta);
    par::map_reduce(
        strategy,
        set.len(),
        0u64,
        |i| {
            let (ra, rb) = incidence_pair(set, i, alpha, beta);
            ra * rb
        },
        |a, b| a + b,
    )
}

pub fn incidence_profile(set: &PointSet, gamma: Elem) -> IncidenceProfile {
    incidence_profile_with(set, gamma, Strategy::default())
}

pub fn incidence_profile_with(set: &PointSet, gamma: Elem, strategy: Strategy) -> IncidenceProfile {
    check_scalar(set, gamma);
    let counts = par::map_collect(strategy, set.len(), |i| {
        incidence_pair(set, i, gamma, gamma).0
    });
    IncidenceProfile { gamma, counts }
}

pub fn dot_histogram(set: &PointSet) -> DotHistogram {
    dot_histogram_with(set, Strategy::default())
}

pub fn dot_histogram_with(set: &PointSet, strategy: Strategy) -> DotHistogram {
    let ring = set.ring();
    let q = ring.q() as usize;
    let counts = par::map_reduce(
        strategy,
        set.len(),
        vec![0u64; q],
        |i| {
            let x = set.point(i);
            let mut row = vec![0u64; q];
            for y in set.iter() {
                row[ring.dot_unchecked(x, y) as usize] += 1;
            }
            row
        },
        |mut a, b| {
            for (s, t) in a.iter_mut().zip(b) {
                *s += t;
            }
            a
        },
    );
    DotHistogram { counts }
}

pub fn character_decomposition(set: &PointSet, alpha: Elem, beta: Elem) -> TripleDecomposition {
    character_decomposition_with(set, alpha, beta, Strategy::default())
}

/// Closed forms from orthogonality, `sum_{s in R} chi(s a) = q [a = 0]`:
///
/// * `sum_{s != 0} sum_{x,y} chi(s(x.y - gamma)) = q h(gamma) - n^2`
/// * `sum_{s != 0} sum_y chi(s(x.y - gamma)) = q r_gamma(x) - n`
///
/// so with denominator `q^2`:
/// `I = n^3`, `II = n[(q h(alpha) - n^2) + (q h(beta) - n^2)]`,
/// `III = sum_x (q r_alpha(x) - n)(q r_beta(x) - n)`.
pub fn character_decomposition_with(
    set: &PointSet,
    alpha: Elem,
    beta: Elem,
    strategy: Strategy,
) -> TripleDecomposition {
    check_scalar(set, alpha);
    check_scalar(set, beta);
    let q = set.ring().q() as i128;
    let den = (q * q) as u64;
    let n = set.len() as i128;

    let (h_alpha, h_beta, iii) = par::map_reduce(
        strategy,
        set.len(),
        (0i128, 0i128, 0i128),
        |i| {
            let (ra, rb) = incidence_pair(set, i, alpha, beta);
            let (ra, rb) = (ra as i128, rb as i128);
            (ra, rb, (q * ra - n) * (q * rb - n))
        },
        |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2),
    );

    let term_i = QRational::new(n * n * n, den);
    let term_ii = QRational::new(n * ((q * h_alpha - n * n) + (q * h_beta - n * n)), den);
    let term_iii = QRational::new(iii, den);
    TripleDecomposition {
        term_i,
        term_ii,
        term_iii,
        total: term_i + term_ii + term_iii,
        brute_total: None,
    }
}

/// The expansion evaluated term by term. For each `x` the sums
/// `A_x(s) = sum_y chi(s(x.y - alpha))` and `B_x(t) = sum_z chi(t(beta - x.z))`
/// are accumulated as exact angle counts, split into the `s = 0` part and the
/// `s != 0` part, and multiplied exactly in Z[zeta_m]. Only the final sums are
/// converted to floating point.
pub fn character_decomposition_direct(
    set: &PointSet,
    alpha: Elem,
    beta: Elem,
) -> Result<DirectDecomposition> {
    check_scalar(set, alpha);
    check_scalar(set, beta);
    let ring = set.ring();
    let q = ring.q();
    if q as usize > DIRECT_LIMIT || set.len() > DIRECT_LIMIT {
        return Err(Error::SizeGuard(format!(
            "direct character sums need q <= {DIRECT_LIMIT} and n <= {DIRECT_LIMIT} (q = {q}, n = {})",
            set.len()
        )));
    }
    let m = ring.character_modulus();
    let mut class_i = AngleSum::zero(m);
    let mut class_ii = AngleSum::zero(m);
    let mut class_iii = AngleSum::zero(m);

    for x in set.iter() {
        let mut a_zero = AngleSum::zero(m);
        let mut a_rest = AngleSum::zero(m);
        let mut b_zero = AngleSum::zero(m);
        let mut b_rest = AngleSum::zero(m);
        for s in ring.elements() {
            let (a, b) = if s == 0 {
                (&mut a_zero, &mut b_zero)
            } else {
                (&mut a_rest, &mut b_rest)
            };
            for y in set.iter() {
                let d = ring.dot_unchecked(x, y);
                a.add(ring.character(ring.mul(s, ring.sub(d, alpha))), 1);
                b.add(ring.character(ring.mul(s, ring.sub(beta, d))), 1);
            }
        }
        class_i.accumulate(&a_zero.product(&b_zero));
        class_ii.accumulate(&a_zero.product(&b_rest));
        class_ii.accumulate(&a_rest.product(&b_zero));
        class_iii.accumulate(&a_rest.product(&b_rest));
    }

    let scale = 1.0 / (q as f64 * q as f64);
    let mass = class_i.term_mass() + class_ii.term_mass() + class_iii.term_mass();
    let term_i = class_i.to_complex() * scale;
    let term_ii = class_ii.to_complex() * scale;
    let term_iii = class_iii.to_complex() * scale;
    Ok(DirectDecomposition {
        term_i,
        term_ii,
        term_iii,
        total: term_i + term_ii + term_iii,
        error_bound: mass * scale * 8.0 * f64::EPSILON * (m as f64).max(1.0),
    })
}
