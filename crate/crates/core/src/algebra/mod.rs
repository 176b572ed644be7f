//! Exact arithmetic in F_p, F_{p^k} and Z_{p^l}.
//!
//! Elements are plain `u32` codes in `[0, q)`. For prime fields and residue
//! rings the code is the integer representative. For extension fields it is
//! the packed base-p coefficient vector `sum c_i p^i`, where `c_i` multiplies
//! `x^i` in `F_p[x] / (modulus)`. Extension multiplication goes through
//! log/antilog tables over a primitive element.

mod character;
mod poly;

pub use character::{AngleSum, CharacterValue};

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Canonical element code, always in `[0, q)`.
pub type Elem = u32;

/// Upper limit on `q` for table-based arithmetic.
pub const MAX_ORDER: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RingKind {
    PrimeField,
    ExtensionField,
    ResidueRing,
}

impl RingKind {
    pub fn name(self) -> &'static str {
        match self {
            RingKind::PrimeField => "prime-field",
            RingKind::ExtensionField => "extension-field",
            RingKind::ResidueRing => "residue-ring",
        }
    }

    pub fn is_field(self) -> bool {
        !matches!(self, RingKind::ResidueRing)
    }
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for RingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "prime-field" => Ok(RingKind::PrimeField),
            "extension-field" => Ok(RingKind::ExtensionField),
            "residue-ring" => Ok(RingKind::ResidueRing),
            other => Err(Error::InvalidParameter(format!(
                "unknown ring kind {other:?}"
            ))),
        }
    }
}

/// Description of a scalar ring, as stored in point-set files.
///
/// `modulus_poly` lists all `k + 1` coefficients of the monic modulus,
/// highest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub kind: RingKind,
    pub p: u32,
    pub exponent: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus_poly: Option<Vec<u32>>,
}

impl RingSpec {
    pub fn prime_field(p: u32) -> Self {
        Self {
            kind: RingKind::PrimeField,
            p,
            exponent: 1,
            modulus_poly: None,
        }
    }

    pub fn residue_ring(p: u32, exponent: u32) -> Self {
        Self {
            kind: RingKind::ResidueRing,
            p,
            exponent,
            modulus_poly: None,
        }
    }

    pub fn extension_field(p: u32, exponent: u32, modulus_poly: Option<Vec<u32>>) -> Self {
        Self {
            kind: RingKind::ExtensionField,
            p,
            exponent,
            modulus_poly,
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Writes `q` as `p^e` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0];
    let mut e = 0;
    let mut rest = q;
    while rest > 1 {
        rest /= p;
        e += 1;
    }
    Some((u32::try_from(p).ok()?, e))
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i64 % m as i64, m as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m as i64) as u64)
}

#[derive(Debug)]
struct ExtensionTables {
    k: usize,
    /// exp[i] = g^i for i in [0, 2(q-1)), doubled to skip a reduction.
    exp: Vec<Elem>,
    log: Vec<u32>,
    trace: Vec<u32>,
}

/// A validated ring together with its arithmetic tables.
///
/// Immutable after construction and safe to share across threads.
#[derive(Debug)]
pub struct Ring {
    spec: RingSpec,
    q: u32,
    ext: Option<ExtensionTables>,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for Ring {}

impl Ring {
    pub fn new(spec: RingSpec) -> Result<Self> {
        if spec.exponent == 0 {
            return Err(Error::BadExponent);
        }
        if !is_prime(spec.p as u64) {
            return Err(Error::NotPrime(spec.p as u64));
        }
        let q = (spec.p as u64)
            .checked_pow(spec.exponent)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or_else(|| Error::TooLarge((spec.p as u64).saturating_pow(spec.exponent)))?;
        let q = q as u32;
        match spec.kind {
            RingKind::PrimeField => {
                if spec.exponent != 1 {
                    return Err(Error::BadExponent);
                }
                if spec.modulus_poly.is_some() {
                    return Err(Error::BadModulus("prime fields take no modulus".into()));
                }
                Ok(Self { spec, q, ext: None })
            }
            RingKind::ResidueRing => {
                if spec.p == 2 {
                    return Err(Error::EvenResidueRing);
                }
                if spec.modulus_poly.is_some() {
                    return Err(Error::BadModulus("residue rings take no modulus".into()));
                }
                Ok(Self { spec, q, ext: None })
            }
            RingKind::ExtensionField => Self::build_extension(spec, q),
        }
    }

    pub fn prime_field(p: u32) -> Result<Self> {
        Self::new(RingSpec::prime_field(p))
    }

    pub fn residue_ring(p: u32, exponent: u32) -> Result<Self> {
        Self::new(RingSpec::residue_ring(p, exponent))
    }

    pub fn extension_field(p: u32, k: u32, modulus_poly: Option<Vec<u32>>) -> Result<Self> {
        Self::new(RingSpec::extension_field(p, k, modulus_poly))
    }

    /// Convenience constructor returning an `Arc`, which is what point sets hold.
    pub fn shared(spec: RingSpec) -> Result<Arc<Self>> {
        Self::new(spec).map(Arc::new)
    }

    fn build_extension(mut spec: RingSpec, q: u32) -> Result<Self> {
        let p = spec.p;
        let k = spec.exponent as usize;
        let order = q as u64 - 1;
        let factors = prime_factors(order);
        let is_generator = |g: &[u32], m: &[u32]| {
            !g.is_empty()
                && factors
                    .iter()
                    .all(|&r| poly::pow_mod(g, order / r, m, p) != [1])
        };
        let x: Vec<u32> = if k >= 2 { vec![0, 1] } else { vec![1] };

        let (modulus, generator) = match &spec.modulus_poly {
            Some(msb_first) => {
                if msb_first.len() != k + 1 {
                    return Err(Error::BadModulus(format!(
                        "expected {} coefficients for degree {k}, got {}",
                        k + 1,
                        msb_first.len()
                    )));
                }
                if msb_first[0] != 1 {
                    return Err(Error::BadModulus("modulus must be monic".into()));
                }
                if let Some(&c) = msb_first.iter().find(|&&c| c >= p) {
                    return Err(Error::BadModulus(format!(
                        "coefficient {c} not reduced mod {p}"
                    )));
                }
                let m: Vec<u32> = msb_first.iter().rev().copied().collect();
                if !poly::is_irreducible(&m, p) {
                    return Err(Error::Reducible(p));
                }
                let g = if is_generator(&x, &m) {
                    x.clone()
                } else {
                    (1..q as u64)
                        .map(|code| poly::from_code(code, p, k))
                        .find(|g| is_generator(g, &m))
                        .expect("a finite field has a primitive element")
                };
                (m, g)
            }
            None => {
                let m = (0..(p as u64).pow(k as u32))
                    .map(|lower| poly::monic(lower, p, k))
                    .find(|m| poly::is_irreducible(m, p) && (k == 1 || is_generator(&x, m)))
                    .expect("a primitive polynomial exists in every degree");
                let g = if k == 1 {
                    (1..q as u64)
                        .map(|code| poly::from_code(code, p, k))
                        .find(|g| is_generator(g, &m))
                        .expect("F_p has a primitive root")
                } else {
                    x.clone()
                };
                spec.modulus_poly = Some(m.iter().rev().copied().collect());
                (m, g)
            }
        };

        let n = order as usize;
        let mut exp = vec![0u32; 2 * n];
        let mut log = vec![0u32; q as usize];
        let mut cur: Vec<u32> = vec![1];
        for i in 0..n {
            let code = poly::to_code(&cur, p) as u32;
            exp[i] = code;
            exp[i + n] = code;
            log[code as usize] = i as u32;
            cur = poly::mul_mod(&cur, &generator, &modulus, p);
        }

        let mut ring = Self {
            spec,
            q,
            ext: Some(ExtensionTables {
                k,
                exp,
                log,
                trace: Vec::new(),
            }),
        };
        let trace = (0..q).map(|s| ring.trace_by_powers(s)).collect();
        if let Some(t) = ring.ext.as_mut() {
            t.trace = trace;
        }
        Ok(ring)
    }

    /// Tr(s) = s + s^p + ... + s^(p^(k-1)), evaluated with the log tables.
    fn trace_by_powers(&self, s: Elem) -> u32 {
        let t = self.ext.as_ref().expect("extension tables");
        if s == 0 {
            return 0;
        }
        let order = self.q as u64 - 1;
        let l = t.log[s as usize] as u64;
        let mut acc = 0;
        let mut frob = 1u64;
        for _ in 0..t.k {
            acc = self.add(acc, t.exp[(l * frob % order) as usize]);
            frob = frob * self.spec.p as u64 % order.max(1);
        }
        debug_assert!(acc < self.spec.p, "trace must land in the prime subfield");
        acc
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn kind(&self) -> RingKind {
        self.spec.kind
    }

    pub fn is_field(&self) -> bool {
        self.spec.kind.is_field()
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn p(&self) -> u32 {
        self.spec.p
    }

    pub fn exponent(&self) -> u32 {
        self.spec.exponent
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.q
    }

    pub fn units(&self) -> impl Iterator<Item = Elem> + '_ {
        self.elements().filter(move |&a| self.is_unit(a))
    }

    pub fn check(&self, value: u64) -> Result<Elem> {
        if value < self.q as u64 {
            Ok(value as Elem)
        } else {
            Err(Error::OutOfRange {
                value,
                bound: self.q as u64,
            })
        }
    }

    /// Image of an integer under Z -> R.
    pub fn from_int(&self, n: i64) -> Elem {
        match self.ext {
            None => n.rem_euclid(self.q as i64) as Elem,
            Some(_) => n.rem_euclid(self.spec.p as i64) as Elem,
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.ext {
            None => {
                let s = a + b;
                if s >= self.q {
                    s - self.q
                } else {
                    s
                }
            }
            Some(t) => self.digitwise(a, b, t.k, |x, y, p| (x + y) % p),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        match &self.ext {
            None => {
                if a == 0 {
                    0
                } else {
                    self.q - a
                }
            }
            Some(t) => self.digitwise(0, a, t.k, |_, y, p| (p - y) % p),
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.ext {
            None => (a as u64 * b as u64 % self.q as u64) as Elem,
            Some(t) => {
                if a == 0 || b == 0 {
                    0
                } else {
                    t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
                }
            }
        }
    }

    fn digitwise(
        &self,
        mut a: Elem,
        mut b: Elem,
        k: usize,
        op: impl Fn(u32, u32, u32) -> u32,
    ) -> Elem {
        let p = self.spec.p;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..k {
            out += op(a % p, b % p, p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        match self.spec.kind {
            RingKind::ResidueRing => !a.is_multiple_of(self.spec.p),
            _ => a != 0,
        }
    }

    pub fn invert(&self, a: Elem) -> Result<Elem> {
        if !self.is_unit(a) {
            return Err(Error::NotAUnit);
        }
        match &self.ext {
            None => Ok(inv_mod(a as u64, self.q as u64).ok_or(Error::NotAUnit)? as Elem),
            Some(t) => {
                let n = self.q - 1;
                Ok(t.exp[((n - t.log[a as usize]) % n) as usize])
            }
        }
    }

    /// Dot product of two coordinate slices, without a length check.
    #[inline]
    pub fn dot_unchecked(&self, u: &[Elem], v: &[Elem]) -> Elem {
        match &self.ext {
            None => {
                let s: u64 = u.iter().zip(v).map(|(&a, &b)| a as u64 * b as u64).sum();
                (s % self.q as u64) as Elem
            }
            Some(_) => u
                .iter()
                .zip(v)
                .fold(0, |acc, (&a, &b)| self.add(acc, self.mul(a, b))),
        }
    }

    pub fn dot(&self, u: &[Elem], v: &[Elem]) -> Result<Elem> {
        if u.len() != v.len() {
            return Err(Error::DimensionMismatch {
                left: u.len(),
                right: v.len(),
            });
        }
        Ok(self.dot_unchecked(u, v))
    }

    pub fn scale(&self, c: Elem, v: &[Elem]) -> Vec<Elem> {
        v.iter().map(|&x| self.mul(c, x)).collect()
    }

    /// Modulus `m` of the canonical additive character's values.
    pub fn character_modulus(&self) -> u32 {
        match self.ext {
            None => self.q,
            Some(_) => self.spec.p,
        }
    }

    /// Canonical additive character: `exp(2 pi i a / q)` on Z_q and F_p,
    /// `exp(2 pi i Tr(a) / p)` on F_{p^k}.
    #[inline]
    pub fn character(&self, a: Elem) -> CharacterValue {
        CharacterValue::new(self.character_angle(a) as u64, self.character_modulus())
    }

    #[inline]
    pub(crate) fn character_angle(&self, a: Elem) -> u32 {
        match &self.ext {
            None => a,
            Some(t) => t.trace[a as usize],
        }
    }

    /// Absolute trace into F_p (the identity on prime fields).
    pub fn trace(&self, a: Elem) -> Result<Elem> {
        match &self.ext {
            None if self.is_field() => Ok(a),
            None => Err(Error::WrongFamily {
                family: "trace",
                kind: self.kind().name(),
            }),
            Some(t) => Ok(t.trace[a as usize]),
        }
    }

    /// Weight from the single dot-product lemma: 1 on units, sqrt(q) at zero
    /// over a field. Over Z_q the bounds are only stated for units.
    pub fn lambda(&self, gamma: Elem) -> Result<f64> {
        if self.is_unit(gamma) {
            Ok(1.0)
        } else if self.is_field() {
            Ok((self.q as f64).sqrt())
        } else {
            Err(Error::BoundNotStated(format!(
                "lambda({gamma}) over Z_{} requires a unit",
                self.q
            )))
        }
    }

    /// All `t` with `a * t = c`.
    pub fn solve_linear(&self, a: Elem, c: Elem) -> Vec<Elem> {
        match &self.ext {
            Some(_) => {
                if a == 0 {
                    if c == 0 {
                        self.elements().collect()
                    } else {
                        Vec::new()
                    }
                } else {
                    let inv = self.invert(a).expect("nonzero field element");
                    vec![self.mul(c, inv)]
                }
            }
            None => {
                let q = self.q as u64;
                let g = gcd(a as u64, q);
                if !(c as u64).is_multiple_of(g) {
                    return Vec::new();
                }
                let m = q / g;
                let a_red = a as u64 / g;
                let c_red = c as u64 / g;
                let t0 = c_red * inv_mod(a_red % m, m).expect("coprime after division") % m;
                (0..g).map(|j| (t0 + j * m) as Elem).collect()
            }
        }
    }

    /// `|{t : a * t = c}|` without materializing.
    pub fn solution_count(&self, a: Elem, c: Elem) -> u64 {
        match &self.ext {
            Some(_) => match (a, c) {
                (0, 0) => self.q as u64,
                (0, _) => 0,
                _ => 1,
            },
            None => {
                let g = gcd(a as u64, self.q as u64);
                if (c as u64).is_multiple_of(g) {
                    g
                } else {
                    0
                }
            }
        }
    }

    /// MSB-first base-p digits of an extension element; a single integer otherwise.
    pub fn digits(&self, a: Elem) -> Vec<u32> {
        match &self.ext {
            None => vec![a],
            Some(t) => {
                let mut out = poly::from_code(a as u64, self.spec.p, t.k);
                out.resize(t.k, 0);
                out.reverse();
                out
            }
        }
    }

    /// Inverse of [`Ring::digits`]. With `reduce`, out-of-range components are
    /// reduced instead of rejected.
    pub fn from_digits(&self, digits: &[u64], reduce: bool) -> Result<Elem> {
        let (k, modulus) = match &self.ext {
            None => (1, self.q as u64),
            Some(t) => (t.k, self.spec.p as u64),
        };
        if digits.len() != k {
            return Err(Error::InvalidScalar {
                text: format!("{digits:?}"),
                reason: format!("expected {k} component(s)"),
            });
        }
        let mut code = 0u64;
        for &d in digits {
            let d = if d < modulus {
                d
            } else if reduce {
                d % modulus
            } else {
                return Err(Error::OutOfRange {
                    value: d,
                    bound: modulus,
                });
            };
            code = code * modulus + d;
        }
        Ok(code as Elem)
    }

    /// Parses command-line scalar notation: a decimal integer, or for
    /// extension fields a string of base-p digits, most significant first
    /// (`:`-separated when p > 10).
    pub fn parse_scalar(&self, text: &str) -> Result<Elem> {
        let bad = |reason: &str| Error::InvalidScalar {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let text_trim = text.trim();
        match &self.ext {
            None => {
                let v: u64 = text_trim
                    .parse()
                    .map_err(|_| bad("not a non-negative integer"))?;
                self.check(v)
                    .map_err(|_| bad(&format!("must be below q = {}", self.q)))
            }
            Some(t) => {
                let digits: Vec<u64> = if text_trim.contains(':') {
                    text_trim
                        .split(':')
                        .map(|d| d.parse().map_err(|_| bad("bad digit")))
                        .collect::<Result<_>>()?
                } else {
                    text_trim
                        .chars()
                        .map(|c| {
                            c.to_digit(10)
                                .map(u64::from)
                                .ok_or_else(|| bad("bad digit"))
                        })
                        .collect::<Result<_>>()?
                };
                if digits.is_empty() || digits.len() > t.k {
                    return Err(bad(&format!(
                        "expected 1 to {} base-{} digits",
                        t.k, self.spec.p
                    )));
                }
                let mut padded = vec![0u64; t.k - digits.len()];
                padded.extend(digits);
                self.from_digits(&padded, false)
                    .map_err(|_| bad(&format!("digits must be below p = {}", self.spec.p)))
            }
        }
    }

    pub fn format_scalar(&self, a: Elem) -> String {
        match &self.ext {
            None => a.to_string(),
            Some(_) => {
                let digits = self.digits(a);
                if self.spec.p > 10 {
                    digits
                        .iter()
                        .map(u32::to_string)
                        .collect::<Vec<_>>()
                        .join(":")
                } else {
                    digits.iter().map(u32::to_string).collect()
                }
            }
        }
    }

    pub fn scalar(&self, value: u64) -> Result<Scalar<'_>> {
        Ok(Scalar {
            ring: self,
            elem: self.check(value)?,
        })
    }

    pub fn scalar_from_elem(&self, elem: Elem) -> Scalar<'_> {
        debug_assert!(elem < self.q);
        Scalar { ring: self, elem }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.spec.kind {
            RingKind::PrimeField => write!(f, "F_{}", self.q),
            RingKind::ExtensionField => write!(f, "F_{}^{}", self.spec.p, self.spec.exponent),
            RingKind::ResidueRing => write!(f, "Z_{}^{}", self.spec.p, self.spec.exponent),
        }
    }
}

/// A ring element bundled with its ring, for checked arithmetic.
#[derive(Clone, Copy, Debug)]
pub struct Scalar<'r> {
    ring: &'r Ring,
    elem: Elem,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarOp {
    Add,
    Sub,
    Mul,
}

impl<'r> Scalar<'r> {
    pub fn elem(self) -> Elem {
        self.elem
    }

    pub fn ring(self) -> &'r Ring {
        self.ring
    }

    fn same_ring(self, other: Scalar<'_>) -> Result<()> {
        if std::ptr::eq(self.ring, other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn apply(self, op: ScalarOp, other: Scalar<'_>) -> Result<Scalar<'r>> {
        self.same_ring(other)?;
        let r = self.ring;
        let elem = match op {
            ScalarOp::Add => r.add(self.elem, other.elem),
            ScalarOp::Sub => r.sub(self.elem, other.elem),
            ScalarOp::Mul => r.mul(self.elem, other.elem),
        };
        Ok(Scalar { ring: r, elem })
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: Scalar<'_>) -> Result<Scalar<'r>> {
        self.apply(ScalarOp::Add, other)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(self, other: Scalar<'_>) -> Result<Scalar<'r>> {
        self.apply(ScalarOp::Sub, other)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Scalar<'_>) -> Result<Scalar<'r>> {
        self.apply(ScalarOp::Mul, other)
    }

    pub fn invert(self) -> Result<Scalar<'r>> {
        Ok(Scalar {
            ring: self.ring,
            elem: self.ring.invert(self.elem)?,
        })
    }

    pub fn is_unit(self) -> bool {
        self.ring.is_unit(self.elem)
    }

    pub fn character(self) -> CharacterValue {
        self.ring.character(self.elem)
    }

    pub fn lambda(self) -> Result<f64> {
        self.ring.lambda(self.elem)
    }
}

impl PartialEq for Scalar<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.elem == other.elem && self.ring == other.ring
    }
}

impl fmt::Display for Scalar<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.format_scalar(self.elem))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f9() -> Ring {
        Ring::extension_field(3, 2, Some(vec![1, 0, 1])).unwrap()
    }

    #[test]
    fn construct_examples() {
        assert_eq!(Ring::prime_field(5).unwrap().q(), 5);
        assert_eq!(Ring::residue_ring(3, 2).unwrap().q(), 9);
        assert_eq!(f9().q(), 9);
    }

    #[test]
    fn construct_errors() {
        assert!(matches!(Ring::prime_field(6), Err(Error::NotPrime(6))));
        assert!(matches!(
            Ring::residue_ring(2, 3),
            Err(Error::EvenResidueRing)
        ));
        assert!(matches!(Ring::residue_ring(3, 13), Err(Error::TooLarge(_))));
        assert!(matches!(
            Ring::extension_field(5, 2, Some(vec![1, 0, 1])),
            Err(Error::Reducible(5))
        ));
        assert!(matches!(
            Ring::extension_field(3, 2, Some(vec![2, 0, 1])),
            Err(Error::BadModulus(_))
        ));
        assert!(matches!(Ring::residue_ring(3, 0), Err(Error::BadExponent)));
    }

    #[test]
    fn arithmetic_examples() {
        let f5 = Ring::prime_field(5).unwrap();
        assert_eq!(f5.mul(3, 4), 2);
        let z9 = Ring::residue_ring(3, 2).unwrap();
        assert_eq!(z9.mul(3, 3), 0);
        let f9 = f9();
        // x has code 3 (digits "10"); x * x = -1 = 2.
        let x = f9.parse_scalar("10").unwrap();
        assert_eq!(x, 3);
        assert_eq!(f9.mul(x, x), 2);
    }

    #[test]
    fn invert_examples() {
        let f5 = Ring::prime_field(5).unwrap();
        assert_eq!(f5.invert(3).unwrap(), 2);
        let z9 = Ring::residue_ring(3, 2).unwrap();
        assert_eq!(z9.invert(2).unwrap(), 5);
        assert!(matches!(z9.invert(3), Err(Error::NotAUnit)));
    }

    #[test]
    fn unit_examples() {
        let z9 = Ring::residue_ring(3, 2).unwrap();
        assert!(!z9.is_unit(6));
        assert!(z9.is_unit(7));
        assert!(!Ring::prime_field(5).unwrap().is_unit(0));
    }

    #[test]
    fn dot_examples() {
        let f5 = Ring::prime_field(5).unwrap();
        assert_eq!(f5.dot(&[1, 2], &[3, 4]).unwrap(), 1);
        assert_eq!(f5.dot(&[0, 0], &[3, 4]).unwrap(), 0);
        assert!(matches!(
            f5.dot(&[1, 2], &[3]),
            Err(Error::DimensionMismatch { .. })
        ));
        for ring in [
            Ring::prime_field(7).unwrap(),
            Ring::residue_ring(3, 2).unwrap(),
            f9(),
        ] {
            for alpha in ring.elements() {
                for bx in ring.elements() {
                    let v = [bx, ring.sub(alpha, bx)];
                    assert_eq!(ring.dot(&[1, 1], &v).unwrap(), alpha);
                }
            }
        }
    }

    #[test]
    fn character_examples() {
        let z9 = Ring::residue_ring(3, 2).unwrap();
        assert!(z9.character(0).is_one());
        let c = z9.character(3);
        assert_eq!((c.numerator(), c.denominator()), (3, 9));
        for ring in [z9, f9(), Ring::prime_field(5).unwrap()] {
            let mut sum = AngleSum::zero(ring.character_modulus());
            for s in ring.elements() {
                sum.add(ring.character(s), 1);
            }
            assert!(sum.to_complex().norm() < 1e-9);
        }
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(Ring::prime_field(5).unwrap().lambda(1).unwrap(), 1.0);
        assert_eq!(f9().lambda(0).unwrap(), 3.0);
        assert!(matches!(
            Ring::residue_ring(3, 2).unwrap().lambda(3),
            Err(Error::BoundNotStated(_))
        ));
    }

    #[test]
    fn scalar_mismatch() {
        let f5 = Ring::prime_field(5).unwrap();
        let f7 = Ring::prime_field(7).unwrap();
        let a = f5.scalar(3).unwrap();
        let b = f7.scalar(3).unwrap();
        assert!(matches!(a.add(b), Err(Error::RingMismatch)));
        let c = f5.scalar(4).unwrap();
        assert_eq!(a.mul(c).unwrap().elem(), 2);
        // A structurally equal ring built separately is the same ring.
        let f5b = Ring::prime_field(5).unwrap();
        assert_eq!(a.add(f5b.scalar(2).unwrap()).unwrap().elem(), 0);
    }

    #[test]
    fn default_modulus_is_primitive_and_irreducible() {
        for (p, k) in [(2, 4), (3, 3), (5, 2), (2, 10), (7, 2), (3, 1)] {
            let ring = Ring::extension_field(p, k, None).unwrap();
            let m = ring.spec().modulus_poly.clone().unwrap();
            assert_eq!(m.len(), k as usize + 1);
            let low_first: Vec<u32> = m.iter().rev().copied().collect();
            assert!(poly::is_irreducible(&low_first, p));
        }
    }

    #[test]
    fn parse_and_format_scalars() {
        let f9 = f9();
        for a in f9.elements() {
            assert_eq!(f9.parse_scalar(&f9.format_scalar(a)).unwrap(), a);
        }
        assert!(f9.parse_scalar("3").is_err());
        assert!(f9.parse_scalar("101").is_err());
        let f121 = Ring::extension_field(11, 2, None).unwrap();
        assert_eq!(f121.parse_scalar("10:3").unwrap(), 10 * 11 + 3);
        let z9 = Ring::residue_ring(3, 2).unwrap();
        assert!(z9.parse_scalar("9").is_err());
        assert!(z9.parse_scalar("-1").is_err());
    }

    #[test]
    fn solve_linear_counts() {
        let z9 = Ring::residue_ring(3, 2).unwrap();
        assert!(z9.solve_linear(3, 1).is_empty());
        assert_eq!(z9.solve_linear(3, 3), vec![1, 4, 7]);
        assert_eq!(z9.solve_linear(0, 0).len(), 9);
        for a in z9.elements() {
            for c in z9.elements() {
                let brute: Vec<Elem> = z9.elements().filter(|&t| z9.mul(a, t) == c).collect();
                assert_eq!(z9.solve_linear(a, c), brute);
                assert_eq!(z9.solution_count(a, c), brute.len() as u64);
            }
        }
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(101), Some((101, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
