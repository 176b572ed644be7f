//! Extremal point sets in the plane and seeded random sets.

use std::collections::HashSet;
use std::sync::Arc;

use rand::seq::index;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Elem, Ring};
use crate::error::{Error, Result};
use crate::pointset::PointSet;

/// `u = (1,1)` plus `floor((n-1)/2)` points on `y = alpha - x` and
/// `ceil((n-1)/2)` on `y = beta - x`. Every `(u, b, c)` with `b` on the first
/// line and `c` on the second is a triple, so the count is at least the
/// product of the two line populations.
///
/// When `u` lies on a line or the lines coincide, points that do not fit go
/// to the lexicographically least free points off both lines.
pub fn sharp_construction(ring: Arc<Ring>, n: usize, alpha: Elem, beta: Elem) -> Result<PointSet> {
    let q = ring.q() as usize;
    if !(3..=2 * q - 1).contains(&n) {
        return Err(Error::InvalidParameter(format!(
            "sharp construction needs 3 <= n <= 2q - 1 = {}, got {n}",
            2 * q - 1
        )));
    }
    for (name, g) in [("alpha", alpha), ("beta", beta)] {
        ring.check(g as u64)?;
        if !ring.is_unit(g) {
            return Err(Error::InvalidParameter(format!(
                "{name} = {g} must be a unit"
            )));
        }
    }
    let r = ring.clone();
    let on_first = |p: &[Elem; 2]| r.add(p[0], p[1]) == alpha;
    let on_second = |p: &[Elem; 2]| r.add(p[0], p[1]) == beta;

    let mut set = PointSet::empty(ring.clone(), 2)?;
    let u = [ring.from_int(1), ring.from_int(1)];
    set.insert(&u)?;
    let want_first = (n - 1) / 2;
    let want_second = n - 1 - want_first;
    for (gamma, want) in [(alpha, want_first), (beta, want_second)] {
        let mut placed = 0;
        for x in ring.elements() {
            if placed == want {
                break;
            }
            let p = [x, ring.sub(gamma, x)];
            if !set.contains(&p) {
                set.insert(&p)?;
                placed += 1;
            }
        }
    }
    let mut leftovers = ring
        .elements()
        .flat_map(|x| ring.elements().map(move |y| [x, y]))
        .filter(|p| !on_first(p) && !on_second(p));
    while set.len() < n {
        let p = leftovers
            .by_ref()
            .find(|p| !set.contains(p))
            .ok_or_else(|| Error::InvalidParameter(format!("no room for {n} distinct points")))?;
        set.insert(&p)?;
    }
    Ok(set)
}

/// `ceil(n/2)` points `(0, y)` and `floor(n/2)` points `(x, 0)` with unit free
/// coordinates. Only cross-axis triples contribute to `Pi_{0,0}`, giving
/// exactly `a*b^2 + b*a^2 = a*b*n`.
pub fn zero_construction(ring: Arc<Ring>, n: usize) -> Result<PointSet> {
    let units: Vec<Elem> = ring.units().collect();
    if n > 2 * units.len() {
        return Err(Error::InvalidParameter(format!(
            "zero construction needs n <= {} (twice the number of units), got {n}",
            2 * units.len()
        )));
    }
    let a = n.div_ceil(2);
    let b = n - a;
    let points = units[..a]
        .iter()
        .map(|&y| [0, y])
        .chain(units[..b].iter().map(|&x| [x, 0]));
    PointSet::new(ring, 2, points)
}

/// Guaranteed count for the sharp construction.
pub fn sharp_lower_bound(n: usize) -> u64 {
    let m = n.saturating_sub(1) as u64;
    (m / 2) * m.div_ceil(2)
}

/// Exact `Pi_{0,0}` count for the zero construction.
pub fn zero_exact_count(n: usize) -> u64 {
    let a = n.div_ceil(2) as u64;
    let b = (n / 2) as u64;
    a * b * n as u64
}

/// `n` distinct points sampled uniformly without replacement.
///
/// Points are decoded from sampled grid indices (little-endian base q) and
/// returned in increasing index order, so the output depends only on
/// `(ring, dim, n, seed)`.
pub fn random_set(ring: Arc<Ring>, dim: usize, n: usize, seed: u64) -> Result<PointSet> {
    let q = ring.q() as u128;
    let universe = (0..dim).try_fold(1u128, |acc, _| acc.checked_mul(q));
    if universe.is_some_and(|u| (n as u128) > u) {
        return Err(Error::InvalidParameter(format!(
            "cannot draw {n} distinct points from a grid of {} points",
            universe.unwrap()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let decode = |mut idx: u128| -> Vec<Elem> {
        (0..dim)
            .map(|_| {
                let c = (idx % q) as Elem;
                idx /= q;
                c
            })
            .collect()
    };
    let mut indices: Vec<u128> = match universe.and_then(|u| usize::try_from(u).ok()) {
        Some(u) => index::sample(&mut rng, u, n)
            .into_iter()
            .map(|i| i as u128)
            .collect(),
        None => {
            // Grid too large to index; rejection sampling is fine at these densities.
            let mut seen = HashSet::with_capacity(n);
            while seen.len() < n {
                let p: Vec<Elem> = (0..dim).map(|_| rng.gen_range(0..ring.q())).collect();
                seen.insert(p.iter().rev().fold(0u128, |acc, &c| acc * q + c as u128));
            }
            seen.into_iter().collect()
        }
    };
    indices.sort_unstable();
    PointSet::new(ring, dim, indices.into_iter().map(decode))
}
