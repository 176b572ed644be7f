//! Lines `L_gamma(v) = {x in R^2 : x.v = gamma}`, their intersections and
//! direction classes, and the split of `E x E` into pairs whose lines meet
//! in at most one point (set A) and the rest (set B).
//!
//! Everything here is two-dimensional.

use std::collections::{BTreeMap, HashSet};

use crate::algebra::{Elem, Ring};
use crate::error::{Error, Result};
use crate::par::{self, Strategy};
use crate::pointset::PointSet;

pub type Point2 = [Elem; 2];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Line {
    pub normal: Point2,
    pub value: Elem,
}

impl Line {
    pub fn new(normal: Point2, value: Elem) -> Self {
        Self { normal, value }
    }

    pub fn contains(&self, ring: &Ring, x: &Point2) -> bool {
        ring.dot_unchecked(x, &self.normal) == self.value
    }
}

/// Direction of a line: the homogeneous solution set `{x : x.v = 0}`.
///
/// Two normals have the same homogeneous set exactly when one is a unit
/// multiple of the other, so the class is tagged by the lexicographically
/// least unit multiple of the normal plus the size of the set. Insoluble
/// lines go to `Empty`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DirectionClass {
    Empty,
    Homogeneous { generator: Point2, size: u64 },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PairClassification {
    /// Index pairs `(v, w)` into the point set.
    pub set_a: Vec<(usize, usize)>,
    pub set_b: Vec<(usize, usize)>,
}

fn require_plane(set: &PointSet) -> Result<()> {
    if set.dim() == 2 {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension {
            expected: 2,
            actual: set.dim(),
        })
    }
}

fn as_point2(p: &[Elem]) -> Point2 {
    [p[0], p[1]]
}

/// `|L|`, counted per value of the first coordinate.
pub fn line_size(ring: &Ring, line: &Line) -> u64 {
    let [a, b] = line.normal;
    ring.elements()
        .map(|x| ring.solution_count(b, ring.sub(line.value, ring.mul(a, x))))
        .sum()
}

/// Every point of the line: for each `x`, solve `b*y = gamma - a*x`.
pub fn line_points(ring: &Ring, line: &Line) -> Vec<Point2> {
    let [a, b] = line.normal;
    let mut out = Vec::new();
    for x in ring.elements() {
        let rhs = ring.sub(line.value, ring.mul(a, x));
        out.extend(ring.solve_linear(b, rhs).into_iter().map(|y| [x, y]));
    }
    out
}

pub fn intersection_size(ring: &Ring, l1: &Line, l2: &Line) -> u64 {
    let (small, other) = if line_size(ring, l1) <= line_size(ring, l2) {
        (l1, l2)
    } else {
        (l2, l1)
    };
    line_points(ring, small)
        .iter()
        .filter(|x| other.contains(ring, x))
        .count() as u64
}

/// Class of the homogeneous set `{x : x.normal = 0}`.
pub fn homogeneous_class(ring: &Ring, normal: Point2) -> DirectionClass {
    let generator = ring
        .units()
        .map(|u| [ring.mul(u, normal[0]), ring.mul(u, normal[1])])
        .min()
        .expect("1 is a unit");
    DirectionClass::Homogeneous {
        generator,
        size: line_size(ring, &Line::new(normal, 0)),
    }
}

pub fn direction_class(ring: &Ring, line: &Line) -> DirectionClass {
    if line_size(ring, line) == 0 {
        DirectionClass::Empty
    } else {
        homogeneous_class(ring, line.normal)
    }
}

/// True when one line translates into the other, i.e. equal homogeneous sets.
pub fn same_direction(ring: &Ring, l1: &Line, l2: &Line) -> bool {
    homogeneous_class(ring, l1.normal) == homogeneous_class(ring, l2.normal)
}

pub fn classify_pairs(set: &PointSet, alpha: Elem, beta: Elem) -> Result<PairClassification> {
    classify_pairs_with(set, alpha, beta, Strategy::default())
}

pub fn classify_pairs_with(
    set: &PointSet,
    alpha: Elem,
    beta: Elem,
    strategy: Strategy,
) -> Result<PairClassification> {
    require_plane(set)?;
    let ring = set.ring();
    let n = set.len();
    let rows = par::map_collect(strategy, n, |i| {
        let v = as_point2(set.point(i));
        let mut a = Vec::new();
        let mut b = Vec::new();
        for j in 0..n {
            let w = as_point2(set.point(j));
            let vw = intersection_size(ring, &Line::new(v, alpha), &Line::new(w, beta));
            let wv = intersection_size(ring, &Line::new(w, alpha), &Line::new(v, beta));
            if vw <= 1 && wv <= 1 {
                a.push((i, j));
            } else {
                b.push((i, j));
            }
        }
        (a, b)
    });
    let mut out = PairClassification::default();
    for (a, b) in rows {
        out.set_a.extend(a);
        out.set_b.extend(b);
    }
    Ok(out)
}

/// Groups `{L_alpha(v) : v in E}` by direction. Points with zero normal are skipped.
pub fn direction_census(set: &PointSet, alpha: Elem) -> Result<BTreeMap<DirectionClass, usize>> {
    require_plane(set)?;
    let ring = set.ring();
    let mut census = BTreeMap::new();
    for p in set.iter() {
        let v = as_point2(p);
        if v == [0, 0] {
            continue;
        }
        *census
            .entry(direction_class(ring, &Line::new(v, alpha)))
            .or_insert(0) += 1;
    }
    Ok(census)
}

/// Homogeneous solution set, materialized. Used to cross-check class tags.
pub fn homogeneous_set(ring: &Ring, normal: Point2) -> HashSet<Point2> {
    line_points(ring, &Line::new(normal, 0))
        .into_iter()
        .collect()
}
