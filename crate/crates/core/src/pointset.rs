use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::{Elem, Ring};
use crate::error::{Error, Result};

/// A duplicate-free finite subset of R^d.
///
/// Coordinates are stored row-major in one flat buffer; `index` maps each
/// point to its position for constant-time membership.
#[derive(Clone, Debug)]
pub struct PointSet {
    ring: Arc<Ring>,
    dim: usize,
    coords: Vec<Elem>,
    index: HashMap<Box<[Elem]>, usize>,
}

impl PointSet {
    pub fn empty(ring: Arc<Ring>, dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidParameter(format!(
                "dimension must be >= 2, got {dim}"
            )));
        }
        Ok(Self {
            ring,
            dim,
            coords: Vec::new(),
            index: HashMap::new(),
        })
    }

    pub fn new<I, P>(ring: Arc<Ring>, dim: usize, points: I) -> Result<Self>
    where
        I: IntoIterator<Item = P>,
        P: AsRef<[Elem]>,
    {
        let mut set = Self::empty(ring, dim)?;
        for point in points {
            set.insert(point.as_ref())?;
        }
        Ok(set)
    }

    /// Adds a point, rejecting wrong dimension, unreduced coordinates and duplicates.
    pub fn insert(&mut self, point: &[Elem]) -> Result<()> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: point.len(),
            });
        }
        for &c in point {
            self.ring.check(c as u64)?;
        }
        if self.index.contains_key(point) {
            return Err(Error::DuplicatePoint(point.to_vec()));
        }
        self.index.insert(point.into(), self.len());
        self.coords.extend_from_slice(point);
        Ok(())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn shared_ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    #[inline]
    pub fn point(&self, i: usize) -> &[Elem] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> std::slice::ChunksExact<'_, Elem> {
        self.coords.chunks_exact(self.dim)
    }

    pub fn contains(&self, point: &[Elem]) -> bool {
        self.index.contains_key(point)
    }

    pub fn position(&self, point: &[Elem]) -> Option<usize> {
        self.index.get(point).copied()
    }

    /// Same points in the same order, regardless of the ring's allocation.
    pub fn same_points(&self, other: &PointSet) -> bool {
        self.ring == other.ring && self.dim == other.dim && self.coords == other.coords
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_points() {
        let ring = Arc::new(Ring::prime_field(5).unwrap());
        let mut e = PointSet::empty(ring.clone(), 2).unwrap();
        e.insert(&[1, 2]).unwrap();
        assert!(matches!(e.insert(&[1, 2]), Err(Error::DuplicatePoint(_))));
        assert!(matches!(e.insert(&[5, 0]), Err(Error::OutOfRange { .. })));
        assert!(matches!(
            e.insert(&[1]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(PointSet::empty(ring, 1).is_err());
        assert_eq!(e.len(), 1);
        assert!(e.contains(&[1, 2]));
        assert_eq!(e.position(&[1, 2]), Some(0));
    }
}
