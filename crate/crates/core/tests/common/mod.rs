#![allow(dead_code)]

use std::sync::Arc;

use dotpairs::Ring;

pub fn field(p: u32) -> Arc<Ring> {
    Arc::new(Ring::prime_field(p).unwrap())
}

pub fn ext(p: u32, k: u32) -> Arc<Ring> {
    Arc::new(Ring::extension_field(p, k, None).unwrap())
}

pub fn zq(p: u32, l: u32) -> Arc<Ring> {
    Arc::new(Ring::residue_ring(p, l).unwrap())
}

/// Every ring of order q, in each representation that exists.
pub fn rings_of_order(q: u64) -> Vec<Arc<Ring>> {
    let Some((p, k)) = dotpairs::algebra::prime_power(q) else {
        return Vec::new();
    };
    if k == 1 {
        vec![field(p)]
    } else {
        let mut rings = vec![ext(p, k)];
        // Residue rings are only supported for odd p.
        if p != 2 {
            rings.push(zq(p, k));
        }
        rings
    }
}

pub fn all_rings_up_to(q_max: u64) -> Vec<Arc<Ring>> {
    (2..=q_max).flat_map(rings_of_order).collect()
}
