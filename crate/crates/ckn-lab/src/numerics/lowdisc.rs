//! Halton low-discrepancy sequences.
//!
//! Sample-based verification sweeps want reproducible, well-spread point sets
//! rather than i.i.d. noise: a Halton sequence in coprime bases fills the unit
//! cube with discrepancy O(log^s N / N) and is fully determined by the index,
//! so a run is reproducible given its seed. The seed acts as a leap offset
//! into the sequence, which both decorrelates runs and skips the degenerate
//! initial points.

/// Radical-inverse of `index` in `base` (the van der Corput map).
pub fn radical_inverse(mut index: u64, base: u64) -> f64 {
    let b = base as f64;
    let mut inv = 1.0 / b;
    let mut x = 0.0;
    while index > 0 {
        x += (index % base) as f64 * inv;
        index /= base;
        inv /= b;
    }
    x
}

/// Three-dimensional Halton stream in bases (2, 3, 5).
#[derive(Debug, Clone)]
pub struct Halton3 {
    next_index: u64,
}

impl Halton3 {
    /// `seed` offsets the stream start; `seed = 0` begins at index 17
    /// (skipping the lattice-like head of the sequence).
    pub fn new(seed: u64) -> Self {
        Halton3 { next_index: 17 + seed.wrapping_mul(7919) }
    }

    /// Next point in [0,1)^3.
    pub fn next_point(&mut self) -> [f64; 3] {
        let i = self.next_index;
        self.next_index += 1;
        [
            radical_inverse(i, 2),
            radical_inverse(i, 3),
            radical_inverse(i, 5),
        ]
    }
}
