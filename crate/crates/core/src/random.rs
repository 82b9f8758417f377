//! Seeded pseudo-random sampling for property suites and the probabilistic
//! balancedness fallback. Every draw is reproducible from the seed.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::algebra::Algebra;
use crate::exact::{int, Mat, Vector};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// An independent stream derived from this seed and `stream`.
    pub fn fork(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Sampler { rng }
    }

    pub fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    /// Uniform in `0..n`, by rejection.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        let zone = u64::MAX - u64::MAX % n;
        loop {
            let x = self.rng.next_u64();
            if x < zone {
                return x % n;
            }
        }
    }

    /// Uniform in `lo..=hi`.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        lo + self.below((hi - lo) as u64 + 1) as i64
    }

    pub fn small_vector(&mut self, n: usize, bound: i64) -> Vector {
        (0..n).map(|_| int(self.int_in(-bound, bound))).collect()
    }

    pub fn small_matrix(&mut self, rows: usize, cols: usize, bound: i64) -> Mat {
        let entries = (0..rows * cols).map(|_| int(self.int_in(-bound, bound))).collect();
        Mat::new(rows, cols, entries)
    }

    pub fn invertible_matrix(&mut self, n: usize, bound: i64) -> Mat {
        loop {
            let m = self.small_matrix(n, n, bound);
            if m.rank() == n {
                return m;
            }
        }
    }

    /// A unit of `a` with small integer coordinates, and its inverse.
    pub fn unit_of(&mut self, a: &Algebra, bound: i64) -> (Vector, Vector) {
        loop {
            let w = self.small_vector(a.dim(), bound);
            if let Some(winv) = a.inverse(&w) {
                return (w, winv);
            }
        }
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.below(items.len() as u64) as usize]
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}

/// Convenience for tests: `count` seeds derived from one base seed.
pub fn seeds(base: u64, count: usize) -> Vec<u64> {
    let mut s = Sampler::new(base);
    (0..count).map(|_| s.rng.next_u64()).collect()
}
