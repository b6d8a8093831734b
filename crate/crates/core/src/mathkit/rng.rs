//! Seeded pseudo-randomness via the splitmix64 mixer: a 64-bit state walks
//! a Weyl sequence and each output is a finalizing hash of the state, so
//! equal seeds give equal streams on every platform and a generator can be
//! split into independent children.
//!
//! Algorithm (Vigna's splitmix64): state += 0x9E3779B97F4A7C15, then the
//! output is state mixed by two xor-shift-multiply rounds.

use super::MathError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng { state: seed }
    }

    /// Rebuild from a raw state, for checkpoint restore.
    pub fn from_state(state: u64) -> Self {
        Rng { state }
    }

    pub fn state(&self) -> u64 {
        self.state
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1) with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [lo, hi). Errors when the range is empty.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> Result<f64, MathError> {
        if lo >= hi {
            return Err(MathError::EmptyRange { lo, hi });
        }
        Ok(lo + (hi - lo) * self.next_f64())
    }

    /// True with probability `p`.
    pub fn coin(&mut self, p: f64) -> bool {
        self.next_f64() < p
    }

    /// Uniform integer in [0, n).
    pub fn index(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        (self.next_f64() * n as f64) as usize % n
    }

    /// Derive an independent child generator; the parent advances once.
    pub fn split(&mut self) -> Rng {
        Rng { state: self.next_u64() }
    }

    /// Fisher-Yates shuffle driven by this generator.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.index(i + 1);
            items.swap(i, j);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_stays_in_range_and_rejects_empty() {
        let mut rng = Rng::new(1);
        let v = rng.uniform(0.0, 1.0).unwrap();
        assert!((0.0..1.0).contains(&v));
        assert!(rng.uniform(1.0, 1.0).is_err());
        assert!(rng.uniform(2.0, 1.0).is_err());
    }

    #[test]
    fn equal_seeds_give_equal_streams() {
        let mut a = Rng::new(99);
        let mut b = Rng::new(99);
        for _ in 0..10_000 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn different_seeds_diverge_within_first_draws() {
        let mut a = Rng::new(1);
        let mut b = Rng::new(2);
        let da: Vec<f64> = (0..8).map(|_| a.next_f64()).collect();
        let db: Vec<f64> = (0..8).map(|_| b.next_f64()).collect();
        assert_ne!(da, db);
    }

    #[test]
    fn split_children_are_independent_of_parent_continuation() {
        let mut parent = Rng::new(7);
        let mut child = parent.split();
        let after_split = parent.next_u64();
        assert_ne!(child.next_u64(), after_split);
    }

    #[test]
    fn shuffle_is_a_permutation() {
        let mut rng = Rng::new(5);
        let mut v: Vec<usize> = (0..100).collect();
        rng.shuffle(&mut v);
        let mut sorted = v.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..100).collect::<Vec<_>>());
        assert_ne!(v, (0..100).collect::<Vec<_>>());
    }
}
