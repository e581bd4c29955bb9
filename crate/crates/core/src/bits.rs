//! Fixed-width bitset helpers for vertex sets (ids 0..=63).

/// Mask with the low `n` bits set. `n` may be 64.
pub fn full_mask(n: usize) -> u64 {
    debug_assert!(n <= 64);
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn bit(v: usize) -> u64 {
    debug_assert!(v < 64);
    1u64 << v
}

pub fn contains(mask: u64, v: usize) -> bool {
    v < 64 && mask & bit(v) != 0
}

/// Iterate set bits in ascending order.
pub fn iter(mask: u64) -> BitIter {
    BitIter(mask)
}

/// Set bits of `mask`, ascending, as a vector.
pub fn to_vec(mask: u64) -> Vec<usize> {
    iter(mask).collect()
}

pub struct BitIter(u64);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }
}
