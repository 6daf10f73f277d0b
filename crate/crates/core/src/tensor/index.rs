//! Strictly increasing multi-indices stored as bitmasks.
//!
//! For a fixed degree, numeric order of the masks is the colexicographic order
//! of the index sets, so a mask's position in a dense component array is its
//! colex rank.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Largest supported chart dimension.
pub const MAX_DIM: usize = 20;

pub type Mask = u32;

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: usize = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// All masks of `k` bits below `1 << n`, in increasing order.
pub fn masks(n: usize, k: usize) -> Arc<[Mask]> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<[Mask]>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(m) = cache.lock().unwrap().get(&(n, k)) {
        return m.clone();
    }
    let mut out = Vec::with_capacity(binomial(n, k));
    if k <= n {
        if k == 0 {
            out.push(0);
        } else {
            // Gosper's hack enumerates k-subsets in increasing order.
            let mut m: u64 = (1u64 << k) - 1;
            while m < (1u64 << n) {
                out.push(m as Mask);
                let c = m & m.wrapping_neg();
                let r = m + c;
                m = (((r ^ m) >> 2) / c) | r;
            }
        }
    }
    let arc: Arc<[Mask]> = out.into();
    cache.lock().unwrap().insert((n, k), arc.clone());
    arc
}

/// Position of `mask` among the masks of its popcount.
pub fn rank(mask: Mask) -> usize {
    let mut r = 0;
    let mut a = 0;
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        a += 1;
        r += binomial(i, a);
        m &= m - 1;
    }
    r
}

pub fn indices(mask: Mask) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

pub fn bit(i: usize) -> Mask {
    1 << i
}

/// Number of elements of `mask` strictly below `i`.
pub fn below(mask: Mask, i: usize) -> u32 {
    (mask & (bit(i) - 1)).count_ones()
}

/// Number of elements of `mask` strictly above `i`.
pub fn above(mask: Mask, i: usize) -> u32 {
    if i + 1 >= Mask::BITS as usize {
        0
    } else {
        (mask >> (i + 1)).count_ones()
    }
}

/// Sign of `e_I ∧ e_J` relative to `e_{I∪J}`; `None` when the sets meet.
pub fn wedge_sign(a: Mask, b: Mask) -> Option<bool> {
    if a & b != 0 {
        return None;
    }
    let mut inversions = 0;
    for j in indices(b) {
        inversions += above(a, j);
    }
    Some(inversions % 2 == 1)
}

/// Sorts an index list, returning its mask and whether the permutation was odd;
/// `None` on repeated indices.
pub fn sort_indices(idx: &[usize]) -> Option<(Mask, bool)> {
    let mut mask: Mask = 0;
    let mut odd = false;
    for &i in idx {
        if mask & bit(i) != 0 {
            return None;
        }
        odd ^= above(mask, i) % 2 == 1;
        mask |= bit(i);
    }
    Some((mask, odd))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_matches_enumeration() {
        for n in 0..8 {
            for k in 0..=n {
                let ms = masks(n, k);
                assert_eq!(ms.len(), binomial(n, k));
                for (r, &m) in ms.iter().enumerate() {
                    assert_eq!(rank(m), r);
                    assert_eq!(m.count_ones() as usize, k);
                }
            }
        }
    }

    #[test]
    fn signs() {
        assert_eq!(wedge_sign(0b010, 0b001), Some(true));
        assert_eq!(wedge_sign(0b001, 0b010), Some(false));
        assert_eq!(wedge_sign(0b001, 0b001), None);
        assert_eq!(sort_indices(&[2, 0, 1]), Some((0b111, false)));
        assert_eq!(sort_indices(&[1, 0, 2]), Some((0b111, true)));
        assert_eq!(sort_indices(&[1, 1]), None);
    }
}
