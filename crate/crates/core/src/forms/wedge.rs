//! Sign bookkeeping for wedge monomials `dz_I ∧ dz*_J`.
//!
//! A monomial is a pair of bitmasks; bit `k` stands for the index `k + 1`.
//! Storage order is all `dz` factors ascending, then all `dz*` factors ascending.

use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WedgeKey {
    pub dz: u16,
    pub dzs: u16,
}

impl WedgeKey {
    pub const EMPTY: WedgeKey = WedgeKey { dz: 0, dzs: 0 };

    pub fn new(dz: u16, dzs: u16) -> Self {
        WedgeKey { dz, dzs }
    }

    pub fn p(&self) -> usize {
        self.dz.count_ones() as usize
    }

    pub fn q(&self) -> usize {
        self.dzs.count_ones() as usize
    }

    pub fn degree(&self) -> usize {
        self.p() + self.q()
    }
}

impl fmt::Debug for WedgeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for WedgeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for k in bits(self.dz) {
            parts.push(format!("dz{}", k + 1));
        }
        for k in bits(self.dzs) {
            parts.push(format!("dw{}", k + 1));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

pub fn bits(mask: u16) -> impl Iterator<Item = usize> {
    (0..16).filter(move |k| mask & (1 << k) != 0)
}

/// Number of set bits of `mask` strictly below `k`.
#[inline]
pub fn below(mask: u16, k: usize) -> usize {
    (mask & ((1u32 << k) - 1) as u16).count_ones() as usize
}

/// Sign exponent of merging the ascending sequences `a` then `b` into ascending order,
/// or `None` if they overlap.
pub fn merge_sign(a: u16, b: u16) -> Option<usize> {
    if a & b != 0 {
        return None;
    }
    Some(bits(b).map(|k| (a >> k).count_ones() as usize - usize::from(a & (1 << k) != 0)).sum())
}

/// `(dz_I dz*_J) ∧ (dz_K dz*_L)` as `(sign exponent, key)`, or `None` when it vanishes.
pub fn wedge_keys(x: WedgeKey, y: WedgeKey) -> Option<(usize, WedgeKey)> {
    let s1 = merge_sign(x.dz, y.dz)?;
    let s2 = merge_sign(x.dzs, y.dzs)?;
    Some((s1 + s2 + x.q() * y.p(), WedgeKey::new(x.dz | y.dz, x.dzs | y.dzs)))
}

/// `dz_k ∧ (dz_I dz*_J)` (k 0-based).
pub fn prepend_dz(k: usize, key: WedgeKey) -> Option<(usize, WedgeKey)> {
    if key.dz & (1 << k) != 0 {
        return None;
    }
    Some((below(key.dz, k), WedgeKey::new(key.dz | (1 << k), key.dzs)))
}

/// `dz*_k ∧ (dz_I dz*_J)` (k 0-based).
pub fn prepend_dzs(k: usize, key: WedgeKey) -> Option<(usize, WedgeKey)> {
    if key.dzs & (1 << k) != 0 {
        return None;
    }
    Some((key.p() + below(key.dzs, k), WedgeKey::new(key.dz, key.dzs | (1 << k))))
}

/// Replaces the factor `from` by `to` inside `mask`, returning the reordering sign exponent.
/// Both are 0-based indices; `from` must be in `mask`.
pub fn replace_index(mask: u16, from: usize, to: usize) -> Option<(usize, u16)> {
    debug_assert!(mask & (1 << from) != 0);
    if from == to {
        return Some((0, mask));
    }
    let rest = mask & !(1 << from);
    if rest & (1 << to) != 0 {
        return None;
    }
    Some((below(rest, from) + below(rest, to), rest | (1 << to)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_signs() {
        // dz2 ∧ dz1 = -dz1 dz2
        assert_eq!(merge_sign(0b10, 0b01), Some(1));
        assert_eq!(merge_sign(0b01, 0b10), Some(0));
        assert_eq!(merge_sign(0b01, 0b01), None);
        // (dz1 dz3) ∧ dz2 = -(dz1 dz2 dz3)
        assert_eq!(merge_sign(0b101, 0b010), Some(1));
    }

    #[test]
    fn mixed_wedge() {
        // dz*_1 ∧ dz_1 = -dz_1 ∧ dz*_1
        let (e, k) = wedge_keys(WedgeKey::new(0, 1), WedgeKey::new(1, 0)).unwrap();
        assert_eq!(e % 2, 1);
        assert_eq!(k, WedgeKey::new(1, 1));
    }

    #[test]
    fn replace() {
        // dz1 dz3, replace 3 -> 2: dz1 dz2, no sign
        assert_eq!(replace_index(0b101, 2, 1), Some((2, 0b011)));
        // dz2 dz3 replace 3 -> 1: dz2 dz1 = -dz1 dz2
        let (e, m) = replace_index(0b110, 2, 0).unwrap();
        assert_eq!((e % 2, m), (1, 0b011));
    }
}
