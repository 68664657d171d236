//! Number-conserving fermionic basis: pairs of site bitmasks with fixed
//! popcounts per spin.
//!
//! Mode ordering fixes the sign convention once and for all: modes are
//! site-major with the spin-up block first (mode `site` for up, mode
//! `M + site` for down), and a basis state applies creation operators in
//! ascending mode order to the vacuum.

use std::collections::HashMap;

#[derive(Debug, Clone)]
pub struct FermiBasis {
    sites: usize,
    n_up: usize,
    n_down: usize,
    /// Packed occupation: bits `0..M` are spin-up sites, bits `M..2M`
    /// spin-down.
    states: Vec<u64>,
    index: HashMap<u64, usize>,
}

impl FermiBasis {
    pub fn new(sites: usize, n_up: usize, n_down: usize) -> Self {
        assert!(sites >= 1 && sites <= 31, "site count must be in 1..=31");
        assert!(n_up <= sites && n_down <= sites, "overfilled spin species");
        let ups = masks_with_popcount(sites, n_up);
        let downs = masks_with_popcount(sites, n_down);
        let mut states = Vec::with_capacity(ups.len() * downs.len());
        for &up in &ups {
            for &down in &downs {
                states.push(up | (down << sites));
            }
        }
        let index = states.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        Self {
            sites,
            n_up,
            n_down,
            states,
            index,
        }
    }

    /// Half filling with balanced spins; requires an even site count.
    pub fn half_filling(sites: usize) -> Self {
        assert!(sites % 2 == 0, "balanced half filling needs an even site count");
        Self::new(sites, sites / 2, sites / 2)
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn n_up(&self) -> usize {
        self.n_up
    }

    pub fn n_down(&self) -> usize {
        self.n_down
    }

    pub fn dimension(&self) -> usize {
        self.states.len()
    }

    /// Packed occupation word of basis state `i`.
    pub fn state(&self, i: usize) -> u64 {
        self.states[i]
    }

    pub fn up_mask(&self, i: usize) -> u64 {
        self.states[i] & ((1 << self.sites) - 1)
    }

    pub fn down_mask(&self, i: usize) -> u64 {
        self.states[i] >> self.sites
    }

    pub fn index_of(&self, up: u64, down: u64) -> Option<usize> {
        self.index.get(&(up | (down << self.sites))).copied()
    }

    pub(crate) fn index_of_packed(&self, packed: u64) -> Option<usize> {
        self.index.get(&packed).copied()
    }

    /// Fermionic mode index of `(site, spin)`; `spin_up = true` selects the
    /// first block.
    pub fn mode(&self, site: usize, spin_up: bool) -> usize {
        if spin_up {
            site
        } else {
            self.sites + site
        }
    }
}

fn masks_with_popcount(bits: usize, count: usize) -> Vec<u64> {
    let mut out = Vec::new();
    for mask in 0..(1u64 << bits) {
        if mask.count_ones() as usize == count {
            out.push(mask);
        }
    }
    out
}

/// Apply an annihilation operator for `mode` to a packed occupation,
/// returning the new occupation and the fermionic sign.
pub(crate) fn annihilate(packed: u64, mode: usize) -> Option<(u64, f64)> {
    let bit = 1u64 << mode;
    if packed & bit == 0 {
        return None;
    }
    let below = (packed & (bit - 1)).count_ones();
    let sign = if below % 2 == 0 { 1.0 } else { -1.0 };
    Some((packed & !bit, sign))
}

/// Apply a creation operator for `mode`; see [`annihilate`].
pub(crate) fn create(packed: u64, mode: usize) -> Option<(u64, f64)> {
    let bit = 1u64 << mode;
    if packed & bit != 0 {
        return None;
    }
    let below = (packed & (bit - 1)).count_ones();
    let sign = if below % 2 == 0 { 1.0 } else { -1.0 };
    Some((packed | bit, sign))
}
