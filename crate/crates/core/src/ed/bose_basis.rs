//! Number-conserving bosonic Fock basis: all occupation vectors of `N`
//! bosons on `M` sites, with no on-site truncation.

use std::collections::HashMap;

/// Ordered basis of occupation vectors with fixed total particle number.
///
/// States are enumerated in descending lexicographic order of the occupation
/// vector (first site most significant), so indexing is deterministic.
#[derive(Debug, Clone)]
pub struct BoseBasis {
    sites: usize,
    particles: usize,
    states: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
}

impl BoseBasis {
    pub fn new(sites: usize, particles: usize) -> Self {
        assert!(sites >= 1, "need at least one site");
        assert!(particles <= u8::MAX as usize, "occupation exceeds u8");
        let mut states = Vec::new();
        let mut current = vec![0u8; sites];
        fill(&mut states, &mut current, 0, particles);
        let index = states
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        Self {
            sites,
            particles,
            states,
            index,
        }
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn particles(&self) -> usize {
        self.particles
    }

    pub fn dimension(&self) -> usize {
        self.states.len()
    }

    pub fn state(&self, i: usize) -> &[u8] {
        &self.states[i]
    }

    pub fn index_of(&self, occupation: &[u8]) -> Option<usize> {
        self.index.get(occupation).copied()
    }

    pub fn states(&self) -> impl Iterator<Item = &[u8]> {
        self.states.iter().map(|s| s.as_slice())
    }
}

fn fill(states: &mut Vec<Vec<u8>>, current: &mut Vec<u8>, site: usize, remaining: usize) {
    if site + 1 == current.len() {
        current[site] = remaining as u8;
        states.push(current.clone());
        return;
    }
    for n in (0..=remaining).rev() {
        current[site] = n as u8;
        fill(states, current, site + 1, remaining - n);
    }
    current[site] = 0;
}

#[cfg(test)]
/// Binomial coefficient, exact in u128 for the desk-scale sizes used here.
pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}
