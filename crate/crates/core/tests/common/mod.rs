//! Generators and a brute-force reference for the integration suites.
#![allow(dead_code)]

use std::collections::BTreeMap;

use contextspace::tables::{validate_table, OutcomeTable};
use contextspace::{build_space, ContextFamily, ContextWeights, KolmogorovSpace};
use rand::rngs::StdRng;
use rand::Rng;

/// A random valid table. Roughly one in five has zero entries, one in ten
/// is deterministic in correlation (|C| = 1).
pub fn random_table(rng: &mut StdRng) -> OutcomeTable {
    let mut raw: [f64; 4] = std::array::from_fn(|_| rng.random::<f64>());
    match rng.random_range(0..10) {
        0 => {
            let k = rng.random_range(0..4);
            raw[k] = 0.0;
            raw[(k + 1) % 4] = 0.0;
        }
        1 => {
            // all mass on (+,+),(−,−) or on (+,−),(−,+)
            if rng.random::<bool>() {
                raw[1] = 0.0;
                raw[2] = 0.0;
            } else {
                raw[0] = 0.0;
                raw[3] = 0.0;
            }
        }
        2 => {
            raw = [0.0; 4];
            raw[rng.random_range(0..4)] = 1.0;
        }
        _ => {}
    }
    let s: f64 = raw.iter().sum();
    validate_table(raw.map(|x| x / s)).expect("normalized table")
}

pub fn random_family(rng: &mut StdRng, m: usize, n: usize) -> ContextFamily {
    let mut tables = BTreeMap::new();
    for i in 1..=m {
        for j in 1..=n {
            tables.insert((i, j), random_table(rng));
        }
    }
    ContextFamily::from_tables(m, n, &tables).unwrap()
}

pub fn random_simplex(rng: &mut StdRng, len: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..len).map(|_| 0.05 + rng.random::<f64>()).collect();
    let s: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / s).collect()
}

pub fn random_weights(rng: &mut StdRng, m: usize, n: usize) -> ContextWeights {
    // normalization leaves sums within a few ulps of 1
    ContextWeights::new(random_simplex(rng, m), random_simplex(rng, n)).unwrap()
}

pub fn uniform_space(family: ContextFamily) -> KolmogorovSpace {
    let w = ContextWeights::uniform(family.m(), family.n());
    build_space(family, w).unwrap()
}

/// One atom of the reference model, in padded notation:
/// `(a1, a2, b1, b2)` with exactly one nonzero entry per side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefAtom {
    pub padded: [i8; 4],
    pub mass: f64,
}

/// Builds the 16-point space of a 2×2 family directly from its definition,
/// without touching the library's space construction.
pub fn reference_atoms(family: &ContextFamily, u: [f64; 2], v: [f64; 2]) -> Vec<RefAtom> {
    let mut out = Vec::with_capacity(16);
    for i in 0..2 {
        for j in 0..2 {
            let table = family.table(i + 1, j + 1).unwrap().entries();
            // canonical order (+,+), (+,−), (−,+), (−,−)
            for (k, (e, f)) in [(1i8, 1i8), (1, -1), (-1, 1), (-1, -1)].into_iter().enumerate() {
                let mut padded = [0i8; 4];
                padded[i] = e;
                padded[2 + j] = f;
                out.push(RefAtom {
                    padded,
                    mass: u[i] * v[j] * table[k],
                });
            }
        }
    }
    out
}

/// `P(event | given)` by filtering the atom list and renormalizing.
pub fn reference_conditional(atoms: &[RefAtom], event: u32, given: u32) -> Option<f64> {
    let mass = |mask: u32| -> f64 {
        atoms
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << k) != 0)
            .map(|(_, a)| a.mass)
            .sum()
    };
    let g = mass(given);
    (g > 0.0).then(|| mass(event & given) / g)
}
