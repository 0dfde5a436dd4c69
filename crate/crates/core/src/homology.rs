//! Mod-2 Betti numbers and Euler characteristic, used as an independent
//! check on the shelling verdicts.

use serde::{Deserialize, Serialize};

use crate::complex::{CellId, Complex};
use crate::gf2::{rank, BitVec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiProfile {
    pub betti: Vec<usize>,
    pub euler: i64,
}

impl BettiProfile {
    /// True when the profile is that of an `m`-sphere: `b_0 = b_m = 1` and
    /// every other Betti number vanishes.
    pub fn is_sphere_profile(&self) -> bool {
        let m = self.betti.len() - 1;
        if m == 0 {
            return self.betti == [2];
        }
        self.betti
            .iter()
            .enumerate()
            .all(|(i, &b)| b == usize::from(i == 0 || i == m))
    }

    pub fn b1(&self) -> usize {
        self.betti.get(1).copied().unwrap_or(0)
    }
}

pub fn euler_characteristic(c: &Complex) -> i64 {
    c.cell_counts()
        .iter()
        .enumerate()
        .map(|(g, &n)| if g % 2 == 0 { n as i64 } else { -(n as i64) })
        .sum()
}

/// Rank of the boundary map from grade `g` to grade `g - 1`.
fn boundary_rank(c: &Complex, g: usize) -> usize {
    if g == 0 || g > c.dimension() {
        return 0;
    }
    let rows: Vec<BitVec> = c
        .cells(g)
        .map(|cell| BitVec::from_ones(c.cell_count(g - 1), c.facets_of(cell).iter().copied()))
        .collect();
    rank(rows)
}

pub fn betti_mod2(c: &Complex) -> BettiProfile {
    let k = c.dimension();
    let ranks: Vec<usize> = (0..=k + 1).map(|g| boundary_rank(c, g)).collect();
    let betti = (0..=k)
        .map(|g| c.cell_count(g) - ranks[g] - ranks[g + 1])
        .collect();
    BettiProfile {
        betti,
        euler: euler_characteristic(c),
    }
}

/// True when the mod-2 boundary of the given cells vanishes.
pub fn is_cycle(c: &Complex, cells: &[CellId]) -> bool {
    let mut acc = std::collections::BTreeSet::new();
    for cell in cells {
        for &f in c.facets_of(*cell) {
            if !acc.remove(&f) {
                acc.insert(f);
            }
        }
    }
    acc.is_empty()
}
