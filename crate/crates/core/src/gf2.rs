//! Dense bit vectors and Gaussian elimination over GF(2).

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BitVec {
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_ones<I: IntoIterator<Item = usize>>(len: usize, ones: I) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the lowest set bit.
    pub fn lowest(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
}

/// Rank of a set of row vectors.
pub fn rank(rows: Vec<BitVec>) -> usize {
    let mut basis: Vec<(usize, BitVec)> = Vec::new();
    for mut row in rows {
        for (pivot, b) in &basis {
            if row.get(*pivot) {
                row.xor_assign(b);
            }
        }
        if let Some(p) = row.lowest() {
            // keep the basis fully reduced on its pivots
            for (_, b) in basis.iter_mut() {
                if b.get(p) {
                    b.xor_assign(&row);
                }
            }
            basis.push((p, row));
        }
    }
    basis.len()
}

/// Finds a subset of `vectors` whose sum is `target`, returned as ascending
/// indices, or `None` when `target` is outside their span.
pub fn solve_subset(vectors: &[BitVec], target: &BitVec) -> Option<Vec<usize>> {
    let n = vectors.len();
    // each basis row remembers which input vectors it combines
    let mut basis: Vec<(usize, BitVec, BitVec)> = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        let mut row = v.clone();
        let mut tag = BitVec::from_ones(n, [i]);
        for (pivot, b, t) in &basis {
            if row.get(*pivot) {
                row.xor_assign(b);
                tag.xor_assign(t);
            }
        }
        if let Some(p) = row.lowest() {
            for (_, b, t) in basis.iter_mut() {
                if b.get(p) {
                    b.xor_assign(&row);
                    t.xor_assign(&tag);
                }
            }
            basis.push((p, row, tag));
        }
    }
    let mut residue = target.clone();
    let mut chosen = BitVec::zeros(n);
    for (pivot, b, t) in &basis {
        if residue.get(*pivot) {
            residue.xor_assign(b);
            chosen.xor_assign(t);
        }
    }
    residue
        .is_zero()
        .then(|| (0..n).filter(|&i| chosen.get(i)).collect())
}
