//! Dense GF(2) linear algebra on packed bit rows.

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitRow {
    words: Vec<u64>,
    len: usize,
}

impl BitRow {
    pub fn zeros(len: usize) -> BitRow {
        BitRow { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> BitRow {
        let mut r = BitRow::zeros(len);
        for i in ones {
            r.flip(i);
        }
        r
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, v: bool) {
        if self.get(i) != v {
            self.flip(i);
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitRow) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    /// Parity of the bitwise AND.
    pub fn dot(&self, other: &BitRow) -> bool {
        self.words.iter().zip(&other.words).fold(0, |acc, (a, b)| acc ^ (a & b).count_ones()) & 1 == 1
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }
}

/// Incrementally built row-echelon basis of a subspace.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<(usize, BitRow)>,
}

impl Echelon {
    pub fn new() -> Echelon {
        Echelon { rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis.
    pub fn reduce(&self, v: &BitRow) -> BitRow {
        let mut v = v.clone();
        for (p, r) in &self.rows {
            if v.get(*p) {
                v.xor_assign(r);
            }
        }
        v
    }

    /// Inserts `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &BitRow) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.first_one() else { return false };
        // keep rows fully reduced at their pivots so `reduce` is a single pass
        for (_, row) in self.rows.iter_mut() {
            if row.get(p) {
                row.xor_assign(&r);
            }
        }
        self.rows.push((p, r));
        true
    }
}

/// Basis of the null space `{x : M x = 0}` of a matrix given by rows of length `ncols`.
pub fn nullspace(rows: &[BitRow], ncols: usize) -> Vec<BitRow> {
    let mut m: Vec<BitRow> = rows.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(pi) = (r..m.len()).find(|&i| m[i].get(col)) else { continue };
        m.swap(r, pi);
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row.get(col) {
                row.xor_assign(&pivot);
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; ncols];
        for &p in &pivots {
            v[p] = true;
        }
        v
    };
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut x = BitRow::zeros(ncols);
            x.set(free, true);
            for (k, &p) in pivots.iter().enumerate() {
                if m[k].get(free) {
                    x.set(p, true);
                }
            }
            x
        })
        .collect()
}

/// Inverse of a small square GF(2) matrix, `None` if singular.
pub fn invert(m: &[Vec<bool>]) -> Option<Vec<Vec<bool>>> {
    let n = m.len();
    let mut a: Vec<Vec<bool>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| i == j));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&i| a[i][col])?;
        a.swap(col, p);
        let pivot = a[col].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != col && row[col] {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn matmul(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols).map(|j| row.iter().zip(b).fold(false, |acc, (&x, r)| acc ^ (x & r[j]))).collect()
        })
        .collect()
}

pub fn transpose(a: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}
