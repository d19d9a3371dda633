// SPDX-License-Identifier: Apache-2.0

//! Dense matrices over F₂ with bit-packed rows.

use std::fmt;

/// A vector over F₂, bit `i` of word `i / 64`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b & 1 == 1);
        }
        v
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

    pub fn set(&mut self, i: usize, bit: bool) {
        let mask = 1u64 << (i % 64);
        if bit {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn dot(&self, other: &BitVec) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    pub fn bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i) as u8).collect()
    }

    /// Concatenation `(self; other)`.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len + other.len);
        for i in 0..self.len {
            out.set(i, self.get(i));
        }
        for i in 0..other.len {
            out.set(self.len + i, other.get(i));
        }
        out
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", self.get(i) as u8)?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVec>,
}

/// Solution set of `A·x = b`: `particular + span(kernel)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSolutions {
    pub particular: BitVec,
    pub kernel: Vec<BitVec>,
}

impl AffineSolutions {
    /// Every solution, `2^{dim kernel}` of them.
    pub fn enumerate(&self) -> Vec<BitVec> {
        let mut out = vec![self.particular.clone()];
        for k in &self.kernel {
            let more: Vec<BitVec> = out
                .iter()
                .map(|v| {
                    let mut w = v.clone();
                    w.xor_assign(k);
                    w
                })
                .collect();
            out.extend(more);
        }
        out
    }
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols));
        Self {
            rows: rows.len(),
            cols,
            data: rows.iter().map(|r| BitVec::from_bits(r)).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// `diag(v)`.
    pub fn diagonal(v: &BitVec) -> Self {
        let mut m = Self::zeros(v.len(), v.len());
        for i in 0..v.len() {
            m.set(i, i, v.get(i));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, bit: bool) {
        self.data[r].set(c, bit)
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.data[r]
    }

    pub fn add(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            a.xor_assign(b);
        }
        out
    }

    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(self.cols, v.len());
        let mut out = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            out.set(r, self.data[r].dot(v));
        }
        out
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn block(a: &BitMatrix, b: &BitMatrix, c: &BitMatrix, d: &BitMatrix) -> BitMatrix {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let mut m = BitMatrix::zeros(a.rows + c.rows, a.cols + b.cols);
        for (src, r0, c0) in [(a, 0, 0), (b, 0, a.cols), (c, a.rows, 0), (d, a.rows, a.cols)] {
            for r in 0..src.rows {
                for col in 0..src.cols {
                    m.set(r0 + r, c0 + col, src.get(r, col));
                }
            }
        }
        m
    }

    /// Row echelon form; returns pivot columns.
    fn eliminate(&mut self, rhs: Option<&mut BitVec>) -> Vec<usize> {
        let mut rhs = rhs;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            let Some(p) = (row..self.rows).find(|&r| self.data[r].get(col)) else {
                continue;
            };
            self.data.swap(row, p);
            if let Some(b) = rhs.as_deref_mut() {
                let (x, y) = (b.get(row), b.get(p));
                b.set(row, y);
                b.set(p, x);
            }
            let pivot_row = self.data[row].clone();
            for r in 0..self.rows {
                if r != row && self.data[r].get(col) {
                    self.data[r].xor_assign(&pivot_row);
                    if let Some(b) = rhs.as_deref_mut() {
                        let v = b.get(r) ^ b.get(row);
                        b.set(r, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().eliminate(None).len()
    }

    /// Basis of the right kernel `{x : A·x = 0}`.
    pub fn kernel(&self) -> Vec<BitVec> {
        let mut m = self.clone();
        let pivots = m.eliminate(None);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = BitVec::zeros(self.cols);
                x.set(f, true);
                for (r, &pc) in pivots.iter().enumerate() {
                    if m.data[r].get(f) {
                        x.set(pc, true);
                    }
                }
                x
            })
            .collect()
    }

    /// All solutions of `A·x = b`, or `None` if inconsistent.
    pub fn solve(&self, b: &BitVec) -> Option<AffineSolutions> {
        assert_eq!(b.len(), self.rows);
        let mut m = self.clone();
        let mut rhs = b.clone();
        let pivots = m.eliminate(Some(&mut rhs));
        if (pivots.len()..self.rows).any(|r| rhs.get(r)) {
            return None;
        }
        let mut particular = BitVec::zeros(self.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            particular.set(pc, rhs.get(r));
        }
        Some(AffineSolutions {
            particular,
            kernel: self.kernel(),
        })
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in &self.data {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rank_and_kernel_small() {
        let m = BitMatrix::from_rows(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].bits(), vec![1, 1, 1]);
        assert_eq!(BitMatrix::identity(5).rank(), 5);
    }

    #[test]
    fn inconsistent_system() {
        let m = BitMatrix::from_rows(&[vec![1, 1], vec![1, 1]]);
        assert!(m.solve(&BitVec::from_bits(&[1, 0])).is_none());
        let sol = m.solve(&BitVec::from_bits(&[1, 1])).unwrap();
        assert_eq!(sol.enumerate().len(), 2);
    }

    proptest! {
        #[test]
        fn every_enumerated_solution_solves(
            rows in 1usize..7, cols in 1usize..9, seed in any::<u64>(), bseed in any::<u64>()
        ) {
            let bits: Vec<Vec<u8>> = (0..rows)
                .map(|r| (0..cols).map(|c| ((seed >> ((r * cols + c) % 64)) & 1) as u8).collect())
                .collect();
            let m = BitMatrix::from_rows(&bits);
            let b = BitVec::from_bits(&(0..rows).map(|r| ((bseed >> r) & 1) as u8).collect::<Vec<_>>());
            prop_assert_eq!(m.kernel().len(), cols - m.rank());
            if let Some(sol) = m.solve(&b) {
                for x in sol.enumerate() {
                    prop_assert_eq!(m.mul_vec(&x), b.clone());
                }
            } else {
                // brute force confirms inconsistency
                for mask in 0u64..(1 << cols) {
                    let x = BitVec::from_bits(&(0..cols).map(|c| ((mask >> c) & 1) as u8).collect::<Vec<_>>());
                    prop_assert_ne!(m.mul_vec(&x), b.clone());
                }
            }
        }
    }
}
