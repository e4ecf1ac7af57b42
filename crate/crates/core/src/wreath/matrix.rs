use std::fmt;

use crate::element::{put_u32, put_u32s};
use crate::error::{Error, Result};

/// Square matrix over `S ∪ {0}` with exactly one non-zero entry per row.
///
/// Row `i` holds its non-zero entry `entries[i]` in column `cols[i]`. Zero is
/// never stored, so the one-entry-per-row shape holds by construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RowMonomialMatrix<T = u32> {
    cols: Vec<u32>,
    entries: Vec<T>,
}

/// Block row-monomial matrix: the block entries are row-monomial matrices
/// over the entry monoid.
pub type BlockRowMonomialMatrix = RowMonomialMatrix<RowMonomialMatrix<u32>>;

impl<T> RowMonomialMatrix<T> {
    pub fn new(cols: Vec<u32>, entries: Vec<T>) -> Result<Self> {
        if cols.len() != entries.len() {
            return Err(Error::NotRowMonomial(format!(
                "{} column indices for {} entries",
                cols.len(),
                entries.len()
            )));
        }
        let n = cols.len() as u32;
        if let Some(&c) = cols.iter().find(|&&c| c >= n) {
            return Err(Error::NotRowMonomial(format!(
                "column {} outside size {n}",
                c + 1
            )));
        }
        Ok(Self { cols, entries })
    }

    /// Reads a dense matrix where `None` is zero.
    pub fn from_dense(rows: Vec<Vec<Option<T>>>) -> Result<Self> {
        let n = rows.len();
        let mut cols = Vec::with_capacity(n);
        let mut entries = Vec::with_capacity(n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotRowMonomial(format!(
                    "row {} has length {}, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            let mut found = None;
            for (j, v) in row.into_iter().enumerate() {
                if let Some(v) = v {
                    if found.is_some() {
                        return Err(Error::NotRowMonomial(format!(
                            "row {} has more than one non-zero entry",
                            i + 1
                        )));
                    }
                    found = Some((j as u32, v));
                }
            }
            let (c, v) =
                found.ok_or_else(|| Error::NotRowMonomial(format!("row {} is zero", i + 1)))?;
            cols.push(c);
            entries.push(v);
        }
        Ok(Self { cols, entries })
    }

    pub fn size(&self) -> usize {
        self.cols.len()
    }

    pub fn cols(&self) -> &[u32] {
        &self.cols
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn col(&self, row: usize) -> usize {
        self.cols[row] as usize
    }

    pub fn entry(&self, row: usize) -> &T {
        &self.entries[row]
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &T)> + '_ {
        self.cols
            .iter()
            .map(|&c| c as usize)
            .zip(self.entries.iter())
    }

    /// Row `i` of the product is `(c_Y(c_X(i)), v_X(i) * v_Y(c_X(i)))`.
    pub fn multiply<F>(&self, other: &Self, mut mul: F) -> Result<Self>
    where
        F: FnMut(&T, &T) -> T,
    {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch(format!(
                "{}x{} times {}x{}",
                self.size(),
                self.size(),
                other.size(),
                other.size()
            )));
        }
        let mut cols = Vec::with_capacity(self.size());
        let mut entries = Vec::with_capacity(self.size());
        for (c, v) in self.rows() {
            cols.push(other.cols[c]);
            entries.push(mul(v, &other.entries[c]));
        }
        Ok(Self { cols, entries })
    }

    pub fn map_entries<U, F: FnMut(&T) -> U>(&self, f: F) -> RowMonomialMatrix<U> {
        RowMonomialMatrix {
            cols: self.cols.clone(),
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn with_entry(&self, row: usize, value: T) -> Self
    where
        T: Clone,
    {
        let mut out = self.clone();
        out.entries[row] = value;
        out
    }

    /// The column holding every non-zero entry, if there is exactly one.
    pub fn constant_column(&self) -> Option<usize> {
        let first = *self.cols.first()?;
        self.cols
            .iter()
            .all(|&c| c == first)
            .then_some(first as usize)
    }

    pub fn to_dense(&self) -> Vec<Vec<Option<T>>>
    where
        T: Clone,
    {
        self.rows()
            .map(|(c, v)| {
                let mut row = vec![None; self.size()];
                row[c] = Some(v.clone());
                row
            })
            .collect()
    }
}

impl<T: Clone> RowMonomialMatrix<T> {
    pub fn identity(n: usize, one: T) -> Self {
        Self {
            cols: (0..n as u32).collect(),
            entries: vec![one; n],
        }
    }

    pub fn diagonal(entries: Vec<T>) -> Self {
        Self {
            cols: (0..entries.len() as u32).collect(),
            entries,
        }
    }
}

impl RowMonomialMatrix<u32> {
    pub(crate) fn encode_into(&self, out: &mut Vec<u8>) {
        put_u32s(out, &self.cols);
        for &e in &self.entries {
            put_u32(out, e);
        }
    }
}

impl BlockRowMonomialMatrix {
    /// Size of the block entries; zero for an empty matrix.
    pub fn inner_size(&self) -> usize {
        self.entries.first().map_or(0, RowMonomialMatrix::size)
    }

    /// The `(p*b) x (p*b)` matrix over the entry monoid obtained by expanding
    /// every block.
    pub fn flatten(&self) -> Result<RowMonomialMatrix<u32>> {
        let b = self.inner_size();
        let mut cols = Vec::with_capacity(self.size() * b);
        let mut entries = Vec::with_capacity(self.size() * b);
        for (c, block) in self.rows() {
            if block.size() != b {
                return Err(Error::SizeMismatch(format!(
                    "block of size {} among blocks of size {b}",
                    block.size()
                )));
            }
            for (inner_c, &v) in block.rows() {
                cols.push((c * b + inner_c) as u32);
                entries.push(v);
            }
        }
        RowMonomialMatrix::new(cols, entries)
    }

    /// Regroups a flat matrix into `b x b` blocks. Fails if some row's
    /// non-zero entries would not form a single block per block row.
    pub fn unflatten(flat: &RowMonomialMatrix<u32>, b: usize) -> Result<Self> {
        if b == 0 || !flat.size().is_multiple_of(b) {
            return Err(Error::SizeMismatch(format!(
                "size {} not divisible by block size {b}",
                flat.size()
            )));
        }
        let p = flat.size() / b;
        let mut cols = Vec::with_capacity(p);
        let mut blocks = Vec::with_capacity(p);
        for i in 0..p {
            let block_col = flat.col(i * b) / b;
            let mut inner_cols = Vec::with_capacity(b);
            let mut inner_entries = Vec::with_capacity(b);
            for r in 0..b {
                let c = flat.col(i * b + r);
                if c / b != block_col {
                    return Err(Error::NotRowMonomial(format!(
                        "block row {} spans several block columns",
                        i + 1
                    )));
                }
                inner_cols.push((c % b) as u32);
                inner_entries.push(*flat.entry(i * b + r));
            }
            cols.push(block_col as u32);
            blocks.push(RowMonomialMatrix::new(inner_cols, inner_entries)?);
        }
        RowMonomialMatrix::new(cols, blocks)
    }

    /// Entry in flattened row `row`, i.e. the `(row, col)` entry for the
    /// unique non-zero column of that row.
    pub fn flat_entry(&self, row: usize) -> (usize, u32) {
        let b = self.inner_size();
        let (block_col, block) = (self.col(row / b), self.entry(row / b));
        (block_col * b + block.col(row % b), *block.entry(row % b))
    }
}

impl fmt::Display for RowMonomialMatrix<u32> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (row, (c, v)) in self.rows().enumerate() {
            if row > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}:{}", c + 1, v)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c2(a: &u32, b: &u32) -> u32 {
        a ^ b
    }

    #[test]
    fn identity_is_neutral() {
        let x = RowMonomialMatrix::new(vec![2, 0, 0], vec![1, 0, 1]).unwrap();
        let id = RowMonomialMatrix::identity(3, 0);
        assert_eq!(id.multiply(&x, c2).unwrap(), x);
        assert_eq!(x.multiply(&id, c2).unwrap(), x);
    }

    #[test]
    fn permutation_matrices_compose() {
        // Over the trivial group, row-monomial matrices are transformations.
        let p = RowMonomialMatrix::new(vec![1, 2, 0], vec![0; 3]).unwrap();
        let q = RowMonomialMatrix::new(vec![1, 0, 2], vec![0; 3]).unwrap();
        let pq = p.multiply(&q, |_, _| 0).unwrap();
        // i -> p(i) -> q(p(i))
        assert_eq!(pq.cols(), &[0, 2, 1]);
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn constant_column_absorbs() {
        let x = RowMonomialMatrix::new(vec![1, 2, 0], vec![1, 0, 1]).unwrap();
        let y = RowMonomialMatrix::new(vec![0, 0, 0], vec![0, 1, 1]).unwrap();
        let xy = x.multiply(&y, c2).unwrap();
        assert_eq!(xy.constant_column(), Some(0));
        // dense oracle
        let (dx, dy) = (x.to_dense(), y.to_dense());
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = None;
                for k in 0..3 {
                    if let (Some(a), Some(b)) = (dx[i][k], dy[k][j]) {
                        assert!(acc.is_none());
                        acc = Some(a ^ b);
                    }
                }
                assert_eq!(acc, xy.to_dense()[i][j]);
            }
        }
    }

    #[test]
    fn malformed_input_rejected() {
        assert!(RowMonomialMatrix::new(vec![0, 3], vec![0u32, 0]).is_err());
        assert!(RowMonomialMatrix::new(vec![0], vec![0u32, 0]).is_err());
        assert!(matches!(
            RowMonomialMatrix::from_dense(vec![vec![Some(0u32), Some(1)], vec![None, Some(0)]]),
            Err(Error::NotRowMonomial(_))
        ));
        assert!(
            RowMonomialMatrix::<u32>::from_dense(vec![vec![None, None], vec![None, Some(0)]])
                .is_err()
        );
        let a = RowMonomialMatrix::identity(2, 0u32);
        let b = RowMonomialMatrix::identity(3, 0u32);
        assert!(matches!(a.multiply(&b, c2), Err(Error::SizeMismatch(_))));
    }

    fn rm(n: usize) -> impl Strategy<Value = RowMonomialMatrix<u32>> {
        (
            prop::collection::vec(0..n as u32, n),
            prop::collection::vec(0..2u32, n),
        )
            .prop_map(|(c, e)| RowMonomialMatrix::new(c, e).unwrap())
    }

    fn block(p: usize, b: usize) -> impl Strategy<Value = BlockRowMonomialMatrix> {
        (
            prop::collection::vec(0..p as u32, p),
            prop::collection::vec(rm(b), p),
        )
            .prop_map(|(c, e)| RowMonomialMatrix::new(c, e).unwrap())
    }

    fn block_mul(x: &BlockRowMonomialMatrix, y: &BlockRowMonomialMatrix) -> BlockRowMonomialMatrix {
        x.multiply(y, |u, v| u.multiply(v, c2).unwrap()).unwrap()
    }

    proptest! {
        #[test]
        fn dense_round_trip(x in rm(4)) {
            prop_assert_eq!(RowMonomialMatrix::from_dense(x.to_dense()).unwrap(), x);
        }

        #[test]
        fn flatten_is_multiplicative(x in block(3, 2), y in block(3, 2)) {
            let lhs = block_mul(&x, &y).flatten().unwrap();
            let rhs = x.flatten().unwrap().multiply(&y.flatten().unwrap(), c2).unwrap();
            prop_assert_eq!(&lhs, &rhs);
            prop_assert_eq!(BlockRowMonomialMatrix::unflatten(&lhs, 2).unwrap(), block_mul(&x, &y));
        }
    }

    #[test]
    fn flatten_exhaustive_small() {
        // p*b <= 12 with b = 1 and p = 2 over C2: all 4^2 * 2^2 ... pairs.
        let mut all = Vec::new();
        for c0 in 0..2u32 {
            for c1 in 0..2u32 {
                for e0 in 0..2u32 {
                    for e1 in 0..2u32 {
                        let blocks = vec![
                            RowMonomialMatrix::new(vec![0], vec![e0]).unwrap(),
                            RowMonomialMatrix::new(vec![0], vec![e1]).unwrap(),
                        ];
                        all.push(RowMonomialMatrix::new(vec![c0, c1], blocks).unwrap());
                    }
                }
            }
        }
        for x in &all {
            for y in &all {
                let lhs = block_mul(x, y).flatten().unwrap();
                let rhs = x
                    .flatten()
                    .unwrap()
                    .multiply(&y.flatten().unwrap(), c2)
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}
