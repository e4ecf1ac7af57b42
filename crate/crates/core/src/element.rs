//! Canonical element values.
//!
//! Every structure in the crate stores its elements as [`Element`] values.
//! Equality and hashing are structural, and [`Element::encode`] gives an
//! injective byte encoding; the total order on elements is the
//! lexicographic order of those encodings, which is what enumeration uses
//! to break ties.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::wreath::{BlockRowMonomialMatrix, RowMonomialMatrix};

/// A full transformation of `{0, .., n-1}`, acting on the right: the
/// product `s * t` maps `i` to `t(s(i))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Transformation(Vec<u32>);

impl Transformation {
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let n = images.len() as u32;
        if let Some(&bad) = images.iter().find(|&&x| x >= n) {
            return Err(Error::InvalidInput(format!(
                "image {bad} out of range for degree {n}"
            )));
        }
        Ok(Self(images))
    }

    pub fn identity(degree: usize) -> Self {
        Self((0..degree as u32).collect())
    }

    pub fn constant(degree: usize, point: usize) -> Self {
        Self(vec![point as u32; degree])
    }

    /// The cycle `0 -> 1 -> .. -> n-1 -> 0`.
    pub fn cycle(degree: usize) -> Self {
        Self(
            (0..degree as u32)
                .map(|i| (i + 1) % degree as u32)
                .collect(),
        )
    }

    /// Builds a permutation from 0-based disjoint-or-not cycles, composed left
    /// to right.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut perm = Self::identity(degree);
        for cycle in cycles {
            let mut step: Vec<u32> = (0..degree as u32).collect();
            for (k, &p) in cycle.iter().enumerate() {
                if p as usize >= degree {
                    return Err(Error::InvalidInput(format!(
                        "point {} outside degree {degree}",
                        p + 1
                    )));
                }
                step[p as usize] = cycle[(k + 1) % cycle.len()];
            }
            let mut seen = vec![false; degree];
            for &p in cycle {
                if std::mem::replace(&mut seen[p as usize], true) {
                    return Err(Error::InvalidInput(format!(
                        "point {} repeated in a cycle",
                        p + 1
                    )));
                }
            }
            perm = perm.then(&Self(step));
        }
        Ok(perm)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn image(&self, point: usize) -> usize {
        self.0[point] as usize
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Self) -> Self {
        Self(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.0.len()];
        self.0
            .iter()
            .all(|&i| !std::mem::replace(&mut seen[i as usize], true))
    }

    pub fn is_constant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    pub fn rank(&self) -> usize {
        let mut seen = vec![false; self.0.len()];
        self.0
            .iter()
            .filter(|&&i| !std::mem::replace(&mut seen[i as usize], true))
            .count()
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Element {
    /// Abstract index into a multiplication table.
    Index(u32),
    Transf(Transformation),
    /// Row-monomial matrix whose entries index an entry monoid.
    RowMono(RowMonomialMatrix),
    /// Row-monomial matrix whose entries are themselves row-monomial matrices.
    Block(BlockRowMonomialMatrix),
    Tuple(Vec<Element>),
}

const TAG_INDEX: u8 = 0;
const TAG_TRANSF: u8 = 1;
const TAG_ROWMONO: u8 = 2;
const TAG_BLOCK: u8 = 3;
const TAG_TUPLE: u8 = 4;

pub(crate) fn put_u32(out: &mut Vec<u8>, x: u32) {
    out.extend_from_slice(&x.to_be_bytes());
}

pub(crate) fn put_u32s(out: &mut Vec<u8>, xs: &[u32]) {
    put_u32(out, xs.len() as u32);
    for &x in xs {
        put_u32(out, x);
    }
}

impl Element {
    /// Injective canonical encoding.
    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.encode_into(&mut out);
        out
    }

    pub fn encode_into(&self, out: &mut Vec<u8>) {
        match self {
            Element::Index(i) => {
                out.push(TAG_INDEX);
                put_u32(out, *i);
            }
            Element::Transf(t) => {
                out.push(TAG_TRANSF);
                put_u32s(out, t.images());
            }
            Element::RowMono(m) => {
                out.push(TAG_ROWMONO);
                m.encode_into(out);
            }
            Element::Block(m) => {
                out.push(TAG_BLOCK);
                put_u32s(out, m.cols());
                for block in m.entries() {
                    block.encode_into(out);
                }
            }
            Element::Tuple(parts) => {
                out.push(TAG_TUPLE);
                put_u32(out, parts.len() as u32);
                for p in parts {
                    p.encode_into(out);
                }
            }
        }
    }

    pub fn as_index(&self) -> Option<u32> {
        match self {
            Element::Index(i) => Some(*i),
            _ => None,
        }
    }

    pub fn as_transf(&self) -> Option<&Transformation> {
        match self {
            Element::Transf(t) => Some(t),
            _ => None,
        }
    }

    pub fn as_row_mono(&self) -> Option<&RowMonomialMatrix> {
        match self {
            Element::RowMono(m) => Some(m),
            _ => None,
        }
    }

    pub fn as_block(&self) -> Option<&BlockRowMonomialMatrix> {
        match self {
            Element::Block(m) => Some(m),
            _ => None,
        }
    }

    pub fn as_tuple(&self) -> Option<&[Element]> {
        match self {
            Element::Tuple(p) => Some(p),
            _ => None,
        }
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        self.encode().cmp(&other.encode())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Index(i) => write!(f, "#{i}"),
            Element::Transf(t) => write!(f, "{t}"),
            Element::RowMono(m) => write!(f, "{m}"),
            Element::Block(m) => {
                write!(f, "[")?;
                for (row, (c, block)) in m.rows().enumerate() {
                    if row > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{}:{}", c + 1, block)?;
                }
                write!(f, "]")
            }
            Element::Tuple(parts) => {
                write!(f, "(")?;
                for (k, p) in parts.iter().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cycles_compose_left_to_right() {
        // (1 2)(2 3) applied left to right sends 1 -> 2 -> 3.
        let t = Transformation::from_cycles(3, &[vec![0, 1], vec![1, 2]]).unwrap();
        assert_eq!(t.images(), &[2, 0, 1]);
        assert!(Transformation::from_cycles(3, &[vec![0, 0]]).is_err());
        assert!(Transformation::from_cycles(2, &[vec![0, 2]]).is_err());
    }

    #[test]
    fn right_action_composition() {
        let s = Transformation::new(vec![1, 1, 2]).unwrap();
        let t = Transformation::cycle(3);
        assert_eq!(s.then(&t).images(), &[2, 2, 0]);
        assert_eq!(Transformation::constant(3, 1).rank(), 1);
        assert!(Transformation::cycle(4).is_permutation());
    }

    fn transf(degree: usize) -> impl Strategy<Value = Element> {
        prop::collection::vec(0..degree as u32, degree)
            .prop_map(|v| Element::Transf(Transformation::new(v).unwrap()))
    }

    proptest! {
        #[test]
        fn encoding_is_injective_and_orders_consistently(a in transf(4), b in transf(4)) {
            prop_assert_eq!(a == b, a.encode() == b.encode());
            prop_assert_eq!(a.cmp(&b), a.encode().cmp(&b.encode()));
            prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
        }
    }
}
