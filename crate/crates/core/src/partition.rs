//! Laminar partition trees: singletons at level 1 up to the whole set.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionTree<T> {
    base: Vec<T>,
    /// `levels[0]` holds the singletons; each node lists base elements.
    levels: Vec<Vec<Vec<T>>>,
}

impl<T: Clone> PartitionTree<T> {
    /// Pairs adjacent nodes level by level; an odd node out is carried up
    /// unchanged (its virtual empty partner is never stored).
    pub fn build(base: &[T]) -> Result<Self> {
        if base.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut levels = vec![base.iter().map(|c| vec![c.clone()]).collect::<Vec<_>>()];
        while levels.last().expect("nonempty").len() > 1 {
            let prev = levels.last().expect("nonempty");
            let next = prev
                .chunks(2)
                .map(|pair| pair.iter().flatten().cloned().collect())
                .collect();
            levels.push(next);
        }
        Ok(PartitionTree {
            base: base.to_vec(),
            levels,
        })
    }

    pub fn base(&self) -> &[T] {
        &self.base
    }

    /// Number of levels `L`.
    pub fn height(&self) -> usize {
        self.levels.len()
    }

    /// Partition at level `i` (1-based).
    pub fn level(&self, i: usize) -> Result<&[Vec<T>]> {
        if i == 0 || i > self.levels.len() {
            return Err(Error::LevelOutOfRange {
                level: i,
                max: self.levels.len(),
            });
        }
        Ok(&self.levels[i - 1])
    }

    pub fn width(&self, i: usize) -> Result<usize> {
        self.level(i).map(<[_]>::len)
    }
}
