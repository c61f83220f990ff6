//! Approximation spaces: a finite universe with an equivalence relation
//! given as a partition into blocks, and lower/upper approximations of
//! tuple sets in the componentwise power of the relation.
//!
//! For a set `X` of `n`-tuples, a tuple belongs to the lower approximation
//! when its entire equivalence class (the componentwise product of blocks)
//! is contained in `X`, and to the upper approximation when its class meets
//! `X`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Ways of building or querying a space that fail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    EmptyUniverse,
    DuplicateElement(String),
    EmptyBlock,
    UnknownElement(String),
    /// The element appears in more than one block.
    OverlappingBlocks(String),
    /// The element appears in no block.
    UncoveredElement(String),
    /// Powers are defined for arity ≥ 1.
    ZeroArity,
    WrongTupleArity { expected: usize, found: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyUniverse => f.write_str("universe must be non-empty"),
            Error::DuplicateElement(e) => write!(f, "element {e} listed twice in the universe"),
            Error::EmptyBlock => f.write_str("blocks must be non-empty"),
            Error::UnknownElement(e) => write!(f, "element {e} is not in the universe"),
            Error::OverlappingBlocks(e) => write!(f, "element {e} appears in two blocks"),
            Error::UncoveredElement(e) => write!(f, "element {e} appears in no block"),
            Error::ZeroArity => f.write_str("power spaces need arity at least 1"),
            Error::WrongTupleArity { expected, found } => {
                write!(f, "tuple has {found} components, expected {expected}")
            }
        }
    }
}

impl core::error::Error for Error {}

/// A finite universe partitioned into equivalence blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproximationSpace {
    elements: Vec<String>,
    index: BTreeMap<String, usize>,
    block_of: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl ApproximationSpace {
    /// Builds a space from a universe and a partition of it.  Blocks are
    /// renumbered canonically by their smallest member in universe order.
    pub fn new(universe: Vec<String>, blocks: &[Vec<String>]) -> Result<Self, Error> {
        if universe.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        let mut index = BTreeMap::new();
        for (i, e) in universe.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(Error::DuplicateElement(e.clone()));
            }
        }

        let mut assigned: Vec<Option<usize>> = alloc::vec![None; universe.len()];
        let mut block_sets: Vec<Vec<usize>> = Vec::new();
        for block in blocks {
            if block.is_empty() {
                return Err(Error::EmptyBlock);
            }
            let mut members = Vec::new();
            for e in block {
                let i = *index
                    .get(e)
                    .ok_or_else(|| Error::UnknownElement(e.clone()))?;
                if assigned[i].is_some() {
                    return Err(Error::OverlappingBlocks(e.clone()));
                }
                assigned[i] = Some(block_sets.len());
                members.push(i);
            }
            members.sort_unstable();
            block_sets.push(members);
        }
        if let Some(i) = assigned.iter().position(Option::is_none) {
            return Err(Error::UncoveredElement(universe[i].clone()));
        }

        // Canonical order: blocks sorted by smallest member.
        let mut order: Vec<usize> = (0..block_sets.len()).collect();
        order.sort_unstable_by_key(|&b| block_sets[b][0]);
        let mut renumber = alloc::vec![0usize; block_sets.len()];
        for (new, &old) in order.iter().enumerate() {
            renumber[old] = new;
        }
        let blocks: Vec<Vec<usize>> = order.iter().map(|&b| block_sets[b].clone()).collect();
        let block_of: Vec<usize> = assigned
            .into_iter()
            .map(|b| renumber[b.expect("covered")])
            .collect();

        Ok(ApproximationSpace {
            elements: universe,
            index,
            block_of,
            blocks,
        })
    }

    /// The space whose blocks are all singletons (the identity relation).
    pub fn discrete(universe: Vec<String>) -> Result<Self, Error> {
        let blocks: Vec<Vec<String>> = universe.iter().map(|e| alloc::vec![e.clone()]).collect();
        Self::new(universe, &blocks)
    }

    pub fn universe(&self) -> &[String] {
        &self.elements
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, element: &str) -> Option<usize> {
        self.index.get(element).copied()
    }

    /// The canonical block number of an element.
    pub fn block_of(&self, element: &str) -> Option<usize> {
        self.index_of(element).map(|i| self.block_of[i])
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Members of a block, in universe order.
    pub fn block_members(&self, block: usize) -> impl Iterator<Item = &str> {
        self.blocks[block].iter().map(|&i| self.elements[i].as_str())
    }

    /// Blocks as element-name lists, in canonical order.
    pub fn blocks(&self) -> Vec<Vec<String>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&i| self.elements[i].clone()).collect())
            .collect()
    }

    pub fn same_block(&self, a: &str, b: &str) -> Result<bool, Error> {
        let ba = self
            .block_of(a)
            .ok_or_else(|| Error::UnknownElement(a.into()))?;
        let bb = self
            .block_of(b)
            .ok_or_else(|| Error::UnknownElement(b.into()))?;
        Ok(ba == bb)
    }

    /// The componentwise `n`-th power of the space, for `n ≥ 1`.
    pub fn power(&self, arity: usize) -> Result<PowerSpace<'_>, Error> {
        if arity == 0 {
            return Err(Error::ZeroArity);
        }
        Ok(PowerSpace { base: self, arity })
    }
}

/// The universe of `n`-tuples with the componentwise equivalence: two
/// tuples are related when every pair of corresponding components shares a
/// block.
#[derive(Debug, Clone, Copy)]
pub struct PowerSpace<'a> {
    base: &'a ApproximationSpace,
    arity: usize,
}

impl<'a> PowerSpace<'a> {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn base(&self) -> &'a ApproximationSpace {
        self.base
    }

    fn check_tuple(&self, tuple: &[String]) -> Result<(), Error> {
        if tuple.len() != self.arity {
            return Err(Error::WrongTupleArity {
                expected: self.arity,
                found: tuple.len(),
            });
        }
        for e in tuple {
            if self.base.index_of(e).is_none() {
                return Err(Error::UnknownElement(e.clone()));
            }
        }
        Ok(())
    }

    fn check_set(&self, set: &BTreeSet<Vec<String>>) -> Result<(), Error> {
        for t in set {
            self.check_tuple(t)?;
        }
        Ok(())
    }

    /// All tuples, ordered lexicographically by universe position.
    pub fn tuples(&self) -> Vec<Vec<String>> {
        let n = self.base.size();
        let total = n.pow(self.arity as u32);
        let mut out = Vec::with_capacity(total);
        let mut digits = alloc::vec![0usize; self.arity];
        for _ in 0..total {
            out.push(
                digits
                    .iter()
                    .map(|&i| self.base.elements[i].clone())
                    .collect(),
            );
            for pos in (0..self.arity).rev() {
                if digits[pos] + 1 < n {
                    digits[pos] += 1;
                    break;
                }
                digits[pos] = 0;
            }
        }
        out
    }

    pub fn related(&self, s: &[String], t: &[String]) -> Result<bool, Error> {
        self.check_tuple(s)?;
        self.check_tuple(t)?;
        for (a, b) in s.iter().zip(t) {
            if !self.base.same_block(a, b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The equivalence class of a tuple: the componentwise product of the
    /// blocks of its components, in lexicographic order.
    pub fn class_of(&self, tuple: &[String]) -> Result<Vec<Vec<String>>, Error> {
        self.check_tuple(tuple)?;
        let blocks: Vec<&Vec<usize>> = tuple
            .iter()
            .map(|e| &self.base.blocks[self.base.block_of(e).expect("checked")])
            .collect();
        let mut out = Vec::new();
        let mut digits = alloc::vec![0usize; self.arity];
        loop {
            out.push(
                digits
                    .iter()
                    .enumerate()
                    .map(|(pos, &i)| self.base.elements[blocks[pos][i]].clone())
                    .collect(),
            );
            let mut pos = self.arity;
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                if digits[pos] + 1 < blocks[pos].len() {
                    digits[pos] += 1;
                    break;
                }
                digits[pos] = 0;
            }
        }
    }

    /// Does the whole class of `tuple` lie inside `set`?
    pub fn in_lower(&self, tuple: &[String], set: &BTreeSet<Vec<String>>) -> Result<bool, Error> {
        Ok(self.class_of(tuple)?.iter().all(|t| set.contains(t)))
    }

    /// Does the class of `tuple` meet `set`?
    pub fn in_upper(&self, tuple: &[String], set: &BTreeSet<Vec<String>>) -> Result<bool, Error> {
        Ok(self.class_of(tuple)?.iter().any(|t| set.contains(t)))
    }

    /// Tuples whose entire class is contained in `set`.
    pub fn lower(&self, set: &BTreeSet<Vec<String>>) -> Result<BTreeSet<Vec<String>>, Error> {
        self.check_set(set)?;
        let mut out = BTreeSet::new();
        for t in self.tuples() {
            if self.in_lower(&t, set)? {
                out.insert(t);
            }
        }
        Ok(out)
    }

    /// Tuples whose class meets `set`.
    pub fn upper(&self, set: &BTreeSet<Vec<String>>) -> Result<BTreeSet<Vec<String>>, Error> {
        self.check_set(set)?;
        let mut out = BTreeSet::new();
        for t in self.tuples() {
            if self.in_upper(&t, set)? {
                out.insert(t);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn strings(items: &[&str]) -> Vec<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    fn singletons(items: &[&str]) -> BTreeSet<Vec<String>> {
        items.iter().map(|s| vec![s.to_string()]).collect()
    }

    fn space() -> ApproximationSpace {
        ApproximationSpace::new(
            strings(&["a", "b", "c"]),
            &[strings(&["a", "b"]), strings(&["c"])],
        )
        .unwrap()
    }

    #[test]
    fn lower_and_upper_of_a_cut_block() {
        let s = space();
        let p = s.power(1).unwrap();
        let x = singletons(&["a", "c"]);
        assert_eq!(p.lower(&x).unwrap(), singletons(&["c"]));
        assert_eq!(p.upper(&x).unwrap(), singletons(&["a", "b", "c"]));
    }

    #[test]
    fn approximations_sandwich_the_set() {
        let s = space();
        let p = s.power(1).unwrap();
        // All 8 subsets of a 3-element universe.
        let names = ["a", "b", "c"];
        for bits in 0..8u8 {
            let x: BTreeSet<Vec<String>> = names
                .iter()
                .enumerate()
                .filter(|(i, _)| bits >> i & 1 == 1)
                .map(|(_, e)| vec![e.to_string()])
                .collect();
            let lo = p.lower(&x).unwrap();
            let hi = p.upper(&x).unwrap();
            assert!(lo.is_subset(&x));
            assert!(x.is_subset(&hi));
            // Both approximations are saturated, so they are fixed points.
            assert_eq!(p.lower(&lo).unwrap(), lo);
            assert_eq!(p.upper(&lo).unwrap(), lo);
            assert_eq!(p.lower(&hi).unwrap(), hi);
            // Duality through complement.
            let all: BTreeSet<Vec<String>> = p.tuples().into_iter().collect();
            let co: BTreeSet<Vec<String>> = all.difference(&x).cloned().collect();
            let lo_co = p.lower(&co).unwrap();
            let hi_from_dual: BTreeSet<Vec<String>> =
                all.difference(&lo_co).cloned().collect();
            assert_eq!(hi, hi_from_dual);
        }
    }

    #[test]
    fn power_two_relates_componentwise() {
        let s = space();
        let p = s.power(2).unwrap();
        assert_eq!(p.tuples().len(), 9);
        assert!(p
            .related(&strings(&["a", "c"]), &strings(&["b", "c"]))
            .unwrap());
        assert!(!p
            .related(&strings(&["a", "c"]), &strings(&["b", "a"]))
            .unwrap());

        let x: BTreeSet<Vec<String>> = [strings(&["a", "c"]), strings(&["b", "c"])]
            .into_iter()
            .collect();
        // The class of (a, c) is {(a,c), (b,c)} which is contained in x.
        assert_eq!(p.lower(&x).unwrap(), x);
        assert_eq!(p.upper(&x).unwrap(), x);

        let y: BTreeSet<Vec<String>> = [strings(&["a", "c"])].into_iter().collect();
        assert!(p.lower(&y).unwrap().is_empty());
        assert_eq!(p.upper(&y).unwrap(), x);
    }

    #[test]
    fn constructor_validates_the_partition() {
        assert_eq!(
            ApproximationSpace::new(Vec::new(), &[]),
            Err(Error::EmptyUniverse)
        );
        assert_eq!(
            ApproximationSpace::new(strings(&["a", "a"]), &[strings(&["a"])]),
            Err(Error::DuplicateElement("a".into()))
        );
        assert_eq!(
            ApproximationSpace::new(strings(&["a"]), &[strings(&["a"]), strings(&["a"])]),
            Err(Error::OverlappingBlocks("a".into()))
        );
        assert_eq!(
            ApproximationSpace::new(strings(&["a", "b"]), &[strings(&["a"])]),
            Err(Error::UncoveredElement("b".into()))
        );
        assert_eq!(
            ApproximationSpace::new(strings(&["a"]), &[strings(&["a"]), vec![]]),
            Err(Error::EmptyBlock)
        );
        assert_eq!(
            ApproximationSpace::new(strings(&["a"]), &[strings(&["a", "z"])]),
            Err(Error::UnknownElement("z".into()))
        );
        assert_eq!(space().power(0).unwrap_err(), Error::ZeroArity);
    }

    #[test]
    fn blocks_are_canonically_ordered() {
        let s = ApproximationSpace::new(
            strings(&["c", "a", "b"]),
            &[strings(&["b"]), strings(&["a", "c"])],
        )
        .unwrap();
        // Universe order is c, a, b; the block containing c comes first.
        assert_eq!(s.blocks(), vec![strings(&["c", "a"]), strings(&["b"])]);
        assert_eq!(s.block_of("c"), Some(0));
        assert_eq!(s.block_of("a"), Some(0));
        assert_eq!(s.block_of("b"), Some(1));
    }
}
