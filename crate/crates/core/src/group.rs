use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec::Vec;

use crate::error::{Cap, Error};
use crate::perm::Perm;

/// Size limits for the exhaustive algorithms. Beyond them inputs are
/// rejected with [`Error::CapExceeded`], never approximated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub closure_cap: usize,
    pub subgroup_cap: usize,
    pub automorphism_cap: usize,
    pub saturation_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            closure_cap: 20160,
            subgroup_cap: 1024,
            automorphism_cap: 256,
            saturation_cap: 64,
        }
    }
}

/// Groups up to this order keep a full Cayley table.
const TABLE_MAX_ORDER: usize = 1024;

/// A finite permutation group with its elements materialized.
///
/// Elements are stored sorted in the canonical (lexicographic) order, so an
/// element is addressed by its index and index 0 is always the identity.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    gen_indices: Vec<u32>,
    elements: Vec<Perm>,
    inverses: Vec<u32>,
    table: Option<Vec<u32>>,
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for PermGroup {}

impl PermGroup {
    /// The group generated by `generators` acting on `degree` points.
    pub fn closure(generators: &[Perm], degree: usize, limits: &Limits) -> Result<PermGroup, Error> {
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let gens: Vec<Perm> = generators.iter().filter(|g| !g.is_identity()).cloned().collect();
        let id = Perm::identity(degree);
        let mut seen = BTreeSet::new();
        seen.insert(id.clone());
        let mut queue = VecDeque::new();
        queue.push_back(id);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = g.compose(&x);
                if !seen.contains(&y) {
                    if seen.len() >= limits.closure_cap {
                        return Err(Error::CapExceeded {
                            cap: Cap::Closure,
                            limit: limits.closure_cap,
                        });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let elements: Vec<Perm> = seen.into_iter().collect();
        Ok(PermGroup::from_sorted_elements(degree, generators.to_vec(), elements))
    }

    /// Builds the group from an already closed, sorted, duplicate-free
    /// element list.
    pub(crate) fn from_sorted_elements(degree: usize, generators: Vec<Perm>, elements: Vec<Perm>) -> PermGroup {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(elements[0].is_identity());
        let lookup = |p: &Perm| elements.binary_search(p).expect("element list not closed") as u32;
        let inverses: Vec<u32> = elements.iter().map(|e| lookup(&e.inverse())).collect();
        let gen_indices: Vec<u32> = generators.iter().map(&lookup).collect();
        let n = elements.len();
        let table = if n <= TABLE_MAX_ORDER {
            let mut t = Vec::with_capacity(n * n);
            for a in &elements {
                for b in &elements {
                    t.push(lookup(&a.compose(b)));
                }
            }
            Some(t)
        } else {
            None
        };
        PermGroup {
            degree,
            generators,
            gen_indices,
            elements,
            inverses,
            table,
        }
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::from_sorted_elements(degree, Vec::new(), alloc::vec![Perm::identity(degree)])
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// Element indices of the generators.
    pub fn generator_indices(&self) -> &[u32] {
        &self.gen_indices
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    #[inline]
    pub fn element(&self, i: u32) -> &Perm {
        &self.elements[i as usize]
    }

    pub fn index_of(&self, p: &Perm) -> Option<u32> {
        self.elements.binary_search(p).ok().map(|i| i as u32)
    }

    #[inline]
    pub fn identity(&self) -> u32 {
        0
    }

    /// Index of `a * b` (apply `b` first).
    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(t) => t[a as usize * self.elements.len() + b as usize],
            None => {
                let p = self.elements[a as usize].compose(&self.elements[b as usize]);
                self.index_of(&p).expect("group not closed")
            }
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }

    /// Index of `g x g⁻¹`.
    #[inline]
    pub fn conj(&self, g: u32, x: u32) -> u32 {
        match &self.table {
            Some(_) => self.mul(self.mul(g, x), self.inv(g)),
            None => {
                let p = self.elements[g as usize].conjugate(&self.elements[x as usize]);
                self.index_of(&p).expect("group not closed")
            }
        }
    }

    pub fn pow(&self, a: u32, mut e: usize) -> u32 {
        let mut base = a;
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: u32) -> usize {
        self.elements[a as usize].order()
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.gen_indices;
        g.iter().all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Whether the order is a power of `p` (the trivial group counts).
    pub fn is_p_group(&self, p: u32) -> bool {
        let mut n = self.order();
        while n.is_multiple_of(p as usize) {
            n /= p as usize;
        }
        n == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(degree: usize, cycles: &[&[u32]]) -> Perm {
        Perm::from_cycles(degree, cycles).unwrap()
    }

    #[test]
    fn closure_single_transposition() {
        let g = PermGroup::closure(&[c(2, &[&[0, 1]])], 2, &Limits::default()).unwrap();
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn closure_dihedral_of_square() {
        let g = PermGroup::closure(&[c(4, &[&[0, 1, 2, 3]]), c(4, &[&[0, 2]])], 4, &Limits::default()).unwrap();
        assert_eq!(g.order(), 8);
    }

    #[test]
    fn closure_empty_generators_is_trivial() {
        let g = PermGroup::closure(&[], 3, &Limits::default()).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.element(0).is_identity());
    }

    #[test]
    fn closure_respects_cap() {
        let limits = Limits {
            closure_cap: 100,
            ..Limits::default()
        };
        let s5 = [c(5, &[&[0, 1, 2, 3, 4]]), c(5, &[&[0, 1]])];
        assert!(matches!(
            PermGroup::closure(&s5, 5, &limits),
            Err(Error::CapExceeded { cap: Cap::Closure, .. })
        ));
        assert_eq!(PermGroup::closure(&s5, 5, &Limits::default()).unwrap().order(), 120);
    }

    #[test]
    fn closure_rejects_degree_mismatch() {
        assert!(PermGroup::closure(&[c(3, &[&[0, 1]])], 4, &Limits::default()).is_err());
    }

    #[test]
    fn table_and_perm_paths_agree() {
        let g = PermGroup::closure(&[c(4, &[&[0, 1, 2, 3]]), c(4, &[&[0, 1]])], 4, &Limits::default()).unwrap();
        for a in 0..g.order() as u32 {
            for b in 0..g.order() as u32 {
                let direct = g.element(a).compose(g.element(b));
                assert_eq!(g.element(g.mul(a, b)), &direct);
            }
            assert_eq!(g.mul(a, g.inv(a)), 0);
        }
    }
}
