use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::hash::{Hash, Hasher};

use crate::error::{Cap, Error};
use crate::group::{Limits, PermGroup};

/// A subgroup of some [`PermGroup`], identified by its sorted list of
/// element indices. Generators are carried along but are not part of the
/// identity.
#[derive(Clone, Debug)]
pub struct Subgroup {
    elems: Vec<u32>,
    bits: Vec<u64>,
    gens: Vec<u32>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elems == other.elems
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.elems.hash(state);
    }
}

/// Canonical order: by order first, then by sorted element list.
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.elems
            .len()
            .cmp(&other.elems.len())
            .then_with(|| self.elems.cmp(&other.elems))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn bitset(n: usize, elems: &[u32]) -> Vec<u64> {
    let mut bits = alloc::vec![0u64; n.div_ceil(64)];
    for &e in elems {
        bits[e as usize / 64] |= 1 << (e % 64);
    }
    bits
}

impl Subgroup {
    fn from_parts(group: &PermGroup, mut elems: Vec<u32>, gens: Vec<u32>) -> Subgroup {
        elems.sort_unstable();
        let bits = bitset(group.order(), &elems);
        Subgroup { elems, bits, gens }
    }

    pub fn trivial(group: &PermGroup) -> Subgroup {
        Subgroup::from_parts(group, alloc::vec![0], Vec::new())
    }

    pub fn whole(group: &PermGroup) -> Subgroup {
        Subgroup::from_parts(
            group,
            (0..group.order() as u32).collect(),
            group.generator_indices().to_vec(),
        )
    }

    /// The subgroup generated by the given element indices.
    pub fn generated(group: &PermGroup, gens: &[u32]) -> Subgroup {
        let gens: Vec<u32> = gens.iter().copied().filter(|&g| g != 0).collect();
        let mut bits = alloc::vec![0u64; group.order().div_ceil(64)];
        let mut elems = alloc::vec![0u32];
        bits[0] |= 1;
        let mut queue = VecDeque::new();
        queue.push_back(0u32);
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = group.mul(g, x);
                if bits[y as usize / 64] & (1 << (y % 64)) == 0 {
                    bits[y as usize / 64] |= 1 << (y % 64);
                    elems.push(y);
                    queue.push_back(y);
                }
            }
        }
        elems.sort_unstable();
        Subgroup { elems, bits, gens }
    }

    /// Checks closure and wraps an arbitrary element set.
    pub fn from_elements(group: &PermGroup, elems: &[u32]) -> Result<Subgroup, Error> {
        let set: BTreeSet<u32> = elems.iter().copied().collect();
        if set.iter().any(|&e| e as usize >= group.order()) || !set.contains(&0) {
            return Err(Error::NotASubgroup);
        }
        for &a in &set {
            for &b in &set {
                if !set.contains(&group.mul(a, b)) {
                    return Err(Error::NotASubgroup);
                }
            }
        }
        let elems: Vec<u32> = set.into_iter().collect();
        let gens = small_generating_set(group, &elems);
        Ok(Subgroup::from_parts(group, elems, gens))
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.elems.len()
    }

    /// Sorted element indices.
    #[inline]
    pub fn elements(&self) -> &[u32] {
        &self.elems
    }

    pub fn generators(&self) -> &[u32] {
        &self.gens
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        let i = x as usize / 64;
        i < self.bits.len() && self.bits[i] & (1 << (x % 64)) != 0
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order() <= other.order() && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn is_trivial(&self) -> bool {
        self.elems.len() == 1
    }

    /// Position of `x` in the sorted element list.
    pub fn position(&self, x: u32) -> Option<usize> {
        self.elems.binary_search(&x).ok()
    }

    pub fn intersection(&self, group: &PermGroup, other: &Subgroup) -> Subgroup {
        let elems: Vec<u32> = self.elems.iter().copied().filter(|&e| other.contains(e)).collect();
        let gens = small_generating_set(group, &elems);
        Subgroup::from_parts(group, elems, gens)
    }

    pub fn join(&self, group: &PermGroup, other: &Subgroup) -> Subgroup {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().copied().filter(|&g| !self.contains(g)));
        Subgroup::generated(group, &gens)
    }
}

fn is_prime(k: usize) -> bool {
    k >= 2 && (2..k).take_while(|d| d * d <= k).all(|d| !k.is_multiple_of(d))
}

/// Greedy generating set: walk the elements in order, keep any element not
/// yet in the span.
fn small_generating_set(group: &PermGroup, elems: &[u32]) -> Vec<u32> {
    let mut gens = Vec::new();
    let mut span = Subgroup::trivial(group);
    for &e in elems.iter().rev() {
        if span.order() == elems.len() {
            break;
        }
        if !span.contains(e) {
            gens.push(e);
            span = Subgroup::generated(group, &gens);
        }
    }
    gens
}

impl PermGroup {
    /// `g S g⁻¹`.
    pub fn conjugate_subgroup(&self, g: u32, s: &Subgroup) -> Subgroup {
        let elems: Vec<u32> = s.elements().iter().map(|&x| self.conj(g, x)).collect();
        let gens = s.generators().iter().map(|&x| self.conj(g, x)).collect();
        Subgroup::from_parts(self, elems, gens)
    }

    /// Whether `g` normalizes `s`, checked on generators.
    fn normalizes(&self, g: u32, s: &Subgroup) -> bool {
        s.generators().iter().all(|&x| s.contains(self.conj(g, x)))
    }

    pub fn normalizer(&self, s: &Subgroup) -> Subgroup {
        self.normalizer_within(&Subgroup::whole(self), s)
    }

    /// `N_H(S)` for a subgroup `H`.
    pub fn normalizer_within(&self, h: &Subgroup, s: &Subgroup) -> Subgroup {
        let elems: Vec<u32> = h
            .elements()
            .iter()
            .copied()
            .filter(|&g| self.normalizes(g, s))
            .collect();
        let gens = small_generating_set(self, &elems);
        Subgroup::from_parts(self, elems, gens)
    }

    pub fn centralizer(&self, s: &Subgroup) -> Subgroup {
        self.centralizer_within(&Subgroup::whole(self), s)
    }

    pub fn centralizer_within(&self, h: &Subgroup, s: &Subgroup) -> Subgroup {
        let elems: Vec<u32> = h
            .elements()
            .iter()
            .copied()
            .filter(|&g| s.generators().iter().all(|&x| self.mul(g, x) == self.mul(x, g)))
            .collect();
        let gens = small_generating_set(self, &elems);
        Subgroup::from_parts(self, elems, gens)
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer(&Subgroup::whole(self))
    }

    pub fn is_normal(&self, s: &Subgroup) -> bool {
        self.generator_indices().iter().all(|&g| self.normalizes(g, s))
    }

    /// Whether `n` is normal in the subgroup `h`.
    pub fn is_normal_in(&self, h: &Subgroup, n: &Subgroup) -> bool {
        n.is_subgroup_of(h) && h.generators().iter().all(|&g| self.normalizes(g, n))
    }

    /// Some `g` with `g A g⁻¹ = B`, scanning elements in canonical order.
    pub fn conjugate_test(&self, a: &Subgroup, b: &Subgroup) -> Option<u32> {
        self.conjugate_test_within(&Subgroup::whole(self), a, b)
    }

    pub fn conjugate_test_within(&self, h: &Subgroup, a: &Subgroup, b: &Subgroup) -> Option<u32> {
        if a.order() != b.order() {
            return None;
        }
        h.elements()
            .iter()
            .copied()
            .find(|&g| a.generators().iter().all(|&x| b.contains(self.conj(g, x))))
    }

    /// Canonical representative of the conjugacy class of `s` under `h`:
    /// the least conjugate in the canonical subgroup order.
    pub fn canonical_conjugate_within(&self, h: &Subgroup, s: &Subgroup) -> Subgroup {
        let mut best: Option<Vec<u32>> = None;
        let mut buf = Vec::with_capacity(s.order());
        for &g in h.elements() {
            buf.clear();
            buf.extend(s.elements().iter().map(|&x| self.conj(g, x)));
            buf.sort_unstable();
            if best.as_ref().is_none_or(|b| buf < *b) {
                best = Some(buf.clone());
            }
        }
        let elems = best.expect("h contains the identity");
        let gens = small_generating_set(self, &elems);
        Subgroup::from_parts(self, elems, gens)
    }

    pub fn canonical_conjugate(&self, s: &Subgroup) -> Subgroup {
        self.canonical_conjugate_within(&Subgroup::whole(self), s)
    }

    /// Every subgroup exactly once, in canonical order.
    ///
    /// Subgroups are grown from the cyclic ones by joining with further
    /// cyclic subgroups; every subgroup is a join of cyclic subgroups, so the
    /// search is complete.
    pub fn all_subgroups(&self, limits: &Limits) -> Result<Vec<Subgroup>, Error> {
        if self.order() > limits.subgroup_cap {
            return Err(Error::CapExceeded {
                cap: Cap::Subgroups,
                limit: limits.subgroup_cap,
            });
        }
        if self.is_solvable() {
            return Ok(self.solvable_subgroups());
        }
        Ok(self.joins_of_cyclic_subgroups())
    }

    fn joins_of_cyclic_subgroups(&self) -> Vec<Subgroup> {
        let mut cyclic: BTreeMap<Vec<u32>, Subgroup> = BTreeMap::new();
        for g in 0..self.order() as u32 {
            let c = Subgroup::generated(self, &[g]);
            cyclic.entry(c.elems.clone()).or_insert(c);
        }
        let cyclic: Vec<Subgroup> = cyclic.into_values().collect();
        let mut found: BTreeSet<Vec<u32>> = BTreeSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for c in &cyclic {
            found.insert(c.elems.clone());
            queue.push_back(out.len());
            out.push(c.clone());
        }
        while let Some(i) = queue.pop_front() {
            let s = out[i].clone();
            for c in &cyclic {
                if c.is_subgroup_of(&s) {
                    continue;
                }
                let j = s.join(self, c);
                if found.insert(j.elems.clone()) {
                    queue.push_back(out.len());
                    out.push(j);
                }
            }
        }
        out.sort();
        out
    }

    /// In a solvable group every subgroup `H` has a chain `1 = H₀ ⊲ H₁ ⊲ … ⊲ H`
    /// of prime indices, so growing each subgroup `S` by one coset `xS` of
    /// prime order in `N(S)/S` reaches everything.
    fn solvable_subgroups(&self) -> Vec<Subgroup> {
        let n = self.order();
        let mut found: BTreeSet<Vec<u32>> = BTreeSet::new();
        let trivial = Subgroup::trivial(self);
        found.insert(trivial.elems.clone());
        let mut out = alloc::vec![trivial];
        let mut i = 0;
        while i < out.len() {
            let s = out[i].clone();
            i += 1;
            let norm = self.normalizer(&s);
            let mut seen = alloc::vec![false; n];
            for &e in &s.elems {
                seen[e as usize] = true;
            }
            for &x in &norm.elems {
                if seen[x as usize] {
                    continue;
                }
                for &e in &s.elems {
                    seen[self.mul(x, e) as usize] = true;
                }
                let mut k = 1;
                let mut y = x;
                while !s.contains(y) {
                    y = self.mul(y, x);
                    k += 1;
                }
                if !is_prime(k) {
                    continue;
                }
                let mut elems = Vec::with_capacity(k * s.order());
                let mut power = 0u32;
                for _ in 0..k {
                    elems.extend(s.elems.iter().map(|&e| self.mul(power, e)));
                    power = self.mul(x, power);
                }
                elems.sort_unstable();
                if found.insert(elems.clone()) {
                    let mut gens = s.gens.clone();
                    gens.push(x);
                    out.push(Subgroup::from_parts(self, elems, gens));
                }
            }
        }
        out.sort();
        out
    }

    /// `[S, S]`.
    pub fn derived_subgroup(&self, s: &Subgroup) -> Subgroup {
        let mut comms = Vec::new();
        for &a in s.elements() {
            for &b in s.elements() {
                let c = self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)));
                comms.push(c);
            }
        }
        comms.sort_unstable();
        comms.dedup();
        Subgroup::generated(self, &comms)
    }

    pub fn is_solvable(&self) -> bool {
        let mut s = Subgroup::whole(self);
        while !s.is_trivial() {
            let d = self.derived_subgroup(&s);
            if d.order() == s.order() {
                return false;
            }
            s = d;
        }
        true
    }

    /// Subgroups up to conjugacy: canonical representative and class size.
    pub fn subgroup_classes(&self, subgroups: &[Subgroup]) -> Vec<(Subgroup, usize)> {
        let mut classes: BTreeMap<Subgroup, usize> = BTreeMap::new();
        for s in subgroups {
            *classes.entry(self.canonical_conjugate(s)).or_insert(0) += 1;
        }
        classes.into_iter().collect()
    }

    /// A Sylow `p`-subgroup, grown one factor of `p` at a time inside
    /// normalizers. Deterministic: candidates are scanned in canonical order.
    pub fn sylow(&self, p: u32) -> Subgroup {
        let p = p as usize;
        let mut target = 1usize;
        let mut n = self.order();
        while n.is_multiple_of(p) {
            n /= p;
            target *= p;
        }
        let mut s = Subgroup::trivial(self);
        while s.order() < target {
            let norm = self.normalizer(&s);
            let g = norm
                .elements()
                .iter()
                .copied()
                .find(|&g| !s.contains(g) && s.contains(self.pow(g, p)))
                .expect("a non-Sylow p-subgroup has a p-element in its normalizer outside it");
            let mut gens = s.generators().to_vec();
            gens.push(g);
            s = Subgroup::generated(self, &gens);
        }
        s
    }

    /// Realizes a subgroup as a group in its own right. Element indices of
    /// the new group follow the subgroup's sorted element list.
    pub fn subgroup_as_group(&self, s: &Subgroup) -> PermGroup {
        let elements = s.elements().iter().map(|&e| self.element(e).clone()).collect();
        let generators = s.generators().iter().map(|&e| self.element(e).clone()).collect();
        PermGroup::from_sorted_elements(self.degree(), generators, elements)
    }

    /// Left coset labels of `s`: `labels[g]` is the coset of `g`, and cosets
    /// are numbered by their least element. Returns `(labels, representatives)`.
    pub fn left_cosets(&self, s: &Subgroup) -> (Vec<u32>, Vec<u32>) {
        let n = self.order();
        let mut labels = alloc::vec![u32::MAX; n];
        let mut reps = Vec::with_capacity(n / s.order());
        for g in 0..n as u32 {
            if labels[g as usize] != u32::MAX {
                continue;
            }
            let label = reps.len() as u32;
            reps.push(g);
            for &h in s.elements() {
                labels[self.mul(g, h) as usize] = label;
            }
        }
        (labels, reps)
    }

    /// The set product `A B`, which is a subgroup when either normalizes the other.
    pub fn product_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        a.join(self, b)
    }
}
