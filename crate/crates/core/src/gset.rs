//! Finite G-sets, their orbit decompositions, and the permutation-module
//! operations built on them: induction, restriction, deflation, double
//! cosets, Mackey's formula and bisets.
//!
//! Permutation modules are handled through their underlying G-sets, so "≅"
//! below always means isomorphism of G-sets, certified by equal
//! [`TransitiveDecomposition`]s.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::Error;
use crate::group::PermGroup;
use crate::product::{DirectProduct, Quotient};
use crate::subgroup::Subgroup;

/// A finite set with a left action, stored as a full table.
#[derive(Clone, Debug)]
pub struct GSet {
    group: Arc<PermGroup>,
    n_points: usize,
    /// `table[g * n_points + x] = g · x`
    table: Vec<u32>,
}

/// Multiset of point-stabilizer conjugacy classes, one entry per class with
/// its multiplicity. Class representatives are canonical (least conjugate),
/// so two G-sets over the same group are isomorphic iff their
/// decompositions are equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TransitiveDecomposition {
    pub parts: Vec<(Subgroup, usize)>,
}

impl TransitiveDecomposition {
    pub fn from_stabilizers(stabilizers: impl IntoIterator<Item = Subgroup>) -> TransitiveDecomposition {
        let mut counts: BTreeMap<Subgroup, usize> = BTreeMap::new();
        for s in stabilizers {
            *counts.entry(s).or_insert(0) += 1;
        }
        TransitiveDecomposition {
            parts: counts.into_iter().collect(),
        }
    }

    /// Number of points of a G-set with this decomposition.
    pub fn size(&self, group_order: usize) -> usize {
        self.parts.iter().map(|(s, m)| m * (group_order / s.order())).sum()
    }

    pub fn orbit_count(&self) -> usize {
        self.parts.iter().map(|(_, m)| m).sum()
    }
}

/// Maps a subgroup to the canonical representative of its conjugacy class.
/// Precomputing all classes pays off when many G-sets over one group are
/// decomposed.
#[derive(Clone, Debug)]
pub struct ClassIndex {
    canonical: BTreeMap<Vec<u32>, Subgroup>,
}

impl ClassIndex {
    pub fn new(group: &PermGroup, subgroups: &[Subgroup]) -> ClassIndex {
        let mut canonical: BTreeMap<Vec<u32>, Subgroup> = BTreeMap::new();
        for s in subgroups {
            if canonical.contains_key(s.elements()) {
                continue;
            }
            let rep = group.canonical_conjugate(s);
            // every conjugate shares the representative
            for &g in Subgroup::whole(group).elements() {
                let c = group.conjugate_subgroup(g, s);
                canonical.entry(c.elements().to_vec()).or_insert_with(|| rep.clone());
            }
        }
        ClassIndex { canonical }
    }

    pub fn lookup(&self, elems: &[u32]) -> Option<&Subgroup> {
        self.canonical.get(elems)
    }

    pub fn canonical(&self, group: &PermGroup, s: &Subgroup) -> Subgroup {
        match self.canonical.get(s.elements()) {
            Some(rep) => rep.clone(),
            None => group.canonical_conjugate(s),
        }
    }
}

/// Canonical class representative of the subgroup with these sorted
/// elements, which must form a subgroup.
pub fn canonical_of_elements(group: &PermGroup, elems: &[u32], index: Option<&ClassIndex>) -> Subgroup {
    if let Some(rep) = index.and_then(|ix| ix.lookup(elems)) {
        return rep.clone();
    }
    let s = Subgroup::from_elements(group, elems).expect("elements form a subgroup");
    group.canonical_conjugate(&s)
}

impl GSet {
    pub fn from_fn(group: Arc<PermGroup>, n_points: usize, act: impl Fn(u32, u32) -> u32) -> GSet {
        let mut table = Vec::with_capacity(group.order() * n_points);
        for g in 0..group.order() as u32 {
            for x in 0..n_points as u32 {
                table.push(act(g, x));
            }
        }
        GSet { group, n_points, table }
    }

    /// Builds from an explicit table, checking the action axioms.
    pub fn from_table(group: Arc<PermGroup>, n_points: usize, table: Vec<u32>) -> Result<GSet, Error> {
        if table.len() != group.order() * n_points || table.iter().any(|&y| y as usize >= n_points) {
            return Err(Error::Parse("action table has the wrong shape".into()));
        }
        let set = GSet { group, n_points, table };
        if !set.is_action() {
            return Err(Error::Parse("table is not a group action".into()));
        }
        Ok(set)
    }

    /// Left cosets `G/H` with `g · xH = gxH`.
    pub fn cosets(group: Arc<PermGroup>, h: &Subgroup) -> GSet {
        let (labels, reps) = group.left_cosets(h);
        let g2 = group.clone();
        GSet::from_fn(group, reps.len(), move |g, x| {
            labels[g2.mul(g, reps[x as usize]) as usize]
        })
    }

    pub fn regular(group: Arc<PermGroup>) -> GSet {
        let g2 = group.clone();
        GSet::from_fn(group.clone(), group.order(), move |g, x| g2.mul(g, x))
    }

    pub fn point(group: Arc<PermGroup>) -> GSet {
        GSet::from_fn(group, 1, |_, _| 0)
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        self.n_points == 0
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    #[inline]
    pub fn act(&self, g: u32, x: u32) -> u32 {
        self.table[g as usize * self.n_points + x as usize]
    }

    /// Identity acts trivially and `(gh)·x = g·(h·x)`.
    pub fn is_action(&self) -> bool {
        let n = self.group.order() as u32;
        (0..self.n_points as u32).all(|x| self.act(0, x) == x)
            && (0..n).all(|g| {
                (0..n).all(|h| {
                    let gh = self.group.mul(g, h);
                    (0..self.n_points as u32).all(|x| self.act(gh, x) == self.act(g, self.act(h, x)))
                })
            })
    }

    pub fn disjoint_union(&self, other: &GSet) -> GSet {
        debug_assert!(Arc::ptr_eq(&self.group, &other.group) || *self.group == *other.group);
        let (n, m) = (self.n_points as u32, other.n_points as u32);
        GSet::from_fn(self.group.clone(), (n + m) as usize, |g, x| {
            if x < n {
                self.act(g, x)
            } else {
                n + other.act(g, x - n)
            }
        })
    }

    /// Orbits as `(least point, all points)` in order of least point.
    pub fn orbit_list(&self) -> Vec<(u32, Vec<u32>)> {
        let mut seen = alloc::vec![false; self.n_points];
        let gens = self.group.generator_indices();
        let mut out = Vec::new();
        for start in 0..self.n_points as u32 {
            if seen[start as usize] {
                continue;
            }
            seen[start as usize] = true;
            let mut orbit = alloc::vec![start];
            let mut i = 0;
            while i < orbit.len() {
                let x = orbit[i];
                for &g in gens {
                    let y = self.act(g, x);
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        orbit.push(y);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            out.push((start, orbit));
        }
        out
    }

    pub fn stabilizer(&self, x: u32) -> Subgroup {
        let elems: Vec<u32> = (0..self.group.order() as u32)
            .filter(|&g| self.act(g, x) == x)
            .collect();
        Subgroup::from_elements(&self.group, &elems).expect("stabilizers are subgroups")
    }

    pub fn orbits(&self) -> TransitiveDecomposition {
        TransitiveDecomposition::from_stabilizers(
            self.orbit_list()
                .into_iter()
                .map(|(x, _)| self.group.canonical_conjugate(&self.stabilizer(x))),
        )
    }

    pub fn orbits_indexed(&self, index: &ClassIndex) -> TransitiveDecomposition {
        TransitiveDecomposition::from_stabilizers(
            self.orbit_list()
                .into_iter()
                .map(|(x, _)| index.canonical(&self.group, &self.stabilizer(x))),
        )
    }

    /// Restriction to a subgroup, as a set over `subgroup_as_group(h)`.
    pub fn restrict(&self, h: &Subgroup) -> GSet {
        let hgroup = Arc::new(self.group.subgroup_as_group(h));
        let elems = h.elements();
        GSet::from_fn(hgroup, self.n_points, |i, x| self.act(elems[i as usize], x))
    }

    /// Re-expresses the action through an isomorphism: `iso[e]` is the
    /// element of `target` corresponding to element `e` of this set's group.
    pub fn transport(&self, target: Arc<PermGroup>, iso: &[u32]) -> GSet {
        let mut inverse = alloc::vec![0u32; target.order()];
        for (e, &t) in iso.iter().enumerate() {
            inverse[t as usize] = e as u32;
        }
        GSet::from_fn(target, self.n_points, |t, x| self.act(inverse[t as usize], x))
    }
}

/// Induction `G ×_H S` of an `H`-set, where `S` is over
/// `g.subgroup_as_group(h)`. Points are pairs (coset index, point).
pub fn induce(s: &GSet, group: Arc<PermGroup>, h: &Subgroup) -> GSet {
    let (labels, reps) = group.left_cosets(h);
    let m = s.len() as u32;
    let g2 = group.clone();
    GSet::from_fn(group, reps.len() * s.len(), move |g, p| {
        let (i, x) = (p / m, p % m);
        let gr = g2.mul(g, reps[i as usize]);
        let j = labels[gr as usize];
        // g r_i = r_j h
        let hh = g2.mul(g2.inv(reps[j as usize]), gr);
        let hpos = h.position(hh).expect("coset decomposition") as u32;
        j * m + s.act(hpos, x)
    })
}

/// Double coset representatives for `H \ G / K`, each the least element of
/// its double coset.
pub fn double_cosets(group: &PermGroup, h: &Subgroup, k: &Subgroup) -> Vec<u32> {
    let mut seen = alloc::vec![false; group.order()];
    let mut reps = Vec::new();
    for t in 0..group.order() as u32 {
        if seen[t as usize] {
            continue;
        }
        reps.push(t);
        for &a in h.elements() {
            let at = group.mul(a, t);
            for &b in k.elements() {
                seen[group.mul(at, b) as usize] = true;
            }
        }
    }
    reps
}

/// Both sides of a G-set isomorphism claim, with the verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub left: TransitiveDecomposition,
    pub right: TransitiveDecomposition,
}

impl Verdict {
    pub fn equal(&self) -> bool {
        self.left == self.right
    }
}

/// Mackey's formula for `Res^G_K Ind_H^G 1`: the restriction of `G/H` to
/// `K` against `⊔_{t ∈ K\G/H} K/(K ∩ tHt⁻¹)`.
pub fn mackey_check(group: &Arc<PermGroup>, h: &Subgroup, k: &Subgroup) -> Verdict {
    let lhs = GSet::cosets(group.clone(), h).restrict(k);
    let kgroup = lhs.group().clone();
    let mut stabs = Vec::new();
    for t in double_cosets(group, k, h) {
        let th = group.conjugate_subgroup(t, h);
        let meet = k.intersection(group, &th);
        let local: Vec<u32> = meet
            .elements()
            .iter()
            .map(|&x| k.position(x).expect("inside K") as u32)
            .collect();
        let local = Subgroup::from_elements(&kgroup, &local).expect("subgroup");
        stabs.push(kgroup.canonical_conjugate(&local));
    }
    Verdict {
        left: lhs.orbits(),
        right: TransitiveDecomposition::from_stabilizers(stabs),
    }
}

/// A surjection from a set's group onto `target`, as an element table.
#[derive(Clone, Debug)]
pub struct Epimorphism {
    pub target: Arc<PermGroup>,
    pub images: Vec<u32>,
}

impl Epimorphism {
    pub fn from_quotient(q: &Quotient) -> Epimorphism {
        Epimorphism {
            target: q.group.clone(),
            images: q.domain.elements().iter().map(|&x| q.project(x)).collect(),
        }
    }

    fn kernel(&self) -> Vec<u32> {
        (0..self.images.len() as u32)
            .filter(|&g| self.images[g as usize] == 0)
            .collect()
    }
}

/// Contracts the orbits of the kernel of `epi` and lets the target act on
/// them. The kernel must be normal, which holds for any epimorphism.
pub fn deflate_along(s: &GSet, epi: &Epimorphism) -> GSet {
    let kernel = epi.kernel();
    let n = s.len();
    let mut label = alloc::vec![u32::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n as u32 {
        if label[x as usize] != u32::MAX {
            continue;
        }
        let l = reps.len() as u32;
        reps.push(x);
        for &k in &kernel {
            label[s.act(k, x) as usize] = l;
        }
    }
    let mut section = alloc::vec![u32::MAX; epi.target.order()];
    for (g, &q) in epi.images.iter().enumerate() {
        if section[q as usize] == u32::MAX {
            section[q as usize] = g as u32;
        }
    }
    GSet::from_fn(epi.target.clone(), reps.len(), |q, o| {
        label[s.act(section[q as usize], reps[o as usize]) as usize]
    })
}

/// `N`-orbits of `s` as a set over `G/N`.
pub fn deflate(s: &GSet, normal: &Subgroup) -> Result<(GSet, Quotient), Error> {
    let q = Quotient::new(s.group(), normal)?;
    let epi = Epimorphism::from_quotient(&q);
    Ok((deflate_along(s, &epi), q))
}

/// `H/N` as a subgroup of `G/N`, realized as a group, together with the
/// epimorphism `H → H/N` (indices relative to `subgroup_as_group(h)`).
fn quotient_inside(q: &Quotient, h: &Subgroup) -> (Subgroup, Arc<PermGroup>, Epimorphism) {
    let hbar = q.project_subgroup(h);
    let hbar_group = Arc::new(q.group.subgroup_as_group(&hbar));
    let images = h
        .elements()
        .iter()
        .map(|&x| hbar.position(q.project(x)).expect("image inside HN/N") as u32)
        .collect();
    let epi = Epimorphism {
        target: hbar_group.clone(),
        images,
    };
    (hbar, hbar_group, epi)
}

/// `Res^{G/N}_{H/N} Def(S) ≅ Def(Res^G_H S)` for `N ≤ H`.
pub fn deflate_commutes_with_restriction(s: &GSet, normal: &Subgroup, h: &Subgroup) -> Result<Verdict, Error> {
    if !normal.is_subgroup_of(h) {
        return Err(Error::NotASubgroup);
    }
    let (def, q) = deflate(s, normal)?;
    let (hbar, _, epi) = quotient_inside(&q, h);
    // both sides live over subgroup_as_group(H/N), built identically
    let left = def.restrict(&hbar);
    let right = deflate_along(&s.restrict(h), &epi);
    Ok(Verdict {
        left: left.orbits(),
        right: right.orbits(),
    })
}

/// `Ind_{H/N}^{G/N} Def_H(U) ≅ Def_G(Ind_H^G U)` for an `H`-set `U` and `N ≤ H`.
pub fn deflate_commutes_with_induction(
    group: &Arc<PermGroup>,
    normal: &Subgroup,
    h: &Subgroup,
    u: &GSet,
) -> Result<Verdict, Error> {
    if !normal.is_subgroup_of(h) {
        return Err(Error::NotASubgroup);
    }
    let q = Quotient::new(group, normal)?;
    let (hbar, _, epi) = quotient_inside(&q, h);
    let left = induce(&deflate_along(u, &epi), q.group.clone(), &hbar);
    let right = deflate_along(&induce(u, group.clone(), h), &Epimorphism::from_quotient(&q));
    Ok(Verdict {
        left: left.orbits(),
        right: right.orbits(),
    })
}

/// `Def_N(G/H) ≅ (G/N)/(HN/N)`.
pub fn deflate_coset_space(group: &Arc<PermGroup>, normal: &Subgroup, h: &Subgroup) -> Result<Verdict, Error> {
    let (def, q) = deflate(&GSet::cosets(group.clone(), h), normal)?;
    let hn = q.project_subgroup(h);
    Ok(Verdict {
        left: def.orbits(),
        right: GSet::cosets(q.group.clone(), &hn).orbits(),
    })
}

/// `Def_{M/N} Def_N S ≅ Def_M S` for normal `N ≤ M`. The left side lives
/// over `(G/N)/(M/N)` and is transported to `G/M` before comparing.
pub fn deflation_transitivity(s: &GSet, n: &Subgroup, m: &Subgroup) -> Result<Verdict, Error> {
    if !n.is_subgroup_of(m) {
        return Err(Error::NotASubgroup);
    }
    let group = s.group().clone();
    let (step, qn) = deflate(s, n)?;
    let mbar = qn.project_subgroup(m);
    let (twice, qq) = deflate(&step, &mbar)?;
    let (once, qm) = deflate(s, m)?;
    let mut iso = alloc::vec![u32::MAX; qq.group.order()];
    for g in 0..group.order() as u32 {
        iso[qq.project(qn.project(g)) as usize] = qm.project(g);
    }
    Ok(Verdict {
        left: twice.transport(qm.group.clone(), &iso).orbits(),
        right: once.orbits(),
    })
}

/// An explicit equivariant bijection `a → b`, found by matching each orbit
/// of `a` with an unused orbit of `b` holding a point with the same
/// stabilizer. Independent of the canonical class representatives.
pub fn find_isomorphism(a: &GSet, b: &GSet) -> Option<Vec<u32>> {
    if a.len() != b.len() || a.group().order() != b.group().order() {
        return None;
    }
    let mut used = alloc::vec![false; b.len()];
    let mut map = alloc::vec![u32::MAX; a.len()];
    let b_orbits = b.orbit_list();
    for (x, _) in a.orbit_list() {
        let sx = a.stabilizer(x);
        let (idx, y) = b_orbits.iter().enumerate().find_map(|(i, (start, orbit))| {
            if used[*start as usize] {
                return None;
            }
            orbit.iter().find(|&&y| b.stabilizer(y) == sx).map(|&y| (i, y))
        })?;
        used[b_orbits[idx].0 as usize] = true;
        for g in 0..a.group().order() as u32 {
            map[a.act(g, x) as usize] = b.act(g, y);
        }
    }
    Some(map)
}

/// A `(G, H)`-biset stored as a `G × H`-set, with `(g, h)` acting as
/// `x ↦ g·x·h⁻¹`.
#[derive(Clone, Debug)]
pub struct Biset {
    pub product: Arc<DirectProduct>,
    pub set: GSet,
}

impl Biset {
    pub fn new(product: Arc<DirectProduct>, set: GSet) -> Biset {
        debug_assert!(*set.group().clone() == *product.group);
        Biset { product, set }
    }

    /// The transitive biset `(G × H)/X`.
    pub fn cosets(product: Arc<DirectProduct>, x: &Subgroup) -> Biset {
        let set = GSet::cosets(product.group.clone(), x);
        Biset { product, set }
    }

    pub fn left_group(&self) -> &Arc<PermGroup> {
        &self.product.left
    }

    pub fn right_group(&self) -> &Arc<PermGroup> {
        &self.product.right
    }

    /// The opposite `(H, G)`-biset: `(h, g)` acts as `(g, h)` did, so every
    /// stabilizer `X` becomes `X^♯`.
    pub fn dualize(&self) -> Biset {
        let swapped = Arc::new(DirectProduct::from_arcs(
            self.product.right.clone(),
            self.product.left.clone(),
        ));
        let p = &self.product;
        let set = GSet::from_fn(swapped.group.clone(), self.set.len(), |hg, x| {
            let (h, g) = swapped.split(hg);
            self.set.act(p.pair(g, h), x)
        });
        Biset { product: swapped, set }
    }

    /// `self ×_H other` for a `(G, H)`-biset and an `(H, K)`-biset, as a
    /// `(G, K)`-biset over `product` (which must be `G × K`).
    pub fn compose(&self, other: &Biset, product: Arc<DirectProduct>) -> Biset {
        let classes = PairClasses::new(self, other);
        let set = GSet::from_fn(product.group.clone(), classes.count, |gk, c| {
            let (g, k) = product.split(gk);
            classes.act(self, other, g, k, c)
        });
        Biset { product, set }
    }

    /// Orbit decomposition of `self ×_H other` without materializing its
    /// full action table.
    pub fn compose_decomposition(
        &self,
        other: &Biset,
        product: &DirectProduct,
        index: Option<&ClassIndex>,
    ) -> TransitiveDecomposition {
        let classes = PairClasses::new(self, other);
        let gk = &product.group;
        let mut seen = alloc::vec![false; classes.count];
        let gens = gk.generator_indices();
        let mut stabs = Vec::new();
        for start in 0..classes.count as u32 {
            if seen[start as usize] {
                continue;
            }
            seen[start as usize] = true;
            let mut stack = alloc::vec![start];
            while let Some(c) = stack.pop() {
                for &e in gens {
                    let (g, k) = product.split(e);
                    let d = classes.act(self, other, g, k, c);
                    if !seen[d as usize] {
                        seen[d as usize] = true;
                        stack.push(d);
                    }
                }
            }
            let elems: Vec<u32> = (0..gk.order() as u32)
                .filter(|&e| {
                    let (g, k) = product.split(e);
                    classes.act(self, other, g, k, start) == start
                })
                .collect();
            stabs.push(canonical_of_elements(gk, &elems, index));
        }
        TransitiveDecomposition::from_stabilizers(stabs)
    }
}

/// Classes of `U × V` under `h: (u, v) ↦ (u·h⁻¹, h·v)`, i.e. the points of
/// `U ×_H V`.
struct PairClasses {
    m: u32,
    class_of: Vec<u32>,
    rep: Vec<u32>,
    count: usize,
}

impl PairClasses {
    fn new(left: &Biset, right: &Biset) -> PairClasses {
        let (nu, nv) = (left.set.len(), right.set.len());
        let n = nu * nv;
        let m = nv as u32;
        let h = &left.product.right;
        let mut parent: Vec<u32> = (0..n as u32).collect();
        fn find(parent: &mut [u32], mut x: u32) -> u32 {
            while parent[x as usize] != x {
                parent[x as usize] = parent[parent[x as usize] as usize];
                x = parent[x as usize];
            }
            x
        }
        for &hg in h.generator_indices() {
            let on_u = left.product.pair(0, hg);
            let on_v = right.product.pair(hg, 0);
            for u in 0..nu as u32 {
                let u2 = left.set.act(on_u, u);
                for v in 0..nv as u32 {
                    let v2 = right.set.act(on_v, v);
                    let a = find(&mut parent, u * m + v);
                    let b = find(&mut parent, u2 * m + v2);
                    if a != b {
                        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                        parent[hi as usize] = lo;
                    }
                }
            }
        }
        let mut class_of = alloc::vec![u32::MAX; n];
        let mut rep = Vec::new();
        for x in 0..n as u32 {
            let r = find(&mut parent, x);
            if class_of[r as usize] == u32::MAX {
                class_of[r as usize] = rep.len() as u32;
                rep.push(r);
            }
            class_of[x as usize] = class_of[r as usize];
        }
        let count = rep.len();
        PairClasses {
            m,
            class_of,
            rep,
            count,
        }
    }

    /// `(g, k) · [u, v] = [g·u, v·k⁻¹]`.
    #[inline]
    fn act(&self, left: &Biset, right: &Biset, g: u32, k: u32, c: u32) -> u32 {
        let p = self.rep[c as usize];
        let (u, v) = (p / self.m, p % self.m);
        let u2 = left.set.act(left.product.pair(g, 0), u);
        let v2 = right.set.act(right.product.pair(0, k), v);
        self.class_of[(u2 * self.m + v2) as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::group::Limits;

    fn g(name: &str) -> Arc<PermGroup> {
        Arc::new(catalog::parse(name, &Limits::default()).unwrap())
    }

    #[test]
    fn regular_c2_is_one_free_orbit() {
        let c2 = g("C2");
        let d = GSet::regular(c2.clone()).orbits();
        assert_eq!(d.parts.len(), 1);
        assert!(d.parts[0].0.is_trivial());
        assert_eq!(d.parts[0].1, 1);
    }

    #[test]
    fn s4_natural_action_has_stabilizer_of_order_six() {
        let s4 = g("S4");
        let nat = GSet::from_fn(s4.clone(), 4, |e, x| s4.element(e).apply(x));
        assert!(nat.is_action());
        let d = nat.orbits();
        assert_eq!(d.parts.len(), 1);
        assert_eq!(d.parts[0].0.order(), 6);
        for (x, orbit) in nat.orbit_list() {
            assert_eq!(orbit.len() * nat.stabilizer(x).order(), 24);
        }
    }

    #[test]
    fn two_regular_orbits_give_multiplicity_two() {
        let c2 = g("C2");
        let r = GSet::regular(c2.clone());
        let d = r.disjoint_union(&r).orbits();
        assert_eq!(d.parts.len(), 1);
        assert_eq!(d.parts[0].1, 2);
        assert_eq!(d.size(2), 4);
    }

    #[test]
    fn double_coset_examples() {
        let s3 = g("S3");
        let whole = Subgroup::whole(&s3);
        assert_eq!(double_cosets(&s3, &whole, &whole), alloc::vec![0]);
        let t = Subgroup::generated(&s3, &[1]);
        assert_eq!(double_cosets(&s3, &t, &t).len(), 2);
        let one = Subgroup::trivial(&s3);
        assert_eq!(double_cosets(&s3, &one, &one).len(), 6);
    }

    #[test]
    fn induction_examples() {
        let s4 = g("S4");
        let subs = s4.all_subgroups(&Limits::default()).unwrap();
        let h = subs.iter().find(|s| s.order() == 3).unwrap();
        let hg = Arc::new(s4.subgroup_as_group(h));
        let ind = induce(&GSet::point(hg.clone()), s4.clone(), h);
        assert!(ind.is_action());
        assert_eq!(ind.orbits(), GSet::cosets(s4.clone(), h).orbits());
        let ind = induce(&GSet::regular(hg), s4.clone(), h);
        assert_eq!(ind.orbits(), GSet::regular(s4.clone()).orbits());
    }

    #[test]
    fn mackey_s3_c2_c3() {
        let s3 = g("S3");
        let subs = s3.all_subgroups(&Limits::default()).unwrap();
        let c2 = subs.iter().find(|s| s.order() == 2).unwrap();
        let c3 = subs.iter().find(|s| s.order() == 3).unwrap();
        let v = mackey_check(&s3, c2, c3);
        assert!(v.equal());
        // restriction of S3/C2 to C3 is the regular C3-set
        assert_eq!(v.left.parts.len(), 1);
        assert!(v.left.parts[0].0.is_trivial());
        let whole = Subgroup::whole(&s3);
        let v = mackey_check(&s3, &whole, c3);
        assert!(v.equal());
        assert_eq!(v.left.parts[0].0.order(), 3);
    }

    #[test]
    fn mackey_d8_all_pairs() {
        let d8 = g("D8");
        let subs = d8.all_subgroups(&Limits::default()).unwrap();
        for h in &subs {
            for k in &subs {
                assert!(mackey_check(&d8, h, k).equal());
            }
        }
    }

    #[test]
    fn deflation_examples() {
        let s3 = g("S3");
        let subs = s3.all_subgroups(&Limits::default()).unwrap();
        let c3 = subs.iter().find(|s| s.order() == 3).unwrap();
        let (def, q) = deflate(&GSet::regular(s3.clone()), c3).unwrap();
        assert_eq!(def.len(), 2);
        assert_eq!(def.orbits(), GSet::regular(q.group.clone()).orbits());
        let (def, _) = deflate(&GSet::regular(s3.clone()), &Subgroup::whole(&s3)).unwrap();
        assert_eq!(def.len(), 1);
        let (def, q) = deflate(&GSet::regular(s3.clone()), &Subgroup::trivial(&s3)).unwrap();
        assert_eq!(def.len(), 6);
        assert_eq!(q.group.order(), 6);
        let c2 = subs.iter().find(|s| s.order() == 2).unwrap();
        assert_eq!(deflate(&GSet::regular(s3.clone()), c2).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn deflation_commutes_with_restriction_on_d8() {
        let d8 = g("D8");
        let z = d8.center();
        let subs = d8.all_subgroups(&Limits::default()).unwrap();
        let reg = GSet::regular(d8.clone());
        for h in subs.iter().filter(|h| z.is_subgroup_of(h)) {
            assert!(deflate_commutes_with_restriction(&reg, &z, h).unwrap().equal());
        }
    }

    #[test]
    fn dual_of_dual_and_twisted_diagonal() {
        let c4 = g("C4");
        let dp = Arc::new(DirectProduct::from_arcs(c4.clone(), c4.clone()));
        let diag = dp.diagonal().unwrap();
        let b = Biset::cosets(dp.clone(), &diag);
        let dd = b.dualize().dualize();
        assert_eq!(dd.set.orbits(), b.set.orbits());
        assert_eq!(b.dualize().set.orbits().parts[0].0, diag);
        // twisted diagonal by inversion: stabilizer flips to the inverse graph, equal here
        let gen = (0..4u32).find(|&x| c4.element_order(x) == 4).unwrap();
        let tw = Subgroup::generated(&dp.group, &[dp.pair(gen, c4.inv(gen))]);
        let st = Biset::cosets(dp.clone(), &tw).dualize().set.orbits();
        let flipped = dp.flip_into(&dp, &tw);
        assert_eq!(st.parts[0].0, dp.group.canonical_conjugate(&flipped));
    }

    #[test]
    fn deflation_is_transitive_on_d8() {
        let d8 = g("D8");
        let subs = d8.all_subgroups(&Limits::default()).unwrap();
        let normals: Vec<&Subgroup> = subs.iter().filter(|s| d8.is_normal(s)).collect();
        for h in &subs {
            let s = GSet::cosets(d8.clone(), h);
            for n in &normals {
                for m in normals.iter().filter(|m| n.is_subgroup_of(m)) {
                    assert!(deflation_transitivity(&s, n, m).unwrap().equal());
                }
            }
        }
    }

    #[test]
    fn isomorphism_search_agrees_with_decompositions() {
        let s4 = g("S4");
        let subs = s4.all_subgroups(&Limits::default()).unwrap();
        for a in subs.iter().step_by(4) {
            for b in subs.iter().step_by(5) {
                let (x, y) = (GSet::cosets(s4.clone(), a), GSet::cosets(s4.clone(), b));
                let same = x.orbits() == y.orbits();
                let found = find_isomorphism(&x, &y);
                assert_eq!(same, found.is_some());
                if let Some(map) = found {
                    for e in 0..24 {
                        for p in 0..x.len() as u32 {
                            assert_eq!(map[x.act(e, p) as usize], y.act(e, map[p as usize]));
                        }
                    }
                }
            }
        }
    }
}
