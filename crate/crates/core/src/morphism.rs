use alloc::collections::VecDeque;
use alloc::vec::Vec;

use crate::error::{Cap, Error};
use crate::group::{Limits, PermGroup};
use crate::subgroup::Subgroup;

/// A map from a subgroup of one group into a subgroup of another, stored as
/// an explicit table: `images[i]` is the image of `source.elements()[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupMorphism {
    source: Subgroup,
    target: Subgroup,
    images: Vec<u32>,
}

impl GroupMorphism {
    /// Wraps a table without checking the homomorphism property.
    pub fn from_table(source: Subgroup, target: Subgroup, images: Vec<u32>) -> Result<GroupMorphism, Error> {
        if images.len() != source.order() || images.iter().any(|&y| !target.contains(y)) {
            return Err(Error::NotHomomorphism);
        }
        Ok(GroupMorphism { source, target, images })
    }

    /// Extends generator images to a homomorphism on `source`, failing if no
    /// homomorphism with these values exists.
    pub fn from_generator_images(
        domain: &PermGroup,
        codomain: &PermGroup,
        source: &Subgroup,
        target: &Subgroup,
        gens: &[u32],
        gen_images: &[u32],
    ) -> Result<GroupMorphism, Error> {
        let map = extend(domain, codomain, gens, gen_images).ok_or(Error::NotHomomorphism)?;
        let images: Result<Vec<u32>, Error> = source
            .elements()
            .iter()
            .map(|x| {
                map.iter()
                    .find(|(a, _)| a == x)
                    .map(|&(_, b)| b)
                    .ok_or(Error::NotHomomorphism)
            })
            .collect();
        let images = images?;
        if images.len() != map.len() {
            return Err(Error::NotHomomorphism);
        }
        GroupMorphism::from_table(source.clone(), target.clone(), images)
    }

    pub fn identity(s: &Subgroup) -> GroupMorphism {
        GroupMorphism {
            source: s.clone(),
            target: s.clone(),
            images: s.elements().to_vec(),
        }
    }

    pub fn source(&self) -> &Subgroup {
        &self.source
    }

    pub fn target(&self) -> &Subgroup {
        &self.target
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, x: u32) -> Option<u32> {
        self.source.position(x).map(|i| self.images[i])
    }

    /// Full double-loop check of `f(ab) = f(a) f(b)`.
    pub fn is_homomorphism(&self, domain: &PermGroup, codomain: &PermGroup) -> bool {
        let src = self.source.elements();
        src.iter().enumerate().all(|(i, &a)| {
            src.iter().enumerate().all(|(j, &b)| {
                let ab = domain.mul(a, b);
                self.apply(ab) == Some(codomain.mul(self.images[i], self.images[j]))
            })
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut sorted = self.images.clone();
        sorted.sort_unstable();
        sorted.dedup();
        sorted.len() == self.images.len()
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.images.len() == self.target.order()
    }

    /// Sorted image set.
    pub fn image_elements(&self) -> Vec<u32> {
        let mut v = self.images.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn image(&self, codomain: &PermGroup) -> Subgroup {
        Subgroup::from_elements(codomain, &self.image_elements()).expect("homomorphic image is a subgroup")
    }

    /// `self ∘ first`; requires `first`'s image inside `self`'s source.
    pub fn after(&self, first: &GroupMorphism) -> Option<GroupMorphism> {
        let images: Option<Vec<u32>> = first.images.iter().map(|&y| self.apply(y)).collect();
        Some(GroupMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            images: images?,
        })
    }

    /// Inverse of a bijection onto its target.
    pub fn inverse(&self) -> Option<GroupMorphism> {
        if !self.is_bijective() {
            return None;
        }
        let mut images = alloc::vec![0u32; self.images.len()];
        for (i, &y) in self.images.iter().enumerate() {
            images[self.target.position(y)?] = self.source.elements()[i];
        }
        Some(GroupMorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            images,
        })
    }

    /// Restriction to a subgroup of the source.
    pub fn restrict(&self, to: &Subgroup) -> Option<GroupMorphism> {
        let images: Option<Vec<u32>> = to.elements().iter().map(|&x| self.apply(x)).collect();
        Some(GroupMorphism {
            source: to.clone(),
            target: self.target.clone(),
            images: images?,
        })
    }

    /// Same map, new target (must contain the image).
    pub fn with_target(&self, target: Subgroup) -> Option<GroupMorphism> {
        if self.images.iter().all(|&y| target.contains(y)) {
            Some(GroupMorphism {
                source: self.source.clone(),
                target,
                images: self.images.clone(),
            })
        } else {
            None
        }
    }
}

/// Breadth-first extension of generator images over the Cayley graph.
/// Returns `(element, image)` pairs for the generated subgroup, or `None`
/// when some relation is violated.
fn extend(domain: &PermGroup, codomain: &PermGroup, gens: &[u32], imgs: &[u32]) -> Option<Vec<(u32, u32)>> {
    let mut map = alloc::vec![u32::MAX; domain.order()];
    let mut order = Vec::new();
    map[0] = 0;
    order.push(0u32);
    let mut queue = VecDeque::new();
    queue.push_back(0u32);
    while let Some(x) = queue.pop_front() {
        let fx = map[x as usize];
        for (&g, &fg) in gens.iter().zip(imgs) {
            let y = domain.mul(g, x);
            let fy = codomain.mul(fg, fx);
            match map[y as usize] {
                u32::MAX => {
                    map[y as usize] = fy;
                    order.push(y);
                    queue.push_back(y);
                }
                prev if prev != fy => return None,
                _ => {}
            }
        }
    }
    order.sort_unstable();
    Some(order.into_iter().map(|x| (x, map[x as usize])).collect())
}

/// Extends a partial injective homomorphism (on a subgroup) by one more
/// generator. `table[x]` holds the current image or `u32::MAX`.
fn extend_injective(group: &PermGroup, table: &[u32], gens: &[u32], imgs: &[u32]) -> Option<Vec<u32>> {
    let mut map = table.to_vec();
    let mut used = alloc::vec![false; group.order()];
    let mut queue = VecDeque::new();
    for (x, &fx) in map.iter().enumerate() {
        if fx != u32::MAX {
            used[fx as usize] = true;
            queue.push_back(x as u32);
        }
    }
    while let Some(x) = queue.pop_front() {
        let fx = map[x as usize];
        for (&g, &fg) in gens.iter().zip(imgs) {
            let y = group.mul(g, x);
            let fy = group.mul(fg, fx);
            match map[y as usize] {
                u32::MAX => {
                    if used[fy as usize] {
                        return None;
                    }
                    used[fy as usize] = true;
                    map[y as usize] = fy;
                    queue.push_back(y);
                }
                prev if prev != fy => return None,
                _ => {}
            }
        }
    }
    Some(map)
}

/// The full automorphism group of `p`, ordered by image tables.
pub fn automorphisms(p: &PermGroup, limits: &Limits) -> Result<Vec<GroupMorphism>, Error> {
    if p.order() > limits.automorphism_cap {
        return Err(Error::CapExceeded {
            cap: Cap::Automorphisms,
            limit: limits.automorphism_cap,
        });
    }
    let whole = Subgroup::whole(p);
    let all: Vec<u32> = (0..p.order() as u32).collect();
    let gens = Subgroup::from_elements(p, &all)
        .expect("whole group")
        .generators()
        .to_vec();
    let orders: Vec<usize> = (0..p.order() as u32).map(|x| p.element_order(x)).collect();

    let mut out = Vec::new();
    let mut start = alloc::vec![u32::MAX; p.order()];
    start[0] = 0;
    let mut chosen = Vec::new();
    search(p, &gens, &orders, &start, &mut chosen, &mut out);
    out.sort_unstable();
    Ok(out
        .into_iter()
        .map(|images| GroupMorphism {
            source: whole.clone(),
            target: whole.clone(),
            images,
        })
        .collect())
}

fn search(
    p: &PermGroup,
    gens: &[u32],
    orders: &[usize],
    table: &[u32],
    chosen: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    let k = chosen.len();
    if k == gens.len() {
        if table.iter().all(|&y| y != u32::MAX) {
            out.push(table.to_vec());
        }
        return;
    }
    let g = gens[k];
    for y in 0..p.order() as u32 {
        if orders[y as usize] != orders[g as usize] {
            continue;
        }
        chosen.push(y);
        if let Some(next) = extend_injective(p, table, &gens[..=k], chosen) {
            search(p, gens, orders, &next, chosen, out);
        }
        chosen.pop();
    }
}

/// The inner automorphism `x ↦ u x u⁻¹` of the whole group.
pub fn inner_automorphism(p: &PermGroup, u: u32) -> GroupMorphism {
    let whole = Subgroup::whole(p);
    let images = (0..p.order() as u32).map(|x| p.conj(u, x)).collect();
    GroupMorphism {
        source: whole.clone(),
        target: whole,
        images,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use alloc::collections::BTreeSet;

    fn g(name: &str) -> PermGroup {
        catalog::parse(name, &Limits::default()).unwrap()
    }

    #[test]
    fn automorphism_counts() {
        let l = Limits::default();
        assert_eq!(automorphisms(&g("C2"), &l).unwrap().len(), 1);
        assert_eq!(automorphisms(&g("C2 x C2"), &l).unwrap().len(), 6);
        assert_eq!(automorphisms(&g("C4"), &l).unwrap().len(), 2);
        assert_eq!(automorphisms(&g("D8"), &l).unwrap().len(), 8);
        assert_eq!(automorphisms(&g("Q8"), &l).unwrap().len(), 24);
        assert_eq!(automorphisms(&g("E8"), &l).unwrap().len(), 168);
    }

    #[test]
    fn automorphisms_form_a_group_containing_inner() {
        let l = Limits::default();
        for name in ["D8", "Q8", "C2 x C4", "S3"] {
            let p = g(name);
            let auts = automorphisms(&p, &l).unwrap();
            let set: BTreeSet<_> = auts.iter().cloned().collect();
            for a in &auts {
                assert!(a.is_homomorphism(&p, &p) && a.is_bijective());
                for b in &auts {
                    assert!(set.contains(&a.after(b).unwrap()));
                }
            }
            let inner: BTreeSet<_> = (0..p.order() as u32).map(|u| inner_automorphism(&p, u)).collect();
            assert!(inner.is_subset(&set));
            assert_eq!(inner.len(), p.order() / p.center().order());
        }
    }

    #[test]
    fn generator_images_reject_non_homomorphism() {
        let c4 = g("C4");
        let whole = Subgroup::whole(&c4);
        let gen = (0..4u32).find(|&x| c4.element_order(x) == 4).unwrap();
        let inv = c4.inv(gen);
        assert!(GroupMorphism::from_generator_images(&c4, &c4, &whole, &whole, &[gen], &[inv]).is_ok());
        let inv2 = (0..4u32).find(|&x| c4.element_order(x) == 2).unwrap();
        // x -> x^2 is a homomorphism but not injective
        let sq = GroupMorphism::from_generator_images(&c4, &c4, &whole, &whole, &[gen], &[inv2]).unwrap();
        assert!(sq.is_homomorphism(&c4, &c4));
        assert!(!sq.is_injective());
        let c2 = g("C2");
        let t = Subgroup::whole(&c2);
        // C2 -> C4 sending the involution to an element of order 4 is not a homomorphism
        assert!(GroupMorphism::from_generator_images(&c2, &c4, &t, &whole, &[1], &[gen]).is_err());
    }
}
