use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::Error;
use crate::group::PermGroup;
use crate::morphism::GroupMorphism;
use crate::perm::Perm;
use crate::subgroup::Subgroup;

/// `G₁ × G₂` realized on the disjoint union of the two point sets.
///
/// Because elements are ordered lexicographically by images, the product
/// element `(a, b)` sits at index `a · |G₂| + b`.
#[derive(Clone, Debug)]
pub struct DirectProduct {
    pub group: Arc<PermGroup>,
    pub left: Arc<PermGroup>,
    pub right: Arc<PermGroup>,
}

impl DirectProduct {
    pub fn new(left: &PermGroup, right: &PermGroup) -> DirectProduct {
        DirectProduct::from_arcs(Arc::new(left.clone()), Arc::new(right.clone()))
    }

    pub fn from_arcs(left: Arc<PermGroup>, right: Arc<PermGroup>) -> DirectProduct {
        let mut generators: Vec<Perm> = Vec::new();
        let id_r = Perm::identity(right.degree());
        let id_l = Perm::identity(left.degree());
        generators.extend(left.generators().iter().map(|g| g.direct_sum(&id_r)));
        generators.extend(right.generators().iter().map(|g| id_l.direct_sum(g)));
        let mut elements = Vec::with_capacity(left.order() * right.order());
        for a in left.elements() {
            for b in right.elements() {
                elements.push(a.direct_sum(b));
            }
        }
        let degree = left.degree() + right.degree();
        DirectProduct {
            group: Arc::new(PermGroup::from_sorted_elements(degree, generators, elements)),
            left,
            right,
        }
    }

    #[inline]
    pub fn pair(&self, a: u32, b: u32) -> u32 {
        a * self.right.order() as u32 + b
    }

    #[inline]
    pub fn split(&self, x: u32) -> (u32, u32) {
        let n = self.right.order() as u32;
        (x / n, x % n)
    }

    /// `π₁(S)` as a subgroup of the left factor.
    pub fn project_left(&self, s: &Subgroup) -> Subgroup {
        let gens: Vec<u32> = s.generators().iter().map(|&x| self.split(x).0).collect();
        Subgroup::generated(&self.left, &gens)
    }

    pub fn project_right(&self, s: &Subgroup) -> Subgroup {
        let gens: Vec<u32> = s.generators().iter().map(|&x| self.split(x).1).collect();
        Subgroup::generated(&self.right, &gens)
    }

    /// `S ∩ (G₁ × 1)` read as a subgroup of `G₁`.
    pub fn left_kernel(&self, s: &Subgroup) -> Subgroup {
        let elems: Vec<u32> = s
            .elements()
            .iter()
            .map(|&x| self.split(x))
            .filter(|&(_, b)| b == 0)
            .map(|(a, _)| a)
            .collect();
        Subgroup::from_elements(&self.left, &elems).expect("intersection of subgroups")
    }

    pub fn right_kernel(&self, s: &Subgroup) -> Subgroup {
        let elems: Vec<u32> = s
            .elements()
            .iter()
            .map(|&x| self.split(x))
            .filter(|&(a, _)| a == 0)
            .map(|(_, b)| b)
            .collect();
        Subgroup::from_elements(&self.right, &elems).expect("intersection of subgroups")
    }

    /// `A × B` for subgroups of the factors.
    pub fn product_of(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut gens: Vec<u32> = a.generators().iter().map(|&x| self.pair(x, 0)).collect();
        gens.extend(b.generators().iter().map(|&y| self.pair(0, y)));
        Subgroup::generated(&self.group, &gens)
    }

    /// The diagonal `{(x, x)}` of `G × G`.
    pub fn diagonal(&self) -> Option<Subgroup> {
        if self.left != self.right {
            return None;
        }
        let gens: Vec<u32> = self.left.generator_indices().iter().map(|&x| self.pair(x, x)).collect();
        Some(Subgroup::generated(&self.group, &gens))
    }

    /// Swaps coordinates: `{(h, g) | (g, h) ∈ S}` inside `swapped`, which
    /// must be `DirectProduct::new(right, left)`.
    pub fn flip_into(&self, swapped: &DirectProduct, s: &Subgroup) -> Subgroup {
        let gens: Vec<u32> = s
            .generators()
            .iter()
            .map(|&x| {
                let (a, b) = self.split(x);
                swapped.pair(b, a)
            })
            .collect();
        Subgroup::generated(&swapped.group, &gens)
    }

    pub fn projection_left(&self) -> GroupMorphism {
        let images = (0..self.group.order() as u32).map(|x| self.split(x).0).collect();
        GroupMorphism::from_table(Subgroup::whole(&self.group), Subgroup::whole(&self.left), images)
            .expect("projection lands in the factor")
    }

    pub fn projection_right(&self) -> GroupMorphism {
        let images = (0..self.group.order() as u32).map(|x| self.split(x).1).collect();
        GroupMorphism::from_table(Subgroup::whole(&self.group), Subgroup::whole(&self.right), images)
            .expect("projection lands in the factor")
    }

    pub fn injection_left(&self) -> GroupMorphism {
        let images = (0..self.left.order() as u32).map(|a| self.pair(a, 0)).collect();
        GroupMorphism::from_table(Subgroup::whole(&self.left), Subgroup::whole(&self.group), images)
            .expect("injection lands in the product")
    }

    pub fn injection_right(&self) -> GroupMorphism {
        let images = (0..self.right.order() as u32).map(|b| self.pair(0, b)).collect();
        GroupMorphism::from_table(Subgroup::whole(&self.right), Subgroup::whole(&self.group), images)
            .expect("injection lands in the product")
    }
}

/// `S / N` realized as the action of `S` on the left cosets of `N`.
#[derive(Clone, Debug)]
pub struct Quotient {
    /// The quotient as a permutation group on coset points.
    pub group: Arc<PermGroup>,
    /// The subgroup being divided (elements of the ambient group).
    pub domain: Subgroup,
    pub kernel: Subgroup,
    /// `projection[i]` is the image of `domain.elements()[i]`.
    projection: Vec<u32>,
    /// A preimage of each quotient element (least in canonical order).
    section: Vec<u32>,
}

impl Quotient {
    pub fn new(group: &PermGroup, normal: &Subgroup) -> Result<Quotient, Error> {
        Quotient::of_subgroup(group, &Subgroup::whole(group), normal)
    }

    /// `S / N` for `N ⊴ S ≤ G`.
    pub fn of_subgroup(group: &PermGroup, domain: &Subgroup, normal: &Subgroup) -> Result<Quotient, Error> {
        if !group.is_normal_in(domain, normal) {
            return Err(Error::NotNormal);
        }
        // cosets numbered by least element
        let elems = domain.elements();
        let mut label = alloc::vec![u32::MAX; elems.len()];
        let mut reps = Vec::new();
        for (i, &g) in elems.iter().enumerate() {
            if label[i] != u32::MAX {
                continue;
            }
            let l = reps.len() as u32;
            reps.push(g);
            for &n in normal.elements() {
                label[domain.position(group.mul(g, n)).expect("coset inside domain")] = l;
            }
        }
        let k = reps.len();
        let action = |g: u32| -> Perm {
            let images = reps
                .iter()
                .map(|&r| label[domain.position(group.mul(g, r)).expect("closed")])
                .collect();
            Perm::from_images(images).expect("coset action is a permutation")
        };
        let perms: Vec<Perm> = elems.iter().map(|&g| action(g)).collect();
        let mut sorted = perms.clone();
        sorted.sort();
        sorted.dedup();
        let generators: Vec<Perm> = domain.generators().iter().map(|&g| action(g)).collect();
        let qgroup = PermGroup::from_sorted_elements(k, generators, sorted);
        let projection: Vec<u32> = perms.iter().map(|p| qgroup.index_of(p).expect("image")).collect();
        let mut section = alloc::vec![u32::MAX; qgroup.order()];
        for (i, &q) in projection.iter().enumerate() {
            if section[q as usize] == u32::MAX {
                section[q as usize] = elems[i];
            }
        }
        Ok(Quotient {
            group: Arc::new(qgroup),
            domain: domain.clone(),
            kernel: normal.clone(),
            projection,
            section,
        })
    }

    /// Image of an ambient element lying in the domain.
    pub fn project(&self, x: u32) -> u32 {
        self.projection[self.domain.position(x).expect("element outside the quotient domain")]
    }

    pub fn lift(&self, q: u32) -> u32 {
        self.section[q as usize]
    }

    /// Image `SN/N` of a subgroup `S` of the domain.
    pub fn project_subgroup(&self, s: &Subgroup) -> Subgroup {
        let gens: Vec<u32> = s.generators().iter().map(|&x| self.project(x)).collect();
        Subgroup::generated(&self.group, &gens)
    }

    /// Full preimage of a quotient subgroup.
    pub fn preimage(&self, ambient: &PermGroup, q: &Subgroup) -> Subgroup {
        let mut gens: Vec<u32> = q.generators().iter().map(|&x| self.lift(x)).collect();
        gens.extend_from_slice(self.kernel.generators());
        Subgroup::generated(ambient, &gens)
    }

    pub fn projection(&self) -> GroupMorphism {
        GroupMorphism::from_table(
            self.domain.clone(),
            Subgroup::whole(&self.group),
            self.projection.clone(),
        )
        .expect("projection lands in the quotient")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::group::Limits;

    fn g(name: &str) -> PermGroup {
        catalog::parse(name, &Limits::default()).unwrap()
    }

    #[test]
    fn product_indexing_matches_layout() {
        let dp = DirectProduct::new(&g("S3"), &g("C4"));
        assert_eq!(dp.group.order(), 24);
        for a in 0..6u32 {
            for b in 0..4u32 {
                let expect = dp.left.element(a).direct_sum(dp.right.element(b));
                assert_eq!(dp.group.element(dp.pair(a, b)), &expect);
                assert_eq!(dp.split(dp.pair(a, b)), (a, b));
            }
        }
        assert!(dp.projection_left().is_homomorphism(&dp.group, &dp.left));
        assert!(dp.projection_right().is_homomorphism(&dp.group, &dp.right));
        assert!(dp.injection_left().is_homomorphism(&dp.left, &dp.group));
    }

    #[test]
    fn quotient_order_and_projection() {
        let d8 = g("D8");
        let z = d8.center();
        let q = Quotient::new(&d8, &z).unwrap();
        assert_eq!(q.group.order(), 4);
        assert!(q.projection().is_homomorphism(&d8, &q.group));
        let s4 = g("S4");
        let subs = s4.all_subgroups(&Limits::default()).unwrap();
        let v = subs.iter().find(|s| s.order() == 4 && s4.is_normal(s)).unwrap();
        let q = Quotient::new(&s4, v).unwrap();
        assert_eq!(q.group.order(), 6);
        assert!(!q.group.is_abelian());
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let s3 = g("S3");
        let t = Subgroup::generated(&s3, &[1]);
        assert_eq!(Quotient::new(&s3, &t).unwrap_err(), Error::NotNormal);
    }
}
