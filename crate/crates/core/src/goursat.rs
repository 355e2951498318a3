//! Goursat data of subgroups of direct products.
//!
//! A subgroup `X ≤ G₁ × G₂` is determined by its projections `π₁(X)`,
//! `π₂(X)`, the kernels `X₁ = X ∩ G₁`, `X₂ = X ∩ G₂`, and an isomorphism
//! `θ: π₁(X)/X₁ → π₂(X)/X₂` with `X = {(a, b) | bX₂ = θ(aX₁)}`.

use alloc::vec::Vec;

use crate::error::Error;
use crate::morphism::GroupMorphism;
use crate::product::{DirectProduct, Quotient};
use crate::subgroup::Subgroup;

#[derive(Clone, Debug)]
pub struct GoursatData {
    pub p1x: Subgroup,
    pub p2x: Subgroup,
    pub x1: Subgroup,
    pub x2: Subgroup,
    /// `π₁(X)/X₁`
    pub q1: Quotient,
    /// `π₂(X)/X₂`
    pub q2: Quotient,
    /// `theta[i]` is the image of element `i` of `q1.group` in `q2.group`.
    pub theta: Vec<u32>,
}

impl PartialEq for GoursatData {
    /// Quotients are built deterministically from their subgroups, so equal
    /// subgroups make the theta tables directly comparable.
    fn eq(&self, other: &GoursatData) -> bool {
        self.p1x == other.p1x
            && self.p2x == other.p2x
            && self.x1 == other.x1
            && self.x2 == other.x2
            && self.theta == other.theta
    }
}

impl Eq for GoursatData {}

impl GoursatData {
    /// Assembles data from subgroups and coset pairs `(a, b)` meaning
    /// `θ(aX₁) = bX₂`, validating normality and that θ is an isomorphism.
    pub fn from_pairs(
        dp: &DirectProduct,
        p1x: Subgroup,
        p2x: Subgroup,
        x1: Subgroup,
        x2: Subgroup,
        pairs: &[(u32, u32)],
    ) -> Result<GoursatData, Error> {
        let invalid = |msg: &str| Error::InvalidData(msg.into());
        if !x1.is_subgroup_of(&p1x) || !x2.is_subgroup_of(&p2x) {
            return Err(invalid("kernels must lie in the projections"));
        }
        let q1 = Quotient::of_subgroup(&dp.left, &p1x, &x1).map_err(|_| invalid("X1 is not normal in p1X"))?;
        let q2 = Quotient::of_subgroup(&dp.right, &p2x, &x2).map_err(|_| invalid("X2 is not normal in p2X"))?;
        let mut theta = alloc::vec![u32::MAX; q1.group.order()];
        for &(a, b) in pairs {
            if !p1x.contains(a) || !p2x.contains(b) {
                return Err(invalid("theta pair outside the projections"));
            }
            let (qa, qb) = (q1.project(a), q2.project(b));
            match theta[qa as usize] {
                u32::MAX => theta[qa as usize] = qb,
                prev if prev != qb => return Err(invalid("theta is not a function")),
                _ => {}
            }
        }
        if theta.contains(&u32::MAX) {
            return Err(invalid("theta is not defined on every coset"));
        }
        let d = GoursatData {
            p1x,
            p2x,
            x1,
            x2,
            q1,
            q2,
            theta,
        };
        if !d.theta_is_isomorphism() {
            return Err(invalid("theta is not an isomorphism"));
        }
        Ok(d)
    }

    pub fn theta_is_isomorphism(&self) -> bool {
        let (a, b) = (&self.q1.group, &self.q2.group);
        if a.order() != b.order() {
            return false;
        }
        let mut seen = alloc::vec![false; b.order()];
        for &y in &self.theta {
            if seen[y as usize] {
                return false;
            }
            seen[y as usize] = true;
        }
        let n = a.order() as u32;
        (0..n).all(|x| {
            (0..n).all(|y| self.theta[a.mul(x, y) as usize] == b.mul(self.theta[x as usize], self.theta[y as usize]))
        })
    }

    /// θ as a morphism between the quotient groups.
    pub fn theta_morphism(&self) -> GroupMorphism {
        GroupMorphism::from_table(
            Subgroup::whole(&self.q1.group),
            Subgroup::whole(&self.q2.group),
            self.theta.clone(),
        )
        .expect("theta lands in the second quotient")
    }

    /// Coset-representative pairs `(a, θ(a))` using least representatives.
    pub fn theta_pairs(&self) -> Vec<(u32, u32)> {
        (0..self.theta.len() as u32)
            .map(|q| (self.q1.lift(q), self.q2.lift(self.theta[q as usize])))
            .collect()
    }

    /// θ⁻¹ as a table from `q2.group` to `q1.group`.
    pub fn theta_inverse(&self) -> Vec<u32> {
        let mut inv = alloc::vec![0u32; self.theta.len()];
        for (i, &y) in self.theta.iter().enumerate() {
            inv[y as usize] = i as u32;
        }
        inv
    }
}

pub fn decompose(dp: &DirectProduct, x: &Subgroup) -> GoursatData {
    let p1x = dp.project_left(x);
    let p2x = dp.project_right(x);
    let x1 = dp.left_kernel(x);
    let x2 = dp.right_kernel(x);
    let q1 = Quotient::of_subgroup(&dp.left, &p1x, &x1).expect("kernel of a projection is normal");
    let q2 = Quotient::of_subgroup(&dp.right, &p2x, &x2).expect("kernel of a projection is normal");
    let mut theta = alloc::vec![u32::MAX; q1.group.order()];
    for &e in x.elements() {
        let (a, b) = dp.split(e);
        theta[q1.project(a) as usize] = q2.project(b);
    }
    GoursatData {
        p1x,
        p2x,
        x1,
        x2,
        q1,
        q2,
        theta,
    }
}

pub fn reconstruct(dp: &DirectProduct, d: &GoursatData) -> Result<Subgroup, Error> {
    if !dp.left.is_normal_in(&d.p1x, &d.x1) || !dp.right.is_normal_in(&d.p2x, &d.x2) {
        return Err(Error::InvalidData("kernels are not normal in the projections".into()));
    }
    if !d.theta_is_isomorphism() {
        return Err(Error::InvalidData("theta is not an isomorphism".into()));
    }
    let mut elems = Vec::with_capacity(d.p1x.order() * d.x2.order());
    for &a in d.p1x.elements() {
        let target = d.theta[d.q1.project(a) as usize];
        for &b in d.p2x.elements() {
            if d.q2.project(b) == target {
                elems.push(dp.pair(a, b));
            }
        }
    }
    elems.sort_unstable();
    Subgroup::from_elements(&dp.group, &elems).map_err(|_| Error::InvalidData("data does not define a subgroup".into()))
}

/// `X^♯ = {(h, g) | (g, h) ∈ X}` inside `swapped = G₂ × G₁`.
pub fn flip(dp: &DirectProduct, swapped: &DirectProduct, x: &Subgroup) -> Subgroup {
    dp.flip_into(swapped, x)
}

/// The graph `{(a, φ(a))}` of an injective morphism from a subgroup of the
/// left factor into the right factor.
pub fn diagonal(phi: &GroupMorphism, dp: &DirectProduct) -> Result<Subgroup, Error> {
    if !phi.is_injective() {
        return Err(Error::NotInjective);
    }
    let elems: Vec<u32> = phi
        .source()
        .elements()
        .iter()
        .zip(phi.images())
        .map(|(&a, &b)| dp.pair(a, b))
        .collect();
    let mut sorted = elems;
    sorted.sort_unstable();
    Subgroup::from_elements(&dp.group, &sorted).map_err(|_| Error::NotHomomorphism)
}

/// Structure of a subgroup `R ≤ P₁ × P₂` with surjective projections.
#[derive(Clone, Debug)]
pub struct RStructure {
    pub left_surjective: bool,
    pub right_surjective: bool,
    /// `|R₁| = |R₂|`, present when both projections are surjective.
    pub kernel_orders_equal: Option<bool>,
    /// `R = {(x₁, x₂) | x₂R₂ = θ(x₁R₁)}` checked elementwise over `P₁ × P₂`.
    pub theta_describes_r: Option<bool>,
    /// `R/(R₁ × R₂) → Δ_θ(P₁/R₁)`, `(a, b) ↦ (aR₁, bR₂)` is a well-defined
    /// isomorphism.
    pub quotient_is_twisted_diagonal: Option<bool>,
    pub data: Option<GoursatData>,
}

impl RStructure {
    pub fn holds(&self) -> bool {
        self.left_surjective
            && self.right_surjective
            && self.kernel_orders_equal == Some(true)
            && self.theta_describes_r == Some(true)
            && self.quotient_is_twisted_diagonal == Some(true)
    }
}

pub fn check_r_structure(dp: &DirectProduct, r: &Subgroup) -> RStructure {
    let d = decompose(dp, r);
    let left_surjective = d.p1x.order() == dp.left.order();
    let right_surjective = d.p2x.order() == dp.right.order();
    if !(left_surjective && right_surjective) {
        return RStructure {
            left_surjective,
            right_surjective,
            kernel_orders_equal: None,
            theta_describes_r: None,
            quotient_is_twisted_diagonal: None,
            data: None,
        };
    }
    let kernel_orders_equal = d.x1.order() == d.x2.order();
    let theta_describes_r = (0..dp.group.order() as u32).all(|e| {
        let (a, b) = dp.split(e);
        r.contains(e) == (d.q2.project(b) == d.theta[d.q1.project(a) as usize])
    }) && d.theta_is_isomorphism();
    let quotient_is_twisted_diagonal = twisted_diagonal_check(dp, r, &d);
    RStructure {
        left_surjective,
        right_surjective,
        kernel_orders_equal: Some(kernel_orders_equal),
        theta_describes_r: Some(theta_describes_r),
        quotient_is_twisted_diagonal: Some(quotient_is_twisted_diagonal),
        data: Some(d),
    }
}

fn twisted_diagonal_check(dp: &DirectProduct, r: &Subgroup, d: &GoursatData) -> bool {
    let k = dp.product_of(&d.x1, &d.x2);
    let quot = match Quotient::of_subgroup(&dp.group, r, &k) {
        Ok(q) => q,
        Err(_) => return false,
    };
    let qq = DirectProduct::from_arcs(d.q1.group.clone(), d.q2.group.clone());
    let graph: Vec<u32> = {
        let mut v: Vec<u32> = (0..d.theta.len() as u32)
            .map(|q| qq.pair(q, d.theta[q as usize]))
            .collect();
        v.sort_unstable();
        v
    };
    let mut map = alloc::vec![u32::MAX; quot.group.order()];
    for &e in r.elements() {
        let (a, b) = dp.split(e);
        let img = qq.pair(d.q1.project(a), d.q2.project(b));
        let slot = &mut map[quot.project(e) as usize];
        if *slot != u32::MAX && *slot != img {
            return false;
        }
        *slot = img;
    }
    let f = match GroupMorphism::from_table(Subgroup::whole(&quot.group), Subgroup::whole(&qq.group), map) {
        Ok(f) => f,
        Err(_) => return false,
    };
    f.is_homomorphism(&quot.group, &qq.group) && f.is_injective() && f.image_elements() == graph
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::group::{Limits, PermGroup};

    fn g(name: &str) -> PermGroup {
        catalog::parse(name, &Limits::default()).unwrap()
    }

    #[test]
    fn diagonal_and_full_product() {
        let d8 = g("D8");
        let dp = DirectProduct::new(&d8, &d8);
        let diag = dp.diagonal().unwrap();
        let d = decompose(&dp, &diag);
        assert!(d.x1.is_trivial() && d.x2.is_trivial());
        assert_eq!(d.p1x.order(), 8);
        assert_eq!(d.theta, (0..8).collect::<Vec<u32>>());
        assert_eq!(reconstruct(&dp, &d).unwrap(), diag);

        let full = Subgroup::whole(&dp.group);
        let d = decompose(&dp, &full);
        assert_eq!(d.x1.order(), 8);
        assert_eq!(d.theta, alloc::vec![0]);
        assert_eq!(reconstruct(&dp, &d).unwrap(), full);
    }

    #[test]
    fn cyclic_subgroup_of_c2_times_c4() {
        let (c2, c4) = (g("C2"), g("C4"));
        let dp = DirectProduct::new(&c2, &c4);
        let b = (0..4u32).find(|&x| c4.element_order(x) == 4).unwrap();
        let x = Subgroup::generated(&dp.group, &[dp.pair(1, b)]);
        assert_eq!(x.order(), 4);
        let d = decompose(&dp, &x);
        assert!(d.x1.is_trivial());
        assert_eq!(d.x2.elements(), &[0, c4.mul(b, b)][..]);
        assert_eq!(d.q1.group.order(), 2);
        assert_eq!(x.order(), d.p1x.order() * d.x2.order());
    }

    #[test]
    fn round_trip_on_c2xc2_squared() {
        let v = g("C2 x C2");
        let dp = DirectProduct::new(&v, &v);
        let swapped = DirectProduct::new(&v, &v);
        for x in dp.group.all_subgroups(&Limits::default()).unwrap() {
            let d = decompose(&dp, &x);
            assert!(d.theta_is_isomorphism());
            assert_eq!(reconstruct(&dp, &d).unwrap(), x);
            assert_eq!(x.order(), d.p2x.order() * d.x1.order());
            let fd = decompose(&swapped, &flip(&dp, &swapped, &x));
            assert_eq!(fd.p1x, d.p2x);
            assert_eq!(fd.x2, d.x1);
            assert_eq!(fd.theta, d.theta_inverse());
            let again = GoursatData::from_pairs(
                &dp,
                d.p1x.clone(),
                d.p2x.clone(),
                d.x1.clone(),
                d.x2.clone(),
                &d.theta_pairs(),
            )
            .unwrap();
            assert_eq!(again, d);
        }
    }

    #[test]
    fn invalid_theta_is_rejected() {
        let c4 = g("C4");
        let dp = DirectProduct::new(&c4, &c4);
        let whole = Subgroup::whole(&c4);
        let one = Subgroup::trivial(&c4);
        // every element to the identity: not injective
        let pairs: Vec<(u32, u32)> = (0..4).map(|a| (a, 0)).collect();
        let err =
            GoursatData::from_pairs(&dp, whole.clone(), whole.clone(), one.clone(), one.clone(), &pairs).unwrap_err();
        assert!(matches!(err, Error::InvalidData(_)));
        // a bijection that is not a homomorphism
        let gen = (0..4u32).find(|&x| c4.element_order(x) == 4).unwrap();
        let sq = c4.mul(gen, gen);
        let cube = c4.mul(sq, gen);
        let pairs = [(0, sq), (sq, 0), (gen, gen), (cube, cube)];
        assert!(GoursatData::from_pairs(&dp, whole.clone(), whole, one.clone(), one, &pairs).is_err());
    }

    #[test]
    fn graph_of_automorphism_flips_to_inverse_graph() {
        let c4 = g("C4");
        let dp = DirectProduct::new(&c4, &c4);
        let whole = Subgroup::whole(&c4);
        let gen = (0..4u32).find(|&x| c4.element_order(x) == 4).unwrap();
        let phi = GroupMorphism::from_generator_images(&c4, &c4, &whole, &whole, &[gen], &[c4.inv(gen)]).unwrap();
        let graph = diagonal(&phi, &dp).unwrap();
        assert_eq!(graph.order(), 4);
        let inv_graph = diagonal(&phi.inverse().unwrap(), &dp).unwrap();
        assert_eq!(flip(&dp, &dp, &graph), inv_graph);
        let d = decompose(&dp, &graph);
        assert!(d.x1.is_trivial() && d.x2.is_trivial());
        let square =
            GroupMorphism::from_generator_images(&c4, &c4, &whole, &whole, &[gen], &[c4.mul(gen, gen)]).unwrap();
        assert_eq!(diagonal(&square, &dp).unwrap_err(), Error::NotInjective);
    }

    #[test]
    fn r_structure_over_c4_squared() {
        let c4 = g("C4");
        let dp = DirectProduct::new(&c4, &c4);
        let mut surjective = 0;
        for r in dp.group.all_subgroups(&Limits::default()).unwrap() {
            let rep = check_r_structure(&dp, &r);
            if rep.left_surjective && rep.right_surjective {
                surjective += 1;
                assert!(rep.holds(), "{:?}", r);
            } else {
                assert!(rep.kernel_orders_equal.is_none());
            }
        }
        // two automorphism graphs, one pullback over C4/C2, the full product
        assert_eq!(surjective, 4);
    }
}
