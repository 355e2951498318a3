//! Fusion systems on finite p-groups.
//!
//! A system stores, for every subgroup `Q ≤ P`, the full set of injective
//! morphisms `Q → P` as image tables (`table[i]` is the image of the `i`-th
//! element of `Q`). `Hom_F(Q, T)` is the subset landing in `T`. Systems come
//! from an ambient group (`F_P(G)` with `P` Sylow), from generating
//! morphisms, or from an explicit list (quotients).

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Cap, Error};
use crate::group::{Limits, PermGroup};
use crate::morphism::GroupMorphism;
use crate::product::{DirectProduct, Quotient};
use crate::subgroup::Subgroup;

/// Image tables of the morphisms out of one subgroup, each with an optional
/// conjugating witness in the ambient group.
pub type HomTable = BTreeMap<Vec<u32>, Option<u32>>;

#[derive(Clone, Debug)]
pub enum Realization {
    /// `F_P(G)`; `sylow` is `P` inside `group`, and element `i` of the
    /// system's `p` is `sylow.elements()[i]`.
    Ambient {
        group: Arc<PermGroup>,
        sylow: Subgroup,
    },
    Generated {
        generators: Vec<GroupMorphism>,
    },
    Explicit,
}

#[derive(Clone, Debug)]
pub struct FusionSystem {
    p: Arc<PermGroup>,
    prime: u32,
    realization: Realization,
    subgroups: Vec<Subgroup>,
    index: BTreeMap<Vec<u32>, usize>,
    /// `below[q]`: indices of the proper subgroups of subgroup `q`.
    below: Vec<Vec<usize>>,
    homs: Vec<HomTable>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionMorphism {
    pub map: GroupMorphism,
    /// Element of the ambient group inducing the map by conjugation.
    pub witness: Option<u32>,
}

/// Violation found by [`FusionSystem::saturation_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SaturationFailure {
    /// A fully normalized subgroup that is not fully centralized.
    NotFullyCentralized { subgroup: Subgroup },
    /// `Aut_P(Q)` is not a Sylow subgroup of `Aut_F(Q)` for a fully
    /// normalized `Q`.
    AutNotSylow {
        subgroup: Subgroup,
        aut_p: usize,
        aut_f: usize,
    },
    /// `φ: Q → P` with fully centralized image has no extension to `N_φ`.
    NoExtension {
        subgroup: Subgroup,
        map: Vec<u32>,
        n_phi: Subgroup,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flavor {
    /// Maps `S/R → P/R` induced by morphisms on `S ≥ R` stabilizing `R`.
    ModR,
    /// Images `QR/R → P/R` of all morphisms; needs `R` strongly closed.
    Bar,
    /// Closure of [`Flavor::Bar`] under composition, restriction, inverses.
    GeneratedBar,
}

#[derive(Clone, Debug)]
pub struct QuotientSystem {
    pub r: Subgroup,
    pub flavor: Flavor,
    pub quotient: Quotient,
    pub system: FusionSystem,
}

/// Outcome of comparing two systems along a group isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoVerdict {
    pub holds: bool,
    /// First subgroup of the source whose transported hom set differs.
    pub mismatch: Option<Subgroup>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonVerdict {
    pub equal: bool,
    pub mismatch: Option<Subgroup>,
}

impl FusionSystem {
    /// `F_P(G)` for a Sylow `p`-subgroup `P` of `group`.
    pub fn of_group(group: Arc<PermGroup>, prime: u32, limits: &Limits) -> Result<FusionSystem, Error> {
        let sylow = group.sylow(prime);
        FusionSystem::of_subgroup(group, sylow, prime, limits)
    }

    /// `F_S(G)` for a given `p`-subgroup `S` (normally Sylow).
    pub fn of_subgroup(
        group: Arc<PermGroup>,
        sylow: Subgroup,
        prime: u32,
        limits: &Limits,
    ) -> Result<FusionSystem, Error> {
        let p = Arc::new(group.subgroup_as_group(&sylow));
        let mut fs = FusionSystem::empty(p, prime, Realization::Explicit, limits)?;
        for (qi, q) in fs.subgroups.iter().enumerate() {
            let ambient: Vec<u32> = q.elements().iter().map(|&x| sylow.elements()[x as usize]).collect();
            for g in 0..group.order() as u32 {
                let table: Option<Vec<u32>> = ambient
                    .iter()
                    .map(|&x| sylow.position(group.conj(g, x)).map(|i| i as u32))
                    .collect();
                if let Some(t) = table {
                    fs.homs[qi].entry(t).or_insert(Some(g));
                }
            }
        }
        fs.realization = Realization::Ambient { group, sylow };
        Ok(fs)
    }

    /// The smallest system on `p` containing the inner maps and `generators`
    /// (injective morphisms between subgroups of `p`).
    pub fn generated(
        p: Arc<PermGroup>,
        prime: u32,
        generators: &[GroupMorphism],
        limits: &Limits,
    ) -> Result<FusionSystem, Error> {
        let mut fs = FusionSystem::empty(p, prime, Realization::Explicit, limits)?;
        let mut seeds = Vec::new();
        for g in generators {
            if !g.is_injective() {
                return Err(Error::NotInjective);
            }
            if !g.is_homomorphism(&fs.p, &fs.p) {
                return Err(Error::NotHomomorphism);
            }
            let qi = fs.subgroup_index(g.source()).ok_or(Error::NotASubgroup)?;
            seeds.push((qi, g.images().to_vec()));
        }
        fs.seed_inner();
        fs.close(seeds);
        fs.realization = Realization::Generated {
            generators: generators.to_vec(),
        };
        Ok(fs)
    }

    /// `F_P(P)`.
    pub fn inner(p: Arc<PermGroup>, prime: u32, limits: &Limits) -> Result<FusionSystem, Error> {
        FusionSystem::generated(p, prime, &[], limits)
    }

    /// A system from explicit tables, taken as given (no closure).
    pub fn explicit(
        p: Arc<PermGroup>,
        prime: u32,
        maps: Vec<(Subgroup, Vec<u32>)>,
        limits: &Limits,
    ) -> Result<FusionSystem, Error> {
        let mut fs = FusionSystem::empty(p, prime, Realization::Explicit, limits)?;
        for (q, t) in maps {
            let qi = fs.subgroup_index(&q).ok_or(Error::NotASubgroup)?;
            if t.len() != q.order() {
                return Err(Error::NotHomomorphism);
            }
            fs.homs[qi].entry(t).or_insert(None);
        }
        Ok(fs)
    }

    fn empty(p: Arc<PermGroup>, prime: u32, realization: Realization, limits: &Limits) -> Result<FusionSystem, Error> {
        if !p.is_p_group(prime) {
            return Err(Error::NotPGroup {
                order: p.order(),
                prime,
            });
        }
        let subgroups = p.all_subgroups(limits)?;
        let index = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.elements().to_vec(), i))
            .collect();
        let below = subgroups
            .iter()
            .map(|q| {
                subgroups
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| s.order() < q.order() && s.is_subgroup_of(q))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        let homs = alloc::vec![HomTable::new(); subgroups.len()];
        Ok(FusionSystem {
            p,
            prime,
            realization,
            subgroups,
            index,
            below,
            homs,
        })
    }

    fn seed_inner(&mut self) {
        for (qi, q) in self.subgroups.iter().enumerate() {
            for u in 0..self.p.order() as u32 {
                let t: Vec<u32> = q.elements().iter().map(|&x| self.p.conj(u, x)).collect();
                self.homs[qi].entry(t).or_insert(None);
            }
        }
    }

    fn image_index(&self, table: &[u32]) -> usize {
        let mut img = table.to_vec();
        img.sort_unstable();
        self.index[&img]
    }

    /// Closes the current tables plus `seeds` under inverses, restriction
    /// and composition.
    fn close(&mut self, seeds: Vec<(usize, Vec<u32>)>) {
        let mut queue: VecDeque<(usize, Vec<u32>)> = VecDeque::new();
        for (qi, h) in self.homs.iter().enumerate() {
            for t in h.keys() {
                queue.push_back((qi, t.clone()));
            }
        }
        for (qi, t) in seeds {
            if !self.homs[qi].contains_key(&t) {
                self.homs[qi].insert(t.clone(), None);
                queue.push_back((qi, t));
            }
        }
        let mut by_image: Vec<Vec<(usize, Vec<u32>)>> = alloc::vec![Vec::new(); self.subgroups.len()];
        while let Some((qi, t)) = queue.pop_front() {
            let ri = self.image_index(&t);
            let q = &self.subgroups[qi];
            let r = &self.subgroups[ri];
            let mut fresh: Vec<(usize, Vec<u32>)> = Vec::new();
            let mut inv = alloc::vec![0u32; t.len()];
            for (i, &y) in t.iter().enumerate() {
                inv[r.position(y).expect("image inside R")] = q.elements()[i];
            }
            fresh.push((ri, inv));
            for &si in &self.below[qi] {
                let restricted = self.subgroups[si]
                    .elements()
                    .iter()
                    .map(|&x| t[q.position(x).expect("S ≤ Q")])
                    .collect();
                fresh.push((si, restricted));
            }
            for psi in self.homs[ri].keys() {
                fresh.push((
                    qi,
                    t.iter().map(|&y| psi[r.position(y).expect("image inside R")]).collect(),
                ));
            }
            for (si, chi) in &by_image[qi] {
                fresh.push((
                    *si,
                    chi.iter().map(|&y| t[q.position(y).expect("image inside Q")]).collect(),
                ));
            }
            by_image[ri].push((qi, t));
            for (a, m) in fresh {
                if !self.homs[a].contains_key(&m) {
                    self.homs[a].insert(m.clone(), None);
                    queue.push_back((a, m));
                }
            }
        }
    }

    pub fn p(&self) -> &Arc<PermGroup> {
        &self.p
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn realization(&self) -> &Realization {
        &self.realization
    }

    /// All subgroups of `P` in canonical order.
    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup_index(&self, q: &Subgroup) -> Option<usize> {
        self.index.get(q.elements()).copied()
    }

    /// Every morphism out of the subgroup with index `qi`.
    pub fn homs_from(&self, qi: usize) -> &HomTable {
        &self.homs[qi]
    }

    pub fn morphism_count(&self) -> usize {
        self.homs.iter().map(|h| h.len()).sum()
    }

    fn index_of(&self, q: &Subgroup) -> usize {
        self.subgroup_index(q).expect("subgroup of P")
    }

    pub fn hom_set(&self, q: &Subgroup, t: &Subgroup) -> Vec<FusionMorphism> {
        self.homs[self.index_of(q)]
            .iter()
            .filter(|(table, _)| table.iter().all(|&y| t.contains(y)))
            .map(|(table, w)| FusionMorphism {
                map: GroupMorphism::from_table(q.clone(), t.clone(), table.clone()).expect("image inside T"),
                witness: *w,
            })
            .collect()
    }

    /// `Aut_F(Q)` as image tables.
    pub fn automizer(&self, q: &Subgroup) -> Vec<Vec<u32>> {
        self.homs[self.index_of(q)]
            .keys()
            .filter(|t| t.iter().all(|&y| q.contains(y)))
            .cloned()
            .collect()
    }

    /// Subgroups `F`-isomorphic to `Q`, as indices.
    pub fn isomorphism_class(&self, q: &Subgroup) -> BTreeSet<usize> {
        self.homs[self.index_of(q)]
            .keys()
            .map(|t| self.image_index(t))
            .collect()
    }

    pub fn fully_centralized(&self, q: &Subgroup) -> bool {
        let c = self.p.centralizer(q).order();
        self.isomorphism_class(q)
            .into_iter()
            .all(|r| self.p.centralizer(&self.subgroups[r]).order() <= c)
    }

    pub fn fully_normalized(&self, q: &Subgroup) -> bool {
        let n = self.p.normalizer(q).order();
        self.isomorphism_class(q)
            .into_iter()
            .all(|r| self.p.normalizer(&self.subgroups[r]).order() <= n)
    }

    /// No morphism sends a subgroup of `R` outside `R`.
    pub fn strongly_closed(&self, r: &Subgroup) -> bool {
        let ri = self.index_of(r);
        core::iter::once(ri)
            .chain(self.below[ri].iter().copied())
            .all(|si| self.homs[si].keys().all(|t| t.iter().all(|&y| r.contains(y))))
    }

    /// Every morphism defined on `R` maps `R` onto itself.
    pub fn weakly_closed(&self, r: &Subgroup) -> bool {
        self.homs[self.index_of(r)]
            .keys()
            .all(|t| t.iter().all(|&y| r.contains(y)))
    }

    /// Checks the Sylow and extension axioms:
    ///
    /// * every fully normalized `Q` is fully centralized and has
    ///   `Aut_P(Q)` Sylow in `Aut_F(Q)`;
    /// * every `φ: Q → P` with `φ(Q)` fully centralized extends to
    ///   `N_φ = {g ∈ N_P(Q) | φ c_g φ⁻¹ ∈ Aut_P(φ(Q))}`.
    pub fn saturation_check(&self, limits: &Limits) -> Result<Option<SaturationFailure>, Error> {
        if self.p.order() > limits.saturation_cap {
            return Err(Error::CapExceeded {
                cap: Cap::Saturation,
                limit: limits.saturation_cap,
            });
        }
        let p = &self.p;
        let centralizer_orders: Vec<usize> = self.subgroups.iter().map(|q| p.centralizer(q).order()).collect();
        let normalizer_orders: Vec<usize> = self.subgroups.iter().map(|q| p.normalizer(q).order()).collect();
        let classes: Vec<BTreeSet<usize>> = (0..self.subgroups.len())
            .map(|qi| self.homs[qi].keys().map(|t| self.image_index(t)).collect())
            .collect();
        let fully_c: Vec<bool> = (0..self.subgroups.len())
            .map(|qi| {
                classes[qi]
                    .iter()
                    .all(|&r| centralizer_orders[r] <= centralizer_orders[qi])
            })
            .collect();
        for (qi, q) in self.subgroups.iter().enumerate() {
            let fully_n = classes[qi]
                .iter()
                .all(|&r| normalizer_orders[r] <= normalizer_orders[qi]);
            if !fully_n {
                continue;
            }
            if !fully_c[qi] {
                return Ok(Some(SaturationFailure::NotFullyCentralized { subgroup: q.clone() }));
            }
            let aut_f = self.automizer(q).len();
            let aut_p = normalizer_orders[qi] / centralizer_orders[qi];
            if !aut_f.is_multiple_of(aut_p) || (aut_f / aut_p).is_multiple_of(self.prime as usize) {
                return Ok(Some(SaturationFailure::AutNotSylow {
                    subgroup: q.clone(),
                    aut_p,
                    aut_f,
                }));
            }
        }
        // Aut_P(R) as tables, for each subgroup R
        let mut aut_p_tables: Vec<Option<BTreeSet<Vec<u32>>>> = alloc::vec![None; self.subgroups.len()];
        for (qi, q) in self.subgroups.iter().enumerate() {
            let n_q = p.normalizer(q);
            for t in self.homs[qi].keys() {
                let ri = self.image_index(t);
                if !fully_c[ri] {
                    continue;
                }
                let r = &self.subgroups[ri];
                let aut_p = aut_p_tables[ri].get_or_insert_with(|| {
                    p.normalizer(r)
                        .elements()
                        .iter()
                        .map(|&u| r.elements().iter().map(|&x| p.conj(u, x)).collect())
                        .collect()
                });
                // φ c_g φ⁻¹ on R: φ(x) ↦ φ(g x g⁻¹)
                let n_phi: Vec<u32> = n_q
                    .elements()
                    .iter()
                    .copied()
                    .filter(|&g| {
                        let mut conj = alloc::vec![0u32; r.order()];
                        for (i, &x) in q.elements().iter().enumerate() {
                            let gx = p.conj(g, x);
                            conj[r.position(t[i]).expect("image inside R")] =
                                t[q.position(gx).expect("g normalizes Q")];
                        }
                        aut_p.contains(&conj)
                    })
                    .collect();
                let n_phi = Subgroup::from_elements(p, &n_phi).expect("N_phi is a subgroup");
                let ni = self.index_of(&n_phi);
                let extends = self.homs[ni].keys().any(|psi| {
                    q.elements()
                        .iter()
                        .enumerate()
                        .all(|(i, &x)| psi[n_phi.position(x).expect("Q ≤ N_phi")] == t[i])
                });
                if !extends {
                    return Ok(Some(SaturationFailure::NoExtension {
                        subgroup: q.clone(),
                        map: t.clone(),
                        n_phi,
                    }));
                }
            }
        }
        Ok(None)
    }

    pub fn is_saturated(&self, limits: &Limits) -> Result<bool, Error> {
        Ok(self.saturation_check(limits)?.is_none())
    }

    /// Same subgroups, same hom sets.
    pub fn compare(&self, other: &FusionSystem) -> ComparisonVerdict {
        for (qi, q) in self.subgroups.iter().enumerate() {
            let same = match other.subgroup_index(q) {
                Some(oi) => self.homs[qi].keys().eq(other.homs[oi].keys()),
                None => false,
            };
            if !same {
                return ComparisonVerdict {
                    equal: false,
                    mismatch: Some(q.clone()),
                };
            }
        }
        ComparisonVerdict {
            equal: self.subgroups.len() == other.subgroups.len(),
            mismatch: None,
        }
    }

    /// Every hom set of `self` is contained in the matching one of `other`.
    pub fn is_subsystem_of(&self, other: &FusionSystem) -> bool {
        self.subgroups
            .iter()
            .enumerate()
            .all(|(qi, q)| match other.subgroup_index(q) {
                Some(oi) => self.homs[qi].keys().all(|t| other.homs[oi].contains_key(t)),
                None => false,
            })
    }

    /// Functoriality: composable pairs compose inside the system.
    pub fn is_closed_under_composition(&self) -> bool {
        self.homs.iter().enumerate().all(|(qi, h)| {
            h.keys().all(|t| {
                let ri = self.image_index(t);
                let r = &self.subgroups[ri];
                self.homs[ri].keys().all(|psi| {
                    let comp: Vec<u32> = t.iter().map(|&y| psi[r.position(y).expect("image inside R")]).collect();
                    self.homs[qi].contains_key(&comp)
                })
            })
        })
    }

    pub fn quotient(&self, r: &Subgroup, flavor: Flavor, limits: &Limits) -> Result<QuotientSystem, Error> {
        if !self.p.is_normal(r) {
            return Err(Error::NotNormal);
        }
        if flavor != Flavor::ModR && !self.strongly_closed(r) {
            return Err(Error::NotStronglyClosed);
        }
        let quotient = Quotient::new(&self.p, r)?;
        let mut maps: Vec<(Subgroup, Vec<u32>)> = Vec::new();
        for (qi, q) in self.subgroups.iter().enumerate() {
            if flavor == Flavor::ModR && !r.is_subgroup_of(q) {
                continue;
            }
            let qbar = quotient.project_subgroup(q);
            for t in self.homs[qi].keys() {
                if flavor == Flavor::ModR {
                    // φ(R) = R
                    let stabilizes = r
                        .elements()
                        .iter()
                        .all(|&x| r.contains(t[q.position(x).expect("R ≤ Q")]));
                    if !stabilizes {
                        continue;
                    }
                }
                let mut table = alloc::vec![u32::MAX; qbar.order()];
                for (i, &x) in q.elements().iter().enumerate() {
                    table[qbar.position(quotient.project(x)).expect("inside QR/R")] = quotient.project(t[i]);
                }
                maps.push((qbar.clone(), table));
            }
        }
        let mut system = FusionSystem::explicit(quotient.group.clone(), self.prime, maps, limits)?;
        if flavor == Flavor::GeneratedBar {
            system.close(Vec::new());
        }
        Ok(QuotientSystem {
            r: r.clone(),
            flavor,
            quotient,
            system,
        })
    }

    /// For saturated `F` and strongly closed `R`: the three quotient flavors
    /// have identical hom sets and the quotient is saturated.
    pub fn quotient_coincidence_check(&self, r: &Subgroup, limits: &Limits) -> Result<CoincidenceVerdict, Error> {
        let m = self.quotient(r, Flavor::ModR, limits)?;
        let b = self.quotient(r, Flavor::Bar, limits)?;
        let g = self.quotient(r, Flavor::GeneratedBar, limits)?;
        Ok(CoincidenceVerdict {
            chain: m.system.is_subsystem_of(&b.system) && b.system.is_subsystem_of(&g.system),
            mod_equals_bar: m.system.compare(&b.system).equal,
            bar_equals_generated: b.system.compare(&g.system).equal,
            saturation: g.system.saturation_check(limits)?,
        })
    }

    /// The system generated by `Aut_F(T)` over fully centralized `T`.
    pub fn alperin_generate(&self, limits: &Limits) -> Result<FusionSystem, Error> {
        let mut gens = Vec::new();
        for q in &self.subgroups {
            if self.fully_centralized(q) {
                for t in self.automizer(q) {
                    gens.push(GroupMorphism::from_table(q.clone(), q.clone(), t).expect("automorphism of Q"));
                }
            }
        }
        FusionSystem::generated(self.p.clone(), self.prime, &gens, limits)
    }

    pub fn alperin_check(&self, limits: &Limits) -> Result<ComparisonVerdict, Error> {
        Ok(self.alperin_generate(limits)?.compare(self))
    }

    /// `F/R` against the system generated by `Aut_{F/R}(T/R)` for the fully
    /// `F`-centralized `T ≥ R`.
    pub fn quotient_alperin_check(&self, r: &Subgroup, limits: &Limits) -> Result<ComparisonVerdict, Error> {
        let qs = self.quotient(r, Flavor::ModR, limits)?;
        let mut gens = Vec::new();
        for t in self
            .subgroups
            .iter()
            .filter(|t| r.is_subgroup_of(t) && self.fully_centralized(t))
        {
            let tbar = qs.quotient.project_subgroup(t);
            for a in qs.system.automizer(&tbar) {
                gens.push(GroupMorphism::from_table(tbar.clone(), tbar.clone(), a).expect("automorphism"));
            }
        }
        let generated = FusionSystem::generated(qs.quotient.group.clone(), self.prime, &gens, limits)?;
        Ok(generated.compare(&qs.system))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoincidenceVerdict {
    /// `F/R ⊆ F̄_R ⊆ ⟨F̄_R⟩`
    pub chain: bool,
    pub mod_equals_bar: bool,
    pub bar_equals_generated: bool,
    pub saturation: Option<SaturationFailure>,
}

impl CoincidenceVerdict {
    pub fn holds(&self) -> bool {
        self.chain && self.mod_equals_bar && self.bar_equals_generated && self.saturation.is_none()
    }
}

/// Checks that `theta` (a table from `F₁.p` to `F₂.p`) transports every hom
/// set of `F₁` bijectively onto the corresponding hom set of `F₂`.
pub fn iso_check(f1: &FusionSystem, f2: &FusionSystem, theta: &[u32]) -> Result<IsoVerdict, Error> {
    let (p1, p2) = (&f1.p, &f2.p);
    if theta.len() != p1.order() || p1.order() != p2.order() || theta.iter().any(|&y| y as usize >= p2.order()) {
        return Err(Error::NotIsomorphism);
    }
    let iso = GroupMorphism::from_table(Subgroup::whole(p1), Subgroup::whole(p2), theta.to_vec())
        .map_err(|_| Error::NotIsomorphism)?;
    if !iso.is_bijective() || !iso.is_homomorphism(p1, p2) {
        return Err(Error::NotIsomorphism);
    }
    for (qi, q) in f1.subgroups.iter().enumerate() {
        let mut image: Vec<u32> = q.elements().iter().map(|&x| theta[x as usize]).collect();
        image.sort_unstable();
        let tq = &f2.subgroups[f2.index[&image]];
        // θ φ θ⁻¹ on θ(Q)
        let transported: BTreeSet<Vec<u32>> = f1.homs[qi]
            .keys()
            .map(|t| {
                let mut out = alloc::vec![0u32; t.len()];
                for (i, &x) in q.elements().iter().enumerate() {
                    out[tq.position(theta[x as usize]).expect("inside θ(Q)")] = theta[t[i] as usize];
                }
                out
            })
            .collect();
        let ti = f2.index_of(tq);
        if !transported.iter().eq(f2.homs[ti].keys()) {
            return Ok(IsoVerdict {
                holds: false,
                mismatch: Some(q.clone()),
            });
        }
    }
    Ok(IsoVerdict {
        holds: true,
        mismatch: None,
    })
}

/// Both computations of whether an automorphism is inner.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InnerVerdict {
    /// `Δ_φP` is `P × P`-conjugate to `ΔP`.
    pub biset: bool,
    /// Some `u ∈ P` has `φ = c_u`.
    pub direct: bool,
}

impl InnerVerdict {
    pub fn agree(&self) -> bool {
        self.biset == self.direct
    }
}

pub fn inner_criterion(p: &Arc<PermGroup>, dp: &DirectProduct, phi: &GroupMorphism) -> InnerVerdict {
    let mut twisted: Vec<u32> = phi
        .source()
        .elements()
        .iter()
        .zip(phi.images())
        .map(|(&a, &b)| dp.pair(a, b))
        .collect();
    twisted.sort_unstable();
    let twisted = Subgroup::from_elements(&dp.group, &twisted).expect("graph of an automorphism");
    let diag = dp.diagonal().expect("P × P");
    let biset = dp.group.conjugate_test(&twisted, &diag).is_some();
    let gens = p.generator_indices();
    let direct = (0..p.order() as u32).any(|u| gens.iter().all(|&x| phi.apply(x) == Some(p.conj(u, x))));
    InnerVerdict { biset, direct }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::morphism::automorphisms;

    fn l() -> Limits {
        Limits::default()
    }

    fn fs(name: &str, p: u32) -> FusionSystem {
        let g = Arc::new(catalog::parse(name, &l()).unwrap());
        FusionSystem::of_group(g, p, &l()).unwrap()
    }

    fn sub_of_order(f: &FusionSystem, n: usize, pred: impl Fn(&Subgroup) -> bool) -> Subgroup {
        f.subgroups()
            .iter()
            .find(|s| s.order() == n && pred(s))
            .unwrap()
            .clone()
    }

    #[test]
    fn small_automizers() {
        let f = fs("S3", 2);
        let p = Subgroup::whole(f.p());
        assert_eq!(f.hom_set(&p, &p).len(), 1);
        let f = fs("S3", 3);
        let p = Subgroup::whole(f.p());
        assert_eq!(f.automizer(&p).len(), 2);
        let f = fs("A4", 2);
        assert_eq!(f.automizer(&Subgroup::whole(f.p())).len(), 3);
    }

    #[test]
    fn inner_system_matches_conjugation() {
        let d8 = Arc::new(catalog::parse("D8", &l()).unwrap());
        let f = FusionSystem::inner(d8.clone(), 2, &l()).unwrap();
        let g = FusionSystem::of_group(d8, 2, &l()).unwrap();
        assert!(f.compare(&g).equal);
        assert!(f.is_closed_under_composition());
        assert!(f.is_saturated(&l()).unwrap());
    }

    /// The normal Klein four subgroup of S4, read inside P.
    fn klein_in_s4(f: &FusionSystem) -> Subgroup {
        let Realization::Ambient { group, sylow } = f.realization() else {
            panic!("ambient")
        };
        let elems: Vec<u32> = (0..sylow.order() as u32)
            .filter(|&i| {
                let g = group.element(sylow.elements()[i as usize]);
                g.is_identity() || (g.order() == 2 && g.cycles().iter().filter(|c| c.len() == 2).count() == 2)
            })
            .collect();
        Subgroup::from_elements(f.p(), &elems).unwrap()
    }

    #[test]
    fn s4_closedness() {
        let f = fs("S4", 2);
        let p = f.p().clone();
        let z = p.center();
        let v = klein_in_s4(&f);
        assert!(f.strongly_closed(&v));
        assert!(!f.strongly_closed(&z));
        assert!(f.strongly_closed(&Subgroup::whole(&p)));
        assert!(f.strongly_closed(&Subgroup::trivial(&p)));
        // the other Klein four group of D8 is not strongly closed
        let other = sub_of_order(&f, 4, |s| {
            s.elements().iter().all(|&x| p.element_order(x) <= 2) && *s != v
        });
        assert!(!f.strongly_closed(&other));
        for r in f.subgroups() {
            if f.strongly_closed(r) {
                assert!(f.weakly_closed(r));
            }
        }
        let c4 = sub_of_order(&f, 4, |s| s.elements().iter().any(|&x| p.element_order(x) == 4));
        assert!(f.weakly_closed(&c4));
        // double transpositions outside the centre fuse into it
        let t = sub_of_order(&f, 2, |s| !z.is_subgroup_of(s) && s.is_subgroup_of(&v));
        assert!(!f.fully_centralized(&t));
        assert!(f.fully_centralized(&z));
        // transpositions only fuse with each other
        let u = sub_of_order(&f, 2, |s| !s.is_subgroup_of(&v));
        assert!(f.fully_centralized(&u));
    }

    #[test]
    fn group_systems_are_saturated() {
        for (name, p) in [
            ("S3", 2),
            ("S3", 3),
            ("S4", 2),
            ("A4", 2),
            ("SL(2,3)", 2),
            ("A5", 2),
            ("GL(2,3)", 2),
        ] {
            let f = fs(name, p);
            assert_eq!(f.saturation_check(&l()).unwrap(), None, "{}", name);
            assert!(f.alperin_check(&l()).unwrap().equal, "{}", name);
        }
    }

    #[test]
    fn unsaturated_generated_system() {
        let d8 = Arc::new(catalog::parse("D8", &l()).unwrap());
        let z = d8.center();
        let s = (0..8u32).find(|&x| d8.element_order(x) == 2 && !z.contains(x)).unwrap();
        let src = Subgroup::generated(&d8, &[s]);
        let phi = GroupMorphism::from_table(src, z.clone(), alloc::vec![0, z.elements()[1]]).unwrap();
        let f = FusionSystem::generated(d8, 2, &[phi], &l()).unwrap();
        let failure = f.saturation_check(&l()).unwrap();
        assert!(failure.is_some());
    }

    #[test]
    fn quotients_of_s4() {
        let f = fs("S4", 2);
        let p = f.p().clone();
        let v = klein_in_s4(&f);
        for flavor in [Flavor::ModR, Flavor::Bar, Flavor::GeneratedBar] {
            let q = f.quotient(&v, flavor, &l()).unwrap();
            assert_eq!(q.quotient.group.order(), 2);
            assert_eq!(q.system.morphism_count(), 2);
        }
        let verdict = f.quotient_coincidence_check(&v, &l()).unwrap();
        assert!(verdict.holds());
        let z = p.center();
        assert_eq!(f.quotient(&z, Flavor::Bar, &l()).unwrap_err(), Error::NotStronglyClosed);
        assert!(f.quotient(&z, Flavor::ModR, &l()).is_ok());
        let t = sub_of_order(&f, 2, |s| !z.is_subgroup_of(s));
        assert_eq!(f.quotient(&t, Flavor::ModR, &l()).unwrap_err(), Error::NotNormal);
        let one = Subgroup::trivial(&p);
        let q = f.quotient(&one, Flavor::GeneratedBar, &l()).unwrap();
        assert_eq!(q.system.morphism_count(), f.morphism_count());
    }

    #[test]
    fn isomorphism_checks() {
        let f = fs("S3", 2);
        let c2 = fs("C2", 2);
        assert!(iso_check(&f, &c2, &[0, 1]).unwrap().holds);
        assert!(iso_check(&f, &f, &[0, 1]).unwrap().holds);
        let a4 = fs("A4", 2);
        let v = fs("C2 x C2", 2);
        assert_eq!(a4.p().order(), 4);
        // the two Klein four groups are built differently
        let map = group_isomorphism(a4.p(), v.p()).unwrap();
        assert!(!iso_check(&a4, &v, &map).unwrap().holds);
        assert_eq!(iso_check(&a4, &v, &[0, 0, 0, 0]).unwrap_err(), Error::NotIsomorphism);
    }

    /// Brute-force isomorphism between two small groups.
    fn group_isomorphism(a: &PermGroup, b: &PermGroup) -> Option<Vec<u32>> {
        let whole_a = Subgroup::whole(a);
        let whole_b = Subgroup::whole(b);
        let gens = whole_a.generators().to_vec();
        let mut choice = alloc::vec![0u32; gens.len()];
        loop {
            if let Ok(m) = GroupMorphism::from_generator_images(a, b, &whole_a, &whole_b, &gens, &choice) {
                if m.is_bijective() {
                    return Some(m.images().to_vec());
                }
            }
            let mut i = 0;
            loop {
                if i == choice.len() {
                    return None;
                }
                choice[i] += 1;
                if (choice[i] as usize) < b.order() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn inner_criterion_on_small_groups() {
        for name in ["C2 x C2", "D8", "Q8"] {
            let p = Arc::new(catalog::parse(name, &l()).unwrap());
            let dp = DirectProduct::from_arcs(p.clone(), p.clone());
            let auts = automorphisms(&p, &l()).unwrap();
            let inner = auts.iter().filter(|a| inner_criterion(&p, &dp, a).direct).count();
            for a in &auts {
                assert!(inner_criterion(&p, &dp, a).agree());
            }
            assert_eq!(inner, p.order() / p.center().order());
        }
    }
}
