use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;

/// A permutation of `{0, .., degree-1}` stored as its image list.
///
/// Products follow function composition: `a.compose(&b)` applies `b` first.
/// The derived `Ord` is lexicographic on images, which is the canonical
/// element order used everywhere in the crate (the identity sorts first).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Perm, Error> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation);
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[0, 1, 2], &[3, 4]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Perm, Error> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = alloc::vec![false; degree];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                let b = cycle[(i + 1) % cycle.len()];
                if a as usize >= degree || b as usize >= degree || touched[a as usize] {
                    return Err(Error::InvalidPermutation);
                }
                touched[a as usize] = true;
                images[a as usize] = b;
            }
        }
        Perm::from_images(images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self ∘ other`: the permutation `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = alloc::vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Perm { images }
    }

    /// `self ∘ x ∘ self⁻¹`.
    pub fn conjugate(&self, x: &Perm) -> Perm {
        let mut images = alloc::vec![0u32; self.images.len()];
        for (i, &xi) in x.images.iter().enumerate() {
            images[self.images[i] as usize] = self.images[xi as usize];
        }
        Perm { images }
    }

    /// Places `self` on points `0..d` and `other` on `d..d+e`.
    pub fn direct_sum(&self, other: &Perm) -> Perm {
        let shift = self.degree() as u32;
        let mut images = self.images.clone();
        images.extend(other.images.iter().map(|&x| x + shift));
        Perm { images }
    }

    pub fn order(&self) -> usize {
        let mut seen = alloc::vec![false; self.degree()];
        let mut order = 1usize;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0usize;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
                len += 1;
            }
            order = lcm(order, len);
        }
        order
    }

    /// Disjoint cycle decomposition, fixed points omitted.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = alloc::vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u32);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", x)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_applies_right_first() {
        let a = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[&[1, 2]]).unwrap();
        // b sends 1 -> 2, a fixes 2
        assert_eq!(a.compose(&b).apply(1), 2);
        assert_eq!(b.compose(&a).apply(1), 0);
    }

    #[test]
    fn conjugate_matches_explicit_product() {
        let g = Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        let x = Perm::from_cycles(4, &[&[0, 2]]).unwrap();
        assert_eq!(g.conjugate(&x), g.compose(&x).compose(&g.inverse()));
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Perm::from_images(alloc::vec![0, 0]).is_err());
        assert!(Perm::from_images(alloc::vec![0, 2]).is_err());
        assert!(Perm::from_cycles(3, &[&[0, 1], &[1, 2]]).is_err());
    }

    #[test]
    fn order_is_lcm_of_cycles() {
        let p = Perm::from_cycles(5, &[&[0, 1], &[2, 3, 4]]).unwrap();
        assert_eq!(p.order(), 6);
        assert_eq!(Perm::identity(4).order(), 1);
    }
}
