//! Named small groups.
//!
//! Accepted names: `C<n>`, `D<2n>` (dihedral of order `2n`), `Q<4m>`
//! (dicyclic; `Q8` is the quaternion group), `S<n>`, `A<n>`, `E<p^k>`
//! (elementary abelian, written as the order, e.g. `E8`), `SL(2,3)`,
//! `GL(2,3)`, `PSL(2,7)`, and products `X x Y` (left to right).

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::Error;
use crate::group::{Limits, PermGroup};
use crate::perm::Perm;
use crate::product::DirectProduct;

/// Splits a product name into its factor names.
pub fn factors(name: &str) -> Vec<String> {
    name.replace('×', " x ")
        .split(" x ")
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

pub fn parse(name: &str, limits: &Limits) -> Result<PermGroup, Error> {
    let parts = factors(name);
    if parts.is_empty() {
        return Err(Error::Parse(format!("empty group name {:?}", name)));
    }
    let mut acc = atom(&parts[0], limits)?;
    for p in &parts[1..] {
        let next = atom(p, limits)?;
        if acc.order() * next.order() > limits.closure_cap {
            return Err(Error::CapExceeded {
                cap: crate::error::Cap::Closure,
                limit: limits.closure_cap,
            });
        }
        acc = (*DirectProduct::new(&acc, &next).group).clone();
    }
    Ok(acc)
}

fn number(s: &str, name: &str) -> Result<usize, Error> {
    s.parse::<usize>()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Parse(format!("bad group name {:?}", name)))
}

fn atom(name: &str, limits: &Limits) -> Result<PermGroup, Error> {
    let bad = || Error::Parse(format!("unknown group {:?}", name));
    match name {
        "SL(2,3)" => return matrix_group(3, 2, &[&[1, 1, 0, 1], &[1, 0, 1, 1]], limits),
        "GL(2,3)" => return matrix_group(3, 2, &[&[1, 1, 0, 1], &[1, 0, 1, 1], &[2, 0, 0, 1]], limits),
        "PSL(2,7)" | "GL(3,2)" => {
            return matrix_group(
                2,
                3,
                &[
                    &[1, 1, 0, 0, 1, 0, 0, 0, 1],
                    &[1, 0, 0, 0, 1, 1, 0, 0, 1],
                    &[1, 0, 0, 0, 1, 0, 1, 0, 1],
                ],
                limits,
            )
        }
        _ => {}
    }
    let (kind, rest) = name.split_at(1);
    let n = number(rest, name)?;
    match kind {
        "C" => cyclic(n, limits),
        "D" => {
            if n % 2 != 0 {
                return Err(bad());
            }
            dihedral(n / 2, limits)
        }
        "Q" => {
            if n % 4 != 0 || n < 8 {
                return Err(bad());
            }
            dicyclic(n / 4, limits)
        }
        "S" => symmetric(n, limits),
        "A" => alternating(n, limits),
        "E" => {
            let (p, k) = prime_power(n).ok_or_else(bad)?;
            let c = cyclic(p, limits)?;
            let mut acc = c.clone();
            for _ in 1..k {
                acc = (*DirectProduct::new(&acc, &c).group).clone();
            }
            Ok(acc)
        }
        _ => Err(bad()),
    }
}

fn prime_power(n: usize) -> Option<(usize, usize)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut m = n;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

fn cycle(n: usize) -> Perm {
    let cyc: Vec<u32> = (0..n as u32).collect();
    Perm::from_cycles(n, &[&cyc]).expect("n-cycle")
}

pub fn cyclic(n: usize, limits: &Limits) -> Result<PermGroup, Error> {
    PermGroup::closure(&[cycle(n)], n, limits)
}

pub fn dihedral(n: usize, limits: &Limits) -> Result<PermGroup, Error> {
    match n {
        1 => cyclic(2, limits),
        2 => {
            let c2 = cyclic(2, limits)?;
            Ok((*DirectProduct::new(&c2, &c2).group).clone())
        }
        _ => {
            let refl: Vec<u32> = (0..n as u32).map(|i| (n as u32 - i) % n as u32).collect();
            PermGroup::closure(&[cycle(n), Perm::from_images(refl)?], n, limits)
        }
    }
}

/// Dicyclic group of order `4m` in its left-regular representation.
pub fn dicyclic(m: usize, limits: &Limits) -> Result<PermGroup, Error> {
    let n = 2 * m;
    // element a^i x^j has index i + n*j
    let mul = |(i1, j1): (usize, usize), (i2, j2): (usize, usize)| -> (usize, usize) {
        if j1 == 0 {
            ((i1 + i2) % n, j2)
        } else if j2 == 0 {
            ((i1 + n - i2) % n, 1)
        } else {
            ((i1 + n - i2 + m) % n, 0)
        }
    };
    let regular = |g: (usize, usize)| -> Perm {
        let images = (0..2 * n)
            .map(|k| {
                let (i, j) = mul(g, (k % n, k / n));
                (i + n * j) as u32
            })
            .collect();
        Perm::from_images(images).expect("left multiplication is bijective")
    };
    PermGroup::closure(&[regular((1, 0)), regular((0, 1))], 2 * n, limits)
}

pub fn symmetric(n: usize, limits: &Limits) -> Result<PermGroup, Error> {
    if n < 2 {
        return PermGroup::closure(&[], n.max(1), limits);
    }
    let t = Perm::from_cycles(n, &[&[0, 1]])?;
    PermGroup::closure(&[cycle(n), t], n, limits)
}

pub fn alternating(n: usize, limits: &Limits) -> Result<PermGroup, Error> {
    if n < 3 {
        return PermGroup::closure(&[], n.max(1), limits);
    }
    let gens: Vec<Perm> = (2..n as u32)
        .map(|i| Perm::from_cycles(n, &[&[0, 1, i]]))
        .collect::<Result<_, _>>()?;
    PermGroup::closure(&gens, n, limits)
}

/// Matrix group over `F_q` (q prime) acting on the nonzero vectors of
/// `F_q^dim`. Matrices are given row-major.
fn matrix_group(q: u32, dim: usize, mats: &[&[u32]], limits: &Limits) -> Result<PermGroup, Error> {
    let total = (q as usize).pow(dim as u32);
    let digits = |mut v: usize| -> Vec<u32> {
        let mut out = alloc::vec![0u32; dim];
        for d in out.iter_mut() {
            *d = (v % q as usize) as u32;
            v /= q as usize;
        }
        out
    };
    let encode = |v: &[u32]| -> usize { v.iter().rev().fold(0usize, |acc, &d| acc * q as usize + d as usize) };
    let gens: Vec<Perm> = mats
        .iter()
        .map(|m| {
            let images = (1..total)
                .map(|v| {
                    let x = digits(v);
                    let y: Vec<u32> = (0..dim)
                        .map(|r| (0..dim).map(|c| m[r * dim + c] * x[c]).sum::<u32>() % q)
                        .collect();
                    (encode(&y) - 1) as u32
                })
                .collect();
            Perm::from_images(images)
        })
        .collect::<Result<_, _>>()?;
    PermGroup::closure(&gens, total - 1, limits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(name: &str) -> usize {
        parse(name, &Limits::default()).unwrap().order()
    }

    #[test]
    fn catalog_orders() {
        assert_eq!(order("C1"), 1);
        assert_eq!(order("C6"), 6);
        assert_eq!(order("D8"), 8);
        assert_eq!(order("D4"), 4);
        assert_eq!(order("D6"), 6);
        assert_eq!(order("Q8"), 8);
        assert_eq!(order("Q16"), 16);
        assert_eq!(order("S4"), 24);
        assert_eq!(order("A5"), 60);
        assert_eq!(order("E8"), 8);
        assert_eq!(order("E9"), 9);
        assert_eq!(order("SL(2,3)"), 24);
        assert_eq!(order("GL(2,3)"), 48);
        assert_eq!(order("PSL(2,7)"), 168);
        assert_eq!(order("C2 x C2"), 4);
        assert_eq!(order("S3 x C4 x C2"), 48);
    }

    #[test]
    fn quaternion_has_one_involution() {
        let q = parse("Q8", &Limits::default()).unwrap();
        let inv = (0..8).filter(|&x| q.element_order(x) == 2).count();
        assert_eq!(inv, 1);
        assert!(!q.is_abelian());
    }

    #[test]
    fn rejects_unknown_names() {
        let l = Limits::default();
        assert!(parse("Z7", &l).is_err());
        assert!(parse("D7", &l).is_err());
        assert!(parse("E6", &l).is_err());
        assert!(parse("", &l).is_err());
        assert!(parse("S8", &l).is_err());
    }
}
