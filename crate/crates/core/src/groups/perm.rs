use std::fmt;

use super::{generate, Backend, Domain, Group};
use crate::error::{Error, Result};

/// Largest point a permutation may move.
pub const MAX_DEGREE: usize = 1000;

/// A permutation of `{0, .., n-1}` stored as its image list. Products read
/// left to right: `(a * b)(i) = b(a(i))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Box<[u16]>);

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm((0..degree as u16).collect())
    }

    /// Builds a permutation from 1-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Perm> {
        if degree > MAX_DEGREE {
            return Err(Error::Semantic(format!(
                "degree {degree} exceeds {MAX_DEGREE}"
            )));
        }
        let mut img: Vec<u16> = (0..degree as u16).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for &pt in cycle {
                if pt == 0 || pt > degree {
                    return Err(Error::Semantic(format!("point {pt} outside 1..={degree}")));
                }
                if std::mem::replace(&mut touched[pt - 1], true) {
                    return Err(Error::Semantic(format!("point {pt} repeated in cycles")));
                }
            }
            for (i, &pt) in cycle.iter().enumerate() {
                let next = cycle[(i + 1) % cycle.len()];
                img[pt - 1] = (next - 1) as u16;
            }
        }
        Ok(Perm(img.into()))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.0[point] as usize
    }

    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u16; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u16;
        }
        Perm(inv.into())
    }

    /// Nontrivial cycles, 1-based, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.0[x] as usize;
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

/// Permutations of a fixed degree under left-to-right composition.
#[derive(Clone, Debug)]
pub struct PermDomain {
    degree: usize,
}

impl PermDomain {
    pub fn new(degree: usize) -> Self {
        PermDomain { degree }
    }
}

impl Domain for PermDomain {
    type Elem = Perm;

    fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    fn op(&self, a: &Perm, b: &Perm) -> Perm {
        a.then(b)
    }

    fn inverse(&self, a: &Perm) -> Perm {
        a.inverse()
    }
}

fn perm_group(degree: usize, gens: Vec<Vec<Vec<usize>>>, cap: usize) -> Result<Group> {
    let gens = gens
        .iter()
        .map(|cycles| Perm::from_cycles(degree, cycles))
        .collect::<Result<Vec<_>>>()?;
    Ok(generate(PermDomain::new(degree), &gens, Backend::Permutation, cap)?.into_group())
}

/// `S_n` generated by `(1 2)` and `(1 2 ... n)`.
pub fn symmetric(n: usize, cap: usize) -> Result<Group> {
    if n < 2 {
        return perm_group(n.max(1), vec![], cap);
    }
    perm_group(n, vec![vec![vec![1, 2]], vec![(1..=n).collect()]], cap)
}

/// `A_n` generated by the 3-cycles `(1 2 k)`.
pub fn alternating(n: usize, cap: usize) -> Result<Group> {
    let gens = (3..=n).map(|k| vec![vec![1, 2, k]]).collect();
    perm_group(n.max(1), gens, cap)
}

/// Dihedral group of order `2n` acting on the vertices of an n-gon.
pub fn dihedral(n: usize, cap: usize) -> Result<Group> {
    if n < 3 {
        return Err(Error::Semantic(format!("dihedral parameter {n} < 3")));
    }
    let reflection = (1..=n / 2).map(|i| vec![i, n + 1 - i]).collect();
    perm_group(n, vec![vec![(1..=n).collect()], reflection], cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_notation() {
        let p = Perm::from_cycles(5, &[vec![1, 2, 3], vec![4, 5]]).unwrap();
        assert_eq!(p.to_string(), "(1 2 3)(4 5)");
        assert_eq!(p.apply(0), 1);
        assert_eq!(p.then(&p.inverse()), Perm::identity(5));
        assert!(Perm::from_cycles(3, &[vec![1, 4]]).is_err());
        assert!(Perm::from_cycles(3, &[vec![1, 2], vec![2, 3]]).is_err());
        // left-to-right: (1 2) then (1 3) sends 1 -> 2 -> 2, 2 -> 1 -> 3
        let a = Perm::from_cycles(3, &[vec![1, 2]]).unwrap();
        let b = Perm::from_cycles(3, &[vec![1, 3]]).unwrap();
        assert_eq!(a.then(&b).to_string(), "(1 2 3)");
    }

    #[test]
    fn family_orders() {
        let orders: Vec<usize> = (1..=6)
            .map(|n| symmetric(n, 1000).unwrap().order())
            .collect();
        assert_eq!(orders, vec![1, 2, 6, 24, 120, 720]);
        let orders: Vec<usize> = (1..=6)
            .map(|n| alternating(n, 1000).unwrap().order())
            .collect();
        assert_eq!(orders, vec![1, 1, 3, 12, 60, 360]);
        for n in 3..=12 {
            let d = dihedral(n, 1000).unwrap();
            assert_eq!(d.order(), 2 * n);
            assert!(!d.is_abelian());
        }
        assert!(dihedral(2, 100).is_err());
    }
}
