//! Subgroup-level structure: centralizers, conjugacy classes, normality,
//! derived series, Sylow subgroups and subgroup lattices.

use std::collections::{HashSet, VecDeque};

use super::{Group, Id, Subgroup};
use crate::arith::p_part;
use crate::par::{self, Execution};

/// Conjugacy classes, each sorted, listed in order of their least member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyPartition {
    group_order: usize,
    classes: Vec<Vec<u32>>,
    class_of: Vec<u32>,
}

impl ConjugacyPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class(&self, index: usize) -> impl Iterator<Item = Id> + '_ {
        self.classes[index].iter().map(|&x| x as Id)
    }

    pub fn class_of(&self, id: Id) -> usize {
        self.class_of[id] as usize
    }

    /// Least member of each class.
    pub fn representatives(&self) -> Vec<Id> {
        self.classes.iter().map(|c| c[0] as Id).collect()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// `|C_G(a)| = |G| / |class of a|` for each class.
    pub fn centralizer_orders(&self) -> Vec<usize> {
        self.classes
            .iter()
            .map(|c| self.group_order / c.len())
            .collect()
    }
}

impl Group {
    pub fn centralizer(&self, a: Id) -> Subgroup {
        let keep = par::map_range(Execution::default(), self.order(), |x| self.commute(x, a));
        collect_mask(&keep)
    }

    pub fn center(&self) -> Subgroup {
        let gens = self.generators();
        let keep = par::map_range(Execution::default(), self.order(), |x| {
            gens.iter().all(|&g| self.commute(x, g))
        });
        collect_mask(&keep)
    }

    /// Orbits of conjugation by the generators.
    pub fn conjugacy_classes(&self) -> ConjugacyPartition {
        let n = self.order();
        let gens = self.generators();
        let mut class_of = vec![u32::MAX; n];
        let mut classes = Vec::new();
        for start in 0..n {
            if class_of[start] != u32::MAX {
                continue;
            }
            let label = classes.len() as u32;
            class_of[start] = label;
            let mut members = vec![start as u32];
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &g in &gens {
                    let y = self.conjugate(x, g);
                    if class_of[y] == u32::MAX {
                        class_of[y] = label;
                        members.push(y as u32);
                        queue.push_back(y);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        ConjugacyPartition {
            group_order: n,
            classes,
            class_of,
        }
    }

    pub fn is_normal(&self, sub: &Subgroup) -> bool {
        let gens = self.generators();
        let sub_gens = self.subgroup_generators(sub);
        sub_gens
            .iter()
            .all(|&s| gens.iter().all(|&g| sub.contains(self.conjugate(s, g))))
    }

    /// `{x : x S x^-1 = S}`.
    pub fn normalizer(&self, sub: &Subgroup) -> Subgroup {
        let sub_gens = self.subgroup_generators(sub);
        let keep = par::map_range(Execution::default(), self.order(), |x| {
            sub_gens.iter().all(|&s| sub.contains(self.conjugate(s, x)))
        });
        collect_mask(&keep)
    }

    /// True iff every element of `a` commutes with every element of `b`.
    pub fn commuting_subgroups(&self, a: &Subgroup, b: &Subgroup) -> bool {
        let ga = self.subgroup_generators(a);
        let gb = self.subgroup_generators(b);
        ga.iter().all(|&x| gb.iter().all(|&y| self.commute(x, y)))
    }

    /// Smallest subgroup of `within` containing `seeds` and normalized by `within`.
    pub fn normal_closure(&self, within: &Subgroup, seeds: &[Id]) -> Subgroup {
        let conj_by = self.subgroup_generators(within);
        let mut gens: Vec<Id> = seeds.iter().copied().filter(|&s| s != 0).collect();
        let mut current = self.subgroup_generated(&gens);
        loop {
            let missing = self
                .subgroup_generators(&current)
                .into_iter()
                .flat_map(|k| conj_by.iter().map(move |&h| (k, h)))
                .map(|(k, h)| self.conjugate(k, h))
                .find(|&c| !current.contains(c));
            match missing {
                Some(c) => {
                    gens.push(c);
                    current = self.subgroup_generated(&gens);
                }
                None => return current,
            }
        }
    }

    /// Commutator subgroup of `sub`.
    pub fn derived_subgroup(&self, sub: &Subgroup) -> Subgroup {
        let gens = self.subgroup_generators(sub);
        let mut seeds = Vec::new();
        for (i, &a) in gens.iter().enumerate() {
            for &b in &gens[i + 1..] {
                seeds.push(self.commutator(a, b));
            }
        }
        self.normal_closure(sub, &seeds)
    }

    /// `G ≥ G' ≥ G'' ≥ ...` until it stabilizes.
    pub fn derived_series(&self) -> Vec<Subgroup> {
        let mut series = vec![self.whole()];
        loop {
            let last = series.last().unwrap();
            let next = self.derived_subgroup(last);
            if next.order() == last.order() {
                return series;
            }
            series.push(next);
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().unwrap().is_trivial()
    }

    /// A Sylow p-subgroup, grown one factor of `p` at a time.
    ///
    /// Starts from the cyclic subgroup of a p-element of largest order; while
    /// the current p-subgroup `P` is not Sylow, some `y` in `N(P) \ P` has
    /// `y^p` in `P`, and `<P, y>` has order `p |P|`.
    pub fn sylow_subgroup(&self, p: u64) -> Subgroup {
        let target = p_part(self.order() as u64, p) as usize;
        if target == 1 {
            return self.trivial_subgroup();
        }
        let orders = self.element_orders(Execution::default());
        let start = (0..self.order())
            .filter(|&x| p_part(orders[x], p) == orders[x])
            .max_by_key(|&x| (orders[x], std::cmp::Reverse(x)))
            .unwrap();
        let mut gens = vec![start];
        let mut current = self.subgroup_generated(&gens);
        while current.order() < target {
            let normalizer = self.normalizer(&current);
            let extension = normalizer
                .members()
                .find(|&y| !current.contains(y) && current.contains(self.pow(y, p)))
                .expect("a non-Sylow p-subgroup has a p-extension in its normalizer");
            gens.push(extension);
            current = self.subgroup_generated(&gens);
        }
        current
    }

    /// Every subgroup, or `None` if there are more than `limit`.
    ///
    /// Cyclic subgroups are joined repeatedly with the subgroups found so far
    /// until no new subgroup appears; every subgroup is a join of cyclic ones.
    pub fn subgroup_lattice(&self, limit: usize) -> Option<Vec<Subgroup>> {
        let mut cyclic: Vec<(Id, Subgroup)> = Vec::new();
        let mut seen_cyclic = HashSet::new();
        for x in 0..self.order() {
            let c = self.subgroup_generated(&[x]);
            if seen_cyclic.insert(c.clone()) {
                cyclic.push((x, c));
            }
        }
        let mut found: HashSet<Subgroup> = HashSet::new();
        let mut work: Vec<(Vec<Id>, Subgroup)> = Vec::new();
        for (x, c) in &cyclic {
            found.insert(c.clone());
            work.push((vec![*x], c.clone()));
        }
        if found.len() > limit {
            return None;
        }
        while let Some((gens, sub)) = work.pop() {
            for (x, c) in &cyclic {
                if sub.contains(*x) || c.order() == 1 {
                    continue;
                }
                let mut g = gens.clone();
                g.push(*x);
                let join = self.subgroup_generated(&g);
                if found.insert(join.clone()) {
                    if found.len() > limit {
                        return None;
                    }
                    work.push((g, join));
                }
            }
        }
        let mut all: Vec<Subgroup> = found.into_iter().collect();
        all.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
        Some(all)
    }
}

fn collect_mask(keep: &[bool]) -> Subgroup {
    let members = keep
        .iter()
        .enumerate()
        .filter_map(|(i, &k)| k.then_some(i as u32))
        .collect();
    Subgroup::from_sorted(members)
}

#[cfg(test)]
mod tests {
    use super::super::{abelian_group, direct_product, quaternion8, symmetric, Perm, PermDomain};
    use super::*;
    use crate::groups::{generate, Backend};

    fn s3_parts() -> (Group, Id, Id, Id) {
        let e = generate(
            PermDomain::new(3),
            &[
                Perm::from_cycles(3, &[vec![1, 2, 3]]).unwrap(),
                Perm::from_cycles(3, &[vec![1, 2]]).unwrap(),
            ],
            Backend::Permutation,
            10,
        )
        .unwrap();
        let t12 = e
            .id_of(&Perm::from_cycles(3, &[vec![1, 2]]).unwrap())
            .unwrap();
        let t13 = e
            .id_of(&Perm::from_cycles(3, &[vec![1, 3]]).unwrap())
            .unwrap();
        (e.group().clone(), 1, t12, t13)
    }

    #[test]
    fn centralizers_and_classes() {
        let (s3, c3, t12, _) = s3_parts();
        assert_eq!(s3.centralizer(0).order(), 6);
        assert_eq!(s3.centralizer(t12).order(), 2);
        assert_eq!(s3.centralizer(c3).order(), 3);
        let classes = s3.conjugacy_classes();
        let mut sizes = classes.sizes();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(classes.representatives()[0], 0);

        let c12 = abelian_group(&[12], 100).unwrap();
        assert_eq!(c12.conjugacy_classes().len(), 12);
    }

    #[test]
    fn class_equation_and_centralizers() {
        for g in [
            symmetric(4, 100).unwrap(),
            quaternion8(),
            symmetric(5, 200).unwrap(),
        ] {
            let classes = g.conjugacy_classes();
            assert_eq!(classes.sizes().iter().sum::<usize>(), g.order());
            for (i, rep) in classes.representatives().into_iter().enumerate() {
                assert_eq!(g.order() % classes.sizes()[i], 0);
                assert_eq!(g.centralizer(rep).order(), classes.centralizer_orders()[i]);
                for x in classes.class(i) {
                    assert_eq!(g.centralizer(x).order() * classes.sizes()[i], g.order());
                }
            }
        }
    }

    #[test]
    fn normality() {
        let (s3, c3, t12, t13) = s3_parts();
        let a3 = s3.subgroup_generated(&[c3]);
        assert_eq!(a3.order(), 3);
        assert!(s3.is_normal(&a3));
        let h = s3.subgroup_generated(&[t12]);
        assert_eq!(h.order(), 2);
        assert!(!s3.is_normal(&h));
        assert_eq!(s3.normalizer(&h), h);
        assert_eq!(s3.normalizer(&a3).order(), 6);
        assert!(!s3.commuting_subgroups(&h, &s3.subgroup_generated(&[t13])));
        assert!(s3.commuting_subgroups(&s3.center(), &h));
        assert_eq!(s3.quotient(&h).unwrap_err(), crate::Error::NotNormal);
        let q = s3.quotient(&a3).unwrap();
        assert_eq!(q.order(), 2);
        q.check_axioms().unwrap();
    }

    #[test]
    fn quotients() {
        let c4 = abelian_group(&[4], 10).unwrap();
        let c2 = c4.subgroup_generated(&[2]);
        let q = c4.quotient(&c2).unwrap();
        assert_eq!(q.order(), 2);
        assert!(q.is_abelian());

        let q8 = quaternion8();
        let z = q8.center();
        assert_eq!(z.order(), 2);
        let v = q8.quotient(&z).unwrap();
        assert_eq!(v.order(), 4);
        assert_eq!(v.exponent(), 2);
        v.check_axioms().unwrap();
    }

    #[test]
    fn product_factors_commute() {
        let s3 = symmetric(3, 10).unwrap();
        let c4 = abelian_group(&[4], 10).unwrap();
        let p = direct_product(&s3, &c4, 100).unwrap();
        let left = p.subgroup_generated(&[4, 8]);
        let right = p.subgroup_generated(&[1]);
        assert_eq!((left.order(), right.order()), (6, 4));
        assert!(p.commuting_subgroups(&left, &right));
        assert!(p.is_normal(&left) && p.is_normal(&right));
    }

    #[test]
    fn sylow() {
        let (s3, ..) = s3_parts();
        let p3 = s3.sylow_subgroup(3);
        assert_eq!(p3.order(), 3);
        assert!(s3.is_normal(&p3));
        let s4 = symmetric(4, 100).unwrap();
        let p2 = s4.sylow_subgroup(2);
        assert_eq!(p2.order(), 8);
        assert!(!s4.subgroup_as_group(&p2).is_abelian());
        let c6 = abelian_group(&[6], 10).unwrap();
        assert!(c6.sylow_subgroup(5).is_trivial());
        let s5 = symmetric(5, 200).unwrap();
        assert_eq!(s5.sylow_subgroup(2).order(), 8);
        assert_eq!(s5.sylow_subgroup(5).order(), 5);
    }

    #[test]
    fn solvability() {
        assert!(symmetric(4, 100).unwrap().is_solvable());
        assert!(!symmetric(5, 200).unwrap().is_solvable());
        assert!(abelian_group(&[6, 2], 100).unwrap().is_solvable());
        assert!(quaternion8().is_solvable());
        let series = symmetric(4, 100).unwrap().derived_series();
        let orders: Vec<_> = series.iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![24, 12, 4, 1]);
    }

    #[test]
    fn lattices() {
        let s3 = symmetric(3, 10).unwrap();
        assert_eq!(s3.subgroup_lattice(100).unwrap().len(), 6);
        let s4 = symmetric(4, 100).unwrap();
        let lattice = s4.subgroup_lattice(100).unwrap();
        assert_eq!(lattice.len(), 30);
        for h in &lattice {
            assert_eq!(24 % h.order(), 0);
        }
        assert_eq!(lattice.iter().filter(|h| s4.is_normal(h)).count(), 4);
        assert_eq!(
            abelian_group(&[2, 2, 2, 2], 100)
                .unwrap()
                .subgroup_lattice(1000)
                .unwrap()
                .len(),
            67
        );
        assert!(s4.subgroup_lattice(10).is_none());
    }
}
