//! Enumerated finite groups.
//!
//! Every construction ends in the same shape: elements are dense ids
//! `0..order` with id 0 the identity, plus a multiplication rule on ids.
//! Small groups carry a full Cayley table; larger ones keep the rule of the
//! backend they came from (hashed element lookup, mixed-radix addition,
//! componentwise product, coset arithmetic).

mod perm;
mod structure;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::lcm;
use crate::error::{Error, Result};
use crate::par::{self, Execution};

pub use perm::{alternating, dihedral, symmetric, Perm, PermDomain};
pub use structure::ConjugacyPartition;

/// Element id inside a [`Group`].
pub type Id = usize;

/// Groups up to this order are converted to a Cayley table after construction.
pub const TABLE_LIMIT: usize = 1024;

/// Above this order associativity is checked on random triples only.
pub const EXHAUSTIVE_AXIOM_LIMIT: usize = 512;

const AXIOM_SAMPLES: usize = 100_000;

/// A set of concrete elements closed under a binary operation, from which
/// groups are generated by closure.
pub trait Domain: Send + Sync + 'static {
    type Elem: Clone + Eq + Hash + Send + Sync + 'static;

    fn identity(&self) -> Self::Elem;
    fn op(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inverse(&self, a: &Self::Elem) -> Self::Elem;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Backend {
    Permutation,
    Matrix,
    Abelian,
    CayleyTable,
    DirectProduct,
    Quotient,
}

trait ElementLaw: Send + Sync {
    fn mul(&self, a: Id, b: Id) -> Id;
}

struct Enumeration<D: Domain> {
    domain: D,
    elems: Vec<D::Elem>,
    index: HashMap<D::Elem, u32>,
}

impl<D: Domain> ElementLaw for Enumeration<D> {
    fn mul(&self, a: Id, b: Id) -> Id {
        let c = self.domain.op(&self.elems[a], &self.elems[b]);
        self.index[&c] as Id
    }
}

enum Law {
    Table(Vec<u32>),
    Elements(Arc<dyn ElementLaw>),
    /// Mixed radix, first factor most significant.
    Abelian(Vec<usize>),
    Product(Group, Group),
    /// Elements are `reps` in the parent; `locate` maps a parent id to the
    /// local id (subgroups) or to its coset (quotients).
    Induced {
        parent: Group,
        reps: Vec<u32>,
        locate: Vec<u32>,
    },
}

struct Inner {
    backend: Backend,
    order: usize,
    law: Law,
    inverses: Vec<u32>,
    gens: Vec<u32>,
    factors: Option<(Group, Group)>,
}

/// A finite group with dense element ids. Cloning is cheap.
#[derive(Clone)]
pub struct Group(Arc<Inner>);

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("backend", &self.0.backend)
            .field("order", &self.0.order)
            .finish()
    }
}

/// A subgroup stored as the sorted ids of its members.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    members: Vec<u32>,
}

impl Subgroup {
    fn from_sorted(members: Vec<u32>) -> Self {
        debug_assert!(members.first() == Some(&0));
        Subgroup { members }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, id: Id) -> bool {
        self.members.binary_search(&(id as u32)).is_ok()
    }

    pub fn members(&self) -> impl ExactSizeIterator<Item = Id> + '_ {
        self.members.iter().map(|&m| m as Id)
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let members = self
            .members
            .iter()
            .copied()
            .filter(|&m| other.members.binary_search(&m).is_ok())
            .collect();
        Subgroup::from_sorted(members)
    }
}

/// Output of [`generate`]: the group plus the concrete elements behind its ids.
pub struct Enumerated<D: Domain> {
    data: Arc<Enumeration<D>>,
    group: Group,
}

impl<D: Domain> Enumerated<D> {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn into_group(self) -> Group {
        self.group
    }

    pub fn domain(&self) -> &D {
        &self.data.domain
    }

    pub fn element(&self, id: Id) -> &D::Elem {
        &self.data.elems[id]
    }

    pub fn elements(&self) -> &[D::Elem] {
        &self.data.elems
    }

    pub fn id_of(&self, elem: &D::Elem) -> Option<Id> {
        self.data.index.get(elem).map(|&i| i as Id)
    }
}

/// Breadth-first closure of `gens` under right multiplication.
///
/// Ids are assigned in discovery order: the identity first, then the
/// generators in the given order (duplicates and the identity skipped), then
/// products as they are found.
pub fn generate<D: Domain>(
    domain: D,
    gens: &[D::Elem],
    backend: Backend,
    cap: usize,
) -> Result<Enumerated<D>> {
    let mut elems = vec![domain.identity()];
    let mut index = HashMap::new();
    index.insert(domain.identity(), 0u32);
    let mut gen_ids = Vec::new();
    let mut distinct_gens = Vec::new();
    for g in gens {
        if !index.contains_key(g) {
            if elems.len() >= cap {
                return Err(Error::CapExceeded { cap });
            }
            index.insert(g.clone(), elems.len() as u32);
            gen_ids.push(elems.len() as u32);
            elems.push(g.clone());
            distinct_gens.push(g.clone());
        }
    }
    let mut head = 0;
    while head < elems.len() {
        for g in &distinct_gens {
            let next = domain.op(&elems[head], g);
            if !index.contains_key(&next) {
                if elems.len() >= cap {
                    return Err(Error::CapExceeded { cap });
                }
                index.insert(next.clone(), elems.len() as u32);
                elems.push(next);
            }
        }
        head += 1;
    }
    let inverses = elems.iter().map(|e| index[&domain.inverse(e)]).collect();
    let data = Arc::new(Enumeration {
        domain,
        elems,
        index,
    });
    let order = data.elems.len();
    let inner = Inner {
        backend,
        order,
        law: Law::Elements(data.clone()),
        inverses,
        gens: gen_ids,
        factors: None,
    };
    Ok(Enumerated {
        data,
        group: Group::finish(inner, false),
    })
}

/// The finite abelian group `C_{d_1} x ... x C_{d_k}` on additive tuples.
pub fn abelian_group(factors: &[usize], cap: usize) -> Result<Group> {
    if let Some(&d) = factors.iter().find(|&&d| d < 2) {
        return Err(Error::InvalidParameter(format!(
            "cyclic factor {d} must be at least 2"
        )));
    }
    let order = checked_product(factors.iter().copied(), cap)?;
    let factors = factors.to_vec();
    let mut strides = vec![1usize; factors.len()];
    for i in (0..factors.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * factors[i + 1];
    }
    let inverses = (0..order)
        .map(|id| {
            let mut out = 0;
            for (i, &d) in factors.iter().enumerate() {
                let digit = id / strides[i] % d;
                out += (d - digit) % d * strides[i];
            }
            out as u32
        })
        .collect();
    let gens = strides.iter().map(|&s| s as u32).collect();
    let inner = Inner {
        backend: Backend::Abelian,
        order,
        law: Law::Abelian(factors),
        inverses,
        gens,
        factors: None,
    };
    Ok(Group::finish(inner, false))
}

/// `a x b` with `(x, y)` labelled `x * |b| + y`.
pub fn direct_product(a: &Group, b: &Group, cap: usize) -> Result<Group> {
    let order = checked_product([a.order(), b.order()], cap)?;
    let nb = b.order();
    let inverses = (0..order)
        .map(|id| (a.inv(id / nb) * nb + b.inv(id % nb)) as u32)
        .collect();
    let gens =
        a.0.gens
            .iter()
            .map(|&g| g * nb as u32)
            .chain(b.0.gens.iter().copied())
            .collect();
    let inner = Inner {
        backend: Backend::DirectProduct,
        order,
        law: Law::Product(a.clone(), b.clone()),
        inverses,
        gens,
        factors: Some((a.clone(), b.clone())),
    };
    Ok(Group::finish(inner, false))
}

fn checked_product(it: impl IntoIterator<Item = usize>, cap: usize) -> Result<usize> {
    let mut n: usize = 1;
    for d in it {
        n = n.checked_mul(d).ok_or(Error::CapExceeded { cap })?;
        if n > cap {
            return Err(Error::CapExceeded { cap });
        }
    }
    Ok(n)
}

impl Group {
    fn finish(mut inner: Inner, greedy_gens: bool) -> Group {
        let n = inner.order;
        if n <= TABLE_LIMIT && !matches!(inner.law, Law::Table(_)) {
            let probe = Group(Arc::new(Inner {
                backend: inner.backend,
                order: n,
                law: std::mem::replace(&mut inner.law, Law::Table(Vec::new())),
                inverses: Vec::new(),
                gens: Vec::new(),
                factors: None,
            }));
            let mut table = vec![0u32; n * n];
            for a in 0..n {
                for b in 0..n {
                    table[a * n + b] = probe.mul(a, b) as u32;
                }
            }
            inner.law = Law::Table(table);
        }
        let mut group = Group(Arc::new(inner));
        if greedy_gens {
            let whole: Vec<u32> = (0..n as u32).collect();
            let gens = group.greedy_generators(&whole);
            Arc::get_mut(&mut group.0)
                .expect("freshly built group is uniquely owned")
                .gens = gens;
        }
        group
    }

    /// Builds a group from a full Cayley table (`table[a * n + b] = a * b`),
    /// with id 0 required to be the identity.
    pub fn from_table(table: Vec<u32>) -> Result<Group> {
        let n = (table.len() as f64).sqrt().round() as usize;
        if n == 0 || n * n != table.len() {
            return Err(Error::InvalidParameter("table is not square".into()));
        }
        if table.iter().any(|&x| x as usize >= n) {
            return Err(Error::InvalidParameter("table entry out of range".into()));
        }
        for a in 0..n {
            if table[a] as usize != a || table[a * n] as usize != a {
                return Err(Error::InvalidParameter("id 0 is not the identity".into()));
            }
        }
        let mut inverses = vec![u32::MAX; n];
        for a in 0..n {
            let row = &table[a * n..(a + 1) * n];
            let mut seen = vec![false; n];
            for &x in row {
                if std::mem::replace(&mut seen[x as usize], true) {
                    return Err(Error::InvalidParameter(
                        "table row is not a permutation".into(),
                    ));
                }
            }
            let b = row.iter().position(|&x| x == 0).unwrap();
            if table[b * n + a] != 0 {
                return Err(Error::InvalidParameter("one-sided inverse".into()));
            }
            inverses[a] = b as u32;
        }
        let inner = Inner {
            backend: Backend::CayleyTable,
            order: n,
            law: Law::Table(table),
            inverses,
            gens: Vec::new(),
            factors: None,
        };
        let group = Group::finish(inner, true);
        group
            .check_axioms()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?;
        Ok(group)
    }

    pub fn trivial() -> Group {
        abelian_group(&[], 1).expect("trivial group fits any cap")
    }

    pub fn backend(&self) -> Backend {
        self.0.backend
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn identity(&self) -> Id {
        0
    }

    /// The two factors when this group was built by [`direct_product`].
    pub fn direct_factors(&self) -> Option<(Group, Group)> {
        self.0.factors.clone()
    }

    /// Generators recorded at construction.
    pub fn generators(&self) -> Vec<Id> {
        self.0.gens.iter().map(|&g| g as Id).collect()
    }

    pub fn mul(&self, a: Id, b: Id) -> Id {
        match &self.0.law {
            Law::Table(t) => t[a * self.0.order + b] as Id,
            Law::Elements(e) => e.mul(a, b),
            Law::Abelian(factors) => {
                let (mut x, mut y) = (a, b);
                let mut out = 0;
                let mut place = 1;
                for &d in factors.iter().rev() {
                    out += (x % d + y % d) % d * place;
                    x /= d;
                    y /= d;
                    place *= d;
                }
                out
            }
            Law::Product(l, r) => {
                let nb = r.order();
                l.mul(a / nb, b / nb) * nb + r.mul(a % nb, b % nb)
            }
            Law::Induced {
                parent,
                reps,
                locate,
            } => locate[parent.mul(reps[a] as Id, reps[b] as Id)] as Id,
        }
    }

    pub fn inv(&self, a: Id) -> Id {
        self.0.inverses[a] as Id
    }

    pub fn pow(&self, a: Id, mut k: u64) -> Id {
        let mut acc = 0;
        let mut base = a;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(base, base);
            }
        }
        acc
    }

    /// `g x g^-1`.
    pub fn conjugate(&self, x: Id, g: Id) -> Id {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn commute(&self, a: Id, b: Id) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(&self, a: Id, b: Id) -> Id {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn element_order(&self, a: Id) -> u64 {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Orders of all elements, indexed by id.
    pub fn element_orders(&self, exec: Execution) -> Vec<u64> {
        par::map_range(exec, self.order(), |a| self.element_order(a))
    }

    pub fn exponent(&self) -> u64 {
        self.element_orders(Execution::default())
            .into_iter()
            .fold(1, lcm)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.0.gens;
        gens.iter().enumerate().all(|(i, &a)| {
            gens[i + 1..]
                .iter()
                .all(|&b| self.commute(a as Id, b as Id))
        })
    }

    /// Verifies identity, inverses and associativity. Associativity is
    /// exhaustive up to [`EXHAUSTIVE_AXIOM_LIMIT`] and sampled above.
    pub fn check_axioms(&self) -> std::result::Result<(), AxiomViolation> {
        let n = self.order();
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Err(AxiomViolation::Identity(a));
            }
            let b = self.inv(a);
            if b >= n || self.mul(a, b) != 0 || self.mul(b, a) != 0 {
                return Err(AxiomViolation::Inverse(a));
            }
        }
        let exec = Execution::default();
        if n <= EXHAUSTIVE_AXIOM_LIMIT {
            let bad = par::map_range(exec, n, |a| {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    for c in 0..n {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return Some((a, b, c));
                        }
                    }
                }
                None
            });
            if let Some((a, b, c)) = bad.into_iter().flatten().next() {
                return Err(AxiomViolation::Associativity(a, b, c));
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
            for _ in 0..AXIOM_SAMPLES {
                let (a, b, c) = (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                );
                if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                    return Err(AxiomViolation::Associativity(a, b, c));
                }
            }
        }
        Ok(())
    }

    /// Quotient by a normal subgroup. Cosets are labelled in order of their
    /// least member, so the identity coset is 0.
    pub fn quotient(&self, normal: &Subgroup) -> Result<Group> {
        if !self.is_normal(normal) {
            return Err(Error::NotNormal);
        }
        let n = self.order();
        let mut locate = vec![u32::MAX; n];
        let mut reps = Vec::with_capacity(n / normal.order());
        for x in 0..n {
            if locate[x] != u32::MAX {
                continue;
            }
            let label = reps.len() as u32;
            for m in normal.members() {
                locate[self.mul(x, m)] = label;
            }
            reps.push(x as u32);
        }
        let inverses = reps.iter().map(|&r| locate[self.inv(r as Id)]).collect();
        let mut gens: Vec<u32> = Vec::new();
        for g in self.generators() {
            let image = locate[g];
            if image != 0 && !gens.contains(&image) {
                gens.push(image);
            }
        }
        let inner = Inner {
            backend: Backend::Quotient,
            order: reps.len(),
            law: Law::Induced {
                parent: self.clone(),
                reps,
                locate,
            },
            inverses,
            gens,
            factors: None,
        };
        Ok(Group::finish(inner, false))
    }

    /// The subgroup as a group in its own right; local id `i` is the `i`-th
    /// smallest member.
    pub fn subgroup_as_group(&self, sub: &Subgroup) -> Group {
        let mut locate = vec![u32::MAX; self.order()];
        for (i, m) in sub.members().enumerate() {
            locate[m] = i as u32;
        }
        let inverses = sub.members().map(|m| locate[self.inv(m)]).collect();
        let inner = Inner {
            backend: Backend::CayleyTable,
            order: sub.order(),
            law: Law::Induced {
                parent: self.clone(),
                reps: sub.members.clone(),
                locate,
            },
            inverses,
            gens: Vec::new(),
            factors: None,
        };
        Group::finish(inner, true)
    }

    /// Closure of `seeds` under multiplication.
    pub fn subgroup_generated(&self, seeds: &[Id]) -> Subgroup {
        let mut mask = vec![false; self.order()];
        mask[0] = true;
        let mut found = vec![0u32];
        let seeds: Vec<Id> = seeds.iter().copied().filter(|&s| s != 0).collect();
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &s in &seeds {
                let y = self.mul(x, s);
                if !mask[y] {
                    mask[y] = true;
                    found.push(y as u32);
                    queue.push_back(y);
                }
            }
        }
        found.sort_unstable();
        Subgroup::from_sorted(found)
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_sorted((0..self.order() as u32).collect())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_sorted(vec![0])
    }

    /// A small generating set for `members` (sorted ids of a subgroup): scan
    /// members in id order and keep those not yet generated.
    fn greedy_generators(&self, members: &[u32]) -> Vec<u32> {
        let mut gens: Vec<u32> = Vec::new();
        let mut current = self.trivial_subgroup();
        for &m in members {
            if current.order() == members.len() {
                break;
            }
            if !current.contains(m as Id) {
                gens.push(m);
                let ids: Vec<Id> = gens.iter().map(|&g| g as Id).collect();
                current = self.subgroup_generated(&ids);
            }
        }
        gens
    }

    pub fn subgroup_generators(&self, sub: &Subgroup) -> Vec<Id> {
        self.greedy_generators(&sub.members)
            .into_iter()
            .map(|g| g as Id)
            .collect()
    }

    /// Uniformly random element, for sampling-based checks.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Id {
        rng.gen_range(0..self.order())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    Identity(Id),
    Inverse(Id),
    Associativity(Id, Id, Id),
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::Identity(a) => write!(f, "id 0 is not an identity for {a}"),
            AxiomViolation::Inverse(a) => write!(f, "element {a} has no two-sided inverse"),
            AxiomViolation::Associativity(a, b, c) => {
                write!(f, "associativity fails on ({a}, {b}, {c})")
            }
        }
    }
}

impl std::error::Error for AxiomViolation {}

/// Cayley table of the quaternion group `{±1, ±i, ±j, ±k}`.
///
/// Ids: `1, -1, i, -i, j, -j, k, -k`.
pub fn quaternion8() -> Group {
    // unit index 0..4 for 1,i,j,k; product of units as (sign, unit)
    const UNIT: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    let mut table = vec![0u32; 64];
    for a in 0..8 {
        for b in 0..8 {
            let (sa, ua) = (a % 2 == 1, a / 2);
            let (sb, ub) = (b % 2 == 1, b / 2);
            let (s, u) = UNIT[ua][ub];
            let sign = sa ^ sb ^ s;
            table[a * 8 + b] = (u * 2 + sign as usize) as u32;
        }
    }
    Group::from_table(table).expect("quaternion table is a group")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generate_s3_and_klein() {
        let s3 = symmetric(3, 100).unwrap();
        assert_eq!(s3.order(), 6);
        let d = PermDomain::new(4);
        let a = Perm::from_cycles(4, &[vec![1, 2], vec![3, 4]]).unwrap();
        let b = Perm::from_cycles(4, &[vec![1, 3], vec![2, 4]]).unwrap();
        let v4 = generate(d, &[a, b], Backend::Permutation, 100).unwrap();
        assert_eq!(v4.group().order(), 4);
        assert_eq!(v4.group().exponent(), 2);
        assert_eq!(
            symmetric(10, 100_000).unwrap_err(),
            Error::CapExceeded { cap: 100_000 }
        );
    }

    #[test]
    fn generate_is_deterministic() {
        let a = Perm::from_cycles(4, &[vec![1, 2, 3, 4]]).unwrap();
        let b = Perm::from_cycles(4, &[vec![1, 2]]).unwrap();
        let x = generate(
            PermDomain::new(4),
            &[a.clone(), b.clone()],
            Backend::Permutation,
            100,
        )
        .unwrap();
        let y = generate(
            PermDomain::new(4),
            &[a.clone(), b.clone()],
            Backend::Permutation,
            100,
        )
        .unwrap();
        assert_eq!(x.elements(), y.elements());
        assert_eq!(x.element(1), &a);
        assert_eq!(x.element(2), &b);
        let empty = generate(PermDomain::new(3), &[], Backend::Permutation, 10).unwrap();
        assert_eq!(empty.group().order(), 1);
    }

    #[test]
    fn element_orders() {
        let s3 = symmetric(3, 100).unwrap();
        let three_cycle = (0..6).find(|&x| s3.element_order(x) == 3).unwrap();
        assert_eq!(s3.element_order(0), 1);
        assert_eq!(s3.element_order(three_cycle), 3);
        let c6 = abelian_group(&[2, 3], 100).unwrap();
        let mut orders = c6.element_orders(Execution::Sequential);
        orders.sort();
        orders.dedup();
        assert_eq!(orders, vec![1, 2, 3, 6]);
    }

    #[test]
    fn abelian_constructions() {
        let klein = abelian_group(&[2, 2], 100).unwrap();
        assert_eq!((klein.order(), klein.exponent()), (4, 2));
        let g = abelian_group(&[4, 2], 100).unwrap();
        assert_eq!((g.order(), g.exponent()), (8, 4));
        assert!(g.is_abelian());
        assert_eq!(
            abelian_group(&[2; 5], 16).unwrap_err(),
            Error::CapExceeded { cap: 16 }
        );
        assert!(matches!(
            abelian_group(&[1], 10),
            Err(Error::InvalidParameter(_))
        ));
        let big = abelian_group(&[3; 7], 10_000).unwrap();
        assert_eq!(big.order(), 2187);
        big.check_axioms().unwrap();
        assert_eq!(big.exponent(), 3);
    }

    #[test]
    fn products() {
        let c2 = abelian_group(&[2], 10).unwrap();
        let c3 = abelian_group(&[3], 10).unwrap();
        let c6 = direct_product(&c2, &c3, 100).unwrap();
        assert_eq!(c6.exponent(), 6);
        let s3 = symmetric(3, 10).unwrap();
        let p = direct_product(&s3, &c2, 100).unwrap();
        assert_eq!(p.order(), 12);
        assert!(!p.is_abelian());
        let orders_s3 = s3.element_orders(Execution::Sequential);
        let orders_c2 = c2.element_orders(Execution::Sequential);
        for (id, ord) in p
            .element_orders(Execution::Sequential)
            .into_iter()
            .enumerate()
        {
            assert_eq!(ord, lcm(orders_s3[id / 2], orders_c2[id % 2]));
        }
        assert_eq!(
            direct_product(&c2, &c2, 3).unwrap_err(),
            Error::CapExceeded { cap: 3 }
        );
        let big = direct_product(&s3, &abelian_group(&[500], 1000).unwrap(), 10_000).unwrap();
        big.check_axioms().unwrap();
        assert_eq!(direct_product(&c2, &c2, 10).unwrap().exponent(), 2);
    }

    #[test]
    fn quaternion() {
        let q8 = quaternion8();
        assert_eq!(q8.order(), 8);
        assert!(!q8.is_abelian());
        let orders = q8.element_orders(Execution::Sequential);
        assert_eq!(orders.iter().filter(|&&o| o == 4).count(), 6);
        assert_eq!(orders.iter().filter(|&&o| o == 2).count(), 1);
    }

    #[test]
    fn from_table_rejects_garbage() {
        assert!(Group::from_table(vec![0, 1, 1, 1]).is_err());
        assert!(Group::from_table(vec![0, 1, 2]).is_err());
        // a loop that is not associative: order-5 Latin square with identity 0
        let loop5 = vec![
            0, 1, 2, 3, 4, //
            1, 0, 3, 4, 2, //
            2, 4, 0, 1, 3, //
            3, 2, 4, 0, 1, //
            4, 3, 1, 2, 0,
        ];
        assert!(Group::from_table(loop5).is_err());
    }
}
