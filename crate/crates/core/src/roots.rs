//! Power images, root counts and the probability `Prob_r(G) = |G^r| / |G|`,
//! plus a brute-force verifier for the identities and inequalities relating
//! `Prob_r` across subgroups, quotients and products.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::{gcd, is_prime};
use crate::error::{Error, Result};
use crate::groups::{Group, Id, Subgroup};
use crate::par::{self, Execution};

/// An exact probability `num / den` in lowest terms, `0 <= num <= den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Probability {
    num: u64,
    den: u64,
}

impl Probability {
    pub const ONE: Probability = Probability { num: 1, den: 1 };

    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num > den {
            return Err(Error::InvalidParameter(format!(
                "{num}/{den} is not a probability"
            )));
        }
        let g = gcd(num, den).max(1);
        Ok(Probability {
            num: num / g,
            den: den / g,
        })
    }

    /// `count / total` for `1 <= total`, `count <= total`.
    pub fn ratio(count: usize, total: usize) -> Self {
        Probability::new(count as u64, total as u64).expect("count never exceeds total")
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn as_ratio(self) -> Ratio<u128> {
        Ratio::new_raw(self.num as u128, self.den as u128)
    }

    /// Product of two probabilities; `None` if the reduced denominator
    /// overflows `u64`.
    pub fn checked_mul(self, other: Probability) -> Option<Probability> {
        let r = self.as_ratio() * other.as_ratio();
        let (num, den) = (
            u64::try_from(*r.numer()).ok()?,
            u64::try_from(*r.denom()).ok()?,
        );
        Some(Probability { num, den })
    }
}

impl Ord for Probability {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for Probability {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl Serialize for Probability {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Probability", 3)?;
        s.serialize_field("num", &self.num)?;
        s.serialize_field("den", &self.den)?;
        s.serialize_field("decimal", &self.to_f64())?;
        s.end()
    }
}

/// Fibers of the power map `x -> x^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerImage {
    r: u64,
    fibers: Vec<u32>,
}

impl PowerImage {
    pub fn r(&self) -> u64 {
        self.r
    }

    /// Number of `x` with `x^r = a`.
    pub fn fiber(&self, a: Id) -> usize {
        self.fibers[a] as usize
    }

    pub fn fibers(&self) -> &[u32] {
        &self.fibers
    }

    /// Ids having at least one r-th root, ascending.
    pub fn image_ids(&self) -> Vec<Id> {
        (0..self.fibers.len())
            .filter(|&a| self.fibers[a] > 0)
            .collect()
    }

    pub fn image_size(&self) -> usize {
        self.fibers.iter().filter(|&&c| c > 0).count()
    }

    pub fn probability(&self) -> Probability {
        Probability::ratio(self.image_size(), self.fibers.len())
    }
}

fn check_r(r: u64) {
    assert!(r >= 2, "root exponent must be at least 2, got {r}");
}

pub fn power_image(g: &Group, r: u64) -> PowerImage {
    power_image_with(g, r, Execution::default())
}

pub fn power_image_with(g: &Group, r: u64, exec: Execution) -> PowerImage {
    check_r(r);
    let targets = par::map_range(exec, g.order(), |x| g.pow(x, r) as u32);
    let mut fibers = vec![0u32; g.order()];
    for t in targets {
        fibers[t as usize] += 1;
    }
    PowerImage { r, fibers }
}

pub fn prob_r(g: &Group, r: u64) -> Probability {
    power_image(g, r).probability()
}

pub fn prob_r_with(g: &Group, r: u64, exec: Execution) -> Probability {
    power_image_with(g, r, exec).probability()
}

/// The set `H^r` as sorted ids of the ambient group.
pub fn subgroup_powers(g: &Group, h: &Subgroup, r: u64) -> Vec<Id> {
    check_r(r);
    let mut powers: Vec<Id> = h.members().map(|x| g.pow(x, r)).collect();
    powers.sort_unstable();
    powers.dedup();
    powers
}

/// `Prob_r(H)` computed inside the ambient group.
pub fn prob_r_subgroup(g: &Group, h: &Subgroup, r: u64) -> Probability {
    Probability::ratio(subgroup_powers(g, h, r).len(), h.order())
}

/// `|{x : x^r = a}|`.
pub fn root_count(g: &Group, a: Id, r: u64) -> usize {
    check_r(r);
    (0..g.order()).filter(|&x| g.pow(x, r) == a).count()
}

/// `1 / |A[r]|` for `A = C_{d_1} x ... x C_{d_k}`, using
/// `|A[r]| = prod gcd(r, d_i)`.
pub fn abelian_prob_formula(factors: &[u64], r: u64) -> Probability {
    check_r(r);
    let torsion = factors.iter().fold(1u64, |acc, &d| acc * gcd(r, d));
    Probability::new(1, torsion).expect("torsion order is positive")
}

/// `gcd(r, |G|) = 1`; equivalent to `Prob_r(G) = 1`.
pub fn coprime_criterion(g: &Group, r: u64) -> bool {
    gcd(r, g.order() as u64) == 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Statement {
    /// `1/|G| <= Prob_r(G) <= 1`.
    Bounds,
    /// `Prob_r(G) = 1` iff `gcd(r, |G|) = 1`.
    CoprimeCriterion,
    /// `gcd(r, |C_G(a)|)` divides the number of solutions of `x^r = a`.
    RootCountDivisibility,
    /// Abelian `G`: `Prob_r(G) = 1/|G[r]|`.
    AbelianFormula,
    /// Abelian `G`, prime `r`: `Prob_r(G) = 1/|G|` iff `G` is elementary abelian of exponent `r`.
    ElementaryAbelian,
    /// `Prob_r(A x B) = Prob_r(A) Prob_r(B)`.
    ProductRule,
    /// `G = AB`, `[A,B] = 1`: `Prob_r(G) = Prob_r(A) Prob_r(B) |A ∩ B| / |A^r ∩ B^r|`,
    /// which is the uncorrected form `Prob_r(A) Prob_r(B) / |A^r ∩ B^r|` when `A ∩ B = 1`.
    CentralProduct,
    /// The uncorrected form evaluated when `A ∩ B ≠ 1`; informational only.
    CentralProductLiteral,
    /// `Prob_r(G) <= Prob_r(G/N)`.
    QuotientBound,
    /// `Prob_r(H) / |G| <= Prob_r(G)`.
    SubgroupBound,
    /// Solvable `G`, prime `p`: `1/|P| <= Prob_p(G)` for a Sylow p-subgroup `P`.
    SylowBound,
    /// Prime `r`, `a = x^r`: `|x| = |a|` or `|x| = r |a|`.
    RootOrder,
}

impl Statement {
    pub const ALL: [Statement; 12] = [
        Statement::Bounds,
        Statement::CoprimeCriterion,
        Statement::RootCountDivisibility,
        Statement::AbelianFormula,
        Statement::ElementaryAbelian,
        Statement::ProductRule,
        Statement::CentralProduct,
        Statement::CentralProductLiteral,
        Statement::QuotientBound,
        Statement::SubgroupBound,
        Statement::SylowBound,
        Statement::RootOrder,
    ];
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Outcome {
    Holds,
    Fails {
        witness: Vec<Id>,
    },
    /// Hypotheses of the statement are not met in a usable form.
    Degenerate {
        reason: String,
    },
    /// Evaluated and recorded, never counted as a failure.
    Observed {
        holds: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub statement: Statement,
    pub instance: String,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StatementTally {
    pub holds: usize,
    pub fails: usize,
    pub degenerate: usize,
    pub observed: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    fn push(&mut self, statement: Statement, instance: impl Into<String>, outcome: Outcome) {
        self.checks.push(Check {
            statement,
            instance: instance.into(),
            outcome,
        });
    }

    fn assert(
        &mut self,
        statement: Statement,
        instance: impl Into<String>,
        holds: bool,
        witness: Vec<Id>,
    ) {
        let outcome = if holds {
            Outcome::Holds
        } else {
            Outcome::Fails { witness }
        };
        self.push(statement, instance, outcome);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks
            .iter()
            .filter(|c| matches!(c.outcome, Outcome::Fails { .. }))
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    /// Outcome counts for every statement, including those with no instances.
    pub fn tally(&self) -> BTreeMap<Statement, StatementTally> {
        let mut out: BTreeMap<Statement, StatementTally> = Statement::ALL
            .iter()
            .map(|&s| (s, StatementTally::default()))
            .collect();
        for c in &self.checks {
            let t = out.get_mut(&c.statement).unwrap();
            match c.outcome {
                Outcome::Holds => t.holds += 1,
                Outcome::Fails { .. } => t.fails += 1,
                Outcome::Degenerate { .. } => t.degenerate += 1,
                Outcome::Observed { .. } => t.observed += 1,
            }
        }
        out
    }
}

/// Limits on how much subgroup structure [`verify_suite`] explores.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StructuralBudget {
    /// Full subgroup lattice up to this group order.
    pub exhaustive_up_to: usize,
    /// Abandon the lattice (and fall back to sampling) past this many subgroups.
    pub max_subgroups: usize,
    /// Number of random two-generator subgroups when sampling.
    pub samples: usize,
    pub seed: u64,
}

impl Default for StructuralBudget {
    fn default() -> Self {
        StructuralBudget {
            exhaustive_up_to: 200,
            max_subgroups: 5000,
            samples: 100,
            seed: 0x5eed,
        }
    }
}

struct SubgroupData {
    sub: Subgroup,
    gens: Vec<Id>,
    powers: Vec<Id>,
    prob: Probability,
}

fn describe(gens: &[Id], order: usize) -> String {
    let ids: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
    format!("<{}> of order {order}", ids.join(", "))
}

fn is_closed(g: &Group, set: &[Id]) -> bool {
    set.iter()
        .all(|&a| set.iter().all(|&b| set.binary_search(&g.mul(a, b)).is_ok()))
}

fn subgroups_for(g: &Group, budget: &StructuralBudget) -> (Vec<Subgroup>, bool) {
    if g.order() <= budget.exhaustive_up_to {
        if let Some(all) = g.subgroup_lattice(budget.max_subgroups) {
            return (all, true);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed ^ g.order() as u64);
    let mut subs = vec![g.trivial_subgroup(), g.whole(), g.center()];
    for _ in 0..budget.samples {
        let (a, b) = (g.random_element(&mut rng), g.random_element(&mut rng));
        subs.push(g.subgroup_generated(&[a, b]));
        subs.push(g.normal_closure(&g.whole(), &[a]));
    }
    if let Some(d) = g.derived_series().get(1) {
        subs.push(d.clone());
    }
    subs.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
    subs.dedup();
    (subs, false)
}

/// Evaluates every applicable statement on `g` for exponent `r`. Mathematical
/// failures are recorded in the report, never raised.
pub fn verify_suite(g: &Group, r: u64, budget: &StructuralBudget) -> VerificationReport {
    check_r(r);
    let mut report = VerificationReport::default();
    let n = g.order();
    let image = power_image(g, r);
    let prob = image.probability();

    let lower = Probability::new(1, n as u64).unwrap();
    report.assert(
        Statement::Bounds,
        format!("1/{n} <= {prob} <= 1"),
        lower <= prob && prob <= Probability::ONE,
        vec![],
    );

    let coprime = coprime_criterion(g, r);
    report.assert(
        Statement::CoprimeCriterion,
        format!("gcd({r}, {n}) = {}, prob {prob}", gcd(r, n as u64)),
        coprime == (prob == Probability::ONE),
        vec![],
    );

    let classes = g.conjugacy_classes();
    for (i, cz) in classes.centralizer_orders().into_iter().enumerate() {
        let d = gcd(r, cz as u64) as usize;
        let bad: Vec<Id> = classes
            .class(i)
            .filter(|&a| !image.fiber(a).is_multiple_of(d))
            .collect();
        let rep = classes.representatives()[i];
        report.assert(
            Statement::RootCountDivisibility,
            format!("class of {rep}: gcd({r}, {cz}) | {}", image.fiber(rep)),
            bad.is_empty(),
            bad,
        );
    }

    if g.is_abelian() {
        let torsion = image.fiber(0);
        report.assert(
            Statement::AbelianFormula,
            format!("{prob} = 1/{torsion}"),
            prob == Probability::new(1, torsion as u64).unwrap(),
            vec![],
        );
        if is_prime(r) && n > 1 {
            let exponent_divides = torsion == n;
            report.assert(
                Statement::ElementaryAbelian,
                format!("prob {prob}, exponent divides {r}: {exponent_divides}"),
                (prob == lower) == exponent_divides,
                vec![],
            );
        }
    }

    if let Some((a, b)) = g.direct_factors() {
        let (pa, pb) = (prob_r(&a, r), prob_r(&b, r));
        let expected = pa.checked_mul(pb);
        report.assert(
            Statement::ProductRule,
            format!("{prob} = {pa} * {pb}"),
            expected == Some(prob),
            vec![],
        );
    }

    let (subs, _) = subgroups_for(g, budget);
    let data: Vec<SubgroupData> = subs
        .into_iter()
        .map(|sub| {
            let powers = subgroup_powers(g, &sub, r);
            SubgroupData {
                gens: g.subgroup_generators(&sub),
                prob: Probability::ratio(powers.len(), sub.order()),
                powers,
                sub,
            }
        })
        .collect();

    let g_ratio = prob.as_ratio();
    for h in &data {
        let lhs = h.prob.as_ratio() / Ratio::from_integer(n as u128);
        report.assert(
            Statement::SubgroupBound,
            format!(
                "H = {}: {}/{n} <= {prob}",
                describe(&h.gens, h.sub.order()),
                h.prob
            ),
            lhs <= g_ratio,
            h.gens.clone(),
        );
    }

    for nsub in data.iter().filter(|h| g.is_normal(&h.sub)) {
        let quotient = g.quotient(&nsub.sub).expect("normality checked");
        let pq = prob_r(&quotient, r);
        report.assert(
            Statement::QuotientBound,
            format!(
                "N = {}: {prob} <= {pq}",
                describe(&nsub.gens, nsub.sub.order())
            ),
            prob <= pq,
            nsub.gens.clone(),
        );
    }

    for (i, a) in data.iter().enumerate() {
        for b in &data[i..] {
            let meet = a.sub.intersection(&b.sub);
            if a.sub.order() * b.sub.order() != n * meet.order()
                || !g.commuting_subgroups(&a.sub, &b.sub)
            {
                continue;
            }
            let instance = format!(
                "A = {}, B = {}",
                describe(&a.gens, a.sub.order()),
                describe(&b.gens, b.sub.order())
            );
            if !is_closed(g, &a.powers) || !is_closed(g, &b.powers) {
                report.push(
                    Statement::CentralProduct,
                    instance,
                    Outcome::Degenerate {
                        reason: "A^r or B^r is not closed under multiplication".into(),
                    },
                );
                continue;
            }
            let common = a
                .powers
                .iter()
                .filter(|x| b.powers.binary_search(x).is_ok())
                .count() as u128;
            let uncorrected = a.prob.as_ratio() * b.prob.as_ratio() / Ratio::from_integer(common);
            let corrected = uncorrected * Ratio::from_integer(meet.order() as u128);
            let mut witness = a.gens.clone();
            witness.extend(&b.gens);
            report.assert(
                Statement::CentralProduct,
                instance.clone(),
                corrected == g_ratio,
                witness,
            );
            if !meet.is_trivial() {
                report.push(
                    Statement::CentralProductLiteral,
                    format!("{instance}, |A ∩ B| = {}", meet.order()),
                    Outcome::Observed {
                        holds: uncorrected == g_ratio,
                    },
                );
            }
        }
    }

    if is_prime(r) && g.is_solvable() {
        let sylow = g.sylow_subgroup(r);
        let bound = Probability::new(1, sylow.order() as u64).unwrap();
        report.assert(
            Statement::SylowBound,
            format!("1/{} <= {prob}", sylow.order()),
            bound <= prob,
            g.subgroup_generators(&sylow),
        );
    }

    report
}

/// For prime `r`, checks `|x| ∈ {|x^r|, r |x^r|}` for every element.
pub fn root_order_check(g: &Group, r: u64) -> Result<VerificationReport> {
    if !is_prime(r) {
        return Err(Error::NonPrime(r));
    }
    let orders = g.element_orders(Execution::default());
    let bad: Vec<Id> = (0..g.order())
        .filter(|&x| {
            let a = orders[g.pow(x, r)];
            orders[x] != a && orders[x] != r * a
        })
        .collect();
    let mut report = VerificationReport::default();
    report.assert(
        Statement::RootOrder,
        format!("all {} elements, r = {r}", g.order()),
        bad.is_empty(),
        bad,
    );
    Ok(report)
}
