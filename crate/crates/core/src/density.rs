//! Exact-arithmetic construction of groups whose `Prob_r` approaches a given
//! target, plus the two accumulation-point witnesses (near 0 and near 1).
//!
//! `H_k` stands for a group with an elementary abelian Sylow r-subgroup of
//! rank k and `Prob_r = 1 - r^-k`. For r = 2 these exist concretely as
//! `PSL(2, 2^k)`, and `PSL(2,5)` also has the rank-2 profile.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::roots::{prob_r_with, Probability};
use crate::spec_parser::{realize, GroupSpec};

fn ser_ratio<S: Serializer>(v: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn pow(r: u64, k: u32) -> BigInt {
    num_traits::pow(BigInt::from(r), k as usize)
}

/// `(r^k - 1) / r^k`.
pub fn band_edge(r: u64, k: u32) -> BigRational {
    let d = pow(r, k);
    BigRational::new(&d - 1, d)
}

/// Parses `NUM/DEN` or a bare integer.
pub fn parse_ratio(text: &str) -> Result<BigRational> {
    let bad = || Error::InvalidParameter(format!("not a rational: {text:?}"));
    let (n, d) = match text.trim().split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(n, d))
}

#[derive(Clone, Debug)]
pub struct Stop {
    pub eps: BigRational,
    pub max_steps: usize,
}

impl Default for Stop {
    fn default() -> Self {
        Stop {
            eps: BigRational::new(1.into(), 10_000.into()),
            max_steps: 64,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DensityStep {
    pub n: u32,
    #[serde(serialize_with = "ser_ratio")]
    pub s: BigRational,
    #[serde(serialize_with = "ser_ratio")]
    pub r_factor: BigRational,
    /// Product of the earlier factors.
    #[serde(serialize_with = "ser_ratio")]
    pub partial_before: BigRational,
    /// `y / partial_before`.
    #[serde(serialize_with = "ser_ratio")]
    pub y_ratio: BigRational,
    /// `r^-m` times the product of factors up to and including this one.
    #[serde(serialize_with = "ser_ratio")]
    pub predicted: BigRational,
    pub predicted_decimal: f64,
    pub error_decimal: f64,
}

impl DensityStep {
    pub fn invariant_holds(&self) -> bool {
        self.s <= self.y_ratio && self.y_ratio < self.r_factor
    }
}

/// Symbolic `C_r^m x H_{k1} x H_{k2} x ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Descriptor {
    pub r: u64,
    pub m: u32,
    pub ranks: Vec<u32>,
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.m > 0 {
            parts.push(format!("C_{}^{}", self.r, self.m));
        }
        parts.extend(self.ranks.iter().map(|k| format!("H_{k}")));
        if parts.is_empty() {
            return write!(f, "1");
        }
        write!(f, "{}", parts.join(" × "))
    }
}

impl Descriptor {
    /// Probability the descriptor stands for, `r^-m * prod (1 - r^-k)`.
    pub fn probability(&self) -> BigRational {
        let base = BigRational::new(BigInt::one(), pow(self.r, self.m));
        self.ranks
            .iter()
            .fold(base, |acc, &k| acc * band_edge(self.r, k))
    }

    /// A concrete group with this profile, when every factor has one.
    /// Only r = 2 is supported, with ranks up to 4.
    pub fn realization(&self) -> Option<GroupSpec> {
        if self.r != 2 {
            return None;
        }
        let mut terms = Vec::new();
        if self.m > 0 {
            terms.push(GroupSpec::ElementaryPower(
                Box::new(GroupSpec::Cyclic(2)),
                self.m,
            ));
        }
        for &k in &self.ranks {
            terms.push(h_factor(k)?);
        }
        Some(match terms.len() {
            0 => GroupSpec::Cyclic(1),
            1 => terms.pop().unwrap(),
            _ => GroupSpec::Product(terms),
        })
    }

    /// Order of [`Descriptor::realization`] without building it.
    pub fn realized_order(&self) -> Option<u128> {
        self.realization()?;
        let mut order = 1u128 << self.m;
        for &k in &self.ranks {
            let q = if k == 2 { 5 } else { 1u128 << k };
            let h = if q % 2 == 0 {
                q * (q * q - 1)
            } else {
                q * (q * q - 1) / 2
            };
            order = order.checked_mul(h)?;
        }
        Some(order)
    }
}

fn h_factor(k: u32) -> Option<GroupSpec> {
    match k {
        1 => Some(GroupSpec::Psl2(2)),
        2 => Some(GroupSpec::Psl2(5)),
        3 | 4 => Some(GroupSpec::Psl2(1 << k)),
        _ => None,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DensityTrace {
    pub r: u64,
    #[serde(serialize_with = "ser_ratio")]
    pub x: BigRational,
    pub m: u32,
    #[serde(serialize_with = "ser_ratio")]
    pub y: BigRational,
    pub steps: Vec<DensityStep>,
    pub converged: bool,
}

impl DensityTrace {
    /// Descriptor after the first `steps` factors.
    pub fn descriptor_at(&self, steps: usize) -> Descriptor {
        Descriptor {
            r: self.r,
            m: self.m,
            ranks: self.steps[..steps].iter().map(|s| s.n + 1).collect(),
        }
    }

    pub fn descriptor(&self) -> Descriptor {
        self.descriptor_at(self.steps.len())
    }

    pub fn final_predicted(&self) -> Option<&BigRational> {
        self.steps.last().map(|s| &s.predicted)
    }
}

fn check_prime(r: u64) -> Result<()> {
    if is_prime(r) {
        Ok(())
    } else {
        Err(Error::NonPrime(r))
    }
}

/// Largest `n >= 0` with `1 - r^-n <= y`, for `0 < y < 1`.
fn band(y: &BigRational, r: u64) -> u32 {
    let (num, den) = (y.numer(), y.denom());
    let gap = den - num;
    let r = BigInt::from(r);
    let mut n = 0;
    let mut rn = &r * &gap;
    while rn <= *den {
        n += 1;
        rn *= &r;
    }
    n
}

/// Runs the greedy factorization of `x` into `r^-m` times band factors.
pub fn density_trace(x: &BigRational, r: u64, stop: &Stop) -> Result<DensityTrace> {
    check_prime(r)?;
    if !x.is_positive() || *x >= BigRational::one() {
        return Err(Error::InvalidTarget(x.to_string()));
    }
    if !stop.eps.is_positive() {
        return Err(Error::InvalidParameter("eps must be positive".into()));
    }
    let rr = BigRational::from_integer(r.into());
    let mut m = 0;
    let mut y = x.clone();
    while &y * &rr < BigRational::one() {
        y *= &rr;
        m += 1;
    }
    let scale = BigRational::new(BigInt::one(), pow(r, m));
    let mut b = BigRational::one();
    let mut steps = Vec::new();
    let mut converged = false;
    while steps.len() < stop.max_steps {
        let yi = &y / &b;
        let n = band(&yi, r);
        let r_factor = band_edge(r, n + 1);
        let predicted = &scale * &b * &r_factor;
        let err = (&predicted - x).abs();
        steps.push(DensityStep {
            n,
            s: band_edge(r, n),
            partial_before: b.clone(),
            y_ratio: yi,
            predicted_decimal: predicted.to_f64().unwrap_or(f64::NAN),
            error_decimal: err.to_f64().unwrap_or(f64::NAN),
            predicted,
            r_factor: r_factor.clone(),
        });
        b *= r_factor;
        if err < stop.eps {
            converged = true;
            break;
        }
    }
    Ok(DensityTrace {
        r,
        x: x.clone(),
        m,
        y,
        steps,
        converged,
    })
}

fn least_rank(r: u64, eps: &BigRational) -> Result<u32> {
    check_prime(r)?;
    if !eps.is_positive() || *eps > BigRational::one() {
        return Err(Error::InvalidParameter(format!(
            "eps must lie in (0, 1], got {eps}"
        )));
    }
    let mut k = 1;
    while BigRational::new(BigInt::one(), pow(r, k)) >= *eps {
        k += 1;
    }
    Ok(k)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub descriptor: String,
    pub rank: u32,
    #[serde(serialize_with = "ser_ratio")]
    pub probability: BigRational,
    /// DSL text of a concrete group with this probability, if known.
    pub realization: Option<String>,
}

/// The elementary abelian `C_r^k` with the least k such that `r^-k < eps`.
pub fn small_prob_group(r: u64, eps: &BigRational) -> Result<Witness> {
    let k = least_rank(r, eps)?;
    let spec = GroupSpec::ElementaryPower(Box::new(GroupSpec::Cyclic(r)), k);
    Ok(Witness {
        descriptor: format!("C_{r}^{k}"),
        rank: k,
        probability: BigRational::new(BigInt::one(), pow(r, k)),
        realization: Some(spec.to_string()),
    })
}

/// `H_k` with the least k such that `r^-k < eps`.
pub fn near_one_prob(r: u64, eps: &BigRational) -> Result<Witness> {
    let k = least_rank(r, eps)?;
    let d = Descriptor {
        r,
        m: 0,
        ranks: vec![k],
    };
    Ok(Witness {
        descriptor: format!("H_{k}"),
        rank: k,
        probability: band_edge(r, k),
        realization: d.realization().map(|s| s.to_string()),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RealizationCheck {
    pub steps: usize,
    pub descriptor: String,
    pub group: String,
    pub order: usize,
    #[serde(serialize_with = "ser_ratio")]
    pub predicted: BigRational,
    pub enumerated: Probability,
    pub agree: bool,
}

/// Builds and enumerates every realizable prefix of the trace whose order is
/// within `cap`, stopping at the first one that is not.
pub fn cross_check(
    trace: &DensityTrace,
    cap: usize,
    exec: Execution,
) -> Result<Vec<RealizationCheck>> {
    let mut out = Vec::new();
    for steps in 1..=trace.steps.len() {
        let d = trace.descriptor_at(steps);
        let (Some(spec), Some(order)) = (d.realization(), d.realized_order()) else {
            break;
        };
        if order > cap as u128 {
            break;
        }
        let g = realize(&spec, cap)?;
        let enumerated = prob_r_with(&g, trace.r, exec);
        let predicted = trace.steps[steps - 1].predicted.clone();
        let agree = BigRational::new(enumerated.num().into(), enumerated.den().into()) == predicted;
        out.push(RealizationCheck {
            steps,
            descriptor: d.to_string(),
            group: spec.to_string(),
            order: g.order(),
            predicted,
            enumerated,
            agree,
        });
    }
    Ok(out)
}

/// Runs many traces, in parallel when asked. Results keep input order.
pub fn density_traces(
    targets: &[(BigRational, u64)],
    stop: &Stop,
    exec: Execution,
) -> Vec<Result<DensityTrace>> {
    par::map_slice(exec, targets, |(x, r)| density_trace(x, *r, stop))
}

/// Reduces `num/den` and checks it lies strictly between 0 and 1.
pub fn target(num: i64, den: i64) -> Result<BigRational> {
    if den == 0 {
        return Err(Error::DivisionByZero);
    }
    let g = num.gcd(&den);
    let x = BigRational::new((num / g).into(), (den / g).into());
    if !x.is_positive() || x >= BigRational::one() {
        return Err(Error::InvalidTarget(x.to_string()));
    }
    Ok(x)
}
