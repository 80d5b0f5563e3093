//! SL(2,q), PSL(2,q) and GL(2,q) as enumerated matrix groups, the conjugacy
//! data of PSL(2,q) measured against the classical centralizer list, and the
//! closed form `(q+1) / (2(q-1))` for the proportion of r-th powers.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::arith::{gcd, is_prime, prime_power};
use crate::error::{Error, Result};
use crate::fields::{Field, FieldElement};
use crate::groups::{generate, Backend, Domain, Enumerated, Group, Id};
use crate::par::Execution;
use crate::roots::{power_image_with, Probability};

/// Largest field order accepted by the PSL constructors.
pub const MAX_Q: u64 = 61;

/// A 2x2 matrix `[[a11, a12], [a21, a22]]` with entries as field indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2(pub [FieldElement; 4]);

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

/// 2x2 matrices over a field; with `projective` set, each matrix is replaced
/// by a canonical representative of `{M, -M}`.
#[derive(Clone, Debug)]
pub struct Mat2Domain {
    field: Arc<Field>,
    projective: bool,
}

impl Mat2Domain {
    pub fn new(field: Arc<Field>, projective: bool) -> Self {
        Mat2Domain { field, projective }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn matrix(&self, entries: [FieldElement; 4]) -> Mat2 {
        self.canonical(Mat2(entries))
    }

    pub fn det(&self, m: &Mat2) -> FieldElement {
        let f = &self.field;
        let [a, b, c, d] = m.0;
        f.sub(f.mul(a, d), f.mul(b, c))
    }

    pub fn mul_raw(&self, x: &Mat2, y: &Mat2) -> Mat2 {
        let f = &self.field;
        let [a, b, c, d] = x.0;
        let [e, g, h, k] = y.0;
        Mat2([
            f.add(f.mul(a, e), f.mul(b, h)),
            f.add(f.mul(a, g), f.mul(b, k)),
            f.add(f.mul(c, e), f.mul(d, h)),
            f.add(f.mul(c, g), f.mul(d, k)),
        ])
    }

    /// First nonzero entry (reading a11, a12, a21, a22) must have index no
    /// larger than its negation; otherwise the matrix is negated.
    pub fn canonical(&self, m: Mat2) -> Mat2 {
        if !self.projective {
            return m;
        }
        let f = &self.field;
        let lead = m.0.iter().copied().find(|e| !e.is_zero());
        match lead {
            Some(e) if f.neg(e).index() < e.index() => Mat2(m.0.map(|x| f.neg(x))),
            _ => m,
        }
    }

    /// Multiplicative order of an invertible matrix, ignoring projectivity.
    pub fn raw_order(&self, m: &Mat2) -> u64 {
        let id = self.identity_raw();
        let mut x = *m;
        let mut k = 1;
        while x != id {
            x = self.mul_raw(&x, m);
            k += 1;
        }
        k
    }

    fn identity_raw(&self) -> Mat2 {
        let (z, o) = (self.field.zero(), self.field.one());
        Mat2([o, z, z, o])
    }
}

impl Domain for Mat2Domain {
    type Elem = Mat2;

    fn identity(&self) -> Mat2 {
        self.identity_raw()
    }

    fn op(&self, a: &Mat2, b: &Mat2) -> Mat2 {
        self.canonical(self.mul_raw(a, b))
    }

    fn inverse(&self, m: &Mat2) -> Mat2 {
        let f = &self.field;
        let inv_det = f
            .inv(self.det(m))
            .expect("matrix groups contain invertible matrices only");
        let [a, b, c, d] = m.0;
        self.canonical(Mat2([
            f.mul(d, inv_det),
            f.mul(f.neg(b), inv_det),
            f.mul(f.neg(c), inv_det),
            f.mul(a, inv_det),
        ]))
    }
}

/// An enumerated matrix group together with its matrices.
pub struct LinearGroup {
    inner: Enumerated<Mat2Domain>,
}

impl LinearGroup {
    pub fn group(&self) -> &Group {
        self.inner.group()
    }

    pub fn domain(&self) -> &Mat2Domain {
        self.inner.domain()
    }

    pub fn field(&self) -> &Field {
        self.inner.domain().field()
    }

    pub fn matrix(&self, id: Id) -> Mat2 {
        *self.inner.element(id)
    }

    /// Id of `m` (after canonicalization in the projective case).
    pub fn id_of(&self, m: &Mat2) -> Option<Id> {
        self.inner.id_of(&self.domain().canonical(*m))
    }
}

fn transvections(field: &Field) -> Vec<[FieldElement; 4]> {
    let (z, o) = (field.zero(), field.one());
    let nu = field.primitive_element();
    let mut gens = Vec::new();
    // {1, nu, .., nu^(f-1)} spans GF(q) over GF(p)
    for i in 0..field.degree() {
        let t = field.pow(nu, i as i64).expect("nu is nonzero");
        gens.push([o, t, z, o]);
        gens.push([o, z, t, o]);
    }
    gens
}

fn linear_group(
    field: &Field,
    projective: bool,
    extra: Vec<[FieldElement; 4]>,
    cap: usize,
) -> Result<LinearGroup> {
    let domain = Mat2Domain::new(Arc::new(field.clone()), projective);
    let gens: Vec<Mat2> = transvections(field)
        .into_iter()
        .chain(extra)
        .map(|e| domain.matrix(e))
        .collect();
    let inner = generate(domain, &gens, Backend::Matrix, cap)?;
    Ok(LinearGroup { inner })
}

/// SL(2,q), generated by the elementary transvections.
pub fn sl2(field: &Field, cap: usize) -> Result<LinearGroup> {
    linear_group(field, false, vec![], cap)
}

/// PSL(2,q) = SL(2,q) / {±I}.
pub fn psl2(field: &Field, cap: usize) -> Result<LinearGroup> {
    linear_group(field, true, vec![], cap)
}

/// GL(2,q): SL(2,q) together with `diag(nu, 1)`.
pub fn gl2(field: &Field, cap: usize) -> Result<LinearGroup> {
    let (z, o) = (field.zero(), field.one());
    let diag = [field.primitive_element(), z, z, o];
    linear_group(field, false, vec![diag], cap)
}

pub fn sl2_order(q: u64) -> u64 {
    q * (q * q - 1)
}

pub fn psl2_order(q: u64) -> u64 {
    sl2_order(q) / gcd(2, q - 1)
}

fn check_q(q: u64) -> Result<Field> {
    if q > MAX_Q {
        return Err(Error::InvalidParameter(format!("q = {q} exceeds {MAX_Q}")));
    }
    Field::new(q)
}

/// One class representative of PSL(2,q) with its measured centralizer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassRep {
    pub label: String,
    pub id: Id,
    pub element_order: u64,
    pub class_index: usize,
    pub measured_centralizer: usize,
    pub expected_centralizer: Option<usize>,
}

impl ClassRep {
    pub fn matches(&self) -> Option<bool> {
        self.expected_centralizer
            .map(|e| e == self.measured_centralizer)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PslClassData {
    pub q: u64,
    pub p: u64,
    pub order: usize,
    pub class_count: usize,
    /// Whether the representative ranges `a^l`, `b^m` for `1 <= l, m <= (q-1)/4`
    /// and the expected centralizer list apply (q odd, q ≡ 1 mod 4).
    pub full_ranges: bool,
    pub representatives: Vec<ClassRep>,
    pub distinct_classes: bool,
    pub class_equation_holds: bool,
}

impl PslClassData {
    pub fn mismatches(&self) -> impl Iterator<Item = &ClassRep> {
        self.representatives
            .iter()
            .filter(|r| r.matches() == Some(false))
    }
}

/// First matrix of SL(2,q) in lexicographic entry order with multiplicative
/// order exactly `q + 1`.
pub fn singer_element(field: &Field) -> Result<Mat2> {
    let domain = Mat2Domain::new(Arc::new(field.clone()), false);
    let target = field.order() as u64 + 1;
    let one = field.one();
    for a in field.elements() {
        for b in field.elements() {
            for c in field.elements() {
                for d in field.elements() {
                    let m = Mat2([a, b, c, d]);
                    if domain.det(&m) == one && domain.raw_order(&m) == target {
                        return Ok(m);
                    }
                }
            }
        }
    }
    Err(Error::SearchFailed(format!(
        "no element of order {target} in SL(2,{})",
        field.order()
    )))
}

/// Builds the representatives `1, c, d, a^l, b^m` inside PSL(2,q) and measures
/// their centralizers by enumeration.
pub fn theorem_elements(field: &Field, cap: usize) -> Result<PslClassData> {
    let q = field.order() as u64;
    if q < 3 {
        return Err(Error::InvalidParameter("q must be at least 3".into()));
    }
    let psl = psl2(field, cap)?;
    let g = psl.group();
    let n = g.order();
    let classes = g.conjugacy_classes();
    let centralizers = classes.centralizer_orders();
    let class_equation_holds = classes
        .sizes()
        .iter()
        .zip(&centralizers)
        .all(|(s, c)| s * c == n)
        && classes.sizes().iter().sum::<usize>() == n;

    let (z, o) = (field.zero(), field.one());
    let nu = field.primitive_element();
    let nu_inv = field.inv(nu)?;
    let domain = psl.domain();
    let lookup = |m: [FieldElement; 4]| {
        psl.id_of(&Mat2(m))
            .ok_or_else(|| Error::SearchFailed(format!("{} not found in PSL(2,{q})", Mat2(m))))
    };
    let c = lookup([o, z, o, o])?;
    let d = lookup([o, z, nu, o])?;
    let a = lookup([nu, z, z, nu_inv])?;
    let b = psl
        .id_of(&domain.canonical(singer_element(field)?))
        .expect("SL image lies in PSL");

    let p = field.characteristic() as u64;
    let full_ranges = q % 4 == 1;
    let quarter = (q - 1) / 4;
    let mut reps: Vec<(String, Id, Option<usize>)> = Vec::new();
    let expect = |v: u64| full_ranges.then_some(v as usize);
    reps.push(("1".into(), 0, Some(n)));
    reps.push(("c".into(), c, expect(p)));
    reps.push(("d".into(), d, expect(p)));
    if full_ranges {
        for l in 1..=quarter {
            let expected = if l == quarter { q - 1 } else { (q - 1) / 2 };
            reps.push((format!("a^{l}"), g.pow(a, l), Some(expected as usize)));
        }
        for m in 1..=quarter {
            reps.push((format!("b^{m}"), g.pow(b, m), Some(q.div_ceil(2) as usize)));
        }
    } else {
        reps.push(("a".into(), a, None));
        reps.push(("b".into(), b, None));
    }

    let representatives: Vec<ClassRep> = reps
        .into_iter()
        .map(|(label, id, expected)| {
            let class_index = classes.class_of(id);
            ClassRep {
                label,
                id,
                element_order: g.element_order(id),
                class_index,
                measured_centralizer: centralizers[class_index],
                expected_centralizer: expected,
            }
        })
        .collect();
    let mut indices: Vec<usize> = representatives.iter().map(|r| r.class_index).collect();
    indices.sort_unstable();
    indices.dedup();
    Ok(PslClassData {
        q,
        p,
        order: n,
        class_count: classes.len(),
        full_ranges,
        distinct_classes: indices.len() == representatives.len(),
        representatives,
        class_equation_holds,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PslFormula {
    pub q: u64,
    pub r: u64,
    pub value: Probability,
    /// q odd, q ≡ 1 mod 4, r = (q-1)/2 and r prime.
    pub hypothesis_ok: bool,
}

/// `(q+1) / (2(q-1))`, equal to `(r+1) / (2r)` when `r = (q-1)/2`.
pub fn psl2_prob_formula(q: u64, r: u64) -> Result<PslFormula> {
    if q < 4 {
        return Err(Error::InvalidParameter(format!("q = {q} < 4")));
    }
    if prime_power(q).is_none() {
        return Err(Error::NotAPrimePower(q));
    }
    let value = Probability::new(q + 1, 2 * (q - 1))?;
    let hypothesis_ok = q % 2 == 1 && q % 4 == 1 && 2 * r == q - 1 && is_prime(r);
    Ok(PslFormula {
        q,
        r,
        value,
        hypothesis_ok,
    })
}

/// `((q-3)/2) |G| / (q-1)`, the number of elements without an r-th root
/// predicted for odd q; `None` when it is not an integer.
pub fn predicted_non_roots(q: u64, order: u64) -> Option<u64> {
    if q.is_multiple_of(2) || q < 3 {
        return None;
    }
    let num = (q - 3) * order;
    let den = 2 * (q - 1);
    num.is_multiple_of(den).then_some(num / den)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub q: u64,
    pub r: u64,
    pub formula: Probability,
    pub hypothesis_ok: bool,
    pub order: Option<usize>,
    pub image_size: Option<usize>,
    pub enumerated: Option<Probability>,
    pub agree: Option<bool>,
    pub note: Option<String>,
}

/// Formula against enumeration on every `(q, r)` cell, rows ordered by `(q, r)`.
pub fn psl2_scan(qs: &[u64], rs: &[u64], cap: usize, exec: Execution) -> Result<Vec<ScanRow>> {
    let mut qs = qs.to_vec();
    qs.sort_unstable();
    qs.dedup();
    let mut rs = rs.to_vec();
    rs.sort_unstable();
    rs.dedup();
    if let Some(&r) = rs.iter().find(|&&r| r < 2) {
        return Err(Error::InvalidParameter(format!("r = {r} < 2")));
    }
    let fields = qs.iter().map(|&q| check_q(q)).collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    for (field, &q) in fields.iter().zip(&qs) {
        let group = match psl2(field, cap) {
            Ok(g) => Ok(g),
            Err(e @ Error::CapExceeded { .. }) => Err(e.to_string()),
            Err(e) => return Err(e),
        };
        for &r in &rs {
            let formula = psl2_prob_formula(q, r)?;
            let mut row = ScanRow {
                q,
                r,
                formula: formula.value,
                hypothesis_ok: formula.hypothesis_ok,
                order: None,
                image_size: None,
                enumerated: None,
                agree: None,
                note: None,
            };
            match &group {
                Ok(g) => {
                    let image = power_image_with(g.group(), r, exec);
                    let prob = image.probability();
                    row.order = Some(g.group().order());
                    row.image_size = Some(image.image_size());
                    row.enumerated = Some(prob);
                    row.agree = Some(prob == formula.value);
                }
                Err(msg) => row.note = Some(msg.clone()),
            }
            rows.push(row);
        }
    }
    Ok(rows)
}
