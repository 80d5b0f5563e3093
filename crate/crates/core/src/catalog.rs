//! The builtin group corpus and catalog-wide verification.

use serde::Serialize;

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::groups::Group;
use crate::par::{self, Execution};
use crate::roots::{
    power_image, root_order_check, verify_suite, StructuralBudget, VerificationReport,
};
use crate::spec_parser::{parse_spec, realize, GroupSpec};

/// Every group of order at most 24 up to isomorphism (74 of them), then a
/// few larger ones. Names are informal; the DSL text is what gets built.
pub const BUILTIN: &[(&str, &str)] = &[
    ("C1", "C1"),
    ("C2", "C2"),
    ("C3", "C3"),
    ("C4", "C4"),
    ("C2^2", "C2^2"),
    ("C5", "C5"),
    ("C6", "C6"),
    ("S3", "S3"),
    ("C7", "C7"),
    ("C8", "C8"),
    ("C4xC2", "C4 x C2"),
    ("C2^3", "C2^3"),
    ("D4", "D4"),
    ("Q8", "Q8"),
    ("C9", "C9"),
    ("C3^2", "C3^2"),
    ("C10", "C10"),
    ("D5", "D5"),
    ("C11", "C11"),
    ("C12", "C12"),
    ("C6xC2", "C6 x C2"),
    ("A4", "A4"),
    ("D6", "D6"),
    ("Dic3", "Perm[(1 2 3), (1 2)(4 5 6 7)]"),
    ("C13", "C13"),
    ("C14", "C14"),
    ("D7", "D7"),
    ("C15", "C15"),
    ("C16", "C16"),
    ("C4^2", "C4^2"),
    ("C2^2:C4", "Perm[(1 3)(2 4)(5 6)(7 8)(9 11)(10 12)(13 14)(15 16), (1 5 9 13)(2 6 10 14)(3 7 11 15)(4 8 12 16)]"),
    ("C4:C4", "Perm[(1 2 3 4)(5 8 7 6)(9 10 11 12)(13 16 15 14), (1 5 9 13)(2 6 10 14)(3 7 11 15)(4 8 12 16)]"),
    ("C8xC2", "C8 x C2"),
    ("M16", "Perm[(1 2 3 4 5 6 7 8), (2 6)(4 8)]"),
    ("D8", "D8"),
    ("QD16", "Perm[(1 2 3 4 5 6 7 8), (2 4)(3 7)(6 8)]"),
    ("Q16", "Perm[(1 2 3 4 5 6 7 8)(9 16 15 14 13 12 11 10), (1 9 5 13)(2 10 6 14)(3 11 7 15)(4 12 8 16)]"),
    ("C4xC2^2", "C4 x C2^2"),
    ("D4xC2", "D4 x C2"),
    ("Q8xC2", "Q8 x C2"),
    ("Pauli", "Perm[(1 3)(2 12)(4 10)(5 7)(6 16)(8 14)(9 11)(13 15), (1 2)(3 4)(5 6)(7 8)(9 10)(11 12)(13 14)(15 16), (1 5 9 13)(2 6 10 14)(3 7 11 15)(4 8 12 16)]"),
    ("C2^4", "C2^4"),
    ("C17", "C17"),
    ("C18", "C18"),
    ("C6xC3", "C6 x C3"),
    ("D9", "D9"),
    ("S3xC3", "S3 x C3"),
    ("C3^2:C2", "Perm[(1 2 3), (4 5 6), (1 2)(4 5)]"),
    ("C19", "C19"),
    ("C20", "C20"),
    ("C10xC2", "C10 x C2"),
    ("D10", "D10"),
    ("Dic5", "Perm[(1 2 3 4 5), (2 5)(3 4)(6 7 8 9)]"),
    ("F20", "Perm[(1 2 3 4 5), (2 3 5 4)]"),
    ("C21", "C21"),
    ("C7:C3", "Perm[(1 2 3 4 5 6 7), (2 3 5)(4 7 6)]"),
    ("C22", "C22"),
    ("D11", "D11"),
    ("C23", "C23"),
    ("C24", "C24"),
    ("C12xC2", "C12 x C2"),
    ("C6xC2^2", "C6 x C2^2"),
    ("S4", "S4"),
    ("SL(2,3)", "SL(2,3)"),
    ("D12", "D12"),
    ("A4xC2", "A4 x C2"),
    ("S3xC4", "S3 x C4"),
    ("S3xC2^2", "S3 x C2^2"),
    ("Q8xC3", "Q8 x C3"),
    ("D4xC3", "D4 x C3"),
    ("Dic3xC2", "Perm[(1 2 3), (1 2)(4 5 6 7)] x C2"),
    ("C3:C8", "Perm[(1 2 3), (1 2)(4 5 6 7 8 9 10 11)]"),
    ("Dic6", "Perm[(1 2 3 4 5 6 7 8 9 10 11 12)(13 24 23 22 21 20 19 18 17 16 15 14), (1 13 7 19)(2 14 8 20)(3 15 9 21)(4 16 10 22)(5 17 11 23)(6 18 12 24)]"),
    ("C3:D4", "Perm[(1 2 3), (1 2)(4 5 6 7), (4 6)]"),
    ("GL(2,3)", "GL(2,3)"),
    ("S4xC2", "S4 x C2"),
    ("PSL(2,4)", "PSL(2,4)"),
    ("PSL(2,5)", "PSL(2,5)"),
    ("S5", "S5"),
    ("SL(2,5)", "SL(2,5)"),
    ("PSL(2,7)", "PSL(2,7)"),
];

/// Number of leading [`BUILTIN`] entries that form the census of orders up to 24.
pub const SMALL_CENSUS: usize = 74;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub spec: GroupSpec,
}

impl CatalogEntry {
    pub fn realize(&self, cap: usize) -> Result<Group> {
        realize(&self.spec, cap)
    }
}

pub fn builtin() -> Vec<CatalogEntry> {
    BUILTIN
        .iter()
        .map(|(name, text)| CatalogEntry {
            name: name.to_string(),
            spec: parse_spec(text).expect("builtin catalog entries parse"),
        })
        .collect()
}

/// One DSL spec per line. Blank lines and `#` comments are skipped. A line
/// `name = spec` gives the entry a name; otherwise the DSL text is the name.
pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (name, body) = match line.split_once('=') {
            Some((n, b)) => (n.trim().to_string(), b.trim()),
            None => (line.to_string(), line),
        };
        let spec = parse_spec(body).map_err(|e| match e {
            Error::Semantic(m) => Error::Semantic(format!("line {}: {m}", lineno + 1)),
            other => Error::InvalidParameter(format!("line {}: {other}", lineno + 1)),
        })?;
        out.push(CatalogEntry { name, spec });
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupResult {
    pub group: String,
    pub spec: String,
    pub order: usize,
    pub r: u64,
    pub image_size: usize,
    pub report: VerificationReport,
}

impl GroupResult {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

/// Realizes every entry, then runs the verification suite (and the root-order
/// check for prime `r`) on each `(group, r)` pair. Results come back in
/// catalog order, then by `r`, whatever the execution strategy.
pub fn verify_catalog(
    entries: &[CatalogEntry],
    rs: &[u64],
    budget: &StructuralBudget,
    cap: usize,
    exec: Execution,
) -> Result<Vec<GroupResult>> {
    let groups = par::map_slice(exec, entries, |e| e.realize(cap))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let work: Vec<(usize, u64)> = (0..entries.len())
        .flat_map(|i| rs.iter().map(move |&r| (i, r)))
        .collect();
    par::map_slice(exec, &work, |&(i, r)| {
        let g = &groups[i];
        let mut report = verify_suite(g, r, budget);
        if is_prime(r) {
            report.extend(root_order_check(g, r)?);
        }
        Ok(GroupResult {
            group: entries[i].name.clone(),
            spec: entries[i].spec.to_string(),
            order: g.order(),
            r,
            image_size: power_image(g, r).image_size(),
            report,
        })
    })
    .into_iter()
    .collect()
}
