//! A small text language for naming groups.
//!
//! ```text
//! spec    := term ( "x" term )*
//! term    := family ( "^" INT )?
//! family  := "C" INT | "S" INT | "A" INT | "D" INT | "Q8"
//!          | "PSL(2," INT ")" | "SL(2," INT ")" | "GL(2," INT ")"
//!          | "Perm[" cycles ( "," cycles )* "]"
//! cycles  := ( "(" INT ( " " INT )* ")" )+
//! ```
//!
//! Whitespace is ignored between tokens (it only separates the points of a
//! cycle). `^` binds tighter than `x`, and `x` is the direct product.
//! `Dn` is the dihedral group of order `2n`.

use std::fmt;

use crate::arith::prime_power;
use crate::error::{Error, Result};
use crate::fields::Field;
use crate::groups::{
    abelian_group, alternating, dihedral, direct_product, generate, quaternion8, symmetric,
    Backend, Group, Perm, PermDomain,
};
use crate::psl2;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(u64),
    ElementaryPower(Box<GroupSpec>, u32),
    Symmetric(u64),
    Alternating(u64),
    Dihedral(u64),
    Quaternion8,
    Psl2(u64),
    Sl2(u64),
    Gl2(u64),
    /// Generators in 1-based cycle notation.
    PermGen(Vec<Vec<Vec<usize>>>),
    Product(Vec<GroupSpec>),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::ElementaryPower(base, k) => write!(f, "{base}^{k}"),
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::Alternating(n) => write!(f, "A{n}"),
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
            GroupSpec::Quaternion8 => write!(f, "Q8"),
            GroupSpec::Psl2(q) => write!(f, "PSL(2,{q})"),
            GroupSpec::Sl2(q) => write!(f, "SL(2,{q})"),
            GroupSpec::Gl2(q) => write!(f, "GL(2,{q})"),
            GroupSpec::PermGen(gens) => {
                write!(f, "Perm[")?;
                for (i, cycles) in gens.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    for c in cycles {
                        let pts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
                        write!(f, "({})", pts.join(" "))?;
                    }
                }
                write!(f, "]")
            }
            GroupSpec::Product(terms) => {
                for (i, t) in terms.iter().enumerate() {
                    if i > 0 {
                        write!(f, " x ")?;
                    }
                    write!(f, "{t}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {offset}: expected {}", expected.join(" or "))]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<String>,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T, ParseError> {
        Err(ParseError {
            offset: self.pos.min(self.src.len()),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn eat(&mut self, lit: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<(), ParseError> {
        if self.eat(lit) {
            Ok(())
        } else {
            self.fail(&[&format!("\"{lit}\"")])
        }
    }

    fn int(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.fail(&["integer"]);
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse().map_err(|_| ParseError {
            offset: start,
            expected: vec!["integer below 2^64".into()],
        })
    }

    fn spec(&mut self) -> Result<GroupSpec, ParseError> {
        let mut terms = vec![self.term()?];
        while self.peek() == Some(b'x') {
            self.pos += 1;
            terms.push(self.term()?);
        }
        if self.peek().is_some() {
            return self.fail(&["\"x\"", "\"^\"", "end of input"]);
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            GroupSpec::Product(terms)
        })
    }

    fn term(&mut self) -> Result<GroupSpec, ParseError> {
        let base = self.family()?;
        if self.eat("^") {
            let start = self.pos;
            let k = self.int()?;
            let k = u32::try_from(k).map_err(|_| ParseError {
                offset: start,
                expected: vec!["exponent below 2^32".into()],
            })?;
            return Ok(GroupSpec::ElementaryPower(Box::new(base), k));
        }
        Ok(base)
    }

    fn linear(&mut self) -> Result<u64, ParseError> {
        self.expect("(")?;
        self.expect("2")?;
        self.expect(",")?;
        let q = self.int()?;
        self.expect(")")?;
        Ok(q)
    }

    fn family(&mut self) -> Result<GroupSpec, ParseError> {
        const FAMILIES: [&str; 9] = [
            "\"C\"", "\"S\"", "\"A\"", "\"D\"", "\"Q8\"", "\"PSL\"", "\"SL\"", "\"GL\"", "\"Perm\"",
        ];
        self.skip_ws();
        if self.eat("PSL") {
            return Ok(GroupSpec::Psl2(self.linear()?));
        }
        if self.eat("SL") {
            return Ok(GroupSpec::Sl2(self.linear()?));
        }
        if self.eat("GL") {
            return Ok(GroupSpec::Gl2(self.linear()?));
        }
        if self.eat("Perm") {
            return self.perm();
        }
        if self.eat("Q8") {
            return Ok(GroupSpec::Quaternion8);
        }
        let ctor: fn(u64) -> GroupSpec = match self.peek() {
            Some(b'C') => GroupSpec::Cyclic,
            Some(b'S') => GroupSpec::Symmetric,
            Some(b'A') => GroupSpec::Alternating,
            Some(b'D') => GroupSpec::Dihedral,
            _ => return self.fail(&FAMILIES),
        };
        self.pos += 1;
        Ok(ctor(self.int()?))
    }

    fn perm(&mut self) -> Result<GroupSpec, ParseError> {
        self.expect("[")?;
        let mut gens = vec![self.cycles()?];
        loop {
            if self.eat(",") {
                gens.push(self.cycles()?);
            } else if self.eat("]") {
                return Ok(GroupSpec::PermGen(gens));
            } else {
                return self.fail(&["\",\"", "\"]\"", "\"(\""]);
            }
        }
    }

    fn cycles(&mut self) -> Result<Vec<Vec<usize>>, ParseError> {
        let mut cycles = Vec::new();
        self.expect("(")?;
        loop {
            let mut cycle = vec![self.point()?];
            while !self.eat(")") {
                if !matches!(self.peek(), Some(b'0'..=b'9')) {
                    return self.fail(&["integer", "\")\""]);
                }
                cycle.push(self.point()?);
            }
            cycles.push(cycle);
            if !self.eat("(") {
                return Ok(cycles);
            }
        }
    }

    fn point(&mut self) -> Result<usize, ParseError> {
        let start = self.pos;
        let v = self.int()?;
        usize::try_from(v).map_err(|_| ParseError {
            offset: start,
            expected: vec!["point index".into()],
        })
    }
}

/// Parses and validates a group description.
pub fn parse_spec(text: &str) -> Result<GroupSpec> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let spec = parser.spec()?;
    validate(&spec)?;
    Ok(spec)
}

fn validate(spec: &GroupSpec) -> Result<()> {
    let fail = |msg: String| Err(Error::Semantic(msg));
    match spec {
        GroupSpec::Cyclic(0) => fail("cyclic order must be at least 1".into()),
        GroupSpec::Symmetric(n) | GroupSpec::Alternating(n) if *n < 2 => {
            fail(format!("{spec}: degree must be at least 2"))
        }
        GroupSpec::Dihedral(n) if *n < 3 => {
            fail(format!("{spec}: dihedral parameter must be at least 3"))
        }
        GroupSpec::Psl2(q) | GroupSpec::Sl2(q) | GroupSpec::Gl2(q)
            if *q < 2 || prime_power(*q).is_none() =>
        {
            fail(format!("{spec}: {q} is not a prime power"))
        }
        GroupSpec::ElementaryPower(base, k) => {
            if *k == 0 {
                return fail(format!("{spec}: exponent must be at least 1"));
            }
            validate(base)
        }
        GroupSpec::PermGen(gens) => {
            for cycles in gens {
                let degree = cycles.iter().flatten().copied().max().unwrap_or(1);
                Perm::from_cycles(degree, cycles)?;
            }
            Ok(())
        }
        GroupSpec::Product(terms) => terms.iter().try_for_each(validate),
        _ => Ok(()),
    }
}

fn field(q: u64) -> Result<Field> {
    Field::new(q)
}

/// Builds the group a description names. Products fold left.
pub fn realize(spec: &GroupSpec, cap: usize) -> Result<Group> {
    validate(spec)?;
    let n = |v: u64| usize::try_from(v).map_err(|_| Error::CapExceeded { cap });
    match spec {
        GroupSpec::Cyclic(1) => Ok(Group::trivial()),
        GroupSpec::Cyclic(d) => abelian_group(&[n(*d)?], cap),
        GroupSpec::ElementaryPower(base, k) => match base.as_ref() {
            GroupSpec::Cyclic(1) => Ok(Group::trivial()),
            GroupSpec::Cyclic(d) => abelian_group(&vec![n(*d)?; *k as usize], cap),
            other => {
                let factor = realize(other, cap)?;
                let mut acc = factor.clone();
                for _ in 1..*k {
                    acc = direct_product(&acc, &factor, cap)?;
                }
                Ok(acc)
            }
        },
        GroupSpec::Symmetric(d) => symmetric(n(*d)?, cap),
        GroupSpec::Alternating(d) => alternating(n(*d)?, cap),
        GroupSpec::Dihedral(d) => dihedral(n(*d)?, cap),
        GroupSpec::Quaternion8 => {
            if cap < 8 {
                return Err(Error::CapExceeded { cap });
            }
            Ok(quaternion8())
        }
        GroupSpec::Psl2(q) => Ok(psl2::psl2(&field(*q)?, cap)?.group().clone()),
        GroupSpec::Sl2(q) => Ok(psl2::sl2(&field(*q)?, cap)?.group().clone()),
        GroupSpec::Gl2(q) => Ok(psl2::gl2(&field(*q)?, cap)?.group().clone()),
        GroupSpec::PermGen(gens) => {
            let degree = gens.iter().flatten().flatten().copied().max().unwrap_or(1);
            let perms = gens
                .iter()
                .map(|c| Perm::from_cycles(degree, c))
                .collect::<Result<Vec<_>>>()?;
            Ok(generate(PermDomain::new(degree), &perms, Backend::Permutation, cap)?.into_group())
        }
        GroupSpec::Product(terms) => {
            let mut acc = realize(&terms[0], cap)?;
            for t in &terms[1..] {
                acc = direct_product(&acc, &realize(t, cap)?, cap)?;
            }
            Ok(acc)
        }
    }
}

/// Parses and realizes in one step.
pub fn realize_str(text: &str, cap: usize) -> Result<Group> {
    realize(&parse_spec(text)?, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_examples() {
        assert_eq!(
            parse_spec("C2^3 x S4").unwrap(),
            GroupSpec::Product(vec![
                GroupSpec::ElementaryPower(Box::new(GroupSpec::Cyclic(2)), 3),
                GroupSpec::Symmetric(4)
            ])
        );
        assert_eq!(parse_spec("PSL(2,5)").unwrap(), GroupSpec::Psl2(5));
        assert_eq!(parse_spec(" PSL ( 2 , 5 ) ").unwrap(), GroupSpec::Psl2(5));
        assert_eq!(
            parse_spec("Perm[(1 2 3)(4 5), (1 2)]").unwrap(),
            GroupSpec::PermGen(vec![vec![vec![1, 2, 3], vec![4, 5]], vec![vec![1, 2]]])
        );
        assert_eq!(
            parse_spec("SL(2,3)xQ8").unwrap().to_string(),
            "SL(2,3) x Q8"
        );
        assert_eq!(parse_spec("GL(2,3)").unwrap(), GroupSpec::Gl2(3));
    }

    #[test]
    fn reports_errors() {
        let err = parse_spec("C2 x").unwrap_err();
        match err {
            Error::Parse(e) => {
                assert_eq!(e.offset, 4);
                assert!(e.expected.contains(&"\"C\"".to_string()));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_spec("C2 C3"),
            Err(Error::Parse(ParseError { offset: 3, .. }))
        ));
        assert!(matches!(parse_spec("PSL(3,5)"), Err(Error::Parse(_))));
        assert!(matches!(parse_spec("Perm[(1 2]"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_spec(""),
            Err(Error::Parse(ParseError { offset: 0, .. }))
        ));
        assert!(matches!(parse_spec("PSL(2,6)"), Err(Error::Semantic(_))));
        assert!(matches!(parse_spec("D2"), Err(Error::Semantic(_))));
        assert!(matches!(parse_spec("C0"), Err(Error::Semantic(_))));
        assert!(matches!(parse_spec("C2^0"), Err(Error::Semantic(_))));
        assert!(matches!(
            parse_spec("Perm[(1 2 1)]"),
            Err(Error::Semantic(_))
        ));
        assert!(matches!(parse_spec("Perm[(0 1)]"), Err(Error::Semantic(_))));
        assert!(matches!(
            parse_spec("C99999999999999999999999"),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn realizes_examples() {
        let cap = crate::DEFAULT_CAP;
        let klein = realize_str("C2^2", cap).unwrap();
        assert_eq!((klein.order(), klein.exponent()), (4, 2));
        assert_eq!(realize_str("PSL(2,5)", cap).unwrap().order(), 60);
        let d4 = realize_str("D4", cap).unwrap();
        assert_eq!(d4.order(), 8);
        assert!(!d4.is_abelian());
        assert_eq!(realize_str("S3^2", cap).unwrap().order(), 36);
        assert_eq!(realize_str("C1", cap).unwrap().order(), 1);
        assert_eq!(
            realize_str("Perm[(1 2 3)(4 5), (1 2)]", cap)
                .unwrap()
                .order(),
            12
        );
        assert_eq!(
            realize_str("S9", cap).unwrap_err(),
            Error::CapExceeded { cap }
        );
        assert_eq!(realize_str("C4 x C2", cap).unwrap().order(), 8);
    }

    fn family() -> impl Strategy<Value = GroupSpec> {
        let cycle = proptest::collection::btree_set(1usize..12, 1..4)
            .prop_map(|s| s.into_iter().collect::<Vec<_>>());
        let perm =
            proptest::collection::vec(cycle, 1..3).prop_filter_map("disjoint cycles", |cs| {
                let mut seen = std::collections::HashSet::new();
                cs.iter().flatten().all(|p| seen.insert(*p)).then_some(cs)
            });
        prop_oneof![
            (1u64..50).prop_map(GroupSpec::Cyclic),
            (2u64..9).prop_map(GroupSpec::Symmetric),
            (2u64..9).prop_map(GroupSpec::Alternating),
            (3u64..30).prop_map(GroupSpec::Dihedral),
            Just(GroupSpec::Quaternion8),
            prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9]).prop_map(GroupSpec::Psl2),
            prop::sample::select(vec![2u64, 3, 4, 5]).prop_map(GroupSpec::Sl2),
            prop::sample::select(vec![2u64, 3]).prop_map(GroupSpec::Gl2),
            proptest::collection::vec(perm, 1..3).prop_map(GroupSpec::PermGen),
        ]
    }

    fn term() -> impl Strategy<Value = GroupSpec> {
        (family(), proptest::option::of(1u32..5)).prop_map(|(f, k)| match k {
            Some(k) => GroupSpec::ElementaryPower(Box::new(f), k),
            None => f,
        })
    }

    fn spec() -> impl Strategy<Value = GroupSpec> {
        proptest::collection::vec(term(), 1..4).prop_map(|mut ts| {
            if ts.len() == 1 {
                ts.pop().unwrap()
            } else {
                GroupSpec::Product(ts)
            }
        })
    }

    proptest! {
        #[test]
        fn pretty_print_round_trips(s in spec()) {
            prop_assert_eq!(parse_spec(&s.to_string()).unwrap(), s);
        }

        #[test]
        fn garbage_never_panics(text in "[CSADQPLGermx0-9^(),\\[\\] ]{0,24}") {
            if let Err(Error::Parse(e)) = parse_spec(&text) {
                prop_assert!(e.offset <= text.len());
            }
        }

        #[test]
        fn product_orders_multiply(a in term(), b in term()) {
            let cap = 5_000;
            if let (Ok(ga), Ok(gb)) = (realize(&a, cap), realize(&b, cap)) {
                if ga.order() * gb.order() <= cap {
                    let p = realize(&GroupSpec::Product(vec![a, b]), cap).unwrap();
                    prop_assert_eq!(p.order(), ga.order() * gb.order());
                }
            }
        }
    }
}
