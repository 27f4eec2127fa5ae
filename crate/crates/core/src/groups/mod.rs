//! Groups with exact normal forms, their Cayley balls, and wallspaces built
//! from translates of H-walls.
//!
//! Elements of free abelian groups are integer vectors. Elements of free
//! products of cyclic groups (free groups included) are reduced syllable
//! sequences. Generators are written `a`, `b`, ... and their inverses `A`,
//! `B`, ...

mod analysis;
mod ball;
mod hwall;
mod relcocompact;

pub use analysis::{codim_one_analysis, left_multiplication, CodimOneReport, ComponentInfo};
pub use ball::{cayley_ball, CayleyBall};
pub use hwall::{
    build_hwall, generate_hwall_system, FrontierStatus, HWallReport, HWallSpec, HWallSystem, SideSet, SubgroupSpec,
    WallOrigin,
};
pub use relcocompact::{rel_cocompact_check, ClassifiedCube, CubeClass, DecompositionReport};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum GroupSpec {
    FreeAbelian { rank: usize },
    Free { rank: usize },
    /// Free product of cyclic groups; order 0 stands for the integers.
    FreeProduct { orders: Vec<u32> },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Vector(Vec<i64>),
    /// Syllables `(factor, exponent)`; adjacent factors differ and exponents
    /// are nonzero and reduced.
    Word(Vec<(usize, i64)>),
}

const MAX_RANK: usize = 26;

impl GroupSpec {
    pub fn validate(&self) -> Result<()> {
        let rank = self.rank();
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::Invalid(format!("group rank must be between 1 and {MAX_RANK}")));
        }
        if let Self::FreeProduct { orders } = self {
            if orders.contains(&1) {
                return Err(Error::Invalid("trivial cyclic factor".into()));
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        match self {
            Self::FreeAbelian { rank } | Self::Free { rank } => *rank,
            Self::FreeProduct { orders } => orders.len(),
        }
    }

    fn order(&self, factor: usize) -> u32 {
        match self {
            Self::FreeProduct { orders } => orders[factor],
            _ => 0,
        }
    }

    pub fn is_abelian(&self) -> bool {
        matches!(self, Self::FreeAbelian { .. })
    }

    pub fn identity(&self) -> Element {
        match self {
            Self::FreeAbelian { rank } => Element::Vector(vec![0; *rank]),
            _ => Element::Word(Vec::new()),
        }
    }

    /// Generator `i` raised to `e`.
    pub fn power_of_generator(&self, i: usize, e: i64) -> Element {
        match self {
            Self::FreeAbelian { rank } => {
                let mut v = vec![0; *rank];
                v[i] = e;
                Element::Vector(v)
            }
            _ => {
                let e = self.reduce(i, e);
                Element::Word(if e == 0 { Vec::new() } else { vec![(i, e)] })
            }
        }
    }

    /// The symmetric generating set in canonical order: `a, A, b, B, ...`,
    /// omitting the inverse of an involution.
    pub fn generators(&self) -> Vec<(String, Element)> {
        let mut out = Vec::new();
        for i in 0..self.rank() {
            let c = (b'a' + i as u8) as char;
            out.push((c.to_string(), self.power_of_generator(i, 1)));
            if self.order(i) != 2 {
                out.push((c.to_ascii_uppercase().to_string(), self.power_of_generator(i, -1)));
            }
        }
        out
    }

    /// Exponent representative of least absolute value, positive on ties.
    fn reduce(&self, factor: usize, e: i64) -> i64 {
        let n = self.order(factor) as i64;
        if n == 0 {
            return e;
        }
        let r = e.rem_euclid(n);
        if 2 * r > n {
            r - n
        } else {
            r
        }
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        match (a, b) {
            (Element::Vector(x), Element::Vector(y)) => Element::Vector(x.iter().zip(y).map(|(p, q)| p + q).collect()),
            (Element::Word(x), Element::Word(y)) => {
                let mut out = x.clone();
                for &(f, e) in y {
                    match out.last_mut() {
                        Some(last) if last.0 == f => {
                            let s = self.reduce(f, last.1 + e);
                            if s == 0 {
                                out.pop();
                            } else {
                                last.1 = s;
                            }
                        }
                        _ => out.push((f, e)),
                    }
                }
                Element::Word(out)
            }
            _ => panic!("mixed element kinds"),
        }
    }

    pub fn inv(&self, a: &Element) -> Element {
        match a {
            Element::Vector(x) => Element::Vector(x.iter().map(|p| -p).collect()),
            Element::Word(x) => Element::Word(x.iter().rev().map(|&(f, e)| (f, self.reduce(f, -e))).collect()),
        }
    }

    /// Word length with respect to [`generators`](Self::generators).
    pub fn length(&self, a: &Element) -> u64 {
        match a {
            Element::Vector(x) => x.iter().map(|p| p.unsigned_abs()).sum(),
            Element::Word(x) => x.iter().map(|(_, e)| e.unsigned_abs()).sum(),
        }
    }

    pub fn distance(&self, a: &Element, b: &Element) -> u64 {
        self.length(&self.mul(&self.inv(a), b))
    }

    /// Parses `e`, a word in the generator letters, or for free abelian
    /// groups a vector such as `(1,-2)`.
    pub fn parse(&self, s: &str) -> Result<Element> {
        let s = s.trim();
        if self.is_abelian() && s.starts_with('(') {
            let inner = s
                .strip_prefix('(')
                .and_then(|t| t.strip_suffix(')'))
                .ok_or_else(|| Error::Parse(format!("bad vector {s:?}")))?;
            let v: Vec<i64> = inner
                .split(',')
                .map(|t| t.trim().parse::<i64>().map_err(|e| Error::Parse(format!("bad vector {s:?}: {e}"))))
                .collect::<Result<_>>()?;
            if v.len() != self.rank() {
                return Err(Error::Parse(format!("vector {s:?} has the wrong length")));
            }
            return Ok(Element::Vector(v));
        }
        let mut out = self.identity();
        if s == "e" {
            return Ok(out);
        }
        for c in s.chars() {
            let i = (c.to_ascii_lowercase() as usize).wrapping_sub('a' as usize);
            if !c.is_ascii_alphabetic() || i >= self.rank() {
                return Err(Error::Parse(format!("unknown generator {c:?} in {s:?}")));
            }
            let e = if c.is_ascii_uppercase() { -1 } else { 1 };
            out = self.mul(&out, &self.power_of_generator(i, e));
        }
        Ok(out)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vector(v) => {
                let parts: Vec<String> = v.iter().map(i64::to_string).collect();
                write!(f, "({})", parts.join(","))
            }
            Element::Word(w) if w.is_empty() => write!(f, "e"),
            Element::Word(w) => {
                for &(i, e) in w {
                    let c = (b'a' + i as u8) as char;
                    let c = if e < 0 { c.to_ascii_uppercase() } else { c };
                    for _ in 0..e.unsigned_abs() {
                        write!(f, "{c}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_group_reduction() {
        let g = GroupSpec::Free { rank: 2 };
        let x = g.parse("abA").unwrap();
        let y = g.parse("aBB").unwrap();
        assert_eq!(g.mul(&x, &y).to_string(), "aB");
        assert_eq!(g.mul(&x, &g.inv(&x)), g.identity());
        assert_eq!(g.length(&x), 3);
        assert_eq!(g.parse("aA").unwrap().to_string(), "e");
    }

    #[test]
    fn finite_factors_wrap() {
        let g = GroupSpec::FreeProduct { orders: vec![2, 3] };
        assert_eq!(g.parse("aa").unwrap(), g.identity());
        assert_eq!(g.parse("bb").unwrap().to_string(), "B");
        assert_eq!(g.generators().len(), 3);
        let x = g.parse("abab").unwrap();
        assert_eq!(g.length(&x), 4);
        assert_eq!(g.mul(&x, &g.inv(&x)), g.identity());
    }

    #[test]
    fn even_order_ties_are_positive() {
        let g = GroupSpec::FreeProduct { orders: vec![4] };
        assert_eq!(g.parse("AA").unwrap().to_string(), "aa");
        assert_eq!(g.inv(&g.parse("aa").unwrap()).to_string(), "aa");
    }

    #[test]
    fn abelian_parsing() {
        let g = GroupSpec::FreeAbelian { rank: 2 };
        assert_eq!(g.parse("aaB").unwrap(), Element::Vector(vec![2, -1]));
        assert_eq!(g.parse("(2,-1)").unwrap().to_string(), "(2,-1)");
        assert!(g.parse("c").is_err());
        assert_eq!(g.distance(&g.parse("a").unwrap(), &g.parse("B").unwrap()), 2);
    }
}
