//! Finite truncations of the locally finite root systems of types A, B, C, D
//! and BC, realized inside the ε-lattice with the form (ε_i, ε_j) = δ_ij.
//!
//! Indices run over `1..=n`. A rank-`n` system embeds into the rank-`n+1`
//! system of the same family by inclusion of index sets.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{Rational, RowEchelon, SparseVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    BC,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::A, Family::B, Family::C, Family::D, Family::BC];
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::BC => "BC",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "BC" => Ok(Family::BC),
            other => Err(Error::Config(format!("unknown family '{other}'"))),
        }
    }
}

/// An integer combination of the ε_i, stored without zero coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    coords: BTreeMap<usize, i64>,
}

impl Root {
    pub fn zero() -> Self {
        Root::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, i64)>>(pairs: I) -> Self {
        let mut coords = BTreeMap::new();
        for (i, c) in pairs {
            *coords.entry(i).or_insert(0) += c;
        }
        coords.retain(|_, c| *c != 0);
        Root { coords }
    }

    /// ε_i.
    pub fn eps(i: usize) -> Self {
        Root::from_pairs([(i, 1)])
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coords.get(&i).copied().unwrap_or(0)
    }

    pub fn coords(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coords.iter().map(|(i, c)| (*i, *c))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coords.keys().copied()
    }

    pub fn add(&self, other: &Root) -> Root {
        Root::from_pairs(self.coords().chain(other.coords()))
    }

    pub fn sub(&self, other: &Root) -> Root {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Root {
        Root {
            coords: self.coords.iter().map(|(i, c)| (*i, -c)).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Root {
        Root::from_pairs(self.coords().map(|(i, c)| (i, k * c)))
    }

    /// Halves the root when every coefficient is even.
    pub fn half(&self) -> Option<Root> {
        if self.coords.values().all(|c| c % 2 == 0) {
            Some(Root::from_pairs(self.coords().map(|(i, c)| (i, c / 2))))
        } else {
            None
        }
    }

    pub fn form(&self, other: &Root) -> i64 {
        self.coords.iter().map(|(i, c)| c * other.coeff(*i)).sum()
    }

    pub fn norm(&self) -> i64 {
        self.form(self)
    }

    /// ⟨self, α̌⟩ = 2(self, α)/(α, α), or `None` for α = 0.
    pub fn pairing(&self, alpha: &Root) -> Option<Rational> {
        let n = alpha.norm();
        (n != 0).then(|| Rational::frac(2 * self.form(alpha), n))
    }

    /// The root as a rational vector indexed by `i - 1`.
    pub fn to_sparse(&self) -> SparseVec {
        SparseVec::from_entries(self.coords().map(|(i, c)| (i - 1, Rational::from_int(c))))
    }

    /// Evaluation on a diagonal Cartan element given by its ε-coefficients.
    pub fn eval(&self, h: &BTreeMap<usize, Rational>) -> Rational {
        self.coords()
            .map(|(i, c)| h.get(&i).cloned().unwrap_or_default() * Rational::from_int(c))
            .sum()
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (i, c)) in self.coords().enumerate() {
            let sign = if c < 0 {
                "-"
            } else if k > 0 {
                "+"
            } else {
                ""
            };
            let mag = c.abs();
            if mag == 1 {
                write!(f, "{sign}e{i}")?;
            } else {
                write!(f, "{sign}{mag}e{i}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Root {
    type Err = Error;

    /// Parses the display form, e.g. `e1-e2`, `2e3`, `-e1-e4`, `0`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Root::zero());
        }
        let bad = || Error::Parse(format!("invalid root '{s}'"));
        let mut pairs = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'-' => (-1, &rest[1..]),
                b'+' => (1, &rest[1..]),
                _ => (1, rest),
            };
            if body.is_empty() {
                return Err(bad());
            }
            let end = body[1..]
                .find(['+', '-'])
                .map(|p| p + 1)
                .unwrap_or(body.len());
            let term = &body[..end];
            let (mag, idx) = term.split_once('e').ok_or_else(bad)?;
            let mag: i64 = if mag.is_empty() {
                1
            } else {
                mag.parse().map_err(|_| bad())?
            };
            let idx: usize = idx.parse().map_err(|_| bad())?;
            if idx == 0 {
                return Err(bad());
            }
            pairs.push((idx, sign * mag));
            rest = &body[end..];
        }
        Ok(Root::from_pairs(pairs))
    }
}

impl Serialize for Root {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Root {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LengthClass {
    Short,
    Long,
    Extralong,
}

impl fmt::Display for LengthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LengthClass::Short => "short",
            LengthClass::Long => "long",
            LengthClass::Extralong => "extralong",
        })
    }
}

/// A finite root system, zero included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    family: Family,
    n: usize,
    roots: BTreeSet<Root>,
}

/// Generates the rank-`n` truncation of the given family.
pub fn generate(family: Family, n: usize) -> Result<RootSystem> {
    if n == 0 {
        return Err(Error::Domain("truncation size must be positive".into()));
    }
    let mut roots = BTreeSet::new();
    roots.insert(Root::zero());
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            roots.insert(Root::from_pairs([(i, 1), (j, -1)]));
            if family != Family::A && i < j {
                for (a, b) in [(1, 1), (-1, -1)] {
                    roots.insert(Root::from_pairs([(i, a), (j, b)]));
                }
            }
        }
        if matches!(family, Family::B | Family::BC) {
            roots.insert(Root::from_pairs([(i, 1)]));
            roots.insert(Root::from_pairs([(i, -1)]));
        }
        if matches!(family, Family::C | Family::BC) {
            roots.insert(Root::from_pairs([(i, 2)]));
            roots.insert(Root::from_pairs([(i, -2)]));
        }
    }
    Ok(RootSystem { family, n, roots })
}

/// s_α(β) = β − ⟨β, α̌⟩α.
pub fn reflect(alpha: &Root, beta: &Root) -> Result<Root> {
    let p = beta
        .pairing(alpha)
        .ok_or_else(|| Error::Domain("reflection in the zero root".into()))?;
    let k = p
        .to_i64()
        .ok_or_else(|| Error::Domain(format!("non-integral pairing of {beta} with {alpha}")))?;
    Ok(beta.sub(&alpha.scale(k)))
}

impl RootSystem {
    /// A system from an explicit root set; zero is added if missing.
    pub fn from_roots(family: Family, n: usize, roots: impl IntoIterator<Item = Root>) -> Self {
        let mut roots: BTreeSet<Root> = roots.into_iter().collect();
        roots.insert(Root::zero());
        RootSystem { family, n, roots }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Truncation size |I|.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn roots(&self) -> &BTreeSet<Root> {
        &self.roots
    }

    pub fn nonzero(&self) -> impl Iterator<Item = &Root> + '_ {
        self.roots.iter().filter(|r| !r.is_zero())
    }

    pub fn contains(&self, r: &Root) -> bool {
        self.roots.contains(r)
    }

    /// Checks zero membership, negation and reflection closure, and
    /// integrality of all pairings.
    pub fn validate(&self) -> Result<()> {
        validate_roots(&self.roots)
    }

    /// Roots supported on the given index subset; for the generated families
    /// this is the same-type subsystem on those indices.
    pub fn restrict(&self, indices: &BTreeSet<usize>) -> BTreeSet<Root> {
        self.roots
            .iter()
            .filter(|r| r.support().all(|i| indices.contains(&i)))
            .cloned()
            .collect()
    }
}

fn validate_roots(roots: &BTreeSet<Root>) -> Result<()> {
    let fail = |law: &str, w: String| {
        Err(Error::Validation {
            law: law.into(),
            witness: w,
        })
    };
    if !roots.contains(&Root::zero()) {
        return fail("zero", "0 missing".into());
    }
    for a in roots.iter().filter(|r| !r.is_zero()) {
        if !roots.contains(&a.neg()) {
            return fail("negation", a.to_string());
        }
        for b in roots {
            let p = b.pairing(a).expect("nonzero root");
            if !p.is_integer() {
                return fail("integrality", format!("<{b}, {a}^> = {p}"));
            }
            let s = reflect(a, b)?;
            if !roots.contains(&s) {
                return fail("reflection", format!("s_{a}({b}) = {s}"));
            }
        }
    }
    Ok(())
}

/// Partitions the nonzero roots into short, long and extra-long classes by
/// norm: the minimal norm is short, α with α/2 short is extra-long, and the
/// rest are long.
pub fn classify_lengths(r: &RootSystem) -> BTreeMap<Root, LengthClass> {
    let min = r.nonzero().map(Root::norm).min();
    let short: BTreeSet<&Root> = r.nonzero().filter(|a| Some(a.norm()) == min).collect();
    r.nonzero()
        .map(|a| {
            let class = if short.contains(a) {
                LengthClass::Short
            } else if a.half().is_some_and(|h| short.contains(&h)) {
                LengthClass::Extralong
            } else {
                LengthClass::Long
            };
            (a.clone(), class)
        })
        .collect()
}

/// Removes every α with 2α ∈ R, keeping zero.
pub fn semidivisible(r: &RootSystem) -> RootSystem {
    let roots = r
        .roots
        .iter()
        .filter(|a| a.is_zero() || !r.roots.contains(&a.scale(2)))
        .cloned();
    let family = if r.family == Family::BC {
        Family::C
    } else {
        r.family
    };
    RootSystem::from_roots(family, r.n, roots)
}

/// Whether `s ⊆ R` is a full subsystem: a subsystem whose rational span
/// meets `R` exactly in `s`.
pub fn is_full_subsystem(s: &BTreeSet<Root>, r: &RootSystem) -> Result<bool> {
    if let Some(bad) = s.iter().find(|a| !r.contains(a)) {
        return Err(Error::Domain(format!(
            "{bad} is not a root of {}_{}",
            r.family, r.n
        )));
    }
    if validate_roots(s).is_err() {
        return Ok(false);
    }
    let span = RowEchelon::from_vectors(s.iter().map(Root::to_sparse).collect::<Vec<_>>().iter());
    Ok(r.roots
        .iter()
        .all(|a| !span.contains(&a.to_sparse()) || s.contains(a)))
}

/// Classes of the nonzero roots of `roots` under the chain relation
/// generated by nonzero pairing.
pub fn components(roots: &BTreeSet<Root>) -> Vec<BTreeSet<Root>> {
    let nz: Vec<&Root> = roots.iter().filter(|r| !r.is_zero()).collect();
    let mut seen = vec![false; nz.len()];
    let mut out = Vec::new();
    for start in 0..nz.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = BTreeSet::new();
        let mut queue = VecDeque::from([start]);
        while let Some(k) = queue.pop_front() {
            comp.insert(nz[k].clone());
            for (j, b) in nz.iter().enumerate() {
                if !seen[j] && nz[k].form(b) != 0 {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        out.push(comp);
    }
    out
}

pub fn connected_components(r: &RootSystem) -> Vec<BTreeSet<Root>> {
    components(&r.roots)
}

pub fn is_irreducible(roots: &BTreeSet<Root>) -> bool {
    components(roots).len() <= 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_text_round_trip() {
        for s in ["0", "e1-e2", "2e3", "-e1-e4", "-2e2", "e2+e5"] {
            assert_eq!(s.parse::<Root>().unwrap().to_string(), s);
        }
        assert!("x1".parse::<Root>().is_err());
        assert!("e0".parse::<Root>().is_err());
    }

    #[test]
    fn pairing_is_none_on_zero() {
        assert!(Root::eps(1).pairing(&Root::zero()).is_none());
    }
}
