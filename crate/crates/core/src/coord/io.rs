//! JSON quadruple files and the preset-or-file loader.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::presets::{preset, PRESET_NAMES};
use super::quadruple::{validate_quadruple, CoordinateQuadruple};
use crate::error::{Error, Result};
use crate::exactla::{Accumulator, Rational, SparseVec};
use crate::rootsys::Family;

/// On-disk form. `structure_constants` entries `[i, j, k, c]` mean
/// `a_i a_j ∋ c·a_k`; `star` entries `[i, j, c]` mean `a_i* ∋ c·a_j`;
/// `action` entries `[i, k, l, c]` mean `a_i·c_k ∋ c·c_l`; `f` entries
/// `[k, l, i, c]` mean `f(c_k, c_l) ∋ c·a_i`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuadrupleFile {
    #[serde(rename = "type")]
    pub family: Family,
    pub a_dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a_labels: Option<Vec<String>>,
    pub structure_constants: Vec<(usize, usize, usize, Rational)>,
    pub star: Vec<(usize, usize, Rational)>,
    #[serde(default)]
    pub c_dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c_labels: Option<Vec<String>>,
    #[serde(default)]
    pub action: Vec<(usize, usize, usize, Rational)>,
    #[serde(default)]
    pub f: Vec<(usize, usize, usize, Rational)>,
}

fn check(i: usize, n: usize, what: &str) -> Result<()> {
    if i >= n {
        return Err(Error::Shape(format!(
            "{what} index {i} out of range (dimension {n})"
        )));
    }
    Ok(())
}

fn table3(
    entries: &[(usize, usize, usize, Rational)],
    n1: usize,
    n2: usize,
    n3: usize,
    what: &str,
) -> Result<Vec<Vec<SparseVec>>> {
    let mut acc: Vec<Vec<Accumulator>> = vec![vec![Accumulator::new(); n2]; n1];
    for (i, j, k, c) in entries {
        check(*i, n1, what)?;
        check(*j, n2, what)?;
        check(*k, n3, what)?;
        acc[*i][*j].add(*k, c);
    }
    Ok(acc
        .into_iter()
        .map(|r| r.into_iter().map(Accumulator::finish).collect())
        .collect())
}

fn entries3(table: &[Vec<SparseVec>]) -> Vec<(usize, usize, usize, Rational)> {
    let mut out = Vec::new();
    for (i, row) in table.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            for (k, c) in v.iter() {
                out.push((i, j, k, c.clone()));
            }
        }
    }
    out
}

fn labels_or(given: Option<Vec<String>>, n: usize, prefix: &str) -> Result<Vec<String>> {
    match given {
        Some(l) if l.len() != n => Err(Error::Shape(format!(
            "{} labels given for dimension {n}",
            l.len()
        ))),
        Some(l) => Ok(l),
        None => Ok((1..=n).map(|i| format!("{prefix}{i}")).collect()),
    }
}

impl QuadrupleFile {
    pub fn into_quadruple(self) -> Result<CoordinateQuadruple> {
        let (na, nc) = (self.a_dim, self.c_dim);
        let mut star: Vec<Accumulator> = vec![Accumulator::new(); na];
        for (i, j, c) in &self.star {
            check(*i, na, "star")?;
            check(*j, na, "star")?;
            star[*i].add(*j, c);
        }
        Ok(CoordinateQuadruple {
            family: self.family,
            a_labels: labels_or(self.a_labels, na, "a")?,
            a_mul: table3(&self.structure_constants, na, na, na, "structure constant")?,
            star: star.into_iter().map(Accumulator::finish).collect(),
            c_labels: labels_or(self.c_labels, nc, "c")?,
            action: table3(&self.action, na, nc, nc, "action")?,
            f: table3(&self.f, nc, nc, na, "f")?,
        })
    }

    pub fn from_quadruple(q: &CoordinateQuadruple) -> Self {
        let mut star = Vec::new();
        for (i, v) in q.star.iter().enumerate() {
            for (j, c) in v.iter() {
                star.push((i, j, c.clone()));
            }
        }
        QuadrupleFile {
            family: q.family,
            a_dim: q.a_dim(),
            a_labels: Some(q.a_labels.clone()),
            structure_constants: entries3(&q.a_mul),
            star,
            c_dim: q.c_dim(),
            c_labels: Some(q.c_labels.clone()),
            action: entries3(&q.action),
            f: entries3(&q.f),
        }
    }
}

pub fn quadruple_from_json(text: &str) -> Result<CoordinateQuadruple> {
    serde_json::from_str::<QuadrupleFile>(text)?.into_quadruple()
}

pub fn quadruple_to_json(q: &CoordinateQuadruple) -> Result<String> {
    Ok(serde_json::to_string_pretty(
        &QuadrupleFile::from_quadruple(q),
    )?)
}

/// Loads a preset (`symplectic:m=2`) or a JSON file, then validates it.
pub fn load_quadruple(source: &str) -> Result<CoordinateQuadruple> {
    let head = source.split([':', '(']).next().unwrap_or_default().trim();
    let q = if PRESET_NAMES.contains(&head) {
        preset(source)?
    } else if Path::new(source).exists() {
        quadruple_from_json(&std::fs::read_to_string(source)?)?
    } else {
        return Err(Error::Config(format!(
            "{source:?} is neither a preset ({}) nor a readable file",
            PRESET_NAMES.join(", ")
        )));
    };
    validate_quadruple(&q).into_result()?;
    Ok(q)
}
