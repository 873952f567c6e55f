//! Representations: the natural module 𝒱, the module 𝒮 of traceless
//! form-selfadjoint maps (type C), the adjoint module and the trivial module.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::algebra::{eigen_to_weight, MatrixLieAlgebra, Weight};
use super::forms::NaturalSpace;
use crate::error::{Error, Result};
use crate::exactla::sparse::kernel_of_rows;
use crate::exactla::{Accumulator, Coordinates, Rational, RowEchelon, SparseMatrix, SparseVec};
use crate::rootsys::Family;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModuleKind {
    Natural,
    Symmetric,
    Adjoint,
    Trivial,
}

/// A module whose vectors are realized inside 𝒱 (natural), inside gl(𝒱)
/// (symmetric and adjoint), or as scalars (trivial).
#[derive(Clone, Debug)]
pub struct RepModule {
    kind: ModuleKind,
    family: Family,
    natural: NaturalSpace,
    basis: Vec<SparseVec>,
    labels: Vec<String>,
    weights: Vec<Weight>,
    coords: Coordinates,
}

fn ambient_vectors_of(alg: &MatrixLieAlgebra) -> Vec<SparseVec> {
    alg.basis().iter().map(SparseMatrix::flatten).collect()
}

/// Builds the requested module of `alg`. The symmetric module exists only
/// for type C and is computed as a kernel, then re-based by weights.
pub fn build_module(alg: &MatrixLieAlgebra, kind: ModuleKind) -> Result<RepModule> {
    let natural = alg.natural().clone();
    let family = alg.family();
    let (basis, labels): (Vec<SparseVec>, Vec<String>) = match kind {
        ModuleKind::Natural => {
            let d = natural.dim();
            (
                (0..d).map(SparseVec::unit).collect(),
                natural.space().labels().to_vec(),
            )
        }
        ModuleKind::Adjoint => (ambient_vectors_of(alg), alg.labels().to_vec()),
        ModuleKind::Trivial => (vec![SparseVec::unit(0)], vec!["1".to_string()]),
        ModuleKind::Symmetric => {
            let form = match (family, alg.ambient()) {
                (Family::C, Some(f)) => f,
                _ => {
                    return Err(Error::Domain(format!(
                        "the module S is defined for type C only, not {family}"
                    )))
                }
            };
            let d = natural.dim();
            let mut rows = form.adjoint_conditions(1);
            rows.push(SparseVec::from_entries(
                (0..d).map(|i| (i * d + i, Rational::one())),
            ));
            let raw = kernel_of_rows(&rows, d * d);
            (raw, Vec::new())
        }
    };
    let mut m = RepModule {
        kind,
        family,
        natural,
        coords: Coordinates::new(&basis),
        weights: Vec::new(),
        labels,
        basis,
    };
    let dec = weight_decompose(&m, alg.cartan())?;
    if kind == ModuleKind::Symmetric {
        let mut basis = Vec::new();
        let mut labels = Vec::new();
        for (w, vecs) in dec.iter() {
            for (k, v) in vecs.iter().enumerate() {
                basis.push(m.to_ambient(v));
                labels.push(if w.is_zero() {
                    format!("s0:{}", k + 1)
                } else {
                    format!("s:{w}")
                });
            }
        }
        m.coords = Coordinates::new(&basis);
        m.basis = basis;
        m.labels = labels;
    }
    let dec = weight_decompose(&m, alg.cartan())?;
    let mut weights = vec![Weight::zero(0); m.dim()];
    for (w, vecs) in dec {
        for v in vecs {
            if v.nnz() != 1 {
                return Err(Error::Decomposition(format!(
                    "basis vector mixes weights at {w}"
                )));
            }
            weights[v.leading().expect("nonzero").0] = w.clone();
        }
    }
    m.weights = weights;
    Ok(m)
}

impl RepModule {
    pub fn kind(&self) -> ModuleKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn natural(&self) -> &NaturalSpace {
        &self.natural
    }

    /// Positions of basis vectors of each weight.
    pub fn weight_index(&self) -> BTreeMap<Weight, Vec<usize>> {
        let mut out: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for (i, w) in self.weights.iter().enumerate() {
            out.entry(w.clone()).or_default().push(i);
        }
        out
    }

    /// Realization of a module vector in 𝒱 or in flattened gl(𝒱).
    pub fn to_ambient(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, c) in v.iter() {
            acc.add_vec(&self.basis[i], c);
        }
        acc.finish()
    }

    /// Basis vector `i` as a matrix (symmetric and adjoint modules).
    pub fn basis_matrix(&self, i: usize) -> Option<SparseMatrix> {
        match self.kind {
            ModuleKind::Symmetric | ModuleKind::Adjoint => {
                let sp = self.natural.space().clone();
                Some(SparseMatrix::unflatten(sp.clone(), sp, &self.basis[i]))
            }
            _ => None,
        }
    }

    /// Module coordinates of an ambient vector, if it lies in the module.
    pub fn coordinates(&self, ambient: &SparseVec) -> Option<SparseVec> {
        self.coords.solve(ambient)
    }

    /// x·v for `x ∈ gl(𝒱)` and a module vector `v` in module coordinates.
    pub fn act(&self, x: &SparseMatrix, v: &SparseVec) -> Result<SparseVec> {
        let amb = self.to_ambient(v);
        let image = match self.kind {
            ModuleKind::Trivial => return Ok(SparseVec::new()),
            ModuleKind::Natural => x.apply(&amb),
            ModuleKind::Symmetric | ModuleKind::Adjoint => {
                let sp = self.natural.space().clone();
                let y = SparseMatrix::unflatten(sp.clone(), sp, &amb);
                x.commutator(&y)?.flatten()
            }
        };
        self.coordinates(&image)
            .ok_or_else(|| Error::Internal("action leaves the module".into()))
    }

    /// The matrix of `x` acting on the module basis.
    pub fn action_matrix(&self, x: &SparseMatrix) -> Result<Vec<SparseVec>> {
        (0..self.dim())
            .map(|i| self.act(x, &SparseVec::unit(i)))
            .collect()
    }
}

/// Eigenvalue signature of an ambient coordinate under diagonal Cartan
/// generators.
fn ambient_signature(
    kind: ModuleKind,
    d: usize,
    diag: &[Vec<Rational>],
    idx: usize,
) -> Vec<Rational> {
    match kind {
        ModuleKind::Trivial => vec![Rational::zero(); diag.len()],
        ModuleKind::Natural => diag.iter().map(|h| h[idx].clone()).collect(),
        ModuleKind::Symmetric | ModuleKind::Adjoint => {
            let (r, c) = (idx / d, idx % d);
            diag.iter().map(|h| &h[r] - &h[c]).collect()
        }
    }
}

/// Simultaneous eigenspace decomposition over the given Cartan generators,
/// in module coordinates, keyed by ε-weight. Each space is returned as a
/// reduced row-echelon basis.
pub fn weight_decompose(
    m: &RepModule,
    cartan: &[SparseMatrix],
) -> Result<BTreeMap<Weight, Vec<SparseVec>>> {
    let d = m.natural.dim();
    let mut diag = Vec::with_capacity(cartan.len());
    for h in cartan {
        if h.entries().any(|(r, c, _)| r != c) {
            return Err(Error::Decomposition(
                "Cartan generator is not diagonal in the 𝒱 basis".into(),
            ));
        }
        diag.push((0..d).map(|i| h.get(i, i)).collect::<Vec<_>>());
    }
    let mut pieces: BTreeMap<Vec<Rational>, RowEchelon> = BTreeMap::new();
    for i in 0..m.dim() {
        let mut split: BTreeMap<Vec<Rational>, Vec<(usize, Rational)>> = BTreeMap::new();
        for (idx, c) in m.basis[i].iter() {
            split
                .entry(ambient_signature(m.kind, d, &diag, idx))
                .or_default()
                .push((idx, c.clone()));
        }
        for (sig, entries) in split {
            let part = SparseVec::from_entries(entries);
            let coords = m.coordinates(&part).ok_or_else(|| {
                Error::Decomposition(format!(
                    "weight component of basis vector {} lies outside the module",
                    m.labels.get(i).map(String::as_str).unwrap_or("?")
                ))
            })?;
            pieces.entry(sig).or_default().insert(&coords);
        }
    }
    let mut out = BTreeMap::new();
    let mut total = 0;
    for (sig, ech) in pieces {
        let vecs: Vec<SparseVec> = ech.rows().cloned().collect();
        for v in &vecs {
            for (h, lambda) in cartan.iter().zip(&sig) {
                if m.act(h, v)? != v.scale(lambda) {
                    return Err(Error::Decomposition(format!(
                        "vector {:?} is not an eigenvector",
                        m.to_ambient(v)
                    )));
                }
            }
        }
        total += vecs.len();
        out.insert(eigen_to_weight(m.family, m.natural.n(), &sig), vecs);
    }
    if total != m.dim() {
        return Err(Error::Decomposition(format!(
            "weight spaces have total dimension {total}, module has {}",
            m.dim()
        )));
    }
    Ok(out)
}

/// Checks `[x, y]·v = x·(y·v) − y·(x·v)` for all basis `x, y` of `alg` and
/// all basis `v`, returning the first failing pair.
pub fn module_axiom_witness(alg: &MatrixLieAlgebra, m: &RepModule) -> Result<Option<String>> {
    let acts: Vec<Vec<SparseVec>> = alg
        .basis()
        .par_iter()
        .map(|x| m.action_matrix(x))
        .collect::<Result<_>>()?;
    let compose = |a: &[SparseVec], b: &[SparseVec]| -> Vec<SparseVec> {
        b.iter()
            .map(|col| {
                let mut acc = Accumulator::new();
                for (k, c) in col.iter() {
                    acc.add_vec(&a[k], c);
                }
                acc.finish()
            })
            .collect()
    };
    let n = alg.dim();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let fails: Vec<Option<String>> = pairs
        .par_iter()
        .map(|&(i, j)| -> Result<Option<String>> {
            let z = alg.bracket_coords(i, j)?;
            let mut lhs: Vec<Accumulator> = vec![Accumulator::new(); m.dim()];
            for (k, c) in z.iter() {
                for (col, acc) in acts[k].iter().zip(lhs.iter_mut()) {
                    acc.add_vec(col, c);
                }
            }
            let xy = compose(&acts[i], &acts[j]);
            let yx = compose(&acts[j], &acts[i]);
            for (v, acc) in lhs.into_iter().enumerate() {
                if acc.finish() != xy[v].sub(&yx[v]) {
                    return Ok(Some(format!(
                        "[{}, {}] on {}",
                        alg.labels()[i],
                        alg.labels()[j],
                        m.labels()[v]
                    )));
                }
            }
            Ok(None)
        })
        .collect::<Result<_>>()?;
    Ok(fails.into_iter().flatten().next())
}
