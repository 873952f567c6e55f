use std::collections::BTreeSet;

use rayon::prelude::*;

use super::model::{build_model, GradedElement, GradedModel, Part};
use crate::error::{Error, Result};
use crate::exactla::sparse::kernel_of_columns;
use crate::exactla::{Accumulator, Rational, RowEchelon, SparseMatrix, SparseVec};
use crate::liealg::TruncationIdempotent;
use crate::report::{CheckRecord, WITNESS_CAP};
use crate::rootsys::Family;

/// A level `λ` with `I_0 ⊆ λ ⊆ {1, …, n}` and its idempotent 𝔍_λ.
#[derive(Clone, Debug)]
pub struct Level {
    idem: TruncationIdempotent,
}

impl Level {
    pub fn new(m: &GradedModel, subset: BTreeSet<usize>) -> Result<Self> {
        if !matches!(m.family(), Family::A | Family::C | Family::BC) {
            return Err(Error::Domain(format!(
                "level cosets are defined for types A, C and BC, not {}",
                m.family()
            )));
        }
        if let Some(i) = m.idem0().subset().iter().find(|i| !subset.contains(i)) {
            return Err(Error::Domain(format!(
                "λ must contain I_0, index {i} is missing"
            )));
        }
        let idem = TruncationIdempotent::new(m.lie_algebra().natural(), subset)?;
        Ok(Level { idem })
    }

    /// `I_0` followed by the next `extra` indices.
    pub fn extend(m: &GradedModel, extra: usize) -> Result<Self> {
        Level::new(m, (1..=m.level_size() + extra).collect())
    }

    pub fn subset(&self) -> &BTreeSet<usize> {
        self.idem.subset()
    }

    pub fn size(&self) -> usize {
        self.idem.size()
    }
}

/// `P_λ = −𝔍_0/|I_0| + 𝔍_λ/n_λ`.
pub fn level_shift(m: &GradedModel, lambda: &Level) -> Result<SparseMatrix> {
    let j0 = m.idem0();
    let c0 = -Rational::frac(1, j0.size() as i64);
    let c1 = Rational::frac(1, lambda.size() as i64);
    j0.matrix().scale(&c0).lin(lambda.idem.matrix(), &c1)
}

/// Weight of β* in the correction: ½ for C and BC, 1 for A.
fn kappa(family: Family) -> Rational {
    match family {
        Family::A => Rational::one(),
        _ => Rational::frac(1, 2),
    }
}

/// The correction `P_λ ⊗ κβ*(t)` for a tensor `t ∈ 𝔟⊗𝔟`.
pub fn level_correction(m: &GradedModel, lambda: &Level, t: &SparseVec) -> Result<SparseVec> {
    let p = level_shift(m, lambda)?;
    let bstar = m.bb().beta_star_tensor(t);
    let k = kappa(m.family());
    let mut acc = Accumulator::new();
    match m.family() {
        Family::A => m.put_g(&mut acc, &p, &bstar, &k)?,
        _ => m.put_s_mat(&mut acc, &p, &bstar, &k)?,
    }
    Ok(acc.finish())
}

/// `⟨β, β'⟩_λ = P_λ ⊗ κβ*(β, β') + ⟨β, β'⟩` for split-coordinate β, β'.
pub fn level_coset(
    m: &GradedModel,
    lambda: &Level,
    beta: &SparseVec,
    beta2: &SparseVec,
) -> Result<GradedElement> {
    let t = crate::coord::tensor(m.coord().dim(), beta, beta2);
    Ok(m.split(&level_tensor(m, lambda, &t)?))
}

fn level_tensor(m: &GradedModel, lambda: &Level, t: &SparseVec) -> Result<SparseVec> {
    Ok(m.d_element(t).add(&level_correction(m, lambda, t)?))
}

/// `𝔍 x 𝔍`, made traceless for type A.
fn compress(
    idem: &TruncationIdempotent,
    x: &SparseMatrix,
    traceless: bool,
) -> Result<SparseMatrix> {
    let j = idem.matrix();
    let y = j.mul(x)?.mul(j)?;
    if !traceless {
        return Ok(y);
    }
    let tr = y.trace()?;
    let dim = j.trace()?;
    y.lin(j, &-(tr / dim))
}

/// A basis of `ℒ^λ = 𝒢^λ⊗𝒜 ⊕ 𝒮^λ⊗ℬ ⊕ 𝒱^λ⊗𝒞 ⊕ span⟨𝔟, 𝔟⟩_λ`.
pub fn level_subalgebra(m: &GradedModel, lambda: &Level) -> Result<Vec<SparseVec>> {
    let family = m.family();
    let coord = m.coord();
    let one = Rational::one();
    let mut ech = RowEchelon::new();
    let g = m.lie_algebra();
    for x in g.basis() {
        let y = compress(&lambda.idem, x, family == Family::A)?;
        for a in coord.a_range() {
            let mut acc = Accumulator::new();
            m.put_g(&mut acc, &y, &SparseVec::unit(a), &one)?;
            ech.insert(&acc.finish());
        }
    }
    if let Some(s) = m.s_module() {
        for i in 0..s.dim() {
            let mat = s
                .basis_matrix(i)
                .ok_or_else(|| Error::Internal("𝒮 is not matrix valued".into()))?;
            let y = compress(&lambda.idem, &mat, true)?;
            for b in coord.b_range() {
                let mut acc = Accumulator::new();
                m.put_s_mat(&mut acc, &y, &SparseVec::unit(b), &one)?;
                ech.insert(&acc.finish());
            }
        }
    }
    if let Some(v) = m.v_module() {
        for i in 0..v.dim() {
            let u = lambda
                .idem
                .matrix()
                .apply(&v.to_ambient(&SparseVec::unit(i)));
            for c in coord.c_range() {
                let mut acc = Accumulator::new();
                m.put_v(&mut acc, &u, &SparseVec::unit(c), &one)?;
                ech.insert(&acc.finish());
            }
        }
    }
    let d = coord.dim();
    for idx in 0..d * d {
        ech.insert(&level_tensor(m, lambda, &SparseVec::unit(idx))?);
    }
    Ok(ech.rows().cloned().collect())
}

fn span_of(vs: &[SparseVec]) -> RowEchelon {
    RowEchelon::from_vectors(vs.iter())
}

/// Builds the model whose base level is `λ` (same `n`, same quadruple) and
/// checks that `ψ`, the identity on 𝒢⊗𝒜, 𝒮⊗ℬ and 𝒱⊗𝒞 sending `⟨t⟩` to
/// `⟨t⟩_λ`, is a well-defined injective Lie homomorphism into `m`.
/// `λ` must be an initial segment `{1, …, n_λ}`.
fn coherence_witnesses(m: &GradedModel, lambda: &Level) -> Result<Vec<String>> {
    let size = lambda.size();
    if lambda.subset() != &(1..=size).collect::<BTreeSet<_>>() {
        return Err(Error::Domain(
            "the coherence check needs λ = {1, …, n_λ}".into(),
        ));
    }
    let family = m.family();
    let ell = match family {
        Family::A => size - 1,
        _ => size,
    };
    let k_lambda: Vec<SparseVec> = {
        let bb = crate::coord::build_bb(m.coord(), ell)?;
        m.k_span()
            .iter()
            .map(|k| bb.quotient().project(&m.bb().quotient().lift(k)))
            .collect()
    };
    let ml = build_model(family, m.n(), ell, m.coord().quadruple(), &k_lambda, true)?;
    let mut w = Vec::new();
    for r in ml.d_quotient().relations().rows() {
        if !level_tensor(m, lambda, r)?.is_zero() {
            w.push("a relation at level λ maps to a nonzero element".to_string());
            break;
        }
    }
    let psi: Vec<SparseVec> = (0..ml.dim())
        .map(|i| match ml.part(i) {
            Part::D(p) => {
                level_tensor(m, lambda, &SparseVec::unit(ml.d_quotient().coset_tensor(p)))
            }
            _ => Ok(SparseVec::unit(i)),
        })
        .collect::<Result<_>>()?;
    let image = |v: &SparseVec| {
        let mut acc = Accumulator::new();
        for (i, c) in v.iter() {
            acc.add_vec(&psi[i], c);
        }
        acc.finish()
    };
    if span_of(&psi).rank() != ml.dim() {
        w.push("ψ is not injective".into());
    }
    let n = ml.dim();
    let bad: Vec<String> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let (psi, ml, image) = (&psi, &ml, &image);
            (i + 1..n)
                .filter(move |&j| image(ml.basis_bracket(i, j)) != m.bracket(&psi[i], &psi[j]))
                .map(move |j| format!("ψ[{}, {}] ≠ [ψ{0}, ψ{1}]", ml.labels()[i], ml.labels()[j]))
        })
        .collect::<Vec<_>>();
    w.extend(bad);
    w.truncate(WITNESS_CAP);
    Ok(w)
}

/// Checks the level transition at `λ`: the model at level `λ` embeds
/// coherently; the correction vanishes at `λ = I_0`; `ℒ^λ` is a subalgebra; and for all
/// tensors `t`, `⟨t⟩_0 = 0 ⇔ (⟨t⟩_λ = 0 and β*(t) = 0)`, compared as kernels
/// on the full tensor space.
pub fn verify_level_transition(m: &GradedModel, lambda: &Level) -> Result<Vec<CheckRecord>> {
    let d = m.coord().dim();
    let units: Vec<SparseVec> = (0..d * d).map(SparseVec::unit).collect();

    let base = Level::extend(m, 0)?;
    let mut zero_w = Vec::new();
    for (idx, t) in units.iter().enumerate() {
        if !level_correction(m, &base, t)?.is_zero() && zero_w.len() < WITNESS_CAP {
            zero_w.push(format!("correction at I_0 is nonzero on tensor {idx}"));
        }
    }

    let basis = level_subalgebra(m, lambda)?;
    let span = span_of(&basis);
    let n = basis.len();
    let closure: Vec<String> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let (basis, span) = (&basis, &span);
            (i + 1..n)
                .filter(move |&j| !span.contains(&m.bracket(&basis[i], &basis[j])))
                .map(move |j| format!("basis pair ({i}, {j}) of ℒ^λ"))
        })
        .collect::<Vec<_>>()
        .into_iter()
        .take(WITNESS_CAP)
        .collect();

    let phi0: Vec<SparseVec> = units.iter().map(|t| m.d_element(t)).collect();
    let phil: Vec<SparseVec> = units
        .iter()
        .map(|t| level_tensor(m, lambda, t))
        .collect::<Result<_>>()?;
    let bstar: Vec<SparseVec> = units.iter().map(|t| m.bb().beta_star_tensor(t)).collect();
    let ker0 = span_of(&kernel_of_columns(&phi0));
    let both: Vec<SparseVec> = phil
        .iter()
        .zip(&bstar)
        .map(|(p, b)| p.add(&b.shifted(m.dim())))
        .collect();
    let ker_rhs = span_of(&kernel_of_columns(&both));
    let mut iff = Vec::new();
    if !ker_rhs.contains_all(&ker0) {
        iff.push("some family vanishes at level 0 but not at level λ with Σβ* = 0".into());
    }
    if !ker0.contains_all(&ker_rhs) {
        iff.push("some family vanishes at level λ with Σβ* = 0 but not at level 0".into());
    }
    let coherence = coherence_witnesses(m, lambda)?;
    Ok(vec![
        CheckRecord::new("transition/coherence", coherence),
        CheckRecord::new("transition/zero-correction", zero_w),
        CheckRecord::new("transition/closure", closure),
        CheckRecord::new("transition/biconditional", iff),
    ])
}
