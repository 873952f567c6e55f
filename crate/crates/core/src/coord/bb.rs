//! The Lie algebra {𝔟,𝔟}_ℓ = (𝔟⊗𝔟)/K, its full homology and the uniformity
//! test for subspaces of it.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::quadruple::CoordAlgebra;
use crate::error::{Error, Result};
use crate::exactla::sparse::kernel_of_columns;
use crate::exactla::{Accumulator, Rational, RowEchelon, SparseVec};
use crate::rootsys::Family;

/// Column images of a linear endomorphism of 𝔟 in split coordinates.
pub type Endo = Vec<SparseVec>;

fn apply(m: &Endo, v: &SparseVec) -> SparseVec {
    let mut acc = Accumulator::new();
    for (k, c) in v.iter() {
        acc.add_vec(&m[k], c);
    }
    acc.finish()
}

/// `d_{e_i, e_j}` applied to every basis vector of 𝔟.
pub fn derivation_basis(alg: &CoordAlgebra, ell: usize, i: usize, j: usize) -> Result<Endo> {
    if ell == 0 {
        return Err(Error::Domain("ℓ must be positive".into()));
    }
    let d = alg.dim();
    let (x, y) = (SparseVec::unit(i), SparseVec::unit(j));
    let zero = || vec![SparseVec::new(); d];
    let ell_r = Rational::from_int(ell as i64);
    let is_c = |k: usize| alg.c_range().contains(&k);
    Ok(match alg.family() {
        Family::D => zero(),
        Family::A => {
            let s = Rational::from_int(ell as i64 + 1).recip().expect("nonzero");
            let z = alg.brk(&x, &y).scale(&s);
            (0..d).map(|k| alg.brk(&z, &SparseVec::unit(k))).collect()
        }
        Family::B => (0..d)
            .map(|k| {
                let b = SparseVec::unit(k);
                alg.mul(&y, &alg.mul(&x, &b))
                    .sub(&alg.mul(&x, &alg.mul(&y, &b)))
            })
            .collect(),
        Family::C | Family::BC => match (is_c(i), is_c(j)) {
            (false, false) => {
                let s = (Rational::from_int(4) * &ell_r).recip().expect("nonzero");
                let z = alg
                    .brk(&x, &y)
                    .add(&alg.brk(&alg.star(&x), &alg.star(&y)))
                    .scale(&s);
                (0..d)
                    .map(|k| {
                        let b = SparseVec::unit(k);
                        if is_c(k) {
                            alg.mul(&z, &b)
                        } else {
                            alg.brk(&z, &b)
                        }
                    })
                    .collect()
            }
            (true, true) => {
                let (_, heart) = alg.diamond_heart(&x, &y)?;
                let s = -(Rational::from_int(2) * &ell_r).recip().expect("nonzero");
                let half = Rational::frac(1, 2);
                (0..d)
                    .map(|k| {
                        let b = SparseVec::unit(k);
                        if is_c(k) {
                            let extra = alg
                                .mul(&alg.f(&b, &y), &x)
                                .add(&alg.mul(&alg.f(&b, &x), &y));
                            alg.mul(&heart, &b).scale(&s).sub(&extra.scale(&half))
                        } else {
                            alg.brk(&heart, &b).scale(&s)
                        }
                    })
                    .collect()
            }
            _ => zero(),
        },
    })
}

/// `d_{β₁,β₂}` as an endomorphism of 𝔟.
pub fn derivation(alg: &CoordAlgebra, ell: usize, x: &SparseVec, y: &SparseVec) -> Result<Endo> {
    let d = alg.dim();
    let mut acc: Vec<Accumulator> = vec![Accumulator::new(); d];
    for (i, a) in x.iter() {
        for (j, b) in y.iter() {
            let m = derivation_basis(alg, ell, i, j)?;
            let c = a * b;
            for (col, slot) in m.iter().zip(acc.iter_mut()) {
                slot.add_vec(col, &c);
            }
        }
    }
    Ok(acc.into_iter().map(Accumulator::finish).collect())
}

/// The spanning families of K, each tagged with a short name.
pub fn relation_generators(alg: &CoordAlgebra) -> Vec<(&'static str, SparseVec)> {
    let d = alg.dim();
    let t = |x: &SparseVec, y: &SparseVec| tensor(d, x, y);
    let e = SparseVec::unit;
    let alphas: Vec<usize> = (0..alg.a_dim()).collect();
    let cs: Vec<usize> = alg.c_range().collect();
    let mut out = Vec::new();
    for &i in &alphas {
        for &k in &cs {
            out.push(("alpha⊗c", t(&e(i), &e(k))));
            out.push(("c⊗alpha", t(&e(k), &e(i))));
        }
    }
    for i in alg.a_range() {
        for j in alg.b_range() {
            out.push(("a⊗b", t(&e(i), &e(j))));
        }
    }
    for &i in &alphas {
        for &j in &alphas[i..] {
            out.push(("symmetric", t(&e(i), &e(j)).add(&t(&e(j), &e(i)))));
        }
    }
    for (p, &k) in cs.iter().enumerate() {
        for &l in &cs[p + 1..] {
            out.push(("c-antisymmetric", t(&e(k), &e(l)).sub(&t(&e(l), &e(k)))));
        }
    }
    for &i in &alphas {
        for &j in &alphas {
            for &k in &alphas {
                let (x, y, z) = (e(i), e(j), e(k));
                let v = t(&alg.mul(&x, &y), &z)
                    .add(&t(&alg.mul(&z, &x), &y))
                    .add(&t(&alg.mul(&y, &z), &x));
                out.push(("cyclic", v));
            }
        }
    }
    for &k in &cs {
        for &l in &cs {
            for &i in &alphas {
                let (c, c2, a) = (e(k), e(l), e(i));
                let v = t(&alg.f(&c, &c2), &a)
                    .add(&t(&alg.mul(&alg.star(&a), &c2), &c))
                    .sub(&t(&alg.mul(&a, &c), &c2));
                out.push(("hermitian", v));
            }
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

/// `x ⊗ y` in 𝔟⊗𝔟, indexed `i·dim + j`.
pub fn tensor(d: usize, x: &SparseVec, y: &SparseVec) -> SparseVec {
    let mut acc = Accumulator::new();
    for (i, a) in x.iter() {
        for (j, b) in y.iter() {
            acc.add(i * d + j, &(a * b));
        }
    }
    acc.finish()
}

/// A quotient of 𝔟⊗𝔟 by a subspace, with cosets of the non-pivot basis
/// tensors as its basis.
#[derive(Clone, Debug)]
pub struct TensorQuotient {
    d: usize,
    relations: RowEchelon,
    cosets: Vec<usize>,
    position: BTreeMap<usize, usize>,
    labels: Vec<String>,
}

impl TensorQuotient {
    pub fn new(alg: &CoordAlgebra, relations: RowEchelon) -> Self {
        let d = alg.dim();
        let cosets: Vec<usize> = (0..d * d).filter(|t| !relations.is_pivot(*t)).collect();
        let position = cosets.iter().enumerate().map(|(p, &t)| (t, p)).collect();
        let names = alg.labels();
        let labels = cosets
            .iter()
            .map(|&t| format!("{{{},{}}}", names[t / d], names[t % d]))
            .collect();
        TensorQuotient {
            d,
            relations,
            cosets,
            position,
            labels,
        }
    }

    pub fn dim(&self) -> usize {
        self.cosets.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn relations(&self) -> &RowEchelon {
        &self.relations
    }

    /// The tensor index represented by coset basis element `p`.
    pub fn coset_tensor(&self, p: usize) -> usize {
        self.cosets[p]
    }

    /// Pair `(i, j)` with coset `p = {e_i, e_j}`.
    pub fn coset_pair(&self, p: usize) -> (usize, usize) {
        (self.cosets[p] / self.d, self.cosets[p] % self.d)
    }

    /// Quotient coordinates of a tensor.
    pub fn project(&self, t: &SparseVec) -> SparseVec {
        self.relations
            .reduce(t)
            .remap(|i| self.position.get(&i).copied())
    }

    pub fn lift(&self, v: &SparseVec) -> SparseVec {
        v.remap(|p| Some(self.cosets[p]))
    }

    pub fn contains_relation(&self, t: &SparseVec) -> bool {
        self.relations.contains(t)
    }
}

/// {𝔟,𝔟}_ℓ with its derivation table and bracket table.
#[derive(Clone, Debug)]
pub struct BBQuotient {
    alg: CoordAlgebra,
    ell: usize,
    generators: Vec<(&'static str, SparseVec)>,
    quotient: TensorQuotient,
    /// `deriv[i·d + j] = d_{e_i,e_j}`.
    deriv: Vec<Endo>,
    table: Vec<Vec<SparseVec>>,
}

impl BBQuotient {
    pub fn algebra(&self) -> &CoordAlgebra {
        &self.alg
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn generators(&self) -> &[(&'static str, SparseVec)] {
        &self.generators
    }

    pub fn quotient(&self) -> &TensorQuotient {
        &self.quotient
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn labels(&self) -> &[String] {
        self.quotient.labels()
    }

    pub fn basis_derivation(&self, i: usize, j: usize) -> &Endo {
        &self.deriv[i * self.alg.dim() + j]
    }

    /// `d_t` for a tensor `t = Σ t_ij e_i⊗e_j`.
    pub fn tensor_derivation(&self, t: &SparseVec) -> Endo {
        let d = self.alg.dim();
        let mut acc: Vec<Accumulator> = vec![Accumulator::new(); d];
        for (idx, c) in t.iter() {
            for (col, slot) in self.deriv[idx].iter().zip(acc.iter_mut()) {
                slot.add_vec(col, c);
            }
        }
        acc.into_iter().map(Accumulator::finish).collect()
    }

    /// Applies `d_t` to `x ∈ 𝔟`.
    pub fn derive(&self, t: &SparseVec, x: &SparseVec) -> SparseVec {
        apply(&self.tensor_derivation(t), x)
    }

    /// `[s, t] = Σ s_ij (d_ij(t₁)⊗t₂ + t₁⊗d_ij(t₂))` on tensors.
    pub fn bracket_tensors(&self, s: &SparseVec, t: &SparseVec) -> SparseVec {
        let d = self.alg.dim();
        let ds = self.tensor_derivation(s);
        let mut acc = Accumulator::new();
        for (idx, c) in t.iter() {
            let (k, l) = (idx / d, idx % d);
            acc.add_vec(&tensor(d, &ds[k], &SparseVec::unit(l)), c);
            acc.add_vec(&tensor(d, &SparseVec::unit(k), &ds[l]), c);
        }
        acc.finish()
    }

    /// Bracket of coset basis elements, in quotient coordinates.
    pub fn bracket_basis(&self, p: usize, q: usize) -> &SparseVec {
        &self.table[p][q]
    }

    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (p, a) in x.iter() {
            for (q, b) in y.iter() {
                acc.add_vec(&self.table[p][q], &(a * b));
            }
        }
        acc.finish()
    }

    /// β* on a tensor, as an element of 𝔞 in split coordinates.
    pub fn beta_star_tensor(&self, t: &SparseVec) -> SparseVec {
        let d = self.alg.dim();
        let mut acc = Accumulator::new();
        for (idx, c) in t.iter() {
            acc.add_vec(
                &self
                    .alg
                    .beta_star(&SparseVec::unit(idx / d), &SparseVec::unit(idx % d)),
                c,
            );
        }
        acc.finish()
    }

    /// Antisymmetry and the Jacobi identity on all coset basis triples.
    pub fn lie_witness(&self) -> Option<String> {
        let n = self.dim();
        let l = self.labels();
        for p in 0..n {
            for q in p..n {
                if self.table[p][q] != self.table[q][p].neg() {
                    return Some(format!("antisymmetry fails for {}, {}", l[p], l[q]));
                }
            }
        }
        let triples: Vec<(usize, usize, usize)> = (0..n)
            .flat_map(|p| (p + 1..n).flat_map(move |q| (q + 1..n).map(move |r| (p, q, r))))
            .collect();
        triples.par_iter().find_map_first(|&(p, q, r)| {
            let e = SparseVec::unit;
            let s = self
                .bracket(&e(p), &self.table[q][r])
                .add(&self.bracket(&e(q), &self.table[r][p]))
                .add(&self.bracket(&e(r), &self.table[p][q]));
            (!s.is_zero()).then(|| format!("Jacobi fails for {}, {}, {}", l[p], l[q], l[r]))
        })
    }
}

/// Builds {𝔟,𝔟}_ℓ and checks that the bracket is well defined on K.
pub fn build_bb(alg: &CoordAlgebra, ell: usize) -> Result<BBQuotient> {
    let d = alg.dim();
    let deriv: Vec<Endo> = (0..d * d)
        .into_par_iter()
        .map(|idx| derivation_basis(alg, ell, idx / d, idx % d))
        .collect::<Result<_>>()?;
    let generators = relation_generators(alg);
    let relations = RowEchelon::from_vectors(generators.iter().map(|(_, v)| v));
    let quotient = TensorQuotient::new(alg, relations);
    let mut bb = BBQuotient {
        alg: alg.clone(),
        ell,
        generators,
        quotient,
        deriv,
        table: Vec::new(),
    };
    let basis: Vec<SparseVec> = (0..d * d).map(SparseVec::unit).collect();
    let bad = bb.generators.par_iter().find_map_first(|(name, r)| {
        basis.iter().find_map(|x| {
            let left = bb.bracket_tensors(r, x);
            let right = bb.bracket_tensors(x, r);
            (!bb.quotient.contains_relation(&left) || !bb.quotient.contains_relation(&right))
                .then(|| format!("bracket leaves K on a {name} relation"))
        })
    });
    if let Some(w) = bad {
        return Err(Error::Internal(format!(
            "{{𝔟,𝔟}} bracket is not well defined: {w}"
        )));
    }
    let n = bb.quotient.dim();
    let table: Vec<Vec<SparseVec>> = (0..n)
        .into_par_iter()
        .map(|p| {
            let s = SparseVec::unit(bb.quotient.coset_tensor(p));
            (0..n)
                .map(|q| {
                    bb.quotient.project(
                        &bb.bracket_tensors(&s, &SparseVec::unit(bb.quotient.coset_tensor(q))),
                    )
                })
                .collect()
        })
        .collect();
    bb.table = table;
    Ok(bb)
}

/// The kernel of `{β₁,β₂} ↦ d_{β₁,β₂}` inside {𝔟,𝔟}_ℓ.
#[derive(Clone, Debug)]
pub struct HomologySubspace {
    /// Basis in quotient coordinates.
    pub basis: Vec<SparseVec>,
    pub central: bool,
}

impl HomologySubspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        RowEchelon::from_vectors(self.basis.iter()).contains(v)
    }
}

fn flatten(m: &Endo, d: usize) -> SparseVec {
    let mut acc = Accumulator::new();
    for (k, col) in m.iter().enumerate() {
        for (r, c) in col.iter() {
            acc.add(r * d + k, c);
        }
    }
    acc.finish()
}

/// Computes the full homology and checks that it is central.
pub fn full_homology(bb: &BBQuotient) -> Result<HomologySubspace> {
    let d = bb.alg.dim();
    if let Some((name, _)) = bb
        .generators
        .iter()
        .find(|(_, r)| bb.tensor_derivation(r).iter().any(|c| !c.is_zero()))
    {
        return Err(Error::Internal(format!(
            "d does not vanish on the {name} relations of K"
        )));
    }
    let images: Vec<SparseVec> = (0..bb.dim())
        .map(|p| flatten(&bb.deriv[bb.quotient.coset_tensor(p)], d))
        .collect();
    let basis = kernel_of_columns(&images);
    let central = basis
        .iter()
        .all(|h| (0..bb.dim()).all(|q| bb.bracket(&SparseVec::unit(q), h).is_zero()));
    Ok(HomologySubspace { basis, central })
}

/// Outcome of the uniformity test for a subspace 𝒦 ⊆ FH.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniformReport {
    pub uniform: bool,
    pub witness: Option<String>,
    pub ell: usize,
    pub cross_ell: usize,
    pub cross_in_fh: bool,
    pub cross_uniform: bool,
}

fn uniform_witness(bb: &BBQuotient, k_span: &[SparseVec]) -> Option<String> {
    for (name, r) in &bb.generators {
        let b = bb.beta_star_tensor(r);
        if !b.is_zero() {
            return Some(format!("β* is nonzero on a {name} relation of K"));
        }
    }
    for (i, k) in k_span.iter().enumerate() {
        if !bb.beta_star_tensor(&bb.quotient.lift(k)).is_zero() {
            return Some(format!("β* is nonzero on spanning vector {i} of 𝒦"));
        }
    }
    None
}

/// Decides whether `span(k_span)` is uniform, and repeats the decision at
/// `cross_ell` as a consistency check.
pub fn check_uniform(
    bb: &BBQuotient,
    k_span: &[SparseVec],
    cross_ell: usize,
) -> Result<UniformReport> {
    let fh = full_homology(bb)?;
    if let Some(i) = k_span.iter().position(|k| !fh.contains(k)) {
        return Err(Error::Uniform(format!(
            "spanning vector {i} of 𝒦 is not in the full homology"
        )));
    }
    let witness = uniform_witness(bb, k_span);
    let other = build_bb(&bb.alg, cross_ell)?;
    let other_fh = full_homology(&other)?;
    let cross_in_fh = k_span.iter().all(|k| other_fh.contains(k));
    let cross_uniform = uniform_witness(&other, k_span).is_none();
    Ok(UniformReport {
        uniform: witness.is_none(),
        witness,
        ell: bb.ell,
        cross_ell,
        cross_in_fh,
        cross_uniform,
    })
}
