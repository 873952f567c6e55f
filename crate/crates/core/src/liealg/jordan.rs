//! Clifford Jordan algebras 𝒥(g, 𝒲) = A ⊕ 𝒲 and their inner derivations.

use super::algebra::build_algebra;
use super::forms::FormedSpace;
use crate::error::{Error, Result};
use crate::exactla::{Accumulator, BasedSpace, Rational, RowEchelon, SparseMatrix, SparseVec};
use crate::rootsys::Family;

/// `A ⊕ 𝒲` for a unital commutative associative `A`, an `A`-module `𝒲` and
/// a symmetric `A`-bilinear `g`. Elements are vectors over the basis
/// `[A-basis, 𝒲-basis]`; index 0 of `A` is its unit.
#[derive(Clone, Debug)]
pub struct CliffordJordan {
    a_dim: usize,
    w_dim: usize,
    /// `a_mul[i][j] = a_i a_j` over the A-basis.
    a_mul: Vec<Vec<SparseVec>>,
    /// `action[i][k] = a_i · w_k` over the 𝒲-basis.
    action: Vec<Vec<SparseVec>>,
    /// `g[k][l] = g(w_k, w_l)` over the A-basis.
    g: Vec<Vec<SparseVec>>,
}

impl CliffordJordan {
    pub fn new(
        a_mul: Vec<Vec<SparseVec>>,
        action: Vec<Vec<SparseVec>>,
        g: Vec<Vec<SparseVec>>,
    ) -> Result<Self> {
        let a_dim = a_mul.len();
        let w_dim = g.len();
        if a_dim == 0
            || a_mul.iter().any(|r| r.len() != a_dim)
            || action.len() != a_dim
            || action.iter().any(|r| r.len() != w_dim)
            || g.iter().any(|r| r.len() != w_dim)
        {
            return Err(Error::Shape(
                "inconsistent Clifford Jordan structure tables".into(),
            ));
        }
        for (k, row) in g.iter().enumerate() {
            for (l, x) in row.iter().enumerate() {
                if *x != g[l][k] {
                    return Err(Error::Validation {
                        law: "g symmetric".into(),
                        witness: format!("g(w{k}, w{l})"),
                    });
                }
            }
        }
        Ok(CliffordJordan {
            a_dim,
            w_dim,
            a_mul,
            action,
            g,
        })
    }

    /// `A = 𝔽` and `𝒲 = 𝔽^d` with the given Gram matrix.
    pub fn over_field(gram: &[Vec<Rational>]) -> Result<Self> {
        let d = gram.len();
        let a_mul = vec![vec![SparseVec::unit(0)]];
        let action = vec![(0..d).map(SparseVec::unit).collect()];
        let g = gram
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| SparseVec::single(0, x.clone()))
                    .collect()
            })
            .collect();
        CliffordJordan::new(a_mul, action, g)
    }

    pub fn a_dim(&self) -> usize {
        self.a_dim
    }

    pub fn w_dim(&self) -> usize {
        self.w_dim
    }

    pub fn dim(&self) -> usize {
        self.a_dim + self.w_dim
    }

    /// The unit `1 ∈ A`.
    pub fn one(&self) -> SparseVec {
        SparseVec::unit(0)
    }

    /// Product of basis elements `i` and `j`.
    pub fn basis_product(&self, i: usize, j: usize) -> SparseVec {
        let da = self.a_dim;
        match (i < da, j < da) {
            (true, true) => self.a_mul[i][j].clone(),
            (true, false) => self.action[i][j - da].shifted(da),
            (false, true) => self.action[j][i - da].shifted(da),
            (false, false) => self.g[i - da][j - da].clone(),
        }
    }

    /// `(a₁ + w₁)(a₂ + w₂) = a₁a₂ + g(w₁, w₂) + a₁w₂ + a₂w₁`.
    pub fn product(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                acc.add_vec(&self.basis_product(i, j), &(a * b));
            }
        }
        acc.finish()
    }

    /// Left multiplication as a matrix on `𝒥`.
    pub fn left_mult(&self, x: &SparseVec) -> SparseMatrix {
        let space = BasedSpace::indexed("j", self.dim());
        let mut entries = Vec::new();
        for j in 0..self.dim() {
            for (r, c) in self.product(x, &SparseVec::unit(j)).iter() {
                entries.push(((r, j), c.clone()));
            }
        }
        SparseMatrix::from_entries(space.clone(), space, entries).expect("in range")
    }
}

/// The product of `𝒥`.
pub fn jordan_product(j: &CliffordJordan, x: &SparseVec, y: &SparseVec) -> SparseVec {
    j.product(x, y)
}

/// `D_{a,b} = L_b L_a − L_a L_b`.
pub fn jordan_derivation(j: &CliffordJordan, a: &SparseVec, b: &SparseVec) -> SparseMatrix {
    let (la, lb) = (j.left_mult(a), j.left_mult(b));
    lb.mul(&la)
        .expect("square")
        .sub(&la.mul(&lb).expect("square"))
        .expect("square")
}

/// Outcome of comparing `D_{𝒱,𝒱}` with o_B.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationSpanReport {
    pub equal: bool,
    pub derivation_dim: usize,
    pub algebra_dim: usize,
}

/// Compares `span{D_{v,w}|_𝒱}` for the Clifford Jordan algebra of `(𝒱, (·,·))`
/// with o_B(n), as subspaces of gl(𝒱).
pub fn derivation_span_equals_ob(n: usize) -> Result<DerivationSpanReport> {
    let alg = build_algebra(Family::B, n)?;
    let form = FormedSpace::new(alg.natural().clone())?;
    let d = form.natural().dim();
    let gram: Vec<Vec<Rational>> = (0..d)
        .map(|i| (0..d).map(|k| form.gram().get(i, k)).collect())
        .collect();
    let jor = CliffordJordan::over_field(&gram)?;
    let mut span = RowEchelon::new();
    for v in 0..d {
        for w in v + 1..d {
            let full = jordan_derivation(&jor, &SparseVec::unit(1 + v), &SparseVec::unit(1 + w));
            // restrict to 𝒲 = 𝒱, which sits at offset 1 after the unit
            let restricted = SparseVec::from_entries(
                full.entries()
                    .filter(|(r, c, _)| *r >= 1 && *c >= 1)
                    .map(|(r, c, x)| ((r - 1) * d + (c - 1), x.clone())),
            );
            span.insert(&restricted);
        }
    }
    let g_span = RowEchelon::from_vectors(
        alg.basis()
            .iter()
            .map(SparseMatrix::flatten)
            .collect::<Vec<_>>()
            .iter(),
    );
    Ok(DerivationSpanReport {
        equal: span.same_span(&g_span),
        derivation_dim: span.rank(),
        algebra_dim: g_span.rank(),
    })
}
