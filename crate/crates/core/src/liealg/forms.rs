//! The natural module 𝒱 with its bilinear form, truncation idempotents and
//! the operators built from pairs of vectors.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::{BasedSpace, Rational, SparseMatrix, SparseVec};
use crate::rootsys::{Family, Root};

/// The based space 𝒱 for a matrix family: `v:0` (type B only), then
/// `v:1..v:n`, then `vb:1..vb:n` (absent for type A).
#[derive(Clone, Debug, PartialEq)]
pub struct NaturalSpace {
    family: Family,
    n: usize,
    space: Arc<BasedSpace>,
}

impl NaturalSpace {
    pub fn new(family: Family, n: usize) -> Result<Self> {
        let family = matrix_family(family)?;
        let mut labels = Vec::new();
        if family == Family::B {
            labels.push("v:0".to_string());
        }
        labels.extend((1..=n).map(|i| format!("v:{i}")));
        if family != Family::A {
            labels.extend((1..=n).map(|i| format!("vb:{i}")));
        }
        Ok(NaturalSpace {
            family,
            n,
            space: BasedSpace::new(labels)?,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn space(&self) -> &Arc<BasedSpace> {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    fn offset(&self) -> usize {
        usize::from(self.family == Family::B)
    }

    /// Position of `v_i`.
    pub fn v(&self, i: usize) -> usize {
        debug_assert!((1..=self.n).contains(&i));
        self.offset() + i - 1
    }

    /// Position of `v_ī`.
    pub fn vb(&self, i: usize) -> usize {
        debug_assert!(self.family != Family::A);
        self.offset() + self.n + i - 1
    }

    /// Position of `v_0` (type B).
    pub fn v0(&self) -> Option<usize> {
        (self.family == Family::B).then_some(0)
    }

    /// Weight of each basis vector in ε-coordinates.
    pub fn weight(&self, pos: usize) -> Root {
        let off = self.offset();
        if pos < off {
            Root::zero()
        } else if pos < off + self.n {
            Root::eps(pos - off + 1)
        } else {
            Root::eps(pos - off - self.n + 1).neg()
        }
    }

    /// Index `i` carried by a basis position, or `None` for `v_0`.
    pub fn index_of(&self, pos: usize) -> Option<usize> {
        let off = self.offset();
        if pos < off {
            None
        } else if pos < off + self.n {
            Some(pos - off + 1)
        } else {
            Some(pos - off - self.n + 1)
        }
    }

    /// `e_{j,k}` by positions.
    pub fn unit(&self, j: usize, k: usize) -> SparseMatrix {
        SparseMatrix::from_entries(
            self.space.clone(),
            self.space.clone(),
            [((j, k), Rational::one())],
        )
        .expect("positions in range")
    }

    pub fn zero_matrix(&self) -> SparseMatrix {
        SparseMatrix::square_zero(self.space.clone())
    }

    /// Sparse combination of matrix units given by positions.
    pub fn combo(&self, terms: &[(usize, usize, i64)]) -> SparseMatrix {
        SparseMatrix::from_entries(
            self.space.clone(),
            self.space.clone(),
            terms
                .iter()
                .map(|(r, c, x)| ((*r, *c), Rational::from_int(*x))),
        )
        .expect("positions in range")
    }
}

/// The family that supplies the matrix algebra: BC is realized on sp.
pub fn matrix_family(family: Family) -> Result<Family> {
    Ok(match family {
        Family::BC => Family::C,
        f => f,
    })
}

/// 𝒱 with the Gram matrix of its form: symmetric for B and D, skew for C.
#[derive(Clone, Debug)]
pub struct FormedSpace {
    natural: NaturalSpace,
    gram: SparseMatrix,
    symmetric: bool,
}

impl FormedSpace {
    pub fn new(natural: NaturalSpace) -> Result<Self> {
        let family = natural.family();
        if family == Family::A {
            return Err(Error::Domain("type A carries no invariant form".into()));
        }
        let symmetric = family != Family::C;
        let mut terms = Vec::new();
        for i in 1..=natural.n() {
            terms.push((natural.v(i), natural.vb(i), 2));
            terms.push((natural.vb(i), natural.v(i), if symmetric { 2 } else { -2 }));
        }
        if let Some(z) = natural.v0() {
            terms.push((z, z, 2));
        }
        let gram = natural.combo(&terms);
        Ok(FormedSpace {
            natural,
            gram,
            symmetric,
        })
    }

    pub fn natural(&self) -> &NaturalSpace {
        &self.natural
    }

    pub fn gram(&self) -> &SparseMatrix {
        &self.gram
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    /// (u, w) = uᵀ G w.
    pub fn form(&self, u: &SparseVec, w: &SparseVec) -> Rational {
        self.gram.apply(w).dot(u)
    }

    /// The row vector of w ↦ (u, w).
    pub fn left_functional(&self, u: &SparseVec) -> SparseVec {
        self.gram.transpose().apply(u)
    }

    /// The row vector of w ↦ (w, u).
    pub fn right_functional(&self, u: &SparseVec) -> SparseVec {
        self.gram.apply(u)
    }

    /// φᵀG − sign·Gφ, which vanishes iff (φv, w) = sign·(v, φw) for all v, w.
    fn defect(&self, phi: &SparseMatrix, sign: i64) -> SparseMatrix {
        let left = phi.transpose().mul(&self.gram).expect("square");
        let right = self.gram.mul(phi).expect("square");
        left.lin(&right, &Rational::from_int(-sign))
            .expect("same shape")
    }

    /// (φv, w) = −(v, φw) for all v, w.
    pub fn is_skew(&self, phi: &SparseMatrix) -> bool {
        self.defect(phi, -1).is_zero()
    }

    /// (φv, w) = (v, φw) for all v, w.
    pub fn is_selfadjoint(&self, phi: &SparseMatrix) -> bool {
        self.defect(phi, 1).is_zero()
    }

    /// Linear conditions on flattened φ expressing (φv, w) = sign·(v, φw).
    pub fn adjoint_conditions(&self, sign: i64) -> Vec<SparseVec> {
        let d = self.natural.dim();
        let mut rows = Vec::new();
        for a in 0..d {
            for b in 0..d {
                // (φᵀG)_{ab} − sign·(Gφ)_{ab} = Σ_k φ_{ka}G_{kb} − sign·Σ_k G_{ak}φ_{kb}
                let mut terms = Vec::new();
                for k in 0..d {
                    let g = self.gram.get(k, b);
                    if !g.is_zero() {
                        terms.push((k * d + a, g));
                    }
                    let g = self.gram.get(a, k);
                    if !g.is_zero() {
                        terms.push((k * d + b, -(g * Rational::from_int(sign))));
                    }
                }
                let row = SparseVec::from_entries(terms);
                if !row.is_zero() {
                    rows.push(row);
                }
            }
        }
        rows
    }
}

/// The projection 𝔍_λ onto the span of `v_i, v_ī` for `i` in the subset,
/// together with `v_0` for type B.
#[derive(Clone, Debug)]
pub struct TruncationIdempotent {
    subset: BTreeSet<usize>,
    matrix: SparseMatrix,
}

impl TruncationIdempotent {
    pub fn new(natural: &NaturalSpace, subset: BTreeSet<usize>) -> Result<Self> {
        if let Some(bad) = subset.iter().find(|i| **i == 0 || **i > natural.n()) {
            return Err(Error::Domain(format!(
                "index {bad} outside 1..={}",
                natural.n()
            )));
        }
        let mut terms = Vec::new();
        for &i in &subset {
            terms.push((natural.v(i), natural.v(i), 1));
            if natural.family() != Family::A {
                terms.push((natural.vb(i), natural.vb(i), 1));
            }
        }
        if let Some(z) = natural.v0() {
            terms.push((z, z, 1));
        }
        Ok(TruncationIdempotent {
            subset,
            matrix: natural.combo(&terms),
        })
    }

    /// 𝔍 on the first `k` indices.
    pub fn first(natural: &NaturalSpace, k: usize) -> Result<Self> {
        TruncationIdempotent::new(natural, (1..=k).collect())
    }

    pub fn subset(&self) -> &BTreeSet<usize> {
        &self.subset
    }

    pub fn size(&self) -> usize {
        self.subset.len()
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.matrix
    }
}

/// x∘y with the family's normalization: `xy + yx − tr(xy)/ℓ·𝔍` for B, C
/// and BC, and `xy + yx − 2tr(xy)/|I_0|·𝔍` for A and D, where the subset
/// of the idempotent has size ℓ (resp. |I_0|).
pub fn circ_trunc(
    x: &SparseMatrix,
    y: &SparseMatrix,
    idem: &TruncationIdempotent,
    family: Family,
) -> Result<SparseMatrix> {
    if idem.size() == 0 {
        return Err(Error::Domain("empty truncation subset".into()));
    }
    let labels = idem.matrix.domain().labels();
    if !x.is_square()
        || !y.is_square()
        || x.domain().labels() != labels
        || y.domain().labels() != labels
    {
        return Err(Error::Shape(
            "operands of ∘ must act on the idempotent's space".into(),
        ));
    }
    let factor = match family {
        Family::A | Family::D => 2,
        _ => 1,
    };
    let tr = x.trace_product(y)?;
    let sym = x.mul(y)?.add(&y.mul(x)?)?;
    let c = -(tr * Rational::frac(factor, idem.size() as i64));
    sym.lin(&idem.matrix, &c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VOpVariant {
    /// w ↦ ½((v, w)u + (w, u)v) + (1/2ℓ)(u, v)𝔍w
    BracketTrunc,
    /// w ↦ ½((v, w)u + (u, w)v)
    Circ,
    /// The bracket with 𝔍 replaced by the identity and ℓ by n.
    BracketFull,
}

/// Operators on 𝒱 built from a pair of vectors.
pub fn v_ops(
    u: &SparseVec,
    v: &SparseVec,
    ambient: &FormedSpace,
    idem: &TruncationIdempotent,
    variant: VOpVariant,
) -> SparseMatrix {
    let space = ambient.natural().space().clone();
    let half = Rational::frac(1, 2);
    let outer = |col: &SparseVec, row: &SparseVec| {
        let entries = col
            .iter()
            .flat_map(|(i, a)| row.iter().map(move |(j, b)| ((i, j), a * b)));
        SparseMatrix::from_entries(space.clone(), space.clone(), entries.collect::<Vec<_>>())
            .expect("in range")
    };
    let first = outer(u, &ambient.left_functional(v));
    let second = match variant {
        VOpVariant::Circ => outer(v, &ambient.left_functional(u)),
        _ => outer(v, &ambient.right_functional(u)),
    };
    let base = first.add(&second).expect("same shape").scale(&half);
    let uv = ambient.form(u, v);
    match variant {
        VOpVariant::Circ => base,
        VOpVariant::BracketTrunc => {
            let c = uv * Rational::frac(1, 2 * idem.size() as i64);
            base.lin(idem.matrix(), &c).expect("same shape")
        }
        VOpVariant::BracketFull => {
            let n = ambient.natural().n() as i64;
            let c = uv * Rational::frac(1, 2 * n);
            base.lin(&SparseMatrix::identity(space.clone()), &c)
                .expect("same shape")
        }
    }
}
