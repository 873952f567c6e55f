//! Labelled spaces, vectors, matrices, subspaces and quotients.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use super::sparse::{kernel_from_echelon, Accumulator, RowEchelon, SparseVec};
use super::Rational;
use crate::error::{Error, Result};

/// A vector space with a fixed, ordered basis of opaque labels. The label
/// order is the canonical order used for pivots and output.
#[derive(Clone, PartialEq, Eq)]
pub struct BasedSpace {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl fmt::Debug for BasedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("BasedSpace").field(&self.labels).finish()
    }
}

impl BasedSpace {
    pub fn new<S: Into<String>, I: IntoIterator<Item = S>>(labels: I) -> Result<Arc<Self>> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::Shape(format!("duplicate basis label '{l}'")));
            }
        }
        Ok(Arc::new(BasedSpace { labels, index }))
    }

    /// A space with labels `prefix0, prefix1, ...`.
    pub fn indexed(prefix: &str, dim: usize) -> Arc<Self> {
        BasedSpace::new((0..dim).map(|i| format!("{prefix}{i}"))).expect("distinct labels")
    }

    /// Tensor product space with pair labels `a⊗b`, ordered row-major.
    pub fn tensor(a: &BasedSpace, b: &BasedSpace) -> Arc<Self> {
        let labels = a
            .labels
            .iter()
            .flat_map(|x| b.labels.iter().map(move |y| format!("{x}⊗{y}")));
        BasedSpace::new(labels).expect("distinct pair labels")
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn position(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::Shape(format!("unknown basis label '{label}'")))
    }
}

fn same_space(a: &Arc<BasedSpace>, b: &Arc<BasedSpace>) -> bool {
    Arc::ptr_eq(a, b) || a.labels == b.labels
}

/// A vector in a `BasedSpace`.
#[derive(Clone, Debug)]
pub struct SparseVector {
    space: Arc<BasedSpace>,
    data: SparseVec,
}

impl PartialEq for SparseVector {
    fn eq(&self, other: &Self) -> bool {
        same_space(&self.space, &other.space) && self.data == other.data
    }
}

impl SparseVector {
    pub fn new(space: Arc<BasedSpace>, data: SparseVec) -> Result<Self> {
        if let Some(m) = data.max_index() {
            if m >= space.dim() {
                return Err(Error::Shape(format!(
                    "index {m} outside space of dimension {}",
                    space.dim()
                )));
            }
        }
        Ok(SparseVector { space, data })
    }

    pub fn zero(space: Arc<BasedSpace>) -> Self {
        SparseVector {
            space,
            data: SparseVec::new(),
        }
    }

    pub fn from_labels<'a, I: IntoIterator<Item = (&'a str, Rational)>>(
        space: Arc<BasedSpace>,
        entries: I,
    ) -> Result<Self> {
        let mut acc = Accumulator::new();
        for (l, c) in entries {
            acc.add(space.position(l)?, &c);
        }
        Ok(SparseVector {
            space,
            data: acc.finish(),
        })
    }

    pub fn from_ints(space: Arc<BasedSpace>, values: &[i64]) -> Result<Self> {
        if values.len() != space.dim() {
            return Err(Error::Shape("dense length differs from dimension".into()));
        }
        let dense: Vec<Rational> = values.iter().map(|&x| Rational::from_int(x)).collect();
        Ok(SparseVector {
            space,
            data: SparseVec::from_dense(&dense),
        })
    }

    pub fn space(&self) -> &Arc<BasedSpace> {
        &self.space
    }

    pub fn data(&self) -> &SparseVec {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.is_zero()
    }

    pub fn get(&self, label: &str) -> Result<Rational> {
        Ok(self.data.coeff(self.space.position(label)?))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &Rational)> + '_ {
        self.data.iter().map(|(i, c)| (self.space.label(i), c))
    }

    fn check(&self, other: &SparseVector) -> Result<()> {
        if same_space(&self.space, &other.space) {
            Ok(())
        } else {
            Err(Error::Shape("vectors live in different spaces".into()))
        }
    }

    pub fn add(&self, other: &SparseVector) -> Result<SparseVector> {
        self.check(other)?;
        Ok(SparseVector {
            space: self.space.clone(),
            data: self.data.add(&other.data),
        })
    }

    pub fn sub(&self, other: &SparseVector) -> Result<SparseVector> {
        self.check(other)?;
        Ok(SparseVector {
            space: self.space.clone(),
            data: self.data.sub(&other.data),
        })
    }

    pub fn scale(&self, c: &Rational) -> SparseVector {
        SparseVector {
            space: self.space.clone(),
            data: self.data.scale(c),
        }
    }
}

/// A finitely supported linear map between based spaces. Entry `(r, c)` is
/// the coefficient of codomain basis vector `r` in the image of domain basis
/// vector `c`.
#[derive(Clone, Debug)]
pub struct SparseMatrix {
    domain: Arc<BasedSpace>,
    codomain: Arc<BasedSpace>,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl PartialEq for SparseMatrix {
    fn eq(&self, other: &Self) -> bool {
        same_space(&self.domain, &other.domain)
            && same_space(&self.codomain, &other.codomain)
            && self.entries == other.entries
    }
}

impl SparseMatrix {
    pub fn zero(domain: Arc<BasedSpace>, codomain: Arc<BasedSpace>) -> Self {
        SparseMatrix {
            domain,
            codomain,
            entries: BTreeMap::new(),
        }
    }

    pub fn square_zero(space: Arc<BasedSpace>) -> Self {
        SparseMatrix::zero(space.clone(), space)
    }

    pub fn identity(space: Arc<BasedSpace>) -> Self {
        let entries = (0..space.dim())
            .map(|i| ((i, i), Rational::one()))
            .collect();
        SparseMatrix {
            domain: space.clone(),
            codomain: space,
            entries,
        }
    }

    pub fn from_entries<I: IntoIterator<Item = ((usize, usize), Rational)>>(
        domain: Arc<BasedSpace>,
        codomain: Arc<BasedSpace>,
        iter: I,
    ) -> Result<Self> {
        let mut entries: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        for ((r, c), x) in iter {
            if r >= codomain.dim() || c >= domain.dim() {
                return Err(Error::Shape(format!(
                    "entry ({r},{c}) outside matrix shape"
                )));
            }
            *entries.entry((r, c)).or_default() += x;
        }
        entries.retain(|_, x| !x.is_zero());
        Ok(SparseMatrix {
            domain,
            codomain,
            entries,
        })
    }

    /// The elementary matrix `e_{j,k}` sending `v_k` to `v_j`.
    pub fn unit(space: &Arc<BasedSpace>, j: &str, k: &str) -> Result<Self> {
        let (r, c) = (space.position(j)?, space.position(k)?);
        Ok(SparseMatrix {
            domain: space.clone(),
            codomain: space.clone(),
            entries: [((r, c), Rational::one())].into_iter().collect(),
        })
    }

    pub fn domain(&self) -> &Arc<BasedSpace> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<BasedSpace> {
        &self.codomain
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_square(&self) -> bool {
        same_space(&self.domain, &self.codomain)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.entries.iter().map(|((r, c), x)| (*r, *c, x))
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.entries.get(&(r, c)).cloned().unwrap_or_default()
    }

    fn same_shape(&self, other: &SparseMatrix) -> bool {
        same_space(&self.domain, &other.domain) && same_space(&self.codomain, &other.codomain)
    }

    pub fn add(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.lin(other, &Rational::one())
    }

    pub fn sub(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.lin(other, &Rational::from_int(-1))
    }

    /// `self + c * other`.
    pub fn lin(&self, other: &SparseMatrix, c: &Rational) -> Result<SparseMatrix> {
        if !self.same_shape(other) {
            return Err(Error::Shape("matrix shapes differ".into()));
        }
        let mut entries = self.entries.clone();
        for (k, x) in other.entries.iter() {
            let e = entries.entry(*k).or_default();
            *e += x * c;
        }
        entries.retain(|_, x| !x.is_zero());
        Ok(SparseMatrix {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            entries,
        })
    }

    pub fn scale(&self, c: &Rational) -> SparseMatrix {
        let entries = if c.is_zero() {
            BTreeMap::new()
        } else {
            self.entries.iter().map(|(k, x)| (*k, x * c)).collect()
        };
        SparseMatrix {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            entries,
        }
    }

    /// Composition `self ∘ other`.
    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if !same_space(&self.domain, &other.codomain) {
            return Err(Error::Shape("composition of incompatible matrices".into()));
        }
        let mut acc: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        for ((i, k), a) in self.entries.iter() {
            for ((_, j), b) in other.entries.range((*k, 0)..(*k + 1, 0)) {
                *acc.entry((*i, *j)).or_default() += a * b;
            }
        }
        acc.retain(|_, x| !x.is_zero());
        Ok(SparseMatrix {
            domain: other.domain.clone(),
            codomain: self.codomain.clone(),
            entries: acc,
        })
    }

    pub fn commutator(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn trace(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::Shape("trace of a non-square matrix".into()));
        }
        Ok(self
            .entries
            .iter()
            .filter(|((r, c), _)| r == c)
            .map(|(_, x)| x)
            .sum())
    }

    /// `tr(self · other)` without forming the product.
    pub fn trace_product(&self, other: &SparseMatrix) -> Result<Rational> {
        if !same_space(&self.domain, &other.codomain) || !same_space(&self.codomain, &other.domain)
        {
            return Err(Error::Shape("trace of incompatible product".into()));
        }
        let mut s = Rational::zero();
        for ((i, k), a) in self.entries.iter() {
            if let Some(b) = other.entries.get(&(*k, *i)) {
                s += a * b;
            }
        }
        Ok(s)
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for ((r, c), x) in self.entries.iter() {
            if let Some(y) = v.get(*c) {
                acc.add(*r, &(x * y));
            }
        }
        acc.finish()
    }

    pub fn apply_vector(&self, v: &SparseVector) -> Result<SparseVector> {
        if !same_space(&self.domain, &v.space) {
            return Err(Error::Shape("vector not in matrix domain".into()));
        }
        Ok(SparseVector {
            space: self.codomain.clone(),
            data: self.apply(&v.data),
        })
    }

    pub fn transpose(&self) -> SparseMatrix {
        SparseMatrix {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            entries: self
                .entries
                .iter()
                .map(|((r, c), x)| ((*c, *r), x.clone()))
                .collect(),
        }
    }

    /// Row-major flattening into a vector of length `rows · cols`.
    pub fn flatten(&self) -> SparseVec {
        let cols = self.domain.dim();
        SparseVec::from_entries(
            self.entries
                .iter()
                .map(|((r, c), x)| (r * cols + c, x.clone())),
        )
    }

    pub fn unflatten(
        domain: Arc<BasedSpace>,
        codomain: Arc<BasedSpace>,
        v: &SparseVec,
    ) -> SparseMatrix {
        let cols = domain.dim();
        let entries = v
            .iter()
            .map(|(i, x)| ((i / cols, i % cols), x.clone()))
            .collect();
        SparseMatrix {
            domain,
            codomain,
            entries,
        }
    }

    /// Rows as vectors over the domain.
    pub fn rows(&self) -> Vec<SparseVec> {
        let mut rows: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
        for ((r, c), x) in self.entries.iter() {
            rows.entry(*r).or_default().push((*c, x.clone()));
        }
        rows.into_values().map(SparseVec::from_entries).collect()
    }

    /// Entries keyed by `(row label, column label)`.
    pub fn labelled_entries(&self) -> Vec<(String, String, Rational)> {
        self.entries
            .iter()
            .map(|((r, c), x)| {
                (
                    self.codomain.label(*r).to_string(),
                    self.domain.label(*c).to_string(),
                    x.clone(),
                )
            })
            .collect()
    }

    /// Re-expresses the matrix over other spaces by matching labels.
    pub fn relabel(
        &self,
        domain: &Arc<BasedSpace>,
        codomain: &Arc<BasedSpace>,
    ) -> Result<SparseMatrix> {
        let mut entries = BTreeMap::new();
        for ((r, c), x) in self.entries.iter() {
            let r2 = codomain.position(self.codomain.label(*r))?;
            let c2 = domain.position(self.domain.label(*c))?;
            entries.insert((r2, c2), x.clone());
        }
        Ok(SparseMatrix {
            domain: domain.clone(),
            codomain: codomain.clone(),
            entries,
        })
    }
}

/// A subspace of a based space, stored in reduced row-echelon form.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: Arc<BasedSpace>,
    echelon: RowEchelon,
}

impl Subspace {
    pub fn zero(ambient: Arc<BasedSpace>) -> Self {
        Subspace {
            ambient,
            echelon: RowEchelon::new(),
        }
    }

    pub fn from_echelon(ambient: Arc<BasedSpace>, echelon: RowEchelon) -> Self {
        Subspace { ambient, echelon }
    }

    pub fn ambient(&self) -> &Arc<BasedSpace> {
        &self.ambient
    }

    pub fn echelon(&self) -> &RowEchelon {
        &self.echelon
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    /// Reduced row-echelon basis, ordered by strictly increasing pivot.
    pub fn basis(&self) -> Vec<SparseVector> {
        self.echelon
            .rows()
            .map(|r| SparseVector {
                space: self.ambient.clone(),
                data: r.clone(),
            })
            .collect()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.echelon.pivots().collect()
    }

    pub fn contains(&self, v: &SparseVector) -> Result<bool> {
        if !same_space(&self.ambient, &v.space) {
            return Err(Error::Shape("vector outside the ambient space".into()));
        }
        Ok(self.echelon.contains(&v.data))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        other.echelon.contains_all(&self.echelon)
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        same_space(&self.ambient, &other.ambient) && self.echelon.same_span(&other.echelon)
    }
}

/// Reduced row-echelon basis of the span of `vectors` in `ambient`.
pub fn rref(ambient: &Arc<BasedSpace>, vectors: &[SparseVector]) -> Result<Subspace> {
    let mut e = RowEchelon::new();
    for v in vectors {
        if !same_space(ambient, &v.space) {
            return Err(Error::Shape("mixed ambient spaces in rref".into()));
        }
        e.insert(&v.data);
    }
    Ok(Subspace {
        ambient: ambient.clone(),
        echelon: e,
    })
}

/// Exact kernel of a linear map, as a subspace of its domain.
pub fn kernel(map: &SparseMatrix) -> Subspace {
    let e = RowEchelon::from_vectors(map.rows().iter());
    let basis = kernel_from_echelon(&e, map.domain.dim());
    Subspace {
        ambient: map.domain.clone(),
        echelon: RowEchelon::from_vectors(basis.iter()),
    }
}

/// `V / R` with the non-pivot labels of `R`'s row-echelon form as coset basis.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    relations: Subspace,
    coset_basis: Vec<usize>,
    position: HashMap<usize, usize>,
    space: Arc<BasedSpace>,
}

impl QuotientSpace {
    pub fn new(relations: Subspace) -> Self {
        let amb = relations.ambient.clone();
        let coset_basis: Vec<usize> = (0..amb.dim())
            .filter(|i| !relations.echelon.is_pivot(*i))
            .collect();
        let position = coset_basis
            .iter()
            .enumerate()
            .map(|(k, i)| (*i, k))
            .collect();
        let space = BasedSpace::new(coset_basis.iter().map(|i| amb.label(*i).to_string()))
            .expect("distinct labels");
        QuotientSpace {
            relations,
            coset_basis,
            position,
            space,
        }
    }

    pub fn from_echelon(ambient: Arc<BasedSpace>, echelon: RowEchelon) -> Self {
        QuotientSpace::new(Subspace::from_echelon(ambient, echelon))
    }

    pub fn ambient(&self) -> &Arc<BasedSpace> {
        &self.relations.ambient
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    /// The quotient as a based space whose labels are the coset-basis labels.
    pub fn space(&self) -> &Arc<BasedSpace> {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.coset_basis.len()
    }

    /// Ambient indices of the coset basis.
    pub fn coset_basis(&self) -> &[usize] {
        &self.coset_basis
    }

    /// Projection of an ambient index vector onto coset coordinates.
    pub fn project_raw(&self, v: &SparseVec) -> SparseVec {
        let r = self.relations.echelon.reduce(v);
        r.remap(|i| self.position.get(&i).copied())
    }

    /// The ambient representative of a coset coordinate vector.
    pub fn lift_raw(&self, v: &SparseVec) -> SparseVec {
        v.remap(|k| self.coset_basis.get(k).copied())
    }
}

/// Canonical coset representative of `v` in coset-basis coordinates.
pub fn quotient_project(q: &QuotientSpace, v: &SparseVector) -> Result<SparseVector> {
    if !same_space(q.ambient(), &v.space) {
        return Err(Error::Shape(
            "vector outside the quotient's ambient space".into(),
        ));
    }
    Ok(SparseVector {
        space: q.space.clone(),
        data: q.project_raw(&v.data),
    })
}
