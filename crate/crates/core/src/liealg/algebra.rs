//! Truncations of sl(I), o_B(I), o_D(I) and sp(I) as matrix Lie algebras
//! with explicit Cartan and root-vector bases.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::forms::{matrix_family, FormedSpace, NaturalSpace};
use crate::error::{Error, Result};
use crate::exactla::{Coordinates, Rational, RowEchelon, SparseMatrix, SparseVec};
use crate::rootsys::{self, Family, Root, RootSystem};

/// A weight in ε-coordinates, one rational per index `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<Rational>);

impl Weight {
    pub fn zero(n: usize) -> Self {
        Weight(vec![Rational::zero(); n])
    }

    pub fn from_root(r: &Root, n: usize) -> Self {
        Weight((1..=n).map(|i| Rational::from_int(r.coeff(i))).collect())
    }

    /// The weight as a root when every coordinate is an integer.
    pub fn to_root(&self) -> Option<Root> {
        let mut pairs = Vec::new();
        for (k, c) in self.0.iter().enumerate() {
            pairs.push((k + 1, c.to_i64()?));
        }
        Some(Root::from_pairs(pairs))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_root() {
            Some(r) => write!(f, "{r}"),
            None => {
                let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The canonical Cartan generators of the ambient gl: `h_i = e_ii − e_īī`
/// for B, C, D (i = 1..n) and `h_i = e_ii − e_{i+1,i+1}` for A (i < n).
pub fn cartan_generators(natural: &NaturalSpace) -> Vec<SparseMatrix> {
    let n = natural.n();
    if natural.family() == Family::A {
        (1..n)
            .map(|i| {
                natural.combo(&[
                    (natural.v(i), natural.v(i), 1),
                    (natural.v(i + 1), natural.v(i + 1), -1),
                ])
            })
            .collect()
    } else {
        (1..=n)
            .map(|i| {
                natural.combo(&[
                    (natural.v(i), natural.v(i), 1),
                    (natural.vb(i), natural.vb(i), -1),
                ])
            })
            .collect()
    }
}

/// Converts eigenvalues on the canonical Cartan generators to ε-coordinates.
/// For A the representative with coordinate sum zero is chosen.
pub fn eigen_to_weight(family: Family, n: usize, eig: &[Rational]) -> Weight {
    if family != Family::A {
        return Weight(eig.to_vec());
    }
    // λ_k = c_k − c_{k+1} and Σ c = 0 give c_1 = Σ_k (n−k)λ_k / n.
    let nn = Rational::from_int(n as i64);
    let mut c1 = Rational::zero();
    for (k, l) in eig.iter().enumerate() {
        c1 += Rational::from_int((n - k - 1) as i64) * l;
    }
    let mut out = vec![c1 / &nn];
    for l in eig {
        let next = out.last().expect("nonempty") - l;
        out.push(next);
    }
    Weight(out)
}

/// `[h, x] = λx` for a single `h`, returning `λ` when `x` is an eigenvector.
pub fn ad_eigenvalue(h: &SparseMatrix, x: &SparseMatrix) -> Option<Rational> {
    let hx = h.commutator(x).ok()?;
    proportionality(&hx, x)
}

/// `c` with `y = c·x`, for nonzero `x`.
pub fn proportionality(y: &SparseMatrix, x: &SparseMatrix) -> Option<Rational> {
    let (r, c, x0) = x.entries().next()?;
    let lambda = y.get(r, c) / x0;
    y.lin(x, &-lambda.clone()).ok()?.is_zero().then_some(lambda)
}

/// A finite-dimensional matrix Lie algebra on 𝒱 with a weight basis.
#[derive(Clone, Debug)]
pub struct MatrixLieAlgebra {
    family: Family,
    trunc: BTreeSet<usize>,
    natural: NaturalSpace,
    ambient: Option<FormedSpace>,
    basis: Vec<SparseMatrix>,
    labels: Vec<String>,
    weights: Vec<Root>,
    cartan: Vec<SparseMatrix>,
    root_index: BTreeMap<Root, Vec<usize>>,
    roots: RootSystem,
    coords: Coordinates,
}

/// e_{j,k} on a based space, by labels.
pub fn matrix_unit(j: &str, k: &str, natural: &NaturalSpace) -> Result<SparseMatrix> {
    SparseMatrix::unit(natural.space(), j, k)
}

/// Root vectors of the family, keyed by root, as sparse combinations of
/// matrix units on 𝒱.
fn root_vectors(natural: &NaturalSpace) -> BTreeMap<Root, SparseMatrix> {
    let n = natural.n();
    let family = natural.family();
    let (v, vb) = (|i| natural.v(i), |i| natural.vb(i));
    let r = |pairs: &[(usize, i64)]| Root::from_pairs(pairs.iter().copied());
    let mut out = BTreeMap::new();
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            let x = match family {
                Family::A => natural.combo(&[(v(i), v(j), 1)]),
                _ => natural.combo(&[(v(i), v(j), 1), (vb(j), vb(i), -1)]),
            };
            out.insert(r(&[(i, 1), (j, -1)]), x);
            if family == Family::A || i > j {
                continue;
            }
            let (plus, minus) = match family {
                Family::C => (
                    natural.combo(&[(v(i), vb(j), 1), (v(j), vb(i), 1)]),
                    natural.combo(&[(vb(i), v(j), 1), (vb(j), v(i), 1)]),
                ),
                _ => (
                    natural.combo(&[(v(i), vb(j), 1), (v(j), vb(i), -1)]),
                    natural.combo(&[(vb(i), v(j), 1), (vb(j), v(i), -1)]),
                ),
            };
            out.insert(r(&[(i, 1), (j, 1)]), plus);
            out.insert(r(&[(i, -1), (j, -1)]), minus);
        }
        match family {
            Family::B => {
                let z = natural.v0().expect("type B has v0");
                out.insert(r(&[(i, 1)]), natural.combo(&[(v(i), z, 1), (z, vb(i), -1)]));
                out.insert(
                    r(&[(i, -1)]),
                    natural.combo(&[(vb(i), z, 1), (z, v(i), -1)]),
                );
            }
            Family::C => {
                out.insert(r(&[(i, 2)]), natural.combo(&[(v(i), vb(i), 1)]));
                out.insert(r(&[(i, -2)]), natural.combo(&[(vb(i), v(i), 1)]));
            }
            _ => {}
        }
    }
    out
}

/// Builds sl(n), o_B(n), o_D(n) or sp(n). BC is served by sp.
pub fn build_algebra(family: Family, n: usize) -> Result<MatrixLieAlgebra> {
    let family = matrix_family(family)?;
    let min = match family {
        Family::A | Family::D => 2,
        _ => 1,
    };
    if n < min {
        return Err(Error::Degenerate(format!(
            "{family}_{n} has no nonzero roots; need n >= {min}"
        )));
    }
    let natural = NaturalSpace::new(family, n)?;
    let ambient = if family == Family::A {
        None
    } else {
        Some(FormedSpace::new(natural.clone())?)
    };
    let cartan = cartan_generators(&natural);
    let mut basis = Vec::new();
    let mut labels = Vec::new();
    let mut weights = Vec::new();
    let mut root_index: BTreeMap<Root, Vec<usize>> = BTreeMap::new();
    for (k, h) in cartan.iter().enumerate() {
        root_index
            .entry(Root::zero())
            .or_default()
            .push(basis.len());
        basis.push(h.clone());
        labels.push(format!("h:{}", k + 1));
        weights.push(Root::zero());
    }
    for (root, x) in root_vectors(&natural) {
        root_index
            .entry(root.clone())
            .or_default()
            .push(basis.len());
        labels.push(format!("x:{root}"));
        basis.push(x);
        weights.push(root);
    }
    let roots = rootsys::generate(family, n)?;
    let coords = Coordinates::new(&basis.iter().map(SparseMatrix::flatten).collect::<Vec<_>>());
    if !coords.is_independent() {
        return Err(Error::Internal(format!(
            "basis of {family}_{n} is dependent"
        )));
    }
    Ok(MatrixLieAlgebra {
        family,
        trunc: (1..=n).collect(),
        natural,
        ambient,
        basis,
        labels,
        weights,
        cartan,
        root_index,
        roots,
        coords,
    })
}

impl MatrixLieAlgebra {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.natural.n()
    }

    /// Index set the algebra is supported on.
    pub fn trunc(&self) -> &BTreeSet<usize> {
        &self.trunc
    }

    pub fn natural(&self) -> &NaturalSpace {
        &self.natural
    }

    pub fn ambient(&self) -> Option<&FormedSpace> {
        self.ambient.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseMatrix] {
        &self.basis
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Weight of each basis element.
    pub fn weights(&self) -> &[Root] {
        &self.weights
    }

    /// Canonical Cartan generators of the ambient gl used to measure weights.
    pub fn cartan(&self) -> &[SparseMatrix] {
        &self.cartan
    }

    /// Basis positions spanning the Cartan subalgebra of this algebra.
    pub fn cartan_positions(&self) -> &[usize] {
        self.root_index
            .get(&Root::zero())
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn root_index(&self) -> &BTreeMap<Root, Vec<usize>> {
        &self.root_index
    }

    pub fn root_space(&self, alpha: &Root) -> Vec<SparseMatrix> {
        self.root_index
            .get(alpha)
            .map(|ix| ix.iter().map(|i| self.basis[*i].clone()).collect())
            .unwrap_or_default()
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.roots
    }

    /// Coordinates of `x` in the basis, or `None` if `x` is outside.
    pub fn coordinates(&self, x: &SparseMatrix) -> Option<SparseVec> {
        self.coords.solve(&x.flatten())
    }

    pub fn contains(&self, x: &SparseMatrix) -> bool {
        self.coords.contains(&x.flatten())
    }

    pub fn element(&self, coeffs: &SparseVec) -> SparseMatrix {
        let mut acc = self.natural.zero_matrix();
        for (i, c) in coeffs.iter() {
            acc = acc.lin(&self.basis[i], c).expect("same shape");
        }
        acc
    }

    /// Whether `x` satisfies the family's defining condition.
    pub fn satisfies_definition(&self, x: &SparseMatrix) -> bool {
        match &self.ambient {
            None => x.trace().map(|t| t.is_zero()).unwrap_or(false),
            Some(f) => f.is_skew(x),
        }
    }

    /// Eigenvalues of `ad h` on `x` for every Cartan generator, converted to
    /// ε-coordinates; `None` if `x` is not a simultaneous eigenvector.
    pub fn weight_of(&self, x: &SparseMatrix) -> Option<Weight> {
        let eig: Option<Vec<Rational>> = self.cartan.iter().map(|h| ad_eigenvalue(h, x)).collect();
        Some(eigen_to_weight(self.family, self.n(), &eig?))
    }

    /// Lie bracket of two basis elements in basis coordinates.
    pub fn bracket_coords(&self, i: usize, j: usize) -> Result<SparseVec> {
        let z = self.basis[i].commutator(&self.basis[j])?;
        self.coordinates(&z).ok_or_else(|| {
            Error::Internal(format!(
                "[{}, {}] leaves the algebra",
                self.labels[i], self.labels[j]
            ))
        })
    }
}

/// The subalgebra spanned by the root spaces of `S×_sdiv` and their
/// brackets `[𝒢_α, 𝒢_{−α}]`.
pub fn subalgebra_from_subsystem(
    g: &MatrixLieAlgebra,
    s: &BTreeSet<Root>,
) -> Result<MatrixLieAlgebra> {
    if !rootsys::is_full_subsystem(s, g.root_system())? {
        return Err(Error::Domain("subset is not a full subsystem".into()));
    }
    let sdiv: BTreeSet<Root> = s
        .iter()
        .filter(|a| !a.is_zero() && !s.contains(&a.scale(2)))
        .cloned()
        .collect();
    let mut cartan_span = RowEchelon::new();
    let mut cartan_elems = Vec::new();
    for a in &sdiv {
        for x in g.root_space(a) {
            for y in g.root_space(&a.neg()) {
                let h = x.commutator(&y)?;
                if cartan_span.insert(&h.flatten()) {
                    cartan_elems.push(h);
                }
            }
        }
    }
    let mut basis = Vec::new();
    let mut labels = Vec::new();
    let mut weights = Vec::new();
    let mut root_index: BTreeMap<Root, Vec<usize>> = BTreeMap::new();
    for (k, h) in cartan_elems.into_iter().enumerate() {
        root_index
            .entry(Root::zero())
            .or_default()
            .push(basis.len());
        basis.push(h);
        labels.push(format!("h:{}", k + 1));
        weights.push(Root::zero());
    }
    for a in &sdiv {
        for &i in g.root_index.get(a).map(Vec::as_slice).unwrap_or(&[]) {
            root_index.entry(a.clone()).or_default().push(basis.len());
            basis.push(g.basis[i].clone());
            labels.push(g.labels[i].clone());
            weights.push(a.clone());
        }
    }
    let coords = Coordinates::new(&basis.iter().map(SparseMatrix::flatten).collect::<Vec<_>>());
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let z = basis[i].commutator(&basis[j])?;
            if !coords.contains(&z.flatten()) {
                return Err(Error::Domain(format!(
                    "subsystem span is not closed: [{}, {}]",
                    labels[i], labels[j]
                )));
            }
        }
    }
    let trunc: BTreeSet<usize> = s
        .iter()
        .flat_map(|r| r.support().collect::<Vec<_>>())
        .collect();
    let mut roots = sdiv.clone();
    roots.insert(Root::zero());
    Ok(MatrixLieAlgebra {
        family: g.family,
        trunc,
        natural: g.natural.clone(),
        ambient: g.ambient.clone(),
        basis,
        labels,
        weights,
        cartan: g.cartan.clone(),
        root_index,
        roots: RootSystem::from_roots(g.family, g.n(), roots),
        coords,
    })
}
