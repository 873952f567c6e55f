use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::model::{Component, GradedModel};
use crate::error::{Error, Result};
use crate::exactla::{Rational, RowEchelon, SparseVec};
use crate::liealg::{eigen_to_weight, subalgebra_from_subsystem, MatrixLieAlgebra};
use crate::report::{CheckRecord, WITNESS_CAP};
use crate::rootsys::{
    classify_lengths, generate, is_full_subsystem, is_irreducible, semidivisible, Family,
    LengthClass, Root,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JacobiStrategy {
    /// All basis triples `i < j < k`.
    Exhaustive,
    /// Uniform random basis triples from a seeded ChaCha8 stream.
    Random { samples: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiReport {
    pub triples: usize,
    pub failures: usize,
    pub witnesses: Vec<String>,
}

impl JacobiReport {
    pub fn record(&self, name: &str) -> CheckRecord {
        CheckRecord::new(name, self.witnesses.clone())
    }
}

fn jacobiator(m: &GradedModel, i: usize, j: usize, k: usize) -> SparseVec {
    m.bracket_left(i, m.basis_bracket(j, k))
        .add(&m.bracket_left(j, m.basis_bracket(k, i)))
        .add(&m.bracket_left(k, m.basis_bracket(i, j)))
}

/// Checks `[x,[y,z]] + [y,[z,x]] + [z,[x,y]] = 0` exactly on basis triples.
pub fn verify_jacobi(m: &GradedModel, strategy: JacobiStrategy) -> JacobiReport {
    let n = m.dim();
    let triples: Vec<(usize, usize, usize)> = match strategy {
        JacobiStrategy::Exhaustive => (0..n)
            .flat_map(|i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k))))
            .collect(),
        JacobiStrategy::Random { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples)
                .map(|_| {
                    (
                        rng.gen_range(0..n),
                        rng.gen_range(0..n),
                        rng.gen_range(0..n),
                    )
                })
                .collect()
        }
    };
    let fails: Vec<(usize, usize, usize)> = triples
        .par_iter()
        .filter(|&&(i, j, k)| !jacobiator(m, i, j, k).is_zero())
        .copied()
        .collect();
    let l = m.labels();
    JacobiReport {
        triples: triples.len(),
        failures: fails.len(),
        witnesses: fails
            .iter()
            .take(WITNESS_CAP)
            .map(|&(i, j, k)| format!("({}, {}, {})", l[i], l[j], l[k]))
            .collect(),
    }
}

/// `[x, y] = −[y, x]` on all basis pairs.
pub fn verify_antisymmetry(m: &GradedModel) -> CheckRecord {
    let n = m.dim();
    let l = m.labels();
    let w: Vec<String> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            (i..n)
                .filter(move |&j| m.basis_bracket(i, j) != &m.basis_bracket(j, i).neg())
                .map(move |j| (i, j))
        })
        .collect::<Vec<_>>()
        .into_iter()
        .take(WITNESS_CAP)
        .map(|(i, j)| format!("[{}, {}]", l[i], l[j]))
        .collect();
    CheckRecord::new("antisymmetry", w)
}

/// Expected `dim ℒ_α` for each length class.
fn expected_dim(family: Family, class: LengthClass, dims: (usize, usize, usize)) -> usize {
    let (da, db, dc) = dims;
    match (family, class) {
        (Family::BC, LengthClass::Short) => dc,
        (Family::BC, LengthClass::Long) | (Family::B | Family::C, LengthClass::Short) => da + db,
        _ => da,
    }
}

fn expected_components(family: Family, class: LengthClass) -> BTreeSet<Component> {
    let c: &[Component] = match (family, class) {
        (Family::BC, LengthClass::Short) => &[Component::V],
        (Family::BC, LengthClass::Long) | (Family::B | Family::C, LengthClass::Short) => {
            &[Component::G, Component::S]
        }
        _ => &[Component::G],
    };
    c.iter().copied().collect()
}

/// ℋ⊗1 with ℋ the diagonal Cartan generators of 𝒢.
fn cartan_elements(m: &GradedModel) -> Result<Vec<SparseVec>> {
    m.lie_algebra()
        .cartan()
        .iter()
        .map(|h| m.g_tensor(h, m.unit()))
        .collect()
}

/// The ad(ℋ⊗1)-weight of each basis element, or a witness that the basis
/// element is not an eigenvector.
pub fn basis_weights(m: &GradedModel) -> Result<std::result::Result<Vec<Root>, String>> {
    let hs = cartan_elements(m)?;
    let (family, n) = (m.family(), m.n());
    let out: Vec<std::result::Result<Root, String>> = (0..m.dim())
        .into_par_iter()
        .map(|i| {
            let e = SparseVec::unit(i);
            let mut eig = Vec::with_capacity(hs.len());
            for h in &hs {
                let img = m.bracket(h, &e);
                let lambda = img.coeff(i);
                if img != e.scale(&lambda) {
                    return Err(format!("{} is not an ad(ℋ⊗1) eigenvector", m.labels()[i]));
                }
                eig.push(lambda);
            }
            eigen_to_weight(family, n, &eig)
                .to_root()
                .ok_or_else(|| format!("{} has a non-integral weight", m.labels()[i]))
        })
        .collect();
    Ok(out.into_iter().collect())
}

/// The three grading axioms, as separate checks.
pub fn verify_grading(m: &GradedModel) -> Result<Vec<CheckRecord>> {
    let family = m.family();
    let r = generate(family, m.n())?;
    let g = m.lie_algebra();
    let u = m.unit().clone();

    let mut emb = Vec::new();
    if u.iter().any(|(i, _)| !m.coord().a_range().contains(&i)) {
        emb.push("the unit of 𝔞 is not *-fixed".to_string());
    }
    let gd = g.dim();
    let images: Vec<SparseVec> = g
        .basis()
        .iter()
        .map(|x| m.g_tensor(x, &u))
        .collect::<Result<_>>()?;
    let bad: Vec<String> = (0..gd)
        .into_par_iter()
        .flat_map_iter(|i| {
            let images = &images;
            (0..gd).filter_map(move |j| {
                let lhs = m.bracket(&images[i], &images[j]);
                let rhs = m
                    .g_tensor(&g.basis()[i].commutator(&g.basis()[j]).ok()?, m.unit())
                    .ok()?;
                (lhs != rhs)
                    .then(|| format!("[{}⊗1, {}⊗1] ≠ [{0}, {1}]⊗1", g.labels()[i], g.labels()[j]))
            })
        })
        .collect();
    emb.extend(bad);
    if g.root_system().roots() != semidivisible(&r).roots() {
        emb.push("root system of 𝒢 is not R_sdiv".into());
    }

    let mut weight_w = Vec::new();
    let mut table_w = Vec::new();
    let mut zero_w = Vec::new();
    match basis_weights(m)? {
        Err(w) => weight_w.push(w),
        Ok(ws) => {
            let mut spaces: BTreeMap<Root, Vec<usize>> = BTreeMap::new();
            for (i, w) in ws.iter().enumerate() {
                if w != &m.weights()[i] {
                    weight_w.push(format!(
                        "{} has weight {w}, expected {}",
                        m.labels()[i],
                        m.weights()[i]
                    ));
                }
                if !r.contains(w) {
                    weight_w.push(format!("{} has weight {w} outside R", m.labels()[i]));
                }
                spaces.entry(w.clone()).or_default().push(i);
            }
            for (alpha, class) in classify_lengths(&r) {
                let idx = spaces.get(&alpha).cloned().unwrap_or_default();
                let want = expected_dim(family, class, m.coord().dims());
                if idx.len() != want {
                    table_w.push(format!("dim ℒ_{alpha} = {}, expected {want}", idx.len()));
                }
                let allowed = expected_components(family, class);
                if let Some(&i) = idx.iter().find(|&&i| !allowed.contains(&m.component(i))) {
                    table_w.push(format!(
                        "{} lies in ℒ_{alpha} outside the expected summands",
                        m.labels()[i]
                    ));
                }
            }
            let zero: Vec<usize> = spaces.get(&Root::zero()).cloned().unwrap_or_default();
            let target = RowEchelon::from_vectors(
                zero.iter()
                    .map(|&i| SparseVec::unit(i))
                    .collect::<Vec<_>>()
                    .iter(),
            );
            let positive: Vec<&Root> = r.nonzero().filter(|a| a > &&a.neg()).collect();
            let pieces: Vec<Vec<SparseVec>> = positive
                .par_iter()
                .map(|a| {
                    let pos = spaces.get(*a).cloned().unwrap_or_default();
                    let neg = spaces.get(&a.neg()).cloned().unwrap_or_default();
                    pos.iter()
                        .flat_map(|&i| neg.iter().map(move |&j| m.basis_bracket(i, j).clone()))
                        .collect()
                })
                .collect();
            let mut span = RowEchelon::new();
            for v in pieces.iter().flatten() {
                span.insert(v);
            }
            if !span.same_span(&target) {
                zero_w.push(format!(
                    "Σ[ℒ_α, ℒ_-α] has dimension {}, ℒ_0 has dimension {}",
                    span.rank(),
                    target.rank()
                ));
                if !target.contains_all(&span) {
                    zero_w.push("Σ[ℒ_α, ℒ_-α] leaves ℒ_0".into());
                }
            }
        }
    }
    Ok(vec![
        CheckRecord::new("grading/i-embedding", emb),
        CheckRecord::new("grading/ii-weights", weight_w),
        CheckRecord::new("grading/ii-weight-table", table_w),
        CheckRecord::new("grading/iii-zero-part", zero_w),
    ])
}

/// ℒ^S for a full irreducible subsystem S.
#[derive(Clone, Debug)]
pub struct SubModel {
    pub roots: BTreeSet<Root>,
    /// Basis of ℒ^S in model coordinates (reduced echelon rows).
    pub basis: Vec<SparseVec>,
    pub g_sub: MatrixLieAlgebra,
}

impl SubModel {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// `ℒ^S = Σ_{α∈S×} ℒ_α ⊕ Σ_{α∈S×} [ℒ_α, ℒ_{−α}]`.
pub fn subalgebra(m: &GradedModel, s: &BTreeSet<Root>) -> Result<SubModel> {
    let r = generate(m.family(), m.n())?;
    if !is_full_subsystem(s, &r)? {
        return Err(Error::Domain("S is not a full subsystem".into()));
    }
    if !is_irreducible(s) {
        return Err(Error::Domain("S is not irreducible".into()));
    }
    let sdiv: BTreeSet<Root> = s
        .iter()
        .filter(|a| a.is_zero() || !s.contains(&a.scale(2)))
        .cloned()
        .collect();
    let g_sub = subalgebra_from_subsystem(m.lie_algebra(), &sdiv)?;
    let mut spaces: BTreeMap<&Root, Vec<usize>> = BTreeMap::new();
    for (i, w) in m.weights().iter().enumerate() {
        spaces.entry(w).or_default().push(i);
    }
    let mut ech = RowEchelon::new();
    for a in s.iter().filter(|a| !a.is_zero()) {
        let pos = spaces.get(a).cloned().unwrap_or_default();
        let neg = spaces.get(&a.neg()).cloned().unwrap_or_default();
        for &i in &pos {
            ech.insert(&SparseVec::unit(i));
            for &j in &neg {
                ech.insert(m.basis_bracket(i, j));
            }
        }
    }
    Ok(SubModel {
        roots: s.clone(),
        basis: ech.rows().cloned().collect(),
        g_sub,
    })
}

/// Closure of ℒ^S and its S-grading: 𝒢^S⊗1 ⊆ ℒ^S, weights in S, the
/// nonzero weight spaces agree with those of ℒ, and
/// `ℒ^S_0 = Σ_{α∈S×} [ℒ^S_α, ℒ^S_{−α}]`.
pub fn verify_subalgebra(m: &GradedModel, sub: &SubModel) -> Result<Vec<CheckRecord>> {
    let span = RowEchelon::from_vectors(sub.basis.iter());
    let n = sub.basis.len();
    let closure: Vec<String> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let span = &span;
            (i + 1..n)
                .filter(move |&j| !span.contains(&m.bracket(&sub.basis[i], &sub.basis[j])))
                .map(move |j| format!("basis pair ({i}, {j}) of ℒ^S"))
        })
        .collect();
    let mut emb = Vec::new();
    for (x, label) in sub.g_sub.basis().iter().zip(sub.g_sub.labels()) {
        if !span.contains(&m.g_tensor(x, m.unit())?) {
            emb.push(format!("{label}⊗1 ∉ ℒ^S"));
        }
    }
    let mut weights = Vec::new();
    let mut zero_rows = RowEchelon::new();
    let mut by_weight: BTreeMap<Root, RowEchelon> = BTreeMap::new();
    for v in &sub.basis {
        let mut parts: BTreeMap<&Root, Vec<(usize, Rational)>> = BTreeMap::new();
        for (i, c) in v.iter() {
            parts
                .entry(&m.weights()[i])
                .or_default()
                .push((i, c.clone()));
        }
        for (w, entries) in parts {
            if !sub.roots.contains(w) {
                weights.push(format!("weight {w} ∉ S"));
            }
            by_weight
                .entry(w.clone())
                .or_default()
                .insert(&SparseVec::from_entries(entries));
        }
    }
    for a in sub.roots.iter().filter(|a| !a.is_zero()) {
        let full = m.weights().iter().filter(|w| *w == a).count();
        let got = by_weight.get(a).map_or(0, RowEchelon::rank);
        if full != got {
            weights.push(format!("dim ℒ^S_{a} = {got}, dim ℒ_{a} = {full}"));
        }
        for p in by_weight.get(a).into_iter().flat_map(|e| e.rows()) {
            for q in by_weight.get(&a.neg()).into_iter().flat_map(|e| e.rows()) {
                zero_rows.insert(&m.bracket(p, q));
            }
        }
    }
    let zero = by_weight.remove(&Root::zero()).unwrap_or_default();
    let mut zero_w = Vec::new();
    if !zero.same_span(&zero_rows) {
        zero_w.push(format!(
            "ℒ^S_0 has dimension {}, Σ[ℒ^S_α, ℒ^S_-α] has dimension {}",
            zero.rank(),
            zero_rows.rank()
        ));
    }
    Ok(vec![
        CheckRecord::new("subalgebra/closure", closure),
        CheckRecord::new("subalgebra/i-embedding", emb),
        CheckRecord::new("subalgebra/ii-weights", weights),
        CheckRecord::new("subalgebra/iii-zero-part", zero_w),
    ])
}
