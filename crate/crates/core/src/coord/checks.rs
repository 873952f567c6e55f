//! Report-producing checks on a quadruple and its {𝔟,𝔟}_ℓ.

use rayon::prelude::*;

use super::bb::{full_homology, BBQuotient};
use super::quadruple::{validate_quadruple, CoordAlgebra};
use crate::error::Result;
use crate::exactla::SparseVec;
use crate::report::CheckRecord;

/// Every law of [`validate_quadruple`] as its own check.
pub fn verify_laws(alg: &CoordAlgebra) -> Vec<CheckRecord> {
    validate_quadruple(alg.quadruple())
        .checks
        .into_iter()
        .map(|c| {
            CheckRecord::new(
                format!("quadruple/{}", c.law),
                c.witness.into_iter().collect(),
            )
        })
        .collect()
}

/// Each `d_{e_i,e_j}` is a derivation of the product on 𝔟 commuting with `*`.
pub fn verify_derivations(bb: &BBQuotient) -> CheckRecord {
    let alg = bb.algebra();
    let d = alg.dim();
    let labels = alg.labels();
    let w: Vec<String> = (0..d * d)
        .into_par_iter()
        .flat_map_iter(|idx| {
            let t = SparseVec::unit(idx);
            let m = bb.tensor_derivation(&t);
            let (i, j) = (idx / d, idx % d);
            let mut out = Vec::new();
            for u in 0..d {
                let du = &m[u];
                if bb.derive(&t, &alg.star(&SparseVec::unit(u))) != alg.star(du) {
                    out.push(format!(
                        "d_({}, {}) does not commute with * at {}",
                        labels[i], labels[j], labels[u]
                    ));
                }
                for v in 0..d {
                    let (eu, ev) = (SparseVec::unit(u), SparseVec::unit(v));
                    let lhs = bb.derive(&t, &alg.mul(&eu, &ev));
                    let rhs = alg.mul(du, &ev).add(&alg.mul(&eu, &m[v]));
                    if lhs != rhs {
                        out.push(format!(
                            "d_({}, {}) breaks the Leibniz rule on ({}, {})",
                            labels[i], labels[j], labels[u], labels[v]
                        ));
                    }
                }
            }
            out
        })
        .collect();
    CheckRecord::new("coord/derivation", w)
}

/// {𝔟,𝔟}_ℓ is a Lie algebra.
pub fn verify_bb_lie(bb: &BBQuotient) -> CheckRecord {
    CheckRecord::new("coord/bb-lie", bb.lie_witness().into_iter().collect())
}

/// `c◊c' ∈ 𝒜` and `c♥c' ∈ ℬ` for all basis pairs of 𝒞.
pub fn verify_diamond_heart(alg: &CoordAlgebra) -> Result<CheckRecord> {
    let mut w = Vec::new();
    let labels = alg.labels();
    for i in alg.c_range() {
        for j in alg.c_range() {
            let (dia, heart) = alg.diamond_heart(&SparseVec::unit(i), &SparseVec::unit(j))?;
            if dia.iter().any(|(k, _)| !alg.a_range().contains(&k)) {
                w.push(format!("{}◊{} ∉ 𝒜", labels[i], labels[j]));
            }
            if heart.iter().any(|(k, _)| !alg.b_range().contains(&k)) {
                w.push(format!("{}♥{} ∉ ℬ", labels[i], labels[j]));
            }
        }
    }
    Ok(CheckRecord::new("coord/diamond-heart", w))
}

/// FH(𝔟) is central in {𝔟,𝔟}_ℓ.
pub fn verify_homology(bb: &BBQuotient) -> Result<CheckRecord> {
    let fh = full_homology(bb)?;
    let w = if fh.central {
        Vec::new()
    } else {
        vec![format!("FH of dimension {} is not central", fh.dim())]
    };
    Ok(CheckRecord::new("coord/homology-central", w))
}

/// β* vanishes on every spanning relation of K.
pub fn verify_beta_star_relations(bb: &BBQuotient) -> CheckRecord {
    let w = bb
        .generators()
        .iter()
        .enumerate()
        .filter(|(_, (_, r))| !bb.beta_star_tensor(r).is_zero())
        .map(|(i, (name, _))| format!("β* is nonzero on relation {i} ({name})"))
        .collect();
    CheckRecord::new("coord/beta-star-relations", w)
}
