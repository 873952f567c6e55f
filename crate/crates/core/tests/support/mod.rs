//! Closed forms and printed formulas shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use rg_lie::exactla::{Rational, SparseMatrix};
use rg_lie::liealg::{
    ad_eigenvalue, build_algebra, build_module, module_axiom_witness, MatrixLieAlgebra, ModuleKind,
    NaturalSpace, Weight,
};
use rg_lie::rootsys::{generate, Family, Root};

pub fn dim_formula(f: Family, n: usize) -> usize {
    match f {
        Family::A => n * n - 1,
        Family::B | Family::C => 2 * n * n + n,
        Family::D => 2 * n * n - n,
        Family::BC => unreachable!(),
    }
}

/// α(h) for diagonal `h`, read off the diagonal at the positions of v_i.
pub fn eval(alpha: &Root, h: &SparseMatrix, nat: &NaturalSpace) -> Rational {
    (1..=nat.n())
        .map(|i| Rational::from_int(alpha.coeff(i)) * h.get(nat.v(i), nat.v(i)))
        .sum()
}

/// The root vectors as printed for each family, with the index placement of
/// the orthogonal cases written in the consistent form e_{i,j̄} − e_{j,ī}.
pub fn printed_root_vectors(nat: &NaturalSpace) -> Vec<(Root, SparseMatrix)> {
    let n = nat.n();
    let (v, vb) = (|i| nat.v(i), |i| nat.vb(i));
    let r = |p: &[(usize, i64)]| Root::from_pairs(p.iter().copied());
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            match nat.family() {
                Family::A => out.push((r(&[(i, 1), (j, -1)]), nat.combo(&[(v(i), v(j), 1)]))),
                f => {
                    out.push((
                        r(&[(i, 1), (j, -1)]),
                        nat.combo(&[(v(i), v(j), 1), (vb(j), vb(i), -1)]),
                    ));
                    if i < j {
                        let s = if f == Family::C { 1 } else { -1 };
                        out.push((
                            r(&[(i, 1), (j, 1)]),
                            nat.combo(&[(v(i), vb(j), 1), (v(j), vb(i), s)]),
                        ));
                        out.push((
                            r(&[(i, -1), (j, -1)]),
                            nat.combo(&[(vb(i), v(j), 1), (vb(j), v(i), s)]),
                        ));
                    }
                }
            }
        }
        match nat.family() {
            Family::B => {
                let z = nat.v0().unwrap();
                out.push((r(&[(i, 1)]), nat.combo(&[(v(i), z, 1), (z, vb(i), -1)])));
                out.push((r(&[(i, -1)]), nat.combo(&[(vb(i), z, 1), (z, v(i), -1)])));
            }
            Family::C => {
                out.push((r(&[(i, 2)]), nat.combo(&[(v(i), vb(i), 1)])));
                out.push((r(&[(i, -2)]), nat.combo(&[(vb(i), v(i), 1)])));
            }
            _ => {}
        }
    }
    out
}

pub fn weight_multiset(ws: &[Weight]) -> BTreeMap<Weight, usize> {
    let mut m = BTreeMap::new();
    for w in ws {
        *m.entry(w.clone()).or_default() += 1;
    }
    m
}

pub fn expected_v(f: Family, n: usize) -> BTreeMap<Weight, usize> {
    let mut m = BTreeMap::new();
    for i in 1..=n {
        m.insert(Weight::from_root(&Root::eps(i), n), 1);
        m.insert(Weight::from_root(&Root::eps(i).neg(), n), 1);
    }
    if f == Family::B {
        m.insert(Weight::zero(n), 1);
    }
    m
}

pub fn expected_s(n: usize) -> BTreeMap<Weight, usize> {
    let mut m = BTreeMap::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                m.insert(Weight::from_root(&Root::from_pairs([(i, a), (j, b)]), n), 1);
            }
        }
    }
    if n > 1 {
        m.insert(Weight::zero(n), n - 1);
    }
    m
}

/// First failure among dimension, defining conditions, closure and the
/// printed root vectors of `g`.
pub fn algebra_witness(g: &MatrixLieAlgebra) -> Option<String> {
    let (f, n) = (g.family(), g.n());
    if g.dim() != dim_formula(f, n) {
        return Some(format!(
            "{f}{n}: dimension {} ≠ {}",
            g.dim(),
            dim_formula(f, n)
        ));
    }
    if let Some(i) = g.basis().iter().position(|x| !g.satisfies_definition(x)) {
        return Some(format!(
            "{f}{n}: basis element {i} breaks the defining condition"
        ));
    }
    for i in 0..g.dim() {
        for j in i + 1..g.dim() {
            if g.bracket_coords(i, j).is_err() {
                return Some(format!(
                    "{f}{n}: bracket of basis elements {i}, {j} leaves the algebra"
                ));
            }
        }
    }
    let nat = g.natural();
    let printed = printed_root_vectors(nat);
    let expected = generate(f, n).ok()?.nonzero().count();
    if printed.len() != expected {
        return Some(format!(
            "{f}{n}: {} printed root vectors for {expected} roots",
            printed.len()
        ));
    }
    for (alpha, x) in printed {
        if !g.contains(&x) {
            return Some(format!(
                "{f}{n}: printed vector for {alpha} is not in the algebra"
            ));
        }
        if let Some(h) = g
            .cartan()
            .iter()
            .find(|h| ad_eigenvalue(h, &x) != Some(eval(&alpha, h, nat)))
        {
            return Some(format!("{f}{n}: [h, x] ≠ {alpha}(h)x for h = {h:?}"));
        }
        if g.root_space(&alpha).len() != 1 {
            return Some(format!(
                "{f}{n}: root space of {alpha} is not one-dimensional"
            ));
        }
    }
    None
}

/// First failure among the weight tables of 𝒱 (B, C) and 𝒮 (C) at rank `n`
/// and the module axiom.
pub fn module_witness(n: usize) -> Option<String> {
    let check = |f: Family, kind: ModuleKind, want: BTreeMap<Weight, usize>| -> Option<String> {
        let g = build_algebra(f, n).ok()?;
        let m = match build_module(&g, kind) {
            Ok(m) => m,
            Err(e) => return Some(format!("{f}{n} {kind:?}: {e}")),
        };
        if weight_multiset(m.weights()) != want {
            return Some(format!("{f}{n} {kind:?}: weight table differs"));
        }
        match module_axiom_witness(&g, &m) {
            Ok(None) => None,
            Ok(Some(w)) => Some(format!("{f}{n} {kind:?}: {w}")),
            Err(e) => Some(format!("{f}{n} {kind:?}: {e}")),
        }
    };
    check(Family::B, ModuleKind::Natural, expected_v(Family::B, n))
        .or_else(|| check(Family::C, ModuleKind::Natural, expected_v(Family::C, n)))
        .or_else(|| {
            let g = build_algebra(Family::C, n).ok()?;
            let s = build_module(&g, ModuleKind::Symmetric).ok()?;
            (s.dim() != 2 * n * n - n - 1).then(|| format!("C{n}: dim 𝒮 = {}", s.dim()))
        })
        .or_else(|| check(Family::C, ModuleKind::Symmetric, expected_s(n)))
}
