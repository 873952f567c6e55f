//! Built-in coordinate quadruples.

use std::collections::BTreeMap;

use super::quadruple::CoordinateQuadruple;
use crate::error::{Error, Result};
use crate::exactla::{Rational, SparseVec};
use crate::rootsys::Family;

pub const PRESET_NAMES: [&str; 6] = [
    "matrix",
    "group_ring",
    "clifford",
    "matrix_transpose",
    "symplectic",
    "matrix_hermitian",
];

fn params_of(name: &str) -> &'static [(&'static str, usize)] {
    match name {
        "matrix" | "matrix_transpose" => &[("k", 2)],
        "group_ring" => &[("m", 3)],
        "clifford" => &[("d", 2)],
        "symplectic" => &[("m", 2)],
        "matrix_hermitian" => &[("k", 2), ("m", 2)],
        _ => &[],
    }
}

/// Parses `name`, `name(2,2)` or `name:k=2,m=2` into a name and parameters
/// with defaults filled in.
pub fn parse_preset(spec: &str) -> Result<(String, BTreeMap<String, usize>)> {
    let spec = spec.trim();
    let (name, rest, positional) = if let Some((n, r)) = spec.split_once(':') {
        (n, r, false)
    } else if let Some((n, r)) = spec.split_once('(') {
        let r = r
            .strip_suffix(')')
            .ok_or_else(|| Error::Parse(format!("unclosed parameter list in {spec:?}")))?;
        (n, r, true)
    } else {
        (spec, "", false)
    };
    let name = name.trim();
    let defaults = params_of(name);
    if !PRESET_NAMES.contains(&name) {
        return Err(Error::Config(format!(
            "unknown preset {name:?}; expected one of {}",
            PRESET_NAMES.join(", ")
        )));
    }
    let mut params: BTreeMap<String, usize> =
        defaults.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    let parts: Vec<&str> = rest
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    if parts.len() > defaults.len() {
        return Err(Error::Config(format!(
            "preset {name} takes {} parameter(s)",
            defaults.len()
        )));
    }
    for (i, part) in parts.iter().enumerate() {
        let (key, value) = if positional {
            (defaults[i].0, *part)
        } else {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {part:?}")))?;
            (k.trim(), v.trim())
        };
        if !params.contains_key(key) {
            return Err(Error::Config(format!(
                "preset {name} has no parameter {key:?}"
            )));
        }
        let v: usize = value.parse().map_err(|_| {
            Error::Parse(format!(
                "parameter {key} must be a positive integer, got {value:?}"
            ))
        })?;
        params.insert(key.to_string(), v);
    }
    Ok((name.to_string(), params))
}

/// Builds a preset from a string such as `matrix_hermitian:k=2,m=2`.
pub fn preset(spec: &str) -> Result<CoordinateQuadruple> {
    let (name, p) = parse_preset(spec)?;
    match name.as_str() {
        "matrix" => matrix(p["k"]),
        "group_ring" => group_ring(p["m"]),
        "clifford" => clifford(p["d"]),
        "matrix_transpose" => matrix_transpose(p["k"]),
        "symplectic" => symplectic(p["m"]),
        "matrix_hermitian" => matrix_hermitian(p["k"], p["m"]),
        _ => unreachable!("name checked by parse_preset"),
    }
}

fn positive(name: &str, key: &str, v: usize) -> Result<()> {
    if v == 0 {
        return Err(Error::Domain(format!("preset {name} needs {key} ≥ 1")));
    }
    Ok(())
}

fn matrix_tables(k: usize) -> (Vec<String>, Vec<Vec<SparseVec>>) {
    let idx = |p: usize, q: usize| p * k + q;
    let labels = (0..k * k)
        .map(|i| format!("e{}{}", i / k + 1, i % k + 1))
        .collect();
    let mut mul = vec![vec![SparseVec::new(); k * k]; k * k];
    for p in 0..k {
        for q in 0..k {
            for s in 0..k {
                mul[idx(p, q)][idx(q, s)] = SparseVec::unit(idx(p, s));
            }
        }
    }
    (labels, mul)
}

fn quad(
    family: Family,
    a_labels: Vec<String>,
    a_mul: Vec<Vec<SparseVec>>,
    star: Vec<SparseVec>,
) -> CoordinateQuadruple {
    let na = a_labels.len();
    CoordinateQuadruple {
        family,
        a_labels,
        a_mul,
        star,
        c_labels: Vec::new(),
        action: vec![Vec::new(); na],
        f: Vec::new(),
    }
}

/// `M_k(𝔽)` with `* = id`, type A.
pub fn matrix(k: usize) -> Result<CoordinateQuadruple> {
    positive("matrix", "k", k)?;
    let (labels, mul) = matrix_tables(k);
    let star = (0..k * k).map(SparseVec::unit).collect();
    Ok(quad(Family::A, labels, mul, star))
}

/// `M_k(𝔽)` with transpose, type C.
pub fn matrix_transpose(k: usize) -> Result<CoordinateQuadruple> {
    positive("matrix_transpose", "k", k)?;
    let (labels, mul) = matrix_tables(k);
    let star = (0..k * k)
        .map(|i| SparseVec::unit((i % k) * k + i / k))
        .collect();
    Ok(quad(Family::C, labels, mul, star))
}

/// The group algebra of the cyclic group of order `m`, `* = id`, type D.
pub fn group_ring(m: usize) -> Result<CoordinateQuadruple> {
    positive("group_ring", "m", m)?;
    let labels = (0..m).map(|i| format!("g{i}")).collect();
    let mul = (0..m)
        .map(|i| (0..m).map(|j| SparseVec::unit((i + j) % m)).collect())
        .collect();
    let star = (0..m).map(SparseVec::unit).collect();
    Ok(quad(Family::D, labels, mul, star))
}

/// `𝔽1 ⊕ 𝔽^d` with `w_i w_j = δ_ij 1` and `*` negating each `w_i`, type B.
pub fn clifford(d: usize) -> Result<CoordinateQuadruple> {
    positive("clifford", "d", d)?;
    let n = d + 1;
    let labels = std::iter::once("1".to_string())
        .chain((1..=d).map(|i| format!("w{i}")))
        .collect();
    let mul = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match (i, j) {
                    (0, j) => SparseVec::unit(j),
                    (i, 0) => SparseVec::unit(i),
                    (i, j) if i == j => SparseVec::unit(0),
                    _ => SparseVec::new(),
                })
                .collect()
        })
        .collect();
    let star = (0..n)
        .map(|i| {
            if i == 0 {
                SparseVec::unit(0)
            } else {
                SparseVec::single(i, Rational::from_int(-1))
            }
        })
        .collect();
    Ok(quad(Family::B, labels, mul, star))
}

/// The standard skew form on `𝔽^m`: `G[i][i+m/2] = 1`, `G[i+m/2][i] = −1`.
fn skew_gram(m: usize) -> Vec<Vec<i64>> {
    let h = m / 2;
    let mut g = vec![vec![0; m]; m];
    for i in 0..h {
        g[i][i + h] = 1;
        g[i + h][i] = -1;
    }
    g
}

fn even(name: &str, m: usize) -> Result<()> {
    if m == 0 || m % 2 != 0 {
        return Err(Error::Domain(format!(
            "preset {name} needs an even m ≥ 2, got {m}"
        )));
    }
    Ok(())
}

/// `𝔞 = 𝔽`, `𝒞 = 𝔽^m` with the standard skew form, type BC.
pub fn symplectic(m: usize) -> Result<CoordinateQuadruple> {
    even("symplectic", m)?;
    let g = skew_gram(m);
    Ok(CoordinateQuadruple {
        family: Family::BC,
        a_labels: vec!["1".into()],
        a_mul: vec![vec![SparseVec::unit(0)]],
        star: vec![SparseVec::unit(0)],
        c_labels: (1..=m).map(|i| format!("c{i}")).collect(),
        action: vec![(0..m).map(SparseVec::unit).collect()],
        f: g.iter()
            .map(|row| {
                row.iter()
                    .map(|&x| SparseVec::single(0, Rational::from_int(x)))
                    .collect()
            })
            .collect(),
    })
}

/// `𝔞 = M_k(𝔽)` with transpose, `𝒞 = M_{k×m}(𝔽)` under left
/// multiplication and `f(c, c') = c G c'ᵀ` for the standard skew `G`, type BC.
pub fn matrix_hermitian(k: usize, m: usize) -> Result<CoordinateQuadruple> {
    positive("matrix_hermitian", "k", k)?;
    even("matrix_hermitian", m)?;
    let mut q = matrix_transpose(k)?;
    let g = skew_gram(m);
    let a = |p: usize, r: usize| p * k + r;
    let c = |p: usize, q: usize| p * m + q;
    q.family = Family::BC;
    q.c_labels = (0..k * m)
        .map(|i| format!("c{}{}", i / m + 1, i % m + 1))
        .collect();
    // e_pq · c_rs = δ_qr c_ps
    q.action = (0..k * k)
        .map(|i| {
            let (p, qq) = (i / k, i % k);
            (0..k * m)
                .map(|j| {
                    let (r, s) = (j / m, j % m);
                    if qq == r {
                        SparseVec::unit(c(p, s))
                    } else {
                        SparseVec::new()
                    }
                })
                .collect()
        })
        .collect();
    // f(c_pq, c_rs) = G_qs e_pr
    q.f = (0..k * m)
        .map(|i| {
            let (p, qq) = (i / m, i % m);
            (0..k * m)
                .map(|j| {
                    let (r, s) = (j / m, j % m);
                    SparseVec::single(a(p, r), Rational::from_int(g[qq][s]))
                })
                .collect()
        })
        .collect();
    Ok(q)
}
