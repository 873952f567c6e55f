//! Coordinate quadruples (𝔞, *, 𝒞, f), their validation, and the algebra
//! 𝔟 = 𝔞 ⊕ 𝒞 in a basis split as 𝒜 ⊕ ℬ ⊕ 𝒞.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::sparse::kernel_of_rows;
use crate::exactla::{Accumulator, Coordinates, Rational, RowEchelon, SparseVec};
use crate::rootsys::Family;

/// Raw structure constants over the given bases of 𝔞 and 𝒞.
#[derive(Clone, Debug, PartialEq)]
pub struct CoordinateQuadruple {
    pub family: Family,
    pub a_labels: Vec<String>,
    /// `a_mul[i][j] = a_i a_j` over the 𝔞-basis.
    pub a_mul: Vec<Vec<SparseVec>>,
    /// `star[i] = a_i*` over the 𝔞-basis.
    pub star: Vec<SparseVec>,
    pub c_labels: Vec<String>,
    /// `action[i][k] = a_i · c_k` over the 𝒞-basis.
    pub action: Vec<Vec<SparseVec>>,
    /// `f[k][l] = f(c_k, c_l)` over the 𝔞-basis.
    pub f: Vec<Vec<SparseVec>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawCheck {
    pub law: String,
    pub pass: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<LawCheck>,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&LawCheck> {
        self.checks.iter().find(|c| !c.pass)
    }

    /// Converts the first failure into a validation error.
    pub fn into_result(self) -> Result<()> {
        match self.first_failure() {
            None => Ok(()),
            Some(c) => Err(Error::Validation {
                law: c.law.clone(),
                witness: c.witness.clone().unwrap_or_default(),
            }),
        }
    }

    fn push(&mut self, law: &str, witness: Option<String>) {
        self.checks.push(LawCheck {
            law: law.into(),
            pass: witness.is_none(),
            witness,
        });
    }
}

fn combine(table: &[SparseVec], coeffs: &SparseVec) -> SparseVec {
    let mut acc = Accumulator::new();
    for (i, c) in coeffs.iter() {
        acc.add_vec(&table[i], c);
    }
    acc.finish()
}

impl CoordinateQuadruple {
    pub fn a_dim(&self) -> usize {
        self.a_labels.len()
    }

    pub fn c_dim(&self) -> usize {
        self.c_labels.len()
    }

    /// Product in 𝔞 of arbitrary vectors.
    pub fn a_product(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                acc.add_vec(&self.a_mul[i][j], &(a * b));
            }
        }
        acc.finish()
    }

    pub fn star_of(&self, x: &SparseVec) -> SparseVec {
        combine(&self.star, x)
    }

    /// α · c.
    pub fn act(&self, alpha: &SparseVec, c: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, a) in alpha.iter() {
            for (k, b) in c.iter() {
                acc.add_vec(&self.action[i][k], &(a * b));
            }
        }
        acc.finish()
    }

    pub fn form(&self, c: &SparseVec, d: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (k, a) in c.iter() {
            for (l, b) in d.iter() {
                acc.add_vec(&self.f[k][l], &(a * b));
            }
        }
        acc.finish()
    }

    /// The two-sided unit of 𝔞, if one exists.
    pub fn unit(&self) -> Option<SparseVec> {
        let n = self.a_dim();
        // Unknown u = Σ u_i a_i with u a_j = a_j and a_j u = a_j; augmented column n.
        let mut rows = Vec::new();
        for j in 0..n {
            for side in 0..2 {
                let mut per_out: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); n];
                for i in 0..n {
                    let prod = if side == 0 {
                        &self.a_mul[i][j]
                    } else {
                        &self.a_mul[j][i]
                    };
                    for (o, c) in prod.iter() {
                        per_out[o].push((i, c.clone()));
                    }
                }
                for (o, mut terms) in per_out.into_iter().enumerate() {
                    if o == j {
                        terms.push((n, Rational::from_int(-1)));
                    }
                    rows.push(SparseVec::from_entries(terms));
                }
            }
        }
        let ker = kernel_of_rows(&rows, n + 1);
        let v = ker.iter().find(|v| !v.coeff(n).is_zero())?;
        Some(v.slice(0, n).scale(&v.coeff(n).recip()?))
    }

    fn shape_witness(&self) -> Option<String> {
        let (na, nc) = (self.a_dim(), self.c_dim());
        let in_range = |v: &SparseVec, n: usize| v.max_index().map_or(true, |m| m < n);
        if na == 0 {
            return Some("𝔞 has dimension zero".into());
        }
        if self.a_mul.len() != na
            || self
                .a_mul
                .iter()
                .any(|r| r.len() != na || r.iter().any(|v| !in_range(v, na)))
        {
            return Some("product table shape".into());
        }
        if self.star.len() != na || self.star.iter().any(|v| !in_range(v, na)) {
            return Some("involution table shape".into());
        }
        if self.action.len() != na
            || self
                .action
                .iter()
                .any(|r| r.len() != nc || r.iter().any(|v| !in_range(v, nc)))
        {
            return Some("action table shape".into());
        }
        if self.f.len() != nc
            || self
                .f
                .iter()
                .any(|r| r.len() != nc || r.iter().any(|v| !in_range(v, na)))
        {
            return Some("form table shape".into());
        }
        None
    }

    /// The *-fixed and *-skew subspaces of 𝔞 as reduced row-echelon bases.
    pub fn star_eigenspaces(&self) -> (Vec<SparseVec>, Vec<SparseVec>) {
        let n = self.a_dim();
        let space = |sign: i64| {
            let images: Vec<SparseVec> = (0..n)
                .map(|i| self.star[i].sub(&SparseVec::unit(i).scale(&Rational::from_int(sign))))
                .collect();
            let ker = crate::exactla::sparse::kernel_of_columns(&images);
            RowEchelon::from_vectors(ker.iter())
                .rows()
                .cloned()
                .collect::<Vec<_>>()
        };
        (space(1), space(-1))
    }
}

/// Checks every law of the quadruple's type on all basis tuples.
pub fn validate_quadruple(q: &CoordinateQuadruple) -> ValidationReport {
    let mut rep = ValidationReport::default();
    if let Some(w) = q.shape_witness() {
        rep.push("shape", Some(w));
        return rep;
    }
    rep.push("shape", None);
    let (na, nc) = (q.a_dim(), q.c_dim());
    let e = SparseVec::unit;
    let la = |i: usize| q.a_labels[i].as_str();
    let lc = |k: usize| q.c_labels[k].as_str();
    let unit = q.unit();
    rep.push(
        "unit",
        if unit.is_some() {
            None
        } else {
            Some("no two-sided unit".into())
        },
    );

    let commutative = (0..na)
        .flat_map(|i| (0..na).map(move |j| (i, j)))
        .find(|&(i, j)| q.a_mul[i][j] != q.a_mul[j][i]);
    let associative = (0..na)
        .flat_map(|i| (0..na).flat_map(move |j| (0..na).map(move |k| (i, j, k))))
        .find(|&(i, j, k)| {
            q.a_product(&q.a_mul[i][j], &e(k)) != q.a_product(&e(i), &q.a_mul[j][k])
        });
    let is_b = q.family == Family::B;
    if !is_b {
        rep.push(
            "associative",
            associative.map(|(i, j, k)| format!("({} {}) {}", la(i), la(j), la(k))),
        );
    }
    if matches!(q.family, Family::B | Family::D) {
        rep.push(
            "commutative",
            commutative.map(|(i, j)| format!("{} {}", la(i), la(j))),
        );
    }
    let involutive = (0..na).find(|&i| q.star_of(&q.star[i]) != e(i));
    rep.push(
        "involution",
        involutive.map(|i| format!("{}** != {}", la(i), la(i))),
    );
    // Type A has * = id on a possibly noncommutative 𝔞.
    if q.family != Family::A {
        let anti = (0..na)
            .flat_map(|i| (0..na).map(move |j| (i, j)))
            .find(|&(i, j)| q.star_of(&q.a_mul[i][j]) != q.a_product(&q.star[j], &q.star[i]));
        rep.push(
            "antiautomorphism",
            anti.map(|(i, j)| format!("({} {})* != {}* {}*", la(i), la(j), la(j), la(i))),
        );
    }
    let star_id = (0..na).find(|&i| q.star[i] != e(i));
    if matches!(q.family, Family::A | Family::D) {
        rep.push(
            "star_identity",
            star_id.map(|i| format!("{}* != {}", la(i), la(i))),
        );
    }
    if q.family != Family::BC {
        rep.push("c_zero", (nc > 0).then(|| format!("𝒞 has dimension {nc}")));
    }
    if is_b {
        let (abasis, bbasis) = q.star_eigenspaces();
        let acoords = Coordinates::new(&abasis);
        let bcoords = Coordinates::new(&bbasis);
        let mut w = None;
        'outer: for x in &abasis {
            for y in &abasis {
                if !acoords.contains(&q.a_product(x, y)) {
                    w = Some("𝒜·𝒜 ⊄ 𝒜".to_string());
                    break 'outer;
                }
                for z in &abasis {
                    if q.a_product(&q.a_product(x, y), z) != q.a_product(x, &q.a_product(y, z)) {
                        w = Some("𝒜 not associative".to_string());
                        break 'outer;
                    }
                }
                for b in &bbasis {
                    let lhs = q.a_product(&q.a_product(x, y), b);
                    if !bcoords.contains(&q.a_product(x, b)) {
                        w = Some("𝒜·ℬ ⊄ ℬ".to_string());
                        break 'outer;
                    }
                    if lhs != q.a_product(x, &q.a_product(y, b)) {
                        w = Some("ℬ not an associative 𝒜-module".to_string());
                        break 'outer;
                    }
                    for b2 in &bbasis {
                        if q.a_product(&q.a_product(x, b), b2)
                            != q.a_product(x, &q.a_product(b, b2))
                        {
                            w = Some("ℬ×ℬ → 𝒜 not 𝒜-bilinear".to_string());
                            break 'outer;
                        }
                    }
                }
            }
        }
        if w.is_none() {
            'b: for b in &bbasis {
                for b2 in &bbasis {
                    if !acoords.contains(&q.a_product(b, b2)) {
                        w = Some("ℬ·ℬ ⊄ 𝒜".to_string());
                        break 'b;
                    }
                }
            }
        }
        rep.push("clifford_jordan", w);
    }
    if q.family == Family::BC {
        let u = unit.clone().unwrap_or_default();
        let module_unit = (0..nc).find(|&k| q.act(&u, &e(k)) != e(k));
        rep.push(
            "module_unit",
            module_unit.map(|k| format!("1·{} != {}", lc(k), lc(k))),
        );
        let module_assoc = (0..na)
            .flat_map(|i| (0..na).flat_map(move |j| (0..nc).map(move |k| (i, j, k))))
            .find(|&(i, j, k)| q.act(&q.a_mul[i][j], &e(k)) != q.act(&e(i), &q.action[j][k]));
        rep.push(
            "module_associative",
            module_assoc.map(|(i, j, k)| format!("({} {})·{}", la(i), la(j), lc(k))),
        );
        let f_linear = (0..na)
            .flat_map(|i| (0..nc).flat_map(move |k| (0..nc).map(move |l| (i, k, l))))
            .find(|&(i, k, l)| q.form(&q.action[i][k], &e(l)) != q.a_product(&e(i), &q.f[k][l]));
        rep.push(
            "f_linear",
            f_linear.map(|(i, k, l)| format!("f({}·{}, {})", la(i), lc(k), lc(l))),
        );
        let skew = (0..nc)
            .flat_map(|k| (0..nc).map(move |l| (k, l)))
            .find(|&(k, l)| q.star_of(&q.f[k][l]) != q.f[l][k].neg());
        rep.push(
            "skew_hermitian",
            skew.map(|(k, l)| format!("f({}, {})* != -f({}, {})", lc(k), lc(l), lc(l), lc(k))),
        );
    }
    rep
}

/// A validated quadruple with 𝔟 expressed in the split basis
/// `[𝒜-basis, ℬ-basis, 𝒞-basis]` and its product tabulated.
#[derive(Clone, Debug)]
pub struct CoordAlgebra {
    quad: CoordinateQuadruple,
    da: usize,
    db: usize,
    dc: usize,
    /// Split basis vectors in raw 𝔟 coordinates (𝔞 then 𝒞).
    split: Vec<SparseVec>,
    labels: Vec<String>,
    raw: Coordinates,
    mul: Vec<Vec<SparseVec>>,
    unit: SparseVec,
}

/// An element of 𝔟 split into its 𝒜, ℬ and 𝒞 parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordElement {
    pub a: SparseVec,
    pub b: SparseVec,
    pub c: SparseVec,
}

impl CoordAlgebra {
    pub fn new(quad: CoordinateQuadruple) -> Result<Self> {
        validate_quadruple(&quad).into_result()?;
        let (abasis, bbasis) = quad.star_eigenspaces();
        let (na, nc) = (quad.a_dim(), quad.c_dim());
        if abasis.len() + bbasis.len() != na {
            return Err(Error::Validation {
                law: "involution".into(),
                witness: "𝒜 ⊕ ℬ ≠ 𝔞".into(),
            });
        }
        let label = |prefix: &str, v: &SparseVec, names: &[String], off: usize| {
            let p = v.leading().expect("nonzero").0 - off;
            format!("{prefix}:{}", names[p])
        };
        let mut split = Vec::new();
        let mut labels = Vec::new();
        for v in &abasis {
            labels.push(label("a", v, &quad.a_labels, 0));
            split.push(v.clone());
        }
        for v in &bbasis {
            labels.push(label("b", v, &quad.a_labels, 0));
            split.push(v.clone());
        }
        for k in 0..nc {
            labels.push(format!("c:{}", quad.c_labels[k]));
            split.push(SparseVec::unit(na + k));
        }
        let raw = Coordinates::new(&split);
        let unit_raw = quad.unit().expect("validated");
        let mut alg = CoordAlgebra {
            da: abasis.len(),
            db: bbasis.len(),
            dc: nc,
            split,
            labels,
            raw,
            mul: Vec::new(),
            unit: SparseVec::new(),
            quad,
        };
        alg.unit = alg.from_raw(&unit_raw);
        let d = alg.dim();
        let mut mul = vec![vec![SparseVec::new(); d]; d];
        for (i, row) in mul.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = alg.from_raw(&alg.raw_mul(&alg.split[i], &alg.split[j]));
            }
        }
        alg.mul = mul;
        Ok(alg)
    }

    pub fn quadruple(&self) -> &CoordinateQuadruple {
        &self.quad
    }

    pub fn family(&self) -> Family {
        self.quad.family
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.da, self.db, self.dc)
    }

    pub fn dim(&self) -> usize {
        self.da + self.db + self.dc
    }

    /// Dimension of 𝔞 = 𝒜 ⊕ ℬ.
    pub fn a_dim(&self) -> usize {
        self.da + self.db
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &SparseVec {
        &self.unit
    }

    pub fn a_range(&self) -> std::ops::Range<usize> {
        0..self.da
    }

    pub fn b_range(&self) -> std::ops::Range<usize> {
        self.da..self.da + self.db
    }

    pub fn c_range(&self) -> std::ops::Range<usize> {
        self.da + self.db..self.dim()
    }

    /// Raw 𝔟 coordinates (𝔞-basis then 𝒞-basis) of a split vector.
    pub fn to_raw(&self, x: &SparseVec) -> SparseVec {
        combine(&self.split, x)
    }

    pub fn from_raw(&self, raw: &SparseVec) -> SparseVec {
        self.raw.solve(raw).expect("split basis spans 𝔟")
    }

    fn raw_mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let na = self.quad.a_dim();
        let (a1, c1) = (x.slice(0, na), x.slice(na, usize::MAX));
        let (a2, c2) = (y.slice(0, na), y.slice(na, usize::MAX));
        let alpha = self.quad.a_product(&a1, &a2).add(&self.quad.form(&c1, &c2));
        let c = self
            .quad
            .act(&a1, &c2)
            .add(&self.quad.act(&self.quad.star_of(&a2), &c1));
        alpha.add(&c.shifted(na))
    }

    pub fn split_element(&self, x: &SparseVec) -> CoordElement {
        CoordElement {
            a: x.slice(0, self.da),
            b: x.slice(self.da, self.da + self.db),
            c: x.slice(self.da + self.db, self.dim()),
        }
    }

    pub fn join_element(&self, e: &CoordElement) -> SparseVec {
        e.a.add(&e.b.shifted(self.da))
            .add(&e.c.shifted(self.da + self.db))
    }

    pub fn a_part(&self, x: &SparseVec) -> SparseVec {
        x.remap(|i| (i < self.da).then_some(i))
    }

    pub fn b_part(&self, x: &SparseVec) -> SparseVec {
        x.remap(|i| self.b_range().contains(&i).then_some(i))
    }

    pub fn c_part(&self, x: &SparseVec) -> SparseVec {
        x.remap(|i| self.c_range().contains(&i).then_some(i))
    }

    /// 𝔞-part (𝒜 ⊕ ℬ).
    pub fn alpha_part(&self, x: &SparseVec) -> SparseVec {
        x.remap(|i| (i < self.da + self.db).then_some(i))
    }

    /// The involution on the 𝔞-part (fixes 𝒜, negates ℬ); 𝒞-parts are dropped.
    pub fn star(&self, x: &SparseVec) -> SparseVec {
        self.a_part(x).sub(&self.b_part(x))
    }

    pub fn basis_mul(&self, i: usize, j: usize) -> &SparseVec {
        &self.mul[i][j]
    }

    /// The product on 𝔟 in split coordinates.
    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                acc.add_vec(&self.mul[i][j], &(a * b));
            }
        }
        acc.finish()
    }

    /// `x∘y = xy + yx`.
    pub fn circ(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        self.mul(x, y).add(&self.mul(y, x))
    }

    /// `[x, y] = xy − yx`.
    pub fn brk(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        self.mul(x, y).sub(&self.mul(y, x))
    }

    /// f(c, c') for 𝒞-parts, as an 𝔞 element.
    pub fn f(&self, c: &SparseVec, c2: &SparseVec) -> SparseVec {
        self.mul(&self.c_part(c), &self.c_part(c2))
    }

    /// `(c◊c', c♥c')`.
    pub fn diamond_heart(&self, c: &SparseVec, c2: &SparseVec) -> Result<(SparseVec, SparseVec)> {
        if self.dc == 0 {
            return Err(Error::Domain(format!(
                "type {} quadruple has no 𝒞",
                self.family()
            )));
        }
        let (f1, f2) = (self.f(c, c2), self.f(c2, c));
        let half = Rational::frac(1, 2);
        Ok((f1.sub(&f2).scale(&half), f1.add(&f2).scale(&half)))
    }

    /// β* = [a₁, a₂] + [b₁, b₂] − c₁♥c₂.
    pub fn beta_star(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = self
            .brk(&self.a_part(x), &self.a_part(y))
            .add(&self.brk(&self.b_part(x), &self.b_part(y)));
        if self.dc > 0 {
            let (cx, cy) = (self.c_part(x), self.c_part(y));
            if !cx.is_zero() && !cy.is_zero() {
                let (_, heart) = self.diamond_heart(&cx, &cy).expect("𝒞 present");
                out = out.sub(&heart);
            }
        }
        out
    }
}

/// The product of two elements of 𝔟.
pub fn b_mul(alg: &CoordAlgebra, x: &CoordElement, y: &CoordElement) -> CoordElement {
    alg.split_element(&alg.mul(&alg.join_element(x), &alg.join_element(y)))
}

/// `(x∘y, [x, y])`.
pub fn b_circ_brk(
    alg: &CoordAlgebra,
    x: &CoordElement,
    y: &CoordElement,
) -> (CoordElement, CoordElement) {
    let (x, y) = (alg.join_element(x), alg.join_element(y));
    (
        alg.split_element(&alg.circ(&x, &y)),
        alg.split_element(&alg.brk(&x, &y)),
    )
}

/// `(c◊c', c♥c')` for elements of 𝒞.
pub fn diamond_heart(
    alg: &CoordAlgebra,
    c: &CoordElement,
    c2: &CoordElement,
) -> Result<(CoordElement, CoordElement)> {
    let (d, h) = alg.diamond_heart(&alg.join_element(c), &alg.join_element(c2))?;
    Ok((alg.split_element(&d), alg.split_element(&h)))
}

/// β* for a pair of elements.
pub fn beta_star(alg: &CoordAlgebra, x: &CoordElement, y: &CoordElement) -> CoordElement {
    alg.split_element(&alg.beta_star(&alg.join_element(x), &alg.join_element(y)))
}
