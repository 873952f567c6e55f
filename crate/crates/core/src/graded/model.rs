use rayon::prelude::*;

use crate::coord::{
    build_bb, check_uniform, tensor, BBQuotient, CoordAlgebra, CoordinateQuadruple, TensorQuotient,
};
use crate::error::{Error, Result};
use crate::exactla::{Accumulator, Rational, SparseMatrix, SparseVec};
use crate::liealg::{
    build_algebra, build_module, circ_trunc, v_ops, FormedSpace, MatrixLieAlgebra, ModuleKind,
    RepModule, TruncationIdempotent, VOpVariant,
};
use crate::rootsys::{Family, Root};

/// Which summand of ℒ a basis element belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Component {
    G,
    S,
    V,
    D,
}

/// A basis element of ℒ decoded into component-local indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    /// `x ⊗ a`: 𝒢 basis index, 𝒜 basis index.
    G(usize, usize),
    /// `s ⊗ b`: 𝒮 basis index, ℬ basis index.
    S(usize, usize),
    /// `u ⊗ c`: 𝒱 basis index, 𝒞 basis index.
    V(usize, usize),
    /// Coset basis index of the D-part.
    D(usize),
}

/// An element of ℒ split into its four parts, each in component-local
/// coordinates (row-major `module index × coordinate index`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedElement {
    pub g_part: SparseVec,
    pub s_part: SparseVec,
    pub v_part: SparseVec,
    pub d_part: SparseVec,
}

/// Whether `ℓ` meets the rank bound required by the construction.
pub fn meets_rank_bound(family: Family, ell: usize) -> bool {
    match family {
        Family::BC => ell > 3,
        Family::B | Family::C => ell > 4,
        Family::A | Family::D => ell + 1 > 5,
    }
}

/// `|I_0|` for level `ℓ`.
pub fn level_size(family: Family, ell: usize) -> usize {
    match family {
        Family::A | Family::D => ell + 1,
        _ => ell,
    }
}

/// ℒ(𝔟, 𝒦) truncated to `n` indices, with its full basis bracket table.
#[derive(Clone, Debug)]
pub struct GradedModel {
    family: Family,
    n: usize,
    ell: usize,
    below_bound: bool,
    g: MatrixLieAlgebra,
    s: Option<RepModule>,
    v: Option<RepModule>,
    form: Option<FormedSpace>,
    idem0: TruncationIdempotent,
    coord: CoordAlgebra,
    bb: BBQuotient,
    k_span: Vec<SparseVec>,
    d: TensorQuotient,
    offsets: [usize; 5],
    labels: Vec<String>,
    weights: Vec<Root>,
    table: Vec<Vec<SparseVec>>,
}

/// Builds the model. `k_span` lists vectors of {𝔟,𝔟}_ℓ spanning 𝒦; they must
/// lie in the full homology and satisfy the uniform property.
pub fn build_model(
    family: Family,
    n: usize,
    ell: usize,
    quad: &CoordinateQuadruple,
    k_span: &[SparseVec],
    override_bounds: bool,
) -> Result<GradedModel> {
    if quad.family != family {
        return Err(Error::TypeMismatch(format!(
            "model of type {family} needs a type {family} quadruple, got type {}",
            quad.family
        )));
    }
    let below_bound = !meets_rank_bound(family, ell);
    if below_bound && !override_bounds {
        return Err(Error::Bound(format!(
            "type {family} needs a larger level than ℓ = {ell}; pass the override to build anyway"
        )));
    }
    let size = level_size(family, ell);
    if size > n {
        return Err(Error::Domain(format!("|I_0| = {size} exceeds n = {n}")));
    }
    let coord = CoordAlgebra::new(quad.clone())?;
    let bb = build_bb(&coord, ell)?;
    let uniform = check_uniform(&bb, k_span, ell + 3)?;
    if let Some(w) = uniform.witness {
        return Err(Error::Uniform(w));
    }
    let mut relations = bb.quotient().relations().clone();
    for k in k_span {
        relations.insert(&bb.quotient().lift(k));
    }
    let d = TensorQuotient::new(&coord, relations);
    let g = build_algebra(family, n)?;
    let s = match family {
        Family::C | Family::BC => Some(build_module(&g, ModuleKind::Symmetric)?),
        Family::B => Some(build_module(&g, ModuleKind::Natural)?),
        _ => None,
    };
    let v = match family {
        Family::BC => Some(build_module(&g, ModuleKind::Natural)?),
        _ => None,
    };
    let form = g.ambient().cloned();
    let idem0 = TruncationIdempotent::first(g.natural(), size)?;
    let (da, db, dc) = coord.dims();
    let sdim = s.as_ref().map_or(0, RepModule::dim);
    let vdim = v.as_ref().map_or(0, RepModule::dim);
    let mut offsets = [0; 5];
    offsets[1] = g.dim() * da;
    offsets[2] = offsets[1] + sdim * db;
    offsets[3] = offsets[2] + vdim * dc;
    offsets[4] = offsets[3] + d.dim();

    let mut model = GradedModel {
        family,
        n,
        ell,
        below_bound,
        g,
        s,
        v,
        form,
        idem0,
        coord,
        bb,
        k_span: k_span.to_vec(),
        d,
        offsets,
        labels: Vec::new(),
        weights: Vec::new(),
        table: Vec::new(),
    };
    let dim = model.dim();
    let clabels = model.coord.labels().to_vec();
    let mut labels = Vec::with_capacity(dim);
    let mut weights = Vec::with_capacity(dim);
    for i in 0..dim {
        let (label, weight) = match model.part(i) {
            Part::G(x, a) => (
                format!("{}⊗{}", model.g.labels()[x], clabels[a]),
                model.g.weights()[x].clone(),
            ),
            Part::S(s, b) => {
                let m = model.s.as_ref().expect("S present");
                (
                    format!("{}⊗{}", m.labels()[s], clabels[da + b]),
                    weight_root(&m.weights()[s])?,
                )
            }
            Part::V(u, c) => {
                let m = model.v.as_ref().expect("V present");
                (
                    format!("{}⊗{}", m.labels()[u], clabels[da + db + c]),
                    weight_root(&m.weights()[u])?,
                )
            }
            Part::D(p) => (format!("⟨{}⟩", model.d.labels()[p]), Root::zero()),
        };
        labels.push(label);
        weights.push(weight);
    }
    model.labels = labels;
    model.weights = weights;
    let table: Vec<Vec<SparseVec>> = (0..dim)
        .into_par_iter()
        .map(|i| {
            (0..dim)
                .map(|j| model.bracket_basis(i, j))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    model.table = table;
    Ok(model)
}

fn weight_root(w: &crate::liealg::Weight) -> Result<Root> {
    w.to_root()
        .ok_or_else(|| Error::Decomposition(format!("weight {w} is not integral")))
}

impl GradedModel {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// Whether the model was built below the rank bound via the override.
    pub fn below_bound(&self) -> bool {
        self.below_bound
    }

    pub fn level_size(&self) -> usize {
        self.idem0.size()
    }

    pub fn lie_algebra(&self) -> &MatrixLieAlgebra {
        &self.g
    }

    pub fn s_module(&self) -> Option<&RepModule> {
        self.s.as_ref()
    }

    pub fn v_module(&self) -> Option<&RepModule> {
        self.v.as_ref()
    }

    pub fn coord(&self) -> &CoordAlgebra {
        &self.coord
    }

    pub fn bb(&self) -> &BBQuotient {
        &self.bb
    }

    pub fn k_span(&self) -> &[SparseVec] {
        &self.k_span
    }

    pub fn d_quotient(&self) -> &TensorQuotient {
        &self.d
    }

    pub fn idem0(&self) -> &TruncationIdempotent {
        &self.idem0
    }

    pub fn dim(&self) -> usize {
        self.offsets[4]
    }

    /// Dimension of each summand `(G⊗𝒜, S⊗ℬ, V⊗𝒞, D)`.
    pub fn component_dims(&self) -> [usize; 4] {
        [0, 1, 2, 3].map(|k| self.offsets[k + 1] - self.offsets[k])
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// ℋ-weight of each basis element as built.
    pub fn weights(&self) -> &[Root] {
        &self.weights
    }

    pub fn component(&self, i: usize) -> Component {
        match self.part(i) {
            Part::G(..) => Component::G,
            Part::S(..) => Component::S,
            Part::V(..) => Component::V,
            Part::D(_) => Component::D,
        }
    }

    pub fn part(&self, i: usize) -> Part {
        let (da, db, dc) = self.coord.dims();
        let o = &self.offsets;
        if i < o[1] {
            Part::G(i / da, i % da)
        } else if i < o[2] {
            Part::S((i - o[1]) / db, (i - o[1]) % db)
        } else if i < o[3] {
            Part::V((i - o[2]) / dc, (i - o[2]) % dc)
        } else {
            Part::D(i - o[3])
        }
    }

    pub fn split(&self, x: &SparseVec) -> GradedElement {
        let o = &self.offsets;
        GradedElement {
            g_part: x.slice(o[0], o[1]),
            s_part: x.slice(o[1], o[2]),
            v_part: x.slice(o[2], o[3]),
            d_part: x.slice(o[3], o[4]),
        }
    }

    pub fn join(&self, e: &GradedElement) -> SparseVec {
        let o = &self.offsets;
        e.g_part
            .add(&e.s_part.shifted(o[1]))
            .add(&e.v_part.shifted(o[2]))
            .add(&e.d_part.shifted(o[3]))
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    /// `[e_i, y]` for a basis element `e_i`.
    pub fn bracket_left(&self, i: usize, y: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (j, c) in y.iter() {
            acc.add_vec(&self.table[i][j], c);
        }
        acc.finish()
    }

    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                acc.add_vec(&self.table[i][j], &(a * b));
            }
        }
        acc.finish()
    }

    /// `x ⊗ α` for `x ∈ 𝒢` (as a matrix) and `α ∈ 𝒜` (split coordinates).
    pub fn g_tensor(&self, x: &SparseMatrix, alpha: &SparseVec) -> Result<SparseVec> {
        let mut acc = Accumulator::new();
        self.put_g(&mut acc, x, alpha, &Rational::one())?;
        Ok(acc.finish())
    }

    /// The D-part element `⟨t⟩` for a tensor `t ∈ 𝔟⊗𝔟`.
    pub fn d_element(&self, t: &SparseVec) -> SparseVec {
        self.d.project(t).shifted(self.offsets[3])
    }

    /// `1 ∈ 𝒜` in split coordinates.
    pub fn unit(&self) -> &SparseVec {
        self.coord.unit()
    }

    fn check_range(
        &self,
        coord: &SparseVec,
        range: std::ops::Range<usize>,
        what: &str,
    ) -> Result<()> {
        if coord.iter().any(|(i, _)| !range.contains(&i)) {
            return Err(Error::Internal(format!(
                "coordinate factor of a {what} term leaves its space"
            )));
        }
        Ok(())
    }

    pub(crate) fn put_g(
        &self,
        acc: &mut Accumulator,
        x: &SparseMatrix,
        coord: &SparseVec,
        k: &Rational,
    ) -> Result<()> {
        if coord.is_zero() || x.is_zero() || k.is_zero() {
            return Ok(());
        }
        self.check_range(coord, self.coord.a_range(), "𝒢⊗𝒜")?;
        let xg = self
            .g
            .coordinates(x)
            .ok_or_else(|| Error::Internal("matrix term lies outside 𝒢".into()))?;
        let da = self.coord.dims().0;
        for (xi, cx) in xg.iter() {
            for (a, ca) in coord.iter() {
                acc.add(xi * da + a, &(cx * ca * k));
            }
        }
        Ok(())
    }

    fn put_s(
        &self,
        acc: &mut Accumulator,
        ambient: &SparseVec,
        coord: &SparseVec,
        k: &Rational,
    ) -> Result<()> {
        if coord.is_zero() || ambient.is_zero() || k.is_zero() {
            return Ok(());
        }
        self.check_range(coord, self.coord.b_range(), "𝒮⊗ℬ")?;
        let m = self
            .s
            .as_ref()
            .ok_or_else(|| Error::Internal("𝒮 term in a model without 𝒮".into()))?;
        let sc = m
            .coordinates(ambient)
            .ok_or_else(|| Error::Internal("term lies outside 𝒮".into()))?;
        let (da, db, _) = self.coord.dims();
        for (si, cs) in sc.iter() {
            for (b, cb) in coord.iter() {
                acc.add(self.offsets[1] + si * db + (b - da), &(cs * cb * k));
            }
        }
        Ok(())
    }

    pub(crate) fn put_s_mat(
        &self,
        acc: &mut Accumulator,
        s: &SparseMatrix,
        coord: &SparseVec,
        k: &Rational,
    ) -> Result<()> {
        self.put_s(acc, &s.flatten(), coord, k)
    }

    pub(crate) fn put_v(
        &self,
        acc: &mut Accumulator,
        u: &SparseVec,
        coord: &SparseVec,
        k: &Rational,
    ) -> Result<()> {
        if coord.is_zero() || u.is_zero() || k.is_zero() {
            return Ok(());
        }
        self.check_range(coord, self.coord.c_range(), "𝒱⊗𝒞")?;
        let m = self
            .v
            .as_ref()
            .ok_or_else(|| Error::Internal("𝒱 term in a model without 𝒱".into()))?;
        let vc = m
            .coordinates(u)
            .ok_or_else(|| Error::Internal("term lies outside 𝒱".into()))?;
        let (da, db, dc) = self.coord.dims();
        for (vi, cv) in vc.iter() {
            for (c, cc) in coord.iter() {
                acc.add(self.offsets[2] + vi * dc + (c - da - db), &(cv * cc * k));
            }
        }
        Ok(())
    }

    fn put_d(&self, acc: &mut Accumulator, t: &SparseVec, k: &Rational) {
        if k.is_zero() {
            return;
        }
        for (p, c) in self.d.project(t).iter() {
            acc.add(self.offsets[3] + p, &(c * k));
        }
    }

    fn g_matrix(&self, x: usize) -> &SparseMatrix {
        &self.g.basis()[x]
    }

    fn s_ambient(&self, s: usize) -> SparseVec {
        self.s
            .as_ref()
            .expect("S present")
            .to_ambient(&SparseVec::unit(s))
    }

    fn s_matrix(&self, s: usize) -> SparseMatrix {
        self.s
            .as_ref()
            .and_then(|m| m.basis_matrix(s))
            .expect("matrix-valued S")
    }

    fn v_vector(&self, u: usize) -> SparseVec {
        self.v
            .as_ref()
            .expect("V present")
            .to_ambient(&SparseVec::unit(u))
    }

    fn circ(&self, x: &SparseMatrix, y: &SparseMatrix) -> Result<SparseMatrix> {
        circ_trunc(x, y, &self.idem0, self.family)
    }

    fn form(&self) -> &FormedSpace {
        self.form.as_ref().expect("formed space")
    }

    /// `D_{s,t}: w ↦ (s, w)t − (t, w)s` on 𝒱.
    fn jordan_d(&self, s: &SparseVec, t: &SparseVec) -> SparseMatrix {
        let form = self.form();
        let space = form.natural().space().clone();
        let outer = |col: &SparseVec, row: &SparseVec, sign: i64| {
            col.iter()
                .flat_map(|(i, a)| {
                    row.iter()
                        .map(move |(j, b)| ((i, j), a * b * Rational::from_int(sign)))
                })
                .collect::<Vec<_>>()
        };
        let mut entries = outer(t, &form.left_functional(s), 1);
        entries.extend(outer(s, &form.left_functional(t), -1));
        SparseMatrix::from_entries(space.clone(), space, entries).expect("in range")
    }

    fn coord_vec(&self, p: Part) -> SparseVec {
        let (da, db, _) = self.coord.dims();
        match p {
            Part::G(_, a) => SparseVec::unit(a),
            Part::S(_, b) => SparseVec::unit(da + b),
            Part::V(_, c) => SparseVec::unit(da + db + c),
            Part::D(_) => SparseVec::new(),
        }
    }

    fn coset_tensor(&self, p: usize) -> SparseVec {
        SparseVec::unit(self.d.coset_tensor(p))
    }

    /// The bracket of two basis elements from the family's table.
    fn bracket_basis(&self, i: usize, j: usize) -> Result<SparseVec> {
        let (pi, pj) = (self.part(i), self.part(j));
        let lower = |p: Part| match p {
            Part::G(..) => 0,
            Part::S(..) => 1,
            Part::V(..) => 2,
            Part::D(_) => 3,
        };
        // Mixed pairs are defined in one order; D is placed on the left.
        let swap = match (pi, pj) {
            (Part::D(_), Part::D(_)) => false,
            (_, Part::D(_)) => true,
            (Part::D(_), _) => false,
            _ => lower(pi) > lower(pj),
        };
        if swap {
            return Ok(self.bracket_ordered(pj, pi)?.neg());
        }
        self.bracket_ordered(pi, pj)
    }

    fn bracket_ordered(&self, p: Part, q: Part) -> Result<SparseVec> {
        let mut acc = Accumulator::new();
        let one = Rational::one();
        let half = Rational::frac(1, 2);
        let cb = &self.coord;
        let (alpha, alpha2) = (self.coord_vec(p), self.coord_vec(q));
        let d = cb.dim();
        match self.family {
            Family::C | Family::BC => {
                let ell = Rational::from_int(self.ell as i64);
                let k = -(Rational::from_int(4) * &ell).recip().expect("nonzero");
                let j0 = self.idem0.matrix();
                match (p, q) {
                    (Part::G(x, _), Part::G(y, _)) => {
                        let (x, y) = (self.g_matrix(x), self.g_matrix(y));
                        self.put_g(
                            &mut acc,
                            &x.commutator(y)?,
                            &cb.circ(&alpha, &alpha2),
                            &half,
                        )?;
                        self.put_s_mat(
                            &mut acc,
                            &self.circ(x, y)?,
                            &cb.brk(&alpha, &alpha2),
                            &half,
                        )?;
                        self.put_d(&mut acc, &tensor(d, &alpha, &alpha2), &x.trace_product(y)?);
                    }
                    (Part::G(x, _), Part::S(s, _)) => {
                        let (x, s) = (self.g_matrix(x), self.s_matrix(s));
                        self.put_g(
                            &mut acc,
                            &self.circ(x, &s)?,
                            &cb.brk(&alpha, &alpha2),
                            &half,
                        )?;
                        self.put_s_mat(
                            &mut acc,
                            &x.commutator(&s)?,
                            &cb.circ(&alpha, &alpha2),
                            &half,
                        )?;
                    }
                    (Part::S(s, _), Part::S(t, _)) => {
                        let (s, t) = (self.s_matrix(s), self.s_matrix(t));
                        self.put_g(
                            &mut acc,
                            &s.commutator(&t)?,
                            &cb.circ(&alpha, &alpha2),
                            &half,
                        )?;
                        self.put_s_mat(
                            &mut acc,
                            &self.circ(&s, &t)?,
                            &cb.brk(&alpha, &alpha2),
                            &half,
                        )?;
                        self.put_d(&mut acc, &tensor(d, &alpha, &alpha2), &s.trace_product(&t)?);
                    }
                    (Part::G(x, _), Part::V(u, _)) => {
                        let xu = self.g_matrix(x).apply(&self.v_vector(u));
                        self.put_v(&mut acc, &xu, &cb.mul(&alpha, &alpha2), &one)?;
                    }
                    (Part::S(s, _), Part::V(u, _)) => {
                        let su = self.s_matrix(s).apply(&self.v_vector(u));
                        self.put_v(&mut acc, &su, &cb.mul(&alpha, &alpha2), &one)?;
                    }
                    (Part::V(u, _), Part::V(v, _)) => {
                        let (u, v) = (self.v_vector(u), self.v_vector(v));
                        let (diamond, heart) = cb.diamond_heart(&alpha, &alpha2)?;
                        let form = self.form();
                        self.put_g(
                            &mut acc,
                            &v_ops(&u, &v, form, &self.idem0, VOpVariant::Circ),
                            &diamond,
                            &one,
                        )?;
                        self.put_s_mat(
                            &mut acc,
                            &v_ops(&u, &v, form, &self.idem0, VOpVariant::BracketTrunc),
                            &heart,
                            &one,
                        )?;
                        self.put_d(&mut acc, &tensor(d, &alpha, &alpha2), &form.form(&u, &v));
                    }
                    (Part::D(pp), other) => {
                        let (b1, b2) = self.d.coset_pair(pp);
                        let (b1, b2) = (SparseVec::unit(b1), SparseVec::unit(b2));
                        let bstar = cb.beta_star(&b1, &b2);
                        match other {
                            Part::G(x, _) => {
                                let x = self.g_matrix(x);
                                self.put_g(
                                    &mut acc,
                                    &self.circ(x, j0)?,
                                    &cb.brk(&alpha2, &bstar),
                                    &k,
                                )?;
                                self.put_s_mat(
                                    &mut acc,
                                    &x.commutator(j0)?,
                                    &cb.circ(&alpha2, &bstar),
                                    &k,
                                )?;
                            }
                            Part::S(s, _) => {
                                let s = self.s_matrix(s);
                                self.put_g(
                                    &mut acc,
                                    &s.commutator(j0)?,
                                    &cb.circ(&alpha2, &bstar),
                                    &k,
                                )?;
                                self.put_s_mat(
                                    &mut acc,
                                    &self.circ(&s, j0)?,
                                    &cb.brk(&alpha2, &bstar),
                                    &k,
                                )?;
                                let c = Rational::from_int(2) * &k * s.trace_product(j0)?;
                                self.put_d(&mut acc, &tensor(d, &alpha2, &bstar), &c);
                            }
                            Part::V(u, _) => {
                                let u = self.v_vector(u);
                                let c = &alpha2;
                                let inv = (Rational::from_int(2) * &ell).recip().expect("nonzero");
                                self.put_v(&mut acc, &j0.apply(&u), &cb.mul(&bstar, c), &inv)?;
                                let (c1, c2) = (cb.c_part(&b1), cb.c_part(&b2));
                                let tail =
                                    cb.mul(&cb.f(c, &c2), &c1).add(&cb.mul(&cb.f(c, &c1), &c2));
                                self.put_v(&mut acc, &u, &tail, &-half)?;
                            }
                            Part::D(qq) => {
                                let t = self.bb.bracket_tensors(
                                    &self.coset_tensor(pp),
                                    &self.coset_tensor(qq),
                                );
                                self.put_d(&mut acc, &t, &one);
                            }
                        }
                    }
                    _ => unreachable!("pairs are ordered before dispatch"),
                }
            }
            Family::A => {
                let m = Rational::from_int(self.idem0.size() as i64);
                let k = -(Rational::from_int(2) * &m).recip().expect("nonzero");
                let j0 = self.idem0.matrix();
                match (p, q) {
                    (Part::G(x, _), Part::G(y, _)) => {
                        let (x, y) = (self.g_matrix(x), self.g_matrix(y));
                        self.put_g(
                            &mut acc,
                            &x.commutator(y)?,
                            &cb.circ(&alpha, &alpha2),
                            &half,
                        )?;
                        self.put_g(&mut acc, &self.circ(x, y)?, &cb.brk(&alpha, &alpha2), &half)?;
                        self.put_d(&mut acc, &tensor(d, &alpha, &alpha2), &x.trace_product(y)?);
                    }
                    (Part::D(pp), Part::G(x, _)) => {
                        let (b1, b2) = self.d.coset_pair(pp);
                        let bstar = cb.beta_star(&SparseVec::unit(b1), &SparseVec::unit(b2));
                        let x = self.g_matrix(x);
                        self.put_g(&mut acc, &self.circ(x, j0)?, &cb.brk(&alpha2, &bstar), &k)?;
                        self.put_g(&mut acc, &x.commutator(j0)?, &cb.circ(&alpha2, &bstar), &k)?;
                        let c = Rational::from_int(2) * &k * j0.trace_product(x)?;
                        self.put_d(&mut acc, &tensor(d, &alpha2, &bstar), &c);
                    }
                    (Part::D(pp), Part::D(qq)) => {
                        let t = self
                            .bb
                            .bracket_tensors(&self.coset_tensor(pp), &self.coset_tensor(qq));
                        self.put_d(&mut acc, &t, &one);
                    }
                    _ => unreachable!("type A has only 𝒢⊗𝒜 and D parts"),
                }
            }
            Family::D => match (p, q) {
                (Part::G(x, _), Part::G(y, _)) => {
                    let (x, y) = (self.g_matrix(x), self.g_matrix(y));
                    self.put_g(&mut acc, &x.commutator(y)?, &cb.mul(&alpha, &alpha2), &one)?;
                    self.put_d(&mut acc, &tensor(d, &alpha, &alpha2), &x.trace_product(y)?);
                }
                (Part::D(_), _) => {}
                _ => unreachable!("type D has only 𝒢⊗𝒜 and D parts"),
            },
            Family::B => match (p, q) {
                (Part::G(x, _), Part::G(y, _)) => {
                    let (x, y) = (self.g_matrix(x), self.g_matrix(y));
                    self.put_g(&mut acc, &x.commutator(y)?, &cb.mul(&alpha, &alpha2), &one)?;
                    self.put_d(&mut acc, &tensor(d, &alpha, &alpha2), &x.trace_product(y)?);
                }
                (Part::G(x, _), Part::S(s, _)) => {
                    let xs = self.g_matrix(x).apply(&self.s_ambient(s));
                    self.put_s(&mut acc, &xs, &cb.mul(&alpha, &alpha2), &one)?;
                }
                (Part::S(s, _), Part::S(t, _)) => {
                    let (s, t) = (self.s_ambient(s), self.s_ambient(t));
                    self.put_g(
                        &mut acc,
                        &self.jordan_d(&s, &t),
                        &cb.mul(&alpha, &alpha2),
                        &one,
                    )?;
                    self.put_d(
                        &mut acc,
                        &tensor(d, &alpha, &alpha2),
                        &self.form().form(&s, &t),
                    );
                }
                (Part::D(pp), Part::G(x, _)) => {
                    let da = self.bb.derive(&self.coset_tensor(pp), &alpha2);
                    self.put_g(&mut acc, self.g_matrix(x), &da, &one)?;
                }
                (Part::D(pp), Part::S(s, _)) => {
                    let db = self.bb.derive(&self.coset_tensor(pp), &alpha2);
                    self.put_s(&mut acc, &self.s_ambient(s), &db, &one)?;
                }
                (Part::D(pp), Part::D(qq)) => {
                    let t = self
                        .bb
                        .bracket_tensors(&self.coset_tensor(pp), &self.coset_tensor(qq));
                    self.put_d(&mut acc, &t, &one);
                }
                _ => unreachable!("type B has no 𝒱⊗𝒞 part"),
            },
        }
        Ok(acc.finish())
    }
}
