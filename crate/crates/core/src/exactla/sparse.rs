//! Index-level sparse vectors and incremental row reduction.
//!
//! These are the workhorses behind the labelled types in this module; every
//! heavier computation in the crate (Lie algebra coordinates, quotients,
//! kernels) runs on them.

use std::collections::BTreeMap;

use super::Rational;

/// A finitely supported vector indexed by `usize`, sorted by index, with no
/// explicit zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SparseVec {
    entries: Vec<(usize, Rational)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec {
            entries: Vec::new(),
        }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec {
            entries: vec![(i, Rational::one())],
        }
    }

    pub fn single(i: usize, c: Rational) -> Self {
        if c.is_zero() {
            SparseVec::new()
        } else {
            SparseVec {
                entries: vec![(i, c)],
            }
        }
    }

    /// Builds a vector from arbitrary `(index, value)` pairs, summing repeats.
    pub fn from_entries<I: IntoIterator<Item = (usize, Rational)>>(iter: I) -> Self {
        let mut acc = Accumulator::new();
        for (i, c) in iter {
            acc.add(i, &c);
        }
        acc.finish()
    }

    pub fn from_dense(values: &[Rational]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn get(&self, i: usize) -> Option<&Rational> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<(usize, &Rational)> {
        self.entries.first().map(|(i, c)| (*i, c))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &SparseVec, c: &Rational) -> SparseVec {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (
            self.entries.iter().peekable(),
            other.entries.iter().peekable(),
        );
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, y * c));
                        b.next();
                    } else {
                        let v = x + &(y * c);
                        if !v.is_zero() {
                            out.push((*i, v));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, y * c));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.add_scaled(other, &Rational::one())
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.add_scaled(other, &Rational::from_int(-1))
    }

    pub fn scale(&self, c: &Rational) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect(),
        }
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec {
            entries: self.entries.iter().map(|(i, x)| (*i, -x)).collect(),
        }
    }

    pub fn dot(&self, other: &SparseVec) -> Rational {
        let mut s = Rational::zero();
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() && b < other.entries.len() {
            let (i, j) = (self.entries[a].0, other.entries[b].0);
            if i < j {
                a += 1;
            } else if j < i {
                b += 1;
            } else {
                s += &self.entries[a].1 * &other.entries[b].1;
                a += 1;
                b += 1;
            }
        }
        s
    }

    /// Re-indexes entries through `f`; entries mapped to `None` are dropped.
    pub fn remap(&self, mut f: impl FnMut(usize) -> Option<usize>) -> SparseVec {
        SparseVec::from_entries(
            self.entries
                .iter()
                .filter_map(|(i, c)| f(*i).map(|j| (j, c.clone()))),
        )
    }

    /// Keeps entries with index in `lo..hi`, shifted down by `lo`.
    pub fn slice(&self, lo: usize, hi: usize) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| *i >= lo && *i < hi)
                .map(|(i, c)| (i - lo, c.clone()))
                .collect(),
        }
    }

    /// Shifts every index up by `offset`.
    pub fn shifted(&self, offset: usize) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(i, c)| (i + offset, c.clone()))
                .collect(),
        }
    }

    pub fn into_entries(self) -> Vec<(usize, Rational)> {
        self.entries
    }
}

/// Collects sums of many sparse terms before freezing them into a `SparseVec`.
#[derive(Clone, Debug, Default)]
pub struct Accumulator {
    map: BTreeMap<usize, Rational>,
}

impl Accumulator {
    pub fn new() -> Self {
        Accumulator {
            map: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, i: usize, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.map.entry(i).or_default();
        *e += c;
    }

    pub fn add_vec(&mut self, v: &SparseVec, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (i, x) in v.iter() {
            self.add(i, &(x * c));
        }
    }

    pub fn finish(self) -> SparseVec {
        SparseVec {
            entries: self.map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

/// A subspace kept in reduced row-echelon form, rows keyed by pivot column.
#[derive(Clone, Debug, Default)]
pub struct RowEchelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl RowEchelon {
    pub fn new() -> Self {
        RowEchelon {
            rows: BTreeMap::new(),
        }
    }

    pub fn from_vectors<'a, I: IntoIterator<Item = &'a SparseVec>>(iter: I) -> Self {
        let mut e = RowEchelon::new();
        for v in iter {
            e.insert(v);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn is_pivot(&self, i: usize) -> bool {
        self.rows.contains_key(&i)
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> + '_ {
        self.rows.values()
    }

    /// The remainder of `v` after eliminating every pivot column. Linear in `v`.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        let mut touched = false;
        for (i, c) in v.iter() {
            if let Some(row) = self.rows.get(&i) {
                acc.add_vec(row, &(-c));
                touched = true;
            }
        }
        if !touched {
            return v.clone();
        }
        acc.add_vec(v, &Rational::one());
        acc.finish()
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((p, lead)) = r.leading() else {
            return false;
        };
        let r = r.scale(&lead.recip().expect("nonzero leading entry"));
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(p).cloned() {
                *row = row.add_scaled(&r, &(-c));
            }
        }
        self.rows.insert(p, r);
        true
    }

    /// Whether the two spans coincide.
    pub fn same_span(&self, other: &RowEchelon) -> bool {
        self.rows == other.rows
    }

    pub fn contains_all(&self, other: &RowEchelon) -> bool {
        other.rows.values().all(|r| self.contains(r))
    }
}

/// Expresses vectors as combinations of a fixed generating list.
#[derive(Clone, Debug, Default)]
pub struct Coordinates {
    rows: BTreeMap<usize, (SparseVec, SparseVec)>,
    generators: usize,
    dependent: Vec<usize>,
}

impl Coordinates {
    pub fn new(generators: &[SparseVec]) -> Self {
        let mut c = Coordinates {
            rows: BTreeMap::new(),
            generators: generators.len(),
            dependent: Vec::new(),
        };
        for (k, g) in generators.iter().enumerate() {
            let (r, comb) = c.reduce_tracked(g, SparseVec::unit(k));
            match r.leading() {
                None => c.dependent.push(k),
                Some((p, lead)) => {
                    let inv = lead.recip().expect("nonzero leading entry");
                    let (r, comb) = (r.scale(&inv), comb.scale(&inv));
                    for (row, rc) in c.rows.values_mut() {
                        if let Some(x) = row.get(p).cloned() {
                            *row = row.add_scaled(&r, &(-&x));
                            *rc = rc.add_scaled(&comb, &(-&x));
                        }
                    }
                    c.rows.insert(p, (r, comb));
                }
            }
        }
        c
    }

    fn reduce_tracked(&self, v: &SparseVec, comb: SparseVec) -> (SparseVec, SparseVec) {
        let mut acc = Accumulator::new();
        let mut cacc = Accumulator::new();
        acc.add_vec(v, &Rational::one());
        cacc.add_vec(&comb, &Rational::one());
        for (i, c) in v.iter() {
            if let Some((row, rc)) = self.rows.get(&i) {
                let m = -c;
                acc.add_vec(row, &m);
                cacc.add_vec(rc, &m);
            }
        }
        (acc.finish(), cacc.finish())
    }

    /// Indices of generators that were linearly dependent on earlier ones.
    pub fn dependent(&self) -> &[usize] {
        &self.dependent
    }

    pub fn is_independent(&self) -> bool {
        self.dependent.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    /// Coefficients over the generators, or `None` if `v` is outside the span.
    pub fn solve(&self, v: &SparseVec) -> Option<SparseVec> {
        let (r, comb) = self.reduce_tracked(v, SparseVec::new());
        if r.is_zero() {
            Some(comb.neg())
        } else {
            None
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        let mut acc = Accumulator::new();
        acc.add_vec(v, &Rational::one());
        for (i, c) in v.iter() {
            if let Some((row, _)) = self.rows.get(&i) {
                acc.add_vec(row, &(-c));
            }
        }
        acc.finish().is_zero()
    }
}

/// Kernel of the linear map whose rows are given, as vectors in a space of
/// dimension `dim`.
pub fn kernel_of_rows(rows: &[SparseVec], dim: usize) -> Vec<SparseVec> {
    let e = RowEchelon::from_vectors(rows.iter());
    kernel_from_echelon(&e, dim)
}

pub fn kernel_from_echelon(e: &RowEchelon, dim: usize) -> Vec<SparseVec> {
    let mut out = Vec::new();
    for f in 0..dim {
        if e.is_pivot(f) {
            continue;
        }
        let mut entries = vec![(f, Rational::one())];
        for (p, row) in e.rows.iter() {
            if let Some(c) = row.get(f) {
                entries.push((*p, -c));
            }
        }
        out.push(SparseVec::from_entries(entries));
    }
    out
}

/// Kernel of the map `x ↦ Σ x_i images[i]`, returned as coefficient vectors.
pub fn kernel_of_columns(images: &[SparseVec]) -> Vec<SparseVec> {
    let mut rows: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
    for (j, col) in images.iter().enumerate() {
        for (i, c) in col.iter() {
            rows.entry(i).or_default().push((j, c.clone()));
        }
    }
    let rows: Vec<SparseVec> = rows.into_values().map(SparseVec::from_entries).collect();
    kernel_of_rows(&rows, images.len())
}

/// Intersection of the spans of `a` and `b`, as vectors in the ambient space.
pub fn intersect(a: &[SparseVec], b: &RowEchelon) -> Vec<SparseVec> {
    let images: Vec<SparseVec> = a.iter().map(|v| b.reduce(v)).collect();
    kernel_of_columns(&images)
        .into_iter()
        .map(|x| {
            let mut acc = Accumulator::new();
            for (i, c) in x.iter() {
                acc.add_vec(&a[i], c);
            }
            acc.finish()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> SparseVec {
        SparseVec::from_dense(
            &xs.iter()
                .map(|&x| Rational::from_int(x))
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn add_scaled_cancels() {
        let a = v(&[1, 2, 0]);
        let b = v(&[1, 2, 3]);
        assert_eq!(a.sub(&b), v(&[0, 0, -3]));
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn coordinates_solve() {
        let gens = vec![v(&[1, 1, 0]), v(&[0, 1, 1])];
        let c = Coordinates::new(&gens);
        let x = c.solve(&v(&[2, 5, 3])).unwrap();
        assert_eq!(x, v(&[2, 3]));
        assert!(c.solve(&v(&[1, 0, 0])).is_none());
    }

    #[test]
    fn intersection_of_planes() {
        let a = vec![v(&[1, 0, 0]), v(&[0, 1, 0])];
        let b = RowEchelon::from_vectors([v(&[0, 1, 0]), v(&[0, 0, 1])].iter());
        let i = intersect(&a, &b);
        assert_eq!(i.len(), 1);
        assert!(RowEchelon::from_vectors(i.iter()).contains(&v(&[0, 1, 0])));
    }
}
