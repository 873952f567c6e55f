use std::sync::OnceLock;

use proptest::prelude::*;
use rg_lie::coord::{build_bb, load_quadruple, CoordAlgebra};
use rg_lie::exactla::sparse::kernel_of_columns;
use rg_lie::exactla::{Rational, RowEchelon, SparseVec};
use rg_lie::graded::{build_model, level_correction, GradedModel, Level};
use rg_lie::rootsys::{generate, reflect, Family, Root};

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=12).prop_map(|(n, d)| Rational::frac(n, d))
}

fn sparse(dim: usize) -> impl Strategy<Value = SparseVec> {
    prop::collection::vec((0..dim, rational()), 0..5).prop_map(SparseVec::from_entries)
}

fn family() -> impl Strategy<Value = Family> {
    prop::sample::select(vec![Family::A, Family::B, Family::C, Family::D, Family::BC])
}

fn bc4() -> &'static GradedModel {
    static M: OnceLock<GradedModel> = OnceLock::new();
    M.get_or_init(|| {
        build_model(
            Family::BC,
            4,
            4,
            &load_quadruple("symplectic:m=2").unwrap(),
            &[],
            false,
        )
        .unwrap()
    })
}

fn a6() -> &'static GradedModel {
    static M: OnceLock<GradedModel> = OnceLock::new();
    M.get_or_init(|| {
        build_model(
            Family::A,
            6,
            5,
            &load_quadruple("matrix:k=2").unwrap(),
            &[],
            false,
        )
        .unwrap()
    })
}

fn hermitian() -> &'static CoordAlgebra {
    static A: OnceLock<CoordAlgebra> = OnceLock::new();
    A.get_or_init(|| {
        CoordAlgebra::new(load_quadruple("matrix_hermitian:k=2,m=2").unwrap()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_display_parse_roundtrip(x in rational()) {
        prop_assert_eq!(x.to_string().parse::<Rational>().unwrap(), x);
    }

    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if let Some(r) = a.recip() {
            prop_assert_eq!(&a * &r, Rational::one());
        }
    }

    #[test]
    fn echelon_contains_inputs(vs in prop::collection::vec(sparse(6), 0..8)) {
        let e = RowEchelon::from_vectors(vs.iter());
        prop_assert!(e.rank() <= vs.len().min(6));
        for v in &vs {
            prop_assert!(e.contains(v));
        }
    }

    #[test]
    fn kernel_is_exact(cols in prop::collection::vec(sparse(5), 1..8)) {
        let ker = kernel_of_columns(&cols);
        for k in &ker {
            let mut img = SparseVec::new();
            for (i, c) in k.iter() {
                img = img.add(&cols[i].scale(c));
            }
            prop_assert!(img.is_zero());
        }
        let rank = RowEchelon::from_vectors(cols.iter()).rank();
        prop_assert_eq!(rank + ker.len(), cols.len());
    }

    #[test]
    fn root_display_parse_and_reflection(f in family(), n in 1usize..6, pick in any::<prop::sample::Index>(), other in any::<prop::sample::Index>()) {
        let r = generate(f, n).unwrap();
        let roots: Vec<&Root> = r.nonzero().collect();
        prop_assume!(!roots.is_empty());
        let (a, b) = (roots[pick.index(roots.len())], roots[other.index(roots.len())]);
        prop_assert_eq!(&a.to_string().parse::<Root>().unwrap(), a);
        prop_assert!(r.contains(&reflect(a, b).unwrap()));
    }

    #[test]
    fn model_bracket_bilinear_antisymmetric(x in sparse(78), y in sparse(78), z in sparse(78), c in rational()) {
        let m = bc4();
        let (x, y, z) = (x.slice(0, m.dim()), y.slice(0, m.dim()), z.slice(0, m.dim()));
        prop_assert_eq!(m.bracket(&x, &y), m.bracket(&y, &x).neg());
        let lhs = m.bracket(&x.add(&z.scale(&c)), &y);
        let rhs = m.bracket(&x, &y).add(&m.bracket(&z, &y).scale(&c));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn model_jacobi_on_combinations(x in sparse(60), y in sparse(60), z in sparse(60)) {
        for m in [bc4(), a6()] {
            let cut = |v: &SparseVec| SparseVec::from_entries(v.iter().map(|(i, c)| (i * m.dim() / 60, c.clone())));
            let (x, y, z) = (cut(&x), cut(&y), cut(&z));
            let j = m.bracket(&x, &m.bracket(&y, &z))
                .add(&m.bracket(&y, &m.bracket(&z, &x)))
                .add(&m.bracket(&z, &m.bracket(&x, &y)));
            prop_assert!(j.is_zero());
        }
    }

    #[test]
    fn coordinate_derivations_obey_leibniz(s in sparse(8), t in sparse(8), u in sparse(8), v in sparse(8)) {
        let alg = hermitian();
        let bb = build_bb(alg, 4).unwrap();
        let d = alg.dim();
        let t = rg_lie::coord::tensor(d, &s.slice(0, d), &t.slice(0, d));
        let (u, v) = (u.slice(0, d), v.slice(0, d));
        let lhs = bb.derive(&t, &alg.mul(&u, &v));
        let rhs = alg.mul(&bb.derive(&t, &u), &v).add(&alg.mul(&u, &bb.derive(&t, &v)));
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(bb.derive(&t, &alg.star(&u)), alg.star(&bb.derive(&t, &u)));
    }

    #[test]
    fn coordinate_a_is_associative(x in sparse(4), y in sparse(4), z in sparse(4)) {
        let alg = hermitian();
        let x = x.slice(0, alg.a_dim());
        let y = y.slice(0, alg.a_dim());
        let z = z.slice(0, alg.a_dim());
        prop_assert_eq!(alg.mul(&alg.mul(&x, &y), &z), alg.mul(&x, &alg.mul(&y, &z)));
    }

    #[test]
    fn level_correction_zero_at_base(t in sparse(16)) {
        let m = a6();
        let d = m.coord().dim();
        let t = t.slice(0, d * d);
        let base = Level::extend(m, 0).unwrap();
        prop_assert!(level_correction(m, &base, &t).unwrap().is_zero());
    }
}
