use std::collections::BTreeSet;

use rg_lie::coord::load_quadruple;
use rg_lie::exactla::{Rational, SparseVec};
use rg_lie::graded::*;
use rg_lie::liealg::TruncationIdempotent;
use rg_lie::rootsys::{generate, Family};
use rg_lie::Error;

fn model(f: Family, n: usize, ell: usize, spec: &str) -> GradedModel {
    build_model(f, n, ell, &load_quadruple(spec).unwrap(), &[], false).unwrap()
}

/// Summand dimensions from closed forms. For type B the ℬ-slot holds the
/// natural module, for C and BC it holds 𝒮.
fn expected_dims(m: &GradedModel) -> [usize; 4] {
    let n = m.n();
    let (da, db, dc) = m.coord().dims();
    let (g, s, v) = match m.family() {
        Family::A => (n * n - 1, 0, 0),
        Family::B => (2 * n * n + n, 2 * n + 1, 0),
        Family::C => (2 * n * n + n, 2 * n * n - n - 1, 0),
        Family::BC => (2 * n * n + n, 2 * n * n - n - 1, 2 * n),
        Family::D => (2 * n * n - n, 0, 0),
    };
    [g * da, s * db, v * dc, m.bb().dim()]
}

#[test]
fn component_dimensions_match_closed_forms() {
    let cases = [
        (Family::BC, 5, 4, "symplectic:m=2"),
        (Family::BC, 5, 4, "matrix_hermitian:k=2,m=2"),
        (Family::A, 6, 5, "matrix:k=2"),
        (Family::D, 7, 5, "group_ring:m=3"),
        (Family::B, 6, 5, "clifford:d=2"),
        (Family::C, 6, 5, "matrix_transpose:k=2"),
    ];
    for (f, n, ell, spec) in cases {
        let m = model(f, n, ell, spec);
        assert_eq!(m.component_dims(), expected_dims(&m), "{f} {spec}");
        assert_eq!(m.dim(), m.component_dims().iter().sum::<usize>());
    }
    let m = model(Family::BC, 5, 4, "symplectic:m=2");
    assert_eq!(m.component_dims()[0], 55);
    assert_eq!(m.component_dims()[2], 20);
}

#[test]
fn type_d_model_has_abelian_d_part() {
    let m = model(Family::D, 7, 5, "group_ring:m=3");
    let ds: Vec<usize> = (0..m.dim())
        .filter(|&i| m.component(i) == Component::D)
        .collect();
    for &i in &ds {
        for &j in &ds {
            assert!(m.basis_bracket(i, j).is_zero());
        }
    }
}

#[test]
fn construction_errors() {
    let bc = load_quadruple("symplectic:m=2").unwrap();
    assert!(matches!(
        build_model(Family::A, 6, 5, &bc, &[], false),
        Err(Error::TypeMismatch(_))
    ));
    assert!(matches!(
        build_model(Family::BC, 5, 3, &bc, &[], false),
        Err(Error::Bound(_))
    ));
    let below = build_model(Family::BC, 5, 3, &bc, &[], true).unwrap();
    assert!(below.below_bound());
    assert!(matches!(
        build_model(Family::BC, 3, 4, &bc, &[], false),
        Err(Error::Domain(_))
    ));
}

#[test]
fn rank_bounds() {
    assert!(meets_rank_bound(Family::BC, 4) && !meets_rank_bound(Family::BC, 3));
    assert!(meets_rank_bound(Family::C, 5) && !meets_rank_bound(Family::C, 4));
    assert!(meets_rank_bound(Family::A, 5) && !meets_rank_bound(Family::A, 4));
    assert_eq!(level_size(Family::A, 5), 6);
    assert_eq!(level_size(Family::BC, 4), 4);
}

#[test]
fn exhaustive_jacobi_bc4_symplectic() {
    let m = model(Family::BC, 4, 4, "symplectic:m=2");
    let r = verify_jacobi(&m, JacobiStrategy::Exhaustive);
    assert_eq!(r.failures, 0, "{:?}", r.witnesses);
    let d = m.dim();
    assert_eq!(r.triples, d * (d - 1) * (d - 2) / 6);
}

#[test]
fn random_jacobi_is_seeded() {
    let m = model(Family::A, 6, 5, "matrix:k=2");
    let a = verify_jacobi(
        &m,
        JacobiStrategy::Random {
            samples: 500,
            seed: 42,
        },
    );
    let b = verify_jacobi(
        &m,
        JacobiStrategy::Random {
            samples: 500,
            seed: 42,
        },
    );
    assert_eq!(a.failures, 0);
    assert_eq!(a.triples, 500);
    assert_eq!(format!("{a:?}"), format!("{b:?}"));
    assert!(verify_antisymmetry(&m).passed());
}

#[test]
fn grading_checks_pass() {
    for (f, n, ell, spec) in [
        (Family::D, 7, 5, "group_ring:m=3"),
        (Family::BC, 5, 4, "matrix_hermitian:k=2,m=2"),
    ] {
        for c in verify_grading(&model(f, n, ell, spec)).unwrap() {
            assert!(c.passed(), "{f} {spec}: {} {:?}", c.name, c.witnesses);
        }
    }
}

#[test]
fn trivial_coordinates_give_the_lie_algebra() {
    let m = model(Family::C, 5, 5, "matrix_transpose:k=1");
    assert_eq!(m.dim(), 2 * 25 + 5);
    assert_eq!(m.component_dims(), [55, 0, 0, 0]);
    let g = m.lie_algebra();
    for i in 0..m.dim() {
        for j in 0..m.dim() {
            let want = g
                .coordinates(
                    &g.basis()[i]
                        .mul(&g.basis()[j])
                        .unwrap()
                        .sub(&g.basis()[j].mul(&g.basis()[i]).unwrap())
                        .unwrap(),
                )
                .unwrap();
            assert_eq!(m.basis_bracket(i, j), &want);
        }
    }
}

#[test]
fn subsystem_gradings() {
    let m = model(Family::BC, 5, 4, "symplectic:m=2");
    let s = generate(Family::BC, 5)
        .unwrap()
        .restrict(&(1..=4).collect());
    let sub = subalgebra(&m, &s).unwrap();
    for c in verify_subalgebra(&m, &sub).unwrap() {
        assert!(c.passed(), "{} {:?}", c.name, c.witnesses);
    }
    let full = subalgebra(&m, generate(Family::BC, 5).unwrap().roots()).unwrap();
    assert_eq!(full.basis.len(), m.dim());

    let m = model(Family::A, 6, 5, "matrix:k=2");
    let s = generate(Family::A, 6).unwrap().restrict(&[2, 4, 5].into());
    let sub = subalgebra(&m, &s).unwrap();
    let g_rows = sub
        .basis
        .iter()
        .filter(|v| v.iter().all(|(i, _)| m.component(i) == Component::G))
        .count();
    assert_eq!(g_rows, 8 * 4);
    assert_eq!(sub.g_sub.dim(), 8);
}

#[test]
fn level_coset_correction_formula() {
    let m = model(Family::BC, 5, 4, "matrix_hermitian:k=2,m=2");
    let coord = m.coord();
    let lambda = Level::extend(&m, 1).unwrap();
    assert_eq!(lambda.subset(), &(1..=5).collect::<BTreeSet<_>>());
    let (a, a2) = coord
        .a_range()
        .flat_map(|i| coord.a_range().map(move |j| (i, j)))
        .map(|(i, j)| (SparseVec::unit(i), SparseVec::unit(j)))
        .find(|(x, y)| !coord.brk(x, y).is_zero())
        .expect("𝒜 is not commutative");
    let e = level_coset(&m, &lambda, &a, &a2).unwrap();
    assert!(e.g_part.is_zero() && e.v_part.is_zero());

    // (−𝔍_0/4 + 𝔍_λ/5) ⊗ ½[a, a'] with [a, a'] = c·b for the single ℬ basis vector b.
    let c = coord.brk(&a, &a2);
    assert_eq!(coord.dims().1, 1);
    let cb = c.get(coord.b_range().start).cloned().unwrap();
    let nat = m.lie_algebra().natural();
    let j0 = TruncationIdempotent::first(nat, 4).unwrap();
    let jl = TruncationIdempotent::first(nat, 5).unwrap();
    let p = j0
        .matrix()
        .scale(&Rational::frac(-1, 4))
        .lin(jl.matrix(), &Rational::frac(1, 5))
        .unwrap();
    let want = p.scale(&(cb * Rational::frac(1, 2)));
    let s = m.s_module().unwrap();
    let mut got = nat.zero_matrix();
    for (i, x) in e.s_part.iter() {
        got = got.lin(&s.basis_matrix(i).unwrap(), x).unwrap();
    }
    assert_eq!(got, want);

    let plain = m.split(&m.d_element(&rg_lie::coord::tensor(coord.dim(), &a, &a2)));
    assert_eq!(e.d_part, plain.d_part);
}

#[test]
fn level_correction_vanishes_at_base_level() {
    let m = model(Family::A, 7, 5, "matrix:k=2");
    let base = Level::extend(&m, 0).unwrap();
    let d = m.coord().dim();
    for t in 0..d * d {
        assert!(level_correction(&m, &base, &SparseVec::unit(t))
            .unwrap()
            .is_zero());
    }
}

#[test]
fn level_requires_supported_type_and_i0() {
    let m = model(Family::D, 7, 5, "group_ring:m=3");
    assert!(matches!(Level::extend(&m, 1), Err(Error::Domain(_))));
    let m = model(Family::BC, 6, 4, "symplectic:m=2");
    assert!(matches!(
        Level::new(&m, [1, 2, 3, 5].into()),
        Err(Error::Domain(_))
    ));
}

#[test]
fn level_transition_small_bc() {
    let m = model(Family::BC, 6, 4, "symplectic:m=2");
    for extra in 1..=2 {
        let lambda = Level::extend(&m, extra).unwrap();
        for c in verify_level_transition(&m, &lambda).unwrap() {
            assert!(c.passed(), "+{extra}: {} {:?}", c.name, c.witnesses);
        }
    }
}
