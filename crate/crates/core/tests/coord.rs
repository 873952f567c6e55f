use rg_lie::coord::*;
use rg_lie::exactla::{Rational, RowEchelon, SparseVec};
use rg_lie::rootsys::Family;
use rg_lie::Error;

fn alg(spec: &str) -> CoordAlgebra {
    CoordAlgebra::new(load_quadruple(spec).unwrap()).unwrap()
}

#[test]
fn preset_split_dimensions() {
    let cases = [
        ("matrix:k=2", Family::A, (4, 0, 0)),
        ("matrix_transpose:k=2", Family::C, (3, 1, 0)),
        ("matrix_transpose:k=4", Family::C, (10, 6, 0)),
        ("group_ring:m=1", Family::D, (1, 0, 0)),
        ("group_ring:m=3", Family::D, (3, 0, 0)),
        ("clifford:d=2", Family::B, (1, 2, 0)),
        ("symplectic:m=2", Family::BC, (1, 0, 2)),
        ("matrix_hermitian:k=2,m=2", Family::BC, (3, 1, 4)),
    ];
    for (spec, family, dims) in cases {
        let a = alg(spec);
        assert_eq!(a.family(), family, "{spec}");
        assert_eq!(a.dims(), dims, "{spec}");
    }
}

#[test]
fn preset_parameters_are_validated() {
    assert!(load_quadruple("symplectic:m=3").is_err());
    assert!(load_quadruple("matrix:k=0").is_err());
    assert!(load_quadruple("nonexistent_preset_or_file").is_err());
}

#[test]
fn every_preset_satisfies_its_laws() {
    for name in PRESET_NAMES {
        let q = preset(name).unwrap();
        let rep = validate_quadruple(&q);
        assert!(rep.all_pass(), "{name}: {:?}", rep.first_failure());
    }
}

// Unit e0 with e1² = e2 and e2e1 = e1, so (e1e1)e1 = e1 but e1(e1e1) = 0.
const NON_ASSOCIATIVE: &str = r#"{
  "type": "A",
  "a_dim": 3,
  "structure_constants": [
    [0, 0, 0, "1"], [0, 1, 1, "1"], [0, 2, 2, "1"], [1, 0, 1, "1"], [2, 0, 2, "1"],
    [1, 1, 2, "1"], [2, 1, 1, "1"]
  ],
  "star": [[0, 0, "1"], [1, 1, "1"], [2, 2, "1"]]
}"#;

#[test]
fn non_associative_file_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, NON_ASSOCIATIVE).unwrap();
    match load_quadruple(path.to_str().unwrap()) {
        Err(Error::Validation { law, .. }) => assert_eq!(law, "associative"),
        other => panic!("expected a validation error, got {other:?}"),
    }
}

#[test]
fn json_roundtrip_preserves_quadruple() {
    for name in ["matrix_hermitian:k=2,m=2", "clifford:d=3"] {
        let q = preset(name).unwrap();
        let back = quadruple_from_json(&quadruple_to_json(&q).unwrap()).unwrap();
        assert_eq!(q, back);
    }
}

fn commutator_span_dim(a: &CoordAlgebra) -> usize {
    let d = a.dim();
    let mut ech = RowEchelon::new();
    for i in 0..d {
        for j in 0..d {
            ech.insert(&a.brk(&SparseVec::unit(i), &SparseVec::unit(j)));
        }
    }
    ech.rank()
}

#[test]
fn bb_of_matrix_algebra_is_commutator_span() {
    for k in 1..=3 {
        let a = alg(&format!("matrix:k={k}"));
        let bb = build_bb(&a, 4).unwrap();
        assert_eq!(bb.dim(), k * k - 1);
        assert_eq!(bb.dim(), commutator_span_dim(&a));
    }
    let bb = build_bb(&alg("group_ring:m=4"), 4).unwrap();
    assert_eq!(bb.dim(), 0);
}

type Mat = Vec<Vec<i64>>;

fn unit_mat(k: usize, idx: usize) -> Mat {
    let mut m = vec![vec![0; k]; k];
    m[idx / k][idx % k] = 1;
    m
}

fn mm(x: &Mat, y: &Mat) -> Mat {
    let k = x.len();
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| (0..k).map(|l| x[i][l] * y[l][j]).sum())
                .collect()
        })
        .collect()
}

fn comm(x: &Mat, y: &Mat) -> Mat {
    let (a, b) = (mm(x, y), mm(y, x));
    a.iter()
        .zip(&b)
        .map(|(r, s)| r.iter().zip(s).map(|(p, q)| p - q).collect())
        .collect()
}

#[test]
fn type_a_derivation_is_scaled_double_commutator() {
    let (k, ell) = (2, 4);
    let a = alg("matrix:k=2");
    let raw = |idx: usize| a.from_raw(&SparseVec::unit(idx));
    let to_raw_vec = |m: &Mat| {
        let mut v = SparseVec::new();
        for (idx, c) in m.iter().flatten().enumerate() {
            if *c != 0 {
                v = v.add(&SparseVec::single(idx, Rational::from_int(*c)));
            }
        }
        v
    };
    let s = Rational::frac(1, ell as i64 + 1);
    for i in 0..k * k {
        for j in 0..k * k {
            let d = derivation(&a, ell, &raw(i), &raw(j)).unwrap();
            for z in 0..k * k {
                let want = to_raw_vec(&comm(
                    &comm(&unit_mat(k, i), &unit_mat(k, j)),
                    &unit_mat(k, z),
                ))
                .scale(&s);
                let mut got = SparseVec::new();
                for (col, c) in raw(z).iter() {
                    got = got.add(&d[col].scale(c));
                }
                assert_eq!(a.to_raw(&got), want, "d(E{i}, E{j}) on E{z}");
            }
        }
    }
}

#[test]
fn coordinate_suite_on_presets() {
    for name in PRESET_NAMES {
        let a = CoordAlgebra::new(preset(name).unwrap()).unwrap();
        let bb = build_bb(&a, 4).unwrap();
        let mut recs = verify_laws(&a);
        recs.push(verify_derivations(&bb));
        recs.push(verify_bb_lie(&bb));
        recs.push(verify_homology(&bb).unwrap());
        recs.push(verify_beta_star_relations(&bb));
        if a.dims().2 > 0 {
            recs.push(verify_diamond_heart(&a).unwrap());
        }
        for r in recs {
            assert!(r.passed(), "{name}: {} {:?}", r.name, r.witnesses);
        }
    }
}

#[test]
fn uniform_verdict_is_stable_across_ell() {
    for name in PRESET_NAMES {
        let a = CoordAlgebra::new(preset(name).unwrap()).unwrap();
        let bb = build_bb(&a, 4).unwrap();
        let fh = full_homology(&bb).unwrap();
        let rep = check_uniform(&bb, &fh.basis, 7).unwrap();
        assert!(rep.cross_in_fh, "{name}");
        assert_eq!(rep.uniform, rep.cross_uniform, "{name}");
    }
}

#[test]
fn ell_zero_is_rejected() {
    assert!(build_bb(&alg("matrix:k=2"), 0).is_err());
}
