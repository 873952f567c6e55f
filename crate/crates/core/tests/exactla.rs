use rg_lie::exactla::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::frac(n, d)
}

#[test]
fn rational_basics() {
    assert_eq!(q(2, 4), q(1, 2));
    assert_eq!(q(1, 2) + q(1, 3), q(5, 6));
    assert_eq!("-6/8".parse::<Rational>().unwrap(), q(-3, 4));
    assert_eq!(q(-3, 4).to_string(), "-3/4");
    assert_eq!(Rational::from_int(5).to_string(), "5");
    assert!(Rational::zero().recip().is_none());
    assert!(Rational::new(1, 0).is_err());
    assert!("1/0".parse::<Rational>().is_err());
}

#[test]
fn rref_examples() {
    let v = BasedSpace::indexed("x", 2);
    assert_eq!(rref(&v, &[]).unwrap().dim(), 0);
    let full = [[1, 0], [0, 1], [1, 1]].map(|r| SparseVector::from_ints(v.clone(), &r).unwrap());
    assert_eq!(rref(&v, &full).unwrap().dim(), 2);

    let w = BasedSpace::indexed("y", 3);
    let rows =
        [[1, 2, 0], [0, 1, 1], [1, 3, 1]].map(|r| SparseVector::from_ints(w.clone(), &r).unwrap());
    let s = rref(&w, &rows).unwrap();
    assert_eq!(s.dim(), 2);
    assert!(s
        .contains(&SparseVector::from_ints(w.clone(), &[1, 0, -2]).unwrap())
        .unwrap());
    assert!(!s
        .contains(&SparseVector::from_ints(w.clone(), &[0, 0, 1]).unwrap())
        .unwrap());

    let mixed = [
        SparseVector::from_ints(v.clone(), &[1, 0]).unwrap(),
        SparseVector::from_ints(w.clone(), &[1, 0, 0]).unwrap(),
    ];
    assert!(rref(&v, &mixed).is_err());
}

#[test]
fn kernel_examples() {
    let v3 = BasedSpace::indexed("x", 3);
    assert_eq!(kernel(&SparseMatrix::identity(v3.clone())).dim(), 0);
    assert_eq!(kernel(&SparseMatrix::square_zero(v3)).dim(), 3);

    let v2 = BasedSpace::indexed("x", 2);
    let v1 = BasedSpace::indexed("y", 1);
    let m =
        SparseMatrix::from_entries(v2.clone(), v1, [((0, 0), q(1, 1)), ((0, 1), q(1, 1))]).unwrap();
    let k = kernel(&m);
    assert_eq!(k.dim(), 1);
    assert!(k
        .contains(&SparseVector::from_ints(v2, &[1, -1]).unwrap())
        .unwrap());
}

#[test]
fn quotient_examples() {
    let v = BasedSpace::indexed("x", 2);
    let rel = rref(&v, &[SparseVector::from_ints(v.clone(), &[1, 1]).unwrap()]).unwrap();
    let quot = QuotientSpace::new(rel);
    assert_eq!(quot.dim(), 1);
    let a = quotient_project(&quot, &SparseVector::from_ints(v.clone(), &[2, 0]).unwrap()).unwrap();
    let b = quotient_project(
        &quot,
        &SparseVector::from_ints(v.clone(), &[0, -2]).unwrap(),
    )
    .unwrap();
    assert_eq!(a, b);
    assert!(
        quotient_project(&quot, &SparseVector::from_ints(v.clone(), &[3, 3]).unwrap())
            .unwrap()
            .is_zero()
    );

    let trivial = QuotientSpace::new(Subspace::zero(v.clone()));
    let x = SparseVector::from_ints(v, &[4, -1]).unwrap();
    assert_eq!(quotient_project(&trivial, &x).unwrap().data(), x.data());
}

#[test]
fn matrix_products() {
    let s = BasedSpace::new(["a", "b"]).unwrap();
    let e = SparseMatrix::unit(&s, "a", "b").unwrap();
    let f = SparseMatrix::unit(&s, "b", "a").unwrap();
    let h = e.commutator(&f).unwrap();
    assert_eq!(h.get(0, 0), Rational::one());
    assert_eq!(h.get(1, 1), -Rational::one());
    assert!(h.trace().unwrap().is_zero());
    assert_eq!(e.trace_product(&f).unwrap(), Rational::one());
    assert!(BasedSpace::new(["a", "a"]).is_err());
}
