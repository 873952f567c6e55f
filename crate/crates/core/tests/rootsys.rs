use std::collections::BTreeSet;

use rg_lie::rootsys::{
    classify_lengths, components, generate, is_full_subsystem, is_irreducible, reflect,
    semidivisible, Family, LengthClass, Root,
};

const FAMILIES: [Family; 5] = [Family::A, Family::B, Family::C, Family::D, Family::BC];

/// Membership predicate for each family on integer vectors, written from the
/// textbook descriptions rather than the generator.
fn is_root(family: Family, v: &[i64]) -> bool {
    let norm: i64 = v.iter().map(|x| x * x).sum();
    let nz: Vec<i64> = v.iter().copied().filter(|&x| x != 0).collect();
    let unit_pair = nz.len() == 2 && nz.iter().all(|x| x.abs() == 1);
    let short = nz.len() == 1 && nz[0].abs() == 1;
    let double = nz.len() == 1 && nz[0].abs() == 2;
    norm > 0
        && match family {
            Family::A => unit_pair && v.iter().sum::<i64>() == 0,
            Family::D => unit_pair,
            Family::B => unit_pair || short,
            Family::C => unit_pair || double,
            Family::BC => unit_pair || short || double,
        }
}

fn brute_force(family: Family, n: usize) -> BTreeSet<Root> {
    let mut out = BTreeSet::new();
    let total = 5usize.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let v: Vec<i64> = (0..n)
            .map(|_| {
                let d = (c % 5) as i64 - 2;
                c /= 5;
                d
            })
            .collect();
        if is_root(family, &v) {
            out.insert(Root::from_pairs(
                v.iter().enumerate().map(|(i, &x)| (i + 1, x)),
            ));
        }
    }
    out
}

fn closed_form(family: Family, n: usize) -> usize {
    match family {
        Family::BC => 2 * n * n + 2 * n,
        Family::B | Family::C => 2 * n * n,
        Family::D => 2 * n * (n - 1),
        Family::A => n * (n - 1),
    }
}

#[test]
fn counts_match_closed_forms_and_brute_force() {
    for f in FAMILIES {
        for n in 1..=6 {
            let Ok(r) = generate(f, n) else { continue };
            let nonzero: BTreeSet<Root> = r.nonzero().cloned().collect();
            assert_eq!(nonzero.len(), closed_form(f, n), "{f} n={n}");
            assert_eq!(nonzero, brute_force(f, n), "{f} n={n}");
            assert!(r.contains(&Root::zero()));
        }
    }
}

#[test]
fn axioms_hold() {
    for f in FAMILIES {
        for n in 1..=5 {
            if let Ok(r) = generate(f, n) {
                r.validate().unwrap();
            }
        }
    }
}

#[test]
fn reflection_stays_in_system() {
    let r = generate(Family::BC, 3).unwrap();
    for a in r.nonzero() {
        for b in r.nonzero() {
            assert!(r.contains(&reflect(a, b).unwrap()), "s_{a}({b})");
        }
    }
    assert!(reflect(&Root::zero(), &Root::eps(1)).is_err());
}

#[test]
fn length_classes_of_bc() {
    let n = 4;
    let r = generate(Family::BC, n).unwrap();
    let classes = classify_lengths(&r);
    let count = |c: LengthClass| classes.values().filter(|&&x| x == c).count();
    assert_eq!(count(LengthClass::Short), 2 * n);
    assert_eq!(count(LengthClass::Long), 2 * n * (n - 1));
    assert_eq!(count(LengthClass::Extralong), 2 * n);
    assert_eq!(classes[&Root::eps(2).scale(2)], LengthClass::Extralong);
}

#[test]
fn semidivisible_bc_is_c() {
    for n in 1..=5 {
        let sd = semidivisible(&generate(Family::BC, n).unwrap());
        assert_eq!(sd.roots(), generate(Family::C, n).unwrap().roots());
    }
    let b = generate(Family::B, 3).unwrap();
    assert_eq!(semidivisible(&b).roots(), b.roots());
}

#[test]
fn restriction_gives_full_irreducible_subsystem() {
    let r = generate(Family::BC, 5).unwrap();
    let s = r.restrict(&(1..=4).collect());
    assert_eq!(s.len(), 1 + closed_form(Family::BC, 4));
    assert!(is_full_subsystem(&s, &r).unwrap());
    assert!(is_irreducible(&s));

    let split: BTreeSet<Root> = r
        .restrict(&[1, 2].into())
        .union(&r.restrict(&[4, 5].into()))
        .cloned()
        .collect();
    assert!(!is_irreducible(&split));
    assert_eq!(components(&split).len(), 2);

    // {±e1} is not full in BC: it misses ±2e1.
    let thin: BTreeSet<Root> = [Root::zero(), Root::eps(1), Root::eps(1).neg()].into();
    assert!(!is_full_subsystem(&thin, &r).unwrap());
}

#[test]
fn display_and_parse() {
    let r: Root = "e1-2e3".parse().unwrap();
    assert_eq!(r.coeff(1), 1);
    assert_eq!(r.coeff(3), -2);
    assert_eq!(r.to_string(), "e1-2e3");
    assert_eq!("0".parse::<Root>().unwrap(), Root::zero());
    assert!("e0".parse::<Root>().is_err());
    assert!("x1".parse::<Root>().is_err());
}

#[test]
fn family_parsing() {
    for f in FAMILIES {
        assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
    }
    assert!("E8".parse::<Family>().is_err());
}
