use harmdesign::algebraic::RealAlgebraic;
use harmdesign::exact::BigRational;
use harmdesign::fisher::{
    certificate_from_json, certificate_to_json, closed_form, closed_form_with, fisher_bound_single,
    match_coefficients, match_coefficients_with, match_solutions, verify_certificate,
    BoundCertificate, FisherError, HarmonicIndexSet, MatchPolicy, CATALOG,
};

fn set(t: &[u32]) -> HarmonicIndexSet {
    HarmonicIndexSet::new(t.to_vec()).unwrap()
}

fn q(n: i64, d: i64) -> RealAlgebraic {
    RealAlgebraic::rational(BigRational::new(n.into(), d.into()))
}

fn same(a: &BoundCertificate, b: &BoundCertificate) -> bool {
    a.b == b.b
        && a.c == b.c
        && a.coeffs.len() == b.coeffs.len()
        && a.coeffs
            .iter()
            .zip(&b.coeffs)
            .all(|(x, y)| x.0 == y.0 && x.1 == y.1)
        && a.minimizers.len() == b.minimizers.len()
        && a.minimizers.iter().zip(&b.minimizers).all(|(x, y)| x == y)
}

fn assert_verified(c: &BoundCertificate) {
    let v = verify_certificate(c);
    assert!(
        v.ok,
        "n={} T={} failed verification: {:?}",
        c.n, c.index_set, v.tag
    );
}

#[test]
fn matcher_agrees_with_closed_forms() {
    for t in CATALOG {
        let ts = set(t);
        let policy = if t == &[8, 6] {
            MatchPolicy::LpValid
        } else {
            MatchPolicy::Strict
        };
        for n in 2..=60 {
            let closed = closed_form_with(n, &ts, policy);
            let matched = match_coefficients_with(n, &ts, policy);
            match (t, n) {
                // At n = 2 the matching has a one-parameter family of solutions.
                ([8, 4] | [12, 8, 4], 2) => {
                    assert_eq!(matched.unwrap_err(), FisherError::Underdetermined);
                    assert_verified(&closed.unwrap());
                }
                // A second conforming solution appears; the closed form is one
                // of the two.
                ([12, 8, 4], 20..) => {
                    assert_eq!(matched.unwrap_err(), FisherError::MultipleSolutions(2));
                    let all = match_solutions(n, &ts).unwrap();
                    assert_eq!(all.len(), 2);
                    all.iter().for_each(assert_verified);
                    let closed = closed.unwrap();
                    assert!(all.iter().any(|s| same(s, &closed)), "{ts} n={n}");
                }
                ([8, 6], 2 | 3) => {
                    assert!(closed.is_err());
                    assert_verified(&matched.unwrap());
                }
                _ => match (matched, closed) {
                    (Ok(m), Ok(c)) => {
                        assert!(same(&m, &c), "{ts} n={n}");
                        assert_verified(&m);
                        assert_verified(&c);
                    }
                    (Err(_), Err(_)) => {}
                    (m, c) => panic!("{ts} n={n}: matcher {:?} closed {:?}", m.err(), c.err()),
                },
            }
        }
    }
}

#[test]
fn catalog_ranges() {
    let ok = |t: &[u32], n: i64| closed_form(n, &set(t)).is_ok();
    assert!((2..=4).all(|n| ok(&[6, 4], n)) && !(5..=60).any(|n| ok(&[6, 4], n)));
    assert!(
        (2..=60).all(|n| ok(&[8, 4], n) && ok(&[6, 2], n) && ok(&[8, 2], n) && ok(&[12, 8, 4], n))
    );
    assert!(ok(&[8, 6], 4) && !ok(&[8, 6], 5));
    assert!((4..=60).all(|n| closed_form_with(n, &set(&[8, 6]), MatchPolicy::LpValid).is_ok()));
    let bad: Vec<i64> = (2..=60).filter(|&n| !ok(&[10, 6, 2], n)).collect();
    assert_eq!(bad, vec![8, 9, 10]);
}

#[test]
fn eight_four_symmetric_functions() {
    let ts = set(&[8, 4]);
    for n in 3..=60i64 {
        let c = match_coefficients(n, &ts).unwrap();
        let z = c.elementary_symmetric().unwrap();
        assert_eq!(z[0], q(14, n + 12));
        assert_eq!(z[1], q(21, (n + 8) * (n + 12)));
        assert_eq!(
            *c.coeff(4).unwrap(),
            q((n + 4) * (n + 5) * (n + 14), 60 * (n + 12))
        );
        assert_eq!(c.b, q((n + 1) * (n + 2) * (n + 5) * (n + 6), 252));
    }
    let c = closed_form(8, &ts).unwrap();
    assert_eq!(c.b, q(65, 1));
    let z = c.elementary_symmetric().unwrap();
    assert_eq!((z[0].clone(), z[1].clone()), (q(7, 10), q(21, 320)));
}

#[test]
fn closed_form_examples() {
    assert_eq!(closed_form(2, &set(&[6, 2])).unwrap().b, q(2, 1));
    assert_eq!(closed_form(5, &set(&[12, 8, 4])).unwrap().b, q(35, 1));
    let c = closed_form(4, &set(&[8, 6])).unwrap();
    assert!(c.conforming);
    assert_eq!(*c.coeff(6).unwrap(), q(-9, 7));
    assert_eq!(c.b, q(2, 1));
    assert!(matches!(
        closed_form(8, &set(&[10, 6, 2])),
        Err(FisherError::Domain(_))
    ));
    assert!(matches!(
        closed_form(8, &set(&[10, 4])),
        Err(FisherError::UnsupportedIndexSet(_))
    ));
}

#[test]
fn twelve_eight_four_elementary_symmetric() {
    let ts = set(&[12, 8, 4]);
    for n in 2..=60i64 {
        let z = closed_form(n, &ts).unwrap().elementary_symmetric().unwrap();
        assert_eq!(z[0], q(33, n + 20));
        assert_eq!(z[1], q(231, (n + 16) * (n + 20)));
        assert_eq!(z[2], q(231, (n + 12) * (n + 16) * (n + 20)));
    }
}

#[test]
fn eight_six_strict_only_at_four() {
    let ts = set(&[8, 6]);
    assert!(match_coefficients(4, &ts).unwrap().conforming);
    for n in [5, 12, 40] {
        assert!(matches!(
            match_coefficients(n, &ts),
            Err(FisherError::InvalidMinimizers(_))
        ));
        let lp = match_coefficients_with(n, &ts, MatchPolicy::LpValid).unwrap();
        assert!(!lp.conforming);
        assert_verified(&lp);
    }
}

#[test]
fn single_index_consistency() {
    for t in [4u32, 6, 8, 10, 12] {
        for n in 3..=40 {
            let a = fisher_bound_single(n, t).unwrap();
            let b = match_coefficients(n, &HarmonicIndexSet::single(t).unwrap()).unwrap();
            assert_eq!(
                (a.b.clone(), a.c.clone()),
                (b.b.clone(), b.c.clone()),
                "t={t} n={n}"
            );
            assert_verified(&a);
            assert_verified(&b);
        }
    }
}

#[test]
fn bounds_exceed_half_binomial() {
    for n in 37..=200i64 {
        let b = fisher_bound_single(n, 6).unwrap().b;
        assert_eq!(
            b.compare(&q(n * (n + 1) / 2, 1)),
            std::cmp::Ordering::Greater,
            "n={n}"
        );
    }
    for n in 20..=200i64 {
        let b = fisher_bound_single(n, 8).unwrap().b;
        assert_eq!(
            b.compare(&q(n * (n + 1) / 2, 1)),
            std::cmp::Ordering::Greater,
            "n={n}"
        );
    }
}

#[test]
fn negated_c_is_rejected() {
    let mut c = closed_form(8, &set(&[8, 4])).unwrap();
    assert_verified(&c);
    c.c = c.c.neg();
    assert_eq!(verify_certificate(&c).tag, Some("NegativeC"));
    let mut s = fisher_bound_single(24, 6).unwrap();
    s.c = s.c.neg();
    assert_eq!(verify_certificate(&s).tag, Some("NegativeC"));
}

#[test]
fn tampered_bound_is_rejected() {
    let mut c = closed_form(8, &set(&[8, 4])).unwrap();
    c.b = q(66, 1);
    assert_eq!(verify_certificate(&c).tag, Some("BoundMismatch"));
    let mut s = fisher_bound_single(24, 6).unwrap();
    s.b = q(232, 1);
    assert_eq!(verify_certificate(&s).tag, Some("BoundMismatch"));
}

#[test]
fn json_round_trip() {
    let mut certs = vec![
        fisher_bound_single(24, 6).unwrap(),
        fisher_bound_single(7, 10).unwrap(),
    ];
    for t in CATALOG {
        for n in [3i64, 4, 7, 12] {
            if let Ok(c) = closed_form_with(n, &set(t), MatchPolicy::LpValid) {
                certs.push(c);
            }
        }
    }
    for c in &certs {
        let s = certificate_to_json(c).to_string();
        let back = certificate_from_json(&s).unwrap();
        assert!(same(c, &back), "{} n={}", c.index_set, c.n);
        assert_eq!(back.conforming, c.conforming);
        assert_verified(&back);
        assert_eq!(certificate_to_json(&back).to_string(), s);
    }
}

#[test]
fn bound_formulas_match_certificates() {
    use harmdesign::fisher::bound_formula_at;
    for t in [&[8u32, 4][..], &[6, 2], &[8, 2], &[10, 6, 2], &[12, 8, 4]] {
        let ts = set(t);
        for n in 2..=40 {
            if let Ok(c) = closed_form(n, &ts) {
                assert_eq!(
                    RealAlgebraic::rational(bound_formula_at(n, &ts).unwrap()),
                    c.b,
                    "{ts} n={n}"
                );
            }
        }
    }
    assert_eq!(
        bound_formula_at(8, &set(&[10, 6, 2])).unwrap(),
        BigRational::from_integer(8.into())
    );
    assert!(bound_formula_at(8, &set(&[8, 6])).is_none());
}
