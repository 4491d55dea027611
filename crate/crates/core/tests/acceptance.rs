//! Runs the seventeen acceptance criteria and prints one line per criterion.
//!
//! Four criteria are known to fail as stated; see `KNOWN_FAILURES`. The run
//! exits non-zero if any other criterion fails, or if a known failure stops
//! failing (so the list cannot go stale).

mod support;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use harmdesign::algebraic::RealAlgebraic;
use harmdesign::asymp::{asymptotic_constants, convergence_report};
use harmdesign::designcheck::{
    is_harmonic_index_design, moment, trivial_s1_design, Coord, Moment, PointSet,
};
use harmdesign::dioph::{
    integral_points_bounded, local_obstructions, product_square_search, qr_obstruction,
    same_parity_factorizations, solve_for_n, square_class_cases, CubicCurve, LinearFactor,
    Relation,
};
use harmdesign::exact::{frac, int, rational_sqrt, BigRational, QuadraticNumber, RationalInterval};
use harmdesign::fisher::{
    closed_form, fisher_bound_single, match_coefficients, BoundCertificate, FisherError,
    HarmonicIndexSet,
};
use harmdesign::screen::{
    build_candidate, integrality_scan, inv_alpha_integrality_hits, nozaki_antipodal_odd,
    remainder_decomposition, remainder_nonintegral, screen_range, screen_tight, Outcome,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};

type Verdict = Result<String, String>;

/// Criteria that fail as stated, with the reason.
const KNOWN_FAILURES: &[(u32, &str)] = &[
    (
        5,
        "at n = 2 the matching is underdetermined (T_8 + 1 = 2T_4^2), so no unique f_4",
    ),
    (
        6,
        "at n = 20 k_1 = -2, k_2 = 3 are integers; b_20 = 3575/3 still eliminates",
    ),
    (
        10,
        "n = 2 also gives an integral bound (b = 2, the S^1 family)",
    ),
    (
        12,
        "the printed 462 curve has other points; the listed ones lie on N(N^2 - 924^2) = M^2",
    ),
];

fn set(t: &[u32]) -> HarmonicIndexSet {
    HarmonicIndexSet::new(t.to_vec()).unwrap()
}

fn q(n: i64, d: i64) -> RealAlgebraic {
    RealAlgebraic::rational(frac(n, d))
}

fn ints(v: &[(i64, i64)]) -> Vec<(i64, BigInt)> {
    v.iter().map(|&(a, b)| (a, BigInt::from(b))).collect()
}

fn tiny(k: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10).pow(k))
}

fn within(iv: &RationalInterval, target: &BigRational, rel: BigRational) -> bool {
    let lim = target * rel;
    &iv.hi - target < lim && target - &iv.lo < lim
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn same(a: &BoundCertificate, b: &BoundCertificate) -> bool {
    a.b == b.b && a.c == b.c && a.coeffs == b.coeffs && a.minimizers == b.minimizers
}

fn exceeds_half_binomial(t: u32, lo: i64, hi: i64) -> Result<(), String> {
    for n in lo..=hi {
        let b = fisher_bound_single(n, t).map_err(|e| e.to_string())?.b;
        ensure(
            b.compare(&q(n * (n + 1) / 2, 1)) == Ordering::Greater,
            || format!("b_{{{n},{t}}} <= n(n+1)/2"),
        )?;
    }
    Ok(())
}

fn c1() -> Verdict {
    let c = fisher_bound_single(24, 6).map_err(|e| e.to_string())?;
    ensure(c.b == q(231, 1), || format!("b = {}", c.b))?;
    ensure(c.c == q(1989, 1), || format!("c = {}", c.c))?;
    ensure(c.alpha_sq() == Some(&q(1, 4)), || {
        format!("alpha^2 = {:?}", c.alpha_sq())
    })?;
    Ok("b = 231, c = 1989, alpha^2 = 1/4".into())
}

fn c2() -> Verdict {
    let hits = integrality_scan(&set(&[6]), 2, 36).map_err(|e| e.to_string())?;
    ensure(hits == ints(&[(2, 2), (24, 231)]), || {
        format!("scan gave {hits:?}")
    })?;
    exceeds_half_binomial(6, 37, 200)?;
    Ok("scan 2..36 = {(2,2),(24,231)}; b > n(n+1)/2 on 37..200".into())
}

fn c3() -> Verdict {
    let r = screen_tight(24, &set(&[6])).map_err(|e| e.to_string())?;
    ensure(r.verdict == Outcome::Eliminated, || {
        format!("verdict {}", r.verdict)
    })?;
    ensure(r.eliminated_by().contains(&"lrs"), || {
        format!("eliminated by {:?}", r.eliminated_by())
    })?;
    let w = &r.test("lrs").unwrap().witness;
    ensure(w.starts_with("c^2/d^2 = 1/3,"), || format!("witness {w}"))?;
    // (1 − α)/(1 + α) at α = 1/2, computed here.
    let a = frac(1, 2);
    ensure((int(1) - &a) / (int(1) + &a) == frac(1, 3), || {
        "ratio".into()
    })?;
    Ok(format!("eliminated by LRS: {w}"))
}

fn c4() -> Verdict {
    exceeds_half_binomial(8, 20, 200)?;
    let hits = integrality_scan(&set(&[8]), 2, 19).map_err(|e| e.to_string())?;
    ensure(hits == ints(&[(2, 2)]), || format!("scan gave {hits:?}"))?;
    let n = 10_000i64;
    let b = fisher_bound_single(n, 8).map_err(|e| e.to_string())?.b;
    let ratio = b
        .to_interval(&tiny(6))
        .scale(&BigRational::new(BigInt::one(), BigInt::from(n).pow(4)));
    let printed = BigRational::one()
        / (int(252) * BigRational::new(1_203_144_913.into(), BigInt::from(10).pow(8)));
    ensure(within(&ratio, &printed, frac(1, 100)), || {
        format!("b/n^4 = {}", ratio.mid())
    })?;
    Ok(format!(
        "b > n(n+1)/2 on 20..200; scan 2..19 = {{(2,2)}}; b/n^4 at 1e4 = {:.6e}",
        harmdesign::exact::rat_to_f64(&ratio.mid())
    ))
}

fn c5() -> Verdict {
    let ts = set(&[8, 4]);
    let mut bad = Vec::new();
    for n in 2..=60i64 {
        let closed = closed_form(n, &ts).map_err(|e| format!("closed_form at {n}: {e}"))?;
        let check = match match_coefficients(n, &ts) {
            Err(e) => Err(e.to_string()),
            Ok(m) if !same(&m, &closed) => Err("differs from closed form".into()),
            Ok(m) => {
                let z = m.elementary_symmetric().unwrap();
                let f4 = q((n + 4) * (n + 5) * (n + 14), 60 * (n + 12));
                if z[0] != q(14, n + 12) || z[1] != q(21, (n + 8) * (n + 12)) {
                    Err("symmetric functions".into())
                } else if m.b != q((n + 1) * (n + 2) * (n + 5) * (n + 6), 252) {
                    Err(format!("b = {}", m.b))
                } else if m.coeff(4) != Some(&f4) {
                    Err("f_4".into())
                } else {
                    Ok(())
                }
            }
        };
        if let Err(e) = check {
            bad.push(format!("n = {n}: {e}"));
        }
    }
    let b8 = closed_form(8, &ts).map_err(|e| e.to_string())?.b;
    if b8 != q(65, 1) {
        bad.push(format!("b(8) = {b8}"));
    }
    if bad.is_empty() {
        Ok("match_coefficients = closed_form on 2..60; b(8) = 65".into())
    } else {
        Err(bad.join("; "))
    }
}

fn c6() -> Verdict {
    let ts = set(&[8, 4]);
    let mut survivors = Vec::new();
    for n in 9..=75 {
        let c = build_candidate(n, &ts).map_err(|e| e.to_string())?;
        let [s1, _] = nozaki_antipodal_odd(n, &c.alpha_sq, &c.size_x());
        if s1.applicable && !s1.eliminates() {
            survivors.push(n);
        }
    }
    // Large n: the four square classes of (n+5, n+8, n+12).
    let f = [
        LinearFactor::shift(5),
        LinearFactor::shift(8),
        LinearFactor::shift(12),
    ];
    let r = [
        Relation {
            members: vec![0, 1],
            multiplier: 7,
        },
        Relation {
            members: vec![1, 2],
            multiplier: 21,
        },
    ];
    let cases = square_class_cases(&f, &r);
    ensure(cases.len() == 4, || {
        format!("{} square-class cases", cases.len())
    })?;
    let killers = [(3u64, 2u64), (7, 6)];
    let mut open = Vec::new();
    for c in &cases {
        let obs = local_obstructions(c);
        let killed = obs.iter().any(|o| {
            killers.contains(&(o.prime, o.residue)) && qr_obstruction(o.residue as i64, o.prime)
        });
        if !killed {
            open.push(c.classes.clone());
        }
    }
    ensure(open.len() == 1, || {
        format!("{} cases not killed by (2,3)/(6,7)", open.len())
    })?;
    // The remaining case puts x = n + 8 on 168.b2, whose points have x <= 3.
    let curve = CubicCurve::new(1, -12, 0).unwrap();
    let pts = integral_points_bounded(&curve, -1_000, 1_000).map_err(|e| e.to_string())?;
    ensure(pts.iter().all(|(x, _)| x - 8 < 76), || {
        "168.b2 point with n >= 76".into()
    })?;
    for n in (76..=300).step_by(7) {
        let r = screen_tight(n, &ts).map_err(|e| e.to_string())?;
        ensure(r.verdict == Outcome::Eliminated, || {
            format!("n = {n} not eliminated")
        })?;
    }
    if survivors.is_empty() {
        Ok("9..75 eliminated by the integer test; n >= 76 reduces to 4 classes, 3 killed mod 3/7, 1 by 168.b2".into())
    } else {
        Err(format!(
            "integer test does not eliminate n = {survivors:?} (large-n reduction holds)"
        ))
    }
}

fn c7() -> Verdict {
    let start = Instant::now();
    let c = CubicCurve::new(1, -12, 0).unwrap();
    let pts = integral_points_bounded(&c, -1_000_000, 1_000_000).map_err(|e| e.to_string())?;
    let t = start.elapsed();
    ensure(pts == ints(&[(-4, 0), (0, 0), (3, 0)]), || {
        format!("points {pts:?}")
    })?;
    ensure(t < Duration::from_secs(30), || format!("took {t:?}"))?;
    Ok(format!(
        "{{(-4,0),(0,0),(3,0)}} in {:.2} s",
        t.as_secs_f64()
    ))
}

fn c8() -> Verdict {
    let ts = set(&[6, 4]);
    for n in 5..=100i64 {
        match match_coefficients(n, &ts) {
            Err(FisherError::ComplexCoefficients { discriminant }) => {
                // Equal to −(n+6)(n−4) up to a rational square factor.
                let r = discriminant / int(-(n + 6) * (n - 4));
                ensure(
                    r > BigRational::zero() && rational_sqrt(&r).is_some(),
                    || format!("n = {n}: discriminant not in the class of -(n+6)(n-4)"),
                )?;
            }
            other => return Err(format!("n = {n}: {:?}", other.map(|c| c.b))),
        }
    }
    let c = match_coefficients(4, &ts).map_err(|e| format!("n = 4: {e}"))?;
    ensure(c.minimizers.len() == 1, || "n = 4 not degenerate".into())?;
    Ok(format!(
        "complex on 5..100; n = 4 real with single minimizer {}",
        c.minimizers[0].decimal(4)
    ))
}

fn c9() -> Verdict {
    let ts = set(&[6, 2]);
    for n in 5..=60i64 {
        let b = closed_form(n, &ts).map_err(|e| e.to_string())?.b;
        let want = q(n * (n + 4) * (2 * n + 1) * (2 * n + 1), 15 * (7 * n - 4));
        ensure(b == want, || format!("n = {n}: b = {b}"))?;
    }
    let dec = remainder_decomposition(&ts).ok_or("no remainder decomposition")?;
    ensure(dec.threshold <= 8817, || {
        format!("threshold {}", dec.threshold)
    })?;
    for n in (8817..=50_000).step_by(101) {
        ensure(remainder_nonintegral(&dec, n), || {
            format!("remainder integral at {n}")
        })?;
    }
    let start = Instant::now();
    let hits = inv_alpha_integrality_hits(&ts, 5, 8816).map_err(|e| e.to_string())?;
    let t = start.elapsed();
    ensure(hits.is_empty(), || format!("joint hits {hits:?}"))?;
    ensure(t < Duration::from_secs(10), || {
        format!("joint scan took {t:?}")
    })?;
    Ok(format!("b formula on 5..60; remainder non-integral for sampled n >= 8817; no joint hits on 5..8816 ({:.2} s)", t.as_secs_f64()))
}

fn c10() -> Verdict {
    let ts = set(&[10, 6, 2]);
    match match_coefficients(8, &ts) {
        Err(FisherError::NoSolution { residual }) if residual == frac(-15, 8192) => {}
        other => return Err(format!("n = 8: {:?}", other.map(|c| c.b))),
    }
    let hits = integrality_scan(&ts, 2, 18).map_err(|e| e.to_string())?;
    let ns: Vec<i64> = hits.iter().map(|h| h.0).collect();
    ensure(ns == vec![8], || {
        format!("NoSolution -15/8192 at n = 8 holds; scan 2..18 gave n = {ns:?}")
    })?;
    Ok("NoSolution -15/8192 at n = 8; scan gives only n = 8".into())
}

fn c11() -> Verdict {
    let f = [
        LinearFactor::shift(-8),
        LinearFactor::shift(12),
        LinearFactor::shift(16),
        LinearFactor::new(23, -172),
    ];
    let r = [Relation {
        members: vec![0, 1, 2, 3],
        multiplier: 15,
    }];
    let es: BTreeSet<u64> = square_class_cases(&f, &r)
        .iter()
        .map(|c| c.product_class(&[0, 1, 2]))
        .collect();
    ensure(es.len() == 16, || format!("{} classes", es.len()))?;
    let table: Vec<(u64, Vec<(i64, i64)>)> = vec![
        (5, vec![(33, 105)]),
        (6, vec![(20, 48), (48, 160)]),
        (7, vec![(16, 32), (68, 240)]),
        (10, vec![(24, 48), (38, 90)]),
        (15, vec![(308, 1440)]),
        (21, vec![(9, 5), (488, 2400)]),
        (42, vec![(12, 8), (128, 240)]),
        (210, vec![(44, 24)]),
    ];
    let mut rows = Vec::new();
    for e in &es {
        let found = product_square_search(&[-8, 12, 16], *e as i64, 9, 10_000)
            .map_err(|e| e.to_string())?;
        if !found.is_empty() {
            rows.push((*e, found));
        }
    }
    let want: Vec<(u64, Vec<(i64, BigInt)>)> =
        table.into_iter().map(|(e, v)| (e, ints(&v))).collect();
    ensure(rows == want, || format!("rows {rows:?}"))?;
    let big: Vec<i64> = rows
        .iter()
        .flat_map(|(_, v)| v.iter().map(|p| p.0))
        .filter(|&n| n >= 170)
        .collect();
    ensure(big == vec![308, 488], || format!("n >= 170: {big:?}"))?;
    Ok("16 classes, 8 nonempty rows as tabulated; n >= 170 gives {308, 488}".into())
}

fn c12() -> Verdict {
    let ts = set(&[12, 8, 4]);
    for n in 2..=60i64 {
        let z = closed_form(n, &ts)
            .map_err(|e| e.to_string())?
            .elementary_symmetric()
            .unwrap();
        ensure(
            z[0] == q(33, n + 20)
                && z[1] == q(231, (n + 16) * (n + 20))
                && z[2] == q(231, (n + 12) * (n + 16) * (n + 20)),
            || format!("Z at n = {n}"),
        )?;
    }
    let hits = integrality_scan(&ts, 2, 33).map_err(|e| e.to_string())?;
    let want = ints(&[
        (5, 35),
        (6, 64),
        (9, 285),
        (13, 1311),
        (16, 3315),
        (20, 9425),
        (23, 18560),
    ]);
    ensure(hits == want, || format!("scan {hits:?}"))?;
    for r in screen_range(&ts, 2, 33, true).map_err(|e| e.to_string())? {
        let expect = if [9, 13, 16].contains(&r.n) {
            Outcome::Inconclusive
        } else {
            Outcome::Eliminated
        };
        ensure(r.verdict == expect, || {
            format!("screen n = {}: {}", r.n, r.verdict)
        })?;
    }
    let listed = ints(&[(-528, 17424), (-252, 14112), (1617, 53361), (3388, 189728)]);
    let curve = CubicCurve::new(0, -462 * 462, 0).unwrap();
    let found = integral_points_bounded(&curve, -10_000, 10_000).map_err(|e| e.to_string())?;
    let nontrivial: Vec<(i64, BigInt)> = found.iter().filter(|p| !p.1.is_zero()).cloned().collect();
    if nontrivial == listed {
        Ok("Z_1..Z_3 on 2..60; 7 scan values; curve points; screen n <= 33 as stated".into())
    } else {
        let xs: Vec<i64> = nontrivial.iter().map(|p| p.0).collect();
        Err(format!(
            "Z, scan and screen clauses hold; N(N^2-462^2)=M^2 has nontrivial N = {xs:?}"
        ))
    }
}

fn c13() -> Verdict {
    let ts = set(&[8, 2]);
    for (n, b) in [(2, 2), (4, 9), (9, 96)] {
        let got = closed_form(n, &ts).map_err(|e| e.to_string())?.b;
        ensure(got == q(b, 1), || format!("b_{n} = {got}"))?;
    }
    let r9 = screen_tight(9, &ts).map_err(|e| e.to_string())?;
    ensure(r9.eliminated_by() == vec!["nozaki_1"], || {
        format!("n = 9 eliminated by {:?}", r9.eliminated_by())
    })?;
    let r4 = screen_tight(4, &ts).map_err(|e| e.to_string())?;
    ensure(r4.verdict == Outcome::Inconclusive, || {
        format!("n = 4: {}", r4.verdict)
    })?;
    let cited = r4.test("cited_bound").ok_or("no cited bound at n = 4")?;
    ensure(
        !cited.eliminates() && cited.witness.contains("8.9981"),
        || cited.witness.clone(),
    )?;
    Ok(
        "b = 2, 9, 96; n = 9 eliminated by the integer test; n = 4 inconclusive (SDP 8.9981 cited)"
            .into(),
    )
}

fn c14() -> Verdict {
    let pairs = same_parity_factorizations(400);
    let got: BTreeSet<(u64, u64)> = pairs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    let want: BTreeSet<(u64, u64)> = [(2, 200), (4, 100), (8, 50), (10, 40), (20, 20)].into();
    ensure(pairs.len() == 5 && got == want, || {
        format!("pairs {pairs:?}")
    })?;
    let ns = solve_for_n(&pairs, 6, -20);
    ensure(ns == vec![4, 6], || format!("n = {ns:?}"))?;
    Ok("5 same-parity pairs; n in {4, 6}".into())
}

fn c15() -> Verdict {
    let c2 = asymptotic_constants(2).map_err(|e| e.to_string())?;
    ensure(c2.a == q(1, 4) && c2.b == q(1, 6), || {
        format!("A_4 = {}, B_4 = {}", c2.a, c2.b)
    })?;
    for e in 2..=8 {
        let c = asymptotic_constants(e).map_err(|e| e.to_string())?;
        ensure(c.product_identity() == int(1), || {
            format!("A B (2e)! != 1 at e = {e}")
        })?;
    }
    let c3 = asymptotic_constants(3).map_err(|e| e.to_string())?;
    // 1/(20(2 + √10)) = (√10 − 2)/120, the limit of the closed-form bound.
    let limit = QuadraticNumber::sqrt_of(&int(10))
        .unwrap()
        .add_rational(&int(-2))
        .scale(&frac(1, 120));
    let w = tiny(8);
    ensure(
        c3.b.to_interval(&w).overlaps(&limit.to_interval(&w)),
        || "B_6 routes disagree".into(),
    )?;
    let r = convergence_report(3, &[10_000], 8).map_err(|e| e.to_string())?;
    let b6 = c3.b.to_interval(&tiny(20)).mid();
    ensure(within(&r.rows[0].b_ratio, &b6, frac(1, 100)), || {
        "b/n^3 not within 1%".into()
    })?;
    Ok(format!(
        "A_4 = 1/4, B_4 = 1/6; A B (2e)! = 1 for e <= 8; B_6 = {} by both routes",
        c3.b.decimal(10)
    ))
}

fn c16() -> Verdict {
    let one = Coord::rational(int(1));
    let zero = Coord::rational(int(0));
    let y = PointSet::new(vec![vec![one.clone(), zero.clone()], vec![zero, one]])
        .map_err(|e| e.to_string())?;
    match moment(&y, 6).map_err(|e| e.to_string())? {
        Moment::Exact(s) if s.is_zero() => {}
        m => return Err(format!("M_6 = {m}")),
    }
    for e in 1..=6u32 {
        let b = fisher_bound_single(2, 2 * e).map_err(|e| e.to_string())?.b;
        ensure(b == q(2, 1), || format!("b_{{2,{}}} = {b}", 2 * e))?;
        for j in (1..2 * e as i64).step_by(2) {
            let y = trivial_s1_design(e, j).map_err(|e| e.to_string())?;
            let tol = if y.is_exact() {
                BigRational::zero()
            } else {
                tiny(20)
            };
            let v = is_harmonic_index_design(&y, &[2 * e], &tol).map_err(|e| e.to_string())?;
            ensure(v == vec![(2 * e, true)] && y.len() == 2, || {
                format!("e = {e}, j = {j}")
            })?;
        }
    }
    Ok("M_6 = 0 exactly; trivial S^1 pairs verify for e <= 6 with |Y| = 2 = b_{2,2e}".into())
}

fn c17() -> Verdict {
    let checks: [(&str, Result<(), String>); 7] = [
        ("orthogonality", support::gegenbauer_orthogonality()),
        ("recurrence", support::recurrence_matches_explicit()),
        ("hermite", support::hermite_derivative()),
        ("sturm", support::sturm_matches_grid_scan(100)),
        (
            "rational quad",
            support::rational_quad_matches_bigrational(256),
        ),
        ("round trips", support::shared_radicand_round_trips(256)),
        ("enclosures", support::interval_encloses_value(256)),
    ];
    let failed: Vec<String> = checks
        .iter()
        .filter_map(|(name, r)| r.as_ref().err().map(|e| format!("{name}: {e}")))
        .collect();
    if failed.is_empty() {
        Ok("orthogonality, recurrence, Sturm vs grid (100 polynomials), exact round trips".into())
    } else {
        Err(failed.join("; "))
    }
}

fn main() {
    let criteria: [(u32, &str, fn() -> Verdict); 17] = [
        (1, "t=6 bound", c1),
        (2, "t=6 integrality", c2),
        (3, "t=6 elimination", c3),
        (4, "t=8", c4),
        (5, "T={8,4} coefficients", c5),
        (6, "T={8,4} screening", c6),
        (7, "curve 168.b2", c7),
        (8, "T={6,4}", c8),
        (9, "T={6,2}", c9),
        (10, "T={10,6,2}", c10),
        (11, "square-class table", c11),
        (12, "T={12,8,4}", c12),
        (13, "T={8,2}", c13),
        (14, "parity factorization", c14),
        (15, "asymptotics", c15),
        (16, "design verification", c16),
        (17, "property suites", c17),
    ];
    let mut unexpected = Vec::new();
    for (id, name, f) in criteria {
        let start = Instant::now();
        let verdict = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        let known = KNOWN_FAILURES.iter().find(|k| k.0 == id).map(|k| k.1);
        match (&verdict, known) {
            (Ok(msg), None) => println!("PASS {id:>2} {name}: {msg} [{secs:.1} s]"),
            (Err(msg), Some(why)) => {
                println!("FAIL {id:>2} {name}: {msg} [{secs:.1} s] (expected: {why})")
            }
            (Err(msg), None) => {
                println!("FAIL {id:>2} {name}: {msg} [{secs:.1} s]");
                unexpected.push(id);
            }
            (Ok(msg), Some(_)) => {
                println!("PASS {id:>2} {name}: {msg} [{secs:.1} s] (listed as a known failure)");
                unexpected.push(id);
            }
        }
        if secs > 60.0 {
            println!("     {id:>2} exceeded one minute");
            unexpected.push(id);
        }
    }
    let passed = 17 - KNOWN_FAILURES.len();
    if unexpected.is_empty() {
        println!(
            "acceptance: {passed} passed, {} known failures",
            KNOWN_FAILURES.len()
        );
    } else {
        println!("acceptance: unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
