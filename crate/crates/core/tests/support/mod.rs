//! Property checks shared by the `properties` and `acceptance` targets. Each
//! returns the first counterexample as an error string.

use std::cmp::Ordering;

use harmdesign::exact::{frac, int, rat_to_f64, BigRational, QuadraticNumber, RationalInterval};
use harmdesign::orthopoly::{gegenbauer, harm_dim, hermite};
use harmdesign::poly::Poly;
use harmdesign::realroots::sturm_count;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

pub fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    f: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new(config)
        .run(&strategy, f)
        .map_err(|e| e.to_string())
}

fn rat() -> impl Strategy<Value = BigRational> {
    (-10_000i64..=10_000, 1i64..=500).prop_map(|(p, q)| frac(p, q))
}

pub fn eval_f64(p: &Poly, x: f64) -> f64 {
    p.coeffs()
        .iter()
        .rev()
        .fold(0.0, |acc, c| acc * x + rat_to_f64(c))
}

// ---------------------------------------------------------------- exact

pub fn rational_quad_matches_bigrational(cases: u32) -> Result<(), String> {
    run(cases, (rat(), rat()), |(x, y)| {
        let qx = QuadraticNumber::rational(x.clone());
        let qy = QuadraticNumber::rational(y.clone());
        prop_assert_eq!(
            qx.try_add(&qy).unwrap().to_rational().cloned(),
            Some(&x + &y)
        );
        prop_assert_eq!(
            qx.try_sub(&qy).unwrap().to_rational().cloned(),
            Some(&x - &y)
        );
        prop_assert_eq!(
            qx.try_mul(&qy).unwrap().to_rational().cloned(),
            Some(&x * &y)
        );
        if !y.is_zero() {
            prop_assert_eq!(
                qx.try_div(&qy).unwrap().to_rational().cloned(),
                Some(&x / &y)
            );
        }
        let via_new = QuadraticNumber::new(x.clone(), BigRational::zero(), BigInt::zero()).unwrap();
        prop_assert_eq!(via_new, qx);
        Ok(())
    })
}

pub fn shared_radicand_round_trips(cases: u32) -> Result<(), String> {
    run(
        cases,
        (2i64..200, rat(), rat(), rat(), rat()),
        |(d, a1, b1, a2, b2)| {
            let x = QuadraticNumber::new(a1, b1, BigInt::from(d)).unwrap();
            let y = QuadraticNumber::new(a2, b2, BigInt::from(d)).unwrap();
            prop_assert_eq!(x.try_add(&y).unwrap().try_sub(&y).unwrap(), x.clone());
            if !y.is_zero() {
                prop_assert_eq!(x.try_mul(&y).unwrap().try_div(&y).unwrap(), x);
            }
            Ok(())
        },
    )
}

pub fn interval_encloses_value(cases: u32) -> Result<(), String> {
    let b = (1i64..=1000, 1i64..=100, any::<bool>())
        .prop_map(|(p, q, neg)| frac(if neg { -p } else { p }, q));
    run(
        cases,
        (2i64..500, rat(), b, 5u32..40),
        |(d, a, b, digits)| {
            let x = QuadraticNumber::new(a, b, BigInt::from(d)).unwrap();
            let prec = BigRational::new(BigInt::one(), BigInt::from(10).pow(digits));
            let iv = x.to_interval(&prec);
            prop_assert!(iv.width() <= prec);
            let lo = QuadraticNumber::rational(iv.lo.clone());
            let hi = QuadraticNumber::rational(iv.hi.clone());
            let inside = |v: &QuadraticNumber| {
                lo.compare(v) != Ordering::Greater && v.compare(&hi) != Ordering::Greater
            };
            prop_assert!(inside(&x));
            if !x.is_rational() && !inside(&x.conjugate()) {
                // The minimal polynomial changes sign across an interval holding
                // exactly one of its roots.
                let m = Poly::new(x.minimal_poly());
                prop_assert!(m.sign_at(&iv.lo) * m.sign_at(&iv.hi) < 0);
            }
            Ok(())
        },
    )
}

// ---------------------------------------------------------------- orthopoly

fn factorial(k: i64) -> BigRational {
    (1..=k).fold(BigRational::one(), |acc, i| acc * int(i))
}

/// Q_{n,k} from the explicit Gegenbauer sum, normalized so Q(1) = dim Harm_k.
pub fn explicit_q(n: i64, k: i64) -> Poly {
    let mut c = vec![BigRational::zero(); k as usize + 1];
    if n == 2 {
        // 2T_k with T_k = (k/2) Σ (−1)^j (k−j−1)!/(j!(k−2j)!) (2x)^{k−2j}.
        for j in 0..=k / 2 {
            let sign = if j % 2 == 0 { int(1) } else { int(-1) };
            let v =
                sign * frac(k, 2) * factorial(k - j - 1) / (factorial(j) * factorial(k - 2 * j));
            c[(k - 2 * j) as usize] = v * int(2).pow((k - 2 * j) as i32) * int(2);
        }
        return Poly::new(c);
    }
    let lambda = frac(n - 2, 2);
    let rising = |m: i64| (0..m).fold(BigRational::one(), |acc, i| acc * (&lambda + int(i)));
    for j in 0..=k / 2 {
        let sign = if j % 2 == 0 { int(1) } else { int(-1) };
        let v = sign * rising(k - j) / (factorial(j) * factorial(k - 2 * j));
        c[(k - 2 * j) as usize] = v * int(2).pow((k - 2 * j) as i32);
    }
    let p = Poly::new(c);
    let at_one = p.eval(&int(1));
    p.scale(&(BigRational::from_integer(harm_dim(n, k).unwrap()) / at_one))
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn step(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    // Start from 64 panels so periodic integrands cannot alias the first estimate.
    let panels = 64;
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|i| {
            let (a, b) = (a + i as f64 * h, a + (i + 1) as f64 * h);
            let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
            let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
            step(f, a, b, fa, fm, fb, whole, tol / panels as f64, 8)
        })
        .sum()
}

pub fn gegenbauer_orthogonality() -> Result<(), String> {
    // x = cos θ turns the weight (1 − x²)^{(n−3)/2} dx into sin^{n−2}θ dθ.
    for n in 2..=8i64 {
        let qs: Vec<Poly> = (0..=8).map(|k| gegenbauer(n, k).unwrap()).collect();
        let inner = |p: &Poly, q: &Poly| {
            let f = |th: f64| {
                let x = th.cos();
                eval_f64(p, x) * eval_f64(q, x) * th.sin().powi(n as i32 - 2)
            };
            // |Q_{n,k}| <= Q_{n,k}(1) on [−1, 1] sets the scale of the tolerance.
            let scale = eval_f64(p, 1.0) * eval_f64(q, 1.0);
            adaptive_simpson(&f, 0.0, std::f64::consts::PI, 1e-13 * scale)
        };
        for k in 0..=8usize {
            let norm = inner(&qs[k], &qs[k]);
            if norm <= 0.0 {
                return Err(format!("n={n} k={k}: norm {norm}"));
            }
            for l in k + 1..=8 {
                let v = inner(&qs[k], &qs[l]);
                if v.abs() >= 1e-9 * norm {
                    return Err(format!("n={n} k={k} l={l}: {v} vs {norm}"));
                }
            }
        }
    }
    Ok(())
}

pub fn recurrence_matches_explicit() -> Result<(), String> {
    for n in 2..=50i64 {
        for k in [2i64, 4, 6, 8] {
            if gegenbauer(n, k).unwrap() != explicit_q(n, k) {
                return Err(format!("n={n} k={k}"));
            }
        }
        // The degree-4 polynomial written out.
        let q4 = Poly::new(vec![
            int(3),
            BigRational::zero(),
            int(-6 * (n + 2)),
            BigRational::zero(),
            int((n + 2) * (n + 4)),
        ])
        .scale(&frac(n * (n + 6), 24));
        if gegenbauer(n, 4).unwrap() != q4 {
            return Err(format!("Q_{{{n},4}}"));
        }
    }
    Ok(())
}

pub fn hermite_derivative() -> Result<(), String> {
    for t in 1..=16u32 {
        if hermite(t).derivative() != hermite(t - 1).scale(&int(2 * t as i64)) {
            return Err(format!("t={t}"));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- realroots

/// Integer polynomial with rational roots r/40, times an optional quadratic
/// q·x² − m, with the real roots of the product in floating point.
pub fn build_poly(roots: &[i64], quad: Option<(i64, i64)>) -> (Poly, Vec<f64>) {
    let mut p = Poly::one();
    let mut zs: Vec<f64> = roots.iter().map(|&r| r as f64 / 40.0).collect();
    for &r in roots {
        p = &p * &Poly::from_ints(&[-r, 40]);
    }
    if let Some((q, m)) = quad {
        p = &p * &Poly::from_ints(&[-m, 0, q]);
        if m > 0 {
            let s = (m as f64 / q as f64).sqrt();
            zs.extend([s, -s]);
        }
    }
    (p, zs)
}

/// Roots in (−1, 1] found by sign changes and exact zeros at i/5000.
fn grid_count(p: &Poly) -> usize {
    let c: Vec<BigInt> = p.primitive_ints();
    // 5000^d · p(i/5000) = Σ c_j 5000^{d−j} i^j, all in integers.
    let d = c.len() - 1;
    let h: Vec<BigInt> = (0..=d)
        .map(|j| &c[j] * BigInt::from(5000).pow((d - j) as u32))
        .collect();
    let sign = |i: i64| {
        let v = h.iter().rev().fold(BigInt::zero(), |acc, cj| acc * i + cj);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    };
    let mut count = 0;
    let mut last = 0;
    for i in -5000..=5000i64 {
        let s = sign(i);
        if s == 0 {
            if i > -5000 {
                count += 1;
            }
            last = 0;
        } else {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

fn separated(zs: &[f64], gap: f64) -> bool {
    let mut v = zs.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v.windows(2).all(|w| w[1] - w[0] > gap)
}

pub fn sturm_matches_grid_scan(cases: u32) -> Result<(), String> {
    let strategy = (
        prop::collection::btree_set(-48i64..=48, 0..=10),
        prop::option::of((1i64..=40, -40i64..=40)),
    );
    run(cases, strategy, |(roots, quad)| {
        let roots: Vec<i64> = roots.into_iter().collect();
        let quad = quad.filter(|&(_, m)| m != 0);
        let (p, zs) = build_poly(&roots, quad);
        prop_assume!(!p.is_constant());
        prop_assume!(separated(&zs, 1e-3));
        let iv = RationalInterval::new(int(-1), int(1)).unwrap();
        let sturm = sturm_count(&p, &iv);
        prop_assert_eq!(sturm, grid_count(&p));
        let expected = zs.iter().filter(|&&z| z > -1.0 && z <= 1.0).count();
        prop_assert_eq!(sturm, expected);
        Ok(())
    })
}
