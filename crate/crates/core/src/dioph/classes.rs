//! Square classes of linear factors and the elementary obstructions used to
//! discard them.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Roots;

/// a·n + c with a ≥ 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LinearFactor {
    pub a: i64,
    pub c: i64,
}

impl LinearFactor {
    pub fn shift(c: i64) -> Self {
        Self { a: 1, c }
    }

    pub fn new(a: i64, c: i64) -> Self {
        Self { a, c }
    }
}

impl fmt::Display for LinearFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a != 1 {
            write!(f, "{}", self.a)?;
        }
        match self.c {
            0 => write!(f, "n"),
            c if c > 0 => write!(f, "n+{c}"),
            c => write!(f, "n{c}"),
        }
    }
}

/// ∏_{i ∈ members} factorᵢ = multiplier · (square).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub members: Vec<usize>,
    pub multiplier: u64,
}

/// factorᵢ = classes[i] · yᵢ² with classes[i] squarefree (factors taken
/// positive).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SquareClassCase {
    pub factors: Vec<(i64, i64)>,
    pub classes: Vec<u64>,
}

impl SquareClassCase {
    pub fn factor(&self, i: usize) -> LinearFactor {
        LinearFactor::new(self.factors[i].0, self.factors[i].1)
    }

    /// Squarefree part of ∏_{i ∈ members} classes[i].
    pub fn product_class(&self, members: &[usize]) -> u64 {
        let mut primes: BTreeSet<u64> = BTreeSet::new();
        for &i in members {
            for p in prime_factors(self.classes[i]) {
                if !primes.remove(&p) {
                    primes.insert(p);
                }
            }
        }
        primes.iter().product()
    }
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

fn mask_of(m: u64, primes: &[u64]) -> Option<u64> {
    let mut mask = 0u64;
    let mut rest = m;
    for (k, p) in primes.iter().enumerate() {
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        if e % 2 == 1 {
            mask |= 1 << k;
        }
    }
    (rest == 1).then_some(mask)
}

/// Every assignment of squarefree classes consistent with the relations.
///
/// A prime can divide the class of factor i only if it divides a relation
/// multiplier containing i or the resultant a_i c_j − a_j c_i with a
/// co-member j (a common prime of two values divides that resultant).
/// Factors in no relation get class 1.
pub fn square_class_cases(
    factors: &[LinearFactor],
    relations: &[Relation],
) -> Vec<SquareClassCase> {
    let k = factors.len();
    let mut allowed: Vec<BTreeSet<u64>> = vec![BTreeSet::new(); k];
    for r in relations {
        for &i in &r.members {
            allowed[i].extend(prime_factors(r.multiplier));
            for &j in &r.members {
                let res =
                    (factors[i].a * factors[j].c - factors[j].a * factors[i].c).unsigned_abs();
                if i != j && res != 0 {
                    allowed[i].extend(prime_factors(res));
                }
            }
        }
    }
    let primes: Vec<u64> = allowed
        .iter()
        .flatten()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    assert!(
        primes.len() <= 63,
        "too many primes for the mask representation"
    );
    let masks: Vec<u64> = allowed
        .iter()
        .map(|s| mask_of(s.iter().product(), &primes).unwrap_or(0))
        .collect();
    let targets: Vec<u64> = relations
        .iter()
        .map(|r| mask_of(r.multiplier, &primes).expect("multiplier primes are allowed"))
        .collect();
    // Submasks of each factor's allowed set, enumerated in increasing order.
    let choices: Vec<Vec<u64>> = masks
        .iter()
        .map(|&m| {
            let mut subs: Vec<u64> = (0..=m).filter(|s| s & !m == 0).collect();
            subs.sort_unstable();
            subs
        })
        .collect();
    let mut out = Vec::new();
    let mut pick = vec![0u64; k];
    fn walk(
        i: usize,
        pick: &mut Vec<u64>,
        choices: &[Vec<u64>],
        relations: &[Relation],
        targets: &[u64],
        out: &mut Vec<Vec<u64>>,
    ) {
        if i == choices.len() {
            if relations
                .iter()
                .zip(targets)
                .all(|(r, t)| r.members.iter().fold(0, |acc, &m| acc ^ pick[m]) == *t)
            {
                out.push(pick.clone());
            }
            return;
        }
        for &c in &choices[i] {
            pick[i] = c;
            walk(i + 1, pick, choices, relations, targets, out);
        }
    }
    walk(0, &mut pick, &choices, relations, &targets, &mut out);
    let class = |mask: u64| -> u64 {
        primes
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, p)| p)
            .product()
    };
    let mut cases: Vec<SquareClassCase> = out
        .into_iter()
        .map(|p| SquareClassCase {
            factors: factors.iter().map(|f| (f.a, f.c)).collect(),
            classes: p.into_iter().map(class).collect(),
        })
        .collect();
    cases.sort();
    cases
}

/// True iff y² ≡ r (mod m) has no solution.
pub fn qr_obstruction(r: i64, m: u64) -> bool {
    assert!(m >= 2, "modulus must be at least 2");
    let r = r.rem_euclid(m as i64) as u64;
    !(0..m).any(|y| (y as u128 * y as u128 % m as u128) as u64 == r)
}

/// yᵢ² ≡ residue (mod prime) is forced and impossible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obstruction {
    pub i: usize,
    pub j: usize,
    pub prime: u64,
    pub residue: u64,
}

fn inv_mod(a: i64, p: i64) -> Option<i64> {
    let a = a.rem_euclid(p);
    (1..p).find(|x| a * x % p == 1)
}

/// For each ordered pair (i, j): a_j d_i y_i² − a_i d_j y_j² = a_j c_i − a_i c_j,
/// so a prime p | d_j with p ∤ a_j d_i fixes y_i² mod p.
pub fn local_obstructions(case: &SquareClassCase) -> Vec<Obstruction> {
    let mut out = Vec::new();
    let k = case.classes.len();
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            let (fi, fj) = (case.factor(i), case.factor(j));
            let (di, dj) = (case.classes[i] as i64, case.classes[j] as i64);
            let r = fj.a * fi.c - fi.a * fj.c;
            for p in prime_factors(dj as u64) {
                let p = p as i64;
                let lead = fj.a * di;
                if lead % p == 0 {
                    continue;
                }
                let residue = (r.rem_euclid(p) * inv_mod(lead, p).expect("p prime, coprime lead"))
                    .rem_euclid(p);
                if qr_obstruction(residue, p as u64) {
                    out.push(Obstruction {
                        i,
                        j,
                        prime: p as u64,
                        residue: residue as u64,
                    });
                }
            }
        }
    }
    out
}

/// Pairs d₁ ≥ d₂ > 0 with d₁·d₂ = n and d₁ ≡ d₂ (mod 2), largest d₁ first.
pub fn same_parity_factorizations(n: u64) -> Vec<(u64, u64)> {
    let mut out: Vec<(u64, u64)> = (1..=n.sqrt())
        .filter(|d| n % d == 0 && (n / d) % 2 == d % 2)
        .map(|d| (n / d, d))
        .collect();
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Integer n ≥ 2 with n² + b·n + c = (d₁ + d₂)/2 for some pair.
pub fn solve_for_n(pairs: &[(u64, u64)], b: i64, c: i64) -> Vec<i64> {
    let mut out = BTreeSet::new();
    for &(d1, d2) in pairs {
        let s = (d1 + d2) as i128;
        if s % 2 != 0 {
            continue;
        }
        let disc = (b as i128) * (b as i128) - 4 * (c as i128 - s / 2);
        if disc < 0 {
            continue;
        }
        let r = disc.sqrt();
        if r * r != disc {
            continue;
        }
        for num in [-(b as i128) + r, -(b as i128) - r] {
            if num % 2 == 0 && num / 2 >= 2 {
                out.insert((num / 2) as i64);
            }
        }
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residues() {
        assert!(qr_obstruction(2, 3));
        assert!(qr_obstruction(6, 7));
        assert!(!qr_obstruction(1, 3));
        assert!(!qr_obstruction(0, 5));
        assert!(!qr_obstruction(-1, 5));
    }

    #[test]
    fn single_unconstrained_factor() {
        let cases = square_class_cases(&[LinearFactor::shift(3)], &[]);
        assert_eq!(cases.len(), 1);
        assert_eq!(cases[0].classes, vec![1]);
        assert_eq!(cases[0].product_class(&[0]), 1);
    }

    #[test]
    fn factorizations() {
        assert_eq!(
            same_parity_factorizations(400),
            vec![(200, 2), (100, 4), (50, 8), (40, 10), (20, 20)]
        );
        assert_eq!(same_parity_factorizations(1), vec![(1, 1)]);
        assert_eq!(
            solve_for_n(&same_parity_factorizations(400), 6, -20),
            vec![4, 6]
        );
    }

    #[test]
    fn display() {
        assert_eq!(LinearFactor::new(23, -172).to_string(), "23n-172");
        assert_eq!(LinearFactor::shift(5).to_string(), "n+5");
    }
}
