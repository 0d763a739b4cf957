use crate::hypgeo::UnimodularMatrix;
use crate::specfun::Discriminant;
use crate::{Error, Result};

/// Primitive integral binary quadratic form `a x^2 + b xy + c y^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadraticForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `floor(sqrt(n))` for `n >= 0`.
pub(crate) fn isqrt(n: i64) -> i64 {
    if n < 2 {
        return n.max(0);
    }
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn isqrt_wide(n: i128) -> i128 {
    let mut r = (n as f64).sqrt() as i128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

impl QuadraticForm {
    /// Checked constructor: discriminant `d` must be fundamental, the form
    /// primitive, and positive definite forms must have `a > 0`.
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        let d = (b as i128) * (b as i128) - 4 * (a as i128) * (c as i128);
        let d = i64::try_from(d).map_err(|_| Error::Arithmetic("discriminant overflows".into()))?;
        Discriminant::new(d)?;
        if gcd(gcd(a, b), c) != 1 {
            return Err(Error::Arithmetic(format!("form ({a},{b},{c}) is not primitive")));
        }
        if d < 0 && a <= 0 {
            return Err(Error::Arithmetic(format!("definite form ({a},{b},{c}) must have a > 0")));
        }
        Ok(Self { a, b, c })
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    /// Whether an indefinite form is reduced: `|sqrt D - 2|a|| < b < sqrt D`.
    pub fn is_reduced_indefinite(&self) -> bool {
        let d = self.discriminant();
        if d <= 0 || self.b <= 0 {
            return false;
        }
        let r = isqrt(d);
        // b < sqrt D and sqrt D - 2|a| < b < ... with sqrt D irrational.
        let two_a = 2 * self.a.abs();
        self.b <= r && (two_a - self.b <= r) && (self.b + two_a > r)
    }

    /// One reduction step `(a, b, c) -> (c, b', (b'^2 - D)/(4c))` with
    /// `b' = -b mod 2|c|` taken in `(sqrt D - 2|c|, sqrt D)`, and the matrix
    /// parameter `s = (b + b')/(2c)` of the equivalence `(0, -1; 1, s)`.
    pub fn rho_step(&self) -> (Self, i64) {
        let d = self.discriminant();
        let r = isqrt(d);
        let m = 2 * self.c.abs();
        let bp = -self.b + m * (r + self.b).div_euclid(m);
        let s = (self.b + bp) / (2 * self.c);
        let cp = (bp * bp - d) / (4 * self.c);
        (
            Self {
                a: self.c,
                b: bp,
                c: cp,
            },
            s,
        )
    }
}

impl std::fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

fn reduced_definite(d: i64) -> Vec<QuadraticForm> {
    let n = -d;
    let mut out = Vec::new();
    let a_max = isqrt(n / 3) + 1;
    for a in 1..=a_max {
        for b in -a + 1..=a {
            if (b - d).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (b < 0 && a == c) {
                continue;
            }
            if gcd(gcd(a, b), c) == 1 {
                out.push(QuadraticForm { a, b, c });
            }
        }
    }
    out.sort();
    out
}

/// All reduced indefinite forms of discriminant `d`, sorted.
pub fn reduced_indefinite_all(d: i64) -> Vec<QuadraticForm> {
    let r = isqrt(d);
    let mut out = Vec::new();
    for b in 1..=r {
        if (b - d).rem_euclid(2) != 0 {
            continue;
        }
        let num = d - b * b;
        if num <= 0 || num % 4 != 0 {
            continue;
        }
        let ac = num / 4;
        for a_abs in 1..=ac {
            if ac % a_abs != 0 {
                continue;
            }
            for a in [a_abs, -a_abs] {
                let q = QuadraticForm { a, b, c: -ac / a };
                if q.is_reduced_indefinite() && gcd(gcd(a, b), q.c) == 1 {
                    out.push(q);
                }
            }
        }
    }
    out.sort();
    out
}

/// The cycle of reduced forms through `start`, with the step parameters.
pub fn reduction_cycle(start: QuadraticForm) -> Result<Vec<(QuadraticForm, i64)>> {
    let mut cycle = Vec::new();
    let mut q = start;
    for _ in 0..100_000 {
        let (next, s) = q.rho_step();
        cycle.push((q, s));
        q = next;
        if q == start {
            return Ok(cycle);
        }
    }
    Err(Error::Arithmetic(format!("reduction cycle of {start} did not close")))
}

fn indefinite_cycles(d: i64) -> Result<Vec<Vec<(QuadraticForm, i64)>>> {
    let all = reduced_indefinite_all(d);
    let mut seen = std::collections::HashSet::new();
    let mut cycles = Vec::new();
    for q in all {
        if seen.contains(&q) {
            continue;
        }
        let cyc = reduction_cycle(q)?;
        for (f, _) in &cyc {
            seen.insert(*f);
        }
        cycles.push(cyc);
    }
    Ok(cycles)
}

/// One reduced representative per class (narrow class when `D > 0`).
pub fn reduced_forms(d: Discriminant) -> Result<Vec<QuadraticForm>> {
    if d.is_negative() {
        Ok(reduced_definite(d.value()))
    } else {
        Ok(indefinite_cycles(d.value())?.into_iter().map(|c| c[0].0).collect())
    }
}

/// Class number `h(D)`, or the narrow class number for `D > 0`.
pub fn class_number(d: Discriminant) -> Result<usize> {
    Ok(reduced_forms(d)?.len())
}

/// Generator of the automorph group of an indefinite reduced form, from the
/// product of the step matrices around its cycle, as `(t, u, matrix)` with
/// `t^2 - D u^2 = 4` and `t, u > 0`.
pub fn cycle_automorph(q: QuadraticForm) -> Result<(i64, i64, UnimodularMatrix)> {
    let d = q.discriminant();
    let overflow = || Error::Arithmetic(format!("automorph of {q} overflows; D = {d} too large"));
    let cyc = reduction_cycle(q)?;
    let mut m = [[1i128, 0], [0, 1]];
    for &(_, s) in &cyc {
        let s = s as i128;
        // m <- m * (0, -1; 1, s)
        let next = [[m[0][1], -m[0][0] + s * m[0][1]], [m[1][1], -m[1][0] + s * m[1][1]]];
        for row in next {
            for x in row {
                if x.abs() > i64::MAX as i128 / 4 {
                    return Err(overflow());
                }
            }
        }
        m = next;
    }
    let t = (m[0][0] + m[1][1]).abs();
    let t2m4 = t.checked_mul(t).ok_or_else(overflow)? - 4;
    if t2m4 <= 0 || t2m4 % d as i128 != 0 {
        return Err(Error::Arithmetic(format!("cycle product of {q} has trace {t}, not a Pell solution")));
    }
    let u2 = t2m4 / d as i128;
    let u = isqrt_wide(u2);
    if u * u != u2 {
        return Err(Error::Arithmetic(format!("cycle product of {q} has trace {t}, not a Pell solution")));
    }
    let (a, b, c) = (q.a as i128, q.b as i128, q.c as i128);
    let entries = [(t - b * u) / 2, -c * u, a * u, (t + b * u) / 2];
    let conv = |x: i128| i64::try_from(x).map_err(|_| overflow());
    let g = UnimodularMatrix::new(conv(entries[0])?, conv(entries[1])?, conv(entries[2])?, conv(entries[3])?)?;
    Ok((conv(t)?, conv(u)?, g))
}

/// Fundamental solution of `t^2 - D u^2 = 4` by direct search in `u`.
pub fn pell_by_search(d: i64, u_max: i64) -> Option<(i64, i64)> {
    for u in 1..=u_max {
        let t2 = d.checked_mul(u)?.checked_mul(u)?.checked_add(4)?;
        let t = isqrt(t2);
        if t * t == t2 {
            return Some((t, u));
        }
    }
    None
}
