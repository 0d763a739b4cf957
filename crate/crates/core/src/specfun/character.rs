use crate::{Error, Result};

/// A fundamental discriminant `D != 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Discriminant(i64);

impl Discriminant {
    pub fn new(d: i64) -> Result<Self> {
        if is_fundamental(d) {
            Ok(Self(d))
        } else {
            Err(Error::Discriminant(d))
        }
    }

    pub fn value(self) -> i64 {
        self.0
    }

    pub fn is_negative(self) -> bool {
        self.0 < 0
    }

    /// Number of units of the order: 6 for `D = -3`, 4 for `D = -4`, else 2.
    pub fn unit_count(self) -> u32 {
        match self.0 {
            -3 => 6,
            -4 => 4,
            _ => 2,
        }
    }
}

impl std::fmt::Display for Discriminant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_squarefree(mut n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Whether `d` is a fundamental discriminant other than 1.
pub fn is_fundamental(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(d.unsigned_abs()),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}

/// Kronecker symbol `(a / n)` for arbitrary integers.
pub fn kronecker(a: i64, n: i64) -> i8 {
    if n == 0 {
        return if a.abs() == 1 { 1 } else { 0 };
    }
    let mut result: i8 = 1;
    let mut n = n as i128;
    let a = a as i128;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    let mut v = 0;
    while n % 2 == 0 {
        n /= 2;
        v += 1;
    }
    if v > 0 {
        if a % 2 == 0 {
            return 0;
        }
        if v % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
    }
    // Jacobi symbol for odd positive n.
    let mut a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// The quadratic character `chi_D(n) = (D / n)`.
pub fn kronecker_symbol(d: Discriminant, n: i64) -> i8 {
    kronecker(d.value(), n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fundamental_list() {
        let neg: Vec<i64> = (-60..0).filter(|&d| is_fundamental(d)).collect();
        assert_eq!(
            neg,
            vec![-59, -56, -55, -52, -51, -47, -43, -40, -39, -35, -31, -24, -23, -20, -19, -15, -11, -8, -7, -4, -3]
        );
        let pos: Vec<i64> = (1..45).filter(|&d| is_fundamental(d)).collect();
        assert_eq!(pos, vec![5, 8, 12, 13, 17, 21, 24, 28, 29, 33, 37, 40, 41, 44]);
    }

    #[test]
    fn character_values() {
        let d = Discriminant::new(-4).unwrap();
        let v: Vec<i8> = (1..=8).map(|n| kronecker_symbol(d, n)).collect();
        assert_eq!(v, vec![1, 0, -1, 0, 1, 0, -1, 0]);
        let d = Discriminant::new(8).unwrap();
        let v: Vec<i8> = (1..=8).map(|n| kronecker_symbol(d, n)).collect();
        assert_eq!(v, vec![1, 0, -1, 0, -1, 0, 1, 0]);
        assert_eq!(kronecker(-1, -1), -1);
        assert_eq!(kronecker(5, 0), 0);
    }

    #[test]
    fn character_is_periodic_and_multiplicative() {
        for &d in &[-23i64, -20, 5, 12, 21, -163] {
            let dd = Discriminant::new(d).unwrap();
            let q = d.abs();
            for n in 1..40 {
                assert_eq!(kronecker_symbol(dd, n), kronecker_symbol(dd, n + q));
                for m in 1..15 {
                    assert_eq!(kronecker_symbol(dd, n * m), kronecker_symbol(dd, n) * kronecker_symbol(dd, m));
                }
            }
        }
    }
}
