//! Exact integer polynomial arithmetic for Alexander polynomials of torus
//! knots. No floating point anywhere.

use std::fmt;

/// Dense polynomial with integer coefficients, index = exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly(pub Vec<i64>);

#[derive(Clone, Debug)]
pub enum PolyError {
    InexactDivision,
    NotCoprime { a: i64, b: i64 },
    BadParameters { what: String },
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::InexactDivision => write!(f, "polynomial division left a remainder"),
            PolyError::NotCoprime { a, b } => write!(f, "parameters {a}, {b} are not coprime"),
            PolyError::BadParameters { what } => write!(f, "bad parameters: {what}"),
        }
    }
}

impl std::error::Error for PolyError {}

impl IntPoly {
    /// t^n - 1.
    pub fn tn_minus_1(n: usize) -> IntPoly {
        let mut v = vec![0; n + 1];
        v[0] = -1;
        v[n] = 1;
        IntPoly(v)
    }

    pub fn trim(mut self) -> IntPoly {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn mul(&self, rhs: &IntPoly) -> IntPoly {
        let mut out = vec![0i64; self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly(out).trim()
    }

    /// Exact division; errors if a nonzero remainder appears.
    pub fn div_exact(&self, rhs: &IntPoly) -> Result<IntPoly, PolyError> {
        let rhs = rhs.clone().trim();
        let lead = *rhs.0.last().ok_or(PolyError::InexactDivision)?;
        let mut rem = self.clone().trim().0;
        if rem.len() < rhs.0.len() {
            return if rem.is_empty() { Ok(IntPoly(vec![])) } else { Err(PolyError::InexactDivision) };
        }
        let mut quot = vec![0i64; rem.len() - rhs.0.len() + 1];
        for k in (0..quot.len()).rev() {
            let top = rem[k + rhs.0.len() - 1];
            if top % lead != 0 {
                return Err(PolyError::InexactDivision);
            }
            let q = top / lead;
            quot[k] = q;
            if q != 0 {
                for (j, b) in rhs.0.iter().enumerate() {
                    rem[k + j] -= q * b;
                }
            }
        }
        if rem.iter().any(|c| *c != 0) {
            return Err(PolyError::InexactDivision);
        }
        Ok(IntPoly(quot).trim())
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Exponents (descending) of the symmetrized Alexander polynomial of the
/// (a,b) torus knot, computed by exact division of
/// (t^{ab} - 1)(t - 1) / ((t^a - 1)(t^b - 1)). All coefficients are +-1 and
/// the exponent set is symmetric about zero with top exponent the genus.
pub fn torus_alexander_exponents(a: i64, b: i64) -> Result<Vec<i64>, PolyError> {
    if a < 2 || b < 2 {
        return Err(PolyError::BadParameters { what: format!("need a,b > 1, got ({a},{b})") });
    }
    if gcd(a, b) != 1 {
        return Err(PolyError::NotCoprime { a, b });
    }
    let (ua, ub) = (a as usize, b as usize);
    let num = IntPoly::tn_minus_1(ua * ub).mul(&IntPoly::tn_minus_1(1));
    let den = IntPoly::tn_minus_1(ua).mul(&IntPoly::tn_minus_1(ub));
    let p = num.div_exact(&den)?;
    let genus = ((a - 1) * (b - 1) / 2) as i64;
    debug_assert_eq!(p.degree() as i64, 2 * genus);
    let mut exps: Vec<i64> = Vec::new();
    for (e, c) in p.0.iter().enumerate() {
        match c {
            0 => {}
            1 | -1 => exps.push(e as i64 - genus),
            _ => return Err(PolyError::BadParameters { what: "non-unit coefficient".into() }),
        }
    }
    exps.sort_unstable();
    exps.reverse();
    Ok(exps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_is_exact() {
        let p = IntPoly::tn_minus_1(6);
        let q = IntPoly::tn_minus_1(2);
        let d = p.div_exact(&q).unwrap();
        assert_eq!(d.mul(&q).trim(), p.trim());
        assert!(IntPoly::tn_minus_1(5).div_exact(&IntPoly::tn_minus_1(2)).is_err());
    }

    #[test]
    fn trefoil_exponents() {
        assert_eq!(torus_alexander_exponents(2, 3).unwrap(), vec![1, 0, -1]);
    }

    #[test]
    fn cinqfoil_exponents() {
        assert_eq!(torus_alexander_exponents(2, 5).unwrap(), vec![2, 1, 0, -1, -2]);
    }

    #[test]
    fn t34_exponents() {
        assert_eq!(torus_alexander_exponents(3, 4).unwrap(), vec![3, 2, 0, -2, -3]);
    }

    #[test]
    fn exponent_sets_are_symmetric_with_unit_gaps_at_the_ends() {
        for (a, b) in [(2, 3), (2, 5), (2, 7), (3, 4), (3, 5), (4, 5), (5, 6)] {
            let e = torus_alexander_exponents(a, b).unwrap();
            let g = (a - 1) * (b - 1) / 2;
            assert_eq!(e[0], g);
            assert_eq!(e[0] - e[1], 1, "first gap of T({a},{b})");
            assert_eq!(e[e.len() - 2] - e[e.len() - 1], 1, "last gap of T({a},{b})");
            let neg: Vec<i64> = e.iter().rev().map(|x| -x).collect();
            assert_eq!(e, neg, "symmetry for T({a},{b})");
            assert_eq!(e.len() % 2, 1);
        }
    }

    #[test]
    fn rejects_non_coprime() {
        assert!(torus_alexander_exponents(2, 4).is_err());
        assert!(torus_alexander_exponents(3, 6).is_err());
    }
}
