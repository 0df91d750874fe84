//! Exact rational points and their conversion to a common integer lattice.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;
/// A point of R^m with exact rational coordinates.
pub type Point = Vec<Rat>;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn point(coords: &[i64]) -> Point {
    coords.iter().map(|&c| rat(c)).collect()
}

/// Parses `"p/q"`, an integer, or a finite decimal such as `"-1.25"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    let bad = || Error::Parse(format!("'{s}' is not a rational number"));
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("'{s}' has zero denominator")));
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let neg = int.starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        if !frac.chars().all(|c| c.is_ascii_digit())
            || !int_digits.chars().all(|c| c.is_ascii_digit())
            || (int_digits.is_empty() && frac.is_empty())
        {
            return Err(bad());
        }
        let digits = format!("{int_digits}{frac}");
        let mut n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
        if neg {
            n = -n;
        }
        let d = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(Rat::new(n, d));
    }
    let n: BigInt = t.parse().map_err(|_| bad())?;
    Ok(Rat::from_integer(n))
}

/// Canonical text form: `"n"` for integers, `"p/q"` otherwise.
pub fn format_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn sub(a: &Point, b: &Point) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &Point, b: &Point) -> Point {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &Point, k: &Rat) -> Point {
    a.iter().map(|x| x * k).collect()
}

pub fn dot(a: &Point, b: &Point) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn cross(a: &Point, b: &Point) -> Point {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

pub fn is_zero_vec(a: &Point) -> bool {
    a.iter().all(Zero::is_zero)
}

/// Affine combination `(1 - t) a + t b`.
pub fn lerp(a: &Point, b: &Point, t: &Rat) -> Point {
    a.iter().zip(b).map(|(x, y)| x + (y - x) * t).collect()
}

/// Average of the given points.
pub fn centroid(pts: &[&Point]) -> Point {
    let m = pts[0].len();
    let n = rat(pts.len() as i64);
    (0..m)
        .map(|k| pts.iter().fold(Rat::zero(), |acc, p| acc + &p[k]) / &n)
        .collect()
}

/// Determinant by fraction-free Gaussian elimination over the rationals.
pub fn det(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut d = Rat::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rat::zero();
        };
        if piv != col {
            m.swap(piv, col);
            d = -d;
        }
        let p = m[col][col].clone();
        d *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &p;
            for c in col..n {
                let v = &f * &m[col][c];
                m[r][c] -= v;
            }
        }
    }
    d
}

/// Rank of a list of rational vectors.
pub fn rank(rows: &[Point]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        let Some(piv) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(piv, r);
        let p = m[r][col].clone();
        for i in r + 1..m.len() {
            if m[i][col].is_zero() {
                continue;
            }
            let f = &m[i][col] / &p;
            for c in col..ncols {
                let v = &f * &m[r][c];
                m[i][c] -= v;
            }
        }
        r += 1;
    }
    r
}

/// Points rescaled by the least common denominator so that every coordinate is an
/// integer. Incidence and orientation predicates are invariant under this scaling.
#[derive(Clone, Debug)]
pub enum Lattice {
    /// Fast path: every coordinate fits comfortably so that 3x3 determinants of
    /// coordinate differences stay within `i128`.
    Small(Vec<Vec<i128>>),
    Big(Vec<Vec<BigInt>>),
}

/// Coordinates whose magnitude is below this bound use the `i128` fast path.
const SMALL_BOUND: i64 = 1 << 40;

impl Lattice {
    pub fn new(points: &[Point]) -> Lattice {
        let mut l = BigInt::one();
        for p in points {
            for c in p {
                l = l.lcm(c.denom());
            }
        }
        let big: Vec<Vec<BigInt>> = points
            .iter()
            .map(|p| p.iter().map(|c| c.numer() * (&l / c.denom())).collect())
            .collect();
        let bound = BigInt::from(SMALL_BOUND);
        if big.iter().flatten().all(|c| c.abs() < bound) {
            Lattice::Small(
                big.iter()
                    .map(|p| p.iter().map(|c| c.to_i128().expect("bounded")).collect())
                    .collect(),
            )
        } else {
            Lattice::Big(big)
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Lattice::Small(v) => v.len(),
            Lattice::Big(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rat("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse_rat("-1.25").unwrap(), ratio(-5, 4));
        assert_eq!(parse_rat(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rat("7").unwrap(), rat(7));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("abc").is_err());
        assert_eq!(format_rat(&ratio(-6, 4)), "-3/2");
        assert_eq!(format_rat(&rat(4)), "4");
    }

    #[test]
    fn determinant_and_rank() {
        let m = vec![point(&[2, 0, 1]), point(&[1, 3, 2]), point(&[1, 1, 1])];
        // 2(3-2) - 0 + 1(1-3) = 0
        assert_eq!(det(m.clone()), rat(0));
        assert_eq!(rank(&m), 2);
        assert_eq!(det(vec![point(&[0, 1]), point(&[1, 0])]), rat(-1));
    }

    #[test]
    fn lattice_scaling() {
        let l = Lattice::new(&[vec![ratio(1, 2), ratio(1, 3)], vec![rat(1), ratio(-1, 6)]]);
        match l {
            Lattice::Small(v) => assert_eq!(v, vec![vec![3, 2], vec![6, -1]]),
            Lattice::Big(_) => panic!("small coordinates expected"),
        }
    }
}
