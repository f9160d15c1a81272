//! Exact rational matrices.
//!
//! Rank is computed by fraction-free (Bareiss) elimination after clearing
//! denominators row by row, so no intermediate fraction is ever reduced.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::perm::Permutation;

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    BigRational::from_integer(BigInt::from(v))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>, // row-major
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    /// The elementary matrix `E_{r,s}` (1-based), sending `e_s` to `e_r`.
    pub fn elementary(n: usize, r: usize, s: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m.set(r, s, Rational::one());
        m
    }

    /// Permutation matrix with `P e_j = e_{w(j)}`.
    pub fn permutation(w: &Permutation) -> Self {
        let n = w.n();
        let mut m = Self::zeros(n, n);
        for j in 1..=n {
            m.set(w.at(j), j, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Parse("ragged matrix rows".into()));
        }
        Ok(RationalMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect();
        Self::from_rows(rows).expect("rectangular literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// 1-based access.
    pub fn get(&self, r: usize, s: usize) -> &Rational {
        &self.entries[(r - 1) * self.cols + (s - 1)]
    }

    pub fn set(&mut self, r: usize, s: usize, v: Rational) {
        self.entries[(r - 1) * self.cols + (s - 1)] = v;
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    /// Nonzero positions as 1-based `(row, col)` pairs in row-major order.
    pub fn support(&self) -> Vec<(usize, usize)> {
        (1..=self.rows)
            .cartesian_product(1..=self.cols)
            .filter(|&(r, s)| !self.get(r, s).is_zero())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.support().into_iter().all(|(r, s)| r <= s)
    }

    pub fn is_strictly_upper_triangular(&self) -> bool {
        self.support().into_iter().all(|(r, s)| r < s)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 1..=self.rows {
            for s in 1..=self.cols {
                t.set(s, r, self.get(r, s).clone());
            }
        }
        t
    }

    /// The first `i` columns.
    pub fn leading_columns(&self, i: usize) -> Self {
        let mut m = Self::zeros(self.rows, i);
        for r in 1..=self.rows {
            for s in 1..=i {
                m.set(r, s, self.get(r, s).clone());
            }
        }
        m
    }

    /// Column concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::SizeMismatch {
                left: self.rows,
                right: other.rows,
            });
        }
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for r in 1..=self.rows {
            for s in 1..=self.cols {
                m.set(r, s, self.get(r, s).clone());
            }
            for s in 1..=other.cols {
                m.set(r, self.cols + s, other.get(r, s).clone());
            }
        }
        Ok(m)
    }

    /// Stacks flattened matrices (or any equal-length vectors) as rows.
    pub fn stack_flattened<'a, I>(items: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a RationalMatrix>,
    {
        let rows: Vec<Vec<Rational>> = items.into_iter().map(|m| m.entries.clone()).collect();
        if rows.is_empty() {
            return Ok(Self::zeros(0, 0));
        }
        Self::from_rows(rows)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::SizeMismatch {
                left: self.cols,
                right: other.rows,
            });
        }
        let mut m = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for t in 0..self.cols {
                let a = &self.entries[r * self.cols + t];
                if a.is_zero() {
                    continue;
                }
                for s in 0..other.cols {
                    let b = &other.entries[t * other.cols + s];
                    if !b.is_zero() {
                        m.entries[r * other.cols + s] += a * b;
                    }
                }
            }
        }
        Ok(m)
    }

    /// Commutator `[self, other] = self·other − other·self`.
    pub fn bracket(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn rank(&self) -> usize {
        rank_of_rows(self.integer_rows())
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Inverse by Gauss–Jordan over the rationals.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::SizeMismatch {
                left: self.rows,
                right: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 1..=n {
            let pivot = (c..=n).find(|&r| !a.get(r, c).is_zero()).ok_or(Error::SingularMatrix)?;
            a.swap_rows(c, pivot);
            inv.swap_rows(c, pivot);
            let p = a.get(c, c).clone();
            for s in 1..=n {
                let v = a.get(c, s) / &p;
                a.set(c, s, v);
                let v = inv.get(c, s) / &p;
                inv.set(c, s, v);
            }
            for r in 1..=n {
                if r == c || a.get(r, c).is_zero() {
                    continue;
                }
                let f = a.get(r, c).clone();
                for s in 1..=n {
                    let v = a.get(r, s) - &f * a.get(c, s);
                    a.set(r, s, v);
                    let v = inv.get(r, s) - &f * inv.get(c, s);
                    inv.set(r, s, v);
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for s in 0..self.cols {
            self.entries.swap((a - 1) * self.cols + s, (b - 1) * self.cols + s);
        }
    }

    /// Each row multiplied by the lcm of its denominators.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let row = &self.entries[r * self.cols..(r + 1) * self.cols];
                let l = row
                    .iter()
                    .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter()
                    .map(|x| x.numer() * (&l / x.denom()))
                    .collect()
            })
            .collect()
    }
}

/// Bareiss elimination with column skipping; returns the rank.
fn rank_of_rows(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][c].clone();
        for r in rank + 1..rows {
            let factor = a[r][c].clone();
            for s in c + 1..cols {
                let v = &pivot * &a[r][s] - &factor * &a[rank][s];
                let (q, rem) = v.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                a[r][s] = q;
            }
            a[r][c] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

impl Add for &RationalMatrix {
    type Output = RationalMatrix;
    fn add(self, rhs: Self) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &RationalMatrix {
    type Output = RationalMatrix;
    fn sub(self, rhs: Self) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;
    fn mul(self, rhs: Self) -> RationalMatrix {
        self.checked_mul(rhs).expect("shape mismatch")
    }
}

impl Neg for &RationalMatrix {
    type Output = RationalMatrix;
    fn neg(self) -> RationalMatrix {
        self.scale(&int(-1))
    }
}

impl fmt::Display for RationalMatrix {
    /// Row-major, `,` between entries and `;` between rows: `0,1/2;1,0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = (0..self.rows)
            .map(|r| {
                self.entries[r * self.cols..(r + 1) * self.cols]
                    .iter()
                    .map(|x| x.to_string())
                    .join(",")
            })
            .join(";");
        f.write_str(&text)
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for RationalMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rows = s
            .trim()
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<Rational>()
                            .map_err(|_| Error::Parse(format!("bad matrix entry {t:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }
}

/// Incrementally maintained row space over the rationals (reduced echelon basis).
#[derive(Clone, Debug, Default)]
pub struct RowSpace {
    basis: Vec<(usize, Vec<Rational>)>, // (pivot index, row with 1 at pivot)
}

impl RowSpace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut v = v.to_vec();
        for (p, row) in &self.basis {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns true when the dimension grew.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let lead = r[p].clone();
        for x in r.iter_mut() {
            *x /= &lead;
        }
        for (_, row) in self.basis.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&r) {
                    *x -= &f * y;
                }
            }
        }
        self.basis.push((p, r));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_basics() {
        assert_eq!(RationalMatrix::zeros(3, 3).rank(), 0);
        assert_eq!(RationalMatrix::identity(4).rank(), 4);
        let m: RationalMatrix = "1,2,3;2,4,6;1,0,1".parse().unwrap();
        assert_eq!(m.rank(), 2);
        let m: RationalMatrix = "1/2,1/3;3,2".parse().unwrap();
        assert_eq!(m.rank(), 1);
        let m: RationalMatrix = "0,0,1;0,0,2;0,1,0".parse().unwrap();
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn rank_agrees_with_row_space() {
        let m: RationalMatrix = "1,2,0,4;2,4,1,8;3,6,1,12;0,0,5,0".parse().unwrap();
        let mut sp = RowSpace::new();
        for r in 0..m.rows() {
            sp.insert(&m.entries()[r * 4..(r + 1) * 4]);
        }
        assert_eq!(sp.dim(), m.rank());
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn inverse_round_trip() {
        let m: RationalMatrix = "2,1,0;0,1/2,3;1,0,1".parse().unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, RationalMatrix::identity(3));
        assert!(matches!(
            "1,2;2,4".parse::<RationalMatrix>().unwrap().inverse(),
            Err(Error::SingularMatrix)
        ));
    }

    #[test]
    fn text_format() {
        let m: RationalMatrix = "0,1/2;1,0".parse().unwrap();
        assert_eq!(m.to_string(), "0,1/2;1,0");
        assert_eq!(*m.get(1, 2), rat(1, 2));
        assert!("1,2;3".parse::<RationalMatrix>().is_err());
    }

    #[test]
    fn permutation_matrix_maps_basis() {
        let w: Permutation = "2,4,1,3".parse().unwrap();
        let p = RationalMatrix::permutation(&w);
        for j in 1..=4 {
            assert_eq!(*p.get(w.at(j), j), int(1));
        }
        let e = RationalMatrix::elementary(3, 1, 2);
        assert_eq!(e.support(), vec![(1, 2)]);
        assert!(e.is_strictly_upper_triangular());
    }
}
