//! Exact rational matrices: the home of every intersection-theoretic
//! computation. No rounding anywhere; the Moore-Penrose pseudoinverse is
//! computed through a full-rank factorization, so the four Penrose
//! identities hold exactly.

use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Rat>,
}

impl RationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|row| row.len() == c));
        RationalMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat_int(x)).collect())
                .collect(),
        )
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            *a -= b;
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = self.clone();
        for a in out.entries.iter_mut() {
            *a *= c;
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut s = Rat::zero();
                for j in 0..self.cols {
                    s += &self[(i, j)] * &v[j];
                }
                s
            })
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Reduced row echelon form; returns (rref, pivot columns).
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let t = &m[(r, j)] * &inv;
                m[(r, j)] = t;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        let t = &m[(i, j)] - &f * &m[(r, j)];
                        m[(i, j)] = t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Rat::zero();
            };
            if pr != c {
                m.swap_rows(c, pr);
                det = -det;
            }
            det *= &m[(c, c)];
            let inv = m[(c, c)].recip();
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..n {
                    let t = &m[(i, j)] - &f * &m[(c, j)];
                    m[(i, j)] = t;
                }
            }
        }
        det
    }

    /// Solve A x = b exactly; error if inconsistent, free variables set to 0.
    pub fn solve(&self, b: &[Rat]) -> Result<Vec<Rat>> {
        assert_eq!(self.rows, b.len());
        let mut aug = Self::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return Err(Error::Other("inconsistent linear system".into()));
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r[(row, self.cols)].clone();
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Self::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rat::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || (0..n).any(|i| pivots[i] != i) {
            return Err(Error::SingularMatrix);
        }
        let mut out = Self::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Ok(out)
    }

    /// Columns (by index) forming a basis of the column space.
    fn column_basis(&self) -> Vec<usize> {
        self.rref().1
    }

    /// Moore-Penrose pseudoinverse of a symmetric rational matrix, exact.
    ///
    /// Uses a full-rank factorization M = B C (B = independent columns,
    /// C = coordinates): M+ = C^t (C C^t)^-1 (B^t B)^-1 B^t. The four
    /// Penrose identities then hold exactly in Q.
    pub fn moore_penrose(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::Other("pseudoinverse input must be square here".into()));
        }
        if !self.is_symmetric() {
            return Err(Error::Other("pseudoinverse input must be symmetric".into()));
        }
        let n = self.rows;
        let cols = self.column_basis();
        let r = cols.len();
        if r == 0 {
            return Ok(Self::zero(n, n));
        }
        // B: n x r
        let mut b = Self::zero(n, r);
        for (k, &c) in cols.iter().enumerate() {
            for i in 0..n {
                b[(i, k)] = self[(i, c)].clone();
            }
        }
        // C: r x n with M = B C; columns of M expressed in the basis B
        // solve B * C = M column by column (B has full column rank)
        let btb = b.transpose().mul(&b);
        let btb_inv = btb.inverse()?;
        let c = btb_inv.mul(&b.transpose()).mul(self); // (B^tB)^-1 B^t M
        let cct = c.mul(&c.transpose());
        let cct_inv = cct.inverse()?;
        let plus = c
            .transpose()
            .mul(&cct_inv)
            .mul(&btb_inv)
            .mul(&b.transpose());
        Ok(plus)
    }

    /// Is v in the column span?
    pub fn in_column_span(&self, v: &[Rat]) -> bool {
        let mut aug = Self::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = v[i].clone();
        }
        aug.rank() == self.rank()
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.entries[i * self.cols + j]
    }
}

/// Parse "a/b" or "a" into an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = n
        .parse()
        .map_err(|_| Error::InvalidConfig(format!("bad rational '{}'", s)))?;
    let den: BigInt = d
        .parse()
        .map_err(|_| Error::InvalidConfig(format!("bad rational '{}'", s)))?;
    if den.is_zero() {
        return Err(Error::InvalidConfig(format!("zero denominator in '{}'", s)));
    }
    Ok(Rat::new(num, den))
}

pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else if r.denom().is_negative() {
        format!("{}/{}", -r.numer(), -r.denom())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn penrose_ok(m: &RationalMatrix, plus: &RationalMatrix) -> bool {
        let mpm = m.mul(plus).mul(m);
        let pmp = plus.mul(m).mul(plus);
        let mp = m.mul(plus);
        let pm = plus.mul(m);
        mpm == *m && pmp == *plus && mp == mp.transpose() && pm == pm.transpose()
    }

    #[test]
    fn moore_penrose_trivial() {
        let id = RationalMatrix::identity(3);
        assert_eq!(id.moore_penrose().unwrap(), id);
        let z = RationalMatrix::zero(3, 3);
        assert_eq!(z.moore_penrose().unwrap(), z);
    }

    #[test]
    fn moore_penrose_rank_one() {
        // [[1,-1],[-1,1]]+ = (1/4)[[1,-1],[-1,1]]
        let m = RationalMatrix::from_i64(&[&[1, -1], &[-1, 1]]);
        let plus = m.moore_penrose().unwrap();
        let expect = m.scale(&rat(1, 4));
        assert_eq!(plus, expect);
        assert!(penrose_ok(&m, &plus));
    }

    #[test]
    fn moore_penrose_random_symmetric() {
        let mut seed = 7u64;
        let mut next = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 40) % 9) as i64 - 4
        };
        for n in 1..=4usize {
            for _ in 0..25 {
                let mut m = RationalMatrix::zero(n, n);
                for i in 0..n {
                    for j in 0..=i {
                        let v = rat_int(next());
                        m[(i, j)] = v.clone();
                        m[(j, i)] = v;
                    }
                }
                let plus = m.moore_penrose().unwrap();
                assert!(penrose_ok(&m, &plus), "penrose identities failed for {:?}", m);
            }
        }
    }

    #[test]
    fn solve_and_inverse() {
        let m = RationalMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let x = m.solve(&[rat_int(3), rat_int(2)]).unwrap();
        assert_eq!(x, vec![rat_int(1), rat_int(1)]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RationalMatrix::identity(2));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("5/4").unwrap(), rat(5, 4));
        assert_eq!(parse_rat(" -3 ").unwrap(), rat_int(-3));
        assert_eq!(format_rat(&rat(12, 7)), "12/7");
        assert_eq!(format_rat(&rat_int(2)), "2");
    }
}
