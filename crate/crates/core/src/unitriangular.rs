//! The group `UT_n(F_p)` of upper unitriangular matrices.
//!
//! All public indices are 1-based. Storage is a dense row-major `n*n` array
//! of residues sharing one modulus.

use std::fmt;
use std::ops::Mul;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{FpElement, Prime};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UTMatrix {
    p: Prime,
    n: usize,
    entries: Vec<u32>,
}

/// The factor `t_{i,j}(gamma)` of a transvection decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransvectionTerm {
    pub i: usize,
    pub j: usize,
    pub gamma: FpElement,
}

impl TransvectionTerm {
    pub fn to_matrix(&self, n: usize) -> Result<UTMatrix> {
        UTMatrix::transvection(
            n,
            self.gamma.modulus(),
            self.i,
            self.j,
            self.gamma.value() as i64,
        )
    }
}

impl UTMatrix {
    pub fn identity(n: usize, p: Prime) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        UTMatrix { p, n, entries }
    }

    /// `t_{i,j}(gamma) = e + gamma * e_{i,j}`.
    pub fn transvection(n: usize, p: Prime, i: usize, j: usize, gamma: i64) -> Result<Self> {
        check_pair(n, i, j)?;
        let mut m = UTMatrix::identity(n, p);
        m.entries[(i - 1) * n + (j - 1)] = p.reduce(gamma);
        Ok(m)
    }

    /// Builds a matrix from full rows of residues, validating shape, range and
    /// unitriangularity. Errors name the offending 1-based (row, column).
    pub fn from_rows(p: Prime, rows: &[Vec<u32>]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: row.len(),
                });
            }
            for (c, &v) in row.iter().enumerate() {
                let ok = if r == c {
                    v == 1
                } else if r > c {
                    v == 0
                } else {
                    v < p.get()
                };
                if !ok {
                    return Err(Error::NotUnitriangular {
                        row: r + 1,
                        col: c + 1,
                    });
                }
                entries.push(v);
            }
        }
        Ok(UTMatrix { p, n, entries })
    }

    /// Identity plus the given strictly upper entries `(i, j, value)`.
    pub fn from_upper_entries(
        n: usize,
        p: Prime,
        upper: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> Result<Self> {
        let mut m = UTMatrix::identity(n, p);
        for (i, j, v) in upper {
            check_pair(n, i, j)?;
            m.set(i, j, v);
        }
        Ok(m)
    }

    pub fn random<R: Rng + ?Sized>(n: usize, p: Prime, rng: &mut R) -> Self {
        let mut m = UTMatrix::identity(n, p);
        for i in 0..n {
            for j in i + 1..n {
                m.entries[i * n + j] = rng.random_range(0..p.get());
            }
        }
        m
    }

    /// Every element of `UT_n(F_p)`, in lexicographic order of the strict
    /// upper triangle read row by row.
    pub fn enumerate(n: usize, p: Prime) -> impl Iterator<Item = UTMatrix> {
        let slots: Vec<usize> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| i * n + j))
            .collect();
        let total = (p.get() as u64)
            .checked_pow(slots.len() as u32)
            .expect("group too large to enumerate");
        (0..total).map(move |mut code| {
            let mut m = UTMatrix::identity(n, p);
            for &slot in slots.iter().rev() {
                m.entries[slot] = (code % p.get() as u64) as u32;
                code /= p.get() as u64;
            }
            m
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn p(&self) -> Prime {
        self.p
    }

    /// Raw residue at 1-based `(i, j)`.
    #[inline]
    pub fn value(&self, i: usize, j: usize) -> u32 {
        self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn get(&self, i: usize, j: usize) -> FpElement {
        FpElement::new(self.value(i, j) as i64, self.p)
    }

    /// Sets a strictly upper entry. Panics on `i >= j` since that would break
    /// unitriangularity.
    pub fn set(&mut self, i: usize, j: usize, value: i64) {
        assert!(
            1 <= i && i < j && j <= self.n,
            "({i}, {j}) is not a strictly upper position of a {0}x{0} matrix",
            self.n
        );
        self.entries[(i - 1) * self.n + (j - 1)] = self.p.reduce(value);
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.n).map(<[u32]>::to_vec).collect()
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.entries[i * self.n + j] == 0))
    }

    /// Nonzero strictly upper entries as `(i, j, value)`, 1-based.
    pub fn support(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        let n = self.n;
        (0..n).flat_map(move |i| {
            (i + 1..n).filter_map(move |j| {
                let v = self.entries[i * n + j];
                (v != 0).then_some((i + 1, j + 1, v))
            })
        })
    }

    /// First 1-based position where `self` and `other` differ.
    pub fn first_difference(&self, other: &UTMatrix) -> Option<(usize, usize)> {
        if self.n != other.n {
            return Some((1, 1));
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .position(|(a, b)| a != b)
            .map(|k| (k / self.n + 1, k % self.n + 1))
    }

    fn check_compatible(&self, other: &UTMatrix) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch {
                left: self.p.get(),
                right: other.p.get(),
            });
        }
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn checked_mul(&self, other: &UTMatrix) -> Result<UTMatrix> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &UTMatrix) -> UTMatrix {
        let n = self.n;
        let p = self.p.get() as u64;
        let mut out = vec![0u32; n * n];
        let mut acc = vec![0u64; n];
        for i in 0..n {
            acc[i..].iter_mut().for_each(|x| *x = 0);
            for k in i..n {
                let a = self.entries[i * n + k] as u64;
                if a == 0 {
                    continue;
                }
                let row = &other.entries[k * n + k..k * n + n];
                for (dst, &b) in acc[k..].iter_mut().zip(row) {
                    *dst += a * b as u64;
                }
            }
            for j in i..n {
                out[i * n + j] = (acc[j] % p) as u32;
            }
        }
        UTMatrix {
            p: self.p,
            n,
            entries: out,
        }
    }

    /// Inverse by back substitution, column by column.
    pub fn inv(&self) -> UTMatrix {
        let n = self.n;
        let p = self.p.get() as u64;
        let mut out = UTMatrix::identity(n, self.p);
        for j in 0..n {
            for i in (0..j).rev() {
                let mut s = 0u64;
                for k in i + 1..=j {
                    s += self.entries[i * n + k] as u64 * out.entries[k * n + j] as u64;
                }
                out.entries[i * n + j] = ((p - s % p) % p) as u32;
            }
        }
        out
    }

    /// `self^k` by square-and-multiply.
    pub fn pow(&self, mut k: u64) -> UTMatrix {
        let mut acc = UTMatrix::identity(self.n, self.p);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// `self^-1 * other^-1 * self * other`.
    pub fn commutator(&self, other: &UTMatrix) -> Result<UTMatrix> {
        self.check_compatible(other)?;
        Ok(self
            .inv()
            .mul_unchecked(&other.inv())
            .mul_unchecked(self)
            .mul_unchecked(other))
    }

    /// `other^-1 * self * other`.
    pub fn conjugate_by(&self, other: &UTMatrix) -> Result<UTMatrix> {
        self.check_compatible(other)?;
        Ok(other.inv().mul_unchecked(self).mul_unchecked(other))
    }

    /// Smallest `k >= 1` with `self^k = e`. Always a power of `p`, so it is
    /// found by repeated `p`-th powers.
    pub fn order(&self) -> u64 {
        let mut x = self.clone();
        let mut order = 1u64;
        while !x.is_identity() {
            x = x.pow(self.p.get() as u64);
            order *= self.p.get() as u64;
        }
        order
    }

    /// Factors `self` into transvections, band by band away from the
    /// diagonal and by increasing row within a band. The left-to-right
    /// product of the returned terms is `self`.
    pub fn decompose_transvections(&self) -> Vec<TransvectionTerm> {
        let n = self.n;
        let p = self.p.get() as u64;
        let mut cur = self.entries.clone();
        let mut terms = Vec::new();
        for d in 1..n {
            for i in 0..n - d {
                let j = i + d;
                let g = cur[i * n + j];
                if g == 0 {
                    continue;
                }
                terms.push(TransvectionTerm {
                    i: i + 1,
                    j: j + 1,
                    gamma: FpElement::new(g as i64, self.p),
                });
                // left-multiply by t_{i,j}(-g): row_i -= g * row_j
                let neg = p - g as u64;
                for c in j..n {
                    let v = cur[j * n + c] as u64;
                    if v != 0 {
                        cur[i * n + c] = ((cur[i * n + c] as u64 + neg * v) % p) as u32;
                    }
                }
            }
        }
        terms
    }

    /// Product of transvection terms, left to right.
    pub fn from_terms(n: usize, p: Prime, terms: &[TransvectionTerm]) -> Result<UTMatrix> {
        terms.iter().try_fold(UTMatrix::identity(n, p), |acc, t| {
            acc.checked_mul(&t.to_matrix(n)?)
        })
    }

    /// Splits `self = f * abar` with `f` in `FR_n` (only first row off the
    /// diagonal) and `abar` in `A_n` (first row trivial).
    pub fn fr_a_decompose(&self) -> (UTMatrix, UTMatrix) {
        let mut abar = self.clone();
        for j in 1..self.n {
            abar.entries[j] = 0;
        }
        let f = self.mul_unchecked(&abar.inv());
        (f, abar)
    }

    /// Splits `self = l * bbar` with `l` in `LC_n` (only last column off the
    /// diagonal) and `bbar` in `B_n` (last column trivial).
    pub fn lc_b_decompose(&self) -> (UTMatrix, UTMatrix) {
        let n = self.n;
        let mut bbar = self.clone();
        for i in 0..n.saturating_sub(1) {
            bbar.entries[i * n + n - 1] = 0;
        }
        let l = self.mul_unchecked(&bbar.inv());
        (l, bbar)
    }

    pub fn in_fr(&self) -> bool {
        self.support().all(|(i, _, _)| i == 1)
    }

    pub fn in_lc(&self) -> bool {
        self.support().all(|(_, j, _)| j == self.n)
    }

    pub fn in_a(&self) -> bool {
        self.support().all(|(i, _, _)| i > 1)
    }

    pub fn in_b(&self) -> bool {
        self.support().all(|(_, j, _)| j < self.n)
    }
}

impl Mul for &UTMatrix {
    type Output = UTMatrix;

    fn mul(self, rhs: &UTMatrix) -> UTMatrix {
        self.checked_mul(rhs)
            .expect("incompatible unitriangular matrices")
    }
}

impl Mul for UTMatrix {
    type Output = UTMatrix;

    fn mul(self, rhs: UTMatrix) -> UTMatrix {
        &self * &rhs
    }
}

impl fmt::Debug for UTMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "UTMatrix(p={}, n={})", self.p, self.n)?;
        for row in self.entries.chunks(self.n) {
            let line: Vec<String> = row.iter().map(u32::to_string).collect();
            writeln!(f, "  {}", line.join(" "))?;
        }
        Ok(())
    }
}

fn check_pair(n: usize, i: usize, j: usize) -> Result<()> {
    if 1 <= i && i < j && j <= n {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { i, j, n })
    }
}

pub fn ut_mul(a: &UTMatrix, b: &UTMatrix) -> Result<UTMatrix> {
    a.checked_mul(b)
}

pub fn ut_inv(a: &UTMatrix) -> UTMatrix {
    a.inv()
}

pub fn ut_pow(a: &UTMatrix, k: u64) -> UTMatrix {
    a.pow(k)
}

pub fn commutator(a: &UTMatrix, b: &UTMatrix) -> Result<UTMatrix> {
    a.commutator(b)
}

pub fn element_order(a: &UTMatrix) -> u64 {
    a.order()
}

/// `|UT_n(F_p)| = p^(n(n-1)/2)`.
pub fn group_order(n: usize, p: Prime) -> Option<u64> {
    (p.get() as u64).checked_pow((n * n.saturating_sub(1) / 2) as u32)
}
