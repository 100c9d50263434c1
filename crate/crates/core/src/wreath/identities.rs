//! The `q x q` matrix identities behind the wreath embedding: the Jordan
//! block `A`, the matrix `B` whose last row is the alternating row
//! `v = (1, -1, ..., 1)`, and its conjugates `M_i = A^-i B A^i`.

use std::fmt;

use crate::embeddings::alternating_row;
use crate::error::Result;
use crate::field::Prime;
use crate::report::{VerificationReport, Witness};

/// A dense rectangular matrix over `F_p`, 0-based internally.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: Prime,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zero(p: Prime, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: Prime, n: usize) -> Self {
        let mut m = FpMatrix::zero(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(p: Prime, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = FpMatrix::zero(p, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.data[i * c + j] = p.reduce(v);
            }
        }
        m
    }

    pub fn row_vector(p: Prime, values: &[u32]) -> Self {
        FpMatrix::from_rows(p, &[values.iter().map(|&v| v as i64).collect()])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    /// 0-based entry.
    pub fn at(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = self.p.reduce(v);
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.data
            .chunks(self.cols.max(1))
            .map(<[u32]>::to_vec)
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        assert_eq!(self.p, other.p, "modulus mismatch");
        let p = self.p.get() as u64;
        let mut out = FpMatrix::zero(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = ((out.data[idx] as u64 + a * other.at(k, j) as u64) % p) as u32;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
        let p = self.p.get();
        FpMatrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| (a + b) % p)
                .collect(),
        }
    }

    pub fn pow(&self, mut k: u64) -> FpMatrix {
        assert_eq!(self.rows, self.cols);
        let mut acc = FpMatrix::identity(self.p, self.rows);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.at(i, j)).collect()
    }

    /// First column `j >= 1` that is not a scalar multiple of column 0.
    pub fn column_not_multiple_of_first(&self) -> Option<usize> {
        let p = self.p.get() as u64;
        let first = self.column(0);
        let pivot = first.iter().position(|&v| v != 0);
        (1..self.cols).find(|&j| {
            let col = self.column(j);
            match pivot {
                None => col.iter().any(|&v| v != 0),
                Some(r) => {
                    let inv = crate::field::FpElement::new(first[r] as i64, self.p)
                        .inv()
                        .expect("pivot is nonzero")
                        .value() as u64;
                    let lambda = col[r] as u64 * inv % p;
                    col.iter()
                        .zip(&first)
                        .any(|(&c, &f)| c as u64 != lambda * f as u64 % p)
                }
            }
        })
    }

    /// First 0-based position where two equally shaped matrices differ.
    pub fn first_difference(&self, other: &FpMatrix) -> Option<(usize, usize)> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Some((0, 0));
        }
        self.data
            .iter()
            .zip(&other.data)
            .position(|(a, b)| a != b)
            .map(|k| (k / self.cols, k % self.cols))
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix(p={}, {}x{})", self.p, self.rows, self.cols)?;
        for row in self.to_rows() {
            let line: Vec<String> = row.iter().map(u32::to_string).collect();
            writeln!(f, "  {}", line.join(" "))?;
        }
        Ok(())
    }
}

/// The upper bidiagonal all-ones `q x q` matrix.
pub fn jordan_block(p: Prime, q: usize) -> FpMatrix {
    let mut a = FpMatrix::identity(p, q);
    for i in 0..q.saturating_sub(1) {
        a.set(i, i + 1, 1);
    }
    a
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugateMatrices {
    pub p: Prime,
    pub q: usize,
    pub a: FpMatrix,
    pub b: FpMatrix,
    /// `m[i] = A^-i B A^i` for `i = 0..q`.
    pub m: Vec<FpMatrix>,
    pub v: FpMatrix,
}

impl ConjugateMatrices {
    pub fn new(p: Prime, s: u32) -> Result<Self> {
        let q = crate::embeddings::IndexScheme::for_prime_power(2, p, s)?.q;
        let v = alternating_row(q, p);
        let mut b = FpMatrix::zero(p, q, q);
        for (j, &x) in v.iter().enumerate() {
            b.set(q - 1, j, x as i64);
        }
        Ok(ConjugateMatrices::with_b(p, q, b))
    }

    /// Rebuilds the conjugates from an arbitrary `B`.
    pub fn with_b(p: Prime, q: usize, b: FpMatrix) -> Self {
        let a = jordan_block(p, q);
        // A^q = E in characteristic p, so A^-1 = A^(q-1).
        let a_inv = a.pow(q as u64 - 1);
        let mut m = Vec::with_capacity(q);
        let mut cur = b.clone();
        for _ in 0..q {
            m.push(cur.clone());
            cur = a_inv.mul(&cur).mul(&a);
        }
        let v = FpMatrix::row_vector(p, &alternating_row(q, p));
        ConjugateMatrices { p, q, a, b, m, v }
    }

    pub fn a_inv(&self) -> FpMatrix {
        self.a.pow(self.q as u64 - 1)
    }
}

/// Evaluates the three identities and the column structure on the stored
/// matrices:
/// 1. `v M_i = 0` for `i = 1..q-1`;
/// 2. `sum_{i<q} v A^i = (0, ..., 0, 1)`;
/// 3. `sum_{i<q} M_i = E`;
///
/// plus "every column of each `M_i` is a multiple of its first column".
pub fn check_matrix_identities(lm: &ConjugateMatrices) -> VerificationReport {
    let (p, q) = (lm.p, lm.q);
    let mut report = VerificationReport::default();

    let annihilated = (1..q).find_map(|i| {
        let prod = lm.v.mul(&lm.m[i]);
        prod.first_difference(&FpMatrix::zero(p, 1, q))
            .map(|(_, c)| {
                Witness::new(format!(
                    "v M_{i} has nonzero entry {} at column {}",
                    prod.at(0, c),
                    c + 1
                ))
            })
    });
    report.record("v_times_m_i_vanishes", annihilated);

    let mut sum = FpMatrix::zero(p, 1, q);
    let mut term = lm.v.clone();
    for _ in 0..q {
        sum = sum.add(&term);
        term = term.mul(&lm.a);
    }
    let mut last = FpMatrix::zero(p, 1, q);
    last.set(0, q - 1, 1);
    report.record(
        "sum_v_a_i_is_last_unit",
        sum.first_difference(&last).map(|(_, c)| {
            Witness::new(format!(
                "sum of v A^i is {} at column {}",
                sum.at(0, c),
                c + 1
            ))
        }),
    );

    let total =
        lm.m.iter()
            .fold(FpMatrix::zero(p, q, q), |acc, x| acc.add(x));
    report.record(
        "sum_m_i_is_identity",
        total
            .first_difference(&FpMatrix::identity(p, q))
            .map(|(r, c)| {
                Witness::new(format!(
                    "sum of M_i has {} at ({}, {})",
                    total.at(r, c),
                    r + 1,
                    c + 1
                ))
            }),
    );

    let structure = lm.m.iter().enumerate().find_map(|(i, mi)| {
        mi.column_not_multiple_of_first().map(|j| {
            Witness::new(format!(
                "column {} of M_{i} is not a multiple of column 1",
                j + 1
            ))
        })
    });
    report.record("columns_are_multiples", structure);
    report
}

/// Builds the matrices for `q = p^s` and checks the identities.
pub fn matrix_identities(p: Prime, s: u32) -> Result<(ConjugateMatrices, VerificationReport)> {
    let lm = ConjugateMatrices::new(p, s)?;
    let report = check_matrix_identities(&lm);
    Ok((lm, report))
}
