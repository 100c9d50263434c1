//! The wreath product `UT_n(F_p) wr C_q` and its embedding into
//! `UT_{(n-1)q+1}(F_p)`.
//!
//! An element `a^k (h_1, ..., h_q)` is stored as a shift `k` and the base
//! tuple `(f(c^0), ..., f(c^{q-1}))`. Multiplication follows
//! `s f * s' f' = s s' f^{s'} f'` where the top generator acts on the base
//! tuple as a right cyclic shift.

mod embedding;
pub mod identities;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Prime;
use crate::unitriangular::UTMatrix;

pub use embedding::{
    associated_matrix, build_wreath_embedding, equiv_check, tau, verify_wreath_conditions, Tau,
    WreathEmbeddingData,
};
pub use identities::{check_matrix_identities, matrix_identities, ConjugateMatrices, FpMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WreathElement {
    pub shift: usize,
    pub base: Vec<UTMatrix>,
}

impl WreathElement {
    pub fn new(shift: usize, base: Vec<UTMatrix>) -> Result<Self> {
        let q = base.len();
        if q == 0 {
            return Err(Error::InvalidParameter("empty base tuple".into()));
        }
        if shift >= q {
            return Err(Error::InvalidParameter(format!(
                "shift {shift} not below q = {q}"
            )));
        }
        let (n, p) = (base[0].n(), base[0].p());
        for h in &base[1..] {
            if h.n() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: h.n(),
                });
            }
            if h.p() != p {
                return Err(Error::ModulusMismatch {
                    left: p.get(),
                    right: h.p().get(),
                });
            }
        }
        Ok(WreathElement { shift, base })
    }

    pub fn identity(n: usize, p: Prime, q: usize) -> Self {
        WreathElement {
            shift: 0,
            base: vec![UTMatrix::identity(n, p); q],
        }
    }

    /// The generator `a` of the top group.
    pub fn top_generator(n: usize, p: Prime, q: usize) -> Self {
        WreathElement {
            shift: 1 % q,
            base: vec![UTMatrix::identity(n, p); q],
        }
    }

    pub fn random<R: Rng + ?Sized>(n: usize, p: Prime, q: usize, rng: &mut R) -> Self {
        WreathElement {
            shift: rng.random_range(0..q),
            base: (0..q).map(|_| UTMatrix::random(n, p, rng)).collect(),
        }
    }

    /// All `q * |UT_n|^q` elements.
    pub fn enumerate(n: usize, p: Prime, q: usize) -> Vec<WreathElement> {
        let all: Vec<UTMatrix> = UTMatrix::enumerate(n, p).collect();
        let mut out = Vec::new();
        let mut idx = vec![0usize; q];
        loop {
            let base: Vec<UTMatrix> = idx.iter().map(|&k| all[k].clone()).collect();
            for shift in 0..q {
                out.push(WreathElement {
                    shift,
                    base: base.clone(),
                });
            }
            let mut pos = 0;
            loop {
                if pos == q {
                    return out;
                }
                idx[pos] += 1;
                if idx[pos] < all.len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }

    pub fn q(&self) -> usize {
        self.base.len()
    }

    pub fn n(&self) -> usize {
        self.base[0].n()
    }

    pub fn p(&self) -> Prime {
        self.base[0].p()
    }

    pub fn is_identity(&self) -> bool {
        self.shift == 0 && self.base.iter().all(UTMatrix::is_identity)
    }

    fn check_compatible(&self, other: &WreathElement) -> Result<()> {
        if self.q() != other.q() {
            return Err(Error::InvalidParameter(format!(
                "top group orders differ: {} vs {}",
                self.q(),
                other.q()
            )));
        }
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        if self.p() != other.p() {
            return Err(Error::ModulusMismatch {
                left: self.p().get(),
                right: other.p().get(),
            });
        }
        Ok(())
    }
}

/// `(k, f) * (k', f') = (k + k', shift_{k'}(f) * f')`.
pub fn wr_mul(x: &WreathElement, y: &WreathElement) -> Result<WreathElement> {
    x.check_compatible(y)?;
    let q = x.q();
    let base = (0..q)
        .map(|i| &x.base[(i + q - y.shift) % q] * &y.base[i])
        .collect();
    Ok(WreathElement {
        shift: (x.shift + y.shift) % q,
        base,
    })
}

pub fn wr_inv(x: &WreathElement) -> WreathElement {
    let q = x.q();
    let shift = (q - x.shift) % q;
    // (k, f)^-1 = (-k, g) with shift_{-k}(f) * g = e, so g_i = f_{i+k}^-1
    let base = (0..q).map(|i| x.base[(i + x.shift) % q].inv()).collect();
    WreathElement { shift, base }
}

/// The diagonal embedding `a -> (0, (a, ..., a))`.
pub fn rho_diagonal(a: &UTMatrix, q: usize) -> WreathElement {
    WreathElement {
        shift: 0,
        base: vec![a.clone(); q],
    }
}
