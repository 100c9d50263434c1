//! Adjunction of `p^s`-th roots.
//!
//! [`transvection_root`] adjoins a `p^s r`-th root to a single transvection
//! through a simple embedding. [`qth_root_fr`] and [`qth_root_lc`] adjoin
//! `q`-th roots to every element at once: the same embedding of `UT_n` into
//! `UT_{(n-1)q+1}` serves all inputs, and the root is an explicit product of
//! chain-shaped factors.

use crate::embeddings::{
    phi_closed_form, phi_fr, psi_closed_form, psi_lc, simple_embedding, GeneratorImages,
    IndexScheme,
};
use crate::error::{Error, Result};
use crate::field::{FpElement, Prime};
use crate::report::{VerificationReport, Witness};
use crate::unitriangular::UTMatrix;

/// A solution `x` of `x^q = image(a)` together with its factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootWitness {
    pub p: Prime,
    pub s: u32,
    pub q: u64,
    pub source: UTMatrix,
    pub embedding: GeneratorImages,
    pub target_image: UTMatrix,
    pub x: UTMatrix,
    /// Factors whose left-to-right product is `x`.
    pub factors: Vec<UTMatrix>,
}

/// Embeds `UT_n` into `UT_{n+q-1}` by inserting `q-1` positions right after
/// `i`, and returns the embedding with a root `x` of the embedded
/// `t_{i,j}(gamma)` of order `q r`:
/// `x = e + r^-1 gamma e_{i,i+1} + e_{i+1,i+2} + ... + e_{i+q-1, j+q-1}`.
pub fn transvection_root(
    n: usize,
    p: Prime,
    s: u32,
    r: u64,
    i: usize,
    j: usize,
    gamma: i64,
) -> Result<(GeneratorImages, UTMatrix)> {
    if n < 2 || !(1 <= i && i < j && j <= n) {
        return Err(Error::IndexOutOfRange { i, j, n });
    }
    if s == 0 {
        return Err(Error::InvalidParameter("s must be at least 1".into()));
    }
    if r.is_multiple_of(p.get() as u64) {
        return Err(Error::NotCoprime { p: p.get(), r });
    }
    let ix = IndexScheme::for_prime_power(2, p, s)?;
    let q = ix.q;
    let breakpoints: Vec<usize> = (1..=n)
        .map(|l| if l <= i { l } else { l + q - 1 })
        .collect();
    let embedding = simple_embedding(n, p, &breakpoints)?;

    let r_inv = FpElement::new((r % p.get() as u64) as i64, p).inv()?;
    let gamma1 = r_inv * FpElement::new(gamma, p);
    let mut x = UTMatrix::identity(embedding.target_m, p);
    // the chain i -> i+1 -> ... -> i+q-1 -> j'
    let chain: Vec<usize> = (i..i + q).chain(std::iter::once(j + q - 1)).collect();
    for (l, w) in chain.windows(2).enumerate() {
        let coeff = if l == 0 { gamma1.value() as i64 } else { 1 };
        x.set(w[0], w[1], coeff);
    }
    Ok((embedding, x))
}

/// The `q`-th root of `phi(a)` for the first-row embedding: `x = x_{n-1} ... x_1`
/// with
/// `x_k = e + sum_{i<=k} a_{i,k+1} e_{i, alpha(k,1)} + e_{alpha(k,1),alpha(k,2)} + ... + e_{alpha(k,q-1), k+1}`.
pub fn qth_root_fr(a: &UTMatrix, s: u32) -> Result<RootWitness> {
    let (n, p) = (a.n(), a.p());
    let ix = IndexScheme::for_prime_power(n, p, s)?;
    let mut factors = Vec::with_capacity(n - 1);
    for k in (1..n).rev() {
        let mut xk = UTMatrix::identity(ix.m, p);
        let head = ix.alpha(k, 1);
        for i in 1..=k {
            xk.set(ix.pos(i), head, a.value(i, k + 1) as i64);
        }
        chain_links(&ix, k, &mut xk);
        factors.push(xk);
    }
    let x = product(ix.m, p, &factors);
    Ok(RootWitness {
        p,
        s,
        q: ix.q as u64,
        source: a.clone(),
        embedding: phi_fr(n, p, s)?,
        target_image: phi_closed_form(n, p, s, a)?,
        x,
        factors,
    })
}

/// The `q`-th root of `psi(a)` for the last-column embedding:
/// `x = x_1 x_2 ... x_{n-1}` where `x_k` lives on row block `r = n-k`:
/// `x_k = e + e_{r, alpha(r,1)} + ... + e_{alpha(r,q-2),alpha(r,q-1)} + sum_{l>r} a_{r,l} e_{alpha(r,q-1), l}`.
pub fn qth_root_lc(a: &UTMatrix, s: u32) -> Result<RootWitness> {
    let (n, p) = (a.n(), a.p());
    let ix = IndexScheme::for_prime_power(n, p, s)?;
    let mut factors = Vec::with_capacity(n - 1);
    for r in (1..n).rev() {
        let mut xk = UTMatrix::identity(ix.m, p);
        let mut prev = ix.pos(r);
        for j in 1..ix.q {
            xk.set(prev, ix.alpha(r, j), 1);
            prev = ix.alpha(r, j);
        }
        for l in r + 1..=n {
            xk.set(prev, ix.pos(l), a.value(r, l) as i64);
        }
        factors.push(xk);
    }
    let x = product(ix.m, p, &factors);
    Ok(RootWitness {
        p,
        s,
        q: ix.q as u64,
        source: a.clone(),
        embedding: psi_lc(n, p, s)?,
        target_image: psi_closed_form(n, p, s, a)?,
        x,
        factors,
    })
}

/// `alpha(k,1) -> alpha(k,2) -> ... -> alpha(k,q-1) -> k+1`, all with coefficient 1.
fn chain_links(ix: &IndexScheme, k: usize, x: &mut UTMatrix) {
    let mut prev = ix.alpha(k, 1);
    for j in 2..ix.q {
        x.set(prev, ix.alpha(k, j), 1);
        prev = ix.alpha(k, j);
    }
    x.set(prev, ix.pos(k + 1), 1);
}

fn product(m: usize, p: Prime, factors: &[UTMatrix]) -> UTMatrix {
    factors
        .iter()
        .fold(UTMatrix::identity(m, p), |acc, f| &acc * f)
}

/// Recomputes `x^q` against the stored image and the product of the factors
/// against `x`.
pub fn verify_root(w: &RootWitness) -> VerificationReport {
    let mut report = VerificationReport::default();
    let power = w.x.pow(w.q);
    report.record(
        "power",
        (power != w.target_image).then(|| {
            Witness::mismatch(
                format!("x^{} differs from the embedded element", w.q),
                &power,
                &w.target_image,
            )
        }),
    );
    let prod = product(w.x.n(), w.p, &w.factors);
    report.record(
        "factors",
        (prod != w.x).then(|| Witness::mismatch("product of factors differs from x", &prod, &w.x)),
    );
    report
}
