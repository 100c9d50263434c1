//! Embeddings `UT_n(F_p) -> UT_m(F_p)` given by images of the adjacent
//! transvections `t_{i,i+1}`, their homomorphic extension, and a verifier.
//!
//! The target dimension for the root-adjoining embeddings is
//! `m = (n-1)q + 1` with `q = p^s`. Between consecutive source positions
//! `i` and `i+1` the target interleaves `q-1` extra positions
//! `alpha(i,1) < ... < alpha(i,q-1)`; [`IndexScheme`] compiles those labels to
//! integer rows/columns.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Prime;
use crate::report::{VerificationReport, Witness};
use crate::unitriangular::UTMatrix;

/// A row/column label of the target matrix: a source index `i` or an
/// interleaved position `alpha(i, j)` with `1 <= j < q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Source(usize),
    Alpha(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexScheme {
    pub n: usize,
    pub q: usize,
    pub m: usize,
}

impl IndexScheme {
    pub fn new(n: usize, q: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!(
                "n = {n} must be at least 2"
            )));
        }
        if q < 2 {
            return Err(Error::InvalidParameter(format!(
                "q = {q} must be at least 2"
            )));
        }
        Ok(IndexScheme {
            n,
            q,
            m: (n - 1) * q + 1,
        })
    }

    pub fn for_prime_power(n: usize, p: Prime, s: u32) -> Result<Self> {
        if s == 0 {
            return Err(Error::InvalidParameter("s must be at least 1".into()));
        }
        let q = (p.get() as u64)
            .checked_pow(s)
            .filter(|&q| q <= 1 << 20)
            .ok_or_else(|| Error::InvalidParameter(format!("{p}^{s} is too large")))?;
        IndexScheme::new(n, q as usize)
    }

    /// Position of source index `i`: `(i-1)q + 1`.
    #[inline]
    pub fn pos(&self, i: usize) -> usize {
        debug_assert!(1 <= i && i <= self.n);
        (i - 1) * self.q + 1
    }

    /// Position of `alpha(i, j)`: `(i-1)q + 1 + j`.
    #[inline]
    pub fn alpha(&self, i: usize, j: usize) -> usize {
        debug_assert!(1 <= i && i < self.n && 1 <= j && j < self.q);
        (i - 1) * self.q + 1 + j
    }

    pub fn position(&self, label: Label) -> usize {
        match label {
            Label::Source(i) => self.pos(i),
            Label::Alpha(i, j) => self.alpha(i, j),
        }
    }

    /// Inverse of [`IndexScheme::position`].
    pub fn label(&self, position: usize) -> Label {
        let i = (position - 1) / self.q + 1;
        let j = (position - 1) % self.q;
        if j == 0 {
            Label::Source(i)
        } else {
            Label::Alpha(i, j)
        }
    }

    /// All labels in increasing position order.
    pub fn labels(&self) -> Vec<Label> {
        (1..=self.m).map(|k| self.label(k)).collect()
    }

    /// The ordered block `I_1 = {1}`,
    /// `I_k = {alpha(k-1,1), ..., alpha(k-1,q-1), k}` as positions.
    pub fn block(&self, k: usize) -> Vec<usize> {
        if k == 1 {
            vec![1]
        } else {
            let mut v: Vec<usize> = (1..self.q).map(|j| self.alpha(k - 1, j)).collect();
            v.push(self.pos(k));
            v
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EmbeddingKind {
    Simple,
    PhiFr,
    PsiLc,
    Theta,
    Custom,
}

impl EmbeddingKind {
    pub fn name(self) -> &'static str {
        match self {
            EmbeddingKind::Simple => "simple",
            EmbeddingKind::PhiFr => "phi_fr",
            EmbeddingKind::PsiLc => "psi_lc",
            EmbeddingKind::Theta => "theta",
            EmbeddingKind::Custom => "custom",
        }
    }
}

/// A homomorphism `UT_n -> UT_m` specified by the images of `t_{i,i+1}`;
/// `images[i-1]` is the image of `t_{i,i+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorImages {
    pub kind: EmbeddingKind,
    pub source_n: usize,
    pub target_m: usize,
    pub p: Prime,
    pub images: Vec<UTMatrix>,
}

impl GeneratorImages {
    pub fn custom(source_n: usize, images: Vec<UTMatrix>) -> Result<Self> {
        if source_n < 2 || images.len() != source_n - 1 {
            return Err(Error::InvalidParameter(format!(
                "expected {} generator images, got {}",
                source_n.saturating_sub(1),
                images.len()
            )));
        }
        let (p, m) = (images[0].p(), images[0].n());
        for g in &images[1..] {
            if g.p() != p {
                return Err(Error::ModulusMismatch {
                    left: p.get(),
                    right: g.p().get(),
                });
            }
            if g.n() != m {
                return Err(Error::DimensionMismatch {
                    left: m,
                    right: g.n(),
                });
            }
        }
        Ok(GeneratorImages {
            kind: EmbeddingKind::Custom,
            source_n,
            target_m: m,
            p,
            images,
        })
    }

    pub fn image(&self, i: usize) -> &UTMatrix {
        &self.images[i - 1]
    }
}

fn transvection(m: usize, p: Prime, i: usize, j: usize, gamma: i64) -> UTMatrix {
    UTMatrix::transvection(m, p, i, j, gamma).expect("index scheme produced an invalid pair")
}

/// `t_{i,i+1} -> t'_{k_i, k_{i+1}}` for breakpoints `1 = k_1 < ... < k_n = m`.
pub fn simple_embedding(n: usize, p: Prime, breakpoints: &[usize]) -> Result<GeneratorImages> {
    if n < 2 || breakpoints.len() != n {
        return Err(Error::InvalidBreakpoints(format!(
            "expected {n} breakpoints, got {}",
            breakpoints.len()
        )));
    }
    if breakpoints[0] != 1 {
        return Err(Error::InvalidBreakpoints(
            "first breakpoint must be 1".into(),
        ));
    }
    if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidBreakpoints(
            "breakpoints must be strictly increasing".into(),
        ));
    }
    let m = breakpoints[n - 1];
    let images = breakpoints
        .windows(2)
        .map(|w| transvection(m, p, w[0], w[1], 1))
        .collect();
    Ok(GeneratorImages {
        kind: EmbeddingKind::Simple,
        source_n: n,
        target_m: m,
        p,
        images,
    })
}

/// The first-row embedding: `t_{1,2} -> t'_{1,2}` and, for `k >= 2`,
/// `t_{k,k+1} -> t'_{k,k+1} * prod_j t'_{alpha(k-1,j), alpha(k,j)}`.
pub fn phi_fr(n: usize, p: Prime, s: u32) -> Result<GeneratorImages> {
    let ix = IndexScheme::for_prime_power(n, p, s)?;
    let images = (1..n)
        .map(|k| {
            let mut g = transvection(ix.m, p, ix.pos(k), ix.pos(k + 1), 1);
            if k >= 2 {
                for j in 1..ix.q {
                    g.set(ix.alpha(k - 1, j), ix.alpha(k, j), 1);
                }
            }
            g
        })
        .collect();
    Ok(GeneratorImages {
        kind: EmbeddingKind::PhiFr,
        source_n: n,
        target_m: ix.m,
        p,
        images,
    })
}

/// The last-column embedding: `t_{n-1,n} -> t'_{n-1,n}` and, for `k <= n-2`,
/// `t_{k,k+1} -> t'_{k,k+1} * prod_j t'_{alpha(k,j), alpha(k+1,j)}`.
pub fn psi_lc(n: usize, p: Prime, s: u32) -> Result<GeneratorImages> {
    let ix = IndexScheme::for_prime_power(n, p, s)?;
    let images = (1..n)
        .map(|k| {
            let mut g = transvection(ix.m, p, ix.pos(k), ix.pos(k + 1), 1);
            if k + 1 < n {
                for j in 1..ix.q {
                    g.set(ix.alpha(k, j), ix.alpha(k + 1, j), 1);
                }
            }
            g
        })
        .collect();
    Ok(GeneratorImages {
        kind: EmbeddingKind::PsiLc,
        source_n: n,
        target_m: ix.m,
        p,
        images,
    })
}

/// Alternating signs `(1, -1, 1, ..., )` of length `q`, reduced mod `p`.
pub fn alternating_row(q: usize, p: Prime) -> Vec<u32> {
    (0..q)
        .map(|l| if l % 2 == 0 { 1 } else { p.reduce(-1) })
        .collect()
}

/// `t_{i,i+1} -> t'_{i,alpha(i,1)} t'_{i,alpha(i,2)}^-1 ... t'_{i,i+1}`, i.e.
/// row `i` of the image carries the alternating row over block `I_{i+1}`.
pub fn theta(n: usize, p: Prime, s: u32) -> Result<GeneratorImages> {
    let ix = IndexScheme::for_prime_power(n, p, s)?;
    let images = (1..n)
        .map(|i| theta_row_element(&ix, p, i, i + 1))
        .collect();
    Ok(GeneratorImages {
        kind: EmbeddingKind::Theta,
        source_n: n,
        target_m: ix.m,
        p,
        images,
    })
}

/// `e + sum_l v_l e_{row, I_block[l]}` for the alternating row `v`.
pub(crate) fn theta_row_element(ix: &IndexScheme, p: Prime, row: usize, block: usize) -> UTMatrix {
    let signs = alternating_row(ix.q, p);
    let mut g = UTMatrix::identity(ix.m, p);
    for (col, v) in ix.block(block).into_iter().zip(signs) {
        g.set(ix.pos(row), col, v as i64);
    }
    g
}

/// Images of every `t_{i,j}` induced from the generator images through
/// `image(t_{i,j}) = [image(t_{i,j-1}), image(t_{j-1,j})]`.
#[derive(Debug, Clone)]
pub struct Homomorphism {
    source_n: usize,
    source_p: Prime,
    target_m: usize,
    table: Vec<Option<UTMatrix>>,
}

impl Homomorphism {
    pub fn new(images: &GeneratorImages) -> Self {
        let n = images.source_n;
        let mut table = vec![None; n * n];
        for i in 1..n {
            table[(i - 1) * n + i] = Some(images.image(i).clone());
        }
        for d in 2..n {
            for i in 1..=n - d {
                let j = i + d;
                let left = table[(i - 1) * n + (j - 2)].as_ref().unwrap();
                let right = images.image(j - 1);
                let c = left
                    .commutator(right)
                    .expect("generator images are compatible");
                table[(i - 1) * n + (j - 1)] = Some(c);
            }
        }
        Homomorphism {
            source_n: n,
            source_p: images.p,
            target_m: images.target_m,
            table,
        }
    }

    pub fn source_n(&self) -> usize {
        self.source_n
    }

    pub fn target_m(&self) -> usize {
        self.target_m
    }

    /// Induced image of `t_{i,j}`.
    pub fn transvection_image(&self, i: usize, j: usize) -> &UTMatrix {
        self.table[(i - 1) * self.source_n + (j - 1)]
            .as_ref()
            .expect("i < j required")
    }

    pub fn apply(&self, a: &UTMatrix) -> Result<UTMatrix> {
        if a.n() != self.source_n {
            return Err(Error::DimensionMismatch {
                left: self.source_n,
                right: a.n(),
            });
        }
        if a.p() != self.source_p {
            return Err(Error::ModulusMismatch {
                left: self.source_p.get(),
                right: a.p().get(),
            });
        }
        let mut out = UTMatrix::identity(self.target_m, self.source_p);
        for term in a.decompose_transvections() {
            let g = self.transvection_image(term.i, term.j);
            out = &out * &g.pow(term.gamma.value() as u64);
        }
        Ok(out)
    }
}

/// The unique homomorphic extension of `images` evaluated at `a`.
pub fn extend_hom(images: &GeneratorImages, a: &UTMatrix) -> Result<UTMatrix> {
    Homomorphism::new(images).apply(a)
}

fn check_source(n: usize, p: Prime, a: &UTMatrix) -> Result<()> {
    if a.n() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: a.n(),
        });
    }
    if a.p() != p {
        return Err(Error::ModulusMismatch {
            left: p.get(),
            right: a.p().get(),
        });
    }
    Ok(())
}

/// Direct matrix formula for the first-row embedding: row 1 of `a` lands in
/// row 1 at columns `pos(j)`, and the lower block `abar` of `a = f * abar` is
/// written once at the source positions and once per interleaved layer `j`.
pub fn phi_closed_form(n: usize, p: Prime, s: u32, a: &UTMatrix) -> Result<UTMatrix> {
    let ix = IndexScheme::for_prime_power(n, p, s)?;
    check_source(n, p, a)?;
    let (_, abar) = a.fr_a_decompose();
    let mut out = UTMatrix::identity(ix.m, p);
    for l in 2..=n {
        out.set(1, ix.pos(l), a.value(1, l) as i64);
    }
    for (k, l, v) in abar.support() {
        out.set(ix.pos(k), ix.pos(l), v as i64);
        for j in 1..ix.q {
            out.set(ix.alpha(k - 1, j), ix.alpha(l - 1, j), v as i64);
        }
    }
    Ok(out)
}

/// Mirror of [`phi_closed_form`]: the last column of `a` lands in column `m`
/// at rows `pos(i)`, and the block `bbar` of `a = l * bbar` is replicated.
pub fn psi_closed_form(n: usize, p: Prime, s: u32, a: &UTMatrix) -> Result<UTMatrix> {
    let ix = IndexScheme::for_prime_power(n, p, s)?;
    check_source(n, p, a)?;
    let (_, bbar) = a.lc_b_decompose();
    let mut out = UTMatrix::identity(ix.m, p);
    for i in 1..n {
        out.set(ix.pos(i), ix.m, a.value(i, n) as i64);
    }
    for (k, l, v) in bbar.support() {
        out.set(ix.pos(k), ix.pos(l), v as i64);
        for j in 1..ix.q {
            out.set(ix.alpha(k, j), ix.alpha(l, j), v as i64);
        }
    }
    Ok(out)
}

/// Checks the defining relations on all induced transvection images,
/// injectivity through the image of the central `t_{1,n}`, and that every
/// generator image has order exactly `p`.
///
/// A homomorphism out of a finite p-group with nontrivial kernel kills part of
/// the center; the center of `UT_n(F_p)` is the order-`p` group generated by
/// `t_{1,n}`, so injectivity reduces to that one image being nontrivial.
pub fn verify_embedding(images: &GeneratorImages) -> VerificationReport {
    let n = images.source_n;
    let p = images.p.get() as u64;
    let hom = Homomorphism::new(images);
    let img = |i, j| hom.transvection_image(i, j);
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .collect();

    let mut report = VerificationReport::default();

    let relations = (|| {
        for &(i, j) in &pairs {
            for k in j + 1..=n {
                let lhs = img(i, j).commutator(img(j, k)).unwrap();
                if &lhs != img(i, k) {
                    return Some(Witness::mismatch(
                        format!("[t_{{{i},{j}}}, t_{{{j},{k}}}] != t_{{{i},{k}}} under the map"),
                        &lhs,
                        img(i, k),
                    ));
                }
            }
        }
        for &(i, j) in &pairs {
            for &(k, l) in &pairs {
                if j == k || i == l {
                    continue;
                }
                let c = img(i, j).commutator(img(k, l)).unwrap();
                if !c.is_identity() {
                    let e = UTMatrix::identity(c.n(), c.p());
                    return Some(Witness::mismatch(
                        format!("[t_{{{i},{j}}}, t_{{{k},{l}}}] != 1 under the map"),
                        &c,
                        &e,
                    ));
                }
            }
        }
        for &(i, j) in &pairs {
            let x = img(i, j).pow(p);
            if !x.is_identity() {
                let e = UTMatrix::identity(x.n(), x.p());
                return Some(Witness::mismatch(
                    format!("t_{{{i},{j}}}^{p} != 1 under the map"),
                    &x,
                    &e,
                ));
            }
        }
        None
    })();
    report.record("relations", relations);

    let central = img(1, n);
    report.record(
        "injective",
        central.is_identity().then(|| {
            Witness::new(format!(
                "image of the central transvection t_{{1,{n}}} is the identity"
            ))
        }),
    );

    let orders = (1..n).find_map(|i| {
        let g = images.image(i);
        let ord = g.order();
        (ord != p).then(|| {
            Witness::new(format!(
                "image of t_{{{i},{}}} has order {ord}, expected {p}",
                i + 1
            ))
        })
    });
    report.record("orders", orders);
    report
}
