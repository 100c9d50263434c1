use rand::Rng;

use crate::embeddings::{
    phi_closed_form, phi_fr, theta_row_element, verify_embedding, EmbeddingKind, GeneratorImages,
    Homomorphism, IndexScheme,
};
use crate::error::{Error, Result};
use crate::field::Prime;
use crate::report::{VerificationReport, Witness};
use crate::unitriangular::UTMatrix;

use super::identities::FpMatrix;
use super::{rho_diagonal, WreathElement};

/// The data realizing `UT_n wr C_q` inside `UT_m`: the image `c` of the top
/// generator, the families `g[i][k] = phi_{i+1}(t_{k+1,k+2})` (0-based), and
/// the center generators `z[l]` of the conjugate copies.
#[derive(Debug, Clone)]
pub struct WreathEmbeddingData {
    pub n: usize,
    pub p: Prime,
    pub s: u32,
    pub q: usize,
    pub m: usize,
    pub index: IndexScheme,
    pub c: UTMatrix,
    pub g: Vec<Vec<UTMatrix>>,
    pub z: Vec<UTMatrix>,
}

impl WreathEmbeddingData {
    /// Generator family of the `i`-th copy (1-based), as a homomorphism datum.
    pub fn family(&self, i: usize) -> GeneratorImages {
        GeneratorImages {
            kind: EmbeddingKind::Custom,
            source_n: self.n,
            target_m: self.m,
            p: self.p,
            images: self.g[i - 1].clone(),
        }
    }

    fn homomorphisms(&self) -> Vec<Homomorphism> {
        (1..=self.q)
            .map(|i| Homomorphism::new(&self.family(i)))
            .collect()
    }
}

/// `c = c_1 ... c_{n-1}` with `c_i` the chain `alpha(i,1) -> ... -> alpha(i,q-1) -> i+1`.
fn top_image(ix: &IndexScheme, p: Prime) -> UTMatrix {
    (1..ix.n).fold(UTMatrix::identity(ix.m, p), |acc, i| {
        let mut ci = UTMatrix::identity(ix.m, p);
        let mut prev = ix.alpha(i, 1);
        for j in 2..ix.q {
            ci.set(prev, ix.alpha(i, j), 1);
            prev = ix.alpha(i, j);
        }
        ci.set(prev, ix.pos(i + 1), 1);
        &acc * &ci
    })
}

pub fn build_wreath_embedding(n: usize, p: Prime, s: u32) -> Result<WreathEmbeddingData> {
    let ix = IndexScheme::for_prime_power(n, p, s)?;
    let c = top_image(&ix, p);
    let c_inv = c.inv();
    let conj = |x: &UTMatrix| &(&c_inv * x) * &c;

    let first: Vec<UTMatrix> = (1..n)
        .map(|k| theta_row_element(&ix, p, k, k + 1))
        .collect();
    let mut g = vec![first];
    for i in 1..ix.q {
        let next = g[i - 1].iter().map(conj).collect();
        g.push(next);
    }

    let mut z = vec![theta_row_element(&ix, p, 1, n)];
    for l in 1..ix.q {
        let next = conj(&z[l - 1]);
        z.push(next);
    }

    Ok(WreathEmbeddingData {
        n,
        p,
        s,
        q: ix.q,
        m: ix.m,
        index: ix,
        c,
        g,
        z,
    })
}

fn check_element(data: &WreathEmbeddingData, w: &WreathElement) -> Result<()> {
    if w.q() != data.q {
        return Err(Error::InvalidParameter(format!(
            "wreath element has {} base entries, expected {}",
            w.q(),
            data.q
        )));
    }
    if w.n() != data.n {
        return Err(Error::DimensionMismatch {
            left: data.n,
            right: w.n(),
        });
    }
    if w.p() != data.p {
        return Err(Error::ModulusMismatch {
            left: data.p.get(),
            right: w.p().get(),
        });
    }
    Ok(())
}

/// Evaluates many elements with the per-copy homomorphisms built once.
pub struct Tau<'a> {
    data: &'a WreathEmbeddingData,
    homs: Vec<Homomorphism>,
}

impl<'a> Tau<'a> {
    pub fn new(data: &'a WreathEmbeddingData) -> Self {
        Tau {
            data,
            homs: data.homomorphisms(),
        }
    }

    /// `a^k (h_1, ..., h_q) -> c^k phi_1(h_1) ... phi_q(h_q)`.
    pub fn apply(&self, w: &WreathElement) -> Result<UTMatrix> {
        check_element(self.data, w)?;
        let mut out = self.data.c.pow(w.shift as u64);
        for (hom, h) in self.homs.iter().zip(&w.base) {
            out = &out * &hom.apply(h)?;
        }
        Ok(out)
    }
}

pub fn tau(data: &WreathEmbeddingData, w: &WreathElement) -> Result<UTMatrix> {
    Tau::new(data).apply(w)
}

/// The four conditions making `tau` an embedding:
/// 1. `g_{i+1,k} = c^-1 g_{i,k} c` (and `c` has order `q`);
/// 2. every family `(g_{i,1}, ..., g_{i,n-1})` spans a copy of `UT_n`;
/// 3. distinct copies commute element-wise;
/// 4. the centers of the copies, generated by the images of `t_{1,n}`, meet
///    pairwise trivially and agree with the conjugates `z_l` of `z_1`.
pub fn verify_wreath_conditions(data: &WreathEmbeddingData) -> VerificationReport {
    let (n, q, p) = (data.n, data.q, data.p.get() as u64);
    let mut report = VerificationReport::default();

    let c_inv = data.c.inv();
    let conj = |x: &UTMatrix| &(&c_inv * x) * &data.c;
    let cond1 = (|| {
        let ord = data.c.order();
        if ord != q as u64 {
            return Some(Witness::new(format!("c has order {ord}, expected {q}")));
        }
        for i in 1..q {
            for k in 1..n {
                let want = conj(&data.g[i - 1][k - 1]);
                let got = &data.g[i][k - 1];
                if got != &want {
                    return Some(Witness::mismatch(
                        format!("g_{{{},{k}}} != c^-1 g_{{{i},{k}}} c", i + 1),
                        got,
                        &want,
                    ));
                }
            }
        }
        None
    })();
    report.record("conjugation_chain", cond1);

    let cond2 = (1..=q).find_map(|i| {
        let r = verify_embedding(&data.family(i));
        r.first_failure().map(|f| {
            let inner = f.witness.clone().unwrap_or_else(|| Witness::new(""));
            Witness {
                description: format!("copy G_{i} fails {}: {}", f.name, inner.description),
                position: inner.position,
            }
        })
    });
    report.record("copies_isomorphic", cond2);

    let cond3 = (|| {
        for i in 1..=q {
            for l in i + 1..=q {
                for k in 1..n {
                    for j in 1..n {
                        let c = data.g[i - 1][k - 1]
                            .commutator(&data.g[l - 1][j - 1])
                            .unwrap();
                        if !c.is_identity() {
                            let e = UTMatrix::identity(data.m, data.p);
                            return Some(Witness::mismatch(
                                format!("[g_{{{i},{k}}}, g_{{{l},{j}}}] != 1"),
                                &c,
                                &e,
                            ));
                        }
                    }
                }
            }
        }
        None
    })();
    report.record("copies_commute", cond3);

    let cond4 = (|| {
        let centers: Vec<UTMatrix> = data
            .homomorphisms()
            .iter()
            .map(|h| h.transvection_image(1, n).clone())
            .collect();
        for (l, zl) in centers.iter().enumerate() {
            if zl != &data.z[l] {
                return Some(Witness::mismatch(
                    format!("center generator of G_{} differs from z_{}", l + 1, l + 1),
                    zl,
                    &data.z[l],
                ));
            }
            if zl.is_identity() {
                return Some(Witness::new(format!(
                    "center generator of G_{} is trivial",
                    l + 1
                )));
            }
        }
        for l in 0..q {
            let mut power = centers[l].clone();
            for t in 1..p {
                for (l2, other) in centers.iter().enumerate() {
                    if l2 != l && &power == other {
                        return Some(Witness::new(format!(
                            "z_{}^{t} = z_{}: centers of G_{} and G_{} intersect",
                            l + 1,
                            l2 + 1,
                            l + 1,
                            l2 + 1
                        )));
                    }
                }
                power = &power * &centers[l];
            }
        }
        None
    })();
    report.record("centers_disjoint", cond4);
    report
}

/// The block `M(h)` of an element supported on `I_k x I_{k+1}`, with rows
/// indexed by `I_k` and columns by `I_{k+1}`. Returns `None` if `h` has
/// support outside that block.
pub fn associated_matrix(ix: &IndexScheme, h: &UTMatrix, k: usize) -> Option<FpMatrix> {
    let rows = ix.block(k);
    let cols = ix.block(k + 1);
    let mut out = FpMatrix::zero(h.p(), rows.len(), cols.len());
    for (i, j, v) in h.support() {
        let r = rows.iter().position(|&x| x == i)?;
        let c = cols.iter().position(|&x| x == j)?;
        out.set(r, c, v as i64);
    }
    Some(out)
}

/// Checks `tau(rho(t_{k,k+1})) = phi(t_{k,k+1})` for every generator and
/// `tau(rho(a)) = phi(a)` on `samples` random elements.
pub fn equiv_check<R: Rng + ?Sized>(
    n: usize,
    p: Prime,
    s: u32,
    samples: usize,
    rng: &mut R,
) -> Result<VerificationReport> {
    let data = build_wreath_embedding(n, p, s)?;
    let tau = Tau::new(&data);
    let phi = phi_fr(n, p, s)?;
    let mut report = VerificationReport::default();

    let gens = (1..n).find_map(|k| {
        let t = UTMatrix::transvection(n, p, k, k + 1, 1).expect("valid pair");
        let lhs = tau.apply(&rho_diagonal(&t, data.q)).expect("compatible");
        (&lhs != phi.image(k)).then(|| {
            Witness::mismatch(
                format!("tau(rho(t_{{{k},{}}})) != phi(t_{{{k},{}}})", k + 1, k + 1),
                &lhs,
                phi.image(k),
            )
        })
    });
    report.record("generators", gens);

    let mut random = None;
    for _ in 0..samples {
        let a = UTMatrix::random(n, p, rng);
        let lhs = tau.apply(&rho_diagonal(&a, data.q))?;
        let rhs = phi_closed_form(n, p, s, &a)?;
        if lhs != rhs {
            random = Some(Witness::mismatch(
                format!("tau(rho(a)) != phi(a) for a = {:?}", a.rows()),
                &lhs,
                &rhs,
            ));
            break;
        }
    }
    report.record("random_elements", random);
    Ok(report)
}
