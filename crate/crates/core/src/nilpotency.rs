//! Lower central series, the `K_p`-series and the class formula for wreath
//! products with a cyclic top group.
//!
//! Groups are handled by brute force: a subgroup is an explicit set of
//! elements, grown from generators by right multiplication.

use std::collections::HashSet;
use std::fmt;
use std::hash::Hash;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Prime;
use crate::unitriangular::UTMatrix;
use crate::wreath::{wr_inv, wr_mul, WreathElement};

pub const DEFAULT_SIZE_BOUND: usize = 1_000_000;
pub const SIZE_BOUND_ENV: &str = "UTROOTS_SIZE_BOUND";

/// The closure bound from the environment, or [`DEFAULT_SIZE_BOUND`].
pub fn size_bound_from_env() -> usize {
    std::env::var(SIZE_BOUND_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_SIZE_BOUND)
}

/// A finite group given by its operations and a generating set.
pub trait Group {
    type Elem: Clone + Eq + Hash;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn generators(&self) -> Vec<Self::Elem>;

    fn commutator(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(&self.inv(&ba), &ab)
    }

    fn pow(&self, a: &Self::Elem, mut k: u64) -> Self::Elem {
        let mut acc = self.identity();
        let mut base = a.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    fn order_of(&self, a: &Self::Elem) -> u64 {
        let e = self.identity();
        let mut x = a.clone();
        let mut k = 1;
        while x != e {
            x = self.mul(&x, a);
            k += 1;
        }
        k
    }
}

#[derive(Debug, Clone, Copy)]
pub struct UtGroup {
    pub n: usize,
    pub p: Prime,
}

impl Group for UtGroup {
    type Elem = UTMatrix;

    fn identity(&self) -> UTMatrix {
        UTMatrix::identity(self.n, self.p)
    }

    fn mul(&self, a: &UTMatrix, b: &UTMatrix) -> UTMatrix {
        a * b
    }

    fn inv(&self, a: &UTMatrix) -> UTMatrix {
        a.inv()
    }

    fn generators(&self) -> Vec<UTMatrix> {
        (1..self.n)
            .map(|k| UTMatrix::transvection(self.n, self.p, k, k + 1, 1).expect("valid pair"))
            .collect()
    }
}

/// `UT_n(F_p) wr C_q`, generated by the top generator and the generators of
/// the first base copy.
#[derive(Debug, Clone, Copy)]
pub struct WreathGroup {
    pub n: usize,
    pub p: Prime,
    pub q: usize,
}

impl Group for WreathGroup {
    type Elem = WreathElement;

    fn identity(&self) -> WreathElement {
        WreathElement::identity(self.n, self.p, self.q)
    }

    fn mul(&self, a: &WreathElement, b: &WreathElement) -> WreathElement {
        wr_mul(a, b).expect("elements of the same wreath product")
    }

    fn inv(&self, a: &WreathElement) -> WreathElement {
        wr_inv(a)
    }

    fn generators(&self) -> Vec<WreathElement> {
        let mut gens = vec![WreathElement::top_generator(self.n, self.p, self.q)];
        for g in (UtGroup {
            n: self.n,
            p: self.p,
        })
        .generators()
        {
            let mut w = self.identity();
            w.base[0] = g;
            gens.push(w);
        }
        gens
    }
}

/// The cyclic group `Z / order`.
#[derive(Debug, Clone, Copy)]
pub struct CyclicGroup {
    pub order: u64,
}

impl Group for CyclicGroup {
    type Elem = u64;

    fn identity(&self) -> u64 {
        0
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.order
    }

    fn inv(&self, a: &u64) -> u64 {
        (self.order - a) % self.order
    }

    fn generators(&self) -> Vec<u64> {
        vec![1 % self.order]
    }
}

/// An explicitly enumerated subgroup. `elements` lists each member once, in
/// discovery order.
#[derive(Debug, Clone)]
pub struct SubgroupSet<E> {
    pub elements: Vec<E>,
    pub generators: Vec<E>,
    index: HashSet<E>,
}

impl<E: Clone + Eq + Hash> SubgroupSet<E> {
    pub fn trivial(identity: E) -> Self {
        SubgroupSet {
            elements: vec![identity.clone()],
            generators: Vec::new(),
            index: HashSet::from([identity]),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, x: &E) -> bool {
        self.index.contains(x)
    }

    pub fn is_subset_of(&self, other: &SubgroupSet<E>) -> bool {
        self.elements.iter().all(|x| other.contains(x))
    }

    /// Replaces the subgroup by `<self, g>`. Only new elements are multiplied
    /// by the old generators; every element is multiplied by `g`.
    pub fn adjoin<G: Group<Elem = E>>(&mut self, group: &G, g: E, bound: usize) -> Result<()> {
        if self.contains(&g) {
            return Ok(());
        }
        self.generators.push(g);
        let mut frontier: Vec<E> = Vec::new();
        let last = self.generators.last().expect("just pushed").clone();
        for x in self.elements.clone() {
            let y = group.mul(&x, &last);
            self.insert(y, &mut frontier, bound)?;
        }
        while let Some(x) = frontier.pop() {
            for s in self.generators.clone() {
                let y = group.mul(&x, &s);
                self.insert(y, &mut frontier, bound)?;
            }
        }
        Ok(())
    }

    fn insert(&mut self, y: E, frontier: &mut Vec<E>, bound: usize) -> Result<()> {
        if self.index.insert(y.clone()) {
            if self.elements.len() >= bound {
                return Err(Error::SizeLimit(bound));
            }
            self.elements.push(y.clone());
            frontier.push(y);
        }
        Ok(())
    }
}

/// The smallest subgroup containing `gens`.
pub fn subgroup_closure<G: Group>(
    group: &G,
    gens: &[G::Elem],
    bound: usize,
) -> Result<SubgroupSet<G::Elem>> {
    let mut h = SubgroupSet::trivial(group.identity());
    for g in gens {
        h.adjoin(group, g.clone(), bound)?;
    }
    Ok(h)
}

/// The whole group as a subgroup.
pub fn whole_group<G: Group>(group: &G, bound: usize) -> Result<SubgroupSet<G::Elem>> {
    subgroup_closure(group, &group.generators(), bound)
}

/// `gamma_1 = G, gamma_{k+1} = <[x, g] : x in gamma_k, g a generator of G>`,
/// down to the trivial group. The class is `series.len() - 1`.
pub fn lower_central_series<G: Group>(
    group: &G,
    bound: usize,
) -> Result<Vec<SubgroupSet<G::Elem>>> {
    let gens = group.generators();
    let mut series = vec![whole_group(group, bound)?];
    while !series.last().expect("nonempty").is_trivial() {
        let prev = series.last().expect("nonempty");
        let mut next = SubgroupSet::trivial(group.identity());
        for x in &prev.elements {
            for g in &gens {
                next.adjoin(group, group.commutator(x, g), bound)?;
            }
        }
        if next.len() == prev.len() {
            return Err(Error::InvalidParameter(
                "lower central series stabilizes: group is not nilpotent".into(),
            ));
        }
        series.push(next);
    }
    Ok(series)
}

pub fn nilpotency_class<G: Group>(group: &G, bound: usize) -> Result<usize> {
    Ok(lower_central_series(group, bound)?.len() - 1)
}

/// `K_i = < x^{p^j} : x in gamma_k, k p^j >= i >` for `i = 1, 2, ...` down to
/// the trivial group (which is included as the last entry).
pub fn kp_series<G: Group>(group: &G, p: Prime, bound: usize) -> Result<Vec<SubgroupSet<G::Elem>>> {
    let gamma = lower_central_series(group, bound)?;
    let p = p.get() as u64;
    // exponents of the gamma_k bound j: beyond p^j >= max order every power is trivial
    let max_order = gamma[0]
        .elements
        .iter()
        .map(|x| group.order_of(x))
        .max()
        .unwrap_or(1);
    let mut out = Vec::new();
    for i in 1.. {
        let mut k_i = SubgroupSet::trivial(group.identity());
        for (k0, gk) in gamma.iter().enumerate() {
            let k = (k0 + 1) as u64;
            let mut pj = 1u64;
            loop {
                if k * pj >= i {
                    for x in &gk.elements {
                        k_i.adjoin(group, group.pow(x, pj), bound)?;
                    }
                }
                if pj >= max_order {
                    break;
                }
                pj *= p;
            }
        }
        let done = k_i.is_trivial();
        out.push(k_i);
        if done {
            return Ok(out);
        }
    }
    unreachable!()
}

/// Invariants of a finite `p`-group `B` entering the class formula, together
/// with the exponent logs `s(w)` of `gamma_w(A)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShieldData {
    pub p: u32,
    pub d: usize,
    /// `e[v-1] = e(v)`.
    pub e: Vec<u32>,
    pub a: u64,
    pub b: u64,
    pub s: Vec<u32>,
}

impl ShieldData {
    fn from_e(p: Prime, e: Vec<u32>, s: Vec<u32>) -> Self {
        let d = e.len();
        let pm1 = p.get() as u64 - 1;
        let weighted: u64 = e
            .iter()
            .enumerate()
            .map(|(v, &ev)| (v as u64 + 1) * ev as u64)
            .sum();
        ShieldData {
            p: p.get(),
            d,
            e,
            a: 1 + pm1 * weighted,
            b: pm1 * d as u64,
            s,
        }
    }
}

/// Data of `C_{p^s}`: `e(v) = 1` exactly at `v = 1, p, ..., p^{s-1}`.
pub fn shield_data_cyclic(p: Prime, s: u32) -> Result<ShieldData> {
    if s == 0 {
        return Err(Error::InvalidParameter("s must be at least 1".into()));
    }
    let d = p.pow(s - 1) as usize;
    let mut e = vec![0; d];
    for t in 0..s {
        e[p.pow(t) as usize - 1] = 1;
    }
    Ok(ShieldData::from_e(p, e, Vec::new()))
}

/// Data of a group from the orders `|K_1|, |K_2|, ...` of its `K_p`-series,
/// ending with the trivial term.
pub fn shield_data_from_series(p: Prime, orders: &[usize]) -> Result<ShieldData> {
    if orders.last() != Some(&1) {
        return Err(Error::InvalidParameter(
            "series must end at the trivial group".into(),
        ));
    }
    let e = orders
        .windows(2)
        .map(|w| {
            if w[1] == 0 || w[0] % w[1] != 0 {
                return Err(Error::InvalidParameter(format!(
                    "{} is not divisible by {}",
                    w[0], w[1]
                )));
            }
            log_exact(p, (w[0] / w[1]) as u64)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ShieldData::from_e(p, e, Vec::new()))
}

fn log_exact(p: Prime, mut x: u64) -> Result<u32> {
    let p = p.get() as u64;
    let mut t = 0;
    while x > 1 {
        if !x.is_multiple_of(p) {
            return Err(Error::InvalidParameter(format!(
                "{x} is not a power of {p}"
            )));
        }
        x /= p;
        t += 1;
    }
    Ok(t)
}

/// `s(w)`: the least `t` with `p^t >= floor((n-1)/w) + 1`, so that `p^{s(w)}`
/// is the exponent of `gamma_w(UT_n(F_p))`.
pub fn ut_gamma_exponent_log(n: usize, p: Prime, w: usize) -> Result<u32> {
    if n < 2 || w == 0 || w > n - 1 {
        return Err(Error::InvalidParameter(format!(
            "w = {w} outside 1..={}",
            n.saturating_sub(1)
        )));
    }
    let nil = ((n - 1) / w + 1) as u64;
    let mut t = 0;
    while p.pow(t) < nil {
        t += 1;
    }
    Ok(t)
}

/// `max_w a w + (s(w) - 1) b` over `w = 1..=s.len()`, with the first maximizing `w`.
pub fn shield_class(a: u64, b: u64, s: &[u32]) -> (u64, usize) {
    s.iter()
        .enumerate()
        .map(|(w0, &sw)| {
            (
                a * (w0 as u64 + 1) + (sw as u64).saturating_sub(1) * b,
                w0 + 1,
            )
        })
        .fold((0, 0), |best, cur| if cur.0 > best.0 { cur } else { best })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassTerm {
    pub w: usize,
    pub s_w: u32,
    pub value: u64,
}

/// The three-way comparison for `cl(UT_n(F_p) wr C_q)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub n: usize,
    pub p: u32,
    pub s: u32,
    pub q: u64,
    pub formula: u64,
    pub shield: u64,
    pub terms: Vec<ClassTerm>,
    pub maximizer: usize,
    pub group_order: Option<u128>,
    /// `None` when the brute-force leg was skipped for size.
    pub brute_force: Option<u64>,
}

impl ClassReport {
    pub fn agrees(&self) -> bool {
        self.formula == self.shield && self.brute_force.is_none_or(|c| c == self.formula)
    }

    /// Whether the maximum is attained at `w = n - 1`.
    pub fn maximum_at_last_term(&self) -> bool {
        self.terms.last().is_some_and(|t| t.value == self.shield)
    }
}

impl fmt::Display for ClassReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let brute = self
            .brute_force
            .map_or("skipped".to_string(), |c| c.to_string());
        write!(f, "{} = {} = {}", self.formula, self.shield, brute)
    }
}

/// Order of `UT_n(F_p) wr C_q`, or `None` on overflow.
pub fn wreath_order(n: usize, p: Prime, q: u64) -> Option<u128> {
    let dim = (n * (n - 1) / 2) as u32;
    let base = (p.get() as u128).checked_pow(dim)?;
    base.checked_pow(u32::try_from(q).ok()?)?
        .checked_mul(q as u128)
}

pub fn wreath_class_check(n: usize, p: Prime, s: u32, bound: usize) -> Result<ClassReport> {
    if n < 2 {
        return Err(Error::InvalidParameter("n must be at least 2".into()));
    }
    let cyc = shield_data_cyclic(p, s)?;
    let q = p.pow(s);
    let terms = (1..n)
        .map(|w| {
            let s_w = ut_gamma_exponent_log(n, p, w)?;
            let value = cyc.a * w as u64 + (s_w as u64).saturating_sub(1) * cyc.b;
            Ok(ClassTerm { w, s_w, value })
        })
        .collect::<Result<Vec<_>>>()?;
    let s_seq: Vec<u32> = terms.iter().map(|t| t.s_w).collect();
    let (shield, maximizer) = shield_class(cyc.a, cyc.b, &s_seq);
    let group_order = wreath_order(n, p, q);
    let brute_force = match group_order {
        Some(ord) if ord <= bound as u128 => {
            let g = WreathGroup {
                n,
                p,
                q: q as usize,
            };
            Some(nilpotency_class(&g, bound)? as u64)
        }
        _ => None,
    };
    Ok(ClassReport {
        n,
        p: p.get(),
        s,
        q,
        formula: q * (n as u64 - 1),
        shield,
        terms,
        maximizer,
        group_order,
        brute_force,
    })
}
