//! Brute-force ground truth for small instances.
//!
//! Everything here works on explicit elements with machine integers and
//! shares no code with the structural modules beyond reading their inputs.
//! Extensions are abelian only: a class is a symmetric normalized 2-cocycle
//! `A × A → B` modulo coboundaries. Enumerations are lexicographic and
//! guarded by explicit budgets.

use num_traits::ToPrimitive;

use crate::abgroup::FinGenAb;
use crate::error::{Error, Result};
use crate::homext::ShortExactSeq;

pub const DEFAULT_BUDGET: u64 = 1 << 20;

/// A group `⊕ ℤ/mᵢ` given by its cyclic moduli (0 for ℤ, only allowed as
/// the source of homomorphisms). Elements are coordinate tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcreteGroup {
    moduli: Vec<u64>,
}

pub type Element = Vec<u64>;

impl ConcreteGroup {
    pub fn new(moduli: Vec<u64>) -> Self {
        ConcreteGroup { moduli }
    }

    pub fn from_fingen(g: &FinGenAb) -> Result<Self> {
        let moduli = g
            .moduli()
            .iter()
            .map(|m| {
                m.to_u64()
                    .ok_or_else(|| Error::Unsupported("modulus too large for the oracle".into()))
            })
            .collect::<Result<_>>()?;
        Ok(ConcreteGroup { moduli })
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn ngens(&self) -> usize {
        self.moduli.len()
    }

    pub fn is_finite(&self) -> bool {
        self.moduli.iter().all(|&m| m > 0)
    }

    pub fn order(&self) -> Option<u64> {
        self.is_finite().then(|| self.moduli.iter().product())
    }

    pub fn zero(&self) -> Element {
        vec![0; self.moduli.len()]
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Element {
        x.iter()
            .zip(y)
            .zip(&self.moduli)
            .map(|((a, b), m)| (a + b) % m)
            .collect()
    }

    pub fn neg(&self, x: &[u64]) -> Element {
        x.iter().zip(&self.moduli).map(|(a, m)| (m - a) % m).collect()
    }

    pub fn scale(&self, k: u64, x: &[u64]) -> Element {
        x.iter()
            .zip(&self.moduli)
            .map(|(a, m)| ((*a as u128 * k as u128) % *m as u128) as u64)
            .collect()
    }

    /// Position of an element in lexicographic order.
    pub fn index(&self, x: &[u64]) -> usize {
        x.iter()
            .zip(&self.moduli)
            .fold(0usize, |acc, (a, m)| acc * *m as usize + *a as usize)
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> Result<Vec<Element>> {
        let order = self
            .order()
            .ok_or_else(|| Error::Unsupported("cannot list an infinite group".into()))?;
        let mut out = Vec::with_capacity(order as usize);
        let mut x = self.zero();
        loop {
            out.push(x.clone());
            let mut i = self.moduli.len();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                x[i] += 1;
                if x[i] < self.moduli[i] {
                    break;
                }
                x[i] = 0;
            }
        }
    }
}

/// A homomorphism given by the images of the source generators.
pub type ConcreteHom = Vec<Element>;

pub fn apply(target: &ConcreteGroup, images: &[Element], x: &[u64]) -> Element {
    let mut y = target.zero();
    for (img, &c) in images.iter().zip(x) {
        y = target.add(&y, &target.scale(c, img));
    }
    y
}

/// All homomorphisms `A → B`: every choice of generator images killed by
/// the generator orders. `A` may have free generators.
pub fn enumerate_homs(a: &ConcreteGroup, b: &ConcreteGroup, budget: u64) -> Result<Vec<ConcreteHom>> {
    let bo = b
        .order()
        .ok_or_else(|| Error::Unsupported("target must be finite".into()))?;
    let space = (bo as u128).saturating_pow(a.ngens() as u32);
    if space > budget as u128 {
        return Err(Error::BudgetExceeded(format!(
            "{} candidate homomorphisms exceed budget {}",
            space, budget
        )));
    }
    let elems = b.elements()?;
    let choices: Vec<Vec<Element>> = a
        .moduli()
        .iter()
        .map(|&m| {
            elems
                .iter()
                .filter(|y| m == 0 || b.scale(m, y) == b.zero())
                .cloned()
                .collect()
        })
        .collect();
    Ok(product(&choices))
}

fn product<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for c in choices {
        let mut next = Vec::with_capacity(out.len() * c.len());
        for prefix in &out {
            for x in c {
                let mut p = prefix.clone();
                p.push(x.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Result of the cocycle computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleExt {
    /// `|Ext¹(A, B)|`.
    pub count: u64,
    pub cocycles: u64,
    pub coboundaries: u64,
    /// One cocycle per class (lexicographically least), when the cocycles
    /// could be enumerated within budget. A cocycle is a table indexed by
    /// `index(x)·|A| + index(y)`.
    pub representatives: Option<Vec<Vec<Element>>>,
}

/// Unordered pairs of nonzero elements, the free values of a normalized
/// symmetric cochain, as indices into the element list.
fn pair_unknowns(n: usize) -> (Vec<(usize, usize)>, Vec<Vec<Option<usize>>>) {
    let mut pairs = Vec::new();
    let mut slot = vec![vec![None; n]; n];
    for x in 1..n {
        for y in x..n {
            slot[x][y] = Some(pairs.len());
            slot[y][x] = Some(pairs.len());
            pairs.push((x, y));
        }
    }
    (pairs, slot)
}

/// Rows of the cocycle identity `f(y,z) − f(x+y,z) + f(x,y+z) − f(x,y) = 0`
/// over all triples, as sparse integer rows in the pair unknowns.
fn cocycle_rows(a: &ConcreteGroup) -> Result<(usize, Vec<Vec<(usize, i64)>>)> {
    let elems = a.elements()?;
    let n = elems.len();
    let (pairs, slot) = pair_unknowns(n);
    let sum: Vec<Vec<usize>> = elems
        .iter()
        .map(|x| elems.iter().map(|y| a.index(&a.add(x, y))).collect())
        .collect();
    let mut rows = Vec::new();
    for x in 1..n {
        for y in 1..n {
            for z in 1..n {
                let mut row: Vec<(usize, i64)> = Vec::new();
                let mut push = |p: usize, q: usize, s: i64| {
                    if let Some(u) = slot[p][q] {
                        match row.iter_mut().find(|(k, _)| *k == u) {
                            Some(e) => e.1 += s,
                            None => row.push((u, s)),
                        }
                    }
                };
                push(y, z, 1);
                push(sum[x][y], z, -1);
                push(x, sum[y][z], 1);
                push(x, y, -1);
                row.retain(|(_, s)| *s != 0);
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    Ok((pairs.len(), rows))
}

/// Number of solutions of the homogeneous system modulo `p^k`, by
/// elimination over `ℤ/p^k` pivoting on entries of least `p`-adic valuation.
fn count_solutions_mod_prime_power(
    nvars: usize,
    rows: &[Vec<(usize, i64)>],
    p: u64,
    k: u32,
) -> u128 {
    let q = p.pow(k) as u128;
    let mut m: Vec<Vec<u128>> = rows
        .iter()
        .map(|r| {
            let mut d = vec![0u128; nvars];
            for &(c, v) in r {
                d[c] = (v.rem_euclid(q as i64)) as u128;
            }
            d
        })
        .collect();
    let val = |x: u128| -> u32 {
        if x == 0 {
            return k;
        }
        let mut v = 0;
        let mut y = x;
        while y % p as u128 == 0 {
            y /= p as u128;
            v += 1;
        }
        v
    };
    let inv = |u: u128| -> u128 {
        // u is a unit mod q; q is small so a plain search by extended Euclid
        let (mut r0, mut r1) = (q as i128, u as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let t = r0 / r1;
            (r0, r1) = (r1, r0 - t * r1);
            (t0, t1) = (t1, t0 - t * t1);
        }
        t0.rem_euclid(q as i128) as u128
    };
    let mut count: u128 = 1;
    let mut free_cols: Vec<bool> = vec![true; nvars];
    let mut active: Vec<bool> = vec![true; m.len()];
    loop {
        let mut best: Option<(u32, usize, usize)> = None;
        for (r, row) in m.iter().enumerate() {
            if !active[r] {
                continue;
            }
            for (c, &x) in row.iter().enumerate() {
                if x != 0 && free_cols[c] {
                    let v = val(x);
                    if best.map_or(true, |(bv, _, _)| v < bv) {
                        best = Some((v, r, c));
                    }
                }
            }
        }
        let Some((v, r, c)) = best else { break };
        // pivot p^v·u: the variable is determined up to p^v choices
        count *= (p as u128).pow(v);
        let pv = (p as u128).pow(v);
        let unit = m[r][c] / pv;
        let ui = inv(unit % q);
        let prow: Vec<u128> = m[r].iter().map(|&x| (x * ui) % q).collect();
        for r2 in 0..m.len() {
            if r2 == r || !active[r2] || m[r2][c] == 0 {
                continue;
            }
            // every entry of column c has valuation ≥ v
            let factor = (m[r2][c] / pv) % q;
            for j in 0..nvars {
                let sub = (factor * prow[j]) % q;
                m[r2][j] = (m[r2][j] + q - sub) % q;
            }
        }
        active[r] = false;
        free_cols[c] = false;
    }
    let free = free_cols.iter().filter(|&&f| f).count() as u32;
    count * q.pow(free)
}

fn factor_prime_powers(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut k = 0;
        while n % d == 0 {
            n /= d;
            k += 1;
        }
        if k > 0 {
            out.push((d, k));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `|Ext¹(A, B)|` as symmetric cocycles over coboundaries, with class
/// representatives when the cocycle space fits the budget.
pub fn ext_by_cocycles(a: &ConcreteGroup, b: &ConcreteGroup, budget: u64) -> Result<CocycleExt> {
    let (ao, bo) = match (a.order(), b.order()) {
        (Some(x), Some(y)) => (x, y),
        _ => return Err(Error::Unsupported("oracle needs finite groups".into())),
    };
    let work = (ao as u128).pow(3) * (64 - bo.leading_zeros()) as u128;
    if work > budget as u128 * 16 {
        return Err(Error::BudgetExceeded(format!(
            "cocycle system for groups of order {} and {} exceeds budget",
            ao, bo
        )));
    }
    let (nvars, rows) = cocycle_rows(a)?;
    let mut cocycles: u128 = 1;
    for &m in b.moduli() {
        for (p, k) in factor_prime_powers(m) {
            cocycles *= count_solutions_mod_prime_power(nvars, &rows, p, k);
        }
    }
    // |Hom(A, B)| = Π over generators of the elements killed by its order
    let b_elems = b.elements()?;
    let homs: u128 = a
        .moduli()
        .iter()
        .map(|&m| b_elems.iter().filter(|y| b.scale(m, y) == b.zero()).count() as u128)
        .product();
    let cochains = (bo as u128).pow((ao - 1) as u32);
    let coboundaries = cochains / homs;
    let count = cocycles / coboundaries;
    let exhaustive = (bo as u128).saturating_pow(nvars as u32) <= budget as u128;
    let representatives = if exhaustive {
        Some(cocycle_representatives(a, b, nvars)?)
    } else {
        None
    };
    Ok(CocycleExt {
        count: count as u64,
        cocycles: cocycles as u64,
        coboundaries: coboundaries as u64,
        representatives,
    })
}

/// Exhaustive enumeration: every symmetric normalized cochain is tested
/// against the cocycle identity, and cocycles are grouped into cosets of
/// the coboundaries.
fn cocycle_representatives(
    a: &ConcreteGroup,
    b: &ConcreteGroup,
    nvars: usize,
) -> Result<Vec<Vec<Element>>> {
    let ae = a.elements()?;
    let be = b.elements()?;
    let n = ae.len();
    let (pairs, slot) = pair_unknowns(n);
    debug_assert_eq!(pairs.len(), nvars);
    let sum: Vec<Vec<usize>> = ae
        .iter()
        .map(|x| ae.iter().map(|y| a.index(&a.add(x, y))).collect())
        .collect();
    let table = |vals: &[usize]| -> Vec<Element> {
        let mut t = vec![b.zero(); n * n];
        for x in 1..n {
            for y in 1..n {
                t[x * n + y] = be[vals[slot[x][y].expect("nonzero pair")]].clone();
            }
        }
        t
    };
    let is_cocycle = |t: &[Element]| {
        (1..n).all(|x| {
            (1..n).all(|y| {
                (1..n).all(|z| {
                    let l = b.add(&t[y * n + z], &t[x * n + sum[y][z]]);
                    let r = b.add(&t[sum[x][y] * n + z], &t[x * n + y]);
                    l == r
                })
            })
        })
    };
    // coboundaries δφ(x, y) = φ(x) + φ(y) − φ(x + y)
    let mut boundaries: Vec<Vec<Element>> = Vec::new();
    let phis = product(&vec![be.clone(); n - 1]);
    for phi in phis {
        let at = |i: usize| if i == 0 { b.zero() } else { phi[i - 1].clone() };
        let mut t = vec![b.zero(); n * n];
        for x in 0..n {
            for y in 0..n {
                t[x * n + y] = b.add(&b.add(&at(x), &at(y)), &b.neg(&at(sum[x][y])));
            }
        }
        boundaries.push(t);
    }
    boundaries.sort();
    boundaries.dedup();

    let mut reps: Vec<Vec<Element>> = Vec::new();
    let mut seen: std::collections::BTreeSet<Vec<Element>> = Default::default();
    let mut vals = vec![0usize; nvars];
    loop {
        let t = table(&vals);
        if is_cocycle(&t) && !seen.contains(&t) {
            for d in &boundaries {
                let shifted: Vec<Element> = t.iter().zip(d).map(|(u, v)| b.add(u, v)).collect();
                seen.insert(shifted);
            }
            reps.push(t);
        }
        let mut i = nvars;
        loop {
            if i == 0 {
                return Ok(reps);
            }
            i -= 1;
            vals[i] += 1;
            if vals[i] < be.len() {
                break;
            }
            vals[i] = 0;
        }
    }
}

/// Searches every middle map `φ: E₁ → E₂` commuting with both legs; the
/// sequences are equivalent iff one exists. Each generator of `E₁` can
/// only go to a preimage of its image in `A`, which bounds the search.
pub fn ses_equivalent_bruteforce(
    s1: &ShortExactSeq,
    s2: &ShortExactSeq,
    budget: u64,
) -> Result<bool> {
    if s1.sub() != s2.sub() || s1.quotient() != s2.quotient() {
        return Err(Error::EndpointMismatch("sequences have different ends".into()));
    }
    let e1 = ConcreteGroup::from_fingen(s1.middle())?;
    let e2 = ConcreteGroup::from_fingen(s2.middle())?;
    let a = ConcreteGroup::from_fingen(s1.quotient())?;
    let b = ConcreteGroup::from_fingen(s1.sub())?;
    let order = e2.order().ok_or_else(|| Error::Unsupported("infinite middle".into()))?;
    if order > 1 << 12 || e1.order() != Some(order) {
        return Err(Error::BudgetExceeded(format!("middle of order {} is too large", order)));
    }
    let mat = |m: &crate::abgroup::AbMap| -> Result<Vec<Element>> {
        m.matrix()
            .columns()
            .into_iter()
            .map(|c| {
                c.iter()
                    .map(|v| v.to_u64().ok_or_else(|| Error::Unsupported("entry".into())))
                    .collect()
            })
            .collect()
    };
    let (f1, g1, f2, g2) = (mat(s1.f())?, mat(s1.g())?, mat(s2.f())?, mat(s2.g())?);
    let e2_elems = e2.elements()?;
    let choices: Vec<Vec<Element>> = (0..e1.ngens())
        .map(|i| {
            e2_elems
                .iter()
                .filter(|y| {
                    e2.scale(e1.moduli()[i], y) == e2.zero() && apply(&a, &g2, y) == g1[i]
                })
                .cloned()
                .collect()
        })
        .collect();
    let space: u128 = choices.iter().map(|c| c.len() as u128).product();
    if space > budget as u128 {
        return Err(Error::BudgetExceeded(format!("{} candidate middle maps", space)));
    }
    let b_gens: Vec<Element> = (0..b.ngens())
        .map(|j| {
            let mut x = b.zero();
            x[j] = 1;
            x
        })
        .collect();
    Ok(product(&choices).into_iter().any(|phi| {
        b_gens
            .iter()
            .all(|x| apply(&e2, &phi, &apply(&e1, &f1, x)) == apply(&e2, &f2, x))
    }))
}

/// Every abelian group of order at most `n`, one per isomorphism type,
/// ordered by order and then by invariant factors.
pub fn all_groups_up_to(n: u64) -> Vec<FinGenAb> {
    fn chains(m: u64, min: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if m == 1 {
            out.push(prefix.clone());
            return;
        }
        // next factor d with min | d, d | m, and the rest divisible by d
        for d in (2..=m).filter(|d| d % min == 0 && m % d == 0) {
            let rest = m / d;
            if rest == 1 || rest % d == 0 {
                prefix.push(d);
                chains(rest, d, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut groups = Vec::new();
    for m in 1..=n {
        let mut out = Vec::new();
        chains(m, 1, &mut Vec::new(), &mut out);
        out.sort();
        for f in out {
            groups.push(
                FinGenAb::new(0, f.into_iter().map(Into::into).collect()).expect("divisibility chain"),
            );
        }
    }
    groups
}
