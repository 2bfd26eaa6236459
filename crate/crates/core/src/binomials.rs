//! Monomials in the Plücker-style variables `w_t`, `t` a weight triple, and
//! suitable binomials between them.
//!
//! A degree-`n` monomial is a multiset of `n` triples.  Its multidegree is
//! `(n, sum r, sum gamma, sum delta)`; two monomials lie in the same fiber
//! exactly when their multidegrees agree, and a difference of two distinct
//! fiber members is a suitable `n`-binomial.  Such a binomial lies in the
//! toric lattice: its exponent vector is annihilated by both the grading and
//! the monomial exponent matrix.

use std::collections::BTreeMap;

use crate::gtsystem::{self, GtParams, Triple};
use crate::{Caps, Error, Int, IntMatrix, Result};

/// Exponent vector of a binomial in `Z^mu`, indexed by the lex position of
/// the triple.
pub type LatticeVector = Vec<Int>;

/// The triple set `W_d` with its lex indexing, plus the derived matrices.
#[derive(Debug, Clone)]
pub struct Wd {
    params: GtParams,
    triples: Vec<Triple>,
    index: BTreeMap<Triple, usize>,
}

impl Wd {
    pub fn new(d: i64) -> Result<Self> {
        let params = gtsystem::derive_params(d)?;
        let triples = gtsystem::enumerate_wd(&params);
        let index = triples.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        Ok(Wd {
            params,
            triples,
            index,
        })
    }

    pub fn params(&self) -> &GtParams {
        &self.params
    }

    pub fn d(&self) -> i64 {
        self.params.d
    }

    pub fn mu(&self) -> usize {
        self.triples.len()
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn index_of(&self, t: Triple) -> Option<usize> {
        self.index.get(&t).copied()
    }

    pub fn triple_at(&self, i: usize) -> Triple {
        self.triples[i]
    }

    /// Validated triple constructor, convenient when spelling out explicit
    /// binomials: `wd.w(2, 2, 0)?`.
    pub fn w(&self, r: i64, gamma: i64, delta: i64) -> Result<Triple> {
        let t = Triple::new(r, gamma, delta);
        if self.params.contains(t) {
            Ok(t)
        } else {
            Err(Error::Domain(format!("triple {t} is not in W_{}", self.d())))
        }
    }

    /// 4 x mu matrix of monomial exponents `(a, b, c, g)` per triple.
    pub fn exponent_matrix(&self) -> IntMatrix {
        gtsystem::exponent_matrix(&self.params, &self.triples)
            .expect("enumerated triples are in W_d")
    }

    /// 4 x mu matrix with rows `(1, r, gamma, delta)` per triple.
    pub fn grading_matrix(&self) -> IntMatrix {
        gtsystem::grading_matrix(&self.triples)
    }
}

/// Multidegree of a `w`-monomial: size plus the three weight sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiDegree {
    pub n: usize,
    pub r: i64,
    pub gamma: i64,
    pub delta: i64,
}

/// A monomial in the `w` variables, stored as a lex-sorted triple multiset.
///
/// The derived `Ord` compares the sorted triple sequences lexicographically;
/// this is the canonical order used whenever a fiber representative has to be
/// picked deterministically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WMonomial(Vec<Triple>);

impl WMonomial {
    pub fn new(mut triples: Vec<Triple>) -> Self {
        triples.sort();
        WMonomial(triples)
    }

    pub fn one() -> Self {
        WMonomial(Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn triples(&self) -> &[Triple] {
        &self.0
    }

    pub fn multidegree(&self) -> MultiDegree {
        MultiDegree {
            n: self.0.len(),
            r: self.0.iter().map(|t| t.r).sum(),
            gamma: self.0.iter().map(|t| t.gamma).sum(),
            delta: self.0.iter().map(|t| t.delta).sum(),
        }
    }

    /// Distinct triples, in order.
    pub fn support(&self) -> Vec<Triple> {
        let mut s = self.0.clone();
        s.dedup();
        s
    }

    pub fn exponent_of(&self, t: Triple) -> usize {
        self.0.iter().filter(|&&x| x == t).count()
    }

    pub fn shares_support(&self, other: &WMonomial) -> bool {
        // Both sides are sorted; walk them together.
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    /// Multiset containment: does `self` divide `other`?
    pub fn divides(&self, other: &WMonomial) -> bool {
        let mut j = 0;
        for t in &self.0 {
            loop {
                if j == other.0.len() || other.0[j] > *t {
                    return false;
                }
                j += 1;
                if other.0[j - 1] == *t {
                    break;
                }
            }
        }
        true
    }

    pub fn mul(&self, other: &WMonomial) -> WMonomial {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        WMonomial::new(v)
    }

    /// `self / other`, when `other` divides `self`.
    pub fn checked_div(&self, other: &WMonomial) -> Option<WMonomial> {
        let mut rest = self.0.clone();
        for t in &other.0 {
            let pos = rest.iter().position(|x| x == t)?;
            rest.remove(pos);
        }
        Some(WMonomial(rest))
    }
}

impl std::fmt::Display for WMonomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let t = self.0[i];
            let mut e = 1;
            while i + e < self.0.len() && self.0[i + e] == t {
                e += 1;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "w{t}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
            i += e;
        }
        Ok(())
    }
}

/// A difference `plus - minus` of two distinct monomials with the same
/// multidegree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SuitableBinomial {
    plus: WMonomial,
    minus: WMonomial,
}

impl SuitableBinomial {
    pub fn new(plus: WMonomial, minus: WMonomial) -> Result<Self> {
        if plus.multidegree() != minus.multidegree() {
            return Err(Error::Domain(format!(
                "multidegree mismatch: ({plus}) vs ({minus})"
            )));
        }
        if plus == minus {
            return Err(Error::Domain(format!("zero binomial: ({plus}) - ({plus})")));
        }
        Ok(SuitableBinomial { plus, minus })
    }

    pub fn plus(&self) -> &WMonomial {
        &self.plus
    }

    pub fn minus(&self) -> &WMonomial {
        &self.minus
    }

    pub fn degree(&self) -> usize {
        self.plus.degree()
    }

    pub fn multidegree(&self) -> MultiDegree {
        self.plus.multidegree()
    }

    /// Trivial binomials have intersecting supports: a common variable can be
    /// cancelled, leaving a lower-degree relation.
    pub fn is_trivial(&self) -> bool {
        self.plus.shares_support(&self.minus)
    }

    /// Exponent vector `plus - minus` in `Z^mu`.
    pub fn lattice_vector(&self, wd: &Wd) -> Result<LatticeVector> {
        let mut v = vec![Int::from(0); wd.mu()];
        for t in self.plus.triples() {
            let i = wd
                .index_of(*t)
                .ok_or_else(|| Error::Domain(format!("triple {t} is not in W_{}", wd.d())))?;
            v[i] += 1;
        }
        for t in self.minus.triples() {
            let i = wd
                .index_of(*t)
                .ok_or_else(|| Error::Domain(format!("triple {t} is not in W_{}", wd.d())))?;
            v[i] -= 1;
        }
        Ok(v)
    }

    /// Rebuilds a binomial from a lattice vector, positive part to `plus`.
    pub fn from_lattice_vector(wd: &Wd, v: &[Int]) -> Result<Self> {
        if v.len() != wd.mu() {
            return Err(Error::Domain(format!(
                "vector length {} does not match mu = {}",
                v.len(),
                wd.mu()
            )));
        }
        let mut plus = Vec::new();
        let mut minus = Vec::new();
        for (i, x) in v.iter().enumerate() {
            let mut x = x.clone();
            while x > Int::from(0) {
                plus.push(wd.triple_at(i));
                x -= 1;
            }
            while x < Int::from(0) {
                minus.push(wd.triple_at(i));
                x += 1;
            }
        }
        SuitableBinomial::new(WMonomial::new(plus), WMonomial::new(minus))
    }

    /// One Markov move forward: if `plus` divides `m`, replace it by `minus`.
    pub fn apply_forward(&self, m: &WMonomial) -> Option<WMonomial> {
        m.checked_div(&self.plus).map(|rest| rest.mul(&self.minus))
    }

    /// One Markov move backward: if `minus` divides `m`, replace it by `plus`.
    pub fn apply_backward(&self, m: &WMonomial) -> Option<WMonomial> {
        m.checked_div(&self.minus).map(|rest| rest.mul(&self.plus))
    }
}

impl std::fmt::Display for SuitableBinomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} - {}", self.plus, self.minus)
    }
}

fn combinations_estimate(mu: usize, n: usize) -> u128 {
    // binom(mu + n - 1, n), the number of degree-n monomials.
    let mut acc: u128 = 1;
    for i in 0..n {
        acc = acc * (mu + n - 1 - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Hard ceiling on how many monomials a single fiber enumeration may touch.
const ENUMERATION_LIMIT: u128 = 4_000_000;

fn check_caps(wd: &Wd, degree: usize, caps: &Caps) -> Result<()> {
    if degree == 0 {
        return Err(Error::Domain("fiber degree must be at least 1".into()));
    }
    if degree > caps.max_fiber_degree {
        return Err(Error::Resource(format!(
            "fiber degree {degree} exceeds cap {}",
            caps.max_fiber_degree
        )));
    }
    if degree >= 3 && wd.d() > caps.max_d {
        return Err(Error::Resource(format!(
            "degree-{degree} enumeration at d = {} exceeds cap d <= {}",
            wd.d(),
            caps.max_d
        )));
    }
    let est = combinations_estimate(wd.mu(), degree);
    if est > ENUMERATION_LIMIT {
        return Err(Error::Resource(format!(
            "degree-{degree} enumeration at d = {} needs {est} monomials (limit {ENUMERATION_LIMIT})",
            wd.d()
        )));
    }
    Ok(())
}

fn for_each_monomial(mu: usize, degree: usize, mut f: impl FnMut(&[usize])) {
    // Nondecreasing index tuples = monomial multisets.
    let mut idx = vec![0usize; degree];
    loop {
        f(&idx);
        let mut pos = degree;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            if idx[pos] + 1 < mu {
                let v = idx[pos] + 1;
                for slot in idx.iter_mut().skip(pos) {
                    *slot = v;
                }
                break;
            }
        }
    }
}

/// All degree-`degree` monomials grouped into fibers by multidegree.
///
/// Fibers come out in multidegree order with members lex-sorted, so the
/// result is deterministic.
pub fn enumerate_fibers(
    wd: &Wd,
    degree: usize,
    caps: &Caps,
) -> Result<BTreeMap<MultiDegree, Vec<WMonomial>>> {
    check_caps(wd, degree, caps)?;
    let mut fibers: BTreeMap<MultiDegree, Vec<WMonomial>> = BTreeMap::new();
    for_each_monomial(wd.mu(), degree, |idx| {
        let m = WMonomial(idx.iter().map(|&i| wd.triple_at(i)).collect());
        fibers.entry(m.multidegree()).or_default().push(m);
    });
    Ok(fibers)
}

/// Members of one fiber, found by depth-first search instead of full
/// enumeration.  Returned lex-sorted.
pub fn fiber_members(wd: &Wd, md: MultiDegree) -> Vec<WMonomial> {
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(md.n);
    search_fiber(wd, md, 0, &mut prefix, &mut out);
    out
}

fn search_fiber(
    wd: &Wd,
    left: MultiDegree,
    start: usize,
    prefix: &mut Vec<Triple>,
    out: &mut Vec<WMonomial>,
) {
    if left.n == 0 {
        if left.r == 0 && left.gamma == 0 && left.delta == 0 {
            out.push(WMonomial(prefix.clone()));
        }
        return;
    }
    let slots = left.n as i64;
    for i in start..wd.mu() {
        let t = wd.triple_at(i);
        // Remaining sums must stay reachable: each is bounded by the largest
        // value any single triple can contribute.
        if t.r > left.r || t.gamma > left.gamma || t.delta > left.delta {
            continue;
        }
        let p = wd.params();
        let rest = MultiDegree {
            n: left.n - 1,
            r: left.r - t.r,
            gamma: left.gamma - t.gamma,
            delta: left.delta - t.delta,
        };
        if rest.r > 3 * (slots - 1)
            || rest.gamma > p.gamma_max(3) * (slots - 1)
            || rest.delta > p.delta_max(2, 0) * (slots - 1)
        {
            continue;
        }
        prefix.push(t);
        search_fiber(wd, rest, i, prefix, out);
        prefix.pop();
    }
}

/// Star-shaped quadric generators: for every degree-2 fiber, the binomials
/// from its lex-least member to every other member.
///
/// Degree-2 fiber members are pairwise support-disjoint, so every one of
/// these binomials is nontrivial.
pub fn quadric_generators(wd: &Wd) -> Vec<SuitableBinomial> {
    let caps = Caps::default();
    let fibers = enumerate_fibers(wd, 2, &caps).expect("degree 2 is always within caps");
    let mut out = Vec::new();
    for members in fibers.values() {
        let (center, rest) = members.split_first().expect("fibers are nonempty");
        for m in rest {
            out.push(SuitableBinomial {
                plus: center.clone(),
                minus: m.clone(),
            });
        }
    }
    out
}

/// Every nontrivial suitable 2-binomial, not just the star ones, with the
/// lex-smaller monomial on the plus side.
pub fn all_suitable2(wd: &Wd) -> Vec<SuitableBinomial> {
    let caps = Caps::default();
    let fibers = enumerate_fibers(wd, 2, &caps).expect("degree 2 is always within caps");
    let mut out = Vec::new();
    for members in fibers.values() {
        for (i, a) in members.iter().enumerate() {
            for b in &members[i + 1..] {
                if !a.shares_support(b) {
                    out.push(SuitableBinomial {
                        plus: a.clone(),
                        minus: b.clone(),
                    });
                }
            }
        }
    }
    out
}

/// The closed-form family of cubic binomials for odd `d`.
///
/// Each listed plus-monomial is paired with the lex-least other member of its
/// fiber.  Even `d` has no cubic family and is a domain error.
pub fn m3_set(wd: &Wd) -> Result<Vec<SuitableBinomial>> {
    let p = *wd.params();
    if p.eps == 0 {
        return Err(Error::Domain(format!(
            "the cubic family is defined for odd d only, got d = {}",
            p.d
        )));
    }
    if p.d < 5 {
        return Err(Error::Domain(format!("odd d must be >= 5, got {}", p.d)));
    }
    let w000 = wd.w(0, 0, 0)?;
    let w100 = wd.w(1, 0, 0)?;
    let w20d = wd.w(2, 0, p.d)?;
    let w3d0 = wd.w(3, p.d, 0)?;

    let mut plus_list = Vec::new();
    for delta in 0..p.k {
        plus_list.push(WMonomial::new(vec![w000, w20d, wd.w(1, 0, delta)?]));
    }
    for gamma in 0..p.k {
        plus_list.push(WMonomial::new(vec![
            w100,
            wd.w(2, gamma, p.d - 2 * gamma)?,
            w3d0,
        ]));
    }
    if p.rho != 0 {
        plus_list.push(WMonomial::new(vec![w000, w20d, w3d0]));
        plus_list.push(WMonomial::new(vec![w000, w100, w3d0]));
    }

    let mut out = Vec::new();
    for plus in plus_list {
        let fiber = fiber_members(wd, plus.multidegree());
        let minus = fiber
            .into_iter()
            .find(|m| *m != plus)
            .ok_or_else(|| Error::Domain(format!("({plus}) has a singleton fiber")))?;
        out.push(SuitableBinomial { plus, minus });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn wm(wd: &Wd, ts: &[(i64, i64, i64)]) -> WMonomial {
        WMonomial::new(
            ts.iter()
                .map(|&(r, g, d)| wd.w(r, g, d).expect("triple in W_d"))
                .collect(),
        )
    }

    #[test]
    fn context_indexing_roundtrips() {
        for d in 4..=12 {
            let wd = Wd::new(d).unwrap();
            assert_eq!(wd.mu() as i64, gtsystem::mu_closed_form(wd.params()));
            for (i, &t) in wd.triples().iter().enumerate() {
                assert_eq!(wd.index_of(t), Some(i));
                assert_eq!(wd.triple_at(i), t);
            }
        }
    }

    #[test]
    fn multiset_operations() {
        let wd = Wd::new(5).unwrap();
        let a = wm(&wd, &[(1, 0, 0), (1, 0, 0), (2, 0, 5)]);
        let b = wm(&wd, &[(1, 0, 0), (2, 0, 5)]);
        assert!(b.divides(&a));
        assert!(!a.divides(&b));
        assert_eq!(a.checked_div(&b).unwrap(), wm(&wd, &[(1, 0, 0)]));
        assert_eq!(b.mul(&wm(&wd, &[(1, 0, 0)])), a);
        assert_eq!(a.exponent_of(wd.w(1, 0, 0).unwrap()), 2);
        assert_eq!(a.support().len(), 2);
        assert_eq!(a.to_string(), "w(1,0,0)^2 w(2,0,5)");
    }

    #[test]
    fn quadric_counts_for_small_degrees() {
        for (d, count) in [(4, 12), (5, 20), (6, 57)] {
            let wd = Wd::new(d).unwrap();
            assert_eq!(quadric_generators(&wd).len(), count, "d={d}");
        }
    }

    #[test]
    fn degree2_fiber_members_are_pairwise_disjoint() {
        for d in 4..=9 {
            let wd = Wd::new(d).unwrap();
            let fibers = enumerate_fibers(&wd, 2, &Caps::default()).unwrap();
            for members in fibers.values() {
                for (i, a) in members.iter().enumerate() {
                    for b in &members[i + 1..] {
                        assert!(!a.shares_support(b), "d={d}: ({a}) and ({b})");
                    }
                }
            }
        }
    }

    #[test]
    fn all_suitable2_at_d5_exceeds_the_star_set() {
        let wd = Wd::new(5).unwrap();
        assert_eq!(quadric_generators(&wd).len(), 20);
        assert_eq!(all_suitable2(&wd).len(), 22);
    }

    #[test]
    fn fibers_partition_the_monomials() {
        let wd = Wd::new(5).unwrap();
        let fibers = enumerate_fibers(&wd, 3, &Caps::default()).unwrap();
        let total: usize = fibers.values().map(Vec::len).sum();
        assert_eq!(total as u128, combinations_estimate(wd.mu(), 3));
        for (md, members) in &fibers {
            for m in members {
                assert_eq!(m.multidegree(), *md);
            }
            for w in members.windows(2) {
                assert!(w[0] < w[1], "members not sorted");
            }
        }
    }

    #[test]
    fn targeted_fiber_search_agrees_with_full_enumeration() {
        let wd = Wd::new(5).unwrap();
        for degree in 1..=3 {
            let fibers = enumerate_fibers(&wd, degree, &Caps::default()).unwrap();
            for (md, members) in &fibers {
                assert_eq!(&fiber_members(&wd, *md), members, "md={md:?}");
            }
        }
    }

    #[test]
    fn caps_are_enforced() {
        let wd = Wd::new(5).unwrap();
        let caps = Caps::default();
        assert!(matches!(
            enumerate_fibers(&wd, 5, &caps),
            Err(Error::Resource(_))
        ));
        assert!(matches!(
            enumerate_fibers(&wd, 0, &caps),
            Err(Error::Domain(_))
        ));
        let wd13 = Wd::new(13).unwrap();
        assert!(matches!(
            enumerate_fibers(&wd13, 3, &caps),
            Err(Error::Resource(_))
        ));
        assert!(enumerate_fibers(&wd13, 2, &caps).is_ok());
    }

    #[test]
    fn binomial_constructor_validates() {
        let wd = Wd::new(4).unwrap();
        let a = wm(&wd, &[(0, 0, 0), (2, 2, 0)]);
        let b = wm(&wd, &[(1, 1, 0), (1, 1, 0)]);
        let f = SuitableBinomial::new(a.clone(), b.clone()).unwrap();
        assert!(!f.is_trivial());
        assert_eq!(f.to_string(), "w(0,0,0) w(2,2,0) - w(1,1,0)^2");
        assert!(SuitableBinomial::new(a.clone(), a.clone()).is_err());
        let c = wm(&wd, &[(1, 0, 0), (1, 0, 1)]);
        assert!(SuitableBinomial::new(a, c).is_err());
    }

    #[test]
    fn lattice_vector_roundtrips() {
        let wd = Wd::new(4).unwrap();
        for f in quadric_generators(&wd) {
            let v = f.lattice_vector(&wd).unwrap();
            let back = SuitableBinomial::from_lattice_vector(&wd, &v).unwrap();
            assert_eq!(back, f);
        }
    }

    #[test]
    fn moves_apply_in_both_directions() {
        let wd = Wd::new(4).unwrap();
        let f = SuitableBinomial::new(
            wm(&wd, &[(0, 0, 0), (2, 2, 0)]),
            wm(&wd, &[(1, 1, 0), (1, 1, 0)]),
        )
        .unwrap();
        let m = wm(&wd, &[(0, 0, 0), (2, 2, 0), (3, 4, 0)]);
        let moved = f.apply_forward(&m).unwrap();
        assert_eq!(moved, wm(&wd, &[(1, 1, 0), (1, 1, 0), (3, 4, 0)]));
        assert_eq!(f.apply_backward(&moved).unwrap(), m);
        assert!(f.apply_forward(&moved).is_none());
    }

    #[test]
    fn cubic_family_counts() {
        // Count: k from each of the two parametrized families, plus two
        // extras when d is not a multiple of three.
        for (d, count) in [(5, 6), (7, 8), (9, 8), (11, 12)] {
            let wd = Wd::new(d).unwrap();
            let m3 = m3_set(&wd).unwrap();
            assert_eq!(m3.len(), count, "d={d}");
            for f in &m3 {
                assert_eq!(f.degree(), 3);
                assert!(!f.is_trivial(), "d={d}: ({f}) is trivial");
            }
        }
        assert!(m3_set(&Wd::new(6).unwrap()).is_err());
        assert!(m3_set(&Wd::new(8).unwrap()).is_err());
    }

    proptest! {
        /// Any two members of one fiber give a vector annihilated by both the
        /// grading matrix and the exponent matrix.
        #[test]
        fn fiber_differences_are_in_the_kernel(d in 4i64..=7, seed in 0usize..1000) {
            let wd = Wd::new(d).unwrap();
            let fibers = enumerate_fibers(&wd, 2, &Caps::default()).unwrap();
            let big: Vec<_> = fibers.values().filter(|m| m.len() >= 2).collect();
            let members = big[seed % big.len()];
            let a = &members[seed % members.len()];
            let b = &members[(seed / members.len()) % members.len()];
            if a != b {
                let f = SuitableBinomial::new(a.clone(), b.clone()).unwrap();
                let v = f.lattice_vector(&wd).unwrap();
                for m in [wd.grading_matrix(), wd.exponent_matrix()] {
                    let prod = m.mul_col_vec(&v);
                    prop_assert!(prod.iter().all(Zero::is_zero));
                }
            }
        }

        /// The two matrices have the same integer kernel rank mu - 4.
        #[test]
        fn kernel_rank_is_mu_minus_4(d in 4i64..=9) {
            let wd = Wd::new(d).unwrap();
            let ker_g = linalg::integer_kernel(&wd.grading_matrix());
            let ker_e = linalg::integer_kernel(&wd.exponent_matrix());
            prop_assert_eq!(ker_g.rows(), wd.mu() - 4);
            prop_assert_eq!(ker_e.rows(), wd.mu() - 4);
            // Rows of one kernel must solve in the other: equal lattices.
            for i in 0..ker_g.rows() {
                prop_assert!(linalg::solve_in_lattice(&ker_e, ker_g.row_slice(i)).is_some());
            }
        }
    }
}
