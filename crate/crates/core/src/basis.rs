//! A certified Z-basis of the lattice of suitable binomials.
//!
//! Four triples of `W_d` are set aside; every remaining triple (an *anchor*)
//! receives one special binomial: the anchor appears exactly once, on the
//! plus side, and every other triple involved is lex-greater.  Listing the
//! rows by anchor gives a unit upper-triangular matrix, so the rows are
//! Z-independent; certification then checks that they span the full integer
//! kernel of the exponent matrix (equivalently, all Smith invariant factors
//! are 1).
//!
//! Each anchor class has a closed-form recipe.  Recipe outputs are validated,
//! and any gap falls back to a deterministic lex-least search, so the result
//! is canonical either way.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::binomials::{LatticeVector, SuitableBinomial, WMonomial, Wd};
use crate::gtsystem::{GtParams, Triple};
use crate::linalg::{self, Matrix};
use crate::{Error, Int, IntMatrix, Result};

/// The four triples that do not anchor a basis row, by residue of `d` mod 3.
/// The last one is always `(3, d, 0)`.
pub fn excluded_triples(p: &GtParams) -> Vec<Triple> {
    let kp = p.kprime;
    let mut out = match p.rho {
        0 => vec![
            Triple::new(2, 2 * kp - 1, 0),
            Triple::new(2, 2 * kp - 1, 1),
            Triple::new(2, 2 * kp, 0),
        ],
        1 => vec![
            Triple::new(2, 2 * kp - 1, 2),
            Triple::new(2, 2 * kp, 0),
            Triple::new(2, 2 * kp, 1),
        ],
        _ => vec![
            Triple::new(2, 2 * kp, 1),
            Triple::new(2, 2 * kp, 2),
            Triple::new(2, 2 * kp + 1, 0),
        ],
    };
    out.push(Triple::new(3, p.d, 0));
    out
}

/// Anchor triples: `W_d` minus the excluded four, in lex order.
pub fn anchors(wd: &Wd) -> Vec<Triple> {
    let excluded = excluded_triples(wd.params());
    wd.triples()
        .iter()
        .copied()
        .filter(|t| !excluded.contains(t))
        .collect()
}

/// Optional per-anchor replacements for the recipe-built rows.
#[derive(Debug, Clone, Default)]
pub struct BasisConfig {
    /// Replacement `(plus, minus)` binomial per anchor.  Each replacement
    /// must itself be a valid special binomial for its anchor.
    pub overrides: BTreeMap<Triple, (WMonomial, WMonomial)>,
}

/// The certified basis: one special binomial per anchor, plus the row matrix
/// of their lattice vectors (rows in anchor order, columns in `W_d` order).
#[derive(Debug, Clone)]
pub struct BasisSystem {
    d: i64,
    anchors: Vec<Triple>,
    binomials: Vec<SuitableBinomial>,
    matrix: IntMatrix,
}

impl BasisSystem {
    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn anchors(&self) -> &[Triple] {
        &self.anchors
    }

    pub fn binomials(&self) -> &[SuitableBinomial] {
        &self.binomials
    }

    /// `(mu - 4) x mu` unit upper-triangular row matrix.
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Writes `v` as an integer combination of the basis rows.
    ///
    /// The rows are Z-independent, so the coefficients are unique; they are
    /// re-multiplied against the matrix before being returned.  A vector
    /// outside the lattice is a domain error.
    pub fn reduce(&self, v: &[Int]) -> Result<Vec<Int>> {
        if v.len() != self.matrix.cols() {
            return Err(Error::Domain(format!(
                "vector length {} does not match mu = {}",
                v.len(),
                self.matrix.cols()
            )));
        }
        let coeffs = linalg::solve_in_lattice(&self.matrix, v)
            .ok_or_else(|| Error::Domain("vector is not in the lattice".into()))?;
        if Matrix::row_vec_mul(&coeffs, &self.matrix) != v {
            return Err(Error::Certification(
                "reduction residual is nonzero".into(),
            ));
        }
        Ok(coeffs)
    }
}

/// Builds and certifies the basis with recipe rows only.
pub fn build_basis(wd: &Wd) -> Result<BasisSystem> {
    build_basis_with(wd, &BasisConfig::default())
}

/// Builds and certifies the basis, letting `config.overrides` replace
/// individual rows.
pub fn build_basis_with(wd: &Wd, config: &BasisConfig) -> Result<BasisSystem> {
    let anchor_list = anchors(wd);
    for t in config.overrides.keys() {
        if !anchor_list.contains(t) {
            return Err(Error::Domain(format!("override target {t} is not an anchor")));
        }
    }
    let mut binomials = Vec::with_capacity(anchor_list.len());
    for &anchor in &anchor_list {
        let f = match config.overrides.get(&anchor) {
            Some((plus, minus)) => validate_special(wd, anchor, plus.clone(), minus.clone())
                .map_err(|e| Error::Domain(format!("override for anchor {anchor}: {e}")))?,
            None => special_binomial(wd, anchor)?,
        };
        binomials.push(f);
    }
    let matrix = certify(wd, &anchor_list, &binomials)?;
    Ok(BasisSystem {
        d: wd.d(),
        anchors: anchor_list,
        binomials,
        matrix,
    })
}

/// The special binomial for one anchor: recipe first, validated, with a
/// deterministic search as fallback.
pub fn special_binomial(wd: &Wd, anchor: Triple) -> Result<SuitableBinomial> {
    if let Some((plus, minus)) = recipe(wd, anchor) {
        if let Ok(f) = validate_special(wd, anchor, plus, minus) {
            return Ok(f);
        }
    }
    search_special(wd, anchor).ok_or_else(|| {
        Error::Certification(format!("no special binomial exists for anchor {anchor}"))
    })
}

/// Checks every structural requirement on a candidate row.
fn validate_special(
    wd: &Wd,
    anchor: Triple,
    plus: WMonomial,
    minus: WMonomial,
) -> Result<SuitableBinomial> {
    for t in plus.triples().iter().chain(minus.triples()) {
        if wd.index_of(*t).is_none() {
            return Err(Error::Domain(format!("triple {t} is not in W_{}", wd.d())));
        }
        if *t < anchor {
            return Err(Error::Domain(format!("triple {t} precedes the anchor")));
        }
    }
    if plus.exponent_of(anchor) != 1 {
        return Err(Error::Domain(format!(
            "anchor must appear exactly once on the plus side, found {}",
            plus.exponent_of(anchor)
        )));
    }
    if minus.exponent_of(anchor) != 0 {
        return Err(Error::Domain(
            "anchor must not appear on the minus side".into(),
        ));
    }
    let f = SuitableBinomial::new(plus, minus)?;
    if f.is_trivial() {
        return Err(Error::Domain(format!("({f}) has intersecting supports")));
    }
    Ok(f)
}

fn recipe(wd: &Wd, anchor: Triple) -> Option<(WMonomial, WMonomial)> {
    let p = *wd.params();
    match anchor.r {
        0 => recipe_r0(wd, &p),
        1 => recipe_r1(wd, &p, anchor),
        2 => recipe_r2(wd, &p, anchor),
        _ => None,
    }
}

/// `(0,0,0)`: pair with the weight-2 triple at `(2k', 2 floor(rho/2))`, the
/// square root being `(1, k', floor(rho/2))`.
fn recipe_r0(wd: &Wd, p: &GtParams) -> Option<(WMonomial, WMonomial)> {
    let half = p.rho / 2;
    let plus = vec![wd.w(0, 0, 0).ok()?, wd.w(2, 2 * p.kprime, 2 * half).ok()?];
    let sqrt = wd.w(1, p.kprime, half).ok()?;
    Some((WMonomial::new(plus), WMonomial::new(vec![sqrt, sqrt])))
}

fn recipe_r1(wd: &Wd, p: &GtParams, anchor: Triple) -> Option<(WMonomial, WMonomial)> {
    let kp = p.kprime;
    let d = p.d;
    if p.rho != 0 && anchor.gamma == kp && anchor.delta == p.rho / 2 {
        // The one weight-1 triple whose weight-2 pairing is blocked; a cubic
        // through (3, d, 0) works instead.
        let (plus2, m1, m2, m3) = if p.rho == 1 {
            (
                wd.w(2, 2 * kp - 1, 2).ok()?,
                wd.w(2, 2 * kp, 0).ok()?,
                wd.w(2, 2 * kp, 1).ok()?,
                wd.w(2, 2 * kp, 1).ok()?,
            )
        } else {
            (
                wd.w(2, 2 * kp, 1).ok()?,
                wd.w(2, 2 * kp, 2).ok()?,
                wd.w(2, 2 * kp + 1, 0).ok()?,
                wd.w(2, 2 * kp + 1, 0).ok()?,
            )
        };
        let plus = WMonomial::new(vec![anchor, plus2, wd.w(3, d, 0).ok()?]);
        return Some((plus, WMonomial::new(vec![m1, m2, m3])));
    }
    if p.eps == 1 && anchor.gamma == 0 && anchor.delta == 0 {
        // Odd d: the generic weight split needs delta >= 1, so (1,0,0) pairs
        // inside lower weights instead.
        let (a, b, c) = match p.rho {
            0 => ((1, 1, 0), (2, 2 * kp, 0), (2, 2 * kp - 1, 0)),
            1 => ((1, 0, 1), (2, 2 * kp, 1), (2, 2 * kp, 0)),
            _ => ((1, 1, 0), (2, 2 * kp + 1, 0), (2, 2 * kp, 0)),
        };
        let plus = WMonomial::new(vec![anchor, wd.w(b.0, b.1, b.2).ok()?]);
        let minus = WMonomial::new(vec![wd.w(a.0, a.1, a.2).ok()?, wd.w(c.0, c.1, c.2).ok()?]);
        return Some((plus, minus));
    }
    // Generic: w(1,gamma,delta) w(3,d,0) - w(2,g1,d1) w(2,g2,d2) with
    // g1 + g2 = d + gamma and d1 + d2 = delta.
    let g1 = (d + anchor.gamma).div_euclid(2);
    let g2 = d + anchor.gamma - g1;
    let plus = WMonomial::new(vec![anchor, wd.w(3, d, 0).ok()?]);
    for (ga, gb) in [(g1, g2), (g1 + 1, g2 - 1)] {
        if let Some((da, db)) = split_deltas(p, ga, gb, anchor.delta) {
            if let (Ok(ta), Ok(tb)) = (wd.w(2, ga, da), wd.w(2, gb, db)) {
                return Some((plus, WMonomial::new(vec![ta, tb])));
            }
        }
    }
    None
}

fn recipe_r2(wd: &Wd, p: &GtParams, anchor: Triple) -> Option<(WMonomial, WMonomial)> {
    let kp = p.kprime;
    let gamma_e = 2 * kp + p.rho / 2;
    let (gamma, delta) = (anchor.gamma, anchor.delta);
    if gamma == gamma_e - 1 {
        if p.rho == 1 {
            // Exchange one delta unit with the top slice instead of shifting
            // gammas: gammas (gamma_e - 1, gamma_e) appear on both sides.
            let plus = WMonomial::new(vec![anchor, wd.w(2, gamma_e, 1).ok()?]);
            let minus =
                WMonomial::new(vec![wd.w(2, gamma, delta + 1).ok()?, wd.w(2, gamma_e, 0).ok()?]);
            return Some((plus, minus));
        }
        if p.rho == 2 && delta == 0 {
            // rho = 2 keeps (2, 2k', 0) as an anchor; its whole delta slice
            // resolves it.
            let plus = WMonomial::new(vec![anchor, wd.w(2, gamma, 2).ok()?]);
            let sq = wd.w(2, gamma, 1).ok()?;
            return Some((plus, WMonomial::new(vec![sq, sq])));
        }
        return None;
    }
    let plus = WMonomial::new(vec![anchor, wd.w(2, gamma_e, 0).ok()?]);
    for (ga, gb) in [(gamma + 1, gamma_e - 1), (gamma + 2, gamma_e - 2)] {
        if gb <= gamma {
            continue;
        }
        if let Some((da, db)) = split_deltas(p, ga, gb, delta) {
            if let (Ok(ta), Ok(tb)) = (wd.w(2, ga, da), wd.w(2, gb, db)) {
                return Some((plus, WMonomial::new(vec![ta, tb])));
            }
        }
    }
    if p.rho == 0 && gamma == 2 * kp - 2 && delta == 3 {
        // Both gamma shifts collide with the anchor; a cubic across the top
        // three slices closes the gap.
        let plus = WMonomial::new(vec![
            anchor,
            wd.w(2, 2 * kp - 1, 0).ok()?,
            wd.w(2, 2 * kp, 0).ok()?,
        ]);
        let cube = wd.w(2, 2 * kp - 1, 1).ok()?;
        return Some((plus, WMonomial::new(vec![cube, cube, cube])));
    }
    None
}

/// Picks `(d1, d2)` with `d1 + d2 = total`, each within the weight-2 delta
/// bounds of its gamma, smallest `d1` first.
fn split_deltas(p: &GtParams, g1: i64, g2: i64, total: i64) -> Option<(i64, i64)> {
    if g1 < 0 || g2 < 0 || g1 > p.gamma_max(2) || g2 > p.gamma_max(2) {
        return None;
    }
    let lo = p.delta_min(2, g1).max(total - p.delta_max(2, g2));
    let hi = p.delta_max(2, g1).min(total - p.delta_min(2, g2));
    if lo > hi {
        None
    } else {
        Some((lo, total - lo))
    }
}

/// Deterministic fallback: the lex-least valid special binomial of degree 2,
/// then 3.  Only triples after the anchor may appear.
fn search_special(wd: &Wd, anchor: Triple) -> Option<SuitableBinomial> {
    let bigger: Vec<Triple> = wd
        .triples()
        .iter()
        .copied()
        .filter(|&t| t > anchor)
        .collect();
    for degree in 2..=3usize {
        let mut partners = vec![0usize; degree - 1];
        'outer: loop {
            let mut plus_triples = vec![anchor];
            plus_triples.extend(partners.iter().map(|&i| bigger[i]));
            let plus = WMonomial::new(plus_triples);
            let md = plus.multidegree();
            for minus in products_with_multidegree(&bigger, degree, md) {
                if minus != plus && !minus.shares_support(&plus) {
                    return Some(
                        SuitableBinomial::new(plus, minus).expect("multidegrees match"),
                    );
                }
            }
            // Advance the nondecreasing partner tuple.
            let mut pos = partners.len();
            loop {
                if pos == 0 {
                    break 'outer;
                }
                pos -= 1;
                if partners[pos] + 1 < bigger.len() {
                    let v = partners[pos] + 1;
                    for slot in partners.iter_mut().skip(pos) {
                        *slot = v;
                    }
                    continue 'outer;
                }
            }
        }
    }
    None
}

/// All degree-`n` products of triples from `list` hitting the multidegree,
/// in lex order.
fn products_with_multidegree(
    list: &[Triple],
    n: usize,
    md: crate::binomials::MultiDegree,
) -> Vec<WMonomial> {
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(n);
    product_search(list, 0, n, (md.r, md.gamma, md.delta), &mut prefix, &mut out);
    out
}

fn product_search(
    list: &[Triple],
    start: usize,
    slots: usize,
    left: (i64, i64, i64),
    prefix: &mut Vec<Triple>,
    out: &mut Vec<WMonomial>,
) {
    if slots == 0 {
        if left == (0, 0, 0) {
            out.push(WMonomial::new(prefix.clone()));
        }
        return;
    }
    for i in start..list.len() {
        let t = list[i];
        if t.r > left.0 || t.gamma > left.1 || t.delta > left.2 {
            continue;
        }
        prefix.push(t);
        product_search(
            list,
            i,
            slots - 1,
            (left.0 - t.r, left.1 - t.gamma, left.2 - t.delta),
            prefix,
            out,
        );
        prefix.pop();
    }
}

/// Checks triangularity, annihilation, Smith invariant factors, and span
/// equality with the integer kernel of the exponent matrix.
fn certify(wd: &Wd, anchor_list: &[Triple], binomials: &[SuitableBinomial]) -> Result<IntMatrix> {
    let mu = wd.mu();
    let expected = mu - 4;
    if anchor_list.len() != expected {
        return Err(Error::Certification(format!(
            "expected {expected} anchors, found {}",
            anchor_list.len()
        )));
    }
    let mut rows: Vec<LatticeVector> = Vec::with_capacity(expected);
    for f in binomials {
        rows.push(f.lattice_vector(wd)?);
    }
    for (anchor, row) in anchor_list.iter().zip(&rows) {
        let col = wd.index_of(*anchor).expect("anchors come from W_d");
        if !row[col].is_one() {
            return Err(Error::Certification(format!(
                "anchor {anchor} has diagonal entry {} instead of 1",
                row[col]
            )));
        }
        if row[..col].iter().any(|x| !x.is_zero()) {
            return Err(Error::Certification(format!(
                "row for anchor {anchor} has entries before the diagonal"
            )));
        }
    }
    let matrix = Matrix::from_rows(rows);
    let exponent = wd.exponent_matrix();
    let grading = wd.grading_matrix();
    for i in 0..matrix.rows() {
        for m in [&exponent, &grading] {
            if m.mul_col_vec(matrix.row_slice(i)).iter().any(|x| !x.is_zero()) {
                return Err(Error::Certification(format!(
                    "row for anchor {} is not in the kernel",
                    anchor_list[i]
                )));
            }
        }
    }
    let factors = linalg::snf_invariant_factors(&matrix);
    if factors.len() != expected || factors.iter().any(|x| !x.is_one()) {
        return Err(Error::Certification(format!(
            "Smith invariant factors are not all 1: {factors:?}"
        )));
    }
    let kernel = linalg::integer_kernel(&exponent);
    if kernel.rows() != expected {
        return Err(Error::Certification(format!(
            "kernel rank {} does not match mu - 4 = {expected}",
            kernel.rows()
        )));
    }
    for i in 0..kernel.rows() {
        if linalg::solve_in_lattice(&matrix, kernel.row_slice(i)).is_none() {
            return Err(Error::Certification(
                "a kernel generator is outside the row span".into(),
            ));
        }
    }
    for i in 0..matrix.rows() {
        if linalg::solve_in_lattice(&kernel, matrix.row_slice(i)).is_none() {
            return Err(Error::Certification(
                "a basis row is outside the kernel span".into(),
            ));
        }
    }
    Ok(matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gtsystem::derive_params;

    fn wm(wd: &Wd, ts: &[(i64, i64, i64)]) -> WMonomial {
        WMonomial::new(
            ts.iter()
                .map(|&(r, g, d)| wd.w(r, g, d).expect("triple in W_d"))
                .collect(),
        )
    }

    #[test]
    fn excluded_triples_are_in_wd() {
        for d in 4..=40 {
            let wd = Wd::new(d).unwrap();
            let excluded = excluded_triples(wd.params());
            assert_eq!(excluded.len(), 4, "d={d}");
            for &t in &excluded {
                assert!(wd.index_of(t).is_some(), "d={d}: {t} not in W_d");
            }
            let mut dedup = excluded.clone();
            dedup.dedup();
            assert_eq!(dedup.len(), 4);
            assert_eq!(anchors(&wd).len(), wd.mu() - 4, "d={d}");
        }
    }

    #[test]
    fn basis_certifies_for_small_degrees() {
        for d in 4..=9 {
            let sys = build_basis(&Wd::new(d).unwrap()).unwrap();
            assert_eq!(sys.matrix().rows() + 4, sys.matrix().cols(), "d={d}");
        }
    }

    #[test]
    fn d4_system_is_the_known_one() {
        let wd = Wd::new(4).unwrap();
        let sys = build_basis(&wd).unwrap();
        let expect = [
            (vec![(0, 0, 0), (2, 2, 0)], vec![(1, 1, 0), (1, 1, 0)]),
            (vec![(1, 0, 0), (3, 4, 0)], vec![(2, 2, 0), (2, 2, 0)]),
            (vec![(1, 0, 1), (3, 4, 0)], vec![(2, 2, 0), (2, 2, 1)]),
            (vec![(1, 0, 2), (3, 4, 0)], vec![(2, 2, 1), (2, 2, 1)]),
            (
                vec![(1, 1, 0), (2, 1, 2), (3, 4, 0)],
                vec![(2, 2, 0), (2, 2, 1), (2, 2, 1)],
            ),
            (vec![(2, 0, 4), (2, 2, 0)], vec![(2, 1, 2), (2, 1, 2)]),
        ];
        assert_eq!(sys.binomials().len(), expect.len());
        for (f, (plus, minus)) in sys.binomials().iter().zip(&expect) {
            assert_eq!(f.plus(), &wm(&wd, plus), "got {f}");
            assert_eq!(f.minus(), &wm(&wd, minus), "got {f}");
        }
        let rows = [
            [1, 0, 0, 0, -2, 0, 0, 1, 0, 0],
            [0, 1, 0, 0, 0, 0, 0, -2, 0, 1],
            [0, 0, 1, 0, 0, 0, 0, -1, -1, 1],
            [0, 0, 0, 1, 0, 0, 0, 0, -2, 1],
            [0, 0, 0, 0, 1, 0, 1, -1, -2, 1],
            [0, 0, 0, 0, 0, 1, -2, 1, 0, 0],
        ];
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                assert_eq!(sys.matrix()[(i, j)], Int::from(x), "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn basis_binomials_stay_at_degree_at_most_3() {
        for d in 4..=9 {
            let sys = build_basis(&Wd::new(d).unwrap()).unwrap();
            for f in sys.binomials() {
                assert!(f.degree() <= 3, "d={d}: ({f}) has degree {}", f.degree());
            }
        }
    }

    #[test]
    fn reduce_expresses_a_kernel_vector() {
        let wd = Wd::new(4).unwrap();
        let sys = build_basis(&wd).unwrap();
        // e(0,0,0) - 2 e(1,0,2) + e(2,0,4), a valid binomial vector:
        // w000 w204 - w102^2.
        let mut v = vec![Int::from(0); wd.mu()];
        v[wd.index_of(wd.w(0, 0, 0).unwrap()).unwrap()] = Int::from(1);
        v[wd.index_of(wd.w(1, 0, 2).unwrap()).unwrap()] = Int::from(-2);
        v[wd.index_of(wd.w(2, 0, 4).unwrap()).unwrap()] = Int::from(1);
        let coeffs = sys.reduce(&v).unwrap();
        let expect: Vec<Int> = [1, 0, 0, -2, 2, 1].iter().map(|&x| Int::from(x)).collect();
        assert_eq!(coeffs, expect);

        // A lone unit vector is not homogeneous, so it is outside.
        let mut bad = vec![Int::from(0); wd.mu()];
        bad[0] = Int::from(1);
        assert!(matches!(sys.reduce(&bad), Err(Error::Domain(_))));
        assert!(matches!(sys.reduce(&[Int::from(1)]), Err(Error::Domain(_))));
    }

    #[test]
    fn override_replaces_a_row() {
        let wd = Wd::new(4).unwrap();
        let mut config = BasisConfig::default();
        config.overrides.insert(
            wd.w(0, 0, 0).unwrap(),
            (
                wm(&wd, &[(0, 0, 0), (2, 0, 4)]),
                wm(&wd, &[(1, 0, 2), (1, 0, 2)]),
            ),
        );
        let sys = build_basis_with(&wd, &config).unwrap();
        assert_eq!(sys.binomials()[0].plus(), &wm(&wd, &[(0, 0, 0), (2, 0, 4)]));
        assert_eq!(sys.matrix()[(0, 3)], Int::from(-2));
    }

    #[test]
    fn override_errors_name_the_anchor() {
        let wd = Wd::new(4).unwrap();

        let mut config = BasisConfig::default();
        config.overrides.insert(
            Triple::new(3, 4, 0),
            (wm(&wd, &[(0, 0, 0)]), wm(&wd, &[(0, 0, 0)])),
        );
        let err = build_basis_with(&wd, &config).unwrap_err().to_string();
        assert!(err.contains("(3,4,0)"), "got: {err}");

        let mut config = BasisConfig::default();
        config.overrides.insert(
            wd.w(1, 0, 0).unwrap(),
            (
                wm(&wd, &[(1, 0, 0), (1, 0, 1)]),
                wm(&wd, &[(2, 2, 0), (2, 2, 0)]),
            ),
        );
        let err = build_basis_with(&wd, &config).unwrap_err().to_string();
        assert!(err.contains("anchor (1,0,0)"), "got: {err}");

        // Anchor appearing twice on the plus side.
        let mut config = BasisConfig::default();
        config.overrides.insert(
            wd.w(1, 0, 1).unwrap(),
            (
                wm(&wd, &[(1, 0, 1), (1, 0, 1)]),
                wm(&wd, &[(1, 0, 0), (1, 0, 2)]),
            ),
        );
        let err = build_basis_with(&wd, &config).unwrap_err().to_string();
        assert!(err.contains("anchor (1,0,1)"), "got: {err}");
    }

    #[test]
    fn search_agrees_with_validation() {
        // Every anchor must admit a searched binomial too, not just a recipe.
        for d in 4..=6 {
            let wd = Wd::new(d).unwrap();
            for anchor in anchors(&wd) {
                let f = search_special(&wd, anchor).expect("search must succeed");
                validate_special(&wd, anchor, f.plus().clone(), f.minus().clone())
                    .expect("searched binomial must validate");
            }
        }
    }

    #[test]
    fn excluded_top_slice_admits_no_special_binomial() {
        // The gamma-top weight-2 triple is excluded precisely because nothing
        // anchored there exists; the search confirms it.
        let wd = Wd::new(5).unwrap();
        let p = derive_params(5).unwrap();
        let top = Triple::new(2, 2 * p.kprime + 1, 0);
        assert!(search_special(&wd, top).is_none());
    }
}
