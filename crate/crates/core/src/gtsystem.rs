//! Weight triples and monomials of a degree-`d` GT-system.
//!
//! For `d = 2k + eps = 3k' + rho` the system is indexed by the triple set
//!
//! ```text
//! W_d = { (r, gamma, delta) : 0 <= r <= 3,
//!                             0 <= gamma <= r k' + floor(r rho / 3),
//!                             max(0, (r-1)d - 2 gamma) <= delta <= floor((r d - 3 gamma)/2) }
//! ```
//!
//! and the triple `(r, gamma, delta)` corresponds to the monomial
//! `x^a y^b z^delta t^gamma` with `a = delta + 2 gamma + (1-r)d` and
//! `b = r d - 2 delta - 3 gamma`.  Everything below is plain integer
//! arithmetic on these bounds.

use crate::linalg::Matrix;
use crate::{Error, Int, IntMatrix, Result};

/// Parameters derived from the degree: `d = 2k + eps = 3k' + rho`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GtParams {
    pub d: i64,
    pub k: i64,
    /// `d mod 2`.
    pub eps: i64,
    pub kprime: i64,
    /// `d mod 3`.
    pub rho: i64,
}

/// A weight triple `(r, gamma, delta)`.
///
/// The derived `Ord` is the lexicographic order on `(r, gamma, delta)`, which
/// is the order used everywhere for indexing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub r: i64,
    pub gamma: i64,
    pub delta: i64,
}

impl Triple {
    pub fn new(r: i64, gamma: i64, delta: i64) -> Self {
        Triple { r, gamma, delta }
    }
}

impl std::fmt::Display for Triple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.r, self.gamma, self.delta)
    }
}

/// Exponents `(a, b, c, g)` of a monomial `x^a y^b z^c t^g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial4 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub g: i64,
}

impl std::fmt::Display for Monomial4 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let vars = [("x", self.a), ("y", self.b), ("z", self.c), ("t", self.g)];
        let mut first = true;
        for (name, e) in vars {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Splits `d` as `2k + eps = 3k' + rho`.  Only `d >= 4` is supported.
pub fn derive_params(d: i64) -> Result<GtParams> {
    if d < 4 {
        return Err(Error::Domain(format!("d must be >= 4, got {d}")));
    }
    Ok(GtParams {
        d,
        k: d / 2,
        eps: d % 2,
        kprime: d / 3,
        rho: d % 3,
    })
}

impl GtParams {
    pub fn new(d: i64) -> Result<Self> {
        derive_params(d)
    }

    /// Largest admissible `gamma` for weight `r`.
    pub fn gamma_max(&self, r: i64) -> i64 {
        r * self.kprime + (r * self.rho) / 3
    }

    /// Smallest admissible `delta` for `(r, gamma)`.
    pub fn delta_min(&self, r: i64, gamma: i64) -> i64 {
        ((r - 1) * self.d - 2 * gamma).max(0)
    }

    /// Largest admissible `delta` for `(r, gamma)`.  May be smaller than
    /// [`Self::delta_min`], in which case the `(r, gamma)` slice is empty.
    pub fn delta_max(&self, r: i64, gamma: i64) -> i64 {
        (r * self.d - 3 * gamma).div_euclid(2)
    }

    /// Membership test for `W_d`.
    pub fn contains(&self, t: Triple) -> bool {
        (0..=3).contains(&t.r)
            && t.gamma >= 0
            && t.gamma <= self.gamma_max(t.r)
            && t.delta >= self.delta_min(t.r, t.gamma)
            && t.delta <= self.delta_max(t.r, t.gamma)
    }
}

/// Enumerates `W_d` in lexicographic `(r, gamma, delta)` order.
pub fn enumerate_wd(p: &GtParams) -> Vec<Triple> {
    let mut out = Vec::new();
    for r in 0..=3 {
        for gamma in 0..=p.gamma_max(r) {
            let lo = p.delta_min(r, gamma);
            let hi = p.delta_max(r, gamma);
            for delta in lo..=hi {
                out.push(Triple::new(r, gamma, delta));
            }
        }
    }
    out
}

/// Maps a triple to its monomial exponents.
///
/// Errors with [`Error::Domain`] when the triple is not in `W_d`; the affine
/// formulas would otherwise happily produce negative exponents.
pub fn triple_to_monomial(p: &GtParams, t: Triple) -> Result<Monomial4> {
    if !p.contains(t) {
        return Err(Error::Domain(format!("triple {t} is not in W_{}", p.d)));
    }
    Ok(Monomial4 {
        a: t.delta + 2 * t.gamma + (1 - t.r) * p.d,
        b: t.r * p.d - 2 * t.delta - 3 * t.gamma,
        c: t.delta,
        g: t.gamma,
    })
}

/// Inverse of [`triple_to_monomial`] on the invariant monomials.
///
/// Expects `a + b + c + g = d` and `b + 2c + 3g ≡ 0 (mod d)` with all
/// exponents nonnegative; anything else is a domain error.
pub fn monomial_to_triple(p: &GtParams, m: Monomial4) -> Result<Triple> {
    if m.a < 0 || m.b < 0 || m.c < 0 || m.g < 0 || m.a + m.b + m.c + m.g != p.d {
        return Err(Error::Domain(format!(
            "({},{},{},{}) is not a degree-{} exponent vector",
            m.a, m.b, m.c, m.g, p.d
        )));
    }
    let w = m.b + 2 * m.c + 3 * m.g;
    if w % p.d != 0 {
        return Err(Error::Domain(format!(
            "monomial weight {w} is not a multiple of d = {}",
            p.d
        )));
    }
    let t = Triple::new(w / p.d, m.g, m.c);
    if !p.contains(t) {
        return Err(Error::Domain(format!("triple {t} is not in W_{}", p.d)));
    }
    Ok(t)
}

/// Number of monomials in the system, by summing the `delta` ranges instead
/// of materializing the triples.
pub fn mu_closed_form(p: &GtParams) -> i64 {
    // r = 0 and r = 3 contribute exactly one triple each.
    let mut mu = 2;
    for r in 1..=2 {
        for gamma in 0..=p.gamma_max(r) {
            mu += p.delta_max(r, gamma) - p.delta_min(r, gamma) + 1;
        }
    }
    mu
}

/// Checks `mu <= binom(d+2, 2)`, the count bound coming from the Galois
/// cover of degree d in P^3.  Returns `(mu, bound, mu <= bound)`.
pub fn check_gt_bound(p: &GtParams) -> (i64, i64, bool) {
    let mu = mu_closed_form(p);
    let bound = (p.d + 2) * (p.d + 1) / 2;
    (mu, bound, mu <= bound)
}

/// The 4 x mu matrix whose column for each triple holds the monomial
/// exponents `(a, b, c, g)`.  Every column sums to `d`.
pub fn exponent_matrix(p: &GtParams, triples: &[Triple]) -> Result<IntMatrix> {
    let mut cols = Vec::with_capacity(triples.len());
    for &t in triples {
        let m = triple_to_monomial(p, t)?;
        cols.push([m.a, m.b, m.c, m.g]);
    }
    Ok(Matrix::from_fn(4, triples.len(), |i, j| {
        Int::from(cols[j][i])
    }))
}

/// The 4 x mu matrix with rows `(1, r, gamma, delta)` per triple.  It has the
/// same integer kernel as [`exponent_matrix`]: the two row spaces differ by a
/// unimodular-over-Q change of grading.
pub fn grading_matrix(triples: &[Triple]) -> IntMatrix {
    Matrix::from_fn(4, triples.len(), |i, j| {
        let t = triples[j];
        Int::from(match i {
            0 => 1,
            1 => t.r,
            2 => t.gamma,
            _ => t.delta,
        })
    })
}
