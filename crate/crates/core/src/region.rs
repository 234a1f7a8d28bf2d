//! Exact DoF region of the two-user MISO broadcast channel with alternating CSIT.
//!
//! Everything here is rational arithmetic. A region is a short list of
//! half-planes `a·d1 + b·d2 <= c` on top of the implicit `d1, d2 >= 0`;
//! vertices are found by intersecting every pair of boundary lines, which is
//! plenty for at most seven constraints.

use std::fmt;

use num::{Signed, Zero};

use crate::rational::{fmt_rational, int, max_q, min_q, one, q, zero, Rational};
use crate::state::{CsitState, LambdaPmf, Marginals};
use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DofPoint {
    pub d1: Rational,
    pub d2: Rational,
}

impl DofPoint {
    pub fn new(d1: Rational, d2: Rational) -> Self {
        DofPoint { d1, d2 }
    }

    pub fn swapped(&self) -> DofPoint {
        DofPoint::new(self.d2.clone(), self.d1.clone())
    }

    pub fn sum(&self) -> Rational {
        &self.d1 + &self.d2
    }

    /// Parses `"(a,b)"` or `"a,b"`.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected d1,d2, got {text:?}")))?;
        Ok(DofPoint::new(
            crate::rational::parse_rational(a)?,
            crate::rational::parse_rational(b)?,
        ))
    }
}

impl fmt::Display for DofPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", fmt_rational(&self.d1), fmt_rational(&self.d2))
    }
}

/// `a·d1 + b·d2 <= c`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Inequality {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl Inequality {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        Inequality { a, b, c }
    }

    /// Scaled by the magnitude of the first nonzero coefficient. `None` for
    /// the degenerate `0·d1 + 0·d2 <= c`.
    fn normalized(&self) -> Option<Inequality> {
        let lead = if !self.a.is_zero() {
            self.a.abs()
        } else if !self.b.is_zero() {
            self.b.abs()
        } else {
            return None;
        };
        Some(Inequality::new(
            &self.a / &lead,
            &self.b / &lead,
            &self.c / &lead,
        ))
    }

    pub fn holds(&self, p: &DofPoint) -> bool {
        &self.a * &p.d1 + &self.b * &p.d2 <= self.c
    }

    pub fn is_tight(&self, p: &DofPoint) -> bool {
        &self.a * &p.d1 + &self.b * &p.d2 == self.c
    }

    /// Same inequality with the roles of `d1` and `d2` exchanged.
    pub fn swapped(&self) -> Inequality {
        Inequality::new(self.b.clone(), self.a.clone(), self.c.clone())
    }

    /// Smallest integer multiple, for display.
    pub fn integer_form(&self) -> (Rational, Rational, Rational) {
        let den = crate::rational::common_denominator([&self.a, &self.b, &self.c]);
        let s = Rational::from_integer(den);
        (&self.a * &s, &self.b * &s, &self.c * &s)
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b, c) = self.integer_form();
        let term = |k: &Rational, var: &str| -> Option<String> {
            if k.is_zero() {
                None
            } else if *k == one() {
                Some(var.to_string())
            } else if *k == -one() {
                Some(format!("-{var}"))
            } else {
                Some(format!("{}*{var}", fmt_rational(k)))
            }
        };
        let lhs: Vec<String> = [term(&a, "d1"), term(&b, "d2")]
            .into_iter()
            .flatten()
            .collect();
        write!(f, "{} <= {}", lhs.join(" + "), fmt_rational(&c))
    }
}

impl std::str::FromStr for Inequality {
    type Err = Error;

    /// Inverse of `Display`: `"2*d1 + d2 <= 3"`, `"d2 <= 1"`, `"-d1 <= 0"`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("bad inequality {s:?}"));
        let (lhs, rhs) = s.split_once("<=").ok_or_else(bad)?;
        let c = crate::rational::parse_rational(rhs)?;
        let (mut a, mut b) = (zero(), zero());
        for term in lhs.split('+') {
            let term = term.trim();
            let (coef, var) = match term.split_once('*') {
                Some((k, v)) => (crate::rational::parse_rational(k)?, v.trim()),
                None => match term.strip_prefix('-') {
                    Some(v) => (-one(), v.trim()),
                    None => (one(), term),
                },
            };
            match var {
                "d1" => a += coef,
                "d2" => b += coef,
                _ => return Err(bad()),
            }
        }
        Ok(Inequality::new(a, b, c))
    }
}

/// A DoF region in normalized form: every inequality scaled so its leading
/// coefficient has magnitude one, sorted, with `d1, d2 >= 0` implicit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DofRegion {
    inequalities: Vec<Inequality>,
}

impl DofRegion {
    /// Normalizes `inequalities`. Fails if the origin is excluded.
    pub fn new(inequalities: Vec<Inequality>) -> Result<Self, Error> {
        let mut out = Vec::with_capacity(inequalities.len());
        for ineq in inequalities {
            match ineq.normalized() {
                Some(n) => {
                    if n.c.is_negative() {
                        return Err(Error::InvalidRegion(format!("{ineq} excludes the origin")));
                    }
                    out.push(n);
                }
                None if ineq.c.is_negative() => {
                    return Err(Error::InvalidRegion(format!("{ineq} is infeasible")));
                }
                None => {}
            }
        }
        out.sort();
        Ok(DofRegion { inequalities: out })
    }

    pub fn inequalities(&self) -> &[Inequality] {
        &self.inequalities
    }

    pub fn contains(&self, p: &DofPoint) -> bool {
        contains(self, p)
    }

    /// Vertices of the region polygon sorted by `d1` then `d2`.
    pub fn vertices(&self) -> Vec<DofPoint> {
        vertices_of(&self.with_axes())
    }

    fn with_axes(&self) -> Vec<Inequality> {
        let mut all = self.inequalities.clone();
        all.push(Inequality::new(-one(), zero(), zero()));
        all.push(Inequality::new(zero(), -one(), zero()));
        all
    }

    /// Drops inequalities whose removal leaves the vertex set unchanged,
    /// one at a time until none is left to drop.
    pub fn irredundant(&self) -> DofRegion {
        let mut kept = self.inequalities.clone();
        kept.dedup();
        let base = self.vertices();
        'outer: loop {
            for i in 0..kept.len() {
                let mut trial = kept.clone();
                trial.remove(i);
                let trial_region = DofRegion {
                    inequalities: trial.clone(),
                };
                if trial_region.is_bounded() && trial_region.vertices() == base {
                    kept = trial;
                    continue 'outer;
                }
            }
            break;
        }
        DofRegion { inequalities: kept }
    }

    /// Bounded iff some constraint caps `d1` and some caps `d2` from above.
    fn is_bounded(&self) -> bool {
        let caps_d1 = self
            .inequalities
            .iter()
            .any(|i| i.a.is_positive() && !i.b.is_negative());
        let caps_d2 = self
            .inequalities
            .iter()
            .any(|i| i.b.is_positive() && !i.a.is_negative());
        caps_d1 && caps_d2
    }

    /// The mirror image under `d1 <-> d2`.
    pub fn swapped(&self) -> DofRegion {
        DofRegion::new(self.inequalities.iter().map(Inequality::swapped).collect())
            .expect("swapping keeps the origin feasible")
    }

    /// Largest `d1 + d2` over the region (attained at a vertex).
    pub fn max_sum(&self) -> Rational {
        self.vertices()
            .iter()
            .map(DofPoint::sum)
            .max()
            .unwrap_or_else(zero)
    }
}

fn vertices_of(constraints: &[Inequality]) -> Vec<DofPoint> {
    let mut pts = Vec::new();
    for i in 0..constraints.len() {
        for j in (i + 1)..constraints.len() {
            let (l1, l2) = (&constraints[i], &constraints[j]);
            let det = &l1.a * &l2.b - &l1.b * &l2.a;
            if det.is_zero() {
                continue;
            }
            let d1 = (&l1.c * &l2.b - &l1.b * &l2.c) / &det;
            let d2 = (&l1.a * &l2.c - &l1.c * &l2.a) / &det;
            let p = DofPoint::new(d1, d2);
            if constraints.iter().all(|c| c.holds(&p)) {
                pts.push(p);
            }
        }
    }
    pts.sort();
    pts.dedup();
    pts
}

/// Which shape the region takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionCase {
    /// `λN <= 2λD`: the sum bound is inactive and the symmetric apex `P0` is a vertex.
    A,
    /// `λN > 2λD`: the sum bound cuts the apex into `P1*` and `P2*`.
    B,
}

impl fmt::Display for RegionCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RegionCase::A => "A",
            RegionCase::B => "B",
        })
    }
}

fn five_bounds(weighted_sum_cap: Rational, sum_cap: Rational) -> DofRegion {
    DofRegion::new(vec![
        Inequality::new(one(), zero(), one()),
        Inequality::new(zero(), one(), one()),
        Inequality::new(one(), int(2), weighted_sum_cap.clone()),
        Inequality::new(int(2), one(), weighted_sum_cap),
        Inequality::new(one(), one(), sum_cap),
    ])
    .expect("caps are nonnegative")
}

/// The region in terms of the full nine-state distribution.
pub fn region_from_pmf(pmf: &LambdaPmf) -> DofRegion {
    use CsitState::*;
    let f = |s| pmf.get(s).clone();
    let weighted = int(2) + f(PP) + f(PD) + f(PN);
    let sum = one() + f(PP) + int(2) * f(PD) + f(DD) + f(PN) + f(DN);
    five_bounds(weighted, sum)
}

/// The same region written with marginals only.
pub fn region_from_marginals(m: &Marginals) -> DofRegion {
    let weighted = int(2) + &m.lambda_p;
    let sum = one() + &m.lambda_p + &m.lambda_d;
    five_bounds(weighted, sum)
}

/// Equality up to redundant constraints.
pub fn regions_equal(r1: &DofRegion, r2: &DofRegion) -> bool {
    r1.irredundant() == r2.irredundant()
}

pub fn contains(r: &DofRegion, p: &DofPoint) -> bool {
    !p.d1.is_negative() && !p.d2.is_negative() && r.inequalities.iter().all(|i| i.holds(p))
}

/// `min((4 + 2λP)/3, 1 + λP + λD)`.
pub fn sum_dof(m: &Marginals) -> Rational {
    let symmetric = (int(4) + int(2) * &m.lambda_p) / int(3);
    let sum_cap = one() + &m.lambda_p + &m.lambda_d;
    min_q(&symmetric, &sum_cap)
}

pub fn case_of(m: &Marginals) -> RegionCase {
    if m.lambda_n <= int(2) * &m.lambda_d {
        RegionCase::A
    } else {
        RegionCase::B
    }
}

/// All vertices of the region, deduplicated, sorted by `d1` then `d2`.
pub fn corner_points(m: &Marginals) -> Vec<DofPoint> {
    region_from_marginals(m).vertices()
}

/// `P1 = (1, λP)`.
pub fn p1(m: &Marginals) -> DofPoint {
    DofPoint::new(one(), m.lambda_p.clone())
}

/// `P0 = ((2 + λP)/3, (2 + λP)/3)`.
pub fn p0(m: &Marginals) -> DofPoint {
    let v = (int(2) + &m.lambda_p) / int(3);
    DofPoint::new(v.clone(), v)
}

/// `P1* = (1 - λD, λP + 2λD)`.
pub fn p1_star(m: &Marginals) -> DofPoint {
    DofPoint::new(one() - &m.lambda_d, &m.lambda_p + int(2) * &m.lambda_d)
}

/// Least marginal CSIT `(λP, λD)` achieving sum-DoF `dof`.
///
/// For `dof < 1` the answer is `(0, 0)`: no CSIT already gives one DoF.
pub fn min_csit(dof: &Rational) -> Result<(Rational, Rational), Error> {
    if dof.is_negative() || *dof > int(2) {
        return Err(Error::DofOutOfRange(fmt_rational(dof)));
    }
    if *dof >= q(4, 3) {
        Ok((q(3, 2) * dof - int(2), one() - dof / int(2)))
    } else {
        Ok((zero(), max_q(&(dof - one()), &zero())))
    }
}
