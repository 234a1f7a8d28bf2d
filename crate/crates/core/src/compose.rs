//! Time-sharing schedules over the constituent schemes.
//!
//! A schedule is a list of rows, each running one scheme for a fraction of
//! the total time on a specific sequence of CSIT states. A row may run on
//! states offering more CSIT than the scheme needs (extra knowledge is
//! simply ignored), which is how the corner tables soak up every state.
//!
//! Shorthand for the distribution entries used throughout:
//! `a = PP`, `b = PD = DP`, `c = PN = NP`, `e = DN = ND`, `f = DD`, `g = NN`.

use std::fmt;
use std::str::FromStr;

use num::{Signed, Zero};

use crate::catalog::{swap_roles, SchemeId, SchemeRef};
use crate::rational::{abs_q, fmt_rational, int, max_q, min_q, one, q, zero, Rational};
use crate::region::{case_of, p0, p1, p1_star, region_from_pmf, DofPoint, RegionCase};
use crate::state::{CsitState, LambdaPmf};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Subcase {
    A1,
    A2,
    A3,
    B1,
    B2,
    B3,
}

impl Subcase {
    pub const ALL: [Subcase; 6] = [
        Subcase::A1,
        Subcase::A2,
        Subcase::A3,
        Subcase::B1,
        Subcase::B2,
        Subcase::B3,
    ];

    pub fn case(self) -> RegionCase {
        match self {
            Subcase::A1 | Subcase::A2 | Subcase::A3 => RegionCase::A,
            _ => RegionCase::B,
        }
    }
}

impl fmt::Display for Subcase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Subcase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Subcase::ALL
            .into_iter()
            .find(|c| c.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown sub-case {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Corner {
    P0,
    P1,
    P2,
    P1star,
    P2star,
}

impl Corner {
    pub const ALL: [Corner; 5] = [
        Corner::P0,
        Corner::P1,
        Corner::P2,
        Corner::P1star,
        Corner::P2star,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Corner::P0 => "P0",
            Corner::P1 => "P1",
            Corner::P2 => "P2",
            Corner::P1star => "P1*",
            Corner::P2star => "P2*",
        }
    }

    /// Whether the corner is a vertex of regions of shape `case`.
    pub fn exists_in(self, case: RegionCase) -> bool {
        match self {
            Corner::P0 => case == RegionCase::A,
            Corner::P1star | Corner::P2star => case == RegionCase::B,
            Corner::P1 | Corner::P2 => true,
        }
    }

    /// Corners present in regions of shape `case`.
    pub fn for_case(case: RegionCase) -> Vec<Corner> {
        Corner::ALL
            .into_iter()
            .filter(|c| c.exists_in(case))
            .collect()
    }
}

impl fmt::Display for Corner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Corner {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim().to_ascii_lowercase().replace("star", "*");
        Corner::ALL
            .into_iter()
            .find(|c| c.label().to_ascii_lowercase() == t)
            .ok_or_else(|| Error::Parse(format!("unknown corner {s:?}")))
    }
}

/// Which receivers' symbols a row throws away.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Discard {
    #[default]
    None,
    Rx1,
    Rx2,
    Both,
}

impl Discard {
    pub fn drops(self, rx: usize) -> bool {
        matches!(
            (self, rx),
            (Discard::Both, _) | (Discard::Rx1, 0) | (Discard::Rx2, 1)
        )
    }

    pub fn swapped(self) -> Discard {
        match self {
            Discard::Rx1 => Discard::Rx2,
            Discard::Rx2 => Discard::Rx1,
            d => d,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Discard::None => "none",
            Discard::Rx1 => "rx1",
            Discard::Rx2 => "rx2",
            Discard::Both => "both",
        }
    }
}

impl FromStr for Discard {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        [Discard::None, Discard::Rx1, Discard::Rx2, Discard::Both]
            .into_iter()
            .find(|d| d.label() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown discard flag {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ScheduleRow {
    pub scheme: SchemeRef,
    pub fraction: Rational,
    /// The states the scheme actually runs on, one per scheme slot.
    pub states: Vec<CsitState>,
    pub discard: Discard,
}

impl ScheduleRow {
    /// Fails unless `states` has one entry per scheme slot and each entry
    /// offers at least the CSIT the scheme needs in that slot.
    pub fn new(
        scheme: impl Into<SchemeRef>,
        fraction: Rational,
        states: Vec<CsitState>,
        discard: Discard,
    ) -> Result<Self, Error> {
        let scheme = scheme.into();
        let need = scheme.spec().state_per_slot;
        if states.len() != need.len() {
            return Err(Error::InvalidSchedule(format!(
                "{scheme} runs over {} slots, got {} states",
                need.len(),
                states.len()
            )));
        }
        if let Some((have, want)) = states.iter().zip(&need).find(|(h, w)| !h.dominates(**w)) {
            return Err(Error::InvalidSchedule(format!(
                "{scheme} needs {want} but the row offers {have}"
            )));
        }
        Ok(ScheduleRow {
            scheme,
            fraction,
            states,
            discard,
        })
    }

    /// The scheme on exactly the states it asks for.
    pub fn native(scheme: impl Into<SchemeRef>, fraction: Rational) -> Self {
        let scheme = scheme.into();
        ScheduleRow {
            states: scheme.spec().state_per_slot,
            scheme,
            fraction,
            discard: Discard::None,
        }
    }

    pub fn swapped(&self) -> ScheduleRow {
        ScheduleRow {
            scheme: swap_roles(self.scheme),
            fraction: self.fraction.clone(),
            states: self.states.iter().map(|s| s.swap()).collect(),
            discard: self.discard.swapped(),
        }
    }

    /// Per-slot DoF delivered by the row, before weighting by its fraction.
    pub fn dof(&self) -> DofPoint {
        let p = self.scheme.spec().dof_pair();
        let keep = |rx: usize, v: Rational| if self.discard.drops(rx) { zero() } else { v };
        DofPoint::new(keep(0, p.d1), keep(1, p.d2))
    }

    /// Time share of each state consumed by the row, fraction included.
    pub fn usage(&self) -> [Rational; 9] {
        let mut out: [Rational; 9] = Default::default();
        let per_slot = &self.fraction / int(self.states.len() as i64);
        for s in &self.states {
            out[s.index()] += &per_slot;
        }
        out
    }

    fn same_kind(&self, other: &ScheduleRow) -> bool {
        self.scheme == other.scheme && self.states == other.states && self.discard == other.discard
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Schedule {
    pub rows: Vec<ScheduleRow>,
}

impl Schedule {
    pub fn new(rows: Vec<ScheduleRow>) -> Self {
        Schedule { rows }
    }

    pub fn usage(&self) -> [Rational; 9] {
        let mut out: [Rational; 9] = Default::default();
        for r in &self.rows {
            for (o, u) in out.iter_mut().zip(r.usage()) {
                *o += u;
            }
        }
        out
    }

    pub fn achieved(&self) -> DofPoint {
        let mut d1 = zero();
        let mut d2 = zero();
        for r in &self.rows {
            let p = r.dof();
            d1 += &r.fraction * p.d1;
            d2 += &r.fraction * p.d2;
        }
        DofPoint::new(d1, d2)
    }

    pub fn total_fraction(&self) -> Rational {
        self.rows.iter().map(|r| &r.fraction).sum()
    }

    /// Row-by-row receiver swap.
    pub fn swapped(&self) -> Schedule {
        Schedule::new(self.rows.iter().map(ScheduleRow::swapped).collect())
    }

    /// Drops zero-fraction rows and merges rows that differ only in fraction.
    pub fn pruned(&self) -> Schedule {
        let mut out: Vec<ScheduleRow> = Vec::new();
        for r in self.rows.iter().filter(|r| !r.fraction.is_zero()) {
            match out.iter_mut().find(|o| o.same_kind(r)) {
                Some(o) => o.fraction += &r.fraction,
                None => out.push(r.clone()),
            }
        }
        Schedule::new(out)
    }

    /// Least common denominator of the fractions; a block of this many
    /// time units gives every row a whole number of units.
    pub fn block_length(&self) -> num::BigInt {
        crate::rational::common_denominator(self.rows.iter().map(|r| &r.fraction))
    }
}

struct Entries {
    a: Rational,
    b: Rational,
    c: Rational,
    e: Rational,
    f: Rational,
    g: Rational,
}

fn entries(pmf: &LambdaPmf) -> Entries {
    use CsitState::*;
    Entries {
        a: pmf.get(PP).clone(),
        b: pmf.get(PD).clone(),
        c: pmf.get(PN).clone(),
        e: pmf.get(DN).clone(),
        f: pmf.get(DD).clone(),
        g: pmf.get(NN).clone(),
    }
}

/// Classifies `pmf` into one of the six achievability sub-cases by
/// comparing `g` with `2f`, `c` with `2b + e`, and `g + c` with `2f + 2b + e`.
pub fn subcase_of(pmf: &LambdaPmf) -> Subcase {
    let Entries { b, c, e, f, g, .. } = entries(pmf);
    let nn_low = g <= int(2) * &f;
    let pn_low = c <= int(2) * &b + &e;
    let sum_low = &g + &c <= int(2) * (&f + &b) + &e;
    match (nn_low, pn_low, sum_low) {
        (true, true, _) => Subcase::A1,
        (true, false, true) => Subcase::A2,
        (true, false, false) => Subcase::B2,
        (false, true, true) => Subcase::A3,
        (false, true, false) => Subcase::B3,
        (false, false, _) => Subcase::B1,
    }
}

/// Free variables of the sub-case tables; unused entries stay zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeVars {
    pub q1: Rational,
    pub q2: Rational,
    pub q3: Rational,
    pub q4: Rational,
}

impl Default for FreeVars {
    fn default() -> Self {
        FreeVars {
            q1: zero(),
            q2: zero(),
            q3: zero(),
            q4: zero(),
        }
    }
}

/// Deterministic solution of the sub-case's free-variable system:
/// greedy use of the PD-based schemes first, remainder to the rest.
pub fn solve_free_vars(pmf: &LambdaPmf, subcase: Subcase) -> Result<FreeVars, Error> {
    let Entries { b, c, f, g, .. } = entries(pmf);
    let two = int(2);
    let mut v = FreeVars::default();
    match subcase {
        Subcase::A1 => {
            v.q1 = min_q(&b, &(&c / &two));
            v.q2 = &two * (&c - &two * &v.q1);
        }
        Subcase::A3 => {
            v.q1 = min_q(&b, &(&c / &two));
            v.q2 = &two * (&c - &two * &v.q1);
            let excess_nn = max_q(&(&g - &two * &f), &zero());
            v.q3 = min_q(&excess_nn, &(&two * (&b - &v.q1)));
            v.q4 = &excess_nn - &v.q3;
        }
        Subcase::B3 => {
            v.q1 = min_q(&(int(3) * &b), &(q(3, 2) * &c));
            v.q2 = &two * (&c - &two * &v.q1 / int(3));
        }
        Subcase::A2 | Subcase::B1 | Subcase::B2 => {}
    }
    let violations = free_var_violations(pmf, subcase, &v);
    if violations.is_empty() {
        Ok(v)
    } else {
        Err(Error::InfeasibleSystem {
            subcase: subcase.to_string(),
            detail: violations.join("; "),
        })
    }
}

/// Constraints of `subcase`'s free-variable system that `v` breaks.
pub fn free_var_violations(pmf: &LambdaPmf, subcase: Subcase, v: &FreeVars) -> Vec<String> {
    let Entries { b, c, e, f, g, .. } = entries(pmf);
    let two = int(2);
    let mut bad = Vec::new();
    let mut need = |ok: bool, what: &str| {
        if !ok {
            bad.push(what.to_string());
        }
    };
    for (name, x) in [("q1", &v.q1), ("q2", &v.q2), ("q3", &v.q3), ("q4", &v.q4)] {
        need(!x.is_negative(), &format!("{name} >= 0"));
    }
    match subcase {
        Subcase::A1 => {
            need(&two * &v.q1 + &v.q2 / &two == c, "2q1 + q2/2 = PN");
            need(v.q1 <= b, "q1 <= PD");
            need(v.q2 <= &two * &e, "q2 <= 2DN");
        }
        Subcase::A3 => {
            need(&two * &v.q1 + &v.q2 / &two == c, "2q1 + q2/2 = PN");
            need(&v.q3 + &v.q4 == &g - &two * &f, "q3 + q4 = NN - 2DD");
            need(&v.q1 + &v.q3 / &two <= b, "q1 + q3/2 <= PD");
            need(&v.q2 + &two * &v.q4 <= &two * &e, "q2 + 2q4 <= 2DN");
        }
        Subcase::B3 => {
            need(
                &two * &v.q1 / int(3) + &v.q2 / &two == c,
                "2q1/3 + q2/2 = PN",
            );
            need(v.q1 <= int(3) * &b, "q1 <= 3PD");
            need(v.q2 <= &two * &e, "q2 <= 2DN");
        }
        Subcase::A2 | Subcase::B1 | Subcase::B2 => {
            need(*v == FreeVars::default(), "no free variables");
        }
    }
    bad
}

fn row(id: SchemeId, fraction: Rational, states: &[CsitState]) -> ScheduleRow {
    ScheduleRow::new(id, fraction, states.to_vec(), Discard::None)
        .expect("table rows run on states dominating the scheme's")
}

fn nat(id: SchemeId, fraction: Rational) -> ScheduleRow {
    ScheduleRow::native(id, fraction)
}

fn table_p1(x: &Entries) -> Vec<ScheduleRow> {
    use CsitState::*;
    use SchemeId::*;
    let two = int(2);
    vec![
        nat(S2, x.a.clone()),
        row(S32_1, &two * &x.b, &[PD, DP]),
        nat(S32_3, &two * &x.c),
        row(S1, x.e.clone(), &[DN]),
        row(S1, x.e.clone(), &[ND]),
        row(S1, x.f.clone(), &[DD]),
        nat(S1, x.g.clone()),
    ]
}

fn table_p0(x: &Entries, sub: Subcase, v: &FreeVars) -> Vec<ScheduleRow> {
    use SchemeId::*;
    let two = int(2);
    let three = int(3);
    let half = q(1, 2);
    match sub {
        Subcase::A1 => vec![
            nat(S2, x.a.clone()),
            nat(S53_1, &x.b - &v.q1),
            nat(S53_2, &x.b - &v.q1),
            nat(S53_3, &three * &v.q1),
            nat(S53_4, &three * &v.q1),
            nat(S32_5, v.q2.clone()),
            nat(S32_6, v.q2.clone()),
            nat(S43_1, &x.f - &x.g * &half),
            nat(S43_2, q(3, 2) * &x.g),
            nat(S43_3, &two * &x.e - &v.q2),
        ],
        Subcase::A2 => {
            let spill = &x.c - &two * &x.b - &x.e;
            vec![
                nat(S2, x.a.clone()),
                nat(S53_3, &three * &x.b),
                nat(S53_4, &three * &x.b),
                nat(S32_5, &two * &x.e),
                nat(S32_6, &two * &x.e),
                nat(S85, q(5, 2) * &spill),
                nat(S43_2, q(3, 2) * &x.g),
                nat(S43_1, &x.f - (&x.g + &spill) * &half),
            ]
        }
        Subcase::A3 => vec![
            nat(S2, x.a.clone()),
            nat(S53_1, &x.b - &v.q1 - &v.q3 * &half),
            nat(S53_2, &x.b - &v.q1 - &v.q3 * &half),
            nat(S53_3, &three * &v.q1),
            nat(S53_4, &three * &v.q1),
            nat(S32_1, v.q3.clone()),
            nat(S32_2, v.q3.clone()),
            nat(S32_5, v.q2.clone()),
            nat(S32_6, v.q2.clone()),
            nat(S43_2, &three * &x.f),
            nat(S43_4, &three * &v.q4),
            nat(S43_3, &two * &x.e - &v.q2 - &two * &v.q4),
        ],
        _ => unreachable!("P0 tables exist only for case A"),
    }
}

fn table_p1_star(x: &Entries, sub: Subcase, v: &FreeVars) -> Vec<ScheduleRow> {
    use SchemeId::*;
    let two = int(2);
    let three = int(3);
    match sub {
        Subcase::B1 => vec![
            nat(S2, x.a.clone()),
            nat(S53_3, &three * &x.b),
            nat(S53_4, &three * &x.b),
            nat(S32_5, &two * &x.e),
            nat(S32_6, &two * &x.e),
            nat(S32_3, &two * (&x.c - &two * &x.b - &x.e)),
            nat(S43_2, &three * &x.f),
            nat(S1, &x.g - &two * &x.f),
        ],
        Subcase::B2 => vec![
            nat(S2, x.a.clone()),
            nat(S53_3, &three * &x.b),
            nat(S53_4, &three * &x.b),
            nat(S32_5, &two * &x.e),
            nat(S32_6, &two * &x.e),
            nat(S43_2, q(3, 2) * &x.g),
            nat(S85, int(5) * (&x.f - &x.g / &two)),
            nat(
                S32_3,
                &two * (&x.g + &x.c - &two * &x.f - &two * &x.b - &x.e),
            ),
        ],
        Subcase::B3 => vec![
            nat(S2, x.a.clone()),
            nat(S53_3, v.q1.clone()),
            nat(S53_4, v.q1.clone()),
            nat(S32_5, v.q2.clone()),
            nat(S32_6, v.q2.clone()),
            nat(S32_1, &two * (&x.b - &v.q1 / &three)),
            nat(S32_2, &two * (&x.b - &v.q1 / &three)),
            nat(S43_2, &three * &x.f),
            nat(S43_4, &three * (&x.e - &v.q2 / &two)),
            nat(S1, &x.g + &x.c - &two * &x.f - &two * &x.b - &x.e),
        ],
        _ => unreachable!("P1* tables exist only for case B"),
    }
}

/// The corner-point schedule of the matching table, free variables substituted.
pub fn compose_corner(pmf: &LambdaPmf, corner: Corner) -> Result<Schedule, Error> {
    let case = case_of(&pmf.marginals());
    if !corner.exists_in(case) {
        return Err(Error::WrongCase {
            corner: corner.to_string(),
            case: case.to_string(),
        });
    }
    let x = entries(pmf);
    let sub = subcase_of(pmf);
    let rows = match corner {
        Corner::P1 => table_p1(&x),
        Corner::P2 => return Ok(compose_corner(pmf, Corner::P1)?.swapped()),
        Corner::P0 => table_p0(&x, sub, &solve_free_vars(pmf, sub)?),
        Corner::P1star => table_p1_star(&x, sub, &solve_free_vars(pmf, sub)?),
        Corner::P2star => return Ok(compose_corner(pmf, Corner::P1star)?.swapped()),
    };
    Ok(Schedule::new(rows))
}

/// A vertex of the region together with a schedule reaching it exactly.
fn vertex_schedules(pmf: &LambdaPmf) -> Result<Vec<(DofPoint, Schedule)>, Error> {
    let m = pmf.marginals();
    let with_discard = |s: Schedule, d: Discard| {
        Schedule::new(
            s.rows
                .into_iter()
                .map(|r| ScheduleRow { discard: d, ..r })
                .collect(),
        )
    };
    let p1_sched = compose_corner(pmf, Corner::P1)?;
    let p2_sched = compose_corner(pmf, Corner::P2)?;
    let mut known: Vec<(DofPoint, Schedule)> = Vec::new();
    match case_of(&m) {
        RegionCase::A => known.push((p0(&m), compose_corner(pmf, Corner::P0)?)),
        RegionCase::B => {
            let s = p1_star(&m);
            known.push((s.swapped(), compose_corner(pmf, Corner::P2star)?));
            known.push((s, compose_corner(pmf, Corner::P1star)?));
        }
    }
    let p = p1(&m);
    known.push((p.swapped(), p2_sched.clone()));
    known.push((p, p1_sched.clone()));
    known.push((
        DofPoint::new(zero(), zero()),
        with_discard(p1_sched.clone(), Discard::Both),
    ));
    known.push((
        DofPoint::new(one(), zero()),
        with_discard(p1_sched, Discard::Rx2),
    ));
    known.push((
        DofPoint::new(zero(), one()),
        with_discard(p2_sched, Discard::Rx1),
    ));

    region_from_pmf(pmf)
        .vertices()
        .into_iter()
        .map(|v| {
            known
                .iter()
                .find(|(p, _)| *p == v)
                .map(|(_, s)| (v.clone(), s.clone()))
                .ok_or_else(|| Error::InvalidSchedule(format!("no schedule for vertex {v}")))
        })
        .collect()
}

fn cross(a: &DofPoint, b: &DofPoint) -> Rational {
    &a.d1 * &b.d2 - &a.d2 * &b.d1
}

/// A schedule reaching `target` exactly: a convex combination of at most
/// three vertex schedules (a fan of triangles from the origin).
pub fn compose_point(pmf: &LambdaPmf, target: &DofPoint) -> Result<Schedule, Error> {
    if !region_from_pmf(pmf).contains(target) {
        return Err(Error::OutsideRegion(target.to_string()));
    }
    let mut verts = vertex_schedules(pmf)?;
    let origin_idx = verts
        .iter()
        .position(|(p, _)| p.d1.is_zero() && p.d2.is_zero())
        .expect("the origin is always a vertex");
    let (_, origin_sched) = verts.remove(origin_idx);
    verts.sort_by(|(a, _), (b, _)| zero().cmp(&cross(a, b)).then_with(|| a.cmp(b)));

    let mut mix: Vec<(Rational, &Schedule)> = vec![(one(), &origin_sched)];
    if !(target.d1.is_zero() && target.d2.is_zero()) {
        let tri = verts.windows(2).find_map(|w| {
            let (vi, vj) = (&w[0].0, &w[1].0);
            let det = cross(vi, vj);
            if det.is_zero() {
                return None;
            }
            let alpha = cross(target, vj) / &det;
            let beta = cross(vi, target) / &det;
            let inside = !alpha.is_negative() && !beta.is_negative() && &alpha + &beta <= one();
            inside.then(|| (alpha, beta, &w[0].1, &w[1].1))
        });
        let (alpha, beta, si, sj) = tri.ok_or_else(|| Error::OutsideRegion(target.to_string()))?;
        mix = vec![
            (one() - &alpha - &beta, &origin_sched),
            (alpha, si),
            (beta, sj),
        ];
    }

    let mut rows = Vec::new();
    for (w, s) in mix.into_iter().filter(|(w, _)| !w.is_zero()) {
        for r in &s.rows {
            rows.push(ScheduleRow {
                fraction: &r.fraction * &w,
                ..r.clone()
            });
        }
    }
    Ok(Schedule::new(rows).pruned())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    /// Zero on success; otherwise the size of the violation.
    pub residual: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "check {} {} residual={}",
                c.name,
                if c.passed { "pass" } else { "fail" },
                fmt_rational(&c.residual)
            )?;
        }
        Ok(())
    }
}

pub const CHECK_NONNEGATIVE: &str = "nonnegative";
pub const CHECK_SUM: &str = "sum_to_one";
pub const CHECK_USAGE: &str = "state_usage";
pub const CHECK_TARGET: &str = "achieved";

fn check(name: &'static str, residual: Rational) -> Check {
    Check {
        name,
        passed: residual.is_zero(),
        residual,
    }
}

pub fn validate_schedule(
    pmf: &LambdaPmf,
    schedule: &Schedule,
    target: &DofPoint,
) -> ValidationReport {
    let most_negative = schedule
        .rows
        .iter()
        .map(|r| &r.fraction)
        .filter(|f| f.is_negative())
        .map(abs_q)
        .max()
        .unwrap_or_else(zero);
    let sum_gap = abs_q(&(schedule.total_fraction() - one()));
    let usage_gap = schedule
        .usage()
        .iter()
        .zip(pmf.fractions())
        .map(|(u, p)| abs_q(&(u - p)))
        .max()
        .unwrap_or_else(zero);
    let got = schedule.achieved();
    let target_gap = max_q(
        &abs_q(&(&got.d1 - &target.d1)),
        &abs_q(&(&got.d2 - &target.d2)),
    );
    ValidationReport {
        checks: vec![
            check(CHECK_NONNEGATIVE, most_negative),
            check(CHECK_SUM, sum_gap),
            check(CHECK_USAGE, usage_gap),
            check(CHECK_TARGET, target_gap),
        ],
    }
}

/// Where the corner lies for `pmf`.
pub fn corner_point(pmf: &LambdaPmf, corner: Corner) -> DofPoint {
    let m = pmf.marginals();
    match corner {
        Corner::P0 => p0(&m),
        Corner::P1 => p1(&m),
        Corner::P2 => p1(&m).swapped(),
        Corner::P1star => p1_star(&m),
        Corner::P2star => p1_star(&m).swapped(),
    }
}
