//! Line-oriented text documents for regions and schedules.
//!
//! Every line is `key value...`; lines starting with `#` are comments. All
//! numbers are exact rationals written `n` or `n/d`.
//!
//! Region document:
//!
//! ```text
//! # region
//! pmf PP=0 PD=1/2 DP=1/2 PN=0 NP=0 DD=0 DN=0 ND=0 NN=0
//! marginals 1/2 1/2 0
//! case A
//! subcase A1
//! ineq d1 <= 1
//! corner P1 (1,1/2)
//! vertex (0,0)
//! sum_dof 5/3
//! ```
//!
//! Schedule document:
//!
//! ```text
//! # schedule
//! pmf ...
//! target (1,1/2)
//! row S3/2-3 normal none 1 states=PN,NP
//! usage PP=0 PD=0 ...
//! achieved (1,1/2)
//! check state_usage pass residual=0
//! ```
//!
//! `row` fields are scheme id, role, discarded receivers, fraction and the
//! states the scheme runs on.

use std::fmt::Write as _;

use crate::catalog::{Role, SchemeId, SchemeRef};
use crate::compose::{
    corner_point, subcase_of, validate_schedule, Check, Corner, Discard, Schedule, ScheduleRow,
    Subcase, ValidationReport,
};
use crate::rational::{fmt_rational, parse_rational, Rational};
use crate::region::{
    case_of, region_from_pmf, sum_dof, DofPoint, DofRegion, Inequality, RegionCase,
};
use crate::state::{CsitState, LambdaPmf, Marginals};
use crate::Error;

#[derive(Debug, Clone, PartialEq)]
pub struct RegionDoc {
    pub pmf: LambdaPmf,
    pub marginals: Marginals,
    pub case: RegionCase,
    pub subcase: Subcase,
    pub region: DofRegion,
    pub corners: Vec<(Corner, DofPoint)>,
    pub vertices: Vec<DofPoint>,
    pub sum_dof: Rational,
}

impl RegionDoc {
    pub fn from_pmf(pmf: &LambdaPmf) -> RegionDoc {
        let m = pmf.marginals();
        let case = case_of(&m);
        let region = region_from_pmf(pmf);
        RegionDoc {
            pmf: pmf.clone(),
            corners: Corner::for_case(case)
                .into_iter()
                .map(|c| (c, corner_point(pmf, c)))
                .collect(),
            vertices: region.vertices(),
            sum_dof: sum_dof(&m),
            subcase: subcase_of(pmf),
            marginals: m,
            case,
            region,
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::from("# region\n");
        writeln!(out, "pmf {}", self.pmf.to_canonical_string()).unwrap();
        let m = &self.marginals;
        writeln!(
            out,
            "marginals {} {} {}",
            fmt_rational(&m.lambda_p),
            fmt_rational(&m.lambda_d),
            fmt_rational(&m.lambda_n)
        )
        .unwrap();
        writeln!(out, "case {}", self.case).unwrap();
        writeln!(out, "subcase {}", self.subcase).unwrap();
        for i in self.region.inequalities() {
            writeln!(out, "ineq {i}").unwrap();
        }
        for (c, p) in &self.corners {
            writeln!(out, "corner {c} {p}").unwrap();
        }
        for v in &self.vertices {
            writeln!(out, "vertex {v}").unwrap();
        }
        writeln!(out, "sum_dof {}", fmt_rational(&self.sum_dof)).unwrap();
        out
    }

    pub fn parse(text: &str) -> Result<RegionDoc, Error> {
        let mut pmf = None;
        let mut marginals = None;
        let mut case = None;
        let mut subcase = None;
        let mut ineqs = Vec::new();
        let mut corners = Vec::new();
        let mut vertices = Vec::new();
        let mut sum = None;
        for (key, rest) in lines(text) {
            match key {
                "pmf" => pmf = Some(LambdaPmf::parse(rest)?),
                "marginals" => {
                    let v = rest
                        .split_whitespace()
                        .map(parse_rational)
                        .collect::<Result<Vec<_>, _>>()?;
                    let [p, d, n]: [Rational; 3] = v
                        .try_into()
                        .map_err(|_| Error::Parse("marginals needs three values".into()))?;
                    marginals = Some(Marginals::new(p, d, n)?);
                }
                "case" => {
                    case = Some(match rest {
                        "A" => RegionCase::A,
                        "B" => RegionCase::B,
                        _ => return Err(Error::Parse(format!("unknown case {rest:?}"))),
                    })
                }
                "subcase" => subcase = Some(rest.parse()?),
                "ineq" => ineqs.push(rest.parse::<Inequality>()?),
                "corner" => {
                    let (c, p) = rest
                        .split_once(' ')
                        .ok_or_else(|| Error::Parse(format!("bad corner line {rest:?}")))?;
                    corners.push((c.parse()?, DofPoint::parse(p)?));
                }
                "vertex" => vertices.push(DofPoint::parse(rest)?),
                "sum_dof" => sum = Some(parse_rational(rest)?),
                _ => return Err(Error::Parse(format!("unexpected key {key:?}"))),
            }
        }
        Ok(RegionDoc {
            pmf: pmf.ok_or_else(|| missing("pmf"))?,
            marginals: marginals.ok_or_else(|| missing("marginals"))?,
            case: case.ok_or_else(|| missing("case"))?,
            subcase: subcase.ok_or_else(|| missing("subcase"))?,
            region: DofRegion::new(ineqs)?,
            corners,
            vertices,
            sum_dof: sum.ok_or_else(|| missing("sum_dof"))?,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScheduleDoc {
    pub pmf: LambdaPmf,
    pub target: DofPoint,
    pub schedule: Schedule,
    pub report: ValidationReport,
}

impl ScheduleDoc {
    pub fn new(pmf: &LambdaPmf, target: &DofPoint, schedule: Schedule) -> ScheduleDoc {
        ScheduleDoc {
            report: validate_schedule(pmf, &schedule, target),
            pmf: pmf.clone(),
            target: target.clone(),
            schedule,
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::from("# schedule\n");
        writeln!(out, "pmf {}", self.pmf.to_canonical_string()).unwrap();
        writeln!(out, "target {}", self.target).unwrap();
        for r in &self.schedule.rows {
            writeln!(out, "row {}", render_row(r)).unwrap();
        }
        let usage: Vec<String> = CsitState::ALL
            .iter()
            .zip(self.schedule.usage())
            .map(|(s, u)| format!("{s}={}", fmt_rational(&u)))
            .collect();
        writeln!(out, "usage {}", usage.join(" ")).unwrap();
        writeln!(out, "achieved {}", self.schedule.achieved()).unwrap();
        out.push_str(&self.report.to_string());
        out
    }

    /// Reads a schedule document back. The `usage`, `achieved` and `check`
    /// lines are recomputed from the rows and must agree with what was written.
    pub fn parse(text: &str) -> Result<ScheduleDoc, Error> {
        let mut pmf = None;
        let mut target = None;
        let mut rows = Vec::new();
        let mut achieved = None;
        let mut usage = None;
        let mut checks = Vec::new();
        for (key, rest) in lines(text) {
            match key {
                "pmf" => pmf = Some(LambdaPmf::parse(rest)?),
                "target" => target = Some(DofPoint::parse(rest)?),
                "row" => rows.push(parse_row(rest)?),
                "usage" => usage = Some(rest.to_string()),
                "achieved" => achieved = Some(DofPoint::parse(rest)?),
                "check" => checks.push(parse_check(rest)?),
                _ => return Err(Error::Parse(format!("unexpected key {key:?}"))),
            }
        }
        let pmf = pmf.ok_or_else(|| missing("pmf"))?;
        let target = target.ok_or_else(|| missing("target"))?;
        let doc = ScheduleDoc::new(&pmf, &target, Schedule::new(rows));
        if let Some(a) = achieved {
            if a != doc.schedule.achieved() {
                return Err(Error::Parse(format!(
                    "achieved {a} disagrees with rows ({})",
                    doc.schedule.achieved()
                )));
            }
        }
        if let Some(u) = usage {
            let written: Vec<&str> = u.split_whitespace().collect();
            let recomputed = doc.render();
            let line = recomputed
                .lines()
                .find_map(|l| l.strip_prefix("usage "))
                .unwrap_or_default();
            if written != line.split_whitespace().collect::<Vec<_>>() {
                return Err(Error::Parse("usage line disagrees with rows".into()));
            }
        }
        if !checks.is_empty() && checks != doc.report.checks {
            return Err(Error::Parse("check lines disagree with rows".into()));
        }
        Ok(doc)
    }
}

fn render_row(r: &ScheduleRow) -> String {
    let states: Vec<&str> = r.states.iter().map(|s| s.label()).collect();
    format!(
        "{} {} {} {} states={}",
        r.scheme.id,
        r.scheme.role.label(),
        r.discard.label(),
        fmt_rational(&r.fraction),
        states.join(",")
    )
}

fn parse_row(text: &str) -> Result<ScheduleRow, Error> {
    let f: Vec<&str> = text.split_whitespace().collect();
    let [id, role, discard, fraction, states] = f[..] else {
        return Err(Error::Parse(format!("bad row {text:?}")));
    };
    let states = states
        .strip_prefix("states=")
        .ok_or_else(|| Error::Parse(format!("bad row states {states:?}")))?
        .split(',')
        .map(str::parse)
        .collect::<Result<Vec<CsitState>, _>>()?;
    let scheme = SchemeRef::new(id.parse::<SchemeId>()?, role.parse::<Role>()?);
    ScheduleRow::new(
        scheme,
        parse_rational(fraction)?,
        states,
        discard.parse::<Discard>()?,
    )
}

fn parse_check(text: &str) -> Result<Check, Error> {
    let f: Vec<&str> = text.split_whitespace().collect();
    let [name, verdict, residual] = f[..] else {
        return Err(Error::Parse(format!("bad check {text:?}")));
    };
    let name = [
        crate::compose::CHECK_NONNEGATIVE,
        crate::compose::CHECK_SUM,
        crate::compose::CHECK_USAGE,
        crate::compose::CHECK_TARGET,
    ]
    .into_iter()
    .find(|n| *n == name)
    .ok_or_else(|| Error::Parse(format!("unknown check {name:?}")))?;
    let residual = residual
        .strip_prefix("residual=")
        .ok_or_else(|| Error::Parse(format!("bad residual {residual:?}")))?;
    Ok(Check {
        name,
        passed: verdict == "pass",
        residual: parse_rational(residual)?,
    })
}

fn lines(text: &str) -> impl Iterator<Item = (&str, &str)> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.split_once(' ').map_or((l, ""), |(k, v)| (k, v.trim())))
}

fn missing(key: &str) -> Error {
    Error::Parse(format!("missing {key} line"))
}
