//! Exact data behind the sum-DoF surface and the delayed/perfect CSIT tradeoff.

use std::fmt::Write as _;

use num::{Signed, Zero};

use crate::rational::{fmt_rational, one, Rational};
use crate::region::{min_csit, sum_dof};
use crate::state::Marginals;
use crate::Error;

fn check_step(step: &Rational) -> Result<(), Error> {
    if !step.is_positive() || *step > one() {
        return Err(Error::InvalidConfig(format!(
            "grid step {} must lie in (0, 1]",
            fmt_rational(step)
        )));
    }
    Ok(())
}

/// `(λD, λP, sum-DoF)` for every grid point with `λD + λP <= 1`, `λD`
/// outermost.
pub fn surface(step: &Rational) -> Result<Vec<(Rational, Rational, Rational)>, Error> {
    check_step(step)?;
    let mut out = Vec::new();
    let mut d = Rational::zero();
    while d <= one() {
        let mut p = Rational::zero();
        while &d + &p <= one() {
            let m = Marginals::from_pd(p.clone(), d.clone())?;
            out.push((d.clone(), p.clone(), sum_dof(&m)));
            p += step;
        }
        d += step;
    }
    Ok(out)
}

/// `(dof, λP_min, λD_min)` for `dof = from, from + step, ...` up to `to`.
pub fn tradeoff(
    from: &Rational,
    to: &Rational,
    step: &Rational,
) -> Result<Vec<(Rational, Rational, Rational)>, Error> {
    check_step(step)?;
    if from > to {
        return Err(Error::InvalidConfig("empty DoF range".into()));
    }
    let mut out = Vec::new();
    let mut x = from.clone();
    while x <= *to {
        let (p, d) = min_csit(&x)?;
        out.push((x.clone(), p, d));
        x += step;
    }
    Ok(out)
}

pub const SURFACE_HEADER: &str = "lambda_d,lambda_p,sum_dof";
pub const TRADEOFF_HEADER: &str = "dof,lambda_p_min,lambda_d_min";

pub fn triples_csv(header: &str, rows: &[(Rational, Rational, Rational)]) -> String {
    let mut out = format!("{header}\n");
    for (a, b, c) in rows {
        writeln!(
            out,
            "{},{},{}",
            fmt_rational(a),
            fmt_rational(b),
            fmt_rational(c)
        )
        .unwrap();
    }
    out
}

/// Reads back what [`triples_csv`] wrote.
pub fn parse_triples_csv(
    header: &str,
    text: &str,
) -> Result<Vec<(Rational, Rational, Rational)>, Error> {
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some(header) {
        return Err(Error::Parse(format!("expected header {header:?}")));
    }
    lines
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            let [a, b, c] = f[..] else {
                return Err(Error::Parse(format!("bad CSV line {l:?}")));
            };
            use crate::rational::parse_rational as p;
            Ok((p(a)?, p(b)?, p(c)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, q};

    #[test]
    fn surface_spot_values() {
        let rows = surface(&q(1, 30)).unwrap();
        assert_eq!(rows.len(), 31 * 32 / 2);
        let at = |d: Rational, p: Rational| {
            rows.iter()
                .find(|r| r.0 == d && r.1 == p)
                .unwrap()
                .2
                .clone()
        };
        assert_eq!(at(int(0), int(1)), int(2));
        assert_eq!(at(q(1, 3), int(0)), q(4, 3));
        assert_eq!(at(int(0), int(0)), int(1));
    }

    #[test]
    fn tradeoff_spot_values() {
        let rows = tradeoff(&int(1), &int(2), &q(1, 6)).unwrap();
        let at = |x: Rational| {
            rows.iter()
                .find(|r| r.0 == x)
                .map(|r| (r.1.clone(), r.2.clone()))
        };
        assert_eq!(at(q(3, 2)), Some((q(1, 4), q(1, 4))));
        assert_eq!(at(q(5, 3)), Some((q(1, 2), q(1, 6))));
        assert_eq!(at(int(1)), Some((int(0), int(0))));
        assert!(tradeoff(&int(0), &int(3), &q(1, 2)).is_err());
        assert!(surface(&int(0)).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let rows = tradeoff(&int(1), &int(2), &q(1, 60)).unwrap();
        let text = triples_csv(TRADEOFF_HEADER, &rows);
        assert_eq!(parse_triples_csv(TRADEOFF_HEADER, &text).unwrap(), rows);
    }
}
