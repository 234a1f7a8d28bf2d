//! CSIT states, state distributions and their marginals.

use std::fmt;
use std::str::FromStr;

use num::{Signed, Zero};

use crate::rational::{fmt_rational, parse_rational, Rational};
use crate::Error;

/// CSIT quality for a single receiver in a single slot.
///
/// Ordered by what the transmitter can do with it: perfect knowledge can
/// always stand in for delayed knowledge, and either can be ignored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Csit {
    None,
    Delayed,
    Perfect,
}

impl Csit {
    pub fn letter(self) -> char {
        match self {
            Csit::Perfect => 'P',
            Csit::Delayed => 'D',
            Csit::None => 'N',
        }
    }

    fn from_letter(c: char) -> Option<Csit> {
        match c {
            'P' => Some(Csit::Perfect),
            'D' => Some(Csit::Delayed),
            'N' => Some(Csit::None),
            _ => None,
        }
    }
}

/// Joint CSIT state `I1 I2`: the first letter is receiver 1, the second receiver 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CsitState {
    PP,
    PD,
    DP,
    PN,
    NP,
    DD,
    DN,
    ND,
    NN,
}

impl CsitState {
    pub const ALL: [CsitState; 9] = [
        CsitState::PP,
        CsitState::PD,
        CsitState::DP,
        CsitState::PN,
        CsitState::NP,
        CsitState::DD,
        CsitState::DN,
        CsitState::ND,
        CsitState::NN,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_parts(rx1: Csit, rx2: Csit) -> CsitState {
        use Csit::*;
        match (rx1, rx2) {
            (Perfect, Perfect) => CsitState::PP,
            (Perfect, Delayed) => CsitState::PD,
            (Delayed, Perfect) => CsitState::DP,
            (Perfect, None) => CsitState::PN,
            (None, Perfect) => CsitState::NP,
            (Delayed, Delayed) => CsitState::DD,
            (Delayed, None) => CsitState::DN,
            (None, Delayed) => CsitState::ND,
            (None, None) => CsitState::NN,
        }
    }

    pub fn rx1(self) -> Csit {
        self.parts().0
    }

    pub fn rx2(self) -> Csit {
        self.parts().1
    }

    /// CSIT for receiver `rx` (0 or 1).
    pub fn of(self, rx: usize) -> Csit {
        if rx == 0 {
            self.rx1()
        } else {
            self.rx2()
        }
    }

    pub fn parts(self) -> (Csit, Csit) {
        let label = self.label().as_bytes();
        (
            Csit::from_letter(label[0] as char).unwrap(),
            Csit::from_letter(label[1] as char).unwrap(),
        )
    }

    /// Exchanges the roles of the two receivers.
    pub fn swap(self) -> CsitState {
        let (a, b) = self.parts();
        CsitState::from_parts(b, a)
    }

    /// True when this state offers at least the CSIT `required` asks for, per receiver.
    pub fn dominates(self, required: CsitState) -> bool {
        self.rx1() >= required.rx1() && self.rx2() >= required.rx2()
    }

    pub fn label(self) -> &'static str {
        match self {
            CsitState::PP => "PP",
            CsitState::PD => "PD",
            CsitState::DP => "DP",
            CsitState::PN => "PN",
            CsitState::NP => "NP",
            CsitState::DD => "DD",
            CsitState::DN => "DN",
            CsitState::ND => "ND",
            CsitState::NN => "NN",
        }
    }
}

impl fmt::Display for CsitState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for CsitState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_uppercase();
        CsitState::ALL
            .iter()
            .copied()
            .find(|st| st.label() == t)
            .ok_or_else(|| Error::Parse(format!("unknown CSIT state {s:?}")))
    }
}

/// Fraction of time spent in each of the nine CSIT states.
///
/// Construction enforces nonnegativity, unit sum and the receiver symmetry
/// `PD = DP`, `PN = NP`, `DN = ND`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LambdaPmf {
    fractions: [Rational; 9],
}

impl LambdaPmf {
    pub fn new(fractions: [Rational; 9]) -> Result<Self, Error> {
        for st in CsitState::ALL {
            if fractions[st.index()].is_negative() {
                return Err(Error::InvalidPmf(format!("negative fraction for {st}")));
            }
            if fractions[st.index()] != fractions[st.swap().index()] {
                return Err(Error::InvalidPmf(format!(
                    "asymmetric fractions: {st}={} but {}={}",
                    fmt_rational(&fractions[st.index()]),
                    st.swap(),
                    fmt_rational(&fractions[st.swap().index()])
                )));
            }
        }
        let total: Rational = fractions.iter().sum();
        if total != crate::rational::one() {
            return Err(Error::InvalidPmf(format!(
                "fractions sum to {}, not 1",
                fmt_rational(&total)
            )));
        }
        Ok(LambdaPmf { fractions })
    }

    /// Builds from `(state, fraction)` pairs; unnamed states are zero.
    /// Repeated states accumulate.
    pub fn from_pairs<I>(pairs: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (CsitState, Rational)>,
    {
        let mut fractions: [Rational; 9] = Default::default();
        for (st, f) in pairs {
            fractions[st.index()] += f;
        }
        LambdaPmf::new(fractions)
    }

    /// Like [`LambdaPmf::from_pairs`] but a state given without its mirror is
    /// copied onto the mirror. Giving both with different values is an error.
    pub fn from_one_sided<I>(pairs: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (CsitState, Rational)>,
    {
        let mut given: [Option<Rational>; 9] = Default::default();
        for (st, f) in pairs {
            if given[st.index()].is_some() {
                return Err(Error::InvalidPmf(format!("state {st} given twice")));
            }
            given[st.index()] = Some(f);
        }
        let mut fractions: [Rational; 9] = Default::default();
        for st in CsitState::ALL {
            fractions[st.index()] = match (&given[st.index()], &given[st.swap().index()]) {
                (Some(a), _) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => Rational::zero(),
            };
        }
        LambdaPmf::new(fractions)
    }

    /// Parses `"PD=1/2, DD=1/5"`-style input with one-sided mirroring.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut pairs = Vec::new();
        for item in text.split(|c| c == ',' || c == ';' || char::is_whitespace(c)) {
            if item.is_empty() {
                continue;
            }
            let (k, v) = item
                .split_once('=')
                .or_else(|| item.split_once(':'))
                .ok_or_else(|| Error::Parse(format!("expected STATE=num/den, got {item:?}")))?;
            pairs.push((k.parse::<CsitState>()?, parse_rational(v)?));
        }
        LambdaPmf::from_one_sided(pairs)
    }

    pub fn get(&self, st: CsitState) -> &Rational {
        &self.fractions[st.index()]
    }

    pub fn fractions(&self) -> &[Rational; 9] {
        &self.fractions
    }

    pub fn marginals(&self) -> Marginals {
        marginals(self)
    }

    /// All nine fractions as `STATE=value` tokens in canonical order.
    pub fn to_canonical_string(&self) -> String {
        CsitState::ALL
            .iter()
            .map(|st| format!("{st}={}", fmt_rational(self.get(*st))))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Total fractions of perfect, delayed and absent CSIT seen by one receiver.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Marginals {
    pub lambda_p: Rational,
    pub lambda_d: Rational,
    pub lambda_n: Rational,
}

impl Marginals {
    pub fn new(lambda_p: Rational, lambda_d: Rational, lambda_n: Rational) -> Result<Self, Error> {
        if lambda_p.is_negative() || lambda_d.is_negative() || lambda_n.is_negative() {
            return Err(Error::InvalidPmf("negative marginal".into()));
        }
        if &lambda_p + &lambda_d + &lambda_n != crate::rational::one() {
            return Err(Error::InvalidPmf("marginals do not sum to 1".into()));
        }
        Ok(Marginals {
            lambda_p,
            lambda_d,
            lambda_n,
        })
    }

    /// `(lambda_p, lambda_d)` with `lambda_n = 1 - lambda_p - lambda_d`.
    pub fn from_pd(lambda_p: Rational, lambda_d: Rational) -> Result<Self, Error> {
        let lambda_n = crate::rational::one() - &lambda_p - &lambda_d;
        Marginals::new(lambda_p, lambda_d, lambda_n)
    }

    /// The three-state distribution `{PP: λP, DD: λD, NN: λN}` with these marginals.
    pub fn symmetric_pmf(&self) -> LambdaPmf {
        LambdaPmf::from_pairs([
            (CsitState::PP, self.lambda_p.clone()),
            (CsitState::DD, self.lambda_d.clone()),
            (CsitState::NN, self.lambda_n.clone()),
        ])
        .expect("marginals are a valid pmf")
    }
}

/// `λP = PP + PD + PN`, `λD = DD + PD + DN`, `λN = NN + PN + DN`.
pub fn marginals(pmf: &LambdaPmf) -> Marginals {
    use CsitState::*;
    let f = |s| pmf.get(s).clone();
    Marginals {
        lambda_p: f(PP) + f(PD) + f(PN),
        lambda_d: f(DD) + f(PD) + f(DN),
        lambda_n: f(NN) + f(PN) + f(DN),
    }
}
