//! Symbol-level execution of the constituent schemes.
//!
//! A trace records, for one channel draw, the transmit coefficient matrix
//! `X(t)` (2 antennas x all symbols) of every slot and the noiseless linear
//! combination each receiver observes. Symbols are ordered `u1..um1` (for
//! receiver 1) then `v1..vm2` (for receiver 2).
//!
//! Each slot's transmission is a sum of streams, a stream being an antenna
//! direction carrying a linear combination of symbols. Streams are scaled to
//! unit power and then share the slot's unit power budget equally.
//!
//! Retransmitted overheard combinations (anything built from an earlier
//! slot's received row) are reconstructed exactly.

use std::fmt::Write as _;

use nalgebra::{DMatrix, DVector, RowDVector};
use num::complex::Complex64;

use crate::catalog::{Role, SchemeId, SchemeRef, SchemeSpec};
use crate::channel::{norm, ChannelRealization, Vec2, DEGENERATE_NORM};
use crate::linalg::{rank, rank_at_scale, select_columns, spectral_norm};
use crate::state::{Csit, CsitState};
use crate::Error;

#[derive(Debug, Clone, PartialEq)]
pub struct SchemeTrace {
    pub scheme: SchemeRef,
    pub states: Vec<CsitState>,
    pub m1: usize,
    pub m2: usize,
    /// `X(t)` per slot, 2 x (m1 + m2).
    pub tx: Vec<DMatrix<Complex64>>,
    /// Row `t` is `H(t) X(t)`.
    pub rx1: DMatrix<Complex64>,
    /// Row `t` is `G(t) X(t)`.
    pub rx2: DMatrix<Complex64>,
}

impl SchemeTrace {
    pub fn slots(&self) -> usize {
        self.states.len()
    }

    pub fn symbols(&self) -> usize {
        self.m1 + self.m2
    }

    pub fn rx(&self, rx: usize) -> &DMatrix<Complex64> {
        if rx == 0 {
            &self.rx1
        } else {
            &self.rx2
        }
    }

    /// Columns of receiver `rx`'s observation carrying its own symbols.
    pub fn desired(&self, rx: usize) -> DMatrix<Complex64> {
        select_columns(self.rx(rx), self.own_columns(rx))
    }

    /// Columns of receiver `rx`'s observation carrying the other receiver's symbols.
    pub fn interference(&self, rx: usize) -> DMatrix<Complex64> {
        select_columns(self.rx(rx), self.own_columns(1 - rx))
    }

    fn own_columns(&self, rx: usize) -> std::ops::Range<usize> {
        if rx == 0 {
            0..self.m1
        } else {
            self.m1..self.m1 + self.m2
        }
    }

    /// Symbol count intended for receiver `rx`.
    pub fn wanted(&self, rx: usize) -> usize {
        if rx == 0 {
            self.m1
        } else {
            self.m2
        }
    }

    /// Rank of the interference block, with cancellations judged against
    /// the scale of the receiver's whole observation.
    pub fn interference_rank(&self, rx: usize) -> usize {
        rank_at_scale(&self.interference(rx), spectral_norm(self.rx(rx)))
    }

    /// Exchanges receivers: `u` and `v` swap places, as do `rx1` and `rx2`.
    fn swapped(self) -> SchemeTrace {
        let (m1, m2) = (self.m1, self.m2);
        let reorder = |m: &DMatrix<Complex64>| {
            let mut out = DMatrix::zeros(m.nrows(), m1 + m2);
            for j in 0..m2 {
                out.set_column(j, &m.column(m1 + j));
            }
            for j in 0..m1 {
                out.set_column(m2 + j, &m.column(j));
            }
            out
        };
        SchemeTrace {
            scheme: SchemeRef::new(self.scheme.id, self.scheme.role.flipped()),
            states: self.states.iter().map(|s| s.swap()).collect(),
            m1: m2,
            m2: m1,
            tx: self.tx.iter().map(reorder).collect(),
            rx1: reorder(&self.rx2),
            rx2: reorder(&self.rx1),
        }
    }

    /// One line per slot: `slot state x1=[..] x2=[..] y=[..] z=[..]`,
    /// preceded by two `#` header lines naming the scheme and the symbol columns.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "# scheme {} role {} slots {} m1 {} m2 {}",
            self.scheme.id,
            self.scheme.role.label(),
            self.slots(),
            self.m1,
            self.m2
        )
        .unwrap();
        let cols: Vec<String> = (1..=self.m1)
            .map(|i| format!("u{i}"))
            .chain((1..=self.m2).map(|i| format!("v{i}")))
            .collect();
        writeln!(out, "# columns {}", cols.join(" ")).unwrap();
        for t in 0..self.slots() {
            let row = |m: &DMatrix<Complex64>, r: usize| -> String {
                let entries: Vec<String> = (0..m.ncols()).map(|j| fmt_complex(m[(r, j)])).collect();
                format!("[{}]", entries.join(" "))
            };
            writeln!(
                out,
                "{} {} x1={} x2={} y={} z={}",
                t + 1,
                self.states[t],
                row(&self.tx[t], 0),
                row(&self.tx[t], 1),
                row(&self.rx1, t),
                row(&self.rx2, t)
            )
            .unwrap();
        }
        out
    }
}

fn fmt_complex(c: Complex64) -> String {
    let clean = |x: f64| if x.abs() < 5e-10 { 0.0 } else { x };
    format!("{:.9}{:+.9}i", clean(c.re), clean(c.im))
}

/// Whether the transmitter, while forming slot `at`, may use receiver `rx`'s
/// channel from slot `slot`: perfect CSIT is usable from its own slot on,
/// delayed CSIT only in strictly later slots, no CSIT never.
pub fn csit_permits(states: &[CsitState], at: usize, rx: usize, slot: usize) -> bool {
    match states[slot].of(rx) {
        Csit::Perfect => slot <= at,
        Csit::Delayed => slot < at,
        Csit::None => false,
    }
}

type Combo = RowDVector<Complex64>;

const E1: Vec2 = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
const E2: Vec2 = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];

struct Encoder<'a> {
    ch: &'a ChannelRealization,
    m1: usize,
    m2: usize,
    tx: Vec<DMatrix<Complex64>>,
}

impl<'a> Encoder<'a> {
    fn new(ch: &'a ChannelRealization, m1: usize, m2: usize) -> Self {
        Encoder {
            ch,
            m1,
            m2,
            tx: Vec::new(),
        }
    }

    fn unit(&self, col: usize) -> Combo {
        let mut c = Combo::zeros(self.m1 + self.m2);
        c[col] = Complex64::new(1.0, 0.0);
        c
    }

    fn u(&self, i: usize) -> Combo {
        self.unit(i - 1)
    }

    fn v(&self, i: usize) -> Combo {
        self.unit(self.m1 + i - 1)
    }

    fn u_part(&self, c: &Combo) -> Combo {
        let mut out = c.clone();
        out.columns_mut(self.m1, self.m2)
            .fill(Complex64::new(0.0, 0.0));
        out
    }

    fn v_part(&self, c: &Combo) -> Combo {
        let mut out = c.clone();
        out.columns_mut(0, self.m1).fill(Complex64::new(0.0, 0.0));
        out
    }

    /// Unit-norm direction `b` with `channel(rx, t) · b = 0`.
    fn zero_force(&self, rx: usize, t: usize) -> Result<Vec2, Error> {
        let h = self.ch.get(rx, t - 1);
        let n = norm(&h);
        if n < DEGENERATE_NORM {
            return Err(Error::DegenerateChannel(format!(
                "zero-forcing against a zero channel (receiver {}, slot {t})",
                rx + 1
            )));
        }
        Ok([h[1] / n, -h[0] / n])
    }

    /// What receiver `rx` heard (noiselessly) in the already-sent slot `t`.
    fn heard(&self, rx: usize, t: usize) -> Combo {
        let h = self.ch.get(rx, t - 1);
        let x = &self.tx[t - 1];
        x.row(0) * h[0] + x.row(1) * h[1]
    }

    fn send(&mut self, streams: &[(Vec2, Combo)]) -> Result<(), Error> {
        let share = 1.0 / (streams.len() as f64).sqrt();
        let mut x = DMatrix::zeros(2, self.m1 + self.m2);
        for (dir, combo) in streams {
            let dn = norm(dir);
            let cn = combo.norm();
            if dn < DEGENERATE_NORM || cn < DEGENERATE_NORM {
                return Err(Error::DegenerateChannel(format!(
                    "empty stream in slot {}",
                    self.tx.len() + 1
                )));
            }
            let scale = Complex64::new(share / (dn * cn), 0.0);
            let d = DVector::from_row_slice(dir);
            x += (d * combo) * scale;
        }
        self.tx.push(x);
        Ok(())
    }

    fn finish(self, spec: &SchemeSpec) -> SchemeTrace {
        let n = self.tx.len();
        debug_assert_eq!(n, spec.slots());
        let mut rx1 = DMatrix::zeros(n, self.m1 + self.m2);
        let mut rx2 = DMatrix::zeros(n, self.m1 + self.m2);
        for t in 1..=n {
            rx1.set_row(t - 1, &self.heard(0, t));
            rx2.set_row(t - 1, &self.heard(1, t));
        }
        SchemeTrace {
            scheme: spec.scheme_ref(),
            states: spec.state_per_slot.clone(),
            m1: self.m1,
            m2: self.m2,
            tx: self.tx,
            rx1,
            rx2,
        }
    }
}

const RX1: usize = 0;
const RX2: usize = 1;

/// Runs `scheme` over the first `slots` entries of `channels`.
pub fn build_trace(
    scheme: impl Into<SchemeRef>,
    channels: &ChannelRealization,
) -> Result<SchemeTrace, Error> {
    let scheme = scheme.into();
    let spec = scheme.spec();
    if channels.slots() < spec.slots() {
        return Err(Error::TooFewSlots {
            needed: spec.slots(),
            available: channels.slots(),
        });
    }
    match scheme.role {
        Role::Swapped => Ok(build_trace(scheme.id, &channels.swapped())?.swapped()),
        Role::Normal => match scheme.id.mirror_of() {
            Some(base) => {
                let t = build_trace(SchemeRef::new(base, Role::Swapped), channels)?;
                Ok(SchemeTrace { scheme, ..t })
            }
            None => build_native(scheme.id, &spec, channels),
        },
    }
}

fn build_native(
    id: SchemeId,
    spec: &SchemeSpec,
    ch: &ChannelRealization,
) -> Result<SchemeTrace, Error> {
    use SchemeId::*;
    let mut e = Encoder::new(ch, spec.m1, spec.m2);
    match id {
        S1 => {
            e.send(&[(E1, e.u(1))])?;
        }
        S2 => {
            let to_rx1 = e.zero_force(RX2, 1)?;
            let to_rx2 = e.zero_force(RX1, 1)?;
            e.send(&[(to_rx1, e.u(1)), (to_rx2, e.v(1))])?;
        }
        S43_1 => {
            e.send(&[(E1, e.u(1)), (E2, e.u(2))])?;
            e.send(&[(E1, e.v(1)), (E2, e.v(2))])?;
            // overheard at receiver 2 in slot 1 plus overheard at receiver 1 in slot 2
            let side = e.heard(RX2, 1) + e.heard(RX1, 2);
            e.send(&[(E1, side)])?;
        }
        S43_2 => {
            e.send(&[(E1, e.u(1) + e.v(1)), (E2, e.u(2) + e.v(2))])?;
            let a2 = e.u_part(&e.heard(RX2, 1));
            let b1 = e.v_part(&e.heard(RX1, 1));
            e.send(&[(E1, a2)])?;
            e.send(&[(E1, b1)])?;
        }
        S43_3 => {
            // DN, ND, DN: receiver 2's symbols go first
            let (first, second) = ([e.v(1), e.v(2)], [e.u(1), e.u(2)]);
            mat_block(&mut e, 1, first, second, RX1)?;
            // ND, DN, ND: receiver 1's symbols go first
            let (first, second) = ([e.u(3), e.u(4)], [e.v(3), e.v(4)]);
            mat_block(&mut e, 4, first, second, RX2)?;
        }
        S43_4 => {
            let (first, second) = ([e.v(1), e.v(2)], [e.u(1), e.u(2)]);
            mat_block(&mut e, 1, first, second, RX1)?;
        }
        S32_1 => {
            let b = e.zero_force(RX1, 1)?;
            e.send(&[(E1, e.u(1)), (E2, e.u(2)), (b, e.v(1))])?;
            let l2 = e.u_part(&e.heard(RX2, 1));
            e.send(&[(E1, l2)])?;
        }
        S32_3 => {
            let b1 = e.zero_force(RX1, 1)?;
            e.send(&[(E1, e.u(1)), (b1, e.v(1))])?;
            let b2 = e.zero_force(RX2, 2)?;
            e.send(&[(E1, e.u(1)), (b2, e.u(2))])?;
        }
        S32_5 => {
            e.send(&[(E1, e.u(1)), (E2, e.u(2))])?;
            let l2 = e.heard(RX2, 1);
            let b = e.zero_force(RX1, 2)?;
            e.send(&[(E1, l2), (b, e.v(1))])?;
        }
        S53_1 | S53_3 => {
            let b1 = e.zero_force(RX1, 1)?;
            e.send(&[(E1, e.u(1)), (E2, e.u(2)), (b1, e.v(1))])?;
            let l2 = e.u_part(&e.heard(RX2, 1));
            let b2 = e.zero_force(RX1, 2)?;
            e.send(&[(E1, l2.clone()), (b2, e.v(2))])?;
            let b3 = e.zero_force(RX2, 3)?;
            e.send(&[(E1, l2), (b3, e.u(3))])?;
        }
        S85 => {
            e.send(&[(E1, e.u(1) + e.v(1)), (E2, e.u(2) + e.v(2))])?;
            let b1 = e.v_part(&e.heard(RX1, 1));
            let a2 = e.u_part(&e.heard(RX2, 1));
            let s2 = e.zero_force(RX1, 2)?;
            e.send(&[(E1, b1.clone()), (s2, e.v(3))])?;
            let s3 = e.zero_force(RX2, 3)?;
            e.send(&[(E1, a2.clone()), (s3, e.u(3))])?;
            let s4 = e.zero_force(RX1, 4)?;
            e.send(&[(E1, a2), (s4, e.v(4))])?;
            let s5 = e.zero_force(RX2, 5)?;
            e.send(&[(E1, b1), (s5, e.u(4))])?;
        }
        S32_2 | S32_4 | S32_6 | S53_2 | S53_4 => {
            unreachable!("mirror schemes are built from their partner")
        }
    }
    Ok(e.finish(spec))
}

/// Three-slot retrospective block starting at slot `t0`: `first` goes out on
/// both antennas, then `second`, then the sum of what `first_listener`
/// overheard of `first` and what the other receiver overheard of `second`.
fn mat_block(
    e: &mut Encoder<'_>,
    t0: usize,
    first: [Combo; 2],
    second: [Combo; 2],
    first_listener: usize,
) -> Result<(), Error> {
    let [f1, f2] = first;
    let [s1, s2] = second;
    e.send(&[(E1, f1), (E2, f2)])?;
    e.send(&[(E1, s1), (E2, s2)])?;
    let side = e.heard(first_listener, t0) + e.heard(1 - first_listener, t0 + 1);
    e.send(&[(E1, side)])
}

/// Receiver `rx` can decode iff its own symbols are linearly independent
/// modulo the interference columns.
pub fn decodable_at(trace: &SchemeTrace, rx: usize) -> bool {
    let total = rank(trace.rx(rx));
    let interference = trace.interference_rank(rx);
    total - interference == trace.wanted(rx)
}

pub fn check_decodable(trace: &SchemeTrace) -> (bool, bool) {
    (decodable_at(trace, RX1), decodable_at(trace, RX2))
}
