//! Published average-fidelity expressions, transcribed as regression references.

use super::{AnalysisError, AnalysisResult};
use crate::noise::ChannelSpec;
use crate::protocol::Agent;

/// Denominator magnitude below which the collective-rotation expressions are
/// treated as singular.
pub const CR_SINGULAR: f64 = 1e-12;

/// Which printed reading of the Pauli Bob3 expression to evaluate.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum PauliBob3Reading {
    /// No overall prefactor, as printed.
    Printed,
    /// Divided by `(p1 + p2)² + (p3 + p4)²` like the Bob2 expression.
    Normalized,
}

/// Closed-form average fidelity. Bob1 uses the Bob3 expression.
pub fn closed_form(
    channel: &ChannelSpec,
    reconstructor: Agent,
    theta: f64,
    phi: f64,
) -> AnalysisResult<f64> {
    closed_form_with(
        channel,
        reconstructor,
        theta,
        phi,
        PauliBob3Reading::Printed,
    )
}

pub fn closed_form_with(
    channel: &ChannelSpec,
    reconstructor: Agent,
    theta: f64,
    phi: f64,
    reading: PauliBob3Reading,
) -> AnalysisResult<f64> {
    channel
        .validate()
        .map_err(|e| AnalysisError::BadParameter(e.to_string()))?;
    let higher = reconstructor == Agent::Bob2;
    Ok(match *channel {
        ChannelSpec::Ideal => 1.0,
        ChannelSpec::AmplitudeDamping(e) if higher => ad_bob2(e, theta, phi),
        ChannelSpec::AmplitudeDamping(e) => ad_bob3(e, theta, phi),
        ChannelSpec::PhaseDamping(e) if higher => pd_bob2(e, theta),
        ChannelSpec::PhaseDamping(e) => pd_bob3(e, theta),
        ChannelSpec::CollectiveDephasing(p) if higher => cd_bob2(p, theta),
        ChannelSpec::CollectiveDephasing(p) => cd_bob3(p, theta),
        ChannelSpec::CollectiveRotation(t) if higher => cr_bob2(t, theta, phi)?,
        ChannelSpec::CollectiveRotation(t) => cr_bob3(t, theta, phi)?,
        ChannelSpec::Pauli(p) if higher => pauli_bob2(p, theta, phi),
        ChannelSpec::Pauli(p) => {
            let raw = pauli_bob3_printed(p, theta, phi);
            match reading {
                PauliBob3Reading::Printed => raw,
                PauliBob3Reading::Normalized => raw / pauli_norm(p),
            }
        }
    })
}

fn sq(x: f64) -> f64 {
    x * x
}

pub fn ad_bob2(e: f64, t: f64, f: f64) -> f64 {
    let (c, s) = (t.cos(), t.sin());
    let q = e * e - e + 2.0;
    (q * s.powi(4) + q * c.powi(4)
        - 2.0
            * sq(s)
            * sq(c)
            * (e.powi(3) + (e - 1.0) * e * e * (2.0 * f).cos() - 2.0 * e * e + e - 2.0))
        / (2.0 * (e * e + 1.0))
}

pub fn ad_bob3(e: f64, t: f64, f: f64) -> f64 {
    let (c, s) = (t.cos(), t.sin());
    let r = (1.0 - e).sqrt();
    (sq(s)
        * sq(c)
        * (-r * e * e + (1.0 - e).powf(1.5) * e * (2.0 * f).cos() - r * e + 2.0 * e + 2.0 * r)
        + s.powi(4)
        + c.powi(4))
        / (e + 1.0)
}

pub fn pd_bob2(e: f64, t: f64) -> f64 {
    (e * e - (e - 2.0) * e * (4.0 * t).cos() - 2.0 * e + 4.0) / 4.0
}

pub fn pd_bob3(e: f64, t: f64) -> f64 {
    (-e.powi(3) + (e * e - 3.0 * e + 3.0) * e * (4.0 * t).cos() + 3.0 * e * e - 3.0 * e + 4.0) / 4.0
}

pub fn cd_bob2(p: f64, t: f64) -> f64 {
    (-(4.0 * t - 2.0 * p).cos() - (4.0 * t + 2.0 * p).cos()
        + 2.0 * (4.0 * t).cos()
        + 2.0 * (2.0 * p).cos()
        + 14.0)
        / 16.0
}

pub fn cd_bob3(p: f64, t: f64) -> f64 {
    let (c, s) = (t.cos(), t.sin());
    sq(s) * sq(c) * (p.cos() + (3.0 * p).cos()) + s.powi(4) + c.powi(4)
}

fn pauli_norm(p: [f64; 4]) -> f64 {
    sq(p[0] + p[1]) + sq(p[2] + p[3])
}

pub fn pauli_bob2(p: [f64; 4], t: f64, f: f64) -> f64 {
    let [p1, p2, p3, p4] = p;
    let (c, s) = (t.cos(), t.sin());
    let s34 = p3 + p4;
    let quad = p1 * p1 + p2 * p2 + p1 * (2.0 * p2 - p3 - p4) - p2 * s34 + s34 * s34;
    let mid = p3.powi(4) - p1.powi(3) * (p3 - 3.0 * p4)
        + p2.powi(3) * (3.0 * p3 - p4)
        + p4.powi(4)
        + p2 * s34.powi(3)
        + 3.0 * p2 * p2 * (p3 * p3 + p4 * p4)
        + p1 * (p2 * p2 * p4 + s34.powi(3))
        + p1 * p1 * (p2 * p3 + 3.0 * (p3 * p3 + p4 * p4))
        + (p1.powi(4) + p1 * p1 * (-2.0 * p2 * p2 + sq(p3 - p4))
            - 2.0 * p1 * (p3 - p4) * (p2 * (p4 - p3) + s34 * s34)
            + p2 * (p2.powi(3) + p2 * sq(p3 - p4) + 2.0 * (p3 - p4) * s34 * s34))
            * (2.0 * f).cos();
    let last = 0.5
        * (p1 * p1 * (5.0 * p2 + 6.0 * p3) * p4 - 2.0 * p3 * p4 * (-3.0 * p2 * p2 + p3 * p4)
            + p1 * p2 * (5.0 * p2 * p3 + 2.0 * s34 * s34));
    (quad * c.powi(4) + 2.0 * c * c * mid * s * s + quad * s.powi(4) + last * sq((2.0 * t).sin()))
        / pauli_norm(p)
}

pub fn pauli_bob3_printed(p: [f64; 4], t: f64, f: f64) -> f64 {
    let [p1, p2, p3, p4] = p;
    let (c, s) = (t.cos(), t.sin());
    let d = pauli_norm(p);
    let mid = p3 * (p1.powi(3) - sq(p2 - p3) * (p2 + p3) + p1 * (11.0 * p2 * p2 + 3.0 * p3 * p3))
        + p2 * (p1 * p1 + 3.0 * p2 * p2) * p4
        + 3.0 * p2 * p2 * p4 * p4
        + (3.0 * p1 + p2) * p4.powi(3)
        + p4.powi(4)
        + (p1 - p2 - p3 + p4)
            * (p1.powi(3) - p1 * p1 * p2 + p2 * (p2 * p2 + (p3 - p4) * (3.0 * p3 + p4))
                - p1 * (p2 * p2 + (p3 - p4) * (p3 + 3.0 * p4)))
            * (2.0 * f).cos();
    let last = 0.5
        * (5.0 * p1.powi(3) * p4
            + p1 * p1 * (5.0 * p3 * (p2 + p3) + 4.0 * p3 * p4 + 7.0 * p4 * p4)
            + p3 * p4 * (12.0 * p2 * p2 + 7.0 * p2 * (p3 + p4) + 2.0 * (p3 - p4) * (p3 + p4))
            + p1 * (7.0 * p2 * p2 * p4
                + 5.0 * p3 * p4 * (p3 + p4)
                + 2.0 * p2 * (p3 + p4) * (5.0 * p3 + 3.0 * p4)));
    d * c.powi(4) + 2.0 * c * c * mid * s * s + d * s.powi(4) + last * sq((2.0 * t).sin())
}

fn singular(which: &'static str, den: f64) -> AnalysisError {
    AnalysisError::CrFormulaSingularity {
        term: which,
        denominator: den,
    }
}

pub fn cr_bob2(big: f64, t: f64, f: f64) -> AnalysisResult<f64> {
    let cos = f64::cos;
    let (c_t, s_t) = (t.cos(), t.sin());
    let den = 8.0
        * (sq(3.0 + cos(4.0 * big))
            - 4.0
                * sq(big.cos())
                * sq(cos(4.0 * big - 2.0 * t) + 3.0 * cos(2.0 * t))
                * sq(f.cos())
                * sq(big.sin()));
    if den.abs() < CR_SINGULAR {
        return Err(singular("bob2", den));
    }
    let k = (3.0 + sq(cos(4.0 * big))) * (5.0 + 3.0 * cos(4.0 * big));
    let long = 42.0
        + 88.0 * cos(2.0 * big)
        + 36.0 * cos(4.0 * big)
        + 23.0 * cos(6.0 * big)
        + 2.0 * cos(8.0 * big)
        + cos(10.0 * big)
        + 9.0 * cos(6.0 * big - 4.0 * t)
        + 4.0 * cos(8.0 * big - 4.0 * t)
        + 2.0 * cos(10.0 * big - 4.0 * t)
        + 7.0 * cos(2.0 * (big - 2.0 * t))
        + 18.0 * cos(4.0 * (big - t))
        + 24.0 * cos(4.0 * t)
        + 2.0 * cos(4.0 * (big + t))
        - cos(2.0 * (big + 2.0 * t))
        - cos(6.0 * big + 4.0 * t);
    let w = 5.0 * cos(2.0 * big) + cos(6.0 * big);
    let s2b3 = (2.0 * big).sin().powi(3);
    let num =
        k * c_t.powi(4) - long * cos(2.0 * f) * sq(big.sin()) - 16.0 * w * c_t.powi(3) * s2b3 * s_t
            + 2.0
                * sq(big.cos())
                * (78.0 + 14.0 * cos(2.0 * big) + 40.0 * cos(4.0 * big) - 9.0 * cos(6.0 * big)
                    + 10.0 * cos(8.0 * big)
                    - 5.0 * cos(10.0 * big))
                * sq(c_t)
                * sq(s_t)
            + 16.0 * w * c_t * s2b3 * s_t.powi(3)
            + k * s_t.powi(4);
    Ok(num / den)
}

/// Signs of the shared denominator pattern of the eight Bob3 terms.
struct DenSigns {
    k: f64,
    a: [f64; 8],
    b: f64,
    c: f64,
}

fn cr_den(s: &DenSigns, big: f64, t: f64, f: f64) -> f64 {
    let cos = f64::cos;
    let sin = f64::sin;
    let cos_terms = [
        cos(2.0 * big - f),
        cos(6.0 * big - f),
        cos(4.0 * big - 2.0 * t - f),
        cos(4.0 * big + 2.0 * t - f),
        cos(2.0 * big + f),
        cos(6.0 * big + f),
        cos(4.0 * big - 2.0 * t + f),
        cos(4.0 * big + 2.0 * t + f),
    ];
    let sin_pair = sin(4.0 * big - 2.0 * t) + sin(4.0 * big + 2.0 * t);
    let sin_quad = sin(2.0 * big - 2.0 * t - f)
        + sin(2.0 * big + 2.0 * t - f)
        + sin(2.0 * big - 2.0 * t + f)
        + sin(2.0 * big + 2.0 * t + f);
    s.k + s.a.iter().zip(cos_terms).map(|(a, x)| a * x).sum::<f64>()
        + 2.0 * s.b * sin_pair
        + 2.0 * s.c * sin_quad
}

/// Trigonometric values shared by the eight Bob3 numerators.
struct Trig {
    ct: f64,
    st: f64,
    cf: f64,
    c2f: f64,
    sf: f64,
    ch: f64,
    sh: f64,
    c2t: f64,
    s2t: f64,
    c4t: f64,
    s4t: f64,
    c4tm: f64,
    c4tp: f64,
    s4tm: f64,
    s4tp: f64,
    // powers of cos Θ and sin Θ
    c_b: [f64; 9],
    s_b: [f64; 9],
    head: f64,
    tail: f64,
}

impl Trig {
    fn new(big: f64, t: f64, f: f64) -> Self {
        let (ct, st) = (t.cos(), t.sin());
        let c_b: [f64; 9] = std::array::from_fn(|i| big.cos().powi(i as i32));
        let s_b: [f64; 9] = std::array::from_fn(|i| big.sin().powi(i as i32));
        let c2f = (2.0 * f).cos();
        let head = c_b[8] + ct.powi(4) * s_b[8] - 2.0 * ct * ct * c2f * s_b[8] * st * st
            + s_b[8] * st.powi(4);
        let tail = 3.0 / 32.0 * (2.0 * big).sin().powi(4);
        Self {
            ct,
            st,
            cf: f.cos(),
            c2f,
            sf: f.sin(),
            ch: sq((f / 2.0).cos()),
            sh: sq((f / 2.0).sin()),
            c2t: (2.0 * t).cos(),
            s2t: (2.0 * t).sin(),
            c4t: (4.0 * t).cos(),
            s4t: (4.0 * t).sin(),
            c4tm: (4.0 * t - f).cos(),
            c4tp: (4.0 * t + f).cos(),
            s4tm: (4.0 * t - f).sin(),
            s4tp: (4.0 * t + f).sin(),
            c_b,
            s_b,
            head,
            tail,
        }
    }
}

fn num_a(g: &Trig) -> f64 {
    let Trig {
        ct,
        st,
        cf,
        c2f,
        sf,
        sh,
        c2t,
        s2t,
        c4t,
        s4t,
        c4tm,
        c4tp,
        s4tm,
        s4tp,
        c_b,
        s_b,
        ..
    } = *g;
    let ch = g.ch;
    g.head
        + 2.0
            * c_b[4]
            * s_b[4]
            * (ct.powi(4)
                + 2.0 * ct.powi(3) * (1.0 - 4.0 * cf + c2f) * st
                + ct * ct * c2f * st * st
                - 4.0 * ct * cf * cf * st.powi(3)
                + st.powi(4))
        + 2.0
            * c_b[2]
            * s_b[6]
            * (2.0 * ct.powi(4) * cf - 4.0 * ct.powi(3) * cf * cf * st
                + ct * ct * (3.0 + c2f) * st * st
                - 4.0 * ct * cf * st.powi(3)
                + 4.0 * ch * st.powi(4))
        + c_b[1] * c2t * s_b[7] * (-2.0 + 2.0 * cf * (-1.0 + s2t))
        + g.tail * s2t * s2t
        + 2.0 * c_b[7] * s_b[1] * (-ct * ct * (-1.0 + cf) + (-1.0 + cf) * st * st + cf * s2t)
        - 4.0
            * c_b[6]
            * s_b[2]
            * (ct.powi(4) * (-1.0 + cf) + cf * st.powi(4) + 4.0 * ct * cf * st.powi(3) * sh
                - ct * ct * st * st * sf * sf)
        + c_b[3]
            * s_b[5]
            * (-2.0 * c2t * (1.0 + cf)
                + cf * (2.0 + 2.0 * c4t - c4tm + 2.0 * cf - c4tp - 2.0 * s2t + s4tm + s4tp))
        + c_b[5]
            * s_b[3]
            * (-2.0 * c2t * (-1.0 + cf)
                + cf * (-2.0 - 2.0 * c4t + c4tm - 2.0 * cf + c4tp - s4t + s4tm + s4tp))
}

fn num_b(g: &Trig) -> f64 {
    let Trig {
        ct,
        st,
        cf,
        c2f,
        sf,
        ch,
        c2t,
        s2t,
        c4t,
        s4t,
        c4tm,
        c4tp,
        s4tm,
        s4tp,
        c_b,
        s_b,
        ..
    } = *g;
    g.head
        + 2.0 * c_b[7] * s_b[1] * (ct * ct * (1.0 + cf) - 2.0 * ct * cf * st - (1.0 + cf) * st * st)
        + 2.0
            * c_b[4]
            * s_b[4]
            * (ct.powi(4)
                + 2.0 * ct.powi(3) * (1.0 + 4.0 * cf + c2f) * st
                + ct * ct * c2f * st * st
                - 4.0 * ct * cf * cf * st.powi(3)
                + st.powi(4))
        + 2.0
            * c_b[2]
            * s_b[6]
            * (-2.0 * ct.powi(4) * cf - 4.0 * ct.powi(3) * cf * cf * st
                + ct * ct * (3.0 + c2f) * st * st
                + 4.0 * ct * cf * st.powi(3)
                - 2.0 * (-1.0 + cf) * st.powi(4))
        - c_b[1] * c2t * s_b[7] * (2.0 + 2.0 * cf * (-1.0 + s2t))
        + g.tail * s2t * s2t
        + 4.0
            * c_b[6]
            * s_b[2]
            * (ct.powi(4) * (1.0 + cf)
                + 4.0 * ct * ch * cf * st.powi(3)
                + cf * st.powi(4)
                + ct * ct * st * st * sf * sf)
        + c_b[3]
            * s_b[5]
            * (2.0 * c2t * (-1.0 + cf)
                + cf * (-2.0 - 2.0 * c4t - c4tm + 2.0 * cf - c4tp + 2.0 * s2t + s4tm + s4tp))
        + c_b[5]
            * s_b[3]
            * (2.0 * c2t * (1.0 + cf)
                + cf * (2.0 + 2.0 * c4t + c4tm - 2.0 * cf + c4tp + s4t + s4tm + s4tp))
}

fn num_c(g: &Trig) -> f64 {
    let Trig {
        ct,
        st,
        cf,
        c2f,
        sf,
        ch,
        c2t,
        s2t,
        c4t,
        s4t,
        c4tm,
        c4tp,
        s4tm,
        s4tp,
        c_b,
        s_b,
        ..
    } = *g;
    g.head
        - 2.0 * c_b[7] * s_b[1] * (ct * ct * (1.0 + cf) - 2.0 * ct * cf * st - (1.0 + cf) * st * st)
        + 2.0
            * c_b[4]
            * s_b[4]
            * (ct.powi(4) + 4.0 * ct.powi(3) * cf * cf * st + ct * ct * c2f * st * st
                - 2.0 * ct * (1.0 + 4.0 * cf + c2f) * st.powi(3)
                + st.powi(4))
        + 2.0
            * c_b[2]
            * s_b[6]
            * (-2.0 * ct.powi(4) * (-1.0 + cf) - 4.0 * ct.powi(3) * cf * st
                + ct * ct * (3.0 + c2f) * st * st
                + 4.0 * ct * cf * cf * st.powi(3)
                - 2.0 * cf * st.powi(4))
        + g.tail * s2t * s2t
        - 2.0 * c_b[1] * c2t * s_b[7] * (-1.0 + cf * (1.0 + s2t))
        + 4.0
            * c_b[6]
            * s_b[2]
            * (ct.powi(4) * cf - 4.0 * ct.powi(3) * ch * cf * st
                + 2.0 * ch * st.powi(4)
                + ct * ct * st * st * sf * sf)
        - c_b[3]
            * s_b[5]
            * (2.0 * c2t * (-1.0 + cf)
                + cf * (2.0 + 2.0 * c4t + c4tm - 2.0 * cf + c4tp + 2.0 * s2t - s4tm - s4tp))
        + c_b[5]
            * s_b[3]
            * (-2.0 * c2t * (1.0 + cf)
                + cf * (2.0 + 2.0 * c4t + c4tm - 2.0 * cf + c4tp + s4t + s4tm + s4tp))
}

fn num_d(g: &Trig) -> f64 {
    let Trig {
        ct,
        st,
        cf,
        c2f,
        sf,
        sh,
        c2t,
        s2t,
        c4t,
        s4t,
        c4tm,
        c4tp,
        s4tm,
        s4tp,
        c_b,
        s_b,
        ..
    } = *g;
    g.head
        + 2.0
            * c_b[7]
            * s_b[1]
            * (ct * ct * (-1.0 + cf) - 2.0 * ct * cf * st - (-1.0 + cf) * st * st)
        + 2.0
            * c_b[4]
            * s_b[4]
            * (ct.powi(4) + 4.0 * ct.powi(3) * cf * cf * st + ct * ct * c2f * st * st
                - 2.0 * ct * (1.0 - 4.0 * cf + c2f) * st.powi(3)
                + st.powi(4))
        + 2.0
            * c_b[2]
            * s_b[6]
            * (2.0 * ct.powi(4) * (1.0 + cf)
                + 4.0 * ct.powi(3) * cf * st
                + ct * ct * (3.0 + c2f) * st * st
                + 4.0 * ct * cf * cf * st.powi(3)
                + 2.0 * cf * st.powi(4))
        + g.tail * s2t * s2t
        + 2.0 * c_b[1] * c2t * s_b[7] * (1.0 + cf * (1.0 + s2t))
        - 4.0
            * c_b[6]
            * s_b[2]
            * (ct.powi(4) * cf + (-1.0 + cf) * st.powi(4)
                - 4.0 * ct.powi(3) * cf * st * sh
                - ct * ct * st * st * sf * sf)
        + c_b[3]
            * s_b[5]
            * (2.0 * c2t * (1.0 + cf)
                + cf * (2.0 + 2.0 * c4t - c4tm + 2.0 * cf - c4tp + 2.0 * s2t + s4tm + s4tp))
        + c_b[5]
            * s_b[3]
            * (2.0 * c2t * (-1.0 + cf)
                + cf * (-2.0 - 2.0 * c4t + c4tm - 2.0 * cf + c4tp - s4t + s4tm + s4tp))
}

fn num_e(g: &Trig, t: f64, f: f64) -> f64 {
    let Trig {
        ct,
        st,
        cf,
        c2f,
        sf,
        ch,
        c2t,
        s2t,
        c4t,
        s4t,
        c4tm,
        c4tp,
        s4tm,
        s4tp,
        c_b,
        s_b,
        ..
    } = *g;
    let (sin, cos) = (f64::sin, f64::cos);
    g.head
        + 2.0
            * c_b[2]
            * s_b[6]
            * (-2.0 * ct.powi(4) * cf
                + 4.0 * ct.powi(3) * cf * cf * st
                + ct * ct * (3.0 + c2f) * st * st
                - 4.0 * ct * cf * st.powi(3)
                - 2.0 * (-1.0 + cf) * st.powi(4))
        + g.tail * s2t * s2t
        - 2.0 * c_b[7] * s_b[1] * (c2t * (1.0 + cf) + cf * s2t)
        - 2.0 * c_b[1] * c2t * s_b[7] * (-1.0 + cf * (1.0 + s2t))
        + 4.0
            * c_b[6]
            * s_b[2]
            * (ct.powi(4) * (1.0 + cf) - 4.0 * ct * ch * cf * st.powi(3)
                + cf * st.powi(4)
                + ct * ct * st * st * sf * sf)
        - 0.125
            * c_b[4]
            * s_b[4]
            * (-12.0 - 4.0 * c4t + cos(4.0 * t - 2.0 * f) - 2.0 * c2f
                + cos(2.0 * (2.0 * t + f))
                + 8.0 * s4t
                + 4.0 * sin(4.0 * t - 2.0 * f)
                + 16.0 * sin(2.0 * t - f)
                + 8.0 * s4tm
                + 16.0 * sin(2.0 * t + f)
                + 4.0 * sin(2.0 * (2.0 * t + f))
                + 8.0 * s4tp)
        + c_b[3]
            * s_b[5]
            * (-2.0 * c2t * (-1.0 + cf)
                + cf * (2.0 + 2.0 * c4t + c4tm - 2.0 * cf + c4tp + 2.0 * s2t + s4tm + s4tp))
        + c_b[5]
            * s_b[3]
            * (-2.0 * c2t * (1.0 + cf)
                + cf * (-2.0 - 2.0 * c4t - c4tm + 2.0 * cf - c4tp + s4t + s4tm + s4tp))
}

fn num_f(g: &Trig) -> f64 {
    let Trig {
        ct,
        st,
        cf,
        c2f,
        sf,
        ch,
        sh,
        c2t,
        s2t,
        c4t,
        s4t,
        c4tm,
        c4tp,
        s4tm,
        s4tp,
        c_b,
        s_b,
        ..
    } = *g;
    g.head
        + 2.0 * c_b[4] * s_b[4]
            * (ct.powi(4) - 2.0 * ct.powi(3) * (1.0 - 4.0 * cf + c2f) * st + ct * ct * c2f * st * st
                + 4.0 * ct * cf * cf * st.powi(3)
                + st.powi(4))
        + 2.0 * c_b[2] * s_b[6]
            * (2.0 * ct.powi(4) * cf + 4.0 * ct.powi(3) * cf * cf * st
                + ct * ct * (3.0 + c2f) * st * st
                + 4.0 * ct * cf * st.powi(3)
                + 4.0 * ch * st.powi(4))
        // printed with sin²θ where the other terms have sin²2θ
        + g.tail * st * st
        + 2.0 * c_b[7] * s_b[1] * (c2t * (-1.0 + cf) + cf * s2t)
        + 2.0 * c_b[1] * c2t * s_b[7] * (1.0 + cf * (1.0 + s2t))
        - 4.0
            * c_b[6]
            * s_b[2]
            * (ct.powi(4) * (-1.0 + cf) + cf * st.powi(4)
                - 4.0 * ct * cf * st.powi(3) * sh
                - ct * ct * st * st * sf * sf)
        + c_b[3]
            * s_b[5]
            * (2.0 * c2t * (1.0 + cf)
                + cf * (-2.0 - 2.0 * c4t + c4tm - 2.0 * cf + c4tp - 2.0 * s2t + s4tm + s4tp))
        + c_b[5]
            * s_b[3]
            * (2.0 * c2t * (-1.0 + cf)
                + cf * (2.0 + 2.0 * c4t - c4tm + 2.0 * cf - c4tp - s4t + s4tm + s4tp))
}

fn num_g(g: &Trig) -> f64 {
    let Trig {
        ct,
        st,
        cf,
        c2f,
        sf,
        sh,
        c2t,
        s2t,
        c4t,
        s4t,
        c4tm,
        c4tp,
        s4tm,
        s4tp,
        c_b,
        s_b,
        ..
    } = *g;
    g.head
        + 2.0
            * c_b[4]
            * s_b[4]
            * (ct.powi(4) - 4.0 * ct.powi(3) * cf * cf * st
                + ct * ct * c2f * st * st
                + 2.0 * ct * (1.0 - 4.0 * cf + c2f) * st.powi(3)
                + st.powi(4))
        + 2.0
            * c_b[2]
            * s_b[6]
            * (2.0 * ct.powi(4) * (1.0 + cf) - 4.0 * ct.powi(3) * cf * st
                + ct * ct * (3.0 + c2f) * st * st
                - 4.0 * ct * cf * cf * st.powi(3)
                + 2.0 * cf * st.powi(4))
        + c_b[1] * c2t * s_b[7] * (-2.0 + 2.0 * cf * (-1.0 + s2t))
        + g.tail * s2t * s2t
        - 2.0 * c_b[7] * s_b[1] * (ct * ct * (-1.0 + cf) + cf * s2t)
        - 4.0
            * c_b[6]
            * s_b[2]
            * (ct.powi(4) * cf + (-1.0 + cf) * st.powi(4) + 4.0 * ct.powi(3) * cf * st * sh
                - ct * ct * st * st * sf * sf)
        + c_b[3]
            * s_b[5]
            * (-2.0 * c2t * (1.0 + cf)
                + cf * (-2.0 - 2.0 * c4t + c4tm - 2.0 * cf + c4tp + 2.0 * s2t + s4tm + s4tp))
        + c_b[5]
            * s_b[3]
            * (-2.0 * c2t * (-1.0 + cf)
                + cf * (2.0 + 2.0 * c4t - c4tm + 2.0 * cf - c4tp - s4t + s4tm + s4tp))
}

fn num_h(g: &Trig) -> f64 {
    let Trig {
        ct,
        st,
        cf,
        c2f,
        sf,
        ch,
        c2t,
        s2t,
        c4t,
        s4t,
        c4tm,
        c4tp,
        s4tm,
        s4tp,
        c_b,
        s_b,
        ..
    } = *g;
    g.head
        + 2.0
            * c_b[4]
            * s_b[4]
            * (ct.powi(4) - 4.0 * ct.powi(3) * cf * cf * st
                + ct * ct * c2f * st * st
                + 2.0 * ct * (1.0 + 4.0 * cf + c2f) * st.powi(3)
                + st.powi(4))
        + 2.0
            * c_b[2]
            * s_b[6]
            * (-2.0 * ct.powi(4) * (-1.0 + cf)
                + 4.0 * ct.powi(3) * cf * st
                + ct * ct * (3.0 + c2f) * st * st
                - 4.0 * ct * cf * cf * st.powi(3)
                - 2.0 * cf * st.powi(4))
        - c_b[1] * c2t * s_b[7] * (2.0 + 2.0 * cf * (-1.0 + s2t))
        + g.tail * s2t * s2t
        + 2.0 * c_b[7] * s_b[1] * (ct * ct * (1.0 + cf) + cf * s2t)
        - 4.0
            * c_b[6]
            * s_b[2]
            * (ct.powi(4) * cf
                + 4.0 * ct.powi(3) * ch * cf * st
                + 2.0 * ch * st.powi(4)
                + ct * ct * st * st * sf * sf)
        + c_b[3]
            * s_b[5]
            * (2.0 * c2t * (-1.0 + cf)
                + cf * (2.0 + 2.0 * c4t + c4tm - 2.0 * cf + c4tp - 2.0 * s2t + s4tm + s4tp))
        + c_b[5]
            * s_b[3]
            * (2.0 * c2t * (1.0 + cf)
                + cf * (-2.0 - 2.0 * c4t - c4tm + 2.0 * cf - c4tp + s4t + s4tm + s4tp))
}

const P: f64 = 1.0;
const M: f64 = -1.0;

const DEN_SIGNS: [DenSigns; 8] = [
    DenSigns {
        k: 8.0,
        a: [M, P, P, M, M, P, P, M],
        b: P,
        c: M,
    },
    DenSigns {
        k: 8.0,
        a: [P, M, M, P, P, M, M, P],
        b: P,
        c: P,
    },
    DenSigns {
        k: -8.0,
        a: [M, P, M, P, M, M, P, P],
        b: P,
        c: P,
    },
    DenSigns {
        k: 8.0,
        a: [M, P, M, P, M, P, M, P],
        b: M,
        c: P,
    },
    DenSigns {
        k: -8.0,
        a: [M, P, P, M, M, P, P, M],
        b: P,
        c: P,
    },
    DenSigns {
        k: 8.0,
        a: [M, P, P, M, M, P, P, M],
        b: M,
        c: P,
    },
    DenSigns {
        k: 8.0,
        a: [M, P, M, P, M, P, M, P],
        b: P,
        c: M,
    },
    DenSigns {
        k: 8.0,
        a: [P, M, P, M, P, M, P, M],
        b: P,
        c: P,
    },
];

const TERM_NAMES: [&str; 8] = ["A", "B", "C", "D", "E", "F", "G", "H"];

/// The eight Bob3 terms `A` to `H`, each numerator over its denominator.
pub fn cr_bob3_terms(big: f64, t: f64, f: f64) -> AnalysisResult<[f64; 8]> {
    let g = Trig::new(big, t, f);
    let nums = [
        num_a(&g),
        num_b(&g),
        num_c(&g),
        num_d(&g),
        num_e(&g, t, f),
        num_f(&g),
        num_g(&g),
        num_h(&g),
    ];
    let mut out = [0.0; 8];
    for i in 0..8 {
        let den = cr_den(&DEN_SIGNS[i], big, t, f);
        if den.abs() < CR_SINGULAR {
            return Err(singular(TERM_NAMES[i], den));
        }
        out[i] = nums[i] / den;
    }
    Ok(out)
}

pub fn cr_bob3(big: f64, t: f64, f: f64) -> AnalysisResult<f64> {
    Ok(cr_bob3_terms(big, t, f)?.iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, PI};

    #[test]
    fn zero_noise_limits_are_one() {
        for (t, f) in [(0.3, 1.1), (FRAC_PI_4, FRAC_PI_3), (2.0, 5.0)] {
            assert!((ad_bob2(0.0, t, f) - 1.0).abs() < 1e-12);
            assert!((ad_bob3(0.0, t, f) - 1.0).abs() < 1e-12);
            assert!((pd_bob2(0.0, t) - 1.0).abs() < 1e-12);
            assert!((pd_bob3(0.0, t) - 1.0).abs() < 1e-12);
            assert!((cd_bob2(0.0, t) - 1.0).abs() < 1e-12);
            assert!((cd_bob3(0.0, t) - 1.0).abs() < 1e-12);
            assert!((pauli_bob2([0.0, 0.0, 0.0, 1.0], t, f) - 1.0).abs() < 1e-12);
            assert!((pauli_bob3_printed([0.0, 0.0, 0.0, 1.0], t, f) - 1.0).abs() < 1e-12);
        }
    }

    // Without rotation every numerator is 1 and the denominators reduce to
    // 8 except E (printed as -8) and C (printed with -8 and a non-cancelling
    // cosine pattern). The printed sum therefore differs from 1 there.
    #[test]
    fn cr_bob3_terms_without_rotation() {
        let (t, f) = (0.7, 2.3);
        let terms = cr_bob3_terms(0.0, t, f).unwrap();
        for i in [0, 1, 3, 5, 6, 7] {
            assert!((terms[i] - 0.125).abs() < 1e-12, "term {i}: {}", terms[i]);
        }
        let c = 1.0 / (-8.0 - 2.0 * f64::cos(f) + 2.0 * f64::cos(2.0 * t - f));
        assert!((terms[2] - c).abs() < 1e-12);
        assert!((terms[4] + 0.125).abs() < 1e-12);
    }

    #[test]
    fn pd_bob2_full_damping_at_quarter_pi() {
        assert!((pd_bob2(1.0, FRAC_PI_4) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn cd_special_point() {
        assert!((cd_bob2(PI, FRAC_PI_4) - 1.0).abs() < 1e-12);
        assert!(cd_bob3(PI, FRAC_PI_4).abs() < 1e-12);
    }

    #[test]
    fn pd_is_phase_independent() {
        let f2 = closed_form(&ChannelSpec::PhaseDamping(0.4), Agent::Bob2, 0.9, 0.1).unwrap();
        let g2 = closed_form(&ChannelSpec::PhaseDamping(0.4), Agent::Bob2, 0.9, 2.7).unwrap();
        assert_eq!(f2, g2);
    }

    #[test]
    fn bob1_uses_bob3_expression() {
        let ch = ChannelSpec::AmplitudeDamping(0.3);
        assert_eq!(
            closed_form(&ch, Agent::Bob1, 0.4, 1.0).unwrap(),
            closed_form(&ch, Agent::Bob3, 0.4, 1.0).unwrap()
        );
    }

    #[test]
    fn pauli_readings_differ_by_norm() {
        let p = [0.1, 0.2, 0.3, 0.4];
        let ch = ChannelSpec::Pauli(p);
        let raw = closed_form_with(&ch, Agent::Bob3, 0.5, 0.6, PauliBob3Reading::Printed).unwrap();
        let norm =
            closed_form_with(&ch, Agent::Bob3, 0.5, 0.6, PauliBob3Reading::Normalized).unwrap();
        assert!((raw / norm - (0.09 + 0.49)).abs() < 1e-12);
    }

    #[test]
    fn invalid_channel_rejected() {
        assert!(matches!(
            closed_form(&ChannelSpec::AmplitudeDamping(2.0), Agent::Bob2, 0.1, 0.1),
            Err(AnalysisError::BadParameter(_))
        ));
    }
}
