//! Characters of the finite torus `F_p^x x F_p^x`, their orbits under the
//! swap, and tame smooth characters of `Q_p^x`.
//!
//! Exponents of the Teichmuller character `omega` live in `Z/(p-1)`. A smooth
//! character is recorded by its restriction `omega^c` to `F_p^x` and its value
//! `v` at `p^{-1}`, so `unr(x)` is `(0, x^{-1})`.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::gf::{FieldCtx, FieldElement};

fn md(v: i64, p: u32) -> u32 {
    v.rem_euclid(p as i64 - 1) as u32
}

/// The character `omega^a (x) omega^b` of the torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TorusChar {
    pub a: u32,
    pub b: u32,
}

impl TorusChar {
    pub fn new(p: u32, a: i64, b: i64) -> Self {
        TorusChar {
            a: md(a, p),
            b: md(b, p),
        }
    }

    pub fn swap(self) -> Self {
        TorusChar {
            a: self.b,
            b: self.a,
        }
    }

    pub fn is_regular(self) -> bool {
        self.a != self.b
    }

    /// `chi * omega^r`.
    pub fn twist(self, p: u32, r: i64) -> Self {
        TorusChar::new(p, self.a as i64 + r, self.b as i64 + r)
    }
}

impl fmt::Display for TorusChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// A swap orbit `{chi, chi^s}`, named by its lexicographically smaller member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrbitGamma {
    pub rep: TorusChar,
    pub regular: bool,
}

impl OrbitGamma {
    pub fn contains(&self, chi: TorusChar) -> bool {
        chi == self.rep || chi == self.rep.swap()
    }
}

impl fmt::Display for OrbitGamma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

pub fn orbit_of(chi: TorusChar) -> OrbitGamma {
    OrbitGamma {
        rep: chi.min(chi.swap()),
        regular: chi.is_regular(),
    }
}

pub fn twist_orbit(p: u32, gamma: OrbitGamma, r: i64) -> OrbitGamma {
    orbit_of(gamma.rep.twist(p, r))
}

/// `gamma|_{F_p^x}`, as an exponent of `omega`.
pub fn restrict(p: u32, gamma: OrbitGamma) -> u32 {
    md(gamma.rep.a as i64 + gamma.rep.b as i64, p)
}

/// All orbits restricting to `omega^e`, sorted by representative.
pub fn fiber_of_restriction(q: u32, e: i64) -> Vec<OrbitGamma> {
    let e = md(e, q);
    let m = q - 1;
    let mut out: Vec<OrbitGamma> = (0..m)
        .map(|a| TorusChar {
            a,
            b: (e + m - a) % m,
        })
        .filter(|chi| chi.a <= chi.b)
        .map(orbit_of)
        .collect();
    out.sort();
    out
}

/// Every orbit, grouped by restriction `e = 0, 1, ..., q-2`.
pub fn all_orbits(q: u32) -> Vec<(u32, Vec<OrbitGamma>)> {
    (0..q - 1)
        .map(|e| (e, fiber_of_restriction(q, e as i64)))
        .collect()
}

/// A tame smooth character of `Q_p^x`: `omega^c` on `F_p^x`, value `v` at `p^{-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SmoothChar {
    pub c: u32,
    pub v: FieldElement,
}

/// Central characters have the same shape; `v` is the coordinate `z2`.
pub type CentralChar = SmoothChar;

impl SmoothChar {
    pub fn new(ctx: &FieldCtx, c: i64, v: FieldElement) -> Self {
        debug_assert!(!ctx.is_zero(&v));
        SmoothChar {
            c: md(c, ctx.p()),
            v,
        }
    }

    pub fn trivial(ctx: &FieldCtx) -> Self {
        SmoothChar { c: 0, v: ctx.one() }
    }

    /// `omega^r`; note `omega(p) = 1`.
    pub fn omega_pow(ctx: &FieldCtx, r: i64) -> Self {
        SmoothChar::new(ctx, r, ctx.one())
    }

    /// `unr(x)`, sending `p` to `x`.
    pub fn unr(ctx: &FieldCtx, x: &FieldElement) -> Self {
        SmoothChar {
            c: 0,
            v: ctx.inv(x).expect("unr(0) is not a character"),
        }
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &SmoothChar) -> Self {
        SmoothChar::new(
            ctx,
            self.c as i64 + other.c as i64,
            ctx.mul(&self.v, &other.v),
        )
    }

    pub fn inv(&self, ctx: &FieldCtx) -> Self {
        SmoothChar::new(
            ctx,
            -(self.c as i64),
            ctx.inv(&self.v).expect("character values are units"),
        )
    }

    pub fn square(&self, ctx: &FieldCtx) -> Self {
        self.mul(ctx, self)
    }

    pub fn is_trivial(&self, ctx: &FieldCtx) -> bool {
        self.c == 0 && ctx.is_one(&self.v)
    }

    /// Re-express in a field that contains `from`.
    pub fn embed(&self, into: &FieldCtx, from: &FieldCtx) -> Self {
        SmoothChar {
            c: self.c,
            v: into.embed_from(from, &self.v),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub enum CharOp {
    Mul,
    Inv,
    Square,
}

pub fn smoothchar_ops(
    ctx: &FieldCtx,
    a: &SmoothChar,
    b: Option<&SmoothChar>,
    op: CharOp,
) -> SmoothChar {
    match op {
        CharOp::Mul => a.mul(ctx, b.expect("mul needs two characters")),
        CharOp::Inv => a.inv(ctx),
        CharOp::Square => a.square(ctx),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_exponent(c: u32) -> Self {
        if c % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// The basic central character of this parity: `1` or `omega^{-1}`.
    pub fn basic_zeta(self, ctx: &FieldCtx) -> CentralChar {
        match self {
            Parity::Even => SmoothChar::trivial(ctx),
            Parity::Odd => SmoothChar::omega_pow(ctx, -1),
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Result of moving a central character to a basic one.
#[derive(Debug, Clone)]
pub struct BasicReduction {
    pub parity: Parity,
    /// `zeta * eta^2` is basic.
    pub eta: SmoothChar,
    /// Whether `eta(p^{-1})` had to be taken in the quadratic extension.
    pub needs_ext: bool,
    /// The field `eta` lives in: the input field or its doubling.
    pub ctx: FieldCtx,
}

/// Parity of `zeta` and an exponent `c` with `zeta|_{F_p^x} omega^{2c}` basic,
/// chosen to be `0` when `zeta` already has basic restriction.
pub fn basic_shift(p: u32, zeta_c: u32) -> (Parity, u32) {
    let parity = Parity::of_exponent(zeta_c);
    let c = match parity {
        Parity::Even => -(zeta_c as i64) / 2,
        Parity::Odd => -(md(zeta_c as i64 + 1, p) as i64) / 2,
    };
    (parity, md(c, p))
}

/// `eta` with `eta| = omega^{-c/2}` (even) or `omega^{-(c+1)/2}` (odd) for
/// `c` in `[0, p-2]`, and `eta(p^{-1})` the first square root of `zeta(p^{-1})^{-1}`.
pub fn reduce_to_basic(ctx: &FieldCtx, zeta: &CentralChar) -> BasicReduction {
    let parity = Parity::of_exponent(zeta.c);
    let c = match parity {
        Parity::Even => -(zeta.c as i64) / 2,
        Parity::Odd => -(zeta.c as i64 + 1) / 2,
    };
    with_exponent(ctx, zeta, parity, md(c, ctx.p()))
}

/// Like [`reduce_to_basic`] but with the exponent of [`basic_shift`], so that
/// basic characters reduce by the trivial twist.
pub fn reduce_to_basic_normalized(ctx: &FieldCtx, zeta: &CentralChar) -> BasicReduction {
    let (parity, c) = basic_shift(ctx.p(), zeta.c);
    with_exponent(ctx, zeta, parity, c)
}

fn with_exponent(ctx: &FieldCtx, zeta: &CentralChar, parity: Parity, c: u32) -> BasicReduction {
    let target = ctx
        .inv(&zeta.v)
        .expect("central character values are units");
    let (work, v, needs_ext) = match ctx.sqrt(&target) {
        Some(v) => (ctx.clone(), v, false),
        None => {
            let e = ctx.doubled();
            let v = e
                .sqrt(&e.embed_from(ctx, &target))
                .expect("every element is a square one level up");
            (e, v, true)
        }
    };
    let eta = SmoothChar { c, v };
    BasicReduction {
        parity,
        eta,
        needs_ext,
        ctx: work,
    }
}
