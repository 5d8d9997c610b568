//! Composition chains of monotone primitives and their canonical form.
//!
//! Every chain of `Log`, `Pow`, `Exp2` and `Const` steps reduces to the
//! shape `exp2^exps((log^logs n)^power)`. Constant multipliers survive only
//! while they sit directly on a logarithm, where a later `Exp2` turns them
//! into a polynomial degree (`2^(3 log n) = n^3`); everywhere else they are
//! absorbed into the growth category.

use std::cmp::Ordering;
use std::fmt;

use num_traits::One;

use super::Rational;

/// One monotone step applied to the running value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Primitive {
    /// Binary logarithm.
    Log,
    /// Raise to a strictly positive rational power.
    Pow(Rational),
    /// `2^x`.
    Exp2,
    /// Multiply by a strictly positive rational constant.
    Const(Rational),
}

impl Primitive {
    pub fn inverse(self) -> Option<Primitive> {
        match self {
            Primitive::Log => Some(Primitive::Exp2),
            Primitive::Exp2 => Some(Primitive::Log),
            Primitive::Pow(k) => Some(Primitive::Pow(k.recip())),
            Primitive::Const(_) => None,
        }
    }
}

/// Canonical chain `exp2^exps((log^logs n)^power)`.
///
/// Invariants: `power > 0`, and `logs > 0 && exps > 0` implies `power != 1`
/// (otherwise an `Exp2` directly follows a `Log` and the pair cancels).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Chain {
    logs: u32,
    power: Rational,
    exps: u32,
}

impl Chain {
    /// The identity chain, `n`.
    pub fn identity() -> Self {
        Chain { logs: 0, power: Rational::one(), exps: 0 }
    }

    pub(crate) fn from_parts(logs: u32, power: Rational, exps: u32) -> Self {
        debug_assert!(power > Rational::from_integer(0));
        debug_assert!(!(logs > 0 && exps > 0 && power.is_one()));
        Chain { logs, power, exps }
    }

    pub fn logs(&self) -> u32 {
        self.logs
    }

    pub fn power(&self) -> Rational {
        self.power
    }

    pub fn exps(&self) -> u32 {
        self.exps
    }

    pub fn is_identity(&self) -> bool {
        self.logs == 0 && self.exps == 0 && self.power.is_one()
    }

    /// The steps of this chain in application order.
    pub fn primitives(&self) -> Vec<Primitive> {
        let mut out = Vec::with_capacity((self.logs + self.exps + 1) as usize);
        out.extend((0..self.logs).map(|_| Primitive::Log));
        if !self.power.is_one() {
            out.push(Primitive::Pow(self.power));
        }
        out.extend((0..self.exps).map(|_| Primitive::Exp2));
        out
    }

    /// Reduce an arbitrary primitive sequence to canonical form.
    pub fn from_primitives(steps: &[Primitive]) -> Self {
        let mut builder = ChainBuilder::identity();
        for &step in steps {
            builder.push(step);
        }
        builder.chain
    }

    /// Exact functional inverse: reversed chain of inverted steps.
    pub fn inverse(&self) -> Chain {
        Chain { logs: self.exps, power: self.power.recip(), exps: self.logs }
    }

    /// `log2` of this chain at category level (multiplier dropped).
    fn log_category(&self) -> Chain {
        if self.exps > 0 {
            Chain { exps: self.exps - 1, ..*self }
        } else {
            Chain { logs: self.logs + 1, power: Rational::one(), exps: 0 }
        }
    }

    /// Asymptotic comparison of two canonical chains.
    ///
    /// Distinct canonical chains always have a ratio tending to 0 or infinity,
    /// so comparing their logarithms decides the order.
    pub fn cmp_growth(&self, other: &Chain) -> Ordering {
        if self.exps > 0 || other.exps > 0 {
            self.log_category().cmp_growth(&other.log_category())
        } else if self.logs != other.logs {
            other.logs.cmp(&self.logs)
        } else {
            self.power.cmp(&other.power)
        }
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut text = String::from("n");
        for _ in 0..self.logs {
            text = format!("log({text})");
        }
        if !self.power.is_one() {
            text = format!("{text}^{}", render_exponent(self.power));
        }
        for _ in 0..self.exps {
            text = if text == "n" { "2^n".to_string() } else { format!("2^({text})") };
        }
        f.write_str(&text)
    }
}

pub(crate) fn render_exponent(k: Rational) -> String {
    if k.is_integer() {
        k.numer().to_string()
    } else {
        format!("({}/{})", k.numer(), k.denom())
    }
}

/// A chain under construction, with a pending multiplier on a bare logarithm.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct ChainBuilder {
    pub(crate) chain: Chain,
    scale: Rational,
}

impl ChainBuilder {
    pub(crate) fn identity() -> Self {
        ChainBuilder { chain: Chain::identity(), scale: Rational::one() }
    }

    pub(crate) fn from_chain(chain: Chain) -> Self {
        ChainBuilder { chain, scale: Rational::one() }
    }

    pub(crate) fn scale(&self) -> Rational {
        self.scale
    }

    /// True when the outermost step is a bare `Log`.
    pub(crate) fn log_topped(&self) -> bool {
        let c = &self.chain;
        c.exps == 0 && c.logs > 0 && c.power.is_one()
    }

    pub(crate) fn push(&mut self, step: Primitive) {
        let c = &mut self.chain;
        match step {
            Primitive::Const(m) => {
                if c.exps == 0 && c.logs > 0 && c.power.is_one() {
                    self.scale *= m;
                }
            }
            Primitive::Pow(k) => {
                if c.exps == 0 {
                    c.power *= k;
                }
                self.scale = Rational::one();
            }
            Primitive::Exp2 => {
                if c.exps == 0 && c.logs > 0 && c.power.is_one() {
                    // 2^(m * log x) = x^m
                    c.logs -= 1;
                    c.power = self.scale;
                } else {
                    c.exps += 1;
                }
                self.scale = Rational::one();
            }
            Primitive::Log => {
                if c.exps > 0 {
                    c.exps -= 1;
                    self.scale = Rational::one();
                } else {
                    // log(x^k) = k * log x
                    self.scale = c.power;
                    c.power = Rational::one();
                    c.logs += 1;
                }
            }
        }
    }

    /// Add a second term of the same canonical shape.
    pub(crate) fn add_scale(&mut self, other: Rational) {
        if self.log_topped() {
            self.scale += other;
        }
    }
}
