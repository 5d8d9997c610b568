use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::chain::{Chain, ChainBuilder, Primitive};
use super::{AlgebraError, Rational};

/// Growth categories, totally ordered from slowest to fastest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GrowthClass {
    Constant,
    PolyLog,
    Polynomial,
    QuasiPolynomial,
    SubExponential,
    Exponential,
    SuperExponential,
}

impl GrowthClass {
    pub const ALL: [GrowthClass; 7] = [
        GrowthClass::Constant,
        GrowthClass::PolyLog,
        GrowthClass::Polynomial,
        GrowthClass::QuasiPolynomial,
        GrowthClass::SubExponential,
        GrowthClass::Exponential,
        GrowthClass::SuperExponential,
    ];
}

impl fmt::Display for GrowthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GrowthClass::Constant => "constant",
            GrowthClass::PolyLog => "polylogarithmic",
            GrowthClass::Polynomial => "polynomial",
            GrowthClass::QuasiPolynomial => "quasi-polynomial",
            GrowthClass::SubExponential => "sub-exponential",
            GrowthClass::Exponential => "exponential",
            GrowthClass::SuperExponential => "super-exponential",
        };
        f.write_str(s)
    }
}

/// A growth class together with its display descriptors.
///
/// `degree` is the polynomial degree for `Polynomial` and the exponent of
/// `log n` for `PolyLog`; `log_degree` records a `(log n)^k` factor riding on
/// a polynomial, as in `n log n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Growth {
    pub class: GrowthClass,
    pub degree: Option<Rational>,
    pub log_degree: Option<Rational>,
}

impl Growth {
    fn of(class: GrowthClass) -> Self {
        Growth { class, degree: None, log_degree: None }
    }
}

impl fmt::Display for Growth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.class)?;
        if let Some(d) = self.degree {
            write!(f, " (degree {d}")?;
            if let Some(l) = self.log_degree {
                write!(f, ", log^{l}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Speedup categories.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpeedupType {
    #[serde(rename = "EXP+")]
    ExpPlus,
    #[serde(rename = "POLY+")]
    PolyPlus,
    #[serde(rename = "POLY-")]
    PolyMinus,
}

impl SpeedupType {
    pub const ALL: [SpeedupType; 3] = [SpeedupType::ExpPlus, SpeedupType::PolyPlus, SpeedupType::PolyMinus];

    /// Exponential or faster-growing speedups are `EXP+`; superpolynomial
    /// but subexponential ones are `POLY+`; the rest are `POLY-`.
    pub fn from_class(class: GrowthClass) -> Self {
        if class >= GrowthClass::Exponential {
            SpeedupType::ExpPlus
        } else if class >= GrowthClass::QuasiPolynomial {
            SpeedupType::PolyPlus
        } else {
            SpeedupType::PolyMinus
        }
    }
}

impl fmt::Display for SpeedupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpeedupType::ExpPlus => "EXP+",
            SpeedupType::PolyPlus => "POLY+",
            SpeedupType::PolyMinus => "POLY-",
        })
    }
}

/// A normalized asymptotic expression in the single variable `n`.
///
/// The expression is a product of canonical chains sorted from fastest to
/// slowest growing; the empty product is the constant function. Values are
/// always normalized, so structural equality is equality of growth category.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComplexityExpr {
    factors: Vec<Chain>,
}

impl ComplexityExpr {
    pub fn constant() -> Self {
        ComplexityExpr { factors: Vec::new() }
    }

    pub fn n() -> Self {
        ComplexityExpr::from_chain(Chain::identity())
    }

    pub fn from_chain(chain: Chain) -> Self {
        ComplexityExpr { factors: vec![chain] }
    }

    /// Normalize a single composition chain.
    pub fn from_primitives(steps: &[Primitive]) -> Self {
        ComplexityExpr::from_chain(Chain::from_primitives(steps))
    }

    /// Normalize a product of chains.
    pub fn product(chains: impl IntoIterator<Item = Chain>) -> Self {
        let mut by_level: Vec<Chain> = Vec::new();
        let mut top_exp: Option<Chain> = None;
        for chain in chains {
            if chain.exps() > 0 {
                top_exp = match top_exp {
                    Some(t) if t.cmp_growth(&chain) != Ordering::Less => Some(t),
                    _ => Some(chain),
                };
            } else if let Some(slot) = by_level.iter_mut().find(|c| c.logs() == chain.logs()) {
                *slot = Chain::from_parts(slot.logs(), slot.power() + chain.power(), 0);
            } else {
                by_level.push(chain);
            }
        }
        let mut factors = match top_exp {
            Some(t) if chain_growth(&t).class > GrowthClass::Polynomial => Vec::new(),
            _ => by_level,
        };
        factors.extend(top_exp);
        factors.sort_by(|a, b| b.cmp_growth(a));
        ComplexityExpr { factors }
    }

    pub fn factors(&self) -> &[Chain] {
        &self.factors
    }

    pub fn is_constant(&self) -> bool {
        self.factors.is_empty()
    }

    /// The single chain of a non-product, non-constant expression.
    pub fn as_chain(&self) -> Option<&Chain> {
        match self.factors.as_slice() {
            [c] => Some(c),
            _ => None,
        }
    }

    /// Re-normalization of an already normalized value is the identity.
    pub fn normalize(&self) -> Self {
        ComplexityExpr::product(self.factors.iter().copied())
    }

    pub fn growth(&self) -> Growth {
        match self.factors.as_slice() {
            [] => Growth::of(GrowthClass::Constant),
            [single] => chain_growth(single),
            many => {
                let dominant = chain_growth(&many[0]);
                match dominant.class {
                    GrowthClass::Polynomial => {
                        let log_degree = many
                            .iter()
                            .find(|c| c.exps() == 0 && c.logs() == 1)
                            .map(|c| c.power());
                        Growth { log_degree, ..dominant }
                    }
                    GrowthClass::PolyLog => {
                        let degree = many
                            .iter()
                            .find(|c| c.exps() == 0 && c.logs() == 1)
                            .map(|c| c.power());
                        Growth { degree, ..Growth::of(GrowthClass::PolyLog) }
                    }
                    _ => Growth::of(dominant.class),
                }
            }
        }
    }

    pub fn growth_class(&self) -> GrowthClass {
        self.growth().class
    }

    /// Asymptotic comparison; factors are compared from the dominant one down.
    pub fn cmp_growth(&self, other: &ComplexityExpr) -> Ordering {
        for (a, b) in self.factors.iter().zip(&other.factors) {
            match a.cmp_growth(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.factors.len().cmp(&other.factors.len())
    }

    /// Functional inverse of a pure chain.
    pub fn inverse(&self) -> Result<ComplexityExpr, AlgebraError> {
        match self.factors.as_slice() {
            [c] => Ok(ComplexityExpr::from_chain(c.inverse())),
            [] => Err(AlgebraError::NonInvertible { expr: self.render(), reason: "constant function" }),
            _ => Err(AlgebraError::NonInvertible { expr: self.render(), reason: "product of factors" }),
        }
    }

    /// Inverse of the dominant factor; products are approximated by it.
    pub fn inverse_approx(&self) -> Result<ComplexityExpr, AlgebraError> {
        match self.factors.first() {
            Some(c) => Ok(ComplexityExpr::from_chain(c.inverse())),
            None => Err(AlgebraError::NonInvertible { expr: self.render(), reason: "constant function" }),
        }
    }

    /// `self ∘ inner`, i.e. `self(inner(n))`, normalized.
    pub fn compose(&self, inner: &ComplexityExpr) -> Result<ComplexityExpr, AlgebraError> {
        let start = Lowered::from_expr(inner);
        let mut out = Lowered::Const(Rational::one());
        for factor in &self.factors {
            let mut value = start.clone();
            for step in factor.primitives() {
                value = value.apply(step)?;
            }
            out = out.mul(value);
        }
        Ok(out.into_expr())
    }

    /// Canonical textual form accepted back by the parser.
    pub fn render(&self) -> String {
        if self.factors.is_empty() {
            return "1".to_string();
        }
        self.factors.iter().map(Chain::to_string).collect::<Vec<_>>().join("*")
    }
}

impl fmt::Display for ComplexityExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O({})", self.render())
    }
}

impl Serialize for ComplexityExpr {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

fn chain_growth(c: &Chain) -> Growth {
    if c.exps() == 0 {
        return if c.logs() == 0 {
            Growth { degree: Some(c.power()), ..Growth::of(GrowthClass::Polynomial) }
        } else {
            let degree = (c.logs() == 1).then(|| c.power());
            Growth { degree, ..Growth::of(GrowthClass::PolyLog) }
        };
    }
    // classify 2^L by the size of L
    let exponent = Chain::from_parts(c.logs(), c.power(), c.exps() - 1);
    let log_n = Chain::from_parts(1, Rational::one(), 0);
    let class = if exponent.cmp_growth(&log_n) == Ordering::Less {
        GrowthClass::PolyLog
    } else if exponent.exps() == 0 && exponent.logs() == 1 {
        GrowthClass::QuasiPolynomial
    } else if exponent.cmp_growth(&Chain::identity()) == Ordering::Less {
        GrowthClass::SubExponential
    } else if exponent.exps() == 0 && exponent.logs() == 0 {
        GrowthClass::Exponential
    } else {
        GrowthClass::SuperExponential
    };
    Growth::of(class)
}

/// Intermediate value used while lowering syntax or composing expressions.
///
/// Unlike [`ComplexityExpr`] it keeps exact constants and the pending
/// multiplier on a bare logarithm.
#[derive(Clone, Debug)]
pub(crate) enum Lowered {
    Const(Rational),
    Chain(ChainBuilder),
    Product(ComplexityExpr),
}

impl Lowered {
    pub(crate) fn n() -> Self {
        Lowered::Chain(ChainBuilder::identity())
    }

    pub(crate) fn from_expr(e: &ComplexityExpr) -> Self {
        match e.factors.as_slice() {
            [] => Lowered::Const(Rational::one()),
            [c] => Lowered::Chain(ChainBuilder::from_chain(*c)),
            _ => Lowered::Product(e.clone()),
        }
    }

    fn from_normalized(e: ComplexityExpr) -> Self {
        match e.factors.len() {
            0 | 1 => Lowered::from_expr(&e),
            _ => Lowered::Product(e),
        }
    }

    pub(crate) fn into_expr(self) -> ComplexityExpr {
        match self {
            Lowered::Const(_) => ComplexityExpr::constant(),
            Lowered::Chain(b) => ComplexityExpr::from_chain(b.chain),
            Lowered::Product(e) => e,
        }
    }

    fn canonical(&self) -> ComplexityExpr {
        self.clone().into_expr()
    }

    fn apply(self, step: Primitive) -> Result<Lowered, AlgebraError> {
        match step {
            Primitive::Log => self.log(),
            Primitive::Exp2 => self.exp2(),
            Primitive::Pow(k) => self.pow_const(k),
            Primitive::Const(c) => Ok(self.mul(Lowered::Const(c))),
        }
    }

    pub(crate) fn mul(self, other: Lowered) -> Lowered {
        match (self, other) {
            (Lowered::Const(a), Lowered::Const(b)) => Lowered::Const(a * b),
            (Lowered::Const(c), Lowered::Chain(mut b)) | (Lowered::Chain(mut b), Lowered::Const(c)) => {
                b.push(Primitive::Const(c));
                Lowered::Chain(b)
            }
            (Lowered::Const(_), p @ Lowered::Product(_)) | (p @ Lowered::Product(_), Lowered::Const(_)) => p,
            (a, b) => {
                let factors = a.canonical().factors.into_iter().chain(b.canonical().factors);
                Lowered::from_normalized(ComplexityExpr::product(factors))
            }
        }
    }

    /// Sum of two terms: the dominant summand survives.
    pub(crate) fn add(self, other: Lowered) -> Lowered {
        match (self, other) {
            (Lowered::Const(a), Lowered::Const(b)) => Lowered::Const(a + b),
            (Lowered::Const(_), x) | (x, Lowered::Const(_)) => x,
            (a, b) => match a.canonical().cmp_growth(&b.canonical()) {
                Ordering::Less => b,
                Ordering::Greater => a,
                Ordering::Equal => match (a, b) {
                    (Lowered::Chain(mut x), Lowered::Chain(y)) => {
                        x.add_scale(y.scale());
                        Lowered::Chain(x)
                    }
                    (a, _) => a,
                },
            },
        }
    }

    pub(crate) fn log(self) -> Result<Lowered, AlgebraError> {
        match self {
            Lowered::Const(c) => Ok(Lowered::Const(log2_exact(c)?)),
            Lowered::Chain(mut b) => {
                b.push(Primitive::Log);
                Ok(Lowered::Chain(b))
            }
            Lowered::Product(e) => {
                // log of a product is dominated by the log of its largest factor
                let mut b = ChainBuilder::from_chain(e.factors[0]);
                b.push(Primitive::Log);
                Ok(Lowered::Chain(b))
            }
        }
    }

    pub(crate) fn exp2(self) -> Result<Lowered, AlgebraError> {
        match self {
            Lowered::Const(c) => Ok(Lowered::Const(pow_exact(Rational::from_integer(2), c)?)),
            Lowered::Chain(mut b) => {
                b.push(Primitive::Exp2);
                Ok(Lowered::Chain(b))
            }
            Lowered::Product(e) => {
                let dominant = e.factors[0];
                if dominant.exps() == 0 && dominant.logs() == 1 && dominant.power().is_one() {
                    return Err(AlgebraError::Unsupported {
                        reason: format!(
                            "2^({}) lies strictly between polynomial and quasi-polynomial classes",
                            e.render()
                        ),
                    });
                }
                let mut b = ChainBuilder::from_chain(dominant);
                b.push(Primitive::Exp2);
                Ok(Lowered::Chain(b))
            }
        }
    }

    pub(crate) fn pow_const(self, k: Rational) -> Result<Lowered, AlgebraError> {
        if k <= Rational::zero() {
            return Err(AlgebraError::Unsupported { reason: format!("non-positive exponent {k}") });
        }
        match self {
            Lowered::Const(c) => Ok(Lowered::Const(pow_exact(c, k)?)),
            Lowered::Chain(mut b) => {
                b.push(Primitive::Pow(k));
                Ok(Lowered::Chain(b))
            }
            Lowered::Product(e) => {
                let factors = e.factors.iter().map(|c| {
                    let mut b = ChainBuilder::from_chain(*c);
                    b.push(Primitive::Pow(k));
                    b.chain
                });
                Ok(Lowered::from_normalized(ComplexityExpr::product(factors)))
            }
        }
    }

    /// `base^exponent` for arbitrary operands.
    pub(crate) fn pow(self, exponent: Lowered) -> Result<Lowered, AlgebraError> {
        match (self, exponent) {
            (base, Lowered::Const(k)) => base.pow_const(k),
            (Lowered::Const(b), e) => {
                if b.is_one() {
                    return Ok(Lowered::Const(b));
                }
                if b < Rational::one() {
                    return Err(AlgebraError::Unsupported {
                        reason: format!("base {b} below one gives a decreasing function"),
                    });
                }
                match log2_exact(b) {
                    Ok(log_b) => e.mul(Lowered::Const(log_b)).exp2(),
                    Err(_) => {
                        let log_topped = matches!(&e, Lowered::Chain(c) if c.log_topped());
                        if log_topped {
                            Err(AlgebraError::Unsupported {
                                reason: format!("{b}^log(..) has an irrational polynomial degree"),
                            })
                        } else {
                            e.exp2()
                        }
                    }
                }
            }
            (base, e) => e.mul(base.log()?).exp2(),
        }
    }
}

/// `log2(c)` when it is a positive integer power of two.
fn log2_exact(c: Rational) -> Result<Rational, AlgebraError> {
    let unsupported = || AlgebraError::Unsupported { reason: format!("log({c}) is not a positive integer") };
    if c <= Rational::one() {
        return Err(unsupported());
    }
    if !c.is_integer() {
        return Err(unsupported());
    }
    let v = *c.numer();
    if v.count_ones() != 1 {
        return Err(unsupported());
    }
    Ok(Rational::from_integer(i64::from(v.trailing_zeros())))
}

/// `c^k` when the result is rational and representable.
fn pow_exact(c: Rational, k: Rational) -> Result<Rational, AlgebraError> {
    let unsupported = || AlgebraError::Unsupported { reason: format!("{c}^{k} is not a representable constant") };
    let root = |v: i64, q: u32| -> Option<i64> {
        let r = (v as f64).powf(1.0 / f64::from(q)).round() as i64;
        (r.checked_pow(q) == Some(v)).then_some(r)
    };
    let q = u32::try_from(*k.denom()).map_err(|_| unsupported())?;
    let p = u32::try_from(*k.numer()).map_err(|_| unsupported())?;
    let num = root(*c.numer(), q).ok_or_else(unsupported)?;
    let den = root(*c.denom(), q).ok_or_else(unsupported)?;
    let num = num.checked_pow(p).ok_or_else(unsupported)?;
    let den = den.checked_pow(p).ok_or_else(unsupported)?;
    let g = num.gcd(&den);
    Ok(Rational::new(num / g, den / g))
}
